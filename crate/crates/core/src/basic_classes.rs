//! Enumeration of basic classes: images of 1-cycles of configuration spaces
//! of small graphs (stars, the H graph, intervals between sinks, circles)
//! under embeddings into a graph, with the remaining particles parked.
//!
//! For stars, H graphs and intervals the local configuration space is
//! enumerated and every fundamental cycle of its 1-skeleton (which together
//! span all of its first homology) is replayed in the target graph along the
//! embedding. Circles use the rider cycles of [`circuit_cycle`].

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::cell::{CubeCell, Particle, ParticleState};
use crate::chain::Chain;
use crate::complex::CubeComplex;
use crate::cycles::{
    chain_support, circuit_cycle, configuration, crossing, product_chain, CircuitSpec, CycleError,
    Place, Walk,
};
use crate::graph::{build_graph, EdgeEnd, EdgeId, End, Family, Graph, GraphSpec, VertexId};

/// Limits for [`enumerate_basic_classes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationCaps {
    /// Longest path (in edges) used for the middle of an H graph or for an
    /// interval between sinks.
    pub max_path_len: usize,
    /// Longest embedded circuit.
    pub max_circuit_len: usize,
    /// Parkings tried per core cycle.
    pub max_parkings: usize,
    /// Total classes returned.
    pub max_classes: usize,
    /// Also produce degree-2 products of two degree-1 classes.
    pub products: bool,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            max_path_len: 3,
            max_circuit_len: 6,
            max_parkings: 4096,
            max_classes: 200_000,
            products: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassKind {
    Star,
    H,
    Interval,
    Circle,
    Product,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasicClass {
    pub kind: ClassKind,
    /// Human-readable summary of the embedding and moving particles.
    pub description: String,
    pub particles: Vec<Particle>,
    pub parking: Vec<(Particle, Place)>,
    #[serde(skip)]
    pub chain: Chain,
}

impl BasicClass {
    pub fn degree(&self) -> usize {
        self.chain.degree()
    }
}

#[derive(Debug, Clone, Default)]
pub struct BasicClasses {
    pub classes: Vec<BasicClass>,
    /// Whether some cap cut the enumeration short.
    pub truncated: bool,
}

impl BasicClasses {
    pub fn chains(&self, degree: usize) -> Vec<Chain> {
        self.classes
            .iter()
            .filter(|c| c.degree() == degree)
            .map(|c| c.chain.clone())
            .collect()
    }

    pub fn count_by_kind(&self) -> BTreeMap<ClassKind, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.kind).or_insert(0) += 1;
        }
        out
    }
}

/// A map from a small graph into the target graph: vertices to vertices and
/// each edge (oriented `ι → τ`) to a path of departure ends. Interior
/// particles of an edge without sink endpoints are stored in the first edge
/// of its path.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub local: Graph,
    pub vertex_map: Vec<VertexId>,
    pub edge_paths: Vec<Vec<EdgeEnd>>,
}

impl Embedding {
    fn check(&self, graph: &Graph) -> bool {
        (0..self.local.edge_count()).all(|e| {
            let path = &self.edge_paths[e];
            !path.is_empty()
                && (self.local.touches_sink(e) || !graph.touches_sink(path[0].edge))
                && graph.vertex_of(path[0]) == self.vertex_map[self.local.endpoint(e, End::Iota)]
                && graph.vertex_of(path.last().unwrap().opposite())
                    == self.vertex_map[self.local.endpoint(e, End::Tau)]
        })
    }

    fn places(&self, cell: &CubeCell, labels: &[Particle]) -> Vec<(Particle, Place)> {
        let mut on_edge: Vec<(EdgeId, usize, Particle)> = Vec::new();
        let mut out = Vec::new();
        for &(p, s) in cell.slots() {
            match s {
                ParticleState::AtVertex(x) => {
                    out.push((labels[p], Place::Vertex(self.vertex_map[x])))
                }
                ParticleState::OnEdge(e, r) => on_edge.push((e, r, labels[p])),
                _ => unreachable!("0-cells have no moving particles"),
            }
        }
        on_edge.sort_unstable();
        out.extend(
            on_edge
                .into_iter()
                .map(|(e, _, p)| (p, Place::Near(self.edge_paths[e][0]))),
        );
        out
    }

    /// Moving states in the target graph realising a local move traversed
    /// from its side-0 end to its side-1 end.
    fn steps(&self, graph: &Graph, state: ParticleState) -> Vec<ParticleState> {
        match state {
            ParticleState::MoveEnd(e, End::Iota) => {
                let d = self.edge_paths[e][0];
                vec![ParticleState::MoveEnd(d.edge, d.end)]
            }
            ParticleState::MoveEnd(e, End::Tau) => {
                let path = &self.edge_paths[e];
                let mut out = vec![ParticleState::MoveEnd(path[0].edge, path[0].end.opposite())];
                for &d in &path[1..] {
                    out.extend(crossing(graph, d));
                }
                out
            }
            ParticleState::MoveFull(e) => self.edge_paths[e]
                .iter()
                .flat_map(|&d| crossing(graph, d))
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Closed walks in the 1-skeleton of a complex, one per edge outside a
/// breadth-first spanning forest. Each walk is a root 0-cell and a list of
/// 1-cells with their traversal direction (`true` = side 0 to side 1).
fn fundamental_walks(cx: &CubeComplex) -> LocalWalk {
    let g = cx.graph();
    let n0 = cx.cell_count(0);
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n0];
    let mut ends = Vec::with_capacity(cx.cell_count(1));
    for (j, c) in cx.cells(1).enumerate() {
        let a = cx
            .index_of(&c.face(g, 0, 0).expect("1-cell"))
            .expect("face enumerated");
        let b = cx
            .index_of(&c.face(g, 0, 1).expect("1-cell"))
            .expect("face enumerated");
        adj[a].push((b, j, true));
        adj[b].push((a, j, false));
        ends.push((a, b));
    }
    let mut parent: Vec<Option<(usize, usize, bool)>> = vec![None; n0];
    let mut root = vec![usize::MAX; n0];
    let mut tree_edge = vec![false; ends.len()];
    for r in 0..n0 {
        if root[r] != usize::MAX {
            continue;
        }
        root[r] = r;
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for &(y, j, fwd) in &adj[x] {
                if root[y] == usize::MAX {
                    root[y] = r;
                    parent[y] = Some((x, j, fwd));
                    tree_edge[j] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    // path from the root to x as (1-cell index, forward)
    let path_to = |mut x: usize| {
        let mut out = Vec::new();
        while let Some((p, j, fwd)) = parent[x] {
            out.push((j, fwd));
            x = p;
        }
        out.reverse();
        out
    };
    let mut walks = Vec::new();
    for (j, &(a, b)) in ends.iter().enumerate() {
        if tree_edge[j] {
            continue;
        }
        let mut steps = path_to(a);
        steps.push((j, true));
        steps.extend(path_to(b).into_iter().rev().map(|(k, fwd)| (k, !fwd)));
        let cells = steps
            .into_iter()
            .map(|(k, fwd)| (cx.cell(1, k).expect("1-cell").clone(), fwd))
            .collect();
        walks.push((cx.cell(0, root[a]).expect("0-cell").clone(), cells));
    }
    walks
}

/// Replays a local walk in the target graph with particle `p` of the local
/// model relabelled `labels[p]`.
fn replay(
    graph: &Graph,
    emb: &Embedding,
    labels: &[Particle],
    root: &CubeCell,
    walk: &[(CubeCell, bool)],
    parking: &[(Particle, Place)],
) -> Result<Chain, CycleError> {
    let mut places = emb.places(root, labels);
    places.extend_from_slice(parking);
    let mut w = Walk::new(graph, configuration(graph, &places)?);
    for (cell, fwd) in walk {
        let &(p, state) = cell
            .slots()
            .iter()
            .find(|(_, s)| s.is_moving())
            .expect("1-cell has a mover");
        let mut steps = emb.steps(graph, state);
        if !fwd {
            steps.reverse();
        }
        for s in steps {
            w.step(labels[p], s)?;
        }
    }
    w.close()
}

fn subsets(n: usize, min: usize) -> Vec<Vec<Particle>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize >= min)
        .map(|m| (0..n).filter(|&p| m & (1 << p) != 0).collect())
        .collect()
}

/// Rider sequences: ordered subsets of `0..n`, each starting with its least
/// element (rotations give the same cycle).
fn rider_lists(n: usize) -> Vec<Vec<Particle>> {
    fn grow(n: usize, cur: &mut Vec<Particle>, out: &mut Vec<Vec<Particle>>) {
        out.push(cur.clone());
        for p in cur[0] + 1..n {
            if !cur.contains(&p) {
                cur.push(p);
                grow(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for first in 0..n {
        grow(n, &mut vec![first], &mut out);
    }
    out
}

/// Embedded circuits as departure-end routes, one per edge set, each of
/// length at most `cap`.
pub fn circuits(graph: &Graph, cap: usize) -> Vec<Vec<EdgeEnd>> {
    fn extend(
        graph: &Graph,
        start: VertexId,
        at: VertexId,
        route: &mut Vec<EdgeEnd>,
        seen: &mut Vec<bool>,
        cap: usize,
        found: &mut BTreeMap<Vec<EdgeId>, Vec<EdgeEnd>>,
    ) {
        if route.len() >= cap {
            return;
        }
        for &d in graph.ends_at(at) {
            if route.iter().any(|r| r.edge == d.edge) {
                continue;
            }
            let next = graph.vertex_of(d.opposite());
            route.push(d);
            if next == start {
                let mut key: Vec<EdgeId> = route.iter().map(|r| r.edge).collect();
                key.sort_unstable();
                found.entry(key).or_insert_with(|| route.clone());
            } else if next > start && !seen[next] {
                seen[next] = true;
                extend(graph, start, next, route, seen, cap, found);
                seen[next] = false;
            }
            route.pop();
        }
    }
    let mut found = BTreeMap::new();
    for s in graph.vertices() {
        let mut seen = vec![false; graph.vertex_count()];
        seen[s] = true;
        extend(graph, s, s, &mut Vec::new(), &mut seen, cap, &mut found);
    }
    found.into_values().collect()
}

/// Simple paths from `u` to `w` of length at most `cap`, as departure ends,
/// whose interior vertices are not sinks.
pub fn simple_paths(graph: &Graph, u: VertexId, w: VertexId, cap: usize) -> Vec<Vec<EdgeEnd>> {
    fn extend(
        graph: &Graph,
        at: VertexId,
        w: VertexId,
        route: &mut Vec<EdgeEnd>,
        seen: &mut Vec<bool>,
        cap: usize,
        out: &mut Vec<Vec<EdgeEnd>>,
    ) {
        if route.len() >= cap {
            return;
        }
        for &d in graph.ends_at(at) {
            let next = graph.vertex_of(d.opposite());
            if seen[next] {
                continue;
            }
            route.push(d);
            if next == w {
                out.push(route.clone());
            } else if !graph.is_sink(next) {
                seen[next] = true;
                extend(graph, next, w, route, seen, cap, out);
                seen[next] = false;
            }
            route.pop();
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; graph.vertex_count()];
    seen[u] = true;
    extend(graph, u, w, &mut Vec::new(), &mut seen, cap, &mut out);
    out
}

/// Local model whose leaves beyond `centres` are the given ends; a leaf is
/// a sink exactly when its edge in the target has a sink endpoint.
fn legs_model(
    graph: &Graph,
    family: Family,
    centres: &[VertexId],
    legs: &[EdgeEnd],
    first_leaf: usize,
) -> Option<(Graph, Vec<VertexId>)> {
    let sinks: Vec<VertexId> = legs
        .iter()
        .enumerate()
        .filter(|(_, &l)| graph.touches_sink(l.edge))
        .map(|(i, _)| first_leaf + i)
        .collect();
    let local = build_graph(&GraphSpec::with_sinks(family, &sinks)).ok()?;
    let mut vertex_map = centres.to_vec();
    vertex_map.extend(legs.iter().map(|&l| graph.vertex_of(l.opposite())));
    Some((local, vertex_map))
}

fn star_embeddings(graph: &Graph) -> Vec<(String, Embedding)> {
    let mut out = Vec::new();
    for v in graph.essential_vertices() {
        if graph.is_sink(v) {
            continue;
        }
        let legs = graph.ends_at(v).to_vec();
        let Some((local, vertex_map)) = legs_model(graph, Family::Star(legs.len()), &[v], &legs, 1)
        else {
            continue;
        };
        let edge_paths = legs.iter().map(|&l| vec![l]).collect();
        out.push((
            format!("star at {v}"),
            Embedding {
                local,
                vertex_map,
                edge_paths,
            },
        ));
    }
    out
}

fn pairs_of(ends: &[EdgeEnd]) -> Vec<[EdgeEnd; 2]> {
    let mut out = Vec::new();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            out.push([ends[i], ends[j]]);
        }
    }
    out
}

fn h_embeddings(graph: &Graph, cap: usize) -> Vec<(String, Embedding)> {
    let centres: Vec<VertexId> = graph
        .vertices()
        .filter(|&v| !graph.is_sink(v) && graph.valence(v) >= 3)
        .collect();
    let mut out = Vec::new();
    for (i, &u) in centres.iter().enumerate() {
        for &w in &centres[i + 1..] {
            for path in simple_paths(graph, u, w, cap) {
                let (path, u, w) = if graph.touches_sink(path[0].edge) {
                    let back: Vec<EdgeEnd> = path.iter().rev().map(|d| d.opposite()).collect();
                    (back, w, u)
                } else {
                    (path, u, w)
                };
                if graph.touches_sink(path[0].edge) {
                    continue;
                }
                let first = path[0];
                let last = path.last().unwrap().opposite();
                let at_u: Vec<EdgeEnd> = graph
                    .ends_at(u)
                    .iter()
                    .copied()
                    .filter(|&e| e != first)
                    .collect();
                let at_w: Vec<EdgeEnd> = graph
                    .ends_at(w)
                    .iter()
                    .copied()
                    .filter(|&e| e != last)
                    .collect();
                for su in pairs_of(&at_u) {
                    for sw in pairs_of(&at_w) {
                        let legs = [su[0], su[1], sw[0], sw[1]];
                        let Some((local, vertex_map)) =
                            legs_model(graph, Family::H, &[u, w], &legs, 2)
                        else {
                            continue;
                        };
                        // local edges: [0,1] middle, [0,2], [0,3], [1,4], [1,5]
                        let mut edge_paths = vec![path.clone()];
                        edge_paths.extend(legs.iter().map(|&l| vec![l]));
                        let emb = Embedding {
                            local,
                            vertex_map,
                            edge_paths,
                        };
                        if emb.check(graph) {
                            out.push((format!("H on {u}-{w} via {} edges", path.len()), emb));
                        }
                    }
                }
            }
        }
    }
    out
}

fn interval_embeddings(graph: &Graph, cap: usize) -> Vec<(String, Embedding)> {
    let sinks = graph.sinks();
    let mut out = Vec::new();
    for (i, &s) in sinks.iter().enumerate() {
        for &t in &sinks[i + 1..] {
            for path in simple_paths(graph, s, t, cap) {
                let local = build_graph(&GraphSpec::with_sinks(Family::Interval, &[0, 1]))
                    .expect("interval with two sinks");
                out.push((
                    format!("interval {s}-{t} via {} edges", path.len()),
                    Embedding {
                        local,
                        vertex_map: vec![s, t],
                        edge_paths: vec![path],
                    },
                ));
            }
        }
    }
    out
}

/// Static places a parked particle may take.
fn parking_places(graph: &Graph) -> Vec<Place> {
    let mut out: Vec<Place> = graph
        .vertices()
        .filter(|&v| graph.is_usable_vertex(v))
        .map(Place::Vertex)
        .collect();
    for e in 0..graph.edge_count() {
        if !graph.touches_sink(e) {
            out.push(Place::Near(EdgeEnd::new(e, End::Iota)));
            out.push(Place::Near(EdgeEnd::new(e, End::Tau)));
        }
    }
    out
}

/// Assignments of places to `rest`, at most `cap` of them; the flag reports
/// truncation.
fn parkings(
    places: &[Place],
    rest: &[Particle],
    cap: usize,
) -> (Vec<Vec<(Particle, Place)>>, bool) {
    let total = places
        .len()
        .checked_pow(rest.len() as u32)
        .unwrap_or(usize::MAX);
    let take = total.min(cap);
    let mut out = Vec::with_capacity(take);
    for mut code in 0..take {
        let mut assignment = Vec::with_capacity(rest.len());
        for &p in rest {
            assignment.push((p, places[code % places.len()]));
            code /= places.len();
        }
        out.push(assignment);
    }
    (out, total > cap)
}

/// A degree-1 cycle on a subset of the particles, before parking.
#[derive(Clone)]
enum Core {
    Local {
        kind: ClassKind,
        label: String,
        emb: std::sync::Arc<Embedding>,
        root: CubeCell,
        walk: std::sync::Arc<Vec<(CubeCell, bool)>>,
        labels: Vec<Particle>,
    },
    Circle(CircuitSpec),
}

impl Core {
    fn kind(&self) -> ClassKind {
        match self {
            Core::Local { kind, .. } => *kind,
            Core::Circle(_) => ClassKind::Circle,
        }
    }

    fn particles(&self) -> Vec<Particle> {
        match self {
            Core::Local { labels, .. } => labels.clone(),
            Core::Circle(c) => c.riders.clone(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Core::Local { label, labels, .. } => format!("{label}, particles {labels:?}"),
            Core::Circle(c) => format!(
                "circle through edges {:?}, riders {:?}",
                c.route.iter().map(|d| d.edge).collect::<Vec<_>>(),
                c.riders
            ),
        }
    }

    fn build(&self, graph: &Graph, parking: &[(Particle, Place)]) -> Result<Chain, CycleError> {
        match self {
            Core::Local {
                emb,
                root,
                walk,
                labels,
                ..
            } => replay(graph, emb, labels, root, walk, parking),
            Core::Circle(c) => circuit_cycle(graph, c, parking),
        }
    }
}

/// Fundamental closed walks of a local model, as a root 0-cell and directed 1-cells.
type LocalWalk = Vec<(CubeCell, Vec<(CubeCell, bool)>)>;

fn cores(graph: &Graph, n: usize, caps: &EnumerationCaps) -> Vec<Core> {
    let mut embeddings: Vec<(ClassKind, String, Embedding)> = Vec::new();
    for (label, e) in star_embeddings(graph) {
        embeddings.push((ClassKind::Star, label, e));
    }
    for (label, e) in h_embeddings(graph, caps.max_path_len) {
        embeddings.push((ClassKind::H, label, e));
    }
    for (label, e) in interval_embeddings(graph, caps.max_path_len) {
        embeddings.push((ClassKind::Interval, label, e));
    }
    let sets = subsets(n, 2);
    let mut out = Vec::new();
    let mut local_walks: BTreeMap<(String, usize), std::sync::Arc<LocalWalk>> = BTreeMap::new();
    for (kind, label, emb) in embeddings {
        let emb = std::sync::Arc::new(emb);
        for set in &sets {
            let key = (format!("{:?}", emb.local), set.len());
            let walks = local_walks
                .entry(key)
                .or_insert_with(|| {
                    std::sync::Arc::new(
                        CubeComplex::enumerate(&emb.local, set.len())
                            .map(|cx| fundamental_walks(&cx))
                            .unwrap_or_default(),
                    )
                })
                .clone();
            for (root, walk) in walks.iter() {
                out.push(Core::Local {
                    kind,
                    label: label.clone(),
                    emb: emb.clone(),
                    root: root.clone(),
                    walk: std::sync::Arc::new(walk.clone()),
                    labels: set.clone(),
                });
            }
        }
    }
    let riders = rider_lists(n);
    for route in circuits(graph, caps.max_circuit_len) {
        for r in &riders {
            out.push(Core::Circle(CircuitSpec {
                route: route.clone(),
                riders: r.clone(),
            }));
        }
    }
    out
}

/// Enumerates basic classes on particles `0..n`: star, H, interval and
/// circle classes with the remaining particles parked in every admissible
/// way, and optionally degree-2 products of two of them. Classes with equal
/// chains are reported once; zero chains and combinations that do not fit
/// in the graph are skipped.
pub fn enumerate_basic_classes(graph: &Graph, n: usize, caps: &EnumerationCaps) -> BasicClasses {
    let mut out = BasicClasses::default();
    let mut seen: HashSet<Chain> = HashSet::new();
    let places = parking_places(graph);
    let cores = cores(graph, n, caps);
    let mut push = |out: &mut BasicClasses, class: BasicClass| -> bool {
        if out.classes.len() >= caps.max_classes {
            out.truncated = true;
            return false;
        }
        if !class.chain.is_zero() && seen.insert(class.chain.clone()) {
            out.classes.push(class);
        }
        true
    };

    for core in &cores {
        let used = core.particles();
        let rest: Vec<Particle> = (0..n).filter(|p| !used.contains(p)).collect();
        let (options, cut) = parkings(&places, &rest, caps.max_parkings);
        out.truncated |= cut;
        for parking in options {
            if let Ok(chain) = core.build(graph, &parking) {
                let class = BasicClass {
                    kind: core.kind(),
                    description: core.describe(),
                    particles: used.clone(),
                    parking,
                    chain,
                };
                if !push(&mut out, class) {
                    return out;
                }
            }
        }
    }

    if caps.products {
        type Support = (BTreeSet<Particle>, BTreeSet<VertexId>, BTreeSet<EdgeId>);
        let bare: Vec<(&Core, Chain, Support)> = cores
            .iter()
            .filter_map(|c| c.build(graph, &[]).ok().map(|z| (c, z)))
            .filter(|(_, z)| !z.is_zero())
            .map(|(c, z)| {
                let (vs, es) = chain_support(graph, &z);
                let ps = z.particles().into_iter().collect();
                (c, z, (ps, vs, es))
            })
            .collect();
        for (i, (c1, z1, s1)) in bare.iter().enumerate() {
            for (c2, z2, s2) in &bare[i + 1..] {
                // cheap disjointness filter before building the product
                if !s1.0.is_disjoint(&s2.0) || !s1.1.is_disjoint(&s2.1) || !s1.2.is_disjoint(&s2.2)
                {
                    continue;
                }
                let Ok(z) = product_chain(graph, z1, z2) else {
                    continue;
                };
                let mut used = c1.particles();
                used.extend(c2.particles());
                let rest: Vec<Particle> = (0..n).filter(|p| !used.contains(p)).collect();
                let (options, cut) = parkings(&places, &rest, caps.max_parkings);
                out.truncated |= cut;
                for parking in options {
                    let chain = if parking.is_empty() {
                        z.clone()
                    } else {
                        let Ok(fixed) = configuration(graph, &parking) else {
                            continue;
                        };
                        match product_chain(graph, &z, &Chain::from_cell(fixed, 1)) {
                            Ok(c) => c,
                            Err(_) => continue,
                        }
                    };
                    let class = BasicClass {
                        kind: ClassKind::Product,
                        description: format!("({}) x ({})", c1.describe(), c2.describe()),
                        particles: used.clone(),
                        parking,
                        chain,
                    };
                    if !push(&mut out, class) {
                        return out;
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{class_span_rank, homology, is_cycle};

    fn fam(f: Family, sinks: &[VertexId]) -> Graph {
        build_graph(&GraphSpec::with_sinks(f, sinks)).unwrap()
    }

    #[test]
    fn fundamental_walks_are_cycles() {
        let g = fam(Family::Star(3), &[]);
        let cx = CubeComplex::enumerate(&g, 3).unwrap();
        let walks = fundamental_walks(&cx);
        assert_eq!(
            walks.len(),
            cx.cell_count(1) - cx.cell_count(0) + cx.connected_components()
        );
        let emb = Embedding {
            local: g.clone(),
            vertex_map: (0..4).collect(),
            edge_paths: (0..3).map(|e| vec![EdgeEnd::new(e, End::Iota)]).collect(),
        };
        for (root, walk) in &walks {
            let z = replay(&g, &emb, &[0, 1, 2], root, walk, &[]).unwrap();
            assert!(is_cycle(&z, &g));
        }
    }

    #[test]
    fn spans_small_trees() {
        for (g, n) in [
            (fam(Family::Star(3), &[]), 2),
            (fam(Family::Star(4), &[]), 3),
            (fam(Family::H, &[]), 2),
            (fam(Family::H, &[]), 3),
            (fam(Family::Star(3), &[1]), 3),
            (fam(Family::Interval, &[0, 1]), 3),
        ] {
            let cx = CubeComplex::enumerate(&g, n).unwrap();
            let h = homology(&cx).unwrap();
            let classes = enumerate_basic_classes(&g, n, &EnumerationCaps::default());
            assert!(!classes.truncated);
            let r = class_span_rank(&classes.chains(1), &cx, 1).unwrap();
            assert_eq!(r, h.betti_in(1), "{:?} n={n}", g.to_document());
        }
    }

    #[test]
    fn circuit_and_path_search() {
        let g = fam(Family::Banana(4), &[]);
        assert_eq!(circuits(&g, 6).len(), 6);
        let k = fam(Family::Complete(4), &[]);
        assert_eq!(circuits(&k, 6).len(), 7);
        assert_eq!(simple_paths(&k, 0, 1, 3).len(), 5);
        let s = fam(Family::Star(3), &[0]);
        assert!(simple_paths(&s, 1, 2, 3).is_empty());
    }

    #[test]
    fn banana_has_no_degree_two_products() {
        let g = fam(Family::Banana(4), &[]);
        let caps = EnumerationCaps {
            products: true,
            ..EnumerationCaps::default()
        };
        let classes = enumerate_basic_classes(&g, 3, &caps);
        assert!(classes.chains(2).is_empty());
    }
}
