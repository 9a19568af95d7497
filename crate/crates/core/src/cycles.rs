//! Explicit cycles: star, circuit and H classes, products, push-ins, the
//! non-product 2-cycle on the four-edge banana graph, and enumeration of
//! candidate basic classes.
//!
//! One-dimensional cycles are built as walks: a start configuration is
//! assembled from [`Place`]s, and each step replaces the state of one
//! particle by a moving state. The resulting 1-cell is oriented by whichever
//! of its two ends is the current configuration, so walks never need to know
//! sign conventions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cell::{CubeCell, Particle, ParticleState};
use crate::chain::Chain;
use crate::complex::CubeComplex;
use crate::graph::{EdgeEnd, EdgeId, End, Graph, GraphError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("particle {particle} cannot move by {state} from {at}")]
    Blocked {
        particle: Particle,
        state: String,
        at: String,
    },
    #[error("walk does not close: started at {start}, ended at {end}")]
    NotClosed { start: String, end: String },
    #[error("bad specification: {0}")]
    BadSpec(String),
    #[error("particle sets overlap")]
    ParticleOverlap,
    #[error("supports overlap")]
    SupportOverlap,
    #[error("not the four-edge banana graph with three particles: {0}")]
    WrongComplex(String),
    #[error("no choice of signs makes the sum a cycle")]
    NoSignChoice,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a static particle sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Place {
    Vertex(VertexId),
    /// In the interior of an edge without sink endpoints, next to the given
    /// end. Several particles near the same end are listed outermost first.
    Near(EdgeEnd),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Vertex(v) => write!(f, "v{v}"),
            Place::Near(ee) => write!(
                f,
                "e{}{}",
                ee.edge,
                if ee.end == End::Iota { "i" } else { "t" }
            ),
        }
    }
}

/// Assembles a 0-cell from places. Ranks on each edge are the particles
/// near the `ι` end in listed order, followed by those near the `τ` end in
/// reverse listed order.
pub fn configuration(graph: &Graph, places: &[(Particle, Place)]) -> Result<CubeCell, CycleError> {
    let mut near: BTreeMap<EdgeId, (Vec<Particle>, Vec<Particle>)> = BTreeMap::new();
    let mut slots = Vec::with_capacity(places.len());
    for &(p, place) in places {
        match place {
            Place::Vertex(v) => {
                if v >= graph.vertex_count() {
                    return Err(GraphError::NoSuchVertex(v).into());
                }
                slots.push((p, ParticleState::AtVertex(v)));
            }
            Place::Near(ee) => {
                if ee.edge >= graph.edge_count() {
                    return Err(GraphError::NoSuchEdge(ee.edge).into());
                }
                if graph.touches_sink(ee.edge) {
                    return Err(CycleError::InvalidConfiguration(format!(
                        "edge {} has a sink endpoint and no interior slots",
                        ee.edge
                    )));
                }
                let lists = near.entry(ee.edge).or_default();
                match ee.end {
                    End::Iota => lists.0.push(p),
                    End::Tau => lists.1.push(p),
                }
            }
        }
    }
    for (e, (iota, tau)) in near {
        for (r, p) in iota.into_iter().chain(tau.into_iter().rev()).enumerate() {
            slots.push((p, ParticleState::OnEdge(e, r)));
        }
    }
    let cell =
        CubeCell::from_slots(slots).map_err(|e| CycleError::InvalidConfiguration(e.to_string()))?;
    if !cell.is_valid(graph) {
        return Err(CycleError::InvalidConfiguration(cell.to_string()));
    }
    Ok(cell)
}

/// Resting place just off the vertex at `ee`, on the edge of `ee`: inside
/// the edge if it has no sink endpoint, otherwise on the far (sink) end.
pub fn rest(graph: &Graph, ee: EdgeEnd) -> Place {
    if graph.touches_sink(ee.edge) {
        Place::Vertex(graph.vertex_of(ee.opposite()))
    } else {
        Place::Near(ee)
    }
}

/// The move connecting [`rest`]`(ee)` with the vertex at `ee`.
fn hop_state(graph: &Graph, ee: EdgeEnd) -> ParticleState {
    if graph.touches_sink(ee.edge) {
        ParticleState::MoveFull(ee.edge)
    } else {
        ParticleState::MoveEnd(ee.edge, ee.end)
    }
}

/// Moving states that carry a particle across an edge, leaving from the
/// vertex at `departure`.
pub(crate) fn crossing(graph: &Graph, departure: EdgeEnd) -> Vec<ParticleState> {
    if graph.touches_sink(departure.edge) {
        vec![ParticleState::MoveFull(departure.edge)]
    } else {
        vec![
            ParticleState::MoveEnd(departure.edge, departure.end),
            ParticleState::MoveEnd(departure.edge, departure.end.opposite()),
        ]
    }
}

pub(crate) struct Walk<'g> {
    graph: &'g Graph,
    start: CubeCell,
    current: CubeCell,
    chain: Chain,
}

impl<'g> Walk<'g> {
    pub(crate) fn new(graph: &'g Graph, start: CubeCell) -> Self {
        Self {
            graph,
            current: start.clone(),
            start,
            chain: Chain::zero(1),
        }
    }

    /// Moves `p` along the 1-cell in which it has state `moving` and every
    /// other particle is as in the current configuration. Leaves the walk
    /// untouched on failure.
    pub(crate) fn step(&mut self, p: Particle, moving: ParticleState) -> Result<(), CycleError> {
        let blocked = || CycleError::Blocked {
            particle: p,
            state: moving.to_string(),
            at: self.current.to_string(),
        };
        let others = self.current.forget(p).ok_or_else(blocked)?;
        let single = CubeCell::from_slots(vec![(p, moving)]).map_err(|_| blocked())?;
        let cell = others.merge(&single).ok_or_else(blocked)?;
        if !cell.is_valid(self.graph) {
            return Err(blocked());
        }
        let lo = cell.face(self.graph, 0, 0).map_err(|_| blocked())?;
        let hi = cell.face(self.graph, 0, 1).map_err(|_| blocked())?;
        if lo == self.current {
            self.chain.add_term(cell, 1);
            self.current = hi;
        } else if hi == self.current {
            self.chain.add_term(cell, -1);
            self.current = lo;
        } else {
            return Err(blocked());
        }
        Ok(())
    }

    fn hop(&mut self, p: Particle, ee: EdgeEnd) -> Result<(), CycleError> {
        self.step(p, hop_state(self.graph, ee))
    }

    fn cross(&mut self, p: Particle, path: &[EdgeEnd]) -> Result<(), CycleError> {
        for &d in path {
            for s in crossing(self.graph, d) {
                self.step(p, s)?;
            }
        }
        Ok(())
    }

    pub(crate) fn close(self) -> Result<Chain, CycleError> {
        if self.current != self.start {
            return Err(CycleError::NotClosed {
                start: self.start.to_string(),
                end: self.current.to_string(),
            });
        }
        Ok(self.chain)
    }
}

fn check_parking(used: &[Particle], parking: &[(Particle, Place)]) -> Result<(), CycleError> {
    let mut seen: BTreeSet<Particle> = used.iter().copied().collect();
    if seen.len() != used.len() {
        return Err(CycleError::ParticleOverlap);
    }
    for &(p, _) in parking {
        if !seen.insert(p) {
            return Err(CycleError::ParticleOverlap);
        }
    }
    Ok(())
}

fn check_end(graph: &Graph, ee: EdgeEnd) -> Result<VertexId, CycleError> {
    if ee.edge >= graph.edge_count() {
        return Err(GraphError::NoSuchEdge(ee.edge).into());
    }
    Ok(graph.vertex_of(ee))
}

/// Two particles shuffling through an essential vertex using three of its
/// ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StarSpec {
    pub vertex: VertexId,
    pub ends: [EdgeEnd; 3],
    pub particles: [Particle; 2],
}

/// Star cycle: starting with the first particle resting at `ends[0]` and the
/// second at `ends[1]`, the particles take turns (first particle first)
/// moving through the vertex onto the free end, six moves in all, which
/// restores the start.
pub fn star_cycle(
    graph: &Graph,
    spec: &StarSpec,
    parking: &[(Particle, Place)],
) -> Result<Chain, CycleError> {
    let v = spec.vertex;
    if v >= graph.vertex_count() {
        return Err(GraphError::NoSuchVertex(v).into());
    }
    if graph.is_sink(v) {
        return Err(CycleError::BadSpec(format!("star vertex {v} is a sink")));
    }
    for &ee in &spec.ends {
        if check_end(graph, ee)? != v {
            return Err(CycleError::BadSpec(format!(
                "end {ee:?} is not at vertex {v}"
            )));
        }
    }
    let [x, y, z] = spec.ends;
    if x == y || y == z || x == z {
        return Err(CycleError::BadSpec("star ends must be distinct".into()));
    }
    check_parking(&spec.particles, parking)?;
    let [a, b] = spec.particles;
    let mut places = vec![(a, rest(graph, x)), (b, rest(graph, y))];
    places.extend_from_slice(parking);
    let mut walk = Walk::new(graph, configuration(graph, &places)?);
    let mut pos = [0usize, 1];
    let mut free = 2usize;
    for k in 0..6 {
        let who = k % 2;
        let from = pos[who];
        walk.hop(spec.particles[who], spec.ends[from])?;
        walk.hop(spec.particles[who], spec.ends[free])?;
        pos[who] = free;
        free = from;
    }
    walk.close()
}

/// `Σ_i (−1)^i` of the star cycles on the four ends with end `i` omitted,
/// keeping the order of the remaining ends. Always the zero chain.
pub fn star4_relation(
    graph: &Graph,
    vertex: VertexId,
    ends: [EdgeEnd; 4],
    particles: [Particle; 2],
    parking: &[(Particle, Place)],
) -> Result<Chain, CycleError> {
    let mut total = Chain::zero(1);
    for i in 0..4 {
        let mut three = ends
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e);
        let spec = StarSpec {
            vertex,
            ends: [
                three.next().unwrap(),
                three.next().unwrap(),
                three.next().unwrap(),
            ],
            particles,
        };
        let z = star_cycle(graph, &spec, parking)?;
        total
            .add_chain(&z, if i % 2 == 0 { 1 } else { -1 })
            .expect("star cycles have degree one");
    }
    Ok(total)
}

/// Particles travelling once around an embedded circuit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CircuitSpec {
    /// Departure ends of the circuit edges, in travel order.
    pub route: Vec<EdgeEnd>,
    /// Particles on the circuit, front of the convoy first.
    pub riders: Vec<Particle>,
}

fn check_route(graph: &Graph, route: &[EdgeEnd], closed: bool) -> Result<(), CycleError> {
    if route.is_empty() {
        return Err(CycleError::BadSpec("empty route".into()));
    }
    let mut edges = BTreeSet::new();
    for w in 0..route.len() {
        check_end(graph, route[w])?;
        if !edges.insert(route[w].edge) {
            return Err(CycleError::BadSpec(format!(
                "edge {} used twice",
                route[w].edge
            )));
        }
        let arrive = graph.vertex_of(route[w].opposite());
        let next = if w + 1 < route.len() {
            Some(route[w + 1])
        } else if closed {
            Some(route[0])
        } else {
            None
        };
        if let Some(n) = next {
            if graph.vertex_of(n) != arrive {
                return Err(CycleError::BadSpec(format!(
                    "route is broken after edge {}",
                    route[w].edge
                )));
            }
        }
    }
    Ok(())
}

/// Circuit cycle: the riders, one after another, each go once around the
/// circuit, so that the convoy returns to its starting order.
///
/// The riders start inside the first edge of the route that has no sink
/// endpoint, or on a sink of the circuit if every edge has one.
pub fn circuit_cycle(
    graph: &Graph,
    spec: &CircuitSpec,
    parking: &[(Particle, Place)],
) -> Result<Chain, CycleError> {
    check_route(graph, &spec.route, true)?;
    if spec.riders.is_empty() {
        return Err(CycleError::BadSpec("a circuit needs a rider".into()));
    }
    check_parking(&spec.riders, parking)?;
    let len = spec.route.len();
    let inner = (0..len).find(|&i| !graph.touches_sink(spec.route[i].edge));
    let (route, start_places): (Vec<EdgeEnd>, Vec<Place>) = match inner {
        Some(i) => {
            let route: Vec<EdgeEnd> = (0..len).map(|k| spec.route[(i + k) % len]).collect();
            let far = route[0].opposite();
            (route, vec![Place::Near(far); spec.riders.len()])
        }
        None => {
            let i = (0..len)
                .find(|&i| graph.is_sink(graph.vertex_of(spec.route[i])))
                .expect("an edge with a sink endpoint leaves from a sink on a circuit");
            let route: Vec<EdgeEnd> = (0..len).map(|k| spec.route[(i + k) % len]).collect();
            let s = graph.vertex_of(route[0]);
            (route, vec![Place::Vertex(s); spec.riders.len()])
        }
    };
    let lap: Vec<ParticleState> = if inner.is_some() {
        let e0 = route[0];
        let mut lap = vec![ParticleState::MoveEnd(e0.edge, e0.end.opposite())];
        for &d in &route[1..] {
            lap.extend(crossing(graph, d));
        }
        lap.push(ParticleState::MoveEnd(e0.edge, e0.end));
        lap
    } else {
        route.iter().flat_map(|&d| crossing(graph, d)).collect()
    };

    let mut places: Vec<(Particle, Place)> =
        spec.riders.iter().copied().zip(start_places).collect();
    places.extend_from_slice(parking);
    let mut walk = Walk::new(graph, configuration(graph, &places)?);
    let mut progress = vec![0usize; spec.riders.len()];
    while progress.iter().any(|&k| k < lap.len()) {
        let mut moved = false;
        for (r, &p) in spec.riders.iter().enumerate() {
            if progress[r] < lap.len() && walk.step(p, lap[progress[r]]).is_ok() {
                progress[r] += 1;
                moved = true;
                break;
            }
        }
        if !moved {
            let r = progress.iter().position(|&k| k < lap.len()).unwrap();
            return Err(CycleError::Blocked {
                particle: spec.riders[r],
                state: lap[progress[r]].to_string(),
                at: walk.current.to_string(),
            });
        }
    }
    walk.close()
}

/// Two particles exchanging order along a path, reordering at one end and
/// undoing it at the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HSpec {
    /// Departure ends of the path edges, from the first endpoint `u` to the
    /// second endpoint `w`.
    pub path: Vec<EdgeEnd>,
    /// Two further ends at `u`; `None` when `u` is a sink.
    pub from_sides: Option<[EdgeEnd; 2]>,
    /// Two further ends at `w`; `None` when `w` is a sink.
    pub to_sides: Option<[EdgeEnd; 2]>,
    pub particles: [Particle; 2],
}

/// H cycle: both particles start on the `u` side (`a` at the first side,
/// `b` at the second, or both on `u` if it is a sink) and are carried across
/// the path to the `w` side (`a` to the first side, `b` to the second).
/// Route one sends `a` first, route two sends `b` first, so the particles
/// are reordered at `u` and the reordering is undone at `w`. The cycle is
/// route one minus route two.
pub fn h_cycle(
    graph: &Graph,
    spec: &HSpec,
    parking: &[(Particle, Place)],
) -> Result<Chain, CycleError> {
    check_route(graph, &spec.path, false)?;
    let u = graph.vertex_of(spec.path[0]);
    let w = graph.vertex_of(spec.path.last().unwrap().opposite());
    if u == w {
        return Err(CycleError::BadSpec("path endpoints coincide".into()));
    }
    for (x, sides) in [(u, spec.from_sides), (w, spec.to_sides)] {
        match sides {
            None if !graph.is_sink(x) => {
                return Err(CycleError::BadSpec(format!("vertex {x} needs two sides")))
            }
            Some([s1, s2])
                if check_end(graph, s1)? != x || check_end(graph, s2)? != x || s1 == s2 =>
            {
                return Err(CycleError::BadSpec(format!("bad sides at vertex {x}")));
            }
            _ => {}
        }
    }
    check_parking(&spec.particles, parking)?;
    let mut places: Vec<(Particle, Place)> = spec
        .particles
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            (
                p,
                spec.from_sides
                    .map_or(Place::Vertex(u), |s| rest(graph, s[i])),
            )
        })
        .collect();
    places.extend_from_slice(parking);
    let start = configuration(graph, &places)?;

    let carry = |walk: &mut Walk, i: usize| -> Result<(), CycleError> {
        let p = spec.particles[i];
        if let Some(s) = spec.from_sides {
            walk.hop(p, s[i])?;
        }
        walk.cross(p, &spec.path)?;
        if let Some(t) = spec.to_sides {
            walk.hop(p, t[i])?;
        }
        Ok(())
    };
    let mut one = Walk::new(graph, start.clone());
    carry(&mut one, 0)?;
    carry(&mut one, 1)?;
    let mut two = Walk::new(graph, start);
    carry(&mut two, 1)?;
    carry(&mut two, 0)?;
    if one.current != two.current {
        return Err(CycleError::NotClosed {
            start: one.current.to_string(),
            end: two.current.to_string(),
        });
    }
    let mut z = one.chain;
    z.add_chain(&two.chain, -1).expect("walks have degree one");
    Ok(z)
}

/// Non-sink vertices and edges touched by any cell of the chain.
pub fn chain_support(graph: &Graph, chain: &Chain) -> (BTreeSet<VertexId>, BTreeSet<EdgeId>) {
    let mut vs = BTreeSet::new();
    let mut es = BTreeSet::new();
    for (cell, _) in chain.terms() {
        let (v, e) = cell.support(graph);
        vs.extend(v.into_iter().filter(|&v| !graph.is_sink(v)));
        es.extend(e);
    }
    (vs, es)
}

/// Cross product of chains on disjoint particle sets with disjoint
/// supports. Directions of `c1` come before those of `c2`; the sign of each
/// merged cell accounts for reordering them by particle label, so that
/// `∂(c1 × c2) = ∂c1 × c2 + (−1)^{deg c1} c1 × ∂c2`.
pub fn product_chain(graph: &Graph, c1: &Chain, c2: &Chain) -> Result<Chain, CycleError> {
    let p1: BTreeSet<Particle> = c1.particles().into_iter().collect();
    if c2.particles().iter().any(|p| p1.contains(p)) {
        return Err(CycleError::ParticleOverlap);
    }
    let (v1, e1) = chain_support(graph, c1);
    let (v2, e2) = chain_support(graph, c2);
    if !v1.is_disjoint(&v2) || !e1.is_disjoint(&e2) {
        return Err(CycleError::SupportOverlap);
    }
    let mut out = Chain::zero(c1.degree() + c2.degree());
    for (a, x) in c1.terms() {
        let ma = a.movers();
        for (b, y) in c2.terms() {
            let cell = a.merge(b).ok_or(CycleError::ParticleOverlap)?;
            if !cell.is_valid(graph) {
                return Err(CycleError::InvalidConfiguration(cell.to_string()));
            }
            let inversions: usize = b
                .movers()
                .iter()
                .map(|q| ma.iter().filter(|&&p| q < &p).count())
                .sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            out.add_term(cell, sign * x * y);
        }
    }
    Ok(out)
}

/// Pushes a new particle `s` in from the leaf at `leaf`: onto the leaf if it
/// is a sink, onto the other endpoint if that is a sink, and otherwise into
/// the edge as its outermost particle on the leaf side.
pub fn push_in(
    graph: &Graph,
    chain: &Chain,
    leaf: EdgeEnd,
    s: Particle,
) -> Result<Chain, CycleError> {
    let v = check_end(graph, leaf)?;
    if graph.valence(v) != 1 {
        return Err(CycleError::BadSpec(format!("vertex {v} is not a leaf")));
    }
    if chain.particles().contains(&s) {
        return Err(CycleError::ParticleOverlap);
    }
    let e = leaf.edge;
    let mut out = Chain::zero(chain.degree());
    for (cell, k) in chain.terms() {
        let mut slots = cell.slots().to_vec();
        if graph.is_sink(v) {
            slots.push((s, ParticleState::AtVertex(v)));
        } else if graph.touches_sink(e) {
            slots.push((s, ParticleState::AtVertex(graph.vertex_of(leaf.opposite()))));
        } else {
            let statics = slots
                .iter()
                .filter(|(_, st)| matches!(st, ParticleState::OnEdge(f, _) if *f == e))
                .count();
            let rank = match leaf.end {
                End::Iota => {
                    for (_, st) in slots.iter_mut() {
                        if let ParticleState::OnEdge(f, r) = st {
                            if *f == e {
                                *r += 1;
                            }
                        }
                    }
                    0
                }
                End::Tau => statics,
            };
            slots.push((s, ParticleState::OnEdge(e, rank)));
        }
        let pushed = CubeCell::from_slots(slots).map_err(|_| CycleError::ParticleOverlap)?;
        if !pushed.is_valid(graph) {
            return Err(CycleError::InvalidConfiguration(pushed.to_string()));
        }
        out.add_term(pushed, k);
    }
    Ok(out)
}

/// Forgets particle `s`, which must be static in every cell of the chain.
pub fn forget_static(chain: &Chain, s: Particle) -> Option<Chain> {
    let mut out = Chain::zero(chain.degree());
    for (cell, k) in chain.terms() {
        if cell.state(s)?.is_moving() {
            return None;
        }
        out.add_term(cell.forget(s)?, k);
    }
    Some(out)
}

/// The pieces of a four-edge banana graph inside a larger graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BananaParts {
    pub v: VertexId,
    pub w: VertexId,
    pub edges: [EdgeId; 4],
}

impl BananaParts {
    fn ends_at(&self, graph: &Graph, x: VertexId) -> [EdgeEnd; 4] {
        self.edges.map(|e| {
            if graph.endpoint(e, End::Iota) == x {
                EdgeEnd::new(e, End::Iota)
            } else {
                EdgeEnd::new(e, End::Tau)
            }
        })
    }
}

fn banana_chain(
    graph: &Graph,
    parts: &BananaParts,
    particles: [Particle; 3],
) -> Result<Chain, CycleError> {
    let at_v = parts.ends_at(graph, parts.v);
    let at_w = parts.ends_at(graph, parts.w);
    let mut pieces = Vec::with_capacity(3);
    for t_idx in (0..3).rev() {
        let t = particles[t_idx];
        let pair: Vec<Particle> = particles.iter().copied().filter(|&p| p != t).collect();
        let mut piece = Chain::zero(2);
        for i in 0..4 {
            let mut three = (0..4).filter(|&j| j != i).map(|j| at_v[j]);
            let star = star_cycle(
                graph,
                &StarSpec {
                    vertex: parts.v,
                    ends: [
                        three.next().unwrap(),
                        three.next().unwrap(),
                        three.next().unwrap(),
                    ],
                    particles: [pair[0], pair[1]],
                },
                &[],
            )?;
            let hop = CubeCell::from_slots(vec![(t, hop_state(graph, at_w[i]))])
                .expect("single particle");
            let cylinder = product_chain(graph, &star, &Chain::from_cell(hop, 1))?;
            piece
                .add_chain(&cylinder, if i % 2 == 0 { 1 } else { -1 })
                .expect("degree two");
        }
        pieces.push(piece);
    }
    for signs in [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
        let mut total = Chain::zero(2);
        for (piece, s) in pieces.iter().zip(signs) {
            total.add_chain(piece, s).expect("degree two");
        }
        if !total.is_zero() && total.boundary(graph).is_zero() {
            return Ok(total);
        }
    }
    Err(CycleError::NoSignChoice)
}

/// Recognises the four-edge banana graph: two vertices, four edges joining
/// them, no sinks.
pub fn banana_parts(graph: &Graph) -> Result<BananaParts, CycleError> {
    let ok = graph.vertex_count() == 2
        && graph.edge_count() == 4
        && graph.sinks().is_empty()
        && (0..4).all(|e| !graph.is_loop(e));
    if !ok {
        return Err(CycleError::WrongComplex("graph shape".into()));
    }
    Ok(BananaParts {
        v: 0,
        w: 1,
        edges: [0, 1, 2, 3],
    })
}

/// The non-product 2-cycle on three particles in the four-edge banana
/// graph: for every pair `S` of particles and every edge `i`, the star
/// cycle of `S` at `v` on the other three edges times the remaining particle
/// moving along edge `i` to `w`, with sign `(−1)^i`; the signs of the three
/// pairs are chosen to make the sum a cycle. Its support has 144 cells.
pub fn b3_nonproduct_cycle(cx: &CubeComplex) -> Result<Chain, CycleError> {
    if cx.particle_count() != 3 {
        return Err(CycleError::WrongComplex(format!(
            "{} particles",
            cx.particle_count()
        )));
    }
    let parts = banana_parts(cx.graph())?;
    banana_chain(cx.graph(), &parts, [0, 1, 2])
}

/// The banana graph with `loops` lollipops (a stem edge ending in a loop)
/// attached at `v`, and the recipe for a `(loops + 2)`-cycle on
/// `loops + 3` particles: the banana 2-cycle on particles 0..3 times one
/// circuit cycle per loop.
#[derive(Debug, Clone, Serialize)]
pub struct LoopAugmented {
    #[serde(skip)]
    pub graph: Graph,
    pub banana: BananaParts,
    pub circuits: Vec<CircuitSpec>,
}

impl LoopAugmented {
    pub fn degree(&self) -> usize {
        2 + self.circuits.len()
    }

    pub fn particle_count(&self) -> usize {
        3 + self.circuits.len()
    }

    /// Builds the chain described by the recipe.
    pub fn materialize(&self) -> Result<Chain, CycleError> {
        let mut z = banana_chain(&self.graph, &self.banana, [0, 1, 2])?;
        for c in &self.circuits {
            let loop_cycle = circuit_cycle(&self.graph, c, &[])?;
            z = product_chain(&self.graph, &z, &loop_cycle)?;
        }
        Ok(z)
    }
}

pub fn loop_augmented_nonproduct(loops: usize) -> Result<LoopAugmented, CycleError> {
    let mut edges = vec![[0, 1]; 4];
    let mut circuits = Vec::with_capacity(loops);
    for j in 0..loops {
        let u = 2 + j;
        edges.push([0, u]);
        edges.push([u, u]);
        circuits.push(CircuitSpec {
            route: vec![EdgeEnd::new(edges.len() - 1, End::Iota)],
            riders: vec![3 + j],
        });
    }
    let graph = Graph::new(2 + loops, edges, &[])?;
    Ok(LoopAugmented {
        graph,
        banana: BananaParts {
            v: 0,
            w: 1,
            edges: [0, 1, 2, 3],
        },
        circuits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Family, GraphSpec};
    use crate::homology::{class_span_rank, is_boundary, is_cycle};

    fn fam(f: Family, sinks: &[VertexId]) -> Graph {
        build_graph(&GraphSpec::with_sinks(f, sinks)).unwrap()
    }

    fn star_ends(g: &Graph, v: VertexId) -> Vec<EdgeEnd> {
        g.ends_at(v).to_vec()
    }

    #[test]
    fn star3_cycle_has_twelve_cells_and_generates() {
        let g = fam(Family::Star(3), &[]);
        let e = star_ends(&g, 0);
        let z = star_cycle(
            &g,
            &StarSpec {
                vertex: 0,
                ends: [e[0], e[1], e[2]],
                particles: [0, 1],
            },
            &[],
        )
        .unwrap();
        assert_eq!(z.support_len(), 12);
        assert!(z.terms().all(|(_, k)| k.abs() == 1));
        let cx = CubeComplex::enumerate(&g, 2).unwrap();
        assert!(is_cycle(&z, &g));
        assert!(!is_boundary(&z, &cx).unwrap());
        assert_eq!(class_span_rank(&[z], &cx, 1).unwrap(), 1);
    }

    #[test]
    fn star4_relation_vanishes() {
        let g = fam(Family::Star(4), &[]);
        let e = star_ends(&g, 0);
        let z = star4_relation(&g, 0, [e[0], e[1], e[2], e[3]], [0, 1], &[]).unwrap();
        assert!(z.is_zero());
        let b = fam(Family::Banana(4), &[]);
        let e = star_ends(&b, 0);
        let z = star4_relation(&b, 0, [e[0], e[1], e[2], e[3]], [0, 1], &[]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn star_with_sink_leaves() {
        let g = fam(Family::Star(3), &[1, 2]);
        let e = star_ends(&g, 0);
        let z = star_cycle(
            &g,
            &StarSpec {
                vertex: 0,
                ends: [e[0], e[1], e[2]],
                particles: [1, 0],
            },
            &[(2, Place::Vertex(1))],
        )
        .unwrap();
        assert!(is_cycle(&z, &g));
        assert!(z.particles() == vec![0, 1, 2]);
    }

    #[test]
    fn circuits_with_riders() {
        let c = fam(Family::Circle, &[]);
        let z = circuit_cycle(
            &c,
            &CircuitSpec {
                route: vec![EdgeEnd::new(0, End::Iota)],
                riders: vec![0, 1, 2],
            },
            &[],
        )
        .unwrap();
        assert_eq!(z.support_len(), 6);
        let cx = CubeComplex::enumerate(&c, 3).unwrap();
        assert_eq!(class_span_rank(&[z], &cx, 1).unwrap(), 1);

        let s = fam(Family::Circle, &[0]);
        let z = circuit_cycle(
            &s,
            &CircuitSpec {
                route: vec![EdgeEnd::new(0, End::Tau)],
                riders: vec![1],
            },
            &[(0, Place::Vertex(0))],
        )
        .unwrap();
        assert_eq!(z.support_len(), 1);
        assert!(is_cycle(&z, &s));
    }

    #[test]
    fn banana_circuit_with_parked_particle() {
        let g = fam(Family::Banana(4), &[]);
        let z = circuit_cycle(
            &g,
            &CircuitSpec {
                route: vec![EdgeEnd::new(1, End::Iota), EdgeEnd::new(2, End::Tau)],
                riders: vec![0],
            },
            &[(1, Place::Near(EdgeEnd::new(3, End::Iota)))],
        )
        .unwrap();
        assert!(is_cycle(&z, &g));
        let cx = CubeComplex::enumerate(&g, 2).unwrap();
        assert!(!is_boundary(&z, &cx).unwrap());
    }

    #[test]
    fn h_cycle_is_nontrivial() {
        let g = fam(Family::H, &[]);
        let path = vec![EdgeEnd::new(0, End::Iota)];
        let z = h_cycle(
            &g,
            &HSpec {
                path,
                from_sides: Some([EdgeEnd::new(1, End::Iota), EdgeEnd::new(2, End::Iota)]),
                to_sides: Some([EdgeEnd::new(3, End::Iota), EdgeEnd::new(4, End::Iota)]),
                particles: [0, 1],
            },
            &[],
        )
        .unwrap();
        assert!(is_cycle(&z, &g));
        let cx = CubeComplex::enumerate(&g, 2).unwrap();
        assert!(!is_boundary(&z, &cx).unwrap());
    }

    #[test]
    fn sink_to_sink_exchange() {
        let g = fam(Family::Interval, &[0, 1]);
        let z = h_cycle(
            &g,
            &HSpec {
                path: vec![EdgeEnd::new(0, End::Iota)],
                from_sides: None,
                to_sides: None,
                particles: [0, 1],
            },
            &[],
        )
        .unwrap();
        assert_eq!(z.support_len(), 4);
        let cx = CubeComplex::enumerate(&g, 2).unwrap();
        assert_eq!(class_span_rank(&[z], &cx, 1).unwrap(), 1);
    }

    #[test]
    fn banana_two_cycle() {
        let g = fam(Family::Banana(4), &[]);
        let cx = CubeComplex::enumerate(&g, 3).unwrap();
        let z = b3_nonproduct_cycle(&cx).unwrap();
        assert_eq!(z.support_len(), 144);
        assert!(is_cycle(&z, &g));
        assert!(!is_boundary(&z, &cx).unwrap());
        assert_eq!(class_span_rank(&[z], &cx, 2).unwrap(), 1);
    }

    #[test]
    fn wrong_complex_is_rejected() {
        let g = fam(Family::Banana(3), &[]);
        let cx = CubeComplex::enumerate(&g, 3).unwrap();
        assert!(matches!(
            b3_nonproduct_cycle(&cx),
            Err(CycleError::WrongComplex(_))
        ));
    }

    #[test]
    fn products_need_disjoint_supports() {
        let g = fam(Family::Banana(4), &[]);
        let e = star_ends(&g, 0);
        let star = star_cycle(
            &g,
            &StarSpec {
                vertex: 0,
                ends: [e[0], e[1], e[2]],
                particles: [0, 1],
            },
            &[],
        )
        .unwrap();
        let circuit = circuit_cycle(
            &g,
            &CircuitSpec {
                route: vec![EdgeEnd::new(3, End::Iota), EdgeEnd::new(2, End::Tau)],
                riders: vec![2],
            },
            &[],
        )
        .unwrap();
        assert_eq!(
            product_chain(&g, &star, &circuit),
            Err(CycleError::SupportOverlap)
        );
        assert_eq!(
            product_chain(&g, &star, &star),
            Err(CycleError::ParticleOverlap)
        );
    }

    #[test]
    fn push_in_and_forget() {
        let g = fam(Family::Star(3), &[]);
        let e = star_ends(&g, 0);
        let z = star_cycle(
            &g,
            &StarSpec {
                vertex: 0,
                ends: [e[0], e[1], e[2]],
                particles: [0, 1],
            },
            &[],
        )
        .unwrap();
        let leaf = EdgeEnd::new(e[0].edge, e[0].end.opposite());
        let pushed = push_in(&g, &z, leaf, 2).unwrap();
        assert!(is_cycle(&pushed, &g));
        assert_eq!(forget_static(&pushed, 2).unwrap(), z);
        assert!(push_in(&g, &z, e[0], 2).is_err());
    }

    #[test]
    fn loop_augmented_base_case() {
        let la = loop_augmented_nonproduct(0).unwrap();
        assert_eq!(la.materialize().unwrap().support_len(), 144);
        let la = loop_augmented_nonproduct(1).unwrap();
        let z = la.materialize().unwrap();
        assert_eq!(z.degree(), 3);
        assert!(is_cycle(&z, &la.graph));
    }
}
