//! Finite multigraphs with a designated set of sink vertices.
//!
//! Every edge is stored with an orientation: its `ι` half-edge sits at
//! `edges[e][0]` and its `τ` half-edge at `edges[e][1]`. Loops have both
//! half-edges at the same vertex and parallel edges are allowed. Vertex and
//! edge ids are dense and assigned in construction order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::union_find::UnionFind;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("edge {0} does not exist")]
    NoSuchEdge(EdgeId),
    #[error("malformed graph document: {0}")]
    Parse(String),
}

/// One of the two ends (half-edges) of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum End {
    Iota,
    Tau,
}

impl End {
    pub fn index(self) -> usize {
        match self {
            End::Iota => 0,
            End::Tau => 1,
        }
    }

    pub fn opposite(self) -> End {
        match self {
            End::Iota => End::Tau,
            End::Tau => End::Iota,
        }
    }
}

/// A half-edge, named by its edge and which end of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: End,
}

impl EdgeEnd {
    pub fn new(edge: EdgeId, end: End) -> Self {
        Self { edge, end }
    }

    pub fn opposite(self) -> Self {
        Self::new(self.edge, self.end.opposite())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<[VertexId; 2]>,
    sinks: Vec<bool>,
    ends_at: Vec<Vec<EdgeEnd>>,
}

impl Graph {
    /// Builds a graph from an explicit edge list, validating vertex ids and
    /// connectivity.
    pub fn new(
        vertex_count: usize,
        edges: Vec<[VertexId; 2]>,
        sinks: &[VertexId],
    ) -> Result<Self, GraphError> {
        let graph = Self::new_unchecked_connectivity(vertex_count, edges, sinks)?;
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    fn new_unchecked_connectivity(
        vertex_count: usize,
        edges: Vec<[VertexId; 2]>,
        sinks: &[VertexId],
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut ends_at = vec![Vec::new(); vertex_count];
        for (e, &[a, b]) in edges.iter().enumerate() {
            for (v, end) in [(a, End::Iota), (b, End::Tau)] {
                if v >= vertex_count {
                    return Err(GraphError::NoSuchVertex(v));
                }
                ends_at[v].push(EdgeEnd::new(e, end));
            }
        }
        let mut sink_flags = vec![false; vertex_count];
        for &s in sinks {
            if s >= vertex_count {
                return Err(GraphError::NoSuchVertex(s));
            }
            sink_flags[s] = true;
        }
        Ok(Self {
            vertex_count,
            edges,
            sinks: sink_flags,
            ends_at,
        })
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for &[a, b] in &self.edges {
            uf.union(a, b);
        }
        uf.components() == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    /// Vertex at the given end of an edge.
    pub fn endpoint(&self, edge: EdgeId, end: End) -> VertexId {
        self.edges[edge][end.index()]
    }

    pub fn vertex_of(&self, end: EdgeEnd) -> VertexId {
        self.endpoint(end.edge, end.end)
    }

    /// Half-edges incident to `v`, in edge order (`ι` before `τ` for loops).
    pub fn ends_at(&self, v: VertexId) -> &[EdgeEnd] {
        &self.ends_at[v]
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.ends_at[v].len()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.sinks[v]
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.sinks[v]).collect()
    }

    pub fn is_loop(&self, edge: EdgeId) -> bool {
        let [a, b] = self.edges[edge];
        a == b
    }

    /// Whether either endpoint is a sink.
    pub fn touches_sink(&self, edge: EdgeId) -> bool {
        let [a, b] = self.edges[edge];
        self.sinks[a] || self.sinks[b]
    }

    /// Whether a particle may rest on `v` in a configuration: sinks always,
    /// other vertices only if they have valence at least two.
    pub fn is_usable_vertex(&self, v: VertexId) -> bool {
        self.sinks[v] || self.valence(v) >= 2
    }

    /// Vertices of valence at least three.
    pub fn essential_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.valence(v) >= 3).collect()
    }

    /// Edges with a valence-one endpoint, paired with that (leaf) end.
    pub fn leaf_ends(&self) -> Vec<EdgeEnd> {
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            for end in [End::Iota, End::Tau] {
                if self.valence(self.endpoint(e, end)) == 1 {
                    out.push(EdgeEnd::new(e, end));
                }
            }
        }
        out
    }

    /// Upper bound on the dimension of the cube complex for `n` particles:
    /// `min(n, #non-sink vertices of valence >= 2 + #edges between sinks)`.
    pub fn dimension_bound(&self, n: usize) -> usize {
        let movable_vertices = self
            .vertices()
            .filter(|&v| !self.sinks[v] && self.valence(v) >= 2)
            .count();
        let sink_edges = self
            .edges
            .iter()
            .filter(|&&[a, b]| self.sinks[a] && self.sinks[b])
            .count();
        n.min(movable_vertices + sink_edges)
    }

    /// Returns a copy with the sink set replaced.
    pub fn with_sinks(&self, sinks: &[VertexId]) -> Result<Self, GraphError> {
        Self::new(self.vertex_count, self.edges.clone(), sinks)
    }

    /// Inserts a new valence-two vertex in the middle of `edge`. The first
    /// half keeps the edge id; the second half is appended as a new edge.
    pub fn subdivide_edge(&self, edge: EdgeId) -> Result<Self, GraphError> {
        if edge >= self.edges.len() {
            return Err(GraphError::NoSuchEdge(edge));
        }
        let mid = self.vertex_count;
        let [a, b] = self.edges[edge];
        let mut edges = self.edges.clone();
        edges[edge] = [a, mid];
        edges.push([mid, b]);
        Self::new(self.vertex_count + 1, edges, &self.sinks())
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertex_count,
            edges: self.edges.clone(),
            sinks: self.sinks(),
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(V={}, E=[", self.vertex_count)?;
        for (i, [a, b]) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "], sinks={:?})", self.sinks())
    }
}

/// Canonical on-disk form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default)]
    pub sinks: Vec<VertexId>,
}

impl GraphDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Interval,
    Circle,
    Star(usize),
    H,
    /// Two vertices joined by the given number of parallel edges.
    Banana(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
}

impl FromStr for Family {
    type Err = GraphError;

    /// Accepts `interval`, `circle`, `h`, `star:k`, `banana:k`, `k:m`,
    /// `k:a,b` and the shorthand `k33`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s.as_str(), None),
        };
        let parse_params = |p: Option<&str>| -> Result<Vec<usize>, GraphError> {
            let p =
                p.ok_or_else(|| GraphError::Parse(format!("family `{name}` needs parameters")))?;
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| GraphError::Parse(format!("bad parameter `{x}`")))
                })
                .collect()
        };
        let no_params = |f: Family| match params {
            None => Ok(f),
            Some(_) => Err(GraphError::Parse(format!(
                "family `{name}` takes no parameters"
            ))),
        };
        match name {
            "interval" | "i" => no_params(Family::Interval),
            "circle" | "s1" => no_params(Family::Circle),
            "h" => no_params(Family::H),
            "k33" => no_params(Family::CompleteBipartite(3, 3)),
            "star" => match parse_params(params)?.as_slice() {
                &[k] => Ok(Family::Star(k)),
                _ => Err(GraphError::Parse("star takes one parameter".into())),
            },
            "banana" => match parse_params(params)?.as_slice() {
                &[k] => Ok(Family::Banana(k)),
                _ => Err(GraphError::Parse("banana takes one parameter".into())),
            },
            "k" => match parse_params(params)?.as_slice() {
                [m] => Ok(Family::Complete(*m)),
                [a, b] => Ok(Family::CompleteBipartite(*a, *b)),
                _ => Err(GraphError::Parse("k takes one or two parameters".into())),
            },
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Interval => write!(f, "interval"),
            Family::Circle => write!(f, "circle"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::H => write!(f, "h"),
            Family::Banana(k) => write!(f, "banana:{k}"),
            Family::Complete(m) => write!(f, "k:{m}"),
            Family::CompleteBipartite(a, b) => write!(f, "k:{a},{b}"),
        }
    }
}

/// Description of a graph to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Family {
        family: Family,
        sinks: Vec<VertexId>,
    },
    Explicit(GraphDocument),
}

impl GraphSpec {
    pub fn family(family: Family) -> Self {
        GraphSpec::Family {
            family,
            sinks: Vec::new(),
        }
    }

    pub fn with_sinks(family: Family, sinks: &[VertexId]) -> Self {
        GraphSpec::Family {
            family,
            sinks: sinks.to_vec(),
        }
    }
}

pub fn build_graph(spec: &GraphSpec) -> Result<Graph, GraphError> {
    match spec {
        GraphSpec::Explicit(doc) => Graph::new(doc.vertices, doc.edges.clone(), &doc.sinks),
        GraphSpec::Family { family, sinks } => {
            let (v, edges) = family_edges(*family)?;
            Graph::new(v, edges, sinks)
        }
    }
}

fn family_edges(family: Family) -> Result<(usize, Vec<[VertexId; 2]>), GraphError> {
    let out_of_range = |msg: &str| Err(GraphError::OutOfRange(msg.to_string()));
    Ok(match family {
        Family::Interval => (2, vec![[0, 1]]),
        Family::Circle => (1, vec![[0, 0]]),
        Family::Star(k) => {
            if k < 3 {
                return out_of_range("star needs k >= 3");
            }
            (k + 1, (1..=k).map(|leaf| [0, leaf]).collect())
        }
        Family::H => (6, vec![[0, 1], [0, 2], [0, 3], [1, 4], [1, 5]]),
        Family::Banana(k) => {
            if k < 2 {
                return out_of_range("banana needs k >= 2");
            }
            (2, vec![[0, 1]; k])
        }
        Family::Complete(m) => {
            if m < 2 {
                return out_of_range("complete graph needs m >= 2");
            }
            let mut edges = Vec::new();
            for a in 0..m {
                for b in a + 1..m {
                    edges.push([a, b]);
                }
            }
            (m, edges)
        }
        Family::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return out_of_range("complete bipartite graph needs a, b >= 1");
            }
            let mut edges = Vec::new();
            for x in 0..a {
                for y in 0..b {
                    edges.push([x, a + y]);
                }
            }
            (a + b, edges)
        }
    })
}

/// Glues `g2` onto `g1` by identifying `v2` with `v1`.
///
/// Vertices of `g1` keep their ids; the remaining vertices of `g2` follow in
/// order. Edges of `g1` come first. The wedge point is a sink iff `v1` or
/// `v2` was.
pub fn wedge(g1: &Graph, v1: VertexId, g2: &Graph, v2: VertexId) -> Result<Graph, GraphError> {
    if v1 >= g1.vertex_count() {
        return Err(GraphError::NoSuchVertex(v1));
    }
    if v2 >= g2.vertex_count() {
        return Err(GraphError::NoSuchVertex(v2));
    }
    let offset = g1.vertex_count();
    let relabel = |v: VertexId| -> VertexId {
        match v.cmp(&v2) {
            std::cmp::Ordering::Equal => v1,
            std::cmp::Ordering::Less => offset + v,
            std::cmp::Ordering::Greater => offset + v - 1,
        }
    };
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&[a, b]| [relabel(a), relabel(b)]));
    let mut sinks = g1.sinks();
    for s in g2.sinks() {
        let s = relabel(s);
        if !sinks.contains(&s) {
            sinks.push(s);
        }
    }
    Graph::new(g1.vertex_count() + g2.vertex_count() - 1, edges, &sinks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(f: Family) -> Graph {
        build_graph(&GraphSpec::family(f)).unwrap()
    }

    fn valences(g: &Graph) -> Vec<usize> {
        g.vertices().map(|v| g.valence(v)).collect()
    }

    #[test]
    fn named_families() {
        let b = fam(Family::Banana(4));
        assert_eq!((b.vertex_count(), b.edge_count()), (2, 4));
        assert_eq!(valences(&b), vec![4, 4]);
        let b3 = fam(Family::Banana(3));
        assert_eq!((b3.vertex_count(), b3.edge_count()), (2, 3));

        let i = fam(Family::Interval);
        assert_eq!((i.vertex_count(), i.edge_count()), (2, 1));
        assert_eq!(valences(&i), vec![1, 1]);

        let s = fam(Family::Star(3));
        assert_eq!((s.vertex_count(), s.edge_count()), (4, 3));
        assert_eq!(valences(&s), vec![3, 1, 1, 1]);

        let c = fam(Family::Circle);
        assert_eq!(valences(&c), vec![2]);
        assert!(c.is_loop(0));

        let h = fam(Family::H);
        assert_eq!(valences(&h), vec![3, 3, 1, 1, 1, 1]);

        assert_eq!(fam(Family::Complete(5)).edge_count(), 10);
        assert_eq!(fam(Family::CompleteBipartite(3, 3)).edge_count(), 9);
    }

    #[test]
    fn family_errors() {
        for f in [
            Family::Star(2),
            Family::Banana(1),
            Family::Complete(1),
            Family::CompleteBipartite(0, 3),
        ] {
            assert!(matches!(
                build_graph(&GraphSpec::family(f)),
                Err(GraphError::OutOfRange(_))
            ));
        }
        assert!(matches!(
            "petersen".parse::<Family>(),
            Err(GraphError::UnknownFamily(_))
        ));
        assert!(matches!(
            build_graph(&GraphSpec::with_sinks(Family::Interval, &[2])),
            Err(GraphError::NoSuchVertex(2))
        ));
        let disconnected = GraphDocument {
            vertices: 4,
            edges: vec![[0, 1], [2, 3]],
            sinks: vec![],
        };
        assert_eq!(
            build_graph(&GraphSpec::Explicit(disconnected)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn family_parsing() {
        assert_eq!("star:3".parse::<Family>().unwrap(), Family::Star(3));
        assert_eq!("banana:4".parse::<Family>().unwrap(), Family::Banana(4));
        assert_eq!("k:5".parse::<Family>().unwrap(), Family::Complete(5));
        assert_eq!(
            "k33".parse::<Family>().unwrap(),
            Family::CompleteBipartite(3, 3)
        );
        assert_eq!(
            "k:2,3".parse::<Family>().unwrap(),
            Family::CompleteBipartite(2, 3)
        );
        assert_eq!("circle".parse::<Family>().unwrap(), Family::Circle);
        assert_eq!("interval".parse::<Family>().unwrap(), Family::Interval);
        assert_eq!("h".parse::<Family>().unwrap(), Family::H);
        assert!("star".parse::<Family>().is_err());
        assert!("circle:2".parse::<Family>().is_err());
        for f in [
            "star:4", "banana:2", "k:5", "k:3,3", "h", "circle", "interval",
        ] {
            let fam: Family = f.parse().unwrap();
            assert_eq!(fam.to_string().parse::<Family>().unwrap(), fam);
        }
    }

    #[test]
    fn essential_vertices_examples() {
        assert_eq!(fam(Family::Star(3)).essential_vertices(), vec![0]);
        assert!(fam(Family::Interval).essential_vertices().is_empty());
        assert_eq!(fam(Family::Banana(4)).essential_vertices(), vec![0, 1]);
    }

    #[test]
    fn dimension_bound_examples() {
        assert_eq!(fam(Family::Banana(4)).dimension_bound(3), 2);
        let i = build_graph(&GraphSpec::with_sinks(Family::Interval, &[0, 1])).unwrap();
        assert_eq!(i.dimension_bound(5), 1);
        assert_eq!(fam(Family::Complete(5)).dimension_bound(0), 0);
        let c = build_graph(&GraphSpec::with_sinks(Family::Circle, &[0])).unwrap();
        assert_eq!(c.dimension_bound(4), 1);
    }

    #[test]
    fn wedge_examples() {
        let s3 = fam(Family::Star(3));
        let w = wedge(&s3, 1, &s3, 1).unwrap();
        assert_eq!(w.vertex_count(), 7);
        assert_eq!(w.edge_count(), 6);
        assert_eq!(w.essential_vertices(), vec![0, 4]);
        assert_eq!(w.valence(1), 2);

        let c = fam(Family::Circle);
        let rose = wedge(&c, 0, &c, 0).unwrap();
        assert_eq!(rose.vertex_count(), 1);
        assert_eq!(valences(&rose), vec![4]);

        let t = wedge(&wedge(&s3, 1, &c, 0).unwrap(), 2, &fam(Family::Star(4)), 0).unwrap();
        assert_eq!(t.essential_vertices(), vec![0, 1, 2]);
        assert_eq!(t.vertex_count(), 4 + 1 - 1 + 5 - 1);

        assert_eq!(wedge(&s3, 9, &c, 0), Err(GraphError::NoSuchVertex(9)));
    }

    #[test]
    fn wedge_point_sink() {
        let i = build_graph(&GraphSpec::with_sinks(Family::Interval, &[1])).unwrap();
        let s3 = fam(Family::Star(3));
        let w = wedge(&s3, 1, &i, 1).unwrap();
        assert_eq!(w.sinks(), vec![1]);
        let w = wedge(&s3, 1, &i, 0).unwrap();
        assert_eq!(w.sinks(), vec![4]);
    }

    #[test]
    fn subdivision() {
        let b = fam(Family::Banana(3));
        let s = b.subdivide_edge(1).unwrap();
        assert_eq!(s.vertex_count(), 3);
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.valence(2), 2);
        assert_eq!(b.subdivide_edge(7), Err(GraphError::NoSuchEdge(7)));
    }

    #[test]
    fn document_round_trip() {
        let g = build_graph(&GraphSpec::with_sinks(Family::H, &[2, 5])).unwrap();
        let doc = g.to_document();
        let text = doc.to_json();
        let back = GraphDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(build_graph(&GraphSpec::Explicit(back)).unwrap(), g);
        assert!(GraphDocument::from_json("{\"vertices\": 2}").is_err());
    }

    #[test]
    fn leaves() {
        let s = fam(Family::Star(3));
        assert_eq!(
            s.leaf_ends(),
            vec![
                EdgeEnd::new(0, End::Tau),
                EdgeEnd::new(1, End::Tau),
                EdgeEnd::new(2, End::Tau)
            ]
        );
    }
}
