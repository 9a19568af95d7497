//! Cells of the cube-complex model.
//!
//! A cell assigns to each particle of a finite labelled set either a static
//! position (a vertex, or an interior slot of an edge without sink
//! endpoints) or one direction of movement. The number of moving particles
//! is the dimension of the cube.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::chain::Chain;
use crate::graph::{EdgeId, End, Graph, VertexId};

pub type Particle = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("move slot {slot} out of range for a {dim}-cell")]
    SlotOutOfRange { slot: usize, dim: usize },
    #[error("particle {0} appears twice")]
    DuplicateParticle(Particle),
    #[error("invalid cell record `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParticleState {
    /// Resting on a vertex.
    AtVertex(VertexId),
    /// Interior slot of an edge with no sink endpoint; slot 0 is nearest the
    /// `ι` end.
    OnEdge(EdgeId, usize),
    /// Moving between the vertex at `end` and the outermost interior slot at
    /// that end.
    MoveEnd(EdgeId, End),
    /// Traversing a sink-incident edge from its `ι` vertex to its `τ` vertex.
    MoveFull(EdgeId),
}

impl ParticleState {
    pub fn is_moving(self) -> bool {
        matches!(
            self,
            ParticleState::MoveEnd(..) | ParticleState::MoveFull(_)
        )
    }

    pub fn edge(self) -> Option<EdgeId> {
        match self {
            ParticleState::AtVertex(_) => None,
            ParticleState::OnEdge(e, _)
            | ParticleState::MoveEnd(e, _)
            | ParticleState::MoveFull(e) => Some(e),
        }
    }
}

impl fmt::Display for ParticleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParticleState::AtVertex(v) => write!(f, "V {v}"),
            ParticleState::OnEdge(e, r) => write!(f, "E {e} {r}"),
            ParticleState::MoveEnd(e, End::Iota) => write!(f, "ME {e} i"),
            ParticleState::MoveEnd(e, End::Tau) => write!(f, "ME {e} t"),
            ParticleState::MoveFull(e) => write!(f, "MF {e}"),
        }
    }
}

impl std::str::FromStr for ParticleState {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CellError::Parse(s.to_string());
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["V", v] => Ok(ParticleState::AtVertex(num(v)?)),
            ["E", e, r] => Ok(ParticleState::OnEdge(num(e)?, num(r)?)),
            ["ME", e, "i"] => Ok(ParticleState::MoveEnd(num(e)?, End::Iota)),
            ["ME", e, "t"] => Ok(ParticleState::MoveEnd(num(e)?, End::Tau)),
            ["MF", e] => Ok(ParticleState::MoveFull(num(e)?)),
            _ => Err(bad()),
        }
    }
}

/// A cube of the model: particle states sorted by particle label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeCell {
    slots: Vec<(Particle, ParticleState)>,
}

impl CubeCell {
    /// Cell on particles `0..states.len()`.
    pub fn from_states(states: Vec<ParticleState>) -> Self {
        Self {
            slots: states.into_iter().enumerate().collect(),
        }
    }

    /// Cell on an arbitrary particle set.
    pub fn from_slots(mut slots: Vec<(Particle, ParticleState)>) -> Result<Self, CellError> {
        slots.sort_unstable();
        for w in slots.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CellError::DuplicateParticle(w[0].0));
            }
        }
        Ok(Self { slots })
    }

    pub fn slots(&self) -> &[(Particle, ParticleState)] {
        &self.slots
    }

    pub fn particles(&self) -> impl Iterator<Item = Particle> + '_ {
        self.slots.iter().map(|&(p, _)| p)
    }

    pub fn particle_count(&self) -> usize {
        self.slots.len()
    }

    /// True when the particle set is exactly `0..n`.
    pub fn has_standard_particles(&self, n: usize) -> bool {
        self.slots.len() == n && self.slots.iter().enumerate().all(|(i, &(p, _))| i == p)
    }

    pub fn state(&self, p: Particle) -> Option<ParticleState> {
        self.position(p).map(|i| self.slots[i].1)
    }

    fn position(&self, p: Particle) -> Option<usize> {
        self.slots.binary_search_by_key(&p, |&(q, _)| q).ok()
    }

    pub fn dimension(&self) -> usize {
        self.slots.iter().filter(|(_, s)| s.is_moving()).count()
    }

    /// Moving particles in increasing label order; the `i`-th entry is the
    /// `i`-th direction of the cube.
    pub fn movers(&self) -> Vec<Particle> {
        self.slots
            .iter()
            .filter(|(_, s)| s.is_moving())
            .map(|&(p, _)| p)
            .collect()
    }

    /// Checks every structural condition for `self` to be a cell of the
    /// model on `graph`.
    pub fn is_valid(&self, graph: &Graph) -> bool {
        // moves per (edge, end); a full traversal occupies both ends
        let mut end_moves = vec![0usize; 2 * graph.edge_count()];
        let mut vertex_load = vec![0usize; graph.vertex_count()];
        let mut ranks: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();

        for &(_, state) in &self.slots {
            if let Some(e) = state.edge() {
                if e >= graph.edge_count() {
                    return false;
                }
            }
            match state {
                ParticleState::AtVertex(v) => {
                    if v >= graph.vertex_count() || !graph.is_usable_vertex(v) {
                        return false;
                    }
                    vertex_load[v] += 1;
                }
                ParticleState::OnEdge(e, r) => {
                    if graph.touches_sink(e) {
                        return false;
                    }
                    ranks.entry(e).or_default().push(r);
                }
                ParticleState::MoveEnd(e, end) => {
                    let v = graph.endpoint(e, end);
                    if graph.touches_sink(e) || graph.valence(v) < 2 {
                        return false;
                    }
                    end_moves[2 * e + end as usize] += 1;
                    vertex_load[v] += 1;
                }
                ParticleState::MoveFull(e) => {
                    if !graph.touches_sink(e) {
                        return false;
                    }
                    let [a, b] = graph.edges()[e];
                    for v in if a == b { vec![a] } else { vec![a, b] } {
                        if !graph.is_sink(v) {
                            if graph.valence(v) < 2 {
                                return false;
                            }
                            vertex_load[v] += 1;
                        }
                    }
                    end_moves[2 * e] += 1;
                    end_moves[2 * e + 1] += 1;
                }
            }
        }
        if end_moves.iter().any(|&m| m > 1) {
            return false;
        }
        if graph
            .vertices()
            .any(|v| !graph.is_sink(v) && vertex_load[v] > 1)
        {
            return false;
        }
        ranks.into_values().all(|mut rs| {
            rs.sort_unstable();
            rs.iter().enumerate().all(|(i, &r)| i == r)
        })
    }

    /// Number of static particles in the interior of `edge`.
    fn statics_on(&self, edge: EdgeId) -> usize {
        self.slots
            .iter()
            .filter(|(_, s)| matches!(s, ParticleState::OnEdge(e, _) if *e == edge))
            .count()
    }

    /// Replaces the move of particle at slot index `i` by its endpoint on
    /// `side` (0 or 1).
    fn resolve_at(&mut self, i: usize, side: u8, graph: &Graph) {
        let state = self.slots[i].1;
        self.slots[i].1 = match (state, side) {
            (ParticleState::MoveEnd(e, end), 1) => ParticleState::AtVertex(graph.endpoint(e, end)),
            (ParticleState::MoveEnd(e, End::Iota), _) => {
                for (_, s) in self.slots.iter_mut() {
                    if let ParticleState::OnEdge(f, r) = s {
                        if *f == e {
                            *r += 1;
                        }
                    }
                }
                ParticleState::OnEdge(e, 0)
            }
            (ParticleState::MoveEnd(e, End::Tau), _) => {
                ParticleState::OnEdge(e, self.statics_on(e))
            }
            (ParticleState::MoveFull(e), 0) => {
                ParticleState::AtVertex(graph.endpoint(e, End::Iota))
            }
            (ParticleState::MoveFull(e), _) => ParticleState::AtVertex(graph.endpoint(e, End::Tau)),
            (s, _) => s,
        };
    }

    /// Face obtained by sending the `slot`-th moving particle to the end of
    /// its movement given by `side`.
    ///
    /// For `MoveEnd` side 1 is the vertex and side 0 the interior slot; for
    /// `MoveFull` side 0 is the `ι` vertex and side 1 the `τ` vertex.
    pub fn face(&self, graph: &Graph, slot: usize, side: u8) -> Result<CubeCell, CellError> {
        let dim = self.dimension();
        let i = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| s.is_moving())
            .nth(slot)
            .map(|(i, _)| i)
            .ok_or(CellError::SlotOutOfRange { slot, dim })?;
        let mut out = self.clone();
        out.resolve_at(i, side, graph);
        Ok(out)
    }

    /// Cellular boundary with the direction order given by particle label.
    pub fn boundary(&self, graph: &Graph) -> Chain {
        let dim = self.dimension();
        let mut chain = Chain::zero(dim.saturating_sub(1));
        if dim == 0 {
            return chain;
        }
        let mut slot = 0;
        for i in 0..self.slots.len() {
            if !self.slots[i].1.is_moving() {
                continue;
            }
            let sign = if slot % 2 == 0 { 1 } else { -1 };
            let mut hi = self.clone();
            hi.resolve_at(i, 1, graph);
            let mut lo = self.clone();
            lo.resolve_at(i, 0, graph);
            chain.add_term(hi, sign);
            chain.add_term(lo, -sign);
            slot += 1;
        }
        chain
    }

    /// All `2^dim` corners of the cube, indexed by the side bit pattern
    /// (bit `i` is the side of the `i`-th direction).
    pub fn corners(&self, graph: &Graph) -> Vec<CubeCell> {
        let moving: Vec<usize> = (0..self.slots.len())
            .filter(|&i| self.slots[i].1.is_moving())
            .collect();
        (0..1usize << moving.len())
            .map(|mask| {
                let mut c = self.clone();
                for (bit, &i) in moving.iter().enumerate() {
                    c.resolve_at(i, ((mask >> bit) & 1) as u8, graph);
                }
                c
            })
            .collect()
    }

    /// Particle `p` of `self` becomes particle `perm[p]`.
    pub fn relabel(&self, perm: &[Particle]) -> CubeCell {
        let mut slots: Vec<_> = self.slots.iter().map(|&(p, s)| (perm[p], s)).collect();
        slots.sort_unstable();
        CubeCell { slots }
    }

    /// Removes particle `p`, re-ranking the remaining particles on its edge.
    pub fn forget(&self, p: Particle) -> Option<CubeCell> {
        let i = self.position(p)?;
        let mut out = self.clone();
        let (_, state) = out.slots.remove(i);
        if let ParticleState::OnEdge(e, r) = state {
            for (_, s) in out.slots.iter_mut() {
                if let ParticleState::OnEdge(f, q) = s {
                    if *f == e && *q > r {
                        *q -= 1;
                    }
                }
            }
        }
        Some(out)
    }

    /// Disjoint union of the particle sets, or `None` if they overlap.
    pub fn merge(&self, other: &CubeCell) -> Option<CubeCell> {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        CubeCell::from_slots(slots).ok()
    }

    /// Vertices and edges of the graph touched by the cell (including both
    /// endpoints of every edge a particle moves along or sits on).
    pub fn support(&self, graph: &Graph) -> (Vec<VertexId>, Vec<EdgeId>) {
        let mut vs = Vec::new();
        let mut es = Vec::new();
        for &(_, s) in &self.slots {
            match s {
                ParticleState::AtVertex(v) => vs.push(v),
                ParticleState::OnEdge(e, _) => es.push(e),
                ParticleState::MoveEnd(e, end) => {
                    es.push(e);
                    vs.push(graph.endpoint(e, end));
                }
                ParticleState::MoveFull(e) => {
                    es.push(e);
                    vs.extend(graph.edges()[e]);
                }
            }
        }
        vs.sort_unstable();
        vs.dedup();
        es.sort_unstable();
        es.dedup();
        (vs, es)
    }
}

impl fmt::Display for CubeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (p, s)) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}: {s}")?;
        }
        write!(f, "]")
    }
}

/// Validity of a candidate through its corners: every corner is a valid
/// configuration and each edge end carries at most one move of the kind the
/// edge allows (a full traversal occupies both ends).
pub fn valid_by_corners(cell: &CubeCell, graph: &Graph) -> bool {
    let mut moves_on = vec![0usize; 2 * graph.edge_count()];
    for &(_, s) in cell.slots() {
        match s {
            ParticleState::MoveEnd(e, end) if e < graph.edge_count() && !graph.touches_sink(e) => {
                moves_on[2 * e + end as usize] += 1
            }
            ParticleState::MoveFull(e) if e < graph.edge_count() && graph.touches_sink(e) => {
                moves_on[2 * e] += 1;
                moves_on[2 * e + 1] += 1;
            }
            ParticleState::MoveEnd(..) | ParticleState::MoveFull(_) => return false,
            _ => {}
        }
    }
    if moves_on.iter().any(|&m| m > 1) {
        return false;
    }
    cell.corners(graph).iter().all(|c| c.is_valid(graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Family, GraphSpec};
    use ParticleState::*;

    fn g(f: Family, sinks: &[usize]) -> Graph {
        build_graph(&GraphSpec::with_sinks(f, sinks)).unwrap()
    }

    #[test]
    fn validity_examples() {
        let star = g(Family::Star(3), &[]);
        // two moves on one edge towards the same end
        let banana = g(Family::Banana(2), &[]);
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), MoveEnd(0, End::Iota)]);
        assert!(!c.is_valid(&banana));
        // ... but two particles may leave one edge through opposite ends
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), MoveEnd(0, End::Tau)]);
        assert!(c.is_valid(&banana));
        assert!(valid_by_corners(&c, &banana));
        // a leaf end is never a move target
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), MoveEnd(0, End::Tau)]);
        assert!(!c.is_valid(&star));
        // leaf vertex (valence one) cannot be occupied
        assert!(!CubeCell::from_states(vec![AtVertex(1)]).is_valid(&star));
        // sinks admit collisions
        let star_sink = g(Family::Star(3), &[1]);
        assert!(CubeCell::from_states(vec![AtVertex(1), AtVertex(1)]).is_valid(&star_sink));
        // two moves towards the center
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), MoveEnd(1, End::Iota)]);
        assert!(!c.is_valid(&star));
        // move towards an occupied vertex
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), AtVertex(0)]);
        assert!(!c.is_valid(&star));
        // rank gaps
        let c = CubeCell::from_states(vec![OnEdge(0, 0), OnEdge(0, 2)]);
        assert!(!c.is_valid(&star));
        let c = CubeCell::from_states(vec![OnEdge(0, 1), OnEdge(0, 0), MoveEnd(1, End::Iota)]);
        assert!(c.is_valid(&star));
        // interior of sink-incident edges is empty
        assert!(!CubeCell::from_states(vec![OnEdge(0, 0)]).is_valid(&star_sink));
        // MoveFull only on sink-incident edges
        assert!(!CubeCell::from_states(vec![MoveFull(1)]).is_valid(&star_sink));
        assert!(CubeCell::from_states(vec![MoveFull(0)]).is_valid(&star_sink));
        // MoveFull towards a non-sink valence-one vertex
        let i = g(Family::Interval, &[0]);
        assert!(!CubeCell::from_states(vec![MoveFull(0)]).is_valid(&i));
    }

    #[test]
    fn face_examples() {
        let i = g(Family::Interval, &[0, 1]);
        let c = CubeCell::from_states(vec![MoveFull(0)]);
        assert_eq!(
            c.face(&i, 0, 0).unwrap(),
            CubeCell::from_states(vec![AtVertex(0)])
        );
        assert_eq!(
            c.face(&i, 0, 1).unwrap(),
            CubeCell::from_states(vec![AtVertex(1)])
        );
        assert_eq!(
            c.face(&i, 1, 0),
            Err(CellError::SlotOutOfRange { slot: 1, dim: 1 })
        );
        let b = c.boundary(&i);
        assert_eq!(b.coefficient(&CubeCell::from_states(vec![AtVertex(1)])), 1);
        assert_eq!(b.coefficient(&CubeCell::from_states(vec![AtVertex(0)])), -1);

        let star = g(Family::Star(3), &[]);
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), OnEdge(0, 0)]);
        assert_eq!(
            c.face(&star, 0, 0).unwrap(),
            CubeCell::from_states(vec![OnEdge(0, 0), OnEdge(0, 1)])
        );
        assert_eq!(
            c.face(&star, 0, 1).unwrap(),
            CubeCell::from_states(vec![AtVertex(0), OnEdge(0, 0)])
        );
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Tau), OnEdge(0, 0)]);
        assert_eq!(
            c.face(&star, 0, 0).unwrap(),
            CubeCell::from_states(vec![OnEdge(0, 1), OnEdge(0, 0)])
        );
    }

    #[test]
    fn zero_cell_boundary_and_corners() {
        let star = g(Family::Star(3), &[]);
        let c = CubeCell::from_states(vec![AtVertex(0), OnEdge(1, 0)]);
        assert!(c.boundary(&star).is_zero());
        assert_eq!(c.corners(&star), vec![c.clone()]);
    }

    #[test]
    fn corner_pigeonhole() {
        let star = g(Family::Star(3), &[]);
        let c = CubeCell::from_states(vec![MoveEnd(0, End::Iota), MoveEnd(1, End::Iota)]);
        assert!(c.corners(&star).iter().any(|k| k
            .slots()
            .iter()
            .filter(|(_, s)| *s == AtVertex(0))
            .count()
            == 2));
        assert!(!valid_by_corners(&c, &star));
    }

    #[test]
    fn relabel_and_forget() {
        let c = CubeCell::from_states(vec![AtVertex(0), OnEdge(1, 0), MoveEnd(2, End::Iota)]);
        let id = [0, 1, 2];
        assert_eq!(c.relabel(&id), c);
        let perm = [2, 0, 1];
        let inv = [1, 2, 0];
        assert_eq!(c.relabel(&perm).relabel(&inv), c);
        assert_eq!(c.relabel(&perm).state(2), Some(AtVertex(0)));

        let c = CubeCell::from_states(vec![OnEdge(1, 0), OnEdge(1, 1), OnEdge(1, 2)]);
        let f = c.forget(1).unwrap();
        assert_eq!(f.slots(), &[(0, OnEdge(1, 0)), (2, OnEdge(1, 1))]);
    }

    #[test]
    fn record_syntax() {
        for s in [
            AtVertex(3),
            OnEdge(2, 1),
            MoveEnd(0, End::Iota),
            MoveEnd(5, End::Tau),
            MoveFull(4),
        ] {
            assert_eq!(s.to_string().parse::<ParticleState>().unwrap(), s);
        }
        assert!("Q 1".parse::<ParticleState>().is_err());
    }
}
