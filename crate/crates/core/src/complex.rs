//! Enumeration of the cube complex modelling the configuration space of `n`
//! labelled particles in a graph with sinks.
//!
//! 0-cells distribute particles over usable vertices and over ordered
//! interior slots of edges without sink endpoints. A `k`-cell is generated
//! exactly once, from its corner where every moving particle sits at the
//! side-0 end of its move, by picking `k` compatible moves.

use std::fmt::Write as _;

use indexmap::IndexSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::cell::{CubeCell, Particle, ParticleState};
use crate::chain::Chain;
use crate::graph::{End, Graph};
use crate::matrix::SparseIntMatrix;
use crate::union_find::UnionFind;

pub const DEFAULT_CELL_CAP: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cell cap exceeded: more than {cap} cells")]
    CapExceeded { cap: usize },
    #[error("cell {0} is not a cell of this complex")]
    UnknownCell(String),
    #[error("chain lives on particles {found:?}, complex has {expected} particles")]
    ParticleMismatch {
        expected: usize,
        found: Vec<Particle>,
    },
}

#[derive(Debug, Clone)]
pub struct CubeComplex {
    graph: Graph,
    particles: usize,
    cells: Vec<IndexSet<CubeCell>>,
}

impl CubeComplex {
    pub fn enumerate(graph: &Graph, particles: usize) -> Result<Self, ComplexError> {
        Self::enumerate_capped(graph, particles, DEFAULT_CELL_CAP)
    }

    pub fn enumerate_capped(graph: &Graph, n: usize, cap: usize) -> Result<Self, ComplexError> {
        let vertices = zero_cells(graph, n, cap)?;
        let mut by_dim: Vec<Vec<CubeCell>> = vec![Vec::new()];
        let higher: Vec<Vec<CubeCell>> = vertices
            .par_iter()
            .map(|corner| cubes_at_corner(graph, corner))
            .collect();
        let mut total = vertices.len();
        for list in higher {
            total += list.len();
            if total > cap {
                return Err(ComplexError::CapExceeded { cap });
            }
            for cell in list {
                let d = cell.dimension();
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Vec::new);
                }
                by_dim[d].push(cell);
            }
        }
        by_dim[0] = vertices;
        let cells = by_dim
            .into_par_iter()
            .map(|mut v| {
                v.par_sort_unstable();
                v.into_iter().collect::<IndexSet<_>>()
            })
            .collect();
        Ok(Self {
            graph: graph.clone(),
            particles: n,
            cells,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn particle_count(&self) -> usize {
        self.particles
    }

    /// Largest `k` with at least one `k`-cell.
    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, |s| s.len())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|s| s.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|s| s.len()).sum()
    }

    pub fn cells(&self, k: usize) -> impl ExactSizeIterator<Item = &CubeCell> {
        static EMPTY: std::sync::OnceLock<IndexSet<CubeCell>> = std::sync::OnceLock::new();
        self.cells
            .get(k)
            .unwrap_or_else(|| EMPTY.get_or_init(IndexSet::new))
            .iter()
    }

    pub fn cell(&self, k: usize, index: usize) -> Option<&CubeCell> {
        self.cells.get(k)?.get_index(index)
    }

    pub fn index_of(&self, cell: &CubeCell) -> Option<usize> {
        self.cells.get(cell.dimension())?.get_index_of(cell)
    }

    pub fn contains(&self, cell: &CubeCell) -> bool {
        self.index_of(cell).is_some()
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, s)| {
                if k % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    /// Path components of the 1-skeleton.
    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.cell_count(0));
        for edge in self.cells(1) {
            let corners = edge.corners(&self.graph);
            let a = self.cells[0]
                .get_index_of(&corners[0])
                .expect("corner is a 0-cell");
            let b = self.cells[0]
                .get_index_of(&corners[1])
                .expect("corner is a 0-cell");
            uf.union(a, b);
        }
        uf.components()
    }

    /// Matrix of the boundary map from `k`-cells (columns) to `(k-1)`-cells
    /// (rows). For `k = 0` or `k` above the dimension the matrix is empty in
    /// the corresponding direction.
    pub fn boundary_matrix(&self, k: usize) -> SparseIntMatrix {
        let rows = if k == 0 { 0 } else { self.cell_count(k - 1) };
        let cols = self.cell_count(k);
        if k == 0 || cols == 0 {
            return SparseIntMatrix::zeros(rows, cols);
        }
        let row_index = &self.cells[k - 1];
        let columns: Vec<Vec<(usize, i64)>> = self.cells[k]
            .par_iter()
            .map(|cell| {
                cell.boundary(&self.graph)
                    .terms()
                    .map(|(face, c)| {
                        let r = row_index
                            .get_index_of(face)
                            .unwrap_or_else(|| panic!("face {face} of {cell} not enumerated"));
                        (r, c)
                    })
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_columns(rows, columns)
    }

    /// Coordinates of a chain in the cell basis of its degree.
    pub fn chain_vector(&self, chain: &Chain) -> Result<Vec<(usize, i64)>, ComplexError> {
        let mut out = Vec::with_capacity(chain.support_len());
        for (cell, k) in chain.terms() {
            if !cell.has_standard_particles(self.particles) {
                return Err(ComplexError::ParticleMismatch {
                    expected: self.particles,
                    found: cell.particles().collect(),
                });
            }
            let i = self
                .index_of(cell)
                .ok_or_else(|| ComplexError::UnknownCell(cell.to_string()))?;
            out.push((i, k));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Text export: cells per dimension followed by boundary matrices as
    /// `row col value` triples.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# graph {}", self.graph.to_document().to_json());
        let _ = writeln!(out, "# particles {}", self.particles);
        for (k, cells) in self.cells.iter().enumerate() {
            let _ = writeln!(out, "cells {k} {}", cells.len());
            for cell in cells {
                let records: Vec<String> =
                    cell.slots().iter().map(|(_, s)| s.to_string()).collect();
                let _ = writeln!(out, "{}", records.join(" | "));
            }
        }
        for k in 1..self.cells.len() {
            let m = self.boundary_matrix(k);
            let _ = writeln!(out, "boundary {k} {} {} {}", m.rows(), m.cols(), m.nnz());
            for (r, c, v) in m.triplets() {
                let _ = writeln!(out, "{r} {c} {v}");
            }
        }
        out
    }
}

/// All configurations without moves, in lexicographic order.
fn zero_cells(graph: &Graph, n: usize, cap: usize) -> Result<Vec<CubeCell>, ComplexError> {
    struct Search<'a> {
        graph: &'a Graph,
        n: usize,
        cap: usize,
        vertex_sites: Vec<usize>,
        edge_sites: Vec<usize>,
        occupied: Vec<bool>,
        lines: Vec<Vec<Particle>>,
        at_vertex: Vec<Option<usize>>,
        out: Vec<CubeCell>,
    }

    impl Search<'_> {
        fn run(&mut self, p: Particle) -> Result<(), ComplexError> {
            if p == self.n {
                if self.out.len() >= self.cap {
                    return Err(ComplexError::CapExceeded { cap: self.cap });
                }
                let mut states = vec![ParticleState::AtVertex(0); self.n];
                for (q, slot) in states.iter_mut().enumerate() {
                    if let Some(v) = self.at_vertex[q] {
                        *slot = ParticleState::AtVertex(v);
                    }
                }
                for &e in &self.edge_sites {
                    for (r, &q) in self.lines[e].iter().enumerate() {
                        states[q] = ParticleState::OnEdge(e, r);
                    }
                }
                self.out.push(CubeCell::from_states(states));
                return Ok(());
            }
            for i in 0..self.vertex_sites.len() {
                let v = self.vertex_sites[i];
                let sink = self.graph.is_sink(v);
                if !sink && self.occupied[v] {
                    continue;
                }
                self.occupied[v] = !sink;
                self.at_vertex[p] = Some(v);
                self.run(p + 1)?;
                self.at_vertex[p] = None;
                self.occupied[v] = false;
            }
            for i in 0..self.edge_sites.len() {
                let e = self.edge_sites[i];
                for pos in 0..=self.lines[e].len() {
                    self.lines[e].insert(pos, p);
                    self.run(p + 1)?;
                    self.lines[e].remove(pos);
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        graph,
        n,
        cap,
        vertex_sites: graph
            .vertices()
            .filter(|&v| graph.is_usable_vertex(v))
            .collect(),
        edge_sites: (0..graph.edge_count())
            .filter(|&e| !graph.touches_sink(e))
            .collect(),
        occupied: vec![false; graph.vertex_count()],
        lines: vec![Vec::new(); graph.edge_count()],
        at_vertex: vec![None; n],
        out: Vec::new(),
    };
    search.run(0)?;
    let mut out = search.out;
    out.par_sort_unstable();
    Ok(out)
}

/// Positive-dimensional cells whose all-side-0 corner is `corner`.
fn cubes_at_corner(graph: &Graph, corner: &CubeCell) -> Vec<CubeCell> {
    let n = corner.particle_count();
    let states: Vec<ParticleState> = corner.slots().iter().map(|&(_, s)| s).collect();
    let mut on_edge = vec![0usize; graph.edge_count()];
    let mut claimed = vec![false; graph.vertex_count()];
    for s in &states {
        match *s {
            ParticleState::OnEdge(e, _) => on_edge[e] += 1,
            ParticleState::AtVertex(v) if !graph.is_sink(v) => claimed[v] = true,
            _ => {}
        }
    }
    // Candidate moves per particle: (move, vertex newly claimed)
    let options: Vec<Vec<(ParticleState, Option<usize>)>> = states
        .iter()
        .map(|&s| {
            let mut opts = Vec::new();
            match s {
                ParticleState::OnEdge(e, r) => {
                    for (end, outermost) in [(End::Iota, r == 0), (End::Tau, r + 1 == on_edge[e])] {
                        let v = graph.endpoint(e, end);
                        if outermost && graph.valence(v) >= 2 {
                            opts.push((ParticleState::MoveEnd(e, end), Some(v)));
                        }
                    }
                }
                ParticleState::AtVertex(v) => {
                    for end in graph.ends_at(v) {
                        let e = end.edge;
                        if end.end != End::Iota || !graph.touches_sink(e) {
                            continue;
                        }
                        let w = graph.endpoint(e, End::Tau);
                        if graph.is_sink(w) || w == v {
                            opts.push((ParticleState::MoveFull(e), None));
                        } else if graph.valence(w) >= 2 {
                            opts.push((ParticleState::MoveFull(e), Some(w)));
                        }
                    }
                }
                _ => {}
            }
            opts
        })
        .collect();

    let mut out = Vec::new();
    let mut current = states.clone();
    let mut used_end = vec![false; 2 * graph.edge_count()];

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        p: usize,
        n: usize,
        moved: usize,
        options: &[Vec<(ParticleState, Option<usize>)>],
        current: &mut Vec<ParticleState>,
        used_end: &mut [bool],
        claimed: &mut [bool],
        out: &mut Vec<CubeCell>,
    ) {
        if p == n {
            if moved > 0 {
                out.push(CubeCell::from_states(current.clone()));
            }
            return;
        }
        recurse(p + 1, n, moved, options, current, used_end, claimed, out);
        let base = current[p];
        for &(mv, claim) in &options[p] {
            let e = mv.edge().expect("moves lie on edges");
            let ends: &[usize] = match mv {
                ParticleState::MoveEnd(_, end) => &[end as usize],
                _ => &[0, 1],
            };
            if ends.iter().any(|&k| used_end[2 * e + k]) || claim.is_some_and(|v| claimed[v]) {
                continue;
            }
            for &k in ends {
                used_end[2 * e + k] = true;
            }
            if let Some(v) = claim {
                claimed[v] = true;
            }
            current[p] = mv;
            // a particle leaving slot 0 re-ranks the others on its edge
            let shifted = matches!(
                (base, mv),
                (
                    ParticleState::OnEdge(_, 0),
                    ParticleState::MoveEnd(_, End::Iota)
                )
            );
            if shifted {
                shift_ranks(current, e, -1);
            }
            recurse(
                p + 1,
                n,
                moved + 1,
                options,
                current,
                used_end,
                claimed,
                out,
            );
            if shifted {
                shift_ranks(current, e, 1);
            }
            current[p] = base;
            if let Some(v) = claim {
                claimed[v] = false;
            }
            for &k in ends {
                used_end[2 * e + k] = false;
            }
        }
    }

    fn shift_ranks(states: &mut [ParticleState], edge: usize, delta: isize) {
        for s in states.iter_mut() {
            if let ParticleState::OnEdge(e, r) = s {
                if *e == edge {
                    *r = (*r as isize + delta) as usize;
                }
            }
        }
    }

    recurse(
        0,
        n,
        0,
        &options,
        &mut current,
        &mut used_end,
        &mut claimed,
        &mut out,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Family, GraphSpec};

    fn cx(f: Family, sinks: &[usize], n: usize) -> CubeComplex {
        let g = build_graph(&GraphSpec::with_sinks(f, sinks)).unwrap();
        CubeComplex::enumerate(&g, n).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn interval_two_sinks_counts() {
        for n in 1..=6 {
            let c = cx(Family::Interval, &[0, 1], n);
            assert_eq!(c.cell_counts(), vec![1 << n, n << (n - 1)]);
        }
    }

    #[test]
    fn circle_with_sink_counts() {
        for n in 1..=5 {
            assert_eq!(cx(Family::Circle, &[0], n).cell_counts(), vec![1, n]);
        }
    }

    #[test]
    fn interval_without_sinks() {
        for n in 1..=5 {
            assert_eq!(
                cx(Family::Interval, &[], n).cell_counts(),
                vec![factorial(n)]
            );
        }
    }

    #[test]
    fn circle_two_particles() {
        assert_eq!(cx(Family::Circle, &[], 2).cell_counts(), vec![4, 4]);
    }

    #[test]
    fn interval_one_sink_is_a_point() {
        for n in 0..=4 {
            assert_eq!(cx(Family::Interval, &[0], n).cell_counts(), vec![1]);
        }
    }

    #[test]
    fn star_two_particles() {
        // 0-cells: 6 on distinct legs, 6 on a shared leg, 6 with one at the
        // center; 1-cells: 12 to the center from distinct legs, 6 with the
        // other particle deeper on the same leg.
        assert_eq!(cx(Family::Star(3), &[], 2).cell_counts(), vec![18, 18]);
    }

    #[test]
    fn every_enumerated_cell_is_valid_and_unique() {
        let c = cx(Family::Banana(4), &[], 3);
        assert_eq!(c.dimension(), 2);
        for k in 0..=c.dimension() {
            for cell in c.cells(k) {
                assert!(cell.is_valid(c.graph()), "{cell}");
                assert_eq!(cell.dimension(), k);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = build_graph(&GraphSpec::family(Family::Complete(5))).unwrap();
        assert_eq!(
            CubeComplex::enumerate_capped(&g, 3, 100).unwrap_err(),
            ComplexError::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = cx(Family::Banana(4), &[], 3);
        let d1 = c.boundary_matrix(1).to_dense_i64();
        let d2 = c.boundary_matrix(2).to_dense_i64();
        for i in 0..d1.len() {
            for j in 0..d2[0].len() {
                let s: i64 = (0..d2.len()).map(|k| d1[i][k] * d2[k][j]).sum();
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn deterministic_order() {
        let a = cx(Family::H, &[2], 3);
        let b = cx(Family::H, &[2], 3);
        for k in 0..=a.dimension() {
            assert!(a.cells(k).eq(b.cells(k)));
        }
    }

    #[test]
    fn components() {
        assert_eq!(cx(Family::Interval, &[], 2).connected_components(), 2);
        assert_eq!(cx(Family::Circle, &[], 3).connected_components(), 2);
        assert_eq!(cx(Family::Star(3), &[], 3).connected_components(), 1);
    }

    /// χ of the ordered configuration space of a sink-free graph is
    /// `n!` times the `t^n` coefficient of `(1−t)^{−|E|} Π_v (1 + (1 − d_v) t)`.
    fn euler_oracle(g: &Graph, n: usize) -> i64 {
        let mut poly = vec![1i64];
        for v in g.vertices() {
            let a = 1 - g.valence(v) as i64;
            let mut next = vec![0i64; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k] += c;
                next[k + 1] += a * c;
            }
            poly = next;
        }
        let binom = |m: i64, k: i64| -> i64 { (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1)) };
        let e = g.edge_count() as i64;
        let series: i64 = (0..=n)
            .filter(|&k| k < poly.len())
            .map(|k| {
                let r = (n - k) as i64;
                poly[k]
                    * if e == 0 {
                        i64::from(r == 0)
                    } else {
                        binom(e + r - 1, r)
                    }
            })
            .sum();
        series * factorial(n) as i64
    }

    #[test]
    fn euler_characteristic_matches_generating_function() {
        let cases = [
            (Family::Complete(5), 2),
            (Family::CompleteBipartite(3, 3), 2),
            (Family::Banana(2), 3),
            (Family::Banana(4), 3),
            (Family::H, 3),
            (Family::Star(4), 3),
            (Family::Circle, 3),
            (Family::Interval, 3),
        ];
        for (f, n) in cases {
            let c = cx(f, &[], n);
            assert_eq!(
                c.euler_characteristic(),
                euler_oracle(c.graph(), n),
                "{f:?} n={n}"
            );
        }
    }
}
