//! Integral homology of cube complexes and membership tests for chains.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::chain::Chain;
use crate::complex::{ComplexError, CubeComplex};
use crate::elimination::{integral_solvable, rank_over_rationals, smith_normal_form};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("boundary matrix in degree {degree} has {nnz} nonzeros, cap is {cap}")]
    NonzeroCap {
        degree: usize,
        nnz: usize,
        cap: usize,
    },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("chain {index} is not a cycle")]
    NotACycle { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Also run the Smith form on the degree-1 boundary (an incidence
    /// matrix, which never carries torsion).
    pub full_snf: bool,
    /// Largest boundary matrix, in nonzeros, the engine will accept.
    pub max_nonzeros: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        Self {
            full_snf: false,
            max_nonzeros: 20_000_000,
        }
    }
}

fn serialize_factors<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub cells: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub degrees: Vec<DegreeSummary>,
    pub euler_characteristic: i64,
}

impl HomologySummary {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Betti numbers with trailing zeros removed.
    pub fn betti_trimmed(&self) -> Vec<usize> {
        let mut b = self.betti();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn betti_in(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.cells).collect()
    }

    /// Alternating sum of Betti numbers.
    pub fn betti_euler(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| {
                if d.degree % 2 == 0 {
                    d.betti as i64
                } else {
                    -(d.betti as i64)
                }
            })
            .sum()
    }
}

struct BoundaryData {
    rank: usize,
    torsion: Vec<BigInt>,
}

fn analyse_boundary(
    cx: &CubeComplex,
    k: usize,
    opts: &HomologyOptions,
) -> Result<BoundaryData, HomologyError> {
    let m = cx.boundary_matrix(k);
    if m.nnz() > opts.max_nonzeros {
        return Err(HomologyError::NonzeroCap {
            degree: k,
            nnz: m.nnz(),
            cap: opts.max_nonzeros,
        });
    }
    if k >= 2 || opts.full_snf {
        let f = smith_normal_form(&m);
        if opts.full_snf {
            assert_eq!(
                f.rank(),
                rank_over_rationals(&m),
                "Smith form rank disagrees in degree {k}"
            );
        }
        Ok(BoundaryData {
            rank: f.rank(),
            torsion: f.torsion,
        })
    } else {
        Ok(BoundaryData {
            rank: rank_over_rationals(&m),
            torsion: Vec::new(),
        })
    }
}

pub fn homology(cx: &CubeComplex) -> Result<HomologySummary, HomologyError> {
    homology_with(cx, &HomologyOptions::default())
}

/// `b_k = #k-cells − rank ∂_k − rank ∂_{k+1}`; torsion in degree `k` is the
/// list of invariant factors of `∂_{k+1}` exceeding one.
pub fn homology_with(
    cx: &CubeComplex,
    opts: &HomologyOptions,
) -> Result<HomologySummary, HomologyError> {
    let top = cx.dimension();
    let boundaries: Vec<BoundaryData> = (1..=top)
        .into_par_iter()
        .map(|k| analyse_boundary(cx, k, opts))
        .collect::<Result<_, _>>()?;
    let rank = |k: usize| {
        if k == 0 || k > top {
            0
        } else {
            boundaries[k - 1].rank
        }
    };
    let degrees = (0..=top)
        .map(|k| DegreeSummary {
            degree: k,
            cells: cx.cell_count(k),
            betti: cx.cell_count(k) - rank(k) - rank(k + 1),
            torsion: if k < top {
                boundaries[k].torsion.clone()
            } else {
                Vec::new()
            },
        })
        .collect();
    Ok(HomologySummary {
        degrees,
        euler_characteristic: cx.euler_characteristic(),
    })
}

pub fn euler_characteristic(cx: &CubeComplex) -> i64 {
    cx.euler_characteristic()
}

pub fn connected_components(cx: &CubeComplex) -> usize {
    cx.connected_components()
}

pub fn is_cycle(z: &Chain, graph: &Graph) -> bool {
    z.boundary(graph).is_zero()
}

/// Whether `z = ∂x` for an integral chain `x`.
pub fn is_boundary(z: &Chain, cx: &CubeComplex) -> Result<bool, HomologyError> {
    if z.is_zero() {
        return Ok(true);
    }
    let v = cx.chain_vector(z)?;
    let d = cx.boundary_matrix(z.degree() + 1);
    if d.cols() == 0 {
        return Ok(false);
    }
    Ok(integral_solvable(&d, &[v])[0])
}

fn cycle_columns(
    zs: &[Chain],
    cx: &CubeComplex,
    k: usize,
) -> Result<Vec<Vec<(usize, i64)>>, HomologyError> {
    zs.iter()
        .enumerate()
        .map(|(i, z)| {
            if !z.is_zero() && z.degree() != k {
                return Err(HomologyError::DegreeMismatch {
                    expected: k,
                    found: z.degree(),
                });
            }
            if !is_cycle(z, cx.graph()) {
                return Err(HomologyError::NotACycle { index: i });
            }
            Ok(cx.chain_vector(z)?)
        })
        .collect()
}

/// Rank of the image of `zs` in rational degree-`k` homology.
pub fn class_span_rank(zs: &[Chain], cx: &CubeComplex, k: usize) -> Result<usize, HomologyError> {
    let cols = cycle_columns(zs, cx, k)?;
    if cols.is_empty() {
        return Ok(0);
    }
    let d = cx.boundary_matrix(k + 1);
    let base = rank_over_rationals(&d);
    let extended = d.with_columns(&cols);
    Ok(rank_over_rationals(&extended) - base)
}

/// Whether `zs` generate degree-`k` homology over the integers: their span
/// together with the boundaries must be all of the cycles.
pub fn classes_generate_integrally(
    zs: &[Chain],
    cx: &CubeComplex,
    k: usize,
) -> Result<bool, HomologyError> {
    let cols = cycle_columns(zs, cx, k)?;
    let d = cx.boundary_matrix(k + 1);
    let lattice = d.with_columns(&cols);
    let f = smith_normal_form(&lattice);
    let cycles_rank = cx.cell_count(k) - rank_over_rationals(&cx.boundary_matrix(k));
    Ok(f.torsion.is_empty() && f.rank() == cycles_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{CubeCell, ParticleState::*};
    use crate::graph::{build_graph, Family, GraphSpec};

    fn cx(f: Family, sinks: &[usize], n: usize) -> CubeComplex {
        let g = build_graph(&GraphSpec::with_sinks(f, sinks)).unwrap();
        CubeComplex::enumerate(&g, n).unwrap()
    }

    #[test]
    fn small_spaces() {
        let h = homology(&cx(Family::Interval, &[0, 1], 4)).unwrap();
        assert_eq!(h.betti_trimmed(), vec![1, 17]);
        assert!(h.is_torsion_free());
        let h = homology(&cx(Family::Circle, &[0], 3)).unwrap();
        assert_eq!(h.betti_trimmed(), vec![1, 3]);
        let h = homology(&cx(Family::Circle, &[], 3)).unwrap();
        assert_eq!(h.betti_trimmed(), vec![2, 2]);
        let h = homology(&cx(Family::Star(3), &[], 2)).unwrap();
        assert_eq!(h.betti_trimmed(), vec![1, 1]);
    }

    #[test]
    fn euler_and_components() {
        let c = cx(Family::Interval, &[0, 1], 5);
        assert_eq!(euler_characteristic(&c), (2 - 5) * 16);
        assert_eq!(connected_components(&cx(Family::Interval, &[], 2)), 2);
        let h = homology(&c).unwrap();
        assert_eq!(h.betti_euler(), h.euler_characteristic);
    }

    #[test]
    fn membership_basics() {
        let c = cx(Family::Banana(3), &[], 2);
        let z = Chain::zero(1);
        assert!(is_cycle(&z, c.graph()));
        assert!(is_boundary(&z, &c).unwrap());
        let two = c.cells(2).next().cloned();
        if let Some(sq) = two {
            let b = sq.boundary(c.graph());
            assert!(is_cycle(&b, c.graph()));
            assert!(is_boundary(&b, &c).unwrap());
            assert_eq!(class_span_rank(&[b], &c, 1).unwrap(), 0);
        }
        assert_eq!(class_span_rank(&[], &c, 1).unwrap(), 0);
        let e = Chain::from_cell(c.cells(1).next().unwrap().clone(), 1);
        assert_eq!(
            class_span_rank(&[e], &c, 1),
            Err(HomologyError::NotACycle { index: 0 })
        );
    }

    #[test]
    fn petal_generates() {
        let c = cx(Family::Circle, &[0], 1);
        let z = Chain::from_cell(CubeCell::from_states(vec![MoveFull(0)]), 1);
        assert!(is_cycle(&z, c.graph()));
        assert!(!is_boundary(&z, &c).unwrap());
        assert_eq!(class_span_rank(std::slice::from_ref(&z), &c, 1).unwrap(), 1);
        assert!(classes_generate_integrally(std::slice::from_ref(&z), &c, 1).unwrap());
        assert!(!classes_generate_integrally(&[z.scaled(2)], &c, 1).unwrap());
    }

    #[test]
    fn unknown_cells_are_rejected() {
        let c = cx(Family::Circle, &[0], 2);
        let z = Chain::from_cell(CubeCell::from_states(vec![MoveFull(0)]), 1);
        assert!(matches!(
            is_boundary(&z, &c),
            Err(HomologyError::Complex(_))
        ));
    }
}
