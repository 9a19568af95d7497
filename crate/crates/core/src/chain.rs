//! Finitely supported integer combinations of cells of one dimension.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cell::{CubeCell, Particle};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<CubeCell, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_cell(cell: CubeCell, coefficient: i64) -> Self {
        let mut c = Self::zero(cell.dimension());
        c.add_term(cell, coefficient);
        c
    }

    /// Builds a chain from terms, checking that every cell has `degree`.
    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (CubeCell, i64)>,
    ) -> Result<Self, ChainError> {
        let mut c = Self::zero(degree);
        for (cell, k) in terms {
            let found = cell.dimension();
            if found != degree {
                return Err(ChainError::DegreeMismatch {
                    expected: degree,
                    found,
                });
            }
            c.add_term(cell, k);
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `k · cell`. The cell must have the chain's degree.
    pub fn add_term(&mut self, cell: CubeCell, k: i64) {
        debug_assert_eq!(
            cell.dimension(),
            self.degree,
            "cell {cell} in degree {}",
            self.degree
        );
        if k == 0 {
            return;
        }
        let entry = self.terms.entry(cell);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(k);
            }
        }
    }

    pub fn add_chain(&mut self, other: &Chain, k: i64) -> Result<(), ChainError> {
        if other.is_zero() {
            return Ok(());
        }
        if other.degree != self.degree {
            return Err(ChainError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        for (cell, &c) in &other.terms {
            self.add_term(cell.clone(), k * c);
        }
        Ok(())
    }

    pub fn scaled(&self, k: i64) -> Chain {
        let mut out = Chain::zero(self.degree);
        if k != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(c, &v)| (c.clone(), v * k))
                .collect();
        }
        out
    }

    pub fn coefficient(&self, cell: &CubeCell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CubeCell, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn boundary(&self, graph: &Graph) -> Chain {
        let mut out = Chain::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (cell, &k) in &self.terms {
            for (face, s) in cell.boundary(graph).terms {
                out.add_term(face, s * k);
            }
        }
        out
    }

    pub fn relabel(&self, perm: &[Particle]) -> Chain {
        let mut out = Chain::zero(self.degree);
        for (cell, &k) in &self.terms {
            out.add_term(cell.relabel(perm), k);
        }
        out
    }

    /// Particles appearing in any cell of the support.
    pub fn particles(&self) -> Vec<Particle> {
        let mut ps: Vec<Particle> = self.terms.keys().flat_map(|c| c.particles()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

impl fmt::Display for Chain {
    /// One `coefficient<TAB>cell` line per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (cell, k) in &self.terms {
            write!(f, "{k}\t")?;
            for (i, (_, s)) in cell.slots().iter().enumerate() {
                if i > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::ParticleState::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = CubeCell::from_states(vec![AtVertex(0)]);
        let mut c = Chain::zero(0);
        c.add_term(a.clone(), 2);
        c.add_term(a.clone(), -2);
        assert!(c.is_zero());
        c.add_term(a.clone(), 0);
        assert!(c.is_zero());
    }

    #[test]
    fn degree_checks() {
        let one = CubeCell::from_states(vec![MoveFull(0)]);
        assert!(Chain::from_terms(0, [(one.clone(), 1)]).is_err());
        let mut z = Chain::zero(0);
        assert!(z.add_chain(&Chain::from_cell(one, 1), 1).is_err());
    }
}
