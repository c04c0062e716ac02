//! Brute-force nilpotency classes of finite matrix groups, computed two
//! ways: iterated commutators over all element tuples, and over signed
//! generator tuples only. The two tests agree; the generator version is the
//! cheap one.

use crate::matrix::{close_group, ClosureError, MatrixFp};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error("group too large to enumerate ({0} elements)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilpotencyOutcome {
    Class(u32),
    NotNilpotentWithin(u32),
}

/// An explicitly enumerated finite matrix group with a marked generator set.
pub struct FiniteGroupHandle {
    elements: Vec<MatrixFp>,
    generator_indices: Vec<usize>,
    index: HashMap<MatrixFp, usize>,
    inverse: Vec<usize>,
}

const MAX_ENUMERABLE: usize = 100_000;

impl FiniteGroupHandle {
    pub fn from_generators(generators: Vec<MatrixFp>) -> Result<Self, GroupError> {
        let elements = close_group(&generators, MAX_ENUMERABLE)?;
        let index: HashMap<MatrixFp, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let inverse: Vec<usize> = elements
            .iter()
            .map(|m| index[&m.inverse().expect("group element is invertible")])
            .collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        Ok(FiniteGroupHandle {
            elements,
            generator_indices,
            index,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity_index(&self) -> usize {
        self.index[&MatrixFp::identity(self.elements[0].dim, self.elements[0].p)]
    }

    fn commutator(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a]
            .mul(&self.elements[b])
            .mul(&self.elements[self.inverse[a]])
            .mul(&self.elements[self.inverse[b]]);
        self.index[&m]
    }

    /// Least `k` such that every right-nested commutator of `k+1` elements
    /// is trivial, where the inner arguments range over all group elements.
    pub fn nilpotency_class_all_tuples(&self, k_max: u32) -> NilpotencyOutcome {
        let e = self.identity_index();
        let all: Vec<usize> = (0..self.elements.len()).collect();
        let mut current: BTreeSet<usize> = all.iter().copied().collect();
        for k in 1..=k_max {
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for &a in &all {
                for &x in &current {
                    next.insert(self.commutator(a, x));
                }
            }
            if next.iter().all(|&x| x == e) {
                return NilpotencyOutcome::Class(k);
            }
            current = next;
        }
        NilpotencyOutcome::NotNilpotentWithin(k_max)
    }

    /// The same class computed from signed generator tuples only:
    /// `[g_1^{+-1}, [ ... [g_k^{+-1}, g_{k+1}^{+-1}] ... ]]`.
    pub fn nilpotency_class_generators(&self, k_max: u32) -> NilpotencyOutcome {
        let e = self.identity_index();
        let mut letters: Vec<usize> = Vec::new();
        for &g in &self.generator_indices {
            letters.push(g);
            letters.push(self.inverse[g]);
        }
        letters.sort_unstable();
        letters.dedup();
        let mut current: BTreeSet<usize> = letters.iter().copied().collect();
        for k in 1..=k_max {
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for &a in &letters {
                for &x in &current {
                    next.insert(self.commutator(a, x));
                }
            }
            if next.iter().all(|&x| x == e) {
                return NilpotencyOutcome::Class(k);
            }
            current = next;
        }
        NilpotencyOutcome::NotNilpotentWithin(k_max)
    }

    /// Runs both tests and checks that they agree.
    pub fn nilpotency_class(&self, k_max: u32) -> NilpotencyOutcome {
        let by_generators = self.nilpotency_class_generators(k_max);
        let by_all = self.nilpotency_class_all_tuples(k_max);
        assert_eq!(
            by_generators, by_all,
            "generator and all-tuple nilpotency tests disagree"
        );
        by_all
    }
}

/// The group of 3x3 unitriangular matrices over `F_3` (order 27).
pub fn heisenberg_f3() -> FiniteGroupHandle {
    let a = MatrixFp::from_rows(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
    let b = MatrixFp::from_rows(vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]], 3);
    FiniteGroupHandle::from_generators(vec![a, b]).expect("closure is finite")
}

/// The symmetric group on four letters as permutation matrices over `F_p`.
pub fn symmetric4(p: u64) -> FiniteGroupHandle {
    let transposition = MatrixFp::from_rows(
        vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ],
        p,
    );
    let four_cycle = MatrixFp::from_rows(
        vec![
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ],
        p,
    );
    FiniteGroupHandle::from_generators(vec![transposition, four_cycle]).expect("S4 closes")
}

/// Dihedral group of order `2n` (eigenbasis matrices), for `n | p - 1`.
pub fn dihedral(n: u32, p: u64) -> Result<FiniteGroupHandle, GroupError> {
    let g = crate::reflection::build_dihedral(n, p)
        .map_err(|_| GroupError::TooLarge(0))?;
    FiniteGroupHandle::from_generators(g.generators().to_vec())
}

/// Cyclic group of order `n` as scalar matrices, for `n | p - 1`.
pub fn cyclic(n: u32, p: u64) -> FiniteGroupHandle {
    let zeta = (2..p)
        .find(|&x| {
            crate::fp::pow_mod(x, n as u64, p) == 1
                && (1..n as u64).all(|k| n as u64 % k != 0 || crate::fp::pow_mod(x, k, p) != 1)
        })
        .expect("primitive root exists");
    let g = MatrixFp::from_rows(vec![vec![zeta as i64]], p);
    FiniteGroupHandle::from_generators(vec![g]).expect("cyclic closure")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_groups_have_class_one() {
        assert_eq!(cyclic(6, 7).nilpotency_class(6), NilpotencyOutcome::Class(1));
        assert_eq!(
            dihedral(2, 3).unwrap().nilpotency_class(6),
            NilpotencyOutcome::Class(1)
        );
    }

    #[test]
    fn heisenberg_class_two() {
        let h = heisenberg_f3();
        assert_eq!(h.order(), 27);
        assert_eq!(h.nilpotency_class(6), NilpotencyOutcome::Class(2));
    }

    #[test]
    fn dihedral_two_groups() {
        // order 8: class 2; order 16: class 3
        assert_eq!(
            dihedral(4, 5).unwrap().nilpotency_class(6),
            NilpotencyOutcome::Class(2)
        );
        assert_eq!(
            dihedral(8, 17).unwrap().nilpotency_class(6),
            NilpotencyOutcome::Class(3)
        );
    }

    #[test]
    fn s4_is_not_nilpotent() {
        let s4 = symmetric4(5);
        assert_eq!(s4.order(), 24);
        assert_eq!(
            s4.nilpotency_class_all_tuples(6),
            NilpotencyOutcome::NotNilpotentWithin(6)
        );
        assert_eq!(
            s4.nilpotency_class_generators(6),
            NilpotencyOutcome::NotNilpotentWithin(6)
        );
    }
}
