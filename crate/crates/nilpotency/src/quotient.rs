//! Quotient rings presented by linear eliminations and nilpotency bounds,
//! and ring homomorphisms into them.
//!
//! Every ideal handled here is generated by relations of two shapes: a pure
//! power `v^k` (recorded as the bound `v^k = 0`) and a relation `c*v + r`
//! with `c` invertible and `v` absent from `r` (recorded as the elimination
//! `v -> -c^{-1} r`). Normal forms substitute eliminated variables once and
//! then truncate monomials that violate a bound, which is a confluent
//! procedure for this class of presentations; the constructor rejects
//! anything outside it.

use crate::fp::inv_mod;
use crate::poly::{GradedPoly, Monomial, PolyError, VarContext};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("relation not supported by this presentation style: {0}")]
    UnsupportedRelation(String),
    #[error("eliminations are cyclic: variable {0} reappears")]
    CyclicElimination(String),
}

/// A quotient of a polynomial ring by eliminations and nilpotency bounds.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    p: u64,
    context: Arc<VarContext>,
    /// variable index -> replacement polynomial (no eliminated variables)
    eliminations: BTreeMap<usize, GradedPoly>,
    /// variable index -> k, meaning v^k = 0
    nilpotency_bounds: BTreeMap<usize, u32>,
}

impl QuotientPresentation {
    /// The trivial quotient (the polynomial ring itself).
    pub fn free(p: u64, context: Arc<VarContext>) -> Self {
        QuotientPresentation {
            p,
            context,
            eliminations: BTreeMap::new(),
            nilpotency_bounds: BTreeMap::new(),
        }
    }

    /// Classifies each relation as a pure power or a linear-leading
    /// elimination. Rejects anything else.
    pub fn from_relations(
        p: u64,
        context: Arc<VarContext>,
        relations: &[GradedPoly],
    ) -> Result<Self, QuotientError> {
        let mut q = Self::free(p, context.clone());
        for rel in relations {
            if rel.p() != p || **rel.context() != *context {
                return Err(QuotientError::Poly(PolyError::ContextMismatch(
                    "relation in wrong ring".into(),
                )));
            }
            if rel.is_zero() {
                continue;
            }
            if let Some((var, k)) = as_pure_power(rel) {
                let bound = q.nilpotency_bounds.entry(var).or_insert(k);
                *bound = (*bound).min(k);
                continue;
            }
            if let Some((var, replacement)) = as_linear_leading(rel, p) {
                if q.eliminations.contains_key(&var) {
                    return Err(QuotientError::UnsupportedRelation(format!(
                        "variable {} eliminated twice",
                        context.names()[var]
                    )));
                }
                q.eliminations.insert(var, replacement);
                continue;
            }
            return Err(QuotientError::UnsupportedRelation(rel.to_string()));
        }
        // Replacements may not mention any eliminated variable.
        for (var, rhs) in &q.eliminations {
            for (m, _) in rhs.terms() {
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 && q.eliminations.contains_key(&i) {
                        return Err(QuotientError::CyclicElimination(
                            context.names()[*var].clone(),
                        ));
                    }
                }
            }
        }
        Ok(q)
    }

    /// Adds the bound `v^k = 0` for a named variable.
    pub fn with_bound(mut self, name: &str, k: u32) -> Self {
        let idx = self
            .context
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        self.nilpotency_bounds.insert(idx, k);
        self
    }

    /// Adds the elimination `v -> rhs` for a named variable.
    pub fn with_elimination(mut self, name: &str, rhs: GradedPoly) -> Self {
        let idx = self
            .context
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        self.eliminations.insert(idx, rhs);
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.context
    }

    /// The canonical representative of `f` in the quotient.
    pub fn normal_form(&self, f: &GradedPoly) -> Result<GradedPoly, PolyError> {
        if f.p() != self.p || (!Arc::ptr_eq(f.context(), &self.context) && **f.context() != *self.context)
        {
            return Err(PolyError::ContextMismatch(
                "polynomial not over the quotient's ring".into(),
            ));
        }
        let substituted = if self.eliminations.is_empty() {
            f.clone()
        } else {
            let images: Vec<GradedPoly> = (0..self.context.arity())
                .map(|i| match self.eliminations.get(&i) {
                    Some(rhs) => rhs.clone(),
                    None => GradedPoly::var(i, self.p, self.context.clone()),
                })
                .collect();
            f.substitute(&images)?
        };
        let mut out = GradedPoly::zero(self.p, self.context.clone());
        for (m, c) in substituted.terms() {
            if self.respects_bounds(m) {
                out.add_term(m.clone(), c);
            }
        }
        Ok(out)
    }

    fn respects_bounds(&self, m: &Monomial) -> bool {
        self.nilpotency_bounds
            .iter()
            .all(|(&v, &k)| m.exponents()[v] < k)
    }

    /// Monomials of the quotient basis in a given cohomological degree:
    /// non-eliminated variables with exponents below their bounds.
    pub fn monomial_basis(&self, coh_degree: u32) -> Vec<Monomial> {
        let n = self.context.arity();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        self.basis_rec(0, coh_degree, &mut cur, &mut out);
        out
    }

    fn basis_rec(&self, var: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == cur.len() {
            if rem == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        if self.eliminations.contains_key(&var) {
            cur[var] = 0;
            self.basis_rec(var + 1, rem, cur, out);
            return;
        }
        let d = self.context.degree_of(var);
        let max_by_bound = self
            .nilpotency_bounds
            .get(&var)
            .map(|&k| k - 1)
            .unwrap_or(u32::MAX);
        let max_by_degree = if d == 0 {
            // degree-0 formal parameters would make the basis infinite
            0
        } else {
            rem / d
        };
        for e in 0..=max_by_bound.min(max_by_degree) {
            cur[var] = e;
            self.basis_rec(var + 1, rem - e * d, cur, out);
        }
        cur[var] = 0;
    }
}

fn as_pure_power(rel: &GradedPoly) -> Option<(usize, u32)> {
    if rel.num_terms() != 1 {
        return None;
    }
    let (m, _) = rel.terms().next().unwrap();
    let nz: Vec<(usize, u32)> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (i, e))
        .collect();
    match nz.as_slice() {
        [(i, e)] => Some((*i, *e)),
        _ => None,
    }
}

/// Matches `c*v + r` with `v` linear, alone in its term, and absent from `r`;
/// returns `(v, -c^{-1} r)`.
fn as_linear_leading(rel: &GradedPoly, p: u64) -> Option<(usize, GradedPoly)> {
    let arity = rel.context().arity();
    'candidates: for v in 0..arity {
        let mut coeff = 0u64;
        for (m, c) in rel.terms() {
            let e = m.exponents()[v];
            if e == 0 {
                continue;
            }
            if e == 1 && m.total_exponent() == 1 {
                coeff = c;
            } else {
                continue 'candidates;
            }
        }
        if coeff == 0 {
            continue;
        }
        let lead = GradedPoly::var(v, p, rel.context().clone()).scale(coeff as i64);
        let rest = rel.sub(&lead).ok()?;
        let factor = p - inv_mod(coeff, p);
        return Some((v, rest.scale(factor as i64)));
    }
    None
}

/// A generator-image homomorphism into a quotient ring.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: Arc<VarContext>,
    target: QuotientPresentation,
    images: Vec<GradedPoly>,
}

impl RingMap {
    pub fn new(
        source: Arc<VarContext>,
        target: QuotientPresentation,
        images: Vec<GradedPoly>,
    ) -> Result<Self, PolyError> {
        if images.len() != source.arity() {
            return Err(PolyError::IncompleteMap(format!(
                "need {} images, got {}",
                source.arity(),
                images.len()
            )));
        }
        for im in &images {
            if im.p() != target.p() {
                return Err(PolyError::ContextMismatch(
                    "image in wrong characteristic".into(),
                ));
            }
        }
        Ok(RingMap {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &Arc<VarContext> {
        &self.source
    }

    pub fn target(&self) -> &QuotientPresentation {
        &self.target
    }

    /// Substitutes the images and reduces to normal form in the target.
    pub fn apply(&self, f: &GradedPoly) -> Result<GradedPoly, PolyError> {
        if !Arc::ptr_eq(f.context(), &self.source) && **f.context() != *self.source {
            return Err(PolyError::ContextMismatch(
                "polynomial not over the map's source".into(),
            ));
        }
        let substituted = f.substitute(&self.images)?;
        self.target.normal_form(&substituted)
    }
}
