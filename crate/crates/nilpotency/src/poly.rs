//! Sparse multivariate polynomials over `F_p` with a cohomological grading.
//!
//! A [`VarContext`] fixes an ordered list of variables together with their
//! (even) cohomological degrees; a [`GradedPoly`] is a finite map from
//! exponent vectors to nonzero coefficients. All arithmetic is exact, and a
//! zero coefficient is never stored.
//!
//! The Steenrod operation `P^1` acts on contexts whose variables all have
//! cohomological degree 2: it sends a variable `t` to `t^p` and extends as a
//! derivation, which raises the cohomological degree by `2(p-1)`.

use crate::fp::{is_prime, mul_mod, Fp};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unsupported context: {0}")]
    UnsupportedContext(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("{0} is not an odd prime")]
    UnsupportedPrime(u64),
    #[error("no image provided for variable {0}")]
    IncompleteMap(String),
    #[error("malformed polynomial data: {0}")]
    Malformed(String),
}

/// Ordered variable names with their cohomological degrees.
///
/// Degrees are even and nonnegative; degree 0 is reserved for formal
/// parameters that tag along in restriction computations.
#[derive(Debug, PartialEq, Eq)]
pub struct VarContext {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl VarContext {
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        degrees: Vec<u32>,
    ) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != degrees.len() {
            return Err(PolyError::InvalidContext(
                "names and degrees must have equal length".into(),
            ));
        }
        if names.is_empty() {
            return Err(PolyError::InvalidContext("empty context".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::InvalidContext(format!(
                    "duplicate variable name {n}"
                )));
            }
        }
        if degrees.iter().any(|d| d % 2 != 0) {
            return Err(PolyError::InvalidContext(
                "cohomological degrees must be even".into(),
            ));
        }
        Ok(Arc::new(VarContext { names, degrees }))
    }

    /// The standard context `t1, ..., tn`, each of cohomological degree 2.
    pub fn t_vars(n: usize) -> Arc<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        Self::new(names, vec![2; n]).expect("t-context is valid")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree_of(&self, var: usize) -> u32 {
        self.degrees[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all_degree_two(&self) -> bool {
        self.degrees.iter().all(|&d| d == 2)
    }
}

fn same_context(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exponent vector, one entry per context variable.
///
/// Ordered by total exponent first and then lexicographically, which for
/// all-degree-2 contexts coincides with the graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(index: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_exponent(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn coh_degree(&self, ctx: &VarContext) -> u32 {
        self.0
            .iter()
            .zip(ctx.degrees())
            .map(|(e, d)| e * d)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_exponent()
            .cmp(&other.total_exponent())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact sparse polynomial over `F_p`, graded by cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    p: u64,
    context: Arc<VarContext>,
    terms: BTreeMap<Monomial, u64>,
}

impl GradedPoly {
    pub fn zero(p: u64, context: Arc<VarContext>) -> Self {
        debug_assert!(is_prime(p));
        GradedPoly {
            p,
            context,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: i64, p: u64, context: Arc<VarContext>) -> Self {
        let mut poly = Self::zero(p, context);
        let c = Fp::new(c, p).value();
        if c != 0 {
            poly.terms.insert(Monomial::unit(poly.context.arity()), c);
        }
        poly
    }

    pub fn var(index: usize, p: u64, context: Arc<VarContext>) -> Self {
        let mut poly = Self::zero(p, context);
        poly.terms
            .insert(Monomial::var(index, poly.context.arity()), 1);
        poly
    }

    pub fn var_named(name: &str, p: u64, context: Arc<VarContext>) -> Self {
        let idx = context
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(idx, p, context)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// duplicates and discarding zeros.
    pub fn from_terms(
        p: u64,
        context: Arc<VarContext>,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Self {
        let mut poly = Self::zero(p, context);
        for (exps, c) in terms {
            assert_eq!(exps.len(), poly.context.arity(), "wrong exponent arity");
            poly.add_term(Monomial::new(exps), Fp::new(c, p).value());
        }
        poly
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c % self.p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (o.get() + c) % self.p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn require_same(&self, other: &GradedPoly) -> Result<(), PolyError> {
        if self.p != other.p {
            return Err(PolyError::ContextMismatch(format!(
                "different characteristics {} and {}",
                self.p, other.p
            )));
        }
        if !same_context(&self.context, &other.context) {
            return Err(PolyError::ContextMismatch(format!(
                "variables {:?} vs {:?}",
                self.context.names(),
                other.context.names()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.require_same(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> GradedPoly {
        let mut out = GradedPoly::zero(self.p, self.context.clone());
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), self.p - c);
        }
        out
    }

    pub fn sub(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> GradedPoly {
        let c = Fp::new(c, self.p).value();
        let mut out = GradedPoly::zero(self.p, self.context.clone());
        if c == 0 {
            return out;
        }
        for (m, a) in self.terms() {
            out.terms.insert(m.clone(), mul_mod(a, c, self.p));
        }
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        self.require_same(other)?;
        let mut out = GradedPoly::zero(self.p, self.context.clone());
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), mul_mod(c1, c2, self.p));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut acc = GradedPoly::constant(1, self.p, self.context.clone());
        for _ in 0..e {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// `Some(d)` if every monomial has cohomological degree `d`. The zero
    /// polynomial is homogeneous of degree 0 by convention.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Some(0),
            Some(m) => m.coh_degree(&self.context),
        };
        for m in it {
            if m.coh_degree(&self.context) != first {
                return None;
            }
        }
        Some(first)
    }

    /// The Steenrod operation `P^1` at the odd prime `p = self.p()`.
    ///
    /// Defined on degree-2 variables by `t -> t^p` and extended as a
    /// derivation; on a monomial this shifts one exponent by `p - 1` at a
    /// time, weighted by the old exponent.
    pub fn steenrod_p1(&self) -> Result<GradedPoly, PolyError> {
        if self.p == 2 {
            return Err(PolyError::UnsupportedPrime(2));
        }
        if !self.context.all_degree_two() {
            return Err(PolyError::UnsupportedContext(
                "P^1 requires all variables of cohomological degree 2".into(),
            ));
        }
        let shift = (self.p - 1) as u32;
        let mut out = GradedPoly::zero(self.p, self.context.clone());
        for (m, c) in self.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[i] += shift;
                let coeff = mul_mod(c, (e as u64) % self.p, self.p);
                out.add_term(Monomial::new(exps), coeff);
            }
        }
        Ok(out)
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// context.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<GradedPoly, PolyError> {
        if images.len() != self.context.arity() {
            return Err(PolyError::IncompleteMap(format!(
                "expected {} images, got {}",
                self.context.arity(),
                images.len()
            )));
        }
        let target = images[0].context.clone();
        let p = images[0].p;
        if p != self.p {
            return Err(PolyError::ContextMismatch(
                "substitution must preserve the characteristic".into(),
            ));
        }
        for im in images {
            if !same_context(&im.context, &target) {
                return Err(PolyError::ContextMismatch(
                    "images live in different contexts".into(),
                ));
            }
        }
        // Cache powers of each image as they are needed.
        let mut powers: Vec<Vec<GradedPoly>> = images
            .iter()
            .map(|im| vec![GradedPoly::constant(1, p, target.clone()), im.clone()])
            .collect();
        let mut out = GradedPoly::zero(p, target.clone());
        for (m, c) in self.terms() {
            let mut term = GradedPoly::constant(c as i64, p, target.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Re-expresses this polynomial over a larger context containing all of
    /// its variables (matched by name).
    pub fn inject(&self, target: Arc<VarContext>) -> Result<GradedPoly, PolyError> {
        let mut map = Vec::with_capacity(self.context.arity());
        for (name, &deg) in self.context.names().iter().zip(self.context.degrees()) {
            let idx = target
                .index_of(name)
                .ok_or_else(|| PolyError::IncompleteMap(name.clone()))?;
            if target.degree_of(idx) != deg {
                return Err(PolyError::ContextMismatch(format!(
                    "variable {name} changes degree"
                )));
            }
            map.push(idx);
        }
        let mut out = GradedPoly::zero(self.p, target.clone());
        for (m, c) in self.terms() {
            let mut exps = vec![0u32; target.arity()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] = e;
            }
            out.terms.insert(Monomial::new(exps), c);
        }
        Ok(out)
    }

    /// Terms in graded-lex descending order (graded by cohomological degree).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, u64)> {
        let mut v: Vec<(&Monomial, u64)> = self.terms().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da = a.coh_degree(&self.context);
            let db = b.coh_degree(&self.context);
            db.cmp(&da).then_with(|| b.exponents().cmp(a.exponents()))
        });
        v
    }
}

impl std::fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.context.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.context.names()[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<u32>,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    p: u64,
    vars: Vec<String>,
    degrees: Vec<u32>,
    terms: Vec<TermJson>,
}

impl Serialize for GradedPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson {
                e: m.exponents().to_vec(),
                c,
            })
            .collect();
        PolyJson {
            p: self.p,
            vars: self.context.names().to_vec(),
            degrees: self.context.degrees().to_vec(),
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if !is_prime(raw.p) {
            return Err(serde::de::Error::custom(format!("{} is not prime", raw.p)));
        }
        let ctx = VarContext::new(raw.vars, raw.degrees)
            .map_err(|e| serde::de::Error::custom(e.to_string()))?;
        let arity = ctx.arity();
        let mut poly = GradedPoly::zero(raw.p, ctx);
        for t in raw.terms {
            if t.e.len() != arity {
                return Err(serde::de::Error::custom("term arity mismatch"));
            }
            poly.add_term(Monomial::new(t.e), t.c % raw.p);
        }
        Ok(poly)
    }
}

/// Linear substitution `t_i -> sum_j M[i][j] t_j` on a polynomial whose
/// variables all have degree 2. `matrix` is row-major, `dim x dim`.
pub fn linear_substitution(
    f: &GradedPoly,
    matrix: &[Vec<u64>],
) -> Result<GradedPoly, PolyError> {
    let n = f.context().arity();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(PolyError::ContextMismatch(
            "matrix dimension must equal context arity".into(),
        ));
    }
    let images: Vec<GradedPoly> = (0..n)
        .map(|i| {
            GradedPoly::from_terms(
                f.p(),
                f.context().clone(),
                (0..n).map(|j| (Monomial::var(j, n).exponents().to_vec(), matrix[i][j] as i64)),
            )
        })
        .collect();
    f.substitute(&images)
}
