//! Symmetric polynomials in the monomial (orbit-sum) basis.
//!
//! A symmetric polynomial in `n` variables is stored as a map from
//! partitions (sorted exponent vectors, trailing zeros dropped) to
//! coefficients: the partition `lambda` stands for the orbit sum
//! `m_lambda = sum of u^alpha over distinct rearrangements alpha`.
//! Working per-orbit keeps the degree-22 computations in eight variables at
//! a few hundred terms instead of a few million monomials.

use crate::fp::{add_mod, mul_mod};
use std::collections::BTreeMap;

pub(crate) type Partition = Vec<u32>;

pub(crate) fn sorted_desc(mut v: Vec<u32>) -> Partition {
    v.sort_unstable_by(|a, b| b.cmp(a));
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Number of distinct rearrangements of `lambda` over `n` slots:
/// n! / (prod over exponent values of multiplicity!).
pub(crate) fn orbit_size(lambda: &[u32], n: usize) -> u128 {
    let mut counts: BTreeMap<u32, u128> = BTreeMap::new();
    for &x in lambda {
        *counts.entry(x).or_insert(0) += 1;
    }
    *counts.entry(0).or_insert(0) += (n - lambda.len()) as u128;
    let fact = |k: u128| (1..=k).product::<u128>();
    let mut denom = 1u128;
    for &c in counts.values() {
        denom *= fact(c);
    }
    fact(n as u128) / denom
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SymPoly {
    pub p: u64,
    pub nvars: usize,
    pub terms: BTreeMap<Partition, u64>,
}

impl SymPoly {
    pub fn zero(p: u64, nvars: usize) -> Self {
        SymPoly {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u64, nvars: usize) -> Self {
        let mut s = Self::zero(p, nvars);
        s.terms.insert(vec![], 1);
        s
    }

    /// The power sum of degree `k` (a single one-part orbit).
    pub fn power_sum(k: u32, p: u64, nvars: usize) -> Self {
        let mut s = Self::zero(p, nvars);
        if k == 0 {
            s.terms.insert(vec![], (nvars as u64) % p);
        } else {
            s.terms.insert(vec![k], 1);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: u64) {
        debug_assert!(lambda.len() <= self.nvars);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add_mod(*o.get(), c, self.p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled_assign(other, 1);
        out
    }

    /// `self += c * other`, without cloning term maps.
    pub fn add_scaled_assign(&mut self, other: &SymPoly, c: u64) {
        debug_assert_eq!(self.nvars, other.nvars);
        if c % self.p == 0 {
            return;
        }
        for (l, &a) in &other.terms {
            self.add_term(l.clone(), mul_mod(a, c % self.p, self.p));
        }
    }

    /// Multiplication by the elementary symmetric polynomial `e_k`.
    ///
    /// Positions of `lambda` are grouped by exponent value; a product term
    /// chooses how many positions of each value to increment. Each choice
    /// profile yields a distinct successor partition `mu`, with coefficient
    /// `prod_v C(count of v+1 in mu, increments applied at value v)` — the
    /// number of k-subsets of a fixed representative of `mu` that decrement
    /// back onto the orbit of `lambda`.
    pub fn mul_elementary(&self, k: usize) -> SymPoly {
        let n = self.nvars;
        let mut out = SymPoly::zero(self.p, n);
        if k == 0 {
            return self.clone();
        }
        if k > n {
            return out;
        }
        let p = self.p;
        for (lambda, &c) in &self.terms {
            let classes = value_classes(lambda, n);
            let mut profile = vec![0u32; classes.len()];
            // (value, count) pairs of the successor, descending by value;
            // since the classes descend, an incremented value v+1 can only
            // merge with the entry pushed immediately before it.
            let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(2 * classes.len());
            apply_profiles(&classes, k as u32, 0, &mut profile, &mut |profile| {
                pairs.clear();
                for ((v, m), &i) in classes.iter().zip(profile.iter()) {
                    if i > 0 {
                        match pairs.last_mut() {
                            Some(last) if last.0 == v + 1 => last.1 += i,
                            _ => pairs.push((v + 1, i)),
                        }
                    }
                    if *m > i {
                        pairs.push((*v, m - i));
                    }
                }
                let mut coeff = 1u64;
                for ((v, _), &i) in classes.iter().zip(profile.iter()) {
                    if i > 0 {
                        let cnt = pairs
                            .iter()
                            .find(|(val, _)| *val == v + 1)
                            .map(|&(_, c)| c)
                            .unwrap_or(0);
                        coeff = mul_mod(coeff, small_binom(cnt, i) % p, p);
                        if coeff == 0 {
                            return;
                        }
                    }
                }
                let mut mu: Partition = Vec::with_capacity(n);
                for &(v, cnt) in &pairs {
                    if v > 0 {
                        mu.extend(std::iter::repeat(v).take(cnt as usize));
                    }
                }
                out.add_term(mu, mul_mod(c, coeff, p));
            });
        }
        out
    }

    /// The leading partition in graded-lex order (weight first, then lex).
    pub fn leading(&self) -> Option<(&Partition, u64)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| {
                let wa: u32 = a.iter().sum();
                let wb: u32 = b.iter().sum();
                wa.cmp(&wb).then_with(|| a.cmp(b))
            })
            .map(|(l, &c)| (l, c))
    }
}

/// Distinct exponent values of the padded partition with multiplicities,
/// descending by value and including the zero class.
fn value_classes(lambda: &Partition, n: usize) -> Vec<(u32, u32)> {
    let mut classes: Vec<(u32, u32)> = Vec::new();
    for &v in lambda {
        match classes.last_mut() {
            Some((last, m)) if *last == v => *m += 1,
            _ => classes.push((v, 1)),
        }
    }
    let zeros = n - lambda.len();
    if zeros > 0 {
        classes.push((0, zeros as u32));
    }
    classes
}

/// Enumerates all ways to split `k` increments across the value classes,
/// bounded by each class's multiplicity.
fn apply_profiles(
    classes: &[(u32, u32)],
    remaining: u32,
    pos: usize,
    profile: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if pos == classes.len() {
        if remaining == 0 {
            f(profile);
        }
        return;
    }
    let cap: u32 = classes[pos..].iter().map(|(_, m)| *m).sum();
    if cap < remaining {
        return;
    }
    let lo = remaining.saturating_sub(cap - classes[pos].1);
    for i in lo..=classes[pos].1.min(remaining) {
        profile[pos] = i;
        apply_profiles(classes, remaining - i, pos + 1, profile, f);
    }
    profile[pos] = 0;
}

fn small_binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k as u64 {
        num *= n as u64 - i;
        den *= i + 1;
    }
    num / den
}

/// Cache of expansions of products `e_1^{b_1} ... e_n^{b_n}` in the orbit
/// basis. Entries are shared, not cloned.
#[derive(Default)]
pub(crate) struct ElemCache {
    cache: std::collections::HashMap<Vec<u32>, std::rc::Rc<SymPoly>>,
}

impl ElemCache {
    pub fn product(&mut self, exps: &[u32], p: u64, nvars: usize) -> std::rc::Rc<SymPoly> {
        if let Some(hit) = self.cache.get(exps) {
            return hit.clone();
        }
        let result = match exps.iter().rposition(|&b| b > 0) {
            None => SymPoly::one(p, nvars),
            Some(j) => {
                let mut prev = exps.to_vec();
                prev[j] -= 1;
                let base = self.product(&prev, p, nvars);
                base.mul_elementary(j + 1)
            }
        };
        let result = std::rc::Rc::new(result);
        self.cache.insert(exps.to_vec(), result.clone());
        result
    }
}

/// Rewrites a symmetric polynomial as a polynomial in the elementary
/// symmetric polynomials `e_1..e_n`, by repeated elimination of the leading
/// orbit. Returns `(e-exponent vector, coefficient)` pairs.
pub(crate) fn to_elementary(
    f: &SymPoly,
    cache: &mut ElemCache,
) -> Vec<(Vec<u32>, u64)> {
    let n = f.nvars;
    let p = f.p;
    let mut rem = f.clone();
    let mut out = Vec::new();
    while let Some((lambda, c)) = rem.leading().map(|(l, c)| (l.clone(), c)) {
        // e-product whose leading orbit is lambda: b_i = lambda_i - lambda_{i+1}
        let mut b = vec![0u32; n];
        for i in 0..lambda.len() {
            let next = if i + 1 < lambda.len() { lambda[i + 1] } else { 0 };
            b[i] = lambda[i] - next;
        }
        let expansion = cache.product(&b, p, n);
        debug_assert_eq!(expansion.leading().map(|(l, _)| l.clone()), Some(lambda));
        let lead_coeff = expansion.leading().unwrap().1;
        let factor = mul_mod(c, crate::fp::inv_mod(lead_coeff, p), p);
        out.push((b, factor));
        rem.add_scaled_assign(&expansion, p - factor);
    }
    out
}
