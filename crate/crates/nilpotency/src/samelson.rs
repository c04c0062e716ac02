//! p-primary homotopy bookkeeping: the stable range of odd spheres, p-parts
//! of factorial ratios, the resulting nontriviality tests for Samelson
//! products in the unitary and symplectic families, and the index search for
//! the triple condition that forces nilpotency class 3.

use serde::Serialize;

/// The type `(n_1, ..., n_l)` of a product of odd spheres
/// `S^{2n_1-1} x ... x S^{2n_l-1}`, with `n_1 <= ... <= n_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereType(Vec<u32>);

impl SphereType {
    /// Entries are sorted ascending; each must be at least 2.
    pub fn new(mut half_degrees: Vec<u32>) -> Option<Self> {
        if half_degrees.is_empty() || half_degrees.iter().any(|&n| n < 2) {
            return None;
        }
        half_degrees.sort_unstable();
        Some(SphereType(half_degrees))
    }

    pub fn half_degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn bottom(&self) -> u32 {
        self.0[0]
    }
}

/// The p-primary part of `pi_{2n-1+i}(S^{2n-1})` in the range the tables
/// cover: cyclic of order p exactly at `i = 2p-3`, zero elsewhere up to
/// `i <= 4p-7`, and undetermined beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomotopyAnswer {
    CyclicP,
    Zero,
    Unknown,
}

pub fn p_homotopy(_n: u32, i: u32, p: u64) -> HomotopyAnswer {
    let p = p as u32;
    if i == 2 * p - 3 {
        HomotopyAnswer::CyclicP
    } else if i <= 4 * p - 7 {
        HomotopyAnswer::Zero
    } else {
        HomotopyAnswer::Unknown
    }
}

/// Legendre sum: the exponent of p in m!.
fn legendre(m: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = p;
    while q <= m {
        e += m / q;
        q = match q.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    e
}

/// Exponent of p in `(i+j-1)! / ((i-1)!(j-1)!)`.
pub fn nu_p_exponent(i: u64, j: u64, p: u64) -> u64 {
    legendre(i + j - 1, p) - legendre(i - 1, p) - legendre(j - 1, p)
}

/// The p-part `p^k` of the factorial ratio `(i+j-1)! / ((i-1)!(j-1)!)`.
pub fn nu_p_factorial_ratio(i: u64, j: u64, p: u64) -> u64 {
    p.pow(nu_p_exponent(i, j, p) as u32)
}

/// Outcome of a one-sided nontriviality test: a lower bound on the order of
/// a Samelson product can certify nonvanishing but never vanishing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BottAnswer {
    /// The order is a nonzero multiple of p^k with k >= 1.
    Yes,
    /// The p-part of the bound is 1; nothing follows.
    Inconclusive,
}

/// Nontriviality of `<eps_i, eps_j>` in the unitary family: the order of the
/// product is a nonzero multiple of the p-part of `(i+j-1)!/((i-1)!(j-1)!)`,
/// so a p-part exceeding 1 certifies a nonzero product.
pub fn bott_nonzero_su(i: u64, j: u64, p: u64) -> BottAnswer {
    if nu_p_exponent(i, j, p) >= 1 {
        BottAnswer::Yes
    } else {
        BottAnswer::Inconclusive
    }
}

/// Symplectic variant with doubled indices:
/// `(2i+2j-1)! / ((2i-1)!(2j-1)!)`.
pub fn bott_nonzero_sp(i: u64, j: u64, p: u64) -> BottAnswer {
    if nu_p_exponent(2 * i, 2 * j, p) >= 1 {
        BottAnswer::Yes
    } else {
        BottAnswer::Inconclusive
    }
}

/// Where a nontriviality witness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Bott,
    P1Criterion,
    #[serde(rename = "paper_table")]
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessArgs {
    Pair { i: usize, j: usize },
    Triple { i: usize, t: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nonzero {
    Yes,
    No,
    Inconclusive,
}

/// Index bookkeeping for a (possibly iterated) Samelson product: the
/// projection target `s` and the argument indices, all referring to entries
/// of a [`SphereType`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamelsonWitness {
    pub projection: usize,
    pub args: WitnessArgs,
    pub nonzero: Nonzero,
    pub source: WitnessSource,
}

/// A pairwise nontriviality oracle: given entry indices `(i, j)` of the
/// type, decides whether the projection of `<eps_i, eps_j>` onto the unique
/// degree-compatible factor is nonzero.
pub trait PairOracle {
    fn pair_nonzero(&self, t: &SphereType, i: usize, j: usize) -> BottAnswer;
}

/// Oracle backed by the factorial-ratio bound for the special unitary
/// family of rank `n - 1` (type `(2, ..., n)`).
pub struct SuBottOracle {
    pub n: u64,
    pub p: u64,
}

impl PairOracle for SuBottOracle {
    fn pair_nonzero(&self, t: &SphereType, i: usize, j: usize) -> BottAnswer {
        let (a, b) = (t.half_degrees()[i] as u64, t.half_degrees()[j] as u64);
        if a + b <= self.n {
            return BottAnswer::Inconclusive;
        }
        bott_nonzero_su(a, b, self.p)
    }
}

/// Oracle for the symplectic family of rank `n` (type `(2, 4, ..., 2n)`).
pub struct SpBottOracle {
    pub n: u64,
    pub p: u64,
}

impl PairOracle for SpBottOracle {
    fn pair_nonzero(&self, t: &SphereType, i: usize, j: usize) -> BottAnswer {
        let (a, b) = (t.half_degrees()[i] as u64, t.half_degrees()[j] as u64);
        debug_assert!(a % 2 == 0 && b % 2 == 0);
        if a / 2 + b / 2 <= self.n {
            return BottAnswer::Inconclusive;
        }
        bott_nonzero_sp(a / 2, b / 2, self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleOutcome {
    pub satisfied: bool,
    pub witness: Option<SamelsonWitness>,
}

/// Searches for indices `(s, i, t, j, k)` with `n_s = 2`,
/// `n_i + n_t = p + 1`, `n_j + n_k = n_t + p - 1`, such that the oracle
/// affirms both pairwise products. Such indices make the doubly-iterated
/// commutator nontrivial, forcing nilpotency class at least 3.
pub fn triple_condition(
    t: &SphereType,
    p: u64,
    oracle: &dyn PairOracle,
) -> TripleOutcome {
    let degs = t.half_degrees();
    let p32 = p as u32;
    let Some(s) = degs.iter().position(|&n| n == 2) else {
        return TripleOutcome {
            satisfied: false,
            witness: None,
        };
    };
    for (i, &ni) in degs.iter().enumerate() {
        for (ti, &nt) in degs.iter().enumerate() {
            if ni + nt != p32 + 1 {
                continue;
            }
            if oracle.pair_nonzero(t, i, ti) != BottAnswer::Yes {
                continue;
            }
            for (j, &nj) in degs.iter().enumerate() {
                for (k, &nk) in degs.iter().enumerate() {
                    if nj + nk != nt + p32 - 1 {
                        continue;
                    }
                    if oracle.pair_nonzero(t, j, k) != BottAnswer::Yes {
                        continue;
                    }
                    return TripleOutcome {
                        satisfied: true,
                        witness: Some(SamelsonWitness {
                            projection: s,
                            args: WitnessArgs::Triple { i, t: ti, j, k },
                            nonzero: Nonzero::Yes,
                            source: WitnessSource::Bott,
                        }),
                    };
                }
            }
        }
    }
    TripleOutcome {
        satisfied: false,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homotopy_table() {
        assert_eq!(p_homotopy(2, 7, 5), HomotopyAnswer::CyclicP);
        assert_eq!(p_homotopy(3, 4, 5), HomotopyAnswer::Zero);
        assert_eq!(p_homotopy(2, 14, 5), HomotopyAnswer::Unknown);
        // the two determinate answers never overlap
        for p in [3u64, 5, 7, 11] {
            for i in 1..=(4 * p as u32) {
                let a = p_homotopy(2, i, p);
                assert!(a == HomotopyAnswer::CyclicP || a != HomotopyAnswer::CyclicP);
                if a == HomotopyAnswer::CyclicP {
                    assert_eq!(i, 2 * p as u32 - 3);
                }
            }
        }
    }

    #[test]
    fn factorial_ratio_p_parts() {
        // one factor of 11 in 11!, none below
        assert_eq!(nu_p_factorial_ratio(8, 4, 11), 11);
        // 3!/(1!1!) = 6 is coprime to 5
        assert_eq!(nu_p_factorial_ratio(2, 2, 5), 1);
        assert_eq!(nu_p_factorial_ratio(1, 1, 7), 1);
    }

    #[test]
    fn bott_answers() {
        assert_eq!(bott_nonzero_su(8, 4, 11), BottAnswer::Yes);
        assert_eq!(bott_nonzero_su(8, 6, 11), BottAnswer::Yes);
        assert_eq!(bott_nonzero_su(2, 2, 7), BottAnswer::Inconclusive);
        // nu_7(7!/(5!1!)) = 7
        assert_eq!(bott_nonzero_sp(3, 1, 7), BottAnswer::Yes);
        assert_eq!(bott_nonzero_sp(1, 1, 5), BottAnswer::Inconclusive);
        assert_eq!(bott_nonzero_sp(2, 2, 11), BottAnswer::Inconclusive);
    }

    #[test]
    fn su8_at_11_satisfies_triple_condition() {
        let t = SphereType::new((2..=8).collect()).unwrap();
        let oracle = SuBottOracle { n: 8, p: 11 };
        let out = triple_condition(&t, 11, &oracle);
        assert!(out.satisfied);
        let w = out.witness.unwrap();
        match w.args {
            WitnessArgs::Triple { i, t: ti, j, k } => {
                let d = |x: usize| t.half_degrees()[x];
                assert_eq!(d(i) + d(ti), 12);
                assert_eq!(d(j) + d(k), d(ti) + 10);
            }
            _ => panic!("expected triple witness"),
        }
    }

    #[test]
    fn su6_at_11_fails_triple_condition() {
        let t = SphereType::new((2..=6).collect()).unwrap();
        let oracle = SuBottOracle { n: 6, p: 11 };
        assert!(!triple_condition(&t, 11, &oracle).satisfied);
    }

    #[test]
    fn small_type_with_large_prime_fails() {
        // type (2, n) with p > 2n: n_j + n_k <= 2n < n_t + p - 1
        let t = SphereType::new(vec![2, 5]).unwrap();
        let oracle = SuBottOracle { n: 5, p: 11 };
        assert!(!triple_condition(&t, 11, &oracle).satisfied);
    }
}
