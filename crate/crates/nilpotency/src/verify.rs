//! Named regression checks against pinned reference values, grouped into suites.
//!
//! Each check name maps to one reference identity; `list` enumerates the
//! names with their citations without running anything, and `run` produces
//! a [`VerifyReport`] with exact expected/computed pairs.

use crate::cohomology::{verify_e7, verify_e8_phi, verify_e8_pi, VerifyReport};
use crate::poly::GradedPoly;
use crate::quotient::QuotientPresentation;
use crate::reflection::{build_dihedral, fundamental_invariants};
use crate::symmetric::{girard_expand, girard_identity_sweep, p_context};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Girard,
    I2,
    E7,
    E8,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "girard" => Ok(Suite::Girard),
            "i2" => Ok(Suite::I2),
            "e7" => Ok(Suite::E7),
            "e8" => Ok(Suite::E8),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other}; expected girard|i2|e7|e8|all")),
        }
    }
}

/// The dihedral parameters with `n + 1` prime that the family suite covers.
pub const I2_FAMILY: [u32; 8] = [4, 6, 10, 12, 16, 18, 22, 28];

/// Check names and citations, without running anything.
pub fn list(suite: Suite) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let girard_list = || {
        let mut v = vec![
            ("girard.s1".to_string(), "Eq. (Girard), k = 1".to_string()),
            ("girard.s2".to_string(), "§3.2.2, s2 = p1^2 - 2 p2".to_string()),
            (
                "girard.s3".to_string(),
                "§3.2.1, s3 = p1^3 - 3 p1 p2 + 3 p3".to_string(),
            ),
            (
                "girard.s4".to_string(),
                "§3.2.2, s4 = p1^4 - 4 p1^2 p2 + 4 p1 p3 + 2 p2^2 - 4 p4".to_string(),
            ),
        ];
        for p in [23u64, 37] {
            v.push((
                format!("girard.identity-sweep.p{p}"),
                "Eq. (Girard), n <= 8, k <= 22".to_string(),
            ));
        }
        v
    };
    let i2_list = || {
        let mut v: Vec<(String, String)> = I2_FAMILY
            .iter()
            .flat_map(|n| {
                [
                    (
                        format!("i2.{n}.invariants"),
                        "§4.1, F_p[t1 t2, t1^n + t2^n]".to_string(),
                    ),
                    (
                        format!("i2.{n}.P1-x2"),
                        "Eq. (I_2(n)-1), P^1 x2 = x2 xn".to_string(),
                    ),
                ]
            })
            .collect();
        v.push((
            "i2.5-at-11.P1-x2".to_string(),
            "Eq. (I_2(n)-2), P^1 x2 = x2 x5^2 - 2 x2^6".to_string(),
        ));
        v.push((
            "i2.5-at-31.P1-x2-mod-x2sq".to_string(),
            "Eq. (I_2(n)-3), P^1 x2 = x2 x5^6 mod (x2^2)".to_string(),
        ));
        v.push((
            "i2.5-at-31.P1-x5-mod-x2sq".to_string(),
            "Eq. (I_2(n)-3), P^1 x5 = 5 x5^7 mod (x2^2)".to_string(),
        ));
        v
    };
    match suite {
        Suite::Girard => out.extend(girard_list()),
        Suite::I2 => out.extend(i2_list()),
        Suite::E7 => out.extend(
            verify_e7()
                .map(|r| r.checks.into_iter().map(|c| (c.name, c.citation)).collect::<Vec<_>>())
                .unwrap_or_default(),
        ),
        Suite::E8 => {
            for r in [verify_e8_pi(), verify_e8_phi()] {
                out.extend(
                    r.map(|r| {
                        r.checks
                            .into_iter()
                            .map(|c| (c.name, c.citation))
                            .collect::<Vec<_>>()
                    })
                    .unwrap_or_default(),
                );
            }
        }
        Suite::All => {
            for s in [Suite::Girard, Suite::I2, Suite::E7, Suite::E8] {
                out.extend(list(s));
            }
        }
    }
    out
}

fn run_girard() -> VerifyReport {
    let mut report = VerifyReport::new("girard");
    let p = 23;
    let n = 5;
    let ctx = p_context(n);
    let pv = |i: usize| GradedPoly::var(i, p, ctx.clone());
    let displays: [(&str, &str, GradedPoly); 4] = [
        ("girard.s1", "Eq. (Girard), k = 1", pv(0)),
        (
            "girard.s2",
            "§3.2.2, s2 = p1^2 - 2 p2",
            pv(0).pow(2).sub(&pv(1).scale(2)).unwrap(),
        ),
        (
            "girard.s3",
            "§3.2.1, s3 = p1^3 - 3 p1 p2 + 3 p3",
            pv(0)
                .pow(3)
                .sub(&pv(0).mul(&pv(1)).unwrap().scale(3))
                .unwrap()
                .add(&pv(2).scale(3))
                .unwrap(),
        ),
        (
            "girard.s4",
            "§3.2.2, s4 = p1^4 - 4 p1^2 p2 + 4 p1 p3 + 2 p2^2 - 4 p4",
            pv(0)
                .pow(4)
                .sub(&pv(0).pow(2).mul(&pv(1)).unwrap().scale(4))
                .unwrap()
                .add(&pv(0).mul(&pv(2)).unwrap().scale(4))
                .unwrap()
                .add(&pv(1).pow(2).scale(2))
                .unwrap()
                .sub(&pv(3).scale(4))
                .unwrap(),
        ),
    ];
    for (k, (name, citation, expected)) in displays.into_iter().enumerate() {
        let computed = girard_expand(k as u32 + 1, n, p).unwrap();
        report.push(name, citation, &expected, &computed);
    }
    for p in [23u64, 37] {
        let mut ok = true;
        for n in 1..=8usize {
            ok &= girard_identity_sweep(n, 22, p).unwrap();
        }
        report.push_claim(
            &format!("girard.identity-sweep.p{p}"),
            "Eq. (Girard), n <= 8, k <= 22",
            "expansion at p_i = e_i(u) equals the power sum, exactly",
            ok,
        );
    }
    report
}

fn run_i2() -> VerifyReport {
    let mut report = VerifyReport::new("i2");
    for &n in &I2_FAMILY {
        let p = n as u64 + 1;
        let group = build_dihedral(n, p).unwrap();
        let gs = fundamental_invariants(&group, &[2, n]).unwrap();
        let t_ctx = group.t_context();
        let x2 = GradedPoly::from_terms(p, t_ctx.clone(), vec![(vec![1, 1], 1)]);
        let xn = GradedPoly::from_terms(
            p,
            t_ctx,
            vec![(vec![n, 0], 1), (vec![0, n], 1)],
        );
        report.push_claim(
            &format!("i2.{n}.invariants"),
            "§4.1, F_p[t1 t2, t1^n + t2^n]",
            "fundamental invariants are exactly t1 t2 and t1^n + t2^n",
            gs.generators() == [x2, xn],
        );
        let expected = GradedPoly::from_terms(p, gs.gen_context().clone(), vec![(vec![1, 1], 1)]);
        report.push(
            &format!("i2.{n}.P1-x2"),
            "Eq. (I_2(n)-1), P^1 x2 = x2 xn",
            &expected,
            &gs.p1_expansions()[0],
        );
    }
    // I2(5) at p = 11, exact
    {
        let p = 11;
        let group = build_dihedral(5, p).unwrap();
        let gs = fundamental_invariants(&group, &[2, 5]).unwrap();
        let expected = GradedPoly::from_terms(
            p,
            gs.gen_context().clone(),
            vec![(vec![1, 2], 1), (vec![6, 0], -2)],
        );
        report.push(
            "i2.5-at-11.P1-x2",
            "Eq. (I_2(n)-2), P^1 x2 = x2 x5^2 - 2 x2^6",
            &expected,
            &gs.p1_expansions()[0],
        );
    }
    // I2(5) at p = 31, modulo (x2^2)
    {
        let p = 31;
        let group = build_dihedral(5, p).unwrap();
        let gs = fundamental_invariants(&group, &[2, 5]).unwrap();
        let q = QuotientPresentation::free(p, gs.gen_context().clone()).with_bound("x2", 2);
        let x2x56 = GradedPoly::from_terms(p, gs.gen_context().clone(), vec![(vec![1, 6], 1)]);
        report.push(
            "i2.5-at-31.P1-x2-mod-x2sq",
            "Eq. (I_2(n)-3), P^1 x2 = x2 x5^6 mod (x2^2)",
            &q.normal_form(&x2x56).unwrap(),
            &q.normal_form(&gs.p1_expansions()[0]).unwrap(),
        );
        let five_x57 = GradedPoly::from_terms(p, gs.gen_context().clone(), vec![(vec![0, 7], 5)]);
        report.push(
            "i2.5-at-31.P1-x5-mod-x2sq",
            "Eq. (I_2(n)-3), P^1 x5 = 5 x5^7 mod (x2^2)",
            &q.normal_form(&five_x57).unwrap(),
            &q.normal_form(&gs.p1_expansions()[1]).unwrap(),
        );
    }
    report
}

/// Runs a suite; the report carries one entry per check.
pub fn run(suite: Suite) -> VerifyReport {
    match suite {
        Suite::Girard => run_girard(),
        Suite::I2 => run_i2(),
        Suite::E7 => verify_e7().expect("e7 suite construction"),
        Suite::E8 => {
            let mut report = verify_e8_pi().expect("e8 pi suite construction");
            report.merge(verify_e8_phi().expect("e8 phi suite construction"));
            report.suite = "e8".into();
            report
        }
        Suite::All => {
            let mut report = VerifyReport::new("all");
            for s in [Suite::Girard, Suite::I2, Suite::E7, Suite::E8] {
                report.merge(run(s));
            }
            report
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_matches_run() {
        for suite in [Suite::Girard, Suite::I2, Suite::E7, Suite::E8] {
            let listed: Vec<String> = list(suite).into_iter().map(|(n, _)| n).collect();
            let ran: Vec<String> = run(suite).checks.into_iter().map(|c| c.name).collect();
            assert_eq!(listed, ran);
        }
    }

    #[test]
    fn girard_suite_is_green() {
        let report = run_girard();
        assert!(report.pass(), "{:?}", report.checks.iter().find(|c| !c.pass));
    }

    #[test]
    fn i2_suite_is_green() {
        let report = run_i2();
        assert!(report.pass(), "{:?}", report.checks.iter().find(|c| !c.pass));
    }
}
