//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its runtime. All comparisons are exact; the stated time budgets are
//! asserted.

use nilpotency::decider::{decide, CeEntry, GroupSpec, LieFamily, NilClass, WitnessRecord};
use nilpotency::finite_group::{
    cyclic, dihedral, heisenberg_f3, symmetric4, NilpotencyOutcome,
};
use nilpotency::poly::{GradedPoly, VarContext};
use nilpotency::quotient::QuotientPresentation;
use nilpotency::reflection::{
    build_coxeter_h, build_dihedral, fundamental_invariants, GeneratorSet,
};
use nilpotency::samelson::{bott_nonzero_su, nu_p_factorial_ratio, BottAnswer};
use nilpotency::symmetric::girard_identity_sweep;
use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::{Duration, Instant};

// Criteria run one at a time so that the asserted runtimes are not
// distorted by the test harness running them concurrently.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(criterion: u32, name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion:2} ({name}): pass in {elapsed:?} (budget {budget:?})");
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} >= {budget:?}"
    );
}

#[test]
fn criterion_01_girard_suite() {
    let _serial = serial();
    let t0 = Instant::now();
    for p in [23u64, 37] {
        for n in 1..=8usize {
            assert!(girard_identity_sweep(n, 22, p).unwrap(), "n={n} p={p}");
        }
    }
    report(1, "girard identities", t0, Duration::from_secs(5));
}

#[test]
fn criterion_02_i2_family() {
    let _serial = serial();
    let t0 = Instant::now();
    for n in [4u32, 6, 10, 12, 16, 18, 22, 28] {
        let each = Instant::now();
        let p = n as u64 + 1;
        let group = build_dihedral(n, p).unwrap();
        assert_eq!(group.order(), 2 * n as usize);
        let gs = fundamental_invariants(&group, &[2, n]).unwrap();
        let ctx = group.t_context();
        let x2 = GradedPoly::from_terms(p, ctx.clone(), vec![(vec![1, 1], 1)]);
        let xn = GradedPoly::from_terms(p, ctx, vec![(vec![n, 0], 1), (vec![0, n], 1)]);
        assert_eq!(gs.generators(), &[x2, xn], "invariants for n={n}");
        let expected =
            GradedPoly::from_terms(p, gs.gen_context().clone(), vec![(vec![1, 1], 1)]);
        assert_eq!(gs.p1_expansions()[0], expected, "P^1 x2 for n={n}");
        assert!(
            each.elapsed() < Duration::from_secs(1),
            "I2({n}) exceeded one second"
        );
    }
    report(2, "dihedral family", t0, Duration::from_secs(8));
}

#[test]
fn criterion_03_i2_5_at_11() {
    let _serial = serial();
    let t0 = Instant::now();
    let group = build_dihedral(5, 11).unwrap();
    let gs = fundamental_invariants(&group, &[2, 5]).unwrap();
    let expected = GradedPoly::from_terms(
        11,
        gs.gen_context().clone(),
        vec![(vec![1, 2], 1), (vec![6, 0], -2)],
    );
    assert_eq!(gs.p1_expansions()[0], expected);
    report(3, "I2(5) at p=11", t0, Duration::from_secs(5));
}

#[test]
fn criterion_04_i2_5_at_31() {
    let _serial = serial();
    let t0 = Instant::now();
    let group = build_dihedral(5, 31).unwrap();
    let gs = fundamental_invariants(&group, &[2, 5]).unwrap();
    let q = QuotientPresentation::free(31, gs.gen_context().clone()).with_bound("x2", 2);
    let x2x56 = GradedPoly::from_terms(31, gs.gen_context().clone(), vec![(vec![1, 6], 1)]);
    assert_eq!(
        q.normal_form(&gs.p1_expansions()[0]).unwrap(),
        q.normal_form(&x2x56).unwrap()
    );
    let five_x57 = GradedPoly::from_terms(31, gs.gen_context().clone(), vec![(vec![0, 7], 5)]);
    assert_eq!(
        q.normal_form(&gs.p1_expansions()[1]).unwrap(),
        q.normal_form(&five_x57).unwrap()
    );
    report(4, "I2(5) at p=31", t0, Duration::from_secs(5));
}

#[test]
fn criterion_05_h3_at_11() {
    let _serial = serial();
    let t0 = Instant::now();
    let group = build_coxeter_h(3, 11).unwrap();
    assert_eq!(group.order(), 120);
    let gs = fundamental_invariants(&group, &[2, 6, 10]).unwrap();
    assert_eq!(gs.half_degrees(), &[2, 6, 10]);
    // the y2*y10 coefficient of P^1 y2
    let a = gs.p1_coefficient(0, &[1, 0, 1]);
    assert_ne!(a, 0, "y2*y10 coefficient of P^1 y2 must be nonzero");
    let verdict = gs.check_condition().unwrap();
    assert!(verdict.satisfied);
    report(5, "H3 at p=11", t0, Duration::from_secs(30));
}

fn h4_generators() -> &'static GeneratorSet {
    static H4: OnceLock<GeneratorSet> = OnceLock::new();
    H4.get_or_init(|| {
        let group = build_coxeter_h(4, 31).expect("H4 closure");
        assert_eq!(group.order(), 14400);
        fundamental_invariants(&group, &[2, 12, 20, 30]).expect("H4 invariants")
    })
}

#[test]
fn criterion_06_h4_at_31() {
    let _serial = serial();
    let t0 = Instant::now();
    let gs = h4_generators();
    assert_eq!(gs.order(), 14400);
    assert_eq!(gs.half_degrees(), &[2, 12, 20, 30]);
    let b = gs.p1_coefficient(0, &[1, 0, 0, 1]); // z2 z30 in P^1 z2
    let c = gs.p1_coefficient(0, &[0, 1, 1, 0]); // z12 z20 in P^1 z2
    assert!(b != 0 || c != 0, "b and c cannot both vanish");
    if b == 0 {
        let d = gs.p1_coefficient(2, &[0, 0, 1, 1]); // z20 z30 in P^1 z20
        assert_ne!(d, 0, "with b = 0 the z20 z30 coefficient must be nonzero");
    }
    let verdict = gs.check_condition().unwrap();
    assert!(verdict.satisfied);
    report(6, "H4 at p=31", t0, Duration::from_secs(900));
}

#[test]
fn criterion_07_e7_verification() {
    let _serial = serial();
    let t0 = Instant::now();
    let reportv = nilpotency::cohomology::verify_e7().unwrap();
    for c in &reportv.checks {
        assert!(
            c.pass,
            "{}: expected {}, computed {}",
            c.name, c.expected, c.computed
        );
    }
    // the reference values are present under their names
    for name in [
        "e7.pi.P1-p1",
        "e7.pi'.P1-p1",
        "e7.pi'.P1-s3",
        "e7.pi'.P1-p3",
        "e7.pi'.P1-y6",
        "e7.pi.kill.y14-y10",
    ] {
        assert!(
            reportv.checks.iter().any(|c| c.name == name && c.pass),
            "missing check {name}"
        );
    }
    report(7, "E7 restriction suite", t0, Duration::from_secs(60));
}

#[test]
fn criterion_08_e8_verification() {
    let _serial = serial();
    let t0 = Instant::now();
    for reportv in [
        nilpotency::cohomology::verify_e8_pi().unwrap(),
        nilpotency::cohomology::verify_e8_phi().unwrap(),
    ] {
        for c in &reportv.checks {
            assert!(
                c.pass,
                "{}: expected {}, computed {}",
                c.name, c.expected, c.computed
            );
        }
    }
    let pi = nilpotency::cohomology::verify_e8_pi().unwrap();
    for name in [
        "e8.pi.P1-p1",
        "e8.pi'.P1-s2",
        "e8.pi'.P1-s4",
        "e8.pi'.P1-c8",
        "e8.pi'.P1-p2",
        "e8.pi'.P1-p4",
        "e8.pi'.P1-z8",
    ] {
        assert!(
            pi.checks.iter().any(|c| c.name == name && c.pass),
            "missing check {name}"
        );
    }
    let phi = nilpotency::cohomology::verify_e8_phi().unwrap();
    for name in [
        "e8.phi.z8",
        "e8.phi.z12",
        "e8.phi.z14",
        "e8.phi.product.p2^2-p3",
        "e8.phi.product.p2-p5",
        "e8.phi.product.p3-c8",
        "e8.phi.product.p3-p4",
    ] {
        assert!(
            phi.checks.iter().any(|c| c.name == name && c.pass),
            "missing check {name}"
        );
    }
    report(8, "E8 restriction suite", t0, Duration::from_secs(300));
}

/// Direct factorization oracle: the integer ratio is
/// `(i+j-1) * C(i+j-2, i-1)`; divide out p explicitly.
fn p_part_by_factorization(i: u64, j: u64, p: u64) -> u64 {
    let mut binom: u128 = 1;
    for k in 0..(i - 1) {
        binom = binom * (i + j - 2 - k) as u128 / (k + 1) as u128;
    }
    let mut ratio = binom * (i + j - 1) as u128;
    let mut part = 1u64;
    while ratio % p as u128 == 0 {
        ratio /= p as u128;
        part *= p;
    }
    part
}

#[test]
fn criterion_09_bott_suite() {
    let _serial = serial();
    let t0 = Instant::now();
    let primes: Vec<u64> = (2..=43).filter(|&p| nilpotency::fp::is_prime(p)).collect();
    for i in 1..=39u64 {
        for j in 1..=(40 - i) {
            for &p in &primes {
                assert_eq!(
                    nu_p_factorial_ratio(i, j, p),
                    p_part_by_factorization(i, j, p),
                    "i={i} j={j} p={p}"
                );
            }
        }
    }
    // witness pairs: <eps_n, eps_{p-n+1}> and <eps_n, eps_{2p-2n}>
    for n in 2..=20u64 {
        for p in &primes {
            let p = *p;
            if !(n < p && 2 * p <= 3 * n) {
                continue;
            }
            assert_eq!(
                bott_nonzero_su(n, p - n + 1, p),
                BottAnswer::Yes,
                "first pair for n={n} p={p}"
            );
            assert_eq!(
                bott_nonzero_su(n, 2 * p - 2 * n, p),
                BottAnswer::Yes,
                "second pair for n={n} p={p}"
            );
        }
    }
    report(9, "factorial-ratio valuations", t0, Duration::from_secs(10));
}

#[test]
fn criterion_10_decider_regression() {
    let _serial = serial();
    let t0 = Instant::now();
    let lie = |family, parameter| GroupSpec::Lie { family, parameter };
    let exotic = |entry| GroupSpec::Exotic { entry };
    let cases: Vec<(GroupSpec, u64, NilClass)> = vec![
        (lie(LieFamily::SU, 4), 11, NilClass::Exact(1)),
        (lie(LieFamily::SU, 6), 11, NilClass::Exact(2)),
        (lie(LieFamily::SU, 8), 11, NilClass::Exact(3)),
        (lie(LieFamily::SU, 7), 7, NilClass::Exact(3)),
        (lie(LieFamily::SU, 2), 2, NilClass::Exact(2)),
        (lie(LieFamily::F4, 0), 17, NilClass::Exact(2)),
        (lie(LieFamily::E6, 0), 17, NilClass::Exact(2)),
        (lie(LieFamily::E8, 0), 41, NilClass::Exact(2)),
        (lie(LieFamily::E8, 0), 43, NilClass::Exact(2)),
        (lie(LieFamily::E7, 0), 23, NilClass::Exact(3)),
        (lie(LieFamily::E8, 0), 37, NilClass::Exact(3)),
        (lie(LieFamily::G2, 0), 7, NilClass::Exact(3)),
        (lie(LieFamily::F4, 0), 13, NilClass::Exact(3)),
        (lie(LieFamily::E6, 0), 13, NilClass::Exact(3)),
        (lie(LieFamily::E7, 0), 19, NilClass::Exact(3)),
        (lie(LieFamily::E8, 0), 31, NilClass::Exact(3)),
        (lie(LieFamily::Spin, 11), 11, NilClass::Exact(3)),
        (exotic(CeEntry::TwoB(12)), 13, NilClass::Exact(3)),
        (exotic(CeEntry::Entry23), 11, NilClass::Exact(3)),
        (exotic(CeEntry::Entry30), 31, NilClass::Exact(3)),
        (exotic(CeEntry::Entry23), 13, NilClass::Exact(2)),
        (exotic(CeEntry::Entry23), 23, NilClass::Exact(1)),
    ];
    for (spec, p, expected) in &cases {
        let verdict = decide(spec, *p).unwrap();
        assert_eq!(verdict.class, *expected, "{spec} at {p}");
        assert!(!verdict.branch.is_empty(), "{spec} at {p} has no citation");
    }
    // the Bott-witnessed case carries an explicit witness
    let v = decide(&lie(LieFamily::SU, 8), 11).unwrap();
    assert!(matches!(
        v.witnesses.first(),
        Some(WitnessRecord::Samelson(_))
    ));
    assert_eq!(decide(&lie(LieFamily::E7, 0), 23).unwrap().branch, "§3.2.1");
    assert_eq!(decide(&lie(LieFamily::E8, 0), 37).unwrap().branch, "§3.2.2");
    report(10, "decider regression", t0, Duration::from_secs(1));
}

#[test]
fn criterion_11_commutator_tests() {
    let _serial = serial();
    let t0 = Instant::now();
    let check = |name: &str, handle: &nilpotency::finite_group::FiniteGroupHandle,
                 expected: NilpotencyOutcome| {
        let by_gen = handle.nilpotency_class_generators(6);
        let by_all = handle.nilpotency_class_all_tuples(6);
        assert_eq!(by_gen, by_all, "{name}: methods disagree");
        assert_eq!(by_all, expected, "{name}");
    };
    check("cyclic C6", &cyclic(6, 7), NilpotencyOutcome::Class(1));
    check(
        "Klein four-group",
        &dihedral(2, 3).unwrap(),
        NilpotencyOutcome::Class(1),
    );
    check(
        "dihedral order 8",
        &dihedral(4, 5).unwrap(),
        NilpotencyOutcome::Class(2),
    );
    check(
        "dihedral order 16",
        &dihedral(8, 17).unwrap(),
        NilpotencyOutcome::Class(3),
    );
    check("Heisenberg mod 3", &heisenberg_f3(), NilpotencyOutcome::Class(2));
    check(
        "symmetric group S4",
        &symmetric4(5),
        NilpotencyOutcome::NotNilpotentWithin(6),
    );
    report(11, "finite-group commutator tests", t0, Duration::from_secs(30));
}

#[test]
fn exotic_table_agrees_with_the_invariant_criterion() {
    let _serial = serial();
    // table class-3 entries match check_condition on the invariant rings
    for n in [4u32, 12] {
        let p = n as u64 + 1;
        let gs = fundamental_invariants(&build_dihedral(n, p).unwrap(), &[2, n]).unwrap();
        assert!(gs.check_condition().unwrap().satisfied, "2b({n}) at {p}");
        let table = decide(&GroupSpec::Exotic { entry: CeEntry::TwoB(n) }, p).unwrap();
        assert_eq!(table.class, NilClass::Exact(3));
    }
    let h3 = fundamental_invariants(&build_coxeter_h(3, 11).unwrap(), &[2, 6, 10]).unwrap();
    assert!(h3.check_condition().unwrap().satisfied);
    assert_eq!(
        decide(&GroupSpec::Exotic { entry: CeEntry::Entry23 }, 11).unwrap().class,
        NilClass::Exact(3)
    );
    let h4 = h4_generators();
    assert!(h4.check_condition().unwrap().satisfied);
    assert_eq!(
        decide(&GroupSpec::Exotic { entry: CeEntry::Entry30 }, 31).unwrap().class,
        NilClass::Exact(3)
    );
    println!("exotic-consistency: pass");
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

fn random_poly(rng: &mut XorShift, p: u64, nvars: usize, max_exp: u32) -> GradedPoly {
    let ctx = VarContext::t_vars(nvars);
    let nterms = 1 + (rng.next() % 6) as usize;
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let exps: Vec<u32> = (0..nvars).map(|_| (rng.next() % (max_exp as u64 + 1)) as u32).collect();
        let coeff = (rng.next() % p) as i64;
        terms.push((exps, coeff));
    }
    GradedPoly::from_terms(p, ctx, terms)
}

#[test]
fn criterion_12_steenrod_properties() {
    let _serial = serial();
    let t0 = Instant::now();
    let p = 11u64;
    let mut rng = XorShift(0x5eed5eed);
    // derivation rule on 200 random pairs
    for _ in 0..200 {
        let f = random_poly(&mut rng, p, 3, 6);
        let g = random_poly(&mut rng, p, 3, 6);
        let lhs = f.mul(&g).unwrap().steenrod_p1().unwrap();
        let rhs = f
            .steenrod_p1()
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&g.steenrod_p1().unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "derivation rule");
    }
    // linear-substitution equivariance on 200 random instances
    for _ in 0..200 {
        let f = random_poly(&mut rng, p, 3, 5);
        let m = loop {
            let rows: Vec<Vec<u64>> = (0..3)
                .map(|_| (0..3).map(|_| rng.next() % p).collect())
                .collect();
            let mat = nilpotency::matrix::MatrixFp::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| x as i64).collect())
                    .collect(),
                p,
            );
            if mat.inverse().is_some() {
                break rows;
            }
        };
        let lhs = nilpotency::poly::linear_substitution(&f, &m)
            .unwrap()
            .steenrod_p1()
            .unwrap();
        let rhs =
            nilpotency::poly::linear_substitution(&f.steenrod_p1().unwrap(), &m).unwrap();
        assert_eq!(lhs, rhs, "equivariance");
    }
    // degree shift on homogeneous inputs
    for _ in 0..200 {
        let raw = random_poly(&mut rng, p, 3, 6);
        let Some((m, c)) = raw.terms().next().map(|(m, c)| (m.clone(), c)) else {
            continue;
        };
        let f = GradedPoly::from_terms(
            p,
            raw.context().clone(),
            vec![(m.exponents().to_vec(), c as i64)],
        );
        let shifted = f.steenrod_p1().unwrap();
        if !shifted.is_zero() {
            assert_eq!(
                shifted.homogeneous_degree(),
                Some(f.homogeneous_degree().unwrap() + 2 * (p as u32 - 1)),
                "degree shift"
            );
        }
    }
    report(12, "Steenrod properties", t0, Duration::from_secs(30));
}
