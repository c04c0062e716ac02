//! Property tests: algebraic laws on random inputs, plus the deterministic
//! sweeps the modules promise.

use nilpotency::cohomology::{e7_pi, e7_pi_prime, e8_pi, e8_pi_prime};
use nilpotency::poly::{linear_substitution, GradedPoly, VarContext};
use nilpotency::quotient::RingMap;
use nilpotency::reflection::{
    build_coxeter_h, build_dihedral, fundamental_invariants, molien_dimension, GeneratorSet,
};
use nilpotency::samelson::{
    p_homotopy, triple_condition, BottAnswer, HomotopyAnswer, PairOracle, SphereType,
    SuBottOracle,
};
use nilpotency::symmetric::{
    chern, expand_pc, p1_power_sum, pc_context, pontryagin, power_sum, to_pc_basis,
};
use proptest::prelude::*;

fn poly_strategy(p: u64, nvars: usize, max_exp: u32) -> impl Strategy<Value = GradedPoly> {
    let term = (
        proptest::collection::vec(0..=max_exp, nvars),
        0..(p as i64),
    );
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        GradedPoly::from_terms(p, VarContext::t_vars(nvars), terms)
    })
}

fn invertible_matrix(p: u64, n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    proptest::collection::vec(proptest::collection::vec(0..p, n), n).prop_filter(
        "matrix must be invertible",
        move |rows| {
            nilpotency::matrix::MatrixFp::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| x as i64).collect())
                    .collect(),
                p,
            )
            .inverse()
            .is_some()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn steenrod_is_a_derivation(
        f in poly_strategy(11, 3, 6),
        g in poly_strategy(11, 3, 6),
    ) {
        let lhs = f.mul(&g).unwrap().steenrod_p1().unwrap();
        let rhs = f.steenrod_p1().unwrap().mul(&g).unwrap()
            .add(&f.mul(&g.steenrod_p1().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn steenrod_commutes_with_linear_substitution(
        f in poly_strategy(11, 3, 5),
        m in invertible_matrix(11, 3),
    ) {
        let lhs = linear_substitution(&f, &m).unwrap().steenrod_p1().unwrap();
        let rhs = linear_substitution(&f.steenrod_p1().unwrap(), &m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn to_pc_basis_round_trips(
        exps in proptest::collection::vec((proptest::collection::vec(0u32..3, 4), 1i64..23), 1..5),
    ) {
        // random polynomial in p1, p2, p3, c4 over four variables
        let n = 4usize;
        let p = 23u64;
        let ctx = pc_context(n);
        let f_pc = GradedPoly::from_terms(p, ctx, exps);
        let f_t = expand_pc(&f_pc, n).unwrap();
        let back = to_pc_basis(&f_t).unwrap();
        prop_assert_eq!(expand_pc(&back, n).unwrap(), f_t);
    }
}

fn quotient_laws(map: &RingMap, seed: &mut u64) {
    let src = map.source().clone();
    let p = map.target().p();
    let mut next = || {
        *seed ^= *seed << 13;
        *seed ^= *seed >> 7;
        *seed ^= *seed << 17;
        *seed
    };
    for _ in 0..25 {
        let mut mk = |max_terms: u64| {
            let nterms = 1 + next() % max_terms;
            let terms: Vec<(Vec<u32>, i64)> = (0..nterms)
                .map(|_| {
                    let exps: Vec<u32> =
                        (0..src.arity()).map(|_| (next() % 3) as u32).collect();
                    (exps, (next() % p) as i64)
                })
                .collect();
            GradedPoly::from_terms(p, src.clone(), terms)
        };
        let f = mk(4);
        let g = mk(4);
        // normal form idempotence in the target
        let nf = map.apply(&f).unwrap();
        assert_eq!(map.target().normal_form(&nf).unwrap(), nf);
        // multiplicativity up to normal form
        let lhs = map.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = map
            .target()
            .normal_form(&map.apply(&f).unwrap().mul(&map.apply(&g).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // additivity
        let lhs = map.apply(&f.add(&g).unwrap()).unwrap();
        let rhs = map.apply(&f).unwrap().add(&map.apply(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn ring_maps_are_homomorphisms_in_each_quotient() {
    let mut seed = 0x9e3779b97f4a7c15u64;
    for map in [e7_pi(), e7_pi_prime(), e8_pi(), e8_pi_prime()] {
        quotient_laws(&map, &mut seed);
    }
}

#[test]
fn p1_power_sum_agrees_with_expansion_sweep() {
    for p in [11u64, 23, 31, 37] {
        for n in 1..=8usize {
            for k in 1..=20u32 {
                let fast = p1_power_sum(k, n, p).unwrap();
                let slow = power_sum(k, n, p).steenrod_p1().unwrap();
                assert_eq!(fast, slow, "k={k} n={n} p={p}");
            }
        }
    }
}

#[test]
fn homotopy_table_is_total_and_consistent() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in 2..=12u32 {
            for i in 1..=(4 * p as u32) {
                let a = p_homotopy(n, i, p);
                if a == HomotopyAnswer::CyclicP {
                    assert_eq!(i, 2 * p as u32 - 3);
                    assert_ne!(p_homotopy(n, i, p), HomotopyAnswer::Zero);
                }
            }
        }
    }
}

#[test]
fn triple_condition_is_monotone_in_the_oracle() {
    struct AlwaysYes;
    impl PairOracle for AlwaysYes {
        fn pair_nonzero(&self, _: &SphereType, _: usize, _: usize) -> BottAnswer {
            BottAnswer::Yes
        }
    }
    // strengthening inconclusive answers to yes never turns a satisfied
    // search into an unsatisfied one
    for n in 3..=14u64 {
        let t = SphereType::new((2..=n as u32).collect()).unwrap();
        for p in [5u64, 7, 11, 13, 17, 19] {
            let strict = triple_condition(&t, p, &SuBottOracle { n, p });
            let loose = triple_condition(&t, p, &AlwaysYes);
            if strict.satisfied {
                assert!(loose.satisfied, "SU({n}) at {p}");
            }
        }
    }
}

#[test]
fn reynolds_is_an_invariant_projection() {
    let mut seed = 0xfeedface1234u64;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let groups = vec![
        build_dihedral(4, 5).unwrap(),
        build_dihedral(5, 11).unwrap(),
        build_coxeter_h(3, 11).unwrap(),
    ];
    for g in &groups {
        let p = g.p();
        let ctx = g.t_context();
        for _ in 0..5 {
            let terms: Vec<(Vec<u32>, i64)> = (0..4)
                .map(|_| {
                    let exps: Vec<u32> =
                        (0..g.dimension()).map(|_| (next() % 5) as u32).collect();
                    (exps, (next() % p) as i64)
                })
                .collect();
            let f = GradedPoly::from_terms(p, ctx.clone(), terms);
            let r = g.reynolds(&f).unwrap();
            // idempotent
            assert_eq!(g.reynolds(&r).unwrap(), r);
            // invariant under every element
            for m in g.elements() {
                assert_eq!(linear_substitution(&r, &m.rows_vec()).unwrap(), r);
            }
        }
        // fixes invariants: the quadratic invariant of each group
        let quad = g.reynolds(&GradedPoly::from_terms(
            p,
            ctx.clone(),
            vec![(
                {
                    let mut e = vec![0u32; g.dimension()];
                    e[0] = 1;
                    e[1] = 1;
                    e
                },
                1,
            )],
        ))
        .unwrap();
        if !quad.is_zero() {
            assert_eq!(g.reynolds(&quad).unwrap(), quad);
        }
    }
}

#[test]
fn h3_invariant_dimensions_match_the_degree_series() {
    let g = build_coxeter_h(3, 11).unwrap();
    for d in 1..=12u32 {
        assert_eq!(
            g.invariant_dimension(d) as u64,
            molien_dimension(&[2, 6, 10], d),
            "degree {d}"
        );
    }
}

#[test]
fn h3_top_coefficient_is_stable_under_generator_changes() {
    let g = build_coxeter_h(3, 11).unwrap();
    let p = 11u64;
    let gs = fundamental_invariants(&g, &[2, 6, 10]).unwrap();
    let base = gs.p1_coefficient(0, &[1, 0, 1]);
    assert_ne!(base, 0);
    let y2 = gs.generators()[0].clone();
    let y6 = gs.generators()[1].clone();
    let y10 = gs.generators()[2].clone();
    let mut seed = 0xabcdef0102u64;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for _ in 0..20 {
        let alpha = (next() % p) as i64;
        let beta = (next() % p) as i64;
        let modified = y10
            .add(&y2.pow(5).scale(alpha))
            .unwrap()
            .add(&y2.pow(2).mul(&y6).unwrap().scale(beta))
            .unwrap();
        let gs2 = GeneratorSet::from_generators(
            &g,
            vec![y2.clone(), y6.clone(), modified],
            vec![2, 6, 10],
        )
        .unwrap();
        // the decomposable correction only perturbs other monomials
        assert_eq!(gs2.p1_coefficient(0, &[1, 0, 1]), base, "alpha={alpha} beta={beta}");
    }
}

#[test]
fn closure_orders() {
    for n in [3u32, 5, 7] {
        let p = match n {
            3 => 7,
            5 => 11,
            _ => 29,
        };
        assert_eq!(build_dihedral(n, p).unwrap().order(), 2 * n as usize);
    }
    assert_eq!(build_coxeter_h(3, 11).unwrap().order(), 120);
    assert_eq!(build_coxeter_h(3, 31).unwrap().order(), 120);
    assert_eq!(build_coxeter_h(4, 31).unwrap().order(), 14400);
}

#[test]
fn pc_basis_examples() {
    // c_n^2 is rewritten via p_n, and polynomials in the p_k alone have no
    // odd part
    let p = 23u64;
    let n = 4usize;
    let cn_sq = chern(n as u32, n, p).pow(2);
    let rewritten = to_pc_basis(&cn_sq).unwrap();
    let ctx = pc_context(n);
    assert_eq!(
        rewritten,
        GradedPoly::from_terms(p, ctx.clone(), vec![(vec![0, 0, 0, 2], 1)])
    );
    let even_only = pontryagin(2, n, p).mul(&pontryagin(1, n, p)).unwrap();
    let rewritten = to_pc_basis(&even_only).unwrap();
    for (m, _) in rewritten.terms() {
        assert_eq!(m.exponents()[n - 1] % 2, 0, "no odd c_n part");
    }
}
