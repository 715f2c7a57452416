use logfol::cohomology::{
    cohomology_snc_curve, column_cohomology, hypercohomology_all, les_terms, CechLeafData, GradedBundleP1,
    SNCCurveBundle,
};
use logfol::foliation::{restrict_to_components, unit_quotient};
use logfol::monoid::lattice_contains;
use logfol::semistability::{nabla, T1Section};
use logfol::{
    in_relative_tangent, pushout_membership, restrict_foliation, vanishing_divisor, Decision, FGMonoid, Field,
    FoliationGerm, GermContext, Jet, LogDerivation, LogOneForm, Matrix, MonoidConfig, Poly, Rat, SurfaceForm,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{random_field, random_jet, random_unit, random_vec};

fn ctx32() -> GermContext {
    GermContext::normal_crossing(3, 2, 5).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_monoid() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..=3, 2), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saturation_is_idempotent(gens in small_monoid()) {
        let cfg = MonoidConfig { box_bound: 30, search_radius: 30, ..MonoidConfig::default() };
        let m = FGMonoid::new(2, gens).unwrap();
        let once = m.saturate(&cfg).unwrap().monoid;
        let twice = once.saturate(&cfg).unwrap().monoid;
        prop_assert!(once.same_monoid(&twice, &cfg));
    }

    #[test]
    fn group_saturation_keeps_the_group(gens in small_monoid()) {
        let cfg = MonoidConfig { box_bound: 30, search_radius: 30, ..MonoidConfig::default() }.in_group();
        let m = FGMonoid::new(2, gens).unwrap();
        let sat = m.saturate(&cfg).unwrap().monoid;
        prop_assert_eq!(sat.grothendieck_group(), m.grothendieck_group());
    }

    #[test]
    fn ambient_saturation_saturates_the_group(gens in small_monoid()) {
        let cfg = MonoidConfig { box_bound: 30, search_radius: 30, ..MonoidConfig::default() };
        let m = FGMonoid::new(2, gens).unwrap();
        let sat = m.saturate(&cfg).unwrap().monoid;
        let base = m.grothendieck_group();
        for g in m.generators() {
            prop_assert!(sat.group_contains(g));
        }
        for b in sat.grothendieck_group() {
            let hit = (1..=36).any(|k| {
                let kb: Vec<i64> = b.iter().map(|x| k * x).collect();
                lattice_contains(&base, &kb)
            });
            prop_assert!(hit, "{:?} has no multiple in the group", b);
        }
    }

    #[test]
    fn saturation_witnesses_check_out(gens in small_monoid()) {
        let cfg = MonoidConfig { box_bound: 30, search_radius: 30, ..MonoidConfig::default() };
        let m = FGMonoid::new(2, gens).unwrap();
        let sat = m.saturate(&cfg).unwrap();
        for w in &sat.witnesses {
            prop_assert!(w.multiplier >= 1 && w.multiplier <= cfg.box_bound);
            prop_assert!(w.coefficients.iter().all(|&c| c >= 0));
            for t in 0..2 {
                let lhs = w.multiplier * w.point[t];
                let rhs: i64 = w.coefficients.iter().zip(m.generators()).map(|(c, g)| c * g[t]).sum();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jet_ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        let (a, b, d) = (random_jet(c, &mut r, 3), random_jet(c, &mut r, 3), random_jet(c, &mut r, 3));
        prop_assert!((&(&a * &b) * &d).agrees_with(&(&a * &(&b * &d))));
        prop_assert!((&a * &(&b + &d)).agrees_with(&(&(&a * &b) + &(&a * &d))));
        prop_assert!((&a * &b).agrees_with(&(&b * &a)));
        prop_assert!((&a + &b).agrees_with(&(&b + &a)));
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_unit(ctx32(), &mut r);
        let inv = u.invert();
        let one = Jet::one(ctx32());
        prop_assert!((u.jet() * inv.jet()).agrees_with(&one));
        prop_assert!((inv.jet() * u.jet()).agrees_with(&one));
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut raw = Poly::zero(3);
        for _ in 0..8 {
            let e: Vec<u32> = (0..3).map(|_| r.gen_range(0..=3)).collect();
            raw.add_term(e, Rat::from_i64(r.gen_range(-3..=3)));
        }
        let once = Jet::normal_form(&raw, ctx32()).unwrap();
        let mut again = Poly::zero(3);
        for (e, c) in once.terms() {
            again.add_term(e.clone(), c.clone());
        }
        prop_assert_eq!(Jet::normal_form(&again, ctx32()).unwrap(), once);
    }

    #[test]
    fn bracket_is_alternating(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = random_field(ctx32(), &mut r);
        let w = random_field(ctx32(), &mut r);
        prop_assert!(v.lie_bracket(&v).unwrap().is_zero());
        let vw = v.lie_bracket(&w).unwrap();
        let wv = w.lie_bracket(&v).unwrap();
        prop_assert!(vw.try_add(&wv).unwrap().is_zero());
    }

    #[test]
    fn jacobi_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        let (a, b, d) = (random_field(c, &mut r), random_field(c, &mut r), random_field(c, &mut r));
        let t1 = a.lie_bracket(&b).unwrap().lie_bracket(&d).unwrap();
        let t2 = b.lie_bracket(&d).unwrap().lie_bracket(&a).unwrap();
        let t3 = d.lie_bracket(&a).unwrap().lie_bracket(&b).unwrap();
        let s = t1.try_add(&t2).unwrap().try_add(&t3).unwrap();
        prop_assert!(s.precision() >= c.order() as i32 - 2);
        prop_assert!(s.is_zero());
    }

    #[test]
    fn relative_tangent_is_a_subalgebra(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        let u = random_unit(c, &mut r);
        let tangent = |r: &mut ChaCha8Rng| -> LogDerivation<Rat> {
            // solve b1 (x1 d1 u - u) = -b2 (x2 d2 u - u) - a dz u for b1
            let b2 = random_jet(c, r, 2);
            let a = random_jet(c, r, 2);
            let uj = u.jet();
            let e1 = &uj.euler(0) - uj;
            let e2 = &uj.euler(1) - uj;
            let rhs = &(&b2 * &e2) + &(&a * &uj.partial(2).unwrap());
            let inv = logfol::UnitJet::new(e1).unwrap().invert();
            let b1 = (&rhs * inv.jet()).neg();
            LogDerivation::new(c, vec![b1, b2], vec![a]).unwrap()
        };
        let (v, w) = (tangent(&mut r), tangent(&mut r));
        prop_assert!(in_relative_tangent(&v, &u).unwrap().holds);
        prop_assert!(in_relative_tangent(&w, &u).unwrap().holds);
        prop_assert!(in_relative_tangent(&v.lie_bracket(&w).unwrap(), &u).unwrap().holds);
    }

    #[test]
    fn contraction_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        let omega = LogOneForm::new(
            c,
            vec![random_jet(c, &mut r, 2), random_jet(c, &mut r, 2)],
            vec![random_jet(c, &mut r, 2)],
        )
        .unwrap();
        let (v, w, f) = (random_field(c, &mut r), random_field(c, &mut r), random_jet(c, &mut r, 2));
        let lhs = omega.contract(&v.mul_function(&f).unwrap().try_add(&w).unwrap()).unwrap();
        let rhs = &(&f * &omega.contract(&v).unwrap()) + &omega.contract(&w).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn restriction_commutes_with_bracket(seed in any::<u64>(), k in 0usize..2) {
        let mut r = rng(seed);
        let c = ctx32();
        let (v, w) = (random_field(c, &mut r), random_field(c, &mut r));
        let lhs = v.lie_bracket(&w).unwrap().restrict(k).unwrap();
        let rhs = v.restrict(k).unwrap().lie_bracket(&w.restrict(k).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn nabla_is_a_connection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        let v = random_field(c, &mut r);
        let (f, h) = (random_jet(c, &mut r, 2), random_jet(c, &mut r, 2));
        let g = T1Section::new(random_jet(c, &mut r, 2)).unwrap();
        let lhs = nabla(&v.mul_function(&f).unwrap(), &g).unwrap();
        prop_assert!(lhs.agrees_with(&nabla(&v, &g).unwrap().mul_function(&f)));
        let lhs = nabla(&v, &g.mul_function(&h)).unwrap();
        let rhs = g.mul_function(&v.apply(&h).unwrap()).add(&nabla(&v, &g).unwrap().mul_function(&h));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn nabla_has_no_curvature(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        let (v, w) = (random_field(c, &mut r), random_field(c, &mut r));
        let g = T1Section::new(random_jet(c, &mut r, 3)).unwrap();
        let vw = nabla(&v, &nabla(&w, &g).unwrap()).unwrap();
        let wv = nabla(&w, &nabla(&v, &g).unwrap()).unwrap();
        let comm = vw.add(&T1Section::new(wv.jet().neg()).unwrap());
        prop_assert!(comm.agrees_with(&nabla(&v.lie_bracket(&w).unwrap(), &g).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pushout_is_closed_under_brackets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx32();
        // a nonsingular generator: the d/dz coefficient is a unit
        let a = random_jet(c, &mut r, 2);
        let a = &(&a - &Jet::constant(c, a.constant_term())) + &Jet::one(c);
        let v = LogDerivation::new(c, vec![random_jet(c, &mut r, 2), random_jet(c, &mut r, 2)], vec![a]).unwrap();
        let f = FoliationGerm::new(vec![v.clone()], 1).unwrap();
        let comps: Vec<FoliationGerm<Rat>> = (1..=2).map(|i| restrict_foliation(&f, i).unwrap().foliation).collect();
        let fv = v.mul_function(&random_jet(c, &mut r, 2)).unwrap();
        let gv = v.mul_function(&random_jet(c, &mut r, 2)).unwrap();
        for field in [&fv, &gv] {
            let rep = pushout_membership(&restrict_to_components(field).unwrap(), &comps).unwrap();
            prop_assert_eq!(rep.decision, Decision::Holds);
        }
        let bracket = fv.lie_bracket(&gv).unwrap();
        let rep = pushout_membership(&restrict_to_components(&bracket).unwrap(), &comps).unwrap();
        prop_assert_eq!(rep.decision, Decision::Holds);
    }

    #[test]
    fn common_generator_iff_equal_divisors(k1 in 0u32..4, k2 in 0u32..4, c1 in 1i64..4, c2 in -3i64..4) {
        // A_i(0, z) = z^k_i (c + c' z) on each side of the common curve {y = 0}
        let s = GermContext::smooth(2, 0, 6).unwrap();
        let side = |k: u32, c: i64, c2: i64| -> SurfaceForm<Rat> {
            let a = Jet::from_terms(s, [(vec![0, k], Rat::from_i64(c)), (vec![0, k + 1], Rat::from_i64(c2))]);
            let b = Jet::from_terms(s, [(vec![1, 0], Rat::from_i64(1))]);
            SurfaceForm::new(a, b).unwrap()
        };
        let (w1, w2) = (side(k1, c1, c2), side(k2, -c1, 1));
        let same = vanishing_divisor(&w1).unwrap() == vanishing_divisor(&w2).unwrap();
        let (a1, _) = w1.on_curve().unwrap();
        let (a2, _) = w2.on_curve().unwrap();
        let common = unit_quotient(&a1, &a2).unwrap().is_some() && unit_quotient(&a2, &a1).unwrap().is_some();
        prop_assert_eq!(same, common);
    }
}

fn random_p1_data(r: &mut ChaCha8Rng) -> CechLeafData<Rat> {
    let d0: Vec<i64> = (0..r.gen_range(1..=2)).map(|_| r.gen_range(-3..=3)).collect();
    let d1: Vec<i64> = (0..r.gen_range(0..=2)).map(|_| r.gen_range(-3..=4)).collect();
    let map: Vec<Vec<Vec<Rat>>> = d1
        .iter()
        .map(|&e| d0.iter().map(|&d| if e >= d { random_vec((e - d + 1) as usize, r) } else { vec![] }).collect())
        .collect();
    CechLeafData::p1(&[GradedBundleP1::new(d0), GradedBundleP1::new(d1)], &[map]).unwrap()
}

fn alternating(xs: &[usize]) -> i64 {
    xs.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn double_complex_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = if seed % 2 == 0 {
            let dims: Vec<usize> = (0..3).map(|_| r.gen_range(0..=2)).collect();
            CechLeafData::<Rat>::twisted_constant(r.gen_range(1..=4), &dims, &mut r).unwrap()
        } else {
            random_p1_data(&mut r)
        };
        for n in 0..=data.max_total_degree() {
            prop_assert!(data.total(n + 1).mul(&data.total(n)).is_zero());
        }
        let h = hypercohomology_all(&data).unwrap();
        let columns: Vec<i64> = (0..data.columns()).map(|q| alternating(&column_cohomology(&data, q))).collect();
        let chi: i64 = columns.iter().enumerate().map(|(q, c)| if q % 2 == 0 { *c } else { -c }).sum();
        prop_assert_eq!(alternating(&h), chi);
    }

    #[test]
    fn long_exact_sequence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = if seed % 3 == 0 {
            let dims: Vec<usize> = (0..2).map(|_| r.gen_range(1..=3)).collect();
            CechLeafData::<Rat>::twisted_constant(r.gen_range(2..=4), &dims, &mut r).unwrap()
        } else {
            random_p1_data(&mut r)
        };
        let h = hypercohomology_all(&data).unwrap();
        let (coker, ker) = les_terms(&data);
        prop_assert_eq!(h[1], coker + ker);
    }

    #[test]
    fn mayer_vietoris_and_duality(
        left in prop::collection::vec(-4i64..=4, 1..=3),
        shift in prop::collection::vec(-2i64..=2, 3),
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let n = left.len();
        let right: Vec<i64> = left.iter().zip(&shift).map(|(d, s)| (d + s).clamp(-4, 4)).collect();
        let glue = loop {
            let m = Matrix::from_fn(n, n, |_, _| Rat::from_i64(r.gen_range(-2..=2)));
            if m.inverse().is_some() {
                break m;
            }
        };
        let e = SNCCurveBundle::new(GradedBundleP1::new(left.clone()), GradedBundleP1::new(right.clone()), glue).unwrap();
        let (h0, h1) = cohomology_snc_curve(&e);
        let chi = e.left.euler_characteristic() + e.right.euler_characteristic() - n as i64;
        prop_assert_eq!(h0 as i64 - h1 as i64, chi);
        let (dual_h0, dual_h1) = cohomology_snc_curve(&e.serre_dual());
        prop_assert_eq!(h1, dual_h0);
        prop_assert_eq!(h0, dual_h1);
    }
}
