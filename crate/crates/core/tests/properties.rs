use diffmod_core::cores::{core, core_with_pivot, PivotRule};
use diffmod_core::diffmod::{
    constants, hom_dims, hom_space, is_trivial, iso_search, random_unimodular, scramble, seeded_rng, verify_hom,
    DiffModule, IsoVerdict, ScrambleParams, TrivialityResult,
};
use diffmod_core::diffring::DiffRing;
use diffmod_core::exactalg::{kernel_basis, smith_normal_form, Poly, PolyMat, Rat, RatMat};
use diffmod_core::monoid::{ClassEquality, ClassLedger};
use diffmod_core::samples::{random_invertible_ratmat, random_known_sum, random_ratmat, random_scrambled};
use diffmod_core::zeroder::{cancel_zero_derivation, invariant_factors, padded_cancellation_check, rcf, similar};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rat::new(p, q))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 0..=max_len).prop_map(Poly::from_coeffs)
}

fn ratmat(rows: usize, cols: usize) -> impl Strategy<Value = RatMat> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| RatMat::from_fn(rows, cols, |i, j| Rat::from_int(v[i * cols + j])))
}

fn polymat(rows: usize, cols: usize) -> impl Strategy<Value = PolyMat> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 0..=3), rows * cols)
        .prop_map(move |v| PolyMat::from_fn(rows, cols, |i, j| Poly::from_ints(&v[i * cols + j])))
}

fn poly_dx(m: PolyMat) -> DiffModule {
    DiffModule::new(DiffRing::PolyDx, m).unwrap()
}

fn rank_one(p: Poly) -> DiffModule {
    DiffModule::rank_one(DiffRing::PolyDx, p).unwrap()
}

fn is_unit(p: &Poly) -> bool {
    p.as_constant().is_some_and(|c| !c.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rat_text_round_trip(a in rat()) {
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
    }

    #[test]
    fn poly_ring_axioms(p in poly(5), q in poly(5), r in poly(5)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p * &q).derivative(), &(&p.derivative() * &q) + &(&p * &q.derivative()));
    }

    #[test]
    fn division_and_gcd(p in poly(6), q in poly(4)) {
        prop_assume!(!q.is_zero());
        let (quo, rem) = p.div_rem(&q);
        prop_assert_eq!(&(&quo * &q) + &rem, p.clone());
        prop_assert!(rem.is_zero() || rem.degree() < q.degree());
        let g = p.gcd(&q);
        prop_assert!(g.divides(&p) && g.divides(&q));
    }

    #[test]
    fn derive_is_linear_and_leibniz(p in poly(5), q in poly(5), c in rat()) {
        let d = |r: &Poly| DiffRing::PolyDx.derive(r);
        prop_assert_eq!(d(&(&p.scale(&c) + &q)), &d(&p).scale(&c) + &d(&q));
        prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
        let z = |r: &Poly| DiffRing::ConstZero.derive(r);
        prop_assert!(z(&p).is_zero());
    }

    #[test]
    fn second_derivative_drops_degree_by_two(p in poly(7)) {
        prop_assume!(p.degree().is_some_and(|d| d >= 2));
        let dd = DiffRing::PolyDx.derive(&DiffRing::PolyDx.derive(&p));
        prop_assert_eq!(dd.degree(), p.degree().map(|d| d - 2));
    }

    #[test]
    fn nullspace_size_plus_rank_is_cols(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| ratmat(r, c))) {
        let basis = m.nullspace();
        prop_assert_eq!(basis.len() + m.rank(), m.cols());
        for v in &basis {
            prop_assert!(m.mul(v).is_zero());
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in ratmat(3, 3), b in ratmat(3, 3)) {
        prop_assert_eq!(a.mul(&b).determinant(), &a.determinant() * &b.determinant());
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), RatMat::identity(3));
        } else {
            prop_assert!(a.determinant().is_zero());
        }
    }

    #[test]
    fn smith_form_identities(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| polymat(r, c))) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(is_unit(&s.u.determinant()) && is_unit(&s.v.determinant()));
        let factors: Vec<&Poly> = s.invariant_factors().collect();
        for pair in factors.windows(2) {
            prop_assert!(pair[0].divides(pair[1]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernel_basis_completes_unimodular_rows(n in 2usize..5, seed in any::<u64>()) {
        let (u, u_inv) = random_unimodular(n, ScrambleParams::for_rank(n), &mut seeded_rng(seed));
        let w = u.submatrix(0..1, 0..n);
        let k = kernel_basis(&w).unwrap();
        prop_assert_eq!(k.cols(), n - 1);
        prop_assert!(w.mul(&k).is_zero());
        // Any u with w u = 1 completes the kernel basis to a unimodular matrix.
        let lift = u_inv.submatrix(0..n, 0..1);
        prop_assert!(w.mul(&lift).is_identity());
        prop_assert!(is_unit(&k.hstack(&lift).determinant()));
    }

    #[test]
    fn apply_d_satisfies_leibniz(a in polymat(2, 2), v in polymat(2, 1), r in poly(3)) {
        let m = poly_dx(a);
        let times = |c: &Poly, x: &PolyMat| PolyMat::from_fn(x.rows(), x.cols(), |i, j| c * &x[(i, j)]);
        let lhs = m.apply_d(&times(&r, &v)).unwrap();
        let rhs = times(&r.derivative(), &v).add(&times(&r, &m.apply_d(&v).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homs_compose_and_identity_is_a_hom(f in poly(2), g in poly(2), seed in any::<u64>()) {
        let (sum, q, _) = random_scrambled(seed, 3, 2);
        let p = rank_one(f.clone()).direct_sum(&rank_one(g)).unwrap();
        prop_assert!(verify_hom(&PolyMat::identity(p.rank()), &p, &p).unwrap());
        let into = hom_space(&p, &sum.module, 8).unwrap();
        let onto = hom_space(&sum.module, &q, 8).unwrap();
        for t in &into.basis {
            for s in &onto.basis {
                prop_assert!(verify_hom(&s.mul(t), &p, &q).unwrap());
            }
        }
    }

    #[test]
    fn constants_are_additive(seed_p in any::<u64>(), seed_q in any::<u64>()) {
        let (_, p, _) = random_scrambled(seed_p, 2, 2);
        let (_, q, _) = random_scrambled(seed_q, 2, 2);
        let sum = p.direct_sum(&q).unwrap();
        prop_assert_eq!(constants(&sum, 32).len(), constants(&p, 32).len() + constants(&q, 32).len());
    }

    #[test]
    fn triviality_certificates_are_sound(seed in any::<u64>()) {
        let (_, q, _) = random_scrambled(seed, 4, 2);
        if let TrivialityResult::Trivial { basis, certificate } = is_trivial(&q, 32) {
            let triv = DiffModule::trivial(DiffRing::PolyDx, q.rank());
            prop_assert!(verify_hom(&basis, &triv, &q).unwrap());
            prop_assert!(is_unit(&basis.determinant()));
            prop_assert!(certificate.verify().is_ok());
        }
    }

    #[test]
    fn iso_search_is_symmetric(seed in any::<u64>()) {
        let (sum, q, _) = random_scrambled(seed, 3, 2);
        let there = iso_search(&sum.module, &q, 32, seed, 32).unwrap();
        let back = iso_search(&q, &sum.module, 32, seed, 32).unwrap();
        prop_assert_eq!(there.is_iso(), back.is_iso());
        if let (Some(a), Some(b)) = (there.certificate(), back.certificate()) {
            let round = a.then(b).unwrap();
            // An automorphism of the source in general; only a certificate
            // followed by its own inverse is the identity.
            prop_assert!(round.verify().is_ok());
            prop_assert!(a.then(&a.inverse()).unwrap().forward().is_identity());
            prop_assert!(b.then(&b.inverse()).unwrap().backward().is_identity());
        }
    }

    #[test]
    fn cap_stabilizes(seed in any::<u64>()) {
        let (sum, q, _) = random_scrambled(seed, 3, 3);
        let dims = hom_dims(&sum.module, &q, &[32, 42]).unwrap();
        prop_assert_eq!(dims[0], dims[1]);
    }

    #[test]
    fn core_is_idempotent_and_pivot_independent(seed in any::<u64>()) {
        let (sum, q, _) = random_scrambled(seed, 4, 2);
        let d = core(&q, 32);
        prop_assert_eq!(d.core.rank() + d.multiplicity, q.rank());
        prop_assert_eq!(d.core.rank(), sum.expected_core_rank());
        let again = core(&d.core, 32);
        prop_assert_eq!(again.multiplicity, 0);
        prop_assert_eq!(&again.core, &d.core);
        let other = core_with_pivot(&q, 32, PivotRule::Seeded(seed));
        match iso_search(&d.core, &other.core, 32, seed, 32).unwrap() {
            IsoVerdict::Iso(c) => prop_assert!(c.verify().is_ok()),
            IsoVerdict::NotIso(w) => prop_assert!(false, "cores not isomorphic: {w}"),
            IsoVerdict::Unknown { .. } => {}
        }
    }

    #[test]
    fn rcf_is_idempotent(a in (1usize..5).prop_flat_map(|n| ratmat(n, n))) {
        let (form, cert) = rcf(&a).unwrap();
        prop_assert!(cert.verifies(&a, &form));
        let (again, _) = rcf(&form).unwrap();
        prop_assert_eq!(&again, &form);
        let factors = invariant_factors(&a).unwrap();
        for pair in factors.windows(2) {
            prop_assert!(pair[0].divides(&pair[1]));
        }
    }

    #[test]
    fn similarity_is_an_equivalence(n in 1usize..5, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = random_ratmat(&mut rng, n, 3);
        let (s, s_inv) = random_invertible_ratmat(&mut rng, n);
        let (t, t_inv) = random_invertible_ratmat(&mut rng, n);
        let b = s.mul(&a).mul(&s_inv);
        let c = t.mul(&b).mul(&t_inv);
        prop_assert!(similar(&a, &a).unwrap().is_similar());
        let ab = similar(&a, &b).unwrap();
        let ba = similar(&b, &a).unwrap();
        let bc = similar(&b, &c).unwrap();
        let ac = similar(&a, &c).unwrap();
        prop_assert!(ab.is_similar() && ba.is_similar() && bc.is_similar() && ac.is_similar());
        if let (diffmod_core::zeroder::SimilarityVerdict::Similar(x), diffmod_core::zeroder::SimilarityVerdict::Similar(y)) = (ab, bc) {
            let composed = diffmod_core::zeroder::SimilarityCertificate {
                transform: y.transform.mul(&x.transform),
                inverse: x.inverse.mul(&y.inverse),
            };
            prop_assert!(composed.verifies(&a, &c));
        }
    }

    #[test]
    fn zero_derivation_cancellation(n in 1usize..5, m in 0usize..4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let (g, _) = random_invertible_ratmat(&mut rng, n);
        let (h, _) = random_invertible_ratmat(&mut rng, m);
        let cert = cancel_zero_derivation(n, n, m, &g.block_diag(&h)).unwrap();
        let id = RatMat::identity(n);
        prop_assert!(cert.verifies(&id, &id));
        prop_assert_eq!(cert.transform, g);
        let a = random_ratmat(&mut rng, n, 2);
        let b = random_ratmat(&mut rng, n, 2);
        prop_assert!(padded_cancellation_check(&a, &b, m).unwrap());
        prop_assert!(padded_cancellation_check(&a, &a, m).unwrap());
    }
}

#[test]
fn scramble_is_recovered_by_iso_search() {
    let mut found = 0;
    let runs = 40;
    for seed in 0..runs {
        let p = random_known_sum(seed, 4, 2).module;
        let (q, cert) = scramble(&p, seed + 1000).unwrap();
        assert!(cert.verify().is_ok());
        match iso_search(&p, &q, 32, seed, 32).unwrap() {
            IsoVerdict::Iso(c) => {
                assert!(c.verify().is_ok());
                found += 1;
            }
            IsoVerdict::NotIso(w) => panic!("seed {seed}: scramble reported not isomorphic: {w}"),
            IsoVerdict::Unknown { .. } => {}
        }
    }
    assert!(found * 100 >= 95 * runs, "only {found}/{runs} recovered");
}

#[test]
fn monoid_laws_hold_up_to_certified_iso() {
    let mut l = ClassLedger::new(DiffRing::PolyDx, 32);
    for (name, seed) in [("a", 1u64), ("b", 2), ("c", 3)] {
        let (_, q, _) = random_scrambled(seed, 2, 2);
        l.class_of(&q, name).unwrap();
    }
    l.class_of(&DiffModule::trivial(DiffRing::PolyDx, 2), "zero").unwrap();
    l.add_classes("a", "b", "ab").unwrap();
    l.add_classes("b", "a", "ba").unwrap();
    l.add_classes("ab", "c", "ab_c").unwrap();
    l.add_classes("b", "c", "bc").unwrap();
    l.add_classes("a", "bc", "a_bc").unwrap();
    l.add_classes("a", "zero", "a0").unwrap();
    for (x, y) in [("ab", "ba"), ("ab_c", "a_bc"), ("a", "a0")] {
        match l.classes_equal(x, y, 32, 0).unwrap() {
            ClassEquality::Equal(c) => assert!(c.verify().is_ok()),
            other => panic!("{x} vs {y}: {other:?}"),
        }
    }
    for e in l.entries().to_vec() {
        assert_eq!(l.is_invertible_class(&e.name).unwrap(), l.is_zero_class(&e.name).unwrap());
    }
}
