mod common;

use common::*;
use proptest::prelude::*;
use splitlab_core::linalg::companion;
use splitlab_core::poly::{gcd, minimal_polynomial};
use splitlab_core::splitting::splitting_lower_bound;
use splitlab_core::{build_field, LabConfig, MatrixFq, Poly, RecurrenceState, SplitInstance};

fn poly_strategy(q: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..q, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms_hold((t, a, b, c) in tower_triple()) {
        field_axioms(&t, a, b, c)?;
    }

    #[test]
    fn frobenius_is_additive((t, a, b, _) in tower_triple(), r in 0u64..10) {
        frobenius_additive(&t, a, b, r)?;
    }

    #[test]
    fn coords_roundtrip((t, a, _, _) in tower_triple()) {
        let x = t.element_at(a);
        let back = t.from_coords(t.coords_of(&x).unwrap()).unwrap();
        prop_assert_eq!(t.index_of(&back), a);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn order_divides_group_size((t, a, _, _) in tower_triple()) {
        prop_assume!(a != 0);
        let x = t.element_at(a);
        let ord = t.multiplicative_order(&x, &LabConfig::default()).unwrap();
        prop_assert_eq!((t.size() - 1) % ord, 0);
        prop_assert_eq!(t.pow(&x, ord).unwrap(), t.one());
    }

    #[test]
    fn minimal_polynomial_degree_divides((t, a, _, _) in tower_triple()) {
        let x = t.element_at(a);
        let mp = minimal_polynomial(&t, &x).unwrap();
        let deg = mp.degree().unwrap();
        prop_assert_eq!(t.degree() % deg, 0);
        prop_assert!(mp.is_monic());
    }

    #[test]
    fn rref_is_canonical((q, width, rows) in row_sets()) {
        rref_canonical(q, width, &rows)?;
    }

    #[test]
    fn cayley_hamilton_holds((q, size, index) in matrices()) {
        cayley_hamilton(q, size, index)?;
    }

    #[test]
    fn purely_periodic_iff_invertible((q, m, n, index) in recurrences()) {
        periodic_iff_invertible(q, m, n, index)?;
    }

    #[test]
    fn gcd_divides_and_is_greatest(
        q in prop_oneof![Just(2u64), Just(3), Just(5)],
        seed in any::<u64>(),
    ) {
        let f = build_field(q, 1).unwrap();
        let mut rng = seed;
        let mut next = |len: usize| {
            let coeffs: Vec<u64> = (0..len).map(|_| {
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (rng >> 33) % q
            }).collect();
            Poly::new(&f, coeffs).unwrap()
        };
        let (a, b, c) = (next(5), next(5), next(3));
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        prop_assume!(!ac.is_zero() || !bc.is_zero());
        let g = gcd(&ac, &bc).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(ac.rem(&g).unwrap().is_zero());
        prop_assert!(bc.rem(&g).unwrap().is_zero());
        if !c.is_zero() {
            prop_assert!(g.rem(&c).unwrap().is_zero());
        }
    }

    #[test]
    fn division_identity(
        a in poly_strategy(3, 7),
        b in poly_strategy(3, 4),
    ) {
        let f = build_field(3, 1).unwrap();
        let (a, b) = (Poly::new(&f, a).unwrap(), Poly::new(&f, b).unwrap());
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn companion_matrix_recovers_polynomial(
        q in prop_oneof![Just(2u64), Just(3)],
        tail in prop::collection::vec(0u64..3, 1..=5),
    ) {
        let f = build_field(q, 1).unwrap();
        let mut coeffs: Vec<u64> = tail.into_iter().map(|c| c % q).collect();
        coeffs.push(1);
        let p = Poly::new(&f, coeffs).unwrap();
        prop_assert_eq!(companion(&p).unwrap().char_poly().unwrap(), p);
    }

    #[test]
    fn steps_agree_with_companion_power(index in 0u64..256, state in 0u64..16, k in 0usize..20) {
        let f = build_field(2, 1).unwrap();
        let rec = splitlab_core::BlockRecurrence::from_index(&f, 2, 2, index);
        let words = vec![vec![state & 1, (state >> 1) & 1], vec![(state >> 2) & 1, (state >> 3) & 1]];
        let mut st = RecurrenceState::from_words(&words).unwrap();
        let row = st.as_row().to_vec();
        for _ in 0..k {
            st = rec.step(&st).unwrap();
        }
        let expected = rec.block_companion().pow(k as u64).unwrap().mul_row(&row);
        prop_assert_eq!(st.as_row(), expected.as_slice());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Multiplying a splitting subspace by a unit gives a splitting subspace.
    #[test]
    fn translation_preserves_splitting(
        (q, m, n) in prop_oneof![Just((2u64, 2usize, 2usize)), Just((3, 2, 2)), Just((2, 1, 4)), Just((2, 2, 3))],
        pick in any::<prop::sample::Index>(),
        beta in 1u64..64,
    ) {
        let t = tower(q, 1, m * n);
        let inst = SplitInstance::new(&t, m, n, None).unwrap();
        let cfg = LabConfig::default();
        let all = inst.splitting_subspaces(&cfg).unwrap();
        prop_assert!(num_bigint::BigUint::from(all.len()) >= splitting_lower_bound(q, m, n));
        let w = &all[pick.index(all.len())];
        let b = t.element_at(beta % (t.size() - 1) + 1);
        let rows: Vec<Vec<u64>> = (0..w.dim())
            .map(|i| {
                let x = t.from_coords(w.row(i).to_vec()).unwrap();
                t.mul(&b, &x).unwrap().coords().to_vec()
            })
            .collect();
        let moved = splitlab_core::SubspaceBasis::span(t.base(), m * n, &rows).unwrap();
        prop_assert_eq!(moved.dim(), m);
        prop_assert!(inst.is_alpha_splitting(&moved).unwrap());
    }

    #[test]
    fn mul_matrix_is_multiplication((t, a, b, _) in tower_triple()) {
        let (x, y) = (t.element_at(a), t.element_at(b));
        let m: MatrixFq = t.mul_matrix(&y).unwrap();
        prop_assert_eq!(m.mul_row(x.coords()), t.mul(&x, &y).unwrap().coords().to_vec());
    }
}

#[test]
fn subspace_streams_match_gaussian_binomials() {
    for (q, a, b) in subspace_grid() {
        subspace_stream(q, a, b).unwrap();
    }
}

#[test]
fn construction_is_deterministic() {
    for (p, e, d) in TOWERS {
        assert_eq!(tower(p, e, d).defining_poly(), tower(p, e, d).defining_poly());
        assert_eq!(build_field(p, e).unwrap().modulus(), build_field(p, e).unwrap().modulus());
    }
}
