//! Property tests for the structural invariants: determinant laws, direct
//! sums, discriminant groups, valence composition, glue-vector sweeps, and
//! polynomial factorization round trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3kit::elliptic::random_generic_model;
use k3kit::lattice::Lattice;
use k3kit::matrix::IntMat;
use k3kit::nikulin::build_model;
use k3kit::nsclass::find_glue_and_extend;
use k3kit::ratpoly::RatPoly;

/// Random small nondegenerate symmetric Gram matrix of the given rank.
fn gram_strategy(rank: usize) -> impl Strategy<Value = Lattice> {
    let n = rank * (rank + 1) / 2;
    prop::collection::vec(-4i64..=4, n).prop_filter_map("nondegenerate", move |upper| {
        let mut m = IntMat::zeros(rank, rank);
        let mut it = upper.into_iter();
        for i in 0..rank {
            for j in i..rank {
                let v = it.next().unwrap();
                m[(i, j)] = BigInt::from(v);
                m[(j, i)] = BigInt::from(v);
            }
        }
        Lattice::new(m).ok()
    })
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_det_law(l in gram_strategy(3), m in prop_oneof![Just(-3i64), Just(-2), Just(-1), Just(1), Just(2), Just(3)]) {
        let t = l.twist(m).unwrap();
        let factor = BigInt::from(m).pow(3);
        prop_assert_eq!(t.det(), factor * l.det());
    }

    #[test]
    fn direct_sum_laws(a in gram_strategy(2), b in gram_strategy(3)) {
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.rank(), 5);
        prop_assert_eq!(s.det(), a.det() * b.det());
        prop_assert_eq!(s.is_even(), a.is_even() && b.is_even());
        let (sa, sb) = (a.signature().unwrap(), b.signature().unwrap());
        prop_assert_eq!(s.signature().unwrap(), (sa.0 + sb.0, sa.1 + sb.1));
    }

    #[test]
    fn discriminant_group_order_is_abs_det(l in gram_strategy(3)) {
        let disc = l.discriminant_group().unwrap();
        prop_assert_eq!(disc.order(), l.det().abs());
    }

    #[test]
    fn valence_composition_is_associative(a in rational(), b in rational(), c in rational()) {
        // v(T o T') = -v(T) v(T'): composing three in either association
        // gives v(T1) v(T2) v(T3)
        let compose = |x: &BigRational, y: &BigRational| -(x * y);
        let left = compose(&compose(&a, &b), &c);
        let right = compose(&a, &compose(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn glue_sweep_even_d(k in 1i64..=12) {
        let d = 2 * k;
        let ext = find_glue_and_extend(d).unwrap();
        prop_assert_eq!((ext.glue_norm + 2 * d).rem_euclid(8), 0);
        prop_assert!(ext.overlattice.is_even());
        prop_assert_eq!(ext.overlattice.det().abs(), BigInt::from(128 * d));
        // q = -glue_norm/2 minimal in {2, 4} by the mod-4 congruence
        let q = -ext.glue_norm / 2;
        prop_assert!(q == 2 || q == 4);
        prop_assert_eq!(ext.half_class_norm, (d - q) / 2);
    }

    #[test]
    fn factorization_reconstructs_input(coeffs in prop::collection::vec(-6i64..=6, 2..=7)) {
        let p = RatPoly::from_i64(&coeffs);
        prop_assume!(p.degree().map_or(false, |d| d >= 1));
        let factors = k3kit::elliptic::factor::factor_rational(&p).unwrap();
        let mut acc = RatPoly::one();
        for (f, mult) in &factors {
            prop_assert!(f.leading_coeff() == BigRational::one());
            for _ in 0..*mult {
                acc = acc.mul(f);
            }
        }
        prop_assert_eq!(acc, p.monic());
    }

    #[test]
    fn squarefree_part_divides(coeffs in prop::collection::vec(-5i64..=5, 2..=6)) {
        let p = RatPoly::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        let sf = p.squarefree_part().unwrap();
        prop_assume!(!sf.is_zero());
        let (_, rem) = p.div_rem(&sf).unwrap();
        prop_assert!(rem.is_zero());
        prop_assert!(sf.is_squarefree().unwrap());
    }

    #[test]
    fn elliptic_double_quotient(seed in 0u64..=7) {
        let m = random_generic_model(seed);
        let q = m.quotient_model().unwrap();
        // the quotient of a generic model is again generic
        q.genericity_check().unwrap();
        let qq = q.quotient_model().unwrap();
        prop_assert_eq!(qq.a().clone(), m.a().scale(&BigRational::from_integer(4.into())));
        prop_assert_eq!(qq.b().clone(), m.b().scale(&BigRational::from_integer(16.into())));
        // disc root sets agree: 16 b'^2 (a'^2-4b') = 16 (a^2-4b)^2 * 16b
        let lhs = q.discriminant();
        let rhs = m
            .quad_disc()
            .mul(&m.quad_disc())
            .mul(&m.b().scale(&BigRational::from_integer(256.into())));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn swap_rank_and_trace_identities() {
    let model = build_model().unwrap();
    let (fixed, antifixed) = model.lattice.fixed_and_antifixed(&model.swap).unwrap();
    assert_eq!(fixed.rank() + antifixed.rank(), 22);
    // trace = rank(fixed) - rank(antifixed)
    let expected = BigInt::from(fixed.rank() as i64 - antifixed.rank() as i64);
    assert_eq!(model.swap.trace(), expected);
}

#[test]
fn discriminant_group_of_unimodular_is_trivial() {
    let model = build_model().unwrap();
    assert!(model
        .lattice
        .discriminant_group()
        .unwrap()
        .is_trivial());
}

#[test]
fn odd_d_has_single_candidate() {
    for d in [1i64, 3, 5, 7, 9, 11] {
        let set = k3kit::nsclass::ns_candidates(d).unwrap();
        assert_eq!(set.candidates.len(), 1);
        assert!(set.glue_vector.is_none());
    }
    for d in [2i64, 4, 6, 8, 10, 12] {
        let set = k3kit::nsclass::ns_candidates(d).unwrap();
        assert_eq!(set.candidates.len(), 2);
        assert!(set.glue_vector.is_some());
    }
}

#[test]
fn zero_polynomial_edge_cases() {
    let z = RatPoly::zero();
    assert_eq!(z.degree(), None);
    assert!(z.gcd(&RatPoly::from_i64(&[1, 1])).is_ok());
    assert!(z.gcd(&z).is_err());
    assert!(z.squarefree_part().is_err());
    assert_eq!(z.eval(&BigRational::zero()), BigRational::zero());
}
