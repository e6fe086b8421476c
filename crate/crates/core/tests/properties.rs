use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use euler_refine::bij::{maxmin_to_smu, smu_to_maxmin, swap_top_two, Block};
use euler_refine::perm::{classify, enumerate_alternating, enumerate_alternating_reference};
use euler_refine::{AltKind, MinMax, Permutation, SecondMax, TruncatedEgf};

const ORDER: usize = 6;

fn series() -> impl Strategy<Value = TruncatedEgf> {
    prop::collection::vec((-20i64..=20, 1i64..=6), ORDER + 1).prop_map(|v| {
        let coeffs = v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect();
        TruncatedEgf::from_coeffs(coeffs).unwrap()
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

fn up_down(n: usize) -> impl Strategy<Value = Permutation> {
    let all: Vec<_> = enumerate_alternating(n, AltKind::UpDown).collect();
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&a).unwrap(), TruncatedEgf::zero(ORDER));
        prop_assert_eq!(a.mul(&TruncatedEgf::one(ORDER)).unwrap(), a);
    }

    #[test]
    fn reciprocal_is_inverse(a in series()) {
        match a.reciprocal() {
            Ok(r) => prop_assert_eq!(a.mul(&r).unwrap(), TruncatedEgf::one(ORDER)),
            Err(_) => prop_assert_eq!(a.coeff(0).unwrap(), &BigRational::from_integer(BigInt::from(0))),
        }
    }

    #[test]
    fn json_round_trip_on_integral_series(v in prop::collection::vec(-1000i64..1000, 1..12)) {
        let f = TruncatedEgf::from_counts(&v).unwrap();
        let back = TruncatedEgf::from_json(&f.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn complement_is_an_involution(p in permutation(12)) {
        prop_assert_eq!(p.complement().complement(), p.clone());
        prop_assert_eq!(p.complement().is_down_up(), p.is_up_down());
    }

    #[test]
    fn display_parse_round_trip(p in permutation(14)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn block_word_round_trip(word in Just((1..=9u32).collect::<Vec<_>>()).prop_shuffle(), len in 0usize..=9) {
        let w = &word[..len];
        prop_assert_eq!(Block::from_word(w).word(), w.to_vec());
    }

    #[test]
    fn bijection_round_trip_at_degree_10(sigma in up_down(10), side in any::<bool>()) {
        let c = classify(&sigma).unwrap();
        if c.minmax == MinMax::MaxMin {
            let tau = maxmin_to_smu(&sigma, side).unwrap();
            let ct = classify(&tau).unwrap();
            prop_assert_eq!((ct.kind, ct.secondmax), (AltKind::UpDown, SecondMax::Upper));
            prop_assert_eq!(smu_to_maxmin(&tau).unwrap(), (sigma, side));
        } else {
            prop_assert!(maxmin_to_smu(&sigma, side).is_err());
        }
    }

    #[test]
    fn swap_top_two_involution_at_degree_11(sigma in up_down(11)) {
        match swap_top_two(&sigma) {
            Ok(t) => {
                prop_assert_ne!(&t, &sigma);
                prop_assert_eq!(swap_top_two(&t).unwrap(), sigma);
            }
            Err(_) => prop_assert_eq!(classify(&sigma).unwrap().secondmax, SecondMax::Lower),
        }
    }
}

#[test]
fn pruned_enumeration_matches_reference() {
    for n in 1..=8 {
        for kind in [AltKind::UpDown, AltKind::DownUp] {
            let pruned: Vec<_> = enumerate_alternating(n, kind).collect();
            assert_eq!(pruned, enumerate_alternating_reference(n, kind), "n={n} {kind:?}");
        }
    }
}
