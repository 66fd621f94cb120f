use hall_core::coeff::{gauss_sq, gauss_sym};
use hall_core::matrix::{enumerate_by_dimvec, euler_form};
use hall_core::{CyclicMatrix, DimVector, LaurentPoly};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(LaurentPoly::from_terms)
}

fn dimvec(n: usize, max: i64) -> impl Strategy<Value = DimVector> {
    prop::collection::vec(-max..=max, n).prop_map(|v| DimVector::new(v).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = CyclicMatrix> {
    prop::collection::vec((1i64..=n as i64, 1i64..=4, 1i64..=2), 0..4).prop_map(move |es| {
        let mut a = CyclicMatrix::zero(n).unwrap();
        for (i, l, c) in es {
            a.try_add(i, i + l, c).unwrap();
        }
        a
    })
}

proptest! {
    #[test]
    fn bar_is_an_involution(p in laurent(), q in laurent()) {
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
    }

    #[test]
    fn pi_decompose_splits(p in laurent()) {
        let (h, rest) = p.pi_decompose();
        prop_assert!(h.is_bar_symmetric());
        prop_assert!(rest.in_negative_part());
        prop_assert_eq!(&h + &rest, p);
    }

    #[test]
    fn gaussians_are_bar_symmetric(n in 0i64..8, t in 0i64..8) {
        prop_assume!(t <= n);
        prop_assert!(gauss_sym(n, t).unwrap().is_bar_symmetric());
        prop_assert_eq!(gauss_sq(n, t).unwrap(), gauss_sq(n, n - t).unwrap());
    }

    #[test]
    fn euler_form_is_bilinear(a in dimvec(3, 3), b in dimvec(3, 3), c in dimvec(3, 3)) {
        let ab = a.checked_add(&b).unwrap();
        let lhs = euler_form(&ab, &c).unwrap();
        prop_assert_eq!(lhs, euler_form(&a, &c).unwrap() + euler_form(&b, &c).unwrap());
        let bc = b.checked_add(&c).unwrap();
        prop_assert_eq!(
            euler_form(&a, &bc).unwrap(),
            euler_form(&a, &b).unwrap() + euler_form(&a, &c).unwrap()
        );
    }

    #[test]
    fn sigma_is_shift_invariant(a in matrix(3), i in 1i64..=3, len in 1i64..4) {
        let j = i + len;
        let n = 3;
        let s = a.sigma(i, j).unwrap();
        prop_assert_eq!(s, a.sigma(i + n, j + n).unwrap());
    }

    #[test]
    fn text_format_round_trips(a in matrix(2)) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<CyclicMatrix>().unwrap(), a);
    }

    #[test]
    fn deg_leq_is_a_partial_order(d in prop::collection::vec(0i64..=2, 2)) {
        let d = DimVector::new(d).unwrap();
        prop_assume!(!d.is_zero());
        let ms = enumerate_by_dimvec(&d).unwrap();
        for a in &ms {
            prop_assert!(a.deg_leq(a).unwrap());
            for b in &ms {
                if a != b && a.deg_leq(b).unwrap() {
                    prop_assert!(!b.deg_leq(a).unwrap());
                }
                for c in &ms {
                    if a.deg_leq(b).unwrap() && b.deg_leq(c).unwrap() {
                        prop_assert!(a.deg_leq(c).unwrap());
                    }
                }
            }
        }
    }
}
