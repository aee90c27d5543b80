//! Field laws and canonical form for the scalar tower, checked against
//! pointwise rational evaluation and a 2×2 matrix model of `Q(√L)`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use braidties::scalars::{l_const, MultiPoly, RatFunc, SqrtExt, NVARS};

type Terms = Vec<(i64, u8, u8, u8)>;

fn poly(terms: &Terms) -> RatFunc {
    let mut acc = RatFunc::zero();
    for &(c, i, j, k) in terms {
        let mono = &(&RatFunc::u().pow(i as i32).unwrap() * &RatFunc::a().pow(j as i32).unwrap())
            * &RatFunc::b().pow(k as i32).unwrap();
        acc = &acc + &(&RatFunc::from_int(c) * &mono);
    }
    acc
}

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-4i64..=4, 0u8..3, 0u8..3, 0u8..2), 1..4)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (terms(), terms()).prop_filter_map("zero denominator", |(n, d)| {
        let den = poly(&d);
        (!den.is_zero()).then(|| &poly(&n) / &den)
    })
}

fn point() -> impl Strategy<Value = [BigRational; NVARS]> {
    prop::array::uniform3((-7i64..=7, 1i64..=5))
        .prop_map(|a| a.map(|(n, d)| BigRational::new(n.into(), d.into())))
}

/// `p + q√L` as the matrix `[[p, qL], [q, p]]`.
struct Mat([RatFunc; 4]);

impl Mat {
    fn of(x: &SqrtExt) -> Mat {
        let l = l_const();
        Mat([x.p().clone(), x.q() * &l, x.q().clone(), x.p().clone()])
    }

    fn mul(&self, o: &Mat) -> Mat {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }
}

fn ext(p: RatFunc, q: RatFunc) -> SqrtExt {
    SqrtExt::new(p, q, Arc::new(l_const()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, RatFunc::zero());
    }

    #[test]
    fn inverses(a in ratfunc()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
        prop_assert!((&a / &a).is_one());
    }

    #[test]
    fn canonical_after_round_trips(a in ratfunc(), b in ratfunc(), k in terms()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        let f = poly(&k);
        prop_assume!(!f.is_zero());
        let fp: MultiPoly = &f.num().clone() * &f.den().clone();
        let widened = RatFunc::new(a.num() * &fp, a.den() * &fp).unwrap();
        prop_assert_eq!(widened, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), pt in point()) {
        let (Ok(ea), Ok(eb)) = (a.eval(&pt), b.eval(&pt)) else { return Ok(()); };
        if let Ok(s) = (&a + &b).eval(&pt) {
            prop_assert_eq!(s, &ea + &eb);
        }
        if let Ok(p) = (&a * &b).eval(&pt) {
            prop_assert_eq!(p, &ea * &eb);
        }
        if !eb.is_zero() {
            if let Ok(q) = (&a / &b).eval(&pt) {
                prop_assert_eq!(q, &ea / &eb);
            }
        }
    }

    #[test]
    fn sqrt_ext_matches_matrix_model(p1 in ratfunc(), q1 in ratfunc(), p2 in ratfunc(), q2 in ratfunc()) {
        let x = ext(p1, q1);
        let y = ext(p2, q2);
        let prod = &x * &y;
        let m = Mat::of(&x).mul(&Mat::of(&y));
        prop_assert_eq!(prod.p(), &m.0[0]);
        prop_assert_eq!(prod.q(), &m.0[2]);
        let sum = &x + &y;
        prop_assert_eq!(sum.p(), &(x.p() + y.p()));
        prop_assert_eq!(sum.q(), &(x.q() + y.q()));
    }

    #[test]
    fn sqrt_ext_inverse(p in ratfunc(), q in ratfunc()) {
        let x = ext(p, q);
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!((&x * &inv).is_one());
        // The adjugate over the determinant p² - q²L.
        let det = &(x.p() * x.p()) - &(&(x.q() * x.q()) * &l_const());
        prop_assert_eq!(inv.p(), &(x.p() / &det));
        prop_assert_eq!(inv.q(), &(&-x.q() / &det));
    }
}

#[test]
fn sqrt_squares_to_radicand() {
    let s = SqrtExt::sqrt(Arc::new(l_const()));
    let sq = &s * &s;
    assert_eq!(sq.p(), &l_const());
    assert!(sq.q().is_zero());
}
