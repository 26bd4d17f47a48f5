use noncircular::interval::{interval_arith, ArithOp, Interval, Rational};
use noncircular::powerseries::Series;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..100).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// An interval with a point inside it.
fn interval_with_point() -> impl Strategy<Value = (Interval, Rational)> {
    (rational(), rational(), 0u32..=16).prop_map(|(a, b, t)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let t = Rational::new(BigInt::from(t), BigInt::from(16));
        let x = &lo + (&hi - &lo) * t;
        (Interval::new(lo, hi).unwrap(), x)
    })
}

proptest! {
    #[test]
    fn arithmetic_encloses_point_results(
        (a, x) in interval_with_point(),
        (b, y) in interval_with_point(),
    ) {
        let ops = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];
        for op in ops {
            let Ok(r) = interval_arith(op, &a, &b) else {
                prop_assert!(op == ArithOp::Div && b.contains_zero());
                continue;
            };
            let v = match op {
                ArithOp::Add => &x + &y,
                ArithOp::Sub => &x - &y,
                ArithOp::Mul => &x * &y,
                ArithOp::Div => &x / &y,
            };
            prop_assert!(r.contains(&v), "{op:?}: {r} misses {v}");
        }
    }

    #[test]
    fn compress_widens_by_at_most_two_ulps((a, _) in interval_with_point(), bits in 0u32..40) {
        let c = a.compress(bits);
        prop_assert!(c.contains_interval(&a));
        let ulp = Rational::new(BigInt::from(2), BigInt::from(1) << bits);
        prop_assert!(c.width() <= a.width() + ulp);
    }

    #[test]
    fn sqrt_contains_exact_roots(n in 0u64..10_000, bits in 1u32..48) {
        let sq = Rational::from_integer(BigInt::from(n * n));
        let r = Interval::point(sq).sqrt(bits).unwrap();
        prop_assert!(r.contains(&Rational::from_integer(BigInt::from(n))));
    }

    #[test]
    fn reversion_is_a_compositional_inverse(
        f1 in (1i64..5, prop::bool::ANY),
        rest in prop::collection::vec(-5i64..5, 1..6),
    ) {
        let mut coeffs = vec![Rational::from_integer(0.into())];
        coeffs.push(Rational::from_integer(BigInt::from(if f1.1 { f1.0 } else { -f1.0 })));
        coeffs.extend(rest.iter().map(|&c| Rational::new(BigInt::from(c), BigInt::from(3))));
        let f = Series::new(coeffs).unwrap();
        let g = f.revert().unwrap();
        let id = Series::identity(f.order());
        prop_assert_eq!(f.compose(&g).unwrap(), id.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), id);
    }
}
