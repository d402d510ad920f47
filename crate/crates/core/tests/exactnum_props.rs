use std::f64::consts::TAU;

use fusionkit_core::exactnum::{CycNum, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

// Divisor families whose pairwise lcm stays under the order cap.
const FAMILIES: [&[u32]; 2] = [&[1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72], &[1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]];

#[derive(Clone, Debug)]
struct Sample {
    order: u32,
    terms: Vec<(i64, i64, i64)>,
}

impl Sample {
    fn exact(&self) -> CycNum {
        let mut x = CycNum::zero(self.order).unwrap();
        for &(c, k, d) in &self.terms {
            let q = Rational::new(BigInt::from(c), BigInt::from(d));
            x = x + CycNum::root_of_unity(self.order, k).unwrap().scale(&q);
        }
        x
    }

    // Computed from the definition, not from the library's embedding.
    fn float(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|&(c, k, d)| Complex64::from_polar(c as f64 / d as f64, TAU * k as f64 / self.order as f64))
            .sum()
    }
}

fn sample(family: &'static [u32]) -> impl Strategy<Value = Sample> {
    (prop::sample::select(family), prop::collection::vec((-9i64..=9, 0i64..72, 1i64..=6), 0..6))
        .prop_map(|(order, terms)| Sample { order, terms })
}

fn pair() -> impl Strategy<Value = (Sample, Sample)> {
    (0..FAMILIES.len()).prop_flat_map(|f| (sample(FAMILIES[f]), sample(FAMILIES[f])))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn arithmetic_matches_float_embedding((x, y) in pair()) {
        let (ex, ey) = (x.exact(), y.exact());
        let (fx, fy) = (x.float(), y.float());
        prop_assert!(close(ex.embed(), fx));
        prop_assert!(close((&ex + &ey).embed(), fx + fy));
        prop_assert!(close((&ex - &ey).embed(), fx - fy));
        prop_assert!(close((&ex * &ey).embed(), fx * fy));
        prop_assert!(close(ex.conj().embed(), fx.conj()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_is_two_sided((x, _) in pair()) {
        let ex = x.exact();
        prop_assume!(!ex.is_zero());
        let inv = ex.inverse().unwrap();
        prop_assert!((&ex * &inv).is_one());
        prop_assert!(close(inv.embed(), x.float().inv()));
    }

    #[test]
    fn lifting_preserves_value((x, _) in pair(), m in 1u32..=4) {
        let ex = x.exact();
        let target = x.order * m;
        prop_assume!(target <= 72);
        let lifted = ex.lift(target).unwrap();
        prop_assert_eq!(lifted.order(), target);
        prop_assert_eq!(&lifted, &ex);
        prop_assert!(close(lifted.embed(), x.float()));
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((x, y) in pair()) {
        let (ex, ey) = (x.exact(), y.exact());
        prop_assert_eq!(ex.conj().conj(), ex.clone());
        prop_assert_eq!((&ex * &ey).conj(), ex.conj() * ey.conj());
        prop_assert!((&ex * &ex.conj()).is_real());
    }

    #[test]
    fn serde_round_trip((x, _) in pair()) {
        let ex = x.exact();
        let text = serde_json::to_string(&ex).unwrap();
        let back: CycNum = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, ex);
    }
}
