//! Betti numbers from explicit resolutions against independent oracles:
//! the integer recurrence behind `1 / (1 - h z + z^2)` and, for
//! k[x]/(x^n), the periodic resolution by multiplication with x and x^(n-1).

use proptest::prelude::*;

use poincare_core::algebra::{build_almost_stretched, build_almost_stretched_over, build_truncated_polynomial, AlmostStretchedParams};
use poincare_core::resolution::{betti_numbers, minimal_resolution, verify_resolution, DEFAULT_DIM_CAP};
use poincare_core::{Fp, Scalar};

fn recurrence(h: usize, n: usize) -> Vec<usize> {
    let mut b = vec![1, h];
    while b.len() <= n {
        let k = b.len();
        b.push(h * b[k - 1] - b[k - 2]);
    }
    b.truncate(n + 1);
    b
}

#[test]
fn truncated_polynomial_rings_are_periodic() {
    for n in 2..=6 {
        let alg = build_truncated_polynomial(n).unwrap();
        let r = minimal_resolution(&alg, 6, DEFAULT_DIM_CAP);
        assert_eq!(r.betti, vec![1; 7]);
        assert!(verify_resolution(&r).all_pass());
        // every differential past d_1 is a 1x1 matrix: x^(n-1), then x, alternating
        for i in 2..=6 {
            let e = r.entry(i, 0, 0);
            let degree = if i % 2 == 0 { n - 1 } else { 1 };
            assert_eq!(e.to_string(), if degree == 1 { "x1".to_string() } else { format!("x1^{degree}") }, "n={n}, d_{i}");
        }
    }
}

#[test]
fn larger_socle_degrees() {
    for (h, s, t) in [(2, 6, 3), (3, 6, 4), (5, 4, 2)] {
        let alg = build_almost_stretched(&AlmostStretchedParams::new(h, s, t, 0)).unwrap();
        let depth = if h == 5 { 3 } else { 4 };
        assert_eq!(betti_numbers(&alg, depth).unwrap(), recurrence(h, depth), "h={h} s={s} t={t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn almost_stretched_betti_follow_recurrence(
        h in 2usize..=4, t in 2usize..=3, extra in 1usize..=2,
        num in -6i64..=6, den in 1i64..=4,
    ) {
        let p = AlmostStretchedParams::new(h, t + extra, t, Scalar::new(num, den));
        let alg = build_almost_stretched(&p).unwrap();
        prop_assert_eq!(betti_numbers(&alg, 3).unwrap(), recurrence(h, 3));
    }

    #[test]
    fn prime_field_agrees(h in 2usize..=4, t in 2usize..=3, a in 0i64..=10) {
        let p = AlmostStretchedParams::new(h, t + 1, t, a);
        let alg = build_almost_stretched_over::<Fp>(&p, 10007).unwrap();
        prop_assert_eq!(betti_numbers(&alg, 3).unwrap(), recurrence(h, 3));
    }
}
