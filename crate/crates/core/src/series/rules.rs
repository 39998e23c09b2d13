//! Change-of-rings transforms between the Poincare series of a local ring
//! `A` and of a quotient `A/x` (or `A/(0:m)`).
//!
//! Each forward rule maps the series of the quotient to the series of `A`;
//! the inverse recovers the quotient series from that of `A`. Hypotheses on
//! `x` are the caller's responsibility.

use crate::error::SeriesError;

use super::{IntPolynomial, RationalSeries};

fn rule_a_factor(x_in_m_squared: bool) -> IntPolynomial {
    if x_in_m_squared {
        IntPolynomial::from_i64s(&[1, 0, -1])
    } else {
        IntPolynomial::one_plus_z()
    }
}

/// Regular element `x`: `P_A = (1 + z) P_{A/x}` for `x` in `m \ m^2`,
/// `P_A = (1 - z^2) P_{A/x}` for `x` in `m^2`.
pub fn rule_a(p_quotient: &RationalSeries, x_in_m_squared: bool) -> RationalSeries {
    p_quotient.mul_poly(&rule_a_factor(x_in_m_squared))
}

pub fn rule_a_inverse(p_ring: &RationalSeries, x_in_m_squared: bool) -> RationalSeries {
    p_ring.div_poly(&rule_a_factor(x_in_m_squared)).expect("factor has unit constant term")
}

/// `P / (1 + c z^k P)` written on numerator and denominator.
fn mobius(p: &RationalSeries, c: i64, k: usize) -> Result<RationalSeries, SeriesError> {
    let shifted = p.numerator().scale(&c.into()).shift(k);
    RationalSeries::new(p.numerator().clone(), p.denominator().add(&shifted))
}

/// Socle element `x` in `m \ m^2`: `P_A = P_{A/x} / (1 - z P_{A/x})`.
pub fn rule_b(p_quotient: &RationalSeries) -> Result<RationalSeries, SeriesError> {
    mobius(p_quotient, -1, 1)
}

/// `P_{A/x} = P_A / (1 + z P_A)`.
pub fn rule_b_inverse(p_ring: &RationalSeries) -> Result<RationalSeries, SeriesError> {
    mobius(p_ring, 1, 1)
}

/// Artinian Gorenstein `A`: `P_A = P_{A/(0:m)} / (1 + z^2 P_{A/(0:m)})`.
pub fn rule_c(p_quotient: &RationalSeries) -> Result<RationalSeries, SeriesError> {
    mobius(p_quotient, 1, 2)
}

/// `P_{A/(0:m)} = P_A / (1 - z^2 P_A)`.
pub fn rule_c_inverse(p_ring: &RationalSeries) -> Result<RationalSeries, SeriesError> {
    mobius(p_ring, -1, 2)
}

/// `(1 + z)^d / (1 - h z + z^2)`.
pub fn closed_form_theorem(d: u32, h: u32) -> RationalSeries {
    let den = IntPolynomial::from_i64s(&[1, -(h as i64), 1]);
    RationalSeries::new(IntPolynomial::one_plus_z().pow(d), den).expect("unit constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::tests::series_strategy;
    use proptest::prelude::*;

    fn s(num: &[i64], den: &[i64]) -> RationalSeries {
        RationalSeries::from_i64s(num, den).unwrap()
    }

    #[test]
    fn rule_a_examples() {
        let mut p = RationalSeries::one();
        for _ in 0..3 {
            p = rule_a(&p, false);
        }
        assert_eq!(p, RationalSeries::polynomial(IntPolynomial::one_plus_z().pow(3)));
        let two = RationalSeries::polynomial(IntPolynomial::one_plus_z().pow(2));
        assert_eq!(rule_a_inverse(&two, true), s(&[1, 1], &[1, -1]));
    }

    #[test]
    fn rule_b_examples() {
        assert_eq!(rule_b(&s(&[1], &[1, -2])).unwrap(), s(&[1], &[1, -3]));
        let mut p = s(&[1], &[1, -2]);
        let h = 7;
        for _ in 0..h - 2 {
            p = rule_b(&p).unwrap();
        }
        assert_eq!(p, s(&[1], &[1, -h]));
    }

    #[test]
    fn rule_c_examples() {
        assert_eq!(rule_c(&s(&[1], &[1, -3])).unwrap(), s(&[1], &[1, -3, 1]));
        assert_eq!(rule_c_inverse(&s(&[1], &[1, -2, 1])).unwrap(), s(&[1], &[1, -2]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_theorem(0, 3), s(&[1], &[1, -3, 1]));
        assert_eq!(closed_form_theorem(2, 3), s(&[1, 2, 1], &[1, -3, 1]));
        let ci = RationalSeries::new(IntPolynomial::one_plus_z().pow(2), IntPolynomial::from_i64s(&[1, 0, -1]).pow(2)).unwrap();
        assert_eq!(closed_form_theorem(0, 2), ci);
    }

    proptest! {
        #[test]
        fn rules_are_bijective(p in series_strategy(), in_m2 in any::<bool>()) {
            prop_assert_eq!(rule_a(&rule_a_inverse(&p, in_m2), in_m2), p.clone());
            prop_assert_eq!(rule_a_inverse(&rule_a(&p, in_m2), in_m2), p.clone());
            prop_assert_eq!(rule_b_inverse(&rule_b(&p).unwrap()).unwrap(), p.clone());
            prop_assert_eq!(rule_b(&rule_b_inverse(&p).unwrap()).unwrap(), p.clone());
            prop_assert_eq!(rule_c_inverse(&rule_c(&p).unwrap()).unwrap(), p.clone());
            prop_assert_eq!(rule_c(&rule_c_inverse(&p).unwrap()).unwrap(), p);
        }

        #[test]
        fn closed_form_recurrence(h in 2u32..12, n in 2usize..30) {
            let c = closed_form_theorem(0, h).expand(n);
            prop_assert_eq!(c[0].clone(), 1.into());
            prop_assert_eq!(c[1].clone(), h.into());
            for i in 2..=n {
                prop_assert_eq!(c[i].clone(), &c[i - 1] * h - &c[i - 2]);
            }
        }

        #[test]
        fn lifting_by_regular_elements(d in 0u32..5, h in 2u32..10) {
            let mut p = closed_form_theorem(0, h);
            for _ in 0..d {
                p = rule_a(&p, false);
            }
            prop_assert_eq!(p, closed_form_theorem(d, h));
        }
    }
}
