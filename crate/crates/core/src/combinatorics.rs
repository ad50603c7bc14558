//! Exact integer and rational building blocks.
//!
//! Everything here is exact: factorials and double factorials are
//! arbitrary-precision integers, every closed-form coefficient is a reduced
//! [`Rational`], and the radial constant `chi(n, l)` is returned as a
//! rational multiple of a power of pi.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};

/// Exact fraction over arbitrary-precision integers, always reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses the `"p/q"` / `"p"` form written by [`format_rational`].
///
/// Accepts an optional leading `-` on the numerator only, ASCII digits, and
/// a nonzero denominator. Unreduced input is accepted and reduced.
pub fn parse_rational(text: &str) -> Result<Rational> {
    fn digits(part: &str, what: &str, text: &str) -> Result<BigInt> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid {what} in fraction {text:?}")));
        }
        BigInt::from_str(part).map_err(|e| Error::Parse(format!("{e} in fraction {text:?}")))
    }

    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (
            digits(n, "numerator", text)?,
            digits(d, "denominator", text)?,
        ),
        None => (digits(body, "integer", text)?, BigInt::one()),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!(
            "zero denominator in fraction {text:?}"
        )));
    }
    let numer = if negative { -numer } else { numer };
    Ok(Rational::new(numer, denom))
}

/// An exact quantity `value * pi^pi_power * i^i_power`.
///
/// `i_power` is kept in `0..4` but is otherwise not folded into the sign of
/// `value`, so the phase of a transform channel stays visible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaled {
    pub value: Rational,
    pub pi_power: i32,
    pub i_power: u8,
}

impl PiScaled {
    pub fn new(value: Rational, pi_power: i32, i_power: i64) -> Self {
        Self {
            value,
            pi_power,
            i_power: i_power.rem_euclid(4) as u8,
        }
    }

    pub fn rational(value: Rational) -> Self {
        Self::new(value, 0, 0)
    }

    /// Returns the real coefficient and whether a bare factor `i` remains
    /// after folding `i^2 = -1` into the sign.
    pub fn folded(&self) -> (Rational, bool) {
        match self.i_power {
            0 => (self.value.clone(), false),
            1 => (self.value.clone(), true),
            2 => (-self.value.clone(), false),
            _ => (-self.value.clone(), true),
        }
    }

    /// Equality of the represented number, ignoring how the sign is split
    /// between `value` and `i_power`.
    pub fn same_value(&self, other: &PiScaled) -> bool {
        if self.value.is_zero() || other.value.is_zero() {
            return self.value.is_zero() && other.value.is_zero();
        }
        self.pi_power == other.pi_power && self.folded() == other.folded()
    }
}

impl std::ops::Mul for &PiScaled {
    type Output = PiScaled;

    fn mul(self, rhs: &PiScaled) -> PiScaled {
        PiScaled::new(
            &self.value * &rhs.value,
            self.pi_power + rhs.pi_power,
            i64::from(self.i_power) + i64::from(rhs.i_power),
        )
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))?;
        match self.pi_power {
            0 => {}
            1 => write!(f, " pi")?,
            p => write!(f, " pi^{p}")?,
        }
        match self.i_power {
            0 => Ok(()),
            1 => write!(f, " i"),
            p => write!(f, " i^{p}"),
        }
    }
}

// Callers guarantee k >= -1.
pub(crate) fn dfact(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

pub(crate) fn fact(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, j| acc * j)
}

/// `k!!` for `k >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(domain(format!(
            "double factorial requires k >= -1, got {k}"
        )));
    }
    Ok(dfact(k))
}

pub fn factorial(k: u64) -> BigInt {
    fact(k)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

fn sign(half_steps: u32) -> BigInt {
    if half_steps.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub(crate) fn check_pair(upper: u32, lower: u32, what: &str) -> Result<()> {
    if lower > upper {
        return Err(domain(format!("{what}: need {lower} <= {upper}")));
    }
    if !(upper - lower).is_multiple_of(2) {
        return Err(domain(format!(
            "{what}: {upper} and {lower} must have the same parity"
        )));
    }
    Ok(())
}

/// Coefficient of `X^{L,n}` in the angular-momentum-`ell` component of the
/// rank-`L` unit-vector monomial.
pub fn decomp_coefficient(rank: u32, ell: u32, n: u32) -> Result<Rational> {
    check_pair(rank, ell, "decomp_coefficient (L, l)")?;
    check_pair(ell, n, "decomp_coefficient (l, n)")?;
    let (big_l, l, n) = (i64::from(rank), i64::from(ell), i64::from(n));

    let prefactor = Rational::new(
        (2 * l + 1) * dfact(big_l - l - 1),
        fact((big_l - l) as u64) * dfact(big_l + l + 1),
    );
    let term = Rational::new(
        sign(((l - n) / 2) as u32) * fact((big_l - n) as u64) * dfact(l + n - 1) * dfact(l - n - 1),
        fact((l - n) as u64) * dfact(big_l - n - 1),
    );
    Ok(prefactor * term)
}

/// Coefficient of `X^{L,n}` in the maximal (`ell = L`) component:
/// `(-1)^((L-n)/2) (L+n-1)!! / (2L-1)!!`.
pub fn max_component_coefficient(rank: u32, n: u32) -> Result<Rational> {
    check_pair(rank, n, "max_component_coefficient (L, n)")?;
    let (big_l, n) = (i64::from(rank), i64::from(n));
    Ok(Rational::new(
        sign(((big_l - n) / 2) as u32) * dfact(big_l + n - 1),
        dfact(2 * big_l - 1),
    ))
}

/// Proportionality constant of the symmetrized product
/// `sym(X^{L,l} X^{N,n}) = kappa X^{L+N, l+n}`.
pub fn kappa(rank_a: u32, ell: u32, rank_b: u32, n: u32) -> Result<Rational> {
    check_pair(rank_a, ell, "kappa (L, l)")?;
    check_pair(rank_b, n, "kappa (N, n)")?;
    let (big_l, l, big_n, n) = (
        u64::from(rank_a),
        u64::from(ell),
        u64::from(rank_b),
        u64::from(n),
    );
    let deltas = big_l + big_n - l - n;
    Ok(Rational::new(
        binomial(deltas, big_l - l)
            * binomial(l + n, l)
            * dfact(big_l as i64 - l as i64 - 1)
            * dfact(big_n as i64 - n as i64 - 1),
        dfact(deltas as i64 - 1),
    ))
}

/// `Gamma(k/2)` for `k >= 1` as `(rational, carries_sqrt_pi)`.
fn gamma_half(k: u64) -> (Rational, bool) {
    debug_assert!(k >= 1);
    if k.is_multiple_of(2) {
        (Rational::from_integer(fact(k / 2 - 1)), false)
    } else {
        let m = (k - 1) / 2;
        (
            Rational::new(dfact(2 * m as i64 - 1), BigInt::one() << m),
            true,
        )
    }
}

fn pow2(exp: i64) -> Rational {
    if exp >= 0 {
        Rational::from_integer(BigInt::one() << exp as u64)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-exp) as u64)
    }
}

/// Exact radial constant `2^(n+1) sqrt(pi) Gamma((l+3+n)/2) / Gamma((l-n)/2)`
/// for integer `n` in the open window `-(l+3) < n < l`.
///
/// The result is a rational multiple of `pi` when `l - n` is even and a pure
/// rational otherwise.
pub fn chi(n: i64, ell: u32) -> Result<PiScaled> {
    let l = i64::from(ell);
    if n >= l {
        return Err(Error::Divergent { n, ell });
    }
    if n <= -(l + 3) {
        return Err(Error::NotIntegrable { n, ell });
    }
    let (upper, upper_sqrt) = gamma_half((l + 3 + n) as u64);
    let (lower, lower_sqrt) = gamma_half((l - n) as u64);
    let sqrt_pi_count = 1 + i32::from(upper_sqrt) - i32::from(lower_sqrt);
    debug_assert!(sqrt_pi_count == 0 || sqrt_pi_count == 2);
    Ok(PiScaled::new(
        pow2(n + 1) * upper / lower,
        sqrt_pi_count / 2,
        0,
    ))
}

/// Number of perfect pairings of `m` points, `(m-1)!!` for even `m`.
pub fn pairing_count(m: u64) -> BigInt {
    if m % 2 == 1 {
        BigInt::zero()
    } else {
        dfact(m as i64 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), int(1));
        assert_eq!(double_factorial(0).unwrap(), int(1));
        assert_eq!(double_factorial(5).unwrap(), int(15));
        assert_eq!(double_factorial(8).unwrap(), int(384));
        assert!(matches!(double_factorial(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(10, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(12, 6), int(924));
    }

    #[test]
    fn decomp_coefficient_worked_examples() {
        assert_eq!(decomp_coefficient(3, 3, 1).unwrap(), rational(-1, 5));
        assert_eq!(decomp_coefficient(4, 4, 0).unwrap(), rational(1, 35));
        assert_eq!(decomp_coefficient(5, 1, 1).unwrap(), rational(1, 35));
        assert_eq!(decomp_coefficient(4, 2, 0).unwrap(), rational(-2, 21));
        assert_eq!(decomp_coefficient(4, 2, 2).unwrap(), rational(1, 7));
        assert_eq!(decomp_coefficient(5, 3, 3).unwrap(), rational(1, 9));
        assert_eq!(decomp_coefficient(5, 3, 1).unwrap(), rational(-2, 45));
    }

    #[test]
    fn decomp_coefficient_rejects_bad_arguments() {
        assert!(decomp_coefficient(4, 3, 1).is_err());
        assert!(decomp_coefficient(4, 2, 1).is_err());
        assert!(decomp_coefficient(3, 5, 1).is_err());
        assert!(decomp_coefficient(4, 2, 4).is_err());
    }

    #[test]
    fn max_component_coefficient_values() {
        assert_eq!(max_component_coefficient(4, 2).unwrap(), rational(-1, 7));
        assert_eq!(max_component_coefficient(5, 1).unwrap(), rational(1, 63));
        for l in 0..15 {
            assert_eq!(max_component_coefficient(l, l).unwrap(), rational(1, 1));
        }
        assert!(max_component_coefficient(4, 1).is_err());
    }

    #[test]
    fn max_component_matches_general_formula() {
        for l in 0..=20u32 {
            for n in (l % 2..=l).step_by(2) {
                assert_eq!(
                    max_component_coefficient(l, n).unwrap(),
                    decomp_coefficient(l, l, n).unwrap(),
                    "L={l} n={n}"
                );
            }
        }
    }

    #[test]
    fn initial_value_coefficients() {
        for l in 0..=20u32 {
            if l % 2 == 0 {
                assert_eq!(
                    decomp_coefficient(l, 0, 0).unwrap(),
                    Rational::new(int(1), dfact(i64::from(l) + 1))
                );
            } else {
                assert_eq!(
                    decomp_coefficient(l, 1, 1).unwrap(),
                    Rational::new(int(3), dfact(i64::from(l) + 2))
                );
            }
        }
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(2, 2, 2, 0).unwrap(), rational(1, 1));
        assert_eq!(kappa(2, 0, 2, 0).unwrap(), rational(2, 1));
        assert_eq!(kappa(1, 1, 1, 1).unwrap(), rational(2, 1));
        for l in 0..8u32 {
            for n in 0..8u32 {
                assert_eq!(
                    kappa(l, l, n, n).unwrap(),
                    rational_int(binomial(u64::from(l + n), u64::from(l)))
                );
            }
        }
        assert!(kappa(2, 1, 2, 0).is_err());
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(-2, 0).unwrap(), PiScaled::new(rational(1, 2), 1, 0));
        assert_eq!(chi(-1, 1).unwrap(), PiScaled::new(rational(1, 2), 1, 0));
        assert_eq!(chi(0, 2).unwrap(), PiScaled::new(rational(3, 2), 1, 0));
        // l - n odd: Gamma(1) / Gamma(1/2) * 2^0 sqrt(pi) = 1.
        assert_eq!(chi(-1, 0).unwrap(), PiScaled::rational(rational(1, 1)));
    }

    #[test]
    fn chi_pi_power_tracks_parity() {
        for l in 0..10u32 {
            for n in -(i64::from(l) + 2)..i64::from(l) {
                let c = chi(n, l).unwrap();
                let even = (i64::from(l) - n) % 2 == 0;
                assert_eq!(c.pi_power == 1, even, "n={n} l={l}");
                assert!(c.pi_power == 0 || c.pi_power == 1);
            }
        }
    }

    #[test]
    fn chi_errors_are_distinct() {
        assert_eq!(chi(0, 0), Err(Error::Divergent { n: 0, ell: 0 }));
        assert_eq!(chi(5, 2), Err(Error::Divergent { n: 5, ell: 2 }));
        assert_eq!(chi(-3, 0), Err(Error::NotIntegrable { n: -3, ell: 0 }));
        assert_eq!(chi(-7, 4), Err(Error::NotIntegrable { n: -7, ell: 4 }));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&rational(-1, 3)), "-1/3");
        assert_eq!(format_rational(&rational(4, 2)), "2");
        assert_eq!(parse_rational("-1/3").unwrap(), rational(-1, 3));
        assert_eq!(parse_rational("6/4").unwrap(), rational(3, 2));
        assert_eq!(parse_rational("0").unwrap(), rational(0, 1));
        for bad in [
            "", "-", "1/", "/2", "1/0", "1/-2", "+1", "1.5", " 1", "1/2/3", "--1",
        ] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn pi_scaled_folding() {
        let a = PiScaled::new(rational(3, 4), -1, 2);
        let b = PiScaled::new(rational(-3, 4), -1, 0);
        assert_ne!(a, b);
        assert!(a.same_value(&b));
        assert_eq!(PiScaled::new(rational(1, 1), 0, -1).i_power, 3);
        let prod = &PiScaled::new(rational(1, 2), 1, 1) * &PiScaled::new(rational(1, 2), -2, 3);
        assert_eq!(prod, PiScaled::new(rational(1, 4), -1, 0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rational_text_round_trips(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
                let r = rational(n, d);
                prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
            }

            #[test]
            fn double_factorial_recurrence(k in 1i64..60) {
                prop_assert_eq!(dfact(k), dfact(k - 2) * k);
            }
        }
    }
}
