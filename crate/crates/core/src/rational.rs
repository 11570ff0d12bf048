//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// `p/q` in lowest terms with `q > 0`, integers included (`3/1`).
pub fn format_rat(v: &Rat) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Accepts `p/q` or a bare integer `p`. Rejects a zero denominator.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn to_f64(v: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range
        let sign = if v.is_negative() { -1.0 } else { 1.0 };
        sign * f64::INFINITY
    })
}

/// Catalan number `C_n` as an exact integer.
pub fn catalan(n: usize) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    c
}

/// Coefficient of a length-`n` word in the Moebius series:
/// `(-1)^(n+1) * C_(n-1)`.
pub fn moebius_coefficient(n: usize) -> Rat {
    assert!(n >= 1);
    let c = Rat::from_integer(catalan(n - 1));
    if n % 2 == 1 {
        c
    } else {
        -c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_with_unit_denominator() {
        assert_eq!(format_rat(&int(3)), "3/1");
        assert_eq!(format_rat(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rat(&rat(3, -6)), "-1/2");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rat("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rat(" -3 "), Some(int(-3)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn catalan_numbers() {
        let got: Vec<BigInt> = (0..8).map(catalan).collect();
        let want: Vec<BigInt> = [1, 1, 2, 5, 14, 42, 132, 429]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn moebius_signs() {
        let got: Vec<Rat> = (1..=5).map(moebius_coefficient).collect();
        assert_eq!(got, vec![int(1), int(-1), int(2), int(-5), int(14)]);
    }
}
