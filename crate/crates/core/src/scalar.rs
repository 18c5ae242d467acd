//! Exact rational scalars and the combinatorial coefficients used throughout.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`. No decimal points: floats never enter the system.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}: expected \"num/den\" or an integer"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("invalid rational {text:?}: zero denominator")));
    }
    Ok(Scalar::new(num, den))
}

/// `"num/den"`, or just `"num"` for integers.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Always `"num/den"`, the JSON wire form.
pub fn scalar_to_wire(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Falling factorial `n (n-1) ... (n-k+1)`; empty product is 1.
pub fn falling_factorial(n: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k as i64 {
        acc *= BigInt::from(n - j);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Generalized binomial coefficient `n choose i` for any integer `n`.
pub fn gen_binomial(n: i64, i: u64) -> Scalar {
    Scalar::new(falling_factorial(n, i), factorial(i))
}

/// Same as [`gen_binomial`] but as an integer; the value is always integral.
pub fn gen_binomial_int(n: i64, i: u64) -> BigInt {
    falling_factorial(n, i) / factorial(i)
}

/// `(-1)^k` as a scalar.
pub fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(3, 3), int(1));
        // (-1)(-2)/2
        assert_eq!(gen_binomial(-1, 2), int(1));
        assert_eq!(gen_binomial(2, 5), int(0));
        assert_eq!(gen_binomial(-1, 3), int(-1));
        assert_eq!(gen_binomial(7, 0), int(1));
        assert_eq!(gen_binomial(-3, 0), int(1));
    }

    #[test]
    fn binomial_matches_pascal_for_negative_tops() {
        // C(n, i) = C(n-1, i) + C(n-1, i-1) holds for all integers n.
        for n in -8i64..8 {
            for i in 1..7u64 {
                assert_eq!(gen_binomial(n, i), gen_binomial(n - 1, i) + gen_binomial(n - 1, i - 1));
            }
        }
    }

    #[test]
    fn scalar_text_roundtrip() {
        for s in ["0", "-3", "1/2", "-7/12", "26"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("4/8").unwrap(), ratio(1, 2));
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert_eq!(scalar_to_wire(&int(3)), "3/1");
    }
}
