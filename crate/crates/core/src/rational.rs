//! Exact rational coefficients and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn sign(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `"p/q"` with `q > 0` in lowest terms, or `"p"` when integral.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let bad = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let s = s.trim();
    let (num, den) = match s.find('/') {
        Some(i) => (&s[..i], Some((i + 1, &s[i + 1..]))),
        None => (s, None),
    };
    let numer: BigInt = num.parse().map_err(|_| bad(0, "expected an integer numerator"))?;
    let denom: BigInt = match den {
        Some((pos, d)) => d.parse().map_err(|_| bad(pos, "expected an integer denominator"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad(s.len(), "zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

pub mod serde_string {
    //! Serializes a [`Rational`] as its canonical string.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        assert_eq!(format(&Rational::new(BigInt::from(6), BigInt::from(-4))), "-3/2");
        assert_eq!(format(&int(8)), "8");
        assert_eq!(parse("10/4").unwrap(), Rational::new(5.into(), 2.into()));
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert!(matches!(parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1/x"), Err(Error::Parse { position: 2, .. })));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), Rational::new(1.into(), 4.into()));
        assert_eq!(pow2(0), int(1));
    }
}
