//! Exact rationals and their text encoding.
//!
//! Every scalar is a `BigRational`, which keeps itself in lowest terms with a
//! positive denominator after each operation. On the wire a rational is the
//! string `"num/den"` (denominator always written, even when it is 1).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"n/d"` or a bare integer `"n"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Decimal approximation with `digits` fractional digits, rounded half away
/// from zero. Only used for plotting output.
pub fn rat_to_decimal(r: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rat::from_integer(scale.clone());
    let (q, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let mut q = q;
    if rem * BigInt::from(2) >= *scaled.denom() {
        q += BigInt::one();
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if r.is_negative() && !q.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits
    )
}

pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_opt_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&rat_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rat>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form_always_has_denominator() {
        assert_eq!(rat_to_string(&rat(3)), "3/1");
        assert_eq!(rat_to_string(&ratio(-4, 6)), "-2/3");
        assert_eq!(rat_to_string(&ratio(4, -6)), "-2/3");
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!(parse_rat("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7));
        assert_eq!(parse_rat("2/4").unwrap(), ratio(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(rat_to_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(rat_to_decimal(&ratio(2, 3), 4), "0.6667");
        assert_eq!(rat_to_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(rat_to_decimal(&rat(-2), 3), "-2.000");
        assert_eq!(rat_to_decimal(&ratio(-1, 1000), 2), "0.00");
        assert_eq!(rat_to_decimal(&ratio(7, 2), 0), "4");
    }
}
