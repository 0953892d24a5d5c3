//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a bare integer. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Lowest-terms text; integers print without a denominator.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn in_unit_interval(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}

pub fn ceil_to_grid(x: &Q, n: u64) -> Q {
    let n = BigInt::from(n);
    let scaled = x * Q::from_integer(n.clone());
    Q::new(scaled.ceil().to_integer(), n)
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for big integers as decimal strings.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim().parse().map_err(serde::de::Error::custom)
    }
}

pub mod serde_bigint_vec {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| r.trim().parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("4/8").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), qi(-3));
        assert_eq!(format_rational(&q(6, 4)), "3/2");
        assert_eq!(format_rational(&qi(2)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn grid_ceiling() {
        assert_eq!(ceil_to_grid(&q(2, 3), 4), q(3, 4));
        assert_eq!(ceil_to_grid(&q(1, 2), 2), q(1, 2));
        assert_eq!(ceil_to_grid(&q(1, 2), 1), qi(1));
        assert_eq!(ceil_to_grid(&qi(0), 5), qi(0));
    }
}
