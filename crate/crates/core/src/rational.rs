//! Exact rational arithmetic for priorities, discounts and objective values.

use alloc::format;
use alloc::string::{String, ToString};
use num_integer::Integer;
use num_traits::{One, Zero};

pub type Rational = num_rational::Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Parses `"3"`, `"-0.125"`, `"1.5e-3"` or `"2/3"` into an exact rational.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let mut numer: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let scale = exp - frac.len() as i32;
    let mut denom: i128 = 1;
    if scale >= 0 {
        numer = numer.checked_mul(10i128.checked_pow(scale as u32)?)?;
    } else {
        denom = 10i128.checked_pow((-scale) as u32)?;
    }
    if neg {
        numer = -numer;
    }
    Some(Rational::new(numer, denom))
}

/// Exact rational value of the shortest decimal that round-trips `x`.
pub fn from_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse(&format!("{x}"))
}

/// Decimal rendering when the denominator is a product of 2s and 5s.
pub fn to_decimal_string(r: &Rational) -> Option<String> {
    let mut d = *r.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return None;
    }
    let places = twos.max(fives);
    if places == 0 {
        return Some(r.numer().to_string());
    }
    let scale = 10i128.checked_pow(places)?;
    let scaled = r.numer().checked_mul(scale / r.denom())?;
    let neg = scaled < 0;
    let abs = scaled.unsigned_abs();
    let whole = abs / scale as u128;
    let frac = abs % scale as u128;
    let sign = if neg { "-" } else { "" };
    Some(format!(
        "{sign}{whole}.{frac:0width$}",
        width = places as usize
    ))
}

/// Renders as decimal when exact, otherwise as `p/q`.
pub fn to_string(r: &Rational) -> String {
    to_decimal_string(r).unwrap_or_else(|| format!("{}/{}", r.numer(), r.denom()))
}

/// Least common multiple of the denominators, or `None` on overflow.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<i128> {
    let mut l: i128 = 1;
    for v in values {
        let d = *v.denom();
        let g = l.gcd(&d);
        l = (l / g).checked_mul(d)?;
    }
    Some(l)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

#[cfg(feature = "serde")]
pub mod serde_rational {
    //! Serializes a [`Rational`] as a JSON number when it has an exact short
    //! decimal form and as a `"p/q"` string otherwise. Deserialization accepts
    //! integers, floats (read via their shortest decimal) and strings.
    use super::*;
    use core::fmt;
    use serde::de::{self, Visitor};
    use num_traits::ToPrimitive;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        if r.denom().is_one() {
            if let Some(n) = r.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        if let Some(dec) = to_decimal_string(r) {
            let digits = dec.chars().filter(|c| c.is_ascii_digit()).count();
            if digits <= 15 {
                if let Ok(v) = dec.parse::<f64>() {
                    return s.serialize_f64(v);
                }
            }
        }
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    pub struct RationalVisitor;

    impl<'de> Visitor<'de> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a number or a rational string such as \"3/4\"")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(int(v as i128))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(int(v as i128))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
            from_f64(v).ok_or_else(|| E::custom("non-finite rational"))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse(v).ok_or_else(|| E::custom(format!("cannot parse rational `{v}`")))
        }
    }

    pub mod vec {
        use super::*;
        use alloc::vec::Vec;
        use serde::de::SeqAccess;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            struct Item<'a>(&'a Rational);
            impl serde::Serialize for Item<'_> {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    super::serialize(self.0, s)
                }
            }
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&Item(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            struct SeqVisitor;
            impl<'de> Visitor<'de> for SeqVisitor {
                type Value = Vec<Rational>;
                fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                    f.write_str("a list of rationals")
                }
                fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                    struct Item(Rational);
                    impl<'de> serde::Deserialize<'de> for Item {
                        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                            super::deserialize(d).map(Item)
                        }
                    }
                    let mut out = Vec::new();
                    while let Some(Item(r)) = seq.next_element()? {
                        out.push(r);
                    }
                    Ok(out)
                }
            }
            d.deserialize_seq(SeqVisitor)
        }
    }
}
