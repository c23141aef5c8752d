//! Exact rational helpers.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational scalar used for all weight coordinates.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn to_int(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer())
}

pub fn to_ints(v: &[Q]) -> Option<Vec<i64>> {
    v.iter().map(to_int).collect()
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(q(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_qvec(s: &str) -> Result<Vec<Q>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Q>) -> i64 {
    it.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Compare two rationals exactly, treating them as signed quantities.
pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapter: integers as JSON numbers, non-integers as `"p/q"` strings.
pub mod serde_qvec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            if x.is_integer() {
                seq.serialize_element(&x.to_integer())?;
            } else {
                seq.serialize_element(&fmt_q(x))?;
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Q>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of integers or \"p/q\" strings")
            }
            fn visit_seq<A: de::SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<Q>, A::Error> {
                let mut out = Vec::new();
                while let Some(item) = seq.next_element::<serde_json::Value>()? {
                    let x = match item {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(q)
                            .ok_or_else(|| de::Error::custom("coordinate out of range"))?,
                        serde_json::Value::String(s) => parse_q(&s).map_err(de::Error::custom)?,
                        other => return Err(de::Error::custom(format!("bad coordinate {other}"))),
                    };
                    out.push(x);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a2_cartan() {
        let c = vec![qv(&[2, -1]), qv(&[-1, 2])];
        let inv = inverse(&c).unwrap();
        assert_eq!(inv, vec![vec![Q::new(2, 3), Q::new(1, 3)], vec![Q::new(1, 3), Q::new(2, 3)]]);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_q("-3/2").unwrap(), Q::new(-3, 2));
        assert_eq!(parse_qvec("(1, 2,-1/3)").unwrap(), vec![q(1), q(2), Q::new(-1, 3)]);
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
