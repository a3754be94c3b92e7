//! Exact rationals and weight vectors in the ε-basis.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"` or `"0.75"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::MalformedWeight(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().map_err(|_| bad())?,
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let f = Q::new(f, den);
        let i = Q::from_integer(int);
        return Ok(if neg { i - f } else { i + f });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn serialize_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// A weight in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight { coords }
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![Q::zero(); n] }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Weight::new(xs.iter().map(|&x| q(x)).collect())
    }

    /// Each entry is `(numerator, denominator)`.
    pub fn from_fracs(xs: &[(i64, i64)]) -> Self {
        Weight::new(xs.iter().map(|&(n, d)| qf(n, d)).collect())
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Weight::zero(n);
        w.coords[i] = Q::one();
        w
    }

    /// Comma-separated rationals, optionally wrapped in parentheses.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Err(Error::MalformedWeight(format!("empty weight {s:?}")));
        }
        t.split(',').map(parse_q).collect::<Result<Vec<_>>>().map(Weight::new)
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Euclidean inner product. Panics on length mismatch.
    pub fn dot(&self, other: &Weight) -> Q {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight::new(self.coords.iter().map(|x| x * c).collect())
    }

    pub fn is_integral_vector(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn has_negative(&self) -> bool {
        self.coords.iter().any(|x| x.is_negative())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_q(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&fmt_q(c))?;
        }
        seq.end()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.len(), rhs.len(), "weight length mismatch");
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.coords.iter().map(|a| -a).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// Integer images of weights under a common scaling, for hot enumeration loops.
#[derive(Clone, Debug)]
pub struct Scaled {
    pub den: i64,
}

impl Scaled {
    pub fn for_weights<'a>(ws: impl IntoIterator<Item = &'a Weight>) -> Self {
        let d = lcm_denoms(ws.into_iter().flat_map(|w| w.coords.iter()));
        Scaled {
            den: d.to_i64().expect("denominator fits in i64"),
        }
    }

    pub fn down(&self, w: &Weight) -> Vec<i64> {
        let d = q(self.den);
        w.coords
            .iter()
            .map(|x| to_i64(&(x * &d)).expect("weight not on the scaled lattice"))
            .collect()
    }

    pub fn up(&self, v: &[i64]) -> Weight {
        Weight::new(v.iter().map(|&x| qf(x, self.den)).collect())
    }
}
