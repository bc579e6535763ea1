use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative rational valuation or `+∞`. Ordered with `∞` maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValQ {
    Finite(Ratio<u64>),
    Infinite,
}

impl ValQ {
    pub fn new(num: u64, den: u64) -> ValQ {
        ValQ::Finite(Ratio::new(num, den))
    }

    pub fn int(v: u64) -> ValQ {
        ValQ::Finite(Ratio::from_integer(v))
    }

    pub fn zero() -> ValQ {
        ValQ::Finite(Ratio::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ValQ::Infinite)
    }

    pub fn ratio(&self) -> Option<Ratio<u64>> {
        match self {
            ValQ::Finite(r) => Some(*r),
            ValQ::Infinite => None,
        }
    }

    pub fn parse(s: &str) -> Result<ValQ> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ValQ::Infinite);
        }
        let bad = || Error::Parse(format!("invalid valuation {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if b == 0 {
                    return Err(bad());
                }
                Ok(ValQ::new(a, b))
            }
            None => Ok(ValQ::int(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl std::ops::Add for ValQ {
    type Output = ValQ;
    fn add(self, rhs: ValQ) -> ValQ {
        match (self, rhs) {
            (ValQ::Finite(a), ValQ::Finite(b)) => ValQ::Finite(a + b),
            _ => ValQ::Infinite,
        }
    }
}

impl fmt::Display for ValQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValQ::Infinite => write!(f, "inf"),
            ValQ::Finite(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            ValQ::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for ValQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Valuation of an element known to finite precision: exact, or a lower
/// bound when the element vanishes to the known precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DvrVal {
    Exact(u32),
    AtLeast(u32),
}

impl DvrVal {
    pub fn exact(&self) -> Option<u32> {
        match self {
            DvrVal::Exact(v) => Some(*v),
            DvrVal::AtLeast(_) => None,
        }
    }

    /// The exact value, or the lower bound.
    pub fn floor(&self) -> u32 {
        match self {
            DvrVal::Exact(v) | DvrVal::AtLeast(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DvrVal::Exact(_))
    }

    /// Normalised so that `ν̃(p) = 1`.
    pub fn normalized(&self, e: u32) -> ValQ {
        ValQ::new(self.floor() as u64, e as u64)
    }
}

impl fmt::Display for DvrVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DvrVal::Exact(v) => write!(f, "{v}"),
            DvrVal::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

impl Serialize for DvrVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
