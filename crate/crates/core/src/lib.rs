//! Computable spaces of left orderings.
//!
//! Exact positive-cone oracles for `Z^k`, the braid groups `B_n` and the Klein bottle
//! group, together with finite-resolution tools on the space of orderings: sign vectors
//! on Cayley balls, the ultrametric `d(P, Q) = 2^{-r}`, constraint-based census of
//! cylinder classes, and certificate-producing scans.

pub mod braid;
pub mod cone;
pub mod convex;
pub mod budget;
pub mod error;
pub mod group;
pub mod lattice;
pub mod space;
pub mod suite;

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

pub use budget::Budgets;
pub use error::{Error, Result};
pub use group::{Ball, Family, Group, GroupContext, GroupElement};

/// Trichotomy value of a cone on an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    pub fn from_i64(x: i64) -> Sign {
        match x.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i64((self.to_i8() * rhs.to_i8()) as i64)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}
