//! Finite-resolution views of the space of left orderings.

mod census;
mod certificate;
mod dd;
mod scan;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::ConeOracle;
use crate::error::{Error, Result};
use crate::group::{Ball, Family};
use crate::Sign;

pub use census::{census, census_on, CensusQuery, CensusResult};
pub use certificate::Certificate;
pub use dd::{dd_generator, dd_generators, dd_isolation_witnesses, DdWitnessReport};
pub use scan::{
    accumulation_scan, convexity_check, discreteness_check, interval_closure, order_property_scan,
    soul_estimate, ConvexityOutcome, DiscretenessOutcome, OrderPropertyReport, SoulLevel, SoulReport,
};

/// Signs of a cone on every element of a Cayley ball, in ball order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector {
    pub family: Family,
    pub radius: usize,
    pub elements: Vec<String>,
    pub signs: Vec<Sign>,
}

impl SignVector {
    pub fn from_ball(ball: &Ball, signs: Vec<Sign>) -> Self {
        SignVector {
            family: ball.family(),
            radius: ball.radius(),
            elements: ball.elements().iter().map(|e| e.to_string()).collect(),
            signs,
        }
    }

    /// Compact `+`/`-` string.
    pub fn pattern(&self) -> String {
        self.signs.iter().map(|s| s.to_string()).collect()
    }

    /// Checks antisymmetry and in-ball product closure against `ball`.
    pub fn validate(&self, ball: &Ball) -> Result<()> {
        if self.signs.len() != ball.len() {
            return Err(Error::DimensionMismatch { expected: ball.len(), got: self.signs.len() });
        }
        let g = ball.group();
        for i in 0..ball.len() {
            if self.signs[i] == Sign::Zero || self.signs[ball.inverse_index(i)] != -self.signs[i] {
                return Err(Error::Inconsistent(format!("antisymmetry fails at {}", ball.element(i))));
            }
        }
        for i in 0..ball.len() {
            if !self.signs[i].is_positive() {
                continue;
            }
            for j in 0..ball.len() {
                if !self.signs[j].is_positive() {
                    continue;
                }
                let prod = g.multiply(ball.element(i), ball.element(j))?;
                if let Some(k) = ball.index_of(&prod)? {
                    if !self.signs[k].is_positive() {
                        return Err(Error::Inconsistent(format!(
                            "closure fails: {} and {} positive, product negative",
                            ball.element(i),
                            ball.element(j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, s)) in self.elements.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}:{s}")?;
        }
        Ok(())
    }
}

pub(crate) fn signs_on(p: &ConeOracle, ball: &Ball) -> Result<Vec<Sign>> {
    check_ball(p, ball)?;
    ball.elements().iter().map(|g| p.sign(g)).collect()
}

fn check_ball(p: &ConeOracle, ball: &Ball) -> Result<()> {
    if ball.family() != p.family() {
        return Err(Error::IncompatibleGroups(format!("ball of {} for a cone on {}", ball.family(), p.family())));
    }
    Ok(())
}

pub fn sign_vector(p: &ConeOracle, r: usize) -> Result<SignVector> {
    let ball = p.group().ball(r)?;
    sign_vector_on(p, &ball)
}

pub fn sign_vector_on(p: &ConeOracle, ball: &Ball) -> Result<SignVector> {
    Ok(SignVector::from_ball(ball, signs_on(p, ball)?))
}

/// Result of comparing two cones on nested balls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub agree_radius: usize,
    /// `2^-agree_radius`, rendered exactly.
    pub distance: String,
    pub resolution: usize,
    /// False when the cones agreed up to the resolution, so the distance is only an upper bound.
    pub exact: bool,
}

impl DistanceResult {
    pub fn new(agree_radius: usize, resolution: usize) -> Self {
        DistanceResult {
            agree_radius,
            distance: format!("2^-{agree_radius}"),
            resolution,
            exact: agree_radius < resolution,
        }
    }
}

pub fn distance(p: &ConeOracle, q: &ConeOracle, resolution: usize) -> Result<DistanceResult> {
    if resolution == 0 {
        return Err(Error::Precondition("resolution must be at least 1".into()));
    }
    if p.family() != q.family() {
        return Err(Error::IncompatibleGroups(format!("cones on {} and {}", p.family(), q.family())));
    }
    let ball = p.group().ball(resolution)?;
    distance_on(p, q, &ball, None)
}

/// Distance on a prebuilt ball, optionally reusing the signs of `p`.
pub(crate) fn distance_on(
    p: &ConeOracle,
    q: &ConeOracle,
    ball: &Ball,
    p_signs: Option<&[Sign]>,
) -> Result<DistanceResult> {
    for (i, g) in ball.elements().iter().enumerate() {
        let sp = match p_signs {
            Some(s) => s[i],
            None => p.sign(g)?,
        };
        if q.sign(g)? != sp {
            return Ok(DistanceResult::new(ball.length(i) - 1, ball.radius()));
        }
    }
    Ok(DistanceResult::new(ball.radius(), ball.radius()))
}
