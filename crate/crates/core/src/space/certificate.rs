use std::fmt;

use serde::{Deserialize, Serialize};

use super::{distance, interval_closure, DistanceResult};
use crate::braid::{self, BraidWord};
use crate::cone::{conjugate_cone, dd_sign, ConeDescriptor, ConeOracle};
use crate::convex::ConvexPredicate;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::{Budgets, Sign};

/// Replayable evidence emitted by the scans. Each variant carries the descriptors
/// needed to rebuild its oracles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `element = y_{i_1} ⋯ y_{i_m}`, with the factors named `y1`, `y2`, ...
    SemigroupWitness { n: usize, element: String, witness: Vec<String> },
    /// `f < g < h` with `f, h` in the subgroup and `g` outside it.
    ConvexityCounterexample { cone: ConeDescriptor, convex: ConvexPredicate, f: String, g: String, h: String },
    /// `0 < d(P, hPh^-1) <= 2^-target_radius`.
    AccumulationWitness { cone: ConeDescriptor, conjugator: String, target_radius: usize, distance: DistanceResult },
    /// A positive `element` strictly below the candidate least positive `epsilon`.
    DensityWitness { cone: ConeDescriptor, epsilon: String, element: String },
    IntervalClosureReport {
        cone: ConeDescriptor,
        g: String,
        radius: usize,
        k_max: u32,
        members: Vec<String>,
        stabilizing: Vec<bool>,
        all_stabilize: bool,
    },
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("certificate does not replay: {what}")))
    }
}

impl Certificate {
    /// Re-evaluates the payload from scratch. Returns an error describing the first claim
    /// that fails.
    pub fn replay(&self, budgets: &Budgets) -> Result<()> {
        match self {
            Certificate::SemigroupWitness { n, element, witness } => {
                let g = BraidWord::parse(*n, element)?;
                let mut prod = BraidWord::identity(*n);
                for name in witness {
                    let i: usize = name
                        .strip_prefix('y')
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad generator name `{name}`")))?;
                    prod = prod.concat(&super::dd_generator(*n, i)?)?;
                }
                let steps = budgets.reduction_steps;
                check(braid::braid_equal(&prod, &g, steps)?, "product differs from the element")?;
                check(dd_sign(&braid::main_sign(&g, steps)?) == Sign::Positive, "element is not DD-positive")
            }
            Certificate::ConvexityCounterexample { cone, convex, f, g, h } => {
                let p = ConeOracle::build(cone, budgets)?;
                let grp = p.group();
                let c = convex.bind(grp)?;
                let (f, g, h) = (grp.parse(f)?, grp.parse(g)?, grp.parse(h)?);
                check(c.contains(&f)? && c.contains(&h)?, "f or h outside the subgroup")?;
                check(!c.contains(&g)?, "g inside the subgroup")?;
                check(p.sign(&grp.left_quotient(&f, &g)?)? == Sign::Positive, "f < g fails")?;
                check(p.sign(&grp.left_quotient(&g, &h)?)? == Sign::Positive, "g < h fails")
            }
            Certificate::AccumulationWitness { cone, conjugator, target_radius, distance: claimed } => {
                let p = ConeOracle::build(cone, budgets)?;
                let h = p.group().parse(conjugator)?;
                let q = conjugate_cone(&p, &h);
                let d = distance(&p, &q, claimed.resolution)?;
                check(&d == claimed, "distance differs")?;
                check(d.exact && d.agree_radius >= *target_radius, "distance outside (0, 2^-target]")
            }
            Certificate::DensityWitness { cone, epsilon, element } => {
                let p = ConeOracle::build(cone, budgets)?;
                let grp = p.group();
                let (e, g) = (grp.parse(epsilon)?, grp.parse(element)?);
                check(p.sign(&e)? == Sign::Positive, "epsilon is not positive")?;
                check(p.sign(&g)? == Sign::Positive, "element is not positive")?;
                check(p.sign(&grp.left_quotient(&e, &g)?)? == Sign::Negative, "element is not below epsilon")
            }
            Certificate::IntervalClosureReport { cone, g, radius, k_max, .. } => {
                let p = ConeOracle::build(cone, budgets)?;
                let g = p.group().parse(g)?;
                check(&interval_closure(&p, &g, *radius, *k_max)? == self, "report differs")
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SemigroupWitness { .. } => "semigroup_witness",
            Certificate::ConvexityCounterexample { .. } => "convexity_counterexample",
            Certificate::AccumulationWitness { .. } => "accumulation_witness",
            Certificate::DensityWitness { .. } => "density_witness",
            Certificate::IntervalClosureReport { .. } => "interval_closure_report",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&s)
    }
}

pub(crate) fn name(g: &GroupElement) -> String {
    g.to_string()
}
