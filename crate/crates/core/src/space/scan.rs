//! Ball scans that produce certificates or pass verdicts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::certificate::name;
use super::{distance_on, signs_on, Certificate};
use crate::cone::{conjugate_cone, ConeOracle, ConvexityCertificate};
use crate::convex::ConvexPredicate;
use crate::error::{Error, Result};
use crate::group::{Ball, GroupElement};
use crate::Sign;

#[derive(Debug, Clone)]
pub enum ConvexityOutcome {
    Pass(ConvexityCertificate),
    Violation(Certificate),
}

/// Scans `f < g < h` with `f, h` in `C ∩ Ball(r) ∪ {1}` and `g` in `Ball(r) \ C`. The
/// identity is tried last among the candidates for `f` and `h`.
pub fn convexity_check(p: &ConeOracle, convex: &ConvexPredicate, r: usize) -> Result<ConvexityOutcome> {
    let group = p.group();
    let c = convex.bind(group)?;
    let ball = group.ball(r)?;
    let mut members = Vec::new();
    let mut outside = Vec::new();
    for g in ball.elements() {
        if c.contains(g)? {
            members.push(g.clone());
        } else {
            outside.push(g);
        }
    }
    members.push(group.identity());
    for g in outside {
        let mut f_found = None;
        for f in &members {
            if p.sign(&group.left_quotient(f, g)?)? == Sign::Positive {
                f_found = Some(f);
                break;
            }
        }
        let Some(f) = f_found else { continue };
        for h in &members {
            if p.sign(&group.left_quotient(g, h)?)? == Sign::Positive {
                return Ok(ConvexityOutcome::Violation(Certificate::ConvexityCounterexample {
                    cone: p.descriptor().clone(),
                    convex: convex.clone(),
                    f: name(f),
                    g: name(g),
                    h: name(h),
                }));
            }
        }
    }
    Ok(ConvexityOutcome::Pass(ConvexityCertificate {
        base: p.descriptor().clone(),
        convex: convex.clone(),
        radius: r,
    }))
}

#[derive(Debug, Clone)]
pub enum DiscretenessOutcome {
    /// Every positive element of the ball is `>= ε`.
    Pass { checked: usize },
    Witness(Certificate),
}

pub fn discreteness_check(p: &ConeOracle, eps: &GroupElement, r: usize) -> Result<DiscretenessOutcome> {
    if p.sign(eps)? != Sign::Positive {
        return Err(Error::Precondition(format!("candidate {eps} is not positive")));
    }
    let group = p.group();
    let ball = group.ball(r)?;
    let mut checked = 0;
    for g in ball.elements() {
        if p.sign(g)? != Sign::Positive || group.equal(g, eps)? {
            continue;
        }
        checked += 1;
        if p.sign(&group.left_quotient(eps, g)?)? == Sign::Negative {
            return Ok(DiscretenessOutcome::Witness(Certificate::DensityWitness {
                cone: p.descriptor().clone(),
                epsilon: name(eps),
                element: name(g),
            }));
        }
    }
    Ok(DiscretenessOutcome::Pass { checked })
}

/// Looks for a conjugator `h` with `0 < d(P, hPh^-1) <= 2^-target_radius`, comparing
/// the cones on `Ball(resolution)`. Conjugators are taken in ball order.
pub fn accumulation_scan(
    p: &Arc<ConeOracle>,
    conjugators: &Ball,
    target_radius: usize,
    resolution: usize,
) -> Result<Option<Certificate>> {
    if conjugators.family() != p.family() {
        return Err(Error::IncompatibleGroups(format!(
            "conjugators from {} for a cone on {}",
            conjugators.family(),
            p.family()
        )));
    }
    if resolution <= target_radius {
        return Ok(None);
    }
    let ball = p.group().ball(resolution)?;
    let p_signs = signs_on(p, &ball)?;
    for h in conjugators.elements() {
        let q = conjugate_cone(p, h);
        let d = distance_on(p, &q, &ball, Some(&p_signs))?;
        if d.exact && d.agree_radius >= target_radius {
            return Ok(Some(Certificate::AccumulationWitness {
                cone: p.descriptor().clone(),
                conjugator: name(h),
                target_radius,
                distance: d,
            }));
        }
    }
    Ok(None)
}

/// Elements `h` of `Ball(r)` with `g^-k <= h <= g^k`, and whether each fixes the sign
/// vector of `P` at radius `r` under conjugation.
pub fn interval_closure(p: &Arc<ConeOracle>, g: &GroupElement, r: usize, k_max: u32) -> Result<Certificate> {
    if p.sign(g)? != Sign::Positive {
        return Err(Error::Precondition(format!("{g} is not positive")));
    }
    let group = p.group();
    let ball = group.ball(r)?;
    let top = group.pow(g, k_max as i64)?;
    let bottom = group.invert(&top);
    let p_signs = signs_on(p, &ball)?;
    let mut members = Vec::new();
    let mut stabilizing = Vec::new();
    for h in ball.elements() {
        let above = p.sign(&group.left_quotient(&bottom, h)?)? != Sign::Negative;
        let below = p.sign(&group.left_quotient(h, &top)?)? != Sign::Negative;
        if above && below {
            let q = conjugate_cone(p, h);
            members.push(name(h));
            stabilizing.push(signs_on(&q, &ball)? == p_signs);
        }
    }
    let all_stabilize = stabilizing.iter().all(|&s| s);
    Ok(Certificate::IntervalClosureReport {
        cone: p.descriptor().clone(),
        g: name(g),
        radius: r,
        k_max,
        members,
        stabilizing,
        all_stabilize,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderPropertyReport {
    pub radius: usize,
    pub n_max: u32,
    /// Positive pairs `(g, h)` with `g < h g^n` failing for every `n <= n_max`.
    pub conradian_violations: Vec<(String, String)>,
    /// Pairs `(g, h)` with `h` positive and `g h g^-1` negative.
    pub biorder_violations: Vec<(String, String)>,
    /// Elements whose conjugate cone agrees with `P` on the ball.
    pub stabilizer_elements: Vec<String>,
}

struct PairScan {
    conradian: Vec<(String, String)>,
    biorder: Vec<(String, String)>,
}

fn scan_pairs(p: &ConeOracle, ball: &Ball, members: &[usize], signs: &[Sign], n_max: u32) -> Result<PairScan> {
    let group = p.group();
    let mut conradian = Vec::new();
    let mut biorder = Vec::new();
    for &i in members {
        let g = ball.element(i);
        let g_inv = group.invert(g);
        for &j in members {
            let h = ball.element(j);
            if signs[j] == Sign::Positive && p.sign(&group.multiply(&group.multiply(g, h)?, &g_inv)?)? == Sign::Negative {
                biorder.push((name(g), name(h)));
            }
            if signs[i] == Sign::Positive && signs[j] == Sign::Positive {
                let mut x = group.multiply(&g_inv, h)?;
                let mut ok = false;
                for _ in 0..n_max {
                    x = group.multiply(&x, g)?;
                    if p.sign(&x)? == Sign::Positive {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    conradian.push((name(g), name(h)));
                }
            }
        }
    }
    Ok(PairScan { conradian, biorder })
}

pub fn order_property_scan(p: &Arc<ConeOracle>, r: usize, n_max: u32) -> Result<OrderPropertyReport> {
    let ball = p.group().ball(r)?;
    let signs = signs_on(p, &ball)?;
    let all: Vec<usize> = (0..ball.len()).collect();
    let scan = scan_pairs(p, &ball, &all, &signs, n_max)?;
    let mut stabilizer_elements = Vec::new();
    for h in ball.elements() {
        if signs_on(&conjugate_cone(p, h), &ball)? == signs {
            stabilizer_elements.push(name(h));
        }
    }
    Ok(OrderPropertyReport {
        radius: r,
        n_max,
        conradian_violations: scan.conradian,
        biorder_violations: scan.biorder,
        stabilizer_elements,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoulLevel {
    pub convex: ConvexPredicate,
    pub members: usize,
    pub convexity_pass: bool,
    pub convexity_counterexample: Option<Certificate>,
    pub conradian_violations: usize,
    pub biorder_violations: usize,
}

/// Per-level scans along a chain of candidate convex subgroups. All verdicts hold at the
/// stated radius only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoulReport {
    pub radius: usize,
    pub n_max: u32,
    pub levels: Vec<SoulLevel>,
    pub largest_convex: Option<usize>,
    pub largest_conradian: Option<usize>,
    pub largest_biordered: Option<usize>,
    pub note: String,
}

pub fn soul_estimate(p: &Arc<ConeOracle>, chain: &[ConvexPredicate], r: usize, n_max: u32) -> Result<SoulReport> {
    let ball = p.group().ball(r)?;
    let signs = signs_on(p, &ball)?;
    let mut levels = Vec::new();
    for pred in chain {
        let c = pred.bind(p.group())?;
        let mut members = Vec::new();
        for (i, g) in ball.elements().iter().enumerate() {
            if c.contains(g)? {
                members.push(i);
            }
        }
        let (pass, counterexample) = match convexity_check(p, pred, r)? {
            ConvexityOutcome::Pass(_) => (true, None),
            ConvexityOutcome::Violation(cert) => (false, Some(cert)),
        };
        let scan = scan_pairs(p, &ball, &members, &signs, n_max)?;
        levels.push(SoulLevel {
            convex: pred.clone(),
            members: members.len(),
            convexity_pass: pass,
            convexity_counterexample: counterexample,
            conradian_violations: scan.conradian.len(),
            biorder_violations: scan.biorder.len(),
        });
    }
    let last = |f: &dyn Fn(&SoulLevel) -> bool| levels.iter().rposition(f);
    let largest_convex = last(&|l| l.convexity_pass);
    let largest_conradian = last(&|l| l.convexity_pass && l.conradian_violations == 0);
    let largest_biordered = last(&|l| l.convexity_pass && l.biorder_violations == 0);
    Ok(SoulReport {
        radius: r,
        n_max,
        levels,
        largest_convex,
        largest_conradian,
        largest_biordered,
        note: format!("finite-resolution estimate on Ball({r})"),
    })
}
