//! Semigroup factorizations of DD-positive braids over the generators `y_i`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Certificate;
use crate::braid::{self, BraidWord, BurauKey};
use crate::cone::dd_sign;
use crate::error::{Error, Result};
use crate::group::{Family, Group, GroupElement};
use crate::{Budgets, Sign};

/// `y_i = (σ_i ⋯ σ_{n-1})^{(-1)^{i+1}}`, for `1 <= i < n`.
pub fn dd_generator(n: usize, i: usize) -> Result<BraidWord> {
    if i == 0 || i >= n {
        return Err(Error::Precondition(format!("y_{i} does not exist in B_{n}")));
    }
    let w = BraidWord::new(n, (i as i16..n as i16).collect())?;
    Ok(if i % 2 == 1 { w } else { w.inverse() })
}

pub fn dd_generators(n: usize) -> Result<Vec<BraidWord>> {
    (1..n).map(|i| dd_generator(n, i)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdWitnessReport {
    pub n: usize,
    pub radius: usize,
    pub max_len: usize,
    pub positive_elements: usize,
    pub witnesses: Vec<Certificate>,
    /// Positive elements with no factorization of length `<= max_len`.
    pub unresolved: Vec<String>,
}

impl DdWitnessReport {
    pub fn complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Breadth-first search for `g = y_{i_1} ⋯ y_{i_m}` with `m <= max_len`, peeling
/// generators from the left. Every proper suffix of a factorization is DD-positive, so
/// remainders that are not are pruned; remainders are deduplicated by the word problem.
fn factor(g: &BraidWord, gens_inv: &[BraidWord], max_len: usize, budgets: &Budgets) -> Result<Option<Vec<usize>>> {
    let steps = budgets.reduction_steps;
    let mut level: Vec<(BraidWord, Vec<usize>)> = vec![(braid::handle_reduce(g, steps)?, Vec::new())];
    let mut seen: HashMap<BurauKey, Vec<BraidWord>> = HashMap::new();
    let mut visited = 0usize;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, path) in &level {
            for (i, yi) in gens_inv.iter().enumerate() {
                let report = braid::main_sign(&yi.concat(w)?, steps)?;
                let mut p = path.clone();
                p.push(i);
                match dd_sign(&report) {
                    Sign::Zero => return Ok(Some(p)),
                    Sign::Negative => continue,
                    Sign::Positive => {}
                }
                let rem = report.reduced;
                let bucket = seen.entry(BurauKey::of(&rem)).or_default();
                let mut dup = false;
                for other in bucket.iter() {
                    if braid::braid_equal(other, &rem, steps)? {
                        dup = true;
                        break;
                    }
                }
                if dup {
                    continue;
                }
                bucket.push(rem.clone());
                visited += 1;
                if visited > budgets.frontier {
                    return Err(Error::BudgetExceeded(format!(
                        "semigroup search for {g} exceeded {} nodes",
                        budgets.frontier
                    )));
                }
                next.push((rem, p));
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(None)
}

pub fn dd_isolation_witnesses(n: usize, r: usize, max_len: usize, budgets: &Budgets) -> Result<DdWitnessReport> {
    if n < 2 {
        return Err(Error::Precondition("DD witnesses need n >= 2".into()));
    }
    let group = Group::new(Family::Braid { n }, *budgets)?;
    let ball = group.ball(r)?;
    let gens_inv: Vec<BraidWord> = dd_generators(n)?.iter().map(|y| y.inverse()).collect();
    let mut witnesses = Vec::new();
    let mut unresolved = Vec::new();
    let mut positive = 0;
    let mut budget_hit = None;
    for g in ball.elements() {
        let GroupElement::Braid(w) = g else { unreachable!("braid ball") };
        if dd_sign(&braid::main_sign(w, budgets.reduction_steps)?) != Sign::Positive {
            continue;
        }
        positive += 1;
        match factor(w, &gens_inv, max_len, budgets) {
            Ok(Some(path)) => witnesses.push(Certificate::SemigroupWitness {
                n,
                element: w.to_string(),
                witness: path.iter().map(|i| format!("y{}", i + 1)).collect(),
            }),
            Ok(None) => unresolved.push(w.to_string()),
            Err(e) if e.is_budget() => {
                budget_hit.get_or_insert(e);
                unresolved.push(w.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(e) = budget_hit {
        return Err(Error::BudgetExceeded(format!("{e}; unresolved: [{}]", unresolved.join("; "))));
    }
    Ok(DdWitnessReport { n, radius: r, max_len, positive_elements: positive, witnesses, unresolved })
}
