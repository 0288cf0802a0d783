//! Enumeration of consistent sign assignments on a ball.
//!
//! Variables are ball elements; fixing one fixes its inverse. Each in-ball product
//! `g h = k` gives the clause `g+ ∧ h+ → k+`. Search branches on the first unassigned
//! element in ball order, tries `+` before `-`, and runs unit propagation after every
//! assignment, so the output order is deterministic.

use serde::{Deserialize, Serialize};

use super::SignVector;
use crate::error::{Error, Result};
use crate::group::{Ball, Family, Group, GroupElement};
use crate::Sign;

#[derive(Debug, Clone)]
pub struct CensusQuery {
    pub group: Group,
    pub radius: usize,
    pub required_positive: Vec<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub family: Family,
    pub radius: usize,
    pub required_positive: Vec<String>,
    pub count: usize,
    pub nodes: u64,
    pub vectors: Vec<SignVector>,
}

pub fn census(q: &CensusQuery) -> Result<CensusResult> {
    let budgets = q.group.budgets();
    let limit = match q.group.family() {
        Family::Braid { .. } => budgets.census_radius_braid,
        _ => budgets.census_radius,
    };
    if q.radius > limit {
        return Err(Error::BallBudgetExceeded(format!("census radius {} exceeds {limit}", q.radius)));
    }
    let ball = q.group.ball(q.radius)?;
    let mut pins = Vec::new();
    for g in &q.required_positive {
        match ball.index_of(g)? {
            Some(i) => pins.push(i),
            None => return Err(Error::Precondition(format!("pinned element {g} is not in Ball({})", q.radius))),
        }
    }
    let (assignments, nodes) = census_on(&ball, &pins, budgets.census_nodes)?;
    let vectors: Vec<SignVector> = assignments.into_iter().map(|s| SignVector::from_ball(&ball, s)).collect();
    Ok(CensusResult {
        family: q.group.family(),
        radius: q.radius,
        required_positive: q.required_positive.iter().map(|g| g.to_string()).collect(),
        count: vectors.len(),
        nodes,
        vectors,
    })
}

struct Solver<'a> {
    inv: Vec<usize>,
    clauses: Vec<[usize; 3]>,
    watch: Vec<Vec<usize>>,
    val: Vec<i8>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    nodes: u64,
    node_budget: u64,
    out: &'a mut Vec<Vec<Sign>>,
}

impl Solver<'_> {
    fn assign(&mut self, i: usize, s: i8) -> bool {
        match self.val[i] {
            0 => {
                let j = self.inv[i];
                self.val[i] = s;
                self.val[j] = -s;
                self.trail.push(i);
                self.queue.push(i);
                self.queue.push(j);
                true
            }
            v => v == s,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            for w in 0..self.watch[x].len() {
                let [i, j, k] = self.clauses[self.watch[x][w]];
                let (a, b, c) = (self.val[i], self.val[j], self.val[k]);
                let ok = if a == 1 && b == 1 {
                    self.assign(k, 1)
                } else if a == 1 && c == -1 {
                    self.assign(j, -1)
                } else if b == 1 && c == -1 {
                    self.assign(i, -1)
                } else {
                    true
                };
                if !ok {
                    self.queue.clear();
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            self.val[i] = 0;
            self.val[self.inv[i]] = 0;
        }
    }

    fn search(&mut self) -> Result<()> {
        let Some(i) = self.val.iter().position(|&v| v == 0) else {
            self.out.push(self.val.iter().map(|&v| Sign::from_i64(v as i64)).collect());
            return Ok(());
        };
        for s in [1, -1] {
            self.nodes += 1;
            if self.nodes > self.node_budget {
                return Err(Error::BudgetExceeded(format!("census exceeded {} search nodes", self.node_budget)));
            }
            let mark = self.trail.len();
            if self.assign(i, s) && self.propagate() {
                self.search()?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// All consistent assignments on `ball` with the elements at `pins` positive, together
/// with the number of search nodes used.
pub fn census_on(ball: &Ball, pins: &[usize], node_budget: u64) -> Result<(Vec<Vec<Sign>>, u64)> {
    let n = ball.len();
    let group = ball.group();
    let mut clauses = Vec::new();
    let mut watch = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let prod = group.multiply(ball.element(i), ball.element(j))?;
            if let Some(k) = ball.index_of(&prod)? {
                let c = clauses.len();
                clauses.push([i, j, k]);
                for x in [i, j, k] {
                    if watch[x].last() != Some(&c) {
                        watch[x].push(c);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut solver = Solver {
        inv: (0..n).map(|i| ball.inverse_index(i)).collect(),
        clauses,
        watch,
        val: vec![0; n],
        trail: Vec::new(),
        queue: Vec::new(),
        nodes: 0,
        node_budget,
        out: &mut out,
    };
    for i in 0..n {
        if solver.inv[i] == i {
            return Err(Error::Unsupported(format!("{} is its own inverse; the group has torsion", ball.element(i))));
        }
    }
    let mut consistent = true;
    for &p in pins {
        consistent &= solver.assign(p, 1);
    }
    if consistent && solver.propagate() {
        solver.search()?;
    }
    let nodes = solver.nodes;
    Ok((out, nodes))
}
