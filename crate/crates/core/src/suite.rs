//! Seeded random property suites shared by the CLI and the tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord, BurauKey};
use crate::cone::{conjugate_cone, flip_on_convex, ConeDescriptor, ConeOracle};
use crate::convex::ConvexPredicate;
use crate::error::{Error, Result};
use crate::group::{Ball, Family, Group, GroupElement};
use crate::lattice::{LexConeSpec, QuadScalar};
use crate::space::{self, ConvexityOutcome};
use crate::{Budgets, Sign};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform length in `0..=max_len`, uniform letters.
pub fn random_braid_word(rng: &mut impl Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i16);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("letters in range")
}

/// Nonempty positive word of length at most `max_len`.
pub fn random_positive_word(rng: &mut impl Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(1..=max_len.max(1));
    BraidWord::new(n, (0..len).map(|_| rng.gen_range(1..n as i16)).collect()).expect("letters in range")
}

/// Random valid lexicographic spec on `Z^k`; entries are `a + b√2` with `a, b` in `{-1, 0, 1}`
/// (`b = 0` for about half of the normals).
pub fn random_lex_spec(rng: &mut impl Rng, k: usize) -> LexConeSpec {
    loop {
        let mut normals: Vec<Vec<QuadScalar>> = Vec::new();
        while normals.len() < k {
            let irrational = rng.gen_bool(0.5);
            let n: Vec<QuadScalar> = (0..k)
                .map(|_| {
                    let a = rng.gen_range(-1..=1);
                    let b = if irrational { rng.gen_range(-1..=1) } else { 0 };
                    QuadScalar::from_parts(a, 1, b, 1)
                })
                .collect();
            if n.iter().all(QuadScalar::is_zero) {
                continue;
            }
            normals.push(n);
            if let Ok(spec) = LexConeSpec::new(k, normals.clone()) {
                return spec;
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidAxiomReport {
    pub n: usize,
    pub words: usize,
    pub max_len: usize,
    pub trichotomy_violations: usize,
    pub inversion_violations: usize,
    pub closure_pairs: usize,
    pub closure_violations: usize,
    pub examples: Vec<String>,
}

impl BraidAxiomReport {
    pub fn passed(&self) -> bool {
        self.trichotomy_violations + self.inversion_violations + self.closure_violations == 0
    }
}

/// Trichotomy (zero sign exactly on braids with identity Burau image), inversion
/// antisymmetry, and closure of sampled positive pairs for `P_D`.
pub fn braid_axiom_suite(
    seed: u64,
    n: usize,
    words: usize,
    max_len: usize,
    pairs: usize,
    budgets: &Budgets,
) -> Result<BraidAxiomReport> {
    let mut rng = rng(seed);
    let steps = budgets.reduction_steps;
    let id_key = BurauKey::of(&BraidWord::identity(n));
    let mut report = BraidAxiomReport { n, words, max_len, ..Default::default() };
    let mut positives = Vec::new();
    for _ in 0..words {
        let w = random_braid_word(&mut rng, n, max_len);
        let s = braid::main_sign(&w, steps)?.sign;
        if (s == Sign::Zero) != (BurauKey::of(&w) == id_key) {
            report.trichotomy_violations += 1;
            report.examples.push(format!("trichotomy: {w}"));
        }
        if braid::main_sign(&w.inverse(), steps)?.sign != -s {
            report.inversion_violations += 1;
            report.examples.push(format!("inversion: {w}"));
        }
        if s == Sign::Positive {
            positives.push(w);
        }
    }
    if !positives.is_empty() {
        for _ in 0..pairs {
            let a = &positives[rng.gen_range(0..positives.len())];
            let b = &positives[rng.gen_range(0..positives.len())];
            report.closure_pairs += 1;
            if braid::main_sign(&a.concat(b)?, steps)?.sign != Sign::Positive {
                report.closure_violations += 1;
                report.examples.push(format!("closure: {a} | {b}"));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubwordReport {
    pub n: usize,
    pub checked: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

/// `β α β^-1` is `P_D`-positive for positive words `α`.
pub fn subword_suite(
    seed: u64,
    n: usize,
    pairs: usize,
    beta_max: usize,
    alpha_max: usize,
    budgets: &Budgets,
) -> Result<SubwordReport> {
    let mut rng = rng(seed);
    let mut report = SubwordReport { n, ..Default::default() };
    for _ in 0..pairs {
        let beta = random_braid_word(&mut rng, n, beta_max);
        let alpha = random_positive_word(&mut rng, n, alpha_max);
        let w = beta.concat(&alpha)?.concat(&beta.inverse())?;
        report.checked += 1;
        if braid::main_sign(&w, budgets.reduction_steps)?.sign != Sign::Positive {
            report.violations += 1;
            report.examples.push(format!("beta={beta} alpha={alpha}"));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UltrametricReport {
    pub resolution: usize,
    pub pool_size: usize,
    pub sampled: usize,
    pub checked: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

struct Pool {
    ball: Ball,
    cones: Vec<Arc<ConeOracle>>,
    signs: Vec<Vec<Sign>>,
}

impl Pool {
    fn agree(&self, i: usize, j: usize) -> (usize, bool) {
        match self.signs[i].iter().zip(&self.signs[j]).position(|(a, b)| a != b) {
            Some(p) => (self.ball.length(p) - 1, true),
            None => (self.ball.radius(), false),
        }
    }
}

/// A pool of constructed cones per family: the Dehornoy and DD cones of `B_3` with
/// random conjugates and a flip, the four Klein cones, and random lattice cones.
fn cone_pools(rng: &mut impl Rng, resolution: usize, budgets: &Budgets) -> Result<Vec<Pool>> {
    let mut pools = Vec::new();
    let b3 = Group::new(Family::Braid { n: 3 }, *budgets)?;
    let mut braid_cones = Vec::new();
    for d in [ConeDescriptor::Dehornoy { n: 3 }, ConeDescriptor::Dd { n: 3 }] {
        let p = ConeOracle::build(&d, budgets)?;
        for _ in 0..8 {
            let h = GroupElement::Braid(random_braid_word(rng, 3, 4));
            braid_cones.push(conjugate_cone(&p, &h));
        }
        if let ConvexityOutcome::Pass(cert) = space::convexity_check(&p, &ConvexPredicate::BraidShift { r: 1 }, 3)? {
            braid_cones.push(flip_on_convex(&p, &cert)?);
        }
        braid_cones.push(p);
    }
    let mut klein = Vec::new();
    for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        klein.push(ConeOracle::build(&ConeDescriptor::KleinTararin { sx, sy }, budgets)?);
    }
    let mut lattice = Vec::new();
    for _ in 0..16 {
        let spec = random_lex_spec(rng, 2);
        lattice.push(ConeOracle::build(&ConeDescriptor::Lattice { spec }, budgets)?);
    }
    for (group, cones) in [
        (b3, braid_cones),
        (Group::new(Family::KleinBottle, *budgets)?, klein),
        (Group::new(Family::FreeAbelian { k: 2 }, *budgets)?, lattice),
    ] {
        let ball = group.ball(resolution)?;
        let signs = cones.iter().map(|c| space::sign_vector_on(c, &ball).map(|v| v.signs)).collect::<Result<_>>()?;
        pools.push(Pool { ball, cones, signs });
    }
    Ok(pools)
}

/// `d(P, R) <= max(d(P, Q), d(Q, R))` on sampled triples whose three distances are all
/// exact. Sampling stops after `triples` checked triples or `20 * triples` draws.
pub fn ultrametric_suite(seed: u64, triples: usize, resolution: usize, budgets: &Budgets) -> Result<UltrametricReport> {
    let mut rng = rng(seed);
    let pools = cone_pools(&mut rng, resolution, budgets)?;
    let mut report = UltrametricReport {
        resolution,
        pool_size: pools.iter().map(|p| p.cones.len()).sum(),
        ..Default::default()
    };
    while report.checked < triples && report.sampled < 20 * triples {
        report.sampled += 1;
        let pool = &pools[rng.gen_range(0..pools.len())];
        let m = pool.cones.len();
        let (i, j, k) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
        let (pq, e1) = pool.agree(i, j);
        let (qr, e2) = pool.agree(j, k);
        let (pr, e3) = pool.agree(i, k);
        if !(e1 && e2 && e3) {
            continue;
        }
        report.checked += 1;
        // d = 2^-a, so the inequality reads a(P,R) >= min(a(P,Q), a(Q,R)).
        if pr < pq.min(qr) {
            report.violations += 1;
            report.examples.push(format!(
                "{} / {} / {}",
                serde_json::to_string(pool.cones[i].descriptor()).unwrap_or_default(),
                serde_json::to_string(pool.cones[j].descriptor()).unwrap_or_default(),
                serde_json::to_string(pool.cones[k].descriptor()).unwrap_or_default()
            ));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeAxiomReport {
    pub radius: usize,
    pub elements: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

/// Nonzero signs, antisymmetry and in-ball closure of one cone.
pub fn cone_axiom_suite(p: &ConeOracle, radius: usize) -> Result<ConeAxiomReport> {
    let ball = p.group().ball(radius)?;
    let v = space::sign_vector_on(p, &ball)?;
    let failure = match v.validate(&ball) {
        Ok(()) => None,
        Err(Error::Inconsistent(msg)) => Some(msg),
        Err(e) => return Err(e),
    };
    Ok(ConeAxiomReport { radius, elements: ball.len(), passed: failure.is_none(), failure })
}
