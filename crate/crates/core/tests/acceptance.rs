//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ordercone::braid::{self, BraidWord};
use ordercone::cone::*;
use ordercone::convex::ConvexPredicate;
use ordercone::lattice::*;
use ordercone::space::*;
use ordercone::*;
use rand::Rng;

type Check = std::result::Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T>(r: ordercone::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn count(group: &Group, radius: usize, pins: Vec<GroupElement>) -> std::result::Result<CensusResult, String> {
    e(census(&CensusQuery { group: group.clone(), radius, required_positive: pins }))
}

fn c1() -> Check {
    let z = e(Group::new(Family::FreeAbelian { k: 1 }, Budgets::default()))?;
    let counts: Vec<usize> = (1..=6).map(|r| count(&z, r, vec![]).map(|c| c.count)).collect::<std::result::Result<_, _>>()?;
    ensure(counts.iter().all(|&c| c == 2), format!("counts {counts:?}"))?;
    Ok(format!("counts r=1..6: {counts:?}"))
}

fn c2() -> Check {
    let b = Budgets::default();
    let k = e(Group::new(Family::KleinBottle, b))?;
    let cones: Vec<Arc<ConeOracle>> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(sx, sy)| e(ConeOracle::build(&ConeDescriptor::KleinTararin { sx, sy }, &b)))
        .collect::<std::result::Result<_, _>>()?;
    let mut counts = Vec::new();
    for r in 2..=5 {
        let res = count(&k, r, vec![])?;
        let ball = e(k.ball(r))?;
        let found: BTreeSet<Vec<Sign>> = res.vectors.iter().map(|v| v.signs.clone()).collect();
        let built: BTreeSet<Vec<Sign>> =
            cones.iter().map(|c| e(sign_vector_on(c, &ball)).map(|v| v.signs)).collect::<std::result::Result<_, _>>()?;
        ensure(res.count == 4, format!("r={r}: {} vectors", res.count))?;
        ensure(found == built, format!("r={r}: census differs from the four constructed cones"))?;
        counts.push(res.count);
    }
    Ok(format!("counts r=2..5: {counts:?}, equal to the KleinTararin sign vectors"))
}

fn c3() -> Check {
    let z2 = e(Group::new(Family::FreeAbelian { k: 2 }, Budgets::default()))?;
    let base = count(&z2, 2, vec![])?;
    ensure(base.count == 8, format!("radius 2: {} vectors", base.count))?;
    let ball = e(z2.ball(2))?;
    let mut ext = Vec::new();
    for v in &base.vectors {
        let pins: Vec<GroupElement> =
            ball.elements().iter().zip(&v.signs).filter(|(_, s)| s.is_positive()).map(|(g, _)| g.clone()).collect();
        let res = count(&z2, 4, pins)?;
        ensure(res.count >= 2, format!("{} has {} extensions", v.pattern(), res.count))?;
        ext.push(res.count);
    }
    Ok(format!("8 vectors at r=2; extensions at r=4: {ext:?}"))
}

fn c4() -> Check {
    let mut lines = Vec::new();
    for (n, seed) in [(3, 0xA11CE), (4, 0xB0B)] {
        let r = e(suite::braid_axiom_suite(seed, n, 10_000, 12, 1_000, &Budgets::default()))?;
        ensure(
            r.passed() && r.closure_pairs == 1_000,
            format!("B_{n}: {} trichotomy, {} inversion, {}/{} closure violations {:?}",
                r.trichotomy_violations, r.inversion_violations, r.closure_violations, r.closure_pairs, r.examples),
        )?;
        lines.push(format!("B_{n}: 10000 words, 1000 closures, 0 violations"));
    }
    Ok(lines.join("; "))
}

fn c5() -> Check {
    let mut lines = Vec::new();
    for (n, seed) in [(3, 0x5EED3), (4, 0x5EED4)] {
        let r = e(suite::subword_suite(seed, n, 1_000, 8, 6, &Budgets::default()))?;
        ensure(r.checked == 1_000 && r.violations == 0, format!("B_{n}: {} violations {:?}", r.violations, r.examples))?;
        lines.push(format!("B_{n}: 1000/1000 positive"));
    }
    Ok(lines.join("; "))
}

fn c6() -> Check {
    let b = Budgets::default();
    let mut lines = Vec::new();
    for (n, r, eps) in [(3, 4, "s2"), (4, 3, "s3")] {
        let p = e(ConeOracle::build(&ConeDescriptor::Dehornoy { n }, &b))?;
        let g = e(p.group().parse(eps))?;
        match e(discreteness_check(&p, &g, r))? {
            DiscretenessOutcome::Pass { checked } => lines.push(format!("B_{n} r={r}: {eps} least among {checked} positives")),
            DiscretenessOutcome::Witness(c) => return Err(format!("B_{n}: {c}")),
        }
    }
    Ok(lines.join("; "))
}

fn c7() -> Check {
    let b = Budgets::experiment();
    let p = e(ConeOracle::build(&ConeDescriptor::Dehornoy { n: 3 }, &b))?;
    let conj = e(p.group().ball(6))?;
    let mut lines = Vec::new();
    for r in 1..=3 {
        let cert = e(accumulation_scan(&p, &conj, r, r + 3))?.ok_or(format!("r={r}: none found"))?;
        e(cert.replay(&b))?;
        let Certificate::AccumulationWitness { conjugator, distance, .. } = &cert else {
            return Err("wrong certificate kind".into());
        };
        ensure(distance.exact && distance.agree_radius >= r, format!("r={r}: bad distance {distance:?}"))?;
        lines.push(format!("r={r}: h={conjugator} d={}", distance.distance));
    }
    Ok(format!("{} (conjugators: {})", lines.join(", "), conj.len()))
}

fn c8() -> Check {
    let b = Budgets::default();
    let mut lines = Vec::new();
    for (n, r, max_len) in [(3, 3, 12), (4, 2, 16)] {
        let rep = e(dd_isolation_witnesses(n, r, max_len, &b))?;
        ensure(rep.complete(), format!("B_{n}: unresolved {:?}", rep.unresolved))?;
        ensure(rep.witnesses.len() == rep.positive_elements, "witness count mismatch")?;
        let mut longest = 0;
        for c in &rep.witnesses {
            e(c.replay(&b))?;
            if let Certificate::SemigroupWitness { witness, .. } = c {
                ensure(witness.len() <= max_len, "witness too long")?;
                longest = longest.max(witness.len());
            }
        }
        lines.push(format!("B_{n} r={r}: {} positive elements covered, longest witness {longest}", rep.positive_elements));
    }
    Ok(lines.join("; "))
}

fn c9() -> Check {
    let b = Budgets::default();
    let p = e(ConeOracle::build(&ConeDescriptor::Dehornoy { n: 3 }, &b))?;
    match e(convexity_check(&p, &ConvexPredicate::BraidShift { r: 1 }, 3))? {
        ConvexityOutcome::Pass(_) => {}
        ConvexityOutcome::Violation(c) => return Err(format!("shift subgroup not convex: {c}")),
    }
    match e(convexity_check(&p, &ConvexPredicate::Cyclic { generator: "s1".into() }, 3))? {
        ConvexityOutcome::Pass(_) => Err("<s1> passed the convexity scan".into()),
        ConvexityOutcome::Violation(c) => {
            e(c.replay(&b))?;
            let Certificate::ConvexityCounterexample { f, g, h, .. } = &c else { return Err("wrong kind".into()) };
            Ok(format!("sh(B_2) convex at r=3; <s1> counterexample {f} < {g} < {h} replays"))
        }
    }
}

fn c10() -> Check {
    let b = Budgets::default();
    let p = e(ConeOracle::build(&ConeDescriptor::Dehornoy { n: 3 }, &b))?;
    let rep = e(order_property_scan(&p, 3, 4))?;
    ensure(!rep.biorder_violations.is_empty(), "no bi-order violation for P_D")?;
    let g = e(BraidWord::parse(3, "s1 s2 s1"))?;
    let h = e(BraidWord::parse(3, "s1 S2"))?;
    let conj = e(g.concat(&h).and_then(|x| x.concat(&g.inverse())))?;
    let sh = e(braid::main_sign(&h, b.reduction_steps))?;
    let sc = e(braid::main_sign(&conj, b.reduction_steps))?;
    ensure(sh.sign == Sign::Positive && sc.sign == Sign::Negative, "specific pair does not validate")?;
    ensure(e(braid::braid_equal(&conj, &e(BraidWord::parse(3, "s2 S1"))?, b.reduction_steps))?, "g h g^-1 != s2 S1")?;
    let k = e(ConeOracle::build(&ConeDescriptor::KleinTararin { sx: 1, sy: 1 }, &b))?;
    let krep = e(order_property_scan(&k, 2, 4))?;
    ensure(
        krep.biorder_violations.contains(&("(1,0)".to_string(), "(0,1)".to_string())),
        "Klein relator pair missing",
    )?;
    Ok(format!(
        "P_D r=3: {} bi-order violations, (s1 s2 s1, s1 S2) validated; Klein r=2: {} violations incl. (x, y)",
        rep.biorder_violations.len(),
        krep.biorder_violations.len()
    ))
}

/// Least positive element of the ball under `spec`, by pairwise comparison.
fn ball_min(spec: &LexConeSpec, ball: &[Vec<i64>]) -> Option<Vec<i64>> {
    let mut m: Option<Vec<i64>> = None;
    for v in ball.iter().filter(|v| spec.sign(v).unwrap() == Sign::Positive) {
        let smaller = match &m {
            None => true,
            Some(cur) => spec.sign(&cur.iter().zip(v).map(|(a, b)| a - b).collect::<Vec<_>>()).unwrap() == Sign::Positive,
        };
        if smaller {
            m = Some(v.clone());
        }
    }
    m
}

/// Brute-force verdict from `Ball(8)`: dense iff some positive `v`, not a multiple of the
/// ball minimum `m`, lies below `2^20 m`.
fn brute_verdict(spec: &LexConeSpec, ball: &[Vec<i64>]) -> (Verdict, Vec<i64>) {
    let m = ball_min(spec, ball).expect("ball has positive elements");
    let big: Vec<i64> = m.iter().map(|x| x << 20).collect();
    let multiple = |v: &[i64]| (1..=8).any(|j| v.iter().zip(&m).all(|(a, b)| *a == j * b));
    let dense = ball.iter().any(|v| {
        spec.sign(v).unwrap() == Sign::Positive
            && !multiple(v)
            && spec.sign(&big.iter().zip(v).map(|(a, b)| a - b).collect::<Vec<_>>()).unwrap() == Sign::Positive
    });
    (if dense { Verdict::Dense } else { Verdict::Discrete }, m)
}

fn c11() -> Check {
    let mut rng = suite::rng(0x1A77);
    let mut tallies = Vec::new();
    for k in [2usize, 3] {
        let ball8 = lattice_ball(k, 8);
        let ball3 = lattice_ball(k, 3);
        let (mut dense, mut discrete) = (0, 0);
        for i in 0..50 {
            let spec = suite::random_lex_spec(&mut rng, k);
            let exact = e(classify_density(&spec))?;
            let (brute, m) = brute_verdict(&spec, &ball8);
            ensure(exact.verdict == brute, format!("k={k} #{i} {spec}: exact {:?}, brute {brute:?}", exact.verdict))?;
            if exact.verdict == Verdict::Discrete {
                ensure(exact.least_positive.as_ref() == Some(&m), format!("k={k} #{i} {spec}: least positive differs"))?;
                discrete += 1;
            } else {
                dense += 1;
            }
            let pins: Vec<Vec<i64>> = (0..rng.gen_range(0..=3))
                .map(|_| {
                    let v = ball3[rng.gen_range(0..ball3.len())].clone();
                    if spec.sign(&v).unwrap() == Sign::Positive { v } else { v.iter().map(|x| -x).collect() }
                })
                .collect();
            let out = e(perturb_dense(&spec, &pins, &PerturbOptions::default()))
                .map_err(|m| format!("k={k} #{i} {spec} pins {pins:?}: {m}"))?;
            for p in &pins {
                ensure(e(out.spec.sign(p))? == Sign::Positive, format!("k={k} #{i}: pin {p:?} lost"))?;
            }
            ensure(e(classify_density(&out.spec))?.verdict == Verdict::Dense, format!("k={k} #{i}: output not dense"))?;
            let (si, so) = (e(spec.sign(&out.witness))?, e(out.spec.sign(&out.witness))?);
            ensure(
                si != so && si == out.witness_input_sign && so == out.witness_output_sign,
                format!("k={k} #{i}: witness {:?} does not separate", out.witness),
            )?;
        }
        tallies.push(format!("Z^{k}: 50 specs ({discrete} discrete, {dense} dense)"));
    }
    Ok(format!("{}; all perturbations dense, pins kept, witnesses valid", tallies.join(", ")))
}

fn c12() -> Check {
    let r = e(suite::ultrametric_suite(0xD15, 1_000, 4, &Budgets::default()))?;
    ensure(r.checked == 1_000, format!("only {} exact triples from {} draws", r.checked, r.sampled))?;
    ensure(r.violations == 0, format!("{} violations: {:?}", r.violations, r.examples))?;
    Ok(format!("1000 exact triples ({} draws, pool of {} cones), 0 violations", r.sampled, r.pool_size))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "LO(Z) census", Duration::from_secs(1), c1),
        (2, "Klein census", Duration::from_secs(10), c2),
        (3, "Z^2 census and extensions", Duration::from_secs(30), c3),
        (4, "braid axiom suite", Duration::from_secs(120), c4),
        (5, "subword property", Duration::from_secs(120), c5),
        (6, "discreteness of P_D", Duration::from_secs(60), c6),
        (7, "accumulation witnesses", Duration::from_secs(600), c7),
        (8, "DD semigroup witnesses", Duration::from_secs(600), c8),
        (9, "convexity", Duration::from_secs(300), c9),
        (10, "bi-order failure witnesses", Duration::from_secs(300), c10),
        (11, "lattice pipeline", Duration::from_secs(120), c11),
        (12, "ultrametric inequality", Duration::from_secs(60), c12),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {id:>2} [{}] {name}: {detail} ({:.3}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
