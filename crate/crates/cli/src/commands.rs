use std::sync::Arc;

use ordercone::cone::{ConeDescriptor, ConeOracle};
use ordercone::convex::ConvexPredicate;
use ordercone::lattice::{classify_density, perturb_dense, LexConeSpec, PerturbOptions};
use ordercone::space::{self, Certificate, CensusQuery, ConvexityOutcome, DiscretenessOutcome};
use ordercone::{suite, Error, Family, Group, Result};
use serde_json::json;

use crate::report::{to_value, Outcome, Table};
use crate::{Command, PropsArgs, Settings};

fn cone(text: &str, s: &Settings) -> Result<Arc<ConeOracle>> {
    ConeOracle::build(&ConeDescriptor::parse_short(text)?, &s.budgets)
}

fn group(text: &str, s: &Settings) -> Result<Group> {
    Group::new(Family::parse(text)?, s.budgets)
}

fn lattice_vector(text: &str) -> Result<Vec<i64>> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad vector `{text}`"))))
        .collect()
}

fn replayed(cert: &Certificate, s: &Settings) -> Result<serde_json::Value> {
    cert.replay(&s.budgets)?;
    to_value(cert)
}

pub fn run(cmd: &Command, s: &Settings) -> Result<Outcome> {
    match cmd {
        Command::Sign { cone: c, word } => {
            let p = cone(c, s)?;
            let g = p.group().parse(word)?;
            Outcome::new(json!({ "cone": p.descriptor(), "element": g.to_string(), "sign": p.sign(&g)? }))
        }
        Command::Compare { cone: c, g, h } => {
            let p = cone(c, s)?;
            let (g, h) = (p.group().parse(g)?, p.group().parse(h)?);
            let order = match p.compare(&g, &h)? {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Outcome::new(json!({ "cone": p.descriptor(), "g": g.to_string(), "h": h.to_string(), "order": order }))
        }
        Command::Ball(b) => {
            let grp = group(&b.group, s)?;
            let ball = grp.ball(b.radius)?;
            let rows: Vec<Vec<String>> = (0..ball.len())
                .map(|i| vec![i.to_string(), ball.element(i).to_string(), ball.length(i).to_string()])
                .collect();
            let elements: Vec<_> = (0..ball.len())
                .map(|i| json!({ "element": ball.element(i).to_string(), "length": ball.length(i), "inverse": ball.inverse_index(i) }))
                .collect();
            Ok(Outcome::new(json!({ "family": grp.family(), "radius": b.radius, "size": ball.len(), "elements": elements }))?
                .with_table(Table { headers: vec!["index", "element", "length"], rows }))
        }
        Command::Census { ball, pin, from } => {
            let grp = group(&ball.group, s)?;
            let pins = pin.iter().map(|p| grp.parse(p)).collect::<Result<Vec<_>>>()?;
            let run = |r: usize| {
                space::census(&CensusQuery { group: grp.clone(), radius: r, required_positive: pins.clone() })
            };
            let res = run(ball.radius)?;
            let mut rows = Vec::new();
            for r in from.unwrap_or(ball.radius)..ball.radius {
                rows.push(vec![r.to_string(), run(r)?.count.to_string()]);
            }
            rows.push(vec![ball.radius.to_string(), res.count.to_string()]);
            let elements = res.vectors.first().map(|v| v.elements.clone()).unwrap_or_default();
            let patterns: Vec<String> = res.vectors.iter().map(|v| v.pattern()).collect();
            Ok(Outcome::new(json!({
                "family": res.family,
                "radius": res.radius,
                "required_positive": res.required_positive,
                "count": res.count,
                "nodes": res.nodes,
                "elements": elements,
                "vectors": patterns,
            }))?
            .with_table(Table { headers: vec!["radius", "count"], rows }))
        }
        Command::Distance { cone: a, other, resolution } => {
            let (p, q) = (cone(a, s)?, cone(other, s)?);
            let d = space::distance(&p, &q, *resolution)?;
            let row = vec![d.agree_radius.to_string(), d.distance.clone(), d.resolution.to_string(), d.exact.to_string()];
            Ok(Outcome::new(&d)?.with_table(Table {
                headers: vec!["agree_radius", "distance", "resolution", "exact"],
                rows: vec![row],
            }))
        }
        Command::OrbitScan { cone: c, conjugator_radius, target, resolution } => {
            let p = cone(c, s)?;
            let conj = p.group().ball(*conjugator_radius)?;
            let res = resolution.unwrap_or(target + 3);
            match space::accumulation_scan(&p, &conj, *target, res)? {
                Some(cert) => Outcome::new(json!({ "found": true, "certificate": replayed(&cert, s)?, "conjugators": conj.len() })),
                None => Outcome::new(json!({ "found": false, "conjugators": conj.len(), "resolution": res })),
            }
        }
        Command::DdWitness { n, radius, max_len } => {
            let rep = space::dd_isolation_witnesses(*n, *radius, *max_len, &s.budgets)?;
            let mut rows = Vec::new();
            for c in &rep.witnesses {
                c.replay(&s.budgets)?;
                if let Certificate::SemigroupWitness { element, witness, .. } = c {
                    rows.push(vec![element.clone(), witness.join(" ")]);
                }
            }
            let complete = rep.complete();
            Ok(Outcome::new(&rep)?
                .with_table(Table { headers: vec!["element", "witness"], rows })
                .violation(!complete))
        }
        Command::Convexity { cone: c, convex, radius } => {
            let p = cone(c, s)?;
            let pred = ConvexPredicate::parse_short(convex)?;
            match space::convexity_check(&p, &pred, *radius)? {
                ConvexityOutcome::Pass(cert) => Outcome::new(json!({ "result": "pass", "certificate": cert })),
                ConvexityOutcome::Violation(cert) => {
                    Ok(Outcome::new(json!({ "result": "violation", "certificate": replayed(&cert, s)? }))?.violation(true))
                }
            }
        }
        Command::Classify { spec } => {
            let spec = LexConeSpec::parse_text(spec)?;
            Outcome::new(json!({ "spec": spec, "report": classify_density(&spec)? }))
        }
        Command::Perturb { spec, pin, coordinate, witness_radius } => {
            let spec = LexConeSpec::parse_text(spec)?;
            let pins = pin.iter().map(|p| lattice_vector(p)).collect::<Result<Vec<_>>>()?;
            let opts = PerturbOptions { coordinate: *coordinate, witness_radius: *witness_radius };
            let res = perturb_dense(&spec, &pins, &opts)?;
            Outcome::new(json!({ "input": spec, "required_positive": pins, "result": res, "short": res.spec.to_string() }))
        }
        Command::Soul { cone: c, chain, radius, n_max } => {
            let p = cone(c, s)?;
            let chain = chain.iter().map(|x| ConvexPredicate::parse_short(x)).collect::<Result<Vec<_>>>()?;
            if chain.is_empty() {
                return Err(Error::Parse("--chain needs at least one subgroup".into()));
            }
            Outcome::new(space::soul_estimate(&p, &chain, *radius, *n_max)?)
        }
        Command::Props(a) => props(a, s),
    }
}

fn need<'a>(x: &'a Option<String>, flag: &str) -> Result<&'a str> {
    x.as_deref().ok_or_else(|| Error::Parse(format!("this suite needs --{flag}")))
}

fn props(a: &PropsArgs, s: &Settings) -> Result<Outcome> {
    let b = &s.budgets;
    match a.suite.as_str() {
        "braid-axioms" => {
            let r = suite::braid_axiom_suite(s.seed, a.n, a.count, a.max_len, a.pairs, b)?;
            let bad = !r.passed();
            Ok(Outcome::new(json!({ "suite": a.suite, "seed": s.seed, "report": r }))?.violation(bad))
        }
        "subword" => {
            let r = suite::subword_suite(s.seed, a.n, a.count, a.max_len, a.max_len.min(6), b)?;
            let bad = r.violations > 0;
            Ok(Outcome::new(json!({ "suite": a.suite, "seed": s.seed, "report": r }))?.violation(bad))
        }
        "ultrametric" => {
            let r = suite::ultrametric_suite(s.seed, a.count, a.resolution, b)?;
            let bad = r.violations > 0;
            Ok(Outcome::new(json!({ "suite": a.suite, "seed": s.seed, "report": r }))?.violation(bad))
        }
        "cone-axioms" => {
            let p = cone(need(&a.cone, "cone")?, s)?;
            let r = suite::cone_axiom_suite(&p, a.radius)?;
            let bad = !r.passed;
            Ok(Outcome::new(json!({ "suite": a.suite, "cone": p.descriptor(), "report": r }))?.violation(bad))
        }
        "order-properties" => {
            let p = cone(need(&a.cone, "cone")?, s)?;
            let r = space::order_property_scan(&p, a.radius, a.n_max)?;
            let bad = !(r.conradian_violations.is_empty() && r.biorder_violations.is_empty());
            Ok(Outcome::new(json!({ "suite": a.suite, "cone": p.descriptor(), "report": r }))?.violation(bad))
        }
        "discreteness" => {
            let p = cone(need(&a.cone, "cone")?, s)?;
            let eps = p.group().parse(need(&a.element, "element")?)?;
            match space::discreteness_check(&p, &eps, a.radius)? {
                DiscretenessOutcome::Pass { checked } => {
                    Outcome::new(json!({ "suite": a.suite, "result": "pass", "epsilon": eps.to_string(), "checked": checked }))
                }
                DiscretenessOutcome::Witness(cert) => Ok(Outcome::new(
                    json!({ "suite": a.suite, "result": "witness", "certificate": replayed(&cert, s)? }),
                )?
                .violation(true)),
            }
        }
        "interval" => {
            let p = cone(need(&a.cone, "cone")?, s)?;
            let g = p.group().parse(need(&a.element, "element")?)?;
            let cert = space::interval_closure(&p, &g, a.radius, a.k_max)?;
            Outcome::new(json!({ "suite": a.suite, "certificate": replayed(&cert, s)? }))
        }
        other => Err(Error::Parse(format!("unknown suite `{other}`"))),
    }
}
