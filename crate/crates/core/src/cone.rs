//! Positive-cone oracles: total sign functions `G -> {-, 0, +}` obeying the cone axioms.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::braid;
use crate::convex::{BoundConvex, ConvexPredicate};
use crate::error::{Error, Result};
use crate::group::{Family, Group, GroupElement};
use crate::lattice::{LexConeSpec, Sublattice};
use crate::space;
use crate::{Budgets, Sign};

/// Serializable description of a cone; enough to rebuild the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConeDescriptor {
    Dehornoy { n: usize },
    Dd { n: usize },
    KleinTararin { sx: i8, sy: i8 },
    Lattice { spec: LexConeSpec },
    Conjugate { g: String, base: Box<ConeDescriptor> },
    FlipOnConvex { base: Box<ConeDescriptor>, convex: ConvexPredicate, radius: usize },
    ReplaceOnConvex { base: Box<ConeDescriptor>, convex: ConvexPredicate, inner: Box<ConeDescriptor>, radius: usize },
    LexExtension { inner: Box<ConeDescriptor>, quotient: Box<ConeDescriptor>, convex: ConvexPredicate },
}

impl ConeDescriptor {
    /// Short forms used on the command line: `dehornoy:3`, `dd:4`, `klein:+,-`,
    /// `lattice:1,r2`. Anything starting with `{` is read as JSON.
    pub fn parse_short(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(format!("cone descriptor: {e}")));
        }
        let (kind, arg) = t.split_once(':').ok_or_else(|| Error::Parse(format!("bad cone `{text}`")))?;
        let n = || arg.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad strand count in `{text}`")));
        match kind.trim().to_ascii_lowercase().as_str() {
            "dehornoy" | "d" => Ok(ConeDescriptor::Dehornoy { n: n()? }),
            "dd" => Ok(ConeDescriptor::Dd { n: n()? }),
            "klein" | "tararin" => {
                let signs: Vec<i8> = arg
                    .split(',')
                    .map(|s| match s.trim() {
                        "+" | "1" | "+1" => Ok(1),
                        "-" | "-1" => Ok(-1),
                        other => Err(Error::Parse(format!("bad sign `{other}`"))),
                    })
                    .collect::<Result<_>>()?;
                match signs.as_slice() {
                    [sx, sy] => Ok(ConeDescriptor::KleinTararin { sx: *sx, sy: *sy }),
                    _ => Err(Error::Parse(format!("klein cone needs two signs in `{text}`"))),
                }
            }
            "lattice" | "lex" => Ok(ConeDescriptor::Lattice { spec: LexConeSpec::parse_text(arg)? }),
            other => Err(Error::Parse(format!("unknown cone kind `{other}`"))),
        }
    }
}

#[derive(Debug)]
enum Kind {
    Dehornoy,
    Dd,
    KleinTararin { sx: i8, sy: i8 },
    Lattice(LexConeSpec),
    Conjugate { h: GroupElement, base: Arc<ConeOracle> },
    Flip { base: Arc<ConeOracle>, convex: BoundConvex },
    Replace { base: Arc<ConeOracle>, convex: BoundConvex, inner: Arc<ConeOracle> },
    LexKlein { inner: Arc<ConeOracle>, quotient: Arc<ConeOracle> },
    LexLattice { sub: Sublattice, inner: Option<Arc<ConeOracle>>, quotient: Option<Arc<ConeOracle>> },
}

/// An evaluable positive cone. Derived cones share their bases through `Arc`.
#[derive(Debug)]
pub struct ConeOracle {
    descriptor: ConeDescriptor,
    group: Group,
    kind: Kind,
}

/// Evidence that a subgroup passed the convexity scan for a cone at some radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityCertificate {
    pub(crate) base: ConeDescriptor,
    pub(crate) convex: ConvexPredicate,
    pub(crate) radius: usize,
}

impl ConvexityCertificate {
    pub fn radius(&self) -> usize {
        self.radius
    }
    pub fn convex(&self) -> &ConvexPredicate {
        &self.convex
    }
    pub fn base(&self) -> &ConeDescriptor {
        &self.base
    }
}

/// `i`-positive braids are DD-positive exactly when `(-1)^{i+1} = +1`.
pub(crate) fn dd_sign(report: &braid::MainSignReport) -> Sign {
    match report.index {
        None => Sign::Zero,
        Some(i) if i % 2 == 1 => report.sign,
        Some(_) => -report.sign,
    }
}

fn signum(x: i64) -> Sign {
    Sign::from_i64(x)
}

impl ConeOracle {
    pub fn build(desc: &ConeDescriptor, budgets: &Budgets) -> Result<Arc<ConeOracle>> {
        let oracle = match desc {
            ConeDescriptor::Dehornoy { n } => ConeOracle {
                descriptor: desc.clone(),
                group: Group::new(Family::Braid { n: *n }, *budgets)?,
                kind: Kind::Dehornoy,
            },
            ConeDescriptor::Dd { n } => ConeOracle {
                descriptor: desc.clone(),
                group: Group::new(Family::Braid { n: *n }, *budgets)?,
                kind: Kind::Dd,
            },
            ConeDescriptor::KleinTararin { sx, sy } => {
                if sx.abs() != 1 || sy.abs() != 1 {
                    return Err(Error::Precondition("Klein cone signs must be ±1".into()));
                }
                ConeOracle {
                    descriptor: desc.clone(),
                    group: Group::new(Family::KleinBottle, *budgets)?,
                    kind: Kind::KleinTararin { sx: *sx, sy: *sy },
                }
            }
            ConeDescriptor::Lattice { spec } => ConeOracle {
                descriptor: desc.clone(),
                group: Group::new(Family::FreeAbelian { k: spec.dim() }, *budgets)?,
                kind: Kind::Lattice(spec.clone()),
            },
            ConeDescriptor::Conjugate { g, base } => {
                let base = ConeOracle::build(base, budgets)?;
                let h = base.group.parse(g)?;
                return Ok(conjugate_cone(&base, &h));
            }
            ConeDescriptor::FlipOnConvex { base, convex, radius } => {
                let base = ConeOracle::build(base, budgets)?;
                let cert = certify(&base, convex, *radius)?;
                return flip_on_convex(&base, &cert);
            }
            ConeDescriptor::ReplaceOnConvex { base, convex, inner, radius } => {
                let base = ConeOracle::build(base, budgets)?;
                let inner = ConeOracle::build(inner, budgets)?;
                let cert = certify(&base, convex, *radius)?;
                return replace_on_convex(&base, &cert, &inner);
            }
            ConeDescriptor::LexExtension { inner, quotient, convex } => {
                let inner = ConeOracle::build(inner, budgets)?;
                let quotient = ConeOracle::build(quotient, budgets)?;
                return lex_extension(&inner, &quotient, convex);
            }
        };
        Ok(Arc::new(oracle))
    }

    pub fn descriptor(&self) -> &ConeDescriptor {
        &self.descriptor
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn family(&self) -> Family {
        self.group.family()
    }

    pub fn sign(&self, g: &GroupElement) -> Result<Sign> {
        if g.family() != self.family() {
            return Err(Error::IncompatibleGroups(format!(
                "element of {} given to a cone on {}",
                g.family(),
                self.family()
            )));
        }
        match (&self.kind, g) {
            (Kind::Dehornoy, GroupElement::Braid(w)) => Ok(braid::main_sign(w, self.group.steps())?.sign),
            (Kind::Dd, GroupElement::Braid(w)) => Ok(dd_sign(&braid::main_sign(w, self.group.steps())?)),
            (Kind::KleinTararin { sx, sy }, GroupElement::Klein(a, b)) => Ok(if *a != 0 {
                signum(*sx as i64 * a.signum())
            } else {
                signum(*sy as i64 * b.signum())
            }),
            (Kind::Lattice(spec), GroupElement::Lattice(v)) => spec.sign(v),
            (Kind::Conjugate { h, base }, g) => base.sign(&self.group.conjugate_by(g, h)?),
            (Kind::Flip { base, convex }, g) => {
                let s = base.sign(g)?;
                Ok(if convex.contains(g)? { -s } else { s })
            }
            (Kind::Replace { base, convex, inner }, g) => {
                if convex.contains(g)? {
                    inner.sign(&convex.to_subgroup(g)?)
                } else {
                    base.sign(g)
                }
            }
            (Kind::LexKlein { inner, quotient }, GroupElement::Klein(a, b)) => {
                if *a != 0 {
                    quotient.sign(&GroupElement::Lattice(vec![*a]))
                } else {
                    inner.sign(&GroupElement::Lattice(vec![*b]))
                }
            }
            (Kind::LexLattice { sub, inner, quotient }, GroupElement::Lattice(v)) => {
                let (ic, qc) = sub.split(v)?;
                if qc.iter().any(|&x| x != 0) {
                    quotient
                        .as_ref()
                        .ok_or_else(|| Error::Inconsistent("missing quotient cone".into()))?
                        .sign(&GroupElement::Lattice(qc))
                } else if ic.iter().any(|&x| x != 0) {
                    inner
                        .as_ref()
                        .ok_or_else(|| Error::Inconsistent("missing inner cone".into()))?
                        .sign(&GroupElement::Lattice(ic))
                } else {
                    Ok(Sign::Zero)
                }
            }
            _ => Err(Error::Inconsistent("cone kind and element family disagree".into())),
        }
    }

    /// `g < h` iff `g^{-1} h` is positive.
    pub fn compare(&self, g: &GroupElement, h: &GroupElement) -> Result<Ordering> {
        let s = self.sign(&self.group.left_quotient(g, h)?)?;
        Ok(match s {
            Sign::Positive => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Negative => Ordering::Greater,
        })
    }
}

fn certify(base: &Arc<ConeOracle>, convex: &ConvexPredicate, radius: usize) -> Result<ConvexityCertificate> {
    match space::convexity_check(base, convex, radius)? {
        space::ConvexityOutcome::Pass(cert) => Ok(cert),
        space::ConvexityOutcome::Violation(c) => {
            Err(Error::UncertifiedConvex(format!("{convex:?} is not convex at radius {radius}: {c}")))
        }
    }
}

pub fn cone_sign(p: &ConeOracle, g: &GroupElement) -> Result<Sign> {
    p.sign(g)
}

pub fn compare(p: &ConeOracle, g: &GroupElement, h: &GroupElement) -> Result<Ordering> {
    p.compare(g, h)
}

/// The cone `g P g^{-1}`: its sign at `h` is the sign of `g^{-1} h g` under `P`.
pub fn conjugate_cone(p: &Arc<ConeOracle>, g: &GroupElement) -> Arc<ConeOracle> {
    Arc::new(ConeOracle {
        descriptor: ConeDescriptor::Conjugate { g: g.to_string(), base: Box::new(p.descriptor.clone()) },
        group: p.group.clone(),
        kind: Kind::Conjugate { h: g.clone(), base: p.clone() },
    })
}

fn check_certificate(p: &ConeOracle, cert: &ConvexityCertificate) -> Result<BoundConvex> {
    if cert.base != p.descriptor {
        return Err(Error::UncertifiedConvex("certificate was issued for a different cone".into()));
    }
    cert.convex.bind(&p.group)
}

/// Negates the cone on a certified convex subgroup.
pub fn flip_on_convex(p: &Arc<ConeOracle>, cert: &ConvexityCertificate) -> Result<Arc<ConeOracle>> {
    let convex = check_certificate(p, cert)?;
    Ok(Arc::new(ConeOracle {
        descriptor: ConeDescriptor::FlipOnConvex {
            base: Box::new(p.descriptor.clone()),
            convex: cert.convex.clone(),
            radius: cert.radius,
        },
        group: p.group.clone(),
        kind: Kind::Flip { base: p.clone(), convex },
    }))
}

/// Uses `inner` (a cone on the subgroup in its own coordinates) on a certified convex
/// subgroup and `p` elsewhere.
pub fn replace_on_convex(
    p: &Arc<ConeOracle>,
    cert: &ConvexityCertificate,
    inner: &Arc<ConeOracle>,
) -> Result<Arc<ConeOracle>> {
    let convex = check_certificate(p, cert)?;
    let fam = convex.subgroup_family()?;
    if inner.family() != fam {
        return Err(Error::IncompatibleGroups(format!(
            "inner cone lives on {}, subgroup is {fam}",
            inner.family()
        )));
    }
    Ok(Arc::new(ConeOracle {
        descriptor: ConeDescriptor::ReplaceOnConvex {
            base: Box::new(p.descriptor.clone()),
            convex: cert.convex.clone(),
            inner: Box::new(inner.descriptor.clone()),
            radius: cert.radius,
        },
        group: p.group.clone(),
        kind: Kind::Replace { base: p.clone(), convex, inner: inner.clone() },
    }))
}

/// Orders cosets by `quotient` first and the normal convex subgroup by `inner`.
/// Implemented for `<y>` in the Klein bottle group and saturated sublattices of `Z^k`.
pub fn lex_extension(
    inner: &Arc<ConeOracle>,
    quotient: &Arc<ConeOracle>,
    convex: &ConvexPredicate,
) -> Result<Arc<ConeOracle>> {
    let z1 = Family::FreeAbelian { k: 1 };
    let budgets = *inner.group.budgets();
    let descriptor = ConeDescriptor::LexExtension {
        inner: Box::new(inner.descriptor.clone()),
        quotient: Box::new(quotient.descriptor.clone()),
        convex: convex.clone(),
    };
    match convex {
        ConvexPredicate::KleinY => {
            if inner.family() != z1 || quotient.family() != z1 {
                return Err(Error::IncompatibleGroups("Klein extension needs cones on Z for <y> and K/<y>".into()));
            }
            Ok(Arc::new(ConeOracle {
                descriptor,
                group: Group::new(Family::KleinBottle, budgets)?,
                kind: Kind::LexKlein { inner: inner.clone(), quotient: quotient.clone() },
            }))
        }
        ConvexPredicate::LatticeSublattice { basis } => {
            let k = match (basis.first(), inner.family(), quotient.family()) {
                (Some(b), _, _) => b.len(),
                (None, _, Family::FreeAbelian { k }) => k,
                _ => return Err(Error::IncompatibleGroups("lattice extension needs lattice cones".into())),
            };
            let sub = Sublattice::new(k, basis.clone())?;
            let m = sub.rank();
            if m == 0 || m == k {
                return Err(Error::Unsupported(
                    "lattice extension needs a proper nontrivial sublattice".into(),
                ));
            }
            if inner.family() != (Family::FreeAbelian { k: m }) || quotient.family() != (Family::FreeAbelian { k: k - m }) {
                return Err(Error::IncompatibleGroups(format!(
                    "expected cones on Z^{m} and Z^{}, got {} and {}",
                    k - m,
                    inner.family(),
                    quotient.family()
                )));
            }
            Ok(Arc::new(ConeOracle {
                descriptor,
                group: Group::new(Family::FreeAbelian { k }, budgets)?,
                kind: Kind::LexLattice { sub, inner: Some(inner.clone()), quotient: Some(quotient.clone()) },
            }))
        }
        other => Err(Error::Unsupported(format!("lexicographic extension over {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(d: ConeDescriptor) -> Arc<ConeOracle> {
        ConeOracle::build(&d, &Budgets::default()).unwrap()
    }

    #[test]
    fn sign_examples() {
        let pd = build(ConeDescriptor::Dehornoy { n: 3 });
        assert_eq!(pd.sign(&pd.group().parse("s1 S2").unwrap()).unwrap(), Sign::Positive);
        let dd = build(ConeDescriptor::Dd { n: 3 });
        assert_eq!(dd.sign(&dd.group().parse("s2").unwrap()).unwrap(), Sign::Negative);
        let k = build(ConeDescriptor::KleinTararin { sx: 1, sy: 1 });
        assert_eq!(k.sign(&GroupElement::Klein(0, -4)).unwrap(), Sign::Negative);
    }

    #[test]
    fn compare_examples() {
        let pd = build(ConeDescriptor::Dehornoy { n: 3 });
        let g = pd.group().parse("S1").unwrap();
        let h = pd.group().parse("s2").unwrap();
        assert_eq!(pd.compare(&g, &h).unwrap(), Ordering::Less);
        assert_eq!(pd.compare(&g, &g).unwrap(), Ordering::Equal);
        let lat = build(ConeDescriptor::Lattice { spec: LexConeSpec::from_int_normals(&[&[0, 1], &[1, 0]]).unwrap() });
        let a = GroupElement::Lattice(vec![1, 0]);
        let b = GroupElement::Lattice(vec![-1000, 1]);
        assert_eq!(lat.compare(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn context_mismatch() {
        let pd = build(ConeDescriptor::Dehornoy { n: 3 });
        assert!(matches!(pd.sign(&GroupElement::Klein(1, 0)), Err(Error::IncompatibleGroups(_))));
    }

    #[test]
    fn dd_generators_positive() {
        for n in 2..=5usize {
            let dd = build(ConeDescriptor::Dd { n });
            for i in 1..n {
                let mut letters: Vec<i16> = (i as i16..n as i16).collect();
                if i % 2 == 0 {
                    letters = letters.iter().rev().map(|l| -l).collect();
                }
                let y = GroupElement::Braid(crate::braid::BraidWord::new(n, letters).unwrap());
                assert_eq!(dd.sign(&y).unwrap(), Sign::Positive, "y_{i} in B_{n}");
            }
        }
    }

    #[test]
    fn conjugate_by_identity_and_sigma1() {
        let pd = build(ConeDescriptor::Dehornoy { n: 3 });
        let g = pd.group();
        let q = conjugate_cone(&pd, &g.identity());
        for e in g.ball(2).unwrap().elements() {
            assert_eq!(q.sign(e).unwrap(), pd.sign(e).unwrap());
        }
        let q = conjugate_cone(&pd, &g.parse("s1").unwrap());
        let s2 = g.parse("s2").unwrap();
        let direct = pd.sign(&g.parse("S1 s2 s1").unwrap()).unwrap();
        assert_eq!(q.sign(&s2).unwrap(), direct);
        assert_eq!(direct, Sign::Positive);
    }

    #[test]
    fn short_descriptors() {
        assert_eq!(ConeDescriptor::parse_short("dehornoy:3").unwrap(), ConeDescriptor::Dehornoy { n: 3 });
        assert_eq!(ConeDescriptor::parse_short("klein:+,-").unwrap(), ConeDescriptor::KleinTararin { sx: 1, sy: -1 });
        let json = r#"{"type":"conjugate","g":"s1 s2","base":{"type":"dehornoy","n":3}}"#;
        let d = ConeDescriptor::parse_short(json).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), json);
        assert!(ConeDescriptor::parse_short("foo:3").is_err());
        assert!(matches!(ConeDescriptor::parse_short("lattice:0,1;1,0").unwrap(), ConeDescriptor::Lattice { .. }));
    }
}
