//! Subgroup predicates used as candidate convex subgroups.

use serde::{Deserialize, Serialize};

use crate::braid::{self, shift_embed, BraidWord};
use crate::error::{Error, Result};
use crate::group::{Family, Group, GroupElement};
use crate::lattice::Sublattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConvexPredicate {
    /// `sh^r(B_{n-r}) = <σ_{r+1}, …, σ_{n-1}>`.
    BraidShift { r: usize },
    /// `<y>` in the Klein bottle group.
    KleinY,
    /// A saturated sublattice of `Z^k`.
    LatticeSublattice { basis: Vec<Vec<i64>> },
    /// The cyclic subgroup generated by one element.
    Cyclic { generator: String },
    /// The whole group.
    Whole,
}

impl ConvexPredicate {
    /// `shift:1`, `klein-y`, `sublattice:1,0;0,1`, `cyclic:s1`, `whole`, or JSON.
    pub fn parse_short(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(format!("convex predicate: {e}")));
        }
        let (kind, arg) = t.split_once(':').unwrap_or((t, ""));
        match kind.trim().to_ascii_lowercase().as_str() {
            "shift" => Ok(ConvexPredicate::BraidShift {
                r: arg.trim().parse().map_err(|_| Error::Parse(format!("bad shift in `{text}`")))?,
            }),
            "klein-y" | "y" => Ok(ConvexPredicate::KleinY),
            "whole" => Ok(ConvexPredicate::Whole),
            "cyclic" => Ok(ConvexPredicate::Cyclic { generator: arg.trim().to_string() }),
            "sublattice" => {
                let basis = arg
                    .split(';')
                    .filter(|r| !r.trim().is_empty())
                    .map(|row| {
                        row.split(',')
                            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad entry `{x}`"))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                Ok(ConvexPredicate::LatticeSublattice { basis })
            }
            other => Err(Error::Parse(format!("unknown convex predicate `{other}`"))),
        }
    }

    pub fn bind(&self, group: &Group) -> Result<BoundConvex> {
        let family = group.family();
        let kind = match (self, family) {
            (ConvexPredicate::BraidShift { r }, Family::Braid { n }) => {
                if *r >= n {
                    return Err(Error::Precondition(format!("shift {r} out of range for B_{n}")));
                }
                Bound::Shift { n, r: *r }
            }
            (ConvexPredicate::KleinY, Family::KleinBottle) => Bound::KleinY,
            (ConvexPredicate::LatticeSublattice { basis }, Family::FreeAbelian { k }) => {
                Bound::Sublattice(Sublattice::new(k, basis.clone())?)
            }
            (ConvexPredicate::Cyclic { generator }, _) => {
                let c = group.parse(generator)?;
                if group.is_identity(&c)? {
                    return Err(Error::Precondition("cyclic generator must be nontrivial".into()));
                }
                if let GroupElement::Braid(w) = &c {
                    if w.exponent_sum() == 0 {
                        return Err(Error::Unsupported(
                            "cyclic braid subgroups need a generator with nonzero exponent sum".into(),
                        ));
                    }
                }
                Bound::Cyclic(c)
            }
            (ConvexPredicate::Whole, _) => Bound::Whole,
            (p, f) => {
                return Err(Error::IncompatibleGroups(format!("predicate {p:?} does not apply to {f}")));
            }
        };
        Ok(BoundConvex { predicate: self.clone(), group: group.clone(), kind })
    }
}

#[derive(Debug, Clone)]
enum Bound {
    Shift { n: usize, r: usize },
    KleinY,
    Sublattice(Sublattice),
    Cyclic(GroupElement),
    Whole,
}

/// A predicate bound to a group, with membership and the coordinate map onto the
/// subgroup's own family.
#[derive(Debug, Clone)]
pub struct BoundConvex {
    predicate: ConvexPredicate,
    group: Group,
    kind: Bound,
}

impl BoundConvex {
    pub fn predicate(&self) -> &ConvexPredicate {
        &self.predicate
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Exponent `k` with `g = c^k`, if any.
    fn cyclic_exponent(&self, c: &GroupElement, g: &GroupElement) -> Result<Option<i64>> {
        let k = match (c, g) {
            (GroupElement::Lattice(cv), GroupElement::Lattice(gv)) => {
                let Some(i) = cv.iter().position(|&x| x != 0) else { return Ok(None) };
                if gv[i] % cv[i] != 0 {
                    return Ok(None);
                }
                gv[i] / cv[i]
            }
            (GroupElement::Klein(ca, cb), GroupElement::Klein(ga, gb)) => {
                if *ca != 0 {
                    if ga % ca != 0 {
                        return Ok(None);
                    }
                    ga / ca
                } else {
                    if *ga != 0 || gb % cb != 0 {
                        return Ok(None);
                    }
                    gb / cb
                }
            }
            (GroupElement::Braid(cw), GroupElement::Braid(gw)) => {
                let e = cw.exponent_sum();
                let s = gw.exponent_sum();
                if s % e != 0 {
                    return Ok(None);
                }
                s / e
            }
            _ => return Err(Error::IncompatibleGroups("cyclic generator family".into())),
        };
        let power = self.group.pow(c, k)?;
        Ok(if self.group.equal(&power, g)? { Some(k) } else { None })
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        match (&self.kind, g) {
            (Bound::Whole, _) => Ok(true),
            (Bound::Shift { r, .. }, GroupElement::Braid(w)) => {
                let report = braid::main_sign(w, self.group.steps())?;
                Ok(report.index.is_none_or(|i| i > *r))
            }
            (Bound::KleinY, GroupElement::Klein(a, _)) => Ok(*a == 0),
            (Bound::Sublattice(s), GroupElement::Lattice(v)) => s.contains(v),
            (Bound::Cyclic(c), g) => Ok(self.cyclic_exponent(c, g)?.is_some()),
            _ => Err(Error::IncompatibleGroups(format!("element {g} for predicate {:?}", self.predicate))),
        }
    }

    /// Family of the subgroup as an abstract group: `B_{n-r}`, `Z`, `Z^m`, or the group itself.
    pub fn subgroup_family(&self) -> Result<Family> {
        match &self.kind {
            Bound::Shift { n, r } if n - r >= 2 => Ok(Family::Braid { n: n - r }),
            Bound::Shift { .. } => Err(Error::Unsupported("trivial shifted subgroup has no cones".into())),
            Bound::KleinY | Bound::Cyclic(_) => Ok(Family::FreeAbelian { k: 1 }),
            Bound::Sublattice(s) if s.rank() > 0 => Ok(Family::FreeAbelian { k: s.rank() }),
            Bound::Sublattice(_) => Err(Error::Unsupported("trivial sublattice has no cones".into())),
            Bound::Whole => Ok(self.group.family()),
        }
    }

    /// Image of a member `g` in the subgroup's own coordinates.
    pub fn to_subgroup(&self, g: &GroupElement) -> Result<GroupElement> {
        match (&self.kind, g) {
            (Bound::Whole, g) => Ok(g.clone()),
            (Bound::Shift { n, r }, GroupElement::Braid(w)) => {
                let reduced = braid::handle_reduce(w, self.group.steps())?;
                let mut letters = Vec::with_capacity(reduced.len());
                for &l in reduced.letters() {
                    let idx = l.unsigned_abs() as usize;
                    if idx <= *r {
                        return Err(Error::Precondition(format!("{g} is not in sh^{r}(B_{})", n - r)));
                    }
                    let j = (idx - r) as i16;
                    letters.push(if l > 0 { j } else { -j });
                }
                Ok(GroupElement::Braid(BraidWord::new(n - r, letters)?))
            }
            (Bound::KleinY, GroupElement::Klein(0, b)) => Ok(GroupElement::Lattice(vec![*b])),
            (Bound::Sublattice(s), GroupElement::Lattice(v)) => {
                let (inner, quot) = s.split(v)?;
                if quot.iter().any(|&x| x != 0) {
                    return Err(Error::Precondition(format!("{g} is not in the sublattice")));
                }
                Ok(GroupElement::Lattice(inner))
            }
            (Bound::Cyclic(c), g) => match self.cyclic_exponent(c, g)? {
                Some(k) => Ok(GroupElement::Lattice(vec![k])),
                None => Err(Error::Precondition(format!("{g} is not a power of {c}"))),
            },
            _ => Err(Error::Precondition(format!("{g} is not in {:?}", self.predicate))),
        }
    }

    /// Inverse of [`to_subgroup`](Self::to_subgroup).
    pub fn from_subgroup(&self, h: &GroupElement) -> Result<GroupElement> {
        match (&self.kind, h) {
            (Bound::Whole, h) => Ok(h.clone()),
            (Bound::Shift { n, r }, GroupElement::Braid(w)) => Ok(GroupElement::Braid(shift_embed(*r, w, *n)?)),
            (Bound::KleinY, GroupElement::Lattice(v)) if v.len() == 1 => Ok(GroupElement::Klein(0, v[0])),
            (Bound::Sublattice(s), GroupElement::Lattice(c)) if c.len() == s.rank() => {
                let mut v = vec![0i64; s.dim()];
                for (ci, b) in c.iter().zip(s.basis()) {
                    for (vj, bj) in v.iter_mut().zip(b) {
                        *vj += ci * bj;
                    }
                }
                Ok(GroupElement::Lattice(v))
            }
            (Bound::Cyclic(c), GroupElement::Lattice(v)) if v.len() == 1 => self.group.pow(c, v[0]),
            _ => Err(Error::IncompatibleGroups(format!("{h} is not a subgroup coordinate"))),
        }
    }
}
