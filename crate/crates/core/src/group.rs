//! Element arithmetic and Cayley balls for `Z^k`, `B_n` and the Klein bottle group
//! `K = <x, y | x y x^{-1} = y^{-1}>`.
//!
//! Klein elements are stored in the normal form `x^a y^b`, with
//! `(a1, b1)(a2, b2) = (a1 + a2, (-1)^{a2} b1 + b2)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidWord, BurauKey};
use crate::budget::Budgets;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    FreeAbelian { k: usize },
    Braid { n: usize },
    KleinBottle,
}

impl Family {
    pub fn validate(self) -> Result<Self> {
        match self {
            Family::FreeAbelian { k: 0 } => {
                Err(Error::Precondition("free abelian rank must be >= 1".into()))
            }
            Family::Braid { n } if n < 2 => Err(Error::Precondition("braid group needs n >= 2".into())),
            f => Ok(f),
        }
    }

    /// Number of generators (each comes with an inverse letter).
    pub fn rank(self) -> usize {
        match self {
            Family::FreeAbelian { k } => k,
            Family::Braid { n } => n - 1,
            Family::KleinBottle => 2,
        }
    }

    pub fn generator_names(self) -> Vec<String> {
        match self {
            Family::FreeAbelian { k } => (1..=k).map(|i| format!("e{i}")).collect(),
            Family::Braid { n } => (1..n).map(|i| format!("s{i}")).collect(),
            Family::KleinBottle => vec!["x".into(), "y".into()],
        }
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, Family::FreeAbelian { .. } | Family::Braid { n: 2 })
    }

    /// Parses `z`, `z2`, `zk:3`, `klein`, `b3`, `braid:4`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("unknown group `{text}`"));
        let fam = if t == "z" {
            Family::FreeAbelian { k: 1 }
        } else if t == "klein" || t == "k" {
            Family::KleinBottle
        } else if let Some(rest) = t.strip_prefix("zk:").or_else(|| t.strip_prefix("z^")) {
            Family::FreeAbelian { k: rest.parse().map_err(|_| bad())? }
        } else if let Some(rest) = t.strip_prefix("braid:") {
            Family::Braid { n: rest.parse().map_err(|_| bad())? }
        } else if let Some(rest) = t.strip_prefix('z') {
            Family::FreeAbelian { k: rest.parse().map_err(|_| bad())? }
        } else if let Some(rest) = t.strip_prefix('b') {
            Family::Braid { n: rest.parse().map_err(|_| bad())? }
        } else {
            return Err(bad());
        };
        fam.validate()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FreeAbelian { k: 1 } => write!(f, "z"),
            Family::FreeAbelian { k } => write!(f, "z{k}"),
            Family::Braid { n } => write!(f, "b{n}"),
            Family::KleinBottle => write!(f, "klein"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupContext {
    family: Family,
    generators: Vec<String>,
}

impl GroupContext {
    pub fn new(family: Family) -> Result<Self> {
        let family = family.validate()?;
        Ok(GroupContext { family, generators: family.generator_names() })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }
}

/// A group element in the normal form of its family. Braid payloads are free-reduced
/// words; only [`Ball`] members carry the canonical shortest representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Lattice(Vec<i64>),
    Klein(i64, i64),
    Braid(BraidWord),
}

impl GroupElement {
    pub fn family(&self) -> Family {
        match self {
            GroupElement::Lattice(v) => Family::FreeAbelian { k: v.len() },
            GroupElement::Klein(..) => Family::KleinBottle,
            GroupElement::Braid(w) => Family::Braid { n: w.strands() },
        }
    }

    pub fn identity(family: Family) -> Self {
        match family {
            Family::FreeAbelian { k } => GroupElement::Lattice(vec![0; k]),
            Family::KleinBottle => GroupElement::Klein(0, 0),
            Family::Braid { n } => GroupElement::Braid(BraidWord::identity(n)),
        }
    }

    pub fn as_braid(&self) -> Option<&BraidWord> {
        match self {
            GroupElement::Braid(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_lattice(&self) -> Option<&[i64]> {
        match self {
            GroupElement::Lattice(v) => Some(v),
            _ => None,
        }
    }

    /// Parses an element of `family`: braid words `s1 S2`, lattice vectors `(1,-2)`,
    /// Klein pairs `(a,b)` or Klein words `x y X`.
    pub fn parse(family: Family, text: &str) -> Result<Self> {
        let t = text.trim();
        match family {
            Family::Braid { n } => Ok(GroupElement::Braid(BraidWord::parse(n, t)?)),
            Family::FreeAbelian { k } => {
                let v = parse_int_list(t)?;
                if v.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, got: v.len() });
                }
                Ok(GroupElement::Lattice(v))
            }
            Family::KleinBottle => {
                if t.chars().any(|c| c.is_ascii_digit()) {
                    let v = parse_int_list(t)?;
                    if v.len() != 2 {
                        return Err(Error::DimensionMismatch { expected: 2, got: v.len() });
                    }
                    Ok(GroupElement::Klein(v[0], v[1]))
                } else {
                    let mut g = GroupElement::Klein(0, 0);
                    for tok in t.split_whitespace().flat_map(|s| s.chars()) {
                        let letter = match tok {
                            'x' => GroupElement::Klein(1, 0),
                            'X' => GroupElement::Klein(-1, 0),
                            'y' => GroupElement::Klein(0, 1),
                            'Y' => GroupElement::Klein(0, -1),
                            c => return Err(Error::Parse(format!("bad Klein letter `{c}`"))),
                        };
                        g = klein_mul(&g, &letter)?;
                    }
                    Ok(g)
                }
            }
        }
    }
}

fn parse_int_list(t: &str) -> Result<Vec<i64>> {
    let inner = t.trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{s}`"))))
        .collect()
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Lattice(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Klein(a, b) => write!(f, "({a},{b})"),
            GroupElement::Braid(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Braid(w) => write!(f, "{w}"),
        }
    }
}

fn overflow() -> Error {
    Error::Precondition("integer overflow in element arithmetic".into())
}

fn klein_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    match (g, h) {
        (GroupElement::Klein(a1, b1), GroupElement::Klein(a2, b2)) => {
            let b1 = if a2.rem_euclid(2) == 0 { *b1 } else { -*b1 };
            Ok(GroupElement::Klein(
                a1.checked_add(*a2).ok_or_else(overflow)?,
                b1.checked_add(*b2).ok_or_else(overflow)?,
            ))
        }
        _ => Err(Error::IncompatibleGroups("expected Klein elements".into())),
    }
}

fn check_same(g: &GroupElement, h: &GroupElement) -> Result<()> {
    if g.family() != h.family() {
        return Err(Error::IncompatibleGroups(format!("{} vs {}", g.family(), h.family())));
    }
    Ok(())
}

/// Group operations for one family, carrying the word-problem budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    ctx: GroupContext,
    budgets: Budgets,
}

impl Group {
    pub fn new(family: Family, budgets: Budgets) -> Result<Self> {
        Ok(Group { ctx: GroupContext::new(family)?, budgets })
    }

    pub fn family(&self) -> Family {
        self.ctx.family
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    pub fn steps(&self) -> u64 {
        self.budgets.reduction_steps
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.ctx.family)
    }

    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        GroupElement::parse(self.ctx.family, text)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.family() != self.ctx.family {
            return Err(Error::IncompatibleGroups(format!(
                "element of {} used in {}",
                g.family(),
                self.ctx.family
            )));
        }
        Ok(())
    }

    /// Generator letters in the fixed order `g1, g1^-1, g2, g2^-1, ...`.
    pub fn letters(&self) -> Vec<GroupElement> {
        let mut out = Vec::new();
        match self.ctx.family {
            Family::FreeAbelian { k } => {
                for i in 0..k {
                    for s in [1, -1] {
                        let mut v = vec![0; k];
                        v[i] = s;
                        out.push(GroupElement::Lattice(v));
                    }
                }
            }
            Family::KleinBottle => {
                out.extend([
                    GroupElement::Klein(1, 0),
                    GroupElement::Klein(-1, 0),
                    GroupElement::Klein(0, 1),
                    GroupElement::Klein(0, -1),
                ]);
            }
            Family::Braid { n } => {
                for i in 1..n as i16 {
                    for l in [i, -i] {
                        out.push(GroupElement::Braid(BraidWord::from_raw(n, vec![l])));
                    }
                }
            }
        }
        out
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        check_same(g, h)?;
        self.check(g)?;
        match (g, h) {
            (GroupElement::Lattice(u), GroupElement::Lattice(v)) => u
                .iter()
                .zip(v)
                .map(|(a, b)| a.checked_add(*b).ok_or_else(overflow))
                .collect::<Result<Vec<_>>>()
                .map(GroupElement::Lattice),
            (GroupElement::Klein(..), GroupElement::Klein(..)) => klein_mul(g, h),
            (GroupElement::Braid(u), GroupElement::Braid(v)) => {
                Ok(GroupElement::Braid(braid::free_reduce(&u.concat(v)?)))
            }
            _ => unreachable!("families checked"),
        }
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        match g {
            GroupElement::Lattice(v) => GroupElement::Lattice(v.iter().map(|x| -x).collect()),
            GroupElement::Klein(a, b) => {
                GroupElement::Klein(-a, if a.rem_euclid(2) == 0 { -b } else { *b })
            }
            GroupElement::Braid(w) => GroupElement::Braid(w.inverse()),
        }
    }

    /// `g^{-1} h`.
    pub fn left_quotient(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.multiply(&self.invert(g), h)
    }

    /// `h^{-1} g h`.
    pub fn conjugate_by(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.multiply(&self.multiply(&self.invert(h), g)?, h)
    }

    pub fn pow(&self, g: &GroupElement, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.invert(g) } else { g.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.multiply(&acc, &base)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, g: &GroupElement) -> Result<bool> {
        self.check(g)?;
        match g {
            GroupElement::Lattice(v) => Ok(v.iter().all(|&x| x == 0)),
            GroupElement::Klein(a, b) => Ok(*a == 0 && *b == 0),
            GroupElement::Braid(w) => braid::is_trivial(w, self.steps()),
        }
    }

    pub fn equal(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        check_same(g, h)?;
        match (g, h) {
            (GroupElement::Braid(u), GroupElement::Braid(v)) => braid::braid_equal(u, v, self.steps()),
            _ => Ok(g == h),
        }
    }

    /// Word length with respect to the standard generators. Braids need a ball to answer.
    pub fn word_length(&self, g: &GroupElement) -> Option<usize> {
        match g {
            GroupElement::Lattice(v) => Some(v.iter().map(|x| x.unsigned_abs() as usize).sum()),
            GroupElement::Klein(a, b) => Some((a.unsigned_abs() + b.unsigned_abs()) as usize),
            GroupElement::Braid(_) => None,
        }
    }

    fn radius_budget(&self) -> usize {
        match self.ctx.family {
            Family::Braid { n } => self.budgets.braid_ball_radius(n),
            _ => self.budgets.ball_radius,
        }
    }

    /// All nontrivial elements of word length `<= radius`, BFS layer by layer, extending
    /// each earlier element by the letters in their fixed order.
    pub fn ball(&self, radius: usize) -> Result<Ball> {
        if radius > self.radius_budget() {
            return Err(Error::BallBudgetExceeded(format!(
                "radius {radius} exceeds {} for {}",
                self.radius_budget(),
                self.ctx.family
            )));
        }
        let mut ball = Ball::empty(self.clone());
        let letters = self.letters();
        let mut prev: Vec<GroupElement> = vec![self.identity()];
        for r in 1..=radius {
            let mut layer = Vec::new();
            for g in &prev {
                for l in &letters {
                    let cand = self.multiply(g, l)?;
                    if self.is_identity(&cand)? || ball.index_of(&cand)?.is_some() {
                        continue;
                    }
                    ball.push(cand.clone(), r);
                    layer.push(cand);
                }
            }
            ball.layer_ends.push(ball.elements.len());
            prev = layer;
        }
        ball.radius = radius;
        ball.link_inverses()?;
        Ok(ball)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum LookupKey {
    Exact(GroupElement),
    Burau(BurauKey),
}

/// A Cayley ball without the identity, closed under inversion.
#[derive(Debug, Clone)]
pub struct Ball {
    group: Group,
    radius: usize,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    /// `layer_ends[r]` = number of elements of length `<= r`.
    layer_ends: Vec<usize>,
    inverse: Vec<usize>,
    lookup: HashMap<LookupKey, Vec<usize>>,
}

impl Ball {
    fn empty(group: Group) -> Self {
        Ball {
            group,
            radius: 0,
            elements: Vec::new(),
            lengths: Vec::new(),
            layer_ends: vec![0],
            inverse: Vec::new(),
            lookup: HashMap::new(),
        }
    }

    fn key(g: &GroupElement) -> LookupKey {
        match g {
            GroupElement::Braid(w) => LookupKey::Burau(BurauKey::of(w)),
            other => LookupKey::Exact(other.clone()),
        }
    }

    fn push(&mut self, g: GroupElement, len: usize) {
        let idx = self.elements.len();
        self.lookup.entry(Ball::key(&g)).or_default().push(idx);
        self.elements.push(g);
        self.lengths.push(len);
    }

    fn link_inverses(&mut self) -> Result<()> {
        let mut inverse = Vec::with_capacity(self.elements.len());
        for g in &self.elements {
            let inv = self.group.invert(g);
            let j = self
                .index_of(&inv)?
                .ok_or_else(|| Error::Inconsistent(format!("ball not closed under inverse at {g}")))?;
            inverse.push(j);
        }
        self.inverse = inverse;
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn family(&self) -> Family {
        self.group.family()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    /// Word length of the `i`-th element.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// Index of the inverse of the `i`-th element.
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Number of elements of word length `<= r`.
    pub fn count_within(&self, r: usize) -> usize {
        self.layer_ends[r.min(self.radius)]
    }

    /// Position of `g` in the ball, deciding braid equality by the word problem.
    pub fn index_of(&self, g: &GroupElement) -> Result<Option<usize>> {
        let Some(bucket) = self.lookup.get(&Ball::key(g)) else {
            return Ok(None);
        };
        for &i in bucket {
            if self.group.equal(&self.elements[i], g)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(f: Family) -> Group {
        Group::new(f, Budgets::default()).unwrap()
    }

    #[test]
    fn klein_multiplication() {
        let k = group(Family::KleinBottle);
        let x = GroupElement::Klein(1, 0);
        let y = GroupElement::Klein(0, 1);
        assert_eq!(k.multiply(&x, &y).unwrap(), GroupElement::Klein(1, 1));
        assert_eq!(k.multiply(&y, &x).unwrap(), GroupElement::Klein(1, -1));
        assert_eq!(k.invert(&GroupElement::Klein(1, -1)), GroupElement::Klein(-1, -1));
        let xyx = k.multiply(&k.multiply(&x, &y).unwrap(), &k.invert(&x)).unwrap();
        assert_eq!(xyx, GroupElement::Klein(0, -1));
    }

    #[test]
    fn lattice_multiplication() {
        let z = group(Family::FreeAbelian { k: 2 });
        let g = GroupElement::Lattice(vec![1, 2]);
        let h = GroupElement::Lattice(vec![-1, 3]);
        assert_eq!(z.multiply(&g, &h).unwrap(), GroupElement::Lattice(vec![0, 5]));
        assert_eq!(z.invert(&GroupElement::Lattice(vec![3, -1])), GroupElement::Lattice(vec![-3, 1]));
        assert!(z.is_identity(&GroupElement::Lattice(vec![0, 0])).unwrap());
    }

    #[test]
    fn context_mismatch() {
        let z = group(Family::FreeAbelian { k: 2 });
        let err = z.multiply(&GroupElement::Lattice(vec![1, 2]), &GroupElement::Klein(0, 1));
        assert!(matches!(err, Err(Error::IncompatibleGroups(_))));
    }

    #[test]
    fn braid_identity_and_inverse() {
        let b = group(Family::Braid { n: 3 });
        let g = b.parse("s1 s2 s1 S2 S1 S2").unwrap();
        assert!(b.is_identity(&g).unwrap());
        assert_eq!(b.invert(&b.parse("s1 s2").unwrap()).to_string(), "S2 S1");
        assert!(!group(Family::KleinBottle).is_identity(&GroupElement::Klein(0, 1)).unwrap());
        assert!(group(Family::FreeAbelian { k: 3 }).is_identity(&GroupElement::Lattice(vec![0; 3])).unwrap());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(group(Family::FreeAbelian { k: 2 }).ball(1).unwrap().len(), 4);
        assert_eq!(group(Family::KleinBottle).ball(1).unwrap().len(), 4);
        assert_eq!(group(Family::Braid { n: 3 }).ball(2).unwrap().len(), 16);
        assert_eq!(group(Family::FreeAbelian { k: 2 }).ball(2).unwrap().len(), 12);
        assert_eq!(group(Family::FreeAbelian { k: 1 }).ball(0).unwrap().len(), 0);
    }

    #[test]
    fn ball_budget() {
        let b = group(Family::Braid { n: 3 });
        assert!(matches!(b.ball(5), Err(Error::BallBudgetExceeded(_))));
    }

    #[test]
    fn ball_is_inverse_closed_and_ordered() {
        let b = group(Family::Braid { n: 3 });
        let ball = b.ball(3).unwrap();
        for i in 0..ball.len() {
            let j = ball.inverse_index(i);
            assert_eq!(ball.inverse_index(j), i);
            assert_eq!(ball.length(i), ball.length(j));
            assert_eq!(ball.element(i).as_braid().unwrap().len(), ball.length(i));
        }
        assert_eq!(ball.element(0).to_string(), "s1");
        assert_eq!(ball.element(1).to_string(), "S1");
    }

    #[test]
    fn family_parse() {
        assert_eq!(Family::parse("z").unwrap(), Family::FreeAbelian { k: 1 });
        assert_eq!(Family::parse("z3").unwrap(), Family::FreeAbelian { k: 3 });
        assert_eq!(Family::parse("b4").unwrap(), Family::Braid { n: 4 });
        assert_eq!(Family::parse("braid:3").unwrap(), Family::Braid { n: 3 });
        assert_eq!(Family::parse("klein").unwrap(), Family::KleinBottle);
        assert!(Family::parse("b1").is_err());
        assert!(Family::parse("q").is_err());
    }

    #[test]
    fn klein_word_parse() {
        let k = group(Family::KleinBottle);
        assert_eq!(k.parse("y x").unwrap(), GroupElement::Klein(1, -1));
        assert_eq!(k.parse("(2,-3)").unwrap(), GroupElement::Klein(2, -3));
    }
}
