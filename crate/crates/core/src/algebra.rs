//! The seven-dimensional algebra `Λ_q = kQ/⟨a², b², ab − q·ba, ac⟩` for the
//! quiver with two loops `a, b` at vertex 1 and an arrow `c: 1 → 2`.
//!
//! The normal-form basis is `{e1, e2, a, b, c, ba, bc}`. The path `ab` is
//! rewritten to `q·ba`, so the same basis works for every `q` (including 0).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    One,
    Two,
}

impl Vertex {
    pub fn label(self) -> u8 {
        match self {
            Vertex::One => 1,
            Vertex::Two => 2,
        }
    }

    pub fn idempotent(self) -> BasisPath {
        match self {
            Vertex::One => BasisPath::E1,
            Vertex::Two => BasisPath::E2,
        }
    }
}

/// A normal-form path of `Λ_q`. The derived order is the canonical basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisPath {
    E1,
    E2,
    A,
    B,
    C,
    BA,
    BC,
}

impl BasisPath {
    pub const ALL: [BasisPath; 7] = [
        BasisPath::E1,
        BasisPath::E2,
        BasisPath::A,
        BasisPath::B,
        BasisPath::C,
        BasisPath::BA,
        BasisPath::BC,
    ];

    /// The radical basis (paths of positive length).
    pub const RADICAL: [BasisPath; 5] = [BasisPath::A, BasisPath::B, BasisPath::C, BasisPath::BA, BasisPath::BC];

    pub fn origin(self) -> Vertex {
        match self {
            BasisPath::E2 => Vertex::Two,
            _ => Vertex::One,
        }
    }

    pub fn terminus(self) -> Vertex {
        match self {
            BasisPath::E2 | BasisPath::C | BasisPath::BC => Vertex::Two,
            _ => Vertex::One,
        }
    }

    pub fn length(self) -> usize {
        match self {
            BasisPath::E1 | BasisPath::E2 => 0,
            BasisPath::A | BasisPath::B | BasisPath::C => 1,
            BasisPath::BA | BasisPath::BC => 2,
        }
    }

    pub fn is_idempotent(self) -> bool {
        self.length() == 0
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisPath::E1 => "e1",
            BasisPath::E2 => "e2",
            BasisPath::A => "a",
            BasisPath::B => "b",
            BasisPath::C => "c",
            BasisPath::BA => "ba",
            BasisPath::BC => "bc",
        }
    }
}

impl fmt::Display for BasisPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BasisPath::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis path `{s}`")))
    }
}

/// Product of two basis paths: `Some((coefficient, path))`, or `None` when the
/// product vanishes (vertex mismatch or a relation).
pub fn basis_product(x: BasisPath, y: BasisPath, ctx: &FieldContext) -> Option<(Scalar, BasisPath)> {
    use BasisPath::*;
    if x.terminus() != y.origin() {
        return None;
    }
    let (coeff, path) = match (x, y) {
        (E1 | E2, y) => (ctx.one(), y),
        (x, E1 | E2) => (ctx.one(), x),
        (A, B) => (ctx.q().clone(), BA),
        (B, A) => (ctx.one(), BA),
        (B, C) => (ctx.one(), BC),
        // a², b², ac and every length-3 path vanish.
        _ => return None,
    };
    (!coeff.is_zero()).then_some((coeff, path))
}

/// Ordered basis of `e_origin · Λ · e_terminus`.
pub fn component_subspace(origin: Vertex, terminus: Vertex) -> &'static [BasisPath] {
    use BasisPath::*;
    match (origin, terminus) {
        (Vertex::One, Vertex::One) => &[E1, A, B, BA],
        (Vertex::One, Vertex::Two) => &[C, BC],
        (Vertex::Two, Vertex::Two) => &[E2],
        (Vertex::Two, Vertex::One) => &[],
    }
}

/// A linear combination of basis paths. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisPath, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(path: BasisPath, ctx: &FieldContext) -> Self {
        Self::term(path, ctx.one())
    }

    pub fn term(path: BasisPath, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(path, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisPath, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    /// `e1 + e2`.
    pub fn identity(ctx: &FieldContext) -> Self {
        Self::from_terms([(BasisPath::E1, ctx.one()), (BasisPath::E2, ctx.one())])
    }

    pub fn add_term(&mut self, path: BasisPath, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&path) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&path);
                }
            }
            None => {
                self.terms.insert(path, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, path: BasisPath) -> Option<&Scalar> {
        self.terms.get(&path)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisPath, &Scalar)> + '_ {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = BasisPath> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, c)| (*p, c * s)))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*p, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, c)| (*p, -c)))
    }

    /// Bilinear extension of [`basis_product`].
    pub fn multiply(&self, rhs: &Self, ctx: &FieldContext) -> Self {
        let mut out = Self::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &rhs.terms {
                if let Some((c, z)) = basis_product(*x, *y, ctx) {
                    out.add_term(z, &(cx * cy) * &c);
                }
            }
        }
        out
    }

    pub fn left_mul_path(&self, path: BasisPath, ctx: &FieldContext) -> Self {
        Self::basis(path, ctx).multiply(self, ctx)
    }

    pub fn right_mul_path(&self, path: BasisPath, ctx: &FieldContext) -> Self {
        self.multiply(&Self::basis(path, ctx), ctx)
    }

    /// Every supporting path runs from `origin` to `terminus`.
    pub fn lies_in(&self, origin: Vertex, terminus: Vertex) -> bool {
        self.support().all(|p| p.origin() == origin && p.terminus() == terminus)
    }

    /// Common path length of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lens = self.support().map(BasisPath::length);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Parses `"2*ba - 1/3*a + e1"`. `ab` is accepted and becomes `q·ba`;
    /// a bare `0` is the zero element.
    pub fn parse(text: &str, ctx: &FieldContext) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty algebra element".into()));
        }
        let mut out = Self::zero();
        for (negative, term) in split_signed_terms(&compact)? {
            let (coeff, name) = match term.rsplit_once('*') {
                Some((c, n)) => (ctx.parse_scalar(c)?, n),
                None if term.chars().next().is_some_and(|c| c.is_ascii_digit()) => {
                    if ctx.parse_scalar(term)?.is_zero() {
                        continue;
                    }
                    return Err(Error::Parse(format!("bare scalar `{term}` needs a path name")));
                }
                None => (ctx.one(), term),
            };
            let coeff = if negative { -coeff } else { coeff };
            if name == "ab" {
                out.add_term(BasisPath::BA, &coeff * ctx.q());
            } else {
                out.add_term(name.parse()?, coeff);
            }
        }
        Ok(out)
    }
}

fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let dangling = || Error::Parse(format!("dangling sign in `{s}`"));
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let (mut negative, mut start) = match bytes.first() {
        Some(b'-') => (true, 1),
        Some(b'+') => (false, 1),
        _ => (false, 0),
    };
    for (i, &ch) in bytes.iter().enumerate().skip(start) {
        if ch == b'+' || ch == b'-' {
            let term = &s[start..i];
            if term.is_empty() {
                return Err(dangling());
            }
            terms.push((negative, term));
            negative = ch == b'-';
            start = i + 1;
        }
    }
    let last = &s[start..];
    if last.is_empty() {
        return Err(dangling());
    }
    terms.push((negative, last));
    Ok(terms)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (path, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative_display();
            let magnitude = if negative { -coeff } else { coeff.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude.is_one() {
                write!(f, "{path}")?;
            } else {
                write!(f, "{magnitude}*{path}")?;
            }
        }
        Ok(())
    }
}
