//! The minimal projective bimodule resolution `K` of `Λ_q`.
//!
//! In degree `n ≥ 1` there are `n + 2` generators `ε^n_0 … ε^n_{n+1}`. The
//! generator `ε^n_i` corresponds to the Koszul element `f^n_i`, which for
//! `i ≤ n` is the signed sum of all words with `i` letters `b` and `n − i`
//! letters `a` (weight `(−q)^{#(b before a)}`), and for `i = n + 1` is
//! `a^{⊗(n−1)} ⊗ c`. Degree 0 has the two vertex generators `e1`, `e2`.
//!
//! Besides the differentials this module builds the comultiplication
//! `Δ_K: K → K ⊗_Λ K` used for cup products, plus the algebraic checks that
//! certify it (chain map, coassociativity).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{basis_product, BasisPath, Vertex};
use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};

/// Largest generator index in degree `n`.
pub fn max_index(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        n + 1
    }
}

/// A free generator `ε^degree_index` of `K_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub degree: usize,
    pub index: usize,
}

impl Generator {
    pub fn new(degree: usize, index: usize) -> Result<Self> {
        if index > max_index(degree) {
            return Err(Error::IndexOutOfRange { degree, index });
        }
        Ok(Self { degree, index })
    }

    pub fn all(degree: usize) -> impl Iterator<Item = Generator> {
        (0..=max_index(degree)).map(move |index| Generator { degree, index })
    }

    pub fn origin(self) -> Vertex {
        if self.degree == 0 && self.index == 1 {
            Vertex::Two
        } else {
            Vertex::One
        }
    }

    pub fn terminus(self) -> Vertex {
        if self.index == max_index(self.degree) {
            Vertex::Two
        } else {
            Vertex::One
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε^{}_{}", self.degree, self.index)
    }
}

/// A word of letters; degree-0 generators are the one-letter words `e1`, `e2`.
pub type Word = Vec<BasisPath>;

/// A linear combination of words in the tensor algebra over the vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordCombination {
    terms: BTreeMap<Word, Scalar>,
}

impl WordCombination {
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let updated = match self.terms.get(&word) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[BasisPath]) -> Option<&Scalar> {
        self.terms.get(word)
    }

    fn append(&self, letter: BasisPath, coeff: &Scalar, into: &mut WordCombination) {
        for (w, c) in &self.terms {
            let mut w = w.clone();
            w.push(letter);
            into.add_term(w, c * coeff);
        }
    }
}

/// Expands `f^n_i` as a combination of words, following the recursion
/// `f^n_i = f^{n−1}_{i−1} ⊗ b + (−q)^i f^{n−1}_i ⊗ a` for `0 < i < n`.
///
/// The output has `C(n, i)` words, so this is only meant for small `n`.
pub fn gamma_element(n: usize, i: usize, ctx: &FieldContext) -> Result<WordCombination> {
    use BasisPath::*;
    Generator::new(n, i)?;
    let mut out = WordCombination::default();
    match (n, i) {
        (0, 0) => out.add_term(vec![E1], ctx.one()),
        (0, _) => out.add_term(vec![E2], ctx.one()),
        (1, 0) => out.add_term(vec![A], ctx.one()),
        (1, 1) => out.add_term(vec![B], ctx.one()),
        (1, _) => out.add_term(vec![C], ctx.one()),
        (n, 0) => out.add_term(vec![A; n], ctx.one()),
        (n, i) if i == n => out.add_term(vec![B; n], ctx.one()),
        (n, i) if i == n + 1 => {
            let mut w = vec![A; n - 1];
            w.push(C);
            out.add_term(w, ctx.one());
        }
        (n, i) => {
            gamma_element(n - 1, i - 1, ctx)?.append(B, &ctx.one(), &mut out);
            gamma_element(n - 1, i, ctx)?.append(A, &ctx.neg_q_pow(i as u64), &mut out);
        }
    }
    Ok(out)
}

/// A basis element `left · ε · right` of a free bimodule `K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BimoduleTerm {
    pub generator: Generator,
    pub left: BasisPath,
    pub right: BasisPath,
}

/// An element of `K_n` in the basis `{left ⊗ right}` of each summand
/// `Λ o(f) ⊗ t(f) Λ`. Terms violating slot typing are dropped as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BimoduleCombination {
    terms: BTreeMap<BimoduleTerm, Scalar>,
}

impl BimoduleCombination {
    pub fn generator(g: Generator, ctx: &FieldContext) -> Self {
        let mut out = Self::default();
        out.add_term(g.origin().idempotent(), g, g.terminus().idempotent(), ctx.one());
        out
    }

    pub fn add_term(&mut self, left: BasisPath, generator: Generator, right: BasisPath, coeff: Scalar) {
        if coeff.is_zero() || left.terminus() != generator.origin() || right.origin() != generator.terminus() {
            return;
        }
        let key = BimoduleTerm { generator, left, right };
        let updated = match self.terms.get(&key) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BimoduleTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        for (t, c) in &other.terms {
            self.add_term(t.left, t.generator, t.right, c * s);
        }
    }

    /// `x · self · y` for basis paths `x`, `y`.
    pub fn sandwich(&self, x: BasisPath, y: BasisPath, ctx: &FieldContext) -> Self {
        let mut out = Self::default();
        for (t, c) in &self.terms {
            let (Some((cl, l)), Some((cr, r))) = (basis_product(x, t.left, ctx), basis_product(t.right, y, ctx)) else {
                continue;
            };
            out.add_term(l, t.generator, r, &(c * &cl) * &cr);
        }
        out
    }

    /// Applies the differential bimodule-linearly. Degree-0 terms map to 0.
    pub fn apply_differential(&self, ctx: &FieldContext) -> Result<Self> {
        let mut out = Self::default();
        for (t, c) in &self.terms {
            if t.generator.degree == 0 {
                continue;
            }
            let d = differential(t.generator.degree, t.generator.index, ctx)?;
            out.add_scaled(&d.sandwich(t.left, t.right, ctx), c);
        }
        Ok(out)
    }
}

impl fmt::Display for BimoduleCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{}·{}·{}", t.left, t.generator, t.right)?;
        }
        Ok(())
    }
}

/// `d_n(ε^n_i)` as an element of `K_{n−1}`.
pub fn differential(n: usize, i: usize, ctx: &FieldContext) -> Result<BimoduleCombination> {
    use BasisPath::*;
    if n == 0 {
        return Err(Error::DegreeZeroDifferential);
    }
    Generator::new(n, i)?;
    let one = ctx.one();
    let g = |index| Generator { degree: n - 1, index };
    let mut out = BimoduleCombination::default();
    if n == 1 && i == 2 {
        out.add_term(C, g(1), E2, one.clone());
        out.add_term(E1, g(0), C, -one);
    } else if i == n + 1 {
        // a ε^{n-1}_n + (-1)^n ε^{n-1}_0 c
        out.add_term(A, g(n), E2, one);
        out.add_term(E1, g(0), C, ctx.sign(n as u64));
    } else {
        if i != n {
            out.add_term(A, g(i), E1, one.clone());
            out.add_term(E1, g(i), A, &ctx.sign((n - i) as u64) * &ctx.q_pow(i as u64));
        }
        if i != 0 {
            out.add_term(B, g(i - 1), E1, ctx.neg_q_pow((n - i) as u64));
            out.add_term(E1, g(i - 1), B, ctx.sign(n as u64));
        }
    }
    Ok(out)
}

/// A generator-level element of `K ⊗_Λ K`: pairs `ε ⊗ ε'` whose middle
/// idempotents agree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorCombination {
    terms: BTreeMap<(Generator, Generator), Scalar>,
}

impl TensorCombination {
    pub fn add_term(&mut self, left: Generator, right: Generator, coeff: Scalar) {
        if coeff.is_zero() || left.terminus() != right.origin() {
            return;
        }
        let key = (left, right);
        let updated = match self.terms.get(&key) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Generator, Generator), &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: Generator, right: Generator) -> Option<&Scalar> {
        self.terms.get(&(left, right))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The `t`-component of `Δ_K(ε^n_r)`: the terms `ε^t_j ⊗ ε^{n−t}_{r−j}`.
pub fn comultiplication_component(n: usize, r: usize, t: usize, ctx: &FieldContext) -> Result<Vec<(Generator, Generator, Scalar)>> {
    Generator::new(n, r)?;
    let gen = |degree, index| Generator { degree, index };
    if t > n {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![(gen(0, r), gen(0, r), ctx.one())]);
    }
    if r == n + 1 {
        // Splittings of a^{⊗(n−1)} ⊗ c; the last one ends on the vertex-2 generator.
        let term = if t < n { (gen(t, 0), gen(n - t, n - t + 1)) } else { (gen(n, n + 1), gen(0, 1)) };
        return Ok(vec![(term.0, term.1, ctx.one())]);
    }
    let lo = (r + t).saturating_sub(n);
    let hi = t.min(r);
    Ok((lo..=hi)
        .map(|j| {
            let exponent = j * (n + j - r - t);
            (gen(t, j), gen(n - t, r - j), ctx.neg_q_pow(exponent as u64))
        })
        .collect())
}

/// `Δ_K(ε^n_r)`.
pub fn comultiplication(n: usize, r: usize, ctx: &FieldContext) -> Result<TensorCombination> {
    let mut out = TensorCombination::default();
    for t in 0..=n {
        for (a, b, c) in comultiplication_component(n, r, t, ctx)? {
            out.add_term(a, b, c);
        }
    }
    Ok(out)
}

/// Sign rule for the differential on `K ⊗_Λ K`:
/// `d(x ⊗ y) = dx ⊗ y + σ · x ⊗ dy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorSign {
    /// `σ = (−1)^{|x|}`.
    Koszul,
    /// `σ = 1`.
    Plain,
}

/// Basis element `left · ε ⊗ mid ⊗ ε' · right` of `K ⊗_Λ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorTerm {
    pub left_generator: Generator,
    pub right_generator: Generator,
    pub left: BasisPath,
    pub mid: BasisPath,
    pub right: BasisPath,
}

/// A general element of `K ⊗_Λ K ≅ ⊕ Λo(x) ⊗ t(x)Λo(y) ⊗ t(y)Λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<TensorTerm, Scalar>,
}

impl TensorElement {
    pub fn add_term(&mut self, term: TensorTerm, coeff: Scalar) {
        let typed = term.left.terminus() == term.left_generator.origin()
            && term.mid.origin() == term.left_generator.terminus()
            && term.mid.terminus() == term.right_generator.origin()
            && term.right.origin() == term.right_generator.terminus();
        if coeff.is_zero() || !typed {
            return;
        }
        let updated = match self.terms.get(&term) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&term);
        } else {
            self.terms.insert(term, updated);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, -c);
        }
        out
    }

    /// `Δ_K` applied bimodule-linearly to an element of `K_n`.
    pub fn comultiply(x: &BimoduleCombination, ctx: &FieldContext) -> Result<Self> {
        let mut out = Self::default();
        for (t, c) in x.terms() {
            let delta = comultiplication(t.generator.degree, t.generator.index, ctx)?;
            for ((lg, rg), dc) in delta.terms() {
                let term = TensorTerm {
                    left_generator: *lg,
                    right_generator: *rg,
                    left: t.left,
                    mid: lg.terminus().idempotent(),
                    right: t.right,
                };
                out.add_term(term, c * dc);
            }
        }
        Ok(out)
    }

    /// `(d ⊗ 1 + σ · 1 ⊗ d)` applied to `self`.
    pub fn apply_differential(&self, sign: TensorSign, ctx: &FieldContext) -> Result<Self> {
        let mut out = Self::default();
        for (t, c) in &self.terms {
            if t.left_generator.degree > 0 {
                let d = differential(t.left_generator.degree, t.left_generator.index, ctx)?;
                for (bt, bc) in d.terms() {
                    let (Some((c1, l)), Some((c2, m))) =
                        (basis_product(t.left, bt.left, ctx), basis_product(bt.right, t.mid, ctx))
                    else {
                        continue;
                    };
                    let term = TensorTerm { left_generator: bt.generator, left: l, mid: m, ..*t };
                    out.add_term(term, &(&(c * bc) * &c1) * &c2);
                }
            }
            if t.right_generator.degree > 0 {
                let sigma = match sign {
                    TensorSign::Koszul => ctx.sign(t.left_generator.degree as u64),
                    TensorSign::Plain => ctx.one(),
                };
                let d = differential(t.right_generator.degree, t.right_generator.index, ctx)?;
                for (bt, bc) in d.terms() {
                    let (Some((c1, m)), Some((c2, r))) =
                        (basis_product(t.mid, bt.left, ctx), basis_product(bt.right, t.right, ctx))
                    else {
                        continue;
                    };
                    let term = TensorTerm { right_generator: bt.generator, mid: m, right: r, ..*t };
                    out.add_term(term, &(&(&(c * bc) * &c1) * &c2) * &sigma);
                }
            }
        }
        Ok(out)
    }
}

/// `Δ(d ε^n_r) − (d⊗1 + σ·1⊗d) Δ(ε^n_r)`; zero exactly when `Δ` commutes
/// with the differential on this generator.
pub fn chain_map_defect(n: usize, r: usize, sign: TensorSign, ctx: &FieldContext) -> Result<TensorElement> {
    let g = Generator::new(n, r)?;
    let lhs = if n == 0 {
        TensorElement::default()
    } else {
        TensorElement::comultiply(&differential(n, r, ctx)?, ctx)?
    };
    let rhs = TensorElement::comultiply(&BimoduleCombination::generator(g, ctx), ctx)?.apply_differential(sign, ctx)?;
    Ok(lhs.sub(&rhs))
}

/// `(Δ⊗1)Δ(ε^n_r) − (1⊗Δ)Δ(ε^n_r)` at generator level.
pub fn coassociativity_defect(n: usize, r: usize, ctx: &FieldContext) -> Result<BTreeMap<(Generator, Generator, Generator), Scalar>> {
    let delta = comultiplication(n, r, ctx)?;
    let mut out: BTreeMap<(Generator, Generator, Generator), Scalar> = BTreeMap::new();
    let mut add = |key, c: Scalar| {
        let updated = match out.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if updated.is_zero() {
            out.remove(&key);
        } else {
            out.insert(key, updated);
        }
    };
    for ((x, y), c) in delta.terms() {
        for ((x1, x2), c1) in comultiplication(x.degree, x.index, ctx)?.terms() {
            add((*x1, *x2, *y), c * c1);
        }
        for ((y1, y2), c2) in comultiplication(y.degree, y.index, ctx)?.terms() {
            add((*x, *y1, *y2), -(c * c2));
        }
    }
    Ok(out)
}

/// Slot typing, differentials and (lazily) the comultiplication of one degree.
#[derive(Debug)]
pub struct ResolutionDegree {
    pub n: usize,
    slot_typing: Vec<(Vertex, Vertex)>,
    differentials: Vec<BimoduleCombination>,
    comultiplication: OnceLock<Vec<TensorCombination>>,
    ctx: FieldContext,
}

impl ResolutionDegree {
    pub fn new(n: usize, ctx: &FieldContext) -> Result<Self> {
        let slot_typing = Generator::all(n).map(|g| (g.origin(), g.terminus())).collect();
        let differentials = if n == 0 {
            Vec::new()
        } else {
            (0..=max_index(n)).map(|i| differential(n, i, ctx)).collect::<Result<_>>()?
        };
        Ok(Self { n, slot_typing, differentials, comultiplication: OnceLock::new(), ctx: ctx.clone() })
    }

    pub fn max_index(&self) -> usize {
        max_index(self.n)
    }

    pub fn slot_typing(&self) -> &[(Vertex, Vertex)] {
        &self.slot_typing
    }

    /// Empty in degree 0.
    pub fn differentials(&self) -> &[BimoduleCombination] {
        &self.differentials
    }

    pub fn comultiplication(&self) -> &[TensorCombination] {
        self.comultiplication.get_or_init(|| {
            (0..=max_index(self.n))
                .map(|r| comultiplication(self.n, r, &self.ctx).expect("index in range"))
                .collect()
        })
    }
}

/// Immutable per-degree table of resolution data for degrees `0..=max_n`.
#[derive(Debug)]
pub struct Resolution {
    ctx: FieldContext,
    degrees: Vec<ResolutionDegree>,
}

impl Resolution {
    pub fn build(ctx: &FieldContext, max_n: usize) -> Result<Self> {
        let degrees = (0..=max_n)
            .into_par_iter()
            .map(|n| ResolutionDegree::new(n, ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ctx: ctx.clone(), degrees })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn max_n(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> Option<&ResolutionDegree> {
        self.degrees.get(n)
    }

    /// First `(n, i)` with `d_{n−1}(d_n(ε^n_i)) ≠ 0`, if any.
    pub fn first_d_squared_failure(&self) -> Result<Option<(usize, usize)>> {
        for deg in self.degrees.iter().skip(2) {
            for (i, d) in deg.differentials().iter().enumerate() {
                if !d.apply_differential(&self.ctx)?.is_zero() {
                    return Ok(Some((deg.n, i)));
                }
            }
        }
        Ok(None)
    }
}
