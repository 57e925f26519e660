//! Brute-force Hochschild cohomology from the reduced bar complex.
//!
//! Chains are tensors over the vertex subalgebra `Λ₀ = k × k` of radical
//! letters `{a, b, c, ba, bc}`; a word is kept only if consecutive letters
//! compose at the vertices. Degree-0 words are the two idempotents. This
//! complex is independent of the resolution `K` and is used to check its
//! dimensions and cup products in low degree.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{basis_product, component_subspace, AlgebraElement, BasisPath, Vertex};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::linalg::{sparse_rank, Matrix, SparseVec};
use crate::resolution::{gamma_element, max_index, BimoduleCombination, Generator, Word};

/// Highest degree the oracle accepts by default.
pub const ORACLE_CAP: usize = 4;

fn is_vertex_word(w: &[BasisPath]) -> bool {
    w.len() == 1 && w[0].is_idempotent()
}

pub fn word_degree(w: &[BasisPath]) -> usize {
    if is_vertex_word(w) {
        0
    } else {
        w.len()
    }
}

pub fn word_origin(w: &[BasisPath]) -> Vertex {
    w[0].origin()
}

pub fn word_terminus(w: &[BasisPath]) -> Vertex {
    w[w.len() - 1].terminus()
}

fn word_name(w: &[BasisPath]) -> String {
    w.iter().map(|p| p.name()).collect::<Vec<_>>().join("⊗")
}

/// Checks that consecutive letters meet at a vertex.
pub fn check_composable(w: &[BasisPath]) -> Result<()> {
    if w.is_empty() || w.windows(2).any(|p| p[0].terminus() != p[1].origin()) {
        return Err(Error::NotComposable(word_name(w)));
    }
    Ok(())
}

/// Composable words of degree `n` in canonical (lexicographic) order.
pub fn words(n: usize) -> Vec<Word> {
    if n == 0 {
        return vec![vec![BasisPath::E1], vec![BasisPath::E2]];
    }
    let mut out: Vec<Word> = BasisPath::RADICAL.iter().map(|&x| vec![x]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                let t = word_terminus(&w);
                BasisPath::RADICAL.iter().filter(move |x| x.origin() == t).map(move |&x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Coordinates of the bar cochain space in degree `n`: a basis path of
/// `o(w) Λ t(w)` for each word `w`.
#[derive(Clone, Debug)]
pub struct ReducedBarBasis {
    pub n: usize,
    pub words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl ReducedBarBasis {
    pub fn new(n: usize) -> Self {
        let words = words(n);
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut offsets = Vec::with_capacity(words.len());
        let mut dim = 0;
        for w in &words {
            offsets.push(dim);
            dim += component_subspace(word_origin(w), word_terminus(w)).len();
        }
        Self { n, words, index, offsets, dim }
    }

    /// Number of cochain coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coordinate(&self, w: &[BasisPath], path: BasisPath) -> Option<usize> {
        let i = *self.index.get(w)?;
        let pos = component_subspace(word_origin(w), word_terminus(w)).iter().position(|&p| p == path)?;
        Some(self.offsets[i] + pos)
    }

    pub fn labels(&self) -> Vec<(usize, BasisPath)> {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(i, w)| component_subspace(word_origin(w), word_terminus(w)).iter().map(move |&p| (i, p)))
            .collect()
    }
}

/// A bar cochain: a value in `o(w) Λ t(w)` for each word `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCochain {
    degree: usize,
    values: BTreeMap<Word, AlgebraElement>,
}

impl BarCochain {
    pub fn zero(degree: usize) -> Self {
        Self { degree, values: BTreeMap::new() }
    }

    /// The 0-cochain `e1 ↦ e1, e2 ↦ e2`.
    pub fn unit(ctx: &FieldContext) -> Self {
        let mut out = Self::zero(0);
        out.set(vec![BasisPath::E1], AlgebraElement::basis(BasisPath::E1, ctx)).expect("typed");
        out.set(vec![BasisPath::E2], AlgebraElement::basis(BasisPath::E2, ctx)).expect("typed");
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&mut self, w: Word, value: AlgebraElement) -> Result<()> {
        check_composable(&w)?;
        if word_degree(&w) != self.degree {
            return Err(Error::NotComposable(word_name(&w)));
        }
        let (o, t) = (word_origin(&w), word_terminus(&w));
        if !value.lies_in(o, t) {
            return Err(Error::SlotTyping {
                degree: self.degree,
                slot: 0,
                origin: o.label(),
                terminus: t.label(),
                value: value.to_string(),
            });
        }
        if value.is_zero() {
            self.values.remove(&w);
        } else {
            self.values.insert(w, value);
        }
        Ok(())
    }

    pub fn value(&self, w: &[BasisPath]) -> AlgebraElement {
        self.values.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn from_sparse(basis: &ReducedBarBasis, v: &SparseVec) -> Self {
        let labels = basis.labels();
        let mut values: BTreeMap<Word, AlgebraElement> = BTreeMap::new();
        for (&i, c) in v {
            let (w, p) = labels[i];
            values.entry(basis.words[w].clone()).or_default().add_term(p, c.clone());
        }
        values.retain(|_, x| !x.is_zero());
        Self { degree: basis.n, values }
    }

    pub fn to_sparse(&self, basis: &ReducedBarBasis) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, x) in &self.values {
            for (p, c) in x.terms() {
                out.insert(basis.coordinate(w, p).expect("typed value"), c.clone());
            }
        }
        out
    }

    /// Value on a combination of words.
    pub fn evaluate(&self, chain: &BarChain, ctx: &FieldContext) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for ((l, w, r), c) in &chain.terms {
            let v = self.value(w).left_mul_path(*l, ctx).right_mul_path(*r, ctx);
            out = out.add(&v.scale(c));
        }
        out
    }
}

/// `δα` for a bar cochain `α` of degree `n`.
pub fn bar_coboundary(alpha: &BarCochain, ctx: &FieldContext) -> BarCochain {
    let n = alpha.degree;
    let mut out = BarCochain::zero(n + 1);
    for w in words(n + 1) {
        let v = coboundary_value(&w, |u| alpha.value(u), ctx);
        out.set(w, v).expect("coboundary respects typing");
    }
    out
}

/// `(δα)(w) = Σ c · l · α(u) · r`, as the list of terms `(c, l, u, r)`.
fn coboundary_terms(w: &[BasisPath], ctx: &FieldContext) -> Vec<(Scalar, BasisPath, Word, BasisPath)> {
    let len = w.len();
    let (o, t) = (word_origin(w).idempotent(), word_terminus(w).idempotent());
    if len == 1 {
        let x = w[0];
        return vec![
            (ctx.one(), x, vec![x.terminus().idempotent()], t),
            (-ctx.one(), o, vec![x.origin().idempotent()], x),
        ];
    }
    let mut out = vec![(ctx.one(), w[0], w[1..].to_vec(), t)];
    for i in 0..len - 1 {
        let Some((c, z)) = basis_product(w[i], w[i + 1], ctx) else { continue };
        let mut u: Word = w[..i].to_vec();
        u.push(z);
        u.extend_from_slice(&w[i + 2..]);
        out.push((&ctx.sign((i + 1) as u64) * &c, o, u, t));
    }
    out.push((ctx.sign(len as u64), o, w[..len - 1].to_vec(), w[len - 1]));
    out
}

fn coboundary_value(w: &[BasisPath], alpha: impl Fn(&[BasisPath]) -> AlgebraElement, ctx: &FieldContext) -> AlgebraElement {
    let mut acc = AlgebraElement::zero();
    for (c, l, u, r) in coboundary_terms(w, ctx) {
        acc = acc.add(&alpha(&u).left_mul_path(l, ctx).right_mul_path(r, ctx).scale(&c));
    }
    acc
}

/// Columns of `δ_n: C^n → C^{n+1}` as sparse vectors.
pub fn bar_coboundary_columns(n: usize, ctx: &FieldContext) -> Vec<SparseVec> {
    let src = ReducedBarBasis::new(n);
    let dst = ReducedBarBasis::new(n + 1);
    let mut columns = vec![SparseVec::new(); src.dim()];
    for w in &dst.words {
        for (c, l, u, r) in coboundary_terms(w, ctx) {
            for &p in component_subspace(word_origin(&u), word_terminus(&u)) {
                let Some((c1, lp)) = basis_product(l, p, ctx) else { continue };
                let Some((c2, z)) = basis_product(lp, r, ctx) else { continue };
                let col = src.coordinate(&u, p).expect("source word is composable");
                let row = dst.coordinate(w, z).expect("typed");
                let v = &(&c * &c1) * &c2;
                let updated = match columns[col].get(&row) {
                    Some(old) => old + &v,
                    None => v,
                };
                if updated.is_zero() {
                    columns[col].remove(&row);
                } else {
                    columns[col].insert(row, updated);
                }
            }
        }
    }
    columns
}

fn check_cap(max_n: usize) -> Result<()> {
    if max_n > ORACLE_CAP {
        return Err(Error::DegreeTooLarge { requested: max_n, cap: ORACLE_CAP });
    }
    Ok(())
}

/// `dim HH^n` for `n ≤ max_n` from the reduced bar complex.
pub fn bar_cohomology_dims(max_n: usize, ctx: &FieldContext) -> Result<Vec<usize>> {
    check_cap(max_n)?;
    let ranks: Vec<usize> = (0..=max_n).into_par_iter().map(|n| sparse_rank(bar_coboundary_columns(n, ctx))).collect();
    Ok((0..=max_n)
        .map(|n| {
            let kernel = ReducedBarBasis::new(n).dim() - ranks[n];
            kernel - if n == 0 { 0 } else { ranks[n - 1] }
        })
        .collect())
}

/// Kernel basis of `δ_n` as bar cochains.
pub fn bar_kernel_basis(n: usize, ctx: &FieldContext) -> Result<Vec<BarCochain>> {
    check_cap(n)?;
    let basis = ReducedBarBasis::new(n);
    let cols = bar_coboundary_columns(n, ctx);
    let rows = ReducedBarBasis::new(n + 1).dim();
    let mut m = Matrix::zeros(rows, cols.len(), ctx);
    for (j, col) in cols.iter().enumerate() {
        for (&i, c) in col {
            m.set(i, j, c.clone());
        }
    }
    Ok(m.kernel_basis(ctx)
        .iter()
        .map(|v| {
            let sparse: SparseVec = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
            BarCochain::from_sparse(&basis, &sparse)
        })
        .collect())
}

/// A chain `Σ c · l ⊗ w ⊗ r` of the reduced bar resolution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarChain {
    terms: BTreeMap<(BasisPath, Word, BasisPath), Scalar>,
}

impl BarChain {
    pub fn add_term(&mut self, left: BasisPath, w: Word, right: BasisPath, coeff: Scalar) {
        if coeff.is_zero() || left.terminus() != word_origin(&w) || word_terminus(&w) != right.origin() {
            return;
        }
        let key = (left, w, right);
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: BasisPath, w: &[BasisPath], right: BasisPath) -> Option<&Scalar> {
        self.terms.get(&(left, w.to_vec(), right))
    }

    fn push(&mut self, left: Option<(Scalar, BasisPath)>, w: Word, right: Option<(Scalar, BasisPath)>, c: &Scalar) {
        if let (Some((c1, l)), Some((c2, r))) = (left, right) {
            self.add_term(l, w, r, &(c * &c1) * &c2);
        }
    }

    /// The bar differential.
    pub fn boundary(&self, ctx: &FieldContext) -> Self {
        let mut out = Self::default();
        for ((l, w, r), c) in &self.terms {
            let len = word_degree(w);
            if len == 0 {
                continue;
            }
            let keep = |p: BasisPath| Some((ctx.one(), p));
            if len == 1 {
                let x = w[0];
                out.push(basis_product(*l, x, ctx), vec![x.terminus().idempotent()], keep(*r), c);
                out.push(keep(*l), vec![x.origin().idempotent()], basis_product(x, *r, ctx), &-c);
                continue;
            }
            out.push(basis_product(*l, w[0], ctx), w[1..].to_vec(), keep(*r), c);
            for i in 0..len - 1 {
                let Some((pc, z)) = basis_product(w[i], w[i + 1], ctx) else { continue };
                let mut u: Word = w[..i].to_vec();
                u.push(z);
                u.extend_from_slice(&w[i + 2..]);
                out.push(keep(*l), u, keep(*r), &(&(c * &pc) * &ctx.sign((i + 1) as u64)));
            }
            out.push(keep(*l), w[..len - 1].to_vec(), basis_product(w[len - 1], *r, ctx), &(c * &ctx.sign(len as u64)));
        }
        out
    }
}

/// `ι(ε^n_i) = 1 ⊗ f^n_i ⊗ 1`.
pub fn iota(n: usize, i: usize, ctx: &FieldContext) -> Result<BarChain> {
    let g = Generator::new(n, i)?;
    let mut out = BarChain::default();
    for (w, c) in gamma_element(n, i, ctx)?.terms() {
        out.add_term(g.origin().idempotent(), w.clone(), g.terminus().idempotent(), c.clone());
    }
    Ok(out)
}

/// `ι` extended bimodule-linearly to an element of `K_n`.
pub fn iota_of(x: &BimoduleCombination, ctx: &FieldContext) -> Result<BarChain> {
    let mut out = BarChain::default();
    for (t, c) in x.terms() {
        for ((_, w, _), wc) in iota(t.generator.degree, t.generator.index, ctx)?.terms {
            out.add_term(t.left, w, t.right, c * &wc);
        }
    }
    Ok(out)
}

/// `ι_{n−1}(d_n ε) − δ_n ι_n(ε)`; zero when `ι` commutes with the differentials.
pub fn iota_chain_map_defect(n: usize, i: usize, ctx: &FieldContext) -> Result<BarChain> {
    let lhs = iota_of(&crate::resolution::differential(n, i, ctx)?, ctx)?;
    let rhs = iota(n, i, ctx)?.boundary(ctx);
    let mut out = lhs;
    for (k, c) in rhs.terms {
        out.add_term(k.0, k.1, k.2, -c);
    }
    Ok(out)
}

/// `(ι*α)(ε^n_i) = α(ι(ε^n_i))`.
pub fn pullback(alpha: &BarCochain, ctx: &FieldContext) -> Result<Cochain> {
    let n = alpha.degree;
    if !bar_coboundary(alpha, ctx).is_zero() {
        return Err(Error::NotCocycle(n));
    }
    pullback_unchecked(alpha, ctx)
}

/// [`pullback`] without the cocycle check, for arbitrary cochains.
pub fn pullback_unchecked(alpha: &BarCochain, ctx: &FieldContext) -> Result<Cochain> {
    let n = alpha.degree;
    let slots = (0..=max_index(n)).map(|i| Ok(alpha.evaluate(&iota(n, i, ctx)?, ctx))).collect::<Result<Vec<_>>>()?;
    Cochain::new(n, slots)
}

/// `(α ⌣ β)(x_1…x_{m+n}) = (−1)^{mn} α(x_1…x_m) β(x_{m+1}…x_{m+n})`.
pub fn bar_cup(alpha: &BarCochain, beta: &BarCochain, ctx: &FieldContext) -> BarCochain {
    let (m, n) = (alpha.degree, beta.degree);
    let sign = ctx.sign((m * n) as u64);
    let mut out = BarCochain::zero(m + n);
    for w in words(m + n) {
        let (left, right): (Word, Word) = match (m, n) {
            (0, 0) => (w.clone(), w.clone()),
            (0, _) => (vec![word_origin(&w).idempotent()], w.clone()),
            (_, 0) => (w.clone(), vec![word_terminus(&w).idempotent()]),
            _ => (w[..m].to_vec(), w[m..].to_vec()),
        };
        let v = alpha.value(&left).multiply(&beta.value(&right), ctx).scale(&sign);
        out.set(w, v).expect("product respects typing");
    }
    out
}
