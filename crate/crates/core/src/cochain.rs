//! The cochain complex `K̂_n = Hom_{Λᵉ}(K_n, Λ) ≅ ⊕_i o(f^n_i) Λ t(f^n_i)`.
//!
//! A cochain is a tuple of algebra elements, one per generator, each living
//! in the component subspace dictated by the generator's endpoints.
//! Coordinates are slot-major, then in the order of [`component_subspace`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{basis_product, component_subspace, AlgebraElement, BasisPath};
use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::linalg::{to_sparse, Echelon, Matrix, SparseVec};
use crate::resolution::{differential, max_index, BimoduleCombination, Generator};

pub fn slot_count(n: usize) -> usize {
    max_index(n) + 1
}

/// Basis of the subspace slot `slot` of a degree-`n` cochain lives in.
pub fn slot_basis(n: usize, slot: usize) -> &'static [BasisPath] {
    let g = Generator { degree: n, index: slot };
    component_subspace(g.origin(), g.terminus())
}

/// `dim K̂_n`: 5 for `n = 0`, `4(n+1) + 2` otherwise.
pub fn cochain_dim(n: usize) -> usize {
    (0..slot_count(n)).map(|s| slot_basis(n, s).len()).sum()
}

/// `(slot, path)` labels of the coordinates of `K̂_n`.
pub fn coordinate_labels(n: usize) -> Vec<(usize, BasisPath)> {
    (0..slot_count(n)).flat_map(|s| slot_basis(n, s).iter().map(move |&p| (s, p))).collect()
}

fn coordinate_index(n: usize, slot: usize, path: BasisPath) -> Option<usize> {
    let offset: usize = (0..slot).map(|s| slot_basis(n, s).len()).sum();
    slot_basis(n, slot).iter().position(|&p| p == path).map(|i| offset + i)
}

/// An element of `K̂_n`. Construction enforces slot count and typing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    slots: Vec<AlgebraElement>,
}

impl Cochain {
    pub fn new(degree: usize, slots: Vec<AlgebraElement>) -> Result<Self> {
        let expected = slot_count(degree);
        if slots.len() != expected {
            return Err(Error::SlotCount { degree, expected, got: slots.len() });
        }
        for (slot, value) in slots.iter().enumerate() {
            let g = Generator { degree, index: slot };
            if !value.lies_in(g.origin(), g.terminus()) {
                return Err(Error::SlotTyping {
                    degree,
                    slot,
                    origin: g.origin().label(),
                    terminus: g.terminus().label(),
                    value: value.to_string(),
                });
            }
        }
        Ok(Self { degree, slots })
    }

    pub fn zero(degree: usize) -> Self {
        Self { degree, slots: vec![AlgebraElement::zero(); slot_count(degree)] }
    }

    /// `(e1, e2)`, the cocycle representing the identity of `HH*`.
    pub fn unit(ctx: &FieldContext) -> Self {
        Self { degree: 0, slots: vec![AlgebraElement::basis(BasisPath::E1, ctx), AlgebraElement::basis(BasisPath::E2, ctx)] }
    }

    /// The cochain with the single basis path `path` in slot `slot`.
    pub fn unit_vector(degree: usize, slot: usize, path: BasisPath, ctx: &FieldContext) -> Result<Self> {
        let mut slots = vec![AlgebraElement::zero(); slot_count(degree)];
        if slot >= slots.len() {
            return Err(Error::IndexOutOfRange { degree, index: slot });
        }
        slots[slot] = AlgebraElement::basis(path, ctx);
        Self::new(degree, slots)
    }

    /// All unit cochains of degree `n`, in coordinate order.
    pub fn unit_vectors(n: usize, ctx: &FieldContext) -> Vec<Self> {
        coordinate_labels(n)
            .into_iter()
            .map(|(s, p)| Self::unit_vector(n, s, p, ctx).expect("label is well typed"))
            .collect()
    }

    /// Parses comma-separated slot literals such as `"0,0,e1,0"`.
    pub fn parse(degree: usize, text: &str, ctx: &FieldContext) -> Result<Self> {
        let slots = text.split(',').map(|s| AlgebraElement::parse(s, ctx)).collect::<Result<Vec<_>>>()?;
        Self::new(degree, slots)
    }

    /// Like [`Cochain::parse`], reading the degree off the slot count.
    pub fn parse_any(text: &str, ctx: &FieldContext) -> Result<Self> {
        let count = text.split(',').count();
        let degree = match count {
            0 | 1 => return Err(Error::Parse(format!("`{text}` has too few slots for a cochain"))),
            2 => 0,
            k => k - 2,
        };
        Self::parse(degree, text, ctx)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn slots(&self) -> &[AlgebraElement] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> &AlgebraElement {
        &self.slots[i]
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(AlgebraElement::is_zero)
    }

    pub fn to_vector(&self, ctx: &FieldContext) -> Vec<Scalar> {
        coordinate_labels(self.degree)
            .into_iter()
            .map(|(s, p)| self.slots[s].coefficient(p).cloned().unwrap_or_else(|| ctx.zero()))
            .collect()
    }

    pub fn to_sparse(&self) -> SparseVec {
        let mut out = SparseVec::new();
        for (s, value) in self.slots.iter().enumerate() {
            for (p, c) in value.terms() {
                let idx = coordinate_index(self.degree, s, p).expect("typed slot");
                out.insert(idx, c.clone());
            }
        }
        out
    }

    pub fn from_vector(degree: usize, v: &[Scalar]) -> Self {
        let labels = coordinate_labels(degree);
        assert_eq!(v.len(), labels.len(), "coordinate vector has the wrong length");
        let mut slots = vec![AlgebraElement::zero(); slot_count(degree)];
        for ((s, p), c) in labels.into_iter().zip(v) {
            slots[s].add_term(p, c.clone());
        }
        Self { degree, slots }
    }

    pub fn from_sparse(degree: usize, v: &SparseVec) -> Self {
        let labels = coordinate_labels(degree);
        let mut slots = vec![AlgebraElement::zero(); slot_count(degree)];
        for (&i, c) in v {
            let (s, p) = labels[i];
            slots[s].add_term(p, c.clone());
        }
        Self { degree, slots }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "adding cochains of different degrees");
        Self { degree: self.degree, slots: self.slots.iter().zip(&rhs.slots).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "subtracting cochains of different degrees");
        Self { degree: self.degree, slots: self.slots.iter().zip(&rhs.slots).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { degree: self.degree, slots: self.slots.iter().map(|x| x.scale(s)).collect() }
    }

    /// Evaluates the cochain on an element of `K_n`: `Σ c · left · φ(ε) · right`.
    pub fn evaluate(&self, x: &BimoduleCombination, ctx: &FieldContext) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (t, c) in x.terms() {
            debug_assert_eq!(t.generator.degree, self.degree);
            for (p, pc) in self.slots[t.generator.index].terms() {
                let Some((c1, lp)) = basis_product(t.left, p, ctx) else { continue };
                let Some((c2, z)) = basis_product(lp, t.right, ctx) else { continue };
                out.add_term(z, &(&(c * pc) * &c1) * &c2);
            }
        }
        out
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `d*_{n+1} φ = φ ∘ d_{n+1}`.
pub fn apply_dstar(phi: &Cochain, ctx: &FieldContext) -> Cochain {
    let n = phi.degree;
    let slots = (0..slot_count(n + 1))
        .map(|r| phi.evaluate(&differential(n + 1, r, ctx).expect("index in range"), ctx))
        .collect();
    Cochain { degree: n + 1, slots }
}

pub fn is_cocycle(phi: &Cochain, ctx: &FieldContext) -> bool {
    apply_dstar(phi, ctx).is_zero()
}

/// Matrix of `d*_{n+1}: K̂_n → K̂_{n+1}` with its coordinate labels.
#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub matrix: Matrix,
    pub row_labels: Vec<(usize, BasisPath)>,
    pub col_labels: Vec<(usize, BasisPath)>,
}

/// Column `j` is `d*_{n+1}` of the `j`-th unit cochain.
pub fn dstar_matrix(n: usize, ctx: &FieldContext) -> LabeledMatrix {
    let row_labels = coordinate_labels(n + 1);
    let col_labels = coordinate_labels(n);
    let mut matrix = Matrix::zeros(row_labels.len(), col_labels.len(), ctx);
    for r in 0..slot_count(n + 1) {
        let d = differential(n + 1, r, ctx).expect("index in range");
        for (t, c) in d.terms() {
            let slot = t.generator.index;
            for &p in slot_basis(n, slot) {
                let Some((c1, lp)) = basis_product(t.left, p, ctx) else { continue };
                let Some((c2, z)) = basis_product(lp, t.right, ctx) else { continue };
                let row = coordinate_index(n + 1, r, z).expect("d* preserves slot typing");
                let col = coordinate_index(n, slot, p).expect("typed label");
                let v = matrix.get(row, col) + &(&(c * &c1) * &c2);
                matrix.set(row, col, v);
            }
        }
    }
    LabeledMatrix { matrix, row_labels, col_labels }
}

/// Reduced-echelon kernel basis of `d*_{n+1}`.
pub fn kernel_basis(n: usize, ctx: &FieldContext) -> Vec<Cochain> {
    dstar_matrix(n, ctx)
        .matrix
        .kernel_basis(ctx)
        .iter()
        .map(|v| Cochain::from_vector(n, v))
        .collect()
}

/// Outcome of asking whether a cocycle is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryDecision {
    /// `d*(witness) = ψ`. In degree 0 only the zero cochain is exact and
    /// there is no witness.
    Coboundary { witness: Option<Cochain> },
    /// Adjoining `ψ` to the image raises its rank.
    NotCoboundary { image_rank: usize, augmented_rank: usize },
}

impl CoboundaryDecision {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, Self::Coboundary { .. })
    }
}

/// Decides whether the cocycle `psi` lies in the image of `d*`.
pub fn is_coboundary(psi: &Cochain, ctx: &FieldContext) -> Result<CoboundaryDecision> {
    if !is_cocycle(psi, ctx) {
        return Err(Error::NotCocycle(psi.degree));
    }
    let n = psi.degree;
    if n == 0 {
        return Ok(if psi.is_zero() {
            CoboundaryDecision::Coboundary { witness: None }
        } else {
            CoboundaryDecision::NotCoboundary { image_rank: 0, augmented_rank: 1 }
        });
    }
    let m = dstar_matrix(n - 1, ctx).matrix;
    match m.solve(&psi.to_vector(ctx), ctx) {
        Some(x) => Ok(CoboundaryDecision::Coboundary { witness: Some(Cochain::from_vector(n - 1, &x)) }),
        None => {
            let image_rank = m.rank();
            Ok(CoboundaryDecision::NotCoboundary { image_rank, augmented_rank: image_rank + 1 })
        }
    }
}

/// Per-degree cache of image echelon bases, for repeated exactness tests
/// (cup powers, class comparisons). Safe to share between threads; the
/// cached value for a degree does not depend on which thread computed it.
#[derive(Debug)]
pub struct CoboundaryCache {
    ctx: FieldContext,
    images: Mutex<BTreeMap<usize, Arc<Echelon>>>,
}

impl CoboundaryCache {
    pub fn new(ctx: &FieldContext) -> Self {
        Self { ctx: ctx.clone(), images: Mutex::new(BTreeMap::new()) }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// Echelon basis of `im d*_n ⊂ K̂_n` (empty for `n = 0`).
    pub fn image(&self, n: usize) -> Arc<Echelon> {
        if let Some(e) = self.images.lock().expect("cache lock").get(&n) {
            return e.clone();
        }
        let mut e = Echelon::new();
        if n > 0 {
            let m = dstar_matrix(n - 1, &self.ctx).matrix;
            for j in 0..m.cols() {
                e.insert(to_sparse(&m.column(j)));
            }
        }
        let e = Arc::new(e);
        self.images.lock().expect("cache lock").entry(n).or_insert(e).clone()
    }

    /// Membership in the image, without producing a witness.
    pub fn is_exact(&self, psi: &Cochain) -> bool {
        self.image(psi.degree).contains(psi.to_sparse())
    }

    /// Canonical representative of the class of `psi` modulo coboundaries.
    pub fn reduce(&self, psi: &Cochain) -> Cochain {
        Cochain::from_sparse(psi.degree, &self.image(psi.degree).reduce(psi.to_sparse()))
    }
}

/// One row of a cohomology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub n: usize,
    pub dim_hom: usize,
    pub dim_ker: usize,
    pub rank_prev: usize,
    pub dim_hh: usize,
    /// Published closed form for `dim ker d*_{n+1}`, as an exact rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_dim_ker: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim_mismatch: Option<bool>,
}

/// Dimensions and representatives for degrees `0..=max_n`.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub field: String,
    pub q: String,
    pub rows: Vec<DegreeRow>,
    #[serde(skip)]
    pub kernel_bases: Vec<Vec<Cochain>>,
    /// Cocycles whose classes form a basis of `HH^n`.
    #[serde(skip)]
    pub representatives: Vec<Vec<Cochain>>,
}

/// The closed forms for `dim ker d*_{n+1}` that the literature states:
/// for `q = 1`, `2(n+2)` (odd n) and `5n/2 + 4` (even n); for `q = −1` the
/// parities swap; for other nonzero `q`, `n + 2`. Degree 0 follows the
/// centre computation (3 when `q = 1`, 2 otherwise). `None` for `q = 0`
/// in positive degree.
pub fn stated_kernel_dimension(n: usize, ctx: &FieldContext) -> Option<BigRational> {
    let int = |v: usize| BigRational::from_integer(BigInt::from(v));
    let five_halves = || BigRational::new(BigInt::from(5 * n + 8), BigInt::from(2));
    if n == 0 {
        return Some(int(if ctx.q_is_one() { 3 } else { 2 }));
    }
    let odd = n % 2 == 1;
    if ctx.q_is_one() {
        Some(if odd { int(2 * (n + 2)) } else { five_halves() })
    } else if ctx.q_is_minus_one() {
        Some(if odd { five_halves() } else { int(2 * (n + 2)) })
    } else if ctx.q().is_zero() {
        None
    } else {
        Some(int(n + 2))
    }
}

struct DegreeData {
    kernel: Vec<Vec<Scalar>>,
    rank: usize,
    image_of_prev: Vec<Vec<Scalar>>,
}

/// Computes `HH^n` for `n ≤ max_n`. Degrees are processed in parallel; the
/// result does not depend on the thread count.
pub fn cohomology_report(max_n: usize, ctx: &FieldContext) -> CohomologyReport {
    // data[n] holds ker d*_{n+1}, rank d*_{n+1} and the columns of d*_n.
    let data: Vec<DegreeData> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let m = dstar_matrix(n, ctx).matrix;
            let mut reduced = m.clone();
            let rank = reduced.rref().len();
            let kernel = m.kernel_basis(ctx);
            let image_of_prev = if n == 0 {
                Vec::new()
            } else {
                let prev = dstar_matrix(n - 1, ctx).matrix;
                (0..prev.cols()).map(|j| prev.column(j)).collect()
            };
            DegreeData { kernel, rank, image_of_prev }
        })
        .collect();

    let mut rows = Vec::with_capacity(max_n + 1);
    let mut kernel_bases = Vec::with_capacity(max_n + 1);
    let mut representatives = Vec::with_capacity(max_n + 1);
    for (n, d) in data.iter().enumerate() {
        let rank_prev = if n == 0 { 0 } else { data[n - 1].rank };
        let mut image = Echelon::new();
        for col in &d.image_of_prev {
            image.insert(to_sparse(col));
        }
        let mut span = image.clone();
        let mut reps = Vec::new();
        for v in &d.kernel {
            let reduced = image.reduce(to_sparse(v));
            if span.insert(reduced.clone()) {
                reps.push(Cochain::from_sparse(n, &reduced));
            }
        }
        let claimed = stated_kernel_dimension(n, ctx);
        let dim_ker = d.kernel.len();
        rows.push(DegreeRow {
            n,
            dim_hom: cochain_dim(n),
            dim_ker,
            rank_prev,
            dim_hh: dim_ker - rank_prev,
            claim_mismatch: claimed.as_ref().map(|c| *c != BigRational::from_integer(BigInt::from(dim_ker))),
            claimed_dim_ker: claimed.map(|c| c.to_string()),
        });
        kernel_bases.push(d.kernel.iter().map(|v| Cochain::from_vector(n, v)).collect());
        representatives.push(reps);
    }
    CohomologyReport { field: ctx.spec().to_string(), q: ctx.q().to_string(), rows, kernel_bases, representatives }
}
