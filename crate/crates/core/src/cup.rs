//! Cup products, nilpotency and the ring `HH*/𝒩`.
//!
//! Two independent evaluations of the cup product are provided: the closed
//! formula in terms of the sums `T^{m+n}_k`, and `π ∘ (φ ⊗ μ) ∘ Δ_K`. They
//! agree on all cochains, cocycles or not.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::algebra::{AlgebraElement, BasisPath};
use crate::cochain::{is_coboundary, is_cocycle, kernel_basis, slot_count, Cochain, CoboundaryCache, CoboundaryDecision};
use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};
use crate::linalg::{Echelon, SparseVec};
use crate::resolution::comultiplication_component;

/// Whether the global `(−1)^{mn}` is applied to the product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    #[default]
    Koszul,
    Plain,
}

impl SignConvention {
    fn factor(self, m: usize, n: usize, ctx: &FieldContext) -> Scalar {
        match self {
            Self::Koszul => ctx.sign((m * n) as u64),
            Self::Plain => ctx.one(),
        }
    }
}

impl FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "koszul" => Ok(Self::Koszul),
            "plain" => Ok(Self::Plain),
            other => Err(Error::Parse(format!("unknown sign convention `{other}` (expected koszul or plain)"))),
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Koszul => "koszul",
            Self::Plain => "plain",
        })
    }
}

/// `T^{m+n}_k = Σ_j (−q)^{j(n−k+j)} φ_j μ_{k−j}` over `max(0, k−n) ≤ j ≤ min(m, k)`.
pub fn t_sum(phi: &Cochain, mu: &Cochain, k: usize, ctx: &FieldContext) -> AlgebraElement {
    let (m, n) = (phi.degree(), mu.degree());
    let mut out = AlgebraElement::zero();
    for j in k.saturating_sub(n)..=m.min(k) {
        let coeff = ctx.neg_q_pow((j * (n + j - k)) as u64);
        out = out.add(&phi.slot(j).multiply(mu.slot(k - j), ctx).scale(&coeff));
    }
    out
}

/// The closed cup formula: slot `k ≤ m+n` is `±T^{m+n}_k`, the last slot is
/// `±φ_0 μ_{n+1}`. When `μ` has degree 0 the last slot is `±φ_{m+1} μ_1`
/// instead, because `μ_1` is the component at vertex 2.
pub fn cup_formula(phi: &Cochain, mu: &Cochain, sign: SignConvention, ctx: &FieldContext) -> Cochain {
    let (m, n) = (phi.degree(), mu.degree());
    let s = sign.factor(m, n, ctx);
    let mut slots: Vec<AlgebraElement> = (0..=m + n).map(|k| t_sum(phi, mu, k, ctx).scale(&s)).collect();
    let last = if n == 0 { phi.slot(m + 1).multiply(mu.slot(1), ctx) } else { phi.slot(0).multiply(mu.slot(n + 1), ctx) };
    slots.push(last.scale(&s));
    Cochain::new(m + n, slots).expect("cup product respects slot typing")
}

/// `π ∘ (φ ⊗ μ) ∘ Δ_K`, with `(φ ⊗ μ)(x ⊗ y) = (−1)^{|μ||x|} φ(x) μ(y)` under
/// the Koszul convention.
pub fn cup_via_delta(phi: &Cochain, mu: &Cochain, sign: SignConvention, ctx: &FieldContext) -> Cochain {
    let (m, n) = (phi.degree(), mu.degree());
    let s = sign.factor(m, n, ctx);
    let slots = (0..slot_count(m + n))
        .map(|k| {
            let mut acc = AlgebraElement::zero();
            for (x, y, c) in comultiplication_component(m + n, k, m, ctx).expect("index in range") {
                acc = acc.add(&phi.slot(x.index).multiply(mu.slot(y.index), ctx).scale(&c));
            }
            acc.scale(&s)
        })
        .collect();
    Cochain::new(m + n, slots).expect("cup product respects slot typing")
}

/// A cohomology class, held through a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    representative: Cochain,
}

impl CohomologyClass {
    pub fn new(representative: Cochain, ctx: &FieldContext) -> Result<Self> {
        if !is_cocycle(&representative, ctx) {
            return Err(Error::NotCocycle(representative.degree()));
        }
        Ok(Self { representative })
    }

    pub fn unit(ctx: &FieldContext) -> Self {
        Self { representative: Cochain::unit(ctx) }
    }

    pub fn degree(&self) -> usize {
        self.representative.degree()
    }

    pub fn representative(&self) -> &Cochain {
        &self.representative
    }

    pub fn cup(&self, other: &Self, sign: SignConvention, ctx: &FieldContext) -> Self {
        Self { representative: cup_formula(&self.representative, &other.representative, sign, ctx) }
    }

    pub fn is_zero(&self, cache: &CoboundaryCache) -> bool {
        cache.is_exact(&self.representative)
    }

    /// Equality in `HH*`: the representatives differ by a coboundary.
    pub fn equals(&self, other: &Self, cache: &CoboundaryCache) -> bool {
        self.degree() == other.degree() && cache.is_exact(&self.representative.sub(&other.representative))
    }

    /// Coefficients of `e1` in each slot. Coboundaries have none, so this
    /// depends only on the class.
    pub fn idempotent_part(&self, ctx: &FieldContext) -> Vec<Scalar> {
        self.representative
            .slots()
            .iter()
            .map(|s| s.coefficient(BasisPath::E1).cloned().unwrap_or_else(|| ctx.zero()))
            .collect()
    }
}

fn e1_slots(cls: &CohomologyClass) -> Vec<(usize, Scalar)> {
    cls.representative
        .slots()
        .iter()
        .enumerate()
        .filter_map(|(r, s)| s.coefficient(BasisPath::E1).map(|c| (r, c.clone())))
        .collect()
}

/// Non-nilpotency as characterised structurally: in degree 0 the class has
/// an `e1` component (it is a unit plus a nilpotent central element); in
/// positive degree `q² = 1`, the degree is even and some even slot carries
/// `e1`.
pub fn structurally_non_nilpotent(cls: &CohomologyClass, ctx: &FieldContext) -> bool {
    let slots = e1_slots(cls);
    if cls.degree() == 0 {
        return slots.iter().any(|(r, _)| *r == 0);
    }
    ctx.q_is_plus_minus_one() && cls.degree().is_multiple_of(2) && slots.iter().any(|(r, _)| r % 2 == 0)
}

/// Result of [`is_nilpotent`].
#[derive(Clone, Debug)]
pub struct NilpotencyVerdict {
    pub nilpotent: bool,
    /// Least `k ≤ max_power` with `[φ]^k = 0`.
    pub exponent: Option<usize>,
    /// `α` with `d*α = φ^k` for that `k` (absent in degree 0).
    pub witness: Option<Cochain>,
    pub max_power: usize,
    /// Verdict of [`structurally_non_nilpotent`].
    pub structural_nilpotent: bool,
    /// Whether the power certificate and the structural criterion agree.
    pub agrees: bool,
}

/// Default bound on cup powers: radical-valued cocycles already have
/// vanishing cube at cochain level.
pub const DEFAULT_MAX_POWER: usize = 3;

/// Computes `[φ], [φ]², …, [φ]^max_power` and reports the first that
/// vanishes, alongside the structural classification.
pub fn is_nilpotent(cls: &CohomologyClass, cache: &CoboundaryCache, max_power: usize) -> Result<NilpotencyVerdict> {
    let ctx = cache.ctx();
    let mut power = cls.representative.clone();
    let mut found = None;
    for k in 1..=max_power.max(1) {
        if k > 1 {
            power = cup_formula(&power, &cls.representative, SignConvention::Koszul, ctx);
        }
        if cache.is_exact(&power) {
            found = Some((k, power.clone()));
            break;
        }
    }
    let witness = match &found {
        Some((_, p)) => match is_coboundary(p, ctx)? {
            CoboundaryDecision::Coboundary { witness } => witness,
            CoboundaryDecision::NotCoboundary { .. } => unreachable!("cache and solver disagree"),
        },
        None => None,
    };
    let nilpotent = found.is_some();
    let structural_nilpotent = !structurally_non_nilpotent(cls, ctx);
    Ok(NilpotencyVerdict {
        nilpotent,
        exponent: found.map(|(k, _)| k),
        witness,
        max_power,
        structural_nilpotent,
        agrees: nilpotent == structural_nilpotent,
    })
}

/// `x^{x_exp} y^{y_exp}`; the unit is `x^0 y^0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x_exp: usize,
    pub y_exp: usize,
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Monomial) -> Monomial {
        Monomial { x_exp: self.x_exp + other.x_exp, y_exp: self.y_exp + other.y_exp }
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x_exp: 0, y_exp: 0 };

    pub fn degree(self) -> usize {
        self.x_exp + self.y_exp
    }

    /// Inside `k ⊕ k[x², y²]y²`.
    pub fn in_image(self) -> bool {
        self == Self::ONE || (self.x_exp.is_multiple_of(2) && self.y_exp.is_multiple_of(2) && self.y_exp >= 2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::ONE {
            f.write_str("1")
        } else {
            write!(f, "x^{{{}}}y^{{{}}}", self.x_exp, self.y_exp)
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A `k`-linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let updated = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if updated.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, updated);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(*a * *b, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// Sends a class of degree `d` with `e1` in even slot `r` to `x^{d−r} y^r`,
/// extended linearly; the unit class goes to `1`.
pub fn monomial_of_class(cls: &CohomologyClass, ctx: &FieldContext) -> Result<Polynomial> {
    if !ctx.q_is_plus_minus_one() {
        return Err(Error::QNotPlusMinusOne);
    }
    let d = cls.degree();
    let slots = e1_slots(cls);
    let mut out = Polynomial::default();
    if d == 0 {
        match slots.iter().find(|(r, _)| *r == 0) {
            Some((_, c)) => out.add_term(Monomial::ONE, c.clone()),
            None => return Err(Error::NilpotentClass),
        }
        return Ok(out);
    }
    if slots.is_empty() {
        return Err(Error::NilpotentClass);
    }
    let outside: Vec<usize> = slots.iter().map(|(r, _)| *r).filter(|r| r % 2 == 1 || *r == 0 || d % 2 == 1).collect();
    if !outside.is_empty() {
        return Err(Error::OutsideMonomialImage(outside));
    }
    for (r, c) in slots {
        out.add_term(Monomial { x_exp: d - r, y_exp: r }, c);
    }
    Ok(out)
}

/// `dim (HH*/𝒩)^n` for `n ≤ max_n`: the rank of reduction modulo the
/// radical of `Λ` on `ker d*_{n+1}`. Classes with radical values are
/// nilpotent, so the nilpotent part of `HH^n` is the kernel of this map.
pub fn quotient_dimensions(max_n: usize, ctx: &FieldContext) -> Vec<usize> {
    (0..=max_n).map(|n| non_nilpotent_basis(n, ctx).len()).collect()
}

/// Cocycles whose idempotent parts form an echelon basis of the image of
/// `ker d*_{n+1}` under reduction modulo the radical.
pub fn non_nilpotent_basis(n: usize, ctx: &FieldContext) -> Vec<CohomologyClass> {
    let mut span = Echelon::new();
    let mut out = Vec::new();
    for phi in kernel_basis(n, ctx) {
        let cls = CohomologyClass { representative: phi };
        let v: SparseVec = e1_slots(&cls).into_iter().collect();
        if span.insert(v) {
            out.push(cls);
        }
    }
    out
}

/// A random cocycle: a combination of the kernel basis with coefficients in
/// `-3..=3`.
pub fn random_cocycle<R: Rng>(n: usize, rng: &mut R, ctx: &FieldContext) -> Cochain {
    let mut acc = Cochain::zero(n);
    for v in kernel_basis(n, ctx) {
        let c = ctx.from_i64(rng.gen_range(-3..=3));
        acc = acc.add(&v.scale(&c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{apply_dstar, cochain_dim};
    use crate::field::{make_field, FieldSpec};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(q: &str) -> FieldContext {
        make_field(FieldSpec::Rationals, q).unwrap()
    }

    fn cochain(n: usize, s: &str, k: &FieldContext) -> Cochain {
        Cochain::parse(n, s, k).unwrap()
    }

    #[test]
    fn degree_one_square_vanishes() {
        for q in ["1", "-1", "3"] {
            let k = ctx(q);
            let phi = cochain(1, "a,b,c", &k);
            for sign in [SignConvention::Koszul, SignConvention::Plain] {
                assert!(cup_formula(&phi, &phi, sign, &k).is_zero());
                assert!(cup_via_delta(&phi, &phi, sign, &k).is_zero());
            }
        }
    }

    #[test]
    fn worked_example_slot_by_slot() {
        let k = ctx("1");
        let phi = cochain(4, "0,0,e1,0,0,0", &k);
        let mu = cochain(2, "0,0,e1,0", &k);
        // φ₂μ₂ − φ₃μ₁ + φ₄μ₀ at slot 4
        let expected4 = phi.slot(2).multiply(mu.slot(2), &k).sub(&phi.slot(3).multiply(mu.slot(1), &k)).add(&phi.slot(4).multiply(mu.slot(0), &k));
        assert_eq!(t_sum(&phi, &mu, 4, &k), expected4);
        assert_eq!(expected4, AlgebraElement::basis(BasisPath::E1, &k));
        let product = cup_formula(&phi, &mu, SignConvention::Koszul, &k);
        assert_eq!(product, cochain(6, "0,0,0,0,e1,0,0,0", &k));
    }

    #[test]
    fn unit_acts_as_identity() {
        for q in ["1", "-1", "2"] {
            let k = ctx(q);
            let one = Cochain::unit(&k);
            for n in 0..=6 {
                for phi in kernel_basis(n, &k) {
                    for sign in [SignConvention::Koszul, SignConvention::Plain] {
                        assert_eq!(cup_formula(&one, &phi, sign, &k), phi, "q={q} n={n}");
                        assert_eq!(cup_formula(&phi, &one, sign, &k), phi, "q={q} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn endpoint_cases_are_single_term_sums() {
        let k = ctx("-3");
        for m in 0..=4 {
            for n in 0..=(8 - m) {
                for phi in Cochain::unit_vectors(m, &k) {
                    for mu in Cochain::unit_vectors(n, &k) {
                        let p = cup_formula(&phi, &mu, SignConvention::Plain, &k);
                        assert_eq!(p.slot(0), &phi.slot(0).multiply(mu.slot(0), &k));
                        assert_eq!(p.slot(m + n), &phi.slot(m).multiply(mu.slot(n), &k));
                    }
                }
            }
        }
    }

    #[test]
    fn formula_matches_delta_on_unit_cochains() {
        for q in ["1", "-1", "2", "0"] {
            let k = ctx(q);
            for m in 0..=6 {
                for n in 0..=(6 - m) {
                    for phi in Cochain::unit_vectors(m, &k) {
                        for mu in Cochain::unit_vectors(n, &k) {
                            for sign in [SignConvention::Koszul, SignConvention::Plain] {
                                assert_eq!(cup_formula(&phi, &mu, sign, &k), cup_via_delta(&phi, &mu, sign, &k), "q={q} {phi} ⌣ {mu}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seeded_random_pairs_agree() {
        let k = ctx("-1");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..100 {
            let m = rng.gen_range(0..=4);
            let n = rng.gen_range(0..=4);
            let phi = random_cocycle(m, &mut rng, &k);
            let mu = random_cocycle(n, &mut rng, &k);
            let p = cup_formula(&phi, &mu, SignConvention::Koszul, &k);
            assert_eq!(p, cup_via_delta(&phi, &mu, SignConvention::Koszul, &k));
            assert!(is_cocycle(&p, &k));
        }
    }

    #[test]
    fn cocycles_are_closed_under_cup() {
        for q in ["1", "-1", "2"] {
            let k = ctx(q);
            for m in 0..=6 {
                for n in 0..=(6 - m) {
                    for phi in kernel_basis(m, &k) {
                        for mu in kernel_basis(n, &k) {
                            assert!(apply_dstar(&cup_formula(&phi, &mu, SignConvention::Koszul, &k), &k).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coboundaries_form_an_ideal() {
        for q in ["1", "-1", "2"] {
            let k = ctx(q);
            let cache = CoboundaryCache::new(&k);
            for m in 1..=3 {
                for n in 0..=3 {
                    for alpha in Cochain::unit_vectors(m - 1, &k) {
                        let beta = apply_dstar(&alpha, &k);
                        for mu in kernel_basis(n, &k) {
                            assert!(cache.is_exact(&cup_formula(&beta, &mu, SignConvention::Koszul, &k)));
                            assert!(cache.is_exact(&cup_formula(&mu, &beta, SignConvention::Koszul, &k)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn graded_commutative_on_classes() {
        for q in ["1", "-1", "2"] {
            let k = ctx(q);
            let cache = CoboundaryCache::new(&k);
            for m in 0..=6 {
                for n in 0..=(6 - m) {
                    for phi in kernel_basis(m, &k) {
                        for mu in kernel_basis(n, &k) {
                            let lhs = cup_formula(&phi, &mu, SignConvention::Koszul, &k);
                            let rhs = cup_formula(&mu, &phi, SignConvention::Koszul, &k).scale(&k.sign((m * n) as u64));
                            assert!(cache.is_exact(&lhs.sub(&rhs)), "q={q} {phi} / {mu}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nilpotency_examples() {
        let k = ctx("1");
        let cache = CoboundaryCache::new(&k);
        let ab = CohomologyClass::new(cochain(0, "ba,0", &k), &k).unwrap();
        let v = is_nilpotent(&ab, &cache, DEFAULT_MAX_POWER).unwrap();
        assert!(v.nilpotent && v.agrees);
        assert_eq!(v.exponent, Some(2));

        let y2 = CohomologyClass::new(cochain(2, "0,0,e1,0", &k), &k).unwrap();
        let v = is_nilpotent(&y2, &cache, DEFAULT_MAX_POWER).unwrap();
        assert!(!v.nilpotent && v.agrees);

        let unit = CohomologyClass::unit(&k);
        assert!(!is_nilpotent(&unit, &cache, DEFAULT_MAX_POWER).unwrap().nilpotent);

        let k3 = ctx("3");
        let cache3 = CoboundaryCache::new(&k3);
        for phi in kernel_basis(2, &k3) {
            let v = is_nilpotent(&CohomologyClass::new(phi, &k3).unwrap(), &cache3, DEFAULT_MAX_POWER).unwrap();
            assert!(v.nilpotent && v.agrees);
        }
    }

    #[test]
    fn not_a_cocycle_is_rejected() {
        let k = ctx("2");
        assert!(matches!(CohomologyClass::new(cochain(0, "b,0", &k), &k), Err(Error::NotCocycle(0))));
    }

    #[test]
    fn monomial_examples() {
        let k = ctx("1");
        for n in 1..=4 {
            let d = 2 * n;
            let mut slots = vec!["0"; d + 2];
            slots[2] = "e1";
            let cls = CohomologyClass::new(cochain(d, &slots.join(","), &k), &k).unwrap();
            let p = monomial_of_class(&cls, &k).unwrap();
            assert_eq!(p.to_string(), Monomial { x_exp: 2 * (n - 1), y_exp: 2 }.to_string());
            let mut slots = vec!["0"; d + 2];
            slots[d] = "e1";
            let cls = CohomologyClass::new(cochain(d, &slots.join(","), &k), &k).unwrap();
            assert_eq!(monomial_of_class(&cls, &k).unwrap().to_string(), format!("x^{{0}}y^{{{d}}}"));
        }
        assert_eq!(monomial_of_class(&CohomologyClass::unit(&k), &k).unwrap().to_string(), "1");
        let ab = CohomologyClass::new(cochain(0, "ba,0", &k), &k).unwrap();
        assert!(matches!(monomial_of_class(&ab, &k), Err(Error::NilpotentClass)));
        let k2 = ctx("2");
        assert!(matches!(monomial_of_class(&CohomologyClass::unit(&k2), &k2), Err(Error::QNotPlusMinusOne)));
    }

    #[test]
    fn quotient_for_q_one_and_generic() {
        assert_eq!(quotient_dimensions(8, &ctx("1")), vec![1, 0, 1, 0, 2, 0, 3, 0, 4]);
        assert_eq!(quotient_dimensions(6, &ctx("2")), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn sign_convention_parsing() {
        assert_eq!("koszul".parse::<SignConvention>().unwrap(), SignConvention::Koszul);
        assert_eq!("plain".parse::<SignConvention>().unwrap().to_string(), "plain");
        assert!("other".parse::<SignConvention>().is_err());
    }

    fn arbitrary_cochain(n: usize, coeffs: &[i64], k: &FieldContext) -> Cochain {
        let v: Vec<Scalar> = (0..cochain_dim(n)).map(|i| k.from_i64(coeffs[i % coeffs.len()])).collect();
        Cochain::from_vector(n, &v)
    }

    proptest! {
        #[test]
        fn formula_matches_delta_on_arbitrary_cochains(
            m in 0usize..5,
            n in 0usize..5,
            q in -4i64..5,
            a in proptest::collection::vec(-5i64..6, 1..12),
            b in proptest::collection::vec(-5i64..6, 1..12),
        ) {
            let k = ctx(&q.to_string());
            let phi = arbitrary_cochain(m, &a, &k);
            let mu = arbitrary_cochain(n, &b, &k);
            prop_assert_eq!(cup_formula(&phi, &mu, SignConvention::Koszul, &k), cup_via_delta(&phi, &mu, SignConvention::Koszul, &k));
        }

        #[test]
        fn cup_is_bilinear(
            m in 0usize..4,
            n in 0usize..4,
            a in proptest::collection::vec(-5i64..6, 1..8),
            b in proptest::collection::vec(-5i64..6, 1..8),
            c in proptest::collection::vec(-5i64..6, 1..8),
            s in -4i64..5,
        ) {
            let k = ctx("-1");
            let phi = arbitrary_cochain(m, &a, &k);
            let mu = arbitrary_cochain(n, &b, &k);
            let nu = arbitrary_cochain(n, &c, &k);
            let s = k.from_i64(s);
            let lhs = cup_formula(&phi, &mu.scale(&s).add(&nu), SignConvention::Koszul, &k);
            let rhs = cup_formula(&phi, &mu, SignConvention::Koszul, &k).scale(&s).add(&cup_formula(&phi, &nu, SignConvention::Koszul, &k));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
