//! Bundled verification suites with machine-readable results.
//!
//! * `core`: structural identities of the resolution, the cochain complex
//!   and the cup product.
//! * `claims` (CLI name `paper`): the published statements about `HH⁰`,
//!   kernel dimensions, the worked cup example, nilpotency and `HH*/𝒩`.
//! * `oracle`: agreement with the reduced bar complex.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bar_oracle::{bar_cohomology_dims, ORACLE_CAP};
use crate::cochain::{cohomology_report, dstar_matrix, kernel_basis, stated_kernel_dimension, Cochain, CoboundaryCache};
use crate::cup::{cup_formula, cup_via_delta, is_nilpotent, quotient_dimensions, CohomologyClass, SignConvention, DEFAULT_MAX_POWER};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::linalg::Echelon;
use crate::resolution::{chain_map_defect, coassociativity_defect, max_index, Resolution, TensorSign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    #[serde(rename = "paper")]
    Claims,
    Oracle,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Self::Core),
            "paper" | "claims" => Ok(Self::Claims),
            "oracle" => Ok(Self::Oracle),
            other => Err(Error::Parse(format!("unknown suite `{other}` (expected core, paper or oracle)"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Core => "core",
            Self::Claims => "paper",
            Self::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// Side-by-side dimensions from the two complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub n: usize,
    pub koszul: usize,
    pub bar: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub field: String,
    pub q: String,
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleRow>>,
}

pub fn run_suite(suite: Suite, max_n: usize, ctx: &FieldContext) -> Result<SuiteReport> {
    let (checks, oracle) = match suite {
        Suite::Core => (core_checks(max_n, ctx)?, None),
        Suite::Claims => (claim_checks(max_n, ctx)?, None),
        Suite::Oracle => {
            let rows = oracle_rows(max_n, ctx)?;
            let bad: Vec<usize> = rows.iter().filter(|r| !r.agree).map(|r| r.n).collect();
            let check = Check::new("bar_agreement", bad.is_empty(), format!("disagreeing degrees: {bad:?}"));
            (vec![check], Some(rows))
        }
    };
    Ok(SuiteReport {
        suite,
        field: ctx.spec().to_string(),
        q: ctx.q().to_string(),
        max_n,
        passed: checks.iter().all(|c| c.passed),
        checks,
        oracle,
    })
}

pub fn oracle_rows(max_n: usize, ctx: &FieldContext) -> Result<Vec<OracleRow>> {
    if max_n > ORACLE_CAP {
        return Err(Error::DegreeTooLarge { requested: max_n, cap: ORACLE_CAP });
    }
    let bar = bar_cohomology_dims(max_n, ctx)?;
    let report = cohomology_report(max_n, ctx);
    Ok(report
        .rows
        .iter()
        .zip(bar)
        .map(|(r, b)| OracleRow { n: r.n, koszul: r.dim_hh, bar: b, agree: r.dim_hh == b })
        .collect())
}

fn core_checks(max_n: usize, ctx: &FieldContext) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let res = Resolution::build(ctx, max_n.max(2))?;
    let failure = res.first_d_squared_failure()?;
    checks.push(Check::new("d_squared", failure.is_none(), format!("first failure: {failure:?}")));

    let bad: Vec<usize> = (0..max_n)
        .filter(|&n| !dstar_matrix(n + 1, ctx).matrix.mul(&dstar_matrix(n, ctx).matrix, ctx).is_zero())
        .collect();
    checks.push(Check::new("dstar_squared", bad.is_empty(), format!("failing degrees: {bad:?}")));

    let top = max_n.min(8);
    let mut chain = Vec::new();
    let mut coassoc = Vec::new();
    for n in 0..=top {
        for r in 0..=max_index(n) {
            if !chain_map_defect(n, r, TensorSign::Koszul, ctx)?.is_zero() {
                chain.push((n, r));
            }
            if !coassociativity_defect(n, r, ctx)?.is_empty() {
                coassoc.push((n, r));
            }
        }
    }
    checks.push(Check::new("comultiplication_chain_map", chain.is_empty(), format!("degrees <= {top}; failures: {chain:?}")));
    checks.push(Check::new("comultiplication_coassociative", coassoc.is_empty(), format!("degrees <= {top}; failures: {coassoc:?}")));

    let top = max_n.min(6);
    let mut disagreements = 0;
    let mut pairs = 0;
    for m in 0..=top {
        for n in 0..=(top - m) {
            for phi in Cochain::unit_vectors(m, ctx) {
                for mu in Cochain::unit_vectors(n, ctx) {
                    pairs += 1;
                    if cup_formula(&phi, &mu, SignConvention::Koszul, ctx) != cup_via_delta(&phi, &mu, SignConvention::Koszul, ctx) {
                        disagreements += 1;
                    }
                }
            }
        }
    }
    checks.push(Check::new("cup_methods_agree", disagreements == 0, format!("{pairs} unit pairs, m+n <= {top}; {disagreements} disagreements")));

    let cache = CoboundaryCache::new(ctx);
    let one = Cochain::unit(ctx);
    let kernels: Vec<Vec<Cochain>> = (0..=top).map(|n| kernel_basis(n, ctx)).collect();
    let unit_ok = kernels.iter().flatten().all(|phi| {
        cup_formula(&one, phi, SignConvention::Koszul, ctx) == *phi && cup_formula(phi, &one, SignConvention::Koszul, ctx) == *phi
    });
    checks.push(Check::new("unit_law", unit_ok, format!("kernel bases in degrees <= {top}")));

    let mut failures = Vec::new();
    for m in 0..=top {
        for n in 0..=(top - m) {
            for phi in &kernels[m] {
                for mu in &kernels[n] {
                    let lhs = cup_formula(phi, mu, SignConvention::Koszul, ctx);
                    let rhs = cup_formula(mu, phi, SignConvention::Koszul, ctx).scale(&ctx.sign((m * n) as u64));
                    if !cache.is_exact(&lhs.sub(&rhs)) {
                        failures.push((m, n));
                    }
                }
            }
        }
    }
    failures.dedup();
    checks.push(Check::new("graded_commutativity", failures.is_empty(), format!("m+n <= {top}; failing degree pairs: {failures:?}")));
    Ok(checks)
}

/// The spanning set of `HH⁰` stated in the literature: `(a,0), (ab,0), (e1,e2)`
/// when `q = 1` (also `q = −1` in characteristic 2), else `(ab,0), (e1,e2)`.
/// `None` for `q = 0`, where `ab` vanishes.
pub fn stated_hh0_span(ctx: &FieldContext) -> Option<Vec<Cochain>> {
    if ctx.q().is_zero() {
        return None;
    }
    let mut out = Vec::new();
    if ctx.q_is_one() {
        out.push(Cochain::parse(0, "a,0", ctx).expect("typed"));
    }
    out.push(Cochain::parse(0, "ab,0", ctx).expect("typed"));
    out.push(Cochain::unit(ctx));
    Some(out)
}

/// `dim (HH*/𝒩)^n` as stated: `k ⊕ k[x², y²]y²` for `q = ±1`, `k` otherwise.
pub fn stated_quotient_dimensions(max_n: usize, ctx: &FieldContext) -> Vec<usize> {
    (0..=max_n)
        .map(|n| match n {
            0 => 1,
            n if ctx.q_is_plus_minus_one() && n % 2 == 0 => n / 2,
            _ => 0,
        })
        .collect()
}

/// Whether two families of cochains span the same subspace.
pub fn same_span(a: &[Cochain], b: &[Cochain]) -> bool {
    let rank = |xs: &[&Cochain]| {
        let mut e = Echelon::new();
        for x in xs {
            e.insert(x.to_sparse());
        }
        e.rank()
    };
    let ra = rank(&a.iter().collect::<Vec<_>>());
    let rb = rank(&b.iter().collect::<Vec<_>>());
    let rab = rank(&a.iter().chain(b).collect::<Vec<_>>());
    ra == rb && rb == rab
}

fn claim_checks(max_n: usize, ctx: &FieldContext) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let report = cohomology_report(max_n, ctx);

    match stated_hh0_span(ctx) {
        Some(span) => {
            let ok = same_span(&report.kernel_bases[0], &span);
            checks.push(Check::new("hh0_span", ok, format!("dim ker d*_1 = {}, stated {}", report.rows[0].dim_ker, span.len())));
        }
        None => checks.push(Check::new("hh0_span", true, "no statement for q = 0")),
    }

    let mut mismatches = Vec::new();
    for row in &report.rows {
        if let Some(c) = stated_kernel_dimension(row.n, ctx) {
            if c != BigRational::from_integer(BigInt::from(row.dim_ker)) {
                mismatches.push(format!("n={}: computed {}, stated {}", row.n, row.dim_ker, c));
            }
        }
    }
    checks.push(Check::new("kernel_closed_forms", mismatches.is_empty(), mismatches.join("; ")));

    if ctx.q_is_plus_minus_one() {
        let phi = Cochain::parse(4, "0,0,e1,0,0,0", ctx)?;
        let mu = Cochain::parse(2, "0,0,e1,0", ctx)?;
        let expected = Cochain::parse(6, "0,0,0,0,e1,0,0,0", ctx)?;
        let ok = [SignConvention::Koszul, SignConvention::Plain]
            .iter()
            .all(|&s| cup_formula(&phi, &mu, s, ctx) == expected && cup_via_delta(&phi, &mu, s, ctx) == expected);
        checks.push(Check::new("worked_cup_example", ok, "x^2y^2 * y^2 = x^2y^4"));
    }

    let cache = CoboundaryCache::new(ctx);
    let top = max_n.min(8);
    let mut disagreements = Vec::new();
    let mut odd_failures = Vec::new();
    for n in 0..=top {
        for phi in &report.kernel_bases[n] {
            let cls = CohomologyClass::new(phi.clone(), ctx)?;
            let v = is_nilpotent(&cls, &cache, DEFAULT_MAX_POWER)?;
            if !v.agrees {
                disagreements.push(format!("degree {n}: {phi}"));
            }
            if n % 2 == 1 && !v.nilpotent {
                odd_failures.push(format!("degree {n}: {phi}"));
            }
        }
    }
    checks.push(Check::new("nilpotency_classification", disagreements.is_empty(), disagreements.join("; ")));
    checks.push(Check::new("odd_degree_nilpotent", odd_failures.is_empty(), odd_failures.join("; ")));

    let computed = quotient_dimensions(max_n, ctx);
    let stated = stated_quotient_dimensions(max_n, ctx);
    checks.push(Check::new("quotient_dimensions", computed == stated, format!("computed {computed:?}, stated {stated:?}")));
    Ok(checks)
}
