//! The aperiodic Jordan algebra J(F) built on quasiaddition, its finite
//! truncations, and structure-constant export.
//!
//! On generators the product is L_x ∘ L_y = ½(L_{x⊢y} + L_{y⊢x});
//! integer-indexed, L_n ∘ L_m = ½(L_{n′−m′+2n−m} + L_{m′−n′+2m−n}) with
//! n′ the integer part of F(n) = n′ + nτ. The construction is valid for
//! every (α, β). Output indices always satisfy the sum rule p + q = n + m,
//! the lever behind the non-unitality and proper-ideal arguments.

use crate::algebra::{
    bilinear_extend_total, in_span, solve_golden_system, AlgebraElement, BasisKey,
};
use crate::chain::{membership, point, qadd, qadd_index, ChainError, ChainSpec};
use crate::golden::{rational_to_string, GoldenRational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JordanError {
    #[error("index {index} lies outside the truncation window [-{half_width}, {half_width}]")]
    IndexOutsideWindow { index: i64, half_width: i64 },
    #[error("truncation half-width must be nonnegative, got {0}")]
    NegativeWindow(i64),
    #[error("identity search needs 0 ≤ M < N, got N={n}, M={m}")]
    InvalidIdentitySearch { n: i64, m: i64 },
    #[error("ideal window half-width must be at least 2, got {0}")]
    IdealWindowTooSmall(i64),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// The aperiodic Jordan algebra of one chain; valid for all α and β.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanSpec {
    chain: ChainSpec,
}

impl JordanSpec {
    pub fn new(chain: ChainSpec) -> Self {
        JordanSpec { chain }
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }
}

/// How products leaving a truncation window are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationMode {
    /// The whole product is zeroed as soon as one output index escapes.
    #[serde(rename = "zero-product")]
    ZeroProduct,
    /// Escaping terms are dropped individually.
    #[serde(rename = "drop-term")]
    DropTerm,
}

impl TruncationMode {
    pub fn name(&self) -> &'static str {
        match self {
            TruncationMode::ZeroProduct => "zero-product",
            TruncationMode::DropTerm => "drop-term",
        }
    }
}

impl fmt::Display for TruncationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite truncation of J(F): basis {L_n : −N ≤ n ≤ N} and a rule for
/// products leaving the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationSpec {
    chain: ChainSpec,
    half_width: i64,
    mode: TruncationMode,
}

impl TruncationSpec {
    pub fn new(chain: ChainSpec, half_width: i64, mode: TruncationMode) -> Result<Self, JordanError> {
        if half_width < 0 {
            return Err(JordanError::NegativeWindow(half_width));
        }
        Ok(TruncationSpec {
            chain,
            half_width,
            mode,
        })
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn mode(&self) -> TruncationMode {
        self.mode
    }

    pub fn contains(&self, index: i64) -> bool {
        index.abs() <= self.half_width
    }

    pub fn basis(&self) -> Vec<i64> {
        (-self.half_width..=self.half_width).collect()
    }
}

/// L_n ∘ L_m = ½(L_p + L_q) with p = n′−m′+2n−m and q = m′−n′+2m−n; the
/// diagonal merges to the idempotent L_n.
pub fn jordan_product(spec: &JordanSpec, n: i64, m: i64) -> AlgebraElement {
    jordan_product_indices(&spec.chain, n, m)
}

fn jordan_product_indices(chain: &ChainSpec, n: i64, m: i64) -> AlgebraElement {
    let (p, q) = output_indices(chain, n, m);
    let half = GoldenRational::new(1, 0, 2);
    AlgebraElement::term(BasisKey::index(p), half.clone())
        .add(&AlgebraElement::term(BasisKey::index(q), half))
}

/// Output index pair (n ⊢ m, m ⊢ n) in index form.
fn output_indices(chain: &ChainSpec, n: i64, m: i64) -> (i64, i64) {
    (qadd_index(chain, n, m), qadd_index(chain, m, n))
}

/// Point form L_x ∘ L_y = ½(L_{x⊢y} + L_{y⊢x}); both arguments must belong
/// to the chain.
pub fn jordan_product_points(
    spec: &JordanSpec,
    x: &GoldenRational,
    y: &GoldenRational,
) -> Result<AlgebraElement, JordanError> {
    for value in [x, y] {
        if !membership(&spec.chain, value)? {
            return Err(ChainError::NotInChain(value.clone()).into());
        }
    }
    let half = GoldenRational::new(1, 0, 2);
    Ok(
        AlgebraElement::term(BasisKey::point(qadd(x, y)), half.clone())
            .add(&AlgebraElement::term(BasisKey::point(qadd(y, x)), half)),
    )
}

fn basis_product<'a>(
    chain: &'a ChainSpec,
) -> impl Fn(&BasisKey, &BasisKey) -> AlgebraElement + 'a {
    move |a, b| match (a, b) {
        (BasisKey::ChainIndex(n), BasisKey::ChainIndex(m)) => {
            jordan_product_indices(chain, *n, *m)
        }
        _ => unreachable!("jordan product is defined on integer-indexed generators"),
    }
}

/// A pair on which the sum rule p + q = n + m failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumRuleViolation {
    pub pair: (i64, i64),
    pub outputs: (i64, i64),
}

/// Checks p + q = n + m over every pair in the index range.
pub fn check_sum_rule(spec: &JordanSpec, lo: i64, hi: i64) -> Vec<SumRuleViolation> {
    let mut violations = Vec::new();
    for n in lo..=hi {
        for m in lo..=hi {
            let (p, q) = output_indices(&spec.chain, n, m);
            if p + q != n + m {
                violations.push(SumRuleViolation {
                    pair: (n, m),
                    outputs: (p, q),
                });
            }
        }
    }
    violations
}

/// A pair on which the Jordan identity failed, with both evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub pair: (i64, i64),
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

/// Evaluates (L_n∘L_m)∘(L_n∘L_n) = L_n∘(L_m∘(L_n∘L_n)) exhaustively over
/// the index range, through honest bilinear extension of the basis product.
pub fn check_jordan_identity(spec: &JordanSpec, lo: i64, hi: i64) -> Vec<IdentityViolation> {
    let product = basis_product(&spec.chain);
    let mul = |a: &AlgebraElement, b: &AlgebraElement| bilinear_extend_total(&product, a, b);
    let mut violations = Vec::new();
    for n in lo..=hi {
        let ln = AlgebraElement::basis(BasisKey::index(n));
        let nn = mul(&ln, &ln);
        for m in lo..=hi {
            let lm = AlgebraElement::basis(BasisKey::index(m));
            let lhs = mul(&mul(&ln, &lm), &nn);
            let rhs = mul(&ln, &mul(&lm, &nn));
            if lhs != rhs {
                violations.push(IdentityViolation {
                    pair: (n, m),
                    lhs,
                    rhs,
                });
            }
        }
    }
    violations
}

/// True iff n ↦ 0⊢n and n ↦ n⊢0 are strictly monotone over lo..=hi (they
/// run in opposite directions: 0⊢n falls, n⊢0 climbs).
pub fn check_monotone_zero_maps(spec: &JordanSpec, lo: i64, hi: i64) -> bool {
    if lo >= hi {
        return true;
    }
    let left: Vec<i64> = (lo..=hi).map(|n| qadd_index(&spec.chain, 0, n)).collect();
    let right: Vec<i64> = (lo..=hi).map(|n| qadd_index(&spec.chain, n, 0)).collect();
    strictly_monotone(&left) && strictly_monotone(&right)
}

fn strictly_monotone(values: &[i64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1]) || values.windows(2).all(|w| w[0] > w[1])
}

/// Sets up the exact linear system "Σ_k c_k (L_k ∘ L_n) = L_n for all
/// |n| ≤ m_width, unknowns c_k for |k| ≤ n_width" and reports `true` when
/// it is infeasible — i.e. no identity element supported on the window
/// exists. Requires 0 ≤ m_width < n_width.
pub fn check_no_identity(
    spec: &JordanSpec,
    n_width: i64,
    m_width: i64,
) -> Result<bool, JordanError> {
    if m_width < 0 || m_width >= n_width {
        return Err(JordanError::InvalidIdentitySearch {
            n: n_width,
            m: m_width,
        });
    }
    let columns: Vec<i64> = (-n_width..=n_width).collect();
    let mut row_of: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut rows: Vec<Vec<GoldenRational>> = Vec::new();
    let mut rhs: Vec<GoldenRational> = Vec::new();
    let mut row_for = |key: (i64, i64), rows: &mut Vec<Vec<GoldenRational>>,
                       rhs: &mut Vec<GoldenRational>| {
        *row_of.entry(key).or_insert_with(|| {
            rows.push(vec![GoldenRational::zero(); columns.len()]);
            rhs.push(GoldenRational::zero());
            rows.len() - 1
        })
    };
    for n in -m_width..=m_width {
        for (col, &k) in columns.iter().enumerate() {
            let product = jordan_product(spec, k, n);
            for (key, coeff) in product.iter() {
                let BasisKey::ChainIndex(i) = key else {
                    unreachable!("jordan products carry integer indices");
                };
                let row = row_for((n, *i), &mut rows, &mut rhs);
                rows[row][col] = &rows[row][col] + coeff;
            }
        }
        let row = row_for((n, n), &mut rows, &mut rhs);
        rhs[row] = GoldenRational::one();
    }
    Ok(solve_golden_system(&rows, &rhs).is_none())
}

/// True iff L_1 is outside the exact span of {L_0 ∘ L_n : |n| ≤ n_width},
/// the finite-scale witness that 𝔨 = L_0 ∘ J(F) is a proper ideal.
pub fn check_proper_ideal(spec: &JordanSpec, n_width: i64) -> Result<bool, JordanError> {
    if n_width < 2 {
        return Err(JordanError::IdealWindowTooSmall(n_width));
    }
    let generators: Vec<AlgebraElement> = (-n_width..=n_width)
        .map(|n| jordan_product(spec, 0, n))
        .collect();
    let target = AlgebraElement::basis(BasisKey::index(1));
    Ok(in_span(&target, &generators).is_none())
}

/// The truncated product of basis generators inside the window.
pub fn truncated_product(
    tspec: &TruncationSpec,
    n: i64,
    m: i64,
) -> Result<AlgebraElement, JordanError> {
    for index in [n, m] {
        if !tspec.contains(index) {
            return Err(JordanError::IndexOutsideWindow {
                index,
                half_width: tspec.half_width,
            });
        }
    }
    Ok(truncated_product_unchecked(tspec, n, m))
}

fn truncated_product_unchecked(tspec: &TruncationSpec, n: i64, m: i64) -> AlgebraElement {
    let (p, q) = output_indices(&tspec.chain, n, m);
    let half = GoldenRational::new(1, 0, 2);
    let full = AlgebraElement::term(BasisKey::index(p), half.clone())
        .add(&AlgebraElement::term(BasisKey::index(q), half));
    match tspec.mode {
        TruncationMode::ZeroProduct => {
            if tspec.contains(p) && tspec.contains(q) {
                full
            } else {
                AlgebraElement::zero()
            }
        }
        TruncationMode::DropTerm => full
            .iter()
            .filter(|(key, _)| match key {
                BasisKey::ChainIndex(i) => tspec.contains(*i),
                _ => unreachable!("jordan products carry integer indices"),
            })
            .map(|(key, coeff)| (key.clone(), coeff.clone()))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Commutativity,
    JordanIdentity,
}

/// A truncated-axiom counterexample: the pair and both evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: AxiomKind,
    pub pair: (i64, i64),
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

/// The verdict of the exhaustive truncated-axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedAxiomReport {
    pub commutative: bool,
    pub jordan_identity: bool,
    pub pairs_checked: u64,
    pub witnesses: Vec<AxiomViolation>,
}

/// Exhaustively tests commutativity and the Jordan identity inside the
/// window; the claim that they survive truncation is tested, not assumed.
pub fn check_truncated_axioms(tspec: &TruncationSpec) -> TruncatedAxiomReport {
    let product =
        |a: &BasisKey, b: &BasisKey| match (a, b) {
            (BasisKey::ChainIndex(n), BasisKey::ChainIndex(m)) => {
                truncated_product_unchecked(tspec, *n, *m)
            }
            _ => unreachable!("jordan products carry integer indices"),
        };
    let mul = |a: &AlgebraElement, b: &AlgebraElement| bilinear_extend_total(&product, a, b);
    let mut witnesses = Vec::new();
    let mut pairs_checked = 0;
    for n in tspec.basis() {
        let ln = AlgebraElement::basis(BasisKey::index(n));
        let nn = mul(&ln, &ln);
        for m in tspec.basis() {
            let lm = AlgebraElement::basis(BasisKey::index(m));
            pairs_checked += 1;
            let forward = mul(&ln, &lm);
            let backward = mul(&lm, &ln);
            if forward != backward {
                witnesses.push(AxiomViolation {
                    axiom: AxiomKind::Commutativity,
                    pair: (n, m),
                    lhs: forward.clone(),
                    rhs: backward,
                });
            }
            let lhs = mul(&forward, &nn);
            let rhs = mul(&ln, &mul(&lm, &nn));
            if lhs != rhs {
                witnesses.push(AxiomViolation {
                    axiom: AxiomKind::JordanIdentity,
                    pair: (n, m),
                    lhs,
                    rhs,
                });
            }
        }
    }
    TruncatedAxiomReport {
        commutative: !witnesses
            .iter()
            .any(|w| w.axiom == AxiomKind::Commutativity),
        jordan_identity: !witnesses
            .iter()
            .any(|w| w.axiom == AxiomKind::JordanIdentity),
        pairs_checked,
        witnesses,
    }
}

/// One structure constant a^i_{jk} of a truncated algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub value: GoldenRational,
}

/// A finite truncation exported as structure constants: L_j ∘ L_k =
/// Σ_i a^i_{jk} L_i. Only nonzero entries with j ≤ k are stored; the
/// product is symmetric in (j, k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantTable {
    pub algebra: String,
    pub alpha: String,
    pub beta: i64,
    #[serde(rename = "N")]
    pub half_width: i64,
    pub mode: TruncationMode,
    pub basis: Vec<i64>,
    pub constants: Vec<StructureConstant>,
}

impl StructureConstantTable {
    /// Rebuilds L_j ∘ L_k from the stored constants.
    pub fn product(&self, j: i64, k: i64) -> AlgebraElement {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        self.constants
            .iter()
            .filter(|c| c.j == a && c.k == b)
            .map(|c| (BasisKey::index(c.i), c.value.clone()))
            .collect()
    }

    /// Looks up a^i_{jk}, honouring the j ≤ k storage convention.
    pub fn constant(&self, i: i64, j: i64, k: i64) -> GoldenRational {
        let (a, b) = if j <= k { (j, k) } else { (k, j) };
        self.constants
            .iter()
            .find(|c| c.i == i && c.j == a && c.k == b)
            .map(|c| c.value.clone())
            .unwrap_or_else(GoldenRational::zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure constants serialise")
    }

    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }

    /// CSV rows i,j,k,p,q,d in the stored (deterministic) order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,p,q,d\n");
        for c in &self.constants {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.i,
                c.j,
                c.k,
                c.value.p(),
                c.value.q(),
                c.value.d()
            ));
        }
        out
    }
}

/// Exports the structure constants of a truncated algebra, listing nonzero
/// a^i_{jk} for j ≤ k sorted by (j, k, i).
pub fn export_structure_constants(tspec: &TruncationSpec) -> StructureConstantTable {
    let mut constants = Vec::new();
    for j in tspec.basis() {
        for k in j..=tspec.half_width {
            let product = truncated_product_unchecked(tspec, j, k);
            for (key, coeff) in product.iter() {
                let BasisKey::ChainIndex(i) = key else {
                    unreachable!("jordan products carry integer indices");
                };
                constants.push(StructureConstant {
                    i: *i,
                    j,
                    k,
                    value: coeff.clone(),
                });
            }
        }
    }
    StructureConstantTable {
        algebra: "jordan".to_string(),
        alpha: rational_to_string(tspec.chain.alpha()),
        beta: i64::try_from(tspec.chain.beta()).expect("β fits the export format"),
        half_width: tspec.half_width,
        mode: tspec.mode,
        basis: tspec.basis(),
        constants,
    }
}
