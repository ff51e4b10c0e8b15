//! Verification suites: each drives one family of identity checks over an
//! exhaustive desk-scale range and reports a verdict document
//! {suite, params, checked, violations}.
//!
//! Violations are rendered deterministically; the elapsed time is carried
//! alongside the document rather than inside it, so identical invocations
//! emit identical bytes.

use crate::chain::{
    gap_word, membership, point, qadd, substitution_word, word_to_string, ChainError,
    ChainSpec, Letter,
};
use crate::golden::{rational_to_string, GoldenRational};
use crate::jordan::{
    check_jordan_identity, check_no_identity, check_proper_ideal, check_sum_rule,
    check_truncated_axioms, AxiomKind, JordanError, JordanSpec, TruncationMode,
    TruncationSpec,
};
use crate::lie::{
    check_abelian_subwindow, check_antisymmetry, check_ideal, check_jacobi, LieAlgebraSpec,
    LieError,
};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::time::{Duration, Instant};

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub suite: String,
    pub params: Value,
    pub checked: u64,
    pub violations: Vec<String>,
    pub elapsed: Duration,
}

impl Verdict {
    /// The deterministic verdict document.
    pub fn document(&self) -> Value {
        json!({
            "suite": self.suite,
            "params": self.params,
            "checked": self.checked,
            "violations": self.violations,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document()).expect("verdicts serialise")
    }

    /// Whether the outcome matches expectation: suites normally expect no
    /// violations, falsification runs expect at least one.
    pub fn as_expected(&self, expect_violations: bool) -> bool {
        self.violations.is_empty() != expect_violations
    }
}

fn chain_params(chain: &ChainSpec, rest: &[(&str, Value)]) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("alpha".into(), Value::from(rational_to_string(chain.alpha())));
    map.insert("beta".into(), Value::from(chain.beta().to_string()));
    for (key, value) in rest {
        map.insert((*key).to_string(), value.clone());
    }
    Value::Object(map)
}

/// Which Lie-type algebra a lie-side suite runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieAlgebraKind {
    QcLie,
    Witt,
    Virasoro,
}

impl LieAlgebraKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "qclie" => Some(LieAlgebraKind::QcLie),
            "witt" => Some(LieAlgebraKind::Witt),
            "virasoro" => Some(LieAlgebraKind::Virasoro),
            _ => None,
        }
    }
}

fn lie_spec(
    kind: LieAlgebraKind,
    chain: &ChainSpec,
    central_sign: crate::lie::CentralSign,
    falsify: bool,
) -> Result<LieAlgebraSpec, LieError> {
    match kind {
        LieAlgebraKind::QcLie => Ok(LieAlgebraSpec::qclie_defect()),
        LieAlgebraKind::Witt => {
            if falsify {
                Ok(LieAlgebraSpec::witt_falsification(chain.clone()))
            } else {
                LieAlgebraSpec::witt(chain.clone())
            }
        }
        LieAlgebraKind::Virasoro => LieAlgebraSpec::virasoro(chain.clone(), central_sign),
    }
}

/// Jacobi identity over all generator triples in [−range, range].
pub fn verify_jacobi(
    kind: LieAlgebraKind,
    chain: &ChainSpec,
    range: i64,
    falsify: bool,
) -> Result<Verdict, LieError> {
    let start = Instant::now();
    let spec = lie_spec(kind, chain, crate::lie::CentralSign::Table, falsify)?;
    let violations = check_jacobi(&spec, -range, range)?;
    let count = crate::lie::generator_keys(&spec, -range, range).len() as u64;
    Ok(Verdict {
        suite: "jacobi".to_string(),
        params: chain_params(
            chain,
            &[
                ("algebra", json!(spec.kind_name())),
                ("range", json!(range)),
                ("falsify", json!(falsify)),
            ],
        ),
        checked: count.pow(3),
        violations: violations
            .iter()
            .map(|v| {
                format!(
                    "J({}, {}, {}) = {}",
                    v.keys[0], v.keys[1], v.keys[2], v.residual
                )
            })
            .collect(),
        elapsed: start.elapsed(),
    })
}

/// Antisymmetry [a,b] + [b,a] = 0 over all generator pairs in range.
pub fn verify_antisymmetry(
    kind: LieAlgebraKind,
    chain: &ChainSpec,
    central_sign: crate::lie::CentralSign,
    range: i64,
    falsify: bool,
) -> Result<Verdict, LieError> {
    let start = Instant::now();
    let spec = lie_spec(kind, chain, central_sign, falsify)?;
    let violations = check_antisymmetry(&spec, -range, range)?;
    let count = crate::lie::generator_keys(&spec, -range, range).len() as u64;
    Ok(Verdict {
        suite: "antisymmetry".to_string(),
        params: chain_params(
            chain,
            &[
                ("algebra", json!(spec.kind_name())),
                ("central-sign", json!(central_sign.name())),
                ("range", json!(range)),
                ("falsify", json!(falsify)),
            ],
        ),
        checked: count * count,
        violations: violations
            .iter()
            .map(|v| format!("[{}, {}] + [{}, {}] = {}", v.left, v.right, v.right, v.left, v.residual))
            .collect(),
        elapsed: start.elapsed(),
    })
}

/// Jordan identity over all index pairs in [−range, range]².
pub fn verify_jordan_identity(chain: &ChainSpec, range: i64) -> Verdict {
    let start = Instant::now();
    let spec = JordanSpec::new(chain.clone());
    let violations = check_jordan_identity(&spec, -range, range);
    let side = (2 * range + 1) as u64;
    Verdict {
        suite: "jordan-identity".to_string(),
        params: chain_params(chain, &[("range", json!(range))]),
        checked: side * side,
        violations: violations
            .iter()
            .map(|v| {
                format!(
                    "(L_{{{0}}}∘L_{{{1}}})∘(L_{{{0}}}∘L_{{{0}}}) = {2} but L_{{{0}}}∘(L_{{{1}}}∘(L_{{{0}}}∘L_{{{0}}})) = {3}",
                    v.pair.0, v.pair.1, v.lhs, v.rhs
                )
            })
            .collect(),
        elapsed: start.elapsed(),
    }
}

/// The quasiaddition identity suite over chain values with indices in
/// [−range, range]: idempotence, the absorption identity, translation
/// covariance, the sum and difference rules, and flexibility.
pub fn verify_quasiadd(chain: &ChainSpec, range: i64) -> Verdict {
    let start = Instant::now();
    let values: Vec<GoldenRational> =
        (-range..=range).map(|n| point(chain, n).value).collect();
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut require = |ok: bool, description: String| {
        checked += 1;
        if !ok {
            violations.push(description);
        }
    };
    for x in &values {
        require(&qadd(x, x) == x, format!("idempotence fails at {x}"));
    }
    for x in &values {
        for y in &values {
            let xy = qadd(x, y);
            let yx = qadd(y, x);
            require(
                qadd(x, &xy) == yx,
                format!("x⊢(x⊢y) ≠ y⊢x at ({x}, {y})"),
            );
            require(
                &xy + &yx == x + y,
                format!("(x⊢y)+(y⊢x) ≠ x+y at ({x}, {y})"),
            );
            require(
                &xy - &yx == qadd(&(x - y), &(y - x)),
                format!("(x⊢y)−(y⊢x) ≠ (x−y)⊢(y−x) at ({x}, {y})"),
            );
            require(
                qadd(x, &yx) == qadd(&xy, x),
                format!("flexibility fails at ({x}, {y})"),
            );
        }
    }
    for x in &values {
        for y in &values {
            for p in &values {
                require(
                    qadd(&(x + p), &(y + p)) == qadd(x, y) + p,
                    format!("(x+p)⊢(y+p) ≠ (x⊢y)+p at ({x}, {y}, {p})"),
                );
            }
        }
    }
    Verdict {
        suite: "quasiadd".to_string(),
        params: chain_params(chain, &[("range", json!(range))]),
        checked,
        violations,
        elapsed: start.elapsed(),
    }
}

/// Closure of the chain under quasiaddition, plus the star-map convexity
/// identity star(x⊢y) = (2−τ)·star(x) + (τ−1)·star(y).
pub fn verify_closure(chain: &ChainSpec, range: i64) -> Verdict {
    let start = Instant::now();
    let values: Vec<GoldenRational> =
        (-range..=range).map(|n| point(chain, n).value).collect();
    let left_weight: GoldenRational = "2-τ".parse().unwrap();
    let right_weight: GoldenRational = "-1+τ".parse().unwrap();
    let mut checked = 0;
    let mut violations = Vec::new();
    for x in &values {
        for y in &values {
            checked += 2;
            let sum = qadd(x, y);
            match membership(chain, &sum) {
                Ok(true) => {}
                Ok(false) => violations.push(format!("{x} ⊢ {y} = {sum} leaves the chain")),
                Err(e) => violations.push(format!("{x} ⊢ {y}: {e}")),
            }
            let expected = &left_weight * &x.star() + &right_weight * &y.star();
            if sum.star() != expected {
                violations.push(format!("star convexity fails at ({x}, {y})"));
            }
        }
    }
    Verdict {
        suite: "closure".to_string(),
        params: chain_params(chain, &[("range", json!(range))]),
        checked,
        violations,
        elapsed: start.elapsed(),
    }
}

/// Sum rule p + q = n + m over all index pairs in [−range, range]².
pub fn verify_sum_rule(chain: &ChainSpec, range: i64) -> Verdict {
    let start = Instant::now();
    let spec = JordanSpec::new(chain.clone());
    let violations = check_sum_rule(&spec, -range, range);
    let side = (2 * range + 1) as u64;
    Verdict {
        suite: "sum-rule".to_string(),
        params: chain_params(chain, &[("range", json!(range))]),
        checked: side * side,
        violations: violations
            .iter()
            .map(|v| {
                format!(
                    "pair ({}, {}) produced indices ({}, {}) with mismatched sum",
                    v.pair.0, v.pair.1, v.outputs.0, v.outputs.1
                )
            })
            .collect(),
        elapsed: start.elapsed(),
    }
}

/// Abelian sub-window claim: every bracket over Ξ = [c, 1] vanishes.
pub fn verify_abelian(c_low: &BigRational, range: i64) -> Result<Verdict, LieError> {
    let start = Instant::now();
    let lo = GoldenRational::from_int(-range);
    let hi = GoldenRational::from_int(range);
    let abelian = check_abelian_subwindow(c_low, &lo, &hi)?;
    Ok(Verdict {
        suite: "abelian".to_string(),
        params: json!({
            "c": rational_to_string(c_low),
            "range": range,
        }),
        checked: 1,
        violations: if abelian {
            Vec::new()
        } else {
            vec![format!(
                "a nonzero bracket survives on the sub-window [{}, 1]",
                rational_to_string(c_low)
            )]
        },
        elapsed: start.elapsed(),
    })
}

/// Ideal claim: ambient brackets against F([c, 1]) stay inside it.
pub fn verify_ideal(c: &BigRational, range: i64) -> Result<Verdict, LieError> {
    let start = Instant::now();
    let lo = GoldenRational::from_int(-range);
    let hi = GoldenRational::from_int(range);
    let ideal = check_ideal(c, &lo, &hi)?;
    Ok(Verdict {
        suite: "ideal".to_string(),
        params: json!({
            "c": rational_to_string(c),
            "range": range,
        }),
        checked: 1,
        violations: if ideal {
            Vec::new()
        } else {
            vec![format!(
                "a bracket escapes the sub-algebra of [{}, 1]",
                rational_to_string(c)
            )]
        },
        elapsed: start.elapsed(),
    })
}

/// Non-unitality: the identity-element system must be infeasible.
pub fn verify_no_identity(
    chain: &ChainSpec,
    n_width: i64,
    m_width: i64,
) -> Result<Verdict, JordanError> {
    let start = Instant::now();
    let spec = JordanSpec::new(chain.clone());
    let infeasible = check_no_identity(&spec, n_width, m_width)?;
    Ok(Verdict {
        suite: "no-identity".to_string(),
        params: chain_params(chain, &[("N", json!(n_width)), ("M", json!(m_width))]),
        checked: 1,
        violations: if infeasible {
            Vec::new()
        } else {
            vec![format!(
                "an identity candidate supported on [-{n_width}, {n_width}] satisfies all \
                 constraints up to |n| ≤ {m_width}"
            )]
        },
        elapsed: start.elapsed(),
    })
}

/// Proper ideal: L₁ must stay outside the span of {L₀∘L_n}.
pub fn verify_proper_ideal(chain: &ChainSpec, n_width: i64) -> Result<Verdict, JordanError> {
    let start = Instant::now();
    let spec = JordanSpec::new(chain.clone());
    let proper = check_proper_ideal(&spec, n_width)?;
    Ok(Verdict {
        suite: "proper-ideal".to_string(),
        params: chain_params(chain, &[("N", json!(n_width))]),
        checked: 1,
        violations: if proper {
            Vec::new()
        } else {
            vec![format!(
                "L_1 lies in the span of the L_0-generated ideal at half-width {n_width}"
            )]
        },
        elapsed: start.elapsed(),
    })
}

/// Exhaustive truncated-axiom check for one window and mode.
pub fn verify_truncated_axioms(
    chain: &ChainSpec,
    half_width: i64,
    mode: TruncationMode,
) -> Result<Verdict, JordanError> {
    let start = Instant::now();
    let tspec = TruncationSpec::new(chain.clone(), half_width, mode)?;
    let report = check_truncated_axioms(&tspec);
    Ok(Verdict {
        suite: "truncated-axioms".to_string(),
        params: chain_params(
            chain,
            &[("N", json!(half_width)), ("mode", json!(mode.name()))],
        ),
        checked: report.pairs_checked,
        violations: report
            .witnesses
            .iter()
            .map(|w| {
                let axiom = match w.axiom {
                    AxiomKind::Commutativity => "commutativity",
                    AxiomKind::JordanIdentity => "jordan identity",
                };
                format!(
                    "{axiom} fails at ({}, {}): {} ≠ {}",
                    w.pair.0, w.pair.1, w.lhs, w.rhs
                )
            })
            .collect(),
        elapsed: start.elapsed(),
    })
}

/// Formula/window equivalence over all Dirichlet integers a + bτ with
/// |a|, |b| ≤ bound.
pub fn verify_chain_equivalence(chain: &ChainSpec, bound: i64) -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut violations = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            checked += 1;
            let x = GoldenRational::dirichlet(a, b);
            let by_window = chain.chi(&x.star());
            let by_formula = point(chain, b).value == x;
            if by_window != by_formula {
                violations.push(format!(
                    "{x}: window membership {by_window}, formula membership {by_formula}"
                ));
            }
        }
    }
    Verdict {
        suite: "chain-equivalence".to_string(),
        params: chain_params(chain, &[("bound", json!(bound))]),
        checked,
        violations,
        elapsed: start.elapsed(),
    }
}

/// Gap-word structure: the leading gap word is a factor of a substitution
/// iterate, and the A:B frequency ratio approaches τ.
pub fn verify_gap_word(
    chain: &ChainSpec,
    prefix_len: i64,
    max_depth: u32,
    freq_gaps: i64,
    tolerance: &BigRational,
) -> Result<Verdict, ChainError> {
    let start = Instant::now();
    let mut violations = Vec::new();

    let prefix = word_to_string(&gap_word(chain, 0, prefix_len)?);
    let contained = (0..=max_depth)
        .find(|&k| word_to_string(&substitution_word(k)).contains(&prefix));
    match contained {
        Some(_) => {}
        None => violations.push(format!(
            "the first {prefix_len} gap letters are not a factor of any substitution \
             iterate up to depth {max_depth}"
        )),
    }

    let long_word = gap_word(chain, 0, freq_gaps)?;
    let a_count = long_word.iter().filter(|&&l| l == Letter::A).count() as i64;
    let b_count = long_word.len() as i64 - a_count;
    // |a/b − τ| < tolerance, decided exactly: a/b − τ = (a − bτ)/b.
    let deviation = GoldenRational::new(a_count, -b_count, b_count);
    let within = deviation < GoldenRational::from_ratio(tolerance)
        && -&deviation < GoldenRational::from_ratio(tolerance);
    if !within {
        violations.push(format!(
            "frequency ratio {a_count}/{b_count} deviates from τ by at least {}",
            rational_to_string(tolerance)
        ));
    }

    Ok(Verdict {
        suite: "gap-word".to_string(),
        params: chain_params(
            chain,
            &[
                ("prefix", json!(prefix_len)),
                ("max-depth", json!(max_depth)),
                ("gaps", json!(freq_gaps)),
                ("tolerance", json!(rational_to_string(tolerance))),
            ],
        ),
        checked: 2,
        violations,
        elapsed: start.elapsed(),
    })
}
