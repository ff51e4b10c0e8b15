//! The three Lie-type products on Fibonacci chains: the quasicrystal Lie
//! algebra on the defect chain, the integer-indexed aperiodic Witt algebra,
//! and its Virasoro central extension.
//!
//! The quasicrystal Lie bracket [L_x, L_y] = (y−x)·χ_Ω(x*+y*)·L_{x+y} uses a
//! closed window (canonically Ω = [0, 1], whose model set is F(1,0) with the
//! origin adjoined — one defect tile of length 1). The Witt bracket
//! [L_n, L_m] = (n−m)·χ_Ω(F(n)*+F(m)*)·L_{n+m} uses the half-open window of
//! the chain and is a Lie algebra exactly when (−1+α+β)(α+β) ≥ 0; the
//! palindrome chain α = 1/2 fails, and the verifiers can exhibit the failing
//! triples when a spec is built in falsification mode.

use crate::algebra::{bilinear_extend, AlgebraElement, BasisKey};
use crate::chain::{point, ChainSpec};
use crate::golden::GoldenRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(
        "chain window ({lo}, {hi}] violates (−1+α+β)(α+β) ≥ 0; \
         use falsification mode to probe it"
    )]
    IncompatibleChain { lo: GoldenRational, hi: GoldenRational },
    #[error("closed window [{lo}, {hi}] needs lo < hi and lo·hi ≥ 0")]
    InvalidWindow { lo: GoldenRational, hi: GoldenRational },
    #[error("{0} is not a generator of this algebra")]
    NotInChain(GoldenRational),
    #[error("generator {0} does not belong to the {1} algebra")]
    ForeignKey(String, &'static str),
}

/// Sign convention for the Virasoro central term (1/12)·k(k²−1)·δ_{n,−m}·C.
///
/// The published commutator tables apply the cubic to the second argument,
/// while the displayed formula applies it to the first; the two differ by a
/// sign and both are antisymmetric. `Table` reproduces the tables verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CentralSign {
    #[default]
    Table,
    Equation,
}

impl CentralSign {
    pub fn name(&self) -> &'static str {
        match self {
            CentralSign::Table => "table",
            CentralSign::Equation => "equation",
        }
    }
}

/// A closed acceptance window [lo, hi].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWindow {
    lo: GoldenRational,
    hi: GoldenRational,
}

impl ClosedWindow {
    /// Requires lo < hi.
    pub fn new(lo: GoldenRational, hi: GoldenRational) -> Result<Self, LieError> {
        if lo >= hi {
            return Err(LieError::InvalidWindow { lo, hi });
        }
        Ok(ClosedWindow { lo, hi })
    }

    /// The canonical defect-chain window [0, 1].
    pub fn unit() -> Self {
        ClosedWindow {
            lo: GoldenRational::zero(),
            hi: GoldenRational::one(),
        }
    }

    pub fn bounds(&self) -> (&GoldenRational, &GoldenRational) {
        (&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &GoldenRational) -> bool {
        *x >= self.lo && *x <= self.hi
    }
}

/// One of the three Lie-type algebras, with everything its bracket needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieAlgebraSpec {
    QcLie {
        window: ClosedWindow,
    },
    Witt {
        chain: ChainSpec,
        falsify: bool,
    },
    Virasoro {
        chain: ChainSpec,
        central_sign: CentralSign,
        falsify: bool,
    },
}

impl LieAlgebraSpec {
    /// Quasicrystal Lie algebra on a closed window [a, b] with ab ≥ 0.
    pub fn qclie(lo: GoldenRational, hi: GoldenRational) -> Result<Self, LieError> {
        if (&lo * &hi).sign().is_lt() {
            return Err(LieError::InvalidWindow { lo, hi });
        }
        Ok(LieAlgebraSpec::QcLie {
            window: ClosedWindow::new(lo, hi)?,
        })
    }

    /// The canonical §-defect construction: window [0, 1].
    pub fn qclie_defect() -> Self {
        LieAlgebraSpec::QcLie {
            window: ClosedWindow::unit(),
        }
    }

    /// Aperiodic Witt algebra; rejects chains whose window fails the
    /// validity predicate.
    pub fn witt(chain: ChainSpec) -> Result<Self, LieError> {
        if !chain.is_lie_compatible() {
            let (lo, hi) = chain.window();
            return Err(LieError::IncompatibleChain {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        Ok(LieAlgebraSpec::Witt {
            chain,
            falsify: false,
        })
    }

    /// Constructs a Witt spec without the validity check, for counterexample
    /// search on incompatible chains such as the palindrome chain.
    pub fn witt_falsification(chain: ChainSpec) -> Self {
        LieAlgebraSpec::Witt {
            chain,
            falsify: true,
        }
    }

    /// Virasoro extension of the aperiodic Witt algebra.
    pub fn virasoro(chain: ChainSpec, central_sign: CentralSign) -> Result<Self, LieError> {
        if !chain.is_lie_compatible() {
            let (lo, hi) = chain.window();
            return Err(LieError::IncompatibleChain {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        Ok(LieAlgebraSpec::Virasoro {
            chain,
            central_sign,
            falsify: false,
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            LieAlgebraSpec::QcLie { .. } => "qclie",
            LieAlgebraSpec::Witt { .. } => "witt",
            LieAlgebraSpec::Virasoro { .. } => "virasoro",
        }
    }
}

/// Enumerates {x ∈ Z[τ] : x* ∈ window, lo ≤ x ≤ hi} in ascending order.
///
/// With x = p + qτ one has x − x* = q√5, so q is confined to an integer
/// interval, and for each q the window pins p to at most a couple of values.
pub fn model_set_points(
    window: &ClosedWindow,
    lo: &GoldenRational,
    hi: &GoldenRational,
) -> Vec<GoldenRational> {
    let sqrt5 = GoldenRational::dirichlet(-1, 2);
    let inv_sqrt5 = sqrt5.inv().expect("√5 is nonzero");
    let q_lo = ((lo - &window.hi) * &inv_sqrt5).ceil();
    let q_hi = ((hi - &window.lo) * &inv_sqrt5).floor();
    let q_lo = i64::try_from(&q_lo).expect("model-set range too large");
    let q_hi = i64::try_from(&q_hi).expect("model-set range too large");

    let mut points = Vec::new();
    for q in q_lo..=q_hi {
        // window.lo ≤ p + q(1−τ) ≤ window.hi
        let star_offset = GoldenRational::dirichlet(q, -q);
        let p_lo = (&window.lo - &star_offset).ceil();
        let p_hi = (&window.hi - &star_offset).floor();
        let p_lo = i64::try_from(&p_lo).expect("model-set range too large");
        let p_hi = i64::try_from(&p_hi).expect("model-set range too large");
        for p in p_lo..=p_hi {
            let x = GoldenRational::dirichlet(p, q);
            if &x >= lo && &x <= hi && window.contains(&x.star()) {
                points.push(x);
            }
        }
    }
    points.sort();
    points
}

/// Coordinates of the defect chain F(1,0) ∪ {0} inside [lo, hi], ascending.
/// The pair (0, 1) bounds the unique tile of length 1.
pub fn defect_chain_points(lo: &GoldenRational, hi: &GoldenRational) -> Vec<GoldenRational> {
    model_set_points(&ClosedWindow::unit(), lo, hi)
}

/// Quasicrystal Lie bracket [L_x, L_y] = (y−x)·χ_Ω(x*+y*)·L_{x+y} over a
/// closed window; both arguments must be generators, i.e. members of the
/// window's model set.
pub fn qclie_bracket(
    window: &ClosedWindow,
    x: &GoldenRational,
    y: &GoldenRational,
) -> Result<AlgebraElement, LieError> {
    for value in [x, y] {
        if !value.is_dirichlet_integer() || !window.contains(&value.star()) {
            return Err(LieError::NotInChain(value.clone()));
        }
    }
    if x == y {
        return Ok(AlgebraElement::zero());
    }
    let star_sum = x.star() + y.star();
    if !window.contains(&star_sum) {
        return Ok(AlgebraElement::zero());
    }
    Ok(AlgebraElement::term(BasisKey::point(x + y), y - x))
}

/// Aperiodic Witt bracket [L_n, L_m] = (n−m)·χ_Ω(F(n)*+F(m)*)·L_{n+m}.
pub fn witt_bracket(chain: &ChainSpec, n: i64, m: i64) -> AlgebraElement {
    if n == m {
        return AlgebraElement::zero();
    }
    let star_sum = point(chain, n).value.star() + point(chain, m).value.star();
    if !chain.chi(&star_sum) {
        return AlgebraElement::zero();
    }
    AlgebraElement::term(BasisKey::index(n + m), GoldenRational::from_int(n - m))
}

/// Coefficient of C in [L_n, L_m]: (1/12)·k(k²−1)·δ_{n,−m} with k the second
/// argument under the table convention and the first under the equation one.
pub fn central_coefficient(sign: CentralSign, n: i64, m: i64) -> GoldenRational {
    if n + m != 0 {
        return GoldenRational::zero();
    }
    let k = BigInt::from(match sign {
        CentralSign::Table => m,
        CentralSign::Equation => n,
    });
    GoldenRational::new(&k * &k * &k - &k, 0, 12)
}

/// Virasoro bracket: the Witt term plus the central term.
pub fn virasoro_bracket(
    chain: &ChainSpec,
    sign: CentralSign,
    n: i64,
    m: i64,
) -> AlgebraElement {
    witt_bracket(chain, n, m).add(&AlgebraElement::term(
        BasisKey::Central,
        central_coefficient(sign, n, m),
    ))
}

/// The bracket of `spec` on a pair of generators. [L_n, C] = 0 in the
/// Virasoro algebra; keys of the wrong kind are rejected.
pub fn bracket_on_basis(
    spec: &LieAlgebraSpec,
    a: &BasisKey,
    b: &BasisKey,
) -> Result<AlgebraElement, LieError> {
    match spec {
        LieAlgebraSpec::QcLie { window } => match (a, b) {
            (BasisKey::Point(x), BasisKey::Point(y)) => qclie_bracket(window, x, y),
            _ => Err(LieError::ForeignKey(
                foreign(a, b).to_string(),
                spec.kind_name(),
            )),
        },
        LieAlgebraSpec::Witt { chain, .. } => match (a, b) {
            (BasisKey::ChainIndex(n), BasisKey::ChainIndex(m)) => {
                Ok(witt_bracket(chain, *n, *m))
            }
            _ => Err(LieError::ForeignKey(
                foreign(a, b).to_string(),
                spec.kind_name(),
            )),
        },
        LieAlgebraSpec::Virasoro {
            chain,
            central_sign,
            ..
        } => match (a, b) {
            (BasisKey::ChainIndex(n), BasisKey::ChainIndex(m)) => {
                Ok(virasoro_bracket(chain, *central_sign, *n, *m))
            }
            (BasisKey::Central, BasisKey::Central | BasisKey::ChainIndex(_))
            | (BasisKey::ChainIndex(_), BasisKey::Central) => Ok(AlgebraElement::zero()),
            _ => Err(LieError::ForeignKey(
                foreign(a, b).to_string(),
                spec.kind_name(),
            )),
        },
    }
}

fn foreign<'k>(a: &'k BasisKey, b: &'k BasisKey) -> &'k BasisKey {
    match a {
        BasisKey::ChainIndex(_) | BasisKey::Central => b,
        _ => a,
    }
}

/// Bilinear extension of the bracket to whole elements.
pub fn bracket_elements(
    spec: &LieAlgebraSpec,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<AlgebraElement, LieError> {
    bilinear_extend(|x, y| bracket_on_basis(spec, x, y), a, b)
}

/// The generators a verifier ranges over: integer indices lo..=hi for
/// Witt/Virasoro, model-set points with coordinates in [lo, hi] for QcLie.
pub fn generator_keys(spec: &LieAlgebraSpec, lo: i64, hi: i64) -> Vec<BasisKey> {
    match spec {
        LieAlgebraSpec::QcLie { window } => model_set_points(
            window,
            &GoldenRational::from_int(lo),
            &GoldenRational::from_int(hi),
        )
        .into_iter()
        .map(BasisKey::point)
        .collect(),
        _ => (lo..=hi).map(BasisKey::index).collect(),
    }
}

/// A pair of generators whose brackets failed an identity, with the nonzero
/// residual element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub left: BasisKey,
    pub right: BasisKey,
    pub residual: AlgebraElement,
}

/// A triple violating the Jacobi identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleViolation {
    pub keys: [BasisKey; 3],
    pub residual: AlgebraElement,
}

/// Evaluates [a, b] + [b, a] over every generator pair in range; the result
/// is the list of violations, empty for valid specs.
pub fn check_antisymmetry(
    spec: &LieAlgebraSpec,
    lo: i64,
    hi: i64,
) -> Result<Vec<PairViolation>, LieError> {
    let keys = generator_keys(spec, lo, hi);
    let mut violations = Vec::new();
    for a in &keys {
        for b in &keys {
            let residual = bracket_on_basis(spec, a, b)?.add(&bracket_on_basis(spec, b, a)?);
            if !residual.is_zero() {
                violations.push(PairViolation {
                    left: a.clone(),
                    right: b.clone(),
                    residual,
                });
            }
        }
    }
    Ok(violations)
}

/// Evaluates [a,[b,c]] + [b,[c,a]] + [c,[a,b]] over every generator triple
/// in range. Valid specs return no violations; the palindrome chain in
/// falsification mode returns the triples that break the identity.
pub fn check_jacobi(
    spec: &LieAlgebraSpec,
    lo: i64,
    hi: i64,
) -> Result<Vec<TripleViolation>, LieError> {
    let keys = generator_keys(spec, lo, hi);
    let mut violations = Vec::new();
    for a in &keys {
        let ea = AlgebraElement::basis(a.clone());
        for b in &keys {
            let eb = AlgebraElement::basis(b.clone());
            for c in &keys {
                let ec = AlgebraElement::basis(c.clone());
                let residual = bracket_elements(spec, &ea, &bracket_on_basis(spec, b, c)?)?
                    .add(&bracket_elements(spec, &eb, &bracket_on_basis(spec, c, a)?)?)
                    .add(&bracket_elements(spec, &ec, &bracket_on_basis(spec, a, b)?)?);
                if !residual.is_zero() {
                    violations.push(TripleViolation {
                        keys: [a.clone(), b.clone(), c.clone()],
                        residual,
                    });
                }
            }
        }
    }
    Ok(violations)
}

/// True iff the quasicrystal Lie algebra of the sub-window Ξ = [c_low, 1] is
/// abelian on all generators with coordinates in [lo, hi]. Tautologically
/// true for c_low ≥ 1/2.
pub fn check_abelian_subwindow(
    c_low: &BigRational,
    lo: &GoldenRational,
    hi: &GoldenRational,
) -> Result<bool, LieError> {
    let window = ClosedWindow::new(GoldenRational::from_ratio(c_low), GoldenRational::one())?;
    let points = model_set_points(&window, lo, hi);
    for x in &points {
        for y in &points {
            if !qclie_bracket(&window, x, y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff brackets [L_x, L_y] of the ambient algebra (window Ω = [0, 1])
/// with x ∈ F(Ξ), Ξ = [c, 1], and y ∈ F(Ω) land in the span of the F(Ξ)
/// generators, for all coordinates in [lo, hi] — the ideal property at desk
/// scale.
pub fn check_ideal(
    c: &BigRational,
    lo: &GoldenRational,
    hi: &GoldenRational,
) -> Result<bool, LieError> {
    let omega = ClosedWindow::unit();
    let xi = ClosedWindow::new(GoldenRational::from_ratio(c), GoldenRational::one())?;
    let sub = model_set_points(&xi, lo, hi);
    let ambient = model_set_points(&omega, lo, hi);
    for x in &sub {
        for y in &ambient {
            let bracket = qclie_bracket(&omega, x, y)?;
            for (key, _) in bracket.iter() {
                let BasisKey::Point(z) = key else {
                    unreachable!("qclie brackets only produce point generators");
                };
                if !xi.contains(&z.star()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn g(s: &str) -> GoldenRational {
        s.parse().unwrap()
    }

    fn chain(alpha_num: i64, alpha_den: i64) -> ChainSpec {
        ChainSpec::new(BigRational::new(alpha_num.into(), alpha_den.into()), 0)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn defect_chain_lists_published_coordinates() {
        let points = defect_chain_points(&g("-2-3τ"), &g("3+4τ"));
        let rendered: Vec<String> = points.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            rendered,
            ["-1-3τ", "-1-2τ", "-τ", "0", "1", "1+τ", "2+2τ", "2+3τ", "3+4τ"]
        );
        // Exactly one gap of length 1 (the defect), all others τ or τ².
        let mut unit_gaps = 0;
        for pair in points.windows(2) {
            let gap = &pair[1] - &pair[0];
            if gap == g("1") {
                unit_gaps += 1;
            } else {
                assert!(gap == g("τ") || gap == g("1+τ"), "unexpected gap {gap}");
            }
        }
        assert_eq!(unit_gaps, 1);
    }

    #[test]
    fn qclie_bracket_matches_published_cells() {
        let window = ClosedWindow::unit();
        let entry = qclie_bracket(&window, &g("-τ"), &g("1+τ")).unwrap();
        assert_eq!(entry.to_string(), "(1+2τ)L_{1}");
        assert!(qclie_bracket(&window, &g("1"), &g("1+τ")).unwrap().is_zero());
        let scaling = qclie_bracket(&window, &g("0"), &g("2+3τ")).unwrap();
        assert_eq!(scaling.to_string(), "(2+3τ)L_{2+3τ}");
        assert!(matches!(
            qclie_bracket(&window, &g("τ"), &g("1")),
            Err(LieError::NotInChain(_))
        ));
    }

    #[test]
    fn witt_bracket_matches_published_cells() {
        let f00 = chain(0, 1);
        assert_eq!(witt_bracket(&f00, -1, 2).to_string(), "-3L_{1}");
        let f10 = chain(1, 1);
        for n in 0..=7 {
            assert!(witt_bracket(&f10, 0, n).is_zero());
        }
        assert_eq!(witt_bracket(&f10, 2, 3).to_string(), "-L_{5}");
    }

    #[test]
    fn witt_rejects_palindrome_chain_without_falsification() {
        assert!(matches!(
            LieAlgebraSpec::witt(chain(1, 2)),
            Err(LieError::IncompatibleChain { .. })
        ));
        let spec = LieAlgebraSpec::witt_falsification(chain(1, 2));
        assert_eq!(spec.kind_name(), "witt");
    }

    #[test]
    fn virasoro_central_terms_follow_both_conventions() {
        let f00 = chain(0, 1);
        let table = virasoro_bracket(&f00, CentralSign::Table, -3, 3);
        assert_eq!(table.to_string(), "2C");
        let equation = virasoro_bracket(&f00, CentralSign::Equation, -2, 2);
        assert_eq!(equation.to_string(), "(-1/2)C");
        let f10 = chain(1, 1);
        let mixed = virasoro_bracket(&f10, CentralSign::Table, -2, 2);
        assert_eq!(mixed.to_string(), "(1/2)C-4L_{0}");
        // [L_n, C] = 0 through the element bracket.
        let spec = LieAlgebraSpec::virasoro(f00, CentralSign::Table).unwrap();
        let central = AlgebraElement::basis(BasisKey::Central);
        for n in -4..=4 {
            let ln = AlgebraElement::basis(BasisKey::index(n));
            assert!(bracket_elements(&spec, &ln, &central).unwrap().is_zero());
            assert!(bracket_elements(&spec, &central, &ln).unwrap().is_zero());
        }
    }

    #[test]
    fn virasoro_reduces_to_witt_without_central() {
        let f10 = chain(1, 1);
        for sign in [CentralSign::Table, CentralSign::Equation] {
            for n in -6..=6 {
                for m in -6..=6 {
                    assert_eq!(
                        virasoro_bracket(&f10, sign, n, m).without_central(),
                        witt_bracket(&f10, n, m)
                    );
                }
            }
        }
    }

    #[test]
    fn antisymmetry_holds_on_valid_specs() {
        let witt = LieAlgebraSpec::witt(chain(1, 1)).unwrap();
        assert!(check_antisymmetry(&witt, -8, 8).unwrap().is_empty());
        let qclie = LieAlgebraSpec::qclie_defect();
        assert!(check_antisymmetry(&qclie, -6, 6).unwrap().is_empty());
        for sign in [CentralSign::Table, CentralSign::Equation] {
            let virasoro = LieAlgebraSpec::virasoro(chain(0, 1), sign).unwrap();
            assert!(check_antisymmetry(&virasoro, -6, 6).unwrap().is_empty());
        }
    }

    #[test]
    fn jacobi_holds_for_compatible_chains_and_fails_for_palindrome() {
        let witt0 = LieAlgebraSpec::witt(chain(0, 1)).unwrap();
        assert!(check_jacobi(&witt0, -6, 6).unwrap().is_empty());
        let qclie = LieAlgebraSpec::qclie_defect();
        assert!(check_jacobi(&qclie, -5, 5).unwrap().is_empty());

        let palindrome = LieAlgebraSpec::witt_falsification(chain(1, 2));
        let violations = check_jacobi(&palindrome, -4, 4).unwrap();
        assert!(!violations.is_empty());
        // Hand-checked counterexample: J(L_1, L_3, L_2) = −4L_6.
        let witness = violations
            .iter()
            .find(|v| {
                v.keys
                    == [BasisKey::index(1), BasisKey::index(3), BasisKey::index(2)]
            })
            .expect("the hand-checked triple is reported");
        assert_eq!(witness.residual.to_string(), "-4L_{6}");
    }

    #[test]
    fn abelian_threshold_sits_at_one_half() {
        let lo = g("-10");
        let hi = g("10");
        assert!(check_abelian_subwindow(&ratio(1, 2), &lo, &hi).unwrap());
        assert!(check_abelian_subwindow(&ratio(3, 5), &lo, &hi).unwrap());
        assert!(!check_abelian_subwindow(&ratio(1, 10), &lo, &hi).unwrap());
    }

    #[test]
    fn subwindow_algebras_are_ideals() {
        let lo = g("-12");
        let hi = g("12");
        assert!(check_ideal(&ratio(1, 4), &lo, &hi).unwrap());
        assert!(check_ideal(&ratio(3, 4), &lo, &hi).unwrap());
    }

    #[test]
    fn brackets_are_single_term_with_summed_key() {
        let f10 = chain(1, 1);
        for n in -10..=10 {
            for m in -10..=10 {
                let bracket = witt_bracket(&f10, n, m);
                assert!(bracket.len() <= 1);
                if let Some((key, coeff)) = bracket.iter().next() {
                    assert_eq!(*key, BasisKey::index(n + m));
                    assert!(coeff.is_integer());
                }
            }
        }
        let window = ClosedWindow::unit();
        let points = defect_chain_points(&g("-8"), &g("8"));
        for x in &points {
            for y in &points {
                let bracket = qclie_bracket(&window, x, y).unwrap();
                assert!(bracket.len() <= 1);
                if let Some((key, coeff)) = bracket.iter().next() {
                    assert_eq!(*key, BasisKey::point(x + y));
                    assert!(coeff.is_dirichlet_integer());
                }
            }
        }
    }
}
