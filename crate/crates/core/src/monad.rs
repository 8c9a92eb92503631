//! Linear monads `O(-1)^a → O^b → O(1)^c` on P³ and the invariants of their
//! cohomology sheaves.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::arith::Field;
use crate::error::{ComputeError, DatumError};
use crate::graded::{coker_hilbert_polynomial, dim_r, euler_chi_line, GradedMap, HilbertFit, HilbertPolynomial};
use crate::groebner::{buchberger, minors_ideal, GroebnerBasis, HilbertData, Ideal};
use crate::linalg::{Matrix, PolyMatrix};
use crate::poly::{Polynomial, ProjectivePoint, NVARS};

/// Twist window used to sample the `S_E` Hilbert function.
pub const S_MODULE_WINDOW: (i64, i64) = (0, 10);

#[derive(Clone, Debug, PartialEq)]
pub struct MonadDatum<F: Field> {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `b × a`, linear forms.
    pub alpha: PolyMatrix<F>,
    /// `c × b`, linear forms.
    pub beta: PolyMatrix<F>,
    pub context: F::Context,
}

impl<F: Field> MonadDatum<F> {
    pub fn new(
        a: usize,
        b: usize,
        c: usize,
        alpha: PolyMatrix<F>,
        beta: PolyMatrix<F>,
        context: F::Context,
    ) -> Result<Self, DatumError> {
        if (alpha.rows(), alpha.cols()) != (b, a) {
            return Err(DatumError::Shape(format!(
                "alpha is {}x{}, expected {b}x{a}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        if (beta.rows(), beta.cols()) != (c, b) {
            return Err(DatumError::Shape(format!("beta is {}x{}, expected {c}x{b}", beta.rows(), beta.cols())));
        }
        let alpha = alpha.with_expected_degree(1).map_err(|e| prefix("alpha", e))?;
        let beta = beta.with_expected_degree(1).map_err(|e| prefix("beta", e))?;
        Ok(MonadDatum { a, b, c, alpha, beta, context })
    }

    pub fn rank(&self) -> i64 {
        self.b as i64 - self.a as i64 - self.c as i64
    }

    /// `β` as the graded map `R^b → R(1)^c`.
    pub fn beta_map(&self) -> GradedMap<F> {
        GradedMap::new(vec![0; self.b], vec![1; self.c], self.beta.clone()).expect("validated")
    }

    /// `α` as the graded map `R(-1)^a → R^b`.
    pub fn alpha_map(&self) -> GradedMap<F> {
        GradedMap::new(vec![-1; self.a], vec![0; self.b], self.alpha.clone()).expect("validated")
    }

    /// The transposed complex `O(-1)^c → O^b → O(1)^a` as a datum.
    pub fn transposed(&self) -> MonadDatum<F> {
        MonadDatum {
            a: self.c,
            b: self.b,
            c: self.a,
            alpha: self.beta.transpose(),
            beta: self.alpha.transpose(),
            context: self.context.clone(),
        }
    }
}

fn prefix(name: &str, e: DatumError) -> DatumError {
    match e {
        DatumError::Degree(m) => DatumError::Degree(format!("{name}: {m}")),
        DatumError::Shape(m) => DatumError::Shape(format!("{name}: {m}")),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_complex: bool,
    pub alpha_generically_injective: bool,
    pub beta_fiberwise_surjective: bool,
    pub is_monad: bool,
}

pub fn verify_monad<F: Field>(m: &MonadDatum<F>) -> Result<VerificationReport, ComputeError> {
    let is_complex = m.beta.mul(&m.alpha)?.is_zero();
    let alpha_generically_injective = m.alpha.symbolic_rank() == m.a;
    let beta_fiberwise_surjective = if m.c == 0 {
        true
    } else if m.b < m.c {
        false
    } else {
        minors_ideal(&m.beta, m.c)?.is_empty_locus()
    };
    Ok(VerificationReport {
        is_complex,
        alpha_generically_injective,
        beta_fiberwise_surjective,
        is_monad: is_complex && alpha_generically_injective && beta_fiberwise_surjective,
    })
}

fn require_monad<F: Field>(m: &MonadDatum<F>) -> Result<VerificationReport, ComputeError> {
    let report = verify_monad(m)?;
    if !report.is_monad {
        let mut failed = Vec::new();
        if !report.is_complex {
            failed.push("beta*alpha != 0");
        }
        if !report.alpha_generically_injective {
            failed.push("alpha not generically injective");
        }
        if !report.beta_fiberwise_surjective {
            failed.push("beta not surjective on fibers");
        }
        return Err(ComputeError::NotAMonad(failed.join(", ")));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub rank: i64,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

/// Chern classes from `ch(E) = b - a·e^{-h} - c·e^{h}` via Newton's identities.
pub fn chern<F: Field>(m: &MonadDatum<F>) -> Result<ChernData, ComputeError> {
    let (a, b, c) = (m.a as i128, m.b as i128, m.c as i128);
    let c1 = a - c;
    let c2_num = c1 * c1 + (a + c);
    if c2_num % 2 != 0 {
        return Err(ComputeError::Integrity(format!("c2 = {c2_num}/2 is not an integer")));
    }
    let c2 = c2_num / 2;
    let c3_num = c1 - c1 * c1 * c1 + 3 * c1 * c2;
    if c3_num % 3 != 0 {
        return Err(ComputeError::Integrity(format!("c3 = {c3_num}/3 is not an integer")));
    }
    let narrow = |v: i128| i64::try_from(v).map_err(|_| ComputeError::Integrity("Chern class overflow".into()));
    Ok(ChernData { rank: narrow(b - a - c)?, c1: narrow(c1)?, c2: narrow(c2)?, c3: narrow(c3_num / 3)? })
}

/// `h^i(E(k))` for `k` in `[kmin, kmax]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub kmin: i64,
    pub kmax: i64,
    /// `h[i][k - kmin]`.
    pub h: [Vec<i64>; 4],
}

impl CohomologyTable {
    pub fn get(&self, i: usize, k: i64) -> Option<i64> {
        if k < self.kmin || k > self.kmax {
            return None;
        }
        self.h.get(i).map(|row| row[(k - self.kmin) as usize])
    }

    pub fn column(&self, k: i64) -> Option<[i64; 4]> {
        Some([self.get(0, k)?, self.get(1, k)?, self.get(2, k)?, self.get(3, k)?])
    }
}

/// The four ranks determining the cohomology of `E(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistRanks {
    pub beta_k_kernel: i64,
    pub beta_k_rank: i64,
    pub mu_t_rank: i64,
    pub nu_t_rank: i64,
}

fn twist_ranks<F: Field>(beta: &GradedMap<F>, beta_t: &GradedMap<F>, alpha_t: &GradedMap<F>, k: i64) -> TwistRanks {
    let t = -k - 4;
    let beta_k_rank = beta.graded_rank(k) as i64;
    TwistRanks {
        beta_k_kernel: beta.source_dim(k) - beta_k_rank,
        beta_k_rank,
        mu_t_rank: beta_t.graded_rank(t) as i64,
        nu_t_rank: alpha_t.graded_rank(t) as i64,
    }
}

fn column_from_ranks<F: Field>(m: &MonadDatum<F>, k: i64, r: TwistRanks) -> [i64; 4] {
    let (a, b, c) = (m.a as i64, m.b as i64, m.c as i64);
    let t = -k - 4;
    [
        r.beta_k_kernel - a * dim_r(k - 1),
        c * dim_r(k + 1) - r.beta_k_rank,
        a * dim_r(t + 1) - r.nu_t_rank,
        b * dim_r(t) - r.mu_t_rank - r.nu_t_rank,
    ]
}

fn cohomology_unchecked<F: Field>(m: &MonadDatum<F>, kmin: i64, kmax: i64) -> CohomologyTable {
    let beta = m.beta_map();
    let beta_t = GradedMap::new(vec![-1; m.c], vec![0; m.b], m.beta.transpose()).expect("validated");
    let alpha_t = s_module(m);
    let ks: Vec<i64> = (kmin..=kmax).collect();
    // twists are independent; a few scoped workers pull them in order
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(ks.len());
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<[i64; 4]>>> = ks.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&k) = ks.get(i) else { break };
                let col = column_from_ranks(m, k, twist_ranks(&beta, &beta_t, &alpha_t, k));
                *slots[i].lock().expect("slot lock") = Some(col);
            });
        }
    });
    let columns = slots.into_iter().map(|s| s.into_inner().expect("slot lock").expect("twist computed"));
    let mut h: [Vec<i64>; 4] = Default::default();
    for col in columns {
        for i in 0..4 {
            h[i].push(col[i]);
        }
    }
    CohomologyTable { kmin, kmax, h }
}

/// Cohomology table from four graded-piece ranks per twist.
pub fn cohomology_table<F: Field>(m: &MonadDatum<F>, kmin: i64, kmax: i64) -> Result<CohomologyTable, ComputeError> {
    if kmin > kmax {
        return Err(ComputeError::Integrity(format!("empty twist window [{kmin}, {kmax}]")));
    }
    require_monad(m)?;
    Ok(cohomology_unchecked(m, kmin, kmax))
}

/// `b·χ(O(k)) - a·χ(O(k-1)) - c·χ(O(k+1))`.
pub fn euler_characteristic<F: Field>(m: &MonadDatum<F>, k: i64) -> i64 {
    m.b as i64 * euler_chi_line(k) - m.a as i64 * euler_chi_line(k - 1) - m.c as i64 * euler_chi_line(k + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstantonReport {
    pub is_instanton: bool,
    pub charge: i64,
    pub c2: i64,
    pub charge_matches_c2: bool,
    pub c1_zero: bool,
    /// `h^0(E(-1)), h^1(E(-2)), h^2(E(-2)), h^3(E(-3))`.
    pub vanishings: [i64; 4],
    pub singular_dimension: i64,
}

pub fn is_instanton<F: Field>(m: &MonadDatum<F>) -> Result<InstantonReport, ComputeError> {
    require_monad(m)?;
    let table = cohomology_unchecked(m, -3, -1);
    let at = |i, k| table.get(i, k).expect("in window");
    let vanishings = [at(0, -1), at(1, -2), at(2, -2), at(3, -3)];
    let charge = at(1, -1);
    let ch = chern(m)?;
    let singular_dimension = locus_data(m)?.1.projective_dimension;
    let c1_zero = ch.c1 == 0;
    Ok(InstantonReport {
        is_instanton: vanishings.iter().all(|&v| v == 0) && singular_dimension <= 1 && c1_zero,
        charge,
        c2: ch.c2,
        charge_matches_c2: charge == ch.c2,
        c1_zero,
        vanishings,
        singular_dimension,
    })
}

/// The degeneracy ideal of `α` (maximal minors), its basis and Hilbert data.
/// For `a = 0` the ideal is the unit ideal.
fn locus_data<F: Field>(m: &MonadDatum<F>) -> Result<(Ideal<F>, HilbertData, GroebnerBasis<F>), ComputeError> {
    let ideal = if m.a == 0 {
        Ideal::new(vec![Polynomial::constant(F::one())])?
    } else if m.b < m.a {
        Ideal::new(Vec::new())?
    } else {
        minors_ideal(&m.alpha, m.a)?
    };
    let gb = buchberger(&ideal);
    let data = gb.hilbert_data();
    Ok((ideal, data, gb))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckedPoint<F: Field> {
    pub point: ProjectivePoint<F>,
    pub rank: usize,
    /// `rank < a`.
    pub degenerate: bool,
    /// Every basis element vanishes at the point.
    pub on_locus: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularLocusReport<F: Field> {
    pub minors: Ideal<F>,
    pub basis: GroebnerBasis<F>,
    pub hilbert: HilbertData,
    pub s_module_fit: HilbertFit,
    pub s_module_samples: Vec<(i64, i64)>,
    pub checked_points: Vec<CheckedPoint<F>>,
}

pub fn singular_locus<F: Field>(
    m: &MonadDatum<F>,
    points: &[ProjectivePoint<F>],
) -> Result<SingularLocusReport<F>, ComputeError> {
    require_monad(m)?;
    let (minors, hilbert, basis) = locus_data(m)?;
    let (s_module_fit, s_module_samples) = coker_hilbert_polynomial(&s_module(m), S_MODULE_WINDOW.0, S_MODULE_WINDOW.1)?;
    let mut checked_points = Vec::with_capacity(points.len());
    for p in points {
        let rank = m.alpha.evaluate(p)?.rank();
        let mut on_locus = true;
        for g in basis.elements() {
            if !g.try_evaluate(p)?.is_zero() {
                on_locus = false;
            }
        }
        checked_points.push(CheckedPoint { point: p.clone(), rank, degenerate: rank < m.a, on_locus });
    }
    Ok(SingularLocusReport { minors, basis, hilbert, s_module_fit, s_module_samples, checked_points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafClass {
    LocallyFree,
    Reflexive,
    TorsionFreeCandidate,
    HasTorsion,
}

impl SheafClass {
    pub fn from_dimension(d: i64) -> Self {
        match d {
            i64::MIN..=-1 => SheafClass::LocallyFree,
            0 => SheafClass::Reflexive,
            1 => SheafClass::TorsionFreeCandidate,
            _ => SheafClass::HasTorsion,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SheafClass::LocallyFree => "locally_free",
            SheafClass::Reflexive => "reflexive",
            SheafClass::TorsionFreeCandidate => "torsion_free_candidate",
            SheafClass::HasTorsion => "has_torsion",
        }
    }
}

pub fn classify<F: Field>(m: &MonadDatum<F>) -> Result<SheafClass, ComputeError> {
    require_monad(m)?;
    Ok(SheafClass::from_dimension(locus_data(m)?.1.projective_dimension))
}

/// `αᵀ : R^b → R(1)^a`; its cokernel carries the Hilbert function of `S_E`.
pub fn s_module<F: Field>(m: &MonadDatum<F>) -> GradedMap<F> {
    GradedMap::new(vec![0; m.b], vec![1; m.a], m.alpha.transpose()).expect("validated")
}

/// `C^∨ → B^∨ → A^∨` as graded maps `R(-1)^c → R^b → R(1)^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualComplex<F: Field> {
    pub beta_dual: GradedMap<F>,
    pub alpha_dual: GradedMap<F>,
}

impl<F: Field> DualComplex<F> {
    pub fn composition_is_zero(&self) -> Result<bool, DatumError> {
        Ok(self.alpha_dual.compose(&self.beta_dual)?.matrix().is_zero())
    }
}

pub fn dual_complex<F: Field>(m: &MonadDatum<F>) -> DualComplex<F> {
    DualComplex {
        beta_dual: GradedMap::new(vec![-1; m.c], vec![0; m.b], m.beta.transpose()).expect("validated"),
        alpha_dual: s_module(m),
    }
}

/// Dimension of the span of the entries of a one-column `α` among linear forms.
pub fn gamma_dimension<F: Field>(m: &MonadDatum<F>) -> Result<usize, DatumError> {
    if m.a != 1 {
        return Err(DatumError::Unsupported(format!("gamma dimension needs a = 1, got a = {}", m.a)));
    }
    let rows = (0..m.b)
        .map(|i| {
            let e = m.alpha.get(i, 0);
            (0..NVARS).map(|v| e.coeff(&crate::poly::Monomial::var(v))).collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows)?.rank())
}

pub const PURITY_CAVEAT: &str =
    "purity of the singular locus is checked only through the Hilbert polynomial; embedded points are not detected";
pub const QE_NOTE: &str = "Q_E is identified with Ext^2(S_E, O) and shares its Hilbert polynomial; it is not computed";
pub const COROLLARY_NOTE: &str =
    "charge 1: S_E is supported on a line, d = 1 and the double dual is trivial of charge 0";

#[derive(Clone, Debug, PartialEq)]
pub struct Rank2Report {
    pub applicable: bool,
    pub precondition_failures: Vec<String>,
    pub singular_dimension: Option<i64>,
    pub dimension_is_one: Option<bool>,
    pub s_module_fit: Option<HilbertFit>,
    pub s_module_samples: Vec<(i64, i64)>,
    /// Degree read from an `S_E` polynomial of the form `d·k + 2d`.
    pub d: Option<i64>,
    /// Charge of the double dual.
    pub c_prime: Option<i64>,
    pub corollary_check: Option<bool>,
    pub notes: Vec<String>,
    pub passed: bool,
}

pub fn rank2_theorem_report<F: Field>(m: &MonadDatum<F>) -> Result<Rank2Report, ComputeError> {
    let mut report = Rank2Report {
        applicable: false,
        precondition_failures: Vec::new(),
        singular_dimension: None,
        dimension_is_one: None,
        s_module_fit: None,
        s_module_samples: Vec::new(),
        d: None,
        c_prime: None,
        corollary_check: None,
        notes: vec![PURITY_CAVEAT.to_string(), QE_NOTE.to_string()],
        passed: false,
    };
    let fail = &mut report.precondition_failures;
    if m.rank() != 2 {
        fail.push(format!("rank is {}, not 2", m.rank()));
    }
    if m.a != m.c {
        fail.push(format!("a = {} differs from c = {}", m.a, m.c));
    }
    let verification = verify_monad(m)?;
    if !verification.is_monad {
        fail.push("datum is not a monad".into());
    }
    if !fail.is_empty() {
        return Ok(report);
    }
    let inst = is_instanton(m)?;
    if !inst.is_instanton {
        report.precondition_failures.push("not an instanton".into());
    }
    if inst.singular_dimension < 0 {
        report.precondition_failures.push("singular locus is empty".into());
    }
    if !report.precondition_failures.is_empty() {
        return Ok(report);
    }
    report.applicable = true;
    let dim = inst.singular_dimension;
    report.singular_dimension = Some(dim);
    report.dimension_is_one = Some(dim == 1);
    let (fit, samples) = coker_hilbert_polynomial(&s_module(m), S_MODULE_WINDOW.0, S_MODULE_WINDOW.1)?;
    report.d = fit.polynomial().and_then(HilbertPolynomial::as_rank0_form);
    report.s_module_fit = Some(fit);
    report.s_module_samples = samples;
    report.c_prime = report.d.map(|d| m.c as i64 - d);
    if m.c == 1 {
        report.corollary_check = Some(report.d == Some(1) && report.c_prime == Some(0));
        report.notes.push(COROLLARY_NOTE.to_string());
    }
    report.passed = dim == 1 && report.d.is_some() && report.corollary_check != Some(false);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    type Q = Rational;

    fn mat(rows: &[&[&str]]) -> PolyMatrix<Q> {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| Polynomial::parse(s, &()).unwrap()).collect()).collect())
            .unwrap()
    }

    fn monad(a: usize, b: usize, c: usize, alpha: &[&[&str]], beta: &[&[&str]]) -> MonadDatum<Q> {
        MonadDatum::new(a, b, c, mat(alpha), mat(beta), ()).unwrap()
    }

    fn charge_one() -> MonadDatum<Q> {
        monad(1, 5, 1, &[&["-x2"], &["x1"], &["0"], &["0"], &["x3"]], &[&["x1", "x2", "x3", "x4", "0"]])
    }

    fn null_correlation() -> MonadDatum<Q> {
        monad(1, 4, 1, &[&["-x2"], &["x1"], &["-x4"], &["x3"]], &[&["x1", "x2", "x3", "x4"]])
    }

    fn line_singular() -> MonadDatum<Q> {
        monad(1, 4, 1, &[&["-x2"], &["x1"], &["0"], &["0"]], &[&["x1", "x2", "x3", "x4"]])
    }

    fn point(coords: [i64; 4]) -> ProjectivePoint<Q> {
        ProjectivePoint::new(coords.map(|c| Q::from_integer(c.into()))).unwrap()
    }

    #[test]
    fn validation() {
        assert!(MonadDatum::new(1, 4, 1, mat(&[&["x1"], &["x2"], &["x3"]]), mat(&[&["x1", "x2", "x3"]]), ()).is_err());
        let err = MonadDatum::new(1, 1, 0, mat(&[&["x1 + x2^2"]]), PolyMatrix::zeros(0, 1), ()).unwrap_err();
        assert!(matches!(err, DatumError::Degree(_)));
    }

    #[test]
    fn verification_flags() {
        assert!(verify_monad(&charge_one()).unwrap().is_monad);
        let m = charge_one();
        let bad = MonadDatum::new(1, 5, 1, m.beta.transpose(), m.beta.clone(), ()).unwrap();
        let r = verify_monad(&bad).unwrap();
        assert!(!r.is_complex && !r.is_monad);
        // β with a common zero is not surjective on fibers
        let degenerate = monad(1, 4, 1, &[&["-x2"], &["x1"], &["0"], &["0"]], &[&["x1", "x2", "x3", "0"]]);
        assert!(!verify_monad(&degenerate).unwrap().beta_fiberwise_surjective);
        assert!(matches!(cohomology_table(&bad, 0, 0), Err(ComputeError::NotAMonad(_))));
    }

    #[test]
    fn chern_classes() {
        let c = |a, b, c| chern(&MonadDatum::<Q>::new(a, b, c, PolyMatrix::zeros(b, a), PolyMatrix::zeros(c, b), ()).unwrap()).unwrap();
        assert_eq!(c(1, 5, 1), ChernData { rank: 3, c1: 0, c2: 1, c3: 0 });
        assert_eq!(c(2, 7, 2), ChernData { rank: 3, c1: 0, c2: 2, c3: 0 });
        assert_eq!(c(0, 3, 0), ChernData { rank: 3, c1: 0, c2: 0, c3: 0 });
        // Ω(1): c(E) = 1/(1+h)... c1 = -1, c2 = 1, c3 = -1
        assert_eq!(c(0, 4, 1), ChernData { rank: 3, c1: -1, c2: 1, c3: -1 });
    }

    #[test]
    fn charge_one_table() {
        let t = cohomology_table(&charge_one(), -6, 4).unwrap();
        assert_eq!(t.column(-1), Some([0, 1, 0, 0]));
        assert_eq!(t.get(0, 0), Some(1));
        assert_eq!((t.get(1, -2), t.get(2, -2), t.get(3, -3)), (Some(0), Some(0), Some(0)));
        for k in -6..=4 {
            let [h0, h1, h2, h3] = t.column(k).unwrap();
            assert_eq!(h0 - h1 + h2 - h3, euler_characteristic(&charge_one(), k), "k = {k}");
        }
    }

    #[test]
    fn null_correlation_table_is_serre_symmetric() {
        let m = null_correlation();
        let t = cohomology_table(&m, -6, 2).unwrap();
        assert_eq!(t.column(-1), Some([0, 1, 0, 0]));
        assert_eq!(t.column(-2), Some([0, 0, 0, 0]));
        for k in -2..=2 {
            for i in 0..4 {
                assert_eq!(t.get(i, k), t.get(3 - i, -4 - k), "i = {i}, k = {k}");
            }
        }
    }

    #[test]
    fn trivial_bundle_is_bott() {
        let m = MonadDatum::<Q>::new(0, 3, 0, PolyMatrix::zeros(3, 0), PolyMatrix::zeros(0, 3), ()).unwrap();
        let t = cohomology_table(&m, -3, 0).unwrap();
        for k in -3..=0 {
            assert_eq!(t.column(k), Some([3 * dim_r(k), 0, 0, 3 * dim_r(-k - 4)]));
        }
        assert_eq!(classify(&m).unwrap(), SheafClass::LocallyFree);
        let inst = is_instanton(&m).unwrap();
        assert!(inst.is_instanton && inst.charge == 0);
    }

    #[test]
    fn instanton_reports() {
        let r = is_instanton(&charge_one()).unwrap();
        assert!(r.is_instanton && r.charge == 1 && r.charge_matches_c2);
        let r = is_instanton(&null_correlation()).unwrap();
        assert!(r.is_instanton && r.charge == 1);
        // E = ker(O^4 → O(1)) has c1 = -1
        let omega = monad(0, 4, 1, &[&[], &[], &[], &[]], &[&["x1", "x2", "x3", "x4"]]);
        let r = is_instanton(&omega).unwrap();
        assert!(!r.is_instanton && !r.c1_zero);
    }

    #[test]
    fn singular_loci() {
        let r = singular_locus(&charge_one(), &[point([0, 0, 0, 1]), point([1, 0, 0, 0])]).unwrap();
        assert_eq!((r.hilbert.projective_dimension, r.hilbert.degree), (0, Some(1)));
        assert_eq!(r.s_module_fit, HilbertFit::Stable(HilbertPolynomial::from_ints(&[1])));
        assert!(r.checked_points[0].degenerate && r.checked_points[0].on_locus && r.checked_points[0].rank == 0);
        assert!(!r.checked_points[1].degenerate && !r.checked_points[1].on_locus);
        let r = singular_locus(&line_singular(), &[]).unwrap();
        assert_eq!((r.hilbert.projective_dimension, r.hilbert.degree), (1, Some(1)));
        assert_eq!(r.s_module_fit, HilbertFit::Stable(HilbertPolynomial::from_ints(&[2, 1])));
        assert_eq!(singular_locus(&null_correlation(), &[]).unwrap().hilbert.projective_dimension, -1);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&null_correlation()).unwrap(), SheafClass::LocallyFree);
        assert_eq!(classify(&charge_one()).unwrap(), SheafClass::Reflexive);
        assert_eq!(classify(&line_singular()).unwrap(), SheafClass::TorsionFreeCandidate);
        assert_eq!(SheafClass::from_dimension(2), SheafClass::HasTorsion);
    }

    #[test]
    fn duals() {
        let m = charge_one();
        let d = dual_complex(&m);
        assert_eq!((d.beta_dual.matrix().rows(), d.beta_dual.matrix().cols()), (5, 1));
        assert_eq!((d.alpha_dual.matrix().rows(), d.alpha_dual.matrix().cols()), (1, 5));
        assert_eq!(d.beta_dual.source_twists(), &[-1]);
        assert_eq!(d.alpha_dual.target_twists(), &[1]);
        assert!(d.composition_is_zero().unwrap());
        assert_eq!(m.transposed().transposed(), m);
        assert!(dual_complex(&line_singular()).composition_is_zero().unwrap());
        let z = s_module(&MonadDatum::<Q>::new(0, 2, 0, PolyMatrix::zeros(2, 0), PolyMatrix::zeros(0, 2), ()).unwrap());
        assert_eq!(z.target_dim(3), 0);
    }

    #[test]
    fn gamma() {
        assert_eq!(gamma_dimension(&charge_one()).unwrap(), 3);
        assert_eq!(gamma_dimension(&line_singular()).unwrap(), 2);
        let prop = MonadDatum::new(1, 5, 0, mat(&[&["x1"], &["2*x1"], &["0"], &["0"], &["x1"]]), PolyMatrix::zeros(0, 5), ())
            .unwrap();
        assert_eq!(gamma_dimension(&prop).unwrap(), 1);
        let wide = MonadDatum::<Q>::new(2, 2, 0, PolyMatrix::zeros(2, 2), PolyMatrix::zeros(0, 2), ()).unwrap();
        assert!(gamma_dimension(&wide).is_err());
    }

    #[test]
    fn rank_two_suite() {
        let r = rank2_theorem_report(&line_singular()).unwrap();
        assert!(r.applicable && r.passed);
        assert_eq!((r.singular_dimension, r.d, r.c_prime, r.corollary_check), (Some(1), Some(1), Some(0), Some(true)));
        let r = rank2_theorem_report(&null_correlation()).unwrap();
        assert!(!r.applicable && !r.passed);
        assert!(r.precondition_failures.iter().any(|f| f.contains("empty")));
        assert!(!rank2_theorem_report(&charge_one()).unwrap().applicable);
    }
}
