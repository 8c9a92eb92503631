//! Rank-0 instantons given by a resolution
//! `0 → O(-1)^d →σ O^{2d} →τ O(1)^d → Z → 0`, and their duals.

use serde::Serialize;

use crate::arith::{Field, Rational};
use crate::error::{ComputeError, DatumError};
use crate::graded::{coker_hilbert_polynomial, GradedMap, HilbertFit, HilbertPolynomial};
use crate::groebner::{buchberger, minors_ideal, GroebnerBasis, HilbertData};
use crate::linalg::PolyMatrix;
use crate::monad::S_MODULE_WINDOW;

pub const RANK0_PURITY_CAVEAT: &str =
    "purity of dimension is not decided; only the dimension of the support is checked";
pub const ISOMORPHISM_CAVEAT: &str = "isomorphism is not decided; only invariants are compared";

#[derive(Clone, Debug, PartialEq)]
pub struct Rank0Datum<F: Field> {
    pub d: usize,
    /// `2d × d`.
    pub sigma: PolyMatrix<F>,
    /// `d × 2d`.
    pub tau: PolyMatrix<F>,
    pub context: F::Context,
}

impl<F: Field> Rank0Datum<F> {
    pub fn new(d: usize, sigma: PolyMatrix<F>, tau: PolyMatrix<F>, context: F::Context) -> Result<Self, DatumError> {
        if d == 0 {
            return Err(DatumError::Shape("d must be positive".into()));
        }
        if (sigma.rows(), sigma.cols()) != (2 * d, d) {
            return Err(DatumError::Shape(format!(
                "sigma is {}x{}, expected {}x{d}",
                sigma.rows(),
                sigma.cols(),
                2 * d
            )));
        }
        if (tau.rows(), tau.cols()) != (d, 2 * d) {
            return Err(DatumError::Shape(format!("tau is {}x{}, expected {d}x{}", tau.rows(), tau.cols(), 2 * d)));
        }
        let sigma = sigma.with_expected_degree(1)?;
        let tau = tau.with_expected_degree(1)?;
        Ok(Rank0Datum { d, sigma, tau, context })
    }

    pub fn sigma_map(&self) -> GradedMap<F> {
        GradedMap::new(vec![-1; self.d], vec![0; 2 * self.d], self.sigma.clone()).expect("validated")
    }

    pub fn tau_map(&self) -> GradedMap<F> {
        GradedMap::new(vec![0; 2 * self.d], vec![1; self.d], self.tau.clone()).expect("validated")
    }

    /// Support ideal of `coker τ` and its data.
    pub fn support(&self) -> Result<(GroebnerBasis<F>, HilbertData), ComputeError> {
        let gb = buchberger(&minors_ideal(&self.tau, self.d)?);
        let data = gb.hilbert_data();
        Ok((gb, data))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub k: i64,
    pub kernel_tau: i64,
    pub image_sigma: i64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank0Report {
    pub tau_sigma_zero: bool,
    pub sigma_rank: usize,
    pub tau_rank: usize,
    pub ends_exact: bool,
    pub window: (i64, i64),
    pub threshold: i64,
    pub degrees: Vec<DegreeCheck>,
    /// Degrees at or above the threshold where the middle fails to be exact.
    pub failing_degrees: Vec<i64>,
    pub support_dimension: i64,
    pub support_degree: Option<i64>,
    pub support_ok: bool,
    pub verified: bool,
    pub verdict: String,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

/// Checks the resolution on the twist window `[kmin, kmax]`; non-exact
/// degrees below `threshold` only produce warnings.
pub fn verify_rank0<F: Field>(z: &Rank0Datum<F>, kmin: i64, kmax: i64, threshold: i64) -> Result<Rank0Report, ComputeError> {
    if kmin > kmax {
        return Err(ComputeError::Integrity(format!("empty twist window [{kmin}, {kmax}]")));
    }
    let tau_sigma_zero = z.tau.mul(&z.sigma)?.is_zero();
    let sigma_rank = z.sigma.symbolic_rank();
    let tau_rank = z.tau.symbolic_rank();
    let ends_exact = sigma_rank == z.d && tau_rank == z.d;
    let (sigma, tau) = (z.sigma_map(), z.tau_map());
    let mut degrees = Vec::new();
    let mut failing_degrees = Vec::new();
    let mut warnings = Vec::new();
    for k in kmin..=kmax {
        let kernel_tau = tau.source_dim(k) - tau.graded_rank(k) as i64;
        let image_sigma = sigma.graded_rank(k) as i64;
        let exact = kernel_tau == image_sigma;
        if !exact {
            if k < threshold {
                warnings.push(format!("middle homology of dimension {} in degree {k}", kernel_tau - image_sigma));
            } else {
                failing_degrees.push(k);
            }
        }
        degrees.push(DegreeCheck { k, kernel_tau, image_sigma, exact });
    }
    let (_, support) = z.support()?;
    let support_ok = support.projective_dimension == 1;
    let verified = tau_sigma_zero && ends_exact && failing_degrees.is_empty() && support_ok;
    let verdict = if verified {
        format!("verified in window [{}, {kmax}]", threshold.max(kmin))
    } else if !failing_degrees.is_empty() {
        format!("middle homology in degrees {failing_degrees:?}")
    } else {
        "failed".to_string()
    };
    Ok(Rank0Report {
        tau_sigma_zero,
        sigma_rank,
        tau_rank,
        ends_exact,
        window: (kmin, kmax),
        threshold,
        degrees,
        failing_degrees,
        support_dimension: support.projective_dimension,
        support_degree: support.degree,
        support_ok,
        verified,
        verdict,
        warnings,
        notes: vec![RANK0_PURITY_CAVEAT.to_string()],
    })
}

/// `h^0(Z(-1))` read from `coker τ` in degree `-1`.
pub fn rank0_degree<F: Field>(z: &Rank0Datum<F>) -> Result<i64, ComputeError> {
    let value = z.tau_map().coker_hilbert_function(-1);
    if value != z.d as i64 {
        return Err(ComputeError::Integrity(format!("degree {value} differs from structural d = {}", z.d)));
    }
    Ok(value)
}

/// `d·χ(O(k+1)) - 2d·χ(O(k)) + d·χ(O(k-1))` as a polynomial in `k`.
pub fn rank0_euler_polynomial(d: usize) -> HilbertPolynomial {
    let d = Rational::from_integer((d as i64).into());
    let chi = |shift: i64| HilbertPolynomial::binomial(shift + 3, 3);
    HilbertPolynomial::combine(&[(d.clone(), chi(1)), (-(d.clone() + d.clone()), chi(0)), (d, chi(-1))])
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rank0Hilbert {
    pub fit: HilbertFit,
    pub samples: Vec<(i64, i64)>,
    pub euler: HilbertPolynomial,
    /// The Euler polynomial equals `d(k + 2)`.
    pub euler_identity: bool,
    /// The fitted polynomial equals the Euler polynomial.
    pub agrees: bool,
}

pub fn rank0_hilbert_polynomial<F: Field>(z: &Rank0Datum<F>) -> Result<Rank0Hilbert, ComputeError> {
    let (fit, samples) = coker_hilbert_polynomial(&z.tau_map(), S_MODULE_WINDOW.0, S_MODULE_WINDOW.1)?;
    let euler = rank0_euler_polynomial(z.d);
    let d = z.d as i64;
    let euler_identity = euler == HilbertPolynomial::from_ints(&[2 * d, d]);
    let agrees = fit.polynomial() == Some(&euler);
    Ok(Rank0Hilbert { fit, samples, euler, euler_identity, agrees })
}

/// `(d, τᵀ, σᵀ)`: the resolution of `Ext²(Z, O)`.
pub fn dualize_rank0<F: Field>(z: &Rank0Datum<F>) -> Rank0Datum<F> {
    Rank0Datum { d: z.d, sigma: z.tau.transpose(), tau: z.sigma.transpose(), context: z.context.clone() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub both_verified: bool,
    pub consistent: bool,
    /// First invariant that differs, if any.
    pub first_failure: Option<String>,
    pub degrees: (usize, usize),
    pub supports_equal: bool,
    pub hilbert_equal: bool,
    pub notes: Vec<String>,
}

/// Compares the dual of `z1` with `z2` through `d`, the support ideal and the
/// Hilbert polynomial.
pub fn duality_pair_report<F: Field>(
    z1: &Rank0Datum<F>,
    z2: &Rank0Datum<F>,
    kmin: i64,
    kmax: i64,
) -> Result<DualityReport, ComputeError> {
    let both_verified = verify_rank0(z1, kmin, kmax, 0)?.verified && verify_rank0(z2, kmin, kmax, 0)?.verified;
    let dual = dualize_rank0(z1);
    let supports_equal = dual.support()?.0 == z2.support()?.0;
    let hilbert_equal = rank0_hilbert_polynomial(&dual)?.fit == rank0_hilbert_polynomial(z2)?.fit;
    let first_failure = if !both_verified {
        Some("verification".to_string())
    } else if dual.d != z2.d {
        Some(format!("degree ({} vs {})", dual.d, z2.d))
    } else if !supports_equal {
        Some("support ideal".to_string())
    } else if !hilbert_equal {
        Some("Hilbert polynomial".to_string())
    } else {
        None
    };
    Ok(DualityReport {
        both_verified,
        consistent: first_failure.is_none(),
        first_failure,
        degrees: (dual.d, z2.d),
        supports_equal,
        hilbert_equal,
        notes: vec![ISOMORPHISM_CAVEAT.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    type Q = Rational;

    fn mat(rows: &[&[&str]]) -> PolyMatrix<Q> {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| Polynomial::parse(s, &()).unwrap()).collect()).collect())
            .unwrap()
    }

    fn koszul() -> Rank0Datum<Q> {
        Rank0Datum::new(1, mat(&[&["x2"], &["-x1"]]), mat(&[&["x1", "x2"]]), ()).unwrap()
    }

    fn two_lines() -> Rank0Datum<Q> {
        Rank0Datum::new(
            2,
            mat(&[&["x2", "0"], &["-x1", "0"], &["0", "x4"], &["0", "-x3"]]),
            mat(&[&["x1", "x2", "0", "0"], &["0", "0", "x3", "x4"]]),
            (),
        )
        .unwrap()
    }

    #[test]
    fn shapes() {
        assert!(Rank0Datum::new(1, mat(&[&["x2"]]), mat(&[&["x1", "x2"]]), ()).is_err());
        assert!(Rank0Datum::<Q>::new(0, PolyMatrix::zeros(0, 0), PolyMatrix::zeros(0, 0), ()).is_err());
        assert!(Rank0Datum::new(1, mat(&[&["x2"], &["x1^2"]]), mat(&[&["x1", "x2"]]), ()).is_err());
    }

    #[test]
    fn koszul_verifies() {
        let r = verify_rank0(&koszul(), -6, 4, 0).unwrap();
        assert!(r.verified, "{r:?}");
        assert_eq!((r.support_dimension, r.support_degree), (1, Some(1)));
        assert_eq!(rank0_degree(&koszul()).unwrap(), 1);
        let h = rank0_hilbert_polynomial(&koszul()).unwrap();
        assert_eq!(h.fit, HilbertFit::Stable(HilbertPolynomial::from_ints(&[2, 1])));
        assert!(h.euler_identity && h.agrees);
    }

    #[test]
    fn two_lines_verify() {
        let z = two_lines();
        let r = verify_rank0(&z, -2, 5, 0).unwrap();
        assert!(r.verified);
        assert_eq!((r.support_dimension, r.support_degree), (1, Some(2)));
        assert_eq!(rank0_degree(&z).unwrap(), 2);
        assert_eq!(rank0_hilbert_polynomial(&z).unwrap().fit, HilbertFit::Stable(HilbertPolynomial::from_ints(&[4, 2])));
    }

    #[test]
    fn sign_swap_breaks_complex() {
        let z = Rank0Datum::new(1, mat(&[&["x2"], &["x1"]]), mat(&[&["x1", "x2"]]), ()).unwrap();
        let r = verify_rank0(&z, 0, 3, 0).unwrap();
        assert!(!r.tau_sigma_zero && !r.verified);
    }

    #[test]
    fn euler_identity() {
        for d in 1..=3 {
            assert_eq!(rank0_euler_polynomial(d), HilbertPolynomial::from_ints(&[2 * d as i64, d as i64]));
        }
    }

    #[test]
    fn dualization() {
        let z = koszul();
        let dual = dualize_rank0(&z);
        assert_eq!(dual.sigma, mat(&[&["x1"], &["x2"]]));
        assert_eq!(dual.tau, mat(&[&["x2", "-x1"]]));
        assert_eq!(dualize_rank0(&dual), z);
        assert!(verify_rank0(&dual, -6, 4, 0).unwrap().verified);
        assert_eq!(dual.support().unwrap().0, z.support().unwrap().0);
    }

    #[test]
    fn duality_pairs() {
        let z = koszul();
        assert!(duality_pair_report(&z, &dualize_rank0(&z), -2, 4).unwrap().consistent);
        let r = duality_pair_report(&z, &two_lines(), -2, 4).unwrap();
        assert!(!r.consistent);
        assert!(r.first_failure.unwrap().starts_with("degree"));
        let t = two_lines();
        assert!(duality_pair_report(&t, &dualize_rank0(&dualize_rank0(&t)), -2, 4).unwrap().consistent);
        assert!(duality_pair_report(&t, &dualize_rank0(&t), -2, 4).unwrap().consistent);
    }
}
