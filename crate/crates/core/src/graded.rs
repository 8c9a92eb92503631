//! Graded maps between sums of twisted copies of `R = k[x1..x4]`, their
//! degree pieces, and Hilbert functions/polynomials of cokernels.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rational_to_string, Field, Rational};
use crate::error::{ComputeError, DatumError};
use crate::linalg::{sparse_rank, Matrix, PolyMatrix};
use crate::poly::{Homogeneity, Monomial};

/// `dim R_m = C(m+3, 3)`, zero for negative `m`.
pub fn dim_r(m: i64) -> i64 {
    if m < 0 {
        0
    } else {
        (m + 1) * (m + 2) * (m + 3) / 6
    }
}

/// `χ(O(m))` on P³, valid for every integer `m`.
pub fn euler_chi_line(m: i64) -> i64 {
    (m + 1) * (m + 2) * (m + 3) / 6
}

/// A degree-preserving map `⊕_j R(s_j) → ⊕_i R(t_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    source_twists: Vec<i64>,
    target_twists: Vec<i64>,
    matrix: PolyMatrix<F>,
}

impl<F: Field> GradedMap<F> {
    pub fn new(source_twists: Vec<i64>, target_twists: Vec<i64>, matrix: PolyMatrix<F>) -> Result<Self, DatumError> {
        if matrix.cols() != source_twists.len() || matrix.rows() != target_twists.len() {
            return Err(DatumError::Shape(format!(
                "{}x{} matrix for {} source and {} target summands",
                matrix.rows(),
                matrix.cols(),
                source_twists.len(),
                target_twists.len()
            )));
        }
        for (i, t) in target_twists.iter().enumerate() {
            for (j, s) in source_twists.iter().enumerate() {
                let need = t - s;
                match matrix.get(i, j).homogeneous_degree() {
                    Homogeneity::Zero => {}
                    Homogeneity::Degree(d) if i64::from(d) == need => {}
                    _ => {
                        return Err(DatumError::Degree(format!(
                            "entry ({}, {}) must be zero or a form of degree {need}",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(GradedMap { source_twists, target_twists, matrix })
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source_twists
    }

    pub fn target_twists(&self) -> &[i64] {
        &self.target_twists
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn source_dim(&self, k: i64) -> i64 {
        self.source_twists.iter().map(|s| dim_r(k + s)).sum()
    }

    pub fn target_dim(&self, k: i64) -> i64 {
        self.target_twists.iter().map(|t| dim_r(k + t)).sum()
    }

    /// Composition `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap<F>) -> Result<Self, DatumError> {
        if inner.target_twists != self.source_twists {
            return Err(DatumError::Shape("twists of composed maps do not match".into()));
        }
        GradedMap::new(inner.source_twists.clone(), self.target_twists.clone(), self.matrix.mul(&inner.matrix)?)
    }

    /// Matrix of the map in degree `k`, in the descending degrevlex monomial
    /// bases of each summand (summands in order).
    pub fn graded_piece(&self, k: i64) -> Matrix<F> {
        let (nrows, columns) = self.graded_piece_columns(k);
        let mut out: Matrix<F> = Matrix::zeros(nrows, columns.len());
        for (col, v) in columns.into_iter().enumerate() {
            for (row, c) in v {
                out.set(row, col, c);
            }
        }
        out
    }

    /// The columns of [`graded_piece`](Self::graded_piece) as sorted sparse
    /// vectors, with the number of rows.
    pub fn graded_piece_columns(&self, k: i64) -> (usize, Vec<Vec<(usize, F)>>) {
        let mut row_offset = Vec::with_capacity(self.target_twists.len());
        let mut lookup: Vec<HashMap<Monomial, usize>> = Vec::with_capacity(self.target_twists.len());
        let mut acc = 0;
        for t in &self.target_twists {
            let basis = Monomial::of_degree(k + t);
            row_offset.push(acc);
            acc += basis.len();
            lookup.push(basis.into_iter().enumerate().map(|(idx, m)| (m, idx)).collect());
        }
        let mut columns = Vec::with_capacity(self.source_dim(k) as usize);
        for (j, s) in self.source_twists.iter().enumerate() {
            for u in Monomial::of_degree(k + s) {
                let mut v: Vec<(usize, F)> = Vec::new();
                for i in 0..self.target_twists.len() {
                    for (m, c) in self.matrix.get(i, j).terms() {
                        v.push((row_offset[i] + lookup[i][&m.mul(&u)], c.clone()));
                    }
                }
                v.sort_by_key(|e| e.0);
                v.dedup_by(|later, earlier| {
                    if later.0 == earlier.0 {
                        earlier.1 = earlier.1.add_ref(&later.1);
                        true
                    } else {
                        false
                    }
                });
                v.retain(|e| !e.1.is_zero());
                columns.push(v);
            }
        }
        (acc, columns)
    }

    /// Rank of the map in degree `k`.
    pub fn graded_rank(&self, k: i64) -> usize {
        sparse_rank(self.graded_piece_columns(k).1)
    }

    /// `dim coker(self)_k`.
    pub fn coker_hilbert_function(&self, k: i64) -> i64 {
        self.target_dim(k) - self.graded_rank(k) as i64
    }
}

/// Polynomial in the twist `k` with rational coefficients (lowest degree first).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HilbertPolynomial {
    coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn zero() -> Self {
        HilbertPolynomial { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, k: i64) -> Rational {
        let k = Rational::from_integer(BigInt::from(k));
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &k + c)
    }

    pub fn eval_int(&self, k: i64) -> Option<i64> {
        let v = self.eval(k);
        if v.is_integer() {
            i64::try_from(v.to_integer()).ok()
        } else {
            None
        }
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `C(k + shift, d)` as a polynomial in `k`.
    pub fn binomial(shift: i64, d: usize) -> Self {
        let mut acc = Self::from_ints(&[1]);
        for i in 0..d as i64 {
            acc = acc.mul(&Self::from_ints(&[shift - i, 1]));
        }
        let mut fact = BigInt::one();
        for i in 2..=d as i64 {
            fact *= i;
        }
        acc.scale(&Rational::new(BigInt::one(), fact))
    }

    /// Linear combination `Σ c_i · p_i`.
    pub fn combine(parts: &[(Rational, HilbertPolynomial)]) -> Self {
        parts.iter().fold(Self::zero(), |acc, (c, p)| acc.add(&p.scale(c)))
    }

    /// `Some(d)` when the polynomial is exactly `d·k + 2d` with `d > 0`.
    pub fn as_rank0_form(&self) -> Option<i64> {
        if self.coeffs.len() != 2 {
            return None;
        }
        let d = &self.coeffs[1];
        if d.is_integer() && d.is_positive() && self.coeffs[0] == d * Rational::from_integer(BigInt::from(2)) {
            i64::try_from(d.to_integer()).ok()
        } else {
            None
        }
    }
}

impl fmt::Debug for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HilbertPolynomial({self})")
    }
}

/// Prints in the variable `k`, highest degree first.
impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::arith::dense_to_string(&self.coeffs, "k"))
    }
}

impl serde::Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HilbertPolynomial", 2)?;
        st.serialize_field("text", &self.to_string())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

/// Outcome of [`fit_hilbert_polynomial`].
#[derive(Clone, Debug, PartialEq)]
pub enum HilbertFit {
    Stable(HilbertPolynomial),
    NoStableFit,
}

impl HilbertFit {
    pub fn polynomial(&self) -> Option<&HilbertPolynomial> {
        match self {
            HilbertFit::Stable(p) => Some(p),
            HilbertFit::NoStableFit => None,
        }
    }
}

/// Interpolates the last `max_degree + 1` samples (Newton forward form) and
/// checks the result against every other sample. Samples must have
/// consecutive, increasing `k`.
pub fn fit_hilbert_polynomial(values: &[(i64, i64)], max_degree: usize) -> Result<HilbertFit, ComputeError> {
    let needed = max_degree + 2;
    if values.len() < needed {
        return Err(ComputeError::InsufficientSamples { needed, got: values.len() });
    }
    if values.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(ComputeError::Integrity("samples must be at consecutive twists".into()));
    }
    let tail = &values[values.len() - (max_degree + 1)..];
    let k0 = tail[0].0;
    let mut diffs: Vec<BigInt> = tail.iter().map(|(_, v)| BigInt::from(*v)).collect();
    let mut parts = Vec::new();
    for j in 0..=max_degree {
        parts.push((Rational::from_integer(diffs[0].clone()), HilbertPolynomial::binomial(-k0, j)));
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let poly = HilbertPolynomial::combine(&parts);
    let ok = values.iter().all(|(k, v)| poly.eval(*k) == Rational::from_integer(BigInt::from(*v)));
    Ok(if ok { HilbertFit::Stable(poly) } else { HilbertFit::NoStableFit })
}

/// Samples `coker(g)_k` on `[kmin, kmax]` and fits a polynomial of degree ≤ 3
/// through the last four samples.
pub fn coker_hilbert_polynomial<F: Field>(
    g: &GradedMap<F>,
    kmin: i64,
    kmax: i64,
) -> Result<(HilbertFit, Vec<(i64, i64)>), ComputeError> {
    let samples: Vec<(i64, i64)> = (kmin..=kmax).map(|k| (k, g.coker_hilbert_function(k))).collect();
    let fit = fit_hilbert_polynomial(&samples, 3)?;
    Ok((fit, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    type Q = Rational;

    fn map(src: Vec<i64>, tgt: Vec<i64>, rows: &[&[&str]]) -> GradedMap<Q> {
        let m = PolyMatrix::from_entries(
            tgt.len(),
            src.len(),
            rows.iter().flat_map(|r| r.iter().map(|s| Polynomial::parse(s, &()).unwrap())).collect(),
        )
        .unwrap();
        GradedMap::new(src, tgt, m).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!((dim_r(0), dim_r(2), dim_r(-1)), (1, 10, 0));
        assert_eq!((euler_chi_line(0), euler_chi_line(-1), euler_chi_line(-4)), (1, 0, -1));
    }

    #[test]
    fn pieces() {
        let beta = map(vec![0; 5], vec![1], &[&["x1", "x2", "x3", "x4", "0"]]);
        let p = beta.graded_piece(0);
        assert_eq!((p.rows(), p.cols(), p.rank()), (4, 5, 4));
        let p = beta.graded_piece(-2);
        assert_eq!((p.rows(), p.cols()), (0, 0));
        let x1 = map(vec![-1], vec![0], &[&["x1"]]);
        let p = x1.graded_piece(1);
        assert_eq!((p.rows(), p.cols(), p.rank()), (4, 1, 1));
        assert!(p.get(0, 0).is_one());
    }

    #[test]
    fn cokernels() {
        let g = map(vec![0, 0], vec![1], &[&["x1", "x2"]]);
        assert_eq!(g.coker_hilbert_function(2), 4);
        let zero = map(vec![0], vec![1], &[&["0"]]);
        assert_eq!(zero.coker_hilbert_function(0), 4);
        let id = map(vec![0], vec![0], &[&["1"]]);
        assert_eq!(id.coker_hilbert_function(3), 0);
    }

    #[test]
    fn fitting() {
        let samples: Vec<(i64, i64)> = (4..=9).map(|k| (k, k + 2)).collect();
        assert_eq!(fit_hilbert_polynomial(&samples, 1).unwrap(), HilbertFit::Stable(HilbertPolynomial::from_ints(&[2, 1])));
        let zeros: Vec<(i64, i64)> = (0..6).map(|k| (k, 0)).collect();
        assert_eq!(fit_hilbert_polynomial(&zeros, 3).unwrap(), HilbertFit::Stable(HilbertPolynomial::zero()));
        let exp: Vec<(i64, i64)> = (0..8).map(|k| (k, 1 << k)).collect();
        assert_eq!(fit_hilbert_polynomial(&exp, 3).unwrap(), HilbertFit::NoStableFit);
        assert!(matches!(
            fit_hilbert_polynomial(&samples[..2], 1),
            Err(ComputeError::InsufficientSamples { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn binomials() {
        // C(k+3, 3) at k = 2 is 10
        assert_eq!(HilbertPolynomial::binomial(3, 3).eval(2), Q::from_integer(10.into()));
        assert_eq!(HilbertPolynomial::from_ints(&[4, 2]).as_rank0_form(), Some(2));
        assert_eq!(HilbertPolynomial::from_ints(&[3, 1]).as_rank0_form(), None);
        assert_eq!(HilbertPolynomial::from_ints(&[4, 2]).to_string(), "2*k + 4");
    }

    #[test]
    fn wrong_twists_rejected() {
        let m = PolyMatrix::from_rows(vec![vec![Polynomial::<Q>::parse("x1", &()).unwrap()]]).unwrap();
        assert!(GradedMap::new(vec![0], vec![2], m).is_err());
    }
}
