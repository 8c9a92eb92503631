//! Dense exact linear algebra over a [`Field`], and matrices of polynomials.

use std::collections::HashMap;
use std::fmt;

use crate::arith::Field;
use crate::error::{ArithError, DatumError};
use crate::poly::{Homogeneity, Polynomial, ProjectivePoint};

/// Dense row-major matrix of field elements.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, DatumError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(DatumError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, DatumError> {
        if self.cols != other.rows {
            return Err(DatumError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&a.mul_ref(b))
                    }
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[target] -= factor * row[source]`, only from column `from` on.
    fn eliminate(&mut self, target: usize, source: usize, factor: &F, from: usize) {
        for j in from..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j).sub_ref(&factor.mul_ref(s));
            self.set(target, j, v);
        }
    }

    /// Reduced row echelon form with first-nonzero pivoting, left to right.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).mul_ref(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    m.eliminate(i, r, &f, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: r, pivots }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for i in r + 1..m.rows {
                if !m.get(i, c).is_zero() {
                    let f = m.get(i, c).mul_ref(&inv);
                    m.eliminate(i, r, &f, c);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(row, free).clone();
                }
                v
            })
            .collect()
    }
}

/// Rank of the span of sparse vectors given as `(index, value)` lists sorted
/// by index. Each vector is reduced against the pivots found so far, so
/// memory stays proportional to the fill-in rather than to the full matrix.
pub fn sparse_rank<F: Field>(vectors: impl IntoIterator<Item = Vec<(usize, F)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
    for mut v in vectors {
        while let Some((lead, c)) = v.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                let inv = c.inv().expect("leading entry is nonzero");
                for e in v.iter_mut() {
                    e.1 = e.1.mul_ref(&inv);
                }
                pivots.insert(lead, v);
                break;
            };
            v = sparse_axpy(&v, &c, p);
        }
    }
    pivots.len()
}

/// `v - c*p` for sorted sparse vectors, dropping zeros.
fn sparse_axpy<F: Field>(v: &[(usize, F)], c: &F, p: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j == p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i == v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -c.mul_ref(&p[j].1)));
            j += 1;
        } else {
            let x = v[i].1.sub_ref(&c.mul_ref(&p[j].1));
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix with polynomial entries.
#[derive(Clone)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
    expected_degree: Option<u32>,
}

// the degree tag is bookkeeping, not part of the value
impl<F: Field> PartialEq for PolyMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Polynomial::zero(); rows * cols], expected_degree: None }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial<F>>>) -> Result<Self, DatumError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(DatumError::Shape("ragged rows".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect(), expected_degree: None })
    }

    /// Explicit shape, for matrices that may have zero rows or columns.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Polynomial<F>>) -> Result<Self, DatumError> {
        if entries.len() != rows * cols {
            return Err(DatumError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(PolyMatrix { rows, cols, entries, expected_degree: None })
    }

    /// Requires every nonzero entry to be homogeneous of degree `d`.
    pub fn with_expected_degree(mut self, d: u32) -> Result<Self, DatumError> {
        for (idx, e) in self.entries.iter().enumerate() {
            match e.homogeneous_degree() {
                Homogeneity::Zero => {}
                Homogeneity::Degree(k) if k == d => {}
                _ => {
                    return Err(DatumError::Degree(format!(
                        "entry ({}, {}) = `{}` is not a form of degree {d}",
                        idx / self.cols + 1,
                        idx % self.cols + 1,
                        e
                    )))
                }
            }
        }
        self.expected_degree = Some(d);
        Ok(self)
    }

    pub fn expected_degree(&self) -> Option<u32> {
        self.expected_degree
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn row_vec(&self, i: usize) -> Vec<Polynomial<F>> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.expected_degree = self.expected_degree;
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, DatumError> {
        if self.cols != other.rows {
            return Err(DatumError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let prod = self.get(i, k).try_mul(other.get(k, j))?;
                    acc = &acc + &prod;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.scale(c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn evaluate(&self, pt: &ProjectivePoint<F>) -> Result<Matrix<F>, ArithError> {
        let data = self.entries.iter().map(|e| e.try_evaluate(pt)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Rank over the fraction field of the polynomial ring (Bareiss elimination).
    pub fn symbolic_rank(&self) -> usize {
        bareiss_rank(self.rows, self.cols, self.entries.clone(), true)
            .unwrap_or_else(|| bareiss_rank(self.rows, self.cols, self.entries.clone(), false).expect("no division"))
    }
}

/// Fraction-free elimination; with `divide`, each step divides exactly by the
/// previous pivot. Returns `None` if such a division is not exact.
fn bareiss_rank<F: Field>(rows: usize, cols: usize, mut m: Vec<Polynomial<F>>, divide: bool) -> Option<usize> {
    let idx = |i: usize, j: usize| i * cols + j;
    let mut prev = Polynomial::constant(F::one());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[idx(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(idx(r, j), idx(p, j));
            }
        }
        let pivot = m[idx(r, c)].clone();
        for i in r + 1..rows {
            let lead = m[idx(i, c)].clone();
            for j in c + 1..cols {
                let v = &(&pivot * &m[idx(i, j)]) - &(&lead * &m[idx(r, j)]);
                m[idx(i, j)] = if divide { v.div_exact(&prev)? } else { v };
            }
            m[idx(i, c)] = Polynomial::zero();
        }
        if divide {
            prev = pivot;
        }
        r += 1;
    }
    Some(r)
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
