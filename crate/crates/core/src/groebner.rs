//! Gröbner bases in degrevlex, Hilbert series of monomial ideals, and the
//! dimension/degree of projective schemes cut out by homogeneous ideals.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, Rational};
use crate::error::DatumError;
use crate::graded::HilbertPolynomial;
use crate::linalg::PolyMatrix;
use crate::poly::{Monomial, Polynomial, NVARS};

/// Homogeneous ideal given by nonzero generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; the others must be homogeneous.
    pub fn new(generators: Vec<Polynomial<F>>) -> Result<Self, DatumError> {
        let generators: Vec<_> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if let Some(g) = generators.iter().find(|g| !g.is_homogeneous()) {
            return Err(DatumError::Degree(format!("ideal generator `{g}` is not homogeneous")));
        }
        Ok(Ideal { generators })
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_empty_locus(&self) -> bool {
        buchberger(self).hilbert_data().is_empty_locus()
    }
}

/// Reduced Gröbner basis with respect to degrevlex, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    elements: Vec<Polynomial<F>>,
}

/// Full reduction of `p` by `basis`.
pub fn normal_form<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let leads: Vec<(Monomial, F)> = basis
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (*m, c.inv().expect("nonzero"))))
        .collect();
    let mut rest = p.clone();
    let mut out = Polynomial::zero();
    while let Some((m, c)) = rest.leading_term() {
        let (m, c) = (*m, c.clone());
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(idx) => {
                let (lm, inv) = &leads[idx];
                let mono = lm.quotient_of(&m).expect("divides");
                rest.sub_scaled(&c.mul_ref(inv), &mono, &basis_nonzero(basis, idx));
            }
            None => {
                rest.add_term(m, -c.clone());
                out.add_term(m, c);
            }
        }
    }
    out
}

fn basis_nonzero<F: Field>(basis: &[Polynomial<F>], idx: usize) -> Polynomial<F> {
    basis.iter().filter(|g| !g.is_zero()).nth(idx).cloned().expect("index in range")
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&cf.inv().expect("nonzero"), &mf.quotient_of(&l).expect("divides"));
    let b = g.mul_term(&cg.inv().expect("nonzero"), &mg.quotient_of(&l).expect("divides"));
    &a - &b
}

/// Buchberger's algorithm with the normal selection strategy (lowest lcm
/// degree, ties broken by pair indices) and the product/chain criteria.
pub fn buchberger<F: Field>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    for g in &ideal.generators {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let lm = |b: &Vec<Polynomial<F>>, i: usize| b[i].leading_monomial().expect("nonzero");
    // (lcm degree, i, j)
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((lm(&basis, i).lcm(&lm(&basis, j)).degree(), i, j));
        }
    }
    while let Some(&pair) = pending.iter().next() {
        pending.remove(&pair);
        let (_, i, j) = pair;
        let (mi, mj) = (lm(&basis, i), lm(&basis, j));
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let is_pending = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pending.contains(&(lm(&basis, a).lcm(&lm(&basis, b)).degree(), a, b))
        };
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && lm(&basis, k).divides(&l) && !is_pending(i, k) && !is_pending(j, k));
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        basis.push(r.monic());
        let new = basis.len() - 1;
        for i in 0..new {
            pending.insert((lm(&basis, i).lcm(&lm(&basis, new)).degree(), i, new));
        }
    }
    GroebnerBasis::reduce(basis)
}

impl<F: Field> GroebnerBasis<F> {
    fn reduce(basis: Vec<Polynomial<F>>) -> Self {
        let mut minimal: Vec<Polynomial<F>> = Vec::new();
        for (idx, g) in basis.iter().enumerate() {
            let m = g.leading_monomial().expect("nonzero");
            let redundant = basis.iter().enumerate().any(|(other, h)| {
                let hm = h.leading_monomial().expect("nonzero");
                other != idx && hm.divides(&m) && (hm != m || other < idx)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for idx in 0..minimal.len() {
            let (m, c) = {
                let (m, c) = minimal[idx].leading_term().expect("nonzero");
                (*m, c.clone())
            };
            let tail = &minimal[idx] - &Polynomial::term(c.clone(), m);
            let others: Vec<Polynomial<F>> =
                minimal.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, g)| g.clone()).collect();
            let tail = normal_form(&tail, &others);
            reduced.push((&Polynomial::term(c, m) + &tail).monic());
        }
        reduced.sort_by_key(|g| g.leading_monomial());
        GroebnerBasis { elements: reduced }
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        normal_form(p, &self.elements)
    }

    pub fn reduces_to_zero(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every S-polynomial of basis elements has normal form zero.
    pub fn s_pairs_reduce(&self) -> bool {
        (0..self.elements.len()).all(|j| {
            (0..j).all(|i| self.reduces_to_zero(&s_polynomial(&self.elements[i], &self.elements[j])))
        })
    }

    /// No term of an element is divisible by another element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_term().is_some_and(|(_, c)| c.is_one())
                && self.elements.iter().enumerate().all(|(j, h)| {
                    let lm = h.leading_monomial().expect("nonzero");
                    i == j || g.terms().all(|(m, _)| !lm.divides(m))
                })
        })
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial()).collect()
    }

    pub fn hilbert_data(&self) -> HilbertData {
        hilbert_data_of_monomials(&self.leading_monomials())
    }
}

/// Hilbert polynomial of `R/I` with its projective dimension and degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertData {
    pub hilbert_polynomial: HilbertPolynomial,
    /// `-1` for the empty scheme.
    pub projective_dimension: i64,
    /// `None` for the empty scheme.
    pub degree: Option<i64>,
    /// Numerator of the Hilbert series over `(1-t)^4`, lowest degree first.
    pub series_numerator: Vec<BigInt>,
}

impl HilbertData {
    pub fn is_empty_locus(&self) -> bool {
        self.hilbert_polynomial.is_zero()
    }
}

/// Hilbert series data of `R/(monomials)`.
pub fn hilbert_data_of_monomials(gens: &[Monomial]) -> HilbertData {
    let mut memo = HashMap::new();
    let numerator = series_numerator(&minimalize(gens.to_vec()), &mut memo);
    let mut q = trim(numerator.clone());
    let mut dim = NVARS as i64;
    while !q.is_empty() && dim > 0 && q.iter().sum::<BigInt>().is_zero() {
        q = divide_one_minus_t(&q);
        dim -= 1;
    }
    if q.is_empty() || dim == 0 {
        return HilbertData {
            hilbert_polynomial: HilbertPolynomial::zero(),
            projective_dimension: -1,
            degree: None,
            series_numerator: numerator,
        };
    }
    // HS = Σ q_i t^i / (1-t)^dim  ⇒  HP(k) = Σ q_i C(k - i + dim - 1, dim - 1)
    let parts: Vec<(Rational, HilbertPolynomial)> = q
        .iter()
        .enumerate()
        .map(|(i, c)| (Rational::from_integer(c.clone()), HilbertPolynomial::binomial(dim - 1 - i as i64, dim as usize - 1)))
        .collect();
    let degree: BigInt = q.iter().sum();
    HilbertData {
        hilbert_polynomial: HilbertPolynomial::combine(&parts),
        projective_dimension: dim - 1,
        degree: i64::try_from(degree).ok(),
        series_numerator: numerator,
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact division by `1 - t`; caller guarantees `p(1) = 0`.
fn divide_one_minus_t(p: &[BigInt]) -> Vec<BigInt> {
    // p = (1 - t) q  ⇒  q_i = Σ_{j ≤ i} p_j
    let mut q = Vec::with_capacity(p.len());
    let mut acc = BigInt::zero();
    for c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc.clone());
    }
    trim(q)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    // ascending order: a divisor always precedes its multiples
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// Numerator `N(t)` of `HS(R/M) = N(t) / (1-t)^4` by pivot splitting:
/// `N(M) = N(M + (x)) + t·N(M : x)` with `x` dividing the most generators.
fn series_numerator(gens: &[Monomial], memo: &mut HashMap<Vec<Monomial>, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(v) = memo.get(gens) {
        return v.clone();
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    let result = if coprime {
        gens.iter().fold(vec![BigInt::one()], |acc, g| {
            let mut factor = vec![BigInt::zero(); g.degree() as usize + 1];
            factor[0] = BigInt::one();
            factor[g.degree() as usize] -= 1;
            poly_mul(&acc, &factor)
        })
    } else {
        let counts: Vec<usize> = (0..NVARS).map(|v| gens.iter().filter(|g| g.0[v] > 0).count()).collect();
        let var = (0..NVARS).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("nonempty");
        let x = Monomial::var(var);
        let mut plus: Vec<Monomial> = gens.iter().copied().filter(|g| g.0[var] == 0).collect();
        plus.push(x);
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| {
                let mut e = g.0;
                e[var] = e[var].saturating_sub(1);
                Monomial(e)
            })
            .collect();
        let a = series_numerator(&minimalize(plus), memo);
        let mut b = series_numerator(&minimalize(colon), memo);
        b.insert(0, BigInt::zero());
        poly_add(&a, &b)
    };
    let result = trim(result);
    memo.insert(gens.to_vec(), result.clone());
    result
}

/// Ideal of all `size`×`size` minors of `m` (zero minors dropped).
pub fn minors_ideal<F: Field>(m: &PolyMatrix<F>, size: usize) -> Result<Ideal<F>, DatumError> {
    if size == 0 || size > m.rows().min(m.cols()) {
        return Err(DatumError::Shape(format!(
            "minor size {size} out of range for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let rows = combinations(m.rows(), size);
    let cols = combinations(m.cols(), size);
    let mut gens = Vec::new();
    for r in &rows {
        for c in &cols {
            let det = cofactor_det(m, r, c);
            if !det.is_zero() {
                gens.push(det);
            }
        }
    }
    Ideal::new(gens)
}

/// All increasing `k`-subsets of `0..n`, lexicographic.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of the submatrix on `rows` × `cols` by expansion along the first row.
pub fn cofactor_det<F: Field>(m: &PolyMatrix<F>, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut acc = Polynomial::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = m.get(rows[0], c);
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_det(m, &rows[1..], &sub_cols);
        let term = entry * &minor;
        acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Integer check used by report code.
pub fn is_positive_integer(q: &Rational) -> bool {
    q.is_integer() && q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<Rational>;

    fn p(s: &str) -> P {
        P::parse(s, &()).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn simple_bases() {
        assert_eq!(buchberger(&ideal(&["x1", "x2"])).elements(), &[p("x2"), p("x1")]);
        assert_eq!(buchberger(&ideal(&["x1*x4 - x2*x3"])).elements(), &[p("x2*x3 - x1*x4")]);
        assert!(buchberger(&ideal(&[])).elements().is_empty());
    }

    #[test]
    fn s_pair_remainder_appears() {
        let g = buchberger(&ideal(&["x1^2 - x2*x3", "x1*x2 - x3*x4"]));
        assert!(g.s_pairs_reduce());
        assert!(g.is_reduced());
        // the cubic produced by the first S-pair lies in the ideal and the basis has degree-3 elements
        assert!(g.reduces_to_zero(&p("x2^2*x3 - x1*x3*x4")));
        assert!(g.elements().iter().any(|e| e.total_degree() == Some(3)));
        assert!(g.reduces_to_zero(&p("x1^2 - x2*x3")));
        assert!(g.reduces_to_zero(&p("x1*x2 - x3*x4")));
    }

    #[test]
    fn normal_forms() {
        let g = buchberger(&ideal(&["x1", "x2"]));
        assert!(g.normal_form(&p("x1")).is_zero());
        assert_eq!(g.normal_form(&p("x3^2")), p("x3^2"));
        let h = buchberger(&ideal(&["x1*x4 - x2*x3"]));
        // x2*x3 leads x1*x4 in degrevlex
        assert_eq!(h.normal_form(&p("x1*x4 + x2*x3")), p("2*x1*x4"));
    }

    #[test]
    fn hilbert_examples() {
        let line = buchberger(&ideal(&["x1", "x2"])).hilbert_data();
        assert_eq!(line.hilbert_polynomial, HilbertPolynomial::from_ints(&[1, 1]));
        assert_eq!((line.projective_dimension, line.degree), (1, Some(1)));
        let point = buchberger(&ideal(&["x1", "x2", "x3"])).hilbert_data();
        assert_eq!(point.hilbert_polynomial, HilbertPolynomial::from_ints(&[1]));
        assert_eq!((point.projective_dimension, point.degree), (0, Some(1)));
        let planes = buchberger(&ideal(&["x1*x2"])).hilbert_data();
        assert_eq!(planes.hilbert_polynomial, HilbertPolynomial::from_ints(&[1, 2, 1]));
        assert_eq!((planes.projective_dimension, planes.degree), (2, Some(2)));
        let space = buchberger(&ideal(&[])).hilbert_data();
        assert_eq!(space.hilbert_polynomial, HilbertPolynomial::binomial(3, 3));
        assert_eq!((space.projective_dimension, space.degree), (3, Some(1)));
    }

    #[test]
    fn hilbert_matches_monomial_count() {
        // count standard monomials degree by degree for a nontrivial monomial ideal
        let gens = [Monomial([2, 0, 0, 0]), Monomial([1, 1, 0, 0]), Monomial([0, 1, 1, 0]), Monomial([0, 0, 2, 1])];
        let data = hilbert_data_of_monomials(&gens);
        for k in 6..12 {
            let count = Monomial::of_degree(k).iter().filter(|m| !gens.iter().any(|g| g.divides(m))).count() as i64;
            assert_eq!(data.hilbert_polynomial.eval_int(k), Some(count), "k = {k}");
        }
    }

    #[test]
    fn empty_loci() {
        assert!(ideal(&["x1", "x2", "x3", "x4"]).is_empty_locus());
        assert!(!ideal(&["x1", "x2"]).is_empty_locus());
        assert!(ideal(&["1"]).is_empty_locus());
    }

    #[test]
    fn minors() {
        let m = PolyMatrix::from_rows(vec![vec![p("x1"), p("x2")], vec![p("x3"), p("x4")]]).unwrap();
        assert_eq!(minors_ideal(&m, 2).unwrap().generators(), &[p("x1*x4 - x2*x3")]);
        assert_eq!(minors_ideal(&m, 1).unwrap().generators().len(), 4);
        assert!(minors_ideal(&m, 3).is_err());
        assert!(minors_ideal(&m, 0).is_err());
        let alpha =
            PolyMatrix::from_rows(["-x2", "x1", "0", "0", "x3"].iter().map(|s| vec![p(s)]).collect()).unwrap();
        assert_eq!(minors_ideal(&alpha, 1).unwrap().generators(), &[p("-x2"), p("x1"), p("x3")]);
        assert_eq!(combinations(7, 2).len(), 21);
    }

    #[test]
    fn non_homogeneous_rejected() {
        assert!(Ideal::new(vec![p("x1 + x2^2")]).is_err());
    }
}
