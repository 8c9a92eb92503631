//! Polynomials in the four homogeneous coordinates `x1..x4` of P³.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use crate::arith::{rational_to_string, Field};
use crate::error::{ArithError, DatumError, ParseError, ParseErrorKind};
use crate::parse::{self, Ast};

pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["x1", "x2", "x3", "x4"];

/// Exponent vector of a monomial in `x1..x4`, ordered by degrevlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a == 0 || b == 0)
    }

    /// All monomials of total degree `d` in descending degrevlex order.
    pub fn of_degree(d: i64) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        let d = d as u32;
        let mut out = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    out.push(Monomial([a, b, c, d - a - b - c]));
                }
            }
        }
        out.sort_by(|x, y| y.cmp(x));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // smaller exponent in the last differing variable wins
        for i in (0..NVARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(VAR_NAMES[i].to_string()),
                _ => parts.push(format!("{}^{}", VAR_NAMES[i], e)),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Result of [`Polynomial::homogeneous_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    NotHomogeneous,
}

/// Sparse polynomial; no stored coefficient is zero.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// The variable `x{i+1}`.
    pub fn var(i: usize) -> Self {
        Self::term(F::one(), Monomial::var(i))
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.leading_term().map(|(m, _)| *m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, a.mul_ref(c))).collect() }
    }

    pub fn mul_term(&self, c: &F, mono: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.mul_ref(c))).collect() }
    }

    /// `self - c * mono * other`, in place.
    pub fn sub_scaled(&mut self, c: &F, mono: &Monomial, other: &Self) {
        for (m, a) in &other.terms {
            self.add_term(m.mul(mono), -(a.mul_ref(c)));
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.terms.values().all(|a| other.terms.values().all(|b| a.compatible(b)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if !self.compatible(other) {
            return Err(ArithError::DescriptorMismatch);
        }
        Ok(self * other)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        if !self.compatible(other) {
            return Err(ArithError::DescriptorMismatch);
        }
        Ok(self + other)
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::NotHomogeneous
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree() != Homogeneity::NotHomogeneous
    }

    /// Monic rescaling; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn evaluate(&self, pt: &[F; NVARS]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in pt.iter().zip(m.0) {
                for _ in 0..e {
                    v = v.mul_ref(x);
                }
            }
            acc = acc + v;
        }
        acc
    }

    pub fn try_evaluate(&self, pt: &ProjectivePoint<F>) -> Result<F, ArithError> {
        for c in self.terms.values() {
            for x in &pt.coords {
                if !c.compatible(x) {
                    return Err(ArithError::DescriptorMismatch);
                }
            }
        }
        Ok(self.evaluate(&pt.coords))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(F::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`; `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc_inv) = (*lm, lc.inv().ok()?);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let mono = lm.quotient_of(m)?;
            let coef = c.mul_ref(&lc_inv);
            rem.sub_scaled(&coef, &mono, divisor);
            quot.add_term(mono, coef);
        }
        Some(quot)
    }

    /// Parses an expression over the field described by `ctx`.
    pub fn parse(text: &str, ctx: &F::Context) -> Result<Self, ParseError> {
        let ast = parse::parse_expr(text)?;
        Self::from_ast(&ast, ctx)
    }

    /// Over the rationals a name outside the `x<digits>` family can only be
    /// meant as a field generator, and is reported as such.
    pub fn from_ast(ast: &Ast, ctx: &F::Context) -> Result<Self, ParseError> {
        let gen = F::generator(ctx);
        let result = parse::eval(ast, &mut |name| {
            if let Some(i) = VAR_NAMES.iter().position(|v| *v == name) {
                return Ok(Polynomial::var(i));
            }
            match &gen {
                Some((g, value)) if g == name => Ok(Polynomial::constant(value.clone())),
                _ => Err(()),
            }
        }, &|q| Polynomial::constant(F::from_rational(ctx, q)));
        result.map_err(|mut e| {
            if let (None, ParseErrorKind::UnknownIdentifier(name)) = (&gen, &e.kind) {
                let ring_like = name.strip_prefix('x').is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()));
                if !ring_like {
                    e.kind = ParseErrorKind::GeneratorOverRationals(name.clone());
                }
            }
            e
        })
    }
}

impl<F: Field> parse::EvalRing for Polynomial<F> {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Canonical text: terms in descending degrevlex order, re-parseable.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, body) = coefficient_text(c);
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let is_one = body == "1";
            if *m == Monomial::ONE {
                f.write_str(&body)?;
            } else if is_one {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Splits a coefficient into a sign and an unsigned printable body.
fn coefficient_text<F: Field>(c: &F) -> (bool, String) {
    if let Some(q) = c.to_rational() {
        let neg = q < num_traits::Zero::zero();
        let abs = if neg { -q } else { q };
        return (neg, rational_to_string(&abs));
    }
    if c.prints_negative() {
        return (true, (-c.clone()).to_string());
    }
    let s = c.to_string();
    if s.contains(' ') {
        (false, format!("({s})"))
    } else {
        (false, s)
    }
}

/// A point of P³ with coordinates in the field; not all coordinates zero.
#[derive(Clone, Debug)]
pub struct ProjectivePoint<F: Field> {
    pub coords: [F; NVARS],
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(coords: [F; NVARS]) -> Result<Self, DatumError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(DatumError::Shape("projective point with all coordinates zero".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    /// Equality up to a nonzero scalar.
    pub fn same_point(&self, other: &Self) -> bool {
        for i in 0..NVARS {
            for j in i + 1..NVARS {
                let l = self.coords[i].mul_ref(&other.coords[j]);
                let r = self.coords[j].mul_ref(&other.coords[i]);
                if l != r {
                    return false;
                }
            }
        }
        true
    }
}

impl<F: Field> PartialEq for ProjectivePoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_point(other)
    }
}

impl<F: Field> fmt::Display for ProjectivePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{NfElement, NumberField, Rational};
    use num_bigint::BigInt;
    use std::sync::Arc;
    use num_traits::{One, Zero};

    type P = Polynomial<Rational>;

    fn p(s: &str) -> P {
        P::parse(s, &()).unwrap()
    }

    fn cubic() -> Option<Arc<NumberField>> {
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        Some(Arc::new(NumberField::new("n", vec![q(1), q(1), q(2), q(1)]).unwrap()))
    }

    #[test]
    fn degrevlex_order() {
        let m = |e: [u32; 4]| Monomial(e);
        assert!(m([1, 0, 0, 0]) > m([0, 1, 0, 0]));
        assert!(m([0, 0, 0, 1]) < m([0, 0, 1, 0]));
        assert!(m([0, 2, 0, 0]) > m([1, 0, 1, 0]));
        assert!(m([1, 0, 0, 1]) < m([0, 1, 1, 0]));
        assert!(m([0, 0, 0, 2]) > m([0, 0, 0, 1]));
        let deg2 = Monomial::of_degree(2);
        assert_eq!(deg2.len(), 10);
        assert_eq!(deg2[0], m([2, 0, 0, 0]));
        assert_eq!(deg2[9], m([0, 0, 0, 2]));
    }

    #[test]
    fn parse_examples() {
        let a = p("-x2");
        assert_eq!(a.num_terms(), 1);
        assert_eq!(a.coeff(&Monomial::var(1)), Rational::from_integer((-1).into()));
        assert!(p("0").is_zero());
        assert_eq!(p("(x1 + x2)*(x1 - x2)"), &p("x1^2") - &p("x2^2"));
        assert_eq!(p("3/2*x1 - x1").to_string(), "1/2*x1");
    }

    #[test]
    fn parse_errors() {
        let err = P::parse("x1x2", &()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)), "{err:?}");
        let err = P::parse("x1 + x5", &()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("x5".into()));
        assert_eq!(err.column, 6);
        let err = P::parse("n*x1", &()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::GeneratorOverRationals("n".into()));
        let field = Some(Arc::new(NumberField::new("n", vec![1.into(), 0.into(), 1.into()].into_iter().map(Rational::from_integer).collect()).unwrap()));
        let err = Polynomial::<NfElement>::parse("x1 + y", &field).unwrap_err();
        assert_eq!((err.kind, err.column), (ParseErrorKind::UnknownIdentifier("y".into()), 6));
        let err = P::parse("2 x1", &()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = P::parse("x1 +\n  * x2", &()).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
    }

    #[test]
    fn number_field_entries() {
        let ctx = cubic();
        let f = ctx.clone().unwrap();
        let a = Polynomial::<NfElement>::parse("(n^2+n+1)*x3 - x4", &ctx).unwrap();
        // -(1/m) with m = -n^2 - n - 1
        let minus_one = Rational::from_integer(BigInt::from(-1));
        let m = f.element(&[minus_one.clone(), minus_one.clone(), minus_one]);
        let minus_inv_m = -(m.inv().unwrap());
        let expected = &Polynomial::term(minus_inv_m, Monomial::var(2)) - &Polynomial::var(3);
        let printed = expected.to_string();
        let reparsed = Polynomial::<NfElement>::parse(&printed, &ctx).unwrap();
        assert_eq!(reparsed, expected);
        assert_eq!(a.num_terms(), 2);
    }

    #[test]
    fn products() {
        assert_eq!(&p("x1") * &p("x2"), p("x1*x2"));
        assert_eq!(&p("x1 + x2") * &p("x1 - x2"), p("x1^2 - x2^2"));
        // row of beta times column of alpha for the rank-3 charge-1 monad
        let beta = ["x1", "x2", "x3", "x4", "0"].map(p);
        let alpha = ["-x2", "x1", "0", "0", "x3"].map(p);
        let mut acc = P::zero();
        for (b, a) in beta.iter().zip(&alpha) {
            acc = &acc + &(b * a);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x1 + 2*x3").homogeneous_degree(), Homogeneity::Degree(1));
        assert_eq!(p("x1*x4 - x2*x3").homogeneous_degree(), Homogeneity::Degree(2));
        assert_eq!(p("x1 + x2^2").homogeneous_degree(), Homogeneity::NotHomogeneous);
        assert_eq!(p("0").homogeneous_degree(), Homogeneity::Zero);
    }

    #[test]
    fn evaluation() {
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        let pt = ProjectivePoint::new([q(0), q(0), q(0), q(1)]).unwrap();
        assert!(p("x3").try_evaluate(&pt).unwrap().is_zero());
        let pt = ProjectivePoint::new([q(1), q(0), q(0), q(-1)]).unwrap();
        assert!(p("x1 + x4").try_evaluate(&pt).unwrap().is_zero());
        let ctx = cubic();
        let n = ctx.as_ref().unwrap().gen();
        let pt = ProjectivePoint::new([n, NfElement::zero(), NfElement::one(), NfElement::zero()]).unwrap();
        let x2 = Polynomial::<NfElement>::var(1);
        assert!(x2.try_evaluate(&pt).unwrap().is_zero());
        assert!(ProjectivePoint::new([q(0), q(0), q(0), q(0)]).is_err());
    }

    #[test]
    fn projective_equality() {
        let q = |v: i64| Rational::from_integer(BigInt::from(v));
        let a = ProjectivePoint::new([q(1), q(2), q(0), q(3)]).unwrap();
        let b = ProjectivePoint::new([q(-2), q(-4), q(0), q(-6)]).unwrap();
        let c = ProjectivePoint::new([q(1), q(2), q(1), q(3)]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn exact_division() {
        let prod = &p("x1 + 2*x2") * &p("x3 - x4");
        assert_eq!(prod.div_exact(&p("x3 - x4")), Some(p("x1 + 2*x2")));
        assert_eq!(p("x1^2 + x2").div_exact(&p("x1")), None);
    }
}
