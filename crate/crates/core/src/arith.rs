//! Exact scalars: the rationals and simple number fields `Q[n]/(f)`.
//!
//! Every algorithm in the crate is generic over [`Field`]. Two concrete
//! scalar types implement it: [`Rational`] (arbitrary precision fractions) and
//! [`NfElement`] (an element of a number field given by a monic minimal
//! polynomial).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;

/// Arbitrary precision rational number; always in lowest terms.
pub type Rational = BigRational;

/// Largest accepted degree of a minimal polynomial.
pub const DEFAULT_MAX_FIELD_DEGREE: usize = 8;

/// An exact field of coefficients.
///
/// `Context` carries whatever is needed to build elements that are not
/// derivable from `zero`/`one` (the generator of a number field).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    type Context: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn inv(&self) -> Result<Self, ArithError>;

    fn from_rational(ctx: &Self::Context, q: Rational) -> Self;

    /// Name and value of the adjoined generator, if any.
    fn generator(ctx: &Self::Context) -> Option<(String, Self)>;

    /// Whether the two operands live in the same field.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    /// The value as a rational number when it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    /// Sign used when printing a leading coefficient.
    fn prints_negative(&self) -> bool {
        self.to_rational().is_some_and(|q| q < Rational::zero())
    }

    fn from_int(ctx: &Self::Context, v: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(BigInt::from(v)))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
}

impl Field for Rational {
    type Context = ();

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_rational(_ctx: &(), q: Rational) -> Self {
        q
    }

    fn generator(_ctx: &()) -> Option<(String, Self)> {
        None
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `Q[n]/(f)` with `f` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    generator_name: String,
    /// Coefficients of `f`, lowest degree first; the last entry is 1.
    min_poly: Vec<Rational>,
}

impl NumberField {
    pub fn new(generator_name: impl Into<String>, min_poly: Vec<Rational>) -> Result<Self, ArithError> {
        Self::with_max_degree(generator_name, min_poly, DEFAULT_MAX_FIELD_DEGREE)
    }

    pub fn with_max_degree(
        generator_name: impl Into<String>,
        mut min_poly: Vec<Rational>,
        max_degree: usize,
    ) -> Result<Self, ArithError> {
        while min_poly.last().is_some_and(|c| c.is_zero()) {
            min_poly.pop();
        }
        let degree = min_poly.len().saturating_sub(1);
        if degree < 1 {
            return Err(ArithError::Descriptor("minimal polynomial must have degree at least 1".into()));
        }
        if degree > max_degree {
            return Err(ArithError::Descriptor(format!(
                "minimal polynomial degree {degree} exceeds the bound {max_degree}"
            )));
        }
        if !min_poly[degree].is_one() {
            return Err(ArithError::Descriptor("minimal polynomial must be monic".into()));
        }
        Ok(NumberField { generator_name: generator_name.into(), min_poly })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    /// Reduces a dense coefficient vector modulo the minimal polynomial.
    pub fn reduce(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let deg = self.degree();
        let mut work = coeffs.to_vec();
        for top in (deg..work.len()).rev() {
            let lead = std::mem::replace(&mut work[top], Rational::zero());
            if lead.is_zero() {
                continue;
            }
            // x^top = x^(top-deg) * x^deg and x^deg = -(f - x^deg)
            let shift = top - deg;
            for (i, c) in self.min_poly[..deg].iter().enumerate() {
                if !c.is_zero() {
                    work[shift + i] -= &lead * c;
                }
            }
        }
        work.resize(deg, Rational::zero());
        work
    }

    /// Field element from any coefficient vector (lowest degree first).
    pub fn element(self: &Arc<Self>, coeffs: &[Rational]) -> NfElement {
        NfElement { field: Some(self.clone()), coeffs: self.reduce(coeffs) }
    }

    pub fn gen(self: &Arc<Self>) -> NfElement {
        let mut c = vec![Rational::zero(); 2];
        c[1] = Rational::one();
        self.element(&c)
    }

    pub fn to_expr_string(&self) -> String {
        dense_to_string(&self.min_poly, &self.generator_name)
    }
}

/// Canonical reduction of `coeffs` modulo `f`; errors when `f` is not monic.
pub fn nf_reduce(coeffs: &[Rational], min_poly: &[Rational]) -> Result<Vec<Rational>, ArithError> {
    let field = NumberField::with_max_degree("n", min_poly.to_vec(), usize::MAX)?;
    Ok(field.reduce(coeffs))
}

/// Element of a number field.
///
/// `field == None` marks a rational constant that has not been tied to a
/// particular field yet (this is what `zero()` and `one()` produce); it
/// combines with elements of any field.
#[derive(Clone)]
pub struct NfElement {
    field: Option<Arc<NumberField>>,
    coeffs: Vec<Rational>,
}

impl NfElement {
    pub fn rational(q: Rational) -> Self {
        NfElement { field: None, coeffs: vec![q] }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Dense coefficients of `1, n, ..., n^(deg-1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.coeffs.clone()
    }

    fn padded(&self, len: usize) -> Vec<Rational> {
        let mut c = self.coeffs.clone();
        c.resize(len.max(c.len()), Rational::zero());
        c
    }

    fn join(&self, other: &Self) -> Result<Option<Arc<NumberField>>, ArithError> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => {
                if Arc::ptr_eq(a, b) || a == b {
                    Ok(Some(a.clone()))
                } else {
                    Err(ArithError::DescriptorMismatch)
                }
            }
            (Some(a), None) | (None, Some(a)) => Ok(Some(a.clone())),
            (None, None) => Ok(None),
        }
    }

    fn build(field: Option<Arc<NumberField>>, coeffs: Vec<Rational>) -> Self {
        match field {
            Some(f) => {
                let coeffs = f.reduce(&coeffs);
                NfElement { field: Some(f), coeffs }
            }
            None => NfElement { field: None, coeffs },
        }
    }

    fn width(field: &Option<Arc<NumberField>>) -> usize {
        field.as_ref().map_or(1, |f| f.degree())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let field = self.join(other)?;
        let w = Self::width(&field);
        let (a, b) = (self.padded(w), other.padded(w));
        Ok(Self::build(field, a.iter().zip(&b).map(|(x, y)| x + y).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let field = self.join(other)?;
        let mut prod = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::build(field, prod))
    }

    /// Inverse via the extended Euclidean algorithm against the minimal polynomial.
    pub fn checked_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let field = match &self.field {
            None => return Ok(NfElement::rational(self.coeffs[0].recip())),
            Some(f) => f.clone(),
        };
        let (g, s) = ext_gcd(&trimmed(&self.coeffs), &trimmed(field.min_poly()));
        if g.len() != 1 {
            return Err(ArithError::ReducibleMinimalPolynomial);
        }
        let scale = g[0].recip();
        let s: Vec<Rational> = s.iter().map(|c| c * &scale).collect();
        Ok(field.element(&s))
    }
}

impl Field for NfElement {
    type Context = Option<Arc<NumberField>>;

    fn inv(&self) -> Result<Self, ArithError> {
        self.checked_inv()
    }

    fn from_rational(ctx: &Self::Context, q: Rational) -> Self {
        match ctx {
            Some(f) => f.element(&[q]),
            None => NfElement::rational(q),
        }
    }

    fn generator(ctx: &Self::Context) -> Option<(String, Self)> {
        ctx.as_ref().map(|f| (f.generator_name().to_string(), f.gen()))
    }

    fn compatible(&self, other: &Self) -> bool {
        self.join(other).is_ok()
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn prints_negative(&self) -> bool {
        let nonzero: Vec<&Rational> = self.coeffs.iter().filter(|c| !c.is_zero()).collect();
        nonzero.len() == 1 && *nonzero[0] < Rational::zero()
    }
}

fn trimmed(v: &[Rational]) -> Vec<Rational> {
    let mut v = v.to_vec();
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(Rational::zero());
    }
    v
}

fn is_zero_poly(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn poly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    let len = (q.len() + b.len()).saturating_sub(1).max(a.len());
    out.resize(len, Rational::zero());
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trimmed(&out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trimmed(b);
    let mut r = trimmed(a);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while !is_zero_poly(&r) && r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] += c;
        r = trimmed(&r);
    }
    (trimmed(&q), r)
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)` up to a unit.
fn ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trimmed(a), trimmed(b));
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for NfElement {
    fn eq(&self, other: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.field, &other.field) {
            if !(Arc::ptr_eq(a, b) || a == b) {
                return false;
            }
        }
        let w = self.coeffs.len().max(other.coeffs.len());
        self.padded(w) == other.padded(w)
    }
}

impl Zero for NfElement {
    fn zero() -> Self {
        NfElement::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for NfElement {
    fn one() -> Self {
        NfElement::rational(Rational::one())
    }
}

impl Neg for NfElement {
    type Output = NfElement;

    fn neg(self) -> NfElement {
        NfElement { field: self.field, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Add for NfElement {
    type Output = NfElement;

    /// Panics on a field mismatch; use [`NfElement::checked_add`] to handle it.
    fn add(self, rhs: NfElement) -> NfElement {
        self.checked_add(&rhs).expect("number field mismatch")
    }
}

impl Sub for NfElement {
    type Output = NfElement;

    fn sub(self, rhs: NfElement) -> NfElement {
        self.checked_sub(&rhs).expect("number field mismatch")
    }
}

impl Mul for NfElement {
    type Output = NfElement;

    fn mul(self, rhs: NfElement) -> NfElement {
        self.checked_mul(&rhs).expect("number field mismatch")
    }
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElement({self})")
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.field.as_ref().map_or("n", |fld| fld.generator_name());
        f.write_str(&dense_to_string(&self.coeffs, name))
    }
}

/// Prints a dense univariate polynomial, highest degree first, e.g. `-2*n^2 - n - 1`.
pub fn dense_to_string(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational::zero();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if power.is_empty() {
            out.push_str(&rational_to_string(&abs));
        } else if abs.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{}*{}", rational_to_string(&abs), power));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
