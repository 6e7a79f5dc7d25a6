use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{FieldDescriptor, FieldElement};

use super::PolyError;

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`. The highest
/// stored coefficient is nonzero, and the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly1 {
    field: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl Poly1 {
    pub fn zero(field: FieldDescriptor) -> Self {
        Poly1 { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::constant(field.one())
    }

    /// `x - a`
    pub fn linear(a: &FieldElement) -> Self {
        Self::new(a.field(), vec![-a, a.one_like()])
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn new(field: FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly1 { field, coeffs }
    }

    pub fn from_i64s(field: FieldDescriptor, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `x^i` coefficient, zero past the end.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| acc * a + c)
    }

    pub fn scale(&self, s: &FieldElement) -> Poly1 {
        Self::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly1 {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly1) -> Result<(Poly1, Poly1), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lc_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly1::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly1::new(self.field, quot), Poly1::new(self.field, rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, e: usize) -> Poly1 {
        (0..e).fold(Poly1::one(self.field), |acc, _| &acc * self)
    }

    /// Random polynomial of exactly `degree`, coefficients drawn with
    /// [`FieldDescriptor::random_element`].
    pub fn random<R: rand::Rng + ?Sized>(field: FieldDescriptor, rng: &mut R, degree: usize, height_bound: u64) -> Poly1 {
        let mut coeffs: Vec<FieldElement> = (0..degree).map(|_| field.random_element(rng, height_bound)).collect();
        coeffs.push(field.random_nonzero(rng, height_bound));
        Poly1::new(field, coeffs)
    }

    /// Coefficients from the highest power down, as used for Sylvester rows.
    pub fn coeffs_descending(&self) -> Vec<FieldElement> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new(self.field, (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        self + &(-rhs)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly1::new(self.field, out)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::PolyN::from_poly1(self, 1, 0))
    }
}

/// Univariate rational function in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun1 {
    num: Poly1,
    den: Poly1,
}

impl RatFun1 {
    /// Cancels the gcd and makes the denominator monic. The zero function
    /// becomes `0/1`.
    pub fn normalize(num: Poly1, den: Poly1) -> Result<RatFun1, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.field() != den.field() {
            return Err(PolyError::FieldMismatch);
        }
        if num.is_zero() {
            return Ok(RatFun1 { den: Poly1::one(num.field()), num });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        let lc_inv = den.leading().unwrap().inv()?;
        Ok(RatFun1 { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn from_poly(p: Poly1) -> RatFun1 {
        let field = p.field();
        RatFun1 { num: p, den: Poly1::one(field) }
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn field(&self) -> FieldDescriptor {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `num(a) / den(a)`, or `UndefinedAt` when the denominator vanishes.
    pub fn eval(&self, a: &FieldElement) -> Result<FieldElement, PolyError> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(PolyError::UndefinedAt(a.to_string()));
        }
        Ok(self.num.eval(a).checked_div(&d)?)
    }

    /// Mapping degree `max(deg num, deg den)` and order at infinity
    /// `deg num - deg den`.
    pub fn degree_and_ord(&self) -> Result<(usize, i64), PolyError> {
        let n = self.num.degree().ok_or(PolyError::ZeroFunction)?;
        let m = self.den.degree().expect("denominator is nonzero");
        Ok((n.max(m), n as i64 - m as i64))
    }
}

impl fmt::Display for RatFun1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::RatFunN::from_ratfun1(self, 1, 0))
    }
}
