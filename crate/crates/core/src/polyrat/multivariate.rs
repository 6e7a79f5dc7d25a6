use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldDescriptor, FieldElement};

use super::{Poly1, PolyError, RatFun1};

pub type Exponents = Vec<u32>;

/// Graded lexicographic comparison: total degree first, then lex.
pub fn deglex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse polynomial in `nvars` variables. No zero coefficient is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyN {
    field: FieldDescriptor,
    nvars: usize,
    terms: BTreeMap<Exponents, FieldElement>,
}

impl PolyN {
    pub fn zero(field: FieldDescriptor, nvars: usize) -> Self {
        PolyN { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(field: FieldDescriptor, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    /// The variable `x_{index+1}`.
    pub fn var(field: FieldDescriptor, nvars: usize, index: usize) -> Self {
        Self::monomial(field.one(), nvars, index, 1)
    }

    /// `c * x_{index+1}^power`
    pub fn monomial(c: FieldElement, nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(e, c);
        p
    }

    pub fn from_terms(field: FieldDescriptor, nvars: usize, terms: impl IntoIterator<Item = (Exponents, FieldElement)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `index`.
    pub fn from_poly1(p: &Poly1, nvars: usize, index: usize) -> Self {
        let mut out = Self::zero(p.field(), nvars);
        for (i, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[index] = i as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Inverse of [`PolyN::from_poly1`]; `None` if another variable occurs.
    pub fn to_poly1(&self, index: usize) -> Option<Poly1> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != index && k > 0) {
                return None;
            }
            let k = e[index] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, self.field.zero());
            }
            coeffs[k] = c.clone();
        }
        Some(Poly1::new(self.field, coeffs))
    }

    /// The same polynomial viewed in `nvars >= self.nvars()` variables; the
    /// new variables come last.
    pub fn with_nvars(&self, nvars: usize) -> PolyN {
        assert!(nvars >= self.nvars, "cannot drop variables");
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e.resize(nvars, 0);
            (e, c.clone())
        });
        PolyN { field: self.field, nvars, terms: terms.collect() }
    }

    fn add_term(&mut self, e: Exponents, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Leading term under [`deglex`].
    pub fn leading_term(&self) -> Option<(&Exponents, &FieldElement)> {
        self.terms.iter().max_by(|a, b| deglex(a.0, b.0))
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "point arity");
        let mut powers: Vec<Vec<FieldElement>> = point.iter().map(|x| vec![x.one_like()]).collect();
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t = t * &powers[i][k];
            }
            acc = acc + t;
        }
        acc
    }

    pub fn scale(&self, s: &FieldElement) -> PolyN {
        if s.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        PolyN { field: self.field, nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul_monomial(&self, e: &[u32]) -> PolyN {
        PolyN {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyN {
        let mut acc = Self::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `var`: `out[k]` multiplies `x_var^k` and
    /// does not involve `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<PolyN> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Self::zero(self.field, self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    fn lc_in(&self, var: usize) -> PolyN {
        self.coeffs_in(var).pop().unwrap_or_else(|| Self::zero(self.field, self.nvars))
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &PolyN) -> Option<PolyN> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        // Lex order: the largest key of the BTreeMap is the leading monomial.
        let (dlead, dlc) = divisor.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let dlc_inv = dlc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.nvars);
        while let Some((rlead, rlc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if rlead.iter().zip(&dlead).any(|(r, d)| r < d) {
                return None;
            }
            let shift: Exponents = rlead.iter().zip(&dlead).map(|(r, d)| r - d).collect();
            let c = &rlc * &dlc_inv;
            rem = &rem - &divisor.mul_monomial(&shift).scale(&c);
            quot.add_term(shift, c);
        }
        Some(quot)
    }

    /// Canonical associate: over `Q`, integer coefficients with gcd 1 and a
    /// positive leading coefficient; over `F_p`, leading coefficient 1.
    pub fn unit_normal(&self) -> PolyN {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&unit_factor(self.terms.values(), lc)),
        }
    }

    /// Greatest common divisor, normalized by [`PolyN::unit_normal`].
    pub fn gcd(&self, other: &PolyN) -> PolyN {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.unit_normal();
        }
        if other.is_zero() {
            return self.unit_normal();
        }
        let main = (0..self.nvars).rev().find(|&v| self.degree_in(v).unwrap_or(0) > 0 || other.degree_in(v).unwrap_or(0) > 0);
        let v = match main {
            Some(v) => v,
            None => return Self::one(self.field, self.nvars),
        };
        let a_has = self.degree_in(v).unwrap_or(0) > 0;
        let b_has = other.degree_in(v).unwrap_or(0) > 0;
        if !a_has {
            return self.gcd(&other.content_in(v));
        }
        if !b_has {
            return self.content_in(v).gcd(other);
        }
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let c = ca.gcd(&cb);
        let mut f = self.exact_div(&ca).expect("content divides");
        let mut g = other.exact_div(&cb).expect("content divides");
        if f.degree_in(v) < g.degree_in(v) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = f.pseudo_rem(&g, v);
            f = g;
            if r.is_zero() {
                break;
            }
            if r.degree_in(v).unwrap_or(0) == 0 {
                f = Self::one(self.field, self.nvars);
                break;
            }
            g = r.primitive_part_in(v);
        }
        (&c * &f.primitive_part_in(v)).unit_normal()
    }

    /// gcd of the coefficients with respect to `var`.
    pub fn content_in(&self, var: usize) -> PolyN {
        let mut coeffs = self.coeffs_in(var).into_iter().filter(|c| !c.is_zero());
        let first = match coeffs.next() {
            Some(c) => c.unit_normal(),
            None => return Self::zero(self.field, self.nvars),
        };
        coeffs.fold(first, |acc, c| if acc.is_constant() { acc } else { acc.gcd(&c) })
    }

    pub fn primitive_part_in(&self, var: usize) -> PolyN {
        let c = self.content_in(var);
        self.exact_div(&c).expect("content divides").unit_normal()
    }

    /// `lc(g)^k * self mod g` in `var`, for some `k >= 0`.
    fn pseudo_rem(&self, g: &PolyN, var: usize) -> PolyN {
        let dg = g.degree_in(var).unwrap_or(0);
        let lcg = g.lc_in(var);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(var).unwrap();
            if dr < dg {
                break;
            }
            let lr = r.lc_in(var);
            let mut shift = vec![0; self.nvars];
            shift[var] = dr - dg;
            r = &(&lcg * &r) - &(&lr * &g.mul_monomial(&shift));
            // keep coefficients small; scaling by a unit does not change the gcd
            r = r.unit_normal();
        }
        r
    }

    /// Expanded text form with variables `x1..xn`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Scalar that makes the family `coeffs` canonical with respect to `lead`.
pub(crate) fn unit_factor<'a>(coeffs: impl Iterator<Item = &'a FieldElement>, lead: &FieldElement) -> FieldElement {
    match lead {
        FieldElement::Prime { .. } => lead.inv().expect("leading coefficient is nonzero"),
        FieldElement::Rational(_) => {
            let mut den_lcm = BigInt::one();
            let mut num_gcd = BigInt::zero();
            for c in coeffs {
                let r = c.as_rational().expect("rational coefficient");
                den_lcm = den_lcm.lcm(r.denom());
                num_gcd = num_gcd.gcd(r.numer());
            }
            let mut s = BigRational::new(den_lcm, num_gcd);
            if lead.is_negative() {
                s = -s;
            }
            FieldElement::Rational(s)
        }
    }
}

impl Add for &PolyN {
    type Output = PolyN;
    fn add(self, rhs: &PolyN) -> PolyN {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyN {
    type Output = PolyN;
    fn sub(self, rhs: &PolyN) -> PolyN {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        PolyN { field: self.field, nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

fn exponent_sum(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Mul for &PolyN {
    type Output = PolyN;
    fn mul(self, rhs: &PolyN) -> PolyN {
        let mut out = PolyN::zero(self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(exponent_sum(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| deglex(b.0, a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let (negative, magnitude) = coeff_parts(c);
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                .collect();
            if mono.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Sign and magnitude text for a coefficient; prime residues use the
/// symmetric representative.
fn coeff_parts(c: &FieldElement) -> (bool, String) {
    match c {
        FieldElement::Rational(r) => (r.is_negative(), r.abs().to_string()),
        FieldElement::Prime { .. } => {
            let v = c.symmetric_integer().expect("residue");
            (v.is_negative(), v.abs().to_string())
        }
    }
}

/// Multivariate rational function in canonical form.
///
/// Over `Q`, numerator and denominator have jointly coprime integer
/// coefficients and the denominator's leading term is positive; over `F_p`
/// that leading coefficient is 1. Equality is decided by cross
/// multiplication, so it stays sound even when `reduced` is false.
#[derive(Debug, Clone, Eq)]
pub struct RatFunN {
    num: PolyN,
    den: PolyN,
    reduced: bool,
}

impl PartialEq for RatFunN {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        self.num.nvars == other.num.nvars && self.num.field == other.num.field && &self.num * &other.den == &other.num * &self.den
    }
}

impl RatFunN {
    pub fn normalize(num: PolyN, den: PolyN) -> Result<RatFunN, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.field != den.field || num.nvars != den.nvars {
            return Err(PolyError::FieldMismatch);
        }
        if num.is_zero() {
            let one = PolyN::one(num.field, num.nvars);
            return Ok(RatFunN { num, den: one, reduced: true });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).ok_or(PolyError::GcdFailure)?;
        let den = den.exact_div(&g).ok_or(PolyError::GcdFailure)?;
        Ok(Self::canonical_scaling(num, den, true))
    }

    /// Keeps `num/den` without cancelling common factors.
    pub fn unreduced(num: PolyN, den: PolyN) -> Result<RatFunN, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self::canonical_scaling(num, den, false))
    }

    fn canonical_scaling(num: PolyN, den: PolyN, reduced: bool) -> RatFunN {
        let lead = den.leading_term().expect("nonzero denominator").1.clone();
        let s = unit_factor(num.terms.values().chain(den.terms.values()), &lead);
        RatFunN { num: num.scale(&s), den: den.scale(&s), reduced }
    }

    pub fn from_poly(p: PolyN) -> RatFunN {
        let one = PolyN::one(p.field, p.nvars);
        Self::canonical_scaling(p, one, true)
    }

    pub fn from_ratfun1(f: &RatFun1, nvars: usize, index: usize) -> RatFunN {
        Self::canonical_scaling(PolyN::from_poly1(f.num(), nvars, index), PolyN::from_poly1(f.den(), nvars, index), true)
    }

    pub fn zero(field: FieldDescriptor, nvars: usize) -> RatFunN {
        Self::from_poly(PolyN::zero(field, nvars))
    }

    pub fn num(&self) -> &PolyN {
        &self.num
    }

    pub fn den(&self) -> &PolyN {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn field(&self) -> FieldDescriptor {
        self.num.field
    }

    /// False when common factors were not (or could not be) cancelled.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            let shown: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            return Err(PolyError::UndefinedAt(format!("({})", shown.join(", "))));
        }
        Ok(self.num.eval(point).checked_div(&d)?)
    }

    pub fn add(&self, other: &RatFunN) -> Result<RatFunN, PolyError> {
        Self::normalize(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn sub(&self, other: &RatFunN) -> Result<RatFunN, PolyError> {
        Self::normalize(&(&self.num * &other.den) - &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn mul(&self, other: &RatFunN) -> Result<RatFunN, PolyError> {
        Self::normalize(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatFunN) -> Result<RatFunN, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Self::normalize(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn neg(&self) -> RatFunN {
        RatFunN { num: -&self.num, den: self.den.clone(), reduced: self.reduced }
    }

    pub fn pow(&self, e: u32) -> RatFunN {
        RatFunN { num: self.num.pow(e), den: self.den.pow(e), reduced: self.reduced }
    }

    /// Univariate view when only `index` occurs.
    pub fn to_ratfun1(&self, index: usize) -> Option<RatFun1> {
        RatFun1::normalize(self.num.to_poly1(index)?, self.den.to_poly1(index)?).ok()
    }
}

impl fmt::Display for RatFunN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> FieldDescriptor {
        FieldDescriptor::Prime(101)
    }

    fn x(field: FieldDescriptor, i: usize) -> PolyN {
        PolyN::var(field, 2, i)
    }

    fn c(field: FieldDescriptor, v: i64) -> PolyN {
        PolyN::constant(field.from_i64(v), 2)
    }

    #[test]
    fn text_format() {
        let q = FieldDescriptor::Rational;
        let num = &(&x(q, 0) * &x(q, 1)) + &c(q, 1);
        let den = &x(q, 0) - &x(q, 1);
        let f = RatFunN::normalize(num.clone(), den.clone()).unwrap();
        assert_eq!(f.to_string(), "(x1*x2 + 1)/(x1 - x2)");
        let g = RatFunN::normalize(num.scale(&q.from_i64(-2)), den.scale(&q.from_i64(-2))).unwrap();
        assert_eq!(g.to_string(), "(x1*x2 + 1)/(x1 - x2)");
        let h = RatFunN::normalize(num, den).unwrap();
        let fpv = RatFunN::normalize(&(&x(fp(), 0) * &x(fp(), 1)) + &c(fp(), 1), &x(fp(), 0) - &x(fp(), 1)).unwrap();
        assert_eq!(fpv.to_string(), h.to_string());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        for field in [FieldDescriptor::Rational, fp()] {
            let a = &x(field, 0) + &x(field, 1);
            let b = &(&x(field, 0) * &x(field, 0)) - &c(field, 3);
            let common = &(&x(field, 0) * &x(field, 1)) + &c(field, 1);
            let g = (&a * &common).gcd(&(&b * &common));
            assert_eq!(g, common.unit_normal());
            let f = RatFunN::normalize(&a * &common, &b * &common).unwrap();
            assert_eq!(f, RatFunN::normalize(a.clone(), b.clone()).unwrap());
            assert_eq!(f.num().total_degree(), Some(1));
            assert_eq!(f.den().total_degree(), Some(2));
        }
    }

    #[test]
    fn gcd_with_content() {
        let q = FieldDescriptor::Rational;
        // x1*(x2 + 1) and x1^2*(x2 + 1)*(x2 - 1)
        let a = &x(q, 0) * &(&x(q, 1) + &c(q, 1));
        let b = &(&a * &x(q, 0)) * &(&x(q, 1) - &c(q, 1));
        assert_eq!(a.gcd(&b), a.unit_normal());
        assert_eq!(c(q, 6).gcd(&c(q, 4)), c(q, 1));
        assert_eq!(x(q, 0).gcd(&x(q, 1)), c(q, 1));
    }

    #[test]
    fn exact_division() {
        let q = FieldDescriptor::Rational;
        let a = &x(q, 0) + &x(q, 1);
        let b = &a * &(&x(q, 0) - &c(q, 2));
        assert_eq!(b.exact_div(&a).unwrap(), &x(q, 0) - &c(q, 2));
        assert!(b.exact_div(&(&x(q, 1) + &c(q, 7))).is_none());
    }

    #[test]
    fn eval_undefined() {
        let q = FieldDescriptor::Rational;
        let f = RatFunN::normalize(&(&x(q, 0) * &x(q, 1)) + &c(q, 1), &x(q, 0) - &x(q, 1)).unwrap();
        let two = q.from_i64(2);
        assert!(matches!(f.eval(&[two.clone(), two.clone()]), Err(PolyError::UndefinedAt(_))));
        assert_eq!(f.eval(&[two, q.from_i64(3)]).unwrap(), q.from_i64(-7));
    }

    #[test]
    fn cross_multiplication_equality() {
        let q = FieldDescriptor::Rational;
        let a = RatFunN::unreduced(&x(q, 0) * &x(q, 1), &x(q, 0) * &x(q, 0)).unwrap();
        let b = RatFunN::normalize(x(q, 1), x(q, 0)).unwrap();
        assert!(!a.is_reduced());
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "(x2)/(x1)");
    }
}
