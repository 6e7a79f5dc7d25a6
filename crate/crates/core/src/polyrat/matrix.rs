use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use crate::field::FieldElement;

use super::{Poly1, PolyError, PolyN};

/// Dense row-major matrix over field elements or polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count");
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Minimal ring interface shared by scalar and polynomial entries.
pub trait RingElement: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElement for FieldElement {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        FieldElement::zero_like(self)
    }
    fn add(&self, other: &Self) -> Self {
        Add::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Mul::mul(self, other)
    }
    fn neg(&self) -> Self {
        Neg::neg(self)
    }
}

impl RingElement for PolyN {
    fn is_zero(&self) -> bool {
        PolyN::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        PolyN::zero(self.field(), self.nvars())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Fraction-free Gaussian elimination with row pivoting.
pub fn det_bareiss(m: &Matrix<FieldElement>) -> Result<FieldElement, PolyError> {
    if m.rows != m.cols {
        return Err(PolyError::NonSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Err(PolyError::EmptyMatrix);
    }
    let mut a = m.to_rows();
    let mut prev = a[0][0].one_like();
    let mut negate = false;
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(p) => p,
            None => return Ok(a[0][0].zero_like()),
        };
        if pivot != k {
            a.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.checked_div(&prev)?;
            }
            a[i][k] = a[i][k].zero_like();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Laplace expansion along rows, memoized on the set of remaining columns.
/// The row with the most zero entries is expanded first. `one` is returned
/// for the empty matrix.
pub fn det_cofactor<T: RingElement>(m: &Matrix<T>, one: &T) -> Result<T, PolyError> {
    if m.rows != m.cols {
        return Err(PolyError::NonSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(one.clone());
    }
    if n > 24 {
        return Err(PolyError::TooLarge(n));
    }
    // Move the sparsest row to the top; the row permutation sign is tracked.
    let zeros = |i: usize| m.row(i).iter().filter(|x| x.is_zero()).count();
    let first = (0..n).max_by_key(|&i| (zeros(i), std::cmp::Reverse(i))).unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    order.remove(first);
    order.insert(0, first);
    let negate = first % 2 == 1;

    let mut memo: HashMap<u32, T> = HashMap::new();
    let full: u32 = (1u32 << n) - 1;
    let d = minor(m, &order, 0, full, one, &mut memo);
    Ok(if negate { d.neg() } else { d })
}

fn minor<T: RingElement>(m: &Matrix<T>, order: &[usize], depth: usize, cols: u32, one: &T, memo: &mut HashMap<u32, T>) -> T {
    if cols == 0 {
        return one.clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = order[depth];
    let mut acc = one.zero_like();
    let mut position = 0usize;
    for j in 0..m.cols {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = m.get(row, j);
        if !entry.is_zero() {
            let sub = minor(m, order, depth + 1, cols & !(1 << j), one, memo);
            if !sub.is_zero() {
                let term = entry.mul(&sub);
                acc = if position.is_multiple_of(2) { acc.add(&term) } else { acc.add(&term.neg()) };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Scalar or symbolic determinant, dispatched on the entry type.
pub trait Determinant {
    type Output;
    fn det_exact(&self) -> Result<Self::Output, PolyError>;
}

impl Determinant for Matrix<FieldElement> {
    type Output = FieldElement;
    fn det_exact(&self) -> Result<FieldElement, PolyError> {
        det_bareiss(self)
    }
}

impl Determinant for Matrix<PolyN> {
    type Output = PolyN;
    fn det_exact(&self) -> Result<PolyN, PolyError> {
        let first = self.entries.first().ok_or(PolyError::EmptyMatrix)?;
        det_cofactor(self, &PolyN::one(first.field(), first.nvars()))
    }
}

/// Sylvester matrix of size `deg p + deg q`: the first `deg q` rows hold
/// shifted coefficients of `p`, the next `deg p` rows those of `q`, highest
/// power first.
pub fn sylvester(p: &Poly1, q: &Poly1) -> Result<Matrix<FieldElement>, PolyError> {
    let dp = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    let dq = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    let size = dp + dq;
    let zero = p.field().zero();
    let mut rows = Vec::with_capacity(size);
    for (poly, count) in [(p, dq), (q, dp)] {
        let desc = poly.coeffs_descending();
        for shift in 0..count {
            let mut row = vec![zero.clone(); size];
            for (k, c) in desc.iter().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(Matrix { rows: size, cols: size, entries: rows.into_iter().flatten().collect() })
}

/// Sylvester matrix together with its determinant, the resultant.
pub fn sylvester_and_resultant(p: &Poly1, q: &Poly1) -> Result<(Matrix<FieldElement>, FieldElement), PolyError> {
    let s = sylvester(p, q)?;
    let r = if s.rows == 0 { p.field().one() } else { det_bareiss(&s)? };
    Ok((s, r))
}

pub fn resultant(p: &Poly1, q: &Poly1) -> Result<FieldElement, PolyError> {
    Ok(sylvester_and_resultant(p, q)?.1)
}

/// `prod_{i<j} (a_j - a_i)`; one for fewer than two points.
pub fn vandermonde_product(points: &[FieldElement]) -> Option<FieldElement> {
    let first = points.first()?;
    let mut acc = first.one_like();
    for j in 0..points.len() {
        for i in 0..j {
            acc = acc * (&points[j] - &points[i]);
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn mat(rows: &[&[i64]]) -> Matrix<FieldElement> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q().from_i64(v)).collect()).collect())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), q().one());
        assert_eq!(det_bareiss(&mat(&[&[1, 1], &[1, 2]])).unwrap(), q().one());
        assert_eq!(det_bareiss(&mat(&[&[1, 1, 2], &[1, 2, 3], &[2, 3, 5]])).unwrap(), q().zero());
        assert_eq!(det_bareiss(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q().from_i64(-1));
        assert!(matches!(det_bareiss(&mat(&[&[1, 2, 3]])), Err(PolyError::NonSquare(1, 3))));
    }

    #[test]
    fn cofactor_agrees_with_bareiss() {
        let m = mat(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 5, -3, 1], &[7, 0, 1, 1]]);
        assert_eq!(det_cofactor(&m, &q().one()).unwrap(), det_bareiss(&m).unwrap());
        // sparsest row is not the first one
        let m = mat(&[&[2, 1, 3], &[0, 0, 4], &[1, 5, 6]]);
        assert_eq!(det_cofactor(&m, &q().one()).unwrap(), det_bareiss(&m).unwrap());
    }

    #[test]
    fn resultant_examples() {
        let x_minus_3 = Poly1::from_i64s(q(), &[-3, 1]);
        let x2_plus_1 = Poly1::from_i64s(q(), &[1, 0, 1]);
        assert_eq!(resultant(&x_minus_3, &x2_plus_1).unwrap(), q().from_i64(10));
        let x2_minus_1 = Poly1::from_i64s(q(), &[-1, 0, 1]);
        let x_minus_2 = Poly1::from_i64s(q(), &[-2, 1]);
        let (s, r) = sylvester_and_resultant(&x2_minus_1, &x_minus_2).unwrap();
        assert_eq!(s, mat(&[&[1, 0, -1], &[1, -2, 0], &[0, 1, -2]]));
        assert_eq!(r, q().from_i64(3));
        assert!(resultant(&Poly1::zero(q()), &x_minus_2).is_err());
    }

    #[test]
    fn vandermonde() {
        let pts = |v: &[i64]| v.iter().map(|&x| q().from_i64(x)).collect::<Vec<_>>();
        assert_eq!(vandermonde_product(&pts(&[1, 2])).unwrap(), q().one());
        assert_eq!(vandermonde_product(&pts(&[0, 1, 2])).unwrap(), q().from_i64(2));
        assert_eq!(vandermonde_product(&pts(&[4, 1, 4])).unwrap(), q().zero());
    }
}
