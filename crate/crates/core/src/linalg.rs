//! Exact Gaussian elimination over a field.

use crate::field::FieldElement;

/// Reduced row echelon form. Returns the pivot column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<FieldElement>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{ v : A v = 0 }`, one vector per free column, with a 1 in that
/// free position.
pub fn nullspace(a: &[Vec<FieldElement>], cols: usize, zero: &FieldElement) -> Vec<Vec<FieldElement>> {
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); cols];
            v[f] = zero.one_like();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

/// A particular solution of `A x = b` with free variables set to zero, or
/// `None` when inconsistent.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement], cols: usize) -> Option<Vec<FieldElement>> {
    let zero = b.first().map(FieldElement::zero_like)?;
    let mut rows: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![zero; cols];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

/// Row space maintained incrementally; reports whether each added row
/// increases the rank.
#[derive(Debug, Clone)]
pub struct RankTracker {
    cols: usize,
    basis: Vec<(usize, Vec<FieldElement>)>,
}

impl RankTracker {
    pub fn new(cols: usize) -> Self {
        RankTracker { cols, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.cols
    }

    /// Reduces `row` against the current basis; returns true if it was
    /// independent and has been added.
    pub fn push(&mut self, mut row: Vec<FieldElement>) -> bool {
        for (pc, b) in &self.basis {
            if row[*pc].is_zero() {
                continue;
            }
            let factor = row[*pc].clone();
            for (v, bv) in row.iter_mut().zip(b) {
                if !bv.is_zero() {
                    *v = &*v - &(&factor * bv);
                }
            }
        }
        let Some(pc) = (0..self.cols).find(|&c| !row[c].is_zero()) else { return false };
        let inv = row[pc].inv().expect("nonzero");
        for v in row.iter_mut() {
            *v = &*v * &inv;
        }
        // keep the basis fully reduced so later reductions need one pass
        for (_, b) in self.basis.iter_mut() {
            if b[pc].is_zero() {
                continue;
            }
            let factor = b[pc].clone();
            for (v, rv) in b.iter_mut().zip(&row) {
                if !rv.is_zero() {
                    *v = &*v - &(&factor * rv);
                }
            }
        }
        self.basis.push((pc, row));
        true
    }
}
