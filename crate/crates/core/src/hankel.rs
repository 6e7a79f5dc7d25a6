//! Hankel determinants of power-series prefixes, the truncated Kronecker
//! rationality test, Padé-style reconstruction and certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldDescriptor, FieldElement, FieldError};
use crate::linalg;
use crate::par;
use crate::polyrat::{det_bareiss, Matrix, Poly1, PolyError, RatFun1};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HankelError {
    #[error("series prefix has {have} coefficients, {need} needed")]
    PrefixTooShort { need: usize, have: usize },
    #[error("no denominator with nonzero constant term solves the system")]
    NoSolution,
    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,
    #[error("series prefix is empty")]
    Empty,
    #[error("coefficient field differs from the series field")]
    FieldMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficients `a_0..a_N` of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    field: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

#[derive(Serialize, Deserialize)]
struct SeriesPrefixJson {
    field: FieldDescriptor,
    coeffs: Vec<String>,
}

impl SeriesPrefix {
    pub fn new(field: FieldDescriptor, coeffs: Vec<FieldElement>) -> Result<Self, HankelError> {
        if coeffs.is_empty() {
            return Err(HankelError::Empty);
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(HankelError::FieldMismatch);
        }
        Ok(SeriesPrefix { field, coeffs })
    }

    pub fn from_i64s(field: FieldDescriptor, coeffs: &[i64]) -> Result<Self, HankelError> {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Parses `{"field": "q" | "fp:p", "coeffs": ["1", "-2/3", ...]}`.
    /// `field_override` replaces the field named in the document.
    pub fn from_json(text: &str, field_override: Option<FieldDescriptor>) -> Result<Self, SeriesJsonError> {
        let raw: SeriesPrefixJson = serde_json::from_str(text)
            .map_err(|e| SeriesJsonError::Json { offset: byte_offset(text, e.line(), e.column()), message: e.to_string() })?;
        let field = field_override.unwrap_or(raw.field);
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| field.parse_element(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| SeriesJsonError::Invalid(e.to_string()))?;
        Self::new(field, coeffs).map_err(|e| SeriesJsonError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesPrefixJson { field: self.field, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() })
            .expect("plain data serializes")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Index of the last coefficient.
    pub fn horizon(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn coeff(&self, i: isize) -> FieldElement {
        if i < 0 {
            self.field.zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesJsonError {
    #[error("malformed JSON at byte offset {offset}: {message}")]
    Json { offset: usize, message: String },
    #[error("invalid series: {0}")]
    Invalid(String),
}

/// Converts serde_json's 1-based line/column into a byte offset.
pub fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

/// `(m+1) x (m+1)` matrix with entry `(i, j) = a_{n+i+j}`.
pub fn hankel_matrix(s: &SeriesPrefix, n: usize, m: usize) -> Result<Matrix<FieldElement>, HankelError> {
    if n + 2 * m > s.horizon() {
        return Err(HankelError::PrefixTooShort { need: n + 2 * m + 1, have: s.coeffs.len() });
    }
    Ok(Matrix::from_fn(m + 1, m + 1, |i, j| s.coeffs[n + i + j].clone()))
}

/// All `(l, m)` with `l <= l_max`, `m <= m_max` such that every Hankel
/// determinant `H_n^m` with `l <= n <= N - 2m` vanishes, ordered by `m`
/// then `l`.
pub fn kronecker_scan(s: &SeriesPrefix, l_max: usize, m_max: usize) -> Result<Vec<(usize, usize)>, HankelError> {
    let horizon = s.horizon();
    if horizon < l_max + 2 * m_max {
        return Err(HankelError::PrefixTooShort { need: l_max + 2 * m_max + 1, have: s.coeffs.len() });
    }
    let pairs: Vec<(usize, usize)> = (0..=m_max).flat_map(|m| (0..=horizon - 2 * m).map(move |n| (m, n))).collect();
    let singular = par::map_indexed(pairs.len(), |k| {
        let (m, n) = pairs[k];
        det_bareiss(&hankel_matrix(s, n, m).expect("in range")).map(|d| d.is_zero())
    });
    let mut last_regular: Vec<Option<usize>> = vec![None; m_max + 1];
    for (&(m, n), sing) in pairs.iter().zip(singular) {
        if !sing? {
            last_regular[m] = Some(n);
        }
    }
    let mut out = Vec::new();
    for (m, last) in last_regular.iter().enumerate() {
        for l in 0..=l_max {
            if last.is_none_or(|r| l > r) {
                out.push((l, m));
            }
        }
    }
    Ok(out)
}

/// Solves `Q s = P mod t^(n+m+1)` with `Q(0) = 1`, `deg Q <= m`,
/// `deg P <= n`.
pub fn pade_reconstruct(s: &SeriesPrefix, n_deg: usize, m_deg: usize) -> Result<RatFun1, HankelError> {
    if s.horizon() < n_deg + m_deg + 1 {
        return Err(HankelError::PrefixTooShort { need: n_deg + m_deg + 2, have: s.coeffs.len() });
    }
    let field = s.field;
    let mut q = vec![field.one()];
    if m_deg > 0 {
        let rows: Vec<Vec<FieldElement>> =
            (n_deg + 1..=n_deg + m_deg).map(|k| (1..=m_deg).map(|j| s.coeff(k as isize - j as isize)).collect()).collect();
        let rhs: Vec<FieldElement> = (n_deg + 1..=n_deg + m_deg).map(|k| -&s.coeffs[k]).collect();
        let sol = linalg::solve(&rows, &rhs, m_deg).ok_or(HankelError::NoSolution)?;
        q.extend(sol);
    }
    let p: Vec<FieldElement> =
        (0..=n_deg).map(|k| (0..=k.min(m_deg)).fold(field.zero(), |acc, j| acc + &q[j] * &s.coeffs[k - j])).collect();
    Ok(RatFun1::normalize(Poly1::new(field, p), Poly1::new(field, q))?)
}

/// First `horizon + 1` Taylor coefficients at the origin.
pub fn series_of_ratfun(f: &RatFun1, horizon: usize) -> Result<SeriesPrefix, HankelError> {
    let q0 = f.den().coeff(0);
    if q0.is_zero() {
        return Err(HankelError::PoleAtOrigin);
    }
    let q0_inv = q0.inv()?;
    let mut c: Vec<FieldElement> = Vec::with_capacity(horizon + 1);
    for k in 0..=horizon {
        let mut v = f.num().coeff(k);
        for j in 1..=k.min(f.den().degree().unwrap_or(0)) {
            v = v - &f.den().coeff(j) * &c[k - j];
        }
        c.push(v * &q0_inv);
    }
    SeriesPrefix::new(f.field(), c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    RationalWitness,
    NoWitnessUpTo,
}

/// Outcome of [`certify_rationality`]. A witness is only reported after its
/// re-expansion matched every coefficient of the prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityCertificate {
    pub verdict: Verdict,
    pub l: usize,
    pub m: usize,
    pub witness: Option<RatFun1>,
    pub checked_prefix_length: usize,
    pub l_max: usize,
    pub m_max: usize,
}

#[derive(Serialize)]
struct SeriesForm {
    numerator: String,
    denominator: String,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    kind: &'static str,
    verdict: Verdict,
    field: FieldDescriptor,
    bounds: (usize, usize),
    l: usize,
    m: usize,
    witness: Option<String>,
    /// Witness scaled so the denominator has constant term 1.
    series_form: Option<SeriesForm>,
    checked_prefix_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

impl RationalityCertificate {
    pub fn to_json_value(&self, field: FieldDescriptor) -> serde_json::Value {
        let note = match self.verdict {
            Verdict::NoWitnessUpTo => Some("no rational witness within the degree bounds; this is not a proof of irrationality"),
            Verdict::RationalWitness => None,
        };
        serde_json::to_value(CertificateJson {
            kind: "rationality",
            verdict: self.verdict,
            field,
            bounds: (self.l_max, self.m_max),
            l: self.l,
            m: self.m,
            witness: self.witness.as_ref().map(|w| w.to_string()),
            series_form: self.witness.as_ref().map(|w| {
                let c = w.den().coeff(0).inv().expect("no pole at the origin");
                SeriesForm { numerator: w.num().scale(&c).to_string(), denominator: w.den().scale(&c).to_string() }
            }),
            checked_prefix_length: self.checked_prefix_length,
            note,
        })
        .expect("plain data serializes")
    }
}

/// Runs the Kronecker scan and tries to turn each candidate into a witness
/// whose expansion reproduces the entire prefix.
pub fn certify_rationality(s: &SeriesPrefix, l_max: usize, m_max: usize) -> Result<RationalityCertificate, HankelError> {
    let candidates = kronecker_scan(s, l_max, m_max)?;
    let horizon = s.horizon();
    for (l, m) in candidates {
        for n_deg in (l + m).saturating_sub(1)..=l_max + m_max {
            if horizon < n_deg + m + 1 {
                break;
            }
            let witness = match pade_reconstruct(s, n_deg, m) {
                Ok(w) => w,
                Err(HankelError::NoSolution) => continue,
                Err(e) => return Err(e),
            };
            if series_of_ratfun(&witness, horizon)?.coeffs == s.coeffs {
                return Ok(RationalityCertificate {
                    verdict: Verdict::RationalWitness,
                    l,
                    m,
                    witness: Some(witness),
                    checked_prefix_length: s.coeffs.len(),
                    l_max,
                    m_max,
                });
            }
        }
    }
    Ok(RationalityCertificate {
        verdict: Verdict::NoWitnessUpTo,
        l: l_max,
        m: m_max,
        witness: None,
        checked_prefix_length: s.coeffs.len(),
        l_max,
        m_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn fib(n: usize) -> Vec<i64> {
        let mut v = vec![1i64, 1];
        while v.len() < n {
            let k = v.len();
            v.push(v[k - 1] + v[k - 2]);
        }
        v.truncate(n);
        v
    }

    fn squares_exponent(horizon: usize) -> SeriesPrefix {
        let c: Vec<i64> = (0..=horizon).map(|i| i64::from((0..=i).any(|r| r * r == i))).collect();
        SeriesPrefix::from_i64s(q(), &c).unwrap()
    }

    #[test]
    fn hankel_indexing() {
        let s = SeriesPrefix::from_i64s(q(), &fib(7)).unwrap();
        let m = |rows: &[&[i64]]| Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q().from_i64(v)).collect()).collect());
        assert_eq!(hankel_matrix(&s, 0, 1).unwrap(), m(&[&[1, 1], &[1, 2]]));
        assert_eq!(hankel_matrix(&s, 1, 1).unwrap(), m(&[&[1, 2], &[2, 3]]));
        assert_eq!(hankel_matrix(&s, 0, 2).unwrap(), m(&[&[1, 1, 2], &[1, 2, 3], &[2, 3, 5]]));
        assert!(matches!(hankel_matrix(&s, 3, 2), Err(HankelError::PrefixTooShort { .. })));
    }

    #[test]
    fn scan_fibonacci() {
        let s = SeriesPrefix::from_i64s(q(), &fib(21)).unwrap();
        let c = kronecker_scan(&s, 3, 3).unwrap();
        assert!(c.contains(&(0, 2)));
        assert!(!c.iter().any(|&(_, m)| m < 2));
        // Cassini: every 2x2 Hankel determinant is +-1
        for n in 0..=18 {
            let d = det_bareiss(&hankel_matrix(&s, n, 1).unwrap()).unwrap();
            assert!(d == q().one() || d == -q().one());
        }
    }

    #[test]
    fn scan_geometric_and_squares() {
        let s = SeriesPrefix::from_i64s(q(), &[1; 10]).unwrap();
        assert_eq!(kronecker_scan(&s, 2, 1).unwrap()[0], (0, 1));
        assert!(kronecker_scan(&squares_exponent(30), 3, 3).unwrap().is_empty());
        assert!(matches!(kronecker_scan(&squares_exponent(5), 3, 3), Err(HankelError::PrefixTooShort { .. })));
    }

    #[test]
    fn pade_examples() {
        let s = SeriesPrefix::from_i64s(q(), &[1; 5]).unwrap();
        let f = pade_reconstruct(&s, 0, 1).unwrap();
        assert_eq!(f, RatFun1::normalize(Poly1::from_i64s(q(), &[1]), Poly1::from_i64s(q(), &[1, -1])).unwrap());

        let s = SeriesPrefix::from_i64s(q(), &fib(6)).unwrap();
        let f = pade_reconstruct(&s, 1, 2).unwrap();
        let den = f.den().scale(&f.den().coeff(0).inv().unwrap());
        assert_eq!(den, Poly1::from_i64s(q(), &[1, -1, -1]));

        let s = SeriesPrefix::from_i64s(q(), &[0; 6]).unwrap();
        assert!(pade_reconstruct(&s, 2, 2).unwrap().is_zero());
    }

    #[test]
    fn series_expansion() {
        let f = RatFun1::normalize(Poly1::from_i64s(q(), &[1]), Poly1::from_i64s(q(), &[1, -1])).unwrap();
        assert_eq!(series_of_ratfun(&f, 4).unwrap(), SeriesPrefix::from_i64s(q(), &[1; 5]).unwrap());
        let inv_x = RatFun1::normalize(Poly1::from_i64s(q(), &[1]), Poly1::from_i64s(q(), &[0, 1])).unwrap();
        assert_eq!(series_of_ratfun(&inv_x, 2), Err(HankelError::PoleAtOrigin));
    }

    #[test]
    fn certificates() {
        let s = SeriesPrefix::from_i64s(q(), &fib(21)).unwrap();
        let c = certify_rationality(&s, 5, 5).unwrap();
        assert_eq!(c.verdict, Verdict::RationalWitness);
        let w = c.witness.unwrap();
        assert_eq!(w.den().scale(&w.den().coeff(0).inv().unwrap()), Poly1::from_i64s(q(), &[1, -1, -1]));

        let c = certify_rationality(&squares_exponent(40), 4, 4).unwrap();
        assert_eq!(c.verdict, Verdict::NoWitnessUpTo);
        assert!(c.witness.is_none());

        let f = RatFun1::normalize(Poly1::from_i64s(q(), &[1, 1]), Poly1::from_i64s(q(), &[1, -2])).unwrap();
        let c = certify_rationality(&series_of_ratfun(&f, 20).unwrap(), 3, 3).unwrap();
        assert_eq!(c.witness.unwrap(), f);
        assert_eq!((c.l, c.m), (1, 1));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let s = SeriesPrefix::from_json(r#"{"field": "q", "coeffs": ["1", "1/2", "-3"]}"#, None).unwrap();
        assert_eq!(s.coeffs()[1], q().parse_element("1/2").unwrap());
        assert_eq!(SeriesPrefix::from_json(&s.to_json(), None).unwrap(), s);
        let err = SeriesPrefix::from_json("{\"field\": \"q\",\n \"coeffs\": [1,", None).unwrap_err();
        assert!(matches!(err, SeriesJsonError::Json { .. }));
        let f7 = SeriesPrefix::from_json(r#"{"field": "q", "coeffs": ["1/3"]}"#, Some(FieldDescriptor::Prime(7))).unwrap();
        assert_eq!(f7.coeffs()[0], FieldDescriptor::Prime(7).from_i64(5));
    }
}
