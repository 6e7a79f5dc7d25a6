use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::field::{FieldDescriptor, FieldElement};
use crate::hankel::byte_offset;

use super::DetInterpError;

/// Degree data of a univariate slice: mapping degree `d`, order at infinity
/// `e`, numerator degree `n`, denominator degree `m`, and `l = n + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub d: usize,
    pub e: i64,
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl DegreeProfile {
    pub fn from_degrees(n: usize, m: usize) -> Self {
        DegreeProfile { d: n.max(m), e: n as i64 - m as i64, n, m, l: n + m }
    }

    /// `n = d + min(0, e)`, `m = d - max(0, e)`; `None` if either would be
    /// negative.
    pub fn from_class(d: usize, e: i64) -> Option<Self> {
        let n = d as i64 + e.min(0);
        let m = d as i64 - e.max(0);
        (n >= 0 && m >= 0).then(|| Self::from_degrees(n as usize, m as usize))
    }
}

/// Samples `(a_i, f(a_i))` with pairwise distinct abscissae.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet1 {
    field: FieldDescriptor,
    points: Vec<(FieldElement, FieldElement)>,
}

#[derive(Serialize, Deserialize)]
struct SampleSetJson {
    field: FieldDescriptor,
    points: Vec<(String, String)>,
}

impl SampleSet1 {
    pub fn new(field: FieldDescriptor, points: Vec<(FieldElement, FieldElement)>) -> Result<Self, DetInterpError> {
        if points.iter().any(|(a, v)| a.field() != field || v.field() != field) {
            return Err(DetInterpError::DegenerateInput("sample outside the field".into()));
        }
        let mut seen = HashSet::new();
        if !points.iter().all(|(a, _)| seen.insert(a)) {
            return Err(DetInterpError::DegenerateInput("repeated abscissa".into()));
        }
        Ok(SampleSet1 { field, points })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn points(&self) -> &[(FieldElement, FieldElement)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One `a, f(a)` pair per line; values are integers or `a/b`. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn from_csv(text: &str, field: FieldDescriptor) -> Result<Self, DetInterpError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut points = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| DetInterpError::Parse(e.to_string()))?;
            if record.len() != 2 {
                return Err(DetInterpError::Parse(format!("record {} has {} fields, expected 2", line + 1, record.len())));
            }
            let a = field.parse_element(&record[0])?;
            let v = field.parse_element(&record[1])?;
            points.push((a, v));
        }
        Self::new(field, points)
    }

    /// `{"field": "q", "points": [["1", "1"], ["2", "1/2"]]}`
    pub fn from_json(text: &str, field_override: Option<FieldDescriptor>) -> Result<Self, DetInterpError> {
        let raw: SampleSetJson = serde_json::from_str(text).map_err(|e| {
            DetInterpError::Parse(format!("malformed JSON at byte offset {}: {e}", byte_offset(text, e.line(), e.column())))
        })?;
        let field = field_override.unwrap_or(raw.field);
        let points = raw
            .points
            .iter()
            .map(|(a, v)| Ok((field.parse_element(a)?, field.parse_element(v)?)))
            .collect::<Result<Vec<_>, DetInterpError>>()?;
        Self::new(field, points)
    }

    pub fn to_csv(&self) -> String {
        self.points.iter().map(|(a, v)| format!("{a},{v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_arithmetic() {
        assert_eq!(DegreeProfile::from_degrees(0, 1), DegreeProfile { d: 1, e: -1, n: 0, m: 1, l: 1 });
        assert_eq!(DegreeProfile::from_degrees(2, 1), DegreeProfile { d: 2, e: 1, n: 2, m: 1, l: 3 });
        for n in 0..6 {
            for m in 0..6 {
                let p = DegreeProfile::from_degrees(n, m);
                assert_eq!(DegreeProfile::from_class(p.d, p.e), Some(p));
            }
        }
        assert_eq!(DegreeProfile::from_class(1, 3), None);
    }

    #[test]
    fn csv_and_json() {
        let q = FieldDescriptor::Rational;
        let s = SampleSet1::from_csv("# a, f(a)\n1, 1\n\n2, 1/2\n", q).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.points()[1].1, q.parse_element("1/2").unwrap());
        assert_eq!(SampleSet1::from_csv(&s.to_csv(), q).unwrap(), s);
        let j = SampleSet1::from_json(r#"{"field": "q", "points": [["1", "1"], ["2", "1/2"]]}"#, None).unwrap();
        assert_eq!(j, s);
        assert!(SampleSet1::from_csv("1,1\n1,2\n", q).is_err());
        assert!(SampleSet1::from_csv("1,1,1\n", q).is_err());
        assert!(SampleSet1::from_json("{", None).is_err());
    }
}
