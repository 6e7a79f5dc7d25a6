use std::collections::HashMap;
use std::sync::Mutex;

use crate::detinterp::UnivariateOracle;
use crate::field::{FieldDescriptor, FieldElement};
use crate::polyrat::RatFunN;

use super::ReconError;

/// A partial function `K^arity -> K`. `None` marks a point outside the
/// domain. Evaluation must be deterministic; oracles that cannot be called
/// from several threads at once return true from `is_serial`.
pub trait SliceOracle: Sync {
    fn arity(&self) -> usize;
    fn field(&self) -> FieldDescriptor;
    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement>;
    fn is_serial(&self) -> bool {
        false
    }
}

impl SliceOracle for RatFunN {
    fn arity(&self) -> usize {
        self.nvars()
    }

    fn field(&self) -> FieldDescriptor {
        RatFunN::field(self)
    }

    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        RatFunN::eval(self, point).ok()
    }
}

impl<T: SliceOracle + ?Sized> SliceOracle for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn field(&self) -> FieldDescriptor {
        (**self).field()
    }

    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        (**self).eval(point)
    }

    fn is_serial(&self) -> bool {
        (**self).is_serial()
    }
}

/// `a |-> oracle(fixed[..axis], a, fixed[axis..])`
pub struct Slice<'a> {
    oracle: &'a dyn SliceOracle,
    axis: usize,
    fixed: Vec<FieldElement>,
}

pub fn slice<'a>(oracle: &'a dyn SliceOracle, axis: usize, fixed: Vec<FieldElement>) -> Slice<'a> {
    assert!(axis < oracle.arity(), "axis out of range");
    assert_eq!(fixed.len() + 1, oracle.arity(), "fixed tuple length");
    Slice { oracle, axis, fixed }
}

impl Slice<'_> {
    pub fn point(&self, a: &FieldElement) -> Vec<FieldElement> {
        let mut p = self.fixed.clone();
        p.insert(self.axis, a.clone());
        p
    }
}

impl UnivariateOracle for Slice<'_> {
    fn field(&self) -> FieldDescriptor {
        self.oracle.field()
    }

    fn eval(&self, a: &FieldElement) -> Option<FieldElement> {
        self.oracle.eval(&self.point(a))
    }
}

/// The restriction of an oracle to a fixed value of its last coordinate.
pub struct FixLast<'a> {
    pub oracle: &'a dyn SliceOracle,
    pub value: FieldElement,
}

impl SliceOracle for FixLast<'_> {
    fn arity(&self) -> usize {
        self.oracle.arity() - 1
    }

    fn field(&self) -> FieldDescriptor {
        self.oracle.field()
    }

    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        let mut p = point.to_vec();
        p.push(self.value.clone());
        self.oracle.eval(&p)
    }

    fn is_serial(&self) -> bool {
        self.oracle.is_serial()
    }
}

/// Answers from a recorded table; points not in the table are undefined.
#[derive(Debug, Clone)]
pub struct ReplayOracle {
    field: FieldDescriptor,
    arity: usize,
    table: HashMap<Vec<FieldElement>, Option<FieldElement>>,
}

impl ReplayOracle {
    /// One `x1, ..., xk, value` record per line; `value` may be `undefined`.
    /// Blank lines and `#` comments are skipped.
    pub fn from_csv(text: &str, field: FieldDescriptor) -> Result<Self, ReconError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut arity = None;
        let mut table = HashMap::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| ReconError::Replay(e.to_string()))?;
            if record.len() < 2 {
                return Err(ReconError::Replay(format!("record {} has fewer than two fields", i + 1)));
            }
            let k = record.len() - 1;
            if *arity.get_or_insert(k) != k {
                return Err(ReconError::Replay(format!("record {} has arity {k}, earlier records differ", i + 1)));
            }
            let point = record.iter().take(k).map(|s| field.parse_element(s)).collect::<Result<Vec<_>, _>>()?;
            let value = match &record[k] {
                "undefined" => None,
                s => Some(field.parse_element(s)?),
            };
            table.insert(point, value);
        }
        let arity = arity.ok_or_else(|| ReconError::Replay("empty table".into()))?;
        Ok(ReplayOracle { field, arity, table })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl SliceOracle for ReplayOracle {
    fn arity(&self) -> usize {
        self.arity
    }

    fn field(&self) -> FieldDescriptor {
        self.field
    }

    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        self.table.get(point).cloned().flatten()
    }
}

/// Passes calls through and remembers every distinct query.
pub struct RecordingOracle<'a> {
    inner: &'a dyn SliceOracle,
    log: Mutex<HashMap<Vec<FieldElement>, Option<FieldElement>>>,
}

impl<'a> RecordingOracle<'a> {
    pub fn new(inner: &'a dyn SliceOracle) -> Self {
        RecordingOracle { inner, log: Mutex::new(HashMap::new()) }
    }

    /// The recorded queries in a format [`ReplayOracle::from_csv`] reads,
    /// sorted so the output does not depend on call order.
    pub fn to_csv(&self) -> String {
        let log = self.log.lock().expect("log lock");
        let mut lines: Vec<String> = log
            .iter()
            .map(|(p, v)| {
                let mut fields: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                fields.push(v.as_ref().map_or_else(|| "undefined".to_string(), |x| x.to_string()));
                fields.join(",")
            })
            .collect();
        lines.sort();
        lines.into_iter().map(|l| l + "\n").collect()
    }
}

impl SliceOracle for RecordingOracle<'_> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn field(&self) -> FieldDescriptor {
        self.inner.field()
    }

    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        let v = self.inner.eval(point);
        self.log.lock().expect("log lock").insert(point.to_vec(), v.clone());
        v
    }

    fn is_serial(&self) -> bool {
        self.inner.is_serial()
    }
}
