use std::collections::BTreeMap;

use rand::Rng;

use crate::detinterp::{detect_fit, DegreeProfile, DetInterpError};
use crate::field::{derive_seed, seeded_rng, FieldElement};
use crate::par;

use super::engine::ReconConfig;
use super::oracle::{slice, SliceOracle};
use super::ReconError;

/// `(d, e)`: mapping degree and order at infinity of a slice.
pub type ClassKey = (usize, i64);

/// Fixed tuples redrawn when a slice turns out to be nowhere defined.
const SLICE_REDRAWS: usize = 10;

/// Probes per anchor candidate, and how many of them must be defined.
const ANCHOR_PROBES: usize = 20;
const ANCHOR_PROBES_DEFINED: usize = 19;
const ANCHOR_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceClassification {
    pub axis: usize,
    pub histogram: BTreeMap<ClassKey, usize>,
    pub zero_slices: usize,
    pub failures: usize,
    pub total: usize,
}

enum Outcome {
    Class(ClassKey),
    Zero,
    Failed,
}

fn random_tuple<R: Rng + ?Sized>(oracle: &dyn SliceOracle, len: usize, height: u64, rng: &mut R) -> Vec<FieldElement> {
    let field = oracle.field();
    (0..len).map(|_| field.random_element(rng, height)).collect()
}

/// Detects the profile of `cfg.samples_per_class` random slices along
/// `axis`. Slice `i` draws from its own stream `derive_seed(seed, i)`, so
/// the result does not depend on scheduling.
pub fn classify_slices(oracle: &dyn SliceOracle, axis: usize, cfg: &ReconConfig, seed: u64) -> Result<SliceClassification, ReconError> {
    let budget = cfg.budget();
    let total = cfg.samples_per_class;
    let outcomes = par::map_indexed_if(oracle.is_serial(), total, |i| {
        let mut rng = seeded_rng(derive_seed(seed, i as u64));
        for _ in 0..SLICE_REDRAWS {
            let fixed = random_tuple(oracle, oracle.arity() - 1, cfg.height_bound, &mut rng);
            match detect_fit(&slice(oracle, axis, fixed), &budget, &mut rng) {
                Ok((f, _)) if f.is_zero() => return Ok(Outcome::Zero),
                Ok((f, _)) => {
                    let (d, e) = f.degree_and_ord()?;
                    return Ok(Outcome::Class((d, e)));
                }
                Err(DetInterpError::DomainTooSparse(_)) => continue,
                Err(DetInterpError::BudgetExhausted(_)) => return Ok(Outcome::Failed),
                Err(e) => return Err(ReconError::from(e)),
            }
        }
        Ok(Outcome::Failed)
    });
    let mut out = SliceClassification { axis, histogram: BTreeMap::new(), zero_slices: 0, failures: 0, total };
    for o in outcomes {
        match o? {
            Outcome::Class(k) => *out.histogram.entry(k).or_default() += 1,
            Outcome::Zero => out.zero_slices += 1,
            Outcome::Failed => out.failures += 1,
        }
    }
    if out.failures * 5 > total {
        return Err(ReconError::TooManyFailures { failed: out.failures, total });
    }
    Ok(out)
}

/// The most frequent class; ties go to smaller `d`, then smaller `|e|`,
/// then nonnegative `e`.
pub fn dominant_class(hist: &BTreeMap<ClassKey, usize>) -> Result<ClassKey, ReconError> {
    hist.iter()
        .min_by_key(|(&(d, e), &count)| (std::cmp::Reverse(count), d, e.unsigned_abs(), e < 0))
        .map(|(&k, _)| k)
        .ok_or(ReconError::EmptyHistogram)
}

/// `profile.l + 1` distinct values for coordinate `axis` at which the oracle
/// is defined for at least 19 of 20 random completions.
pub fn choose_anchors<R: Rng + ?Sized>(
    oracle: &dyn SliceOracle,
    axis: usize,
    profile: &DegreeProfile,
    cfg: &ReconConfig,
    rng: &mut R,
) -> Result<Vec<FieldElement>, ReconError> {
    let field = oracle.field();
    let mut anchors: Vec<FieldElement> = Vec::with_capacity(profile.l + 1);
    for index in 0..=profile.l {
        let mut found = None;
        for _ in 0..ANCHOR_ATTEMPTS {
            let b = field.random_element(rng, cfg.height_bound);
            if anchors.contains(&b) {
                continue;
            }
            let defined = (0..ANCHOR_PROBES)
                .filter(|_| {
                    let mut p = random_tuple(oracle, oracle.arity() - 1, cfg.height_bound, rng);
                    p.insert(axis, b.clone());
                    oracle.eval(&p).is_some()
                })
                .count();
            if defined >= ANCHOR_PROBES_DEFINED {
                found = Some(b);
                break;
            }
        }
        anchors.push(found.ok_or(ReconError::AnchorSearchFailed { index })?);
    }
    Ok(anchors)
}
