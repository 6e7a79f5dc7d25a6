use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::detinterp::{detect_fit, interp_sign, DegreeProfile, SamplingBudget};
use crate::field::{derive_seed, seeded_rng, FieldDescriptor, FieldElement};
use crate::par;
use crate::polyrat::{Determinant, Matrix, PolyN, RatFunN};

use super::classify::{choose_anchors, classify_slices, dominant_class, SliceClassification};
use super::oracle::{slice, FixLast, SliceOracle};
use super::ReconError;

// Stream indices under a node's seed.
const STREAM_CLASSIFY: u64 = 0;
const STREAM_ANCHORS: u64 = 1;
const STREAM_CHILDREN: u64 = 2;
const STREAM_VERIFY: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconConfig {
    /// Slices classified per recursion level.
    pub samples_per_class: usize,
    pub max_degree: usize,
    pub validation_extra: usize,
    pub verify_trials: usize,
    pub height_bound: u64,
    pub seed: u64,
}

impl Default for ReconConfig {
    fn default() -> Self {
        ReconConfig { samples_per_class: 20, max_degree: 12, validation_extra: 6, verify_trials: 100, height_bound: 10, seed: 0 }
    }
}

impl ReconConfig {
    pub fn budget(&self) -> SamplingBudget {
        SamplingBudget { max_degree: self.max_degree, validation_extra: self.validation_extra, height_bound: self.height_bound, offset: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Verification {
    pub trials: usize,
    pub agreements: usize,
    pub undefined_skips: usize,
    pub mismatches: usize,
    /// The first trial point, in trial order, where the two sides differ.
    pub first_mismatch: Option<Vec<String>>,
}

/// Wall-clock time per phase of one recursion node. Kept out of the JSON
/// report so reports are reproducible byte for byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PhaseTimings {
    pub classify: Duration,
    pub anchors: Duration,
    pub recurse: Duration,
    pub assemble: Duration,
    pub verify: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconReport {
    pub field: FieldDescriptor,
    pub arity: usize,
    pub result: RatFunN,
    /// Profile of slices along the last variable; `None` when the result is zero.
    pub profile: Option<DegreeProfile>,
    /// `None` for one variable, where there is a single slice.
    pub classification: Option<SliceClassification>,
    pub anchors: Vec<FieldElement>,
    pub children: Vec<ReconReport>,
    pub verification: Verification,
    pub timings: PhaseTimings,
}

impl ReconReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let classification = self.classification.as_ref().map(|c| {
            let hist: Vec<_> = c.histogram.iter().map(|(&(d, e), &count)| json!({"d": d, "e": e, "count": count})).collect();
            json!({
                "axis": c.axis,
                "histogram": hist,
                "zero_slices": c.zero_slices,
                "failures": c.failures,
                "total": c.total,
            })
        });
        json!({
            "kind": "reconstruction",
            "field": self.field.to_string(),
            "arity": self.arity,
            "result": self.result.to_string(),
            "profile": self.profile,
            "classification": classification,
            "anchors": self.anchors.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "children": self.children.iter().map(ReconReport::to_json_value).collect::<Vec<_>>(),
            "verification": self.verification,
        })
    }

    /// Phase timings summed over this node and all descendants.
    pub fn total_timings(&self) -> PhaseTimings {
        let mut t = self.timings;
        for c in &self.children {
            let ct = c.total_timings();
            t.classify += ct.classify;
            t.anchors += ct.anchors;
            t.recurse += ct.recurse;
            t.assemble += ct.assemble;
            t.verify += ct.verify;
        }
        t
    }
}

/// Compares the oracle with `g` at `trials` random points, skipping points
/// where either side is undefined. Trial `j` draws from `derive_seed(seed, j)`.
pub fn verify_agreement(oracle: &dyn SliceOracle, g: &RatFunN, trials: usize, height_bound: u64, seed: u64) -> Verification {
    let field = oracle.field();
    let outcomes = par::map_indexed_if(oracle.is_serial(), trials, |j| {
        let mut rng = seeded_rng(derive_seed(seed, j as u64));
        let p: Vec<FieldElement> = (0..oracle.arity()).map(|_| field.random_element(&mut rng, height_bound)).collect();
        match (oracle.eval(&p), g.eval(&p)) {
            (Some(a), Ok(b)) => Some((a == b, p)),
            _ => None,
        }
    });
    let mut v = Verification { trials, ..Verification::default() };
    for o in outcomes {
        match o {
            Some((true, _)) => v.agreements += 1,
            Some((false, p)) => {
                v.mismatches += 1;
                if v.first_mismatch.is_none() {
                    v.first_mismatch = Some(p.iter().map(|x| x.to_string()).collect());
                }
            }
            None => v.undefined_skips += 1,
        }
    }
    v
}

/// Reconstructs the rational function behind `oracle`, recursing on the last
/// variable. The whole run is a function of `cfg` and the oracle.
pub fn reconstruct(oracle: &dyn SliceOracle, cfg: &ReconConfig) -> Result<ReconReport, ReconError> {
    if oracle.arity() == 0 {
        return Err(ReconError::ArityMismatch { expected: 1, got: 0 });
    }
    reconstruct_node(oracle, cfg, cfg.seed)
}

fn reconstruct_node(oracle: &dyn SliceOracle, cfg: &ReconConfig, seed: u64) -> Result<ReconReport, ReconError> {
    let k = oracle.arity();
    let field = oracle.field();
    let mut timings = PhaseTimings::default();
    let mut report = if k == 1 {
        let t = Instant::now();
        let mut rng = seeded_rng(derive_seed(seed, STREAM_CLASSIFY));
        let (f, profile) = detect_fit(&slice(oracle, 0, Vec::new()), &cfg.budget(), &mut rng)?;
        timings.classify = t.elapsed();
        ReconReport {
            field,
            arity: 1,
            result: RatFunN::from_ratfun1(&f, 1, 0),
            profile,
            classification: None,
            anchors: Vec::new(),
            children: Vec::new(),
            verification: Verification::default(),
            timings,
        }
    } else {
        reconstruct_step(oracle, cfg, seed, &mut timings)?
    };
    let t = Instant::now();
    let v = verify_agreement(oracle, &report.result, cfg.verify_trials, cfg.height_bound, derive_seed(seed, STREAM_VERIFY));
    report.timings.verify = t.elapsed();
    if v.mismatches > 0 {
        return Err(ReconError::VerificationFailed {
            trials: v.trials,
            mismatches: v.mismatches,
            point: v.first_mismatch.unwrap_or_default(),
            result: report.result.to_string(),
        });
    }
    report.verification = v;
    Ok(report)
}

fn reconstruct_step(oracle: &dyn SliceOracle, cfg: &ReconConfig, seed: u64, timings: &mut PhaseTimings) -> Result<ReconReport, ReconError> {
    let k = oracle.arity();
    let field = oracle.field();
    let axis = k - 1;

    let t = Instant::now();
    let classes = classify_slices(oracle, axis, cfg, derive_seed(seed, STREAM_CLASSIFY))?;
    timings.classify = t.elapsed();
    let largest = classes.histogram.values().copied().max().unwrap_or(0);
    if classes.zero_slices > largest {
        return Ok(ReconReport {
            field,
            arity: k,
            result: RatFunN::zero(field, k),
            profile: None,
            classification: Some(classes),
            anchors: Vec::new(),
            children: Vec::new(),
            verification: Verification::default(),
            timings: *timings,
        });
    }
    let (d, e) = dominant_class(&classes.histogram)?;
    let profile = DegreeProfile::from_class(d, e).expect("class of a fitted slice");

    let t = Instant::now();
    let mut rng = seeded_rng(derive_seed(seed, STREAM_ANCHORS));
    let anchors = choose_anchors(oracle, axis, &profile, cfg, &mut rng)?;
    timings.anchors = t.elapsed();

    let t = Instant::now();
    let child_seed = derive_seed(seed, STREAM_CHILDREN);
    let children = par::map_indexed_if(oracle.is_serial(), anchors.len(), |i| {
        let restricted = FixLast { oracle, value: anchors[i].clone() };
        reconstruct_node(&restricted, cfg, derive_seed(child_seed, i as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    timings.recurse = t.elapsed();

    let t = Instant::now();
    let restrictions: Vec<&RatFunN> = children.iter().map(|c| &c.result).collect();
    let result = assemble(&restrictions, &anchors, &profile, k)?;
    timings.assemble = t.elapsed();

    Ok(ReconReport {
        field,
        arity: k,
        result,
        profile: Some(profile),
        classification: Some(classes),
        anchors,
        children,
        verification: Verification::default(),
        timings: *timings,
    })
}

/// `sign * phi / psi`, where `phi` and `psi` are the interpolation
/// determinants with the last variable in the first row and the
/// restrictions `h_i = f(.., b_i)` in the data rows. Row `i` of both
/// matrices is multiplied by the denominator of `h_i`.
fn assemble(restrictions: &[&RatFunN], anchors: &[FieldElement], profile: &DegreeProfile, k: usize) -> Result<RatFunN, ReconError> {
    let (n, m, l) = (profile.n, profile.m, profile.l);
    debug_assert_eq!(restrictions.len(), l + 1);
    let field = anchors[0].field();
    let zero = PolyN::zero(field, k);
    let y_powers = |deg: usize| -> Vec<PolyN> {
        let mut row: Vec<PolyN> = (0..=deg as u32).map(|j| PolyN::monomial(field.one(), k, k - 1, j)).collect();
        row.resize(l + 2, zero.clone());
        row
    };
    let mut phi_rows = vec![y_powers(n)];
    let mut psi_rows = vec![y_powers(m)];
    for (h, b) in restrictions.iter().zip(anchors) {
        let row_factor = h.den().with_nvars(k);
        let num = h.num().with_nvars(k);
        let mut bp = field.one();
        let mut b_powers = Vec::with_capacity(n.max(m) + 1);
        for _ in 0..=n.max(m) {
            b_powers.push(bp.clone());
            bp = bp * b;
        }
        let plain: Vec<PolyN> = b_powers[..=n].iter().map(|c| row_factor.scale(c)).collect();
        let weighted: Vec<PolyN> = b_powers[..=m].iter().map(|c| num.scale(c)).collect();
        let phi_row: Vec<PolyN> = plain.iter().chain(&weighted).cloned().collect();
        let psi_row: Vec<PolyN> = weighted.into_iter().chain(plain).collect();
        // both rows carry the same factor, so it cancels in phi / psi
        assert_eq!(phi_row[0], psi_row[m + 1]);
        phi_rows.push(phi_row);
        psi_rows.push(psi_row);
    }
    let phi = Matrix::from_rows(phi_rows).det_exact()?;
    let psi = Matrix::from_rows(psi_rows).det_exact()?;
    if psi.is_zero() {
        return Err(ReconError::DegenerateAnchors);
    }
    let phi = if interp_sign(n, m) < 0 { -&phi } else { phi };
    Ok(RatFunN::normalize(phi, psi)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(field: FieldDescriptor, k: usize, i: usize) -> PolyN {
        PolyN::var(field, k, i)
    }

    fn xy_example(field: FieldDescriptor) -> RatFunN {
        let (x, y) = (var(field, 2, 0), var(field, 2, 1));
        RatFunN::normalize(&(&x * &y) + &PolyN::one(field, 2), &x - &y).unwrap()
    }

    #[test]
    fn roundtrip_over_f101() {
        let f = xy_example(FieldDescriptor::Prime(101));
        let r = reconstruct(&f, &ReconConfig::default()).unwrap();
        assert_eq!(r.result, f);
        assert_eq!(r.result.to_string(), f.to_string());
        let v = &r.verification;
        assert_eq!(v.agreements, v.trials - v.undefined_skips);
        assert_eq!(r.profile, Some(DegreeProfile::from_degrees(1, 1)));
    }

    #[test]
    fn cubic_example_polynomial() {
        let q = FieldDescriptor::Rational;
        let (z, w) = (var(q, 2, 0), var(q, 2, 1));
        let f = RatFunN::from_poly(&z.pow(3) + &(&z * &w.pow(3)));
        let r = reconstruct(&f, &ReconConfig { seed: 3, ..ReconConfig::default() }).unwrap();
        assert_eq!(r.result, f);
        assert!(r.result.den().is_constant());
    }

    #[test]
    fn zero_oracle() {
        let f = RatFunN::zero(FieldDescriptor::Rational, 2);
        let r = reconstruct(&f, &ReconConfig::default()).unwrap();
        assert!(r.result.is_zero());
        assert_eq!(r.profile, None);
    }

    #[test]
    fn univariate_base_case() {
        let q = FieldDescriptor::Rational;
        let x = var(q, 1, 0);
        let f = RatFunN::normalize(&x.pow(2) + &PolyN::one(q, 1), &x - &PolyN::one(q, 1)).unwrap();
        let r = reconstruct(&f, &ReconConfig::default()).unwrap();
        assert_eq!(r.result, f);
        assert_eq!(r.profile, Some(DegreeProfile { d: 2, e: 1, n: 2, m: 1, l: 3 }));
    }

    #[test]
    fn verification_counts() {
        let q = FieldDescriptor::Rational;
        let f = xy_example(q);
        let v = verify_agreement(&f, &f, 100, 10, 7);
        assert_eq!(v.agreements + v.undefined_skips, 100);
        assert_eq!(v.mismatches, 0);
        let g = f.add(&RatFunN::from_poly(PolyN::one(q, 2))).unwrap();
        let v = verify_agreement(&f, &g, 100, 10, 7);
        assert_eq!(v.agreements, 0);
        assert!(v.first_mismatch.is_some());
        assert_eq!(verify_agreement(&f, &f, 0, 10, 7), Verification::default());
    }

    #[test]
    fn same_seed_same_report() {
        let f = xy_example(FieldDescriptor::Rational);
        let cfg = ReconConfig { seed: 42, ..ReconConfig::default() };
        let a = reconstruct(&f, &cfg).unwrap().to_json_value().to_string();
        let b = reconstruct(&f, &cfg).unwrap().to_json_value().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn three_variables() {
        let q = FieldDescriptor::Rational;
        let (x, y, z) = (var(q, 3, 0), var(q, 3, 1), var(q, 3, 2));
        let num = &(&x * &z) + &y.pow(2);
        let den = &(&x + &z) + &PolyN::one(q, 3);
        let f = RatFunN::normalize(num, den).unwrap();
        let r = reconstruct(&f, &ReconConfig { seed: 5, ..ReconConfig::default() }).unwrap();
        assert_eq!(r.result, f);
        assert_eq!(r.children.len(), r.anchors.len());
        assert!(r.children.iter().all(|c| c.arity == 2 && !c.children.is_empty()));
    }
}
