use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use ratrecon::counterexample::{nonrationality_report, slice_poly, CounterexampleTable, FIELD_NOTE};
use ratrecon::detinterp::{fit_ratfun, interp_point, DegreeProfile, DetInterpError, SampleSet1};
use ratrecon::expr::ExprOracle;
use ratrecon::hankel::{certify_rationality, SeriesPrefix, Verdict};
use ratrecon::slicerecon::{reconstruct, ReconConfig, ReconError, RecordingOracle, ReplayOracle, SliceOracle};
use ratrecon::{FieldDescriptor, RatFunN};

use crate::exit;
use crate::manifest::{InputDigest, RunManifest};
use crate::{Command, CounterexampleArgs, HankelArgs, InterpArgs, ReconstructArgs};

/// A failed command: exit code, error kind and message.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: exit::INPUT, kind: "input", message: message.into() }
    }
}

type Outcome = Result<(u8, Value), Failure>;

/// Runs a command; returns the exit code and the JSON document for stdout.
pub fn run(command: &Command) -> (u8, Value) {
    let (mut manifest, outcome) = match command {
        Command::Hankel(a) => with_manifest("hankel", |m| hankel(a, m)),
        Command::Interp(a) => with_manifest("interp", |m| interp(a, m)),
        Command::Reconstruct(a) => with_manifest("reconstruct", |m| reconstruct_cmd(a, m)),
        Command::Counterexample(a) => with_manifest("counterexample", |m| counterexample(a, m)),
    };
    manifest.inputs.sort_by(|a, b| a.name.cmp(&b.name));
    match outcome {
        Ok((code, result)) => (code, json!({ "manifest": manifest, "result": result })),
        Err(f) => {
            eprintln!("error: {}", f.message);
            (f.code, json!({ "manifest": manifest, "error": { "kind": f.kind, "message": f.message } }))
        }
    }
}

fn with_manifest(name: &'static str, f: impl FnOnce(&mut RunManifest) -> Outcome) -> (RunManifest, Outcome) {
    let mut m = RunManifest::new(name);
    let outcome = f(&mut m);
    (m, outcome)
}

fn read_input(path: &Path, manifest: &mut RunManifest) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    manifest.inputs.push(InputDigest::of(path.display().to_string(), &bytes));
    String::from_utf8(bytes).map_err(|_| Failure::input(format!("{} is not UTF-8", path.display())))
}

fn hankel(a: &HankelArgs, manifest: &mut RunManifest) -> Outcome {
    let text = read_input(&a.series, manifest)?;
    let series = SeriesPrefix::from_json(&text, a.field).map_err(|e| Failure::input(e.to_string()))?;
    manifest.field = Some(series.field().to_string());
    manifest.config = json!({ "lmax": a.lmax, "mmax": a.mmax });
    let cert = certify_rationality(&series, a.lmax, a.mmax).map_err(|e| Failure::input(e.to_string()))?;
    let code = match cert.verdict {
        Verdict::RationalWitness => exit::OK,
        Verdict::NoWitnessUpTo => exit::NO_WITNESS,
    };
    Ok((code, cert.to_json_value(series.field())))
}

fn detinterp_failure(e: DetInterpError) -> Failure {
    let (code, kind) = match e {
        DetInterpError::BetaZero => (exit::BETA_ZERO, "beta_zero"),
        DetInterpError::NoFit => (exit::NO_FIT, "no_fit"),
        DetInterpError::Ambiguous => (exit::NO_FIT, "ambiguous"),
        DetInterpError::SizeMismatch { .. } | DetInterpError::DegenerateInput(_) | DetInterpError::Parse(_) | DetInterpError::Field(_) => {
            (exit::INPUT, "input")
        }
        _ => (exit::RECONSTRUCTION_FAILED, "interpolation"),
    };
    Failure { code, kind, message: e.to_string() }
}

fn interp(a: &InterpArgs, manifest: &mut RunManifest) -> Outcome {
    let text = read_input(&a.samples, manifest)?;
    let is_json = a.samples.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let samples = if is_json {
        SampleSet1::from_json(&text, a.field)
    } else {
        SampleSet1::from_csv(&text, a.field.unwrap_or(FieldDescriptor::Rational))
    }
    .map_err(|e| Failure::input(e.to_string()))?;
    let field = samples.field();
    manifest.field = Some(field.to_string());
    manifest.config = json!({ "n": a.n, "m": a.m, "at": a.at, "fit": a.fit });

    if a.fit {
        let f = fit_ratfun(&samples, a.n, a.m).map_err(detinterp_failure)?;
        let text = RatFunN::from_ratfun1(&f, 1, 0).to_string();
        return Ok((exit::OK, json!({ "kind": "fit", "function": text, "samples_used": samples.len() })));
    }
    let at = a.at.as_deref().expect("clap enforces --at or --fit");
    let target = field.parse_element(at).map_err(|e| Failure::input(format!("--at {at}: {e}")))?;
    let profile = DegreeProfile::from_degrees(a.n, a.m);
    let need = profile.l + 1;
    if samples.len() < need {
        return Err(Failure::input(format!("need {need} samples for n = {}, m = {}, got {}", a.n, a.m, samples.len())));
    }
    let used = SampleSet1::new(field, samples.points()[..need].to_vec()).map_err(detinterp_failure)?;
    let value = interp_point(&used, &profile, &target).map_err(detinterp_failure)?;
    Ok((exit::OK, json!({ "kind": "value", "at": target.to_string(), "value": value.to_string(), "samples_used": need })))
}

fn recon_failure(e: ReconError) -> Failure {
    let (code, kind) = match &e {
        ReconError::VerificationFailed { .. } => (exit::VERIFICATION_FAILED, "verification_failed"),
        ReconError::Replay(_) | ReconError::ArityMismatch { .. } | ReconError::Field(_) => (exit::INPUT, "input"),
        ReconError::TooManyFailures { .. } => (exit::RECONSTRUCTION_FAILED, "too_many_failures"),
        ReconError::AnchorSearchFailed { .. } => (exit::RECONSTRUCTION_FAILED, "anchor_search_failed"),
        _ => (exit::RECONSTRUCTION_FAILED, "reconstruction_failed"),
    };
    Failure { code, kind, message: e.to_string() }
}

fn reconstruct_cmd(a: &ReconstructArgs, manifest: &mut RunManifest) -> Outcome {
    let cfg = ReconConfig {
        samples_per_class: a.samples_per_class,
        max_degree: a.max_degree,
        validation_extra: a.validation_extra,
        verify_trials: a.verify_trials,
        height_bound: a.height_bound,
        seed: a.seed,
    };
    manifest.field = Some(a.field.to_string());
    manifest.seed = Some(a.seed);
    manifest.config = json!({
        "arity": a.arity,
        "samples_per_class": cfg.samples_per_class,
        "max_degree": cfg.max_degree,
        "validation_extra": cfg.validation_extra,
        "verify_trials": cfg.verify_trials,
        "height_bound": cfg.height_bound,
    });
    if a.arity == 0 {
        return Err(Failure::input("--arity must be at least 1"));
    }
    let oracle: Box<dyn SliceOracle> = match (&a.expr, &a.oracle_replay) {
        (Some(src), _) => {
            manifest.inputs.push(InputDigest::of("expr", src.as_bytes()));
            Box::new(ExprOracle::parse(src, a.field, a.arity).map_err(|e| Failure::input(format!("--expr: {e}")))?)
        }
        (None, Some(path)) => {
            let text = read_input(path, manifest)?;
            let replay = ReplayOracle::from_csv(&text, a.field).map_err(recon_failure)?;
            if replay.arity() != a.arity {
                return Err(Failure::input(format!("replay table has arity {}, --arity is {}", replay.arity(), a.arity)));
            }
            Box::new(replay)
        }
        (None, None) => unreachable!("clap requires an oracle"),
    };
    let recorder = a.record.as_ref().map(|_| RecordingOracle::new(oracle.as_ref()));
    let active: &dyn SliceOracle = match &recorder {
        Some(r) => r,
        None => oracle.as_ref(),
    };
    let outcome = reconstruct(active, &cfg);
    if let (Some(path), Some(r)) = (&a.record, &recorder) {
        fs::write(path, r.to_csv()).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    let report = outcome.map_err(recon_failure)?;
    let t = report.total_timings();
    eprintln!(
        "timings (summed over recursion): classify {:?}, anchors {:?}, assemble {:?}, verify {:?}",
        t.classify, t.anchors, t.assemble, t.verify
    );
    Ok((exit::OK, report.to_json_value()))
}

fn counterexample(a: &CounterexampleArgs, manifest: &mut RunManifest) -> Outcome {
    manifest.field = Some("q".into());
    manifest.config = json!({ "n": a.n, "dmax": a.dmax, "grid": a.grid });
    if a.n == 0 {
        return Err(Failure::input("--n must be at least 1"));
    }
    let table = CounterexampleTable::build(a.n);
    let symmetric = (0..a.n).all(|i| (0..i).all(|j| table.values[i][j] == table.values[j][i]));
    let slice_degrees: Vec<Value> = (0..a.n).map(|m| json!({ "m": m, "degree": slice_poly(m, a.n).degree() })).collect();
    let values: Vec<Vec<String>> = table.values.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect();
    let cert = nonrationality_report(a.dmax, a.grid).map_err(|e| Failure::input(e.to_string()))?;
    if let Some(path) = &a.csv {
        fs::write(path, table.to_csv()).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok((
        exit::OK,
        json!({
            "kind": "counterexample",
            "field_note": FIELD_NOTE,
            "table": {
                "size": a.n,
                "enumeration": table.enumeration.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "values": values,
                "symmetric": symmetric,
            },
            "slice_degrees": slice_degrees,
            "certificate": cert.to_json_value(),
        }),
    ))
}
