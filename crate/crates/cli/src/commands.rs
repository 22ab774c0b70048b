use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use liltail::bounds::{bound_curve, BlockScaling, CurvePlan, ScalingMode, TailBoundCurve, Theorem, W_MARGIN};
use liltail::constants::{doob_factor, mixingale_coefficient, rosenthal_upper, MixingProfile, MixingaleValue, ROSENTHAL_C, ROSENTHAL_C_SYMMETRIC};
use liltail::entropy::{
    cl_norm, holder_example_envelope, nu_envelope_from_field, nu_p, ChainingParams, CoveringSpec, HolderExample, IndexedField,
    IndexedFieldJson, NuValue,
};
use liltail::envelope::{log_grid, EnvelopeJson, EnvelopeOptions, MomentEnvelope};
use liltail::grid::{lp_norm, mixed_norm, ExponentVector, GridFunction, GridFunctionJson, ProductSpace};
use liltail::partition::{geometric_partition, NormingSequence};
use liltail::simulate::{dominance_report, empirical_q, horizon_doubling, simulate, EmpiricalCurve, FieldSpec};

use crate::{BoundArgs, Command, CompareArgs, ConstantsArgs, EntropyArgs, NormArgs, ScalingArg, SimulateArgs, TheoremArg};

type CmdResult = Result<u8, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run(command: &Command) -> CmdResult {
    match command {
        Command::Norm(a) => norm(a),
        Command::Constants(a) => constants(a),
        Command::Bound(a) => bound(a),
        Command::Entropy(a) => entropy(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Compare(a) => compare(a),
    }
}

/// Parses a JSON file, naming the offending field on failure.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| format!("{}: invalid value at `{}`: {}", path.display(), e.path(), e.inner()))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(err)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, String> {
    File::create(path).map(BufWriter::new).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn open(path: &Path) -> Result<BufReader<File>, String> {
    File::open(path).map(BufReader::new).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse_number(s: &str) -> Result<f64, String> {
    match s.trim() {
        "e" => Ok(std::f64::consts::E),
        t => t.parse().map_err(|_| format!("not a number: {t:?}")),
    }
}

/// `a:b:n` to `n` log-spaced points; `e` stands for Euler's number.
pub fn parse_u_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("u grid must look like a:b:n, got {spec:?}"));
    };
    let (a, b) = (parse_number(a)?, parse_number(b)?);
    let n: usize = n.trim().parse().map_err(|_| format!("point count must be an integer, got {n:?}"))?;
    if !(a > 0.0 && b > a && n >= 2) {
        return Err(format!("u grid needs 0 < a < b and n >= 2, got {spec:?}"));
    }
    Ok(log_grid(a, b, n))
}

fn norm(a: &NormArgs) -> CmdResult {
    let f = GridFunction::try_from(read_json::<GridFunctionJson>(&a.field)?).map_err(err)?;
    let (kind, value) = if a.cl {
        let [p] = a.p.as_slice() else {
            return Err("--cl takes a single exponent".into());
        };
        let axes = f.space().axes();
        if axes.len() < 2 {
            return Err("--cl needs at least two axes, the last one indexing t".into());
        }
        let x = ProductSpace::new(axes[..axes.len() - 1].to_vec()).map_err(err)?;
        ("cl", cl_norm(f.values(), &x.flat_weights(), *p).map_err(err)?)
    } else if let [p] = a.p.as_slice() {
        ("lp", lp_norm(&f.flatten(), *p).map_err(err)?)
    } else {
        ("mixed", mixed_norm(&f, &ExponentVector::new(a.p.clone()).map_err(err)?).map_err(err)?)
    };
    write_json(None, &json!({ "kind": kind, "p": a.p, "norm": value }))?;
    Ok(0)
}

fn constants(a: &ConstantsArgs) -> CmdResult {
    let rosenthal = a
        .p
        .iter()
        .map(|&p| Ok(json!({ "p": p, "K_R": rosenthal_upper(p, a.symmetric).map_err(err)?, "symmetric": a.symmetric })))
        .collect::<Result<Vec<_>, String>>()?;
    let doob = a.l.iter().map(|&l| Ok(json!({ "L": l, "factor": doob_factor(l).map_err(err)? }))).collect::<Result<Vec<_>, String>>()?;
    let profile = match &a.mixing {
        Some(path) => read_json::<MixingProfile>(path)?,
        None => MixingProfile::geometric(a.beta_q).map_err(err)?,
    };
    let mixingale = a
        .m
        .iter()
        .map(|&m| {
            Ok(match mixingale_coefficient(m, &profile, 1e-15).map_err(err)? {
                MixingaleValue::Finite(v) => json!({ "m": m, "K_M": v, "divergent": false }),
                MixingaleValue::Divergent => json!({ "m": m, "K_M": null, "divergent": true }),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    write_json(
        None,
        &json!({
            "C_R": ROSENTHAL_C,
            "C_R_symmetric": ROSENTHAL_C_SYMMETRIC,
            "rosenthal": rosenthal,
            "doob": doob,
            "mixingale": mixingale,
        }),
    )?;
    Ok(0)
}

fn load_envelope(a: &BoundArgs) -> Result<MomentEnvelope, String> {
    match (&a.envelope, &a.spec) {
        (Some(path), _) => MomentEnvelope::from_json(&read_json::<EnvelopeJson>(path)?).map_err(err),
        (None, Some(path)) => read_json::<FieldSpec>(path)?.envelope(EnvelopeOptions::default(), None).map_err(err),
        (None, None) => Err("give --envelope or --spec".into()),
    }
}

fn bound(a: &BoundArgs) -> CmdResult {
    let env = load_envelope(a)?;
    let v = NormingSequence::iterated_log(a.norming).map_err(err)?;
    let us = parse_u_grid(&a.u_grid)?;
    let plan = if a.optimize {
        let mode = match a.scaling {
            ScalingArg::Blockwise => ScalingMode::Blockwise,
            ScalingArg::Uniform => ScalingMode::Uniform,
        };
        CurvePlan::Optimize { d_min: a.d_min, d_max: a.d_max, mode }
    } else {
        let scaling = match a.scaling {
            ScalingArg::Blockwise => BlockScaling::Blockwise,
            ScalingArg::Uniform => BlockScaling::Uniform { w: a.w.unwrap_or((a.d as f64).sqrt() - W_MARGIN) },
        };
        CurvePlan::Fixed { partition: geometric_partition(a.d, 64).map_err(err)?, scaling }
    };
    let theorem = match a.theorem {
        TheoremArg::G => Theorem::G,
        TheoremArg::F => Theorem::F,
        TheoremArg::Theta => Theorem::Theta,
    };
    let curve = bound_curve(&env, &v, &us, &plan, theorem).map_err(err)?;
    curve.write_csv(create(&a.out)?).map_err(err)?;
    if let Some(path) = &a.envelope_out {
        write_json(Some(path), &env.to_json())?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct EntropyRow {
    #[serde(rename = "Z")]
    z: f64,
    /// `null` when the chaining series diverges for every theta.
    nu: Option<f64>,
    #[serde(flatten)]
    value: NuValue,
}

fn entropy(a: &EntropyArgs) -> CmdResult {
    let mut params = ChainingParams::default();
    if !a.theta.is_empty() {
        params.thetas = a.theta.clone();
    }
    if !a.alpha.is_empty() {
        params.alphas = a.alpha.clone();
    }
    let rows: Vec<EntropyRow> = if let Some(path) = &a.holder {
        let ex: HolderExample = read_json(path)?;
        let rows = a.z.iter().map(|&z| ex.nu(z, &params).map(|v| row(z, v))).collect::<Result<_, _>>().map_err(err)?;
        if let Some(out) = &a.envelope_out {
            write_json(Some(out), &holder_example_envelope(ex, params.clone(), None).map_err(err)?.to_json())?;
        }
        rows
    } else {
        let path = a.field.as_ref().ok_or("give --field or --holder")?;
        let field = IndexedField::try_from(read_json::<IndexedFieldJson>(path)?).map_err(err)?;
        let p = a.p.ok_or("--p is required with --field")?;
        let covering = match &a.covering {
            Some(c) => read_json::<CoveringSpec>(c)?,
            None => CoveringSpec::Empirical,
        };
        let rows = a.z.iter().map(|&z| nu_p(&field, p, z, &covering, &params).map(|v| row(z, v))).collect::<Result<_, _>>().map_err(err)?;
        if let Some(out) = &a.envelope_out {
            write_json(Some(out), &nu_envelope_from_field(&field, p, covering, params.clone(), None).map_err(err)?.to_json())?;
        }
        rows
    };
    write_json(a.out.as_deref(), &rows)?;
    Ok(0)
}

fn row(z: f64, value: NuValue) -> EntropyRow {
    EntropyRow { z, nu: value.nu.is_finite().then_some(value.nu), value }
}

fn simulate_cmd(a: &SimulateArgs) -> CmdResult {
    let spec: FieldSpec = read_json(&a.spec)?;
    let us = parse_u_grid(&a.u_grid)?;
    let ens = simulate(&spec, a.n_max, a.trials, a.seed, a.r).map_err(err)?;
    empirical_q(&ens, &us).map_err(err)?.write_csv(create(&a.out)?).map_err(err)?;
    if a.horizon_check {
        let report = horizon_doubling(&spec, a.n_max, a.trials, a.seed, a.r).map_err(err)?;
        write_json(None, &report)?;
    }
    Ok(0)
}

fn compare(a: &CompareArgs) -> CmdResult {
    let emp = EmpiricalCurve::read_csv(open(&a.sim)?).map_err(|e| format!("{}: {e}", a.sim.display()))?;
    let bound = TailBoundCurve::read_csv(open(&a.bound)?).map_err(|e| format!("{}: {e}", a.bound.display()))?;
    let report = dominance_report(&emp, &bound).map_err(err)?;
    if let Some(path) = &a.out {
        write_json(Some(path), &report)?;
    }
    let mut stdout = std::io::stdout().lock();
    let verdict = if report.all_pass() { "PASS" } else { "FAIL" };
    writeln!(stdout, "{verdict}: {} rows, {} failures", report.rows.len(), report.failures.len()).map_err(err)?;
    for u in &report.failures {
        writeln!(stdout, "  fails at u = {u}").map_err(err)?;
    }
    Ok(if report.all_pass() { 0 } else { 2 })
}
