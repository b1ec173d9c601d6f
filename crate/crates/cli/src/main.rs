//! `ptmetric`: metric operators and Hermitian counterparts from the command line.

mod model;
mod suite;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use model::ModelArgs;
use ptmetric::fock::{spectrum, SpectralReport};
use ptmetric::hamiltonian::{build_numeric, AlphaParams, Preset};
use ptmetric::perturb::{counterpart_series, solve_metric_series, Gauge};
use ptmetric::sph::{classification_report, classify, exact_counterpart, exact_metric, FamilyTag};
use ptmetric::{Error, GSeries, PhasePoly};

/// Exit statuses; see the README.
mod status {
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NO_FAMILY: u8 = 3;
    pub const NEEDS_PERTURBATIVE: u8 = 4;
    pub const PRECONDITION: u8 = 5;
    pub const NUMERIC: u8 = 6;
}

#[derive(Parser, Debug)]
#[command(name = "ptmetric", version, about = "Metric operators for cubic PT-symmetric Hamiltonians")]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GaugeArg {
    Inversion,
    ZeroKernel,
}

impl From<GaugeArg> for Gauge {
    fn from(g: GaugeArg) -> Self {
        match g {
            GaugeArg::Inversion => Gauge::Inversion,
            GaugeArg::ZeroKernel => Gauge::ZeroKernel,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Which exactly solvable families the parameters satisfy.
    Classify {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// The metric η²: closed form, or a g-series with `--perturbative`.
    Metric {
        #[command(flatten)]
        model: ModelArgs,
        /// Family to use when several apply.
        #[arg(long)]
        family: Option<FamilyTag>,
        #[arg(long)]
        perturbative: bool,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value = "inversion")]
        gauge: GaugeArg,
    },
    /// The Hermitian counterpart h = η ⋆ H ⋆ η⁻¹.
    Counterpart {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        family: Option<FamilyTag>,
        #[arg(long)]
        perturbative: bool,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value = "inversion")]
        gauge: GaugeArg,
    },
    /// Per-order record of the perturbative recursion.
    Perturb {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value = "inversion")]
        gauge: GaugeArg,
    },
    /// Lowest levels of the truncated Fock-space Hamiltonian.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Truncation dimension.
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
        /// Number of levels, at most N/4.
        #[arg(long, default_value_t = 8)]
        k: usize,
        /// Also diagonalize the Hermitian counterpart and compare levels.
        #[arg(long)]
        compare_counterpart: bool,
        /// Series order of the counterpart when no closed form applies.
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Run the check suite, or compare one named reference polynomial.
    Verify {
        #[arg(long)]
        golden: Option<String>,
    },
    /// List the named models.
    Presets,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Config { .. } | Error::Parse { .. } | Error::UnknownPreset(_) | Error::MissingPresetParam { .. } => {
                status::USAGE
            }
            Error::Eigen(_) | Error::ExpNonConvergence | Error::DimensionTooSmall { .. } => status::NUMERIC,
            _ => status::PRECONDITION,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<(Value, String, u8), Failure>;

fn poly_json(f: &PhasePoly) -> Value {
    json!({ "render": f.render(), "terms": f.to_records() })
}

fn series_json(s: &GSeries) -> Value {
    Value::Array(s.coeffs().iter().map(poly_json).collect())
}

fn series_text(label: &str, s: &GSeries) -> String {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| format!("{label}{n} = {}", c.render()))
        .collect::<Vec<_>>()
        .join("\n")
}

fn pick_family(a: &AlphaParams, family: Option<FamilyTag>) -> Result<FamilyTag, Failure> {
    if let Some(f) = family {
        return Ok(f);
    }
    classify(a).into_iter().find(|t| *t != FamilyTag::None).ok_or(Failure {
        code: status::NEEDS_PERTURBATIVE,
        msg: "no exactly solvable family applies; rerun with --perturbative".into(),
    })
}

fn cmd_classify(model: &ModelArgs) -> Outcome {
    let a = model.load()?;
    let r = classification_report(&a);
    let names: Vec<&str> = r.tags.iter().map(|t| t.name()).collect();
    let mut text = format!("families: {}", names.join(", "));
    for (k, v) in &r.defects {
        text.push_str(&format!("\n  {k} = {v}"));
    }
    let defects: serde_json::Map<String, Value> = r.defects.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
    let code = if r.tags == [FamilyTag::None] { status::NO_FAMILY } else { 0 };
    Ok((json!({ "families": names, "defects": defects }), text, code))
}

fn cmd_metric(model: &ModelArgs, family: Option<FamilyTag>, perturbative: bool, order: usize, gauge: Gauge) -> Outcome {
    let a = model.load()?;
    if perturbative {
        let s = solve_metric_series(&a, order, gauge)?;
        let eta2 = s.eta2();
        let text = format!("eta^2 = {}\n{}", eta2.render(), series_text("e", &eta2));
        return Ok((json!({ "kind": "series", "eta2": series_json(&eta2) }), text, 0));
    }
    let tag = pick_family(&a, family)?;
    let m = exact_metric(&a, tag)?;
    let mut text = format!("family: {tag}\neta^2 = {}\nhermitian: {}", m.render(), m.is_hermitian());
    if let Some(c) = m.positivity_caveat() {
        text.push_str(&format!("\ncaveat: {c}"));
    }
    let machine = json!({
        "kind": "exact",
        "family": tag.name(),
        "render": m.render(),
        "base": poly_json(&m.base),
        "exponent_r": m.exponent_r.to_string(),
        "exponent": poly_json(&m.exponent()),
        "hermitian": m.is_hermitian(),
        "caveat": m.positivity_caveat(),
    });
    Ok((machine, text, 0))
}

fn cmd_counterpart(model: &ModelArgs, family: Option<FamilyTag>, perturbative: bool, order: usize, gauge: Gauge) -> Outcome {
    let a = model.load()?;
    if perturbative {
        let s = solve_metric_series(&a, order, gauge)?;
        let h = counterpart_series(&a, &s.eta2())?;
        let text = format!("h = {}\n{}\nreal: {}", h.render(), series_text("h", &h), h.is_real());
        return Ok((json!({ "kind": "series", "h": series_json(&h), "real": h.is_real() }), text, 0));
    }
    let tag = pick_family(&a, family)?;
    let c = exact_counterpart(&a, tag)?;
    let text = format!("family: {tag}\nh = {}\nreal: {}", c.render(), c.is_real());
    let machine = json!({
        "kind": "exact",
        "family": tag.name(),
        "render": c.render(),
        "numerator": series_json(&c.numerator),
        "denominator": poly_json(&c.denominator),
        "valid_through": c.valid_through,
        "real": c.is_real(),
    });
    Ok((machine, text, 0))
}

fn cmd_perturb(model: &ModelArgs, order: usize, gauge: Gauge) -> Outcome {
    let a = model.load()?;
    let s = solve_metric_series(&a, order, gauge)?;
    let mut text = String::new();
    let mut records = Vec::new();
    for r in &s.records {
        text.push_str(&format!(
            "order {}: kernel {} (free {}), degree bound {}, gauge defect {}\n  c{} = {}\n",
            r.n,
            r.kernel_dim,
            r.free_kernel,
            s.degree_bound(r.n),
            if r.gauge_defect.is_zero() { "0".into() } else { r.gauge_defect.render() },
            r.n,
            r.c.render()
        ));
        records.push(json!({
            "n": r.n,
            "c": poly_json(&r.c),
            "kernel_dim": r.kernel_dim,
            "free_kernel": r.free_kernel,
            "gauge_defect": poly_json(&r.gauge_defect),
        }));
    }
    Ok((json!({ "order_reached": s.order_reached, "records": records }), text.trim_end().to_string(), 0))
}

fn report_json(r: &SpectralReport) -> Value {
    json!({
        "n": r.n,
        "n_prime": r.n_prime,
        "eigenvalues": r.eigenvalues.iter().map(|l| [l.re, l.im]).collect::<Vec<_>>(),
        "reality_defect": r.reality_defect,
        "truncation_drift": r.truncation_drift,
    })
}

/// The counterpart evaluated at the model's coupling: closed form when a
/// family with a polynomial counterpart applies, series otherwise.
fn counterpart_at_g(a: &AlphaParams, order: usize) -> Result<(String, PhasePoly), Failure> {
    for tag in classify(a).into_iter().filter(|t| *t != FamilyTag::None) {
        if let Ok(h) = exact_counterpart(a, tag).and_then(|c| c.as_polynomial()) {
            return Ok((format!("closed form ({tag})"), h.evaluate(&a.g)));
        }
    }
    let s = solve_metric_series(a, order, Gauge::Inversion)?;
    let h = counterpart_series(a, &s.eta2())?;
    Ok((format!("series through g^{order}"), h.evaluate(&a.g)))
}

fn cmd_spectrum(model: &ModelArgs, n: usize, k: usize, compare: bool, order: usize) -> Outcome {
    let a = model.load()?;
    let r = spectrum(&build_numeric(&a), n, k)?;
    let mut text = r.render();
    let mut machine = json!({ "H": report_json(&r) });
    if compare {
        let (how, h) = counterpart_at_g(&a, order)?;
        let rh = spectrum(&h, n, k)?;
        let diffs: Vec<f64> = r.eigenvalues.iter().zip(&rh.eigenvalues).map(|(x, y)| (x - y).norm()).collect();
        text.push_str(&format!("\ncounterpart: {how}\n"));
        for (j, d) in diffs.iter().enumerate() {
            text.push_str(&format!("{j:>3}  |lambda_H - lambda_h| = {d:.3e}\n"));
        }
        text = text.trim_end().to_string();
        machine["h"] = report_json(&rh);
        machine["counterpart"] = json!(how);
        machine["level_differences"] = json!(diffs);
    }
    Ok((machine, text, 0))
}

fn cmd_verify(golden: Option<&str>) -> Outcome {
    let checks = match golden {
        Some(name) => vec![suite::check_golden(name)],
        None => suite::run(),
    };
    let text = checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.op, c.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let machine: Vec<Value> =
        checks.iter().map(|c| json!({ "op": c.op, "pass": c.pass, "detail": c.detail })).collect();
    let code = if checks.iter().all(|c| c.pass) { 0 } else { status::VERIFY_FAILED };
    Ok((json!({ "checks": machine }), text, code))
}

fn cmd_presets() -> Outcome {
    let mut text = String::new();
    let mut list = Vec::new();
    for p in Preset::ALL {
        text.push_str(&format!("{:<16} [{}]  {}\n", p.name(), p.params().join(", "), p.description()));
        list.push(json!({ "name": p.name(), "params": p.params(), "description": p.description() }));
    }
    Ok((json!({ "presets": list }), text.trim_end().to_string(), 0))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { model } => cmd_classify(model),
        Command::Metric {
            model,
            family,
            perturbative,
            order,
            gauge,
        } => cmd_metric(model, *family, *perturbative, *order, (*gauge).into()),
        Command::Counterpart {
            model,
            family,
            perturbative,
            order,
            gauge,
        } => cmd_counterpart(model, *family, *perturbative, *order, (*gauge).into()),
        Command::Perturb { model, order, gauge } => cmd_perturb(model, *order, (*gauge).into()),
        Command::Spectrum {
            model,
            n,
            k,
            compare_counterpart,
            order,
        } => cmd_spectrum(model, *n, *k, *compare_counterpart, *order),
        Command::Verify { golden } => cmd_verify(golden.as_deref()),
        Command::Presets => cmd_presets(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((machine, text, code)) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut out = std::io::stdout().lock();
            let _ = if cli.machine { writeln!(out, "{machine}") } else { writeln!(out, "{text}") };
            ExitCode::from(code)
        }
        Err(f) => {
            if cli.machine {
                println!("{}", json!({ "error": f.msg, "status": f.code }));
            }
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
