use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use fan_core::analysis::{
    classify_endpoint, density_witness, directed_hausdorff, greedy_sequence, hausdorff,
    oracle_best_sequence, verify_embedding, DensityConfig, EmbeddingConfig, EndpointVerdict,
};
use fan_core::render::{render_fan, AngleMap, RenderConfig};
use fan_core::{
    check_nc, enumerate_legs, legfile, sample_legs, sample_points, Error, FanApprox, NcPair,
    PointPrefix, RelationKind, RelationSpec, Scalar,
};
use serde_json::{json, Value};

use crate::{exit, Cli, Command, GlobalConfig};

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// F = {r, 1, rho}, G = {r, 1}, Lrr = {r, rho}.
    #[arg(long, default_value = "F")]
    pub relation: RelationKind,
    /// Draw this many random words instead of enumerating all of them.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Flag legs whose cap is below 2^-N as degenerating.
    #[arg(long, default_value_t = fan_core::mahavier::DEFAULT_DEGENERACY_EXPONENT)]
    pub degenerate_exponent: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GreedyArgs {
    /// Starting value in (0, 1).
    #[arg(long)]
    pub x: Scalar,
    #[arg(long, default_value_t = 16)]
    pub steps: u64,
    /// Also run the exhaustive oracle and report whether it agrees.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct EndpointsArgs {
    /// A point prefix as comma-separated rationals, e.g. 2/9,2/3,1/3,1.
    #[arg(long, conflicts_with = "input")]
    pub point: Option<String>,
    /// Classify the far end of every leg in a leg file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "1/100")]
    pub delta: Scalar,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, default_value = "1/64")]
    pub epsilon: Scalar,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value = "1/100")]
    pub delta: Scalar,
    #[arg(long, default_value_t = 10_000)]
    pub extension_budget: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmbedCheckArgs {
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 500)]
    pub membership_samples: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HausdorffArgs {
    #[arg(long, default_value = "F")]
    pub a: RelationKind,
    #[arg(long, default_value = "G")]
    pub b: RelationKind,
    #[arg(long, default_value_t = 8)]
    pub grid: usize,
    /// Only the directed distance from A to B.
    #[arg(long)]
    pub directed: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "cantor")]
    pub angle_map: AngleMap,
    #[arg(long, default_value_t = 60.0)]
    pub sweep: f64,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    #[arg(long, default_value_t = 600)]
    pub height: u32,
    #[arg(long, default_value_t = 1.0)]
    pub stroke_width: f64,
}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Connects { .. }) => exit::CONNECTS,
        Some(Error::Resource(_)) => exit::RESOURCE,
        _ => exit::PRECONDITION,
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::CheckNc => check_nc_cmd(g),
        Command::Build(args) => build(g, args),
        Command::Greedy(args) => greedy(g, args),
        Command::Endpoints(args) => endpoints(args),
        Command::Density(args) => density(g, args),
        Command::EmbedCheck(args) => embed_check(g, args),
        Command::Hausdorff(args) => hausdorff_cmd(g, args),
        Command::Render(args) => render(args),
    }
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string(value)?) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn nc_pair(g: &GlobalConfig) -> Result<NcPair> {
    Ok(NcPair::new(g.r.clone(), g.rho.clone())?)
}

fn check_nc_cmd(g: &GlobalConfig) -> Result<u8> {
    let verdict = check_nc(&g.r, &g.rho)?;
    print_json(&serde_json::to_value(&verdict)?)?;
    Ok(if verdict.is_nc { exit::OK } else { exit::CONNECTS })
}

fn build_fan(g: &GlobalConfig, kind: RelationKind, sample: Option<usize>) -> Result<FanApprox> {
    if kind == RelationKind::F {
        nc_pair(g)?;
    }
    let relation = RelationSpec::from_kind(kind, &g.r, &g.rho)?;
    let fan = match sample {
        Some(m) => FanApprox::from_legs(
            relation.clone(),
            g.depth,
            sample_legs(&relation, g.depth, m, g.seed),
        )?,
        None => enumerate_legs(&relation, g.depth, g.max_legs)?,
    };
    Ok(fan)
}

fn build(g: &GlobalConfig, args: &BuildArgs) -> Result<u8> {
    let fan = build_fan(g, args.relation, args.sample)?;
    write_file(&args.out, &legfile::to_json(&fan))?;
    let threshold = Scalar::dyadic(args.degenerate_exponent);
    let degenerating = fan.degenerating(&threshold);
    print_json(&json!({
        "relation": fan.relation().slopes(),
        "depth": fan.depth(),
        "legs": fan.legs().len(),
        "degenerating": degenerating.len(),
        "degeneracy_threshold": threshold,
        "out": args.out,
    }))?;
    Ok(exit::OK)
}

fn greedy(g: &GlobalConfig, args: &GreedyArgs) -> Result<u8> {
    let pair = nc_pair(g)?;
    if args.steps > g.max_steps {
        return Err(Error::Resource(format!(
            "{} greedy steps exceed --max-steps {}",
            args.steps, g.max_steps
        ))
        .into());
    }
    let trace = greedy_sequence(&args.x, &pair, args.steps as usize)?;
    let mut out = serde_json::to_value(&trace)?;
    if args.oracle {
        let best = oracle_best_sequence(
            &args.x,
            pair.r(),
            pair.rho(),
            args.steps as usize,
            g.oracle_max_len as usize,
        )?;
        out["oracle_running_max"] = json!(best.running_max);
        out["oracle_agrees"] = json!(best.running_max == trace.running_max);
    }
    print_json(&out)?;
    Ok(exit::OK)
}

fn parse_point(text: &str) -> Result<PointPrefix> {
    let coords = text
        .split(',')
        .map(|c| c.parse::<Scalar>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(PointPrefix::new(coords)?)
}

fn verdict_json(v: &EndpointVerdict) -> Value {
    match v {
        EndpointVerdict::Certified(c) => json!({
            "endpoint": true,
            "kind": c.kind,
            "point": c.point.coords(),
            "peak_index": c.peak_index,
            "peak_value": c.peak_value,
            "delta": c.delta,
        }),
        EndpointVerdict::NotEndpoint { max, peak_index } => json!({
            "endpoint": false,
            "max": max,
            "peak_index": peak_index,
        }),
    }
}

fn endpoints(args: &EndpointsArgs) -> Result<u8> {
    let points = match (&args.point, &args.input) {
        (Some(p), None) => vec![parse_point(p)?],
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            legfile::from_json(&text)?
                .legs()
                .iter()
                .map(|l| l.far_end())
                .collect()
        }
        _ => bail!(Error::Precondition("give exactly one of --point or --in".into())),
    };
    let verdicts: Vec<Value> = points
        .iter()
        .map(|p| verdict_json(&classify_endpoint(p, &args.delta)))
        .collect();
    let certified = verdicts.iter().filter(|v| v["endpoint"] == true).count();
    print_json(&json!({
        "delta": args.delta,
        "points": verdicts.len(),
        "certified": certified,
        "verdicts": verdicts,
    }))?;
    Ok(exit::OK)
}

fn density(g: &GlobalConfig, args: &DensityArgs) -> Result<u8> {
    let pair = nc_pair(g)?;
    let f = RelationSpec::from_kind(RelationKind::F, pair.r(), pair.rho())?;
    let config = DensityConfig {
        delta: args.delta.clone(),
        extension_budget: args.extension_budget,
    };
    let points = sample_points(&f, g.depth, args.samples, g.seed);
    let mut counterexample = None;
    let mut worst = Scalar::zero();
    for x in &points {
        let w = density_witness(x, &args.epsilon, &pair, &config)?;
        if w.bound > worst {
            worst = w.bound.clone();
        }
        if counterexample.is_none() && (w.bound > args.epsilon || !w.reached) {
            counterexample = Some(json!({
                "point": x.coords(),
                "bound": w.bound,
                "delta": w.certificate.delta,
            }));
        }
    }
    let pass = counterexample.is_none();
    let report = json!({
        "epsilon": args.epsilon,
        "delta": args.delta,
        "depth": g.depth,
        "samples": points.len(),
        "seed": g.seed,
        "worst_bound": worst,
        "pass": pass,
        "checks": [{ "name": "density", "pass": pass, "counterexample": counterexample }],
    });
    emit_report(&report, args.report.as_deref())?;
    Ok(if pass { exit::OK } else { exit::VERIFICATION_FAILED })
}

fn emit_report(report: &Value, path: Option<&Path>) -> Result<()> {
    if let Some(path) = path {
        write_file(path, &serde_json::to_string_pretty(report)?)?;
    }
    print_json(report)
}

fn embed_check(g: &GlobalConfig, args: &EmbedCheckArgs) -> Result<u8> {
    let pair = nc_pair(g)?;
    let config = EmbeddingConfig {
        depth: g.depth,
        samples: args.samples,
        membership_samples: args.membership_samples,
        seed: g.seed,
        enumeration_budget: g.max_legs,
        ..EmbeddingConfig::default()
    };
    let report = verify_embedding(&pair, &config)?;
    emit_report(&serde_json::to_value(&report)?, args.report.as_deref())?;
    Ok(if report.pass { exit::OK } else { exit::VERIFICATION_FAILED })
}

fn hausdorff_cmd(g: &GlobalConfig, args: &HausdorffArgs) -> Result<u8> {
    let a = build_fan(g, args.a, None)?;
    let b = build_fan(g, args.b, None)?;
    let bounds = if args.directed {
        directed_hausdorff(&a, &b, args.grid)?
    } else {
        hausdorff(&a, &b, args.grid)?
    };
    print_json(&json!({
        "a": a.relation().slopes(),
        "b": b.relation().slopes(),
        "depth": g.depth,
        "grid": args.grid,
        "directed": args.directed,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "resolution": bounds.resolution,
    }))?;
    Ok(exit::OK)
}

fn render(args: &RenderArgs) -> Result<u8> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let fan = legfile::from_json(&text)?;
    let config = RenderConfig {
        width: args.width,
        height: args.height,
        angle_map: args.angle_map,
        apex: (args.width as f64 / 2.0, args.height as f64 / 15.0),
        sweep: args.sweep,
        stroke_width: args.stroke_width,
    };
    let svg = render_fan(&fan, &config)?;
    write_file(&args.out, &svg)?;
    print_json(&json!({ "legs": fan.legs().len(), "out": args.out }))?;
    Ok(exit::OK)
}
