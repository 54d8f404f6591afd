use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context as _};
use hetdss::rational::{render, to_decimal};
use hetdss::tradeoff::{curve_csv, homogeneous_curve, tradeoff_curve_for_spec};
use hetdss::{
    build_flow_graph, capacity_via_flow, capacity_with, max_flow, mbr_point, msr_point,
    tradeoff_curve, CapacityOptions, DssSpec, Error, Rational, SurvivingSequence, TradeoffPoint,
};
use serde_json::json;

use crate::args::{CapacityArgs, Global, GraphArgs, PointsArgs, SpecArg, TradeoffArgs};
use crate::report::{digest, write_output, RunReport};
use crate::Status;

/// Largest system the flow oracle is allowed to enumerate.
const ORACLE_MAX_NODES: usize = 6;

pub struct Context {
    out_dir: PathBuf,
}

impl Context {
    pub fn new(global: &Global) -> anyhow::Result<Self> {
        Ok(Self {
            out_dir: global.out_dir.clone(),
        })
    }
}

fn exact(value: &Rational) -> String {
    let text = render(value);
    let decimal = to_decimal(value, 12);
    if text == decimal {
        text
    } else {
        format!("{text} ({decimal})")
    }
}

fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1000.0
}

/// Reads and parses a spec file. Unreadable or malformed files are input errors.
fn read_spec(path: &Path) -> anyhow::Result<(DssSpec, Vec<u8>)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text =
        std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let spec =
        DssSpec::from_json(text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok((spec, bytes))
}

/// Like [`read_spec`] but also rejects specs that fail validation.
fn load_valid(path: &Path) -> anyhow::Result<(DssSpec, Vec<u8>)> {
    let (spec, bytes) = read_spec(path)?;
    let report = spec.validate();
    if !report.ok {
        bail!("{} is not a valid spec:\n{report}", path.display());
    }
    Ok((spec, bytes))
}

pub fn validate(args: &SpecArg) -> anyhow::Result<Status> {
    let (spec, _) = read_spec(&args.spec)?;
    let report = spec.validate();
    if report.ok {
        println!(
            "ok: n = {}, k = {}, beta = {}",
            spec.n,
            spec.k,
            render(&spec.beta)
        );
        return Ok(Status::Success);
    }
    for violation in &report.violations {
        println!("{}: {}", violation.rule.as_str(), violation.detail);
    }
    Ok(Status::Negative)
}

pub fn capacity(ctx: &Context, args: &CapacityArgs) -> anyhow::Result<Status> {
    let started = Instant::now();
    let (spec, bytes) = load_valid(&args.spec)?;
    if args.oracle && spec.n > ORACLE_MAX_NODES {
        bail!(
            "--oracle solves a max-flow problem for every surviving sequence and is limited to \
             n <= {ORACLE_MAX_NODES} (this spec has n = {}); drop --oracle, or compare \
             --strategy pruned with --strategy exhaustive instead",
            spec.n
        );
    }
    let result = capacity_with(
        &spec,
        &CapacityOptions {
            strategy: args.strategy.into(),
            threads: None,
        },
    )?;
    println!("capacity = {}", exact(&result.capacity));
    println!("argmin sequence: {}", result.argmin_sequence);
    println!("cut terms: {}", result.argmin_terms);
    println!("sequences examined: {}", result.sequences_examined);

    let mut status = Status::Success;
    let oracle = if args.oracle {
        let flow = capacity_via_flow(&spec)?;
        let agrees = flow == result.capacity;
        if agrees {
            println!("oracle: max-flow capacity = {}, equal", render(&flow));
        } else {
            println!(
                "oracle: max-flow capacity = {} differs from {}",
                render(&flow),
                render(&result.capacity)
            );
            status = Status::Negative;
        }
        Some(json!({ "flow_capacity": render(&flow), "agrees": agrees }))
    } else {
        None
    };

    let report = RunReport {
        command: "capacity",
        input_digest: digest(&bytes),
        sequences_examined: Some(result.sequences_examined),
        outputs: json!({ "result": result, "oracle": oracle }),
        timing_ms: elapsed_ms(started),
    };
    println!("report: {}", report.write(&ctx.out_dir)?.display());
    Ok(status)
}

fn print_alphas(alphas: &[Rational]) {
    for (i, alpha) in alphas.iter().enumerate() {
        println!("  alpha U{} = {}", i + 1, exact(alpha));
    }
}

pub fn points(ctx: &Context, args: &PointsArgs) -> anyhow::Result<Status> {
    let started = Instant::now();
    let (spec, bytes) = load_valid(&args.spec)?;
    let b = &args.file_size;
    let mut status = Status::Success;

    let msr = msr_point(&spec, b)?;
    println!("MSR point (B = {})", exact(b));
    println!(
        "  star sequence {} with fresh helpers {:?}",
        msr.star.sequence, msr.star.term_sizes
    );
    match &msr.beta_max {
        Some(beta) => println!("  beta <= {}", exact(beta)),
        None => println!("  beta unconstrained (a star position has no fresh helper)"),
    }
    print_alphas(&msr.alpha);
    if !msr.star_alpha_nondecreasing {
        println!("  storage is not nondecreasing along the star sequence");
    }
    if let (Some(false), Some(cap)) = (msr.meets_file_size(), &msr.capacity_at_point) {
        println!(
            "  note: capacity under this allocation at beta_max is {} < B = {}; \
             some surviving sequence cannot deliver the file",
            exact(cap),
            exact(b)
        );
    }

    println!("MBR point (B = {})", exact(b));
    let mbr = match mbr_point(&spec, b) {
        Ok(mbr) => {
            println!("  beta = {}", exact(&mbr.beta));
            print_alphas(&mbr.alpha);
            println!("  capacity at point = {}", exact(&mbr.capacity_at_point));
            Some(mbr)
        }
        Err(Error::Precondition(why)) => {
            println!("  undefined: {why}");
            status = Status::Negative;
            None
        }
        Err(err) => return Err(err.into()),
    };

    let report = RunReport {
        command: "points",
        input_digest: digest(&bytes),
        sequences_examined: None,
        outputs: json!({ "msr": msr, "mbr": mbr }),
        timing_ms: elapsed_ms(started),
    };
    println!("report: {}", report.write(&ctx.out_dir)?.display());
    Ok(status)
}

const CURVE_CSV: &str = "tradeoff.csv";
const HOMOGENEOUS_CSV: &str = "tradeoff-homogeneous.csv";

pub fn tradeoff(ctx: &Context, args: &TradeoffArgs) -> anyhow::Result<Status> {
    let started = Instant::now();
    let b = &args.file_size;
    let betas = &args.beta_grid.0;
    let (curve, n, k, degrees, input_digest) = match (&args.spec, &args.profile) {
        (Some(path), _) => {
            let (spec, bytes) = load_valid(path)?;
            let curve = tradeoff_curve_for_spec(&spec, b, betas, None)?;
            (curve, spec.n, spec.k, spec.repair_degrees(), digest(&bytes))
        }
        (None, Some(profile)) => {
            let profile = &profile.0;
            let k = args.k.context("--profile needs --k")?;
            let described = format!(
                "profile={} k={k}",
                profile
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(":")
            );
            let curve = tradeoff_curve(profile, k, b, betas, None)?;
            (
                curve,
                profile.len(),
                k,
                profile.clone(),
                digest(described.as_bytes()),
            )
        }
        (None, None) => bail!("give a spec file or --profile"),
    };

    let comparator_d = if args.no_homogeneous {
        None
    } else {
        args.homogeneous_d.or_else(|| {
            let sum: usize = degrees.iter().sum();
            sum.is_multiple_of(n).then_some(sum / n)
        })
    };
    let homogeneous: Option<(usize, Vec<TradeoffPoint>)> = match comparator_d {
        Some(d) => Some((d, homogeneous_curve(n, k, d, b, betas)?)),
        None => None,
    };

    let mut files = vec![CURVE_CSV];
    let path = write_output(&ctx.out_dir, CURVE_CSV, &curve_csv(&curve))?;
    println!("heterogeneous curve: {}", path.display());
    if let Some((d, points)) = &homogeneous {
        let path = write_output(&ctx.out_dir, HOMOGENEOUS_CSV, &curve_csv(points))?;
        println!("homogeneous ({n}, {k}, {d}) curve: {}", path.display());
        files.push(HOMOGENEOUS_CSV);
    }

    let feasible = curve.iter().filter(|p| p.feasible).count();
    println!("{feasible} of {} grid points feasible", curve.len());
    let status = if feasible == 0 {
        eprintln!(
            "no beta in the grid lets any storage scale reach B = {}; every sequence is limited \
             by its download bandwidth, so raise beta",
            render(b)
        );
        Status::Negative
    } else {
        Status::Success
    };

    let report = RunReport {
        command: "tradeoff",
        input_digest,
        sequences_examined: None,
        outputs: json!({
            "n": n,
            "k": k,
            "file_size": render(b),
            "files": files,
            "heterogeneous": curve,
            "homogeneous": homogeneous.map(|(d, points)| json!({ "d": d, "points": points })),
        }),
        timing_ms: elapsed_ms(started),
    };
    println!("report: {}", report.write(&ctx.out_dir)?.display());
    Ok(status)
}

/// `node:set` pairs with 1-based set numbers.
fn parse_sequence(text: &str) -> anyhow::Result<SurvivingSequence> {
    let pairs = text
        .split(',')
        .map(|entry| {
            let (node, set) = entry
                .trim()
                .split_once(':')
                .with_context(|| format!("entry {entry:?} is not node:set"))?;
            let node: usize = node
                .trim()
                .parse()
                .with_context(|| format!("bad node in {entry:?}"))?;
            let set: usize = set
                .trim()
                .parse()
                .with_context(|| format!("bad set in {entry:?}"))?;
            if set == 0 {
                bail!("set numbers start at 1 in {entry:?}");
            }
            Ok((node, set - 1))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(SurvivingSequence::from_pairs(&pairs))
}

pub fn graph(args: &GraphArgs) -> anyhow::Result<Status> {
    let (spec, _) = load_valid(&args.spec)?;
    let seq = match &args.sequence {
        Some(text) => parse_sequence(text)?,
        None => capacity_with(&spec, &CapacityOptions::default())?.argmin_sequence,
    };
    let graph = build_flow_graph(&spec, &seq)?;
    let cert = max_flow(&graph)?;
    println!("// sequence {seq}");
    println!("// max flow = {}", render(&cert.flow_value));
    print!("{}", graph.to_dot());
    Ok(Status::Success)
}
