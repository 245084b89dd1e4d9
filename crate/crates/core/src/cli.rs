// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::json;

use crate::baseline::topk_reference;
use crate::error::Result;
use crate::graph::{parse_edge_list, Graph};
use crate::solver::{improvement_factor, topk_with, Measure, TopKOptions, TopKResult, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Degcut,
    Degbound,
    Nbcut,
    Nbbound,
    /// Same as nbcut.
    Auto,
    /// One full BFS per node.
    Textbook,
}

impl VariantArg {
    fn resolve(self) -> Option<Variant> {
        match self {
            VariantArg::Degcut => Some(Variant::DegCut),
            VariantArg::Degbound => Some(Variant::DegBound),
            VariantArg::Nbcut | VariantArg::Auto => Some(Variant::NbCut),
            VariantArg::Nbbound => Some(Variant::NbBound),
            VariantArg::Textbook => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Closeness,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Tsv,
    Json,
}

/// Exact top-k closeness or harmonic centrality.
#[derive(Debug, Parser)]
#[command(name = "topk-closeness", version)]
pub struct Args {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub directed: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = MeasureArg::Closeness)]
    pub measure: MeasureArg,
    /// Print run statistics as JSON on stderr.
    #[arg(long)]
    pub stats: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tsv)]
    pub output: OutputFormat,
}

/// Parses `args` (program name first), runs, and returns the exit code:
/// 0 on success, 1 on I/O or parse errors, 2 on usage errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&args, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn load(args: &Args) -> Result<Graph> {
    let file = File::open(&args.input)?;
    parse_edge_list(BufReader::new(file), args.directed)
}

fn execute(args: &Args, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let g = load(args)?;
    let k = usize::try_from(args.k).unwrap_or(usize::MAX);
    let threads = args.threads as usize;
    let measure = match args.measure {
        MeasureArg::Closeness => Measure::Closeness,
        MeasureArg::Harmonic => Measure::Harmonic,
    };

    let start = Instant::now();
    let result = match args.variant.resolve() {
        None => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("failed to build thread pool")
            .install(|| topk_reference(&g, k, measure)),
        Some(v) => {
            let opts = TopKOptions { threads: (threads > 1).then_some(threads), trace: false };
            topk_with(&g, k, v, measure, &opts)
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    match args.output {
        OutputFormat::Tsv => write_tsv(&result, stdout)?,
        OutputFormat::Json => write_json(&result, stdout)?,
    }
    if args.stats {
        let stats = json!({
            "n": g.n(),
            "m": g.m(),
            "k": k,
            "variant": result.method.as_str(),
            "measure": measure.as_str(),
            "m_vis": result.m_vis,
            "improvement_factor": improvement_factor(&result, &g),
            "n_pruned": result.n_pruned,
            "wall_ms": wall_ms,
        });
        writeln!(stderr, "{stats}")?;
    }
    Ok(())
}

fn write_tsv(result: &TopKResult, out: &mut dyn Write) -> Result<()> {
    for e in &result.entries {
        writeln!(out, "{}\t{}\t{}", e.rank, e.label, format_sig(e.value, 12))?;
    }
    Ok(())
}

fn write_json(result: &TopKResult, out: &mut dyn Write) -> Result<()> {
    let entries: Vec<_> = result
        .entries
        .iter()
        .map(|e| json!({ "rank": e.rank, "label": e.label, "score": e.value }))
        .collect();
    let doc = json!({
        "measure": result.measure.as_str(),
        "k": result.k,
        "kth_value": result.kth_value,
        "entries": entries,
    });
    writeln!(out, "{doc}")?;
    Ok(())
}

/// `x` with `digits` significant digits, in the style of C's `%.<digits>g`.
pub fn format_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_owned()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
