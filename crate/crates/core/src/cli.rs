//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 a checked claim is violated, 2 bad input, 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::builtin;
use crate::curvature::{bakry_emery, kappa_lly_laplacian, kappa_lly_transport, CurvatureResult, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::LocalGraph;
use crate::group::cayley::cayley_from_cosets;
use crate::group::eliminate::{eliminate, EliminationKind, WordMap};
use crate::group::todd_coxeter::{enumerate_cosets, DEFAULT_MAX_COSETS};
use crate::group::{ball, ball_with, BallOptions};
use crate::presentation::{
    associated_pair, parse_group_body, parse_presentation, parse_raach_body, DefiningGraph, Presentation, Word,
};
use crate::rational::{self, int, Rational};
use crate::report::{Record, Report, Status};
use crate::theorems::monotonicity::{monotonicity_check, Weighting};
use crate::theorems::sweeps::{
    raach_family, verify_be, verify_be_definition, verify_cycles, verify_edge_properties, verify_eliminations, verify_or,
};
use crate::theorems::{thm_be_raach, thm_or_raach, SpectralSummary};

#[derive(Parser, Debug)]
#[command(name = "curvachay", version, about = "Curvature of Cayley graphs of RAACHs and finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
struct Input {
    /// RAACH body, e.g. "a:2,b:3; commute (a,b)".
    #[arg(long)]
    raach: Option<String>,
    /// Group presentation, e.g. "<a,b | a^4, b^-1 a^2>".
    #[arg(long)]
    group: Option<String>,
    /// File holding one `raach { ... }` or `group <...>` presentation.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Name from the builtin library.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomised checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Laplacian {
    Nonnorm,
    Norm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Or,
    Be,
    Cycles,
    Eliminations,
    Monotonicity,
    Properties,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bakry-Émery and Ollivier curvature at the identity (RAACH) or everywhere (finite group).
    Curvature {
        #[command(flatten)]
        input: Input,
        /// Defaults to both.
        #[arg(long, value_enum)]
        laplacian: Option<Laplacian>,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Runs a verification suite and prints a JSON-lines report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest number of generators in the RAACH family.
        #[arg(long, default_value_t = 3)]
        max_gens: usize,
        /// `builtin` or a file of `name: <source> -> <target>` lines.
        #[arg(long, default_value = "builtin")]
        pairs: String,
        /// Random words per elimination.
        #[arg(long, default_value_t = 1000)]
        words: usize,
        /// Random edges for the property suite.
        #[arg(long, default_value_t = 100)]
        edges: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Dumps a ball of the Cayley graph.
    Ball {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Replaces a generator of order 4 or infinite order by two involutions.
    Eliminate {
        #[command(flatten)]
        input: Input,
        /// Generator of order 4 to remove.
        #[arg(long, conflicts_with = "rinf")]
        r4: Option<String>,
        /// Generator of infinite order to remove.
        #[arg(long)]
        rinf: Option<String>,
        /// Word over the old generators to push forward.
        #[arg(long)]
        word: Vec<String>,
        /// Word over the new generators to pull back.
        #[arg(long)]
        new_word: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Spectrum of the negative Laplacian of the associated pair.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::Radius(_) | Error::Singular(_) => 2,
        Error::Budget(_) => 3,
        Error::Internal(_) => 1,
    }
}

pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Curvature {
            input,
            laplacian,
            radius,
            max_cosets,
            output,
        } => {
            let p = read_input(&input)?;
            let text = cmd_curvature(&p, laplacian, radius, max_cosets, &output)?;
            emit(&output, &text)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            max_gens,
            pairs,
            words,
            edges,
            max_cosets,
            output,
        } => {
            if max_gens == 0 || max_gens > 4 {
                return Err(Error::invalid("--max-gens must be between 1 and 4"));
            }
            let report = cmd_verify(suite, max_gens, &pairs, words, edges, max_cosets, output.seed)?;
            let text = render_report(&report, suite, &output)?;
            emit(&output, &text)?;
            if let Some(v) = report.violations().next() {
                eprintln!("violated: {}", v.to_json());
                return Ok(1);
            }
            Ok(0)
        }
        Command::Ball {
            input,
            radius,
            max_cosets,
            output,
        } => {
            let p = read_input(&input)?;
            let text = cmd_ball(&p, radius, max_cosets, &output)?;
            emit(&output, &text)?;
            Ok(0)
        }
        Command::Eliminate {
            input,
            r4,
            rinf,
            word,
            new_word,
            output,
        } => {
            let text = cmd_eliminate(&input, r4, rinf, word, new_word, &output)?;
            emit(&output, &text)?;
            Ok(0)
        }
        Command::Spectrum { input, output } => {
            let p = read_input(&input)?;
            let text = cmd_spectrum(&p, &output)?;
            emit(&output, &text)?;
            Ok(0)
        }
    }
}

fn read_input(input: &Input) -> Result<Presentation> {
    if let Some(r) = &input.raach {
        let t = r.trim();
        return if t.starts_with("raach") { parse_presentation(t) } else { parse_raach_body(t) };
    }
    if let Some(g) = &input.group {
        let t = g.trim();
        return if t.starts_with("group") { parse_presentation(t) } else { parse_group_body(t) };
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        return parse_presentation(&text);
    }
    if let Some(name) = &input.builtin {
        return builtin::lookup(name);
    }
    Err(Error::invalid("no input: pass --raach, --group, --file or --builtin"))
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Float with at most 12 decimals, trailing zeros dropped.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let mut s = format!("{x:.12}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn exact_cell(q: &Rational) -> String {
    format!("{} ({})", rational::format(q), fmt_float(rational::to_f64(q)))
}

fn result_cell(r: &CurvatureResult) -> String {
    match &r.exact {
        Some(q) => exact_cell(q),
        None => fmt_float(r.value),
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn kinds(l: Option<Laplacian>) -> Vec<(Laplacian, LaplacianKind)> {
    let all = [(Laplacian::Nonnorm, LaplacianKind::NonNormalized), (Laplacian::Norm, LaplacianKind::Normalized)];
    all.into_iter().filter(|(k, _)| l.is_none_or(|want| want == *k)).collect()
}

fn kind_name(l: Laplacian) -> &'static str {
    match l {
        Laplacian::Nonnorm => "nonnorm",
        Laplacian::Norm => "norm",
    }
}

struct CurvatureRow {
    quantity: &'static str,
    at: String,
    laplacian: Laplacian,
    closed: Option<Quantity>,
    brute: CurvatureResult,
}

enum Quantity {
    Exact(Rational),
    Float(f64),
}

impl Quantity {
    fn cell(&self) -> String {
        match self {
            Quantity::Exact(q) => exact_cell(q),
            Quantity::Float(x) => fmt_float(*x),
        }
    }

    fn json(&self) -> Value {
        match self {
            Quantity::Exact(q) => json!({"value_rational": rational::format(q), "value_float": rational::to_f64(q)}),
            Quantity::Float(x) => json!({"value_rational": null, "value_float": x}),
        }
    }

    fn parts(&self) -> (String, String) {
        match self {
            Quantity::Exact(q) => (rational::format(q), fmt_float(rational::to_f64(q))),
            Quantity::Float(x) => (String::new(), fmt_float(*x)),
        }
    }
}

fn raach_rows(h: &DefiningGraph, laplacian: Option<Laplacian>, radius: u32) -> Result<Vec<CurvatureRow>> {
    if radius < 4 {
        return Err(Error::Radius(format!(
            "Ollivier curvature needs a ball of radius 4 around the identity, got --radius {radius}; pass --radius 4"
        )));
    }
    let p = Presentation::raach(h.clone());
    let b = ball(&p, radius)?;
    let g = &b.graph;
    let root = g.root();
    let pair = associated_pair(h);
    let d = pair.len() as f64;
    let cf = thm_be_raach(h);
    let mut rows = Vec::new();
    for (l, kind) in kinds(laplacian) {
        let scale = if l == Laplacian::Norm { 1.0 / d } else { 1.0 };
        rows.push(CurvatureRow {
            quantity: "K",
            at: "e".into(),
            laplacian: l,
            closed: cf.closed_form.map(|k| Quantity::Float(k * scale)),
            brute: bakry_emery(g, root, &kind)?,
        });
    }
    for &s in pair.letters() {
        let y = g
            .follow(root, h.canonical_letter(s))
            .ok_or_else(|| Error::Internal("ball misses a generator edge".into()))?;
        let norm = thm_or_raach(h, s)?;
        for (l, kind) in kinds(laplacian) {
            let (closed, brute) = match l {
                Laplacian::Norm => (norm.clone(), kappa_lly_transport(g, root, y)?),
                Laplacian::Nonnorm => (&norm * int(pair.len() as i64), kappa_lly_laplacian(g, root, y, &kind)?),
            };
            rows.push(CurvatureRow {
                quantity: "kappa",
                at: format!("e~{}", h.letter_name(s)),
                laplacian: l,
                closed: Some(Quantity::Exact(closed)),
                brute,
            });
        }
    }
    Ok(rows)
}

fn group_rows(p: &Presentation, laplacian: Option<Laplacian>, max_cosets: usize) -> Result<Vec<CurvatureRow>> {
    let t = enumerate_cosets(p, max_cosets)?;
    let g = cayley_from_cosets(&t)?;
    let mut rows = Vec::new();
    for x in 0..g.len() {
        if g.degree(x) == 0 {
            return Err(Error::invalid("the group is trivial: its Cayley graph has no edges"));
        }
        for (l, kind) in kinds(laplacian) {
            rows.push(CurvatureRow {
                quantity: "K",
                at: g.name(x).to_string(),
                laplacian: l,
                closed: None,
                brute: bakry_emery(&g, x, &kind)?,
            });
        }
    }
    for (u, v) in g.edges() {
        for (l, kind) in kinds(laplacian) {
            let brute = match l {
                Laplacian::Norm => kappa_lly_transport(&g, u, v)?,
                Laplacian::Nonnorm => kappa_lly_laplacian(&g, u, v, &kind)?,
            };
            rows.push(CurvatureRow {
                quantity: "kappa",
                at: format!("{}~{}", g.name(u), g.name(v)),
                laplacian: l,
                closed: None,
                brute,
            });
        }
    }
    Ok(rows)
}

fn cmd_curvature(
    p: &Presentation,
    laplacian: Option<Laplacian>,
    radius: u32,
    max_cosets: usize,
    output: &Output,
) -> Result<String> {
    let rows = match p.defining_graph() {
        Some(h) => raach_rows(h, laplacian, radius)?,
        None => group_rows(p, laplacian, max_cosets)?,
    };
    let seed = output.seed;
    Ok(match output.format.unwrap_or(Format::Table) {
        Format::Table => {
            let mut out = format!("# curvachay curvature seed={seed} input={}\n", p.render());
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.quantity.to_string(),
                        r.at.clone(),
                        kind_name(r.laplacian).to_string(),
                        r.closed.as_ref().map_or("-".to_string(), Quantity::cell),
                        result_cell(&r.brute),
                    ]
                })
                .collect();
            out.push_str(&table(&["quantity", "at", "laplacian", "closed_form", "brute_force"], &cells));
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "quantity": r.quantity,
                        "at": r.at,
                        "laplacian": kind_name(r.laplacian),
                        "closed_form": r.closed.as_ref().map(Quantity::json),
                        "brute_force": r.brute.to_json(),
                    })
                })
                .collect();
            let doc = json!({
                "schema": "curvachay-curvature/1",
                "seed": seed,
                "input": p.render(),
                "rows": rows,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => {
            let mut out = format!("# seed={seed}\n");
            out.push_str("quantity,at,laplacian,closed_rational,closed_float,brute_rational,brute_float\n");
            for r in &rows {
                let (cr, cf) = r.closed.as_ref().map(Quantity::parts).unwrap_or_default();
                let br = r.brute.exact.as_ref().map(rational::format).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.quantity,
                    csv_field(&r.at),
                    kind_name(r.laplacian),
                    cr,
                    cf,
                    br,
                    fmt_float(r.brute.value)
                );
            }
            out
        }
        Format::Dot => return Err(Error::invalid("curvature output supports table, json and csv")),
    })
}

fn cmd_verify(
    suite: Suite,
    max_gens: usize,
    pairs: &str,
    words: usize,
    edges: usize,
    max_cosets: usize,
    seed: u64,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = raach_family(max_gens);
    let mut report = Report::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Or) {
        report.extend(verify_or(&family)?);
    }
    if want(Suite::Be) {
        report.extend(verify_be(&family)?);
    }
    if want(Suite::Cycles) {
        report.extend(verify_cycles(&family)?);
    }
    if want(Suite::Eliminations) {
        report.extend(verify_eliminations(&family, words, &mut rng)?);
    }
    if want(Suite::Monotonicity) {
        let list = if pairs == "builtin" {
            builtin::monotonicity_pairs()
        } else {
            let text = std::fs::read_to_string(pairs).map_err(|e| Error::invalid(format!("cannot read {pairs}: {e}")))?;
            builtin::parse_pairs(&text)?
        };
        for pair in &list {
            for weighting in [Weighting::Adapted, Weighting::Unweighted] {
                let out = monotonicity_check(&pair.name, &pair.source, &pair.target, None, weighting, max_cosets, &mut rng)?;
                report.extend(out.report.clone());
                if weighting == Weighting::Unweighted {
                    let drop = !out.curvature_monotone(1e-9);
                    report.push(Record::new(
                        "monotonicity.unweighted.decrease",
                        if drop { "decreases" } else { "does not decrease" },
                        "",
                        Status::Skipped,
                        format!("{}: unit weights on both sides", pair.name),
                    ));
                }
            }
        }
    }
    if want(Suite::Properties) {
        report.extend(verify_edge_properties(&family, edges, &mut rng)?);
        report.extend(verify_be_definition(&family, 10, 100, &mut rng)?);
    }
    Ok(report)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Or => "or",
        Suite::Be => "be",
        Suite::Cycles => "cycles",
        Suite::Eliminations => "eliminations",
        Suite::Monotonicity => "monotonicity",
        Suite::Properties => "properties",
        Suite::All => "all",
    }
}

fn render_report(report: &Report, suite: Suite, output: &Output) -> Result<String> {
    let seed = output.seed;
    let summary = json!({
        "pass": report.count(Status::Pass),
        "violated": report.count(Status::Violated),
        "skipped": report.count(Status::Skipped),
    });
    Ok(match output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut out = json!({"header": {"schema": "curvachay-report/1", "suite": suite_name(suite), "seed": seed}}).to_string();
            out.push('\n');
            out.push_str(&report.to_json_lines());
            out.push_str(&json!({ "summary": summary }).to_string());
            out.push('\n');
            out
        }
        Format::Table => {
            let mut out = format!("# curvachay verify {} seed={seed}\n", suite_name(suite));
            let rows: Vec<Vec<String>> = report
                .records
                .iter()
                .map(|r| vec![r.claim.clone(), r.status.to_string(), r.lhs.to_string(), r.rhs.to_string(), r.witness_ref.clone()])
                .collect();
            out.push_str(&table(&["claim", "status", "lhs", "rhs", "witness"], &rows));
            let _ = writeln!(
                out,
                "# pass={} violated={} skipped={}",
                report.count(Status::Pass),
                report.count(Status::Violated),
                report.count(Status::Skipped)
            );
            out
        }
        Format::Csv => {
            let mut out = format!("# seed={seed}\nclaim,status,lhs,rhs,witness_ref\n");
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&r.claim),
                    r.status,
                    csv_field(&r.lhs.to_string()),
                    csv_field(&r.rhs.to_string()),
                    csv_field(&r.witness_ref)
                );
            }
            out
        }
        Format::Dot => return Err(Error::invalid("verify output supports json, table and csv")),
    })
}

fn ball_graph(p: &Presentation, radius: u32, max_cosets: usize) -> Result<LocalGraph> {
    if p.defining_graph().is_some() {
        // one layer more, so edges inside the outer sphere are kept
        let g = ball_with(p, radius + 1, BallOptions::default())?.graph;
        return Ok(g.induced_ball(g.root(), radius));
    }
    if radius == 0 {
        return Err(Error::invalid("radius must be at least 1"));
    }
    let t = enumerate_cosets(p, max_cosets)?;
    let g = cayley_from_cosets(&t)?;
    Ok(g.induced_ball(0, radius))
}

fn cmd_ball(p: &Presentation, radius: u32, max_cosets: usize, output: &Output) -> Result<String> {
    let g = ball_graph(p, radius, max_cosets)?;
    let seed = output.seed;
    Ok(match output.format.unwrap_or(Format::Dot) {
        Format::Dot => format!("// curvachay ball seed={seed} radius={radius}\n{}", g.to_dot()),
        Format::Json => {
            let doc = json!({"schema": "curvachay-ball/1", "seed": seed, "input": p.render(), "radius": radius, "graph": g.to_json()});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Table => {
            let dist = g.bfs(g.root(), None);
            let mut sizes = vec![0usize; radius as usize + 1];
            for d in dist.into_iter().flatten() {
                if (d as usize) < sizes.len() {
                    sizes[d as usize] += 1;
                }
            }
            let rows: Vec<Vec<String>> = sizes.iter().enumerate().map(|(k, n)| vec![k.to_string(), n.to_string()]).collect();
            let mut out = format!("# curvachay ball seed={seed} radius={radius} vertices={} edges={}\n", g.len(), g.num_edges());
            out.push_str(&table(&["sphere", "vertices"], &rows));
            out
        }
        Format::Csv => {
            let mut out = format!("# seed={seed}\nu,v,weight\n");
            for (u, v) in g.edges() {
                let w = &g.edge(u, v).expect("edge").weight;
                let _ = writeln!(out, "{},{},{}", csv_field(g.name(u)), csv_field(g.name(v)), rational::format(w));
            }
            out
        }
    })
}

fn letters_text(h: &DefiningGraph, w: &Word) -> String {
    w.render(h.names())
}

fn cmd_eliminate(
    input: &Input,
    r4: Option<String>,
    rinf: Option<String>,
    mut words: Vec<String>,
    mut new_words: Vec<String>,
    output: &Output,
) -> Result<String> {
    let (kind, name) = match (r4, rinf) {
        (Some(n), None) => (EliminationKind::Order4, n),
        (None, Some(n)) => (EliminationKind::Infinite, n),
        _ => return Err(Error::invalid("pass exactly one of --r4 NAME or --rinf NAME")),
    };
    let has_input = input.raach.is_some() || input.group.is_some() || input.file.is_some() || input.builtin.is_some();
    let p = if has_input {
        read_input(input)?
    } else {
        // sample presentations with the sample words below
        let (text, w, v) = match kind {
            EliminationKind::Order4 => (
                format!("{name}:4, s1:inf, s2:inf, s3:inf"),
                format!("{name}^-1 s1 {name}^2 s2^-1 {name}"),
                format!("s1 {name}'^-1 s2 {name}''^2 {name}' s1 {name}'' {name}' s3 {name}'"),
            ),
            EliminationKind::Infinite => (
                format!("{name}:inf, s1:inf, s2:inf"),
                format!("{name}^-2 s1 {name}^2 s2 {name}"),
                format!("{name}'^-1 s1 {name}' {name}'' s2^2 {name}' {name}''^2"),
            ),
        };
        if words.is_empty() && new_words.is_empty() {
            words.push(w);
            new_words.push(v);
        }
        parse_raach_body(&text)?
    };
    let h = p.require_raach()?;
    let s0 = h
        .index_of(&name)
        .ok_or_else(|| Error::invalid(format!("no generator named {name}")))?;
    let (h2, map) = eliminate(h, s0, kind)?;
    let p2 = Presentation::raach(h2.clone());
    let forward = translate(&p, h, &h2, &map, &words, true)?;
    let backward = translate(&p2, &h2, h, &map, &new_words, false)?;
    let seed = output.seed;
    Ok(match output.format.unwrap_or(Format::Table) {
        Format::Json => {
            let pairs = |v: &[(String, String)]| v.iter().map(|(a, b)| json!({"word": a, "image": b})).collect::<Vec<_>>();
            let doc = json!({
                "schema": "curvachay-eliminate/1",
                "seed": seed,
                "input": h.render(),
                "output": h2.render(),
                "forward": pairs(&forward),
                "backward": pairs(&backward),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Table => {
            let mut out = format!("# curvachay eliminate seed={seed}\ninput:  {}\noutput: {}\n", h.render(), h2.render());
            for (a, b) in &forward {
                let _ = writeln!(out, "forward:  {a}  ->  {b}");
            }
            for (a, b) in &backward {
                let _ = writeln!(out, "backward: {a}  ->  {b}");
            }
            out
        }
        _ => return Err(Error::invalid("eliminate output supports table and json")),
    })
}

fn translate(
    p: &Presentation,
    from: &DefiningGraph,
    to: &DefiningGraph,
    map: &WordMap,
    words: &[String],
    forward: bool,
) -> Result<Vec<(String, String)>> {
    words
        .iter()
        .map(|text| {
            let w = p.parse_word(text)?;
            let img = if forward { map.apply(&w) } else { map.invert(&w) };
            Ok((letters_text(from, &w), letters_text(to, &img)))
        })
        .collect()
}

fn cmd_spectrum(p: &Presentation, output: &Output) -> Result<String> {
    let h = p.require_raach()?;
    let pair = associated_pair(h);
    let summary = SpectralSummary::of(&pair);
    let l2 = summary.lambda2();
    let seed = output.seed;
    Ok(match output.format.unwrap_or(Format::Table) {
        Format::Table => {
            let mut out = format!("# curvachay spectrum seed={seed} input={}\n", h.render());
            let rows: Vec<Vec<String>> = summary
                .spectrum
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let mark = if i == 1 { "lambda2" } else { "" };
                    vec![(i + 1).to_string(), fmt_float(*x), mark.to_string()]
                })
                .collect();
            out.push_str(&table(&["index", "eigenvalue", ""], &rows));
            match l2 {
                Some(x) => {
                    let _ = writeln!(out, "lambda2 = {}", fmt_float(x));
                }
                None => out.push_str("lambda2 undefined: fewer than two letters\n"),
            }
            out
        }
        Format::Json => {
            let doc = json!({
                "schema": "curvachay-spectrum/1",
                "seed": seed,
                "input": h.render(),
                "letters": pair.names(),
                "spectrum": summary.spectrum,
                "lambda2": l2,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => {
            let mut out = format!("# seed={seed}\nindex,eigenvalue,lambda2\n");
            for (i, x) in summary.spectrum.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", i + 1, fmt_float(*x), i == 1);
            }
            out
        }
        Format::Dot => return Err(Error::invalid("spectrum output supports table, json and csv")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_are_trimmed() {
        assert_eq!(fmt_float(2.0000000000000004), "2");
        assert_eq!(fmt_float(-0.6666666666666666), "-0.666666666667");
        assert_eq!(fmt_float(-1e-17), "0");
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Budget("x".into())), 3);
        assert_eq!(exit_code(&Error::invalid("x")), 2);
    }
}
