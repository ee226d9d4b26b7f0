use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fanbranch::cft::{assemble_partition_function, coset_characters, format_power_series, is_conformal};
use fanbranch::linalg::{fmt_rational, parse_rational, q};
use fanbranch::oracle::brute_force_branch;
use fanbranch::{Brancher, BranchingTable, EmbeddingSpec, FormalElement, LabelPoint, Rational, Weight};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "fanbranch", version, about = "Exact branching rules for classical and affine Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the injection fan of an embedding.
    Fan {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[arg(long)]
        max_grade: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the reduced singular element of a module.
    Singular {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Branching coefficients of a module.
    Branch {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the recurrence with weight-diagram peeling.
    Verify {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[command(flatten)]
        module: ModuleArgs,
        /// Maximum number of weights in the oracle diagram.
        #[arg(long, default_value_t = 2_000_000)]
        limit: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Coset characters of an affine module.
    Coset {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Modular invariant induced by a conformal embedding.
    Invariant {
        #[command(flatten)]
        emb: EmbeddingArgs,
        #[arg(long)]
        level: i64,
        #[arg(long, default_value_t = 6)]
        max_grade: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct EmbeddingArgs {
    /// Ambient algebra, e.g. `B4` or `B2^`.
    #[arg(long)]
    g: Option<String>,
    /// Subalgebra, e.g. `B2` or `A1^`.
    #[arg(long)]
    a: Option<String>,
    /// Nodes of the extended diagram to delete (0 is the affine node).
    #[arg(long, alias = "drop-classical", value_delimiter = ',')]
    drop: Vec<usize>,
    /// Nodes of the extended diagram to keep; overrides `--drop`.
    #[arg(long, value_delimiter = ',')]
    keep: Option<Vec<usize>>,
    /// JSON embedding description.
    #[arg(long)]
    embedding_file: Option<PathBuf>,
    /// Memoize coset representatives across weights (finite algebras).
    #[arg(long)]
    cache: bool,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Dynkin labels `1,0`, or JSON `{"labels": [...]}` / `{"eps": [...], "level": k, "grade": n}`.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[arg(long)]
    level: Option<i64>,
    /// Depth below the highest weight (affine only).
    #[arg(long)]
    max_grade: Option<u32>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum)]
    plot: Option<Plot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Qseries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Plot {
    Text,
    Svg,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightInput {
    Labels { labels: Vec<i64> },
    Eps { eps: Vec<Value>, #[serde(default)] level: Option<Value>, #[serde(default)] grade: Option<Value> },
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(q).ok_or_else(|| anyhow!("{n} is not an integer")),
        Value::String(s) => parse_rational(s).map_err(Into::into),
        other => bail!("expected a rational, got {other}"),
    }
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn load_embedding(args: &EmbeddingArgs) -> Result<EmbeddingSpec> {
    let spec = match &args.embedding_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let spec = EmbeddingSpec::from_json(&text)?;
            for (flag, given, actual) in [("--g", &args.g, &spec.g), ("--a", &args.a, &spec.a)] {
                if let Some(s) = given {
                    let parsed: fanbranch::AlgebraSpec = s.parse()?;
                    if &parsed != actual {
                        bail!("{flag} {s} disagrees with the embedding file ({actual})");
                    }
                }
            }
            spec
        }
        None => {
            let g = args.g.as_deref().ok_or_else(|| anyhow!("--g is required without --embedding-file"))?;
            let a = args.a.as_deref().ok_or_else(|| anyhow!("--a is required without --embedding-file"))?;
            match &args.keep {
                Some(keep) => EmbeddingSpec::regular_keep(g, a, keep)?,
                None => EmbeddingSpec::regular(g, a, &args.drop)?,
            }
        }
    };
    Ok(spec)
}

fn brancher(args: &EmbeddingArgs, cutoff: Option<u32>) -> Result<Brancher> {
    let spec = load_embedding(args).context("embedding")?;
    let b = Brancher::new(&spec, cutoff).context("embedding")?;
    Ok(if args.cache { b.with_coset_cache() } else { b })
}

fn parse_weight(b: &Brancher, m: &ModuleArgs) -> Result<Weight> {
    let g = b.g();
    if !g.is_affine() && m.level.is_some_and(|l| l != 0) {
        bail!("finite algebras have no level");
    }
    let level = || -> Result<i64> {
        if g.is_affine() {
            m.level.ok_or_else(|| anyhow!("--level is required for affine algebras"))
        } else {
            Ok(0)
        }
    };
    let text = m.weight.trim();
    let labels = if text.starts_with('{') {
        match serde_json::from_str::<WeightInput>(text).context("weight JSON")? {
            WeightInput::Labels { labels } => labels,
            WeightInput::Eps { eps, level: l, grade } => {
                let finite = eps.iter().map(json_rational).collect::<Result<Vec<_>>>()?;
                let level = match l {
                    Some(v) => json_rational(&v)?,
                    None => q(level()?),
                };
                let grade = grade.as_ref().map(json_rational).transpose()?.unwrap_or_else(Rational::zero);
                return Ok(Weight::new(finite, level, grade));
            }
        }
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<i64>().with_context(|| format!("bad label {s:?}")))
            .collect::<Result<Vec<_>>>()?
    };
    if labels.len() != g.rank() {
        bail!("{} needs {} labels, got {}", g.spec(), g.rank(), labels.len());
    }
    Ok(g.from_labels(&labels, level()?, 0))
}

fn labels_text(labels: &[i64]) -> String {
    labels.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn point_text(p: &LabelPoint, a_level: Option<&Rational>) -> String {
    match a_level {
        Some(k) => format!("({};{};{})", labels_text(&p.labels), fmt_rational(k), p.grade),
        None => format!("[{}]", labels_text(&p.labels)),
    }
}

fn point_json(p: &LabelPoint, affine: bool) -> Value {
    if affine {
        json!({ "labels": p.labels, "grade": p.grade })
    } else {
        json!(p.labels)
    }
}

fn sorted_points<'a>(b: &Brancher, keys: impl Iterator<Item = &'a LabelPoint>) -> Vec<LabelPoint> {
    let mut pts: Vec<LabelPoint> = keys.cloned().collect();
    b.embedding().order().sort_descending(&mut pts);
    pts
}

fn render_plot(points: &FormalElement<LabelPoint>, plot: Plot) -> Result<String> {
    let coords: Vec<(i64, i64, String)> = points
        .iter()
        .map(|(p, c)| match p.labels.as_slice() {
            [x] => Ok((*x, p.grade, c.to_string())),
            [x, y] if p.grade == 0 => Ok((*x, *y, c.to_string())),
            _ => Err(anyhow!("plots need a rank-1 subalgebra or a finite rank-2 subalgebra")),
        })
        .collect::<Result<_>>()?;
    if coords.is_empty() {
        return Ok(String::new());
    }
    let (xmin, xmax) = (coords.iter().map(|c| c.0).min().unwrap(), coords.iter().map(|c| c.0).max().unwrap());
    let (ymin, ymax) = (coords.iter().map(|c| c.1).min().unwrap(), coords.iter().map(|c| c.1).max().unwrap());
    match plot {
        Plot::Text => {
            let width = coords.iter().map(|c| c.2.len()).max().unwrap().max(1) + 1;
            let mut out = String::new();
            for y in (ymin..=ymax).rev() {
                let row: String = (xmin..=xmax)
                    .map(|x| {
                        let cell = coords.iter().find(|c| c.0 == x && c.1 == y).map_or(".", |c| c.2.as_str());
                        format!("{cell:>width$}")
                    })
                    .collect();
                out.push_str(&format!("{y:>4} |{row}\n"));
            }
            out.push_str(&format!("     x from {xmin} to {xmax}\n"));
            Ok(out)
        }
        Plot::Svg => {
            let cell = 40;
            let (w, h) = ((xmax - xmin + 2) * cell, (ymax - ymin + 2) * cell);
            let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n");
            for (x, y, c) in &coords {
                let cx = (x - xmin + 1) * cell;
                let cy = (ymax - y + 1) * cell;
                let fill = if c.starts_with('-') { "#c0392b" } else { "#2c3e50" };
                out.push_str(&format!(
                    "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"4\" fill=\"{fill}\"/>\n  <text x=\"{}\" y=\"{}\" font-size=\"12\">{c}</text>\n",
                    cx + 6,
                    cy - 6
                ));
            }
            out.push_str("</svg>\n");
            Ok(out)
        }
    }
}

fn cmd_fan(emb: &EmbeddingArgs, max_grade: Option<u32>, out: &OutputArgs) -> Result<String> {
    let b = brancher(emb, max_grade)?;
    let fan = b.fan();
    let affine = b.embedding().is_affine();
    if let Some(plot) = out.plot {
        return render_plot(fan.carrier(), plot);
    }
    Ok(match out.format {
        Format::Json => {
            let shifted: Vec<Value> =
                fan.shifted().iter().map(|(g, s)| json!({ "gamma": point_json(g, affine), "s": int_json(s) })).collect();
            let v = json!({
                "embedding": serde_json::to_value(b.embedding().spec())?,
                "gamma0": point_json(fan.gamma0(), affine),
                "s0": int_json(fan.s0()),
                "shifted": shifted,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        _ => {
            let mut s = format!("gamma0 {} s {}\n", fan.gamma0(), fan.s0());
            for (g, c) in fan.shifted() {
                s.push_str(&format!("{g} : {c}\n"));
            }
            s
        }
    })
}

fn cmd_singular(emb: &EmbeddingArgs, m: &ModuleArgs, out: &OutputArgs) -> Result<String> {
    let b = brancher(emb, m.max_grade)?;
    let mu = parse_weight(&b, m)?;
    let sing = b.singular(&mu).context("singular element")?;
    if let Some(plot) = out.plot {
        return render_plot(sing.terms(), plot);
    }
    let affine = b.embedding().is_affine();
    let pts = sorted_points(&b, sing.terms().keys());
    Ok(match out.format {
        Format::Json => {
            let terms: Vec<Value> = pts
                .iter()
                .map(|p| json!({ "nu": point_json(p, affine), "coeff": int_json(&sing.coefficient(p)) }))
                .collect();
            serde_json::to_string_pretty(&json!({ "module": mu.to_string(), "terms": terms }))? + "\n"
        }
        _ => pts.iter().map(|p| format!("{p} : {}\n", sing.coefficient(p))).collect(),
    })
}

fn branch_json(b: &Brancher, mu: &Weight, t: &BranchingTable) -> Result<Value> {
    let affine = b.embedding().is_affine();
    let pts = sorted_points(b, t.entries().keys());
    let branching: Vec<Value> =
        pts.iter().map(|p| json!({ "nu": point_json(p, affine), "coeff": int_json(&t.entries()[p]) })).collect();
    let mut functions = serde_json::Map::new();
    if affine {
        for f in t.branching_functions() {
            let coeffs: Vec<Value> = f.coefficients.iter().map(int_json).collect();
            functions.insert(format!("[{}]", labels_text(&f.labels)), json!({ "leading_grade": f.leading_grade, "coefficients": coeffs }));
        }
    }
    Ok(json!({
        "module": mu.to_string(),
        "embedding": serde_json::to_value(b.embedding().spec())?,
        "branching": branching,
        "branching_functions": functions,
    }))
}

fn qseries_text(b: &Brancher, mu: &Weight, t: &BranchingTable) -> String {
    let top = mu.grade.to_integer().to_i64().unwrap_or(0);
    let mut out = String::new();
    let mut fs = t.branching_functions();
    fs.sort_by_key(|f| std::cmp::Reverse(b.embedding().order().height(&LabelPoint::new(f.labels.clone(), 0))));
    for f in fs {
        let shift = top - f.leading_grade;
        let prefix = if shift == 0 { String::new() } else { format!("q^{shift} * ") };
        out.push_str(&format!("b_[{}] = {prefix}{}\n", labels_text(&f.labels), format_power_series(&f.coefficients)));
    }
    out
}

fn cmd_branch(emb: &EmbeddingArgs, m: &ModuleArgs, out: &OutputArgs) -> Result<String> {
    let b = brancher(emb, m.max_grade)?;
    let mu = parse_weight(&b, m)?;
    let t = b.branch(&mu).context("recurrence")?;
    Ok(match out.format {
        Format::Json => serde_json::to_string_pretty(&branch_json(&b, &mu, &t)?)? + "\n",
        Format::Qseries => {
            if !b.embedding().is_affine() {
                bail!("q-series output needs an affine embedding");
            }
            qseries_text(&b, &mu, &t)
        }
        Format::Table => {
            let pts = sorted_points(&b, t.entries().keys());
            pts.iter().map(|p| format!("{} : {}\n", point_text(p, t.a_level()), t.entries()[p])).collect()
        }
    })
}

fn cmd_verify(emb: &EmbeddingArgs, m: &ModuleArgs, limit: usize, out: &OutputArgs) -> Result<(String, bool)> {
    let b = brancher(emb, m.max_grade)?;
    let mu = parse_weight(&b, m)?;
    let sing = b.singular(&mu).context("singular element")?;
    let anom = b.anomalous(&mu).context("recurrence")?;
    let engine = b.branch(&mu).context("recurrence")?;
    let oracle = brute_force_branch(&mu, b.embedding(), m.max_grade, limit).context("oracle")?;

    let mut bad_residual = 0usize;
    let floor = anom.floor().unwrap_or(i64::MIN);
    let mut checked = std::collections::BTreeSet::new();
    for k in anom.terms().keys().chain(sing.terms().keys()) {
        for g in b.fan().carrier().keys() {
            let xi = k - g;
            if xi.grade >= floor && checked.insert(xi.clone()) && !anom.residual(&sing, b.fan(), &xi).is_zero() {
                bad_residual += 1;
            }
        }
    }
    let agree = engine.entries() == oracle.entries();
    let ok = agree && bad_residual == 0;
    let text = match out.format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "module": mu.to_string(),
                "agree": agree,
                "entries": engine.entries().len(),
                "residual_points": checked.len(),
                "residual_failures": bad_residual,
            }))? + "\n"
        }
        _ => {
            let mut s = format!(
                "entries {}\nresidual checked at {} points, {} nonzero\noracle {}\n",
                engine.entries().len(),
                checked.len(),
                bad_residual,
                if agree { "agrees" } else { "DISAGREES" }
            );
            if !agree {
                for (p, c) in oracle.entries() {
                    let e = engine.entries().get(p).cloned().unwrap_or_default();
                    if &e != c {
                        s.push_str(&format!("  {} engine {} oracle {}\n", point_text(p, engine.a_level()), e, c));
                    }
                }
            }
            s
        }
    };
    Ok((text, ok))
}

fn cmd_coset(emb: &EmbeddingArgs, m: &ModuleArgs, out: &OutputArgs) -> Result<String> {
    let b = brancher(emb, m.max_grade)?;
    if !b.embedding().is_affine() {
        bail!("coset characters need an affine embedding");
    }
    let mu = parse_weight(&b, m)?;
    let level = mu.level.clone();
    let t = b.branch(&mu).context("recurrence")?;
    let chars = coset_characters(&t, &mu, b.embedding()).context("coset")?;
    let report = is_conformal(b.embedding(), b.orthogonal(), &level)?;
    Ok(match out.format {
        Format::Json => {
            let list: Vec<Value> = chars
                .iter()
                .map(|(l, s)| {
                    json!({
                        "nu": l,
                        "prefactor_exponent": fmt_rational(&s.exponent),
                        "coefficients": s.coefficients.iter().map(int_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "module": mu.to_string(),
                "central_charge": fmt_rational(&(&report.c_g - &report.c_a)),
                "characters": list,
            }))? + "\n"
        }
        _ => {
            let mut s = format!("coset central charge {}\n", fmt_rational(&(&report.c_g - &report.c_a)));
            for (l, series) in chars {
                s.push_str(&format!("chi_[{}] = {series}\n", labels_text(&l)));
            }
            s
        }
    })
}

fn cmd_invariant(emb: &EmbeddingArgs, level: i64, max_grade: u32, out: &OutputArgs) -> Result<String> {
    let b = brancher(emb, Some(max_grade))?;
    let z = assemble_partition_function(&b, level).context("invariant")?;
    let m = z.mass_matrix();
    Ok(match out.format {
        Format::Json => {
            let rows: Vec<Value> = z
                .rows
                .iter()
                .map(|(l, row)| json!({ "mu": l, "b": row.iter().map(int_json).collect::<Vec<_>>() }))
                .collect();
            let matrix: Vec<Vec<Value>> = m.iter().map(|r| r.iter().map(int_json).collect()).collect();
            serde_json::to_string_pretty(&json!({
                "a_level": fmt_rational(&z.a_level),
                "classes": z.classes,
                "rows": rows,
                "mass_matrix": matrix,
                "rendered": z.render(),
            }))? + "\n"
        }
        _ => {
            let mut s = z.render() + "\n";
            for (i, row) in m.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
                s.push_str(&format!("[{}] {}\n", labels_text(&z.classes[i]), cells.join(" ")));
            }
            s
        }
    })
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Command::Fan { emb, max_grade, out } => ok(cmd_fan(emb, *max_grade, out)?),
        Command::Singular { emb, module, out } => ok(cmd_singular(emb, module, out)?),
        Command::Branch { emb, module, out } => ok(cmd_branch(emb, module, out)?),
        Command::Verify { emb, module, limit, out } => cmd_verify(emb, module, *limit, out),
        Command::Coset { emb, module, out } => ok(cmd_coset(emb, module, out)?),
        Command::Invariant { emb, level, max_grade, out } => ok(cmd_invariant(emb, *level, *max_grade, out)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
