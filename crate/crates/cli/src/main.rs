use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fusionkit_core::condense::{self, CondensedCategory};
use fusionkit_core::exactnum::render;
use fusionkit_core::fusring::{verify_modular, verlinde, ModularData};
use fusionkit_core::paperdata::{self, GoldenCatalog};
use fusionkit_core::report::{Report, Status};
use fusionkit_core::wzw::{self, AlgebraSpec};

#[derive(Parser, Debug)]
#[command(name = "fusionkit", version, about = "Exact modular data for sl2/sl3 WZW categories and their condensations")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, twists, fusion rules or S-matrix of C(g, k).
    Wzw(WzwArgs),
    /// Z3 simple-current condensation of C(sl3, k).
    Condense(CondenseArgs),
    /// Run every comparison against the tabulated data.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algebra {
    Sl2,
    Sl3,
}

#[derive(Args, Debug)]
struct Level {
    #[arg(long, value_enum)]
    algebra: Algebra,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    level: u32,
}

impl Level {
    fn spec(&self) -> Result<AlgebraSpec, String> {
        match self.algebra {
            Algebra::Sl2 => AlgebraSpec::sl2(self.level),
            Algebra::Sl3 => AlgebraSpec::sl3(self.level),
        }
        .map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
struct WzwArgs {
    #[command(flatten)]
    level: Level,
    #[arg(long)]
    dims: bool,
    #[arg(long)]
    twists: bool,
    #[arg(long)]
    fusion: bool,
    /// S-matrix rows.
    #[arg(long)]
    s: bool,
    /// Emit the full modular data as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CondenseArgs {
    #[command(flatten)]
    level: Level,
    /// Also run the étale, modularity and Verlinde checks.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    json: bool,
    /// Read golden tables from this directory instead of the built-in copy.
    #[arg(long, value_name = "DIR")]
    golden: Option<PathBuf>,
    /// Print only WARN and FAIL lines plus the summary.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Serialize)]
struct CondenseOutput<'a> {
    #[serde(flatten)]
    category: &'a CondensedCategory,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Report>,
}

// (output, success)
type Outcome = Result<(String, bool), String>;

fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| e.to_string())
}

fn sections(parts: Vec<(&str, String)>) -> String {
    if parts.len() == 1 {
        return parts.into_iter().next().map(|(_, body)| body).unwrap_or_default();
    }
    let mut out = String::new();
    for (i, (title, body)) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "# {title}");
        out.push_str(&body);
    }
    out
}

fn column(md: &ModularData, values: &[fusionkit_core::CycNum]) -> String {
    let width = md.labels().iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (label, v) in md.labels().iter().zip(values) {
        let _ = writeln!(out, "{label:<width$}  {}", render(v));
    }
    out
}

fn fusion_table(md: &ModularData) -> String {
    let r = md.ring();
    let mut out = String::new();
    for i in 0..r.rank() {
        for j in 0..r.rank() {
            let _ = writeln!(out, "{}⊗{} = {}", r.label(i), r.label(j), r.format_product(i, j));
        }
    }
    out
}

fn s_table(md: &ModularData) -> String {
    let mut out = String::new();
    for (label, row) in md.labels().iter().zip(md.s()) {
        let cells: Vec<String> = row.iter().map(render).collect();
        let _ = writeln!(out, "{label}\t{}", cells.join("\t"));
    }
    out
}

fn cmd_wzw(a: &WzwArgs) -> Outcome {
    let spec = a.level.spec()?;
    let md = wzw::modular_data(&spec).map_err(|e| e.to_string())?;
    if a.json {
        return Ok((json(&md)?, true));
    }
    let none = !(a.dims || a.twists || a.fusion || a.s);
    let mut parts = Vec::new();
    if a.dims || none {
        parts.push(("dims", column(&md, md.dims())));
    }
    if a.twists || none {
        parts.push(("twists", column(&md, md.twists())));
    }
    if a.fusion {
        parts.push(("fusion", fusion_table(&md)));
    }
    if a.s {
        parts.push(("S", s_table(&md)));
    }
    Ok((sections(parts), true))
}

fn condense_checks(spec: &AlgebraSpec, cat: &CondensedCategory) -> Result<Report, String> {
    let mut rep = condense::etale_check(spec).map_err(|e| e.to_string())?;
    rep.extend("modular", verify_modular(&cat.md));
    match verlinde(&cat.md) {
        Ok(n) => {
            rep.check("Verlinde round-trip", n == cat.md.ring().constants(), "balancing S reproduces the fusion rules")
        }
        Err(e) => rep.check("Verlinde round-trip", false, e.to_string()),
    }
    Ok(rep)
}

fn cmd_condense(a: &CondenseArgs) -> Outcome {
    let spec = a.level.spec()?;
    let etale = condense::etale_check(&spec).map_err(|e| e.to_string())?;
    if let Some(c) = etale.failures().next() {
        return Err(c.detail.clone());
    }
    let cat = condense::condensed_category(&spec).map_err(|e| e.to_string())?;
    let checks = if a.check { Some(condense_checks(&spec, &cat)?) } else { None };
    let ok = checks.as_ref().is_none_or(Report::passed);
    if a.json {
        return Ok((json(&CondenseOutput { category: &cat, checks })?, ok));
    }
    let md = &cat.md;
    let mut simples = String::new();
    for (i, label) in cat.simples.iter().enumerate() {
        let ambient: Vec<String> = cat.ambient_map[i].iter().map(|w| w.to_string()).collect();
        let _ = writeln!(
            simples,
            "{}\t{label}\td={}\tθ={}\t{}",
            md.label(i),
            render(&md.dims()[i]),
            render(&md.twists()[i]),
            ambient.join(" ")
        );
    }
    let mut parts = vec![("simples", simples), ("fusion", fusion_table(md)), ("S", s_table(md))];
    if let Some(rep) = &checks {
        parts.push(("checks", rep.to_string()));
    }
    Ok((sections(parts), ok))
}

fn summary(rep: &Report) -> String {
    format!("{} PASS, {} WARN, {} FAIL\n", rep.count(Status::Pass), rep.count(Status::Warn), rep.count(Status::Fail))
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let result = match &a.golden {
        Some(dir) => GoldenCatalog::load_dir(dir).and_then(|c| paperdata::verify_paper_with(&c)),
        None => paperdata::verify_paper(),
    };
    let rep = result.unwrap_or_else(|e| {
        let mut rep = Report::new("reproduction report");
        rep.push("golden tables", Status::Fail, e.to_string());
        rep
    });
    let ok = rep.passed();
    if a.json {
        return Ok((json(&rep)?, ok));
    }
    let mut out = String::new();
    for c in &rep.checks {
        if a.quiet && c.status == Status::Pass {
            continue;
        }
        if c.detail.is_empty() {
            let _ = writeln!(out, "[{}] {}", c.status, c.key);
        } else {
            let _ = writeln!(out, "[{}] {}: {}", c.status, c.key, c.detail);
        }
    }
    out.push_str(&summary(&rep));
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Wzw(a) => cmd_wzw(a),
        Command::Condense(a) => cmd_condense(a),
        Command::VerifyPaper(a) => cmd_verify(a),
    };
    let (text, ok) = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
