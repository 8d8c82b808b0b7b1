//! Command-line front end. Every subcommand prints one JSON document.

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::alexander::{alexander_from_matrix, dehn_matrix, fox_alexander};
use crate::corpus::{self, CorpusEntry};
use crate::diagram::{alexander_indices, faces, parse_pd, Diagram, Handedness};
use crate::error::{Error, Result};
use crate::finitefield::FieldCtx;
use crate::locsys::{orbifold_from, scan_levels, Cocycle, Stabilization, DEFAULT_BUDGET};
use crate::presentation::{dehn_presentation, render_word, wirtinger_presentation};
use crate::torsor::{count_torsors, GroupFamily, GroupSpec};
use crate::ztorsion::count_invertible_modules;

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "FFK_BUDGET";

/// Default `(p, nu)` grid of `verify`.
pub const VERIFY_GRID: [(u64, u32); 4] = [(2, 1), (2, 2), (3, 1), (5, 1)];

#[derive(Debug, Parser)]
#[command(name = "fknot", version, about = "Alexander polynomials and invertible-module counts of knot diagrams")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// PD code such as "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", JSON, or "unknot".
    pd: Option<String>,
    /// Read the diagram from a file instead.
    #[arg(long, conflicts_with = "pd")]
    file: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Dehn,
    Fox,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Group {
    Gl1,
    Gl2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Faces, region indices and crossing signs.
    Parse(Input),
    /// Dehn and Wirtinger presentations.
    Present(Input),
    /// Normalized Alexander polynomial.
    Alex {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "dehn")]
        method: Method,
    },
    /// Invertible-module count from the Smith normal form of A(q).
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        nu: u32,
    },
    /// Enumeration oracle with level scan.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        /// Largest level scanned (default 12 nu).
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Twisted torsor count for a small matrix group.
    Torsor {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "gl1")]
        group: Group,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Algebraic count against the enumeration oracle over the corpus.
    Verify {
        #[arg(long, requires = "nu")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        nu: Option<u32>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Corpus maintenance.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// Print the corpus with expected values recomputed by the Fox oracle.
    Regen,
    /// Print the bundled corpus.
    List,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (including the program name). `budget_env` is the
/// value of `FFK_BUDGET`, if set.
pub fn run(argv: &[String], budget_env: Option<&str>) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pretty = cli.pretty;
    let render = |v: &Value| {
        let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }
            .expect("JSON values serialize");
        s.push('\n');
        s
    };
    match execute(cli.command, budget_env) {
        Ok(Output::Json(v)) => Outcome { code: 0, stdout: render(&v), stderr: String::new() },
        Ok(Output::Raw(s)) => Outcome { code: 0, stdout: s, stderr: String::new() },
        Err(e) => Outcome {
            code: 1,
            stdout: render(&json!({"error": e.kind(), "detail": e.detail()})),
            stderr: String::new(),
        },
    }
}

enum Output {
    Json(Value),
    Raw(String),
}

fn budget_of(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{BUDGET_ENV}={s} is not a positive integer"))),
        None => Ok(DEFAULT_BUDGET),
    }
}

fn read_input(input: &Input) -> Result<Diagram> {
    let text = match (&input.pd, &input.file) {
        (Some(pd), _) => pd.clone(),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?
        }
        (None, None) => return Err(Error::InvalidParameter("no diagram given (positional PD or --file)".into())),
    };
    parse_pd(&text)
}

/// Integers as JSON numbers when they fit, decimal strings otherwise.
fn big(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn hand(h: Handedness) -> &'static str {
    match h {
        Handedness::Left => "left",
        Handedness::Right => "right",
    }
}

fn execute(cmd: Command, budget_env: Option<&str>) -> Result<Output> {
    let v = match cmd {
        Command::Parse(input) => parse_json(&read_input(&input)?)?,
        Command::Present(input) => present_json(&read_input(&input)?)?,
        Command::Alex { input, method } => {
            let d = read_input(&input)?;
            let poly = match method {
                Method::Dehn => alexander_from_matrix(&dehn_matrix(&dehn_presentation(&d)?))?,
                Method::Fox => fox_alexander(&wirtinger_presentation(&d))?,
            };
            json!({ "poly": poly.coeffs().iter().map(big).collect::<Vec<_>>() })
        }
        Command::Count { input, p, nu } => count_json(&read_input(&input)?, p, nu)?,
        Command::Enumerate { input, p, nu, cap, budget } => {
            let d = read_input(&input)?;
            let budget = budget_of(budget, budget_env)?;
            let cap = cap.unwrap_or(12 * nu);
            let s = crate::locsys::stable_class_count(&d, p, nu, cap, budget)?;
            enumerate_json(&s, budget)?
        }
        Command::Torsor { input, group, p, nu, level, budget } => {
            let d = read_input(&input)?;
            let family = match group {
                Group::Gl1 => GroupFamily::GL1,
                Group::Gl2 => GroupFamily::GL2,
            };
            let c = count_torsors(&d, &GroupSpec { family, p, level }, nu, budget_of(budget, budget_env)?)?;
            json!({
                "group": family.to_string(),
                "p": p,
                "nu": nu,
                "level": level,
                "group_order": c.group_order,
                "fixed_group_order": c.fixed_group_order,
                "unknowns": c.unknowns,
                "equations": c.equations,
                "search_points": c.search_points,
                "solutions": c.solutions,
                "classes": c.classes,
                "stabilizer_orders": c.orbits.iter().map(|o| o.stabilizer_order).collect::<Vec<_>>(),
            })
        }
        Command::Verify { p, nu, cap, budget } => {
            let grid: Vec<(u64, u32)> = match (p, nu) {
                (Some(p), Some(nu)) => vec![(p, nu)],
                _ => VERIFY_GRID.to_vec(),
            };
            verify_json(&corpus::primary_entries(), &grid, cap, budget_of(budget, budget_env)?)?
        }
        Command::Corpus { action } => {
            return Ok(Output::Raw(match action {
                CorpusAction::Regen => corpus::to_json(&corpus::regenerate(&corpus::corpus())?),
                CorpusAction::List => corpus::bundled_json().to_string(),
            }))
        }
    };
    Ok(Output::Json(v))
}

fn parse_json(d: &Diagram) -> Result<Value> {
    let regions = faces(d)?;
    let indices = alexander_indices(d, &regions)?;
    let regions_json: Vec<Value> = regions
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "corners": r.corners.iter().map(|&(c, q)| json!([c, q])).collect::<Vec<_>>(),
                "edges": r.edges.iter().map(|e| e + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "pd": d.pd_string(),
        "v": d.crossing_count(),
        "edges": d.edge_count(),
        "regions": regions_json,
        "indices": indices,
        "null_region": 0,
        "null_region_edges": regions.get(0).edges.iter().map(|e| e + 1).collect::<Vec<_>>(),
        "signs": d.signs(),
        "handedness": d.crossings().iter().map(|c| hand(c.handedness)).collect::<Vec<_>>(),
        "writhe": d.writhe(),
    }))
}

fn present_json(d: &Diagram) -> Result<Value> {
    let dehn = dehn_presentation(d)?;
    let wirt = wirtinger_presentation(d);
    Ok(json!({
        "dehn": {
            "generators": dehn.generator_count,
            "indices": dehn.indices,
            "relations": dehn.relations.iter().map(|r| json!({
                "crossing": r.crossing,
                "j": r.j, "k": r.k, "l": r.l, "m": r.m,
                "handedness": hand(r.handedness),
                "word": render_word("g", &r.word()),
            })).collect::<Vec<_>>(),
        },
        "wirtinger": {
            "generators": wirt.generator_count,
            "relations": wirt.relations.iter().map(|r| json!({
                "crossing": r.crossing,
                "outgoing": r.outgoing,
                "incoming": r.incoming,
                "over": r.over,
                "handedness": hand(r.handedness),
                "word": render_word("x", &r.relator()),
            })).collect::<Vec<_>>(),
        },
    }))
}

fn count_json(d: &Diagram, p: u64, nu: u32) -> Result<Value> {
    let c = count_invertible_modules(d, p, nu)?;
    Ok(json!({
        "q": big(&c.q),
        "delta_q": big(&c.delta_q),
        "count": big(&c.count),
        "p_divides_c0": c.p_divides_c0,
        "elementary_divisors": c.elementary_divisors.iter().map(big).collect::<Vec<_>>(),
    }))
}

fn cocycle_json(f: &FieldCtx, c: &Cocycle) -> Value {
    Value::Array(c.z.iter().map(|&x| json!(f.coeffs(x))).collect())
}

fn enumerate_json(s: &Stabilization, budget: u64) -> Result<Value> {
    let orbifold = orbifold_from(s)?;
    let (a, b) = s.stable_levels.expect("stabilized");
    let f = FieldCtx::new(s.p, a, true)?;
    let aut = s.automorphism_order.unwrap_or(0);
    Ok(json!({
        "p": s.p,
        "nu": s.nu,
        "q": s.q,
        "cap": s.cap,
        "budget": budget,
        "anchor_region": s.anchor_region,
        "levels": s.levels.iter().map(|l| json!({
            "level": l.level,
            "classes": l.classes,
            "total_cocycles": l.total_cocycles,
            "search_points": l.search_points,
            "finite_level_classes": l.finite_level_classes,
        })).collect::<Vec<_>>(),
        "stable_levels": [a, b],
        "stable_count": s.max_count,
        "field_modulus": f.modulus(),
        "representatives": s.representatives.iter().map(|c| cocycle_json(&f, c)).collect::<Vec<_>>(),
        "automorphism_orders": vec![aut; s.representatives.len()],
        "automorphisms_consistent": s.automorphism_consistent,
        "embedding_consistent": s.embedding_consistent,
        "orbifold": {"num": big(&orbifold.num), "den": big(&orbifold.den)},
    }))
}

/// One verify row: the algebraic count, and the oracle's class count at
/// every scanned level against the level count predicted by the elementary
/// divisors.
fn verify_row(e: &CorpusEntry, p: u64, nu: u32, cap: Option<u32>, budget: u64) -> Result<Value> {
    let d = parse_pd(&e.pd)?;
    let c = count_invertible_modules(&d, p, nu)?;
    let cap = cap.unwrap_or(12 * nu);
    let (status, oracle_count, max_observed, levels) = match scan_levels(&d, p, nu, cap, budget) {
        Ok(s) => {
            let levels: Vec<(u32, u64)> = s.levels.iter().map(|l| (l.level, l.classes)).collect();
            match s.stable_count() {
                Some(n) => ("stable", Some(n), Some(s.max_count), levels),
                None => ("not_stabilized", None, Some(s.max_count), levels),
            }
        }
        Err(Error::BudgetExceeded(_)) => ("budget_exceeded", None, None, Vec::new()),
        Err(e) => return Err(e),
    };
    let shortcut_ok = c.p_divides_c0 || *c.count.magnitude() == *c.delta_q.magnitude();
    let mut levels_agree = true;
    let mut full_level_reached = false;
    let level_rows: Vec<Value> = levels
        .iter()
        .map(|&(level, observed)| {
            let predicted = c.count_at_level(p, level);
            levels_agree &= BigInt::from(observed) == predicted;
            full_level_reached |= predicted == c.count;
            json!([level, observed, big(&predicted)])
        })
        .collect();
    // a stable reading can only be trusted once some scanned level carries
    // every class
    let stable_ok = match oracle_count {
        Some(n) if full_level_reached => BigInt::from(n) == c.count,
        _ => true,
    };
    Ok(json!({
        "knot": e.knot,
        "p": p,
        "nu": nu,
        "q": big(&c.q),
        "delta_q": big(&c.delta_q),
        "count": big(&c.count),
        "p_divides_c0": c.p_divides_c0,
        "oracle": {
            "status": status,
            "count": oracle_count,
            "max_observed": max_observed,
            "levels": level_rows,
            "levels_agree": levels_agree,
            "full_level_reached": full_level_reached,
        },
        "pass": shortcut_ok && levels_agree && stable_ok,
    }))
}

fn verify_json(entries: &[CorpusEntry], grid: &[(u64, u32)], cap: Option<u32>, budget: u64) -> Result<Value> {
    let mut keyed = Vec::new();
    for e in entries {
        for &(p, nu) in grid {
            keyed.push(((e.knot.clone(), p, nu), verify_row(e, p, nu, cap, budget)?));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let rows: Vec<Value> = keyed.into_iter().map(|(_, v)| v).collect();
    let all_pass = rows.iter().all(|r| r["pass"] == json!(true));
    Ok(json!({
        "grid": grid.iter().map(|&(p, nu)| json!([p, nu])).collect::<Vec<_>>(),
        "budget": budget,
        "rows": rows,
        "all_pass": all_pass,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        let mut argv = vec!["fknot".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        run(&argv, None)
    }

    fn value(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn count_trefoil() {
        let o = call(&["count", "--p", "2", "--nu", "1", TREFOIL]);
        assert_eq!(o.code, 0);
        let v = value(&o);
        assert_eq!((v["q"].clone(), v["delta_q"].clone(), v["count"].clone()), (json!(2), json!(3), json!(3)));
        assert_eq!(v["p_divides_c0"], json!(false));
    }

    #[test]
    fn alex_unknot() {
        let v = value(&call(&["alex", "unknot"]));
        assert_eq!(v["poly"], json!([1]));
        let v = value(&call(&["alex", "--method", "fox", TREFOIL]));
        assert_eq!(v["poly"], json!([1, -1, 1]));
    }

    #[test]
    fn errors_and_usage() {
        let o = call(&["alex", "X[1,4,2,5] X[3,6,4,1]"]);
        assert_eq!(o.code, 1);
        assert_eq!(value(&o)["error"], json!("InconsistentDiagram"));
        let o = call(&["alex", "X[1,2"]);
        assert_eq!(value(&o)["error"], json!("MalformedNotation"));
        assert_eq!(call(&["frobnicate"]).code, 2);
        assert_eq!(call(&["count", TREFOIL]).code, 2);
        let o = call(&["count", "--p", "4", TREFOIL]);
        assert_eq!(value(&o)["error"], json!("InvalidParameter"));
    }

    #[test]
    fn budget_from_env() {
        let argv: Vec<String> =
            ["fknot", "enumerate", "--p", "3", "--cap", "12", TREFOIL].iter().map(|s| s.to_string()).collect();
        let o = run(&argv, Some("1"));
        assert_eq!(value(&o)["error"], json!("BudgetExceeded"));
        assert_eq!(run(&argv, None).code, 0);
        assert_eq!(value(&run(&argv, Some("junk")))["error"], json!("InvalidParameter"));
    }

    #[test]
    fn enumerate_reports_orbifold() {
        let v = value(&call(&["enumerate", "--p", "3", "--cap", "12", TREFOIL]));
        assert_eq!(v["stable_count"], json!(7));
        assert_eq!(v["orbifold"], json!({"num": 7, "den": 2}));
        assert_eq!(v["stable_levels"], json!([6, 12]));
    }

    #[test]
    fn parse_and_present() {
        let v = value(&call(&["parse", TREFOIL]));
        assert_eq!(v["v"], json!(3));
        assert_eq!(v["regions"].as_array().unwrap().len(), 5);
        assert_eq!(v["indices"][0], json!(0));
        let v = value(&call(&["present", TREFOIL]));
        assert_eq!(v["dehn"]["generators"], json!(4));
        assert_eq!(v["wirtinger"]["relations"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn torsor_gl1() {
        let v = value(&call(&["torsor", "--group", "gl1", "--p", "2", "--level", "2", TREFOIL]));
        assert_eq!(v["solutions"], json!(3));
        assert_eq!(v["equations"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn pretty_is_the_same_document() {
        let a = value(&call(&["parse", TREFOIL]));
        let b = value(&call(&["--pretty", "parse", TREFOIL]));
        assert_eq!(a, b);
    }
}
