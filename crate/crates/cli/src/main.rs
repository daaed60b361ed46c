//! `solcalc`: ordered-group invariants for graph presentations of
//! one-dimensional branched solenoids.
//!
//! Exit codes: 0 success, 1 validation failure, 2 inconclusive (iteration
//! bound exhausted or tower too short), 3 usage error.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use solcalc_core::axioms::{
    check_flattening, check_markov, check_nonfolding, AxiomError, NonfoldingVerdict,
};
use solcalc_core::cohomology::{cohomology_basis, induced_cohomology_matrix};
use solcalc_core::dimension::{
    adjacency_matrix, check_simplicity, interpolate_with_bound, limit_equal, limit_sign,
    perron_data, DimensionError, LimitElement, SimplicityVerdict,
};
use solcalc_core::oracle::{oracle_limit_sign, OracleSign};
use solcalc_core::parse::parse_presentation;
use solcalc_core::presentation::Presentation;
use solcalc_core::report::{compare, invariants_report};
use solcalc_core::DEFAULT_ITERATION_BOUND;

use render::*;

#[derive(Parser)]
#[command(
    name = "solcalc",
    version,
    about = "Ordered-group invariants for graph presentations of one-dimensional solenoids"
)]
struct Cli {
    /// Emit a structured JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Iteration bound for lifting loops and the sign oracle
    /// (fallback: SOLCALC_BOUND environment variable, then 64)
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check nondegeneracy, chaining, Markov compatibility and connectivity
    Validate { file: PathBuf },
    /// Full invariants report for a stationary presentation
    Invariants { file: PathBuf },
    /// Cohomology-level data: rank, induced matrix, charpoly, Perron data,
    /// simplicity verdict
    Bruschlinsky { file: PathBuf },
    /// Markov, flattening and nonfolding checks
    Axioms { file: PathBuf },
    /// Sign of a direct-limit element over the adjacency matrix
    Sign {
        file: PathBuf,
        #[arg(long)]
        level: usize,
        /// Comma-separated integer coordinates, e.g. "1,-2"
        #[arg(long)]
        vec: String,
        /// Cross-check with the brute-force iteration oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Equality of two direct-limit elements (element syntax K:a,b,c)
    Equal {
        file: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Riesz interpolation of a dominated quadruple (element syntax K:a,b,c)
    Interpolate {
        file: PathBuf,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
    },
    /// Side-by-side invariants of two presentations
    Compare { file1: PathBuf, file2: PathBuf },
}

enum Failure {
    Usage(String),
    Validation(String),
    Inconclusive(String),
}

impl Failure {
    fn exit(&self) -> u8 {
        match self {
            Failure::Usage(_) => 3,
            Failure::Validation(_) => 1,
            Failure::Inconclusive(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Inconclusive(m) => m,
        }
    }
}

fn dimension_failure(e: DimensionError) -> Failure {
    match e {
        DimensionError::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
        DimensionError::IterationBoundExceeded { .. } => Failure::Inconclusive(e.to_string()),
        _ => Failure::Validation(e.to_string()),
    }
}

struct Input {
    presentation: Presentation,
    json: Value,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::Validation(format!("{} is not UTF-8", path.display())))?;
    let presentation = parse_presentation(&text)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    let json = json!({
        "path": path.display().to_string(),
        "sha256": hex,
        "inferred": presentation.is_inferred(),
    });
    Ok(Input { presentation, json })
}

fn require_stationary(p: &Presentation, what: &str) -> Result<(), Failure> {
    if p.is_stationary() {
        Ok(())
    } else {
        Err(Failure::Validation(format!(
            "{what} requires a stationary presentation"
        )))
    }
}

fn parse_vector(s: &str) -> Result<Vec<BigInt>, Failure> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    cleaned
        .split(',')
        .map(|tok| {
            tok.parse::<BigInt>()
                .map_err(|_| Failure::Usage(format!("`{tok}` is not an integer")))
        })
        .collect()
}

fn parse_element(s: &str) -> Result<LimitElement, Failure> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (level, rest) = cleaned
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("element `{s}` must look like K:a,b,c")))?;
    let level: usize = level
        .parse()
        .map_err(|_| Failure::Usage(format!("`{level}` is not a level number")))?;
    Ok(LimitElement::new(level, parse_vector(rest)?))
}

struct Outcome {
    result: Value,
    findings: Value,
    text: String,
    exit: u8,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Outcome {
        Outcome {
            result,
            findings: json!([]),
            text,
            exit: 0,
        }
    }
}

fn effective_bound(cli: &Cli) -> Result<usize, Failure> {
    if let Some(b) = cli.bound {
        return Ok(b);
    }
    match std::env::var("SOLCALC_BOUND") {
        Ok(v) => v
            .parse()
            .map_err(|_| Failure::Usage(format!("SOLCALC_BOUND=`{v}` is not a number"))),
        Err(_) => Ok(DEFAULT_ITERATION_BOUND),
    }
}

fn cmd_validate(input: &Input) -> Outcome {
    let report = input.presentation.validate();
    let mut text = String::new();
    for f in &report.findings {
        let scope = match f.level {
            Some(k) => format!(" [level {k}]"),
            None => String::new(),
        };
        if f.passed {
            text.push_str(&format!("{}{}: pass\n", f.check.name(), scope));
        } else {
            text.push_str(&format!(
                "{}{}: FAIL ({})\n",
                f.check.name(),
                scope,
                f.items.join(", ")
            ));
        }
    }
    let all = report.all_passed();
    text.push_str(if all {
        "presentation is valid\n"
    } else {
        "presentation is invalid\n"
    });
    Outcome {
        result: json!({ "all_passed": all }),
        findings: validation_json(&report),
        text,
        exit: if all { 0 } else { 1 },
    }
}

fn cmd_invariants(input: &Input) -> Result<Outcome, Failure> {
    require_stationary(&input.presentation, "invariants")?;
    let r = invariants_report(&input.presentation).map_err(dimension_failure)?;
    let text = invariants_text(&r, input.presentation.level(0));
    Ok(Outcome::ok(invariants_json(&r), text))
}

fn cmd_bruschlinsky(input: &Input) -> Result<Outcome, Failure> {
    let p = &input.presentation;
    if p.is_stationary() {
        let r = invariants_report(p).map_err(dimension_failure)?;
        let induced_perron = perron_data(&r.bruschlinsky_level.matrix).ok();
        let mut text = String::new();
        text.push_str(&format!("cohomology rank: {}\n", r.cohomology_rank));
        group_text(&mut text, "bruschlinsky group", &r.bruschlinsky_level);
        if let Some(pd) = &induced_perron {
            let ev: Vec<String> = pd.eigenvector.iter().map(|q| q.to_string()).collect();
            text.push_str(&format!("left eigenvector: ({})\n", ev.join(", ")));
        }
        text.push_str(&format!(
            "simplicity: {} ({})\n",
            r.simplicity.verdict.name(),
            r.simplicity.detail
        ));
        let exit = if r.simplicity.verdict == SimplicityVerdict::Inconclusive {
            2
        } else {
            0
        };
        Ok(Outcome {
            result: json!({
                "cohomology_rank": r.cohomology_rank,
                "bruschlinsky_level": group_json(&r.bruschlinsky_level),
                "perron": induced_perron.as_ref().map(perron_json),
                "simplicity": simplicity_json(&r.simplicity),
            }),
            findings: json!([]),
            text,
            exit,
        })
    } else {
        let ranks: Vec<usize> = p
            .levels()
            .iter()
            .map(|g| cohomology_basis(g).rank())
            .collect();
        let steps: Vec<Value> = (0..p.rule_count())
            .map(|k| {
                let m = induced_cohomology_matrix(p, k);
                json!({
                    "from_level": k,
                    "to_level": k + 1,
                    "matrix": matrix_json(&m),
                    "charpoly": m.charpoly().to_string(),
                })
            })
            .collect();
        let simplicity = check_simplicity(p);
        let mut text = String::new();
        for (k, r) in ranks.iter().enumerate() {
            text.push_str(&format!("level {k}: cohomology rank {r}\n"));
        }
        for (k, s) in steps.iter().enumerate() {
            text.push_str(&format!(
                "induced map {} -> {}: {} (charpoly {})\n",
                k,
                k + 1,
                s["matrix"],
                s["charpoly"].as_str().unwrap()
            ));
        }
        text.push_str(&format!(
            "simplicity: {} ({})\n",
            simplicity.verdict.name(),
            simplicity.detail
        ));
        let exit = if simplicity.verdict == SimplicityVerdict::Inconclusive {
            2
        } else {
            0
        };
        Ok(Outcome {
            result: json!({
                "cohomology_ranks": ranks,
                "induced_maps": steps,
                "simplicity": simplicity_json(&simplicity),
            }),
            findings: json!([]),
            text,
            exit,
        })
    }
}

fn cmd_axioms(input: &Input) -> Result<Outcome, Failure> {
    let p = &input.presentation;
    require_stationary(p, "axiom checks")?;
    let markov = check_markov(p.level(0), p.level(0), p.rule(0));
    let flattening = match check_flattening(p) {
        Ok(r) => json!({
            "status": if r.holds { "holds" } else { "fails" },
            "exponent": r.exponent,
        }),
        Err(AxiomError::SignedWordsUnsupported) => {
            json!({ "status": "not evaluated", "reason": "signed words" })
        }
        Err(e) => return Err(Failure::Validation(e.to_string())),
    };
    let nonfolding = match check_nonfolding(p).map_err(|e| Failure::Validation(e.to_string()))? {
        NonfoldingVerdict::Holds => json!({ "status": "holds" }),
        NonfoldingVerdict::Fails(w) => json!({
            "status": "fails",
            "witness": {
                "edge": p.level(0).edge_name(w.edge),
                "junction": w.junction,
                "steps": w.steps,
            },
        }),
    };
    let not_evaluated = json!([
        { "axiom": "indecomposability", "status": "not evaluated", "reason": "dynamical, not combinatorial" },
        { "axiom": "nonwandering", "status": "not evaluated", "reason": "dynamical, not combinatorial" },
        { "axiom": "expansion", "status": "not evaluated", "reason": "metric, not combinatorial" },
    ]);
    let mut text = format!("markov: {}\n", if markov { "holds" } else { "fails" });
    text.push_str(&format!(
        "flattening: {}{}\n",
        flattening["status"].as_str().unwrap(),
        match flattening.get("exponent").and_then(|e| e.as_u64()) {
            Some(k) => format!(" (k = {k})"),
            None => String::new(),
        }
    ));
    text.push_str(&format!(
        "nonfolding: {}",
        nonfolding["status"].as_str().unwrap()
    ));
    if let Some(w) = nonfolding.get("witness") {
        text.push_str(&format!(
            " (edge {} junction {} after {} steps)",
            w["edge"].as_str().unwrap(),
            w["junction"],
            w["steps"]
        ));
    }
    text.push('\n');
    text.push_str("indecomposability, nonwandering, expansion: not evaluated\n");
    Ok(Outcome {
        result: json!({
            "markov": markov,
            "flattening": flattening,
            "nonfolding": nonfolding,
        }),
        findings: not_evaluated,
        text,
        exit: 0,
    })
}

fn cmd_sign(
    input: &Input,
    level: usize,
    vec: &str,
    oracle: bool,
    bound: usize,
) -> Result<Outcome, Failure> {
    let p = &input.presentation;
    require_stationary(p, "sign")?;
    let m = adjacency_matrix(p.rule(0));
    let el = LimitElement::new(level, parse_vector(vec)?);
    let sign = limit_sign(&m, &el).map_err(dimension_failure)?;
    let mut result = json!({ "element": element_json(&el), "sign": sign.name() });
    let mut text = format!("sign: {}\n", sign.name());
    if oracle {
        let verdict = oracle_limit_sign(&m, &el.vector, bound);
        if verdict != OracleSign::Unknown {
            assert_eq!(
                verdict.name(),
                sign.name(),
                "iteration oracle disagrees with the exact sign; this is a bug"
            );
        }
        result["oracle"] = json!({ "verdict": verdict.name(), "bound": bound });
        text.push_str(&format!("oracle (bound {bound}): {}\n", verdict.name()));
    }
    Ok(Outcome::ok(result, text))
}

fn cmd_equal(input: &Input, lhs: &str, rhs: &str) -> Result<Outcome, Failure> {
    let p = &input.presentation;
    require_stationary(p, "equal")?;
    let m = adjacency_matrix(p.rule(0));
    let a = parse_element(lhs)?;
    let b = parse_element(rhs)?;
    let equal = limit_equal(&m, &a, &b).map_err(dimension_failure)?;
    Ok(Outcome::ok(
        json!({ "lhs": element_json(&a), "rhs": element_json(&b), "equal": equal }),
        format!("equal: {equal}\n"),
    ))
}

fn cmd_interpolate(input: &Input, specs: [&str; 4], bound: usize) -> Result<Outcome, Failure> {
    let p = &input.presentation;
    require_stationary(p, "interpolate")?;
    let m = adjacency_matrix(p.rule(0));
    let [a1, a2, b1, b2] = specs;
    let (a1, a2, b1, b2) = (
        parse_element(a1)?,
        parse_element(a2)?,
        parse_element(b1)?,
        parse_element(b2)?,
    );
    let c = interpolate_with_bound(&m, &a1, &a2, &b1, &b2, bound).map_err(dimension_failure)?;
    Ok(Outcome::ok(
        json!({ "element": element_json(&c) }),
        format!("interpolant: {}\n", element_text(&c)),
    ))
}

fn cmd_compare(a: &Input, b: &Input) -> Result<Outcome, Failure> {
    require_stationary(&a.presentation, "compare")?;
    require_stationary(&b.presentation, "compare")?;
    let c = compare(&a.presentation, &b.presentation).map_err(dimension_failure)?;
    let mut text = String::new();
    group_text(&mut text, "left matrix-level", &c.left.matrix_level);
    group_text(&mut text, "right matrix-level", &c.right.matrix_level);
    group_text(
        &mut text,
        "left bruschlinsky-level",
        &c.left.bruschlinsky_level,
    );
    group_text(
        &mut text,
        "right bruschlinsky-level",
        &c.right.bruschlinsky_level,
    );
    text.push_str(&format!(
        "matrix groups match: {}\nbruschlinsky groups match: {}\n",
        c.matrix_group_match, c.bruschlinsky_match
    ));
    if let Some(eq) = c.perron_roots_equal {
        text.push_str(&format!("perron roots equal: {eq}\n"));
    }
    text.push_str(&format!("note: {}\n", c.note));
    Ok(Outcome::ok(comparison_json(&c), text))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let bound = effective_bound(cli)?;
    let (name, inputs, outcome) = match &cli.command {
        Command::Validate { file } => {
            let input = load(file)?;
            ("validate", vec![input.json.clone()], cmd_validate(&input))
        }
        Command::Invariants { file } => {
            let input = load(file)?;
            (
                "invariants",
                vec![input.json.clone()],
                cmd_invariants(&input)?,
            )
        }
        Command::Bruschlinsky { file } => {
            let input = load(file)?;
            (
                "bruschlinsky",
                vec![input.json.clone()],
                cmd_bruschlinsky(&input)?,
            )
        }
        Command::Axioms { file } => {
            let input = load(file)?;
            ("axioms", vec![input.json.clone()], cmd_axioms(&input)?)
        }
        Command::Sign {
            file,
            level,
            vec,
            oracle,
        } => {
            let input = load(file)?;
            (
                "sign",
                vec![input.json.clone()],
                cmd_sign(&input, *level, vec, *oracle, bound)?,
            )
        }
        Command::Equal { file, lhs, rhs } => {
            let input = load(file)?;
            (
                "equal",
                vec![input.json.clone()],
                cmd_equal(&input, lhs, rhs)?,
            )
        }
        Command::Interpolate {
            file,
            a1,
            a2,
            b1,
            b2,
        } => {
            let input = load(file)?;
            (
                "interpolate",
                vec![input.json.clone()],
                cmd_interpolate(&input, [a1, a2, b1, b2], bound)?,
            )
        }
        Command::Compare { file1, file2 } => {
            let a = load(file1)?;
            let b = load(file2)?;
            (
                "compare",
                vec![a.json.clone(), b.json.clone()],
                cmd_compare(&a, &b)?,
            )
        }
    };
    let rendered = if cli.json {
        let inferred = inputs
            .iter()
            .any(|i| i["inferred"].as_bool().unwrap_or(false));
        let doc = json!({
            "tool": "solcalc",
            "version": env!("CARGO_PKG_VERSION"),
            "command": name,
            "inputs": inputs,
            "inferred": inferred,
            "result": outcome.result,
            "findings": outcome.findings,
        });
        format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("document serializes")
        )
    } else {
        let mut text = outcome.text;
        for i in &inputs {
            if i["inferred"].as_bool().unwrap_or(false) {
                text.push_str(&format!(
                    "note: incidence of {} was inferred by the solver\n",
                    i["path"].as_str().unwrap()
                ));
            }
        }
        text
    };
    Ok((rendered, outcome.exit))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((rendered, exit)) => {
            print!("{rendered}");
            ExitCode::from(exit)
        }
        Err(failure) => {
            if cli.json {
                let doc = json!({
                    "tool": "solcalc",
                    "version": env!("CARGO_PKG_VERSION"),
                    "error": failure.message(),
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("document serializes")
                );
            }
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit())
        }
    }
}
