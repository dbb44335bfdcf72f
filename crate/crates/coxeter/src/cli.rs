//! Command-line front end. `run` is a pure-ish function from argv to exit
//! code plus captured output streams so the whole surface is testable; the
//! binary in `main.rs` just forwards.
//!
//! Exit codes: 0 success, 1 parse/file error, 2 precondition violation,
//! 3 resource limit, 4 oracle mismatch.

use std::io::Read;

use num_bigint::BigUint;

use crate::classify::{catalog, classify_graph, ComponentClass};
use crate::graph::CoxeterGraph;
use crate::invariants::{analyze, DirectDecomposition, GroupOrder, GroupReport};
use crate::oracles::{snf_abelianization, todd_coxeter, Enumeration, DEFAULT_MAX_COSETS};
use crate::profinite::compare_profinite;
use crate::quotients::find_infinite_proper_quotient;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn ok(stdout: String) -> Self {
        CliOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        CliOutcome {
            exit_code: code,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

struct Options {
    json: bool,
    pretty: bool,
    max_cosets: Option<usize>,
    positionals: Vec<String>,
}

fn parse_args(args: &[String]) -> Result<Options, String> {
    let mut opts = Options {
        json: false,
        pretty: false,
        max_cosets: None,
        positionals: Vec::new(),
    };
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        if arg == "--json" {
            opts.json = true;
        } else if arg == "--pretty" {
            opts.pretty = true;
        } else if arg == "--max-cosets" {
            i += 1;
            let value = args.get(i).ok_or("--max-cosets needs a value")?;
            opts.max_cosets = Some(parse_max_cosets(value)?);
        } else if let Some(value) = arg.strip_prefix("--max-cosets=") {
            opts.max_cosets = Some(parse_max_cosets(value)?);
        } else if arg.starts_with("--") {
            return Err(format!("unknown flag `{arg}`"));
        } else {
            opts.positionals.push(arg.clone());
        }
        i += 1;
    }
    Ok(opts)
}

fn parse_max_cosets(value: &str) -> Result<usize, String> {
    match value.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("bad --max-cosets value `{value}`")),
    }
}

fn read_graph(path: &str) -> Result<CoxeterGraph, CliOutcome> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliOutcome::fail(EXIT_PARSE, format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliOutcome::fail(EXIT_PARSE, format!("reading `{path}`: {e}")))?
    };
    CoxeterGraph::parse(&text)
        .map_err(|e| CliOutcome::fail(EXIT_PARSE, format!("parsing `{path}`: {e}")))
}

fn render_json(value: &serde_json::Value, pretty: bool) -> String {
    let mut out = if pretty {
        serde_json::to_string_pretty(value).expect("JSON rendering")
    } else {
        serde_json::to_string(value).expect("JSON rendering")
    };
    out.push('\n');
    out
}

/// Runs one invocation. Never touches the process exit code or the real
/// output streams; the caller decides what to do with the outcome.
pub fn run(args: &[String]) -> CliOutcome {
    let opts = match parse_args(args) {
        Ok(opts) => opts,
        Err(msg) => return CliOutcome::fail(EXIT_PRECONDITION, msg),
    };
    let Some((subcommand, rest)) = opts.positionals.split_first() else {
        return CliOutcome::fail(
            EXIT_PRECONDITION,
            "usage: coxeter <analyze|classify|compare|quotients|catalog|verify> ...",
        );
    };
    if opts.max_cosets.is_some() && subcommand != "verify" {
        return CliOutcome::fail(EXIT_PRECONDITION, "--max-cosets is only valid with verify");
    }
    match subcommand.as_str() {
        "analyze" => cmd_analyze(rest, &opts),
        "classify" => cmd_classify(rest, &opts),
        "compare" => cmd_compare(rest, &opts),
        "quotients" => cmd_quotients(rest, &opts),
        "catalog" => cmd_catalog(rest, &opts),
        "verify" => cmd_verify(rest, &opts),
        other => CliOutcome::fail(EXIT_PRECONDITION, format!("unknown subcommand `{other}`")),
    }
}

fn single_file<'a>(rest: &'a [String], subcommand: &str) -> Result<&'a str, CliOutcome> {
    match rest {
        [path] => Ok(path.as_str()),
        _ => Err(CliOutcome::fail(
            EXIT_PRECONDITION,
            format!("usage: coxeter {subcommand} FILE"),
        )),
    }
}

fn cmd_analyze(rest: &[String], opts: &Options) -> CliOutcome {
    let path = match single_file(rest, "analyze") {
        Ok(p) => p,
        Err(out) => return out,
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let report = analyze(&g);
    if opts.json {
        CliOutcome::ok(render_json(&report.to_json(), opts.pretty))
    } else {
        CliOutcome::ok(render_report_text(&report))
    }
}

fn render_report_text(report: &GroupReport) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let classification = if report.classification.is_empty() {
        "(empty graph)".to_string()
    } else {
        report
            .classification
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let order = match &report.order {
        GroupOrder::Finite(n) => n.to_string(),
        GroupOrder::Infinite => "infinite".to_string(),
    };
    let decomposition = report
        .direct_decomposition
        .iter()
        .map(|d| match d {
            DirectDecomposition::Indecomposable => "indecomposable".to_string(),
            DirectDecomposition::CoxeterFactors(fs) => format!(
                "direct product: {}",
                fs.iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(" x ")
            ),
            DirectDecomposition::DecomposableNonCoxeter => {
                "decomposable (not into Coxeter groups)".to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("; ");
    let mut out = String::new();
    out.push_str(&format!("classification:       {classification}\n"));
    out.push_str(&format!("order:                {order}\n"));
    out.push_str(&format!(
        "virtually abelian:    {} (rank {})\n",
        yes_no(report.virtually_abelian),
        report.rank
    ));
    out.push_str(&format!(
        "abelianization:       (Z/2Z)^{}\n",
        report.abelianization_rank
    ));
    out.push_str(&format!(
        "just infinite:        {}\n",
        yes_no(report.just_infinite)
    ));
    out.push_str(&format!(
        "virtually indicable:  {}\n",
        yes_no(report.virtually_indicable)
    ));
    out.push_str(&format!(
        "virtually Z:          {}\n",
        yes_no(report.virtually_z)
    ));
    if !report.direct_decomposition.is_empty() {
        out.push_str(&format!("direct decomposition: {decomposition}\n"));
    }
    out
}

fn cmd_classify(rest: &[String], opts: &Options) -> CliOutcome {
    let path = match single_file(rest, "classify") {
        Ok(p) => p,
        Err(out) => return out,
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let classes = classify_graph(&g);
    if opts.json {
        let value = serde_json::Value::Array(
            classes
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        );
        CliOutcome::ok(render_json(&value, opts.pretty))
    } else {
        let mut out = String::new();
        for c in classes {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        CliOutcome::ok(out)
    }
}

fn cmd_compare(rest: &[String], opts: &Options) -> CliOutcome {
    let [path1, path2] = rest else {
        return CliOutcome::fail(EXIT_PRECONDITION, "usage: coxeter compare FILE1 FILE2");
    };
    if path1 == "-" && path2 == "-" {
        return CliOutcome::fail(
            EXIT_PRECONDITION,
            "standard input may be used for at most one of the two files",
        );
    }
    let g1 = match read_graph(path1) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let g2 = match read_graph(path2) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let verdict = compare_profinite(&g1, &g2);
    if opts.json {
        return CliOutcome::ok(render_json(&verdict.to_json(), opts.pretty));
    }
    let text = match &verdict {
        crate::profinite::CompareVerdict::Isomorphic { reason } => {
            format!("isomorphic: {reason}\n")
        }
        crate::profinite::CompareVerdict::Distinguished { invariant } => {
            format!("distinguished: {invariant}\n")
        }
        crate::profinite::CompareVerdict::Inconclusive => "inconclusive\n".to_string(),
    };
    CliOutcome::ok(text)
}

fn cmd_quotients(rest: &[String], opts: &Options) -> CliOutcome {
    let path = match single_file(rest, "quotients") {
        Ok(p) => p,
        Err(out) => return out,
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(out) => return out,
    };
    match find_infinite_proper_quotient(&g) {
        Some(witness) => {
            if opts.json {
                CliOutcome::ok(render_json(&witness.to_json(), opts.pretty))
            } else {
                let mut out = String::new();
                out.push_str(&format!(
                    "construction:    {}\n",
                    witness.construction.as_str()
                ));
                out.push_str(&format!("proper:          {}\n", witness.proper));
                out.push_str(&format!("target infinite: {}\n", witness.target_infinite));
                let map = witness
                    .map
                    .iter()
                    .map(|(from, to)| format!("{from} -> {}", to.as_display()))
                    .collect::<Vec<_>>()
                    .join(", ");
                out.push_str(&format!("map:             {map}\n"));
                if let Some(note) = &witness.note {
                    out.push_str(&format!("note:            {note}\n"));
                }
                out.push_str("target:\n");
                out.push_str(&witness.target.to_text());
                CliOutcome::ok(out)
            }
        }
        None => {
            if opts.json {
                CliOutcome::ok(render_json(
                    &serde_json::json!({ "witness": null }),
                    opts.pretty,
                ))
            } else {
                CliOutcome::ok("none found\n".to_string())
            }
        }
    }
}

fn cmd_catalog(rest: &[String], opts: &Options) -> CliOutcome {
    let [type_string] = rest else {
        return CliOutcome::fail(EXIT_PRECONDITION, "usage: coxeter catalog TYPE[:RANK]");
    };
    let class: ComponentClass = match type_string.parse() {
        Ok(c) => c,
        Err(e) => return CliOutcome::fail(EXIT_PRECONDITION, e.to_string()),
    };
    match catalog(&class) {
        Ok(g) => {
            if opts.json {
                let value = serde_json::json!({
                    "type": class.to_string(),
                    "graph": g.to_text(),
                });
                CliOutcome::ok(render_json(&value, opts.pretty))
            } else {
                CliOutcome::ok(g.to_text())
            }
        }
        Err(e) => CliOutcome::fail(EXIT_PRECONDITION, e.to_string()),
    }
}

fn cmd_verify(rest: &[String], opts: &Options) -> CliOutcome {
    let path = match single_file(rest, "verify") {
        Ok(p) => p,
        Err(out) => return out,
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(out) => return out,
    };
    let max_cosets = opts.max_cosets.unwrap_or(DEFAULT_MAX_COSETS);

    let closed_order = crate::invariants::is_finite(&g);
    let enumeration = todd_coxeter(&g, max_cosets);
    let (order_closed, order_oracle, order_status) = match (&closed_order, &enumeration) {
        (GroupOrder::Finite(n), Enumeration::Enumerated { order }) => (
            n.to_string(),
            order.to_string(),
            if n == order { "MATCH" } else { "MISMATCH" },
        ),
        (GroupOrder::Finite(n), Enumeration::LimitExceeded) => {
            (n.to_string(), "limit-exceeded".to_string(), "LIMIT")
        }
        (GroupOrder::Infinite, Enumeration::Enumerated { order }) => {
            ("inf".to_string(), order.to_string(), "MISMATCH")
        }
        (GroupOrder::Infinite, Enumeration::LimitExceeded) => {
            ("inf".to_string(), "limit-exceeded".to_string(), "MATCH")
        }
    };

    let ab_rank = crate::invariants::abelianization_rank(&g);
    let invariants = snf_abelianization(&g);
    let expected_factors: Vec<BigUint> = vec![BigUint::from(2u32); ab_rank];
    let ab_matches = invariants.factors == expected_factors && invariants.free_rank == 0;
    let factors_text = |factors: &[BigUint]| {
        format!(
            "[{}]",
            factors
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    let ab_closed = factors_text(&expected_factors);
    let ab_oracle = format!(
        "{} free-rank {}",
        factors_text(&invariants.factors),
        invariants.free_rank
    );
    let ab_status = if ab_matches { "MATCH" } else { "MISMATCH" };

    let exit_code = if order_status == "MISMATCH" || ab_status == "MISMATCH" {
        EXIT_MISMATCH
    } else if order_status == "LIMIT" {
        EXIT_LIMIT
    } else {
        EXIT_OK
    };

    let stdout = if opts.json {
        render_json(
            &serde_json::json!({
                "checks": [
                    {
                        "invariant": "order",
                        "closed_form": order_closed,
                        "oracle": order_oracle,
                        "status": order_status.to_lowercase(),
                    },
                    {
                        "invariant": "abelianization",
                        "closed_form": ab_closed,
                        "oracle": ab_oracle,
                        "status": ab_status.to_lowercase(),
                    },
                ],
            }),
            opts.pretty,
        )
    } else {
        format!(
            "order: closed-form={order_closed} oracle={order_oracle} {order_status}\n\
             abelianization: closed-form={ab_closed} oracle={ab_oracle} {ab_status}\n"
        )
    };
    CliOutcome {
        exit_code,
        stdout,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutcome {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run(&owned)
    }

    fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
        let mut path = std::env::temp_dir();
        path.push(format!("coxeter-cli-test-{}-{name}", std::process::id()));
        std::fs::write(&path, contents).expect("write temp file");
        path
    }

    #[test]
    fn catalog_emits_exact_bytes() {
        let out = run_args(&["catalog", "tG2"]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(
            out.stdout,
            "vertex v0\nvertex v1\nvertex v2\nedge v0 v1 3\nedge v1 v2 6\n"
        );
        assert!(out.stderr.is_empty());
    }

    #[test]
    fn catalog_rejects_bad_types() {
        assert_eq!(run_args(&["catalog", "I2:6"]).exit_code, EXIT_PRECONDITION);
        assert_eq!(run_args(&["catalog", "Нет"]).exit_code, EXIT_PRECONDITION);
        assert_eq!(run_args(&["catalog", "Other"]).exit_code, EXIT_PRECONDITION);
        assert_eq!(run_args(&["catalog"]).exit_code, EXIT_PRECONDITION);
    }

    #[test]
    fn analyze_reports_just_infinite() {
        let path = temp_file("tg2.cox", &run_args(&["catalog", "tG2"]).stdout);
        let out = run_args(&["analyze", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.stdout.contains("just infinite:        yes"));
        let json = run_args(&["analyze", path.to_str().unwrap(), "--json"]);
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["just_infinite"], true);
        assert_eq!(v["order"], "inf");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn analyze_missing_file_is_a_parse_error() {
        let out = run_args(&["analyze", "definitely-missing.cox"]);
        assert_eq!(out.exit_code, EXIT_PARSE);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.starts_with("error:"));
    }

    #[test]
    fn compare_distinguishes_tb3_tc3() {
        let b3 = temp_file("b3.cox", &run_args(&["catalog", "tB:3"]).stdout);
        let c3 = temp_file("c3.cox", &run_args(&["catalog", "tC:3"]).stdout);
        let out = run_args(&["compare", b3.to_str().unwrap(), c3.to_str().unwrap()]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(out.stdout, "distinguished: abelianization_rank\n");
        let json = run_args(&[
            "compare",
            b3.to_str().unwrap(),
            c3.to_str().unwrap(),
            "--json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(v["verdict"], "distinguished");
        assert_eq!(v["invariant"], "abelianization_rank");
        std::fs::remove_file(b3).ok();
        std::fs::remove_file(c3).ok();
    }

    #[test]
    fn quotients_none_found_on_affine() {
        let path = temp_file("ta2.cox", &run_args(&["catalog", "tA:2"]).stdout);
        let out = run_args(&["quotients", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(out.stdout, "none found\n");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn verify_matches_on_g2() {
        let path = temp_file("g2.cox", &run_args(&["catalog", "G2"]).stdout);
        let out = run_args(&["verify", path.to_str().unwrap()]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert!(out.stdout.contains("order: closed-form=12 oracle=12 MATCH"));
        assert!(out.stdout.contains("abelianization: closed-form=[2,2]"));
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn verify_reports_limit_with_tiny_budget() {
        let path = temp_file("b3-limit.cox", &run_args(&["catalog", "B:3"]).stdout);
        let out = run_args(&["verify", path.to_str().unwrap(), "--max-cosets", "5"]);
        assert_eq!(out.exit_code, EXIT_LIMIT);
        assert!(out.stdout.contains("LIMIT"));
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn flag_validation() {
        let path = temp_file("flags.cox", "vertex a\n");
        let out = run_args(&["analyze", path.to_str().unwrap(), "--max-cosets", "10"]);
        assert_eq!(out.exit_code, EXIT_PRECONDITION);
        assert_eq!(
            run_args(&["analyze", "--bogus"]).exit_code,
            EXIT_PRECONDITION
        );
        assert_eq!(run_args(&["frobnicate"]).exit_code, EXIT_PRECONDITION);
        assert_eq!(run_args(&[]).exit_code, EXIT_PRECONDITION);
        assert_eq!(
            run_args(&["compare", "-", "-"]).exit_code,
            EXIT_PRECONDITION
        );
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn output_is_reproducible() {
        let path = temp_file("repro.cox", &run_args(&["catalog", "tC:3"]).stdout);
        let a = run_args(&["analyze", path.to_str().unwrap(), "--json"]);
        let b = run_args(&["analyze", path.to_str().unwrap(), "--json"]);
        assert_eq!(a, b);
        std::fs::remove_file(path).ok();
    }
}
