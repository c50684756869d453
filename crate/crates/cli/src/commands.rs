use std::path::Path;

use gdual::duality::{
    dual_group, expected_products, reconstruct_abelian, reconstruct_blurred, CharacterOracle,
};
use gdual::group::{find_isomorphism, parse_gtab, write_gtab, FiniteGroup, StandardGroup};
use gdual::inequalities::run_suite;
use gdual::positivity::{Analyzer, Certificate, Method, PositivityConfig, Triple, Verdict};
use serde_json::{json, Value};

use crate::report::{GroupInfo, Report, Summary};
use crate::{CliError, CommonArgs};

/// A report plus an optional file payload (`.gtab` text or a certificate).
pub struct Produced {
    pub report: Report,
    pub artifact: Option<String>,
}

pub fn dispatch(name: &str, args: &CommonArgs) -> Result<Produced, CliError> {
    match name {
        "gen" => gen(args),
        "info" => info(args),
        "verify-products" => verify_products(args),
        "verify-abelian" => verify_abelian(args),
        "certify" => certify(args),
        "recheck" => recheck(args),
        "inequalities" => inequalities(args),
        "dual" => dual(args),
        "reconstruct" => reconstruct(args),
        other => Err(CliError::Usage(format!("unknown command {other}"))),
    }
}

fn positivity_config(args: &CommonArgs) -> PositivityConfig {
    PositivityConfig {
        tol: args.tol,
        eps: args.eps,
        restarts: args.restarts,
        max_iters: args.max_iters,
        seed: args.seed,
        ..PositivityConfig::default()
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn load_group(spec: &str) -> Result<FiniteGroup, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let std = StandardGroup::parse(name).ok_or_else(|| CliError::Usage(format!("unknown builtin group {name:?}")))?;
        return std.build().map_err(|e| CliError::Usage(format!("builtin:{name}: {e}")));
    }
    let text = read(Path::new(spec))?;
    parse_gtab(&text).map_err(|e| CliError::Parse { source_name: spec.to_string(), message: e.to_string() })
}

/// The group from `--group`, or else from the positional input.
fn group_of(args: &CommonArgs, allow_input: bool) -> Result<(String, FiniteGroup), CliError> {
    let spec = match (&args.group, &args.input) {
        (Some(g), _) => g.clone(),
        (None, Some(p)) if allow_input => p.display().to_string(),
        _ => return Err(CliError::Usage("a group is required (--group <file|builtin:name>)".into())),
    };
    let g = load_group(&spec)?;
    Ok((spec, g))
}

fn element(g: &FiniteGroup, flag: &str, value: &Option<String>) -> Result<usize, CliError> {
    let v = value.as_ref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))?;
    g.element_by_name(v).ok_or_else(|| CliError::Usage(format!("--{flag}: no element {v:?}")))
}

fn info_of(descriptor: &str, g: &FiniteGroup) -> GroupInfo {
    GroupInfo { descriptor: descriptor.to_string(), order: g.order(), hash: g.table_hash() }
}

fn report(command: &str, args: &CommonArgs, group: Option<GroupInfo>, results: Value, summary: Summary) -> Report {
    Report { command: command.to_string(), group, results, summary, config: args.config(), timings: None }
}

fn names(g: &FiniteGroup) -> Vec<String> {
    g.elements().map(|e| g.name(e)).collect()
}

fn gen(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, false)?;
    let text = write_gtab(&g);
    let results = json!({ "path": args.output.as_ref().map(|p| p.display().to_string()), "bytes": text.len() });
    let summary = Summary { passed: 1, ..Summary::default() };
    Ok(Produced { report: report("gen", args, Some(info_of(&desc, &g)), results, summary), artifact: Some(text) })
}

fn info(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    let results = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "identity": g.identity(),
        "names": names(&g),
        "element_orders": g.element_orders(),
        "inverses": g.elements().map(|e| g.inv(e)).collect::<Vec<_>>(),
        "table": g.table(),
    });
    let summary = Summary { passed: 1, ..Summary::default() };
    Ok(Produced { report: report("info", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}

fn verify_products(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    let table = reconstruct_blurred::<f64>(&g, &positivity_config(args));
    let mut pairs = Vec::new();
    let mut summary = Summary::default();
    for a in g.elements() {
        for b in g.elements() {
            let expected = expected_products(&g, a, b);
            let ok = table.entries[a][b] == expected;
            if ok {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
            pairs.push(json!({ "a": a, "b": b, "candidates": table.entries[a][b], "expected": expected, "ok": ok }));
        }
    }
    let results = json!({ "pairs": pairs, "blurred_table": table.entries });
    Ok(Produced { report: report("verify-products", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}

fn verify_abelian(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    if !g.is_abelian() {
        return Err(CliError::Failure(format!("{desc} is not abelian")));
    }
    let analyzer = Analyzer::<f64>::new(&g);
    let chars = analyzer.characters().ok_or_else(|| CliError::Failure("character table unavailable".into()))?;
    let cfg = positivity_config(args);
    let mut pairs = Vec::new();
    let mut summary = Summary::default();
    for a in g.elements() {
        for b in g.elements() {
            let accepted: Vec<usize> =
                g.elements().filter(|&x| analyzer.character_check(chars, Triple::new(a, b, x), &cfg).holds()).collect();
            let ok = accepted == [g.mul(a, b)];
            if ok {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
            pairs.push(json!({ "a": a, "b": b, "accepted": accepted, "ok": ok }));
        }
    }
    let results = json!({ "characters": chars.len(), "pairs": pairs });
    Ok(Produced { report: report("verify-abelian", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}

fn certify(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    let t = Triple::new(element(&g, "a", &args.a)?, element(&g, "b", &args.b)?, element(&g, "x", &args.x)?);
    let analyzer = Analyzer::<f64>::new(&g);
    let verdict = analyzer.universal_positivity(t, &positivity_config(args));
    let expected = expected_products(&g, t.a, t.b).contains(&t.x);
    let mut summary = Summary::default();
    if verdict.holds() == expected {
        summary.passed = 1;
    } else {
        summary.failed = 1;
    }
    let (results, artifact) = match &verdict {
        Verdict::Holds { method, best } => {
            let method = match method {
                Method::Exact => "exact",
                Method::Search => "search",
            };
            (json!({ "triple": t, "holds": true, "expected_holds": expected, "method": method, "best": best }), None)
        }
        Verdict::Refuted(cert) => {
            let text = serde_json::to_string_pretty(cert).expect("certificate serializes") + "\n";
            (json!({ "triple": t, "holds": false, "expected_holds": expected, "certificate": cert }), Some(text))
        }
    };
    Ok(Produced { report: report("certify", args, Some(info_of(&desc, &g)), results, summary), artifact })
}

fn recheck(args: &CommonArgs) -> Result<Produced, CliError> {
    let path = args.input.as_ref().ok_or_else(|| CliError::Usage("recheck needs a certificate file".into()))?;
    let (desc, g) = group_of(args, false)?;
    let text = read(path)?;
    let cert: Certificate = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        source_name: path.display().to_string(),
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    let mut summary = Summary::default();
    let results = match cert.recheck(&g, args.eps) {
        Ok(value) => {
            summary.passed = 1;
            json!({ "triple": cert.triple(), "valid": true, "value": value })
        }
        Err(e) => {
            summary.failed = 1;
            json!({ "triple": cert.triple(), "valid": false, "reason": e.to_string() })
        }
    };
    Ok(Produced { report: report("recheck", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}

fn inequalities(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    let suite = run_suite::<f64>(&g, args.samples, args.seed);
    let mut summary = Summary { min_gap: Some(suite.min_gap()), ..Summary::default() };
    for f in &suite.families {
        if f.min_gap >= -args.tol {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
    }
    let results = serde_json::to_value(&suite).expect("suite serializes");
    Ok(Produced { report: report("inequalities", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}

fn dual(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    let d = dual_group::<f64>(&g).map_err(|e| CliError::Failure(e.to_string()))?;
    let iso = find_isomorphism(&d.group, &g);
    let blurred = reconstruct_blurred::<f64>(&g, &positivity_config(args));
    let mismatches = blurred.mismatches(&g);
    let mut summary = Summary::default();
    for ok in [iso.is_some(), mismatches.is_empty()] {
        if ok {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
    }
    let results = json!({
        "dual_table": d.group.table(),
        "representatives": d.representatives,
        "correspondence": d.correspondence,
        "separation": d.separation,
        "isomorphism": iso,
        "blurred_table": blurred.entries,
        "blurred_mismatches": mismatches,
    });
    Ok(Produced { report: report("dual", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}

fn reconstruct(args: &CommonArgs) -> Result<Produced, CliError> {
    let (desc, g) = group_of(args, true)?;
    let oracle = CharacterOracle::<f64>::new(&g, args.seed).map_err(|e| CliError::Failure(format!("{desc}: {e}")))?;
    let recovered = reconstruct_abelian(&oracle, args.tol).map_err(|e| CliError::Failure(e.to_string()))?;
    let iso = find_isomorphism(&recovered, &g);
    let summary = if iso.is_some() {
        Summary { passed: 1, ..Summary::default() }
    } else {
        Summary { failed: 1, ..Summary::default() }
    };
    let results = json!({ "recovered_table": recovered.table(), "isomorphism": iso });
    Ok(Produced { report: report("reconstruct", args, Some(info_of(&desc, &g)), results, summary), artifact: None })
}
