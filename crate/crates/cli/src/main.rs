use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use localnr::constructions::Construction;
use localnr::nearring::{
    check_g4_congruences, check_g5_congruences, locality_report, structural_invariants, verify_axioms,
    G4Maps, G5Maps, NearringFile, Violation,
};
use localnr::pgroup::{catalog, CALIBRATION_NAMES, ORDER16_NAMES, P4_NAMES};
use localnr::search::{enumerate_unital_nearrings, Checkpoint, SearchConfig, SearchReport};
use localnr::{Error, Exec, GroupTable, Nearring};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "localnr", version, about = "Local nearrings on small p-groups")]
struct Cli {
    /// Print machine-readable JSON instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog groups with order, generator orders and exponent.
    Catalog {
        name: Option<String>,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Build a closed-form nearring and write it as JSON.
    Build {
        construction: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Exponent for g4-pow-i.
        #[arg(long)]
        i: Option<u32>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check axioms, locality and structural facts of a nearring file.
    Verify { input: PathBuf },
    /// Enumerate nearrings with identity on a catalog group.
    Search(SearchArgs),
}

#[derive(clap::Args)]
struct SearchArgs {
    group: String,
    /// Prime; defaults to 2 for the 2-group entries and 3 otherwise.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    local_only: bool,
    #[arg(long)]
    zero_sym: bool,
    /// Do not require L to contain the derived subgroup.
    #[arg(long)]
    no_char_pruning: bool,
    /// Node budget, e.g. 1000000, 1e6 or 10^6.
    #[arg(long, value_parser = parse_budget)]
    budget: Option<u64>,
    /// Where to write the checkpoint if the budget runs out.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    resume: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    sequential: bool,
    /// Expected class count: a number, or `fixture` to look it up.
    #[arg(long)]
    expect: Option<String>,
    #[arg(long, env = "LOCALNR_FIXTURES")]
    fixtures: Option<PathBuf>,
    /// Write the full report (with representatives) to this file.
    #[arg(long)]
    save: Option<PathBuf>,
}

fn parse_budget(s: &str) -> Result<u64, String> {
    let bad = || format!("bad budget `{s}`");
    let s = s.replace('_', "");
    if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return b.checked_pow(e).ok_or_else(bad);
    }
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u64 = m.parse().map_err(|_| bad())?;
        let e: u32 = e.parse().map_err(|_| bad())?;
        return 10u64.checked_pow(e).and_then(|t| t.checked_mul(m)).ok_or_else(bad);
    }
    s.parse().map_err(|_| bad())
}

/// Failure with an exit code attached.
struct Exit(u8, anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Exit {
    fn from(e: E) -> Self {
        let e = e.into();
        let code = match e.downcast_ref::<Error>() {
            Some(Error::UnknownGroup(_) | Error::InvalidPrime { .. } | Error::InvalidParameter(_)) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Exit(code, e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Catalog { name, p } => cmd_catalog(name.as_deref(), p, cli.json),
        Cmd::Build {
            construction,
            p,
            i,
            out,
            csv,
        } => cmd_build(&construction, p, i, out.as_deref(), csv.as_deref(), cli.json),
        Cmd::Verify { input } => cmd_verify(&input, cli.json),
        Cmd::Search(args) => cmd_search(&args, cli.json),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn default_p(name: &str, p: u32) -> u32 {
    if ORDER16_NAMES.contains(&name) || matches!(name, "D8" | "Q8") {
        2
    } else {
        p
    }
}

fn cmd_catalog(name: Option<&str>, p: u32, as_json: bool) -> Result<u8, Exit> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => P4_NAMES.iter().chain(CALIBRATION_NAMES.iter()).copied().collect(),
    };
    let mut rows = Vec::new();
    for n in names {
        let spec = catalog(n, default_p(n, p))?;
        let g = GroupTable::new(spec)?;
        rows.push(json!({
            "name": g.spec().name,
            "p": g.spec().prime,
            "order": g.order(),
            "gen_orders": g.spec().gen_orders,
            "exponent": g.exponent(),
            "abelian": g.is_abelian(),
        }));
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&rows).map_err(anyhow::Error::from)?);
    } else {
        println!("{:<18} {:>2} {:>6} {:<14} {:>8}", "group", "p", "order", "gen_orders", "exponent");
        for r in &rows {
            println!(
                "{:<18} {:>2} {:>6} {:<14} {:>8}",
                r["name"].as_str().unwrap_or(""),
                r["p"].to_string(),
                r["order"].to_string(),
                r["gen_orders"].to_string(),
                r["exponent"].to_string()
            );
        }
        if name.is_none() {
            println!("(also: {})", ORDER16_NAMES.join(", "));
        }
    }
    Ok(0)
}

fn summary(nr: &Nearring) -> anyhow::Result<String> {
    let rep = locality_report(nr)?;
    let mut parts = vec![if rep.is_local { "local" } else { "not local" }.to_string()];
    if rep.is_local {
        parts.push(format!("|L|={}", rep.l.len()));
    }
    parts.push(if rep.axioms.is_zero_symmetric { "zero-symmetric" } else { "not zero-symmetric" }.into());
    Ok(parts.join(", "))
}

fn cmd_build(
    id: &str,
    p: u32,
    i: Option<u32>,
    out: Option<&Path>,
    csv: Option<&Path>,
    as_json: bool,
) -> Result<u8, Exit> {
    let c = match i {
        Some(_) => Construction::parse(id, i)?,
        None => id.parse::<Construction>()?,
    };
    let nr = c.build(p)?;
    let file = NearringFile::from_nearring(&nr);
    if let Some(path) = out {
        fs::write(path, file.to_json()?).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = csv {
        fs::write(path, nr.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    if as_json && out.is_none() {
        println!("{}", file.to_json()?);
    } else {
        println!("{c} on {}({p}): {}", c.group_name(), summary(&nr)?);
    }
    Ok(0)
}

fn congruences(nr: &Nearring, zero_sym: bool) -> Option<anyhow::Result<Vec<Violation>>> {
    let g = nr.group();
    match g.spec().name.as_str() {
        "G4" => Some(
            G4Maps::from_nearring(nr)
                .and_then(|m| check_g4_congruences(g, &m, zero_sym))
                .map_err(Into::into),
        ),
        "G5" => Some(
            G5Maps::from_nearring(nr)
                .and_then(|m| check_g5_congruences(g, &m, Some(zero_sym)))
                .map_err(Into::into),
        ),
        _ => None,
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn cmd_verify(input: &Path, as_json: bool) -> Result<u8, Exit> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let nr = Nearring::from_json(&text).map_err(|e| Exit(EXIT_FAIL, anyhow!(e)))?;
    let ax = verify_axioms(&nr);
    let mut out = json!({ "axioms": ax });
    let mut ok = ax.is_nearring_with_identity();
    let mut lines = vec![format!(
        "associative {} left-distributive {} identity {}",
        mark(ax.is_associative),
        mark(ax.is_left_distributive),
        mark(ax.is_unital)
    )];
    if let Some((x, y, z)) = ax.associativity_violation {
        lines.push(format!("associativity fails at ({x}, {y}, {z})"));
    }
    if let Some((x, y, z)) = ax.distributivity_violation {
        lines.push(format!("left distributivity fails at ({x}, {y}, {z})"));
    }
    if ok {
        let rep = locality_report(&nr)?;
        lines[0].push_str(&format!(" local {}", mark(rep.is_local)));
        lines.push(format!(
            "zero-symmetric: {}",
            if rep.axioms.is_zero_symmetric { "yes" } else { "no" }
        ));
        lines.push(format!("units: {}  |L|: {}", rep.invertible.len(), rep.l.len()));
        ok &= rep.is_local;
        if rep.is_local {
            let s = structural_invariants(&nr)?;
            lines.push(format!(
                "exponent law {}  L is (R,R)-subgroup {}  i+L subgroup {}  |L|^2 >= |R| {}",
                mark(s.exponent_law),
                mark(s.l_is_rr_subgroup),
                mark(s.i_plus_l_subgroup),
                mark(s.l_square_bound)
            ));
            if let Some(c) = s.noncyclic_l_of_order_p2_or_p3 {
                lines.push(format!("L non-cyclic of order p^2 or p^3 {}", mark(c)));
            }
            ok &= s.all_hold();
            out["structure"] = json!(s);
            if let Some(res) = congruences(&nr, rep.axioms.is_zero_symmetric) {
                match res {
                    Ok(v) => {
                        lines.push(format!("congruences {} ({} violations)", mark(v.is_empty()), v.len()));
                        for viol in v.iter().take(5) {
                            lines.push(format!(
                                "  ({}) x={} y={:?}: {}",
                                viol.statement, viol.x, viol.y, viol.detail
                            ));
                        }
                        ok &= v.is_empty();
                        out["congruence_violations"] = json!(v);
                    }
                    Err(e) => {
                        lines.push(format!("congruences skipped: {e}"));
                        out["congruences_skipped"] = json!(e.to_string());
                    }
                }
            }
        }
        out["locality"] = json!(rep);
    }
    out["ok"] = json!(ok);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?);
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn fixture_key(name: &str, p: u32) -> String {
    if p == 2 {
        name.to_string()
    } else {
        format!("{name}@{p}")
    }
}

fn fixture_count(path: Option<&Path>, key: &str) -> anyhow::Result<u64> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => include_str!("../../core/fixtures/expected_counts.json").to_string(),
    };
    let v: Value = serde_json::from_str(&text)?;
    v["counts"][key]
        .as_u64()
        .ok_or_else(|| anyhow!("no fixture count for `{key}`"))
}

fn cmd_search(a: &SearchArgs, as_json: bool) -> Result<u8, Exit> {
    let name = a.group.as_str();
    let p = a.p.unwrap_or_else(|| default_p(name, 3));
    let spec = catalog(name, p)?;
    let mut cfg = if a.local_only {
        SearchConfig::local()
    } else {
        SearchConfig::unital()
    };
    cfg.zero_symmetric_only = a.zero_sym;
    cfg.characteristic_pruning = a.local_only && !a.no_char_pruning;
    cfg.node_budget = a.budget;
    cfg.threads = a.threads;
    cfg.exec = if a.sequential { Exec::Sequential } else { Exec::Parallel };
    if let Some(path) = &a.resume {
        cfg.resume = Some(Checkpoint::load(path)?);
    }
    let expect = match a.expect.as_deref() {
        None => None,
        Some("fixture") => Some(fixture_count(a.fixtures.as_deref(), &fixture_key(&spec.name, p))?),
        Some(n) => Some(
            n.parse::<u64>()
                .map_err(|_| Exit(EXIT_USAGE, anyhow!("--expect takes a number or `fixture`")))?,
        ),
    };

    let report = enumerate_unital_nearrings(&spec, &cfg)?;
    let count = if a.local_only {
        report.iso_class_count
    } else {
        report.unital_class_count
    } as u64;

    if let Some(path) = &a.save {
        fs::write(path, serde_json::to_vec_pretty(&report).map_err(anyhow::Error::from)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let (Some(cp), Some(path)) = (&report.checkpoint, &a.checkpoint) {
        cp.save(path)?;
    }
    print_report(&report, count, as_json)?;
    if a.local_only && report.group == "G6" {
        // a local table on G6 would contradict the expected non-existence
        for r in &report.representatives {
            println!("counterexample candidate: {}", serde_json::to_string(&r.mul).unwrap_or_default());
        }
    }

    if !report.complete {
        eprintln!(
            "inconclusive: budget exhausted after {} nodes{}",
            report.stats.nodes_visited,
            if a.checkpoint.is_some() { ", checkpoint written" } else { "" }
        );
        return Ok(EXIT_INCONCLUSIVE);
    }
    if let Some(e) = expect {
        if e != count {
            eprintln!("expected {e} classes, found {count}");
            return Ok(EXIT_FAIL);
        }
    }
    Ok(0)
}

fn print_report(r: &SearchReport, count: u64, as_json: bool) -> anyhow::Result<()> {
    if as_json {
        let mut v = serde_json::to_value(r)?;
        if let Some(o) = v.as_object_mut() {
            o.remove("representatives");
            o.remove("checkpoint");
            o.insert("count".into(), json!(count));
        }
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(());
    }
    println!(
        "{} (order {}){}: {} {} classes{}",
        r.group,
        r.order,
        if r.zero_symmetric_only { ", zero-symmetric" } else { "" },
        count,
        if r.local_only { "local" } else { "unital" },
        if r.complete { "" } else { " so far" }
    );
    println!(
        "  tables {}  local tables {}  identity orbits {}  L candidates {}",
        r.candidates_found, r.local_count, r.identity_orbits_tried, r.l_candidates
    );
    let mut by_l = std::collections::BTreeMap::new();
    for rep in r.representatives.iter().filter(|x| x.is_local) {
        *by_l.entry(rep.l_order.unwrap_or(0)).or_insert(0usize) += 1;
    }
    if !by_l.is_empty() {
        let parts: Vec<String> = by_l.iter().map(|(l, c)| format!("|L|={l}: {c}")).collect();
        println!("  {}  zero-symmetric {}", parts.join("  "), r.zero_symmetric_class_count);
    }
    println!(
        "  nodes {}  pruned {}  leaves {}  work units {}  {} ms",
        r.stats.nodes_visited, r.stats.nodes_pruned, r.stats.leaves, r.stats.work_units, r.elapsed_ms
    );
    Ok(())
}
