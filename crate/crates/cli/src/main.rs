use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use zcert_core::catalog::{
    certify_with, four_pairs_check, load_catalog, reproduce_with, shipped_catalog, CatalogEntry, EntryReport,
    EntryVerdict, ReproduceReport, Scope,
};
use zcert_core::curve::{classify_family, parse_constant, FamilyKind};
use zcert_core::k3::{all_checks, select_checks, MemberCheck, Verdict};

#[derive(Parser)]
#[command(name = "zcert", version, about = "Certify Zariski pairs and triplets of plane sextics")]
struct Cli {
    /// Catalog file to use instead of the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Comma-separated member checks to run (default: all).
    #[arg(long, global = true, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Overlattice index, determinant and discriminant group of each member.
    Lattice { id: String },
    /// Urabe's two conditions for each member.
    Urabe { id: String },
    /// Primitive embedding into the K3 lattice.
    Embed { id: String },
    /// Singular points, special curves and family types of the equations.
    Curves { id: String },
    /// Full certification of one entry.
    Certify {
        id: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Certify every entry in a scope.
    Reproduce {
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The four 3A5+2A1 pairs.
    FourPairs {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify a member of the three-conic families.
    Family {
        #[arg(long)]
        kind: String,
        /// A rational number or a + b*sqrt(-3).
        #[arg(long)]
        lambda: String,
    },
}

/// Bad input: reported with exit code 2.
struct Usage(anyhow::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Usage {
    Usage(e.into())
}

fn catalog(cli: &Cli) -> Result<Vec<CatalogEntry>, Usage> {
    match &cli.catalog {
        Some(p) => load_catalog(p).with_context(|| format!("loading {}", p.display())).map_err(usage),
        None => Ok(shipped_catalog()),
    }
}

fn checks(cli: &Cli) -> Result<Vec<Box<dyn MemberCheck>>, Usage> {
    match &cli.checks {
        Some(names) => select_checks(names).map_err(|e| usage(anyhow!(e))),
        None => Ok(all_checks()),
    }
}

fn find<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry, Usage> {
    entries.iter().find(|e| e.id == id).ok_or_else(|| {
        let near: Vec<&str> = entries.iter().map(|e| e.id.as_str()).filter(|i| i.contains(id)).take(5).collect();
        usage(anyhow!("no catalog entry {id:?}{}", hint(&near)))
    })
}

fn hint(near: &[&str]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!(" (did you mean {}?)", near.join(", "))
    }
}

fn write_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Usage> {
    if let Some(p) = path {
        let mut text = serde_json::to_string_pretty(value).map_err(usage)?;
        text.push('\n');
        fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(usage)?;
    }
    Ok(())
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), T::to_string)
}

fn orders(r: &EntryReport) -> String {
    r.disc_orders().iter().map(opt).collect::<Vec<_>>().join(", ")
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let entries = catalog(&cli)?;
    match &cli.command {
        Command::Lattice { id } => {
            let r = certify_with(find(&entries, id)?, &[]);
            println!("{} ({}, Milnor number {})", r.id, r.config, r.milnor_number);
            for m in &r.members {
                println!(
                    "  {:<4} glue {:<20} index {:<4} |det| {:<6} disc order {:<6} factors {:?}",
                    m.name,
                    m.glue,
                    opt(&m.index),
                    opt(&m.det),
                    opt(&m.disc_order),
                    m.invariant_factors
                );
                for e in &m.errors {
                    println!("       error: {e}");
                }
            }
            for c in &r.comparisons {
                println!(
                    "  {} vs {}: {}",
                    r.members[c.members[0]].name,
                    r.members[c.members[1]].name,
                    if c.distinguished { "distinguished" } else { "isomorphic groups" }
                );
            }
            Ok(r.members.iter().all(|m| m.errors.is_empty()) && r.all_distinguished())
        }
        Command::Urabe { id } => {
            let names = ["urabe-i".to_string(), "urabe-ii".to_string()];
            check_command(find(&entries, id)?, &select_checks(&names).map_err(|e| usage(anyhow!(e)))?)
        }
        Command::Embed { id } => {
            check_command(find(&entries, id)?, &select_checks(&["embedding".to_string()]).map_err(|e| usage(anyhow!(e)))?)
        }
        Command::Curves { id } => {
            let r = certify_with(find(&entries, id)?, &[]);
            let mut ok = true;
            for m in &r.members {
                let Some(c) = &m.curve else {
                    println!("  {}: no equation", m.name);
                    continue;
                };
                ok &= c.holds;
                println!(
                    "  {}: degrees {:?}, total Milnor {}, {}",
                    m.name,
                    c.factor_degrees,
                    c.total_milnor,
                    if c.holds { "holds" } else { "fails" }
                );
                for p in &c.points {
                    println!("      {} expected {} found {}", p.point, p.expected, opt(&p.found));
                }
                for s in &c.specials {
                    println!("      {} against {}: {:?} expected {:?}", s.form, s.against, s.found, s.expected);
                }
                if let Some(f) = &c.family {
                    println!("      {}_{}: {} (expected {}) {}", f.kind, f.lambda, f.found, f.expected, f.detail);
                }
                for i in &c.issues {
                    println!("      issue: {i}");
                }
            }
            Ok(ok)
        }
        Command::Certify { id, json } => {
            let r = certify_with(find(&entries, id)?, &checks(&cli)?);
            print_entry(&r);
            write_json(json, &r)?;
            Ok(r.verdict != EntryVerdict::Failed)
        }
        Command::Reproduce { scope, json } => {
            let scope: Scope = scope.parse().map_err(usage)?;
            let r = reproduce_with(&entries, scope, &checks(&cli)?);
            print_summary(&r);
            write_json(json, &r)?;
            Ok(r.all_certified())
        }
        Command::FourPairs { json } => {
            let r = four_pairs_check(&entries).map_err(usage)?;
            for p in &r.pairs {
                println!("{:<36} orders {:<12} {}", p.id, orders(p), p.verdict);
            }
            println!("all distinguished: {}, all Urabe checks hold: {}", r.all_distinguished, r.all_urabe_hold);
            write_json(json, &r)?;
            Ok(r.all_distinguished && r.all_urabe_hold)
        }
        Command::Family { kind, lambda } => {
            let kind: FamilyKind = kind.parse().map_err(usage)?;
            let lambda = parse_constant(lambda).map_err(usage)?;
            let c = classify_family(kind, &lambda).map_err(usage)?;
            println!("{kind}_{lambda}: {}", c.family_type);
            println!("{}", serde_json::to_string_pretty(&c).map_err(usage)?);
            Ok(true)
        }
    }
}

fn check_command(entry: &CatalogEntry, checks: &[Box<dyn MemberCheck>]) -> Result<bool, Usage> {
    let r = certify_with(entry, checks);
    let mut ok = true;
    for m in &r.members {
        for c in &m.checks {
            ok &= !c.report.verdict.is_failure();
            println!("  {:<4} {:<10} {:<22} {}", m.name, c.name, verdict_name(c.report.verdict), c.report.method);
        }
        for e in &m.errors {
            ok = false;
            println!("  {:<4} error: {e}", m.name);
        }
    }
    Ok(ok)
}

fn print_entry(r: &EntryReport) {
    println!("{} ({}, Milnor number {}): {}", r.id, r.config, r.milnor_number, r.verdict);
    for m in &r.members {
        let checks: Vec<String> = m.checks.iter().map(|c| format!("{}={}", c.name, verdict_name(c.report.verdict))).collect();
        let curve = m.curve.as_ref().map_or("", |c| if c.holds { " curve ok" } else { " curve FAILS" });
        println!(
            "  {:<4} disc order {:<6} factors {:?} {}{curve}",
            m.name,
            opt(&m.disc_order),
            m.invariant_factors,
            checks.join(" ")
        );
    }
    for line in r.errors.iter().chain(&r.configuration_issues).chain(&r.flags) {
        println!("  note: {line}");
    }
}

fn print_summary(r: &ReproduceReport) {
    for e in &r.entries {
        println!("{:<40} {:<20} {}", e.id, e.verdict.to_string(), orders(e));
    }
    let s = &r.summary;
    println!(
        "{} entries: {} certified, {} partially certified, {} failed",
        s.total, s.certified, s.partially_certified, s.failed
    );
    println!("embedding verdicts: {:?} (passed-necessary-only fraction {:.3})", s.embedding, s.passed_necessary_only_fraction);
    if !s.undecodable.is_empty() {
        println!("undecodable: {}", s.undecodable.join(", "));
    }
    if !s.undistinguished.is_empty() {
        println!("undistinguished: {}", s.undistinguished.join(", "));
    }
    for ids in &s.shared_codes {
        println!("shared codes: {}", ids.join(", "));
    }
}
