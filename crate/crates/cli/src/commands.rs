//! Argument definitions and the command implementations.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use ktypes_core::ktype::{check_all_lemmas, classify_k_simple, compact_simple_roots};
use ktypes_core::lattice::parse_rational;
use ktypes_core::nondecr::{
    enumerate_nondecreasable, verify_theorem, TheoremReport, DEFAULT_SLACK,
};
use ktypes_core::smallness::{is_usmall, lp_oracle_certificate, sv_dominance_test, LP_MAX_RANK};
use ktypes_core::{Group, GroupSpec, Weight};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::cache::{load_group, ChamberCache, CACHE_DIR_ENV};
use crate::figure::{black_dots_are_usmall, figure_points, BASIS_NOTE};
use crate::output::{CommandOutput, Format, Table};
use crate::{parse_group, EXIT_COUNTEREXAMPLE};

#[derive(Debug, Parser)]
#[command(
    name = "ktypes",
    version,
    about = "Chambers, u-small hulls and non-decreasable K-types of classical real forms"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the chamber cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive systems containing the fixed compact one.
    Chambers {
        #[arg(long)]
        group: String,
    },
    /// Check the compact-simple-root classification and coefficient lemmas.
    Lemmas {
        #[arg(long)]
        group: String,
    },
    /// Decide whether a weight lies in the u-small hull.
    Usmall {
        #[arg(long)]
        group: String,
        /// Ambient coordinates, e.g. `1,0,-1` or `3/2,1/2`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "mu_fw")]
        mu: Option<String>,
        /// Fundamental-weight coefficients relative to `--chamber`.
        #[arg(long, allow_hyphen_values = true)]
        mu_fw: Option<String>,
        /// Chamber (or case) label; defaults to the initial one.
        #[arg(long, requires = "mu_fw")]
        chamber: Option<String>,
    },
    /// Enumerate non-decreasable weights in the search box.
    Nondecreasable {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: i64,
    },
    /// Check that every non-decreasable weight is u-small.
    Verify {
        #[arg(long, required_unless_present = "family", conflicts_with = "family")]
        group: Option<String>,
        /// `all` or a family prefix (`su`, `so`, `sp`, `so*`, `sl`).
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 4, requires = "family")]
        max_rank: usize,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: i64,
    },
    /// Export the su(2,1) picture of u-small and non-decreasable weights.
    Figure {
        #[arg(long)]
        group: String,
    },
}

impl Cli {
    fn cache(&self) -> Option<ChamberCache> {
        if self.no_cache {
            return None;
        }
        self.cache_dir
            .clone()
            .or_else(ChamberCache::default_dir)
            .map(ChamberCache::new)
    }
}

/// Runs the parsed command on a pool of `--jobs` threads.
pub fn run(cli: &Cli) -> anyhow::Result<CommandOutput> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        pool = pool.num_threads(j);
    }
    pool.build()?.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> anyhow::Result<CommandOutput> {
    let cache = cli.cache();
    let group = |s: &str| load_group(parse_group(s)?, cache.as_ref());
    match &cli.command {
        Command::Chambers { group: g } => chambers(&group(g)?),
        Command::Lemmas { group: g } => lemmas(&group(g)?),
        Command::Usmall {
            group: g,
            mu,
            mu_fw,
            chamber,
        } => usmall(
            &group(g)?,
            mu.as_deref(),
            mu_fw.as_deref(),
            chamber.as_deref(),
        ),
        Command::Nondecreasable { group: g, slack } => nondecreasable(&group(g)?, *slack),
        Command::Verify {
            group: g,
            family,
            max_rank,
            slack,
        } => {
            check_slack(*slack)?;
            let specs = match (g, family) {
                (Some(g), _) => vec![parse_group(g)?],
                (None, Some(f)) => family_specs(f, *max_rank)?,
                (None, None) => bail!("verify needs --group or --family"),
            };
            verify(&specs, *slack, cache.as_ref(), g.is_some())
        }
        Command::Figure { group: g } => figure(&group(g)?),
    }
}

fn check_slack(slack: i64) -> anyhow::Result<()> {
    if slack < 0 {
        bail!("--slack must be non-negative");
    }
    Ok(())
}

/// Groups of rank at most `max_rank` whose label starts with `family:`.
pub fn family_specs(family: &str, max_rank: usize) -> anyhow::Result<Vec<GroupSpec>> {
    const FAMILIES: [&str; 5] = ["su", "so", "sp", "so*", "sl"];
    if family != "all" && !FAMILIES.contains(&family) {
        bail!("unknown family {family:?} (expected all, su, so, sp, so* or sl)");
    }
    Ok(GroupSpec::all_up_to_rank(max_rank)
        .into_iter()
        .filter(|s| family == "all" || s.label().split(':').next() == Some(family))
        .collect())
}

fn weights(ws: &[Weight]) -> String {
    ws.iter()
        .map(Weight::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn dotted(word: &[usize]) -> String {
    word.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(".")
}

#[derive(Serialize)]
struct ChamberRecord {
    label: String,
    /// One-based reflection word from the initial chamber.
    word: Vec<usize>,
    painted: Option<Vec<bool>>,
    simples: Vec<Weight>,
    k_simples: Vec<Weight>,
    rho: Weight,
    rho_c: Weight,
    rho_n: Weight,
}

fn chambers(g: &Group) -> anyhow::Result<CommandOutput> {
    let records: Vec<ChamberRecord> = g
        .frames
        .iter()
        .enumerate()
        .map(|(i, f)| ChamberRecord {
            label: f.label.clone(),
            word: f.word.iter().map(|w| w + 1).collect(),
            painted: g.chambers.get(i).map(|c| c.diagram.painted.clone()),
            simples: f.g_simples.to_vec(),
            k_simples: f.k_simples.clone(),
            rho: &f.rho_c + &f.rho_n,
            rho_c: f.rho_c.clone(),
            rho_n: f.rho_n.clone(),
        })
        .collect();
    let mut t = Table::new(&[
        "label", "word", "painted", "simples", "rho", "rho_c", "rho_n",
    ]);
    for r in &records {
        t.push(vec![
            r.label.clone(),
            dotted(&r.word),
            r.painted
                .as_ref()
                .map(|p| p.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .unwrap_or_default(),
            weights(&r.simples),
            r.rho.to_string(),
            r.rho_c.to_string(),
            r.rho_n.to_string(),
        ]);
    }
    Ok(CommandOutput::new(
        "chambers",
        json!({
            "group": g.spec.label(),
            "count": records.len(),
            "convention": g.convention(),
            "chambers": records,
        }),
        t,
    ))
}

fn lemmas(g: &Group) -> anyhow::Result<CommandOutput> {
    if !g.is_equal_rank() {
        bail!(
            "{}: the classification lemmas concern equal-rank forms only",
            g.spec.label()
        );
    }
    let report = check_all_lemmas(&g.spec, &g.chambers);
    let mut t = Table::new(&["chamber", "gamma", "case", "item", "coeffs"]);
    let mut per_chamber = Vec::new();
    for c in &g.chambers {
        let mut list = Vec::new();
        for gamma in compact_simple_roots(c) {
            // Failures are already in the report.
            if let Ok(k) = classify_k_simple(&g.spec, c, &gamma) {
                let tag = serde_json::to_value(k.case_tag)?;
                t.push(vec![
                    c.label(),
                    gamma.to_string(),
                    tag.to_string(),
                    k.item.to_string(),
                    k.coeffs
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                ]);
                list.push(k);
            }
        }
        per_chamber.push(json!({ "chamber": c.label(), "k_simples": list }));
    }
    let passed = report.passed();
    let mut out = CommandOutput::new(
        "lemmas",
        json!({ "group": g.spec.label(), "chambers": per_chamber, "report": report }),
        t,
    );
    if !passed {
        out.status = EXIT_COUNTEREXAMPLE;
    }
    Ok(out)
}

fn parse_coords(s: &str, what: &str) -> anyhow::Result<Vec<ktypes_core::Q>> {
    s.split(',')
        .map(|x| parse_rational(x).with_context(|| format!("{what}: {x:?} is not a rational")))
        .collect()
}

fn usmall(
    g: &Group,
    mu: Option<&str>,
    mu_fw: Option<&str>,
    chamber: Option<&str>,
) -> anyhow::Result<CommandOutput> {
    let mu = match (mu, mu_fw) {
        (Some(s), None) => {
            let w = Weight::new(parse_coords(s, "--mu")?);
            if w.dim() != g.dim() {
                bail!(
                    "--mu has {} coordinates, {} expects {}",
                    w.dim(),
                    g.spec.label(),
                    g.dim()
                );
            }
            w
        }
        (None, Some(s)) => {
            let frame = match chamber {
                Some(label) => g
                    .frame_by_label(label)
                    .with_context(|| format!("no chamber labelled {label:?}"))?,
                None => &g.frames[0],
            };
            frame.from_fw_coordinates(&parse_coords(s, "--mu-fw")?)?
        }
        _ => bail!("usmall needs exactly one of --mu and --mu-fw"),
    };
    let order = is_usmall(g, &mu)?;
    let sv = sv_dominance_test(g, &mu)?;
    let lp = if g.rank() <= LP_MAX_RANK {
        Some(lp_oracle_certificate(g, &mu)?)
    } else {
        None
    };
    let mut t = Table::new(&["mu", "method", "verdict"]);
    for c in [Some(&order), Some(&sv), lp.as_ref()].into_iter().flatten() {
        t.push(vec![
            mu.to_string(),
            serde_json::to_value(c.method)?
                .as_str()
                .unwrap_or_default()
                .to_string(),
            c.verdict.to_string(),
        ]);
    }
    Ok(CommandOutput::new(
        "usmall",
        json!({
            "group": g.spec.label(),
            "mu": mu,
            "usmall": order.verdict,
            "hull_vertices": g.hull().vertices,
            "order_test": order,
            "sv_dominance": sv,
            "lp_oracle": lp,
        }),
        t,
    ))
}

fn nondecreasable(g: &Group, slack: i64) -> anyhow::Result<CommandOutput> {
    check_slack(slack)?;
    let cands = enumerate_nondecreasable(g, slack)?;
    let mut t = Table::new(&["mu", "dominant_rep", "qualifying", "universal"]);
    for c in &cands {
        t.push(vec![
            c.mu.to_string(),
            c.dominant_rep.to_string(),
            c.qualifying
                .iter()
                .map(|v| v.frame.as_str())
                .collect::<Vec<_>>()
                .join(";"),
            c.universal.to_string(),
        ]);
    }
    Ok(CommandOutput::new(
        "nondecreasable",
        json!({
            "group": g.spec.label(),
            "slack": slack,
            "count": cands.len(),
            "convention": g.convention(),
            "candidates": cands,
        }),
        t,
    ))
}

fn verify(
    specs: &[GroupSpec],
    slack: i64,
    cache: Option<&ChamberCache>,
    single: bool,
) -> anyhow::Result<CommandOutput> {
    let reports: Vec<TheoremReport> = specs
        .par_iter()
        .map(|s| {
            let g = load_group(*s, cache)?;
            Ok(verify_theorem(&g, slack)?)
        })
        .collect::<anyhow::Result<_>>()?;
    let failures: usize = reports.iter().map(|r| r.counterexamples().len()).sum();
    let t = if single {
        let mut t = Table::new(&["group", "mu", "qualifying", "usmall", "sv_own_chamber"]);
        for r in &reports {
            for c in &r.candidates {
                t.push(vec![
                    r.group.clone(),
                    c.candidate.mu.to_string(),
                    c.candidate
                        .qualifying
                        .iter()
                        .map(|v| v.frame.as_str())
                        .collect::<Vec<_>>()
                        .join(";"),
                    c.usmall.verdict.to_string(),
                    c.sv_own_chamber
                        .map(|b| b.to_string())
                        .unwrap_or_else(|| "n/a".into()),
                ]);
            }
        }
        t
    } else {
        let mut t = Table::new(&["group", "frames", "candidates", "counterexamples"]);
        for r in &reports {
            t.push(vec![
                r.group.clone(),
                r.per_frame.len().to_string(),
                r.candidates.len().to_string(),
                r.counterexamples().len().to_string(),
            ]);
        }
        t
    };
    let document = if single {
        serde_json::to_value(&reports[0])?
    } else {
        json!({
            "slack": slack,
            "groups": reports.len(),
            "counterexamples": failures,
            "reports": reports,
        })
    };
    let mut out = CommandOutput::new("verify", document, t);
    if failures > 0 {
        out.status = EXIT_COUNTEREXAMPLE;
    }
    Ok(out)
}

fn figure(g: &Group) -> anyhow::Result<CommandOutput> {
    let points = figure_points(g)?;
    let mut t = Table::new(&["mu_x", "mu_y", "usmall", "nondecreasable"]);
    t.comments.push(BASIS_NOTE.to_string());
    for p in &points {
        t.push(vec![
            p.mu_x.to_string(),
            p.mu_y.to_string(),
            p.usmall.to_string(),
            p.nondecreasable.to_string(),
        ]);
    }
    let consistent = black_dots_are_usmall(&points);
    let mut out = CommandOutput::new(
        "figure",
        json!({
            "group": g.spec.label(),
            "basis": BASIS_NOTE,
            "points": points,
            "nondecreasable_subset_of_usmall": consistent,
        }),
        t,
    );
    if !consistent {
        out.status = EXIT_COUNTEREXAMPLE;
    }
    Ok(out)
}
