//! Command-line front end: group parsing, the chamber cache, output
//! formats and the figure export.

pub mod cache;
pub mod commands;
pub mod figure;
pub mod output;

use std::ffi::OsString;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::Parser;
use ktypes_core::GroupSpec;

use crate::commands::{run, Cli};
use crate::output::error_record;

/// Version tag embedded in every JSON document and cache file.
pub const SCHEMA_VERSION: u32 = 1;

/// Exit status for a verification failure or counterexample.
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
/// Exit status for usage, parse and precondition errors.
pub const EXIT_USAGE: i32 = 2;

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name), runs the command and renders
/// the result. Errors become a JSON record on stdout plus a message on stderr.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let message = e.to_string();
            return Outcome {
                code: EXIT_USAGE,
                stdout: error_record("usage", message.trim()),
                stderr: message,
            };
        }
    };
    let failure = |e: anyhow::Error| {
        let message = format!("{e:#}");
        Outcome {
            code: EXIT_USAGE,
            stdout: error_record("input", &message),
            stderr: format!("error: {message}\n"),
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => return failure(e),
    };
    let text = match out.render(cli.format) {
        Ok(t) => t,
        Err(e) => return failure(e),
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code: out.status,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => failure(anyhow::Error::new(e).context(format!("writing {}", path.display()))),
        },
        None => Outcome {
            code: out.status,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn two_numbers(body: &str) -> anyhow::Result<(String, String)> {
    let (a, b) = body
        .split_once(',')
        .with_context(|| format!("expected two comma-separated parameters, got {body:?}"))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

fn number(s: &str) -> anyhow::Result<usize> {
    s.parse::<usize>()
        .with_context(|| format!("{s:?} is not a non-negative integer"))
}

/// Parses `su:p,q | so:a,b | sp:n,R | sp:p,q | so*:2n | sl:m,R | sl:n,H`.
///
/// `so:a,b` is dispatched on the parities of `a` and `b`. The even block of
/// a mixed-parity pair comes first (`so:5,4` is `so:4,5`) and `so:2a,2b` is
/// stored with `a <= b`.
pub fn parse_group(s: &str) -> anyhow::Result<GroupSpec> {
    let (family, body) = s
        .trim()
        .split_once(':')
        .with_context(|| format!("group {s:?} has no family prefix (expected e.g. su:2,1)"))?;
    let spec = match family {
        "su" => {
            let (a, b) = two_numbers(body)?;
            GroupSpec::Su {
                p: number(&a)?,
                q: number(&b)?,
            }
        }
        "so" => {
            let (a, b) = two_numbers(body)?;
            let (a, b) = (number(&a)?, number(&b)?);
            match (a % 2, b % 2) {
                (0, 0) => GroupSpec::So2p2q {
                    p: a.min(b) / 2,
                    q: a.max(b) / 2,
                },
                (0, 1) | (1, 0) => {
                    let (even, odd) = if a % 2 == 0 { (a, b) } else { (b, a) };
                    if odd == 1 {
                        GroupSpec::So2n1 { n: even / 2 }
                    } else {
                        GroupSpec::So2p2q1 {
                            p: even / 2,
                            q: (odd - 1) / 2,
                        }
                    }
                }
                _ => {
                    let (p, q) = ((a - 1) / 2, (b - 1) / 2);
                    // so(2p+1, 1) is written with the trivial block first.
                    let (p, q) = if q == 0 { (q, p) } else { (p, q) };
                    GroupSpec::So2p1_2q1 { p, q }
                }
            }
        }
        "sp" => {
            let (a, b) = two_numbers(body)?;
            if b == "R" {
                GroupSpec::SpR { n: number(&a)? }
            } else {
                GroupSpec::Sp {
                    p: number(&a)?,
                    q: number(&b)?,
                }
            }
        }
        "so*" => {
            let m = number(body.trim())?;
            if m % 2 != 0 {
                bail!("so*:{m}: the parameter must be even (so*(2n))");
            }
            GroupSpec::SoStar { n: m / 2 }
        }
        "sl" => {
            let (a, b) = two_numbers(body)?;
            let m = number(&a)?;
            match b.as_str() {
                "R" if m % 2 == 1 => GroupSpec::SlOddR { n: m / 2 },
                "R" => GroupSpec::SlEvenR { n: m / 2 },
                "H" => GroupSpec::SlH { n: m },
                other => bail!("sl:{m},{other}: the field must be R or H"),
            }
        }
        other => bail!("unknown family {other:?} (expected su, so, sp, so* or sl)"),
    };
    spec.validate()?;
    Ok(spec)
}
