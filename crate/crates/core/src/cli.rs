//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extcalc::ExtProfile;
use crate::group::{class_records, conjugacy_classes, GroupParams};
use crate::quiver::McKayQuiver;
use crate::reps::{IrrepLabel, Reps};
use crate::sodverify::{ext_objects, verify, SeqObject, SodReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub e: u32,
}

#[derive(Debug, Parser)]
#[command(name = "gme2", version, about = "Exact computations for the reflection groups G(m,e,2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugacy classes with centralisers and fixed loci.
    Classes {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Irreducible representations.
    Irreps {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Character table over the cyclotomic field, `z` a primitive m-th root of unity.
    CharTable {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decompose a tensor product of two irreducibles.
    Tensor {
        #[command(flatten)]
        group: GroupArgs,
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ext dimensions between skyscrapers `O_0 (x) W` or sheaves `F(x^a)`.
    Ext {
        #[command(flatten)]
        group: GroupArgs,
        source: String,
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// McKay quiver.
    Quiver {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the semi-orthogonal decomposition.
    SodVerify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run sod-verify for every (m,e) with 2 <= m <= max-m, e | m, e >= 2.
    Sweep {
        #[arg(long)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parse `args` (including the program name), run, and write to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut buf = String::new();
    let status = dispatch(&cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match status {
        Ok(()) => EXIT_OK,
        Err(Failure::Checks) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn params(g: &GroupArgs) -> Result<GroupParams> {
    GroupParams::new(g.m, g.e)
}

fn allow(format: Format, allowed: &[Format], cmd: &str) -> std::result::Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("format {format:?} is not available for {cmd}").to_lowercase()))
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serialisable") + "\n"
}

fn parse_label(reps: &Reps, s: &str) -> Result<IrrepLabel> {
    reps.canonicalize(&s.parse()?)
}

/// `F(x^a)`, `F(1)` or an irreducible label.
fn parse_object(reps: &Reps, s: &str) -> Result<SeqObject> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(inner) = t.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
        let a = match inner {
            "1" | "x^0" => 0,
            "x" => 1,
            _ => inner
                .strip_prefix("x^")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Error::LabelParse { input: s.into(), reason: "expected F(x^a)".into() })?,
        };
        return Ok(SeqObject::F { a });
    }
    Ok(SeqObject::Sky { label: parse_label(reps, s)? })
}

fn dispatch(cmd: &Command, out: &mut String) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Classes { group, format } => {
            allow(*format, &[Format::Text, Format::Json, Format::Csv], "classes")?;
            let records = class_records(&conjugacy_classes(&params(group)?));
            match format {
                Format::Json => out.push_str(&json(&records)),
                Format::Csv => {
                    out.push_str("representative,size,centraliser_order,fixed_locus\n");
                    for r in &records {
                        writeln!(out, "{},{},{},{}", r.representative, r.size, r.centraliser_order, r.fixed_locus).unwrap();
                    }
                }
                _ => {
                    for r in &records {
                        writeln!(
                            out,
                            "{:<12} size {:<3} centraliser {:<4} fixes {}",
                            r.representative.to_string(),
                            r.size,
                            r.centraliser_order,
                            r.fixed_locus
                        )
                        .unwrap();
                    }
                }
            }
        }
        Command::Irreps { group, format } => {
            allow(*format, &[Format::Text, Format::Json, Format::Csv], "irreps")?;
            let reps = Reps::new(params(group)?);
            match format {
                Format::Json => out.push_str(&json(&reps.irreps())),
                Format::Csv => {
                    out.push_str("label,dim\n");
                    for l in reps.irreps() {
                        writeln!(out, "{l},{}", l.dim()).unwrap();
                    }
                }
                _ => {
                    for l in reps.irreps() {
                        writeln!(out, "{l}  dim {}", l.dim()).unwrap();
                    }
                }
            }
        }
        Command::CharTable { group, format } => {
            allow(*format, &[Format::Text, Format::Json, Format::Csv], "char-table")?;
            let reps = Reps::new(params(group)?);
            let classes: Vec<String> = reps.classes().iter().map(|c| c.representative.to_string()).collect();
            let rows: Vec<(String, Vec<String>)> = reps
                .irreps()
                .iter()
                .zip(reps.char_table())
                .map(|(l, row)| (l.to_string(), row.iter().map(|v| v.to_string()).collect()))
                .collect();
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        label: &'a str,
                        values: &'a [String],
                    }
                    #[derive(Serialize)]
                    struct Table<'a> {
                        classes: &'a [String],
                        rows: Vec<Row<'a>>,
                    }
                    let rows = rows.iter().map(|(label, values)| Row { label, values }).collect();
                    out.push_str(&json(&Table { classes: &classes, rows }));
                }
                Format::Csv => {
                    writeln!(out, "label,{}", classes.join(",")).unwrap();
                    for (l, vals) in &rows {
                        writeln!(out, "{l},{}", vals.join(",")).unwrap();
                    }
                }
                _ => {
                    writeln!(out, "classes: {}", classes.join(" | ")).unwrap();
                    for (l, vals) in &rows {
                        writeln!(out, "{l}: {}", vals.join(" | ")).unwrap();
                    }
                }
            }
        }
        Command::Tensor { group, left, right, format } => {
            allow(*format, &[Format::Text, Format::Json], "tensor")?;
            let reps = Reps::new(params(group)?);
            let u = parse_label(&reps, left)?;
            let w = parse_label(&reps, right)?;
            let prod = reps.tensor(&u, &w);
            match format {
                Format::Json => {
                    let v: Vec<(IrrepLabel, u64)> = prod.iter().map(|(l, &k)| (*l, k)).collect();
                    out.push_str(&json(&v));
                }
                _ => writeln!(out, "{prod}").unwrap(),
            }
        }
        Command::Ext { group, source, target, format } => {
            allow(*format, &[Format::Text, Format::Json], "ext")?;
            let p = params(group)?;
            let reps = Reps::new(p);
            let x = parse_object(&reps, source)?;
            let y = parse_object(&reps, target)?;
            let e: ExtProfile = ext_objects(&p, &x, &y)?;
            match format {
                Format::Json => out.push_str(&json(&e)),
                _ => {
                    let bound = matches!((x, y), (SeqObject::F { .. }, SeqObject::F { .. }));
                    let note = if bound { " (upper bound, exact when zero)" } else { "" };
                    writeln!(out, "Ext^*({x}, {y}) = {e}{note}").unwrap();
                }
            }
        }
        Command::Quiver { group, format } => {
            let q = McKayQuiver::from_engine(&params(group)?);
            match format {
                Format::Json => out.push_str(&(q.to_json() + "\n")),
                Format::Dot => out.push_str(&q.to_dot()),
                Format::Text => {
                    for e in &q.solid {
                        writeln!(out, "{} -> {} x{}", e.from, e.to, e.multiplicity).unwrap();
                    }
                    for e in &q.dotted {
                        writeln!(out, "{} ~> {} x{}", e.from, e.to, e.multiplicity).unwrap();
                    }
                }
                Format::Csv => return Err(Failure::Usage("format csv is not available for quiver".into())),
            }
        }
        Command::SodVerify { group, json: as_json } => {
            let report = verify(&params(group)?)?;
            if *as_json {
                out.push_str(&(report.to_json() + "\n"));
            } else {
                writeln!(out, "{report}").unwrap();
            }
            if !report.passed {
                return Err(Failure::Checks);
            }
        }
        Command::Sweep { max_m, format } => {
            allow(*format, &[Format::Text, Format::Json, Format::Csv], "sweep")?;
            let reports = sweep(*max_m)?;
            match format {
                Format::Json => out.push_str(&json(&reports)),
                Format::Csv => {
                    out.push_str("m,e,classes,pieces,exceptional,spanning,passed\n");
                    for r in &reports {
                        let c = &r.counts;
                        writeln!(
                            out,
                            "{},{},{},{},{},{},{}",
                            r.m, r.e, c.classes, c.pieces, c.exceptional_length, c.spanning_set_size, r.passed
                        )
                        .unwrap();
                    }
                }
                _ => {
                    writeln!(out, "{:>3} {:>3} {:>7} {:>6} {:>11} {:>8}  checks", "m", "e", "classes", "pieces", "exceptional", "spanning")
                        .unwrap();
                    for r in &reports {
                        let c = &r.counts;
                        let passed = r.checks.iter().filter(|k| k.passed).count();
                        writeln!(
                            out,
                            "{:>3} {:>3} {:>7} {:>6} {:>11} {:>8}  {passed}/{} {}",
                            r.m,
                            r.e,
                            c.classes,
                            c.pieces,
                            c.exceptional_length,
                            c.spanning_set_size,
                            r.checks.len(),
                            if r.passed { "PASS" } else { "FAIL" }
                        )
                        .unwrap();
                    }
                    let ok = reports.iter().filter(|r| r.passed).count();
                    writeln!(out, "{ok}/{} parameter pairs pass", reports.len()).unwrap();
                }
            }
            if reports.iter().any(|r| !r.passed) {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

/// Reports for every `(m,e)` with `2 <= m <= max_m`, `e | m`, `e >= 2`, in `(m,e)` order.
pub fn sweep(max_m: u32) -> Result<Vec<SodReport>> {
    let pairs: Vec<(u32, u32)> =
        (2..=max_m).flat_map(|m| (2..=m).filter(move |e| m % e == 0).map(move |e| (m, e))).collect();
    thread::scope(|s| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|&(m, e)| s.spawn(move || verify(&GroupParams::new(m, e)?)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    })
}
