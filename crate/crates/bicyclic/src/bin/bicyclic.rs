//! Command-line front end: quadratic and biquadratic field invariants,
//! complete enumerations, and regression checks against the embedded tables.
//!
//! Exit codes: 0 success, 1 verification or completeness failure, 2 usage
//! or input error.

use bicyclic::enumerate::{
    build_class_number_table, concluding_checks, enumerate_fields, verify_against_embedded,
    verify_propositions, EnumerateOptions,
};
use bicyclic::output::{emit, Format};
use bicyclic::realquad::{class_group_real, class_number_real, fundamental_unit};
use bicyclic::imagquad::{class_group_imag, class_number_imag};
use bicyclic::{biquad, tables, Error};
use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bicyclic", version, about = "Class numbers of quadratic and imaginary bicyclic biquadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuadKind {
    Imag,
    Real,
}

#[derive(Subcommand)]
enum Command {
    /// Class number, class group and (real) fundamental unit of a quadratic field
    Quad {
        #[arg(value_enum)]
        kind: QuadKind,
        /// Squarefree radicand
        d: u64,
    },
    /// Invariants of the imaginary bicyclic biquadratic field Q(sqrt(r1), sqrt(r2))
    Biquad {
        #[arg(allow_hyphen_values = true)]
        r1: i64,
        #[arg(allow_hyphen_values = true)]
        r2: i64,
    },
    /// Enumerate all fields with class number n
    Enumerate {
        n: u64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
        /// Search bound for class-number lists absent from the embedded data
        #[arg(long)]
        bound: Option<u64>,
        /// Disable the genus 2-rank prescreen
        #[arg(long)]
        no_prefilter: bool,
    },
    /// Enumerate and verify against the embedded tables (n in {4, 6, 7})
    Verify {
        n: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List imaginary quadratic fields with class number m
    Appendix {
        m: u64,
        /// Search bound; defaults to the embedded maximum when available
        #[arg(long)]
        bound: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> bicyclic::Result<ExitCode> {
    match command {
        Command::Quad { kind, d } => {
            match kind {
                QuadKind::Imag => {
                    let h = class_number_imag(d)?;
                    println!("field: Q(sqrt(-{d}))");
                    println!("h = {h}");
                    println!("class group: {}", class_group_imag(d)?);
                }
                QuadKind::Real => {
                    let h = class_number_real(d)?;
                    println!("field: Q(sqrt({d}))");
                    println!("h = {h}");
                    match class_group_real(d) {
                        Ok(g) => println!("class group: {g}"),
                        Err(Error::UnresolvedStructure { order, rank }) => println!(
                            "class group: order {order}, 2-rank {rank} (structure not determined by genus theory)"
                        ),
                        Err(e) => return Err(e),
                    }
                    let u = fundamental_unit(d)?;
                    println!("fundamental unit: {u} with norm {}", u.norm());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Biquad { r1, r2 } => {
            let field = biquad::normalize_field(r1, r2)?;
            let data = biquad::kuroda_hk(&field)?;
            println!("field: {field}");
            println!("real radicand: {}", field.d_xy);
            println!(
                "(h1, h2, h3, q) = ({}, {}, {}, {})",
                data.h1, data.h2, data.h3, data.q
            );
            println!("h_K = {}", data.h_k);
            println!("Cl(K1) = {}", class_group_imag(field.x)?);
            println!("Cl(K2) = {}", class_group_imag(field.y)?);
            println!("Cl(K3) = {}", class_group_real(field.d_xy)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            n,
            out,
            format,
            jobs,
            bound,
            no_prefilter,
        } => {
            let format: Format = format.parse()?;
            let report = enumerate_fields(
                n,
                &EnumerateOptions {
                    bound,
                    no_prefilter,
                    jobs,
                },
            )?;
            let text = emit(&report, format);
            match &out {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Error::BadData(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            let partition: Vec<String> = report
                .omega_partition
                .values()
                .map(|c| c.to_string())
                .collect();
            eprintln!(
                "{} fields ({}), complete = {}",
                report.fields.len(),
                partition.join("/"),
                report.complete
            );
            Ok(if report.complete {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify { n, jobs } => {
            if !matches!(n, 4 | 6 | 7) {
                return Err(Error::BadData(format!(
                    "verify supports n in {{4, 6, 7}}, got {n}"
                )));
            }
            let report = enumerate_fields(
                n,
                &EnumerateOptions {
                    jobs,
                    ..Default::default()
                },
            )?;
            let mut problems = verify_against_embedded(&report)?;
            problems.extend(verify_propositions(&report));
            if n == 4 {
                problems.extend(concluding_checks(&report));
            }
            if problems.is_empty() {
                println!(
                    "n = {n}: {} fields verified against embedded data",
                    report.fields.len()
                );
                Ok(ExitCode::SUCCESS)
            } else {
                for p in &problems {
                    println!("MISMATCH: {p}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Appendix { m, bound } => {
            let embedded = tables::appendix_lists()?.get(&m);
            let bound = match (bound, embedded) {
                (Some(b), _) => b,
                (None, Some(list)) => *list.last().unwrap(),
                (None, None) => {
                    return Err(Error::BadData(format!(
                        "no embedded list for class number {m}; pass --bound"
                    )))
                }
            };
            let table = build_class_number_table(m, bound)?;
            let rendered: Vec<String> = table.entries.iter().map(|z| z.to_string()).collect();
            println!("{}", rendered.join(", "));
            match embedded {
                Some(list) => {
                    let truncated: Vec<u64> = table
                        .entries
                        .iter()
                        .copied()
                        .filter(|z| *z <= *list.last().unwrap())
                        .collect();
                    if &truncated == list {
                        println!("PASS: matches the embedded class-number-{m} list ({} values)", list.len());
                        Ok(ExitCode::SUCCESS)
                    } else {
                        println!("FAIL: differs from the embedded class-number-{m} list");
                        Ok(ExitCode::from(1))
                    }
                }
                None => {
                    println!(
                        "conditional: {} values up to {bound}; completeness not certified",
                        table.entries.len()
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}
