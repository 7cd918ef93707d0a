//! Command-line front end: parse arrangement files, dispatch analyses,
//! and emit reports in text, CSV, or JSON-lines form.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use arrfac::catalog::{self, CatalogKey};
use arrfac::format::{parse_arrangement, print_arrangement, DuplicatePolicy};
use arrfac::induction::{
    hereditarily_indfac, indfac_search, induction_table, verify_certificate,
    FactorizationCertificate, InductionRow,
};
use arrfac::modularity::{chain_partition, supersolvable};
use arrfac::partition::{factorization_report, hereditarily_nice, is_nice, nice_search, Partition};
use arrfac::{Arrangement, SearchLimits};

#[derive(Parser)]
#[command(
    name = "arrfac",
    about = "Exact computations with central hyperplane arrangements",
    version
)]
struct Cli {
    /// Output format for report-style commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Suppress all timing output, making runs byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Abort searches on arrangements with more hyperplanes than this.
    #[arg(long, global = true, default_value_t = 24)]
    max_hyperplanes: usize,
    /// Abort searches on arrangements of higher rank than this.
    #[arg(long, global = true, default_value_t = 5)]
    max_rank: usize,
    /// Whether duplicate hyperplane lines in input files warn or fail.
    #[arg(long, global = true, value_enum, default_value_t = Duplicates::Warn)]
    duplicates: Duplicates,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Duplicates {
    Warn,
    Error,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of an arrangement: field, dimension, rank, flat counts.
    Info { input: String },
    /// Poincaré and characteristic polynomials and exponent candidates.
    Charpoly { input: String },
    /// Search for a maximal chain of modular flats.
    Supersolvable { input: String },
    /// Check a partition for niceness (exit 1 if it is not nice).
    NiceCheck {
        input: String,
        /// Partition in the textual syntax, e.g. "0; 3 5 7 8; 1 2 4 6 9".
        #[arg(long)]
        partition: String,
    },
    /// Search for a nice partition.
    NiceSearch { input: String },
    /// Search for an inductive factorization certificate.
    IndfacSearch {
        input: String,
        /// Write the certificate to this file when one is found.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Verify a certificate (searched if not given) and print its
    /// induction table.
    InductionTable {
        input: String,
        /// Certificate file; when absent, a certificate is searched.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Restrict to the flat spanned by the given hyperplanes.
    Restrict {
        input: String,
        /// Hyperplane indices whose closure defines the flat, e.g. "0 2 5".
        #[arg(long)]
        flat: String,
    },
    /// Localize at the flat spanned by the given hyperplanes.
    Localize {
        input: String,
        #[arg(long)]
        flat: String,
    },
    /// Run the factorization search on every restriction
    /// (exit 1 if some restriction fails).
    Hereditary {
        input: String,
        /// Check inductive factorizations instead of plain niceness.
        #[arg(long)]
        indfac: bool,
    },
    /// Print a catalog arrangement in the file format.
    Catalog { key: String },
    /// Re-run a bundled set of checks (exit 1 if any row fails).
    /// Targets: table2-subset, table1, thm33-smallcases.
    Reproduce { target: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let limits = SearchLimits {
        max_hyperplanes: cli.max_hyperplanes,
        max_rank: cli.max_rank,
    };
    let started = Instant::now();
    let passed = dispatch(cli, &limits)?;
    if !cli.no_timing {
        eprintln!("elapsed-ms: {}", started.elapsed().as_millis());
    }
    Ok(passed)
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_arrangement(cli: &Cli, path: &str) -> Result<Arrangement> {
    let text = read_input(path)?;
    let policy = match cli.duplicates {
        Duplicates::Warn => DuplicatePolicy::Warn,
        Duplicates::Error => DuplicatePolicy::Error,
    };
    let parsed = parse_arrangement(&text, policy)?;
    for line in &parsed.duplicate_lines {
        eprintln!("warning: duplicate hyperplane dropped at line {line}");
    }
    Ok(parsed.arrangement)
}

fn parse_flat_indices(spec: &str) -> Result<Vec<usize>> {
    spec.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| anyhow!("bad hyperplane index `{t}`"))
        })
        .collect()
}

type Record = Vec<(&'static str, String)>;

fn emit(format: Format, records: &[Record]) {
    match format {
        Format::Text => {
            let Some(first) = records.first() else { return };
            let cols: Vec<&str> = first.iter().map(|(k, _)| *k).collect();
            let mut widths: Vec<usize> = cols.iter().map(|c| c.len()).collect();
            for rec in records {
                for (i, (_, v)) in rec.iter().enumerate() {
                    widths[i] = widths[i].max(v.len());
                }
            }
            let header: Vec<String> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<width$}", width = widths[i]))
                .collect();
            println!("{}", header.join("  ").trim_end());
            for rec in records {
                let row: Vec<String> = rec
                    .iter()
                    .enumerate()
                    .map(|(i, (_, v))| format!("{v:<width$}", width = widths[i]))
                    .collect();
                println!("{}", row.join("  ").trim_end());
            }
        }
        Format::Csv => {
            let Some(first) = records.first() else { return };
            let cols: Vec<&str> = first.iter().map(|(k, _)| *k).collect();
            println!("{}", cols.join(","));
            for rec in records {
                let row: Vec<String> = rec.iter().map(|(_, v)| csv_field(v)).collect();
                println!("{}", row.join(","));
            }
        }
        Format::Jsonl => {
            for rec in records {
                let mut obj = serde_json::Map::new();
                for (k, v) in rec {
                    obj.insert((*k).to_string(), serde_json::Value::String(v.clone()));
                }
                println!("{}", serde_json::Value::Object(obj));
            }
        }
    }
}

fn csv_field(v: &str) -> String {
    if v.contains(',') || v.contains('"') || v.contains('\n') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn keyvals(format: Format, pairs: Vec<(&'static str, String)>) {
    match format {
        Format::Text => {
            for (k, v) in &pairs {
                println!("{k}: {v}");
            }
        }
        _ => emit(format, &[pairs]),
    }
}

fn exps_str(e: &Option<Vec<usize>>) -> String {
    match e {
        None => "no-split".to_string(),
        Some(v) => format!(
            "{{{}}}",
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

fn dispatch(cli: &Cli, limits: &SearchLimits) -> Result<bool> {
    match &cli.command {
        Command::Info { input } => {
            let arr = load_arrangement(cli, input)?;
            let lat = arr.lattice();
            let counts: Vec<String> = lat.rank_counts().iter().map(|c| c.to_string()).collect();
            keyvals(
                cli.format,
                vec![
                    ("label", arr.label().unwrap_or("-").to_string()),
                    ("field", format!("r={}", arr.field().conductor())),
                    ("dim", arr.dim().to_string()),
                    ("hyperplanes", arr.len().to_string()),
                    ("rank", lat.rank().to_string()),
                    ("flats", lat.num_flats().to_string()),
                    ("flats-per-rank", counts.join(" ")),
                ],
            );
            Ok(true)
        }
        Command::Charpoly { input } => {
            let arr = load_arrangement(cli, input)?;
            keyvals(
                cli.format,
                vec![
                    ("poincare", arr.poincare_polynomial().to_string()),
                    (
                        "characteristic",
                        arr.characteristic_polynomial().to_string(),
                    ),
                    ("exponent-candidates", exps_str(&arr.exponent_candidates())),
                ],
            );
            Ok(true)
        }
        Command::Supersolvable { input } => {
            let arr = load_arrangement(cli, input)?;
            match supersolvable(&arr) {
                None => {
                    keyvals(cli.format, vec![("supersolvable", "false".to_string())]);
                    Ok(true)
                }
                Some(chain) => {
                    let lat = arr.lattice();
                    let chain_str: Vec<String> = chain
                        .flat_ids()
                        .iter()
                        .map(|&id| {
                            let closed: Vec<String> = lat
                                .flat(id)
                                .closed_set()
                                .iter()
                                .map(|i| i.to_string())
                                .collect();
                            format!("{{{}}}", closed.join(" "))
                        })
                        .collect();
                    let pi = chain_partition(&arr, &chain)?;
                    keyvals(
                        cli.format,
                        vec![
                            ("supersolvable", "true".to_string()),
                            ("chain", chain_str.join(" < ")),
                            ("chain-partition", pi.to_string()),
                        ],
                    );
                    Ok(true)
                }
            }
        }
        Command::NiceCheck { input, partition } => {
            let arr = load_arrangement(cli, input)?;
            let pi = Partition::parse(partition, arr.len())?;
            let report = is_nice(&arr, &pi)?;
            let mut pairs = vec![
                ("nice", report.is_nice().to_string()),
                ("independent", report.independent.to_string()),
                (
                    "singleton-failures",
                    report.singleton_failures.len().to_string(),
                ),
                ("poincare-factored", report.poincare_factored.to_string()),
            ];
            if report.is_nice() {
                let fr = factorization_report(&arr, &pi)?;
                pairs.push((
                    "part-sizes",
                    fr.part_sizes
                        .iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ));
                pairs.push(("poincare", fr.poincare.to_string()));
            }
            keyvals(cli.format, pairs);
            Ok(report.is_nice())
        }
        Command::NiceSearch { input } => {
            let arr = load_arrangement(cli, input)?;
            match nice_search(&arr, limits)? {
                None => keyvals(cli.format, vec![("nice", "false".to_string())]),
                Some(pi) => keyvals(
                    cli.format,
                    vec![("nice", "true".to_string()), ("partition", pi.to_string())],
                ),
            }
            Ok(true)
        }
        Command::IndfacSearch { input, cert_out } => {
            let arr = load_arrangement(cli, input)?;
            match indfac_search(&arr, limits)? {
                None => {
                    keyvals(
                        cli.format,
                        vec![("inductively-factored", "false".to_string())],
                    );
                }
                Some(cert) => {
                    keyvals(
                        cli.format,
                        vec![
                            ("inductively-factored", "true".to_string()),
                            ("partition", cert.final_partition().to_string()),
                        ],
                    );
                    if let Some(path) = cert_out {
                        std::fs::write(path, cert.print())
                            .with_context(|| format!("writing {}", path.display()))?;
                    } else if cli.format == Format::Text {
                        print!("{}", cert.print());
                    }
                }
            }
            Ok(true)
        }
        Command::InductionTable { input, cert } => {
            let arr = load_arrangement(cli, input)?;
            let cert = match cert {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    FactorizationCertificate::parse(&text, &arr)?
                }
                None => indfac_search(&arr, limits)?
                    .ok_or_else(|| anyhow!("no inductive factorization found"))?,
            };
            match induction_table(&arr, &cert) {
                Err(e) => {
                    eprintln!("certificate rejected: {e}");
                    Ok(false)
                }
                Ok(rows) => {
                    emit(cli.format, &table_records(&rows));
                    if cli.format == Format::Text {
                        println!("final-exponents: {}", exps_str(&arr.exponent_candidates()));
                    }
                    Ok(true)
                }
            }
        }
        Command::Restrict { input, flat } | Command::Localize { input, flat } => {
            let arr = load_arrangement(cli, input)?;
            let indices = parse_flat_indices(flat)?;
            let f = arr.closure_of(&indices)?;
            let result = match &cli.command {
                Command::Restrict { .. } => arr.restriction(&f)?,
                _ => arr.localization(&f)?,
            };
            print!("{}", print_arrangement(&result));
            Ok(true)
        }
        Command::Hereditary { input, indfac } => {
            let arr = load_arrangement(cli, input)?;
            let mut records = Vec::new();
            let passed;
            if *indfac {
                let report = hereditarily_indfac(&arr, limits)?;
                passed = report.passed();
                for (closed, cert) in &report.results {
                    records.push(vec![
                        ("flat", format!("{closed:?}")),
                        ("inductively-factored", cert.is_some().to_string()),
                    ]);
                }
            } else {
                let report = hereditarily_nice(&arr, limits)?;
                passed = report.passed();
                for (closed, pi) in &report.results {
                    records.push(vec![
                        ("flat", format!("{closed:?}")),
                        ("nice", pi.is_some().to_string()),
                    ]);
                }
            }
            emit(cli.format, &records);
            if cli.format == Format::Text {
                println!("hereditary: {passed}");
            }
            Ok(passed)
        }
        Command::Catalog { key } => {
            let key: CatalogKey = key.parse()?;
            let (arr, pi) = catalog::build(&key)?;
            print!("{}", print_arrangement(&arr));
            if let Some(pi) = pi {
                println!("# partition: {pi}");
            }
            Ok(true)
        }
        Command::Reproduce { target } => reproduce(cli, limits, target),
    }
}

fn table_records(rows: &[InductionRow]) -> Vec<Record> {
    let fmt_exps = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    rows.iter()
        .map(|row| {
            vec![
                ("exp_before", fmt_exps(&row.exp_before)),
                ("form", row.added.to_string()),
                ("exp_restriction", fmt_exps(&row.exp_restriction)),
                ("part", row.part.to_string()),
            ]
        })
        .collect()
}

struct Row {
    name: String,
    expected: String,
    got: String,
    millis: u128,
}

impl Row {
    fn passed(&self) -> bool {
        self.expected == self.got
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed().as_millis())
}

fn reproduce(cli: &Cli, limits: &SearchLimits, target: &str) -> Result<bool> {
    let mut rows: Vec<Row> = Vec::new();
    let mut push = |name: String, expected: &str, got: String, millis: u128| {
        rows.push(Row {
            name,
            expected: expected.to_string(),
            got,
            millis,
        });
    };
    match target {
        "table2-subset" => {
            use catalog::NamedRestriction::*;
            for (key, nice_expected, exps) in [
                (E6A1Cubed, false, "{1,4,5}"),
                (E6A1A2, true, "{1,4,5}"),
                (E7A1A3DoublePrime, true, "{1,5,5}"),
            ] {
                let (arr, published) = catalog::named_restriction(key);
                let (found, ms) = timed(|| nice_search(&arr, limits));
                push(
                    format!("{key:?} nice"),
                    &nice_expected.to_string(),
                    found?.is_some().to_string(),
                    ms,
                );
                let (got_exps, ms) = timed(|| exps_str(&arr.exponent_candidates()));
                push(format!("{key:?} exponents"), exps, got_exps, ms);
                if let Some(pi) = published {
                    let (rep, ms) = timed(|| is_nice(&arr, &pi));
                    push(
                        format!("{key:?} published partition nice"),
                        "true",
                        rep?.is_nice().to_string(),
                        ms,
                    );
                    let (cert, ms) = timed(|| indfac_search(&arr, limits));
                    push(
                        format!("{key:?} inductively factored"),
                        "true",
                        cert?.is_some().to_string(),
                        ms,
                    );
                }
            }
        }
        "table1" => {
            for r in [2u32, 3] {
                let arr = catalog::intermediate(r, 4, 2)?;
                let (cert, ms) = timed(|| catalog::intermediate_induction_chain(r, 4));
                let cert = cert?;
                let (verdict, ms2) = timed(|| verify_certificate(&arr, &cert));
                push(
                    format!("chain certificate for intermediate({r},4,2)"),
                    "ok",
                    match verdict {
                        Ok(()) => "ok".to_string(),
                        Err(e) => e.to_string(),
                    },
                    ms + ms2,
                );
                let (rows_result, ms) = timed(|| induction_table(&arr, &cert));
                let nrows = rows_result.as_ref().map(|r| r.len()).unwrap_or(0);
                push(
                    format!("induction table rows for intermediate({r},4,2)"),
                    &arr.len().to_string(),
                    nrows.to_string(),
                    ms,
                );
                let r = r as usize;
                let mut expect = vec![1, r + 1, 2 * r + 1, 3 * r - 1];
                expect.sort_unstable();
                let (got, ms) = timed(|| exps_str(&arr.exponent_candidates()));
                push(
                    format!("final exponents for intermediate({r},4,2)"),
                    &exps_str(&Some(expect)),
                    got,
                    ms,
                );
            }
        }
        "thm33-smallcases" => {
            for k in 0..=3usize {
                for r in 2..=4u32 {
                    let arr = catalog::intermediate(r, 3, k)?;
                    let (found, ms) = timed(|| nice_search(&arr, limits));
                    push(
                        format!("intermediate({r},3,{k}) nice"),
                        "true",
                        found?.is_some().to_string(),
                        ms,
                    );
                }
            }
            for r in [2u32, 3] {
                let arr = catalog::intermediate(r, 4, 1)?;
                let (found, ms) = timed(|| nice_search(&arr, limits));
                push(
                    format!("intermediate({r},4,1) nice"),
                    "false",
                    found?.is_some().to_string(),
                    ms,
                );
            }
            for k in 0..=4usize {
                let arr = catalog::intermediate(2, 4, k)?;
                let (cert, ms) = timed(|| indfac_search(&arr, limits));
                push(
                    format!("intermediate(2,4,{k}) inductively factored"),
                    &(k >= 2).to_string(),
                    cert?.is_some().to_string(),
                    ms,
                );
            }
        }
        other => bail!("unknown reproduce target `{other}` (expected table2-subset, table1, or thm33-smallcases)"),
    }

    let all_passed = rows.iter().all(|r| r.passed());
    let records: Vec<Record> = rows
        .iter()
        .map(|r| {
            let mut rec = vec![
                ("check", r.name.clone()),
                ("expected", r.expected.clone()),
                ("got", r.got.clone()),
                (
                    "status",
                    if r.passed() { "pass" } else { "FAIL" }.to_string(),
                ),
            ];
            if !cli.no_timing {
                rec.push(("ms", r.millis.to_string()));
            }
            rec
        })
        .collect();
    emit(cli.format, &records);
    if cli.format == Format::Text {
        println!(
            "result: {} ({}/{} checks passed)",
            if all_passed { "pass" } else { "FAIL" },
            rows.iter().filter(|r| r.passed()).count(),
            rows.len()
        );
    }
    Ok(all_passed)
}
