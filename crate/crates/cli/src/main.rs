//! `frieze`: compute generalised friezes of polygon dissections, run
//! verification sweeps, and search for dissections matching a printed
//! frieze.
//!
//! Exit codes: 0 success, 1 verification failures or no match, 2 usage or
//! parse errors, 3 internal invariant violations.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use frieze_core::ccmap::{rho, rho_diagonal};
use frieze_core::cluster::all_ind_objects;
use frieze_core::frieze::{
    frieze_grid, search_fixture, DiamondRule, FriezeFixture, FriezeGrid, Method,
};
use frieze_core::gmodule::mesh_is_split;
use frieze_core::polygon::{
    enumerate_dissections, enumerate_triangulations, random_dissection, Dissection, PolygonSize,
};
use frieze_core::verify::{verify_range, Property};
use frieze_core::Error;

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "frieze",
    version,
    about = "Generalised friezes of polygon dissections"
)]
struct Cli {
    /// Worker threads for sweeps and searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the frieze of a dissection.
    Frieze {
        /// Rank n of A_n; the polygon has n + 3 vertices.
        #[arg(long)]
        n: usize,
        /// Diagonals as `a-b,c-d`; empty for the empty dissection.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        dissection: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Cc)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Sweep all dissections and check the frieze identities.
    Verify {
        /// Largest polygon size N to sweep (starting from 6).
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = PropertyArg::All)]
        property: PropertyArg,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Find every dissection whose frieze matches a fixture file.
    Search {
        /// JSON file `{"n": 7, "rows": [[...], ...]}`.
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        triangulations_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Count or list dissections.
    Enum {
        /// Rank n of A_n; the polygon has n + 3 vertices.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = What::Dissections)]
        what: What,
        #[arg(long)]
        count_only: bool,
        /// Print this many pseudo-random dissections instead.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate the mesh differences of a dissection.
    Mesh {
        /// Rank n of A_n; the polygon has n + 3 vertices.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        dissection: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Bhj,
    Cc,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Ascii,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Dissections,
    Triangulations,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PropertyArg {
    #[value(name = "theoremB", alias = "agreement")]
    Agreement,
    Mesh,
    Extension,
    Oracle,
    All,
}

impl PropertyArg {
    fn properties(self) -> Vec<Property> {
        match self {
            PropertyArg::Agreement => vec![Property::Agreement],
            PropertyArg::Mesh => vec![Property::MeshRule],
            PropertyArg::Extension => vec![Property::Extension],
            PropertyArg::Oracle => vec![Property::Oracle],
            PropertyArg::All => Property::DEFAULT.to_vec(),
        }
    }
}

/// An error carrying its exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::FriezeViolation { .. } => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Exit(code, e.to_string())
    }
}

type CmdResult = Result<(String, u8), Exit>;

fn parse_dissection(rank: usize, text: &str) -> Result<Dissection, Exit> {
    let n = PolygonSize::for_rank(rank)?;
    Ok(Dissection::parse(text, n)?)
}

fn render_grid(grid: &FriezeGrid, method: Method, format: Format) -> String {
    match format {
        Format::Ascii => grid.render_ascii(),
        Format::Json => grid.to_json() + "\n",
        Format::Csv => grid.render_csv(method),
    }
}

fn check_diamonds(grid: &FriezeGrid) -> Result<(), Exit> {
    for (r, row) in grid.diamonds().iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            if v != 0 && v != 1 {
                return Err(Exit(
                    EXIT_INTERNAL,
                    format!("mesh at ({}, {i}) has difference {v}", r + 2),
                ));
            }
        }
    }
    Ok(())
}

fn cmd_frieze(rank: usize, text: &str, method: MethodArg, format: Format) -> CmdResult {
    let d = parse_dissection(rank, text)?;
    let single = |m: Method| -> Result<(FriezeGrid, String), Exit> {
        let grid = frieze_grid(&d, m);
        check_diamonds(&grid)?;
        let out = render_grid(&grid, m, format);
        Ok((grid, out))
    };
    match method {
        MethodArg::Bhj => Ok((single(Method::Bhj)?.1, 0)),
        MethodArg::Cc => Ok((single(Method::Cc)?.1, 0)),
        MethodArg::Both => {
            let (bhj, bhj_out) = single(Method::Bhj)?;
            let (cc, cc_out) = single(Method::Cc)?;
            let verdict = if bhj == cc { "MATCH" } else { "MISMATCH" };
            let out = match format {
                Format::Json => {
                    let value = json!({
                        "bhj": serde_json::to_value(&bhj).expect("grid serialises"),
                        "cc": serde_json::to_value(&cc).expect("grid serialises"),
                        "verdict": verdict,
                    });
                    value.to_string() + "\n"
                }
                Format::Csv => {
                    // the cc table without its header line follows the bhj table
                    let cc_rows = cc_out.split_once('\n').map_or("", |(_, rest)| rest);
                    format!("{bhj_out}{cc_rows}")
                }
                Format::Ascii => format!("bhj:\n{bhj_out}\ncc:\n{cc_out}\n{verdict}\n"),
            };
            let code = if bhj == cc { 0 } else { EXIT_INTERNAL };
            Ok((out, code))
        }
    }
}

fn cmd_verify(max_n: usize, property: PropertyArg, format: Format) -> CmdResult {
    if max_n < 6 {
        return Err(Exit(
            EXIT_USAGE,
            format!("--max-n must be at least 6, got {max_n}"),
        ));
    }
    let report = verify_range(6, max_n, &property.properties())?;
    let out = match format {
        Format::Json => report.to_json() + "\n",
        Format::Ascii | Format::Csv => report.render_text(),
    };
    Ok((out, if report.passed() { 0 } else { EXIT_FAILURES }))
}

fn cmd_search(path: &PathBuf, triangulations_only: bool, format: Format) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Exit(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    let fixture = FriezeFixture::from_json(&text)?;
    let rule = if triangulations_only {
        DiamondRule::Unimodular
    } else {
        DiamondRule::Generalised
    };
    fixture.validate(rule)?;
    let matches = search_fixture(&fixture, triangulations_only)?;
    let out = match format {
        Format::Json => {
            let list: Vec<String> = matches.iter().map(|d| d.to_string()).collect();
            json!({ "n": fixture.n, "matches": list }).to_string() + "\n"
        }
        Format::Ascii | Format::Csv => {
            let mut out = String::new();
            for d in &matches {
                let _ = writeln!(out, "{d}");
            }
            let _ = writeln!(out, "{} matches", matches.len());
            out
        }
    };
    Ok((out, if matches.is_empty() { EXIT_FAILURES } else { 0 }))
}

fn cmd_enum(
    rank: usize,
    what: What,
    count_only: bool,
    sample: Option<usize>,
    seed: u64,
) -> CmdResult {
    // enumeration makes sense for any polygon, not only category-sized ones
    let n = PolygonSize::new(rank + 3)?;
    let list: Vec<Dissection> = match sample {
        Some(k) => (0..k as u64)
            .map(|t| random_dissection(n, seed.wrapping_add(t)))
            .collect(),
        None => match what {
            What::Dissections => enumerate_dissections(n),
            What::Triangulations => enumerate_triangulations(n),
        },
    };
    if count_only {
        return Ok((format!("{}\n", list.len()), 0));
    }
    let mut out = String::new();
    for d in &list {
        let _ = writeln!(out, "{d}");
    }
    Ok((out, 0))
}

fn cmd_mesh(rank: usize, text: &str, format: Format) -> CmdResult {
    let d = parse_dissection(rank, text)?;
    let objects = all_ind_objects(d.polygon())?;
    let mut rows = Vec::with_capacity(objects.len());
    for c in objects {
        let t = c.ar_triangle();
        let start = rho_diagonal(&d, t.start.diagonal());
        let end = rho_diagonal(&d, c.diagonal());
        let middle = rho(&d, &t.middle);
        let difference = start as i128 * end as i128 - middle as i128;
        if difference != 0 && difference != 1 {
            return Err(Error::FriezeViolation {
                diagonal: c.to_string(),
                difference,
            }
            .into());
        }
        rows.push((c, start, end, middle, difference, mesh_is_split(&d, c)));
    }
    let out = match format {
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|(c, s, e, m, diff, split)| {
                    json!({
                        "i": c.diagonal().a(), "j": c.diagonal().b(),
                        "rho_tau_c": s, "rho_c": e, "rho_middle": m,
                        "difference": diff, "split": split,
                    })
                })
                .collect();
            serde_json::Value::Array(list).to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("i,j,rho_tau_c,rho_c,rho_middle,difference,split\n");
            for (c, s, e, m, diff, split) in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{s},{e},{m},{diff},{split}",
                    c.diagonal().a(),
                    c.diagonal().b()
                );
            }
            out
        }
        Format::Ascii => {
            let mut out = format!(
                "{:>7} {:>9} {:>7} {:>10} {:>10} {:>5}\n",
                "(i,j)", "rho(tau c)", "rho(c)", "rho(mid)", "difference", "split"
            );
            for (c, s, e, m, diff, split) in &rows {
                let _ = writeln!(
                    out,
                    "{:>7} {s:>9} {e:>7} {m:>10} {diff:>10} {split:>5}",
                    format!("({},{})", c.diagonal().a(), c.diagonal().b())
                );
            }
            out
        }
    };
    Ok((out, 0))
}

fn run(cli: Cli) -> CmdResult {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Exit(EXIT_USAGE, e.to_string()))?;
    }
    match cli.command {
        Command::Frieze {
            n,
            dissection,
            method,
            format,
        } => cmd_frieze(n, &dissection, method, format),
        Command::Verify {
            max_n,
            property,
            format,
        } => cmd_verify(max_n, property, format),
        Command::Search {
            fixture,
            triangulations_only,
            format,
        } => cmd_search(&fixture, triangulations_only, format),
        Command::Enum {
            n,
            what,
            count_only,
            sample,
            seed,
        } => cmd_enum(n, what, count_only, sample, seed),
        Command::Mesh {
            n,
            dissection,
            format,
        } => cmd_mesh(n, &dissection, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Exit(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
