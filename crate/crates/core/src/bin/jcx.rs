//! Command-line front end. Exit codes: 0 ok, 1 violation or domain error,
//! 2 unreadable or malformed input, 3 unsupported configuration.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jordan_cells::export::{complex_off, trace_snapshots};
use jordan_cells::flatness::{build_collar, is_locally_flat};
use jordan_cells::format::{parse_document, parse_trace, write_document, write_separation, write_trace, Document};
use jordan_cells::generators::{equator, figure_case, torus_meridian, Family};
use jordan_cells::separation::{components_of_complement, contract_to_cell, surface_cells, verify_contraction_trace};
use jordan_cells::{CellChain, Error};

#[derive(Parser)]
#[command(name = "jcx", version, about = "Checks, separation and contraction on discrete cell complexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Regularity and closed-manifold checks.
    Check { path: PathBuf },
    /// Local flatness of a named chain.
    Flat {
        path: PathBuf,
        #[arg(long)]
        chain: String,
        /// Also print the collar when the chain is flat.
        #[arg(long)]
        collar: bool,
    },
    /// Components of the complement of a named closed chain.
    Separate {
        path: PathBuf,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        warn_only_flatness: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Contracts one component onto a single top cell and writes the trace.
    Contract {
        path: PathBuf,
        #[arg(long)]
        chain: String,
        /// Component index in the separation report.
        #[arg(long, default_value_t = 0)]
        component: usize,
        /// Seed top cell; defaults to the smallest cell of the component on s.
        #[arg(long)]
        seed: Option<usize>,
        /// Largest number of removals allowed.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        warn_only_flatness: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// OFF snapshots and step logs for a complex or a contraction trace.
    Export {
        /// A complex document, or a trace when --complex is given.
        input: PathBuf,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, default_value = "off")]
        format: String,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Writes a generated complex with its canonical chains.
    Generate {
        /// simplex N | cube N | octahedron | torus M N | strip L | grid W H | trigrid W H | figure ID
        family: String,
        params: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::Unsupported { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Failure> {
    Ok(parse_document(&read(path)?)?)
}

fn write_out(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| fail(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn named_chain<'a>(doc: &'a Document, name: &str) -> Result<&'a CellChain, Failure> {
    doc.chain(name).ok_or_else(|| fail(1, format!("no chain named {name:?}")))
}

fn check(path: &Path) -> Outcome {
    let doc = load(path)?;
    let space = &doc.space;
    let k = space.top_dim();
    let report = space.check_regular(k);
    println!("dim={k} vertices={} edges={}", space.num_vertices(), space.num_cells(1));
    for v in &report.violations {
        println!("violation {v:?}");
    }
    let clauses: Vec<String> = report.failed_clauses().iter().map(|c| c.to_string()).collect();
    println!("regular={} failed_clauses={}", report.passed(), clauses.join(","));
    if !report.passed() {
        return Ok(1);
    }
    let closed = space.is_closed_manifold()?;
    println!("closed_manifold={closed}");
    if k == 2 {
        println!("oriented={}", space.is_oriented() == Some(true));
    }
    Ok(0)
}

fn flat(path: &Path, chain: &str, collar: bool) -> Outcome {
    let doc = load(path)?;
    let c = named_chain(&doc, chain)?;
    let report = is_locally_flat(&doc.space, c)?;
    println!("flat={}", report.is_flat());
    for v in &report.violations {
        let (p, q) = v.pair();
        println!("violation pair={p},{q} {v:?}");
    }
    if !report.is_flat() {
        return Ok(1);
    }
    if collar {
        let cert = build_collar(&doc.space, c)?;
        for (i, sheet) in cert.sheets.iter().enumerate() {
            let ids: Vec<String> = sheet.iter().map(|v| v.to_string()).collect();
            println!("sheet{}={}", i + 1, ids.join(" "));
        }
    }
    Ok(0)
}

fn separate(path: &Path, chain: &str, warn_only: bool, output: &Option<PathBuf>) -> Outcome {
    let doc = load(path)?;
    let c = named_chain(&doc, chain)?;
    let report = components_of_complement(&doc.space, c, warn_only)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    write_out(output, &write_separation(&report))?;
    Ok(if report.separates() { 0 } else { 1 })
}

struct ContractArgs<'a> {
    chain: &'a str,
    component: usize,
    seed: Option<usize>,
    budget: Option<usize>,
    warn_only: bool,
}

fn contract(path: &Path, args: ContractArgs, output: &Option<PathBuf>) -> Outcome {
    let doc = load(path)?;
    let space = &doc.space;
    let c = named_chain(&doc, args.chain)?;
    let report = components_of_complement(space, c, args.warn_only)?;
    if !report.separates() {
        return Err(fail(1, format!("s does not separate: component sizes {:?}", report.sizes())));
    }
    let comp = report
        .components
        .get(args.component)
        .ok_or_else(|| fail(1, format!("no component {}", args.component)))?;
    let s = surface_cells(space, c)?;
    let k = space.top_dim();
    let seed = match args.seed {
        Some(x) => x,
        None => *comp
            .iter()
            .find(|&&x| space.cells(k)[x].boundary().iter().any(|f| s.contains(f)))
            .ok_or_else(|| fail(1, "component has no cell on s"))?,
    };
    if let Some(b) = args.budget {
        if comp.len() > b + 1 {
            return Err(Error::BudgetExhausted { budget: b, state: format!("component has {} cells", comp.len()) }.into());
        }
    }
    let trace = contract_to_cell(space, comp, &s, seed)?;
    let text = write_trace(&trace);
    let reread = parse_trace(&text)?;
    let problems = verify_contraction_trace(space, &reread);
    if reread != trace || !problems.is_empty() {
        return Err(fail(1, format!("emitted trace failed verification: {problems:?}")));
    }
    write_out(output, &text)?;
    eprintln!("verified {} removals onto seed {seed}", trace.len());
    Ok(0)
}

fn export(input: &Path, complex: &Option<PathBuf>, format: &str, out: &Path) -> Outcome {
    if format != "off" && format != "log" {
        return Err(fail(1, format!("unknown format {format:?}, expected off or log")));
    }
    fs::create_dir_all(out).map_err(|e| fail(1, format!("{}: {e}", out.display())))?;
    let put = |name: &str, text: &str| fs::write(out.join(name), text).map_err(|e| fail(1, format!("{name}: {e}")));
    match complex {
        None => {
            let doc = load(input)?;
            if format == "log" {
                return Err(fail(1, "a complex has no step log; use --format off"));
            }
            put("complex.off", &complex_off(&doc.space))?;
        }
        Some(cpath) => {
            let doc = load(cpath)?;
            let trace = parse_trace(&read(input)?)?;
            let problems = verify_contraction_trace(&doc.space, &trace);
            if !problems.is_empty() {
                return Err(fail(1, format!("invalid trace: {problems:?}")));
            }
            let (files, log) = trace_snapshots(&doc.space, &trace)?;
            if format == "off" {
                for (i, f) in files.iter().enumerate() {
                    put(&format!("step_{i:03}.off"), f)?;
                }
            }
            put("trace.log", &log)?;
        }
    }
    Ok(0)
}

fn generate(family: &str, params: &[String], output: &Option<PathBuf>) -> Outcome {
    let num = |i: usize| -> Result<usize, Failure> {
        params
            .get(i)
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| fail(1, format!("{family} needs numeric parameter {}", i + 1)))
    };
    let fam = match family {
        "simplex" => Family::SimplexBoundary(num(0)?),
        "cube" => Family::CubeBoundary(num(0)?),
        "octahedron" => Family::Octahedron,
        "torus" => Family::TorusGrid(num(0)?, num(1)?),
        "strip" => Family::Strip(num(0)?),
        "grid" => Family::Grid { width: num(0)?, height: num(1)?, triangulated: false },
        "trigrid" => Family::Grid { width: num(0)?, height: num(1)?, triangulated: true },
        "figure" => {
            let id = params.first().ok_or_else(|| fail(1, "figure needs an id"))?;
            let case = figure_case(id)?;
            let doc = Document::new(case.space).with_chain("curve", case.curve);
            write_out(output, &write_document(&doc)?)?;
            return Ok(0);
        }
        other => return Err(fail(1, format!("unknown family {other:?}"))),
    };
    let space = fam.generate()?;
    let mut doc = Document::new(space);
    if let Family::TorusGrid(m, n) = fam {
        doc = doc.with_chain("meridian", torus_meridian(m, n, 0));
    } else if let Ok(eq) = equator(&doc.space, &fam) {
        doc = doc.with_chain("equator", eq);
    }
    write_out(output, &write_document(&doc)?)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Check { path } => check(path),
        Cmd::Flat { path, chain, collar } => flat(path, chain, *collar),
        Cmd::Separate { path, chain, warn_only_flatness, output } => separate(path, chain, *warn_only_flatness, output),
        Cmd::Contract { path, chain, component, seed, budget, warn_only_flatness, output } => contract(
            path,
            ContractArgs { chain, component: *component, seed: *seed, budget: *budget, warn_only: *warn_only_flatness },
            output,
        ),
        Cmd::Export { input, complex, format, out } => export(input, complex, format, out),
        Cmd::Generate { family, params, output } => generate(family, params, output),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
