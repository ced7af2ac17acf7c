use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polymix::analyzer::{Analyzer, DEFAULT_ELEMENT_CAP};
use polymix::coset::DEFAULT_COSET_BUDGET;
use polymix::mixer::Mixer;
use polymix::oracle::DEFAULT_MAX_FLAGS;
use polymix::parse::parse_expression;
use polymix::presentation::SchlafliSymbol;
use polymix::report::{build_report, Report};
use polymix::tables::{verify_tables, RowStatus, TableKind};
use polymix::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(name = "polymix", version, about = "Mixes of the regular convex polytopes")]
struct Cli {
    /// Coset limit for each enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_BUDGET)]
    budget_cosets: usize,
    /// Largest subgroup the intersection fallback will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    budget_elements: usize,
    /// Largest flag graph the oracle will build.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FLAGS)]
    max_flags: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Polyhedra,
    Rank4,
    Rankn,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Type, face counts and polytopality of a mix such as `{3,5}*{5,3}` or `T5*B5`.
    Report {
        expression: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Cross-check against the face-lattice oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Recompute a reference table and diff it cell by cell.
    Verify {
        #[arg(value_enum)]
        table: Table,
        /// Highest rank for the rank-n closed forms.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Order of the comix of two polytopes and the size identity.
    Comix { first: String, second: String },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::RankMismatch(..)
        | Error::NotConvexSeed(_)
        | Error::BadSchlafliEntry(_)
        | Error::EmptySymbol => EXIT_PARSE,
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::TooLarge { .. } => EXIT_UNDECIDED,
        _ => EXIT_MISMATCH,
    }
}

fn report(analyzer: &Analyzer, text: &str, format: Format, oracle: bool, max_flags: usize) -> Result<u8, Error> {
    let expr = parse_expression(text)?;
    let r = build_report(analyzer, &expr, oracle, max_flags)?;
    match format {
        Format::Json => println!("{}", r.to_json()),
        Format::Csv => println!("{}\n{}", Report::csv_header(expr.rank()), r.csv_row()),
        Format::Md => println!("{}\n{}", Report::markdown_header(expr.rank()), r.markdown_row()),
    }
    if r.oracle_agrees() == Some(false) {
        eprintln!("oracle disagrees with the analysis");
        return Ok(EXIT_MISMATCH);
    }
    Ok(if r.polytopal == "?" { EXIT_UNDECIDED } else { 0 })
}

fn verify(analyzer: &Analyzer, table: Table, max_n: usize) -> u8 {
    let kinds: &[TableKind] = match table {
        Table::Polyhedra => &[TableKind::Polyhedra],
        Table::Rank4 => &[TableKind::Rank4],
        Table::Rankn => &[TableKind::RankN],
        Table::All => &[TableKind::Polyhedra, TableKind::Rank4, TableKind::RankN],
    };
    let mut code = 0;
    for &kind in kinds {
        let start = Instant::now();
        let rows = verify_tables(analyzer, kind, max_n);
        for row in &rows {
            println!("{row}");
            let row_code = match row.status {
                RowStatus::Match => 0,
                RowStatus::Mismatch(_) | RowStatus::Failed(_) => EXIT_MISMATCH,
                RowStatus::Undecided | RowStatus::Budget(_) => EXIT_UNDECIDED,
            };
            code = match (code, row_code) {
                (EXIT_MISMATCH, _) | (_, EXIT_MISMATCH) => EXIT_MISMATCH,
                (a, b) => a.max(b),
            };
        }
        let matched = rows.iter().filter(|r| r.status == RowStatus::Match).count();
        println!("{kind:?}: {matched}/{} rows match in {:.2?}", rows.len(), start.elapsed());
    }
    code
}

fn comix(analyzer: &Analyzer, first: &str, second: &str) -> Result<u8, Error> {
    let a: SchlafliSymbol = first.parse()?;
    let b: SchlafliSymbol = second.parse()?;
    let mixer = analyzer.mixer();
    let comix = mixer.comix_order(&a, &b)?;
    let mix = mixer.mix_order(&[a.clone(), b.clone()])?;
    let holds = mixer.size_identity_check(&a, &b)?;
    println!("|{a} comix {b}| = {comix}");
    println!("|{a} mix {b}| = {mix}");
    println!("size identity: {}", if holds { "holds" } else { "FAILS" });
    Ok(if holds { 0 } else { EXIT_MISMATCH })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let analyzer = Analyzer::new(Mixer::new(cli.budget_cosets), cli.budget_elements);
    let result = match &cli.command {
        Command::Report {
            expression,
            format,
            oracle,
        } => report(&analyzer, expression, *format, *oracle, cli.max_flags),
        Command::Verify { table, max_n } => Ok(verify(&analyzer, *table, *max_n)),
        Command::Comix { first, second } => comix(&analyzer, first, second),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
