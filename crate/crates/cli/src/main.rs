use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rescomp::parser::parse_session_with;
use rescomp::session::{emit_report, run_session, OutputFormat, SessionOptions};
use rescomp::MonomialOrder;

/// Run a rescomp session script: resolutions, Koszul complexes, lifts and reports.
#[derive(Parser, Debug)]
#[command(name = "rescomp", version)]
struct Cli {
    /// Session file, or `-` for standard input.
    session: PathBuf,

    /// Monomial order: lex, grevlex, or wgrevlex:w1,w2,...
    #[arg(long, default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,

    /// Format written to standard output.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Check exactness of the target before every lift.
    #[arg(long)]
    check: bool,

    /// Also write the JSON document to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.parse::<MonomialOrder>().map_err(|e| e.to_string())
}

fn read_source(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let src = match read_source(&cli.session) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("rescomp: cannot read {}: {e}", cli.session.display());
            return ExitCode::from(1);
        }
    };
    let commands = match parse_session_with(&src, cli.order.clone()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}:{e}", cli.session.display());
            return ExitCode::from(1);
        }
    };
    let options = SessionOptions { check: cli.check };
    let (run, error) = match run_session(&commands, options) {
        Ok(run) => (run, None),
        Err(f) => (f.partial, Some(f.error)),
    };
    let format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(emit_report(&run, None, format).as_bytes());
    if let Some(path) = &cli.out {
        let doc = emit_report(&run, error.as_ref(), OutputFormat::Json);
        if let Err(e) = fs::write(path, doc) {
            eprintln!("rescomp: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    match error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("{}: {e}", cli.session.display());
            ExitCode::from(2)
        }
    }
}
