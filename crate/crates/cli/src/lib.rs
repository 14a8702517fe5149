//! Command-line driver: parse arguments against the registry's synthesized
//! schema, read a COO problem, run the chosen solver and write CSV.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input (or
//! unwritable output), 3 solver rejected its parameters or the problem.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};

use spinsolve::{serio, BinaryQuadraticModel, Command, Error, Invocation, Registry};

pub const PROG: &str = "spinsolve";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// Runs one invocation against the bundled solvers. `argv` excludes the
/// program name.
pub fn run<S, I, O, E>(argv: &[S], stdin: I, stdout: O, stderr: E) -> i32
where
    S: AsRef<str>,
    I: BufRead,
    O: Write,
    E: Write,
{
    run_with(&spinsolve::default_registry(), argv, stdin, stdout, stderr)
}

pub fn run_with<S, I, O, E>(
    registry: &Registry,
    argv: &[S],
    stdin: I,
    mut stdout: O,
    mut stderr: E,
) -> i32
where
    S: AsRef<str>,
    I: BufRead,
    O: Write,
    E: Write,
{
    let schema = registry.build_cli(PROG);
    let invocation = match schema.parse(argv) {
        Ok(Command::TopHelp) => return emit(&mut stdout, &mut stderr, &schema.top_help()),
        Ok(Command::SolverHelp(name)) => {
            let help = schema.solver_help(&name).expect("parsed solver exists");
            return emit(&mut stdout, &mut stderr, &help);
        }
        Ok(Command::Run(invocation)) => invocation,
        Err(usage) => {
            let _ = writeln!(stderr, "{usage}");
            return EXIT_USAGE;
        }
    };

    match solve(registry, &invocation, stdin) {
        Ok(csv) => write_output(&invocation, &csv, &mut stdout, &mut stderr),
        Err(e) => {
            let _ = writeln!(stderr, "{PROG} {}: error: {e}", invocation.solver);
            exit_code(&e)
        }
    }
}

fn solve<I: BufRead>(
    registry: &Registry,
    invocation: &Invocation,
    stdin: I,
) -> spinsolve::Result<String> {
    let bqm = read_problem(invocation, stdin)?;
    let samples = registry.run(invocation, &bqm)?;
    Ok(serio::to_csv_string(&samples))
}

fn read_problem<I: BufRead>(
    invocation: &Invocation,
    stdin: I,
) -> spinsolve::Result<BinaryQuadraticModel> {
    match &invocation.input {
        Some(path) => {
            let file = File::open(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            serio::read_coo(BufReader::new(file), invocation.vartype)
        }
        None => serio::read_coo(stdin, invocation.vartype),
    }
}

fn write_output<O: Write, E: Write>(
    invocation: &Invocation,
    csv: &str,
    stdout: &mut O,
    stderr: &mut E,
) -> i32 {
    let result = match &invocation.output {
        Some(path) => std::fs::write(path, csv).map_err(|e| format!("{path}: {e}")),
        None => stdout
            .write_all(csv.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| e.to_string()),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(stderr, "{PROG}: error: cannot write output: {msg}");
            EXIT_INPUT
        }
    }
}

fn emit<O: Write, E: Write>(stdout: &mut O, stderr: &mut E, text: &str) -> i32 {
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{PROG}: error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Usage(_) => EXIT_USAGE,
        Error::Parse { .. } | Error::Io(_) => EXIT_INPUT,
        _ => EXIT_SOLVER,
    }
}
