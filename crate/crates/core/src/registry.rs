//! Solver registry and command-line synthesis.
//!
//! Solvers are described declaratively by a [`SolverDescriptor`]: a name, a
//! one-line description, the list of parameters it accepts and a factory.
//! Each parameter is scoped either to construction ([`Scope::Init`]) or to the
//! `sample` call ([`Scope::Sample`]). The registry turns the descriptors into
//! a [`CliSchema`] with one subcommand per solver, and routes parsed values
//! back to the right hook in [`Registry::dispatch`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{BinaryQuadraticModel, Vartype};
use crate::sampleset::SampleSet;
use crate::serio::format_real;

/// Parameter names owned by the framework; solvers may not redeclare them.
pub const RESERVED_ARGS: [&str; 4] = ["help", "input", "output", "vartype"];

const INPUT_HELP: &str =
    "Path of the input BQM file in COO format. If not specified, stdin is used.";
const OUTPUT_HELP: &str = "Path of the output file. If not specified, stdout is used.";
const VARTYPE_HELP: &str = "Variable type";
const HELP_HELP: &str = "show this help message and exit";
const MAX_HELP_POSITION: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub enum ArgKind {
    Integer,
    Real,
    Str,
    Choice(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArgValue {
    Integer(i64),
    Real(f64),
    Str(String),
}

impl fmt::Display for ArgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgValue::Integer(v) => write!(f, "{v}"),
            ArgValue::Real(v) => f.write_str(&format_real(*v)),
            ArgValue::Str(v) => f.write_str(v),
        }
    }
}

impl ArgKind {
    pub fn accepts(&self, value: &ArgValue) -> bool {
        match (self, value) {
            (ArgKind::Integer, ArgValue::Integer(_)) => true,
            (ArgKind::Real, ArgValue::Real(v)) => v.is_finite(),
            (ArgKind::Str, ArgValue::Str(_)) => true,
            (ArgKind::Choice(options), ArgValue::Str(s)) => options.contains(s),
            _ => false,
        }
    }

    /// Parses a command-line token as a value of this kind.
    pub fn parse(&self, token: &str) -> std::result::Result<ArgValue, String> {
        match self {
            ArgKind::Integer => token
                .parse()
                .map(ArgValue::Integer)
                .map_err(|_| format!("invalid int value: '{token}'")),
            ArgKind::Real => match token.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(ArgValue::Real(v)),
                _ => Err(format!("invalid float value: '{token}'")),
            },
            ArgKind::Str => Ok(ArgValue::Str(token.to_string())),
            ArgKind::Choice(options) => {
                if options.iter().any(|o| o == token) {
                    Ok(ArgValue::Str(token.to_string()))
                } else {
                    Err(format!(
                        "invalid choice: '{token}' (choose from {})",
                        quoted_list(options)
                    ))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Init,
    Sample,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArgSpec {
    pub name: String,
    pub kind: ArgKind,
    pub default: Option<ArgValue>,
    pub help: String,
    pub scope: Scope,
    /// An argument without a default is required unless marked optional.
    pub required: bool,
}

impl ArgSpec {
    pub fn new(name: &str, kind: ArgKind, scope: Scope, help: &str) -> Self {
        ArgSpec {
            name: name.to_string(),
            kind,
            default: None,
            help: help.to_string(),
            scope,
            required: true,
        }
    }

    pub fn integer(name: &str, scope: Scope, help: &str) -> Self {
        Self::new(name, ArgKind::Integer, scope, help)
    }

    pub fn real(name: &str, scope: Scope, help: &str) -> Self {
        Self::new(name, ArgKind::Real, scope, help)
    }

    pub fn with_default(mut self, value: ArgValue) -> Self {
        self.default = Some(value);
        self.required = false;
        self
    }

    /// No default, but may be omitted; the hook sees no value.
    pub fn optional(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn flag(&self) -> String {
        format!("--{}", self.name)
    }

    pub fn metavar(&self) -> String {
        match &self.kind {
            ArgKind::Choice(options) => format!("{{{}}}", options.join(",")),
            _ => self.name.to_uppercase(),
        }
    }

    /// Help text as displayed, with the default appended.
    pub fn display_help(&self) -> String {
        match &self.default {
            Some(d) => format!("{} (default {d})", self.help),
            None => self.help.clone(),
        }
    }
}

/// Named argument values, as delivered to a solver's hooks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ArgValues(BTreeMap<String, ArgValue>);

impl ArgValues {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: ArgValue) -> &mut Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn with(mut self, name: &str, value: ArgValue) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&ArgValue> {
        self.0.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn integer(&self, name: &str) -> Result<Option<i64>> {
        match self.0.get(name) {
            None => Ok(None),
            Some(ArgValue::Integer(v)) => Ok(Some(*v)),
            Some(other) => Err(Error::Parameter(format!(
                "{name} must be an integer, got {other}"
            ))),
        }
    }

    /// Integers are widened to reals.
    pub fn real(&self, name: &str) -> Result<Option<f64>> {
        match self.0.get(name) {
            None => Ok(None),
            Some(ArgValue::Real(v)) => Ok(Some(*v)),
            Some(ArgValue::Integer(v)) => Ok(Some(*v as f64)),
            Some(other) => Err(Error::Parameter(format!(
                "{name} must be a real number, got {other}"
            ))),
        }
    }

    pub fn string(&self, name: &str) -> Result<Option<&str>> {
        match self.0.get(name) {
            None => Ok(None),
            Some(ArgValue::Str(v)) => Ok(Some(v)),
            Some(other) => Err(Error::Parameter(format!(
                "{name} must be a string, got {other}"
            ))),
        }
    }

    /// Interprets an integer argument as a seed. Negative values are
    /// reinterpreted as their two's-complement bit pattern.
    pub fn seed(&self, name: &str) -> Result<Option<u64>> {
        Ok(self.integer(name)?.map(|v| v as u64))
    }
}

pub trait Solver {
    fn sample(&mut self, bqm: &BinaryQuadraticModel, args: &ArgValues) -> Result<SampleSet>;
}

pub type SolverFactory = Box<dyn Fn(&ArgValues) -> Result<Box<dyn Solver>> + Send + Sync>;

pub struct SolverDescriptor {
    pub name: String,
    pub description: String,
    pub args: Vec<ArgSpec>,
    construct: SolverFactory,
}

impl fmt::Debug for SolverDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolverDescriptor")
            .field("name", &self.name)
            .field("description", &self.description)
            .field("args", &self.args)
            .finish_non_exhaustive()
    }
}

impl SolverDescriptor {
    pub fn new<F>(name: &str, description: &str, construct: F) -> Self
    where
        F: Fn(&ArgValues) -> Result<Box<dyn Solver>> + Send + Sync + 'static,
    {
        SolverDescriptor {
            name: name.to_string(),
            description: description.to_string(),
            args: Vec::new(),
            construct: Box::new(construct),
        }
    }

    pub fn arg(mut self, spec: ArgSpec) -> Self {
        self.args.push(spec);
        self
    }

    pub fn construct(&self, init: &ArgValues) -> Result<Box<dyn Solver>> {
        (self.construct)(init)
    }

    fn validate(&self) -> Result<()> {
        if !is_identifier(&self.name) {
            return Err(Error::Domain(format!(
                "invalid solver name {:?}",
                self.name
            )));
        }
        for (i, spec) in self.args.iter().enumerate() {
            if !is_identifier(&spec.name) || RESERVED_ARGS.contains(&spec.name.as_str()) {
                return Err(Error::Domain(format!(
                    "solver {:?}: invalid argument name {:?}",
                    self.name, spec.name
                )));
            }
            if self.args[..i].iter().any(|s| s.name == spec.name) {
                return Err(Error::DuplicateArgument {
                    solver: self.name.clone(),
                    arg: spec.name.clone(),
                });
            }
            if let Some(d) = &spec.default {
                if !spec.kind.accepts(d) {
                    return Err(Error::Domain(format!(
                        "solver {:?}: default {d} is not valid for argument {:?}",
                        self.name, spec.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Splits `explicit` plus defaults into (init, sample) values.
    pub fn route(&self, explicit: &ArgValues) -> Result<(ArgValues, ArgValues)> {
        if let Some(unknown) = explicit
            .names()
            .find(|n| !self.args.iter().any(|s| s.name == *n))
        {
            return Err(Error::Usage(format!(
                "solver {}: unrecognized argument --{unknown}",
                self.name
            )));
        }
        let mut init = ArgValues::new();
        let mut sample = ArgValues::new();
        for spec in &self.args {
            let value = explicit.get(&spec.name).or(spec.default.as_ref());
            let Some(value) = value else {
                if spec.required {
                    return Err(Error::Usage(format!(
                        "solver {}: missing required argument {}",
                        self.name,
                        spec.flag()
                    )));
                }
                continue;
            };
            if !spec.kind.accepts(value) {
                return Err(Error::Usage(format!(
                    "argument {}: invalid value {value}",
                    spec.flag()
                )));
            }
            match spec.scope {
                Scope::Init => init.set(&spec.name, value.clone()),
                Scope::Sample => sample.set(&spec.name, value.clone()),
            };
        }
        Ok((init, sample))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn quoted_list(items: &[String]) -> String {
    items
        .iter()
        .map(|s| format!("'{s}'"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// A fully parsed solver invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub solver: String,
    pub input: Option<String>,
    pub output: Option<String>,
    pub vartype: Vartype,
    /// Only the solver arguments given explicitly; defaults are applied by
    /// [`Registry::dispatch`].
    pub args: ArgValues,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    TopHelp,
    SolverHelp(String),
    Run(Invocation),
}

/// A command-line parse failure, with the usage line to show alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub usage: String,
    pub prog: String,
    pub message: String,
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\n{}: error: {}", self.usage, self.prog, self.message)
    }
}

impl std::error::Error for UsageError {}

#[derive(Default)]
pub struct Registry {
    solvers: Vec<SolverDescriptor>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, descriptor: SolverDescriptor) -> Result<()> {
        if self.get(&descriptor.name).is_some() {
            return Err(Error::DuplicateSolver(descriptor.name));
        }
        descriptor.validate()?;
        self.solvers.push(descriptor);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&SolverDescriptor> {
        self.solvers.iter().find(|d| d.name == name)
    }

    /// Names in registration order.
    pub fn list_solvers(&self) -> Vec<&str> {
        self.solvers.iter().map(|d| d.name.as_str()).collect()
    }

    pub fn build_cli(&self, prog: &str) -> CliSchema {
        CliSchema {
            prog: prog.to_string(),
            subcommands: self
                .solvers
                .iter()
                .map(|d| Subcommand {
                    name: d.name.clone(),
                    description: d.description.clone(),
                    args: d.args.clone(),
                })
                .collect(),
        }
    }

    /// Builds the named solver from its init-scoped values and samples `bqm`
    /// with its sample-scoped values.
    pub fn dispatch(
        &self,
        solver: &str,
        args: &ArgValues,
        bqm: &BinaryQuadraticModel,
    ) -> Result<SampleSet> {
        let descriptor = self.get(solver).ok_or_else(|| {
            Error::Usage(format!(
                "unknown solver '{solver}' (choose from {})",
                quoted_list(
                    &self
                        .list_solvers()
                        .into_iter()
                        .map(String::from)
                        .collect::<Vec<_>>()
                )
            ))
        })?;
        let (init, sample) = descriptor.route(args)?;
        descriptor.construct(&init)?.sample(bqm, &sample)
    }

    pub fn run(&self, invocation: &Invocation, bqm: &BinaryQuadraticModel) -> Result<SampleSet> {
        self.dispatch(&invocation.solver, &invocation.args, bqm)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subcommand {
    pub name: String,
    pub description: String,
    pub args: Vec<ArgSpec>,
}

/// The synthesized command line: one subcommand per registered solver, each
/// carrying the common `input`, `--output` and `--vartype` parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CliSchema {
    pub prog: String,
    pub subcommands: Vec<Subcommand>,
}

impl CliSchema {
    pub fn subcommand(&self, name: &str) -> Option<&Subcommand> {
        self.subcommands.iter().find(|s| s.name == name)
    }

    fn choices(&self) -> String {
        let names: Vec<&str> = self.subcommands.iter().map(|s| s.name.as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn top_usage(&self) -> String {
        format!("usage: {} [-h] {} ...", self.prog, self.choices())
    }

    pub fn top_help(&self) -> String {
        let choices = self.choices();
        let entries = [("-h, --help".to_string(), HELP_HELP.to_string())];
        let col = help_column(
            entries
                .iter()
                .map(|e| e.0.as_str())
                .chain([choices.as_str()]),
        );
        let mut out = self.top_usage();
        out.push_str("\n\noptional arguments:\n");
        for (inv, help) in &entries {
            push_entry(&mut out, inv, help, col);
        }
        out.push_str("\nSolvers:\n  ");
        out.push_str(&choices);
        out.push('\n');
        out
    }

    pub fn solver_usage(&self, sub: &Subcommand) -> String {
        let mut usage = format!(
            "usage: {} {} [-h] [--output OUTPUT] --vartype {{SPIN,BINARY}}",
            self.prog, sub.name
        );
        for spec in &sub.args {
            let part = format!("{} {}", spec.flag(), spec.metavar());
            if spec.required {
                usage.push_str(&format!(" {part}"));
            } else {
                usage.push_str(&format!(" [{part}]"));
            }
        }
        usage.push_str(" [input]");
        usage
    }

    pub fn solver_help(&self, name: &str) -> Option<String> {
        let sub = self.subcommand(name)?;
        let mut options: Vec<(String, String)> = vec![
            ("-h, --help".into(), HELP_HELP.into()),
            ("--output OUTPUT".into(), OUTPUT_HELP.into()),
            ("--vartype {SPIN,BINARY}".into(), VARTYPE_HELP.into()),
        ];
        options.extend(
            sub.args
                .iter()
                .map(|s| (format!("{} {}", s.flag(), s.metavar()), s.display_help())),
        );
        let col = help_column(
            ["input"]
                .into_iter()
                .chain(options.iter().map(|o| o.0.as_str())),
        );

        let mut out = self.solver_usage(sub);
        out.push_str("\n\n");
        if !sub.description.is_empty() {
            out.push_str(&sub.description);
            out.push_str("\n\n");
        }
        out.push_str("positional arguments:\n");
        push_entry(&mut out, "input", INPUT_HELP, col);
        out.push_str("\noptional arguments:\n");
        for (inv, help) in &options {
            push_entry(&mut out, inv, help, col);
        }
        Some(out)
    }

    /// Parses the arguments that follow the program name.
    pub fn parse<S: AsRef<str>>(&self, argv: &[S]) -> std::result::Result<Command, UsageError> {
        let top_error = |message: String| UsageError {
            usage: self.top_usage(),
            prog: self.prog.clone(),
            message,
        };
        let Some(first) = argv.first().map(AsRef::as_ref) else {
            return Err(top_error(
                "the following arguments are required: solver".into(),
            ));
        };
        if first == "-h" || first == "--help" {
            return Ok(Command::TopHelp);
        }
        let Some(sub) = self.subcommand(first) else {
            if first.starts_with('-') {
                return Err(top_error(format!("unrecognized arguments: {first}")));
            }
            let names: Vec<String> = self.subcommands.iter().map(|s| s.name.clone()).collect();
            return Err(top_error(format!(
                "argument solver: invalid choice: '{first}' (choose from {})",
                quoted_list(&names)
            )));
        };
        self.parse_subcommand(sub, &argv[1..])
    }

    fn parse_subcommand<S: AsRef<str>>(
        &self,
        sub: &Subcommand,
        rest: &[S],
    ) -> std::result::Result<Command, UsageError> {
        let error = |message: String| UsageError {
            usage: self.solver_usage(sub),
            prog: format!("{} {}", self.prog, sub.name),
            message,
        };

        let mut input = None;
        let mut output = None;
        let mut vartype = None;
        let mut args = ArgValues::new();
        let mut positional_only = false;
        let mut tokens = rest.iter().map(AsRef::as_ref);

        while let Some(token) = tokens.next() {
            if positional_only || !token.starts_with('-') || token == "-" || is_number(token) {
                if input.is_some() {
                    return Err(error(format!("unrecognized arguments: {token}")));
                }
                input = Some(token.to_string());
                continue;
            }
            if token == "--" {
                positional_only = true;
                continue;
            }
            if token == "-h" || token == "--help" {
                return Ok(Command::SolverHelp(sub.name.clone()));
            }
            let Some(long) = token.strip_prefix("--") else {
                return Err(error(format!("unrecognized arguments: {token}")));
            };
            let (name, inline) = match long.split_once('=') {
                Some((n, v)) => (n, Some(v)),
                None => (long, None),
            };
            let spec = sub.args.iter().find(|s| s.name == name);
            if spec.is_none() && !["output", "vartype"].contains(&name) {
                return Err(error(format!("unrecognized arguments: {token}")));
            }
            let value = match inline {
                Some(v) => v,
                None => tokens
                    .next()
                    .ok_or_else(|| error(format!("argument --{name}: expected one argument")))?,
            };
            match (name, spec) {
                ("output", _) => output = Some(value.to_string()),
                ("vartype", _) => {
                    vartype = Some(value.parse::<Vartype>().map_err(|_| {
                        error(format!(
                            "argument --vartype: invalid choice: '{value}' (choose from 'SPIN', 'BINARY')"
                        ))
                    })?)
                }
                (_, Some(spec)) => {
                    let parsed = spec
                        .kind
                        .parse(value)
                        .map_err(|m| error(format!("argument {}: {m}", spec.flag())))?;
                    args.set(&spec.name, parsed);
                }
                _ => unreachable!(),
            }
        }

        let mut missing: Vec<String> = Vec::new();
        if vartype.is_none() {
            missing.push("--vartype".into());
        }
        missing.extend(
            sub.args
                .iter()
                .filter(|s| s.required && !args.contains(&s.name))
                .map(ArgSpec::flag),
        );
        if !missing.is_empty() {
            return Err(error(format!(
                "the following arguments are required: {}",
                missing.join(", ")
            )));
        }

        Ok(Command::Run(Invocation {
            solver: sub.name.clone(),
            input,
            output,
            vartype: vartype.expect("checked above"),
            args,
        }))
    }
}

fn is_number(token: &str) -> bool {
    token.parse::<f64>().is_ok()
}

fn help_column<'a>(invocations: impl IntoIterator<Item = &'a str>) -> usize {
    let widest = invocations
        .into_iter()
        .map(|s| s.len() + 2)
        .max()
        .unwrap_or(0);
    (widest + 2).min(MAX_HELP_POSITION)
}

fn push_entry(out: &mut String, invocation: &str, help: &str, col: usize) {
    let head = format!("  {invocation}");
    if head.len() + 2 <= col {
        out.push_str(&format!("{head:<col$}{help}\n"));
    } else {
        out.push_str(&head);
        out.push('\n');
        out.push_str(&" ".repeat(col));
        out.push_str(help);
        out.push('\n');
    }
}
