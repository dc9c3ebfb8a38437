//! The `fintop` command line, as a library so that it can be driven in-process.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use fintop_core::algebra::{
    antipode, coproduct, dual_vector, join_spaces, parse_vector, sum_spaces, zeta_q,
    TensorDisplay, VectorDisplay,
};
use fintop_core::axioms::{run_suite, Suite};
use fintop_core::enumeration::{
    count_families_with, count_topologies_with, enumerate_family, for_each_topology, Family,
    Limits,
};
use fintop_core::homotopy::{core, euler_characteristic, order_complex, reduced_euler_characteristic};
use fintop_core::qsym::{eval_q, phi_q, QSymDisplay};
use fintop_core::{Error, FVector, FiniteSpace, ParseError, Preorder};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "fintop", version, about = "Finite topological spaces: Hopf algebra, homotopy and QSym tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical form of a preorder (`PRE n=.. rel=..`) or space (`FS ...`), one per line.
    Canon { input: Option<String> },
    /// Dual space, or dual of a linear combination.
    Dual { input: Option<String> },
    /// Disjoint sum X·Y.
    Product { x: String, y: String },
    /// Join X ≻ Y (every point of X below every point of Y).
    Join { x: String, y: String },
    /// Coproduct over open sets.
    Coproduct { input: Option<String> },
    /// Antipode (memoized recursion over the coproduct).
    Antipode { input: Option<String> },
    /// Image in QSym, optionally evaluated at a rational q.
    Phi {
        input: Option<String>,
        #[arg(long, value_name = "RATIONAL", allow_hyphen_values = true)]
        eval_q: Option<String>,
    },
    /// The character ζ_q.
    Zeta { input: Option<String> },
    /// Core (beat points removed from the T0 quotient).
    Core { input: Option<String> },
    /// Euler characteristic of the order complex.
    Euler {
        input: Option<String>,
        #[arg(long)]
        reduced: bool,
    },
    /// Facets of the order complex, one per line (1-based vertices).
    Complex { input: Option<String> },
    /// List topologies on [n] (PRE lines) or finite spaces of size n (FS lines).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "spaces")]
        kind: Kind,
        /// Print only the number of objects.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Run an identity suite; exits 1 if any check fails.
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Size bound (word length for the tensor suite).
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tables of t_n, f_n and (p_n, q_n, r_n).
    Counts {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        unsafe_large: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Topologies,
    Spaces,
    Connected,
    JoinIndec,
    Irreducible,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    Hopf,
    Infinitesimal,
    Tensor,
    Qsym,
    Homotopy,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        match self {
            SuiteArg::Hopf => Suite::Hopf,
            SuiteArg::Infinitesimal => Suite::Infinitesimal,
            SuiteArg::Tensor => Suite::Tensor,
            SuiteArg::Qsym => Suite::Qsym,
            SuiteArg::Homotopy => Suite::Homotopy,
        }
    }

    fn default_max_n(self) -> usize {
        match self {
            SuiteArg::Tensor => 5,
            SuiteArg::Homotopy => 6,
            _ => 4,
        }
    }
}

/// Parse and run `args` (including the program name). Returns the exit code:
/// 0 on success, 1 if a check failed, 2 on bad input.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(passed) => {
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Input lines: the argument if given (and not `-`), else stdin; blank lines skipped.
fn input_lines(input: Option<String>, stdin: &mut dyn Read) -> Result<Vec<(usize, String)>, CliError> {
    let text = match input {
        Some(s) if s != "-" => s,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .collect();
    if lines.is_empty() {
        return Err(CliError::Usage("no input".into()));
    }
    Ok(lines)
}

/// A space given as `FS ...` or `PRE ...`.
pub fn parse_space(s: &str) -> Result<FiniteSpace, ParseError> {
    let t = s.trim();
    if t.starts_with("PRE") {
        Ok(t.parse::<Preorder>()?.canonicalize())
    } else {
        t.parse()
    }
}

/// A linear combination, a bare `FS ...` or a `PRE ...`.
pub fn parse_input_vector(s: &str) -> Result<FVector, ParseError> {
    if s.trim().starts_with("PRE") {
        Ok(FVector::basis(parse_space(s)?))
    } else {
        parse_vector(s)
    }
}

fn at_line<T>(line: usize, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Parse(e.at_line(line)))
}

fn for_spaces(
    input: Option<String>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    mut f: impl FnMut(&FiniteSpace, &mut dyn Write) -> Result<(), CliError>,
) -> Result<bool, CliError> {
    for (line, text) in input_lines(input, stdin)? {
        let x = at_line(line, parse_space(&text))?;
        f(&x, out)?;
    }
    Ok(true)
}

fn for_vectors(
    input: Option<String>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    mut f: impl FnMut(&FVector, &mut dyn Write) -> Result<(), CliError>,
) -> Result<bool, CliError> {
    for (line, text) in input_lines(input, stdin)? {
        let a = at_line(line, parse_input_vector(&text))?;
        f(&a, out)?;
    }
    Ok(true)
}

/// A vector that is a single space with coefficient 1 prints as that space.
fn write_vector(out: &mut dyn Write, a: &FVector) -> std::io::Result<()> {
    if a.len() == 1 {
        let (x, c) = a.iter().next().expect("one term");
        if c.is_one() {
            return writeln!(out, "{x}");
        }
    }
    writeln!(out, "{}", VectorDisplay(a))
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Usage(format!("expected a rational number like 3/2, found '{s}'")))
}

fn limits(unsafe_large: bool) -> Limits {
    Limits { allow_large: unsafe_large }
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<bool, CliError> {
    match command {
        Command::Canon { input } => for_spaces(input, stdin, out, |x, out| Ok(writeln!(out, "{x}")?)),
        Command::Dual { input } => {
            for_vectors(input, stdin, out, |a, out| Ok(write_vector(out, &dual_vector(a))?))
        }
        Command::Product { x, y } => {
            let (x, y) = (at_line(1, parse_space(&x))?, at_line(1, parse_space(&y))?);
            writeln!(out, "{}", sum_spaces(&x, &y))?;
            Ok(true)
        }
        Command::Join { x, y } => {
            let (x, y) = (at_line(1, parse_space(&x))?, at_line(1, parse_space(&y))?);
            writeln!(out, "{}", join_spaces(&x, &y))?;
            Ok(true)
        }
        Command::Coproduct { input } => for_vectors(input, stdin, out, |a, out| {
            Ok(writeln!(out, "{}", TensorDisplay(&coproduct(a)))?)
        }),
        Command::Antipode { input } => {
            for_vectors(input, stdin, out, |a, out| Ok(write_vector(out, &antipode(a))?))
        }
        Command::Phi { input, eval_q: q } => {
            let q = q.map(|s| parse_rational(&s)).transpose()?;
            for_vectors(input, stdin, out, |a, out| {
                let image = phi_q(a);
                match &q {
                    None => writeln!(out, "{}", QSymDisplay(&image))?,
                    Some(q) => {
                        let terms: Vec<String> = eval_q(&image, q)
                            .into_iter()
                            .map(|(c, v)| format!("({v})*{c}"))
                            .collect();
                        if terms.is_empty() {
                            writeln!(out, "0")?;
                        } else {
                            writeln!(out, "{}", terms.join(" + "))?;
                        }
                    }
                }
                Ok(())
            })
        }
        Command::Zeta { input } => {
            for_vectors(input, stdin, out, |a, out| Ok(writeln!(out, "{}", zeta_q(a))?))
        }
        Command::Core { input } => {
            for_spaces(input, stdin, out, |x, out| Ok(writeln!(out, "{}", core(x))?))
        }
        Command::Euler { input, reduced } => for_spaces(input, stdin, out, |x, out| {
            let chi = if reduced {
                reduced_euler_characteristic(x)
            } else {
                euler_characteristic(x)
            };
            Ok(writeln!(out, "{chi}")?)
        }),
        Command::Complex { input } => {
            let mut first = true;
            for_spaces(input, stdin, out, |x, out| {
                if !first {
                    writeln!(out)?;
                }
                first = false;
                Ok(write!(out, "{}", order_complex(x))?)
            })
        }
        Command::Enumerate { n, kind, count, unsafe_large } => {
            enumerate(n, kind, count, limits(unsafe_large), out)?;
            Ok(true)
        }
        Command::Check { suite, max_n, seed } => {
            let max_n = max_n.unwrap_or(suite.default_max_n());
            if max_n == 0 {
                return Err(CliError::Usage("--max-n must be at least 1".into()));
            }
            let report = run_suite(suite.suite(), max_n, seed)?;
            write!(out, "{report}")?;
            let failed = report.outcomes.iter().filter(|o| !o.passed()).count();
            if failed == 0 {
                writeln!(out, "ok: {} checks passed", report.outcomes.len())?;
            } else {
                writeln!(out, "failed: {failed} of {} checks", report.outcomes.len())?;
            }
            Ok(failed == 0)
        }
        Command::Counts { max_n, unsafe_large } => {
            write!(out, "{}", counts_tables(max_n, limits(unsafe_large))?)?;
            Ok(true)
        }
    }
}

fn enumerate(n: usize, kind: Kind, count: bool, limits: Limits, out: &mut dyn Write) -> Result<(), CliError> {
    if let Kind::Topologies = kind {
        if count {
            writeln!(out, "{}", count_topologies_with(n, limits)?)?;
            return Ok(());
        }
        let mut lines = Vec::new();
        for_each_topology(n, limits, |p| lines.push(p.to_string()))?;
        lines.sort();
        for l in lines {
            writeln!(out, "{l}")?;
        }
        return Ok(());
    }
    let family = match kind {
        Kind::Spaces => Family::All,
        Kind::Connected => Family::Connected,
        Kind::JoinIndec => Family::JoinIndecomposable,
        Kind::Irreducible => Family::Irreducible,
        Kind::Topologies => unreachable!("handled above"),
    };
    let spaces = enumerate_family(n, family, limits)?;
    if count {
        writeln!(out, "{}", spaces.len())?;
    } else {
        for x in spaces {
            writeln!(out, "{x}")?;
        }
    }
    Ok(())
}

/// The three count tables for `n = 1..=max_n`. Entries above a size cap print
/// as `-` unless `limits` allows large sizes.
pub fn counts_tables(max_n: usize, limits: Limits) -> Result<String, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let mut t = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=max_n {
        match count_topologies_with(n, limits) {
            Ok(v) => t.push(v.to_string()),
            Err(Error::Unsupported { cap, .. }) => {
                t.push("-".into());
                skipped.push(format!("t_{n} (cap {cap})"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let (mut f, mut p, mut q, mut r) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for n in 1..=max_n {
        match count_families_with(n, limits) {
            Ok(c) => {
                f.push(c.spaces.to_string());
                p.push(c.connected.to_string());
                q.push(c.join_indecomposable.to_string());
                r.push(c.irreducible.to_string());
            }
            Err(Error::Unsupported { cap, .. }) => {
                for v in [&mut f, &mut p, &mut q, &mut r] {
                    v.push("-".into());
                }
                skipped.push(format!("f_{n}, p_{n}, q_{n}, r_{n} (cap {cap})"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let ns: Vec<String> = (1..=max_n).map(|n| n.to_string()).collect();
    let mut s = String::new();
    s.push_str(&table(&ns, &[("t_n", &t)]));
    s.push('\n');
    s.push_str(&table(&ns, &[("f_n", &f)]));
    s.push('\n');
    s.push_str(&table(&ns, &[("p_n", &p), ("q_n", &q), ("r_n", &r)]));
    for sk in skipped {
        s.push_str(&format!("skipped {sk}: pass --unsafe-large\n"));
    }
    Ok(s)
}

fn table(ns: &[String], rows: &[(&str, &Vec<String>)]) -> String {
    let widths: Vec<usize> = (0..ns.len())
        .map(|i| rows.iter().map(|(_, r)| r[i].len()).chain([ns[i].len()]).max().unwrap_or(1))
        .collect();
    let line = |label: &str, cells: &[String]| {
        let body: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{label:<3} | {}\n", body.join(" "))
    };
    let mut s = line("n", ns);
    let rule = 4 + widths.iter().sum::<usize>() + widths.len();
    s.push_str(&format!("{}+{}\n", "-".repeat(4), "-".repeat(rule - 4)));
    for (label, cells) in rows {
        s.push_str(&line(label, cells));
    }
    s
}
