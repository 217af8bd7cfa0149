//! Command-line front end for `strongsep`: input formats, reports and
//! certificate replay.

pub mod error;
pub mod eval;
pub mod expr;
pub mod formats;
mod svg;

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use strongsep::branches::{newton_puiseux_with, NpConfig, DEFAULT_DENOM_BOUND};
use strongsep::exp::{Exponent, Lex, QExp};
use strongsep::polygon::{initial_form_edge, Polygon};
use strongsep::props;
use strongsep::separation::{decide_separation, replay};
use strongsep::series::fmt_power;
use strongsep::valuation::{nu_gamma, recenter, Curvette};

pub use error::{verdict_code, CliError};
use eval::ExpSyntax;
use expr::ParseError;

/// Environment variable holding the default exponent-denominator bound.
pub const DENOM_ENV: &str = "STRONGSEP_DENOM_BOUND";

#[derive(Debug, Parser)]
#[command(name = "strongsep", version, about = "Newton polygons, Puiseux branches, valuations and separation certificates")]
pub struct Cli {
    /// Random seed, recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Exponents {
    /// Rational exponents.
    Rational,
    /// Pairs `(a,b)` ordered lexicographically.
    Lex2,
    /// Triples `(a,b,c)` ordered lexicographically.
    Lex3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polygon of a polynomial in z over series in t.
    Polygon {
        /// Input file (`g = …`), or `-` for stdin.
        input: Option<PathBuf>,
        /// Inline polynomial instead of a file.
        #[arg(short, long, conflicts_with = "input")]
        expr: Option<String>,
        /// Also write the hull as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Puiseux branches of a monic polynomial in z.
    Branches {
        input: Option<PathBuf>,
        #[arg(short, long, conflicts_with = "input")]
        expr: Option<String>,
        /// Expansion order, e.g. `4` or `7/2`.
        #[arg(long)]
        target: Option<String>,
        /// Largest exponent denominator allowed.
        #[arg(long)]
        denom_bound: Option<i64>,
    },
    /// Values of polynomials along a curvette.
    Valuate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Exponents::Rational)]
        exponents: Exponents,
    },
    /// Recenter a family of polynomials at a curvette `z = …`.
    Recenter { input: PathBuf },
    /// Decide separation for an instance file and write a certificate.
    Separate {
        input: PathBuf,
        /// Certificate path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        denom_bound: Option<i64>,
    },
    /// Run the randomized property suite.
    VerifyProps {
        /// Instances per property.
        #[arg(long, default_value_t = 100)]
        scale: usize,
    },
    /// Recompute every check of a certificate.
    Replay { input: PathBuf },
}

/// What a run produced: text for stdout, extra text for stderr and the exit
/// status.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read_input(path: &Path) -> Result<(String, String), CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|err| CliError::Io { path: path.into(), err })?;
        return Ok(("<stdin>".into(), s));
    }
    let s = fs::read_to_string(path).map_err(|err| CliError::Io { path: path.into(), err })?;
    Ok((path.display().to_string(), s))
}

fn source(input: &Option<PathBuf>, expr: &Option<String>) -> Result<(String, String), CliError> {
    match (input, expr) {
        (_, Some(e)) => Ok(("<expr>".into(), e.clone())),
        (Some(p), None) => read_input(p),
        (None, None) => Err(CliError::Usage("give an input file or --expr".into())),
    }
}

fn parsed<T>(path: &str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|err| CliError::Parse { path: path.into(), err })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|err| CliError::Io { path: path.into(), err })
}

/// Denominator bound: flag, then instance file, then environment, then the
/// built-in default.
pub fn denom_bound(flag: Option<i64>, file: Option<i64>) -> Result<i64, CliError> {
    let b = match (flag, file) {
        (Some(b), _) | (None, Some(b)) => b,
        (None, None) => match std::env::var(DENOM_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{} must be a positive integer", DENOM_ENV)))?,
            Err(_) => DEFAULT_DENOM_BOUND,
        },
    };
    if b < 1 {
        return Err(CliError::Usage("the denominator bound must be positive".into()));
    }
    Ok(b)
}

fn header(out: &mut String, cmd: &str, seed: u64) {
    writeln!(out, "# strongsep {}", cmd).unwrap();
    writeln!(out, "# seed = {}", seed).unwrap();
}

/// Runs one command; nothing is printed.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut o = Output::default();
    let seed = cli.seed;
    match &cli.cmd {
        Command::Polygon { input, expr, svg } => {
            let (name, src) = source(input, expr)?;
            let zi = parsed(&name, formats::parse_zinput(&src))?;
            header(&mut o.stdout, "polygon", seed);
            for g in &zi.gs {
                polygon_report(&mut o.stdout, g)?;
            }
            if let Some(p) = svg {
                write_file(p, &svg::hull(&Polygon::build(&zi.gs[0])?))?;
            }
        }
        Command::Branches { input, expr, target, denom_bound: db } => {
            let (name, src) = source(input, expr)?;
            let zi = parsed(&name, formats::parse_zinput(&src))?;
            let target = match target {
                Some(t) => Some(parsed("--target", expr::parse(t, expr::Pos { line: 1, col: 1 }).and_then(|e| QExp::from_expr(&e)))?),
                None => None,
            };
            let cfg = NpConfig { target, denom_bound: denom_bound(*db, None)? };
            header(&mut o.stdout, "branches", seed);
            writeln!(o.stdout, "# denom-bound = {}", cfg.denom_bound).unwrap();
            for g in &zi.gs {
                writeln!(o.stdout, "g = {}", g).unwrap();
                for (k, b) in newton_puiseux_with(g, &cfg)?.iter().enumerate() {
                    writeln!(
                        o.stdout,
                        "branch {}: z = {}\n  real = {}, multiplicity = {}, residual order = {}",
                        k + 1,
                        b,
                        if b.is_real() { "yes" } else { "no" },
                        b.multiplicity,
                        b.residual_order()
                    )
                    .unwrap();
                }
            }
        }
        Command::Valuate { input, exponents } => {
            let (name, src) = read_input(input)?;
            header(&mut o.stdout, "valuate", seed);
            match exponents {
                Exponents::Rational => {
                    let vi = parsed(&name, formats::parse_valinput::<QExp>(&src))?;
                    let g = vi.gamma.normalized()?;
                    valuate_report(&mut o.stdout, &vi.names, &vi.fs, &g)?;
                }
                Exponents::Lex2 => valuate_lex::<2>(&mut o.stdout, &name, &src)?,
                Exponents::Lex3 => valuate_lex::<3>(&mut o.stdout, &name, &src)?,
            }
        }
        Command::Recenter { input } => {
            let (name, src) = read_input(input)?;
            let zi = parsed(&name, formats::parse_zinput(&src))?;
            let Some(z) = zi.z else {
                return Err(CliError::Usage(format!("{}: missing `z = …`", name)));
            };
            let gamma = Curvette::new(Vec::new(), z);
            let (phi, rep) = recenter(&zi.gs, &gamma)?;
            header(&mut o.stdout, "recenter", seed);
            writeln!(o.stdout, "z = {}", gamma.z).unwrap();
            writeln!(o.stdout, "phi = {}", phi).unwrap();
            writeln!(o.stdout, "z - phi = {}", gamma.z.sub(&phi)).unwrap();
            for (k, (g, (b, a))) in zi.gs.iter().zip(rep.before.iter().zip(&rep.after)).enumerate() {
                writeln!(o.stdout, "g{} = {}\n  before: {}\n  after: {}", k + 1, g, b, a).unwrap();
            }
            for (k, s) in rep.steps.iter().enumerate() {
                let nus: Vec<String> = s.nu_zs.iter().map(|v| v.to_string()).collect();
                writeln!(
                    o.stdout,
                    "step {}: member g{} phi_s = {}{} nu_z = [{}]",
                    k + 1,
                    s.member + 1,
                    s.phi_s,
                    if s.binomial { " (binomial)" } else { "" },
                    nus.join(", ")
                )
                .unwrap();
            }
            writeln!(o.stdout, "monotone = {}", rep.monotone).unwrap();
            match &rep.stage2 {
                Some(s) => {
                    let ds: Vec<String> = s.deltas.iter().map(|d| d.to_string()).collect();
                    writeln!(o.stdout, "stage2 phi* = {} deltas = [{}]", s.phi_star, ds.join(", ")).unwrap();
                }
                None => writeln!(o.stdout, "stage2 skipped").unwrap(),
            }
        }
        Command::Separate { input, output, degree_bound, grid, denom_bound: db } => {
            let (name, src) = read_input(input)?;
            let (mut inst, file_db) = parsed(&name, formats::parse_instance(&src))?;
            inst.denom_bound = denom_bound(*db, file_db)?;
            if let Some(d) = degree_bound {
                inst.degree_bound = *d;
            }
            if let Some(g) = grid {
                inst.grid = *g;
            }
            let d = decide_separation(&inst)?;
            let mut cert = d.certificate.clone();
            cert.entries.insert(0, ("seed".into(), seed.to_string()));
            cert.entries.insert(1, ("denom-bound".into(), inst.denom_bound.to_string()));
            cert.entries.insert(2, ("degree-bound".into(), inst.degree_bound.to_string()));
            cert.entries.insert(3, ("grid".into(), inst.grid.to_string()));
            let text = cert.to_string();
            match output {
                Some(p) => {
                    write_file(p, &text)?;
                    writeln!(o.stderr, "verdict: {}", cert.verdict.name()).unwrap();
                }
                None => o.stdout = text,
            }
            o.code = verdict_code(cert.verdict);
        }
        Command::VerifyProps { scale } => {
            header(&mut o.stdout, "verify-props", seed);
            writeln!(o.stdout, "# scale = {}", scale).unwrap();
            let reps = props::run_all(seed, *scale);
            let mut failed = 0;
            for r in &reps {
                writeln!(
                    o.stdout,
                    "{} {}: {} trials, {} applicable, {} failed",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.name,
                    r.trials,
                    r.applicable,
                    r.failed
                )
                .unwrap();
                for e in &r.examples {
                    writeln!(o.stdout, "  {}", e).unwrap();
                }
                failed += usize::from(!r.passed());
            }
            if failed > 0 {
                o.stderr = format!("{} propert(y/ies) failed\n", failed);
                o.code = CliError::PropsFailed(failed).exit_code();
            }
        }
        Command::Replay { input } => {
            let (name, src) = read_input(input)?;
            let cert = parsed(&name, formats::parse_certificate(&src))?;
            header(&mut o.stdout, "replay", seed);
            if let Some(s) = formats::note(&cert, "seed") {
                writeln!(o.stdout, "# certificate seed = {}", s).unwrap();
            }
            writeln!(o.stdout, "verdict = {}", cert.verdict.name()).unwrap();
            let results = replay(&cert).map_err(|e| CliError::ReplayData(e.to_string()))?;
            let bad = results.iter().filter(|(_, ok)| !ok).count();
            for (line, ok) in &results {
                writeln!(o.stdout, "{} {}", if *ok { "ok" } else { "MISMATCH" }, line).unwrap();
            }
            writeln!(o.stdout, "{} checks, {} mismatches", results.len(), bad).unwrap();
            if bad > 0 {
                o.stderr = format!("{}\n", CliError::ReplayMismatch(bad));
                o.code = CliError::ReplayMismatch(bad).exit_code();
            }
        }
    }
    Ok(o)
}

fn polygon_report(out: &mut String, g: &strongsep::zpoly::ZPoly<QExp>) -> Result<(), CliError> {
    let p = Polygon::build(g)?;
    let pts = |v: &[(usize, QExp)]| v.iter().map(|(i, e)| format!("({}, {})", i, e)).collect::<Vec<_>>().join(" ");
    writeln!(out, "g = {}", g).unwrap();
    writeln!(out, "points: {}", pts(&p.points)).unwrap();
    writeln!(out, "vertices: {}", pts(&p.hull)).unwrap();
    for e in &p.edges {
        let (inz, poly) = initial_form_edge(g, e)?;
        writeln!(
            out,
            "edge ({}, {}) -- ({}, {}): slope {}, length {}\n  initial form: {}\n  edge polynomial: {}",
            e.i,
            e.eps,
            e.j,
            e.theta,
            e.slope,
            e.length(),
            inz,
            poly
        )
        .unwrap();
    }
    let slopes: Vec<String> = p.slopes().iter().map(|s| s.to_string()).collect();
    writeln!(out, "slopes: {}", slopes.join(" ")).unwrap();
    Ok(())
}

fn valuate_report<E: ExpSyntax>(out: &mut String, names: &[String], fs: &[strongsep::mpoly::MPoly], g: &Curvette<E>) -> Result<(), CliError> {
    for (n, s) in names.iter().zip(g.point()) {
        writeln!(out, "{} = {}", n, s).unwrap();
    }
    for f in fs {
        let v = nu_gamma(f, g)?;
        let s = f.eval_series(&g.point());
        writeln!(out, "f = {}", f.display_with(names)).unwrap();
        writeln!(out, "  nu = {}", v).unwrap();
        if let Some((e, c)) = s.leading()? {
            let sign = match c.real_sign() {
                Some(std::cmp::Ordering::Greater) => "+",
                Some(std::cmp::Ordering::Less) => "-",
                _ => "not real",
            };
            writeln!(out, "  initial term = ({})*{}\n  sign = {}", c, fmt_power(&e), sign).unwrap();
        }
    }
    Ok(())
}

fn valuate_lex<const N: usize>(out: &mut String, name: &str, src: &str) -> Result<(), CliError>
where
    Lex<N>: ExpSyntax + Exponent,
{
    let vi = parsed(name, formats::parse_valinput::<Lex<N>>(src))?;
    if vi.gamma.signs.iter().any(|(_, s)| *s != strongsep::valuation::Sign::Pos) {
        return Err(CliError::Usage("sign data is only supported with rational exponents".into()));
    }
    valuate_report(out, &vi.names, &vi.fs, &vi.gamma)
}
