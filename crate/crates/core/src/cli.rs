//! Command-line front end. Lives in the library so tests can drive it
//! without spawning a process; `main.rs` only forwards `std::env::args`.
//!
//! Exit codes: 0 success / expected verdict, 1 verdict mismatch,
//! 2 usage error, 3 domain error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::moments::{completely_monotone_check_real, MixingDistribution, Monotonicity};
use crate::pgf::ScaleParam;
use crate::rational::{format_rational, parse_rational, Rational, Real};
use crate::report::{
    DistributionTable, MomentValidation, ReportDocument, Results, ThinResult, PREFIX_NOTE,
};
use crate::type_check::{check_pair, counterexample_report, Mode, DEFAULT_HORIZON};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "same-type",
    version,
    about = "Exact PGF thinning vs d.f. scaling for laws on {0, 1, 2, ...}"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// One law: geometric, geometric mixture, or finite table of masses.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DistArgs {
    /// Geometric parameter q in (0, 1), as a/b.
    #[arg(long, value_parser = rational_arg)]
    pub q: Option<Rational>,
    /// Geometric mixture, e.g. "1/2:1/2,1/4:1/2" (location:weight pairs).
    #[arg(long)]
    pub mixture: Option<String>,
    /// Finite point masses P(X=0), P(X=1), ..., e.g. "1/4,1/2,1/4".
    #[arg(long)]
    pub pmf: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rebuild the geometric counterexample and gate on its verdicts.
    Reproduce {
        /// Parameter of X ~ geometric(q).
        #[arg(long, value_parser = rational_arg, default_value = "1/4")]
        q: Rational,
        /// Scale relating X and Y.
        #[arg(long, value_parser = rational_arg, default_value = "1/2")]
        alpha: Rational,
        /// Accept a float approximation when q^alpha is irrational.
        #[arg(long)]
        allow_float: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare two laws under both notions of "same type".
    #[command(
        group(ArgGroup::new("first").required(true).multiple(false)),
        group(ArgGroup::new("second").required(true).multiple(false))
    )]
    Check {
        /// First law: geometric parameter.
        #[arg(long, value_parser = rational_arg, group = "first")]
        q1: Option<Rational>,
        /// First law: geometric mixture, location:weight pairs.
        #[arg(long, group = "first")]
        mix1: Option<String>,
        /// First law: finite point masses.
        #[arg(long, group = "first")]
        pmf1: Option<String>,
        /// Second law: geometric parameter.
        #[arg(long, value_parser = rational_arg, group = "second")]
        q2: Option<Rational>,
        /// Second law: geometric mixture, location:weight pairs.
        #[arg(long, group = "second")]
        mix2: Option<String>,
        /// Second law: finite point masses.
        #[arg(long, group = "second")]
        pmf2: Option<String>,
        /// Scale to test (required in fixed mode).
        #[arg(long, value_parser = rational_arg)]
        alpha: Option<Rational>,
        /// Test a given alpha, or search for one.
        #[arg(long, value_enum, default_value_t = ModeArg::Fixed)]
        mode: ModeArg,
        /// Survival values compared for d.f. scaling: k = 0..horizon.
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Thin a PGF: Q(s) -> Q(1 - alpha + alpha s).
    Thin {
        #[command(flatten)]
        dist: DistArgs,
        /// Thinning probability in (0, 1].
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        #[command(flatten)]
        output: Output,
    },
    /// Scale a d.f.: m(k) -> m(alpha k), and tabulate the result.
    Scale {
        #[command(flatten)]
        dist: DistArgs,
        /// Scale, any positive rational.
        #[arg(long, value_parser = rational_arg)]
        alpha: Rational,
        /// Number of rows to tabulate.
        #[arg(long, default_value_t = 8)]
        horizon: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate P(X = k), P(X >= k), P(X < k) for k < n.
    Pmf {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Finite-prefix complete-monotonicity check of a survival sequence.
    ValidateMoments {
        /// Geometric parameter.
        #[arg(long, value_parser = rational_arg, conflicts_with = "values")]
        q: Option<Rational>,
        /// Geometric mixture, location:weight pairs.
        #[arg(long, conflicts_with = "values")]
        mixture: Option<String>,
        /// Explicit prefix m(0), m(1), ..., e.g. "1,1/2,9/10".
        #[arg(long)]
        values: Option<String>,
        /// Rescale the sequence to m(alpha k) first.
        #[arg(long, value_parser = rational_arg)]
        alpha: Option<Rational>,
        /// Highest index K of the prefix m(0..=K).
        #[arg(long, default_value_t = 16)]
        prefix: usize,
        /// Highest difference order J.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fixed,
    Exists,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// What a run produced: text for stdout and stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code }
            } else {
                Outcome { stdout: text, stderr: String::new(), code }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let (output, result) = match cli.command {
        Command::Reproduce { q, alpha, allow_float, output } => {
            (output, cmd_reproduce(&q, &alpha, allow_float))
        }
        Command::Check { q1, mix1, pmf1, q2, mix2, pmf2, alpha, mode, horizon, output } => {
            let r = (|| {
                let first = build_dist(q1, mix1, pmf1, "first")?;
                let second = build_dist(q2, mix2, pmf2, "second")?;
                cmd_check(&first, &second, alpha, mode, horizon)
            })();
            (output, r)
        }
        Command::Thin { dist, alpha, output } => (output, cmd_thin(dist, &alpha)),
        Command::Scale { dist, alpha, horizon, output } => {
            (output, cmd_scale(dist, &alpha, horizon))
        }
        Command::Pmf { dist, n, output } => (output, cmd_pmf(dist, n)),
        Command::ValidateMoments { q, mixture, values, alpha, prefix, order, output } => {
            (output, cmd_validate(q, mixture, values, alpha, prefix, order))
        }
    };
    match result {
        Ok((doc, code, diagnostics)) => {
            let text = render(&doc, output.format);
            match output.out {
                Some(path) => match std::fs::write(&path, &text) {
                    Ok(()) => Outcome { stdout: String::new(), stderr: diagnostics, code },
                    Err(e) => Outcome {
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                        code: EXIT_USAGE,
                    },
                },
                None => Outcome { stdout: text, stderr: diagnostics, code },
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: match e {
                Error::Parse { .. } => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            },
        },
    }
}

type CmdResult = Result<(ReportDocument, i32, String)>;

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn cmd_reproduce(q: &Rational, alpha: &Rational, allow_float: bool) -> CmdResult {
    let report = counterexample_report(q, alpha, allow_float)?;
    let (code, diag) = if report.shows_non_equivalence() {
        (EXIT_OK, String::new())
    } else {
        (
            EXIT_MISMATCH,
            format!(
                "mismatch: expected d.f. scaling to hold and thinning to fail both ways; \
                 got scaling={} thinning_xy={} thinning_yx={}\n",
                report.scaling_holds, report.thinning_xy, report.thinning_yx
            ),
        )
    };
    let doc = ReportDocument::new(
        "reproduce",
        inputs([
            ("alpha", format_rational(alpha)),
            ("allow_float", allow_float.to_string()),
            ("q", format_rational(q)),
        ]),
        Results::TypeCheck(report),
    );
    Ok((doc, code, diag))
}

fn build_dist(
    q: Option<Rational>,
    mixture: Option<String>,
    pmf: Option<String>,
    which: &str,
) -> Result<DiscreteDist> {
    match (q, mixture, pmf) {
        (Some(q), None, None) => DiscreteDist::geometric(q),
        (None, Some(m), None) => Ok(DiscreteDist::mixture(MixingDistribution::parse(&m)?)),
        (None, None, Some(p)) => DiscreteDist::from_pmf(&parse_list(&p)?),
        _ => Err(Error::Parse {
            input: which.to_string(),
            reason: "give exactly one of a geometric parameter, a mixture or a pmf".into(),
        }),
    }
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn cmd_check(
    first: &DiscreteDist,
    second: &DiscreteDist,
    alpha: Option<Rational>,
    mode: ModeArg,
    horizon: u64,
) -> CmdResult {
    let alpha = alpha.map(ScaleParam::new).transpose()?;
    let mode = match mode {
        ModeArg::Fixed => Mode::Fixed,
        ModeArg::Exists => Mode::Exists,
    };
    let check = check_pair(first, second, mode, alpha.as_ref(), horizon)?;
    let mut inp = inputs([
        ("first", first.to_string()),
        ("second", second.to_string()),
        ("horizon", horizon.to_string()),
        ("mode", format!("{mode:?}").to_lowercase()),
    ]);
    if let Some(a) = &alpha {
        inp.insert("alpha".into(), a.to_string());
    }
    Ok((ReportDocument::new("check", inp, Results::PairCheck(check)), EXIT_OK, String::new()))
}

fn dist_from(args: DistArgs) -> Result<DiscreteDist> {
    build_dist(args.q, args.mixture, args.pmf, "distribution")
}

fn cmd_thin(args: DistArgs, alpha: &Rational) -> CmdResult {
    let d = dist_from(args)?;
    let alpha = ScaleParam::new(alpha.clone())?;
    let input = d
        .pgf()
        .exact()
        .cloned()
        .ok_or_else(|| Error::NotExact(format!("PGF of {d}")))?;
    let thinned = input.thin(&alpha)?;
    let doc = ReportDocument::new(
        "thin",
        inputs([("alpha", alpha.to_string()), ("distribution", d.to_string())]),
        Results::Thin(ThinResult { input, alpha, thinned }),
    );
    Ok((doc, EXIT_OK, String::new()))
}

fn cmd_scale(args: DistArgs, alpha: &Rational, rows: usize) -> CmdResult {
    let d = dist_from(args)?;
    let alpha = ScaleParam::new(alpha.clone())?;
    let scaled = d.df_scale(&alpha)?;
    let table = DistributionTable::build(&scaled, Some(&alpha), rows);
    let doc = ReportDocument::new(
        "scale",
        inputs([
            ("alpha", alpha.to_string()),
            ("distribution", d.to_string()),
            ("horizon", rows.to_string()),
        ]),
        Results::Table(table),
    );
    Ok((doc, EXIT_OK, String::new()))
}

fn cmd_pmf(args: DistArgs, n: usize) -> CmdResult {
    let d = dist_from(args)?;
    let table = DistributionTable::build(&d, None, n);
    let doc = ReportDocument::new(
        "pmf",
        inputs([("distribution", d.to_string()), ("n", n.to_string())]),
        Results::Table(table),
    );
    Ok((doc, EXIT_OK, String::new()))
}

fn cmd_validate(
    q: Option<Rational>,
    mixture: Option<String>,
    values: Option<String>,
    alpha: Option<Rational>,
    prefix: usize,
    order: usize,
) -> CmdResult {
    let (source, seq): (String, Vec<Real>) = match (q, mixture, values) {
        (None, None, Some(v)) => {
            if alpha.is_some() {
                return Err(Error::Parse {
                    input: "--alpha".into(),
                    reason: "cannot rescale an explicit prefix".into(),
                });
            }
            ("values".into(), parse_list(&v)?.into_iter().map(Real::Exact).collect())
        }
        (q, mixture, None) => {
            let mut d = build_dist(q, mixture, None, "sequence")?;
            if let Some(a) = &alpha {
                d = d.df_scale(&ScaleParam::new(a.clone())?)?;
            }
            let seq = (0..=prefix as u64).map(|k| d.survival(k)).collect();
            (d.to_string(), seq)
        }
        _ => unreachable!("clap enforces conflicts"),
    };
    let outcome = completely_monotone_check_real(&seq, order)?;
    let code = if outcome.is_consistent() { EXIT_OK } else { EXIT_MISMATCH };
    let mut inp = inputs([("order", order.to_string()), ("source", source.clone())]);
    if let Some(a) = &alpha {
        inp.insert("alpha".into(), format_rational(a));
    }
    inp.insert("prefix".into(), (seq.len() - 1).to_string());
    let doc = ReportDocument::new(
        "validate-moments",
        inp,
        Results::Moments(MomentValidation {
            source,
            order,
            prefix: seq,
            outcome,
            note: PREFIX_NOTE.into(),
        }),
    );
    Ok((doc, code, String::new()))
}

pub fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Table => render_table(doc),
        Format::Csv => render_csv(doc),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "n/a",
    }
}

fn opt_real(r: &Option<Real>) -> String {
    r.as_ref().map_or_else(|| "none".to_string(), Real::to_string)
}

fn opt_rational(r: &Option<Rational>) -> String {
    r.as_ref().map_or_else(|| "none".to_string(), format_rational)
}

fn render_table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let line = |out: &mut String, k: &str, v: &str| {
        let _ = writeln!(out, "  {k:<36} {v}");
    };
    match &doc.results {
        Results::TypeCheck(r) => {
            let _ = writeln!(
                out,
                "X ~ geometric(q = {}), Y has G(k) = F(alpha k), alpha = {}",
                format_rational(&r.q),
                r.alpha
            );
            if !r.exact {
                let _ = writeln!(out, "  (q^alpha is irrational; Y uses its float value)");
            }
            out.push('\n');
            line(&mut out, "Q_X(s)", &r.qx_pgf.display());
            line(&mut out, "Q_Y(s)", &r.qy_pgf.display());
            line(&mut out, "Q_X(1−α+αs)", &r.thinned_x.display());
            line(&mut out, "Q_Y(1−α+αs)", &r.thinned_y.display());
            out.push('\n');
            line(&mut out, "d.f. scaling  G(k) = F(αk)", yes_no(r.scaling_holds));
            line(&mut out, "thinning      Q_X(s) = Q_Y(1−α+αs)", yes_no(r.thinning_xy));
            line(&mut out, "thinning      Q_Y(s) = Q_X(1−α+αs)", yes_no(r.thinning_yx));
            line(&mut out, "thinning witness α (X from Y)", &opt_rational(&r.thinning_witness_xy));
            line(&mut out, "thinning witness α (Y from X)", &opt_rational(&r.thinning_witness_yx));
            out.push('\n');
            let verdict = if r.definitions_agree { "CONSISTENT" } else { "NOT-EQUIVALENT" };
            let _ = writeln!(out, "verdict: {verdict}");
        }
        Results::PairCheck(c) => {
            let _ = writeln!(out, "F = {}", c.first);
            let _ = writeln!(out, "G = {}", c.second);
            let _ = writeln!(out, "mode: {:?}, horizon {}", c.mode, c.horizon);
            out.push('\n');
            let pgf = |p: &Option<crate::pgf::RationalPgf>| {
                p.as_ref().map_or_else(|| "no closed form".to_string(), |q| q.display())
            };
            line(&mut out, "Q_F(s)", &pgf(&c.first_pgf));
            line(&mut out, "Q_G(s)", &pgf(&c.second_pgf));
            match c.mode {
                Mode::Fixed => {
                    if let Some(a) = &c.alpha {
                        line(&mut out, "alpha", &a.to_string());
                    }
                    line(&mut out, "d.f. scaling  G(k) = F(αk)", opt_bool(c.scaling_holds));
                    line(
                        &mut out,
                        "thinning      Q_F(s) = Q_G(1−α+αs)",
                        opt_bool(c.thinning_first_from_second),
                    );
                    line(
                        &mut out,
                        "thinning      Q_G(s) = Q_F(1−α+αs)",
                        opt_bool(c.thinning_second_from_first),
                    );
                }
                Mode::Exists => {
                    line(&mut out, "d.f. scaling witness α", &opt_real(&c.scaling_witness));
                    line(
                        &mut out,
                        "thinning witness α (F from G)",
                        &opt_real(&c.thinning_witness_first_from_second),
                    );
                    line(
                        &mut out,
                        "thinning witness α (G from F)",
                        &opt_real(&c.thinning_witness_second_from_first),
                    );
                }
            }
        }
        Results::Thin(t) => {
            line(&mut out, "Q(s)", &t.input.display());
            line(&mut out, "alpha", &t.alpha.to_string());
            line(&mut out, "Q(1−α+αs)", &t.thinned.display());
        }
        Results::Table(t) => {
            let _ = writeln!(out, "{}", t.distribution);
            if let Some(q) = &t.geometric_parameter {
                let _ = writeln!(out, "  geometric parameter: {q}");
            }
            if let Some(p) = &t.pgf {
                let _ = writeln!(out, "  PGF: {}", p.display());
            }
            out.push('\n');
            let _ = writeln!(out, "  {:>4}  {:<28} {:<28} {}", "k", "P(X>=k)", "F(k)=P(X<k)", "P(X=k)");
            for r in &t.rows {
                let _ = writeln!(
                    out,
                    "  {:>4}  {:<28} {:<28} {}",
                    r.k,
                    r.survival.to_string(),
                    r.cdf.to_string(),
                    r.pmf.to_string()
                );
            }
            let _ = writeln!(out, "\n  tail P(X>={}) = {}", t.rows.len(), t.tail);
        }
        Results::Moments(m) => {
            let _ = writeln!(out, "source: {}", m.source);
            for (k, v) in m.prefix.iter().enumerate() {
                let _ = writeln!(out, "  m({k}) = {v}");
            }
            match m.outcome {
                Monotonicity::Consistent => {
                    let _ = writeln!(out, "\nconsistent up to order {}", m.order);
                }
                Monotonicity::Violated { order, index } => {
                    let _ = writeln!(
                        out,
                        "\nviolated: (−1)^{order} Δ^{order} m({index}) < 0"
                    );
                }
            }
            let _ = writeln!(out, "note: {}", m.note);
        }
    }
    out
}

fn render_csv(doc: &ReportDocument) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write_csv(doc, &mut w).expect("in-memory csv writer");
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn kv(w: &mut csv::Writer<Vec<u8>>, k: &str, v: String) -> csv::Result<()> {
    w.write_record([k, v.as_str()])
}

fn write_csv(doc: &ReportDocument, w: &mut csv::Writer<Vec<u8>>) -> csv::Result<()> {
    {
        match &doc.results {
            Results::TypeCheck(r) => {
                kv(w, "field", "value".into())?;
                kv(w, "q", format_rational(&r.q))?;
                kv(w, "alpha", r.alpha.to_string())?;
                kv(w, "q_y", r.q_y.to_string())?;
                kv(w, "qx_pgf", r.qx_pgf.display())?;
                kv(w, "qy_pgf", r.qy_pgf.display())?;
                kv(w, "thinned_x", r.thinned_x.display())?;
                kv(w, "thinned_y", r.thinned_y.display())?;
                kv(w, "scaling_holds", r.scaling_holds.to_string())?;
                kv(w, "thinning_xy", r.thinning_xy.to_string())?;
                kv(w, "thinning_yx", r.thinning_yx.to_string())?;
                kv(w, "definitions_agree", r.definitions_agree.to_string())?;
                kv(w, "thinning_witness_xy", opt_rational(&r.thinning_witness_xy))?;
                kv(w, "thinning_witness_yx", opt_rational(&r.thinning_witness_yx))?;
            }
            Results::PairCheck(c) => {
                let b = |x: Option<bool>| x.map_or_else(|| "n/a".to_string(), |v| v.to_string());
                kv(w, "field", "value".into())?;
                kv(w, "first", c.first.clone())?;
                kv(w, "second", c.second.clone())?;
                kv(w, "mode", format!("{:?}", c.mode).to_lowercase())?;
                kv(w, "alpha", c.alpha.as_ref().map_or("none".into(), ToString::to_string))?;
                kv(w, "scaling_holds", b(c.scaling_holds))?;
                kv(w, "thinning_first_from_second", b(c.thinning_first_from_second))?;
                kv(w, "thinning_second_from_first", b(c.thinning_second_from_first))?;
                kv(w, "scaling_witness", opt_real(&c.scaling_witness))?;
                kv(
                    w,
                    "thinning_witness_first_from_second",
                    opt_real(&c.thinning_witness_first_from_second),
                )?;
                kv(
                    w,
                    "thinning_witness_second_from_first",
                    opt_real(&c.thinning_witness_second_from_first),
                )?;
            }
            Results::Thin(t) => {
                kv(w, "field", "value".into())?;
                kv(w, "input", t.input.display())?;
                kv(w, "alpha", t.alpha.to_string())?;
                kv(w, "thinned", t.thinned.display())?;
            }
            Results::Table(t) => {
                w.write_record(["k", "survival", "cdf", "pmf"])?;
                for r in &t.rows {
                    w.write_record([
                        r.k.to_string(),
                        r.survival.to_string(),
                        r.cdf.to_string(),
                        r.pmf.to_string(),
                    ])?;
                }
            }
            Results::Moments(m) => {
                w.write_record(["k", "m"])?;
                for (k, v) in m.prefix.iter().enumerate() {
                    w.write_record([k.to_string(), v.to_string()])?;
                }
            }
        }
    }
    Ok(())
}

