//! `mform`: expand series, run verification suites, print subgroup reports.
//!
//! Exit codes: 0 ok, 1 failed check or internal error, 2 user error
//! (including excluded classes), 3 window error, 4 data error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mform::classical::{appell_mu, eta3mu, eta_pow, f2, theta1_sq};
use mform::jacobi::{f_g, h_g, load_aux_h, m_g_tilde, multiplicity_series, phi_g, q_g, z_k3, AuxH};
use mform::m24::{default_table, frame_eta, load_class_data, CharacterTable, ConjClass};
use mform::subgroups::{default_fusions, load_fusions, subgroup_trace_table, SubgroupFusion};
use mform::trace::{component_trace, gamma_limit, TraceSpec};
use mform::verify::{run_suite, Context, Suite};
use mform::{Error, FactorSum, QYSeries};

use output::{Format, Window};

#[derive(Parser)]
#[command(name = "mform", version, about = "Exact q,y-series for M24 twining genera and graded traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args)]
struct Opts {
    /// Highest power of q (an integer).
    #[arg(long, global = true, default_value_t = 10)]
    qmax: i64,
    /// Lowest power of y; must be at most -1.
    #[arg(long, global = true, default_value_t = -40, allow_hyphen_values = true)]
    ylow: i64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Directory holding m24_classes.json, subgroup_fusions.json and optionally aux_h.json.
    #[arg(long, global = true, env = "MFORM_DATA_DIR")]
    data_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    class_data: Option<PathBuf>,
    #[arg(long, global = true)]
    fusion_data: Option<PathBuf>,
    /// H series for the excluded classes.
    #[arg(long, global = true)]
    aux_h: Option<PathBuf>,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Expand one function to the requested window.
    Expand {
        /// eta^k, theta1_sq, mu, eta3mu, F2, eta_g, phi_g, H_g, M_g, Q_g, F_g, Z_K3 or trace:<spec>
        #[arg(long)]
        function: String,
        #[arg(long)]
        class: Option<String>,
    },
    /// Run a named check suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Eligibility verdict and trace table for a subgroup.
    Report { subgroup: String },
    /// Irrep multiplicities in the coefficients of M~_g.
    Multiplicities,
}

enum Fail {
    Checks,
    Err(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Err(e)
    }
}

fn user(msg: impl Into<String>) -> Fail {
    Fail::Err(Error::Invalid(msg.into()))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) | Error::Excluded(_) => 2,
        Error::Window(_) | Error::Capacity(_) => 3,
        Error::Data(_) => 4,
        _ => 1,
    }
}

struct Assets {
    table: &'static CharacterTable,
    fusions: Vec<SubgroupFusion>,
    aux: Option<AuxH>,
}

fn pick(explicit: &Option<PathBuf>, dir: &Option<PathBuf>, file: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| dir.as_ref().map(|d| d.join(file)).filter(|p| p.exists()))
}

fn load_assets(o: &Opts) -> Result<Assets, Error> {
    if let Some(d) = &o.data_dir {
        if !d.is_dir() {
            return Err(Error::data(format!("data directory {} not found", d.display())));
        }
    }
    let table: &'static CharacterTable = match pick(&o.class_data, &o.data_dir, "m24_classes.json") {
        Some(p) => Box::leak(Box::new(load_class_data(&p)?)),
        None => default_table(),
    };
    let fusions = match pick(&o.fusion_data, &o.data_dir, "subgroup_fusions.json") {
        Some(p) => load_fusions(&p, table)?,
        None => default_fusions(table)?,
    };
    let aux = match pick(&o.aux_h, &o.data_dir, "aux_h.json") {
        Some(p) => Some(load_aux_h(&p, table)?),
        None => None,
    };
    Ok(Assets { table, fusions, aux })
}

fn class<'a>(t: &'a CharacterTable, name: Option<&str>, function: &str) -> Result<&'a ConjClass, Fail> {
    let name = name.ok_or_else(|| user(format!("{function} needs --class")))?;
    t.class(name).map_err(|_| user(format!("unknown class {name}")))
}

fn expand(function: &str, class_name: Option<&str>, a: &Assets, w: Window) -> Result<QYSeries, Fail> {
    let (q, y) = (w.qmax24, w.ylow);
    let t = a.table;
    let cls = |f: &str| class(t, class_name, f);
    let he = || h_g(t.class("1A").expect("1A"), q - 3);
    if let Some(k) = function.strip_prefix("eta^") {
        let k: i64 = k.parse().map_err(|_| user(format!("bad eta power {k:?}")))?;
        return Ok(eta_pow(k, q)?);
    }
    if let Some(spec) = function.strip_prefix("trace:") {
        let c = class_name.map(|_| cls(function)).transpose()?;
        let fp = component_trace(&TraceSpec::parse(spec, c)?)?;
        return Ok(gamma_limit(&FactorSum::single(fp))?.expand(q, y)?);
    }
    let s = match function {
        "theta1_sq" => theta1_sq(q, y)?,
        "mu" => appell_mu(q, y)?,
        "eta3mu" => eta3mu(q, y)?,
        "F2" => f2(q).to_qy(),
        "eta_g" => frame_eta(cls(function)?, false, false).expand(q, y)?,
        "phi_g" => phi_g(cls(function)?, q, y)?,
        "H_g" => h_g(cls(function)?, q)?.to_qy(),
        "M_g" => m_g_tilde(cls(function)?, q, y)?,
        "Q_g" => q_g(cls(function)?, q)?.to_qy(),
        "F_g" => f_g(cls(function)?, &he()?, q)?.to_qy(),
        "Z_K3" => z_k3(&he()?, q, y)?,
        _ => return Err(user(format!("unknown function {function}"))),
    };
    Ok(s)
}

fn run(cli: &Cli) -> Result<String, Fail> {
    let o = &cli.opts;
    if o.qmax < 0 {
        return Err(user("--qmax must be non-negative"));
    }
    if o.ylow > -1 {
        return Err(user("--ylow must be at most -1"));
    }
    if o.threads > 0 {
        // a second call only fails if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(o.threads).build_global();
    }
    let w = Window { qmax24: 24 * o.qmax, ylow: o.ylow };
    let fmt = match o.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    };
    // parse the suite name before touching assets so typos are user errors
    let suite = match &cli.command {
        Command::Verify { suite } => Some(suite.parse::<Suite>()?),
        _ => None,
    };
    let a = load_assets(o)?;
    match &cli.command {
        Command::Expand { function, class } => {
            let s = expand(function, class.as_deref(), &a, w)?;
            Ok(output::series(fmt, function, class.as_deref(), w, &s))
        }
        Command::Verify { .. } => {
            let ctx = Context { table: a.table, fusions: &a.fusions, aux: a.aux.as_ref(), qmax24: w.qmax24, ylow: w.ylow };
            let checks = run_suite(suite.expect("parsed above"), &ctx);
            let (text, failed) = output::checks(fmt, &format!("{:?}", suite.unwrap()).to_lowercase(), w, &checks);
            if failed {
                print!("{text}");
                return Err(Fail::Checks);
            }
            Ok(text)
        }
        Command::Report { subgroup } => {
            let sf = a
                .fusions
                .iter()
                .find(|f| &f.name == subgroup)
                .ok_or_else(|| user(format!("unknown subgroup {subgroup}")))?;
            let (el, rows) = subgroup_trace_table(sf, a.table, w.qmax24, w.ylow)?;
            Ok(output::report(fmt, w, &el, &rows))
        }
        Command::Multiplicities => {
            let m = multiplicity_series(a.table, w.qmax24, w.ylow, a.aux.as_ref())?;
            Ok(output::multiplicities(fmt, &m))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Fail::Checks) => ExitCode::from(1),
        Err(Fail::Err(e)) => {
            eprintln!("mform: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

