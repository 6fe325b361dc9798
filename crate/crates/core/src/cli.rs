//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 input error, 3 cap exceeded,
//! 4 partial (some claims skipped, none failed).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::caps::Caps;
use crate::error::Error;
use crate::format::{export_graph, write_perms, GraphFormat};
use crate::harness::{bound_report, VTInstance};
use crate::pipeline::{build_bundle, verify_theorem1, ConstructionParams};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "arcgen", version, about = "Arc-transitive graph families with unbounded generator counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write Γ_h and generator files for G_h and γ⋊H.
    Construct {
        #[command(flatten)]
        params: ParamArgs,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "edge-list")]
        format: GraphFormat,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run the claim checklist and print a certificate.
    #[command(name = "verify-t1", alias = "verify-theorem1")]
    VerifyT1 {
        #[command(flatten)]
        params: ParamArgs,
        /// Print 0 for every elapsed_ms field, for byte-identical output.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run the bound argument on an instance file and print the report.
    #[command(name = "verify-t2", alias = "verify-theorem2")]
    VerifyT2 {
        instance: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    h: u32,
}

#[derive(Args, Debug)]
struct CapArgs {
    #[arg(long)]
    order_cap: Option<u128>,
    #[arg(long)]
    exponent_cap: Option<u128>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

impl CapArgs {
    fn caps(&self) -> Result<Caps, String> {
        let mut caps = Caps::default();
        if let Some(c) = self.order_cap {
            caps.order_cap = c;
        }
        if let Some(c) = self.exponent_cap {
            caps.exponent_cap = c;
        }
        if caps.order_cap == 0 || caps.exponent_cap == 0 {
            return Err("caps must be positive".into());
        }
        if let Some(s) = self.time_limit {
            caps = caps.with_time_limit(Duration::from_secs(s));
        }
        Ok(caps)
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Cap(_) => EXIT_CAP,
        Error::Invariant(_) => EXIT_FAIL,
        _ => EXIT_INPUT,
    }
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let msg = match e {
        Error::NotPrime(_) => "p must be prime".to_string(),
        e => e.to_string(),
    };
    let _ = writeln!(err, "error: {msg}");
    error_code(e)
}

fn params(p: &ParamArgs, caps: Caps) -> Result<ConstructionParams, Error> {
    ConstructionParams::with_caps(p.p, p.h, caps)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn write_file(path: &Path, bytes: &[u8], err: &mut dyn Write) -> Result<(), i32> {
    std::fs::write(path, bytes).map_err(|e| {
        let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn construct(
    p: &ParamArgs,
    out: &Path,
    format: GraphFormat,
    caps: Caps,
    stdout: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let params = match params(p, caps) {
        Ok(v) => v,
        Err(e) => return report_error(err, &e),
    };
    if params.is_degenerate() {
        let _ = writeln!(err, "warning: (p, h) = (2, 1) is degenerate: a = a^-1 and b = b^-1, valency drops to 2p");
    } else if !params.in_stated_family() {
        let _ = writeln!(err, "note: h = 1 lies outside the stated family (h >= 2)");
    }
    let bundle = match build_bundle(params) {
        Ok(b) => b,
        Err(e) => return report_error(err, &e),
    };
    let order = bundle.big_group.order(&caps).expect("order computed during construction");
    let graph = bundle.graph();
    let instance = VTInstance { graph: graph.clone(), group: bundle.big_group.clone(), base_vertex: 0 };
    let files: [(String, Vec<u8>); 4] = [
        (format.extension().to_string(), export_graph(graph, format)),
        ("big.gens".into(), write_perms(bundle.big_group.generators()).into_bytes()),
        ("small.gens".into(), write_perms(bundle.small_group.generators()).into_bytes()),
        ("instance".into(), instance.to_text().into_bytes()),
    ];
    for (suffix, bytes) in &files {
        if let Err(code) = write_file(&with_suffix(out, suffix), bytes, err) {
            return code;
        }
    }
    let _ = writeln!(stdout, "{} {} {} {} {}", params.p, params.h, graph.order(), bundle.valency(), order);
    EXIT_PASS
}

fn verify_t1(p: &ParamArgs, no_timing: bool, caps: Caps, stdout: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let params = match params(p, caps) {
        Ok(v) => v,
        Err(e) => return report_error(err, &e),
    };
    let report = match verify_theorem1(params) {
        Ok(r) => r,
        Err(e) => return report_error(err, &e),
    };
    let _ = stdout.write_all(report.to_certificate(!no_timing).as_bytes());
    for c in &report.claims {
        if let Some(d) = &c.detail {
            let _ = writeln!(err, "{} {}: {d}", c.id, c.status);
        }
    }
    if report.any_failed() {
        EXIT_FAIL
    } else if report.any_skipped() {
        EXIT_PARTIAL
    } else {
        EXIT_PASS
    }
}

fn verify_t2(path: &Path, caps: Caps, stdout: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return EXIT_INPUT;
        }
    };
    let inst = match VTInstance::parse(&text) {
        Ok(i) => i,
        Err(e) => return report_error(err, &e),
    };
    match bound_report(&inst, &caps) {
        Ok(r) => {
            let _ = stdout.write_all(r.to_text().as_bytes());
            if r.passes() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => report_error(err, &e),
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_PASS
            };
            return code;
        }
    };
    let caps_of = |c: &CapArgs, stderr: &mut dyn Write| {
        c.caps().map_err(|m| {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_INPUT
        })
    };
    match &cli.command {
        Command::Construct { params, out, format, caps } => match caps_of(caps, stderr) {
            Ok(c) => construct(params, out, *format, c, stdout, stderr),
            Err(code) => code,
        },
        Command::VerifyT1 { params, no_timing, caps } => match caps_of(caps, stderr) {
            Ok(c) => verify_t1(params, *no_timing, c, stdout, stderr),
            Err(code) => code,
        },
        Command::VerifyT2 { instance, caps } => match caps_of(caps, stderr) {
            Ok(c) => verify_t2(instance, c, stdout, stderr),
            Err(code) => code,
        },
    }
}
