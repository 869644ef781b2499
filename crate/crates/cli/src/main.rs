//! `gkh`: build pretzel, Montesinos and 2-bridge diagrams, compute the
//! homology of their double branched covers and check the (generalized)
//! Kauffman-Harary conjecture.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gkh_core::checker::{
    check, sweep, trefoil_sum_control, two_bridge_check, Conjecture, GkhReport, SweepConfig, SweepFamily, SweepReport,
    TwoBridgeReport, Verdict,
};
use gkh_core::coloring::crossing_matrix;
use gkh_core::diagram::{build_montesinos, export_pd, import_pd, MontesinosDesc, TangleFraction};
use gkh_core::homology::montesinos_presentation;
use gkh_core::{ArcId, LinkDiagram};

#[derive(Parser)]
#[command(name = "gkh", version, about = "Fox colorings, double branched cover homology and Kauffman-Harary checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Include matrices and the full diagram in the output.
    #[arg(long, short, global = true)]
    verbose: bool,
    /// Add a generation timestamp (output is otherwise byte-identical across runs).
    #[arg(long, global = true)]
    timestamps: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Pretzel link P(n_1, ..., n_k).
    Pretzel {
        #[arg(required = true, num_args = 2.., value_parser = parse_positive)]
        twists: Vec<u64>,
        #[command(flatten)]
        opts: CheckOpts,
    },
    /// Montesinos link from `m/n` tokens (a bare `n` means `1/n`).
    Montesinos {
        #[arg(required = true, num_args = 2.., value_parser = parse_fraction)]
        tangles: Vec<TangleFraction>,
        #[command(flatten)]
        opts: CheckOpts,
    },
    /// 2-bridge link of the `m/n` tangle, `m > n`.
    TwoBridge {
        #[arg(value_parser = parse_positive)]
        m: u64,
        #[arg(value_parser = parse_positive)]
        n: u64,
        /// Print the diagram instead of checking it.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// A diagram read from a planar-diagram file.
    Import {
        #[arg(long, value_name = "FILE")]
        pd: PathBuf,
        #[command(flatten)]
        opts: CheckOpts,
    },
    /// Check every family member within the bounds.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Number of tangles, `lo..hi` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range::<usize>)]
        k: RangeInclusive<usize>,
        /// Twist or denominator range, `lo..hi` (inclusive) or a single value.
        #[arg(long, value_parser = parse_range::<u64>)]
        n: RangeInclusive<u64>,
        /// Inject the connected sum of two trefoils as a negative control.
        #[arg(long)]
        control: bool,
    },
}

#[derive(Args)]
struct CheckOpts {
    /// Which conjecture to check.
    #[arg(long, value_enum, default_value = "gkh")]
    check: CheckArg,
    /// Arc whose homology class is set to zero.
    #[arg(long, default_value_t = 0)]
    pin: usize,
    /// Print the diagram instead of checking it.
    #[arg(long, value_enum)]
    emit: Option<Emit>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Kh,
    Gkh,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Pretzel,
    Montesinos,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    /// Planar-diagram text.
    Pd,
    /// Diagram JSON.
    Diagram,
}

fn parse_positive(s: &str) -> Result<u64, String> {
    match s.trim().parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(_) => Err(format!("`{s}` is not a positive integer")),
    }
}

fn parse_fraction(s: &str) -> Result<TangleFraction, String> {
    let (m, n) = match s.split_once('/') {
        Some((m, n)) => (m.trim().parse::<u64>(), n.trim().parse::<u64>()),
        None => (Ok(1), s.trim().parse::<u64>()),
    };
    let (Ok(m), Ok(n)) = (m, n) else {
        return Err(format!("`{s}` is not a fraction m/n or an integer"));
    };
    TangleFraction::new(m, n).map_err(|e| e.to_string())
}

fn parse_range<T: std::str::FromStr + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let parse = |t: &str| t.trim().parse::<T>().map_err(|_| format!("`{t}` is not a number"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(parse(lo)?..=parse(hi.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            Ok(v..=v)
        }
    }
}

enum Failure {
    Usage(String),
    Conjecture,
}

thread_local! {
    static OUT: std::cell::RefCell<String> = const { std::cell::RefCell::new(String::new()) };
}

macro_rules! out {
    ($($t:tt)*) => {
        OUT.with(|o| { use std::fmt::Write as _; let _ = write!(o.borrow_mut(), $($t)*); })
    };
}

macro_rules! outln {
    ($($t:tt)*) => {
        OUT.with(|o| { use std::fmt::Write as _; let _ = writeln!(o.borrow_mut(), $($t)*); })
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    OUT.with(|o| {
        use std::io::Write as _;
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(o.borrow().as_bytes()).and_then(|_| stdout.flush());
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Conjecture) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Pretzel { twists, opts } => {
            let desc = MontesinosDesc::pretzel(twists).map_err(|e| Failure::Usage(e.to_string()))?;
            single(cli, &build_montesinos(&desc), Some(&desc), opts)
        }
        Command::Montesinos { tangles, opts } => {
            let pairs: Vec<(u64, u64)> = tangles.iter().map(|t| (t.m, t.n)).collect();
            let desc = MontesinosDesc::new(&pairs).map_err(|e| Failure::Usage(e.to_string()))?;
            single(cli, &build_montesinos(&desc), Some(&desc), opts)
        }
        Command::Import { pd, opts } => {
            let text = std::fs::read_to_string(pd)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", pd.display())))?;
            let d = import_pd(&text).map_err(|e| Failure::Usage(format!("{}: {e}", pd.display())))?;
            single(cli, &d, None, opts)
        }
        Command::TwoBridge { m, n, emit } => {
            let report = two_bridge_check(*m, *n).map_err(|e| Failure::Usage(e.to_string()))?;
            if let Some(emit) = emit {
                let layout = gkh_core::diagram::build_two_bridge(*m, *n).expect("validated above");
                print_emit(&layout.diagram, *emit);
                return Ok(());
            }
            two_bridge(cli, &report)
        }
        Command::Sweep { family, k, n, control } => {
            let family = match family {
                FamilyArg::Pretzel => SweepFamily::Pretzel,
                FamilyArg::Montesinos => SweepFamily::Montesinos,
            };
            let mut config = SweepConfig::new(family, k.clone(), n.clone());
            if *control {
                config = config.with_control(trefoil_sum_control());
            }
            let report = sweep(&config).map_err(|e| Failure::Usage(e.to_string()))?;
            sweep_output(cli, &report)
        }
    }
}

fn print_emit(d: &LinkDiagram, emit: Emit) {
    match emit {
        Emit::Pd => out!("{}", export_pd(d)),
        Emit::Diagram => outln!("{}", serde_json::to_string_pretty(&d.export()).expect("serializable")),
    }
}

fn single(cli: &Cli, d: &LinkDiagram, desc: Option<&MontesinosDesc>, opts: &CheckOpts) -> Result<(), Failure> {
    if let Some(emit) = opts.emit {
        print_emit(d, emit);
        return Ok(());
    }
    let conjecture = match opts.check {
        CheckArg::Kh => Conjecture::Kh,
        CheckArg::Gkh => Conjecture::Gkh,
    };
    let report = check(d, conjecture, ArcId(opts.pin)).map_err(|e| Failure::Usage(e.to_string()))?;
    if cli.json {
        let mut v = to_value(&report);
        if cli.verbose {
            v["diagram_export"] = to_value(&d.export());
            v["crossing_matrix"] = to_value(&crossing_matrix(d));
            if let Some(desc) = desc {
                v["presentation_matrix"] = to_value(&montesinos_presentation(desc));
            }
        }
        emit_json(cli, v);
    } else {
        print_report_table(&report);
        if cli.verbose {
            outln!("crossing matrix:\n{:?}", crossing_matrix(d));
            if let Some(desc) = desc {
                outln!("presentation matrix:\n{:?}", montesinos_presentation(desc));
            }
        }
        print_timestamp(cli);
    }
    verdict_status(&report.verdict)
}

fn verdict_status(v: &Verdict) -> Result<(), Failure> {
    match v {
        Verdict::Fails => Err(Failure::Conjecture),
        _ => Ok(()),
    }
}

fn two_bridge(cli: &Cli, r: &TwoBridgeReport) -> Result<(), Failure> {
    if cli.json {
        emit_json(cli, to_value(r));
    } else {
        print_report_table(&r.gkh);
        let labels: Vec<String> = r.unreduced_labels.iter().map(ToString::to_string).collect();
        row("unreduced labels", labels.join(" "));
        row("H_1 = Z_m", r.h1_is_cyclic_m);
        row("monotone", r.monotone);
        row("within [0, m+n]", r.bounded);
        row("distinct mod m", r.distinct_mod_m);
        print_timestamp(cli);
    }
    if r.all_checks_pass() {
        Ok(())
    } else {
        Err(Failure::Conjecture)
    }
}

fn sweep_output(cli: &Cli, r: &SweepReport) -> Result<(), Failure> {
    if cli.json {
        emit_json(cli, to_value(r));
    } else {
        row("family", r.family);
        row("k", format!("{}..{}", r.bounds.k.start(), r.bounds.k.end()));
        row("n", format!("{}..{}", r.bounds.n.start(), r.bounds.n.end()));
        row("instances", r.instances);
        row("gkh holds", r.holds);
        row("gkh fails", r.fails);
        row("not applicable", r.not_applicable);
        row("kh applicable", r.kh.applicable);
        row("kh holds", r.kh.holds);
        row("kh fails", r.kh.fails);
        row("kh/gkh disagreements", r.kh.disagreements.len());
        row("routes compared", r.cross_validation.checked);
        row("route mismatches", r.cross_validation.mismatches.len());
        if let Some(c) = &r.cyclicity {
            row("cyclicity checked", c.checked);
            row("cyclicity disagreements", c.disagreements.len());
        }
        for f in &r.failures {
            let w = f.witness.as_ref().map(|w| format!(" arcs {:?} share {}", w.arcs, w.label)).unwrap_or_default();
            outln!("FAIL {}{w}", f.diagram);
        }
        for m in &r.cross_validation.mismatches {
            outln!(
                "MISMATCH {}: closed form {}, A_k {}, diagram {}",
                m.descriptor,
                m.closed_form,
                m.presentation,
                m.diagram
            );
        }
        for line in r.kh.disagreements.iter().chain(r.cyclicity.iter().flat_map(|c| &c.disagreements)) {
            outln!("DISAGREE {line}");
        }
        print_timestamp(cli);
    }
    if r.is_clean() {
        Ok(())
    } else {
        Err(Failure::Conjecture)
    }
}

fn print_report_table(r: &GkhReport) {
    row("diagram", &r.diagram);
    row("arcs", r.arc_count);
    row("crossings", r.crossing_count);
    row("components", r.components);
    row("H_1", &r.group);
    row("determinant", &r.determinant);
    row("conjecture", r.conjecture);
    row("verdict", r.verdict.as_str());
    if let Some(reason) = &r.reason {
        row("reason", reason);
    }
    if let Some(w) = &r.witness {
        row("witness", format!("arcs {} and {} share {}", w.arcs[0], w.arcs[1], w.label));
    }
    if let Some(e) = &r.coloring_evidence {
        let colors: Vec<String> = e.colors.iter().map(ToString::to_string).collect();
        row(&format!("{}-coloring", e.k), colors.join(" "));
    }
    if !r.labels.is_empty() {
        row("pinned arc", r.pinned_arc);
        row("distinct labels", format!("{} of {}", r.distinct_labels, r.arc_count));
        for (i, l) in r.labels.iter().enumerate() {
            row(&format!("  arc {i}"), l);
        }
    }
    for n in &r.notes {
        row("note", n);
    }
}

fn row(key: &str, value: impl std::fmt::Display) {
    outln!("{key:<24}{value}");
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn emit_json(cli: &Cli, mut v: Value) {
    if cli.timestamps {
        v["generated_at"] = json!(unix_seconds());
    }
    outln!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
}

fn print_timestamp(cli: &Cli) {
    if cli.timestamps {
        row("generated at", unix_seconds());
    }
}

fn unix_seconds() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}
