//! `u2point`: command-line driver for the point-interaction library.
//!
//! Exit codes: 0 success, 1 failed verification or computation, 2 usage error.

mod config;
mod output;
mod suites;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use u2point::boxspec::SpectrumReport;
use u2point::lineops::{k_sweep, Channel};
use u2point::u2core::angle_from_length;
use u2point::{
    berry_phase, bound_states, box_spectrum, mobius_check, sweep_torus, track_levels, BerryPhase, Cycle, Error,
};

use config::{
    apply_file, AnholonomySection, BoxSection, CycleArg, EdgeSpec, InteractionSection, OutputSection, RunConfig,
    ScatterSection, SideArg, SpectrumSection, Suite, SweepSection, VerifySection,
};
use output::Emitter;

#[derive(Parser)]
#[command(name = "u2point", version, about = "Point interactions on the line with U(2) boundary conditions")]
struct Cli {
    /// JSON config file; its values override the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: $U2POINT_OUT_DIR, else the current directory).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// File name stem for the outputs.
    #[arg(long, global = true)]
    stem: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Read the angle flags in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct InteractionArgs {
    #[arg(long, allow_negative_numbers = true, conflicts_with = "l_plus")]
    theta_plus: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "l_minus")]
    theta_minus: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Channel length `L₊ = L₀ cot(θ₊/2)` instead of `--theta-plus`.
    #[arg(long = "L-plus", allow_negative_numbers = true)]
    l_plus: Option<f64>,
    #[arg(long = "L-minus", allow_negative_numbers = true)]
    l_minus: Option<f64>,
    #[arg(long)]
    l0: Option<f64>,
}

#[derive(Args, Default)]
struct BoxArgs {
    /// Box half-length `l`.
    #[arg(long = "box-l")]
    l: Option<f64>,
    /// Edge condition: dirichlet, neumann or a Robin length.
    #[arg(long, allow_negative_numbers = true)]
    edge: Option<EdgeSpec>,
    #[arg(long, allow_negative_numbers = true)]
    e_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    e_max: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Bound states on the line.
    Bound {
        #[command(flatten)]
        interaction: InteractionArgs,
    },
    /// Reflection and transmission over a range of wavenumbers.
    Scatter {
        #[command(flatten)]
        interaction: InteractionArgs,
        #[arg(long)]
        k_min: Option<f64>,
        #[arg(long)]
        k_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Box spectrum.
    Spectrum {
        #[command(flatten)]
        interaction: InteractionArgs,
        #[command(flatten)]
        r#box: BoxArgs,
        /// Lowest N levels instead of the energy window.
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Torus sweep of the eigenphases and the swap identification check.
    Sweep {
        #[command(flatten)]
        r#box: BoxArgs,
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Run a named invariant suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        interaction: InteractionArgs,
        #[command(flatten)]
        r#box: BoxArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Level continuation and geometric phase around a closed cycle.
    Anholonomy {
        #[command(flatten)]
        interaction: InteractionArgs,
        #[command(flatten)]
        r#box: BoxArgs,
        #[arg(long, value_enum)]
        cycle: Option<CycleArg>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        band: Option<usize>,
        /// Grid points per half for the eigenfunctions.
        #[arg(long)]
        grid: Option<usize>,
    },
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::InvalidBox(_)
            | Error::BadSigma { .. }
            | Error::NotUnitary { .. }
            | Error::OpenCycle { .. }
            | Error::WrongCycleKind { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl InteractionArgs {
    fn section(&self, degrees: bool) -> InteractionSection {
        let ang = |x: Option<f64>| x.map(|v| if degrees { v.to_radians() } else { v });
        let mut s = InteractionSection::default();
        set(&mut s.l0, self.l0);
        set(&mut s.theta_plus, ang(self.theta_plus));
        set(&mut s.theta_minus, ang(self.theta_minus));
        set(&mut s.mu, ang(self.mu));
        set(&mut s.nu, ang(self.nu));
        set(&mut s.theta_plus, self.l_plus.map(|l| angle_from_length(l, s.l0)));
        set(&mut s.theta_minus, self.l_minus.map(|l| angle_from_length(l, s.l0)));
        s
    }
}

impl BoxArgs {
    fn section(&self) -> BoxSection {
        let mut s = BoxSection::default();
        set(&mut s.l, self.l);
        set(&mut s.edge, self.edge);
        set(&mut s.e_min, self.e_min);
        set(&mut s.e_max, self.e_max);
        set(&mut s.tol, self.tol);
        s
    }
}

fn build_config(cli: &Cli) -> CliResult<RunConfig> {
    let deg = cli.degrees;
    let mut cfg = RunConfig {
        command: String::new(),
        seed: cli.seed.unwrap_or(0),
        interaction: None,
        box_: None,
        scatter: None,
        spectrum: None,
        sweep: None,
        verify: None,
        anholonomy: None,
        output: OutputSection { dir: output::default_out_dir(), stem: String::new() },
    };
    let stem = match &cli.command {
        Command::Bound { interaction } => {
            cfg.command = "bound".into();
            cfg.interaction = Some(interaction.section(deg));
            "bound".to_string()
        }
        Command::Scatter { interaction, k_min, k_max, steps, side } => {
            cfg.command = "scatter".into();
            cfg.interaction = Some(interaction.section(deg));
            cfg.scatter = Some(ScatterSection {
                k_min: k_min.unwrap_or(0.1),
                k_max: k_max.unwrap_or(10.0),
                steps: steps.unwrap_or(100),
                side: side.unwrap_or(SideArg::Plus),
            });
            "scatter".to_string()
        }
        Command::Spectrum { interaction, r#box, levels } => {
            cfg.command = "spectrum".into();
            cfg.interaction = Some(interaction.section(deg));
            cfg.box_ = Some(r#box.section());
            cfg.spectrum = Some(SpectrumSection { levels: *levels });
            "spectrum".to_string()
        }
        Command::Sweep { r#box, resolution, levels } => {
            cfg.command = "sweep".into();
            cfg.box_ = Some(r#box.section());
            cfg.sweep = Some(SweepSection {
                resolution: resolution.unwrap_or(8),
                levels: levels.unwrap_or(u2point::atlas::DEFAULT_LEVELS),
            });
            "sweep".to_string()
        }
        Command::Verify { suite, interaction, r#box, samples } => {
            cfg.command = "verify".into();
            cfg.interaction = Some(interaction.section(deg));
            cfg.box_ = Some(r#box.section());
            cfg.verify = Some(VerifySection { suite: *suite, samples: *samples });
            format!("verify_{suite}")
        }
        Command::Anholonomy { interaction, r#box, cycle, steps, levels, band, grid } => {
            cfg.command = "anholonomy".into();
            cfg.interaction = Some(interaction.section(deg));
            cfg.box_ = Some(r#box.section());
            cfg.anholonomy = Some(AnholonomySection {
                cycle: cycle.unwrap_or(CycleArg::ThetaPlus),
                steps: steps.unwrap_or(400),
                levels: levels.unwrap_or(8),
                band: band.unwrap_or(0),
                grid: grid.unwrap_or(200),
            });
            "anholonomy".to_string()
        }
    };
    cfg.output.stem = cli.stem.clone().unwrap_or(stem);
    if let Some(d) = &cli.out_dir {
        cfg.output.dir = d.clone();
    }
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {} is not JSON: {e}", path.display())))?;
        cfg = apply_file(&cfg, &file).map_err(CliError::Usage)?;
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> CliResult<()> {
    if let Some(i) = &cfg.interaction {
        if ![i.theta_plus, i.theta_minus, i.mu, i.nu].iter().all(|x| x.is_finite()) {
            return usage("interaction angles must be finite");
        }
        if !(i.l0 > 0.0 && i.l0.is_finite()) {
            return usage("l0 must be positive and finite");
        }
    }
    if let Some(b) = &cfg.box_ {
        b.box_config().validate()?;
    }
    if let Some(s) = &cfg.scatter {
        if !(s.k_min > 0.0 && s.k_max >= s.k_min && s.k_max.is_finite()) || s.steps == 0 {
            return usage("scatter needs 0 < k_min <= k_max and at least one step");
        }
    }
    if let Some(a) = &cfg.anholonomy {
        if a.steps < 2 || a.levels == 0 {
            return usage("anholonomy needs at least 2 steps and 1 level");
        }
    }
    if cfg.output.stem.is_empty() || cfg.output.stem.contains(['/', '\\']) {
        return usage("output stem must be a plain, non-empty file name");
    }
    Ok(())
}

fn channel_name(c: Channel) -> &'static str {
    match c {
        Channel::Plus => "plus",
        Channel::Minus => "minus",
    }
}

/// Comma-joined, 17 significant digits, `-0` printed as `0`.
fn row(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{:.16e}", x + 0.0)).collect::<Vec<_>>().join(",")
}

fn cmd_bound(cfg: &RunConfig, out: &mut Emitter) -> CliResult<bool> {
    let p = cfg.interaction.unwrap().interaction();
    let states = bound_states(&p);
    let mut csv =
        String::from("index,channel,kappa,energy,coeff_plus_re,coeff_plus_im,coeff_minus_re,coeff_minus_im\n");
    for (i, s) in states.iter().enumerate() {
        let _ = writeln!(
            csv,
            "{},{},{}",
            i + 1,
            channel_name(s.channel),
            row(&[s.kappa, s.energy, s.coeff_plus.re, s.coeff_plus.im, s.coeff_minus.re, s.coeff_minus.im])
        );
        println!(
            "bound state {}: channel {}, kappa = {:.12}, E = {:.12}",
            i + 1,
            channel_name(s.channel),
            s.kappa,
            s.energy
        );
    }
    if states.is_empty() {
        println!("no bound states");
    }
    out.csv(".csv", &csv)?;
    Ok(true)
}

fn cmd_scatter(cfg: &RunConfig, out: &mut Emitter) -> CliResult<bool> {
    let p = cfg.interaction.unwrap().interaction();
    let s = cfg.scatter.unwrap();
    let rows = k_sweep(&p, s.k_min, s.k_max, s.steps, s.side.into());
    let mut csv = String::from("k,r_re,r_im,t_re,t_im,reflection,transmission\n");
    for r in &rows {
        let _ = writeln!(csv, "{}", row(&[r.k, r.r.re, r.r.im, r.t.re, r.t.im, r.r.norm_sqr(), r.t.norm_sqr()]));
    }
    println!("{} wavenumbers in [{}, {}]", rows.len(), s.k_min, s.k_max);
    out.csv(".csv", &csv)?;
    Ok(true)
}

fn cmd_spectrum(cfg: &RunConfig, out: &mut Emitter) -> CliResult<bool> {
    let p = cfg.interaction.unwrap().interaction();
    let bx = cfg.box_.unwrap().box_config();
    let spec = match cfg.spectrum.and_then(|s| s.levels) {
        Some(n) => u2point::boxspec::merge_levels(u2point::boxspec::box_lowest_tagged(&p, &bx, n)?, bx.merge_tol()),
        None => box_spectrum(&p, &bx)?,
    };
    for (i, l) in spec.levels.iter().enumerate() {
        println!("{:>4}  E = {:.12}  x{}  {}", i + 1, l.energy, l.multiplicity, l.channel.as_str());
    }
    out.csv(".csv", &spec.to_csv())?;
    out.json(".json", &SpectrumReport::new(&spec, &bx))?;
    Ok(true)
}

fn cmd_sweep(cfg: &RunConfig, out: &mut Emitter) -> CliResult<bool> {
    let bx = cfg.box_.unwrap().box_config();
    let s = cfg.sweep.unwrap();
    let map = sweep_torus(s.resolution, &bx, s.levels)?;
    let rep = mobius_check(&map);
    println!(
        "swap symmetric: {}, distinct off-diagonal fraction: {:.4} ({}/{}), self-dual boundary: {}",
        rep.swap_symmetric,
        rep.distinct_fraction,
        rep.distinct_pairs,
        rep.off_diagonal_pairs,
        rep.boundary_is_self_dual
    );
    println!("{}", if rep.passed { "PASS sweep" } else { "FAIL sweep" });
    out.csv(".csv", &map.to_csv())?;
    out.csv("_gluing.csv", &map.gluing_csv())?;
    out.json("_mobius.json", &rep)?;
    Ok(rep.passed)
}

fn cmd_verify(cfg: &RunConfig, out: &mut Emitter) -> CliResult<bool> {
    let v = cfg.verify.unwrap();
    let samples = v.samples.unwrap_or_else(|| suites::default_samples(v.suite));
    let bx = cfg.box_.unwrap().box_config();
    let p = cfg.interaction.unwrap().interaction();
    let rep = suites::run(v.suite, samples, cfg.seed, &bx, &p)?;
    for c in &rep.checks {
        println!(
            "{} {}: max residual {:.3e} (tolerance {:.1e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.max_residual,
            c.tolerance
        );
    }
    println!("{} {}", if rep.passed { "PASS" } else { "FAIL" }, v.suite);
    out.json(".json", &rep)?;
    Ok(rep.passed)
}

#[derive(Serialize)]
struct AnholonomyReport {
    cycle: CycleArg,
    steps: usize,
    levels: usize,
    shift_plus: i64,
    shift_minus: i64,
    permutation_plus: Vec<Option<usize>>,
    permutation_minus: Vec<Option<usize>>,
    band: usize,
    /// Sphere cycles only.
    berry: Option<BerryPhase<f64>>,
}

fn cmd_anholonomy(cfg: &RunConfig, out: &mut Emitter) -> CliResult<bool> {
    let i = cfg.interaction.unwrap();
    let bx = cfg.box_.unwrap().box_config();
    let a = cfg.anholonomy.unwrap();
    let cycle = match a.cycle {
        CycleArg::ThetaPlus => Cycle::theta_plus_loop(i.theta_minus, i.mu, i.nu, a.steps)?,
        CycleArg::NuCircle => Cycle::nu_circle(i.theta_plus, i.theta_minus, i.mu, a.steps)?,
    };
    let cycle = Cycle { nodes: cycle.nodes.iter().map(|n| n.with_l0(i.l0)).collect(), kind: cycle.kind };
    let tracking = track_levels(&cycle, &bx, a.levels)?;
    let berry = match a.cycle {
        CycleArg::NuCircle => Some(berry_phase(&cycle, a.band, &bx, a.grid)?),
        CycleArg::ThetaPlus => None,
    };
    println!("level shift around the cycle: plus {}, minus {}", tracking.shift[0], tracking.shift[1]);
    if let Some(b) = &berry {
        println!(
            "band {}: phase {:.12} (error estimate {:.2e}), solid angle {:.12}",
            a.band,
            b.phase,
            b.estimated_error,
            b.solid_angle.unwrap_or(f64::NAN)
        );
    }
    let rep = AnholonomyReport {
        cycle: a.cycle,
        steps: a.steps,
        levels: a.levels,
        shift_plus: tracking.shift[0],
        shift_minus: tracking.shift[1],
        permutation_plus: tracking.permutation(0),
        permutation_minus: tracking.permutation(1),
        band: a.band,
        berry,
    };
    out.csv("_levels.csv", &tracking.to_csv())?;
    out.json(".json", &rep)?;
    Ok(true)
}

fn run(cli: &Cli) -> CliResult<bool> {
    let cfg = build_config(cli)?;
    let mut out = Emitter::new(&cfg);
    let ok = match cfg.command.as_str() {
        "bound" => cmd_bound(&cfg, &mut out)?,
        "scatter" => cmd_scatter(&cfg, &mut out)?,
        "spectrum" => cmd_spectrum(&cfg, &mut out)?,
        "sweep" => cmd_sweep(&cfg, &mut out)?,
        "verify" => cmd_verify(&cfg, &mut out)?,
        "anholonomy" => cmd_anholonomy(&cfg, &mut out)?,
        other => unreachable!("unknown command {other}"),
    };
    for p in &out.written {
        eprintln!("wrote {}", p.display());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
