//! `atomchip`: run device-model channels and reference scenarios from the shell.
//!
//! Exit status: 0 on success, 1 when the physics refuses the request (error
//! cells in the table, no barrier, indeterminate report), 2 for bad input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use atomchip::domain::{AtomSpecies, TrapContext};
use atomchip::magnetostatics::BarrierProfile;
use atomchip::scenario::{
    builtin, builtin_names, design_report, run_scenario, Cell, Channel, ChipDesign, Column, Format, ParamValue,
    Provenance, ResultTable, Scenario, Verdict,
};
use atomchip::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "atomchip", version, about = "Atom-chip wire trap modeling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Scenario file (JSON): params, sweep, outputs, seed.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Built-in scenario name; `report` also accepts `slab`.
    #[arg(long, global = true)]
    scenario: Option<String>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override one parameter, e.g. `--set d=0.8` or `--set "I=40 uA"`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Crossing-wire barrier: height, tunneling probability, current sensitivity.
    Barrier {
        /// Sample the potential along x instead.
        #[arg(long)]
        profile: bool,
    },
    /// Lattice resolution height and potential amplitude.
    Resolution,
    /// Field corrugation from edge roughness.
    Corrugation,
    /// Johnson-noise spin flip, decoherence and heating rates.
    Noise,
    /// Casimir-Polder potential of the surface and wire.
    Cp,
    /// Tunneling lifetime of a trapped cloud to the surface.
    Lifetime,
    /// Nanowire resistivity and safe current.
    Nanowire,
    /// Design report: gate operations per coherence time and verdict.
    Report,
    /// Run a scenario with its own outputs.
    Sweep,
    /// List built-in scenarios.
    List,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Barrier { .. } => "barrier",
            Command::Resolution => "resolution",
            Command::Corrugation => "corrugation",
            Command::Noise => "noise",
            Command::Cp => "cp",
            Command::Lifetime => "lifetime",
            Command::Nanowire => "nanowire",
            Command::Report => "report",
            Command::Sweep => "sweep",
            Command::List => "list",
        }
    }
}

fn channels(cmd: &Command) -> Option<Vec<Channel>> {
    use Channel::*;
    Some(match cmd {
        Command::Barrier { .. } => vec![BarrierHeight, TunnelProbability, Sensitivity],
        Command::Resolution => vec![ResolutionHeight, LatticeAmplitude],
        Command::Corrugation => vec![Corrugation],
        Command::Noise => vec![SpinFlip, SpinDecoherence, SpatialDecoherence, Heating, GeometryFactors, SuppressionRatio],
        Command::Cp => vec![Cp],
        Command::Lifetime => vec![TunnelLifetime],
        Command::Nanowire => vec![Resistivity, SafeCurrent],
        _ => return None,
    })
}

enum Failure {
    Config(String),
    Physics(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let config = e.is_config() || matches!(e, Error::UnknownState(_));
        if config {
            Failure::Config(e.to_string())
        } else {
            Failure::Physics(e.to_string())
        }
    }
}

fn parse_value(s: &str) -> ParamValue {
    match s.trim().parse::<f64>() {
        Ok(v) => ParamValue::Number(v),
        Err(_) => ParamValue::Text(s.trim().to_string()),
    }
}

fn load_scenario(c: &Common, name: &str, need: bool) -> Result<Scenario, Failure> {
    let mut sc = match (&c.config, &c.scenario) {
        (Some(_), Some(_)) => return Err(Failure::Config("give --config or --scenario, not both".into())),
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            Scenario::from_json(&text)?
        }
        (None, Some(n)) => builtin(n).ok_or_else(|| {
            Failure::Config(format!("unknown scenario `{n}`; built-ins: {}", builtin_names().join(", ")))
        })?,
        (None, None) if need => return Err(Failure::Config("sweep needs --config or --scenario".into())),
        (None, None) => Scenario {
            name: name.into(),
            params: Default::default(),
            sweep: Vec::new(),
            outputs: Vec::new(),
            seed: 0,
        },
    };
    for kv in &c.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Config(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        sc.params.insert(k.trim().to_string(), parse_value(v));
    }
    if let Some(seed) = c.seed {
        sc.seed = seed;
    }
    sc.validate()?;
    Ok(sc)
}

fn provenance(sc: &Scenario) -> Provenance {
    Provenance {
        scenario: sc.name.clone(),
        config_hash: sc.config_hash(),
        seed: sc.seed,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn barrier_profile(sc: &Scenario) -> Result<ResultTable, Failure> {
    if !sc.sweep.is_empty() {
        return Err(Failure::Config("--profile samples a single trap; drop the sweep".into()));
    }
    let p = sc.base_params()?;
    let ctx = TrapContext::new(p.get("d"), p.get("I"), p.get("B0"))?.with_energy(p.get("mu"));
    let b = BarrierProfile::sample(&ctx, &AtomSpecies::rb87(), p.get("span"), p.count("samples")?)?;
    const UK: f64 = 1.0 / (atomchip::domain::constants::KB * 1e-6);
    Ok(ResultTable {
        columns: vec![
            Column::si("x", "m").with_display("um", 1e6),
            Column::si("V", "J").with_display("uK", UK),
        ],
        rows: b.x.iter().zip(&b.v).map(|(&x, &v)| vec![Cell::Number(x), Cell::Number(v)]).collect(),
        provenance: provenance(sc),
    })
}

fn report(c: &Common) -> Result<(ResultTable, bool), Failure> {
    let (design, sc) = match (&c.config, c.scenario.as_deref()) {
        (None, None | Some("conclusion")) => {
            let sc = load_scenario(&Common { scenario: None, ..c.clone() }, "conclusion", false)?;
            (ChipDesign::conclusion(), sc)
        }
        (None, Some("slab")) => {
            let sc = load_scenario(&Common { scenario: None, ..c.clone() }, "slab", false)?;
            (ChipDesign::slab_comparator(), sc)
        }
        _ => {
            let sc = load_scenario(c, "report", false)?;
            let d = ChipDesign::from_params(&sc.base_params()?, sc.seed)?;
            (d, sc)
        }
    };
    // --set and --seed on a built-in design apply on top of its parameters
    let mut p = design.params.clone();
    for (k, v) in &sc.params {
        p.set(k, v)?;
    }
    let design = ChipDesign::from_params(&p, sc.seed)?;
    let gate = design.params.get("gateTime");
    let r = design_report(&design, gate, &AtomSpecies::rb87())?;
    let num = |v: Option<f64>| v.map(Cell::Number).unwrap_or_else(|| Cell::Text("n/a".into()));
    let detail = match &r.verdict {
        Verdict::Pass => String::new(),
        Verdict::Fail { reasons } => reasons.join("; "),
        Verdict::Indeterminate { cause } => cause.clone(),
    };
    let row = vec![
        Cell::Number(r.gate_time),
        num(r.spin_flip_rate),
        num(r.spin_decoherence_rate),
        num(r.tunnel_rate),
        num(r.corrugation),
        Cell::Number(r.corrugation_height_warning as u8 as f64),
        num(r.total_rate),
        num(r.coherence_time),
        num(r.gate_ops),
        Cell::Text(r.verdict.label().into()),
        Cell::Text(detail),
    ];
    let columns = vec![
        Column::si("gate_time", "s").with_display("ms", 1e3),
        Column::si("spin_flip_rate", "1/s"),
        Column::si("spin_decoherence_rate", "1/s"),
        Column::si("tunnel_rate", "1/s"),
        Column::si("dB_over_B", "1"),
        Column::si("height_warning", "1"),
        Column::si("total_rate", "1/s"),
        Column::si("coherence_time", "s"),
        Column::si("gate_ops", "1"),
        Column::si("verdict", ""),
        Column::si("reasons", ""),
    ];
    let indeterminate = matches!(r.verdict, Verdict::Indeterminate { .. });
    Ok((
        ResultTable {
            columns,
            rows: vec![row],
            provenance: provenance(&sc),
        },
        indeterminate,
    ))
}

fn emit(t: &ResultTable, c: &Common) -> Result<(), Failure> {
    let format = match c.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
    };
    let text = t.render(format)?;
    match &c.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Config(e.to_string()))
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let c = &cli.common;
    let (table, physics_failed) = match &cli.command {
        Command::List => {
            for n in builtin_names() {
                println!("{n}");
            }
            return Ok(());
        }
        Command::Report => report(c)?,
        Command::Barrier { profile: true } => (barrier_profile(&load_scenario(c, "barrier", false)?)?, false),
        Command::Sweep => (run_scenario(&load_scenario(c, "sweep", true)?)?, false),
        cmd => {
            let outputs = channels(cmd).expect("physics subcommand");
            let mut sc = load_scenario(c, cmd.name(), false)?;
            sc.outputs = outputs;
            (run_scenario(&sc)?, false)
        }
    };
    emit(&table, c)?;
    let errors = table.error_cells();
    if errors > 0 {
        return Err(Failure::Physics(format!("{errors} cell(s) could not be computed")));
    }
    if physics_failed {
        return Err(Failure::Physics("design verdict is indeterminate".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Physics(m)) => {
            eprintln!("atomchip: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("atomchip: {m}");
            ExitCode::from(2)
        }
    }
}
