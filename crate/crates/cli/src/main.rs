//! Command-line front end for the switched micro-coil toolkit.
//!
//! Subcommands: `coil` (solenoid inductance), `steps` (reachable inductance
//! steps), `switch` (evaluate a switch word), `beam` (cantilever analysis),
//! `sweep` (parameter sweeps from a config file) and `verify` (reproduce the
//! reference tables). Interface units are micrometres, nanohenries, volts and
//! kilohertz; exit code 0 means success, 1 a usage/validation problem (or a
//! failed verification), 2 an internal error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use varicoil::cantilever::{
    bending_stiffness, frequency_response, modal_frequencies, pull_in_voltage, static_deflection,
    ActuationSide, BendingPlane, CantileverBeam,
};
use varicoil::coil::{quality_factor, solenoid_inductance, wire_resistance, CoilGeometry};
use varicoil::config::ConfigFile;
use varicoil::emit::{format_number, write_rows, EmitError, OutputFormat};
use varicoil::material::{CoreMaterial, MaterialCatalog};
use varicoil::report::{
    check_energy_consistency, reproduce_coil_table, reproduce_step_table, run_sweep, CellValue,
    ComparisonReport, Row, Verdict,
};
use varicoil::reference::ReferenceData;
use varicoil::switch::{enumerate_steps, parse_switch_word, total_inductance, SwitchWord};
use varicoil::units;

/// Numeric results keep 17 significant digits in every output format, so a
/// scripted pipeline never loses precision.
#[derive(Debug, Parser)]
#[command(name = "varicoil", version, about = "Switched micro-coil design toolkit")]
struct Cli {
    /// Write results to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Result format: csv or json (default is an aligned text table)
    #[arg(long, global = true, value_name = "FORMAT")]
    format: Option<String>,

    /// Structured configuration file (material overrides, [beam], [sweep])
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solenoid inductance of one coil design
    Coil(CoilArgs),
    /// Every reachable inductance step for a bank of n coils
    Steps(StepsArgs),
    /// Evaluate a switch word (one token per coil: S series, P parallel, O open)
    Switch(SwitchArgs),
    /// Cantilever switch analysis: modes, stiffness, pull-in, deflection, response
    Beam(BeamArgs),
    /// Run the parameter sweep defined in the configuration file
    Sweep,
    /// Reproduce the reference tables and fail on any mismatch
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct CoilArgs {
    /// Number of turns
    #[arg(long)]
    turns: u32,

    /// Winding cross-section, square micrometres
    #[arg(long, value_name = "UM2")]
    area_um2: f64,

    /// Coil length, micrometres
    #[arg(long, value_name = "UM")]
    length_um: f64,

    /// Relative permeability of the core (alternative: --material)
    #[arg(long, conflicts_with = "material")]
    mu_r: Option<f64>,

    /// Core material name from the catalog (alternative: --mu-r)
    #[arg(long)]
    material: Option<String>,

    /// Conductor cross-section, square micrometres
    #[arg(long, value_name = "UM2", default_value_t = 4.0)]
    wire_area_um2: f64,

    /// Core perimeter for winding-resistance estimation, micrometres
    #[arg(long, value_name = "UM")]
    core_perimeter_um: Option<f64>,

    /// Winding conductor material (used with --core-perimeter-um)
    #[arg(long, default_value = "Cu")]
    conductor: String,

    /// Frequency for the quality factor, kilohertz
    #[arg(long, value_name = "KHZ")]
    freq_khz: Option<f64>,
}

#[derive(Debug, Args)]
struct StepsArgs {
    /// Number of coils in the bank
    #[arg(long)]
    n: usize,

    /// Unit coil inductance, e.g. 1nH, 2.5uH, 1e-9H (bare numbers are nH)
    #[arg(long, value_name = "L", default_value = "1nH", value_parser = parse_inductance)]
    unit_l: f64,
}

#[derive(Debug, Args)]
struct SwitchArgs {
    /// Switch word, one token per coil, e.g. SSPPO
    #[arg(long)]
    word: String,

    /// Unit coil inductance, e.g. 1nH, 2.5uH, 1e-9H (bare numbers are nH)
    #[arg(long, value_name = "L", default_value = "1nH", value_parser = parse_inductance)]
    unit_l: f64,
}

#[derive(Debug, Args)]
struct BeamArgs {
    /// Beam length, micrometres (or set all geometry in the config file)
    #[arg(long, value_name = "UM")]
    length_um: Option<f64>,

    /// In-plane width (the switching direction), micrometres
    #[arg(long, value_name = "UM")]
    width_um: Option<f64>,

    /// Out-of-plane thickness, micrometres
    #[arg(long, value_name = "UM")]
    thickness_um: Option<f64>,

    /// Electrode gap, micrometres
    #[arg(long, value_name = "UM")]
    gap_um: Option<f64>,

    /// Electrode overlap area, square micrometres
    #[arg(long, value_name = "UM2")]
    electrode_area_um2: Option<f64>,

    /// Young's modulus, gigapascals
    #[arg(long, value_name = "GPA")]
    youngs_modulus_gpa: Option<f64>,

    /// Density, kilograms per cubic metre
    #[arg(long)]
    density: Option<f64>,

    /// Modal orders to report per bending plane
    #[arg(long, default_value_t = 3)]
    modes: usize,

    /// Also report the static tip deflection at this drive voltage
    #[arg(long, value_name = "V")]
    voltage: Option<f64>,

    /// Actuation side for --voltage
    #[arg(long, default_value = "left", value_parser = parse_side)]
    side: ActuationSide,

    /// DC bias for the small-signal response, volts
    #[arg(long, value_name = "V")]
    bias: Option<f64>,

    /// Emit the response table over a frequency grid (requires --bias)
    #[arg(long, requires = "bias")]
    response: bool,

    /// Response grid start, kilohertz
    #[arg(long, value_name = "KHZ", default_value_t = 1.0)]
    freq_start_khz: f64,

    /// Response grid stop, kilohertz
    #[arg(long, value_name = "KHZ", default_value_t = 100.0)]
    freq_stop_khz: f64,

    /// Response grid points
    #[arg(long, default_value_t = 200)]
    freq_points: usize,

    /// Mechanical quality factor of the resonance
    #[arg(long, default_value_t = 10.0)]
    q: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Write the full comparison reports as JSON to this file
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,

    /// Load the reference tables from this directory instead of the built-in copies
    #[arg(long, value_name = "DIR")]
    data_dir: Option<PathBuf>,
}

/// Inductance with an optional pH/nH/uH/mH/H suffix; bare numbers are nH.
fn parse_inductance(token: &str) -> Result<f64, String> {
    let lower = token.trim().to_ascii_lowercase();
    let (digits, scale) = if let Some(rest) = lower.strip_suffix("ph") {
        (rest, 1e-12)
    } else if let Some(rest) = lower.strip_suffix("nh") {
        (rest, 1e-9)
    } else if let Some(rest) = lower.strip_suffix("uh") {
        (rest, 1e-6)
    } else if let Some(rest) = lower.strip_suffix("µh") {
        (rest, 1e-6)
    } else if let Some(rest) = lower.strip_suffix("mh") {
        (rest, 1e-3)
    } else if let Some(rest) = lower.strip_suffix('h') {
        (rest, 1.0)
    } else {
        (lower.as_str(), 1e-9)
    };
    let magnitude: f64 = digits
        .trim()
        .parse()
        .map_err(|_| format!("`{token}` is not an inductance (examples: 1nH, 2.5uH, 1e-9H)"))?;
    let henries = magnitude * scale;
    if henries <= 0.0 || !henries.is_finite() {
        return Err(format!("inductance must be positive, got `{token}`"));
    }
    Ok(henries)
}

fn parse_side(token: &str) -> Result<ActuationSide, String> {
    match token.to_ascii_lowercase().as_str() {
        "left" => Ok(ActuationSide::Left),
        "right" => Ok(ActuationSide::Right),
        _ => Err(format!("`{token}` is not a side; expected left or right")),
    }
}

// ---------------------------------------------------------------------------
// Error-to-exit-code mapping
// ---------------------------------------------------------------------------

enum CliError {
    /// Bad input of any kind: exit 1.
    Usage(String),
    /// Environment or solver failure: exit 2.
    Internal(String),
}

impl CliError {
    fn usage(err: impl std::fmt::Display) -> Self {
        Self::Usage(err.to_string())
    }
}

impl From<varicoil::CoilError> for CliError {
    fn from(err: varicoil::CoilError) -> Self {
        Self::usage(err)
    }
}

impl From<varicoil::SwitchError> for CliError {
    fn from(err: varicoil::SwitchError) -> Self {
        Self::usage(err)
    }
}

impl From<varicoil::MaterialError> for CliError {
    fn from(err: varicoil::MaterialError) -> Self {
        Self::usage(err)
    }
}

impl From<varicoil::BeamError> for CliError {
    fn from(err: varicoil::BeamError) -> Self {
        Self::usage(err)
    }
}

impl From<varicoil::NetworkError> for CliError {
    fn from(err: varicoil::NetworkError) -> Self {
        match err {
            varicoil::NetworkError::SingularSystem => Self::Internal(err.to_string()),
            other => Self::usage(other),
        }
    }
}

impl From<varicoil::ReportError> for CliError {
    fn from(err: varicoil::ReportError) -> Self {
        match err {
            varicoil::ReportError::Reference(reference) => reference.into(),
            other => Self::usage(other),
        }
    }
}

impl From<varicoil::ReferenceError> for CliError {
    fn from(err: varicoil::ReferenceError) -> Self {
        match err {
            varicoil::ReferenceError::Io { .. } => Self::Internal(err.to_string()),
            other => Self::usage(other),
        }
    }
}

impl From<varicoil::ConfigError> for CliError {
    fn from(err: varicoil::ConfigError) -> Self {
        match err {
            varicoil::ConfigError::Io { .. } => Self::Internal(err.to_string()),
            other => Self::usage(other),
        }
    }
}

impl From<EmitError> for CliError {
    fn from(err: EmitError) -> Self {
        match err {
            EmitError::UnknownFormat(_) => Self::usage(err),
            other => Self::Internal(other.to_string()),
        }
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

fn render_text_table(rows: &[Row]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let headers: Vec<String> = first
        .column_names()
        .iter()
        .map(|name| name.to_string())
        .collect();
    let mut table: Vec<Vec<String>> = vec![headers];
    for row in rows {
        table.push(
            row.cells()
                .iter()
                .map(|(_, value)| match value {
                    CellValue::Number(x) => format_number(*x),
                    CellValue::Integer(i) => i.to_string(),
                    CellValue::Bool(b) => b.to_string(),
                    CellValue::Text(s) => s.clone(),
                    CellValue::Empty => String::new(),
                })
                .collect(),
        );
    }
    let columns = table[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|col| table.iter().map(|row| row[col].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, width)| format!("{cell:<width$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn deliver(rows: &[Row], format: Option<&str>, out: Option<&Path>) -> Result<(), CliError> {
    let format = format.map(|token| token.parse::<OutputFormat>()).transpose()?;
    match (format, out) {
        (Some(format), Some(path)) => {
            let file = std::fs::File::create(path).map_err(|err| {
                CliError::Internal(format!("cannot write `{}`: {err}", path.display()))
            })?;
            write_rows(rows, format, std::io::BufWriter::new(file))?;
        }
        (Some(format), None) => {
            let stdout = std::io::stdout();
            write_rows(rows, format, stdout.lock())?;
        }
        (None, Some(path)) => {
            std::fs::write(path, render_text_table(rows)).map_err(|err| {
                CliError::Internal(format!("cannot write `{}`: {err}", path.display()))
            })?;
        }
        (None, None) => {
            print!("{}", render_text_table(rows));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn catalog_with_overrides(config: Option<&ConfigFile>) -> Result<MaterialCatalog, CliError> {
    let mut catalog = MaterialCatalog::builtin();
    if let Some(config) = config {
        config.apply_materials(&mut catalog)?;
    }
    Ok(catalog)
}

fn cmd_coil(args: &CoilArgs, config: Option<&ConfigFile>) -> Result<Vec<Row>, CliError> {
    let catalog = catalog_with_overrides(config)?;
    let material = match (&args.mu_r, &args.material) {
        (Some(mu_r), None) => CoreMaterial::new("custom", *mu_r, None)?,
        (None, Some(name)) => catalog.lookup(name)?.clone(),
        (None, None) => {
            return Err(CliError::Usage(
                "the coil core needs either --mu-r or --material".to_string(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting flags"),
    };
    let geometry = CoilGeometry::from_microns(
        args.turns,
        args.area_um2,
        args.length_um,
        args.wire_area_um2,
        0.0,
    )?;
    let inductance = solenoid_inductance(&geometry, &material);

    let mut row = Row::new();
    row.push("turns", CellValue::Integer(args.turns as i64));
    row.push("area_um2", CellValue::Number(args.area_um2));
    row.push("length_um", CellValue::Number(args.length_um));
    row.push("mu_r", CellValue::Number(material.mu_r()));
    row.push(
        "inductance_nh",
        CellValue::Number(units::henries_to_nanohenries(inductance)),
    );
    if let Some(perimeter_um) = args.core_perimeter_um {
        let conductor = catalog.lookup(&args.conductor)?;
        let resistance = wire_resistance(
            &geometry,
            units::microns_to_meters(perimeter_um),
            conductor,
        )?;
        row.push("resistance_ohm", CellValue::Number(resistance));
        if let Some(freq_khz) = args.freq_khz {
            let q = quality_factor(
                inductance,
                resistance,
                units::kilohertz_to_hertz(freq_khz),
            )?;
            row.push("q_factor", CellValue::Number(q));
        }
    }
    Ok(vec![row])
}

fn cmd_steps(args: &StepsArgs) -> Result<Vec<Row>, CliError> {
    let table = enumerate_steps(args.n, args.unit_l)?;
    let rows = table
        .entries()
        .iter()
        .enumerate()
        .map(|(index, entry)| {
            let mut row = Row::new();
            row.push("step", CellValue::Integer(index as i64 + 1));
            row.push(
                "series",
                CellValue::Integer(entry.configuration.series_count() as i64),
            );
            row.push(
                "parallel",
                CellValue::Integer(entry.configuration.parallel_count() as i64),
            );
            row.push("factor", CellValue::Number(entry.factor));
            row.push(
                "inductance_nh",
                CellValue::Number(units::henries_to_nanohenries(entry.inductance)),
            );
            row
        })
        .collect();
    Ok(rows)
}

fn cmd_switch(args: &SwitchArgs) -> Result<Vec<Row>, CliError> {
    let word = SwitchWord::from_text(&args.word)?;
    let parsed = parse_switch_word(&word)?;
    if let Some(note) = &parsed.note {
        eprintln!("note: {note}");
    }
    let config = parsed.configuration;
    let inductance = total_inductance(&config, args.unit_l)?;
    let mut row = Row::new();
    row.push("word", CellValue::Text(args.word.to_ascii_uppercase()));
    row.push("series", CellValue::Integer(config.series_count() as i64));
    row.push(
        "parallel",
        CellValue::Integer(config.parallel_count() as i64),
    );
    row.push("factor", CellValue::Number(config.inductance_factor()));
    row.push(
        "inductance_nh",
        CellValue::Number(units::henries_to_nanohenries(inductance)),
    );
    Ok(vec![row])
}

fn beam_from_args(args: &BeamArgs, config: Option<&ConfigFile>) -> Result<CantileverBeam, CliError> {
    let flags = [
        args.length_um,
        args.width_um,
        args.thickness_um,
        args.gap_um,
        args.electrode_area_um2,
        args.youngs_modulus_gpa,
        args.density,
    ];
    if flags.iter().all(Option::is_some) {
        return Ok(CantileverBeam::from_interface_units(
            args.length_um.unwrap(),
            args.width_um.unwrap(),
            args.thickness_um.unwrap(),
            args.youngs_modulus_gpa.unwrap(),
            args.density.unwrap(),
            args.gap_um.unwrap(),
            args.electrode_area_um2.unwrap(),
        )?);
    }
    if flags.iter().any(Option::is_some) {
        return Err(CliError::Usage(
            "set all of --length-um --width-um --thickness-um --gap-um \
             --electrode-area-um2 --youngs-modulus-gpa --density, or none and use --config"
                .to_string(),
        ));
    }
    let config = config.ok_or_else(|| {
        CliError::Usage("beam geometry needs the flags or a --config with a [beam] section".to_string())
    })?;
    Ok(config.beam()?)
}

fn cmd_beam(args: &BeamArgs, config: Option<&ConfigFile>) -> Result<Vec<Row>, CliError> {
    let beam = beam_from_args(args, config)?;

    if args.response {
        let bias = args.bias.expect("clap enforces --bias with --response");
        if args.freq_points == 0 {
            return Err(CliError::Usage("--freq-points must be at least 1".to_string()));
        }
        let grid: Vec<f64> = (0..args.freq_points)
            .map(|index| {
                let fraction = if args.freq_points == 1 {
                    0.0
                } else {
                    index as f64 / (args.freq_points - 1) as f64
                };
                units::kilohertz_to_hertz(
                    args.freq_start_khz + (args.freq_stop_khz - args.freq_start_khz) * fraction,
                )
            })
            .collect();
        let response = frequency_response(&beam, bias, &grid, args.q)?;
        let rows = response
            .points
            .iter()
            .map(|point| {
                let mut row = Row::new();
                row.push(
                    "frequency_khz",
                    CellValue::Number(units::hertz_to_kilohertz(point.frequency)),
                );
                row.push("amplitude_m_per_v", CellValue::Number(point.amplitude));
                row
            })
            .collect();
        return Ok(rows);
    }

    let mut rows = Vec::new();
    let mut push = |quantity: &str, value: CellValue| {
        let mut row = Row::new();
        row.push("quantity", CellValue::Text(quantity.to_string()));
        row.push("value", value);
        rows.push(row);
    };

    let modes = modal_frequencies(&beam, args.modes.max(1))?;
    for mode in modes.modes() {
        let plane = match mode.plane {
            BendingPlane::InPlane => "in_plane",
            BendingPlane::OutOfPlane => "out_of_plane",
        };
        push(
            &format!("mode_{plane}_{}_khz", mode.order),
            CellValue::Number(units::hertz_to_kilohertz(mode.frequency)),
        );
    }
    push(
        "stiffness_in_plane_n_per_m",
        CellValue::Number(bending_stiffness(&beam, BendingPlane::InPlane)),
    );
    push(
        "stiffness_out_of_plane_n_per_m",
        CellValue::Number(bending_stiffness(&beam, BendingPlane::OutOfPlane)),
    );
    push(
        "pull_in_voltage_v",
        CellValue::Number(pull_in_voltage(&beam)),
    );
    if let Some(voltage) = args.voltage {
        let deflection = static_deflection(&beam, voltage, args.side)?;
        push(
            "tip_displacement_um",
            CellValue::Number(units::meters_to_microns(deflection.tip_displacement)),
        );
        push("stable", CellValue::Bool(deflection.stable));
    }
    if let Some(bias) = args.bias {
        let response = frequency_response(&beam, bias, &[1.0], args.q)?;
        push(
            "effective_stiffness_n_per_m",
            CellValue::Number(response.effective_stiffness),
        );
        push(
            "effective_frequency_khz",
            CellValue::Number(units::hertz_to_kilohertz(response.effective_frequency)),
        );
    }
    Ok(rows)
}

fn cmd_sweep(config: Option<&ConfigFile>) -> Result<Vec<Row>, CliError> {
    let config = config.ok_or_else(|| {
        CliError::Usage("sweep needs --config with a [sweep] section".to_string())
    })?;
    let spec = config.sweep()?;
    Ok(run_sweep(&spec)?)
}

fn load_reference(data_dir: Option<&Path>) -> Result<ReferenceData, CliError> {
    match data_dir {
        Some(dir) => Ok(ReferenceData::load_dir(dir)?),
        None => Ok(ReferenceData::builtin()),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let data = load_reference(args.data_dir.as_deref())?;
    let reports = [
        reproduce_step_table(&data, 5, 1.0)?,
        reproduce_coil_table(&data)?,
        check_energy_consistency(&data)?,
    ];

    let mut mismatches = 0;
    for report in &reports {
        mismatches += report.mismatch_count();
        println!(
            "{}: {} rows, {} match, {} flagged, {} mismatch",
            report.title,
            report.rows.len(),
            report.rows.len() - report.flagged_count() - report.mismatch_count(),
            report.flagged_count(),
            report.mismatch_count()
        );
        for row in &report.rows {
            match row.verdict {
                Verdict::Match => {}
                Verdict::FlaggedDiscrepancy => println!("  flagged: {}", row.description),
                Verdict::Mismatch => println!(
                    "  MISMATCH: {} (computed {}, reference {})",
                    row.description,
                    format_number(row.computed),
                    row.reference.map(format_number).unwrap_or_default()
                ),
            }
        }
    }

    if let Some(path) = &args.report {
        write_report_json(&reports, path)?;
    }

    Ok(if mismatches == 0 { 0 } else { 1 })
}

fn write_report_json(reports: &[ComparisonReport], path: &Path) -> Result<(), CliError> {
    #[derive(serde::Serialize)]
    struct FullReport<'a> {
        reports: &'a [ComparisonReport],
    }
    let body = serde_json::to_string_pretty(&FullReport { reports })
        .map_err(|err| CliError::Internal(format!("cannot serialize report: {err}")))?;
    let mut file = std::fs::File::create(path)
        .map_err(|err| CliError::Internal(format!("cannot write `{}`: {err}", path.display())))?;
    writeln!(file, "{body}")
        .map_err(|err| CliError::Internal(format!("cannot write `{}`: {err}", path.display())))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let config = cli
        .config
        .as_deref()
        .map(ConfigFile::load)
        .transpose()?;

    let rows = match &cli.command {
        Command::Coil(args) => cmd_coil(args, config.as_ref())?,
        Command::Steps(args) => cmd_steps(args)?,
        Command::Switch(args) => cmd_switch(args)?,
        Command::Beam(args) => cmd_beam(args, config.as_ref())?,
        Command::Sweep => cmd_sweep(config.as_ref())?,
        Command::Verify(args) => return cmd_verify(args),
    };
    deliver(&rows, cli.format.as_deref(), cli.out.as_deref())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                // --help/--version print to stdout and succeed
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(2)
        }
    }
}
