//! Design and simulation toolkit for digitally-controlled switched micro-coil
//! variable inductors.
//!
//! A bank of n identical micro-coils is selected by per-coil MEMS switches
//! into one series chain plus at most one parallel bank, reaching n(n+1)/2
//! distinct inductance steps. This crate models the pieces of that device at
//! lumped/analytic fidelity:
//!
//! * [`coil`] — solenoid inductance from geometry and core material, the
//!   magnetic-energy route to the same value, and winding resistance /
//!   quality-factor estimators;
//! * [`switch`] — switch-word parsing, canonical configurations, closed-form
//!   totals and exhaustive step enumeration;
//! * [`network`] — an independent graph-based nodal solver for the same
//!   totals (and for arbitrary inductor networks);
//! * [`cantilever`] — modal frequencies, electrostatic deflection, pull-in
//!   and biased frequency response of the switch cantilever;
//! * [`report`] / [`emit`] — machine-checked reproduction of the reference
//!   design tables, parameter sweeps, and CSV/JSON serialization.

pub mod cantilever;
pub mod coil;
pub mod config;
pub mod constants;
pub mod emit;
pub mod material;
pub mod network;
pub mod reference;
pub mod report;
pub mod switch;
pub mod units;

pub use cantilever::{
    actuation_symmetry_check, bending_stiffness, calibrate_from_fundamental, frequency_response,
    modal_frequencies, modal_frequency, pull_in_voltage, static_deflection, ActuationSide,
    BeamError, BendingPlane, CantileverBeam, DeflectionResult, FrequencyResponse, Mode,
    ModeResult, UnknownDimension,
};
pub use coil::{
    inductance_from_energy, magnetic_energy, quality_factor, solenoid_inductance, wire_resistance,
    CoilError, CoilGeometry,
};
pub use config::{ConfigError, ConfigFile};
pub use emit::{emit, format_number, parse_csv_rows, parse_json_rows, write_rows, EmitError, OutputFormat};
pub use material::{lookup_material, CoreMaterial, MaterialCatalog, MaterialError};
pub use network::{build_network, effective_inductance, InductorNetwork, NetworkError, NodeId};
pub use reference::{ReferenceData, ReferenceError};
pub use report::{
    check_energy_consistency, reproduce_coil_table, reproduce_step_table, run_sweep, CellValue,
    ComparisonReport, ComparisonRow, GridAxis, ReportError, Row, SweepSpec, SweepSubject, Verdict,
};
pub use switch::{
    enumerate_steps, parse_switch_word, step_count, total_inductance, ParsedWord, StepEntry,
    StepTable, SwitchConfiguration, SwitchError, SwitchWord,
};
