//! Reference table data.
//!
//! The published design tables are stored as TOML data files under `data/`,
//! quoted verbatim with provenance comments, and never hard-coded into
//! comparison logic. The compiled-in copies back the default reports; a
//! directory of replacement files can be loaded instead, which is how the
//! verification suite exercises corrupted-data detection.

use std::fs;
use std::path::Path;

use serde::Deserialize;

pub const STEP_TABLE_FILE: &str = "step_table.toml";
pub const COIL_DESIGNS_FILE: &str = "coil_designs.toml";
pub const ENERGY_TABLE_FILE: &str = "energy_table.toml";

#[derive(Debug, thiserror::Error)]
pub enum ReferenceError {
    #[error("failed to read reference data `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse reference data `{path}`: {source}")]
    Parse {
        path: String,
        source: toml::de::Error,
    },
    #[error("reference data `{path}`: {reason}")]
    Invalid { path: String, reason: String },
}

/// One row of the step table: a switch setting and its printed factor.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct StepRow {
    pub step: usize,
    pub series: usize,
    pub parallel: usize,
    pub factor: f64,
}

/// One row of the coil design table.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CoilRow {
    pub row: usize,
    pub winding_width_um: f64,
    pub winding_height_um: f64,
    pub length_um: f64,
    pub turns_squared: u64,
    pub mu_r: f64,
    pub core_section_um: String,
    pub chip_area_um: String,
    pub inductance_nh: f64,
}

impl CoilRow {
    /// Turn count N, recovered from the printed N² column.
    pub fn turns(&self) -> Result<u32, ReferenceError> {
        let n = (self.turns_squared as f64).sqrt().round() as u64;
        if n * n != self.turns_squared {
            return Err(ReferenceError::Invalid {
                path: COIL_DESIGNS_FILE.to_string(),
                reason: format!("turns_squared = {} is not a perfect square", self.turns_squared),
            });
        }
        u32::try_from(n).map_err(|_| ReferenceError::Invalid {
            path: COIL_DESIGNS_FILE.to_string(),
            reason: format!("turn count {n} does not fit in 32 bits"),
        })
    }
}

/// One row of the energy/inductance table.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct EnergyRow {
    pub core_thickness_um: f64,
    pub material: String,
    pub inductance_nh: f64,
    pub resistance_ohm: f64,
    pub energy_nj: f64,
}

#[derive(Debug, Deserialize)]
struct StepFile {
    step: Vec<StepRow>,
}

#[derive(Debug, Deserialize)]
struct CoilFile {
    coil: Vec<CoilRow>,
}

#[derive(Debug, Deserialize)]
struct EnergyFile {
    entry: Vec<EnergyRow>,
}

/// The three reference tables.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceData {
    pub steps: Vec<StepRow>,
    pub coils: Vec<CoilRow>,
    pub energies: Vec<EnergyRow>,
}

impl ReferenceData {
    /// The compiled-in copies of the data files.
    pub fn builtin() -> Self {
        Self::from_sources(
            include_str!("../data/step_table.toml"),
            include_str!("../data/coil_designs.toml"),
            include_str!("../data/energy_table.toml"),
        )
        .expect("compiled-in reference data is valid")
    }

    /// Loads the three files from a directory (same names as under `data/`).
    pub fn load_dir(dir: &Path) -> Result<Self, ReferenceError> {
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|source| ReferenceError::Io {
                path: path.display().to_string(),
                source,
            })
        };
        Self::from_sources(
            &read(STEP_TABLE_FILE)?,
            &read(COIL_DESIGNS_FILE)?,
            &read(ENERGY_TABLE_FILE)?,
        )
    }

    fn from_sources(steps: &str, coils: &str, energies: &str) -> Result<Self, ReferenceError> {
        let parse_err = |path: &str| {
            let path = path.to_string();
            move |source| ReferenceError::Parse { path, source }
        };
        let steps: StepFile = toml::from_str(steps).map_err(parse_err(STEP_TABLE_FILE))?;
        let coils: CoilFile = toml::from_str(coils).map_err(parse_err(COIL_DESIGNS_FILE))?;
        let energies: EnergyFile =
            toml::from_str(energies).map_err(parse_err(ENERGY_TABLE_FILE))?;
        let data = Self {
            steps: steps.step,
            coils: coils.coil,
            energies: energies.entry,
        };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<(), ReferenceError> {
        let invalid = |path: &str, reason: String| ReferenceError::Invalid {
            path: path.to_string(),
            reason,
        };
        if self.steps.is_empty() {
            return Err(invalid(STEP_TABLE_FILE, "no step rows".into()));
        }
        // a column is usable when it is finite and strictly positive
        let unusable = |value: f64| !value.is_finite() || value <= 0.0;
        for row in &self.steps {
            if unusable(row.factor) {
                return Err(invalid(
                    STEP_TABLE_FILE,
                    format!("step {} has non-positive factor {}", row.step, row.factor),
                ));
            }
        }
        for row in &self.coils {
            row.turns()?;
            if unusable(row.inductance_nh)
                || unusable(row.length_um)
                || unusable(row.winding_width_um)
                || unusable(row.winding_height_um)
                || unusable(row.mu_r)
            {
                return Err(invalid(
                    COIL_DESIGNS_FILE,
                    format!("row {} has a non-positive column", row.row),
                ));
            }
        }
        for row in &self.energies {
            if unusable(row.inductance_nh) || unusable(row.energy_nj) {
                return Err(invalid(
                    ENERGY_TABLE_FILE,
                    format!(
                        "{} / {} um row has a non-positive column",
                        row.material, row.core_thickness_um
                    ),
                ));
            }
        }
        Ok(())
    }
}
