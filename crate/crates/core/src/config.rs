//! Structured configuration file.
//!
//! One TOML file can carry material-catalog overrides, a beam description
//! and a sweep definition; all sections are optional. Dimensions use the
//! interface units (micrometres, GPa, nanohenries), matching the CLI flags:
//!
//! ```toml
//! [[materials]]
//! name = "permalloy"
//! mu_r = 8000.0
//! resistivity = 1.6e-7        # ohm-metre, optional
//!
//! [beam]
//! length_um = 290.0
//! width_um = 2.0
//! thickness_um = 5.0
//! gap_um = 2.0
//! electrode_area_um2 = 1000.0
//! youngs_modulus_gpa = 169.0
//! density = 2320.0            # kg/m^3
//!
//! [sweep]
//! subject = "beam"            # coil | beam | steps
//! # max_points = 1000000      # optional grid-size bound
//!
//! [sweep.fixed]
//! length_um = 290.0
//!
//! [[sweep.grid]]
//! name = "voltage_v"
//! start = 1.0                 # inclusive linspace ...
//! stop = 15.0
//! count = 15
//!
//! [[sweep.grid]]
//! name = "gap_um"
//! values = [1.5, 2.0, 2.5]    # ... or explicit values
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::cantilever::{BeamError, CantileverBeam};
use crate::material::{CoreMaterial, MaterialCatalog, MaterialError};
use crate::report::{GridAxis, ReportError, SweepSpec, SweepSubject};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse config `{path}`: {source}")]
    Parse {
        path: String,
        source: toml::de::Error,
    },
    #[error("config has no [{0}] section")]
    MissingSection(&'static str),
    #[error("sweep axis `{0}` needs either `values` or `start`/`stop`/`count`")]
    BadGridAxis(String),
    #[error(transparent)]
    Material(#[from] MaterialError),
    #[error(transparent)]
    Beam(#[from] BeamError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

#[derive(Debug, Clone, Deserialize)]
pub struct MaterialEntry {
    pub name: String,
    pub mu_r: f64,
    pub resistivity: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct BeamEntry {
    pub length_um: f64,
    pub width_um: f64,
    pub thickness_um: f64,
    pub gap_um: f64,
    pub electrode_area_um2: f64,
    pub youngs_modulus_gpa: f64,
    pub density: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GridEntry {
    pub name: String,
    pub values: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SweepEntry {
    pub subject: String,
    pub max_points: Option<usize>,
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    #[serde(default)]
    pub grid: Vec<GridEntry>,
}

/// Parsed configuration file; every section optional.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ConfigFile {
    #[serde(default)]
    pub materials: Vec<MaterialEntry>,
    pub beam: Option<BeamEntry>,
    pub sweep: Option<SweepEntry>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let content = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        toml::from_str(&content).map_err(|source| ConfigError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    /// Registers every material override into `catalog`.
    pub fn apply_materials(&self, catalog: &mut MaterialCatalog) -> Result<(), ConfigError> {
        for entry in &self.materials {
            catalog.register(CoreMaterial::new(
                entry.name.clone(),
                entry.mu_r,
                entry.resistivity,
            )?);
        }
        Ok(())
    }

    /// Builds the beam described by the `[beam]` section.
    pub fn beam(&self) -> Result<CantileverBeam, ConfigError> {
        let entry = self.beam.ok_or(ConfigError::MissingSection("beam"))?;
        Ok(CantileverBeam::from_interface_units(
            entry.length_um,
            entry.width_um,
            entry.thickness_um,
            entry.youngs_modulus_gpa,
            entry.density,
            entry.gap_um,
            entry.electrode_area_um2,
        )?)
    }

    /// Builds the sweep described by the `[sweep]` section.
    pub fn sweep(&self) -> Result<SweepSpec, ConfigError> {
        let entry = self
            .sweep
            .as_ref()
            .ok_or(ConfigError::MissingSection("sweep"))?;
        let subject = SweepSubject::parse(&entry.subject)?;
        let mut grid = Vec::with_capacity(entry.grid.len());
        for axis in &entry.grid {
            let resolved = match (&axis.values, axis.start, axis.stop, axis.count) {
                (Some(values), None, None, None) => GridAxis::new(axis.name.clone(), values.clone()),
                (None, Some(start), Some(stop), Some(count)) if count >= 1 => {
                    GridAxis::linspace(axis.name.clone(), start, stop, count)
                }
                _ => return Err(ConfigError::BadGridAxis(axis.name.clone())),
            };
            grid.push(resolved);
        }
        let fixed = entry
            .fixed
            .iter()
            .map(|(name, value)| (name.clone(), *value))
            .collect();
        let mut spec = SweepSpec::new(subject, grid, fixed);
        if let Some(max_points) = entry.max_points {
            spec.max_points = max_points;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
[[materials]]
name = "permalloy"
mu_r = 8000.0
resistivity = 1.6e-7

[[materials]]
name = "Fe"
mu_r = 5000.0

[beam]
length_um = 290.0
width_um = 2.0
thickness_um = 5.0
gap_um = 2.0
electrode_area_um2 = 1000.0
youngs_modulus_gpa = 169.0
density = 2320.0

[sweep]
subject = "steps"

[[sweep.grid]]
name = "n"
start = 1.0
stop = 6.0
count = 6
"#;

    #[test]
    fn full_config_parses_and_builds() {
        let config: ConfigFile = toml::from_str(SAMPLE).unwrap();

        let mut catalog = MaterialCatalog::builtin();
        config.apply_materials(&mut catalog).unwrap();
        assert_eq!(catalog.lookup("permalloy").unwrap().mu_r(), 8000.0);
        assert_eq!(catalog.lookup("fe").unwrap().mu_r(), 5000.0);

        let beam = config.beam().unwrap();
        assert!((beam.length() - 290e-6).abs() < 1e-18);

        let sweep = config.sweep().unwrap();
        assert_eq!(sweep.grid.len(), 1);
        assert_eq!(sweep.grid[0].values.len(), 6);
        assert_eq!(sweep.grid[0].values[0], 1.0);
        assert_eq!(sweep.grid[0].values[5], 6.0);
    }

    #[test]
    fn missing_sections_are_reported() {
        let config: ConfigFile = toml::from_str("").unwrap();
        assert!(matches!(
            config.beam(),
            Err(ConfigError::MissingSection("beam"))
        ));
        assert!(matches!(
            config.sweep(),
            Err(ConfigError::MissingSection("sweep"))
        ));
    }

    #[test]
    fn ambiguous_grid_axis_is_rejected() {
        let source = r#"
[sweep]
subject = "steps"

[[sweep.grid]]
name = "n"
values = [1.0]
start = 1.0
stop = 2.0
count = 2
"#;
        let config: ConfigFile = toml::from_str(source).unwrap();
        assert!(matches!(
            config.sweep(),
            Err(ConfigError::BadGridAxis(_))
        ));
    }
}
