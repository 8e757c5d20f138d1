//! Closed-form coil physics.
//!
//! Inductance of a solenoid on a magnetic core, the energy route to the same
//! quantity, and order-of-magnitude winding resistance / quality-factor
//! estimators. All functions are pure and operate in SI units.

use crate::constants::MU_0;
use crate::material::CoreMaterial;
use crate::units;

#[derive(Debug, thiserror::Error)]
pub enum CoilError {
    #[error("coil geometry: {field} must be positive and finite, got {value}")]
    InvalidGeometry { field: &'static str, value: f64 },
    #[error("current must be non-zero to derive inductance from energy")]
    ZeroCurrent,
    #[error("magnetic energy must be non-negative, got {0}")]
    NegativeEnergy(f64),
    #[error("inductance must be non-negative, got {0}")]
    NegativeInductance(f64),
    #[error("core perimeter must be positive and finite, got {0}")]
    InvalidPerimeter(f64),
    #[error("material `{0}` has no resistivity; winding resistance needs a conductor entry")]
    MissingResistivity(String),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}

/// Geometry of one micro-coil: an N-turn winding of cross-section
/// `winding_area` over a core of length `length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoilGeometry {
    turns: u32,
    winding_area: f64,
    length: f64,
    wire_area: f64,
    core_thickness: f64,
}

impl CoilGeometry {
    /// Builds a geometry in SI units. `turns` may be zero (a coreless stub
    /// with zero inductance); the areas and length must be positive.
    /// `core_thickness` is report metadata and only has to be non-negative.
    pub fn new(
        turns: u32,
        winding_area: f64,
        length: f64,
        wire_area: f64,
        core_thickness: f64,
    ) -> Result<Self, CoilError> {
        let positive = |field: &'static str, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(value)
            } else {
                Err(CoilError::InvalidGeometry { field, value })
            }
        };
        positive("winding_area", winding_area)?;
        positive("length", length)?;
        positive("wire_area", wire_area)?;
        if core_thickness < 0.0 || !core_thickness.is_finite() {
            return Err(CoilError::InvalidGeometry {
                field: "core_thickness",
                value: core_thickness,
            });
        }
        Ok(Self {
            turns,
            winding_area,
            length,
            wire_area,
            core_thickness,
        })
    }

    /// Convenience constructor in the interface units (micrometres).
    pub fn from_microns(
        turns: u32,
        winding_area_um2: f64,
        length_um: f64,
        wire_area_um2: f64,
        core_thickness_um: f64,
    ) -> Result<Self, CoilError> {
        Self::new(
            turns,
            units::square_microns_to_square_meters(winding_area_um2),
            units::microns_to_meters(length_um),
            units::square_microns_to_square_meters(wire_area_um2),
            units::microns_to_meters(core_thickness_um),
        )
    }

    pub fn turns(&self) -> u32 {
        self.turns
    }

    /// Winding cross-section, m².
    pub fn winding_area(&self) -> f64 {
        self.winding_area
    }

    /// Coil length, m.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Conductor cross-section, m².
    pub fn wire_area(&self) -> f64 {
        self.wire_area
    }

    /// Core thickness, m (metadata for reports).
    pub fn core_thickness(&self) -> f64 {
        self.core_thickness
    }
}

/// Solenoid inductance μ₀·μᵣ·N²·A/l in henries.
pub fn solenoid_inductance(geom: &CoilGeometry, material: &CoreMaterial) -> f64 {
    let n = geom.turns as f64;
    MU_0 * material.mu_r() * (n * n) * geom.winding_area / geom.length
}

/// Inductance from stored magnetic energy: 2·W/I².
pub fn inductance_from_energy(energy: f64, current: f64) -> Result<f64, CoilError> {
    if current == 0.0 || !current.is_finite() {
        return Err(CoilError::ZeroCurrent);
    }
    if energy < 0.0 || !energy.is_finite() {
        return Err(CoilError::NegativeEnergy(energy));
    }
    Ok(2.0 * energy / (current * current))
}

/// Magnetic energy stored in an inductor: L·I²/2. Exact inverse of
/// [`inductance_from_energy`] for I ≠ 0.
pub fn magnetic_energy(inductance: f64, current: f64) -> Result<f64, CoilError> {
    if inductance < 0.0 || !inductance.is_finite() {
        return Err(CoilError::NegativeInductance(inductance));
    }
    Ok(inductance * (current * current) / 2.0)
}

/// DC winding resistance, modelling the total wire length as `turns` loops
/// around the core perimeter. Skin effect and contact resistance are ignored.
pub fn wire_resistance(
    geom: &CoilGeometry,
    core_perimeter: f64,
    conductor: &CoreMaterial,
) -> Result<f64, CoilError> {
    if core_perimeter <= 0.0 || !core_perimeter.is_finite() {
        return Err(CoilError::InvalidPerimeter(core_perimeter));
    }
    let rho = conductor
        .resistivity()
        .ok_or_else(|| CoilError::MissingResistivity(conductor.name().to_string()))?;
    Ok(rho * (geom.turns as f64 * core_perimeter) / geom.wire_area)
}

/// Quality factor 2π·f·L/R.
pub fn quality_factor(inductance: f64, resistance: f64, frequency: f64) -> Result<f64, CoilError> {
    if resistance <= 0.0 || !resistance.is_finite() {
        return Err(CoilError::NonPositive {
            name: "resistance",
            value: resistance,
        });
    }
    if frequency <= 0.0 || !frequency.is_finite() {
        return Err(CoilError::NonPositive {
            name: "frequency",
            value: frequency,
        });
    }
    Ok(2.0 * std::f64::consts::PI * frequency * inductance / resistance)
}
