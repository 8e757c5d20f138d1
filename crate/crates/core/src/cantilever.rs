//! Electromechanics of the single-ended cantilever switch.
//!
//! The switch is a clamped-free beam actuated electrostatically by a control
//! electrode on either side; it vibrates in-plane to the substrate. Three
//! lumped models live here and deliberately share one stiffness:
//!
//! * analytic clamped-free modal frequencies for in-plane and out-of-plane
//!   bending,
//! * static deflection and pull-in of a tip-lumped parallel-plate actuator
//!   (pull-in at one third of the gap),
//! * the linearized small-signal response about a bias point, with
//!   electrostatic spring softening.
//!
//! The effective modal mass coefficient is 3/λ₁⁴ ≈ 0.2427 so the static
//! stiffness 3EI/L³ and the modal fundamental describe the same oscillator.

use std::f64::consts::PI;

use crate::constants::EPSILON_0;
use crate::units;

/// Clamped-free Euler-Bernoulli eigenvalues (roots of cos λ · cosh λ = −1).
const CLAMPED_FREE_LAMBDA: [f64; 5] = [
    1.8751040687119611,
    4.694091132974175,
    7.854757438237613,
    10.995540734875467,
    14.13716839104647,
];

/// Eigenvalue of the clamped-free characteristic equation for a 1-based mode
/// order. Above the tabulated range the root is polished from its asymptote
/// (2·order − 1)·π/2 with a few Newton steps on cos λ + sech λ = 0.
fn clamped_free_eigenvalue(order: usize) -> f64 {
    debug_assert!(order >= 1);
    if order <= CLAMPED_FREE_LAMBDA.len() {
        return CLAMPED_FREE_LAMBDA[order - 1];
    }
    let mut lambda = (2.0 * order as f64 - 1.0) * PI / 2.0;
    for _ in 0..4 {
        let g = lambda.cos() + 1.0 / lambda.cosh();
        let dg = -lambda.sin() - lambda.tanh() / lambda.cosh();
        lambda -= g / dg;
    }
    lambda
}

#[derive(Debug, thiserror::Error)]
pub enum BeamError {
    #[error("beam {field} must be positive and finite, got {value}")]
    InvalidDimension { field: &'static str, value: f64 },
    #[error("gap {gap} m is implausibly large next to the {width} m beam width; check units")]
    GapSanity { gap: f64, width: f64 },
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("voltage must be non-negative, got {0}")]
    NegativeVoltage(f64),
    #[error("mode order must be at least 1")]
    ZeroOrder,
    #[error("bias {bias} V is at or above the pull-in voltage {pull_in} V")]
    BiasUnstable { bias: f64, pull_in: f64 },
    #[error("calibration cannot solve for {dimension}: {reason}")]
    CalibrationUnsolvable {
        dimension: &'static str,
        reason: &'static str,
    },
}

/// Bending plane of the cantilever relative to the substrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BendingPlane {
    /// Motion parallel to the substrate (the switching direction); governed
    /// by the in-plane width.
    InPlane,
    /// Motion perpendicular to the substrate; governed by the thickness.
    OutOfPlane,
}

/// Which control electrode is driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActuationSide {
    Left,
    Right,
}

/// Beam dimension that a calibration solves for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownDimension {
    Length,
    WidthInPlane,
    ThicknessOutOfPlane,
}

/// Geometry and material of the switch cantilever, with the electrode gap and
/// overlap of the electrostatic drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CantileverBeam {
    length: f64,
    width_inplane: f64,
    thickness_outofplane: f64,
    youngs_modulus: f64,
    density: f64,
    gap: f64,
    electrode_area_left: f64,
    electrode_area_right: f64,
}

impl CantileverBeam {
    /// Builds a beam with symmetric control electrodes. All arguments in SI
    /// units; everything must be strictly positive, and the gap must be small
    /// next to the beam width (coarse unit-mistake guard).
    pub fn new(
        length: f64,
        width_inplane: f64,
        thickness_outofplane: f64,
        youngs_modulus: f64,
        density: f64,
        gap: f64,
        electrode_overlap_area: f64,
    ) -> Result<Self, BeamError> {
        let check = |field: &'static str, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(value)
            } else {
                Err(BeamError::InvalidDimension { field, value })
            }
        };
        check("length", length)?;
        check("width_inplane", width_inplane)?;
        check("thickness_outofplane", thickness_outofplane)?;
        check("youngs_modulus", youngs_modulus)?;
        check("density", density)?;
        check("gap", gap)?;
        check("electrode_overlap_area", electrode_overlap_area)?;
        if gap >= width_inplane * 1e3 {
            return Err(BeamError::GapSanity {
                gap,
                width: width_inplane,
            });
        }
        Ok(Self {
            length,
            width_inplane,
            thickness_outofplane,
            youngs_modulus,
            density,
            gap,
            electrode_area_left: electrode_overlap_area,
            electrode_area_right: electrode_overlap_area,
        })
    }

    /// Convenience constructor in interface units (micrometres, GPa).
    pub fn from_interface_units(
        length_um: f64,
        width_um: f64,
        thickness_um: f64,
        youngs_modulus_gpa: f64,
        density: f64,
        gap_um: f64,
        electrode_area_um2: f64,
    ) -> Result<Self, BeamError> {
        Self::new(
            units::microns_to_meters(length_um),
            units::microns_to_meters(width_um),
            units::microns_to_meters(thickness_um),
            units::gigapascals_to_pascals(youngs_modulus_gpa),
            density,
            units::microns_to_meters(gap_um),
            units::square_microns_to_square_meters(electrode_area_um2),
        )
    }

    /// Replaces the symmetric electrodes with per-side overlap areas.
    pub fn with_electrode_areas(mut self, left: f64, right: f64) -> Result<Self, BeamError> {
        for (field, value) in [("electrode_area_left", left), ("electrode_area_right", right)] {
            if value <= 0.0 || !value.is_finite() {
                return Err(BeamError::InvalidDimension { field, value });
            }
        }
        self.electrode_area_left = left;
        self.electrode_area_right = right;
        Ok(self)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn width_inplane(&self) -> f64 {
        self.width_inplane
    }

    pub fn thickness_outofplane(&self) -> f64 {
        self.thickness_outofplane
    }

    pub fn youngs_modulus(&self) -> f64 {
        self.youngs_modulus
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn electrode_area(&self, side: ActuationSide) -> f64 {
        match side {
            ActuationSide::Left => self.electrode_area_left,
            ActuationSide::Right => self.electrode_area_right,
        }
    }

    /// Beam cross-section area w·t.
    pub fn cross_section_area(&self) -> f64 {
        self.width_inplane * self.thickness_outofplane
    }

    /// Second moment of area for the given bending plane.
    pub fn second_moment(&self, plane: BendingPlane) -> f64 {
        let w = self.width_inplane;
        let t = self.thickness_outofplane;
        match plane {
            BendingPlane::InPlane => t * w * w * w / 12.0,
            BendingPlane::OutOfPlane => w * t * t * t / 12.0,
        }
    }
}

/// Lumped tip stiffness 3·E·I/L³ for the given bending plane.
pub fn bending_stiffness(beam: &CantileverBeam, plane: BendingPlane) -> f64 {
    let l = beam.length;
    3.0 * beam.youngs_modulus * beam.second_moment(plane) / (l * l * l)
}

/// Effective single-degree-of-freedom mass of the fundamental mode,
/// (3/λ₁⁴)·ρ·L·w·t, chosen so the lumped oscillator with stiffness 3EI/L³
/// reproduces the modal fundamental exactly.
pub fn effective_modal_mass(beam: &CantileverBeam) -> f64 {
    let lambda1 = CLAMPED_FREE_LAMBDA[0];
    let coefficient = 3.0 / (lambda1 * lambda1 * lambda1 * lambda1);
    coefficient * beam.density * beam.length * beam.cross_section_area()
}

/// One modal frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub frequency: f64,
    pub plane: BendingPlane,
    /// 1-based order within its plane.
    pub order: usize,
}

/// Modal frequencies merged across both planes, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    modes: Vec<Mode>,
}

impl ModeResult {
    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn frequency_of(&self, plane: BendingPlane, order: usize) -> Option<f64> {
        self.modes
            .iter()
            .find(|mode| mode.plane == plane && mode.order == order)
            .map(|mode| mode.frequency)
    }
}

/// Clamped-free modal frequency of one plane and order:
/// f = (λᵢ²/2π)·sqrt(E·I/(ρ·A·L⁴)).
pub fn modal_frequency(beam: &CantileverBeam, plane: BendingPlane, order: usize) -> Result<f64, BeamError> {
    if order == 0 {
        return Err(BeamError::ZeroOrder);
    }
    let lambda = clamped_free_eigenvalue(order);
    let l2 = beam.length * beam.length;
    let stiffness_density = beam.youngs_modulus * beam.second_moment(plane)
        / (beam.density * beam.cross_section_area());
    Ok(lambda * lambda / (2.0 * PI) * stiffness_density.sqrt() / l2)
}

/// All modal frequencies up to `max_order` in both planes, sorted ascending.
pub fn modal_frequencies(beam: &CantileverBeam, max_order: usize) -> Result<ModeResult, BeamError> {
    if max_order == 0 {
        return Err(BeamError::ZeroOrder);
    }
    let mut modes = Vec::with_capacity(2 * max_order);
    for order in 1..=max_order {
        for plane in [BendingPlane::InPlane, BendingPlane::OutOfPlane] {
            modes.push(Mode {
                frequency: modal_frequency(beam, plane, order)?,
                plane,
                order,
            });
        }
    }
    modes.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    Ok(ModeResult { modes })
}

/// Recovers a beam dimension from a measured fundamental frequency.
///
/// The in-plane fundamental depends only on the width and length (the
/// out-of-plane one only on thickness and length), so the solvable
/// combinations are closed-form and monotone; asking for a dimension the
/// chosen plane does not feel is a calibration error.
pub fn calibrate_from_fundamental(
    fundamental: f64,
    plane: BendingPlane,
    beam: &CantileverBeam,
    unknown: UnknownDimension,
) -> Result<CantileverBeam, BeamError> {
    if fundamental <= 0.0 || !fundamental.is_finite() {
        return Err(BeamError::NonPositive {
            name: "fundamental frequency",
            value: fundamental,
        });
    }
    let lambda1 = CLAMPED_FREE_LAMBDA[0];
    let modal_gain = lambda1 * lambda1 / (2.0 * PI);
    // f = modal_gain · d / L² · sqrt(E / (12 ρ)), d = w (in-plane) or t (out).
    let wave_speed = (beam.youngs_modulus / (12.0 * beam.density)).sqrt();

    let mut calibrated = *beam;
    match (unknown, plane) {
        (UnknownDimension::WidthInPlane, BendingPlane::InPlane) => {
            calibrated.width_inplane =
                fundamental * beam.length * beam.length / (modal_gain * wave_speed);
        }
        (UnknownDimension::ThicknessOutOfPlane, BendingPlane::OutOfPlane) => {
            calibrated.thickness_outofplane =
                fundamental * beam.length * beam.length / (modal_gain * wave_speed);
        }
        (UnknownDimension::Length, _) => {
            let driving_dimension = match plane {
                BendingPlane::InPlane => beam.width_inplane,
                BendingPlane::OutOfPlane => beam.thickness_outofplane,
            };
            calibrated.length = (modal_gain * driving_dimension * wave_speed / fundamental).sqrt();
        }
        (UnknownDimension::ThicknessOutOfPlane, BendingPlane::InPlane) => {
            return Err(BeamError::CalibrationUnsolvable {
                dimension: "thickness_outofplane",
                reason: "the in-plane fundamental does not depend on the thickness",
            })
        }
        (UnknownDimension::WidthInPlane, BendingPlane::OutOfPlane) => {
            return Err(BeamError::CalibrationUnsolvable {
                dimension: "width_inplane",
                reason: "the out-of-plane fundamental does not depend on the width",
            })
        }
    }

    // Rebuild through the validating constructor so the returned beam obeys
    // every invariant (positive solution, gap sanity bound).
    CantileverBeam::new(
        calibrated.length,
        calibrated.width_inplane,
        calibrated.thickness_outofplane,
        calibrated.youngs_modulus,
        calibrated.density,
        calibrated.gap,
        calibrated.electrode_area_left,
    )
    .and_then(|beam| beam.with_electrode_areas(calibrated.electrode_area_left, calibrated.electrode_area_right))
}

/// Pull-in voltage of the tip-lumped parallel-plate actuator:
/// sqrt(8·k·g³/(27·ε₀·A)).
pub fn pull_in_voltage(beam: &CantileverBeam) -> f64 {
    pull_in_voltage_for(beam, ActuationSide::Left)
}

/// Pull-in voltage for one side's electrode.
pub fn pull_in_voltage_for(beam: &CantileverBeam, side: ActuationSide) -> f64 {
    let stiffness = bending_stiffness(beam, BendingPlane::InPlane);
    let g = beam.gap;
    (8.0 * stiffness * g * g * g / (27.0 * EPSILON_0 * beam.electrode_area(side))).sqrt()
}

/// Static tip deflection under a DC control voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeflectionResult {
    pub voltage: f64,
    /// Signed displacement, metres: negative toward the left electrode,
    /// positive toward the right.
    pub tip_displacement: f64,
    /// False at or above pull-in; the reported displacement is then the g/3
    /// instability onset and the switch closes.
    pub stable: bool,
}

impl DeflectionResult {
    pub fn magnitude(&self) -> f64 {
        self.tip_displacement.abs()
    }
}

// Bisection iterations for the equilibrium solve. 64 halvings of [0, g/3]
// land far below the 1e-12·g target and keep the result bit-deterministic.
const BISECTION_ITERATIONS: u32 = 64;

/// Solves k·x = ε₀·A·V²/(2(g−x)²) for the stable root x ∈ [0, g/3).
///
/// At or above pull-in no stable root exists; the result reports
/// `stable = false` with the onset displacement g/3 so callers can detect
/// switch closure rather than handle an error.
pub fn static_deflection(
    beam: &CantileverBeam,
    voltage: f64,
    side: ActuationSide,
) -> Result<DeflectionResult, BeamError> {
    if voltage < 0.0 || !voltage.is_finite() {
        return Err(BeamError::NegativeVoltage(voltage));
    }
    let sign = match side {
        ActuationSide::Left => -1.0,
        ActuationSide::Right => 1.0,
    };
    if voltage == 0.0 {
        return Ok(DeflectionResult {
            voltage,
            tip_displacement: 0.0,
            stable: true,
        });
    }

    let gap = beam.gap;
    let pull_in = pull_in_voltage_for(beam, side);
    if voltage >= pull_in {
        return Ok(DeflectionResult {
            voltage,
            tip_displacement: sign * gap / 3.0,
            stable: false,
        });
    }

    let stiffness = bending_stiffness(beam, BendingPlane::InPlane);
    let drive = EPSILON_0 * beam.electrode_area(side) * voltage * voltage / 2.0;
    let residual = |x: f64| {
        let remaining = gap - x;
        stiffness * x - drive / (remaining * remaining)
    };

    // residual(0) < 0 and residual(g/3) > 0 below pull-in.
    let mut lo = 0.0f64;
    let mut hi = gap / 3.0;
    for _ in 0..BISECTION_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(DeflectionResult {
        voltage,
        tip_displacement: sign * x,
        stable: true,
    })
}

/// One point of a small-signal frequency response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponsePoint {
    pub frequency: f64,
    /// Tip displacement per unit small-signal drive voltage, m/V.
    pub amplitude: f64,
}

/// Linearized response about a bias point.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyResponse {
    /// Spring-softened stiffness k − ε₀·A·V²/(g−x₀)³.
    pub effective_stiffness: f64,
    /// Resonance of the biased oscillator.
    pub effective_frequency: f64,
    pub points: Vec<ResponsePoint>,
}

/// Small-signal tip response about a DC bias on the left electrode.
pub fn frequency_response(
    beam: &CantileverBeam,
    bias: f64,
    frequencies: &[f64],
    q_mech: f64,
) -> Result<FrequencyResponse, BeamError> {
    if q_mech <= 0.0 || !q_mech.is_finite() {
        return Err(BeamError::NonPositive {
            name: "q_mech",
            value: q_mech,
        });
    }
    for &frequency in frequencies {
        if frequency <= 0.0 || !frequency.is_finite() {
            return Err(BeamError::NonPositive {
                name: "frequency",
                value: frequency,
            });
        }
    }
    if bias < 0.0 || !bias.is_finite() {
        return Err(BeamError::NegativeVoltage(bias));
    }
    let side = ActuationSide::Left;
    let pull_in = pull_in_voltage_for(beam, side);
    if bias >= pull_in {
        return Err(BeamError::BiasUnstable { bias, pull_in });
    }

    let offset = static_deflection(beam, bias, side)?.magnitude();
    let remaining = beam.gap - offset;
    let area = beam.electrode_area(side);
    let stiffness = bending_stiffness(beam, BendingPlane::InPlane);
    let effective_stiffness =
        stiffness - EPSILON_0 * area * bias * bias / (remaining * remaining * remaining);
    let mass = effective_modal_mass(beam);
    let omega_0 = (effective_stiffness / mass).sqrt();
    let effective_frequency = omega_0 / (2.0 * PI);

    let drive_per_volt = EPSILON_0 * area * bias / (remaining * remaining);
    let points = frequencies
        .iter()
        .map(|&frequency| {
            let omega = 2.0 * PI * frequency;
            let detune = omega_0 * omega_0 - omega * omega;
            let damping = omega_0 * omega / q_mech;
            ResponsePoint {
                frequency,
                amplitude: drive_per_volt / mass / (detune * detune + damping * damping).sqrt(),
            }
        })
        .collect();

    Ok(FrequencyResponse {
        effective_stiffness,
        effective_frequency,
        points,
    })
}

/// True when left and right actuation at the same voltage deflect the tip by
/// equal magnitudes in opposite directions (to 1e-12 relative).
pub fn actuation_symmetry_check(beam: &CantileverBeam, voltage: f64) -> Result<bool, BeamError> {
    let left = static_deflection(beam, voltage, ActuationSide::Left)?;
    let right = static_deflection(beam, voltage, ActuationSide::Right)?;
    if left.tip_displacement == 0.0 && right.tip_displacement == 0.0 {
        return Ok(true);
    }
    let magnitudes_match = (left.magnitude() - right.magnitude()).abs()
        <= 1e-12 * left.magnitude().max(right.magnitude());
    let signs_opposite = left.tip_displacement < 0.0 && right.tip_displacement > 0.0;
    Ok(magnitudes_match && signs_opposite)
}
