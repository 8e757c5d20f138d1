//! Physical constants shared by every module.
//!
//! All internal computation is done in strict SI units; these are the only
//! two universal constants the models need.

use std::f64::consts::PI;

/// Vacuum permeability, H/m.
pub const MU_0: f64 = 4.0e-7 * PI;

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.8541878128e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_0_value() {
        assert!((MU_0 - 1.2566370614359173e-6).abs() < 1e-21);
    }
}
