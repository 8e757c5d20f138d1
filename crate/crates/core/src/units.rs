//! Conversions between interface units and SI.
//!
//! The published design tables and the CLI speak micrometres, square
//! micrometres, nanohenries, gigapascals and kilohertz. Everything inside the
//! library is strict SI (metre, henry, pascal, hertz); conversion happens at
//! the boundary only.

pub fn microns_to_meters(um: f64) -> f64 {
    um * 1e-6
}

pub fn meters_to_microns(m: f64) -> f64 {
    m * 1e6
}

pub fn square_microns_to_square_meters(um2: f64) -> f64 {
    um2 * 1e-12
}

pub fn square_meters_to_square_microns(m2: f64) -> f64 {
    m2 * 1e12
}

pub fn nanohenries_to_henries(nh: f64) -> f64 {
    nh * 1e-9
}

pub fn henries_to_nanohenries(h: f64) -> f64 {
    h * 1e9
}

pub fn kilohertz_to_hertz(khz: f64) -> f64 {
    khz * 1e3
}

pub fn hertz_to_kilohertz(hz: f64) -> f64 {
    hz * 1e-3
}

pub fn gigapascals_to_pascals(gpa: f64) -> f64 {
    gpa * 1e9
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_scale_correctly() {
        assert!((microns_to_meters(1000.0) - 1e-3).abs() < 1e-18);
        let roundtrip = henries_to_nanohenries(nanohenries_to_henries(3.845));
        assert!((roundtrip - 3.845).abs() < 1e-14);
        assert!((square_microns_to_square_meters(4.0) - 4e-12).abs() < 1e-27);
        assert_eq!(gigapascals_to_pascals(169.0), 169e9);
    }
}
