//! Physical constants.
//!
//! `EPS0` is derived from `MU0` and `C0` so that `ZETA0 == MU0 * C0` and
//! `EPS0 * MU0 * C0^2 == 1` hold exactly; impedance identities in the model
//! rely on this consistency.

/// Speed of light in vacuum, m/s.
pub const C0: f64 = 299_792_458.0;

/// Vacuum permeability, H/m.
pub const MU0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 1.0 / (MU0 * C0 * C0);

/// Free-space wave impedance, ohm.
pub const ZETA0: f64 = MU0 * C0;
