//! Error type shared by the whole crate.
//!
//! Every fallible operation returns a typed error naming the offending
//! quantity; the library never panics on bad model input.

use crate::unit_cell::Polarization;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar model parameter is outside its documented domain.
    #[error("{name} = {value:e} violates requirement: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A load capacitance falls outside the varactor's tuning range.
    #[error("c_var = {value:e} F outside tuning range [{min:e}, {max:e}] F")]
    CapacitanceRange { value: f64, min: f64, max: f64 },

    /// An operation defined only for square cells got a rectangular one.
    #[error(
        "{operation} requires a square cell; got periods ({period_x_m:e}, {period_y_m:e}) m, \
         gaps ({gap_x_m:e}, {gap_y_m:e}) m"
    )]
    NonSquareCell {
        operation: &'static str,
        period_x_m: f64,
        period_y_m: f64,
        gap_x_m: f64,
        gap_y_m: f64,
    },

    /// A parallel impedance combination degenerated (|Z1 + Z2| ~ 0).
    #[error(
        "singular {stage} combination at f = {f_hz:e} Hz, theta = {theta_rad} rad, {pol}: \
         |Z1 + Z2| = {denom_magnitude:e} ohm below tolerance {tolerance:e} ohm"
    )]
    SingularCombination {
        stage: &'static str,
        f_hz: f64,
        theta_rad: f64,
        pol: Polarization,
        denom_magnitude: f64,
        tolerance: f64,
    },

    /// A sheet-response denominator vanished (active/non-physical sheet).
    #[error("singular denominator in {context}: |denominator| = {denom_magnitude:e} ohm")]
    DegenerateSheet {
        context: &'static str,
        denom_magnitude: f64,
    },

    /// Scenario geometry is degenerate (for example an antenna on a cell).
    #[error("geometry: {reason}")]
    Geometry { reason: String },

    /// Grid construction or lookup violated a bound.
    #[error("grid: {reason}")]
    GridBounds { reason: String },

    /// Two grids that must agree elementwise have different shapes.
    #[error("{context}: shape ({rows_a}, {cols_a}) does not match ({rows_b}, {cols_b})")]
    ShapeMismatch {
        context: &'static str,
        rows_a: usize,
        cols_a: usize,
        rows_b: usize,
        cols_b: usize,
    },

    /// A serialized table or map failed to parse.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
