//! Equivalent-circuit modeling of varactor-tuned reflective surfaces.
//!
//! The crate models an electrically thin reconfigurable reflector: a lattice
//! of metallic patches on a grounded dielectric slab, each patch loaded by a
//! varactor diode whose bias-controlled capacitance tunes the local
//! reflection phase. The surface is treated as a transmission-line network —
//! patch capacitance, varactor RLC branch and grounded-slab impedance in
//! parallel — which yields the complex reflection coefficient per
//! polarization, frequency, capacitance and incidence angle.
//!
//! On top of the single-cell model the crate provides:
//!
//! - analytic sanity anchors: freestanding-sheet response, flat-plate radar
//!   cross sections, and closed-form received power over a perfectly
//!   conducting surface ([`reflection`], [`link`]);
//! - lookup tables over (angle, capacitance) grids with node-exact bilinear
//!   interpolation ([`lookup`]);
//! - phase synthesis: per-cell capacitance inversion so a spherical wave
//!   from a transmitter refocuses on a receiver, with normal-incidence and
//!   oblique-incidence design modes ([`synthesis`]);
//! - a coherent link budget summing every cell's scattered field at the
//!   receiver, and received-power maps over an observation plane
//!   ([`link`]);
//! - CSV persistence for tables and maps ([`io`]).
//!
//! Array-shaped computations (tables, synthesis, maps) run data-parallel via
//! rayon when the default `parallel` feature is enabled and fall back to
//! sequential loops without it; both paths produce bitwise-identical
//! results, and each has an explicit `_seq` entry point for comparison.

pub mod constants;
pub mod error;
pub mod numeric;

pub mod grid;
pub mod unit_cell;

pub mod circuit;
pub mod reflection;

pub mod geometry;
pub mod link;
pub mod lookup;
pub mod synthesis;

pub mod io;

pub use error::{Error, Result};
pub use geometry::{CellGeometry, LinkScenario, Vec3};
pub use grid::Grid;
pub use link::{
    antenna_gain, field_map, field_map_seq, pec_bistatic_specular_power, pec_closed_form_power,
    plate_rcs, plate_rcs_in_plane, received_power, unit_cell_rcs, FieldMap, GainNormalization,
    MapPlane, PecPowerEstimate,
};
pub use lookup::{build_lookup_table, build_lookup_table_seq, LookupTable};
pub use reflection::{
    freestanding_sheet_response, reflection_coefficient, unloaded_reflection_coefficient,
    ReflectionEvaluator, ReflectionSample,
};
pub use synthesis::{
    capacitance_error_map, capacitance_for_phase, ideal_phase_profile, synthesize_surface,
    synthesize_surface_seq, CapacitanceMap, InversionResult, SynthesisMode,
};
pub use unit_cell::{
    IncidentWave, Polarization, SkinDepthModel, TeFactorExponent, UnitCellDesign, VaractorModel,
    DEFAULT_VARACTOR_INDUCTANCE_H, DEFAULT_VARACTOR_RESISTANCE_OHM,
};
