//! Capacitance synthesis: choose per-cell varactor capacitances so the
//! surface reflects a spherical wave from the transmitter toward the
//! receiver.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::LinkScenario;
use crate::grid::Grid;
use crate::numeric::{golden_section_minimize, log_spaced, phase_distance, wrap_phase};
use crate::reflection::ReflectionEvaluator;
use crate::unit_cell::{IncidentWave, Polarization, UnitCellDesign, VaractorModel};

/// Number of capacitance samples in the coarse inversion scan.
const SCAN_POINTS: usize = 512;
/// Objective evaluations spent refining the bracketed minimum.
const REFINE_EVALS: u32 = 80;
/// Phase residual above which an inversion counts as clamped, rad.
const CLAMP_RESIDUAL_RAD: f64 = 1e-4;

/// Target reflection phase for each cell so the re-radiated fields add in
/// phase at the receiver: the wrapped total electrical path length
/// k0 * (r_tx + r_rx), in (-pi, pi].
pub fn ideal_phase_profile(scenario: &LinkScenario) -> Result<Grid<f64>> {
    let k0 = scenario.wavenumber();
    Grid::try_from_fn(scenario.rows, scenario.cols, |r, c| {
        let geom = scenario.cell_geometry(r, c)?;
        Ok(wrap_phase(k0 * (geom.r_tx_m + geom.r_rx_m)))
    })
}

/// Outcome of one phase-to-capacitance inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionResult {
    /// Capacitance realizing the closest achievable phase, F.
    pub c_farad: f64,
    /// Reflection coefficient at that capacitance.
    pub gamma: Complex64,
    /// True when the tuning range cannot reach the target phase and the
    /// result is the nearest endpoint of the achievable phase set.
    pub clamped: bool,
}

/// Finds the capacitance whose reflection phase is closest to
/// `target_phase_rad` at the given frequency, angle, and polarization.
///
/// The tuning range is scanned on a logarithmic capacitance grid, the best
/// bracket is refined by golden-section search in log-capacitance, and ties
/// resolve toward the smaller capacitance. When the residual exceeds
/// an interior tolerance the result is flagged `clamped`.
pub fn capacitance_for_phase(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    f_hz: f64,
    pol: Polarization,
    theta_rad: f64,
    target_phase_rad: f64,
) -> Result<InversionResult> {
    let target = wrap_phase(target_phase_rad);
    let wave = IncidentWave::new(f_hz, theta_rad, pol)?;
    let evaluator = ReflectionEvaluator::new(cell, var, &wave)?;
    let objective = |c: f64| match evaluator.sample(c) {
        Ok(s) => phase_distance(s.gamma.arg(), target),
        Err(_) => f64::INFINITY,
    };

    let grid = log_spaced(var.c_min_farad, var.c_max_farad, SCAN_POINTS);
    let mut best_i = 0;
    let mut best_err = f64::INFINITY;
    for (i, &c) in grid.iter().enumerate() {
        let err = objective(c);
        // strictly better keeps the earliest (smallest-C) minimizer on ties
        if err < best_err {
            best_err = err;
            best_i = i;
        }
    }

    // refine inside the bracket around the best coarse sample, in log space
    let lo = grid[best_i.saturating_sub(1)].ln();
    let hi = grid[(best_i + 1).min(grid.len() - 1)].ln();
    let (log_c, refined_err) = golden_section_minimize(|x| objective(x.exp()), lo, hi, REFINE_EVALS);
    let (c_best, err_best) = if refined_err < best_err
        || (refined_err == best_err && log_c.exp() < grid[best_i])
    {
        (log_c.exp(), refined_err)
    } else {
        (grid[best_i], best_err)
    };

    if !err_best.is_finite() {
        // every candidate failed; surface the model error at the midpoint
        let mid = (var.c_min_farad * var.c_max_farad).sqrt();
        return Err(evaluator
            .sample(mid)
            .err()
            .unwrap_or(Error::Domain {
                name: "capacitance inversion",
                value: mid,
                requirement: "an evaluable reflection objective",
            }));
    }
    let sample = evaluator.sample(c_best)?;
    Ok(InversionResult {
        c_farad: c_best,
        gamma: sample.gamma,
        clamped: err_best > CLAMP_RESIDUAL_RAD,
    })
}

/// Incidence-angle treatment used when inverting the phase profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisMode {
    /// Invert every cell at normal incidence; cheap, ignores obliquity.
    Normal,
    /// Invert each cell at its own transmitter-side incidence angle.
    Oblique,
}

impl std::fmt::Display for SynthesisMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SynthesisMode::Normal => "normal",
            SynthesisMode::Oblique => "oblique",
        })
    }
}

/// Per-cell capacitance settings for one scenario, with the reflection
/// coefficients actually achieved at each cell's true incidence angle.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacitanceMap {
    pub mode: SynthesisMode,
    pub f_hz: f64,
    pub pol: Polarization,
    /// Chosen capacitances, F.
    pub c_farad: Grid<f64>,
    /// Reflection realized at each cell's own incidence angle.
    pub achieved_gamma: Grid<Complex64>,
    /// Cells whose target phase was outside the achievable span.
    pub clamped: Grid<bool>,
}

#[derive(Clone, Copy)]
struct CellSolution {
    c_farad: f64,
    gamma: Complex64,
    clamped: bool,
}

fn synthesize_impl(
    scenario: &LinkScenario,
    mode: SynthesisMode,
    sequential: bool,
) -> Result<CapacitanceMap> {
    let profile = ideal_phase_profile(scenario)?;
    let solve = |r: usize, c: usize| -> Result<CellSolution> {
        let geom = scenario.cell_geometry(r, c)?;
        let inversion_theta = match mode {
            SynthesisMode::Normal => 0.0,
            SynthesisMode::Oblique => geom.theta_tx_rad,
        };
        let inv = capacitance_for_phase(
            &scenario.cell,
            &scenario.varactor,
            scenario.f_hz,
            scenario.pol,
            inversion_theta,
            profile[(r, c)],
        )?;
        // what the cell really does is set by its true incidence angle
        let true_wave = scenario.wave_at(geom.theta_tx_rad)?;
        let achieved =
            ReflectionEvaluator::new(&scenario.cell, &scenario.varactor, &true_wave)?
                .sample(inv.c_farad)?;
        Ok(CellSolution {
            c_farad: inv.c_farad,
            gamma: achieved.gamma,
            clamped: inv.clamped,
        })
    };
    let solutions = if sequential {
        Grid::try_from_fn_seq(scenario.rows, scenario.cols, solve)?
    } else {
        Grid::try_from_fn(scenario.rows, scenario.cols, solve)?
    };
    Ok(CapacitanceMap {
        mode,
        f_hz: scenario.f_hz,
        pol: scenario.pol,
        c_farad: Grid::from_fn_seq(scenario.rows, scenario.cols, |r, c| {
            solutions[(r, c)].c_farad
        }),
        achieved_gamma: Grid::from_fn_seq(scenario.rows, scenario.cols, |r, c| {
            solutions[(r, c)].gamma
        }),
        clamped: Grid::from_fn_seq(scenario.rows, scenario.cols, |r, c| {
            solutions[(r, c)].clamped
        }),
    })
}

/// Solves every cell of the scenario for the capacitance realizing the ideal
/// phase profile. Cells are solved concurrently when the `parallel` feature
/// is active; the result is bitwise identical to [`synthesize_surface_seq`].
pub fn synthesize_surface(scenario: &LinkScenario, mode: SynthesisMode) -> Result<CapacitanceMap> {
    synthesize_impl(scenario, mode, false)
}

/// Single-threaded reference implementation of [`synthesize_surface`].
pub fn synthesize_surface_seq(
    scenario: &LinkScenario,
    mode: SynthesisMode,
) -> Result<CapacitanceMap> {
    synthesize_impl(scenario, mode, true)
}

/// Cell-by-cell relative capacitance discrepancy |(a - b) / a| in percent.
pub fn capacitance_error_map(a: &CapacitanceMap, b: &CapacitanceMap) -> Result<Grid<f64>> {
    if !a.c_farad.same_shape(&b.c_farad) {
        return Err(Error::ShapeMismatch {
            context: "capacitance error map",
            rows_a: a.c_farad.rows(),
            cols_a: a.c_farad.cols(),
            rows_b: b.c_farad.rows(),
            cols_b: b.c_farad.cols(),
        });
    }
    Ok(Grid::from_fn_seq(a.c_farad.rows(), a.c_farad.cols(), |r, c| {
        100.0 * ((a.c_farad[(r, c)] - b.c_farad[(r, c)]) / a.c_farad[(r, c)]).abs()
    }))
}
