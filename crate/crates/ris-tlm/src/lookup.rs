//! Reflection lookup tables over (incidence angle, capacitance) grids.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::reflection::ReflectionEvaluator;
use crate::unit_cell::{IncidentWave, Polarization, UnitCellDesign, VaractorModel};

/// Complex reflection coefficients of one design tabulated on an ascending
/// (theta, capacitance) grid at a fixed frequency and polarization.
#[derive(Debug, Clone, PartialEq)]
pub struct LookupTable {
    pub f_hz: f64,
    pub pol: Polarization,
    /// Ascending incidence angles, rad.
    pub theta_grid_rad: Vec<f64>,
    /// Ascending capacitances, F.
    pub c_grid_farad: Vec<f64>,
    /// Row i = theta_grid_rad[i], column j = c_grid_farad[j].
    pub gamma: Grid<Complex64>,
}

fn validate_axis(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::GridBounds {
            reason: format!("{name} grid must be nonempty"),
        });
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::GridBounds {
            reason: format!("{name} grid must be finite"),
        });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridBounds {
            reason: format!("{name} grid must be strictly increasing"),
        });
    }
    Ok(())
}

fn validate_grids(
    var: &VaractorModel,
    theta_grid_rad: &[f64],
    c_grid_farad: &[f64],
) -> Result<()> {
    validate_axis("theta", theta_grid_rad)?;
    validate_axis("capacitance", c_grid_farad)?;
    let (t_lo, t_hi) = (theta_grid_rad[0], *theta_grid_rad.last().unwrap());
    if t_lo < 0.0 || t_hi >= FRAC_PI_2 {
        return Err(Error::GridBounds {
            reason: format!("theta grid [{t_lo}, {t_hi}] rad must lie within [0, pi/2)"),
        });
    }
    let (c_lo, c_hi) = (c_grid_farad[0], *c_grid_farad.last().unwrap());
    if c_lo < var.c_min_farad || c_hi > var.c_max_farad {
        return Err(Error::GridBounds {
            reason: format!(
                "capacitance grid [{c_lo:e}, {c_hi:e}] F exceeds the tuning range \
                 [{:e}, {:e}] F",
                var.c_min_farad, var.c_max_farad
            ),
        });
    }
    Ok(())
}

fn build_impl(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    f_hz: f64,
    pol: Polarization,
    theta_grid_rad: &[f64],
    c_grid_farad: &[f64],
    sequential: bool,
) -> Result<LookupTable> {
    validate_grids(var, theta_grid_rad, c_grid_farad)?;
    // one evaluator per angle row; rows and entries are independent
    let evaluators: Vec<ReflectionEvaluator> = theta_grid_rad
        .iter()
        .map(|&theta| {
            let wave = IncidentWave::new(f_hz, theta, pol)?;
            ReflectionEvaluator::new(cell, var, &wave)
        })
        .collect::<Result<_>>()?;
    let eval = |i: usize, j: usize| Ok(evaluators[i].sample(c_grid_farad[j])?.gamma);
    let gamma = if sequential {
        Grid::try_from_fn_seq(theta_grid_rad.len(), c_grid_farad.len(), eval)?
    } else {
        Grid::try_from_fn(theta_grid_rad.len(), c_grid_farad.len(), eval)?
    };
    Ok(LookupTable {
        f_hz,
        pol,
        theta_grid_rad: theta_grid_rad.to_vec(),
        c_grid_farad: c_grid_farad.to_vec(),
        gamma,
    })
}

/// Tabulates the reflection coefficient on the given grids. Entries are
/// evaluated concurrently when the `parallel` feature is active; the result
/// is bitwise identical to [`build_lookup_table_seq`].
pub fn build_lookup_table(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    f_hz: f64,
    pol: Polarization,
    theta_grid_rad: &[f64],
    c_grid_farad: &[f64],
) -> Result<LookupTable> {
    build_impl(cell, var, f_hz, pol, theta_grid_rad, c_grid_farad, false)
}

/// Single-threaded reference implementation of [`build_lookup_table`].
pub fn build_lookup_table_seq(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    f_hz: f64,
    pol: Polarization,
    theta_grid_rad: &[f64],
    c_grid_farad: &[f64],
) -> Result<LookupTable> {
    build_impl(cell, var, f_hz, pol, theta_grid_rad, c_grid_farad, true)
}

/// Bracket of `x` in an ascending grid: (lower index, upper index, weight).
/// Exact node hits return (i, i, 0) so interpolation reproduces stored
/// entries bit-for-bit.
fn locate(name: &str, grid: &[f64], x: f64) -> Result<(usize, usize, f64)> {
    let (lo, hi) = (grid[0], *grid.last().unwrap());
    if !x.is_finite() || x < lo || x > hi {
        return Err(Error::GridBounds {
            reason: format!("{name} = {x:e} outside the tabulated range [{lo:e}, {hi:e}]"),
        });
    }
    match grid.binary_search_by(|g| g.partial_cmp(&x).unwrap()) {
        Ok(i) => Ok((i, i, 0.0)),
        Err(ins) => {
            let i0 = ins - 1; // x > lo, so ins >= 1
            Ok((i0, ins, (x - grid[i0]) / (grid[ins] - grid[i0])))
        }
    }
}

fn lerp(a: Complex64, b: Complex64, t: f64) -> Complex64 {
    if t == 0.0 {
        a
    } else {
        a + (b - a) * t
    }
}

impl LookupTable {
    /// Bilinear interpolation of Gamma at (theta, C), done on the real and
    /// imaginary parts (never on amplitude/phase, which would wrap). Exact
    /// grid nodes reproduce the stored entries bit-for-bit; queries outside
    /// the tabulated rectangle are errors.
    pub fn interpolate(&self, theta_rad: f64, c_farad: f64) -> Result<Complex64> {
        let (i0, i1, ti) = locate("theta", &self.theta_grid_rad, theta_rad)?;
        let (j0, j1, tj) = locate("capacitance", &self.c_grid_farad, c_farad)?;
        let g = &self.gamma;
        let lo = lerp(g[(i0, j0)], g[(i0, j1)], tj);
        let hi = lerp(g[(i1, j0)], g[(i1, j1)], tj);
        Ok(lerp(lo, hi, ti))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::reflection_coefficient;
    use approx::assert_relative_eq;

    fn cell() -> UnitCellDesign {
        UnitCellDesign::new(
            5e-3,
            5e-3,
            0.5e-3,
            0.5e-3,
            1.2e-3,
            Complex64::new(4.4, -0.088),
            58.7e6,
        )
        .unwrap()
    }

    fn varactor() -> VaractorModel {
        VaractorModel::with_default_parasitics(0.1e-12, 0.5e-12).unwrap()
    }

    fn thetas(n: usize) -> Vec<f64> {
        crate::numeric::lin_spaced(0.0, 80f64.to_radians(), n)
    }

    fn caps(n: usize) -> Vec<f64> {
        crate::numeric::lin_spaced(0.1e-12, 0.5e-12, n)
    }

    #[test]
    fn single_entry_table_equals_the_direct_call() {
        let t = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TM, &[0.0], &[0.3e-12])
            .unwrap();
        let direct = reflection_coefficient(
            &cell(),
            &varactor(),
            0.3e-12,
            &IncidentWave::new(8e9, 0.0, Polarization::TM).unwrap(),
        )
        .unwrap();
        assert_eq!(t.gamma[(0, 0)], direct.gamma);
    }

    #[test]
    fn interpolation_is_exact_at_grid_nodes_and_smooth_between() {
        let th = thetas(7);
        let cs = caps(6);
        let t = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TE, &th, &cs).unwrap();
        for (i, &theta) in th.iter().enumerate() {
            for (j, &c) in cs.iter().enumerate() {
                assert_eq!(t.interpolate(theta, c).unwrap(), t.gamma[(i, j)]);
            }
        }
        // between nodes the bilinear estimate stays close to the model
        let dense = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TE, &thetas(61), &caps(51))
            .unwrap();
        let mid_theta = 0.5 * (th[2] + th[3]);
        let mid_c = 0.5 * (cs[2] + cs[3]);
        let approx_g = t.interpolate(mid_theta, mid_c).unwrap();
        let exact = dense.interpolate(mid_theta, mid_c).unwrap();
        assert!((approx_g - exact).norm() < 0.05, "bilinear error too large");
    }

    #[test]
    fn queries_outside_the_grids_are_rejected() {
        let t = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TE, &thetas(4), &caps(4))
            .unwrap();
        assert!(matches!(
            t.interpolate(-0.01, 0.2e-12),
            Err(Error::GridBounds { .. })
        ));
        assert!(matches!(
            t.interpolate(0.1, 0.6e-12),
            Err(Error::GridBounds { .. })
        ));
    }

    #[test]
    fn grid_validation_rejects_malformed_axes() {
        let c = cell();
        let v = varactor();
        let bad = build_lookup_table(&c, &v, 8e9, Polarization::TE, &[], &caps(3));
        assert!(matches!(bad, Err(Error::GridBounds { .. })));
        let bad = build_lookup_table(&c, &v, 8e9, Polarization::TE, &[0.2, 0.1], &caps(3));
        assert!(matches!(bad, Err(Error::GridBounds { .. })));
        let bad = build_lookup_table(&c, &v, 8e9, Polarization::TE, &[0.0, FRAC_PI_2], &caps(3));
        assert!(matches!(bad, Err(Error::GridBounds { .. })));
        let bad = build_lookup_table(&c, &v, 8e9, Polarization::TE, &thetas(3), &[0.05e-12, 0.2e-12]);
        assert!(matches!(bad, Err(Error::GridBounds { .. })));
    }

    #[test]
    fn te_and_tm_tables_share_the_normal_row_and_differ_oblique() {
        let th = thetas(5);
        let cs = caps(5);
        let te = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TE, &th, &cs).unwrap();
        let tm = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TM, &th, &cs).unwrap();
        for j in 0..cs.len() {
            let a = te.gamma[(0, j)];
            let b = tm.gamma[(0, j)];
            assert_relative_eq!(a.re, b.re, max_relative = 1e-12);
            assert_relative_eq!(a.im, b.im, max_relative = 1e-12);
        }
        let mut any_differ = false;
        for i in 1..th.len() {
            for j in 0..cs.len() {
                if (te.gamma[(i, j)] - tm.gamma[(i, j)]).norm() > 1e-6 {
                    any_differ = true;
                }
            }
        }
        assert!(any_differ, "TE and TM must split away from normal incidence");
    }

    #[test]
    fn parallel_and_sequential_builds_agree_bitwise() {
        let th = thetas(6);
        let cs = caps(7);
        let a = build_lookup_table(&cell(), &varactor(), 8e9, Polarization::TM, &th, &cs).unwrap();
        let b = build_lookup_table_seq(&cell(), &varactor(), 8e9, Polarization::TM, &th, &cs).unwrap();
        assert_eq!(a, b);
    }
}
