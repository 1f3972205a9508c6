//! Coherent link budget: antenna gains, per-cell bistatic scattering
//! cross-sections, the received-power summation, 2-D power maps over a
//! receive plane, and the flat-plate / far-field closed forms that serve as
//! analytic oracles for it all.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::{CellGeometry, LinkScenario, Vec3};
use crate::grid::Grid;
use crate::numeric::sinc;

const FOUR_PI: f64 = 4.0 * PI;

/// How the cos^q antenna pattern is normalized to a gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainNormalization {
    /// Proper solid-angle normalization: G = 2 (q + 1) cos^q(theta).
    #[default]
    SolidAngle,
    /// Normalization by the polar-angle integral without the sin(theta)
    /// Jacobian, G = 2 cos^q(theta) / Int_0^{pi/2} cos^q dtheta; an auditing
    /// variant, not physically normalized.
    PolarIntegral,
}

/// cos^q with cheap paths for the common integer exponents.
fn cos_pow(c: f64, q: f64) -> f64 {
    if q == 0.0 {
        1.0
    } else if q == 1.0 {
        c
    } else if q == 2.0 {
        c * c
    } else {
        c.powf(q)
    }
}

/// The factor multiplying cos^q(theta) for the chosen normalization.
pub fn gain_normalization_factor(model: GainNormalization, q: f64) -> f64 {
    match model {
        GainNormalization::SolidAngle => 2.0 * (q + 1.0),
        GainNormalization::PolarIntegral => {
            let integral = if q == 0.0 {
                FRAC_PI_2
            } else if q == 1.0 {
                1.0
            } else if q == 2.0 {
                PI / 4.0
            } else {
                crate::numeric::simpson(|t| cos_pow(t.cos(), q), 0.0, FRAC_PI_2, 2048)
            };
            2.0 / integral
        }
    }
}

/// Antenna gain of the cos^q hemispherical pattern under the given
/// normalization; zero behind the pattern (theta >= pi/2).
pub fn antenna_gain_with(model: GainNormalization, q: f64, theta_rad: f64) -> f64 {
    if theta_rad >= FRAC_PI_2 {
        return 0.0;
    }
    gain_normalization_factor(model, q) * cos_pow(theta_rad.cos(), q)
}

/// Antenna gain with the default solid-angle normalization:
/// G = 2 (q + 1) cos^q(theta), zero for theta >= pi/2.
pub fn antenna_gain(q: f64, theta_rad: f64) -> f64 {
    antenna_gain_with(GainNormalization::SolidAngle, q, theta_rad)
}

/// Cell period traversed along the scenario's in-plane axis: the period
/// itself on a principal plane, the period-ellipse radius in between.
fn inplane_period(period_x_m: f64, period_y_m: f64, axis: (f64, f64)) -> f64 {
    ((period_x_m * axis.0).powi(2) + (period_y_m * axis.1).powi(2)).sqrt()
}

/// Bistatic scattering cross-section of one cell treated as a small metallic
/// plate, m^2:
///
/// sigma = 4 pi (Dx Dy / lambda)^2 cos^2(theta_t) sinc^2((k p / 2)(s_t + s_r))
///
/// where p is the cell period along the in-plane axis and s_t, s_r the
/// signed in-plane sines of the two rays, so the pattern peaks exactly at
/// the specular direction (s_t + s_r = 0); the sinc's removable singularity
/// is handled analytically.
pub fn unit_cell_rcs(
    geom: &CellGeometry,
    wavelength_m: f64,
    period_x_m: f64,
    period_y_m: f64,
) -> f64 {
    let k = 2.0 * PI / wavelength_m;
    let p = inplane_period(period_x_m, period_y_m, geom.inplane_axis);
    let arg = 0.5 * k * p * (geom.sin_inplane_tx + geom.sin_inplane_rx);
    let pattern = sinc(arg);
    FOUR_PI
        * (period_x_m * period_y_m / wavelength_m).powi(2)
        * geom.theta_tx_rad.cos().powi(2)
        * pattern
        * pattern
}

/// Radar cross-section of a rectangular a x b metallic plate, m^2, full 3-D
/// physical-optics form for incidence in the yz-plane at polar angle
/// theta_i and scattering toward (theta_s, phi_s):
///
/// sigma = 4 pi (a b / lambda)^2 (cos^2 theta_s sin^2 phi_s + cos^2 phi_s)
///         sinc^2(X) sinc^2(Y),
/// X = (k a / 2) sin theta_s cos phi_s,
/// Y = (k b / 2)(sin theta_s sin phi_s - sin theta_i).
pub fn plate_rcs(
    a_m: f64,
    b_m: f64,
    theta_i_rad: f64,
    theta_s_rad: f64,
    phi_s_rad: f64,
    wavelength_m: f64,
) -> f64 {
    let k = 2.0 * PI / wavelength_m;
    let (st, ct) = (theta_s_rad.sin(), theta_s_rad.cos());
    let (sp, cp) = (phi_s_rad.sin(), phi_s_rad.cos());
    let x = 0.5 * k * a_m * st * cp;
    let y = 0.5 * k * b_m * (st * sp - theta_i_rad.sin());
    let projection = ct * ct * sp * sp + cp * cp;
    FOUR_PI * (a_m * b_m / wavelength_m).powi(2) * projection * (sinc(x) * sinc(y)).powi(2)
}

/// In-plane (phi_s = 90 deg) reduction of the plate cross-section with the
/// cos^2(theta_i) projection, m^2; theta_s is signed in the incidence plane
/// with the specular direction at theta_s = theta_i:
///
/// sigma = 4 pi (a b / lambda)^2 cos^2(theta_i)
///         sinc^2((k b / 2)(sin theta_s - sin theta_i)).
///
/// Off the specular peak this reduction differs from `plate_rcs` at
/// phi_s = 90 deg, whose projection factor carries cos^2(theta_s) instead;
/// the two coincide where the pattern peaks.
pub fn plate_rcs_in_plane(
    a_m: f64,
    b_m: f64,
    theta_i_rad: f64,
    theta_s_rad: f64,
    wavelength_m: f64,
) -> f64 {
    let k = 2.0 * PI / wavelength_m;
    let y = 0.5 * k * b_m * (theta_s_rad.sin() - theta_i_rad.sin());
    let pattern = sinc(y);
    FOUR_PI
        * (a_m * b_m / wavelength_m).powi(2)
        * theta_i_rad.cos().powi(2)
        * pattern
        * pattern
}

/// A closed-form power estimate plus the health of the far-field
/// approximation behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PecPowerEstimate {
    pub power_w: f64,
    /// Both antennas are far enough from the surface for the single-angle
    /// (far-field) abstraction to hold; a warning flag, not an error.
    pub far_field_ok: bool,
}

fn surface_diagonal(s: &LinkScenario) -> f64 {
    (s.aperture_x_m().powi(2) + s.aperture_y_m().powi(2)).sqrt()
}

/// Far-field received power for a fully reflective surface (every cell
/// scattering like a metallic plate, |Gamma| = 1, phases cohering at the
/// surface center), watts:
///
/// P_r = P_t lambda^2 (M N)^2 G_t G_r sigma(theta_t, theta_r)
///       / ((4 pi)^3 r_t^2 r_r^2)
///
/// with every angle and distance taken at the surface center.
/// `far_field_ok` requires both distances beyond the Fraunhofer distance
/// 2 d^2 / lambda of the surface diagonal d and beyond 10 d.
pub fn pec_closed_form_power(scenario: &LinkScenario) -> Result<PecPowerEstimate> {
    let g = scenario.surface_center_geometry()?;
    let lambda = scenario.wavelength_m();
    let cells = (scenario.rows * scenario.cols) as f64;
    let g_t = antenna_gain_with(scenario.gain_model, scenario.q_tx, g.theta_tx_rad);
    let g_r = antenna_gain_with(scenario.gain_model, scenario.q_rx, g.theta_rx_rad);
    let sigma = unit_cell_rcs(&g, lambda, scenario.cell.period_x_m, scenario.cell.period_y_m);
    let power_w = scenario.tx_power_w * lambda * lambda * cells * cells * g_t * g_r * sigma
        / (FOUR_PI.powi(3) * g.r_tx_m * g.r_tx_m * g.r_rx_m * g.r_rx_m);
    let d = surface_diagonal(scenario);
    let fraunhofer = 2.0 * d * d / lambda;
    let near = g.r_tx_m.min(g.r_rx_m);
    Ok(PecPowerEstimate {
        power_w,
        far_field_ok: near >= fraunhofer && near >= 10.0 * d,
    })
}

/// Frequency-independent closed form for the specular bistatic arrangement
/// of a fully reflective surface, watts:
///
/// P_r = P_t (A_x A_y)^2 G_t G_r cos^2(theta_t) / ((4 pi)^2 r_t^2 r_r^2)
///
/// with A_x, A_y the surface side lengths and all quantities at the surface
/// center. Because no wavelength enters, `far_field_ok` here only requires
/// both distances beyond 10 surface diagonals.
pub fn pec_bistatic_specular_power(scenario: &LinkScenario) -> Result<PecPowerEstimate> {
    let g = scenario.surface_center_geometry()?;
    let g_t = antenna_gain_with(scenario.gain_model, scenario.q_tx, g.theta_tx_rad);
    let g_r = antenna_gain_with(scenario.gain_model, scenario.q_rx, g.theta_rx_rad);
    let area = scenario.aperture_x_m() * scenario.aperture_y_m();
    let cos_t = g.theta_tx_rad.cos();
    let power_w = scenario.tx_power_w * area * area * g_t * g_r * cos_t * cos_t
        / (FOUR_PI.powi(2) * g.r_tx_m * g.r_tx_m * g.r_rx_m * g.r_rx_m);
    let d = surface_diagonal(scenario);
    let near = g.r_tx_m.min(g.r_rx_m);
    Ok(PecPowerEstimate {
        power_w,
        far_field_ok: near >= 10.0 * d,
    })
}

/// Transmit-side precomputation for one cell: everything in its summand
/// that does not depend on the receive point.
struct CellTx {
    pos: Vec3,
    sin_inplane_tx: f64,
    /// sqrt(G_t) cos(theta_t) sqrt(4 pi) (Dx Dy / lambda) Gamma
    /// e^{-j k r_t} / r_t
    amplitude: Complex64,
}

/// The coherent-sum kernel: per-cell transmit factors plus the scalars the
/// receive side needs. Built once, then evaluated at any receive point.
struct LinkKernel {
    cells: Vec<CellTx>,
    axis: (f64, f64),
    k0: f64,
    half_k_period: f64,
    q_rx: f64,
    gr_norm: f64,
    /// P_t lambda^2 / (4 pi)^3
    prefactor: f64,
}

impl LinkKernel {
    fn new(scenario: &LinkScenario, gamma: &Grid<Complex64>) -> Result<Self> {
        if gamma.rows() != scenario.rows || gamma.cols() != scenario.cols {
            return Err(Error::ShapeMismatch {
                context: "received power",
                rows_a: scenario.rows,
                cols_a: scenario.cols,
                rows_b: gamma.rows(),
                cols_b: gamma.cols(),
            });
        }
        for (_, _, g) in gamma.iter_indexed() {
            let magnitude = g.norm();
            if magnitude > 1.0 + 1e-9 || magnitude.is_nan() {
                return Err(Error::Domain {
                    name: "gamma",
                    value: magnitude,
                    requirement: "every |gamma| <= 1 + 1e-9 (passive surface)",
                });
            }
        }
        let lambda = scenario.wavelength_m();
        let k0 = scenario.wavenumber();
        let axis = scenario.inplane_axis();
        let gt_norm = gain_normalization_factor(scenario.gain_model, scenario.q_tx);
        let area_over_lambda = scenario.cell.period_x_m * scenario.cell.period_y_m / lambda;
        let mut cells = Vec::with_capacity(scenario.rows * scenario.cols);
        for row in 0..scenario.rows {
            for col in 0..scenario.cols {
                let g = scenario.cell_geometry(row, col)?;
                let cos_t = g.theta_tx_rad.cos();
                let sqrt_gt = (gt_norm * cos_pow(cos_t, scenario.q_tx)).sqrt();
                let scale =
                    sqrt_gt * cos_t * FOUR_PI.sqrt() * area_over_lambda / g.r_tx_m;
                let amplitude = gamma[(row, col)]
                    * Complex64::from_polar(scale, -k0 * g.r_tx_m);
                cells.push(CellTx {
                    pos: g.position_m,
                    sin_inplane_tx: g.sin_inplane_tx,
                    amplitude,
                });
            }
        }
        let p = inplane_period(scenario.cell.period_x_m, scenario.cell.period_y_m, axis);
        Ok(Self {
            cells,
            axis,
            k0,
            half_k_period: 0.5 * k0 * p,
            q_rx: scenario.q_rx,
            gr_norm: gain_normalization_factor(scenario.gain_model, scenario.q_rx),
            prefactor: scenario.tx_power_w * lambda * lambda / FOUR_PI.powi(3),
        })
    }

    /// Received power at the given point, watts. The per-cell sum always
    /// runs sequentially in row-major order so results are bitwise
    /// reproducible regardless of any outer parallelism.
    fn power_at(&self, rx: Vec3) -> Result<f64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for cell in &self.cells {
            let d = rx - cell.pos;
            let r = d.norm();
            if r < 1e-12 {
                return Err(Error::Geometry {
                    reason: format!(
                        "receive point coincides with the cell center at ({}, {}, {}) m",
                        cell.pos.x, cell.pos.y, cell.pos.z
                    ),
                });
            }
            let cos_r = d.z / r;
            if cos_r <= 0.0 {
                continue; // behind the surface plane: no gain, no contribution
            }
            let sqrt_gr = (self.gr_norm * cos_pow(cos_r, self.q_rx)).sqrt();
            let s_r = (d.x * self.axis.0 + d.y * self.axis.1) / r;
            let pattern = sinc(self.half_k_period * (cell.sin_inplane_tx + s_r)).abs();
            acc += cell.amplitude
                * Complex64::from_polar(sqrt_gr * pattern / r, -self.k0 * r);
        }
        Ok(self.prefactor * acc.norm_sqr())
    }
}

/// Received power of the coherent cell sum, watts:
///
/// P_r = (P_t lambda^2 / (4 pi)^3)
///       |Sum_{m,n} sqrt(G_t G_r sigma_{m,n}) Gamma_{m,n}
///        e^{-j k0 (r_t + r_r)} / (r_t r_r)|^2
///
/// The per-cell amplitudes add coherently before squaring; gains are
/// evaluated at each cell's own ray angles, and Gamma is the supplied
/// per-cell reflection matrix. Swapping the antennas leaves the result
/// unchanged on monostatic arrangements, and on mirror-symmetric ones when
/// both antennas share the same gain exponent (mirroring the lattice
/// re-pairs every transmit-side angle with itself). With unequal exponents
/// or general bistatic geometry the swap is inequivalent by construction:
/// sigma carries a one-sided cos^2(theta_t) factor.
pub fn received_power(scenario: &LinkScenario, gamma: &Grid<Complex64>) -> Result<f64> {
    LinkKernel::new(scenario, gamma)?.power_at(scenario.rx_pos_m)
}

/// Axis-aligned receive plane at fixed y: nx samples across [x_min, x_max]
/// by nz samples across [z_min, z_max], all strictly above the surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapPlane {
    pub x_min_m: f64,
    pub x_max_m: f64,
    pub z_min_m: f64,
    pub z_max_m: f64,
    pub y_m: f64,
    pub nx: usize,
    pub nz: usize,
}

impl MapPlane {
    pub fn validate(&self) -> Result<()> {
        let nums = [
            self.x_min_m,
            self.x_max_m,
            self.z_min_m,
            self.z_max_m,
            self.y_m,
        ];
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(Error::GridBounds {
                reason: "map plane extents must be finite".into(),
            });
        }
        if self.nx == 0 || self.nz == 0 {
            return Err(Error::GridBounds {
                reason: format!("map plane needs at least one sample, got {} x {}", self.nx, self.nz),
            });
        }
        if self.x_max_m < self.x_min_m || self.z_max_m < self.z_min_m {
            return Err(Error::GridBounds {
                reason: "map plane extents must be ordered (min <= max)".into(),
            });
        }
        if self.z_min_m <= 0.0 {
            return Err(Error::GridBounds {
                reason: format!(
                    "map plane must lie strictly above the surface plane, got z_min = {} m",
                    self.z_min_m
                ),
            });
        }
        Ok(())
    }

    pub fn x_samples(&self) -> Vec<f64> {
        crate::numeric::lin_spaced(self.x_min_m, self.x_max_m, self.nx)
    }

    pub fn z_samples(&self) -> Vec<f64> {
        crate::numeric::lin_spaced(self.z_min_m, self.z_max_m, self.nz)
    }
}

/// Received power sampled over a receive plane; powers in watts, with the
/// transmit power retained so consumers can report dB relative to it.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMap {
    pub plane: MapPlane,
    pub tx_power_w: f64,
    /// Row i = x sample i, column j = z sample j.
    pub power_w: Grid<f64>,
}

fn field_map_impl(
    scenario: &LinkScenario,
    plane: &MapPlane,
    gamma: &Grid<Complex64>,
    sequential: bool,
) -> Result<FieldMap> {
    plane.validate()?;
    let kernel = LinkKernel::new(scenario, gamma)?;
    let xs = plane.x_samples();
    let zs = plane.z_samples();
    let y = plane.y_m;
    let eval = |i: usize, j: usize| kernel.power_at(Vec3::new(xs[i], y, zs[j]));
    let power_w = if sequential {
        Grid::try_from_fn_seq(plane.nx, plane.nz, eval)?
    } else {
        Grid::try_from_fn(plane.nx, plane.nz, eval)?
    };
    Ok(FieldMap {
        plane: *plane,
        tx_power_w: scenario.tx_power_w,
        power_w,
    })
}

/// Sweeps the receive point over the plane and evaluates the coherent sum at
/// every pixel with the Gamma matrix held fixed (synthesized once for the
/// nominal receiver). Pixels are evaluated concurrently when the `parallel`
/// feature is active; the per-pixel cell sum stays sequential, so the output
/// is bitwise identical to [`field_map_seq`].
pub fn field_map(
    scenario: &LinkScenario,
    plane: &MapPlane,
    gamma: &Grid<Complex64>,
) -> Result<FieldMap> {
    field_map_impl(scenario, plane, gamma, false)
}

/// Single-threaded reference implementation of [`field_map`].
pub fn field_map_seq(
    scenario: &LinkScenario,
    plane: &MapPlane,
    gamma: &Grid<Complex64>,
) -> Result<FieldMap> {
    field_map_impl(scenario, plane, gamma, true)
}
