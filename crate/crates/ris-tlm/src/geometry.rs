//! Link-scenario geometry: antenna positions, the cell lattice in the z = 0
//! plane, and the per-cell ray quantities every power calculation consumes.

use crate::error::{Error, Result};
use crate::link::GainNormalization;
use crate::unit_cell::{IncidentWave, Polarization, UnitCellDesign, VaractorModel};

/// Cartesian position or displacement, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Length of the projection onto the surface plane.
    pub fn horizontal_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

/// Ray quantities from one cell center to both antennas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeometry {
    /// Cell center in the surface plane, meters.
    pub position_m: Vec3,
    /// Distance to the transmit antenna, meters.
    pub r_tx_m: f64,
    /// Distance to the receive antenna, meters.
    pub r_rx_m: f64,
    /// Polar angle of the transmit ray off the surface normal, rad.
    pub theta_tx_rad: f64,
    /// Polar angle of the receive ray off the surface normal, rad.
    pub theta_rx_rad: f64,
    /// Azimuth of the transmit ray in the surface plane, rad.
    pub phi_tx_rad: f64,
    /// Azimuth of the receive ray in the surface plane, rad.
    pub phi_rx_rad: f64,
    /// Signed sine of the transmit ray along the scenario's in-plane axis.
    pub sin_inplane_tx: f64,
    /// Signed sine of the receive ray along the scenario's in-plane axis.
    pub sin_inplane_rx: f64,
    /// Unit in-plane axis the signed sines are projected on.
    pub inplane_axis: (f64, f64),
}

/// A transmit antenna, a receive antenna, and a rows x cols surface of
/// identical varactor-loaded cells centered on the origin of the z = 0 plane.
///
/// Both antennas must sit strictly above the surface (z > 0). Antenna gains
/// follow the cos^q pattern; `q_tx`/`q_rx` default to 2 and the gain
/// normalization to the solid-angle rule (see the link module).
#[derive(Debug, Clone)]
pub struct LinkScenario {
    pub tx_pos_m: Vec3,
    pub rx_pos_m: Vec3,
    /// Cell count along y.
    pub rows: usize,
    /// Cell count along x.
    pub cols: usize,
    pub cell: UnitCellDesign,
    pub varactor: VaractorModel,
    pub f_hz: f64,
    pub pol: Polarization,
    pub tx_power_w: f64,
    pub q_tx: f64,
    pub q_rx: f64,
    pub gain_model: GainNormalization,
}

impl LinkScenario {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        tx_pos_m: Vec3,
        rx_pos_m: Vec3,
        rows: usize,
        cols: usize,
        cell: UnitCellDesign,
        varactor: VaractorModel,
        f_hz: f64,
        pol: Polarization,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Geometry {
                reason: format!("surface must have at least one cell, got {rows} x {cols}"),
            });
        }
        for (name, p) in [("tx", tx_pos_m), ("rx", rx_pos_m)] {
            if !p.is_finite() {
                return Err(Error::Geometry {
                    reason: format!("{name} position must be finite"),
                });
            }
            if p.z <= 0.0 {
                return Err(Error::Geometry {
                    reason: format!(
                        "{name} antenna must sit strictly above the surface plane, got z = {} m",
                        p.z
                    ),
                });
            }
        }
        if !(f_hz > 0.0 && f_hz.is_finite()) {
            return Err(Error::Domain {
                name: "f_hz",
                value: f_hz,
                requirement: "must be positive and finite",
            });
        }
        Ok(Self {
            tx_pos_m,
            rx_pos_m,
            rows,
            cols,
            cell,
            varactor,
            f_hz,
            pol,
            tx_power_w: 1.0,
            q_tx: 2.0,
            q_rx: 2.0,
            gain_model: GainNormalization::SolidAngle,
        })
    }

    pub fn with_tx_power(mut self, tx_power_w: f64) -> Result<Self> {
        if !(tx_power_w > 0.0 && tx_power_w.is_finite()) {
            return Err(Error::Domain {
                name: "tx_power_w",
                value: tx_power_w,
                requirement: "must be positive and finite",
            });
        }
        self.tx_power_w = tx_power_w;
        Ok(self)
    }

    pub fn with_gain_exponents(mut self, q_tx: f64, q_rx: f64) -> Result<Self> {
        for (name, q) in [("q_tx", q_tx), ("q_rx", q_rx)] {
            if !(q >= 0.0 && q.is_finite()) {
                return Err(Error::Domain {
                    name: if name == "q_tx" { "q_tx" } else { "q_rx" },
                    value: q,
                    requirement: "must be non-negative and finite",
                });
            }
        }
        self.q_tx = q_tx;
        self.q_rx = q_rx;
        Ok(self)
    }

    pub fn with_gain_model(mut self, gain_model: GainNormalization) -> Self {
        self.gain_model = gain_model;
        self
    }

    pub fn wavelength_m(&self) -> f64 {
        crate::constants::C0 / self.f_hz
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.f_hz / crate::constants::C0
    }

    /// Surface width along x, meters.
    pub fn aperture_x_m(&self) -> f64 {
        self.cols as f64 * self.cell.period_x_m
    }

    /// Surface height along y, meters.
    pub fn aperture_y_m(&self) -> f64 {
        self.rows as f64 * self.cell.period_y_m
    }

    /// Unit axis in the surface plane along which in-plane sines are signed:
    /// the transmit antenna's horizontal direction, falling back to the
    /// receiver's and finally to +x when an antenna is directly overhead.
    pub fn inplane_axis(&self) -> (f64, f64) {
        const TINY: f64 = 1e-12;
        let t = self.tx_pos_m.horizontal_norm();
        if t > TINY {
            return (self.tx_pos_m.x / t, self.tx_pos_m.y / t);
        }
        let r = self.rx_pos_m.horizontal_norm();
        if r > TINY {
            return (self.rx_pos_m.x / r, self.rx_pos_m.y / r);
        }
        (1.0, 0.0)
    }

    /// Center of the cell at 0-based (row, col); rows count along y,
    /// columns along x, and the lattice is centered on the origin.
    pub fn cell_center(&self, row: usize, col: usize) -> Vec3 {
        let x = (col as f64 - (self.cols as f64 - 1.0) / 2.0) * self.cell.period_x_m;
        let y = (row as f64 - (self.rows as f64 - 1.0) / 2.0) * self.cell.period_y_m;
        Vec3::new(x, y, 0.0)
    }

    /// Ray geometry between the cell at (row, col) and both antennas.
    pub fn cell_geometry(&self, row: usize, col: usize) -> Result<CellGeometry> {
        let pos = self.cell_center(row, col);
        let axis = self.inplane_axis();
        let (r_tx_m, theta_tx_rad, phi_tx_rad, sin_inplane_tx) =
            ray_to(self.tx_pos_m, pos, axis)?;
        let (r_rx_m, theta_rx_rad, phi_rx_rad, sin_inplane_rx) =
            ray_to(self.rx_pos_m, pos, axis)?;
        Ok(CellGeometry {
            position_m: pos,
            r_tx_m,
            r_rx_m,
            theta_tx_rad,
            theta_rx_rad,
            phi_tx_rad,
            phi_rx_rad,
            sin_inplane_tx,
            sin_inplane_rx,
            inplane_axis: axis,
        })
    }

    /// Ray geometry between the surface center (the origin) and both
    /// antennas: the single-point abstraction the closed-form far-field
    /// estimates evaluate the whole surface at.
    pub fn surface_center_geometry(&self) -> Result<CellGeometry> {
        let origin = Vec3::new(0.0, 0.0, 0.0);
        let axis = self.inplane_axis();
        let (r_tx_m, theta_tx_rad, phi_tx_rad, sin_inplane_tx) =
            ray_to(self.tx_pos_m, origin, axis)?;
        let (r_rx_m, theta_rx_rad, phi_rx_rad, sin_inplane_rx) =
            ray_to(self.rx_pos_m, origin, axis)?;
        Ok(CellGeometry {
            position_m: origin,
            r_tx_m,
            r_rx_m,
            theta_tx_rad,
            theta_rx_rad,
            phi_tx_rad,
            phi_rx_rad,
            sin_inplane_tx,
            sin_inplane_rx,
            inplane_axis: axis,
        })
    }

    /// Incident wave for this scenario's frequency and polarization at the
    /// given angle.
    pub fn wave_at(&self, theta_rad: f64) -> Result<IncidentWave> {
        IncidentWave::new(self.f_hz, theta_rad, self.pol)
    }
}

/// Distance, polar angle, azimuth, and signed in-plane sine of the ray from
/// `cell` up to `antenna`, with the in-plane sine projected on `axis`.
fn ray_to(antenna: Vec3, cell: Vec3, axis: (f64, f64)) -> Result<(f64, f64, f64, f64)> {
    let d = antenna - cell;
    let r = d.norm();
    if r < 1e-12 {
        return Err(Error::Geometry {
            reason: format!(
                "antenna coincides with the cell center at ({}, {}, {}) m",
                cell.x, cell.y, cell.z
            ),
        });
    }
    let theta = (d.z / r).clamp(-1.0, 1.0).acos();
    let phi = d.y.atan2(d.x);
    let sin_inplane = (d.x * axis.0 + d.y * axis.1) / r;
    Ok((r, theta, phi, sin_inplane))
}
