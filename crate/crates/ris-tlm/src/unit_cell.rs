//! Domain types: unit-cell geometry, varactor model and incident wave.
//!
//! Conventions used throughout the crate: time dependence exp(+j w t),
//! propagation exp(-j k r). Lossy permittivity therefore carries a
//! non-positive imaginary part (for example 4.4 - j0.088).

use num_complex::Complex64;

use crate::constants::C0;
use crate::error::{Error, Result};

/// Transverse polarization of the incident plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    TE,
    TM,
}

impl std::fmt::Display for Polarization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Polarization::TE => "TE",
            Polarization::TM => "TM",
        })
    }
}

impl std::str::FromStr for Polarization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "TE" | "te" | "Te" => Ok(Polarization::TE),
            "TM" | "tm" | "Tm" => Ok(Polarization::TM),
            other => Err(format!("unknown polarization {other:?}, expected TE or TM")),
        }
    }
}

/// Exponent on the (k0/k_eff) ratio in the TE capacitance angle factor.
/// `One` follows the closed form this crate models; `Two` is the variant
/// found in part of the grid-impedance literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TeFactorExponent {
    #[default]
    One,
    Two,
}

/// Conductor skin-depth model. `Standard` is sqrt(2 / (sigma w mu0));
/// `LegacyPrinted` reproduces 2 / sqrt(sigma w mu0), a dimensionally
/// inconsistent variant kept selectable for auditing older results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SkinDepthModel {
    #[default]
    Standard,
    LegacyPrinted,
}

/// Printed-circuit unit cell: a square metal patch array over a grounded
/// dielectric slab. Lengths in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCellDesign {
    /// Lattice period along x, m.
    pub period_x_m: f64,
    /// Lattice period along y, m.
    pub period_y_m: f64,
    /// Gap between adjacent patches along x, m.
    pub gap_x_m: f64,
    /// Gap between adjacent patches along y, m.
    pub gap_y_m: f64,
    /// Dielectric slab thickness, m.
    pub thickness_m: f64,
    /// Relative permittivity of the slab; Im <= 0 under exp(+j w t).
    pub eps_r: Complex64,
    /// Patch metal conductivity, S/m. `f64::INFINITY` models a perfect conductor.
    pub conductivity_s_m: f64,
    /// Apply the patch-to-ground capacitance correction (square cells only).
    /// Defaults to true when the cell is square and thickness/period < 1,
    /// the regime where the correction matters.
    pub ground_correction: bool,
    /// TE capacitance angle-factor variant.
    pub te_factor_exponent: TeFactorExponent,
    /// Conductor loss model variant.
    pub skin_depth_model: SkinDepthModel,
}

/// Relative tolerance used when testing the cell for squareness.
const SQUARE_REL_TOL: f64 = 1e-9;

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= SQUARE_REL_TOL * a.abs().max(b.abs())
}

impl UnitCellDesign {
    pub fn new(
        period_x_m: f64,
        period_y_m: f64,
        gap_x_m: f64,
        gap_y_m: f64,
        thickness_m: f64,
        eps_r: Complex64,
        conductivity_s_m: f64,
    ) -> Result<Self> {
        let positive = |name, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain {
                    name,
                    value,
                    requirement: "must be positive and finite",
                })
            }
        };
        positive("period_x_m", period_x_m)?;
        positive("period_y_m", period_y_m)?;
        positive("thickness_m", thickness_m)?;
        for (name, gap, period) in [
            ("gap_x_m", gap_x_m, period_x_m),
            ("gap_y_m", gap_y_m, period_y_m),
        ] {
            if !(gap > 0.0 && gap < period) {
                return Err(Error::Domain {
                    name,
                    value: gap,
                    requirement: "must satisfy 0 < gap < period",
                });
            }
        }
        if !(eps_r.re >= 1.0 && eps_r.re.is_finite()) {
            return Err(Error::Domain {
                name: "Re(eps_r)",
                value: eps_r.re,
                requirement: "must be >= 1 and finite",
            });
        }
        if !(eps_r.im <= 0.0 && eps_r.im.is_finite()) {
            return Err(Error::Domain {
                name: "Im(eps_r)",
                value: eps_r.im,
                requirement: "must be <= 0 (lossy under exp(+j w t)) and finite",
            });
        }
        if conductivity_s_m <= 0.0 || conductivity_s_m.is_nan() {
            return Err(Error::Domain {
                name: "conductivity_s_m",
                value: conductivity_s_m,
                requirement: "must be > 0 (infinity allowed)",
            });
        }
        let square = nearly_equal(period_x_m, period_y_m) && nearly_equal(gap_x_m, gap_y_m);
        let ground_correction = square && thickness_m / period_x_m < 1.0;
        Ok(Self {
            period_x_m,
            period_y_m,
            gap_x_m,
            gap_y_m,
            thickness_m,
            eps_r,
            conductivity_s_m,
            ground_correction,
            te_factor_exponent: TeFactorExponent::default(),
            skin_depth_model: SkinDepthModel::default(),
        })
    }

    /// True when periods and gaps agree on both axes.
    pub fn is_square(&self) -> bool {
        nearly_equal(self.period_x_m, self.period_y_m) && nearly_equal(self.gap_x_m, self.gap_y_m)
    }

    /// Largest lattice period, m.
    pub fn max_period_m(&self) -> f64 {
        self.period_x_m.max(self.period_y_m)
    }

    /// Frequency above which higher-order lattice modes start to propagate:
    /// f = c / (D (sqrt(Re(eps_r)) + sin(theta))), D the larger period.
    ///
    /// The homogenized model is only trustworthy below this limit; evaluating
    /// above it raises a model-validity warning, not an error.
    pub fn grating_lobe_limit_hz(&self, theta_rad: f64) -> f64 {
        C0 / (self.max_period_m() * (self.eps_r.re.sqrt() + theta_rad.sin()))
    }
}

/// Average of slab and vacuum permittivities; the patch array sees this
/// effective host medium.
pub fn effective_permittivity(eps_r: Complex64) -> Complex64 {
    (Complex64::new(1.0, 0.0) + eps_r) / 2.0
}

/// Series RLC model of a reverse-biased varactor diode plus its package
/// parasitics, with the tunable junction capacitance range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaractorModel {
    /// Series loss resistance, ohm.
    pub resistance_ohm: f64,
    /// Series package inductance, H.
    pub inductance_h: f64,
    /// Lower end of the tunable capacitance, F.
    pub c_min_farad: f64,
    /// Upper end of the tunable capacitance, F.
    pub c_max_farad: f64,
}

/// Series resistance assumed when a datasheet value is not given, ohm.
pub const DEFAULT_VARACTOR_RESISTANCE_OHM: f64 = 0.5;

/// Package inductance assumed when a datasheet value is not given, H.
/// This value is a calibration knob; see docs/phase_span_calibration.md.
pub const DEFAULT_VARACTOR_INDUCTANCE_H: f64 = 0.7e-9;

impl VaractorModel {
    pub fn new(
        resistance_ohm: f64,
        inductance_h: f64,
        c_min_farad: f64,
        c_max_farad: f64,
    ) -> Result<Self> {
        if !(resistance_ohm >= 0.0 && resistance_ohm.is_finite()) {
            return Err(Error::Domain {
                name: "resistance_ohm",
                value: resistance_ohm,
                requirement: "must be >= 0 and finite",
            });
        }
        if !(inductance_h >= 0.0 && inductance_h.is_finite()) {
            return Err(Error::Domain {
                name: "inductance_h",
                value: inductance_h,
                requirement: "must be >= 0 and finite",
            });
        }
        if !(c_min_farad > 0.0 && c_min_farad.is_finite()) {
            return Err(Error::Domain {
                name: "c_min_farad",
                value: c_min_farad,
                requirement: "must be > 0 and finite",
            });
        }
        if !(c_max_farad >= c_min_farad && c_max_farad.is_finite()) {
            return Err(Error::Domain {
                name: "c_max_farad",
                value: c_max_farad,
                requirement: "must be >= c_min_farad and finite",
            });
        }
        Ok(Self {
            resistance_ohm,
            inductance_h,
            c_min_farad,
            c_max_farad,
        })
    }

    /// Model with the default parasitics and the given tuning range.
    pub fn with_default_parasitics(c_min_farad: f64, c_max_farad: f64) -> Result<Self> {
        Self::new(
            DEFAULT_VARACTOR_RESISTANCE_OHM,
            DEFAULT_VARACTOR_INDUCTANCE_H,
            c_min_farad,
            c_max_farad,
        )
    }

    /// Errors unless c_min <= c <= c_max.
    pub fn check_capacitance(&self, c_farad: f64) -> Result<()> {
        if c_farad >= self.c_min_farad && c_farad <= self.c_max_farad {
            Ok(())
        } else {
            Err(Error::CapacitanceRange {
                value: c_farad,
                min: self.c_min_farad,
                max: self.c_max_farad,
            })
        }
    }
}

/// A plane wave hitting the surface: frequency, polar incidence angle
/// (from the surface normal) and polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentWave {
    pub f_hz: f64,
    pub theta_rad: f64,
    pub pol: Polarization,
}

impl IncidentWave {
    pub fn new(f_hz: f64, theta_rad: f64, pol: Polarization) -> Result<Self> {
        if !(f_hz > 0.0 && f_hz.is_finite()) {
            return Err(Error::Domain {
                name: "f_hz",
                value: f_hz,
                requirement: "must be positive and finite",
            });
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta_rad) {
            return Err(Error::Domain {
                name: "theta_rad",
                value: theta_rad,
                requirement: "must lie in [0, pi/2)",
            });
        }
        Ok(Self {
            f_hz,
            theta_rad,
            pol,
        })
    }

    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.f_hz
    }

    pub fn wavelength_m(&self) -> f64 {
        C0 / self.f_hz
    }

    pub fn wavenumber(&self) -> f64 {
        self.omega() / C0
    }
}
