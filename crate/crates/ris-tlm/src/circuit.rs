//! Equivalent-circuit building blocks of the loaded surface.
//!
//! The surface is modeled as a patch-array sheet impedance in parallel with
//! the series RLC of the loading varactor, the whole combination in parallel
//! with the input impedance of the grounded dielectric slab behind it. All
//! impedances are transverse (per-square) quantities for the given incidence
//! angle and polarization.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::constants::{EPS0, MU0, ZETA0};
use crate::error::{Error, Result};
use crate::unit_cell::{
    effective_permittivity, IncidentWave, Polarization, SkinDepthModel, TeFactorExponent,
    UnitCellDesign, VaractorModel,
};

/// Relative tolerance below which a parallel-combination denominator is
/// treated as singular: |Z1 + Z2| < tol * max(|Z1|, |Z2|).
pub const SINGULARITY_REL_TOL: f64 = 1e-12;

/// |tan(kz d)| beyond which the grounded-slab impedance is flagged as
/// numerically saturated (the value itself stays finite in f64).
pub const TAN_SINGULARITY_LIMIT: f64 = 1e12;

pub(crate) fn parallel(z1: Complex64, z2: Complex64) -> Option<Complex64> {
    let denom = z1 + z2;
    if denom.norm() < SINGULARITY_REL_TOL * z1.norm().max(z2.norm()) {
        None
    } else {
        Some(z1 * z2 / denom)
    }
}

pub(crate) fn singular(
    stage: &'static str,
    wave: &IncidentWave,
    z1: Complex64,
    z2: Complex64,
) -> Error {
    Error::SingularCombination {
        stage,
        f_hz: wave.f_hz,
        theta_rad: wave.theta_rad,
        pol: wave.pol,
        denom_magnitude: (z1 + z2).norm(),
        tolerance: SINGULARITY_REL_TOL * z1.norm().max(z2.norm()),
    }
}

/// Sheet capacitance of the patch array seen by the incident wave, F.
///
/// The array sits in an effective host medium of permittivity
/// (1 + eps_r)/2; dielectric loss makes the capacitance complex. TM uses the
/// x-axis period and gap; TE uses the y-axis pair and an angle factor
/// 1 - (k0/k_eff)^p sin^2(theta)/2 built from the real part of the host
/// permittivity. With `ground_correction` the square-cell patch-to-ground
/// term (2 D eps0 eps_r / pi) ln(1 - exp(-4 pi d / D)) is subtracted, which
/// raises the capacitance (the term is negative).
pub fn patch_capacitance(cell: &UnitCellDesign, wave: &IncidentWave) -> Result<Complex64> {
    let eps_eff = effective_permittivity(cell.eps_r);
    let (period, gap) = match wave.pol {
        Polarization::TM => (cell.period_x_m, cell.gap_x_m),
        Polarization::TE => (cell.period_y_m, cell.gap_y_m),
    };
    let base = 2.0 * period * EPS0 / PI * eps_eff
        * (1.0 / (PI * gap / (2.0 * period)).sin()).ln();
    let mut cap = base;
    if wave.pol == Polarization::TE {
        let ratio = 1.0 / eps_eff.re.sqrt(); // k0 / k_eff in the host medium
        let ratio_pow = match cell.te_factor_exponent {
            TeFactorExponent::One => ratio,
            TeFactorExponent::Two => ratio * ratio,
        };
        cap *= 1.0 - ratio_pow * wave.theta_rad.sin().powi(2) / 2.0;
    }
    if cell.ground_correction {
        if !cell.is_square() {
            return Err(Error::NonSquareCell {
                operation: "ground-corrected patch capacitance",
                period_x_m: cell.period_x_m,
                period_y_m: cell.period_y_m,
                gap_x_m: cell.gap_x_m,
                gap_y_m: cell.gap_y_m,
            });
        }
        let d_over_period = cell.thickness_m / cell.period_x_m;
        let ground = 2.0 * cell.period_x_m * EPS0 / PI
            * cell.eps_r
            * (1.0 - (-4.0 * PI * d_over_period).exp()).ln();
        cap -= ground;
    }
    Ok(cap)
}

/// Ohmic sheet resistance of the patch array, ohm. Square cells only.
///
/// R = (D / (D - w))^2 / (sigma delta) with the skin depth chosen by the
/// cell's `skin_depth_model`. A perfect conductor gives exactly zero.
pub fn patch_resistance(cell: &UnitCellDesign, f_hz: f64) -> Result<f64> {
    if !cell.is_square() {
        return Err(Error::NonSquareCell {
            operation: "patch resistance",
            period_x_m: cell.period_x_m,
            period_y_m: cell.period_y_m,
            gap_x_m: cell.gap_x_m,
            gap_y_m: cell.gap_y_m,
        });
    }
    if !(f_hz > 0.0 && f_hz.is_finite()) {
        return Err(Error::Domain {
            name: "f_hz",
            value: f_hz,
            requirement: "must be positive and finite",
        });
    }
    if cell.conductivity_s_m.is_infinite() {
        return Ok(0.0);
    }
    let omega = 2.0 * PI * f_hz;
    let delta = match cell.skin_depth_model {
        SkinDepthModel::Standard => (2.0 / (cell.conductivity_s_m * omega * MU0)).sqrt(),
        SkinDepthModel::LegacyPrinted => 2.0 / (cell.conductivity_s_m * omega * MU0).sqrt(),
    };
    let rs = 1.0 / (cell.conductivity_s_m * delta);
    let d = cell.period_x_m;
    let w = cell.gap_x_m;
    Ok((d / (d - w)).powi(2) * rs)
}

/// Series impedance of the loading varactor: R + j w L + 1/(j w C), ohm.
pub fn varactor_impedance(var: &VaractorModel, c_farad: f64, f_hz: f64) -> Result<Complex64> {
    var.check_capacitance(c_farad)?;
    if !(f_hz > 0.0 && f_hz.is_finite()) {
        return Err(Error::Domain {
            name: "f_hz",
            value: f_hz,
            requirement: "must be positive and finite",
        });
    }
    let omega = 2.0 * PI * f_hz;
    Ok(Complex64::new(var.resistance_ohm, 0.0)
        + Complex64::new(0.0, omega * var.inductance_h)
        + 1.0 / Complex64::new(0.0, omega * c_farad))
}

/// Sheet impedance of the bare patch array: R_patch + 1/(j w C_patch), ohm.
pub fn patch_surface_impedance(cell: &UnitCellDesign, wave: &IncidentWave) -> Result<Complex64> {
    let cap = patch_capacitance(cell, wave)?;
    let r = patch_resistance(cell, wave.f_hz)?;
    Ok(Complex64::new(r, 0.0) + 1.0 / (Complex64::new(0.0, wave.omega()) * cap))
}

/// Patch sheet in parallel with the varactor branch, ohm.
pub fn loaded_surface_impedance(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    c_farad: f64,
    wave: &IncidentWave,
) -> Result<Complex64> {
    let zp = patch_surface_impedance(cell, wave)?;
    let zv = varactor_impedance(var, c_farad, wave.f_hz)?;
    parallel(zp, zv).ok_or_else(|| singular("patch-varactor", wave, zp, zv))
}

/// Normal component of the wave vector inside the slab, rad/m.
/// Principal square root with Im(kz) <= 0 (decay under exp(-j k r)).
pub fn slab_normal_wavenumber(cell: &UnitCellDesign, wave: &IncidentWave) -> Complex64 {
    let k0 = wave.wavenumber();
    let mut kz = (cell.eps_r - wave.theta_rad.sin().powi(2)).sqrt() * k0;
    if kz.im > 0.0 {
        kz = -kz;
    }
    kz
}

/// Characteristic transverse impedance of the slab medium, ohm:
/// w mu0 / kz for TE, kz / (w eps0 eps_r) for TM.
pub fn slab_characteristic_impedance(cell: &UnitCellDesign, wave: &IncidentWave) -> Complex64 {
    let kz = slab_normal_wavenumber(cell, wave);
    match wave.pol {
        Polarization::TE => Complex64::new(wave.omega() * MU0, 0.0) / kz,
        Polarization::TM => kz / (Complex64::new(wave.omega() * EPS0, 0.0) * cell.eps_r),
    }
}

/// Input impedance of the short-circuited (grounded) slab section, ohm:
/// j Z_slab tan(kz d). Near a tan pole the value saturates but stays finite;
/// the companion flag from [`grounded_slab_impedance_flagged`] reports it.
pub fn grounded_slab_impedance(cell: &UnitCellDesign, wave: &IncidentWave) -> Complex64 {
    grounded_slab_impedance_flagged(cell, wave).0
}

/// As [`grounded_slab_impedance`], also reporting whether |tan(kz d)|
/// exceeded [`TAN_SINGULARITY_LIMIT`].
pub fn grounded_slab_impedance_flagged(
    cell: &UnitCellDesign,
    wave: &IncidentWave,
) -> (Complex64, bool) {
    let kz = slab_normal_wavenumber(cell, wave);
    let mut t = (kz * cell.thickness_m).tan();
    // A lossless quarter-wave section puts kz d on a real tan pole where the
    // complex tangent overflows (its denominator hits exact zero). Clamp the
    // magnitude so the section reads as a huge but finite open circuit, and
    // report the saturation.
    let saturated = !(t.re.is_finite() && t.im.is_finite()) || t.norm() > TAN_SINGULARITY_LIMIT;
    if saturated {
        t = if t.re.is_finite() && t.im.is_finite() {
            t / t.norm() * TAN_SINGULARITY_LIMIT
        } else {
            Complex64::new(TAN_SINGULARITY_LIMIT, 0.0)
        };
    }
    let z = Complex64::new(0.0, 1.0) * slab_characteristic_impedance(cell, wave) * t;
    (z, saturated)
}

/// Input impedance of the loaded surface: loaded sheet in parallel with the
/// grounded slab, ohm.
pub fn ris_input_impedance(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    c_farad: f64,
    wave: &IncidentWave,
) -> Result<Complex64> {
    let zs = loaded_surface_impedance(cell, var, c_farad, wave)?;
    let zd = grounded_slab_impedance(cell, wave);
    parallel(zs, zd).ok_or_else(|| singular("surface-slab", wave, zs, zd))
}

/// Input impedance with no varactor fitted (open loading branch): the bare
/// patch sheet in parallel with the grounded slab, ohm.
pub fn unloaded_input_impedance(cell: &UnitCellDesign, wave: &IncidentWave) -> Result<Complex64> {
    let zp = patch_surface_impedance(cell, wave)?;
    let zd = grounded_slab_impedance(cell, wave);
    parallel(zp, zd).ok_or_else(|| singular("patch-slab", wave, zp, zd))
}

/// Transverse free-space wave impedance for the polarization, ohm:
/// zeta0 cos(theta) for TM, zeta0 / cos(theta) for TE.
pub fn transverse_wave_impedance(pol: Polarization, theta_rad: f64) -> f64 {
    match pol {
        Polarization::TM => ZETA0 * theta_rad.cos(),
        Polarization::TE => ZETA0 / theta_rad.cos(),
    }
}
