//! Reflection from the loaded surface and from freestanding sheets.

use num_complex::Complex64;

use crate::circuit::{
    grounded_slab_impedance_flagged, parallel, patch_surface_impedance, singular,
    transverse_wave_impedance, varactor_impedance, SINGULARITY_REL_TOL,
};
use crate::error::{Error, Result};
use crate::unit_cell::{IncidentWave, Polarization, UnitCellDesign, VaractorModel};

/// Reflection coefficient of the tuned surface together with the operating
/// point it was evaluated at and the numerical-health flags raised on the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionSample {
    /// Complex reflection coefficient (e^{+j w t} convention).
    pub gamma: Complex64,
    pub f_hz: f64,
    pub theta_rad: f64,
    pub pol: Polarization,
    /// Varactor capacitance used, if the surface was loaded.
    pub c_farad: Option<f64>,
    /// The operating frequency exceeds the single-lobe limit
    /// c0 / (D (sqrt(Re eps_r) + sin theta)) for the larger cell period.
    pub above_grating_limit: bool,
    /// |tan(kz d)| saturated in the grounded-slab section; the sample is
    /// still finite but sits numerically on a transmission-line pole.
    pub slab_tan_singular: bool,
}

/// Reflection coefficient seen from free space into a termination of input
/// impedance `z_in`: (z_in - zeta) / (z_in + zeta) with zeta the transverse
/// wave impedance of the incident polarization.
pub fn reflection_from_input_impedance(z_in: Complex64, wave: &IncidentWave) -> Result<Complex64> {
    let zeta = Complex64::new(transverse_wave_impedance(wave.pol, wave.theta_rad), 0.0);
    let denom = z_in + zeta;
    if denom.norm() < SINGULARITY_REL_TOL * z_in.norm().max(zeta.norm()) {
        return Err(Error::SingularCombination {
            stage: "surface-to-free-space match",
            f_hz: wave.f_hz,
            theta_rad: wave.theta_rad,
            pol: wave.pol,
            denom_magnitude: denom.norm(),
            tolerance: SINGULARITY_REL_TOL * z_in.norm().max(zeta.norm()),
        });
    }
    Ok((z_in - zeta) / denom)
}

/// Amortized reflection evaluator for one operating point (cell, incidence,
/// polarization, frequency): the patch sheet and grounded-slab impedances
/// are computed once, and only the varactor branch is re-evaluated per
/// capacitance. [`reflection_coefficient`] is defined through this type, so
/// both routes produce bitwise-identical samples.
#[derive(Debug, Clone)]
pub struct ReflectionEvaluator {
    z_patch: Complex64,
    z_slab: Complex64,
    slab_tan_singular: bool,
    above_grating_limit: bool,
    var: VaractorModel,
    wave: IncidentWave,
}

impl ReflectionEvaluator {
    pub fn new(
        cell: &UnitCellDesign,
        var: &VaractorModel,
        wave: &IncidentWave,
    ) -> Result<Self> {
        let z_patch = patch_surface_impedance(cell, wave)?;
        let (z_slab, slab_tan_singular) = grounded_slab_impedance_flagged(cell, wave);
        Ok(Self {
            z_patch,
            z_slab,
            slab_tan_singular,
            above_grating_limit: grating_check(cell, wave),
            var: *var,
            wave: *wave,
        })
    }

    pub fn wave(&self) -> &IncidentWave {
        &self.wave
    }

    /// Reflection sample of the surface loaded with the given capacitance.
    pub fn sample(&self, c_farad: f64) -> Result<ReflectionSample> {
        let zv = varactor_impedance(&self.var, c_farad, self.wave.f_hz)?;
        let zs = parallel(self.z_patch, zv)
            .ok_or_else(|| singular("patch-varactor", &self.wave, self.z_patch, zv))?;
        let z_in = parallel(zs, self.z_slab)
            .ok_or_else(|| singular("surface-slab", &self.wave, zs, self.z_slab))?;
        let gamma = reflection_from_input_impedance(z_in, &self.wave)?;
        Ok(ReflectionSample {
            gamma,
            f_hz: self.wave.f_hz,
            theta_rad: self.wave.theta_rad,
            pol: self.wave.pol,
            c_farad: Some(c_farad),
            above_grating_limit: self.above_grating_limit,
            slab_tan_singular: self.slab_tan_singular,
        })
    }
}

/// Reflection coefficient of the varactor-loaded surface.
///
/// Gamma = (Z_in - zeta) / (Z_in + zeta) with Z_in the loaded sheet in
/// parallel with the grounded slab and zeta the transverse free-space
/// impedance of the incident polarization. Crossing the single-lobe frequency
/// limit only raises `above_grating_limit` (and a `log::warn`), because the
/// equivalent circuit stays evaluable there even though higher-order lobes
/// start carrying power.
pub fn reflection_coefficient(
    cell: &UnitCellDesign,
    var: &VaractorModel,
    c_farad: f64,
    wave: &IncidentWave,
) -> Result<ReflectionSample> {
    ReflectionEvaluator::new(cell, var, wave)?.sample(c_farad)
}

/// Reflection coefficient of the surface with no varactor fitted.
pub fn unloaded_reflection_coefficient(
    cell: &UnitCellDesign,
    wave: &IncidentWave,
) -> Result<ReflectionSample> {
    let zp = patch_surface_impedance(cell, wave)?;
    let (zd, tan_singular) = grounded_slab_impedance_flagged(cell, wave);
    let z_in = parallel(zp, zd).ok_or_else(|| singular("patch-slab", wave, zp, zd))?;
    let gamma = reflection_from_input_impedance(z_in, wave)?;
    Ok(ReflectionSample {
        gamma,
        f_hz: wave.f_hz,
        theta_rad: wave.theta_rad,
        pol: wave.pol,
        c_farad: None,
        above_grating_limit: grating_check(cell, wave),
        slab_tan_singular: tan_singular,
    })
}

fn grating_check(cell: &UnitCellDesign, wave: &IncidentWave) -> bool {
    let limit = cell.grating_lobe_limit_hz(wave.theta_rad);
    if wave.f_hz > limit {
        log::warn!(
            "operating point f = {:e} Hz, theta = {} rad exceeds the single-lobe limit {:e} Hz; \
             higher-order lobes carry power and the single-mode circuit model degrades",
            wave.f_hz,
            wave.theta_rad,
            limit
        );
        true
    }
    else {
        false
    }
}

/// Reflection and transmission (Gamma, tau) of a freestanding impedance
/// sheet in free space, closed form: Gamma = -zeta / (2 Z + zeta),
/// tau = 2 Z / (2 Z + zeta), so that 1 + Gamma = tau holds identically.
pub fn freestanding_sheet_response(
    z_sheet: Complex64,
    pol: Polarization,
    theta_rad: f64,
) -> Result<(Complex64, Complex64)> {
    let zeta = Complex64::new(transverse_wave_impedance(pol, theta_rad), 0.0);
    let denom = 2.0 * z_sheet + zeta;
    if denom.norm() < SINGULARITY_REL_TOL * (2.0 * z_sheet.norm()).max(zeta.norm()) {
        return Err(Error::DegenerateSheet {
            context: "freestanding sheet response",
            denom_magnitude: denom.norm(),
        });
    }
    Ok((-zeta / denom, 2.0 * z_sheet / denom))
}

/// The same sheet response computed through the transmission-line route for
/// cross-checking: the sheet in parallel with the outgoing line's transverse
/// impedance terminates the incoming line, Gamma follows from the impedance
/// mismatch, and tau = 1 + Gamma.
pub fn freestanding_sheet_response_tl(
    z_sheet: Complex64,
    pol: Polarization,
    theta_rad: f64,
) -> Result<(Complex64, Complex64)> {
    let zeta = Complex64::new(transverse_wave_impedance(pol, theta_rad), 0.0);
    let denom = z_sheet + zeta;
    if denom.norm() < SINGULARITY_REL_TOL * z_sheet.norm().max(zeta.norm()) {
        return Err(Error::DegenerateSheet {
            context: "freestanding sheet, line-terminated route",
            denom_magnitude: denom.norm(),
        });
    }
    let z_in = z_sheet * zeta / denom;
    let denom2 = z_in + zeta;
    if denom2.norm() < SINGULARITY_REL_TOL * z_in.norm().max(zeta.norm()) {
        return Err(Error::DegenerateSheet {
            context: "freestanding sheet, line-terminated route",
            denom_magnitude: denom2.norm(),
        });
    }
    let gamma = (z_in - zeta) / denom2;
    Ok((gamma, Complex64::new(1.0, 0.0) + gamma))
}
