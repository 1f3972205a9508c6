//! Run configuration: one structured text file (TOML) shared by every
//! subcommand. Unknown keys are rejected; all angles are given in degrees
//! and converted to radians at this boundary.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use ris_tlm::numeric::{lin_spaced, log_spaced};
use ris_tlm::{
    LinkScenario, MapPlane, Polarization, SkinDepthModel, TeFactorExponent, UnitCellDesign,
    VaractorModel, Vec3,
};

use crate::error::{CliError, CliResult, Phase};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Transmitter position [x, y, z], m; z > 0 (above the surface).
    pub tx_pos_m: [f64; 3],
    /// Receiver position [x, y, z], m; z > 0.
    pub rx_pos_m: [f64; 3],
    pub rows: usize,
    pub cols: usize,
    pub freq_hz: f64,
    /// "te" or "tm".
    pub polarization: String,
    #[serde(default = "default_tx_power")]
    pub tx_power_w: f64,
    pub cell: CellConfig,
    /// Omit the whole section to model the unloaded (no varactor) surface;
    /// subcommands that need tuning then reject the configuration.
    pub varactor: Option<VaractorConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellConfig {
    pub period_x_m: f64,
    pub period_y_m: f64,
    pub gap_x_m: f64,
    pub gap_y_m: f64,
    pub thickness_m: f64,
    /// Relative permittivity as [real, imaginary]; imaginary <= 0.
    pub eps_r: [f64; 2],
    /// Patch metal conductivity, S/m; `inf` for a perfect conductor.
    pub conductivity_s_m: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VaractorConfig {
    pub c_min_farad: f64,
    pub c_max_farad: f64,
    #[serde(default = "default_varactor_resistance")]
    pub resistance_ohm: f64,
}

/// Model-variant switches and antenna exponents. Every field has the
/// documented default, so the whole section may be omitted.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    /// Varactor package series inductance, H.
    pub series_inductance_h: f64,
    /// Exponent on the wavenumber ratio in the TE angle factor: 1 or 2.
    pub te_factor_exponent: u8,
    /// Patch-to-ground capacitance correction; omit for the built-in
    /// square-cell default.
    pub ground_correction: Option<bool>,
    /// Conductor loss model: "standard" or "legacy-printed".
    pub skin_depth_model: String,
    pub q_tx: f64,
    pub q_rx: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            series_inductance_h: ris_tlm::DEFAULT_VARACTOR_INDUCTANCE_H,
            te_factor_exponent: 1,
            ground_correction: None,
            skin_depth_model: "standard".to_string(),
            q_tx: 2.0,
            q_rx: 2.0,
        }
    }
}

/// Sweep axes. `f_*` and `theta_deg` drive `cell-response`;
/// `theta_max_deg`/`theta_points`/`capacitance_points` size the lookup
/// grid; `c_var_farad` lists the load capacitances for `cell-response`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub f_points: usize,
    pub theta_deg: Vec<f64>,
    pub c_var_farad: Option<Vec<f64>>,
    pub theta_max_deg: f64,
    pub theta_points: usize,
    pub capacitance_points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            f_min_hz: 4e9,
            f_max_hz: 14e9,
            f_points: 801,
            theta_deg: vec![0.0, 60.0],
            c_var_farad: None,
            theta_max_deg: 80.0,
            theta_points: 33,
            capacitance_points: 64,
        }
    }
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    /// Output directory; overridden by `--out`. Default: current directory.
    pub dir: Option<PathBuf>,
    /// Received-power map plane for `link`; omit for the default plane.
    pub field_map: Option<FieldMapConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldMapConfig {
    pub x_min_m: f64,
    pub x_max_m: f64,
    pub z_min_m: f64,
    pub z_max_m: f64,
    #[serde(default)]
    pub y_m: f64,
    pub nx: usize,
    pub nz: usize,
}

fn default_tx_power() -> f64 {
    1.0
}

fn default_varactor_resistance() -> f64 {
    ris_tlm::DEFAULT_VARACTOR_RESISTANCE_OHM
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        // toml errors carry line/column context and a source snippet
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}:\n{e}", path.display())))
    }

    pub fn cell(&self) -> CliResult<UnitCellDesign> {
        let c = &self.scenario.cell;
        if c.eps_r[1] > 0.0 {
            return Err(CliError::Config(format!(
                "cell.eps_r imaginary part must be <= 0 (lossy or lossless), got {}",
                c.eps_r[1]
            )));
        }
        let mut cell = UnitCellDesign::new(
            c.period_x_m,
            c.period_y_m,
            c.gap_x_m,
            c.gap_y_m,
            c.thickness_m,
            Complex64::new(c.eps_r[0], c.eps_r[1]),
            c.conductivity_s_m,
        )
        .config_phase()?;
        if let Some(gc) = self.model.ground_correction {
            cell.ground_correction = gc;
        }
        cell.te_factor_exponent = match self.model.te_factor_exponent {
            1 => TeFactorExponent::One,
            2 => TeFactorExponent::Two,
            other => {
                return Err(CliError::Config(format!(
                    "model.te_factor_exponent must be 1 or 2, got {other}"
                )))
            }
        };
        cell.skin_depth_model = match self.model.skin_depth_model.as_str() {
            "standard" => SkinDepthModel::Standard,
            "legacy-printed" => SkinDepthModel::LegacyPrinted,
            other => {
                return Err(CliError::Config(format!(
                    "model.skin_depth_model must be \"standard\" or \"legacy-printed\", \
                     got {other:?}"
                )))
            }
        };
        Ok(cell)
    }

    pub fn varactor(&self) -> CliResult<Option<VaractorModel>> {
        match &self.scenario.varactor {
            None => Ok(None),
            Some(v) => VaractorModel::new(
                v.resistance_ohm,
                self.model.series_inductance_h,
                v.c_min_farad,
                v.c_max_farad,
            )
            .config_phase()
            .map(Some),
        }
    }

    pub fn require_varactor(&self, subcommand: &str) -> CliResult<VaractorModel> {
        self.varactor()?.ok_or_else(|| {
            CliError::Config(format!(
                "`{subcommand}` needs a tunable surface: add a [scenario.varactor] section"
            ))
        })
    }

    pub fn polarization(&self) -> CliResult<Polarization> {
        self.scenario
            .polarization
            .parse()
            .map_err(CliError::Config)
    }

    /// Full link scenario; requires the varactor section.
    pub fn link_scenario(&self, subcommand: &str) -> CliResult<LinkScenario> {
        let s = &self.scenario;
        let var = self.require_varactor(subcommand)?;
        LinkScenario::new(
            Vec3::new(s.tx_pos_m[0], s.tx_pos_m[1], s.tx_pos_m[2]),
            Vec3::new(s.rx_pos_m[0], s.rx_pos_m[1], s.rx_pos_m[2]),
            s.rows,
            s.cols,
            self.cell()?,
            var,
            s.freq_hz,
            self.polarization()?,
        )
        .config_phase()?
        .with_gain_exponents(self.model.q_tx, self.model.q_rx)
        .config_phase()?
        .with_tx_power(s.tx_power_w)
        .config_phase()
    }

    /// Frequency axis for `cell-response`.
    pub fn frequency_grid(&self) -> CliResult<Vec<f64>> {
        let sw = &self.sweep;
        if sw.f_points == 0 {
            return Err(CliError::Config(
                "sweep.f_points must be at least 1 (empty sweep)".to_string(),
            ));
        }
        if !(sw.f_min_hz > 0.0 && sw.f_max_hz >= sw.f_min_hz) {
            return Err(CliError::Config(format!(
                "sweep frequency range [{:e}, {:e}] Hz must be positive and ordered",
                sw.f_min_hz, sw.f_max_hz
            )));
        }
        Ok(lin_spaced(sw.f_min_hz, sw.f_max_hz, sw.f_points))
    }

    /// Incidence angles for `cell-response`, radians.
    pub fn theta_list_rad(&self) -> CliResult<Vec<f64>> {
        if self.sweep.theta_deg.is_empty() {
            return Err(CliError::Config(
                "sweep.theta_deg must list at least one angle (empty sweep)".to_string(),
            ));
        }
        self.sweep
            .theta_deg
            .iter()
            .map(|&d| {
                if (0.0..90.0).contains(&d) {
                    Ok(d.to_radians())
                } else {
                    Err(CliError::Config(format!(
                        "sweep.theta_deg entry {d} out of range [0, 90)"
                    )))
                }
            })
            .collect()
    }

    /// Lookup-table axes: linear in angle, logarithmic in capacitance.
    pub fn lookup_axes(&self, var: &VaractorModel) -> CliResult<(Vec<f64>, Vec<f64>)> {
        let sw = &self.sweep;
        if sw.theta_points < 2 || sw.capacitance_points < 2 {
            return Err(CliError::Config(format!(
                "lookup axes need at least 2 points each; got theta_points = {}, \
                 capacitance_points = {}",
                sw.theta_points, sw.capacitance_points
            )));
        }
        if !(0.0 < sw.theta_max_deg && sw.theta_max_deg < 90.0) {
            return Err(CliError::Config(format!(
                "sweep.theta_max_deg = {} out of range (0, 90)",
                sw.theta_max_deg
            )));
        }
        Ok((
            lin_spaced(0.0, sw.theta_max_deg.to_radians(), sw.theta_points),
            log_spaced(var.c_min_farad, var.c_max_farad, sw.capacitance_points),
        ))
    }

    /// Cell-response load capacitances: required when a varactor is
    /// configured, forbidden otherwise (the unloaded surface has none).
    pub fn response_capacitances(
        &self,
        var: Option<&VaractorModel>,
    ) -> CliResult<Option<Vec<f64>>> {
        match (var, &self.sweep.c_var_farad) {
            (None, None) => Ok(None),
            (None, Some(_)) => Err(CliError::Config(
                "sweep.c_var_farad given but there is no [scenario.varactor] section"
                    .to_string(),
            )),
            (Some(_), None) => Err(CliError::Config(
                "a varactor is configured: list the load capacitances in \
                 sweep.c_var_farad, or drop [scenario.varactor] for the unloaded response"
                    .to_string(),
            )),
            (Some(v), Some(list)) => {
                if list.is_empty() {
                    return Err(CliError::Config(
                        "sweep.c_var_farad must not be empty (empty sweep)".to_string(),
                    ));
                }
                for &c in list {
                    if !(v.c_min_farad..=v.c_max_farad).contains(&c) {
                        return Err(CliError::Config(format!(
                            "sweep.c_var_farad entry {c:e} F outside the varactor range \
                             [{:e}, {:e}] F",
                            v.c_min_farad, v.c_max_farad
                        )));
                    }
                }
                Ok(Some(list.clone()))
            }
        }
    }

    pub fn out_dir(&self, cli_out: Option<&Path>) -> PathBuf {
        cli_out
            .map(Path::to_path_buf)
            .or_else(|| self.output.dir.clone())
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn map_plane(&self) -> CliResult<MapPlane> {
        match &self.output.field_map {
            None => Ok(MapPlane {
                x_min_m: -0.5,
                x_max_m: 0.5,
                z_min_m: 0.01,
                z_max_m: 0.51,
                y_m: 0.0,
                nx: 201,
                nz: 201,
            }),
            Some(fm) => {
                if fm.nx < 2 || fm.nz < 2 {
                    return Err(CliError::Config(format!(
                        "output.field_map needs nx >= 2 and nz >= 2; got ({}, {})",
                        fm.nx, fm.nz
                    )));
                }
                Ok(MapPlane {
                    x_min_m: fm.x_min_m,
                    x_max_m: fm.x_max_m,
                    z_min_m: fm.z_min_m,
                    z_max_m: fm.z_max_m,
                    y_m: fm.y_m,
                    nx: fm.nx,
                    nz: fm.nz,
                })
            }
        }
    }
}
