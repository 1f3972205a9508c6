//! Subcommand implementations. Every emitter uses fixed scientific
//! notation (9 significant digits) so identical configurations produce
//! byte-identical files.

use std::path::Path;

use clap::ValueEnum;
use num_complex::Complex64;

use ris_tlm::io::{fmt_sci, write_capacitance_map, write_field_map, write_lookup_table,
    write_matrix_csv};
use ris_tlm::link::{pec_closed_form_power, plate_rcs_in_plane};
use ris_tlm::numeric::lin_spaced;
use ris_tlm::reflection::unloaded_reflection_coefficient;
use ris_tlm::{
    build_lookup_table, capacitance_error_map, field_map, ideal_phase_profile, received_power,
    reflection_coefficient, synthesize_surface, Grid, IncidentWave, LinkScenario, Polarization,
    SynthesisMode, Vec3,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Normal,
    Oblique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaArg {
    Ideal,
    Normal,
    Oblique,
}

impl GammaArg {
    fn name(self) -> &'static str {
        match self {
            GammaArg::Ideal => "ideal",
            GammaArg::Normal => "normal",
            GammaArg::Oblique => "oblique",
        }
    }
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// 10 log10(x) rendered like every other float; zero maps to "-inf".
fn fmt_db10(x: f64) -> String {
    if x > 0.0 {
        fmt_sci(10.0 * x.log10())
    } else {
        "-inf".to_string()
    }
}

/// Reflection amplitude in dB (20 log10 |Gamma|).
fn fmt_gamma_db(gamma: Complex64) -> String {
    let n = gamma.norm();
    if n > 0.0 {
        fmt_sci(20.0 * n.log10())
    } else {
        "-inf".to_string()
    }
}

/// Frequency sweep of the reflection coefficient for every configured
/// (polarization, angle, load capacitance) combination; the unloaded
/// surface (no varactor section) yields one curve per (polarization, angle).
pub fn cell_response(cfg: &RunConfig, out: &Path) -> CliResult<()> {
    let cell = cfg.cell()?;
    let var = cfg.varactor()?;
    let caps = cfg.response_capacitances(var.as_ref())?;
    let freqs = cfg.frequency_grid()?;
    let thetas_deg = {
        cfg.theta_list_rad()?; // validates range and non-emptiness
        cfg.sweep.theta_deg.clone()
    };
    ensure_dir(out)?;

    let mut text = String::from("# f_hz,pol,theta_deg,c_farad,gamma_db,gamma_phase_deg\n");
    for pol in [Polarization::TE, Polarization::TM] {
        for &theta_deg in &thetas_deg {
            let theta = theta_deg.to_radians();
            match (&var, &caps) {
                (Some(v), Some(cs)) => {
                    for &c in cs {
                        for &f in &freqs {
                            let wave = IncidentWave::new(f, theta, pol).run_phase()?;
                            let g = reflection_coefficient(&cell, v, c, &wave)
                                .run_phase()?
                                .gamma;
                            append_response_row(&mut text, f, pol, theta_deg, &fmt_sci(c), g);
                        }
                    }
                }
                _ => {
                    for &f in &freqs {
                        let wave = IncidentWave::new(f, theta, pol).run_phase()?;
                        let g = unloaded_reflection_coefficient(&cell, &wave)
                            .run_phase()?
                            .gamma;
                        append_response_row(&mut text, f, pol, theta_deg, "none", g);
                    }
                }
            }
        }
    }
    let path = out.join("cell_response.csv");
    write_text(&path, &text)?;
    println!("cell-response: wrote {}", path.display());
    Ok(())
}

fn append_response_row(
    text: &mut String,
    f: f64,
    pol: Polarization,
    theta_deg: f64,
    c_field: &str,
    gamma: Complex64,
) {
    text.push_str(&format!(
        "{},{pol},{},{c_field},{},{}\n",
        fmt_sci(f),
        fmt_sci(theta_deg),
        fmt_gamma_db(gamma),
        fmt_sci(gamma.arg().to_degrees()),
    ));
}

/// Reflection tables over (angle, capacitance) at the scenario frequency:
/// the canonical complex table per polarization plus amplitude/phase views.
pub fn lookup(cfg: &RunConfig, out: &Path) -> CliResult<()> {
    let cell = cfg.cell()?;
    let var = cfg.require_varactor("lookup")?;
    let (thetas, caps) = cfg.lookup_axes(&var)?;
    let f = cfg.scenario.freq_hz;
    ensure_dir(out)?;

    for pol in [Polarization::TE, Polarization::TM] {
        let table = build_lookup_table(&cell, &var, f, pol, &thetas, &caps).config_phase()?;
        let tag = if pol == Polarization::TE { "te" } else { "tm" };
        let main = out.join(format!("lookup_{tag}.csv"));
        write_lookup_table(&table, &main).run_phase()?;

        let (rows, cols) = (thetas.len(), caps.len());
        let amplitude = Grid::from_fn_seq(rows, cols, |r, c| {
            20.0 * table.gamma[(r, c)].norm().log10()
        });
        let phase = Grid::from_fn_seq(rows, cols, |r, c| {
            table.gamma[(r, c)].arg().to_degrees()
        });
        write_matrix_csv(&amplitude, &out.join(format!("lookup_{tag}_amplitude_db.csv")))
            .run_phase()?;
        write_matrix_csv(&phase, &out.join(format!("lookup_{tag}_phase_deg.csv")))
            .run_phase()?;
        println!(
            "lookup: wrote {} ({} angles x {} capacitances) and amplitude/phase views",
            main.display(),
            rows,
            cols
        );
    }
    Ok(())
}

/// Per-cell capacitance synthesis; with no --mode both modes run and a
/// percentage-discrepancy map between them is emitted as well.
pub fn synthesize(cfg: &RunConfig, mode: Option<ModeArg>, out: &Path) -> CliResult<()> {
    let sc = cfg.link_scenario("synthesize")?;
    ensure_dir(out)?;
    let modes = match mode {
        Some(ModeArg::Normal) => vec![SynthesisMode::Normal],
        Some(ModeArg::Oblique) => vec![SynthesisMode::Oblique],
        None => vec![SynthesisMode::Normal, SynthesisMode::Oblique],
    };
    let mut maps = Vec::new();
    for m in modes {
        let map = synthesize_surface(&sc, m).run_phase()?;
        let path = out.join(format!("capacitance_{m}.csv"));
        write_capacitance_map(&map, &sc, &path).run_phase()?;
        let clamped = map.clamped.values().iter().filter(|&&c| c).count();
        println!(
            "synthesize: {m} mode -> {} ({} of {} cells clamped)",
            path.display(),
            clamped,
            sc.rows * sc.cols
        );
        maps.push(map);
    }
    if let [normal, oblique] = maps.as_slice() {
        let err = capacitance_error_map(oblique, normal).run_phase()?;
        let path = out.join("capacitance_error_pct.csv");
        write_matrix_csv(&err, &path).run_phase()?;
        println!("synthesize: discrepancy map -> {}", path.display());
    }
    Ok(())
}

/// Received power and a field map for each requested reflection source.
/// `zero_gamma` replaces every source with a fully absorbing surface; it
/// exists as a degenerate-input control for the test suite.
pub fn link(
    cfg: &RunConfig,
    gamma: Option<GammaArg>,
    zero_gamma: bool,
    out: &Path,
) -> CliResult<()> {
    let sc = cfg.link_scenario("link")?;
    let plane = cfg.map_plane()?;
    ensure_dir(out)?;
    let sources = match gamma {
        Some(g) => vec![g],
        None => vec![GammaArg::Ideal, GammaArg::Normal, GammaArg::Oblique],
    };

    let mut results: Vec<(GammaArg, f64)> = Vec::new();
    let mut table = String::from("# gamma_source,p_r_watt,p_r_db\n");
    for src in sources {
        let grid = if zero_gamma {
            Grid::from_fn_seq(sc.rows, sc.cols, |_, _| Complex64::new(0.0, 0.0))
        } else {
            match src {
                GammaArg::Ideal => {
                    let profile = ideal_phase_profile(&sc).run_phase()?;
                    Grid::from_fn_seq(sc.rows, sc.cols, |r, c| {
                        Complex64::from_polar(1.0, profile[(r, c)])
                    })
                }
                GammaArg::Normal => {
                    synthesize_surface(&sc, SynthesisMode::Normal)
                        .run_phase()?
                        .achieved_gamma
                }
                GammaArg::Oblique => {
                    synthesize_surface(&sc, SynthesisMode::Oblique)
                        .run_phase()?
                        .achieved_gamma
                }
            }
        };
        let p = received_power(&sc, &grid).run_phase()?;
        let fm = field_map(&sc, &plane, &grid).run_phase()?;
        let map_path = out.join(format!("field_map_{}.csv", src.name()));
        write_field_map(&fm, &map_path).run_phase()?;
        table.push_str(&format!("{},{},{}\n", src.name(), fmt_sci(p), fmt_db10(p)));
        println!(
            "link: P_r({}) = {} W ({} dBW); field map -> {}",
            src.name(),
            fmt_sci(p),
            fmt_db10(p),
            map_path.display()
        );
        results.push((src, p));
    }

    let power_of = |want: GammaArg| {
        results
            .iter()
            .find(|(s, _)| *s == want)
            .map(|&(_, p)| p)
            .filter(|&p| p > 0.0)
    };
    if let (Some(po), Some(pn)) = (power_of(GammaArg::Oblique), power_of(GammaArg::Normal)) {
        let line = format!("oblique_over_normal_db = {}", fmt_sci(10.0 * (po / pn).log10()));
        table.push_str(&format!("# {line}\n"));
        println!("link: {line}");
    }
    if let (Some(pi), Some(pn)) = (power_of(GammaArg::Ideal), power_of(GammaArg::Normal)) {
        let line = format!("ideal_over_normal_db = {}", fmt_sci(10.0 * (pi / pn).log10()));
        table.push_str(&format!("# {line}\n"));
        println!("link: {line}");
    }

    let power_path = out.join("link_power.csv");
    write_text(&power_path, &table)?;
    println!("link: power summary -> {}", power_path.display());
    Ok(())
}

/// Check the coherent-sum engine against two closed forms: the in-plane
/// flat-plate scattering pattern and the far-field specular power law.
/// `flip_specular_sign` deliberately mirrors the scan angle of the
/// reference pattern — a negative control that must produce FAIL.
pub fn validate_pec(cfg: &RunConfig, flip_specular_sign: bool, out: &Path) -> CliResult<()> {
    let cell = cfg.cell()?;
    let var = cfg.require_varactor("validate-pec")?;
    let s = &cfg.scenario;
    let pol = cfg.polarization()?;
    ensure_dir(out)?;

    // fully reflective surface for both comparisons
    let minus_one = Grid::from_fn_seq(s.rows, s.cols, |_, _| Complex64::new(-1.0, 0.0));

    // 1) in-plane pattern vs the flat-plate closed form: fixed transmitter
    //    at 38.6 degrees, receiver swept over the upper half plane
    let theta_i = 38.6f64.to_radians();
    let r0 = 500.0;
    let tx = Vec3::new(-r0 * theta_i.sin(), 0.0, r0 * theta_i.cos());
    let n_arc = 901;
    let arc_deg = lin_spaced(-90.0, 90.0, n_arc);
    let mut p_sum = Vec::with_capacity(n_arc);
    let mut lambda = 0.0;
    let mut apertures = (0.0, 0.0);
    for &deg in &arc_deg {
        let ts = deg.to_radians();
        let rx = Vec3::new(r0 * ts.sin(), 0.0, r0 * ts.cos());
        let arc_sc = LinkScenario::new(
            tx,
            rx,
            s.rows,
            s.cols,
            cell.clone(),
            var,
            s.freq_hz,
            pol,
        )
        .config_phase()?
        .with_gain_exponents(0.0, 0.0)
        .run_phase()?;
        lambda = arc_sc.wavelength_m();
        apertures = (arc_sc.aperture_x_m(), arc_sc.aperture_y_m());
        p_sum.push(received_power(&arc_sc, &minus_one).run_phase()?);
    }
    let sigma: Vec<f64> = arc_deg
        .iter()
        .map(|&d| {
            let ts = if flip_specular_sign { -d } else { d }.to_radians();
            // the second extent is the in-plane (x) dimension
            plate_rcs_in_plane(apertures.1, apertures.0, theta_i, ts, lambda)
        })
        .collect();
    let p_max = p_sum.iter().cloned().fold(f64::MIN, f64::max);
    let s_max = sigma.iter().cloned().fold(f64::MIN, f64::max);
    let mut worst_db: f64 = 0.0;
    let mut compared = 0usize;
    for i in 0..n_arc {
        let s_db = 10.0 * (sigma[i] / s_max).log10();
        if s_db > -30.0 {
            worst_db = worst_db.max((10.0 * (p_sum[i] / p_max).log10() - s_db).abs());
            compared += 1;
        }
    }
    let peak_deg = arc_deg[p_sum
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0];
    let step = arc_deg[1] - arc_deg[0];
    let pattern_ok = worst_db <= 0.5 && (peak_deg - 38.6).abs() <= step + 1e-9;

    // 2) far-field specular power vs the closed form at 100x the diagonal
    let diag = (apertures.0.powi(2) + apertures.1.powi(2)).sqrt();
    let r_far = 100.0 * diag;
    let specular = 30f64.to_radians();
    let far_sc = LinkScenario::new(
        Vec3::new(-r_far * specular.sin(), 0.0, r_far * specular.cos()),
        Vec3::new(r_far * specular.sin(), 0.0, r_far * specular.cos()),
        s.rows,
        s.cols,
        cell,
        var,
        s.freq_hz,
        pol,
    )
    .config_phase()?
    .with_gain_exponents(cfg.model.q_tx, cfg.model.q_rx)
    .run_phase()?;
    let summed = received_power(&far_sc, &minus_one).run_phase()?;
    let closed = pec_closed_form_power(&far_sc).run_phase()?;
    let far_rel = (summed - closed.power_w).abs() / closed.power_w;
    let far_ok = far_rel <= 0.01 && closed.far_field_ok;

    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let report = format!(
        "plate-pattern comparison: {} — max lobe deviation {} dB over {} samples above \
         -30 dB; peak at {} deg (expected 38.6 +/- {} deg)\n\
         far-field closed form: {} — relative deviation {} (limit {}), summed {} W vs \
         closed form {} W at r = {} m\n\
         overall: {}\n",
        verdict(pattern_ok),
        fmt_sci(worst_db),
        compared,
        fmt_sci(peak_deg),
        fmt_sci(step),
        verdict(far_ok),
        fmt_sci(far_rel),
        fmt_sci(0.01),
        fmt_sci(summed),
        fmt_sci(closed.power_w),
        fmt_sci(r_far),
        verdict(pattern_ok && far_ok),
    );
    let path = out.join("validate_pec.txt");
    write_text(&path, &report)?;
    print!("{report}");
    println!("validate-pec: report -> {}", path.display());

    if pattern_ok && far_ok {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "closed-form comparison FAILED; see {}",
            path.display()
        )))
    }
}

