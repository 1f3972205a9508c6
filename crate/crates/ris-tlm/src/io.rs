//! CSV persistence for lookup tables, capacitance maps and field maps.
//!
//! All floating-point values are written with nine significant digits in
//! scientific notation, which round-trips the physically meaningful part of
//! every quantity while keeping files diffable.

use num_complex::Complex64;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::LinkScenario;
use crate::grid::Grid;
use crate::link::FieldMap;
use crate::lookup::LookupTable;
use crate::synthesis::CapacitanceMap;
use crate::unit_cell::Polarization;

/// Canonical number format: nine significant digits, scientific notation.
pub fn fmt_sci(v: f64) -> String {
    format!("{v:.8e}")
}

fn parse_f64(line_no: usize, field: &str) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|e| Error::Parse {
        line: line_no,
        reason: format!("bad float {field:?}: {e}"),
    })
}

const LOOKUP_HEADER: &str = "# f_hz,pol,theta_rad,c_farad,gamma_re,gamma_im";

/// Writes a lookup table as CSV, one row per (theta, capacitance) node with
/// theta as the outer (slower) index.
pub fn write_lookup_table(table: &LookupTable, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str(LOOKUP_HEADER);
    out.push('\n');
    for (i, &theta) in table.theta_grid_rad.iter().enumerate() {
        for (j, &c) in table.c_grid_farad.iter().enumerate() {
            let g = table.gamma[(i, j)];
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt_sci(table.f_hz),
                table.pol,
                fmt_sci(theta),
                fmt_sci(c),
                fmt_sci(g.re),
                fmt_sci(g.im),
            )
            .expect("string write cannot fail");
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a lookup table written by [`write_lookup_table`], reconstructing
/// the grids and verifying the node block is complete and consistent.
pub fn read_lookup_table(path: &Path) -> Result<LookupTable> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "empty file".to_string(),
    })?;
    if header.trim() != LOOKUP_HEADER {
        return Err(Error::Parse {
            line: 1,
            reason: format!("expected header {LOOKUP_HEADER:?}, found {header:?}"),
        });
    }

    let mut f_hz: Option<f64> = None;
    let mut pol: Option<Polarization> = None;
    let mut thetas: Vec<f64> = Vec::new();
    let mut caps: Vec<f64> = Vec::new();
    let mut values: Vec<Complex64> = Vec::new();

    for (idx, raw) in lines {
        let line_no = idx + 1; // 1-based, enumerate started at the header
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("expected 6 fields, found {}", fields.len()),
            });
        }
        let f = parse_f64(line_no, fields[0])?;
        let p = Polarization::from_str(fields[1].trim()).map_err(|e| Error::Parse {
            line: line_no,
            reason: e,
        })?;
        match (f_hz, pol) {
            (None, None) => {
                f_hz = Some(f);
                pol = Some(p);
            }
            (Some(f0), Some(p0)) => {
                if f != f0 || p != p0 {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: format!(
                            "mixed blocks: ({f:e} Hz, {p}) after ({f0:e} Hz, {p0})"
                        ),
                    });
                }
            }
            _ => unreachable!("f_hz and pol are set together"),
        }
        let theta = parse_f64(line_no, fields[2])?;
        let c = parse_f64(line_no, fields[3])?;
        let re = parse_f64(line_no, fields[4])?;
        let im = parse_f64(line_no, fields[5])?;

        if thetas.last() != Some(&theta) {
            // new theta row begins; the capacitance axis is fixed by row one
            if thetas.contains(&theta) {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("theta = {theta:e} rad repeats out of order"),
                });
            }
            if !thetas.is_empty() && values.len() != thetas.len() * caps.len() {
                return Err(Error::Parse {
                    line: line_no,
                    reason: "incomplete capacitance row".to_string(),
                });
            }
            thetas.push(theta);
        }
        if thetas.len() == 1 {
            caps.push(c);
        } else {
            let j = (values.len()) % caps.len();
            if caps[j] != c {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!(
                        "capacitance {c:e} F breaks the grid (expected {:e} F)",
                        caps[j]
                    ),
                });
            }
        }
        values.push(Complex64::new(re, im));
    }

    let (f_hz, pol) = match (f_hz, pol) {
        (Some(f), Some(p)) => (f, p),
        _ => {
            return Err(Error::Parse {
                line: 1,
                reason: "no data rows".to_string(),
            })
        }
    };
    if values.len() != thetas.len() * caps.len() {
        return Err(Error::Parse {
            line: 1 + values.len(),
            reason: format!(
                "expected {} x {} = {} nodes, found {}",
                thetas.len(),
                caps.len(),
                thetas.len() * caps.len(),
                values.len()
            ),
        });
    }
    let rows = thetas.len();
    let cols = caps.len();
    let gamma = Grid::from_fn_seq(rows, cols, |i, j| values[i * cols + j]);
    Ok(LookupTable {
        f_hz,
        pol,
        theta_grid_rad: thetas,
        c_grid_farad: caps,
        gamma,
    })
}

/// Writes a real-valued grid as plain CSV: one line per row, comma-separated
/// columns, no header.
pub fn write_matrix_csv(grid: &Grid<f64>, path: &Path) -> Result<()> {
    let mut out = String::new();
    for r in 0..grid.rows() {
        for c in 0..grid.cols() {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&fmt_sci(grid[(r, c)]));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a plain CSV matrix written by [`write_matrix_csv`]; all rows must
/// have the same number of columns.
pub fn read_matrix_csv(path: &Path) -> Result<Grid<f64>> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| parse_f64(idx + 1, f))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Grid::from_rows(rows)
}

/// Stable fingerprint of a scenario's physically meaningful fields, used to
/// tie a stored capacitance map back to the setup that produced it.
pub fn scenario_fingerprint(scenario: &LinkScenario) -> String {
    let canonical = format!(
        "tx={:?};rx={:?};rows={};cols={};cell={:?};varactor={:?};f_hz={:?};pol={};\
         tx_power_w={:?};q_tx={:?};q_rx={:?};gain={:?}",
        scenario.tx_pos_m,
        scenario.rx_pos_m,
        scenario.rows,
        scenario.cols,
        scenario.cell,
        scenario.varactor,
        scenario.f_hz,
        scenario.pol,
        scenario.tx_power_w,
        scenario.q_tx,
        scenario.q_rx,
        scenario.gain_model,
    );
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        write!(hex, "{byte:02x}").expect("string write cannot fail");
    }
    hex
}

/// Writes the capacitance map as a bare CSV matrix (farads) plus a `.meta`
/// sidecar recording the mode, frequency, polarization, shape, clamp count
/// and a scenario fingerprint.
pub fn write_capacitance_map(
    map: &CapacitanceMap,
    scenario: &LinkScenario,
    path: &Path,
) -> Result<()> {
    write_matrix_csv(&map.c_farad, path)?;
    let clamped_cells = map.clamped.values().iter().filter(|&&c| c).count();
    let meta = format!(
        "scenario_hash={}\nmode={}\nf_hz={}\npol={}\nrows={}\ncols={}\nclamped_cells={}\n",
        scenario_fingerprint(scenario),
        map.mode,
        fmt_sci(map.f_hz),
        map.pol,
        map.c_farad.rows(),
        map.c_farad.cols(),
        clamped_cells,
    );
    let meta_path = sidecar_path(path);
    fs::write(meta_path, meta)?;
    Ok(())
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".meta");
    std::path::PathBuf::from(os)
}

const FIELD_MAP_HEADER: &str = "# x_m,z_m,pr_watt,pr_db";

/// Writes a received-power map, one row per pixel with x as the outer
/// index. The dB column is relative to the transmit power; pixels with zero
/// power render as `-inf`.
pub fn write_field_map(map: &FieldMap, path: &Path) -> Result<()> {
    let xs = map.plane.x_samples();
    let zs = map.plane.z_samples();
    let mut out = String::new();
    out.push_str(FIELD_MAP_HEADER);
    out.push('\n');
    for (i, &x) in xs.iter().enumerate() {
        for (j, &z) in zs.iter().enumerate() {
            let p = map.power_w[(i, j)];
            let db = 10.0 * (p / map.tx_power_w).log10();
            writeln!(
                out,
                "{},{},{},{}",
                fmt_sci(x),
                fmt_sci(z),
                fmt_sci(p),
                if db.is_finite() { fmt_sci(db) } else { "-inf".to_string() },
            )
            .expect("string write cannot fail");
        }
    }
    fs::write(path, out)?;
    Ok(())
}
