//! On-disk formats: the state-vector file (one JSON header line plus a CSV
//! body), spike-train CSV ingestion, and the flat key=value config format.

use crate::error::{PadiqError, Result};
use crate::grid::{from_empirical, GridSpec, StateVector};
use crate::padic::PadicNumber;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Serialize, Deserialize, Debug)]
struct StateHeader {
    p: u64,
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "M")]
    m: u32,
    d: usize,
    label: String,
    h: Option<i64>,
}

/// Serialize a state: JSON header line, then CSV rows `cell_digits,re,im`.
pub fn state_to_string(sv: &StateVector) -> String {
    let g = sv.grid();
    let header = StateHeader {
        p: g.prime(),
        n: g.support_exp(),
        m: g.resolution_exp(),
        d: g.dim(),
        label: sv.label.clone(),
        h: sv.h_exp,
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    out.push_str("cell_digits,re,im\n");
    for (cell, c) in g.cells().iter().zip(sv.coeffs()) {
        out.push_str(&format!("{},{},{}\n", cell.digit_label(), c.re, c.im));
    }
    out
}

/// Axis index from a space-separated digit string (most significant, i.e.
/// position -N, first).
fn axis_index_from_digits(grid: &GridSpec, digits: &str) -> Result<usize> {
    let p = grid.prime();
    let parts: Vec<&str> = digits.split_whitespace().collect();
    if parts.len() != grid.levels() as usize {
        return Err(PadiqError::Parse(format!(
            "cell label `{digits}` has {} digits, expected {}",
            parts.len(),
            grid.levels()
        )));
    }
    let mut idx = 0usize;
    for part in parts {
        let d: u64 = part
            .parse()
            .map_err(|_| PadiqError::Parse(format!("bad digit `{part}` in cell label")))?;
        if d >= p {
            return Err(PadiqError::DigitOutOfRange { digit: d, p });
        }
        idx = idx * p as usize + d as usize;
    }
    Ok(idx)
}

pub fn state_from_str(text: &str) -> Result<StateVector> {
    let mut lines = text.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| PadiqError::Parse("empty state file".into()))?;
    let header: StateHeader = serde_json::from_str(header_line)
        .map_err(|e| PadiqError::Parse(format!("bad state header: {e}")))?;
    let grid = GridSpec::new(header.p, header.n, header.m, header.d)?;
    match lines.next() {
        Some("cell_digits,re,im") => {}
        other => {
            return Err(PadiqError::Parse(format!(
                "expected CSV header `cell_digits,re,im`, got {other:?}"
            )))
        }
    }
    let mut coeffs = vec![None; grid.total_cells()];
    for (row, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(PadiqError::Parse(format!(
                "state row {}: expected 3 fields, got {}",
                row + 1,
                fields.len()
            )));
        }
        let axes: Vec<usize> = fields[0]
            .split(';')
            .map(|s| axis_index_from_digits(&grid, s))
            .collect::<Result<_>>()?;
        if axes.len() != grid.dim() {
            return Err(PadiqError::Parse(format!(
                "state row {}: {} axes for a {}-axis grid",
                row + 1,
                axes.len(),
                grid.dim()
            )));
        }
        let flat = grid.flat_index(&axes);
        let re: f64 = fields[1]
            .parse()
            .map_err(|_| PadiqError::Parse(format!("state row {}: bad real part", row + 1)))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|_| PadiqError::Parse(format!("state row {}: bad imaginary part", row + 1)))?;
        if coeffs[flat].is_some() {
            return Err(PadiqError::Parse(format!(
                "state row {}: duplicate cell `{}`",
                row + 1,
                fields[0]
            )));
        }
        coeffs[flat] = Some(num_complex::Complex64::new(re, im));
    }
    let filled: Option<Vec<_>> = coeffs.into_iter().collect();
    let coeffs =
        filled.ok_or_else(|| PadiqError::Parse("state file does not cover every cell".into()))?;
    let mut sv = StateVector::new(grid, coeffs)?;
    sv.label = header.label;
    sv.h_exp = header.h;
    Ok(sv)
}

pub fn write_state(path: &Path, sv: &StateVector) -> Result<()> {
    std::fs::write(path, state_to_string(sv))?;
    Ok(())
}

pub fn read_state(path: &Path) -> Result<StateVector> {
    state_from_str(&std::fs::read_to_string(path)?)
}

/// Spike counts organized as windows x neurons.
#[derive(Clone, Debug)]
pub struct SpikeData {
    /// per window, the count of each neuron (neuron 0 first)
    pub windows: Vec<Vec<u64>>,
    pub neuron_count: usize,
}

/// Parse `neuron_index,window_index,count` rows (header required). Row
/// numbers in errors are 1-based over the whole file.
pub fn parse_spike_csv(text: &str) -> Result<SpikeData> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "neuron_index,window_index,count" => {}
        Some((_, h)) => {
            return Err(PadiqError::Parse(format!(
                "row 1: expected header `neuron_index,window_index,count`, got `{h}`"
            )))
        }
        None => return Err(PadiqError::Parse("empty spike file".into())),
    }
    let mut triples: Vec<(usize, usize, u64)> = Vec::new();
    let mut max_neuron = 0usize;
    let mut max_window = 0usize;
    for (i, line) in lines {
        let row = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(PadiqError::Parse(format!(
                "row {row}: expected 3 fields, got {}",
                fields.len()
            )));
        }
        let neuron: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| PadiqError::Parse(format!("row {row}: bad neuron_index `{}`", fields[0])))?;
        let window: usize = fields[1]
            .trim()
            .parse()
            .map_err(|_| PadiqError::Parse(format!("row {row}: bad window_index `{}`", fields[1])))?;
        let count: u64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| PadiqError::Parse(format!("row {row}: bad count `{}`", fields[2])))?;
        max_neuron = max_neuron.max(neuron);
        max_window = max_window.max(window);
        triples.push((neuron, window, count));
    }
    if triples.is_empty() {
        return Err(PadiqError::Parse("spike file has no data rows".into()));
    }
    let mut windows = vec![vec![0u64; max_neuron + 1]; max_window + 1];
    for (neuron, window, count) in triples {
        windows[window][neuron] = count;
    }
    Ok(SpikeData { windows, neuron_count: max_neuron + 1 })
}

/// Encode each window as a point of Z_p and histogram the points over the
/// cells of the grid: the empirical mental state of the recording.
pub fn spikes_to_state(grid: &GridSpec, spikes: &SpikeData) -> Result<StateVector> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    let mut counts = vec![0.0f64; grid.total_cells()];
    for w in &spikes.windows {
        let point = crate::grid::encode_spike_train(w, grid.config())?;
        let cell = cell_of_point(grid, &point)?;
        counts[cell] += 1.0;
    }
    let mut sv = from_empirical(grid, &counts, None)?;
    sv.label = format!("spike recording ({} windows)", spikes.windows.len());
    Ok(sv)
}

/// Axis cell containing a point of the domain ball.
pub fn cell_of_point(grid: &GridSpec, point: &PadicNumber) -> Result<usize> {
    let n = grid.support_exp() as i64;
    let m = grid.resolution_exp() as i64;
    let v = match point.valuation() {
        None => return Ok(grid.index_from_x(0)),
        Some(v) => v,
    };
    if v < -n {
        return Err(PadiqError::Parse(format!(
            "point with |x| = p^{} lies outside the domain ball of radius p^{n}",
            -v
        )));
    }
    let ds = point.digits();
    let mut idx = 0usize;
    let p = grid.prime() as usize;
    for pos in -n..m {
        let digit = if pos < v {
            0
        } else {
            *ds.get((pos - v) as usize).unwrap_or(&0) as usize
        };
        idx = idx * p + digit;
    }
    Ok(idx)
}

/// Flat `key = value` config text: one pair per line, `#` comments.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            PadiqError::Parse(format!("config line {}: expected key = value", i + 1))
        })?;
        let key = key.trim().to_string();
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(PadiqError::Parse(format!(
                "config line {}: duplicate key `{key}`",
                i + 1
            )));
        }
    }
    Ok(map)
}

/// Reject any key outside the allowed set (spelling mistakes fail fast).
pub fn validate_keys(map: &BTreeMap<String, String>, allowed: &[&str]) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(PadiqError::UnknownKey(key.clone()));
        }
    }
    Ok(())
}
