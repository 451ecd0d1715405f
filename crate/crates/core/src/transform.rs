//! p-adic Fourier transform on the discrete grid.
//!
//! With cells labelled by X = x * p^N and frequencies by Y = xi * p^M, the
//! kernel e(xi x) = exp(2 pi i {xi x}) becomes exp(2 pi i X Y / n) with
//! n = p^{N+M}: an ordinary size-n DFT up to the digit-reversal between the
//! cell order and X. The dense character sum is kept permanently as the
//! oracle for the radix-p fast path.

use crate::error::Result;
use crate::grid::{GridSpec, StateVector};
use num_complex::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransformMode {
    Dense,
    Fast,
}

fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect()
}

/// Unnormalized DFT in X-order: out[Y] = sum_X a[X] w^{sign * X * Y}.
fn dense_dft(a: &[Complex64], sign: i64) -> Vec<Complex64> {
    let n = a.len();
    let w = roots_of_unity(n);
    let mut out = vec![Complex64::default(); n];
    for (y, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::default();
        for (x, &v) in a.iter().enumerate() {
            let k = (x * y) % n;
            let idx = if sign >= 0 { k } else { (n - k) % n };
            acc += v * w[idx];
        }
        *o = acc;
    }
    out
}

/// Radix-p decimation-in-time FFT, same contract as `dense_dft`.
fn fast_dft(a: &[Complex64], p: usize, sign: i64) -> Vec<Complex64> {
    let n = a.len();
    if n == 1 {
        return a.to_vec();
    }
    debug_assert_eq!(n % p, 0);
    let sub = n / p;
    // split by residue class mod p and transform each part
    let parts: Vec<Vec<Complex64>> = (0..p)
        .map(|r| {
            let seq: Vec<Complex64> = (0..sub).map(|t| a[t * p + r]).collect();
            fast_dft(&seq, p, sign)
        })
        .collect();
    let w = roots_of_unity(n);
    let wp = roots_of_unity(p);
    let mut out = vec![Complex64::default(); n];
    let pick = |table: &[Complex64], k: usize, len: usize| {
        if sign >= 0 {
            table[k % len]
        } else {
            table[(len - k % len) % len]
        }
    };
    for s in 0..sub {
        // p x p character-matrix butterfly with twiddles w^{r s}
        let twiddled: Vec<Complex64> = (0..p)
            .map(|r| parts[r][s] * pick(&w, r * s, n))
            .collect();
        for u in 0..p {
            let mut acc = Complex64::default();
            for (r, &c) in twiddled.iter().enumerate() {
                acc += c * pick(&wp, r * u, p);
            }
            out[s + sub * u] = acc;
        }
    }
    out
}

/// Apply a length-n transform along one axis of a row-major d-dim array.
fn apply_axis<F>(coeffs: &[Complex64], grid: &GridSpec, axis: usize, f: F) -> Vec<Complex64>
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let n = grid.axis_cells();
    let d = grid.dim();
    let stride = n.pow((d - 1 - axis) as u32);
    let block = stride * n;
    let total = coeffs.len();
    let mut out = vec![Complex64::default(); total];
    let mut scratch = vec![Complex64::default(); n];
    for base in (0..total).step_by(block) {
        for off in 0..stride {
            for (k, s) in scratch.iter_mut().enumerate() {
                *s = coeffs[base + off + k * stride];
            }
            let t = f(&scratch);
            for (k, v) in t.iter().enumerate() {
                out[base + off + k * stride] = *v;
            }
        }
    }
    out
}

fn axis_transform_1d(
    data: &[Complex64],
    grid: &GridSpec,
    forward: bool,
    mode: TransformMode,
) -> Vec<Complex64> {
    let n = grid.axis_cells();
    let p = grid.prime() as usize;
    let sign: i64 = if forward { 1 } else { -1 };
    // source ordering -> X ordering
    let mut a = vec![Complex64::default(); n];
    for (idx, v) in data.iter().enumerate() {
        a[grid.x_value(idx)] = *v;
    }
    let spectrum = match mode {
        TransformMode::Dense => dense_dft(&a, sign),
        TransformMode::Fast => fast_dft(&a, p, sign),
    };
    // Haar weight of the source cells; the direction only flips the kernel
    let weight = (grid.prime() as f64).powi(-(grid.resolution_exp() as i32));
    let dual = grid.dual();
    let mut out = vec![Complex64::default(); n];
    for (y, v) in spectrum.iter().enumerate() {
        out[dual.index_from_x(y)] = v * weight;
    }
    out
}

fn run(phi: &StateVector, forward: bool, mode: TransformMode) -> Result<StateVector> {
    let grid = phi.grid();
    let mut coeffs = phi.coeffs().to_vec();
    for axis in 0..grid.dim() {
        coeffs = apply_axis(&coeffs, &grid, axis, |slice| {
            axis_transform_1d(slice, &grid, forward, mode)
        });
    }
    let mut out = StateVector::new(grid.dual(), coeffs)?;
    out.label = phi.label.clone();
    out.h_exp = phi.h_exp;
    Ok(out)
}

/// Dense transform, phi~(xi) = integral of phi(x) e(xi x) dx.
pub fn fourier(phi: &StateVector) -> Result<StateVector> {
    run(phi, true, TransformMode::Dense)
}

/// Dense inverse, phi(x) = integral of phi~(xi) e(-xi x) d xi.
pub fn inverse_fourier(phi: &StateVector) -> Result<StateVector> {
    run(phi, false, TransformMode::Dense)
}

/// Radix-p fast path; agrees with `fourier` to rounding.
pub fn fast_fourier(phi: &StateVector) -> Result<StateVector> {
    run(phi, true, TransformMode::Fast)
}

pub fn fast_inverse_fourier(phi: &StateVector) -> Result<StateVector> {
    run(phi, false, TransformMode::Fast)
}

pub fn transform(phi: &StateVector, forward: bool, mode: TransformMode) -> Result<StateVector> {
    run(phi, forward, mode)
}

/// Index of the cell holding -x when `flat` holds x (negation reflection).
pub fn reflection_index(grid: &GridSpec, flat: usize) -> usize {
    let n = grid.axis_cells();
    let axes = grid.axis_indices(flat);
    let reflected: Vec<usize> = axes
        .iter()
        .map(|&i| {
            let x = grid.x_value(i);
            grid.index_from_x((n - x) % n)
        })
        .collect();
    grid.flat_index(&reflected)
}
