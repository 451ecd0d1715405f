//! Finite discretization of L2(Q_p, dx): locally constant amplitudes on the
//! ball B_{p^N}(0), resolved into cosets of radius p^{-M}.
//!
//! Cell ordering per axis is lexicographic in the digit vector, most
//! significant position (-N) first. The integer X = representative * p^N is
//! the digit reversal of the cell index; the Fourier code relies on this.

use crate::error::{PadiqError, Result};
use crate::padic::{frac_of_scaled_product, Ball, BaseConfig, PadicNumber};
use num_complex::Complex64;

pub const DEFAULT_CELL_LIMIT: u64 = 4096;

/// Discretization of B_{p^N}(0)^d into cells of radius p^{-M}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GridSpec {
    cfg: BaseConfig,
    n: u32,
    m: u32,
    dim: usize,
}

impl GridSpec {
    pub fn new(p: u64, n: u32, m: u32, dim: usize) -> Result<Self> {
        Self::with_limit(p, n, m, dim, DEFAULT_CELL_LIMIT)
    }

    pub fn with_limit(p: u64, n: u32, m: u32, dim: usize, limit: u64) -> Result<Self> {
        if n + m < 1 || dim < 1 {
            return Err(PadiqError::Parse(
                "grid needs N + M >= 1 and d >= 1".into(),
            ));
        }
        let cfg = BaseConfig::new(p, n + m)?;
        let per_axis = (p as u128).pow(n + m);
        let total = per_axis.pow(dim as u32);
        if total > limit as u128 {
            return Err(PadiqError::GridTooLarge { cells: total, limit });
        }
        Ok(GridSpec { cfg, n, m, dim })
    }

    pub fn config(&self) -> BaseConfig {
        self.cfg
    }

    pub fn prime(&self) -> u64 {
        self.cfg.prime()
    }

    /// Support exponent N: the domain is B_{p^N}(0)^d.
    pub fn support_exp(&self) -> u32 {
        self.n
    }

    /// Resolution exponent M: cells have radius p^{-M}.
    pub fn resolution_exp(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> u32 {
        self.n + self.m
    }

    pub fn axis_cells(&self) -> usize {
        (self.prime() as u128).pow(self.levels()) as usize
    }

    pub fn total_cells(&self) -> usize {
        self.axis_cells().pow(self.dim as u32)
    }

    /// Haar measure of one cell: p^{-dM}.
    pub fn cell_measure(&self) -> f64 {
        (self.prime() as f64).powi(-((self.m * self.dim as u32) as i32))
    }

    /// Total measure of the domain: p^{dN}.
    pub fn total_measure(&self) -> f64 {
        (self.prime() as f64).powi((self.n * self.dim as u32) as i32)
    }

    /// The grid on the frequency side: support and resolution exchanged.
    pub fn dual(&self) -> GridSpec {
        GridSpec {
            cfg: self.cfg,
            n: self.m,
            m: self.n,
            dim: self.dim,
        }
    }

    /// Digits of the representative of an axis cell, in position order
    /// -N .. M-1.
    pub fn rep_digits(&self, axis_index: usize) -> Vec<u64> {
        let p = self.prime() as usize;
        let levels = self.levels() as usize;
        let mut ds = vec![0u64; levels];
        let mut r = axis_index;
        // base-p digits of the index, then reverse: index is lexicographic
        // with position -N as the most significant slot
        for slot in ds.iter_mut() {
            *slot = (r % p) as u64;
            r /= p;
        }
        ds.reverse();
        ds
    }

    /// X = representative * p^N as an integer in [0, p^{N+M}).
    pub fn x_value(&self, axis_index: usize) -> usize {
        let p = self.prime() as usize;
        let mut x = 0usize;
        let mut w = 1usize;
        for d in self.rep_digits(axis_index) {
            x += d as usize * w;
            w *= p;
        }
        x
    }

    /// Inverse of `x_value` (digit reversal).
    pub fn index_from_x(&self, x: usize) -> usize {
        let p = self.prime() as usize;
        let levels = self.levels() as usize;
        let mut idx = 0usize;
        let mut r = x;
        for _ in 0..levels {
            idx = idx * p + (r % p);
            r /= p;
        }
        idx
    }

    /// Canonical coset representative of an axis cell.
    pub fn representative(&self, axis_index: usize) -> PadicNumber {
        let ds = self.rep_digits(axis_index);
        PadicNumber::from_digits(self.cfg, -(self.n as i64), &ds).unwrap()
    }

    /// |representative|_p as an exponent; None for the zero cell.
    pub fn rep_norm_exp(&self, axis_index: usize) -> Option<i64> {
        if axis_index == 0 {
            return None;
        }
        let ds = self.rep_digits(axis_index);
        let first = ds.iter().position(|&d| d != 0).unwrap();
        // position of the first nonzero digit is -N + first
        Some(self.n as i64 - first as i64)
    }

    pub fn rep_norm(&self, axis_index: usize) -> f64 {
        match self.rep_norm_exp(axis_index) {
            None => 0.0,
            Some(e) => (self.prime() as f64).powi(e as i32),
        }
    }

    /// Decompose a flat cell index into per-axis indices (axis 0 major).
    pub fn axis_indices(&self, flat: usize) -> Vec<usize> {
        let n = self.axis_cells();
        let mut out = vec![0usize; self.dim];
        let mut r = flat;
        for a in (0..self.dim).rev() {
            out[a] = r % n;
            r /= n;
        }
        out
    }

    pub fn flat_index(&self, axes: &[usize]) -> usize {
        let n = self.axis_cells();
        axes.iter().fold(0usize, |acc, &i| acc * n + i)
    }

    /// Ordered cell list.
    pub fn cells(&self) -> Vec<Cell> {
        (0..self.total_cells())
            .map(|flat| Cell { grid: *self, flat })
            .collect()
    }

    fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self != other {
            return Err(PadiqError::GridMismatch(format!(
                "(p={},N={},M={},d={}) vs (p={},N={},M={},d={})",
                self.prime(),
                self.n,
                self.m,
                self.dim,
                other.prime(),
                other.n,
                other.m,
                other.dim
            )));
        }
        Ok(())
    }
}

/// One coset of the discretization.
#[derive(Clone, Debug)]
pub struct Cell {
    grid: GridSpec,
    flat: usize,
}

impl Cell {
    pub fn flat(&self) -> usize {
        self.flat
    }

    pub fn representative(&self, axis: usize) -> PadicNumber {
        let idx = self.grid.axis_indices(self.flat)[axis];
        self.grid.representative(idx)
    }

    /// Digit label used in the on-disk format: axes joined by ';'.
    pub fn digit_label(&self) -> String {
        self.grid
            .axis_indices(self.flat)
            .iter()
            .map(|&i| {
                self.grid
                    .rep_digits(i)
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Complex amplitude per cell with Haar-weighted geometry.
#[derive(Clone, Debug)]
pub struct StateVector {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
    pub label: String,
    /// Exponent m of the scale constant h = p^{-m} used to prepare the state.
    pub h_exp: Option<i64>,
}

impl StateVector {
    pub fn new(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.total_cells() {
            return Err(PadiqError::GridMismatch(format!(
                "coefficient count {} != cell count {}",
                coeffs.len(),
                grid.total_cells()
            )));
        }
        Ok(StateVector {
            grid,
            coeffs,
            label: String::new(),
            h_exp: None,
        })
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn constant(grid: GridSpec, value: Complex64) -> Self {
        StateVector {
            grid,
            coeffs: vec![value; grid.total_cells()],
            label: String::new(),
            h_exp: None,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Haar integral of the amplitude.
    pub fn integrate(&self) -> Complex64 {
        let mu = self.grid.cell_measure();
        self.coeffs.iter().sum::<Complex64>() * mu
    }

    /// Haar inner product (phi, psi) = integral of phi * conj(psi).
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        let mu = self.grid.cell_measure();
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * mu)
    }

    pub fn norm2(&self) -> f64 {
        let mu = self.grid.cell_measure();
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() * mu
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(PadiqError::AllZeroCounts);
        }
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c /= n;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= factor;
        }
        out
    }

    pub fn add(&self, other: &StateVector) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let mut out = self.clone();
        for (c, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c += o;
        }
        Ok(out)
    }

    /// Probability density P = |phi|^2 per cell.
    pub fn density(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Tensor product of two one-axis states on the same (p, N, M).
    pub fn tensor(a: &StateVector, b: &StateVector) -> Result<Self> {
        if a.grid.dim() != 1 || b.grid.dim() != 1 {
            return Err(PadiqError::WrongDimension { expected: 1, got: a.grid.dim().max(b.grid.dim()) });
        }
        if a.grid.config() != b.grid.config()
            || a.grid.support_exp() != b.grid.support_exp()
            || a.grid.resolution_exp() != b.grid.resolution_exp()
        {
            return Err(PadiqError::GridMismatch("tensor factors differ".into()));
        }
        let grid = GridSpec::with_limit(
            a.grid.prime(),
            a.grid.support_exp(),
            a.grid.resolution_exp(),
            2,
            u64::MAX,
        )?;
        let n = a.grid.axis_cells();
        let mut coeffs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                coeffs.push(a.coeffs[i] * b.coeffs[j]);
            }
        }
        StateVector::new(grid, coeffs)
    }
}

/// Haar integral of a real cell-indexed field.
pub fn integrate_reals(grid: &GridSpec, values: &[f64]) -> f64 {
    grid.cell_measure() * values.iter().sum::<f64>()
}

fn reencode(x: &PadicNumber, cfg: BaseConfig) -> Result<PadicNumber> {
    match x.valuation() {
        None => Ok(PadicNumber::zero(cfg)),
        Some(v) => {
            let digits = x.digits();
            let take = digits.len().min(cfg.digits() as usize);
            PadicNumber::from_digits(cfg, v, &digits[..take])
        }
    }
}

/// Characteristic function Omega of a ball, as an (unnormalized) state.
/// The ball must be a union of grid cells and lie inside the domain.
pub fn indicator_state(grid: &GridSpec, ball: &Ball) -> Result<StateVector> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    let n = grid.support_exp();
    let m = grid.resolution_exp();
    if ball.radius_exp < -(m as i64) || ball.radius_exp > n as i64 {
        return Err(PadiqError::BallNotResolvable { radius_exp: ball.radius_exp, n, m });
    }
    let center = reencode(&ball.center, grid.config())?;
    if let Some(e) = center.norm_exp() {
        if e > n as i64 {
            return Err(PadiqError::BallNotResolvable { radius_exp: ball.radius_exp, n, m });
        }
    }
    let local = Ball::new(center, ball.radius_exp);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.total_cells()];
    for (i, c) in coeffs.iter_mut().enumerate() {
        if local.contains(&grid.representative(i))? {
            *c = Complex64::new(1.0, 0.0);
        }
    }
    Ok(StateVector {
        grid: *grid,
        coeffs,
        label: format!("Omega(p^{})", ball.radius_exp),
        h_exp: None,
    })
}

/// Ball indicator centered at zero, Omega_r with r = p^radius_exp.
pub fn omega(grid: &GridSpec, radius_exp: i64) -> Result<StateVector> {
    let zero = PadicNumber::zero(grid.config());
    indicator_state(grid, &Ball::new(zero, radius_exp))
}

/// Free mental wave phi_xi(x) = e(h xi x) with h = p^{-h_exp}.
/// Requires |h xi|_p <= p^M so the wave is constant on grid cells.
pub fn plane_wave(grid: &GridSpec, xi: &PadicNumber, h_exp: i64) -> Result<StateVector> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    if let Some(e) = xi.norm_exp() {
        let scaled = e + h_exp;
        if scaled > grid.resolution_exp() as i64 {
            return Err(PadiqError::WaveNotRepresentable {
                got: scaled,
                max: grid.resolution_exp() as i64,
            });
        }
    }
    let mut coeffs = Vec::with_capacity(grid.total_cells());
    for i in 0..grid.total_cells() {
        let rep = grid.representative(i);
        let frac = frac_of_scaled_product(xi, &rep, -h_exp);
        coeffs.push(frac.character());
    }
    let mut sv = StateVector::new(*grid, coeffs)?;
    sv.label = format!("plane_wave(|xi|={})", xi.norm());
    sv.h_exp = Some(h_exp);
    Ok(sv)
}

/// Amplitude from empirical counts: P is the count vector normalized to a
/// Haar probability density, phi = sqrt(P) e^{i theta}.
pub fn from_empirical(
    grid: &GridSpec,
    counts: &[f64],
    phase: Option<&[f64]>,
) -> Result<StateVector> {
    if counts.len() != grid.total_cells() {
        return Err(PadiqError::GridMismatch(format!(
            "count vector length {} != cell count {}",
            counts.len(),
            grid.total_cells()
        )));
    }
    let total = integrate_reals(grid, counts);
    if total <= 0.0 {
        return Err(PadiqError::AllZeroCounts);
    }
    let mut coeffs = Vec::with_capacity(counts.len());
    for (i, &c) in counts.iter().enumerate() {
        let density = c / total;
        let theta = phase.map(|ph| ph[i]).unwrap_or(0.0);
        coeffs.push(Complex64::from_polar(density.sqrt(), theta));
    }
    StateVector::new(*grid, coeffs)
}

/// Encode a spike train: digit j of the mental state is the oscillation
/// count of neuron j in the window.
pub fn encode_spike_train(counts: &[u64], cfg: BaseConfig) -> Result<PadicNumber> {
    for &c in counts {
        if c >= cfg.prime() {
            return Err(PadiqError::DigitOutOfRange { digit: c, p: cfg.prime() });
        }
    }
    PadicNumber::from_digits(cfg, 0, counts)
}
