//! Observables on the discrete mental space: the Vladimirov operator in
//! multiplier and integral form, magnitude observables M_q and M_xi, the
//! neuron-activation observable, commutators, Hamiltonians and spectra.

use crate::error::{PadiqError, Result};
use crate::grid::{GridSpec, StateVector};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-7;

/// Value assigned to the Fourier multiplier on the zero-frequency cell.
///
/// `Floor` takes the spectral infimum 0, which reproduces the continuum
/// eigenvalue multiset {0} u {p^{alpha k}} on the grid at the cost of one
/// artificial zero mode. `BallAverage` takes the Haar average of |xi|^alpha
/// over the unresolved ball B_{p^{-N}}(0); with it the discrete operator
/// coincides with the continuum operator on all grid-representable
/// functions, which is what the integral form discretizes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZeroMode {
    Floor,
    BallAverage,
}

/// Dense operator over the cells of a grid.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    grid: GridSpec,
    mat: DMatrix<Complex64>,
    pub label: String,
}

impl OperatorMatrix {
    pub fn new(grid: GridSpec, mat: DMatrix<Complex64>, label: &str) -> Self {
        OperatorMatrix { grid, mat, label: label.to_string() }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn diagonal_real(grid: GridSpec, values: &[f64], label: &str) -> Self {
        let n = grid.total_cells();
        let mut mat = DMatrix::<Complex64>::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            mat[(i, i)] = Complex64::new(v, 0.0);
        }
        OperatorMatrix::new(grid, mat, label)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.mat.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITIAN_TOL
    }

    pub fn apply(&self, phi: &StateVector) -> Result<StateVector> {
        if phi.grid() != self.grid {
            return Err(PadiqError::GridMismatch(format!(
                "operator `{}` applied to a state on a different grid",
                self.label
            )));
        }
        let v = nalgebra::DVector::from_column_slice(phi.coeffs());
        let out = &self.mat * v;
        let mut sv = StateVector::new(self.grid, out.as_slice().to_vec())?;
        sv.label = phi.label.clone();
        sv.h_exp = phi.h_exp;
        Ok(sv)
    }

    /// Apply to a real cell field, returning the complex image.
    pub fn apply_reals(&self, values: &[f64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_iterator(
            values.len(),
            values.iter().map(|&x| Complex64::new(x, 0.0)),
        );
        (&self.mat * v).as_slice().to_vec()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        OperatorMatrix::new(
            self.grid,
            self.mat.map(|c| c * factor),
            &self.label,
        )
    }

    pub fn add(&self, other: &OperatorMatrix, label: &str) -> Result<Self> {
        self.check_grid(other)?;
        Ok(OperatorMatrix::new(self.grid, &self.mat + &other.mat, label))
    }

    pub fn matmul(&self, other: &OperatorMatrix, label: &str) -> Result<Self> {
        self.check_grid(other)?;
        Ok(OperatorMatrix::new(self.grid, &self.mat * &other.mat, label))
    }

    fn check_grid(&self, other: &OperatorMatrix) -> Result<()> {
        if self.grid != other.grid {
            return Err(PadiqError::GridMismatch(format!(
                "`{}` and `{}` act on different grids",
                self.label, other.label
            )));
        }
        Ok(())
    }

    /// Operator norm (largest singular value); the Haar weight is uniform so
    /// this equals the norm with respect to the L2(dx) inner product.
    pub fn op_norm(&self) -> f64 {
        self.mat
            .clone()
            .singular_values()
            .iter()
            .cloned()
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry_diff(&self, other: &OperatorMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.mat.nrows() {
            for j in 0..self.mat.ncols() {
                worst = worst.max((self.mat[(i, j)] - other.mat[(i, j)]).norm());
            }
        }
        worst
    }
}

/// Haar average of |xi|^alpha over the sub-resolution ball B_{p^{-N}}(0).
pub fn zero_cell_average(p: u64, support_exp: u32, alpha: f64) -> f64 {
    let pf = p as f64;
    let scale = pf.powf(-alpha * support_exp as f64);
    scale * (1.0 - 1.0 / pf) / (1.0 - pf.powf(-(alpha + 1.0)))
}

/// Multiplier values |xi|^alpha over the dual cells of a one-axis grid,
/// indexed by dual cell order.
fn multiplier_values(grid: &GridSpec, alpha: f64, zero_mode: ZeroMode) -> Vec<f64> {
    let dual = grid.dual();
    (0..dual.axis_cells())
        .map(|i| match dual.rep_norm_exp(i) {
            Some(e) => (grid.prime() as f64).powf(alpha * e as f64),
            None => match zero_mode {
                ZeroMode::Floor => 0.0,
                ZeroMode::BallAverage => {
                    zero_cell_average(grid.prime(), grid.support_exp(), alpha)
                }
            },
        })
        .collect()
}

/// Build F^{-1} diag(m) F for a one-axis grid. The conjugated operator is a
/// circulant in the X labelling, so only the length-n kernel is summed.
fn multiplier_operator(grid: &GridSpec, values: &[f64], label: &str) -> Result<OperatorMatrix> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    let n = grid.axis_cells();
    let dual = grid.dual();
    // kernel k[t] = (1/n) sum_Y m[Y] w^{Y t}
    let mut kernel = vec![Complex64::default(); n];
    let roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    for (t, k) in kernel.iter_mut().enumerate() {
        let mut acc = Complex64::default();
        for (idx, &m) in values.iter().enumerate() {
            let y = dual.x_value(idx);
            acc += roots[(y * t) % n] * m;
        }
        *k = acc / n as f64;
    }
    let mut mat = DMatrix::<Complex64>::zeros(n, n);
    for row in 0..n {
        let xr = grid.x_value(row);
        for col in 0..n {
            let xc = grid.x_value(col);
            mat[(row, col)] = kernel[(xc + n - xr) % n];
        }
    }
    Ok(OperatorMatrix::new(*grid, mat, label))
}

/// Vladimirov operator D^alpha as a Fourier multiplier.
pub fn vladimirov_multiplier(
    grid: &GridSpec,
    alpha: f64,
    zero_mode: ZeroMode,
) -> Result<OperatorMatrix> {
    if alpha <= 0.0 {
        return Err(PadiqError::NonPositiveAlpha(alpha));
    }
    let values = multiplier_values(grid, alpha, zero_mode);
    multiplier_operator(grid, &values, &format!("D^{alpha}"))
}

/// Integral (nonlocal) form of D, alpha = 1:
/// D phi(x) = (p^2/(p+1)) integral (phi(x) - phi(y)) / |x-y|^2 dy.
/// `tail_corrected` adds the closed-form contribution p^{-(N+1)} of the
/// region outside the domain where phi vanishes.
pub fn vladimirov_integral(grid: &GridSpec, tail_corrected: bool) -> Result<OperatorMatrix> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    let p = grid.prime() as f64;
    let c_p = p * p / (p + 1.0);
    let n = grid.axis_cells();
    let mu = grid.cell_measure();
    let reps: Vec<_> = (0..n).map(|i| grid.representative(i)).collect();
    let mut mat = DMatrix::<Complex64>::zeros(n, n);
    let tail = if tail_corrected {
        p.powi(-(grid.support_exp() as i32 + 1))
    } else {
        0.0
    };
    for i in 0..n {
        let mut diag = tail;
        for j in 0..n {
            if i == j {
                continue;
            }
            let dist = reps[i].distance(&reps[j]).map_err(|e| e)?;
            let w = mu / (dist * dist);
            mat[(i, j)] = Complex64::new(-c_p * w, 0.0);
            diag += w;
        }
        mat[(i, i)] = Complex64::new(c_p * diag, 0.0);
    }
    let label = if tail_corrected { "D_integral" } else { "D_integral_raw" };
    Ok(OperatorMatrix::new(*grid, mat, label))
}

/// Mental-state magnitude M_q phi(x) = |x|_p phi(x) (one axis, diagonal).
pub fn position_magnitude(grid: &GridSpec) -> Result<OperatorMatrix> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    let values: Vec<f64> = (0..grid.axis_cells()).map(|i| grid.rep_norm(i)).collect();
    Ok(OperatorMatrix::diagonal_real(*grid, &values, "M_q"))
}

/// Motivation magnitude M_xi = h D with h = p^{-h_exp}.
pub fn motivation_magnitude(
    grid: &GridSpec,
    h_exp: i64,
    zero_mode: ZeroMode,
) -> Result<OperatorMatrix> {
    let h = (grid.prime() as f64).powi(-h_exp as i32);
    let d = vladimirov_multiplier(grid, 1.0, zero_mode)?;
    let mut out = d.scaled(h);
    out.label = "M_xi".into();
    Ok(out)
}

/// Neuron-activation observable A = -log_p M_q. The zero cell, whose
/// magnitude is below grid resolution, is assigned `cutoff` (default M+1).
pub fn neuron_activation(grid: &GridSpec, cutoff: Option<f64>) -> Result<OperatorMatrix> {
    if grid.dim() != 1 {
        return Err(PadiqError::WrongDimension { expected: 1, got: grid.dim() });
    }
    let cutoff = cutoff.unwrap_or(grid.resolution_exp() as f64 + 1.0);
    let values: Vec<f64> = (0..grid.axis_cells())
        .map(|i| match grid.rep_norm_exp(i) {
            Some(e) => -(e as f64),
            None => cutoff,
        })
        .collect();
    Ok(OperatorMatrix::diagonal_real(*grid, &values, "A"))
}

pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    let ab = a.matmul(b, "")?;
    let ba = b.matmul(a, "")?;
    Ok(OperatorMatrix::new(
        a.grid(),
        ab.matrix() - ba.matrix(),
        &format!("[{}, {}]", a.label, b.label),
    ))
}

/// Mental energy H = h^2 Delta + V on a d-axis grid, Delta = sum_j D_j^2
/// assembled as I x .. x D^2 x .. x I.
pub fn hamiltonian(
    grid: &GridSpec,
    h_exp: i64,
    potential: &[f64],
    zero_mode: ZeroMode,
) -> Result<OperatorMatrix> {
    hamiltonian_alpha(grid, h_exp, 2.0, potential, zero_mode)
}

/// Same assembly with a general per-axis operator D^alpha.
pub fn hamiltonian_alpha(
    grid: &GridSpec,
    h_exp: i64,
    alpha: f64,
    potential: &[f64],
    zero_mode: ZeroMode,
) -> Result<OperatorMatrix> {
    let total = grid.total_cells();
    if potential.len() != total {
        return Err(PadiqError::GridMismatch(format!(
            "potential has {} entries for {} cells",
            potential.len(),
            total
        )));
    }
    let axis_grid = GridSpec::with_limit(
        grid.prime(),
        grid.support_exp(),
        grid.resolution_exp(),
        1,
        u64::MAX,
    )?;
    let d2 = vladimirov_multiplier(&axis_grid, alpha, zero_mode)?;
    let n = axis_grid.axis_cells();
    let d = grid.dim();
    let h = (grid.prime() as f64).powi(-h_exp as i32);
    let mut mat = DMatrix::<Complex64>::zeros(total, total);
    let eye = DMatrix::<Complex64>::identity(n, n);
    for axis in 0..d {
        let mut term = DMatrix::<Complex64>::identity(1, 1);
        for a in 0..d {
            let factor = if a == axis { d2.matrix() } else { &eye };
            term = term.kronecker(factor);
        }
        mat += term;
    }
    mat *= Complex64::new(h * h, 0.0);
    for (i, &v) in potential.iter().enumerate() {
        mat[(i, i)] += Complex64::new(v, 0.0);
    }
    Ok(OperatorMatrix::new(*grid, mat, "H"))
}

/// Potential V(q) = |q|_p^2 on the cells of a grid (product of axis norms
/// squared summed per axis for d > 1).
pub fn abs2_potential(grid: &GridSpec) -> Vec<f64> {
    (0..grid.total_cells())
        .map(|flat| {
            grid.axis_indices(flat)
                .iter()
                .map(|&i| {
                    let r = grid.rep_norm(i);
                    r * r
                })
                .sum()
        })
        .collect()
}

/// Spectral decomposition of a Hermitian operator with degeneracy grouping.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    grid: GridSpec,
    /// ascending
    pub eigenvalues: Vec<f64>,
    /// Haar-orthonormal eigenvectors, same order
    pub eigenvectors: Vec<StateVector>,
    pub degeneracy_tol: f64,
}

impl SpectralDecomposition {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Indices of eigenpairs grouped into (near-)degenerate levels.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.eigenvalues.len() {
            let start_new = match out.last().and_then(|g| g.last()) {
                None => true,
                Some(&prev) => {
                    let gap = self.eigenvalues[i] - self.eigenvalues[prev];
                    gap > self.degeneracy_tol * self.eigenvalues[i].abs().max(1.0)
                }
            };
            if start_new {
                out.push(vec![i]);
            } else {
                out.last_mut().unwrap().push(i);
            }
        }
        out
    }

    /// (representative eigenvalue, multiplicity) per level.
    pub fn degeneracy_report(&self) -> Vec<(f64, usize)> {
        self.groups()
            .iter()
            .map(|g| {
                let mean = g.iter().map(|&i| self.eigenvalues[i]).sum::<f64>() / g.len() as f64;
                (mean, g.len())
            })
            .collect()
    }

    /// Largest residual ||H v - lambda v|| over all eigenpairs.
    pub fn max_residual(&self, op: &OperatorMatrix) -> Result<f64> {
        let mut worst = 0.0f64;
        for (lambda, vec) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let hv = op.apply(vec)?;
            let lv = vec.scaled(Complex64::new(*lambda, 0.0));
            let mut diff2 = 0.0;
            for (a, b) in hv.coeffs().iter().zip(lv.coeffs()) {
                diff2 += (a - b).norm_sqr();
            }
            worst = worst.max((diff2 * self.grid.cell_measure()).sqrt());
        }
        Ok(worst)
    }

    /// Largest deviation of pairwise Haar inner products from identity.
    pub fn max_orthonormality_defect(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (i, a) in self.eigenvectors.iter().enumerate() {
            for (j, b) in self.eigenvectors.iter().enumerate() {
                let ip = a.inner(b)?;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
            }
        }
        Ok(worst)
    }
}

/// Eigendecompose a Hermitian operator; deterministic for fixed input.
pub fn spectrum(op: &OperatorMatrix, degeneracy_tol: Option<f64>) -> Result<SpectralDecomposition> {
    let defect = op.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(PadiqError::NotHermitian(defect));
    }
    let se = op.matrix().clone().symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let mu_sqrt = op.grid().cell_measure().sqrt();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &k in &order {
        eigenvalues.push(se.eigenvalues[k]);
        let col = se.eigenvectors.column(k);
        // nalgebra vectors are unit in the plain l2 sense; rescale so the
        // Haar norm is 1
        let coeffs: Vec<Complex64> = col.iter().map(|c| c / mu_sqrt).collect();
        let mut sv = StateVector::new(op.grid(), coeffs)?;
        sv.label = format!("{} eigenvector", op.label);
        eigenvectors.push(sv);
    }
    Ok(SpectralDecomposition {
        grid: op.grid(),
        eigenvalues,
        eigenvectors,
        degeneracy_tol: degeneracy_tol.unwrap_or(DEFAULT_DEGENERACY_TOL),
    })
}

/// Closed-form eigenvalue multiset of the discretized D^alpha with the
/// `Floor` convention: {0} u {p^{alpha k} with multiplicity
/// p^{k+N-1}(p-1), k = -N+1 .. M}.
pub fn expected_multiplier_multiset(grid: &GridSpec, alpha: f64) -> Vec<(f64, usize)> {
    let p = grid.prime() as f64;
    let n = grid.support_exp() as i64;
    let m = grid.resolution_exp() as i64;
    let mut out = vec![(0.0, 1usize)];
    for k in (-n + 1)..=m {
        let value = p.powf(alpha * k as f64);
        let mult = (grid.prime() as i128).pow((k + n - 1) as u32) as usize
            * (grid.prime() as usize - 1);
        out.push((value, mult));
    }
    out
}
