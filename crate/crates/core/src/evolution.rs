//! Unitary evolution by the spectral propagator, observable averages,
//! entropy, the Bohm-style potential, a scalar "consciousness" functional,
//! projective measurement, random dynamical selection of commuting
//! observable families, and Schmidt analysis on two-axis grids.

use crate::error::{PadiqError, Result};
use crate::grid::{integrate_reals, GridSpec, StateVector};
use crate::operators::{
    commutator, spectrum, vladimirov_multiplier, OperatorMatrix, SpectralDecomposition, ZeroMode,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

pub const NORMALIZATION_TOL: f64 = 1e-10;
pub const BOHM_MASK_EPS: f64 = 1e-12;
pub const COMMUTE_TOL: f64 = 1e-9;

/// Sign of the evolution phase. `Positive` uses e^{+i lambda t / h}; the
/// conventional quantum-mechanical choice is the opposite sign.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhaseSign {
    Positive,
    Conventional,
}

impl PhaseSign {
    fn factor(self) -> f64 {
        match self {
            PhaseSign::Positive => 1.0,
            PhaseSign::Conventional => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub norms: Vec<f64>,
}

/// Evolve phi0 under H for each requested time: phi(t) = sum_k
/// e^{s i lambda_k t / h} c_k psi_k with h = p^{-h_exp}.
pub fn evolve(
    phi0: &StateVector,
    h_op: &OperatorMatrix,
    h_exp: i64,
    times: &[f64],
    sign: PhaseSign,
) -> Result<EvolutionResult> {
    if phi0.grid() != h_op.grid() {
        return Err(PadiqError::GridMismatch(
            "initial state and Hamiltonian live on different grids".into(),
        ));
    }
    if !phi0.is_normalized(NORMALIZATION_TOL) {
        return Err(PadiqError::UnnormalizedState(phi0.norm()));
    }
    let spec = spectrum(h_op, None)?;
    evolve_with_spectrum(phi0, &spec, h_exp, times, sign)
}

pub fn evolve_with_spectrum(
    phi0: &StateVector,
    spec: &SpectralDecomposition,
    h_exp: i64,
    times: &[f64],
    sign: PhaseSign,
) -> Result<EvolutionResult> {
    let grid = phi0.grid();
    let h = (grid.prime() as f64).powi(-h_exp as i32);
    let coeffs: Vec<Complex64> = spec
        .eigenvectors
        .iter()
        .map(|psi| phi0.inner(psi))
        .collect::<Result<_>>()?;
    let s = sign.factor();
    let mut states = Vec::with_capacity(times.len());
    let mut norms = Vec::with_capacity(times.len());
    for &t in times {
        let mut acc = vec![Complex64::default(); grid.total_cells()];
        for ((lambda, c), psi) in spec.eigenvalues.iter().zip(&coeffs).zip(&spec.eigenvectors) {
            let phase = Complex64::from_polar(1.0, s * lambda * t / h);
            let w = phase * c;
            for (a, p) in acc.iter_mut().zip(psi.coeffs()) {
                *a += w * p;
            }
        }
        let mut sv = StateVector::new(grid, acc)?;
        sv.label = format!("{} @ t={t}", phi0.label);
        sv.h_exp = Some(h_exp);
        norms.push(sv.norm());
        states.push(sv);
    }
    Ok(EvolutionResult { times: times.to_vec(), states, norms })
}

/// <A>_phi = (A phi, phi), checked to be real.
pub fn average(a: &OperatorMatrix, phi: &StateVector) -> Result<f64> {
    if !phi.is_normalized(NORMALIZATION_TOL) {
        return Err(PadiqError::UnnormalizedState(phi.norm()));
    }
    let v = a.apply(phi)?.inner(phi)?;
    debug_assert!(v.im.abs() < 1e-9, "average has imaginary part {}", v.im);
    Ok(v.re)
}

/// Entropy E_P = -integral P log_p P dq of a cell density, base-p logarithm,
/// with P log P := 0 where P = 0.
pub fn entropy(grid: &GridSpec, density: &[f64]) -> Result<f64> {
    if density.len() != grid.total_cells() {
        return Err(PadiqError::GridMismatch(format!(
            "density has {} entries for {} cells",
            density.len(),
            grid.total_cells()
        )));
    }
    let total = integrate_reals(grid, density);
    if (total - 1.0).abs() > NORMALIZATION_TOL || density.iter().any(|&x| x < 0.0) {
        return Err(PadiqError::UnnormalizedDensity(total));
    }
    let lp = (grid.prime() as f64).ln();
    let terms: Vec<f64> = density
        .iter()
        .map(|&x| if x > 0.0 { -x * x.ln() / lp } else { 0.0 })
        .collect();
    Ok(integrate_reals(grid, &terms))
}

#[derive(Clone, Debug)]
pub struct BohmPotential {
    /// W on cells where the amplitude is above the mask threshold
    pub values: Vec<f64>,
    /// true where the value is defined
    pub mask: Vec<bool>,
}

/// Quantum-like potential W = -(h^2 / R) (D^2 R), R = |phi|; cells with
/// R <= eps are masked out rather than regularized.
pub fn bohm_potential(phi: &StateVector, h_exp: i64) -> Result<BohmPotential> {
    let grid = phi.grid();
    let d2 = vladimirov_multiplier(&grid, 2.0, ZeroMode::Floor)?;
    let r: Vec<f64> = phi.coeffs().iter().map(|c| c.norm()).collect();
    let d2r = d2.apply_reals(&r);
    let h = (grid.prime() as f64).powi(-h_exp as i32);
    let h2 = h * h;
    let mut values = vec![0.0; r.len()];
    let mut mask = vec![false; r.len()];
    for i in 0..r.len() {
        if r[i] > BOHM_MASK_EPS {
            values[i] = -h2 * d2r[i].re / r[i];
            mask[i] = true;
        }
    }
    Ok(BohmPotential { values, mask })
}

/// M(t) = integral (|D_x P|^2 + |dP/dt|^2) dx per time sample; the time
/// derivative uses central differences, one-sided at the ends.
pub fn consciousness_measure(evolution: &EvolutionResult, _h_exp: i64) -> Result<Vec<f64>> {
    let nt = evolution.times.len();
    if nt < 2 {
        return Err(PadiqError::TooFewTimeSamples);
    }
    let grid = evolution.states[0].grid();
    let d = vladimirov_multiplier(&grid, 1.0, ZeroMode::Floor)?;
    let densities: Vec<Vec<f64>> = evolution.states.iter().map(|s| s.density()).collect();
    let dt = evolution.times[1] - evolution.times[0];
    let nc = grid.total_cells();
    let mut out = Vec::with_capacity(nt);
    for ti in 0..nt {
        let dp = d.apply_reals(&densities[ti]);
        let dpdt: Vec<f64> = (0..nc)
            .map(|x| {
                if ti == 0 {
                    (densities[1][x] - densities[0][x]) / dt
                } else if ti == nt - 1 {
                    (densities[nt - 1][x] - densities[nt - 2][x]) / dt
                } else {
                    (densities[ti + 1][x] - densities[ti - 1][x]) / (2.0 * dt)
                }
            })
            .collect();
        let integrand: Vec<f64> = (0..nc).map(|x| dp[x].norm_sqr() + dpdt[x] * dpdt[x]).collect();
        out.push(integrate_reals(&grid, &integrand));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub eigenvalue: f64,
    pub probability: f64,
    pub state: StateVector,
}

/// Born-rule measurement of an observable given its spectral decomposition.
pub fn projective_measure_with_spectrum<R: Rng>(
    phi: &StateVector,
    spec: &SpectralDecomposition,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    if !phi.is_normalized(NORMALIZATION_TOL) {
        return Err(PadiqError::UnnormalizedState(phi.norm()));
    }
    let groups = spec.groups();
    // project onto each degenerate level
    let mut projections: Vec<(f64, StateVector, f64)> = Vec::with_capacity(groups.len());
    for g in &groups {
        let mut acc = vec![Complex64::default(); phi.grid().total_cells()];
        let mut lambda = 0.0;
        for &k in g {
            let c = phi.inner(&spec.eigenvectors[k])?;
            for (a, p) in acc.iter_mut().zip(spec.eigenvectors[k].coeffs()) {
                *a += c * p;
            }
            lambda += spec.eigenvalues[k];
        }
        lambda /= g.len() as f64;
        let proj = StateVector::new(phi.grid(), acc)?;
        let weight = proj.norm2();
        projections.push((lambda, proj, weight));
    }
    let total: f64 = projections.iter().map(|p| p.2).sum();
    let mut draw = rng.gen::<f64>() * total;
    let mut pick = projections.len() - 1;
    for (i, p) in projections.iter().enumerate() {
        if draw < p.2 {
            pick = i;
            break;
        }
        draw -= p.2;
    }
    let (lambda, proj, weight) = &projections[pick];
    let mut state = proj.normalized()?;
    state.label = phi.label.clone();
    state.h_exp = phi.h_exp;
    Ok(MeasurementOutcome { eigenvalue: *lambda, probability: weight / total, state })
}

pub fn projective_measure<R: Rng>(
    phi: &StateVector,
    a: &OperatorMatrix,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    let spec = spectrum(a, None)?;
    projective_measure_with_spectrum(phi, &spec, rng)
}

/// Exact Born weights per degenerate level: (eigenvalue, ||Pi phi||^2).
pub fn born_weights(phi: &StateVector, spec: &SpectralDecomposition) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for g in spec.groups() {
        let mut w = 0.0;
        let mut lambda = 0.0;
        for &k in &g {
            w += phi.inner(&spec.eigenvectors[k])?.norm_sqr();
            lambda += spec.eigenvalues[k];
        }
        out.push((lambda / g.len() as f64, w));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasurementRecord {
    pub step: usize,
    pub observable: String,
    pub outcome: f64,
    pub probability: f64,
    pub post_state: String,
}

#[derive(Clone, Debug)]
pub struct RdsConfig {
    /// Markov transition weights between commuting subsets; rows need not be
    /// normalized but must be nonnegative. None means uniform.
    pub transition: Option<Vec<Vec<f64>>>,
    /// How many past selections influence the next one (>= 1).
    pub memory_depth: usize,
    /// Exponential decay applied to older selections when depth > 1.
    pub memory_decay: f64,
    /// Required subset size; None selects among maximal commuting subsets.
    pub subset_size: Option<usize>,
    pub commute_tol: f64,
    pub seed: u64,
}

impl Default for RdsConfig {
    fn default() -> Self {
        RdsConfig {
            transition: None,
            memory_depth: 1,
            memory_decay: 0.5,
            subset_size: None,
            commute_tol: COMMUTE_TOL,
            seed: 0,
        }
    }
}

/// All maximal pairwise-commuting subsets (by index) of an observable family.
pub fn commuting_subsets(family: &[&OperatorMatrix], tol: f64) -> Result<Vec<Vec<usize>>> {
    let n = family.len();
    let mut commutes = vec![vec![false; n]; n];
    for i in 0..n {
        commutes[i][i] = true;
        for j in (i + 1)..n {
            let c = commutator(family[i], family[j])?;
            let ok = c.op_norm() <= tol;
            commutes[i][j] = ok;
            commutes[j][i] = ok;
        }
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let pairwise = members
            .iter()
            .all(|&i| members.iter().all(|&j| commutes[i][j]));
        if !pairwise {
            continue;
        }
        // maximal: no outside member commutes with all of these
        let maximal = (0..n)
            .filter(|i| !members.contains(i))
            .all(|i| !members.iter().all(|&j| commutes[i][j]));
        if maximal {
            subsets.push(members);
        }
    }
    subsets.sort();
    Ok(subsets)
}

/// Deterministic per-trial RNG derived from a master seed: ChaCha12 keyed by
/// the master seed with the trial index as the stream number.
pub fn split_rng(master_seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Random-dynamical-selection stream: at each step a commuting subset of the
/// family is chosen by a memory-weighted Markov rule, then its members are
/// measured in sequence, collapsing the state through each.
pub fn rds_stream(
    phi0: &StateVector,
    family: &[&OperatorMatrix],
    cfg: &RdsConfig,
    steps: usize,
) -> Result<Vec<MeasurementRecord>> {
    let subsets_all = commuting_subsets(family, cfg.commute_tol)?;
    let subsets: Vec<Vec<usize>> = match cfg.subset_size {
        None => subsets_all,
        Some(size) => {
            let filtered: Vec<Vec<usize>> = subsets_all
                .into_iter()
                .filter(|s| s.len() >= size)
                .flat_map(|s| combinations(&s, size))
                .collect();
            let mut dedup = filtered;
            dedup.sort();
            dedup.dedup();
            if dedup.is_empty() {
                return Err(PadiqError::NoCommutingSubset(size));
            }
            dedup
        }
    };
    let ns = subsets.len();
    if let Some(t) = &cfg.transition {
        if t.len() != ns || t.iter().any(|row| row.len() != ns) {
            return Err(PadiqError::Parse(format!(
                "transition matrix must be {ns}x{ns} over the commuting subsets"
            )));
        }
        if t.iter().flatten().any(|&w| w < 0.0) {
            return Err(PadiqError::Parse("transition weights must be nonnegative".into()));
        }
    }
    let specs: Vec<SpectralDecomposition> = family
        .iter()
        .map(|op| spectrum(op, None))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut history: Vec<usize> = Vec::new();
    let mut state = phi0.clone();
    let mut records = Vec::new();
    for step in 0..steps {
        let weights: Vec<f64> = if history.is_empty() {
            vec![1.0; ns]
        } else {
            let depth = cfg.memory_depth.max(1).min(history.len());
            let mut w = vec![0.0; ns];
            for back in 0..depth {
                let prev = history[history.len() - 1 - back];
                let decay = cfg.memory_decay.powi(back as i32);
                for j in 0..ns {
                    let t = match &cfg.transition {
                        Some(t) => t[prev][j],
                        None => 1.0,
                    };
                    w[j] += decay * t;
                }
            }
            w
        };
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(PadiqError::Parse(
                "selection weights sum to zero; stream cannot continue".into(),
            ));
        }
        let mut draw = rng.gen::<f64>() * total;
        let mut chosen = ns - 1;
        for (j, &w) in weights.iter().enumerate() {
            if draw < w {
                chosen = j;
                break;
            }
            draw -= w;
        }
        history.push(chosen);
        for &idx in &subsets[chosen] {
            let outcome = projective_measure_with_spectrum(&state, &specs[idx], &mut rng)?;
            state = outcome.state.clone();
            state.label = format!("post step {step} {}", family[idx].label);
            records.push(MeasurementRecord {
                step,
                observable: family[idx].label.clone(),
                outcome: outcome.eigenvalue,
                probability: outcome.probability,
                post_state: state.label.clone(),
            });
        }
    }
    Ok(records)
}

fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], size - 1) {
            let mut c = vec![first];
            c.append(&mut rest);
            out.push(c);
        }
    }
    out
}

pub fn records_to_jsonl(records: &[MeasurementRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes"))
        .map(|line| line + "\n")
        .collect()
}

#[derive(Clone, Debug)]
pub struct SchmidtResult {
    /// descending
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub tol: f64,
}

pub const SCHMIDT_RANK_TOL: f64 = 1e-10;

/// Schmidt decomposition of a state on a two-axis grid across the axis
/// split. Entries are scaled by the one-axis cell measure so that the
/// squared singular values sum to ||phi||^2.
pub fn schmidt_analysis(phi: &StateVector) -> Result<SchmidtResult> {
    let grid = phi.grid();
    if grid.dim() != 2 {
        return Err(PadiqError::WrongDimension { expected: 2, got: grid.dim() });
    }
    let n = grid.axis_cells();
    let mu_axis = (grid.prime() as f64).powi(-(grid.resolution_exp() as i32));
    let mut mat = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            mat[(i, j)] = phi.coeffs()[grid.flat_index(&[i, j])] * mu_axis;
        }
    }
    let mut sv: Vec<f64> = mat.singular_values().iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = sv.iter().filter(|&&s| s > SCHMIDT_RANK_TOL).count();
    Ok(SchmidtResult { singular_values: sv, rank, tol: SCHMIDT_RANK_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{omega, plane_wave};
    use crate::operators::{
        abs2_potential, hamiltonian, motivation_magnitude, neuron_activation, position_magnitude,
    };
    use crate::padic::PadicNumber;

    fn two_level_state(spec: &SpectralDecomposition, i: usize, j: usize) -> StateVector {
        let s = spec.eigenvectors[i]
            .add(&spec.eigenvectors[j])
            .unwrap()
            .scaled(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        s
    }

    #[test]
    fn free_plane_wave_keeps_flat_density() {
        let g = GridSpec::new(2, 2, 2, 1).unwrap();
        let h = hamiltonian(&g, 0, &vec![0.0; g.total_cells()], ZeroMode::Floor).unwrap();
        let xi = PadicNumber::from_digits(g.config(), -1, &[1, 0, 0]).unwrap();
        let phi0 = plane_wave(&g, &xi, 0).unwrap().normalized().unwrap();
        let times = [0.0, 0.3, 1.7, 9.2];
        let result = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let flat = phi0.density()[0];
        for (state, norm) in result.states.iter().zip(&result.norms) {
            assert!((norm - 1.0).abs() < 1e-10);
            for p in state.density() {
                assert!((p - flat).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eigenstate_evolves_by_global_phase() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let h = hamiltonian(&g, 1, &abs2_potential(&g), ZeroMode::Floor).unwrap();
        let spec = spectrum(&h, None).unwrap();
        let phi0 = spec.eigenvectors[3].clone();
        let times: Vec<f64> = (0..50).map(|i| 0.11 * i as f64).collect();
        let result = evolve(&phi0, &h, 1, &times, PhaseSign::Positive).unwrap();
        for state in &result.states {
            let fidelity = state.inner(&phi0).unwrap().norm();
            assert!((fidelity - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_and_energy_conserved() {
        let g = GridSpec::new(3, 1, 1, 1).unwrap();
        let h = hamiltonian(&g, 0, &abs2_potential(&g), ZeroMode::Floor).unwrap();
        let spec = spectrum(&h, None).unwrap();
        let phi0 = two_level_state(&spec, 0, 5);
        let times: Vec<f64> = (0..1000).map(|i| 0.01 * i as f64).collect();
        let result = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let e0 = average(&h, &result.states[0]).unwrap();
        let h2 = h.matmul(&h, "H^2").unwrap();
        let e20 = average(&h2, &result.states[0]).unwrap();
        for state in &result.states {
            assert!((state.norm() - 1.0).abs() < 1e-10);
            assert!((average(&h, state).unwrap() - e0).abs() < 1e-9);
            assert!((average(&h2, state).unwrap() - e20).abs() < 1e-9);
        }
    }

    #[test]
    fn two_level_superposition_revives() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let h = hamiltonian(&g, 1, &abs2_potential(&g), ZeroMode::Floor).unwrap();
        let spec = spectrum(&h, None).unwrap();
        let (i, j) = (0, spec.eigenvalues.len() - 1);
        let phi0 = two_level_state(&spec, i, j);
        let hbar = 0.5f64; // p = 2, h_exp = 1
        let revival = 2.0 * std::f64::consts::PI * hbar / (spec.eigenvalues[j] - spec.eigenvalues[i]);
        let times = [0.0, 0.37 * revival, revival];
        let result = evolve(&phi0, &h, 1, &times, PhaseSign::Positive).unwrap();
        let mid = result.states[1].inner(&phi0).unwrap().norm();
        assert!(mid < 1.0 - 1e-3, "midpoint fidelity {mid} should dip");
        let back = result.states[2].inner(&phi0).unwrap().norm();
        assert!((back - 1.0).abs() < 1e-8);
    }

    #[test]
    fn phase_sign_toggle_conjugates() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let h = hamiltonian(&g, 0, &abs2_potential(&g), ZeroMode::Floor).unwrap();
        let spec = spectrum(&h, None).unwrap();
        let phi0 = two_level_state(&spec, 0, 3);
        let times = [0.7];
        let fwd = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let bwd = evolve(&phi0, &h, 0, &[-0.7], PhaseSign::Conventional).unwrap();
        for (a, b) in fwd.states[0].coeffs().iter().zip(bwd.states[0].coeffs()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn average_of_eigenstate_is_eigenvalue() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        for k in [0, 2, spec.eigenvalues.len() - 1] {
            let a = average(&mq, &spec.eigenvectors[k]).unwrap();
            assert!((a - spec.eigenvalues[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn average_is_linear_over_operator_mixtures() {
        let g = GridSpec::new(3, 1, 1, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let a = neuron_activation(&g, None).unwrap();
        let mix = mq.scaled(2.5).add(&a.scaled(-0.75), "mix").unwrap();
        let phi = omega(&g, 0).unwrap().normalized().unwrap();
        let lhs = average(&mix, &phi).unwrap();
        let rhs = 2.5 * average(&mq, &phi).unwrap() - 0.75 * average(&a, &phi).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_uniform_unit_ball_is_zero() {
        for p in [2u64, 3, 5] {
            let g = GridSpec::new(p, 0, 2, 1).unwrap();
            let density = vec![1.0; g.total_cells()];
            assert!(entropy(&g, &density).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_identity_for_weighted_ball_state() {
        // P = c |q|_p on Z_p satisfies E_P = <A>_phi - log_p c with
        // phi = sqrt(P) and A the activation observable
        for (p, m) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2)] {
            let g = GridSpec::new(p, 0, m, 1).unwrap();
            let raw: Vec<f64> = (0..g.axis_cells()).map(|i| g.rep_norm(i)).collect();
            let total = integrate_reals(&g, &raw);
            let c = 1.0 / total;
            let density: Vec<f64> = raw.iter().map(|&x| c * x).collect();
            // grid-truncated normalization: c = (p+1)/(p (1 - p^{-2M}))
            let pf = p as f64;
            let c_closed = (pf + 1.0) / (pf * (1.0 - pf.powi(-2 * m as i32)));
            assert!((c - c_closed).abs() < 1e-12);
            let e_p = entropy(&g, &density).unwrap();
            let phi = StateVector::new(
                g,
                density.iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect(),
            )
            .unwrap();
            let a = neuron_activation(&g, None).unwrap();
            let avg = average(&a, &phi).unwrap();
            let rhs = avg - c.ln() / pf.ln();
            assert!((e_p - rhs).abs() < 1e-10, "p={p} m={m}: {e_p} vs {rhs}");
        }
    }

    #[test]
    fn entropy_of_single_cell_density() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let mu = g.cell_measure();
        let mut density = vec![0.0; g.total_cells()];
        density[3] = 1.0 / mu;
        // closed form: -mu * (1/mu) log_p (1/mu) = log_p mu
        let oracle = mu.ln() / 2f64.ln();
        assert!((entropy(&g, &density).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_unnormalized() {
        let g = GridSpec::new(2, 0, 1, 1).unwrap();
        let density = vec![2.0; g.total_cells()];
        assert!(entropy(&g, &density).is_err());
    }

    #[test]
    fn bohm_potential_of_uniform_state_vanishes() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let phi = StateVector::constant(g, Complex64::new(0.7, 0.0));
        let w = bohm_potential(&phi, 0).unwrap();
        assert!(w.mask.iter().all(|&m| m));
        assert!(w.values.iter().all(|&v| v.abs() < 1e-10));
    }

    #[test]
    fn bohm_potential_scale_invariant() {
        let g = GridSpec::new(3, 1, 1, 1).unwrap();
        let phi = omega(&g, 0).unwrap().add(
            &omega(&g, -1).unwrap().scaled(Complex64::new(0.0, 2.0)),
        )
        .unwrap();
        let w1 = bohm_potential(&phi, 1).unwrap();
        let w5 = bohm_potential(&phi.scaled(Complex64::new(5.0, 0.0)), 1).unwrap();
        assert_eq!(w1.mask, w5.mask);
        for (a, b) in w1.values.iter().zip(&w5.values) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn bohm_potential_matches_dense_oracle() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let phi = omega(&g, 0).unwrap();
        let w = bohm_potential(&phi, 1).unwrap();
        let d2 = vladimirov_multiplier(&g, 2.0, ZeroMode::Floor).unwrap();
        let r: Vec<f64> = phi.coeffs().iter().map(|c| c.norm()).collect();
        let d2r = d2.apply_reals(&r);
        let h2 = 0.25; // (2^{-1})^2
        for i in 0..g.total_cells() {
            if r[i] > BOHM_MASK_EPS {
                assert!(w.mask[i]);
                assert!((w.values[i] + h2 * d2r[i].re / r[i]).abs() < 1e-12);
            } else {
                assert!(!w.mask[i]);
            }
        }
        // Omega_1 vanishes outside Z_p, so those cells are masked
        assert!(w.mask.iter().any(|&m| !m));
    }

    #[test]
    fn consciousness_measure_zero_for_uniform_stationary() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let h = hamiltonian(&g, 0, &vec![0.0; g.total_cells()], ZeroMode::Floor).unwrap();
        let phi0 = StateVector::constant(g, Complex64::new(1.0, 0.0))
            .normalized()
            .unwrap();
        let times: Vec<f64> = (0..5).map(|i| 0.2 * i as f64).collect();
        let evo = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let m = consciousness_measure(&evo, 0).unwrap();
        assert!(m.iter().all(|&v| v.abs() < 1e-10), "{m:?}");
    }

    #[test]
    fn consciousness_measure_stationary_eigenstate_spatial_only() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let h = hamiltonian(&g, 0, &abs2_potential(&g), ZeroMode::Floor).unwrap();
        let spec = spectrum(&h, None).unwrap();
        let phi0 = spec.eigenvectors[2].clone();
        let times: Vec<f64> = (0..6).map(|i| 0.15 * i as f64).collect();
        let evo = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let m = consciousness_measure(&evo, 0).unwrap();
        // density is time-independent: spatial term only, constant in t
        let d = vladimirov_multiplier(&g, 1.0, ZeroMode::Floor).unwrap();
        let dp = d.apply_reals(&phi0.density());
        let spatial: Vec<f64> = dp.iter().map(|z| z.norm_sqr()).collect();
        let oracle = integrate_reals(&g, &spatial);
        for &v in &m {
            assert!((v - oracle).abs() < 1e-8, "{v} vs {oracle}");
        }
    }

    #[test]
    fn consciousness_measure_positive_for_superposition() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let h = hamiltonian(&g, 0, &abs2_potential(&g), ZeroMode::Floor).unwrap();
        let spec = spectrum(&h, None).unwrap();
        let phi0 = two_level_state(&spec, 0, 3);
        let times: Vec<f64> = (0..9).map(|i| 0.125 * i as f64).collect();
        let evo = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let m = consciousness_measure(&evo, 0).unwrap();
        assert!(m.iter().all(|&v| v >= 0.0));
        assert!(m.iter().any(|&v| v > 1e-4), "{m:?}");
        // reproducible across runs
        let evo2 = evolve(&phi0, &h, 0, &times, PhaseSign::Positive).unwrap();
        let m2 = consciousness_measure(&evo2, 0).unwrap();
        for (a, b) in m.iter().zip(&m2) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn consciousness_measure_needs_two_samples() {
        let g = GridSpec::new(2, 0, 1, 1).unwrap();
        let phi0 = StateVector::constant(g, Complex64::new(1.0, 0.0)).normalized().unwrap();
        let evo = EvolutionResult {
            times: vec![0.0],
            states: vec![phi0],
            norms: vec![1.0],
        };
        assert!(consciousness_measure(&evo, 0).is_err());
    }

    #[test]
    fn measuring_eigenstate_is_certain() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        let phi = spec.eigenvectors[0].clone();
        let mut rng = split_rng(7, 0);
        for _ in 0..20 {
            let out = projective_measure_with_spectrum(&phi, &spec, &mut rng).unwrap();
            assert!((out.eigenvalue - spec.eigenvalues[0]).abs() < 1e-10);
            assert!((out.probability - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn repeated_measurement_reproduces_outcome() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        let phi = omega(&g, 1).unwrap().normalized().unwrap();
        let mut rng = split_rng(11, 0);
        let first = projective_measure_with_spectrum(&phi, &spec, &mut rng).unwrap();
        let second = projective_measure_with_spectrum(&first.state, &spec, &mut rng).unwrap();
        assert!((second.eigenvalue - first.eigenvalue).abs() < 1e-10);
        assert!((second.probability - 1.0).abs() < 1e-10);
    }

    #[test]
    fn equal_superposition_splits_evenly() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        let groups = spec.groups();
        let phi = spec.eigenvectors[groups[0][0]]
            .add(&spec.eigenvectors[*groups.last().unwrap().first().unwrap()])
            .unwrap()
            .scaled(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let trials = 10_000usize;
        let mut rng = split_rng(42, 0);
        let mut low = 0usize;
        for _ in 0..trials {
            let out = projective_measure_with_spectrum(&phi, &spec, &mut rng).unwrap();
            if (out.eigenvalue - spec.eigenvalues[groups[0][0]]).abs() < 1e-9 {
                low += 1;
            }
        }
        // 3 sigma band around 5000 for a fair coin
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((low as f64 - 5000.0).abs() < 3.0 * sigma, "low = {low}");
    }

    #[test]
    fn histogram_matches_born_weights() {
        let g = GridSpec::new(3, 1, 1, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        // deterministic but unequal mixture
        let mut coeffs = vec![Complex64::default(); g.total_cells()];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = Complex64::new(1.0 + i as f64 * 0.3, (i % 3) as f64 * 0.2);
        }
        let phi = StateVector::new(g, coeffs).unwrap().normalized().unwrap();
        let weights = born_weights(&phi, &spec).unwrap();
        let trials = 10_000usize;
        let mut rng = split_rng(99, 1);
        let mut counts = vec![0usize; weights.len()];
        for _ in 0..trials {
            let out = projective_measure_with_spectrum(&phi, &spec, &mut rng).unwrap();
            let k = weights
                .iter()
                .position(|(l, _)| (l - out.eigenvalue).abs() < 1e-9)
                .unwrap();
            counts[k] += 1;
        }
        for ((_, w), &c) in weights.iter().zip(&counts) {
            let expect = trials as f64 * w;
            let sigma = (trials as f64 * w * (1.0 - w)).sqrt().max(1.0);
            assert!(
                (c as f64 - expect).abs() < 3.0 * sigma,
                "count {c} vs {expect} +- {sigma}"
            );
        }
    }

    #[test]
    fn diagonal_family_always_measured_together() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let a = neuron_activation(&g, None).unwrap();
        let phi = omega(&g, 1).unwrap().normalized().unwrap();
        let cfg = RdsConfig { seed: 5, ..Default::default() };
        let records = rds_stream(&phi, &[&mq, &a], &cfg, 12).unwrap();
        assert_eq!(records.len(), 24); // both observables every step
        for pair in records.chunks(2) {
            assert_eq!(pair[0].step, pair[1].step);
            let (mq_rec, a_rec) = if pair[0].observable == "M_q" {
                (&pair[0], &pair[1])
            } else {
                (&pair[1], &pair[0])
            };
            // A outcome = -log_p of the M_q outcome, or the zero-cell cutoff
            let want = if mq_rec.outcome > 1e-12 {
                -mq_rec.outcome.log2()
            } else {
                3.0
            };
            assert!((a_rec.outcome - want).abs() < 1e-9);
        }
    }

    #[test]
    fn noncommuting_pair_never_co_selected() {
        let g = GridSpec::new(2, 2, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let mxi = motivation_magnitude(&g, 0, ZeroMode::Floor).unwrap();
        let subsets = commuting_subsets(&[&mq, &mxi], COMMUTE_TOL).unwrap();
        assert_eq!(subsets, vec![vec![0], vec![1]]);
        let phi = omega(&g, 0).unwrap().normalized().unwrap();
        let cfg = RdsConfig { seed: 3, ..Default::default() };
        let records = rds_stream(&phi, &[&mq, &mxi], &cfg, 30).unwrap();
        // one observable per step, both appear over the stream
        assert_eq!(records.len(), 30);
        let mut seen = std::collections::HashSet::new();
        for r in &records {
            seen.insert(r.observable.clone());
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn rds_stream_reproducible_from_seed() {
        let g = GridSpec::new(2, 1, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let mxi = motivation_magnitude(&g, 1, ZeroMode::Floor).unwrap();
        let a = neuron_activation(&g, None).unwrap();
        let phi = omega(&g, 1).unwrap().normalized().unwrap();
        let cfg = RdsConfig { seed: 2024, memory_depth: 3, ..Default::default() };
        let family: [&OperatorMatrix; 3] = [&mq, &mxi, &a];
        let r1 = rds_stream(&phi, &family, &cfg, 25).unwrap();
        let r2 = rds_stream(&phi, &family, &cfg, 25).unwrap();
        assert_eq!(records_to_jsonl(&r1), records_to_jsonl(&r2));
        let other = RdsConfig { seed: 2025, ..cfg.clone() };
        let r3 = rds_stream(&phi, &family, &other, 25).unwrap();
        assert_ne!(records_to_jsonl(&r1), records_to_jsonl(&r3));
    }

    #[test]
    fn rds_rejects_oversized_subset_request() {
        let g = GridSpec::new(2, 2, 2, 1).unwrap();
        let mq = position_magnitude(&g).unwrap();
        let mxi = motivation_magnitude(&g, 0, ZeroMode::Floor).unwrap();
        let phi = omega(&g, 0).unwrap().normalized().unwrap();
        let cfg = RdsConfig { subset_size: Some(2), ..Default::default() };
        match rds_stream(&phi, &[&mq, &mxi], &cfg, 1) {
            Err(PadiqError::NoCommutingSubset(2)) => {}
            other => panic!("expected NoCommutingSubset, got {other:?}"),
        }
    }

    #[test]
    fn schmidt_rank_one_for_product_state() {
        let axis = GridSpec::new(2, 1, 1, 1).unwrap();
        let a = omega(&axis, 0).unwrap().normalized().unwrap();
        let b = omega(&axis, 1).unwrap().normalized().unwrap();
        let phi = StateVector::tensor(&a, &b).unwrap();
        let result = schmidt_analysis(&phi).unwrap();
        assert_eq!(result.rank, 1);
        let sum2: f64 = result.singular_values.iter().map(|s| s * s).sum();
        assert!((sum2 - phi.norm2()).abs() < 1e-10);
    }

    #[test]
    fn schmidt_rank_two_for_bell_state() {
        let axis = GridSpec::new(2, 1, 1, 1).unwrap();
        let mq = position_magnitude(&axis).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        let e1 = &spec.eigenvectors[0];
        let e2 = &spec.eigenvectors[3];
        let bell = StateVector::tensor(e1, e1)
            .unwrap()
            .add(&StateVector::tensor(e2, e2).unwrap())
            .unwrap()
            .scaled(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let result = schmidt_analysis(&bell).unwrap();
        assert_eq!(result.rank, 2);
        for &s in &result.singular_values[..2] {
            assert!((s - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        }
        let sum2: f64 = result.singular_values.iter().map(|s| s * s).sum();
        assert!((sum2 - bell.norm2()).abs() < 1e-10);
    }

    #[test]
    fn mixed_basis_vector_is_entangled() {
        // rotate a product pair by an explicit 2x2 unitary and check the
        // singular values against the rotation coefficients
        let axis = GridSpec::new(2, 1, 1, 1).unwrap();
        let mq = position_magnitude(&axis).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        let e1 = &spec.eigenvectors[0];
        let e2 = &spec.eigenvectors[3];
        let theta = 0.6f64;
        let phi = StateVector::tensor(e1, e1)
            .unwrap()
            .scaled(Complex64::new(theta.cos(), 0.0))
            .add(
                &StateVector::tensor(e2, e2)
                    .unwrap()
                    .scaled(Complex64::new(theta.sin(), 0.0)),
            )
            .unwrap();
        let result = schmidt_analysis(&phi).unwrap();
        assert_eq!(result.rank, 2);
        assert!((result.singular_values[0] - theta.cos()).abs() < 1e-10);
        assert!((result.singular_values[1] - theta.sin()).abs() < 1e-10);
    }

    #[test]
    fn schmidt_rejects_one_axis_grid() {
        let g = GridSpec::new(2, 1, 1, 1).unwrap();
        let phi = StateVector::constant(g, Complex64::new(1.0, 0.0));
        assert!(schmidt_analysis(&phi).is_err());
    }

    #[test]
    fn schmidt_rank_invariant_under_local_phase() {
        let axis = GridSpec::new(2, 1, 1, 1).unwrap();
        let mq = position_magnitude(&axis).unwrap();
        let spec = spectrum(&mq, None).unwrap();
        let e1 = &spec.eigenvectors[0];
        let e2 = &spec.eigenvectors[3];
        let bell = StateVector::tensor(e1, e1)
            .unwrap()
            .add(&StateVector::tensor(e2, e2).unwrap())
            .unwrap()
            .scaled(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        // local unitary on the first axis: diagonal phase per cell applied
        // across all second-axis cells
        let g2 = bell.grid();
        let n = g2.axis_cells();
        let mut rotated = bell.clone();
        for i in 0..n {
            let phase = Complex64::from_polar(1.0, 0.31 * i as f64);
            for j in 0..n {
                let flat = g2.flat_index(&[i, j]);
                rotated.coeffs_mut()[flat] *= phase;
            }
        }
        let r1 = schmidt_analysis(&bell).unwrap();
        let r2 = schmidt_analysis(&rotated).unwrap();
        assert_eq!(r1.rank, r2.rank);
        for (a, b) in r1.singular_values.iter().zip(&r2.singular_values) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
