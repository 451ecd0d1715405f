//! Exact monomial dynamics x -> x^n on the p-adic integers: orbits,
//! derivative-test classification of fixed points, and stability under
//! seeded digit-level noise.

use crate::error::{PadiqError, Result};
use crate::padic::{BaseConfig, PadicNumber};
use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Attracting,
    Repelling,
    Siegel,
    Inconclusive,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Attracting => "attracting",
            Classification::Repelling => "repelling",
            Classification::Siegel => "neutral/Siegel",
            Classification::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct DynSpec {
    pub cfg: BaseConfig,
    /// monomial exponent, >= 2
    pub exponent: u64,
    pub x0: PadicNumber,
    pub steps: usize,
    /// reference fixed point; None selects 0 or 1 from the start point
    pub fixed_point: Option<PadicNumber>,
}

impl DynSpec {
    pub fn new(cfg: BaseConfig, exponent: u64, x0: PadicNumber, steps: usize) -> Result<Self> {
        if exponent < 2 {
            return Err(PadiqError::Parse(format!(
                "monomial exponent must be at least 2, got {exponent}"
            )));
        }
        if x0.valuation().map_or(false, |v| v < 0) {
            return Err(PadiqError::Parse(
                "start point must lie in Z_p (valuation >= 0)".into(),
            ));
        }
        Ok(DynSpec { cfg, exponent, x0, steps, fixed_point: None })
    }

    /// The reference fixed point: explicit, or 0 for |x0| < 1, else 1.
    pub fn reference_point(&self) -> PadicNumber {
        if let Some(fp) = &self.fixed_point {
            return fp.clone();
        }
        match self.x0.norm_exp() {
            Some(0) => PadicNumber::from_integer(1, self.cfg),
            _ => PadicNumber::zero(self.cfg),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub points: Vec<PadicNumber>,
    /// distance exponent e with |x_k - x*| = p^e; None when the point is
    /// indistinguishable from the fixed point at working precision
    pub distance_exps: Vec<Option<i64>>,
    pub classification: Classification,
    /// true when an attracting orbit collapsed below p^{-K} and iteration
    /// stopped early
    pub precision_exhausted: bool,
}

impl OrbitReport {
    pub fn steps_completed(&self) -> usize {
        self.points.len().saturating_sub(1)
    }
}

/// Derivative test at a fixed point of x -> x^n: the multiplier is
/// n x*^{n-1}; attracting when its norm is < 1 (including the
/// superattracting 0), repelling when > 1, neutral when = 1.
pub fn classify_fixed_point(
    x_star: &PadicNumber,
    exponent: u64,
    cfg: BaseConfig,
) -> Result<Classification> {
    let image = x_star.pow(exponent);
    if image != *x_star {
        return Err(PadiqError::NotFixedPoint(x_star.to_string(), exponent));
    }
    let n = PadicNumber::from_bigint(&num_bigint::BigInt::from(exponent), cfg);
    let multiplier = n.mul(&x_star.pow(exponent - 1))?;
    Ok(match multiplier.norm_exp() {
        None => Classification::Attracting,
        Some(e) if e < 0 => Classification::Attracting,
        Some(0) => Classification::Siegel,
        Some(_) => Classification::Repelling,
    })
}

fn orbit_with<F>(spec: &DynSpec, mut post_step: F) -> Result<OrbitReport>
where
    F: FnMut(&PadicNumber, usize) -> Result<PadicNumber>,
{
    let x_star = spec.reference_point();
    let mut points = vec![spec.x0.clone()];
    let mut distance_exps = vec![spec.x0.distance_exp(&x_star)?];
    let mut exhausted = false;
    let mut x = spec.x0.clone();
    for step in 0..spec.steps {
        x = post_step(&x.pow(spec.exponent), step)?;
        let d = x.distance_exp(&x_star)?;
        points.push(x.clone());
        distance_exps.push(d);
        // an orbit that lands on the fixed point at precision K cannot be
        // tracked further: the true point may still differ below p^{-K}
        if d.is_none() && distance_exps[points.len() - 2].is_some() {
            exhausted = true;
            break;
        }
    }
    let derivative_class = classify_fixed_point(&x_star, spec.exponent, spec.cfg).ok();
    let classification = match derivative_class {
        None => Classification::Inconclusive,
        Some(c) => {
            if empirical_consistent(c, &distance_exps) {
                c
            } else {
                Classification::Inconclusive
            }
        }
    };
    Ok(OrbitReport { points, distance_exps, classification, precision_exhausted: exhausted })
}

/// Does the observed distance sequence agree with the derivative test?
fn empirical_consistent(class: Classification, distance_exps: &[Option<i64>]) -> bool {
    let pairs = distance_exps.windows(2);
    match class {
        Classification::Attracting => pairs.clone().all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => b < a,
            (Some(_), None) => true,
            (None, None) => true,
            (None, Some(_)) => false,
        }),
        Classification::Siegel => pairs.clone().all(|w| w[0] == w[1]),
        Classification::Repelling => pairs.clone().all(|w| match (w[0], w[1]) {
            // inside the unit ball the distance grows until it saturates
            (Some(a), Some(b)) => b >= a,
            (None, None) => true,
            _ => false,
        }),
        Classification::Inconclusive => true,
    }
}

/// Exact orbit of x -> x^n with per-step distances to the reference fixed
/// point.
pub fn iterate(spec: &DynSpec) -> Result<OrbitReport> {
    orbit_with(spec, |x, _| Ok(x.clone()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StabilityVerdict {
    /// the perturbed orbit shows the same limit behavior as the clean one
    Stable,
    /// behaviors differ
    Diverged,
}

#[derive(Clone, Debug)]
pub struct PerturbedOrbit {
    pub clean: OrbitReport,
    pub perturbed: OrbitReport,
    pub verdict: StabilityVerdict,
}

/// Add a random element of the ball p^delta Z_p to x: each digit at depth
/// >= delta is flipped with probability 1/2 to a uniformly random nonzero
/// offset.
fn perturb<R: Rng>(x: &PadicNumber, delta: u32, cfg: BaseConfig, rng: &mut R) -> Result<PadicNumber> {
    let p = cfg.prime();
    let mut noise_digits = vec![0u64; cfg.digits() as usize];
    for d in noise_digits.iter_mut().skip(delta as usize) {
        if rng.gen::<bool>() {
            *d = rng.gen_range(1..p);
        }
    }
    let noise = PadicNumber::from_digits(cfg, 0, &noise_digits)?;
    x.add(&noise)
}

/// Iterate from a noise-shifted start point (seeded digit flips at depth
/// >= delta, i.e. a perturbation of size at most p^{-delta}) and compare
/// the limit behavior against the clean orbit. Noise hits the initial
/// condition only: an attracting orbit then still reaches the fixed point,
/// while injecting noise at every step would keep it hovering at the noise
/// floor forever.
pub fn perturbed_iterate(spec: &DynSpec, delta: u32, seed: u64) -> Result<PerturbedOrbit> {
    if delta == 0 {
        return Err(PadiqError::Parse("noise depth delta must be positive".into()));
    }
    let clean = iterate(spec)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut noisy_spec = spec.clone();
    noisy_spec.x0 = perturb(&spec.x0, delta, spec.cfg, &mut rng)?;
    noisy_spec.fixed_point = Some(spec.reference_point());
    let perturbed = iterate(&noisy_spec)?;
    let verdict = match (clean.classification, perturbed.classification) {
        (a, b) if a == b => StabilityVerdict::Stable,
        // both ending on the fixed point also counts as agreement
        _ if clean.distance_exps.last() == Some(&None)
            && perturbed.distance_exps.last() == Some(&None) =>
        {
            StabilityVerdict::Stable
        }
        _ => StabilityVerdict::Diverged,
    };
    Ok(PerturbedOrbit { clean, perturbed, verdict })
}

/// Number of hierarchic codes of length L over p symbols, exactly: p^L.
pub fn mental_space_size(p: u64, l: u32) -> BigUint {
    BigUint::from(p).pow(l)
}
