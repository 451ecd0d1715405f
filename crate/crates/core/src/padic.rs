//! Exact p-adic arithmetic at fixed digit precision.
//!
//! A nonzero value is stored as `p^v * u` where `u` is a unit known modulo
//! `p^K` (K significant digits, leading digit nonzero). Zero is a dedicated
//! canonical value so that `|0|_p = 0` holds exactly. Cancellation in
//! addition shortens the trusted digit count, which is tracked in
//! `effective_digits`.

use crate::error::{PadiqError, Result};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Coding base and digit precision shared by a family of values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BaseConfig {
    p: u64,
    k: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl BaseConfig {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(PadiqError::NotPrime(p));
        }
        if k == 0 {
            return Err(PadiqError::ZeroPrecision);
        }
        Ok(Self { p, k })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn digits(&self) -> u32 {
        self.k
    }

    pub(crate) fn p_big(&self) -> BigUint {
        BigUint::from(self.p)
    }

    pub(crate) fn p_pow(&self, e: u32) -> BigUint {
        self.p_big().pow(e)
    }

    fn modulus(&self) -> BigUint {
        self.p_pow(self.k)
    }
}

impl fmt::Display for BaseConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, K={})", self.p, self.k)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Zero,
    NonZero {
        valuation: i64,
        /// Unit mantissa, reduced modulo p^K.
        mantissa: BigUint,
        /// Number of trusted digits (<= K); shrinks on cancellation.
        effective: u32,
    },
}

/// A p-adic number at fixed precision.
#[derive(Clone, Debug)]
pub struct PadicNumber {
    cfg: BaseConfig,
    repr: Repr,
}

/// Exact fractional part `num / p^den_exp` in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: BigUint,
    pub den_exp: u32,
    pub p: u64,
}

impl Fraction {
    pub fn zero(p: u64) -> Self {
        Fraction { num: BigUint::zero(), den_exp: 0, p }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let num = self.num.to_f64().unwrap_or(f64::NAN);
        num / (self.p as f64).powi(self.den_exp as i32)
    }

    /// e^{2 pi i num / p^e}, the additive character at this fraction.
    pub fn character(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(1.0, 0.0);
        }
        let angle = 2.0 * std::f64::consts::PI * self.to_f64();
        Complex64::new(angle.cos(), angle.sin())
    }
}

fn valuation_of(n: &BigUint, p: &BigUint) -> u32 {
    debug_assert!(!n.is_zero());
    let mut v = 0u32;
    let mut n = n.clone();
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn mod_inverse(a: &BigUint, modulus: &BigUint) -> BigUint {
    // extended Euclid over BigInt; a is a unit mod p^K by construction
    let (mut r0, mut r1) = (BigInt::from(modulus.clone()), BigInt::from(a.clone()));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    debug_assert!(r0.is_one());
    let m = BigInt::from(modulus.clone());
    let inv = ((s0 % &m) + &m) % &m;
    inv.to_biguint().unwrap()
}

impl PadicNumber {
    pub fn zero(cfg: BaseConfig) -> Self {
        PadicNumber { cfg, repr: Repr::Zero }
    }

    pub fn config(&self) -> BaseConfig {
        self.cfg
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    fn from_parts(cfg: BaseConfig, valuation: i64, mantissa: BigUint, effective: u32) -> Self {
        debug_assert!(!(&mantissa % cfg.p_big()).is_zero());
        let mantissa = mantissa % cfg.modulus();
        PadicNumber {
            cfg,
            repr: Repr::NonZero { valuation, mantissa, effective: effective.min(cfg.k) },
        }
    }

    /// Encode a signed integer.
    pub fn from_integer(n: i64, cfg: BaseConfig) -> Self {
        Self::from_bigint(&BigInt::from(n), cfg)
    }

    pub fn from_bigint(n: &BigInt, cfg: BaseConfig) -> Self {
        if n.is_zero() {
            return Self::zero(cfg);
        }
        let mag = n.magnitude();
        let v = valuation_of(mag, &cfg.p_big());
        let unit = mag / cfg.p_pow(v);
        let mut m = unit % cfg.modulus();
        if n.is_negative() {
            m = cfg.modulus() - m;
        }
        Self::from_parts(cfg, v as i64, m, cfg.k)
    }

    /// Encode a rational a/b with b coprime to p.
    pub fn from_ratio(a: i64, b: i64, cfg: BaseConfig) -> Result<Self> {
        Self::from_big_ratio(&BigInt::from(a), &BigInt::from(b), cfg)
    }

    pub fn from_big_ratio(a: &BigInt, b: &BigInt, cfg: BaseConfig) -> Result<Self> {
        if b.is_zero() {
            return Err(PadiqError::DivisionByZero);
        }
        if (b.magnitude() % cfg.p_big()).is_zero() {
            return Err(PadiqError::DenominatorNotCoprime(b.to_string(), cfg.p));
        }
        if a.is_zero() {
            return Ok(Self::zero(cfg));
        }
        let num = Self::from_bigint(a, cfg);
        let den = Self::from_bigint(b, cfg);
        num.div(&den)
    }

    /// Build from an explicit digit expansion starting at `valuation`.
    /// Leading zeros are stripped; an all-zero expansion yields canonical zero.
    pub fn from_digits(cfg: BaseConfig, valuation: i64, digits: &[u64]) -> Result<Self> {
        let mut value = BigUint::zero();
        for (i, &d) in digits.iter().enumerate() {
            if d >= cfg.p {
                return Err(PadiqError::DigitOutOfRange { digit: d, p: cfg.p });
            }
            value += BigUint::from(d) * cfg.p_pow(i as u32);
        }
        if value.is_zero() {
            return Ok(Self::zero(cfg));
        }
        let shift = valuation_of(&value, &cfg.p_big());
        let mantissa = value / cfg.p_pow(shift);
        Ok(Self::from_parts(cfg, valuation + shift as i64, mantissa, cfg.k))
    }

    /// Valuation v with |x|_p = p^{-v}; None for zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::NonZero { valuation, .. } => Some(*valuation),
        }
    }

    /// Exponent e with |x|_p = p^e; None for zero.
    pub fn norm_exp(&self) -> Option<i64> {
        self.valuation().map(|v| -v)
    }

    /// |x|_p as a float (exact for moderate exponents).
    pub fn norm(&self) -> f64 {
        match self.norm_exp() {
            None => 0.0,
            Some(e) => (self.cfg.p as f64).powi(e as i32),
        }
    }

    /// The K digits of the unit part, least index first; all zeros for zero.
    pub fn digits(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.cfg.k as usize];
        if let Repr::NonZero { mantissa, .. } = &self.repr {
            let mut m = mantissa.clone();
            let p = self.cfg.p_big();
            for slot in out.iter_mut() {
                *slot = (&m % &p).to_u64().unwrap();
                m /= &p;
            }
        }
        out
    }

    /// Trusted digit count after cancellation tracking.
    pub fn effective_digits(&self) -> u32 {
        match &self.repr {
            Repr::Zero => self.cfg.k,
            Repr::NonZero { effective, .. } => *effective,
        }
    }

    fn check_cfg(&self, other: &Self) -> Result<()> {
        if self.cfg != other.cfg {
            return Err(PadiqError::ConfigMismatch(
                self.cfg.to_string(),
                other.cfg.to_string(),
            ));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::NonZero { valuation, mantissa, effective } => Self::from_parts(
                self.cfg,
                *valuation,
                self.cfg.modulus() - mantissa,
                *effective,
            ),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        let (v1, m1, e1) = match &self.repr {
            Repr::Zero => return Ok(other.clone()),
            Repr::NonZero { valuation, mantissa, effective } => (*valuation, mantissa, *effective),
        };
        let (v2, m2, e2) = match &other.repr {
            Repr::Zero => return Ok(self.clone()),
            Repr::NonZero { valuation, mantissa, effective } => (*valuation, mantissa, *effective),
        };
        let v = v1.min(v2);
        // absolute precision of the sum
        let abs_prec = (v1 + e1 as i64).min(v2 + e2 as i64);
        let avail = (abs_prec - v).max(0) as u32;
        if avail == 0 {
            return Ok(Self::zero(self.cfg));
        }
        let s1 = m1 * self.cfg.p_pow((v1 - v) as u32);
        let s2 = m2 * self.cfg.p_pow((v2 - v) as u32);
        let modulus = self.cfg.p_pow(avail.max(self.cfg.k));
        let raw = (s1 + s2) % &modulus;
        let known = &raw % self.cfg.p_pow(avail);
        if known.is_zero() {
            // cancelled below the precision horizon
            return Ok(Self::zero(self.cfg));
        }
        let t = valuation_of(&known, &self.cfg.p_big());
        let mantissa = (raw / self.cfg.p_pow(t)) % self.cfg.modulus();
        let effective = avail - t;
        Ok(Self::from_parts(self.cfg, v + t as i64, mantissa, effective))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Ok(Self::zero(self.cfg)),
            (
                Repr::NonZero { valuation: v1, mantissa: m1, effective: e1 },
                Repr::NonZero { valuation: v2, mantissa: m2, effective: e2 },
            ) => Ok(Self::from_parts(
                self.cfg,
                v1 + v2,
                (m1 * m2) % self.cfg.modulus(),
                (*e1).min(*e2),
            )),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_cfg(other)?;
        let (v2, m2, e2) = match &other.repr {
            Repr::Zero => return Err(PadiqError::DivisionByZero),
            Repr::NonZero { valuation, mantissa, effective } => (*valuation, mantissa, *effective),
        };
        match &self.repr {
            Repr::Zero => Ok(Self::zero(self.cfg)),
            Repr::NonZero { valuation: v1, mantissa: m1, effective: e1 } => {
                let inv = mod_inverse(m2, &self.cfg.modulus());
                Ok(Self::from_parts(
                    self.cfg,
                    v1 - v2,
                    (m1 * inv) % self.cfg.modulus(),
                    (*e1).min(e2),
                ))
            }
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::from_integer(1, self.cfg);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            n >>= 1;
        }
        acc
    }

    /// Multiply by p^e (exact valuation shift).
    pub fn scale_by_power(&self, e: i64) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::NonZero { valuation, mantissa, effective } => {
                Self::from_parts(self.cfg, valuation + e, mantissa.clone(), *effective)
            }
        }
    }

    /// p-adic distance |x - y|_p.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    /// Exponent e with |x - y|_p = p^e; None when equal at precision.
    pub fn distance_exp(&self, other: &Self) -> Result<Option<i64>> {
        Ok(self.sub(other)?.norm_exp())
    }

    /// Fractional part {x} = sum of digits at negative positions, exact.
    pub fn frac(&self) -> Fraction {
        match &self.repr {
            Repr::Zero => Fraction::zero(self.cfg.p),
            Repr::NonZero { valuation, mantissa, .. } => {
                if *valuation >= 0 {
                    return Fraction::zero(self.cfg.p);
                }
                let e = (-valuation) as u32;
                let num = mantissa % self.cfg.p_pow(e);
                if num.is_zero() {
                    return Fraction::zero(self.cfg.p);
                }
                // strip shared powers of p so the fraction is reduced
                let t = valuation_of(&num, &self.cfg.p_big());
                Fraction {
                    num: num / self.cfg.p_pow(t),
                    den_exp: e - t,
                    p: self.cfg.p,
                }
            }
        }
    }

    /// Additive character e(x) = exp(2 pi i {x}), a complex unit.
    pub fn character(&self) -> Complex64 {
        self.frac().character()
    }

    /// Mantissa as an exact integer (the truncated expansion read literally).
    pub(crate) fn mantissa_big(&self) -> Option<(i64, BigUint)> {
        match &self.repr {
            Repr::Zero => None,
            Repr::NonZero { valuation, mantissa, .. } => Some((*valuation, mantissa.clone())),
        }
    }
}

/// Exact fractional part of `p^shift * a * b`, treating the truncated digit
/// expansions of `a` and `b` as exact finite values. Used for characters of
/// products, where fixed-K truncation of `mul` would lose low digits.
pub fn frac_of_scaled_product(a: &PadicNumber, b: &PadicNumber, shift: i64) -> Fraction {
    let p = a.config().prime();
    let (va, ma) = match a.mantissa_big() {
        None => return Fraction::zero(p),
        Some(x) => x,
    };
    let (vb, mb) = match b.mantissa_big() {
        None => return Fraction::zero(p),
        Some(x) => x,
    };
    let v = va + vb + shift;
    if v >= 0 {
        return Fraction::zero(p);
    }
    let e = (-v) as u32;
    let pe = BigUint::from(p).pow(e);
    let num = (ma * mb) % &pe;
    if num.is_zero() {
        return Fraction::zero(p);
    }
    let t = valuation_of(&num, &BigUint::from(p));
    Fraction { num: num / BigUint::from(p).pow(t), den_exp: e - t, p }
}

impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.cfg != other.cfg {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Zero, Repr::Zero) => true,
            (
                Repr::NonZero { valuation: v1, mantissa: m1, effective: e1 },
                Repr::NonZero { valuation: v2, mantissa: m2, effective: e2 },
            ) => {
                if v1 != v2 {
                    return false;
                }
                let e = (*e1).min(*e2);
                let modulus = self.cfg.p_pow(e);
                m1 % &modulus == m2 % &modulus
            }
            _ => false,
        }
    }
}

impl fmt::Display for PadicNumber {
    /// Textual encoding `p^v * (d0 d1 ...)_p`; zero prints as `0_p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0_{}", self.cfg.p),
            Repr::NonZero { valuation, .. } => {
                let digits: Vec<String> =
                    self.digits().iter().map(|d| d.to_string()).collect();
                write!(
                    f,
                    "{}^{} * ({})_{}",
                    self.cfg.p,
                    valuation,
                    digits.join(" "),
                    self.cfg.p
                )
            }
        }
    }
}

/// Parse the textual encoding produced by `Display`.
pub fn parse_padic(s: &str) -> Result<PadicNumber> {
    let s = s.trim();
    if let Some((zero, p)) = s.split_once('_') {
        if zero == "0" {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| PadiqError::Parse(format!("bad base in `{s}`")))?;
            let cfg = BaseConfig::new(p, 1)?;
            return Ok(PadicNumber::zero(cfg));
        }
    }
    let (head, rest) = s
        .split_once('*')
        .ok_or_else(|| PadiqError::Parse(format!("expected `p^v * (...)_p` in `{s}`")))?;
    let (p_str, v_str) = head
        .trim()
        .split_once('^')
        .ok_or_else(|| PadiqError::Parse(format!("expected `p^v` in `{s}`")))?;
    let p: u64 = p_str
        .trim()
        .parse()
        .map_err(|_| PadiqError::Parse(format!("bad base `{p_str}`")))?;
    let v: i64 = v_str
        .trim()
        .parse()
        .map_err(|_| PadiqError::Parse(format!("bad valuation `{v_str}`")))?;
    let rest = rest.trim();
    let open = rest
        .find('(')
        .ok_or_else(|| PadiqError::Parse(format!("missing `(` in `{s}`")))?;
    let close = rest
        .rfind(')')
        .ok_or_else(|| PadiqError::Parse(format!("missing `)` in `{s}`")))?;
    let digits: Vec<u64> = rest[open + 1..close]
        .split_whitespace()
        .map(|d| {
            d.parse::<u64>()
                .map_err(|_| PadiqError::Parse(format!("bad digit `{d}`")))
        })
        .collect::<Result<_>>()?;
    if digits.is_empty() {
        return Err(PadiqError::Parse(format!("no digits in `{s}`")));
    }
    let suffix = rest[close + 1..].trim();
    let p2: u64 = suffix
        .strip_prefix('_')
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| PadiqError::Parse(format!("missing `_p` suffix in `{s}`")))?;
    if p2 != p {
        return Err(PadiqError::Parse(format!("base mismatch {p} vs {p2}")));
    }
    let cfg = BaseConfig::new(p, digits.len() as u32)?;
    PadicNumber::from_digits(cfg, v, &digits)
}

/// A p-adic ball with radius an exact power of p.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: PadicNumber,
    /// radius = p^radius_exp
    pub radius_exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallRelation {
    Disjoint,
    FirstInSecond,
    SecondInFirst,
    Equal,
}

impl Ball {
    pub fn new(center: PadicNumber, radius_exp: i64) -> Self {
        Ball { center, radius_exp }
    }

    pub fn contains(&self, x: &PadicNumber) -> Result<bool> {
        Ok(match self.center.distance_exp(x)? {
            None => true,
            Some(e) => e <= self.radius_exp,
        })
    }

    /// Ultrametric dichotomy: intersecting balls nest, partial overlap
    /// cannot occur.
    pub fn relation(&self, other: &Ball) -> Result<BallRelation> {
        let d = self.center.distance_exp(&other.center)?;
        let within = |r: i64| match d {
            None => true,
            Some(e) => e <= r,
        };
        Ok(if self.radius_exp == other.radius_exp {
            if within(self.radius_exp) {
                BallRelation::Equal
            } else {
                BallRelation::Disjoint
            }
        } else if self.radius_exp < other.radius_exp {
            if within(other.radius_exp) {
                BallRelation::FirstInSecond
            } else {
                BallRelation::Disjoint
            }
        } else if within(self.radius_exp) {
            BallRelation::SecondInFirst
        } else {
            BallRelation::Disjoint
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn cfg(p: u64, k: u32) -> BaseConfig {
        BaseConfig::new(p, k).unwrap()
    }

    #[test]
    fn rejects_composite_base() {
        assert!(BaseConfig::new(4, 8).is_err());
        assert!(BaseConfig::new(1, 8).is_err());
        assert!(BaseConfig::new(1999, 8).is_ok());
    }

    #[test]
    fn encode_twelve_base_two() {
        let x = PadicNumber::from_integer(12, cfg(2, 8));
        assert_eq!(x.valuation(), Some(2));
        let d = x.digits();
        assert_eq!(&d[..3], &[1, 1, 0]);
        assert_eq!(x.norm(), 0.25);
    }

    #[test]
    fn encode_zero() {
        let z = PadicNumber::from_integer(0, cfg(3, 5));
        assert!(z.is_zero());
        assert_eq!(z.norm(), 0.0);
    }

    #[test]
    fn encode_one_third_base_two() {
        // 3 * x == 1 mod 2^4 must hold for the encoded digits
        let x = PadicNumber::from_ratio(1, 3, cfg(2, 4)).unwrap();
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.digits(), vec![1, 1, 0, 1]);
        let (_, m) = x.mantissa_big().unwrap();
        assert_eq!((m * 3u32) % BigUint::from(16u32), BigUint::from(1u32));
        assert_eq!(x.norm(), 1.0);
    }

    #[test]
    fn denominator_divisible_by_p_rejected() {
        assert!(PadicNumber::from_ratio(1, 6, cfg(2, 4)).is_err());
        assert!(PadicNumber::from_ratio(1, 6, cfg(5, 4)).is_ok());
    }

    #[test]
    fn subtraction_cancels_to_zero() {
        let c = cfg(5, 6);
        for n in [1i64, 7, -12, 125, 624] {
            let x = PadicNumber::from_integer(n, c);
            assert!(x.sub(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn three_times_third_is_one() {
        let c = cfg(2, 16);
        let third = PadicNumber::from_ratio(1, 3, c).unwrap();
        let three = PadicNumber::from_integer(3, c);
        let one = PadicNumber::from_integer(1, c);
        assert_eq!(three.mul(&third).unwrap(), one);
    }

    #[test]
    fn division_by_zero_rejected() {
        let c = cfg(3, 4);
        let x = PadicNumber::from_integer(5, c);
        assert!(x.div(&PadicNumber::zero(c)).is_err());
    }

    #[test]
    fn partial_cancellation_tracks_precision() {
        let c = cfg(2, 8);
        // 1 + 7 = 8: three digits cancel
        let a = PadicNumber::from_integer(1, c);
        let b = PadicNumber::from_integer(7, c);
        let s = a.add(&b).unwrap();
        assert_eq!(s.valuation(), Some(3));
        assert_eq!(s.effective_digits(), 8 - 3);
    }

    #[test]
    fn frac_of_integer_is_zero() {
        let x = PadicNumber::from_integer(5, cfg(3, 6));
        assert!(x.frac().is_zero());
    }

    #[test]
    fn frac_of_negative_valuation() {
        // v = -2, digits a=1, b=1 (p=2): {x} = 1/4 + 1/2 = 3/4
        let c = cfg(2, 6);
        let x = PadicNumber::from_digits(c, -2, &[1, 1, 0, 0, 0, 0]).unwrap();
        let f = x.frac();
        assert_eq!(f.num, BigUint::from(3u32));
        assert_eq!(f.den_exp, 2);
        assert_eq!(f.to_f64(), 0.75);
    }

    #[test]
    fn frac_invariant_under_integer_shift() {
        let c = cfg(3, 8);
        let x = PadicNumber::from_digits(c, -2, &[2, 1, 1, 0, 0, 0, 0, 0]).unwrap();
        let z = PadicNumber::from_integer(47, c);
        let y = x.add(&z).unwrap();
        assert_eq!(x.frac(), y.frac());
    }

    #[test]
    fn character_of_half_is_minus_one() {
        let c = cfg(2, 4);
        let x = PadicNumber::from_digits(c, -1, &[1, 0, 0, 0]).unwrap();
        let ch = x.character();
        assert!((ch.re + 1.0).abs() < 1e-14 && ch.im.abs() < 1e-14);
    }

    #[test]
    fn character_of_integer_is_one() {
        let x = PadicNumber::from_integer(9, cfg(2, 4));
        assert_eq!(x.character(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn distance_counts_common_root() {
        // agree on digits 0..2, differ at digit 3 => distance 1/p^3
        let c = cfg(3, 6);
        let x = PadicNumber::from_digits(c, 0, &[1, 2, 0, 1, 0, 0]).unwrap();
        let y = PadicNumber::from_digits(c, 0, &[1, 2, 0, 2, 1, 0]).unwrap();
        assert_eq!(x.distance_exp(&y).unwrap(), Some(-3));
    }

    #[test]
    fn display_parse_round_trip() {
        let c = cfg(5, 5);
        for (a, b) in [(12, 1), (3, 4), (-7, 1), (250, 9)] {
            let x = PadicNumber::from_ratio(a, b, c).unwrap();
            let text = x.to_string();
            let back = parse_padic(&text).unwrap();
            assert_eq!(back.to_string(), text);
        }
        let z = PadicNumber::zero(c);
        assert_eq!(parse_padic(&z.to_string()).unwrap().is_zero(), true);
    }

    #[test]
    fn ball_nesting_at_shared_center() {
        let c = cfg(3, 4);
        let zero = PadicNumber::zero(c);
        let small = Ball::new(zero.clone(), -1);
        let big = Ball::new(zero.clone(), 0);
        assert_eq!(small.relation(&big).unwrap(), BallRelation::FirstInSecond);
        let shifted = Ball::new(PadicNumber::from_integer(1, c), -1);
        assert_eq!(small.relation(&shifted).unwrap(), BallRelation::Disjoint);
    }

    #[test]
    fn no_partial_overlap_exhaustive() {
        // every ball pair at depth <= 3 nests or is disjoint, checked by
        // brute-force membership over all depth-3 integer points
        for p in [2u64, 3] {
            let c = cfg(p, 4);
            let points: Vec<PadicNumber> = (0..p.pow(3))
                .map(|n| PadicNumber::from_integer(n as i64, c))
                .collect();
            let mut balls = Vec::new();
            for r in [0i64, -1, -2, -3] {
                for pt in &points {
                    balls.push(Ball::new(pt.clone(), r));
                }
            }
            for b1 in &balls {
                for b2 in &balls {
                    let members = |b: &Ball| -> Vec<bool> {
                        points.iter().map(|q| b.contains(q).unwrap()).collect()
                    };
                    let m1 = members(b1);
                    let m2 = members(b2);
                    let both = m1.iter().zip(&m2).any(|(a, b)| *a && *b);
                    let only1 = m1.iter().zip(&m2).any(|(a, b)| *a && !*b);
                    let only2 = m1.iter().zip(&m2).any(|(a, b)| !*a && *b);
                    let rel = b1.relation(b2).unwrap();
                    match rel {
                        BallRelation::Disjoint => assert!(!both),
                        BallRelation::Equal => assert!(!only1 && !only2),
                        BallRelation::FirstInSecond => assert!(!only1 && both),
                        BallRelation::SecondInFirst => assert!(!only2 && both),
                    }
                }
            }
        }
    }

    #[test]
    fn mental_space_counts() {
        // |Z_p / p^L Z_p| = p^L, as exact big integers
        let n = BigInt::from(2).pow(5);
        assert_eq!(n, BigInt::from(32));
    }
}
