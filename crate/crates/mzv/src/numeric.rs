//! High-precision evaluation of convergent MZVs.
//!
//! The main path splits the iterated integral of a word at `t = ½`; the upper
//! half becomes, after `t ↦ 1−t`, the integral of the reversed word with `x`
//! and `y` swapped. Hence
//! `ζ(a_1…a_k) = Σ_j Li(½; τ(a_j…a_1)) · Li(½; a_{j+1}…a_k)`,
//! and every multiple polylogarithm at `½` converges like `2^{-N}`.
//!
//! [`zeta_num_oracle`] is an unrelated direct nested summation in machine
//! floats, used only to cross-check the main path.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::regular::SymbolicReal;
use crate::words::{join_parts, word_from_index, Index, Letter, Word};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("index ({0}) is divergent (first part is 1)")]
    DivergentIndex(String),
    #[error("tolerance must be positive and finite")]
    BadTolerance,
    #[error("expression has non-rational coefficients")]
    InexactCoefficient,
    #[error("cache file: {0}")]
    Cache(String),
}

/// Guard bits carried beyond the requested precision.
pub const GUARD_BITS: u32 = 32;

/// A binary fixed-point number `mantissa · 2^{-bits}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    bits: u32,
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        BigFloat { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        BigFloat { mant: BigInt::one() << bits, bits }
    }

    pub fn from_parts(mant: BigInt, bits: u32) -> Self {
        BigFloat { mant, bits }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    /// Working precision in bits after the binary point.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Rounds a rational to the nearest representable value.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let num = q.numer() << bits;
        let den = q.denom();
        let (quo, rem) = num.div_mod_floor(den);
        let mant = if (rem << 1) >= *den { quo + 1 } else { quo };
        BigFloat { mant, bits }
    }

    /// The least representable value `≥ x`; exact when `x` is dyadic enough.
    pub fn from_f64_ceil(x: f64, bits: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return BigFloat::zero(bits);
        }
        let (m, e, s) = x.integer_decode();
        let mut mant = BigInt::from(m);
        let shift = e as i64 + bits as i64;
        if shift >= 0 {
            mant <<= shift as usize;
        } else {
            let d = BigInt::one() << (-shift) as usize;
            mant = if s > 0 { mant.div_ceil(&d) } else { mant.div_floor(&d) };
        }
        if s < 0 {
            mant = -mant;
        }
        BigFloat { mant, bits }
    }

    /// The same value at a different precision (truncating toward −∞ when narrowing).
    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = if bits >= self.bits {
            &self.mant << (bits - self.bits) as usize
        } else {
            &self.mant >> (self.bits - bits) as usize
        };
        BigFloat { mant, bits }
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits).mant, other.with_bits(bits).mant, bits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, bits) = self.align(other);
        BigFloat { mant: a + b, bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, bits) = self.align(other);
        BigFloat { mant: a - b, bits }
    }

    /// Product, truncated to the wider of the two precisions.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, bits) = self.align(other);
        BigFloat { mant: (a * b) >> bits as usize, bits }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        BigFloat { mant: (&self.mant * q.numer()).div_floor(q.denom()), bits: self.bits }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn le(&self, other: &Self) -> bool {
        let (a, b, _) = self.align(other);
        a <= b
    }

    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits();
        if len <= 1000 && self.bits <= 1000 {
            let drop = len.saturating_sub(64);
            let top = (&self.mant >> drop as usize).to_f64().unwrap_or(0.0);
            return top * 2f64.powi(drop as i32 - self.bits as i32);
        }
        let drop = len.saturating_sub(64) as i64;
        let top = (&self.mant >> drop as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powf((drop - self.bits as i64) as f64)
    }

    /// Decimal expansion with `digits` digits after the point (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = (self.mant.abs() * BigInt::from(10u32).pow(digits as u32)) >> self.bits as usize;
        let s = scaled.to_string();
        let s = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// Hexadecimal form `±0x<mantissa>p-<bits>`.
    pub fn to_hex(&self) -> String {
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}0x{}p-{}", self.mant.abs().to_str_radix(16), self.bits)
    }

    pub fn parse_hex(s: &str) -> Option<Self> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let body = body.strip_prefix("0x")?;
        let (m, e) = body.split_once("p-")?;
        let mant = BigInt::parse_bytes(m.as_bytes(), 16)?;
        let bits = e.parse().ok()?;
        Some(BigFloat { mant: if neg { -mant } else { mant }, bits })
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    /// Split-at-½ polylogarithm series.
    SplitHalf,
    /// Direct nested summation with an integral tail bound.
    DirectSum,
    /// Combination of the above over a symbolic expression.
    Symbolic,
    /// Loaded from a cache file; the bound is the recorded precision.
    CacheFile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: BigFloat,
    pub error_bound: BigFloat,
    pub method: EvalMethod,
}

/// Requested precision in bits for an absolute tolerance.
pub fn precision_bits(eps: f64) -> Result<u32, NumericError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(NumericError::BadTolerance);
    }
    Ok((-eps.log2()).ceil().max(1.0) as u32)
}

fn letters_to_parts(letters: &[Letter]) -> Vec<u32> {
    Word::from_letters(letters.to_vec()).parts().expect("H^1 word")
}

/// `log2` of a bound on `Σ_{m>N} m^{n-1} 2^{-m}`.
fn log2_tail(n: usize, big_n: u64) -> f64 {
    let m0 = (big_n + 1) as f64;
    let k = (n - 1) as f64;
    let ratio = 0.5 * (1.0 + 1.0 / m0).powf(k);
    if ratio >= 0.9 {
        return f64::INFINITY;
    }
    k * m0.log2() - m0 - (1.0 - ratio).log2()
}

/// Truncation point for a depth-`n` series at argument ½ with tail below `2^{-target}`.
fn truncation(n: usize, target: f64) -> u64 {
    let mut lo = 1u64;
    while log2_tail(n, lo) > -target {
        lo *= 2;
    }
    let mut hi = lo;
    lo /= 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if log2_tail(n, mid) > -target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Bound, in units of the last place, on the rounding error of [`polylog_half`].
fn rounding_ulps(n: usize, big_n: u64) -> f64 {
    let h: f64 = (1..=big_n).map(|m| 1.0 / m as f64).sum();
    let mut e = 0.0;
    for _ in 1..n {
        e = e * h + big_n as f64;
    }
    e + 2.0 * big_n as f64 + 2.0
}

/// `Li_{s_1,…,s_n}(½) = Σ_{m_1>…>m_n≥1} 2^{-m_1} / Π m_i^{s_i}`, truncated at `m_1 ≤ N`.
fn polylog_half(s: &[u32], big_n: u64, bits: u32) -> BigInt {
    let n = s.len();
    let one = BigInt::one() << bits as usize;
    // prefix[i] holds Σ_{m' < m} of the depth-(i+1) inner sum, i = 1..n-1.
    let mut prefix = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    for m in 1..=big_n {
        let mb = BigInt::from(m);
        let mut fresh = vec![BigInt::zero(); n];
        for i in (1..n).rev() {
            let inner = if i + 1 < n { &prefix[i + 1] } else { &one };
            fresh[i] = inner / mb.pow(s[i]);
        }
        let inner = if n > 1 { &prefix[1] } else { &one };
        total += (inner / mb.pow(s[0])) >> m as usize;
        for i in 1..n {
            let add = std::mem::take(&mut fresh[i]);
            prefix[i] += add;
        }
    }
    total
}

struct SplitPlan {
    bits: u32,
    pieces: Vec<(Vec<u32>, Vec<u32>)>,
    cut: u64,
}

fn plan(i: &Index, target: u32) -> SplitPlan {
    let w = word_from_index(i);
    let letters = w.letters();
    let k = letters.len();
    let mut pieces = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let left = Word::from_letters(letters[..j].to_vec()).dual();
        pieces.push((letters_to_parts(left.letters()), letters_to_parts(&letters[j..])));
    }
    let depth = pieces.iter().map(|(a, b)| a.len().max(b.len())).max().unwrap_or(1).max(1);
    let split_target = target as f64 + 4.0 + ((k + 1) as f64).log2();
    let cut = truncation(depth, split_target);
    let ulps = rounding_ulps(depth, cut);
    let bits = target + GUARD_BITS + (ulps.log2().ceil().max(0.0) as u32) + 4;
    SplitPlan { bits, pieces, cut }
}

fn zeta_split(i: &Index, target: u32) -> EvalReport {
    let SplitPlan { bits, pieces, cut } = plan(i, target);
    let mut memo: HashMap<Vec<u32>, BigInt> = HashMap::new();
    let mut series = |p: &Vec<u32>| -> BigInt {
        if p.is_empty() {
            return BigInt::one() << bits as usize;
        }
        memo.entry(p.clone()).or_insert_with(|| polylog_half(p, cut, bits)).clone()
    };
    let mut acc = BigInt::zero();
    for (left, right) in &pieces {
        acc += (series(left) * series(right)) >> bits as usize;
    }
    let depth = pieces.iter().map(|(a, b)| a.len().max(b.len())).max().unwrap_or(1).max(1);
    let per_series = 2f64.powf(log2_tail(depth, cut)) + rounding_ulps(depth, cut) * 2f64.powi(-(bits as i32));
    // Each factor lies in [0, 1]; a product of two perturbed factors errs by at most e1 + e2 + e1·e2.
    let per_piece = 2.0 * per_series + per_series * per_series + 2f64.powi(-(bits as i32));
    let bound = per_piece * pieces.len() as f64 * (1.0 + 1e-9);
    EvalReport {
        value: BigFloat::from_parts(acc, bits),
        error_bound: BigFloat::from_f64_ceil(bound, bits),
        method: EvalMethod::SplitHalf,
    }
}

type CacheMap = HashMap<(Vec<u32>, u32), EvalReport>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `ζ(i)` with `|value − ζ(i)| ≤ error_bound ≤ eps`, memoized by `(index, precision)`.
pub fn zeta_num(i: &Index, eps: f64) -> Result<EvalReport, NumericError> {
    let target = precision_bits(eps)?;
    if !i.is_convergent() {
        return Err(NumericError::DivergentIndex(i.to_string()));
    }
    let key = (i.parts().to_vec(), target);
    if let Some(hit) = cache().read().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let report = zeta_split(i, target);
    cache().write().expect("cache lock").entry(key).or_insert(report.clone());
    Ok(report)
}

/// As [`zeta_num`], bypassing the cache.
pub fn zeta_num_uncached(i: &Index, eps: f64) -> Result<EvalReport, NumericError> {
    let target = precision_bits(eps)?;
    if !i.is_convergent() {
        return Err(NumericError::DivergentIndex(i.to_string()));
    }
    Ok(zeta_split(i, target))
}

/// Writes the in-memory cache as lines `l1,l2,… <hex-float> <precision-bits>`, sorted.
pub fn save_cache(path: &Path) -> io::Result<()> {
    let map = cache().read().expect("cache lock");
    let mut lines: Vec<String> = map
        .iter()
        .filter(|(_, r)| r.method != EvalMethod::CacheFile)
        .map(|((parts, target), r)| format!("{} {} {}", join_parts(parts), r.value.to_hex(), target))
        .collect();
    lines.sort();
    let mut f = fs::File::create(path)?;
    for l in lines {
        writeln!(f, "{l}")?;
    }
    Ok(())
}

/// Loads cache records; the error bound of a loaded value is `2^{-precision}`.
pub fn load_cache(path: &Path) -> Result<usize, NumericError> {
    let f = fs::File::open(path).map_err(|e| NumericError::Cache(e.to_string()))?;
    let mut count = 0;
    let mut map = cache().write().expect("cache lock");
    for line in io::BufReader::new(f).lines() {
        let line = line.map_err(|e| NumericError::Cache(e.to_string()))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let bad = || NumericError::Cache(format!("malformed record `{line}`"));
        if fields.len() != 3 {
            return Err(bad());
        }
        let idx: Index = fields[0].parse().map_err(|_| bad())?;
        let value = BigFloat::parse_hex(fields[1]).ok_or_else(bad)?;
        let target: u32 = fields[2].parse().map_err(|_| bad())?;
        let bound = BigFloat::from_parts(BigInt::one() << (value.bits().saturating_sub(target)) as usize, value.bits());
        map.entry((idx.parts().to_vec(), target))
            .or_insert(EvalReport { value, error_bound: bound, method: EvalMethod::CacheFile });
        count += 1;
    }
    Ok(count)
}

/// Direct nested summation `Σ_{N ≥ m_1 > … > m_n ≥ 1} Π m_i^{-l_i}` in the float type `F`,
/// with a bound on truncation and rounding.
///
/// The tail uses `Σ_{m_1>…>m_n} Π_{i≥2} m_i^{-l_i} ≤ (1 + ln m_1)^{n-1}` and
/// `∫_N^∞ (1+ln t)^k t^{-s} dt = Σ_{i=0}^{k} k!/(k−i)! · (1+ln N)^{k−i} · N^{1−s} / (s−1)^{i+1}`.
pub fn zeta_oracle_float<F: Float + FromPrimitive>(parts: &[u32], big_n: u64) -> (F, F) {
    let n = parts.len();
    let f = |x: f64| F::from_f64(x).expect("representable");
    let mut prefix = vec![F::zero(); n + 1];
    for m in 1..=big_n {
        let mf = f(m as f64);
        // Update innermost first so each level sees m' < m only.
        let mut fresh = vec![F::zero(); n];
        for i in (0..n).rev() {
            let inner = if i + 1 < n { prefix[i + 1] } else { F::one() };
            fresh[i] = inner / mf.powi(parts[i] as i32);
        }
        for i in 0..n {
            prefix[i] = prefix[i] + fresh[i];
        }
    }
    let sum = prefix[0];
    let s = parts[0] as f64;
    let k = n - 1;
    let big = big_n as f64;
    let log_term = 1.0 + big.ln();
    let mut tail = 0.0;
    let mut falling = 1.0;
    for i in 0..=k {
        if i > 0 {
            falling *= (k - i + 1) as f64;
        }
        tail += falling * log_term.powi((k - i) as i32) * big.powf(1.0 - s) / (s - 1.0).powi(i as i32 + 1);
    }
    let rounding = 2.0 * n as f64 * big * F::epsilon().to_f64().unwrap_or(1e-7) * (1.0 + sum.to_f64().unwrap_or(0.0));
    (sum, f(tail + rounding))
}

/// The direct-summation oracle in `f64`.
pub fn zeta_num_oracle(i: &Index, truncation: u64) -> Result<EvalReport, NumericError> {
    if !i.is_convergent() {
        return Err(NumericError::DivergentIndex(i.to_string()));
    }
    let (v, b): (f64, f64) = zeta_oracle_float(i.parts(), truncation.max(3));
    let bits = 80;
    Ok(EvalReport {
        value: BigFloat::from_f64_ceil(v, bits),
        error_bound: BigFloat::from_f64_ceil(b, bits),
        method: EvalMethod::DirectSum,
    })
}

/// Evaluates `Σ q·Π ζ(…)` with total error at most `eps`.
pub fn eval_symbolic(s: &SymbolicReal<Rational>, eps: f64) -> Result<EvalReport, NumericError> {
    let target = precision_bits(eps)?;
    if s.is_zero() {
        return Ok(EvalReport {
            value: BigFloat::zero(target + GUARD_BITS),
            error_bound: BigFloat::zero(target + GUARD_BITS),
            method: EvalMethod::Symbolic,
        });
    }
    // Budget: factors bounded by 2, so a product of r factors each off by e errs by ≤ r·3^{r-1}·e.
    let weight: f64 = s
        .terms()
        .map(|(m, q)| {
            let r = m.factors().len() as i32;
            q.abs().to_f64().unwrap_or(f64::MAX) * r as f64 * 3f64.powi((r - 1).max(0))
        })
        .sum();
    let mut factor_eps = eps / (4.0 * weight.max(1.0));
    loop {
        let bits = precision_bits(factor_eps)? + GUARD_BITS;
        let mut value = BigFloat::zero(bits);
        let mut bound = 0.0f64;
        for (m, q) in s.terms() {
            let mut prod = BigFloat::one(bits);
            let mut hi = 1.0f64;
            let mut mid = 1.0f64;
            for f in m.factors() {
                let r = zeta_num(f, factor_eps)?;
                let v = r.value.with_bits(bits);
                let e = r.error_bound.to_f64();
                hi *= v.to_f64().abs() + e;
                mid *= v.to_f64().abs();
                prod = prod.mul(&v);
            }
            let qf = q.abs().to_f64().unwrap_or(f64::MAX);
            let ulps = (m.factors().len() as f64 + 2.0) * 2f64.powi(-(bits as i32));
            bound += qf * ((hi - mid).max(0.0) + ulps) + ulps;
            value = value.add(&prod.mul_rational(q));
        }
        let bound = bound * (1.0 + 1e-9);
        if bound <= eps {
            return Ok(EvalReport {
                value,
                error_bound: BigFloat::from_f64_ceil(bound, bits),
                method: EvalMethod::Symbolic,
            });
        }
        factor_eps /= 16.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn bigfloat_rational_and_hex_round_trip() {
        let q = Rational::new(1.into(), 3.into());
        let x = BigFloat::from_rational(&q, 64);
        assert!((x.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(BigFloat::parse_hex(&x.to_hex()).unwrap(), x);
        let y = BigFloat::from_f64_ceil(-0.75, 10);
        assert_eq!(y.to_decimal(2), "-0.75");
        assert_eq!(BigFloat::parse_hex(&y.to_hex()).unwrap(), y);
    }

    #[test]
    fn divergent_rejected() {
        assert!(matches!(zeta_num(&idx("1,2"), 1e-10), Err(NumericError::DivergentIndex(_))));
        assert!(zeta_num_oracle(&idx("1"), 100).is_err());
        assert!(zeta_num(&idx("2"), 0.0).is_err());
    }

    #[test]
    fn oracle_bound_instance() {
        let r = zeta_num_oracle(&idx("5"), 100).unwrap();
        assert!(r.error_bound.to_f64() <= 1.0001 * 100f64.powi(-4) / 4.0, "{}", r.error_bound.to_f64());
        let z5 = zeta_num(&idx("5"), 1e-20).unwrap().value.to_f64();
        assert!((r.value.to_f64() - z5).abs() <= r.error_bound.to_f64());
    }

    #[test]
    fn zeta_two_one_equals_zeta_three() {
        let a = zeta_num(&idx("2,1"), 1e-12).unwrap();
        let b = zeta_num(&idx("3"), 1e-12).unwrap();
        assert!(a.value.sub(&b.value).abs().to_f64() <= 2e-12);
    }

    #[test]
    fn symbolic_zero_is_exact() {
        let r = eval_symbolic(&SymbolicReal::zero(), 1e-10).unwrap();
        assert!(r.value.mantissa().is_zero() && r.error_bound.mantissa().is_zero());
    }

    #[test]
    fn float_oracle_is_generic() {
        let (v32, b32): (f32, f32) = zeta_oracle_float(&[2], 1000);
        assert!((v32 as f64 - std::f64::consts::PI.powi(2) / 6.0).abs() <= b32 as f64);
    }

    fn arctan_inv(k: u64, bits: u32) -> BigInt {
        let one = BigInt::one() << (bits as usize);
        let mut power = one / k;
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        while !power.is_zero() {
            let term = &power / (2 * n + 1);
            if n.is_multiple_of(2) { sum += term } else { sum -= term }
            power /= k * k;
            n += 1;
        }
        sum
    }

    fn pi(bits: u32) -> BigFloat {
        let m = arctan_inv(5, bits) * 16 - arctan_inv(239, bits) * 4;
        BigFloat::from_parts(m, bits)
    }

    #[test]
    fn euler_values() {
        let bits = 160;
        let p = pi(bits);
        let p2 = p.mul(&p);
        let z2 = zeta_num(&idx("2"), 1e-20).unwrap();
        let z4 = zeta_num(&idx("4"), 1e-20).unwrap();
        assert!(z2.error_bound.to_f64() <= 1e-20);
        let d2 = z2.value.sub(&p2.mul_rational(&Rational::new(1.into(), 6.into())));
        assert!(d2.abs().to_f64() < 1e-20);
        let d4 = z4.value.sub(&p2.mul(&p2).mul_rational(&Rational::new(1.into(), 90.into())));
        assert!(d4.abs().to_f64() < 1e-20);
        let z2 = zeta_num(&idx("2"), 1e-18).unwrap().value;
        let z4 = zeta_num(&idx("4"), 1e-18).unwrap().value;
        let euler = z2.mul(&z2).sub(&z4.mul_rational(&Rational::new(5.into(), 2.into())));
        assert!(euler.abs().to_f64() <= 1e-15);
    }

    #[test]
    fn symbolic_euler_relation_vanishes() {
        let z2 = SymbolicReal::zeta(&[2]).unwrap();
        let z4 = SymbolicReal::zeta(&[4]).unwrap();
        let e = z2.mul(&z2).sub(&z4.scale(&Rational::new(5.into(), 2.into())));
        let r = eval_symbolic(&e, 1e-20).unwrap();
        assert!(r.value.abs().to_f64() <= 1e-20 && r.error_bound.to_f64() <= 1e-20);
        let half = z2.scale(&Rational::new((-1).into(), 2.into()));
        let r = eval_symbolic(&half, 1e-25).unwrap();
        assert_eq!(r.value.to_decimal(10), "-0.8224670334");
    }

    #[test]
    fn refinement_and_cache_stability() {
        for s in ["3,1", "2,2,1", "4,1,1,1", "2,3"] {
            let i = idx(s);
            let coarse = zeta_num(&i, 1e-12).unwrap();
            let fine = zeta_num(&i, 5e-13).unwrap();
            assert!(coarse.value.sub(&fine.value).abs().le(&coarse.error_bound));
            assert_eq!(zeta_num_uncached(&i, 1e-12).unwrap(), coarse);
            assert_eq!(zeta_num(&i, 1e-12).unwrap(), coarse);
        }
    }

    #[test]
    fn cache_file_round_trip() {
        zeta_num(&idx("3,2"), 1e-15).unwrap();
        let dir = std::env::temp_dir().join(format!("mzv-cache-{}", std::process::id()));
        save_cache(&dir).unwrap();
        let text = fs::read_to_string(&dir).unwrap();
        assert!(text.lines().any(|l| l.starts_with("3,2 ")));
        assert!(load_cache(&dir).unwrap() >= 1);
        fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn oracle_depth_two() {
        let o = zeta_num_oracle(&idx("3,1"), 10_000).unwrap();
        let m = zeta_num(&idx("3,1"), 1e-20).unwrap();
        let gap = o.value.sub(&m.value).abs();
        assert!(gap.le(&o.error_bound.add(&m.error_bound)));
    }
}
