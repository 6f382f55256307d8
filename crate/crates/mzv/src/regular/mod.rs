//! Symbolic reals over convergent MZV symbols, polynomials in `T`, the harmonic
//! and shuffle regularizations, the renormalization map `ρ`, and exact
//! equality testing.

mod regularize;
pub mod relations;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{join_signed, Scalar};
use crate::words::{harmonic_parts, join_parts, Index, WordError};
use crate::Rational;

pub use regularize::{
    check_tpoly_structure, gamma_coefficients, lemma321_constant, rho_apply, shuffle_regularize, star_regularize,
    zeta_sh, zeta_star, GammaTable, Regularizer, TPolyStructure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("index ({0}) is divergent and has no MZV symbol")]
    DivergentSymbol(String),
    #[error("depth {0} is not supported (at most 4)")]
    DepthUnsupported(usize),
    #[error("degree {0} is not supported (at most 4)")]
    DegreeUnsupported(usize),
    #[error("peeling did not reduce the number of leading divergent letters for ({0})")]
    PeelingStalled(String),
}

/// A product of convergent MZV symbols; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MzvMonomial {
    factors: Vec<Index>,
}

impl MzvMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(i: Index) -> Result<Self, RegularError> {
        if !i.is_convergent() {
            return Err(RegularError::DivergentSymbol(i.to_string()));
        }
        Ok(MzvMonomial { factors: vec![i] })
    }

    pub fn factors(&self) -> &[Index] {
        &self.factors
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(Index::weight).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        factors.sort_by(factor_order);
        MzvMonomial { factors }
    }
}

fn factor_order(a: &Index, b: &Index) -> Ordering {
    (a.weight(), a.depth(), a.parts()).cmp(&(b.weight(), b.depth(), b.parts()))
}

impl Ord for MzvMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.factors.len().cmp(&self.factors.len()))
            .then_with(|| {
                let key = |m: &MzvMonomial| m.factors.iter().map(|i| (i.depth(), i.parts().to_vec())).collect::<Vec<_>>();
                key(self).cmp(&key(other))
            })
    }
}

impl PartialOrd for MzvMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize]).collect()
}

impl fmt::Display for MzvMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            let base = format!("ζ({})", join_parts(self.factors[i].parts()));
            pieces.push(if j - i > 1 { format!("{base}{}", superscript(j - i)) } else { base });
            i = j;
        }
        f.write_str(&pieces.join("·"))
    }
}

/// A finite combination `Σ c·(product of convergent MZVs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicReal<C: Scalar = Rational> {
    terms: BTreeMap<MzvMonomial, C>,
}

impl<C: Scalar> Default for SymbolicReal<C> {
    fn default() -> Self {
        SymbolicReal { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> SymbolicReal<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(MzvMonomial::one(), c)
    }

    pub fn term(m: MzvMonomial, c: C) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    /// `ζ(parts)` for a convergent index; `ζ(1)` is the rational `0`.
    pub fn zeta(parts: &[u32]) -> Result<Self, RegularError> {
        if parts == [1] {
            return Ok(Self::zero());
        }
        let i = Index::new(parts.to_vec())?;
        Ok(Self::term(MzvMonomial::symbol(i)?, C::one()))
    }

    pub fn add_term(&mut self, m: MzvMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&m).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MzvMonomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, if there are no symbols.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&MzvMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }

    /// Replaces every product of symbols by the harmonic expansion of its factor
    /// words, combining factors left to right in canonical order.
    pub fn stuffle_normalize(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.factors.len() <= 1 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::from([(m.factors[0].parts().to_vec(), 1)]);
            for f in &m.factors[1..] {
                let mut next = BTreeMap::new();
                for (w, n) in &acc {
                    for (v, k) in harmonic_parts(w, f.parts()).iter() {
                        *next.entry(v.clone()).or_insert(0u64) += n * k;
                    }
                }
                acc = next;
            }
            for (w, n) in acc {
                let sym = MzvMonomial { factors: vec![Index::new(w).expect("nonempty product word")] };
                out.add_term(sym, c.clone() * C::from_i64(n as i64));
            }
        }
        out
    }

    /// Splits into weight-homogeneous components.
    pub fn by_weight(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Every symbol occurring in the expression.
    pub fn symbols(&self) -> Vec<Index> {
        let mut v: Vec<Index> = self.terms.keys().flat_map(|m| m.factors.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl<C: Scalar> fmt::Display for SymbolicReal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(self.terms.iter().map(|(m, c)| (c.clone(), m.to_string()))))
    }
}

pub fn stuffle_normalize<C: Scalar>(s: &SymbolicReal<C>) -> SymbolicReal<C> {
    s.stuffle_normalize()
}

/// A polynomial in `T` with symbolic-real coefficients; `coeffs[k]` multiplies `T^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TPoly<C: Scalar = Rational> {
    coeffs: Vec<SymbolicReal<C>>,
}

impl<C: Scalar> Default for TPoly<C> {
    fn default() -> Self {
        TPoly { coeffs: Vec::new() }
    }
}

impl<C: Scalar> TPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(s: SymbolicReal<C>) -> Self {
        Self::from_coeffs(vec![s])
    }

    /// `T^k`.
    pub fn t_pow(k: usize) -> Self {
        let mut coeffs = vec![SymbolicReal::zero(); k];
        coeffs.push(SymbolicReal::one());
        TPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<SymbolicReal<C>>) -> Self {
        while coeffs.last().is_some_and(SymbolicReal::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[SymbolicReal<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> SymbolicReal<C> {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> SymbolicReal<C> {
        self.coeff(0)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![SymbolicReal::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_assign(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by `T`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![SymbolicReal::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        TPoly { coeffs }
    }

    /// Applies [`SymbolicReal::stuffle_normalize`] to every coefficient.
    pub fn stuffle_normalize(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(SymbolicReal::stuffle_normalize).collect())
    }
}

impl<C: Scalar> fmt::Display for TPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let t = match k {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T{}", superscript(k)),
            };
            if k == 0 {
                terms.extend(c.terms.iter().map(|(m, q)| (q.clone(), m.to_string())));
            } else if let Some(q) = c.as_constant() {
                terms.push((q, t));
            } else if c.len() == 1 {
                let (m, q) = c.terms.iter().next().expect("one term");
                terms.push((q.clone(), format!("{m}·{t}")));
            } else {
                terms.push((C::one(), format!("({c})·{t}")));
            }
        }
        f.write_str(&join_signed(terms))
    }
}

/// How an exact comparison closed.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome {
    /// The stuffle-normalized difference is the zero map.
    Formal,
    /// The difference lies in the span of the double-shuffle relations.
    DoubleShuffle,
    /// Neither; carries the reduced residual.
    Open(SymbolicReal<Rational>),
}

/// Decides whether `diff` vanishes exactly: first after stuffle normalization,
/// then modulo the finite double-shuffle and Hoffman relations.
pub fn exact_zero(diff: &SymbolicReal<Rational>) -> ExactOutcome {
    let normal = diff.stuffle_normalize();
    if normal.is_zero() {
        return ExactOutcome::Formal;
    }
    match relations::reduce(&normal) {
        Some(r) if r.is_zero() => ExactOutcome::DoubleShuffle,
        Some(r) => ExactOutcome::Open(r),
        None => ExactOutcome::Open(normal),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn z(p: &[u32]) -> SymbolicReal {
        SymbolicReal::zeta(p).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn stuffle_normalize_examples() {
        let s = z(&[2]).mul(&z(&[2])).stuffle_normalize();
        assert_eq!(s, z(&[2, 2]).scale(&q(2, 1)).add(&z(&[4])));
        let t = z(&[2]).mul(&z(&[3])).stuffle_normalize();
        assert_eq!(t, z(&[2, 3]).add(&z(&[3, 2])).add(&z(&[5])));
        assert_eq!(z(&[2, 1]).stuffle_normalize(), z(&[2, 1]));
    }

    #[test]
    fn zeta_one_is_zero_and_divergent_symbols_rejected() {
        assert!(z(&[1]).is_zero());
        assert!(SymbolicReal::<Rational>::zeta(&[1, 2]).is_err());
    }

    #[test]
    fn display_forms() {
        let s = z(&[2]).mul(&z(&[2])).scale(&q(-1, 2)).add(&SymbolicReal::constant(q(3, 1)));
        assert_eq!(s.to_string(), "3 − ½ζ(2)²");
        let p = TPoly::from_coeffs(vec![z(&[2]).scale(&q(-1, 2)), SymbolicReal::zero(), SymbolicReal::constant(q(1, 2))]);
        assert_eq!(p.to_string(), "½T² − ½ζ(2)");
        assert_eq!(TPoly::<Rational>::t_pow(1).to_string(), "T");
    }

    #[test]
    fn tpoly_arithmetic() {
        let t = TPoly::<Rational>::t_pow(1);
        let a = t.add(&TPoly::constant(z(&[2])));
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(2), SymbolicReal::one());
        assert_eq!(sq.coeff(1), z(&[2]).scale(&q(2, 1)));
        assert_eq!(sq.degree(), Some(2));
        assert!(a.sub(&a).is_zero());
        assert_eq!(t.shift(), TPoly::t_pow(2));
        assert!(Rational::one().is_one());
    }

    #[test]
    fn exact_zero_paths() {
        assert_eq!(exact_zero(&z(&[2, 1]).sub(&z(&[2, 1]))), ExactOutcome::Formal);
        assert_eq!(exact_zero(&z(&[2, 1]).sub(&z(&[3]))), ExactOutcome::DoubleShuffle);
        assert!(matches!(exact_zero(&z(&[3])), ExactOutcome::Open(_)));
    }
}
