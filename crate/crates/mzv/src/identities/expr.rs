use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::{Flavor, IdentityError, Mode, Partition, WeightMap};
use crate::regular::{zeta_sh, zeta_star, SymbolicReal};
use crate::symgroup::{permute_index, GroupRingElement};
use crate::words::{FormalSum, Index};
use crate::Rational;

/// A real-valued function on `N^n` assembled from regularized MZVs.
#[derive(Debug, Clone, PartialEq)]
pub enum FnExpr {
    /// `ζ⋄_n`.
    Zeta(Mode, usize),
    /// `ζ_1 ∘ W_n`: the plain zeta value of the weight, with `ζ(1) = 0`.
    Plain(usize),
    /// A characteristic function of `n` variables.
    Char(Flavor, usize),
    /// `ζ⋄-(Π)`.
    PartZeta(Mode, Partition),
    /// `f_1 ⊗ … ⊗ f_j`.
    Tensor(Vec<FnExpr>),
    /// Pointwise product of functions of the same arity.
    Prod(Vec<FnExpr>),
    /// `f ∘ W`.
    Compose(Box<FnExpr>, WeightMap),
    /// `f | Γ`.
    Act(Box<FnExpr>, GroupRingElement),
    /// `Σ q_k f_k`.
    Lin(Vec<(Rational, FnExpr)>),
}

/// Where the values of an [`FnExpr`] live.
pub trait Backend {
    type Value: Clone;
    fn zero(&self) -> Self::Value;
    fn constant(&self, q: &Rational) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, a: &Self::Value, q: &Rational) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, IdentityError>;
    /// `ζ⋄(l)`.
    fn zeta(&self, mode: Mode, l: &[u32]) -> Result<Self::Value, IdentityError>;
    /// `ζ(w)` for a single weight, `ζ(1) = 0`.
    fn plain(&self, w: u32) -> Result<Self::Value, IdentityError>;
}

/// Values are constant terms of the regularized polynomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymbolicBackend;

impl Backend for SymbolicBackend {
    type Value = SymbolicReal;

    fn zero(&self) -> SymbolicReal {
        SymbolicReal::zero()
    }

    fn constant(&self, q: &Rational) -> SymbolicReal {
        SymbolicReal::constant(q.clone())
    }

    fn add(&self, a: &SymbolicReal, b: &SymbolicReal) -> SymbolicReal {
        a.add(b)
    }

    fn scale(&self, a: &SymbolicReal, q: &Rational) -> SymbolicReal {
        a.scale(q)
    }

    fn mul(&self, a: &SymbolicReal, b: &SymbolicReal) -> Result<SymbolicReal, IdentityError> {
        Ok(a.mul(b))
    }

    fn zeta(&self, mode: Mode, l: &[u32]) -> Result<SymbolicReal, IdentityError> {
        let i = Index::new(l.to_vec())?;
        Ok(match mode {
            Mode::Star => zeta_star(&i),
            Mode::Sh => zeta_sh(&i),
        })
    }

    fn plain(&self, w: u32) -> Result<SymbolicReal, IdentityError> {
        Ok(SymbolicReal::zeta(&[w])?)
    }
}

/// Values are elements of `H^1`: `ζ*(l) ↦ z_l`, products are harmonic products.
#[derive(Debug, Clone, Copy, Default)]
pub struct WordBackend;

impl Backend for WordBackend {
    type Value = FormalSum;

    fn zero(&self) -> FormalSum {
        FormalSum::zero()
    }

    fn constant(&self, q: &Rational) -> FormalSum {
        FormalSum::one().scale(q)
    }

    fn add(&self, a: &FormalSum, b: &FormalSum) -> FormalSum {
        a.add(b)
    }

    fn scale(&self, a: &FormalSum, q: &Rational) -> FormalSum {
        a.scale(q)
    }

    fn mul(&self, a: &FormalSum, b: &FormalSum) -> Result<FormalSum, IdentityError> {
        Ok(a.harmonic(b)?)
    }

    fn zeta(&self, mode: Mode, l: &[u32]) -> Result<FormalSum, IdentityError> {
        match mode {
            Mode::Star => Ok(FormalSum::from_parts(l)),
            Mode::Sh => Err(IdentityError::MethodModeMismatch { method: "word_exact".into(), mode: "sh".into() }),
        }
    }

    /// `ζ(1) ↦ z_1`, which regularizes to `T` and so vanishes in every constant term
    /// where it occurs as a factor.
    fn plain(&self, w: u32) -> Result<FormalSum, IdentityError> {
        Ok(FormalSum::from_parts(&[w]))
    }
}

impl FnExpr {
    pub fn zeta(mode: Mode, n: usize) -> FnExpr {
        FnExpr::Zeta(mode, n)
    }

    /// `ζ⋄_1^{⊗m}`-style tensor powers and general tensors.
    pub fn tensor(parts: Vec<FnExpr>) -> FnExpr {
        FnExpr::Tensor(parts)
    }

    /// `(ζ⋄_1)^{⊗m}`.
    pub fn ones(mode: Mode, m: usize) -> FnExpr {
        FnExpr::Tensor(vec![FnExpr::Zeta(mode, 1); m])
    }

    /// `δ · ζ_1 ∘ W_n`.
    pub fn char_weight(flavor: Flavor, n: usize) -> FnExpr {
        FnExpr::Prod(vec![FnExpr::Char(flavor, n), FnExpr::Plain(n)])
    }

    pub fn act(self, g: GroupRingElement) -> FnExpr {
        FnExpr::Act(Box::new(self), g)
    }

    pub fn compose(self, w: WeightMap) -> FnExpr {
        FnExpr::Compose(Box::new(self), w)
    }

    pub fn scaled(self, q: Rational) -> FnExpr {
        FnExpr::Lin(vec![(q, self)])
    }

    pub fn times(self, k: i64) -> FnExpr {
        self.scaled(Rational::from_integer(k.into()))
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        match self {
            FnExpr::Zeta(_, n) | FnExpr::Plain(n) | FnExpr::Char(_, n) => *n,
            FnExpr::PartZeta(_, p) => p.size(),
            FnExpr::Tensor(fs) => fs.iter().map(FnExpr::arity).sum(),
            FnExpr::Prod(fs) => fs.first().map_or(0, FnExpr::arity),
            FnExpr::Compose(_, w) => w.source_depth(),
            FnExpr::Act(_, g) => g.degree(),
            FnExpr::Lin(ts) => ts.first().map_or(0, |(_, f)| f.arity()),
        }
    }

    pub fn eval<B: Backend>(&self, l: &[u32], b: &B) -> Result<B::Value, IdentityError> {
        match self {
            FnExpr::Zeta(mode, _) => b.zeta(*mode, l),
            FnExpr::Plain(_) => b.plain(l.iter().sum()),
            FnExpr::Char(flavor, _) => Ok(if flavor.holds(l) { b.constant(&Rational::one()) } else { b.zero() }),
            FnExpr::PartZeta(mode, p) => {
                let mut acc = b.constant(&Rational::one());
                for block in p.blocks() {
                    if *mode == Mode::Sh && !Flavor::Subset(block.clone()).holds(l) {
                        return Ok(b.zero());
                    }
                    let w: u32 = block.iter().map(|&i| l[i - 1]).sum();
                    acc = b.mul(&acc, &b.plain(w)?)?;
                }
                Ok(acc)
            }
            FnExpr::Tensor(fs) => {
                let mut acc = b.constant(&Rational::one());
                let mut at = 0;
                for f in fs {
                    let k = f.arity();
                    acc = b.mul(&acc, &f.eval(&l[at..at + k], b)?)?;
                    at += k;
                }
                Ok(acc)
            }
            FnExpr::Prod(fs) => {
                let mut acc = b.constant(&Rational::one());
                for f in fs {
                    if let FnExpr::Char(flavor, _) = f {
                        if !flavor.holds(l) {
                            return Ok(b.zero());
                        }
                        continue;
                    }
                    acc = b.mul(&acc, &f.eval(l, b)?)?;
                }
                Ok(acc)
            }
            FnExpr::Compose(f, w) => f.eval(&w.apply(l), b),
            FnExpr::Act(f, g) => {
                let mut acc = b.zero();
                for (sigma, c) in g.terms() {
                    let v = f.eval(&permute_index(l, sigma)?, b)?;
                    acc = b.add(&acc, &b.scale(&v, &Rational::from_integer((*c).into())));
                }
                Ok(acc)
            }
            FnExpr::Lin(ts) => {
                let mut acc = b.zero();
                for (q, f) in ts {
                    if q.is_zero() {
                        continue;
                    }
                    acc = b.add(&acc, &b.scale(&f.eval(l, b)?, q));
                }
                Ok(acc)
            }
        }
    }

    fn into_terms(self) -> Vec<(Rational, FnExpr)> {
        match self {
            FnExpr::Lin(ts) => ts,
            f => vec![(Rational::one(), f)],
        }
    }
}

impl Add for FnExpr {
    type Output = FnExpr;
    fn add(self, rhs: FnExpr) -> FnExpr {
        let mut ts = self.into_terms();
        ts.extend(rhs.into_terms());
        FnExpr::Lin(ts)
    }
}

impl Neg for FnExpr {
    type Output = FnExpr;
    fn neg(self) -> FnExpr {
        FnExpr::Lin(self.into_terms().into_iter().map(|(q, f)| (-q, f)).collect())
    }
}

impl Sub for FnExpr {
    type Output = FnExpr;
    fn sub(self, rhs: FnExpr) -> FnExpr {
        self + (-rhs)
    }
}
