use std::cell::RefCell;
use std::collections::HashMap;

use super::{RegularError, SymbolicReal, TPoly};
use crate::scalar::Scalar;
use crate::words::{harmonic_parts, shuffle_parts, Index, Word};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Product {
    Harmonic,
    Shuffle,
}

/// Memoizing evaluator of the two regularization maps `H^1 → R[T]`.
///
/// Not shareable across threads; each worker keeps its own.
#[derive(Debug, Default)]
pub struct Regularizer<C: Scalar = Rational> {
    star: RefCell<HashMap<Vec<u32>, TPoly<C>>>,
    sh: RefCell<HashMap<Vec<u32>, TPoly<C>>>,
}

impl<C: Scalar> Regularizer<C> {
    pub fn new() -> Self {
        Regularizer { star: RefCell::new(HashMap::new()), sh: RefCell::new(HashMap::new()) }
    }

    /// The harmonic regularization of the word with the given parts.
    pub fn star(&self, parts: &[u32]) -> Result<TPoly<C>, RegularError> {
        self.regularize(parts, Product::Harmonic)
    }

    /// The shuffle regularization of the word with the given parts.
    pub fn shuffle(&self, parts: &[u32]) -> Result<TPoly<C>, RegularError> {
        self.regularize(parts, Product::Shuffle)
    }

    fn regularize(&self, parts: &[u32], kind: Product) -> Result<TPoly<C>, RegularError> {
        if parts.is_empty() {
            return Ok(TPoly::constant(SymbolicReal::one()));
        }
        if parts[0] >= 2 {
            return Ok(TPoly::constant(SymbolicReal::zeta(parts)?));
        }
        if parts.contains(&0) {
            return Err(RegularError::Word(crate::words::WordError::InvalidIndex(format!("{parts:?}"))));
        }
        let cache = match kind {
            Product::Harmonic => &self.star,
            Product::Shuffle => &self.sh,
        };
        if let Some(hit) = cache.borrow().get(parts) {
            return Ok(hit.clone());
        }
        // With m leading ones and u = parts[1..], the product z_1·u contains
        // `parts` with positive multiplicity; every other word has fewer than
        // m leading ones.
        let m = leading_ones(parts);
        let u = &parts[1..];
        let expansion: Vec<(Vec<u32>, u64)> = match kind {
            Product::Harmonic => harmonic_parts(&[1], u).iter().cloned().collect(),
            Product::Shuffle => shuffle_parts(&[1], u),
        };
        let mut result = self.regularize(u, kind)?.shift();
        let mut own = 0u64;
        for (w, n) in &expansion {
            if w.as_slice() == parts {
                own = *n;
                continue;
            }
            if leading_ones(w) >= m {
                return Err(RegularError::PeelingStalled(crate::words::join_parts(parts)));
            }
            result = result.sub(&self.regularize(w, kind)?.scale(&C::from_i64(*n as i64)));
        }
        if own == 0 {
            return Err(RegularError::PeelingStalled(crate::words::join_parts(parts)));
        }
        let result = result.scale(&(C::one() / C::from_i64(own as i64)));
        cache.borrow_mut().insert(parts.to_vec(), result.clone());
        Ok(result)
    }
}

fn leading_ones(parts: &[u32]) -> usize {
    parts.iter().take_while(|&&p| p == 1).count()
}

thread_local! {
    static DEFAULT: Regularizer<Rational> = Regularizer::new();
}

fn word_parts(w: &Word) -> Result<Vec<u32>, RegularError> {
    Ok(w.parts()?)
}

/// The harmonic regularization `Z*` of a word in `H^1`.
pub fn star_regularize(w: &Word) -> Result<TPoly, RegularError> {
    let parts = word_parts(w)?;
    DEFAULT.with(|r| r.star(&parts))
}

/// The shuffle regularization `Z^sh` of a word in `H^1`.
pub fn shuffle_regularize(w: &Word) -> Result<TPoly, RegularError> {
    let parts = word_parts(w)?;
    DEFAULT.with(|r| r.shuffle(&parts))
}

/// `ζ*(i)`: the constant term of the harmonic regularization.
pub fn zeta_star(i: &Index) -> SymbolicReal {
    DEFAULT.with(|r| r.star(i.parts())).expect("valid index").constant_term()
}

/// `ζ^sh(i)`: the constant term of the shuffle regularization.
pub fn zeta_sh(i: &Index) -> SymbolicReal {
    DEFAULT.with(|r| r.shuffle(i.parts())).expect("valid index").constant_term()
}

/// Taylor coefficients `γ_0..γ_K` of `exp(Σ_{m≥2} (−1)^m ζ(m) u^m / m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTable<C: Scalar = Rational> {
    pub gammas: Vec<SymbolicReal<C>>,
}

impl<C: Scalar> GammaTable<C> {
    pub fn get(&self, k: usize) -> &SymbolicReal<C> {
        &self.gammas[k]
    }
}

pub fn gamma_coefficients<C: Scalar>(order: usize) -> GammaTable<C> {
    // With A = exp(B): k·a_k = Σ_{j=2..k} (j·b_j)·a_{k−j}, and j·b_j = (−1)^j ζ(j).
    let mut gammas: Vec<SymbolicReal<C>> = vec![SymbolicReal::one()];
    for k in 1..=order {
        let mut acc = SymbolicReal::zero();
        for j in 2..=k {
            let sign = if j % 2 == 0 { C::one() } else { -C::one() };
            let jb = SymbolicReal::zeta(&[j as u32]).expect("convergent").scale(&sign);
            acc.add_assign(&jb.mul(&gammas[k - j]));
        }
        gammas.push(acc.scale(&(C::one() / C::from_i64(k as i64))));
    }
    GammaTable { gammas }
}

/// The renormalization map: `ρ(T^m) = Σ_i m!/(m−i)! · γ_i · T^{m−i}`, extended linearly.
pub fn rho_apply<C: Scalar>(p: &TPoly<C>) -> TPoly<C> {
    let deg = p.degree().unwrap_or(0);
    let gamma = gamma_coefficients::<C>(deg);
    let mut out = TPoly::zero();
    for (m, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut falling = C::one();
        for i in 0..=m {
            if i > 0 {
                falling = falling * C::from_i64((m - i + 1) as i64);
            }
            let c = gamma.get(i).scale(&falling).mul(a);
            out = out.add(&TPoly::constant(c).mul(&TPoly::t_pow(m - i)));
        }
    }
    out
}

/// `a2·ζ(2) − 2·a3·ζ(3) + (27/2)·a4·ζ(4)`, the constant term of `ρ(P) − P` for `deg P ≤ 4`.
pub fn lemma321_constant<C: Scalar>(p: &TPoly<C>) -> Result<SymbolicReal<C>, RegularError> {
    if let Some(d) = p.degree().filter(|&d| d > 4) {
        return Err(RegularError::DegreeUnsupported(d));
    }
    let z = |k: u32| SymbolicReal::<C>::zeta(&[k]).expect("convergent");
    let mut out = p.coeff(2).mul(&z(2));
    out.add_assign(&p.coeff(3).mul(&z(3)).scale(&C::from_i64(-2)));
    out.add_assign(&p.coeff(4).mul(&z(4)).scale(&(C::from_i64(27) / C::from_i64(2))));
    Ok(out)
}

/// Outcome of comparing the harmonic regularization with its closed-form coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TPolyStructure {
    pub holds: bool,
    pub actual: TPoly,
    /// Expected coefficients `(k, value)` for the powers the closed forms determine.
    pub expected: Vec<(usize, SymbolicReal)>,
}

/// Checks `Z*(l)` against `Σ_k (1/k!)·δ0(l_1..l_k)·ζ*(l_{k+1}..l_n)·T^k`:
/// every power for depth ≤ 3, and powers `T^{≥2}` for depth 4.
pub fn check_tpoly_structure(i: &Index) -> Result<TPolyStructure, RegularError> {
    let n = i.depth();
    if n > 4 {
        return Err(RegularError::DepthUnsupported(n));
    }
    let l = i.parts();
    let actual = DEFAULT.with(|r| r.star(l))?;
    let lowest = if n == 4 { 2 } else { 1 };
    let mut expected = Vec::new();
    let mut factorial = 1i64;
    for k in 1..=n {
        factorial *= k as i64;
        if k < lowest {
            continue;
        }
        let delta = l[..k].iter().all(|&p| p == 1);
        let value = if !delta {
            SymbolicReal::zero()
        } else if k == n {
            SymbolicReal::one()
        } else {
            DEFAULT.with(|r| r.star(&l[k..]))?.constant_term()
        };
        expected.push((k, value.scale(&Rational::new(1.into(), factorial.into()))));
    }
    let holds = (actual.degree().unwrap_or(0) <= n)
        && expected.iter().all(|(k, v)| {
            let diff = actual.coeff(*k).sub(v);
            diff.is_zero() || !matches!(super::exact_zero(&diff), super::ExactOutcome::Open(_))
        });
    Ok(TPolyStructure { holds, actual, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::word_from_index;

    fn reg_star(s: &str) -> TPoly {
        star_regularize(&word_from_index(&s.parse().unwrap())).unwrap()
    }

    fn reg_sh(s: &str) -> TPoly {
        shuffle_regularize(&word_from_index(&s.parse().unwrap())).unwrap()
    }

    #[test]
    fn star_examples() {
        assert_eq!(reg_star("2").to_string(), "ζ(2)");
        assert_eq!(reg_star("1").to_string(), "T");
        assert_eq!(reg_star("1,1").to_string(), "½T² − ½ζ(2)");
        assert_eq!(reg_star("1,2").to_string(), "ζ(2)·T − ζ(3) − ζ(2,1)");
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(reg_sh("1").to_string(), "T");
        assert_eq!(reg_sh("1,1").to_string(), "½T²");
        assert_eq!(reg_sh("2").to_string(), "ζ(2)");
    }

    #[test]
    fn non_h1_word_rejected() {
        assert!(star_regularize(&"xyx".parse().unwrap()).is_err());
    }

    #[test]
    fn gamma_values() {
        let g = gamma_coefficients::<Rational>(4);
        let z = |k: u32| SymbolicReal::<Rational>::zeta(&[k]).unwrap();
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert_eq!(g.get(0), &SymbolicReal::one());
        assert!(g.get(1).is_zero());
        assert_eq!(g.get(2), &z(2).scale(&q(1, 2)));
        assert_eq!(g.get(3), &z(3).scale(&q(-1, 3)));
        assert_eq!(g.get(4), &z(4).scale(&q(1, 4)).add(&z(2).mul(&z(2)).scale(&q(1, 8))));
        assert_eq!(g.get(4).stuffle_normalize(), z(4).scale(&q(3, 8)).add(&SymbolicReal::zeta(&[2, 2]).unwrap().scale(&q(1, 4))));
    }

    #[test]
    fn rho_powers() {
        assert_eq!(rho_apply(&TPoly::<Rational>::t_pow(1)), TPoly::t_pow(1));
        assert_eq!(rho_apply(&TPoly::<Rational>::t_pow(2)).to_string(), "T² + ζ(2)");
        assert_eq!(rho_apply(&TPoly::<Rational>::t_pow(3)).to_string(), "T³ + 3·ζ(2)·T − 2·ζ(3)");
    }

    #[test]
    fn structure_examples() {
        let s = check_tpoly_structure(&"1,1,3".parse().unwrap()).unwrap();
        assert!(s.holds);
        assert_eq!(s.actual.coeff(2).to_string(), "½ζ(3)");
        let s = check_tpoly_structure(&"2,1,1".parse().unwrap()).unwrap();
        assert!(s.holds && s.actual.degree() == Some(0));
        let s = check_tpoly_structure(&"1,1,1,1".parse().unwrap()).unwrap();
        assert!(s.holds);
        assert_eq!(s.actual.coeff(4).to_string(), "1/24");
        assert!(check_tpoly_structure(&"1,1,1,1,1".parse().unwrap()).is_err());
    }

    #[test]
    fn lemma321_examples() {
        assert!(lemma321_constant(&TPoly::<Rational>::t_pow(1)).unwrap().is_zero());
        assert_eq!(lemma321_constant(&TPoly::<Rational>::t_pow(2)).unwrap().to_string(), "ζ(2)");
        assert_eq!(lemma321_constant(&TPoly::<Rational>::t_pow(3)).unwrap().to_string(), "−2·ζ(3)");
        assert!(lemma321_constant(&TPoly::<Rational>::t_pow(5)).is_err());
    }
}
