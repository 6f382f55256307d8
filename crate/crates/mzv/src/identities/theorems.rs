use rayon::prelude::*;

use super::expr::{Backend, FnExpr, SymbolicBackend, WordBackend};
use super::{report, Difference, Flavor, IdentityError, Method, Mode, Partition, Status, VerificationReport};
use crate::regular::SymbolicReal;
use crate::symgroup::{s_of, GroupRingElement, SubsetTag};
use crate::words::Index;
use crate::Rational;

pub(crate) fn cyclic_group(n: usize) -> GroupRingElement {
    match n {
        2 => s_of(SubsetTag::C2, 2),
        3 => s_of(SubsetTag::C3, 3),
        4 => s_of(SubsetTag::C4, 4),
        _ => GroupRingElement::identity(n),
    }
}

pub(crate) fn symmetric_group_sum(n: usize) -> GroupRingElement {
    match n {
        2 => s_of(SubsetTag::S2, 2),
        3 => s_of(SubsetTag::S3, 3),
        4 => s_of(SubsetTag::S4, 4),
        _ => GroupRingElement::identity(n),
    }
}

fn require_depth(i: &Index, range: std::ops::RangeInclusive<usize>) -> Result<usize, IdentityError> {
    let n = i.depth();
    if range.contains(&n) {
        Ok(n)
    } else {
        Err(IdentityError::DepthUnsupported(n))
    }
}

/// `Σ_j ζ⋄(l_j, …, l_n, l_1, …, l_{j−1})` from the explicit rotation list.
pub fn cyclic_sum(i: &Index, mode: Mode) -> Result<SymbolicReal, IdentityError> {
    let n = require_depth(i, 1..=4)?;
    let l = i.parts();
    let mut acc = SymbolicReal::zero();
    for j in 0..n {
        let rotated: Vec<u32> = l[j..].iter().chain(&l[..j]).copied().collect();
        acc.add_assign(&SymbolicBackend.zeta(mode, &rotated)?);
    }
    Ok(acc)
}

/// The same sum as `ζ⋄_n | S(C_n)`.
pub fn cyclic_sum_action(i: &Index, mode: Mode) -> Result<SymbolicReal, IdentityError> {
    let n = require_depth(i, 1..=4)?;
    FnExpr::zeta(mode, n).act(cyclic_group(n)).eval(i.parts(), &SymbolicBackend)
}

fn theorem1_sides(n: usize, mode: Mode) -> Result<(FnExpr, FnExpr), IdentityError> {
    let z = |k| FnExpr::zeta(mode, k);
    let c = cyclic_group(n);
    let rhs = match n {
        2 => FnExpr::ones(mode, 2) - FnExpr::char_weight(Flavor::bar(mode), 2),
        3 => {
            -FnExpr::ones(mode, 3)
                + FnExpr::tensor(vec![z(2), z(1)]).act(c.clone())
                + FnExpr::char_weight(Flavor::bar(mode), 3)
        }
        4 => {
            FnExpr::ones(mode, 4) - FnExpr::tensor(vec![z(2), z(1), z(1)]).act(c.clone())
                + FnExpr::tensor(vec![z(2), z(2)]).act(s_of(SubsetTag::C4Prime, 4))
                + FnExpr::tensor(vec![z(3), z(1)]).act(c.clone())
                - FnExpr::char_weight(Flavor::bar(mode), 4)
        }
        _ => return Err(IdentityError::DepthUnsupported(n)),
    };
    Ok((z(n).act(c), rhs))
}

/// The right-hand side of the cyclic-sum theorem at `i`.
pub fn theorem1_rhs(i: &Index, mode: Mode) -> Result<SymbolicReal, IdentityError> {
    let n = require_depth(i, 2..=4)?;
    theorem1_sides(n, mode)?.1.eval(i.parts(), &SymbolicBackend)
}

fn corollary_sides(n: usize, mode: Mode) -> (FnExpr, FnExpr) {
    let mut rhs = Vec::new();
    for p in Partition::all(n) {
        rhs.push((Rational::from_integer(p.hoffman_c().into()), FnExpr::PartZeta(mode, p)));
    }
    (FnExpr::zeta(mode, n).act(symmetric_group_sum(n)), FnExpr::Lin(rhs))
}

/// `Σ_Π c(Π) ζ⋄-(Π)`.
pub fn corollary1_rhs(i: &Index, mode: Mode) -> Result<SymbolicReal, IdentityError> {
    let n = require_depth(i, 2..=4)?;
    corollary_sides(n, mode).1.eval(i.parts(), &SymbolicBackend)
}

/// `Σ_Π c(Π) ζ(Π)` for an index with all parts at least 2.
pub fn hoffman_rhs(i: &Index) -> Result<SymbolicReal, IdentityError> {
    let n = require_depth(i, 1..=4)?;
    admissible(i)?;
    corollary_sides(n, Mode::Star).1.eval(i.parts(), &SymbolicBackend)
}

fn admissible(i: &Index) -> Result<(), IdentityError> {
    if i.parts().iter().any(|&p| p < 2) {
        return Err(IdentityError::NonAdmissibleIndex(i.to_string()));
    }
    Ok(())
}

/// Evaluates `lhs − rhs` with the backend the method asks for.
pub(crate) fn difference(lhs: &FnExpr, rhs: &FnExpr, l: &[u32], method: Method) -> Result<Difference, IdentityError> {
    let diff = lhs.clone() - rhs.clone();
    Ok(match method {
        Method::WordExact => Difference::Word(diff.eval(l, &WordBackend)?),
        _ => Difference::Symbolic(diff.eval(l, &SymbolicBackend)?),
    })
}

fn check_method(method: Method, mode: Mode) -> Result<(), IdentityError> {
    if method == Method::WordExact && mode == Mode::Sh {
        return Err(IdentityError::MethodModeMismatch { method: method.to_string(), mode: mode.to_string() });
    }
    Ok(())
}

/// The cyclic-sum theorem at one index.
pub fn verify_theorem1(i: &Index, mode: Mode, method: Method) -> Result<VerificationReport, IdentityError> {
    let n = require_depth(i, 2..=4)?;
    check_method(method, mode)?;
    report("theorem1", i, &mode.to_string(), method, || {
        let (lhs, rhs) = theorem1_sides(n, mode)?;
        difference(&lhs, &rhs, i.parts(), method)
    })
}

/// The symmetric-sum corollary at one index.
pub fn verify_corollary1(i: &Index, mode: Mode, method: Method) -> Result<VerificationReport, IdentityError> {
    let n = require_depth(i, 2..=4)?;
    check_method(method, mode)?;
    report("corollary1", i, &mode.to_string(), method, || {
        let (lhs, rhs) = corollary_sides(n, mode);
        difference(&lhs, &rhs, i.parts(), method)
    })
}

/// Hoffman's symmetric-sum formula for an index with all parts at least 2.
///
/// Also checks that the corollary's right-hand sides agree with it term by term
/// in both modes, which holds since `δ̌ ≡ 1` on such indices.
pub fn verify_hoffman(i: &Index, method: Method) -> Result<VerificationReport, IdentityError> {
    let n = require_depth(i, 1..=4)?;
    admissible(i)?;
    let mut r = report("hoffman", i, "plain", method, || {
        let (lhs, rhs) = corollary_sides(n, Mode::Star);
        difference(&lhs, &rhs, i.parts(), method)
    })?;
    if n >= 2 {
        for p in Partition::all(n) {
            let star = FnExpr::PartZeta(Mode::Star, p.clone()).eval(i.parts(), &SymbolicBackend)?;
            let sh = FnExpr::PartZeta(Mode::Sh, p.clone()).eval(i.parts(), &SymbolicBackend)?;
            if star != sh {
                r.status = Status::Fail;
                r.difference = Some(format!("partition {p}: {}", star.sub(&sh)));
            }
        }
    }
    Ok(r)
}

/// Runs `check` over `indices` in parallel; errors become failing reports.
/// The result is sorted canonically.
pub fn sweep<F>(identity: &str, indices: &[Index], check: F) -> Vec<VerificationReport>
where
    F: Fn(&Index) -> Result<Vec<VerificationReport>, IdentityError> + Sync,
{
    let mut out: Vec<VerificationReport> = indices
        .par_iter()
        .flat_map_iter(|i| match check(i) {
            Ok(rs) => rs,
            Err(e) => vec![VerificationReport {
                identity: identity.to_string(),
                index: i.clone(),
                mode: String::new(),
                method: String::new(),
                status: Status::Fail,
                residual: None,
                eps: None,
                millis: 0,
                closure: None,
                difference: Some(e.to_string()),
            }],
        })
        .collect();
    out.sort_by_key(VerificationReport::sort_key);
    out
}
