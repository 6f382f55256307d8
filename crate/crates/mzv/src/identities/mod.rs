//! Builders and verifiers for the cyclic-sum and symmetric-sum identities of
//! regularized MZVs in depths 2 to 4, together with the harmonic relations,
//! partition lemmas and renormalization relations they rest on.
//!
//! Identities are written once as [`FnExpr`] trees (functions of an index built
//! from `ζ⋄_n`, tensor products, weight maps and group-ring actions) and then
//! evaluated either on words in `H^1` or on symbolic reals.

mod expr;
mod harmonic;
mod lemmas;
mod tables;
mod theorems;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{eval_symbolic, NumericError};
use crate::regular::{exact_zero, ExactOutcome, RegularError, SymbolicReal};
use crate::symgroup::GroupError;
use crate::words::{compositions, FormalSum, Index, WordError};

pub use expr::{Backend, FnExpr, SymbolicBackend, WordBackend};
pub use harmonic::{tuples, HarmonicLemma};
pub use lemmas::{
    lemma314_cases, verify_lemma314, verify_lemma323, verify_lemma42, verify_prop31, verify_prop321,
    verify_tpoly_structure, weight_map_invariance, Lemma42, MapEquality, Prop31, Prop321,
};
pub use tables::{reproduce_tables, special_values, table_rows, TableRow};
pub use theorems::{
    corollary1_rhs, cyclic_sum, cyclic_sum_action, hoffman_rhs, sweep, theorem1_rhs, verify_corollary1,
    verify_hoffman, verify_theorem1,
};

/// Tolerance on numeric residuals of identities.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Precision of individual MZV values in numeric checks.
pub const MZV_PRECISION: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("depth {0} is not supported")]
    DepthUnsupported(usize),
    #[error("depth {found} does not match the required depth {expected}")]
    DepthMismatch { expected: usize, found: usize },
    #[error("partition of {{1..{partition}}} applied to an index of depth {index}")]
    SizeMismatch { partition: usize, index: usize },
    #[error("method {method} cannot be used with mode {mode}")]
    MethodModeMismatch { method: String, mode: String },
    #[error("index ({0}) has a part equal to 1")]
    NonAdmissibleIndex(String),
    #[error(transparent)]
    Regular(#[from] RegularError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unknown identity `{0}`")]
    Unknown(String),
}

/// Which regularization `⋄` a statement refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Star,
    Sh,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Star, Mode::Sh];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Star => "star",
            Mode::Sh => "sh",
        })
    }
}

impl FromStr for Mode {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "star" | "*" | "harmonic" => Ok(Mode::Star),
            "sh" | "shuffle" => Ok(Mode::Sh),
            _ => Err(IdentityError::Unknown(s.to_string())),
        }
    }
}

/// Characteristic functions on `N^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `δ̄*`: constantly 1.
    Star,
    /// `δ̄^sh`: 0 exactly on the all-ones index.
    Sh,
    /// `δ0`: 1 exactly on the all-ones index.
    Zero,
    /// `δ̌(·, P)`: 0 iff every position in `P` (1-based) holds a 1.
    Subset(Vec<usize>),
}

impl Flavor {
    /// `δ̄⋄` for a mode.
    pub fn bar(mode: Mode) -> Flavor {
        match mode {
            Mode::Star => Flavor::Star,
            Mode::Sh => Flavor::Sh,
        }
    }

    pub fn holds(&self, l: &[u32]) -> bool {
        match self {
            Flavor::Star => true,
            Flavor::Sh => !l.iter().all(|&p| p == 1),
            Flavor::Zero => l.iter().all(|&p| p == 1),
            Flavor::Subset(p) => !p.iter().all(|&i| l[i - 1] == 1),
        }
    }
}

/// The map `W^n_{n_1,…,n_j}` sending an index to its consecutive block sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMap {
    sizes: Vec<usize>,
}

impl WeightMap {
    pub fn new(sizes: &[usize]) -> Self {
        assert!(sizes.iter().all(|&s| s > 0), "block sizes are positive");
        WeightMap { sizes: sizes.to_vec() }
    }

    /// The identity map on `N^n`.
    pub fn identity(n: usize) -> Self {
        WeightMap { sizes: vec![1; n] }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Depth of the source index.
    pub fn source_depth(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn apply(&self, l: &[u32]) -> Vec<u32> {
        debug_assert_eq!(l.len(), self.source_depth());
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut at = 0;
        for &s in &self.sizes {
            out.push(l[at..at + s].iter().sum());
            at += s;
        }
        out
    }
}

impl fmt::Display for WeightMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        write!(f, "W{}_{{{}}}", self.source_depth(), s.join(","))
    }
}

/// A set partition of `{1..n}`, blocks sorted internally and by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Option<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        let mut seen: Vec<usize> = blocks.iter().flatten().copied().collect();
        seen.sort_unstable();
        if seen != (1..=n).collect::<Vec<_>>() {
            return None;
        }
        Some(Partition { n, blocks })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// All partitions of `{1..n}` in restricted-growth order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn grow(n: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rgs.len() == n {
                let k = rgs.iter().max().map_or(0, |m| m + 1);
                let mut blocks = vec![Vec::new(); k];
                for (i, &b) in rgs.iter().enumerate() {
                    blocks[b].push(i + 1);
                }
                out.push(Partition { n, blocks });
                return;
            }
            let next = rgs.iter().max().map_or(0, |m| m + 1);
            for b in 0..=next {
                rgs.push(b);
                grow(n, rgs, out);
                rgs.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            grow(n, &mut vec![0], &mut out);
        } else {
            out.push(Partition { n: 0, blocks: Vec::new() });
        }
        out
    }

    /// `P_n^{(m)}`: partitions of `{1..n}` into exactly `m` blocks.
    pub fn with_blocks(n: usize, m: usize) -> Vec<Partition> {
        Partition::all(n).into_iter().filter(|p| p.blocks.len() == m).collect()
    }

    /// Partitions whose block sizes, sorted decreasingly, equal `shape`.
    pub fn with_shape(n: usize, shape: &[usize]) -> Vec<Partition> {
        Partition::all(n)
            .into_iter()
            .filter(|p| {
                let mut s: Vec<usize> = p.blocks.iter().map(Vec::len).collect();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s == shape
            })
            .collect()
    }

    /// `c(Π) = (−1)^{n−j} Π (|P_i| − 1)!`.
    pub fn hoffman_c(&self) -> i64 {
        let sign = if (self.n - self.blocks.len()).is_multiple_of(2) { 1 } else { -1 };
        sign * self.blocks.iter().map(|b| (1..b.len() as i64).product::<i64>()).product::<i64>()
    }
}

/// `c(Π)` for a partition.
pub fn hoffman_c(p: &Partition) -> i64 {
    p.hoffman_c()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { "," } else { "" };
        let s: Vec<String> =
            self.blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)).collect();
        f.write_str(&s.join("|"))
    }
}

impl FromStr for Partition {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IdentityError::Unknown(s.to_string());
        let mut blocks = Vec::new();
        for b in s.split('|') {
            let block: Option<Vec<usize>> = if b.contains(',') {
                b.split(',').map(|x| x.trim().parse().ok()).collect()
            } else {
                b.trim().chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
            };
            blocks.push(block.ok_or_else(bad)?);
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks).ok_or_else(bad)
    }
}

/// `ζ⋄-(Π)` for an index: `Π_i δ_i · ζ(Σ_{p∈P_i} l_p)` with `ζ(1) = 0`,
/// where `δ_i = 1` for `⋄ = *` and `δ_i = δ̌(l, P_i)` for `⋄ = sh`.
pub fn partition_zeta(i: &Index, p: &Partition, mode: Mode) -> Result<SymbolicReal, IdentityError> {
    if i.depth() != p.size() {
        return Err(IdentityError::SizeMismatch { partition: p.size(), index: i.depth() });
    }
    FnExpr::PartZeta(mode, p.clone()).eval(i.parts(), &SymbolicBackend)
}

/// All compositions of depth `depth` and weight at most `max_weight`, lexicographic.
pub fn enumerate_indices(depth: usize, max_weight: u32) -> Vec<Index> {
    compositions(depth, max_weight).into_iter().map(|p| Index::new(p).expect("positive parts")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Equality of formal sums in `H^1` (harmonic products only).
    WordExact,
    /// Exact comparison of symbolic reals, with a numeric fallback.
    Symbolic,
    /// Numeric residual at the given tolerance.
    Numeric(f64),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::WordExact => "word_exact",
            Method::Symbolic => "symbolic",
            Method::Numeric(_) => "numeric",
        })
    }
}

impl FromStr for Method {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "word_exact" | "word" => Ok(Method::WordExact),
            "symbolic" | "exact" => Ok(Method::Symbolic),
            "numeric" => Ok(Method::Numeric(RESIDUAL_TOLERANCE)),
            _ => Err(IdentityError::Unknown(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    ExactZero,
    NumericPass,
    Fail,
}

impl Status {
    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

/// Outcome of checking one identity on one index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub index: Index,
    pub mode: String,
    pub method: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub millis: u64,
    /// How an exact pass closed: `word`, `formal` or `double_shuffle`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<String>,
    /// The normalized difference of a failed comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    /// Canonical order: identity, then depth, then index, then mode.
    pub fn sort_key(&self) -> (String, usize, Vec<u32>, String) {
        (self.identity.clone(), self.index.depth(), self.index.parts().to_vec(), self.mode.clone())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<14} ({}) {:<4} {:<10} {:?}", self.identity, self.index, self.mode, self.method, self.status)?;
        if let Some(c) = &self.closure {
            write!(f, " [{c}]")?;
        }
        if let (Some(r), Some(e)) = (self.residual, self.eps) {
            write!(f, " residual={r:.3e} eps={e:.0e}")?;
        }
        if let Some(d) = &self.difference {
            write!(f, " difference: {d}")?;
        }
        Ok(())
    }
}

/// A difference `LHS − RHS` awaiting judgement.
pub(crate) enum Difference {
    Word(FormalSum),
    Symbolic(SymbolicReal),
}

pub(crate) struct Judged {
    status: Status,
    residual: Option<f64>,
    eps: Option<f64>,
    closure: Option<String>,
    difference: Option<String>,
}

fn numeric_judgement(diff: &SymbolicReal, tol: f64) -> Result<Judged, IdentityError> {
    let r = eval_symbolic(diff, MZV_PRECISION)?;
    let residual = r.value.abs().to_f64();
    let pass = residual <= tol;
    Ok(Judged {
        status: if pass { Status::NumericPass } else { Status::Fail },
        residual: Some(residual),
        eps: Some(tol),
        closure: None,
        difference: (!pass).then(|| diff.to_string()),
    })
}

pub(crate) fn judge(diff: Difference, method: Method) -> Result<Judged, IdentityError> {
    match diff {
        Difference::Word(w) => {
            let zero = w.is_zero();
            Ok(Judged {
                status: if zero { Status::ExactZero } else { Status::Fail },
                residual: None,
                eps: None,
                closure: zero.then(|| "word".to_string()),
                difference: (!zero).then(|| w.to_string()),
            })
        }
        Difference::Symbolic(s) => match method {
            Method::Numeric(tol) => numeric_judgement(&s, tol),
            _ => {
                let closure = match exact_zero(&s) {
                    ExactOutcome::Formal => "formal",
                    ExactOutcome::DoubleShuffle => "double_shuffle",
                    ExactOutcome::Open(rest) => return numeric_judgement(&rest, RESIDUAL_TOLERANCE),
                };
                Ok(Judged {
                    status: Status::ExactZero,
                    residual: None,
                    eps: None,
                    closure: Some(closure.to_string()),
                    difference: None,
                })
            }
        },
    }
}

/// Runs `check` and packages the outcome.
pub(crate) fn report(
    identity: &str,
    index: &Index,
    mode: &str,
    method: Method,
    check: impl FnOnce() -> Result<Difference, IdentityError>,
) -> Result<VerificationReport, IdentityError> {
    let start = Instant::now();
    let judged = judge(check()?, method)?;
    Ok(VerificationReport {
        identity: identity.to_string(),
        index: index.clone(),
        mode: mode.to_string(),
        method: method.to_string(),
        status: judged.status,
        residual: judged.residual,
        eps: judged.eps,
        millis: start.elapsed().as_millis() as u64,
        closure: judged.closure,
        difference: judged.difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn partitions_and_coefficients() {
        assert_eq!(Partition::all(3).len(), 5);
        assert_eq!(Partition::all(4).len(), 15);
        let c = |s: &str| s.parse::<Partition>().unwrap().hoffman_c();
        assert_eq!((c("1|2|3"), c("12|3"), c("123")), (1, -1, 2));
        assert_eq!(c("1234"), -6);
        assert_eq!(c("1"), 1);
        let p22: Vec<String> = Partition::with_shape(4, &[2, 2]).iter().map(|p| p.to_string()).collect();
        assert_eq!(p22, ["12|34", "13|24", "14|23"]);
        let p31: Vec<String> = Partition::with_shape(4, &[3, 1]).iter().map(|p| p.to_string()).collect();
        assert_eq!(p31, ["123|4", "124|3", "134|2", "1|234"]);
        assert_eq!(Partition::with_blocks(4, 2).len(), 7);
    }

    #[test]
    fn partition_zeta_examples() {
        let p: Partition = "1|23".parse().unwrap();
        assert!(partition_zeta(&idx("2,1,1"), &p, Mode::Sh).unwrap().is_zero());
        let whole: Partition = "12".parse().unwrap();
        for m in Mode::BOTH {
            assert_eq!(partition_zeta(&idx("2,3"), &whole, m).unwrap(), SymbolicReal::zeta(&[5]).unwrap());
        }
        let singles: Partition = "1|2".parse().unwrap();
        assert!(partition_zeta(&idx("1,1"), &singles, Mode::Star).unwrap().is_zero());
        assert!(partition_zeta(&idx("1,1,1"), &singles, Mode::Star).is_err());
    }

    #[test]
    fn flavors() {
        assert!(!Flavor::Sh.holds(&[1, 1, 1]) && Flavor::Sh.holds(&[1, 2]));
        assert!(Flavor::Zero.holds(&[1, 1]) && !Flavor::Zero.holds(&[2]));
        assert!(!Flavor::Subset(vec![2, 3]).holds(&[2, 1, 1]));
        assert!(Flavor::Subset(vec![1, 2]).holds(&[2, 1, 1]));
    }

    #[test]
    fn enumeration() {
        let s: Vec<String> = enumerate_indices(2, 3).iter().map(|i| i.to_string()).collect();
        assert_eq!(s, ["1,1", "1,2", "2,1"]);
        assert_eq!(enumerate_indices(3, 3).len(), 1);
        assert_eq!(enumerate_indices(1, 2).len(), 2);
    }

    #[test]
    fn weight_maps() {
        assert_eq!(WeightMap::new(&[2, 1]).apply(&[1, 2, 3]), vec![3, 3]);
        assert_eq!(WeightMap::new(&[1, 2, 1]).apply(&[1, 2, 3, 4]), vec![1, 5, 4]);
    }
}
