//! Explicit harmonic products of generators in depths 2 to 4.

use std::fmt;
use std::str::FromStr;

use super::IdentityError;
use crate::words::FormalSum;

/// One of the seven product expansions of the generators `z_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HarmonicLemma {
    D2,
    D3Eq1,
    D3Eq2,
    D4Eq1,
    D4Eq2,
    D4Eq3,
    D4Eq4,
}

fn z(parts: &[u32]) -> FormalSum {
    FormalSum::from_parts(parts)
}

fn star(a: &FormalSum, b: &FormalSum) -> FormalSum {
    a.harmonic(b).expect("words in H^1")
}

fn sum(terms: &[&[u32]]) -> FormalSum {
    terms.iter().fold(FormalSum::zero(), |acc, t| acc.add(&z(t)))
}

impl HarmonicLemma {
    pub const ALL: [HarmonicLemma; 7] = [
        HarmonicLemma::D2,
        HarmonicLemma::D3Eq1,
        HarmonicLemma::D3Eq2,
        HarmonicLemma::D4Eq1,
        HarmonicLemma::D4Eq2,
        HarmonicLemma::D4Eq3,
        HarmonicLemma::D4Eq4,
    ];

    /// Number of letters `l_1, …, l_n` the expansion takes.
    pub fn arity(self) -> usize {
        match self {
            HarmonicLemma::D2 => 2,
            HarmonicLemma::D3Eq1 | HarmonicLemma::D3Eq2 => 3,
            _ => 4,
        }
    }

    /// The product as computed by the harmonic product.
    pub fn product(self, l: &[u32]) -> FormalSum {
        let g = |i: usize| z(&[l[i]]);
        match self {
            HarmonicLemma::D2 => star(&g(0), &g(1)),
            HarmonicLemma::D3Eq1 => star(&z(&l[..2]), &g(2)),
            HarmonicLemma::D3Eq2 => star(&star(&g(0), &g(1)), &g(2)),
            HarmonicLemma::D4Eq1 => star(&z(&l[..3]), &g(3)),
            HarmonicLemma::D4Eq2 => star(&z(&l[..2]), &z(&l[2..])),
            HarmonicLemma::D4Eq3 => star(&star(&z(&l[..2]), &g(2)), &g(3)),
            HarmonicLemma::D4Eq4 => star(&star(&star(&g(0), &g(1)), &g(2)), &g(3)),
        }
    }

    /// The stated expansion.
    pub fn expansion(self, l: &[u32]) -> FormalSum {
        match self {
            HarmonicLemma::D2 => {
                let [a, b] = [l[0], l[1]];
                sum(&[&[a, b], &[b, a], &[a + b]])
            }
            HarmonicLemma::D3Eq1 => {
                let [a, b, c] = [l[0], l[1], l[2]];
                sum(&[&[a, b, c], &[a, c, b], &[c, a, b], &[a + c, b], &[a, b + c]])
            }
            HarmonicLemma::D3Eq2 => {
                let [a, b, c] = [l[0], l[1], l[2]];
                sum(&[
                    &[a, b, c],
                    &[a, c, b],
                    &[b, a, c],
                    &[b, c, a],
                    &[c, a, b],
                    &[c, b, a],
                    &[a + b, c],
                    &[a + c, b],
                    &[b + c, a],
                    &[a, b + c],
                    &[b, a + c],
                    &[c, a + b],
                    &[a + b + c],
                ])
            }
            HarmonicLemma::D4Eq1 => {
                let [a, b, c, d] = [l[0], l[1], l[2], l[3]];
                sum(&[
                    &[a, b, c, d],
                    &[a, b, d, c],
                    &[a, d, b, c],
                    &[d, a, b, c],
                    &[a + d, b, c],
                    &[a, b + d, c],
                    &[a, b, c + d],
                ])
            }
            HarmonicLemma::D4Eq2 => {
                let [a, b, c, d] = [l[0], l[1], l[2], l[3]];
                sum(&[
                    &[a, b, c, d],
                    &[a, c, b, d],
                    &[a, c, d, b],
                    &[c, a, b, d],
                    &[c, a, d, b],
                    &[c, d, a, b],
                    &[a + c, b, d],
                    &[a + c, d, b],
                    &[a, b + c, d],
                    &[c, a + d, b],
                    &[a, c, b + d],
                    &[c, a, b + d],
                    &[a + c, b + d],
                ])
            }
            HarmonicLemma::D4Eq3 => {
                let [a, b, c, d] = [l[0], l[1], l[2], l[3]];
                star(&z(&[a, b]), &z(&[c, d]))
                    .add(&star(&z(&[a, b]), &z(&[d, c])))
                    .add(&sum(&[&[c + d, a, b], &[a, c + d, b], &[a, b, c + d], &[a + c + d, b], &[a, b + c + d]]))
            }
            HarmonicLemma::D4Eq4 => {
                let [a, b, c, d] = [l[0], l[1], l[2], l[3]];
                let ab = a + b;
                HarmonicLemma::D4Eq3
                    .product(&[a, b, c, d])
                    .add(&HarmonicLemma::D4Eq3.product(&[b, a, c, d]))
                    .add(&sum(&[
                        &[ab, c, d],
                        &[ab, d, c],
                        &[c, ab, d],
                        &[d, ab, c],
                        &[c, d, ab],
                        &[d, c, ab],
                        &[ab, c + d],
                        &[c + d, ab],
                        &[ab + c, d],
                        &[ab + d, c],
                        &[c, ab + d],
                        &[d, ab + c],
                        &[ab + c + d],
                    ]))
            }
        }
    }

    /// Checks the expansion at one tuple.
    pub fn verify(self, l: &[u32]) -> Result<bool, IdentityError> {
        if l.len() != self.arity() {
            return Err(IdentityError::DepthMismatch { expected: self.arity(), found: l.len() });
        }
        if l.contains(&0) {
            return Err(IdentityError::Unknown("parts must be positive".into()));
        }
        Ok(self.product(l) == self.expansion(l))
    }
}

impl fmt::Display for HarmonicLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HarmonicLemma::D2 => "D2",
            HarmonicLemma::D3Eq1 => "D3.1",
            HarmonicLemma::D3Eq2 => "D3.2",
            HarmonicLemma::D4Eq1 => "D4.1",
            HarmonicLemma::D4Eq2 => "D4.2",
            HarmonicLemma::D4Eq3 => "D4.3",
            HarmonicLemma::D4Eq4 => "D4.4",
        })
    }
}

impl FromStr for HarmonicLemma {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HarmonicLemma::ALL.into_iter().find(|h| h.to_string() == s).ok_or_else(|| IdentityError::Unknown(s.to_string()))
    }
}

/// All tuples of length `n` with entries in `1..=max`.
pub fn tuples(n: usize, max: u32) -> Vec<Vec<u32>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|t| (1..=max).map(move |v| [t.clone(), vec![v]].concat())).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_two_example() {
        assert_eq!(HarmonicLemma::D2.product(&[2, 3]).to_string(), "(2,3) + (3,2) + (5)");
        assert_eq!(HarmonicLemma::D3Eq1.expansion(&[1, 2, 3]).len(), 5);
    }

    #[test]
    fn all_expansions_on_small_parts() {
        for h in HarmonicLemma::ALL {
            for l in tuples(h.arity(), 3) {
                assert!(h.verify(&l).unwrap(), "{h} {l:?}");
            }
        }
        assert!(HarmonicLemma::D2.verify(&[1]).is_err());
    }
}
