use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::expr::FnExpr;
use super::theorems::{cyclic_group, difference};
use super::{report, Difference, Flavor, IdentityError, Method, Mode, Partition, VerificationReport, WeightMap};
use crate::regular::{check_tpoly_structure, zeta_sh, zeta_star, SymbolicReal};
use crate::symgroup::{
    generate, perm, permute_index, s_gen, s_of, GroupRingElement, Permutation, SubsetTag,
};
use crate::words::Index;
use crate::Rational;

fn w(sizes: &[usize]) -> WeightMap {
    WeightMap::new(sizes)
}

fn mul(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
    a.mul(b).expect("equal degrees")
}

fn sub(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
    a.sub(b).expect("equal degrees")
}

fn require(i: &Index, n: usize) -> Result<(), IdentityError> {
    if i.depth() != n {
        return Err(IdentityError::DepthMismatch { expected: n, found: i.depth() });
    }
    Ok(())
}

/// The harmonic relations in function form, depths 2 to 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop31 {
    P1,
    P2_1,
    P2_2,
    P3_1,
    P3_2,
    P3_3,
    P3_4,
}

impl Prop31 {
    pub const ALL: [Prop31; 7] =
        [Prop31::P1, Prop31::P2_1, Prop31::P2_2, Prop31::P3_1, Prop31::P3_2, Prop31::P3_3, Prop31::P3_4];

    pub fn depth(self) -> usize {
        match self {
            Prop31::P1 => 2,
            Prop31::P2_1 | Prop31::P2_2 => 3,
            _ => 4,
        }
    }

    fn sides(self) -> (FnExpr, FnExpr) {
        let z = |k| FnExpr::zeta(Mode::Star, k);
        let zc = |k, sizes: &[usize]| z(k).compose(w(sizes));
        let sum3 = || zc(3, &[2, 1, 1]) + zc(3, &[1, 2, 1]) + zc(3, &[1, 1, 2]);
        let w41 = s_of(SubsetTag::W4_1, 4);
        match self {
            Prop31::P1 => (FnExpr::ones(Mode::Star, 2), z(2).act(s_of(SubsetTag::C2, 2)) + FnExpr::Plain(2)),
            Prop31::P2_1 => (
                FnExpr::tensor(vec![z(2), z(1)]),
                z(3).act(s_of(SubsetTag::U3, 3)) + zc(2, &[2, 1]).act(perm("(123)", 3)) + zc(2, &[1, 2]),
            ),
            Prop31::P2_2 => (
                FnExpr::ones(Mode::Star, 3),
                z(3).act(s_of(SubsetTag::S3, 3))
                    + (zc(2, &[2, 1]) + zc(2, &[1, 2])).act(s_of(SubsetTag::C3, 3))
                    + FnExpr::Plain(3),
            ),
            Prop31::P3_1 => (
                FnExpr::tensor(vec![z(3), z(1)]),
                z(4).act(s_of(SubsetTag::U4, 4))
                    + (zc(3, &[2, 1, 1]) + zc(3, &[1, 2, 1])).act(perm("(234)", 4))
                    + zc(3, &[1, 1, 2]),
            ),
            Prop31::P3_2 => (
                FnExpr::tensor(vec![z(2), z(2)]),
                z(4).act(s_of(SubsetTag::V4, 4))
                    + sum3().act(s_of(SubsetTag::V4_0, 4))
                    + zc(2, &[2, 2]).act(perm("(23)", 4)),
            ),
            Prop31::P3_3 => (
                FnExpr::tensor(vec![z(2), z(1), z(1)]),
                z(4).act(s_of(SubsetTag::W4, 4))
                    + zc(3, &[2, 1, 1]).act(sub(&w41, &perm("(34)", 4)))
                    + zc(3, &[1, 2, 1]).act(sub(&w41, &perm("(1234)", 4)))
                    + zc(3, &[1, 1, 2]).act(sub(&w41, &perm("(1324)", 4)))
                    + zc(2, &[2, 2]).act(s_of(SubsetTag::W4_0, 4))
                    + zc(2, &[3, 1]).act(perm("(24)", 4))
                    + zc(2, &[1, 3]),
            ),
            Prop31::P3_4 => (
                FnExpr::ones(Mode::Star, 4),
                z(4).act(s_of(SubsetTag::S4, 4))
                    + sum3().act(s_of(SubsetTag::A4, 4))
                    + zc(2, &[2, 2]).act(s_of(SubsetTag::X4, 4))
                    + (zc(2, &[3, 1]) + zc(2, &[1, 3])).act(s_of(SubsetTag::C4, 4))
                    + FnExpr::Plain(4),
            ),
        }
    }
}

impl fmt::Display for Prop31 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prop31::P1 => "P1",
            Prop31::P2_1 => "P2.1",
            Prop31::P2_2 => "P2.2",
            Prop31::P3_1 => "P3.1",
            Prop31::P3_2 => "P3.2",
            Prop31::P3_3 => "P3.3",
            Prop31::P3_4 => "P3.4",
        })
    }
}

impl FromStr for Prop31 {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Prop31::ALL.into_iter().find(|p| p.to_string() == s).ok_or_else(|| IdentityError::Unknown(s.to_string()))
    }
}

/// A harmonic relation at one index. Word-exact compares elements of `H^1`;
/// the other methods compare harmonic-regularized constant terms.
pub fn verify_prop31(which: Prop31, i: &Index, method: Method) -> Result<VerificationReport, IdentityError> {
    require(i, which.depth())?;
    report(&format!("prop31:{which}"), i, "star", method, || {
        let (lhs, rhs) = which.sides();
        difference(&lhs, &rhs, i.parts(), method)
    })
}

/// The partition-sum decompositions behind the symmetric-sum corollary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma42 {
    L1Eq1,
    L1Eq2,
    L2Eq1,
    L2Eq2,
    L2Eq3,
    L3Eq1,
    L3Eq2,
    L3Eq3,
    L3Eq4,
    L3Eq5,
}

impl Lemma42 {
    pub const ALL: [Lemma42; 10] = [
        Lemma42::L1Eq1,
        Lemma42::L1Eq2,
        Lemma42::L2Eq1,
        Lemma42::L2Eq2,
        Lemma42::L2Eq3,
        Lemma42::L3Eq1,
        Lemma42::L3Eq2,
        Lemma42::L3Eq3,
        Lemma42::L3Eq4,
        Lemma42::L3Eq5,
    ];

    pub fn depth(self) -> usize {
        match self {
            Lemma42::L1Eq1 | Lemma42::L1Eq2 => 2,
            Lemma42::L2Eq1 | Lemma42::L2Eq2 | Lemma42::L2Eq3 => 3,
            _ => 4,
        }
    }

    fn sides(self, mode: Mode) -> (FnExpr, FnExpr) {
        let z = |k| FnExpr::zeta(mode, k);
        let parts = |k: i64, set: Vec<Partition>| {
            FnExpr::Lin(set.into_iter().map(|p| (Rational::from_integer(k.into()), FnExpr::PartZeta(mode, p))).collect())
        };
        let blocks = |n, m| Partition::with_blocks(n, m);
        let s2 = s_of(SubsetTag::S2, 3);
        let s3 = s_of(SubsetTag::S3, 4);
        let bar = Flavor::bar(mode);
        match self {
            Lemma42::L1Eq1 => (FnExpr::ones(mode, 2), parts(1, blocks(2, 2))),
            Lemma42::L1Eq2 => (FnExpr::char_weight(bar, 2), parts(1, blocks(2, 1))),
            Lemma42::L2Eq1 => (FnExpr::ones(mode, 3).act(s2), parts(2, blocks(3, 3))),
            Lemma42::L2Eq2 => (
                FnExpr::tensor(vec![z(2), z(1)]).act(mul(&cyclic_group(3), &s2)),
                parts(3, blocks(3, 3)) - parts(1, blocks(3, 2)),
            ),
            Lemma42::L2Eq3 => (FnExpr::char_weight(bar, 3).act(s2), parts(2, blocks(3, 1))),
            Lemma42::L3Eq1 => (FnExpr::ones(mode, 4).act(s3), parts(6, blocks(4, 4))),
            Lemma42::L3Eq2 => (
                FnExpr::tensor(vec![z(2), z(1), z(1)]).act(mul(&cyclic_group(4), &s3)),
                parts(12, blocks(4, 4)) - parts(2, blocks(4, 3)),
            ),
            Lemma42::L3Eq3 => (
                FnExpr::tensor(vec![z(2), z(2)]).act(mul(&s_of(SubsetTag::C4Prime, 4), &s3)),
                parts(3, blocks(4, 4)) - parts(1, blocks(4, 3)) + parts(1, Partition::with_shape(4, &[2, 2])),
            ),
            Lemma42::L3Eq4 => (
                FnExpr::tensor(vec![z(3), z(1)]).act(mul(&cyclic_group(4), &s3)),
                parts(4, blocks(4, 4)) - parts(2, blocks(4, 3)) + parts(2, Partition::with_shape(4, &[3, 1])),
            ),
            Lemma42::L3Eq5 => (FnExpr::char_weight(bar, 4).act(s3), parts(6, blocks(4, 1))),
        }
    }
}

impl fmt::Display for Lemma42 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, e) = match self {
            Lemma42::L1Eq1 => (1, 1),
            Lemma42::L1Eq2 => (1, 2),
            Lemma42::L2Eq1 => (2, 1),
            Lemma42::L2Eq2 => (2, 2),
            Lemma42::L2Eq3 => (2, 3),
            Lemma42::L3Eq1 => (3, 1),
            Lemma42::L3Eq2 => (3, 2),
            Lemma42::L3Eq3 => (3, 3),
            Lemma42::L3Eq4 => (3, 4),
            Lemma42::L3Eq5 => (3, 5),
        };
        write!(f, "L{l}.{e}")
    }
}

impl FromStr for Lemma42 {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma42::ALL.into_iter().find(|p| p.to_string() == s).ok_or_else(|| IdentityError::Unknown(s.to_string()))
    }
}

/// A partition lemma at one index and mode.
pub fn verify_lemma42(which: Lemma42, i: &Index, mode: Mode, method: Method) -> Result<VerificationReport, IdentityError> {
    require(i, which.depth())?;
    if method == Method::WordExact && mode == Mode::Sh {
        return Err(IdentityError::MethodModeMismatch { method: method.to_string(), mode: mode.to_string() });
    }
    report(&format!("lemma42:{which}"), i, &mode.to_string(), method, || {
        let (lhs, rhs) = which.sides(mode);
        difference(&lhs, &rhs, i.parts(), method)
    })
}

/// Harmonic-type values expressed through shuffle-type values, depths 1 to 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop321 {
    D1,
    D2,
    D3,
    D4,
}

impl Prop321 {
    pub const ALL: [Prop321; 4] = [Prop321::D1, Prop321::D2, Prop321::D3, Prop321::D4];

    pub fn depth(self) -> usize {
        self as usize + 1
    }

    fn sides(self) -> (FnExpr, FnExpr) {
        let sh = |k| FnExpr::zeta(Mode::Sh, k);
        let d0 = |k| FnExpr::char_weight(Flavor::Zero, k);
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let n = self.depth();
        let rhs = match self {
            Prop321::D1 => sh(1),
            Prop321::D2 => sh(2) - d0(2).scaled(q(1, 2)),
            Prop321::D3 => {
                sh(3) - FnExpr::tensor(vec![d0(2), sh(1)]).scaled(q(1, 2)) + d0(3).scaled(q(1, 3))
            }
            Prop321::D4 => {
                sh(4) - FnExpr::tensor(vec![d0(2), sh(2)]).scaled(q(1, 2))
                    + FnExpr::tensor(vec![d0(3), sh(1)]).scaled(q(1, 3))
                    + d0(4).scaled(q(1, 16))
            }
        };
        (FnExpr::zeta(Mode::Star, n), rhs)
    }
}

impl fmt::Display for Prop321 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.depth())
    }
}

/// A renormalization relation between `ζ*` and `ζ^sh` at one index.
pub fn verify_prop321(which: Prop321, i: &Index, method: Method) -> Result<VerificationReport, IdentityError> {
    require(i, which.depth())?;
    if method == Method::WordExact {
        return Err(IdentityError::MethodModeMismatch { method: method.to_string(), mode: "both".into() });
    }
    report(&format!("prop321:{which}"), i, "both", method, || {
        let (lhs, rhs) = which.sides();
        difference(&lhs, &rhs, i.parts(), method)
    })
}

/// Closed forms of `ζ⋄(1)`, `ζ⋄(1, l_2)` with `l_2 > 1`, and `ζ⋄(1, 1)`.
pub fn verify_lemma323(i: &Index, mode: Mode) -> Result<VerificationReport, IdentityError> {
    let l = i.parts();
    let value = |l: &Index| match mode {
        Mode::Star => zeta_star(l),
        Mode::Sh => zeta_sh(l),
    };
    let z = |p: &[u32]| SymbolicReal::zeta(p);
    let expected = match l {
        [1] => SymbolicReal::zero(),
        [1, 1] => match mode {
            Mode::Star => z(&[2])?.scale(&Rational::new((-1).into(), 2.into())),
            Mode::Sh => SymbolicReal::zero(),
        },
        [1, k] => z(&[*k, 1])?.add(&z(&[k + 1])?).neg(),
        _ => return Err(IdentityError::Unknown(format!("no closed form for ({i})"))),
    };
    report("lemma323", i, &mode.to_string(), Method::Symbolic, || {
        Ok(Difference::Symbolic(value(i).sub(&expected)))
    })
}

/// The coefficients of `Z*(l)` in `T`: all of them for depth ≤ 3, those of `T^{≥2}` for depth 4.
pub fn verify_tpoly_structure(i: &Index) -> Result<VerificationReport, IdentityError> {
    let s = check_tpoly_structure(i)?;
    let mut diff = SymbolicReal::zero();
    for (k, v) in &s.expected {
        diff.add_assign(&s.actual.coeff(*k).sub(v));
    }
    let mut r = report("tpoly_structure", i, "star", Method::Symbolic, || Ok(Difference::Symbolic(diff)))?;
    if !s.holds {
        r.status = super::Status::Fail;
        r.difference = Some(s.actual.to_string());
    }
    Ok(r)
}

/// One equality `W | Γ_1 = W | Γ_2` between maps on `N^4`.
#[derive(Debug, Clone)]
pub struct MapEquality {
    pub label: &'static str,
    pub map: WeightMap,
    pub lhs: GroupRingElement,
    pub rhs: GroupRingElement,
}

/// `W | Γ` at `l`, as a formal sum of output tuples.
pub fn map_action(map: &WeightMap, g: &GroupRingElement, l: &[u32]) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    for (sigma, c) in g.terms() {
        let image = map.apply(&permute_index(l, sigma).expect("degree matches"));
        *out.entry(image).or_insert(0) += *c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The weight-map equalities used for the depth-4 harmonic relations.
pub fn lemma314_cases() -> Vec<MapEquality> {
    let s = |t| s_of(t, 4);
    let p = |c: &str| perm(c, 4);
    let e = GroupRingElement::identity(4);
    let s34 = s_gen("(34)", 4);
    let s12 = s_gen("(12)", 4);
    let w41 = s(SubsetTag::W4_1);
    let minus = |a: &GroupRingElement, xs: &[&GroupRingElement]| xs.iter().fold(a.clone(), |acc, x| sub(&acc, x));
    let v0s34 = mul(&s(SubsetTag::V4_0), &s34);
    let id = WeightMap::identity(4);
    vec![
        MapEquality { label: "i.1", map: w(&[2, 2]), lhs: mul(&p("(23)"), &s34), rhs: s(SubsetTag::W4_0) },
        MapEquality {
            label: "i.2(2,1,1)",
            map: w(&[2, 1, 1]),
            lhs: v0s34.clone(),
            rhs: minus(&w41, &[&p("(34)"), &p("(1324)")]),
        },
        MapEquality {
            label: "i.2(1,1,2)",
            map: w(&[1, 1, 2]),
            lhs: v0s34.clone(),
            rhs: minus(&w41, &[&p("(34)"), &p("(1324)")]),
        },
        MapEquality {
            label: "i.2(1,2,1)",
            map: w(&[1, 2, 1]),
            lhs: v0s34,
            rhs: minus(&w41, &[&p("(24)"), &p("(1234)")]),
        },
        MapEquality { label: "i.3", map: id.clone(), lhs: mul(&s(SubsetTag::V4), &s34), rhs: s(SubsetTag::W4) },
        MapEquality {
            label: "ii.1",
            map: w(&[3, 1]),
            lhs: mul(&p("(24)"), &s12),
            rhs: minus(&s(SubsetTag::C4), &[&e, &p("(1234)")]),
        },
        MapEquality {
            label: "ii.2",
            map: w(&[1, 3]),
            lhs: s12.clone(),
            rhs: minus(&s(SubsetTag::C4), &[&p("(13)(24)"), &p("(1234)")]),
        },
        MapEquality {
            label: "ii.3",
            map: w(&[2, 2]),
            lhs: mul(&s(SubsetTag::W4_0), &s12),
            rhs: minus(&s(SubsetTag::X4), &[&e, &p("(13)(24)")]),
        },
        MapEquality {
            label: "ii.4",
            map: w(&[2, 1, 1]),
            lhs: mul(&sub(&w41, &p("(34)")), &s12),
            rhs: minus(&s(SubsetTag::A4), &[&e, &p("(12)(34)")]),
        },
        MapEquality {
            label: "ii.5",
            map: w(&[1, 2, 1]),
            lhs: mul(&sub(&w41, &p("(1234)")), &s12),
            rhs: minus(&s(SubsetTag::A4), &[&p("(123)"), &p("(134)")]),
        },
        MapEquality {
            label: "ii.6",
            map: w(&[1, 1, 2]),
            lhs: mul(&sub(&w41, &p("(1324)")), &s12),
            rhs: minus(&s(SubsetTag::A4), &[&p("(13)(24)"), &p("(14)(23)")]),
        },
        MapEquality { label: "ii.7", map: id, lhs: mul(&s(SubsetTag::W4), &s12), rhs: s(SubsetTag::S4) },
    ]
}

/// Test points: `{1,2,3}^4` and the permutations of `(1,2,4,8)`, whose block sums are all distinct.
fn lemma314_grid() -> Vec<Vec<u32>> {
    let mut pts = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                for d in 1..=3 {
                    pts.push(vec![a, b, c, d]);
                }
            }
        }
    }
    for sigma in crate::symgroup::symmetric_group(4) {
        pts.push(permute_index(&[1, 2, 4, 8], &sigma).expect("degree 4"));
    }
    pts
}

/// Checks one map equality on the grid; returns the first counterexample.
pub fn verify_lemma314(case: &MapEquality) -> Result<(), Vec<u32>> {
    for l in lemma314_grid() {
        if map_action(&case.map, &case.lhs, &l) != map_action(&case.map, &case.rhs, &l) {
            return Err(l);
        }
    }
    Ok(())
}

/// `W | σ = W` for every `σ` permuting positions inside the blocks of `W`.
pub fn weight_map_invariance(map: &WeightMap) -> bool {
    let n = map.source_depth();
    let mut gens = Vec::new();
    let mut start = 1;
    for &s in map.sizes() {
        for a in start..start + s - 1 {
            let mut img: Vec<usize> = (1..=n).collect();
            img.swap(a - 1, a);
            gens.push(Permutation::from_images(&img).expect("transposition"));
        }
        start += s;
    }
    let stab: BTreeSet<Permutation> = generate(&gens, n);
    let e = GroupRingElement::identity(n);
    lemma314_grid().iter().filter(|l| l.len() == n).all(|l| {
        stab.iter().all(|sigma| map_action(map, &GroupRingElement::single(sigma.clone()), l) == map_action(map, &e, l))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Status;

    fn grid(n: usize) -> Vec<Index> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v: Vec<u32>| (1..=3).map(move |p| [v.clone(), vec![p]].concat())).collect();
        }
        out.into_iter().map(|p| Index::new(p).unwrap()).collect()
    }

    #[test]
    fn harmonic_relations_hold_on_words() {
        for which in Prop31::ALL {
            for i in grid(which.depth()) {
                let r = verify_prop31(which, &i, Method::WordExact).unwrap();
                assert_eq!(r.status, Status::ExactZero, "{r}");
            }
        }
    }

    #[test]
    fn harmonic_relations_examples_symbolic() {
        let r = verify_prop31(Prop31::P1, &"1,1".parse().unwrap(), Method::Symbolic).unwrap();
        assert_eq!(r.status, Status::ExactZero);
        let r = verify_prop31(Prop31::P3_4, &"1,1,1,1".parse().unwrap(), Method::Symbolic).unwrap();
        assert_eq!(r.status, Status::ExactZero);
    }

    #[test]
    fn partition_lemmas() {
        for which in Lemma42::ALL {
            for i in grid(which.depth()) {
                for mode in Mode::BOTH {
                    let r = verify_lemma42(which, &i, mode, Method::Symbolic).unwrap();
                    assert!(r.passed(), "{r}");
                }
            }
        }
    }

    #[test]
    fn renormalization_relations() {
        for which in Prop321::ALL {
            for i in grid(which.depth()) {
                let r = verify_prop321(which, &i, Method::Symbolic).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn small_depth_closed_forms() {
        for s in ["1", "1,1", "1,2", "1,3", "1,5"] {
            for mode in Mode::BOTH {
                let r = verify_lemma323(&s.parse().unwrap(), mode).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn map_equalities() {
        for case in lemma314_cases() {
            assert_eq!(verify_lemma314(&case), Ok(()), "{}", case.label);
            assert!(weight_map_invariance(&case.map));
        }
    }
}
