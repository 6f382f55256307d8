//! Permutations, the group ring `Z[S_n]`, named subsets of `S_3`/`S_4`,
//! right cosets and congruence modulo a subgroup.
//!
//! Products compose right to left: `(στ)(i) = σ(τ(i))`. A permutation acts on
//! tuples by `l·σ = (l_{σ⁻¹(1)},…,l_{σ⁻¹(n)})`; on functions this is the right
//! action `(f|σ)(l) = f(l·σ)`, so `(f|σ)|τ = f|(στ)` and on tuples
//! `(l·σ)·τ = l·(τσ)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::{join_signed, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("the given set is not a subgroup")]
    NotASubgroup,
    #[error("unknown subset tag `{0}`")]
    UnknownTag(String),
    #[error("cannot parse permutation `{0}`")]
    Parse(String),
}

/// A permutation of `{1..n}` in one-line notation (stored zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    img: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u8).collect() }
    }

    /// From one-based images `(σ(1),…,σ(n))`.
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(GroupError::Parse(format!("{images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { img: images.iter().map(|&v| (v - 1) as u8).collect() })
    }

    /// Parses disjoint-cycle notation such as `(13)(24)`, `e`, or `(1,10)`.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self, GroupError> {
        let err = || GroupError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Permutation::identity(degree);
        if t == "e" || t == "()" || t.is_empty() {
            return Ok(p);
        }
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(err)?;
            if !rest.starts_with('(') {
                return Err(err());
            }
            let body = &rest[1..body_end];
            rest = &rest[body_end + 1..];
            let pts: Vec<usize> = if body.contains(',') {
                body.split(',').map(|x| x.parse().map_err(|_| err())).collect::<Result<_, _>>()?
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err)).collect::<Result<_, _>>()?
            };
            if pts.iter().any(|&x| x == 0 || x > degree) {
                return Err(err());
            }
            let mut cyc = Permutation::identity(degree);
            for k in 0..pts.len() {
                cyc.img[pts[k] - 1] = (pts[(k + 1) % pts.len()] - 1) as u8;
            }
            if cyc.img.iter().collect::<BTreeSet<_>>().len() != degree {
                return Err(err());
            }
            p = p.compose(&cyc);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// One-based image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { img: other.img.iter().map(|&j| self.img[j as usize]).collect() }
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.img.len()];
        for (i, &v) in self.img.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { img: inv }
    }

    /// The same permutation in `S_m`, fixing `n+1..m`.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.degree());
        let mut img = self.img.clone();
        img.extend(self.degree() as u8..m as u8);
        Permutation { img }
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point (one-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut j = self.img[start] as usize;
            while j != start {
                seen[j] = true;
                cyc.push(j + 1);
                j = self.img[j] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Sort key: identity, then by longest cycle, number of cycles, and cycle list.
    fn order_key(&self) -> (usize, usize, usize, Vec<Vec<usize>>) {
        let cycles = self.cycles();
        let longest = cycles.iter().map(Vec::len).max().unwrap_or(1);
        (self.degree(), longest, cycles.len(), cycles)
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        let wide = self.degree() > 9;
        for c in cycles {
            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", pts.join(if wide { "," } else { "" }))?;
        }
        Ok(())
    }
}

/// `l·σ = (l_{σ⁻¹(1)},…,l_{σ⁻¹(n)})`.
pub fn permute_index<T: Clone>(l: &[T], sigma: &Permutation) -> Result<Vec<T>, GroupError> {
    if l.len() != sigma.degree() {
        return Err(GroupError::DegreeMismatch(l.len(), sigma.degree()));
    }
    Ok(act_on_tuple(l, sigma))
}

pub(crate) fn act_on_tuple<T: Clone>(l: &[T], sigma: &Permutation) -> Vec<T> {
    let mut out = l.to_vec();
    for (j, x) in l.iter().enumerate() {
        out[sigma.img[j] as usize] = x.clone();
    }
    out
}

/// An element of the group ring `C[S_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRing<C: Scalar = i64> {
    degree: usize,
    terms: BTreeMap<Permutation, C>,
}

impl<C: Scalar> GroupRing<C> {
    pub fn zero(degree: usize) -> Self {
        GroupRing { degree, terms: BTreeMap::new() }
    }

    pub fn identity(degree: usize) -> Self {
        Self::single(Permutation::identity(degree))
    }

    pub fn single(p: Permutation) -> Self {
        let mut g = Self::zero(p.degree());
        g.add_term(p, C::one());
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, p: Permutation, c: C) {
        assert_eq!(p.degree(), self.degree, "degree mismatch");
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&p).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.terms.insert(p, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Permutation) -> C {
        self.terms.get(p).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if self.degree != other.degree {
            return Err(GroupError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        let mut out = Self::zero(self.degree);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose(q), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// The same element in `C[S_m]`.
    pub fn embed(&self, m: usize) -> Self {
        let mut out = Self::zero(m);
        for (p, c) in &self.terms {
            out.add_term(p.embed(m), c.clone());
        }
        out
    }

    /// Parses `"(23) + 2(1243) - e"`: signed terms, optional integer coefficient, cycle notation.
    pub fn parse(s: &str, degree: usize) -> Result<Self, GroupError> {
        let err = || GroupError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        let mut out = Self::zero(degree);
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for ch in t.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            chunks.push(cur);
        }
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(b) => (-1i64, b),
                None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let split = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
            let k: i64 = if split == 0 { 1 } else { body[..split].parse().map_err(|_| err())? };
            let perm = Permutation::parse_cycles(&body[split..], degree)?;
            out.add_term(perm, C::from_i64(sign * k));
        }
        Ok(out)
    }
}

impl<C: Scalar> fmt::Display for GroupRing<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(self.terms.iter().map(|(p, c)| (c.clone(), p.to_string()))))
    }
}

/// Integer group ring element.
pub type GroupRingElement = GroupRing<i64>;

/// `S(H)`: the sum of the elements of `H`, all of degree `n`.
pub fn subset_sum<'a>(h: impl IntoIterator<Item = &'a Permutation>, n: usize) -> GroupRingElement {
    let mut g = GroupRing::zero(n);
    for p in h {
        g.add_term(p.clone(), 1);
    }
    g
}

/// Every permutation of degree `n`, in display order.
pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Permutation::from_images(prefix).expect("valid"));
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.sort();
    out
}

/// The subgroup generated by `gens`.
pub fn generate(gens: &[Permutation], n: usize) -> BTreeSet<Permutation> {
    let mut set: BTreeSet<Permutation> = BTreeSet::from([Permutation::identity(n)]);
    let mut frontier: Vec<Permutation> = set.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if set.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    set
}

/// Parses a comma-separated generator list such as `"(12),(34)"`.
pub fn parse_generators(s: &str, n: usize) -> Result<Vec<Permutation>, GroupError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.trim_start_matches('<').trim_end_matches('>').trim_start_matches('⟨').trim_end_matches('⟩');
    let mut gens = Vec::new();
    for piece in t.split("),") {
        let piece = if piece.ends_with(')') || piece == "e" { piece.to_string() } else { format!("{piece})") };
        gens.push(Permutation::parse_cycles(&piece, n)?);
    }
    Ok(gens)
}

pub fn is_subgroup(h: &BTreeSet<Permutation>) -> bool {
    let Some(first) = h.iter().next() else { return false };
    let n = first.degree();
    h.iter().all(|p| p.degree() == n)
        && h.contains(&Permutation::identity(n))
        && h.iter().all(|a| h.contains(&a.inverse()) && h.iter().all(|b| h.contains(&a.compose(b))))
}

/// The right cosets `Hσ` partitioning `S_n`; `σ ≡ τ` iff `στ⁻¹ ∈ H`.
/// Each class is sorted, and classes are ordered by their least element.
pub fn right_cosets(h: &BTreeSet<Permutation>, n: usize) -> Result<Vec<Vec<Permutation>>, GroupError> {
    if !is_subgroup(h) {
        return Err(GroupError::NotASubgroup);
    }
    if h.iter().next().map(Permutation::degree) != Some(n) {
        return Err(GroupError::DegreeMismatch(h.iter().next().map_or(0, Permutation::degree), n));
    }
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for sigma in symmetric_group(n) {
        if seen.contains(&sigma) {
            continue;
        }
        let class: BTreeSet<Permutation> = h.iter().map(|g| g.compose(&sigma)).collect();
        seen.extend(class.iter().cloned());
        classes.push(class.into_iter().collect::<Vec<_>>());
    }
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(classes)
}

/// Congruence modulo `H`: the coefficient sums over each right coset agree.
///
/// This is the congruence generated on `Z[S_n]` by `σ ≡ τ`; it also accepts
/// pairings where terms merge, e.g. `2S(A4) ≡ S(S4)` modulo `⟨(12)⟩`.
pub fn congruent_mod<C: Scalar>(a: &GroupRing<C>, b: &GroupRing<C>, h: &BTreeSet<Permutation>) -> Result<bool, GroupError> {
    a.check(b)?;
    let classes = right_cosets(h, a.degree)?;
    let diff = a.sub(b)?;
    Ok(classes.iter().all(|class| class.iter().fold(C::zero(), |acc, p| acc + diff.coeff(p)).is_zero()))
}

/// Tags of the named subsets of `S_2`, `S_3`, `S_4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubsetTag {
    C2,
    C3,
    C4,
    C4Prime,
    A3,
    A4,
    A4Prime,
    U3,
    U4,
    V4_0,
    V4,
    W4_0,
    W4_1,
    W4,
    X4,
    S2,
    S3,
    S4,
    /// Shuffle elements: `σ` with `σ(1)<…<σ(j)` and `σ(j+1)<…<σ(n)`.
    Sh(usize, usize),
}

impl SubsetTag {
    pub const ALL_FIXED: [SubsetTag; 18] = [
        SubsetTag::C2,
        SubsetTag::C3,
        SubsetTag::C4,
        SubsetTag::C4Prime,
        SubsetTag::A3,
        SubsetTag::A4,
        SubsetTag::A4Prime,
        SubsetTag::U3,
        SubsetTag::U4,
        SubsetTag::V4_0,
        SubsetTag::V4,
        SubsetTag::W4_0,
        SubsetTag::W4_1,
        SubsetTag::W4,
        SubsetTag::X4,
        SubsetTag::S2,
        SubsetTag::S3,
        SubsetTag::S4,
    ];

    pub fn degree(self) -> usize {
        use SubsetTag::*;
        match self {
            C2 | S2 => 2,
            C3 | A3 | U3 | S3 => 3,
            Sh(_, n) => n,
            _ => 4,
        }
    }
}

impl fmt::Display for SubsetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SubsetTag::*;
        let s = match self {
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C4Prime => "C4'",
            A3 => "A3",
            A4 => "A4",
            A4Prime => "A4'",
            U3 => "U3",
            U4 => "U4",
            V4_0 => "V4_0",
            V4 => "V4",
            W4_0 => "W4_0",
            W4_1 => "W4_1",
            W4 => "W4",
            X4 => "X4",
            S2 => "S2",
            S3 => "S3",
            S4 => "S4",
            Sh(j, n) => return write!(f, "sh({j},{n})"),
        };
        f.write_str(s)
    }
}

impl FromStr for SubsetTag {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix("sh(").and_then(|r| r.strip_suffix(')')) {
            let mut it = inner.split(',').map(|x| x.trim().parse::<usize>());
            if let (Some(Ok(j)), Some(Ok(n)), None) = (it.next(), it.next(), it.next()) {
                if j <= n && n >= 1 {
                    return Ok(SubsetTag::Sh(j, n));
                }
            }
            return Err(GroupError::UnknownTag(s.to_string()));
        }
        SubsetTag::ALL_FIXED
            .iter()
            .copied()
            .find(|tag| tag.to_string() == t || tag.to_string().replace('\'', "p") == t)
            .ok_or_else(|| GroupError::UnknownTag(s.to_string()))
    }
}

/// A tagged subset of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSubset {
    pub tag: SubsetTag,
    pub elements: BTreeSet<Permutation>,
}

impl NamedSubset {
    pub fn degree(&self) -> usize {
        self.tag.degree()
    }

    pub fn sum(&self) -> GroupRingElement {
        subset_sum(&self.elements, self.degree())
    }
}

fn perms(list: &[&str], n: usize) -> BTreeSet<Permutation> {
    list.iter().map(|s| Permutation::parse_cycles(s, n).expect("static cycle literal")).collect()
}

pub fn named_subset(tag: SubsetTag) -> NamedSubset {
    use SubsetTag::*;
    let elements = match tag {
        C2 | S2 => perms(&["e", "(12)"], 2),
        C3 | A3 => perms(&["e", "(123)", "(132)"], 3),
        C4 => perms(&["e", "(1234)", "(13)(24)", "(1432)"], 4),
        C4Prime => perms(&["e", "(1234)"], 4),
        A4 => symmetric_group(4).into_iter().filter(|p| sign(p) == 1).collect(),
        A4Prime => perms(&["e", "(13)(24)", "(123)", "(132)", "(142)", "(234)"], 4),
        U3 => perms(&["e", "(23)", "(123)"], 3),
        U4 => perms(&["e", "(34)", "(234)", "(1234)"], 4),
        V4_0 => perms(&["(23)", "(1243)"], 4),
        V4 => perms(&["e", "(13)(24)", "(123)", "(243)", "(23)", "(1243)"], 4),
        W4_0 => perms(&["(23)", "(24)"], 4),
        W4_1 => perms(&["(34)", "(1234)", "(1243)", "(1324)", "(23)", "(24)"], 4),
        W4 => perms(
            &["e", "(13)(24)", "(123)", "(124)", "(234)", "(243)", "(34)", "(1234)", "(1243)", "(1324)", "(23)", "(24)"],
            4,
        ),
        X4 => perms(&["(14)", "(23)", "e", "(1234)", "(13)(24)", "(1432)"], 4),
        S3 => symmetric_group(3).into_iter().collect(),
        S4 => symmetric_group(4).into_iter().collect(),
        Sh(j, n) => symmetric_group(n)
            .into_iter()
            .filter(|p| (1..j).all(|i| p.apply(i) < p.apply(i + 1)) && (j + 1..n).all(|i| p.apply(i) < p.apply(i + 1)))
            .collect(),
    };
    NamedSubset { tag, elements }
}

pub fn sign(p: &Permutation) -> i64 {
    if p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `S(tag)` embedded into degree `n`.
pub fn s_of(tag: SubsetTag, n: usize) -> GroupRingElement {
    named_subset(tag).sum().embed(n)
}

/// `S(⟨gens⟩)` in degree `n`, generators in cycle notation.
pub fn s_gen(gens: &str, n: usize) -> GroupRingElement {
    let g = parse_generators(gens, n).expect("static generator literal");
    subset_sum(&generate(&g, n), n)
}

/// The subgroup `⟨gens⟩` of degree `n`.
pub fn subgroup(gens: &str, n: usize) -> BTreeSet<Permutation> {
    generate(&parse_generators(gens, n).expect("static generator literal"), n)
}

/// A single permutation as a group ring element.
pub fn perm(cycles: &str, n: usize) -> GroupRingElement {
    GroupRing::single(Permutation::parse_cycles(cycles, n).expect("static cycle literal"))
}

/// Generators of the seven subgroups of `S_4` whose coset tables are used by the congruences.
pub const COSET_TABLE_SUBGROUPS: [&str; 7] =
    ["(12),(123)", "(23),(234)", "(12),(34)", "(12)", "(23)", "(34)", "(13)(24)"];

/// One congruence of the depth-4 harmonic-relation lemma: `lhs ≡ rhs` modulo `⟨modulus⟩`.
#[derive(Debug, Clone)]
pub struct CongruenceCase {
    pub label: &'static str,
    pub lhs: GroupRingElement,
    pub rhs: GroupRingElement,
    pub modulus: &'static str,
}

impl CongruenceCase {
    pub fn holds(&self) -> bool {
        let h = if self.modulus == "e" { BTreeSet::from([Permutation::identity(4)]) } else { subgroup(self.modulus, 4) };
        congruent_mod(&self.lhs, &self.rhs, &h).expect("valid subgroup")
    }
}

fn w4_1_without(excluded: &str) -> GroupRingElement {
    s_of(SubsetTag::W4_1, 4).sub(&perm(excluded, 4)).expect("degree 4")
}

fn minus(base: GroupRingElement, drop: &[&str]) -> GroupRingElement {
    drop.iter().fold(base, |acc, p| acc.sub(&perm(p, 4)).expect("degree 4"))
}

/// The ten congruences underlying the depth-4 weight-map identities.
pub fn depth4_congruences() -> Vec<CongruenceCase> {
    use SubsetTag::*;
    let m = |a: GroupRingElement, b: GroupRingElement| a.mul(&b).expect("degree 4");
    let s12 = || s_gen("(12)", 4);
    let s34 = || s_gen("(34)", 4);
    vec![
        CongruenceCase { label: "i.1", lhs: m(perm("(23)", 4), s34()), rhs: s_of(W4_0, 4), modulus: "(12),(34)" },
        CongruenceCase { label: "i.2a", lhs: m(s_of(V4_0, 4), s34()), rhs: minus(s_of(W4_1, 4), &["(34)", "(1324)"]), modulus: "(12)" },
        CongruenceCase { label: "i.2b", lhs: m(s_of(V4_0, 4), s34()), rhs: minus(s_of(W4_1, 4), &["(34)", "(1324)"]), modulus: "(34)" },
        CongruenceCase { label: "i.2c", lhs: m(s_of(V4_0, 4), s34()), rhs: minus(s_of(W4_1, 4), &["(24)", "(1234)"]), modulus: "(23)" },
        CongruenceCase { label: "i.3", lhs: m(s_of(V4, 4), s34()), rhs: s_of(W4, 4), modulus: "e" },
        CongruenceCase { label: "ii.1", lhs: m(perm("(24)", 4), s12()), rhs: minus(s_of(C4, 4), &["e", "(1234)"]), modulus: "(12),(123)" },
        CongruenceCase { label: "ii.2", lhs: s12(), rhs: minus(s_of(C4, 4), &["(13)(24)", "(1234)"]), modulus: "(23),(234)" },
        CongruenceCase { label: "ii.3", lhs: m(s_of(W4_0, 4), s12()), rhs: minus(s_of(X4, 4), &["e", "(13)(24)"]), modulus: "(12),(34)" },
        CongruenceCase { label: "ii.4", lhs: m(w4_1_without("(34)"), s12()), rhs: minus(s_of(A4, 4), &["e", "(12)(34)"]), modulus: "(12)" },
        CongruenceCase { label: "ii.5", lhs: m(w4_1_without("(1234)"), s12()), rhs: minus(s_of(A4, 4), &["(123)", "(134)"]), modulus: "(23)" },
        CongruenceCase { label: "ii.6", lhs: m(w4_1_without("(1324)"), s12()), rhs: minus(s_of(A4, 4), &["(13)(24)", "(14)(23)"]), modulus: "(34)" },
        CongruenceCase { label: "ii.7", lhs: m(s_of(W4, 4), s12()), rhs: s_of(S4, 4), modulus: "e" },
    ]
}
