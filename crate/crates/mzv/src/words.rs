//! Words over `{x, y}`, indices, and the harmonic and shuffle products.
//!
//! A word in `H^1` (empty or ending in `y`) factors uniquely as
//! `z_{l1}…z_{ln}` with `z_l = x^{l-1} y`, so it is identified with the index
//! `(l1,…,ln)`. [`FormalSum`] holds exact linear combinations of words.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{join_signed, Scalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word `{0}` is not in H^1 (it must be empty or end with y)")]
    WordNotInH1(String),
    #[error("invalid index `{0}`: parts must be positive integers and the index nonempty")]
    InvalidIndex(String),
    #[error("invalid letter `{0}` (expected x or y)")]
    InvalidLetter(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
    fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A finite word over `{x, y}`; the empty word is the unit `1`.
///
/// Ordered graded-lexicographically: shorter words first, then letterwise with `y < x`,
/// so that words of equal weight list as their indices do lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |l: &Letter| *l == Letter::X;
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().map(key).cmp(other.0.iter().map(key)))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_h1(&self) -> bool {
        self.0.last().is_none_or(|&l| l == Letter::Y)
    }

    pub fn in_h0(&self) -> bool {
        self.is_empty() || (self.in_h1() && self.0[0] == Letter::X)
    }

    /// Parts `(l1,…,ln)` of an `H^1` word; empty for the empty word.
    pub fn parts(&self) -> Result<Vec<u32>, WordError> {
        if !self.in_h1() {
            return Err(WordError::WordNotInH1(self.to_string()));
        }
        Ok(letters_to_parts(&self.0))
    }

    /// Weight: the number of letters.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// Reverses the word and swaps `x` and `y`.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swapped()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(WordError::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

pub(crate) fn parts_to_letters(parts: &[u32]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(parts.iter().map(|&p| p as usize).sum());
    for &p in parts {
        out.extend(std::iter::repeat_n(Letter::X, p as usize - 1));
        out.push(Letter::Y);
    }
    out
}

fn letters_to_parts(letters: &[Letter]) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut run = 0u32;
    for &l in letters {
        run += 1;
        if l == Letter::Y {
            parts.push(run);
            run = 0;
        }
    }
    parts
}

/// A nonempty composition `(l1,…,ln)` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Index, WordError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(WordError::InvalidIndex(format!("{parts:?}")));
        }
        Ok(Index(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_convergent(&self) -> bool {
        self.0[0] >= 2
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = WordError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Index::new(v)
    }
}

impl From<Index> for Vec<u32> {
    fn from(i: Index) -> Vec<u32> {
        i.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_parts(&self.0))
    }
}

pub(crate) fn join_parts(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl FromStr for Index {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| WordError::InvalidIndex(s.to_string()))?;
        Index::new(parts).map_err(|_| WordError::InvalidIndex(s.to_string()))
    }
}

pub fn word_from_index(i: &Index) -> Word {
    Word(parts_to_letters(&i.0))
}

pub fn index_from_word(w: &Word) -> Result<Index, WordError> {
    if w.is_empty() || !w.in_h1() {
        return Err(WordError::WordNotInH1(w.to_string()));
    }
    Ok(Index(letters_to_parts(&w.0)))
}

pub fn weight(i: &Index) -> u32 {
    i.weight()
}

pub fn depth(i: &Index) -> usize {
    i.depth()
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSum<C: Scalar = Rational> {
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> Default for FormalSum<C> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> FormalSum<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        let mut s = Self::zero();
        s.add_term(w, C::one());
        s
    }

    /// The word `z_{l1}…z_{ln}` for the given parts (possibly empty).
    pub fn from_parts(parts: &[u32]) -> Self {
        Self::word(Word(parts_to_letters(parts)))
    }

    pub fn from_index(i: &Index) -> Self {
        Self::from_parts(i.parts())
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    fn check_h1(&self) -> Result<(), WordError> {
        match self.terms.keys().find(|w| !w.in_h1()) {
            Some(w) => Err(WordError::WordNotInH1(w.to_string())),
            None => Ok(()),
        }
    }

    /// Harmonic (stuffle) product, extended bilinearly.
    pub fn harmonic(&self, other: &Self) -> Result<Self, WordError> {
        self.check_h1()?;
        other.check_h1()?;
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            let pu = letters_to_parts(&u.0);
            for (v, b) in &other.terms {
                let pv = letters_to_parts(&v.0);
                let ab = a.clone() * b.clone();
                for (w, n) in harmonic_parts(&pu, &pv).iter() {
                    out.add_term(Word(parts_to_letters(w)), ab.clone() * C::from_i64(*n as i64));
                }
            }
        }
        Ok(out)
    }

    /// Shuffle product, extended bilinearly.
    pub fn shuffle(&self, other: &Self) -> Result<Self, WordError> {
        self.check_h1()?;
        other.check_h1()?;
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a.clone() * b.clone();
                for (w, n) in shuffle_letters(&u.0, &v.0).iter() {
                    out.add_term(Word(w.clone()), ab.clone() * C::from_i64(*n as i64));
                }
            }
        }
        Ok(out)
    }
}

impl<C: Scalar> fmt::Display for FormalSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(w, c)| {
            let body = if w.is_empty() {
                String::new()
            } else if w.in_h1() {
                format!("({})", join_parts(&letters_to_parts(&w.0)))
            } else {
                format!("[{w}]")
            };
            (c.clone(), body)
        });
        f.write_str(&join_signed(terms))
    }
}

pub fn harmonic_product<C: Scalar>(a: &FormalSum<C>, b: &FormalSum<C>) -> Result<FormalSum<C>, WordError> {
    a.harmonic(b)
}

pub fn shuffle_product<C: Scalar>(a: &FormalSum<C>, b: &FormalSum<C>) -> Result<FormalSum<C>, WordError> {
    a.shuffle(b)
}

type Expansion<K> = Rc<Vec<(K, u64)>>;
type Memo<K> = RefCell<HashMap<(K, K), Expansion<K>>>;

const MEMO_LIMIT: usize = 14;

thread_local! {
    static HARMONIC_MEMO: Memo<Vec<u32>> = RefCell::new(HashMap::new());
    static SHUFFLE_MEMO: Memo<Vec<Letter>> = RefCell::new(HashMap::new());
}

/// Harmonic product of two compositions, as (composition, multiplicity) pairs.
pub(crate) fn harmonic_parts(a: &[u32], b: &[u32]) -> Expansion<Vec<u32>> {
    if a.is_empty() {
        return Rc::new(vec![(b.to_vec(), 1)]);
    }
    if b.is_empty() {
        return Rc::new(vec![(a.to_vec(), 1)]);
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let memo = a.len() + b.len() <= MEMO_LIMIT;
    let key = (a.to_vec(), b.to_vec());
    if memo {
        if let Some(hit) = HARMONIC_MEMO.with(|m| m.borrow().get(&key).cloned()) {
            return hit;
        }
    }
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut push = |head: u32, tail: &Expansion<Vec<u32>>| {
        for (w, n) in tail.iter() {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(head);
            v.extend_from_slice(w);
            *acc.entry(v).or_insert(0) += n;
        }
    };
    push(a[0], &harmonic_parts(&a[1..], b));
    push(b[0], &harmonic_parts(a, &b[1..]));
    push(a[0] + b[0], &harmonic_parts(&a[1..], &b[1..]));
    let mut out: Vec<_> = acc.into_iter().collect();
    out.sort();
    let out = Rc::new(out);
    if memo {
        HARMONIC_MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
    }
    out
}

/// Shuffle product of two letter words, as (word, multiplicity) pairs.
pub(crate) fn shuffle_letters(u: &[Letter], v: &[Letter]) -> Expansion<Vec<Letter>> {
    if u.is_empty() {
        return Rc::new(vec![(v.to_vec(), 1)]);
    }
    if v.is_empty() {
        return Rc::new(vec![(u.to_vec(), 1)]);
    }
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let memo = u.len() + v.len() <= MEMO_LIMIT;
    let key = (u.to_vec(), v.to_vec());
    if memo {
        if let Some(hit) = SHUFFLE_MEMO.with(|m| m.borrow().get(&key).cloned()) {
            return hit;
        }
    }
    let mut acc: HashMap<Vec<Letter>, u64> = HashMap::new();
    let mut push = |tail: Letter, head: &Expansion<Vec<Letter>>| {
        for (w, n) in head.iter() {
            let mut x = Vec::with_capacity(w.len() + 1);
            x.extend_from_slice(w);
            x.push(tail);
            *acc.entry(x).or_insert(0) += n;
        }
    };
    let (ul, vl) = (u.len() - 1, v.len() - 1);
    push(u[ul], &shuffle_letters(&u[..ul], v));
    push(v[vl], &shuffle_letters(u, &v[..vl]));
    let mut out: Vec<_> = acc.into_iter().collect();
    out.sort();
    let out = Rc::new(out);
    if memo {
        SHUFFLE_MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
    }
    out
}

/// Shuffle product of two `H^1` words given by parts, returned as parts.
pub(crate) fn shuffle_parts(a: &[u32], b: &[u32]) -> Vec<(Vec<u32>, u64)> {
    shuffle_letters(&parts_to_letters(a), &parts_to_letters(b))
        .iter()
        .map(|(w, n)| (letters_to_parts(w), *n))
        .collect()
}

/// All compositions of the given depth with weight at most `max_weight`, in lexicographic order.
pub fn compositions(depth: usize, max_weight: u32) -> Vec<Vec<u32>> {
    fn rec(depth: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if depth == 0 {
            out.push(prefix.clone());
            return;
        }
        let reserve = depth as u32 - 1;
        if budget < depth as u32 {
            return;
        }
        for p in 1..=budget - reserve {
            prefix.push(p);
            rec(depth - 1, budget - p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    rec(depth, max_weight, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(parts: &[u32]) -> FormalSum {
        FormalSum::from_parts(parts)
    }

    #[test]
    fn index_word_examples() {
        let w = |p: Vec<u32>| word_from_index(&Index::new(p).unwrap()).to_string();
        assert_eq!(w(vec![2]), "xy");
        assert_eq!(w(vec![1, 1]), "yy");
        assert_eq!(w(vec![3, 1, 2]), "xxyyxy");
        let i = |s: &str| index_from_word(&s.parse().unwrap()).map(|i| i.to_string());
        assert_eq!(i("xyy").unwrap(), "2,1");
        assert_eq!(i("y").unwrap(), "1");
        assert_eq!(i("xxyxy").unwrap(), "3,2");
        assert!(matches!(i("xyx"), Err(WordError::WordNotInH1(_))));
        assert!(matches!(i("1"), Err(WordError::WordNotInH1(_))));
    }

    #[test]
    fn weight_and_depth() {
        let i: Index = "2,1,3".parse().unwrap();
        assert_eq!((i.weight(), i.depth()), (6, 3));
        let j: Index = "5".parse().unwrap();
        assert_eq!((j.weight(), j.depth()), (5, 1));
    }

    #[test]
    fn harmonic_examples() {
        let p = fs(&[2]).harmonic(&fs(&[3])).unwrap();
        assert_eq!(p.to_string(), "(2,3) + (3,2) + (5)");
        assert_eq!(FormalSum::<Rational>::one().harmonic(&fs(&[2, 1])).unwrap(), fs(&[2, 1]));
        let q = fs(&[1, 2]).harmonic(&fs(&[3])).unwrap();
        let expect = [[1, 2, 3], [1, 3, 2], [3, 1, 2]]
            .iter()
            .map(|p| fs(p))
            .chain([fs(&[4, 2]), fs(&[1, 5])])
            .fold(FormalSum::zero(), |a, b| a.add(&b));
        assert_eq!(q, expect);
    }

    #[test]
    fn shuffle_examples() {
        let y: FormalSum = "y".parse::<Word>().map(FormalSum::word).unwrap();
        assert_eq!(y.shuffle(&y).unwrap().to_string(), "2·(1,1)");
        let x: FormalSum = FormalSum::word("x".parse().unwrap());
        // x is outside H^1, so the product is rejected.
        assert!(x.shuffle(&y).is_err());
        let xy = fs(&[2]);
        assert_eq!(xy.shuffle(&xy).unwrap().to_string(), "2·(2,2) + 4·(3,1)");
    }

    #[test]
    fn raw_letter_shuffle_of_x_and_y() {
        let out = shuffle_letters(&[Letter::X], &[Letter::Y]);
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|(_, n)| *n == 1));
    }

    #[test]
    fn compositions_lexicographic() {
        assert_eq!(compositions(2, 3), vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert_eq!(compositions(1, 2), vec![vec![1], vec![2]]);
    }

    #[test]
    fn graded_order_and_display() {
        let s = fs(&[1, 1]).add(&fs(&[3])).add(&FormalSum::one().scale(&Rational::from_i64(-2)));
        assert_eq!(s.to_string(), "−2 + (1,1) + (3)");
    }
}
