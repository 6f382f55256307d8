//! Linear relations among convergent MZVs from the double-shuffle structure.
//!
//! For convergent words `u, v` the difference `u*v − u ш v` maps to zero under
//! evaluation, and so does `z_1*w − z_1 ш w` for convergent `w` (the latter
//! lies in `H^0` even though each product does not). Per weight these vectors
//! span a subspace of the convergent words; [`reduce`] returns the canonical
//! remainder of a linear combination modulo that subspace.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{MzvMonomial, SymbolicReal};
use crate::words::{compositions, harmonic_parts, shuffle_parts, Index};
use crate::Rational;

/// Largest weight for which relations are generated.
pub const MAX_WEIGHT: u32 = 10;

type Row = BTreeMap<usize, Rational>;

/// Reduced row-echelon basis of the relation space in one weight.
#[derive(Debug)]
pub struct RelationBasis {
    pub weight: u32,
    columns: Vec<Vec<u32>>,
    position: HashMap<Vec<u32>, usize>,
    pivots: BTreeMap<usize, Row>,
}

impl RelationBasis {
    fn build(weight: u32) -> Self {
        // Deeper words come first so they are eliminated in favour of shallower ones.
        let mut columns: Vec<Vec<u32>> = (1..weight as usize)
            .flat_map(|d| compositions(d, weight))
            .filter(|c| c.iter().sum::<u32>() == weight && c[0] >= 2)
            .collect();
        columns.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
        let position = columns.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut basis = RelationBasis { weight, columns, position, pivots: BTreeMap::new() };
        for row in basis.relation_rows() {
            basis.insert(row);
        }
        basis
    }

    fn convergent_of_weight(w: u32) -> Vec<Vec<u32>> {
        (1..=w.max(1) as usize)
            .flat_map(|d| compositions(d, w))
            .filter(|c| c.iter().sum::<u32>() == w && c[0] >= 2)
            .collect()
    }

    fn relation_rows(&self) -> Vec<Row> {
        let k = self.weight;
        let mut rows = Vec::new();
        for a in 2..=k.saturating_sub(2) {
            for u in Self::convergent_of_weight(a) {
                for v in Self::convergent_of_weight(k - a) {
                    if (a, &u) > (k - a, &v) {
                        continue;
                    }
                    rows.push(self.difference(&u, &v));
                }
            }
        }
        if k >= 3 {
            for w in Self::convergent_of_weight(k - 1) {
                rows.push(self.difference(&[1], &w));
            }
        }
        rows
    }

    fn difference(&self, u: &[u32], v: &[u32]) -> Row {
        let mut row = Row::new();
        let mut bump = |w: &[u32], n: i64| {
            if let Some(&i) = self.position.get(w) {
                let e = row.entry(i).or_insert_with(Rational::zero);
                *e += Rational::from_integer(n.into());
            } else {
                // Divergent words cancel between the two products.
                assert!(w[0] == 1, "unexpected word");
                *self.divergent_guard().lock().expect("guard").entry(w.to_vec()).or_insert(0) += n;
            }
        };
        for (w, n) in harmonic_parts(u, v).iter() {
            bump(w, *n as i64);
        }
        for (w, n) in shuffle_parts(u, v) {
            bump(&w, -(n as i64));
        }
        assert!(
            self.divergent_guard().lock().expect("guard").drain().all(|(_, n)| n == 0),
            "divergent terms failed to cancel"
        );
        row.retain(|_, c| !c.is_zero());
        row
    }

    fn divergent_guard(&self) -> &'static Mutex<HashMap<Vec<u32>, i64>> {
        static GUARD: OnceLock<Mutex<HashMap<Vec<u32>, i64>>> = OnceLock::new();
        GUARD.get_or_init(|| Mutex::new(HashMap::new()))
    }

    fn reduce_row(&self, mut row: Row) -> Row {
        for (&p, prow) in &self.pivots {
            if let Some(c) = row.get(&p).cloned() {
                for (&j, v) in prow {
                    let e = row.entry(j).or_insert_with(Rational::zero);
                    *e -= &c * v;
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce_row(row);
        let Some((&lead, lc)) = row.iter().next() else { return };
        let inv = Rational::one() / lc;
        let row: Row = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
        for prow in self.pivots.values_mut() {
            if let Some(c) = prow.get(&lead).cloned() {
                for (&j, v) in &row {
                    let e = prow.entry(j).or_insert_with(Rational::zero);
                    *e -= &c * v;
                }
                prow.retain(|_, v| !v.is_zero());
            }
        }
        self.pivots.insert(lead, row);
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Dimension of the span of convergent words modulo the relations.
    pub fn quotient_dimension(&self) -> usize {
        self.columns.len() - self.rank()
    }

    /// Canonical remainder of a weight-homogeneous linear combination of symbols.
    fn reduce_linear(&self, s: &SymbolicReal) -> SymbolicReal {
        let mut row = Row::new();
        for (m, c) in s.terms() {
            let i = self.position[m.factors()[0].parts()];
            row.insert(i, c.clone());
        }
        let row = self.reduce_row(row);
        let mut out = SymbolicReal::zero();
        for (i, c) in row {
            let sym = MzvMonomial::symbol(Index::new(self.columns[i].clone()).expect("column")).expect("convergent");
            out.add_term(sym, c);
        }
        out
    }
}

/// The relation basis of weight `w`, built once and shared.
pub fn basis(w: u32) -> Option<Arc<RelationBasis>> {
    if w > MAX_WEIGHT {
        return None;
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RelationBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("cache").get(&w) {
        return Some(b.clone());
    }
    let built = Arc::new(RelationBasis::build(w));
    Some(cache.lock().expect("cache").entry(w).or_insert(built).clone())
}

/// Reduces a stuffle-normalized expression modulo the relations, weight by weight.
/// Returns `None` if some component exceeds [`MAX_WEIGHT`].
pub fn reduce(s: &SymbolicReal) -> Option<SymbolicReal> {
    let normal = s.stuffle_normalize();
    let mut out = SymbolicReal::zero();
    for (w, part) in normal.by_weight() {
        if w <= 1 {
            out.add_assign(&part);
            continue;
        }
        out.add_assign(&basis(w)?.reduce_linear(&part));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_dimensions_match_zagier_numbers() {
        let expected = [1, 1, 1, 2, 2, 3, 4, 5, 7];
        for (k, d) in (2..=MAX_WEIGHT).zip(expected) {
            assert_eq!(basis(k).unwrap().quotient_dimension(), d, "weight {k}");
        }
    }

    #[test]
    fn euler_relations_reduce_to_zero() {
        let z = |p: &[u32]| SymbolicReal::zeta(p).unwrap();
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let e = z(&[2]).mul(&z(&[2])).sub(&z(&[4]).scale(&q(5, 2)));
        assert!(reduce(&e).unwrap().is_zero());
        assert!(reduce(&z(&[2, 1]).sub(&z(&[3]))).unwrap().is_zero());
        assert!(!reduce(&z(&[3]).mul(&z(&[3]))).unwrap().is_zero());
    }
}
