//! Strategies and property checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use mzv::identities::{FnExpr, Mode, WordBackend, MZV_PRECISION, RESIDUAL_TOLERANCE};
use mzv::numeric::eval_symbolic;
use mzv::regular::{exact_zero, ExactOutcome, Regularizer, SymbolicReal, TPoly};
use mzv::symgroup::{permute_index, symmetric_group, GroupRing, Permutation};
use mzv::{Rational, WordSum};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};

pub const SEED: u64 = 0x5eed_2024;

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn parts(max_depth: usize, max_part: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_part, 1..=max_depth)
}

/// Small integer combinations of up to three words.
pub fn word_sum() -> impl Strategy<Value = WordSum> {
    prop::collection::vec((parts(3, 3), -3i64..=3), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(WordSum::zero(), |acc, (p, c)| {
            acc.add(&WordSum::from_parts(&p).scale(&Rational::from_integer(c.into())))
        })
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    let all = symmetric_group(n);
    (0..all.len()).prop_map(move |k| all[k].clone())
}

/// Products of up to three convergent zeta symbols with small coefficients.
pub fn symbolic_real() -> impl Strategy<Value = SymbolicReal> {
    let factor = parts(3, 3).prop_map(|mut p| {
        p[0] = p[0].max(2);
        p
    });
    prop::collection::vec((prop::collection::vec(factor, 0..=2), -4i64..=4), 1..=3).prop_map(|terms| {
        let mut acc = SymbolicReal::zero();
        for (factors, c) in terms {
            let mut t = SymbolicReal::constant(Rational::from_integer(c.into()));
            for f in factors {
                t = t.mul(&SymbolicReal::zeta(&f).expect("convergent"));
            }
            acc.add_assign(&t);
        }
        acc
    })
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn products_commute(a: &WordSum, b: &WordSum) -> Result<(), TestCaseError> {
    check(a.harmonic(b).unwrap() == b.harmonic(a).unwrap(), "harmonic product commutes")?;
    check(a.shuffle(b).unwrap() == b.shuffle(a).unwrap(), "shuffle product commutes")
}

pub fn products_associate(a: &WordSum, b: &WordSum, c: &WordSum) -> Result<(), TestCaseError> {
    let h = |x: &WordSum, y: &WordSum| x.harmonic(y).unwrap();
    let s = |x: &WordSum, y: &WordSum| x.shuffle(y).unwrap();
    check(h(&h(a, b), c) == h(a, &h(b, c)), "harmonic product associates")?;
    check(s(&s(a, b), c) == s(a, &s(b, c)), "shuffle product associates")
}

/// Regularization of a linear combination of `H^1` words.
pub fn regularize(sum: &WordSum, mode: Mode) -> TPoly {
    let r = Regularizer::<Rational>::new();
    let mut out = TPoly::zero();
    for (w, c) in sum.iter() {
        let p = w.parts().expect("H^1 word");
        let t = if p.is_empty() {
            TPoly::constant(SymbolicReal::one())
        } else {
            match mode {
                Mode::Star => r.star(&p).unwrap(),
                Mode::Sh => r.shuffle(&p).unwrap(),
            }
        };
        out = out.add(&t.scale(c));
    }
    out
}

/// Coefficientwise equality of T-polynomials: exact where the relation reducer closes,
/// otherwise a numeric residual within tolerance.
pub fn tpoly_equal(a: &TPoly, b: &TPoly) -> bool {
    let d = a.sub(b);
    let deg = d.degree().unwrap_or(0);
    (0..=deg).all(|k| match exact_zero(&d.coeff(k)) {
        ExactOutcome::Open(rest) => {
            eval_symbolic(&rest, MZV_PRECISION).is_ok_and(|r| r.value.abs().to_f64() <= RESIDUAL_TOLERANCE)
        }
        _ => true,
    })
}

/// Both regularizations are algebra homomorphisms for their own product.
pub fn regularization_homomorphism(a: &[u32], b: &[u32]) -> Result<(), TestCaseError> {
    let (x, y) = (WordSum::from_parts(a), WordSum::from_parts(b));
    let star_lhs = regularize(&x.harmonic(&y).unwrap(), Mode::Star);
    let star_rhs = regularize(&x, Mode::Star).mul(&regularize(&y, Mode::Star));
    check(tpoly_equal(&star_lhs, &star_rhs), "harmonic regularization is multiplicative")?;
    let sh_lhs = regularize(&x.shuffle(&y).unwrap(), Mode::Sh);
    let sh_rhs = regularize(&x, Mode::Sh).mul(&regularize(&y, Mode::Sh));
    check(tpoly_equal(&sh_lhs, &sh_rhs), "shuffle regularization is multiplicative")
}

/// `(f|σ)|τ = f|(στ)` on tuples, on group-ring elements, and on evaluated functions.
pub fn right_action_law(l: &[u32], sigma: &Permutation, tau: &Permutation) -> Result<(), TestCaseError> {
    let st = sigma.compose(tau);
    let direct = permute_index(l, &st).unwrap();
    let nested = permute_index(&permute_index(l, tau).unwrap(), sigma).unwrap();
    check(direct == nested, "tuple action composes")?;
    let (gs, gt) = (GroupRing::<i64>::single(sigma.clone()), GroupRing::<i64>::single(tau.clone()));
    let f = FnExpr::zeta(Mode::Star, l.len());
    let lhs = f.clone().act(gs.clone()).act(gt.clone()).eval(l, &WordBackend).unwrap();
    let rhs = f.act(gs.mul(&gt).unwrap()).eval(l, &WordBackend).unwrap();
    check(lhs == rhs, "function action composes")
}

pub fn normalize_idempotent(s: &SymbolicReal) -> Result<(), TestCaseError> {
    let once = s.stuffle_normalize();
    check(once.stuffle_normalize() == once, "stuffle normalization is idempotent")?;
    let linear = once.terms().all(|(m, _)| m.factors().len() <= 1);
    check(linear, "normalized form has no products")
}

/// The coset table of `S_4` modulo seven subgroups, as printed in the source.
pub const TABLE1: [(&str, &[&[&str]]); 7] = [
    (
        "(12),(123)",
        &[
            &["e", "(12)", "(13)", "(23)", "(123)", "(132)"],
            &["(14)", "(14)(23)", "(142)", "(143)", "(1423)", "(1432)"],
            &["(24)", "(13)(24)", "(124)", "(243)", "(1243)", "(1324)"],
            &["(34)", "(12)(34)", "(134)", "(234)", "(1234)", "(1342)"],
        ],
    ),
    (
        "(23),(234)",
        &[
            &["e", "(23)", "(24)", "(34)", "(234)", "(243)"],
            &["(12)", "(12)(34)", "(132)", "(142)", "(1342)", "(1432)"],
            &["(13)", "(13)(24)", "(123)", "(143)", "(1243)", "(1423)"],
            &["(14)", "(14)(23)", "(124)", "(134)", "(1234)", "(1324)"],
        ],
    ),
    (
        "(12),(34)",
        &[
            &["e", "(12)", "(34)", "(12)(34)"],
            &["(13)", "(132)", "(143)", "(1432)"],
            &["(14)", "(134)", "(142)", "(1342)"],
            &["(23)", "(123)", "(243)", "(1243)"],
            &["(24)", "(124)", "(234)", "(1234)"],
            &["(13)(24)", "(14)(23)", "(1324)", "(1423)"],
        ],
    ),
    (
        "(12)",
        &[
            &["e", "(12)"],
            &["(13)", "(132)"],
            &["(14)", "(142)"],
            &["(23)", "(123)"],
            &["(24)", "(124)"],
            &["(34)", "(12)(34)"],
            &["(13)(24)", "(1324)"],
            &["(14)(23)", "(1423)"],
            &["(134)", "(1342)"],
            &["(143)", "(1432)"],
            &["(234)", "(1234)"],
            &["(243)", "(1243)"],
        ],
    ),
    (
        "(23)",
        &[
            &["e", "(23)"],
            &["(12)", "(132)"],
            &["(13)", "(123)"],
            &["(14)", "(14)(23)"],
            &["(24)", "(243)"],
            &["(34)", "(234)"],
            &["(12)(34)", "(1342)"],
            &["(13)(24)", "(1243)"],
            &["(124)", "(1324)"],
            &["(134)", "(1234)"],
            &["(142)", "(1432)"],
            &["(143)", "(1423)"],
        ],
    ),
    (
        "(34)",
        &[
            &["e", "(34)"],
            &["(12)", "(12)(34)"],
            &["(13)", "(143)"],
            &["(14)", "(134)"],
            &["(23)", "(243)"],
            &["(24)", "(234)"],
            &["(13)(24)", "(1423)"],
            &["(14)(23)", "(1324)"],
            &["(123)", "(1243)"],
            &["(124)", "(1234)"],
            &["(132)", "(1432)"],
            &["(142)", "(1342)"],
        ],
    ),
    (
        "(13)(24)",
        &[
            &["e", "(13)(24)"],
            &["(12)", "(1423)"],
            &["(13)", "(24)"],
            &["(14)", "(1243)"],
            &["(23)", "(1342)"],
            &["(34)", "(1324)"],
            &["(12)(34)", "(14)(23)"],
            &["(123)", "(142)"],
            &["(124)", "(143)"],
            &["(132)", "(234)"],
            &["(134)", "(243)"],
            &["(1234)", "(1432)"],
        ],
    ),
];

type Classes = std::collections::BTreeSet<std::collections::BTreeSet<Permutation>>;

/// Compares the computed right cosets modulo `<gens>` with a printed row; returns the
/// first mismatch.
pub fn table1_row_matches(gens: &str, printed: &[&[&str]]) -> Result<(), String> {
    use mzv::symgroup::{generate, parse_generators, right_cosets};
    let h = generate(&parse_generators(gens, 4).map_err(|e| e.to_string())?, 4);
    let computed: Classes =
        right_cosets(&h, 4).map_err(|e| e.to_string())?.into_iter().map(|c| c.into_iter().collect()).collect();
    let expected: Classes = printed
        .iter()
        .map(|class| class.iter().map(|s| Permutation::parse_cycles(s, 4).expect("table literal")).collect())
        .collect();
    if computed == expected {
        Ok(())
    } else {
        Err(format!("mod <{gens}>: computed {computed:?}"))
    }
}
