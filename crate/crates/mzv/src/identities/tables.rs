//! The worked examples of weight at most 6, stored as literal linear relations.
//!
//! Rows use a small notation: `Z(l)` is `ζ⋄(l)`, `D(l)` is `δ̄⋄(l)`, a factor may
//! carry `^k`, and a term may start with an integer coefficient.

use std::time::Instant;

use super::expr::{Backend, SymbolicBackend};
use super::{judge, Difference, Flavor, IdentityError, Method, Mode, Status, VerificationReport};
use crate::regular::{zeta_sh, zeta_star, SymbolicReal};
use crate::words::Index;
use crate::Rational;

/// One labelled relation `lhs = rhs`, valid for both regularizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub label: &'static str,
    pub index: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

const fn row(label: &'static str, index: &'static str, lhs: &'static str, rhs: &'static str) -> TableRow {
    TableRow { label, index, lhs, rhs }
}

const ROWS: [TableRow; 24] = [
    row("d3-1", "1,1,1", "3Z(1,1,1)", "D(1,1,1)Z(3)"),
    row("d3-2", "1,1,2", "Z(1,1,2) + Z(1,2,1) + Z(2,1,1)", "Z(1,1)Z(2) + Z(4)"),
    row("d3-3", "1,1,3", "Z(1,1,3) + Z(1,3,1) + Z(3,1,1)", "Z(1,1)Z(3) + Z(5)"),
    row("d3-4", "1,2,2", "Z(1,2,2) + Z(2,2,1) + Z(2,1,2)", "-Z(2)Z(3) + Z(5)"),
    row("d3-5", "1,1,4", "Z(1,1,4) + Z(1,4,1) + Z(4,1,1)", "Z(1,1)Z(4) + Z(6)"),
    row("d3-6", "1,2,3", "Z(1,2,3) + Z(2,3,1) + Z(3,1,2)", "Z(1,2)Z(3) + Z(3,1)Z(2) + Z(6)"),
    row("d3-7", "1,3,2", "Z(1,3,2) + Z(3,2,1) + Z(2,1,3)", "Z(1,3)Z(2) + Z(2,1)Z(3) + Z(6)"),
    row("d3-8", "2,2,2", "3Z(2,2,2)", "-Z(2)^3 + 3Z(2,2)Z(2) + Z(6)"),
    row("d3'-1", "1,1,1", "6Z(1,1,1)", "2D(1,1,1)Z(3)"),
    row("d3'-2", "1,1,2", "2Z(1,1,2) + 2Z(1,2,1) + 2Z(2,1,1)", "-D(1,1)Z(2)^2 + 2Z(4)"),
    row("d3'-3", "1,1,3", "2Z(1,1,3) + 2Z(1,3,1) + 2Z(3,1,1)", "-D(1,1)Z(2)Z(3) + 2Z(5)"),
    row("d3'-4", "1,2,2", "2Z(1,2,2) + 2Z(2,2,1) + 2Z(2,1,2)", "-2Z(2)Z(3) + 2Z(5)"),
    row("d3'-5", "1,1,4", "2Z(1,1,4) + 2Z(1,4,1) + 2Z(4,1,1)", "-D(1,1)Z(2)Z(4) + 2Z(6)"),
    row(
        "d3'-6",
        "1,2,3",
        "Z(1,2,3) + Z(1,3,2) + Z(2,1,3) + Z(2,3,1) + Z(3,1,2) + Z(3,2,1)",
        "-Z(2)Z(4) - Z(3)^2 + 2Z(6)",
    ),
    row("d3'-7", "2,2,2", "6Z(2,2,2)", "Z(2)^3 - 3Z(2)Z(4) + 2Z(6)"),
    row("d4-1", "1,1,1,1", "4Z(1,1,1,1)", "2Z(1,1)^2 - D(1,1,1,1)Z(4)"),
    row(
        "d4-2",
        "1,1,1,2",
        "Z(1,1,1,2) + Z(1,1,2,1) + Z(1,2,1,1) + Z(2,1,1,1)",
        "-Z(1,1)Z(3) + Z(1,1,1)Z(2) - Z(5)",
    ),
    row(
        "d4-3",
        "1,1,1,3",
        "Z(1,1,1,3) + Z(1,1,3,1) + Z(1,3,1,1) + Z(3,1,1,1)",
        "-Z(1,1)Z(4) + Z(1,1,1)Z(3) - Z(6)",
    ),
    row(
        "d4-4",
        "1,1,2,2",
        "Z(1,1,2,2) + Z(1,2,2,1) + Z(2,2,1,1) + Z(2,1,1,2)",
        "-Z(1,1)Z(2)^2 + Z(1,1)Z(2,2) + Z(1,2)Z(2,1) + Z(1,1,2)Z(2) + Z(2,1,1)Z(2) - Z(6)",
    ),
    row("d4-5", "1,2,1,2", "2Z(1,2,1,2) + 2Z(2,1,2,1)", "Z(1,2)^2 + Z(2,1)^2 + 2Z(1,2,1)Z(2) - Z(6)"),
    row("d4'-1", "1,1,1,1", "24Z(1,1,1,1)", "3D(1,1)Z(2)^2 - 6D(1,1,1,1)Z(4)"),
    row(
        "d4'-2",
        "1,1,1,2",
        "6Z(1,1,1,2) + 6Z(1,1,2,1) + 6Z(1,2,1,1) + 6Z(2,1,1,1)",
        "3D(1,1)Z(2)Z(3) + 2D(1,1,1)Z(2)Z(3) - 6Z(5)",
    ),
    row(
        "d4'-3",
        "1,1,1,3",
        "6Z(1,1,1,3) + 6Z(1,1,3,1) + 6Z(1,3,1,1) + 6Z(3,1,1,1)",
        "3D(1,1)Z(2)Z(4) + 2D(1,1,1)Z(3)^2 - 6Z(6)",
    ),
    row(
        "d4'-4",
        "1,1,2,2",
        "4Z(1,1,2,2) + 4Z(1,2,1,2) + 4Z(1,2,2,1) + 4Z(2,1,1,2) + 4Z(2,1,2,1) + 4Z(2,2,1,1)",
        "-D(1,1)Z(2)^3 + D(1,1)Z(2)Z(4) + 4Z(2)Z(4) + 2Z(3)^2 - 6Z(6)",
    ),
];

/// All 24 rows, in table order.
pub fn table_rows() -> &'static [TableRow] {
    &ROWS
}

struct Parser<'a> {
    s: &'a [u8],
    at: usize,
    mode: Mode,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.s.len() && self.s[self.at] == b' ' {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.at).copied()
    }

    fn number(&mut self) -> Option<u32> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.s.len() && self.s[self.at].is_ascii_digit() {
            self.at += 1;
        }
        std::str::from_utf8(&self.s[start..self.at]).ok()?.parse().ok()
    }

    fn expect(&mut self, c: u8) -> Option<()> {
        (self.peek()? == c).then(|| self.at += 1)
    }

    fn factor(&mut self) -> Option<SymbolicReal> {
        let kind = self.peek()?;
        self.at += 1;
        self.expect(b'(')?;
        let mut parts = vec![self.number()?];
        while self.peek()? == b',' {
            self.at += 1;
            parts.push(self.number()?);
        }
        self.expect(b')')?;
        let base = match kind {
            b'Z' => SymbolicBackend.zeta(self.mode, &parts).ok()?,
            b'D' if Flavor::bar(self.mode).holds(&parts) => SymbolicReal::one(),
            b'D' => SymbolicReal::zero(),
            _ => return None,
        };
        let mut power = 1;
        if self.peek() == Some(b'^') {
            self.at += 1;
            power = self.number()?;
        }
        Some((1..power).fold(base.clone(), |acc, _| acc.mul(&base)))
    }

    fn expression(&mut self) -> Option<SymbolicReal> {
        let mut acc = SymbolicReal::zero();
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            self.at += 1;
            sign = -1;
        }
        loop {
            let coeff = if self.peek()?.is_ascii_digit() { self.number()? as i64 } else { 1 };
            let mut term = SymbolicReal::constant(Rational::from_integer((sign * coeff).into()));
            while matches!(self.peek(), Some(b'Z' | b'D')) {
                term = term.mul(&self.factor()?);
            }
            acc.add_assign(&term);
            match self.peek() {
                None => return Some(acc),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return None,
            }
            self.at += 1;
        }
    }
}

/// Evaluates one side of a row in the given mode.
pub(crate) fn evaluate(text: &str, mode: Mode) -> Result<SymbolicReal, IdentityError> {
    Parser { s: text.as_bytes(), at: 0, mode }
        .expression()
        .ok_or_else(|| IdentityError::Unknown(format!("malformed table entry `{text}`")))
}

fn check(identity: &str, index: &Index, mode_label: &str, diffs: Vec<SymbolicReal>) -> Result<VerificationReport, IdentityError> {
    let start = Instant::now();
    let mut worst = None;
    let mut closures = Vec::new();
    for d in diffs {
        let j = judge(Difference::Symbolic(d), Method::Symbolic)?;
        if let Some(c) = &j.closure {
            closures.push(c.clone());
        }
        let rank = |s: Status| match s {
            Status::ExactZero => 0,
            Status::NumericPass => 1,
            Status::Fail => 2,
        };
        if worst.as_ref().is_none_or(|w: &super::Judged| rank(j.status) > rank(w.status)) {
            worst = Some(j);
        }
    }
    let j = worst.expect("at least one comparison");
    closures.sort();
    closures.dedup();
    Ok(VerificationReport {
        identity: identity.to_string(),
        index: index.clone(),
        mode: mode_label.to_string(),
        method: Method::Symbolic.to_string(),
        status: j.status,
        residual: j.residual,
        eps: j.eps,
        millis: start.elapsed().as_millis() as u64,
        closure: (j.status == Status::ExactZero).then(|| closures.join("+")),
        difference: j.difference,
    })
}

/// Checks every row in both modes; one report per row.
pub fn reproduce_tables() -> Result<Vec<VerificationReport>, IdentityError> {
    ROWS.iter()
        .map(|r| {
            let index: Index = r.index.parse()?;
            let mut diffs = Vec::new();
            for mode in Mode::BOTH {
                diffs.push(evaluate(r.lhs, mode)?.sub(&evaluate(r.rhs, mode)?));
            }
            check(&format!("table:{}", r.label), &index, "both", diffs)
        })
        .collect()
}

/// The closed values `ζ*(1,1) = −½ζ(2)`, `ζ*(1,1,1) = ζ(3)/3`, `ζ*(1,1,1,1) = ζ(4)/16`
/// and `ζ^sh(1,1,1) = ζ^sh(1,1,1,1) = 0`.
pub fn special_values() -> Result<Vec<VerificationReport>, IdentityError> {
    let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
    let z = |w: u32| SymbolicReal::zeta(&[w]).expect("convergent");
    let cases: [(&str, Mode, SymbolicReal); 5] = [
        ("1,1", Mode::Star, z(2).scale(&q(-1, 2))),
        ("1,1,1", Mode::Star, z(3).scale(&q(1, 3))),
        ("1,1,1,1", Mode::Star, z(4).scale(&q(1, 16))),
        ("1,1,1", Mode::Sh, SymbolicReal::zero()),
        ("1,1,1,1", Mode::Sh, SymbolicReal::zero()),
    ];
    cases
        .into_iter()
        .map(|(s, mode, expected)| {
            let i: Index = s.parse()?;
            let value = match mode {
                Mode::Star => zeta_star(&i),
                Mode::Sh => zeta_sh(&i),
            };
            check("special", &i, &mode.to_string(), vec![value.sub(&expected)])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parser_reads_powers_and_signs() {
        let s = evaluate("-Z(2)^3 + 3Z(2,2)Z(2) + Z(6)", Mode::Star).unwrap();
        let z = |p: &[u32]| SymbolicReal::zeta(p).unwrap();
        let expected = z(&[2])
            .mul(&z(&[2]))
            .mul(&z(&[2]))
            .neg()
            .add(&z(&[2, 2]).mul(&z(&[2])).scale(&Rational::from_integer(3.into())))
            .add(&z(&[6]));
        assert_eq!(s, expected);
        assert!(evaluate("D(1,1,1)Z(3)", Mode::Sh).unwrap().is_zero());
        assert!(evaluate("Z(2", Mode::Star).is_err());
    }

    #[test]
    fn all_rows_reproduce() {
        let reports = reproduce_tables().unwrap();
        assert_eq!(reports.len(), 24);
        for r in &reports {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn special_values_hold() {
        for r in special_values().unwrap() {
            assert_eq!(r.status, Status::ExactZero, "{r}");
        }
    }
}
