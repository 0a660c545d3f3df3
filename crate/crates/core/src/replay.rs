//! Replays the worked examples stored under `golden/` and diffs the computed
//! values against them.

use std::time::Instant;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::{diagonal_ideal, GridShape, Window, WindowChain};
use crate::ideal::MonomialIdeal;
use crate::linquot::{
    closed_form_colon_single, quotient_chain, redistribute, DiagonalFactorization,
};
use crate::monomial::GridMonomial;
use crate::verify::{check_remarks, Record};

const J26_GENERATORS: &str = include_str!("../golden/j26_generators.txt");
const J26_COLONS: &str = include_str!("../golden/j26_colons.txt");
const REDISTRIBUTE: &str = include_str!("../golden/redistribute_6x16.txt");
const ROW_PRODUCT: &str = include_str!("../golden/row_product_1x3.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl ReplayCheck {
    fn equal(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        ReplayCheck {
            name: name.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub checks: Vec<ReplayCheck>,
    pub millis: u64,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Non-comment, non-blank lines.
fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn lookup<'a>(text: &'a str, key: &str) -> Result<&'a str> {
    data_lines(text)
        .filter_map(|l| l.split_once('='))
        .find(|(k, _)| k.trim() == key)
        .map(|(_, v)| v.trim())
        .ok_or_else(|| Error::Parse(format!("golden entry `{key}` missing")))
}

fn diagonal_example(checks: &mut Vec<ReplayCheck>) -> Result<()> {
    let shape = GridShape::new(3, 8)?;
    let w = Window::new(shape, 2, 6)?;
    let j = diagonal_ideal(shape, w)?;
    let golden = MonomialIdeal::parse(shape, data_lines(J26_GENERATORS).next().unwrap_or(""))?;
    checks.push(ReplayCheck::equal("J26 generators", &golden, &j));

    let chain = quotient_chain(&j)?;
    let colons: Vec<&str> = data_lines(J26_COLONS).collect();
    checks.push(ReplayCheck::equal(
        "J26 colon count",
        colons.len(),
        chain.entries().len(),
    ));
    for (u, (text, brute)) in colons.iter().zip(chain.entries()).enumerate() {
        let golden = MonomialIdeal::parse(shape, text)?;
        let u = u + 1;
        checks.push(ReplayCheck::equal(
            format!("J26 colon u={u}"),
            &golden,
            brute,
        ));
        let closed = closed_form_colon_single(shape, w, &chain.generators()[u])?;
        checks.push(ReplayCheck::equal(
            format!("J26 closed form u={u}"),
            &golden,
            &closed,
        ));
    }
    checks.push(ReplayCheck::equal(
        "J26 linear quotients",
        true,
        chain.has_linear_quotients(),
    ));
    Ok(())
}

fn redistribution_example(checks: &mut Vec<ReplayCheck>) -> Result<()> {
    let shape = GridShape::new(6, 16)?;
    let chain = WindowChain::parse(shape, lookup(REDISTRIBUTE, "windows")?)?;
    let mono = |key: &str| -> Result<GridMonomial> {
        GridMonomial::parse(shape, lookup(REDISTRIBUTE, key)?)
    };
    let gs = (1..=chain.len())
        .map(|j| mono(&format!("g{j}")))
        .collect::<Result<Vec<_>>>()?;
    let hs = redistribute(
        shape,
        &chain,
        &DiagonalFactorization::new(shape, &chain, &gs)?,
    )?;
    for (j, h) in hs.iter().enumerate() {
        let key = format!("h{}", j + 1);
        checks.push(ReplayCheck::equal(format!("6x16 {key}"), mono(&key)?, h));
    }
    let product = |ms: &[GridMonomial]| ms.iter().fold(GridMonomial::one(shape), |a, b| a.mul(b));
    checks.push(ReplayCheck::equal(
        "6x16 product kept",
        product(&gs),
        product(&hs),
    ));
    let g = mono("f")?.gcd(&product(&gs));
    checks.push(ReplayCheck::equal("6x16 gcd", mono("gcd")?, &g));
    checks.push(ReplayCheck::equal(
        "6x16 gcd divides h1",
        true,
        g.divides(&hs[0]),
    ));
    Ok(())
}

fn row_product_example(checks: &mut Vec<ReplayCheck>) -> Result<()> {
    let shape = GridShape::new(1, 3)?;
    let a = diagonal_ideal(shape, Window::new(shape, 1, 2)?)?;
    let b = diagonal_ideal(shape, Window::new(shape, 2, 3)?)?;
    let golden = MonomialIdeal::parse(shape, data_lines(ROW_PRODUCT).next().unwrap_or(""))?;
    checks.push(ReplayCheck::equal("1x3 product", &golden, a.product(&b)));
    Ok(())
}

fn remark_check(r: &Record) -> ReplayCheck {
    ReplayCheck {
        name: format!(
            "unsorted chain {} on {}",
            r.chain,
            r.shape.map(|s| s.to_string()).unwrap_or_default()
        ),
        expected: format!(
            "colon differs from {}",
            r.detail
                .get("formula")
                .and_then(Value::as_str)
                .unwrap_or("?")
        ),
        actual: r
            .detail
            .get("colon")
            .and_then(Value::as_str)
            .map(str::to_string)
            .or_else(|| r.error.as_ref().map(|e| e.to_string()))
            .unwrap_or_default(),
        passed: r.passed,
    }
}

/// Runs every stored example. Errors only on unreadable golden data.
pub fn replay() -> Result<ReplayReport> {
    let started = Instant::now();
    let mut checks = Vec::new();
    diagonal_example(&mut checks)?;
    redistribution_example(&mut checks)?;
    row_product_example(&mut checks)?;
    checks.extend(check_remarks().iter().map(remark_check));
    Ok(ReplayReport {
        checks,
        millis: started.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_match() {
        let report = replay().unwrap();
        for c in &report.checks {
            assert!(c.passed, "{}", c.to_json());
        }
        // 1 + 1 + 9*2 + 1, then 5 + 3, then 1, then 2
        assert_eq!(report.checks.len(), 32);
    }

    #[test]
    fn lookup_reads_keys() {
        assert_eq!(lookup("# c\na = 1\nb= 2", "b").unwrap(), "2");
        assert!(lookup("a = 1", "c").is_err());
    }
}
