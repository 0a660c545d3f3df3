//! Batch checks over whole families of windows and chains. Every check yields
//! one [`Record`], printed by the CLI as a JSON line.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::caps::Options;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::Characteristic;
use crate::grid::{
    diagonal_ideal, diagonal_product, enumerate_diagonals, parse_windows, GridShape, Window,
    WindowChain,
};
use crate::ideal::MonomialIdeal;
use crate::linquot::{
    closed_form_colon_product_unordered, lemma_colon_brute, quotient_chain, verify_colon_lemma,
    verify_single_lemma, LemmaReport,
};
use crate::monomial::GridMonomial;
use crate::resolution::{betti_table, mapping_cone_betti};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Lemma1,
    Lemma2,
    Theorem,
    Remarks,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Lemma1 => "lemma1",
            Target::Lemma2 => "lemma2",
            Target::Theorem => "theorem",
            Target::Remarks => "remarks",
        }
    }
}

/// Outcome of one check. `error` is set when the check could not run.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub target: Target,
    pub shape: Option<GridShape>,
    pub chain: String,
    pub passed: bool,
    pub detail: Map<String, Value>,
    pub error: Option<Error>,
}

impl Record {
    fn new(target: Target, shape: Option<GridShape>, chain: String) -> Self {
        Record {
            target,
            shape,
            chain,
            passed: false,
            detail: Map::new(),
            error: None,
        }
    }

    fn failed(target: Target, shape: GridShape, chain: String, error: Error) -> Self {
        let mut r = Record::new(target, Some(shape), chain);
        r.error = Some(error);
        r
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.detail.insert(key.to_string(), value);
        self
    }

    pub fn is_resource_error(&self) -> bool {
        self.error.as_ref().is_some_and(Error::is_resource)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("target".into(), json!(self.target.name()));
        if let Some(s) = self.shape {
            obj.insert("shape".into(), json!(s));
        }
        obj.insert("chain".into(), json!(self.chain));
        obj.insert("passed".into(), json!(self.passed));
        for (k, v) in &self.detail {
            obj.insert(k.clone(), v.clone());
        }
        if let Some(e) = &self.error {
            obj.insert("error".into(), json!(e.to_string()));
        }
        Value::Object(obj)
    }
}

/// Exit status for a batch: 2 if anything hit a resource or input error,
/// else 1 if any check failed, else 0.
pub fn exit_code(records: &[Record]) -> i32 {
    if records.iter().any(|r| r.error.is_some()) {
        2
    } else if records.iter().all(|r| r.passed) {
        0
    } else {
        1
    }
}

/// All grids with `rows <= max_rows` and `cols <= max_cols`.
pub fn shapes_up_to(max_rows: usize, max_cols: usize) -> Vec<GridShape> {
    (1..=max_rows)
        .flat_map(|m| (m..=max_cols).filter_map(move |n| GridShape::new(m, n).ok()))
        .collect()
}

fn lemma_failures(report: &LemmaReport) -> Value {
    Value::Array(report.failures().map(|s| s.to_json()).collect())
}

/// Closed-form single-window colons against the brute-force chain, plus the
/// linear-quotient certificate.
pub fn check_lemma1(shape: GridShape, w: Window) -> Record {
    let chain = w.to_string();
    let run = || -> Result<Record> {
        let report = verify_single_lemma(shape, w)?;
        let certified = quotient_chain(&diagonal_ideal(shape, w)?)?.has_linear_quotients();
        let mut r = Record::new(Target::Lemma1, Some(shape), chain.clone());
        r.passed = report.passed() && certified;
        Ok(r.with("steps", json!(report.steps.len()))
            .with("linear_quotients", json!(certified))
            .with("failures", lemma_failures(&report)))
    };
    run().unwrap_or_else(|e| Record::failed(Target::Lemma1, shape, chain, e))
}

/// The product colon lemma for a sorted chain of at least two windows.
pub fn check_lemma2(
    shape: GridShape,
    chain: &WindowChain,
    exhaustive: bool,
    opts: &Options,
) -> Record {
    let name = chain.to_string();
    match verify_colon_lemma(shape, chain, exhaustive, opts) {
        Ok(report) => {
            let mut r = Record::new(Target::Lemma2, Some(shape), name);
            r.passed = report.passed();
            r.with("steps", json!(report.steps.len()))
                .with("failures", lemma_failures(&report))
        }
        Err(e) => Record::failed(Target::Lemma2, shape, name, e),
    }
}

/// Regularity of the diagonal product from the homology oracle, compared
/// with `s * m`; also compares with the mapping cone and with characteristic 2.
pub fn check_theorem(shape: GridShape, chain: &WindowChain, opts: &Options) -> Record {
    let name = chain.to_string();
    let run = || -> Result<Record> {
        let ideal = chain.diagonal_product(shape)?;
        let table = betti_table(&ideal, Characteristic::RATIONAL, opts)?;
        let reg = table.regularity().expect("nonzero ideal");
        let expected = (chain.len() * shape.rows()) as i64;
        let degree = ideal.generation_degree().map(i64::from);
        let linear = degree == Some(reg);
        let cone = match mapping_cone_betti(&ideal) {
            Ok(t) => Some(t.same_numbers(&table)),
            Err(Error::Domain(_)) => None,
            Err(e) => return Err(e),
        };
        let char2 = betti_table(&ideal, Characteristic::new(2)?, opts)?;
        let mut r = Record::new(Target::Theorem, Some(shape), name.clone());
        r.passed = reg == expected && linear && cone != Some(false);
        Ok(r.with("gens", json!(ideal.len()))
            .with("reg", json!(reg))
            .with("expected", json!(expected))
            .with("linear", json!(linear))
            .with("betti", json!(table.totals()))
            .with("mapping_cone_agrees", json!(cone))
            .with("char2_agrees", json!(char2.same_numbers(&table))))
    };
    run().unwrap_or_else(|e| Record::failed(Target::Theorem, shape, name, e))
}

/// `(brute != claimed)`, with one generator witnessing the difference.
fn inequality_record(
    shape: GridShape,
    label: &str,
    brute: MonomialIdeal,
    claimed: MonomialIdeal,
) -> Record {
    let witness = brute
        .generators()
        .iter()
        .find(|g| !claimed.contains(g))
        .or_else(|| claimed.generators().iter().find(|g| !brute.contains(g)))
        .map(|g| g.to_string());
    let mut r = Record::new(Target::Remarks, Some(shape), label.to_string());
    r.passed = brute != claimed;
    r.with("colon", json!(brute.to_string()))
        .with("formula", json!(claimed.to_string()))
        .with("witness", json!(witness))
}

/// The two unsorted chains on which the product colon formula breaks down.
pub fn check_remarks() -> Vec<Record> {
    let first = || -> Result<Record> {
        // (J37 J15 : x13 x24 x35) against J15
        let shape = GridShape::new(3, 9)?;
        let windows = parse_windows(shape, "3,7:1,5")?;
        let f = GridMonomial::parse(shape, "x[1,3]*x[2,4]*x[3,5]")?;
        let brute = diagonal_product(shape, &windows)?.colon(&f);
        let claimed = diagonal_ideal(shape, windows[1])?;
        Ok(inequality_record(shape, "3,7:1,5", brute, claimed))
    };
    let second = || -> Result<Record> {
        // (J28 J37, f_1..f_u : x14 x26 x37) against J37 + (x12, x13, x25)
        let shape = GridShape::new(3, 8)?;
        let windows = parse_windows(shape, "2,8:3,7")?;
        let f = GridMonomial::parse(shape, "x[1,4]*x[2,6]*x[3,7]")?;
        let u = enumerate_diagonals(shape, windows[0])?
            .iter()
            .position(|d| *d == f)
            .expect("diagonal of the first window");
        let brute = lemma_colon_brute(shape, &windows, u)?;
        // the sorted-chain formula, applied anyway
        let claimed = closed_form_colon_product_unordered(shape, &windows, &f)?;
        Ok(inequality_record(shape, "2,8:3,7", brute, claimed).with("u", json!(u)))
    };
    [first(), second()]
        .into_iter()
        .zip([(3, 9, "3,7:1,5"), (3, 8, "2,8:3,7")])
        .map(|(r, (m, n, label))| {
            r.unwrap_or_else(|e| {
                Record::failed(
                    Target::Remarks,
                    GridShape::new(m, n).unwrap(),
                    label.into(),
                    e,
                )
            })
        })
        .collect()
}

/// Single-window lemma over every window of every grid up to the bounds.
pub fn sweep_lemma1(max_rows: usize, max_cols: usize, opts: &Options) -> Vec<Record> {
    let instances: Vec<(GridShape, Window)> = shapes_up_to(max_rows, max_cols)
        .into_iter()
        .flat_map(|s| s.windows().into_iter().map(move |w| (s, w)))
        .collect();
    exec::map(opts.exec, &instances, |&(s, w)| check_lemma1(s, w))
}

/// Every sorted chain of exactly `s` windows on every grid up to the bounds.
pub fn sorted_chains_up_to(
    max_rows: usize,
    max_cols: usize,
    s: usize,
) -> Vec<(GridShape, WindowChain)> {
    shapes_up_to(max_rows, max_cols)
        .into_iter()
        .flat_map(|shape| {
            WindowChain::enumerate_sorted(shape, s)
                .into_iter()
                .map(move |c| (shape, c))
        })
        .collect()
}

/// `count` distinct sorted chains of `s` windows drawn uniformly from those
/// whose diagonal product has at most `max_gens` generators; returned in
/// enumeration order.
pub fn sample_sorted_chains(
    max_rows: usize,
    max_cols: usize,
    s: usize,
    count: usize,
    max_gens: usize,
    seed: u64,
) -> Result<Vec<(GridShape, WindowChain)>> {
    let mut pool = Vec::new();
    for (shape, chain) in sorted_chains_up_to(max_rows, max_cols, s) {
        if product_size_bound(shape, &chain) <= max_gens
            || chain.diagonal_product(shape)?.len() <= max_gens
        {
            pool.push((shape, chain));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, pool.len(), count.min(pool.len())).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| pool[i].clone()).collect())
}

/// Product of the window generator counts, an upper bound on the product's
/// minimal generator count.
fn product_size_bound(shape: GridShape, chain: &WindowChain) -> usize {
    chain
        .windows()
        .iter()
        .map(|w| w.diagonal_count(shape))
        .product()
}

/// Product lemma over a list of chains.
pub fn sweep_lemma2(
    instances: &[(GridShape, WindowChain)],
    exhaustive: bool,
    opts: &Options,
) -> Vec<Record> {
    let inner = opts.clone().with_exec(crate::exec::Execution::Sequential);
    exec::map(opts.exec, instances, |(s, c)| {
        check_lemma2(*s, c, exhaustive, &inner)
    })
}

/// Theorem check for every sorted chain of at most `max_factors` windows whose
/// diagonal product has at most `max_gens` minimal generators.
pub fn sweep_theorem(
    max_rows: usize,
    max_cols: usize,
    max_factors: usize,
    max_gens: usize,
    opts: &Options,
) -> Result<Vec<Record>> {
    let mut instances = Vec::new();
    for s in 1..=max_factors {
        for (shape, chain) in sorted_chains_up_to(max_rows, max_cols, s) {
            if chain.diagonal_product(shape)?.len() <= max_gens {
                instances.push((shape, chain));
            }
        }
    }
    let inner = opts.clone().with_exec(crate::exec::Execution::Sequential);
    Ok(exec::map(opts.exec, &instances, |(s, c)| {
        check_theorem(*s, c, &inner)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remarks_reproduce() {
        let records = check_remarks();
        assert_eq!(records.len(), 2);
        for r in &records {
            assert!(r.passed, "{}", r.to_json());
            assert!(r.detail["witness"].is_string());
        }
    }

    #[test]
    fn second_remark_formula_side() {
        let s = GridShape::new(3, 8).unwrap();
        let windows = parse_windows(s, "2,8:3,7").unwrap();
        let f = GridMonomial::parse(s, "x[1,4]*x[2,6]*x[3,7]").unwrap();
        let stated = diagonal_ideal(s, windows[1])
            .unwrap()
            .sum(&MonomialIdeal::parse(s, "<x[1,2], x[1,3], x[2,5]>").unwrap());
        assert_eq!(
            closed_form_colon_product_unordered(s, &windows, &f).unwrap(),
            stated
        );
    }

    #[test]
    fn lemma1_on_j26() {
        let s = GridShape::new(3, 8).unwrap();
        let r = check_lemma1(s, Window::new(s, 2, 6).unwrap());
        assert!(r.passed);
        assert_eq!(r.detail["steps"], json!(9));
        assert_eq!(exit_code(&[r]), 0);
    }

    #[test]
    fn theorem_on_small_chain() {
        let s = GridShape::new(2, 4).unwrap();
        let chain = WindowChain::parse(s, "1,3:2,4").unwrap();
        let r = check_theorem(s, &chain, &Options::sequential());
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.detail["reg"], json!(4));
        assert_eq!(r.detail["char2_agrees"], json!(true));
    }

    #[test]
    fn theorem_refuses_large_products() {
        let s = GridShape::new(3, 8).unwrap();
        let chain = WindowChain::parse(s, "1,8").unwrap();
        let r = check_theorem(s, &chain, &Options::sequential());
        assert!(r.is_resource_error());
        assert_eq!(exit_code(&[r]), 2);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_sorted_chains(3, 6, 3, 10, 5000, 7).unwrap();
        let b = sample_sorted_chains(3, 6, 3, 10, 5000, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|(_, c)| c.len() == 3));
    }

    #[test]
    fn shape_enumeration() {
        assert_eq!(shapes_up_to(2, 3).len(), 5);
        assert_eq!(
            sorted_chains_up_to(1, 3, 2)
                .iter()
                .filter(|(s, _)| s.cols() == 3)
                .count(),
            6
        );
    }
}
