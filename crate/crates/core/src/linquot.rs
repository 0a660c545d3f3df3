//! Colon ideals of diagonal ideals and their products.
//!
//! For a diagonal monomial `f = x[1,c_1] * ... * x[m,c_m]` of window `(k, l)`
//! the colon by `f` of the strictly larger diagonals is generated by the gap
//! variables `x[i,b]` with `c_{i-1} < b < c_i`, where `c_0 = k - 1`. For a
//! sorted chain the same gap variables plus the product of the remaining
//! windows' ideals generate the colon of the whole product.

use serde_json::json;

use crate::caps::Options;
use crate::error::{Error, Result};
use crate::exec;
use crate::grid::{
    diagonal_product, enumerate_diagonals, enumerate_selections, ColumnSelection, GridShape,
    Window, WindowChain,
};
use crate::ideal::{colon_of_list, MonomialIdeal};
use crate::monomial::GridMonomial;

/// The successive colons `(<f_1..f_u> : f_{u+1})` of an ideal's generators
/// taken in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientChain {
    generators: Vec<GridMonomial>,
    entries: Vec<MonomialIdeal>,
}

impl QuotientChain {
    pub fn generators(&self) -> &[GridMonomial] {
        &self.generators
    }

    /// All colons, `entries()[u - 1] = (<f_1..f_u> : f_{u+1})`.
    pub fn entries(&self) -> &[MonomialIdeal] {
        &self.entries
    }

    /// `(<f_1..f_u> : f_{u+1})` for `1 <= u <= r - 1`.
    pub fn entry(&self, u: usize) -> Option<&MonomialIdeal> {
        u.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn has_linear_quotients(&self) -> bool {
        self.entries
            .iter()
            .all(MonomialIdeal::is_generated_by_variables)
    }

    /// Number of colon generators per generator, starting with 0 for `f_1`.
    pub fn colon_sizes(&self) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.entries.iter().map(MonomialIdeal::len))
            .collect()
    }
}

pub fn quotient_chain(ideal: &MonomialIdeal) -> Result<QuotientChain> {
    if ideal.is_zero() {
        return Err(Error::Domain("the zero ideal has no quotient chain".into()));
    }
    let gens = ideal.generators();
    let entries = (1..gens.len())
        .map(|u| colon_of_list(ideal.shape(), &gens[..u], &gens[u]))
        .collect();
    Ok(QuotientChain {
        generators: gens.to_vec(),
        entries,
    })
}

fn diagonal_in(shape: GridShape, w: Window, f: &GridMonomial) -> Result<ColumnSelection> {
    shape.check(f.shape())?;
    ColumnSelection::from_diagonal(f)
        .filter(|sel| sel.within(w))
        .ok_or_else(|| Error::Domain(format!("{f} is not a diagonal monomial of window ({w})")))
}

/// `x[i,b]` for `c_{i-1} < b < c_i`, with `c_0 = k - 1`.
fn gap_variables(shape: GridShape, k: usize, sel: &ColumnSelection) -> Vec<GridMonomial> {
    let mut out = Vec::new();
    let mut prev = k - 1;
    for (i, &c) in sel.cols().iter().enumerate() {
        for b in prev + 1..c {
            let v = shape
                .var(i + 1, b)
                .expect("gap column lies inside the grid");
            out.push(GridMonomial::var(shape, v));
        }
        prev = c;
    }
    out
}

/// Closed form of `(<f_1..f_u> : f_{u+1})` for the diagonals of one window,
/// where `f = f_{u+1}`. The largest diagonal gives the zero ideal.
pub fn closed_form_colon_single(
    shape: GridShape,
    w: Window,
    f: &GridMonomial,
) -> Result<MonomialIdeal> {
    let w = Window::new(shape, w.k(), w.l())?;
    let sel = diagonal_in(shape, w, f)?;
    Ok(MonomialIdeal::minimal_of(
        shape,
        gap_variables(shape, w.k(), &sel),
    ))
}

/// Closed form of `(<J, f_1..f_u> : f_{u+1})` for `J` the product over a
/// sorted chain of at least two windows and `f = f_{u+1}` a diagonal of the
/// first window.
pub fn closed_form_colon_product(
    shape: GridShape,
    chain: &WindowChain,
    f: &GridMonomial,
) -> Result<MonomialIdeal> {
    closed_form_colon_product_unordered(shape, chain.windows(), f)
}

/// Same formula with the ordering hypothesis dropped. Only meaningful for
/// reproducing what goes wrong on unsorted chains.
pub fn closed_form_colon_product_unordered(
    shape: GridShape,
    windows: &[Window],
    f: &GridMonomial,
) -> Result<MonomialIdeal> {
    if windows.len() < 2 {
        return Err(Error::Domain(
            "the product colon formula needs at least two windows".into(),
        ));
    }
    let first = windows[0];
    let sel = diagonal_in(shape, first, f)?;
    let rest = diagonal_product(shape, &windows[1..])?;
    let gaps = MonomialIdeal::minimal_of(shape, gap_variables(shape, first.k(), &sel));
    Ok(rest.sum(&gaps))
}

/// Brute-force `(<J, f_1..f_u> : f_{u+1})` with `J` the product of all
/// windows (in any order) and `f_i` the diagonals of the first window.
pub fn lemma_colon_brute(shape: GridShape, windows: &[Window], u: usize) -> Result<MonomialIdeal> {
    let first = *windows
        .first()
        .ok_or_else(|| Error::Domain("no windows given".into()))?;
    let diagonals = enumerate_diagonals(shape, first)?;
    if u >= diagonals.len() {
        return Err(Error::Domain(format!(
            "prefix {u} out of range: window ({first}) has {} diagonals",
            diagonals.len()
        )));
    }
    let product = diagonal_product(shape, windows)?;
    Ok(prefix_colon(shape, &product, &diagonals, u))
}

fn prefix_colon(
    shape: GridShape,
    product: &MonomialIdeal,
    diagonals: &[GridMonomial],
    u: usize,
) -> MonomialIdeal {
    let mut gens = product.generators().to_vec();
    gens.extend_from_slice(&diagonals[..u]);
    colon_of_list(shape, &gens, &diagonals[u])
}

/// One compared colon: `brute` by monomial arithmetic, `closed` by formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaStep {
    pub u: usize,
    pub divisor: GridMonomial,
    pub brute: MonomialIdeal,
    pub closed: MonomialIdeal,
}

impl LemmaStep {
    pub fn equal(&self) -> bool {
        self.brute == self.closed
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "u": self.u,
            "brute": self.brute.to_string(),
            "closed": self.closed.to_string(),
            "equal": self.equal(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub shape: GridShape,
    pub windows: Vec<Window>,
    pub steps: Vec<LemmaStep>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(LemmaStep::equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaStep> {
        self.steps.iter().filter(|s| !s.equal())
    }

    /// One JSON object per step.
    pub fn json_lines(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.to_json().to_string()).collect()
    }
}

/// Checks the single-window closed form against the brute-force quotient
/// chain for `u = 1..r-1`.
pub fn verify_single_lemma(shape: GridShape, w: Window) -> Result<LemmaReport> {
    let ideal = crate::grid::diagonal_ideal(shape, w)?;
    let chain = quotient_chain(&ideal)?;
    let steps = chain
        .entries()
        .iter()
        .enumerate()
        .map(|(i, brute)| {
            let f = &chain.generators()[i + 1];
            Ok(LemmaStep {
                u: i + 1,
                divisor: f.clone(),
                brute: brute.clone(),
                closed: closed_form_colon_single(shape, w, f)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LemmaReport {
        shape,
        windows: vec![w],
        steps,
    })
}

/// Checks the product closed form against brute force for every
/// `0 <= u <= r - 1`. Without `exhaustive`, products with more than
/// `caps.max_colon_gens` generators are refused.
pub fn verify_colon_lemma(
    shape: GridShape,
    chain: &WindowChain,
    exhaustive: bool,
    opts: &Options,
) -> Result<LemmaReport> {
    if chain.len() < 2 {
        return Err(Error::Domain(
            "the product colon lemma needs at least two windows".into(),
        ));
    }
    let product = chain.diagonal_product(shape)?;
    if !exhaustive && product.len() > opts.caps.max_colon_gens {
        return Err(Error::Resource(format!(
            "product over {chain} has {} generators (cap {})",
            product.len(),
            opts.caps.max_colon_gens
        )));
    }
    let diagonals = enumerate_diagonals(shape, chain.first())?;
    let rest = chain
        .tail()
        .expect("chain has two or more windows")
        .diagonal_product(shape)?;
    let first_k = chain.first().k();
    let us: Vec<usize> = (0..diagonals.len()).collect();
    let steps = exec::map(opts.exec, &us, |&u| {
        let f = &diagonals[u];
        let sel = ColumnSelection::from_diagonal(f).expect("enumerated diagonal");
        let gaps = MonomialIdeal::minimal_of(shape, gap_variables(shape, first_k, &sel));
        LemmaStep {
            u,
            divisor: f.clone(),
            brute: prefix_colon(shape, &product, &diagonals, u),
            closed: rest.sum(&gaps),
        }
    });
    Ok(LemmaReport {
        shape,
        windows: chain.windows().to_vec(),
        steps,
    })
}

/// Diagonal monomials `g_1..g_s`, `g_j` taken from window `j` of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalFactorization {
    factors: Vec<ColumnSelection>,
}

impl DiagonalFactorization {
    pub fn new(shape: GridShape, chain: &WindowChain, factors: &[GridMonomial]) -> Result<Self> {
        if factors.len() != chain.len() {
            return Err(Error::Domain(format!(
                "{} factors given for a chain of {} windows",
                factors.len(),
                chain.len()
            )));
        }
        let factors = factors
            .iter()
            .zip(chain.windows())
            .map(|(g, &w)| diagonal_in(shape, w, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagonalFactorization { factors })
    }

    pub fn factors(&self) -> &[ColumnSelection] {
        &self.factors
    }
}

/// Row-wise sorted column positions of all factors: `rows[i][j]` is the
/// column of the (j+1)-th circle of row i+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleTable {
    rows: Vec<Vec<usize>>,
}

impl CircleTable {
    pub fn build(shape: GridShape, factorization: &DiagonalFactorization) -> Self {
        let rows = (1..=shape.rows())
            .map(|i| {
                let mut cols: Vec<usize> =
                    factorization.factors.iter().map(|sel| sel.col(i)).collect();
                cols.sort_unstable();
                cols
            })
            .collect();
        CircleTable { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Columns of the j-th circles (1-based `j`), top row first.
    pub fn circle_columns(&self, j: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[j - 1]).collect()
    }
}

/// Re-sorts the circles of `g_1..g_s` row by row into `h_1..h_s`, with
/// `h_j` built from the j-th circle of every row.
pub fn redistribute(
    shape: GridShape,
    chain: &WindowChain,
    factorization: &DiagonalFactorization,
) -> Result<Vec<GridMonomial>> {
    if factorization.factors.len() != chain.len() {
        return Err(Error::Domain(
            "factorization does not match the chain".into(),
        ));
    }
    for (sel, &w) in factorization.factors.iter().zip(chain.windows()) {
        if !sel.within(w) {
            return Err(Error::Domain(format!(
                "factor {} lies outside window ({w})",
                sel.diagonal(shape)
            )));
        }
    }
    let table = CircleTable::build(shape, factorization);
    (1..=chain.len())
        .map(|j| {
            let sel = ColumnSelection::new(shape, table.circle_columns(j))?;
            Ok(sel.diagonal(shape))
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimOneReport {
    /// Factorizations examined.
    pub checked: usize,
    pub violations: Vec<String>,
}

/// For every minimal generator `f` of `(J : f_{u+1})` outside the gap-variable
/// ideal, and every tuple of diagonals `g_j` (window j) whose product divides
/// `f * f_{u+1}`, checks that `gcd(f_{u+1}, g_1..g_s)` divides `h_1` after
/// redistribution.
pub fn check_claim_one(shape: GridShape, chain: &WindowChain, u: usize) -> Result<ClaimOneReport> {
    let diagonals = enumerate_diagonals(shape, chain.first())?;
    let f_next = diagonals
        .get(u)
        .ok_or_else(|| Error::Domain(format!("prefix {u} out of range")))?
        .clone();
    let sel = ColumnSelection::from_diagonal(&f_next).expect("enumerated diagonal");
    let gaps = MonomialIdeal::minimal_of(shape, gap_variables(shape, chain.first().k(), &sel));
    let product = chain.diagonal_product(shape)?;
    let colon = product.colon(&f_next);
    let per_window: Vec<Vec<GridMonomial>> = chain
        .windows()
        .iter()
        .map(|&w| {
            enumerate_selections(shape, w)
                .iter()
                .map(|s| s.diagonal(shape))
                .collect()
        })
        .collect();

    let mut report = ClaimOneReport::default();
    for f in colon.generators() {
        if gaps.contains(f) {
            continue;
        }
        let target = f.mul(&f_next);
        let mut picked = Vec::with_capacity(chain.len());
        for_each_dividing_tuple(
            &per_window,
            &target,
            GridMonomial::one(shape),
            &mut picked,
            &mut |gs, prod| {
                report.checked += 1;
                let g = f_next.gcd(prod);
                let fact = DiagonalFactorization::new(shape, chain, gs)
                    .expect("tuple drawn from the chain's windows");
                let hs = redistribute(shape, chain, &fact).expect("valid factorization");
                if !g.divides(&hs[0]) {
                    report
                        .violations
                        .push(format!("u={u} f={f} g={g} h1={} factors={gs:?}", hs[0]));
                }
            },
        );
    }
    Ok(report)
}

fn for_each_dividing_tuple(
    per_window: &[Vec<GridMonomial>],
    target: &GridMonomial,
    acc: GridMonomial,
    picked: &mut Vec<GridMonomial>,
    visit: &mut dyn FnMut(&[GridMonomial], &GridMonomial),
) {
    let j = picked.len();
    if j == per_window.len() {
        visit(picked, &acc);
        return;
    }
    for g in &per_window[j] {
        let next = acc.mul(g);
        if next.divides(target) {
            picked.push(g.clone());
            for_each_dividing_tuple(per_window, target, next, picked, visit);
            picked.pop();
        }
    }
}
