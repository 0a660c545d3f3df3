//! Buchberger's algorithm for the diagonal order τ, and the checks built on it.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::caps::{Caps, Options};
use crate::error::{Error, Result};
use crate::field::{Characteristic, Field, PrimeField, Rationals};
use crate::grid::{enumerate_selections, minor_capped, GridShape, Window, WindowChain};
use crate::ideal::MonomialIdeal;
use crate::monomial::GridMonomial;
use crate::poly::FieldPolynomial;

/// Remainder of `f` on division by `divisors`: the largest reducible term is
/// always cancelled first, using the first divisor (in list order) whose
/// leading term divides it.
pub fn reduce<F: Field>(
    f: &FieldPolynomial<F>,
    divisors: &[FieldPolynomial<F>],
) -> FieldPolynomial<F> {
    let field = f.field().clone();
    let divisors: Vec<&FieldPolynomial<F>> = divisors.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = f.clone();
    let mut remainder: Vec<(GridMonomial, F::Elem)> = Vec::new();
    while let Some(lt) = rest.leading_term().cloned() {
        let lc = rest.leading_coeff().unwrap().clone();
        let hit = divisors
            .iter()
            .find(|g| g.leading_term().unwrap().divides(&lt));
        match hit {
            Some(g) => {
                let t = lt.checked_div(g.leading_term().unwrap()).unwrap();
                let c = field.div(&lc, g.leading_coeff().unwrap());
                rest = rest.sub_scaled(&c, &t, g);
            }
            None => remainder.extend(rest.pop_leading()),
        }
    }
    FieldPolynomial::from_terms(field, f.shape(), remainder).expect("terms share the shape")
}

pub fn s_polynomial<F: Field>(
    f: &FieldPolynomial<F>,
    g: &FieldPolynomial<F>,
) -> FieldPolynomial<F> {
    let (Some(a), Some(b)) = (f.leading_term(), g.leading_term()) else {
        return FieldPolynomial::zero(f.field().clone(), f.shape());
    };
    let field = f.field();
    let l = a.lcm(b);
    let fa = FieldPolynomial::zero(field.clone(), f.shape()).sub_scaled(
        &field.neg(&field.inv(f.leading_coeff().unwrap())),
        &l.checked_div(a).unwrap(),
        f,
    );
    fa.sub_scaled(
        &field.inv(g.leading_coeff().unwrap()),
        &l.checked_div(b).unwrap(),
        g,
    )
}

/// Counters from one Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchbergerStats {
    /// S-polynomials actually formed and reduced.
    pub spairs: usize,
    pub skipped_product: usize,
    pub skipped_chain: usize,
    /// Nonzero remainders added to the basis.
    pub added: usize,
}

/// A reduced Gröbner basis for τ: monic, sorted by decreasing leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    shape: GridShape,
    basis: Vec<FieldPolynomial<F>>,
    stats: BuchbergerStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn basis(&self) -> &[FieldPolynomial<F>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn stats(&self) -> BuchbergerStats {
        self.stats
    }

    pub fn leading_terms(&self) -> Vec<GridMonomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term().unwrap().clone())
            .collect()
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::minimal_of(self.shape, self.leading_terms())
    }

    pub fn reduce(&self, f: &FieldPolynomial<F>) -> FieldPolynomial<F> {
        reduce(f, &self.basis)
    }
}

pub fn initial_ideal<F: Field>(g: &GroebnerBasis<F>) -> MonomialIdeal {
    g.initial_ideal()
}

/// Pair queue key: lcm degree, then lcm ascending in τ, then indices.
type PairKey = (u32, Vec<u16>, usize, usize);

pub fn buchberger<F: Field>(
    gens: &[FieldPolynomial<F>],
    opts: &Options,
) -> Result<GroebnerBasis<F>> {
    let Some(first) = gens.first() else {
        return Err(Error::Domain(
            "Buchberger needs at least one generator".into(),
        ));
    };
    let shape = first.shape();
    for g in gens {
        first.check_shape(g)?;
    }
    let limit = opts.caps.max_spairs;
    let mut basis: Vec<FieldPolynomial<F>> = Vec::new();
    let mut stats = BuchbergerStats::default();
    let mut queue: BTreeSet<PairKey> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<FieldPolynomial<F>>,
                queue: &mut BTreeSet<PairKey>,
                pending: &mut HashSet<(usize, usize)>,
                p: FieldPolynomial<F>| {
        let j = basis.len();
        let lt = p.leading_term().unwrap().clone();
        basis.push(p);
        for (i, g) in basis[..j].iter().enumerate() {
            let l = g.leading_term().unwrap().lcm(&lt);
            queue.insert((l.degree(), l.exponents().to_vec(), i, j));
            pending.insert((i, j));
        }
    };

    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            push(&mut basis, &mut queue, &mut pending, r.monic());
        }
    }

    while let Some(key) = queue.pop_first() {
        let (_, lcm_exps, i, j) = key;
        pending.remove(&(i, j));
        let (a, b) = (
            basis[i].leading_term().unwrap(),
            basis[j].leading_term().unwrap(),
        );
        if a.gcd(b).is_one() {
            stats.skipped_product += 1;
            continue;
        }
        let ordered = |x: usize, y: usize| if x < y { (x, y) } else { (y, x) };
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
                && basis[k]
                    .leading_term()
                    .unwrap()
                    .exponents()
                    .iter()
                    .zip(&lcm_exps)
                    .all(|(x, y)| x <= y)
        });
        if chained {
            stats.skipped_chain += 1;
            continue;
        }
        if stats.spairs >= limit {
            return Err(Error::SpairLimit {
                limit,
                processed: stats.spairs,
                basis_len: basis.len(),
                pending: queue.len() + 1,
            });
        }
        stats.spairs += 1;
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            stats.added += 1;
            push(&mut basis, &mut queue, &mut pending, r.monic());
        }
    }

    Ok(GroebnerBasis {
        shape,
        basis: interreduce(basis),
        stats,
    })
}

/// Reduced basis from any Gröbner basis.
fn interreduce<F: Field>(basis: Vec<FieldPolynomial<F>>) -> Vec<FieldPolynomial<F>> {
    let mut minimal: Vec<FieldPolynomial<F>> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lt = g.leading_term().unwrap();
        let redundant = basis.iter().enumerate().any(|(other, h)| {
            let lh = h.leading_term().unwrap();
            other != idx && lh.divides(lt) && (lh != lt || other < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<FieldPolynomial<F>> = (0..minimal.len())
        .map(|idx| {
            let g = &minimal[idx];
            let mut tail = g.clone();
            let (lt, lc) = tail.pop_leading().unwrap();
            let head = FieldPolynomial::monomial(g.field().clone(), lt);
            let others: Vec<FieldPolynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != idx)
                .map(|(_, h)| h.clone())
                .collect();
            reduce(&tail, &others)
                .sub_scaled(&g.field().neg(&lc), &GridMonomial::one(g.shape()), &head)
                .monic()
        })
        .collect();
    out.sort_by(|a, b| b.leading_term().unwrap().cmp_lex(a.leading_term().unwrap()));
    out
}

/// Buchberger's criterion without any pruning: every S-polynomial of the
/// list reduces to zero modulo the list.
pub fn is_groebner_basis<F: Field>(basis: &[FieldPolynomial<F>]) -> bool {
    let basis: Vec<_> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| reduce(&s_polynomial(&basis[i], &basis[j]), &basis).is_zero())
    })
}

/// Maximal minors of one window as polynomials, in diagonal order.
pub fn window_minors<F: Field>(
    field: &F,
    shape: GridShape,
    w: Window,
    caps: &Caps,
) -> Result<Vec<FieldPolynomial<F>>> {
    enumerate_selections(shape, w)
        .iter()
        .map(|sel| {
            minor_capped(shape, sel, caps.max_minor_rows)
                .map(|m| FieldPolynomial::from_minor(field.clone(), &m))
        })
        .collect()
}

/// Products of one maximal minor per window. Repeated windows only take
/// nondecreasing minor indices, so no product is listed twice.
pub fn natural_generators<F: Field>(
    field: &F,
    shape: GridShape,
    chain: &WindowChain,
    caps: &Caps,
) -> Result<Vec<FieldPolynomial<F>>> {
    let windows = chain.windows();
    let minors: Vec<Vec<FieldPolynomial<F>>> = windows
        .iter()
        .map(|&w| window_minors(field, shape, w, caps))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut partial: Vec<(usize, FieldPolynomial<F>)> = vec![(
        0,
        FieldPolynomial::monomial(field.clone(), GridMonomial::one(shape)),
    )];
    for (t, list) in minors.iter().enumerate() {
        let repeat = t > 0 && windows[t] == windows[t - 1];
        let mut next = Vec::new();
        for (last, p) in &partial {
            let start = if repeat { *last } else { 0 };
            for (idx, q) in list.iter().enumerate().skip(start) {
                next.push((idx, p.mul(q)));
            }
        }
        partial = next;
    }
    out.extend(partial.into_iter().map(|(_, p)| p));
    Ok(out)
}

/// Outcome of testing whether `ini(I_{k1 l1} ... I_{ks ls}) = J_{k1 l1} ... J_{ks ls}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub shape: GridShape,
    pub chain: Vec<[usize; 2]>,
    pub char: u64,
    #[serde(rename = "ini_equals_J")]
    pub ini_equals_j: bool,
    #[serde(rename = "natural_gens_are_GB")]
    pub natural_gens_are_gb: bool,
    pub spairs: usize,
    pub millis: u64,
    /// A reduced basis element whose leading term lies outside the diagonal
    /// product, when there is one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl ConjectureVerdict {
    pub fn holds(&self) -> bool {
        self.ini_equals_j && self.natural_gens_are_gb
    }
}

pub fn conjecture_check(
    shape: GridShape,
    chain: &WindowChain,
    char: Characteristic,
    opts: &Options,
) -> Result<ConjectureVerdict> {
    let caps = &opts.caps;
    if shape.rows() > caps.conjecture_max_rows
        || shape.cols() > caps.conjecture_max_cols
        || chain.len() > caps.conjecture_max_factors
    {
        return Err(Error::Resource(format!(
            "conjecture check limited to {} rows, {} columns and {} factors",
            caps.conjecture_max_rows, caps.conjecture_max_cols, caps.conjecture_max_factors
        )));
    }
    for w in chain.windows() {
        Window::new(shape, w.k(), w.l())?;
    }
    if char.is_rational() {
        check_with(Rationals, shape, chain, opts)
    } else {
        check_with(PrimeField::new(char)?, shape, chain, opts)
    }
}

fn check_with<F: Field>(
    field: F,
    shape: GridShape,
    chain: &WindowChain,
    opts: &Options,
) -> Result<ConjectureVerdict> {
    let started = Instant::now();
    let gens = natural_generators(&field, shape, chain, &opts.caps)?;
    let gb = buchberger(&gens, opts)?;
    let j = chain.diagonal_product(shape)?;
    let natural_leads: HashSet<GridMonomial> = gens
        .iter()
        .map(|g| g.leading_term().unwrap().clone())
        .collect();
    let ini = gb.initial_ideal();
    let ini_equals_j = ini == j;
    let natural_gens_are_gb = gb
        .basis()
        .iter()
        .all(|g| natural_leads.contains(g.leading_term().unwrap()));
    let witness = gb
        .basis()
        .iter()
        .find(|g| !j.contains(g.leading_term().unwrap()))
        .map(|g| g.to_string());
    Ok(ConjectureVerdict {
        shape,
        chain: chain.windows().iter().map(|w| [w.k(), w.l()]).collect(),
        char: field.characteristic().value(),
        ini_equals_j,
        natural_gens_are_gb,
        spairs: gb.stats().spairs,
        millis: started.elapsed().as_millis() as u64,
        witness,
    })
}
