//! Strategies and property bodies shared by the property tests and the
//! acceptance target.

use std::cmp::Ordering;

use diagideal::grid::{enumerate_selections, ColumnSelection};
use diagideal::ideal::minimalize;
use diagideal::linquot::{redistribute, DiagonalFactorization};
use diagideal::{GridMonomial, GridShape, MonomialIdeal, TermOrder, Window, WindowChain};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Grids up to 3x5, so exponents fit in a short vector.
pub fn shape() -> impl Strategy<Value = GridShape> {
    (1usize..=3, 0usize..=2).prop_map(|(m, d)| GridShape::new(m, m + d).unwrap())
}

fn monomial_in(shape: GridShape, max_exp: u16) -> impl Strategy<Value = GridMonomial> {
    proptest::collection::vec(0..=max_exp, shape.num_vars()).prop_map(move |exps| {
        let triples: Vec<_> = exps
            .iter()
            .enumerate()
            .map(|(r, &e)| (r / shape.cols() + 1, r % shape.cols() + 1, e))
            .collect();
        GridMonomial::from_triples(shape, &triples).unwrap()
    })
}

fn gens_in(shape: GridShape) -> impl Strategy<Value = Vec<GridMonomial>> {
    proptest::collection::vec(monomial_in(shape, 2), 0..6)
}

fn ideal_in(shape: GridShape) -> impl Strategy<Value = MonomialIdeal> {
    gens_in(shape).prop_map(move |g| minimalize(shape, g).unwrap())
}

/// `(I, f, h)` on a common grid.
pub fn colon_case() -> impl Strategy<Value = (MonomialIdeal, GridMonomial, GridMonomial)> {
    shape().prop_flat_map(|s| (ideal_in(s), monomial_in(s, 2), monomial_in(s, 3)))
}

pub fn sum_case() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal, GridMonomial)> {
    shape().prop_flat_map(|s| (ideal_in(s), ideal_in(s), monomial_in(s, 2)))
}

pub fn gens_case() -> impl Strategy<Value = (GridShape, Vec<GridMonomial>)> {
    shape().prop_flat_map(|s| (Just(s), gens_in(s)))
}

pub fn triple_case() -> impl Strategy<Value = [GridMonomial; 3]> {
    shape().prop_flat_map(|s| [monomial_in(s, 2), monomial_in(s, 2), monomial_in(s, 2)])
}

/// A sorted chain on a grid up to 3x8 with up to three windows, plus one
/// diagonal per window.
pub fn redistribute_case() -> impl Strategy<Value = (GridShape, WindowChain, Vec<GridMonomial>)> {
    (1usize..=3, 0usize..=6, 1usize..=3)
        .prop_flat_map(|(m, d, s)| {
            let n = (m + d).max(2);
            (
                Just(GridShape::new(m, n).unwrap()),
                proptest::collection::vec((any::<u32>(), any::<u32>(), any::<u32>()), s),
            )
        })
        .prop_map(|(shape, picks)| {
            let (m, n) = (shape.rows(), shape.cols());
            let k_max = (n - m + 1).min(n - 1);
            let mut ks: Vec<usize> = picks.iter().map(|p| 1 + p.0 as usize % k_max).collect();
            ks.sort_unstable();
            let mut prev_l = 0;
            let mut windows = Vec::new();
            let mut gs = Vec::new();
            for (&k, p) in ks.iter().zip(&picks) {
                let lo = (k + m - 1).max(k + 1).max(prev_l);
                let l = lo + p.1 as usize % (n - lo + 1);
                prev_l = l;
                let w = Window::new(shape, k, l).unwrap();
                let sels = enumerate_selections(shape, w);
                gs.push(sels[p.2 as usize % sels.len()].diagonal(shape));
                windows.push(w);
            }
            (shape, WindowChain::new(windows).unwrap(), gs)
        })
}

pub fn colon_defining_property(
    (ideal, f, h): (MonomialIdeal, GridMonomial, GridMonomial),
) -> Result<(), TestCaseError> {
    let colon = ideal.colon(&f);
    prop_assert_eq!(colon.contains(&h), ideal.contains(&h.mul(&f)));
    for g in colon.generators() {
        prop_assert!(ideal.contains(&g.mul(&f)));
    }
    Ok(())
}

pub fn colon_distributes_over_sum(
    (a, b, f): (MonomialIdeal, MonomialIdeal, GridMonomial),
) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.sum(&b).colon(&f), a.colon(&f).sum(&b.colon(&f)));
    Ok(())
}

pub fn minimalize_is_idempotent(
    (shape, gens): (GridShape, Vec<GridMonomial>),
) -> Result<(), TestCaseError> {
    let once = minimalize(shape, gens.clone()).unwrap();
    let twice = minimalize(shape, once.generators().to_vec()).unwrap();
    prop_assert_eq!(&once, &twice);
    for g in &gens {
        prop_assert!(once.contains(g));
    }
    for a in once.generators() {
        for b in once.generators() {
            prop_assert!(a == b || !a.divides(b));
        }
    }
    Ok(())
}

pub fn tau_is_a_term_order([a, b, c]: [GridMonomial; 3]) -> Result<(), TestCaseError> {
    let tau = TermOrder::new(a.shape());
    let ab = tau.compare(&a, &b).unwrap();
    prop_assert_eq!(ab, b.cmp_lex(&a).reverse());
    prop_assert_eq!(ab == Ordering::Equal, a == b);
    let bc = b.cmp_lex(&c);
    if ab != Ordering::Greater && bc != Ordering::Greater {
        prop_assert_ne!(a.cmp_lex(&c), Ordering::Greater);
    }
    prop_assert_eq!(a.mul(&c).cmp_lex(&b.mul(&c)), ab);
    prop_assert_ne!(a.cmp_lex(&GridMonomial::one(a.shape())), Ordering::Less);
    Ok(())
}

pub fn redistribute_invariants(
    (shape, chain, gs): (GridShape, WindowChain, Vec<GridMonomial>),
) -> Result<(), TestCaseError> {
    let fact = DiagonalFactorization::new(shape, &chain, &gs).unwrap();
    let hs = redistribute(shape, &chain, &fact).unwrap();
    let product = |ms: &[GridMonomial]| ms.iter().fold(GridMonomial::one(shape), |p, m| p.mul(m));
    prop_assert_eq!(product(&gs), product(&hs));
    for (h, &w) in hs.iter().zip(chain.windows()) {
        let sel = ColumnSelection::from_diagonal(h);
        prop_assert!(sel.is_some(), "{} is not a diagonal", h);
        let sel = sel.unwrap();
        prop_assert!(sel.cols().windows(2).all(|p| p[0] < p[1]));
        prop_assert!(sel.within(w), "{} outside ({})", h, w);
    }
    Ok(())
}
