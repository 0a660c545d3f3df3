//! The m x n variable grid, column windows, the diagonal lex order, diagonal
//! monomials and maximal minors.
//!
//! All row and column indices in this module's public surface are 1-based.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::GridMonomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct GridShape {
    rows: usize,
    cols: usize,
}

impl GridShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || rows > cols {
            return Err(Error::InvalidShape { rows, cols });
        }
        Ok(GridShape { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.rows * self.cols
    }

    pub fn var(&self, row: usize, col: usize) -> Result<VarIndex> {
        if row == 0 || row > self.rows || col == 0 || col > self.cols {
            return Err(Error::OutOfBounds {
                shape: *self,
                row,
                col,
            });
        }
        Ok(VarIndex { row, col })
    }

    /// Variables in decreasing order of the diagonal lex order.
    pub fn vars(&self) -> impl Iterator<Item = VarIndex> {
        let cols = self.cols;
        (1..=self.rows).flat_map(move |row| (1..=cols).map(move |col| VarIndex { row, col }))
    }

    /// Every valid window of this grid, ordered by `(k, l)`.
    pub fn windows(&self) -> Vec<Window> {
        let mut out = Vec::new();
        for k in 1..=self.cols {
            for l in k + 1..=self.cols {
                if let Ok(w) = Window::new(*self, k, l) {
                    out.push(w);
                }
            }
        }
        out
    }

    pub(crate) fn rank(&self, v: VarIndex) -> usize {
        (v.row - 1) * self.cols + (v.col - 1)
    }

    pub(crate) fn unrank(&self, r: usize) -> VarIndex {
        VarIndex {
            row: r / self.cols + 1,
            col: r % self.cols + 1,
        }
    }

    pub fn check(&self, other: GridShape) -> Result<()> {
        if *self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: *self,
                right: other,
            })
        }
    }
}

impl TryFrom<[usize; 2]> for GridShape {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        GridShape::new(v[0], v[1])
    }
}

impl From<GridShape> for [usize; 2] {
    fn from(s: GridShape) -> Self {
        [s.rows, s.cols]
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A 1-based position `x[row,col]`, validated against a grid on creation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarIndex {
    row: usize,
    col: usize,
}

impl VarIndex {
    pub fn row(&self) -> usize {
        self.row
    }

    pub fn col(&self) -> usize {
        self.col
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

/// Consecutive columns `k..=l` wide enough to hold a maximal minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    k: usize,
    l: usize,
}

impl Window {
    pub fn new(shape: GridShape, k: usize, l: usize) -> Result<Self> {
        if k == 0 || k >= l || l > shape.cols || l - k + 1 < shape.rows {
            return Err(Error::WindowConstraint { shape, k, l });
        }
        Ok(Window { k, l })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn width(&self) -> usize {
        self.l - self.k + 1
    }

    pub fn contains_col(&self, c: usize) -> bool {
        self.k <= c && c <= self.l
    }

    /// Number of diagonal monomials: `C(l - k + 1, rows)`.
    pub fn diagonal_count(&self, shape: GridShape) -> usize {
        binomial(self.width(), shape.rows)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.k, self.l)
    }
}

/// Parses `k1,l1:k2,l2:...` into windows without checking their order.
pub fn parse_windows(shape: GridShape, text: &str) -> Result<Vec<Window>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty window list".into()));
    }
    text.split(':')
        .map(|part| {
            let (k, l) = part
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected `k,l`, got `{part}`")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad window bound in `{part}`")))
            };
            Window::new(shape, num(k)?, num(l)?)
        })
        .collect()
}

/// A nonempty sequence of windows with `k` and `l` both nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindowChain {
    windows: Vec<Window>,
}

impl WindowChain {
    pub fn new(windows: Vec<Window>) -> Result<Self> {
        if windows.is_empty() {
            return Err(Error::Domain(
                "a window chain needs at least one window".into(),
            ));
        }
        if let Some(position) = first_order_violation(&windows) {
            return Err(Error::WindowOrder { position });
        }
        Ok(WindowChain { windows })
    }

    pub fn single(w: Window) -> Self {
        WindowChain { windows: vec![w] }
    }

    pub fn parse(shape: GridShape, text: &str) -> Result<Self> {
        WindowChain::new(parse_windows(shape, text)?)
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn first(&self) -> Window {
        self.windows[0]
    }

    /// The chain without its first window, if anything is left.
    pub fn tail(&self) -> Option<WindowChain> {
        (self.windows.len() > 1).then(|| WindowChain {
            windows: self.windows[1..].to_vec(),
        })
    }

    /// Every sorted chain of `s` windows on the grid, in lexicographic order
    /// of the `(k, l)` sequence.
    pub fn enumerate_sorted(shape: GridShape, s: usize) -> Vec<WindowChain> {
        let windows = shape.windows();
        let mut out = Vec::new();
        let mut current: Vec<Window> = Vec::with_capacity(s);
        fn extend(all: &[Window], s: usize, current: &mut Vec<Window>, out: &mut Vec<WindowChain>) {
            if current.len() == s {
                out.push(WindowChain {
                    windows: current.clone(),
                });
                return;
            }
            for &w in all {
                if current.last().is_none_or(|p| p.k <= w.k && p.l <= w.l) {
                    current.push(w);
                    extend(all, s, current, out);
                    current.pop();
                }
            }
        }
        if s > 0 {
            extend(&windows, s, &mut current, &mut out);
        }
        out
    }

    /// `J_{k1 l1} * ... * J_{ks ls}`.
    pub fn diagonal_product(&self, shape: GridShape) -> Result<MonomialIdeal> {
        diagonal_product(shape, &self.windows)
    }
}

impl fmt::Display for WindowChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.windows.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// 1-based index of the first window that breaks sortedness.
pub fn first_order_violation(windows: &[Window]) -> Option<usize> {
    windows
        .windows(2)
        .position(|p| p[0].k > p[1].k || p[0].l > p[1].l)
        .map(|i| i + 2)
}

/// Product of the diagonal ideals of `windows`, in any order.
pub fn diagonal_product(shape: GridShape, windows: &[Window]) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(shape);
    for w in windows {
        acc = acc.product(&diagonal_ideal(shape, *w)?);
    }
    Ok(acc)
}

/// The diagonal lex order of a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermOrder {
    shape: GridShape,
}

impl TermOrder {
    pub fn new(shape: GridShape) -> Self {
        TermOrder { shape }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn compare(&self, a: &GridMonomial, b: &GridMonomial) -> Result<Ordering> {
        self.shape.check(a.shape())?;
        self.shape.check(b.shape())?;
        Ok(a.cmp_lex(b))
    }
}

/// Strictly increasing columns `c_1 < ... < c_m`, one per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSelection {
    cols: Vec<usize>,
}

impl ColumnSelection {
    pub fn new(shape: GridShape, cols: Vec<usize>) -> Result<Self> {
        if cols.len() != shape.rows {
            return Err(Error::Selection(format!(
                "need {} columns, got {}",
                shape.rows,
                cols.len()
            )));
        }
        if cols.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Selection(format!(
                "columns {cols:?} are not strictly increasing"
            )));
        }
        if cols[0] == 0 || cols[cols.len() - 1] > shape.cols {
            return Err(Error::Selection(format!(
                "columns {cols:?} fall outside 1..={}",
                shape.cols
            )));
        }
        Ok(ColumnSelection { cols })
    }

    /// Recovers the selection from a diagonal monomial, if it is one.
    pub fn from_diagonal(m: &GridMonomial) -> Option<Self> {
        let shape = m.shape();
        if m.degree() as usize != shape.rows || !m.is_squarefree() {
            return None;
        }
        let mut cols = Vec::with_capacity(shape.rows);
        for (row, v) in m.support().enumerate() {
            if v.row() != row + 1 {
                return None;
            }
            cols.push(v.col());
        }
        ColumnSelection::new(shape, cols).ok()
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Column of row `i` (1-based).
    pub fn col(&self, i: usize) -> usize {
        self.cols[i - 1]
    }

    pub fn within(&self, w: Window) -> bool {
        w.contains_col(self.cols[0]) && w.contains_col(self.cols[self.cols.len() - 1])
    }

    /// `x[1,c_1] * ... * x[m,c_m]`.
    pub fn diagonal(&self, shape: GridShape) -> GridMonomial {
        let mut exps = vec![0u16; shape.num_vars()];
        for (i, &c) in self.cols.iter().enumerate() {
            exps[i * shape.cols() + c - 1] = 1;
        }
        GridMonomial::from_exponents(shape, exps)
    }
}

/// All column selections of a window, lexicographically increasing, which is
/// decreasing order of their diagonal monomials.
pub fn enumerate_selections(shape: GridShape, w: Window) -> Vec<ColumnSelection> {
    let m = shape.rows;
    let mut out = Vec::with_capacity(w.diagonal_count(shape));
    let mut cur: Vec<usize> = (w.k..w.k + m).collect();
    loop {
        out.push(ColumnSelection { cols: cur.clone() });
        // advance to the next combination of `m` columns from `k..=l`
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < w.l - (m - 1 - i) {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Diagonal monomials of `Y_{kl}`, strictly decreasing in the diagonal order.
pub fn enumerate_diagonals(shape: GridShape, w: Window) -> Result<Vec<GridMonomial>> {
    let w = Window::new(shape, w.k, w.l)?;
    Ok(enumerate_selections(shape, w)
        .iter()
        .map(|s| s.diagonal(shape))
        .collect())
}

/// `J_{kl}`: the ideal generated by the diagonal monomials of `Y_{kl}`.
pub fn diagonal_ideal(shape: GridShape, w: Window) -> Result<MonomialIdeal> {
    let gens = enumerate_diagonals(shape, w)?;
    // distinct squarefree monomials of one degree never divide each other,
    // and the enumeration is already in canonical order
    Ok(MonomialIdeal::from_canonical(shape, gens))
}

/// A maximal minor `[c_1,...,c_m]` expanded over all m! permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorPolynomial {
    selection: ColumnSelection,
    terms: Vec<(i8, GridMonomial)>,
}

impl MinorPolynomial {
    pub fn selection(&self) -> &ColumnSelection {
        &self.selection
    }

    /// Signed terms, decreasing in the diagonal order.
    pub fn terms(&self) -> &[(i8, GridMonomial)] {
        &self.terms
    }

    pub fn leading_term(&self) -> &GridMonomial {
        &self.terms[0].1
    }
}

impl fmt::Display for MinorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sign, m)) in self.terms.iter().enumerate() {
            match (i, *sign < 0) {
                (0, true) => write!(f, "-{m}")?,
                (0, false) => write!(f, "{m}")?,
                (_, true) => write!(f, " - {m}")?,
                (_, false) => write!(f, " + {m}")?,
            }
        }
        Ok(())
    }
}

pub fn minor(shape: GridShape, selection: &ColumnSelection) -> Result<MinorPolynomial> {
    minor_capped(shape, selection, Caps::default().max_minor_rows)
}

pub fn minor_capped(
    shape: GridShape,
    selection: &ColumnSelection,
    max_rows: usize,
) -> Result<MinorPolynomial> {
    let m = shape.rows;
    if m > max_rows {
        return Err(Error::Resource(format!(
            "minor expansion limited to {max_rows} rows, grid has {m}"
        )));
    }
    let selection = ColumnSelection::new(shape, selection.cols.clone())?;
    let mut terms = Vec::new();
    for_each_permutation(m, |perm, odd| {
        let mut exps = vec![0u16; shape.num_vars()];
        for (i, &p) in perm.iter().enumerate() {
            exps[i * shape.cols() + selection.cols[p] - 1] = 1;
        }
        terms.push((
            if odd { -1 } else { 1 },
            GridMonomial::from_exponents(shape, exps),
        ));
    });
    terms.sort_by(|a, b| b.1.cmp_lex(&a.1));
    Ok(MinorPolynomial { selection, terms })
}

/// Heap's algorithm; each swap flips the parity.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize], bool)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    visit(&perm, odd);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            visit(&perm, odd);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: usize, n: usize) -> GridShape {
        GridShape::new(m, n).unwrap()
    }

    fn texts(ms: &[GridMonomial]) -> Vec<String> {
        ms.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn shape_and_window_validation() {
        assert!(GridShape::new(0, 3).is_err());
        assert!(GridShape::new(4, 3).is_err());
        let s = shape(3, 8);
        assert!(Window::new(s, 2, 6).is_ok());
        assert!(Window::new(s, 6, 6).is_err());
        assert!(Window::new(s, 6, 7).is_err(), "too narrow for 3 rows");
        assert!(Window::new(s, 0, 4).is_err());
        assert!(Window::new(s, 6, 9).is_err());
        assert!(s.var(3, 8).is_ok());
        assert!(s.var(4, 1).is_err());
    }

    #[test]
    fn diagonals_of_j26_in_listing_order() {
        let s = shape(3, 8);
        let d = enumerate_diagonals(s, Window::new(s, 2, 6).unwrap()).unwrap();
        assert_eq!(
            texts(&d),
            [
                "x[1,2]*x[2,3]*x[3,4]",
                "x[1,2]*x[2,3]*x[3,5]",
                "x[1,2]*x[2,3]*x[3,6]",
                "x[1,2]*x[2,4]*x[3,5]",
                "x[1,2]*x[2,4]*x[3,6]",
                "x[1,2]*x[2,5]*x[3,6]",
                "x[1,3]*x[2,4]*x[3,5]",
                "x[1,3]*x[2,4]*x[3,6]",
                "x[1,3]*x[2,5]*x[3,6]",
                "x[1,4]*x[2,5]*x[3,6]",
            ]
        );
    }

    #[test]
    fn small_diagonal_cases() {
        let s = shape(2, 2);
        let d = enumerate_diagonals(s, Window::new(s, 1, 2).unwrap()).unwrap();
        assert_eq!(texts(&d), ["x[1,1]*x[2,2]"]);

        let s = shape(1, 3);
        let d = enumerate_diagonals(s, Window::new(s, 1, 3).unwrap()).unwrap();
        assert_eq!(texts(&d), ["x[1,1]", "x[1,2]", "x[1,3]"]);

        let s = shape(2, 3);
        let j = diagonal_ideal(s, Window::new(s, 1, 3).unwrap()).unwrap();
        assert_eq!(
            j.to_string(),
            "<x[1,1]*x[2,2], x[1,1]*x[2,3], x[1,2]*x[2,3]>"
        );

        let s = shape(1, 3);
        let j = diagonal_ideal(s, Window::new(s, 1, 2).unwrap()).unwrap();
        assert_eq!(j.to_string(), "<x[1,1], x[1,2]>");
    }

    #[test]
    fn invalid_window_is_rejected_by_enumeration() {
        let s = shape(3, 8);
        let bogus = Window { k: 5, l: 6 };
        assert!(matches!(
            enumerate_diagonals(s, bogus),
            Err(Error::WindowConstraint { .. })
        ));
    }

    #[test]
    fn diagonal_counts_and_minimality_exhaustive() {
        for m in 1..=4 {
            for n in m..=10 {
                let s = shape(m, n);
                for w in s.windows() {
                    let d = enumerate_diagonals(s, w).unwrap();
                    assert_eq!(d.len(), binomial(w.width(), m));
                    assert!(d
                        .windows(2)
                        .all(|p| p[0].cmp_lex(&p[1]) == Ordering::Greater));
                    let ideal = MonomialIdeal::from_generators(s, d.clone()).unwrap();
                    assert_eq!(
                        ideal.generators(),
                        &d[..],
                        "minimalize must be the identity"
                    );
                }
            }
        }
    }

    #[test]
    fn minors() {
        let s = shape(2, 2);
        let sel = ColumnSelection::new(s, vec![1, 2]).unwrap();
        assert_eq!(
            minor(s, &sel).unwrap().to_string(),
            "x[1,1]*x[2,2] - x[1,2]*x[2,1]"
        );

        let s = shape(1, 4);
        let sel = ColumnSelection::new(s, vec![3]).unwrap();
        assert_eq!(minor(s, &sel).unwrap().to_string(), "x[1,3]");

        assert!(ColumnSelection::new(shape(2, 4), vec![3, 2]).is_err());
        assert!(ColumnSelection::new(shape(2, 4), vec![1, 5]).is_err());
        assert!(ColumnSelection::new(shape(2, 4), vec![1]).is_err());
    }

    /// Independent oracle: sum over all m^m maps, keeping bijections with the
    /// sign from counting inversions.
    fn brute_minor(shape: GridShape, cols: &[usize]) -> Vec<(i8, String)> {
        let m = cols.len();
        let mut out = Vec::new();
        for code in 0..m.pow(m as u32) {
            let mut p = Vec::with_capacity(m);
            let mut c = code;
            for _ in 0..m {
                p.push(c % m);
                c /= m;
            }
            let mut seen = vec![false; m];
            if p.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                continue;
            }
            let inversions = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let triples: Vec<_> = (0..m).map(|i| (i + 1, cols[p[i]], 1)).collect();
            let mono = GridMonomial::from_triples(shape, &triples).unwrap();
            out.push((if inversions % 2 == 0 { 1 } else { -1 }, mono.to_string()));
        }
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    #[test]
    fn minor_matches_inversion_oracle() {
        let s = shape(3, 3);
        let sel = ColumnSelection::new(s, vec![1, 2, 3]).unwrap();
        let mp = minor(s, &sel).unwrap();
        assert_eq!(mp.terms().len(), 6);
        assert_eq!(mp.leading_term().to_string(), "x[1,1]*x[2,2]*x[3,3]");
        let mut got: Vec<(i8, String)> = mp
            .terms()
            .iter()
            .map(|(c, m)| (*c, m.to_string()))
            .collect();
        got.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(got, brute_minor(s, &[1, 2, 3]));

        let s = shape(4, 7);
        let sel = ColumnSelection::new(s, vec![1, 3, 4, 7]).unwrap();
        let mp = minor(s, &sel).unwrap();
        let mut got: Vec<(i8, String)> = mp
            .terms()
            .iter()
            .map(|(c, m)| (*c, m.to_string()))
            .collect();
        got.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(got, brute_minor(s, &[1, 3, 4, 7]));
    }

    #[test]
    fn minor_leading_term_is_the_diagonal() {
        for m in 1..=4 {
            let s = shape(m, m + 2);
            for sel in enumerate_selections(s, Window::new(s, 1, m + 2).unwrap()) {
                let mp = minor(s, &sel).unwrap();
                assert_eq!(mp.terms().len(), (1..=m).product::<usize>());
                assert_eq!(mp.leading_term(), &sel.diagonal(s));
                assert_eq!(mp.terms()[0].0, 1);
            }
        }
    }

    #[test]
    fn minor_cap_is_enforced() {
        let s = shape(7, 7);
        let sel = ColumnSelection::new(s, (1..=7).collect()).unwrap();
        assert!(matches!(minor(s, &sel), Err(Error::Resource(_))));
    }

    #[test]
    fn selection_diagonal_round_trip() {
        let s = shape(3, 8);
        for sel in enumerate_selections(s, Window::new(s, 1, 8).unwrap()) {
            assert_eq!(ColumnSelection::from_diagonal(&sel.diagonal(s)), Some(sel));
        }
        let not_diag = GridMonomial::parse(s, "x[1,3]*x[2,2]*x[3,4]").unwrap();
        assert_eq!(ColumnSelection::from_diagonal(&not_diag), None);
    }

    #[test]
    fn compare_examples() {
        let s = shape(2, 2);
        let t = TermOrder::new(s);
        let a = GridMonomial::parse(s, "x[1,1]*x[2,2]").unwrap();
        let b = GridMonomial::parse(s, "x[1,2]*x[2,1]").unwrap();
        assert_eq!(t.compare(&a, &b).unwrap(), Ordering::Greater);
        assert_eq!(t.compare(&a, &a).unwrap(), Ordering::Equal);

        let s3 = shape(3, 8);
        let t3 = TermOrder::new(s3);
        let f1 = GridMonomial::parse(s3, "x[1,2]*x[2,3]*x[3,4]").unwrap();
        let f2 = GridMonomial::parse(s3, "x[1,2]*x[2,3]*x[3,5]").unwrap();
        assert_eq!(t3.compare(&f1, &f2).unwrap(), Ordering::Greater);
        assert!(matches!(
            t.compare(&a, &f1),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn chains() {
        let s = shape(3, 9);
        assert!(WindowChain::parse(s, "1,5:3,7").is_ok());
        assert_eq!(
            WindowChain::parse(s, "3,7:1,5"),
            Err(Error::WindowOrder { position: 2 })
        );
        let s = shape(3, 8);
        assert_eq!(
            WindowChain::parse(s, "2,8:3,7"),
            Err(Error::WindowOrder { position: 2 })
        );
        assert!(WindowChain::parse(s, "2,x").is_err());
        assert!(WindowChain::new(vec![]).is_err());
        let c = WindowChain::parse(s, "1,4:2,6:2,8").unwrap();
        assert_eq!(c.to_string(), "1,4:2,6:2,8");
        assert_eq!(c.tail().unwrap().to_string(), "2,6:2,8");
    }

    #[test]
    fn sorted_chains_of_a_row() {
        let s = shape(1, 3);
        let chains: Vec<String> = WindowChain::enumerate_sorted(s, 2)
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            chains,
            ["1,2:1,2", "1,2:1,3", "1,2:2,3", "1,3:1,3", "1,3:2,3", "2,3:2,3"]
        );
        assert_eq!(WindowChain::enumerate_sorted(s, 1).len(), 3);
    }
}
