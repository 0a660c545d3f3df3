//! Graded Betti numbers and regularity of monomial ideals.
//!
//! The homology oracle uses the upper Koszul simplicial complex: for a
//! multidegree `b`, `K^b(I)` has a face for every squarefree `x^s` with
//! `b / x^s` in `I`, and `beta_{i,b}(I) = dim H~_{i-1}(K^b(I))`. Only lcms of
//! generator subsets can carry nonzero Betti numbers, so those are the only
//! multidegrees visited.
//!
//! For ideals with linear quotients there is also the mapping-cone count
//! `beta_i = sum_u C(r_u, i)`, with `r_u` the number of variables generating
//! the u-th colon.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde_json::json;

use crate::caps::Options;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::Characteristic;
use crate::grid::binomial;
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::linquot::quotient_chain;
use crate::monomial::GridMonomial;

/// `beta_{i,j}` of an ideal (not of the quotient ring).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    char: Characteristic,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(char: Characteristic) -> Self {
        BettiTable {
            char,
            entries: BTreeMap::new(),
        }
    }

    pub fn characteristic(&self) -> Characteristic {
        self.char
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Total Betti numbers `beta_0, beta_1, ...`.
    pub fn totals(&self) -> Vec<u64> {
        let len = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    /// `max { j - i : beta_{i,j} != 0 }`; `None` for the zero ideal.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j as i64 - i as i64).max()
    }

    /// Same numbers, ignoring the characteristic label.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .entries()
            .map(|(i, j, beta)| json!({"i": i, "j": j, "beta": beta}))
            .collect();
        json!({"char": self.char.value(), "rows": rows, "reg": self.regularity()})
    }
}

/// Betti diagram with rows indexed by `j - i` and columns by `i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.totals();
        if totals.is_empty() {
            return writeln!(f, "zero ideal");
        }
        let width = self
            .entries
            .values()
            .map(|b| b.to_string().len())
            .max()
            .unwrap_or(1)
            .max(totals.len().to_string().len());
        write!(f, "{:>7}", "")?;
        for i in 0..totals.len() {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for t in &totals {
            write!(f, " {t:>width$}")?;
        }
        writeln!(f)?;
        let lo = self.entries.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let hi = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        for row in lo..=hi {
            write!(f, "{:>7}", format!("{row}:"))?;
            for i in 0..totals.len() {
                match self.get(i, i + row) {
                    0 => write!(f, " {:>width$}", ".")?,
                    b => write!(f, " {b:>width$}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Upper Koszul simplicial complex of a monomial ideal at one multidegree.
/// Faces are bitmasks over the support variables of the multidegree.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    multidegree: GridMonomial,
    vertices: Vec<usize>,
    /// `faces[d]` lists the faces with `d` vertices; `faces[0]` is `[0]`
    /// (the empty face) whenever the complex is nonvoid.
    faces: Vec<Vec<u64>>,
}

impl KoszulComplex {
    pub fn build(ideal: &MonomialIdeal, b: &GridMonomial) -> Result<Self> {
        ideal.shape().check(b.shape())?;
        let vertices = b.support_ranks();
        if vertices.len() > 64 {
            return Err(Error::Resource(format!(
                "multidegree {b} has {} support variables (limit 64)",
                vertices.len()
            )));
        }
        let mut faces: Vec<Vec<u64>> = Vec::new();
        if ideal.contains(b) {
            // faces are closed under subsets, so a depth-first search over
            // increasing vertex indices finds them all
            let mut stack = vec![(0u64, 0usize, b.exponents().to_vec())];
            while let Some((mask, next, exps)) = stack.pop() {
                let size = mask.count_ones() as usize;
                if faces.len() <= size {
                    faces.resize(size + 1, Vec::new());
                }
                faces[size].push(mask);
                for (t, &r) in vertices.iter().enumerate().skip(next) {
                    let mut e = exps.clone();
                    e[r] -= 1;
                    let candidate = GridMonomial::from_exponents(b.shape(), e);
                    if ideal.contains(&candidate) {
                        stack.push((mask | (1 << t), t + 1, candidate.exponents().to_vec()));
                    }
                }
            }
            for layer in &mut faces {
                layer.sort_unstable();
            }
        }
        Ok(KoszulComplex {
            multidegree: b.clone(),
            vertices,
            faces,
        })
    }

    pub fn multidegree(&self) -> &GridMonomial {
        &self.multidegree
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// The void complex (no faces at all): `b` is not in the ideal.
    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Face counts by number of vertices.
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// `sum_{q >= -1} (-1)^q f_q`, with `f_q` the faces of dimension `q`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, layer)| {
                let sign = if d % 2 == 1 { 1 } else { -1 };
                sign * layer.len() as i64
            })
            .sum()
    }

    /// Boundary from faces with `d` vertices to faces with `d - 1`.
    fn boundary(&self, d: usize) -> Vec<Vec<i64>> {
        let targets = &self.faces[d - 1];
        let sources = &self.faces[d];
        let mut m = vec![vec![0i64; sources.len()]; targets.len()];
        for (col, &face) in sources.iter().enumerate() {
            let mut sign = 1;
            let mut rest = face;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let row = targets
                    .binary_search(&(face & !bit))
                    .expect("complex is closed under subsets");
                m[row][col] = sign;
                sign = -sign;
            }
        }
        m
    }

    /// `out[d] = dim H~_{d-1}`, for `d` from 0 (the (-1)-dimensional group)
    /// up to the largest face size.
    pub fn reduced_homology(&self, char: Characteristic) -> Vec<u64> {
        let top = self.faces.len();
        let ranks: Vec<usize> = (0..=top)
            .map(|d| {
                if d == 0 || d >= top {
                    0
                } else {
                    linalg::rank(&self.boundary(d), char)
                }
            })
            .collect();
        (0..top)
            .map(|d| (self.faces[d].len() - ranks[d] - ranks[d + 1]) as u64)
            .collect()
    }
}

/// Betti numbers of one multidegree: `betti[i] = beta_{i,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeBetti {
    pub multidegree: GridMonomial,
    pub betti: Vec<u64>,
    pub reduced_euler: i64,
}

impl MultidegreeBetti {
    /// `sum_i (-1)^i beta_{i,b} = -chi~(K^b)`.
    pub fn euler_consistent(&self) -> bool {
        let alt: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        alt == -self.reduced_euler
    }
}

/// All distinct lcms of nonempty generator subsets.
pub fn lcm_candidates(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<GridMonomial>> {
    let mut seen: HashSet<GridMonomial> = HashSet::new();
    let mut all: Vec<GridMonomial> = Vec::new();
    for g in ideal.generators() {
        let mut fresh = Vec::new();
        if !seen.contains(g) {
            fresh.push(g.clone());
        }
        for x in &all {
            let l = x.lcm(g);
            if !seen.contains(&l) {
                fresh.push(l);
            }
        }
        for l in fresh {
            if seen.insert(l.clone()) {
                all.push(l);
                if all.len() > cap {
                    return Err(Error::Resource(format!("more than {cap} lcm multidegrees")));
                }
            }
        }
    }
    all.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp_lex(a)));
    Ok(all)
}

pub fn multigraded_betti(
    ideal: &MonomialIdeal,
    char: Characteristic,
    opts: &Options,
) -> Result<Vec<MultidegreeBetti>> {
    if ideal.is_zero() {
        return Err(Error::Domain(
            "the zero ideal has no resolution to compute".into(),
        ));
    }
    if ideal.len() > opts.caps.max_oracle_gens {
        return Err(Error::Resource(format!(
            "{} generators exceed the homology oracle cap of {}",
            ideal.len(),
            opts.caps.max_oracle_gens
        )));
    }
    let candidates = lcm_candidates(ideal, opts.caps.max_lcm_candidates)?;
    let per_degree = exec::try_map(opts.exec, &candidates, |b| {
        let complex = KoszulComplex::build(ideal, b)?;
        Ok::<_, Error>(MultidegreeBetti {
            multidegree: b.clone(),
            betti: complex.reduced_homology(char),
            reduced_euler: complex.reduced_euler_characteristic(),
        })
    })?;
    Ok(per_degree
        .into_iter()
        .filter(|m| m.betti.iter().any(|&b| b > 0))
        .collect())
}

/// Graded Betti table from the homology oracle.
pub fn betti_table(
    ideal: &MonomialIdeal,
    char: Characteristic,
    opts: &Options,
) -> Result<BettiTable> {
    let mut table = BettiTable::new(char);
    for m in multigraded_betti(ideal, char, opts)? {
        let j = m.multidegree.degree() as usize;
        for (i, &b) in m.betti.iter().enumerate() {
            table.add(i, j, b);
        }
    }
    Ok(table)
}

/// Betti table from the linear-quotient colon sizes. Requires a linear
/// quotient certificate and generator degrees nondecreasing along the order.
pub fn mapping_cone_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let chain = quotient_chain(ideal)?;
    if !chain.has_linear_quotients() {
        return Err(Error::Domain(
            "the ideal does not have linear quotients in decreasing order".into(),
        ));
    }
    let degrees: Vec<usize> = chain
        .generators()
        .iter()
        .map(|g| g.degree() as usize)
        .collect();
    if degrees.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::Domain(
            "generator degrees decrease along the quotient order".into(),
        ));
    }
    let mut table = BettiTable::new(Characteristic::RATIONAL);
    for (r, d) in chain.colon_sizes().into_iter().zip(degrees) {
        for i in 0..=r {
            table.add(i, d + i, binomial(r, i) as u64);
        }
    }
    Ok(table)
}

/// Castelnuovo-Mumford regularity of the ideal. Uses the mapping cone when
/// linear quotients certify, otherwise the homology oracle over `Q`.
pub fn regularity(ideal: &MonomialIdeal, opts: &Options) -> Result<i64> {
    if ideal.is_zero() {
        return Err(Error::Domain("the zero ideal has no regularity".into()));
    }
    let table = match mapping_cone_betti(ideal) {
        Ok(t) => t,
        Err(Error::Domain(_)) => betti_table(ideal, Characteristic::RATIONAL, opts)?,
        Err(e) => return Err(e),
    };
    Ok(table
        .regularity()
        .expect("nonzero ideal has a nonempty table"))
}

pub fn has_linear_resolution(ideal: &MonomialIdeal, opts: &Options) -> Result<bool> {
    let d = ideal.generation_degree().ok_or_else(|| {
        Error::Domain("linear resolution is only defined for equigenerated ideals".into())
    })?;
    Ok(regularity(ideal, opts)? == i64::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{diagonal_ideal, GridShape, Window};

    fn shape(m: usize, n: usize) -> GridShape {
        GridShape::new(m, n).unwrap()
    }

    fn ideal(s: GridShape, t: &str) -> MonomialIdeal {
        MonomialIdeal::parse(s, t).unwrap()
    }

    fn q() -> Characteristic {
        Characteristic::RATIONAL
    }

    fn opts() -> Options {
        Options::sequential()
    }

    #[test]
    fn remark_ideal_table() {
        let s = shape(1, 3);
        let i = ideal(s, "<x[1,1]*x[1,2], x[1,1]*x[1,3], x[1,2]^2, x[1,2]*x[1,3]>");
        let t = betti_table(&i, q(), &opts()).unwrap();
        assert_eq!(t.totals(), [4, 4, 1]);
        assert_eq!(t.get(0, 2), 4);
        assert_eq!(t.get(1, 3), 4);
        assert_eq!(t.get(2, 4), 1);
        assert_eq!(t.regularity(), Some(2));
        let mc = mapping_cone_betti(&i).unwrap();
        assert!(mc.same_numbers(&t));
    }

    #[test]
    fn principal_and_variable_ideals() {
        let s = shape(2, 2);
        let t = betti_table(&ideal(s, "<x[1,1]*x[2,2]>"), q(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), [(0, 2, 1)]);
        assert_eq!(
            mapping_cone_betti(&ideal(s, "<x[1,1]*x[2,2]>"))
                .unwrap()
                .totals(),
            [1]
        );

        let s = shape(1, 3);
        let t = betti_table(&ideal(s, "<x[1,1], x[1,2]>"), q(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), [(0, 1, 2), (1, 2, 1)]);
        assert!(has_linear_resolution(&ideal(s, "<x[1,1]>"), &opts()).unwrap());
    }

    #[test]
    fn non_linear_example() {
        let s = shape(1, 4);
        let i = ideal(s, "<x[1,1]*x[1,2], x[1,3]*x[1,4]>");
        let t = betti_table(&i, q(), &opts()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), [(0, 2, 2), (1, 4, 1)]);
        assert_eq!(regularity(&i, &opts()).unwrap(), 3);
        assert!(!has_linear_resolution(&i, &opts()).unwrap());
        assert!(matches!(mapping_cone_betti(&i), Err(Error::Domain(_))));
    }

    #[test]
    fn j26_mapping_cone_and_oracle_agree() {
        let s = shape(3, 8);
        let j = diagonal_ideal(s, Window::new(s, 2, 6).unwrap()).unwrap();
        let mc = mapping_cone_betti(&j).unwrap();
        assert_eq!(mc.totals(), [10, 15, 6]);
        let oracle = betti_table(&j, q(), &opts()).unwrap();
        assert!(oracle.same_numbers(&mc));
        assert_eq!(regularity(&j, &opts()).unwrap(), 3);
        assert!(has_linear_resolution(&j, &opts()).unwrap());
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let s = shape(1, 3);
        let i = ideal(s, "<x[1,1], x[1,2]^2>");
        assert!(matches!(
            has_linear_resolution(&i, &opts()),
            Err(Error::Domain(_))
        ));
        assert_eq!(regularity(&i, &opts()).unwrap(), 2);
    }

    #[test]
    fn caps_are_enforced() {
        let s = shape(3, 8);
        let j = diagonal_ideal(s, Window::new(s, 1, 6).unwrap()).unwrap();
        assert_eq!(j.len(), 20);
        assert!(matches!(
            betti_table(&j, q(), &opts()),
            Err(Error::Resource(_))
        ));
        let mut o = opts();
        o.caps.max_oracle_gens = 20;
        o.caps.max_lcm_candidates = 10;
        assert!(matches!(betti_table(&j, q(), &o), Err(Error::Resource(_))));
    }

    #[test]
    fn koszul_complex_basics() {
        let s = shape(1, 3);
        let i = ideal(s, "<x[1,1], x[1,2]>");
        let b = GridMonomial::parse(s, "x[1,1]*x[1,2]").unwrap();
        let k = KoszulComplex::build(&i, &b).unwrap();
        // faces: {}, {1}, {2}; two points
        assert_eq!(k.face_counts(), [1, 2]);
        assert_eq!(k.reduced_homology(q()), [0, 1]);
        assert_eq!(k.reduced_euler_characteristic(), 1);
        let outside = GridMonomial::parse(s, "x[1,3]").unwrap();
        assert!(KoszulComplex::build(&i, &outside).unwrap().is_void());
    }

    #[test]
    fn euler_bookkeeping_and_rank_one() {
        let s = shape(2, 4);
        let j = diagonal_ideal(s, Window::new(s, 1, 4).unwrap()).unwrap();
        let multi = multigraded_betti(&j, q(), &opts()).unwrap();
        assert!(multi.iter().all(MultidegreeBetti::euler_consistent));
        let t = betti_table(&j, q(), &opts()).unwrap();
        let alt: i64 = t
            .totals()
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(alt, 1);
    }

    #[test]
    fn table_rendering() {
        let s = shape(1, 3);
        let i = ideal(s, "<x[1,1]*x[1,2], x[1,1]*x[1,3], x[1,2]^2, x[1,2]*x[1,3]>");
        let t = mapping_cone_betti(&i).unwrap();
        assert_eq!(
            t.to_string(),
            "        0 1 2\n total: 4 4 1\n     2: 4 4 1\n"
        );
        assert_eq!(
            t.to_json().to_string(),
            r#"{"char":0,"rows":[{"i":0,"j":2,"beta":4},{"i":1,"j":3,"beta":4},{"i":2,"j":4,"beta":1}],"reg":2}"#
        );
    }
}
