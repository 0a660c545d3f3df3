//! Monomials in the variables `x[i,j]` of an m x n grid.
//!
//! Exponents are stored densely in row-major variable rank, so that the
//! diagonal lex order is plain lexicographic comparison of the exponent
//! vectors: `x[1,1] > x[1,2] > ... > x[1,n] > x[2,1] > ... > x[m,n]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{GridShape, VarIndex};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridMonomial {
    shape: GridShape,
    exps: Vec<u16>,
}

impl GridMonomial {
    /// The unit monomial `1`.
    pub fn one(shape: GridShape) -> Self {
        GridMonomial {
            shape,
            exps: vec![0; shape.num_vars()],
        }
    }

    pub fn var(shape: GridShape, v: VarIndex) -> Self {
        let mut m = Self::one(shape);
        m.exps[shape.rank(v)] = 1;
        m
    }

    /// Builds a monomial from `(row, col, exponent)` triples; repeated
    /// variables accumulate.
    pub fn from_triples(shape: GridShape, triples: &[(usize, usize, u16)]) -> Result<Self> {
        let mut m = Self::one(shape);
        for &(row, col, e) in triples {
            let v = shape.var(row, col)?;
            m.exps[shape.rank(v)] += e;
        }
        Ok(m)
    }

    pub(crate) fn from_exponents(shape: GridShape, exps: Vec<u16>) -> Self {
        debug_assert_eq!(exps.len(), shape.num_vars());
        GridMonomial { shape, exps }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub(crate) fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, v: VarIndex) -> u16 {
        self.exps[self.shape.rank(v)]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Nonzero exponents in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (VarIndex, u16)> + '_ {
        let shape = self.shape;
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(move |(r, &e)| (shape.unrank(r), e))
    }

    pub fn support(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.iter().map(|(v, _)| v)
    }

    pub(crate) fn support_ranks(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(r, _)| r)
            .collect()
    }

    pub fn check_shape(&self, other: &GridMonomial) -> Result<()> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: self.shape,
                right: other.shape,
            })
        }
    }

    /// `self | other`. Both monomials must live on the same grid.
    pub fn divides(&self, other: &GridMonomial) -> bool {
        debug_assert_eq!(self.shape, other.shape);
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &GridMonomial) -> GridMonomial {
        debug_assert_eq!(self.shape, other.shape);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        GridMonomial::from_exponents(self.shape, exps)
    }

    pub fn gcd(&self, other: &GridMonomial) -> GridMonomial {
        debug_assert_eq!(self.shape, other.shape);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        GridMonomial::from_exponents(self.shape, exps)
    }

    pub fn lcm(&self, other: &GridMonomial) -> GridMonomial {
        debug_assert_eq!(self.shape, other.shape);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        GridMonomial::from_exponents(self.shape, exps)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &GridMonomial) -> Option<GridMonomial> {
        debug_assert_eq!(self.shape, other.shape);
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(GridMonomial::from_exponents(self.shape, exps))
    }

    /// `self / gcd(self, other)`: the generator of `(<self> : other)`.
    pub fn colon_by(&self, other: &GridMonomial) -> GridMonomial {
        debug_assert_eq!(self.shape, other.shape);
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        GridMonomial::from_exponents(self.shape, exps)
    }

    /// Comparison under the diagonal lex order.
    pub fn cmp_lex(&self, other: &GridMonomial) -> Ordering {
        debug_assert_eq!(self.shape, other.shape);
        self.exps.cmp(&other.exps)
    }

    /// Parses the text format `x[i,j]^e*x[k,l]` (or `1`).
    pub fn parse(shape: GridShape, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "1" {
            return Ok(Self::one(shape));
        }
        if text.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut m = Self::one(shape);
        for factor in text.split('*') {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let e: u16 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (v.trim(), e)
                }
                None => (factor, 1),
            };
            let inner = var
                .strip_prefix("x[")
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected x[i,j], got `{var}`")))?;
            let (i, j) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected x[i,j], got `{var}`")))?;
            let parse_idx = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index in `{var}`")))
            };
            let v = shape.var(parse_idx(i)?, parse_idx(j)?)?;
            m.exps[shape.rank(v)] += exp;
        }
        Ok(m)
    }
}

impl PartialOrd for GridMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grid shape first, then the diagonal lex order.
impl Ord for GridMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape
            .cmp(&other.shape)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for GridMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x[{},{}]", v.row(), v.col())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GridMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: usize, n: usize) -> GridShape {
        GridShape::new(m, n).unwrap()
    }

    #[test]
    fn text_format_is_row_major_with_powers() {
        let s = shape(3, 8);
        let m = GridMonomial::from_triples(s, &[(3, 4, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(m.to_string(), "x[1,2]*x[2,3]*x[3,4]");
        let sq = GridMonomial::from_triples(s, &[(1, 2, 2), (1, 3, 1)]).unwrap();
        assert_eq!(sq.to_string(), "x[1,2]^2*x[1,3]");
        assert_eq!(GridMonomial::one(s).to_string(), "1");
    }

    #[test]
    fn parse_round_trips_and_rejects_garbage() {
        let s = shape(3, 8);
        for text in ["x[1,2]*x[2,3]*x[3,4]", "x[1,2]^2*x[1,3]", "1", "x[3,8]^5"] {
            assert_eq!(GridMonomial::parse(s, text).unwrap().to_string(), text);
        }
        assert_eq!(
            GridMonomial::parse(s, " x[2,3] * x[1,2] ")
                .unwrap()
                .to_string(),
            "x[1,2]*x[2,3]"
        );
        assert!(GridMonomial::parse(s, "x[4,1]").is_err());
        assert!(GridMonomial::parse(s, "y[1,1]").is_err());
        assert!(GridMonomial::parse(s, "x[1,1]^").is_err());
        assert!(GridMonomial::parse(s, "").is_err());
    }

    #[test]
    fn arithmetic() {
        let s = shape(1, 3);
        let x = |j| GridMonomial::var(s, s.var(1, j).unwrap());
        let x1x2 = x(1).mul(&x(2));
        let x2x3 = x(2).mul(&x(3));
        assert_eq!(x1x2.gcd(&x2x3), x(2));
        assert_eq!(x1x2.lcm(&x2x3).to_string(), "x[1,1]*x[1,2]*x[1,3]");
        assert_eq!(x1x2.colon_by(&x2x3), x(1));
        assert_eq!(x1x2.checked_div(&x(2)), Some(x(1)));
        assert_eq!(x1x2.checked_div(&x(3)), None);
        assert_eq!(x1x2.degree(), 2);
        assert!(x1x2.is_squarefree());
        assert!(!x(2).mul(&x(2)).is_squarefree());
    }

    #[test]
    fn lex_ranks_first_row_variables_highest() {
        let s = shape(2, 2);
        let v = |i, j| GridMonomial::var(s, s.var(i, j).unwrap());
        assert_eq!(v(1, 1).cmp_lex(&v(1, 2)), Ordering::Greater);
        assert_eq!(v(1, 2).cmp_lex(&v(2, 1)), Ordering::Greater);
        assert_eq!(v(2, 1).cmp_lex(&v(2, 2)), Ordering::Greater);
        assert_eq!(v(2, 2).cmp_lex(&GridMonomial::one(s)), Ordering::Greater);
    }
}
