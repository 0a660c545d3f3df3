//! Sparse polynomials over an exact field, terms kept in decreasing τ order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::{GridShape, MinorPolynomial};
use crate::monomial::GridMonomial;

#[derive(Clone, Debug)]
pub struct FieldPolynomial<F: Field> {
    field: F,
    shape: GridShape,
    /// Nonzero coefficients only, strictly decreasing in τ.
    terms: Vec<(GridMonomial, F::Elem)>,
}

impl<F: Field> PartialEq for FieldPolynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.terms == other.terms
    }
}

impl<F: Field> FieldPolynomial<F> {
    pub fn zero(field: F, shape: GridShape) -> Self {
        FieldPolynomial {
            field,
            shape,
            terms: Vec::new(),
        }
    }

    pub fn monomial(field: F, m: GridMonomial) -> Self {
        let one = field.one();
        FieldPolynomial {
            field,
            shape: m.shape(),
            terms: vec![(m, one)],
        }
    }

    /// Collects like terms and drops zeros; the input may be in any order.
    pub fn from_terms(
        field: F,
        shape: GridShape,
        terms: Vec<(GridMonomial, F::Elem)>,
    ) -> Result<Self> {
        let mut terms = terms;
        for (m, _) in &terms {
            shape.check(m.shape())?;
        }
        terms.sort_by(|a, b| b.0.cmp_lex(&a.0));
        let mut out: Vec<(GridMonomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == m => *acc = field.add(acc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Ok(FieldPolynomial {
            field,
            shape,
            terms: out,
        })
    }

    pub fn from_minor(field: F, minor: &MinorPolynomial) -> Self {
        let shape = minor.leading_term().shape();
        let terms = minor
            .terms()
            .iter()
            .map(|(sign, m)| (m.clone(), field.from_i64(i64::from(*sign))))
            .collect();
        // minor terms are already distinct and sorted
        let mut p = FieldPolynomial {
            field,
            shape,
            terms,
        };
        p.terms.retain(|(_, c)| !p.field.is_zero(c));
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn terms(&self) -> &[(GridMonomial, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&GridMonomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(GridMonomial, F::Elem)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| self.field.is_one(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return FieldPolynomial::zero(self.field.clone(), self.shape);
        }
        FieldPolynomial {
            field: self.field.clone(),
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !self.field.is_one(c) => self.scale(&self.field.inv(c)),
            _ => self.clone(),
        }
    }

    /// `self - c * t * g`, by a single merge.
    pub fn sub_scaled(&self, c: &F::Elem, t: &GridMonomial, g: &Self) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(m, k)| (m.mul(t), f.mul(k, c)))
            .peekable();
        loop {
            let order = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => x.0.cmp_lex(&y.0),
            };
            match order {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (m, k) = b.next().unwrap();
                    out.push((m, f.neg(&k)));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let d = f.sub(x, &y);
                    if !f.is_zero(&d) {
                        out.push((m.clone(), d));
                    }
                }
            }
        }
        FieldPolynomial {
            field: f.clone(),
            shape: self.shape,
            terms: out,
        }
    }

    pub fn sub(&self, g: &Self) -> Self {
        self.sub_scaled(&self.field.one(), &GridMonomial::one(self.shape), g)
    }

    pub fn mul(&self, g: &Self) -> Self {
        let mut acc = FieldPolynomial::zero(self.field.clone(), self.shape);
        let minus_one = self.field.neg(&self.field.one());
        for (m, c) in &self.terms {
            acc = acc.sub_scaled(&self.field.mul(c, &minus_one), m, g);
        }
        acc
    }

    pub fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for FieldPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = self.field.render(c);
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
