//! Monomial ideals kept in canonical form: minimal generators sorted
//! decreasing in the diagonal lex order.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridShape;
use crate::monomial::GridMonomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    shape: GridShape,
    gens: Vec<GridMonomial>,
}

impl MonomialIdeal {
    pub fn zero(shape: GridShape) -> Self {
        MonomialIdeal {
            shape,
            gens: Vec::new(),
        }
    }

    pub fn unit(shape: GridShape) -> Self {
        MonomialIdeal {
            shape,
            gens: vec![GridMonomial::one(shape)],
        }
    }

    pub fn from_generators(shape: GridShape, gens: Vec<GridMonomial>) -> Result<Self> {
        for g in &gens {
            shape.check(g.shape())?;
        }
        Ok(Self::minimal_of(shape, gens))
    }

    /// Caller guarantees the list is already canonical.
    pub(crate) fn from_canonical(shape: GridShape, gens: Vec<GridMonomial>) -> Self {
        debug_assert!(gens.windows(2).all(|p| p[0].cmp_lex(&p[1]).is_gt()));
        MonomialIdeal { shape, gens }
    }

    /// Canonical form of an arbitrary same-shape generator list.
    pub(crate) fn minimal_of(shape: GridShape, mut gens: Vec<GridMonomial>) -> Self {
        gens.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp_lex(a)));
        gens.dedup();
        // a monomial can only be divided by a distinct one of strictly lower degree
        let mut kept: Vec<GridMonomial> = Vec::new();
        let mut lower_degree_end = 0;
        let mut current_degree = None;
        for g in gens {
            let d = g.degree();
            if current_degree != Some(d) {
                current_degree = Some(d);
                lower_degree_end = kept.len();
            }
            if !kept[..lower_degree_end].iter().any(|h| h.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort_unstable_by(|a, b| b.cmp_lex(a));
        MonomialIdeal { shape, gens: kept }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn generators(&self) -> &[GridMonomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn contains(&self, g: &GridMonomial) -> bool {
        self.gens.iter().any(|h| h.divides(g))
    }

    /// Every minimal generator is a single variable. The zero ideal counts.
    pub fn is_generated_by_variables(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == 1)
    }

    /// The common degree of all generators, if there is one.
    pub fn generation_degree(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.shape, other.shape);
        let mut seen = HashSet::with_capacity(self.gens.len() * other.gens.len());
        let mut raw = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul(b);
                if seen.insert(p.clone()) {
                    raw.push(p);
                }
            }
        }
        Self::minimal_of(self.shape, raw)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        debug_assert_eq!(self.shape, other.shape);
        let raw = self.gens.iter().chain(&other.gens).cloned().collect();
        Self::minimal_of(self.shape, raw)
    }

    pub fn colon(&self, f: &GridMonomial) -> MonomialIdeal {
        colon_of_list(self.shape, &self.gens, f)
    }

    /// Parses `<g1, g2, ...>`; `<>` is the zero ideal.
    pub fn parse(shape: GridShape, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| Error::Parse(format!("expected <...>, got `{}`", text.trim())))?;
        if inner.trim().is_empty() {
            return Ok(Self::zero(shape));
        }
        // indices inside x[i,j] also contain commas
        let gens = split_top_level(inner)
            .into_iter()
            .map(|g| GridMonomial::parse(shape, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::minimal_of(shape, gens))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson::from(self)).expect("ideal json is always serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: IdealJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("ideal json: {e}")))?;
        raw.try_into()
    }
}

/// `(<gens> : f)` from any generator list, minimal or not.
pub(crate) fn colon_of_list(
    shape: GridShape,
    gens: &[GridMonomial],
    f: &GridMonomial,
) -> MonomialIdeal {
    let mut seen = HashSet::with_capacity(gens.len());
    let mut raw = Vec::with_capacity(gens.len());
    for g in gens {
        let q = g.colon_by(f);
        if q.is_one() {
            return MonomialIdeal::unit(shape);
        }
        if seen.insert(q.clone()) {
            raw.push(q);
        }
    }
    MonomialIdeal::minimal_of(shape, raw)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    shape: GridShape,
    gens: Vec<Vec<[usize; 3]>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(ideal: &MonomialIdeal) -> Self {
        IdealJson {
            shape: ideal.shape,
            gens: ideal
                .gens
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|(v, e)| [v.row(), v.col(), usize::from(e)])
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: IdealJson) -> Result<Self> {
        let gens = raw
            .gens
            .iter()
            .map(|g| {
                let triples: Vec<_> = g
                    .iter()
                    .map(|t| {
                        u16::try_from(t[2])
                            .map(|e| (t[0], t[1], e))
                            .map_err(|_| Error::Parse(format!("exponent {} too large", t[2])))
                    })
                    .collect::<Result<_>>()?;
                GridMonomial::from_triples(raw.shape, &triples)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal::minimal_of(raw.shape, gens))
    }
}

// Shape-checked operations on monomials and monomial ideals.

pub fn divides(a: &GridMonomial, b: &GridMonomial) -> Result<bool> {
    a.check_shape(b)?;
    Ok(a.divides(b))
}

pub fn membership(ideal: &MonomialIdeal, g: &GridMonomial) -> Result<bool> {
    ideal.shape.check(g.shape())?;
    Ok(ideal.contains(g))
}

pub fn minimalize(shape: GridShape, gens: Vec<GridMonomial>) -> Result<MonomialIdeal> {
    MonomialIdeal::from_generators(shape, gens)
}

pub fn product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.shape.check(b.shape)?;
    Ok(a.product(b))
}

pub fn sum(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.shape.check(b.shape)?;
    Ok(a.sum(b))
}

pub fn colon(ideal: &MonomialIdeal, f: &GridMonomial) -> Result<MonomialIdeal> {
    ideal.shape.check(f.shape())?;
    Ok(ideal.colon(f))
}

pub fn equals(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<bool> {
    a.shape.check(b.shape)?;
    Ok(a.gens == b.gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{diagonal_ideal, GridShape, Window};

    fn shape(m: usize, n: usize) -> GridShape {
        GridShape::new(m, n).unwrap()
    }

    fn mono(s: GridShape, t: &str) -> GridMonomial {
        GridMonomial::parse(s, t).unwrap()
    }

    fn ideal(s: GridShape, t: &str) -> MonomialIdeal {
        MonomialIdeal::parse(s, t).unwrap()
    }

    #[test]
    fn divides_examples() {
        let s = shape(3, 8);
        assert!(divides(&mono(s, "x[1,2]"), &mono(s, "x[1,2]*x[2,3]*x[3,4]")).unwrap());
        assert!(divides(&mono(s, "1"), &mono(s, "x[3,3]")).unwrap());
        let r = shape(1, 3);
        assert!(!divides(&mono(r, "x[1,2]^2"), &mono(r, "x[1,2]*x[1,3]")).unwrap());
        assert!(divides(&mono(r, "x[1,1]"), &mono(s, "x[1,1]")).is_err());
    }

    #[test]
    fn membership_examples() {
        let s = shape(3, 8);
        let j26 = diagonal_ideal(s, Window::new(s, 2, 6).unwrap()).unwrap();
        assert!(membership(&j26, &mono(s, "x[1,2]*x[2,3]*x[3,4]")).unwrap());
        assert!(!membership(&j26, &mono(s, "x[1,2]*x[2,3]*x[3,3]")).unwrap());
        assert!(!membership(&MonomialIdeal::zero(s), &mono(s, "x[1,1]")).unwrap());
    }

    #[test]
    fn minimalize_examples() {
        let s = shape(1, 3);
        let got = minimalize(
            s,
            vec![mono(s, "x[1,1]*x[1,2]"), mono(s, "x[1,1]*x[1,2]*x[1,3]")],
        )
        .unwrap();
        assert_eq!(got.to_string(), "<x[1,1]*x[1,2]>");
        assert!(minimalize(s, vec![]).unwrap().is_zero());
        let messy = vec![
            mono(s, "x[1,2]*x[1,3]"),
            mono(s, "x[1,2]^2"),
            mono(s, "x[1,1]*x[1,3]"),
            mono(s, "x[1,1]*x[1,2]"),
            mono(s, "x[1,2]^2*x[1,3]"),
            mono(s, "x[1,1]*x[1,2]"),
        ];
        assert_eq!(
            minimalize(s, messy).unwrap().to_string(),
            "<x[1,1]*x[1,2], x[1,1]*x[1,3], x[1,2]^2, x[1,2]*x[1,3]>"
        );
    }

    #[test]
    fn product_examples() {
        let s = shape(1, 3);
        let a = ideal(s, "<x[1,1], x[1,2]>");
        let b = ideal(s, "<x[1,2], x[1,3]>");
        assert_eq!(
            product(&a, &b).unwrap().to_string(),
            "<x[1,1]*x[1,2], x[1,1]*x[1,3], x[1,2]^2, x[1,2]*x[1,3]>"
        );
        assert_eq!(product(&a, &MonomialIdeal::unit(s)).unwrap(), a);
        assert!(product(&a, &MonomialIdeal::zero(s)).unwrap().is_zero());
    }

    #[test]
    fn colon_examples() {
        let s = shape(3, 8);
        let f1 = ideal(s, "<x[1,2]*x[2,3]*x[3,4]>");
        assert_eq!(
            colon(&f1, &mono(s, "x[1,2]*x[2,3]*x[3,5]"))
                .unwrap()
                .to_string(),
            "<x[3,4]>"
        );
        assert_eq!(colon(&f1, &mono(s, "1")).unwrap(), f1);
        let r = shape(1, 3);
        assert_eq!(
            colon(&ideal(r, "<x[1,2]^2>"), &mono(r, "x[1,2]"))
                .unwrap()
                .to_string(),
            "<x[1,2]>"
        );
        assert!(colon(&MonomialIdeal::zero(r), &mono(r, "x[1,1]"))
            .unwrap()
            .is_zero());
        assert!(colon(&f1, &mono(s, "x[1,2]*x[2,3]*x[3,4]*x[1,1]"))
            .unwrap()
            .is_unit());
    }

    #[test]
    fn sum_and_distributivity_examples() {
        let s = shape(1, 3);
        let a = ideal(s, "<x[1,1]>");
        let b = ideal(s, "<x[1,2]>");
        assert_eq!(sum(&a, &b).unwrap().to_string(), "<x[1,1], x[1,2]>");
        let p = ideal(s, "<x[1,1]*x[1,2]>");
        let q = ideal(s, "<x[1,2]*x[1,3]>");
        let x2 = mono(s, "x[1,2]");
        let lhs = sum(&p, &q).unwrap().colon(&x2);
        let rhs = p.colon(&x2).sum(&q.colon(&x2));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "<x[1,1], x[1,3]>");
    }

    #[test]
    fn equals_examples() {
        let s = shape(1, 3);
        let a = minimalize(s, vec![mono(s, "x[1,1]*x[1,2]"), mono(s, "x[1,1]")]).unwrap();
        assert!(equals(&a, &ideal(s, "<x[1,1]>")).unwrap());
        assert!(!equals(&ideal(s, "<x[1,1]>"), &ideal(s, "<x[1,2]>")).unwrap());
        assert!(equals(&a, &ideal(shape(1, 4), "<x[1,1]>")).is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let s = shape(3, 8);
        let j = diagonal_ideal(s, Window::new(s, 2, 6).unwrap()).unwrap();
        assert_eq!(ideal(s, &j.to_string()), j);
        assert_eq!(MonomialIdeal::from_json(&j.to_json()).unwrap(), j);
        let z = MonomialIdeal::zero(s);
        assert_eq!(z.to_string(), "<>");
        assert_eq!(ideal(s, "<>"), z);
        assert_eq!(ideal(s, "<1>"), MonomialIdeal::unit(s));
        let js = ideal(shape(1, 3), "<x[1,2]^2, x[1,1]>").to_json();
        assert_eq!(
            js.to_string(),
            r#"{"shape":[1,3],"gens":[[[1,1,1]],[[1,2,2]]]}"#
        );
        assert!(MonomialIdeal::parse(s, "x[1,1]").is_err());
    }
}
