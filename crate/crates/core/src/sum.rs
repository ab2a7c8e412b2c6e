//! Formal integer combinations of weight diagrams.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::diagram::WeightDiagram;
use crate::error::{Error, Result};

/// An element of the free abelian group on weight diagrams.
///
/// Zero coefficients are never stored, so two sums are equal exactly when
/// their term maps are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DiagramSum {
    terms: BTreeMap<WeightDiagram, i64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    diagram: String,
    coeff: i64,
}

impl DiagramSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(f: WeightDiagram) -> Self {
        let mut s = Self::zero();
        s.add_term(f, 1);
        s
    }

    /// The indicator sum `Σ g` over a set of diagrams.
    pub fn indicator<'a>(set: impl IntoIterator<Item = &'a WeightDiagram>) -> Self {
        let mut s = Self::zero();
        for g in set {
            s.add_term(g.clone(), 1);
        }
        s
    }

    pub fn add_term(&mut self, f: WeightDiagram, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(f) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, f: &WeightDiagram) -> i64 {
        self.terms.get(f).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&WeightDiagram, i64)> {
        self.terms.iter().map(|(f, &c)| (f, c))
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &WeightDiagram> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<E>(
        &self,
        mut on_basis: impl FnMut(&WeightDiagram) -> Result<DiagramSum, E>,
    ) -> Result<DiagramSum, E> {
        let mut out = DiagramSum::zero();
        for (f, c) in self.iter() {
            for (g, d) in on_basis(f)?.iter() {
                out.add_term(g.clone(), c * d);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self.iter().map(|(f, c)| TermJson { diagram: f.serialize(), coeff: c }).collect();
        serde_json::to_value(terms).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, format!("diagram sum json: {e}")))?;
        let mut s = DiagramSum::zero();
        for t in terms {
            s.add_term(WeightDiagram::parse(&t.diagram)?, t.coeff);
        }
        Ok(s)
    }
}

impl FromIterator<(WeightDiagram, i64)> for DiagramSum {
    fn from_iter<I: IntoIterator<Item = (WeightDiagram, i64)>>(iter: I) -> Self {
        let mut s = DiagramSum::zero();
        for (f, c) in iter {
            s.add_term(f, c);
        }
        s
    }
}

impl AddAssign<&DiagramSum> for DiagramSum {
    fn add_assign(&mut self, rhs: &DiagramSum) {
        for (f, c) in rhs.iter() {
            self.add_term(f.clone(), c);
        }
    }
}

impl SubAssign<&DiagramSum> for DiagramSum {
    fn sub_assign(&mut self, rhs: &DiagramSum) {
        for (f, c) in rhs.iter() {
            self.add_term(f.clone(), -c);
        }
    }
}

impl Add for DiagramSum {
    type Output = DiagramSum;
    fn add(mut self, rhs: DiagramSum) -> DiagramSum {
        self += &rhs;
        self
    }
}

impl Sub for DiagramSum {
    type Output = DiagramSum;
    fn sub(mut self, rhs: DiagramSum) -> DiagramSum {
        self -= &rhs;
        self
    }
}

impl Neg for DiagramSum {
    type Output = DiagramSum;
    fn neg(mut self) -> DiagramSum {
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl fmt::Display for DiagramSum {
    /// Human form, e.g. `+ x:8,6 - x:6,4`; the zero sum prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (g, c) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let sign = if c < 0 { '-' } else { '+' };
            if c.abs() == 1 {
                write!(f, "{sign} {g}")?;
            } else {
                write!(f, "{sign} {}*{g}", c.abs())?;
            }
        }
        Ok(())
    }
}
