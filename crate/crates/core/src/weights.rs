//! Dominant integral weights of gl(m|n) and their weight diagrams.
//!
//! A weight is stored ρ-shifted as `(a_1, …, a_m | b_1, …, b_n)` with
//! `a_1 > … > a_m` and `b_1 < … < b_n`. Sorting into this shape is the
//! choice of dot-orbit representative, so no Weyl group action is modelled.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::WeightDiagram;
use crate::error::{Error, Result};

/// ρ-shifted weight `(left | right)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominantWeight {
    pub m: usize,
    pub n: usize,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

/// Unshifted weight `Σ eps_i ε_i + Σ delta_j δ_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsilonDeltaWeight {
    pub m: usize,
    pub n: usize,
    pub eps: Vec<i64>,
    pub delta: Vec<i64>,
}

impl DominantWeight {
    pub fn new(left: Vec<i64>, right: Vec<i64>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::EmptyWeight { m: left.len(), n: right.len() });
        }
        if left.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotDominant(format!("left side {left:?} is not strictly decreasing")));
        }
        if right.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotDominant(format!("right side {right:?} is not strictly increasing")));
        }
        Ok(DominantWeight { m: left.len(), n: right.len(), left, right })
    }

    /// Tuple form `a_1,…,a_m|b_1,…,b_n`.
    pub fn parse(text: &str) -> Result<Self> {
        let (left, right) = parse_tuple(text)?;
        Self::new(left, right)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let w: DominantWeight =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, format!("weight json: {e}")))?;
        let checked = Self::new(w.left, w.right)?;
        if (checked.m, checked.n) != (w.m, w.n) {
            return Err(Error::parse(0, "m and n disagree with the tuple lengths"));
        }
        Ok(checked)
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.left, &self.right)
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl EpsilonDeltaWeight {
    pub fn new(eps: Vec<i64>, delta: Vec<i64>) -> Self {
        EpsilonDeltaWeight { m: eps.len(), n: delta.len(), eps, delta }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self::new(vec![0; m], vec![0; n])
    }

    /// Coefficient form `e_1,…,e_m|d_1,…,d_n`.
    pub fn parse(text: &str) -> Result<Self> {
        let (eps, delta) = parse_tuple(text)?;
        Ok(Self::new(eps, delta))
    }
}

impl fmt::Display for EpsilonDeltaWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.eps, &self.delta)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, left: &[i64], right: &[i64]) -> fmt::Result {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    write!(f, "{}|{}", join(left), join(right))
}

fn parse_tuple(text: &str) -> Result<(Vec<i64>, Vec<i64>)> {
    let Some(bar) = text.find('|') else {
        return Err(Error::parse(0, "expected `left|right`"));
    };
    if let Some(extra) = text[bar + 1..].find('|') {
        return Err(Error::parse(bar + 1 + extra, "more than one `|`"));
    }
    let list = |s: &str, base: usize| -> Result<Vec<i64>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut pos = base;
        for item in s.split(',') {
            out.push(
                item.trim().parse().map_err(|_| Error::parse(pos, format!("expected an integer, found `{item}`")))?,
            );
            pos += item.len() + 1;
        }
        Ok(out)
    };
    Ok((list(&text[..bar], 0)?, list(&text[bar + 1..], bar + 1)?))
}

/// `ρ = m ε_1 + … + ε_m − δ_1 − 2δ_2 − … − n δ_n`.
pub fn rho(m: usize, n: usize) -> EpsilonDeltaWeight {
    EpsilonDeltaWeight::new((1..=m as i64).rev().collect(), (1..=n as i64).map(|j| -j).collect())
}

/// `a_i = (λ+ρ, ε_i)`, `b_j = (λ+ρ, δ_j)` with `(δ_i, δ_j) = −δ_{ij}`.
pub fn shift(lambda: &EpsilonDeltaWeight) -> Result<DominantWeight> {
    let r = rho(lambda.m, lambda.n);
    let left = lambda.eps.iter().zip(&r.eps).map(|(e, r)| e + r).collect();
    let right = lambda.delta.iter().zip(&r.delta).map(|(d, r)| -(d + r)).collect();
    DominantWeight::new(left, right)
}

/// Inverse of [`shift`].
pub fn unshift(w: &DominantWeight) -> EpsilonDeltaWeight {
    let r = rho(w.m, w.n);
    EpsilonDeltaWeight::new(
        w.left.iter().zip(&r.eps).map(|(a, r)| a - r).collect(),
        w.right.iter().zip(&r.delta).map(|(b, r)| -b - r).collect(),
    )
}

pub fn to_diagram(w: &DominantWeight) -> WeightDiagram {
    let left: BTreeSet<i64> = w.left.iter().copied().collect();
    let right: BTreeSet<i64> = w.right.iter().copied().collect();
    WeightDiagram::from_parts(
        left.intersection(&right).copied(),
        left.difference(&right).copied(),
        right.difference(&left).copied(),
    )
    .expect("the three sets are disjoint")
}

pub fn from_diagram(f: &WeightDiagram) -> Result<DominantWeight> {
    let mut left: Vec<i64> = f.crosses().iter().chain(f.core_left()).copied().collect();
    let mut right: Vec<i64> = f.crosses().iter().chain(f.core_right()).copied().collect();
    left.sort_unstable_by(|a, b| b.cmp(a));
    right.sort_unstable();
    DominantWeight::new(left, right)
}

/// `|left ∩ right|`.
pub fn atypicality(w: &DominantWeight) -> usize {
    w.left.iter().filter(|a| w.right.contains(a)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DominantWeight {
        DominantWeight::parse(s).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(2, 1), EpsilonDeltaWeight::new(vec![2, 1], vec![-1]));
        assert_eq!(rho(1, 1), EpsilonDeltaWeight::new(vec![1], vec![-1]));
        assert_eq!(rho(3, 2), EpsilonDeltaWeight::new(vec![3, 2, 1], vec![-1, -2]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&EpsilonDeltaWeight::zero(2, 1)).unwrap(), w("2,1|1"));
        assert_eq!(shift(&EpsilonDeltaWeight::zero(1, 1)).unwrap(), w("1|1"));
        assert_eq!(shift(&EpsilonDeltaWeight::new(vec![1], vec![-1])).unwrap(), w("2|2"));
        assert!(matches!(shift(&EpsilonDeltaWeight::new(vec![0, 2], vec![0])), Err(Error::NotDominant(_))));
        assert_eq!(unshift(&w("2|2")), EpsilonDeltaWeight::new(vec![1], vec![-1]));
    }

    #[test]
    fn to_diagram_examples() {
        assert_eq!(to_diagram(&w("2,1|1")), WeightDiagram::from_parts([1], [2], []).unwrap());
        assert_eq!(
            to_diagram(&w("9,7,6,5,1,0|0,1,3,5,6,9")),
            WeightDiagram::from_parts([9, 6, 5, 1, 0], [7], [3]).unwrap()
        );
        let t = to_diagram(&w("5|7"));
        assert_eq!(t, WeightDiagram::from_parts([], [5], [7]).unwrap());
        assert_eq!(t.atypicality(), 0);
    }

    #[test]
    fn from_diagram_examples() {
        let f = WeightDiagram::from_parts([9, 6, 5, 1, 0], [7], [3]).unwrap();
        let got = from_diagram(&f).unwrap();
        assert_eq!(got, w("9,7,6,5,1,0|0,1,3,5,6,9"));
        assert_eq!((got.m, got.n), (6, 6));
        assert_eq!(from_diagram(&WeightDiagram::from_parts([1], [2], []).unwrap()).unwrap(), w("2,1|1"));
        assert_eq!(from_diagram(&WeightDiagram::empty()), Err(Error::EmptyWeight { m: 0, n: 0 }));
    }

    #[test]
    fn atypicality_examples() {
        assert_eq!(atypicality(&w("2,1|1")), 1);
        assert_eq!(atypicality(&w("5|7")), 0);
        assert_eq!(atypicality(&w("9,7,6,5,1,0|0,1,3,5,6,9")), 5);
    }

    #[test]
    fn text_and_json() {
        let x = w("9,7,6,5,1,0|0,1,3,5,6,9");
        assert_eq!(x.to_string(), "9,7,6,5,1,0|0,1,3,5,6,9");
        assert_eq!(DominantWeight::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(x.to_json().to_string(), r#"{"left":[9,7,6,5,1,0],"m":6,"n":6,"right":[0,1,3,5,6,9]}"#);
        assert!(matches!(DominantWeight::parse("1,2|3"), Err(Error::NotDominant(_))));
        assert_eq!(DominantWeight::parse("3|1|2"), Err(Error::parse(3, "more than one `|`")));
        assert!(matches!(DominantWeight::parse("1,a|3"), Err(Error::Parse { position: 2, .. })));
        assert_eq!(DominantWeight::parse("|3"), Err(Error::EmptyWeight { m: 0, n: 1 }));
        assert_eq!(EpsilonDeltaWeight::parse("0,-1|2").unwrap().to_string(), "0,-1|2");
    }
}
