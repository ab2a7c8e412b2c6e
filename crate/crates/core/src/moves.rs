//! Legal moves, their weights, and the operators `σ_i` on formal sums.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{Symbol, WeightDiagram};
use crate::error::{Error, Result};
use crate::sum::DiagramSum;

/// A legal move relocating the cross at `start` to the circle at `end < start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LegalMove {
    pub start: i64,
    pub end: i64,
    pub weight: i64,
}

/// Number of `×` minus number of `○` strictly between `b` and `a`.
pub fn l_value(f: &WeightDiagram, b: i64, a: i64) -> Result<i64> {
    if b >= a {
        return Err(Error::BadInterval { b, a });
    }
    Ok((b + 1..a)
        .map(|c| match f.symbol_at(c) {
            Symbol::Cross => 1,
            Symbol::Circle => -1,
            _ => 0,
        })
        .sum())
}

/// All legal moves starting at the cross `a`, by decreasing end.
///
/// One leftward sweep. `deficit` counts circles in `(b, a)` not absorbed by
/// a cross further left inside the interval, so the tally read from `b`
/// stays non-negative exactly when `deficit == 0`. `total` is the tally at
/// `a`, i.e. the weight. Left of the smallest cross nothing can absorb a
/// circle again, so the sweep stops at the first positive deficit there.
pub fn legal_ends(f: &WeightDiagram, a: i64) -> Result<Vec<LegalMove>> {
    if f.symbol_at(a) != Symbol::Cross {
        return Err(Error::NotACross(a));
    }
    let lowest_cross = *f.crosses().last().expect("a is a cross");
    let mut out = Vec::new();
    let mut deficit = 0_i64;
    let mut total = 0_i64;
    let mut b = a - 1;
    loop {
        if b < lowest_cross && deficit > 0 {
            break;
        }
        let s = f.symbol_at(b);
        if s == Symbol::Circle && deficit == 0 {
            out.push(LegalMove { start: a, end: b, weight: total });
        }
        match s {
            Symbol::Circle => {
                deficit += 1;
                total -= 1;
            }
            Symbol::Cross => {
                deficit = (deficit - 1).max(0);
                total += 1;
            }
            _ => {}
        }
        b -= 1;
    }
    Ok(out)
}

/// `f^a_b`: the cross at `a` moved to the circle at `b`.
pub fn apply_move(f: &WeightDiagram, a: i64, b: i64) -> Result<WeightDiagram> {
    if f.symbol_at(a) != Symbol::Cross {
        return Err(Error::NotACross(a));
    }
    if f.symbol_at(b) != Symbol::Circle {
        return Err(Error::NotACircle(b));
    }
    Ok(f.relocate_cross(a, b))
}

/// `σ_i` on a single diagram: `Σ_b (−1)^{l_f(b,a)} f^a_b` with `a = a_i(f)`.
pub fn sigma_basis(i: usize, f: &WeightDiagram) -> Result<DiagramSum> {
    let a = f.nth_cross(i).ok_or(Error::AtypicalityTooSmall { i, found: f.atypicality() })?;
    let mut out = DiagramSum::zero();
    for mv in legal_ends(f, a)? {
        let sign = if mv.weight % 2 == 0 { 1 } else { -1 };
        out.add_term(f.relocate_cross(a, mv.end), sign);
    }
    Ok(out)
}

/// The linear extension of `σ_i`. `i` is 1-based.
pub fn sigma(i: usize, s: &DiagramSum) -> Result<DiagramSum> {
    if i == 0 {
        return Err(Error::AtypicalityTooSmall { i, found: 0 });
    }
    s.map_linear(|f| sigma_basis(i, f))
}

/// `(1 + σ_1)(1 + σ_2)…(1 + σ_k) f`, applying `σ_k` first.
pub fn sigma_product(f: &WeightDiagram) -> DiagramSum {
    let mut s = DiagramSum::singleton(f.clone());
    for i in (1..=f.atypicality()).rev() {
        let moved = sigma(i, &s).expect("every term keeps atypicality k");
        s += &moved;
    }
    s
}

/// Ends of the legal moves of weight exactly `i` starting at `a`, computed
/// only from the shift recursions on core-free diagrams:
///
/// * `f(a−1) = ○`: weight-`i` moves of `a` are the weight-`(i+1)` moves of
///   `a−1` in `f^a_{a−1}`, plus `a−1` itself when `i = 0`;
/// * `f(a−1) = ×`: none of weight 0, and weight-`i` moves of `a` are the
///   weight-`(i−1)` moves of `a−1` in `f^a`.
///
/// The recursion bottoms out once `i` exceeds the number of crosses left of
/// `a`, a bound on any weight.
pub fn lm_recursive(f: &WeightDiagram, a: i64, i: u32) -> Result<BTreeSet<i64>> {
    if !f.is_core_free() {
        return Err(Error::NotCoreFree);
    }
    if f.symbol_at(a) != Symbol::Cross {
        return Err(Error::NotACross(a));
    }
    let mut crosses = f.crosses().to_vec();
    crosses.sort_unstable();
    let mut out = BTreeSet::new();
    lm_rec(&mut crosses, a, i as i64, &mut out);
    Ok(out)
}

/// `crosses` is sorted increasing and contains `a`; it is restored on return.
fn lm_rec(crosses: &mut Vec<i64>, a: i64, i: i64, out: &mut BTreeSet<i64>) {
    let idx = crosses.binary_search(&a).expect("a is a cross");
    if i > idx as i64 {
        return;
    }
    let left_is_cross = idx > 0 && crosses[idx - 1] == a - 1;
    if !left_is_cross {
        crosses[idx] = a - 1;
        lm_rec(crosses, a - 1, i + 1, out);
        crosses[idx] = a;
        if i == 0 {
            out.insert(a - 1);
        }
    } else if i > 0 {
        crosses.remove(idx);
        lm_rec(crosses, a - 1, i - 1, out);
        crosses.insert(idx, a);
    }
}
