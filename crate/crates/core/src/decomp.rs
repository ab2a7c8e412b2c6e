//! Composition factors of Kac modules.
//!
//! `decompose(f)` is the set `P(f)` of diagrams `g` whose cap diagram
//! matches the weight diagram of `f`; each such `L(g)` occurs in `K(f)` with
//! multiplicity one. It is computed without cancellation by peeling off the
//! largest cross. [`verify_theorem_a`] compares that route against brute
//! force matching and against the expansion of `(1 + σ_1)…(1 + σ_k) f`.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use crate::diagram::{cap_diagram, enumerate_matching, matches, WeightDiagram};
use crate::error::{Error, Result};
use crate::moves::{legal_ends, sigma_product};
use crate::sum::DiagramSum;

/// The composition factors of the Kac module indexed by `f`, canonical order.
pub fn decompose(f: &WeightDiagram) -> Vec<WeightDiagram> {
    p_recursive(f).unwrap_or_else(|e| panic!("cancellation-free recursion failed on {f}: {e}"))
}

/// `P(f)` by recursion on the largest cross `a`.
///
/// `Q(f)` is `P(f')` with `a` re-inserted, where `f'` drops `a`; every other
/// member of `P(f)` is `h^a_b` for a legal move of `a` in some `h ∈ Q(f)`.
/// Each such member must turn up exactly once, and the scan refuses to
/// de-duplicate: a repeat is reported as an invariant violation.
pub fn p_recursive(f: &WeightDiagram) -> Result<Vec<WeightDiagram>> {
    let Some(&a) = f.crosses().first() else {
        return Ok(vec![f.clone()]);
    };
    let reduced = f.with_crosses(f.crosses()[1..].iter().copied());
    let mut top_free = a + 1;
    while f.is_core(top_free) {
        top_free += 1;
    }

    let mut q = Vec::new();
    for g in p_recursive(&reduced)? {
        let h = g.with_crosses(std::iter::once(a).chain(g.crosses().iter().copied()));
        let caps = cap_diagram(&h);
        if !caps.contains_cap(a, top_free) || !matches(&caps, f) {
            return Err(Error::InvariantViolation(format!(
                "lifted diagram {h} does not match {f} with a cap ({a}, {top_free})"
            )));
        }
        q.push(h);
    }

    let mut seen: HashSet<WeightDiagram> = HashSet::new();
    let mut moved = Vec::new();
    for h in &q {
        for mv in legal_ends(h, a)? {
            let g = h.relocate_cross(a, mv.end);
            if matches(&cap_diagram(&g), f) {
                if !seen.insert(g.clone()) {
                    return Err(Error::InvariantViolation(format!("{g} listed twice while decomposing {f}")));
                }
                moved.push(g);
            }
        }
    }
    q.extend(moved);
    q.sort();
    Ok(q)
}

/// The unique `f` with a weight-zero legal move `f → g` starting at `a`.
pub fn predecessor(g: &WeightDiagram, a: i64) -> Option<WeightDiagram> {
    let cap = cap_diagram(g).cap_ending_at(a)?;
    Some(g.relocate_cross(cap.begin, a))
}

/// Bit vector indexed by the crosses `c_1 > … > c_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Theta(pub Vec<bool>);

impl Theta {
    /// All `2^k` vectors, in binary counting order with `θ_1` as the high bit.
    pub fn all(k: usize) -> impl Iterator<Item = Theta> {
        (0..1_u64 << k).map(move |bits| Theta((0..k).map(|p| bits >> (k - 1 - p) & 1 == 1).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Swaps the `×` at `c_p` with the `○` at `d_p` for every `p` with `θ_p = 1`,
/// where `(c_p, d_p)` are the caps of `D_cap(f)`.
pub fn toggle_caps(f: &WeightDiagram, theta: &Theta) -> Result<WeightDiagram> {
    if theta.len() != f.atypicality() {
        return Err(Error::LengthMismatch { expected: f.atypicality(), found: theta.len() });
    }
    let caps = cap_diagram(f);
    let crosses = caps.caps().iter().zip(&theta.0).map(|(c, &on)| if on { c.end } else { c.begin });
    Ok(f.with_crosses(crosses))
}

/// Cap widths `r_p = d_p − c_p` in decreasing cross order.
pub fn r_values(f: &WeightDiagram) -> Vec<i64> {
    cap_diagram(f).caps().iter().map(|c| c.width()).collect()
}

/// The `2^k` Kac modules having `L(f)` as a composition factor.
pub fn kac_modules_containing(f: &WeightDiagram) -> Vec<WeightDiagram> {
    let out: BTreeSet<WeightDiagram> =
        Theta::all(f.atypicality()).map(|t| toggle_caps(f, &t).expect("length matches")).collect();
    debug_assert_eq!(out.len(), 1 << f.atypicality());
    debug_assert!(out.iter().all(|m| decompose(m).contains(f)));
    out.into_iter().collect()
}

/// Outcome of comparing the three routes to `P(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremAReport {
    pub diagram: WeightDiagram,
    pub sigma: DiagramSum,
    pub matching: Vec<WeightDiagram>,
    pub recursive: Vec<WeightDiagram>,
    /// `sigma_product(f) − Σ_{g ∈ matching} g`; zero on success.
    pub sigma_minus_matching: DiagramSum,
    pub only_matching: Vec<WeightDiagram>,
    pub only_recursive: Vec<WeightDiagram>,
    /// Set when the recursive route itself reported an invariant violation.
    pub recursion_error: Option<Error>,
}

impl TheoremAReport {
    pub fn pass(&self) -> bool {
        self.sigma_minus_matching.is_zero()
            && self.only_matching.is_empty()
            && self.only_recursive.is_empty()
            && self.recursion_error.is_none()
    }
}

pub fn verify_theorem_a(f: &WeightDiagram) -> TheoremAReport {
    let sigma = sigma_product(f);
    let matching = enumerate_matching(f);
    let (recursive, recursion_error) = match p_recursive(f) {
        Ok(r) => (r, None),
        Err(e) => (Vec::new(), Some(e)),
    };
    let sigma_minus_matching = sigma.clone() - DiagramSum::indicator(&matching);
    let m: BTreeSet<_> = matching.iter().cloned().collect();
    let r: BTreeSet<_> = recursive.iter().cloned().collect();
    TheoremAReport {
        diagram: f.clone(),
        sigma,
        only_matching: m.difference(&r).cloned().collect(),
        only_recursive: r.difference(&m).cloned().collect(),
        matching,
        recursive,
        sigma_minus_matching,
        recursion_error,
    }
}

/// `C_k = binom(2k, k) / (k + 1)`.
pub fn catalan_number(k: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// The core-free diagram with crosses `2, 4, …, 2k − 2`.
pub fn staircase(k: u32) -> WeightDiagram {
    WeightDiagram::core_free((1..k as i64).map(|j| 2 * j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalanReport {
    pub k: u32,
    pub count: u128,
    pub expected: u128,
}

impl CatalanReport {
    pub fn pass(&self) -> bool {
        self.count == self.expected
    }
}

pub fn catalan_check(k: u32) -> CatalanReport {
    assert!(k >= 1, "catalan_check needs k >= 1");
    CatalanReport { k, count: decompose(&staircase(k)).len() as u128, expected: catalan_number(k) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureCounterexample {
    pub diagram: WeightDiagram,
    pub count: u128,
    pub bound: u128,
}

/// Checks `|P(g)| ≤ C_k`, with equality only on translates of the
/// staircase, for every core-free `g` with `k − 1` crosses in `[lo, hi]`.
pub fn conjecture_scan(k: u32, lo: i64, hi: i64) -> Vec<ConjectureCounterexample> {
    assert!(k >= 1, "conjecture_scan needs k >= 1");
    let bound = catalan_number(k);
    let stair = staircase(k);
    let mut out = Vec::new();
    for xs in (lo..=hi).combinations(k as usize - 1) {
        let g = WeightDiagram::core_free(xs);
        let count = decompose(&g).len() as u128;
        let translate = match (g.crosses().last(), stair.crosses().last()) {
            (Some(&x), Some(&y)) => g.crosses().iter().zip(stair.crosses()).all(|(p, q)| p - q == x - y),
            _ => true,
        };
        if count > bound || (count == bound && !translate) {
            out.push(ConjectureCounterexample { diagram: g, count, bound });
        }
    }
    out
}
