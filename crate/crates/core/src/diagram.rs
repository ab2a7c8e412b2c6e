//! Weight diagrams and cap diagrams.
//!
//! A [`WeightDiagram`] is a finitely supported function from the integers to
//! the four symbols `×`, `○`, `>` and `<`. Every position not stored carries
//! `○`. The positions of `>` and `<` form the *core*; the positions of `×`
//! are the crosses and their number is the degree of atypicality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Symbol {
    Cross,
    #[default]
    Circle,
    Less,
    Greater,
}

impl Symbol {
    pub fn ascii(self) -> char {
        match self {
            Symbol::Cross => 'x',
            Symbol::Circle => 'o',
            Symbol::Less => '<',
            Symbol::Greater => '>',
        }
    }

    pub fn is_core(self) -> bool {
        matches!(self, Symbol::Less | Symbol::Greater)
    }
}

/// An element of the set of weight diagrams.
///
/// Positions are kept in three strictly decreasing lists. Diagrams order
/// canonically: a diagram with the lexicographically larger decreasing
/// cross list sorts first, so iterating a `BTreeSet<WeightDiagram>` yields
/// the canonical output order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightDiagram {
    crosses: Vec<i64>,
    core_left: Vec<i64>,
    core_right: Vec<i64>,
}

impl Ord for WeightDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .crosses
            .cmp(&self.crosses)
            .then_with(|| other.core_left.cmp(&self.core_left))
            .then_with(|| other.core_right.cmp(&self.core_right))
    }
}

impl PartialOrd for WeightDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn sorted_desc(it: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = it.into_iter().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.dedup();
    v
}

fn contains_desc(list: &[i64], p: i64) -> bool {
    list.binary_search_by(|x| p.cmp(x)).is_ok()
}

impl WeightDiagram {
    /// Builds a diagram from the positions of `×`, `>` and `<`.
    pub fn from_parts(
        crosses: impl IntoIterator<Item = i64>,
        core_left: impl IntoIterator<Item = i64>,
        core_right: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        let crosses = sorted_desc(crosses);
        let core_left = sorted_desc(core_left);
        let core_right = sorted_desc(core_right);
        for &p in &crosses {
            if contains_desc(&core_left, p) || contains_desc(&core_right, p) {
                return Err(Error::OverlappingSymbols(p));
            }
        }
        for &p in &core_left {
            if contains_desc(&core_right, p) {
                return Err(Error::OverlappingSymbols(p));
            }
        }
        Ok(WeightDiagram { crosses, core_left, core_right })
    }

    /// A core-free diagram with crosses at the given positions.
    pub fn core_free(crosses: impl IntoIterator<Item = i64>) -> Self {
        WeightDiagram { crosses: sorted_desc(crosses), ..Default::default() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn symbol_at(&self, p: i64) -> Symbol {
        if contains_desc(&self.crosses, p) {
            Symbol::Cross
        } else if contains_desc(&self.core_left, p) {
            Symbol::Greater
        } else if contains_desc(&self.core_right, p) {
            Symbol::Less
        } else {
            Symbol::Circle
        }
    }

    /// Cross positions `a_1 > a_2 > … > a_k`.
    pub fn crosses(&self) -> &[i64] {
        &self.crosses
    }

    /// Positions of `>`, decreasing.
    pub fn core_left(&self) -> &[i64] {
        &self.core_left
    }

    /// Positions of `<`, decreasing.
    pub fn core_right(&self) -> &[i64] {
        &self.core_right
    }

    pub fn atypicality(&self) -> usize {
        self.crosses.len()
    }

    pub fn is_core_free(&self) -> bool {
        self.core_left.is_empty() && self.core_right.is_empty()
    }

    pub fn core_len(&self) -> usize {
        self.core_left.len() + self.core_right.len()
    }

    pub fn same_core(&self, other: &Self) -> bool {
        self.core_left == other.core_left && self.core_right == other.core_right
    }

    /// Same core and same atypicality.
    pub fn same_block(&self, other: &Self) -> bool {
        self.same_core(other) && self.atypicality() == other.atypicality()
    }

    pub fn is_core(&self, p: i64) -> bool {
        contains_desc(&self.core_left, p) || contains_desc(&self.core_right, p)
    }

    /// `|f|`, the sum of the cross positions.
    pub fn norm(&self) -> i64 {
        self.crosses.iter().sum()
    }

    /// Smallest and largest non-`○` position, if any.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        let lists = [&self.crosses, &self.core_left, &self.core_right];
        let max = lists.iter().filter_map(|l| l.first()).max().copied()?;
        let min = lists.iter().filter_map(|l| l.last()).min().copied()?;
        Some((min, max))
    }

    /// The `i`-th largest cross, 1-based.
    pub fn nth_cross(&self, i: usize) -> Option<i64> {
        i.checked_sub(1).and_then(|j| self.crosses.get(j).copied())
    }

    /// Same core, replaced crosses. Caller guarantees no cross hits the core.
    pub(crate) fn with_crosses(&self, crosses: impl IntoIterator<Item = i64>) -> Self {
        let out = WeightDiagram {
            crosses: sorted_desc(crosses),
            core_left: self.core_left.clone(),
            core_right: self.core_right.clone(),
        };
        debug_assert!(out.crosses.iter().all(|&p| !out.is_core(p)));
        out
    }

    /// Moves the cross at `a` to the circle at `b` without legality checks.
    pub(crate) fn relocate_cross(&self, a: i64, b: i64) -> Self {
        let mut crosses = self.crosses.clone();
        let i = crosses.binary_search_by(|x| a.cmp(x)).expect("cross present");
        crosses.remove(i);
        let j = crosses.binary_search_by(|x| b.cmp(x)).unwrap_err();
        crosses.insert(j, b);
        WeightDiagram { crosses, core_left: self.core_left.clone(), core_right: self.core_right.clone() }
    }

    /// The same diagram with all core symbols removed.
    pub fn strip_core(&self) -> Self {
        WeightDiagram::core_free(self.crosses.iter().copied())
    }

    /// Canonical text form `x:…;gt:…;lt:…`.
    pub fn serialize(&self) -> String {
        let mut parts = Vec::new();
        for (tag, list) in [("x", &self.crosses), ("gt", &self.core_left), ("lt", &self.core_right)] {
            if !list.is_empty() {
                let nums: Vec<String> = list.iter().map(i64::to_string).collect();
                parts.push(format!("{tag}:{}", nums.join(",")));
            }
        }
        parts.join(";")
    }

    /// Parses the text form produced by [`WeightDiagram::serialize`].
    ///
    /// Sections may come in any order and numbers within a section in any
    /// order; each tag may appear at most once. The empty string is the
    /// all-circles diagram.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lists: [Option<Vec<i64>>; 3] = [None, None, None];
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut offset = 0;
        for section in text.split(';') {
            let start = offset;
            offset += section.len() + 1;
            let Some(colon) = section.find(':') else {
                return Err(Error::parse(start, "expected `tag:list`"));
            };
            let tag = section[..colon].trim();
            let slot = match tag {
                "x" => 0,
                "gt" => 1,
                "lt" => 2,
                _ => return Err(Error::parse(start, format!("unknown tag `{tag}`"))),
            };
            if lists[slot].is_some() {
                return Err(Error::parse(start, format!("tag `{tag}` repeated")));
            }
            let mut nums = Vec::new();
            let mut pos = start + colon + 1;
            for item in section[colon + 1..].split(',') {
                let n: i64 = item
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("expected an integer, found `{item}`")))?;
                if nums.contains(&n) {
                    return Err(Error::parse(pos, format!("position {n} repeated")));
                }
                nums.push(n);
                pos += item.len() + 1;
            }
            lists[slot] = Some(nums);
        }
        let [x, gt, lt] = lists;
        Self::from_parts(x.unwrap_or_default(), gt.unwrap_or_default(), lt.unwrap_or_default())
    }
}

impl fmt::Display for WeightDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for WeightDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A cap joining `begin < end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cap {
    pub begin: i64,
    pub end: i64,
}

impl Cap {
    pub fn new(begin: i64, end: i64) -> Self {
        assert!(begin < end, "cap must begin left of its end");
        Cap { begin, end }
    }

    pub fn width(&self) -> i64 {
        self.end - self.begin
    }

    /// `other` lies strictly inside `self`.
    pub fn encloses(&self, other: &Cap) -> bool {
        self.begin < other.begin && other.end < self.end
    }
}

/// A non-crossing set of caps together with core symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CapDiagram {
    /// Sorted by decreasing begin.
    caps: Vec<Cap>,
    core_left: Vec<i64>,
    core_right: Vec<i64>,
}

impl CapDiagram {
    /// Builds a cap diagram from arbitrary caps, checking every invariant.
    pub fn new(
        caps: impl IntoIterator<Item = Cap>,
        core_left: impl IntoIterator<Item = i64>,
        core_right: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        let mut caps: Vec<Cap> = caps.into_iter().collect();
        caps.sort_by_key(|c| std::cmp::Reverse(c.begin));
        let d = CapDiagram { caps, core_left: sorted_desc(core_left), core_right: sorted_desc(core_right) };
        d.check()?;
        Ok(d)
    }

    pub fn caps(&self) -> &[Cap] {
        &self.caps
    }

    pub fn core_left(&self) -> &[i64] {
        &self.core_left
    }

    pub fn core_right(&self) -> &[i64] {
        &self.core_right
    }

    pub fn cap_beginning_at(&self, p: i64) -> Option<Cap> {
        self.caps.iter().copied().find(|c| c.begin == p)
    }

    pub fn cap_ending_at(&self, p: i64) -> Option<Cap> {
        self.caps.iter().copied().find(|c| c.end == p)
    }

    pub fn contains_cap(&self, begin: i64, end: i64) -> bool {
        self.caps.iter().any(|c| c.begin == begin && c.end == end)
    }

    /// The weight diagram with crosses at cap beginnings and the same core.
    pub fn to_weight_diagram(&self) -> WeightDiagram {
        WeightDiagram {
            crosses: self.caps.iter().map(|c| c.begin).collect(),
            core_left: self.core_left.clone(),
            core_right: self.core_right.clone(),
        }
    }

    /// Checks the cap diagram invariants, reporting the first violation.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        let is_core = |p: i64| contains_desc(&self.core_left, p) || contains_desc(&self.core_right, p);
        if let Some(&p) = self.core_left.iter().find(|&&p| contains_desc(&self.core_right, p)) {
            return bad(format!("position {p} is in both core sets"));
        }
        let mut ends = Vec::with_capacity(2 * self.caps.len());
        for c in &self.caps {
            if c.begin >= c.end {
                return bad(format!("cap ({}, {}) is reversed", c.begin, c.end));
            }
            ends.push(c.begin);
            ends.push(c.end);
        }
        let mut sorted = ends.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!("two caps share the endpoint {}", w[0]));
        }
        if let Some(&p) = ends.iter().find(|&&p| is_core(p)) {
            return bad(format!("cap endpoint {p} is a core position"));
        }
        for (i, x) in self.caps.iter().enumerate() {
            for y in &self.caps[i + 1..] {
                let disjoint = x.end < y.begin || y.end < x.begin;
                if !(disjoint || x.encloses(y) || y.encloses(x)) {
                    return bad(format!("caps ({}, {}) and ({}, {}) cross", x.begin, x.end, y.begin, y.end));
                }
            }
        }
        for c in &self.caps {
            for p in c.begin + 1..c.end {
                if !is_core(p) && !ends.contains(&p) {
                    return bad(format!("free position {p} inside cap ({}, {})", c.begin, c.end));
                }
            }
        }
        Ok(())
    }
}

/// The cap diagram `D_cap(f)`.
///
/// Crosses are processed in decreasing order; the cap at `c_p` ends at the
/// first position right of `c_p` that is neither a core position nor an
/// endpoint of an earlier cap.
pub fn cap_diagram(f: &WeightDiagram) -> CapDiagram {
    let mut used: Vec<i64> = Vec::with_capacity(2 * f.crosses.len());
    let mut caps = Vec::with_capacity(f.crosses.len());
    for &c in &f.crosses {
        let d = next_free(c, &used, f);
        used.push(c);
        used.push(d);
        caps.push(Cap { begin: c, end: d });
    }
    CapDiagram { caps, core_left: f.core_left.clone(), core_right: f.core_right.clone() }
}

fn next_free(c: i64, used: &[i64], f: &WeightDiagram) -> i64 {
    let mut d = c + 1;
    while used.contains(&d) || f.is_core(d) {
        d += 1;
    }
    d
}

/// Whether every cap of `d` joins a `×` of `f` to a `○` of `f`, with equal cores.
pub fn matches(d: &CapDiagram, f: &WeightDiagram) -> bool {
    d.core_left == f.core_left
        && d.core_right == f.core_right
        && d.caps.iter().all(|c| joins_cross_to_circle(f, c.begin, c.end))
}

fn joins_cross_to_circle(f: &WeightDiagram, p: i64, q: i64) -> bool {
    matches!((f.symbol_at(p), f.symbol_at(q)), (Symbol::Cross, Symbol::Circle) | (Symbol::Circle, Symbol::Cross))
}

/// Inclusive range of candidate cross positions searched by
/// [`enumerate_matching`]: `[min support − 2k − |core|, max cross]`.
pub fn matching_window(f: &WeightDiagram) -> Option<(i64, i64)> {
    let (lo, _) = f.support_bounds()?;
    let hi = *f.crosses.first()?;
    let k = f.atypicality() as i64;
    Some((lo - 2 * k - f.core_len() as i64, hi))
}

/// `P(f)`: every `g` whose cap diagram matches the weight diagram of `f`,
/// in canonical order.
///
/// Candidate cross sets are drawn from [`matching_window`] largest cross
/// first. The cap at a cross depends only on the larger crosses, so each
/// cap is tested against `f` as soon as it is placed and failing prefixes
/// are abandoned.
pub fn enumerate_matching(f: &WeightDiagram) -> Vec<WeightDiagram> {
    let Some((lo, hi)) = matching_window(f) else {
        return vec![f.clone()];
    };
    let k = f.atypicality();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    let mut used = Vec::with_capacity(2 * k);
    search_matching(f, lo, hi, k, &mut chosen, &mut used, &mut out);
    // Decreasing choice order already produces canonical order.
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

fn search_matching(
    f: &WeightDiagram,
    lo: i64,
    hi: i64,
    k: usize,
    chosen: &mut Vec<i64>,
    used: &mut Vec<i64>,
    out: &mut Vec<WeightDiagram>,
) {
    if chosen.len() == k {
        out.push(f.with_crosses(chosen.iter().copied()));
        return;
    }
    let remaining = (k - chosen.len()) as i64;
    let mut c = hi;
    while c - (remaining - 1) >= lo {
        if !f.is_core(c) {
            let d = next_free(c, used, f);
            if joins_cross_to_circle(f, c, d) {
                chosen.push(c);
                used.push(c);
                used.push(d);
                search_matching(f, lo, c - 1, k, chosen, used, out);
                used.truncate(used.len() - 2);
                chosen.pop();
            }
        }
        c -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> WeightDiagram {
        WeightDiagram::from_parts([9, 6, 5, 1, 0], [7], [3]).unwrap()
    }

    fn caps_of(f: &WeightDiagram) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = cap_diagram(f).caps().iter().map(|c| (c.begin, c.end)).collect();
        v.sort();
        v
    }

    #[test]
    fn from_parts_examples() {
        let f = worked();
        assert_eq!(f.crosses(), &[9, 6, 5, 1, 0]);
        assert_eq!(f.core_left(), &[7]);
        assert_eq!(f.core_right(), &[3]);
        assert_eq!(f.atypicality(), 5);
        assert_eq!(f.symbol_at(7), Symbol::Greater);
        assert_eq!(f.symbol_at(3), Symbol::Less);
        assert_eq!(f.symbol_at(4), Symbol::Circle);

        let e = WeightDiagram::from_parts([], [], []).unwrap();
        assert_eq!(e.atypicality(), 0);
        assert_eq!(e, WeightDiagram::empty());

        let g = WeightDiagram::from_parts([1, 2, 4, 5, 7], [], []).unwrap();
        assert_eq!(g.crosses(), &[7, 5, 4, 2, 1]);
        assert!(g.is_core_free());
    }

    #[test]
    fn from_parts_rejects_overlap() {
        assert_eq!(WeightDiagram::from_parts([1], [1], []), Err(Error::OverlappingSymbols(1)));
        assert_eq!(WeightDiagram::from_parts([], [2], [2]), Err(Error::OverlappingSymbols(2)));
    }

    #[test]
    fn cap_diagram_examples() {
        assert_eq!(caps_of(&worked()), vec![(0, 4), (1, 2), (5, 11), (6, 8), (9, 10)]);
        assert_eq!(caps_of(&WeightDiagram::core_free([0])), vec![(0, 1)]);
        let f4 = WeightDiagram::from_parts([6, 5, 4, 1, 0], [7], [3]).unwrap();
        assert_eq!(caps_of(&f4), vec![(0, 11), (1, 2), (4, 10), (5, 9), (6, 8)]);
    }

    #[test]
    fn cap_diagram_round_trips_and_is_valid() {
        for f in [worked(), WeightDiagram::core_free([3, 2, -4]), WeightDiagram::empty()] {
            let d = cap_diagram(&f);
            d.check().unwrap();
            assert_eq!(d.to_weight_diagram(), f);
        }
    }

    #[test]
    fn cap_diagram_new_rejects_bad_input() {
        assert!(CapDiagram::new([Cap::new(0, 2), Cap::new(1, 3)], [], []).is_err());
        assert!(CapDiagram::new([Cap::new(0, 2)], [], []).is_err());
        assert!(CapDiagram::new([Cap::new(0, 2)], [1], []).is_ok());
        assert!(CapDiagram::new([Cap::new(0, 1)], [], [1]).is_err());
        assert!(CapDiagram::new([Cap::new(0, 3), Cap::new(1, 2)], [], []).is_ok());
    }

    #[test]
    fn matches_examples() {
        let f = WeightDiagram::core_free([2, 3]);
        assert!(matches(&cap_diagram(&WeightDiagram::core_free([1, 3])), &f));
        assert!(!matches(&cap_diagram(&WeightDiagram::core_free([1, 2])), &f));
        assert!(matches(&cap_diagram(&worked()), &worked()));
        // cores must agree
        let g = WeightDiagram::from_parts([2, 3], [10], []).unwrap();
        assert!(!matches(&cap_diagram(&f), &g));
    }

    #[test]
    fn enumerate_matching_examples() {
        let p = enumerate_matching(&WeightDiagram::core_free([2, 3]));
        let want: Vec<_> = [vec![3, 2], vec![3, 1], vec![1, 0]].into_iter().map(WeightDiagram::core_free).collect();
        assert_eq!(p, want);

        let p = enumerate_matching(&WeightDiagram::core_free([0]));
        assert_eq!(p, vec![WeightDiagram::core_free([0]), WeightDiagram::core_free([-1])]);

        assert_eq!(enumerate_matching(&WeightDiagram::core_free([2, 4])).len(), 5);
        assert_eq!(enumerate_matching(&WeightDiagram::empty()), vec![WeightDiagram::empty()]);
        let typical = WeightDiagram::from_parts([], [4], [1]).unwrap();
        assert_eq!(enumerate_matching(&typical), vec![typical.clone()]);
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(worked().serialize(), "x:9,6,5,1,0;gt:7;lt:3");
        assert_eq!("x:0".parse::<WeightDiagram>().unwrap(), WeightDiagram::core_free([0]));
        assert_eq!(WeightDiagram::parse("x:1;gt:1"), Err(Error::OverlappingSymbols(1)));
        assert_eq!(WeightDiagram::parse("").unwrap(), WeightDiagram::empty());
        assert_eq!(WeightDiagram::parse("lt:3;x:0,9,1,6,5;gt:7").unwrap(), worked());
        assert_eq!(WeightDiagram::core_free([-1, 0]).serialize(), "x:0,-1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match WeightDiagram::parse("x:1,a") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match WeightDiagram::parse("x:1;q:2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(WeightDiagram::parse("x:1;x:2"), Err(Error::Parse { .. })));
        assert!(matches!(WeightDiagram::parse("x1"), Err(Error::Parse { .. })));
        assert!(matches!(WeightDiagram::parse("x:1,1"), Err(Error::Parse { .. })));
        assert!(matches!(WeightDiagram::parse("x:"), Err(Error::Parse { .. })));
    }

    #[test]
    fn canonical_order_is_decreasing_lex_on_crosses() {
        let mut v =
            [WeightDiagram::core_free([0, 1]), WeightDiagram::core_free([2, 3]), WeightDiagram::core_free([1, 3])];
        v.sort();
        let xs: Vec<_> = v.iter().map(|f| f.crosses().to_vec()).collect();
        assert_eq!(xs, vec![vec![3, 2], vec![3, 1], vec![1, 0]]);
    }
}
