//! Seeded generator for replayable random tests.
//!
//! A 64-bit linear congruential generator,
//! `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! returning the top 31 bits (`state >> 33`) of each new state. The first
//! state is the seed itself. Any implementation of these two lines replays
//! the same diagrams from the same seed.

use crate::diagram::WeightDiagram;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MUL: u64 = 6364136223846793005;
    pub const INC: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MUL).wrapping_add(Self::INC);
        (self.state >> 33) as u32
    }

    /// Uniform-ish integer in `lo..=hi` by reduction modulo the range size.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let size = (hi - lo + 1) as u64;
        lo + (u64::from(self.next_u32()) % size) as i64
    }

    /// `count` distinct values from `lo..=hi`, in draw order.
    pub fn distinct(&mut self, count: usize, lo: i64, hi: i64) -> Vec<i64> {
        assert!(count as i64 <= hi - lo + 1, "range too small");
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.range(lo, hi);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

/// A diagram with `0..=max_k` crosses and `0..=max_core` core symbols on
/// distinct positions of `[lo, hi]`.
///
/// Draw order: cross count, core count (both clamped to the window size),
/// the positions via [`Lcg::distinct`] (crosses first), then one draw per
/// core position, 0 for `>` and 1 for `<`.
pub fn random_diagram(rng: &mut Lcg, max_k: usize, max_core: usize, lo: i64, hi: i64) -> WeightDiagram {
    let room = (hi - lo + 1).max(0) as usize;
    let k = (rng.range(0, max_k as i64) as usize).min(room);
    let c = (rng.range(0, max_core as i64) as usize).min(room - k);
    let pos = rng.distinct(k + c, lo, hi);
    let (mut gt, mut lt) = (Vec::new(), Vec::new());
    for &p in &pos[k..] {
        if rng.range(0, 1) == 0 {
            gt.push(p);
        } else {
            lt.push(p);
        }
    }
    WeightDiagram::from_parts(pos[..k].iter().copied(), gt, lt).expect("positions are distinct")
}
