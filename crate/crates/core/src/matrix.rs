//! Multiplicity matrices `[K(μ) : L(λ)]` and their exact inverses.
//!
//! A block is infinite, so the closure of a seed set under `decompose` is
//! truncated at a floor: only diagrams whose crosses all lie at or above the
//! floor are kept. By default the floor is the lowest cross appearing in the
//! decompositions of the seeds, which keeps every seed column complete. The
//! floor of an assembled matrix is recovered as the lowest cross in its
//! index, and "closed" is always meant relative to that floor.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::decomp::decompose;
use crate::diagram::WeightDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CLOSURE: usize = 10_000;

/// Square integer matrix indexed by weight diagrams; `entry(row, col)` is
/// the multiplicity of `L(row)` in `K(col)`, or any integer for an inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    index: Vec<WeightDiagram>,
    entries: BTreeMap<(usize, usize), i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    index: Vec<String>,
    entries: Vec<(usize, usize, i64)>,
}

/// Order used for matrix indices: decreasing `|·|`, then canonical.
fn index_order(a: &WeightDiagram, b: &WeightDiagram) -> std::cmp::Ordering {
    b.norm().cmp(&a.norm()).then_with(|| a.cmp(b))
}

impl MultiplicityMatrix {
    pub fn from_entries(
        index: Vec<WeightDiagram>,
        entries: impl IntoIterator<Item = ((usize, usize), i64)>,
    ) -> Result<Self> {
        let n = index.len();
        let mut map = BTreeMap::new();
        for ((r, c), v) in entries {
            if r >= n || c >= n {
                return Err(Error::InvariantViolation(format!("entry ({r}, {c}) outside a {n}x{n} matrix")));
            }
            if v != 0 {
                map.insert((r, c), v);
            }
        }
        Ok(MultiplicityMatrix { index, entries: map })
    }

    pub fn index(&self) -> &[WeightDiagram] {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn position(&self, f: &WeightDiagram) -> Option<usize> {
        self.index.iter().position(|g| g == f)
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0)
    }

    pub fn entry(&self, row: &WeightDiagram, col: &WeightDiagram) -> i64 {
        match (self.position(row), self.position(col)) {
            (Some(r), Some(c)) => self.get(r, c),
            _ => 0,
        }
    }

    /// Non-zero entries as `((row, col), value)`, sorted by row then column.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn column_sum(&self, col: usize) -> i64 {
        self.entries.iter().filter(|((_, c), _)| *c == col).map(|(_, v)| v).sum()
    }

    /// Row-major dense form.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for (&(r, c), &v) in &self.entries {
            m[r][c] = v;
        }
        m
    }

    /// Lowest cross position in the index, the truncation floor.
    pub fn floor(&self) -> Option<i64> {
        self.index.iter().filter_map(|f| f.crosses().last().copied()).min()
    }

    /// Diagonal entries are 1 and `entry(g, f) ≠ 0` for `g ≠ f` forces `|g| < |f|`.
    pub fn check_unitriangular(&self) -> Result<()> {
        for i in 0..self.dim() {
            if self.get(i, i) != 1 {
                return Err(Error::NotUnitriangular(format!(
                    "diagonal entry at {} is {}",
                    self.index[i],
                    self.get(i, i)
                )));
            }
        }
        for &(r, c) in self.entries.keys() {
            if r != c && self.index[r].norm() >= self.index[c].norm() {
                return Err(Error::NotUnitriangular(format!(
                    "entry ({}, {}) does not decrease |.|",
                    self.index[r], self.index[c]
                )));
            }
        }
        Ok(())
    }

    /// Every decomposition target above the floor is indexed and every
    /// column agrees with `decompose`.
    pub fn check_closed(&self) -> Result<()> {
        let floor = self.floor();
        let pos: HashMap<&WeightDiagram, usize> = self.index.iter().enumerate().map(|(i, f)| (f, i)).collect();
        for (c, f) in self.index.iter().enumerate() {
            let mut expected = BTreeSet::new();
            for g in decompose(f) {
                match pos.get(&g) {
                    Some(&r) => {
                        expected.insert(r);
                    }
                    None if above_floor(&g, floor) => return Err(Error::NotClosed(g.serialize())),
                    None => {}
                }
            }
            let found: BTreeSet<usize> = self.entries.keys().filter(|(_, cc)| *cc == c).map(|(r, _)| *r).collect();
            if found != expected || expected.iter().any(|&r| self.get(r, c) != 1) {
                return Err(Error::InvariantViolation(format!("column {f} disagrees with its decomposition")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = MatrixJson {
            index: self.index.iter().map(WeightDiagram::serialize).collect(),
            entries: self.entries.iter().map(|(&(r, c), &v)| (r, c, v)).collect(),
        };
        serde_json::to_value(j).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: MatrixJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, format!("matrix json: {e}")))?;
        let index = j.index.iter().map(|s| WeightDiagram::parse(s)).collect::<Result<Vec<_>>>()?;
        Self::from_entries(index, j.entries.into_iter().map(|(r, c, v)| ((r, c), v)))
    }

    /// CSV with header `row,col,value`; rows and columns are serialized diagrams.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["row", "col", "value"]).expect("in-memory write");
        for (&(r, c), v) in &self.entries {
            w.write_record([self.index[r].serialize(), self.index[c].serialize(), v.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush to vec")).expect("utf-8")
    }
}

fn above_floor(g: &WeightDiagram, floor: Option<i64>) -> bool {
    match (floor, g.crosses().last()) {
        (Some(fl), Some(&low)) => low >= fl,
        _ => true,
    }
}

/// Closes `seeds` under `decompose` with the default floor and size guard.
pub fn multiplicity_matrix(seeds: &[WeightDiagram]) -> Result<MultiplicityMatrix> {
    multiplicity_matrix_with(seeds, None, DEFAULT_MAX_CLOSURE)
}

/// As [`multiplicity_matrix`], with an explicit floor (`None` picks the
/// lowest cross among the seeds' decompositions).
pub fn multiplicity_matrix_with(
    seeds: &[WeightDiagram],
    floor: Option<i64>,
    max_size: usize,
) -> Result<MultiplicityMatrix> {
    let floor = floor.or_else(|| seeds.iter().flat_map(decompose).filter_map(|g| g.crosses().last().copied()).min());
    let mut seen: BTreeSet<WeightDiagram> = BTreeSet::new();
    let mut queue: VecDeque<WeightDiagram> = VecDeque::new();
    let mut columns: Vec<(WeightDiagram, Vec<WeightDiagram>)> = Vec::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(f) = queue.pop_front() {
        let factors = decompose(&f);
        for g in &factors {
            if above_floor(g, floor) && seen.insert(g.clone()) {
                if seen.len() > max_size {
                    return Err(Error::ClosureTooLarge(max_size));
                }
                queue.push_back(g.clone());
            }
        }
        columns.push((f, factors));
    }
    let mut index: Vec<WeightDiagram> = seen.into_iter().collect();
    index.sort_by(index_order);
    let pos: HashMap<WeightDiagram, usize> = index.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let mut entries = Vec::new();
    for (f, factors) in columns {
        let c = pos[&f];
        for g in factors {
            if let Some(&r) = pos.get(&g) {
                entries.push(((r, c), 1));
            }
        }
    }
    MultiplicityMatrix::from_entries(index, entries)
}

/// Exact inverse of an index-closed unitriangular multiplicity matrix.
///
/// Column `f` of the result expresses `[L(f)]` through Kac module classes,
/// truncated at the floor.
pub fn invert_unitriangular(m: &MultiplicityMatrix) -> Result<MultiplicityMatrix> {
    m.check_unitriangular()?;
    m.check_closed()?;
    let inv = invert_unitriangular_dense(&m.to_dense())?;
    let entries = inv.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| ((r, c), v)));
    MultiplicityMatrix::from_entries(m.index.clone(), entries)
}

/// Exact inverse of a dense upper or lower unitriangular integer matrix.
pub fn invert_unitriangular_dense(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotUnitriangular("matrix is not square".into()));
    }
    if (0..n).any(|i| m[i][i] != 1) {
        return Err(Error::NotUnitriangular("diagonal entry differs from 1".into()));
    }
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m[i][j] == 0));
    let upper = (0..n).all(|i| (0..i).all(|j| m[i][j] == 0));
    if lower {
        Ok(invert_lower(m))
    } else if upper {
        Ok(transpose(&invert_lower(&transpose(m))))
    } else {
        Err(Error::NotUnitriangular("matrix is neither upper nor lower triangular".into()))
    }
}

#[allow(clippy::needless_range_loop)]
fn invert_lower(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut inv = vec![vec![0_i64; n]; n];
    for j in 0..n {
        inv[j][j] = 1;
        for i in j + 1..n {
            let v: i64 = (j..i).map(|k| m[i][k] * inv[k][j]).sum();
            inv[i][j] = -v;
        }
    }
    inv
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    (0..n).map(|i| (0..p).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(xs: &[i64]) -> WeightDiagram {
        WeightDiagram::core_free(xs.iter().copied())
    }

    #[test]
    fn gl11_seed_gives_two_by_two() {
        let m = multiplicity_matrix(&[d(&[0])]).unwrap();
        assert_eq!(m.index(), &[d(&[0]), d(&[-1])]);
        // column x:0 holds both factors
        assert_eq!(m.entry(&d(&[0]), &d(&[0])), 1);
        assert_eq!(m.entry(&d(&[-1]), &d(&[0])), 1);
        assert_eq!(m.entry(&d(&[0]), &d(&[-1])), 0);
        assert_eq!(m.to_dense(), vec![vec![1, 0], vec![1, 1]]);
        m.check_unitriangular().unwrap();
        let inv = invert_unitriangular(&m).unwrap();
        assert_eq!(inv.to_dense(), vec![vec![1, 0], vec![-1, 1]]);
    }

    #[test]
    fn dense_examples() {
        assert_eq!(invert_unitriangular_dense(&[vec![1, 1], vec![0, 1]]).unwrap(), vec![vec![1, -1], vec![0, 1]]);
        assert_eq!(invert_unitriangular_dense(&identity(3)).unwrap(), identity(3));
        assert!(invert_unitriangular_dense(&[vec![1, 1], vec![1, 1]]).is_err());
        assert!(invert_unitriangular_dense(&[vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn typical_seed_is_identity() {
        let t = WeightDiagram::from_parts([], [3], [1]).unwrap();
        let m = multiplicity_matrix(std::slice::from_ref(&t)).unwrap();
        assert_eq!(m.to_dense(), identity(1));
        assert_eq!(invert_unitriangular(&m).unwrap().to_dense(), identity(1));
    }

    #[test]
    fn closure_of_f23() {
        let f = d(&[2, 3]);
        let m = multiplicity_matrix(std::slice::from_ref(&f)).unwrap();
        m.check_unitriangular().unwrap();
        let c = m.position(&f).unwrap();
        assert_eq!(m.column_sum(c), 3);
        let inv = invert_unitriangular(&m).unwrap();
        let prod = mat_mul(&m.to_dense(), &inv.to_dense());
        assert_eq!(prod, identity(m.dim()));
    }

    #[test]
    fn missing_target_is_not_closed() {
        let m = multiplicity_matrix(&[d(&[2, 3])]).unwrap();
        let keep: Vec<usize> = (0..m.dim()).filter(|&i| m.index()[i] != d(&[1, 3])).collect();
        let index: Vec<_> = keep.iter().map(|&i| m.index()[i].clone()).collect();
        let entries = m.entries().filter_map(|((r, c), v)| {
            let r2 = keep.iter().position(|&i| i == r)?;
            let c2 = keep.iter().position(|&i| i == c)?;
            Some(((r2, c2), v))
        });
        let broken = MultiplicityMatrix::from_entries(index, entries).unwrap();
        assert!(matches!(invert_unitriangular(&broken), Err(Error::NotClosed(_))));
    }

    #[test]
    fn closure_guard_trips() {
        let seeds = [d(&[0, 2, 4, 6])];
        assert_eq!(multiplicity_matrix_with(&seeds, Some(-20), 10), Err(Error::ClosureTooLarge(10)));
    }

    #[test]
    fn json_and_csv() {
        let m = multiplicity_matrix(&[d(&[0])]).unwrap();
        let j = m.to_json();
        assert_eq!(j.to_string(), r#"{"entries":[[0,0,1],[1,0,1],[1,1,1]],"index":["x:0","x:-1"]}"#);
        assert_eq!(MultiplicityMatrix::from_json(&j).unwrap(), m);
        assert_eq!(m.to_csv(), "row,col,value\nx:0,x:0,1\nx:-1,x:0,1\nx:-1,x:-1,1\n");
    }
}
