//! Integer partitions, real sequences and the majorization order.
//!
//! Majorization `s ⊴ t` holds when every prefix sum of `t` dominates the
//! matching prefix sum of `s` and the totals agree. Sequences of different
//! lengths are padded with trailing zeros before comparison.

use std::fmt;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default additive tolerance for comparisons against eigenvalue-derived sequences.
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

/// A non-increasing sequence of non-negative integers.
///
/// Trailing zeros are kept but ignored by equality and hashing.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotNonIncreasing(i + 1));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary non-negative integers into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part at zero-based index `i`, or 0 past the end.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> usize {
        self.get(0)
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of non-zero parts.
    pub fn nonzero_len(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    pub fn trimmed(&self) -> Partition {
        Partition(self.0[..self.nonzero_len()].to_vec())
    }

    /// Pads with zeros (or truncates trailing zeros) to exactly `len` parts.
    ///
    /// Panics if a non-zero part would be dropped.
    pub fn padded(&self, len: usize) -> Partition {
        assert!(self.nonzero_len() <= len, "cannot drop non-zero parts");
        let mut v = self.0.clone();
        v.resize(len, 0);
        Partition(v)
    }

    /// The conjugate partition: part `j` (1-based) counts the parts that are `>= j`.
    ///
    /// The result has exactly `self.largest()` non-zero parts.
    pub fn conjugate(&self) -> Partition {
        let top = self.largest();
        let mut out = vec![0usize; top];
        for &p in &self.0 {
            for slot in out.iter_mut().take(p) {
                *slot += 1;
            }
        }
        Partition(out)
    }

    /// Elementwise sum, padding the shorter side with zeros.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition((0..len).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Sorted concatenation (the multiset union of the parts).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    pub fn to_real(&self) -> RealSeq {
        RealSeq {
            values: self.0.iter().map(|&p| p as f64).collect(),
            sorted: true,
        }
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.0[..self.nonzero_len()] == other.0[..other.nonzero_len()]
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0[..self.nonzero_len()].hash(state);
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidEdgeList(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A real sequence with a flag recording that it is known to be non-increasing.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RealSeq {
    pub values: Vec<f64>,
    pub sorted: bool,
}

impl RealSeq {
    /// Wraps values without any ordering claim.
    pub fn new(values: Vec<f64>) -> Self {
        RealSeq {
            values,
            sorted: false,
        }
    }

    /// Wraps values that must already be non-increasing.
    pub fn sorted(values: Vec<f64>) -> Result<Self> {
        if !is_non_increasing(&values) {
            return Err(Error::UnsortedSequence);
        }
        Ok(RealSeq {
            values,
            sorted: true,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    fn check_sorted(&self) -> Result<()> {
        if self.sorted || is_non_increasing(&self.values) {
            Ok(())
        } else {
            Err(Error::UnsortedSequence)
        }
    }
}

fn is_non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Stable non-increasing reordering.
pub fn sort_desc(v: &RealSeq) -> RealSeq {
    let mut values = v.values.clone();
    values.sort_by(|a, b| b.total_cmp(a));
    RealSeq {
        values,
        sorted: true,
    }
}

/// `x` followed by `y`; the result carries no ordering claim.
pub fn concat(x: &RealSeq, y: &RealSeq) -> RealSeq {
    let mut values = x.values.clone();
    values.extend_from_slice(&y.values);
    RealSeq::new(values)
}

/// Elementwise sum of two sorted sequences, zero padded.
pub fn add_sorted(x: &RealSeq, y: &RealSeq) -> Result<RealSeq> {
    x.check_sorted()?;
    y.check_sorted()?;
    let len = x.len().max(y.len());
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    Ok(RealSeq {
        values: (0..len).map(|i| at(&x.values, i) + at(&y.values, i)).collect(),
        sorted: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// Shortest failing prefix length (1-based), if any prefix or the total fails.
    pub first_violation: Option<usize>,
    /// `sum(t[..k]) - sum(s[..k])` for `k = 1..=len`.
    pub prefix_margins: Vec<f64>,
    /// `sum(t) - sum(s)`.
    pub sum_gap: f64,
}

fn verdict_from(margins: Vec<f64>, sum_gap: f64, tol: f64, check_sum: bool) -> MajorizationVerdict {
    let mut first_violation = margins.iter().position(|&m| m < -tol).map(|i| i + 1);
    let sum_ok = !check_sum || sum_gap.abs() <= tol;
    if first_violation.is_none() && !sum_ok {
        first_violation = Some(margins.len().max(1));
    }
    MajorizationVerdict {
        holds: first_violation.is_none(),
        first_violation,
        prefix_margins: margins,
        sum_gap,
    }
}

fn real_margins(t: &[f64], s: &[f64]) -> (Vec<f64>, f64) {
    let len = t.len().max(s.len());
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let (mut st, mut ss) = (0.0, 0.0);
    let mut margins = Vec::with_capacity(len);
    for i in 0..len {
        st += at(t, i);
        ss += at(s, i);
        margins.push(st - ss);
    }
    (margins, st - ss)
}

/// Tests `s ⊴ t`: prefix dominance plus equal totals, both within `tol`.
pub fn majorizes(t: &RealSeq, s: &RealSeq, tol: f64) -> Result<MajorizationVerdict> {
    t.check_sorted()?;
    s.check_sorted()?;
    let (margins, gap) = real_margins(&t.values, &s.values);
    Ok(verdict_from(margins, gap, tol, true))
}

/// Prefix dominance of `t` over `s` without the equal-total condition.
pub fn dominance_prefix(t: &RealSeq, s: &RealSeq, tol: f64) -> Result<MajorizationVerdict> {
    t.check_sorted()?;
    s.check_sorted()?;
    let (margins, gap) = real_margins(&t.values, &s.values);
    Ok(verdict_from(margins, gap, tol, false))
}

fn int_margins(t: &Partition, s: &Partition) -> (Vec<f64>, Vec<i64>, i64) {
    let len = t.len().max(s.len());
    let mut acc = 0i64;
    let mut exact = Vec::with_capacity(len);
    for i in 0..len {
        acc += t.get(i) as i64 - s.get(i) as i64;
        exact.push(acc);
    }
    (exact.iter().map(|&m| m as f64).collect(), exact, acc)
}

fn int_verdict(t: &Partition, s: &Partition, check_sum: bool) -> MajorizationVerdict {
    let (margins, exact, gap) = int_margins(t, s);
    let mut first_violation = exact.iter().position(|&m| m < 0).map(|i| i + 1);
    if first_violation.is_none() && check_sum && gap != 0 {
        first_violation = Some(exact.len().max(1));
    }
    MajorizationVerdict {
        holds: first_violation.is_none(),
        first_violation,
        prefix_margins: margins,
        sum_gap: gap as f64,
    }
}

/// Exact integer test of `s ⊴ t`.
pub fn majorizes_int(t: &Partition, s: &Partition) -> MajorizationVerdict {
    int_verdict(t, s, true)
}

/// Exact integer prefix dominance of `t` over `s`.
pub fn dominance_prefix_int(t: &Partition, s: &Partition) -> MajorizationVerdict {
    int_verdict(t, s, false)
}

/// A random doubly-stochastic matrix: a convex combination of `n` random
/// permutation matrices with seed-driven weights.
pub fn random_doubly_stochastic(n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut m = vec![vec![0.0; n]; n];
    let mut perm: Vec<usize> = (0..n).collect();
    for w in raw {
        perm.shuffle(&mut rng);
        for (i, &j) in perm.iter().enumerate() {
            m[i][j] += w / total;
        }
    }
    Ok(m)
}

/// Checks the Gale-Ryser inequality `c ⊴ r^T` for the row sums `r` and
/// column sums `c` of a 0-1 matrix.
pub fn gale_ryser_check(matrix: &[Vec<u8>]) -> Result<MajorizationVerdict> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut col_sums = vec![0usize; cols];
    let mut row_sums = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::RaggedMatrix(i));
        }
        let mut r = 0;
        for (j, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => {
                    r += 1;
                    col_sums[j] += 1;
                }
                value => return Err(Error::NonBinaryEntry { row: i, col: j, value }),
            }
        }
        row_sums.push(r);
    }
    let rows = Partition::from_unsorted(row_sums);
    let cols = Partition::from_unsorted(col_sums);
    Ok(majorizes_int(&rows.conjugate(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1, 1, 1]).conjugate().parts(), &[4, 1, 1]);
        assert_eq!(Partition::empty().conjugate().parts(), &[] as &[usize]);
        assert_eq!(p(&[2, 2, 1]).conjugate().parts(), &[3, 2]);
        assert_eq!(p(&[0, 0]).conjugate().parts(), &[] as &[usize]);
    }

    #[test]
    fn trailing_zeros_ignored_by_equality() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert_ne!(p(&[2, 1, 1]), p(&[2, 1]));
    }

    #[test]
    fn rejects_increasing() {
        assert_eq!(Partition::new(vec![1, 2]), Err(Error::NotNonIncreasing(1)));
    }

    #[test]
    fn display_and_parse() {
        let q = p(&[3, 1, 1]);
        assert_eq!(q.to_string(), "3,1,1");
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), q);
        assert!("1,3".parse::<Partition>().is_err());
    }

    #[test]
    fn majorizes_examples() {
        let t = RealSeq::sorted(vec![3.0, 2.0, 1.0]).unwrap();
        let s = RealSeq::sorted(vec![2.0, 2.0, 2.0]).unwrap();
        let v = majorizes(&t, &s, 0.0).unwrap();
        assert!(v.holds);
        assert_eq!(v.prefix_margins, vec![1.0, 1.0, 0.0]);

        let t = RealSeq::sorted(vec![4.0, 1.0]).unwrap();
        let s = RealSeq::sorted(vec![3.0, 3.0]).unwrap();
        let v = majorizes(&t, &s, 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.sum_gap, -1.0);

        // Path P4 Laplacian eigenvalues against its conjugate degrees (4,2).
        let t = RealSeq::sorted(vec![4.0, 2.0, 0.0, 0.0]).unwrap();
        let s = RealSeq::sorted(vec![3.41421356, 2.0, 0.58578644, 0.0]).unwrap();
        assert!(majorizes(&t, &s, DEFAULT_TOLERANCE).unwrap().holds);
    }

    #[test]
    fn majorizes_pads_shorter_side() {
        let t = RealSeq::sorted(vec![4.0, 2.0]).unwrap();
        let s = RealSeq::sorted(vec![3.0, 2.0, 1.0, 0.0]).unwrap();
        let v = majorizes(&t, &s, 0.0).unwrap();
        assert!(v.holds);
        assert_eq!(v.prefix_margins.len(), 4);
    }

    #[test]
    fn majorizes_rejects_unsorted() {
        let t = RealSeq::new(vec![1.0, 3.0]);
        let s = RealSeq::sorted(vec![2.0, 2.0]).unwrap();
        assert_eq!(majorizes(&t, &s, 0.0), Err(Error::UnsortedSequence));
        // An unflagged sequence that happens to be ordered is accepted.
        let t = RealSeq::new(vec![3.0, 1.0]);
        assert!(majorizes(&t, &s, 0.0).unwrap().holds);
    }

    #[test]
    fn dominance_prefix_examples() {
        let seq = |v: &[f64]| RealSeq::sorted(v.to_vec()).unwrap();
        assert!(dominance_prefix(&seq(&[5.0, 0.0]), &seq(&[4.0, 1.0]), 0.0).unwrap().holds);
        let v = dominance_prefix(&seq(&[4.0, 1.0]), &seq(&[5.0, 0.0]), 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation, Some(1));
        assert!(dominance_prefix(&seq(&[3.0, 3.0]), &seq(&[3.0, 2.0]), 0.0).unwrap().holds);
        // Same pair fails the full test on the totals.
        let v = majorizes(&seq(&[3.0, 3.0]), &seq(&[3.0, 2.0]), 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation, Some(2));
    }

    #[test]
    fn integer_fast_path_is_exact() {
        let v = majorizes_int(&p(&[4, 2]), &p(&[3, 2, 1]));
        assert!(v.holds);
        assert!(!majorizes_int(&p(&[4, 1]), &p(&[3, 3])).holds);
        assert!(dominance_prefix_int(&p(&[3, 3]), &p(&[3, 2])).holds);
    }

    #[test]
    fn sort_and_concat() {
        let s = sort_desc(&RealSeq::new(vec![1.0, 3.0, 2.0]));
        assert_eq!(s.values, vec![3.0, 2.0, 1.0]);
        assert!(s.sorted);
        assert!(sort_desc(&RealSeq::new(vec![])).is_empty());
        assert_eq!(sort_desc(&RealSeq::new(vec![2.0; 3])).values, vec![2.0; 3]);

        let c = concat(&RealSeq::sorted(vec![3.0, 1.0]).unwrap(), &RealSeq::new(vec![2.0]));
        assert_eq!(c.values, vec![3.0, 1.0, 2.0]);
        assert!(!c.sorted);
        assert_eq!(concat(&RealSeq::new(vec![]), &RealSeq::new(vec![5.0])).values, vec![5.0]);
        let z = RealSeq::new(vec![2.0, 0.0]);
        assert_eq!(concat(&z, &z).values, vec![2.0, 0.0, 2.0, 0.0]);
    }

    #[test]
    fn doubly_stochastic_sums() {
        assert_eq!(random_doubly_stochastic(1, 9).unwrap(), vec![vec![1.0]]);
        assert_eq!(random_doubly_stochastic(0, 1), Err(Error::ZeroDimension));
        for n in 2..7 {
            let m = random_doubly_stochastic(n, 1234 + n as u64).unwrap();
            for i in 0..n {
                let row: f64 = m[i].iter().sum();
                let col: f64 = m.iter().map(|r| r[i]).sum();
                assert!((row - 1.0).abs() < 1e-12 && (col - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn doubly_stochastic_image_is_majorized() {
        let m = random_doubly_stochastic(5, 42).unwrap();
        let y = [7.0, -1.5, 3.25, 0.0, 2.0];
        let x: Vec<f64> = m.iter().map(|r| r.iter().zip(&y).map(|(a, b)| a * b).sum()).collect();
        let v = majorizes(&sort_desc(&RealSeq::new(y.to_vec())), &sort_desc(&RealSeq::new(x)), 1e-9).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn gale_ryser_examples() {
        let v = gale_ryser_check(&[vec![1, 1, 1]]).unwrap();
        assert!(v.holds);
        assert!(v.prefix_margins.iter().all(|&m| m == 0.0));
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(gale_ryser_check(&id).unwrap().holds);
        assert!(matches!(
            gale_ryser_check(&[vec![0, 2]]),
            Err(Error::NonBinaryEntry { row: 0, col: 1, value: 2 })
        ));
        assert_eq!(gale_ryser_check(&[vec![0, 1], vec![1]]), Err(Error::RaggedMatrix(1)));
    }
}
