//! Dense symmetric eigenvalues by cyclic Jacobi rotations, and Laplacian spectra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, IntMatrix};
use crate::partition::RealSeq;

/// Absolute tolerance on `|m[i][j] - m[j][i]|`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Sweeps stop once the off-diagonal Frobenius norm drops below this times `max(1, ‖M‖_F)`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
/// Relative clamp width for eigenvalues of positive semidefinite matrices.
pub const CLAMP_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;

/// Real symmetric matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedMatrix(i));
            }
            data.extend_from_slice(row);
        }
        for i in 0..n {
            for j in i + 1..n {
                if (data[i * n + j] - data[j * n + i]).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { n, data })
    }

    pub fn from_int(m: &IntMatrix) -> Result<Self> {
        let rows: Vec<Vec<f64>> = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as f64).collect())
            .collect();
        if m.rows() != m.cols() {
            return Err(Error::RaggedMatrix(0));
        }
        SymMatrix::from_rows(&rows)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, &v) in values.iter().enumerate() {
            data[i * n + i] = v;
        }
        SymMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(SymMatrix { n: self.n, data })
    }
}

/// Eigenvalues in non-increasing order plus the largest eigenpair residual
/// `‖Mv - λv‖∞` observed for the accumulated eigenvectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub residual: f64,
}

impl Spectrum {
    pub fn as_seq(&self) -> RealSeq {
        RealSeq {
            values: self.values.clone(),
            sorted: true,
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues of a symmetric matrix, sorted non-increasing.
pub fn eigenvalues_sym(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.n;
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let stop = OFF_DIAGONAL_TOLERANCE * m.frobenius_norm().max(1.0);
    let mut sweeps = 0;
    while off_diagonal_norm(&a, n) >= stop {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut residual: f64 = 0.0;
    for j in 0..n {
        let lambda = a[j * n + j];
        for i in 0..n {
            let mv: f64 = (0..n).map(|k| m.data[i * n + k] * v[k * n + j]).sum();
            residual = residual.max((mv - lambda * v[i * n + j]).abs());
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum { values, residual })
}

/// Spectrum of a matrix known to be positive semidefinite: eigenvalues within
/// `CLAMP_TOLERANCE * max(1, ‖M‖_F)` of zero are set to exactly zero.
pub fn psd_spectrum(m: &SymMatrix) -> Result<Spectrum> {
    let mut spec = eigenvalues_sym(m)?;
    let tau = CLAMP_TOLERANCE * m.frobenius_norm().max(1.0);
    for x in &mut spec.values {
        if x.abs() <= tau {
            *x = 0.0;
        }
    }
    Ok(spec)
}

pub fn laplacian_matrix(g: &Graph) -> SymMatrix {
    SymMatrix::from_int(&g.laplacian()).expect("Laplacians are symmetric")
}

/// Laplacian eigenvalues, non-increasing, with the kernel clamped to zero.
pub fn laplacian_spectrum(g: &Graph) -> Spectrum {
    psd_spectrum(&laplacian_matrix(g)).expect("Jacobi converges on small integer matrices")
}

/// Second-smallest Laplacian eigenvalue.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::OutOfRange {
            what: "vertex count",
            value: g.n(),
            range: ">= 2",
        });
    }
    let s = laplacian_spectrum(g);
    Ok(s.values[g.n() - 2])
}

/// Rounds to 12 significant digits for stable report output.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_graph, standard_family, Family};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn diagonal_and_k2() {
        let d = SymMatrix::diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(eigenvalues_sym(&d).unwrap().values, vec![3.0, 2.0, 1.0]);
        let k2 = SymMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert!(close(&eigenvalues_sym(&k2).unwrap().values, &[2.0, 0.0], 1e-12));
    }

    #[test]
    fn cycle_four_matches_characteristic_polynomial() {
        // det(L(C4) - xI) = x (x - 2)^2 (x - 4).
        let c4 = standard_family(Family::Cycle, 4).unwrap();
        let s = laplacian_spectrum(&c4);
        assert!(close(&s.values, &[4.0, 2.0, 2.0, 0.0], 1e-10));
        assert_eq!(s.values[3], 0.0);
    }

    #[test]
    fn star_and_path() {
        let star = standard_family(Family::Star, 4).unwrap();
        assert!(close(&laplacian_spectrum(&star).values, &[4.0, 1.0, 1.0, 0.0], 1e-10));
        let p4 = standard_family(Family::Path, 4).unwrap();
        let r2 = 2f64.sqrt();
        assert!(close(&laplacian_spectrum(&p4).values, &[2.0 + r2, 2.0, 2.0 - r2, 0.0], 1e-10));
        assert_eq!(laplacian_spectrum(&Graph::empty(5).unwrap()).values, vec![0.0; 5]);
    }

    #[test]
    fn degenerate_orders() {
        assert!(laplacian_spectrum(&Graph::empty(0).unwrap()).is_empty());
        assert_eq!(laplacian_spectrum(&Graph::empty(1).unwrap()).values, vec![0.0]);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert_eq!(m, Err(Error::NotSymmetric(0, 1)));
    }

    #[test]
    fn connectivity_examples() {
        let k2 = standard_family(Family::Complete, 2).unwrap();
        assert!((algebraic_connectivity(&k2).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(algebraic_connectivity(&k2.disjoint_sum(&k2).unwrap()).unwrap(), 0.0);
        let c4 = standard_family(Family::Cycle, 4).unwrap();
        assert!((algebraic_connectivity(&c4).unwrap() - 2.0).abs() < 1e-10);
        assert!(algebraic_connectivity(&Graph::empty(1).unwrap()).is_err());
    }

    #[test]
    fn zero_multiplicity_counts_components() {
        for seed in 0..200 {
            let n = 1 + (seed % 8) as usize;
            let g = random_graph(n, 0.25, seed).unwrap();
            let zeros = laplacian_spectrum(&g).values.iter().filter(|&&x| x == 0.0).count();
            assert_eq!(zeros, g.components().len(), "seed {seed}");
            if n >= 2 {
                assert_eq!(algebraic_connectivity(&g).unwrap() == 0.0, !g.is_connected());
            }
        }
    }

    #[test]
    fn trace_and_frobenius_identities() {
        for seed in 0..50 {
            let g = random_graph(14, 0.35, seed).unwrap();
            let l = laplacian_matrix(&g);
            let s = laplacian_spectrum(&g);
            assert!(s.values.iter().all(|&x| x >= 0.0));
            assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
            let two_m = 2.0 * g.edge_count() as f64;
            assert!((s.sum() - two_m).abs() <= 1e-9 * two_m.max(1.0));
            let sq: f64 = s.values.iter().map(|x| x * x).sum();
            let fro2 = l.frobenius_norm().powi(2);
            assert!((sq - fro2).abs() <= 1e-8 * fro2.max(1.0));
            assert!(s.residual < 1e-9);
        }
    }

    #[test]
    fn sig12_rounding() {
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(round_sig12(-0.0).to_string(), "0");
        assert_eq!(round_sig12(3.414213562373095), 3.41421356237);
        assert_eq!(round_sig12(2.0), 2.0);
    }
}
