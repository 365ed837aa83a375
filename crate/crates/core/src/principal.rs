//! Principal angles by the classical matrix route: stack the spanning
//! vectors as columns, orthonormalise both matrices, and take the SVD
//! of the r x r cross-Gram matrix Q_A^T Q_B. The singular values are
//! the principal-angle cosines and the rotated Q columns are the
//! principal vector pairs.
//!
//! This module is deliberately self-contained (its own Gram-Schmidt,
//! its own one-sided Jacobi SVD) so it shares no numerical machinery
//! with the Clifford modules it cross-checks.

use crate::blade::SpanningSet;
use crate::error::{Error, Result};

/// Default rank tolerance, relative to the largest input column norm.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 30;
const JACOBI_TOL: f64 = 1e-14;

/// Column-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ColMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl ColMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ColMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ColMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidInput("matrix needs at least one column".into()));
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidInput("ragged columns".into()));
        }
        if columns.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            data.extend_from_slice(c);
        }
        Ok(ColMatrix {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// self^T * rhs
    pub fn transpose_times(&self, rhs: &ColMatrix) -> ColMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch");
        let mut out = ColMatrix::zeros(self.cols, rhs.cols);
        for j in 0..rhs.cols {
            for i in 0..self.cols {
                out.set(i, j, dot(self.col(i), rhs.col(j)));
            }
        }
        out
    }

    /// self * rhs
    pub fn times(&self, rhs: &ColMatrix) -> ColMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = ColMatrix::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let out_col = out.col_mut(j);
            for k in 0..self.cols {
                let f = rhs.get(k, j);
                if f == 0.0 {
                    continue;
                }
                for (o, &s) in out_col.iter_mut().zip(self.col(k)) {
                    *o += f * s;
                }
            }
        }
        out
    }

    fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt on the columns, with one re-orthogonalisation
/// pass when a residual drops more than six decades below its input.
pub fn orthonormalize(m: &ColMatrix) -> Result<ColMatrix> {
    orthonormalize_with_tol(m, DEFAULT_RANK_TOL)
}

pub fn orthonormalize_with_tol(m: &ColMatrix, rank_tol: f64) -> Result<ColMatrix> {
    if m.cols > m.rows {
        return Err(Error::InvalidInput(format!(
            "cannot orthonormalize {} columns in {} rows",
            m.cols, m.rows
        )));
    }
    let max_norm = (0..m.cols)
        .map(|j| dot(m.col(j), m.col(j)).sqrt())
        .fold(0.0, f64::max);
    let mut q = m.clone();
    for j in 0..q.cols {
        let input_norm = dot(q.col(j), q.col(j)).sqrt();
        for pass in 0..2 {
            for k in 0..j {
                let d = dot(q.col(j), q.col(k));
                let (head, tail) = q.data.split_at_mut(j * q.rows);
                let qk = &head[k * q.rows..(k + 1) * q.rows];
                let qj = &mut tail[..q.rows];
                for (x, &y) in qj.iter_mut().zip(qk) {
                    *x -= d * y;
                }
            }
            let res_norm = dot(q.col(j), q.col(j)).sqrt();
            if pass == 0 && res_norm >= 1e-6 * input_norm {
                break;
            }
        }
        let res_norm = dot(q.col(j), q.col(j)).sqrt();
        if res_norm <= rank_tol * max_norm {
            return Err(Error::RankDeficient { column: j });
        }
        let inv = 1.0 / res_norm;
        for x in q.col_mut(j) {
            *x *= inv;
        }
    }
    Ok(q)
}

/// Thin SVD of a small square matrix.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ColMatrix,
    pub sigma: Vec<f64>,
    pub v: ColMatrix,
}

/// One-sided Jacobi SVD of a square matrix (side <= 16): plane
/// rotations applied from the right until all column pairs are
/// orthogonal. Simple, and accurate for small singular values, which
/// matters for angles near pi/2. Convergence is detected by a full
/// sweep without rotations against the threshold
/// `|b_p . b_q| <= 1e-14 * |C|_F^2`; the Frobenius norm is rotation
/// invariant, so the threshold is fixed across sweeps. Exceeding the
/// sweep cap raises NumericalFailure instead of returning degraded
/// output.
pub fn svd_small(c: &ColMatrix) -> Result<Svd> {
    if c.rows != c.cols {
        return Err(Error::InvalidInput(format!(
            "svd_small expects a square matrix, got {}x{}",
            c.rows, c.cols
        )));
    }
    let n = c.cols;
    let mut b = c.clone();
    let mut v = ColMatrix::identity(n);
    let fro_sq = b.frobenius_sq();
    let threshold = JACOBI_TOL * fro_sq;

    if fro_sq > 0.0 {
        let mut converged = false;
        for _sweep in 0..JACOBI_MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let alpha = dot(b.col(p), b.col(p));
                    let beta = dot(b.col(q), b.col(q));
                    let gamma = dot(b.col(p), b.col(q));
                    if gamma.abs() <= threshold {
                        continue;
                    }
                    let tau = (beta - alpha) / (2.0 * gamma);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let cs = 1.0 / (1.0 + t * t).sqrt();
                    let sn = cs * t;
                    rotate_columns(&mut b, p, q, cs, sn);
                    rotate_columns(&mut v, p, q, cs, sn);
                    rotated = true;
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NumericalFailure(format!(
                "one-sided Jacobi SVD did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| dot(b.col(j), b.col(j)).sqrt()).collect();
    order.sort_by(|&a, &bb| norms[bb].partial_cmp(&norms[a]).unwrap());

    let sigma_max = norms[order[0]];
    let null_tol = sigma_max * (n as f64) * f64::EPSILON;
    let mut sigma = Vec::with_capacity(n);
    let mut u = ColMatrix::zeros(n, n);
    let mut v_sorted = ColMatrix::zeros(n, n);
    let mut null_slots = Vec::new();
    for (slot, &j) in order.iter().enumerate() {
        sigma.push(norms[j]);
        v_sorted.col_mut(slot).copy_from_slice(v.col(j));
        if norms[j] > null_tol {
            let inv = 1.0 / norms[j];
            for (o, &x) in u.col_mut(slot).iter_mut().zip(b.col(j)) {
                *o = x * inv;
            }
        } else {
            null_slots.push(slot);
        }
    }
    complete_orthonormal(&mut u, &null_slots);
    Ok(Svd {
        u,
        sigma,
        v: v_sorted,
    })
}

fn rotate_columns(m: &mut ColMatrix, p: usize, q: usize, cs: f64, sn: f64) {
    for i in 0..m.rows {
        let xp = m.get(i, p);
        let xq = m.get(i, q);
        m.set(i, p, cs * xp - sn * xq);
        m.set(i, q, sn * xp + cs * xq);
    }
}

/// Fill the listed null columns with unit vectors orthogonal to every
/// other column, drawn from the standard basis.
fn complete_orthonormal(u: &mut ColMatrix, null_slots: &[usize]) {
    let n = u.rows;
    for &slot in null_slots {
        let mut filled = false;
        for candidate in 0..n {
            let mut w = vec![0.0; n];
            w[candidate] = 1.0;
            // not-yet-filled null columns are still zero and project to nothing
            for j in 0..u.cols {
                if j == slot {
                    continue;
                }
                let d = dot(&w, u.col(j));
                for (wi, &uj) in w.iter_mut().zip(u.col(j)) {
                    *wi -= d * uj;
                }
            }
            let nw = dot(&w, &w).sqrt();
            if nw > 0.5 {
                let inv = 1.0 / nw;
                for (o, &x) in u.col_mut(slot).iter_mut().zip(&w) {
                    *o = x * inv;
                }
                filled = true;
                break;
            }
        }
        debug_assert!(filled, "orthonormal completion failed");
    }
}

/// Ordered principal angles with their paired principal vectors.
/// Cosines are sorted descending (angles ascending); callers wanting
/// the opposite convention re-sort.
#[derive(Clone, Debug)]
pub struct PrincipalData {
    pub angles: Vec<f64>,
    pub cosines: Vec<f64>,
    pub a_vectors: Vec<Vec<f64>>,
    pub b_vectors: Vec<Vec<f64>>,
}

pub fn principal_angles(a: &SpanningSet, b: &SpanningSet) -> Result<PrincipalData> {
    principal_angles_with_tol(a, b, DEFAULT_RANK_TOL)
}

pub fn principal_angles_with_tol(
    a: &SpanningSet,
    b: &SpanningSet,
    rank_tol: f64,
) -> Result<PrincipalData> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim().get(),
            right: b.dim().get(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::GradeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let ma = ColMatrix::from_columns(a.vectors())?;
    let mb = ColMatrix::from_columns(b.vectors())?;
    let qa = orthonormalize_with_tol(&ma, rank_tol)?;
    let qb = orthonormalize_with_tol(&mb, rank_tol)?;
    let c = qa.transpose_times(&qb);
    let svd = svd_small(&c)?;
    let cosines: Vec<f64> = svd.sigma.iter().map(|s| s.clamp(0.0, 1.0)).collect();
    let angles: Vec<f64> = cosines.iter().map(|c| c.acos()).collect();
    let pa = qa.times(&svd.u);
    let pb = qb.times(&svd.v);
    let a_vectors = (0..pa.cols()).map(|j| pa.col(j).to_vec()).collect();
    let b_vectors = (0..pb.cols()).map(|j| pb.col(j).to_vec()).collect();
    Ok(PrincipalData {
        angles,
        cosines,
        a_vectors,
        b_vectors,
    })
}
