//! Blades as subspace representatives.
//!
//! A set of r independent spanning vectors becomes an r-blade: the
//! outer product of the vectors, together with an orthogonal
//! factorisation produced by modified Gram-Schmidt. The factorisation
//! rewrites the blade as `magnitude * u_1 u_2 ... u_r` with orthonormal
//! u_k, where the magnitude is the r-volume of the spanned
//! parallelepiped (the product of the Gram-Schmidt residual norms).

use crate::algebra::{Dim, Multivector};
use crate::error::{Error, Result};

/// Default rank tolerance, relative to the largest input vector norm.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], x: &[f64], alpha: f64) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Validated list of spanning vectors for an r-dimensional subspace.
#[derive(Clone, Debug)]
pub struct SpanningSet {
    dim: Dim,
    vectors: Vec<Vec<f64>>,
}

impl SpanningSet {
    pub fn new(dim: Dim, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = dim.get();
        let r = vectors.len();
        if r == 0 || r > n {
            return Err(Error::InvalidInput(format!(
                "spanning set must hold between 1 and {n} vectors, got {r}"
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    left: v.len(),
                    right: n,
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "spanning vector {i} has a non-finite component"
                )));
            }
            if v.iter().all(|&c| c == 0.0) {
                return Err(Error::InvalidInput(format!("spanning vector {i} is zero")));
            }
        }
        Ok(SpanningSet { dim, vectors })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

/// Orthogonal factorisation by modified Gram-Schmidt: returns the
/// blade magnitude (product of residual norms) and the orthonormal
/// factors, so that the outer product of the inputs equals
/// `magnitude * factors[0] factors[1] ...` as a geometric product.
/// A second projection pass is run for a vector whose residual lost
/// more than six decades against its input norm.
pub fn orthogonal_factorization(
    vectors: &[Vec<f64>],
    rank_tol: f64,
) -> Result<(f64, Vec<Vec<f64>>)> {
    let max_norm = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let mut factors: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    let mut magnitude = 1.0;
    for (index, v) in vectors.iter().enumerate() {
        let input_norm = norm(v);
        let mut residual = v.clone();
        for q in &factors {
            let d = dot(&residual, q);
            axpy(&mut residual, q, -d);
        }
        let mut res_norm = norm(&residual);
        if res_norm < 1e-6 * input_norm {
            for q in &factors {
                let d = dot(&residual, q);
                axpy(&mut residual, q, -d);
            }
            res_norm = norm(&residual);
        }
        if res_norm <= rank_tol * max_norm {
            return Err(Error::DegenerateSpan { index });
        }
        magnitude *= res_norm;
        let inv = 1.0 / res_norm;
        for c in residual.iter_mut() {
            *c *= inv;
        }
        factors.push(residual);
    }
    Ok((magnitude, factors))
}

/// Validated r-blade: homogeneous grade-r multivector with its cached
/// magnitude and orthonormal factors.
#[derive(Clone, Debug)]
pub struct Blade {
    mv: Multivector,
    grade: usize,
    magnitude: f64,
    ortho_factors: Vec<Vec<f64>>,
}

impl Blade {
    /// Blade `v_1 ^ v_2 ^ ... ^ v_r` from a spanning set. Factor order
    /// follows input order, so swapping two spanning vectors negates
    /// the blade; angle extraction is insensitive to that sign.
    pub fn from_spanning(set: &SpanningSet) -> Result<Self> {
        Blade::from_spanning_with_tol(set, DEFAULT_RANK_TOL)
    }

    pub fn from_spanning_with_tol(set: &SpanningSet, rank_tol: f64) -> Result<Self> {
        let (magnitude, ortho_factors) = orthogonal_factorization(set.vectors(), rank_tol)?;
        let mut mv = Multivector::from_vector(set.dim(), &set.vectors()[0])?;
        for v in &set.vectors()[1..] {
            let next = Multivector::from_vector(set.dim(), v)?;
            mv = mv.outer_product(&next)?;
        }
        Ok(Blade {
            mv,
            grade: set.len(),
            magnitude,
            ortho_factors,
        })
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn dim(&self) -> Dim {
        self.mv.dim()
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn ortho_factors(&self) -> &[Vec<f64>] {
        &self.ortho_factors
    }

    /// Same subspace with magnitude scaled to one.
    pub fn unit(&self) -> Result<Blade> {
        if self.magnitude <= 0.0 || !self.magnitude.is_finite() {
            return Err(Error::ZeroBlade);
        }
        Ok(Blade {
            mv: self.mv.scaled(1.0 / self.magnitude),
            grade: self.grade,
            magnitude: 1.0,
            ortho_factors: self.ortho_factors.clone(),
        })
    }

    /// Subspace membership `x ^ A = 0`, thresholded as
    /// `|x ^ A| <= tol |x| |A|`. The zero vector is a member.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        let xv = Multivector::from_vector(self.dim(), x)?;
        let wedge = xv.outer_product(&self.mv)?;
        Ok(wedge.modulus() <= tol * xv.modulus() * self.magnitude)
    }
}
