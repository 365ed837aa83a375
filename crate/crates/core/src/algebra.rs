//! Dense multivectors of the Euclidean Clifford algebra Cl(n).
//!
//! A multivector is stored as 2^n coefficients indexed by basis-blade
//! bitmask: bit i set means e_{i+1} is a factor, factors in ascending
//! index order. Products walk every pair of nonzero coefficients and
//! resolve the basis-blade sign by counting the transpositions needed
//! to merge the two masks; repeated indices contract to +1 (Euclidean
//! signature). With n <= 16 a value stays below 512 KiB, so the dense
//! layout wins over sparse bookkeeping at this scale.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported base-space dimension.
pub const MAX_DIM: usize = 16;

/// Dimension of the base space R^n, validated to 1..=16.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dim(usize);

impl Dim {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_DIM).contains(&n) {
            Ok(Dim(n))
        } else {
            Err(Error::DimOutOfRange(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of basis blades, 2^n.
    pub fn basis_count(self) -> usize {
        1 << self.0
    }

    /// Bitmask of the unit pseudoscalar e_1 e_2 ... e_n.
    pub fn pseudoscalar_mask(self) -> usize {
        (1 << self.0) - 1
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Grade of a basis-blade bitmask: the number of vector factors.
#[inline]
pub fn mask_grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Sign of the product of two canonical basis blades: parity of the
/// transpositions needed to merge them, i.e. the count of index pairs
/// (i in a, j in b) with i > j.
#[inline]
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Reverse sign for a grade-k blade: (-1)^{k(k-1)/2}.
#[inline]
fn reverse_sign(grade: usize) -> f64 {
    match grade % 4 {
        0 | 1 => 1.0,
        _ => -1.0,
    }
}

/// Dense multivector of Cl(n, 0).
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: Dim,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(dim: Dim) -> Self {
        Multivector {
            dim,
            coeffs: vec![0.0; dim.basis_count()],
        }
    }

    pub fn scalar(dim: Dim, value: f64) -> Self {
        let mut mv = Multivector::zero(dim);
        mv.coeffs[0] = value;
        mv
    }

    /// Basis vector e_index (1-based).
    pub fn basis_vector(dim: Dim, index: usize) -> Result<Self> {
        if index == 0 || index > dim.get() {
            return Err(Error::InvalidInput(format!(
                "basis vector index {index} out of range 1..={}",
                dim.get()
            )));
        }
        Multivector::from_mask(dim, 1 << (index - 1), 1.0)
    }

    /// Unit basis blade from 1-based, strictly ascending vector indices.
    pub fn basis_blade(dim: Dim, indices: &[usize]) -> Result<Self> {
        let mut mask = 0usize;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > dim.get() {
                return Err(Error::InvalidInput(format!(
                    "basis index {i} out of range 1..={}",
                    dim.get()
                )));
            }
            if i <= prev {
                return Err(Error::InvalidInput(
                    "basis indices must be strictly ascending".into(),
                ));
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Multivector::from_mask(dim, mask, 1.0)
    }

    /// Single-term multivector `coeff * e_mask`.
    pub fn from_mask(dim: Dim, mask: usize, coeff: f64) -> Result<Self> {
        if mask >= dim.basis_count() {
            return Err(Error::InvalidInput(format!(
                "basis mask {mask:#x} out of range for dimension {dim}"
            )));
        }
        let mut mv = Multivector::zero(dim);
        mv.coeffs[mask] = coeff;
        Ok(mv)
    }

    /// Grade-1 multivector from coordinates.
    pub fn from_vector(dim: Dim, components: &[f64]) -> Result<Self> {
        if components.len() != dim.get() {
            return Err(Error::DimensionMismatch {
                left: components.len(),
                right: dim.get(),
            });
        }
        if components.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite vector component".into()));
        }
        let mut mv = Multivector::zero(dim);
        for (i, &c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = c;
        }
        Ok(mv)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: f64) {
        self.coeffs[mask] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Grade-1 coordinates (other grades ignored).
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.dim.get()).map(|i| self.coeffs[1 << i]).collect()
    }

    fn same_dim(&self, rhs: &Self) -> Result<Dim> {
        if self.dim == rhs.dim {
            Ok(self.dim)
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim.get(),
                right: rhs.dim.get(),
            })
        }
    }

    /// Clifford product. Bilinear and associative; for vectors a, b it
    /// splits into the symmetric inner and antisymmetric outer part.
    pub fn geometric_product(&self, rhs: &Self) -> Result<Self> {
        let dim = self.same_dim(rhs)?;
        let mut out = vec![0.0; dim.basis_count()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                out[a ^ b] += reorder_sign(a, b) * ca * cb;
            }
        }
        Ok(Multivector { dim, coeffs: out })
    }

    /// Outer (wedge) product: the terms of the geometric product whose
    /// factor masks are disjoint.
    pub fn outer_product(&self, rhs: &Self) -> Result<Self> {
        let dim = self.same_dim(rhs)?;
        let mut out = vec![0.0; dim.basis_count()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 || a & b != 0 {
                    continue;
                }
                out[a | b] += reorder_sign(a, b) * ca * cb;
            }
        }
        Ok(Multivector { dim, coeffs: out })
    }

    /// Left contraction: for homogeneous grades r, s this is the
    /// (s - r)-grade part of the geometric product, zero when r > s.
    /// Per basis-blade pair that keeps exactly the terms where the left
    /// mask is contained in the right one.
    pub fn left_contraction(&self, rhs: &Self) -> Result<Self> {
        let dim = self.same_dim(rhs)?;
        let mut out = vec![0.0; dim.basis_count()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 || a & b != a {
                    continue;
                }
                out[a ^ b] += reorder_sign(a, b) * ca * cb;
            }
        }
        Ok(Multivector { dim, coeffs: out })
    }

    /// Scalar part of the geometric product of the raw arguments,
    /// `<M N>_0`. Pass a pre-reversed argument where `M * ~N` is wanted;
    /// then it specialises to the coefficient sum `sum_A M_A N_A`.
    pub fn scalar_product(&self, rhs: &Self) -> Result<f64> {
        self.same_dim(rhs)?;
        let mut acc = 0.0;
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            let cb = rhs.coeffs[a];
            if cb == 0.0 {
                continue;
            }
            // a ^ b == 0 only for b == a; self-merge sign is the reverse sign.
            acc += reverse_sign(mask_grade(a)) * ca * cb;
        }
        Ok(acc)
    }

    /// Restriction to the coefficients of grade k.
    pub fn grade_projection(&self, k: usize) -> Result<Self> {
        if k > self.dim.get() {
            return Err(Error::GradeOutOfRange {
                grade: k,
                dim: self.dim.get(),
            });
        }
        let mut out = Multivector::zero(self.dim);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if mask_grade(mask) == k {
                out.coeffs[mask] = c;
            }
        }
        Ok(out)
    }

    /// Reverse involution: grade-k part times (-1)^{k(k-1)/2}.
    pub fn reverse(&self) -> Self {
        let mut out = self.clone();
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            *c *= reverse_sign(mask_grade(mask));
        }
        out
    }

    /// Modulus |M| = sqrt(M * ~M) = Euclidean norm of the coefficients.
    pub fn modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Per-grade moduli, indexed 0..=n.
    pub fn grade_norms(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim.get() + 1];
        for (mask, &c) in self.coeffs.iter().enumerate() {
            acc[mask_grade(mask)] += c * c;
        }
        acc.into_iter().map(f64::sqrt).collect()
    }

    /// Scale by 1/|M|.
    pub fn normalized(&self) -> Result<Self> {
        let m = self.modulus();
        if m == 0.0 || !m.is_finite() {
            return Err(Error::ZeroBlade);
        }
        Ok(self.scaled(1.0 / m))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= factor;
        }
        out
    }

    /// Dual `M i_n^{-1}`: right multiplication by the inverse unit
    /// pseudoscalar. The inverse is `~i_n` since `i_n` is a unit blade,
    /// so the double dual is `(-1)^{n(n-1)/2} M`. With this convention
    /// `dual(e1 e2) = e3` and `dual(1) = -e1 e2 e3` in Cl(3).
    pub fn dual(&self) -> Self {
        let n = self.dim.get();
        let full = self.dim.pseudoscalar_mask();
        let inv_sign = reverse_sign(n);
        let mut out = Multivector::zero(self.dim);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            out.coeffs[mask ^ full] += c * inv_sign * reorder_sign(mask, full);
        }
        out
    }

    /// Largest absolute coefficient difference; panics on mismatched dims.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Reflection of a grade-1 vector x at the hyperplane with normal a:
/// `x' = -a^{-1} x a` with `a^{-1} = a / a^2`.
pub fn reflect(x: &Multivector, normal: &Multivector) -> Result<Multivector> {
    let norm_sq = normal.scalar_product(&normal.reverse())?;
    if norm_sq == 0.0 {
        return Err(Error::ZeroNormal);
    }
    let grade_norms = normal.grade_norms();
    if grade_norms
        .iter()
        .enumerate()
        .any(|(g, &m)| g != 1 && m != 0.0)
    {
        return Err(Error::InvalidInput("reflection normal must be a vector".into()));
    }
    let sandwich = normal.geometric_product(x)?.geometric_product(normal)?;
    Ok(sandwich.scaled(-1.0 / norm_sq))
}

/// Rotor sandwich `x'' = R^{-1} x R` with `R^{-1} = ~R / |R|^2`, valid
/// for versors (products of invertible vectors). Norm- and
/// grade-preserving when R is a product of unit vectors.
pub fn rotor_apply(rotor: &Multivector, x: &Multivector) -> Result<Multivector> {
    let norm_sq = rotor.scalar_product(&rotor.reverse())?;
    if norm_sq == 0.0 {
        return Err(Error::NonInvertibleRotor);
    }
    let sandwich = rotor
        .reverse()
        .geometric_product(x)?
        .geometric_product(rotor)?;
    Ok(sandwich.scaled(1.0 / norm_sq))
}

fn format_terms(mv: &Multivector, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (mask, &c) in mv.coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if first {
            if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
        } else if c < 0.0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{}", c.abs())?;
        for i in 0..mv.dim.get() {
            if mask & (1 << i) != 0 {
                write!(f, " e{}", i + 1)?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(n={}: ", self.dim)?;
        format_terms(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(self, f)
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        let dim = self.same_dim(&rhs).expect("dimension mismatch in +");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a + b)
            .collect();
        Multivector { dim, coeffs }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        let dim = self.same_dim(&rhs).expect("dimension mismatch in -");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a - b)
            .collect();
        Multivector { dim, coeffs }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scaled(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs).expect("dimension mismatch in *")
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scaled(rhs)
    }
}
