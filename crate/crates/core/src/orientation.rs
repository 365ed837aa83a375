//! Complete relative orientation of two r-blades from their single
//! geometric product.
//!
//! For unit blades A, B the product `G = A ~B` is a product of
//! commuting rotors, one per principal-vector pair: pairs at angle zero
//! contribute 1, pairs at a right angle contribute their plane
//! bivector, and the rest contribute `cos(theta_k) + i_k sin(theta_k)`.
//! The grade support of G therefore tells the intersection dimension s
//! (top grade `2(r-s)`) and the perpendicularity count t (bottom grade
//! `2t`); dividing G by its lowest-grade part leaves scalar part one
//! and the bivector `sum tan(theta_k) i_k`, whose split into orthogonal
//! 2-blades yields the remaining angles and principal planes.

use std::f64::consts::FRAC_PI_2;

use crate::algebra::{mask_grade, Multivector};
use crate::blade::Blade;
use crate::error::{Error, Result};

/// Threshold for counting a grade as present in the unit-blade product.
pub const TOL_GRADE: f64 = 1e-10;
/// Classification tolerance for zero / right principal angles.
pub const TOL_ANGLE: f64 = 1e-9;

const SPLIT_STOP_REL: f64 = 1e-12;
const SPLIT_RESIDUAL_REL: f64 = 1e-9;
const EIG_MAX_SWEEPS: usize = 60;

/// Grade structure of the unit-blade product `G = unit(A) ~unit(B)`.
#[derive(Clone, Debug)]
pub struct ProductDecomposition {
    pub g: Multivector,
    pub grade_norms: Vec<f64>,
    pub lowest_grade: usize,
    pub highest_grade: usize,
    pub s_intersection: usize,
    pub t_perpendicular: usize,
}

/// One simple component of a bivector: weight and unit 2-blade.
#[derive(Clone, Debug)]
pub struct BivectorComponent {
    pub sigma: f64,
    pub plane: Multivector,
}

/// Numerical health indicators of an orientation extraction.
#[derive(Clone, Debug, Default)]
pub struct Residuals {
    /// Norm of the odd grades of G (identically zero in exact arithmetic).
    pub grade_leakage: f64,
    /// |<G'>_0 - 1| after dividing out the lowest-grade part.
    pub scalar_unit_gap: f64,
    /// |F - sum sigma_k i_k| over the split components.
    pub split_residual: f64,
    /// Coefficient-wise distance between G and the rebuilt rotor product.
    pub reconstruction_error: f64,
    /// Gap between |cos_total| and the product of reported angle cosines.
    pub cos_product_gap: f64,
    /// Orientation of the top-grade part: sign of the pseudoscalar
    /// coefficient when the top grade fills the whole space, otherwise
    /// the sign of its largest coefficient (convention-dependent).
    pub top_grade_sign: f64,
}

/// Full Clifford-side orientation result.
#[derive(Clone, Debug)]
pub struct AngleReport {
    /// Signed scalar part `<A ~B>_0 / (|A| |B|)`; its absolute value is
    /// the product of principal-angle cosines, the sign carries the
    /// relative blade orientation.
    pub cos_total: f64,
    /// Magnitude of the top-grade part of the unit product: the product
    /// of sines over the nonzero principal angles (1 when all angles
    /// vanish).
    pub sin_product_abs: f64,
    /// Count of zero principal angles (dimension of the intersection).
    pub s_intersection: usize,
    /// Count of right principal angles.
    pub t_perpendicular: usize,
    /// All r principal angles in [0, pi/2], sorted descending.
    pub principal_angles: Vec<f64>,
    /// Unit principal-plane 2-blades, descending by angle: the single
    /// right-angle plane when t = 1, then one plane per angle strictly
    /// between 0 and pi/2. For t >= 2 the individual right-angle planes
    /// are not recoverable from the product; see `perp_blade`.
    pub principal_planes: Vec<Multivector>,
    /// Unit 2t-blade spanned by all right-angle planes together, when
    /// t > 0.
    pub perp_blade: Option<Multivector>,
    pub residuals: Residuals,
}

fn check_pair(a: &Blade, b: &Blade) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim().get(),
            right: b.dim().get(),
        });
    }
    if a.grade() != b.grade() {
        return Err(Error::GradeMismatch {
            left: a.grade(),
            right: b.grade(),
        });
    }
    if a.magnitude() <= 0.0 || b.magnitude() <= 0.0 {
        return Err(Error::ZeroBlade);
    }
    Ok(())
}

/// Total-angle cosine in a single product: `<A ~B>_0 / (|A| |B|)`.
/// Signed; agrees with the product of principal-angle cosines in
/// absolute value.
pub fn cos_angle(a: &Blade, b: &Blade) -> Result<f64> {
    check_pair(a, b)?;
    let raw = a.mv().scalar_product(&b.mv().reverse())?;
    Ok(raw / (a.magnitude() * b.magnitude()))
}

/// Product of all principal-angle sines from the literal 2r-grade part
/// `|<A ~B>_{2r}| / (|A| |B|)`. Zero whenever any principal angle is
/// zero. For 2r > n the 2r-grade part is truncated away by the algebra
/// and the formula returns 0; the per-angle route in [`full_orientation`]
/// stays available there.
pub fn sin_product(a: &Blade, b: &Blade) -> Result<f64> {
    check_pair(a, b)?;
    let r = a.grade();
    let n = a.dim().get();
    if 2 * r > n {
        return Ok(0.0);
    }
    let g = a.mv().geometric_product(&b.mv().reverse())?;
    Ok(g.grade_norms()[2 * r] / (a.magnitude() * b.magnitude()))
}

/// Grade decomposition of the unit-blade product, with the implied
/// intersection dimension `s = r - highest/2` and perpendicularity
/// count `t = lowest/2`.
pub fn decompose_product(a: &Blade, b: &Blade) -> Result<ProductDecomposition> {
    check_pair(a, b)?;
    let au = a.unit()?;
    let bu = b.unit()?;
    let g = au.mv().geometric_product(&bu.mv().reverse())?;
    let grade_norms = g.grade_norms();
    let present: Vec<usize> = grade_norms
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > TOL_GRADE)
        .map(|(k, _)| k)
        .collect();
    let lowest = *present.first().ok_or_else(|| {
        Error::NumericalFailure("unit-blade product has no grade above tolerance".into())
    })?;
    let highest = *present.last().unwrap();
    let r = a.grade();
    if !lowest.is_multiple_of(2) || !highest.is_multiple_of(2) || highest > 2 * r {
        return Err(Error::NumericalFailure(format!(
            "unexpected grade support {present:?} in a product of grade-{r} blades"
        )));
    }
    Ok(ProductDecomposition {
        g,
        grade_norms,
        lowest_grade: lowest,
        highest_grade: highest,
        s_intersection: r - highest / 2,
        t_perpendicular: lowest / 2,
    })
}

/// Split a grade-2 multivector into its simple components
/// `F = sum sigma_k u_k ^ v_k` with positive weights and mutually
/// orthogonal, mutually commuting unit planes, sorted by descending
/// weight.
///
/// F corresponds to the antisymmetric matrix `W[i][j] = F_ij`; each
/// invariant plane of W carries a weight pair `+-sigma_k`. The top
/// plane is taken from the dominant eigenpair of the symmetric
/// `W^T W` (eigenvalue `sigma^2`, plane spanned by u and `-W u /
/// sigma`), subtracted off, and the residual re-analysed, so each
/// weight is resolved against the scale of what is left rather than
/// the scale of the whole bivector. Repeated weights make the split
/// non-unique; any valid orthogonal split is returned.
#[allow(clippy::needless_range_loop)] // symmetric (i,j)/(j,i) updates
pub fn bivector_split(f: &Multivector) -> Result<Vec<BivectorComponent>> {
    let n = f.dim().get();
    let f_norm = f.modulus();
    let off_grade: f64 = f
        .grade_norms()
        .iter()
        .enumerate()
        .filter(|&(g, _)| g != 2)
        .map(|(_, m)| m * m)
        .sum::<f64>()
        .sqrt();
    if off_grade > 1e-9 * f_norm {
        return Err(Error::InvalidInput(
            "bivector split expects a homogeneous grade-2 input".into(),
        ));
    }
    if f_norm == 0.0 {
        return Ok(Vec::new());
    }

    let mut omega = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let c = f.coeff((1 << i) | (1 << j));
            omega[i][j] = c;
            omega[j][i] = -c;
        }
    }

    let stop = SPLIT_STOP_REL * f_norm;
    let mut parts: Vec<(f64, Vec<f64>, Vec<f64>)> = Vec::new();
    for _ in 0..n / 2 {
        if omega_modulus(&omega) <= stop {
            break;
        }
        let mut gram = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for row in &omega {
                    acc += row[i] * row[j];
                }
                gram[i][j] = acc;
                gram[j][i] = acc;
            }
        }
        let (vals, vecs) = jacobi_eigh(gram)?;
        let top = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let u = vecs[top].clone();
        let mut w = vec![0.0; n];
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = omega[i].iter().zip(&u).map(|(o, x)| o * x).sum();
        }
        let sigma = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if sigma <= stop {
            break;
        }
        let v: Vec<f64> = w.iter().map(|x| -x / sigma).collect();
        for i in 0..n {
            for j in 0..n {
                omega[i][j] -= sigma * (u[i] * v[j] - v[i] * u[j]);
            }
        }
        parts.push((sigma, u, v));
    }

    parts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let components: Vec<BivectorComponent> = parts
        .into_iter()
        .map(|(sigma, u, v)| BivectorComponent {
            sigma,
            plane: plane_from_pair(f, &u, &v),
        })
        .collect();

    let mut rebuilt = Multivector::zero(f.dim());
    for c in &components {
        rebuilt = rebuilt + c.plane.scaled(c.sigma);
    }
    let residual = (f.clone() - rebuilt).modulus();
    if residual > SPLIT_RESIDUAL_REL * f_norm {
        return Err(Error::SplitFailure(format!(
            "residual {residual:.3e} after {} components, |F| = {f_norm:.3e}",
            components.len()
        )));
    }
    Ok(components)
}

#[allow(clippy::needless_range_loop)]
fn plane_from_pair(f: &Multivector, u: &[f64], v: &[f64]) -> Multivector {
    let n = f.dim().get();
    let mut plane = Multivector::zero(f.dim());
    for i in 0..n {
        for j in (i + 1)..n {
            plane.set_coeff((1 << i) | (1 << j), u[i] * v[j] - u[j] * v[i]);
        }
    }
    plane
}

/// Modulus of the bivector represented by an antisymmetric matrix:
/// Frobenius norm over sqrt(2).
fn omega_modulus(omega: &[Vec<f64>]) -> f64 {
    (omega
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        / 2.0)
        .sqrt()
}

/// Cyclic two-sided Jacobi eigendecomposition of a symmetric matrix.
/// Returns the (unsorted) eigenvalues and matching eigenvectors.
#[allow(clippy::needless_range_loop)] // rotations cross-index rows p, q, k
fn jacobi_eigh(mut a: Vec<Vec<f64>>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n]; // v[i][j]: component i of eigenvector j
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let fro = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    if fro > 0.0 {
        let mut converged = false;
        for _ in 0..EIG_MAX_SWEEPS {
            let mut off: f64 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[p][q].abs());
                }
            }
            if off <= 1e-15 * fro {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p][q];
                    if apq.abs() <= 1e-18 * fro {
                        continue;
                    }
                    let tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let cs = 1.0 / (1.0 + t * t).sqrt();
                    let sn = cs * t;
                    a[p][p] -= t * apq;
                    a[q][q] += t * apq;
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    for k in 0..n {
                        if k == p || k == q {
                            continue;
                        }
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = cs * akp - sn * akq;
                        a[p][k] = a[k][p];
                        a[k][q] = sn * akp + cs * akq;
                        a[q][k] = a[k][q];
                    }
                    for row in v.iter_mut() {
                        let vp = row[p];
                        let vq = row[q];
                        row[p] = cs * vp - sn * vq;
                        row[q] = sn * vp + cs * vq;
                    }
                }
            }
        }
        if !converged {
            return Err(Error::NumericalFailure(format!(
                "symmetric Jacobi eigensolver did not converge in {EIG_MAX_SWEEPS} sweeps"
            )));
        }
    }
    let vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let vecs: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    Ok((vals, vecs))
}

/// Extract the complete relative orientation of two equal-grade blades.
pub fn full_orientation(a: &Blade, b: &Blade) -> Result<AngleReport> {
    let d = decompose_product(a, b)?;
    let n = a.dim().get();
    let s = d.s_intersection;
    let t = d.t_perpendicular;

    // Divide out the lowest-grade part. It is an invertible blade: the
    // product of the right-angle planes weighted by the product of the
    // middle cosines, so its inverse is its reverse over its squared
    // modulus.
    let lowest_part = d.g.grade_projection(d.lowest_grade)?;
    let lowest_mod = lowest_part.modulus();
    let lowest_inv = lowest_part.reverse().scaled(1.0 / (lowest_mod * lowest_mod));
    let g_prime = lowest_inv.geometric_product(&d.g)?;
    // no bivectors exist in Cl(1); there the product is scalar anyway
    let f = if n >= 2 {
        g_prime.grade_projection(2)?
    } else {
        Multivector::zero(d.g.dim())
    };

    let mut middle = bivector_split(&f)?;
    let m = (d.highest_grade - d.lowest_grade) / 2;
    middle.truncate(m);

    let mut rebuilt_f = Multivector::zero(f.dim());
    for c in &middle {
        rebuilt_f = rebuilt_f + c.plane.scaled(c.sigma);
    }
    let split_residual = (f.clone() - rebuilt_f).modulus();

    let mut principal_angles = vec![FRAC_PI_2; t];
    for c in &middle {
        principal_angles.push(c.sigma.atan());
    }
    // zeros for the intersection, plus padding when a component sat
    // below the split floor and reads as a zero angle
    principal_angles.resize(t + m + s, 0.0);
    principal_angles.sort_by(|x, y| y.partial_cmp(x).unwrap());

    let unit_lowest = lowest_part.scaled(1.0 / lowest_mod);
    let perp_blade = if t > 0 { Some(unit_lowest.clone()) } else { None };
    let mut principal_planes = Vec::with_capacity(middle.len() + 1);
    if t == 1 {
        principal_planes.push(unit_lowest.clone());
    }
    principal_planes.extend(middle.iter().map(|c| c.plane.clone()));

    // Rebuild G as the product of the per-plane rotors times the unit
    // lowest-grade blade; all factors commute.
    let mut rebuilt = unit_lowest;
    for c in &middle {
        let theta = c.sigma.atan();
        let rotor = Multivector::scalar(f.dim(), theta.cos()) + c.plane.scaled(theta.sin());
        rebuilt = rebuilt.geometric_product(&rotor)?;
    }
    let reconstruction_error = (rebuilt - d.g.clone()).modulus();

    let cos_total = d.g.scalar_part();
    let sin_product_abs = d.grade_norms[d.highest_grade];
    let cos_prod: f64 = principal_angles.iter().map(|t| t.cos()).product();
    let grade_leakage = d
        .grade_norms
        .iter()
        .enumerate()
        .filter(|&(k, _)| k % 2 == 1)
        .map(|(_, m)| m * m)
        .sum::<f64>()
        .sqrt();
    let top_grade_sign = if d.highest_grade == n {
        d.g.coeff(d.g.dim().pseudoscalar_mask()).signum()
    } else {
        let mut best = 0.0_f64;
        for (mask, &c) in d.g.coeffs().iter().enumerate() {
            if mask_grade(mask) == d.highest_grade && c.abs() > best.abs() {
                best = c;
            }
        }
        best.signum()
    };

    Ok(AngleReport {
        cos_total,
        sin_product_abs,
        s_intersection: s,
        t_perpendicular: t,
        principal_angles,
        principal_planes,
        perp_blade,
        residuals: Residuals {
            grade_leakage,
            scalar_unit_gap: (g_prime.scalar_part() - 1.0).abs(),
            split_residual,
            reconstruction_error,
            cos_product_gap: (cos_total.abs() - cos_prod).abs(),
            top_grade_sign,
        },
    })
}
