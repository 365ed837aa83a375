//! Property checks for the algebra kernel and blade construction.

use proptest::prelude::*;
use subangle::algebra::{reflect, rotor_apply, Dim, Multivector};
use subangle::{Blade, SpanningSet};

const REL_TOL: f64 = 1e-12;

fn dim_strategy() -> impl Strategy<Value = usize> {
    1usize..=6
}

fn sparse_mv(n: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0usize..(1usize << n), -1.0f64..1.0), 1..=8).prop_map(move |terms| {
        let dim = Dim::new(n).unwrap();
        let mut mv = Multivector::zero(dim);
        for (mask, c) in terms {
            let old = mv.coeff(mask);
            mv.set_coeff(mask, old + c);
        }
        mv
    })
}

fn mv_triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    dim_strategy().prop_flat_map(|n| (sparse_mv(n), sparse_mv(n), sparse_mv(n)))
}

fn raw_vectors(n: usize, r: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), r)
}

fn blade_pair_inputs() -> impl Strategy<Value = (usize, usize, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    (2usize..=6).prop_flat_map(|n| {
        (1usize..=n.min(3)).prop_flat_map(move |r| {
            (Just(n), Just(r), raw_vectors(n, r), raw_vectors(n, r))
        })
    })
}

fn try_blade(n: usize, vectors: Vec<Vec<f64>>) -> Option<Blade> {
    let set = SpanningSet::new(Dim::new(n).unwrap(), vectors).ok()?;
    Blade::from_spanning(&set).ok()
}

proptest! {
    #[test]
    fn geometric_product_is_associative((a, b, c) in mv_triple()) {
        let left = a.geometric_product(&b).unwrap().geometric_product(&c).unwrap();
        let right = a.geometric_product(&b.geometric_product(&c).unwrap()).unwrap();
        let scale = (a.modulus() * b.modulus() * c.modulus()).max(1.0);
        prop_assert!(left.max_abs_diff(&right) <= REL_TOL * scale);
    }

    #[test]
    fn products_match_grade_projections((a, b, _) in mv_triple()) {
        let dim = a.dim();
        let n = dim.get();
        for r in 0..=n {
            let ar = a.grade_projection(r).unwrap();
            if ar.is_zero() {
                continue;
            }
            for s in 0..=n {
                let bs = b.grade_projection(s).unwrap();
                if bs.is_zero() {
                    continue;
                }
                let scale = (ar.modulus() * bs.modulus()).max(1.0);
                let gp = ar.geometric_product(&bs).unwrap();
                let outer = ar.outer_product(&bs).unwrap();
                let outer_want = if r + s <= n {
                    gp.grade_projection(r + s).unwrap()
                } else {
                    Multivector::zero(dim)
                };
                prop_assert!(outer.max_abs_diff(&outer_want) <= REL_TOL * scale);

                let contraction = ar.left_contraction(&bs).unwrap();
                let contraction_want = if s >= r {
                    gp.grade_projection(s - r).unwrap()
                } else {
                    Multivector::zero(dim)
                };
                prop_assert!(contraction.max_abs_diff(&contraction_want) <= REL_TOL * scale);
            }
        }
    }

    #[test]
    fn reverse_is_an_involutive_anti_automorphism((a, b, _) in mv_triple()) {
        prop_assert!(a.reverse().reverse().max_abs_diff(&a) == 0.0);
        let left = a.geometric_product(&b).unwrap().reverse();
        let right = b.reverse().geometric_product(&a.reverse()).unwrap();
        let scale = (a.modulus() * b.modulus()).max(1.0);
        prop_assert!(left.max_abs_diff(&right) <= REL_TOL * scale);
    }

    #[test]
    fn scalar_product_with_reverse_sums_squares((a, _, _) in mv_triple()) {
        let got = a.scalar_product(&a.reverse()).unwrap();
        let want: f64 = a.coeffs().iter().map(|c| c * c).sum();
        prop_assert!((got - want).abs() <= REL_TOL * want.max(1.0));
    }

    #[test]
    fn blade_product_modulus_multiplies((n, _, va, vb) in blade_pair_inputs()) {
        let (Some(a), Some(b)) = (try_blade(n, va), try_blade(n, vb)) else {
            return Ok(());
        };
        let g = a.mv().geometric_product(&b.mv().reverse()).unwrap();
        let want = a.mv().modulus() * b.mv().modulus();
        prop_assert!((g.modulus() - want).abs() <= 1e-10 * want.max(1.0));
    }

    #[test]
    fn blade_magnitude_matches_modulus((n, _, va, _) in blade_pair_inputs()) {
        let Some(a) = try_blade(n, va) else { return Ok(()); };
        prop_assert!((a.mv().modulus() - a.magnitude()).abs() <= 1e-10 * a.magnitude());
    }

    #[test]
    fn blade_factors_rebuild_blade((n, _, va, _) in blade_pair_inputs()) {
        let Some(a) = try_blade(n, va) else { return Ok(()); };
        let dim = a.dim();
        let factors = a.ortho_factors();
        for (i, f) in factors.iter().enumerate() {
            let norm: f64 = f.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-12, "factor {i} norm {norm}");
            for g in &factors[..i] {
                let d: f64 = f.iter().zip(g).map(|(x, y)| x * y).sum();
                prop_assert!(d.abs() <= 1e-10, "factors not orthogonal: {d}");
            }
        }
        let mut acc = Multivector::scalar(dim, a.magnitude());
        for f in factors {
            let v = Multivector::from_vector(dim, f).unwrap();
            acc = acc.geometric_product(&v).unwrap();
        }
        prop_assert!(a.mv().max_abs_diff(&acc) <= 1e-10 * a.magnitude().max(1.0));
    }

    #[test]
    fn blade_shear_invariance(
        n in 2usize..=6,
        va in raw_vectors(6, 2),
        mu in -2.0f64..2.0,
    ) {
        let vectors: Vec<Vec<f64>> = va.iter().map(|v| v[..n].to_vec()).collect();
        let sheared = vec![
            vectors[0].clone(),
            vectors[1]
                .iter()
                .zip(&vectors[0])
                .map(|(b, a)| b + mu * a)
                .collect(),
        ];
        let (Some(plain), Some(reshaped)) = (try_blade(n, vectors), try_blade(n, sheared)) else {
            return Ok(());
        };
        prop_assert!(
            plain.mv().max_abs_diff(reshaped.mv()) <= 1e-10 * plain.magnitude().max(1.0)
        );
    }

    #[test]
    fn reflect_preserves_modulus(
        n in 2usize..=6,
        x in raw_vectors(6, 1),
        a in raw_vectors(6, 1),
    ) {
        let dim = Dim::new(n).unwrap();
        let xv = Multivector::from_vector(dim, &x[0][..n]).unwrap();
        let av = Multivector::from_vector(dim, &a[0][..n]).unwrap();
        prop_assume!(av.modulus() > 0.1);
        let reflected = reflect(&xv, &av).unwrap();
        prop_assert!((reflected.modulus() - xv.modulus()).abs() <= REL_TOL * xv.modulus().max(1.0));
        // grade-1 in, grade-1 out
        let norms = reflected.grade_norms();
        for (g, m) in norms.iter().enumerate() {
            if g != 1 {
                prop_assert!(*m <= REL_TOL);
            }
        }
    }

    #[test]
    fn rotor_apply_preserves_modulus(
        n in 2usize..=6,
        x in raw_vectors(6, 1),
        factors in raw_vectors(6, 4),
    ) {
        let dim = Dim::new(n).unwrap();
        let xv = Multivector::from_vector(dim, &x[0][..n]).unwrap();
        let mut rotor = Multivector::scalar(dim, 1.0);
        for f in &factors {
            let v = Multivector::from_vector(dim, &f[..n]).unwrap();
            prop_assume!(v.modulus() > 0.1);
            rotor = rotor.geometric_product(&v.normalized().unwrap()).unwrap();
        }
        let rotated = rotor_apply(&rotor, &xv).unwrap();
        prop_assert!((rotated.modulus() - xv.modulus()).abs() <= 1e-12 * xv.modulus().max(1.0));
    }
}

#[test]
fn basis_vectors_anticommute() {
    for n in 2..=6 {
        let dim = Dim::new(n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let ei = Multivector::basis_vector(dim, i).unwrap();
                let ej = Multivector::basis_vector(dim, j).unwrap();
                let ij = ei.geometric_product(&ej).unwrap();
                let ji = ej.geometric_product(&ei).unwrap();
                if i == j {
                    assert_eq!(ij.scalar_part(), 1.0);
                    assert!(ij.max_abs_diff(&Multivector::scalar(dim, 1.0)) == 0.0);
                } else {
                    assert!(ij.max_abs_diff(&ji.scaled(-1.0)) == 0.0);
                }
            }
        }
    }
}
