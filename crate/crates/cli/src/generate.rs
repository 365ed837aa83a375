//! Seeded pair generation, either fully random or with planted
//! principal angles.
//!
//! Planted mode draws a random orthonormal frame, takes the first r
//! vectors as a spanning set for A, and builds B by rotating the k-th
//! frame vector by theta_k into a fresh orthogonal direction. The pairs
//! then realise exactly the requested principal angles. Both spanning
//! sets are finally recombined by random invertible mixes to hide the
//! construction.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use subangle::blade::orthogonal_factorization;
use subangle::{Blade, Dim, SpanningSet};

use crate::error::CliError;
use crate::pairspec::SubspacePairSpec;

#[derive(Clone, Debug)]
pub struct GenerateParams {
    pub n: usize,
    pub r: usize,
    pub count: usize,
    pub seed: u64,
    pub planted: Option<Vec<f64>>,
}

/// Comma-separated angle list for --planted.
pub fn parse_planted(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Parse(format!("invalid planted angle '{tok}': {e}")))
        })
        .collect()
}

pub fn generate_pairs(params: &GenerateParams) -> Result<Vec<SubspacePairSpec>, CliError> {
    let GenerateParams {
        n,
        r,
        count,
        seed,
        planted,
    } = params;
    Dim::new(*n).map_err(|e| CliError::Parse(e.to_string()))?;
    if *r == 0 || r > n {
        return Err(CliError::Parse(format!(
            "subspace dimension r = {r} must satisfy 1 <= r <= n = {n}"
        )));
    }
    if *count == 0 {
        return Err(CliError::Parse("count must be at least 1".into()));
    }
    let planted = match planted {
        None => None,
        Some(angles) => {
            if angles.len() > *r {
                return Err(CliError::Parse(format!(
                    "{} planted angles exceed r = {r}",
                    angles.len()
                )));
            }
            if angles.iter().any(|t| !t.is_finite() || *t < 0.0 || *t > FRAC_PI_2) {
                return Err(CliError::Parse(
                    "planted angles must lie in [0, pi/2]".into(),
                ));
            }
            let mut padded = angles.clone();
            padded.resize(*r, 0.0);
            let fresh = padded.iter().filter(|t| **t > 0.0).count();
            if r + fresh > *n {
                return Err(CliError::Parse(format!(
                    "planting {fresh} nonzero angles on r = {r} needs dimension >= {}, got {n}",
                    r + fresh
                )));
            }
            Some(padded)
        }
    };

    let mut rng = ChaCha12Rng::seed_from_u64(*seed);
    let mut pairs = Vec::with_capacity(*count);
    for _ in 0..*count {
        let pair = match &planted {
            None => random_pair(&mut rng, *n, *r),
            Some(angles) => planted_pair(&mut rng, *n, *r, angles),
        };
        pairs.push(pair);
    }
    Ok(pairs)
}

fn random_vector(rng: &mut ChaCha12Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn spans_independently(n: usize, vectors: &[Vec<f64>]) -> bool {
    Dim::new(n)
        .ok()
        .and_then(|dim| SpanningSet::new(dim, vectors.to_vec()).ok())
        .map(|set| Blade::from_spanning(&set).is_ok())
        .unwrap_or(false)
}

fn random_pair(rng: &mut ChaCha12Rng, n: usize, r: usize) -> SubspacePairSpec {
    let draw_span = |rng: &mut ChaCha12Rng| loop {
        let vectors: Vec<Vec<f64>> = (0..r).map(|_| random_vector(rng, n)).collect();
        if spans_independently(n, &vectors) {
            return vectors;
        }
    };
    SubspacePairSpec {
        n,
        a_span: draw_span(rng),
        b_span: draw_span(rng),
    }
}

/// Random orthonormal k-frame in R^n from Gram-Schmidt on random
/// vectors, redrawn on the (rare) degenerate sample.
fn random_frame(rng: &mut ChaCha12Rng, n: usize, k: usize) -> Vec<Vec<f64>> {
    loop {
        let vectors: Vec<Vec<f64>> = (0..k).map(|_| random_vector(rng, n)).collect();
        if let Ok((_, factors)) = orthogonal_factorization(&vectors, 1e-6) {
            return factors;
        }
    }
}

/// Replace a spanning set by `count` random invertible combinations of
/// its vectors (same subspace, construction hidden).
fn recombine(rng: &mut ChaCha12Rng, vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let r = vectors.len();
    let n = vectors[0].len();
    loop {
        let mixed: Vec<Vec<f64>> = (0..r)
            .map(|_| {
                let mut v = vec![0.0; n];
                for src in vectors {
                    let c = rng.random_range(-1.0..1.0);
                    for (vi, si) in v.iter_mut().zip(src) {
                        *vi += c * si;
                    }
                }
                v
            })
            .collect();
        // invertibility of the mix = independence of the results
        if orthogonal_factorization(&mixed, 1e-6).is_ok() {
            return mixed;
        }
    }
}

fn planted_pair(
    rng: &mut ChaCha12Rng,
    n: usize,
    r: usize,
    angles: &[f64],
) -> SubspacePairSpec {
    let fresh = angles.iter().filter(|t| **t > 0.0).count();
    let frame = random_frame(rng, n, r + fresh);
    let mut fresh_columns = frame[r..].iter();
    let mut b_vectors = Vec::with_capacity(r);
    for (k, &theta) in angles.iter().enumerate() {
        if theta > 0.0 {
            let p = fresh_columns.next().unwrap();
            // exact right angles keep an exactly zero component
            let (sin, cos) = if theta == FRAC_PI_2 {
                (1.0, 0.0)
            } else {
                theta.sin_cos()
            };
            let v: Vec<f64> = frame[k]
                .iter()
                .zip(p)
                .map(|(q, p)| cos * q + sin * p)
                .collect();
            b_vectors.push(v);
        } else {
            b_vectors.push(frame[k].clone());
        }
    }
    SubspacePairSpec {
        n,
        a_span: recombine(rng, &frame[..r]),
        b_span: recombine(rng, &b_vectors),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use subangle::orientation::full_orientation;

    fn blades(spec: &SubspacePairSpec) -> (Blade, Blade) {
        let (sa, sb) = spec.spanning_sets().unwrap();
        (
            Blade::from_spanning(&sa).unwrap(),
            Blade::from_spanning(&sb).unwrap(),
        )
    }

    #[test]
    fn generation_is_deterministic() {
        let params = GenerateParams {
            n: 5,
            r: 2,
            count: 4,
            seed: 42,
            planted: None,
        };
        let first = generate_pairs(&params).unwrap();
        let second = generate_pairs(&params).unwrap();
        assert_eq!(first, second);
        let rendered: Vec<String> = first.iter().map(|s| s.render()).collect();
        let rendered_again: Vec<String> = second.iter().map(|s| s.render()).collect();
        assert_eq!(rendered, rendered_again);
    }

    #[test]
    fn different_seeds_differ() {
        let mut params = GenerateParams {
            n: 5,
            r: 2,
            count: 1,
            seed: 1,
            planted: None,
        };
        let first = generate_pairs(&params).unwrap();
        params.seed = 2;
        let second = generate_pairs(&params).unwrap();
        assert_ne!(first, second);
    }

    #[test]
    fn planted_angles_are_realised() {
        let theta = std::f64::consts::FRAC_PI_3;
        let params = GenerateParams {
            n: 4,
            r: 2,
            count: 3,
            seed: 7,
            planted: Some(vec![theta, 0.0]),
        };
        for spec in generate_pairs(&params).unwrap() {
            let (a, b) = blades(&spec);
            let report = full_orientation(&a, &b).unwrap();
            assert!((report.principal_angles[0] - theta).abs() < 1e-9);
            assert!(report.principal_angles[1].abs() < 1e-9);
            assert_eq!(report.s_intersection, 1);
        }
    }

    #[test]
    fn planted_right_angle_is_exact() {
        let params = GenerateParams {
            n: 5,
            r: 2,
            count: 2,
            seed: 11,
            planted: Some(vec![FRAC_PI_2, 0.9]),
        };
        for spec in generate_pairs(&params).unwrap() {
            let (a, b) = blades(&spec);
            let report = full_orientation(&a, &b).unwrap();
            assert_eq!(report.t_perpendicular, 1);
            assert!((report.principal_angles[0] - FRAC_PI_2).abs() < 1e-12);
            assert!((report.principal_angles[1] - 0.9).abs() < 1e-9);
        }
    }

    #[test]
    fn parameter_validation() {
        let bad_r = GenerateParams {
            n: 3,
            r: 4,
            count: 1,
            seed: 0,
            planted: None,
        };
        assert_eq!(generate_pairs(&bad_r).unwrap_err().exit_code(), 2);

        let too_many_angles = GenerateParams {
            n: 4,
            r: 2,
            count: 1,
            seed: 0,
            planted: Some(vec![0.1, 0.2, 0.3]),
        };
        assert_eq!(generate_pairs(&too_many_angles).unwrap_err().exit_code(), 2);

        let out_of_range = GenerateParams {
            n: 4,
            r: 2,
            count: 1,
            seed: 0,
            planted: Some(vec![2.0]),
        };
        assert_eq!(generate_pairs(&out_of_range).unwrap_err().exit_code(), 2);

        // r nonzero angles need r + r dimensions
        let no_room = GenerateParams {
            n: 3,
            r: 2,
            count: 1,
            seed: 0,
            planted: Some(vec![0.5, 0.5]),
        };
        assert_eq!(generate_pairs(&no_room).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn parse_planted_accepts_comma_list() {
        let angles = parse_planted("0.5, 1.0,0").unwrap();
        assert_eq!(angles, vec![0.5, 1.0, 0.0]);
        assert!(parse_planted("0.5;1.0").is_err());
    }
}
