//! Shared generators for the integration suites: seeded random Gaussian
//! rationals, coefficient polynomials and closed lattice paths.

use dalattice::basis::CoefficientPoly;
use dalattice::{GaussianRational, LatticePath, LatticePoint, Window};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re_num = rng.gen_range(-4i64..=4);
    let im_num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    GaussianRational::from_integers(re_num, im_num)
        .checked_div(&GaussianRational::from_integers(den, 0))
        .unwrap()
}

/// Random coefficient polynomial of degree at most `max_deg` with a
/// guaranteed nonzero top coefficient region (the draw may still produce
/// lower degree if leading draws are zero; that is fine for the suites).
pub fn random_coefficient_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> CoefficientPoly {
    let deg = rng.gen_range(0..=max_deg);
    CoefficientPoly::new((0..=deg).map(|_| random_gaussian(rng)).collect())
}

/// Random closed unit-step path inside `window`: a bounded random walk
/// followed by a staircase back to the start. Length stays below
/// `2 * walk_steps + window diameter`.
pub fn random_closed_path(
    rng: &mut ChaCha8Rng,
    window: Window,
    walk_steps: usize,
) -> LatticePath {
    let start = LatticePoint::new(
        rng.gen_range(window.x_min..=window.x_max),
        rng.gen_range(window.y_min..=window.y_max),
    );
    let mut vertices = vec![start];
    let mut cur = start;
    for _ in 0..walk_steps {
        let candidates = [
            LatticePoint::new(cur.x + 1, cur.y),
            LatticePoint::new(cur.x - 1, cur.y),
            LatticePoint::new(cur.x, cur.y + 1),
            LatticePoint::new(cur.x, cur.y - 1),
        ];
        let inside: Vec<LatticePoint> = candidates
            .into_iter()
            .filter(|p| window.contains(*p))
            .collect();
        cur = inside[rng.gen_range(0..inside.len())];
        vertices.push(cur);
    }
    // Staircase back to the start; axis-aligned, so it stays inside the
    // bounding box of the two endpoints and hence inside the window.
    if cur != start {
        let back = LatticePath::staircase(cur, start);
        vertices.extend_from_slice(&back.vertices()[1..]);
    }
    LatticePath::new(vertices).expect("constructed path has unit steps")
}
