//! Shared fixtures and samplers for the integration suites: deterministic
//! RNG, smooth curves over prime fields, random strictly non-special point
//! divisors, and rational curves fitted through small random points.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trigonal::linalg::kernel_basis;
use trigonal::{Curve, Family, FieldElement, FieldSpec, Fp, Point, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A smooth member of the family over F_p: `y³ = x^s + x + c` with the
/// smallest constant `c` that avoids singularities.
pub fn fp_curve(family: Family, m: u32, p: u64) -> Curve<Fp> {
    let spec = FieldSpec::prime(p).expect("test modulus is prime");
    let s = match family {
        Family::C1 => 3 * m + 1,
        Family::C2 => 3 * m + 2,
    } as u64;
    for c in 1..p {
        let lambda = BTreeMap::from([(3 * (s - 1), Fp::new(1, p)), (3 * s, Fp::new(c, p))]);
        if let Ok(curve) = Curve::new(family, m, &lambda, spec) {
            return curve;
        }
    }
    unreachable!("every large prime field admits a smooth member");
}

/// The census fixture: `y³ = x⁴ + 2x² + 5` over F_7. Every involution fiber
/// over a rational x is full or empty (no rational ramification), which
/// keeps the exhaustive degree-4 sweep free of unverifiable edge cases.
pub fn census_fixture() -> Curve<Fp> {
    let spec = FieldSpec::prime(7).expect("7 is prime");
    let lambda = BTreeMap::from([(12, Fp::new(5, 7)), (6, Fp::new(2, 7))]);
    Curve::new(Family::C1, 1, &lambda, spec).expect("fixture curve is smooth")
}

/// `count` random affine points with pairwise distinct x-coordinates. On a
/// trigonal curve distinct projections rule out involution pairs and
/// triples, so the result is always strictly non-special.
pub fn sample_points(curve: &Curve<Fp>, rng: &mut ChaCha8Rng, count: usize) -> Vec<Point<Fp>> {
    let FieldSpec::Prime { p } = curve.spec() else {
        unreachable!("sampler is for prime fields");
    };
    let mut used = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.gen_range(0..p);
        if !used.insert(a) {
            continue;
        }
        let fiber = curve
            .involution_fiber(&Fp::new(a, p))
            .expect("prime field fibers are enumerable");
        if fiber.is_empty() {
            continue;
        }
        let pick = rng.gen_range(0..fiber.len());
        out.push(fiber[pick].clone());
    }
    out
}

fn rat(n: i64) -> Rat {
    Rat::from_i64(&FieldSpec::rational(), n)
}

/// A rational curve fitted through `count` random small-coordinate points:
/// `y³ = x^s + Σ λ x^k` is linear in the λ, so the points pin the low-order
/// coefficients exactly. Returns the curve and the (distinct-x) points on
/// it. Singular fits are redrawn.
pub fn rational_fixture(
    family: Family,
    m: u32,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> (Curve<Rat>, Vec<Point<Rat>>) {
    let spec = FieldSpec::rational();
    let s = match family {
        Family::C1 => 3 * m + 1,
        Family::C2 => 3 * m + 2,
    } as usize;
    assert!(count <= s, "a degree-{s} fit pins at most {s} points");
    loop {
        let mut xs = BTreeSet::new();
        let mut coords = Vec::with_capacity(count);
        while coords.len() < count {
            let x: i64 = rng.gen_range(-9..=9);
            if !xs.insert(x) {
                continue;
            }
            let sign = if rng.gen::<bool>() { 1 } else { -1 };
            let y: i64 = sign * rng.gen_range(1..=6);
            coords.push((x, y));
        }
        // One homogeneous row per point: [1, x, …, x^{count−1} | x^s − y³]
        // has kernel (λ_0, …, λ_{count−1}, 1) exactly when the curve passes
        // through the point. Distinct x makes the Vandermonde block
        // invertible, so the kernel is one-dimensional with last entry ≠ 0.
        let rows: Vec<Vec<Rat>> = coords
            .iter()
            .map(|&(x, y)| {
                let xr = rat(x);
                let mut row = Vec::with_capacity(count + 1);
                let mut power = rat(1);
                for _ in 0..count {
                    row.push(power.clone());
                    power = power.checked_mul(&xr).expect("rational product");
                }
                let mut xs_pow = rat(1);
                for _ in 0..s {
                    xs_pow = xs_pow.checked_mul(&xr).expect("rational product");
                }
                let y3 = rat(y * y * y);
                row.push(xs_pow.checked_sub(&y3).expect("rational difference"));
                row
            })
            .collect();
        let kernel = kernel_basis(spec, count + 1, &rows);
        let Some(vector) = kernel.iter().find(|v| !v[count].is_zero()) else {
            continue;
        };
        let scale = vector[count].inv().expect("last entry is nonzero");
        let mut lambda = BTreeMap::new();
        for (k, value) in vector[..count].iter().enumerate() {
            let coeff = value.checked_mul(&scale).expect("rational product");
            if !coeff.is_zero() {
                // The coefficient of x^k in P carries Sato weight 3(s−k).
                lambda.insert(3 * (s - k) as u64, coeff);
            }
        }
        let Ok(curve) = Curve::new(family, m, &lambda, spec) else {
            continue;
        };
        let points: Vec<Point<Rat>> = coords
            .iter()
            .map(|&(x, y)| Point::new(rat(x), rat(y)))
            .collect();
        for pt in &points {
            assert!(curve.on_curve(pt), "fit must pass through its own data");
        }
        return (curve, points);
    }
}
