//! Shared support for the integration suites: an independent brute-force
//! oracle for exceptional classes, seeded random generators, and an
//! orbit scrambler. Nothing here calls into the enumeration or reduction
//! code paths it is used to check.

#![allow(dead_code)]

use gwidth_core::{PeriodVector, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exhaustive odometer scan of the box |eᵢ| ≤ d+1 for solutions of
/// Σeᵢ = 1−3d, Σeᵢ² = d²+1 with 0 ≤ d ≤ degree_bound. Pure i64, no
/// pruning, no shared code with the library enumerator.
pub fn oracle_exceptional(k: usize, degree_bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for d in 0..=degree_bound {
        if k == 0 {
            // Σeᵢ² = d²+1 ≥ 1 has no empty-sum solution.
            continue;
        }
        let target_sum = 1 - 3 * d;
        let target_square = d * d + 1;
        let lo = -(d + 1);
        let hi = d + 1;
        let mut e = vec![lo; k];
        'odometer: loop {
            let s: i64 = e.iter().sum();
            let q: i64 = e.iter().map(|x| x * x).sum();
            if s == target_sum && q == target_square {
                let mut c = Vec::with_capacity(k + 1);
                c.push(d);
                c.extend_from_slice(&e);
                out.push(c);
            }
            for digit in e.iter_mut() {
                *digit += 1;
                if *digit <= hi {
                    continue 'odometer;
                }
                *digit = lo;
            }
            break;
        }
    }
    out.sort();
    out
}

fn rational_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Random reduced vector with strictly positive exceptional areas and
/// strictly positive square. With `with_denominators`, the whole vector is
/// divided by a small random denominator; this preserves every property.
pub fn random_reduced_positive(
    rng: &mut ChaCha8Rng,
    k: usize,
    with_denominators: bool,
) -> PeriodVector {
    assert!(
        k >= 1,
        "positive exceptional areas need at least one blowup"
    );
    let mut b: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let head: i64 = match k {
        1 => b[0],
        2 => b[0] + b[1],
        _ => b[0] + b[1] + b[2],
    };
    let mut a = head + rng.gen_range(0..=3);
    let sum_sq: i64 = b.iter().map(|x| x * x).sum();
    while a * a <= sum_sq {
        a += 1;
    }
    let mut areas = vec![rational_int(a)];
    areas.extend(b.iter().map(|&x| rational_int(x)));
    let v = PeriodVector::new(areas);
    if with_denominators {
        let q = *[1, 2, 3, 5].choose(rng).unwrap();
        v.scaled(&(rational_int(1) / rational_int(q)))
    } else {
        v
    }
}

/// Random integer vector with positive square and positive line area; the
/// exceptional areas carry arbitrary signs.
pub fn random_positive_square(rng: &mut ChaCha8Rng, k: usize, spread: i64) -> PeriodVector {
    let b: Vec<i64> = (0..k).map(|_| rng.gen_range(-spread..=spread)).collect();
    let sum_sq: i64 = b.iter().map(|x| x * x).sum();
    let mut a = rng.gen_range(1..=spread.max(1));
    while a * a <= sum_sq {
        a += 1;
    }
    let mut areas = vec![rational_int(a)];
    areas.extend(b.iter().map(|&x| rational_int(x)));
    PeriodVector::new(areas)
}

/// Walks a vector up its reduction orbit: random permutations of the
/// exceptional areas interleaved with the reflection
/// (a; b) ↦ (2a−b₁−b₂−b₃; a−b₂−b₃, a−b₁−b₃, a−b₁−b₂, b₄, …),
/// typed here from scratch. Square and integrality are preserved.
pub fn scramble(rng: &mut ChaCha8Rng, v: &PeriodVector) -> PeriodVector {
    let k = v.k();
    let mut a = v.a().clone();
    let mut b: Vec<Rational> = v.areas()[1..].to_vec();
    let rounds = rng.gen_range(1..=6);
    for _ in 0..rounds {
        b.shuffle(rng);
        if k >= 3 && rng.gen_bool(0.8) {
            let new_a = rational_int(2) * &a - &b[0] - &b[1] - &b[2];
            let n0 = &a - &b[1] - &b[2];
            let n1 = &a - &b[0] - &b[2];
            let n2 = &a - &b[0] - &b[1];
            a = new_a;
            b[0] = n0;
            b[1] = n1;
            b[2] = n2;
        }
    }
    let mut areas = vec![a];
    areas.extend(b);
    PeriodVector::new(areas)
}

/// Random positive rational with small numerator and denominator.
pub fn random_positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    let p = rng.gen_range(1..=12);
    let q = *[1, 2, 3, 4, 5].choose(rng).unwrap();
    rational_int(p) / rational_int(q)
}

/// Reduced positive vector strictly inside the symplectic cone: reduced
/// vectors touch the cone walls exactly where some exceptional area
/// vanishes, so redraw until the membership check passes.
pub fn random_cone_interior(
    rng: &mut ChaCha8Rng,
    k: usize,
    with_denominators: bool,
) -> PeriodVector {
    loop {
        let v = random_reduced_positive(rng, k, with_denominators);
        if gwidth_core::liliu_membership(&v).is_member() {
            return v;
        }
    }
}
