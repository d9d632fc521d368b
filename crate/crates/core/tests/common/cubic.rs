//! Class groups of small cyclic cubic fields computed from scratch: primes
//! below the Minkowski bound generate, norms of small elements give
//! relations, and genus theory gives a lower bound.

use num_bigint::BigInt;
use tatelab::arith::{factor, primes_up_to};
use tatelab::intlinalg::{cokernel, IntMatrix};

/// A monic cubic `x³ + e2·x² + e1·x + e0` generating the field of the
/// given conductor.
pub struct Field {
    pub conductor: u64,
    pub e: [i64; 3],
}

pub const FIELDS: [Field; 4] = [
    Field {
        conductor: 7,
        e: [-1, -2, 1],
    },
    Field {
        conductor: 9,
        e: [1, -3, 0],
    },
    Field {
        conductor: 13,
        e: [1, -4, 1],
    },
    Field {
        conductor: 63,
        e: [35, -21, 0],
    },
];

impl Field {
    fn eval_mod(&self, x: i64, q: i64) -> i64 {
        let [e0, e1, e2] = self.e;
        (x * x * x + e2 * x * x + e1 * x + e0).rem_euclid(q)
    }

    fn poly_discriminant(&self) -> i64 {
        let [e0, e1, e2] = self.e;
        let (a, b, c) = (e2, e1, e0);
        a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c
    }

    /// Norm of `a + bθ + cθ²`: the determinant of multiplication on `1, θ, θ²`.
    fn norm(&self, a: i64, b: i64, c: i64) -> i128 {
        let [e0, e1, e2] = self.e.map(i128::from);
        // columns are images of 1, θ, θ²
        let t = [[0, 0, -e0], [1, 0, -e1], [0, 1, -e2]];
        let mul = |x: &[[i128; 3]; 3], y: &[[i128; 3]; 3]| {
            let mut z = [[0i128; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    z[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            z
        };
        let t2 = mul(&t, &t);
        let mut m = [[0i128; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] =
                    b as i128 * t[i][j] + c as i128 * t2[i][j] + if i == j { a as i128 } else { 0 };
            }
        }
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// A degree-one prime `(q, θ - r)`.
#[derive(Clone, Copy, Debug)]
struct Prime {
    q: i64,
    r: i64,
}

/// Upper and lower bounds on the class group: the cokernel of the found
/// relations, and `3^(s-1)`.
pub fn class_group(field: &Field) -> (Vec<u64>, u64) {
    let disc = field.poly_discriminant();
    assert_eq!(
        disc,
        (field.conductor * field.conductor) as i64,
        "f = {}",
        field.conductor
    );
    // Minkowski: every class holds an ideal of norm ≤ (3!/3³)·√disc
    let bound = (6.0 / 27.0 * (disc as f64).sqrt()).floor() as u64;
    let mut gens: Vec<Prime> = Vec::new();
    let mut ramified_or_split = Vec::new();
    for q in primes_up_to(bound) {
        let q = q as i64;
        let roots: Vec<i64> = (0..q).filter(|&x| field.eval_mod(x, q) == 0).collect();
        match roots.len() {
            0 => {}
            1 => {
                // totally ramified in a cyclic cubic field
                assert_eq!(field.conductor as i64 % q, 0);
                ramified_or_split.push((q, vec![gens.len()], 3));
                gens.push(Prime { q, r: roots[0] });
            }
            3 => {
                let first = gens.len();
                ramified_or_split.push((q, (first..first + 3).collect(), 1));
                gens.extend(roots.iter().map(|&r| Prime { q, r }));
            }
            n => panic!("{n} roots mod {q} in a Galois cubic"),
        }
    }
    let n = gens.len();
    if n == 0 {
        return (Vec::new(), genus_lower_bound(field.conductor));
    }
    let mut principal_relations: Vec<Vec<i64>> = Vec::new();
    // (q) = ∏ P or P³
    for (_, idx, e) in &ramified_or_split {
        let mut v = vec![0i64; n];
        for &i in idx {
            v[i] = *e;
        }
        principal_relations.push(v);
    }
    let smooth: Vec<i64> = primes_up_to(bound).into_iter().map(|q| q as i64).collect();
    let range = 6i64;
    for a in -range..=range {
        for b in -range..=range {
            for c in 0..=range {
                let norm = field.norm(a, b, c);
                if norm == 0 {
                    continue;
                }
                let mut rest = norm.unsigned_abs() as u64;
                let mut v = vec![0i64; n];
                let mut ok = true;
                for &q in &smooth {
                    let mut k = 0i64;
                    while rest.is_multiple_of(q as u64) {
                        rest /= q as u64;
                        k += 1;
                    }
                    if k == 0 {
                        continue;
                    }
                    let above: Vec<usize> = (0..n)
                        .filter(|&i| {
                            gens[i].q == q
                                && (a + b * gens[i].r + c * gens[i].r * gens[i].r).rem_euclid(q)
                                    == 0
                        })
                        .collect();
                    match above.len() {
                        // inert: (q)^(k/3), principal
                        0 => assert_eq!(k % 3, 0),
                        1 => v[above[0]] = k,
                        _ => ok = false,
                    }
                }
                if ok && rest == 1 {
                    principal_relations.push(v);
                }
            }
        }
    }
    let rel = IntMatrix::from_columns(
        n,
        &principal_relations
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let g = cokernel(&rel);
    assert_eq!(
        g.free_rank(),
        0,
        "f = {}: not enough relations",
        field.conductor
    );
    (g.invariants_u64(), genus_lower_bound(field.conductor))
}

/// `3^(s-1)` divides the class number, `s` the number of ramified primes.
pub fn genus_lower_bound(f: u64) -> u64 {
    3u64.pow(factor(f).len() as u32 - 1)
}
