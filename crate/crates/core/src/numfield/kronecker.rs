use serde::{Deserialize, Serialize};

use super::{FieldError, QuadraticField};
use crate::arith::{is_prime, primes_up_to};

/// Kronecker symbol `(a / n)` for `n ≥ 1`.
pub fn kronecker(a: i64, n: u64) -> i8 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut n = n;
    let mut result = 1i8;
    // factor out powers of two from n
    while n.is_multiple_of(2) {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a / n) for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeBehavior {
    Split,
    Inert,
    Ramified,
}

/// Decomposition of the rational prime `q` in `Q(√d)`, read off the
/// Kronecker symbol of the field discriminant.
pub fn classify_prime(d: i64, q: u64) -> Result<PrimeBehavior, FieldError> {
    let field = QuadraticField::new(d)?;
    if !is_prime(q) {
        return Err(FieldError::NotPrime(q));
    }
    Ok(match kronecker(field.discriminant(), q) {
        0 => PrimeBehavior::Ramified,
        1 => PrimeBehavior::Split,
        _ => PrimeBehavior::Inert,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitDensity {
    pub primes: usize,
    pub split: usize,
    pub fraction: f64,
}

/// Fraction of primes `q ≤ prime_bound` that split in `Q(√d)`.
pub fn splitting_density(d: i64, prime_bound: u64) -> Result<SplitDensity, FieldError> {
    let field = QuadraticField::new(d)?;
    let primes = primes_up_to(prime_bound);
    let split = primes
        .iter()
        .filter(|&&q| kronecker(field.discriminant(), q) == 1)
        .count();
    let fraction = if primes.is_empty() {
        0.0
    } else {
        split as f64 / primes.len() as f64
    };
    Ok(SplitDensity {
        primes: primes.len(),
        split,
        fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Euler's criterion, independent of the reciprocity-based loop above.
    fn legendre_euler(a: i64, q: u64) -> i8 {
        let a = a.rem_euclid(q as i64) as u128;
        if a == 0 {
            return 0;
        }
        let q128 = q as u128;
        let mut result = 1u128;
        let mut base = a;
        let mut e = (q - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % q128;
            }
            base = base * base % q128;
            e >>= 1;
        }
        if result == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn matches_euler_criterion() {
        for q in primes_up_to(200).into_iter().filter(|&q| q > 2) {
            for a in -300i64..300 {
                assert_eq!(kronecker(a, q), legendre_euler(a, q), "({a}/{q})");
            }
        }
    }

    #[test]
    fn two_and_composites() {
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(-7, 2), 1);
        // (2/15) = (2/3)(2/5) = (-1)(-1)
        assert_eq!(kronecker(2, 15), 1);
        assert_eq!(kronecker(3, 9), 0);
        assert_eq!(kronecker(-1, 1), 1);
    }

    /// Norm-equation oracle for Z[i]: q splits iff q = x² + y² with q odd.
    #[test]
    fn gaussian_integer_examples() {
        assert_eq!(classify_prime(-1, 2).unwrap(), PrimeBehavior::Ramified);
        assert_eq!(classify_prime(-1, 5).unwrap(), PrimeBehavior::Split);
        assert_eq!(classify_prime(-1, 3).unwrap(), PrimeBehavior::Inert);
        for q in primes_up_to(500).into_iter().filter(|&q| q > 2) {
            let sum_of_squares = (0..q).any(|x| (0..q).any(|y| x * x + y * y == q));
            let expected = if sum_of_squares {
                PrimeBehavior::Split
            } else {
                PrimeBehavior::Inert
            };
            assert_eq!(classify_prime(-1, q).unwrap(), expected, "q = {q}");
        }
        assert_eq!(classify_prime(-1, 4), Err(FieldError::NotPrime(4)));
    }

    /// q odd and unramified splits iff the discriminant is a square mod q.
    #[test]
    fn splitting_matches_square_roots() {
        for d in [-23i64, -5, 2, 5, 10, 13] {
            let disc = QuadraticField::new(d).unwrap().discriminant();
            for q in primes_up_to(150).into_iter().filter(|&q| q > 2) {
                let r = disc.rem_euclid(q as i64) as u64;
                let behavior = classify_prime(d, q).unwrap();
                if r == 0 {
                    assert_eq!(behavior, PrimeBehavior::Ramified);
                } else {
                    let square = (1..q).any(|x| x * x % q == r);
                    assert_eq!(behavior == PrimeBehavior::Split, square, "d={d} q={q}");
                }
            }
        }
    }

    #[test]
    fn density_small_cases() {
        let one = splitting_density(-7, 2).unwrap();
        assert_eq!((one.primes, one.split), (1, 1));
        let none = splitting_density(5, 1).unwrap();
        assert_eq!(none.primes, 0);
        for d in [-1i64, 5] {
            let s = splitting_density(d, 10_000).unwrap();
            assert!((s.fraction - 0.5).abs() <= 0.05, "d = {d}: {s:?}");
        }
    }
}
