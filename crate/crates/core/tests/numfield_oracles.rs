//! Class groups and units of quadratic fields against oracles that share
//! no code with the form arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use tatelab::arith::is_squarefree;
use tatelab::numfield::{
    class_group_data, fundamental_unit, BinaryQuadraticForm, FormClassGroup, QuadraticField,
};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn fundamental_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Reduced primitive positive definite forms of discriminant `disc`,
/// counted straight from the inequalities `|b| ≤ a ≤ c`.
fn count_reduced_forms(disc: i64) -> u64 {
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

#[test]
fn imaginary_class_numbers_match_form_count() {
    for d in (-2000..0i64).filter(|&d| is_squarefree(d)) {
        let disc = fundamental_discriminant(d);
        let h = class_group_data(d).unwrap().class_number();
        assert_eq!(h, count_reduced_forms(disc), "d = {d}");
    }
}

fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// The quadratic character of discriminant `disc` at `a > 0`, built from
/// its values at primes (Euler's criterion and the 2-adic rule).
fn chi(disc: i64, a: i64) -> i64 {
    let mut a = a;
    let mut result = 1i64;
    let mut q = 2i64;
    while a > 1 {
        if q * q > a {
            q = a;
        }
        while a % q == 0 {
            a /= q;
            let value = if disc % q == 0 {
                0
            } else if q == 2 {
                if matches!(disc.rem_euclid(8), 1 | 7) {
                    1
                } else {
                    -1
                }
            } else if pow_mod(disc, (q - 1) / 2, q) == 1 {
                1
            } else {
                -1
            };
            result *= value;
        }
        q += 1;
    }
    result
}

/// `h = -(w / 2|D|) Σ_{a<|D|} χ(a)·a` for `D < 0`.
fn analytic_h_imaginary(disc: i64) -> i64 {
    let n = -disc;
    let w = match disc {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let sum: i64 = (1..n).map(|a| chi(disc, a) * a).sum();
    -w * sum / (2 * n)
}

#[test]
fn imaginary_class_numbers_match_analytic_formula() {
    for d in (-1500..0i64).filter(|&d| is_squarefree(d)) {
        let disc = fundamental_discriminant(d);
        let h = class_group_data(d).unwrap().class_number() as i64;
        assert_eq!(h, analytic_h_imaginary(disc), "d = {d}");
    }
}

/// `h log ε = -½ Σ_{a<D} χ(a) log sin(πa/D)` for `D > 0`.
#[test]
fn real_class_numbers_and_units_match_analytic_formula() {
    for d in (2..700i64).filter(|&d| is_squarefree(d)) {
        let disc = fundamental_discriminant(d);
        let unit = fundamental_unit(d).unwrap();
        let (u, v) = unit.halves();
        let log_eps = ((u.to_f64().unwrap() + v.to_f64().unwrap() * (d as f64).sqrt()) / 2.0).ln();
        let sum: f64 = (1..disc)
            .map(|a| {
                chi(disc, a) as f64 * (std::f64::consts::PI * a as f64 / disc as f64).sin().ln()
            })
            .sum();
        let h = -sum / (2.0 * log_eps);
        let computed = class_group_data(d).unwrap().class_number() as f64;
        assert!(
            (h - computed).abs() < 1e-6,
            "d = {d}: analytic {h}, computed {computed}"
        );
    }
}

#[test]
fn narrow_class_number_doubles_exactly_when_unit_norm_is_positive() {
    for d in (2..2000i64).filter(|&d| is_squarefree(d)) {
        let data = class_group_data(d).unwrap();
        let h = data.class_number() as usize;
        let norm = data.unit.as_ref().unwrap().norm;
        let expected = if norm == -1 { h } else { 2 * h };
        assert_eq!(data.narrow.order(), expected, "d = {d}");
    }
}

#[test]
fn unit_norms_are_exact() {
    for d in (2..10_000i64).filter(|&d| is_squarefree(d)) {
        let u = fundamental_unit(d).unwrap();
        assert_eq!(u.exact_norm(), BigInt::from(u.norm), "d = {d}");
        assert!(u.y > BigInt::from(0));
    }
}

/// Associativity, commutativity, identity and inverses of composition on
/// class representatives, for every fundamental `|D| ≤ 2000`.
#[test]
fn composition_group_laws() {
    let mut discs: Vec<i64> = Vec::new();
    for d in (-2000..=2000i64).filter(|&d| d != 0 && d != 1 && is_squarefree(d)) {
        let disc = QuadraticField::new(d).unwrap().discriminant();
        if disc.abs() <= 2000 {
            discs.push(disc);
        }
    }
    for disc in discs {
        let g = FormClassGroup::new(disc as i128);
        let h = g.order();
        let table = g.table();
        let e = g.identity();
        for x in 0..h {
            assert_eq!(table[x][e], x);
            let inv = g.class_of(&g.representatives()[x].inverse());
            assert_eq!(table[x][inv], e, "D = {disc}");
            for y in 0..h {
                assert_eq!(table[x][y], table[y][x], "D = {disc}");
                for z in 0..h {
                    assert_eq!(table[table[x][y]][z], table[x][table[y][z]], "D = {disc}");
                }
            }
        }
        // composing arbitrary members of two classes lands in the product class
        let reps = g.representatives();
        for x in 0..h.min(6) {
            for y in 0..h.min(6) {
                let f = reps[x].compose(&reps[y]);
                assert_eq!(f.discriminant(), disc as i128);
                assert_eq!(g.class_of(&f), table[x][y]);
            }
        }
    }
}

/// The class table is a group whose abstract structure has the right
/// order and exponent.
#[test]
fn structure_agrees_with_element_orders() {
    for d in [-5000i64, -4991, -3315, -1365, 1155, 3003, 4097] {
        let Ok(data) = class_group_data(d) else {
            continue;
        };
        let g = &data.narrow;
        let table = g.table();
        let mut orders = HashMap::new();
        for x in 0..g.order() {
            let (mut y, mut k) = (x, 1usize);
            while y != g.identity() {
                y = table[y][x];
                k += 1;
            }
            orders.insert(x, k);
        }
        let exponent = *orders.values().max().unwrap() as u64;
        let inv = data.narrow_group().invariants_u64();
        assert_eq!(inv.last().copied().unwrap_or(1), exponent, "d = {d}");
        assert_eq!(inv.iter().product::<u64>() as usize, g.order());
    }
    let f = BinaryQuadraticForm::new(3, 1, 5).reduce();
    assert!(f.is_reduced_definite());
}
