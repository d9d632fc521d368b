//! Binary quadratic forms `a x² + b xy + c y²` of a fixed nonsquare
//! discriminant: composition and reduction (definite and indefinite).

use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = x a + y b ≥ 0`.
pub(crate) fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl BinaryQuadraticForm {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        Self { a, b, c }
    }

    /// The form with given `a, b` and discriminant `disc`; panics when `c`
    /// would not be integral.
    pub fn from_ab(a: i128, b: i128, disc: i128) -> Self {
        let num = b * b - disc;
        assert!(
            num % (4 * a) == 0,
            "no integral c for a={a}, b={b}, D={disc}"
        );
        Self::new(a, b, num / (4 * a))
    }

    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `x² + δxy + (δ - D)/4 y²` with `δ ≡ D (mod 2)`.
    pub fn principal(disc: i128) -> Self {
        let delta = disc.rem_euclid(2);
        Self::from_ab(1, delta, disc)
    }

    /// The inverse class: `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        Self::new(self.a, -self.b, self.c)
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Dirichlet composition (not reduced).
    pub fn compose(&self, other: &Self) -> Self {
        let disc = self.discriminant();
        debug_assert_eq!(disc, other.discriminant());
        let (a1, b1) = (self.a, self.b);
        let (a2, b2, c2) = (other.a, other.b, other.c);
        let s = (b1 + b2) / 2;
        // d = gcd(a1, a2, s) = u a1 + v a2 + w s
        let (d0, _u0, v0) = xgcd(a1, a2);
        let (d, x, w) = xgcd(d0, s);
        let v = x * v0;
        let a2d = a2 / d;
        let a3 = (a1 / d) * a2d;
        let b3 = b2 + 2 * a2d * (v * (s - b2) - w * c2);
        let b3 = normalize_b(b3, a3);
        Self::from_ab(a3, b3, disc)
    }

    /// Positive definite reduction: `|b| ≤ a ≤ c`, with `b ≥ 0` when
    /// `|b| = a` or `a = c`.
    pub fn reduce_definite(&self) -> Self {
        let disc = self.discriminant();
        debug_assert!(disc < 0 && self.a > 0);
        let mut f = *self;
        loop {
            if !(-f.a < f.b && f.b <= f.a) {
                f = Self::from_ab(f.a, normalize_b(f.b, f.a), disc);
            }
            if f.a > f.c {
                f = Self::new(f.c, -f.b, f.a);
                continue;
            }
            if f.a == f.c && f.b < 0 {
                f.b = -f.b;
            }
            return f;
        }
    }

    pub fn is_reduced_definite(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// Indefinite reduction: `|√D - 2|a|| < b < √D`.
    pub fn is_reduced_indefinite(&self) -> bool {
        let disc = self.discriminant();
        let root = disc.sqrt();
        let (a, b) = (self.a.abs(), self.b);
        // √D is irrational, so x < √D iff x ≤ ⌊√D⌋
        b > 0 && b <= root && 2 * a - b <= root && 2 * a + b > root
    }

    /// One step of the indefinite reduction operator
    /// `(a, b, c) ↦ (c, r(-b, c), (r² - D) / 4c)`; a proper equivalence.
    pub fn rho(&self) -> Self {
        let disc = self.discriminant();
        let root = disc.sqrt();
        let c = self.c;
        let m = 2 * c.abs();
        let r = if c.abs() > root {
            // -|c| < r ≤ |c|
            let mut r = (-self.b).rem_euclid(m);
            if r > c.abs() {
                r -= m;
            }
            r
        } else {
            // √D - 2|c| < r < √D: the largest r ≤ ⌊√D⌋ congruent to -b
            root - (root + self.b).rem_euclid(m)
        };
        Self::from_ab(c, r, disc)
    }

    pub fn reduce_indefinite(&self) -> Self {
        let mut f = *self;
        while !f.is_reduced_indefinite() {
            f = f.rho();
        }
        f
    }

    pub fn reduce(&self) -> Self {
        if self.discriminant() < 0 {
            self.reduce_definite()
        } else {
            self.reduce_indefinite()
        }
    }
}

/// Representative of `b mod 2a` in `(-|a|, |a|]`.
fn normalize_b(b: i128, a: i128) -> i128 {
    let m = 2 * a.abs();
    let mut r = b.rem_euclid(m);
    if r > a.abs() {
        r -= m;
    }
    r
}

/// All reduced positive definite forms of discriminant `disc < 0`.
pub(crate) fn reduced_definite_forms(disc: i128) -> Vec<BinaryQuadraticForm> {
    let mut out = Vec::new();
    let mut a = 1i128;
    // reduced forms satisfy 3a² ≤ |D|
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryQuadraticForm::new(a, b, num / (4 * a));
            if f.is_reduced_definite() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// All reduced indefinite forms of discriminant `disc > 0` (nonsquare).
pub(crate) fn reduced_indefinite_forms(disc: i128) -> Vec<BinaryQuadraticForm> {
    let root = disc.sqrt();
    let mut out = Vec::new();
    let mut b = 2 - disc.rem_euclid(2);
    while b <= root {
        let n = (disc - b * b) / 4;
        let mut t = 1i128;
        while t * t <= n {
            if n % t == 0 {
                for a in [t, n / t] {
                    for f in [
                        BinaryQuadraticForm::new(a, b, -n / a),
                        BinaryQuadraticForm::new(-a, b, n / a),
                    ] {
                        if f.is_reduced_indefinite() {
                            out.push(f);
                        }
                    }
                }
            }
            t += 1;
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    out
}
