//! Shared test data: a catalog of finite C_p-modules given concretely as
//! `∏ Z/n_i` with τ acting by an integer matrix, and an exhaustive
//! Tate-cohomology oracle that never touches Smith normal forms.

#![allow(dead_code)]

pub mod cubic;

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tatelab::cpmod::CpModule;
use tatelab::intlinalg::IntMatrix;

#[derive(Clone, Debug)]
pub struct Concrete {
    pub name: String,
    pub p: u64,
    pub orders: Vec<u64>,
    /// Row-major; column `j` is the image of generator `j`.
    pub tau: Vec<Vec<i64>>,
}

impl Concrete {
    fn new(name: impl Into<String>, p: u64, orders: Vec<u64>, tau: Vec<Vec<i64>>) -> Self {
        Self {
            name: name.into(),
            p,
            orders,
            tau,
        }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut all = vec![Vec::new()];
        for &n in &self.orders {
            all = all
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        all
    }

    fn apply(&self, m: &[Vec<i64>], x: &[u64]) -> Vec<u64> {
        (0..self.rank())
            .map(|i| {
                let n = self.orders[i] as i128;
                let s: i128 = (0..self.rank())
                    .map(|j| m[i][j] as i128 * x[j] as i128)
                    .sum();
                s.rem_euclid(n) as u64
            })
            .collect()
    }

    fn tau_power(&self, k: u64) -> Vec<Vec<i64>> {
        let m = self.rank();
        let mut acc: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..k {
            acc = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| (0..m).map(|l| self.tau[i][l] * acc[l][j]).sum())
                        .collect()
                })
                .collect();
        }
        acc
    }

    pub fn presentation(&self) -> (IntMatrix, IntMatrix) {
        let relations =
            IntMatrix::diagonal(&self.orders.iter().map(|&n| n as i64).collect::<Vec<_>>());
        let tau = IntMatrix::from_rows(&self.tau, self.rank()).unwrap();
        (relations, tau)
    }

    pub fn module(&self) -> CpModule {
        let (r, t) = self.presentation();
        CpModule::new(self.p, r, t).unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }

    /// The module in a randomly changed basis of its presentation.
    pub fn scrambled(&self, rng: &mut StdRng) -> CpModule {
        let (u, u_inv) = random_unimodular(rng, self.rank(), 3 * self.rank());
        self.module().change_basis(&u, &u_inv).unwrap()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let (m, k) = (self.rank(), other.rank());
        let mut tau = vec![vec![0; m + k]; m + k];
        for i in 0..m {
            tau[i][..m].copy_from_slice(&self.tau[i]);
        }
        for i in 0..k {
            tau[m + i][m..].copy_from_slice(&other.tau[i]);
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        Self::new(
            format!("{} + {}", self.name, other.name),
            self.p,
            orders,
            tau,
        )
    }
}

/// `(dim Ĥ⁰, dim Ĥ¹)` by enumerating every element. Panics if a quotient
/// is not an elementary abelian `p`-group.
pub fn brute_force_tate(c: &Concrete) -> (usize, usize) {
    let m = c.rank();
    let s: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| c.tau[i][j] - i64::from(i == j)).collect())
        .collect();
    let mut n = vec![vec![0i64; m]; m];
    for k in 0..c.p {
        let t = c.tau_power(k);
        for i in 0..m {
            for j in 0..m {
                n[i][j] += t[i][j];
            }
        }
    }
    let zero = vec![0u64; m];
    let elements = c.elements();
    let mut ker_s = HashSet::new();
    let mut ker_n = HashSet::new();
    let mut im_s = HashSet::new();
    let mut im_n = HashSet::new();
    for x in &elements {
        let sx = c.apply(&s, x);
        let nx = c.apply(&n, x);
        if sx == zero {
            ker_s.insert(x.clone());
        }
        if nx == zero {
            ker_n.insert(x.clone());
        }
        im_s.insert(sx);
        im_n.insert(nx);
    }
    let dim = |ker: &HashSet<Vec<u64>>, im: &HashSet<Vec<u64>>| {
        assert!(im.is_subset(ker), "{}: image not in kernel", c.name);
        assert_eq!(ker.len() % im.len(), 0);
        let mut q = ker.len() / im.len();
        let mut d = 0;
        while q.is_multiple_of(c.p as usize) {
            q /= c.p as usize;
            d += 1;
        }
        assert_eq!(q, 1, "{}: quotient order is not a power of p", c.name);
        // p·x lies in the image for every x in the kernel
        for x in ker {
            let px: Vec<u64> = x
                .iter()
                .zip(&c.orders)
                .map(|(&v, &o)| v * c.p % o)
                .collect();
            assert!(im.contains(&px), "{}: quotient not killed by p", c.name);
        }
        d
    };
    (dim(&ker_s, &im_n), dim(&ker_n, &im_s))
}

pub fn trivial(p: u64, q: u64) -> Concrete {
    Concrete::new(format!("Z/{q}"), p, vec![q], vec![vec![1]])
}

/// `(Z/q)^p` with τ permuting coordinates cyclically.
pub fn permutation(p: u64, q: u64) -> Concrete {
    let n = p as usize;
    let tau = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == (j + 1) % n)).collect())
        .collect();
    Concrete::new(format!("(Z/{q})[C_{p}]"), p, vec![q; n], tau)
}

/// `Z/q` with τ multiplying by a unit of order `p`.
pub fn twisted(p: u64, q: u64) -> Option<Concrete> {
    let u = (2..q).find(|&u| {
        let mut x = 1u64;
        for _ in 0..p {
            x = x * u % q;
        }
        x == 1
    })?;
    Some(Concrete::new(
        format!("Z/{q}(x{u})"),
        p,
        vec![q],
        vec![vec![u as i64]],
    ))
}

/// `(Z/q)[ξ]/(Φ_p)` with τ acting by `ξ`.
pub fn augmentation_mod(p: u64, q: u64) -> Concrete {
    let n = p as usize - 1;
    let tau = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == n - 1 {
                        -1
                    } else {
                        i64::from(i == j + 1)
                    }
                })
                .collect()
        })
        .collect();
    Concrete::new(format!("I_{p}/{q}"), p, vec![q; n], tau)
}

/// `Z/p²` with τ multiplying by `1 + p`.
pub fn cyclic_p2(p: u64) -> Concrete {
    Concrete::new(
        format!("Z/{}(x{})", p * p, 1 + p),
        p,
        vec![p * p],
        vec![vec![1 + p as i64]],
    )
}

/// `Z/a ⊕ Z/p`, `(x, y) ↦ (x, x + y)`, for `a ∈ {p, p²}`.
pub fn jordan(p: u64, a: u64) -> Concrete {
    Concrete::new(
        format!("J(Z/{a},Z/{p})"),
        p,
        vec![a, p],
        vec![vec![1, 0], vec![1, 1]],
    )
}

/// Indecomposable-ish finite blocks for `p`, each of order ≤ 200.
pub fn blocks(p: u64) -> Vec<Concrete> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5, 6, 7, 8, 9, 11, 13, 25, 27, 49] {
        out.push(trivial(p, q));
        if q.pow(p as u32) <= 200 {
            out.push(permutation(p, q));
        }
        if q.pow(p as u32 - 1) <= 200 && p > 2 {
            out.push(augmentation_mod(p, q));
        }
        if let Some(t) = twisted(p, q) {
            out.push(t);
        }
    }
    out.push(cyclic_p2(p));
    out.push(jordan(p, p));
    if p * p * p <= 200 {
        out.push(jordan(p, p * p));
    }
    out.retain(|c| c.order() <= 200);
    out
}

/// Finite modules of order ≤ 200 for `p ∈ {2, 3, 5, 7}`: all blocks and all
/// pairwise sums that stay within the order bound.
pub fn catalog() -> Vec<Concrete> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let bs = blocks(p);
        out.extend(bs.iter().cloned());
        for (i, a) in bs.iter().enumerate() {
            for b in &bs[i..] {
                if a.order() * b.order() <= 200 {
                    out.push(a.direct_sum(b));
                }
            }
        }
    }
    out
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random unimodular matrix and its inverse, built from `steps`
/// elementary row operations.
pub fn random_unimodular(rng: &mut StdRng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut v = u.clone();
    if n >= 2 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let k: i64 = rng.gen_range(-2..=2);
            // u ← E u with E = I + k e_ij; v ← v E⁻¹
            for c in 0..n {
                u[i][c] += k * u[j][c];
            }
            for r in 0..n {
                v[r][j] -= k * v[r][i];
            }
        }
    }
    for r in 0..n {
        if rng.gen_bool(0.3) {
            for c in 0..n {
                u[r][c] = -u[r][c];
                v[c][r] = -v[c][r];
            }
        }
    }
    (
        IntMatrix::from_rows(&u, n).unwrap(),
        IntMatrix::from_rows(&v, n).unwrap(),
    )
}

/// Torsion-free building blocks with their `(f, t, a)` type.
pub fn free_block(p: u64, kind: usize) -> (CpModule, (usize, usize, usize)) {
    match kind {
        0 => (CpModule::regular(p).unwrap(), (1, 0, 0)),
        1 => (CpModule::trivial(p, 1).unwrap(), (0, 1, 0)),
        _ => (CpModule::augmentation_ideal(p).unwrap(), (0, 0, 1)),
    }
}

/// A random sum of F/T/AI blocks in a scrambled basis, with its type.
pub fn random_free_module(
    rng: &mut StdRng,
    p: u64,
    max_blocks: usize,
) -> (CpModule, (usize, usize, usize)) {
    let count = rng.gen_range(1..=max_blocks);
    let mut module = CpModule::trivial(p, 0).unwrap();
    let mut ty = (0, 0, 0);
    for _ in 0..count {
        let (b, (f, t, a)) = free_block(p, rng.gen_range(0..3));
        module = module.direct_sum(&b).unwrap();
        ty = (ty.0 + f, ty.1 + t, ty.2 + a);
    }
    let n = module.ambient_rank();
    let (u, v) = random_unimodular(rng, n, 2 * n);
    (module.change_basis(&u, &v).unwrap(), ty)
}
