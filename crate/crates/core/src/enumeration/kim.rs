//! Rank-one positive semidefinite `T ∈ J₀` with `(T, K) = n`.
//!
//! A rank-one PSD `T` with `c₁ > 0` is determined by `(c₁, x₂, x₃)`:
//! `c₂ = n(x₃)/c₁`, `c₃ = n(x₂)/c₁`, `x₁ = conj(x₂x₃)/c₁`. Multiplying the pairing
//! condition by `4c₁` and writing `X` for doubled coordinates gives
//!
//! ```text
//! k₂|X₃|² + k₃|X₂|² + conj(X₂X₃)·K₁ + 2c₁(X₂·K₂ + X₃·K₃) = 4c₁n − 4c₁²k₁
//! ```
//!
//! a positive definite quadratic equation in the 16 order coordinates of `(x₂, x₃)`.
//! When `c₁ = 0` the element lives in the lower 2×2 block and the same reasoning
//! applies with `(c₂, x₁)`.

use rayon::prelude::*;

use crate::composition::{AlgebraKind, HalfOct};
use crate::error::{Error, Result};
use crate::integral::IntJordan;
use crate::lattice::{complete_square, Ellipsoid};

use super::Tally;

const THETA: AlgebraKind = AlgebraKind::Theta0;

/// Columns: doubled standard coordinates of the Θ₀ basis.
fn order_matrix() -> [[i64; 8]; 8] {
    let alg = THETA.algebra();
    let mut m = [[0i64; 8]; 8];
    for j in 0..8 {
        let mut e = [0i64; 8];
        e[j] = 1;
        let col = alg.doubled_from_order(&e);
        for i in 0..8 {
            m[i][j] = col[i];
        }
    }
    m
}

fn to_doubled(m: &[[i64; 8]; 8], y: &[i64]) -> HalfOct {
    let mut out = [0i64; 8];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(y).map(|(a, b)| a * b).sum();
    }
    HalfOct(out)
}

/// Symmetric matrix and linear vector of `y ↦ f(y) + l·y` from an exact evaluator
/// of the homogeneous quadratic part `f` and of the linear part.
fn polarize<F, L>(dim: usize, f: F, lin: L) -> (Vec<Vec<f64>>, Vec<f64>)
where
    F: Fn(&[i64]) -> i64,
    L: Fn(&[i64]) -> i64,
{
    let unit = |i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let diag: Vec<i64> = (0..dim).map(|i| f(&unit(i))).collect();
    let mut a = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        a[i][i] = diag[i] as f64;
        for j in i + 1..dim {
            let mut v = unit(i);
            v[j] = 1;
            let off = (f(&v) - diag[i] - diag[j]) as f64 / 2.0;
            a[i][j] = off;
            a[j][i] = off;
        }
    }
    let l = (0..dim).map(|i| lin(&unit(i)) as f64).collect();
    (a, l)
}

fn check_positive(k: &IntJordan) -> Result<()> {
    let id = IntJordan::identity();
    if k.pair(&id) > 0 && k.adjoint().pair(&id) > 0 && k.norm() > 0 && k.in_order(THETA) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("pairing element must be integral and positive definite".into()))
    }
}

/// Largest `c` with `4cn − 4c²μ ≥ 0`, where `μ = k + min/4`.
fn diagonal_limit(n: u64, k: i64, min: f64) -> u64 {
    let mu = k as f64 + min / 4.0;
    if mu <= 0.0 {
        return 0;
    }
    (n as f64 / mu + 1e-9).floor() as u64
}

pub fn enumerate(k: &IntJordan, n: u64, limit: usize) -> Result<Tally<IntJordan>> {
    check_positive(k)?;
    let mut total = Tally::new(limit);
    if n == 0 {
        return Ok(total);
    }
    let m = order_matrix();
    let ni = n as i64;
    let [k1, k2, k3] = k.diag;
    let [kk1, kk2, kk3] = k.off;

    // c₁ > 0: variables y = (x₂ | x₃) in order coordinates, x₃ fixed first.
    let split = |y: &[i64]| (to_doubled(&m, &y[..8]), to_doubled(&m, &y[8..]));
    let f = |y: &[i64]| {
        let (x2, x3) = split(y);
        k2 * x3.norm4() + k3 * x2.norm4() + x2.mul_raw(x3).iter().enumerate().map(|(i, v)| conj_sign(i) * v * kk1.0[i]).sum::<i64>()
    };
    let lin = |y: &[i64]| {
        let (x2, x3) = split(y);
        2 * (x2.dot(kk2) + x3.dot(kk3))
    };
    let (a, l) = polarize(16, f, lin);
    let ell = Ellipsoid::new(&a).ok_or_else(|| Error::InvalidParameter("pairing form is not definite".into()))?;
    let (z1, min1) = complete_square(&a, &l);
    let c1_max = diagonal_limit(n, k1, min1);

    let jobs: Vec<(i64, i64)> = (1..=c1_max as i64)
        .flat_map(|c1| {
            let center: Vec<f64> = z1.iter().map(|z| z * c1 as f64).collect();
            let bound = (4 * c1 * ni - 4 * c1 * c1 * k1) as f64 - (c1 * c1) as f64 * min1;
            ell.top_range(&center, bound).map(move |top| (c1, top))
        })
        .collect();
    let upper: Tally<IntJordan> = jobs
        .into_par_iter()
        .map(|(c1, top)| {
            let mut t = Tally::new(limit);
            let center: Vec<f64> = z1.iter().map(|z| z * c1 as f64).collect();
            let bound = (4 * c1 * ni - 4 * c1 * c1 * k1) as f64 - (c1 * c1) as f64 * min1;
            let rhs = 4 * c1 * ni - 4 * c1 * c1 * k1;
            ell.enumerate_with_top(
                top,
                &center,
                bound,
                |i, y| i != 8 || (to_doubled(&m, &y[8..]).norm4() / 4) % c1 == 0,
                |y| {
                    if f(y) + c1 * lin(y) != rhs {
                        return;
                    }
                    let (x2, x3) = split(y);
                    let (n2, n3) = (x2.norm4() / 4, x3.norm4() / 4);
                    if n2 % c1 != 0 || n3 % c1 != 0 {
                        return;
                    }
                    let raw = x2.mul_raw(x3);
                    if raw.iter().any(|v| v % (2 * c1) != 0) {
                        return;
                    }
                    let x1 = HalfOct(std::array::from_fn(|i| conj_sign(i) * raw[i] / (2 * c1)));
                    if !x1.in_order(THETA) {
                        return;
                    }
                    t.push(IntJordan { diag: [c1, n3 / c1, n2 / c1], off: [x1, x2, x3] });
                },
            );
            t
        })
        .reduce(|| Tally::new(limit), Tally::merge);
    total = total.merge(upper);

    // c₁ = 0, c₂ > 0: variables x₁.
    let f2 = |y: &[i64]| k3 * to_doubled(&m, y).norm4();
    let lin2 = |y: &[i64]| 2 * to_doubled(&m, y).dot(kk1);
    let (a2, l2) = polarize(8, f2, lin2);
    let ell2 = Ellipsoid::new(&a2).ok_or_else(|| Error::InvalidParameter("pairing form is not definite".into()))?;
    let (z2, min2) = complete_square(&a2, &l2);
    let c2_max = diagonal_limit(n, k2, min2);
    let lower: Tally<IntJordan> = (1..=c2_max as i64)
        .into_par_iter()
        .map(|c2| {
            let mut t = Tally::new(limit);
            let center: Vec<f64> = z2.iter().map(|z| z * c2 as f64).collect();
            let bound = (4 * c2 * ni - 4 * c2 * c2 * k2) as f64 - (c2 * c2) as f64 * min2;
            let rhs = 4 * c2 * ni - 4 * c2 * c2 * k2;
            ell2.enumerate(&center, bound, |_, _| true, |y| {
                if f2(y) + c2 * lin2(y) != rhs {
                    return;
                }
                let x1 = to_doubled(&m, y);
                let n1 = x1.norm4() / 4;
                if n1 % c2 == 0 {
                    t.push(IntJordan { diag: [0, c2, n1 / c2], off: [x1, HalfOct::ZERO, HalfOct::ZERO] });
                }
            });
            t
        })
        .reduce(|| Tally::new(limit), Tally::merge);
    total = total.merge(lower);

    if ni % k3 == 0 {
        let mut t = Tally::new(limit);
        t.push(IntJordan::diagonal([0, 0, ni / k3]));
        total = total.merge(t);
    }
    total.sort();
    Ok(total)
}

#[inline]
fn conj_sign(i: usize) -> i64 {
    if i == 0 {
        1
    } else {
        -1
    }
}
