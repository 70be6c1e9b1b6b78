//! The fibers `Ω_K(ω₀) = {ω rank one : (a, (b, K^#)/3, (c, K)/3, d) = ω₀}`.
//!
//! With `a ≠ 0` a rank-one element is `(a, X, X^#/a, N(X)/a²)`, and the two
//! pairing conditions give `(X, K^#)² − 2(X^#, K) = 9b₀² − 6ac₀`. That form is
//! positive definite (it is the trace form transported by the norm-preserving
//! map taking `1₃` to `K`), so the search over `X ∈ J₀` is a finite ellipsoid
//! enumeration. The case `a = 0, d ≠ 0` is symmetric in `c`, and `a = d = 0`
//! reduces to pairs of rank-one PSD elements up to sign.

use crate::composition::{AlgebraKind, HalfOct};
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::integral::{IntJordan, IntW};
use crate::lattice::Ellipsoid;
use crate::rational::{self, q, Q};

use super::{kim, PairingClass, Tally};

const THETA: AlgebraKind = AlgebraKind::Theta0;

/// Pair limit for the `a = d = 0` case.
const MAX_PAIRS: u64 = 500_000_000;

/// `ω₀ = (a, b₀, c₀, d)` stored as `(a, 3b₀, 3c₀, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Omega0 {
    pub a: i64,
    pub b3: i64,
    pub c3: i64,
    pub d: i64,
}

impl Omega0 {
    pub fn from_rationals(w: &[Q; 4]) -> Result<Self> {
        let int = |x: &Q, what: &str| {
            rational::to_i64(x).ok_or_else(|| Error::NotIntegral(format!("ω₀ coordinate {what} = {}", rational::to_text(x))))
        };
        Ok(Omega0 {
            a: int(&w[0], "a")?,
            b3: int(&(&w[1] * q(3)), "3b")?,
            c3: int(&(&w[2] * q(3)), "3c")?,
            d: int(&w[3], "d")?,
        })
    }

    pub fn parse(w: &[String; 4]) -> Result<Self> {
        Self::from_rationals(&[
            rational::parse(&w[0])?,
            rational::parse(&w[1])?,
            rational::parse(&w[2])?,
            rational::parse(&w[3])?,
        ])
    }

    /// The four contractions of `w` for the class `K`.
    pub fn project(class: PairingClass, w: &FreudenthalElement) -> Result<Self> {
        let k = class.jordan().embed(w.kind()).map_err(|_| Error::AlgebraMismatch(w.kind(), THETA))?;
        let ks = k.adjoint();
        Self::from_rationals(&[w.a.clone(), w.b.pair(&ks) / q(3), w.c.pair(&k) / q(3), w.d.clone()])
    }
}

/// Θ₀ basis in doubled coordinates.
fn order_columns() -> [HalfOct; 8] {
    let alg = THETA.algebra();
    std::array::from_fn(|j| {
        let mut e = [0i64; 8];
        e[j] = 1;
        let v = alg.doubled_from_order(&e);
        HalfOct(std::array::from_fn(|i| v[i]))
    })
}

fn from_coords(cols: &[HalfOct; 8], y: &[i64]) -> IntJordan {
    let off = std::array::from_fn(|s| {
        let mut x = [0i64; 8];
        for (j, c) in cols.iter().enumerate() {
            let m = y[3 + 8 * s + j];
            if m != 0 {
                for i in 0..8 {
                    x[i] += m * c.0[i];
                }
            }
        }
        HalfOct(x)
    });
    IntJordan { diag: [y[0], y[1], y[2]], off }
}

/// Enumerates `X ∈ J₀` with `(X, L)² − 2(X^#, M) = r`, passing each to `leaf`.
fn search_form<F: FnMut(IntJordan)>(l: &IntJordan, m: &IntJordan, r: i64, mut leaf: F) -> Result<()> {
    if r < 0 {
        return Ok(());
    }
    let cols = order_columns();
    let form = |x: &IntJordan| {
        let p = x.pair(l);
        p * p - 2 * x.adjoint().pair(m)
    };
    let basis: Vec<IntJordan> = (0..27)
        .map(|i| {
            let mut y = vec![0i64; 27];
            y[i] = 1;
            from_coords(&cols, &y)
        })
        .collect();
    let mut a = vec![vec![0.0; 27]; 27];
    for i in 0..27 {
        for j in 0..27 {
            a[i][j] = if i == j {
                form(&basis[i]) as f64
            } else {
                (form(&basis[i].add(&basis[j])) - form(&basis[i]) - form(&basis[j])) as f64 / 2.0
            };
        }
    }
    let ell = Ellipsoid::new(&a).ok_or_else(|| Error::InvalidParameter("fiber form is not definite".into()))?;
    ell.enumerate(&[0.0; 27], r as f64, |_, _| true, |y| {
        let x = from_coords(&cols, y);
        if form(&x) == r {
            leaf(x);
        }
    });
    Ok(())
}

fn signed_rank_one(k: &IntJordan, target: i64) -> Result<Vec<IntJordan>> {
    if target == 0 {
        return Ok(vec![IntJordan::ZERO]);
    }
    let t = kim::enumerate(k, target.unsigned_abs(), usize::MAX)?;
    Ok(t.elements.into_iter().map(|x| if target < 0 { x.scale(-1) } else { x }).collect())
}

pub fn enumerate(class: PairingClass, w0: &Omega0, height: u64, limit: usize) -> Result<(Tally<IntW>, bool)> {
    let k = class.int();
    let ks = k.adjoint();
    let mut found: Vec<IntW> = Vec::new();
    let Omega0 { a, b3, c3, d } = *w0;
    if a != 0 {
        search_form(&ks, &k, b3 * b3 - 2 * a * c3, |x| {
            if x.pair(&ks) != b3 || x.adjoint().pair(&k) != a * c3 || x.norm() != a * a * d {
                return;
            }
            if let Some(c) = x.adjoint().div_exact(a) {
                if c.in_order(THETA) {
                    found.push(IntW { a, b: x, c, d });
                }
            }
        })?;
    } else if d != 0 {
        search_form(&k, &ks, c3 * c3 - 2 * d * b3, |y| {
            if y.pair(&k) != c3 || y.adjoint().pair(&ks) != d * b3 || y.norm() != 0 {
                return;
            }
            if let Some(b) = y.adjoint().div_exact(d) {
                if b.in_order(THETA) {
                    found.push(IntW { a: 0, b, c: y, d });
                }
            }
        })?;
    } else {
        let bs = signed_rank_one(&ks, b3)?;
        let cs = signed_rank_one(&k, c3)?;
        let pairs = bs.len() as u64 * cs.len() as u64;
        if pairs > MAX_PAIRS {
            return Err(Error::TooLarge(format!("{pairs} candidate pairs in the a = d = 0 fiber")));
        }
        for b in &bs {
            for c in &cs {
                if b.pair(c) == 0 {
                    found.push(IntW { a: 0, b: *b, c: *c, d: 0 });
                }
            }
        }
    }
    let mut tally = Tally::new(limit);
    let mut complete = true;
    found.sort();
    for w in found {
        if !w.is_rank_one(THETA) {
            continue;
        }
        let h = w.height(THETA).expect("fiber elements are integral");
        if h as u64 > height {
            complete = false;
            continue;
        }
        tally.push_with(w, w.content(THETA).expect("integral"));
    }
    Ok((tally, complete))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons() {
        for class in [PairingClass::I, PairingClass::E] {
            for (a, d) in [(1, 0), (0, 1)] {
                let (t, complete) = enumerate(class, &Omega0 { a, b3: 0, c3: 0, d }, 10, 100).unwrap();
                assert!(complete);
                assert_eq!(t.elements.len(), 1);
                let w = t.elements[0];
                assert_eq!((w.a, w.d), (a, d));
                assert!(w.b.is_zero() && w.c.is_zero());
            }
        }
    }

    #[test]
    fn projection_round_trip() {
        let w = FreudenthalElement::ints(THETA, 2, 1, 1, 0);
        let p = Omega0::project(PairingClass::I, &w).unwrap();
        assert_eq!(p, Omega0 { a: 2, b3: 3, c3: 3, d: 0 });
    }
}
