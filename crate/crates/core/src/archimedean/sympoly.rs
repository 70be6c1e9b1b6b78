//! Exact polynomials in two fixed symbols `x, y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::rational::{self, q, Q};

/// Finitely supported `Σ c_ij xⁱ yʲ` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        SymPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(q(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(q(1), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Q)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: Q) {
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(q(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `p(u, v)`: substitutes polynomials for `x` and `y`.
    pub fn substitute(&self, u: &Self, v: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&u.pow(i).mul(&v.pow(j)).scale(c));
        }
        out
    }

    /// `[[i, j, "c"], …]` in monomial order.
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(&(i, j), c)| json!([i, j, rational::to_text(c)])).collect())
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let p = |s: &str, e: u32| match e {
                        0 => String::new(),
                        1 => s.to_string(),
                        _ => format!("{s}^{e}"),
                    };
                    [p("x", i), p("y", j)].into_iter().filter(|t| !t.is_empty()).collect::<Vec<_>>().join("*")
                }
            };
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{}", rational::to_text(c))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", rational::to_text(c))?,
            }
        }
        Ok(())
    }
}

/// `(a)_k = a(a+1)⋯(a+k−1)`.
pub fn pochhammer(a: &Q, k: u32) -> Q {
    (0..k).fold(q(1), |acc, j| acc * (a + q(j as i64)))
}

fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(q(1), |acc, j| acc * q(j))
}

fn binomial(n: u32, k: u32) -> Q {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `Γ(m) = (m−1)!`.
fn gamma_int(m: u32) -> Q {
    factorial(m - 1)
}

/// `Σ_{k even} C(n,k) 2ᵏ (−1)^{k/2} (x²+y²)^{n−k} (xy)ᵏ h_{k/2} Γ(n−k/2)` for given `h_j`.
///
/// With `h_j = (1/2)_j` the sum equals `Γ(n)(x²ⁿ+y²ⁿ)`.
pub fn generating_sum(n: u32, h: &[Q]) -> SymPoly {
    let (x, y) = (SymPoly::x(), SymPoly::y());
    let base = x.mul(&x).add(&y.mul(&y));
    let xy = x.mul(&y);
    let mut out = SymPoly::zero();
    for k in (0..=n).step_by(2) {
        let j = k / 2;
        let sign = if j % 2 == 0 { q(1) } else { q(-1) };
        let c = binomial(n, k) * q(1i64 << k) * sign * &h[j as usize] * gamma_int(n - j);
        out = out.add(&base.pow(n - k).mul(&xy.pow(k)).scale(&c));
    }
    out
}

/// `(1/2)_j` for `j = 0..=n/2`.
pub fn half_pochhammers(n: u32) -> Vec<Q> {
    (0..=n / 2).map(|j| pochhammer(&Q::new(1.into(), 2.into()), j)).collect()
}

/// `Γ(n)(x²ⁿ + y²ⁿ)`.
pub fn generating_target(n: u32) -> SymPoly {
    SymPoly::monomial(gamma_int(n), 2 * n, 0).add(&SymPoly::monomial(gamma_int(n), 0, 2 * n))
}

/// Exact check of the generating-series identity for even `n ≥ 2`.
pub fn poly_identity_check(n: u32) -> crate::Result<bool> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(crate::Error::InvalidParameter(format!("n = {n} must be even and at least 2")));
    }
    Ok(generating_sum(n, &half_pochhammers(n)) == generating_target(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = SymPoly::x().add(&SymPoly::y());
        let sq = p.pow(2);
        assert_eq!(sq.coeff(1, 1), q(2));
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn identity_small() {
        for n in [2, 4, 6] {
            assert!(poly_identity_check(n).unwrap());
        }
        assert!(poly_identity_check(3).is_err());
    }

    #[test]
    fn identity_is_sensitive() {
        let mut h = half_pochhammers(4);
        h[1] += q(1);
        assert_ne!(generating_sum(4, &h), generating_target(4));
    }
}
