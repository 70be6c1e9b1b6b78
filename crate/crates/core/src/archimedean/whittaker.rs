//! The Whittaker function `𝒲_{2πω}(g) = ν(g)ⁿ|ν(g)| (|α|/α)ᵛ K_v(|α|)` with
//! `α = ⟨2πω, g r₀(i)⟩` and `r₀(i) = (1, −i, −1, i)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::composition::AlgebraKind;
use crate::error::{Error, Result};
use crate::freudenthal::{FreudenthalElement, TorusElement};
use crate::jordan::JordanElement;
use crate::rational::{self, q, Q};

use super::special::kbessel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerQuery {
    pub omega: FreudenthalElement,
    pub n: u32,
    pub v: i32,
    pub g: TorusElement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhittakerValue {
    pub re: f64,
    pub im: f64,
    /// `|⟨2πω, g r₀(i)⟩|`.
    pub modulus: f64,
}

impl WhittakerQuery {
    pub fn new(omega: FreudenthalElement, n: u32, v: i32, g: TorusElement) -> Result<Self> {
        if v.unsigned_abs() > n {
            return Err(Error::InvalidParameter(format!("|v| = {} exceeds n = {n}", v.unsigned_abs())));
        }
        Ok(WhittakerQuery { omega, n, v, g })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let m = v.as_object().ok_or_else(|| Error::Parse("expected a Whittaker query object".into()))?;
        let omega = FreudenthalElement::from_json(
            m.get("omega").ok_or_else(|| Error::Parse("missing omega".into()))?,
            AlgebraKind::Theta0,
        )?;
        let int = |k: &str, default: i64| match m.get(k) {
            None => Ok(default),
            Some(x) => x.as_i64().ok_or_else(|| Error::Parse(format!("{k} must be an integer"))),
        };
        let n = u32::try_from(int("n", 4)?).map_err(|_| Error::Parse("n must be non-negative".into()))?;
        let v = i32::try_from(int("v", 0)?).map_err(|_| Error::Parse("v out of range".into()))?;
        let g = match m.get("g") {
            None => TorusElement::identity(),
            Some(g) => {
                let lambda = rational::from_json(g.get("lambda").unwrap_or(&Value::from(1)))?;
                let t = match g.get("t") {
                    None => [q(1), q(1), q(1)],
                    Some(Value::Array(a)) if a.len() == 3 => {
                        [rational::from_json(&a[0])?, rational::from_json(&a[1])?, rational::from_json(&a[2])?]
                    }
                    Some(_) => return Err(Error::Parse("t must be a list of three rationals".into())),
                };
                TorusElement::new(lambda, t)?
            }
        };
        Self::new(omega, n, v, g)
    }
}

/// `⟨ω, g r₀(i)⟩`, split into the exact real and imaginary parts.
pub fn pairing_with_r0(omega: &FreudenthalElement, g: &TorusElement) -> Result<(Q, Q)> {
    let kind = omega.kind();
    let id = JordanElement::identity(kind);
    let zero = JordanElement::zero(kind);
    let re = FreudenthalElement::new(q(1), zero.clone(), id.scale(&q(-1)), Q::zero())?;
    let im = FreudenthalElement::new(Q::zero(), id.scale(&q(-1)), zero, q(1))?;
    Ok((omega.symp(&g.act(&re))?, omega.symp(&g.act(&im))?))
}

pub fn whittaker(query: &WhittakerQuery) -> Result<WhittakerValue> {
    let (re, im) = pairing_with_r0(&query.omega, &query.g)?;
    if re.is_zero() && im.is_zero() {
        return Err(Error::InvalidParameter("⟨ω, g r₀(i)⟩ vanishes, phase undefined".into()));
    }
    let alpha = Complex64::new(rational::to_f64(&re), rational::to_f64(&im)) * (2.0 * PI);
    let modulus = alpha.norm();
    let nu = rational::to_f64(query.g.lambda());
    let phase = (Complex64::from(modulus) / alpha).powi(query.v);
    let w = phase * (nu.powi(query.n as i32) * nu.abs() * kbessel(query.v as f64, modulus)?);
    Ok(WhittakerValue { re: w.re, im: w.im, modulus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(w: FreudenthalElement, v: i32, g: TorusElement) -> WhittakerQuery {
        WhittakerQuery::new(w, 4, v, g).unwrap()
    }

    #[test]
    fn base_point() {
        let w = FreudenthalElement::ints(AlgebraKind::Theta0, 0, 0, 0, 1);
        assert_eq!(pairing_with_r0(&w, &TorusElement::identity()).unwrap(), (q(-1), q(0)));
        let out = whittaker(&query(w, 0, TorusElement::identity())).unwrap();
        assert!((out.re - kbessel(0.0, 2.0 * PI).unwrap()).abs() < 1e-15);
        assert_eq!(out.im, 0.0);
    }

    #[test]
    fn conjugate_orders() {
        let w = FreudenthalElement::ints(AlgebraKind::Theta0, 1, 2, -1, 3);
        let g = TorusElement::new(q(2), [q(1), rational::qf(1, 2), q(3)]).unwrap();
        let a = whittaker(&query(w.clone(), 3, g.clone())).unwrap();
        let b = whittaker(&query(w, -3, g)).unwrap();
        assert!((a.re - b.re).abs() <= 1e-12 * a.re.abs().max(1e-300));
        assert!((a.im + b.im).abs() <= 1e-12 * a.im.abs().max(1e-300));
    }

    #[test]
    fn rejects_large_order() {
        let w = FreudenthalElement::ints(AlgebraKind::Theta0, 0, 0, 0, 1);
        assert!(WhittakerQuery::new(w, 2, 3, TorusElement::identity()).is_err());
    }
}
