//! Constant-term and rank-one constants of the degenerate Heisenberg Eisenstein series.

use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::coefficients::sigma;
use crate::error::{Error, Result};
use crate::rational::{self, q, qf, Q};

use super::special::zeta;
use super::sympoly::{pochhammer, SymPoly};

/// `r · ζ(z) · πᵖ`, with `z = 0` meaning no ζ factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaPiConstant {
    pub rational: Q,
    pub zeta_arg: u32,
    pub pi_power: i32,
}

impl ZetaPiConstant {
    pub fn value(&self) -> f64 {
        let z = if self.zeta_arg == 0 { 1.0 } else { zeta(self.zeta_arg as f64).expect("ζ argument above 1") };
        rational::to_f64(&self.rational) * z * PI.powi(self.pi_power)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rational": rational::to_text(&self.rational),
            "zeta_arg": self.zeta_arg,
            "pi_power": self.pi_power,
            "value": self.value(),
        })
    }
}

fn check_even(n: u32) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("n = {n} must be even and at least 2")));
    }
    Ok(())
}

fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(q(1), |acc, j| acc * q(j))
}

fn sign(n: u32) -> Q {
    if (n / 2).is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

/// `f₀(1, s = n+1) = ζ(n+1) ((−1)^{n/2}/2ⁿ) π^{−n} (1/2)_n xⁿyⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct F0Special {
    pub n: u32,
    pub scalar: ZetaPiConstant,
    pub poly: SymPoly,
}

impl F0Special {
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "scalar": self.scalar.to_json(), "poly": self.poly.to_json() })
    }
}

pub fn f0_special(n: u32) -> Result<F0Special> {
    check_even(n)?;
    let rational = sign(n) * pochhammer(&qf(1, 2), n) / q(1i64 << n);
    Ok(F0Special {
        n,
        scalar: ZetaPiConstant { rational, zeta_arg: n + 1, pi_power: -(n as i32) },
        poly: SymPoly::monomial(q(1), n, n),
    })
}

/// The same scalar with the archimedean integral `∫_{ℝˣ} |t|^{2n+1} e^{−πt²} dt/|t|`
/// done by tanh-sinh quadrature.
pub fn f0_quadrature(n: u32) -> Result<f64> {
    check_even(n)?;
    let f = |t: f64| t.powi(2 * n as i32) * (-PI * t * t).exp();
    let integral = 2.0 * quadrature::double_exponential::integrate(f, 0.0, 10.0, 1e-16).integral;
    let pr = rational::to_f64(&(sign(n) / q(1i64 << n)));
    Ok(zeta((n + 1) as f64)? * pr * integral)
}

/// `(2(2n)!/4ⁿ) σ_n(a)`.
pub fn f1_rank1_coeff(n: u32, a: u64) -> Result<Q> {
    check_even(n)?;
    if a == 0 {
        return Err(Error::InvalidParameter("a must be positive".into()));
    }
    let prefactor = q(2) * factorial(2 * n) / Q::from_integer(num_bigint::BigInt::from(4).pow(n));
    Ok(prefactor * Q::from_integer(sigma(n, a).into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantTermConstants {
    pub n: u32,
    /// `ζ(n)Γ(n)/(4π)ⁿ`, multiplying the holomorphic part.
    pub holomorphic: ZetaPiConstant,
    /// `ζ(n+1)(−1)^{n/2}(1/2)_n/(2π)ⁿ`, multiplying `xⁿyⁿ`.
    pub xnyn: ZetaPiConstant,
    /// For `n = 4`: the ratio of the `xⁿyⁿ` constant to the weight-four minimal-form
    /// value `ζ(5)/(π⁴2⁵)` on `x⁴y⁴/(4!4!)`.
    pub normalization: Option<Q>,
    /// For `n = 4`: the same ratio for the `x⁸` term, `240ζ(4)Γ(4)/(4π)⁴` against `(1/3)/8!`.
    pub holomorphic_normalization: Option<Q>,
}

impl ConstantTermConstants {
    pub fn to_json(&self) -> Value {
        let opt = |x: &Option<Q>| x.as_ref().map(|r| Value::from(rational::to_text(r))).unwrap_or(Value::Null);
        json!({
            "n": self.n,
            "holomorphic": self.holomorphic.to_json(),
            "xnyn": self.xnyn.to_json(),
            "normalization": opt(&self.normalization),
            "holomorphic_normalization": opt(&self.holomorphic_normalization),
        })
    }
}

pub fn constant_term_constants(n: u32) -> Result<ConstantTermConstants> {
    check_even(n)?;
    let four_n = Q::from_integer(num_bigint::BigInt::from(4).pow(n));
    let two_n = q(1i64 << n);
    let holomorphic = ZetaPiConstant { rational: factorial(n - 1) / four_n, zeta_arg: n, pi_power: -(n as i32) };
    let xnyn = ZetaPiConstant {
        rational: sign(n) * pochhammer(&qf(1, 2), n) / two_n,
        zeta_arg: n + 1,
        pi_power: -(n as i32),
    };
    let (normalization, holomorphic_normalization) = if n == 4 {
        let minimal_xy = q(1) / (q(32) * factorial(4) * factorial(4));
        // ζ(4) = π⁴/90 and the holomorphic Siegel series is 240 times Kim's form.
        let siegel_x8 = &holomorphic.rational * q(240) / q(90);
        let minimal_x8 = q(1) / (q(3) * factorial(8));
        (Some(&xnyn.rational / minimal_xy), Some(siegel_x8 / minimal_x8))
    } else {
        (None, None)
    };
    Ok(ConstantTermConstants { n, holomorphic, xnyn, normalization, holomorphic_normalization })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_scalar() {
        assert_eq!(f1_rank1_coeff(4, 1).unwrap(), q(315));
        assert_eq!(f1_rank1_coeff(4, 2).unwrap(), q(5355));
        assert!(f1_rank1_coeff(3, 1).is_err());
    }

    #[test]
    fn f0_values() {
        let f = f0_special(4).unwrap();
        assert_eq!(f.scalar.rational, qf(105, 256));
        assert_eq!(f0_special(2).unwrap().scalar.rational, qf(-3, 16));
        assert_eq!(f.poly.coeff(4, 4), q(1));
    }

    #[test]
    fn weight_four_normalization() {
        let c = constant_term_constants(4).unwrap();
        assert_eq!(c.holomorphic.rational, qf(6, 256));
        assert_eq!(c.normalization, Some(q(7560)));
        assert_eq!(c.holomorphic_normalization, c.normalization);
    }
}
