//! K-Bessel, Γ and ζ in double precision.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `K_v(y) = ½ ∫₀^∞ tᵛ e^{−y(t+t⁻¹)/2} dt/t`.
///
/// After `t = eᵘ` the integrand `cosh(vu) e^{−y cosh u}` decays double-exponentially,
/// so the trapezoidal rule on the half line converges geometrically in the step.
pub fn kbessel(v: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::InvalidParameter(format!("K-Bessel argument must be positive, got {y}")));
    }
    let v = v.abs();
    let f = |u: f64| (v * u - y * u.cosh()).exp() * 0.5 * (1.0 + (-2.0 * v * u).exp());
    // Truncate where the exponent has fallen 60 below its maximum.
    let peak_u = (v / y).asinh();
    let peak = v * peak_u - y * peak_u.cosh();
    let mut upper = peak_u.max(1.0);
    while v * upper - y * upper.cosh() > peak - 60.0 {
        upper *= 1.25;
    }
    let mut h = upper / 16.0;
    let mut sum = 0.5 * f(0.0) + 0.5 * f(upper) + (1..16).map(|k| f(k as f64 * h)).sum::<f64>();
    let mut prev = sum * h;
    for _ in 0..20 {
        let n = (upper / h).round() as usize;
        sum += (0..n).map(|k| f((k as f64 + 0.5) * h)).sum::<f64>();
        h /= 2.0;
        let cur = sum * h;
        if (cur - prev).abs() <= 1e-15 * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `Γ_ℝ(s) = π^{−s/2} Γ(s/2)`.
pub fn gamma_r(s: f64) -> f64 {
    PI.powf(-s / 2.0) * gamma(s / 2.0)
}

/// `Γ_ℂ(s) = 2 (2π)^{−s} Γ(s)`.
pub fn gamma_c(s: f64) -> f64 {
    2.0 * (2.0 * PI).powf(-s) * gamma(s)
}

/// Riemann ζ on the real line, continued by the functional equation below ½.
pub fn zeta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole("ζ at s = 1".into()));
    }
    if s >= 0.5 {
        return Ok(spfunc::zeta::zeta(s));
    }
    if s.fract() == 0.0 && (s as i64) % 2 == 0 {
        return Ok(0.0);
    }
    let z = spfunc::zeta::zeta(1.0 - s);
    Ok(2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(1.0 - s) * z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_closed_form() {
        // K_{1/2}(y) = √(π/(2y)) e^{−y}.
        for y in [0.1, 1.0, 7.5, 40.0] {
            let exact = (PI / (2.0 * y)).sqrt() * (-y).exp();
            let got = kbessel(0.5, y).unwrap();
            assert!((got - exact).abs() <= 1e-13 * exact, "{y}: {got} vs {exact}");
        }
        assert!(kbessel(0.0, 0.0).is_err());
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-14);
        assert!((zeta(-19.0).unwrap() - 174611.0 / 6600.0).abs() < 1e-9);
        assert_eq!(zeta(-4.0).unwrap(), 0.0);
        assert!(zeta(1.0).is_err());
    }
}
