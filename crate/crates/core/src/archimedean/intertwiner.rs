//! The long intertwiner on the degenerate principal series of quaternionic E₈,
//! restricted to the span of `b_2^k` (or `b_1^k`), `k = 0, 1, 2`.
//!
//! The relative root system is F₄ with simple roots `α₁, α₂` long and `α₃, α₄`
//! short, of multiplicities 1 and 8. Weights are written in the basis of
//! fundamental weights, so `⟨μ, α_i^∨⟩` is the `i`-th coordinate.
//!
//! Along the word every scalar factor is either a ratio `ζ_ℝ(v)/ζ_ℝ(v+1)`, shared
//! by all three components, or a rational function of `s`. The rational parts are
//! carried exactly as polynomials in `ε = s − s₀`; the Γ parts only ever multiply,
//! so their leading Laurent terms compose exactly. This evaluates the composition
//! at points such as `s = 10.5` or `s = 18` where individual factors have poles.

use std::f64::consts::PI;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{self, q, qf, Q};

use super::special::{gamma, gamma_c, gamma_r, zeta};
use super::sympoly::SymPoly;

/// `w₀`, read as `w_{i₁} w_{i₂} ⋯`; the rightmost reflection acts first.
pub const LONGEST_WORD: [usize; 15] = [1, 2, 3, 2, 1, 4, 3, 2, 1, 3, 2, 4, 3, 2, 1];

/// `α_i = Σ_j ⟨α_i, α_j^∨⟩ ω_j`.
const ROOTS: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]];

/// `⟨ρ, α_i^∨⟩` for the multiplicity-weighted half sum.
const RHO: [i64; 4] = [1, 1, 8, 8];

pub const A_NUMERATOR_ROOTS: [i64; 8] = [31, 29, 22, 20, 14, 12, 5, 3];
pub const A_DENOMINATOR_ROOTS: [i64; 8] = [26, 24, 17, 15, 9, 7, 0, -2];

/// Column `j` holds the `b_1`-coordinates of `b_2^{2−j}`, rows ordered `b_1^2, b_1^1, b_1^0`.
pub const EXPECTED_BASIS_MATRIX: [[i64; 3]; 3] = [[2, 2, 1], [56, 8, -4], [140, -20, 6]];

/// `c · εᵏ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadingTerm {
    pub coeff: f64,
    pub order: i32,
}

impl LeadingTerm {
    pub const ONE: LeadingTerm = LeadingTerm { coeff: 1.0, order: 0 };

    pub fn mul(self, o: Self) -> Self {
        LeadingTerm { coeff: self.coeff * o.coeff, order: self.order + o.order }
    }

    pub fn div(self, o: Self) -> Self {
        LeadingTerm { coeff: self.coeff / o.coeff, order: self.order - o.order }
    }

    fn scale(self, c: f64) -> Self {
        LeadingTerm { coeff: self.coeff * c, order: self.order }
    }

    /// The finite value at `ε = 0`, if the term has order zero.
    pub fn value(self) -> Option<f64> {
        (self.order == 0).then_some(self.coeff)
    }
}

/// Polynomial in `ε` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
struct Series(Vec<Q>);

impl Series {
    fn constant(c: Q) -> Self {
        Series(vec![c])
    }

    fn linear(c0: Q, c1: Q) -> Self {
        Series(vec![c0, c1])
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Series(out)
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Series((0..n).map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default()).collect())
    }

    fn scale(&self, c: &Q) -> Self {
        Series(self.0.iter().map(|a| a * c).collect())
    }

    /// Lowest nonzero coefficient and its index.
    fn leading(&self) -> Option<(i32, &Q)> {
        self.0.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i32, c))
    }

    /// `(a + cε)_k`.
    fn pochhammer(a: &Q, c: &Q, k: u32) -> Self {
        (0..k).fold(Series::constant(q(1)), |acc, j| acc.mul(&Series::linear(a + q(j as i64), c.clone())))
    }
}

fn ratio_leading(num: &Series, den: &Series) -> Result<LeadingTerm> {
    let (i, a) = num.leading().ok_or_else(|| Error::Pole("numerator vanishes identically".into()))?;
    let (j, b) = den.leading().ok_or_else(|| Error::Pole("denominator vanishes identically".into()))?;
    Ok(LeadingTerm { coeff: rational::to_f64(&(a / b)), order: i - j })
}

fn is_nonpositive_integer(z: &Q) -> bool {
    z.is_integer() && !z.is_positive()
}

/// Leading term of `Γ(z₀ + cε)`.
fn gamma_leading(z0: &Q, c: &Q) -> LeadingTerm {
    if is_nonpositive_integer(z0) {
        let m = (-z0).to_integer().to_u32().expect("small pole");
        let fact: f64 = (1..=m).map(f64::from).product();
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        LeadingTerm { coeff: sign / (fact * rational::to_f64(c)), order: -1 }
    } else {
        LeadingTerm { coeff: gamma(rational::to_f64(z0)), order: 0 }
    }
}

/// Leading term of `Γ_ℝ(v₀ + cε)`.
fn gamma_r_leading(v0: &Q, c: &Q) -> LeadingTerm {
    gamma_leading(&(v0 / q(2)), &(c / q(2))).scale(PI.powf(-rational::to_f64(v0) / 2.0))
}

/// Leading term of `Γ_ℂ(v₀ + cε)`.
fn gamma_c_leading(v0: &Q, c: &Q) -> LeadingTerm {
    gamma_leading(v0, c).scale(2.0 * (2.0 * PI).powf(-rational::to_f64(v0)))
}

/// `(slope, offset)` of the affine functions `s ↦ ⟨μ_s, α_i^∨⟩` met along the word,
/// in the order they are applied, with `μ_s = sω₁ − ρ`.
pub fn word_pairings() -> Vec<(usize, i64, i64)> {
    let mut slope = [1i64, 0, 0, 0];
    let mut offset = RHO.map(|r| -r);
    let mut out = Vec::with_capacity(LONGEST_WORD.len());
    for &i in LONGEST_WORD.iter().rev() {
        let (p, c) = (slope[i - 1], offset[i - 1]);
        out.push((i, p, c));
        for j in 0..4 {
            slope[j] -= p * ROOTS[i - 1][j];
            offset[j] -= c * ROOTS[i - 1][j];
        }
    }
    out
}

fn is_long(i: usize) -> bool {
    i <= 2
}

fn matrix_q(m: &[[i64; 3]; 3]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Columns: `b_1`-coordinates of `b_2^2, b_2^1, b_2^0`, by exact expansion in
/// `f₁ = (x+y)/2`, `f₂ = (x−y)/2`.
pub fn basis_matrix() -> Result<[[i64; 3]; 3]> {
    let (x, y) = (SymPoly::x(), SymPoly::y());
    let xy = x.mul(&y);
    let b2 = [
        x.pow(8).add(&y.pow(8)),
        xy.pow(2).mul(&x.pow(4).add(&y.pow(4))),
        xy.pow(4),
    ];
    // In the symbols (f₁, f₂): x = f₁ + f₂, y = f₁ − f₂.
    // The b_1 basis is the same three polynomials in (f₁, f₂).
    let (u, v) = (x.add(&y), x.sub(&y));
    let b1 = b2.clone();
    let mut m = [[0i64; 3]; 3];
    for (j, p) in b2.iter().enumerate() {
        let e = p.substitute(&u, &v);
        let coords = [e.coeff(8, 0), e.coeff(6, 2), e.coeff(4, 4)];
        let rebuilt = (0..3).fold(SymPoly::zero(), |acc, i| acc.add(&b1[i].scale(&coords[i])));
        if rebuilt != e {
            return Err(Error::InvalidParameter("expansion leaves the span of b_1".into()));
        }
        for i in 0..3 {
            m[i][j] = rational::to_i64(&coords[i]).ok_or_else(|| Error::NotIntegral("basis change".into()))?;
        }
    }
    Ok(m)
}

/// `A(s)`, exactly.
pub fn a_factor(s: &Q) -> Result<Q> {
    let den = A_DENOMINATOR_ROOTS.iter().fold(q(1), |acc, &r| acc * (s - q(r)));
    if den.is_zero() {
        return Err(Error::Pole(format!("A has a pole at s = {}", rational::to_text(s))));
    }
    Ok(A_NUMERATOR_ROOTS.iter().fold(q(1), |acc, &r| acc * (s - q(r))) / den)
}

/// `s ↦ slope·s + offset`.
type Affine = (i64, i64);

// Arguments of the Γ_ℝ and Γ_ℂ factors of Z(s), numerator and denominator.
const Z_R_NUM: [Affine; 5] = [(2, -29), (1, -28), (1, -19), (1, -11), (1, -2)];
const Z_R_DEN: [Affine; 5] = [(2, -28), (1, -26), (1, -17), (1, -9), (1, 0)];
const Z_C_NUM: [Affine; 2] = [(1, -23), (1, -14)];
const Z_C_DEN: [Affine; 2] = [(1, -11), (1, -2)];

fn affine_at(a: Affine, s: &Q) -> Q {
    q(a.0) * s + q(a.1)
}

/// Leading Laurent term of `Z` at `s₀`.
pub fn z_leading(s0: &Q) -> LeadingTerm {
    let mut z = LeadingTerm::ONE;
    for &a in &Z_R_NUM {
        z = z.mul(gamma_r_leading(&affine_at(a, s0), &q(a.0)));
    }
    for &a in &Z_R_DEN {
        z = z.div(gamma_r_leading(&affine_at(a, s0), &q(a.0)));
    }
    for &a in &Z_C_NUM {
        z = z.mul(gamma_c_leading(&affine_at(a, s0), &q(a.0)));
    }
    for &a in &Z_C_DEN {
        z = z.div(gamma_c_leading(&affine_at(a, s0), &q(a.0)));
    }
    z
}

/// `Z(s)` in floating point.
pub fn z_factor(s: f64) -> Result<f64> {
    let pole = |v: f64| v <= 0.0 && v.fract() == 0.0;
    let mut z = 1.0;
    for (args, complex, up) in [(&Z_R_NUM[..], false, true), (&Z_R_DEN, false, false), (&Z_C_NUM, true, true), (&Z_C_DEN, true, false)] {
        for &(p, c) in args {
            let v = p as f64 * s + c as f64;
            if pole(if complex { v } else { v / 2.0 }) {
                return Err(Error::Pole(format!("Γ factor of Z at s = {s}")));
            }
            let g = if complex { gamma_c(v) } else { gamma_r(v) };
            z = if up { z * g } else { z / g };
        }
    }
    Ok(z)
}

/// `c_f(w₀; s) = ζ(2s−29)ζ(s−28)ζ(s−23)ζ(s−19) / (ζ(2s−28)ζ(s)ζ(s−5)ζ(s−9))`.
pub fn c_f(s: f64) -> Result<f64> {
    let mut num = 1.0;
    for v in [2.0 * s - 29.0, s - 28.0, s - 23.0, s - 19.0] {
        num *= zeta(v)?;
    }
    let mut den = 1.0;
    for v in [2.0 * s - 28.0, s, s - 5.0, s - 9.0] {
        den *= zeta(v)?;
    }
    if den == 0.0 {
        return Err(Error::Pole(format!("c_f denominator vanishes at s = {s}")));
    }
    Ok(num / den)
}

/// `(ζ_ℝ(s)/ζ_ℝ(s+1)) ((1−s)/2)_k / ((1+s)/2)_k`, the long-root factor on `b^k`.
pub fn simple_reflection_c(s: f64, k: u32) -> Result<f64> {
    if s <= 0.0 && (s / 2.0).fract() == 0.0 {
        return Err(Error::Pole(format!("ζ_ℝ({s})")));
    }
    let mut r = gamma_r(s) / gamma_r(s + 1.0);
    for j in 0..k {
        let den = (1.0 + s) / 2.0 + j as f64;
        if den == 0.0 {
            return Err(Error::Pole(format!("Pochhammer denominator at s = {s}")));
        }
        r *= ((1.0 - s) / 2.0 + j as f64) / den;
    }
    Ok(r)
}

/// `Γ(x)/Γ(x+4)` with `x = (μ, α) = ⟨μ, α^∨⟩/2` for a short root.
pub fn short_root_c(pairing: f64) -> Result<f64> {
    let x = pairing / 2.0;
    let den = x * (x + 1.0) * (x + 2.0) * (x + 3.0);
    if den == 0.0 {
        return Err(Error::Pole(format!("Γ({x})")));
    }
    Ok(1.0 / den)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basis {
    B1,
    B2,
}

fn change_basis(m: &[Vec<Q>], p: &[Series; 3]) -> [Series; 3] {
    std::array::from_fn(|i| (0..3).fold(Series::constant(Q::zero()), |acc, j| acc.add(&p[j].scale(&m[i][j]))))
}

/// The composed long intertwiner applied to `b_2^0` at `s₀`, as leading terms of its
/// `b_2^2, b_2^1, b_2^0` components. The unnormalized short-root constants are set to 1.
pub fn composed_c_function(s0: &Q) -> Result<[LeadingTerm; 3]> {
    let (num, den, g) = compose(s0)?;
    let mut out = [LeadingTerm { coeff: 0.0, order: 0 }; 3];
    for t in 0..3 {
        if num[t].leading().is_some() {
            out[t] = ratio_leading(&num[t], &den)?.mul(g);
        }
    }
    Ok(out)
}

fn compose(s0: &Q) -> Result<([Series; 3], Series, LeadingTerm)> {
    let m = matrix_q(&EXPECTED_BASIS_MATRIX);
    let m_inv = rational::inverse(&m).ok_or(Error::DegenerateGram)?;
    let mut p = [Series::constant(q(0)), Series::constant(q(0)), Series::constant(q(1))];
    let mut den = Series::constant(q(1));
    let mut g = LeadingTerm::ONE;
    let mut basis = Basis::B2;
    let half = qf(1, 2);
    for (i, slope, offset) in word_pairings() {
        let v0 = q(slope) * s0 + q(offset);
        let c = q(slope);
        if is_long(i) {
            let want = if i == 1 { Basis::B1 } else { Basis::B2 };
            if basis != want {
                p = change_basis(if want == Basis::B1 { &m } else { &m_inv }, &p);
                basis = want;
            }
            g = g
                .mul(gamma_leading(&(&v0 / q(2)), &(&c / q(2))))
                .div(gamma_leading(&((&v0 + q(1)) / q(2)), &(&c / q(2))))
                .scale(PI.sqrt());
            let a0 = (q(1) - &v0) * &half;
            let b0 = (q(1) + &v0) * &half;
            let ca = -&c * &half;
            let cb = &c * &half;
            let full = Series::pochhammer(&b0, &cb, 2);
            for (t, comp) in p.iter_mut().enumerate() {
                let k = 2 - t as u32;
                let rest = Series::pochhammer(&(&b0 + q(k as i64)), &cb, 2 - k);
                *comp = comp.mul(&Series::pochhammer(&a0, &ca, k)).mul(&rest);
            }
            den = den.mul(&full);
        } else {
            den = den.mul(&Series::pochhammer(&(&v0 / q(2)), &(&c / q(2)), 4));
        }
    }
    if basis != Basis::B2 {
        p = change_basis(&m_inv, &p);
    }
    Ok((p, den, g))
}

/// Leading term of `c(s)/(Z(s)A(s))` on the `b_2^0` component at `s₀`.
pub fn intertwiner_ratio(s0: &Q) -> Result<LeadingTerm> {
    let (num, den, g) = compose(s0)?;
    let a_num = A_NUMERATOR_ROOTS.iter().fold(Series::constant(q(1)), |acc, &r| acc.mul(&Series::linear(s0 - q(r), q(1))));
    let a_den = A_DENOMINATOR_ROOTS.iter().fold(Series::constant(q(1)), |acc, &r| acc.mul(&Series::linear(s0 - q(r), q(1))));
    let rational_part = ratio_leading(&num[2].mul(&a_den), &den.mul(&a_num))?;
    Ok(rational_part.mul(g).div(z_leading(s0)))
}

/// Floating-point composition at a generic `s`, factor by factor; `b_2^2, b_2^1, b_2^0` components.
pub fn composed_c_function_float(s: f64) -> Result<[f64; 3]> {
    let mf: Vec<Vec<f64>> = EXPECTED_BASIS_MATRIX.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let mi: Vec<Vec<f64>> = rational::inverse(&matrix_q(&EXPECTED_BASIS_MATRIX))
        .ok_or(Error::DegenerateGram)?
        .iter()
        .map(|r| r.iter().map(rational::to_f64).collect())
        .collect();
    let apply = |m: &[Vec<f64>], v: [f64; 3]| -> [f64; 3] { std::array::from_fn(|i| (0..3).map(|j| m[i][j] * v[j]).sum()) };
    let mut vec = [0.0, 0.0, 1.0];
    let mut basis = Basis::B2;
    let mut scalar = 1.0;
    for (i, slope, offset) in word_pairings() {
        let v = slope as f64 * s + offset as f64;
        if is_long(i) {
            let want = if i == 1 { Basis::B1 } else { Basis::B2 };
            if basis != want {
                vec = apply(if want == Basis::B1 { &mf } else { &mi }, vec);
                basis = want;
            }
            for (t, comp) in vec.iter_mut().enumerate() {
                *comp *= simple_reflection_c(v, 2 - t as u32)?;
            }
        } else {
            scalar *= short_root_c(v)?;
        }
    }
    if basis != Basis::B2 {
        vec = apply(&mi, vec);
    }
    Ok(vec.map(|c| c * scalar))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntertwinerData {
    pub s: Q,
    pub a: Option<Q>,
    pub z: Option<f64>,
    pub c_f: Option<f64>,
    pub matrix: [[i64; 3]; 3],
    pub matrix_matches_expected: bool,
    /// Leading term of `c(s)/(Z(s)A(s))`; order zero with a fixed coefficient.
    pub ratio: Option<LeadingTerm>,
}

impl IntertwinerData {
    pub fn to_json(&self) -> Value {
        let f = |x: Option<f64>| x.map(Value::from).unwrap_or(Value::Null);
        json!({
            "s": rational::to_text(&self.s),
            "A": self.a.as_ref().map(rational::to_json).unwrap_or(Value::Null),
            "Z": f(self.z),
            "c_f": f(self.c_f),
            "matrix": self.matrix,
            "matrix_matches_expected": self.matrix_matches_expected,
            "ratio": self.ratio.map(|r| json!({"coeff": r.coeff, "order": r.order})).unwrap_or(Value::Null),
        })
    }
}

pub fn intertwiner_data(s: &Q) -> Result<IntertwinerData> {
    let sf = rational::to_f64(s);
    let matrix = basis_matrix()?;
    Ok(IntertwinerData {
        s: s.clone(),
        a: a_factor(s).ok(),
        z: z_factor(sf).ok(),
        c_f: c_f(sf).ok(),
        matrix,
        matrix_matches_expected: matrix == EXPECTED_BASIS_MATRIX,
        ratio: intertwiner_ratio(s).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_zeros_and_poles() {
        for r in [5, 3, 12] {
            assert!(a_factor(&q(r)).unwrap().is_zero());
        }
        assert!(a_factor(&q(26)).is_err());
    }

    #[test]
    fn matrix_rederived() {
        assert_eq!(basis_matrix().unwrap(), EXPECTED_BASIS_MATRIX);
    }

    #[test]
    fn word_ends_at_dual_character() {
        // The first reflection applied is w₁, with ⟨sω₁ − ρ, α₁^∨⟩ = s − 1.
        let pairings = word_pairings();
        assert_eq!(pairings.len(), 15);
        assert_eq!(pairings[0], (1, 1, -1));
    }

    #[test]
    fn reflection_factors() {
        let s = 3.7;
        assert_eq!(simple_reflection_c(s, 0).unwrap(), gamma_r(s) / gamma_r(s + 1.0));
        assert_eq!(simple_reflection_c(1.0, 1).unwrap(), 0.0);
        assert!(short_root_c(-2.0).is_err());
    }

    #[test]
    fn exact_and_float_compositions_agree() {
        let s = qf(53, 4);
        let exact = composed_c_function(&s).unwrap()[2];
        let float = composed_c_function_float(13.25).unwrap()[2];
        assert_eq!(exact.order, 0);
        assert!((exact.coeff - float).abs() <= 1e-10 * float.abs());
    }

    #[test]
    fn ratio_is_constant_through_poles() {
        let points = [qf(21, 2), qf(53, 4), q(18), qf(107, 10)];
        let r: Vec<LeadingTerm> = points.iter().map(|s| intertwiner_ratio(s).unwrap()).collect();
        for t in &r {
            assert_eq!(t.order, 0);
            assert!((t.coeff / r[1].coeff - 1.0).abs() < 1e-10, "{r:?}");
        }
        assert!(z_factor(10.5).is_err());
    }
}
