//! Cubic norm structures H₃(C).
//!
//! An element stores `(c₁, c₂, c₃; x₁, x₂, x₃)` for the Hermitian matrix
//!
//! ```text
//! [ c₁   x₃   x̄₂ ]
//! [ x̄₃   c₂   x₁ ]
//! [ x₂   x̄₁   c₃ ]
//! ```
//!
//! with `N(X) = c₁c₂c₃ − Σ cᵢ n(xᵢ) + tr((x₁x₂)x₃)` and adjoint
//! `(X^#)ᵢᵢ = cⱼc_k − n(xᵢ)`, `(X^#)ᵢ = conj(xⱼx_k) − cᵢxᵢ` for cyclic `(i, j, k)`.

use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::composition::{AlgebraKind, CompositionElement};
use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanElement {
    kind: AlgebraKind,
    diag: [Q; 3],
    off: [CompositionElement; 3],
}

impl JordanElement {
    pub fn new(diag: [Q; 3], off: [CompositionElement; 3]) -> Result<Self> {
        let kind = off[0].kind();
        for x in &off[1..] {
            if x.kind() != kind {
                return Err(Error::AlgebraMismatch(kind, x.kind()));
            }
        }
        Ok(JordanElement { kind, diag, off })
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        let z = CompositionElement::zero(kind);
        JordanElement { kind, diag: [Q::zero(), Q::zero(), Q::zero()], off: [z.clone(), z.clone(), z] }
    }

    pub fn diagonal(kind: AlgebraKind, d: [Q; 3]) -> Self {
        let mut x = Self::zero(kind);
        x.diag = d;
        x
    }

    pub fn diag_ints(kind: AlgebraKind, a: i64, b: i64, c: i64) -> Self {
        Self::diagonal(kind, [q(a), q(b), q(c)])
    }

    pub fn identity(kind: AlgebraKind) -> Self {
        Self::diag_ints(kind, 1, 1, 1)
    }

    /// The diagonal idempotent `e_ii` (0-based `i`).
    pub fn idempotent(kind: AlgebraKind, i: usize) -> Self {
        let mut d = [Q::zero(), Q::zero(), Q::zero()];
        d[i] = q(1);
        Self::diagonal(kind, d)
    }

    /// The element with diagonal 2 and all off-diagonal entries β.
    pub fn e_class() -> Self {
        let b = CompositionElement::beta();
        JordanElement {
            kind: AlgebraKind::Theta0,
            diag: [q(2), q(2), q(2)],
            off: [b.clone(), b.clone(), b],
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn diag(&self) -> &[Q; 3] {
        &self.diag
    }

    pub fn off(&self) -> &[CompositionElement; 3] {
        &self.off
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(Zero::is_zero) && self.off.iter().all(CompositionElement::is_zero)
    }

    pub fn embed(&self, kind: AlgebraKind) -> Result<Self> {
        let off = [self.off[0].embed(kind)?, self.off[1].embed(kind)?, self.off[2].embed(kind)?];
        Ok(JordanElement { kind, diag: self.diag.clone(), off })
    }

    pub fn scale(&self, s: &Q) -> Self {
        JordanElement {
            kind: self.kind,
            diag: [&self.diag[0] * s, &self.diag[1] * s, &self.diag[2] * s],
            off: [self.off[0].scale(s), self.off[1].scale(s), self.off[2].scale(s)],
        }
    }

    pub fn norm(&self) -> Q {
        let [c1, c2, c3] = &self.diag;
        let [x1, x2, x3] = &self.off;
        let triple = (&(x1 * x2) * x3).trace();
        c1 * c2 * c3 - c1 * x1.norm() - c2 * x2.norm() - c3 * x3.norm() + triple
    }

    pub fn adjoint(&self) -> Self {
        let c = &self.diag;
        let x = &self.off;
        let diag = [
            &c[1] * &c[2] - x[0].norm(),
            &c[2] * &c[0] - x[1].norm(),
            &c[0] * &c[1] - x[2].norm(),
        ];
        let off = std::array::from_fn(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            &(&x[j] * &x[k]).conj() - &x[i].scale(&c[i])
        });
        JordanElement { kind: self.kind, diag, off }
    }

    /// Trace pairing `Σ cᵢdᵢ + Σ tr(xᵢ·conj(yᵢ))`.
    pub fn pair(&self, other: &Self) -> Q {
        assert_eq!(self.kind, other.kind, "pairing elements over different algebras");
        let d: Q = self.diag.iter().zip(&other.diag).map(|(a, b)| a * b).sum();
        let o: Q = self.off.iter().zip(&other.off).map(|(a, b)| a.pair(b)).sum();
        d + o
    }

    pub fn try_pair(&self, other: &Self) -> Result<Q> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch(self.kind, other.kind));
        }
        Ok(self.pair(other))
    }

    /// `X × Y = (X+Y)^# − X^# − Y^#`.
    pub fn cross(&self, other: &Self) -> Self {
        &(&(self + other).adjoint() - &self.adjoint()) - &other.adjoint()
    }

    pub fn rank(&self) -> u8 {
        if self.is_zero() {
            0
        } else if self.adjoint().is_zero() {
            1
        } else if self.norm().is_zero() {
            2
        } else {
            3
        }
    }

    /// Nonnegative spectrum, via the elementary symmetric functions of the eigenvalues.
    pub fn is_psd(&self) -> bool {
        let id = JordanElement::identity(self.kind);
        let s1 = self.pair(&id);
        let s2 = self.adjoint().pair(&id);
        let s3 = self.norm();
        !s1.is_negative() && !s2.is_negative() && !s3.is_negative()
    }

    /// Entry `(i, j)` of the Hermitian matrix, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> CompositionElement {
        if i == j {
            return CompositionElement::scalar(self.kind, self.diag[i].clone());
        }
        match (i, j) {
            (0, 1) => self.off[2].clone(),
            (1, 0) => self.off[2].conj(),
            (1, 2) => self.off[0].clone(),
            (2, 1) => self.off[0].conj(),
            (2, 0) => self.off[1].clone(),
            (0, 2) => self.off[1].conj(),
            _ => unreachable!("indices are below 3"),
        }
    }

    /// Builds an element from the upper-triangular entries of a Hermitian matrix.
    fn from_entries(kind: AlgebraKind, m: &[[CompositionElement; 3]; 3]) -> Self {
        let diag = std::array::from_fn(|i| m[i][i].coords()[0].clone());
        JordanElement { kind, diag, off: [m[1][2].clone(), m[2][0].clone(), m[0][1].clone()] }
    }

    /// `S P X Pᵀ S` for the permutation `perm` (row `i` moves to `perm[i]`) and sign vector `signs`.
    pub fn signed_permute(&self, perm: [usize; 3], signs: [i64; 3]) -> Self {
        let mut m: [[CompositionElement; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| CompositionElement::zero(self.kind)));
        for i in 0..3 {
            for j in 0..3 {
                let s = signs[perm[i]] * signs[perm[j]];
                m[perm[i]][perm[j]] = self.entry(i, j).scale(&q(s));
            }
        }
        Self::from_entries(self.kind, &m)
    }

    /// Coordinates in the ℤ-basis of H₃(order): the three diagonal units, then the
    /// order basis in each off-diagonal slot `x₁, x₂, x₃`.
    pub fn lattice_coords(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.diag.to_vec();
        for x in &self.off {
            v.extend(x.order_coords());
        }
        v
    }

    pub fn from_lattice_coords(kind: AlgebraKind, v: &[i64]) -> Result<Self> {
        let d = kind.dim();
        if v.len() != 3 + 3 * d {
            return Err(Error::InvalidParameter(format!(
                "expected {} lattice coordinates, got {}",
                3 + 3 * d,
                v.len()
            )));
        }
        let off = std::array::from_fn(|i| {
            CompositionElement::from_order_coords(kind, &v[3 + i * d..3 + (i + 1) * d])
                .expect("slice has the algebra's dimension")
        });
        Ok(JordanElement { kind, diag: [q(v[0]), q(v[1]), q(v[2])], off })
    }

    pub fn is_integral(&self) -> bool {
        self.lattice_coords().iter().all(|c| c.is_integer())
    }

    /// Integer coordinates in the J₀ basis, if integral.
    pub fn integral_coords(&self) -> Option<Vec<i64>> {
        self.lattice_coords().iter().map(rational::to_i64).collect()
    }

    /// Coordinates with respect to the dual basis of J₀^∨: the pairings with the J₀ basis.
    pub fn dual_coords(&self) -> Vec<Q> {
        lattice_basis(self.kind).iter().map(|b| self.pair(b)).collect()
    }

    pub fn is_dual_integral(&self) -> bool {
        self.dual_coords().iter().all(|c| c.is_integer())
    }

    /// Largest `d` with `T ∈ d·J₀`.
    pub fn content(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let coords = self
            .integral_coords()
            .ok_or_else(|| Error::NotIntegral("Jordan element outside J₀".into()))?;
        Ok(gcd_all(&coords))
    }

    /// Sup-norm of the J₀ coordinates.
    pub fn height(&self) -> Q {
        self.lattice_coords().iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.kind.name(),
            "diag": self.diag.iter().map(rational::to_json).collect::<Vec<_>>(),
            "off": self.off.iter().map(CompositionElement::to_json).collect::<Vec<_>>(),
        })
    }

    /// Parses the object form, or a bare rational `s` meaning `s·1₃`.
    pub fn from_json(v: &Value, default: AlgebraKind) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let kind = match m.get("algebra") {
                    Some(Value::String(s)) => AlgebraKind::from_name(s)?,
                    Some(other) => return Err(Error::Parse(format!("bad algebra field {other}"))),
                    None => default,
                };
                let diag = match m.get("diag") {
                    Some(Value::Array(a)) if a.len() == 3 => [
                        rational::from_json(&a[0])?,
                        rational::from_json(&a[1])?,
                        rational::from_json(&a[2])?,
                    ],
                    None => [Q::zero(), Q::zero(), Q::zero()],
                    _ => return Err(Error::Parse("diag must hold three rationals".into())),
                };
                let off = match m.get("off") {
                    Some(Value::Array(a)) if a.len() == 3 => [
                        CompositionElement::from_json(&a[0], kind)?,
                        CompositionElement::from_json(&a[1], kind)?,
                        CompositionElement::from_json(&a[2], kind)?,
                    ],
                    None => std::array::from_fn(|_| CompositionElement::zero(kind)),
                    _ => return Err(Error::Parse("off must hold three elements".into())),
                };
                let x = JordanElement { kind, diag, off };
                if kind != default && kind.is_sub_of(default) {
                    x.embed(default)
                } else {
                    Ok(x)
                }
            }
            other => {
                let s = rational::from_json(other)?;
                Ok(JordanElement::identity(default).scale(&s))
            }
        }
    }
}

pub fn gcd_all(v: &[i64]) -> u64 {
    v.iter().fold(0i64, |g, &c| g.gcd(&c)).unsigned_abs()
}

impl Add for &JordanElement {
    type Output = JordanElement;
    fn add(self, o: &JordanElement) -> JordanElement {
        assert_eq!(self.kind, o.kind, "adding elements over different algebras");
        JordanElement {
            kind: self.kind,
            diag: std::array::from_fn(|i| &self.diag[i] + &o.diag[i]),
            off: std::array::from_fn(|i| &self.off[i] + &o.off[i]),
        }
    }
}

impl Sub for &JordanElement {
    type Output = JordanElement;
    fn sub(self, o: &JordanElement) -> JordanElement {
        assert_eq!(self.kind, o.kind, "subtracting elements over different algebras");
        JordanElement {
            kind: self.kind,
            diag: std::array::from_fn(|i| &self.diag[i] - &o.diag[i]),
            off: std::array::from_fn(|i| &self.off[i] - &o.off[i]),
        }
    }
}

impl Neg for &JordanElement {
    type Output = JordanElement;
    fn neg(self) -> JordanElement {
        self.scale(&q(-1))
    }
}

fn build_basis(kind: AlgebraKind) -> Vec<JordanElement> {
    let d = kind.dim();
    (0..3 + 3 * d)
        .map(|i| {
            let mut v = vec![0i64; 3 + 3 * d];
            v[i] = 1;
            JordanElement::from_lattice_coords(kind, &v).expect("length matches")
        })
        .collect()
}

static BASES: Lazy<[Vec<JordanElement>; 4]> = Lazy::new(|| AlgebraKind::ALL.map(build_basis));

/// The ℤ-basis of H₃(order) used for coordinates, contents and heights.
pub fn lattice_basis(kind: AlgebraKind) -> &'static [JordanElement] {
    &BASES[AlgebraKind::ALL.iter().position(|&k| k == kind).expect("listed")]
}

/// Gram matrix of [`lattice_basis`] under the trace pairing.
pub fn lattice_gram(kind: AlgebraKind) -> Vec<Vec<Q>> {
    let b = lattice_basis(kind);
    b.iter().map(|x| b.iter().map(|y| x.pair(y)).collect()).collect()
}

/// ℤ-basis of `{c : (c, J₀) ⊆ ℤ}`, the columns of the inverse Gram matrix.
pub fn dual_lattice_basis(kind: AlgebraKind) -> Result<Vec<JordanElement>> {
    let g = lattice_gram(kind);
    let inv = rational::inverse(&g).ok_or(Error::DegenerateGram)?;
    let basis = lattice_basis(kind);
    let n = basis.len();
    Ok((0..n)
        .map(|j| {
            basis.iter().enumerate().fold(JordanElement::zero(kind), |acc, (i, b)| {
                &acc + &b.scale(&inv[i][j])
            })
        })
        .collect())
}

/// Index of J₀ in J₀^∨, i.e. the Gram determinant.
pub fn dual_index(kind: AlgebraKind) -> Q {
    rational::determinant(&lattice_gram(kind))
}

/// Parameters of the second Tits construction; only `λ = 1, S = 1₃` is realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsParams {
    pub lambda: CompositionElement,
    pub s: JordanElement,
}

impl Default for TitsParams {
    fn default() -> Self {
        TitsParams {
            lambda: CompositionElement::one(AlgebraKind::Gauss),
            s: JordanElement::identity(AlgebraKind::Gauss),
        }
    }
}

/// An element of H₃(K) ⊕ M₃(K) with K = ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsElement {
    pub base: JordanElement,
    pub tail: [[CompositionElement; 3]; 3],
    pub params: TitsParams,
}

impl TitsElement {
    pub fn new(base: JordanElement, tail: [[CompositionElement; 3]; 3]) -> Result<Self> {
        if base.kind() != AlgebraKind::Gauss {
            return Err(Error::AlgebraMismatch(base.kind(), AlgebraKind::Gauss));
        }
        for e in tail.iter().flatten() {
            if e.kind() != AlgebraKind::Gauss {
                return Err(Error::AlgebraMismatch(e.kind(), AlgebraKind::Gauss));
            }
        }
        Ok(TitsElement { base, tail, params: TitsParams::default() })
    }
}

/// Frame of K^⊥ ⊂ O used by the Tits isomorphism: `f = (e2, e6, e4)`.
pub const TITS_FRAME: [usize; 3] = [2, 6, 4];

pub fn zero_tail() -> [[CompositionElement; 3]; 3] {
    std::array::from_fn(|_| std::array::from_fn(|_| CompositionElement::zero(AlgebraKind::Gauss)))
}

pub fn scalar_tail(s: &CompositionElement) -> [[CompositionElement; 3]; 3] {
    let mut t = zero_tail();
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = s.clone();
    }
    t
}

/// Image of `(X, α)` in H₃(Θ): `X` embeds entrywise through K = ℚ(e1), and row `i`
/// of `α` becomes the K^⊥ part `Σⱼ fⱼ·αᵢⱼ` of the off-diagonal entry `xᵢ`.
pub fn tits_assemble(base: &JordanElement, tail: &[[CompositionElement; 3]; 3]) -> Result<JordanElement> {
    tits_assemble_with(&TitsParams::default(), base, tail)
}

pub fn tits_assemble_with(
    params: &TitsParams,
    base: &JordanElement,
    tail: &[[CompositionElement; 3]; 3],
) -> Result<JordanElement> {
    if params.lambda.kind() != AlgebraKind::Gauss || params.s.kind() != AlgebraKind::Gauss {
        return Err(Error::InvalidParameter("Tits parameters must lie over ℚ(i)".into()));
    }
    if params.lambda.norm() != params.s.norm() {
        return Err(Error::InvalidParameter("λλ* ≠ N(S)".into()));
    }
    if params != &TitsParams::default() {
        return Err(Error::InvalidParameter("only λ = 1, S = 1₃ is implemented".into()));
    }
    let theta = AlgebraKind::Theta0;
    let b = base.embed(theta)?;
    let off = std::array::from_fn(|i| {
        tail[i].iter().zip(TITS_FRAME).fold(b.off[i].clone(), |acc, (a, f)| {
            let fa = &CompositionElement::unit(theta, f) * &a.embed(theta).expect("ℚ(i) ⊂ O");
            &acc + &fa
        })
    });
    Ok(JordanElement { kind: theta, diag: b.diag.clone(), off })
}

/// Inverse of [`tits_assemble`] on H₃(Θ) ⊗ ℚ.
pub fn tits_split(x: &JordanElement) -> Result<(JordanElement, [[CompositionElement; 3]; 3])> {
    if x.kind() != AlgebraKind::Theta0 {
        return Err(Error::AlgebraMismatch(x.kind(), AlgebraKind::Theta0));
    }
    let g = AlgebraKind::Gauss;
    let mut tail = zero_tail();
    let mut base_off = std::array::from_fn(|_| CompositionElement::zero(g));
    for i in 0..3 {
        let y = &x.off[i];
        base_off[i] = CompositionElement::new(g, y.coords()[..2].to_vec())?;
        for (j, f) in TITS_FRAME.into_iter().enumerate() {
            let fj = CompositionElement::unit(AlgebraKind::Theta0, f);
            let fi = &fj * &CompositionElement::unit(AlgebraKind::Theta0, 1);
            let re = y.pair(&fj) / q(2);
            let im = y.pair(&fi) / q(2);
            tail[i][j] = CompositionElement::new(g, vec![re, im])?;
        }
    }
    let base = JordanElement { kind: g, diag: x.diag.clone(), off: base_off };
    Ok((base, tail))
}

fn gauss_mul(a: &CompositionElement, b: &CompositionElement) -> CompositionElement {
    a * b
}

fn det3(m: &[[CompositionElement; 3]; 3]) -> CompositionElement {
    let mut acc = CompositionElement::zero(m[0][0].kind());
    for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)] {
        let t = gauss_mul(&gauss_mul(&m[0][p[0]], &m[1][p[1]]), &m[2][p[2]]);
        acc = if sign > 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Second-construction norm `det X + 2 Re det α − tr(X α α*)` over K = ℚ(i).
pub fn tits_norm(base: &JordanElement, tail: &[[CompositionElement; 3]; 3]) -> Q {
    let xm: [[CompositionElement; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| base.entry(i, j)));
    let k = base.kind();
    let aa: [[CompositionElement; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(CompositionElement::zero(k), |acc, l| &acc + &gauss_mul(&tail[i][l], &tail[j][l].conj()))
        })
    });
    let mut tr = CompositionElement::zero(k);
    for i in 0..3 {
        for l in 0..3 {
            tr = &tr + &gauss_mul(&xm[i][l], &aa[l][i]);
        }
    }
    base.norm() + det3(tail).trace() - tr.coords()[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_class_invariants() {
        let e = JordanElement::e_class();
        assert_eq!(e.norm(), q(1));
        let bb = CompositionElement::beta().conj();
        let ebar = JordanElement::new([q(2), q(2), q(2)], [bb.clone(), bb.clone(), bb]).unwrap();
        assert_eq!(e.adjoint(), ebar);
        let id = JordanElement::identity(AlgebraKind::Theta0);
        assert_eq!(e.pair(&id), q(6));
        assert_eq!(e.pair(&e), q(24));
        assert!(e.is_psd());
        assert_eq!(e.rank(), 3);
        assert_eq!(e.content().unwrap(), 1);
    }

    #[test]
    fn ranks() {
        let k = AlgebraKind::Theta0;
        assert_eq!(JordanElement::idempotent(k, 0).rank(), 1);
        assert_eq!(JordanElement::diag_ints(k, 1, 1, 0).rank(), 2);
        assert_eq!(JordanElement::identity(k).rank(), 3);
        assert_eq!(JordanElement::zero(k).rank(), 0);
        assert!(!JordanElement::diag_ints(k, 1, -1, 0).is_psd());
    }

    #[test]
    fn duals() {
        assert_eq!(dual_index(AlgebraKind::Theta0), q(1));
        assert_eq!(dual_index(AlgebraKind::Rat), q(8));
        assert!(dual_index(AlgebraKind::Hurwitz) > q(1));
    }

    #[test]
    fn tits_round_trip_and_norm() {
        let g = AlgebraKind::Gauss;
        let z = |a: i64, b: i64| CompositionElement::from_ints(g, &[a, b]).unwrap();
        let base = JordanElement::new([q(1), q(-2), q(3)], [z(1, 2), z(0, -1), z(3, 1)]).unwrap();
        let tail = [[z(1, 0), z(2, -1), z(0, 1)], [z(-1, 1), z(0, 0), z(2, 2)], [z(1, 1), z(-3, 0), z(1, -2)]];
        let x = tits_assemble(&base, &tail).unwrap();
        assert_eq!(x.norm(), tits_norm(&base, &tail));
        let (b2, t2) = tits_split(&x).unwrap();
        assert_eq!(b2, base);
        assert_eq!(t2, tail);
    }
}
