//! Composition algebras ℚ ⊂ ℚ(i) ⊂ H ⊂ O with their maximal orders.
//!
//! The octonions are the Cayley–Dickson double of the Hamilton quaternions with
//! parameter γ = −1: `(a, b)(c, d) = (ac − d̄b, da + bc̄)`. The standard basis is
//! `e0 = 1, e1 = i, e2 = j, e3 = k, e4 = ℓ, e5 = iℓ, e6 = jℓ, e7 = kℓ`, and each
//! smaller algebra is spanned by a prefix of it, so embeddings pad with zeros.
//!
//! Orders (ℤ-bases in the standard coordinates):
//!
//! | algebra  | order                         | basis                                                        |
//! |----------|-------------------------------|--------------------------------------------------------------|
//! | `rat`    | ℤ                             | 1                                                            |
//! | `gauss`  | ℤ[i]                          | 1, i                                                         |
//! | `hurwitz`| Hurwitz order                 | 1, i, j, ½(1+i+j+k)                                          |
//! | `theta0` | Coxeter order Θ₀              | 1, e1, e2, ½(1+e1+e2+e3), e4, ½(1+e1+e4+e6), ½(1+e2+e4+e5), β |
//!
//! with β = ½(−1 + e1 + … + e7). Θ₀ is the set of x ∈ ½ℤ⁸ whose doubled
//! coordinates reduce mod 2 to a word of the extended Hamming code generated by
//! {0,1,2,3}, {0,3,5,6}, {0,2,4,5}, {0,1,4,6} and the all-ones word.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::Ellipsoid;
use crate::rational::{self, q, qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    Rat,
    Gauss,
    Hurwitz,
    Theta0,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 4] =
        [AlgebraKind::Rat, AlgebraKind::Gauss, AlgebraKind::Hurwitz, AlgebraKind::Theta0];

    pub fn dim(self) -> usize {
        match self {
            AlgebraKind::Rat => 1,
            AlgebraKind::Gauss => 2,
            AlgebraKind::Hurwitz => 4,
            AlgebraKind::Theta0 => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Rat => "rat",
            AlgebraKind::Gauss => "gauss",
            AlgebraKind::Hurwitz => "hurwitz",
            AlgebraKind::Theta0 => "theta0",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        AlgebraKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algebra {s:?}")))
    }

    pub fn algebra(self) -> &'static CompositionAlgebra {
        match self {
            AlgebraKind::Rat => &RAT,
            AlgebraKind::Gauss => &GAUSS,
            AlgebraKind::Hurwitz => &HURWITZ,
            AlgebraKind::Theta0 => &THETA0,
        }
    }

    /// Whether `self` is a subalgebra of `other` under the prefix embedding.
    pub fn is_sub_of(self, other: AlgebraKind) -> bool {
        self.dim() <= other.dim()
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn quat_mul(x: [i8; 4], y: [i8; 4]) -> [i8; 4] {
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn quat_conj(x: [i8; 4]) -> [i8; 4] {
    [x[0], -x[1], -x[2], -x[3]]
}

fn cd_mul(x: [i8; 8], y: [i8; 8]) -> [i8; 8] {
    let a = [x[0], x[1], x[2], x[3]];
    let b = [x[4], x[5], x[6], x[7]];
    let c = [y[0], y[1], y[2], y[3]];
    let d = [y[4], y[5], y[6], y[7]];
    let ac = quat_mul(a, c);
    let db = quat_mul(quat_conj(d), b);
    let da = quat_mul(d, a);
    let bc = quat_mul(b, quat_conj(c));
    let mut out = [0i8; 8];
    for i in 0..4 {
        out[i] = ac[i] - db[i];
        out[i + 4] = da[i] + bc[i];
    }
    out
}

/// `TABLE[i][j] = (s, k)` means `e_i e_j = s · e_k`.
pub static TABLE: Lazy<[[(i64, usize); 8]; 8]> = Lazy::new(|| {
    let mut t = [[(0i64, 0usize); 8]; 8];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut ei = [0i8; 8];
            let mut ej = [0i8; 8];
            ei[i] = 1;
            ej[j] = 1;
            let p = cd_mul(ei, ej);
            let k = p.iter().position(|&v| v != 0).expect("basis product is a signed unit");
            *cell = (p[k] as i64, k);
        }
    }
    t
});

const HAMMING_GENERATORS: [u8; 5] = [0b0000_1111, 0b0110_1001, 0b0011_0101, 0b0101_0011, 0xff];

static CODE: Lazy<[bool; 256]> = Lazy::new(|| {
    let mut words = vec![0u8];
    for g in HAMMING_GENERATORS {
        let shifted: Vec<u8> = words.iter().map(|w| w ^ g).collect();
        words.extend(shifted);
        words.sort_unstable();
        words.dedup();
    }
    let mut mask = [false; 256];
    for w in words {
        mask[w as usize] = true;
    }
    mask
});

/// Whether a bit pattern (bit i ↔ coordinate i) belongs to the Hamming code defining Θ₀.
pub fn in_hamming_code(word: u8) -> bool {
    CODE[word as usize]
}

/// A composition algebra with a fixed maximal order.
#[derive(Debug)]
pub struct CompositionAlgebra {
    kind: AlgebraKind,
    order_basis: Vec<Vec<Q>>,
    to_order: Vec<Vec<Q>>,
    /// `2 × to_order`; applied to doubled coordinates it yields four times the order coordinates.
    to_order_doubled: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    ellipsoid: Ellipsoid,
}

fn half_vec(dim: usize, support: &[usize], signs: &[i64]) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    for (&i, &s) in support.iter().zip(signs) {
        v[i] = qf(s, 2);
    }
    v
}

fn unit_vec(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = q(1);
    v
}

impl CompositionAlgebra {
    fn build(kind: AlgebraKind) -> Self {
        let dim = kind.dim();
        let order_basis = match kind {
            AlgebraKind::Rat => vec![unit_vec(1, 0)],
            AlgebraKind::Gauss => vec![unit_vec(2, 0), unit_vec(2, 1)],
            AlgebraKind::Hurwitz => vec![
                unit_vec(4, 0),
                unit_vec(4, 1),
                unit_vec(4, 2),
                half_vec(4, &[0, 1, 2, 3], &[1, 1, 1, 1]),
            ],
            AlgebraKind::Theta0 => vec![
                unit_vec(8, 0),
                unit_vec(8, 1),
                unit_vec(8, 2),
                half_vec(8, &[0, 1, 2, 3], &[1, 1, 1, 1]),
                unit_vec(8, 4),
                half_vec(8, &[0, 1, 4, 6], &[1, 1, 1, 1]),
                half_vec(8, &[0, 2, 4, 5], &[1, 1, 1, 1]),
                half_vec(8, &[0, 1, 2, 3, 4, 5, 6, 7], &[-1, 1, 1, 1, 1, 1, 1, 1]),
            ],
        };
        // Columns of `m` are the basis vectors, so std = m · ord.
        let m: Vec<Vec<Q>> =
            (0..dim).map(|i| (0..dim).map(|j| order_basis[j][i].clone()).collect()).collect();
        let to_order = rational::inverse(&m).expect("order basis is linearly independent");
        let to_order_doubled = to_order
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = x * q(2);
                        rational::to_i64(&y).expect("twice the inverse basis matrix is integral")
                    })
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<i64>> = order_basis
            .iter()
            .map(|u| {
                order_basis
                    .iter()
                    .map(|v| {
                        let dot: Q = u.iter().zip(v).map(|(a, b)| a * b).sum();
                        rational::to_i64(&(dot * q(2))).expect("integral Gram matrix")
                    })
                    .collect()
            })
            .collect();
        let half_gram: Vec<Vec<f64>> =
            gram.iter().map(|r| r.iter().map(|&g| g as f64 / 2.0).collect()).collect();
        let ellipsoid = Ellipsoid::new(&half_gram).expect("norm form is positive definite");
        CompositionAlgebra { kind, order_basis, to_order, to_order_doubled, gram, ellipsoid }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// `e_i e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Q> {
        let (s, k) = TABLE[i][j];
        let mut v = vec![Q::zero(); self.dim()];
        v[k] = q(s);
        v
    }

    /// Conjugation as a diagonal matrix.
    pub fn conjugation_matrix(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i != j {
                            Q::zero()
                        } else if i == 0 {
                            q(1)
                        } else {
                            q(-1)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn order_basis(&self) -> Vec<CompositionElement> {
        self.order_basis
            .iter()
            .map(|v| CompositionElement { kind: self.kind, coords: v.clone() })
            .collect()
    }

    /// Gram matrix of the order basis under `tr(x·conj(y))`.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_determinant(&self) -> Q {
        let g: Vec<Vec<Q>> = self.gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        rational::determinant(&g)
    }

    /// Order coordinates from standard coordinates.
    pub fn order_coords(&self, coords: &[Q]) -> Vec<Q> {
        self.to_order
            .iter()
            .map(|row| row.iter().zip(coords).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Standard coordinates from order coordinates.
    pub fn from_order_coords(&self, ord: &[Q]) -> Vec<Q> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| &self.order_basis[j][i] * &ord[j]).sum()).collect()
    }

    /// Order coordinates of an element given in doubled standard coordinates;
    /// `None` if it is not in the order.
    pub fn order_coords_doubled(&self, doubled: &[i64]) -> Option<Vec<i64>> {
        self.to_order_doubled
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(doubled).map(|(a, b)| a * b).sum();
                if s % 4 == 0 {
                    Some(s / 4)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Doubled standard coordinates of an order element.
    pub fn doubled_from_order(&self, ord: &[i64]) -> Vec<i64> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let twice = &self.order_basis[j][i] * q(2);
                        rational::to_i64(&twice).expect("order basis lies in ½ℤ") * ord[j]
                    })
                    .sum()
            })
            .collect()
    }

    /// Order coordinates of all elements of norm `m`, sorted lexicographically.
    pub fn norm_shell_coords(&self, m: u64) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut out = Vec::new();
        let center = vec![0.0; d];
        let target = 2 * m as i64;
        self.ellipsoid.enumerate(&center, m as f64, |_, _| true, |x| {
            let mut s = 0i64;
            for i in 0..d {
                for j in 0..d {
                    s += self.gram[i][j] * x[i] * x[j];
                }
            }
            if s == target {
                out.push(x.to_vec());
            }
        });
        out.sort();
        out
    }
}

static RAT: Lazy<CompositionAlgebra> = Lazy::new(|| CompositionAlgebra::build(AlgebraKind::Rat));
static GAUSS: Lazy<CompositionAlgebra> = Lazy::new(|| CompositionAlgebra::build(AlgebraKind::Gauss));
static HURWITZ: Lazy<CompositionAlgebra> =
    Lazy::new(|| CompositionAlgebra::build(AlgebraKind::Hurwitz));
static THETA0: Lazy<CompositionAlgebra> =
    Lazy::new(|| CompositionAlgebra::build(AlgebraKind::Theta0));

/// An element of a composition algebra in standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionElement {
    kind: AlgebraKind,
    coords: Vec<Q>,
}

impl CompositionElement {
    pub fn new(kind: AlgebraKind, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                kind.dim()
            )));
        }
        Ok(CompositionElement { kind, coords })
    }

    pub fn from_ints(kind: AlgebraKind, coords: &[i64]) -> Result<Self> {
        Self::new(kind, coords.iter().map(|&c| q(c)).collect())
    }

    /// From doubled standard coordinates (`2x`).
    pub fn from_doubled(kind: AlgebraKind, doubled: &[i64]) -> Self {
        debug_assert_eq!(doubled.len(), kind.dim());
        CompositionElement { kind, coords: doubled.iter().map(|&c| qf(c, 2)).collect() }
    }

    pub fn from_order_coords(kind: AlgebraKind, ord: &[i64]) -> Result<Self> {
        if ord.len() != kind.dim() {
            return Err(Error::InvalidParameter("wrong number of order coordinates".into()));
        }
        let ordq: Vec<Q> = ord.iter().map(|&c| q(c)).collect();
        Ok(CompositionElement { kind, coords: kind.algebra().from_order_coords(&ordq) })
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        CompositionElement { kind, coords: vec![Q::zero(); kind.dim()] }
    }

    pub fn scalar(kind: AlgebraKind, s: Q) -> Self {
        let mut coords = vec![Q::zero(); kind.dim()];
        coords[0] = s;
        CompositionElement { kind, coords }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::scalar(kind, q(1))
    }

    /// The standard basis vector `e_i`.
    pub fn unit(kind: AlgebraKind, i: usize) -> Self {
        let mut coords = vec![Q::zero(); kind.dim()];
        coords[i] = q(1);
        CompositionElement { kind, coords }
    }

    /// β = ½(−1 + e1 + … + e7).
    pub fn beta() -> Self {
        let mut coords = vec![qf(1, 2); 8];
        coords[0] = qf(-1, 2);
        CompositionElement { kind: AlgebraKind::Theta0, coords }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Image under the prefix embedding into a larger algebra.
    pub fn embed(&self, kind: AlgebraKind) -> Result<Self> {
        if !self.kind.is_sub_of(kind) {
            return Err(Error::AlgebraMismatch(self.kind, kind));
        }
        let mut coords = self.coords.clone();
        coords.resize(kind.dim(), Q::zero());
        Ok(CompositionElement { kind, coords })
    }

    /// Restriction to a subalgebra; fails if coordinates outside it are nonzero.
    pub fn restrict(&self, kind: AlgebraKind) -> Result<Self> {
        if self.coords[kind.dim().min(self.coords.len())..].iter().any(|c| !c.is_zero()) {
            return Err(Error::AlgebraMismatch(self.kind, kind));
        }
        let mut coords = self.coords.clone();
        coords.truncate(kind.dim());
        Ok(CompositionElement { kind, coords })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch(self.kind, other.kind));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.kind.dim();
        let mut out = vec![Q::zero(); d];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = TABLE[i][j];
                let p = a * b;
                if s > 0 {
                    out[k] += p;
                } else {
                    out[k] -= p;
                }
            }
        }
        CompositionElement { kind: self.kind, coords: out }
    }

    pub fn conj(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { -c })
            .collect();
        CompositionElement { kind: self.kind, coords }
    }

    pub fn norm(&self) -> Q {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn trace(&self) -> Q {
        &self.coords[0] * q(2)
    }

    /// `tr(x · conj(y))`.
    pub fn pair(&self, other: &Self) -> Q {
        let dot: Q = self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum();
        dot * q(2)
    }

    pub fn scale(&self, s: &Q) -> Self {
        CompositionElement { kind: self.kind, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn order_coords(&self) -> Vec<Q> {
        self.kind.algebra().order_coords(&self.coords)
    }

    /// Integer order coordinates, if the element lies in the order.
    pub fn integral_coords(&self) -> Option<Vec<i64>> {
        self.order_coords().iter().map(rational::to_i64).collect()
    }

    pub fn order_contains(&self) -> bool {
        self.order_coords().iter().all(|c| c.is_integer())
    }

    /// Doubled standard coordinates, if they are integral.
    pub fn doubled(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| rational::to_i64(&(c * q(2)))).collect()
    }

    /// Largest coordinate magnitude in the order basis.
    pub fn height(&self) -> Q {
        self.order_coords().iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn to_json(&self) -> Value {
        let coords: Vec<Value> = self.order_coords().iter().map(rational::to_json).collect();
        json!({ "algebra": self.kind.name(), "coords": coords })
    }

    /// Parses `{"algebra": .., "coords": [..]}` with order coordinates, a bare
    /// coordinate array in `default`, or a bare rational meaning a scalar in `default`.
    pub fn from_json(v: &Value, default: AlgebraKind) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let kind = match m.get("algebra") {
                    Some(Value::String(s)) => AlgebraKind::from_name(s)?,
                    Some(other) => return Err(Error::Parse(format!("bad algebra field {other}"))),
                    None => default,
                };
                let coords = m
                    .get("coords")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("missing coords array".into()))?;
                let ord: Vec<Q> = coords.iter().map(rational::from_json).collect::<Result<_>>()?;
                if ord.len() != kind.dim() {
                    return Err(Error::Parse(format!(
                        "{} coordinates for algebra {}",
                        ord.len(),
                        kind
                    )));
                }
                let std = kind.algebra().from_order_coords(&ord);
                let el = CompositionElement { kind, coords: std };
                if kind != default { el.embed(default).map_err(|e| Error::Parse(e.to_string())) } else { Ok(el) }
            }
            Value::Array(_) => Self::from_json(&json!({ "coords": v }), default),
            other => Ok(CompositionElement::scalar(default, rational::from_json(other)?)),
        }
    }
}

impl Add for &CompositionElement {
    type Output = CompositionElement;
    fn add(self, o: &CompositionElement) -> CompositionElement {
        assert_eq!(self.kind, o.kind, "adding elements of different algebras");
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        CompositionElement { kind: self.kind, coords }
    }
}

impl Sub for &CompositionElement {
    type Output = CompositionElement;
    fn sub(self, o: &CompositionElement) -> CompositionElement {
        assert_eq!(self.kind, o.kind, "subtracting elements of different algebras");
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        CompositionElement { kind: self.kind, coords }
    }
}

impl Neg for &CompositionElement {
    type Output = CompositionElement;
    fn neg(self) -> CompositionElement {
        CompositionElement { kind: self.kind, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// # Panics
/// If the operands live in different algebras; use [`CompositionElement::mul`] for a fallible product.
impl Mul for &CompositionElement {
    type Output = CompositionElement;
    fn mul(self, o: &CompositionElement) -> CompositionElement {
        assert_eq!(self.kind, o.kind, "multiplying elements of different algebras");
        self.mul_unchecked(o)
    }
}

/// All elements of an order with the given norm.
pub fn enumerate_norm(kind: AlgebraKind, m: u64) -> Vec<CompositionElement> {
    let alg = kind.algebra();
    alg.norm_shell_coords(m)
        .into_iter()
        .map(|ord| CompositionElement::from_order_coords(kind, &ord).expect("dimension matches"))
        .collect()
}

pub fn count_norm(kind: AlgebraKind, m: u64) -> usize {
    kind.algebra().norm_shell_coords(m).len()
}

/// Octonion in doubled standard coordinates (`2x ∈ ℤ⁸`), for hot loops over Θ₀.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfOct(pub [i64; 8]);

impl HalfOct {
    pub const ZERO: HalfOct = HalfOct([0; 8]);

    pub fn from_element(x: &CompositionElement) -> Option<HalfOct> {
        let d = x.doubled()?;
        let mut out = [0i64; 8];
        out[..d.len()].copy_from_slice(&d);
        Some(HalfOct(out))
    }

    pub fn to_element(self, kind: AlgebraKind) -> CompositionElement {
        CompositionElement::from_doubled(kind, &self.0[..kind.dim()])
    }

    /// Doubled coordinates of the product; exact whenever the product lies in ½ℤ⁸.
    #[inline]
    pub fn mul(self, o: HalfOct) -> HalfOct {
        let t = &*TABLE;
        let mut out = [0i64; 8];
        for i in 0..8 {
            let a = self.0[i];
            if a == 0 {
                continue;
            }
            for j in 0..8 {
                let b = o.0[j];
                if b == 0 {
                    continue;
                }
                let (s, k) = t[i][j];
                out[k] += s * a * b;
            }
        }
        for v in out.iter_mut() {
            debug_assert!(*v % 2 == 0, "product left ½ℤ⁸");
            *v /= 2;
        }
        HalfOct(out)
    }

    /// Raw doubled-coordinate product `(2x)(2y) = 4xy`, always integral.
    #[inline]
    pub fn mul_raw(self, o: HalfOct) -> [i64; 8] {
        let t = &*TABLE;
        let mut out = [0i64; 8];
        for i in 0..8 {
            let a = self.0[i];
            if a == 0 {
                continue;
            }
            for j in 0..8 {
                let b = o.0[j];
                if b != 0 {
                    let (s, k) = t[i][j];
                    out[k] += s * a * b;
                }
            }
        }
        out
    }

    #[inline]
    pub fn conj(self) -> HalfOct {
        let mut v = self.0;
        for x in v.iter_mut().skip(1) {
            *x = -*x;
        }
        HalfOct(v)
    }

    /// `4 · n(x)`.
    #[inline]
    pub fn norm4(self) -> i64 {
        self.0.iter().map(|v| v * v).sum()
    }

    /// `Σ (2x_i)(2y_i) = 2 tr(x·conj(y))`.
    #[inline]
    pub fn dot(self, o: HalfOct) -> i64 {
        self.0.iter().zip(o.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn add(self, o: HalfOct) -> HalfOct {
        let mut v = self.0;
        for (a, b) in v.iter_mut().zip(o.0) {
            *a += b;
        }
        HalfOct(v)
    }

    pub fn neg(self) -> HalfOct {
        HalfOct(self.0.map(|v| -v))
    }

    pub fn is_zero(self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// Membership in the order of `kind`, assuming coordinates beyond its dimension are zero.
    pub fn in_order(self, kind: AlgebraKind) -> bool {
        let d = kind.dim();
        if self.0[d..].iter().any(|&v| v != 0) {
            return false;
        }
        let mut word = 0u8;
        for (i, v) in self.0.iter().enumerate().take(d) {
            if v.rem_euclid(2) == 1 {
                word |= 1 << i;
            }
        }
        match kind {
            AlgebraKind::Theta0 => in_hamming_code(word),
            AlgebraKind::Hurwitz => word == 0 || word == 0b1111,
            AlgebraKind::Gauss | AlgebraKind::Rat => word == 0,
        }
    }
}

/// Whether every product of order basis elements stays in the order.
pub fn order_is_closed(kind: AlgebraKind) -> bool {
    let basis = kind.algebra().order_basis();
    basis.iter().all(|x| basis.iter().all(|y| (x * y).order_contains()))
}

pub fn bigint_to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_a_signed_permutation_with_unit() {
        for i in 0..8 {
            assert_eq!(TABLE[0][i], (1, i));
            assert_eq!(TABLE[i][0], (1, i));
            if i > 0 {
                assert_eq!(TABLE[i][i], (-1, 0));
            }
        }
    }

    #[test]
    fn code_has_sixteen_doubly_even_words() {
        let words: Vec<u8> = (0..=255u8).filter(|&w| in_hamming_code(w)).collect();
        assert_eq!(words.len(), 16);
        assert!(words.iter().all(|w| [0, 4, 8].contains(&w.count_ones())));
    }

    #[test]
    fn beta_minimal_polynomial() {
        let b = CompositionElement::beta();
        assert_eq!(b.norm(), q(2));
        assert_eq!(b.trace(), q(-1));
        let expected = &(-&b) - &CompositionElement::scalar(AlgebraKind::Theta0, q(2));
        assert_eq!(&b * &b, expected);
        assert!(b.order_contains());
    }

    #[test]
    fn half_e1_not_integral() {
        let x = CompositionElement::unit(AlgebraKind::Theta0, 1).scale(&qf(1, 2));
        assert!(!x.order_contains());
        assert!(!HalfOct::from_element(&x).unwrap().in_order(AlgebraKind::Theta0));
    }

    #[test]
    fn gram_determinants() {
        assert_eq!(AlgebraKind::Theta0.algebra().gram_determinant(), q(1));
        assert_eq!(AlgebraKind::Hurwitz.algebra().gram_determinant(), q(4));
        assert_eq!(AlgebraKind::Gauss.algebra().gram_determinant(), q(4));
        assert_eq!(AlgebraKind::Rat.algebra().gram_determinant(), q(2));
    }

    #[test]
    fn orders_closed() {
        for k in AlgebraKind::ALL {
            assert!(order_is_closed(k), "{k}");
        }
    }

    #[test]
    fn small_shells() {
        assert_eq!(count_norm(AlgebraKind::Theta0, 0), 1);
        assert_eq!(count_norm(AlgebraKind::Theta0, 1), 240);
        assert_eq!(count_norm(AlgebraKind::Hurwitz, 1), 24);
        assert_eq!(count_norm(AlgebraKind::Gauss, 1), 4);
        assert_eq!(count_norm(AlgebraKind::Rat, 4), 2);
    }

    #[test]
    fn doubled_round_trip() {
        let b = CompositionElement::beta();
        let h = HalfOct::from_element(&b).unwrap();
        assert!(h.in_order(AlgebraKind::Theta0));
        let ord = AlgebraKind::Theta0.algebra().order_coords_doubled(&h.0).unwrap();
        assert_eq!(ord, vec![0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(AlgebraKind::Theta0.algebra().doubled_from_order(&ord), h.0.to_vec());
        assert_eq!(h.mul(h).to_element(AlgebraKind::Theta0), &b * &b);
    }
}
