//! Integer forms of Jordan and Freudenthal elements for enumeration loops.
//!
//! Off-diagonal entries are [`HalfOct`]s (doubled coordinates), so any element of
//! H₃(Θ₀) or of H₃ over a sub-order is representable. Products stay exact because
//! Θ₀ is closed under multiplication.

use crate::composition::{AlgebraKind, HalfOct};
use crate::freudenthal::FreudenthalElement;
use crate::jordan::{gcd_all, JordanElement};
use crate::rational::{self, q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntJordan {
    pub diag: [i64; 3],
    pub off: [HalfOct; 3],
}

impl IntJordan {
    pub const ZERO: IntJordan = IntJordan { diag: [0; 3], off: [HalfOct::ZERO; 3] };

    pub fn diagonal(d: [i64; 3]) -> Self {
        IntJordan { diag: d, off: [HalfOct::ZERO; 3] }
    }

    pub fn identity() -> Self {
        Self::diagonal([1, 1, 1])
    }

    pub fn from_jordan(x: &JordanElement) -> Option<Self> {
        let diag = [
            rational::to_i64(&x.diag()[0])?,
            rational::to_i64(&x.diag()[1])?,
            rational::to_i64(&x.diag()[2])?,
        ];
        let off = [
            HalfOct::from_element(&x.off()[0])?,
            HalfOct::from_element(&x.off()[1])?,
            HalfOct::from_element(&x.off()[2])?,
        ];
        Some(IntJordan { diag, off })
    }

    pub fn to_jordan(&self, kind: AlgebraKind) -> JordanElement {
        JordanElement::new(
            self.diag.map(q),
            self.off.map(|x| x.to_element(kind)),
        )
        .expect("shared algebra")
    }

    pub fn is_zero(&self) -> bool {
        self.diag == [0; 3] && self.off.iter().all(|x| x.is_zero())
    }

    pub fn norm(&self) -> i64 {
        let [c1, c2, c3] = self.diag;
        let [x1, x2, x3] = self.off;
        let triple = x1.mul(x2).mul(x3).0[0];
        c1 * c2 * c3 - (c1 * x1.norm4() + c2 * x2.norm4() + c3 * x3.norm4()) / 4 + triple
    }

    pub fn adjoint(&self) -> Self {
        let c = self.diag;
        let x = self.off;
        let diag = [
            c[1] * c[2] - x[0].norm4() / 4,
            c[2] * c[0] - x[1].norm4() / 4,
            c[0] * c[1] - x[2].norm4() / 4,
        ];
        let off = std::array::from_fn(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            x[j].mul(x[k]).conj().add(scale_oct(x[i], -c[i]))
        });
        IntJordan { diag, off }
    }

    pub fn pair(&self, o: &Self) -> i64 {
        let d: i64 = (0..3).map(|i| self.diag[i] * o.diag[i]).sum();
        let x: i64 = (0..3).map(|i| self.off[i].dot(o.off[i])).sum();
        d + x / 2
    }

    pub fn add(&self, o: &Self) -> Self {
        IntJordan {
            diag: std::array::from_fn(|i| self.diag[i] + o.diag[i]),
            off: std::array::from_fn(|i| self.off[i].add(o.off[i])),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        IntJordan { diag: self.diag.map(|v| v * s), off: self.off.map(|x| scale_oct(x, s)) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn cross(&self, o: &Self) -> Self {
        self.add(o).adjoint().sub(&self.adjoint()).sub(&o.adjoint())
    }

    /// Exact division, if every entry is divisible by `s`.
    pub fn div_exact(&self, s: i64) -> Option<Self> {
        if s == 0 {
            return None;
        }
        let ok = self.diag.iter().all(|v| v % s == 0) && self.off.iter().all(|x| x.0.iter().all(|v| v % s == 0));
        ok.then(|| IntJordan { diag: self.diag.map(|v| v / s), off: self.off.map(|x| HalfOct(x.0.map(|v| v / s))) })
    }

    pub fn in_order(&self, kind: AlgebraKind) -> bool {
        self.off.iter().all(|x| x.in_order(kind))
    }

    pub fn rank(&self) -> u8 {
        if self.is_zero() {
            0
        } else if self.adjoint().is_zero() {
            1
        } else if self.norm() == 0 {
            2
        } else {
            3
        }
    }

    pub fn is_psd(&self) -> bool {
        let id = Self::identity();
        self.pair(&id) >= 0 && self.adjoint().pair(&id) >= 0 && self.norm() >= 0
    }

    /// Coordinates in the ℤ-basis of H₃(order of `kind`).
    pub fn lattice_coords(&self, kind: AlgebraKind) -> Option<Vec<i64>> {
        let alg = kind.algebra();
        let d = kind.dim();
        let mut v = self.diag.to_vec();
        for x in &self.off {
            if x.0[d..].iter().any(|&c| c != 0) {
                return None;
            }
            v.extend(alg.order_coords_doubled(&x.0[..d])?);
        }
        Some(v)
    }

    pub fn content(&self, kind: AlgebraKind) -> Option<u64> {
        self.lattice_coords(kind).map(|v| gcd_all(&v))
    }

    pub fn height(&self, kind: AlgebraKind) -> Option<i64> {
        self.lattice_coords(kind).map(|v| v.iter().map(|c| c.abs()).max().unwrap_or(0))
    }
}

fn scale_oct(x: HalfOct, s: i64) -> HalfOct {
    HalfOct(x.0.map(|v| v * s))
}

/// Basis of `H₃(ℚ^8)` over ℚ used to test the linear rank-one conditions.
fn rational_basis(kind: AlgebraKind) -> Vec<IntJordan> {
    let mut v: Vec<IntJordan> = (0..3)
        .map(|i| {
            let mut d = [0; 3];
            d[i] = 1;
            IntJordan::diagonal(d)
        })
        .collect();
    for slot in 0..3 {
        for k in 0..kind.dim() {
            let mut x = IntJordan::ZERO;
            x.off[slot].0[k] = 2;
            v.push(x);
        }
    }
    v
}

/// Integer Freudenthal element; `c` is read in J₀^∨ through the trace pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntW {
    pub a: i64,
    pub b: IntJordan,
    pub c: IntJordan,
    pub d: i64,
}

impl IntW {
    pub fn from_w(w: &FreudenthalElement) -> Option<Self> {
        Some(IntW {
            a: rational::to_i64(&w.a)?,
            b: IntJordan::from_jordan(&w.b)?,
            c: IntJordan::from_jordan(&w.c)?,
            d: rational::to_i64(&w.d)?,
        })
    }

    pub fn to_w(&self, kind: AlgebraKind) -> FreudenthalElement {
        FreudenthalElement::new(q(self.a), self.b.to_jordan(kind), self.c.to_jordan(kind), q(self.d))
            .expect("shared algebra")
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.d == 0 && self.b.is_zero() && self.c.is_zero()
    }

    pub fn rank_one_quadratic(&self) -> bool {
        self.b.adjoint() == self.c.scale(self.a)
            && self.c.adjoint() == self.b.scale(self.d)
            && self.b.pair(&self.c) == 3 * self.a * self.d
    }

    /// Rank ≤ 1 for elements whose entries lie in the sub-algebra of `kind`.
    pub fn is_rank_at_most_one(&self, kind: AlgebraKind) -> bool {
        if !self.rank_one_quadratic() {
            return false;
        }
        let ad = self.a * self.d;
        rational_basis(kind).iter().all(|y| {
            let ady = y.scale(ad);
            self.c.cross(&self.b.cross(y)) == self.b.scale(self.c.pair(y)).add(&ady)
                && self.b.cross(&self.c.cross(y)) == self.c.scale(self.b.pair(y)).add(&ady)
        })
    }

    pub fn is_rank_one(&self, kind: AlgebraKind) -> bool {
        !self.is_zero() && self.is_rank_at_most_one(kind)
    }

    /// Content in W(ℤ) when the c-slot lattice equals the b-slot lattice (self-dual case
    /// or the convention used for sub-orders of Θ₀ inside W_{J_Θ}).
    pub fn content(&self, kind: AlgebraKind) -> Option<u64> {
        let mut v = vec![self.a, self.d];
        v.extend(self.b.lattice_coords(kind)?);
        v.extend(self.c.lattice_coords(kind)?);
        Some(gcd_all(&v))
    }

    pub fn height(&self, kind: AlgebraKind) -> Option<i64> {
        Some(self.a.abs().max(self.d.abs()).max(self.b.height(kind)?).max(self.c.height(kind)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_rational_forms() {
        let e = JordanElement::e_class();
        let ie = IntJordan::from_jordan(&e).unwrap();
        assert_eq!(ie.norm(), 1);
        assert_eq!(ie.adjoint().to_jordan(AlgebraKind::Theta0), e.adjoint());
        assert_eq!(ie.pair(&ie), 24);
        assert_eq!(ie.content(AlgebraKind::Theta0), Some(1));
        let w = IntW { a: 0, b: IntJordan::ZERO, c: IntJordan::ZERO, d: 1 };
        assert!(w.is_rank_one(AlgebraKind::Theta0));
    }
}
