//! The Freudenthal space `W_J = ℚ ⊕ J ⊕ J^∨ ⊕ ℚ`.
//!
//! Conventions:
//!
//! * `⟨w, w'⟩ = ad' − (b, c') + (c, b') − da'`
//! * `q(w) = s² + 4aN(c) + 4dN(b) − 4(b^#, c^#)` with `s = ad − (b, c)`
//! * `w^♭` is normalized so that `⟨w^♭, w⟩ = q(w)`.
//!
//! Content and height use the ℤ-basis `a`, the J₀ basis in the b-slot, the dual
//! basis of J₀^∨ in the c-slot, then `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::composition::AlgebraKind;
use crate::error::{Error, Result};
use crate::integral::IntW;
use crate::jordan::{gcd_all, lattice_basis, JordanElement};
use crate::rational::{self, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreudenthalElement {
    pub a: Q,
    pub b: JordanElement,
    pub c: JordanElement,
    pub d: Q,
}

impl FreudenthalElement {
    pub fn new(a: Q, b: JordanElement, c: JordanElement, d: Q) -> Result<Self> {
        if b.kind() != c.kind() {
            return Err(Error::AlgebraMismatch(b.kind(), c.kind()));
        }
        Ok(FreudenthalElement { a, b, c, d })
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        FreudenthalElement {
            a: Q::zero(),
            b: JordanElement::zero(kind),
            c: JordanElement::zero(kind),
            d: Q::zero(),
        }
    }

    /// `(a, s·1, t·1, d)`.
    pub fn scalars(kind: AlgebraKind, a: Q, s: Q, t: Q, d: Q) -> Self {
        let id = JordanElement::identity(kind);
        FreudenthalElement { a, b: id.scale(&s), c: id.scale(&t), d }
    }

    pub fn ints(kind: AlgebraKind, a: i64, s: i64, t: i64, d: i64) -> Self {
        Self::scalars(kind, q(a), q(s), q(t), q(d))
    }

    /// The rank-one element `(1, X, X^#, N(X))`.
    pub fn from_jordan(x: &JordanElement) -> Self {
        FreudenthalElement { a: q(1), b: x.clone(), c: x.adjoint(), d: x.norm() }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.b.kind()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.d.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn embed(&self, kind: AlgebraKind) -> Result<Self> {
        Ok(FreudenthalElement {
            a: self.a.clone(),
            b: self.b.embed(kind)?,
            c: self.c.embed(kind)?,
            d: self.d.clone(),
        })
    }

    pub fn scale(&self, s: &Q) -> Self {
        FreudenthalElement { a: &self.a * s, b: self.b.scale(s), c: self.c.scale(s), d: &self.d * s }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(FreudenthalElement { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&q(-1)))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.kind() != o.kind() {
            return Err(Error::AlgebraMismatch(self.kind(), o.kind()));
        }
        Ok(())
    }

    pub fn symp(&self, o: &Self) -> Result<Q> {
        self.check(o)?;
        Ok(&self.a * &o.d - self.b.pair(&o.c) + self.c.pair(&o.b) - &self.d * &o.a)
    }

    pub fn quartic(&self) -> Q {
        let s = &self.a * &self.d - self.b.pair(&self.c);
        &s * &s + q(4) * &self.a * self.c.norm() + q(4) * &self.d * self.b.norm()
            - q(4) * self.b.adjoint().pair(&self.c.adjoint())
    }

    /// Four times the ♭-map.
    fn flat4(&self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let s = a * d - b.pair(c);
        let bs = b.adjoint();
        let cs = c.adjoint();
        let va = q(2) * a * &s + q(4) * b.norm();
        let vb = &(&b.scale(&(q(2) * &s)) - &cs.scale(&(q(4) * a))) + &c.cross(&bs).scale(&q(4));
        let vc = &(&bs.scale(&(q(4) * d)) - &c.scale(&(q(2) * &s))) - &b.cross(&cs).scale(&q(4));
        let vd = q(-2) * d * &s - q(4) * c.norm();
        FreudenthalElement { a: va, b: vb, c: vc, d: vd }
    }

    pub fn wflat(&self) -> Self {
        self.flat4().scale(&rational::qf(1, 4))
    }

    /// The three quadratic conditions `b^# = ac`, `c^# = db`, `(b, c) = 3ad`.
    pub fn rank_one_quadratic(&self) -> bool {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        b.adjoint() == c.scale(a) && c.adjoint() == b.scale(d) && b.pair(c) == q(3) * a * d
    }

    /// Rank ≤ 1: the quadratic conditions plus `c×(b×y) = (c,y)b + ad·y` and
    /// `b×(c×y) = (b,y)c + ad·y` on a basis of J.
    pub fn is_rank_at_most_one(&self) -> bool {
        // The conditions are homogeneous, so an integer multiple can be tested in i64.
        match self.small_integral_multiple() {
            Some(w) => w.is_rank_at_most_one(self.kind()),
            None => self.rank_at_most_one_rational(),
        }
    }

    fn rank_at_most_one_rational(&self) -> bool {
        if !self.rank_one_quadratic() {
            return false;
        }
        let ad = &self.a * &self.d;
        lattice_basis(self.kind()).iter().all(|y| {
            let ady = y.scale(&ad);
            let l1 = self.c.cross(&self.b.cross(y));
            let r1 = &self.b.scale(&self.c.pair(y)) + &ady;
            if l1 != r1 {
                return false;
            }
            let l2 = self.b.cross(&self.c.cross(y));
            let r2 = &self.c.scale(&self.b.pair(y)) + &ady;
            l2 == r2
        })
    }

    /// `λw` with all standard coordinates in ℤ and small enough for exact i64 products.
    fn small_integral_multiple(&self) -> Option<IntW> {
        let entries = || {
            [&self.b, &self.c]
                .into_iter()
                .flat_map(|x| x.diag().iter().chain(x.off().iter().flat_map(|o| o.coords())))
                .chain([&self.a, &self.d])
        };
        let lambda = entries().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let lambda = Q::from_integer(lambda);
        let scaled = self.scale(&lambda);
        let bound = BigInt::from(1i64 << 20);
        if entries().any(|x| (x * &lambda).numer().abs() > bound) {
            return None;
        }
        IntW::from_w(&scaled)
    }

    pub fn rank(&self) -> u8 {
        if self.is_zero() {
            0
        } else if self.is_rank_at_most_one() {
            1
        } else if self.flat4().is_zero() {
            2
        } else if self.quartic().is_zero() {
            3
        } else {
            4
        }
    }

    /// Coordinates in the ℤ-basis of W_J(ℤ).
    pub fn lattice_coords(&self) -> Vec<Q> {
        let mut v = vec![self.a.clone()];
        v.extend(self.b.lattice_coords());
        v.extend(self.c.dual_coords());
        v.push(self.d.clone());
        v
    }

    pub fn is_integral(&self) -> bool {
        self.lattice_coords().iter().all(|c| c.is_integer())
    }

    pub fn content(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let v: Option<Vec<i64>> = self.lattice_coords().iter().map(rational::to_i64).collect();
        let v = v.ok_or_else(|| Error::NotIntegral("element outside W_J(ℤ)".into()))?;
        Ok(gcd_all(&v))
    }

    pub fn height(&self) -> Q {
        self.lattice_coords().iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": rational::to_json(&self.a),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "d": rational::to_json(&self.d),
        })
    }

    pub fn from_json(v: &Value, default: AlgebraKind) -> Result<Self> {
        let m = v.as_object().ok_or_else(|| Error::Parse("expected an object with a, b, c, d".into()))?;
        let get = |k: &str| m.get(k).cloned().unwrap_or(Value::from(0));
        let a = rational::from_json(&get("a"))?;
        let d = rational::from_json(&get("d"))?;
        let b = JordanElement::from_json(&get("b"), default)?;
        let c = JordanElement::from_json(&get("c"), default)?;
        let kind = if b.kind() >= c.kind() { b.kind() } else { c.kind() };
        Self::new(a, b.embed(kind)?, c.embed(kind)?, d)
    }
}

/// `t = (λ, t₁, t₂, t₃)` acting by
/// `(a, b, c, d) ↦ (λ⁻¹δ⁻¹a, δ⁻¹ t·b, λδ t⁻¹·c, λ²δ d)` with `t·X = diag(t) X diag(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    lambda: Q,
    t: [Q; 3],
}

impl TorusElement {
    pub fn new(lambda: Q, t: [Q; 3]) -> Result<Self> {
        if lambda.is_zero() || t.iter().any(Zero::is_zero) {
            return Err(Error::InvalidParameter("torus entries must be nonzero".into()));
        }
        Ok(TorusElement { lambda, t })
    }

    pub fn identity() -> Self {
        TorusElement { lambda: q(1), t: [q(1), q(1), q(1)] }
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    pub fn t(&self) -> &[Q; 3] {
        &self.t
    }

    pub fn delta(&self) -> Q {
        &self.t[0] * &self.t[1] * &self.t[2]
    }

    pub fn act(&self, w: &FreudenthalElement) -> FreudenthalElement {
        let one = q(1);
        let delta = self.delta();
        let inv: [Q; 3] = std::array::from_fn(|i| &one / &self.t[i]);
        FreudenthalElement {
            a: &w.a / (&self.lambda * &delta),
            b: conjugate_diag(&w.b, &self.t).scale(&(&one / &delta)),
            c: conjugate_diag(&w.c, &inv).scale(&(&self.lambda * &delta)),
            d: &self.lambda * &self.lambda * &delta * &w.d,
        }
    }
}

pub fn torus_act(t: &TorusElement, w: &FreudenthalElement) -> FreudenthalElement {
    t.act(w)
}

/// `diag(t) X diag(t)`.
fn conjugate_diag(x: &JordanElement, t: &[Q; 3]) -> JordanElement {
    let diag = std::array::from_fn(|i| &x.diag()[i] * &t[i] * &t[i]);
    let off = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        x.off()[i].scale(&(&t[j] * &t[k]))
    });
    JordanElement::new(diag, off).expect("entries share the algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ranks() {
        let k = AlgebraKind::Theta0;
        assert_eq!(FreudenthalElement::ints(k, 0, 0, 0, 1).rank(), 1);
        assert_eq!(FreudenthalElement::ints(k, 1, 0, 0, 0).rank(), 1);
        let w = FreudenthalElement::new(
            q(0),
            JordanElement::diag_ints(k, 1, 1, 0),
            JordanElement::zero(k),
            q(0),
        )
        .unwrap();
        assert_eq!(w.rank(), 2);
        assert_eq!(FreudenthalElement::ints(AlgebraKind::Gauss, 0, 1, 0, -1).rank(), 4);
        assert_eq!(FreudenthalElement::ints(AlgebraKind::Gauss, 0, 1, 0, -1).quartic(), q(-4));
    }

    #[test]
    fn integer_and_rational_rank_tests_agree() {
        use crate::composition::CompositionElement;
        use crate::rational::qf;
        let k = AlgebraKind::Hurwitz;
        let x = JordanElement::new(
            [q(1), q(2), qf(1, 3)],
            [
                CompositionElement::from_ints(k, &[1, 0, -1, 0]).unwrap(),
                CompositionElement::from_ints(k, &[0, 1, 0, 0]).unwrap(),
                CompositionElement::from_ints(k, &[0, 0, 0, 1]).unwrap().scale(&qf(1, 2)),
            ],
        )
        .unwrap();
        for a in [q(1), qf(2, 3), q(-3)] {
            let one = FreudenthalElement::new(a.clone(), x.clone(), x.adjoint().scale(&(q(1) / &a)), x.norm() / (&a * &a)).unwrap();
            let two = one.add(&FreudenthalElement::scalars(k, q(0), q(0), q(0), q(1))).unwrap();
            for w in [one, two] {
                assert_eq!(w.is_rank_at_most_one(), w.rank_at_most_one_rational());
            }
        }
    }

    #[test]
    fn flat_pairs_to_quartic() {
        let k = AlgebraKind::Hurwitz;
        let x = JordanElement::diag_ints(k, 2, -1, 3);
        let w = FreudenthalElement::new(q(1), x.clone(), JordanElement::identity(k), q(5)).unwrap();
        assert_eq!(w.wflat().symp(&w).unwrap(), w.quartic());
    }

    #[test]
    fn torus_similitude() {
        let k = AlgebraKind::Rat;
        let t = TorusElement::new(q(2), [q(3), q(-1), rational::qf(1, 2)]).unwrap();
        let w = FreudenthalElement::ints(k, 1, 2, 3, 4);
        let v = FreudenthalElement::ints(k, -1, 0, 5, 2);
        assert_eq!(t.act(&w).symp(&t.act(&v)).unwrap(), q(2) * w.symp(&v).unwrap());
        assert_eq!(t.act(&w).quartic(), q(4) * w.quartic());
        assert_eq!(t.act(&FreudenthalElement::ints(k, 0, 0, 0, 1)).d, q(4) * t.delta());
    }
}
