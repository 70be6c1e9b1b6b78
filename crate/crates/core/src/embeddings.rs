//! Identifications `W_{J_B} ⊕ W₆⊗B ≅ W_{J_Θ}` and `W_{J_K} ⊕ B² ≅ W_J`.
//!
//! Cayley–Dickson side: an octonion is `p + tℓ` with `p, t` quaternions, so the
//! off-diagonal entry `xᵢ` of the b-slot is `pᵢ + tᵢℓ` where `tᵢ` is the i-th tail
//! entry for that slot; likewise for the c-slot.
//!
//! Tits side: each slot is assembled from `(X, α) ∈ H₃(K) ⊕ M₃(K)` by
//! [`tits_assemble`](crate::jordan::tits_assemble).

use serde_json::{json, Value};

use crate::composition::{AlgebraKind, CompositionElement};
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::jordan::{tits_assemble, tits_split, zero_tail, JordanElement};
use crate::rational::Q;

const B: AlgebraKind = AlgebraKind::Hurwitz;
const K: AlgebraKind = AlgebraKind::Gauss;
const THETA: AlgebraKind = AlgebraKind::Theta0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDSplitElement {
    pub base: FreudenthalElement,
    /// Quaternion tails of the b-slot and c-slot off-diagonal entries.
    pub tail: [[CompositionElement; 3]; 2],
}

impl CDSplitElement {
    pub fn new(base: FreudenthalElement, tail: [[CompositionElement; 3]; 2]) -> Result<Self> {
        if base.kind() != B {
            return Err(Error::AlgebraMismatch(base.kind(), B));
        }
        for t in tail.iter().flatten() {
            if t.kind() != B {
                return Err(Error::AlgebraMismatch(t.kind(), B));
            }
        }
        Ok(CDSplitElement { base, tail })
    }

    pub fn base_only(base: FreudenthalElement) -> Result<Self> {
        Self::new(base, std::array::from_fn(|_| std::array::from_fn(|_| CompositionElement::zero(B))))
    }

    pub fn is_integral(&self) -> bool {
        self.base.is_integral() && self.tail.iter().flatten().all(CompositionElement::order_contains)
    }

    /// `−Σ (tᵇᵢ, t'ᶜᵢ) + Σ (tᶜᵢ, t'ᵇᵢ)`, the tail part of the symplectic form.
    pub fn tail_symp(&self, o: &Self) -> Q {
        let mut s = Q::default();
        for i in 0..3 {
            s -= self.tail[0][i].pair(&o.tail[1][i]);
            s += self.tail[1][i].pair(&o.tail[0][i]);
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base.to_json(),
            "tail": self.tail.iter().map(|r| r.iter().map(CompositionElement::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let base = FreudenthalElement::from_json(v.get("base").ok_or_else(|| Error::Parse("missing base".into()))?, B)?;
        let tail = match v.get("tail") {
            None => std::array::from_fn(|_| std::array::from_fn(|_| CompositionElement::zero(B))),
            Some(Value::Array(rows)) if rows.len() == 2 => {
                let mut out: [[CompositionElement; 3]; 2] =
                    std::array::from_fn(|_| std::array::from_fn(|_| CompositionElement::zero(B)));
                for (r, row) in rows.iter().enumerate() {
                    let row = row.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse("tail rows hold three quaternions".into()))?;
                    for (i, e) in row.iter().enumerate() {
                        out[r][i] = CompositionElement::from_json(e, B)?;
                    }
                }
                out
            }
            _ => return Err(Error::Parse("tail must be two rows of three quaternions".into())),
        };
        Self::new(base, tail)
    }
}

fn double(p: &CompositionElement, t: &CompositionElement) -> CompositionElement {
    let mut c = p.coords().to_vec();
    c.extend_from_slice(t.coords());
    CompositionElement::new(THETA, c).expect("eight coordinates")
}

fn double_slot(x: &JordanElement, tail: &[CompositionElement; 3]) -> JordanElement {
    let off = std::array::from_fn(|i| double(&x.off()[i], &tail[i]));
    JordanElement::new(x.diag().clone(), off).expect("all entries octonions")
}

pub fn cd_embed(e: &CDSplitElement) -> FreudenthalElement {
    FreudenthalElement {
        a: e.base.a.clone(),
        b: double_slot(&e.base.b, &e.tail[0]),
        c: double_slot(&e.base.c, &e.tail[1]),
        d: e.base.d.clone(),
    }
}

fn halve_slot(x: &JordanElement) -> (JordanElement, [CompositionElement; 3]) {
    let mut tails: [CompositionElement; 3] = std::array::from_fn(|_| CompositionElement::zero(B));
    let off = std::array::from_fn(|i| {
        let c = x.off()[i].coords();
        tails[i] = CompositionElement::new(B, c[4..].to_vec()).expect("four coordinates");
        CompositionElement::new(B, c[..4].to_vec()).expect("four coordinates")
    });
    (JordanElement::new(x.diag().clone(), off).expect("quaternion entries"), tails)
}

/// Inverse of [`cd_embed`].
pub fn cd_split(w: &FreudenthalElement) -> Result<CDSplitElement> {
    if w.kind() != THETA {
        return Err(Error::AlgebraMismatch(w.kind(), THETA));
    }
    let (b, tb) = halve_slot(&w.b);
    let (c, tc) = halve_slot(&w.c);
    let base = FreudenthalElement::new(w.a.clone(), b, c, w.d.clone())?;
    CDSplitElement::new(base, [tb, tc])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsSplitElement {
    pub base: FreudenthalElement,
    /// `η = (η₁, η₂)`, the M₃(K) parts of the b- and c-slots.
    pub eta: [[[CompositionElement; 3]; 3]; 2],
}

impl TitsSplitElement {
    pub fn new(base: FreudenthalElement, eta: [[[CompositionElement; 3]; 3]; 2]) -> Result<Self> {
        if base.kind() != K {
            return Err(Error::AlgebraMismatch(base.kind(), K));
        }
        for e in eta.iter().flatten().flatten() {
            if e.kind() != K {
                return Err(Error::AlgebraMismatch(e.kind(), K));
            }
        }
        Ok(TitsSplitElement { base, eta })
    }

    pub fn base_only(base: FreudenthalElement) -> Result<Self> {
        Self::new(base, [zero_tail(), zero_tail()])
    }

    pub fn is_integral(&self) -> bool {
        self.base.is_integral() && self.eta.iter().flatten().flatten().all(CompositionElement::order_contains)
    }

    pub fn to_json(&self) -> Value {
        let m = |t: &[[CompositionElement; 3]; 3]| {
            t.iter().map(|r| r.iter().map(CompositionElement::to_json).collect::<Vec<_>>()).collect::<Vec<_>>()
        };
        json!({ "base": self.base.to_json(), "tail": [m(&self.eta[0]), m(&self.eta[1])] })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let base = FreudenthalElement::from_json(v.get("base").ok_or_else(|| Error::Parse("missing base".into()))?, K)?;
        let mut eta = [zero_tail(), zero_tail()];
        if let Some(t) = v.get("tail") {
            let t = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Parse("tail must hold two 3×3 matrices".into()))?;
            for (s, m) in t.iter().enumerate() {
                let rows = m.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse("tail matrices are 3×3".into()))?;
                for (i, r) in rows.iter().enumerate() {
                    let r = r.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse("tail matrices are 3×3".into()))?;
                    for (j, e) in r.iter().enumerate() {
                        eta[s][i][j] = CompositionElement::from_json(e, K)?;
                    }
                }
            }
        }
        Self::new(base, eta)
    }
}

pub fn tits_embed(e: &TitsSplitElement) -> Result<FreudenthalElement> {
    FreudenthalElement::new(
        e.base.a.clone(),
        tits_assemble(&e.base.b, &e.eta[0])?,
        tits_assemble(&e.base.c, &e.eta[1])?,
        e.base.d.clone(),
    )
}

/// Inverse of [`tits_embed`].
pub fn tits_split_w(w: &FreudenthalElement) -> Result<TitsSplitElement> {
    let (b, e1) = tits_split(&w.b)?;
    let (c, e2) = tits_split(&w.c)?;
    TitsSplitElement::new(FreudenthalElement::new(w.a.clone(), b, c, w.d.clone())?, [e1, e2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::scalar_tail;
    use crate::rational::q;

    #[test]
    fn prop_witness_is_rank_one() {
        let omega = FreudenthalElement::ints(K, 0, 1, 0, -1);
        let kappa_half = CompositionElement::from_ints(K, &[0, 1]).unwrap();
        for sign in [1, -1] {
            let eta = [scalar_tail(&CompositionElement::one(K)), scalar_tail(&kappa_half.scale(&q(-sign)))];
            let w = tits_embed(&TitsSplitElement::new(omega.clone(), eta).unwrap()).unwrap();
            assert_eq!(w.quartic(), q(0));
            assert_eq!(w.rank(), 1);
            assert!(w.is_integral());
        }
        let base = tits_embed(&TitsSplitElement::base_only(omega).unwrap()).unwrap();
        assert_eq!(base.quartic(), q(-4));
    }

    #[test]
    fn cd_round_trip() {
        let base = FreudenthalElement::ints(B, 1, 2, -1, 3);
        let t = CompositionElement::from_ints(B, &[1, 0, -1, 2]).unwrap();
        let e = CDSplitElement::new(base, [[t.clone(), t.conj(), t.clone()], [t.conj(), t.clone(), t]]).unwrap();
        let w = cd_embed(&e);
        assert!(w.is_integral());
        assert_eq!(cd_split(&w).unwrap(), e);
    }
}
