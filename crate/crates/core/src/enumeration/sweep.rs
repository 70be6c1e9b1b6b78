//! Rank-one elements of W_J(ℤ) in a coordinate box.
//!
//! The b-slot ranges over the J₀ box and the c-slot over the J₀^∨ box. For
//! `a ≠ 0` the rank-one closure fixes `c = b^#/a` and `d = N(b)/a²`; for `a = 0,
//! d ≠ 0` symmetrically `b = c^#/d` with `N(c) = 0`; for `a = d = 0` both slots
//! are rank ≤ 1 and paired to zero.

use num_traits::Zero;

use crate::composition::AlgebraKind;
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::jordan::{dual_lattice_basis, lattice_basis, JordanElement};
use crate::rational::{self, q, Q};

const MAX_BOX: u64 = 20_000_000;

fn box_elements(basis: &[JordanElement], kind: AlgebraKind, h: i64) -> Vec<JordanElement> {
    let n = basis.len();
    let mut out = Vec::new();
    let mut m = vec![-h; n];
    loop {
        let x = m.iter().zip(basis).fold(JordanElement::zero(kind), |acc, (&c, b)| {
            if c == 0 {
                acc
            } else {
                &acc + &b.scale(&q(c))
            }
        });
        out.push(x);
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if m[i] < h {
                m[i] += 1;
                break;
            }
            m[i] = -h;
            i += 1;
        }
    }
}

fn within(x: &Q, h: i64) -> bool {
    x.is_integer() && rational::abs(x) <= q(h)
}

fn dual_within(c: &JordanElement, h: i64) -> bool {
    c.dual_coords().iter().all(|x| within(x, h))
}

fn primal_within(b: &JordanElement, h: i64) -> bool {
    b.lattice_coords().iter().all(|x| within(x, h))
}

/// Sorted `(lattice coordinates, element)` pairs.
pub fn enumerate(kind: AlgebraKind, height: u64) -> Result<Vec<(Vec<i64>, FreudenthalElement)>> {
    if height == 0 {
        return Err(Error::InvalidParameter("sweep height must be at least 1".into()));
    }
    let h = height as i64;
    let basis = lattice_basis(kind);
    let size = (2 * height + 1).checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
    if size > MAX_BOX {
        return Err(Error::TooLarge(format!("{size} box points for {kind} at height {height}")));
    }
    let bs = box_elements(basis, kind, h);
    let cs = box_elements(&dual_lattice_basis(kind)?, kind, h);
    let mut out: Vec<(Vec<i64>, FreudenthalElement)> = Vec::new();
    let mut push = |w: FreudenthalElement| {
        if !w.is_zero() && w.is_rank_at_most_one() {
            let key = w.lattice_coords().iter().map(|x| rational::to_i64(x).expect("integral")).collect();
            out.push((key, w));
        }
    };
    let b_adj: Vec<JordanElement> = bs.iter().map(JordanElement::adjoint).collect();
    let c_adj: Vec<JordanElement> = cs.iter().map(JordanElement::adjoint).collect();
    for a in (-h..=h).filter(|&a| a != 0) {
        let qa = q(a);
        for (b, bsharp) in bs.iter().zip(&b_adj) {
            let d = b.norm() / (&qa * &qa);
            if !within(&d, h) {
                continue;
            }
            let c = bsharp.scale(&(q(1) / &qa));
            if dual_within(&c, h) {
                push(FreudenthalElement { a: qa.clone(), b: b.clone(), c, d });
            }
        }
    }
    for d in (-h..=h).filter(|&d| d != 0) {
        let qd = q(d);
        for (c, csharp) in cs.iter().zip(&c_adj) {
            if !c.norm().is_zero() {
                continue;
            }
            let b = csharp.scale(&(q(1) / &qd));
            if primal_within(&b, h) {
                push(FreudenthalElement { a: Q::zero(), b, c: c.clone(), d: qd.clone() });
            }
        }
    }
    let rank_le_one_b: Vec<&JordanElement> = bs.iter().zip(&b_adj).filter(|(_, s)| s.is_zero()).map(|(b, _)| b).collect();
    let rank_le_one_c: Vec<&JordanElement> = cs.iter().zip(&c_adj).filter(|(_, s)| s.is_zero()).map(|(c, _)| c).collect();
    for b in &rank_le_one_b {
        for c in &rank_le_one_c {
            if b.pair(c).is_zero() {
                push(FreudenthalElement { a: Q::zero(), b: (*b).clone(), c: (*c).clone(), d: Q::zero() });
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.dedup_by(|x, y| x.0 == y.0);
    Ok(out)
}
