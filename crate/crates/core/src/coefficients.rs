//! Fourier coefficients of θ_Gan, Kim's form, F_Δ and the E₇/E₆ pullbacks.
//!
//! Pullback sums only need the rank-one completions `x + u`: the diagonal of the
//! condition `B^# = aC` fixes the norm of every tail entry, so each sum is over a
//! product of finite norm shells.

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::composition::{enumerate_norm, AlgebraKind, HalfOct};
use crate::embeddings::{cd_embed, CDSplitElement};
use crate::enumeration::{self, EnumerationResult, EnumerationTask, PairingClass};
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::integral::{IntJordan, IntW};
use crate::jordan::{JordanElement, TITS_FRAME};
use crate::rational::{self, q, qf, Q};

const THETA: AlgebraKind = AlgebraKind::Theta0;

/// Candidate products above this size are refused.
const MAX_CANDIDATES: u64 = 50_000_000;

/// `Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> u64 {
    assert!(n >= 1, "divisor sums need n ≥ 1");
    let mut s: u64 = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += d.pow(k);
            let e = n / d;
            if e != d {
                s += e.pow(k);
            }
        }
        d += 1;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorSum {
    pub k: u32,
    pub n: u64,
    pub value: u64,
}

impl DivisorSum {
    pub fn new(k: u32, n: u64) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameter("divisor sums need k, n ≥ 1".into()));
        }
        Ok(DivisorSum { k, n, value: sigma(k, n) })
    }
}

/// Coefficients of `q·Π(1 − q^m)^24` up to `q^n`.
pub fn tau_table(n: usize) -> Vec<i128> {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        for _ in 0..24 {
            for i in (m..=n).rev() {
                p[i] -= p[i - m];
            }
        }
    }
    let mut tau = vec![0i128; n + 1];
    tau[1..].copy_from_slice(&p[..n]);
    tau
}

pub fn ramanujan_tau(n: u64) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidParameter("τ(n) needs n ≥ 1".into()));
    }
    i64::try_from(tau_table(n as usize)[n as usize]).map_err(|_| Error::TooLarge(format!("τ({n})")))
}

fn int_w(w: &FreudenthalElement) -> Result<IntW> {
    let wt = w.embed(THETA)?;
    if !wt.is_integral() {
        return Err(Error::NotIntegral("element outside W_J(ℤ)".into()));
    }
    IntW::from_w(&wt).ok_or_else(|| Error::NotIntegral("element outside W_J(ℤ)".into()))
}

/// `σ₄(Δ(ω))` on rank one, `0` on higher rank.
pub fn a_theta(w: &FreudenthalElement) -> Result<u64> {
    if w.is_zero() {
        return Err(Error::ZeroElement);
    }
    let iw = int_w(w)?;
    if iw.is_rank_one(THETA) {
        Ok(sigma(4, iw.content(THETA).expect("integral")))
    } else {
        Ok(0)
    }
}

/// `1/240` at `T = 0`, `σ₃(Δ(T))` on rank-one PSD `T`, otherwise `0`.
pub fn kim_coeff(t: &JordanElement) -> Result<Q> {
    if t.is_zero() {
        return Ok(qf(1, 240));
    }
    let t = t.embed(THETA)?;
    if !t.is_integral() {
        return Err(Error::NotIntegral("Jordan element outside J₀".into()));
    }
    if t.rank() == 1 && t.is_psd() {
        Ok(q(sigma(3, t.content()?) as i64))
    } else {
        Ok(Q::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FdeltaValue {
    pub value: i64,
    pub sum_i: u64,
    pub sum_e: u64,
    pub count_i: u64,
    pub count_e: u64,
    pub complete: bool,
}

/// `Σ_{Ω_I(ω₀)} σ₄(Δ) − Σ_{Ω_E(ω₀)} σ₄(Δ)`.
pub fn fdelta_coeff(omega0: &[Q; 4], height: u64) -> Result<FdeltaValue> {
    let fi = enumeration::omega_fiber(PairingClass::I, omega0, height)?;
    let fe = enumeration::omega_fiber(PairingClass::E, omega0, height)?;
    Ok(FdeltaValue {
        value: fi.aggregate as i64 - fe.aggregate as i64,
        sum_i: fi.aggregate,
        sum_e: fe.aggregate,
        count_i: fi.count,
        count_e: fe.count,
        complete: fi.complete && fe.complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackValue {
    /// Sum of `a_θ` over the rank-one completions within the height bound.
    pub value: u64,
    pub terms: u64,
    /// False when some rank-one completion exceeded the height bound.
    pub complete: bool,
    pub witnesses: Vec<IntW>,
}

impl PullbackValue {
    fn empty() -> Self {
        PullbackValue { value: 0, terms: 0, complete: true, witnesses: Vec::new() }
    }

    pub fn to_json(&self, with_witnesses: bool) -> Value {
        let mut v = json!({ "value": self.value, "terms": self.terms, "complete": self.complete });
        if with_witnesses {
            v["witnesses"] = Value::Array(self.witnesses.iter().map(|w| w.to_w(THETA).to_json()).collect());
        }
        v
    }
}

/// A tail choice: contribution to each off-diagonal slot, and its height.
#[derive(Clone, Copy, Debug)]
struct Tail {
    slots: [HalfOct; 3],
    height: i64,
}

fn product3(shells: &[Vec<(HalfOct, i64)>; 3]) -> Vec<Tail> {
    let mut out = Vec::new();
    for a in &shells[0] {
        for b in &shells[1] {
            for c in &shells[2] {
                out.push(Tail { slots: [a.0, b.0, c.0], height: a.1.max(b.1).max(c.1) });
            }
        }
    }
    out
}

fn add_tail(x: &IntJordan, t: &Tail) -> IntJordan {
    IntJordan { diag: x.diag, off: std::array::from_fn(|i| x.off[i].add(t.slots[i])) }
}

/// Rank-one completions `(a, b + t, c + s, d)` with `t ∈ tb`, `s ∈ tc`, where
/// `tail_of` recovers `(tail, height)` from a full slot entry, or `None` if the
/// entry does not come from an integral tail over the given base entry.
fn completions<F>(base: &IntW, tb: &[Vec<(HalfOct, i64)>; 3], tc: &[Vec<(HalfOct, i64)>; 3], tail_of: F) -> Result<Vec<(IntW, i64)>>
where
    F: Fn(&IntJordan, &IntJordan) -> Option<i64>,
{
    let size = |s: &[Vec<(HalfOct, i64)>; 3]| s.iter().map(|v| v.len() as u64).product::<u64>();
    let mut out = Vec::new();
    let IntW { a, b, c, d } = *base;
    if a != 0 || d != 0 {
        let (shells, swap) = if a != 0 { (tb, false) } else { (tc, true) };
        if size(shells) > MAX_CANDIDATES {
            return Err(Error::TooLarge(format!("{} tail candidates", size(shells))));
        }
        let (lead, lead_base, other_base) = if swap { (d, c, b) } else { (a, b, c) };
        for t in product3(shells) {
            let x = add_tail(&lead_base, &t);
            let Some(y) = x.adjoint().div_exact(lead) else { continue };
            let Some(hy) = tail_of(&y, &other_base) else { continue };
            let w = if swap { IntW { a, b: y, c: x, d } } else { IntW { a, b: x, c: y, d } };
            if w.is_rank_one(THETA) {
                out.push((w, t.height.max(hy)));
            }
        }
    } else {
        if size(tb).max(size(tc)) > MAX_CANDIDATES {
            return Err(Error::TooLarge(format!("{} tail candidates", size(tb).max(size(tc)))));
        }
        let bs: Vec<(IntJordan, i64)> =
            product3(tb).iter().map(|t| (add_tail(&b, t), t.height)).filter(|(x, _)| x.adjoint().is_zero()).collect();
        let cs: Vec<(IntJordan, i64)> =
            product3(tc).iter().map(|t| (add_tail(&c, t), t.height)).filter(|(x, _)| x.adjoint().is_zero()).collect();
        for (x, hx) in &bs {
            for (y, hy) in &cs {
                if x.pair(y) != 0 {
                    continue;
                }
                let w = IntW { a: 0, b: *x, c: *y, d: 0 };
                if w.is_rank_one(THETA) {
                    out.push((w, (*hx).max(*hy)));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn summarize(found: Vec<(IntW, i64)>, height: u64) -> PullbackValue {
    let mut v = PullbackValue::empty();
    for (w, h) in found {
        if h as u64 > height {
            v.complete = false;
            continue;
        }
        v.value += sigma(4, w.content(THETA).expect("integral"));
        v.terms += 1;
        v.witnesses.push(w);
    }
    v
}

fn diag_targets(base: &IntW) -> ([i64; 3], [i64; 3]) {
    let bs = base.b.adjoint();
    let cs = base.c.adjoint();
    (
        std::array::from_fn(|i| bs.diag[i] - base.a * base.c.diag[i]),
        std::array::from_fn(|i| cs.diag[i] - base.d * base.b.diag[i]),
    )
}

fn hurwitz_shell(m: i64) -> Vec<(HalfOct, i64)> {
    enumerate_norm(AlgebraKind::Hurwitz, m as u64)
        .into_iter()
        .map(|t| {
            let d = HalfOct::from_element(&t).expect("order elements are half-integral");
            let h = t.integral_coords().expect("order element").iter().map(|c| c.abs()).max().unwrap_or(0);
            let mut v = [0i64; 8];
            v[4..].copy_from_slice(&d.0[..4]);
            (HalfOct(v), h)
        })
        .collect()
}

/// `Σ_{u ∈ W₆(B)} a_θ(x + u)` over tails of height at most `height`.
pub fn e7_pullback_coeff(x: &FreudenthalElement, height: u64) -> Result<PullbackValue> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.kind() != AlgebraKind::Hurwitz {
        return Err(Error::AlgebraMismatch(x.kind(), AlgebraKind::Hurwitz));
    }
    if !x.b.is_integral() || !x.c.is_integral() || !x.a.is_integer() || !x.d.is_integer() {
        return Err(Error::NotIntegral("E₇ pullback argument must lie in ℤ ⊕ H₃(B) ⊕ H₃(B) ⊕ ℤ".into()));
    }
    let base = IntW::from_w(&cd_embed(&CDSplitElement::base_only(x.clone())?)).expect("integral");
    let (rb, rc) = diag_targets(&base);
    if rb.iter().chain(&rc).any(|&r| r < 0) {
        return Ok(PullbackValue::empty());
    }
    let tb = rb.map(hurwitz_shell);
    let tc = rc.map(hurwitz_shell);
    let tail_of = |y: &IntJordan, over: &IntJordan| -> Option<i64> {
        if y.diag != over.diag {
            return None;
        }
        let mut h = 0;
        for i in 0..3 {
            if y.off[i].0[..4] != over.off[i].0[..4] {
                return None;
            }
            let mut t = [0i64; 8];
            t[..4].copy_from_slice(&y.off[i].0[4..]);
            let t = HalfOct(t);
            if !t.in_order(AlgebraKind::Hurwitz) {
                return None;
            }
            let coords = AlgebraKind::Hurwitz.algebra().order_coords_doubled(&t.0[..4])?;
            h = h.max(coords.iter().map(|c| c.abs()).max().unwrap_or(0));
        }
        Some(h)
    };
    Ok(summarize(completions(&base, &tb, &tc, tail_of)?, height))
}

/// Vectors `v ∈ ℤ⁶` with `Σ vᵢ² = r`, read as rows of M₃(ℤ[i]).
fn gauss_rows(r: i64) -> Vec<[i64; 6]> {
    fn rec(i: usize, left: i64, cur: &mut [i64; 6], out: &mut Vec<[i64; 6]>) {
        if i == 6 {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        let m = (left as f64).sqrt().floor() as i64;
        for v in -m..=m {
            if v * v <= left {
                cur[i] = v;
                rec(i + 1, left - v * v, cur, out);
            }
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, r, &mut [0; 6], &mut out);
    out
}

/// Doubled image `Σⱼ fⱼ·αⱼ` of a row `α ∈ ℤ[i]³`.
fn frame_image(row: &[i64; 6]) -> HalfOct {
    let mut acc = HalfOct::ZERO;
    for (j, f) in TITS_FRAME.into_iter().enumerate() {
        let mut u = [0i64; 8];
        u[f] = 2;
        let mut a = [0i64; 8];
        a[0] = 2 * row[2 * j];
        a[1] = 2 * row[2 * j + 1];
        acc = acc.add(HalfOct(u).mul(HalfOct(a)));
    }
    acc
}

/// Inverse of [`frame_image`] on doubled coordinates.
fn frame_row(x: &HalfOct) -> Option<[i64; 6]> {
    let mut row = [0i64; 6];
    for (j, f) in TITS_FRAME.into_iter().enumerate() {
        for (part, unit) in [(0usize, 0usize), (1, 1)] {
            let mut u = [0i64; 8];
            u[f] = 2;
            let mut e = [0i64; 8];
            e[unit] = 2;
            let basis = HalfOct(u).mul(HalfOct(e));
            let dot = x.dot(basis);
            if dot % 4 != 0 {
                return None;
            }
            row[2 * j + part] = dot / 4;
        }
    }
    let back = frame_image(&row);
    (back.0[2..] == x.0[2..]).then_some(row)
}

fn gauss_shell(r: i64) -> Vec<(HalfOct, i64)> {
    gauss_rows(r)
        .into_iter()
        .map(|row| (frame_image(&row), row.iter().map(|v| v.abs()).max().unwrap_or(0)))
        .collect()
}

/// `Σ_{η ∈ B²} a_θ(ω + η)` over `η` of height at most `height`.
pub fn e6_pullback_coeff(w: &FreudenthalElement, height: u64) -> Result<PullbackValue> {
    if w.is_zero() {
        return Err(Error::ZeroElement);
    }
    if w.kind() != AlgebraKind::Gauss {
        return Err(Error::AlgebraMismatch(w.kind(), AlgebraKind::Gauss));
    }
    if !w.b.is_integral() || !w.c.is_integral() || !w.a.is_integer() || !w.d.is_integer() {
        return Err(Error::NotIntegral("E₆ pullback argument must lie in ℤ ⊕ H₃(ℤ[i]) ⊕ H₃(ℤ[i]) ⊕ ℤ".into()));
    }
    let base = IntW::from_w(&w.embed(THETA)?).expect("integral");
    let (rb, rc) = diag_targets(&base);
    if rb.iter().chain(&rc).any(|&r| r < 0) {
        return Ok(PullbackValue::empty());
    }
    let tb = rb.map(gauss_shell);
    let tc = rc.map(gauss_shell);
    let tail_of = |y: &IntJordan, over: &IntJordan| -> Option<i64> {
        if y.diag != over.diag {
            return None;
        }
        let mut h = 0;
        for i in 0..3 {
            if y.off[i].0[..2] != over.off[i].0[..2] {
                return None;
            }
            let row = frame_row(&y.off[i])?;
            h = h.max(row.iter().map(|v| v.abs()).max().unwrap_or(0));
        }
        Some(h)
    };
    Ok(summarize(completions(&base, &tb, &tc, tail_of)?, height))
}

/// Whether `x = κ²` for some `κ ∈ ℚ(i)` with `κ* = −κ`, i.e. `x = −t²`, `t ∈ ℚ^×`.
pub fn is_antihermitian_square(x: &Q) -> bool {
    if x >= &Q::zero() {
        return false;
    }
    let y = -x.clone();
    is_square(y.numer()) && is_square(y.denom())
}

fn is_square(n: &num_bigint::BigInt) -> bool {
    let r = n.sqrt();
    &(&r * &r) == n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KimThetaRecord {
    pub n: u64,
    #[serde(rename = "sum_I", serialize_with = "ser_q")]
    pub sum_i: Q,
    #[serde(rename = "sum_E", serialize_with = "ser_q")]
    pub sum_e: Q,
    #[serde(serialize_with = "ser_q")]
    pub lhs: Q,
    pub rhs: i64,
    /// `(91·sum_I + 600·sum_E)/691`.
    #[serde(serialize_with = "ser_q")]
    pub weighted: Q,
    /// `273·σ₁₁(n)/691` (and `1/240` at `n = 0`).
    #[serde(serialize_with = "ser_q")]
    pub eisenstein: Q,
    pub weighted_is_integer: bool,
    pub ok: bool,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    rational::to_json(x).serialize(s)
}

pub fn kim_theta_identity(n: u64) -> Result<KimThetaRecord> {
    kim_theta_identity_with(n, enumeration::run_task)
}

/// As [`kim_theta_identity`], with a custom task runner (e.g. a cache).
pub fn kim_theta_identity_with<F>(n: u64, run: F) -> Result<KimThetaRecord>
where
    F: Fn(&EnumerationTask) -> Result<EnumerationResult>,
{
    let (sum_i, sum_e, rhs, eisenstein) = if n == 0 {
        (qf(1, 240), qf(1, 240), 0, qf(1, 240))
    } else {
        let get = |c| run(&EnumerationTask::JordanRank1PsdPairing { pairing: c, value: n }).map(|r| q(r.aggregate as i64));
        let s11 = num_bigint::BigInt::from(sigma(11, n));
        (
            get(PairingClass::I)?,
            get(PairingClass::E)?,
            3 * ramanujan_tau(n)?,
            Q::new(s11 * 273, num_bigint::BigInt::from(691)),
        )
    };
    let lhs = &sum_i - &sum_e;
    let weighted = (q(91) * &sum_i + q(600) * &sum_e) / q(691);
    let ok = lhs == q(rhs) && weighted == eisenstein;
    Ok(KimThetaRecord {
        n,
        weighted_is_integer: weighted.is_integer(),
        sum_i,
        sum_e,
        lhs,
        rhs,
        weighted,
        eisenstein,
        ok,
    })
}

/// The ε-weighted constant term `(691/91)(91/691)/240 − (691/600)(600/691)/240`.
pub fn epsilon_constant_term() -> Q {
    let c = qf(1, 240);
    qf(691, 91) * qf(91, 691) * &c - qf(691, 600) * qf(600, 691) * &c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        let t = tau_table(6);
        assert_eq!(&t[1..], &[1, -24, 252, -1472, 4830, -6048]);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(4, 2), 17);
        assert_eq!(sigma(3, 2), 9);
        assert_eq!(sigma(3, 12), 1 + 8 + 27 + 64 + 216 + 1728);
    }

    #[test]
    fn frame_round_trip() {
        let row = [1, -2, 0, 3, -1, 1];
        assert_eq!(frame_row(&frame_image(&row)), Some(row));
    }

    #[test]
    fn squares() {
        assert!(is_antihermitian_square(&q(-4)));
        assert!(is_antihermitian_square(&qf(-9, 4)));
        assert!(!is_antihermitian_square(&q(4)));
        assert!(!is_antihermitian_square(&q(-2)));
    }
}
