//! The acceptance suite run by `freudenthal suite acceptance`.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::archimedean::{
    a_factor, basis_matrix, f0_quadrature, f0_special, intertwiner_ratio, kbessel, poly_identity_check,
    EXPECTED_BASIS_MATRIX,
};
use crate::coefficients::{
    a_theta, e6_pullback_coeff, e7_pullback_coeff, is_antihermitian_square, kim_coeff, kim_theta_identity_with,
    ramanujan_tau, sigma,
};
use crate::composition::{count_norm, AlgebraKind, CompositionElement};
use crate::embeddings::{tits_embed, TitsSplitElement};
use crate::enumeration::{Cache, EnumerationTask, PairingClass};
use crate::error::Result;
use crate::freudenthal::FreudenthalElement;
use crate::integral::IntW;
use crate::jordan::{scalar_tail, JordanElement};
use crate::rational::{q, qf, Q};

/// Height bound for the pullback sums.
pub const PULLBACK_HEIGHT: u64 = 6;
/// Height bound for the singleton fibers.
pub const FIBER_HEIGHT: u64 = 10;
pub const DEFAULT_SEED: u64 = 7;

pub const F0_TOLERANCE: f64 = 1e-8;
pub const BESSEL_TOLERANCE: f64 = 1e-9;
pub const RATIO_TOLERANCE: f64 = 1e-6;

pub const BESSEL_ORDERS: std::ops::RangeInclusive<i32> = -12..=12;
pub const BESSEL_ARGS: [f64; 10] = [0.1, 0.25, 0.5, 1.0, 2.0, 2.0 * std::f64::consts::PI, 10.0, 20.0, 35.0, 50.0];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub fast: bool,
    pub seed: u64,
    pub cache: Option<Cache>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { fast: false, seed: DEFAULT_SEED, cache: None }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub time_limit: f64,
    pub detail: Value,
}

impl CriterionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "passed": self.passed,
            "seconds": self.seconds,
            "time_limit": self.time_limit,
            "detail": self.detail,
        })
    }
}

type Check = fn(&SuiteOptions) -> Result<(bool, Value)>;

const CRITERIA: [(u32, &str, f64, Check); 10] = [
    (1, "octonion theta counts", 10.0, theta_counts),
    (2, "Kim restriction and Ramanujan tau", 300.0, kim_identity),
    (3, "singleton fibers", 120.0, singleton_fibers),
    (4, "singular E7 pullback", 300.0, e7_singular),
    (5, "distinguished E6 pullback", 300.0, e6_distinguished),
    (6, "generating-series identity", 1.0, generating_series),
    (7, "intertwiner data", 60.0, intertwiner),
    (8, "archimedean agreement", 60.0, archimedean_agreement),
    (9, "algebraic identities", 60.0, algebraic_identities),
    (10, "structural coefficients", 10.0, structural),
];

pub fn run_acceptance(opts: &SuiteOptions) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, title, limit, check)| run_one(id, title, limit, check, opts)).collect()
}

pub fn run_criterion(id: u32, opts: &SuiteOptions) -> Option<CriterionReport> {
    CRITERIA.iter().find(|c| c.0 == id).map(|&(id, title, limit, check)| run_one(id, title, limit, check, opts))
}

fn run_one(id: u32, title: &'static str, limit: f64, check: Check, opts: &SuiteOptions) -> CriterionReport {
    let start = Instant::now();
    let (ok, detail) = match check(opts) {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    let seconds = start.elapsed().as_secs_f64();
    CriterionReport { id, title, passed: ok && seconds < limit, seconds, time_limit: limit, detail }
}

fn theta_counts(opts: &SuiteOptions) -> Result<(bool, Value)> {
    let top = if opts.fast { 5 } else { 10 };
    let rows: Vec<(u64, usize, u64)> =
        (1..=top).map(|m| (m, count_norm(AlgebraKind::Theta0, m), 240 * sigma(3, m))).collect();
    let ok = rows.iter().all(|&(_, c, e)| c as u64 == e);
    Ok((ok, json!({ "counts": rows })))
}

fn kim_identity(opts: &SuiteOptions) -> Result<(bool, Value)> {
    let top = if opts.fast { 2 } else { 4 };
    let run = |t: &EnumerationTask| match &opts.cache {
        Some(c) => c.run(t),
        None => crate::enumeration::run_task(t),
    };
    let expected = [(3, 0), (747, 819)];
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 1..=top {
        let r = kim_theta_identity_with(n, run)?;
        ok &= r.ok && r.rhs == 3 * ramanujan_tau(n)?;
        if let Some(&(i, e)) = expected.get(n as usize - 1) {
            ok &= r.sum_i == q(i) && r.sum_e == q(e);
        }
        rows.push(serde_json::to_value(&r).expect("records serialize"));
    }
    Ok((ok, Value::Array(rows)))
}

fn singleton_fibers(opts: &SuiteOptions) -> Result<(bool, Value)> {
    let height = if opts.fast { 4 } else { FIBER_HEIGHT };
    let mut ok = true;
    let mut rows = Vec::new();
    for w0 in [[q(1), q(0), q(0), q(0)], [q(0), q(0), q(0), q(1)]] {
        for class in [PairingClass::I, PairingClass::E] {
            let r = crate::enumeration::omega_fiber(class, &w0, height)?;
            let expect = FreudenthalElement::scalars(AlgebraKind::Theta0, w0[0].clone(), q(0), q(0), w0[3].clone());
            let single = r.count == 1 && r.elements.as_ref().is_some_and(|e| e == &vec![expect.to_json()]);
            ok &= single;
            rows.push(json!({ "class": format!("{class:?}"), "omega0": [w0[0].to_string(), "0", "0", w0[3].to_string()], "count": r.count, "complete": r.complete }));
        }
    }
    Ok((ok, json!({ "height": height, "fibers": rows })))
}

fn small_jordan(rng: &mut ChaCha8Rng, kind: AlgebraKind) -> JordanElement {
    let d = [q(rng.gen_range(-1..=1)), q(rng.gen_range(-1..=1)), q(rng.gen_range(-1..=1))];
    let off = std::array::from_fn(|_| {
        let mut c = vec![0i64; kind.dim()];
        if rng.gen_bool(0.5) {
            c[rng.gen_range(0..kind.dim())] = rng.gen_range(-1..=1);
        }
        CompositionElement::from_ints(kind, &c).expect("integer coordinates")
    });
    JordanElement::new(d, off).expect("same algebra")
}

fn small_w(rng: &mut ChaCha8Rng, kind: AlgebraKind) -> FreudenthalElement {
    let a = q(rng.gen_range(-1..=1));
    let b = small_jordan(rng, kind);
    let c = small_jordan(rng, kind);
    FreudenthalElement::new(a, b, c, q(rng.gen_range(-1..=1))).expect("same algebra")
}

/// Norm targets of the tail entries forced by the rank-one diagonal conditions.
fn tail_targets(w: &FreudenthalElement) -> Vec<Q> {
    let (bs, cs) = (w.b.adjoint(), w.c.adjoint());
    let tb = (0..3).map(|i| &bs.diag()[i] - &w.a * &w.c.diag()[i]);
    let tc = (0..3).map(|i| &cs.diag()[i] - &w.d * &w.b.diag()[i]);
    tb.chain(tc).collect()
}

/// Whether the tail search is non-empty and small: targets in `[0, 3]`, not all zero.
fn nontrivial_targets(w: &FreudenthalElement) -> bool {
    let t = tail_targets(w);
    t.iter().all(|x| x >= &q(0) && x <= &q(3)) && t.iter().any(|x| !x.is_zero())
}

/// Rank-3/4 elements of `W_{H₃(B)}(ℤ)` whose tail searches are non-empty.
pub fn e7_samples(count: usize, seed: u64) -> Vec<FreudenthalElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let w = small_w(&mut rng, AlgebraKind::Hurwitz);
        if w.rank() >= 3 && nontrivial_targets(&w) {
            out.push(w);
        }
    }
    out
}

/// Rank-4 elements of `W_{H₃(ℤ[i])}(ℤ)` whose quartic is not `κ²` with `κ* = −κ`.
pub fn e6_samples(count: usize, seed: u64) -> Vec<FreudenthalElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let w = small_w(&mut rng, AlgebraKind::Gauss);
        if w.rank() == 4 && !is_antihermitian_square(&w.quartic()) && nontrivial_targets(&w) {
            out.push(w);
        }
    }
    out
}

/// `(0, diag(1, 1, 0), 0, 0)` over the Hurwitz order: rank two.
pub fn e7_rank_two_witness() -> FreudenthalElement {
    let b = JordanElement::diag_ints(AlgebraKind::Hurwitz, 1, 1, 0);
    FreudenthalElement::new(q(0), b, JordanElement::zero(AlgebraKind::Hurwitz), q(0)).expect("same algebra")
}

/// `(0, 1, 0, −1)` over `ℚ(i)`, so `κ = 2i`.
pub fn e6_witness() -> FreudenthalElement {
    FreudenthalElement::ints(AlgebraKind::Gauss, 0, 1, 0, -1)
}

/// The rank-one preimage `ω + η` with tails `1` and `−κ/2` on the two Jordan slots.
pub fn e6_witness_preimage() -> Result<FreudenthalElement> {
    let k = AlgebraKind::Gauss;
    let kappa_half = CompositionElement::from_ints(k, &[0, 1])?;
    let eta = [scalar_tail(&CompositionElement::one(k)), scalar_tail(&kappa_half.scale(&q(-1)))];
    tits_embed(&TitsSplitElement::new(e6_witness(), eta)?)
}

fn e7_singular(opts: &SuiteOptions) -> Result<(bool, Value)> {
    let n = if opts.fast { 5 } else { 20 };
    let mut ok = true;
    let mut rows = Vec::new();
    for w in e7_samples(n, opts.seed) {
        let v = e7_pullback_coeff(&w, PULLBACK_HEIGHT)?;
        ok &= v.value == 0;
        rows.push(json!({ "x": w.to_json(), "rank": w.rank(), "value": v.value, "complete": v.complete }));
    }
    let base = e7_pullback_coeff(&FreudenthalElement::ints(AlgebraKind::Hurwitz, 0, 0, 0, 1), PULLBACK_HEIGHT)?;
    let two = e7_rank_two_witness();
    let tv = e7_pullback_coeff(&two, PULLBACK_HEIGHT)?;
    ok &= base.value > 0 && tv.value > 0 && two.rank() == 2;
    Ok((
        ok,
        json!({
            "height": PULLBACK_HEIGHT,
            "samples": rows,
            "base_point": base.to_json(false),
            "rank_two": { "x": two.to_json(), "rank": two.rank(), "value": tv.to_json(false) },
        }),
    ))
}

fn e6_distinguished(opts: &SuiteOptions) -> Result<(bool, Value)> {
    let n = if opts.fast { 4 } else { 10 };
    let w = e6_witness();
    let v = e6_pullback_coeff(&w, PULLBACK_HEIGHT)?;
    let pre = IntW::from_w(&e6_witness_preimage()?);
    let has_pre = pre.is_some_and(|p| v.witnesses.contains(&p));
    let mut ok = w.rank() == 4 && v.value >= 1 && has_pre;
    let mut rows = Vec::new();
    for s in e6_samples(n, opts.seed) {
        let r = e6_pullback_coeff(&s, PULLBACK_HEIGHT)?;
        ok &= r.value == 0;
        rows.push(json!({ "omega": s.to_json(), "quartic": s.quartic().to_string(), "value": r.value, "complete": r.complete }));
    }
    Ok((
        ok,
        json!({
            "height": PULLBACK_HEIGHT,
            "witness": { "omega": w.to_json(), "quartic": w.quartic().to_string(), "value": v.value, "preimage_found": has_pre },
            "samples": rows,
        }),
    ))
}

fn generating_series(_: &SuiteOptions) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in [2, 4, 6, 8, 10] {
        let r = poly_identity_check(n)?;
        ok &= r;
        rows.push(json!({ "n": n, "holds": r }));
    }
    Ok((ok, Value::Array(rows)))
}

fn intertwiner(_: &SuiteOptions) -> Result<(bool, Value)> {
    let zeros: Vec<(i64, bool)> = [5, 3, 12].iter().map(|&s| (s, a_factor(&q(s)).is_ok_and(|a| a.is_zero()))).collect();
    let matrix = basis_matrix()?;
    let points = [qf(21, 2), qf(53, 4), q(18)];
    let ratios = points.iter().map(intertwiner_ratio).collect::<Result<Vec<_>>>()?;
    let reference = ratios[0].coeff;
    let spread = ratios.iter().map(|r| (r.coeff / reference - 1.0).abs()).fold(0.0, f64::max);
    let ok = zeros.iter().all(|z| z.1)
        && matrix == EXPECTED_BASIS_MATRIX
        && ratios.iter().all(|r| r.order == 0)
        && spread <= RATIO_TOLERANCE;
    Ok((
        ok,
        json!({
            "A_zeros": zeros,
            "matrix": matrix,
            "ratios": ratios.iter().zip(&points).map(|(r, s)| json!({ "s": s.to_string(), "coeff": r.coeff, "order": r.order })).collect::<Vec<_>>(),
            "max_relative_spread": spread,
            "tolerance": RATIO_TOLERANCE,
        }),
    ))
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn archimedean_agreement(_: &SuiteOptions) -> Result<(bool, Value)> {
    let mut f0 = Vec::new();
    let mut worst_f0: f64 = 0.0;
    for n in [2, 4, 6] {
        let closed = f0_special(n)?.scalar.value();
        let quad = f0_quadrature(n)?;
        let e = relative(closed, quad);
        worst_f0 = worst_f0.max(e);
        f0.push(json!({ "n": n, "closed": closed, "quadrature": quad, "relative": e }));
    }
    let mut worst_rec: f64 = 0.0;
    let mut worst_sym: f64 = 0.0;
    for y in BESSEL_ARGS {
        for v in BESSEL_ORDERS {
            let k = |v: i32| kbessel(v as f64, y);
            worst_sym = worst_sym.max(relative(k(v)?, k(-v)?));
            if v.abs() < *BESSEL_ORDERS.end() {
                let lhs = k(v + 1)? - k(v - 1)?;
                let rhs = 2.0 * v as f64 / y * k(v)?;
                let scale = k(v + 1)?.abs().max(k(v - 1)?.abs());
                worst_rec = worst_rec.max((lhs - rhs).abs() / scale);
            }
        }
    }
    let ok = worst_f0 <= F0_TOLERANCE && worst_rec <= BESSEL_TOLERANCE && worst_sym <= BESSEL_TOLERANCE;
    Ok((
        ok,
        json!({
            "f0": f0,
            "f0_tolerance": F0_TOLERANCE,
            "bessel_recurrence": worst_rec,
            "bessel_symmetry": worst_sym,
            "bessel_tolerance": BESSEL_TOLERANCE,
        }),
    ))
}

fn random_composition(rng: &mut ChaCha8Rng, kind: AlgebraKind, r: i64) -> CompositionElement {
    let c: Vec<i64> = (0..kind.dim()).map(|_| rng.gen_range(-r..=r)).collect();
    CompositionElement::from_order_coords(kind, &c).expect("dimension matches")
}

fn random_jordan(rng: &mut ChaCha8Rng, kind: AlgebraKind, r: i64) -> JordanElement {
    let d = [q(rng.gen_range(-r..=r)), q(rng.gen_range(-r..=r)), q(rng.gen_range(-r..=r))];
    JordanElement::new(d, std::array::from_fn(|_| random_composition(rng, kind, r))).expect("same algebra")
}

/// `(a, b, c, d)` with `c = b^#/a`, `d = N(b)/a²`: rank one whenever nonzero.
fn rank_one_from(a: &Q, b: &JordanElement) -> FreudenthalElement {
    FreudenthalElement::new(a.clone(), b.clone(), b.adjoint().scale(&(q(1) / a)), b.norm() / (a * a)).expect("same algebra")
}

/// Rank chain: `rank ≤ 1 ⇒ ♭ = 0 ⇒ q = 0`, with each step strict at the reported rank.
fn chain_consistent(w: &FreudenthalElement) -> bool {
    let flat_zero = w.wflat().is_zero();
    let q_zero = w.quartic().is_zero();
    match w.rank() {
        0 => w.is_zero(),
        1 => w.is_rank_at_most_one() && flat_zero && q_zero,
        2 => !w.is_rank_at_most_one() && flat_zero && q_zero,
        3 => !flat_zero && q_zero,
        _ => !q_zero,
    }
}

fn jordan_chain_consistent(x: &JordanElement) -> bool {
    match x.rank() {
        0 => x.is_zero(),
        1 => x.adjoint().is_zero(),
        2 => !x.adjoint().is_zero() && x.norm().is_zero(),
        _ => !x.norm().is_zero(),
    }
}

fn algebraic_identities(opts: &SuiteOptions) -> Result<(bool, Value)> {
    let n = if opts.fast { 100 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut ok = true;
    let mut rows = Vec::new();
    for kind in AlgebraKind::ALL {
        let mut failures = [0u32; 4];
        let mut ranks = [0u32; 5];
        for i in 0..n {
            let x = random_jordan(&mut rng, kind, 2);
            let nx = x.norm();
            failures[0] += (x.adjoint().adjoint() != x.scale(&nx)) as u32;
            failures[1] += (x.pair(&x.adjoint()) != q(3) * &nx) as u32;
            let (u, v) = (random_composition(&mut rng, kind, 3), random_composition(&mut rng, kind, 3));
            failures[2] += (u.mul(&v)?.norm() != u.norm() * v.norm()) as u32;
            // Alternate generic elements with rank-one and low-rank constructions.
            let w = match i % 4 {
                0 => FreudenthalElement::new(q(rng.gen_range(-2..=2)), x.clone(), random_jordan(&mut rng, kind, 1), q(rng.gen_range(-2..=2)))?,
                1 => rank_one_from(&q(rng.gen_range(1..=2)), &x),
                2 => FreudenthalElement::new(q(0), x.clone(), JordanElement::zero(kind), q(0))?,
                _ => rank_one_from(&q(1), &x).add(&rank_one_from(&q(-1), &random_jordan(&mut rng, kind, 1)))?,
            };
            ranks[w.rank() as usize] += 1;
            failures[3] += (!chain_consistent(&w) || !jordan_chain_consistent(&x)) as u32;
        }
        ok &= failures.iter().all(|&f| f == 0);
        rows.push(json!({
            "algebra": kind.name(),
            "samples": n,
            "adjoint_squared": failures[0],
            "norm_pairing": failures[1],
            "composition": failures[2],
            "rank_chain": failures[3],
            "w_rank_histogram": ranks,
        }));
    }
    Ok((ok, Value::Array(rows)))
}

fn structural(_: &SuiteOptions) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for k in 1..=6 {
        let v = a_theta(&FreudenthalElement::ints(AlgebraKind::Theta0, 0, 0, 0, k))?;
        ok &= v == sigma(4, k as u64);
        rows.push(json!({ "k": k, "a_theta": v }));
    }
    let c0 = kim_coeff(&JordanElement::zero(AlgebraKind::Theta0))?;
    let c11 = kim_coeff(&JordanElement::idempotent(AlgebraKind::Theta0, 0))?;
    ok &= c0 == qf(1, 240) && c11 == q(1);
    Ok((ok, json!({ "a_theta": rows, "kim_constant": c0.to_string(), "kim_e11": c11.to_string() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_deterministic() {
        assert_eq!(e7_samples(3, 1), e7_samples(3, 1));
        assert!(e6_samples(2, 1).iter().all(|w| w.rank() == 4));
    }

    #[test]
    fn witnesses() {
        assert_eq!(e7_rank_two_witness().rank(), 2);
        let p = e6_witness_preimage().unwrap();
        assert_eq!(p.rank(), 1);
    }

    #[test]
    fn fast_cheap_criteria() {
        let opts = SuiteOptions { fast: true, ..Default::default() };
        for id in [1, 6, 7, 10] {
            let r = run_criterion(id, &opts).unwrap();
            assert!(r.passed, "{}", r.to_json());
        }
    }
}
