//! Exact enumeration engines and their serializable task/result records.

mod cache;
mod fiber;
mod kim;
mod sweep;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::composition::AlgebraKind;
use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::integral::{IntJordan, IntW};
use crate::jordan::JordanElement;
use crate::rational::{self, Q};

pub use cache::Cache;
pub use fiber::Omega0;

/// Element lists longer than this are summarized by their content histogram only.
pub const ELEMENT_LIMIT: usize = 20_000;

pub const RESULT_VERSION: u32 = 1;

/// Sorted elements (up to a limit) plus a content histogram.
#[derive(Clone, Debug)]
pub struct Tally<T> {
    pub elements: Vec<T>,
    pub histogram: BTreeMap<u64, u64>,
    pub overflow: bool,
    limit: usize,
}

impl<T: Ord> Tally<T> {
    pub fn new(limit: usize) -> Self {
        Tally { elements: Vec::new(), histogram: BTreeMap::new(), overflow: false, limit }
    }

    pub fn push_with(&mut self, t: T, content: u64) {
        *self.histogram.entry(content).or_insert(0) += 1;
        if self.elements.len() < self.limit {
            self.elements.push(t);
        } else {
            self.overflow = true;
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        self.overflow |= other.overflow;
        self.elements.extend(other.elements);
        if self.elements.len() > self.limit {
            self.elements.truncate(self.limit);
            self.overflow = true;
        }
        self
    }

    pub fn sort(&mut self) {
        self.elements.sort();
    }

    pub fn count(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn aggregate(&self, k: u32) -> u64 {
        histogram_aggregate(&self.histogram, k)
    }
}

impl Tally<IntJordan> {
    pub fn push(&mut self, t: IntJordan) {
        let c = t.content(AlgebraKind::Theta0).expect("enumerated elements lie in J₀");
        self.push_with(t, c);
    }
}

pub fn histogram_aggregate(h: &BTreeMap<u64, u64>, k: u32) -> u64 {
    h.iter().map(|(&c, &n)| n * crate::coefficients::sigma(k, c)).sum()
}

/// The two base points of the weight-12 restriction: `I = 1₃` and `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairingClass {
    I,
    E,
}

impl PairingClass {
    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(PairingClass::I),
            "E" | "e" => Ok(PairingClass::E),
            _ => Err(Error::Parse(format!("unknown pairing class {s}"))),
        }
    }

    pub fn jordan(self) -> JordanElement {
        match self {
            PairingClass::I => JordanElement::identity(AlgebraKind::Theta0),
            PairingClass::E => JordanElement::e_class(),
        }
    }

    pub fn int(self) -> IntJordan {
        IntJordan::from_jordan(&self.jordan()).expect("integral base point")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnumerationTask {
    JordanRank1PsdPairing { pairing: PairingClass, value: u64 },
    OmegaFiber { class: PairingClass, omega0: [String; 4], height: u64 },
    Rank1Sweep { lattice: String, height: u64 },
}

impl EnumerationTask {
    pub fn omega_fiber(class: PairingClass, omega0: &[Q; 4], height: u64) -> Self {
        EnumerationTask::OmegaFiber { class, omega0: omega0.clone().map(|x| rational::to_text(&x)), height }
    }

    pub fn canonical(&self) -> String {
        serde_json::to_value(self).expect("tasks serialize").to_string()
    }

    fn sigma_k(&self) -> u32 {
        match self {
            EnumerationTask::JordanRank1PsdPairing { .. } => 3,
            _ => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub task: EnumerationTask,
    pub count: u64,
    /// Content ↦ number of elements with that content.
    pub histogram: BTreeMap<u64, u64>,
    pub sigma_k: u32,
    pub aggregate: u64,
    /// Sorted element list; `None` when longer than [`ELEMENT_LIMIT`].
    pub elements: Option<Vec<Value>>,
    pub complete: bool,
    pub version: u32,
}

impl EnumerationResult {
    fn build<T: Ord>(task: EnumerationTask, tally: Tally<T>, complete: bool, json: impl Fn(&T) -> Value) -> Self {
        let k = task.sigma_k();
        let elements = (!tally.overflow).then(|| tally.elements.iter().map(json).collect());
        EnumerationResult {
            count: tally.count(),
            aggregate: tally.aggregate(k),
            histogram: tally.histogram,
            sigma_k: k,
            elements,
            complete,
            version: RESULT_VERSION,
            task,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("results serialize")
    }

    /// Histogram totals and, when elements are present, a re-check of every
    /// `stride`-th element against the task predicate.
    pub fn validate(&self, stride: usize) -> Result<bool> {
        if self.count != self.histogram.values().sum::<u64>()
            || self.aggregate != histogram_aggregate(&self.histogram, self.sigma_k)
        {
            return Ok(false);
        }
        let Some(elements) = &self.elements else { return Ok(true) };
        if elements.len() as u64 != self.count {
            return Ok(false);
        }
        for v in elements.iter().step_by(stride.max(1)) {
            if !self.check_element(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_element(&self, v: &Value) -> Result<bool> {
        let theta = AlgebraKind::Theta0;
        Ok(match &self.task {
            EnumerationTask::JordanRank1PsdPairing { pairing, value } => {
                let t = JordanElement::from_json(v, theta)?;
                t.rank() == 1 && t.is_psd() && t.is_integral() && t.pair(&pairing.jordan()) == rational::q(*value as i64)
            }
            EnumerationTask::OmegaFiber { class, omega0, height } => {
                let w = FreudenthalElement::from_json(v, theta)?;
                let target = Omega0::parse(omega0)?;
                w.rank() == 1
                    && w.is_integral()
                    && Omega0::project(*class, &w)? == target
                    && w.height() <= rational::q(*height as i64)
            }
            EnumerationTask::Rank1Sweep { lattice, height } => {
                let kind = AlgebraKind::from_name(lattice)?;
                let w = FreudenthalElement::from_json(v, kind)?;
                w.rank() == 1 && w.is_integral() && w.height() <= rational::q(*height as i64)
            }
        })
    }
}

/// All rank-one PSD `T ∈ J₀` with `(T, K) = n`, for `K ∈ {I, E}`.
pub fn enum_rank1_psd_pairing(class: PairingClass, n: u64) -> Result<EnumerationResult> {
    let tally = kim::enumerate(&class.int(), n, ELEMENT_LIMIT)?;
    let task = EnumerationTask::JordanRank1PsdPairing { pairing: class, value: n };
    Ok(EnumerationResult::build(task, tally, true, |t| t.to_jordan(AlgebraKind::Theta0).to_json()))
}

/// Same enumeration for an arbitrary positive definite `K ∈ J₀`.
pub fn rank1_psd_pairing_tally(k: &JordanElement, n: u64, limit: usize) -> Result<Tally<IntJordan>> {
    let ki = IntJordan::from_jordan(k)
        .filter(|x| x.in_order(AlgebraKind::Theta0))
        .ok_or_else(|| Error::NotIntegral("pairing element outside J₀".into()))?;
    kim::enumerate(&ki, n, limit)
}

/// The fiber `Ω_K(ω₀)` of rank-one `ω ∈ W_{J₀}(ℤ)` with height at most `height`.
pub fn omega_fiber(class: PairingClass, omega0: &[Q; 4], height: u64) -> Result<EnumerationResult> {
    let w0 = Omega0::from_rationals(omega0)?;
    let (tally, complete) = fiber::enumerate(class, &w0, height, ELEMENT_LIMIT)?;
    let task = EnumerationTask::omega_fiber(class, omega0, height);
    Ok(EnumerationResult::build(task, tally, complete, |w: &IntW| w.to_w(AlgebraKind::Theta0).to_json()))
}

/// All rank-one integral `w ∈ W_J(ℤ)` with coordinate sup-norm at most `height`.
pub fn rank1_sweep(kind: AlgebraKind, height: u64) -> Result<EnumerationResult> {
    let elements = sweep::enumerate(kind, height)?;
    let mut tally = Tally::new(ELEMENT_LIMIT);
    for (key, w) in elements {
        let c = w.content()?;
        tally.push_with(SweepEntry(key, w), c);
    }
    tally.sort();
    let task = EnumerationTask::Rank1Sweep { lattice: kind.name().into(), height };
    Ok(EnumerationResult::build(task, tally, true, |e| e.1.to_json()))
}

/// Sweep elements ordered by their lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SweepEntry(Vec<i64>, FreudenthalElement);

impl PartialOrd for SweepEntry {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for SweepEntry {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.cmp(&o.0)
    }
}

pub fn sweep_elements(kind: AlgebraKind, height: u64) -> Result<Vec<FreudenthalElement>> {
    Ok(sweep::enumerate(kind, height)?.into_iter().map(|(_, w)| w).collect())
}

/// Runs a task without consulting any cache.
pub fn run_task(task: &EnumerationTask) -> Result<EnumerationResult> {
    match task {
        EnumerationTask::JordanRank1PsdPairing { pairing, value } => enum_rank1_psd_pairing(*pairing, *value),
        EnumerationTask::OmegaFiber { class, omega0, height } => {
            let w0 = [
                rational::parse(&omega0[0])?,
                rational::parse(&omega0[1])?,
                rational::parse(&omega0[2])?,
                rational::parse(&omega0[3])?,
            ];
            omega_fiber(*class, &w0, *height)
        }
        EnumerationTask::Rank1Sweep { lattice, height } => rank1_sweep(AlgebraKind::from_name(lattice)?, *height),
    }
}

/// Fiber elements as integer Freudenthal elements over Θ₀, for coefficient sums.
pub fn omega_fiber_elements(class: PairingClass, omega0: &[Q; 4], height: u64) -> Result<(Vec<IntW>, bool)> {
    let w0 = Omega0::from_rationals(omega0)?;
    let (tally, complete) = fiber::enumerate(class, &w0, height, usize::MAX)?;
    Ok((tally.elements, complete))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kim_counts() {
        let r = enum_rank1_psd_pairing(PairingClass::I, 1).unwrap();
        assert_eq!((r.count, r.aggregate), (3, 3));
        let r = enum_rank1_psd_pairing(PairingClass::E, 1).unwrap();
        assert_eq!((r.count, r.aggregate), (0, 0));
        let r = enum_rank1_psd_pairing(PairingClass::I, 2).unwrap();
        assert_eq!((r.count, r.aggregate), (723, 747));
        assert!(r.validate(1).unwrap());
    }
}
