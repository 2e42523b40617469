//! Exact-rational intervals and multi-interval representations.
//!
//! Representation JSON:
//!
//! ```text
//! {"vertices":{"0":[["0","3"]],"1":[["1","4"],["6","7"]]}}
//! ```
//!
//! Endpoints are rationals written `p/q` in lowest terms (plain `p` when the
//! denominator is 1). Vertex keys are decimal ids, written in numeric order,
//! and each vertex's intervals are written in ascending order. On input,
//! integers are accepted in place of endpoint strings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::VertexId;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: Q,
    hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Validation(format!("interval [{lo}, {hi}] is empty or a point")));
        }
        Ok(Interval { lo, hi })
    }

    /// Integer endpoints; panics unless `lo < hi`.
    pub fn ints(lo: i64, hi: i64) -> Self {
        Interval::new(q(lo), q(hi)).expect("lo < hi")
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    /// Closed-interval intersection: touching endpoints count.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains(&self, p: &Q) -> bool {
        &self.lo <= p && p <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Open interval `(lo, hi)`, used for displayed portions and sweep cells.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Portion {
    pub lo: Q,
    pub hi: Q,
}

impl Portion {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo < hi);
        Portion { lo, hi }
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / q(2)
    }

    pub fn len(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

impl fmt::Display for Portion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// Each vertex maps to a union of pairwise disjoint closed intervals, kept
/// sorted and merged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Representation {
    vertices: BTreeMap<VertexId, Vec<Interval>>,
}

impl Representation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `iv` to `f(v)`, merging with any interval it meets.
    pub fn insert(&mut self, v: VertexId, iv: Interval) {
        let list = self.vertices.entry(v).or_default();
        let mut merged = iv;
        list.retain(|other| {
            if other.intersects(&merged) {
                let lo = other.lo.clone().min(merged.lo.clone());
                let hi = other.hi.clone().max(merged.hi.clone());
                merged = Interval { lo, hi };
                false
            } else {
                true
            }
        });
        let pos = list.partition_point(|o| o < &merged);
        list.insert(pos, merged);
    }

    pub fn intervals(&self, v: VertexId) -> &[Interval] {
        self.vertices.get(&v).map_or(&[], |l| l.as_slice())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[Interval])> {
        self.vertices.iter().map(|(&v, l)| (v, l.as_slice()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn interval_count(&self) -> usize {
        self.vertices.values().map(Vec::len).sum()
    }

    pub fn max_intervals(&self) -> usize {
        self.vertices.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Removes the `i`-th interval of `v`; the vertex entry is dropped when
    /// it becomes empty.
    pub fn remove_interval(&mut self, v: VertexId, i: usize) -> Option<Interval> {
        let list = self.vertices.get_mut(&v)?;
        if i >= list.len() {
            return None;
        }
        let iv = list.remove(i);
        if list.is_empty() {
            self.vertices.remove(&v);
        }
        Some(iv)
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Option<Vec<Interval>> {
        self.vertices.remove(&v)
    }

    /// Keeps only vertices for which `keep` holds.
    pub fn retain(&mut self, mut keep: impl FnMut(VertexId) -> bool) {
        self.vertices.retain(|&v, _| keep(v));
    }

    /// Restricts to `ids` and renames `ids[i]` to `i`.
    pub fn relabel(&self, ids: &[VertexId]) -> Representation {
        let mut out = Representation::new();
        for (i, &v) in ids.iter().enumerate() {
            if let Some(list) = self.vertices.get(&v) {
                out.vertices.insert(i, list.clone());
            }
        }
        out
    }

    /// Sorted distinct endpoints.
    pub fn endpoints(&self) -> Vec<Q> {
        let mut pts: Vec<Q> = self
            .vertices
            .values()
            .flatten()
            .flat_map(|iv| [iv.lo.clone(), iv.hi.clone()])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Order-preserving remap of the distinct endpoints onto `0, 2, 4, ...`.
    pub fn normalize(&self) -> Representation {
        let pts = self.endpoints();
        let rank = |p: &Q| q(2 * pts.binary_search(p).expect("endpoint") as i64);
        let vertices = self
            .vertices
            .iter()
            .map(|(&v, list)| {
                let list = list.iter().map(|iv| Interval { lo: rank(&iv.lo), hi: rank(&iv.hi) }).collect();
                (v, list)
            })
            .collect();
        Representation { vertices }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"vertices\":{");
        for (k, (v, list)) in self.vertices.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{v}\":["));
            for (j, iv) in list.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format!("[\"{}\",\"{}\"]", iv.lo, iv.hi));
            }
            out.push(']');
        }
        out.push_str("}}\n");
        out
    }

    pub fn from_json(source: &str) -> Result<Representation> {
        let doc: Value = serde_json::from_str(source).map_err(|e| Error::Json(e.to_string()))?;
        let vertices = doc
            .get("vertices")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Json("expected an object with a \"vertices\" map".into()))?;
        let mut rep = Representation::new();
        for (key, list) in vertices {
            let v: VertexId = key
                .parse()
                .map_err(|_| Error::Json(format!("vertex key `{key}` is not a non-negative integer")))?;
            if v >= crate::format::MAX_VERTICES {
                return Err(Error::Validation(format!("vertex id {v} exceeds the supported maximum")));
            }
            let list = list
                .as_array()
                .ok_or_else(|| Error::Json(format!("vertex {v}: expected a list of intervals")))?;
            if list.is_empty() {
                return Err(Error::Validation(format!("vertex {v} has no intervals")));
            }
            for item in list {
                let pair = item
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Json(format!("vertex {v}: interval must be a pair")))?;
                let lo = parse_endpoint(&pair[0])?;
                let hi = parse_endpoint(&pair[1])?;
                let iv = Interval::new(lo, hi).map_err(|e| match e {
                    Error::Validation(m) => Error::Validation(format!("vertex {v}: {m}")),
                    other => other,
                })?;
                rep.insert(v, iv);
            }
        }
        Ok(rep)
    }
}

fn parse_endpoint(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(q)
            .ok_or_else(|| Error::Json(format!("endpoint {n} is not an integer; write it as \"p/q\""))),
        other => Err(Error::Json(format!("endpoint {other} is not a rational string"))),
    }
}

/// Parses `p`, `-p`, `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Json(format!("`{s}` is not a rational"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let digits = |t: &str, signed: bool| {
        let body = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !body.is_empty() && body.len() <= 4096 && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Whether `p` is an integer (used by rendering and tests).
pub fn is_integer(p: &Q) -> bool {
    p.denom().is_one()
}
