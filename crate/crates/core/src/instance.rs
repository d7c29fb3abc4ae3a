//! The problem model: parameters (m, s, h), the circular-shift side
//! information sets, the network topology hypergraph, and 1-factor detection.
//!
//! Message and user indices are 1-based in the public API, matching the usual
//! presentation of the problem; internal bit masks are 0-based. A modulo
//! result of 0 maps back to m.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::MAX_DIM;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A private pliable index coding instance with size-s circular-h shift side
/// information: user i holds the s consecutive messages starting at
/// (i−1)h + 1, indices wrapped modulo m into [1..m].
///
/// Serializes as `{"m":…, "s":…, "h":…}`; the derived g and n are recomputed
/// on load and never trusted from the file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    m: usize,
    s: usize,
    h: usize,
    g: usize,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    m: usize,
    s: usize,
    h: usize,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Instance> {
        Instance::new(raw.m, raw.s, raw.h)
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> RawInstance {
        RawInstance { m: inst.m, s: inst.s, h: inst.h }
    }
}

impl Instance {
    /// Requires m ≥ 2, 0 ≤ s ≤ m−1, h ≥ 1, and m ≤ 64 (one machine word per
    /// code row).
    pub fn new(m: usize, s: usize, h: usize) -> Result<Instance> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
        }
        if m > MAX_DIM {
            return Err(Error::InvalidParams(format!("m must be at most {MAX_DIM}, got {m}")));
        }
        if s > m - 1 {
            return Err(Error::InvalidParams(format!("s must be in [0..m-1] = [0..{}], got {s}", m - 1)));
        }
        if h < 1 {
            return Err(Error::InvalidParams("h must be at least 1".into()));
        }
        let g = gcd(m, h);
        Ok(Instance { m, s, h, g, n: m / g })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// gcd(m, h).
    pub fn g(&self) -> usize {
        self.g
    }

    /// Number of distinct users, m/g.
    pub fn n(&self) -> usize {
        self.n
    }

    fn check_user(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.n {
            return Err(Error::UserOutOfRange { user: i, n: self.n });
        }
        Ok(())
    }

    /// Side information of user i as 1-based message indices.
    pub fn side_info(&self, i: usize) -> Result<BTreeSet<usize>> {
        self.check_user(i)?;
        let start = (i - 1) * self.h;
        Ok((0..self.s).map(|t| (start + t) % self.m + 1).collect())
    }

    /// Side information of user i as a 0-based bit mask (bit j−1 for message j).
    pub fn side_mask(&self, i: usize) -> Result<u64> {
        self.check_user(i)?;
        let start = (i - 1) * self.h;
        let mut mask = 0u64;
        for t in 0..self.s {
            mask |= 1 << ((start + t) % self.m);
        }
        Ok(mask)
    }

    /// Side masks for all users, indexed by user−1.
    pub fn side_masks(&self) -> Vec<u64> {
        (1..=self.n).map(|i| self.side_mask(i).unwrap()).collect()
    }

    pub fn nth(&self) -> Nth {
        Nth::build(self)
    }
}

/// The network topology hypergraph: users are vertices, messages are
/// hyperedges, and user i is incident to message j exactly when j is absent
/// from its side information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nth {
    n: usize,
    m: usize,
    /// incidence[j−1] = bit mask of users (bit i−1) missing message j.
    incidence: Vec<u64>,
}

impl Nth {
    pub fn build(inst: &Instance) -> Nth {
        let side = inst.side_masks();
        let incidence = (0..inst.m())
            .map(|j| {
                let mut users = 0u64;
                for (u, mask) in side.iter().enumerate() {
                    if (mask >> j) & 1 == 0 {
                        users |= 1 << u;
                    }
                }
                users
            })
            .collect();
        Nth { n: inst.n(), m: inst.m(), incidence }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Users incident to message j (1-based on both sides).
    pub fn incidence(&self, j: usize) -> BTreeSet<usize> {
        assert!(j >= 1 && j <= self.m, "message index {j} out of range");
        let mask = self.incidence[j - 1];
        (1..=self.n).filter(|&i| (mask >> (i - 1)) & 1 == 1).collect()
    }

    pub fn incidence_mask(&self, j: usize) -> u64 {
        assert!(j >= 1 && j <= self.m);
        self.incidence[j - 1]
    }

    /// Whether some set of hyperedges covers every vertex exactly once.
    pub fn has_one_factor(&self) -> bool {
        self.find_one_factor().is_some()
    }

    /// A witness 1-factor, found by depth-first exact cover: always extend at
    /// the lowest-index uncovered user, trying messages in ascending order.
    /// The deterministic order fixes the witness.
    pub fn find_one_factor(&self) -> Option<Vec<usize>> {
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut chosen = Vec::new();
        if self.cover(0, all, &mut chosen) {
            chosen.sort_unstable();
            Some(chosen)
        } else {
            None
        }
    }

    fn cover(&self, covered: u64, all: u64, chosen: &mut Vec<usize>) -> bool {
        if covered == all {
            return true;
        }
        let lowest = (!covered & all).trailing_zeros() as u64;
        let user_bit = 1u64 << lowest;
        for (idx, &inc) in self.incidence.iter().enumerate() {
            if inc & user_bit != 0 && inc & covered == 0 {
                chosen.push(idx + 1);
                if self.cover(covered | inc, all, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// A desired-message assignment: user i must decode exactly message
/// desired[i], which must lie outside its side information.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    pub desired: BTreeMap<usize, usize>,
}

impl Assignment {
    pub fn new(desired: BTreeMap<usize, usize>) -> Assignment {
        Assignment { desired }
    }

    pub fn get(&self, user: usize) -> Option<usize> {
        self.desired.get(&user).copied()
    }

    /// Check coverage of all users and the d_i ∉ A_i constraint.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        for i in 1..=inst.n() {
            let Some(d) = self.get(i) else {
                return Err(Error::InvalidParams(format!("assignment missing user {i}")));
            };
            if d < 1 || d > inst.m() {
                return Err(Error::InvalidParams(format!("desired message {d} out of range for user {i}")));
            }
            if inst.side_info(i)?.contains(&d) {
                return Err(Error::InvalidParams(format!(
                    "user {i} already holds its assigned message {d}"
                )));
            }
        }
        Ok(())
    }
}
