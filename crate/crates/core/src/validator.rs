//! Decides validity of a code: each user must be able to decode exactly one
//! message outside its side information, and nothing more.
//!
//! Two independent routes are provided. For linear codes the span criterion
//! is exact: user i can decode message j iff the row space contains a vector
//! supported inside A_i ∪ {j} with a nonzero j-th coordinate. For arbitrary
//! encoders with one-bit messages, a full truth-table pass decides the same
//! question as zero conditional entropy, and reports exact per-message
//! conditional entropies.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{rref_words, BitMatrix};
use crate::instance::{Assignment, Instance};

/// Overall classification of a code against one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Valid,
    DecodeFailure,
    PrivacyViolation,
}

/// Per-user decodable sets and the resulting classification.
///
/// Both failure lists are always populated; when both kinds occur the status
/// reports `DecodeFailure` (fixed precedence, for determinism).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub per_user_decodable: BTreeMap<usize, BTreeSet<usize>>,
    /// Users whose decodable set is empty.
    pub decode_failure_users: Vec<usize>,
    /// Users who can decode two or more messages (or, in strict exhaustive
    /// mode, suffer partial leakage).
    pub privacy_violation_users: Vec<usize>,
    /// Present iff the code is valid: each user mapped to its unique message.
    pub induced_assignment: Option<Assignment>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.status == VerdictStatus::Valid
    }

    fn from_decodable(per_user: Vec<BTreeSet<usize>>, extra_privacy: &[usize]) -> Verdict {
        let mut decode_failure_users = Vec::new();
        let mut privacy_violation_users = Vec::new();
        for (idx, set) in per_user.iter().enumerate() {
            if set.is_empty() {
                decode_failure_users.push(idx + 1);
            } else if set.len() >= 2 {
                privacy_violation_users.push(idx + 1);
            }
        }
        for &u in extra_privacy {
            if !privacy_violation_users.contains(&u) {
                privacy_violation_users.push(u);
            }
        }
        privacy_violation_users.sort_unstable();

        let status = if !decode_failure_users.is_empty() {
            VerdictStatus::DecodeFailure
        } else if !privacy_violation_users.is_empty() {
            VerdictStatus::PrivacyViolation
        } else {
            VerdictStatus::Valid
        };
        let induced_assignment = (status == VerdictStatus::Valid).then(|| {
            Assignment::new(
                per_user
                    .iter()
                    .enumerate()
                    .map(|(idx, set)| (idx + 1, *set.first().unwrap()))
                    .collect(),
            )
        });
        Verdict {
            status,
            per_user_decodable: per_user.into_iter().enumerate().map(|(i, s)| (i + 1, s)).collect(),
            decode_failure_users,
            privacy_violation_users,
            induced_assignment,
        }
    }
}

fn check_cols(generator: &BitMatrix, inst: &Instance) -> Result<()> {
    if generator.cols() != inst.m() {
        return Err(Error::DimensionMismatch { expected: inst.m(), got: generator.cols() });
    }
    Ok(())
}

/// Messages user i can decode from a linear code: exactly the j outside its
/// side information for which a row-space vector supported in A_i ∪ {j} has
/// bit j set.
pub fn decodable_set_linear(
    generator: &BitMatrix,
    inst: &Instance,
    user: usize,
) -> Result<BTreeSet<usize>> {
    check_cols(generator, inst)?;
    let allowed = inst.side_mask(user)?;
    let mut out = BTreeSet::new();
    for j in 1..=inst.m() {
        if (allowed >> (j - 1)) & 1 == 1 {
            continue;
        }
        if generator.span_vector_with_support_mask(allowed, j - 1).is_some() {
            out.insert(j);
        }
    }
    Ok(out)
}

/// 0-based mask of decodable messages for one user, written into `scratch`
/// to avoid per-call allocation. Zero the side-information columns, reduce,
/// and read off the weight-one rows: e_j survives in the projected row space
/// exactly when user `side_mask` can decode message j.
pub(crate) fn decodable_mask_fast(scratch: &mut Vec<u64>, rows: &[u64], cols: usize, side_mask: u64) -> u64 {
    scratch.clear();
    scratch.extend(rows.iter().map(|&w| w & !side_mask));
    let rank = rref_words(scratch, cols);
    let mut mask = 0u64;
    for &w in scratch.iter().take(rank) {
        if w.count_ones() == 1 {
            mask |= w;
        }
    }
    mask
}

/// Decodable count per user with early exit; the hot path of the oracle.
pub(crate) fn is_valid_fast(scratch: &mut Vec<u64>, rows: &[u64], cols: usize, side_masks: &[u64]) -> bool {
    side_masks
        .iter()
        .all(|&a| decodable_mask_fast(scratch, rows, cols, a).count_ones() == 1)
}

/// Full verdict for a linear code.
pub fn validate_linear(generator: &BitMatrix, inst: &Instance) -> Result<Verdict> {
    check_cols(generator, inst)?;
    let per_user = (1..=inst.n())
        .map(|i| decodable_set_linear(generator, inst, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_decodable(per_user, &[]))
}

/// Caps for the exhaustive truth-table routes.
pub const MAX_TABLE_M: usize = 24;
pub const MAX_ENTROPY_M: usize = 20;

/// An arbitrary (possibly nonlinear) encoder of m one-bit messages into ell
/// output bits, tabulated over all 2^m message tuples. Message tuple w is the
/// index whose bit j−1 is message j; codewords are packed the same way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderTable {
    m: usize,
    ell: usize,
    table: Vec<u64>,
}

impl EncoderTable {
    pub fn from_fn(m: usize, ell: usize, f: impl Fn(u64) -> u64) -> Result<EncoderTable> {
        if m > MAX_TABLE_M {
            return Err(Error::CapExceeded { what: "encoder table construction", cap: MAX_TABLE_M, got: m });
        }
        assert!(ell <= 64, "codeword must fit one word");
        let table = (0..1u64 << m).map(f).collect();
        Ok(EncoderTable { m, ell, table })
    }

    /// Truth table of the linear encoder x = E·w.
    pub fn from_matrix(generator: &BitMatrix) -> Result<EncoderTable> {
        let rows: Vec<u64> = generator.row_words().to_vec();
        EncoderTable::from_fn(generator.cols(), rows.len(), move |w| {
            rows.iter()
                .enumerate()
                .fold(0u64, |acc, (k, &r)| acc | u64::from((r & w).count_ones() & 1) << k)
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn encode(&self, w: u64) -> u64 {
        self.table[w as usize]
    }
}

/// Messages that are a deterministic function of user i's observation
/// (codeword plus side information) for every message realization — i.e.
/// zero conditional entropy. Partial leakage does not count as decoding.
pub fn decodable_set_exhaustive(
    enc: &EncoderTable,
    inst: &Instance,
    user: usize,
) -> Result<BTreeSet<usize>> {
    if enc.m != inst.m() {
        return Err(Error::DimensionMismatch { expected: inst.m(), got: enc.m });
    }
    let amask = inst.side_mask(user)?;
    // For each observation fiber keep AND and OR of the message tuples; a
    // message bit is fiber-constant iff the two agree there.
    let mut fibers: HashMap<(u64, u64), (u64, u64)> = HashMap::new();
    for w in 0..1u64 << enc.m {
        let key = (enc.table[w as usize], w & amask);
        let e = fibers.entry(key).or_insert((u64::MAX, 0));
        e.0 &= w;
        e.1 |= w;
    }
    let varying = fibers.values().fold(0u64, |acc, &(and, or)| acc | (and ^ or));
    Ok((1..=inst.m())
        .filter(|&j| (amask >> (j - 1)) & 1 == 0 && (varying >> (j - 1)) & 1 == 0)
        .collect())
}

/// Exact conditional entropy of every non-side-information message given each
/// user's observation, in bits, under uniform messages. A code meets the
/// privacy constraint exactly when every non-desired entry is 1.0.
pub fn privacy_entropy_report(
    enc: &EncoderTable,
    inst: &Instance,
) -> Result<BTreeMap<(usize, usize), f64>> {
    if enc.m != inst.m() {
        return Err(Error::DimensionMismatch { expected: inst.m(), got: enc.m });
    }
    if enc.m > MAX_ENTROPY_M {
        return Err(Error::CapExceeded { what: "entropy report", cap: MAX_ENTROPY_M, got: enc.m });
    }
    let total = 1u64 << enc.m;
    let mut report = BTreeMap::new();
    for user in 1..=inst.n() {
        let amask = inst.side_mask(user)?;
        // Index the observation fibers once, then tally each message.
        let mut key_index: HashMap<(u64, u64), u32> = HashMap::new();
        let mut fiber_of = vec![0u32; total as usize];
        for w in 0..total {
            let key = (enc.table[w as usize], w & amask);
            let next = key_index.len() as u32;
            fiber_of[w as usize] = *key_index.entry(key).or_insert(next);
        }
        let mut sizes = vec![0u64; key_index.len()];
        for &f in &fiber_of {
            sizes[f as usize] += 1;
        }
        for j in 1..=inst.m() {
            if (amask >> (j - 1)) & 1 == 1 {
                continue;
            }
            let mut ones = vec![0u64; key_index.len()];
            for w in 0..total {
                ones[fiber_of[w as usize] as usize] += (w >> (j - 1)) & 1;
            }
            let h: f64 = sizes
                .iter()
                .zip(&ones)
                .map(|(&n, &c)| (n as f64 / total as f64) * binary_entropy(c as f64 / n as f64))
                .sum();
            report.insert((user, j), h);
        }
    }
    Ok(report)
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

/// Verdict for an arbitrary tabulated encoder.
///
/// In strict mode (the default for the command-line surface) a user also
/// violates privacy when some message outside its side information and its
/// decodable set has conditional entropy below one full bit — partial
/// leakage that a linear code can never produce.
pub fn validate_exhaustive(enc: &EncoderTable, inst: &Instance, strict: bool) -> Result<Verdict> {
    let per_user = (1..=inst.n())
        .map(|i| decodable_set_exhaustive(enc, inst, i))
        .collect::<Result<Vec<_>>>()?;
    let mut leaky = Vec::new();
    if strict {
        let report = privacy_entropy_report(enc, inst)?;
        for ((user, j), h) in report {
            if per_user[user - 1].contains(&j) {
                continue;
            }
            if h < 1.0 - 1e-12 {
                leaky.push(user);
            }
        }
        leaky.dedup();
    }
    Ok(Verdict::from_decodable(per_user, &leaky))
}
