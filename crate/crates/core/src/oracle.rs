//! Ground truth by brute force: the exact optimal scalar-linear code length,
//! found by enumerating canonical RREF representatives of every row space,
//! dimension by dimension. Validity depends only on the row space, so one
//! representative per subspace is a complete search.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{free_entry_count, pivot_patterns, PatternSubspaces};
use crate::instance::Instance;
use crate::schemes::{Scheme, SchemeCase};
use crate::validator::is_valid_fast;

/// Outcome of a bottom-up search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OracleStatus {
    /// A valid code of dimension `ell_star` exists and none smaller does.
    Found { ell_star: usize, witness: Scheme },
    /// All dimensions 1..m were exhausted without a valid code.
    InfeasibleLinear,
    /// Nothing found up to the requested dimension, which was below m.
    Inconclusive { searched_up_to: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(flatten)]
    pub status: OracleStatus,
    /// Canonical position of the witness in the enumeration (full counts of
    /// the exhausted dimensions plus the witness index), or the total count
    /// when nothing was found. Deterministic regardless of worker count.
    pub subspaces_checked: u64,
    #[serde(rename = "elapsed_ms", with = "duration_ms")]
    pub elapsed: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        (d.as_secs_f64() * 1e3).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms / 1e3))
    }
}

/// Largest dimension the full-optimality search supports for a given m.
/// Within these caps every per-dimension count fits comfortably in a u64 and
/// desk hardware finishes in minutes.
pub fn max_search_ell(m: usize) -> usize {
    match m {
        0..=8 => m,
        9..=10 => 3,
        _ => 0,
    }
}

fn check_caps(inst: &Instance, ell_max: usize) -> Result<()> {
    if ell_max < 1 || ell_max > inst.m() {
        return Err(Error::InvalidParams(format!(
            "ell_max must be in [1..m] = [1..{}], got {ell_max}",
            inst.m()
        )));
    }
    let cap = max_search_ell(inst.m());
    if ell_max > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive subspace search dimension",
            cap,
            got: ell_max,
        });
    }
    Ok(())
}

/// Search one dimension in canonical order. Returns the first valid row
/// space (as its canonical index within the dimension and the matrix) or the
/// total number of subspaces scanned. Splitting by pivot pattern keeps
/// workers independent; `find_map_first` keeps the winner canonical.
fn search_dimension(
    inst: &Instance,
    k: usize,
) -> std::result::Result<(u64, crate::gf2::BitMatrix), u64> {
    let m = inst.m();
    let side_masks = inst.side_masks();
    let patterns = pivot_patterns(m, k);
    let sizes: Vec<u64> = patterns
        .iter()
        .map(|p| 1u64 << free_entry_count(m, p))
        .collect();
    let offsets: Vec<u64> = sizes
        .iter()
        .scan(0u64, |acc, &s| {
            let out = *acc;
            *acc += s;
            Some(out)
        })
        .collect();
    let total: u64 = sizes.iter().sum();

    let hit = patterns
        .par_iter()
        .enumerate()
        .find_map_first(|(idx, pattern)| {
            let mut scratch = Vec::new();
            for (counter, candidate) in PatternSubspaces::new(m, pattern).enumerate() {
                if is_valid_fast(&mut scratch, candidate.row_words(), m, &side_masks) {
                    return Some((offsets[idx] + counter as u64, candidate));
                }
            }
            None
        });
    match hit {
        Some((index, matrix)) => Ok((index, matrix)),
        None => Err(total),
    }
}

/// Optimal scalar-linear code length by bottom-up exhaustive search.
///
/// Dimensions are scanned in ascending order, so a `Found` result is minimal
/// by construction. `InfeasibleLinear` is only reported when every dimension
/// up to m was exhausted; stopping earlier yields `Inconclusive`.
pub fn optimal_linear_length(inst: &Instance, ell_max: usize) -> Result<OracleResult> {
    check_caps(inst, ell_max)?;
    let start = Instant::now();
    let mut checked = 0u64;
    for k in 1..=ell_max {
        match search_dimension(inst, k) {
            Ok((index, matrix)) => {
                checked += index + 1;
                let witness = Scheme::certified(inst, matrix, SchemeCase::OracleWitness);
                return Ok(OracleResult {
                    status: OracleStatus::Found { ell_star: k, witness },
                    subspaces_checked: checked,
                    elapsed: start.elapsed(),
                });
            }
            Err(total) => checked += total,
        }
    }
    let status = if ell_max == inst.m() {
        OracleStatus::InfeasibleLinear
    } else {
        OracleStatus::Inconclusive { searched_up_to: ell_max }
    };
    Ok(OracleResult { status, subspaces_checked: checked, elapsed: start.elapsed() })
}

/// Complete linear-infeasibility proof: true iff no row space of any
/// dimension 1..m validates. Requires m ≤ 8.
pub fn prove_linear_infeasible(inst: &Instance) -> Result<bool> {
    if inst.m() > 8 {
        return Err(Error::CapExceeded {
            what: "full infeasibility proof",
            cap: 8,
            got: inst.m(),
        });
    }
    let result = optimal_linear_length(inst, inst.m())?;
    Ok(matches!(result.status, OracleStatus::InfeasibleLinear))
}

/// Number of distinct valid row spaces of one dimension. Requires m ≤ 8.
pub fn count_valid_codes(inst: &Instance, ell: usize) -> Result<u64> {
    if inst.m() > 8 {
        return Err(Error::CapExceeded { what: "valid-code census", cap: 8, got: inst.m() });
    }
    if ell < 1 || ell > inst.m() {
        return Err(Error::InvalidParams(format!(
            "ell must be in [1..m] = [1..{}], got {ell}",
            inst.m()
        )));
    }
    let m = inst.m();
    let side_masks = inst.side_masks();
    let count = pivot_patterns(m, ell)
        .par_iter()
        .map(|pattern| {
            let mut scratch = Vec::new();
            PatternSubspaces::new(m, pattern)
                .filter(|c| is_valid_fast(&mut scratch, c.row_words(), m, &side_masks))
                .count() as u64
        })
        .sum();
    Ok(count)
}
