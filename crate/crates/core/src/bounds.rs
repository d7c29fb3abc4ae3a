//! Closed-form predictions for the optimal code length: the feasibility
//! split, the regimes where the information-theoretic optimum is known
//! exactly (1 or 2, by 1-factor existence), and the linear-code band
//! ⌈⌊m/s⌋/2⌉ ≤ ℓ*_lin ≤ ⌈⌊m/s⌋/2⌉ + 1 for the remaining regimes.

use serde::{Deserialize, Serialize};

use crate::instance::Instance;

/// Which regime an instance falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// m odd, g = 1, s ∈ {1, m−2}: no valid code exists at all.
    Infeasible,
    /// The unrestricted optimum is known exactly: 1 with a 1-factor, else 2.
    TightIt,
    /// Only the linear optimum is pinned, to within one transmission.
    LinearBand,
    /// s = 0 is not covered by the classification.
    Unclassified,
}

/// Classification of one instance, with whichever bounds its regime defines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub case_tag: CaseTag,
    /// Exact optimum over all codes; present only for `TightIt`.
    pub it_optimal: Option<usize>,
    /// Lower bound on the optimal linear code length; present for `LinearBand`.
    pub lin_lower: Option<usize>,
    /// Upper bound on the optimal linear code length; present for `LinearBand`.
    pub lin_upper: Option<usize>,
}

impl BoundReport {
    fn tagged(case_tag: CaseTag) -> BoundReport {
        BoundReport { case_tag, it_optimal: None, lin_lower: None, lin_upper: None }
    }

    /// The proved achievable length for this regime (what a constructed
    /// scheme must match): the exact optimum when known, else the band's
    /// upper end.
    pub fn achievable_ell(&self) -> Option<usize> {
        self.it_optimal.or(self.lin_upper)
    }
}

/// True exactly when m is odd, g = 1, and s is 1 or m−2. In those cases every
/// desired-message choice chains users into "loops" of mutually decodable
/// pairs, and an odd user count leaves one user able to decode two messages.
pub fn is_infeasible(inst: &Instance) -> bool {
    let (m, s, g) = (inst.m(), inst.s(), inst.g());
    m % 2 == 1 && g == 1 && (s == 1 || s == m - 2)
}

/// Classify an instance. `one_factor` is the caller-computed 1-factor
/// existence bit (kept as an input so the exact-cover result can be cached).
pub fn classify(inst: &Instance, one_factor: bool) -> BoundReport {
    let (m, s, g) = (inst.m(), inst.s(), inst.g());
    if s == 0 {
        return BoundReport::tagged(CaseTag::Unclassified);
    }
    if is_infeasible(inst) {
        return BoundReport::tagged(CaseTag::Infeasible);
    }

    let large_s = 2 * s >= m; // s ≥ m/2, boundary included
    if large_s || g >= 3 || (g == 2 && s != 2) {
        let mut r = BoundReport::tagged(CaseTag::TightIt);
        r.it_optimal = Some(if one_factor { 1 } else { 2 });
        return r;
    }

    // Remaining: s < m/2 with g = 1, or g = s = 2.
    let lower = (m / s).div_ceil(2);
    let upper = if m % s == 0 { lower } else { lower + 1 };
    let mut r = BoundReport::tagged(CaseTag::LinearBand);
    r.lin_lower = Some(lower);
    r.lin_upper = Some(upper);
    r
}
