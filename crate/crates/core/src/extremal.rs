//! Candidate extremal sequences and the mass-shifting local search.
//!
//! `γ̃` is the maximizer of the genus functional for each regime, `γ̂` is the
//! sequence of the special linked curves. Templates are evaluated range by
//! range; an empty range contributes nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{is_admissible, ConstraintProfile, GammaSequence, DESCENT_GAP};
use crate::invariants::{n0_and_eps, nu_decomposition, CurveParams, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateReport {
    pub sequence: GammaSequence,
    /// True when the evaluated template had a negative entry and had to be fixed.
    pub repaired: bool,
    /// Entries exactly as the template formulas give them, trailing zeros removed.
    pub raw_template: Vec<i64>,
    pub profile: ConstraintProfile,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl TemplateReport {
    fn exact(raw: Vec<i64>, profile: ConstraintProfile) -> Self {
        let sequence = GammaSequence::from_signed(&raw).expect("template entries are nonnegative");
        Self {
            raw_template: strip_trailing_zeros(raw),
            sequence,
            repaired: false,
            profile,
            notes: Vec::new(),
        }
    }
}

fn strip_trailing_zeros(mut raw: Vec<i64>) -> Vec<i64> {
    while raw.last() == Some(&0) {
        raw.pop();
    }
    raw
}

/// `1, 3, ..., 2p-1` followed by `2p` up to (not including) index `n`.
fn prefix_and_plateau(prefix_length: i64, n: i64) -> Vec<i64> {
    let mut values: Vec<i64> = (0..prefix_length).map(|l| 2 * l + 1).collect();
    values.extend((prefix_length..n).map(|_| 2 * prefix_length));
    values
}

/// `γ̃` for `d > 2k(k-1)`.
///
/// The tail after the plateau is the staircase `2(k + n0 - l) - 1` on
/// `[n0, n0 + k - 1]`, lowered by one on its last `eps` entries when
/// `eps <= k`, and otherwise lowered by one everywhere and by two on the last
/// `eps - k` entries. In the second case the final entry comes out as `-1`; the
/// repair drops it and removes the unit of excess mass that creates at the
/// smallest index where a decrement keeps every descent gap.
pub fn build_tilde_gamma_large(params: CurveParams) -> Result<TemplateReport> {
    params.require(Regime::LargeDegree)?;
    let profile = ConstraintProfile::large_degree(params)?;
    let k = params.k();
    let (n0, eps) = n0_and_eps(params);
    let staircase = |l: i64| 2 * (k + n0 - l) - 1;

    let mut raw = prefix_and_plateau(k, n0);
    for l in n0..n0 + k {
        let lowered = if eps <= k {
            if l < n0 + k - eps {
                0
            } else {
                1
            }
        } else {
            let tau = eps - k;
            if l < n0 + k - tau {
                1
            } else {
                2
            }
        };
        raw.push(staircase(l) - lowered);
    }

    if raw.iter().all(|&v| v >= 0) {
        let report = TemplateReport::exact(raw, profile);
        debug_assert!(is_admissible(&report.sequence, &profile).is_admissible());
        return Ok(report);
    }

    let mut notes = Vec::new();
    let first_negative = raw.iter().position(|&v| v < 0).expect("has a negative entry");
    notes.push(format!(
        "template entry {} at l={first_negative} is negative; truncated",
        raw[first_negative]
    ));
    let mut values = raw[..first_negative].to_vec();
    rebalance_tail(&mut values, n0 as usize, profile.mass, &mut notes);

    let sequence = GammaSequence::from_signed(&values).expect("repaired entries are nonnegative");
    let verdict = is_admissible(&sequence, &profile);
    if !verdict.is_admissible() {
        return Err(Error::Inadmissible(verdict.violations));
    }
    Ok(TemplateReport {
        sequence,
        repaired: true,
        raw_template: strip_trailing_zeros(raw),
        profile,
        notes,
    })
}

/// Moves the tail mass (entries from `tail_start` on) to `target` one unit at a
/// time. Excess comes off the smallest index whose decrement keeps the gap to
/// its successor; a deficit goes on the largest index whose increment keeps the
/// gap to its predecessor.
fn rebalance_tail(values: &mut Vec<i64>, tail_start: usize, target: i64, notes: &mut Vec<String>) {
    let gap = i64::from(DESCENT_GAP);
    loop {
        let total: i64 = values.iter().sum();
        if total == target {
            return;
        }
        if total > target {
            let at = (tail_start..values.len())
                .find(|&l| {
                    let lowered = values[l] - 1;
                    match values.get(l + 1) {
                        Some(&next) => lowered >= 1 && lowered - next >= gap,
                        None => lowered >= 0,
                    }
                })
                .expect("a decrement position exists in a nonempty tail");
            values[at] -= 1;
            notes.push(format!("excess unit removed at l={at}"));
        } else {
            values.push(0);
            let at = (tail_start..values.len())
                .rev()
                .find(|&l| {
                    let raised = values[l] + 1;
                    let prev_ok = l == tail_start || values[l - 1] - raised >= gap;
                    let next_ok = values.get(l + 1).is_none_or(|&next| next == 0 || raised - next >= gap);
                    prev_ok && next_ok
                })
                .expect("an increment position exists");
            values[at] += 1;
            notes.push(format!("missing unit added at l={at}"));
        }
        while values.last() == Some(&0) {
            values.pop();
        }
    }
}

/// `γ̃` for `d <= 2k(k-1)`: the large-degree template at `(d, theta0)`.
pub fn build_tilde_gamma_small(params: CurveParams) -> Result<TemplateReport> {
    params.require(Regime::SmallDegree)?;
    build_tilde_gamma_large(params.effective())
}

/// `γ̃` when `k^2 < d <= 2k(k-1)` and the plateau starts at `k`.
///
/// With `d = k^2 + nu^2 + eps_hat`, the tail is the staircase
/// `2(k + nu - l) - 1` on `[k, k + nu - 1]`, raised by one on its first
/// `eps_hat` entries when `eps_hat <= nu`, and otherwise raised by one
/// everywhere and by two on the first `eps_hat - nu` entries.
pub fn build_tilde_gamma_theta_k(params: CurveParams) -> Result<TemplateReport> {
    params.require(Regime::SmallDegree)?;
    let (nu, eps_hat) = nu_decomposition(params)?;
    let profile = ConstraintProfile::theta_k(params)?;
    let k = params.k();

    let mut raw = prefix_and_plateau(k, k);
    for l in k..k + nu {
        let staircase = 2 * (k + nu - l) - 1;
        let raised = if eps_hat <= nu {
            if l < k + eps_hat {
                1
            } else {
                0
            }
        } else {
            let tau = eps_hat - nu;
            if l < k + tau {
                2
            } else {
                1
            }
        };
        raw.push(staircase + raised);
    }
    let report = TemplateReport::exact(raw, profile);
    debug_assert!(is_admissible(&report.sequence, &profile).is_admissible());
    Ok(report)
}

/// `γ̂`, the sequence of curves linked to a residual of degree `eps` on a
/// quadric surface, for `d > 2k(k-1)`.
///
/// With `alpha = ceil(eps / 2)` and `delta = 1` for even `eps >= 2` (else 0),
/// the tail is the staircase `2(n0 + k - l) - 1` up to `n0 + k - alpha - 2`,
/// lowered by `delta` at `n0 + k - alpha - 1`, lowered by two on
/// `[n0 + k - alpha, n0 + k - 2]` and zero from `n0 + k - 1` on. Rows are only
/// applied at `l >= n0`; entries below follow the forced prefix and plateau.
pub fn build_hat_gamma(params: CurveParams) -> Result<TemplateReport> {
    params.require(Regime::LargeDegree)?;
    let profile = ConstraintProfile::large_degree(params)?;
    let k = params.k();
    let (n0, eps) = n0_and_eps(params);
    let alpha = (eps + 1) / 2;
    let delta = i64::from(eps % 2 == 0 && eps >= 2);
    let top = n0 + k;

    let mut raw = prefix_and_plateau(k, n0);
    for l in n0..top {
        let staircase = 2 * (top - l) - 1;
        // the delta row takes precedence over the zero row; they overlap only at eps = 0
        let value = if l <= top - alpha - 2 {
            staircase
        } else if l == top - alpha - 1 {
            staircase - delta
        } else if l <= top - 2 {
            staircase - 2
        } else {
            0
        };
        raw.push(value);
    }
    let mut report = TemplateReport::exact(raw, profile);
    report
        .notes
        .push("trailing zero range taken to start at n0 + k - 1".to_owned());
    debug_assert!(is_admissible(&report.sequence, &profile).is_admissible());
    Ok(report)
}

/// Move families of the local search, by how far the unit of mass travels:
/// `A` to the next index, `B` two indices, `C` three, `D` four or more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveCase {
    A,
    B,
    C,
    D,
}

/// One unit moved from `from` to the later index `to`; raises the functional by `to - from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub case: MoveCase,
    pub from: usize,
    pub to: usize,
}

fn try_move(gamma: &GammaSequence, profile: &ConstraintProfile, from: usize, to: usize) -> Option<GammaSequence> {
    if from < profile.prefix_length || gamma.get(from) == 0 {
        return None;
    }
    let mut values = gamma.values().to_vec();
    values.resize(values.len().max(to + 1), 0);
    values[from] -= 1;
    values[to] += 1;
    let candidate = GammaSequence::new(values);
    is_admissible(&candidate, profile).is_admissible().then_some(candidate)
}

fn next_move(gamma: &GammaSequence, profile: &ConstraintProfile) -> Option<(Move, GammaSequence)> {
    let m = gamma.support_len();
    for (case, span) in [(MoveCase::A, 1), (MoveCase::B, 2), (MoveCase::C, 3)] {
        for to in span..=m {
            if let Some(next) = try_move(gamma, profile, to - span, to) {
                return Some((
                    Move {
                        case,
                        from: to - span,
                        to,
                    },
                    next,
                ));
            }
        }
    }
    for to in 4..=m {
        for span in 4..=to {
            if let Some(next) = try_move(gamma, profile, to - span, to) {
                return Some((
                    Move {
                        case: MoveCase::D,
                        from: to - span,
                        to,
                    },
                    next,
                ));
            }
        }
    }
    None
}

/// Applies mass-shifting moves until none keeps the sequence admissible.
pub fn improve(gamma: &GammaSequence, profile: &ConstraintProfile) -> Result<GammaSequence> {
    improve_traced(gamma, profile).map(|(out, _)| out)
}

/// [`improve`], also returning the moves applied in order.
pub fn improve_traced(gamma: &GammaSequence, profile: &ConstraintProfile) -> Result<(GammaSequence, Vec<Move>)> {
    let verdict = is_admissible(gamma, profile);
    if !verdict.is_admissible() {
        return Err(Error::Inadmissible(verdict.violations));
    }
    let mut current = gamma.clone();
    let mut moves = Vec::new();
    while let Some((mv, next)) = next_move(&current, profile) {
        moves.push(mv);
        current = next;
    }
    Ok((current, moves))
}
