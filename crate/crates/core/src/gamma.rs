//! Second-difference sequences and their admissibility constraints.
//!
//! A [`GammaSequence`] `γ_0, γ_1, ...` stands for the second differences of the
//! Hilbert function of a general hyperplane section. The genus of the curve is
//! bounded by `1 + Σ (l-1) γ_l` over sequences satisfying a [`ConstraintProfile`]:
//! a forced odd prefix, a flat plateau, then a tail that drops by at least two
//! per step.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{n0_and_eps, CurveParams, Regime};

/// Minimum drop between consecutive tail entries.
pub const DESCENT_GAP: u32 = 2;

/// Finite sequence of nonnegative integers indexed from 0. Stored in canonical
/// form (no trailing zeros); entries past the end read as zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct GammaSequence(Vec<u32>);

impl GammaSequence {
    pub fn new(mut values: Vec<u32>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        Self(values)
    }

    /// Accepts signed input, rejecting negative entries.
    pub fn from_signed(values: &[i64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| u32::try_from(v).map_err(|_| Error::Parse(format!("entry {v} is not a nonnegative u32"))))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// `γ_l`, zero beyond the support.
    pub fn get(&self, l: usize) -> u32 {
        self.0.get(l).copied().unwrap_or(0)
    }

    /// Support length: the first index `m` with `γ_l = 0` for all `l >= m`.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mass(&self) -> i64 {
        self.0.iter().map(|&v| i64::from(v)).sum()
    }
}

impl From<Vec<u32>> for GammaSequence {
    fn from(values: Vec<u32>) -> Self {
        Self::new(values)
    }
}

impl From<GammaSequence> for Vec<u32> {
    fn from(gamma: GammaSequence) -> Self {
        gamma.0
    }
}

/// Comma-separated, no spaces: `1,3,4,2`.
impl fmt::Display for GammaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for GammaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("{part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Admissibility constraints for one `(d, k)` analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintProfile {
    /// `p`: entries `γ_l = 2l + 1` are forced for `l < p`.
    pub prefix_length: usize,
    /// `h = 2p`: value of every entry in `[p, n-1]`.
    pub plateau_height: u32,
    /// Lower bound on the plateau end `n`.
    pub n_min: usize,
    /// `Σ γ_l`, the degree.
    pub mass: i64,
}

impl ConstraintProfile {
    pub fn new(prefix_length: usize, n_min: usize, mass: i64) -> Result<Self> {
        if prefix_length == 0 || n_min == 0 {
            return Err(Error::InvalidProfile(format!(
                "prefix length {prefix_length} and n_min {n_min} must be positive"
            )));
        }
        let prefix_mass = (prefix_length * prefix_length) as i64;
        if mass < prefix_mass {
            return Err(Error::InvalidProfile(format!(
                "mass {mass} is below the forced prefix mass {prefix_mass}"
            )));
        }
        let plateau_height = u32::try_from(2 * prefix_length)
            .map_err(|_| Error::InvalidProfile(format!("prefix length {prefix_length} too large")))?;
        Ok(Self {
            prefix_length,
            plateau_height,
            n_min,
            mass,
        })
    }

    /// Large-degree analysis of `(d, k)`: prefix `k`, plateau `2k`, `n >= n0`.
    pub fn large_degree(params: CurveParams) -> Result<Self> {
        params.require(Regime::LargeDegree)?;
        let (n0, _) = n0_and_eps(params);
        Self::new(params.k() as usize, n0 as usize, params.d())
    }

    /// Small-degree analysis: the large-degree profile at `(d, theta0)`.
    pub fn small_degree(params: CurveParams) -> Result<Self> {
        params.require(Regime::SmallDegree)?;
        Self::large_degree(params.effective())
    }

    /// The regime where the plateau starts at `k` and `n >= k`.
    pub fn theta_k(params: CurveParams) -> Result<Self> {
        params.require(Regime::SmallDegree)?;
        crate::invariants::nu_decomposition(params)?;
        let k = params.k() as usize;
        Self::new(k, k, params.d())
    }

    /// Profile of the regime `params` falls in (large, or small at `theta0`).
    pub fn for_params(params: CurveParams) -> Result<Self> {
        Self::large_degree(params.effective())
    }

    pub fn descent_gap(&self) -> u32 {
        DESCENT_GAP
    }

    /// Support bound `n_min + prefix_length` that no admissible sequence exceeds.
    pub fn support_cap(&self) -> usize {
        self.n_min + self.prefix_length
    }
}

/// One failed clause of the admissibility check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// (a)
    ForcedPrefix { index: usize, expected: u32, found: u32 },
    /// (b) an entry inside the plateau exceeds its height
    Plateau { index: usize, found: u32 },
    /// (c)
    PlateauTooShort { n: usize, n_min: usize },
    /// (d)
    FirstBelowPlateau { n: usize, found: u32 },
    /// (e)
    Descent { index: usize, gap: i64 },
    /// (f)
    EmptySupport,
    /// (g)
    InteriorZero { index: usize },
    /// (h)
    Mass { expected: i64, found: i64 },
}

impl Violation {
    pub fn clause(&self) -> char {
        match self {
            Violation::ForcedPrefix { .. } => 'a',
            Violation::Plateau { .. } => 'b',
            Violation::PlateauTooShort { .. } => 'c',
            Violation::FirstBelowPlateau { .. } => 'd',
            Violation::Descent { .. } => 'e',
            Violation::EmptySupport => 'f',
            Violation::InteriorZero { .. } => 'g',
            Violation::Mass { .. } => 'h',
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ", self.clause())?;
        match self {
            Violation::ForcedPrefix { index, expected, found } => {
                write!(f, "gamma_{index} = {found}, forced value {expected}")
            }
            Violation::Plateau { index, found } => {
                write!(f, "gamma_{index} = {found} exceeds the plateau height")
            }
            Violation::PlateauTooShort { n, n_min } => write!(f, "plateau ends at n = {n} < {n_min}"),
            Violation::FirstBelowPlateau { n, found } => {
                write!(f, "gamma_{n} = {found} is not below the plateau height")
            }
            Violation::Descent { index, gap } => {
                write!(f, "gamma_{index} - gamma_{} = {gap} < {DESCENT_GAP}", index + 1)
            }
            Violation::EmptySupport => f.write_str("empty support"),
            Violation::InteriorZero { index } => write!(f, "gamma_{index} = 0 inside the support"),
            Violation::Mass { expected, found } => write!(f, "sum is {found}, expected {expected}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, clause: char) -> bool {
        self.violations.iter().any(|v| v.clause() == clause)
    }
}

/// First index `>= prefix_length` with `γ < plateau_height`.
fn plateau_end(gamma: &GammaSequence, profile: &ConstraintProfile) -> usize {
    (profile.prefix_length..)
        .find(|&l| gamma.get(l) < profile.plateau_height)
        .expect("finite support")
}

/// Checks every clause and reports each failure.
pub fn is_admissible(gamma: &GammaSequence, profile: &ConstraintProfile) -> Verdict {
    let mut violations = Vec::new();
    let p = profile.prefix_length;
    let h = profile.plateau_height;
    let m = gamma.support_len();

    for l in 0..p {
        let expected = 2 * l as u32 + 1;
        let found = gamma.get(l);
        if found != expected {
            violations.push(Violation::ForcedPrefix {
                index: l,
                expected,
                found,
            });
        }
    }

    let n = plateau_end(gamma, profile);
    for l in p..n {
        if gamma.get(l) != h {
            violations.push(Violation::Plateau {
                index: l,
                found: gamma.get(l),
            });
        }
    }
    if n < profile.n_min {
        violations.push(Violation::PlateauTooShort {
            n,
            n_min: profile.n_min,
        });
    }
    if gamma.get(n) > h - 1 {
        violations.push(Violation::FirstBelowPlateau { n, found: gamma.get(n) });
    }

    for l in n..m.saturating_sub(1) {
        let gap = i64::from(gamma.get(l)) - i64::from(gamma.get(l + 1));
        if gap < i64::from(DESCENT_GAP) {
            violations.push(Violation::Descent { index: l, gap });
        }
    }

    if m == 0 {
        violations.push(Violation::EmptySupport);
    }
    for l in 0..m {
        if gamma.get(l) == 0 {
            violations.push(Violation::InteriorZero { index: l });
        }
    }

    let found = gamma.mass();
    if found != profile.mass {
        violations.push(Violation::Mass {
            expected: profile.mass,
            found,
        });
    }

    Verdict { violations }
}

/// `Σ (l - 1) γ_l`, the quantity bounding `g - 1`.
pub fn genus_functional(gamma: &GammaSequence) -> i64 {
    gamma
        .values()
        .iter()
        .enumerate()
        .map(|(l, &v)| (l as i64 - 1) * i64::from(v))
        .sum()
}

/// Running sums `β_t = Σ_{l<=t} γ_l`.
pub fn beta_from_gamma(gamma: &GammaSequence) -> Vec<i64> {
    gamma
        .values()
        .iter()
        .scan(0i64, |acc, &v| {
            *acc += i64::from(v);
            Some(*acc)
        })
        .collect()
}

/// `(n, m)`: end of the plateau and end of the support.
pub fn indices(gamma: &GammaSequence, profile: &ConstraintProfile) -> Result<(usize, usize)> {
    let verdict = is_admissible(gamma, profile);
    if !verdict.is_admissible() {
        return Err(Error::Inadmissible(verdict.violations));
    }
    Ok((plateau_end(gamma, profile), gamma.support_len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> GammaSequence {
        s.parse().unwrap()
    }

    fn profile(k: usize, d: i64, n_min: usize) -> ConstraintProfile {
        ConstraintProfile::new(k, n_min, d).unwrap()
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        assert_eq!(GammaSequence::new(vec![1, 2, 0, 0]), seq("1,2"));
        assert_eq!(seq("1,3,4,2").to_string(), "1,3,4,2");
        assert_eq!(seq(""), GammaSequence::default());
        assert!("1,-2".parse::<GammaSequence>().is_err());
        assert!(GammaSequence::from_signed(&[1, 3, -1]).is_err());
    }

    #[test]
    fn admissible_examples() {
        let v = is_admissible(&seq("1,3,4,2"), &profile(2, 10, 3));
        assert!(v.is_admissible(), "{v:?}");
        let v = is_admissible(&seq("1,3,5,4,2"), &profile(3, 15, 3));
        assert!(v.is_admissible(), "{v:?}");
    }

    #[test]
    fn descent_violation_reported() {
        let v = is_admissible(&seq("1,3,4,2,1"), &profile(2, 11, 3));
        assert_eq!(v.violations, vec![Violation::Descent { index: 3, gap: 1 }]);
    }

    #[test]
    fn each_clause_detected() {
        let base = profile(2, 14, 3);
        // (1,3,4,4,2) with n = 4 is admissible at mass 14
        assert!(is_admissible(&seq("1,3,4,4,2"), &base).is_admissible());
        let cases = [
            ("1,2,4,4,3", 'a'),
            ("1,3,5,3,2", 'b'),
            ("1,3,3,4,3", 'c'),
            ("1,3,4,4,1,1,1,1", 'e'),
            ("1,3,4,0,4,2", 'g'),
            ("1,3,4,4,3", 'h'),
        ];
        for (s, clause) in cases {
            let v = is_admissible(&seq(s), &base);
            assert!(v.violates(clause), "{s}: {v:?}");
        }
        assert!(is_admissible(&seq(""), &base).violates('f'));
    }

    #[test]
    fn empty_plateau_allowed() {
        // n = prefix_length when the first post-prefix entry is already below 2k
        let v = is_admissible(&seq("1,3,3,1"), &profile(2, 8, 2));
        assert!(v.is_admissible(), "{v:?}");
    }

    #[test]
    fn functional_examples() {
        assert_eq!(genus_functional(&seq("1,2,1")), 0);
        assert_eq!(genus_functional(&seq("1,3,4,2")), 7);
        assert_eq!(genus_functional(&seq("1,3,5,4,2")), 18);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_from_gamma(&seq("1,3,4,2")), vec![1, 4, 8, 10]);
        assert_eq!(beta_from_gamma(&seq("")), Vec::<i64>::new());
        assert_eq!(beta_from_gamma(&seq("1,3,5")), vec![1, 4, 9]);
    }

    #[test]
    fn indices_examples() {
        assert_eq!(indices(&seq("1,3,4,2"), &profile(2, 10, 3)), Ok((3, 4)));
        assert_eq!(indices(&seq("1,3,5,4,2"), &profile(3, 15, 3)), Ok((3, 5)));
        assert_eq!(indices(&seq("1,2,2,2,2,1"), &profile(1, 10, 5)), Ok((5, 6)));
        assert!(indices(&seq("1,3,4,2,1"), &profile(2, 11, 3)).is_err());
    }

    #[test]
    fn profile_constructors() {
        let large = ConstraintProfile::large_degree(CurveParams::new(15, 3).unwrap()).unwrap();
        assert_eq!(large, profile(3, 15, 3));
        let small = ConstraintProfile::small_degree(CurveParams::new(10, 5).unwrap()).unwrap();
        assert_eq!(small, profile(1, 10, 5));
        let theta = ConstraintProfile::theta_k(CurveParams::new(10, 3).unwrap()).unwrap();
        assert_eq!(theta, profile(3, 10, 3));
        assert!(ConstraintProfile::theta_k(CurveParams::new(9, 3).unwrap()).is_err());
        assert!(ConstraintProfile::large_degree(CurveParams::new(12, 3).unwrap()).is_err());
        assert!(ConstraintProfile::new(3, 3, 8).is_err());
        assert_eq!(large.plateau_height, 2 * large.prefix_length as u32);
    }
}
