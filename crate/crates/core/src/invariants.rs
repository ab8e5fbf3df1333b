//! Arithmetic invariants of a degree/surface pair `(d, k)`.
//!
//! Everything here is exact integer arithmetic. The degree regime splits at
//! `d = 2k(k-1)`: above it the surface degree governs the bound directly, at or
//! below it the bound is driven by `theta0` instead of `k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree `d` of an integral curve on the three-dimensional quadric, lying on an
/// integral surface of degree `2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveParams {
    d: i64,
    k: i64,
}

impl CurveParams {
    pub fn new(d: i64, k: i64) -> Result<Self> {
        if d < 1 || k < 1 {
            return Err(Error::InvalidParams { d, k });
        }
        Ok(Self { d, k })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn regime(&self) -> Regime {
        regime(*self)
    }

    /// The pair the large-degree formulas are evaluated at: `(d, k)` itself in
    /// the large-degree regime and `(d, theta0)` in the small-degree regime.
    pub fn effective(&self) -> CurveParams {
        match self.regime() {
            Regime::LargeDegree => *self,
            Regime::SmallDegree => {
                let (theta0, _) = theta0_and_eps_prime(*self);
                let substituted = CurveParams { d: self.d, k: theta0 };
                debug_assert_eq!(substituted.regime(), Regime::LargeDegree);
                substituted
            }
        }
    }

    pub(crate) fn require(&self, expected: Regime) -> Result<()> {
        let found = self.regime();
        if found != expected {
            return Err(Error::WrongRegime {
                d: self.d,
                k: self.k,
                expected,
                found,
            });
        }
        Ok(())
    }

    /// `k^2 < d <= 2k(k-1)`: the range where a hyperplane section off every curve of
    /// type `k-1` is possible.
    pub fn admits_no_small_curve_regime(&self) -> bool {
        self.d > self.k * self.k && self.regime() == Regime::SmallDegree
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, k={})", self.d, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `d > 2k(k-1)`
    #[serde(rename = "large")]
    LargeDegree,
    /// `d <= 2k(k-1)`
    #[serde(rename = "small")]
    SmallDegree,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::LargeDegree => "large",
            Regime::SmallDegree => "small",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "large" => Ok(Regime::LargeDegree),
            "small" => Ok(Regime::SmallDegree),
            other => Err(Error::Parse(format!("unknown regime {other:?}"))),
        }
    }
}

/// All derived invariants of `(d, k)`. `eps_prime` is only reported in the
/// small-degree regime, `nu`/`eps_hat` only when `d > k^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSet {
    pub n0: i64,
    pub eps: i64,
    pub theta0: i64,
    pub eps_prime: Option<i64>,
    pub nu: Option<i64>,
    pub eps_hat: Option<i64>,
}

impl InvariantSet {
    pub fn of(params: CurveParams) -> Self {
        let (n0, eps) = n0_and_eps(params);
        let (theta0, eps_prime) = theta0_and_eps_prime(params);
        let small = params.regime() == Regime::SmallDegree;
        let (nu, eps_hat) = match nu_decomposition(params) {
            Ok((nu, eps_hat)) => (Some(nu), Some(eps_hat)),
            Err(_) => (None, None),
        };
        Self {
            n0,
            eps,
            theta0,
            eps_prime: small.then_some(eps_prime),
            nu,
            eps_hat,
        }
    }
}

pub fn regime(params: CurveParams) -> Regime {
    let CurveParams { d, k } = params;
    if d > 2 * k * (k - 1) {
        Regime::LargeDegree
    } else {
        Regime::SmallDegree
    }
}

/// `n0 = floor((d-1)/2k) + 1` and `eps` with `d + eps = 2 n0 k`, `0 <= eps < 2k`.
pub fn n0_and_eps(params: CurveParams) -> (i64, i64) {
    let CurveParams { d, k } = params;
    let n0 = (d - 1) / (2 * k) + 1;
    (n0, 2 * n0 * k - d)
}

/// `theta0 = floor((d-1)/2k) + 1` and `eps_prime` with `d = -eps_prime (mod 2 theta0)`.
pub fn theta0_and_eps_prime(params: CurveParams) -> (i64, i64) {
    let CurveParams { d, k } = params;
    let theta0 = (d - 1) / (2 * k) + 1;
    let modulus = 2 * theta0;
    (theta0, (-d).rem_euclid(modulus))
}

/// The unique `d = k^2 + nu^2 + eps_hat` with `0 <= eps_hat <= 2 nu`.
pub fn nu_decomposition(params: CurveParams) -> Result<(i64, i64)> {
    let CurveParams { d, k } = params;
    let k_squared = k * k;
    if d <= k_squared {
        return Err(Error::DegreeNotAboveKSquared { d, k_squared });
    }
    let excess = d - k_squared;
    let nu = excess.isqrt();
    Ok((nu, excess - nu * nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(d: i64, k: i64) -> CurveParams {
        CurveParams::new(d, k).unwrap()
    }

    #[test]
    fn rejects_non_positive() {
        assert!(CurveParams::new(0, 2).is_err());
        assert!(CurveParams::new(5, 0).is_err());
        assert!(CurveParams::new(-3, 1).is_err());
    }

    #[test]
    fn regime_examples() {
        assert_eq!(regime(p(9, 2)), Regime::LargeDegree);
        assert_eq!(regime(p(12, 3)), Regime::SmallDegree);
        assert_eq!(regime(p(1, 1)), Regime::LargeDegree);
        assert_eq!(regime(p(13, 3)), Regime::LargeDegree);
    }

    #[test]
    fn n0_eps_examples() {
        assert_eq!(n0_and_eps(p(9, 2)), (3, 3));
        assert_eq!(n0_and_eps(p(15, 3)), (3, 3));
        assert_eq!(n0_and_eps(p(4, 1)), (2, 0));
    }

    #[test]
    fn theta0_examples() {
        assert_eq!(theta0_and_eps_prime(p(10, 5)), (1, 0));
        assert_eq!(theta0_and_eps_prime(p(12, 3)), (2, 0));
        assert_eq!(theta0_and_eps_prime(p(11, 3)), (2, 1));
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_decomposition(p(10, 3)), Ok((1, 0)));
        assert_eq!(nu_decomposition(p(12, 3)), Ok((1, 2)));
        assert!(matches!(
            nu_decomposition(p(9, 3)),
            Err(Error::DegreeNotAboveKSquared { d: 9, k_squared: 9 })
        ));
    }

    #[test]
    fn k_one_is_always_large() {
        for d in 1..500 {
            assert_eq!(regime(p(d, 1)), Regime::LargeDegree);
        }
    }

    #[test]
    fn invariant_set_optional_fields() {
        let large = InvariantSet::of(p(15, 3));
        assert_eq!(large.eps_prime, None);
        assert_eq!((large.nu, large.eps_hat), (Some(2), Some(2)));
        let small = InvariantSet::of(p(12, 3));
        assert_eq!(small.eps_prime, Some(0));
        assert_eq!(small.theta0, 2);
        let tiny = InvariantSet::of(p(4, 3));
        assert_eq!((tiny.nu, tiny.eps_hat), (None, None));
    }

    #[test]
    fn effective_params_substitute_theta0() {
        assert_eq!(p(15, 3).effective(), p(15, 3));
        assert_eq!(p(10, 5).effective(), p(10, 1));
        assert_eq!(p(12, 3).effective(), p(12, 2));
    }

    proptest! {
        #[test]
        fn division_identity(d in 1i64..5000, k in 1i64..60) {
            let params = p(d, k);
            let (n0, eps) = n0_and_eps(params);
            prop_assert_eq!(d + eps, 2 * n0 * k);
            prop_assert!((0..2 * k).contains(&eps));
            let (theta0, eps_prime) = theta0_and_eps_prime(params);
            prop_assert_eq!(theta0, n0);
            prop_assert!((0..2 * theta0).contains(&eps_prime));
            prop_assert_eq!((d + eps_prime) % (2 * theta0), 0);
        }

        #[test]
        fn small_degree_redispatches_to_large(k in 2i64..60, frac in 0.0f64..1.0) {
            let top = 2 * k * (k - 1);
            let d = 1 + ((top - 1) as f64 * frac) as i64;
            let params = p(d, k);
            prop_assert_eq!(params.regime(), Regime::SmallDegree);
            let (theta0, _) = theta0_and_eps_prime(params);
            prop_assert!(theta0 < k);
            prop_assert!(d > 2 * theta0 * (theta0 - 1));
            prop_assert_eq!(p(d, theta0).regime(), Regime::LargeDegree);
        }
    }

    #[test]
    fn nu_decomposition_reconstructs() {
        for k in 2..30 {
            for d in (k * k + 1)..=(2 * k * (k - 1)) {
                let (nu, eps_hat) = nu_decomposition(p(d, k)).unwrap();
                assert!(nu >= 1 && (0..=2 * nu).contains(&eps_hat));
                assert_eq!(k * k + nu * nu + eps_hat, d);
            }
        }
    }
}
