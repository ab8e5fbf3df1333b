//! Closed-form genus bounds, evaluated over exact rationals.
//!
//! Every formula is a rational expression in `d`, `k` and the residues; the
//! result must be an integer. A fractional value means a transcription bug
//! and panics instead of being rounded.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::{n0_and_eps, nu_decomposition, theta0_and_eps_prime, CurveParams, InvariantSet, Regime};

pub type Rational = Ratio<i128>;

fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(i128::from(numer), i128::from(denom))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(i128::from(v))
}

fn exact(value: Rational, what: &str, params: CurveParams) -> i64 {
    assert!(
        value.is_integer(),
        "internal error: {what} at {params} evaluated to non-integer {value}"
    );
    value
        .to_integer()
        .to_i64()
        .unwrap_or_else(|| panic!("internal error: {what} at {params} overflows i64"))
}

/// `d^2/4k + (k-3)d/2`, shared by both large-degree closed forms.
fn leading_terms(d: i64, k: i64) -> Rational {
    q(d * d, 4 * k) + q((k - 3) * d, 2)
}

/// Upper bound for `g - 1` when `d > 2k(k-1)`, as an exact rational.
pub fn pi_rational(params: CurveParams) -> Result<Rational> {
    params.require(Regime::LargeDegree)?;
    let (d, k) = (params.d(), params.k());
    let (_, eps) = n0_and_eps(params);
    let value = if eps <= k {
        leading_terms(d, k) - q(eps * eps, 4 * k) - int(eps) * q(k - eps, 2)
    } else {
        let tau = eps - k;
        leading_terms(d, k) - int(k - tau) * (q(tau, 2) - q(tau, 4 * k) + q(1, 4))
    };
    Ok(value)
}

pub fn pi(params: CurveParams) -> Result<i64> {
    Ok(exact(pi_rational(params)?, "pi", params))
}

/// Residues of `2k` whose correction term vanishes.
fn residue_is_exceptional(eps: i64, k: i64) -> bool {
    [0, 1, 2, 2 * k - 1].contains(&eps)
}

/// Correction subtracted from `pi`: 0 when `eps` is one of `0, 1, 2, 2k-1`, else 1.
pub fn xi(params: CurveParams) -> Result<i64> {
    params.require(Regime::LargeDegree)?;
    let (_, eps) = n0_and_eps(params);
    Ok(i64::from(!residue_is_exceptional(eps, params.k())))
}

/// `g - 1` of the special linked curves (class S), as an exact rational.
pub fn capital_pi_rational(params: CurveParams) -> Result<Rational> {
    params.require(Regime::LargeDegree)?;
    let (d, k) = (params.d(), params.k());
    let (_, eps) = n0_and_eps(params);
    let mut value = leading_terms(d, k) - q(eps, 2) * (int(k - 1) * (int(1) - q(eps, 2 * k)));
    if eps % 2 == 1 {
        value -= q(1, 4);
    }
    Ok(value)
}

pub fn capital_pi(params: CurveParams) -> Result<i64> {
    Ok(exact(capital_pi_rational(params)?, "capital pi", params))
}

fn require_no_small_curve(params: CurveParams) -> Result<(i64, i64)> {
    params.require(Regime::SmallDegree)?;
    nu_decomposition(params)
}

/// Bound for `g - 1` when `k^2 < d <= 2k(k-1)` and the hyperplane section lies
/// on no curve of type `k - 1`, as an exact rational.
///
/// With `d = k^2 + nu^2 + eps` (`0 <= eps <= 2nu`):
///
/// ```text
/// (k - 3/2) d - (k^3 - nu^3)/3 - (k - nu)/6 + eps^2/2              if eps <= nu
/// (k - 3/2) d - (k^3 - nu^3)/3 - (k - nu)/6 + nu^2/2 + tau^2/2     if eps > nu, tau = eps - nu
/// ```
pub fn no_small_curve_rational(params: CurveParams) -> Result<Rational> {
    let (nu, eps) = require_no_small_curve(params)?;
    let (d, k) = (params.d(), params.k());
    let base = (int(k) - q(3, 2)) * int(d) - q(k * k * k - nu * nu * nu, 3) - q(k - nu, 6);
    let value = if eps <= nu {
        base + q(eps * eps, 2)
    } else {
        let tau = eps - nu;
        base + q(nu * nu, 2) + q(tau * tau, 2)
    };
    Ok(value)
}

pub fn bound_no_small_curve(params: CurveParams) -> Result<i64> {
    Ok(exact(no_small_curve_rational(params)?, "no-small-curve bound", params))
}

/// How much is known about the bound at `(d, k)`.
///
/// The first two variants carry the proved bound on `g - 1`; the third carries
/// the class-S value, which is only conjectured to be the sharp bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Sharpness {
    /// Sharp, and attained exactly by class-S curves.
    SharpAttainedByS(i64),
    /// Sharp; the extremal curves are not known to be class S.
    SharpPossiblyOther(i64),
    /// Sharpness unknown; the carried value is the conjectured sharp bound.
    UnknownConjecturalPi(i64),
}

impl Sharpness {
    pub fn label(&self) -> &'static str {
        match self {
            Sharpness::SharpAttainedByS(_) => "sharp_attained_by_s",
            Sharpness::SharpPossiblyOther(_) => "sharp_possibly_other",
            Sharpness::UnknownConjecturalPi(_) => "unknown_conjectural_pi",
        }
    }

    pub fn value(&self) -> i64 {
        match *self {
            Sharpness::SharpAttainedByS(v) | Sharpness::SharpPossiblyOther(v) | Sharpness::UnknownConjecturalPi(v) => v,
        }
    }

    pub fn is_sharp(&self) -> bool {
        !matches!(self, Sharpness::UnknownConjecturalPi(_))
    }
}

/// Classifies `(d, k)` by its residue (`eps` with `k`, or `eps'` with `theta0`).
pub fn sharpness(params: CurveParams) -> Sharpness {
    let eff = params.effective();
    let (_, eps) = n0_and_eps(eff);
    let k = eff.k();
    let bound = pi(eff).expect("effective params are large-degree") - xi(eff).expect("large-degree");
    if residue_is_exceptional(eps, k) {
        Sharpness::SharpAttainedByS(bound)
    } else if eps == 3 || eps == 2 * k - 2 {
        Sharpness::SharpPossiblyOther(bound)
    } else {
        Sharpness::UnknownConjecturalPi(capital_pi(eff).expect("large-degree"))
    }
}

/// Complete-intersection data of the class-S curves of `(d, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageDescriptor {
    /// Type `(a, b)` of the complete intersection; its degree is `2ab`.
    pub ci_type: (i64, i64),
    /// Degree of the residual curve.
    pub residual_degree: i64,
    pub residual_on_quadric_surface: bool,
    pub acm_residual: bool,
}

/// `(k, n0)` with residual `eps` for `d > 2k(k-1)`; `(theta0, n0(d, theta0))`
/// with residual `eps'` otherwise.
pub fn linkage_descriptor(params: CurveParams) -> LinkageDescriptor {
    let d = params.d();
    let (ci_type, residual_degree) = match params.regime() {
        Regime::LargeDegree => {
            let (n0, eps) = n0_and_eps(params);
            ((params.k(), n0), eps)
        }
        Regime::SmallDegree => {
            let (theta0, eps_prime) = theta0_and_eps_prime(params);
            let (n, _) = n0_and_eps(params.effective());
            ((theta0, n), eps_prime)
        }
    };
    assert_eq!(
        2 * ci_type.0 * ci_type.1,
        d + residual_degree,
        "complete intersection degree identity fails at {params}"
    );
    LinkageDescriptor {
        ci_type,
        residual_degree,
        residual_on_quadric_surface: true,
        acm_residual: true,
    }
}

/// Everything known about the genus of curves with invariants `(d, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: i64,
    pub k: i64,
    pub regime: Regime,
    pub invariants: InvariantSet,
    /// `pi(d, k)`, or `pi(d, theta0)` in the small-degree regime.
    pub pi_value: i64,
    pub xi_value: i64,
    /// Proved upper bound for `g - 1`.
    pub bound_g_minus_1: i64,
    /// `g - 1` of class-S curves.
    pub capital_pi: i64,
    pub sharp: Sharpness,
    pub linkage: LinkageDescriptor,
    /// Bound under the extra hypothesis that the hyperplane section lies on no
    /// curve of type `k - 1`; present only for `k^2 < d <= 2k(k-1)`.
    pub no_small_curve_bound: Option<i64>,
}

pub fn genus_bound(params: CurveParams) -> BoundReport {
    let eff = params.effective();
    let pi_value = pi(eff).expect("effective params are large-degree");
    let xi_value = xi(eff).expect("effective params are large-degree");
    let no_small_curve_bound = params
        .admits_no_small_curve_regime()
        .then(|| bound_no_small_curve(params).expect("checked regime"));
    BoundReport {
        d: params.d(),
        k: params.k(),
        regime: params.regime(),
        invariants: InvariantSet::of(params),
        pi_value,
        xi_value,
        bound_g_minus_1: pi_value - xi_value,
        capital_pi: capital_pi(eff).expect("effective params are large-degree"),
        sharp: sharpness(params),
        linkage: linkage_descriptor(params),
        no_small_curve_bound,
    }
}

impl BoundReport {
    pub fn params(&self) -> CurveParams {
        CurveParams::new(self.d, self.k).expect("report built from valid params")
    }
}
