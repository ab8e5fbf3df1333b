//! Shared inputs for the benchmarks.

use quadric_genus::{ConstraintProfile, CurveParams};

/// Every `(d, k)` with `k <= k_max` and `d <= d_max`.
pub fn grid(k_max: i64, d_max: i64) -> Vec<CurveParams> {
    (1..=k_max)
        .flat_map(|k| (1..=d_max).map(move |d| CurveParams::new(d, k).expect("positive")))
        .collect()
}

/// Profile of the regime each cell falls in.
pub fn profiles(k_max: i64, d_max: i64) -> Vec<ConstraintProfile> {
    grid(k_max, d_max)
        .into_iter()
        .map(|p| ConstraintProfile::for_params(p).expect("valid params"))
        .collect()
}
