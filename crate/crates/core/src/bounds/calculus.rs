use super::quadrature::beta_kernel;
use super::{BoundCheck, Context, Relation};

/// t = 1, 2, 4, ..., 4096.
pub const CALCULUS_T_VALUES: [u64; 13] = [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096];

/// ∫_0^1 (1−λ)^t λ^{−1/2} dλ ≤ 1.8/√t.
pub fn check_calc_aux(times: &[u64]) -> Vec<BoundCheck> {
    times
        .iter()
        .map(|&t| {
            BoundCheck::new(
                "sqrt_kernel_integral",
                "int_0^1 (1-l)^t l^(-1/2) dl <= 1.8/sqrt(t)",
                beta_kernel(t, 0.5),
                1.8 / (t as f64).sqrt(),
                Relation::Le,
                Context::default().t(t),
            )
        })
        .collect()
}

/// (4000^{1/3}/3) ∫_0^1 (1−λ)^t λ^{−2/3} dλ ≤ 15/t^{1/3}.
pub fn check_avg_clc(times: &[u64]) -> Vec<BoundCheck> {
    times
        .iter()
        .map(|&t| {
            BoundCheck::new(
                "cube_root_kernel_integral",
                "(4000^(1/3)/3) int_0^1 (1-l)^t l^(-2/3) dl <= 15/t^(1/3)",
                4000f64.cbrt() / 3.0 * beta_kernel(t, 2.0 / 3.0),
                15.0 / (t as f64).cbrt(),
                Relation::Le,
                Context::default().t(t),
            )
        })
        .collect()
}
