//! Numerically careful primitives used across the measures.

/// `log(sum_i exp(-beta * l_i))`, shifted by the minimum duration so the
/// exponentials never overflow for large `beta * l`.
pub fn log_sum_exp_neg(beta: f64, durations: &[f64]) -> f64 {
    let min = durations.iter().cloned().fold(f64::INFINITY, f64::min);
    let sum: f64 = durations.iter().map(|&l| (-beta * (l - min)).exp()).sum();
    -beta * min + sum.ln()
}

/// `log(1 - exp(-z))` for `z > 0`.
///
/// Small-z branch via `log(-expm1(-z))` avoids catastrophic cancellation;
/// large-z branch via `ln_1p(-exp(-z))` underflows gracefully to 0.
pub fn ln_one_minus_exp_neg(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    if z <= std::f64::consts::LN_2 {
        (-(-z).exp_m1()).ln()
    } else {
        (-(-z).exp()).ln_1p()
    }
}

/// `p * log(p)` with the entropy limit convention `0 * log(0) = 0`.
pub fn xlogx(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * p.ln()
    }
}

/// `1 - exp(-z)` without cancellation for small `z`.
pub fn one_minus_exp_neg(z: f64) -> f64 {
    -(-z).exp_m1()
}
