//! Bessel J₀ by its power series, and its first positive zero by bisection.
//! The series converges absolutely for all x and loses no precision for the
//! small arguments used here (x < 10).

/// J₀(x) = Σ (−1)^m (x/2)^{2m} / (m!)².
pub fn j0(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..200u32 {
        term *= q / ((m as f64) * (m as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

/// Smallest positive zero of J₀ (≈ 2.4048255576957730) by bisection on
/// [2, 3], where J₀ changes sign.
pub fn first_j0_zero() -> f64 {
    let mut a = 2.0f64;
    let mut b = 3.0f64;
    debug_assert!(j0(a) > 0.0 && j0(b) < 0.0);
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if j0(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
