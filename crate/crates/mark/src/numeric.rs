//! Small shared quadrature helpers.

/// Trapezoid rule over matched sample vectors. Panics on length mismatch;
/// callers guarantee equal lengths >= 2.
pub(crate) fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]) * 0.5;
    }
    acc
}

/// Trapezoid rule on a uniform grid with spacing `dx`.
pub(crate) fn trapezoid_uniform(ys: &[f64], dx: f64) -> f64 {
    let n = ys.len();
    if n < 2 {
        return 0.0;
    }
    let interior: f64 = ys[1..n - 1].iter().sum();
    dx * (interior + 0.5 * (ys[0] + ys[n - 1]))
}
