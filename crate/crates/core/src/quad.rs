//! Composite Simpson quadrature.

/// Integrates `f` over `[a, b]` with composite Simpson's rule using at least
/// `(b - a) / step` sub-intervals (rounded up to an even count).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, step: f64) -> f64 {
    let span = b - a;
    if span == 0.0 {
        return 0.0;
    }
    let mut intervals = libm::ceil(span / step) as usize;
    intervals = intervals.max(2);
    if intervals % 2 == 1 {
        intervals += 1;
    }
    simpson_n(f, a, b, intervals)
}

/// Composite Simpson with exactly `intervals` sub-intervals (must be even).
pub fn simpson_n<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    debug_assert!(intervals >= 2 && intervals.is_multiple_of(2));
    let h = (b - a) / intervals as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..intervals {
        let x = a + i as f64 * h;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b))
}
