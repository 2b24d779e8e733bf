//! Compensated (Neumaier) floating-point summation.
//!
//! The series evaluated in this crate alternate in sign and cancel heavily
//! for moderate arguments; a running compensation term recovers the bits an
//! ordinary `+=` would drop.

/// Neumaier-compensated accumulator.
///
/// Unlike plain Kahan summation this variant stays correct when the
/// incoming term is larger than the running sum, which happens routinely
/// at the front of an alternating series.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Start from an exactly known head value (e.g. a closed-form constant).
    pub fn from_value(v: f64) -> Self {
        Self { sum: v, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        // naive summation would return exactly 1.0
        assert!((s.value() - (1.0 + 1e-16)).abs() < 5e-17);
    }

    #[test]
    fn handles_large_incoming_terms() {
        let mut s = KahanSum::new();
        s.add(1e-17);
        s.add(1.0);
        s.add(-1.0);
        assert_eq!(s.value(), 1e-17);
    }

    #[test]
    fn alternating_exponential() {
        // e^-12 by brute series: heavy cancellation, the compensated
        // error stays near the rounding of the individual terms.
        let mut s = KahanSum::new();
        let mut term = 1.0_f64;
        for j in 1..=80 {
            s.add(term);
            term *= -12.0 / j as f64;
        }
        let exact = (-12.0_f64).exp();
        assert!((s.value() - exact).abs() < 1e-10, "err {}", (s.value() - exact).abs());
    }
}
