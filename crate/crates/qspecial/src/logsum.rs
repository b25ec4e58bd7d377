use num_complex::Complex64;

/// Running `log Σ e^{x_k}` over complex exponents, rescaled on the real part.
#[derive(Clone, Debug)]
pub(crate) struct LogSum {
    shift: f64,
    acc: Complex64,
    weighted: Complex64,
}

impl LogSum {
    pub fn new(shift: f64) -> Self {
        LogSum { shift, acc: Complex64::new(0.0, 0.0), weighted: Complex64::new(0.0, 0.0) }
    }

    /// Add `e^{x}` and `w·e^{x}`.
    pub fn push(&mut self, x: Complex64, w: Complex64) {
        let e = (x - self.shift).exp();
        self.acc += e;
        self.weighted += w * e;
    }

    /// `log Σ e^{x}` (any branch).
    pub fn log(&self) -> Complex64 {
        self.acc.ln() + self.shift
    }

    /// `Σ w e^{x} / Σ e^{x}`.
    pub fn weighted_mean(&self) -> Complex64 {
        self.weighted / self.acc
    }
}
