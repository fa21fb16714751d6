//! The single absolute/relative tolerance pair used for scalar comparisons.

/// Absolute + relative tolerance pair, defaults `(1e-10, 1e-10)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    /// `|a - b| <= abs + rel * max(|a|, |b|)`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }

    /// `|x| <= abs + rel * scale`.
    pub fn small(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.abs + self.rel * scale.abs()
    }
}
