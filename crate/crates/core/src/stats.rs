//! Run aggregation and independent-error propagation.

use num_traits::Float;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// A value with its standard deviation (or standard error).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Estimate {
    pub value: f64,
    pub std: f64,
}

impl Estimate {
    pub fn new(value: f64, std: f64) -> Estimate {
        Estimate { value, std }
    }

    pub fn exact(value: f64) -> Estimate {
        Estimate { value, std: 0.0 }
    }

    pub fn scaled(self, factor: f64) -> Estimate {
        Estimate {
            value: self.value * factor,
            std: self.std * factor.abs(),
        }
    }

    /// `|self - target|` measured in standard deviations (infinite when std is 0
    /// and the values differ).
    pub fn sigmas_from(self, target: f64) -> f64 {
        let d = (self.value - target).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std
        }
    }
}

/// Mean and sample (n-1) standard deviation. A single run has std 0.
pub fn aggregate(values: &[f64]) -> Estimate {
    let n = values.len();
    if n == 0 {
        return Estimate::new(f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Estimate::exact(mean);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    Estimate::new(mean, Float::sqrt(var))
}

/// Sum of independent terms: values add, variances add.
pub fn error_propagation(terms: &[Estimate]) -> Estimate {
    let value = terms.iter().map(|t| t.value).sum();
    let var: f64 = terms.iter().map(|t| t.std * t.std).sum();
    Estimate::new(value, Float::sqrt(var))
}

/// Standard error of a ±1 parity estimator with mean `expectation` over `shots`.
pub fn parity_standard_error(expectation: f64, shots: u64) -> f64 {
    Float::sqrt((1.0 - expectation * expectation).max(0.0) / shots as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_examples() {
        assert_eq!(aggregate(&[1.0, 1.0, 1.0]), Estimate::new(1.0, 0.0));
        let e = aggregate(&[0.0, 2.0]);
        assert_eq!(e.value, 1.0);
        assert!((e.std - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(aggregate(&[0.3]), Estimate::exact(0.3));
    }

    #[test]
    fn propagation_examples() {
        // |P(a,b) - P(a,c)| - P(b,c) with the three measured correlators.
        let (ab, ac, bc) = (
            Estimate::new(-0.392, 0.014),
            Estimate::new(0.401, 0.009),
            Estimate::new(-0.389, 0.012),
        );
        let s = error_propagation(&[
            Estimate::new((ab.value - ac.value).abs(), ab.std),
            Estimate::new(0.0, ac.std),
            bc.scaled(-1.0),
        ]);
        assert!((s.value - 1.182).abs() < 1e-12);
        assert!((s.std - 0.0205).abs() < 5e-4);
        assert!((s.std - 0.020).abs() < 1e-3);

        assert_eq!(error_propagation(&[Estimate::new(0.5, 0.1)]), Estimate::new(0.5, 0.1));
        let z = error_propagation(&[Estimate::exact(0.25), Estimate::exact(0.5)]);
        assert_eq!(z, Estimate::new(0.75, 0.0));
    }

    #[test]
    fn parity_error() {
        assert_eq!(parity_standard_error(1.0, 100), 0.0);
        assert!((parity_standard_error(0.0, 100) - 0.1).abs() < 1e-15);
    }
}
