use crate::polyengine::Poly;
use crate::scalar::Scalar;

/// The non-polynomial factor of a [`WeightedFunction`].
#[derive(Clone, Debug, PartialEq)]
pub enum Envelope<T> {
    /// `(1 + lam u^2)^a`
    Power { lam: T, a: T },
    /// `exp(-rate u^2)`, the flat limit of the power envelope.
    Gaussian { rate: T },
}

/// `u -> p(u) * envelope(u)`.
///
/// Closed under differentiation, which is what makes Rodrigues formulas and
/// ODE residuals exact computations on coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFunction<T> {
    pub p: Poly<T>,
    pub envelope: Envelope<T>,
}

impl<T: Scalar> WeightedFunction<T> {
    pub fn power(p: Poly<T>, lam: T, a: T) -> Self {
        Self {
            p,
            envelope: Envelope::Power { lam, a },
        }
    }

    pub fn gaussian(p: Poly<T>, rate: T) -> Self {
        Self {
            p,
            envelope: Envelope::Gaussian { rate },
        }
    }

    /// Exponent of the power envelope, if any.
    pub fn exponent(&self) -> Option<&T> {
        match &self.envelope {
            Envelope::Power { a, .. } => Some(a),
            Envelope::Gaussian { .. } => None,
        }
    }

    /// Exact derivative.
    ///
    /// `d/du [p W^a] = (p' W + 2 lam a u p) W^(a-1)`; a bare polynomial
    /// (`a = 0`) stays a bare polynomial.
    pub fn differentiate(&self) -> Self {
        match &self.envelope {
            Envelope::Power { a, .. } if a.is_zero() => Self {
                p: self.p.derivative(),
                envelope: self.envelope.clone(),
            },
            Envelope::Power { .. } => self.derivative_raw(),
            Envelope::Gaussian { rate } => {
                let two = T::from_i64(2);
                let q = &self.p.derivative() - &self.p.shift().scale(&(two * rate.clone()));
                Self::gaussian(q, rate.clone())
            }
        }
    }

    /// Derivative that always lowers the power exponent by one, even when
    /// `a = 0`. Rodrigues formulas rely on the exponent bookkeeping being
    /// uniform.
    pub fn derivative_raw(&self) -> Self {
        match &self.envelope {
            Envelope::Power { lam, a } => {
                let w = Poly::weight_factor(lam);
                let two = T::from_i64(2);
                let first = &self.p.derivative() * &w;
                let second = self.p.shift().scale(&(two * lam.clone() * a.clone()));
                Self::power(&first + &second, lam.clone(), a.clone() - T::one())
            }
            Envelope::Gaussian { .. } => self.differentiate(),
        }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.differentiate())
    }

    pub fn to_f64(&self) -> WeightedFunction<f64> {
        let envelope = match &self.envelope {
            Envelope::Power { lam, a } => Envelope::Power {
                lam: lam.to_f64(),
                a: a.to_f64(),
            },
            Envelope::Gaussian { rate } => Envelope::Gaussian { rate: rate.to_f64() },
        };
        WeightedFunction {
            p: self.p.to_f64(),
            envelope,
        }
    }
}

impl WeightedFunction<f64> {
    /// Pointwise value. Falls back to log space when the envelope alone
    /// would overflow or underflow.
    pub fn eval(&self, u: f64) -> f64 {
        let p = self.p.evalf(u);
        if p == 0.0 {
            return 0.0;
        }
        let log_env = match self.envelope {
            Envelope::Power { lam, a } => {
                let w = 1.0 + lam * u * u;
                if w <= 0.0 {
                    return if a > 0.0 { 0.0 } else { f64::NAN };
                }
                // ln_1p keeps W^a accurate for tiny lam, where a is huge.
                let log_env = a * (lam * u * u).ln_1p();
                let direct = p * log_env.exp();
                if direct.is_finite() && direct != 0.0 {
                    return direct;
                }
                log_env
            }
            Envelope::Gaussian { rate } => {
                let direct = p * (-rate * u * u).exp();
                if direct.is_finite() && direct != 0.0 {
                    return direct;
                }
                -rate * u * u
            }
        };
        p.signum() * (p.abs().ln() + log_env).exp()
    }

    /// Value of the envelope factor alone.
    pub fn envelope_value(&self, u: f64) -> f64 {
        match self.envelope {
            Envelope::Power { lam, a } => (a * (lam * u * u).ln_1p()).exp(),
            Envelope::Gaussian { rate } => (-rate * u * u).exp(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polynomial_weight_derivative() {
        let f = WeightedFunction::power(Poly::constant(1.0), 2.0, 1.0);
        let d = f.differentiate();
        assert_eq!(d.p.coeffs(), &[0.0, 4.0]);
        assert_eq!(d.exponent(), Some(&0.0));
    }

    #[test]
    fn half_power_derivative() {
        let f = WeightedFunction::power(Poly::constant(q(1, 1)), q(1, 1), q(-1, 2));
        let d = f.differentiate();
        assert_eq!(d.p.coeffs(), &[q(0, 1), q(-1, 1)]);
        assert_eq!(d.exponent(), Some(&q(-3, 2)));
    }

    #[test]
    fn bare_polynomial_derivative() {
        let f = WeightedFunction::power(Poly::new(vec![0.0, 1.0]), 0.7, 0.0);
        let d = f.differentiate();
        assert_eq!(d.p.coeffs(), &[1.0]);
        assert_eq!(d.exponent(), Some(&0.0));
    }

    #[test]
    fn gaussian_derivative() {
        // d/du e^{-u^2/2} = -u e^{-u^2/2}
        let f = WeightedFunction::gaussian(Poly::constant(1.0), 0.5);
        assert_eq!(f.differentiate().p.coeffs(), &[0.0, -1.0]);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = WeightedFunction::power(Poly::new(vec![0.3, -1.0, 0.0, 2.0]), -0.2, 2.7);
        let d = f.differentiate();
        let h = 1e-5;
        for &u in &[-1.5, -0.2, 0.0, 0.9, 1.8] {
            let fd = (f.eval(u + h) - f.eval(u - h)) / (2.0 * h);
            assert!((fd - d.eval(u)).abs() < 1e-8 * (1.0 + d.eval(u).abs()), "u={u}");
        }
    }

    #[test]
    fn log_space_fallback() {
        // 101^-200 underflows on its own; the product does not.
        let f = WeightedFunction::power(Poly::constant(1e300), 1.0, -200.0);
        let expect = (1e300f64.ln() - 200.0 * 101f64.ln()).exp();
        assert!(expect > 0.0);
        assert!((f.eval(10.0) - expect).abs() <= 1e-12 * expect);
    }
}
