use crate::polyengine::Poly;
use crate::scalar::Scalar;

/// Power series in `t` truncated after `t^order`, with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<T> {
    terms: Vec<Poly<T>>,
}

impl<T: Scalar> TSeries<T> {
    pub fn one(order: usize) -> Self {
        let mut terms = vec![Poly::zero(); order + 1];
        terms[0] = Poly::constant(T::one());
        Self { terms }
    }

    /// Series with the given leading terms, padded with zeros up to `order`.
    pub fn from_terms(mut terms: Vec<Poly<T>>, order: usize) -> Self {
        terms.resize(order + 1, Poly::zero());
        Self { terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly<T> {
        &self.terms[k]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut terms = vec![Poly::zero(); order + 1];
        for (i, a) in self.terms.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.terms.iter().enumerate().take(order + 1 - i) {
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        Self { terms }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let terms = (0..=order).map(|k| &self.terms[k] + &rhs.terms[k]).collect();
        Self { terms }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            terms: self.terms.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// `(1 + self)^alpha` by the binomial series. Requires a vanishing
    /// constant term so that `self^k` starts at `t^k` and the sum is finite.
    pub fn binomial_power(&self, alpha: &T) -> Self {
        assert!(self.terms[0].is_zero(), "binomial series needs u(0) = 0");
        let order = self.order();
        let mut total = Self::one(order);
        let mut power = Self::one(order);
        let mut binom = T::one();
        for k in 1..=order {
            power = power.mul(self);
            binom = binom * (alpha.clone() - T::from_usize(k - 1)) / T::from_usize(k);
            total = total.add(&power.scale(&binom));
        }
        total
    }
}
