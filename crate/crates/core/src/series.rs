//! Truncated power series in `t`. Coefficients are plain `t^n` coefficients; callers
//! apply `n!` when reading off exponential generating functions.

use num_traits::{One, Zero};

use crate::cyclotomic::CycElem;
use crate::error::{domain, Result};
use crate::rational::{factorial, Rational};

pub trait SeriesCoeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
}

impl SeriesCoeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl SeriesCoeff for CycElem {
    fn zero_like(&self) -> Self {
        CycElem::zero(self.order())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rational) -> Self {
        CycElem::scale(self, q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: SeriesCoeff> TruncatedSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        TruncatedSeries { coeffs }
    }

    /// The constant series `c`, truncated at degree `n_max`.
    pub fn constant(c: T, n_max: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; n_max + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_max(), other.n_max(), "series truncated at different degrees");
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_max(), other.n_max(), "series truncated at different degrees");
        let n = self.n_max();
        let mut out = vec![self.coeffs[0].zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc: Option<Self> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(self),
            });
        }
        acc.expect("pow needs a positive exponent")
    }

    /// `n! * [t^n]`: the coefficients read as an exponential generating function.
    pub fn egf_coeffs(&self) -> Vec<T> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::from_integer(factorial(n as u64))))
            .collect()
    }
}

impl TruncatedSeries<Rational> {
    /// `e^{c t}`.
    pub fn exp_linear(c: &Rational, n_max: usize) -> Self {
        let mut coeffs = Vec::with_capacity(n_max + 1);
        let mut term = Rational::one();
        for k in 0..=n_max {
            if k > 0 {
                term = term * c / Rational::from_integer(k.into());
            }
            coeffs.push(term.clone());
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be non-zero.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return domain("series inverse needs an invertible constant term");
        }
        let inv0 = a0.recip();
        let n = self.n_max();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let s: Rational = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Coefficient-wise image in Q(ζ_m).
    pub fn lift(&self, m: u64) -> TruncatedSeries<CycElem> {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| CycElem::from_rational(m, c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn inverse_of_one_minus_t() {
        let s = TruncatedSeries::from_coeffs(vec![int(1), int(-1), int(0), int(0)]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[int(1), int(1), int(1), int(1)]);
        assert_eq!(s.mul(&inv), TruncatedSeries::constant(int(1), 3));
        let bad = TruncatedSeries::from_coeffs(vec![int(0), int(1)]);
        assert!(bad.inverse().is_err());
    }

    #[test]
    fn exponentials_multiply() {
        let a = TruncatedSeries::exp_linear(&rat(1, 3), 6);
        let b = TruncatedSeries::exp_linear(&rat(2, 3), 6);
        assert_eq!(a.mul(&b), TruncatedSeries::exp_linear(&int(1), 6));
        assert_eq!(a.pow(3), TruncatedSeries::exp_linear(&int(1), 6));
        let egf = TruncatedSeries::exp_linear(&int(2), 4).egf_coeffs();
        assert_eq!(egf, vec![int(1), int(2), int(4), int(8), int(16)]);
    }
}
