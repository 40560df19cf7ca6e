//! Euler numbers `E_n`, multiple Euler numbers `E_n^{(r)}` and multiple Euler
//! polynomials `E_n^{(r)}(x)`, defined by
//!
//! ```text
//! (2 / (e^t + 1))^r e^{xt} = Σ E_n^{(r)}(x) t^n / n!
//! ```
//!
//! Values are exact rationals. Two independent routes compute `E_n^{(r)}` (binomial
//! convolution over `r` and a recurrence from multiplying through by `(e^t + 1)^r`),
//! and the series engine gives a third.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::rational::{binomial_rows, int, Rational};
use crate::series::TruncatedSeries;

/// Memo of `E_n^{(r)}`, stored as one prefix vector per order `r`.
#[derive(Debug, Default)]
pub struct EulerTable {
    rows: RwLock<HashMap<u32, Vec<Rational>>>,
}

impl EulerTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide table shared by the l-value computations.
    pub fn global() -> &'static EulerTable {
        static TABLE: OnceLock<EulerTable> = OnceLock::new();
        TABLE.get_or_init(EulerTable::new)
    }

    /// `E_0^{(r)}, ..., E_{n_max}^{(r)}`.
    pub fn prefix(&self, r: u32, n_max: usize) -> Result<Vec<Rational>> {
        if r == 0 {
            return domain("multiple Euler numbers need order r >= 1");
        }
        if let Some(row) = self.rows.read().expect("euler table poisoned").get(&r) {
            if row.len() > n_max {
                return Ok(row[..=n_max].to_vec());
            }
        }
        let row = if r == 1 {
            euler_prefix(n_max)
        } else {
            let lower = self.prefix(r - 1, n_max)?;
            let base = self.prefix(1, n_max)?;
            convolve(&lower, &base)
        };
        let mut rows = self.rows.write().expect("euler table poisoned");
        let slot = rows.entry(r).or_default();
        if slot.len() < row.len() {
            *slot = row.clone();
        }
        Ok(row)
    }

    pub fn get(&self, n: usize, r: u32) -> Result<Rational> {
        Ok(self.prefix(r, n)?.swap_remove(n))
    }
}

/// `E_0..=E_{n_max}` from `E_n = -(1/2) Σ_{k<n} C(n,k) E_k`.
fn euler_prefix(n_max: usize) -> Vec<Rational> {
    let binom = binomial_rows(n_max);
    let half = Rational::new(BigInt::from(-1), BigInt::from(2));
    let mut out: Vec<Rational> = Vec::with_capacity(n_max + 1);
    out.push(Rational::one());
    for n in 1..=n_max {
        let s: Rational = (0..n)
            .map(|k| &out[k] * Rational::from_integer(binom[n][k].clone()))
            .sum();
        out.push(s * &half);
    }
    out
}

/// Binomial convolution: EGF product of two coefficient sequences.
fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n_max = a.len().min(b.len()) - 1;
    let binom = binomial_rows(n_max);
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| &a[k] * &b[n - k] * Rational::from_integer(binom[n][k].clone()))
                .sum()
        })
        .collect()
}

pub fn euler_number(n: usize) -> Rational {
    EulerTable::global().get(n, 1).expect("order 1 is valid")
}

/// `E_n^{(r)}` through the memoized convolution route.
pub fn euler_number_multi(n: usize, r: u32) -> Result<Rational> {
    EulerTable::global().get(n, r)
}

/// `E_n^{(r)}` through `2^r E_n^{(r)} = -Σ_{k<n} C(n,k) E_k^{(r)} S_{n-k}`, with
/// `S_j = Σ_{i=0}^{r} C(r,i) i^j` and `0^0 = 1`. Independent of the memo table.
pub fn euler_numbers_multi_recurrence(n_max: usize, r: u32) -> Result<Vec<Rational>> {
    if r == 0 {
        return domain("multiple Euler numbers need order r >= 1");
    }
    let binom = binomial_rows(n_max.max(r as usize));
    let power_sums: Vec<BigInt> = (0..=n_max)
        .map(|j| {
            (0..=r as usize)
                .map(|i| &binom[r as usize][i] * num_traits::pow(BigInt::from(i), j))
                .sum()
        })
        .collect();
    let two_r = Rational::from_integer(num_traits::pow(BigInt::from(2), r as usize));
    let mut out: Vec<Rational> = Vec::with_capacity(n_max + 1);
    out.push(Rational::one());
    for n in 1..=n_max {
        let s: Rational = (0..n)
            .map(|k| &out[k] * Rational::from_integer(&binom[n][k] * &power_sums[n - k]))
            .sum();
        out.push(-s / &two_r);
    }
    Ok(out)
}

/// `E_n^{(r)}(x) = Σ_l C(n,l) E_l^{(r)} x^{n-l}`.
pub fn euler_polynomial_multi(n: usize, r: u32, x: &Rational) -> Result<Rational> {
    let numbers = EulerTable::global().prefix(r, n)?;
    Ok(eval_polynomial(&numbers, n, x))
}

/// Evaluates `E_n^{(r)}(x)` from a precomputed prefix `E_0^{(r)}..=E_n^{(r)}`.
pub(crate) fn eval_polynomial(numbers: &[Rational], n: usize, x: &Rational) -> Rational {
    // Horner in x over the coefficients C(n,l) E_{n-l}^{(r)} of x^l.
    let mut acc = Rational::zero();
    let mut binom = BigInt::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    for l in 0..=n {
        if l > 0 {
            binom = binom * BigInt::from(n - l + 1) / BigInt::from(l);
        }
        coeffs.push(&numbers[n - l] * Rational::from_integer(binom.clone()));
    }
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `E_0^{(r)}(x)..=E_{n_max}^{(r)}(x)` by series arithmetic on
/// `2^r (e^t + 1)^{-r} e^{xt}`.
pub fn series_expand_multi(n_max: usize, r: u32, x: &Rational) -> Result<Vec<Rational>> {
    if r == 0 {
        return domain("multiple Euler numbers need order r >= 1");
    }
    let e_t = TruncatedSeries::exp_linear(&int(1), n_max);
    let one = TruncatedSeries::constant(int(1), n_max);
    let denom = e_t.add(&one).pow(r);
    let two_r = Rational::from_integer(num_traits::pow(BigInt::from(2), r as usize));
    let gf = denom
        .inverse()?
        .scale(&two_r)
        .mul(&TruncatedSeries::exp_linear(x, n_max));
    Ok(gf.egf_coeffs())
}
