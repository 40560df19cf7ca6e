//! Multiple generalized Euler numbers attached to a character, partial zeta values
//! at negative integers and `l_r(-n, χ)`, as exact elements of Q(ζ_m).
//!
//! All tuple sums run over `r`-tuples `(a_1, ..., a_r)` with `a_i ∈ {1..F}`, which is
//! what expanding the generating function
//!
//! ```text
//! 2^r Σ_{a_i=1}^{f} (-1)^{Σa} χ(Σa) e^{tΣa} / (e^{ft} + 1)^r = Σ E_{n,χ}^{(r)} t^n / n!
//! ```
//!
//! termwise produces. [`TupleRange::ZeroToFMinusOne`] is kept for comparison only.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::DirichletCharacter;
use crate::cyclotomic::CycElem;
use crate::error::{domain, Result};
use crate::euler::{eval_polynomial, EulerTable};
use crate::rational::{binomial_rows, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TupleRange {
    /// `a_i ∈ {1, ..., F}`.
    #[default]
    OneToF,
    /// `a_i ∈ {0, ..., F-1}`.
    ZeroToFMinusOne,
}

impl TupleRange {
    fn bounds(self, big_f: u64) -> (u64, u64) {
        match self {
            TupleRange::OneToF => (1, big_f),
            TupleRange::ZeroToFMinusOne => (0, big_f - 1),
        }
    }
}

/// Parameters of `l_r(-n, χ)` evaluated through modulus `F`.
#[derive(Clone, Debug)]
pub struct LNegQuery {
    pub n: usize,
    pub r: u32,
    pub chi: DirichletCharacter,
    pub big_f: u64,
}

impl LNegQuery {
    pub fn new(n: usize, r: u32, chi: DirichletCharacter, big_f: u64) -> Result<Self> {
        validate(r, &chi, big_f)?;
        Ok(LNegQuery { n, r, chi, big_f })
    }
}

fn validate(r: u32, chi: &DirichletCharacter, big_f: u64) -> Result<()> {
    if r == 0 {
        return domain("order r must be at least 1");
    }
    if big_f == 0 || big_f.is_multiple_of(2) {
        return domain(format!("F = {big_f} must be odd and positive"));
    }
    if !big_f.is_multiple_of(chi.modulus()) {
        return domain(format!("F = {big_f} is not a multiple of f = {}", chi.modulus()));
    }
    Ok(())
}

fn sign(s: u64) -> Rational {
    if s.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Number of `r`-tuples with entries in `[lo, hi]` summing to each `S ∈ 0..=r*hi`.
pub fn composition_counts(r: u32, lo: u64, hi: u64) -> Vec<BigInt> {
    let len = (r as u64 * hi + 1) as usize;
    let mut counts = vec![BigInt::zero(); len];
    counts[0] = BigInt::one();
    for _ in 0..r {
        let mut next = vec![BigInt::zero(); len];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for a in lo..=hi {
                let t = s + a as usize;
                if t < len {
                    next[t] += c;
                }
            }
        }
        counts = next;
    }
    counts
}

/// Accumulates `q·χ(a)` into per-exponent buckets; turns them into a `CycElem` at the end.
struct CharSum<'a> {
    chi: &'a DirichletCharacter,
    buckets: Vec<Rational>,
}

impl<'a> CharSum<'a> {
    fn new(chi: &'a DirichletCharacter) -> Self {
        CharSum {
            chi,
            buckets: vec![Rational::zero(); chi.order() as usize],
        }
    }

    fn add(&mut self, a: u64, q: Rational) {
        if let Some(k) = self.chi.value_exponent(a as i64) {
            self.buckets[k as usize] += q;
        }
    }

    fn finish(self) -> CycElem {
        let m = self.chi.order();
        let mut out = CycElem::zero(m);
        for (k, q) in self.buckets.iter().enumerate() {
            if !q.is_zero() {
                out.add_zeta_multiple(k as u64, q);
            }
        }
        out
    }
}

/// `E_{n,χ}^{(r)} = F^n Σ_{tuples} χ(Σa) (-1)^{Σa} E_n^{(r)}(Σa / F)`, enumerating every
/// tuple explicitly.
pub fn generalized_euler_number(
    n: usize,
    r: u32,
    chi: &DirichletCharacter,
    big_f: u64,
) -> Result<CycElem> {
    generalized_euler_number_with(n, r, chi, big_f, TupleRange::OneToF)
}

pub fn generalized_euler_number_with(
    n: usize,
    r: u32,
    chi: &DirichletCharacter,
    big_f: u64,
    range: TupleRange,
) -> Result<CycElem> {
    validate(r, chi, big_f)?;
    let numbers = EulerTable::global().prefix(r, n)?;
    let (lo, hi) = range.bounds(big_f);
    let f_rat = Rational::from_integer(big_f.into());
    let mut poly_at: HashMap<u64, Rational> = HashMap::new();
    let mut acc = CharSum::new(chi);
    let mut tuple = vec![lo; r as usize];
    loop {
        let s: u64 = tuple.iter().sum();
        let value = poly_at
            .entry(s)
            .or_insert_with(|| {
                eval_polynomial(&numbers, n, &(Rational::from_integer(s.into()) / &f_rat))
            })
            .clone();
        acc.add(s, sign(s) * value);
        // odometer over [lo, hi]^r
        let mut i = 0;
        loop {
            if i == tuple.len() {
                let scale = Rational::from_integer(num_traits::pow(BigInt::from(big_f), n));
                return Ok(acc.finish().scale(&scale));
            }
            if tuple[i] < hi {
                tuple[i] += 1;
                break;
            }
            tuple[i] = lo;
            i += 1;
        }
    }
}

/// `E_{0,χ}^{(r)}, ..., E_{n_max,χ}^{(r)}` read off the generating function by series
/// arithmetic over Q(ζ_m), summing the numerator over all `f^r` tuples.
pub fn gf_oracle_generalized(
    n_max: usize,
    r: u32,
    chi: &DirichletCharacter,
) -> Result<Vec<CycElem>> {
    if r == 0 {
        return domain("order r must be at least 1");
    }
    let f = chi.modulus();
    let m = chi.order();
    let mut numerator = TruncatedSeries::constant(CycElem::zero(m), n_max);
    let mut tuple = vec![1u64; r as usize];
    'tuples: loop {
        let s: u64 = tuple.iter().sum();
        let coeff = chi.evaluate(s as i64).scale(&sign(s));
        if !coeff.is_zero() {
            let exp = TruncatedSeries::exp_linear(&Rational::from_integer(s.into()), n_max).lift(m);
            let term = TruncatedSeries::constant(coeff, n_max).mul(&exp);
            numerator = numerator.add(&term);
        }
        let mut i = 0;
        loop {
            if i == tuple.len() {
                break 'tuples;
            }
            if tuple[i] < f {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 1;
            i += 1;
        }
    }
    let one = TruncatedSeries::constant(Rational::one(), n_max);
    let e_ft = TruncatedSeries::exp_linear(&Rational::from_integer(f.into()), n_max);
    let denominator = e_ft.add(&one).pow(r).inverse()?;
    let two_r = Rational::from_integer(num_traits::pow(BigInt::from(2), r as usize));
    let gf = numerator.mul(&denominator.lift(m)).scale(&two_r);
    Ok(gf.egf_coeffs())
}

fn check_tuple(a_tuple: &[u64], big_f: u64) -> Result<()> {
    if a_tuple.is_empty() {
        return domain("residue tuple must be non-empty");
    }
    if big_f == 0 || big_f.is_multiple_of(2) {
        return domain(format!("F = {big_f} must be odd and positive"));
    }
    if a_tuple.iter().any(|&a| a == 0 || a > big_f) {
        return domain(format!("residues {a_tuple:?} must lie in 1..={big_f}"));
    }
    Ok(())
}

/// `T_r(-n; a_1..a_r | F) = F^n (-1)^{Σa} E_n^{(r)}(Σa / F)`.
pub fn partial_zeta_neg(n: usize, a_tuple: &[u64], big_f: u64) -> Result<Rational> {
    check_tuple(a_tuple, big_f)?;
    let r = a_tuple.len() as u32;
    let s: u64 = a_tuple.iter().sum();
    let numbers = EulerTable::global().prefix(r, n)?;
    let x = Rational::new(s.into(), big_f.into());
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(big_f), n));
    Ok(sign(s) * scale * eval_polynomial(&numbers, n, &x))
}

/// The binomial-series form of the partial zeta function at `s = -n`:
/// `(-1)^{Σa} (Σa)^n Σ_{k=0}^{n} C(n,k) (F/Σa)^k E_k^{(r)}`, finite because `C(n,k)`
/// vanishes for `k > n`.
pub fn partial_zeta_binomial_form(n: usize, a_tuple: &[u64], big_f: u64) -> Result<Rational> {
    check_tuple(a_tuple, big_f)?;
    let r = a_tuple.len() as u32;
    let s: u64 = a_tuple.iter().sum();
    Ok(sign(s) * binomial_block(n, r, s, big_f)?)
}

/// `(Σa)^n Σ_{k≤n} C(n,k) (F/Σa)^k E_k^{(r)}`.
fn binomial_block(n: usize, r: u32, s: u64, big_f: u64) -> Result<Rational> {
    let numbers = EulerTable::global().prefix(r, n)?;
    let binom = binomial_rows(n);
    let ratio = Rational::new(big_f.into(), s.into());
    let mut ratio_k = Rational::one();
    let mut inner = Rational::zero();
    for k in 0..=n {
        if k > 0 {
            ratio_k *= &ratio;
        }
        inner += &ratio_k * &numbers[k] * Rational::from_integer(binom[n][k].clone());
    }
    Ok(inner * num_traits::pow(Rational::from_integer(s.into()), n))
}

/// `l_r(-n, χ) = Σ_{tuples} χ(Σa) T_r(-n; a | F)`, grouping tuples by their sum.
pub fn l_value_neg(q: &LNegQuery) -> Result<CycElem> {
    validate(q.r, &q.chi, q.big_f)?;
    let counts = composition_counts(q.r, 1, q.big_f);
    let mut acc = CharSum::new(&q.chi);
    let numbers = EulerTable::global().prefix(q.r, q.n)?;
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(q.big_f), q.n));
    for (s, count) in counts.iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let s = s as u64;
        let x = Rational::new(s.into(), q.big_f.into());
        let t = sign(s) * &scale * eval_polynomial(&numbers, q.n, &x);
        acc.add(s, t * Rational::from_integer(count.clone()));
    }
    Ok(acc.finish())
}

/// `l_r(-n, χ)` through the finite binomial-series expansion at `s = -n`.
pub fn l_value_neg_binomial(q: &LNegQuery) -> Result<CycElem> {
    validate(q.r, &q.chi, q.big_f)?;
    let counts = composition_counts(q.r, 1, q.big_f);
    let mut acc = CharSum::new(&q.chi);
    for (s, count) in counts.iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let s = s as u64;
        let block = binomial_block(q.n, q.r, s, q.big_f)?;
        acc.add(s, sign(s) * block * Rational::from_integer(count.clone()));
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use crate::euler::euler_number;
    use crate::rational::{int, rat};

    fn quad3() -> DirichletCharacter {
        DirichletCharacter::from_index(3, 1).unwrap()
    }

    fn value(x: &CycElem) -> Rational {
        x.as_rational().expect("rational value").clone()
    }

    #[test]
    fn generalized_examples() {
        let chi = quad3();
        assert_eq!(value(&generalized_euler_number(0, 1, &chi, 3).unwrap()), int(-2));
        assert_eq!(value(&generalized_euler_number(2, 1, &chi, 3).unwrap()), int(4));
        assert_eq!(value(&generalized_euler_number(0, 1, &chi, 15).unwrap()), int(-2));
        assert!(generalized_euler_number(0, 1, &chi, 6).is_err());
        assert!(generalized_euler_number(0, 1, &chi, 5).is_err());
        assert!(generalized_euler_number(0, 0, &chi, 3).is_err());
    }

    #[test]
    fn oracle_examples() {
        let trivial = DirichletCharacter::trivial(1).unwrap();
        let gf = gf_oracle_generalized(8, 1, &trivial).unwrap();
        // n >= 1 reproduces E_n; the constant term is -1 = -2 + E_0 since the
        // numerator is -2e^t rather than 2.
        assert_eq!(value(&gf[0]), int(-1));
        for (n, v) in gf.iter().enumerate().skip(1) {
            assert_eq!(value(v), euler_number(n));
        }
        let chi = quad3();
        assert_eq!(value(&gf_oracle_generalized(0, 1, &chi).unwrap()[0]), int(-2));
        let gf2 = gf_oracle_generalized(6, 2, &chi).unwrap();
        for big_f in [3, 9, 15] {
            for (n, want) in gf2.iter().enumerate() {
                assert_eq!(&generalized_euler_number(n, 2, &chi, big_f).unwrap(), want);
            }
        }
    }

    #[test]
    fn zero_based_range_differs_for_higher_order() {
        let chi = quad3();
        let gf = gf_oracle_generalized(4, 2, &chi).unwrap();
        let zero_based: Vec<CycElem> = (0..=4)
            .map(|n| generalized_euler_number_with(n, 2, &chi, 3, TupleRange::ZeroToFMinusOne).unwrap())
            .collect();
        assert_ne!(zero_based, gf);
        // r = 1 with f > 1: the endpoints carry χ = 0 and the ranges agree.
        for n in 0..5 {
            assert_eq!(
                generalized_euler_number_with(n, 1, &chi, 3, TupleRange::ZeroToFMinusOne).unwrap(),
                generalized_euler_number(n, 1, &chi, 3).unwrap()
            );
        }
    }

    #[test]
    fn partial_zeta_examples() {
        for tuple in [vec![1u64], vec![2, 3], vec![5, 5, 1]] {
            let s: u64 = tuple.iter().sum();
            let want = if s.is_multiple_of(2) { int(1) } else { int(-1) };
            assert_eq!(partial_zeta_neg(0, &tuple, 5).unwrap(), want);
        }
        assert_eq!(partial_zeta_neg(1, &[1], 3).unwrap(), rat(1, 2));
        assert!(partial_zeta_neg(1, &[0], 3).is_err());
        assert!(partial_zeta_neg(1, &[4], 3).is_err());
        for n in 0..=6 {
            for tuple in [vec![1u64], vec![2], vec![1, 3], vec![3, 3]] {
                assert_eq!(
                    partial_zeta_neg(n, &tuple, 3).unwrap(),
                    partial_zeta_binomial_form(n, &tuple, 3).unwrap()
                );
            }
        }
    }

    #[test]
    fn l_value_examples() {
        let chi = quad3();
        let q = LNegQuery::new(2, 1, chi.clone(), 3).unwrap();
        assert_eq!(value(&l_value_neg(&q).unwrap()), int(4));
        for big_f in [3, 9, 15, 21] {
            let q = LNegQuery::new(0, 1, chi.clone(), big_f).unwrap();
            assert_eq!(value(&l_value_neg(&q).unwrap()), int(-2));
        }
        let trivial = DirichletCharacter::trivial(1).unwrap();
        let q = LNegQuery::new(3, 1, trivial, 1).unwrap();
        assert_eq!(value(&l_value_neg(&q).unwrap()), rat(1, 4));
    }

    #[test]
    fn composition_counts_match_enumeration() {
        let counts = composition_counts(3, 1, 4);
        let mut brute = vec![0u64; 13];
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    brute[a + b + c] += 1;
                }
            }
        }
        let counts: Vec<u64> = counts.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(counts, brute);
    }

    #[test]
    fn routes_agree_for_order_four_characters() {
        for chi in enumerate_characters(5, true).unwrap() {
            for r in 1..=2 {
                let gf = gf_oracle_generalized(5, r, &chi).unwrap();
                for (n, want) in gf.iter().enumerate() {
                    let q = LNegQuery::new(n, r, chi.clone(), 15).unwrap();
                    assert_eq!(&l_value_neg(&q).unwrap(), want);
                    assert_eq!(&l_value_neg_binomial(&q).unwrap(), want);
                }
            }
        }
    }
}
