//! The multiple p-adic l-function
//!
//! ```text
//! l_{p,r}(s, χ) = Σ χ(S) <S>^{-s} (-1)^S Σ_m C(-s, m) (F/S)^m E_m^{(r)},   S = a_1 + ... + a_r,
//! ```
//!
//! summed over tuples `a_i ∈ {1..F}` with `p ∤ S` (`<S>` is undefined otherwise), its
//! values at negative integers in terms of the twisted characters `χ_n = χ ω^{-n}`, and
//! three routes to the derivative at `s = 0`.
//!
//! Tuples only enter through their sum, so every tuple sum is evaluated over sum
//! classes `S` weighted by the number of tuples hitting `S`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith;
use crate::characters::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::euler::{eval_polynomial, EulerTable};
use crate::lvalues::composition_counts;
use crate::padic::{self, PadicContext, PadicNum};
use crate::rational::{binomial, parse_rational, Rational};

/// A point `s` of the disk of convergence. Integers are handled exactly: at `s = -n`
/// the `m`-series terminates and `<S>^n` is an honest power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SValue {
    Integer(i64),
    Padic(PadicNum),
}

impl From<i64> for SValue {
    fn from(n: i64) -> Self {
        SValue::Integer(n)
    }
}

impl From<PadicNum> for SValue {
    fn from(x: PadicNum) -> Self {
        SValue::Padic(x)
    }
}

impl SValue {
    /// Reads `s` from text: an integer, a rational `a/b` with `p ∤ b` (taken at the
    /// working precision of `ctx`), or `digits:<base-p digits, least significant first>`.
    pub fn parse(text: &str, ctx: &PadicContext) -> Result<Self> {
        let p = ctx.prime();
        let text = text.trim();
        if let Some(digits) = text.strip_prefix("digits:") {
            return padic::parse_digits(p, digits).map(SValue::Padic);
        }
        if let Ok(k) = text.parse::<i64>() {
            return Ok(SValue::Integer(k));
        }
        let q = parse_rational(text)?;
        if (q.denom() % BigInt::from(p)).is_zero() {
            return domain(format!("s = {text} is not a p-adic integer for p = {p}"));
        }
        Ok(SValue::Padic(ctx.rational(&q)))
    }
}

impl fmt::Display for SValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SValue::Integer(k) => write!(f, "{k}"),
            SValue::Padic(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeMethod {
    /// The closed formula with the `(1 - log_p S)` block.
    Corollary2,
    /// Termwise differentiation at `s = 0`: the same formula with `-log_p <S>`.
    Direct,
    /// `(l(p^k) - l(0)) / p^k`.
    FiniteDifference(u32),
}

#[derive(Clone, Debug)]
pub struct PadicLQuery {
    r: u32,
    chi: DirichletCharacter,
    big_f: u64,
    ctx: PadicContext,
    /// `root^k` for `k < order(χ)`; `χ(a) = ζ^k` embeds as `root_powers[k]`.
    root_powers: Vec<PadicNum>,
    /// `ω(a)` for residues `a = 1..p-1`; index 0 unused.
    teich: Vec<PadicNum>,
}

impl PadicLQuery {
    pub fn new(r: u32, chi: DirichletCharacter, big_f: u64, ctx: PadicContext) -> Result<Self> {
        let p = ctx.prime();
        let f = chi.modulus();
        if r == 0 {
            return domain("order r must be at least 1");
        }
        if big_f == 0 || big_f.is_multiple_of(2) {
            return domain(format!("F = {big_f} must be odd and positive"));
        }
        if !big_f.is_multiple_of(p) || !big_f.is_multiple_of(f) {
            return domain(format!("F = {big_f} must be a multiple of p = {p} and f = {f}"));
        }
        if arith::gcd(f, p) != 1 {
            return domain(format!("conductor {f} must be prime to p = {p}"));
        }
        let m = chi.order();
        let root = padic::root_of_unity(m, &ctx)?;
        let mut root_powers = vec![ctx.int(1)];
        for k in 1..m as usize {
            let next = root_powers[k - 1].try_mul(&root)?;
            root_powers.push(next);
        }
        let mut teich = vec![PadicNum::zero(p, ctx.working())];
        for a in 1..p {
            teich.push(padic::teichmuller(&BigInt::from(a), &ctx)?);
        }
        Ok(PadicLQuery {
            r,
            chi,
            big_f,
            ctx,
            root_powers,
            teich,
        })
    }

    /// Standard choice `F = p f`.
    pub fn minimal(r: u32, chi: DirichletCharacter, ctx: PadicContext) -> Result<Self> {
        let big_f = ctx.prime() * chi.modulus();
        Self::new(r, chi, big_f, ctx)
    }

    pub fn with_context(&self, ctx: PadicContext) -> Result<Self> {
        Self::new(self.r, self.chi.clone(), self.big_f, ctx)
    }

    pub fn with_modulus(&self, big_f: u64) -> Result<Self> {
        Self::new(self.r, self.chi.clone(), big_f, self.ctx)
    }

    pub fn prime(&self) -> u64 {
        self.ctx.prime()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn chi(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn big_f(&self) -> u64 {
        self.big_f
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    fn w(&self) -> i64 {
        self.ctx.working()
    }

    /// `χ(a)` under the fixed embedding Q(ζ_m) → Q_p.
    pub fn embed_chi(&self, a: i64) -> PadicNum {
        match self.chi.value_exponent(a) {
            Some(k) => self.root_powers[k as usize].clone(),
            None => PadicNum::zero(self.prime(), self.w()),
        }
    }

    fn omega(&self, a: i64) -> PadicNum {
        let p = self.prime() as i64;
        self.teich[a.rem_euclid(p) as usize].clone()
    }

    /// `ω(a)^e` for `p ∤ a`, reducing `e` modulo `p - 1`.
    fn omega_pow(&self, a: i64, e: i64) -> PadicNum {
        let e = e.rem_euclid(self.prime() as i64 - 1) as u64;
        self.omega(a).pow(e).cap_precision(self.w())
    }

    /// `χ_n(a)` for the primitive character attached to `χ ω^{-n}`. When `(p-1) | n` the
    /// twist is trivial and `χ_n = χ` (including at multiples of p); otherwise `χ_n`
    /// has conductor `f p` and vanishes on multiples of p.
    pub fn char_twisted(&self, n: i64, a: i64) -> PadicNum {
        let p = self.prime() as i64;
        if n.rem_euclid(p - 1) == 0 {
            return self.embed_chi(a);
        }
        if a.rem_euclid(p) == 0 {
            return PadicNum::zero(self.prime(), self.w());
        }
        let chi = self.embed_chi(a);
        if chi.is_zero() {
            return chi;
        }
        chi.try_mul(&self.omega_pow(a, -n)).expect("same prime")
    }

    fn angle(&self, s: u64) -> Result<PadicNum> {
        let a = BigInt::from(s);
        self.ctx.bigint(&a).try_div(&self.omega(s as i64))
    }

    fn euler_numbers(&self, n_max: usize) -> Result<Vec<Rational>> {
        let numbers = EulerTable::global().prefix(self.r, n_max)?;
        let p = BigInt::from(self.prime());
        if numbers.iter().any(|e| (e.denom() % &p).is_zero()) {
            return domain("an Euler number has a denominator divisible by p");
        }
        Ok(numbers)
    }

    /// Smallest `M` such that every term `m >= M` of a series with `m`-th term of
    /// valuation `>= m v_p(F) - slack(m)` is below the working precision.
    fn truncation(&self, slack: impl Fn(u64) -> i64) -> usize {
        let vf = arith::v_p(self.big_f, self.prime()) as i64;
        let mut m = 0u64;
        while (m as i64) * vf - slack(m) < self.w() {
            m += 1;
        }
        m as usize
    }

    /// Sums `term(S, count)` over the sum classes of `r`-tuples in `{1..F}^r`.
    fn sum_classes<T>(&self, keep: impl Fn(u64) -> bool + Sync, term: T) -> Result<PadicNum>
    where
        T: Fn(u64, &BigInt) -> Result<PadicNum> + Sync,
    {
        let counts = composition_counts(self.r, 1, self.big_f);
        let p = self.prime();
        counts
            .par_iter()
            .enumerate()
            .filter(|(s, c)| !c.is_zero() && keep(*s as u64))
            .map(|(s, c)| term(s as u64, c))
            .try_reduce(
                || PadicNum::zero(p, i64::MAX / 4),
                |a, b| a.try_add(&b),
            )
            .map(|x| x.cap_precision(self.w()))
    }

    fn signed_count(s: u64, count: &BigInt) -> BigInt {
        if s.is_multiple_of(2) {
            count.clone()
        } else {
            -count
        }
    }

    /// `Σ_m C(-s, m) (F/S)^m E_m^{(r)}` for the class `S`.
    fn m_series(&self, s_val: &SValue, s: u64) -> Result<PadicNum> {
        let p = self.prime();
        let ratio = Rational::new(self.big_f.into(), s.into());
        let terms: Vec<Rational> = match s_val {
            SValue::Integer(k) if *k <= 0 => {
                let n = k.unsigned_abs() as usize;
                let numbers = self.euler_numbers(n)?;
                return Ok(self.ctx.rational(
                    &(0..=n)
                        .map(|m| {
                            num_traits::pow(ratio.clone(), m)
                                * &numbers[m]
                                * Rational::from_integer(binomial(n as u64, m as u64))
                        })
                        .sum(),
                ));
            }
            SValue::Integer(k) => {
                // C(-k, m) = (-1)^m C(k + m - 1, m), an exact integer
                let big_m = self.truncation(|_| 0);
                let numbers = self.euler_numbers(big_m)?;
                (0..big_m)
                    .map(|m| {
                        let b = binomial(*k as u64 + m as u64 - 1, m as u64);
                        let b = if m % 2 == 0 { b } else { -b };
                        num_traits::pow(ratio.clone(), m) * &numbers[m] * Rational::from_integer(b)
                    })
                    .collect()
            }
            SValue::Padic(x) => {
                let big_m = self.truncation(|_| 0);
                let numbers = self.euler_numbers(big_m)?;
                let mut acc = PadicNum::zero(p, i64::MAX / 4);
                for (m, e) in numbers.iter().enumerate().take(big_m) {
                    let b = padic::binom_neg_s(x, m as u64)?;
                    acc = acc.try_add(&b.mul_rational(&(num_traits::pow(ratio.clone(), m) * e)))?;
                }
                return Ok(acc.cap_precision(self.w()));
            }
        };
        let mut acc = PadicNum::zero(p, i64::MAX / 4);
        for t in &terms {
            acc = acc.try_add(&self.ctx.rational(t))?;
        }
        Ok(acc.cap_precision(self.w()))
    }

    /// `<S>^{-s}`.
    fn angle_power(&self, s_val: &SValue, s: u64) -> Result<PadicNum> {
        match s_val {
            SValue::Integer(k) => {
                let base = self.angle(s)?;
                let pos = base.pow(k.unsigned_abs());
                if *k > 0 {
                    pos.inverse()
                } else {
                    Ok(pos)
                }
            }
            SValue::Padic(x) => padic::angle_pow_neg_s(&BigInt::from(s), x, &self.ctx),
        }
    }

    fn l_padic_working(&self, s_val: &SValue) -> Result<PadicNum> {
        if let SValue::Padic(x) = s_val {
            if x.prime() != self.prime() {
                return Err(Error::Structural("s lives over a different prime".into()));
            }
            if x.valuation().is_some_and(|v| v < 0) {
                return domain("s lies outside the disk of convergence");
            }
        }
        let p = self.prime();
        self.sum_classes(
            |s| s % p != 0,
            |s, count| {
                let chi = self.embed_chi(s as i64);
                if chi.is_zero() {
                    return Ok(chi);
                }
                let weight = chi.mul_int(&Self::signed_count(s, count));
                weight
                    .try_mul(&self.angle_power(s_val, s)?)?
                    .try_mul(&self.m_series(s_val, s)?)
            },
        )
    }

    /// `E_{n,χ_n}^{(r)} = F^n Σ_{tuples} χ_n(S) (-1)^S E_n^{(r)}(S/F)`, working precision.
    fn twisted_generalized_working(&self, n: u32) -> Result<PadicNum> {
        let numbers = self.euler_numbers(n as usize)?;
        let f_pow = num_traits::pow(BigInt::from(self.big_f), n as usize);
        self.sum_classes(
            |_| true,
            |s, count| {
                let chi = self.char_twisted(n as i64, s as i64);
                if chi.is_zero() {
                    return Ok(chi);
                }
                let x = Rational::new(s.into(), self.big_f.into());
                let value = eval_polynomial(&numbers, n as usize, &x)
                    * Rational::from_integer(&f_pow * Self::signed_count(s, count));
                Ok(chi.mul_rational(&value))
            },
        )
    }

    /// `E*_{n,χ_n}^{(r)} = (F/p)^n Σ_{p | S} χ_n(β) (-1)^β E_n^{(r)}(β / (F/p))`, `β = S/p`,
    /// one term per tuple.
    fn second_euler_working(&self, n: u32) -> Result<PadicNum> {
        let p = self.prime();
        let numbers = self.euler_numbers(n as usize)?;
        let f_over_p = self.big_f / p;
        let scale = num_traits::pow(BigInt::from(f_over_p), n as usize);
        self.sum_classes(
            |s| s % p == 0,
            |s, count| {
                let beta = s / p;
                let chi = self.char_twisted(n as i64, beta as i64);
                if chi.is_zero() {
                    return Ok(chi);
                }
                let x = Rational::new(beta.into(), f_over_p.into());
                let value = eval_polynomial(&numbers, n as usize, &x)
                    * Rational::from_integer(&scale * Self::signed_count(beta, count));
                Ok(chi.mul_rational(&value))
            },
        )
    }

    fn theorem1_working(&self, n: u32) -> Result<PadicNum> {
        let main = self.twisted_generalized_working(n)?;
        let chi_p = self.char_twisted(n as i64, self.prime() as i64);
        if chi_p.is_zero() {
            return Ok(main);
        }
        let p_n = num_traits::pow(BigInt::from(self.prime()), n as usize);
        let correction = chi_p.mul_int(&p_n).try_mul(&self.second_euler_working(n)?)?;
        main.try_sub(&correction)
    }

    /// Blocks shared by the closed-form derivatives: `(Σ w_S, Σ w_S log_p S, series)`
    /// where `w_S = count·χ(S)(-1)^S` over classes with `p ∤ S` and
    /// `series = Σ w_S Σ_{m≥1} ((-1)^m/m) (F/S)^m E_m^{(r)}`.
    fn derivative_blocks(&self) -> Result<DerivativeBlocks> {
        let p = self.prime();
        let log_slack = |m: u64| {
            let mut e = 0i64;
            let mut q = p;
            while q <= m {
                e += 1;
                q *= p;
            }
            e
        };
        let big_m = self.truncation(log_slack);
        let numbers = self.euler_numbers(big_m)?;
        let keep = |s: u64| !s.is_multiple_of(p);
        let weight = |s: u64, count: &BigInt| {
            self.embed_chi(s as i64).mul_int(&Self::signed_count(s, count))
        };
        let plain = self.sum_classes(keep, |s, c| Ok(weight(s, c)))?;
        let log_block = self.sum_classes(keep, |s, c| {
            let w = weight(s, c);
            if w.is_zero() {
                return Ok(w);
            }
            w.try_mul(&padic::iwasawa_log_int(&BigInt::from(s), &self.ctx)?)
        })?;
        let angle_log_block = self.sum_classes(keep, |s, c| {
            let w = weight(s, c);
            if w.is_zero() {
                return Ok(w);
            }
            w.try_mul(&padic::iwasawa_log(&self.angle(s)?, &self.ctx)?)
        })?;
        let series = self.sum_classes(keep, |s, c| {
            let w = weight(s, c);
            if w.is_zero() {
                return Ok(w);
            }
            let ratio = Rational::new(self.big_f.into(), s.into());
            let mut acc = PadicNum::zero(p, i64::MAX / 4);
            for (m, e) in numbers.iter().enumerate().take(big_m).skip(1) {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let coeff = Rational::new(BigInt::from(sign), BigInt::from(m))
                    * num_traits::pow(ratio.clone(), m)
                    * e;
                acc = acc.try_add(&self.ctx.rational(&coeff))?;
            }
            w.try_mul(&acc.cap_precision(self.w()))
        })?;
        Ok(DerivativeBlocks {
            plain,
            log_block,
            angle_log_block,
            series,
        })
    }
}

struct DerivativeBlocks {
    plain: PadicNum,
    log_block: PadicNum,
    angle_log_block: PadicNum,
    series: PadicNum,
}

/// `l_{p,r}(s, χ)` at the target precision.
pub fn l_padic(s: &SValue, q: &PadicLQuery) -> Result<PadicNum> {
    q.ctx.finish(&q.l_padic_working(s)?)
}

/// `χ_n(a)`; see [`PadicLQuery::char_twisted`].
pub fn char_twisted(n: i64, a: i64, q: &PadicLQuery) -> PadicNum {
    q.char_twisted(n, a)
}

/// `E_{n,χ_n}^{(r)}` computed p-adically with modulus `F`.
pub fn twisted_generalized_euler_number(n: u32, q: &PadicLQuery) -> Result<PadicNum> {
    q.ctx.finish(&q.twisted_generalized_working(n)?)
}

/// The second multiple generalized Euler number `E*_{n,χ_n}^{(r)}`.
pub fn second_euler_number(n: u32, q: &PadicLQuery) -> Result<PadicNum> {
    q.ctx.finish(&q.second_euler_working(n)?)
}

/// `E_{n,χ_n}^{(r)} - p^n χ_n(p) E*_{n,χ_n}^{(r)}`.
pub fn theorem1_rhs(n: u32, q: &PadicLQuery) -> Result<PadicNum> {
    q.ctx.finish(&q.theorem1_working(n)?)
}

/// `∂/∂s l_{p,r}(s, χ)` at `s = 0`.
pub fn l_derivative_at_0(q: &PadicLQuery, method: DerivativeMethod) -> Result<PadicNum> {
    match method {
        DerivativeMethod::Corollary2 => {
            let b = q.derivative_blocks()?;
            let value = b.plain.try_sub(&b.log_block)?.try_add(&b.series)?;
            q.ctx.finish(&value)
        }
        DerivativeMethod::Direct => {
            let b = q.derivative_blocks()?;
            q.ctx.finish(&b.series.try_sub(&b.angle_log_block)?)
        }
        DerivativeMethod::FiniteDifference(k) => {
            if k < 2 || k as i64 > q.ctx.precision() - 4 {
                return domain(format!(
                    "finite-difference step p^{k} needs 2 <= k <= N - 4 = {}",
                    q.ctx.precision() - 4
                ));
            }
            // Division by p^k costs k digits; widen the working precision to match.
            let wide = q.with_context(q.ctx.bump_guard(k))?;
            let h = num_traits::pow(BigInt::from(q.prime()), k as usize);
            let h_i64: i64 = h.clone().try_into().map_err(|_| {
                Error::Domain(format!("step p^{k} does not fit in a machine integer"))
            })?;
            let upper = wide.l_padic_working(&SValue::Integer(h_i64))?;
            let lower = wide.l_padic_working(&SValue::Integer(0))?;
            let inv_h = Rational::new(BigInt::one(), h);
            q.ctx.finish(&upper.try_sub(&lower)?.mul_rational(&inv_h))
        }
    }
}

/// The `m`-series block shared by the two closed forms, at the target precision.
pub fn derivative_series_block(q: &PadicLQuery) -> Result<PadicNum> {
    q.ctx.finish(&q.derivative_blocks()?.series)
}

/// `corollary2 - direct`, which equals `Σ χ(S)(-1)^S` over classes with `p ∤ S`.
pub fn corollary2_discrepancy(q: &PadicLQuery) -> Result<PadicNum> {
    let b = q.derivative_blocks()?;
    let c2 = b.plain.try_sub(&b.log_block)?.try_add(&b.series)?;
    let direct = b.series.try_sub(&b.angle_log_block)?;
    q.ctx.finish(&c2.try_sub(&direct)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyc_embed_padic;
    use crate::lvalues::{l_value_neg, LNegQuery};

    fn query(p: u64, f: u64, chi_index: u64, r: u32, n: u32) -> PadicLQuery {
        let chi = DirichletCharacter::from_index(f, chi_index).unwrap();
        PadicLQuery::minimal(r, chi, PadicContext::new(p, n).unwrap()).unwrap()
    }

    fn int_value(x: &PadicNum) -> i64 {
        x.small_integer().expect("small integer")
    }

    /// Brute force over every tuple in `{1..F}^r`.
    fn for_each_tuple(r: u32, big_f: u64, mut visit: impl FnMut(u64)) {
        let mut t = vec![1u64; r as usize];
        loop {
            visit(t.iter().sum());
            let mut i = 0;
            loop {
                if i == t.len() {
                    return;
                }
                if t[i] < big_f {
                    t[i] += 1;
                    break;
                }
                t[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn twisted_character_examples() {
        let q = query(5, 3, 1, 1, 10);
        assert_eq!(int_value(&q.char_twisted(0, 7)), 1);
        assert_eq!(int_value(&q.char_twisted(8, 2)), -1);
        assert!(q.char_twisted(1, 5).is_zero());
        assert_eq!(int_value(&q.char_twisted(4, 5)), -1);
        // ω(2)^{-1} χ(2) at n = 1
        let omega2 = padic::teichmuller(&BigInt::from(2), q.context()).unwrap();
        let want = omega2.inverse().unwrap().neg();
        assert_eq!(q.char_twisted(1, 2).agreement(&want).unwrap(), q.context().working());
    }

    #[test]
    fn value_at_zero_by_enumeration() {
        let q = query(5, 3, 1, 1, 10);
        let chi = q.chi().clone();
        let brute: i64 = (1..=15i64)
            .filter(|a| a % 5 != 0)
            .map(|a| {
                let v = chi.evaluate(a);
                let v = v.as_rational().unwrap().numer().clone();
                let v: i64 = v.try_into().unwrap();
                if a % 2 == 0 { v } else { -v }
            })
            .sum();
        assert_eq!(brute, -4);
        let l0 = l_padic(&SValue::Integer(0), &q).unwrap();
        assert_eq!(int_value(&l0), -4);
        assert_eq!(l0.precision(), 10);
        assert_eq!(int_value(&theorem1_rhs(0, &q).unwrap()), -4);
        assert_eq!(int_value(&second_euler_number(0, &q).unwrap()), -2);

        let trivial = query(5, 1, 0, 1, 10);
        let l0 = l_padic(&SValue::Integer(0), &trivial).unwrap();
        assert_eq!(int_value(&l0), 0);
        assert_eq!(l0, theorem1_rhs(0, &trivial).unwrap());
    }

    #[test]
    fn euler_factor_identity_by_enumeration() {
        for (p, f, idx) in [(5u64, 3u64, 1u64), (5, 1, 0), (7, 5, 2)] {
            for r in 1..=2 {
                let q = query(p, f, idx, r, 12);
                for n in 0..=4u32 {
                    let numbers = EulerTable::global().prefix(r, n as usize).unwrap();
                    let mut lhs = PadicNum::zero(p, 1 << 20);
                    for_each_tuple(r, q.big_f(), |s| {
                        if s % p != 0 {
                            return;
                        }
                        let x = Rational::new(s.into(), q.big_f().into());
                        let e = eval_polynomial(&numbers, n as usize, &x)
                            * Rational::from_integer(num_traits::pow(BigInt::from(q.big_f()), n as usize));
                        let e = if s % 2 == 0 { e } else { -e };
                        let term = q.char_twisted(n as i64, s as i64).mul_rational(&e);
                        lhs = lhs.try_add(&term).unwrap();
                    });
                    let rhs = q
                        .char_twisted(n as i64, p as i64)
                        .mul_int(&num_traits::pow(BigInt::from(p), n as usize))
                        .try_mul(&second_euler_number(n, &q).unwrap())
                        .unwrap();
                    let n_digits = q.context().precision();
                    assert_eq!(
                        lhs.with_precision(n_digits).unwrap(),
                        rhs.with_precision(n_digits).unwrap(),
                        "p={p} f={f} r={r} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn theorem_one_small_grid() {
        for (p, f, idx) in [(5u64, 3u64, 1u64), (5, 1, 0)] {
            for r in 1..=2 {
                let q = query(p, f, idx, r, 10);
                for n in 0..=5u32 {
                    let lhs = l_padic(&SValue::Integer(-(n as i64)), &q).unwrap();
                    let rhs = theorem1_rhs(n, &q).unwrap();
                    assert_eq!(lhs, rhs, "p={p} f={f} r={r} n={n}");
                }
            }
        }
    }

    #[test]
    fn agrees_with_complex_side_when_twist_is_trivial() {
        let q = query(5, 3, 1, 2, 12);
        let root = padic::root_of_unity(q.chi().order(), q.context()).unwrap();
        for n in [0u32, 4, 8] {
            let complex = l_value_neg(&LNegQuery::new(n as usize, 2, q.chi().clone(), q.big_f()).unwrap()).unwrap();
            let embedded = cyc_embed_padic(&complex, &root).unwrap();
            let chi_p = cyc_embed_padic(&q.chi().evaluate(5), &root).unwrap();
            let correction = chi_p
                .mul_int(&num_traits::pow(BigInt::from(5), n as usize))
                .try_mul(&second_euler_number(n, &q).unwrap())
                .unwrap();
            let want = embedded.try_sub(&correction).unwrap().with_precision(12).unwrap();
            assert_eq!(theorem1_rhs(n, &q).unwrap(), want, "n={n}");
            let twisted = twisted_generalized_euler_number(n, &q).unwrap();
            assert_eq!(twisted, embedded.with_precision(12).unwrap());
        }
    }

    #[test]
    fn integer_points_match_padic_series_route() {
        let q = query(5, 3, 1, 1, 8);
        for s in [-3i64, -1, 0, 2] {
            let exact = l_padic(&SValue::Integer(s), &q).unwrap();
            let as_padic = SValue::Padic(q.context().int(s));
            assert_eq!(l_padic(&as_padic, &q).unwrap(), exact, "s={s}");
        }
    }

    #[test]
    fn modulus_and_guard_stability() {
        let q = query(5, 3, 1, 2, 8);
        let wide = q.with_modulus(45).unwrap();
        let guarded = q.with_context(q.context().bump_guard(10)).unwrap();
        for s in [SValue::Integer(0), SValue::Integer(-3), SValue::Integer(25)] {
            let base = l_padic(&s, &q).unwrap();
            assert_eq!(l_padic(&s, &wide).unwrap(), base);
            assert_eq!(l_padic(&s, &guarded).unwrap(), base);
        }
    }

    #[test]
    fn derivative_routes() {
        let q = query(5, 3, 1, 1, 12);
        let direct = l_derivative_at_0(&q, DerivativeMethod::Direct).unwrap();
        for k in 3..=8 {
            let fd = l_derivative_at_0(&q, DerivativeMethod::FiniteDifference(k)).unwrap();
            assert!(direct.agreement(&fd).unwrap() >= k as i64, "k={k}");
        }
        let c2 = l_derivative_at_0(&q, DerivativeMethod::Corollary2).unwrap();
        let gap = c2.try_sub(&direct).unwrap();
        assert_eq!(gap, corollary2_discrepancy(&q).unwrap());
        assert_eq!(gap, l_padic(&SValue::Integer(0), &q).unwrap());
        assert!(l_derivative_at_0(&q, DerivativeMethod::FiniteDifference(1)).is_err());
        assert!(l_derivative_at_0(&q, DerivativeMethod::FiniteDifference(9)).is_err());
    }

    #[test]
    fn parse_s_forms() {
        let ctx = PadicContext::new(5, 6).unwrap();
        assert_eq!(SValue::parse("-2", &ctx).unwrap(), SValue::Integer(-2));
        assert_eq!(
            SValue::parse("1/3", &ctx).unwrap(),
            SValue::Padic(ctx.rational(&Rational::new(1.into(), 3.into())))
        );
        let SValue::Padic(x) = SValue::parse("digits:21", &ctx).unwrap() else {
            panic!("digits parse to a p-adic value");
        };
        assert_eq!(x, PadicNum::from_int(5, 7, 2));
        assert!(SValue::parse("2/5", &ctx).is_err());
        assert!(SValue::parse("digits:7", &ctx).is_err());
        assert!(SValue::parse("x", &ctx).is_err());
    }

    #[test]
    fn rejected_queries() {
        let ctx = PadicContext::new(7, 10).unwrap();
        let order_four = DirichletCharacter::from_index(5, 1).unwrap();
        assert!(matches!(
            PadicLQuery::minimal(1, order_four, ctx),
            Err(Error::UnsupportedEmbedding { order: 4, p: 7 })
        ));
        let chi = DirichletCharacter::from_index(3, 1).unwrap();
        assert!(PadicLQuery::new(1, chi.clone(), 21, PadicContext::new(5, 10).unwrap()).is_err());
        assert!(PadicLQuery::new(1, chi.clone(), 30, PadicContext::new(5, 10).unwrap()).is_err());
        let ctx3 = PadicContext::new(3, 10).unwrap();
        assert!(PadicLQuery::new(1, chi.clone(), 9, ctx3).is_err());
        let q = query(5, 3, 1, 1, 8);
        let outside = SValue::Padic(PadicNum::from_rational(5, &Rational::new(1.into(), 5.into()), 10));
        assert!(matches!(l_padic(&outside, &q), Err(Error::Domain(_))));
    }
}
