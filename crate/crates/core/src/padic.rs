//! Precision-capped p-adic numbers and the analytic building blocks of the p-adic
//! l-function: Teichmüller representatives, principal units `<a>`, the Iwasawa
//! logarithm, binomial coefficients `C(-s, m)` and powers `<a>^{-s}`.
//!
//! A [`PadicNum`] is `unit * p^valuation` known modulo `p^precision`. Arithmetic
//! propagates precision conservatively. Functions taking a [`PadicContext`] work at
//! `precision + guard` digits and return values at that working precision; callers
//! reduce to the target precision with [`PadicNum::with_precision`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{domain, Error, Result};
use crate::rational::{factorial, Rational};

pub const DEFAULT_GUARD: u32 = 10;

/// Environment variable overriding the default number of guard digits.
pub const GUARD_ENV: &str = "PADIC_EULER_GUARD";

fn p_pow(p: u64, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Splits off the p-part of a non-zero integer: returns `(v_p(n), n / p^v)`.
fn split_p(p: u64, n: &BigInt) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// Inverse of a unit modulo `modulus`.
fn inv_unit(u: &BigInt, modulus: &BigInt) -> BigInt {
    let e = u.mod_floor(modulus).extended_gcd(modulus);
    debug_assert!(e.gcd.is_one(), "not a unit");
    e.x.mod_floor(modulus)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNum {
    p: u64,
    /// `None` when the value is zero to the known precision.
    valuation: Option<i64>,
    /// Residue in `[0, p^(precision - valuation))`, coprime to `p`.
    unit: BigInt,
    precision: i64,
}

impl PadicNum {
    pub fn zero(p: u64, precision: i64) -> Self {
        PadicNum {
            p,
            valuation: None,
            unit: BigInt::zero(),
            precision,
        }
    }

    pub fn one(p: u64, precision: i64) -> Self {
        Self::from_int(p, 1, precision)
    }

    /// `x * p^shift` known modulo `p^precision`.
    fn normalize(p: u64, shift: i64, x: BigInt, precision: i64) -> Self {
        if x.is_zero() || shift >= precision {
            return Self::zero(p, precision);
        }
        let (k, u) = split_p(p, &x);
        let valuation = shift + k;
        if valuation >= precision {
            return Self::zero(p, precision);
        }
        let unit = u.mod_floor(&p_pow(p, precision - valuation));
        PadicNum {
            p,
            valuation: Some(valuation),
            unit,
            precision,
        }
    }

    pub fn from_bigint(p: u64, n: &BigInt, precision: i64) -> Self {
        Self::normalize(p, 0, n.clone(), precision)
    }

    pub fn from_int(p: u64, n: i64, precision: i64) -> Self {
        Self::from_bigint(p, &BigInt::from(n), precision)
    }

    pub fn from_rational(p: u64, q: &Rational, precision: i64) -> Self {
        if q.is_zero() {
            return Self::zero(p, precision);
        }
        let (vn, un) = split_p(p, q.numer());
        let (vd, ud) = split_p(p, q.denom());
        let valuation = vn - vd;
        if valuation >= precision {
            return Self::zero(p, precision);
        }
        let modulus = p_pow(p, precision - valuation);
        let unit = (un * inv_unit(&ud, &modulus)).mod_floor(&modulus);
        PadicNum {
            p,
            valuation: Some(valuation),
            unit,
            precision,
        }
    }

    /// Builds a p-adic integer from base-p digits, least significant first.
    pub fn from_digits(p: u64, digits: &[u64]) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return domain(format!("digit {d} out of range for base {p}"));
        }
        let n = digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * BigInt::from(p) + BigInt::from(d));
        Ok(Self::from_bigint(p, &n, digits.len() as i64))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Valuation, reporting a value that is zero at precision `N` as `N`.
    pub fn valuation_or_precision(&self) -> i64 {
        self.valuation.unwrap_or(self.precision)
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Structural(format!(
                "p-adic numbers over different primes {} and {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    /// Lowers the precision to `min(self.precision, n)`.
    pub fn cap_precision(&self, n: i64) -> Self {
        if n >= self.precision {
            return self.clone();
        }
        match self.valuation {
            None => Self::zero(self.p, n),
            Some(v) => Self::normalize(self.p, v, self.unit.clone(), n),
        }
    }

    /// Reduces to exactly `n` digits, failing if fewer are guaranteed.
    pub fn with_precision(&self, n: i64) -> Result<Self> {
        if self.precision < n {
            return Err(Error::Precision {
                needed: n,
                guaranteed: self.precision,
            });
        }
        Ok(self.cap_precision(n))
    }

    /// Integer representative in `[0, p^precision)`; `None` for negative valuation.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self.valuation {
            None => Some(BigInt::zero()),
            Some(v) if v < 0 => None,
            Some(v) => Some(&self.unit * p_pow(self.p, v)),
        }
    }

    /// Number of leading digits on which `self` and `other` agree, capped by both
    /// precisions.
    pub fn agreement(&self, other: &Self) -> Result<i64> {
        Ok(self.try_sub(other)?.valuation_or_precision())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let precision = self.precision.min(other.precision);
        let (va, vb) = match (self.valuation, other.valuation) {
            (None, _) => return Ok(other.cap_precision(precision)),
            (_, None) => return Ok(self.cap_precision(precision)),
            (Some(a), Some(b)) => (a, b),
        };
        let shift = va.min(vb);
        let x = &self.unit * p_pow(self.p, va - shift) + &other.unit * p_pow(self.p, vb - shift);
        Ok(Self::normalize(self.p, shift, x, precision))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self.valuation {
            None => self.clone(),
            Some(v) => {
                let modulus = p_pow(self.p, self.precision - v);
                PadicNum {
                    unit: (&modulus - &self.unit).mod_floor(&modulus),
                    ..self.clone()
                }
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(match (self.valuation, other.valuation) {
            (None, None) => Self::zero(self.p, self.precision + other.precision),
            (None, Some(vb)) => Self::zero(self.p, self.precision + vb),
            (Some(va), None) => Self::zero(self.p, other.precision + va),
            (Some(va), Some(vb)) => {
                let precision = (self.precision + vb).min(other.precision + va);
                Self::normalize(self.p, va + vb, &self.unit * &other.unit, precision)
            }
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let vb = match other.valuation {
            None => return domain("p-adic division by a value that is zero at precision"),
            Some(v) => v,
        };
        let rel_b = other.precision - vb;
        Ok(match self.valuation {
            None => Self::zero(self.p, self.precision - vb),
            Some(va) => {
                let rel = (self.precision - va).min(rel_b);
                let modulus = p_pow(self.p, rel);
                let unit = &self.unit * inv_unit(&other.unit, &modulus);
                Self::normalize(self.p, va - vb, unit, va - vb + rel)
            }
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.p, self.precision).try_div(self)
    }

    /// Multiplication by an exact integer; precision grows by `v_p(n)`.
    pub fn mul_int(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(self.p, i64::MAX / 4);
        }
        let (vn, un) = split_p(self.p, n);
        match self.valuation {
            None => Self::zero(self.p, self.precision + vn),
            Some(v) => Self::normalize(self.p, v + vn, &self.unit * un, self.precision + vn),
        }
    }

    /// Multiplication by an exact rational; precision shifts by `v_p(q)`.
    pub fn mul_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.p, i64::MAX / 4);
        }
        let (vn, un) = split_p(self.p, q.numer());
        let (vd, ud) = split_p(self.p, q.denom());
        let vq = vn - vd;
        match self.valuation {
            None => Self::zero(self.p, self.precision + vq),
            Some(v) => {
                let precision = self.precision + vq;
                let modulus = p_pow(self.p, (precision - v - vq).max(0));
                let unit = &self.unit * un * inv_unit(&ud, &modulus);
                Self::normalize(self.p, v + vq, unit, precision)
            }
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::one(self.p, self.precision);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.try_mul(&base).expect("same prime"),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same prime");
            }
        }
        acc.expect("e > 0")
    }

    /// Base-p digits of the unit part, least significant first, padded to
    /// `precision - valuation` entries.
    pub fn unit_digits(&self) -> Vec<u64> {
        let Some(v) = self.valuation else {
            return Vec::new();
        };
        let len = (self.precision - v).max(0) as usize;
        let mut digits = Vec::with_capacity(len);
        let pb = BigInt::from(self.p);
        let mut x = self.unit.clone();
        for _ in 0..len {
            let (q, r) = x.div_rem(&pb);
            digits.push(r.to_u64().unwrap_or(0));
            x = q;
        }
        digits
    }

    pub fn to_json(&self) -> PadicJson {
        PadicJson {
            p: self.p,
            valuation: match self.valuation {
                Some(v) => ValuationJson::Finite(v),
                None => ValuationJson::Infinite("inf".into()),
            },
            unit_digits: self.unit_digits(),
            precision: self.precision,
        }
    }

    pub fn from_json(j: &PadicJson) -> Result<Self> {
        if !arith::is_prime(j.p) {
            return domain(format!("{} is not prime", j.p));
        }
        match &j.valuation {
            ValuationJson::Infinite(s) if s == "inf" => {
                if !j.unit_digits.is_empty() {
                    return domain("zero value must have no unit digits");
                }
                Ok(Self::zero(j.p, j.precision))
            }
            ValuationJson::Infinite(s) => domain(format!("bad valuation {s:?}")),
            ValuationJson::Finite(v) => {
                if j.unit_digits.len() as i64 != j.precision - v {
                    return domain("unit digit count must equal precision - valuation");
                }
                if j.unit_digits.first().is_none_or(|&d| d == 0) {
                    return domain("unit must be coprime to p");
                }
                let unit = Self::from_digits(j.p, &j.unit_digits)?;
                let unit = unit.to_bigint().expect("non-negative valuation");
                Ok(Self::normalize(j.p, *v, unit, j.precision))
            }
        }
    }
}

/// Renders base-p digits of the value, least significant first, followed by the
/// precision term, e.g. `1444444444 + O(5^10)`. Negative valuations are written as a
/// `p^v *` prefix on the unit digits.
impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.p > 10 { " " } else { "" };
        let join = |ds: &[u64]| ds.iter().map(u64::to_string).collect::<Vec<_>>().join(sep);
        match self.valuation {
            None => write!(f, "0 + O({}^{})", self.p, self.precision),
            Some(v) if v >= 0 => {
                let mut digits = vec![0u64; v as usize];
                digits.extend(self.unit_digits());
                write!(f, "{} + O({}^{})", join(&digits), self.p, self.precision)
            }
            Some(v) => write!(
                f,
                "{}^{} * {} + O({}^{})",
                self.p,
                v,
                join(&self.unit_digits()),
                self.p,
                self.precision
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValuationJson {
    Finite(i64),
    Infinite(String),
}

/// Wire form `{"p", "valuation": int | "inf", "unit_digits", "precision"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub valuation: ValuationJson,
    pub unit_digits: Vec<u64>,
    pub precision: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    guard: u32,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        Self::with_guard(p, precision, DEFAULT_GUARD)
    }

    pub fn with_guard(p: u64, precision: u32, guard: u32) -> Result<Self> {
        if p == 2 || !arith::is_prime(p) {
            return domain(format!("p = {p} must be an odd prime"));
        }
        if precision == 0 {
            return domain("precision must be positive");
        }
        Ok(PadicContext {
            p,
            precision,
            guard,
        })
    }

    /// Guard digits from the environment, falling back to the default.
    pub fn guard_from_env() -> u32 {
        std::env::var(GUARD_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_GUARD)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.precision as i64
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn working(&self) -> i64 {
        (self.precision + self.guard) as i64
    }

    pub fn bump_guard(&self, extra: u32) -> Self {
        PadicContext {
            guard: self.guard + extra,
            ..*self
        }
    }

    pub fn bump_precision(&self, extra: u32) -> Self {
        PadicContext {
            precision: self.precision + extra,
            ..*self
        }
    }

    pub fn int(&self, n: i64) -> PadicNum {
        PadicNum::from_int(self.p, n, self.working())
    }

    pub fn bigint(&self, n: &BigInt) -> PadicNum {
        PadicNum::from_bigint(self.p, n, self.working())
    }

    pub fn rational(&self, q: &Rational) -> PadicNum {
        PadicNum::from_rational(self.p, q, self.working())
    }

    /// Reduces a working-precision result to the target precision.
    pub fn finish(&self, x: &PadicNum) -> Result<PadicNum> {
        x.with_precision(self.precision())
    }

    /// Number of terms after which every term of a series whose `k`-th term has
    /// valuation at least `k (1 - 1/(p-1))` is below the working precision.
    pub fn series_terms(&self) -> u64 {
        let w = self.working() as u64;
        let p = self.p;
        // smallest M with M (p - 2) >= W (p - 1)
        (w * (p - 1)).div_ceil(p - 2)
    }
}

fn require_unit_int(a: &BigInt, p: u64) -> Result<()> {
    if (a % BigInt::from(p)).is_zero() {
        return domain(format!("{a} is divisible by p = {p}"));
    }
    Ok(())
}

/// The `p - 1` Teichmüller representatives modulo `p^w`, indexed by residue, memoized.
fn teichmuller_table(p: u64, w: i64) -> Arc<Vec<BigInt>> {
    type Table = RwLock<HashMap<(u64, i64), Arc<Vec<BigInt>>>>;
    static TABLES: OnceLock<Table> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().expect("teichmuller table poisoned").get(&(p, w)) {
        return t.clone();
    }
    let modulus = p_pow(p, w);
    // x -> x^p gains at least one digit per step, so W - 1 steps reach the limit.
    let exponent = p_pow(p, (w - 1).max(0));
    let table: Vec<BigInt> = (0..p)
        .map(|r| BigInt::from(r).modpow(&exponent, &modulus))
        .collect();
    let table = Arc::new(table);
    tables
        .write()
        .expect("teichmuller table poisoned")
        .insert((p, w), table.clone());
    table
}

/// Teichmüller representative: the (p-1)-st root of unity congruent to `a` mod p.
pub fn teichmuller(a: &BigInt, ctx: &PadicContext) -> Result<PadicNum> {
    let p = ctx.prime();
    require_unit_int(a, p)?;
    let w = ctx.working();
    let r = a.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p");
    Ok(PadicNum::from_bigint(p, &teichmuller_table(p, w)[r as usize], w))
}

/// `<a> = a / ω(a)`, a principal unit.
pub fn angle(a: &BigInt, ctx: &PadicContext) -> Result<PadicNum> {
    let omega = teichmuller(a, ctx)?;
    let out = ctx.bigint(a).try_div(&omega)?;
    debug_assert!(out.try_sub(&ctx.int(1))?.valuation_or_precision() >= 1);
    Ok(out)
}

/// `floor(log_p k)` for `k >= 1`.
fn floor_log(p: u64, k: u64) -> i64 {
    let (mut e, mut q) = (0i64, p);
    while q <= k {
        e += 1;
        q = match q.checked_mul(p) {
            Some(q) => q,
            None => break,
        };
    }
    e
}

/// Iwasawa logarithm on units: `log_p(u) = log(<u>)`, so roots of unity map to 0.
/// Computed as `log(u^(p-1)) / (p-1)` on integer residues.
pub fn iwasawa_log(u: &PadicNum, ctx: &PadicContext) -> Result<PadicNum> {
    if u.valuation() != Some(0) {
        return domain("expected a p-adic unit");
    }
    let p = ctx.prime();
    let prec = u.precision().min(ctx.working());
    let z = {
        let m = p_pow(p, prec);
        (u.unit().modpow(&BigInt::from(p - 1), &m) - 1u32).mod_floor(&m)
    };
    if z.is_zero() {
        return Ok(PadicNum::zero(p, prec));
    }
    let (vz, _) = split_p(p, &z);
    debug_assert!(vz >= 1);
    // Term k has valuation >= k vz - floor(log_p k), non-decreasing in k.
    let mut terms = 1u64;
    while (terms as i64) * vz - floor_log(p, terms) < prec {
        terms += 1;
    }
    // Extra digits so that dividing z^k by the p-part of k stays exact.
    let extra = floor_log(p, terms);
    let wide = p_pow(p, prec + extra);
    let target = p_pow(p, prec);
    // Scale every term by the common multiple of the prime-to-p parts of k and
    // invert once at the end.
    let parts: Vec<(i64, BigInt)> = (1..terms).map(|k| split_p(p, &BigInt::from(k))).collect();
    let common = parts
        .iter()
        .fold(BigInt::one(), |acc, (_, uk)| acc.lcm(uk));
    let mut sum = BigInt::zero();
    let mut zk = BigInt::one();
    for (i, (vk, uk)) in parts.iter().enumerate() {
        zk = (zk * &z).mod_floor(&wide);
        let term = (&zk / p_pow(p, *vk)) * (&common / uk);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let denom = common * BigInt::from(p - 1);
    let sum = (sum * inv_unit(&denom, &target)).mod_floor(&target);
    Ok(PadicNum::from_bigint(p, &sum, prec))
}

/// `log_p(a)` for an integer `a` prime to p.
pub fn iwasawa_log_int(a: &BigInt, ctx: &PadicContext) -> Result<PadicNum> {
    require_unit_int(a, ctx.prime())?;
    iwasawa_log(&ctx.bigint(a), ctx)
}

fn require_in_disk(s: &PadicNum) -> Result<()> {
    // D ∩ Q_p is Z_p.
    match s.valuation() {
        Some(v) if v < 0 => domain("s lies outside the disk of convergence"),
        _ => Ok(()),
    }
}

/// `C(-s, m) = (-s)(-s-1)...(-s-m+1) / m!`. Dividing by `m!` costs `v_p(m!)` digits.
pub fn binom_neg_s(s: &PadicNum, m: u64) -> Result<PadicNum> {
    require_in_disk(s)?;
    let p = s.prime();
    let neg = s.neg();
    let mut acc = PadicNum::one(p, s.precision());
    for j in 0..m {
        let factor = neg.try_sub(&PadicNum::from_int(p, j as i64, s.precision()))?;
        acc = acc.try_mul(&factor)?;
    }
    Ok(acc.mul_rational(&Rational::new(BigInt::one(), factorial(m))))
}

/// `<a>^e` for an integer exponent, by repeated multiplication.
pub fn angle_pow_int(a: &BigInt, e: i64, ctx: &PadicContext) -> Result<PadicNum> {
    let base = angle(a, ctx)?;
    let pos = base.pow(e.unsigned_abs());
    if e < 0 {
        pos.inverse()
    } else {
        Ok(pos)
    }
}

/// `<a>^{-s} = Σ_k C(-s, k) (<a> - 1)^k`, summed until the terms drop below working
/// precision.
pub fn angle_pow_neg_s(a: &BigInt, s: &PadicNum, ctx: &PadicContext) -> Result<PadicNum> {
    require_in_disk(s)?;
    let p = ctx.prime();
    let z = angle(a, ctx)?.try_sub(&ctx.int(1))?;
    let terms = ctx.series_terms();
    let neg = s.neg();
    let mut binom = PadicNum::one(p, s.precision());
    let mut zk = PadicNum::one(p, ctx.working());
    let mut sum = PadicNum::zero(p, i64::MAX / 4);
    for k in 0..terms {
        if k > 0 {
            // C(-s, k) = C(-s, k-1) (-s - k + 1) / k
            let factor = neg.try_sub(&PadicNum::from_int(p, k as i64 - 1, s.precision()))?;
            binom = binom
                .try_mul(&factor)?
                .mul_rational(&Rational::new(BigInt::one(), BigInt::from(k)));
            zk = zk.try_mul(&z)?;
        }
        sum = sum.try_add(&binom.try_mul(&zk)?)?;
    }
    Ok(sum.cap_precision(ctx.working()))
}

/// The canonical embedding root `ω(g)^{(p-1)/m}` for the smallest primitive root `g`
/// mod p: a primitive m-th root of unity in Z_p.
pub fn root_of_unity(m: u64, ctx: &PadicContext) -> Result<PadicNum> {
    let p = ctx.prime();
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return Err(Error::UnsupportedEmbedding { order: m, p });
    }
    let g = arith::smallest_primitive_root(p);
    Ok(teichmuller(&BigInt::from(g), ctx)?.pow((p - 1) / m))
}

/// Parses a p-adic integer given as base-p digits, least significant first.
pub fn parse_digits(p: u64, text: &str) -> Result<PadicNum> {
    let digits: Option<Vec<u64>> = text
        .trim()
        .chars()
        .map(|c| c.to_digit(36).map(u64::from))
        .collect();
    match digits {
        Some(d) if !d.is_empty() => PadicNum::from_digits(p, &d),
        _ => domain(format!("bad base-{p} digit string {text:?}")),
    }
}

impl PadicNum {
    /// True when the value is an ordinary integer `n` with `|n| < p^precision / 2`,
    /// returning it. Used for display only.
    pub fn small_integer(&self) -> Option<i64> {
        let n = self.to_bigint()?;
        let modulus = p_pow(self.p, self.precision.max(0));
        let half = &modulus / 2;
        let signed = if n > half { n - modulus } else { n };
        if signed.abs() < BigInt::from(1_000_000_000i64) {
            signed.to_i64()
        } else {
            None
        }
    }
}
