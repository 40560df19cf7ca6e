//! Invariant suites behind `padic-euler verify`. Each check reports a name, a verdict and
//! a short detail string; output order is fixed so runs are byte-for-byte repeatable.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith;
use crate::characters::{enumerate_characters, DirichletCharacter};
use crate::cyclotomic::CycElem;
use crate::error::{domain, Error, Result};
use crate::euler::{
    euler_number, euler_numbers_multi_recurrence, euler_polynomial_multi, series_expand_multi,
    EulerTable,
};
use crate::lfunction::{
    corollary2_discrepancy, l_derivative_at_0, l_padic, theorem1_rhs, DerivativeMethod,
    PadicLQuery, SValue,
};
use crate::lvalues::{
    generalized_euler_number, gf_oracle_generalized, l_value_neg, l_value_neg_binomial, LNegQuery,
};
use crate::padic::{self, PadicContext, PadicNum};
use crate::rational::{int, rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Euler,
    Complex,
    Padic,
    Derivative,
    All,
}

impl Suite {
    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Euler, Suite::Complex, Suite::Padic, Suite::Derivative],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Euler => "euler",
            Suite::Complex => "complex",
            Suite::Padic => "padic",
            Suite::Derivative => "derivative",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler" => Ok(Suite::Euler),
            "complex" => Ok(Suite::Complex),
            "padic" => Ok(Suite::Padic),
            "derivative" => Ok(Suite::Derivative),
            "all" => Ok(Suite::All),
            _ => domain(format!("unknown suite {s:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    pub p: u64,
    pub f: u64,
    pub precision: u32,
    pub guard: u32,
}

impl VerifyParams {
    pub fn validate(&self) -> Result<()> {
        if self.p < 3 || !arith::is_prime(self.p) {
            return domain(format!("p = {} must be an odd prime", self.p));
        }
        if self.f == 0 || self.f.is_multiple_of(2) {
            return domain(format!("f = {} must be odd", self.f));
        }
        if arith::gcd(self.f, self.p) != 1 {
            return domain(format!("f = {} must be prime to p = {}", self.f, self.p));
        }
        if self.precision < 6 {
            return domain("precision must be at least 6 digits");
        }
        Ok(())
    }

    fn context(&self) -> Result<PadicContext> {
        PadicContext::with_guard(self.p, self.precision, self.guard)
    }
}

struct Recorder {
    suite: Suite,
    out: Vec<CheckResult>,
}

impl Recorder {
    fn push(&mut self, check: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = match outcome {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        self.out.push(CheckResult {
            suite: self.suite.name().to_string(),
            check: check.into(),
            passed,
            detail,
        });
    }
}

/// Runs `suite` and returns one entry per check, in a fixed order.
pub fn run_suite(suite: Suite, params: &VerifyParams) -> Result<Vec<CheckResult>> {
    params.validate()?;
    let mut all = Vec::new();
    for part in suite.parts() {
        let mut rec = Recorder { suite: part, out: Vec::new() };
        match part {
            Suite::Euler => euler_suite(&mut rec),
            Suite::Complex => complex_suite(&mut rec, params),
            Suite::Padic => padic_suite(&mut rec, params)?,
            Suite::Derivative => derivative_suite(&mut rec, params)?,
            Suite::All => unreachable!(),
        }
        all.extend(rec.out);
    }
    Ok(all)
}

fn verdict(ok: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((ok, detail.into()))
}

fn euler_suite(rec: &mut Recorder) {
    rec.push("stated constants", {
        let head = [int(1), rat(-1, 2), int(0), rat(1, 4)];
        let ok = (0..4).all(|n| euler_number(n) == head[n])
            && (1..=6).all(|k| euler_number(2 * k) == int(0));
        verdict(ok, "E_0..E_3 = 1, -1/2, 0, 1/4; E_2k = 0 for k <= 6")
    });
    for r in 1..=3u32 {
        rec.push(format!("three routes r={r}"), (|| {
            let conv = EulerTable::new().prefix(r, 12)?;
            let rec_route = euler_numbers_multi_recurrence(12, r)?;
            let series = series_expand_multi(12, r, &int(0))?;
            verdict(conv == rec_route && conv == series, "n <= 12")
        })());
    }
    for r in 1..=3u32 {
        rec.push(format!("polynomial vs series r={r}"), (|| {
            let mut ok = true;
            for x in [int(0), int(1), rat(1, 3), rat(-1, 2)] {
                let series = series_expand_multi(8, r, &x)?;
                for (n, want) in series.iter().enumerate() {
                    ok &= &euler_polynomial_multi(n, r, &x)? == want;
                }
            }
            verdict(ok, "n <= 8, x in {0, 1, 1/3, -1/2}")
        })());
    }
}

fn characters_for(f: u64) -> Result<Vec<DirichletCharacter>> {
    enumerate_characters(f, true)
}

fn complex_suite(rec: &mut Recorder, params: &VerifyParams) {
    let chars = match characters_for(params.f) {
        Ok(c) => c,
        Err(e) => {
            rec.push("primitive characters", Err(e));
            return;
        }
    };
    let n_max = 6usize;
    for chi in &chars {
        for r in 1..=2u32 {
            let tag = format!("f={} chi={} r={r}", params.f, chi.index());
            rec.push(format!("oracle equivalence {tag}"), (|| {
                let oracle = gf_oracle_generalized(n_max, r, chi)?;
                let mut ok = true;
                for (n, want) in oracle.iter().enumerate() {
                    let q = LNegQuery::new(n, r, chi.clone(), params.f)?;
                    ok &= &generalized_euler_number(n, r, chi, params.f)? == want;
                    ok &= &l_value_neg(&q)? == want;
                    ok &= &l_value_neg_binomial(&q)? == want;
                }
                verdict(ok, format!("n <= {n_max}"))
            })());
            rec.push(format!("modulus independence {tag}"), (|| {
                let mut ok = true;
                for n in 0..=n_max {
                    let base: CycElem = l_value_neg(&LNegQuery::new(n, r, chi.clone(), params.f)?)?;
                    let wide = l_value_neg(&LNegQuery::new(n, r, chi.clone(), 3 * params.f)?)?;
                    ok &= base == wide;
                }
                verdict(ok, format!("F in {{{}, {}}}", params.f, 3 * params.f))
            })());
        }
    }
}

/// Primitive characters mod f whose order divides p - 1; the rest cannot be embedded.
fn embeddable(params: &VerifyParams) -> Result<(Vec<DirichletCharacter>, usize)> {
    let all = characters_for(params.f)?;
    let total = all.len();
    let ok = all
        .into_iter()
        .filter(|c| (params.p - 1).is_multiple_of(c.order()))
        .collect();
    Ok((ok, total))
}

fn same(a: &PadicNum, b: &PadicNum) -> bool {
    a == b
}

fn padic_suite(rec: &mut Recorder, params: &VerifyParams) -> Result<()> {
    let ctx = params.context()?;
    let p = params.p;
    rec.push("teichmuller and log properties", (|| {
        let n = ctx.precision();
        let units: Vec<u64> = (1..60).filter(|a| a % p != 0).collect();
        let mut ok = true;
        for &a in &units {
            let a_big = BigInt::from(a);
            let w = padic::teichmuller(&a_big, &ctx)?;
            ok &= same(&w.pow(p - 1).with_precision(n)?, &PadicNum::one(p, n));
            ok &= w.try_sub(&ctx.int(a as i64))?.valuation_or_precision() >= 1;
            let angle = padic::angle(&a_big, &ctx)?;
            ok &= angle.try_sub(&ctx.int(1))?.valuation_or_precision() >= 1;
        }
        for &a in units.iter().take(12) {
            for &b in units.iter().take(12) {
                let (ab, a_big, b_big) = (BigInt::from(a * b), BigInt::from(a), BigInt::from(b));
                let lhs = padic::iwasawa_log_int(&ab, &ctx)?;
                let rhs = padic::iwasawa_log_int(&a_big, &ctx)?
                    .try_add(&padic::iwasawa_log_int(&b_big, &ctx)?)?;
                ok &= lhs.agreement(&rhs)? >= n;
                let w_ab = padic::teichmuller(&ab, &ctx)?;
                let w_prod = padic::teichmuller(&a_big, &ctx)?
                    .try_mul(&padic::teichmuller(&b_big, &ctx)?)?;
                ok &= w_ab.agreement(&w_prod)? >= n;
            }
        }
        verdict(ok, format!("units below 60, N = {n}"))
    })());
    rec.push("angle power routes", (|| {
        let n = ctx.precision();
        let mut ok = true;
        for a in [2i64, 3, 7, 11] {
            if (a as u64).is_multiple_of(p) {
                continue;
            }
            for e in [-3i64, -1, 0, 2, 5] {
                let exact = padic::angle_pow_int(&BigInt::from(a), -e, &ctx)?;
                let series = padic::angle_pow_neg_s(&BigInt::from(a), &ctx.int(e), &ctx)?;
                ok &= exact.agreement(&series)? >= n;
            }
        }
        verdict(ok, "<a>^(-s) by series equals the integer power")
    })());

    let (chars, total) = embeddable(params)?;
    rec.push(
        "embeddable characters",
        verdict(true, format!("{} of {} primitive characters mod {}", chars.len(), total, params.f)),
    );
    for chi in &chars {
        for r in 1..=2u32 {
            let tag = format!("p={p} f={} chi={} r={r}", params.f, chi.index());
            let q = PadicLQuery::minimal(r, chi.clone(), ctx)?;
            rec.push(format!("theorem1 n=0 {tag}"), (|| {
                let lhs = l_padic(&SValue::Integer(0), &q)?;
                let rhs = theorem1_rhs(0, &q)?;
                verdict(same(&lhs, &rhs), format!("{lhs}"))
            })());
            rec.push(format!("theorem1 n=1..5 {tag}"), (|| {
                let mut ok = true;
                for n in 1..=5u32 {
                    ok &= same(&l_padic(&SValue::Integer(-(n as i64)), &q)?, &theorem1_rhs(n, &q)?);
                }
                verdict(ok, "l_p(-n) = E - p^n chi_n(p) E*")
            })());
            rec.push(format!("modulus and guard stability {tag}"), (|| {
                let wide = q.with_modulus(3 * q.big_f())?;
                let guarded = q.with_context(ctx.bump_guard(10))?;
                let mut ok = true;
                for s in [0i64, -2, 3] {
                    let base = l_padic(&SValue::Integer(s), &q)?;
                    ok &= same(&base, &l_padic(&SValue::Integer(s), &wide)?);
                    ok &= same(&base, &l_padic(&SValue::Integer(s), &guarded)?);
                }
                verdict(ok, format!("F -> {}, guard + 10", 3 * q.big_f()))
            })());
            rec.push(format!("integer vs series route {tag}"), (|| {
                let mut ok = true;
                for s in [-2i64, 0, 1] {
                    let exact = l_padic(&SValue::Integer(s), &q)?;
                    let series = l_padic(&SValue::Padic(ctx.int(s)), &q)?;
                    ok &= same(&exact, &series);
                }
                verdict(ok, "s in {-2, 0, 1}")
            })());
        }
    }
    Ok(())
}

fn derivative_suite(rec: &mut Recorder, params: &VerifyParams) -> Result<()> {
    let ctx = params.context()?;
    let p = params.p;
    let n = ctx.precision();
    let k_max = 8.min(n - 4) as u32;
    let (chars, _) = embeddable(params)?;
    for chi in &chars {
        for r in 1..=2u32 {
            let tag = format!("p={p} f={} chi={} r={r}", params.f, chi.index());
            let q = PadicLQuery::minimal(r, chi.clone(), ctx)?;
            let direct = l_derivative_at_0(&q, DerivativeMethod::Direct)?;
            rec.push(format!("finite difference {tag}"), (|| {
                let mut ok = true;
                let mut worst = i64::MAX;
                for k in 3..=k_max {
                    let fd = l_derivative_at_0(&q, DerivativeMethod::FiniteDifference(k))?;
                    let agree = direct.agreement(&fd)?;
                    worst = worst.min(agree - k as i64);
                    ok &= agree >= k as i64 - 3;
                }
                verdict(ok, format!("k = 3..{k_max}, min(agreement - k) = {worst}"))
            })());
            rec.push(format!("closed-form discrepancy {tag}"), (|| {
                let gap = corollary2_discrepancy(&q)?;
                let wide = corollary2_discrepancy(&q.with_modulus(3 * q.big_f())?)?;
                let deep = corollary2_discrepancy(&q.with_context(ctx.bump_precision(10))?)?
                    .with_precision(n)?;
                let at_zero = l_padic(&SValue::Integer(0), &q)?;
                let ok = same(&gap, &wide) && same(&gap, &deep) && same(&gap, &at_zero);
                let shown = gap.small_integer().map_or_else(|| gap.to_string(), |v| v.to_string());
                verdict(ok, format!("corollary2 - direct = {shown}"))
            })());
            rec.push(format!("guard stability {tag}"), (|| {
                let guarded = q.with_context(ctx.bump_guard(10))?;
                let ok = same(&direct, &l_derivative_at_0(&guarded, DerivativeMethod::Direct)?)
                    && same(
                        &l_derivative_at_0(&q, DerivativeMethod::Corollary2)?,
                        &l_derivative_at_0(&guarded, DerivativeMethod::Corollary2)?,
                    );
                verdict(ok, "guard + 10")
            })());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_suite_passes() {
        let params = VerifyParams { p: 5, f: 3, precision: 10, guard: 10 };
        let out = run_suite(Suite::Euler, &params).unwrap();
        assert_eq!(out.len(), 7);
        assert!(out.iter().all(|c| c.passed), "{out:?}");
    }

    #[test]
    fn bad_parameters_rejected() {
        let base = VerifyParams { p: 5, f: 3, precision: 10, guard: 10 };
        for bad in [
            VerifyParams { p: 4, ..base },
            VerifyParams { p: 2, ..base },
            VerifyParams { f: 4, ..base },
            VerifyParams { f: 15, ..base },
        ] {
            assert!(run_suite(Suite::Euler, &bad).is_err());
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
    }
}
