//! Arithmetic in Q(ζ_m), where Dirichlet character values live.
//!
//! Elements are coefficient vectors over the power basis `1, ζ, ..., ζ^{φ(m)-1}`
//! reduced modulo the cyclotomic polynomial Φ_m, so equality is coefficient-wise.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::PadicNum;
use crate::rational::{Rational, RationalJson};

/// Integer polynomial, coefficients little-endian.
pub type IntPoly = Vec<BigInt>;

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> IntPoly {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = &den[dn];
    debug_assert!(lead.is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

static PHI_MEMO: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();

/// Φ_m, computed by dividing `x^m - 1` by Φ_d for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let memo = PHI_MEMO.get_or_init(Default::default);
    if let Some(phi) = memo.read().expect("memo poisoned").get(&m) {
        return phi.clone();
    }
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in arith::divisors(m).into_iter().filter(|&d| d < m) {
        poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
    }
    let phi = Arc::new(poly);
    memo.write()
        .expect("memo poisoned")
        .entry(m)
        .or_insert(phi)
        .clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElem {
    m: u64,
    coeffs: Vec<Rational>,
}

impl CycElem {
    fn degree(m: u64) -> usize {
        arith::euler_phi(m) as usize
    }

    pub fn zero(m: u64) -> Self {
        CycElem {
            m,
            coeffs: vec![Rational::zero(); Self::degree(m)],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u64, q: Rational) -> Self {
        let mut out = Self::zero(m);
        out.coeffs[0] = q;
        out
    }

    /// `ζ_m^k`.
    pub fn zeta_pow(m: u64, k: u64) -> Self {
        let k = (k % m) as usize;
        let mut raw = vec![Rational::zero(); k.max(1) + 1];
        raw[k] = Rational::one();
        Self::reduce(m, raw)
    }

    /// Coefficients as given, reduced modulo Φ_m.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Self {
        Self::reduce(m, coeffs)
    }

    fn reduce(m: u64, mut raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        for i in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(d) {
                if !pj.is_zero() {
                    raw[i - d + j] -= &c * Rational::from_integer(pj.clone());
                }
            }
        }
        raw.resize(d, Rational::zero());
        CycElem { m, coeffs: raw }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::Structural(format!(
                "cyclotomic orders differ: {} vs {}",
                self.m, other.m
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycElem { m: self.m, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.coeffs.len() == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.m, raw))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycElem {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Adds `q * ζ^k` in place.
    pub fn add_zeta_multiple(&mut self, k: u64, q: &Rational) {
        if self.coeffs.len() == 1 {
            // m ∈ {1, 2}: ζ = ±1
            let sign = if self.m == 2 && k % 2 == 1 { -q } else { q.clone() };
            self.coeffs[0] += sign;
            return;
        }
        let z = Self::zeta_pow(self.m, k);
        for (c, zc) in self.coeffs.iter_mut().zip(&z.coeffs) {
            if !zc.is_zero() {
                *c += zc * q;
            }
        }
    }

    pub fn to_json(&self) -> CycElemJson {
        CycElemJson {
            m: self.m,
            coeffs: self.coeffs.iter().map(RationalJson::from).collect(),
        }
    }

    pub fn from_json(j: &CycElemJson) -> Result<Self> {
        if j.m == 0 {
            return Err(Error::Domain("cyclotomic order must be positive".into()));
        }
        if j.coeffs.len() != Self::degree(j.m) {
            return Err(Error::Domain(format!(
                "expected {} coefficients for m = {}",
                Self::degree(j.m),
                j.m
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(Rational::try_from)
            .collect::<Result<_>>()?;
        Ok(CycElem { m: j.m, coeffs })
    }
}

impl std::fmt::Display for CycElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::rational::display;
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", display(q));
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => display(c),
                1 => format!("({})*z{}", display(c), self.m),
                _ => format!("({})*z{}^{}", display(c), self.m, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycElem> for &CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &CycElem) -> CycElem {
                $body(self, rhs)
            }
        }
        impl $tr for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: CycElem) -> CycElem {
                $body(&self, &rhs)
            }
        }
    };
}

// Operators panic on mismatched orders; use the `try_*` forms to get an error instead.
forward_binop!(Add, add, |a: &CycElem, b: &CycElem| a.try_add(b).expect("cyclotomic order mismatch"));
forward_binop!(Sub, sub, |a: &CycElem, b: &CycElem| a.try_add(&-b).expect("cyclotomic order mismatch"));
forward_binop!(Mul, mul, |a: &CycElem, b: &CycElem| a.try_mul(b).expect("cyclotomic order mismatch"));

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        self.scale(&-Rational::one())
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

/// Wire form `{"m": int, "coeffs": [Rational, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycElemJson {
    pub m: u64,
    pub coeffs: Vec<RationalJson>,
}

/// Image of `a` under the embedding `ζ_m ↦ root` into Z_p. `root` must be a primitive
/// m-th root of unity; see [`crate::padic::root_of_unity`].
pub fn cyc_embed_padic(a: &CycElem, root: &PadicNum) -> Result<PadicNum> {
    let p = root.prime();
    if !(p - 1).is_multiple_of(a.m) {
        return Err(Error::UnsupportedEmbedding { order: a.m, p });
    }
    let precision = root.precision();
    let mut acc = PadicNum::zero(p, precision);
    let mut power = PadicNum::one(p, precision);
    for (i, c) in a.coeffs.iter().enumerate() {
        if i > 0 {
            power = power.try_mul(root)?;
        }
        if !c.is_zero() {
            acc = acc.try_add(&power.mul_rational(c))?;
        }
    }
    Ok(acc.cap_precision(precision))
}
