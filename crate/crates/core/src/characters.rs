//! Dirichlet characters of odd modulus.
//!
//! `(Z/f)^*` is decomposed into cyclic factors, one per prime power `q = ℓ^k || f`,
//! generated by the CRT lift of the smallest primitive root mod `q`. A character is
//! an exponent vector against those generators: `χ(g_i) = ζ_{o_i}^{e_i}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic::CycElem;
use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Component {
    /// Prime power `ℓ^k` exactly dividing the modulus.
    modulus: u64,
    /// Generator of `(Z/f)^*` congruent to a primitive root mod `modulus` and to 1
    /// modulo the cofactor.
    generator: u64,
    order: u64,
    /// Discrete logs mod `modulus` against the primitive root; `None` off units.
    dlog: Vec<Option<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupStructure {
    modulus: u64,
    components: Vec<Component>,
}

impl UnitGroupStructure {
    pub fn new(f: u64) -> Result<Self> {
        if f == 0 || f.is_multiple_of(2) {
            return domain(format!("modulus f = {f} must be odd and positive"));
        }
        let components = arith::factor(f)
            .into_iter()
            .map(|(l, k)| {
                let q = l.pow(k);
                let cofactor = f / q;
                let root = arith::smallest_primitive_root(q);
                // x ≡ root (mod q), x ≡ 1 (mod cofactor)
                let generator = if cofactor == 1 {
                    root
                } else {
                    let inv = arith::inv_mod(cofactor as i64, q as i64).expect("coprime") as u64;
                    let t = ((root + q - 1) % q) * inv % q;
                    (1 + cofactor * t) % f
                };
                let order = arith::euler_phi(q);
                let mut dlog = vec![None; q as usize];
                let mut x = 1u64;
                for e in 0..order {
                    dlog[x as usize] = Some(e);
                    x = x * root % q;
                }
                Component {
                    modulus: q,
                    generator,
                    order,
                    dlog,
                }
            })
            .collect();
        Ok(UnitGroupStructure {
            modulus: f,
            components,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.generator).collect()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    pub fn size(&self) -> u64 {
        self.orders().iter().product()
    }

    /// Exponents of `a` against the generators; `None` when `a` is not a unit.
    pub fn discrete_log(&self, a: i64) -> Option<Vec<u64>> {
        self.components
            .iter()
            .map(|c| c.dlog[a.rem_euclid(c.modulus as i64) as usize])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    order: u64,
    conductor: u64,
}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroupStructure>, exponents: Vec<u64>) -> Result<Self> {
        let orders = group.orders();
        if exponents.len() != orders.len() || exponents.iter().zip(&orders).any(|(e, o)| e >= o) {
            return domain(format!(
                "exponent vector {exponents:?} does not fit generator orders {orders:?}"
            ));
        }
        let order = exponents
            .iter()
            .zip(&orders)
            .map(|(&e, &o)| o / arith::gcd(e, o))
            .fold(1, |acc, t| acc / arith::gcd(acc, t) * t);
        let mut chi = DirichletCharacter {
            group,
            exponents,
            order,
            conductor: 0,
        };
        chi.conductor = chi.compute_conductor();
        Ok(chi)
    }

    pub fn trivial(f: u64) -> Result<Self> {
        let group = Arc::new(UnitGroupStructure::new(f)?);
        let n = group.components.len();
        Self::new(group, vec![0; n])
    }

    /// The character at position `index` in the canonical enumeration mod `f`.
    pub fn from_index(f: u64, index: u64) -> Result<Self> {
        let group = Arc::new(UnitGroupStructure::new(f)?);
        if index >= group.size() {
            return domain(format!(
                "character index {index} out of range: there are {} characters mod {f}",
                group.size()
            ));
        }
        let orders = group.orders();
        let mut exponents = vec![0; orders.len()];
        let mut rest = index;
        for (e, &o) in exponents.iter_mut().zip(&orders).rev() {
            *e = rest % o;
            rest /= o;
        }
        Self::new(group, exponents)
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn group(&self) -> &UnitGroupStructure {
        &self.group
    }

    /// Position in the canonical (lexicographic) enumeration.
    pub fn index(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.orders())
            .fold(0, |acc, (&e, o)| acc * o + e)
    }

    /// `k` with `χ(a) = ζ_m^k`, or `None` when `gcd(a, f) > 1`. Every integer is a unit
    /// mod 1, so the mod-1 character is 1 everywhere.
    pub fn value_exponent(&self, a: i64) -> Option<u64> {
        let logs = self.group.discrete_log(a)?;
        let m = self.order;
        let k = logs
            .iter()
            .zip(&self.exponents)
            .zip(&self.group.components)
            .map(|((&d, &e), c)| (d % m) * (e * m / c.order % m) % m)
            .sum::<u64>();
        Some(k % m)
    }

    pub fn evaluate(&self, a: i64) -> CycElem {
        match self.value_exponent(a) {
            Some(k) => CycElem::zeta_pow(self.order, k),
            None => CycElem::zero(self.order),
        }
    }

    fn compute_conductor(&self) -> u64 {
        let f = self.modulus();
        let units: Vec<i64> = (1..=f as i64)
            .filter(|&a| arith::gcd(a as u64, f) == 1)
            .collect();
        arith::divisors(f)
            .into_iter()
            .find(|&d| {
                units
                    .iter()
                    .filter(|&&a| (a - 1) % d as i64 == 0)
                    .all(|&a| self.value_exponent(a) == Some(0))
            })
            .unwrap_or(f)
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            f: self.modulus(),
            exponents: self.exponents.clone(),
            order: self.order,
            conductor: self.conductor,
            index: self.index(),
        }
    }

    pub fn from_json(j: &CharacterJson) -> Result<Self> {
        let group = Arc::new(UnitGroupStructure::new(j.f)?);
        let chi = Self::new(group, j.exponents.clone())?;
        if chi.order != j.order || chi.conductor != j.conductor || chi.index() != j.index {
            return domain("character JSON is internally inconsistent");
        }
        Ok(chi)
    }
}

/// Wire form `{"f", "exponents", "order", "conductor", "index"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub f: u64,
    pub exponents: Vec<u64>,
    pub order: u64,
    pub conductor: u64,
    pub index: u64,
}

pub fn unit_group_structure(f: u64) -> Result<UnitGroupStructure> {
    UnitGroupStructure::new(f)
}

/// All characters mod `f` in canonical order; index 0 is the principal character.
pub fn enumerate_characters(f: u64, primitive_only: bool) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(UnitGroupStructure::new(f)?);
    let orders = group.orders();
    let mut out = Vec::new();
    let mut exps = vec![0u64; orders.len()];
    loop {
        let chi = DirichletCharacter::new(group.clone(), exps.clone())?;
        if !primitive_only || chi.is_primitive() {
            out.push(chi);
        }
        // lexicographic increment, last generator fastest
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

pub fn conductor(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}
