//! The unit group `(Z/m)*` and its quotient `G = (Z/m)* / {±1}`.

use crate::error::{Error, Result};
use crate::modular::{crt_split, euler_phi, gcd, mul_mod, odd_prime_power, primitive_root, reduce};

/// `(Z/m)*` written as a product of cyclic groups, with a discrete-log table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    // indexed by residue; None for non-units
    dlogs: Vec<Option<Vec<u64>>>,
}

impl UnitGroupStructure {
    /// Builds the structure for any `m >= 1`; `m = 1, 2` give the trivial group.
    pub(crate) fn build(m: u64) -> Result<Self> {
        let split = crt_split(m)?;
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        let factors = split.moduli().to_vec();
        for (i, &q) in factors.iter().enumerate() {
            let local: Vec<(u64, u64)> = if q % 2 == 1 {
                vec![(primitive_root(q)?, euler_phi(q)?)]
            } else if q == 2 {
                vec![]
            } else if q == 4 {
                vec![(3, 2)]
            } else {
                vec![(q - 1, 2), (5, q / 4)]
            };
            for (g, ord) in local {
                let residues: Vec<u64> = factors
                    .iter()
                    .enumerate()
                    .map(|(j, _)| if j == i { g } else { 1 })
                    .collect();
                generators.push(split.lift(&residues));
                orders.push(ord);
            }
        }

        let mut dlogs = vec![None; m as usize];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let value = generators.iter().zip(&exps).fold(1 % m, |acc, (&g, &e)| {
                mul_mod(acc, crate::modular::pow_mod(g, e, m), m)
            });
            if dlogs[value as usize].is_some() {
                return Err(Error::Internal(format!(
                    "generators of (Z/{m})* are not independent"
                )));
            }
            dlogs[value as usize] = Some(exps.clone());
            if !odometer_step(&mut exps, &orders) {
                break;
            }
        }
        Ok(Self {
            modulus: m,
            generators,
            orders,
            dlogs,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Group order, i.e. `phi(m)`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_unit(&self, a: i64) -> bool {
        gcd(reduce(a, self.modulus), self.modulus) == 1
    }

    /// Exponent vector `e` with `a = prod g_i^e_i (mod m)`.
    pub fn dlog(&self, a: i64) -> Result<&[u64]> {
        let r = reduce(a, self.modulus);
        self.dlogs[r as usize].as_deref().ok_or(Error::NotCoprime {
            value: a,
            modulus: self.modulus,
        })
    }

    /// Recomposes a unit from its exponent vector.
    pub fn element(&self, exponents: &[u64]) -> u64 {
        let m = self.modulus;
        self.generators
            .iter()
            .zip(exponents)
            .fold(1 % m, |acc, (&g, &e)| {
                mul_mod(acc, crate::modular::pow_mod(g, e, m), m)
            })
    }

    /// Units in ascending order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        self.dlogs
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_some())
            .map(|(r, _)| r as u64)
    }
}

/// Advances `exps` lexicographically (last coordinate fastest) within `orders`.
/// Returns false after wrapping back to all zeros.
pub(crate) fn odometer_step(exps: &mut [u64], orders: &[u64]) -> bool {
    for i in (0..exps.len()).rev() {
        exps[i] += 1;
        if exps[i] < orders[i] {
            return true;
        }
        exps[i] = 0;
    }
    false
}

fn require_at_least_three(m: u64) -> Result<()> {
    if m <= 2 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: "must be at least 3",
        });
    }
    Ok(())
}

pub fn unit_group(m: u64) -> Result<UnitGroupStructure> {
    require_at_least_three(m)?;
    UnitGroupStructure::build(m)
}

/// Rejects moduli `m = 2 (mod 4)`, which the class-number statements exclude.
pub fn require_admissible(m: u64) -> Result<()> {
    require_at_least_three(m)?;
    if m % 4 == 2 {
        return Err(Error::ModulusTwoMod4(m));
    }
    Ok(())
}

/// Canonical representatives `1 <= k < m/2` of `(Z/m)* / {±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGroup {
    modulus: u64,
    representatives: Vec<u64>,
}

impl HalfGroup {
    pub(crate) fn build(m: u64) -> Self {
        let representatives = if m <= 2 {
            vec![1 % m.max(2)]
        } else {
            (1..m.div_ceil(2))
                .filter(|&k| 2 * k < m && gcd(k, m) == 1)
                .collect()
        };
        Self {
            modulus: m,
            representatives,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn representatives(&self) -> &[u64] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Representative of the class `±a`.
    pub fn canonical(&self, a: i64) -> u64 {
        let m = self.modulus;
        if m <= 2 {
            return 1;
        }
        let r = reduce(a, m);
        r.min(m - r)
    }

    /// Position of the class of `a` among the representatives.
    pub fn index_of(&self, a: i64) -> Option<usize> {
        self.representatives.binary_search(&self.canonical(a)).ok()
    }
}

pub fn half_group(m: u64) -> Result<HalfGroup> {
    require_at_least_three(m)?;
    Ok(HalfGroup::build(m))
}

/// Whether `-1` and `2` generate `(Z/q)*` for an odd prime power `q`.
pub fn minus_one_two_generate(q: u64) -> Result<bool> {
    odd_prime_power(q)?;
    if q == 1 {
        return Ok(true);
    }
    let phi = euler_phi(q)?;
    let order_two = crate::modular::multiplicative_order(2, q)?;
    // <-1, 2> = <2> or <2> ∪ -<2>, depending on whether -1 is a power of 2
    let minus_one_in = order_two % 2 == 0 && crate::modular::pow_mod(2, order_two / 2, q) == q - 1;
    let size = if minus_one_in {
        order_two
    } else {
        2 * order_two
    };
    Ok(size == phi)
}
