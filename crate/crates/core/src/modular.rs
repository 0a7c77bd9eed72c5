//! Integer and modular-arithmetic substrate.
//!
//! Moduli in this crate are desk-scale (a few thousand at most), so plain
//! trial division and `u64` arithmetic with `u128` intermediates suffice.

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs, ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    /// Product of `p^e` over all factors.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// `Some((p, e))` when the factored number is a prime power `p^e`, `e >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Prime-power parts `p^e`, in the same order as the factors.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidModulus {
            modulus: n,
            reason: "must be at least 1",
        });
    }
    Ok(())
}

pub fn factorize(n: u64) -> Result<Factorization> {
    require_positive(n)?;
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Least non-negative residue of `a` modulo `m`.
pub fn reduce(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of a unit `a` modulo `m` (`m >= 2`).
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if gcd(a % m, m) != 1 {
        return Err(Error::NotCoprime {
            value: a as i64,
            modulus: m,
        });
    }
    let phi = euler_phi(m)?;
    let mut order = phi;
    for &(p, _) in factorize(phi)?.factors() {
        while order % p == 0 && pow_mod(a, order / p, m) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Checks that `q` is an odd prime power and returns `(p, n)`.
pub fn odd_prime_power(q: u64) -> Result<(u64, u32)> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenModulus(q));
    }
    factorize(q)?
        .as_prime_power()
        .ok_or(Error::NotPrimePower(q))
}

/// Smallest generator of the cyclic group `(Z/q)*` for an odd prime power `q`.
pub fn primitive_root(q: u64) -> Result<u64> {
    let (p, _) = odd_prime_power(q)?;
    let phi = euler_phi(q)?;
    let phi_primes: Vec<u64> = factorize(phi)?.factors().iter().map(|f| f.0).collect();
    (2..q)
        .find(|&g| g % p != 0 && phi_primes.iter().all(|&r| pow_mod(g, phi / r, q) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root found modulo {q}")))
}

/// Chinese-remainder decomposition of `Z/m` into its prime-power factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtSplit {
    modulus: u64,
    moduli: Vec<u64>,
    // idempotents e_i with e_i = 1 mod q_i and 0 mod q_j (j != i)
    idempotents: Vec<u64>,
}

impl CrtSplit {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Prime-power moduli, ascending by prime.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn project(&self, a: i64) -> Vec<u64> {
        self.moduli.iter().map(|&q| reduce(a, q)).collect()
    }

    /// Inverse of [`CrtSplit::project`]; residues are reduced first.
    pub fn lift(&self, residues: &[u64]) -> u64 {
        assert_eq!(
            residues.len(),
            self.moduli.len(),
            "one residue per CRT factor"
        );
        if self.modulus == 1 {
            return 0;
        }
        residues
            .iter()
            .zip(&self.moduli)
            .zip(&self.idempotents)
            .fold(0u64, |acc, ((&r, &q), &e)| {
                (acc + mul_mod(r % q, e, self.modulus)) % self.modulus
            })
    }
}

pub fn crt_split(m: u64) -> Result<CrtSplit> {
    let moduli = factorize(m)?.prime_powers();
    let idempotents = moduli
        .iter()
        .map(|&q| {
            let rest = m / q;
            // rest is invertible mod q since the factors are coprime
            let inv = inv_mod(rest % q, q).unwrap_or(0);
            mul_mod(rest, inv, m)
        })
        .collect();
    Ok(CrtSplit {
        modulus: m,
        moduli,
        idempotents,
    })
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while n > 1 {
            if n.is_multiple_of(d) {
                n /= d;
                match out.last_mut() {
                    Some((p, e)) if *p == d => *e += 1,
                    _ => out.push((d, 1)),
                }
            } else {
                d += 1;
            }
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(
            factorize(9999).unwrap().factors(),
            trial_division(9999).as_slice()
        );
        assert_eq!(
            factorize(9999).unwrap().factors(),
            &[(3, 2), (11, 1), (101, 1)]
        );
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1..3000 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert_eq!(f.factors(), trial_division(n).as_slice());
        }
    }

    #[test]
    fn phi_examples_and_brute_force() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(euler_phi(32).unwrap(), 16);
        assert!(euler_phi(0).is_err());
        for n in 1..=10_000 {
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n), "phi({n})");
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(9).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert!(matches!(primitive_root(8), Err(Error::EvenModulus(8))));
        assert!(matches!(primitive_root(15), Err(Error::NotPrimePower(15))));
    }

    #[test]
    fn primitive_root_has_full_order() {
        for q in (3..2000u64).step_by(2) {
            if factorize(q).unwrap().as_prime_power().is_none() {
                continue;
            }
            let g = primitive_root(q).unwrap();
            assert_eq!(multiplicative_order(g, q).unwrap(), euler_phi(q).unwrap());
            // smallest: nothing below g generates
            for h in 2..g {
                if gcd(h, q) == 1 {
                    assert!(multiplicative_order(h, q).unwrap() < euler_phi(q).unwrap());
                }
            }
        }
    }

    #[test]
    fn crt_examples() {
        let s = crt_split(12).unwrap();
        assert_eq!(s.moduli(), &[4, 3]);
        assert_eq!(s.lift(&[3, 2]), 11);
        let s = crt_split(45).unwrap();
        assert_eq!(s.moduli(), &[9, 5]);
        assert_eq!(s.project(38), vec![2, 3]);
        let s = crt_split(27).unwrap();
        assert_eq!(s.moduli(), &[27]);
        for a in 0..27 {
            assert_eq!(s.project(a as i64), vec![a]);
            assert_eq!(s.lift(&[a]), a);
        }
    }

    #[test]
    fn crt_roundtrip_exhaustive() {
        for m in 1..=1000u64 {
            let s = crt_split(m).unwrap();
            for a in 0..m {
                assert_eq!(s.lift(&s.project(a as i64)), a, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn inverse_and_order() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(multiplicative_order(2, 17).unwrap(), 8);
        assert_eq!(multiplicative_order(2, 31).unwrap(), 5);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
