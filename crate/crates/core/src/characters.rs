//! Exact Dirichlet characters.
//!
//! A character modulo `m` is stored as an exponent vector on the generators of
//! `(Z/m)*`: `χ(g_i) = exp(2πi·e_i/ord_i)`. Values are [`RationalAngle`]s, so
//! parity, conductors and kernel tests are exact; floating point only enters
//! through [`CharacterValue::to_complex`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::modular::{divisors, gcd, lcm};
use crate::units::{odometer_step, require_admissible, UnitGroupStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharacterValue {
    Zero,
    Angle(RationalAngle),
}

impl CharacterValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Self::Zero => Complex64::new(0.0, 0.0),
            Self::Angle(a) => a.to_complex(),
        }
    }

    pub fn angle(self) -> Option<RationalAngle> {
        match self {
            Self::Zero => None,
            Self::Angle(a) => Some(a),
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, Self::Angle(a) if a.is_zero())
    }

    pub fn conj(self) -> Self {
        match self {
            Self::Zero => Self::Zero,
            Self::Angle(a) => Self::Angle(-a),
        }
    }
}

impl fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "0"),
            Self::Angle(a) if a.is_zero() => write!(f, "1"),
            Self::Angle(a) if *a == RationalAngle::HALF => write!(f, "-1"),
            Self::Angle(a) => write!(f, "e({a})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Even => "even",
            Self::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    structure: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    // lcm of the generator orders; every value is a multiple of 1/denominator
    denominator: u64,
}

impl DirichletCharacter {
    pub fn new(structure: Arc<UnitGroupStructure>, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != structure.orders().len() {
            return Err(Error::InvalidCharacter {
                label: format_label(structure.modulus(), &exponents),
                reason: format!(
                    "expected {} exponents, got {}",
                    structure.orders().len(),
                    exponents.len()
                ),
            });
        }
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(structure.orders())
            .map(|(&e, &o)| e % o)
            .collect();
        let denominator = structure.orders().iter().fold(1, |acc, &o| lcm(acc, o));
        Ok(Self {
            structure,
            exponents,
            denominator,
        })
    }

    /// The trivial character modulo 1.
    pub fn trivial() -> Self {
        let structure = Arc::new(UnitGroupStructure::build(1).expect("modulus 1 is valid"));
        Self::new(structure, Vec::new()).expect("no exponents for the trivial group")
    }

    pub fn principal(structure: Arc<UnitGroupStructure>) -> Self {
        let n = structure.orders().len();
        Self::new(structure, vec![0; n]).expect("length matches")
    }

    pub fn modulus(&self) -> u64 {
        self.structure.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn structure(&self) -> &Arc<UnitGroupStructure> {
        &self.structure
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn evaluate(&self, n: i64) -> CharacterValue {
        let Ok(logs) = self.structure.dlog(n) else {
            return CharacterValue::Zero;
        };
        let d = self.denominator;
        let num = logs
            .iter()
            .zip(&self.exponents)
            .zip(self.structure.orders())
            .fold(0u128, |acc, ((&l, &e), &o)| {
                (acc + l as u128 * e as u128 * (d / o) as u128) % d as u128
            });
        CharacterValue::Angle(RationalAngle::new(num as i64, d))
    }

    /// Complex value `χ(n)` under the standard embedding.
    pub fn value(&self, n: i64) -> Complex64 {
        self.evaluate(n).to_complex()
    }

    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(self.structure.orders())
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        Self::new(self.structure.clone(), exponents).expect("same structure")
    }

    pub fn parity(&self) -> Result<Parity> {
        match self.evaluate(-1) {
            CharacterValue::Angle(a) if a.is_zero() => Ok(Parity::Even),
            CharacterValue::Angle(a) if a == RationalAngle::HALF => Ok(Parity::Odd),
            other => Err(Error::Internal(format!(
                "χ(-1) = {other} for {self}, expected ±1"
            ))),
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self.parity(), Ok(Parity::Even))
    }

    /// Smallest `f | m` such that `χ` is trivial on units `k = 1 (mod f)`.
    pub fn conductor(&self) -> u64 {
        let m = self.modulus();
        if self.is_principal() {
            return 1;
        }
        let units: Vec<u64> = self.structure.units().collect();
        divisors(m)
            .into_iter()
            .find(|&f| {
                units
                    .iter()
                    .filter(|&&k| k % f == 1 % f)
                    .all(|&k| self.evaluate(k as i64).is_one())
            })
            .unwrap_or(m)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character modulo the conductor that agrees with `self` on units.
    pub fn induce_primitive(&self) -> Result<Self> {
        let m = self.modulus();
        let f = self.conductor();
        if f == m {
            return Ok(self.clone());
        }
        let target = Arc::new(UnitGroupStructure::build(f)?);
        let mut exponents = Vec::with_capacity(target.generators().len());
        for (&h, &order) in target.generators().iter().zip(target.orders()) {
            let lift = (0..m)
                .map(|t| h + t * f)
                .find(|&n| gcd(n, m) == 1)
                .ok_or_else(|| {
                    Error::Internal(format!("no unit lift of {h} mod {f} to mod {m}"))
                })?;
            let angle = self
                .evaluate(lift as i64)
                .angle()
                .ok_or_else(|| Error::Internal("lifted generator is not a unit".into()))?;
            let scaled = angle.numerator() as u128 * order as u128;
            if !scaled.is_multiple_of(angle.denominator() as u128) {
                return Err(Error::Internal(format!(
                    "value {angle} of {self} at {lift} has order not dividing {order}"
                )));
            }
            exponents.push((scaled / angle.denominator() as u128) as u64);
        }
        Self::new(target, exponents)
    }

    pub fn label(&self) -> String {
        format_label(self.modulus(), &self.exponents)
    }

    /// Parses a `"m:e1,e2,..."` label; exponents must lie within the generator orders.
    pub fn from_label(label: &str) -> Result<Self> {
        let parse_err = || Error::ParseLabel(label.to_string());
        let (m, exps) = label.split_once(':').ok_or_else(parse_err)?;
        let m: u64 = m.trim().parse().map_err(|_| parse_err())?;
        if m == 0 {
            return Err(parse_err());
        }
        let exps: Vec<u64> = if exps.trim().is_empty() {
            Vec::new()
        } else {
            exps.split(',')
                .map(|e| e.trim().parse::<u64>().map_err(|_| parse_err()))
                .collect::<Result<_>>()?
        };
        let structure = Arc::new(UnitGroupStructure::build(m)?);
        if exps.len() != structure.orders().len()
            || exps.iter().zip(structure.orders()).any(|(e, o)| e >= o)
        {
            return Err(Error::InvalidCharacter {
                label: label.to_string(),
                reason: format!("generator orders modulo {m} are {:?}", structure.orders()),
            });
        }
        Self::new(structure, exps)
    }
}

fn format_label(m: u64, exps: &[u64]) -> String {
    let body: Vec<String> = exps.iter().map(u64::to_string).collect();
    format!("{m}:{}", body.join(","))
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl PartialOrd for DirichletCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DirichletCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus(), &self.exponents).cmp(&(other.modulus(), &other.exponents))
    }
}

impl std::hash::Hash for DirichletCharacter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.exponents.hash(state);
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for DirichletCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_label(s)
    }
}

/// All characters modulo any `m >= 1`, lexicographic in the exponent vector.
pub(crate) fn all_characters(m: u64) -> Result<Vec<DirichletCharacter>> {
    let structure = Arc::new(UnitGroupStructure::build(m)?);
    let orders = structure.orders().to_vec();
    let mut exps = vec![0u64; orders.len()];
    let mut out = Vec::with_capacity(structure.order() as usize);
    loop {
        out.push(DirichletCharacter::new(structure.clone(), exps.clone())?);
        if !odometer_step(&mut exps, &orders) {
            break;
        }
    }
    Ok(out)
}

pub fn character_group(m: u64) -> Result<Vec<DirichletCharacter>> {
    if m <= 2 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: "must be at least 3",
        });
    }
    all_characters(m)
}

/// Even characters modulo `m`, principal first: the characters of `(Z/m)*/{±1}`.
pub fn even_characters(m: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(all_characters(m)?
        .into_iter()
        .filter(DirichletCharacter::is_even)
        .collect())
}

pub fn even_nontrivial(m: u64) -> Result<Vec<DirichletCharacter>> {
    require_admissible(m)?;
    Ok(even_characters(m)?
        .into_iter()
        .filter(|c| !c.is_principal())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::euler_phi;
    use proptest::prelude::*;

    fn find(m: u64, exps: &[u64]) -> DirichletCharacter {
        all_characters(m)
            .unwrap()
            .into_iter()
            .find(|c| c.exponents() == exps)
            .unwrap()
    }

    fn quadratic_mod(p: u64) -> DirichletCharacter {
        let order = euler_phi(p).unwrap();
        find(p, &[order / 2])
    }

    #[test]
    fn group_sizes() {
        assert_eq!(character_group(5).unwrap().len(), 4);
        let eight = character_group(8).unwrap();
        let exps: Vec<&[u64]> = eight.iter().map(|c| c.exponents()).collect();
        assert_eq!(exps, vec![&[0, 0][..], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(
            character_group(12).unwrap().len(),
            euler_phi(12).unwrap() as usize
        );
        assert!(character_group(2).is_err());
        assert!(character_group(5).unwrap()[0].is_principal());
    }

    #[test]
    fn evaluation_examples() {
        let q5 = quadratic_mod(5);
        // squares mod 5 are {1, 4}, so 2 is a non-residue
        assert_eq!(q5.evaluate(2), CharacterValue::Angle(RationalAngle::HALF));
        for chi in character_group(4).unwrap() {
            assert_eq!(chi.evaluate(2), CharacterValue::Zero);
        }
        let principal = &character_group(5).unwrap()[0];
        assert_eq!(
            principal.evaluate(7),
            CharacterValue::Angle(RationalAngle::ZERO)
        );
    }

    #[test]
    fn quadratic_matches_legendre_symbol() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let chi = quadratic_mod(p);
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for n in 1..p {
                let expected = if squares.contains(&n) {
                    RationalAngle::ZERO
                } else {
                    RationalAngle::HALF
                };
                assert_eq!(chi.evaluate(n as i64), CharacterValue::Angle(expected));
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(quadratic_mod(5).parity().unwrap(), Parity::Even);
        let odd4 = find(4, &[1]);
        assert_eq!(odd4.evaluate(3), CharacterValue::Angle(RationalAngle::HALF));
        assert_eq!(odd4.parity().unwrap(), Parity::Odd);
        for m in [5u64, 8, 12, 15] {
            assert_eq!(
                character_group(m).unwrap()[0].parity().unwrap(),
                Parity::Even
            );
        }
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(character_group(12).unwrap()[0].conductor(), 1);
        // mod 15 = 3 * 5, generators lifted from (2 mod 3) and (2 mod 5)
        let chi = find(15, &[1, 0]);
        assert_eq!(chi.conductor(), 3);
        let chi16 = find(16, &[0, 2]);
        assert!(chi16.is_even());
        assert_eq!(chi16.conductor(), 8);
        let conductors: Vec<u64> = character_group(8)
            .unwrap()
            .iter()
            .map(|c| c.conductor())
            .collect();
        assert_eq!(conductors, vec![1, 8, 4, 8]);
    }

    #[test]
    fn conductor_brute_force() {
        // f is minimal among divisors d where χ is constant on classes mod d
        for m in 3..=60u64 {
            for chi in character_group(m).unwrap() {
                let f = chi.conductor();
                let periodic = |d: u64| {
                    (1..m).filter(|&a| gcd(a, m) == 1).all(|a| {
                        (1..m)
                            .filter(|&b| gcd(b, m) == 1 && (a + m - b) % d == 0)
                            .all(|b| chi.evaluate(a as i64) == chi.evaluate(b as i64))
                    })
                };
                assert!(periodic(f), "{chi} not periodic mod {f}");
                for d in divisors(m).into_iter().filter(|&d| d < f) {
                    assert!(!periodic(d), "{chi} periodic mod {d} < conductor {f}");
                }
            }
        }
    }

    #[test]
    fn induction_examples() {
        let p12 = character_group(12).unwrap()[0].induce_primitive().unwrap();
        assert_eq!(p12.modulus(), 1);
        assert!(p12.is_principal());

        let chi = find(15, &[1, 0]);
        let star = chi.induce_primitive().unwrap();
        assert_eq!(star.modulus(), 3);
        assert_eq!(star, quadratic_mod(3));
        for n in [1i64, 2, 4, 7, 8, 11, 13, 14] {
            assert_eq!(star.evaluate(n), chi.evaluate(n));
        }

        let q5 = quadratic_mod(5);
        assert_eq!(q5.induce_primitive().unwrap(), q5);
    }

    #[test]
    fn induction_consistency_exhaustive() {
        for m in 3..=72u64 {
            for chi in character_group(m).unwrap() {
                let star = chi.induce_primitive().unwrap();
                assert_eq!(star.modulus(), chi.conductor());
                assert_eq!(star.conductor(), star.modulus(), "{chi} -> {star}");
                for n in (1..m).filter(|&n| gcd(n, m) == 1) {
                    assert_eq!(star.evaluate(n as i64), chi.evaluate(n as i64));
                }
            }
        }
    }

    #[test]
    fn even_nontrivial_examples() {
        assert_eq!(even_nontrivial(5).unwrap().len(), 1);
        assert_eq!(even_nontrivial(5).unwrap()[0], quadratic_mod(5));
        let seven = even_nontrivial(7).unwrap();
        assert_eq!(seven.len(), 2);
        assert_eq!(seven[0].conjugate(), seven[1]);
        assert_eq!(even_nontrivial(16).unwrap().len(), 3);
        assert!(matches!(even_nontrivial(6), Err(Error::ModulusTwoMod4(6))));
        for m in (3..100u64).filter(|m| m % 4 != 2) {
            assert_eq!(
                even_nontrivial(m).unwrap().len() as u64,
                euler_phi(m).unwrap() / 2 - 1
            );
        }
    }

    #[test]
    fn orthogonality() {
        for m in 3..=64u64 {
            for chi in character_group(m)
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_principal())
            {
                let s: Complex64 = (1..=m as i64).map(|r| chi.value(r)).sum();
                assert!(s.norm() < 1e-12, "{chi}: {s}");
            }
        }
    }

    #[test]
    fn labels_roundtrip() {
        for m in [1u64, 5, 8, 12, 16, 45] {
            for chi in all_characters(m).unwrap() {
                let back: DirichletCharacter = chi.label().parse().unwrap();
                assert_eq!(back, chi);
            }
        }
        assert_eq!(DirichletCharacter::trivial().label(), "1:");
        assert!(DirichletCharacter::from_label("5:4").is_err());
        assert!(DirichletCharacter::from_label("5").is_err());
        assert!(DirichletCharacter::from_label("8:1").is_err());
        assert!(DirichletCharacter::from_label("x:1").is_err());
    }

    proptest! {
        #[test]
        fn multiplicative_and_conjugate(m in 3u64..80, idx in 0usize..64, a in 1i64..500, b in 1i64..500) {
            let group = character_group(m).unwrap();
            let chi = &group[idx % group.len()];
            if gcd(a as u64, m) == 1 && gcd(b as u64, m) == 1 {
                let (CharacterValue::Angle(x), CharacterValue::Angle(y), CharacterValue::Angle(z)) =
                    (chi.evaluate(a), chi.evaluate(b), chi.evaluate(a * b)) else { panic!("unit gave zero") };
                prop_assert_eq!(z, x + y);
            }
            prop_assert_eq!(chi.conjugate().evaluate(a), chi.evaluate(a).conj());
            prop_assert!((chi.conjugate().value(a) - chi.value(a).conj()).norm() == 0.0);
        }
    }
}
