//! Group determinants of finite abelian groups.
//!
//! For a finite group `G` and any `f: G -> C`,
//!
//! ```text
//! det_{a,b} f(ab⁻¹) = [Σ_a f(a)] · det_{a,b≠1} [f(ab⁻¹) - f(a)]
//! ```
//!
//! and for abelian `G` the reduced determinant factors over the non-trivial
//! characters: `Π_{χ≠1} Σ_a χ(a) f(a⁻¹) = det_{a,b≠1} [f(ab⁻¹) - f(a)]`.
//! [`dedekind_det_check`] evaluates all four quantities independently.

use num_complex::Complex64;

use crate::angle::RationalAngle;
use crate::characters::even_characters;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modular::{inv_mod, mul_mod};
use crate::units::{half_group, HalfGroup};

/// Default largest group order accepted by [`dedekind_det_check`].
pub const DEFAULT_GROUP_BOUND: usize = 24;

/// A finite abelian group with elements indexed `0..order()`.
pub trait FiniteAbelianGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// One row per character (values at each element), principal character first.
    fn character_table(&self) -> Vec<Vec<Complex64>>;
}

/// `G = (Z/m)* / {±1}`, elements indexed by the sorted half-group representatives.
#[derive(Debug, Clone)]
pub struct UnitQuotientGroup {
    half: HalfGroup,
    table: Vec<Vec<Complex64>>,
}

impl UnitQuotientGroup {
    pub fn new(m: u64) -> Result<Self> {
        let half = half_group(m)?;
        let table = even_characters(m)?
            .iter()
            .map(|chi| {
                half.representatives()
                    .iter()
                    .map(|&k| chi.value(k as i64))
                    .collect()
            })
            .collect();
        Ok(Self { half, table })
    }

    pub fn half_group(&self) -> &HalfGroup {
        &self.half
    }

    fn index(&self, a: u64) -> usize {
        self.half
            .index_of(a as i64)
            .expect("products of units are units")
    }
}

impl FiniteAbelianGroup for UnitQuotientGroup {
    fn order(&self) -> usize {
        self.half.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let reps = self.half.representatives();
        self.index(mul_mod(reps[a], reps[b], self.half.modulus()))
    }

    fn inv(&self, a: usize) -> usize {
        let m = self.half.modulus();
        let x = self.half.representatives()[a];
        self.index(inv_mod(x, m).expect("representatives are units"))
    }

    fn character_table(&self) -> Vec<Vec<Complex64>> {
        self.table.clone()
    }
}

/// The cyclic group `Z/n` under addition.
#[derive(Debug, Clone, Copy)]
pub struct CyclicGroup {
    pub n: usize,
}

impl FiniteAbelianGroup for CyclicGroup {
    fn order(&self) -> usize {
        self.n
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        (a + b) % self.n
    }

    fn inv(&self, a: usize) -> usize {
        (self.n - a) % self.n
    }

    fn character_table(&self) -> Vec<Vec<Complex64>> {
        (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|a| RationalAngle::new((j * a) as i64, self.n as u64).to_complex())
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DedekindCheck {
    /// `det_{a,b} f(ab⁻¹)`
    pub group_determinant: Complex64,
    /// `[Σ f(a)] · det_{a,b≠1} [f(ab⁻¹) - f(a)]`
    pub sum_times_reduced: Complex64,
    /// `Π_{χ≠1} Σ_a χ(a) f(a⁻¹)`
    pub character_product: Complex64,
    /// `det_{a,b≠1} [f(ab⁻¹) - f(a)]`
    pub reduced_determinant: Complex64,
    /// Larger of the two relative residuals, each `|x - y| / max(1, |x|, |y|)`.
    pub residual: f64,
}

fn relative_gap(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
}

pub fn dedekind_det_check<G: FiniteAbelianGroup>(
    group: &G,
    f: &[Complex64],
) -> Result<DedekindCheck> {
    dedekind_det_check_bounded(group, f, DEFAULT_GROUP_BOUND)
}

pub fn dedekind_det_check_bounded<G: FiniteAbelianGroup>(
    group: &G,
    f: &[Complex64],
    bound: usize,
) -> Result<DedekindCheck> {
    let n = group.order();
    if n > bound {
        return Err(Error::GroupTooLarge { order: n, bound });
    }
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.len(),
        });
    }
    let id = group.identity();
    let full = Matrix::from_fn(n, |a, b| f[group.mul(a, group.inv(b))]);
    let group_determinant = full.determinant(());

    let others: Vec<usize> = (0..n).filter(|&a| a != id).collect();
    let reduced = Matrix::from_fn(others.len(), |i, j| {
        let (a, b) = (others[i], others[j]);
        f[group.mul(a, group.inv(b))] - f[a]
    });
    let reduced_determinant = reduced.determinant(());
    let total: Complex64 = f.iter().sum();
    let sum_times_reduced = total * reduced_determinant;

    let one = Complex64::new(1.0, 0.0);
    let character_product = group
        .character_table()
        .iter()
        .filter(|row| row.iter().any(|&v| v != one))
        .map(|row| (0..n).map(|a| row[a] * f[group.inv(a)]).sum::<Complex64>())
        .product();

    let residual = relative_gap(group_determinant, sum_times_reduced)
        .max(relative_gap(character_product, reduced_determinant));
    Ok(DedekindCheck {
        group_determinant,
        sum_times_reduced,
        character_product,
        reduced_determinant,
        residual,
    })
}
