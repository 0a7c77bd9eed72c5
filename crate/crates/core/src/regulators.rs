//! Cyclotomic units, their regulators, and the index relation between them.
//!
//! For `m` a prime power write `ζ = ζ_m` and let `G = (Z/m)*/{±1}`. The
//! classical cyclotomic units are `g_k = (ζ^k - 1)/(ζ - 1)` and the units of
//! the second kind are `g̃_k = (ζ^k + 1)/(ζ + 1)`. Their regulators are
//!
//! ```text
//! R_cyc  = |det_{a,k≠1} log|σ_a g_k||,   R̃_cyc = |det_{a,k≠1} log|σ_a g̃_k||
//! ```
//!
//! with `σ_a: ζ ↦ ζ^a`, rows and columns running over the sorted half-group
//! representatives other than 1. The group determinant factorisation turns
//! each into a product of character sums, and comparing the two products
//! gives `R̃_cyc / R_cyc = |η|` with `η = Π_{χ≠1 even} (1 - χ(2))`.

use std::fmt;

use num_complex::Complex64;

use crate::characters::{even_characters, even_nontrivial, DirichletCharacter};
use crate::error::{Error, Result};
use crate::lfunctions::{euler_factor_two, gauss_sum};
use crate::linalg::Matrix;
use crate::modular::{factorize, gcd, reduce};
use crate::numeric::{Extended, Precision, Real};
use crate::units::{half_group, minus_one_two_generate, require_admissible, HalfGroup};

/// Relative singularity tolerance: `|det| < tol · Π‖row‖₂` counts as zero.
pub const DEFAULT_SINGULAR_TOLERANCE: f64 = 1e-8;

/// `|η|` at or below this is treated as `η = 0`.
pub const ETA_ZERO_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    /// `g_k = (ζ^k - 1)/(ζ - 1)`
    Classic,
    /// `g̃_k = (ζ^k + 1)/(ζ + 1)`
    New,
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Classic => "classic",
            Self::New => "new",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegulatorOptions {
    pub precision: Precision,
    pub singular_tolerance: f64,
}

impl Default for RegulatorOptions {
    fn default() -> Self {
        Self {
            precision: Precision::Double,
            singular_tolerance: DEFAULT_SINGULAR_TOLERANCE,
        }
    }
}

/// `log|1 - ζ_m^j|` (classic) or `log|1 + ζ_m^j|` (new), i.e. `log 2|sin(πj/m)|`
/// or `log 2|cos(πj/m)|`.
fn log_abs_factor<R: Real>(j: i64, m: u64, kind: UnitKind, ctx: R::Ctx) -> R {
    let r = reduce(j, m);
    let folded = r.min(m - r) as i64;
    let theta = R::pi(ctx).mul(&R::from_ratio(folded, m as i64, ctx));
    let trig = match kind {
        UnitKind::Classic => theta.sin(),
        UnitKind::New => theta.cos(),
    };
    R::from_f64(2.0, ctx).mul(&trig.abs()).ln()
}

/// `log|σ_a u_k|` for `u = g` or `g̃`.
pub fn log_unit(m: u64, a: i64, k: i64, kind: UnitKind) -> Result<f64> {
    if m < 3 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: "must be at least 3",
        });
    }
    for x in [a, k] {
        if gcd(reduce(x, m), m) != 1 {
            return Err(Error::NotCoprime {
                value: x,
                modulus: m,
            });
        }
    }
    Ok(log_abs_factor::<f64>(a * k, m, kind, ()) - log_abs_factor::<f64>(a, m, kind, ()))
}

/// The square matrix `log|σ_a u_k|` over `a, k` in the half group minus 1.
#[derive(Debug, Clone)]
pub struct LogEmbeddingMatrix {
    pub modulus: u64,
    pub kind: UnitKind,
    /// Row and column labels, ascending.
    pub labels: Vec<u64>,
    pub entries: Matrix<f64>,
}

fn embedding<R: Real>(labels: &[u64], m: u64, kind: UnitKind, ctx: R::Ctx) -> Matrix<R> {
    Matrix::from_fn(labels.len(), |i, j| {
        let (a, k) = (labels[i] as i64, labels[j] as i64);
        log_abs_factor::<R>(a * k, m, kind, ctx).sub(&log_abs_factor::<R>(a, m, kind, ctx))
    })
}

pub fn log_embedding_matrix(m: u64, kind: UnitKind) -> Result<LogEmbeddingMatrix> {
    let half = half_group(m)?;
    let labels: Vec<u64> = half.representatives()[1..].to_vec();
    let entries = embedding::<f64>(&labels, m, kind, ());
    Ok(LogEmbeddingMatrix {
        modulus: m,
        kind,
        labels,
        entries,
    })
}

/// Prime-power check for the regulator routines. Returns `(p, n)`.
fn regulator_modulus(m: u64) -> Result<(u64, u32)> {
    if m < 3 {
        return Err(Error::InvalidModulus {
            modulus: m,
            reason: "must be at least 3",
        });
    }
    factorize(m)?
        .as_prime_power()
        .ok_or(Error::NotPrimePower(m))
}

fn has_empty_regulator(m: u64) -> bool {
    m == 3 || m == 4
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegulatorValue {
    pub value: f64,
    /// `tol` times Hadamard's bound for the matrix.
    pub threshold: f64,
    pub singular: bool,
    pub dimension: usize,
}

/// Regulator together with its singularity assessment.
pub fn regulator_detail(
    m: u64,
    kind: UnitKind,
    options: &RegulatorOptions,
) -> Result<RegulatorValue> {
    regulator_modulus(m)?;
    if has_empty_regulator(m) {
        return Ok(RegulatorValue {
            value: 1.0,
            threshold: options.singular_tolerance,
            singular: false,
            dimension: 0,
        });
    }
    let matrix = log_embedding_matrix(m, kind)?;
    let dim = matrix.labels.len();
    let value = match options.precision {
        Precision::Double => matrix.entries.determinant(()).abs(),
        extended @ Precision::Extended { .. } => {
            let bits = extended.bits();
            embedding::<Extended>(&matrix.labels, m, kind, bits)
                .determinant(bits)
                .to_f64()
                .abs()
        }
    };
    let threshold = options.singular_tolerance * matrix.entries.hadamard_bound();
    Ok(RegulatorValue {
        value,
        threshold,
        singular: value < threshold,
        dimension: dim,
    })
}

/// `|det|` of the log-embedding matrix; `m = 3, 4` give the empty-determinant value 1.
pub fn regulator(m: u64, kind: UnitKind) -> Result<f64> {
    regulator_with(m, kind, &RegulatorOptions::default())
}

pub fn regulator_with(m: u64, kind: UnitKind, options: &RegulatorOptions) -> Result<f64> {
    Ok(regulator_detail(m, kind, options)?.value)
}

/// `Σ_{k∈G} χ(k) log|1 ∓ ζ_m^k|` as `(re, im)` at the working precision.
fn character_log_sum<R: Real>(
    chi: &DirichletCharacter,
    half: &HalfGroup,
    kind: UnitKind,
    ctx: R::Ctx,
) -> (R, R) {
    let m = half.modulus();
    let two_pi = R::pi(ctx).mul(&R::from_f64(2.0, ctx));
    let mut re = R::zero(ctx);
    let mut im = R::zero(ctx);
    for &k in half.representatives() {
        let Some(angle) = chi.evaluate(k as i64).angle() else {
            continue;
        };
        let log = log_abs_factor::<R>(k as i64, m, kind, ctx);
        if angle.is_zero() {
            re = re.add(&log);
            continue;
        }
        let theta = two_pi.mul(&R::from_ratio(
            angle.numerator() as i64,
            angle.denominator() as i64,
            ctx,
        ));
        re = re.add(&theta.cos().mul(&log));
        im = im.add(&theta.sin().mul(&log));
    }
    (re, im)
}

fn character_product<R: Real>(m: u64, kind: UnitKind, ctx: R::Ctx) -> Result<(R, R)> {
    let half = half_group(m)?;
    let mut re = R::one(ctx);
    let mut im = R::zero(ctx);
    for chi in even_nontrivial(m)? {
        let (sr, si) = character_log_sum::<R>(&chi, &half, kind, ctx);
        let next_re = re.mul(&sr).sub(&im.mul(&si));
        let next_im = re.mul(&si).add(&im.mul(&sr));
        re = next_re;
        im = next_im;
    }
    Ok((re, im))
}

/// `|Π_{χ≠1 even} Σ_{k∈G} χ(k) log|1 ∓ ζ_m^k||`, the character-sum form of the regulator.
pub fn regulator_via_characters(m: u64, kind: UnitKind) -> Result<f64> {
    regulator_via_characters_with(m, kind, &RegulatorOptions::default())
}

pub fn regulator_via_characters_with(
    m: u64,
    kind: UnitKind,
    options: &RegulatorOptions,
) -> Result<f64> {
    regulator_modulus(m)?;
    if has_empty_regulator(m) {
        return Ok(1.0);
    }
    Ok(match options.precision {
        Precision::Double => {
            let (re, im) = character_product::<f64>(m, kind, ())?;
            re.hypot(im)
        }
        extended @ Precision::Extended { .. } => {
            let (re, im) = character_product::<Extended>(m, kind, extended.bits())?;
            re.to_f64().hypot(im.to_f64())
        }
    })
}

/// `η = Π_{χ≠1 even} (1 - χ(2))`. Real up to rounding; the imaginary residue is kept.
pub fn eta_factor(m: u64) -> Result<Complex64> {
    require_admissible(m)?;
    Ok(even_nontrivial(m)?.iter().map(euler_factor_two).product())
}

/// Exact test for `η = 0`: some non-trivial even character has `χ(2) = 1`.
pub fn eta_vanishes(m: u64) -> Result<bool> {
    require_admissible(m)?;
    Ok(even_nontrivial(m)?
        .iter()
        .any(|chi| chi.evaluate(2).is_one()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentCheck {
    pub modulus: u64,
    pub conductor: u64,
    /// `Σ_{k∈G_χ} χ(k) log|1 + ζ_f^k|` over the conductor's half group.
    pub lhs: Complex64,
    /// `Σ_{k∈G} χ(k) log|1 + ζ_m^k|` over the modulus' half group.
    pub rhs: Complex64,
    /// Sign `s` minimising `|lhs - s·rhs|`.
    pub sign: i8,
    /// `-1` for `p = 2`, `+1` otherwise.
    pub expected_sign: i8,
    /// False when both sides vanish and the sign carries no information.
    pub sign_determined: bool,
    pub residual: f64,
}

impl DescentCheck {
    pub fn sign_matches_rule(&self) -> bool {
        self.sign == self.expected_sign
    }
}

/// Compares the new-unit character sum of an imprimitive even `χ` modulo
/// `m = p^n` with that of its primitive version modulo `f_χ = p^s`, `s < n`.
pub fn conductor_descent_check(m: u64, chi: &DirichletCharacter) -> Result<DescentCheck> {
    let (p, _) = regulator_modulus(m)?;
    if chi.modulus() != m {
        return Err(Error::InvalidCharacter {
            label: chi.label(),
            reason: format!("modulus differs from {m}"),
        });
    }
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter(chi.label()));
    }
    if !chi.is_even() {
        return Err(Error::OddCharacter(chi.label()));
    }
    let f = chi.conductor();
    if f == m {
        return Err(Error::AlreadyPrimitive {
            label: chi.label(),
            conductor: f,
        });
    }
    let star = chi.induce_primitive()?;
    let sum = |c: &DirichletCharacter, half: &HalfGroup| -> Complex64 {
        let (re, im) = character_log_sum::<f64>(c, half, UnitKind::New, ());
        Complex64::new(re, im)
    };
    let lhs = sum(&star, &half_group(f)?);
    let rhs = sum(chi, &half_group(m)?);
    let expected_sign: i8 = if p == 2 { -1 } else { 1 };
    let plus = (lhs - rhs).norm();
    let minus = (lhs + rhs).norm();
    let sign_determined = lhs.norm().max(rhs.norm()) > 1e-12 && (plus - minus).abs() > 1e-12;
    let sign = if !sign_determined {
        expected_sign
    } else if plus <= minus {
        1
    } else {
        -1
    };
    let residual = if sign == 1 { plus } else { minus };
    Ok(DescentCheck {
        modulus: m,
        conductor: f,
        lhs,
        rhs,
        sign,
        expected_sign,
        sign_determined,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexBranch {
    /// `m = 3, 4`: both regulators are empty determinants.
    Trivial,
    /// `η ≠ 0`: the new units have finite index and `R̃_cyc/R_cyc = |η|`.
    Finite,
    /// `η = 0`: the new units have infinite index and `R̃_cyc` vanishes.
    Singular,
}

impl fmt::Display for IndexBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Trivial => "trivial",
            Self::Finite => "finite",
            Self::Singular => "infinite-index",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegulatorReport {
    pub modulus: u64,
    pub r_cyc: f64,
    pub r_tilde_cyc: f64,
    pub eta: Complex64,
    pub eta_abs: f64,
    /// `R̃_cyc / R_cyc`, absent on the singular branch.
    pub ratio: Option<f64>,
    /// Whether `-1, 2` generate `(Z/m)*`; only meaningful for odd `m`.
    pub generates: Option<bool>,
    pub branch: IndexBranch,
    /// `|ratio - |η||` on the finite branch, `R̃_cyc` on the singular branch.
    pub residual: f64,
    /// Whether `R̃_cyc` fell below the determinant singularity threshold.
    pub r_tilde_singular: bool,
    pub r_tilde_threshold: f64,
}

impl RegulatorReport {
    /// Residual relative to `|η|` on the finite branch; the raw residual otherwise.
    pub fn relative_residual(&self) -> f64 {
        match self.branch {
            IndexBranch::Finite => self.residual / self.eta_abs,
            _ => self.residual,
        }
    }

    /// Finite branch: relative residual within `ratio_tol` and `R̃_cyc` not singular.
    /// Singular branch: `R̃_cyc` below the singularity threshold.
    pub fn is_consistent(&self, ratio_tol: f64) -> bool {
        match self.branch {
            IndexBranch::Trivial => true,
            IndexBranch::Finite => !self.r_tilde_singular && self.relative_residual() < ratio_tol,
            IndexBranch::Singular => self.r_tilde_singular,
        }
    }
}

pub fn verify_index_relation(m: u64) -> Result<RegulatorReport> {
    verify_index_relation_with(m, &RegulatorOptions::default())
}

/// Computes both regulators and `η` for a prime power `m` and sorts the
/// outcome into the finite or infinite-index branch.
pub fn verify_index_relation_with(m: u64, options: &RegulatorOptions) -> Result<RegulatorReport> {
    let (p, _) = regulator_modulus(m)?;
    let generates = if p == 2 {
        None
    } else {
        Some(minus_one_two_generate(m)?)
    };
    if has_empty_regulator(m) {
        return Ok(RegulatorReport {
            modulus: m,
            r_cyc: 1.0,
            r_tilde_cyc: 1.0,
            eta: Complex64::new(1.0, 0.0),
            eta_abs: 1.0,
            ratio: Some(1.0),
            generates,
            branch: IndexBranch::Trivial,
            residual: 0.0,
            r_tilde_singular: false,
            r_tilde_threshold: options.singular_tolerance,
        });
    }
    let classic = regulator_detail(m, UnitKind::Classic, options)?;
    let new = regulator_detail(m, UnitKind::New, options)?;
    if classic.singular {
        return Err(Error::Internal(format!(
            "classical regulator for m = {m} is numerically zero ({:e})",
            classic.value
        )));
    }
    let eta = eta_factor(m)?;
    let eta_abs = eta.norm();
    let (branch, ratio, residual) = if eta_abs > ETA_ZERO_THRESHOLD {
        let ratio = new.value / classic.value;
        (IndexBranch::Finite, Some(ratio), (ratio - eta_abs).abs())
    } else {
        (IndexBranch::Singular, None, new.value)
    };
    Ok(RegulatorReport {
        modulus: m,
        r_cyc: classic.value,
        r_tilde_cyc: new.value,
        eta,
        eta_abs,
        ratio,
        generates,
        branch,
        residual,
        r_tilde_singular: new.singular,
        r_tilde_threshold: new.threshold,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HPlusCheck {
    pub modulus: u64,
    pub r_plus: f64,
    /// `(1/R⁺) Π_{χ≠1} Σ_{k∈G_χ} -χ(k) log|1 - ζ_f^k|`, real part.
    pub classical_h_plus: f64,
    pub classical_imag: f64,
    /// `(1/R⁺) Π_{χ≠1} Σ_{k∈G_χ} χ(k) log|1 + ζ_f^k|`, real part; equals `η·h⁺`.
    pub eta_h_plus: f64,
    pub new_imag: f64,
    pub eta: Complex64,
    /// `η·h⁺ / η` when `η ≠ 0`.
    pub new_h_plus: Option<f64>,
}

impl HPlusCheck {
    pub fn new_formula_singular(&self) -> bool {
        self.new_h_plus.is_none()
    }
}

/// Evaluates both class-number products at the conductor level, given `R⁺`.
pub fn h_plus_formula_check(m: u64, r_plus: f64) -> Result<HPlusCheck> {
    require_admissible(m)?;
    if !(r_plus > 0.0 && r_plus.is_finite()) {
        return Err(Error::Internal(format!(
            "R⁺ must be positive, got {r_plus}"
        )));
    }
    let mut classical = Complex64::new(1.0, 0.0);
    let mut new = Complex64::new(1.0, 0.0);
    for chi in even_nontrivial(m)? {
        let star = chi.induce_primitive()?;
        let half = half_group(star.modulus())?;
        let (cr, ci) = character_log_sum::<f64>(&star, &half, UnitKind::Classic, ());
        let (nr, ni) = character_log_sum::<f64>(&star, &half, UnitKind::New, ());
        classical *= -Complex64::new(cr, ci);
        new *= Complex64::new(nr, ni);
    }
    let eta = eta_factor(m)?;
    let eta_h_plus = new.re / r_plus;
    let new_h_plus = (eta.norm() > ETA_ZERO_THRESHOLD).then(|| eta_h_plus / eta.re);
    Ok(HPlusCheck {
        modulus: m,
        r_plus,
        classical_h_plus: classical.re / r_plus,
        classical_imag: classical.im / r_plus,
        eta_h_plus,
        new_imag: new.im / r_plus,
        eta,
        new_h_plus,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantCheck {
    pub modulus: u64,
    /// `Π τ(χ*)` over all even characters, each replaced by its primitive version.
    pub gauss_product: Complex64,
    /// `Π f_χ` over the same characters.
    pub conductor_product: f64,
    /// `|Π τ - √(Π f)| / √(Π f)`
    pub residual: f64,
}

/// Compares the product of Gauss sums of the even characters with the square
/// root of the product of their conductors.
pub fn conductor_discriminant_check(m: u64) -> Result<DiscriminantCheck> {
    require_admissible(m)?;
    let mut gauss_product = Complex64::new(1.0, 0.0);
    let mut conductor_product = 1.0;
    let mut root = 1.0;
    for chi in even_characters(m)? {
        let star = chi.induce_primitive()?;
        let f = star.modulus() as f64;
        gauss_product *= gauss_sum(&star)?;
        conductor_product *= f;
        root *= f.sqrt();
    }
    Ok(DiscriminantCheck {
        modulus: m,
        gauss_product,
        conductor_product,
        residual: (gauss_product - root).norm() / root,
    })
}
