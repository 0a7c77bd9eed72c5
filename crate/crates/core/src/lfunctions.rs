//! Gauss sums and the values `L(1, χ)` and `L_E(1, χ)`.
//!
//! `L_E(s, χ) = Σ (-1)^(n-1) χ(n) n^-s` is the alternating (Euler) variant of
//! the Dirichlet series. Closed forms express both values at `s = 1` as finite
//! sums of logarithms (even χ) or of `χ̄(k)·k` (odd χ) times the Gauss sum;
//! the series routines evaluate the defining sums directly and serve as
//! independent checks.
//!
//! The root of unity is always `ζ_f = exp(2πi/f) = cos(2π/f) + i sin(2π/f)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::angle::RationalAngle;
use crate::characters::{CharacterValue, DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::modular::{divisors, gcd, lcm};
use crate::series::{euler_alternating, richardson_blocks, SeriesEstimate, DEFAULT_TERM_BUDGET};

pub type ComplexValue = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Series,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ClosedForm => "closed-form",
            Self::Series => "series",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LKind {
    /// `L(1, χ)`
    Dirichlet,
    /// `L_E(1, χ)`
    Euler,
}

impl fmt::Display for LKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dirichlet => "L",
            Self::Euler => "L_E",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LValue {
    pub label: String,
    pub value: ComplexValue,
    pub method: Method,
    pub kind: LKind,
    /// Present for series values.
    pub error_estimate: Option<f64>,
}

impl LValue {
    pub fn closed(chi: &DirichletCharacter, kind: LKind) -> Result<Self> {
        let value = match kind {
            LKind::Dirichlet => l_one_closed(chi)?,
            LKind::Euler => l_e_one_closed(chi)?,
        };
        Ok(Self {
            label: chi.label(),
            value,
            method: Method::ClosedForm,
            kind,
            error_estimate: None,
        })
    }

    pub fn series(chi: &DirichletCharacter, kind: LKind, options: &SeriesOptions) -> Result<Self> {
        let est = match kind {
            LKind::Dirichlet => l_one_series_with(chi, options)?,
            LKind::Euler => l_e_one_series_with(chi, options)?,
        };
        Ok(Self {
            label: chi.label(),
            value: est.value,
            method: Method::Series,
            kind,
            error_estimate: Some(est.error_estimate),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tolerance: f64,
    pub term_budget: usize,
}

impl SeriesOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }
}

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if !chi.is_primitive() {
        return Err(Error::ImprimitiveCharacter(chi.label()));
    }
    Ok(())
}

fn require_nonprincipal(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter(chi.label()));
    }
    Ok(())
}

/// `Σ_{r mod m} χ(r) ζ_m^{rk}` for the modulus `m` of `χ`, with no primitivity requirement.
pub fn twisted_gauss_sum(chi: &DirichletCharacter, k: i64) -> ComplexValue {
    let f = chi.modulus();
    (0..f)
        .filter_map(|r| {
            let a = chi.evaluate(r as i64).angle()?;
            Some((a + RationalAngle::new(r as i64 * k, f)).to_complex())
        })
        .sum()
}

/// `τ(χ) = Σ_{r mod f} χ(r) ζ_f^r` for primitive `χ`; `τ = 1` for the trivial character.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<ComplexValue> {
    require_primitive(chi)?;
    if chi.modulus() == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(twisted_gauss_sum(chi, 1))
}

/// `χ̄(k)` as a complex number.
fn conj_value(chi: &DirichletCharacter, k: u64) -> Complex64 {
    chi.evaluate(k as i64).conj().to_complex()
}

fn units_below_half(f: u64) -> impl Iterator<Item = u64> {
    (1..f).filter(move |&k| 2 * k < f && gcd(k, f) == 1)
}

fn closed_form_inputs(chi: &DirichletCharacter) -> Result<(f64, Complex64, Parity)> {
    require_primitive(chi)?;
    require_nonprincipal(chi)?;
    let tau = gauss_sum(chi)?;
    Ok((chi.modulus() as f64, tau, chi.parity()?))
}

/// `L(1, χ)` for primitive non-principal `χ` of conductor `f`:
/// even: `-(2τ/f) Σ_{k<f/2} χ̄(k) log sin(kπ/f)`; odd: `(πiτ/f²) Σ_{k=1}^{f} χ̄(k) k`.
pub fn l_one_closed(chi: &DirichletCharacter) -> Result<ComplexValue> {
    let (f, tau, parity) = closed_form_inputs(chi)?;
    let fm = chi.modulus();
    Ok(match parity {
        Parity::Even => {
            let s: Complex64 = units_below_half(fm)
                .map(|k| conj_value(chi, k) * (k as f64 * PI / f).sin().ln())
                .sum();
            -tau * s * (2.0 / f)
        }
        Parity::Odd => {
            let s: Complex64 = (1..=fm).map(|k| conj_value(chi, k) * k as f64).sum();
            Complex64::i() * tau * s * (PI / (f * f))
        }
    })
}

/// The two even-character forms of `L_E(1, χ)`:
/// `(2τ/f) Σ_{k<f/2} χ̄(k) log|cos(πk/f)|` and `(τ/f) Σ_{k=1}^{f} χ̄(k) log|1+ζ_f^k|`.
pub fn l_e_one_even_forms(chi: &DirichletCharacter) -> Result<(ComplexValue, ComplexValue)> {
    let (f, tau, parity) = closed_form_inputs(chi)?;
    if parity != Parity::Even {
        return Err(Error::OddCharacter(chi.label()));
    }
    let fm = chi.modulus();
    let cos_form: Complex64 = units_below_half(fm)
        .map(|k| conj_value(chi, k) * (PI * k as f64 / f).cos().abs().ln())
        .sum::<Complex64>()
        * tau
        * (2.0 / f);
    let full_form: Complex64 = (1..=fm)
        .filter(|&k| gcd(k, fm) == 1)
        .map(|k| {
            let z = RationalAngle::new(k as i64, fm).to_complex();
            conj_value(chi, k) * (Complex64::new(1.0, 0.0) + z).norm().ln()
        })
        .sum::<Complex64>()
        * tau
        / f;
    Ok((cos_form, full_form))
}

/// `L_E(1, χ)` for primitive non-principal `χ`. For even `χ` both log forms are
/// evaluated and required to agree; odd: `-(2πiτ/f²) Σ_{k<f/2} χ̄(k) k`.
pub fn l_e_one_closed(chi: &DirichletCharacter) -> Result<ComplexValue> {
    let (f, tau, parity) = closed_form_inputs(chi)?;
    match parity {
        Parity::Even => {
            let (cos_form, full_form) = l_e_one_even_forms(chi)?;
            let scale = 1.0 + cos_form.norm();
            if (cos_form - full_form).norm() > 1e-9 * scale {
                return Err(Error::Internal(format!(
                    "even forms of L_E(1, {chi}) disagree: {cos_form} vs {full_form}"
                )));
            }
            Ok(cos_form)
        }
        Parity::Odd => {
            let s: Complex64 = units_below_half(chi.modulus())
                .map(|k| conj_value(chi, k) * k as f64)
                .sum();
            Ok(-Complex64::i() * tau * s * (2.0 * PI / (f * f)))
        }
    }
}

/// `1 - χ(2)`.
pub fn euler_factor_two(chi: &DirichletCharacter) -> ComplexValue {
    Complex64::new(1.0, 0.0) - chi.value(2)
}

/// `(-1)^(n-1) χ(n)` as an exact value.
fn alternating_coefficient(chi: &DirichletCharacter, n: u64) -> CharacterValue {
    match chi.evaluate(n as i64) {
        CharacterValue::Zero => CharacterValue::Zero,
        CharacterValue::Angle(a) if n.is_multiple_of(2) => {
            CharacterValue::Angle(a + RationalAngle::HALF)
        }
        v => v,
    }
}

fn negate(v: CharacterValue) -> CharacterValue {
    match v {
        CharacterValue::Zero => CharacterValue::Zero,
        CharacterValue::Angle(a) => CharacterValue::Angle(a + RationalAngle::HALF),
    }
}

/// Smallest `h` with `c(n + h) = -c(n)` for all `n`, where `c` has period `period`.
fn antiperiod(coeff: &[CharacterValue], period: usize) -> Option<usize> {
    divisors(period as u64)
        .into_iter()
        .map(|h| h as usize)
        .filter(|&h| (period / h).is_multiple_of(2))
        .find(|&h| (0..period).all(|i| coeff[(i + h) % period] == negate(coeff[i])))
}

fn block_sum(coeffs: &[Complex64], start: usize) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(r, &c)| c / (start + r + 1) as f64)
        .sum()
}

pub fn l_e_one_series(chi: &DirichletCharacter, tolerance: f64) -> Result<SeriesEstimate> {
    l_e_one_series_with(chi, &SeriesOptions::with_tolerance(tolerance))
}

/// Accelerated evaluation of `Σ (-1)^(n-1) χ(n)/n`, for any `χ` (including the
/// trivial character modulo 1, which gives the Dirichlet eta value `log 2`).
///
/// The coefficients have period `P = lcm(2, m)`. When they are anti-periodic
/// with some half-period `h`, the series regroups into an alternating series of
/// blocks of length `h`, summed with the Euler transform. Otherwise blocks of
/// length `P` are summed with Richardson extrapolation.
pub fn l_e_one_series_with(
    chi: &DirichletCharacter,
    options: &SeriesOptions,
) -> Result<SeriesEstimate> {
    let period = lcm(2, chi.modulus()) as usize;
    let exact: Vec<CharacterValue> = (1..=period as u64)
        .map(|n| alternating_coefficient(chi, n))
        .collect();
    let coeffs: Vec<Complex64> = exact.iter().map(|v| v.to_complex()).collect();

    if let Some(h) = antiperiod(&exact, period) {
        let head = coeffs[..h].to_vec();
        return euler_alternating(
            |q| block_sum(&head, q * h),
            h,
            options.tolerance,
            options.term_budget,
        );
    }
    if coeffs.iter().sum::<Complex64>().norm() > 1e-9 {
        return Err(Error::Divergent(chi.label()));
    }
    richardson_blocks(
        |j| block_sum(&coeffs, j * period),
        period,
        options.tolerance,
        options.term_budget,
    )
}

pub fn l_one_series(chi: &DirichletCharacter, tolerance: f64) -> Result<SeriesEstimate> {
    l_one_series_with(chi, &SeriesOptions::with_tolerance(tolerance))
}

/// `L(1, χ)` from the series: via `L_E(1, χ) / (1 - χ(2))` when `χ(2) ≠ 1`,
/// otherwise by [`l_one_block_series`].
pub fn l_one_series_with(
    chi: &DirichletCharacter,
    options: &SeriesOptions,
) -> Result<SeriesEstimate> {
    require_nonprincipal(chi)?;
    if chi.evaluate(2).is_one() {
        return l_one_block_series(chi, options);
    }
    let factor = euler_factor_two(chi);
    let scaled = SeriesOptions {
        tolerance: options.tolerance * factor.norm(),
        ..*options
    };
    let est = l_e_one_series_with(chi, &scaled)?;
    Ok(SeriesEstimate {
        value: est.value / factor,
        error_estimate: est.error_estimate / factor.norm(),
        terms: est.terms,
    })
}

/// `Σ χ(n)/n` summed in blocks of one period with Richardson extrapolation.
pub fn l_one_block_series(
    chi: &DirichletCharacter,
    options: &SeriesOptions,
) -> Result<SeriesEstimate> {
    require_nonprincipal(chi)?;
    let m = chi.modulus() as usize;
    let coeffs: Vec<Complex64> = (1..=m as i64).map(|n| chi.value(n)).collect();
    richardson_blocks(
        |j| block_sum(&coeffs, j * m),
        m,
        options.tolerance,
        options.term_budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{all_characters, character_group};
    use std::f64::consts::{FRAC_PI_4, LN_2};

    fn find(m: u64, exps: &[u64]) -> DirichletCharacter {
        all_characters(m)
            .unwrap()
            .into_iter()
            .find(|c| c.exponents() == exps)
            .unwrap()
    }

    fn odd4() -> DirichletCharacter {
        find(4, &[1])
    }

    fn quad(p: u64) -> DirichletCharacter {
        find(p, &[(p - 1) / 2])
    }

    // plain partial sums at a large cutoff: a slow but independent oracle
    fn naive_l(chi: &DirichletCharacter, alternating: bool, terms: u64) -> Complex64 {
        (1..=terms)
            .map(|n| {
                let sign = if alternating && n % 2 == 0 { -1.0 } else { 1.0 };
                chi.value(n as i64) * (sign / n as f64)
            })
            .sum()
    }

    #[test]
    fn gauss_sum_examples() {
        assert!((gauss_sum(&odd4()).unwrap() - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!((gauss_sum(&quad(5)).unwrap() - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-14);
        assert_eq!(
            gauss_sum(&DirichletCharacter::trivial()).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        // imprimitive: principal mod 5 has conductor 1
        let principal = &character_group(5).unwrap()[0];
        assert!(matches!(
            gauss_sum(principal),
            Err(Error::ImprimitiveCharacter(_))
        ));
    }

    #[test]
    fn l_one_closed_examples() {
        assert!((l_one_closed(&odd4()).unwrap() - FRAC_PI_4).norm() < 1e-14);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        // 2 log(golden ratio)/√5
        let l5 = 2.0 * golden.ln() / 5f64.sqrt();
        assert!((l_one_closed(&quad(5)).unwrap() - l5).norm() < 1e-14);
        assert!((l5 - 0.4304089).abs() < 1e-7);
        let l3 = PI / (3.0 * 3f64.sqrt());
        assert!((l_one_closed(&quad(3)).unwrap() - l3).norm() < 1e-14);
        assert!((l3 - 0.6045998).abs() < 1e-7);
        let principal = &character_group(5).unwrap()[0];
        assert!(l_one_closed(principal).is_err());
    }

    #[test]
    fn l_e_one_closed_examples() {
        let le5 = l_e_one_closed(&quad(5)).unwrap();
        assert!((le5.re - 0.8608178).abs() < 1e-7 && le5.im.abs() < 1e-14);
        assert!((le5 - 2.0 * l_one_closed(&quad(5)).unwrap()).norm() < 1e-14);
        assert!((l_e_one_closed(&odd4()).unwrap() - FRAC_PI_4).norm() < 1e-14);
        // even quadratic mod 8: χ(3) = χ(5) = -1, χ(7) = 1
        let chi8 = find(8, &[0, 1]);
        assert_eq!(chi8.value(3).re, -1.0);
        assert_eq!(chi8.value(7).re, 1.0);
        let le8 = l_e_one_closed(&chi8).unwrap();
        let series = l_e_one_series(&chi8, 1e-10).unwrap();
        assert!((le8 - series.value).norm() < 1e-8);
        let expected = (1.0 + 2f64.sqrt()).ln() / 2f64.sqrt();
        assert!((le8.re - expected).abs() < 1e-13);
    }

    #[test]
    fn series_examples() {
        let eta = l_e_one_series(&DirichletCharacter::trivial(), 1e-12).unwrap();
        assert!((eta.value.re - LN_2).abs() < 1e-12);
        assert!(eta.error_estimate <= 1e-12);
        let le5 = l_e_one_series(&quad(5), 1e-10).unwrap();
        assert!((le5.value.re - 0.8608178).abs() < 1e-7);
        let leib = l_e_one_series(&odd4(), 1e-10).unwrap();
        assert!((leib.value.re - FRAC_PI_4).abs() < 1e-10);

        let l4 = l_one_series(&odd4(), 1e-10).unwrap();
        assert!((l4.value.re - FRAC_PI_4).abs() < 1e-10);
        let l5 = l_one_series(&quad(5), 1e-10).unwrap();
        assert!((l5.value.re - 0.4304089).abs() < 1e-7);
    }

    #[test]
    fn chi_two_equal_one_uses_block_summation() {
        // 2 = 3^2 mod 7, so the quadratic character mod 7 has χ(2) = 1
        let q7 = quad(7);
        assert!(q7.evaluate(2).is_one());
        assert_eq!(q7.parity().unwrap(), Parity::Odd);
        let series = l_one_series(&q7, 1e-10).unwrap();
        let closed = l_one_closed(&q7).unwrap();
        assert!(
            (series.value - closed).norm() < 1e-8,
            "{} vs {}",
            series.value,
            closed
        );
        // class number one for Q(√-7): L(1, χ) = π/√7
        assert!((closed.re - PI / 7f64.sqrt()).abs() < 1e-13);
        // L_E vanishes since 1 - χ(2) = 0
        assert!(l_e_one_closed(&q7).unwrap().norm() < 1e-13);
    }

    #[test]
    fn euler_factor_examples() {
        assert_eq!(euler_factor_two(&quad(5)), Complex64::new(2.0, 0.0));
        for chi in character_group(16).unwrap() {
            assert_eq!(euler_factor_two(&chi), Complex64::new(1.0, 0.0));
        }
        // mod 7 generator is 3 and 2 = 3^2, so the character with exponent 1 has χ(2) = e(1/3)
        let cubic = find(7, &[1]);
        let expected = Complex64::new(1.0, 0.0) - RationalAngle::new(1, 3).to_complex();
        assert!((euler_factor_two(&cubic) - expected).norm() < 1e-15);
    }

    #[test]
    fn series_against_naive_partial_sums() {
        for m in [5u64, 8, 12, 13] {
            for chi in character_group(m)
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_principal())
            {
                let naive = naive_l(&chi, true, 400_000);
                let acc = l_e_one_series(&chi, 1e-10).unwrap().value;
                assert!((naive - acc).norm() < 1e-4, "{chi}: {naive} vs {acc}");
            }
        }
    }

    #[test]
    fn twisted_gauss_identity() {
        for f in 3..=30u64 {
            for chi in character_group(f)
                .unwrap()
                .into_iter()
                .filter(|c| c.is_primitive())
            {
                let tau = gauss_sum(&chi).unwrap();
                for k in 0..f as i64 {
                    let lhs = twisted_gauss_sum(&chi, k);
                    let rhs = chi.evaluate(k).conj().to_complex() * tau;
                    assert!((lhs - rhs).norm() < 1e-10, "{chi} k={k}");
                }
            }
        }
    }

    #[test]
    fn series_budget_failure() {
        let opts = SeriesOptions {
            tolerance: 1e-30,
            term_budget: 10_000,
        };
        assert!(matches!(
            l_e_one_series_with(&quad(5), &opts),
            Err(Error::ConvergenceBudget { .. })
        ));
    }

    #[test]
    fn principal_even_modulus_diverges() {
        let principal = &character_group(4).unwrap()[0];
        assert!(matches!(
            l_e_one_series(principal, 1e-8),
            Err(Error::Divergent(_))
        ));
    }
}
