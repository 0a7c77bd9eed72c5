//! The verification checks run by `cyclo verify`, one function per check.

use std::collections::BTreeMap;

use cyclotomic::dedekind::{dedekind_det_check, FiniteAbelianGroup, UnitQuotientGroup};
use cyclotomic::{
    character_group, conductor_descent_check, conductor_discriminant_check, euler_factor_two,
    factorize, gauss_sum, l_e_one_closed, l_one_closed, twisted_gauss_sum,
    verify_index_relation_with, DirichletCharacter, Error, IndexBranch, LKind, LValue, Precision,
    RegulatorOptions, SeriesOptions,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{sort_records, Status, Tolerances, VerificationRecord};

pub const CHECKS: [&str; 8] = [
    "closed-vs-series",
    "conductor-discriminant",
    "dedekind",
    "descent",
    "euler-factor",
    "gauss-magnitude",
    "orthogonality",
    "ratio",
];

/// Random functions tried per modulus by the `dedekind` check.
const DEDEKIND_TRIALS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tolerances: Tolerances,
    pub precision: Precision,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            precision: Precision::Double,
        }
    }
}

impl Settings {
    pub fn regulator_options(&self) -> RegulatorOptions {
        RegulatorOptions {
            precision: self.precision,
            singular_tolerance: self.tolerances.det,
        }
    }

    /// Series are asked for two more digits than the agreement tolerance.
    pub fn series_options(&self) -> SeriesOptions {
        SeriesOptions::with_tolerance(self.tolerances.series * 1e-2)
    }
}

/// The distinct primitive non-principal characters whose conductor divides `m`,
/// ordered by conductor and then label.
pub fn primitive_characters(m: u64) -> Result<Vec<DirichletCharacter>, Error> {
    let mut seen = BTreeMap::new();
    for chi in character_group(m)? {
        if chi.is_principal() {
            continue;
        }
        let star = chi.induce_primitive()?;
        seen.entry((star.modulus(), star.label())).or_insert(star);
    }
    Ok(seen.into_values().collect())
}

fn prime_power(m: u64) -> Option<(u64, u32)> {
    factorize(m).ok()?.as_prime_power()
}

pub fn verify_modulus(m: u64, settings: &Settings) -> Vec<VerificationRecord> {
    if m % 4 == 2 {
        return CHECKS
            .iter()
            .map(|c| VerificationRecord::skipped(m, c, "m ≡ 2 (mod 4)"))
            .collect();
    }
    let mut records = vec![
        closed_vs_series(m, settings),
        conductor_discriminant(m, settings),
        dedekind(m, settings),
        descent(m, settings),
        euler_factor(m, settings),
        gauss_magnitude(m, settings),
        orthogonality(m, settings),
        ratio(m, settings),
    ];
    sort_records(&mut records);
    records
}

pub fn verify_all(moduli: &[u64], settings: &Settings) -> Vec<VerificationRecord> {
    let mut records: Vec<_> = moduli
        .iter()
        .flat_map(|&m| verify_modulus(m, settings))
        .collect();
    sort_records(&mut records);
    records
}

fn error_record(m: u64, check: &str, e: Error) -> VerificationRecord {
    VerificationRecord::fail(m, check, e.to_string())
}

pub fn closed_vs_series(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "closed-vs-series";
    let run = || -> Result<(f64, usize), Error> {
        let chars = primitive_characters(m)?;
        let options = settings.series_options();
        let mut worst: f64 = 0.0;
        for chi in &chars {
            for kind in [LKind::Dirichlet, LKind::Euler] {
                let closed = LValue::closed(chi, kind)?.value;
                let series = LValue::series(chi, kind, &options)?.value;
                worst = worst.max((closed - series).norm());
            }
        }
        Ok((worst, chars.len()))
    };
    match run() {
        Ok((worst, n)) => VerificationRecord::judged(
            m,
            CHECK,
            worst,
            settings.tolerances.series,
            format!("{n} primitive characters, L and L_E"),
        ),
        Err(e) => error_record(m, CHECK, e),
    }
}

pub fn conductor_discriminant(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "conductor-discriminant";
    match conductor_discriminant_check(m) {
        Ok(c) => {
            let positive = c.gauss_product.re > 0.0;
            let residual = if positive { c.residual } else { f64::INFINITY };
            VerificationRecord::judged(
                m,
                CHECK,
                residual,
                settings.tolerances.discriminant,
                format!(
                    "product of conductors {}, product of Gauss sums {:.6}{:+.1e}i",
                    c.conductor_product, c.gauss_product.re, c.gauss_product.im
                ),
            )
        }
        Err(e) => error_record(m, CHECK, e),
    }
}

/// Random complex functions on `(Z/m)*/{±1}`, seeded by `seed`.
pub fn dedekind_trials(
    m: u64,
    trials: usize,
    seed: u64,
) -> Result<Vec<cyclotomic::DedekindCheck>, Error> {
    let group = UnitQuotientGroup::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let f: Vec<Complex64> = (0..group.order())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            dedekind_det_check(&group, &f)
        })
        .collect()
}

pub fn dedekind(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "dedekind";
    match dedekind_trials(m, DEDEKIND_TRIALS, m) {
        Ok(checks) => {
            let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
            VerificationRecord::judged(
                m,
                CHECK,
                worst,
                settings.tolerances.dedekind,
                format!("{DEDEKIND_TRIALS} random functions"),
            )
        }
        Err(Error::GroupTooLarge { order, bound }) => {
            VerificationRecord::skipped(m, CHECK, format!("group order {order} exceeds {bound}"))
        }
        Err(e) => error_record(m, CHECK, e),
    }
}

pub fn descent(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "descent";
    if prime_power(m).is_none() {
        return VerificationRecord::skipped(m, CHECK, "not a prime power");
    }
    let run = || -> Result<VerificationRecord, Error> {
        let mut worst: f64 = 0.0;
        let mut count = 0;
        for chi in character_group(m)? {
            if chi.is_principal() || !chi.is_even() || chi.conductor() == m {
                continue;
            }
            let check = conductor_descent_check(m, &chi)?;
            if !check.sign_matches_rule() {
                return Ok(VerificationRecord::fail(
                    m,
                    CHECK,
                    format!(
                        "{chi}: sign {} against expected {}",
                        check.sign, check.expected_sign
                    ),
                ));
            }
            worst = worst.max(check.residual);
            count += 1;
        }
        Ok(VerificationRecord::judged(
            m,
            CHECK,
            worst,
            settings.tolerances.descent,
            format!("{count} imprimitive even characters"),
        ))
    };
    run().unwrap_or_else(|e| error_record(m, CHECK, e))
}

pub fn euler_factor(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "euler-factor";
    let run = || -> Result<(f64, usize), Error> {
        let chars = primitive_characters(m)?;
        let mut worst: f64 = 0.0;
        for chi in &chars {
            let gap = l_e_one_closed(chi)? - euler_factor_two(chi) * l_one_closed(chi)?;
            worst = worst.max(gap.norm());
        }
        Ok((worst, chars.len()))
    };
    match run() {
        Ok((worst, n)) => VerificationRecord::judged(
            m,
            CHECK,
            worst,
            settings.tolerances.euler_factor,
            format!("{n} primitive characters"),
        ),
        Err(e) => error_record(m, CHECK, e),
    }
}

/// `||τ|² - f|` and the twisted-sum identity, each scaled by its own tolerance;
/// the residual reported is the magnitude gap.
pub fn gauss_magnitude(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "gauss-magnitude";
    let run = || -> Result<(f64, f64, usize), Error> {
        let chars = primitive_characters(m)?;
        let mut magnitude: f64 = 0.0;
        let mut twisted: f64 = 0.0;
        for chi in &chars {
            let tau = gauss_sum(chi)?;
            magnitude = magnitude.max((tau.norm_sqr() - chi.modulus() as f64).abs());
            for k in 0..chi.modulus() as i64 {
                let rhs = chi.evaluate(k).conj().to_complex() * tau;
                twisted = twisted.max((twisted_gauss_sum(chi, k) - rhs).norm());
            }
        }
        Ok((magnitude, twisted, chars.len()))
    };
    match run() {
        Ok((magnitude, twisted, n)) => {
            let t = &settings.tolerances;
            let details = format!("{n} primitive characters, twisted-sum residual {twisted:.3e}");
            let mut record = VerificationRecord::judged(m, CHECK, magnitude, t.gauss, details);
            if twisted >= t.twisted {
                record.status = Status::Fail;
            }
            record
        }
        Err(e) => error_record(m, CHECK, e),
    }
}

/// `max |φ(m)⁻¹ Σ_n χ(n) ψ̄(n) - δ_{χψ}|` over all pairs of characters mod `m`.
pub fn orthogonality(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "orthogonality";
    let run = || -> Result<(f64, usize), Error> {
        let chars = character_group(m)?;
        let table: Vec<Vec<Complex64>> = chars
            .iter()
            .map(|chi| (0..m as i64).map(|n| chi.value(n)).collect())
            .collect();
        let phi = chars.len() as f64;
        let mut worst: f64 = 0.0;
        for (i, a) in table.iter().enumerate() {
            for (j, b) in table.iter().enumerate().skip(i) {
                let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner / phi - delta).norm());
            }
        }
        Ok((worst, chars.len()))
    };
    match run() {
        Ok((worst, n)) => VerificationRecord::judged(
            m,
            CHECK,
            worst,
            settings.tolerances.orthogonality,
            format!("{n} characters"),
        ),
        Err(e) => error_record(m, CHECK, e),
    }
}

pub fn ratio(m: u64, settings: &Settings) -> VerificationRecord {
    const CHECK: &str = "ratio";
    if prime_power(m).is_none() {
        return VerificationRecord::skipped(m, CHECK, "not a prime power");
    }
    let report = match verify_index_relation_with(m, &settings.regulator_options()) {
        Ok(r) => r,
        Err(e) => return error_record(m, CHECK, e),
    };
    let consistent = report.is_consistent(settings.tolerances.ratio);
    let (residual, details) = match report.branch {
        IndexBranch::Trivial => (0.0, "empty regulator matrices".to_string()),
        IndexBranch::Finite => (
            report.relative_residual(),
            format!(
                "R_cyc={:.9e} R~_cyc={:.9e} ratio={:.9} |eta|={}",
                report.r_cyc,
                report.r_tilde_cyc,
                report.ratio.unwrap_or(f64::NAN),
                report.eta_abs
            ),
        ),
        IndexBranch::Singular => (
            report.r_tilde_cyc,
            format!(
                "infinite index: eta=0, R~_cyc={:.3e} against threshold {:.3e}",
                report.r_tilde_cyc, report.r_tilde_threshold
            ),
        ),
    };
    if consistent {
        VerificationRecord {
            modulus: m,
            check: CHECK.to_string(),
            status: Status::Pass,
            residual,
            details,
        }
    } else {
        let mut r = VerificationRecord::fail(m, CHECK, details);
        r.residual = residual;
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_characters_by_conductor() {
        let four = primitive_characters(4).unwrap();
        assert_eq!(four.len(), 1);
        let twelve = primitive_characters(12).unwrap();
        let conductors: Vec<u64> = twelve.iter().map(|c| c.modulus()).collect();
        assert_eq!(conductors, vec![3, 4, 12]);
    }

    #[test]
    fn checks_are_sorted_and_complete() {
        let records = verify_modulus(16, &Settings::default());
        let names: Vec<&str> = records.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(names, CHECKS);
        assert!(
            records.iter().all(|r| r.status == Status::Pass),
            "{records:#?}"
        );
    }

    #[test]
    fn composite_modulus_skips_prime_power_checks() {
        let records = verify_modulus(15, &Settings::default());
        for r in &records {
            let expected = if r.check == "ratio" || r.check == "descent" {
                Status::Skipped
            } else {
                Status::Pass
            };
            assert_eq!(r.status, expected, "{r:?}");
        }
    }

    #[test]
    fn singular_branch_passes_at_seventeen() {
        let r = ratio(17, &Settings::default());
        assert_eq!(r.status, Status::Pass);
        assert!(r.details.starts_with("infinite index"));
    }

    #[test]
    fn tiny_det_tolerance_fails_singular_case() {
        let mut settings = Settings::default();
        settings.tolerances.det = 1e-20;
        assert_eq!(ratio(17, &settings).status, Status::Fail);
    }
}
