//! Dirichlet characters, the values `L(1, χ)` and `L_E(1, χ)`, and regulators
//! of cyclotomic units of the first and second kind.
//!
//! ```
//! use cyclotomic::{regulator, verify_index_relation, UnitKind};
//!
//! let r = regulator(5, UnitKind::Classic).unwrap();
//! assert!((r - 0.4812118).abs() < 1e-7);
//! let report = verify_index_relation(7).unwrap();
//! assert!((report.ratio.unwrap() - 3.0).abs() < 1e-9);
//! ```

pub mod angle;
pub mod characters;
pub mod dedekind;
pub mod error;
pub mod lfunctions;
pub mod linalg;
pub mod modular;
pub mod numeric;
pub mod regulators;
pub mod series;
pub mod units;

pub use angle::RationalAngle;
pub use characters::{
    character_group, even_characters, even_nontrivial, CharacterValue, DirichletCharacter, Parity,
};
pub use dedekind::{
    dedekind_det_check, dedekind_det_check_bounded, CyclicGroup, DedekindCheck, FiniteAbelianGroup,
    UnitQuotientGroup,
};
pub use error::{Error, Result};
pub use lfunctions::{
    euler_factor_two, gauss_sum, l_e_one_closed, l_e_one_series, l_one_closed, l_one_series,
    twisted_gauss_sum, ComplexValue, LKind, LValue, Method, SeriesOptions,
};
pub use modular::{crt_split, euler_phi, factorize, primitive_root, CrtSplit, Factorization};
pub use numeric::Precision;
pub use regulators::{
    conductor_descent_check, conductor_discriminant_check, eta_factor, h_plus_formula_check,
    log_unit, regulator, regulator_via_characters, regulator_with, verify_index_relation,
    verify_index_relation_with, DescentCheck, DiscriminantCheck, HPlusCheck, IndexBranch,
    RegulatorOptions, RegulatorReport, UnitKind,
};
pub use series::SeriesEstimate;
pub use units::{half_group, minus_one_two_generate, unit_group, HalfGroup, UnitGroupStructure};
