//! Quadratic twists of elliptic curves over the rationals.
//!
//! Exact model arithmetic, twisting, global minimal models with the
//! scaling factor `u~` of a twist, periods to arbitrary precision, and a
//! numerical check tying the periods of `E` and `E^d` together.
//!
//! ```
//! use twistperiod::{compute_utilde, twist, Model};
//!
//! let e: Model = "[0,-1,0,-6883,222137]".parse().unwrap();
//! assert_eq!(twist(&e, 5).unwrap().to_string(), "[0,-5,0,-172075,27767125]");
//! assert_eq!(compute_utilde(&e, 5).unwrap().utilde.to_string(), "5");
//! ```

pub mod arith;
pub mod error;
pub mod minimal;
pub mod periods;
pub mod twist;
pub mod verify;
pub mod weierstrass;

pub use arith::{Rational, Valuation};
pub use error::{Error, Result};
pub use minimal::{
    compute_up, compute_utilde, is_minimal, lambda_v, minimal_model_of_twist, minimize,
    predict_twist_disc_valuation, utilde_report, CaseLabel, LocalFactor, MinimalModel,
    UTildeReport, UTildeResult,
};
pub use periods::{
    c_infinity, imaginary_period, lattice_periods, period_report, raw_model_period, real_period,
    PeriodLattice, PeriodReport, Real,
};
pub use twist::{twist, twist_transformation, TwistMap};
pub use verify::{scan, verify_theorem, ScanConfig, ScanFilter, ScanRecord, VerificationReport};
pub use weierstrass::{Invariants, Model, Transformation};
