//! Lorentz sequence spaces `L_{p,w}`: norms computed through the nonincreasing
//! rearrangement with certified truncation bounds, seminorms and head/tail splits,
//! and precompactness certificates for structured families of sequences.
//!
//! Every computation is generic over the scalar ([`Real`], implemented for `f32`
//! and `f64`); the `*64` and `*32` aliases fix the precision.
//!
//! ```
//! use lorentz::{lorentz_norm_pth, Sequence64, Weights64};
//!
//! let a = Sequence64::power(1.0, 1.0).unwrap();
//! let norm = lorentz_norm_pth(&a, 1.0, &Weights64::harmonic(), 1e-6, 1 << 24).unwrap();
//! assert!(norm.contains(std::f64::consts::PI.powi(2) / 6.0));
//! ```

mod error;
mod scalar;
mod sum;
mod view;

pub mod compactness;
pub mod decompose;
pub mod envelope;
pub mod interval;
pub mod norms;
pub mod oracle;
pub mod rearrange;
pub mod sequence;
pub mod weight;

pub use compactness::{
    certify, difference_family, family_bound, gamma_inverse_at, gamma_of, lambda_of, min_equinorm_index,
    tail_criterion_index, Certificate, Counterexample, EquinormOutcome, FamilyBound, FamilySpec, Gamma, MemberId,
    Method, TailOutcome, Verdict, Witness,
};
pub use decompose::{decompose, DecompositionRecord};
pub use envelope::{EnvelopeKind, EnvelopeSpec};
pub use error::{Error, Result};
pub use interval::Interval;
pub use norms::{classify_membership, lorentz_norm_pth, p_norm, seminorm_pth, MembershipVerdict};
pub use oracle::{brute_force_equinorm_gap, brute_force_norm_pth, brute_force_seminorm_pth, PlacementSearchConfig};
pub use rearrange::{rearrangement_prefix, sigma_inverse_at, RearrangedPrefix, Rearrangement};
pub use scalar::Real;
pub use sequence::{term_at, SequenceKind, SequenceSpec};
pub use weight::{weight_at, weight_prefix_sum, WeightKind, WeightSpec};

pub type Interval64 = Interval<f64>;
pub type Sequence64 = SequenceSpec<f64>;
pub type Envelope64 = EnvelopeSpec<f64>;
pub type Weights64 = WeightSpec<f64>;
pub type Family64 = FamilySpec<f64>;
pub type Certificate64 = Certificate<f64>;
pub type Decomposition64 = DecompositionRecord<f64>;

pub type Interval32 = Interval<f32>;
pub type Sequence32 = SequenceSpec<f32>;
pub type Envelope32 = EnvelopeSpec<f32>;
pub type Weights32 = WeightSpec<f32>;
pub type Family32 = FamilySpec<f32>;
pub type Certificate32 = Certificate<f32>;
pub type Decomposition32 = DecompositionRecord<f32>;
