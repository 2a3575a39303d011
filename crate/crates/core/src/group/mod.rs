//! Group-side machinery: normal forms, balls, coset enumeration, quotients,
//! eliminations and short cycles.

pub mod ball;
pub mod cayley;
pub mod cycles;
pub mod eliminate;
pub mod normal_form;
pub mod quotient;
pub mod todd_coxeter;

pub use ball::{ball, ball_with, BallOptions, CayleyBall};
pub use normal_form::{multiply, normal_form, GroupElement, Syllable};
