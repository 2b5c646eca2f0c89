//! Numeric foundation: rationals, numeric modes, sources, length profiles and
//! symbol sets.

mod profile;
mod rational;
mod scalar;
mod source;
mod symbols;

pub use profile::{kraft_sum, LengthProfile};
pub use rational::{q, Rational};
pub use scalar::{NumericMode, Scalar, Weight, Weights, DEFAULT_EPSILON};
pub use source::{make_source, AnySource, Source};
pub use symbols::SymbolSet;

/// Runs `$body` with `$w` bound to the weight vector (`&Vec<W>` for some
/// [`Weight`] type `W`) and `$eps` to the comparison tolerance.
macro_rules! with_weights {
    ($weights:expr, |$w:ident, $eps:ident| $body:expr) => {
        match $weights {
            $crate::model::Weights::Scaled { numerators: $w, .. } => {
                let $eps = 0.0f64;
                $body
            }
            $crate::model::Weights::Exact($w) => {
                let $eps = 0.0f64;
                $body
            }
            $crate::model::Weights::Float {
                values: $w,
                epsilon,
            } => {
                let $eps: f64 = *epsilon;
                $body
            }
        }
    };
}

pub(crate) use with_weights;
