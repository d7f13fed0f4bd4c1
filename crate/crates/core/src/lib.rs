//! Computational workbench for categorical local Langlands experiments.
//!
//! Everything is exact: integer lattices and `i64` rationals, no floating point.

pub mod bmo_hecke;
pub mod error;
pub mod k0_engine;
pub mod kottwitz;
pub mod labels;
pub mod linalg;
pub mod parameters;
pub mod poset;
pub mod rep_theory;
pub mod root_data;
pub mod stalk_engine;

pub use error::{Error, Result};
pub use root_data::{Coweight, DatumSpec, RationalCoweight, RootDatum, Side, Weight, WeylElement};

/// Exact rationals used throughout.
pub type Q = num_rational::Rational64;

/// Formats an integer vector as `(a,b,c)`.
pub fn fmt_int_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Formats a rational vector as `(1/2,0,-3)`.
pub fn fmt_q_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(Q::to_string).collect();
    format!("({})", parts.join(","))
}

/// Parses `1/2`, `-3` or `0` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => s.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
    }
}
