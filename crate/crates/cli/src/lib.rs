//! Command-line front end for `maxface-core`: JSON surface descriptions,
//! verification reports, singular-set analysis and OBJ/CSV mesh export.

pub mod cli;
pub mod description;
pub mod export;
pub mod report;

use maxface_core::Tolerances;
use thiserror::Error;

pub use cli::run;
pub use description::SurfaceDescription;

/// Environment variable holding tolerance overrides, e.g.
/// `MAXFACE_TOL=zero=1e-10,period=1e-9`.
pub const TOL_ENV: &str = "MAXFACE_TOL";

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("invalid surface data: {0}")]
    Data(#[from] maxface_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

/// Parses `key=value` pairs separated by commas on top of the defaults.
pub fn parse_tolerances(spec: &str) -> Result<Tolerances, InputError> {
    let mut tol = Tolerances::default();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| InputError::Usage(format!("{TOL_ENV}: expected key=value, found `{item}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| InputError::Usage(format!("{TOL_ENV}: `{value}` is not a number")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(InputError::Usage(format!("{TOL_ENV}: {key} must be positive")));
        }
        if !tol.set(key.trim(), value) {
            return Err(InputError::Usage(format!("{TOL_ENV}: unknown tolerance `{}`", key.trim())));
        }
    }
    Ok(tol)
}
