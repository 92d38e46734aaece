//! Evacuation of rectangular standard Young tableaux, multicolored
//! noncrossing matchings and the `sl_n` webs built from them.
//!
//! The pipeline is `tableau -> matching -> web`; [`verify`] checks that
//! evacuation on tableaux corresponds to reflection on matchings and to
//! reflection plus edge flips on webs.

pub mod format;
pub mod matching;
pub mod render;
pub mod tableau;
pub mod verify;
pub mod web;

use thiserror::Error;

/// Environment variable overriding [`tableau::DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "WEBVAC_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Tableau(#[from] tableau::TableauError),
    #[error(transparent)]
    Matching(#[from] matching::MatchingError),
    #[error(transparent)]
    Web(#[from] web::WebError),
    #[error(transparent)]
    Parse(#[from] format::ParseError),
    #[error(transparent)]
    Render(#[from] render::RenderError),
    #[error("{BUDGET_ENV} must be a positive integer, got `{0}`")]
    BadBudget(String),
}

/// The enumeration budget: `WEBVAC_BUDGET` if set, else the default.
pub fn budget_from_env() -> Result<u64, Error> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Ok(b),
            _ => Err(Error::BadBudget(v)),
        },
        Err(_) => Ok(tableau::DEFAULT_BUDGET),
    }
}
