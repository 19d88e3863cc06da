use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

/// A failed run, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Config(anyhow::Error),
    Input(anyhow::Error),
    Degenerate(anyhow::Error),
    Internal(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Degenerate(_) => EXIT_DEGENERATE,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn config(e: impl Into<anyhow::Error>) -> Self {
        Failure::Config(e.into())
    }

    pub fn input(e: impl Into<anyhow::Error>) -> Self {
        Failure::Input(e.into())
    }

    pub fn internal(e: impl Into<anyhow::Error>) -> Self {
        Failure::Internal(e.into())
    }

    /// Library errors: degenerate estimates map to their own code, the
    /// rest count as bad input.
    pub fn from_lib(e: impl Into<votecast::Error>) -> Self {
        let e = e.into();
        if e.is_degenerate() {
            Failure::Degenerate(e.into())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(e) => write!(f, "configuration: {e:#}"),
            Failure::Input(e) => write!(f, "input: {e:#}"),
            Failure::Degenerate(e) => write!(f, "degenerate estimate: {e:#}"),
            Failure::Internal(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for Failure {}
