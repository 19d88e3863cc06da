use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The ten parties contesting the 2021 Mexican legislative election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    #[serde(rename = "MORENA")]
    Morena,
    #[serde(rename = "PT")]
    Pt,
    #[serde(rename = "PVEM")]
    Pvem,
    #[serde(rename = "PAN")]
    Pan,
    #[serde(rename = "PRI")]
    Pri,
    #[serde(rename = "PRD")]
    Prd,
    #[serde(rename = "MC")]
    Mc,
    #[serde(rename = "PES")]
    Pes,
    #[serde(rename = "FxM")]
    Fxm,
    #[serde(rename = "RSP")]
    Rsp,
}

impl Party {
    pub const ALL: [Party; 10] = [
        Party::Morena,
        Party::Pt,
        Party::Pvem,
        Party::Pan,
        Party::Pri,
        Party::Prd,
        Party::Mc,
        Party::Pes,
        Party::Fxm,
        Party::Rsp,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Party::Morena => "MORENA",
            Party::Pt => "PT",
            Party::Pvem => "PVEM",
            Party::Pan => "PAN",
            Party::Pri => "PRI",
            Party::Prd => "PRD",
            Party::Mc => "MC",
            Party::Pes => "PES",
            Party::Fxm => "FxM",
            Party::Rsp => "RSP",
        }
    }

    pub fn coalition(self) -> Coalition {
        match self {
            Party::Morena | Party::Pt | Party::Pvem => Coalition::Ruling,
            _ => Coalition::Opposition,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown party code `{0}`")]
pub struct UnknownParty(pub String);

impl FromStr for Party {
    type Err = UnknownParty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Party::ALL
            .into_iter()
            .find(|p| p.code().eq_ignore_ascii_case(t))
            .ok_or_else(|| UnknownParty(s.to_string()))
    }
}

/// Bipartisan grouping; the label `y` is 0 for the ruling coalition and 1 for
/// the opposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Coalition {
    Ruling = 0,
    Opposition = 1,
}

impl Coalition {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> Coalition {
        match self {
            Coalition::Ruling => Coalition::Opposition,
            Coalition::Opposition => Coalition::Ruling,
        }
    }
}

impl From<Coalition> for u8 {
    fn from(c: Coalition) -> u8 {
        c as u8
    }
}

impl TryFrom<u8> for Coalition {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Coalition::Ruling),
            1 => Ok(Coalition::Opposition),
            other => Err(format!("coalition label must be 0 or 1, got {other}")),
        }
    }
}
