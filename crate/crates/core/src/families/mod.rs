//! Closed-form analysis for special diagram families.

pub mod checkered;
pub mod key;
pub mod one_column;
pub mod two_row;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Generic,
    OnePerColumn,
    TwoRow,
    Key,
    Checkered,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::OnePerColumn => "one-per-column",
            Family::TwoRow => "two-row",
            Family::Key => "key",
            Family::Checkered => "checkered",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generic" => Ok(Family::Generic),
            "one-col" | "one-per-column" => Ok(Family::OnePerColumn),
            "two-row" => Ok(Family::TwoRow),
            "key" => Ok(Family::Key),
            "checkered" => Ok(Family::Checkered),
            _ => Err(format!(
                "unknown family `{s}` (expected one-col, two-row, key, checkered or generic)"
            )),
        }
    }
}

/// First family that `d` belongs to, in the order one-per-column, two-row,
/// key, checkered; `Generic` when none match.
pub fn detect_family(d: &Diagram) -> Family {
    if one_column::is_one_per_column(d) {
        Family::OnePerColumn
    } else if two_row::is_two_row(d) {
        Family::TwoRow
    } else if key::is_key_diagram(d) {
        Family::Key
    } else if checkered::recognize(d).is_some() {
        Family::Checkered
    } else {
        Family::Generic
    }
}
