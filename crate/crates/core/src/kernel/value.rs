use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A three-valued truth value: false, indeterminate, or true.
///
/// The derived order `0 < ? < 1` is used for enumeration and display only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TruthValue {
    #[serde(rename = "0")]
    False,
    #[serde(rename = "?")]
    Indeterminate,
    #[serde(rename = "1")]
    True,
}

impl TruthValue {
    /// All three values in enumeration order.
    pub const ALL: [TruthValue; 3] = [TruthValue::False, TruthValue::Indeterminate, TruthValue::True];

    pub fn is_determinate(self) -> bool {
        self != TruthValue::Indeterminate
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    /// `Some(bool)` for determinate values.
    pub fn to_bool(self) -> Option<bool> {
        match self {
            TruthValue::False => Some(false),
            TruthValue::True => Some(true),
            TruthValue::Indeterminate => None,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            TruthValue::False => TruthValue::True,
            TruthValue::True => TruthValue::False,
            TruthValue::Indeterminate => TruthValue::Indeterminate,
        }
    }

    pub fn conj(self, other: Self) -> Self {
        use TruthValue::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Indeterminate,
        }
    }

    pub fn disj(self, other: Self) -> Self {
        use TruthValue::*;
        match (self, other) {
            (True, _) | (_, True) => True,
            (False, False) => False,
            _ => Indeterminate,
        }
    }

    /// Exclusive disjunction; indeterminate as soon as either side is.
    pub fn xor3(self, other: Self) -> Self {
        match (self.to_bool(), other.to_bool()) {
            (Some(a), Some(b)) => TruthValue::from_bool(a ^ b),
            _ => TruthValue::Indeterminate,
        }
    }

    /// Material conditional. Unlike the Kleene conditional it is true
    /// whenever both sides carry the same value, so `? -> ?` is 1 while
    /// `? -> 0` and `1 -> ?` are 0.
    pub fn material_implies(self, other: Self) -> Self {
        TruthValue::from_bool(self == TruthValue::False || other == TruthValue::True || self == other)
    }

    /// Material biconditional: 1 iff both sides carry the same value.
    pub fn material_iff(self, other: Self) -> Self {
        TruthValue::from_bool(self == other)
    }

    pub fn symbol(self) -> char {
        match self {
            TruthValue::False => '0',
            TruthValue::Indeterminate => '?',
            TruthValue::True => '1',
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for TruthValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" | "F" | "false" => Ok(TruthValue::False),
            "?" | "I" | "indeterminate" => Ok(TruthValue::Indeterminate),
            "1" | "T" | "true" => Ok(TruthValue::True),
            other => Err(format!("not a truth value: {other:?}")),
        }
    }
}

impl Not for TruthValue {
    type Output = TruthValue;
    fn not(self) -> TruthValue {
        self.negate()
    }
}

impl BitAnd for TruthValue {
    type Output = TruthValue;
    fn bitand(self, rhs: TruthValue) -> TruthValue {
        self.conj(rhs)
    }
}

impl BitOr for TruthValue {
    type Output = TruthValue;
    fn bitor(self, rhs: TruthValue) -> TruthValue {
        self.disj(rhs)
    }
}

impl BitXor for TruthValue {
    type Output = TruthValue;
    fn bitxor(self, rhs: TruthValue) -> TruthValue {
        self.xor3(rhs)
    }
}
