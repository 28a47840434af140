//! Signed Pauli-string propositions in bit-packed symplectic form.
//!
//! A proposition `⟨±P₁…Pₙ⟩` stores one x-bit and one z-bit per system,
//! packed 64 to a word, plus a sign bit: sign 0 predicts outcome 0 for the
//! joint measurement, sign 1 predicts outcome 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn x(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    pub fn z(self) -> bool {
        matches!(self, PauliLetter::Z | PauliLetter::Y)
    }

    pub fn is_trivial(self) -> bool {
        self == PauliLetter::I
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropParseErrorKind {
    BadLetter,
    EmptyString,
    MalformedSign,
    LengthMismatch { expected: usize, found: usize },
    MissingDelimiter,
    TrailingInput,
}

/// Parse failure with the character offset where it was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{} at character {position}", describe(kind))]
pub struct PropParseError {
    pub position: usize,
    pub kind: PropParseErrorKind,
}

fn describe(kind: &PropParseErrorKind) -> String {
    match kind {
        PropParseErrorKind::BadLetter => "expected one of I, X, Y, Z".into(),
        PropParseErrorKind::EmptyString => "empty Pauli string".into(),
        PropParseErrorKind::MalformedSign => "malformed sign".into(),
        PropParseErrorKind::LengthMismatch { expected, found } => {
            format!("expected {expected} systems but found {found}")
        }
        PropParseErrorKind::MissingDelimiter => "expected '<' or '>'".into(),
        PropParseErrorKind::TrailingInput => "unexpected input after '>'".into(),
    }
}

/// A signed Pauli-string proposition.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PropositionRepr", try_from = "PropositionRepr")]
pub struct Proposition {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    sign: bool,
}

impl Proposition {
    /// `⟨I…I⟩` on `n` systems.
    pub fn identity(n: usize) -> Self {
        let words = words_for(n);
        Proposition { n, x: vec![0; words], z: vec![0; words], sign: false }
    }

    /// `⟨¬I…I⟩` on `n` systems.
    pub fn contradiction(n: usize) -> Self {
        Proposition { sign: true, ..Proposition::identity(n) }
    }

    pub fn from_letters(letters: &[PauliLetter], sign: bool) -> Self {
        let mut p = Proposition::identity(letters.len());
        for (i, &l) in letters.iter().enumerate() {
            p.set_letter(i, l);
        }
        p.sign = sign;
        p
    }

    /// A single nontrivial letter at `index` (0-based), identities elsewhere.
    pub fn single(n: usize, index: usize, letter: PauliLetter, sign: bool) -> Self {
        let mut p = Proposition::identity(n);
        p.set_letter(index, letter);
        p.sign = sign;
        p
    }

    /// Parses `<±P…>` and optionally checks the system count.
    pub fn parse(text: &str, expected_n: Option<usize>) -> std::result::Result<Self, PropParseError> {
        let chars: Vec<char> = text.chars().collect();
        let err = |position, kind| PropParseError { position, kind };
        let start = chars.iter().position(|c| !c.is_whitespace()).unwrap_or(chars.len());
        if start == chars.len() {
            return Err(err(0, PropParseErrorKind::EmptyString));
        }
        if chars[start] != '<' {
            return Err(err(start, PropParseErrorKind::MissingDelimiter));
        }
        let Some(close) = chars[start..].iter().position(|&c| c == '>').map(|i| i + start) else {
            return Err(err(chars.len(), PropParseErrorKind::MissingDelimiter));
        };
        if let Some(extra) = chars[close + 1..].iter().position(|c| !c.is_whitespace()) {
            return Err(err(close + 1 + extra, PropParseErrorKind::TrailingInput));
        }
        let body: String = chars[start + 1..close].iter().collect();
        Proposition::parse_body(&body, start + 1, expected_n)
    }

    /// Parses the inside of a bracket, `sign? letter+`, reporting positions
    /// relative to `offset`.
    pub fn parse_body(
        body: &str,
        offset: usize,
        expected_n: Option<usize>,
    ) -> std::result::Result<Self, PropParseError> {
        let err = |position, kind| PropParseError { position, kind };
        let mut letters = Vec::new();
        let mut sign = false;
        let mut first_letter = None;
        for (i, c) in body.chars().enumerate() {
            let position = offset + i;
            match c {
                '-' | '¬' if i == 0 => sign = true,
                '-' | '¬' => return Err(err(position, PropParseErrorKind::MalformedSign)),
                c => match PauliLetter::from_char(c) {
                    Some(l) => {
                        first_letter.get_or_insert(position);
                        letters.push(l);
                    }
                    None => return Err(err(position, PropParseErrorKind::BadLetter)),
                },
            }
        }
        let end = offset + body.chars().count();
        if letters.is_empty() {
            return Err(err(end, PropParseErrorKind::EmptyString));
        }
        if let Some(expected) = expected_n {
            if expected != letters.len() {
                return Err(err(
                    first_letter.unwrap_or(offset),
                    PropParseErrorKind::LengthMismatch { expected, found: letters.len() },
                ));
            }
        }
        Ok(Proposition::from_letters(&letters, sign))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The sign bit: `false` for `⟨P⟩`, `true` for `⟨¬P⟩`.
    pub fn sign(&self) -> bool {
        self.sign
    }

    pub fn with_sign(mut self, sign: bool) -> Self {
        self.sign = sign;
        self
    }

    /// The same string with sign 0, i.e. the bare question.
    pub fn question(&self) -> Self {
        self.clone().with_sign(false)
    }

    pub fn negate(&self) -> Self {
        let mut p = self.clone();
        p.sign = !p.sign;
        p
    }

    pub fn letter(&self, index: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x_bit(index), self.z_bit(index))
    }

    pub fn letters(&self) -> impl Iterator<Item = PauliLetter> + '_ {
        (0..self.n).map(|i| self.letter(i))
    }

    pub fn letter_string(&self) -> String {
        self.letters().map(PauliLetter::as_char).collect()
    }

    pub fn set_letter(&mut self, index: usize, letter: PauliLetter) {
        self.set_x(index, letter.x());
        self.set_z(index, letter.z());
    }

    /// Number of nontrivial letters.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// `⟨±I…I⟩`.
    pub fn is_trivial(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// 0-based index of the first nontrivial letter.
    pub fn first_nontrivial(&self) -> Option<usize> {
        self.x
            .iter()
            .zip(&self.z)
            .enumerate()
            .find(|(_, (x, z))| (**x | **z) != 0)
            .map(|(w, (x, z))| w * WORD_BITS + (x | z).trailing_zeros() as usize)
    }

    pub fn same_string(&self, other: &Proposition) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    fn check_dims(&self, other: &Proposition) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Whether the two propositions can hold truth values simultaneously:
    /// the positions where both letters are nontrivial and differ are even
    /// in number. Signs are ignored.
    pub fn compatible(&self, other: &Proposition) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.commutes_with(other))
    }

    pub(crate) fn commutes_with(&self, other: &Proposition) -> bool {
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones();
        }
        parity & 1 == 0
    }

    /// Letter-wise product of the strings with XOR of the signs, the rule
    /// for combining single-system facts on disjoint systems. No phase is
    /// tracked, so this is only meaningful where supports allow it.
    pub fn combine_bits(&self, other: &Proposition) -> Result<Proposition> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for w in 0..out.x.len() {
            out.x[w] ^= other.x[w];
            out.z[w] ^= other.z[w];
        }
        out.sign ^= other.sign;
        Ok(out)
    }

    /// Stacked symplectic row `(x | z)` as 2n bits.
    pub fn symplectic_row(&self) -> Vec<u64> {
        let mut row = Vec::with_capacity(2 * self.x.len());
        row.extend_from_slice(&self.x);
        row.extend_from_slice(&self.z);
        row
    }

    #[inline]
    pub(crate) fn x_bit(&self, i: usize) -> bool {
        (self.x[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub(crate) fn z_bit(&self, i: usize) -> bool {
        (self.z[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_x(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % WORD_BITS);
        if v {
            self.x[i / WORD_BITS] |= mask;
        } else {
            self.x[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub(crate) fn set_z(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % WORD_BITS);
        if v {
            self.z[i / WORD_BITS] |= mask;
        } else {
            self.z[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub(crate) fn toggle_z(&mut self, i: usize, v: bool) {
        self.z[i / WORD_BITS] ^= (v as u64) << (i % WORD_BITS);
    }

    #[inline]
    pub(crate) fn toggle_sign(&mut self, v: bool) {
        self.sign ^= v;
    }
}

/// Parses a conjunction `<P₁,P₂,…>` of equal-length propositions; `<>` is
/// the empty conjunction. A single proposition parses as a one-element
/// list.
pub fn parse_conjunction(
    text: &str,
    expected_n: Option<usize>,
) -> std::result::Result<Vec<Proposition>, PropParseError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |position, kind| PropParseError { position, kind };
    let start = chars.iter().position(|c| !c.is_whitespace()).unwrap_or(chars.len());
    if start == chars.len() {
        return Err(err(0, PropParseErrorKind::EmptyString));
    }
    if chars[start] != '<' {
        return Err(err(start, PropParseErrorKind::MissingDelimiter));
    }
    let Some(close) = chars[start..].iter().position(|&c| c == '>').map(|i| i + start) else {
        return Err(err(chars.len(), PropParseErrorKind::MissingDelimiter));
    };
    if let Some(extra) = chars[close + 1..].iter().position(|c| !c.is_whitespace()) {
        return Err(err(close + 1 + extra, PropParseErrorKind::TrailingInput));
    }
    let body = &chars[start + 1..close];
    if body.iter().all(|c| c.is_whitespace()) {
        return Ok(Vec::new());
    }
    let mut out: Vec<Proposition> = Vec::new();
    let mut offset = start + 1;
    for piece in body.split(|&c| c == ',') {
        let lead = piece.iter().take_while(|c| c.is_whitespace()).count();
        let trimmed: String = piece[lead..].iter().collect::<String>().trim_end().to_string();
        let n = expected_n.or(out.first().map(Proposition::n));
        out.push(Proposition::parse_body(&trimmed, offset + lead, n)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

pub fn parse_prop(text: &str, expected_n: Option<usize>) -> std::result::Result<Proposition, PropParseError> {
    Proposition::parse(text, expected_n)
}

pub fn format_prop(p: &Proposition) -> String {
    p.to_string()
}

pub fn compatible(p: &Proposition, q: &Proposition) -> Result<bool> {
    p.compatible(q)
}

pub fn negate_prop(p: &Proposition) -> Proposition {
    p.negate()
}

pub fn weight(p: &Proposition) -> usize {
    p.weight()
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}{}>", if self.sign { "-" } else { "" }, self.letter_string())
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Proposition {
    type Err = PropParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Proposition::parse(s, None)
    }
}

/// Orders by system count, then letters (`I < X < Y < Z`, leftmost
/// first), then sign.
impl Ord for Proposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.letters().cmp(other.letters()))
            .then_with(|| self.sign.cmp(&other.sign))
    }
}

impl PartialOrd for Proposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct PropositionRepr {
    n: usize,
    letters: String,
    sign: u8,
}

impl From<Proposition> for PropositionRepr {
    fn from(p: Proposition) -> Self {
        PropositionRepr { n: p.n, letters: p.letter_string(), sign: p.sign as u8 }
    }
}

impl TryFrom<PropositionRepr> for Proposition {
    type Error = String;

    fn try_from(repr: PropositionRepr) -> std::result::Result<Self, Self::Error> {
        if repr.sign > 1 {
            return Err(format!("sign must be 0 or 1, got {}", repr.sign));
        }
        let p = Proposition::parse_body(&repr.letters, 0, Some(repr.n)).map_err(|e| e.to_string())?;
        Ok(p.with_sign(repr.sign == 1))
    }
}
