use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::value::TruthValue;
use crate::error::{Error, Result};

/// Exhaustive checks enumerate `3^k` assignments; `k` is capped here.
pub const MAX_ATOMS: usize = 8;

/// Default display names for atoms 0, 1, 2, ...
pub const DEFAULT_ATOM_NAMES: [&str; MAX_ATOMS] = ["p", "q", "r", "s", "t", "u", "v", "w"];

/// Propositional formula over numbered atoms and the six connectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `⟨I⟩`, true under every assignment.
    Tautology,
    /// `⟨¬I⟩`, false under every assignment.
    Contradiction,
}

impl Formula {
    pub fn atom(id: usize) -> Self {
        Formula::Atom(id)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn xor(self, rhs: Formula) -> Self {
        Formula::Xor(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    /// Left fold of binary conjunction; the empty conjunction is `⟨I⟩`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Tautology)
    }

    /// One past the largest atom id, i.e. the width of the assignment
    /// needed to evaluate this formula.
    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Atom(id) => id + 1,
            Formula::Not(f) => f.atom_count(),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Xor(f, g)
            | Formula::Implies(f, g)
            | Formula::Iff(f, g) => f.atom_count().max(g.atom_count()),
            Formula::Tautology | Formula::Contradiction => 0,
        }
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<TruthValue> {
        Ok(match self {
            Formula::Atom(id) => assignment.get(*id).ok_or(Error::MissingAtom(*id))?,
            Formula::Not(f) => f.evaluate(assignment)?.negate(),
            Formula::And(f, g) => f.evaluate(assignment)?.conj(g.evaluate(assignment)?),
            Formula::Or(f, g) => f.evaluate(assignment)?.disj(g.evaluate(assignment)?),
            Formula::Xor(f, g) => f.evaluate(assignment)?.xor3(g.evaluate(assignment)?),
            Formula::Implies(f, g) => f
                .evaluate(assignment)?
                .material_implies(g.evaluate(assignment)?),
            Formula::Iff(f, g) => f.evaluate(assignment)?.material_iff(g.evaluate(assignment)?),
            Formula::Tautology => TruthValue::True,
            Formula::Contradiction => TruthValue::False,
        })
    }

    fn is_binary(&self) -> bool {
        !matches!(
            self,
            Formula::Atom(_) | Formula::Not(_) | Formula::Tautology | Formula::Contradiction
        )
    }

    /// Display adapter using the given atom names.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, names }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&DEFAULT_ATOM_NAMES).fmt(f)
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    names: &'a [&'a str],
}

impl FormulaDisplay<'_> {
    fn write(&self, node: &Formula, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
            if nested {
                write!(f, "(")?;
            }
            self.write(a, f, true)?;
            write!(f, "{op}")?;
            self.write(b, f, true)?;
            if nested {
                write!(f, ")")?;
            }
            Ok(())
        };
        match node {
            Formula::Atom(id) => match self.names.get(*id) {
                Some(name) => write!(f, "{name}"),
                None => write!(f, "a{id}"),
            },
            Formula::Not(inner) => {
                write!(f, "¬")?;
                if inner.is_binary() {
                    write!(f, "(")?;
                    self.write(inner, f, false)?;
                    write!(f, ")")
                } else {
                    self.write(inner, f, true)
                }
            }
            Formula::And(a, b) => binary(f, a, "∧", b),
            Formula::Or(a, b) => binary(f, a, "∨", b),
            Formula::Xor(a, b) => binary(f, a, "⊻", b),
            Formula::Implies(a, b) => binary(f, a, "→", b),
            Formula::Iff(a, b) => binary(f, a, "↔", b),
            Formula::Tautology => write!(f, "⟨I⟩"),
            Formula::Contradiction => write!(f, "⟨¬I⟩"),
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.formula, f, false)
    }
}

/// Truth values for atoms `0..len`, indexed by atom id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    values: Vec<TruthValue>,
}

impl Assignment {
    pub fn new(values: Vec<TruthValue>) -> Self {
        Assignment { values }
    }

    pub fn get(&self, atom: usize) -> Option<TruthValue> {
        self.values.get(atom).copied()
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All `3^k` assignments in lexicographic order, atom 0 most significant
    /// and `0 < ? < 1` within each position.
    pub fn enumerate(k: usize) -> impl Iterator<Item = Assignment> {
        let total = 3usize.pow(k as u32);
        (0..total).map(move |mut index| {
            let mut values = vec![TruthValue::False; k];
            for slot in values.iter_mut().rev() {
                *slot = TruthValue::ALL[index % 3];
                index /= 3;
            }
            Assignment { values }
        })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (id, v) in self.values.iter().enumerate() {
            if id > 0 {
                write!(f, ", ")?;
            }
            match DEFAULT_ATOM_NAMES.get(id) {
                Some(name) => write!(f, "{name}:{v}")?,
                None => write!(f, "a{id}:{v}")?,
            }
        }
        write!(f, "}}")
    }
}

/// Outcome of an exhaustive law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Holds,
    /// The first failing assignment in enumeration order.
    Counterexample(Assignment),
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        matches!(self, CheckResult::Holds)
    }
}

pub(crate) fn shared_atom_count(f: &Formula, g: &Formula) -> Result<usize> {
    let atoms = f.atom_count().max(g.atom_count());
    if atoms > MAX_ATOMS {
        return Err(Error::TooManyAtoms { atoms, limit: MAX_ATOMS });
    }
    Ok(atoms)
}

fn first_failure(
    f: &Formula,
    g: &Formula,
    relation: impl Fn(TruthValue, TruthValue) -> bool,
) -> Result<CheckResult> {
    let k = shared_atom_count(f, g)?;
    for assignment in Assignment::enumerate(k) {
        if !relation(f.evaluate(&assignment)?, g.evaluate(&assignment)?) {
            return Ok(CheckResult::Counterexample(assignment));
        }
    }
    Ok(CheckResult::Holds)
}

/// `f ⇒ g`: the material conditional `f → g` is 1 under every assignment.
pub fn logically_implies(f: &Formula, g: &Formula) -> Result<CheckResult> {
    first_failure(f, g, |a, b| a.material_implies(b) == TruthValue::True)
}

/// `f ⇔ g`: identical truth table entries.
pub fn logically_equivalent(f: &Formula, g: &Formula) -> Result<CheckResult> {
    first_failure(f, g, |a, b| a == b)
}

/// Parses formulas that share one atom namespace.
///
/// Atom names are lowercase identifiers; ids are assigned in alphabetical
/// order so `p`, `q`, `r` become 0, 1, 2. Operators, loosest first:
/// `<->`/`↔`, `->`/`→` (right associative), `|`/`∨`, `^`/`⊻`, `&`/`∧`, and
/// prefix `~`/`!`/`¬`. Constants: `1`, `T`, `<I>` for the tautology and
/// `0`, `F`, `<-I>`, `<¬I>` for the contradiction.
pub fn parse_formulas(texts: &[&str]) -> Result<(Vec<Formula>, Vec<String>)> {
    let mut names = BTreeSet::new();
    let mut token_lists = Vec::with_capacity(texts.len());
    for text in texts {
        let tokens = tokenize(text)?;
        for (_, token) in &tokens {
            if let Token::Ident(name) = token {
                names.insert(name.clone());
            }
        }
        token_lists.push(tokens);
    }
    let names: Vec<String> = names.into_iter().collect();
    if names.len() > MAX_ATOMS {
        return Err(Error::TooManyAtoms { atoms: names.len(), limit: MAX_ATOMS });
    }
    let mut formulas = Vec::with_capacity(texts.len());
    for (tokens, text) in token_lists.into_iter().zip(texts) {
        let mut parser = Parser { tokens, pos: 0, names: &names, end: text.chars().count() };
        let formula = parser.iff()?;
        if let Some((position, _)) = parser.tokens.get(parser.pos) {
            return Err(Error::FormulaParse {
                position: *position,
                reason: "unexpected trailing input".into(),
            });
        }
        formulas.push(formula);
    }
    Ok((formulas, names))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let rest_is = |i: usize, s: &str| {
        let pat: Vec<char> = s.chars().collect();
        chars.len() >= i + pat.len() && chars[i..i + pat.len()] == pat[..]
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let (token, width) = if c.is_whitespace() {
            i += 1;
            continue;
        } else if rest_is(i, "<->") {
            (Token::Iff, 3)
        } else if rest_is(i, "<I>") {
            (Token::True, 3)
        } else if rest_is(i, "<-I>") || rest_is(i, "<¬I>") {
            (Token::False, 4)
        } else if rest_is(i, "->") {
            (Token::Implies, 2)
        } else if c.is_ascii_lowercase() {
            let mut end = i;
            while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                end += 1;
            }
            (Token::Ident(chars[i..end].iter().collect()), end - i)
        } else {
            let token = match c {
                '↔' => Token::Iff,
                '→' => Token::Implies,
                '|' | '∨' => Token::Or,
                '^' | '⊻' => Token::Xor,
                '&' | '∧' => Token::And,
                '~' | '!' | '¬' => Token::Not,
                '(' => Token::Open,
                ')' => Token::Close,
                '1' | 'T' | '⊤' => Token::True,
                '0' | 'F' | '⊥' => Token::False,
                other => {
                    return Err(Error::FormulaParse {
                        position: i,
                        reason: format!("unexpected character {other:?}"),
                    })
                }
            };
            (token, 1)
        };
        tokens.push((start, token));
        i += width;
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(&Token::Iff) {
            lhs = lhs.iff(self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            return Ok(lhs.implies(self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.xor()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.xor()?);
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Xor) {
            lhs = lhs.xor(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let position = self.position();
        let Some(token) = self.peek().cloned() else {
            return Err(Error::FormulaParse { position, reason: "unexpected end of input".into() });
        };
        self.pos += 1;
        match token {
            Token::Not => Ok(self.unary()?.not()),
            Token::True => Ok(Formula::Tautology),
            Token::False => Ok(Formula::Contradiction),
            Token::Ident(name) => {
                let id = self.names.iter().position(|n| *n == name).expect("name collected");
                Ok(Formula::Atom(id))
            }
            Token::Open => {
                let inner = self.iff()?;
                if !self.eat(&Token::Close) {
                    return Err(Error::FormulaParse {
                        position: self.position(),
                        reason: "expected ')'".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::FormulaParse {
                position,
                reason: format!("unexpected {other:?}"),
            }),
        }
    }
}
