//! Reports built on the whole stack: the Peres-Mermin square, the CZ sign
//! consistency check, and the law suite with its truth tables.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::clifford::{CzChoice, Gate, Theory, TheoryVariant, Transcript};
use crate::error::Result;
use crate::kernel::{self, LawReport, TruthTable, TruthValue};
use crate::knowledge::KnowledgeState;
use crate::pauli::Proposition;
use crate::reduction::reduce_set;

/// The square, row by row.
pub const PM_GRID: [[&str; 3]; 3] = [["ZI", "IZ", "ZZ"], ["IX", "XI", "XX"], ["ZX", "XZ", "YY"]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

/// A row or column: the prediction its first two members make for the
/// third, as a parity on the three outcome bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmConstraint {
    pub line: Line,
    /// 1-based.
    pub index: usize,
    pub triple: [Proposition; 3],
    pub prediction: Proposition,
    pub parity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmReport {
    pub variant: TheoryVariant,
    pub square: Vec<Vec<Proposition>>,
    pub constraints: Vec<PmConstraint>,
    /// XOR of all six parities; 1 rules out any assignment.
    pub parity_xor: u8,
    pub assignments_checked: usize,
    pub satisfiable: bool,
    /// Outcome bits in grid layout, for the first satisfying assignment.
    pub assignment: Option<Vec<Vec<u8>>>,
}

fn grid_prop(r: usize, c: usize) -> Proposition {
    format!("<{}>", PM_GRID[r][c]).parse().expect("valid grid entry")
}

fn line_parity(cells: &[[usize; 2]; 3], bit: impl Fn(usize, usize) -> u8) -> u8 {
    cells.iter().fold(0, |a, &[r, c]| a ^ bit(r, c))
}

fn line_cells(line: Line, index: usize) -> [[usize; 2]; 3] {
    let i = index - 1;
    match line {
        Line::Row => [[i, 0], [i, 1], [i, 2]],
        Line::Column => [[0, i], [1, i], [2, i]],
    }
}

/// Builds the square, derives each line's parity from the closure of its
/// first two members, and searches all 512 outcome assignments.
pub fn pm_square(variant: TheoryVariant) -> PmReport {
    let theory = Theory::new(variant, CzChoice::Standard);
    let square: Vec<Vec<Proposition>> =
        (0..3).map(|r| (0..3).map(|c| grid_prop(r, c)).collect()).collect();

    let mut constraints = Vec::new();
    for line in [Line::Row, Line::Column] {
        for index in 1..=3 {
            let triple = line_cells(line, index).map(|[r, c]| square[r][c].clone());
            let state = KnowledgeState::from_generators(2, theory, vec![triple[0].clone(), triple[1].clone()])
                .expect("square lines are compatible and independent");
            let value = state.predicts(&triple[2]).expect("same dimension");
            let parity = match value {
                TruthValue::True => 0,
                TruthValue::False => 1,
                TruthValue::Indeterminate => unreachable!("third member is a product of the first two"),
            };
            let prediction = triple[2].clone().with_sign(parity == 1);
            constraints.push(PmConstraint { line, index, triple, prediction, parity });
        }
    }
    let parity_xor = constraints.iter().fold(0, |a, c| a ^ c.parity);

    let bit = |bits: u16| move |r: usize, c: usize| ((bits >> (3 * r + c)) & 1) as u8;
    let witness = (0..1u16 << 9).find(|&bits| {
        constraints
            .iter()
            .all(|c| line_parity(&line_cells(c.line, c.index), bit(bits)) == c.parity)
    });
    let assignment =
        witness.map(|bits| (0..3).map(|r| (0..3).map(|c| bit(bits)(r, c)).collect()).collect());

    PmReport {
        variant,
        square,
        constraints,
        parity_xor,
        assignments_checked: 512,
        satisfiable: witness.is_some(),
        assignment,
    }
}

impl PmReport {
    /// True iff `assignment` (grid layout) meets every constraint.
    pub fn check_assignment(&self, assignment: &[Vec<u8>]) -> bool {
        self.constraints
            .iter()
            .all(|c| line_parity(&line_cells(c.line, c.index), |r, col| assignment[r][col]) == c.parity)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Peres-Mermin square ({})", self.variant);
        for row in &self.square {
            let cells: Vec<String> = row.iter().map(|p| p.letter_string()).collect();
            let _ = writeln!(out, "  {}", cells.join("  "));
        }
        for c in &self.constraints {
            let names: Vec<String> = c.triple.iter().map(|p| p.letter_string()).collect();
            let line = match c.line {
                Line::Row => "row",
                Line::Column => "col",
            };
            let _ = writeln!(
                out,
                "{line} {}: {} => {}  parity {}",
                c.index,
                names.join(" "),
                c.prediction,
                c.parity
            );
        }
        let _ = writeln!(out, "parity xor: {}", self.parity_xor);
        match &self.assignment {
            Some(a) => {
                let _ = writeln!(out, "satisfiable: yes");
                for row in a {
                    let bits: Vec<String> = row.iter().map(u8::to_string).collect();
                    let _ = writeln!(out, "  {}", bits.join(" "));
                }
            }
            None => {
                let _ = writeln!(out, "satisfiable: no ({} assignments checked)", self.assignments_checked);
            }
        }
        out
    }
}

/// Outcome of deriving the `YIY` prediction from `⟨¬YYI,¬IYY⟩` in two ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub cz: CzChoice,
    pub premise: Vec<Proposition>,
    /// The premise after joint reduction.
    pub reduced_premise: Vec<Proposition>,
    /// Prediction from the closure of the premise.
    pub by_closure: Proposition,
    /// Prediction after moving the premise through `CZ@(1,2); CZ@(2,3);
    /// CZ@(1,3)` and back.
    pub by_cz_triangle: Proposition,
    pub derived: Vec<Proposition>,
    pub contradiction_found: bool,
    pub poisoned: bool,
}

/// The three CZs used by the second derivation.
pub fn cz_triangle() -> Transcript {
    Transcript::from_gates(vec![Gate::Cz(0, 1), Gate::Cz(1, 2), Gate::Cz(0, 2)])
}

/// Derives the `YIY` prediction of `⟨¬YYI,¬IYY⟩` (quantum sign rules,
/// chosen CZ) from its closure and through the CZ triangle, and reports
/// whether the two disagree.
pub fn cz_consistency_check(cz: CzChoice) -> ConsistencyReport {
    let theory = Theory::new(TheoryVariant::Quantum, cz);
    let premise: Vec<Proposition> = ["<-YYI>", "<-IYY>"].iter().map(|s| s.parse().expect("valid")).collect();
    let target: Proposition = "<YIY>".parse().expect("valid");

    let reduced_premise = reduce_set(&premise, theory).expect("premise is valid").reduced;
    let state = KnowledgeState::from_generators(3, theory, premise.clone()).expect("premise is valid");
    let by_closure = match state.predicts(&target).expect("same dimension") {
        TruthValue::True => target.clone(),
        TruthValue::False => target.negate(),
        TruthValue::Indeterminate => unreachable!("YIY is the product of the premise"),
    };
    let by_cz_triangle = state
        .derive_through(&cz_triangle(), &target)
        .expect("valid transcript")
        .expect("YIY is the product of the premise");

    let state = state
        .record_derived(by_closure.clone())
        .and_then(|s| s.record_derived(by_cz_triangle.clone()))
        .expect("same dimension");
    let mut derived = vec![by_closure.clone()];
    if by_cz_triangle != by_closure {
        derived.push(by_cz_triangle.clone());
    }
    let contradiction_found = derived.iter().any(|p| derived.contains(&p.negate()));

    ConsistencyReport {
        cz,
        premise,
        reduced_premise,
        by_closure,
        by_cz_triangle,
        derived,
        contradiction_found,
        poisoned: state.is_poisoned(),
    }
}

impl ConsistencyReport {
    pub fn render_text(&self) -> String {
        let list = |ps: &[Proposition]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let _ = writeln!(out, "cz: {}", self.cz);
        let _ = writeln!(out, "premise: {}", list(&self.premise));
        let _ = writeln!(out, "reduced premise: {}", list(&self.reduced_premise));
        let _ = writeln!(out, "by closure: {}", self.by_closure);
        let _ = writeln!(out, "by CZ triangle: {}", self.by_cz_triangle);
        let _ = writeln!(out, "derived: {}", list(&self.derived));
        let _ = writeln!(
            out,
            "{}",
            if self.contradiction_found { "CONTRADICTION" } else { "consistent" }
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawTable {
    pub law_id: String,
    pub table: TruthTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawTables {
    pub report: LawReport,
    pub tables: Vec<LawTable>,
}

/// The law suite together with every law's full truth table.
pub fn law_report() -> Result<LawTables> {
    let report = kernel::law_suite()?;
    let tables = kernel::laws()
        .iter()
        .map(|law| Ok(LawTable { law_id: law.id.to_string(), table: law.truth_table()? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(LawTables { report, tables })
}

impl LawTables {
    pub fn table(&self, id: &str) -> Option<&TruthTable> {
        self.tables.iter().find(|t| t.law_id == id).map(|t| &t.table)
    }

    pub fn render_text(&self) -> String {
        let mut out = self.report.render_text();
        for t in &self.tables {
            let _ = write!(out, "\n{}\n{}", t.law_id, t.table.render());
        }
        out
    }
}
