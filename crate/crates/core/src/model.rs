//! Shared domain types: symbols, factorisations, pairings and grammars,
//! together with the predicates that check their invariants.
//!
//! Positions are 0-based throughout.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result, SlpError};

/// A letter of the word being rewritten.
///
/// Ids below the alphabet size are terminals; everything above is a fresh
/// letter introduced by pair replacement and doubles as a nonterminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[repr(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn id(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol(b as u32)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Word = Vec<Symbol>;

/// Lifts a byte string to a word over the byte alphabet.
pub fn word_from_bytes(bytes: &[u8]) -> Word {
    bytes.iter().map(|&b| Symbol::from(b)).collect()
}

/// One phrase of a factorisation seen as a span: positions `start..=end`
/// copy `def..=def + (end - start)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub start: usize,
    pub end: usize,
    pub def: usize,
}

impl Factor {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Per-position factor annotation.
///
/// `begin[i] = Some(j)` marks `i` as the first letter of a factor whose
/// definition starts at `j`; `end[i]` marks the last letter of a factor.
/// Positions outside every factor span are free letters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub begin: Vec<Option<usize>>,
    pub end: Vec<bool>,
}

impl Factorization {
    /// All positions free.
    pub fn all_free(len: usize) -> Self {
        Factorization {
            begin: vec![None; len],
            end: vec![false; len],
        }
    }

    /// Builds the table form from a list of spans. Spans are not checked.
    pub fn from_factors(len: usize, factors: &[Factor]) -> Self {
        let mut fact = Self::all_free(len);
        for f in factors {
            fact.begin[f.start] = Some(f.def);
            fact.end[f.end] = true;
        }
        fact
    }

    pub fn len(&self) -> usize {
        self.begin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.begin.is_empty()
    }

    /// Factor list view. Assumes the tables are well formed; a begin with no
    /// matching end runs to the last position.
    pub fn factors(&self) -> Vec<Factor> {
        let n = self.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            if let Some(def) = self.begin[i] {
                let start = i;
                while i + 1 < n && !self.end[i] {
                    i += 1;
                }
                out.push(Factor { start, end: i, def });
            }
            i += 1;
        }
        out
    }

    pub fn factor_count(&self) -> usize {
        self.begin.iter().filter(|b| b.is_some()).count()
    }

    /// Number of positions not covered by any factor span.
    pub fn free_count(&self) -> usize {
        let covered: usize = self.factors().iter().map(Factor::len).sum();
        self.len() - covered
    }

    /// Number of phrases: factors plus free letters.
    pub fn phrase_count(&self) -> usize {
        self.factor_count() + self.free_count()
    }
}

/// Pairing mark for one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mark {
    /// Not yet visited by the sweep. Never valid in a finished pairing.
    #[default]
    Unset,
    First,
    Second,
    Unpaired,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pairing {
    pub marks: Vec<Mark>,
}

impl Pairing {
    pub fn new(marks: Vec<Mark>) -> Self {
        Pairing { marks }
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn paired_count(&self) -> usize {
        self.marks
            .iter()
            .filter(|m| matches!(m, Mark::First | Mark::Second))
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    DefinitionNotLeft,
    DefinitionOutOfRange,
    DefinitionMismatch,
    NestedBegin,
    UnmatchedEnd,
    UnterminatedFactor,
    UnsetMark,
    FirstWithoutSecond,
    SecondWithoutFirst,
    LastIsFirst,
    /// Two adjacent unpaired positions.
    AdjacentUnpaired,
    /// A factor does not start with a complete pair.
    FactorStartNotPaired,
    /// A factor does not end with a complete pair.
    FactorEndNotPaired,
    /// A factor is paired differently from its definition.
    PairingDiffersFromDefinition,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        use ViolationKind::*;
        match self {
            DefinitionNotLeft => "definition not strictly left",
            DefinitionOutOfRange => "definition out of range",
            DefinitionMismatch => "definition mismatch",
            NestedBegin => "factor begins inside another factor",
            UnmatchedEnd => "factor end without begin",
            UnterminatedFactor => "factor without end",
            UnsetMark => "mark never assigned",
            FirstWithoutSecond => "first of pair not followed by second",
            SecondWithoutFirst => "second of pair not preceded by first",
            LastIsFirst => "last position marked first",
            AdjacentUnpaired => "adjacent unpaired positions",
            FactorStartNotPaired => "factor start not a pair",
            FactorEndNotPaired => "factor end not a pair",
            PairingDiffersFromDefinition => "factor paired unlike its definition",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub pos: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.kind.as_str(), self.pos)
    }
}

fn check_len(word: usize, annotation: usize) -> Result<()> {
    if word != annotation {
        return Err(Error::LengthMismatch { word, annotation });
    }
    Ok(())
}

/// Reports every way in which `fact` fails to be a proper factorisation of
/// `word`. An empty result means the factorisation is valid.
pub fn validate_factorization(word: &[Symbol], fact: &Factorization) -> Result<Vec<Violation>> {
    check_len(word.len(), fact.begin.len())?;
    check_len(word.len(), fact.end.len())?;
    let n = word.len();
    let mut out = Vec::new();
    let mut open: Option<(usize, usize)> = None;
    for i in 0..n {
        if let Some(def) = fact.begin[i] {
            if open.is_some() {
                out.push(Violation {
                    pos: i,
                    kind: ViolationKind::NestedBegin,
                });
            }
            open = Some((i, def));
        }
        if fact.end[i] {
            match open.take() {
                None => out.push(Violation {
                    pos: i,
                    kind: ViolationKind::UnmatchedEnd,
                }),
                Some((start, def)) => check_definition(word, start, i, def, &mut out),
            }
        }
    }
    if let Some((start, _)) = open {
        out.push(Violation {
            pos: start,
            kind: ViolationKind::UnterminatedFactor,
        });
    }
    Ok(out)
}

fn check_definition(word: &[Symbol], start: usize, end: usize, def: usize, out: &mut Vec<Violation>) {
    if def >= start {
        out.push(Violation {
            pos: start,
            kind: ViolationKind::DefinitionNotLeft,
        });
        return;
    }
    let len = end - start + 1;
    if def + len > word.len() {
        out.push(Violation {
            pos: start,
            kind: ViolationKind::DefinitionOutOfRange,
        });
        return;
    }
    if let Some(k) = (0..len).find(|&k| word[def + k] != word[start + k]) {
        out.push(Violation {
            pos: start + k,
            kind: ViolationKind::DefinitionMismatch,
        });
    }
}

/// Checks the pairing invariants and the factor properties with respect to
/// `fact`. Factorisation defects are reported as well.
pub fn validate_pairing(word: &[Symbol], fact: &Factorization, pairing: &Pairing) -> Result<Vec<Violation>> {
    check_len(word.len(), pairing.marks.len())?;
    let mut out = validate_factorization(word, fact)?;
    let marks = &pairing.marks;
    let n = marks.len();
    for i in 0..n {
        let v = |kind| Violation { pos: i, kind };
        match marks[i] {
            Mark::Unset => out.push(v(ViolationKind::UnsetMark)),
            Mark::First => {
                if i + 1 == n {
                    out.push(v(ViolationKind::LastIsFirst));
                } else if marks[i + 1] != Mark::Second {
                    out.push(v(ViolationKind::FirstWithoutSecond));
                }
            }
            Mark::Second => {
                if i == 0 || marks[i - 1] != Mark::First {
                    out.push(v(ViolationKind::SecondWithoutFirst));
                }
            }
            Mark::Unpaired => {
                if i + 1 < n && marks[i + 1] == Mark::Unpaired {
                    out.push(v(ViolationKind::AdjacentUnpaired));
                }
            }
        }
    }
    // Factor properties are only meaningful over a proper factorisation.
    if out.iter().any(|v| is_factorization_kind(v.kind)) {
        return Ok(out);
    }
    for f in fact.factors() {
        let pair_at = |p: usize| marks[p] == Mark::First && p < f.end && marks[p + 1] == Mark::Second;
        if f.len() < 2 || !pair_at(f.start) {
            out.push(Violation {
                pos: f.start,
                kind: ViolationKind::FactorStartNotPaired,
            });
        }
        if f.len() < 2 || !(marks[f.end - 1] == Mark::First && marks[f.end] == Mark::Second) {
            out.push(Violation {
                pos: f.end,
                kind: ViolationKind::FactorEndNotPaired,
            });
        }
        if let Some(k) = (0..f.len()).find(|&k| marks[f.start + k] != marks[f.def + k]) {
            out.push(Violation {
                pos: f.start + k,
                kind: ViolationKind::PairingDiffersFromDefinition,
            });
        }
    }
    Ok(out)
}

fn is_factorization_kind(kind: ViolationKind) -> bool {
    use ViolationKind::*;
    matches!(
        kind,
        DefinitionNotLeft | DefinitionOutOfRange | DefinitionMismatch | NestedBegin | UnmatchedEnd | UnterminatedFactor
    )
}

/// A binary rule `lhs -> left right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rule {
    pub lhs: Symbol,
    pub left: Symbol,
    pub right: Symbol,
}

/// Straight-line program in binary normal form. Rule `k` defines symbol
/// `alphabet_size + k`; terminals stand for themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slp {
    pub alphabet_size: u32,
    pub rules: Vec<Rule>,
    pub start: Symbol,
}

impl Slp {
    pub fn symbol_count(&self) -> usize {
        self.alphabet_size as usize + self.rules.len()
    }

    pub fn is_terminal(&self, s: Symbol) -> bool {
        s.0 < self.alphabet_size
    }

    /// Checks id consecutiveness, acyclicity and that the start is defined.
    pub fn validate(&self) -> std::result::Result<(), SlpError> {
        for (k, r) in self.rules.iter().enumerate() {
            let expected = Symbol(self.alphabet_size + k as u32);
            if r.lhs != expected {
                return Err(SlpError::IdGap { expected, found: r.lhs });
            }
            for used in [r.left, r.right] {
                if used >= r.lhs {
                    return Err(SlpError::ForwardReference { lhs: r.lhs, used });
                }
            }
        }
        if self.start.index() >= self.symbol_count() {
            return Err(SlpError::UndefinedStart(self.start));
        }
        Ok(())
    }
}

/// Appends fresh rules with consecutive left-hand sides.
#[derive(Debug, Clone)]
pub struct RuleBuilder {
    alphabet_size: u32,
    rules: Vec<Rule>,
}

impl RuleBuilder {
    pub fn new(alphabet_size: u32) -> Self {
        RuleBuilder {
            alphabet_size,
            rules: Vec::new(),
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Allocates the next fresh symbol and records `fresh -> left right`.
    pub fn fresh(&mut self, left: Symbol, right: Symbol) -> Result<Symbol> {
        let id = u32::try_from(self.rules.len())
            .ok()
            .and_then(|k| self.alphabet_size.checked_add(k))
            .ok_or(Error::SymbolOverflow)?;
        let lhs = Symbol(id);
        self.rules.push(Rule { lhs, left, right });
        Ok(lhs)
    }

    pub fn finish(self, start: Symbol) -> Slp {
        Slp {
            alphabet_size: self.alphabet_size,
            rules: self.rules,
            start,
        }
    }
}
