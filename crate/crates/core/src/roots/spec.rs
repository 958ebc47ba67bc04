//! Group spec strings: `SC(A2)*GL(3)`.
//!
//! ```text
//! spec   := factor ("*" factor)*
//! factor := "SC(" type rank ")" | "GL(" n ")"
//! ```
//!
//! Whitespace around tokens is tolerated; everything else is strict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank or GL size accepted by the parser. Anything past this is
/// far outside what the audits can enumerate.
pub const MAX_RANK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, CartanType::E | CartanType::F | CartanType::G)
    }

    /// Whether `rank` gives an irreducible root system of this type in the
    /// standard (non-overlapping where it matters) range.
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

/// One factor of a group spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorSpec {
    /// Split simply connected quasi-simple group of the given Cartan type.
    SimplyConnected { cartan: CartanType, rank: usize },
    /// `GL(n)`.
    GeneralLinear { n: usize },
}

impl FactorSpec {
    /// Rank of the maximal torus.
    pub fn torus_rank(&self) -> usize {
        match *self {
            FactorSpec::SimplyConnected { rank, .. } => rank,
            FactorSpec::GeneralLinear { n } => n,
        }
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        match *self {
            FactorSpec::SimplyConnected { rank, .. } => rank,
            FactorSpec::GeneralLinear { n } => n - 1,
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::SimplyConnected { cartan, rank } => write!(f, "SC({}{rank})", cartan.letter()),
            FactorSpec::GeneralLinear { n } => write!(f, "GL({n})"),
        }
    }
}

/// A parsed group spec: a nonempty product of factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<FactorSpec>,
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<Self> {
        Parser { input, pos: 0 }.spec()
    }

    pub fn is_single_simply_connected(&self) -> bool {
        matches!(self.factors.as_slice(), [FactorSpec::SimplyConnected { .. }])
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::SpecParse {
            input: self.input.to_string(),
            position: self.pos,
            reason: reason.into(),
        })
    }

    fn rest(&self) -> &str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.fail(format!("expected {token:?}"))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail("expected a decimal number");
        }
        let text = &self.rest()[..digits];
        let value = match text.parse::<usize>() {
            Ok(v) if v <= MAX_RANK => v,
            _ => return self.fail(format!("number {text} exceeds the supported maximum {MAX_RANK}")),
        };
        self.pos += digits;
        Ok(value)
    }

    fn spec(mut self) -> Result<GroupSpec> {
        let mut factors = vec![self.factor()?];
        while self.eat("*") {
            factors.push(self.factor()?);
        }
        self.skip_ws();
        if !self.rest().is_empty() {
            return self.fail("unexpected trailing input");
        }
        Ok(GroupSpec { factors })
    }

    fn factor(&mut self) -> Result<FactorSpec> {
        if self.eat("SC(") {
            self.skip_ws();
            let Some(c) = self.rest().chars().next() else {
                return self.fail("expected a Cartan type letter");
            };
            let Some(cartan) = CartanType::from_char(c) else {
                if c.is_ascii_alphabetic() {
                    return Err(Error::UnsupportedType(format!("Cartan type {c:?}")));
                }
                return self.fail("expected a Cartan type letter");
            };
            self.pos += c.len_utf8();
            let rank = self.number()?;
            self.expect(")")?;
            if !cartan.admits_rank(rank) {
                return Err(Error::UnsupportedType(format!("{}{rank}", cartan.letter())));
            }
            Ok(FactorSpec::SimplyConnected { cartan, rank })
        } else if self.eat("GL(") {
            let n = self.number()?;
            self.expect(")")?;
            if n == 0 {
                return Err(Error::UnsupportedType("GL(0)".into()));
            }
            Ok(FactorSpec::GeneralLinear { n })
        } else {
            self.skip_ws();
            let word: String = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
            if !word.is_empty() && word.chars().all(|c| c.is_ascii_uppercase()) && self.rest()[word.len()..].starts_with('(') {
                return Err(Error::UnsupportedType(format!("group family {word:?}")));
            }
            self.fail("expected \"SC(\" or \"GL(\"")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        let g = GroupSpec::parse("SC(A2)*GL(3)").unwrap();
        assert_eq!(
            g.factors,
            vec![
                FactorSpec::SimplyConnected { cartan: CartanType::A, rank: 2 },
                FactorSpec::GeneralLinear { n: 3 },
            ]
        );
        assert_eq!(g.to_string(), "SC(A2)*GL(3)");
        assert_eq!(GroupSpec::parse(" SC( G2 ) * GL(1) ").unwrap().to_string(), "SC(G2)*GL(1)");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "SC(A)", "SC(A2", "GL()", "SC(A2)*", "SC(A2)GL(2)", "sc(A2)", "SC(A2)x"] {
            assert!(matches!(GroupSpec::parse(bad), Err(Error::SpecParse { .. })), "{bad}");
        }
    }

    #[test]
    fn rejects_unsupported_types() {
        for bad in ["SC(H3)", "SC(E9)", "SC(F3)", "SC(B1)", "SC(A0)", "GL(0)", "PGL(2)", "SO(5)"] {
            assert!(matches!(GroupSpec::parse(bad), Err(Error::UnsupportedType(_))), "{bad}");
        }
    }

    #[test]
    fn huge_numbers_are_parse_errors() {
        assert!(matches!(
            GroupSpec::parse("GL(99999999999999999999999)"),
            Err(Error::SpecParse { .. })
        ));
    }
}
