//! Bond symbols, cohesive ends, tiles and pots.
//!
//! A pot is a set of tiles, each tile a multiset of cohesive ends. Text form:
//!
//! ```text
//! pot  := tile (";" tile)*
//! tile := end ("," end)*
//! end  := "^"? name
//! ```
//!
//! `^a` is the complement of `a`. Whitespace is ignored. A JSON form
//! `{"tiles": [["a","a","^a"], ["^a","^a","^a"]]}` is accepted as well.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid bond symbol {0:?}: expected a non-empty name of letters, digits and '_'")]
    InvalidSymbol(String),
    #[error("closure violated: {end} occurs but no tile carries its complement {missing}")]
    Closure { end: String, missing: String },
    #[error("a tile must have at least one arm")]
    EmptyTile,
    #[error("a pot must contain at least one tile")]
    EmptyPot,
    #[error("invalid pot json: {0}")]
    Json(String),
}

/// A bond-edge type. Names are case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BondSymbol(String);

impl BondSymbol {
    pub fn new(name: impl Into<String>) -> Result<Self, PotError> {
        let name = name.into();
        if is_valid_name(&name) {
            Ok(BondSymbol(name))
        } else {
            Err(PotError::InvalidSymbol(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BondSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Unhatted sorts before hatted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Unhatted,
    Hatted,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Unhatted => Polarity::Hatted,
            Polarity::Hatted => Polarity::Unhatted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohesiveEnd {
    pub symbol: BondSymbol,
    pub polarity: Polarity,
}

impl CohesiveEnd {
    pub fn unhatted(symbol: BondSymbol) -> Self {
        CohesiveEnd {
            symbol,
            polarity: Polarity::Unhatted,
        }
    }

    pub fn hatted(symbol: BondSymbol) -> Self {
        CohesiveEnd {
            symbol,
            polarity: Polarity::Hatted,
        }
    }

    pub fn complement(&self) -> CohesiveEnd {
        CohesiveEnd {
            symbol: self.symbol.clone(),
            polarity: self.polarity.flip(),
        }
    }

    pub fn is_hatted(&self) -> bool {
        self.polarity == Polarity::Hatted
    }

    /// Parses `a` or `^a`.
    pub fn parse(text: &str) -> Result<Self, PotError> {
        let text = text.trim();
        match text.strip_prefix('^') {
            Some(rest) => Ok(CohesiveEnd::hatted(BondSymbol::new(rest.trim())?)),
            None => Ok(CohesiveEnd::unhatted(BondSymbol::new(text)?)),
        }
    }
}

impl fmt::Display for CohesiveEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_hatted() {
            write!(f, "^{}", self.symbol)
        } else {
            write!(f, "{}", self.symbol)
        }
    }
}

/// A multiset of cohesive ends, kept sorted so equal tiles compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tile {
    ends: Vec<CohesiveEnd>,
}

impl Tile {
    pub fn new(mut ends: Vec<CohesiveEnd>) -> Result<Self, PotError> {
        if ends.is_empty() {
            return Err(PotError::EmptyTile);
        }
        ends.sort();
        Ok(Tile { ends })
    }

    /// Builds a tile from end strings such as `["a", "a", "^a"]`.
    pub fn from_strs<S: AsRef<str>>(ends: &[S]) -> Result<Self, PotError> {
        let ends = ends
            .iter()
            .map(|e| CohesiveEnd::parse(e.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Tile::new(ends)
    }

    pub fn ends(&self) -> &[CohesiveEnd] {
        &self.ends
    }

    /// Number of arms.
    pub fn arity(&self) -> usize {
        self.ends.len()
    }

    /// Unhatted minus hatted occurrences of `symbol`.
    pub fn net_count(&self, symbol: &BondSymbol) -> i64 {
        self.ends
            .iter()
            .filter(|e| &e.symbol == symbol)
            .map(|e| if e.is_hatted() { -1 } else { 1 })
            .sum()
    }

    pub fn count(&self, end: &CohesiveEnd) -> usize {
        self.ends.iter().filter(|e| *e == end).count()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &BondSymbol> {
        self.ends.iter().map(|e| &e.symbol)
    }

    /// Pot-grammar form, e.g. `a,a,^a`.
    pub fn render(&self) -> String {
        self.ends
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.render())
    }
}

impl Ord for Tile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| self.ends.cmp(&other.ends))
    }
}

impl PartialOrd for Tile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Net counts of one tile against the pot's symbol table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TileProfile {
    /// `(symbol index, unhatted count, hatted count)` for each symbol the tile uses.
    pub(crate) ends: Vec<(usize, u32, u32)>,
    pub(crate) arity: usize,
}

impl TileProfile {
    pub(crate) fn unhatted(&self, sym: usize) -> u32 {
        self.ends
            .iter()
            .find(|e| e.0 == sym)
            .map(|e| e.1)
            .unwrap_or(0)
    }

    pub(crate) fn hatted(&self, sym: usize) -> u32 {
        self.ends
            .iter()
            .find(|e| e.0 == sym)
            .map(|e| e.2)
            .unwrap_or(0)
    }

    pub(crate) fn net(&self, sym: usize) -> i64 {
        self.unhatted(sym) as i64 - self.hatted(sym) as i64
    }
}

/// A closed set of distinct tiles.
#[derive(Debug, Clone)]
pub struct Pot {
    tiles: Vec<Tile>,
    symbols: Vec<BondSymbol>,
    profiles: Vec<TileProfile>,
}

impl PartialEq for Pot {
    fn eq(&self, other: &Self) -> bool {
        self.tiles == other.tiles
    }
}

impl Eq for Pot {}

impl Pot {
    /// Builds a pot, merging duplicate tiles (first occurrence keeps its
    /// position) and checking complement closure.
    pub fn new(tiles: Vec<Tile>) -> Result<Self, PotError> {
        if tiles.is_empty() {
            return Err(PotError::EmptyPot);
        }
        let mut distinct: Vec<Tile> = Vec::with_capacity(tiles.len());
        for tile in tiles {
            if !distinct.contains(&tile) {
                distinct.push(tile);
            }
        }
        let ends: BTreeSet<&CohesiveEnd> = distinct.iter().flat_map(|t| t.ends.iter()).collect();
        for end in &ends {
            let comp = end.complement();
            if !ends.contains(&comp) {
                return Err(PotError::Closure {
                    end: end.to_string(),
                    missing: comp.to_string(),
                });
            }
        }
        let symbols: Vec<BondSymbol> = ends
            .iter()
            .map(|e| e.symbol.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let profiles = distinct
            .iter()
            .map(|t| profile_of(t, &symbols))
            .collect();
        Ok(Pot {
            tiles: distinct,
            symbols,
            profiles,
        })
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, index: usize) -> &Tile {
        &self.tiles[index]
    }

    /// Σ(P) in ascending name order.
    pub fn symbols(&self) -> &[BondSymbol] {
        &self.symbols
    }

    /// #P
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// #Σ(P)
    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol_index(&self, symbol: &BondSymbol) -> Option<usize> {
        self.symbols.binary_search(symbol).ok()
    }

    pub fn index_of(&self, tile: &Tile) -> Option<usize> {
        self.tiles.iter().position(|t| t == tile)
    }

    pub fn contains(&self, tile: &Tile) -> bool {
        self.index_of(tile).is_some()
    }

    pub(crate) fn profiles(&self) -> &[TileProfile] {
        &self.profiles
    }

    /// Distinct arities present in the pot, ascending.
    pub fn arities(&self) -> Vec<usize> {
        self.tiles
            .iter()
            .map(Tile::arity)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Canonical text form accepted by [`parse_pot`].
    pub fn render(&self) -> String {
        self.tiles
            .iter()
            .map(Tile::render)
            .collect::<Vec<_>>()
            .join(" ; ")
    }

    pub fn to_json(&self) -> PotJson {
        PotJson {
            tiles: self
                .tiles
                .iter()
                .map(|t| t.ends.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }

    /// The same pot with tiles in ascending canonical order.
    pub fn sorted(&self) -> Pot {
        let mut tiles = self.tiles.clone();
        tiles.sort();
        Pot::new(tiles).expect("reordering keeps a valid pot valid")
    }
}

impl fmt::Display for Pot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tiles: Vec<String> = self.tiles.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", tiles.join(", "))
    }
}

fn profile_of(tile: &Tile, symbols: &[BondSymbol]) -> TileProfile {
    let mut ends: Vec<(usize, u32, u32)> = Vec::new();
    for end in &tile.ends {
        let idx = symbols
            .binary_search(&end.symbol)
            .expect("tile symbol is in the pot table");
        let slot = match ends.iter_mut().find(|e| e.0 == idx) {
            Some(slot) => slot,
            None => {
                ends.push((idx, 0, 0));
                ends.last_mut().unwrap()
            }
        };
        if end.is_hatted() {
            slot.2 += 1;
        } else {
            slot.1 += 1;
        }
    }
    TileProfile {
        ends,
        arity: tile.arity(),
    }
}

/// JSON pot form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotJson {
    pub tiles: Vec<Vec<String>>,
}

impl PotJson {
    pub fn into_pot(self) -> Result<Pot, PotError> {
        let tiles = self
            .tiles
            .iter()
            .map(|t| Tile::from_strs(t))
            .collect::<Result<Vec<_>, _>>()?;
        Pot::new(tiles)
    }
}

/// Parses a pot from the text grammar, or from JSON when the input starts with `{`.
pub fn parse_pot(text: &str) -> Result<Pot, PotError> {
    if text.trim_start().starts_with('{') {
        let json: PotJson =
            serde_json::from_str(text).map_err(|e| PotError::Json(e.to_string()))?;
        return json.into_pot();
    }
    Parser::new(text).pot()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn location(&self) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for c in self.text.chars().take(self.pos) {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, message: impl Into<String>) -> PotError {
        let (line, column) = self.location();
        PotError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn pot(&mut self) -> Result<Pot, PotError> {
        let mut tiles = vec![self.tile()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(';') => {
                    self.pos += 1;
                    tiles.push(self.tile()?);
                }
                Some(c) => return Err(self.error(format!("expected ';' or end of input, found {c:?}"))),
            }
        }
        Pot::new(tiles)
    }

    fn tile(&mut self) -> Result<Tile, PotError> {
        let mut ends = vec![self.end()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(',') {
                self.pos += 1;
                ends.push(self.end()?);
            } else {
                break;
            }
        }
        Tile::new(ends)
    }

    fn end(&mut self) -> Result<CohesiveEnd, PotError> {
        self.skip_ws();
        let hatted = if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a cohesive end, found {c:?}")),
                None => self.error("expected a cohesive end, found end of input"),
            });
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let symbol = BondSymbol(name);
        Ok(if hatted {
            CohesiveEnd::hatted(symbol)
        } else {
            CohesiveEnd::unhatted(symbol)
        })
    }
}

/// Replaces every symbol by the first one in Σ(P), keeping polarities.
pub fn collapse_bonds(pot: &Pot) -> Pot {
    let target = pot.symbols()[0].clone();
    let tiles = pot
        .tiles()
        .iter()
        .map(|t| {
            let ends = t
                .ends()
                .iter()
                .map(|e| CohesiveEnd {
                    symbol: target.clone(),
                    polarity: e.polarity,
                })
                .collect();
            Tile::new(ends).expect("arity is unchanged")
        })
        .collect();
    Pot::new(tiles).expect("single-symbol pot with both polarities present is closed")
}

/// Net count of `symbol` on `tile`.
pub fn net_count(tile: &Tile, symbol: &BondSymbol) -> i64 {
    tile.net_count(symbol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> BondSymbol {
        BondSymbol::new(s).unwrap()
    }

    #[test]
    fn parses_two_tile_pot() {
        let pot = parse_pot("a,a,^a ; ^a,^a,^a").unwrap();
        assert_eq!(pot.len(), 2);
        assert_eq!(pot.tile(0), &Tile::from_strs(&["a", "a", "^a"]).unwrap());
        assert_eq!(pot.tile(1), &Tile::from_strs(&["^a", "^a", "^a"]).unwrap());
        assert_eq!(pot.symbols(), &[sym("a")]);
    }

    #[test]
    fn self_complementary_tile_is_closed() {
        let pot = parse_pot("a,^a").unwrap();
        assert_eq!(pot.len(), 1);
        assert_eq!(pot.tile(0).arity(), 2);
    }

    #[test]
    fn closure_violation_names_symbol() {
        let err = parse_pot("a,b ; a,^b").unwrap_err();
        assert_eq!(
            err,
            PotError::Closure {
                end: "a".into(),
                missing: "^a".into()
            }
        );
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_pot("a,a\n; ,^a") {
            Err(PotError::Syntax { line, column, .. }) => {
                assert_eq!((line, column), (2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_pot("a;;^a"), Err(PotError::Syntax { .. })));
        assert!(matches!(parse_pot(""), Err(PotError::Syntax { .. })));
        assert!(matches!(parse_pot("a-b"), Err(PotError::Syntax { .. })));
    }

    #[test]
    fn duplicate_tiles_merge_in_first_position() {
        let pot = parse_pot("^a,a ; a,a,^a ; a,^a").unwrap();
        assert_eq!(pot.len(), 2);
        assert_eq!(pot.tile(0), &Tile::from_strs(&["a", "^a"]).unwrap());
    }

    #[test]
    fn tiles_are_canonically_ordered() {
        let t = Tile::from_strs(&["^b", "a", "^a", "b", "a"]).unwrap();
        assert_eq!(t.render(), "a,a,^a,b,^b");
    }

    #[test]
    fn json_input() {
        let pot = parse_pot(r#"{"tiles": [["a","a","^a"], ["^a","^a","^a"]]}"#).unwrap();
        assert_eq!(pot, parse_pot("a,a,^a;^a,^a,^a").unwrap());
        assert_eq!(pot.to_json().into_pot().unwrap(), pot);
    }

    #[test]
    fn net_counts() {
        let a = sym("a");
        assert_eq!(net_count(&Tile::from_strs(&["a", "a", "^a"]).unwrap(), &a), 1);
        assert_eq!(net_count(&Tile::from_strs(&["a", "^a"]).unwrap(), &a), 0);
        assert_eq!(net_count(&Tile::from_strs(&["^a", "^a", "^a"]).unwrap(), &a), -3);
        assert_eq!(net_count(&Tile::from_strs(&["b"]).unwrap(), &a), 0);
    }

    #[test]
    fn collapse_examples() {
        let p = parse_pot("a,b,b ; a,a,^b ; a,^a,^a").unwrap();
        assert_eq!(collapse_bonds(&p), parse_pot("a,a,a ; a,a,^a ; a,^a,^a").unwrap());
        let p = parse_pot("a,^a").unwrap();
        assert_eq!(collapse_bonds(&p), p);
        let p = parse_pot("a,b ; ^a,^b").unwrap();
        assert_eq!(collapse_bonds(&p), parse_pot("a,a ; ^a,^a").unwrap());
    }

    #[test]
    fn complement_is_involution() {
        let e = CohesiveEnd::parse("^x_1").unwrap();
        assert_eq!(e.complement().complement(), e);
        assert_ne!(e.complement(), e);
    }

    #[test]
    fn invalid_symbol_names() {
        assert!(BondSymbol::new("").is_err());
        assert!(BondSymbol::new("a b").is_err());
        assert!(BondSymbol::new("A_1").is_ok());
    }
}
