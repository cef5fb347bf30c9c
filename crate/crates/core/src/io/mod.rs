//! Text formats for diagrams and compositions.
//!
//! Three diagram formats are understood:
//!
//! * grid: one line per row, top row first, `X` for a cell and `.` for an
//!   empty position; the last line is row 1 and trailing dots are optional;
//! * pairs: comma-separated `(r,c)` tokens, optionally wrapped in braces;
//! * json: an array of `[r, c]` pairs.

mod dot;

use std::fmt;
use std::str::FromStr;

pub use dot::to_dot;

use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::families::key::Composition;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Auto,
    Grid,
    Pairs,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Format::Auto),
            "grid" => Ok(Format::Grid),
            "pairs" => Ok(Format::Pairs),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected auto, grid, pairs or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Auto => "auto",
            Format::Grid => "grid",
            Format::Pairs => "pairs",
            Format::Json => "json",
        })
    }
}

/// Guesses the format from the first non-blank character.
pub fn detect_format(text: &str) -> Format {
    match text.trim_start().chars().next() {
        Some('[') => Format::Json,
        Some('(') | Some('{') => Format::Pairs,
        _ => Format::Grid,
    }
}

pub fn parse_diagram(text: &str, format: Format) -> Result<Diagram> {
    if text.trim().is_empty() {
        return Err(Error::parse(1, 1, "empty input"));
    }
    match format {
        Format::Auto => parse_diagram(text, detect_format(text)),
        Format::Grid => parse_grid(text),
        Format::Pairs => parse_pairs(text),
        Format::Json => parse_json(text),
    }
}

fn cell_at(row: u64, col: u64, line: usize, column: usize) -> Result<Cell> {
    let narrow = |v: u64| u32::try_from(v).unwrap_or(u32::MAX);
    Cell::new(narrow(row), narrow(col))
        .map_err(|e| Error::parse(line, column, e.to_string()))
}

pub fn parse_grid(text: &str) -> Result<Diagram> {
    let mut lines: Vec<&str> = text.lines().collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(Error::parse(1, 1, "empty input"));
    }
    let height = lines.len();
    let mut cells = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        let row = (height - i) as u64;
        for (j, ch) in line.trim_end().chars().enumerate() {
            match ch {
                'X' | 'x' => cells.push(cell_at(row, j as u64 + 1, i + 1, j + 1)?),
                '.' => {}
                _ => {
                    return Err(Error::parse(
                        i + 1,
                        j + 1,
                        format!("unexpected character `{ch}` in grid (expected `X` or `.`)"),
                    ))
                }
            }
        }
    }
    Ok(Diagram::from_cells(cells))
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.char_indices().peekable(),
            text,
        }
    }

    fn position(&mut self) -> (usize, usize) {
        let offset = self.chars.peek().map_or(self.text.len(), |&(i, _)| i);
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, column)
    }

    fn error(&mut self, message: impl Into<String>) -> Error {
        let (line, column) = self.position();
        Error::parse(line, column, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|&(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.chars.next();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.chars.next();
        }
        if digits.is_empty() {
            return Err(self.error("expected a non-negative integer"));
        }
        digits
            .parse()
            .map_err(|_| self.error(format!("integer `{digits}` is too large")))
    }
}

/// Parses the pair-list format, e.g. `(1,3),(2,1)` or `{(1,1)}` or `{}`.
pub fn parse_pairs(text: &str) -> Result<Diagram> {
    let mut s = Scanner::new(text);
    if s.peek().is_none() {
        return Err(s.error("empty input"));
    }
    let braced = s.peek() == Some('{');
    if braced {
        s.expect('{')?;
    }
    let mut cells = Vec::new();
    loop {
        match s.peek() {
            Some('(') => {
                let (line, column) = s.position();
                s.expect('(')?;
                let row = s.number()?;
                s.expect(',')?;
                let col = s.number()?;
                s.expect(')')?;
                cells.push(cell_at(row, col, line, column)?);
                if s.peek() == Some(',') {
                    s.chars.next();
                    if s.peek() != Some('(') {
                        return Err(s.error("expected `(` after `,`"));
                    }
                }
            }
            Some('}') if braced => {
                s.chars.next();
                break;
            }
            None if !braced => break,
            None => return Err(s.error("expected `}`, found end of input")),
            Some(c) => return Err(s.error(format!("unexpected character `{c}`"))),
        }
    }
    if let Some(c) = s.peek() {
        return Err(s.error(format!("unexpected trailing character `{c}`")));
    }
    Ok(Diagram::from_cells(cells))
}

/// Parses a JSON array of `[row, col]` pairs.
pub fn parse_json(text: &str) -> Result<Diagram> {
    let pairs: Vec<(u64, u64)> = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line().max(1), e.column().max(1), e.to_string()))?;
    let cells = pairs
        .into_iter()
        .map(|(r, c)| cell_at(r, c, 1, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(Diagram::from_cells(cells))
}

/// Grid rendering with every line padded to the full width. The empty diagram
/// renders as a single `.`.
pub fn render_grid(d: &Diagram) -> String {
    if d.is_empty() {
        return ".\n".to_string();
    }
    let mut out = String::new();
    for row in (1..=d.max_row()).rev() {
        for col in 1..=d.max_col() {
            out.push(if d.contains(row, col) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

pub fn render_pairs(d: &Diagram) -> String {
    d.to_pairs_string()
}

pub fn render_json(d: &Diagram) -> String {
    let pairs: Vec<[u32; 2]> = d.cells_row_major().iter().map(|c| [c.row, c.col]).collect();
    serde_json::to_string(&pairs).expect("pairs serialize")
}

pub fn render_diagram(d: &Diagram, format: Format) -> String {
    match format {
        Format::Grid => render_grid(d),
        Format::Json => render_json(d),
        Format::Pairs | Format::Auto => render_pairs(d),
    }
}

/// Parses a comma- or whitespace-separated list of non-negative integers,
/// optionally wrapped in parentheses.
pub fn parse_composition(text: &str) -> Result<Composition> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(trimmed);
    if inner.trim().is_empty() {
        return Err(Error::parse(1, 1, "empty composition"));
    }
    let mut entries = Vec::new();
    let mut column = 1 + (trimmed.len() - trimmed.trim_start_matches('(').len());
    for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            column += 1;
            continue;
        }
        let value: u32 = token.parse().map_err(|_| {
            Error::parse(1, column, format!("`{token}` is not a non-negative integer"))
        })?;
        entries.push(value);
        column += token.len() + 1;
    }
    Ok(Composition::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(u32, u32)]) -> Diagram {
        Diagram::from_pairs(pairs).unwrap()
    }

    const FIG1: &[(u32, u32)] = &[(1, 3), (2, 1), (2, 2), (3, 2)];

    #[test]
    fn grid_figure_one() {
        let g = ".X\nXX\n..X\n";
        assert_eq!(parse_grid(g).unwrap(), d(FIG1));
        assert_eq!(render_grid(&d(FIG1)), ".X.\nXX.\n..X\n");
    }

    #[test]
    fn pairs_variants() {
        assert_eq!(parse_pairs("(1,3),(2,1),(2,2),(3,2)").unwrap(), d(FIG1));
        assert_eq!(parse_pairs("{ (1,3), (2,1),\n(2,2) (3,2) }").unwrap(), d(FIG1));
        assert_eq!(parse_pairs("{}").unwrap(), Diagram::new());
        assert_eq!(parse_pairs("(1,1),(1,1)").unwrap(), d(&[(1, 1)]));
    }

    #[test]
    fn json_pairs() {
        assert_eq!(parse_json("[[1,3],[2,1],[2,2],[3,2]]").unwrap(), d(FIG1));
        assert_eq!(render_json(&d(&[(2, 1), (1, 2)])), "[[1,2],[2,1]]");
    }

    #[test]
    fn auto_detection() {
        assert_eq!(detect_format("  [[1,1]]"), Format::Json);
        assert_eq!(detect_format("(1,1)"), Format::Pairs);
        assert_eq!(detect_format("{}"), Format::Pairs);
        assert_eq!(detect_format("X.\n"), Format::Grid);
        assert_eq!(parse_diagram("X", Format::Auto).unwrap(), d(&[(1, 1)]));
    }

    #[test]
    fn empty_input_is_an_error() {
        for format in [Format::Auto, Format::Grid, Format::Pairs, Format::Json] {
            assert!(matches!(
                parse_diagram("  \n", format),
                Err(Error::Parse { line: 1, column: 1, .. })
            ));
        }
    }

    #[test]
    fn error_positions() {
        match parse_grid("X.\nXq\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 2)),
            e => panic!("{e}"),
        }
        match parse_pairs("(1,1),\n(2,x)").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 4)),
            e => panic!("{e}"),
        }
        match parse_pairs("(0,1)").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 1)),
            e => panic!("{e}"),
        }
        assert!(parse_pairs("(1,1) junk").is_err());
        assert!(parse_pairs("{(1,1)").is_err());
        assert!(parse_json("[[1,1],").is_err());
        assert!(parse_grid("X\n(65 rows)").is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(parse_composition("0,3,4,2,3").unwrap().entries(), &[0, 3, 4, 2, 3]);
        assert_eq!(parse_composition("(1 2 3)").unwrap().entries(), &[1, 2, 3]);
        assert!(parse_composition("").is_err());
        assert!(matches!(
            parse_composition("1,-2"),
            Err(Error::Parse { column: 3, .. })
        ));
    }

    #[test]
    fn empty_diagram_round_trips() {
        let e = Diagram::new();
        for format in [Format::Grid, Format::Pairs, Format::Json] {
            assert_eq!(parse_diagram(&render_diagram(&e, format), format).unwrap(), e);
        }
    }
}
