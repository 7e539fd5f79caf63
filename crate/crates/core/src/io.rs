//! Text formats: the word grammar, the presentation file format, and
//! the matrix file format.
//!
//! Word grammar: `word := atom ('*' atom)*`,
//! `atom := name ('^' int)? | '(' word ')' ('^' int)?`,
//! `name` matches `[A-Za-z][A-Za-z0-9]*`.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::presentation::PresentationFile;
use crate::words::{Alphabet, Letter, LetterOrder, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: {0}", line = .1)]
    Word(WordError, usize),
    #[error("missing `generators` line")]
    MissingGenerators,
    #[error("line {line}: duplicate `{directive}` directive")]
    DuplicateDirective { line: usize, directive: String },
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text: text.as_bytes(), pos: 0, line, line_start: 0 }
    }

    fn col(&self) -> usize {
        self.pos - self.line_start + 1
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

/// Parses a word over `alphabet`; `line` is used in error positions.
pub fn parse_word_at(alphabet: &Arc<Alphabet>, text: &str, line: usize) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(text, line);
    let letters = parse_word_letters(alphabet, &mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input after word"));
    }
    Word::from_letters(alphabet, letters).map_err(|e| ParseError::Word(e, line))
}

pub fn parse_word(alphabet: &Arc<Alphabet>, text: &str) -> Result<Word, ParseError> {
    parse_word_at(alphabet, text, 1)
}

fn parse_word_letters(
    alphabet: &Arc<Alphabet>,
    cur: &mut Cursor<'_>,
) -> Result<Vec<Letter>, ParseError> {
    let mut letters = parse_atom(alphabet, cur)?;
    loop {
        cur.skip_ws();
        if cur.eat(b'*') {
            cur.skip_ws();
            letters.extend(parse_atom(alphabet, cur)?);
        } else {
            return Ok(letters);
        }
    }
}

fn parse_atom(alphabet: &Arc<Alphabet>, cur: &mut Cursor<'_>) -> Result<Vec<Letter>, ParseError> {
    cur.skip_ws();
    let base: Vec<Letter> = if cur.eat(b'(') {
        let inner = parse_word_letters(alphabet, cur)?;
        cur.skip_ws();
        if !cur.eat(b')') {
            return Err(cur.err("expected `)`"));
        }
        inner
    } else {
        let name = parse_name(cur)?;
        match alphabet.index_of(&name) {
            Some(g) => vec![Letter::new(g, false)],
            None => return Err(ParseError::UnknownGenerator { line: cur.line, name }),
        }
    };
    let exp = if cur.eat(b'^') { parse_int(cur)? } else { 1 };
    Ok(repeat_letters(&base, exp))
}

fn repeat_letters(base: &[Letter], exp: i64) -> Vec<Letter> {
    if exp >= 0 {
        let mut out = Vec::with_capacity(base.len() * exp as usize);
        for _ in 0..exp {
            out.extend_from_slice(base);
        }
        out
    } else {
        let inv: Vec<Letter> = base.iter().rev().map(|l| l.inverted()).collect();
        repeat_letters(&inv, -exp)
    }
}

fn parse_name(cur: &mut Cursor<'_>) -> Result<String, ParseError> {
    let start = cur.pos;
    match cur.peek() {
        Some(c) if c.is_ascii_alphabetic() => cur.pos += 1,
        _ => return Err(cur.err("expected generator name")),
    }
    while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric()) {
        cur.pos += 1;
    }
    Ok(String::from_utf8_lossy(&cur.text[start..cur.pos]).into_owned())
}

fn parse_int(cur: &mut Cursor<'_>) -> Result<i64, ParseError> {
    let start = cur.pos;
    cur.eat(b'-');
    let digits_start = cur.pos;
    while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        cur.pos += 1;
    }
    if cur.pos == digits_start {
        return Err(cur.err("malformed exponent"));
    }
    std::str::from_utf8(&cur.text[start..cur.pos])
        .unwrap()
        .parse()
        .map_err(|_| cur.err("exponent out of range"))
}

/// Parses the presentation file format: `#` comments, one
/// `generators <name>+` line, `relator <word>` lines, and an optional
/// `order <name>+` line overriding the letter ranking.
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile, ParseError> {
    let mut alphabet: Option<Arc<Alphabet>> = None;
    let mut relator_lines: Vec<(usize, String)> = Vec::new();
    let mut order_line: Option<(usize, Vec<String>)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (directive, rest) = match line.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (line, ""),
        };
        match directive {
            "generators" => {
                if alphabet.is_some() {
                    return Err(ParseError::DuplicateDirective {
                        line: line_no,
                        directive: "generators".into(),
                    });
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                alphabet = Some(
                    Alphabet::new(names).map_err(|e| ParseError::Word(e, line_no))?,
                );
            }
            "relator" => relator_lines.push((line_no, rest.to_string())),
            "order" => {
                if order_line.is_some() {
                    return Err(ParseError::DuplicateDirective {
                        line: line_no,
                        directive: "order".into(),
                    });
                }
                order_line =
                    Some((line_no, rest.split_whitespace().map(String::from).collect()));
            }
            other => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    col: 1,
                    msg: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    let alphabet = alphabet.ok_or(ParseError::MissingGenerators)?;
    let mut relators = Vec::with_capacity(relator_lines.len());
    for (line_no, text) in relator_lines {
        relators.push(parse_word_at(&alphabet, &text, line_no)?);
    }
    let order = match order_line {
        None => None,
        Some((line_no, names)) => {
            let mut perm = Vec::with_capacity(names.len());
            for n in &names {
                perm.push(alphabet.index_of(n).ok_or_else(|| ParseError::UnknownGenerator {
                    line: line_no,
                    name: n.clone(),
                })?);
            }
            Some(
                LetterOrder::from_generator_order(&alphabet, &perm)
                    .map_err(|e| ParseError::Word(e, line_no))?,
            )
        }
    };
    Ok(PresentationFile { alphabet, relators, order })
}

/// Serializes alphabet and relator words in the presentation file format.
pub fn serialize_presentation_file(
    alphabet: &Alphabet,
    relators: impl IntoIterator<Item = String>,
) -> String {
    let mut out = String::new();
    out.push_str("generators ");
    out.push_str(&alphabet.names().join(" "));
    out.push('\n');
    for r in relators {
        out.push_str("relator ");
        out.push_str(&r);
        out.push('\n');
    }
    out
}

/// Matrix text format: first line `rows cols`, then row-major integers
/// whitespace-separated.
pub fn parse_matrix(text: &str) -> Result<crate::abelian::IntMatrix, ParseError> {
    let mut tokens = text.split_whitespace();
    let syntax = |msg: &str| ParseError::Syntax { line: 1, col: 1, msg: msg.into() };
    let rows: usize = tokens
        .next()
        .ok_or_else(|| syntax("missing row count"))?
        .parse()
        .map_err(|_| syntax("malformed row count"))?;
    let cols: usize = tokens
        .next()
        .ok_or_else(|| syntax("missing column count"))?
        .parse()
        .map_err(|_| syntax("malformed column count"))?;
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let t = tokens.next().ok_or_else(|| syntax("too few matrix entries"))?;
        entries.push(t.parse::<BigInt>().map_err(|_| syntax("malformed matrix entry"))?);
    }
    if tokens.next().is_some() {
        return Err(syntax("too many matrix entries"));
    }
    Ok(crate::abelian::IntMatrix::new(rows, cols, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_script_words_verbatim() {
        let alpha = Alphabet::new(["a", "b", "b0"]).unwrap();
        let w = parse_word(&alpha, "b0^-1*b*a").unwrap();
        assert_eq!(w.render(), "b0^-1*b*a");
    }

    #[test]
    fn parenthesized_powers_expand() {
        let alpha = Alphabet::new(["a", "b"]).unwrap();
        let w = parse_word(&alpha, "(a*b^-1)^3").unwrap();
        assert_eq!(w.render(), "a*b^-1*a*b^-1*a*b^-1");
        let inv = parse_word(&alpha, "(a*b)^-2").unwrap();
        assert_eq!(inv.render(), "b^-1*a^-1*b^-1*a^-1");
    }

    #[test]
    fn unknown_generator_named_in_error() {
        let alpha = Alphabet::new(["g"]).unwrap();
        match parse_word(&alpha, "q") {
            Err(ParseError::UnknownGenerator { name, .. }) => assert_eq!(name, "q"),
            other => panic!("expected unknown generator, got {other:?}"),
        }
    }

    #[test]
    fn malformed_exponent_reports_position() {
        let alpha = Alphabet::new(["g"]).unwrap();
        match parse_word(&alpha, "g^x") {
            Err(ParseError::Syntax { line: 1, col, .. }) => assert_eq!(col, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn presentation_file_roundtrip() {
        let text = "# cyclic group\ngenerators g\nrelator g^2\n";
        let pf = parse_presentation_file(text).unwrap();
        assert_eq!(pf.alphabet.names(), ["g".to_string()]);
        assert_eq!(pf.relators.len(), 1);
        assert_eq!(pf.relators[0].render(), "g^2");
        let out = serialize_presentation_file(
            &pf.alphabet,
            pf.relators.iter().map(|w| w.render()),
        );
        let back = parse_presentation_file(&out).unwrap();
        assert_eq!(back.relators, pf.relators);
    }

    #[test]
    fn undeclared_relator_generator_is_an_error() {
        let text = "generators g\nrelator q\n";
        match parse_presentation_file(text) {
            Err(ParseError::UnknownGenerator { name, line }) => {
                assert_eq!(name, "q");
                assert_eq!(line, 2);
            }
            other => panic!("expected unknown generator, got {other:?}"),
        }
    }

    #[test]
    fn matrix_format_parses() {
        let m = parse_matrix("2 3\n1 2 3\n4 5 -6\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.get(1, 2), &BigInt::from(-6));
    }
}
