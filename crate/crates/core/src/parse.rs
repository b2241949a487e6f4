//! Text grammar for presentations and words.
//!
//! ```text
//! Presentation := "<" GenList "|" RelList ">"
//! GenList      := name ("," name)* | ε
//! RelList      := Rel ("," Rel)* | ε
//! Rel          := Word | Word "=" Word
//! Word         := Factor+
//! Factor       := (name | "1" | "(" Word ")") ("^" integer | "'")*
//! ```
//!
//! Juxtaposition is multiplication. A name token that is not a declared
//! generator is split into declared generator names when possible, so
//! `aba` reads as `a b a` over generators `a, b`; an exponent then binds to
//! the last piece. Equations `L = R` become the relator `L R^-1`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::PresentationError;
use crate::presentation::Presentation;
use crate::word::{is_valid_name, Generator, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LAngle,
    RAngle,
    Bar,
    Comma,
    Equals,
    Caret,
    Prime,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Minus,
    Plus,
    Name(String),
    Int(u64),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LAngle => f.write_str("'<'"),
            Tok::RAngle => f.write_str("'>'"),
            Tok::Bar => f.write_str("'|'"),
            Tok::Comma => f.write_str("','"),
            Tok::Equals => f.write_str("'='"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Prime => f.write_str("'''"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Name(n) => write!(f, "name {n:?}"),
            Tok::Int(i) => write!(f, "integer {i}"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, PresentationError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let single = match c {
            '<' | '⟨' => Some(Tok::LAngle),
            '>' | '⟩' => Some(Tok::RAngle),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            '^' => Some(Tok::Caret),
            '\'' => Some(Tok::Prime),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '-' | '−' => Some(Tok::Minus),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            column += 1;
            out.push((tok, pos));
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            let value = digits.parse::<u64>().map_err(|_| PresentationError::Syntax {
                line: pos.line,
                column: pos.column,
                message: format!("integer {digits} is too large"),
            })?;
            out.push((Tok::Int(value), pos));
            continue;
        }
        if c.is_alphabetic() {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Name(name), pos));
            continue;
        }
        return Err(PresentationError::Syntax {
            line,
            column,
            message: format!("unexpected character {c:?}"),
        });
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    by_name: HashMap<&'a str, &'a Generator>,
}

impl<'a> Parser<'a> {
    fn new(toks: Vec<(Tok, Pos)>, generators: &'a [Generator]) -> Self {
        let by_name = generators.iter().map(|g| (g.name(), g)).collect();
        Parser {
            toks,
            at: 0,
            by_name,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        tok
    }

    fn error(&self, message: String) -> PresentationError {
        let pos = self.pos();
        PresentationError::Syntax {
            line: pos.line,
            column: pos.column,
            message,
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), PresentationError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Name(_) | Tok::LParen | Tok::LBracket | Tok::Int(1))
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        if !self.starts_factor() {
            return Err(self.error(format!("expected a word, found {}", self.peek())));
        }
        let mut letters = Vec::new();
        while self.starts_factor() {
            letters.extend(self.factor()?.into_letters());
        }
        Ok(Word::new(letters).free_reduce())
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        // prefix keeps the leading pieces of a split name; exponents bind to `base`
        let (prefix, mut base) = match self.bump() {
            Tok::Name(name) => {
                let mut pieces = self.split_name(&name)?;
                let last = pieces.pop().expect("split yields at least one piece");
                let prefix: Vec<_> = pieces.iter().map(|g| g.letter()).collect();
                (Word::new(prefix), Word::generator(&last))
            }
            Tok::Int(1) => (Word::identity(), Word::identity()),
            Tok::LParen => {
                let inner = self.word()?;
                self.expect(Tok::RParen)?;
                (Word::identity(), inner)
            }
            Tok::LBracket => {
                let x = self.word()?;
                self.expect(Tok::Comma)?;
                let y = self.word()?;
                self.expect(Tok::RBracket)?;
                (Word::identity(), Word::commutator(&x, &y).free_reduce())
            }
            _ => unreachable!("starts_factor checked the token"),
        };
        loop {
            match self.peek() {
                Tok::Prime => {
                    self.bump();
                    base = base.inverse();
                }
                Tok::Caret => {
                    self.bump();
                    let k = self.exponent()?;
                    base = base.pow(k);
                }
                _ => break,
            }
        }
        Ok(prefix.mul(&base))
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        let parenthesized = *self.peek() == Tok::LParen;
        if parenthesized {
            self.bump();
        }
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let value = match self.bump() {
            Tok::Int(v) if v <= i64::MAX as u64 => v as i64,
            tok => return Err(self.error(format!("expected an integer exponent, found {tok}"))),
        };
        if parenthesized {
            self.expect(Tok::RParen)?;
        }
        Ok(if negative { -value } else { value })
    }

    /// Resolves a name token into declared generators, preferring the whole
    /// token and otherwise the split with the longest leading pieces.
    fn split_name(&self, name: &str) -> Result<Vec<Generator>, PresentationError> {
        if let Some(g) = self.by_name.get(name) {
            return Ok(vec![(*g).clone()]);
        }
        let chars: Vec<(usize, char)> = name.char_indices().collect();
        let boundaries: Vec<usize> = chars
            .iter()
            .map(|(i, _)| *i)
            .chain(std::iter::once(name.len()))
            .collect();
        let mut dead = HashSet::new();
        let mut pieces = Vec::new();
        if self.split_from(name, &boundaries, 0, &mut dead, &mut pieces) {
            Ok(pieces)
        } else {
            Err(PresentationError::UndeclaredSymbol(name.to_string()))
        }
    }

    fn split_from(
        &self,
        name: &str,
        boundaries: &[usize],
        start: usize,
        dead: &mut HashSet<usize>,
        pieces: &mut Vec<Generator>,
    ) -> bool {
        if start == boundaries.len() - 1 {
            return true;
        }
        if dead.contains(&start) {
            return false;
        }
        for end in (start + 1..boundaries.len()).rev() {
            let piece = &name[boundaries[start]..boundaries[end]];
            if let Some(g) = self.by_name.get(piece) {
                pieces.push((*g).clone());
                if self.split_from(name, boundaries, end, dead, pieces) {
                    return true;
                }
                pieces.pop();
            }
        }
        dead.insert(start);
        false
    }

    fn relation(&mut self) -> Result<Word, PresentationError> {
        let lhs = self.word()?;
        if *self.peek() == Tok::Equals {
            self.bump();
            let rhs = self.word()?;
            Ok(lhs.mul(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }
}

/// Parses the `< gens | rels >` grammar. Relators come back cyclically reduced.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let toks = tokenize(text)?;

    // generator list first, so relator names can be resolved against it
    let mut generators: Vec<Generator> = Vec::new();
    let mut at = 0;
    let syntax = |pos: Pos, message: String| PresentationError::Syntax {
        line: pos.line,
        column: pos.column,
        message,
    };
    match &toks[at].0 {
        Tok::LAngle => at += 1,
        tok => return Err(syntax(toks[at].1, format!("expected '<', found {tok}"))),
    }
    if let Tok::Name(_) = toks[at].0 {
        loop {
            match &toks[at].0 {
                Tok::Name(n) => {
                    if !is_valid_name(n) {
                        return Err(PresentationError::InvalidName(n.clone()));
                    }
                    let g = Generator::new(n)?;
                    if generators.contains(&g) {
                        return Err(PresentationError::DuplicateGenerator(n.clone()));
                    }
                    generators.push(g);
                    at += 1;
                }
                tok => return Err(syntax(toks[at].1, format!("expected a generator name, found {tok}"))),
            }
            match &toks[at].0 {
                Tok::Comma => at += 1,
                _ => break,
            }
        }
    }
    match &toks[at].0 {
        Tok::Bar => at += 1,
        tok => return Err(syntax(toks[at].1, format!("expected ',' or '|', found {tok}"))),
    }

    let mut parser = Parser::new(toks, &generators);
    parser.at = at;
    let mut relators = Vec::new();
    if *parser.peek() != Tok::RAngle {
        loop {
            relators.push(parser.relation()?);
            if *parser.peek() == Tok::Comma {
                parser.bump();
            } else {
                break;
            }
        }
    }
    parser.expect(Tok::RAngle)?;
    parser.expect(Tok::Eof)?;
    Presentation::new(generators, relators)
}

/// Parses either the text grammar or the JSON object form.
pub fn parse_presentation_any(text: &str) -> Result<Presentation, PresentationError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))
    } else {
        parse_presentation(text)
    }
}

/// Parses a word over the generators of `p`. The result is freely reduced.
pub fn parse_word(text: &str, p: &Presentation) -> Result<Word, PresentationError> {
    let toks = tokenize(text)?;
    let mut parser = Parser::new(toks, p.generators());
    let w = parser.word()?;
    parser.expect(Tok::Eof)?;
    Ok(w)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(" |")?;
        for (i, r) in self.relators().iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{r}")?;
        }
        if self.relators().is_empty() {
            f.write_str(" ")?;
        }
        f.write_str(">")
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation_any(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;
    use proptest::prelude::*;

    fn letters(p: &Presentation, spelling: &[(&str, bool)]) -> Word {
        spelling
            .iter()
            .map(|(n, inv)| Letter::new(p.generator(n).unwrap().clone(), *inv))
            .collect()
    }

    #[test]
    fn equation_becomes_relator() {
        let p = parse_presentation("< a, b | a b a = b a b >").unwrap();
        assert_eq!(p.generators().len(), 2);
        let expected = letters(
            &p,
            &[
                ("a", false),
                ("b", false),
                ("a", false),
                ("b", true),
                ("a", true),
                ("b", true),
            ],
        );
        assert_eq!(p.relators(), &[expected]);
    }

    #[test]
    fn free_group_and_trivial_group() {
        let p = parse_presentation("< a | >").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relator_count(), 0);
        let t = parse_presentation("< | >").unwrap();
        assert_eq!(t, Presentation::trivial());
        assert_eq!(parse_presentation("<|>").unwrap(), Presentation::trivial());
    }

    #[test]
    fn undeclared_symbol_rejected() {
        assert_eq!(
            parse_presentation("< a, b | a b a = b a b, c >"),
            Err(PresentationError::UndeclaredSymbol("c".into()))
        );
    }

    #[test]
    fn duplicate_generator_rejected() {
        assert_eq!(
            parse_presentation("<a, b, a | >"),
            Err(PresentationError::DuplicateGenerator("a".into()))
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_presentation("<a, b |\n a b a = >") {
            Err(PresentationError::Syntax { line, column, .. }) => {
                assert_eq!((line, column), (2, 10));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_presentation("<a | a"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("<a | a$>"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("<a | a,, a>"),
            Err(PresentationError::Syntax { .. })
        ));
    }

    #[test]
    fn juxtaposed_names_are_split() {
        let joined = parse_presentation("<a,b|aba=bab>").unwrap();
        let spaced = parse_presentation("<a, b | a b a = b a b>").unwrap();
        assert_eq!(joined, spaced);
        // exponent binds to the last piece
        let p = parse_presentation("<a, b | ab^2>").unwrap();
        assert_eq!(p.relators()[0].to_string(), "a b^2");
        // whole-token match wins over splitting
        let p = parse_presentation("<a, b, ab | ab>").unwrap();
        assert_eq!(p.relators()[0].to_string(), "ab");
        // backtracking past a greedy dead end
        let p = parse_presentation("<x, xy, yz | xyz>").unwrap();
        assert_eq!(p.relators()[0].to_string(), "x yz");
    }

    #[test]
    fn bracket_is_commutator() {
        let p = parse_presentation("<x, y | [x, y]>").unwrap();
        assert_eq!(p.to_string(), "<x, y | x y x^-1 y^-1>");
        let q = parse_presentation("<a, b | [a^2, b]^2>").unwrap();
        assert_eq!(q.relators()[0].len(), 12);
        assert!(parse_presentation("<x, y | [x y]>").is_err());
    }

    #[test]
    fn inverse_forms_and_powers() {
        let a = parse_presentation("<a, b | a' b^-1>").unwrap();
        let b = parse_presentation("<a, b | a^-1 b^-1>").unwrap();
        assert_eq!(a, b);
        let c = parse_presentation("<a, b | a^2, b^3, (a b)^2>").unwrap();
        assert_eq!(c.to_string(), "<a, b | a^2, b^3, a b a b>");
        let d = parse_presentation("<a | a^(-3) = 1>").unwrap();
        assert_eq!(d.relators()[0].to_string(), "a^-3");
        let e = parse_presentation("<a, b | a^0 b>").unwrap();
        assert_eq!(e.relators()[0].to_string(), "b");
    }

    #[test]
    fn serializer_output() {
        let p = parse_presentation("<a,b|aba=bab>").unwrap();
        assert_eq!(p.to_string(), "<a, b | a b a b^-1 a^-1 b^-1>");
        assert_eq!(Presentation::trivial().to_string(), "< | >");
        assert_eq!(parse_presentation("<a|>").unwrap().to_string(), "<a | >");
        assert_eq!(parse_presentation("<a | a a^-1>").unwrap().to_string(), "<a | 1>");
    }

    #[test]
    fn words_parse_against_presentation() {
        let p = parse_presentation("<a, b | aba = bab>").unwrap();
        assert_eq!(parse_word("ab^-1", &p).unwrap().to_string(), "a b^-1");
        assert_eq!(parse_word("a a^-1", &p).unwrap(), Word::identity());
        assert!(matches!(
            parse_word("c", &p),
            Err(PresentationError::UndeclaredSymbol(_))
        ));
    }

    #[test]
    fn json_form_is_accepted() {
        let p: Presentation = r#"{"generators":["a"],"relators":[[["a",1],["a",1]]]}"#.parse().unwrap();
        assert_eq!(p.to_string(), "<a | a^2>");
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        let names = ["a", "b", "c", "x1", "y_2"];
        (1usize..=5).prop_flat_map(move |n| {
            let rel = prop::collection::vec((0..n, any::<bool>()), 0..10);
            prop::collection::vec(rel, 0..4).prop_map(move |rels| {
                let gens: Vec<Generator> =
                    names[..n].iter().map(|s| Generator::new(s).unwrap()).collect();
                let relators = rels
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|(i, inv)| Letter::new(gens[i].clone(), inv))
                            .collect()
                    })
                    .collect();
                Presentation::new(gens, relators).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(p in arb_presentation()) {
            let text = p.to_string();
            prop_assert_eq!(parse_presentation(&text).unwrap(), p.clone());
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(parse_presentation_any(&json).unwrap(), p);
        }
    }
}
