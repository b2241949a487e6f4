//! Generator symbols and words in a free group.
//!
//! A [`Word`] is a plain sequence of signed generator letters. Nothing is
//! reduced implicitly; callers ask for [`Word::free_reduce`] or
//! [`Word::cyclically_reduce`] when they need a normal form.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::PresentationError;

/// A generator name: a letter followed by letters, digits or underscores.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, PresentationError> {
        if is_valid_name(name) {
            Ok(Generator(Arc::from(name)))
        } else {
            Err(PresentationError::InvalidName(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn letter(&self) -> Letter {
        Letter::new(self.clone(), false)
    }

    pub fn inverse_letter(&self) -> Letter {
        Letter::new(self.clone(), true)
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        Generator::new(&name).map_err(de::Error::custom)
    }
}

/// A generator raised to the power +1 or -1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(&self) -> Letter {
        Letter::new(self.generator.clone(), !self.inverse)
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

// JSON form: ["a", 1] or ["a", -1]
impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.generator)?;
        tup.serialize_element(&self.sign())?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LetterVisitor;

        impl<'de> Visitor<'de> for LetterVisitor {
            type Value = Letter;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [name, ±1] pair")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Letter, A::Error> {
                let generator: Generator = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let sign: i64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                match sign {
                    1 => Ok(Letter::new(generator, false)),
                    -1 => Ok(Letter::new(generator, true)),
                    other => Err(de::Error::custom(format!("letter exponent must be ±1, got {other}"))),
                }
            }
        }

        deserializer.deserialize_tuple(2, LetterVisitor)
    }
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: &Generator) -> Self {
        Word(vec![g.letter()])
    }

    /// `g^k` as a reduced word.
    pub fn power_of(g: &Generator, k: i64) -> Self {
        let letter = Letter::new(g.clone(), k < 0);
        Word(vec![letter; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.0.extend(other.0.iter().cloned());
        out.free_reduce()
    }

    /// `self^k`, freely reduced. Negative powers invert.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend(base.0.iter().cloned());
        }
        Word(letters).free_reduce()
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for letter in &self.0 {
            match stack.last() {
                Some(top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter.clone()),
            }
        }
        Word(stack)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Free reduction followed by stripping matched first/last letters.
    pub fn cyclically_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let mut start = 0;
        let mut end = reduced.len();
        while end - start >= 2 && reduced[start].cancels(&reduced[end - 1]) {
            start += 1;
            end -= 1;
        }
        Word(reduced[start..end].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(first), Some(last)) if self.0.len() >= 2 => !first.cancels(last),
                _ => true,
            }
    }

    /// The rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::identity();
        }
        let k = k % self.0.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.0
            .iter()
            .filter(|l| &l.generator == g)
            .map(Letter::sign)
            .sum()
    }

    /// Number of letters equal to `g` or `g^-1`.
    pub fn occurrences(&self, g: &Generator) -> usize {
        self.0.iter().filter(|l| &l.generator == g).count()
    }

    pub fn mentions(&self, g: &Generator) -> bool {
        self.0.iter().any(|l| &l.generator == g)
    }

    /// Replaces each letter by a word; inverse letters get the inverted image.
    /// The result is freely reduced.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(&Generator) -> Word,
    {
        let mut letters = Vec::with_capacity(self.0.len());
        for letter in &self.0 {
            let w = image(&letter.generator);
            if letter.inverse {
                letters.extend(w.inverse().0);
            } else {
                letters.extend(w.0);
            }
        }
        Word(letters).free_reduce()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Runs of equal letters are written as powers: `a^2 b^-1`. The identity is `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let letter = &self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == *letter {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * letter.sign();
            if exp == 1 {
                write!(f, "{}", letter.generator)?;
            } else {
                write!(f, "{}^{}", letter.generator, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}
