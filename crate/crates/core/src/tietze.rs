//! Length-safe Tietze simplification.
//!
//! Only three moves are used: drop a trivial relator, drop a relator that
//! duplicates another up to rotation and inversion, and eliminate a
//! generator that occurs exactly once in some relator. Every move keeps the
//! group and none adds a generator, so the procedure always terminates.

use std::cmp::Reverse;
use std::collections::{HashMap, HashSet};

use crate::map::GroupMap;
use crate::presentation::Presentation;
use crate::word::{Generator, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    /// Isomorphism from the input presentation onto the simplified one.
    pub substitution: GroupMap,
    /// False when the step budget ran out before no move applied.
    pub complete: bool,
    pub steps: usize,
}

#[derive(Debug)]
enum Move {
    DropRelator(usize),
    Eliminate { relator: usize, generator: usize },
}

type Key = Vec<(usize, bool)>;

fn letter_key(w: &Word, index: &HashMap<Generator, usize>) -> Key {
    w.letters()
        .iter()
        .map(|l| (index[&l.generator], l.inverse))
        .collect()
}

/// Smallest rotation of `w` or `w^-1`, as a comparable key.
fn cyclic_key(w: &Word, index: &HashMap<Generator, usize>) -> Key {
    let inv = w.inverse();
    (0..w.len().max(1))
        .flat_map(|k| [letter_key(&w.rotate(k), index), letter_key(&inv.rotate(k), index)])
        .min()
        .unwrap_or_default()
}

fn next_move(gens: &[Generator], rels: &[Word]) -> Option<Move> {
    if let Some(i) = rels.iter().position(Word::is_empty) {
        return Some(Move::DropRelator(i));
    }
    let index: HashMap<Generator, usize> =
        gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = HashSet::new();
    for (i, r) in rels.iter().enumerate() {
        if !seen.insert(cyclic_key(r, &index)) {
            return Some(Move::DropRelator(i));
        }
    }
    // shortest relator first; among its lone generators, the latest declared
    rels.iter()
        .enumerate()
        .flat_map(|(ri, r)| {
            gens.iter()
                .enumerate()
                .filter(move |(_, g)| r.occurrences(g) == 1)
                .map(move |(gi, _)| (ri, gi, r.len()))
        })
        .min_by_key(|&(ri, gi, len)| (len, Reverse(gi), ri))
        .map(|(relator, generator, _)| Move::Eliminate { relator, generator })
}

/// Simplifies `p` using at most `budget` moves.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    let mut gens: Vec<Generator> = p.generators().to_vec();
    let mut rels: Vec<Word> = p.relators().iter().map(Word::cyclically_reduce).collect();
    let mut images: Vec<Word> = gens.iter().map(Word::generator).collect();
    let mut steps = 0;

    let complete = loop {
        let Some(mv) = next_move(&gens, &rels) else {
            break true;
        };
        if steps >= budget {
            break false;
        }
        steps += 1;
        match mv {
            Move::DropRelator(i) => {
                rels.remove(i);
            }
            Move::Eliminate { relator, generator } => {
                let x = gens.remove(generator);
                let r = rels.remove(relator);
                let at = r
                    .letters()
                    .iter()
                    .position(|l| l.generator == x)
                    .expect("candidate generator occurs in its relator");
                // r rotated is x^e w, so x^e = w^-1
                let rotated = r.rotate(at);
                let inverse = rotated.letters()[0].inverse;
                let rest = Word::new(rotated.letters()[1..].to_vec());
                let value = if inverse { rest } else { rest.inverse() };
                let sub = |g: &Generator| {
                    if *g == x {
                        value.clone()
                    } else {
                        Word::generator(g)
                    }
                };
                for w in rels.iter_mut() {
                    *w = w.substitute(sub).cyclically_reduce();
                }
                for w in images.iter_mut() {
                    *w = w.substitute(sub);
                }
            }
        }
    };

    let presentation = Presentation::from_parts_unchecked(gens, rels);
    let substitution = GroupMap::from_images(p.clone(), presentation.clone(), images)
        .expect("images only use surviving generators");
    TietzeOutcome {
        presentation,
        substitution,
        complete,
        steps,
    }
}
