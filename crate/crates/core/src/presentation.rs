//! Finite presentations and the presentation-level algebra built on them:
//! free and direct products, quotients by normal closures.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::PresentationError;
use crate::word::{Generator, Word};

/// A finite presentation `< generators | relators >`.
///
/// Every relator is stored cyclically reduced and only mentions declared
/// generators. Relator order is preserved.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = PresentationError;

    fn try_from(raw: RawPresentation) -> Result<Self, Self::Error> {
        Presentation::new(raw.generators, raw.relators)
    }
}

impl From<Presentation> for RawPresentation {
    fn from(p: Presentation) -> Self {
        RawPresentation {
            generators: p.generators,
            relators: p.relators,
        }
    }
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.to_string()));
            }
        }
        let mut p = Presentation {
            generators,
            relators: Vec::with_capacity(relators.len()),
        };
        for r in relators {
            p.check_word(&r)?;
            p.relators.push(r.cyclically_reduce());
        }
        Ok(p)
    }

    /// Builds a presentation from generator names and relators; convenient
    /// for tests and fixtures.
    pub fn from_names(names: &[&str], relators: Vec<Word>) -> Result<Self, PresentationError> {
        let gens = names
            .iter()
            .map(|n| Generator::new(n))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, relators)
    }

    /// The presentation of the trivial group with no generators.
    pub fn trivial() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// The free group on the given generators.
    pub fn free(generators: Vec<Generator>) -> Result<Self, PresentationError> {
        Presentation::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Number of generators minus number of relators.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.index_of(g).is_some()
    }

    /// Fails with the first letter whose generator is not declared here.
    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        for letter in w.letters() {
            if !self.contains(&letter.generator) {
                return Err(PresentationError::UndeclaredSymbol(
                    letter.generator.to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Exponent-sum vector of `w` in generator order.
    pub fn exponent_vector(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0i64; self.generators.len()];
        for letter in w.letters() {
            if let Some(i) = self.index_of(&letter.generator) {
                v[i] += letter.sign();
            }
        }
        v
    }

    /// `P / <<ws>>`: the same generators with `ws` appended as relators.
    pub fn quotient_by_normal_closure(&self, ws: &[Word]) -> Result<Presentation, PresentationError> {
        let mut relators = self.relators.clone();
        for w in ws {
            self.check_word(w)?;
            relators.push(w.cyclically_reduce());
        }
        Ok(Presentation {
            generators: self.generators.clone(),
            relators,
        })
    }

    /// `P * Q`. Generators of `other` that clash with names already in use
    /// are renamed with the first free suffix `_2`, `_3`, ...
    pub fn free_product(&self, other: &Presentation) -> Combined {
        let renaming = Renaming::avoiding(self, other);
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().map(|g| renaming.rename(g)));
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| renaming.apply(r)));
        Combined {
            presentation: Presentation {
                generators,
                relators,
            },
            renaming,
        }
    }

    /// `P × Q`: the free product plus the commutator `[x, y]` for every
    /// generator `x` of `self` and `y` of `other`.
    pub fn direct_product(&self, other: &Presentation) -> Combined {
        let Combined {
            mut presentation,
            renaming,
        } = self.free_product(other);
        for x in &self.generators {
            for y in &other.generators {
                let y = renaming.rename(y);
                presentation.relators.push(Word::commutator(
                    &Word::generator(x),
                    &Word::generator(&y),
                ));
            }
        }
        Combined {
            presentation,
            renaming,
        }
    }

    /// Renames generators, leaving unmapped ones alone. The new names must
    /// stay distinct.
    pub fn rename(&self, names: &BTreeMap<Generator, Generator>) -> Result<Presentation, PresentationError> {
        let r = |g: &Generator| names.get(g).cloned().unwrap_or_else(|| g.clone());
        let generators = self.generators.iter().map(r).collect();
        let relators = self
            .relators
            .iter()
            .map(|w| w.substitute(|g| Word::generator(&r(g))))
            .collect();
        Presentation::new(generators, relators)
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<Generator>, relators: Vec<Word>) -> Self {
        Presentation {
            generators,
            relators,
        }
    }
}

/// A combined presentation together with the renaming applied to the
/// second operand's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combined {
    pub presentation: Presentation,
    pub renaming: Renaming,
}

/// Renaming of the right-hand factor of a product. Generators that did not
/// clash map to themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Renaming {
    names: BTreeMap<Generator, Generator>,
}

impl Renaming {
    fn avoiding(left: &Presentation, right: &Presentation) -> Renaming {
        let left_names: HashSet<&str> = left.generators.iter().map(|g| g.name()).collect();
        let mut taken: HashSet<String> = left
            .generators
            .iter()
            .chain(&right.generators)
            .map(|g| g.name().to_string())
            .collect();
        let mut names = BTreeMap::new();
        for g in &right.generators {
            if !left_names.contains(g.name()) {
                continue;
            }
            let fresh = (2..)
                .map(|k| format!("{}_{}", g.name(), k))
                .find(|candidate| !taken.contains(candidate))
                .expect("unbounded suffix search");
            taken.insert(fresh.clone());
            let fresh = Generator::new(&fresh).expect("suffixing a valid name keeps it valid");
            names.insert(g.clone(), fresh);
        }
        Renaming { names }
    }

    pub fn rename(&self, g: &Generator) -> Generator {
        self.names.get(g).cloned().unwrap_or_else(|| g.clone())
    }

    /// Translates a word over the second factor into the combined presentation.
    pub fn apply(&self, w: &Word) -> Word {
        if self.names.is_empty() {
            return w.clone();
        }
        w.letters()
            .iter()
            .map(|l| crate::word::Letter::new(self.rename(&l.generator), l.inverse))
            .collect()
    }

    /// Only the generators that actually changed name.
    pub fn changed(&self) -> &BTreeMap<Generator, Generator> {
        &self.names
    }

    pub fn is_identity(&self) -> bool {
        self.names.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    fn p(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn duplicate_generators_rejected() {
        let a = Generator::new("a").unwrap();
        assert_eq!(
            Presentation::new(vec![a.clone(), a], vec![]),
            Err(PresentationError::DuplicateGenerator("a".into()))
        );
    }

    #[test]
    fn relators_are_cyclically_reduced_on_entry() {
        let q = p("<a, b | b a b^-1>");
        assert_eq!(q.relators()[0].to_string(), "a");
    }

    #[test]
    fn free_product_renames_clashes() {
        let c = p("<a | >").free_product(&p("<a | >"));
        assert_eq!(c.presentation.to_string(), "<a, a_2 | >");
        assert_eq!(
            c.renaming.rename(&Generator::new("a").unwrap()).name(),
            "a_2"
        );

        let c = p("<a | a^2>").free_product(&p("<b | b^3>"));
        assert_eq!(c.presentation.to_string(), "<a, b | a^2, b^3>");
        assert!(c.renaming.is_identity());
    }

    #[test]
    fn renaming_skips_names_used_by_either_side() {
        let c = p("<a, a_2 | >").free_product(&p("<a, a_3 | a a_3>"));
        assert_eq!(c.presentation.to_string(), "<a, a_2, a_4, a_3 | a_4 a_3>");
    }

    #[test]
    fn trefoil_free_product_counts() {
        let t = p("<a, b | a b a = b a b>");
        let c = t.free_product(&t);
        assert_eq!(c.presentation.generator_count(), 4);
        assert_eq!(c.presentation.relator_count(), 2);
        assert_eq!(c.presentation.deficiency(), 2);
    }

    #[test]
    fn direct_product_adds_commutators() {
        let c = p("<a | >").direct_product(&p("<b | >"));
        assert_eq!(c.presentation.to_string(), "<a, b | a b a^-1 b^-1>");
        let trivial = Presentation::trivial();
        let q = p("<a, b | a b a = b a b>");
        assert_eq!(q.direct_product(&trivial).presentation, q);
    }

    #[test]
    fn quotient_appends_and_validates() {
        let q = p("<a | >").quotient_by_normal_closure(&[p("<a | a>").relators()[0].clone()]);
        assert_eq!(q.unwrap().to_string(), "<a | a>");
        let base = p("<a, b | a b a = b a b>");
        assert_eq!(base.quotient_by_normal_closure(&[]).unwrap(), base);
        let stray = p("<c | c>").relators()[0].clone();
        assert_eq!(
            base.quotient_by_normal_closure(&[stray]),
            Err(PresentationError::UndeclaredSymbol("c".into()))
        );
    }

    #[test]
    fn json_round_trip_and_validation() {
        let q = p("<a, b | a b a = b a b>");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"generators":["a","b"],"relators":[[["a",1],["b",1],["a",1],["b",-1],["a",-1],["b",-1]]]}"#
        );
        let back: Presentation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        let bad = r#"{"generators":["a"],"relators":[[["b",1]]]}"#;
        assert!(serde_json::from_str::<Presentation>(bad).is_err());
    }
}
