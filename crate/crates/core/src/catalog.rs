//! Classical knot groups with checked meridians.
//!
//! Torus-knot meridians are found by searching reduced words by length for
//! one whose abelianized image is ±1 and whose normal closure is shown to be
//! everything by coset enumeration. The search runs once per process.

use std::sync::OnceLock;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::coset::DEFAULT_BUDGET;
use crate::kervaire::{check_h2, check_weight_one, ConditionStatus};
use crate::linalg::{abelianization, AbelianCoordinates, AbelianInvariants};
use crate::parse::{parse_presentation, parse_word};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Longest candidate meridian tried.
pub const SEARCH_MAX_LENGTH: usize = 9;
/// Per-candidate enumeration budget during the search.
pub const SEARCH_BUDGET: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeridianSearch {
    pub candidates_tried: usize,
    pub word_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub abelianization: AbelianInvariants,
    pub weight_one: ConditionStatus,
    pub h2: ConditionStatus,
    /// Present when the meridian came from the search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<MeridianSearch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Presentation,
    pub meridian: Word,
    pub validation: ValidationRecord,
}

impl CatalogEntry {
    fn validated(name: String, presentation: Presentation, meridian: Word, search: Option<MeridianSearch>) -> Self {
        let weight_one = check_weight_one(&presentation, &meridian, DEFAULT_BUDGET).expect("meridian over the generators");
        let validation = ValidationRecord {
            abelianization: abelianization(&presentation),
            weight_one,
            h2: check_h2(&presentation),
            search,
        };
        CatalogEntry {
            name,
            presentation,
            meridian,
            validation,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validation.abelianization.is_z() && self.validation.weight_one.is_satisfied()
    }
}

fn reduced_words(p: &Presentation, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = p
        .generators()
        .iter()
        .flat_map(|g| [g.letter(), g.inverse_letter()])
        .collect();
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * 3);
        for w in &words {
            for l in &letters {
                if w.last().is_none_or(|last| !last.cancels(l)) {
                    let mut longer = w.clone();
                    longer.push(l.clone());
                    next.push(longer);
                }
            }
        }
        words = next;
    }
    words.into_iter().map(Word::new).collect()
}

/// Shortest word with abelianized image ±1 and provable weight one.
pub fn search_meridian(p: &Presentation, max_len: usize, budget: usize) -> Option<(Word, MeridianSearch)> {
    let coords = AbelianCoordinates::new(p);
    let mut tried = 0;
    for len in 1..=max_len {
        for w in reduced_words(p, len) {
            let unit = coords.z_coordinate(p, &w).is_some_and(|z| z.abs().is_one());
            if !unit {
                continue;
            }
            tried += 1;
            if check_weight_one(p, &w, budget).ok()?.is_satisfied() {
                return Some((
                    w,
                    MeridianSearch {
                        candidates_tried: tried,
                        word_length: len,
                    },
                ));
            }
        }
    }
    None
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn torus_presentation(p: u32, q: u32) -> Presentation {
    parse_presentation(&format!("<a, b | a^{p} = b^{q}>")).expect("well-formed")
}

fn build() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let fixed = [("unknot", "<a | >"), ("trefoil", "<a, b | aba = bab>")];
    for (name, text) in fixed {
        let p = parse_presentation(text).expect("well-formed");
        let m = parse_word("a", &p).expect("generator a");
        out.push(CatalogEntry::validated(name.to_string(), p, m, None));
    }
    for p in 2..=7u32 {
        for q in p + 1..=7 {
            if gcd(p, q) != 1 {
                continue;
            }
            let pres = torus_presentation(p, q);
            let (m, search) =
                search_meridian(&pres, SEARCH_MAX_LENGTH, SEARCH_BUDGET).expect("torus knot meridian within search bound");
            out.push(CatalogEntry::validated(format!("torus({p},{q})"), pres, m, Some(search)));
        }
    }
    out
}

pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Accepts `torus(2,5)`, `torus(2, 5)` and `T(2,5)` for torus knots.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    let squashed: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let key = squashed.strip_prefix("t(").map(|rest| format!("torus({rest}")).unwrap_or(squashed);
    catalog().iter().find(|e| e.name == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kervaire::kervaire_report;
    use num_bigint::BigInt;

    #[test]
    fn ships_required_entries() {
        let names: Vec<&str> = catalog().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), 13);
        for n in ["unknot", "trefoil", "torus(2,3)", "torus(2,5)", "torus(3,7)", "torus(6,7)"] {
            assert!(names.contains(&n), "{n}");
        }
        assert!(!names.contains(&"torus(2,4)"));
        assert_eq!(lookup("T(2, 5)").unwrap().name, "torus(2,5)");
        assert!(lookup("figure-eight").is_none());
    }

    #[test]
    fn every_entry_rechecks() {
        for e in catalog() {
            let r = kervaire_report(&e.presentation, &e.meridian, DEFAULT_BUDGET).unwrap();
            assert!(r.all_satisfied(), "{}: {:?}", e.name, r);
            assert!(e.is_valid());
            assert_eq!(r.weight_one, e.validation.weight_one);
            assert_eq!(r.h2_zero, e.validation.h2);
        }
    }

    #[test]
    fn meridians_have_unit_image() {
        for e in catalog() {
            // independent check: the exponent vector pairs with the kernel of
            // the relator matrix; for ⟨a,b | a^p b^-q⟩ that kernel is (q, p)
            let v = e.presentation.exponent_vector(&e.meridian);
            let z: i64 = match e.name.as_str() {
                "unknot" => v[0],
                "trefoil" => v[0] + v[1],
                name => {
                    let (p, q) = name
                        .trim_start_matches("torus(")
                        .trim_end_matches(')')
                        .split_once(',')
                        .map(|(p, q)| (p.parse::<i64>().unwrap(), q.parse::<i64>().unwrap()))
                        .unwrap();
                    q * v[0] + p * v[1]
                }
            };
            assert_eq!(z.abs(), 1, "{}", e.name);
        }
    }

    #[test]
    fn torus_2_5_abelianization() {
        let e = lookup("torus(2,5)").unwrap();
        assert_eq!(e.validation.abelianization, AbelianInvariants::from_elementary::<BigInt>(1, &[]));
        assert!(e.validation.search.is_some());
    }

    #[test]
    fn search_rejects_nonunit() {
        // ⟨a | a^2⟩ has no element of abelianized image ±1 in Z-coordinates
        let p = parse_presentation("<a | a^2>").unwrap();
        assert!(search_meridian(&p, 3, 100).is_none());
    }

    #[test]
    fn entries_round_trip_json() {
        let e = lookup("trefoil").unwrap();
        let text = serde_json::to_string(e).unwrap();
        let back: CatalogEntry = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, e);
    }
}
