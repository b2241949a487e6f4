use std::fmt::Write;

use knotpair::coset::Verdict;
use knotpair::kervaire::{ConditionStatus, Evidence, KervaireReport};
use knotpair::linalg::MapCheck;

fn evidence(e: &Evidence) -> String {
    match e {
        Evidence::FinitePresentation { generators, relators } => {
            format!("generators {generators}, relators {relators}")
        }
        Evidence::Abelianization { invariants, .. } => format!("abelianization {invariants}"),
        Evidence::EulerCharacteristic {
            euler_characteristic,
            complex_h2_rank,
            ..
        } => format!("euler characteristic {euler_characteristic}, H2 of the 2-complex has rank {complex_h2_rank}"),
        Evidence::QuotientAbelianization { word, invariants } => {
            format!("quotient by <<{word}>> abelianizes to {invariants}")
        }
        Evidence::Enumeration { word, outcome } => match &outcome.verdict {
            Verdict::Completed { index } => format!("quotient by <<{word}>> has order {index}"),
            Verdict::Exhausted { cosets_defined, .. } => {
                format!("enumeration of the quotient by <<{word}>> stopped after {cosets_defined} cosets")
            }
        },
        Evidence::MapCheck { result } => match result {
            MapCheck::Consistent => "every relator maps to zero in the abelianization".into(),
            MapCheck::Violated(i) => format!("relator {i} does not map to zero in the abelianization"),
        },
        Evidence::MeridianImages {
            image_of_g,
            image_coordinate,
            gbar_coordinate,
            ..
        } => match (image_coordinate, gbar_coordinate) {
            (Some(a), Some(b)) => format!("image of g is {image_of_g}, coordinate {a} against {b}"),
            _ => format!("image of g is {image_of_g}"),
        },
    }
}

pub fn status(s: &ConditionStatus) -> String {
    match s {
        ConditionStatus::Satisfied(e) | ConditionStatus::Violated(e) => format!("{} ({})", s.label(), evidence(e)),
        ConditionStatus::Inconclusive { reason, .. } => format!("inconclusive ({reason})"),
    }
}

pub fn kervaire(r: &KervaireReport) -> String {
    let mut out = format!("group: {}\nelement: {}\n", r.presentation, r.element);
    for (name, s) in r.conditions() {
        let _ = writeln!(out, "{name}: {}", status(s));
    }
    out
}
