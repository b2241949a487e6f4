//! The four Kervaire conditions on a presented group with a chosen element,
//! and the pair conditions for a boundary group mapping to a knot group.
//!
//! Conditions 1 and 2 are decided outright. H₂ = 0 is only certified
//! through the deficiency-one shortcut. Weight one is certified by coset
//! enumeration of the quotient and refuted by its abelianization.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coset::{is_trivial_group, EnumerationOutcome, TrivialityVerdict};
use crate::error::{KervaireError, PresentationError};
use crate::linalg::{
    abelianization, invariant_factors, relator_matrix, verify_map_abelianized, AbelianCoordinates,
    AbelianInvariants, MapCheck,
};
use crate::map::GroupMap;
use crate::presentation::Presentation;
use crate::word::Word;

/// Machine-checkable data backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The input already is a finite presentation.
    FinitePresentation { generators: usize, relators: usize },
    /// Smith form of the relator matrix.
    Abelianization {
        invariants: AbelianInvariants,
        smith_diagonal: Vec<String>,
    },
    /// The presentation 2-complex has Euler characteristic
    /// `1 - generators + relators`; with H₁ = Z its H₂ is free of rank
    /// `relators - generators + 1`, and it surjects onto H₂ of the group.
    EulerCharacteristic {
        generators: usize,
        relators: usize,
        euler_characteristic: i64,
        complex_h2_rank: i64,
    },
    /// Abelianization of the quotient by the normal closure of `word`.
    QuotientAbelianization {
        word: String,
        invariants: AbelianInvariants,
    },
    /// Coset enumeration of the quotient by the normal closure of `word`
    /// over the trivial subgroup.
    Enumeration {
        word: String,
        outcome: EnumerationOutcome,
    },
    MapCheck { result: MapCheck },
    /// Abelianized images of φ(g) and ḡ. Coordinates are present when the
    /// target abelianization is Z.
    MeridianImages {
        image_of_g: String,
        image_exponents: Vec<i64>,
        gbar_exponents: Vec<i64>,
        image_coordinate: Option<String>,
        gbar_coordinate: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "evidence", rename_all = "snake_case")]
pub enum ConditionStatus {
    Satisfied(Evidence),
    Violated(Evidence),
    Inconclusive {
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        detail: Option<Evidence>,
    },
}

impl ConditionStatus {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ConditionStatus::Satisfied(_))
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, ConditionStatus::Violated(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, ConditionStatus::Inconclusive { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConditionStatus::Satisfied(_) => "satisfied",
            ConditionStatus::Violated(_) => "violated",
            ConditionStatus::Inconclusive { .. } => "inconclusive",
        }
    }

    fn inconclusive(reason: impl Into<String>) -> Self {
        ConditionStatus::Inconclusive {
            reason: reason.into(),
            detail: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KervaireReport {
    pub presentation: String,
    pub element: String,
    pub finitely_presentable: ConditionStatus,
    pub abelianization_z: ConditionStatus,
    pub h2_zero: ConditionStatus,
    pub weight_one: ConditionStatus,
}

impl KervaireReport {
    pub fn conditions(&self) -> [(&'static str, &ConditionStatus); 4] {
        [
            ("finitely_presentable", &self.finitely_presentable),
            ("abelianization_z", &self.abelianization_z),
            ("h2_zero", &self.h2_zero),
            ("weight_one", &self.weight_one),
        ]
    }

    pub fn all_satisfied(&self) -> bool {
        self.conditions().iter().all(|(_, s)| s.is_satisfied())
    }

    pub fn any_violated(&self) -> bool {
        self.conditions().iter().any(|(_, s)| s.is_violated())
    }

    pub fn any_inconclusive(&self) -> bool {
        self.conditions().iter().any(|(_, s)| s.is_inconclusive())
    }
}

fn abelianization_evidence(p: &Presentation) -> (AbelianInvariants, Evidence) {
    let factors = invariant_factors(&relator_matrix(p));
    let invariants = AbelianInvariants::from_invariant_factors(p.generator_count(), &factors);
    let evidence = Evidence::Abelianization {
        invariants: invariants.clone(),
        smith_diagonal: factors.iter().map(BigInt::to_string).collect(),
    };
    (invariants, evidence)
}

pub fn check_finitely_presentable(p: &Presentation) -> ConditionStatus {
    ConditionStatus::Satisfied(Evidence::FinitePresentation {
        generators: p.generator_count(),
        relators: p.relator_count(),
    })
}

pub fn check_abelianization_z(p: &Presentation) -> ConditionStatus {
    let (invariants, evidence) = abelianization_evidence(p);
    if invariants.is_z() {
        ConditionStatus::Satisfied(evidence)
    } else {
        ConditionStatus::Violated(evidence)
    }
}

/// Certifies H₂ = 0 only when the presentation has deficiency one and the
/// group has abelianization Z.
pub fn check_h2(p: &Presentation) -> ConditionStatus {
    let g = p.generator_count() as i64;
    let r = p.relator_count() as i64;
    if p.deficiency() >= 1 && abelianization(p).is_z() {
        // H₂ of the 2-complex is free, and rank H₂ = χ - 1 + rank H₁
        let complex_h2_rank = r - g + 1;
        if complex_h2_rank == 0 {
            return ConditionStatus::Satisfied(Evidence::EulerCharacteristic {
                generators: p.generator_count(),
                relators: p.relator_count(),
                euler_characteristic: 1 - g + r,
                complex_h2_rank,
            });
        }
    }
    ConditionStatus::inconclusive("H2(G) not decidable from this presentation")
}

/// Is the group the normal closure of `g`?
pub fn check_weight_one(p: &Presentation, g: &Word, budget: usize) -> Result<ConditionStatus, PresentationError> {
    p.check_word(g)?;
    let word = g.to_string();
    let q = p.quotient_by_normal_closure(std::slice::from_ref(g))?;
    let invariants = abelianization(&q);
    if !invariants.is_trivial() {
        return Ok(ConditionStatus::Violated(Evidence::QuotientAbelianization { word, invariants }));
    }
    Ok(match is_trivial_group(&q, budget) {
        TrivialityVerdict::Trivial(out) => ConditionStatus::Satisfied(Evidence::Enumeration {
            word,
            outcome: out.summary(),
        }),
        TrivialityVerdict::Nontrivial(out) => ConditionStatus::Violated(Evidence::Enumeration {
            word,
            outcome: out.summary(),
        }),
        TrivialityVerdict::Inconclusive(out) => ConditionStatus::Inconclusive {
            reason: format!("coset enumeration exhausted its budget of {budget} cosets"),
            detail: Some(Evidence::Enumeration {
                word,
                outcome: out.summary(),
            }),
        },
    })
}

pub fn kervaire_report(p: &Presentation, g: &Word, budget: usize) -> Result<KervaireReport, PresentationError> {
    Ok(KervaireReport {
        presentation: p.to_string(),
        element: g.to_string(),
        finitely_presentable: check_finitely_presentable(p),
        abelianization_z: check_abelianization_z(p),
        h2_zero: check_h2(p),
        weight_one: check_weight_one(p, g, budget)?,
    })
}

/// Where the homomorphism in a pair report came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapProvenance {
    Supplied,
    /// `x ↦ ḡ^(sign · ψ(x))` for the abelianization `ψ: G → Z`, where
    /// `sign = ψ(g)`.
    Decoupled { sign: i8 },
    Unavailable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub report_g: KervaireReport,
    pub report_gbar: KervaireReport,
    pub map_provenance: MapProvenance,
    /// Generator images of φ, in the source generator order.
    pub map_images: Option<Vec<String>>,
    pub map_consistency: ConditionStatus,
    /// φ(g) = ḡ, compared in the abelianization of Ḡ.
    pub meridian_match: ConditionStatus,
}

impl PairReport {
    pub fn statuses(&self) -> Vec<(&'static str, &ConditionStatus)> {
        let mut out: Vec<_> = self
            .report_g
            .conditions()
            .into_iter()
            .map(|(n, s)| (prefixed_g(n), s))
            .collect();
        out.extend(
            self.report_gbar
                .conditions()
                .into_iter()
                .map(|(n, s)| (prefixed_gbar(n), s)),
        );
        out.push(("map_consistency", &self.map_consistency));
        out.push(("meridian_match", &self.meridian_match));
        out
    }

    pub fn all_satisfied(&self) -> bool {
        self.statuses().iter().all(|(_, s)| s.is_satisfied())
    }

    pub fn any_violated(&self) -> bool {
        self.statuses().iter().any(|(_, s)| s.is_violated())
    }

    pub fn any_inconclusive(&self) -> bool {
        self.statuses().iter().any(|(_, s)| s.is_inconclusive())
    }
}

fn prefixed_g(name: &str) -> &'static str {
    match name {
        "finitely_presentable" => "G.finitely_presentable",
        "abelianization_z" => "G.abelianization_z",
        "h2_zero" => "G.h2_zero",
        _ => "G.weight_one",
    }
}

fn prefixed_gbar(name: &str) -> &'static str {
    match name {
        "finitely_presentable" => "Gbar.finitely_presentable",
        "abelianization_z" => "Gbar.abelianization_z",
        "h2_zero" => "Gbar.h2_zero",
        _ => "Gbar.weight_one",
    }
}

fn small(x: &BigInt) -> Option<i64> {
    i64::try_from(x).ok()
}

/// The homomorphism through the abelianization sending `g` to `ḡ`, when
/// `G^ab ≅ Z` and `g` maps to a generator.
pub fn decoupled_map(
    g_group: &Presentation,
    g: &Word,
    gbar_group: &Presentation,
    gbar: &Word,
) -> Result<(GroupMap, i8), String> {
    if !abelianization(g_group).is_z() {
        return Err("G does not have abelianization Z".into());
    }
    let coords = AbelianCoordinates::new(g_group);
    let psi = |w: &Word| coords.z_coordinate(g_group, w).expect("free rank is 1");
    let s = psi(g);
    let sign: i8 = if s.is_one() {
        1
    } else if (-&s).is_one() {
        -1
    } else {
        return Err(format!("g has abelianized image {s}, not ±1"));
    };
    let images = g_group
        .generators()
        .iter()
        .map(|x| {
            let k = small(&(psi(&Word::generator(x)) * sign))
                .ok_or_else(|| "exponent does not fit in 64 bits".to_string())?;
            Ok(gbar.pow(k))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let map = GroupMap::from_images(g_group.clone(), gbar_group.clone(), images).map_err(|e| e.to_string())?;
    Ok((map, sign))
}

fn meridian_match(phi: &GroupMap, g: &Word, gbar: &Word) -> ConditionStatus {
    let target = phi.target();
    let image = phi.apply(g).expect("g was checked against G");
    let coords = AbelianCoordinates::new(target);
    let a = target.exponent_vector(&image);
    let b = target.exponent_vector(gbar);
    let diff: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| BigInt::from(x - y)).collect();
    let coordinate = |w: &Word| coords.z_coordinate(target, w).map(|c| c.to_string());
    let evidence = Evidence::MeridianImages {
        image_of_g: image.to_string(),
        image_coordinate: coordinate(&image),
        gbar_coordinate: coordinate(gbar),
        image_exponents: a,
        gbar_exponents: b,
    };
    if coords.is_relation(&diff) {
        ConditionStatus::Satisfied(evidence)
    } else {
        ConditionStatus::Violated(evidence)
    }
}

/// Pair conditions for `φ: G → Ḡ` with chosen `g ∈ G`, `ḡ ∈ Ḡ`. Without a
/// supplied map, the decoupled map through the abelianization is used.
pub fn pair_report(
    g_group: &Presentation,
    g: &Word,
    gbar_group: &Presentation,
    gbar: &Word,
    phi: Option<&GroupMap>,
    budget: usize,
) -> Result<PairReport, KervaireError> {
    if let Some(f) = phi {
        if f.source() != g_group {
            return Err(KervaireError::MismatchedPresentations(
                "map source is not the boundary group".into(),
            ));
        }
        if f.target() != gbar_group {
            return Err(KervaireError::MismatchedPresentations(
                "map target is not the knot group".into(),
            ));
        }
    }
    let report_g = kervaire_report(g_group, g, budget)?;
    let report_gbar = kervaire_report(gbar_group, gbar, budget)?;

    let (map, provenance) = match phi {
        Some(f) => (Some(f.clone()), MapProvenance::Supplied),
        None => match decoupled_map(g_group, g, gbar_group, gbar) {
            Ok((f, sign)) => (Some(f), MapProvenance::Decoupled { sign }),
            Err(reason) => (None, MapProvenance::Unavailable { reason }),
        },
    };
    let (map_consistency, meridian) = match &map {
        Some(f) => {
            let result = verify_map_abelianized(f);
            let consistency = match result {
                MapCheck::Consistent => ConditionStatus::Satisfied(Evidence::MapCheck { result }),
                MapCheck::Violated(_) => ConditionStatus::Violated(Evidence::MapCheck { result }),
            };
            (consistency, meridian_match(f, g, gbar))
        }
        None => {
            let reason = match &provenance {
                MapProvenance::Unavailable { reason } => format!("no map could be synthesized: {reason}"),
                _ => unreachable!("a map exists for the other provenances"),
            };
            (
                ConditionStatus::inconclusive(reason.clone()),
                ConditionStatus::inconclusive(reason),
            )
        }
    };
    Ok(PairReport {
        report_g,
        report_gbar,
        map_provenance: provenance,
        map_images: map.map(|f| f.images().iter().map(Word::to_string).collect()),
        map_consistency,
        meridian_match: meridian,
    })
}
