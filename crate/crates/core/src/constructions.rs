//! Knot-group constructions as presentation transformers: knot sum, frame
//! twist-spin (single and multi-component), suspension, and the
//! single-stratum reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{ConstructionError, PresentationError};
use crate::kervaire::{check_weight_one, kervaire_report, ConditionStatus, KervaireReport};
use crate::map::GroupMap;
use crate::parse::{parse_presentation_any, parse_word};
use crate::presentation::{Presentation, Renaming};
use crate::word::{Generator, Word};

/// Boundary group `G`, knot group `Ḡ`, the inclusion-induced `φ: G → Ḡ`
/// and the chosen meridians `g`, `ḡ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotGroupPair {
    boundary: Presentation,
    ambient: Presentation,
    inclusion: GroupMap,
    meridian_boundary: Word,
    meridian_ambient: Word,
}

impl KnotGroupPair {
    /// Meridians must be nonempty, except that a boundary group without
    /// generators has only the empty word to offer.
    pub fn new(inclusion: GroupMap, meridian_boundary: Word, meridian_ambient: Word) -> Result<Self, ConstructionError> {
        let boundary = inclusion.source().clone();
        let ambient = inclusion.target().clone();
        boundary.check_word(&meridian_boundary)?;
        ambient.check_word(&meridian_ambient)?;
        let meridian_boundary = meridian_boundary.free_reduce();
        let meridian_ambient = meridian_ambient.free_reduce();
        if meridian_ambient.is_empty() || (meridian_boundary.is_empty() && boundary.generator_count() > 0) {
            return Err(ConstructionError::EmptyMeridian);
        }
        Ok(KnotGroupPair {
            boundary,
            ambient,
            inclusion,
            meridian_boundary,
            meridian_ambient,
        })
    }

    /// The pair with `G = Ḡ` and `φ` the identity.
    pub fn identity(ambient: &Presentation, meridian: &Word) -> Result<Self, ConstructionError> {
        KnotGroupPair::new(GroupMap::identity(ambient), meridian.clone(), meridian.clone())
    }

    pub fn boundary(&self) -> &Presentation {
        &self.boundary
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    pub fn inclusion(&self) -> &GroupMap {
        &self.inclusion
    }

    pub fn meridian_boundary(&self) -> &Word {
        &self.meridian_boundary
    }

    pub fn meridian_ambient(&self) -> &Word {
        &self.meridian_ambient
    }

    /// Reads the pair file format; see `docs/schemas.md`.
    pub fn from_json(text: &str) -> Result<Self, ConstructionError> {
        let file: PairFile = serde_json::from_str(text).map_err(|e| PresentationError::Json(e.to_string()))?;
        file.into_pair()
    }

    pub fn to_file(&self) -> PairFile {
        let images = self
            .boundary
            .generators()
            .iter()
            .zip(self.inclusion.images())
            .map(|(g, w)| (g.to_string(), w.to_string()))
            .collect();
        PairFile {
            boundary: PresentationSource::Text(self.boundary.to_string()),
            ambient: PresentationSource::Text(self.ambient.to_string()),
            inclusion: Some(images),
            meridian_boundary: self.meridian_boundary.to_string(),
            meridian_ambient: self.meridian_ambient.to_string(),
        }
    }
}

/// A presentation inside a JSON document: grammar text or the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationSource {
    Text(String),
    Json(Presentation),
}

impl PresentationSource {
    pub fn resolve(&self) -> Result<Presentation, PresentationError> {
        match self {
            PresentationSource::Text(t) => parse_presentation_any(t),
            PresentationSource::Json(p) => Ok(p.clone()),
        }
    }
}

/// On-disk form of a [`KnotGroupPair`]. Without `inclusion`, each boundary
/// generator maps to the ambient generator of the same name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub boundary: PresentationSource,
    pub ambient: PresentationSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<BTreeMap<String, String>>,
    pub meridian_boundary: String,
    pub meridian_ambient: String,
}

impl PairFile {
    pub fn into_pair(self) -> Result<KnotGroupPair, ConstructionError> {
        let boundary = self.boundary.resolve()?;
        let ambient = self.ambient.resolve()?;
        let mut images = BTreeMap::new();
        match &self.inclusion {
            Some(map) => {
                for (name, word) in map {
                    let g = boundary
                        .generator(name)
                        .ok_or_else(|| PresentationError::UnknownImage(name.clone()))?
                        .clone();
                    images.insert(g, parse_word(word, &ambient)?);
                }
            }
            None => {
                for g in boundary.generators() {
                    let target = ambient
                        .generator(g.name())
                        .ok_or_else(|| PresentationError::MissingImage(g.to_string()))?;
                    images.insert(g.clone(), Word::generator(target));
                }
            }
        }
        let inclusion = GroupMap::new(boundary.clone(), ambient.clone(), images)?;
        let mb = parse_word(&self.meridian_boundary, &boundary)?;
        let ma = parse_word(&self.meridian_ambient, &ambient)?;
        KnotGroupPair::new(inclusion, mb, ma)
    }
}

/// Knot sum: the free product amalgamated over the meridians. The returned
/// meridian is `m1`.
pub fn knot_sum(first: (&Presentation, &Word), second: (&Presentation, &Word)) -> Result<(Presentation, Word), ConstructionError> {
    let (p1, m1) = first;
    let (p2, m2) = second;
    p1.check_word(m1)?;
    p2.check_word(m2)?;
    let (m1, m2) = (m1.free_reduce(), m2.free_reduce());
    if m1.is_empty() || m2.is_empty() {
        return Err(ConstructionError::EmptyMeridian);
    }
    let combined = p1.free_product(p2);
    let m2 = combined.renaming.apply(&m2);
    let sum = combined
        .presentation
        .quotient_by_normal_closure(&[m1.mul(&m2.inverse())])?;
    Ok((sum, m1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinInput {
    pub pair: KnotGroupPair,
    /// Fundamental group of the spinning manifold M.
    pub m_group: Presentation,
    /// `deg τ(x)` for every generator `x` of `m_group`.
    pub tau_degrees: BTreeMap<Generator, i64>,
}

impl SpinInput {
    pub fn new(pair: KnotGroupPair, m_group: Presentation, tau_degrees: BTreeMap<Generator, i64>) -> Self {
        SpinInput {
            pair,
            m_group,
            tau_degrees,
        }
    }

    /// Every generator of `m_group` twisted by degree `k`.
    pub fn uniform(pair: KnotGroupPair, m_group: Presentation, k: i64) -> Self {
        let tau_degrees = m_group.generators().iter().map(|g| (g.clone(), k)).collect();
        SpinInput::new(pair, m_group, tau_degrees)
    }

    /// Parses `x=2,y=0`.
    pub fn parse_degrees(text: &str, m_group: &Presentation) -> Result<BTreeMap<Generator, i64>, ConstructionError> {
        let mut out = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, k) = part.split_once('=').ok_or_else(|| PresentationError::Syntax {
                line: 1,
                column: 1,
                message: format!("expected name=degree, found {part:?}"),
            })?;
            let name = name.trim();
            let g = m_group
                .generator(name)
                .ok_or_else(|| ConstructionError::UnknownDegree(name.to_string()))?;
            let k: i64 = k.trim().parse().map_err(|_| PresentationError::Syntax {
                line: 1,
                column: 1,
                message: format!("degree {:?} is not an integer", k.trim()),
            })?;
            out.insert(g.clone(), k);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinResult {
    /// `(π₁(M) × Ḡ) / <<x⁻¹ ḡ^deg τ(x)>>`
    pub knot_group: Presentation,
    /// `π₁(M) × G`
    pub boundary_group: Presentation,
    /// `id × φ` followed by the quotient map.
    pub inclusion: GroupMap,
    pub meridian_knot: Word,
    pub meridian_boundary: Word,
    /// Renaming applied to Ḡ's generators inside the knot group.
    pub ambient_renaming: Renaming,
    /// Renaming applied to G's generators inside the boundary group.
    pub boundary_renaming: Renaming,
}

pub fn frame_twist_spin(input: &SpinInput) -> Result<SpinResult, ConstructionError> {
    let m = &input.m_group;
    for g in input.tau_degrees.keys() {
        if !m.contains(g) {
            return Err(ConstructionError::UnknownDegree(g.to_string()));
        }
    }
    let degrees = m
        .generators()
        .iter()
        .map(|x| {
            input
                .tau_degrees
                .get(x)
                .copied()
                .ok_or_else(|| ConstructionError::MissingDegree(x.to_string()))
        })
        .collect::<Result<Vec<i64>, _>>()?;
    let pair = &input.pair;

    let product = m.direct_product(pair.ambient());
    let gbar = product.renaming.apply(pair.meridian_ambient());
    let twists: Vec<Word> = m
        .generators()
        .iter()
        .zip(&degrees)
        .map(|(x, &k)| Word::generator(x).inverse().mul(&gbar.pow(k)))
        .collect();
    let knot_group = product.presentation.quotient_by_normal_closure(&twists)?;

    let boundary = m.direct_product(pair.boundary());
    let mut images: Vec<Word> = m.generators().iter().map(Word::generator).collect();
    images.extend(pair.inclusion().images().iter().map(|w| product.renaming.apply(w)));
    let inclusion = GroupMap::from_images(boundary.presentation.clone(), knot_group.clone(), images)?;

    Ok(SpinResult {
        meridian_boundary: boundary.renaming.apply(pair.meridian_boundary()),
        boundary_group: boundary.presentation,
        knot_group,
        inclusion,
        meridian_knot: gbar,
        ambient_renaming: product.renaming,
        boundary_renaming: boundary.renaming,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSpinResult {
    pub knot_group: Presentation,
    /// The first component's central meridian.
    pub meridian: Word,
    /// Each component's central meridian inside `knot_group`.
    pub component_meridians: Vec<Word>,
    pub components: Vec<SpinResult>,
}

/// Spins each component separately, then takes the free product with one
/// relator `m_i m_{i+1}⁻¹` for each consecutive pair of central meridians.
pub fn multi_component_spin(inputs: &[SpinInput]) -> Result<MultiSpinResult, ConstructionError> {
    let first = inputs.first().ok_or(ConstructionError::NoComponents)?;
    let first = frame_twist_spin(first)?;
    let mut knot_group = first.knot_group.clone();
    let mut meridians = vec![first.meridian_knot.clone()];
    let mut components = vec![first];
    let mut identifications = Vec::new();
    for input in &inputs[1..] {
        let spun = frame_twist_spin(input)?;
        let combined = knot_group.free_product(&spun.knot_group);
        let m = combined.renaming.apply(&spun.meridian_knot);
        identifications.push(meridians.last().expect("nonempty").mul(&m.inverse()));
        meridians.push(m);
        knot_group = combined.presentation;
        components.push(spun);
    }
    let knot_group = knot_group.quotient_by_normal_closure(&identifications)?;
    Ok(MultiSpinResult {
        knot_group,
        meridian: meridians[0].clone(),
        component_meridians: meridians,
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionResult {
    /// Equal to the input knot group.
    pub knot_group: Presentation,
    /// `Ḡ *_G Ḡ`
    pub boundary_group: Presentation,
    /// Both copies of Ḡ mapped identically onto the knot group.
    pub inclusion: GroupMap,
    /// Renaming of the second copy of Ḡ.
    pub renaming: Renaming,
}

/// Suspension of a pair whose singular set has `singular_components`
/// components; only the connected case is computed.
pub fn suspension(pair: &KnotGroupPair, singular_components: usize) -> Result<SuspensionResult, ConstructionError> {
    if singular_components != 1 {
        return Err(ConstructionError::DisconnectedSingularSet(singular_components));
    }
    let ambient = pair.ambient();
    let combined = ambient.free_product(ambient);
    let amalgam: Vec<Word> = pair
        .inclusion()
        .images()
        .iter()
        .map(|w| w.mul(&combined.renaming.apply(w).inverse()))
        .collect();
    let boundary_group = combined.presentation.quotient_by_normal_closure(&amalgam)?;
    let images: Vec<Word> = ambient
        .generators()
        .iter()
        .chain(ambient.generators())
        .map(Word::generator)
        .collect();
    let inclusion = GroupMap::from_images(boundary_group.clone(), ambient.clone(), images)?;
    Ok(SuspensionResult {
        knot_group: ambient.clone(),
        boundary_group,
        inclusion,
        renaming: combined.renaming,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    SimplyConnected,
    TwoConnected,
    General,
}

impl std::str::FromStr for Connectivity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.replace('-', "_").as_str() {
            "simply_connected" => Ok(Connectivity::SimplyConnected),
            "two_connected" | "2_connected" => Ok(Connectivity::TwoConnected),
            "general" => Ok(Connectivity::General),
            _ => Err(format!("unknown connectivity {s:?}")),
        }
    }
}

/// What the link knot group and the stratum's π₁ determine about the
/// boundary group `G` when the singular set is a single manifold stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StratumReport {
    /// `π₁(L - ℓ) ≅ G`; the Kervaire conditions are checked on it with the
    /// link meridian as `g`.
    Isomorphism {
        boundary_group: String,
        kervaire: Box<KervaireReport>,
    },
    /// `π₁(L - ℓ) → G` is onto. No presentation of `G` follows, but the
    /// image of a weight-one element of the link group has weight one in `G`.
    Surjection {
        source: String,
        lambda: String,
        lambda_weight_one_in_source: ConditionStatus,
    },
    /// Only the exact sequence `π₁(L - ℓ) → G → π₁(M) → 1` is known.
    Constraints {
        sequence: Vec<String>,
        link_group: String,
        stratum_group: String,
    },
}

pub fn single_stratum_report(
    link_group: &Presentation,
    lambda: &Word,
    m_group: &Presentation,
    connectivity: Connectivity,
    budget: usize,
) -> Result<StratumReport, ConstructionError> {
    link_group.check_word(lambda)?;
    Ok(match connectivity {
        Connectivity::TwoConnected => StratumReport::Isomorphism {
            boundary_group: link_group.to_string(),
            kervaire: Box::new(kervaire_report(link_group, lambda, budget)?),
        },
        Connectivity::SimplyConnected => StratumReport::Surjection {
            source: link_group.to_string(),
            lambda: lambda.to_string(),
            lambda_weight_one_in_source: check_weight_one(link_group, lambda, budget)?,
        },
        Connectivity::General => StratumReport::Constraints {
            sequence: vec![
                format!("pi1(L - l) = {link_group}"),
                "G".to_string(),
                format!("pi1(M) = {m_group}"),
                "1".to_string(),
            ],
            link_group: link_group.to_string(),
            stratum_group: m_group.to_string(),
        },
    })
}
