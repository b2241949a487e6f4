use knotpair::alexander::{is_type_k_cyclic, p_complex_homology, PComplexReport, TypeKCertificate};
use knotpair::catalog::{catalog, CatalogEntry};
use knotpair::constructions::{
    frame_twist_spin, single_stratum_report, Connectivity, KnotGroupPair, PairFile, SpinInput, StratumReport,
};
use knotpair::coset::{enumerate_cosets, EnumerationOutcome, DEFAULT_BUDGET};
use knotpair::homology::{simplicial_homology, GradedAbelian, SimplicialComplex};
use knotpair::kervaire::{kervaire_report, pair_report, KervaireReport, PairReport};
use knotpair::linalg::{abelianization, AbelianInvariants};
use knotpair::{parse_presentation, parse_presentation_any, parse_word, Presentation};
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, x);
}

#[test]
fn reports_round_trip() {
    for e in catalog() {
        let r = kervaire_report(&e.presentation, &e.meridian, DEFAULT_BUDGET).unwrap();
        round_trip::<KervaireReport>(&r);
        round_trip::<CatalogEntry>(e);
        round_trip::<Presentation>(&e.presentation);
    }
    let g = parse_presentation("<a | >").unwrap();
    let t = &catalog()[1];
    let r = pair_report(&g, &parse_word("a", &g).unwrap(), &t.presentation, &t.meridian, None, DEFAULT_BUDGET).unwrap();
    round_trip::<PairReport>(&r);
    assert!(r.all_satisfied());

    let out = enumerate_cosets(&parse_presentation("<a, b | a^2, b^3, (ab)^2>").unwrap(), &[], 1000).unwrap();
    round_trip::<EnumerationOutcome>(&out);

    let h = simplicial_homology(&SimplicialComplex::torus());
    round_trip::<GradedAbelian>(&h);
    round_trip::<PComplexReport>(&p_complex_homology(&"t + 1".parse().unwrap()).unwrap());
    round_trip::<TypeKCertificate>(&is_type_k_cyclic(&"2t - 1".parse().unwrap()).unwrap());

    let link = &t.presentation;
    let m = parse_presentation("<x, y | [x, y]>").unwrap();
    for c in [Connectivity::TwoConnected, Connectivity::SimplyConnected, Connectivity::General] {
        round_trip::<StratumReport>(&single_stratum_report(link, &t.meridian, &m, c, DEFAULT_BUDGET).unwrap());
    }
}

#[test]
fn pair_file_drives_a_spin() {
    let text = r#"{
        "boundary": "<c | >",
        "ambient": {"generators": ["a", "b"], "relators": [[["a",1],["b",1],["a",1],["b",-1],["a",-1],["b",-1]]]},
        "inclusion": {"c": "a"},
        "meridian_boundary": "c",
        "meridian_ambient": "a"
    }"#;
    let file: PairFile = serde_json::from_str(text).unwrap();
    let pair = file.clone().into_pair().unwrap();
    assert_eq!(pair.to_file().into_pair().unwrap(), pair);
    let spun = frame_twist_spin(&SpinInput::uniform(pair.clone(), parse_presentation("<x | >").unwrap(), 2)).unwrap();
    assert!(abelianization(&spun.knot_group).is_z());
    assert_eq!(abelianization(&spun.boundary_group), AbelianInvariants::free(2));
    assert!(serde_json::from_str::<PairFile>(r#"{"boundary": "<a|>", "ambient": "<a|>", "meridian_boundary": "a", "meridian_ambient": "a", "extra": 1}"#).is_err());
    assert!(KnotGroupPair::from_json(&text.replace("\"c\": \"a\"", "\"d\": \"a\"")).is_err());
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    let word = prop::collection::vec((0usize..3, any::<bool>(), 1i64..4), 0..5);
    prop::collection::vec(word, 0..4).prop_map(|rels| {
        let names = ["a", "b", "c"];
        let text: Vec<String> = rels
            .iter()
            .map(|w| {
                let parts: Vec<String> = w
                    .iter()
                    .map(|&(g, inv, k)| format!("{}^{}", names[g], if inv { -k } else { k }))
                    .collect();
                if parts.is_empty() { "1".to_string() } else { parts.join(" ") }
            })
            .collect();
        parse_presentation(&format!("<a, b, c | {}>", text.join(", "))).unwrap()
    })
}

proptest! {
    #[test]
    fn text_and_json_forms_agree(p in arb_presentation()) {
        let from_text = parse_presentation_any(&p.to_string()).unwrap();
        let from_json = parse_presentation_any(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(&from_text, &p);
        prop_assert_eq!(&from_json, &p);
        prop_assert_eq!(abelianization(&from_text), abelianization(&p));
    }
}
