//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knotpair::alexander::{p_complex_homology, LaurentPoly};
use knotpair::catalog::{catalog, CatalogEntry};
use knotpair::constructions::{frame_twist_spin, knot_sum, suspension, KnotGroupPair, SpinInput};
use knotpair::coset::{enumerate_cosets, DEFAULT_BUDGET};
use knotpair::homology::{circle_product, predict_boundary_homology, simplicial_homology, SimplicialComplex};
use knotpair::kervaire::{check_weight_one, kervaire_report};
use knotpair::linalg::{abelianization, smith_normal_form, AbelianInvariants, IntMatrix};
use knotpair::tietze::tietze_simplify;
use knotpair::{parse_presentation, parse_word, Presentation, Word};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pres(text: &str) -> Presentation {
    parse_presentation(text).expect("fixture presentation")
}

fn word(text: &str, p: &Presentation) -> Word {
    parse_word(text, p).expect("fixture word")
}

fn weight_one_label(p: &Presentation, w: &Word) -> Result<&'static str, String> {
    check_weight_one(p, w, DEFAULT_BUDGET).map(|s| s.label()).map_err(|e| e.to_string())
}

fn snf_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure(&(&s.left * &a) * &s.right == s.diagonal, || format!("trial {trial}: U A V != D"))?;
        ensure(s.left.determinant().abs().is_one(), || format!("trial {trial}: U not unimodular"))?;
        ensure(s.right.determinant().abs().is_one(), || format!("trial {trial}: V not unimodular"))?;
        ensure(s.diagonal.is_diagonal(), || format!("trial {trial}: D not diagonal"))?;
        let diag: Vec<BigInt> = (0..r.min(c)).map(|i| s.diagonal[(i, i)].clone()).collect();
        for pair in diag.windows(2) {
            let ok = if pair[0].is_zero() {
                pair[1].is_zero()
            } else {
                (&pair[1] % &pair[0]).is_zero()
            };
            ensure(ok && !pair[0].is_negative(), || format!("trial {trial}: divisibility chain {diag:?}"))?;
        }
        if r == c {
            let prod: BigInt = diag.iter().product();
            ensure(a.determinant().abs() == prod.abs(), || format!("trial {trial}: |det A| != prod D"))?;
        }
    }
    Ok("200 matrices".into())
}

fn kervaire_suite() -> Outcome {
    let trefoil = pres("<a, b | aba = bab>");
    let r = kervaire_report(&trefoil, &word("a", &trefoil), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.all_satisfied(), || format!("trefoil: {r:?}"))?;
    let free = pres("<a, b | >");
    let r = kervaire_report(&free, &word("a", &free), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.abelianization_z.is_violated(), || "free group of rank 2 not Violated".into())?;
    let z2 = pres("<a | a^2>");
    let r = kervaire_report(&z2, &word("a", &z2), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.abelianization_z.is_violated(), || "<a|a^2> not Violated".into())?;
    Ok("trefoil all Satisfied; F2 and Z/2 Violated".into())
}

fn coset_counts() -> Outcome {
    let index = |p: &Presentation, sub: &[Word]| {
        enumerate_cosets(p, sub, DEFAULT_BUDGET).map_err(|e| e.to_string()).map(|o| o.index())
    };
    let s3 = pres("<a, b | a^2, b^3, (ab)^2>");
    ensure(index(&s3, &[])? == Some(6), || "S3 index".into())?;
    for n in 1..=50 {
        let cyclic = pres(&format!("<a | a^{n}>"));
        let got = index(&cyclic, &[])?;
        ensure(got == Some(n), || format!("<a|a^{n}> gave {got:?}"))?;
    }
    let trefoil = pres("<a, b | aba = bab>");
    let q = trefoil
        .quotient_by_normal_closure(&[word("a", &trefoil)])
        .map_err(|e| e.to_string())?;
    ensure(index(&q, &[])? == Some(1), || "trefoil/<<a>> not trivial".into())?;
    Ok("S3 = 6, Z/n = n for n <= 50, trefoil quotient = 1".into())
}

fn trivial_tau_spin() -> Outcome {
    let m = pres("<x | >");
    for e in catalog() {
        let pair = KnotGroupPair::identity(&e.presentation, &e.meridian).map_err(|e| e.to_string())?;
        let spun = frame_twist_spin(&SpinInput::uniform(pair, m.clone(), 0)).map_err(|e| e.to_string())?;
        let simp = tietze_simplify(&spun.knot_group, 10_000);
        let meridian = simp.substitution.apply(&spun.meridian_knot).map_err(|e| e.to_string())?;
        let (before, after) = (abelianization(&e.presentation), abelianization(&simp.presentation));
        ensure(before == after, || format!("{}: abelianization {before} vs {after}", e.name))?;
        let (before, after) = (
            weight_one_label(&e.presentation, &e.meridian)?,
            weight_one_label(&simp.presentation, &meridian)?,
        );
        ensure(before == after, || format!("{}: weight one {before} vs {after}", e.name))?;
    }
    Ok(format!("{} catalog entries", catalog().len()))
}

/// SNF of the stacked relator rows of M, of Ḡ, and x_i - k·ḡ.
fn block_oracle(m: &Presentation, gbar: &Presentation, meridian: &Word, k: i64) -> AbelianInvariants {
    let (mg, ag) = (m.generator_count(), gbar.generator_count());
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for r in m.relators() {
        let mut row = m.exponent_vector(r);
        row.resize(mg + ag, 0);
        rows.push(row);
    }
    for r in gbar.relators() {
        let mut row = vec![0; mg];
        row.extend(gbar.exponent_vector(r));
        rows.push(row);
    }
    let mv = gbar.exponent_vector(meridian);
    for i in 0..mg {
        let mut row = vec![0; mg];
        row[i] = 1;
        row.extend(mv.iter().map(|&e| -k * e));
        rows.push(row);
    }
    let d = smith_normal_form(&IntMatrix::from_rows_with_cols(&rows, mg + ag));
    AbelianInvariants::from_invariant_factors(mg + ag, &d.invariant_factors())
}

fn spin_block_matrix() -> Outcome {
    let mut cases = 0;
    for e in catalog().iter().take(4) {
        let pair = KnotGroupPair::identity(&e.presentation, &e.meridian).map_err(|e| e.to_string())?;
        for m in ["<x | >", "<x | x^2>", "<x, y | [x, y]>"] {
            let m = pres(m);
            for k in 0..=3 {
                let spun = frame_twist_spin(&SpinInput::uniform(pair.clone(), m.clone(), k)).map_err(|e| e.to_string())?;
                let got = abelianization(&spun.knot_group);
                let want = block_oracle(&m, &e.presentation, &e.meridian, k);
                ensure(got == want, || format!("{} over {m}, k = {k}: {got} vs {want}", e.name))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn boundary_vs_homology() -> Outcome {
    let cases = [
        ("S^1", "<x | >", SimplicialComplex::circle()),
        ("torus", "<x, y | [x, y]>", SimplicialComplex::torus()),
    ];
    for e in catalog().iter().take(3) {
        let pair = KnotGroupPair::identity(&e.presentation, &e.meridian).map_err(|e| e.to_string())?;
        for (name, pi1, complex) in &cases {
            let m = pres(pi1);
            let spun = frame_twist_spin(&SpinInput::uniform(pair.clone(), m.clone(), 0)).map_err(|e| e.to_string())?;
            let h = simplicial_homology(complex);
            let n = complex.dimension() as usize + 6;
            let predicted = predict_boundary_homology(&h, n).map_err(|e| e.to_string())?.get(1);
            let direct = h.get(1).direct_sum(&AbelianInvariants::free(1));
            let group = abelianization(&spun.boundary_group);
            ensure(abelianization(&m) == h.get(1), || format!("{name}: pi1 does not abelianize to H1"))?;
            ensure(group == direct && direct == predicted, || {
                format!("{} over {name}: boundary {group}, H1+Z {direct}, predicted {predicted}", e.name)
            })?;
        }
    }
    Ok("S^1 -> Z^2, torus -> Z^3".into())
}

fn product_homology() -> Outcome {
    for (name, sigma) in SimplicialComplex::catalog() {
        let n = sigma.dimension() as usize + 6;
        let predicted = predict_boundary_homology(&simplicial_homology(&sigma), n).map_err(|e| e.to_string())?;
        let actual = simplicial_homology(&circle_product(&sigma));
        for i in 0..=n {
            let (p, a) = (predicted.get(i), actual.get(i));
            if i <= n - 3 {
                ensure(p == a, || format!("{name}, H{i}: predicted {p}, product {a}"))?;
            } else {
                ensure(p.is_trivial(), || format!("{name}, H{i} nonzero above n-3"))?;
            }
        }
    }
    Ok("5 complexes".into())
}

fn suspension_checks() -> Outcome {
    for e in catalog().iter().take(5) {
        let pair = KnotGroupPair::identity(&e.presentation, &e.meridian).map_err(|e| e.to_string())?;
        let s = suspension(&pair, 1).map_err(|e| e.to_string())?;
        ensure(s.knot_group == e.presentation, || format!("{}: knot group changed", e.name))?;
        ensure(s.knot_group.to_string() == e.presentation.to_string(), || format!("{}: text differs", e.name))?;
        let simp = tietze_simplify(&s.boundary_group, 10_000).presentation;
        let (got, want) = (abelianization(&simp), abelianization(&e.presentation));
        ensure(got == want, || format!("{}: id suspension boundary {got} vs {want}", e.name))?;
    }
    let trefoil = catalog().iter().find(|e| e.name == "trefoil").expect("trefoil in catalog");
    let trivial = Presentation::trivial();
    let inclusion = knotpair::GroupMap::new(trivial, trefoil.presentation.clone(), BTreeMap::new()).map_err(|e| e.to_string())?;
    let pair = KnotGroupPair::new(inclusion, Word::identity(), trefoil.meridian.clone()).map_err(|e| e.to_string())?;
    let s = suspension(&pair, 1).map_err(|e| e.to_string())?;
    let ab = abelianization(&s.boundary_group);
    ensure(ab == AbelianInvariants::free(2), || format!("trivial G: boundary {ab}"))?;
    ensure(s.knot_group == trefoil.presentation, || "trivial G: knot group changed".into())?;
    Ok("identity inclusion and trivial G".into())
}

fn random_poly(rng: &mut ChaCha8Rng, accept: impl Fn(&BigInt) -> bool) -> LaurentPoly {
    loop {
        let len = rng.gen_range(1..=7);
        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-5..=5)).collect();
        let p = LaurentPoly::from_coefficients(rng.gen_range(-3..=3), &coeffs);
        if !p.is_zero() && accept(&p.evaluate_at_one().abs()) {
            return p;
        }
    }
}

fn p_complex_suite() -> Outcome {
    let circle = [1, 1, 0, 0].map(AbelianInvariants::free).to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut units = vec!["t - 1 + t^-1".parse::<LaurentPoly>().map_err(|e| e.to_string())?];
    units.extend((0..50).map(|_| random_poly(&mut rng, |v| v.is_one())));
    for p in &units {
        let r = p_complex_homology(p).map_err(|e| e.to_string())?;
        ensure(r.quotient == circle && r.milnor_consistent, || format!("p = {p}: {:?}", r.quotient))?;
    }
    for _ in 0..50 {
        let p = random_poly(&mut rng, |v| *v >= BigInt::from(2));
        let m = p.evaluate_at_one().abs();
        let r = p_complex_homology(&p).map_err(|e| e.to_string())?;
        let want = AbelianInvariants::from_elementary(0, std::slice::from_ref(&m));
        ensure(r.quotient[2] == want, || format!("p = {p}: H2 = {}, want Z/{m}", r.quotient[2]))?;
    }
    Ok("51 unit, 50 non-unit polynomials".into())
}

fn sum_invariants(parts: &[&CatalogEntry]) -> Result<(AbelianInvariants, &'static str), String> {
    let mut acc = (parts[0].presentation.clone(), parts[0].meridian.clone());
    for e in &parts[1..] {
        acc = knot_sum((&acc.0, &acc.1), (&e.presentation, &e.meridian)).map_err(|e| e.to_string())?;
    }
    Ok((abelianization(&acc.0), weight_one_label(&acc.0, &acc.1)?))
}

fn knot_sum_laws() -> Outcome {
    let entries = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..12 {
        let a = &entries[rng.gen_range(0..entries.len())];
        let b = &entries[rng.gen_range(0..entries.len())];
        let (ab, ba) = (sum_invariants(&[a, b])?, sum_invariants(&[b, a])?);
        ensure(ab == ba, || format!("{} # {}: {ab:?} vs {ba:?}", a.name, b.name))?;
    }
    for _ in 0..6 {
        let a = &entries[rng.gen_range(0..entries.len())];
        let b = &entries[rng.gen_range(0..entries.len())];
        let c = &entries[rng.gen_range(0..entries.len())];
        let left = sum_invariants(&[a, b, c])?;
        let bc = knot_sum((&b.presentation, &b.meridian), (&c.presentation, &c.meridian)).map_err(|e| e.to_string())?;
        let right = knot_sum((&a.presentation, &a.meridian), (&bc.0, &bc.1)).map_err(|e| e.to_string())?;
        let right = (abelianization(&right.0), weight_one_label(&right.0, &right.1)?);
        ensure(left == right, || format!("({} # {}) # {}: {left:?} vs {right:?}", a.name, b.name, c.name))?;
    }
    Ok("12 pairs, 6 triples".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 SNF soundness", Some(Duration::from_secs(5)), snf_soundness),
        ("2 Kervaire suite", Some(Duration::from_secs(1)), kervaire_suite),
        ("3 coset enumeration", Some(Duration::from_secs(2)), coset_counts),
        ("4 trivial-twist spin", None, trivial_tau_spin),
        ("5 spin abelianization vs block matrix", None, spin_block_matrix),
        ("6 boundary group vs predicted H1", None, boundary_vs_homology),
        ("7 predicted vs product homology", Some(Duration::from_secs(10)), product_homology),
        ("8 suspension", None, suspension_checks),
        ("9 P-complex", Some(Duration::from_secs(1)), p_complex_suite),
        ("10 knot sum commutativity and associativity", None, knot_sum_laws),
    ];
    // build the catalog outside any timed criterion
    let _ = catalog();
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] {name}: {detail} ({:.0?})", elapsed),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({:.0?})", elapsed);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
