mod input;
mod render;

use std::collections::BTreeMap;
use std::fmt::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knotpair::alexander::{is_type_k_cyclic, p_complex_homology, LaurentPoly};
use knotpair::catalog::{catalog, lookup};
use knotpair::constructions::{
    frame_twist_spin, knot_sum, single_stratum_report, suspension, Connectivity, SpinInput, StratumReport,
};
use knotpair::coset::DEFAULT_BUDGET;
use knotpair::homology::{predict_boundary_homology, simplicial_homology};
use knotpair::kervaire::{check_weight_one, kervaire_report, pair_report, ConditionStatus};
use knotpair::linalg::{abelianization, invariant_factors, relator_matrix};
use knotpair::tietze::tietze_simplify;
use knotpair::{GroupMap, Presentation, Word};
use serde_json::{json, Value};

use input::{CliError, Result};

const TIETZE_STEPS: usize = 10_000;

#[derive(Parser)]
#[command(name = "knotpair", version, about = "Knot group pairs: Kervaire conditions, constructions and homology checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit 1 when a verdict is Violated.
    #[arg(long, global = true)]
    strict: bool,
    /// Exit 1 when a verdict is Inconclusive.
    #[arg(long, global = true)]
    strict_inconclusive: bool,
    /// Coset budget for enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args, Clone, Default)]
struct KnotArgs {
    /// Catalog entry name, e.g. trefoil or torus(2,5).
    #[arg(long)]
    knot: Option<String>,
    /// Presentation text, or @file with text or JSON.
    #[arg(long)]
    presentation: Option<String>,
    /// Meridian word.
    #[arg(long)]
    meridian: Option<String>,
}

impl KnotArgs {
    fn resolve(&self) -> Result<(Presentation, Word)> {
        input::knot(self.knot.as_deref(), self.presentation.as_deref(), self.meridian.as_deref())
    }
}

#[derive(Args, Clone)]
struct PairArgs {
    /// Pair file (JSON); without it the identity pair on the knot is used.
    #[arg(long)]
    pair: Option<String>,
    #[command(flatten)]
    knot: KnotArgs,
}

impl PairArgs {
    fn resolve(&self) -> Result<knotpair::constructions::KnotGroupPair> {
        input::pair(
            self.pair.as_deref(),
            self.knot.knot.as_deref(),
            self.knot.presentation.as_deref(),
            self.knot.meridian.as_deref(),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and normalize a presentation.
    Parse {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        simplify: bool,
    },
    /// Abelianization via Smith normal form.
    Abelianize {
        #[arg(long)]
        presentation: String,
    },
    /// The four Kervaire conditions for a group and element.
    Kervaire {
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// Kervaire conditions on both groups of a pair plus the map checks.
    Pair {
        /// Pair file (JSON).
        #[arg(long)]
        pair: Option<String>,
        /// Ignore the pair file's inclusion and use the map through the
        /// abelianization.
        #[arg(long)]
        decoupled: bool,
        /// Boundary group, when no pair file is given.
        #[arg(long)]
        boundary: Option<String>,
        /// Boundary meridian, when no pair file is given.
        #[arg(long)]
        boundary_meridian: Option<String>,
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// Knot sum of two or more knot groups.
    Sum {
        /// Catalog entries, summed first.
        #[arg(long = "knot")]
        knots: Vec<String>,
        /// Presentations, summed after the catalog entries.
        #[arg(long = "presentation")]
        presentations: Vec<String>,
        /// One meridian per --presentation, in order.
        #[arg(long = "meridian")]
        meridians: Vec<String>,
        #[arg(long)]
        simplify: bool,
    },
    /// Frame twist-spin over a manifold with the given fundamental group.
    Spin {
        #[command(flatten)]
        pair: PairArgs,
        /// Fundamental group of the framed manifold.
        #[arg(long, default_value = "<x | >")]
        m: String,
        /// Twist degrees g=k[,g=k]*; omitted generators get degree 0.
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        simplify: bool,
    },
    /// Suspension of a pair.
    Suspend {
        #[command(flatten)]
        pair: PairArgs,
        /// Number of components of the singular set.
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long)]
        simplify: bool,
    },
    /// What a single manifold stratum determines about the boundary group.
    Stratum {
        /// Link knot group.
        #[arg(long)]
        presentation: String,
        /// Link meridian.
        #[arg(long)]
        meridian: String,
        /// Fundamental group of the stratum.
        #[arg(long)]
        m: String,
        /// simply-connected, two-connected or general.
        #[arg(long, default_value = "general")]
        connectivity: String,
    },
    #[command(subcommand)]
    Homology(HomologyCommand),
    #[command(subcommand)]
    Alexander(AlexanderCommand),
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum HomologyCommand {
    /// Integral homology of a simplicial complex.
    Simplicial {
        /// JSON file, inline JSON, or a built-in name (point, circle,
        /// sphere2, torus, circle_and_point).
        #[arg(long)]
        complex: String,
    },
    /// Boundary homology predicted from the singular set.
    Predict {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        ambient: usize,
    },
}

#[derive(Subcommand)]
enum AlexanderCommand {
    /// Is Λ/(p) of type K?
    Typek {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Homology of the complex P built from p.
    Pcomplex {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { name: String },
}

/// What a command produced, plus whether any verdict was negative.
struct Report {
    text: String,
    json: Value,
    violated: bool,
    inconclusive: bool,
}

impl Report {
    fn plain(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            violated: false,
            inconclusive: false,
        }
    }

    fn with_status<'a>(mut self, statuses: impl IntoIterator<Item = &'a ConditionStatus>) -> Self {
        for s in statuses {
            self.violated |= s.is_violated();
            self.inconclusive |= s.is_inconclusive();
        }
        self
    }
}

fn map_json(f: &GroupMap) -> Value {
    let images: BTreeMap<String, String> = f
        .source()
        .generators()
        .iter()
        .zip(f.images())
        .map(|(g, w)| (g.to_string(), w.to_string()))
        .collect();
    json!(images)
}

/// Simplified presentation and the image of `w` in it.
fn simplified(p: &Presentation, w: &Word) -> Result<(Presentation, Word, GroupMap)> {
    let out = tietze_simplify(p, TIETZE_STEPS);
    let w = out.substitution.apply(w)?;
    Ok((out.presentation, w, out.substitution))
}

fn invariants_json(p: &Presentation, meridian: &Word, budget: usize) -> Result<(Value, ConditionStatus)> {
    let weight_one = check_weight_one(p, meridian, budget)?;
    Ok((
        json!({ "abelianization": abelianization(p), "weight_one": weight_one }),
        weight_one,
    ))
}

fn run(cli: &Cli) -> Result<Report> {
    let budget = cli.budget;
    Ok(match &cli.command {
        Command::Parse { presentation, simplify } => {
            let p = input::presentation(presentation)?;
            let mut text = format!("{p}\n");
            let mut out = json!({
                "presentation": p.to_string(),
                "generators": p.generator_count(),
                "relators": p.relator_count(),
                "deficiency": p.deficiency(),
            });
            if *simplify {
                let s = tietze_simplify(&p, TIETZE_STEPS);
                let _ = writeln!(text, "simplified: {}", s.presentation);
                for (g, w) in p.generators().iter().zip(s.substitution.images()) {
                    let _ = writeln!(text, "  {g} -> {w}");
                }
                out["simplified"] = json!({
                    "presentation": s.presentation.to_string(),
                    "substitution": map_json(&s.substitution),
                    "complete": s.complete,
                    "steps": s.steps,
                });
            }
            Report::plain(text, out)
        }
        Command::Abelianize { presentation } => {
            let p = input::presentation(presentation)?;
            let ab = abelianization(&p);
            let diag: Vec<String> = invariant_factors(&relator_matrix(&p)).iter().map(ToString::to_string).collect();
            Report::plain(
                format!("{ab}\n"),
                json!({ "presentation": p.to_string(), "abelianization": ab, "smith_diagonal": diag }),
            )
        }
        Command::Kervaire { knot } => {
            let (p, m) = knot.resolve()?;
            let r = kervaire_report(&p, &m, budget)?;
            let statuses: Vec<ConditionStatus> = r.conditions().iter().map(|(_, s)| (*s).clone()).collect();
            Report::plain(render::kervaire(&r), serde_json::to_value(&r)?).with_status(&statuses)
        }
        Command::Pair {
            pair,
            decoupled,
            boundary,
            boundary_meridian,
            knot,
        } => {
            let (g, mg, gbar, mgbar, phi) = match pair {
                Some(path) => {
                    if boundary.is_some() || knot.knot.is_some() || knot.presentation.is_some() {
                        return Err(CliError::Usage("--pair cannot be combined with other group flags".into()));
                    }
                    let pair = input::pair_file(path)?;
                    let phi = (!decoupled).then(|| pair.inclusion().clone());
                    (
                        pair.boundary().clone(),
                        pair.meridian_boundary().clone(),
                        pair.ambient().clone(),
                        pair.meridian_ambient().clone(),
                        phi,
                    )
                }
                None => {
                    let b = boundary
                        .as_deref()
                        .ok_or_else(|| CliError::Usage("--boundary or --pair is required".into()))?;
                    let b = input::presentation(b)?;
                    let bm = boundary_meridian
                        .as_deref()
                        .ok_or_else(|| CliError::Usage("--boundary-meridian is required with --boundary".into()))?;
                    let bm = input::word(bm, &b)?;
                    let (gbar, mgbar) = knot.resolve()?;
                    (b, bm, gbar, mgbar, None)
                }
            };
            let r = pair_report(&g, &mg, &gbar, &mgbar, phi.as_ref(), budget)?;
            let mut text = String::new();
            for (name, s) in r.statuses() {
                let _ = writeln!(text, "{name}: {}", render::status(s));
            }
            let statuses: Vec<ConditionStatus> = r.statuses().iter().map(|(_, s)| (*s).clone()).collect();
            Report::plain(text, serde_json::to_value(&r)?).with_status(&statuses)
        }
        Command::Sum {
            knots,
            presentations,
            meridians,
            simplify,
        } => {
            if presentations.len() != meridians.len() {
                return Err(CliError::Usage("give one --meridian per --presentation".into()));
            }
            let mut parts = Vec::new();
            for k in knots {
                parts.push(input::knot(Some(k), None, None)?);
            }
            for (p, m) in presentations.iter().zip(meridians) {
                parts.push(input::knot(None, Some(p), Some(m))?);
            }
            if parts.len() < 2 {
                return Err(CliError::Usage("a knot sum needs at least two knots".into()));
            }
            let mut acc = parts[0].clone();
            for next in &parts[1..] {
                acc = knot_sum((&acc.0, &acc.1), (&next.0, &next.1))?;
            }
            if *simplify {
                let (p, m, _) = simplified(&acc.0, &acc.1)?;
                acc = (p, m);
            }
            let (inv, w1) = invariants_json(&acc.0, &acc.1, budget)?;
            let text = format!(
                "knot group: {}\nmeridian: {}\nabelianization: {}\nweight_one: {}\n",
                acc.0,
                acc.1,
                abelianization(&acc.0),
                render::status(&w1)
            );
            let out = json!({ "knot_group": acc.0.to_string(), "meridian": acc.1.to_string(), "invariants": inv });
            Report::plain(text, out).with_status([&w1])
        }
        Command::Spin { pair, m, tau, simplify } => {
            let pair = pair.resolve()?;
            let m = input::presentation(m)?;
            let mut degrees: BTreeMap<_, _> = m.generators().iter().map(|g| (g.clone(), 0)).collect();
            if let Some(t) = tau {
                degrees.extend(SpinInput::parse_degrees(t, &m)?);
            }
            let spun = frame_twist_spin(&SpinInput::new(pair, m, degrees))?;
            let (knot_group, meridian, inclusion) = if *simplify {
                let (p, w, sub) = simplified(&spun.knot_group, &spun.meridian_knot)?;
                let inc = spun.inclusion.then(&sub)?;
                (p, w, inc)
            } else {
                (spun.knot_group.clone(), spun.meridian_knot.clone(), spun.inclusion.clone())
            };
            let (inv, w1) = invariants_json(&knot_group, &meridian, budget)?;
            let boundary_ab = abelianization(&spun.boundary_group);
            let text = format!(
                "knot group: {knot_group}\nmeridian: {meridian}\nabelianization: {}\nweight_one: {}\n\
                 boundary group: {}\nboundary meridian: {}\nboundary abelianization: {boundary_ab}\n",
                abelianization(&knot_group),
                render::status(&w1),
                spun.boundary_group,
                spun.meridian_boundary,
            );
            let out = json!({
                "knot_group": knot_group.to_string(),
                "meridian": meridian.to_string(),
                "invariants": inv,
                "boundary_group": spun.boundary_group.to_string(),
                "boundary_meridian": spun.meridian_boundary.to_string(),
                "boundary_abelianization": boundary_ab,
                "inclusion": map_json(&inclusion),
                "simplified": simplify,
            });
            Report::plain(text, out).with_status([&w1])
        }
        Command::Suspend {
            pair,
            components,
            simplify,
        } => {
            let pair = pair.resolve()?;
            let s = suspension(&pair, *components)?;
            let (boundary, inclusion) = if *simplify {
                let t = tietze_simplify(&s.boundary_group, TIETZE_STEPS);
                // the simplified group maps to the knot group through the
                // inverse substitution, which Tietze does not record
                (t.presentation, None)
            } else {
                (s.boundary_group.clone(), Some(map_json(&s.inclusion)))
            };
            let ab = abelianization(&boundary);
            let text = format!(
                "knot group: {}\nboundary group: {boundary}\nboundary abelianization: {ab}\n",
                s.knot_group
            );
            let mut out = json!({
                "knot_group": s.knot_group.to_string(),
                "boundary_group": boundary.to_string(),
                "boundary_abelianization": ab,
                "simplified": simplify,
            });
            if let Some(inc) = inclusion {
                out["inclusion"] = inc;
            }
            Report::plain(text, out)
        }
        Command::Stratum {
            presentation,
            meridian,
            m,
            connectivity,
        } => {
            let link = input::presentation(presentation)?;
            let lambda = input::word(meridian, &link)?;
            let m = input::presentation(m)?;
            let conn: Connectivity = connectivity.parse().map_err(CliError::Usage)?;
            let r = single_stratum_report(&link, &lambda, &m, conn, budget)?;
            let (text, statuses) = match &r {
                StratumReport::Isomorphism { kervaire, .. } => (
                    format!("boundary group is the link group\n{}", render::kervaire(kervaire)),
                    kervaire.conditions().iter().map(|(_, s)| (*s).clone()).collect(),
                ),
                StratumReport::Surjection {
                    source,
                    lambda,
                    lambda_weight_one_in_source,
                } => (
                    format!(
                        "boundary group is a quotient of {source}\nweight one of {lambda} in the link group: {}\n",
                        render::status(lambda_weight_one_in_source)
                    ),
                    vec![lambda_weight_one_in_source.clone()],
                ),
                StratumReport::Constraints { sequence, .. } => {
                    (format!("exact: {}\n", sequence.join(" -> ")), Vec::new())
                }
            };
            Report::plain(text, serde_json::to_value(&r)?).with_status(&statuses)
        }
        Command::Homology(HomologyCommand::Simplicial { complex }) => {
            let k = input::complex(complex)?;
            let h = simplicial_homology(&k);
            let mut text = String::new();
            for (i, g) in h.groups().iter().enumerate() {
                let _ = writeln!(text, "H{i} = {g}");
            }
            let out = json!({
                "dimension": k.dimension(),
                "euler_characteristic": k.euler_characteristic(),
                "homology": h,
            });
            Report::plain(text, out)
        }
        Command::Homology(HomologyCommand::Predict { sigma, ambient }) => {
            let k = input::complex(sigma)?;
            let h = simplicial_homology(&k);
            let predicted = predict_boundary_homology(&h, *ambient)?;
            let mut text = String::new();
            for (i, g) in predicted.groups().iter().enumerate() {
                let _ = writeln!(text, "H{i} = {g}");
            }
            let out = json!({ "ambient": ambient, "sigma_homology": h, "predicted": predicted });
            Report::plain(text, out)
        }
        Command::Alexander(AlexanderCommand::Typek { poly }) => {
            let p: LaurentPoly = poly.parse()?;
            let c = is_type_k_cyclic(&p)?;
            let text = format!(
                "p = {}\np(1) = {}\ntype K: {}\n",
                c.polynomial,
                c.value_at_one,
                if c.type_k { "yes" } else { "no" }
            );
            let mut r = Report::plain(text, serde_json::to_value(&c)?);
            r.violated = !c.type_k;
            r
        }
        Command::Alexander(AlexanderCommand::Pcomplex { poly }) => {
            let p: LaurentPoly = poly.parse()?;
            let r = p_complex_homology(&p)?;
            let mut text = format!("p = {}\np(1) = {}\n", r.polynomial, r.value_at_one);
            for (i, (cover, base)) in r.cover.iter().zip(&r.quotient).enumerate() {
                let _ = writeln!(text, "H{i}: cover {cover}, quotient {base}");
            }
            let _ = writeln!(text, "milnor consistent: {}", r.milnor_consistent);
            let _ = writeln!(text, "homology circle: {}", r.homology_circle);
            let mut out = Report::plain(text, serde_json::to_value(&r)?);
            out.violated = !r.milnor_consistent;
            out
        }
        Command::Catalog(CatalogCommand::List) => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in catalog() {
                let _ = writeln!(text, "{:<11} {}  meridian {}", e.name, e.presentation, e.meridian);
                rows.push(json!({
                    "name": e.name,
                    "presentation": e.presentation.to_string(),
                    "meridian": e.meridian.to_string(),
                }));
            }
            Report::plain(text, Value::Array(rows))
        }
        Command::Catalog(CatalogCommand::Show { name }) => {
            let e = lookup(name).ok_or_else(|| CliError::Usage(format!("no catalog entry named {name:?}")))?;
            let r = kervaire_report(&e.presentation, &e.meridian, budget)?;
            let text = format!("name: {}\nmeridian: {}\n{}", e.name, e.meridian, render::kervaire(&r));
            let mut out = serde_json::to_value(e)?;
            out["report"] = serde_json::to_value(&r)?;
            let statuses: Vec<ConditionStatus> = r.conditions().iter().map(|(_, s)| (*s).clone()).collect();
            Report::plain(text, out).with_status(&statuses)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            if (cli.strict && report.violated) || (cli.strict_inconclusive && report.inconclusive) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
