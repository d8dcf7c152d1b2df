//! Command-line interface: ring ingestion from JSON files or corpus keys,
//! every report as versioned JSON on standard output, Hasse diagrams as
//! DOT, and the reproducible acceptance runner.
//!
//! Exit codes follow a strict three-way split: 0 for success, 1 for a
//! domain error (a well-formed invocation whose mathematical precondition
//! failed — noncommutative input to a commutative engine, an index out of
//! range, an unreadable or invalid ring file), and 2 for a usage error
//! (the argument parser rejected the invocation). Domain errors print a
//! structured JSON object naming the failed precondition on standard
//! error.
//!
//! Output is deterministic: JSON objects serialize with sorted keys, every
//! set is ordered, and identical invocations produce byte-identical bytes.
//! Ring arguments are file paths to schema-1 JSON descriptions; a name
//! that is not an existing file is looked up as a corpus key (`zmod6`,
//! `m2f2`, …), so the standard rings need no files on disk.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance;
use crate::corpus::{corpus_ring, standard_corpus};
use crate::graded::{graded_correspondence, TwistedLaurentAlgebra};
use crate::ideals::{
    is_nilpotent, is_quasi_nilpotent, is_self_localized, is_simple, is_von_neumann_regular,
    jacobson_radical, Ideal,
};
use crate::localization::{localize, prime_ideals};
use crate::morphism::{analyze_morphism, hom_search, spectral_map};
use crate::rewrite::{reduce, Budget, Halt, LocalizationPresentation};
use crate::ring::{Elem, FiniteRing, RingAut, RingHom};
use crate::sheaf::{structure_sheaf, verify_sheaf_condition};
use crate::specfile::{parse_ring_spec, SCHEMA_VERSION};
use crate::spectrum::{closed_subscheme_compare, full_spectrum, z_locus, FullSpectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "fscheme",
    version,
    about = "Exact computation with finite rings: localizations, full spectra, structure sheaves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingArg {
    /// Ring description: a JSON file path, or a corpus key such as `zmod6`.
    ring: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classification predicates: commutative, local, simple, regular, …
    Classify(RingArg),
    /// Prime ideals of a commutative ring.
    Spec(RingArg),
    /// Ring of fractions at the saturation of a seed set.
    Localize {
        #[command(flatten)]
        ring: RingArg,
        /// Comma-separated element indices to invert.
        #[arg(long)]
        invert: String,
    },
    /// All fully invertible subsets with their specialization order.
    Fullspec {
        #[command(flatten)]
        ring: RingArg,
        /// Emit a DOT Hasse diagram instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Closed locus of an ideal and its comparison with the quotient spectrum.
    Locus {
        #[command(flatten)]
        ring: RingArg,
        /// Comma-separated generators of the ideal.
        #[arg(long)]
        ideal: String,
    },
    /// Verify the sheaf condition and the canonical isomorphisms.
    SheafCheck(RingArg),
    /// The stalk of the structure sheaf at one spectrum point.
    Stalk {
        #[command(flatten)]
        ring: RingArg,
        /// Point index in canonical spectrum order.
        #[arg(long)]
        point: usize,
    },
    /// Compare the local-stalk subspace with the prime spectrum.
    CompareSpec(RingArg),
    /// Ring maps between two rings and their spectral behaviour.
    Morphism {
        /// Source ring (file or corpus key).
        source: String,
        /// Target ring (file or corpus key).
        target: String,
        /// Optional explicit map as comma-separated images of 0..order.
        #[arg(long)]
        map: Option<String>,
    },
    /// Symbolic inversion: reduce expressions, search inverse witnesses.
    #[command(group(ArgGroup::new("task").required(true).multiple(true).args(["expr", "witness"])))]
    FreeLoc {
        #[command(flatten)]
        ring: RingArg,
        /// Comma-separated element indices declared invertible.
        #[arg(long)]
        invert: String,
        /// Expression over the presentation, e.g. "a2 * x3 + 1".
        #[arg(long)]
        expr: Option<String>,
        /// Element index to search a two-sided inverse witness for.
        #[arg(long)]
        witness: Option<usize>,
    },
    /// Twisted Laurent algebra: twist law, graded correspondence, crossed products.
    Graded {
        #[command(flatten)]
        ring: RingArg,
        /// Automorphism as comma-separated images of 0..order (default: identity).
        #[arg(long)]
        sigma: Option<String>,
        /// Degree window (1..=8).
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
    /// The canonical ring corpus: list it, or run the acceptance suite on it.
    Corpus {
        #[arg(value_enum, default_value_t = CorpusAction::List)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusAction {
    List,
    Run,
}

/// A well-formed invocation whose mathematical precondition failed.
struct DomainError(String);

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

type CmdResult = Result<String, DomainError>;

/// Entry point for the binary: parse `std::env::args`, print, exit-code.
pub fn run_main() -> i32 {
    let (code, stdout, stderr) = run_captured(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    code
}

/// Run an invocation and capture its streams; the testable core.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful output, not errors.
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (EXIT_OK, e.to_string(), String::new())
                }
                _ => (EXIT_USAGE, String::new(), e.to_string()),
            };
        }
    };
    match execute(cli.command) {
        Ok(payload) => (EXIT_OK, payload, String::new()),
        Err(DomainError(msg)) => {
            let err = json!({ "schema": SCHEMA_VERSION, "error": msg });
            (EXIT_DOMAIN, String::new(), format!("{err}\n"))
        }
    }
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Classify(arg) => classify(&load_ring(&arg.ring)?),
        Command::Spec(arg) => spec(&load_ring(&arg.ring)?),
        Command::Localize { ring, invert } => {
            let ring = load_ring(&ring.ring)?;
            let seed = parse_elems(&ring, &invert)?;
            localize_cmd(&ring, &seed)
        }
        Command::Fullspec { ring, dot } => {
            let ring = load_ring(&ring.ring)?;
            fullspec_cmd(&ring, dot)
        }
        Command::Locus { ring, ideal } => {
            let ring = load_ring(&ring.ring)?;
            let gens = parse_elems(&ring, &ideal)?;
            locus_cmd(&ring, &gens)
        }
        Command::SheafCheck(arg) => sheaf_check(&load_ring(&arg.ring)?),
        Command::Stalk { ring, point } => stalk_cmd(&load_ring(&ring.ring)?, point),
        Command::CompareSpec(arg) => compare_spec(&load_ring(&arg.ring)?),
        Command::Morphism {
            source,
            target,
            map,
        } => morphism_cmd(&load_ring(&source)?, &load_ring(&target)?, map.as_deref()),
        Command::FreeLoc {
            ring,
            invert,
            expr,
            witness,
        } => {
            let ring = load_ring(&ring.ring)?;
            let inverted = parse_elems(&ring, &invert)?;
            free_loc_cmd(&ring, inverted, expr.as_deref(), witness)
        }
        Command::Graded {
            ring,
            sigma,
            window,
        } => {
            let ring = load_ring(&ring.ring)?;
            graded_cmd(&ring, sigma.as_deref(), window)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => corpus_list(),
            CorpusAction::Run => corpus_run(),
        },
    }
}

/// Resolve a ring argument: existing file → schema-1 JSON; otherwise a
/// corpus key.
fn load_ring(arg: &str) -> Result<FiniteRing, DomainError> {
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg)
            .map_err(|e| DomainError(format!("cannot read ring file {arg}: {e}")))?;
        return Ok(parse_ring_spec(&text)?);
    }
    corpus_ring(arg).ok_or_else(|| {
        DomainError(format!(
            "ring argument {arg} is neither an existing file nor a corpus key"
        ))
    })
}

/// Parse a comma-separated element index list against a ring.
fn parse_elems(ring: &FiniteRing, text: &str) -> Result<BTreeSet<Elem>, DomainError> {
    let mut out = BTreeSet::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let idx: usize = part
            .parse()
            .map_err(|_| DomainError(format!("element index {part} is not a number")))?;
        let e = Elem(idx);
        ring.check_elem(e)?;
        out.insert(e);
    }
    Ok(out)
}

fn parse_map(len: usize, text: &str) -> Result<Vec<usize>, DomainError> {
    let map: Vec<usize> = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| DomainError(format!("map entry {p} is not a number")))
        })
        .collect::<Result<_, _>>()?;
    if map.len() != len {
        return Err(DomainError(format!(
            "map has {} entries but the source ring has order {len}",
            map.len()
        )));
    }
    Ok(map)
}

fn indices(set: &BTreeSet<Elem>) -> Vec<usize> {
    set.iter().map(|e| e.0).collect()
}

fn named(ring: &FiniteRing, set: &BTreeSet<Elem>) -> Vec<String> {
    set.iter().map(|&e| ring.name(e).to_string()).collect()
}

fn render(command: &str, body: Value) -> CmdResult {
    let mut obj = body;
    let map = obj.as_object_mut().expect("reports are JSON objects");
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&obj).expect("reports serialize")
    ))
}

fn ring_header(ring: &FiniteRing) -> Value {
    json!({
        "label": ring.label(),
        "order": ring.order(),
    })
}

fn classify(ring: &FiniteRing) -> CmdResult {
    let quasi: Vec<usize> = ring
        .elements()
        .filter(|&a| is_quasi_nilpotent(ring, a))
        .map(|a| a.0)
        .collect();
    let nil: Vec<usize> = ring
        .elements()
        .filter(|&a| is_nilpotent(ring, a))
        .map(|a| a.0)
        .collect();
    render(
        "classify",
        json!({
            "ring": ring_header(ring),
            "commutative": ring.is_commutative(),
            "local_ring": ring.is_local_ring(),
            "self_localized": is_self_localized(ring),
            "simple": is_simple(ring),
            "von_neumann_regular": is_von_neumann_regular(ring),
            "units": indices(&ring.units()),
            "jacobson_radical": indices(&jacobson_radical(ring).members),
            "quasi_nilpotent": quasi,
            "nilpotent": nil,
        }),
    )
}

fn spec(ring: &FiniteRing) -> CmdResult {
    ring.require_commutative()?;
    let primes: Vec<Value> = prime_ideals(ring)
        .iter()
        .map(|p| {
            json!({
                "members": indices(&p.members),
                "names": named(ring, &p.members),
            })
        })
        .collect();
    render(
        "spec",
        json!({
            "ring": ring_header(ring),
            "prime_count": primes.len(),
            "primes": primes,
        }),
    )
}

fn localize_cmd(ring: &FiniteRing, seed: &BTreeSet<Elem>) -> CmdResult {
    let loc = localize(ring, seed)?;
    let classes: Vec<Value> = loc
        .fractions
        .elements()
        .map(|c| {
            let (a, s) = loc.rep(c);
            json!({
                "class": c.0,
                "rep": format!("{}/{}", ring.name(a), ring.name(s)),
            })
        })
        .collect();
    render(
        "localize",
        json!({
            "ring": ring_header(ring),
            "seed": indices(seed),
            "saturation": indices(&loc.set),
            "fraction_order": loc.fractions.order(),
            "kernel": indices(&loc.kernel()),
            "fraction_ring_is_local": loc.fractions.is_local_ring(),
            "canonical_map": ring.elements().map(|a| loc.to_fractions.apply(a).0).collect::<Vec<_>>(),
            "classes": classes,
        }),
    )
}

fn point_json(spec: &FullSpectrum, i: usize) -> Value {
    let p = &spec.points[i];
    json!({
        "index": i,
        "members": indices(&p.members),
        "names": named(&spec.ring, &p.members),
        "witness_ideal": indices(&p.witness_ideal),
    })
}

fn fullspec_cmd(ring: &FiniteRing, dot: bool) -> CmdResult {
    let spec = full_spectrum(ring)?;
    if dot {
        return Ok(render_dot(&spec));
    }
    let points: Vec<Value> = (0..spec.len()).map(|i| point_json(&spec, i)).collect();
    let mut order = Vec::new();
    for i in 0..spec.len() {
        for j in 0..spec.len() {
            if i != j && spec.leq(i, j) {
                order.push(json!([i, j]));
            }
        }
    }
    render(
        "fullspec",
        json!({
            "ring": ring_header(ring),
            "commutative": spec.commutative,
            "point_count": spec.len(),
            "center": 0,
            "points": points,
            "specialization": order,
        }),
    )
}

/// Hasse diagram in DOT: nodes are points labelled by member bitmask and
/// pretty element list; edges are covering relations; the center is filled.
fn render_dot(spec: &FullSpectrum) -> String {
    let mask = |i: usize| -> u64 {
        spec.points[i]
            .members
            .iter()
            .fold(0u64, |m, e| m | (1u64 << e.0))
    };
    let mut out = String::from("digraph fullspec {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..spec.len() {
        let pretty = named(&spec.ring, &spec.points[i].members).join(", ");
        let highlight = if i == 0 {
            ", style=filled, fillcolor=lightblue"
        } else {
            ""
        };
        out.push_str(&format!(
            "  p{} [label=\"P{} = {{{pretty}}}\"{highlight}];\n",
            mask(i),
            mask(i)
        ));
    }
    for i in 0..spec.len() {
        for j in 0..spec.len() {
            if i == j || !spec.leq(i, j) {
                continue;
            }
            let covering = (0..spec.len())
                .all(|k| k == i || k == j || !(spec.leq(i, k) && spec.leq(k, j)));
            if covering {
                out.push_str(&format!("  p{} -> p{};\n", mask(i), mask(j)));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn locus_cmd(ring: &FiniteRing, gens: &BTreeSet<Elem>) -> CmdResult {
    ring.require_commutative()?;
    let ideal = Ideal::generated(ring, gens);
    let spec = full_spectrum(ring)?;
    let locus = z_locus(&spec, &ideal)?;
    let comparison = if ideal.is_proper(ring) {
        let cmp = closed_subscheme_compare(ring, &ideal)?;
        json!({
            "quotient_points": cmp.point_map,
            "bijective": cmp.bijective,
            "order_isomorphic": cmp.order_isomorphic,
            "stalks_isomorphic": cmp.stalks_isomorphic,
            "holds": cmp.holds(),
        })
    } else {
        Value::Null
    };
    render(
        "locus",
        json!({
            "ring": ring_header(ring),
            "generators": indices(gens),
            "ideal": indices(&ideal.members),
            "locus_points": locus.points,
            "closure": locus.closure,
            "quotient_comparison": comparison,
        }),
    )
}

fn sheaf_check(ring: &FiniteRing) -> CmdResult {
    ring.require_commutative()?;
    let spec = full_spectrum(ring)?;
    let sheaf = structure_sheaf(&spec)?;
    let verdict = verify_sheaf_condition(&sheaf.opens, &sheaf);
    let stalks: Vec<Value> = (0..spec.len())
        .map(|i| -> Result<Value, DomainError> {
            Ok(json!({
                "point": i,
                "order": sheaf.stalk(i)?.ring.order(),
                "iso_to_localization": sheaf.stalk_iso(i)?.is_bijective(),
            }))
        })
        .collect::<Result<_, _>>()?;
    render(
        "sheaf-check",
        json!({
            "ring": ring_header(ring),
            "open_sets": sheaf.opens.len(),
            "covers_checked": verdict.covers_checked,
            "sheaf_condition": verdict.holds,
            "counterexample": verdict.counterexample,
            "global_sections_order": sheaf.global_sections().ring.order(),
            "global_iso_bijective": sheaf.global_iso()?.is_bijective(),
            "stalks": stalks,
        }),
    )
}

fn stalk_cmd(ring: &FiniteRing, point: usize) -> CmdResult {
    ring.require_commutative()?;
    let spec = full_spectrum(ring)?;
    if point >= spec.len() {
        return Err(DomainError(format!(
            "point index {point} out of range: the spectrum has {} points",
            spec.len()
        )));
    }
    let sheaf = structure_sheaf(&spec)?;
    let stalk = sheaf.stalk(point)?;
    let loc = localize(ring, &spec.points[point].members)?;
    let classes: Vec<Value> = loc
        .fractions
        .elements()
        .map(|c| {
            let (a, s) = loc.rep(c);
            json!({
                "class": c.0,
                "rep": format!("{}/{}", ring.name(a), ring.name(s)),
            })
        })
        .collect();
    render(
        "stalk",
        json!({
            "ring": ring_header(ring),
            "point": point_json(&spec, point),
            "stalk_order": stalk.ring.order(),
            "iso_to_localization": sheaf.stalk_iso(point)?.is_bijective(),
            "localization_is_local": loc.fractions.is_local_ring(),
            "classes": classes,
        }),
    )
}

fn compare_spec(ring: &FiniteRing) -> CmdResult {
    let cmp = crate::sheaf::compare_l_with_spec(ring)?;
    render(
        "compare-spec",
        json!({
            "ring": ring_header(ring),
            "prime_count": cmp.prime_count,
            "local_point_count": cmp.local_count,
            "point_of_prime": cmp.point_of_prime,
            "points_match": cmp.matched,
            "topology_agrees": cmp.topology_agrees,
            "stalks_agree": cmp.stalks_agree,
            "holds": cmp.holds(),
        }),
    )
}

fn hom_json(phi: &RingHom) -> Value {
    let map: Vec<usize> = phi.source.elements().map(|a| phi.apply(a).0).collect();
    json!({ "map": map, "local": phi.is_local() })
}

fn morphism_cmd(source: &FiniteRing, target: &FiniteRing, map: Option<&str>) -> CmdResult {
    let homs = match map {
        Some(text) => {
            let map = parse_map(source.order(), text)?;
            vec![RingHom::new(source.clone(), target.clone(), map)?]
        }
        None => hom_search(source, target),
    };
    let reports: Vec<Value> = homs
        .iter()
        .map(|phi| -> Result<Value, DomainError> {
            let spectral = spectral_map(phi)?;
            let mut body = json!({
                "hom": hom_json(phi),
                "spectral_map": spectral.map,
                "continuous": spectral.continuous,
                "monotone": spectral.monotone,
            });
            if source.is_commutative() && target.is_commutative() {
                let analysis = analyze_morphism(phi)?;
                let obj = body.as_object_mut().unwrap();
                obj.insert("stalk_maps_local".into(), json!(analysis.stalk_maps_local));
                obj.insert("global_readback".into(), json!(analysis.roundtrip));
                obj.insert("local_to_local".into(), json!(analysis.local_to_local));
            }
            Ok(body)
        })
        .collect::<Result<_, _>>()?;
    render(
        "morphism",
        json!({
            "source": ring_header(source),
            "target": ring_header(target),
            "hom_count": reports.len(),
            "morphisms": reports,
        }),
    )
}

fn free_loc_cmd(
    ring: &FiniteRing,
    inverted: BTreeSet<Elem>,
    expr: Option<&str>,
    witness: Option<usize>,
) -> CmdResult {
    let pres = LocalizationPresentation::new(ring, inverted.clone())?;
    let budget = Budget::default();
    let mut body = json!({
        "ring": ring_header(ring),
        "inverted": indices(&inverted),
        "max_degree": budget.max_degree,
        "max_steps": budget.max_steps,
    });
    let obj = body.as_object_mut().unwrap();
    if let Some(src) = expr {
        let poly = pres.expression(src)?;
        let outcome = reduce(&poly, &budget);
        obj.insert(
            "reduction".into(),
            json!({
                "input": poly.to_string(),
                "normal_form": outcome.poly.to_string(),
                "steps": outcome.steps,
                "halt": match outcome.halt {
                    Halt::Normal => "normal",
                    Halt::StepBudget => "step-budget",
                    Halt::DegreeBudget => "degree-budget",
                },
                "is_one": outcome.poly.is_one(),
                "is_zero": outcome.poly.is_zero(),
            }),
        );
    }
    if let Some(idx) = witness {
        let e = Elem(idx);
        ring.check_elem(e)?;
        let found = pres.invertibility_witness(e)?;
        obj.insert(
            "witness".into(),
            match found {
                Some(w) => json!({
                    "element": idx,
                    "found": true,
                    "left": w.left.to_string(),
                    "right": w.right.to_string(),
                }),
                None => json!({ "element": idx, "found": false }),
            },
        );
    }
    render("free-loc", body)
}

fn graded_cmd(ring: &FiniteRing, sigma: Option<&str>, window: i64) -> CmdResult {
    let sigma = match sigma {
        Some(text) => RingAut::new(ring, parse_map(ring.order(), text)?)?,
        None => RingAut::identity(ring),
    };
    let alg = TwistedLaurentAlgebra::new(ring, sigma, window)?;
    let law = alg.twist_law_report()?;
    let correspondence = graded_correspondence(&alg)?;
    let points: Vec<Value> = correspondence
        .points
        .iter()
        .map(|p| {
            json!({
                "base": indices(&p.base),
                "sigma_stable": p.sigma_stable,
                "round_trip": p.round_trip,
                "closure_matches_stability": p.closure_matches_stability,
            })
        })
        .collect();
    let crossed: Vec<Value> = alg
        .ring
        .units()
        .iter()
        .map(|&c| -> Result<Value, DomainError> {
            let cp = alg.crossed_product(c)?;
            let map: Vec<usize> = alg.ring.elements().map(|a| cp.sigma_prime.apply(a).0).collect();
            Ok(json!({
                "unit": c.0,
                "sigma_prime": map,
                "conjugation_verified": cp.conjugation_verified,
            }))
        })
        .collect::<Result<_, _>>()?;
    render(
        "graded",
        json!({
            "ring": ring_header(ring),
            "window": window,
            "sigma": ring.elements().map(|a| alg.sigma.apply(a).0).collect::<Vec<_>>(),
            "twist_law": { "holds": law.holds, "checked": law.checked },
            "correspondence": {
                "points": points,
                "stable_count": correspondence.stable_count,
                "holds": correspondence.holds(),
            },
            "crossed_products": crossed,
        }),
    )
}

fn corpus_list() -> CmdResult {
    let entries: Vec<Value> = standard_corpus()
        .iter()
        .map(|e| {
            json!({
                "key": e.key,
                "label": e.ring.label(),
                "order": e.ring.order(),
                "commutative": e.ring.is_commutative(),
            })
        })
        .collect();
    render(
        "corpus",
        json!({
            "count": entries.len(),
            "rings": entries,
        }),
    )
}

fn corpus_run() -> CmdResult {
    let reports = acceptance::run_all();
    let all_passed = reports.iter().all(|r| r.passed);
    let criteria: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "number": r.number,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
            })
        })
        .collect();
    render(
        "corpus",
        json!({
            "criteria": criteria,
            "all_passed": all_passed,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["fscheme"];
        argv.extend_from_slice(args);
        run_captured(argv)
    }

    #[test]
    fn classify_reports_the_noncommutative_flags_of_the_matrix_ring() {
        let (code, out, err) = run(&["classify", "m2f2"]);
        assert_eq!(code, EXIT_OK, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["command"], "classify");
        assert_eq!(v["self_localized"], true);
        assert_eq!(v["simple"], true);
        assert_eq!(v["von_neumann_regular"], true);
        assert_eq!(v["commutative"], false);
    }

    #[test]
    fn fullspec_dot_draws_the_three_point_hasse_diagram_with_filled_center() {
        let (code, out, _) = run(&["fullspec", "zmod6", "--dot"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("digraph fullspec {"));
        // Center {1,5} has bitmask 34 and is the only filled node.
        assert!(out.contains("p34 [label=\"P34 = {1, 5}\", style=filled"));
        assert_eq!(out.matches("style=filled").count(), 1);
        assert_eq!(out.matches(" -> ").count(), 2);
    }

    #[test]
    fn fullspec_json_lists_points_with_specialization_pairs() {
        let (code, out, _) = run(&["fullspec", "zmod6"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["point_count"], 3);
        assert_eq!(v["center"], 0);
        assert_eq!(v["specialization"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn commutative_only_commands_exit_with_domain_code_on_matrix_input() {
        for args in [
            vec!["spec", "m2f2"],
            vec!["sheaf-check", "m2f2"],
            vec!["stalk", "m2f2", "--point", "0"],
            vec!["locus", "m2f2", "--ideal", "0"],
        ] {
            let (code, out, err) = run(&args);
            assert_eq!(code, EXIT_DOMAIN, "{args:?}");
            assert!(out.is_empty());
            let v: Value = serde_json::from_str(&err).unwrap();
            assert!(v["error"].as_str().unwrap().contains("not commutative"));
        }
    }

    #[test]
    fn usage_errors_exit_with_code_two() {
        let (code, _, err) = run(&["no-such-command"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
        let (code, _, _) = run(&["localize", "zmod6"]); // missing --invert
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run(&["free-loc", "zmod6", "--invert", "2"]); // no task
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn localize_reports_the_fraction_ring_with_reps() {
        let (code, out, _) = run(&["localize", "zmod6", "--invert", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["fraction_order"], 3);
        assert_eq!(v["saturation"], json!([1, 2, 4, 5]));
        assert_eq!(v["kernel"], json!([0, 3]));
    }

    #[test]
    fn identical_invocations_produce_identical_bytes() {
        let first = run(&["fullspec", "zmod30"]);
        let second = run(&["fullspec", "zmod30"]);
        assert_eq!(first, second);
        assert_eq!(first.0, EXIT_OK);
    }

    #[test]
    fn unknown_rings_and_bad_indices_are_domain_errors() {
        let (code, _, err) = run(&["classify", "zmod999"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("neither an existing file nor a corpus key"));
        let (code, _, err) = run(&["localize", "zmod6", "--invert", "9"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("out of range"));
        let (code, _, err) = run(&["stalk", "zmod6", "--point", "7"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("out of range"));
    }

    #[test]
    fn free_loc_reduces_expressions_and_finds_witnesses() {
        let (code, out, _) = run(&[
            "free-loc", "zmod6", "--invert", "2", "--expr", "a2 * x2 + a3", "--witness", "4",
        ]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reduction"]["normal_form"], "a4");
        assert_eq!(v["reduction"]["halt"], "normal");
        assert_eq!(v["witness"]["found"], true);
    }

    #[test]
    fn graded_defaults_to_the_identity_twist() {
        let (code, out, _) = run(&["graded", "zmod6"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["twist_law"]["holds"], true);
        assert_eq!(v["correspondence"]["holds"], true);
        assert_eq!(v["correspondence"]["stable_count"], 3);
    }

    #[test]
    fn graded_accepts_an_explicit_automorphism() {
        let (code, out, _) = run(&["graded", "z2xz2", "--sigma", "0,2,1,3", "--window", "4"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["correspondence"]["stable_count"], 1);
        let (code, _, err) = run(&["graded", "z2xz2", "--sigma", "0,1,1,3"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("automorphism"));
    }

    #[test]
    fn corpus_list_names_all_nineteen_rings() {
        let (code, out, _) = run(&["corpus"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 19);
        assert_eq!(v["rings"][0]["key"], "zmod2");
    }

    #[test]
    fn morphism_enumerates_maps_with_spectral_reports() {
        let (code, out, _) = run(&["morphism", "zmod6", "zmod6"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["hom_count"], 1);
        assert_eq!(v["morphisms"][0]["continuous"], true);
        assert_eq!(v["morphisms"][0]["global_readback"], true);
        let (code, out, _) = run(&["morphism", "zmod12", "zmod6", "--map", "0,1,2,3,4,5,0,1,2,3,4,5"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["morphisms"][0]["monotone"], true);
    }

    #[test]
    fn compare_spec_reports_the_seven_point_count_for_zmod30() {
        let (code, out, _) = run(&["compare-spec", "zmod30"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["prime_count"], 3);
        assert_eq!(v["local_point_count"], 3);
        assert_eq!(v["holds"], true);
    }

    #[test]
    fn ring_files_load_through_the_schema() {
        let dir = std::env::temp_dir().join("fscheme-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("z4.json");
        std::fs::write(&path, r#"{"schema": 1, "kind": "zmod", "n": 4}"#).unwrap();
        let (code, out, _) = run(&["classify", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ring"]["order"], 4);
        assert_eq!(v["local_ring"], true);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn help_prints_on_stdout_with_success() {
        let (code, out, err) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("fullspec"));
        assert!(err.is_empty());
    }
}
