//! Command dispatch for the `hyperion` binary.
//!
//! Every subcommand produces JSON on stdout plus optional human-readable
//! notes (printed to stderr by the binary). Exit codes distinguish outcomes
//! so shell pipelines can branch on them:
//!
//! - `0` — success,
//! - `1` — mathematical negative (not a root, failed check, violated bound),
//! - `2` — usage error (unknown names, syntax errors, unsupported ops).

pub mod parse;
pub mod svg;

use std::path::PathBuf;

use serde_json::json;

use hyperion::catalog::{hom_lookup, lookup};
use hyperion::lift::{kapranov_lift, lift_root_eta, rac_counterexamples};
use hyperion::roots::{
    certify_root_tc, check_inheritance, check_multiplicity_bound, check_pushforward_mult,
    finite_roots, multiplicity, tc_multiplicity_bound_witness, tropical_multiplicity,
    tropical_roots,
};
use hyperion::{Element, Family, Hyperfield};

use parse::{parse_element, parse_point, parse_polynomial, print_polynomial};

/// One fully specified invocation.
#[derive(Debug, Clone)]
pub enum Command {
    Eval { hyperfield: String, polynomial: String, at: String },
    Roots { hyperfield: String, polynomial: String },
    Mult { hyperfield: String, polynomial: String, at: String },
    Push { homomorphism: String, polynomial: String },
    Lift { hyperfield: String, polynomial: String, root: String },
    Kapranov { hyperfield: String, polynomial: String, root: String },
    Axioms { hyperfield: String, budget: u64, seed: u64 },
    HomCheck { homomorphism: String, budget: u64, seed: u64 },
    Conjectures { target: String, degree_max: u32 },
    Regions { pairs: Vec<String>, output: Option<PathBuf> },
}

/// What a dispatch produced: exit code, stdout payload, stderr notes.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub notes: Vec<String>,
}

fn usage_error(message: impl Into<String>) -> Outcome {
    Outcome { exit_code: 2, stdout: String::new(), notes: vec![message.into()] }
}

fn emit(value: &impl serde::Serialize, exit_code: i32, notes: Vec<String>) -> Outcome {
    let mut stdout = serde_json::to_string_pretty(value).expect("reports serialize");
    stdout.push('\n');
    Outcome { exit_code, stdout, notes }
}

fn field(name: &str, tolerance: f64) -> Result<Hyperfield<f64>, Outcome> {
    lookup::<f64>(name)
        .map(|h| h.with_tolerance(tolerance))
        .ok_or_else(|| usage_error(format!("unknown hyperfield {name:?} (try K, S, T, P, TC, Qtriv)")))
}

/// Runs one command under the given equality tolerance.
pub fn run(cmd: &Command, tolerance: f64) -> Outcome {
    match cmd {
        Command::Eval { hyperfield, polynomial, at } => {
            let h = match field(hyperfield, tolerance) {
                Ok(h) => h,
                Err(e) => return e,
            };
            let p = match parse_polynomial(&h, polynomial) {
                Ok(p) => p,
                Err(e) => return usage_error(e.to_string()),
            };
            let point = match parse_point(&h, at, p.nvars()) {
                Ok(pt) => pt,
                Err(e) => return usage_error(e.to_string()),
            };
            match p.evaluate(&h, &point) {
                Ok(result) => {
                    let exit = if result.is_root { 0 } else { 1 };
                    emit(
                        &json!({
                            "hyperfield": h.name(),
                            "polynomial": p,
                            "canonical_text": print_polynomial(&p),
                            "point": point,
                            "value": result.value,
                            "is_root": result.is_root,
                        }),
                        exit,
                        vec![],
                    )
                }
                Err(e) => usage_error(e.to_string()),
            }
        }
        Command::Roots { hyperfield, polynomial } => {
            let h = match field(hyperfield, tolerance) {
                Ok(h) => h,
                Err(e) => return e,
            };
            let p = match parse_polynomial(&h, polynomial) {
                Ok(p) => p,
                Err(e) => return usage_error(e.to_string()),
            };
            match h.family() {
                Family::Tropical => match tropical_roots(&h, &p) {
                    Ok(report) => {
                        let exit = if report.roots.is_empty() { 1 } else { 0 };
                        emit(&report, exit, vec![])
                    }
                    Err(e) => usage_error(e.to_string()),
                },
                Family::Krasner | Family::Sign => match finite_roots(&h, &p) {
                    Ok(report) => {
                        let exit = if report.roots.is_empty() { 1 } else { 0 };
                        emit(&report, exit, vec![])
                    }
                    Err(e) => usage_error(e.to_string()),
                },
                Family::ComplexTropical => complex_roots(&h, &p),
                _ => usage_error(format!(
                    "root enumeration over {} is not supported",
                    h.name()
                )),
            }
        }
        Command::Mult { hyperfield, polynomial, at } => {
            let h = match field(hyperfield, tolerance) {
                Ok(h) => h,
                Err(e) => return e,
            };
            let p = match parse_polynomial(&h, polynomial) {
                Ok(p) => p,
                Err(e) => return usage_error(e.to_string()),
            };
            let a = match parse_element(&h, at, 0) {
                Ok(a) => a,
                Err(e) => return usage_error(e.to_string()),
            };
            let m = match h.family() {
                Family::Tropical => tropical_multiplicity(&h, &p, &a),
                Family::Krasner | Family::Sign => multiplicity(&h, &p, &a),
                _ => Err(hyperion::Error::Unsupported(format!(
                    "multiplicities over {} are not defined here",
                    h.name()
                ))),
            };
            match m {
                Ok(m) => emit(
                    &json!({
                        "hyperfield": h.name(),
                        "canonical_text": print_polynomial(&p),
                        "element": a,
                        "multiplicity": m,
                    }),
                    if m > 0 { 0 } else { 1 },
                    vec![],
                ),
                Err(e) => usage_error(e.to_string()),
            }
        }
        Command::Push { homomorphism, polynomial } => {
            let f = match hom_lookup::<f64>(homomorphism) {
                Some(f) => f.with_tolerance(tolerance),
                None => {
                    return usage_error(format!(
                        "unknown homomorphism {homomorphism:?} (try eta, sgn, ph, toK:<H>, id:<H>)"
                    ))
                }
            };
            let p = match parse_polynomial(f.domain(), polynomial) {
                Ok(p) => p,
                Err(e) => return usage_error(e.to_string()),
            };
            match p.pushforward(&f) {
                Ok(image) => emit(
                    &json!({
                        "homomorphism": f.name(),
                        "polynomial": image,
                        "canonical_text": print_polynomial(&image),
                    }),
                    0,
                    vec![],
                ),
                Err(e) => usage_error(e.to_string()),
            }
        }
        Command::Lift { hyperfield, polynomial, root } => {
            let h = match field(hyperfield, tolerance) {
                Ok(h) => h,
                Err(e) => return e,
            };
            if h.family() != Family::ComplexTropical {
                return usage_error("lift works over TC");
            }
            let p = match parse_polynomial(&h, polynomial) {
                Ok(p) => p,
                Err(e) => return usage_error(e.to_string()),
            };
            let trop = Hyperfield::<f64>::tropical().with_tolerance(tolerance);
            let b = match parse_element(&trop, root, 0) {
                Ok(b) => b,
                Err(e) => return usage_error(e.to_string()),
            };
            match lift_root_eta(&h, &p, &b) {
                Ok((lifted, certificate)) => {
                    let notes = vec![
                        format!("lifted element: {lifted}"),
                        format!(
                            "certified root of the original polynomial: {}",
                            certificate.is_root
                        ),
                        format!("dominant exponents: {:?}", certificate.dominant_indices),
                    ];
                    let exit = if certificate.is_root { 0 } else { 1 };
                    emit(
                        &json!({
                            "hyperfield": h.name(),
                            "canonical_text": print_polynomial(&p),
                            "target_root": b,
                            "lifted_element": lifted,
                            "certificate": certificate,
                        }),
                        exit,
                        notes,
                    )
                }
                Err(hyperion::Error::NotARoot(what, why)) => emit(
                    &json!({"not_a_root": what, "reason": why}),
                    1,
                    vec![format!("{what} is not a root of the tropicalization: {why}")],
                ),
                Err(e) => usage_error(e.to_string()),
            }
        }
        Command::Kapranov { hyperfield, polynomial, root } => {
            let h = match field(hyperfield, tolerance) {
                Ok(h) => h,
                Err(e) => return e,
            };
            if h.family() != Family::ComplexTropical {
                return usage_error("kapranov works over TC");
            }
            let p = match parse_polynomial(&h, polynomial) {
                Ok(p) => p,
                Err(e) => return usage_error(e.to_string()),
            };
            let trop = Hyperfield::<f64>::tropical().with_tolerance(tolerance);
            let target = match parse_point(&trop, root, p.nvars()) {
                Ok(t) => t,
                Err(e) => return usage_error(e.to_string()),
            };
            match kapranov_lift(&h, &p, &target) {
                Ok(ctx) => {
                    let notes = vec![
                        format!(
                            "lifted point: ({})",
                            ctx.final_point
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                        format!("certified: {}", ctx.certified),
                    ];
                    let exit = if ctx.certified { 0 } else { 1 };
                    emit(&ctx, exit, notes)
                }
                Err(hyperion::Error::NotARoot(what, why)) => emit(
                    &json!({"not_a_root": what, "reason": why}),
                    1,
                    vec![format!("{what} is not a root of the tropicalization: {why}")],
                ),
                Err(e) => usage_error(e.to_string()),
            }
        }
        Command::Axioms { hyperfield, budget, seed } => {
            let h = match field(hyperfield, tolerance) {
                Ok(h) => h,
                Err(e) => return e,
            };
            let report = h.check_axioms(*budget, *seed);
            let exit = if report.all_passed { 0 } else { 1 };
            emit(&report, exit, vec![])
        }
        Command::HomCheck { homomorphism, budget, seed } => {
            let f = match hom_lookup::<f64>(homomorphism) {
                Some(f) => f.with_tolerance(tolerance),
                None => return usage_error(format!("unknown homomorphism {homomorphism:?}")),
            };
            let report = f.check(*budget, *seed);
            let exit = if report.passed { 0 } else { 1 };
            emit(&report, exit, vec![])
        }
        Command::Conjectures { target, degree_max } => {
            conjectures(target, *degree_max, tolerance)
        }
        Command::Regions { pairs, output } => {
            let h = Hyperfield::<f64>::complex_tropical().with_tolerance(tolerance);
            let mut parsed = Vec::new();
            for pair in pairs {
                match parse_point(&h, pair, 2) {
                    Ok(pt) => parsed.push((pt[0].clone(), pt[1].clone())),
                    Err(e) => return usage_error(format!("bad pair {pair:?}: {e}")),
                }
            }
            let svg = match svg::emit_regions(&h, &parsed) {
                Ok(s) => s,
                Err(e) => return usage_error(e.to_string()),
            };
            match output {
                Some(path) => match std::fs::write(path, &svg) {
                    Ok(()) => emit(
                        &json!({"written": path.display().to_string(), "bytes": svg.len()}),
                        0,
                        vec![],
                    ),
                    Err(e) => usage_error(format!("cannot write {}: {e}", path.display())),
                },
                None => Outcome { exit_code: 0, stdout: svg, notes: vec![] },
            }
        }
    }
}

/// Roots over the complex tropical carrier: one certified root per tropical
/// root of the tropicalization, found by lifting. Not exhaustive.
fn complex_roots(h: &Hyperfield<f64>, p: &hyperion::Polynomial64) -> Outcome {
    if p.nvars() != 1 {
        return usage_error("roots over TC needs a univariate polynomial");
    }
    let eta = hyperion::catalog::Homomorphism::eta().with_tolerance(h.tolerance().eps);
    let trop = eta.codomain().clone();
    let q = match p.pushforward(&eta) {
        Ok(q) => q,
        Err(e) => return usage_error(e.to_string()),
    };
    let trop_report = match tropical_roots(&trop, &q) {
        Ok(r) => r,
        Err(e) => return usage_error(e.to_string()),
    };
    let mut lifted = Vec::new();
    for entry in &trop_report.roots {
        if let Ok((elt, cert)) = lift_root_eta(h, p, &entry.element) {
            lifted.push(json!({
                "tropical_root": entry.element,
                "element": elt,
                "certified": cert.is_root,
            }));
        }
    }
    let exit = if lifted.is_empty() { 1 } else { 0 };
    emit(
        &json!({
            "hyperfield": h.name(),
            "canonical_text": print_polynomial(p),
            "exhaustive": false,
            "roots": lifted,
            "tropicalization": trop_report,
        }),
        exit,
        vec![],
    )
}

fn conjectures(target: &str, degree_max: u32, tolerance: f64) -> Outcome {
    match target {
        "K" | "S" => {
            let h = lookup::<f64>(target).unwrap().with_tolerance(tolerance);
            let bound = check_multiplicity_bound(&h, degree_max);
            let inheritance = check_inheritance(&h, degree_max);
            let f = hyperion::catalog::Homomorphism::to_krasner(h.clone());
            let pushforward = check_pushforward_mult(&f, degree_max);
            match (bound, inheritance, pushforward) {
                (Ok(b), Ok(i), Ok(p)) => {
                    let all = b.passed() && i.passed() && p.passed();
                    let exit = if all { 0 } else { 1 };
                    emit(
                        &json!({
                            "hyperfield": h.name(),
                            "degree_max": degree_max,
                            "reports": [b, i, p],
                        }),
                        exit,
                        vec![],
                    )
                }
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => usage_error(e.to_string()),
            }
        }
        "TC" => {
            let h = lookup::<f64>("TC").unwrap().with_tolerance(tolerance);
            match tc_multiplicity_bound_witness(&h) {
                Ok((p, reports)) => {
                    let distinct = reports.iter().filter(|r| r.is_root).count();
                    let holds = distinct <= p.degree() as usize;
                    emit(
                        &json!({
                            "hyperfield": "TC",
                            "check": "multiplicity-bound",
                            "holds": holds,
                            "witness": {
                                "polynomial": print_polynomial(&p),
                                "degree": p.degree(),
                                "distinct_certified_roots": distinct,
                                "roots": reports,
                            },
                            "note": "a degree-2 polynomial with three distinct certified roots; the multiplicity bound does not apply to TC",
                        }),
                        if holds { 0 } else { 1 },
                        vec![],
                    )
                }
                Err(e) => usage_error(e.to_string()),
            }
        }
        "rac" => match rac_counterexamples::<f64>() {
            Ok(report) => {
                let exit = if report.demonstrates_non_rac { 0 } else { 1 };
                emit(&report, exit, vec![])
            }
            Err(e) => usage_error(e.to_string()),
        },
        "T" | "P" | "Qtriv" => emit(
            &json!({
                "hyperfield": target,
                "status": "excluded",
                "reason": "infinite carrier: the exhaustive multiplicity sweeps are not defined",
            }),
            0,
            vec![],
        ),
        other => usage_error(format!(
            "conjectures takes K, S, TC, T, P, Qtriv or rac, got {other:?}"
        )),
    }
}

/// Certify a single complex root; used by tests that drive the library
/// through the CLI surface.
pub fn certify(h: &Hyperfield<f64>, p: &hyperion::Polynomial64, at: &str) -> Outcome {
    let a = match parse_element(h, at, 0) {
        Ok(a) => a,
        Err(e) => return usage_error(e.to_string()),
    };
    match certify_root_tc(h, p, &a) {
        Ok(report) => {
            let exit = if report.is_root { 0 } else { 1 };
            emit(&report, exit, vec![])
        }
        Err(e) => usage_error(e.to_string()),
    }
}

/// The element literal re-exported for integration tests.
pub fn literal(h: &Hyperfield<f64>, text: &str) -> Result<Element<f64>, parse::ParseError> {
    parse_element(h, text, 0)
}
