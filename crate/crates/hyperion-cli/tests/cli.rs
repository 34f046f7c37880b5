//! CLI surface tests: grammar round trips, byte-stable JSON, and the
//! exit-code contract.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperion::sample::{sample_polynomial, PolyConfig};
use hyperion::{default_tolerance, Hyperfield};
use hyperion_cli::parse::{parse_polynomial, print_polynomial};
use hyperion_cli::{run, Command};

fn tol() -> f64 {
    default_tolerance::<f64>()
}

#[test]
fn parse_print_round_trip_per_hyperfield() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let fields = [
        Hyperfield::<f64>::krasner(),
        Hyperfield::sign(),
        Hyperfield::tropical(),
        Hyperfield::phase(),
        Hyperfield::complex_tropical(),
        Hyperfield::rational_field(),
    ];
    for h in &fields {
        for _ in 0..100 {
            let cfg = PolyConfig {
                nvars: 2,
                max_terms: 5,
                max_total_degree: 4,
                lattice_magnitudes: false,
                require_nonconstant: false,
            };
            let p = sample_polynomial(h, &cfg, &mut rng);
            let text = print_polynomial(&p);
            let q = parse_polynomial(h, &text).unwrap_or_else(|e| {
                panic!("{}: {text:?} failed to reparse: {e}", h.name())
            });
            assert_eq!(p.num_terms(), q.num_terms(), "{}: {text}", h.name());
            // a variable that appears in no term is invisible to the
            // grammar, so compare exponents up to trailing zeros
            for (e, c) in p.terms() {
                let trimmed: Vec<u32> = {
                    let mut t = e.clone();
                    while t.len() > q.nvars() && t.last() == Some(&0) {
                        t.pop();
                    }
                    t
                };
                let c2 = q
                    .coeff(&trimmed)
                    .unwrap_or_else(|| panic!("{text}: lost term {e:?}"));
                assert!(
                    c.approx_eq(c2, h.tolerance()),
                    "{}: {text}: {c} reparsed as {c2}",
                    h.name()
                );
            }
            // the canonical text is a byte-level fixed point of
            // print ∘ parse for the families whose literals convert
            // exactly; the circle carriers round-trip degree literals
            // within one ulp and are covered by the coefficient check
            match h.name() {
                "K" | "S" | "T" | "Qtriv" => {
                    assert_eq!(text, print_polynomial(&q), "{}", h.name())
                }
                _ => {}
            }
        }
    }
}

#[test]
fn json_output_is_byte_stable() {
    let cmd = Command::Eval {
        hyperfield: "TC".into(),
        polynomial: "mag1@90 X1^2 + mag1@120 X1 + mag1@180".into(),
        at: "mag1@210".into(),
    };
    let first = run(&cmd, tol());
    let second = run(&cmd, tol());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.exit_code, 0);

    let cmd = Command::Axioms { hyperfield: "S".into(), budget: 100, seed: 3 };
    assert_eq!(run(&cmd, tol()).stdout, run(&cmd, tol()).stdout);
}

#[test]
fn exit_codes_distinguish_outcomes() {
    // success
    let ok = run(
        &Command::Lift {
            hyperfield: "TC".into(),
            polynomial: "mag1@90 X1^2 + mag1@120 X1 + mag1@180".into(),
            root: "0".into(),
        },
        tol(),
    );
    assert_eq!(ok.exit_code, 0, "{}", ok.notes.join("; "));
    // mathematical negative: not a root
    let negative = run(
        &Command::Kapranov {
            hyperfield: "TC".into(),
            polynomial: "X1 + X2 + mag1@0".into(),
            root: "(5,-3)".into(),
        },
        tol(),
    );
    assert_eq!(negative.exit_code, 1);
    // usage errors
    let unknown = run(
        &Command::Axioms { hyperfield: "Z".into(), budget: 10, seed: 0 },
        tol(),
    );
    assert_eq!(unknown.exit_code, 2);
    let duplicate = run(
        &Command::Eval {
            hyperfield: "K".into(),
            polynomial: "1 X1 + 1 X1".into(),
            at: "1".into(),
        },
        tol(),
    );
    assert_eq!(duplicate.exit_code, 2);
    assert!(duplicate.notes[0].contains("duplicate"));
}

#[test]
fn push_maps_signs_correctly() {
    let outcome = run(
        &Command::Push {
            homomorphism: "sgn".into(),
            polynomial: "4 X1^2 + -5 X1 + 1".into(),
        },
        tol(),
    );
    assert_eq!(outcome.exit_code, 0);
    let v: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(v["canonical_text"], "1 X1^2 + -1 X1 + 1");
}

#[test]
fn eval_exit_one_on_non_root() {
    let outcome = run(
        &Command::Eval {
            hyperfield: "T".into(),
            polynomial: "0 X1 + 0".into(),
            at: "3".into(),
        },
        tol(),
    );
    assert_eq!(outcome.exit_code, 1);
    let v: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(v["is_root"], false);
}

#[test]
fn mult_reports_newton_polygon_length() {
    let outcome = run(
        &Command::Mult {
            hyperfield: "T".into(),
            polynomial: "0 X1^2 + 0 X1 + 0".into(),
            at: "0".into(),
        },
        tol(),
    );
    assert_eq!(outcome.exit_code, 0);
    let v: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(v["multiplicity"], 2);
}

#[test]
fn roots_over_tc_certify_every_lift() {
    let outcome = run(
        &Command::Roots {
            hyperfield: "TC".into(),
            polynomial: "mag1@90 X1^2 + mag1@120 X1 + mag1@180".into(),
        },
        tol(),
    );
    assert_eq!(outcome.exit_code, 0);
    let v: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(v["exhaustive"], false);
    for root in v["roots"].as_array().unwrap() {
        assert_eq!(root["certified"], true);
    }
}

#[test]
fn regions_writes_svg_file() {
    let dir = std::env::temp_dir().join("hyperion-regions-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pairs.svg");
    let outcome = run(
        &Command::Regions {
            pairs: vec!["mag1@0;mag1@180".into(), "mag2@10;mag1@10".into()],
            output: Some(path.clone()),
        },
        tol(),
    );
    assert_eq!(outcome.exit_code, 0, "{:?}", outcome.notes);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("fill-opacity")); // the antipodal pair fills a disk
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn tolerance_override_changes_equality() {
    // a coarse tolerance makes log-magnitudes 0 and 0.5 equal, so the sum
    // of two such points becomes an arc rather than a dominant point
    let cmd = Command::Eval {
        hyperfield: "TC".into(),
        polynomial: "mag1@0 X1 + mag1.6487212707001282@90".into(), // e^0.5
        at: "mag1@0".into(),
    };
    let strict = run(&cmd, 1e-9);
    let coarse = run(&cmd, 0.6);
    let vs: serde_json::Value = serde_json::from_str(&strict.stdout).unwrap();
    let vc: serde_json::Value = serde_json::from_str(&coarse.stdout).unwrap();
    assert_eq!(vs["value"]["regions"][0]["kind"], "point");
    assert_eq!(vc["value"]["regions"][0]["kind"], "arc");
}
