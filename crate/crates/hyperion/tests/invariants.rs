//! Cross-module invariants: push-forwards send roots to roots, restriction
//! to a line commutes with tropicalization, lifts certify and transport
//! dominance, and the Newton-polygon tropical multiplicities agree with
//! independent oracles.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperion::catalog::Homomorphism;
use hyperion::lift::{
    choose_direction, forward_inclusion_check, kapranov_lift, lift_root_eta, tropical_grid_roots,
};
use hyperion::poly::Polynomial;
use hyperion::roots::{certify_root_tc, enumerate_multivariate, tropical_roots};
use hyperion::sample::{sample_polynomial, PolyConfig};
use hyperion::{ComplexRegion, Element, Hyperfield, ValueSet};

type H = Hyperfield<f64>;

/// All points of a finite carrier power.
fn carrier_points(h: &H, n: usize) -> Vec<Vec<Element<f64>>> {
    let elems = h.elements().unwrap();
    let mut pts: Vec<Vec<Element<f64>>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &pts {
            for e in &elems {
                let mut q = p.clone();
                q.push(e.clone());
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

#[test]
fn forward_inclusion_exhaustive_krasner_two_vars() {
    let k = H::krasner();
    let f = Homomorphism::to_krasner(k.clone());
    let points = carrier_points(&k, 2);
    for p in enumerate_multivariate(&k, 2, 3).unwrap() {
        let roots: Vec<Vec<Element<f64>>> = points
            .iter()
            .filter(|pt| p.evaluate(&k, pt).unwrap().is_root)
            .cloned()
            .collect();
        let report = forward_inclusion_check(&f, &p, &roots).unwrap();
        assert!(report.passed, "{:?}", report.failures);
    }
}

#[test]
fn forward_inclusion_exhaustive_sign_two_vars() {
    let s = H::sign();
    let f = Homomorphism::to_krasner(s.clone());
    let points = carrier_points(&s, 2);
    let mut checked = 0u64;
    for p in enumerate_multivariate(&s, 2, 3).unwrap() {
        let roots: Vec<Vec<Element<f64>>> = points
            .iter()
            .filter(|pt| p.evaluate(&s, pt).unwrap().is_root)
            .cloned()
            .collect();
        checked += roots.len() as u64;
        let report = forward_inclusion_check(&f, &p, &roots).unwrap();
        assert!(report.passed, "{:?}", report.failures);
    }
    assert!(checked > 10_000);
}

#[test]
fn restriction_commutes_with_tropicalization() {
    // evaluating the tropicalized restriction at x, then undoing the
    // exponent shift, matches the tropicalization of the original at the
    // curve point ψ(x)
    let tc = H::complex_tropical();
    let trop = H::tropical();
    let eta = Homomorphism::eta();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cfg = PolyConfig {
        nvars: 2,
        max_terms: 5,
        max_total_degree: 3,
        lattice_magnitudes: true,
        require_nonconstant: true,
    };
    for _ in 0..60 {
        let p = sample_polynomial(&tc, &cfg, &mut rng);
        let lifts: Vec<Element<f64>> = (0..2)
            .map(|_| Element::polar(rng.gen_range(-1.0..1.0), rng.gen_range(0.0..6.28)))
            .collect();
        let direction = choose_direction(&p.support());
        let (restricted, offset) = match p.restrict_to_line(&tc, &lifts, &direction) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let down = restricted.pushforward(&eta).unwrap();
        let q = p.pushforward(&eta).unwrap();
        for _ in 0..10 {
            let x = rng.gen_range(-2.0..2.0);
            // ψ(x) = (eta(λ₁) + d₁x, eta(λ₂) + d₂x)
            let curve_point: Vec<Element<f64>> = lifts
                .iter()
                .zip(&direction)
                .map(|(l, &d)| {
                    let ll = eta.map(l).unwrap();
                    match ll {
                        Element::Tropical(v) => Element::Tropical(v + d as f64 * x),
                        _ => unreachable!(),
                    }
                })
                .collect();
            let lhs = down.evaluate(&trop, &[Element::Tropical(x)]).unwrap();
            // undo the exponent shift: multiply by x^offset
            let shift = Element::Tropical(offset as f64 * x);
            let lhs_value = trop.scale_set(&lhs.value, &shift).unwrap();
            let rhs = q.evaluate(&trop, &curve_point).unwrap();
            assert!(
                lhs_value.approx_eq(&rhs.value, trop.tolerance()),
                "restriction mismatch at {x}: {lhs_value:?} vs {:?}",
                rhs.value
            );
        }
    }
}

#[test]
fn kapranov_round_trip_sampled() {
    // smaller edition of the acceptance round trip: every grid-discovered
    // tropical root lifts to a certified point with matching image
    let tc = H::complex_tropical();
    let trop = H::tropical();
    let eta = Homomorphism::eta();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut lifted_total = 0u64;
    for _ in 0..50 {
        let nvars = rng.gen_range(1..=3);
        let cfg = PolyConfig {
            nvars,
            max_terms: 6,
            max_total_degree: 4,
            lattice_magnitudes: true,
            require_nonconstant: true,
        };
        let p = sample_polynomial(&tc, &cfg, &mut rng);
        let q = p.pushforward(&eta).unwrap();
        let roots = tropical_grid_roots(&trop, &q, 10.0, 0.5).unwrap();
        for root in roots {
            let ctx = kapranov_lift(&tc, &p, &root).unwrap();
            assert!(ctx.certified, "lift failed for {root:?} of {p:?}");
            lifted_total += 1;
        }
    }
    assert!(lifted_total > 50, "round trip exercised only {lifted_total} lifts");
}

#[test]
fn univariate_lift_dominance_transport_and_annihilation() {
    let tc = H::complex_tropical();
    let trop = H::tropical();
    let eta = Homomorphism::eta();
    let tol = tc.tolerance();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = PolyConfig::univariate(5, 5);
    let mut checked = 0;
    for _ in 0..300 {
        let p = sample_polynomial(&tc, &cfg, &mut rng);
        let q = p.pushforward(&eta).unwrap();
        let report = tropical_roots(&trop, &q).unwrap();
        for entry in &report.roots {
            if let Element::Tropical(b) = entry.element {
                if b.is_infinite() {
                    continue;
                }
                let (lifted, cert) = lift_root_eta(&tc, &p, &entry.element).unwrap();
                assert!(cert.is_root);
                // dominance transport: the dominant exponents at the lifted
                // point equal the dominant tropical exponents at the root
                let values: Vec<(u32, f64)> = q
                    .terms()
                    .map(|(e, c)| match c {
                        Element::Tropical(v) => (e[0], v + e[0] as f64 * b),
                        _ => unreachable!(),
                    })
                    .collect();
                let max = values.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
                let mut trop_dominant: Vec<u32> = values
                    .iter()
                    .filter(|(_, v)| tol.mag_eq(*v, max))
                    .map(|(e, _)| *e)
                    .collect();
                trop_dominant.sort_unstable();
                assert_eq!(cert.dominant_indices, trop_dominant);
                // pair-sum annihilation: the two largest dominant monomials
                // at the lifted point sum to the closed disk of their radius
                let mut top = trop_dominant.clone();
                top.sort_unstable_by(|a, b| b.cmp(a));
                let (t, t_prime) = (top[0], top[1]);
                let m1 = tc
                    .mul(p.coeff(&[t]).unwrap(), &tc.pow(&lifted, t).unwrap())
                    .unwrap();
                let m2 = tc
                    .mul(p.coeff(&[t_prime]).unwrap(), &tc.pow(&lifted, t_prime).unwrap())
                    .unwrap();
                let pair_sum = tc.hyperadd(&m1, &m2).unwrap();
                let radius = match &m1 {
                    Element::Complex(polar) => polar.log_mag(),
                    _ => unreachable!(),
                };
                let disk =
                    ValueSet::complex_from(vec![ComplexRegion::Disk { log_radius: radius }], tol);
                assert!(
                    pair_sum.approx_eq(&disk, tol),
                    "pair sum is {pair_sum:?}, expected the closed disk of radius {radius}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 200);
}

#[test]
fn algebraic_closure_sampled() {
    // every nonconstant univariate polynomial admits at least one certified
    // root found by tropicalize-then-lift
    let tc = H::complex_tropical();
    let trop = H::tropical();
    let eta = Homomorphism::eta();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = PolyConfig::univariate(6, 6);
    for _ in 0..100 {
        let p = sample_polynomial(&tc, &cfg, &mut rng);
        let q = p.pushforward(&eta).unwrap();
        let report = tropical_roots(&trop, &q).unwrap();
        assert!(!report.roots.is_empty());
        let found = report.roots.iter().any(|entry| {
            lift_root_eta(&tc, &p, &entry.element)
                .map(|(_, cert)| cert.is_root)
                .unwrap_or(false)
        });
        assert!(found, "no certified root for {p:?}");
    }
}

/// Brute-force tropical root locations: scan the grid and compare the
/// leading exponent of the max-plus form between neighbours; every argmax
/// change brackets exactly the reported roots.
#[test]
fn tropical_roots_agree_with_grid_scan() {
    let trop = H::tropical();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cfg = PolyConfig::univariate(7, 6);
    for _ in 0..200 {
        let p = sample_polynomial(&trop, &cfg, &mut rng);
        let report = tropical_roots(&trop, &p).unwrap();
        let finite_roots: Vec<(f64, u32)> = report
            .roots
            .iter()
            .filter_map(|r| match r.element {
                Element::Tropical(v) if v.is_finite() => Some((v, r.multiplicity)),
                _ => None,
            })
            .collect();
        // every reported root is a root under evaluation
        for (v, _) in &finite_roots {
            assert!(p.evaluate(&trop, &[Element::Tropical(*v)]).unwrap().is_root);
        }
        let argmax = |x: f64| -> u32 {
            p.terms()
                .map(|(e, c)| match c {
                    Element::Tropical(v) => (e[0], v + e[0] as f64 * x),
                    _ => unreachable!(),
                })
                .fold((0u32, f64::NEG_INFINITY), |acc, (e, v)| {
                    if v > acc.1 || (v == acc.1 && e > acc.0) {
                        (e, v)
                    } else {
                        acc
                    }
                })
                .0
        };
        let mut x = -20.0;
        while x < 20.0 {
            let a0 = argmax(x);
            let a1 = argmax(x + 0.25);
            // the argmax jump across a grid step equals the total
            // multiplicity of the roots inside the step
            let inside: u32 = finite_roots
                .iter()
                .filter(|(v, _)| *v > x && *v <= x + 0.25)
                .map(|(_, m)| *m)
                .sum();
            assert_eq!(
                a1 - a0,
                inside,
                "argmax jumped {a0}->{a1} across [{x}, {}] but roots say {inside} ({p:?})",
                x + 0.25
            );
            x += 0.25;
        }
    }
}

/// Bounded-candidate backtracking for the recursive multiplicity over the
/// tropical carrier, using only coefficient-derived candidate values; the
/// Newton-polygon multiplicities must reproduce it at small degree.
mod trop_mult_oracle {
    use super::*;

    const NEG: f64 = f64::NEG_INFINITY;
    const TOL: f64 = 1e-9;

    fn eq(a: f64, b: f64) -> bool {
        (a == NEG && b == NEG) || (a - b).abs() <= TOL
    }

    /// membership of c in q ⊞ s over the tropical hyperfield
    fn in_hypersum(c: f64, q: f64, s: f64) -> bool {
        if eq(q, s) {
            c <= q.max(s) + TOL || c == NEG
        } else {
            eq(c, q.max(s))
        }
    }

    fn is_root(coeffs: &[f64], a: f64) -> bool {
        let vals: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != NEG)
            .map(|(i, c)| c + i as f64 * a)
            .collect();
        if vals.is_empty() {
            return true;
        }
        let max = vals.iter().cloned().fold(NEG, f64::max);
        if max == NEG {
            return true;
        }
        vals.iter().filter(|v| eq(**v, max)).count() >= 2
    }

    fn mult(coeffs: &[f64], a: f64, fuel: &mut u32) -> u32 {
        if *fuel == 0 {
            return 0;
        }
        *fuel -= 1;
        let mut trimmed = coeffs.to_vec();
        while trimmed.len() > 1 && trimmed.last() == Some(&NEG) {
            trimmed.pop();
        }
        if !is_root(&trimmed, a) {
            return 0;
        }
        let n = trimmed.len() - 1;
        if n == 0 {
            return 0;
        }
        let mut best = 0;
        let mut q = vec![NEG; n];
        q[n - 1] = trimmed[n];
        // candidate values for each quotient coefficient are derived from
        // the polynomial's own coefficients and the root
        let mut candidates: Vec<f64> = vec![NEG];
        for c in &trimmed {
            if *c != NEG {
                candidates.push(*c);
                candidates.push(*c - a);
                candidates.push(*c + a);
                candidates.push(*c - 2.0 * a);
            }
        }
        descend(&trimmed, a, &candidates, &mut q, n - 1, &mut best, fuel);
        1 + best
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        coeffs: &[f64],
        a: f64,
        candidates: &[f64],
        q: &mut Vec<f64>,
        i: usize,
        best: &mut u32,
        fuel: &mut u32,
    ) {
        if i == 0 {
            // constant condition c0 = a ⊙ q0
            let prod = if a == NEG || q[0] == NEG { NEG } else { a + q[0] };
            if eq(coeffs[0], prod) {
                *best = (*best).max(mult(&q.clone(), a, fuel));
            }
            return;
        }
        let s = if a == NEG || q[i] == NEG { NEG } else { a + q[i] };
        for cand in candidates {
            if in_hypersum(coeffs[i], *cand, s) {
                q[i - 1] = *cand;
                descend(coeffs, a, candidates, q, i - 1, best, fuel);
            }
        }
    }

    #[test]
    fn newton_polygon_matches_backtracking() {
        let trop = H::tropical();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..150 {
            let deg = rng.gen_range(1..=3usize);
            let coeffs: Vec<f64> = (0..=deg)
                .map(|i| {
                    if i == deg || rng.gen_bool(0.8) {
                        (rng.gen_range(-6i32..=6) as f64) * 0.5
                    } else {
                        NEG
                    }
                })
                .collect();
            let elems: Vec<Element<f64>> =
                coeffs.iter().map(|&c| Element::Tropical(c)).collect();
            let p = Polynomial::univariate(&trop, &elems).unwrap();
            let report = tropical_roots(&trop, &p).unwrap();
            for entry in &report.roots {
                if let Element::Tropical(v) = entry.element {
                    if v.is_finite() {
                        let mut fuel = 200_000;
                        let oracle = mult(&coeffs, v, &mut fuel);
                        assert!(fuel > 0, "oracle ran out of fuel");
                        assert_eq!(
                            entry.multiplicity, oracle,
                            "mult mismatch at {v} for {coeffs:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn spec_worked_multiplicities() {
        // 0·X² ⊞ 0·X ⊞ 0 at 0 has multiplicity 2 by the backtracking
        let mut fuel = 10_000;
        assert_eq!(mult(&[0.0, 0.0, 0.0], 0.0, &mut fuel), 2);
        let mut fuel = 10_000;
        assert_eq!(mult(&[0.0, 0.0], 0.0, &mut fuel), 1);
        // a non-root has multiplicity zero
        let mut fuel = 10_000;
        assert_eq!(mult(&[0.0, 0.0], 3.0, &mut fuel), 0);
    }
}

#[test]
fn certify_fast_path_never_contradicts_evaluation() {
    let tc = H::complex_tropical();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let cfg = PolyConfig::univariate(5, 5);
    let mut fired = 0u64;
    for _ in 0..10_000 {
        let p = sample_polynomial(&tc, &cfg, &mut rng);
        let a = tc.sample_element(&mut rng);
        let report = certify_root_tc(&tc, &p, &a).unwrap();
        assert!(report.agreement, "{report:?}");
        if report.fast_path.is_some() {
            fired += 1;
        }
    }
    assert!(fired > 2_000, "fast path fired only {fired} times");
}

#[test]
fn phase_and_complex_root_intervals_differ_in_openness() {
    // X² ⊞ X ⊞ 1 with unit coefficients, evaluated along the unit circle:
    // over the phases the root angles are exactly the open interval
    // (π/2, 3π/2); over the complex carrier the closed arcs close it up.
    use std::f64::consts::PI;
    let ph = H::phase();
    let tc = H::complex_tropical();
    let one_p = ph.one();
    let p_phase =
        Polynomial::univariate(&ph, &[one_p.clone(), one_p.clone(), one_p]).unwrap();
    let one_c = tc.one();
    let p_complex =
        Polynomial::univariate(&tc, &[one_c.clone(), one_c.clone(), one_c]).unwrap();
    let steps = 720;
    for i in 0..steps {
        let theta = i as f64 / steps as f64 * 2.0 * PI;
        let inside_open = theta > PI / 2.0 + 1e-7 && theta < 3.0 * PI / 2.0 - 1e-7;
        let inside_closed = theta > PI / 2.0 - 1e-7 && theta < 3.0 * PI / 2.0 + 1e-7;
        let on_boundary = (theta - PI / 2.0).abs() < 1e-7 || (theta - 3.0 * PI / 2.0).abs() < 1e-7;
        let phase_root = p_phase
            .evaluate(&ph, &[Element::phase_unit(theta)])
            .unwrap()
            .is_root;
        let complex_root = p_complex
            .evaluate(&tc, &[Element::polar(0.0, theta)])
            .unwrap()
            .is_root;
        if on_boundary {
            assert!(!phase_root, "phase boundary {theta} must not be a root");
            assert!(complex_root, "complex boundary {theta} must be a root");
        } else {
            assert_eq!(phase_root, inside_open, "phase at {theta}");
            assert_eq!(complex_root, inside_closed, "complex at {theta}");
        }
    }
}
