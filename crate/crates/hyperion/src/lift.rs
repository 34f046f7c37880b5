//! Constructive root lifting along the log-magnitude map `eta: TC → T`.
//!
//! Every root of the tropicalization of a complex tropical polynomial is the
//! image of a root of the polynomial itself, and the witness is computable:
//!
//! - univariate: a tropical root `b` makes at least two monomials of the
//!   tropicalization tie at the maximum. Picking two tied exponents
//!   `t > t'`, the element `ã = (-c_{t'}/c_t)^{1/(t-t')}` satisfies
//!   `eta(ã) = b`, and the pair of monomials `c_t ã^t`, `c_{t'} ã^{t'}` is
//!   exactly antipodal, so their hypersum is a closed disk that swallows
//!   every smaller term and contains zero.
//! - multivariate: a tropical root `a̲` is pulled onto a monomial curve
//!   `Xᵢ ← λᵢ ⊙ X^{dᵢ}` through lifts `λᵢ` of its coordinates, where the
//!   direction `D` keeps all support dot products distinct; the univariate
//!   lift of the root `0` of the restricted polynomial is then pushed back
//!   through the curve.
//!
//! Everything returned is certified: the lifted point is re-evaluated in the
//! original polynomial and its coordinatewise log-magnitude is compared with
//! the target root.

use num_rational::BigRational;
use num_traits::Zero as _;
use serde::Serialize;

use crate::catalog::Homomorphism;
use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::hyperfield::Hyperfield;
use crate::poly::{EvalResult, Polynomial};
use crate::roots::{certify_root_tc, CertifyReport};
use crate::scalar::Real;

/// Everything produced by one multivariate lift.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "R: Real"))]
pub struct LiftContext<R> {
    pub polynomial: Polynomial<R>,
    pub tropicalization: Polynomial<R>,
    pub target_root: Vec<Element<R>>,
    pub lifts: Vec<Element<R>>,
    pub direction: Vec<i64>,
    /// Univariate restriction along the curve; absent when every monomial
    /// vanishes identically on it.
    pub pullback: Option<Polynomial<R>>,
    pub offset: i64,
    /// The two tied exponents used by the univariate lift formula.
    pub pair: Option<(u32, u32)>,
    pub lifted_element: Element<R>,
    pub final_point: Vec<Element<R>>,
    pub eta_image: Vec<Element<R>>,
    pub univariate_certificate: Option<CertifyReport<R>>,
    pub final_value: EvalResult<R>,
    pub certified: bool,
}

fn require_complex<R: Real>(h: &Hyperfield<R>) -> Result<()> {
    if h.family() == Family::ComplexTropical {
        Ok(())
    } else {
        Err(Error::CarrierMismatch { expected: Family::ComplexTropical, found: h.family() })
    }
}

/// The exponents of the tropicalization whose monomials attain the maximum
/// at `b`, largest exponent first.
fn dominant_exponents<R: Real>(
    trop: &Hyperfield<R>,
    q: &Polynomial<R>,
    b: R,
) -> Vec<(u32, R)> {
    let tol = trop.tolerance();
    let values: Vec<(u32, R)> = q
        .terms()
        .map(|(e, c)| {
            let j = e[0];
            let m = match c {
                Element::Tropical(v) => *v,
                _ => unreachable!("tropical polynomial"),
            };
            let v = if b.is_infinite() && b < R::zero() {
                if j == 0 {
                    m
                } else {
                    R::neg_infinity()
                }
            } else {
                m + R::from_u32(j).unwrap() * b
            };
            (j, v)
        })
        .collect();
    let max = values
        .iter()
        .map(|(_, v)| *v)
        .fold(R::neg_infinity(), |acc, v| acc.max(v));
    let mut dom: Vec<(u32, R)> =
        values.into_iter().filter(|(_, v)| tol.mag_eq(*v, max)).collect();
    dom.sort_by_key(|d| std::cmp::Reverse(d.0));
    dom
}

/// Lifts a root of the tropicalization of a univariate complex tropical
/// polynomial back to a certified root of the polynomial.
pub fn lift_root_eta<R: Real>(
    h: &Hyperfield<R>,
    p: &Polynomial<R>,
    b: &Element<R>,
) -> Result<(Element<R>, CertifyReport<R>)> {
    require_complex(h)?;
    if p.nvars() != 1 {
        return Err(Error::Unsupported("univariate lift on a multivariate polynomial".into()));
    }
    if p.num_terms() < 2 {
        return Err(Error::DegeneratePolynomial(
            "a single-term polynomial has no tied tropical exponents to lift from".into(),
        ));
    }
    let eta = Homomorphism::eta().with_tolerance(h.tolerance().eps);
    let trop = eta.codomain().clone();
    let b_val = match b {
        Element::Tropical(v) => *v,
        _ => {
            return Err(Error::CarrierMismatch {
                expected: Family::Tropical,
                found: crate::region::element_family(b),
            })
        }
    };
    let q = p.pushforward(&eta)?;
    let eval = q.evaluate(&trop, std::slice::from_ref(b))?;
    if !eval.is_root {
        return Err(Error::NotARoot(
            b.to_string(),
            "the tropicalization has no tie of maximal monomials there".into(),
        ));
    }
    if b_val.is_infinite() && b_val < R::zero() {
        // the missing constant term makes 0 a root of p itself
        let zero = h.zero();
        let cert = certify_root_tc(h, p, &zero)?;
        return Ok((zero, cert));
    }
    let dom = dominant_exponents(&trop, &q, b_val);
    if dom.len() < 2 {
        return Err(Error::NotARoot(
            b.to_string(),
            "fewer than two dominant exponents".into(),
        ));
    }
    let (t, t_prime) = (dom[0].0, dom[1].0);
    let c_t = p.coeff(&[t]).expect("dominant exponent has a coefficient").clone();
    let c_tp = p.coeff(&[t_prime]).expect("dominant exponent has a coefficient").clone();
    // ã = (-c_{t'} / c_t)^{1/(t - t')}, principal polar root
    let ratio = h.mul(&h.neg(&c_tp)?, &h.mul_inverse(&c_t)?)?;
    let lifted = match ratio {
        Element::Complex(r) => Element::Complex(r.principal_root(t - t_prime)),
        _ => unreachable!("complex carrier"),
    };
    let cert = certify_root_tc(h, p, &lifted)?;
    Ok((lifted, cert))
}

/// Deterministic direction vector whose dot products with the support are
/// pairwise distinct: `(1, M, M², …)` with `M` one more than the largest
/// exponent, bumped further on the (never observed) chance of a collision.
pub fn choose_direction(support: &[Vec<u32>]) -> Vec<i64> {
    assert!(!support.is_empty(), "support must be nonempty");
    let n = support[0].len();
    let max_coord = support.iter().flat_map(|e| e.iter()).copied().max().unwrap_or(0);
    let mut m = (max_coord as i64 + 1).max(2);
    loop {
        let mut d = Vec::with_capacity(n);
        let mut power = 1i64;
        for _ in 0..n {
            d.push(power);
            power *= m;
        }
        let mut dots: Vec<i64> = support
            .iter()
            .map(|e| e.iter().zip(&d).map(|(&x, &w)| x as i64 * w).sum())
            .collect();
        dots.sort_unstable();
        if dots.windows(2).all(|w| w[0] != w[1]) {
            return d;
        }
        m += 1;
    }
}

/// Full multivariate lift: tropicalize, restrict to a monomial curve through
/// canonical lifts of the root coordinates, lift the univariate root `0`,
/// and certify the resulting point.
pub fn kapranov_lift<R: Real>(
    h: &Hyperfield<R>,
    p: &Polynomial<R>,
    target: &[Element<R>],
) -> Result<LiftContext<R>> {
    require_complex(h)?;
    let eta = Homomorphism::eta().with_tolerance(h.tolerance().eps);
    let trop = eta.codomain().clone();
    let q = p.pushforward(&eta)?;
    let eval = q.evaluate(&trop, target)?;
    if !eval.is_root {
        return Err(Error::NotARoot(
            format!(
                "({})",
                target.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
            ),
            "not a root of the tropicalization".into(),
        ));
    }
    let lifts: Vec<Element<R>> = target
        .iter()
        .map(|a| eta.canonical_lift(a))
        .collect::<Result<_>>()?;
    let direction = choose_direction(&p.support());
    match p.restrict_to_line(h, &lifts, &direction) {
        Ok((pullback, offset)) => {
            let (lifted, ucert) =
                lift_root_eta(h, &pullback, &Element::Tropical(R::zero()))?;
            let dom = dominant_exponents(
                &trop,
                &pullback.pushforward(&eta)?,
                R::zero(),
            );
            let pair = if dom.len() >= 2 { Some((dom[0].0, dom[1].0)) } else { None };
            finish_context(
                h,
                &eta,
                p,
                q,
                target,
                lifts,
                direction,
                Some(pullback),
                offset,
                pair,
                Some(ucert),
                lifted,
            )
        }
        Err(Error::DegeneratePolynomial(_)) => {
            // every monomial vanishes on the curve, so the lift point itself
            // is already a root; complete it with ã = 1
            finish_context(
                h,
                &eta,
                p,
                q,
                target,
                lifts,
                direction,
                None,
                0,
                None,
                None,
                h.one(),
            )
        }
        Err(e) => Err(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn finish_context<R: Real>(
    h: &Hyperfield<R>,
    eta: &Homomorphism<R>,
    p: &Polynomial<R>,
    tropicalization: Polynomial<R>,
    target: &[Element<R>],
    lifts: Vec<Element<R>>,
    direction: Vec<i64>,
    pullback: Option<Polynomial<R>>,
    offset: i64,
    pair: Option<(u32, u32)>,
    ucert: Option<CertifyReport<R>>,
    lifted: Element<R>,
) -> Result<LiftContext<R>> {
    let final_point: Vec<Element<R>> = lifts
        .iter()
        .zip(&direction)
        .map(|(l, &d)| h.mul(l, &h.pow(&lifted, d as u32)?))
        .collect::<Result<_>>()?;
    let eta_image: Vec<Element<R>> = final_point
        .iter()
        .map(|x| eta.map(x))
        .collect::<Result<_>>()?;
    let final_value = p.evaluate(h, &final_point)?;
    let trop = eta.codomain();
    let image_matches = eta_image
        .iter()
        .zip(target)
        .all(|(img, t)| trop.approx_eq(img, t));
    let certified = final_value.is_root && image_matches;
    Ok(LiftContext {
        polynomial: p.clone(),
        tropicalization,
        target_root: target.to_vec(),
        lifts,
        direction,
        pullback,
        offset,
        pair,
        lifted_element: lifted,
        final_point,
        eta_image,
        univariate_certificate: ucert,
        final_value,
        certified,
    })
}

/// Report for the one-sided containment `f(V(p)) ⊆ V(f∗(p))`.
#[derive(Debug, Clone, Serialize)]
pub struct ForwardInclusionReport {
    pub homomorphism: String,
    pub checked: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Pushes each supplied root of `p` through `f` and verifies the image is a
/// root of the push-forward.
pub fn forward_inclusion_check<R: Real>(
    f: &Homomorphism<R>,
    p: &Polynomial<R>,
    roots: &[Vec<Element<R>>],
) -> Result<ForwardInclusionReport> {
    let image = p.pushforward(f)?;
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for root in roots {
        checked += 1;
        let upstairs = p.evaluate(f.domain(), root)?;
        if !upstairs.is_root {
            failures.push(format!(
                "({}) is not a root upstairs",
                root.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
            ));
            continue;
        }
        let mapped: Vec<Element<R>> =
            root.iter().map(|a| f.map(a)).collect::<Result<_>>()?;
        let downstairs = image.evaluate(f.codomain(), &mapped)?;
        if !downstairs.is_root {
            failures.push(format!(
                "image ({}) fails to be a root of the push-forward",
                mapped.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
            ));
        }
    }
    Ok(ForwardInclusionReport {
        homomorphism: f.name().into(),
        checked,
        passed: failures.is_empty(),
        failures,
    })
}

/// The two standard witnesses that a homomorphism can fail to lift roots.
#[derive(Debug, Clone, Serialize)]
pub struct RacCounterexamples {
    /// `X² ⊞ -X ⊞ 1` has the root `1` over the signs, while `X² - X + 1`
    /// has negative discriminant and therefore no rational root at all.
    pub sign_root_exists: bool,
    pub sign_discriminant: String,
    pub rational_root_exists: bool,
    /// Over the phases, `X² ⊞ X ⊞ 1` has a root at angle `3π/4` but not at
    /// `π/2`: the root arc of the push-forward is strictly larger than the
    /// phases of the complex roots.
    pub phase_root_at_three_quarter_pi: bool,
    pub phase_root_at_half_pi: bool,
    pub demonstrates_non_rac: bool,
}

/// Reproduces both counterexamples exactly.
pub fn rac_counterexamples<R: Real>() -> Result<RacCounterexamples> {
    // sign side
    let s = Hyperfield::<R>::sign();
    let p_s = Polynomial::univariate(
        &s,
        &[Element::sym(1), Element::sym(-1), Element::sym(1)],
    )?;
    let sign_root_exists = p_s.evaluate(&s, &[Element::sym(1)])?.is_root;
    // discriminant of X² - X + 1 over the exact rationals
    let one = BigRational::from_integer(1.into());
    let b = -&one;
    let disc = &b * &b - BigRational::from_integer(4.into()) * &one * &one;
    let rational_root_exists = !(disc < BigRational::zero()) && {
        // nonnegative discriminant: a rational root needs disc to be a
        // perfect square; irrelevant here but kept for completeness
        let n = disc.numer().clone() * disc.denom();
        n.sqrt().pow(2) == n
    };
    // phase side
    let ph = Hyperfield::<R>::phase();
    let one_p = ph.one();
    let p_p = Polynomial::univariate(&ph, &[one_p.clone(), one_p.clone(), one_p])?;
    let three_quarter = R::from_f64(0.75).unwrap() * R::PI();
    let phase_root_at_three_quarter_pi =
        p_p.evaluate(&ph, &[Element::phase_unit(three_quarter)])?.is_root;
    let phase_root_at_half_pi =
        p_p.evaluate(&ph, &[Element::phase_unit(R::FRAC_PI_2())])?.is_root;
    Ok(RacCounterexamples {
        sign_root_exists,
        sign_discriminant: disc.to_string(),
        rational_root_exists,
        phase_root_at_three_quarter_pi,
        phase_root_at_half_pi,
        demonstrates_non_rac: sign_root_exists
            && !rational_root_exists
            && phase_root_at_three_quarter_pi
            && !phase_root_at_half_pi,
    })
}

/// Candidate-driven exhaustive-by-evaluation search for tropical roots of a
/// multivariate tropical polynomial: a coarse grid plus, in up to two
/// variables, the pairwise balance loci of the support. The grid only
/// generates candidates; root status is always decided by evaluation.
pub fn tropical_grid_roots<R: Real>(
    trop: &Hyperfield<R>,
    q: &Polynomial<R>,
    grid_halfwidth: R,
    step: R,
) -> Result<Vec<Vec<Element<R>>>> {
    if trop.family() != Family::Tropical {
        return Err(Error::CarrierMismatch { expected: Family::Tropical, found: trop.family() });
    }
    let n = q.nvars();
    let mut candidates: Vec<Vec<R>> = Vec::new();
    // grid
    let mut steps = Vec::new();
    let mut x = -grid_halfwidth;
    while x <= grid_halfwidth + step / R::from_u8(2).unwrap() {
        steps.push(x);
        x = x + step;
    }
    let mut idx = vec![0usize; n];
    loop {
        candidates.push(idx.iter().map(|&i| steps[i]).collect());
        let mut k = 0;
        loop {
            if k == n {
                break;
            }
            idx[k] += 1;
            if idx[k] < steps.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    // pairwise balance loci of the support
    let terms: Vec<(Vec<u32>, R)> = q
        .terms()
        .map(|(e, c)| match c {
            Element::Tropical(v) => (e.clone(), *v),
            _ => unreachable!(),
        })
        .collect();
    if n == 1 {
        for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                let (ei, ci) = (&terms[i].0[0], terms[i].1);
                let (ej, cj) = (&terms[j].0[0], terms[j].1);
                if ei != ej {
                    let x = (ci - cj) / (R::from_u32(*ej).unwrap() - R::from_u32(*ei).unwrap());
                    candidates.push(vec![x]);
                }
            }
        }
    } else if n == 2 {
        // balance lines (eᵢ - eⱼ)·x = cⱼ - cᵢ; intersect every pair of lines
        let mut lines: Vec<(R, R, R)> = Vec::new();
        for i in 0..terms.len() {
            for j in (i + 1)..terms.len() {
                let a = R::from_u32(terms[i].0[0]).unwrap() - R::from_u32(terms[j].0[0]).unwrap();
                let b = R::from_u32(terms[i].0[1]).unwrap() - R::from_u32(terms[j].0[1]).unwrap();
                let c = terms[j].1 - terms[i].1;
                if a != R::zero() || b != R::zero() {
                    lines.push((a, b, c));
                }
            }
        }
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                let (a1, b1, c1) = lines[i];
                let (a2, b2, c2) = lines[j];
                let det = a1 * b2 - a2 * b1;
                if det != R::zero() {
                    candidates.push(vec![(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det]);
                }
            }
        }
    }
    // decide by evaluation, deduplicate by tolerance
    let tol = trop.tolerance();
    let mut roots: Vec<Vec<Element<R>>> = Vec::new();
    for cand in candidates {
        let point: Vec<Element<R>> = cand.iter().map(|&v| Element::Tropical(v)).collect();
        if !q.evaluate(trop, &point)?.is_root {
            continue;
        }
        let dup = roots.iter().any(|r| {
            r.iter().zip(&cand).all(|(e, &v)| match e {
                Element::Tropical(u) => tol.mag_eq(*u, v),
                _ => false,
            })
        });
        if !dup {
            roots.push(point);
        }
    }
    Ok(roots)
}
