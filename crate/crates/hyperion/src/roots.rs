//! Roots of univariate polynomials over hyperfields: enumeration,
//! certification, and the recursive multiplicity
//!
//! ```text
//! mult_a(p) = 0                                  if a is not a root,
//! mult_a(p) = 1 + max { mult_a(q) : p ∈ (X ⊞ -a) ⊙ q }   otherwise.
//! ```
//!
//! Because polynomial multiplication over a hyperfield is multivalued, the
//! quotient `q` is not unique; the maximum is taken over every quotient that
//! satisfies the coefficientwise membership conditions
//! `c_i ∈ q_{i-1} ⊞ (-a ⊙ q_i)`, found by backtracking. Over the tropical
//! hyperfield the recursion has no finite enumeration, so roots and
//! multiplicities come from the Newton polygon instead: each edge of the
//! upper concave hull of `(exponent, coefficient)` contributes its breakpoint
//! as a root with the lattice length of the edge as multiplicity, and `-∞`
//! is a root exactly when the constant term is absent.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::element::{Element, Family, Polar};
use crate::error::{Error, Result};
use crate::hyperfield::Hyperfield;
use crate::poly::Polynomial;
use crate::region::ValueSet;
use crate::scalar::Real;

/// One root with its multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "R: Real"))]
pub struct RootEntry<R> {
    pub element: Element<R>,
    pub multiplicity: u32,
}

/// All roots found for one polynomial; `exhaustive` means the list is
/// complete over the carrier.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "R: Real"))]
pub struct RootReport<R> {
    pub hyperfield: String,
    pub degree: u32,
    pub exhaustive: bool,
    pub total_multiplicity: u32,
    pub roots: Vec<RootEntry<R>>,
}

/// Root certificate over the tropical complex hyperfield.
///
/// `dominant_indices` are the exponents whose monomials attain the maximal
/// magnitude at the point. When every dominant exponent is positive the
/// fast path applies: the point is a root iff `-c₀` lies in the hypersum of
/// the dominant monomials. The authoritative verdict is always the full
/// set-valued evaluation; `agreement` records that the two coincide whenever
/// the fast path fires.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "R: Real"))]
pub struct CertifyReport<R> {
    pub point: Element<R>,
    pub dominant_indices: Vec<u32>,
    pub fast_path: Option<bool>,
    pub is_root: bool,
    pub agreement: bool,
    pub value: ValueSet<R>,
}

/// Outcome of one conjecture sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub hyperfield: String,
    pub check: String,
    pub degree_max: u32,
    pub checked: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub polynomial: String,
    pub detail: String,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn require_univariate<R: Real>(p: &Polynomial<R>) -> Result<()> {
    if p.nvars() == 1 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "operation requires a univariate polynomial, got {} variables",
            p.nvars()
        )))
    }
}

/// All finite roots of a tropical polynomial from the Newton polygon, plus
/// `-∞` when the constant term is absent. Exhaustive.
pub fn tropical_roots<R: Real>(
    h: &Hyperfield<R>,
    p: &Polynomial<R>,
) -> Result<RootReport<R>> {
    require_univariate(p)?;
    if h.family() != Family::Tropical || p.family() != Family::Tropical {
        return Err(Error::CarrierMismatch { expected: Family::Tropical, found: p.family() });
    }
    let mut pts: Vec<(u32, R)> = p
        .terms()
        .map(|(e, c)| match c {
            Element::Tropical(v) => (e[0], *v),
            _ => unreachable!("family checked"),
        })
        .collect();
    pts.sort_by_key(|(e, _)| *e);
    let min_exp = pts[0].0;
    let mut roots: Vec<RootEntry<R>> = Vec::new();
    if min_exp > 0 {
        roots.push(RootEntry {
            element: Element::Tropical(R::neg_infinity()),
            multiplicity: min_exp,
        });
    }
    // upper concave hull of (exponent, coefficient); collinear middle points
    // are dropped so each edge spans a maximal straight run
    let mut hull: Vec<(u32, R)> = Vec::new();
    for &(i3, c3) in &pts {
        while hull.len() >= 2 {
            let (i1, c1) = hull[hull.len() - 2];
            let (i2, c2) = hull[hull.len() - 1];
            let lhs = (c2 - c1) * R::from_u32(i3 - i1).unwrap();
            let rhs = (c3 - c1) * R::from_u32(i2 - i1).unwrap();
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((i3, c3));
    }
    for w in hull.windows(2) {
        let (i1, c1) = w[0];
        let (i2, c2) = w[1];
        let x = (c1 - c2) / R::from_u32(i2 - i1).unwrap();
        roots.push(RootEntry { element: Element::Tropical(x), multiplicity: i2 - i1 });
    }
    let total = roots.iter().map(|r| r.multiplicity).sum();
    Ok(RootReport {
        hyperfield: h.name().into(),
        degree: p.degree(),
        exhaustive: true,
        total_multiplicity: total,
        roots,
    })
}

/// Multiplicity of a tropical element as a root, read off the Newton
/// polygon report.
pub fn tropical_multiplicity<R: Real>(
    h: &Hyperfield<R>,
    p: &Polynomial<R>,
    a: &Element<R>,
) -> Result<u32> {
    let report = tropical_roots(h, p)?;
    Ok(report
        .roots
        .iter()
        .find(|r| h.approx_eq(&r.element, a))
        .map(|r| r.multiplicity)
        .unwrap_or(0))
}

/// Exhaustive roots (with multiplicities) over a finite carrier.
pub fn finite_roots<R: Real>(h: &Hyperfield<R>, p: &Polynomial<R>) -> Result<RootReport<R>> {
    require_univariate(p)?;
    let elements = h
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} has an infinite carrier", h.name())))?;
    let mut roots = Vec::new();
    for a in elements {
        let m = multiplicity(h, p, &a)?;
        if m > 0 {
            roots.push(RootEntry { element: a, multiplicity: m });
        }
    }
    let total = roots.iter().map(|r| r.multiplicity).sum();
    Ok(RootReport {
        hyperfield: h.name().into(),
        degree: p.degree(),
        exhaustive: true,
        total_multiplicity: total,
        roots,
    })
}

/// Dense coefficient view of a univariate polynomial, constant first.
fn dense_coeffs<R: Real>(h: &Hyperfield<R>, p: &Polynomial<R>) -> Vec<Element<R>> {
    let n = p.degree() as usize;
    let mut coeffs = vec![h.zero(); n + 1];
    for (e, c) in p.terms() {
        coeffs[e[0] as usize] = c.clone();
    }
    coeffs
}

/// Every quotient `q` with `p ∈ (X ⊞ -a) ⊙ q`, as dense coefficient
/// vectors (constant first). Found by backtracking from the forced leading
/// coefficient down to the constant-term constraint.
fn quotients<R: Real>(
    h: &Hyperfield<R>,
    coeffs: &[Element<R>],
    a: &Element<R>,
) -> Result<Vec<Vec<Element<R>>>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let neg_a = h.neg(a)?;
    let elements = h
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} has an infinite carrier", h.name())))?;
    // q has degree n-1; q[n-1] = c[n] is forced
    let mut found = Vec::new();
    let mut q = vec![h.zero(); n];
    q[n - 1] = coeffs[n].clone();
    fn descend<R: Real>(
        h: &Hyperfield<R>,
        coeffs: &[Element<R>],
        neg_a: &Element<R>,
        elements: &[Element<R>],
        q: &mut Vec<Element<R>>,
        i: usize,
        found: &mut Vec<Vec<Element<R>>>,
    ) -> Result<()> {
        if i == 0 {
            // constant condition: c[0] = -a ⊙ q[0]
            let prod = h.mul(neg_a, &q[0])?;
            if h.approx_eq(&coeffs[0], &prod) {
                found.push(q.clone());
            }
            return Ok(());
        }
        // choose q[i-1] with c[i] ∈ q[i-1] ⊞ (-a ⊙ q[i])
        let shifted = h.mul(neg_a, &q[i])?;
        for cand in elements {
            let sum = h.hyperadd(cand, &shifted)?;
            if h.contains(&sum, &coeffs[i])? {
                q[i - 1] = cand.clone();
                descend(h, coeffs, neg_a, elements, q, i - 1, found)?;
            }
        }
        Ok(())
    }
    descend(h, coeffs, &neg_a, &elements, &mut q, n - 1, &mut found)?;
    Ok(found)
}

/// Exact recursive multiplicity over a finite carrier, memoized on the
/// dense coefficient vector.
pub fn multiplicity<R: Real>(
    h: &Hyperfield<R>,
    p: &Polynomial<R>,
    a: &Element<R>,
) -> Result<u32> {
    require_univariate(p)?;
    h.check_element(a)?;
    if h.elements().is_none() {
        return Err(Error::Unsupported(format!(
            "recursive multiplicity needs a finite carrier, {} is infinite",
            h.name()
        )));
    }
    let coeffs = dense_coeffs(h, p);
    let mut memo: BTreeMap<Vec<i8>, u32> = BTreeMap::new();
    mult_rec(h, &coeffs, a, &mut memo)
}

fn sym_key<R: Real>(coeffs: &[Element<R>]) -> Vec<i8> {
    coeffs
        .iter()
        .map(|c| match c {
            Element::Finite(s) => s.as_i8(),
            _ => unreachable!("finite carrier"),
        })
        .collect()
}

fn mult_rec<R: Real>(
    h: &Hyperfield<R>,
    coeffs: &[Element<R>],
    a: &Element<R>,
    memo: &mut BTreeMap<Vec<i8>, u32>,
) -> Result<u32> {
    let key = sym_key(coeffs);
    if let Some(&m) = memo.get(&key) {
        return Ok(m);
    }
    // value of the dense polynomial at a
    let monomials: Vec<Element<R>> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !h.is_zero(c))
        .map(|(i, c)| h.mul(c, &h.pow(a, i as u32)?))
        .collect::<Result<_>>()?;
    let is_root = if monomials.is_empty() {
        true // the zero polynomial vanishes everywhere
    } else {
        let value = h.hypersum(&monomials)?;
        h.contains(&value, &h.zero())?
    };
    if !is_root {
        memo.insert(key, 0);
        return Ok(0);
    }
    let mut best = 0u32;
    // trim leading zeros so degree reflects the actual quotient
    let mut trimmed = coeffs.to_vec();
    while trimmed.len() > 1 && h.is_zero(trimmed.last().unwrap()) {
        trimmed.pop();
    }
    if trimmed.len() == 1 {
        // nonzero constants are not roots (handled above); a constant zero
        // polynomial admits no factorization ladder
        memo.insert(key, 0);
        return Ok(0);
    }
    for q in quotients(h, &trimmed, a)? {
        best = best.max(mult_rec(h, &q, a, memo)?);
    }
    let m = 1 + best;
    memo.insert(key, m);
    Ok(m)
}

/// Certifies whether `a` is a root of a univariate polynomial over the
/// tropical complex hyperfield.
pub fn certify_root_tc<R: Real>(
    h: &Hyperfield<R>,
    p: &Polynomial<R>,
    a: &Element<R>,
) -> Result<CertifyReport<R>> {
    require_univariate(p)?;
    if h.family() != Family::ComplexTropical {
        return Err(Error::CarrierMismatch {
            expected: Family::ComplexTropical,
            found: h.family(),
        });
    }
    h.check_element(a)?;
    let a_polar = match a {
        Element::Complex(p) => *p,
        _ => unreachable!("carrier checked"),
    };
    let tol = h.tolerance();
    // log-magnitudes of the monomials c_j ⊙ a^j
    let mags: Vec<(u32, R, Element<R>)> = p
        .terms()
        .map(|(e, c)| {
            let j = e[0];
            let monomial = h.mul(c, &h.pow(a, j)?)?;
            let m = match &monomial {
                Element::Complex(q) => q.log_mag(),
                _ => unreachable!(),
            };
            Ok((j, m, monomial))
        })
        .collect::<Result<_>>()?;
    let max_mag = mags
        .iter()
        .map(|(_, m, _)| *m)
        .fold(R::neg_infinity(), |acc, m| acc.max(m));
    let dominant: Vec<u32> = mags
        .iter()
        .filter(|(_, m, _)| tol.mag_eq(*m, max_mag))
        .map(|(j, _, _)| *j)
        .collect();
    // fast path applies when every dominant exponent is positive; then a is
    // a root iff -c₀ lies in the hypersum of the dominant monomials
    let fast_path = if !a_polar.is_zero()
        && max_mag > R::neg_infinity()
        && dominant.iter().all(|&j| j > 0)
    {
        let dominant_monomials: Vec<Element<R>> = mags
            .iter()
            .filter(|(j, _, _)| dominant.contains(j))
            .map(|(_, _, m)| m.clone())
            .collect();
        let sum = h.hypersum(&dominant_monomials)?;
        let neg_c0 = match p.coeff(&[0]) {
            Some(c) => h.neg(c)?,
            None => h.zero(),
        };
        Some(h.contains(&sum, &neg_c0)?)
    } else {
        None
    };
    let eval = p.evaluate(h, std::slice::from_ref(a))?;
    let agreement = fast_path.map(|fp| fp == eval.is_root).unwrap_or(true);
    debug_assert!(agreement, "fast path must agree with full evaluation");
    Ok(CertifyReport {
        point: a.clone(),
        dominant_indices: dominant,
        fast_path,
        is_root: eval.is_root,
        agreement,
        value: eval.value,
    })
}

/// Every univariate polynomial over a finite carrier with degree exactly
/// `0..=degree_max` (leading coefficient nonzero).
pub fn enumerate_univariate<R: Real>(
    h: &Hyperfield<R>,
    degree_max: u32,
) -> Result<Vec<Polynomial<R>>> {
    let elements = h
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} has an infinite carrier", h.name())))?;
    let mut out = Vec::new();
    for d in 0..=degree_max {
        let n = d as usize + 1;
        let mut idx = vec![0usize; n];
        loop {
            let coeffs: Vec<Element<R>> =
                idx.iter().map(|&i| elements[i].clone()).collect();
            if !h.is_zero(&coeffs[n - 1]) {
                out.push(Polynomial::univariate(h, &coeffs)?);
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                idx[k] += 1;
                if idx[k] < elements.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(out)
}

/// Every polynomial over a finite carrier in `nvars` variables with total
/// degree at most `degree_max` (at least one term).
pub fn enumerate_multivariate<R: Real>(
    h: &Hyperfield<R>,
    nvars: usize,
    degree_max: u32,
) -> Result<Vec<Polynomial<R>>> {
    let elements = h
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} has an infinite carrier", h.name())))?;
    // all exponent vectors with |I| ≤ degree_max
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for v in 0..=(degree_max - used) {
                let mut e2 = e.clone();
                e2.push(v);
                next.push(e2);
            }
        }
        exps = next;
    }
    exps.sort();
    let mut out = Vec::new();
    let mut idx = vec![0usize; exps.len()];
    loop {
        let terms: Vec<(Vec<u32>, Element<R>)> = exps
            .iter()
            .zip(&idx)
            .filter(|(_, &i)| !h.is_zero(&elements[i]))
            .map(|(e, &i)| (e.clone(), elements[i].clone()))
            .collect();
        if !terms.is_empty() {
            out.push(Polynomial::new(h, nvars, terms)?);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                break;
            }
            idx[k] += 1;
            if idx[k] < elements.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    Ok(out)
}

fn poly_text<R: Real>(p: &Polynomial<R>) -> String {
    let mut parts: Vec<String> = p
        .terms()
        .map(|(e, c)| format!("{c} X^{:?}", e))
        .collect();
    parts.reverse();
    parts.join(" + ")
}

/// Exhaustively verifies `Σ_a mult_a(p) ≤ deg(p)` over all polynomials of
/// degree at most `degree_max`. For the Krasner hyperfield the sum is also
/// checked to reach the degree exactly, which it does.
pub fn check_multiplicity_bound<R: Real>(
    h: &Hyperfield<R>,
    degree_max: u32,
) -> Result<ConjectureReport> {
    let polys = enumerate_univariate(h, degree_max)?;
    let mut checked = 0u64;
    let mut violations = Vec::new();
    let mut equality_everywhere = true;
    for p in &polys {
        checked += 1;
        let report = finite_roots(h, p)?;
        if report.total_multiplicity > p.degree() {
            violations.push(Violation {
                polynomial: poly_text(p),
                detail: format!(
                    "multiplicities sum to {} > degree {}",
                    report.total_multiplicity,
                    p.degree()
                ),
            });
        }
        if report.total_multiplicity != p.degree() {
            equality_everywhere = false;
        }
    }
    let mut notes = vec![format!(
        "multiplicity equality holds for every polynomial: {equality_everywhere}"
    )];
    if h.family() == Family::Krasner && !equality_everywhere {
        notes.push("expected equality over K".into());
        violations.push(Violation {
            polynomial: "<sweep>".into(),
            detail: "multiplicity equality failed over K".into(),
        });
    }
    Ok(ConjectureReport {
        hyperfield: h.name().into(),
        check: "multiplicity-bound".into(),
        degree_max,
        checked,
        violations,
        notes,
    })
}

/// Searches for a witness `q` with
/// `p ∈ (X ⊞ -a₁) ⊙ … ⊙ (X ⊞ -a_m) ⊙ q`, peeling factors left to right.
fn inheritance_witness<R: Real>(
    h: &Hyperfield<R>,
    coeffs: &[Element<R>],
    chain: &[Element<R>],
) -> Result<bool> {
    if chain.is_empty() {
        return Ok(true);
    }
    let mut trimmed = coeffs.to_vec();
    while trimmed.len() > 1 && h.is_zero(trimmed.last().unwrap()) {
        trimmed.pop();
    }
    if trimmed.len() == 1 {
        return Ok(false); // no room for another linear factor
    }
    for q in quotients(h, &trimmed, &chain[0])? {
        if inheritance_witness(h, &q, &chain[1..])? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn sublists<R: Clone>(items: &[R]) -> Vec<Vec<R>> {
    let mut out = vec![Vec::new()];
    for item in items {
        let mut more = Vec::new();
        for s in &out {
            let mut s2 = s.clone();
            s2.push(item.clone());
            more.push(s2);
        }
        out.extend(more);
    }
    out
}

fn permutations<R: Clone>(items: &[R]) -> Vec<Vec<R>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Exhaustively verifies the inheritance property: for every polynomial and
/// every sublist of its root list (with repetitions), some ordering of the
/// sublist peels off as iterated linear factors with a residual witness.
pub fn check_inheritance<R: Real>(
    h: &Hyperfield<R>,
    degree_max: u32,
) -> Result<ConjectureReport> {
    let polys = enumerate_univariate(h, degree_max)?;
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for p in &polys {
        let report = finite_roots(h, p)?;
        let mut root_list: Vec<Element<R>> = Vec::new();
        for r in &report.roots {
            for _ in 0..r.multiplicity {
                root_list.push(r.element.clone());
            }
        }
        let coeffs = dense_coeffs(h, p);
        for sub in sublists(&root_list) {
            if sub.len() as u32 > p.degree() {
                continue;
            }
            checked += 1;
            let mut ok = false;
            for order in permutations(&sub) {
                if inheritance_witness(h, &coeffs, &order)? {
                    ok = true;
                    break;
                }
            }
            if !ok {
                violations.push(Violation {
                    polynomial: poly_text(p),
                    detail: format!(
                        "no witness for the root sublist {:?}",
                        sub.iter().map(|a| a.to_string()).collect::<Vec<_>>()
                    ),
                });
            }
        }
    }
    Ok(ConjectureReport {
        hyperfield: h.name().into(),
        check: "inheritance".into(),
        degree_max,
        checked,
        violations,
        notes: Vec::new(),
    })
}

/// Exhaustively verifies the push-forward multiplicity inequality
/// `mult_b(f∗(p)) ≥ Σ_{a ∈ f⁻¹(b)} mult_a(p)` for a homomorphism between
/// finite carriers.
pub fn check_pushforward_mult<R: Real>(
    f: &crate::catalog::Homomorphism<R>,
    degree_max: u32,
) -> Result<ConjectureReport> {
    let dom = f.domain();
    let cod = f.codomain();
    let dom_elements = dom.elements().ok_or_else(|| {
        Error::Unsupported(format!(
            "{} has an infinite carrier and is excluded from the exhaustive sweep",
            dom.name()
        ))
    })?;
    let cod_elements = cod.elements().ok_or_else(|| {
        Error::Unsupported(format!("{} has an infinite carrier", cod.name()))
    })?;
    let polys = enumerate_univariate(dom, degree_max)?;
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for p in &polys {
        let image = p.pushforward(f)?;
        for b in &cod_elements {
            checked += 1;
            let lhs = multiplicity(cod, &image, b)?;
            let mut rhs = 0u32;
            for a in &dom_elements {
                if cod.approx_eq(&f.map(a)?, b) {
                    rhs += multiplicity(dom, p, a)?;
                }
            }
            if lhs < rhs {
                violations.push(Violation {
                    polynomial: poly_text(p),
                    detail: format!(
                        "mult_{b}(f∗p) = {lhs} < {rhs} = Σ mult over the fiber"
                    ),
                });
            }
        }
    }
    let bound = check_multiplicity_bound(dom, degree_max)?;
    let inheritance = check_inheritance(dom, degree_max)?;
    let notes = vec![format!(
        "domain {}: multiplicity bound {}, inheritance {} (hypotheses of the push-forward inequality)",
        dom.name(),
        if bound.passed() { "holds" } else { "fails" },
        if inheritance.passed() { "holds" } else { "fails" },
    )];
    Ok(ConjectureReport {
        hyperfield: format!("{} -> {}", dom.name(), cod.name()),
        check: "pushforward-multiplicity".into(),
        degree_max,
        checked,
        violations,
        notes,
    })
}

/// The degree-2 polynomial over the tropical complex hyperfield with three
/// distinct certified roots, which rules the multiplicity bound out for
/// that hyperfield.
pub fn tc_multiplicity_bound_witness<R: Real>(
    h: &Hyperfield<R>,
) -> Result<(Polynomial<R>, Vec<CertifyReport<R>>)> {
    if h.family() != Family::ComplexTropical {
        return Err(Error::CarrierMismatch {
            expected: Family::ComplexTropical,
            found: h.family(),
        });
    }
    let one = h.one();
    let p = Polynomial::univariate(h, &[one.clone(), one.clone(), one])?;
    let pi = R::PI();
    let half_pi = R::FRAC_PI_2();
    let points = [
        Element::Complex(Polar::new(R::zero(), pi)),            // -1
        Element::Complex(Polar::new(R::zero(), half_pi)),       // i
        Element::Complex(Polar::new(R::zero(), pi + half_pi)),  // -i
    ];
    let reports = points
        .iter()
        .map(|a| certify_root_tc(h, &p, a))
        .collect::<Result<Vec<_>>>()?;
    Ok((p, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Homomorphism;

    type H = Hyperfield<f64>;

    fn trop_poly(coeffs: &[f64]) -> Polynomial<f64> {
        let t = H::tropical();
        let elems: Vec<Element<f64>> = coeffs.iter().map(|&c| Element::tropical(c)).collect();
        Polynomial::univariate(&t, &elems).unwrap()
    }

    #[test]
    fn tropical_roots_triple_tie() {
        // 0·X² ⊞ 0·X ⊞ 0 has the single root 0 with multiplicity 2
        let t = H::tropical();
        let r = tropical_roots(&t, &trop_poly(&[0.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].element, Element::tropical(0.0));
        assert_eq!(r.roots[0].multiplicity, 2);
        assert_eq!(r.total_multiplicity, 2);
        assert!(r.exhaustive);
    }

    #[test]
    fn tropical_roots_linear() {
        let t = H::tropical();
        let r = tropical_roots(&t, &trop_poly(&[0.0, 0.0])).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].element, Element::tropical(0.0));
        assert_eq!(r.roots[0].multiplicity, 1);
    }

    #[test]
    fn tropical_roots_missing_constant_term() {
        // 0·X² ⊞ 0·X: roots 0 and -∞
        let t = H::tropical();
        let p = Polynomial::new(
            &t,
            1,
            [
                (vec![1], Element::tropical(0.0)),
                (vec![2], Element::tropical(0.0)),
            ],
        )
        .unwrap();
        let r = tropical_roots(&t, &p).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[0].element, Element::tropical(f64::NEG_INFINITY));
        assert_eq!(r.roots[0].multiplicity, 1);
        assert_eq!(r.roots[1].element, Element::tropical(0.0));
        assert_eq!(r.total_multiplicity, 2);
    }

    #[test]
    fn tropical_roots_generic_breakpoints() {
        // max(3, 1 + x, 2x): breakpoints at x = 2 and... hull of
        // (0,3),(1,1),(2,0): the middle point is below the chord from (0,3)
        // to (2,0), so one edge of lattice length 2 with breakpoint 1.5
        let t = H::tropical();
        let r = tropical_roots(&t, &trop_poly(&[3.0, 1.0, 0.0])).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].element, Element::tropical(1.5));
        assert_eq!(r.roots[0].multiplicity, 2);
        // max(0, x, 2x - 3): two breakpoints 0 and 3
        let r = tropical_roots(&t, &trop_poly(&[0.0, 0.0, -3.0])).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[0].element, Element::tropical(0.0));
        assert_eq!(r.roots[1].element, Element::tropical(3.0));
        assert_eq!(r.total_multiplicity, 2);
    }

    #[test]
    fn finite_roots_krasner_example() {
        let k = H::krasner();
        let p = Polynomial::univariate(
            &k,
            &[Element::sym(1), Element::sym(1), Element::sym(1)],
        )
        .unwrap();
        let r = finite_roots(&k, &p).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].element, Element::sym(1));
        assert_eq!(r.roots[0].multiplicity, 2);
        assert_eq!(r.total_multiplicity, 2);
    }

    #[test]
    fn finite_roots_sign_example() {
        let s = H::sign();
        let p = Polynomial::univariate(
            &s,
            &[Element::sym(-1), Element::sym(1), Element::sym(1)],
        )
        .unwrap();
        let r = finite_roots(&s, &p).unwrap();
        assert!(r.roots.iter().any(|e| e.element == Element::sym(-1)));
    }

    #[test]
    fn finite_roots_krasner_linear() {
        let k = H::krasner();
        let p = Polynomial::univariate(&k, &[Element::sym(1), Element::sym(1)]).unwrap();
        let r = finite_roots(&k, &p).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 1);
    }

    #[test]
    fn multiplicity_examples() {
        let k = H::krasner();
        let p = Polynomial::univariate(
            &k,
            &[Element::sym(1), Element::sym(1), Element::sym(1)],
        )
        .unwrap();
        assert_eq!(multiplicity(&k, &p, &Element::sym(1)).unwrap(), 2);
        assert_eq!(multiplicity(&k, &p, &Element::sym(0)).unwrap(), 0);

        let s = H::sign();
        let q = Polynomial::univariate(&s, &[Element::sym(1), Element::sym(1)]).unwrap();
        assert_eq!(multiplicity(&s, &q, &Element::sym(-1)).unwrap(), 1);
        assert_eq!(multiplicity(&s, &q, &Element::sym(1)).unwrap(), 0);
    }

    #[test]
    fn certify_three_roots_of_degree_two() {
        let tc = H::complex_tropical();
        let (_, reports) = tc_multiplicity_bound_witness(&tc).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.is_root, "{:?}", r.point);
            assert!(r.agreement);
            assert_eq!(r.dominant_indices, vec![0, 1, 2]);
        }
    }

    #[test]
    fn certify_fast_path_dominant_singleton() {
        // X ⊞ 1 at magnitude e: the X term dominates strictly, fast path
        // fires and reports "not a root"
        let tc = H::complex_tropical();
        let p = Polynomial::univariate(&tc, &[tc.one(), tc.one()]).unwrap();
        let r = certify_root_tc(&tc, &p, &Element::polar(1.0, 0.0)).unwrap();
        assert_eq!(r.fast_path, Some(false));
        assert!(!r.is_root);
        assert!(r.agreement);
        assert_eq!(r.dominant_indices, vec![1]);
    }

    #[test]
    fn certify_fast_path_positive() {
        // X ⊞ 1 at -1: both terms unit magnitude... dominant set includes 0
        // so the fast path stays silent, evaluation certifies the root
        let tc = H::complex_tropical();
        let p = Polynomial::univariate(&tc, &[tc.one(), tc.one()]).unwrap();
        let r = certify_root_tc(&tc, &p, &Element::polar(0.0, std::f64::consts::PI)).unwrap();
        assert_eq!(r.fast_path, None);
        assert!(r.is_root);
        // X² ⊞ 1 at magnitude 1, angle π/2: x² = -1 cancels the constant;
        // dominant set {0, 2}
        let q = Polynomial::new(
            &tc,
            1,
            [(vec![0], tc.one()), (vec![2], tc.one())],
        )
        .unwrap();
        let r =
            certify_root_tc(&tc, &q, &Element::polar(0.0, std::f64::consts::FRAC_PI_2)).unwrap();
        assert!(r.is_root);
    }

    #[test]
    fn multiplicity_bound_sweeps() {
        let k = H::krasner();
        let rk = check_multiplicity_bound(&k, 3).unwrap();
        assert!(rk.passed(), "{:?}", rk.violations);
        assert!(rk.notes[0].contains("true"), "K reaches equality: {:?}", rk.notes);
        let s = H::sign();
        let rs = check_multiplicity_bound(&s, 3).unwrap();
        assert!(rs.passed(), "{:?}", rs.violations);
        assert_eq!(rk.checked, 1 + 2 + 4 + 8);
        assert_eq!(rs.checked, 2 + 6 + 18 + 54);
    }

    #[test]
    fn inheritance_sweeps() {
        for h in [H::krasner(), H::sign()] {
            let r = check_inheritance(&h, 3).unwrap();
            assert!(r.passed(), "{}: {:?}", h.name(), r.violations);
        }
    }

    #[test]
    fn pushforward_mult_sweeps() {
        let f = Homomorphism::<f64>::to_krasner(H::sign());
        let r = check_pushforward_mult(&f, 3).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        // the identity on K reaches equality trivially
        let id = Homomorphism::<f64>::to_krasner(H::krasner());
        assert!(check_pushforward_mult(&id, 3).unwrap().passed());
        // infinite carriers are excluded
        let ph = Homomorphism::<f64>::ph();
        assert!(matches!(
            check_pushforward_mult(&ph, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn roots_and_multiplicity_agree() {
        // multiplicity ≥ 1 exactly when finite_roots lists the element
        for h in [H::krasner(), H::sign()] {
            for p in enumerate_univariate(&h, 3).unwrap() {
                let report = finite_roots(&h, &p).unwrap();
                for a in h.elements().unwrap() {
                    let m = multiplicity(&h, &p, &a).unwrap();
                    let listed = report.roots.iter().any(|r| r.element == a);
                    assert_eq!(m >= 1, listed);
                    let ev = p.evaluate(&h, &[a.clone()]).unwrap();
                    assert_eq!(ev.is_root, m >= 1);
                }
            }
        }
    }

    #[test]
    fn degree_zero_has_no_roots() {
        let k = H::krasner();
        let p = Polynomial::univariate(&k, &[Element::sym(1)]).unwrap();
        let r = finite_roots(&k, &p).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.total_multiplicity, 0);
    }
}
