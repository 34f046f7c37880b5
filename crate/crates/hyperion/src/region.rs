//! Canonical finite unions of primitive regions.
//!
//! A multivalued sum is represented exactly as a union of primitive regions:
//!
//! - tropical sets: points of `ℝ ∪ {-∞}` and down-rays `{z ≤ a} ∪ {-∞}`,
//! - complex sets: origin-centered points, closed disks `{|c| ≤ r}` and arcs
//!   on origin-centered circles (radii stored in log scale),
//! - phase sets: the zero element, unit-circle points and unit-circle arcs,
//! - finite symbol sets and finite rational sets.
//!
//! Sets are kept in canonical form: no region is contained in another,
//! abutting arcs with compatible openness are merged, and the region list is
//! sorted (points before arcs before disks, then lexicographically on the
//! numeric fields), so structural equality of canonical sets is list
//! equality.
//!
//! The circle machinery at the bottom of the module (membership, exact
//! union, intersection, and the "strictly between" set of shortest-arc
//! interiors) is what makes the closed-form region rules for the phase and
//! complex hyperfields exact: every boundary case is decided by evaluating a
//! pointwise predicate at a finite list of critical angles and segment
//! midpoints, never by sampling.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::element::{total_cmp, Element, Family, FiniteSym, MagField, PhasePoint, Polar};
use crate::error::{Error, Result};
use crate::scalar::{tau, wrap_angle, Real, Tolerance};

/// Arc on a circle: starts at `lo ∈ [0, 2π)` and extends counterclockwise by
/// `extent ∈ [0, 2π]`. `extent = 0` is a single point, `extent = 2π` with
/// both ends closed is the full circle, with both ends open the circle
/// punctured at `lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArc<R> {
    lo: R,
    extent: R,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl<R: Real> CircleArc<R> {
    pub fn span(lo: R, extent: R, open_lo: bool, open_hi: bool) -> Self {
        let extent = extent.max(R::zero()).min(tau());
        CircleArc { lo: wrap_angle(lo), extent, open_lo, open_hi }
    }

    pub fn point(angle: R) -> Self {
        CircleArc { lo: wrap_angle(angle), extent: R::zero(), open_lo: false, open_hi: false }
    }

    pub fn full() -> Self {
        CircleArc { lo: R::zero(), extent: tau(), open_lo: false, open_hi: false }
    }

    pub fn lo(&self) -> R {
        self.lo
    }

    pub fn hi(&self) -> R {
        self.lo + self.extent
    }

    pub fn extent(&self) -> R {
        self.extent
    }

    pub fn is_point(&self) -> bool {
        self.extent == R::zero()
    }

    pub fn is_full_circle(&self) -> bool {
        self.extent >= tau() && !(self.open_lo && self.open_hi)
    }

    pub fn rotate(&self, delta: R) -> Self {
        CircleArc { lo: wrap_angle(self.lo + delta), ..*self }
    }

    pub fn contains(&self, theta: R, tol: &Tolerance<R>) -> bool {
        if self.extent >= tau() {
            if self.open_lo && self.open_hi {
                // punctured circle
                return !tol.angle_eq(theta, self.lo);
            }
            return true;
        }
        if self.is_point() {
            return !self.open_lo && !self.open_hi && tol.angle_eq(theta, self.lo);
        }
        let at_lo = tol.angle_eq(theta, self.lo);
        let at_hi = tol.angle_eq(theta, wrap_angle(self.hi()));
        if at_lo || at_hi {
            return (at_lo && !self.open_lo) || (at_hi && !self.open_hi);
        }
        let w = wrap_angle(theta - self.lo);
        w < self.extent
    }

    /// Member angles suitable for sampling; interior fractions are valid
    /// regardless of end openness.
    pub fn representatives(&self) -> Vec<R> {
        if self.is_point() {
            return vec![self.lo];
        }
        let quarter = self.extent / R::from_u8(4).unwrap();
        let mut reps = vec![
            wrap_angle(self.lo + quarter),
            wrap_angle(self.lo + quarter + quarter),
            wrap_angle(self.lo + quarter + quarter + quarter),
        ];
        if !self.open_lo {
            reps.push(self.lo);
        }
        if !self.open_hi && self.extent < tau() {
            reps.push(wrap_angle(self.hi()));
        }
        reps
    }

    fn approx_eq(&self, rhs: &Self, tol: &Tolerance<R>) -> bool {
        tol.angle_eq(self.lo, rhs.lo)
            && (self.extent - rhs.extent).abs() <= tol.eps
            && self.open_lo == rhs.open_lo
            && self.open_hi == rhs.open_hi
    }
}

/// Distance from `x` counterclockwise back to the nearest point of `arc`
/// strictly behind `x`, where "strictly" is tolerance-aware: witnesses
/// within `tol` of `x` do not count. Returns `0` when usable points of the
/// arc accumulate just behind `x`, and a value `≥ π` when nothing is behind.
fn behind_dist<R: Real>(x: R, arc: &CircleArc<R>, tol: &Tolerance<R>) -> R {
    if arc.extent >= tau() {
        return R::zero();
    }
    if arc.is_point() {
        if tol.angle_eq(x, arc.lo) {
            return tau();
        }
        return wrap_angle(x - arc.lo);
    }
    let w = wrap_angle(x - arc.lo);
    if w > tol.eps && w <= arc.extent {
        R::zero()
    } else {
        // x at or tolerance-equal to the arc start: the only points behind
        // are the previous lift, ending at hi
        wrap_angle(x - arc.hi())
    }
}

/// Mirror of [`behind_dist`]: distance forward to the nearest point of `arc`
/// strictly ahead of `x`.
fn ahead_dist<R: Real>(x: R, arc: &CircleArc<R>, tol: &Tolerance<R>) -> R {
    if arc.extent >= tau() {
        return R::zero();
    }
    if arc.is_point() {
        if tol.angle_eq(x, arc.lo) {
            return tau();
        }
        return wrap_angle(arc.lo - x);
    }
    let w = wrap_angle(x - arc.lo);
    if w < arc.extent - tol.eps {
        R::zero()
    } else {
        wrap_angle(arc.lo - x)
    }
}

/// The set of angles strictly inside the shortest arc between some `a ∈ A`
/// and some `b ∈ B`. `x` qualifies exactly when an `A`-point lies strictly
/// behind and a `B`-point strictly ahead with total angular gap `< π` (or
/// the mirrored orientation). The result is an open subset of the circle,
/// insensitive to the end-openness of the inputs.
pub fn strict_between<R: Real>(
    a: &CircleArc<R>,
    b: &CircleArc<R>,
    tol: &Tolerance<R>,
) -> Vec<CircleArc<R>> {
    // The total-gap comparison sits exactly on π when input endpoints are
    // antipodal; guard it by the tolerance so that all fold orders agree.
    let pi = R::PI();
    let guard = pi - tol.eps;
    let pred = |x: R| -> bool {
        behind_dist(x, a, tol) + ahead_dist(x, b, tol) < guard
            || behind_dist(x, b, tol) + ahead_dist(x, a, tol) < guard
    };
    let mut crit = vec![
        a.lo,
        wrap_angle(a.hi()),
        b.lo,
        wrap_angle(b.hi()),
        wrap_angle(a.lo + pi),
        wrap_angle(a.hi() + pi),
        wrap_angle(b.lo + pi),
        wrap_angle(b.hi() + pi),
    ];
    cluster_angles(&mut crit, tol);
    evaluate_and_assemble(&crit, pred)
}

/// Intersection of two arcs as at most two canonical pieces. Endpoint
/// coincidences within tolerance intersect the openness flags.
pub fn arc_intersection<R: Real>(
    a: &CircleArc<R>,
    b: &CircleArc<R>,
    tol: &Tolerance<R>,
) -> Vec<CircleArc<R>> {
    if a.extent >= tau() && !a.open_lo && !a.open_hi {
        return vec![*b];
    }
    if b.extent >= tau() && !b.open_lo && !b.open_hi {
        return vec![*a];
    }
    let t = tau::<R>();
    let (a1, a2) = (a.lo, a.hi());
    let mut pieces: Vec<CircleArc<R>> = Vec::new();
    for k in -1..=1 {
        let shift = t * R::from_i32(k).unwrap();
        let (b1, b2) = (b.lo + shift, b.hi() + shift);
        // intersect [a1, a2] with [b1, b2] on the line
        let (lo, open_lo) = if (a1 - b1).abs() <= tol.eps {
            (a1.max(b1), a.open_lo || b.open_lo)
        } else if a1 > b1 {
            (a1, a.open_lo)
        } else {
            (b1, b.open_lo)
        };
        let (hi, open_hi) = if (a2 - b2).abs() <= tol.eps {
            (a2.min(b2), a.open_hi || b.open_hi)
        } else if a2 < b2 {
            (a2, a.open_hi)
        } else {
            (b2, b.open_hi)
        };
        if hi - lo > tol.eps {
            pieces.push(CircleArc::span(lo, hi - lo, open_lo, open_hi));
        } else if (hi - lo).abs() <= tol.eps && !open_lo && !open_hi {
            pieces.push(CircleArc::point(lo));
        }
    }
    circle_union(pieces, tol)
}

/// Exact union of arc pieces into maximal connected components.
///
/// All piece endpoints are collected as critical angles; coverage is decided
/// at every critical angle and at every midpoint between consecutive ones,
/// which determines the union exactly because coverage is constant on the
/// open segments between critical angles.
pub fn circle_union<R: Real>(pieces: Vec<CircleArc<R>>, tol: &Tolerance<R>) -> Vec<CircleArc<R>> {
    // open arcs of extent ≤ 2·tol contain nothing under the membership policy
    let pieces: Vec<CircleArc<R>> = pieces
        .into_iter()
        .filter(|p| {
            !(p.is_point() && (p.open_lo || p.open_hi))
                && !(p.extent < tau()
                    && (p.open_lo || p.open_hi)
                    && p.extent <= tol.eps + tol.eps)
        })
        .collect();
    if pieces.is_empty() {
        return Vec::new();
    }
    let mut crit: Vec<R> = Vec::new();
    for p in &pieces {
        crit.push(p.lo);
        crit.push(wrap_angle(p.hi()));
    }
    cluster_angles(&mut crit, tol);
    let covered = |x: R| pieces.iter().any(|p| p.contains(x, tol));
    evaluate_and_assemble(&crit, covered)
}

/// Sorts, deduplicates within tolerance, and merges the circular wrap
/// between the first and last cluster.
fn cluster_angles<R: Real>(angles: &mut Vec<R>, tol: &Tolerance<R>) {
    angles.sort_by(|x, y| total_cmp(*x, *y));
    let mut out: Vec<R> = Vec::with_capacity(angles.len());
    for &a in angles.iter() {
        match out.last() {
            Some(&prev) if (a - prev).abs() <= tol.eps => {}
            _ => out.push(a),
        }
    }
    if out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if tau::<R>() - last + first <= tol.eps {
            out.pop();
        }
    }
    *angles = out;
}

/// Evaluates a coverage predicate at each critical angle and segment
/// midpoint, then reassembles maximal covered runs into arcs.
fn evaluate_and_assemble<R: Real, F: Fn(R) -> bool>(crit: &[R], covered: F) -> Vec<CircleArc<R>> {
    let k = crit.len();
    debug_assert!(k >= 1);
    let two = R::from_u8(2).unwrap();
    let mut pt_cov = Vec::with_capacity(k);
    let mut seg_cov = Vec::with_capacity(k);
    for i in 0..k {
        pt_cov.push(covered(crit[i]));
        let gap = if k == 1 { tau() } else { wrap_angle(crit[(i + 1) % k] - crit[i]) };
        let gap = if gap == R::zero() { tau() } else { gap };
        seg_cov.push(covered(wrap_angle(crit[i] + gap / two)));
    }
    assemble_circle(crit, &pt_cov, &seg_cov)
}

/// Turns per-point / per-segment coverage flags into maximal arcs.
fn assemble_circle<R: Real>(crit: &[R], pt_cov: &[bool], seg_cov: &[bool]) -> Vec<CircleArc<R>> {
    let k = crit.len();
    let n = 2 * k;
    let covered = |item: usize| -> bool {
        if item.is_multiple_of(2) { pt_cov[item / 2] } else { seg_cov[item / 2] }
    };
    if (0..n).all(covered) {
        return vec![CircleArc::full()];
    }
    let start = (0..n).find(|&j| !covered(j)).unwrap();
    let mut components = Vec::new();
    let mut run: Vec<usize> = Vec::new();
    for off in 1..=n {
        let j = (start + off) % n;
        if covered(j) {
            run.push(j);
        } else if !run.is_empty() {
            components.push(std::mem::take(&mut run));
        }
    }
    if !run.is_empty() {
        components.push(run);
    }
    let mut arcs = Vec::with_capacity(components.len());
    for comp in components {
        let first = comp[0];
        let last = *comp.last().unwrap();
        let (start_angle, open_start) = if first % 2 == 0 {
            (crit[first / 2], false)
        } else {
            (crit[first / 2], true)
        };
        let (end_angle, open_end) = if last % 2 == 0 {
            (crit[last / 2], false)
        } else {
            (crit[(last / 2 + 1) % k], true)
        };
        let mut extent = wrap_angle(end_angle - start_angle);
        if extent == R::zero() && comp.len() > 1 {
            extent = tau();
        }
        if extent == R::zero() && comp.len() == 1 && first % 2 == 1 {
            extent = tau();
        }
        arcs.push(CircleArc { lo: start_angle, extent, open_lo: open_start, open_hi: open_end });
    }
    arcs.sort_by(|x, y| total_cmp(x.lo, y.lo));
    arcs
}

/// Primitive region of a tropical value set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TropRegion<R> {
    Point(R),
    /// `{z ≤ top} ∪ {-∞}`, `top` finite.
    DownRay(R),
}

/// Primitive region of a complex value set; everything is origin-centered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexRegion<R> {
    Point(Polar<R>),
    Arc { log_radius: R, arc: CircleArc<R> },
    Disk { log_radius: R },
}

/// Primitive region of a phase value set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseRegion<R> {
    Zero,
    Point(R),
    Arc(CircleArc<R>),
}

/// Canonical nonempty union of primitive regions of one family.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueSet<R> {
    Finite(BTreeSet<FiniteSym>),
    Trop(Vec<TropRegion<R>>),
    Complex(Vec<ComplexRegion<R>>),
    Phase(Vec<PhaseRegion<R>>),
    Rational(Vec<BigRational>),
}

impl<R: Real> ValueSet<R> {
    pub fn family(&self) -> Family {
        match self {
            // symbol sets serve both finite carriers; `Sign` is the superset
            ValueSet::Finite(_) => Family::Sign,
            ValueSet::Trop(_) => Family::Tropical,
            ValueSet::Complex(_) => Family::ComplexTropical,
            ValueSet::Phase(_) => Family::Phase,
            ValueSet::Rational(_) => Family::Rational,
        }
    }

    pub fn finite(syms: impl IntoIterator<Item = FiniteSym>) -> Self {
        ValueSet::Finite(syms.into_iter().collect())
    }

    pub fn singleton(x: &Element<R>) -> Self {
        match x {
            Element::Finite(s) => ValueSet::finite([*s]),
            Element::Tropical(v) => ValueSet::Trop(vec![TropRegion::Point(*v)]),
            Element::Complex(p) => ValueSet::Complex(vec![ComplexRegion::Point(*p)]),
            Element::Phase(PhasePoint::Zero) => ValueSet::Phase(vec![PhaseRegion::Zero]),
            Element::Phase(PhasePoint::Unit(a)) => {
                ValueSet::Phase(vec![PhaseRegion::Point(*a)])
            }
            Element::Rational(q) => ValueSet::Rational(vec![q.clone()]),
        }
    }

    /// Canonicalizes a list of tropical regions.
    pub fn trop_from(regions: Vec<TropRegion<R>>, tol: &Tolerance<R>) -> Self {
        let mut top: Option<R> = None;
        let mut points: Vec<R> = Vec::new();
        for r in regions {
            match r {
                TropRegion::DownRay(a) => {
                    if a.is_infinite() && a < R::zero() {
                        points.push(R::neg_infinity());
                    } else {
                        top = Some(match top {
                            Some(t) => t.max(a),
                            None => a,
                        });
                    }
                }
                TropRegion::Point(v) => points.push(v),
            }
        }
        let mut out: Vec<TropRegion<R>> = Vec::new();
        points.sort_by(|x, y| total_cmp(*x, *y));
        for v in points {
            let absorbed = match top {
                Some(t) => tol.mag_le(v, t),
                None => false,
            };
            if absorbed {
                continue;
            }
            if let Some(TropRegion::Point(prev)) = out.last() {
                if tol.mag_eq(*prev, v) {
                    continue;
                }
            }
            out.push(TropRegion::Point(v));
        }
        if let Some(t) = top {
            out.push(TropRegion::DownRay(t));
        }
        debug_assert!(!out.is_empty());
        ValueSet::Trop(out)
    }

    /// Canonicalizes a list of complex regions: a maximal disk absorbs
    /// everything at or below its radius, then each remaining circle is
    /// merged into maximal arcs.
    pub fn complex_from(regions: Vec<ComplexRegion<R>>, tol: &Tolerance<R>) -> Self {
        let mut disk: Option<R> = None;
        for r in &regions {
            if let ComplexRegion::Disk { log_radius } = r {
                if log_radius.is_infinite() && *log_radius < R::zero() {
                    continue; // degenerate disk is the zero point
                }
                disk = Some(match disk {
                    Some(d) => d.max(*log_radius),
                    None => *log_radius,
                });
            }
        }
        let mut has_zero = false;
        let mut on_circles: Vec<(R, CircleArc<R>)> = Vec::new();
        for r in regions {
            match r {
                ComplexRegion::Disk { log_radius } => {
                    if log_radius.is_infinite() && log_radius < R::zero() {
                        has_zero = true;
                    }
                }
                ComplexRegion::Point(p) => {
                    if p.is_zero() {
                        has_zero = true;
                    } else if !matches!(disk, Some(d) if tol.mag_le(p.log_mag(), d)) {
                        on_circles.push((p.log_mag(), CircleArc::point(p.angle())));
                    }
                }
                ComplexRegion::Arc { log_radius, arc } => {
                    if !matches!(disk, Some(d) if tol.mag_le(log_radius, d)) {
                        on_circles.push((log_radius, arc));
                    }
                }
            }
        }
        let mut out: Vec<ComplexRegion<R>> = Vec::new();
        if has_zero && disk.is_none() {
            out.push(ComplexRegion::Point(Polar::zero()));
        }
        // group by radius cluster
        on_circles.sort_by(|x, y| total_cmp(x.0, y.0));
        let mut i = 0;
        let mut merged: Vec<(R, Vec<CircleArc<R>>)> = Vec::new();
        while i < on_circles.len() {
            let radius = on_circles[i].0;
            let mut group = vec![on_circles[i].1];
            let mut j = i + 1;
            while j < on_circles.len() && tol.mag_eq(on_circles[j].0, radius) {
                group.push(on_circles[j].1);
                j += 1;
            }
            merged.push((radius, circle_union(group, tol)));
            i = j;
        }
        let mut arcs: Vec<ComplexRegion<R>> = Vec::new();
        for (radius, comps) in merged {
            for arc in comps {
                if arc.is_point() {
                    out.push(ComplexRegion::Point(Polar::new(radius, arc.lo)));
                } else {
                    arcs.push(ComplexRegion::Arc { log_radius: radius, arc });
                }
            }
        }
        out.sort_by(|a, b| complex_region_key(a, b));
        arcs.sort_by(|a, b| complex_region_key(a, b));
        out.extend(arcs);
        if let Some(d) = disk {
            out.push(ComplexRegion::Disk { log_radius: d });
        }
        debug_assert!(!out.is_empty());
        ValueSet::Complex(out)
    }

    /// Canonicalizes a list of phase regions.
    pub fn phase_from(regions: Vec<PhaseRegion<R>>, tol: &Tolerance<R>) -> Self {
        let mut has_zero = false;
        let mut pieces: Vec<CircleArc<R>> = Vec::new();
        for r in regions {
            match r {
                PhaseRegion::Zero => has_zero = true,
                PhaseRegion::Point(a) => pieces.push(CircleArc::point(a)),
                PhaseRegion::Arc(arc) => pieces.push(arc),
            }
        }
        let mut out: Vec<PhaseRegion<R>> = Vec::new();
        if has_zero {
            out.push(PhaseRegion::Zero);
        }
        let mut points: Vec<PhaseRegion<R>> = Vec::new();
        let mut arcs: Vec<PhaseRegion<R>> = Vec::new();
        for comp in circle_union(pieces, tol) {
            if comp.is_point() {
                points.push(PhaseRegion::Point(comp.lo()));
            } else {
                arcs.push(PhaseRegion::Arc(comp));
            }
        }
        points.sort_by(|a, b| phase_region_key(a, b));
        arcs.sort_by(|a, b| phase_region_key(a, b));
        out.extend(points);
        out.extend(arcs);
        debug_assert!(!out.is_empty());
        ValueSet::Phase(out)
    }

    pub fn rational(values: Vec<BigRational>) -> Self {
        let mut v = values;
        v.sort();
        v.dedup();
        ValueSet::Rational(v)
    }

    /// Exact membership under the tolerance policy.
    pub fn contains(&self, x: &Element<R>, tol: &Tolerance<R>) -> Result<bool> {
        match (self, x) {
            (ValueSet::Finite(set), Element::Finite(s)) => Ok(set.contains(s)),
            (ValueSet::Trop(regions), Element::Tropical(v)) => {
                Ok(regions.iter().any(|r| match r {
                    TropRegion::Point(a) => tol.mag_eq(*a, *v),
                    TropRegion::DownRay(a) => tol.mag_le(*v, *a),
                }))
            }
            (ValueSet::Complex(regions), Element::Complex(z)) => {
                Ok(regions.iter().any(|r| match r {
                    ComplexRegion::Point(p) => p.approx_eq(z, tol),
                    ComplexRegion::Disk { log_radius } => tol.mag_le(z.log_mag(), *log_radius),
                    ComplexRegion::Arc { log_radius, arc } => {
                        !z.is_zero()
                            && tol.mag_eq(z.log_mag(), *log_radius)
                            && arc.contains(z.angle(), tol)
                    }
                }))
            }
            (ValueSet::Phase(regions), Element::Phase(p)) => {
                Ok(regions.iter().any(|r| match (r, p) {
                    (PhaseRegion::Zero, PhasePoint::Zero) => true,
                    (PhaseRegion::Point(a), PhasePoint::Unit(b)) => tol.angle_eq(*a, *b),
                    (PhaseRegion::Arc(arc), PhasePoint::Unit(b)) => arc.contains(*b, tol),
                    _ => false,
                }))
            }
            (ValueSet::Rational(set), Element::Rational(q)) => Ok(set.contains(q)),
            _ => Err(Error::CarrierMismatch {
                expected: self.family(),
                found: element_family(x),
            }),
        }
    }

    /// A finite list of members covering every region (used by the
    /// reversibility and homomorphism checks).
    pub fn representatives(&self) -> Vec<Element<R>> {
        match self {
            ValueSet::Finite(set) => set.iter().map(|s| Element::Finite(*s)).collect(),
            ValueSet::Rational(set) => set.iter().map(|q| Element::Rational(q.clone())).collect(),
            ValueSet::Trop(regions) => {
                let mut reps = Vec::new();
                for r in regions {
                    match r {
                        TropRegion::Point(v) => reps.push(Element::Tropical(*v)),
                        TropRegion::DownRay(a) => {
                            reps.push(Element::Tropical(*a));
                            reps.push(Element::Tropical(*a - R::one()));
                            reps.push(Element::Tropical(
                                *a - R::from_f64(7.25).unwrap(),
                            ));
                            reps.push(Element::Tropical(R::neg_infinity()));
                        }
                    }
                }
                reps
            }
            ValueSet::Complex(regions) => {
                let mut reps = Vec::new();
                for r in regions {
                    match r {
                        ComplexRegion::Point(p) => reps.push(Element::Complex(*p)),
                        ComplexRegion::Arc { log_radius, arc } => {
                            for a in arc.representatives() {
                                reps.push(Element::polar(*log_radius, a));
                            }
                        }
                        ComplexRegion::Disk { log_radius } => {
                            reps.push(Element::Complex(Polar::zero()));
                            for i in 0..4u8 {
                                let a = R::from_u8(i).unwrap() * R::FRAC_PI_2();
                                reps.push(Element::polar(*log_radius, a));
                            }
                            reps.push(Element::polar(*log_radius - R::one(), R::one()));
                            reps.push(Element::polar(
                                *log_radius - R::from_f64(3.5).unwrap(),
                                R::from_f64(2.4).unwrap(),
                            ));
                        }
                    }
                }
                reps
            }
            ValueSet::Phase(regions) => {
                let mut reps = Vec::new();
                for r in regions {
                    match r {
                        PhaseRegion::Zero => reps.push(Element::Phase(PhasePoint::Zero)),
                        PhaseRegion::Point(a) => reps.push(Element::phase_unit(*a)),
                        PhaseRegion::Arc(arc) => {
                            for a in arc.representatives() {
                                reps.push(Element::phase_unit(a));
                            }
                        }
                    }
                }
                reps
            }
        }
    }

    pub fn approx_eq(&self, rhs: &Self, tol: &Tolerance<R>) -> bool {
        match (self, rhs) {
            (ValueSet::Finite(a), ValueSet::Finite(b)) => a == b,
            (ValueSet::Rational(a), ValueSet::Rational(b)) => a == b,
            (ValueSet::Trop(a), ValueSet::Trop(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| match (x, y) {
                        (TropRegion::Point(u), TropRegion::Point(v)) => tol.mag_eq(*u, *v),
                        (TropRegion::DownRay(u), TropRegion::DownRay(v)) => tol.mag_eq(*u, *v),
                        _ => false,
                    })
            }
            (ValueSet::Complex(a), ValueSet::Complex(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| match (x, y) {
                        (ComplexRegion::Point(p), ComplexRegion::Point(q)) => p.approx_eq(q, tol),
                        (
                            ComplexRegion::Arc { log_radius: r1, arc: a1 },
                            ComplexRegion::Arc { log_radius: r2, arc: a2 },
                        ) => tol.mag_eq(*r1, *r2) && a1.approx_eq(a2, tol),
                        (
                            ComplexRegion::Disk { log_radius: r1 },
                            ComplexRegion::Disk { log_radius: r2 },
                        ) => tol.mag_eq(*r1, *r2),
                        _ => false,
                    })
            }
            (ValueSet::Phase(a), ValueSet::Phase(b)) => {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| match (x, y) {
                        (PhaseRegion::Zero, PhaseRegion::Zero) => true,
                        (PhaseRegion::Point(u), PhaseRegion::Point(v)) => tol.angle_eq(*u, *v),
                        (PhaseRegion::Arc(u), PhaseRegion::Arc(v)) => u.approx_eq(v, tol),
                        _ => false,
                    })
            }
            _ => false,
        }
    }

    pub fn region_count(&self) -> usize {
        match self {
            ValueSet::Finite(s) => s.len(),
            ValueSet::Trop(r) => r.len(),
            ValueSet::Complex(r) => r.len(),
            ValueSet::Phase(r) => r.len(),
            ValueSet::Rational(r) => r.len(),
        }
    }
}

pub(crate) fn element_family<R: Real>(x: &Element<R>) -> Family {
    match x {
        Element::Finite(FiniteSym::MinusOne) => Family::Sign,
        Element::Finite(_) => Family::Krasner,
        Element::Tropical(_) => Family::Tropical,
        Element::Complex(_) => Family::ComplexTropical,
        Element::Phase(_) => Family::Phase,
        Element::Rational(_) => Family::Rational,
    }
}

fn complex_region_key<R: Real>(a: &ComplexRegion<R>, b: &ComplexRegion<R>) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let rank = |r: &ComplexRegion<R>| match r {
        ComplexRegion::Point(_) => 0u8,
        ComplexRegion::Arc { .. } => 1,
        ComplexRegion::Disk { .. } => 2,
    };
    match rank(a).cmp(&rank(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    match (a, b) {
        (ComplexRegion::Point(p), ComplexRegion::Point(q)) => total_cmp(p.log_mag(), q.log_mag())
            .then_with(|| total_cmp(p.angle(), q.angle())),
        (
            ComplexRegion::Arc { log_radius: r1, arc: a1 },
            ComplexRegion::Arc { log_radius: r2, arc: a2 },
        ) => total_cmp(*r1, *r2)
            .then_with(|| total_cmp(a1.lo(), a2.lo()))
            .then_with(|| total_cmp(a1.extent(), a2.extent())),
        (ComplexRegion::Disk { log_radius: r1 }, ComplexRegion::Disk { log_radius: r2 }) => {
            total_cmp(*r1, *r2)
        }
        _ => Ordering::Equal,
    }
}

fn phase_region_key<R: Real>(a: &PhaseRegion<R>, b: &PhaseRegion<R>) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let rank = |r: &PhaseRegion<R>| match r {
        PhaseRegion::Zero => 0u8,
        PhaseRegion::Point(_) => 1,
        PhaseRegion::Arc(_) => 2,
    };
    match rank(a).cmp(&rank(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    match (a, b) {
        (PhaseRegion::Point(u), PhaseRegion::Point(v)) => total_cmp(*u, *v),
        (PhaseRegion::Arc(u), PhaseRegion::Arc(v)) => {
            total_cmp(u.lo(), v.lo()).then_with(|| total_cmp(u.extent(), v.extent()))
        }
        _ => Ordering::Equal,
    }
}

// --- JSON encoding -------------------------------------------------------
//
// {"family": str, "regions": [{"kind": "point"|"downray"|"disk"|"arc", ...}]}
// with angles in radians, magnitudes as log-scale floats, and -∞ as "-inf".

struct RegionJson<'a, R>(&'a ValueSet<R>);

impl<R: Real> Serialize for ValueSet<R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let family = self.family();
        let mut st = ser.serialize_struct("ValueSet", 2)?;
        st.serialize_field("family", family.code())?;
        st.serialize_field("regions", &RegionJson(self))?;
        st.end()
    }
}

impl<'a, R: Real> Serialize for RegionJson<'a, R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            ValueSet::Finite(set) => {
                let mut seq = ser.serialize_seq(Some(set.len()))?;
                for s in set {
                    seq.serialize_element(&FinitePointJson(s.as_i8()))?;
                }
                seq.end()
            }
            ValueSet::Rational(set) => {
                let mut seq = ser.serialize_seq(Some(set.len()))?;
                for q in set {
                    seq.serialize_element(&RationalPointJson(q))?;
                }
                seq.end()
            }
            ValueSet::Trop(regions) => {
                let mut seq = ser.serialize_seq(Some(regions.len()))?;
                for r in regions {
                    seq.serialize_element(&TropRegionJson(r))?;
                }
                seq.end()
            }
            ValueSet::Complex(regions) => {
                let mut seq = ser.serialize_seq(Some(regions.len()))?;
                for r in regions {
                    seq.serialize_element(&ComplexRegionJson(r))?;
                }
                seq.end()
            }
            ValueSet::Phase(regions) => {
                let mut seq = ser.serialize_seq(Some(regions.len()))?;
                for r in regions {
                    seq.serialize_element(&PhaseRegionJson(r))?;
                }
                seq.end()
            }
        }
    }
}

struct FinitePointJson(i8);
impl Serialize for FinitePointJson {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Region", 2)?;
        st.serialize_field("kind", "point")?;
        st.serialize_field("value", &self.0)?;
        st.end()
    }
}

struct RationalPointJson<'a>(&'a BigRational);
impl<'a> Serialize for RationalPointJson<'a> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Region", 2)?;
        st.serialize_field("kind", "point")?;
        st.serialize_field("value", &self.0.to_string())?;
        st.end()
    }
}

struct TropRegionJson<'a, R>(&'a TropRegion<R>);
impl<'a, R: Real> Serialize for TropRegionJson<'a, R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            TropRegion::Point(v) => {
                let mut st = ser.serialize_struct("Region", 2)?;
                st.serialize_field("kind", "point")?;
                st.serialize_field("value", &MagField(*v))?;
                st.end()
            }
            TropRegion::DownRay(a) => {
                let mut st = ser.serialize_struct("Region", 2)?;
                st.serialize_field("kind", "downray")?;
                st.serialize_field("value", &MagField(*a))?;
                st.end()
            }
        }
    }
}

struct ComplexRegionJson<'a, R>(&'a ComplexRegion<R>);
impl<'a, R: Real> Serialize for ComplexRegionJson<'a, R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            ComplexRegion::Point(p) => {
                let mut st = ser.serialize_struct("Region", 3)?;
                st.serialize_field("kind", "point")?;
                st.serialize_field("log_mag", &MagField(p.log_mag()))?;
                st.serialize_field("angle", &p.angle().to_f64())?;
                st.end()
            }
            ComplexRegion::Arc { log_radius, arc } => {
                let mut st = ser.serialize_struct("Region", 6)?;
                st.serialize_field("kind", "arc")?;
                st.serialize_field("log_radius", &MagField(*log_radius))?;
                st.serialize_field("lo", &arc.lo().to_f64())?;
                st.serialize_field("hi", &arc.hi().to_f64())?;
                st.serialize_field("open_lo", &arc.open_lo)?;
                st.serialize_field("open_hi", &arc.open_hi)?;
                st.end()
            }
            ComplexRegion::Disk { log_radius } => {
                let mut st = ser.serialize_struct("Region", 2)?;
                st.serialize_field("kind", "disk")?;
                st.serialize_field("log_radius", &MagField(*log_radius))?;
                st.end()
            }
        }
    }
}

struct PhaseRegionJson<'a, R>(&'a PhaseRegion<R>);
impl<'a, R: Real> Serialize for PhaseRegionJson<'a, R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            PhaseRegion::Zero => {
                let mut st = ser.serialize_struct("Region", 2)?;
                st.serialize_field("kind", "point")?;
                st.serialize_field("zero", &true)?;
                st.end()
            }
            PhaseRegion::Point(a) => {
                let mut st = ser.serialize_struct("Region", 3)?;
                st.serialize_field("kind", "point")?;
                st.serialize_field("zero", &false)?;
                st.serialize_field("angle", &a.to_f64())?;
                st.end()
            }
            PhaseRegion::Arc(arc) => {
                let mut st = ser.serialize_struct("Region", 5)?;
                st.serialize_field("kind", "arc")?;
                st.serialize_field("lo", &arc.lo().to_f64())?;
                st.serialize_field("hi", &arc.hi().to_f64())?;
                st.serialize_field("open_lo", &arc.open_lo)?;
                st.serialize_field("open_hi", &arc.open_hi)?;
                st.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerance<f64> {
        Tolerance::default_policy()
    }

    #[test]
    fn arc_membership_respects_openness() {
        let arc = CircleArc::span(1.0_f64, 1.5, true, false);
        assert!(!arc.contains(1.0, &tol()));
        assert!(arc.contains(2.5, &tol()));
        assert!(arc.contains(1.7, &tol()));
        assert!(!arc.contains(2.6, &tol()));
        assert!(!arc.contains(0.9, &tol()));
    }

    #[test]
    fn arc_membership_wraps() {
        let arc = CircleArc::span(6.0_f64, 1.0, false, false);
        assert!(arc.contains(6.2, &tol()));
        assert!(arc.contains(0.2, &tol()));
        assert!(!arc.contains(1.2, &tol()));
        assert!(arc.contains(6.0, &tol()));
        assert!(arc.contains(crate::scalar::wrap_angle(7.0), &tol()));
    }

    #[test]
    fn punctured_circle_excludes_only_puncture() {
        let arc = CircleArc::span(1.0_f64, tau::<f64>(), true, true);
        assert!(!arc.contains(1.0, &tol()));
        assert!(arc.contains(1.1, &tol()));
        assert!(arc.contains(0.9, &tol()));
        assert!(arc.contains(4.0, &tol()));
    }

    #[test]
    fn union_merges_abutting_arcs_with_compatible_openness() {
        // (0, 1) ∪ [1, 2) merges into (0, 2); (0, 1) ∪ (1, 2) stays split
        let merged = circle_union(
            vec![
                CircleArc::span(0.0_f64, 1.0, true, true),
                CircleArc::span(1.0, 1.0, false, true),
            ],
            &tol(),
        );
        assert_eq!(merged.len(), 1);
        assert!(merged[0].open_lo && merged[0].open_hi);
        assert!((merged[0].extent() - 2.0).abs() < 1e-12);

        let split = circle_union(
            vec![
                CircleArc::span(0.0_f64, 1.0, true, true),
                CircleArc::span(1.0, 1.0, true, true),
            ],
            &tol(),
        );
        assert_eq!(split.len(), 2);
    }

    #[test]
    fn union_detects_full_circle() {
        let full = circle_union(
            vec![
                CircleArc::span(0.0_f64, 4.0, false, false),
                CircleArc::span(3.5, 3.5, false, false),
            ],
            &tol(),
        );
        assert_eq!(full, vec![CircleArc::full()]);
    }

    #[test]
    fn union_point_closes_open_end() {
        let merged = circle_union(
            vec![CircleArc::span(0.5_f64, 1.0, true, true), CircleArc::point(1.5)],
            &tol(),
        );
        assert_eq!(merged.len(), 1);
        assert!(merged[0].open_lo);
        assert!(!merged[0].open_hi);
    }

    #[test]
    fn union_produces_punctured_circle() {
        let merged = circle_union(
            vec![
                CircleArc::span(1.0_f64, PI, true, false),
                CircleArc::span(1.0 + PI, PI, true, true),
            ],
            &tol(),
        );
        // covers everything except the single angle 1.0
        assert_eq!(merged.len(), 1);
        assert!((merged[0].extent() - tau::<f64>()).abs() < 1e-12);
        assert!(merged[0].open_lo && merged[0].open_hi);
        assert!(!merged[0].contains(1.0, &tol()));
        assert!(merged[0].contains(1.0 + PI, &tol()));
    }

    #[test]
    fn strict_between_two_points_is_open_short_arc() {
        let a = CircleArc::point(0.0_f64);
        let b = CircleArc::point(1.0_f64);
        let i = strict_between(&a, &b, &tol());
        assert_eq!(i.len(), 1);
        assert!(i[0].open_lo && i[0].open_hi);
        assert!((i[0].lo() - 0.0).abs() < 1e-12);
        assert!((i[0].extent() - 1.0).abs() < 1e-12);
        assert!(!i[0].contains(0.0, &tol()));
        assert!(i[0].contains(0.5, &tol()));
        assert!(!i[0].contains(1.0, &tol()));
    }

    #[test]
    fn strict_between_antipodal_points_is_empty() {
        let a = CircleArc::point(0.3_f64);
        let b = CircleArc::point(0.3 + PI);
        assert!(strict_between(&a, &b, &tol()).is_empty());
    }

    #[test]
    fn strict_between_equal_points_is_empty() {
        let a = CircleArc::point(2.0_f64);
        assert!(strict_between(&a, &a, &tol()).is_empty());
    }

    #[test]
    fn intersection_splits_into_two_pieces() {
        // A wraps around both ends of B's complement
        let a = CircleArc::span(5.0_f64, 3.0, false, false); // [5.0, 8.0] ≅ [5, 2π)∪[0, 1.717]
        let b = CircleArc::span(0.0, 6.0, false, false);
        let pieces = arc_intersection(&a, &b, &tol());
        assert_eq!(pieces.len(), 2);
    }

    #[test]
    fn trop_canonical_absorbs_points_into_downray() {
        let s = ValueSet::trop_from(
            vec![
                TropRegion::Point(2.0_f64),
                TropRegion::Point(-1.0),
                TropRegion::DownRay(3.0),
                TropRegion::DownRay(1.0),
                TropRegion::Point(5.0),
            ],
            &tol(),
        );
        match &s {
            ValueSet::Trop(r) => {
                assert_eq!(r.len(), 2);
                assert_eq!(r[0], TropRegion::Point(5.0));
                assert_eq!(r[1], TropRegion::DownRay(3.0));
            }
            _ => panic!("wrong family"),
        }
        assert!(s.contains(&Element::Tropical(f64::NEG_INFINITY), &tol()).unwrap());
        assert!(s.contains(&Element::Tropical(2.5), &tol()).unwrap());
        assert!(!s.contains(&Element::Tropical(4.0), &tol()).unwrap());
    }

    #[test]
    fn complex_canonical_disk_absorbs() {
        let s = ValueSet::complex_from(
            vec![
                ComplexRegion::Disk { log_radius: 1.0_f64 },
                ComplexRegion::Point(Polar::new(0.5, 2.0)),
                ComplexRegion::Point(Polar::new(2.0, 0.1)),
                ComplexRegion::Arc { log_radius: 0.9, arc: CircleArc::span(0.0, 1.0, false, false) },
                ComplexRegion::Disk { log_radius: 0.2 },
            ],
            &tol(),
        );
        match &s {
            ValueSet::Complex(r) => {
                assert_eq!(r.len(), 2);
                assert!(matches!(r[0], ComplexRegion::Point(_)));
                assert!(matches!(r[1], ComplexRegion::Disk { log_radius } if log_radius == 1.0));
            }
            _ => panic!("wrong family"),
        }
        // zero is in every disk
        assert!(s
            .contains(&Element::Complex(Polar::zero()), &tol())
            .unwrap());
    }

    #[test]
    fn value_set_json_shape() {
        let s = ValueSet::trop_from(
            vec![TropRegion::Point(5.0_f64), TropRegion::DownRay(1.0)],
            &tol(),
        );
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"family":"T","regions":[{"kind":"point","value":5.0},{"kind":"downray","value":1.0}]}"#
        );
        let z = ValueSet::trop_from(vec![TropRegion::Point(f64::NEG_INFINITY)], &tol());
        assert!(serde_json::to_string(&z).unwrap().contains("\"-inf\""));
    }

    #[test]
    fn open_arc_endpoint_not_member() {
        let s = ValueSet::complex_from(
            vec![ComplexRegion::Arc {
                log_radius: 0.0_f64,
                arc: CircleArc::span(1.0, 1.0, true, true),
            }],
            &tol(),
        );
        assert!(!s.contains(&Element::polar(0.0, 1.0), &tol()).unwrap());
        assert!(!s.contains(&Element::polar(0.0, 2.0), &tol()).unwrap());
        assert!(s.contains(&Element::polar(0.0, 1.5), &tol()).unwrap());
    }
}
