//! Monte-Carlo pointwise-union oracle for the region algebra.
//!
//! `A ⊞ B` is defined as the union of `a ⊞ b` over all pairs of points. The
//! closed-form region-pair rules in [`crate::hyperfield`] are validated
//! against that definition directly: this module samples points densely from
//! two regions, accumulates the primitive pairwise sums, and answers
//! membership probes from the accumulated union. It never touches
//! `set_hyperadd` or the circle machinery, only the pairwise point rules —
//! the base case both routes must share.
//!
//! Probes are kept a safe margin away from every angle and radius at which
//! the true union can change (input endpoints and their antipodes), so a
//! disagreement between the oracle and the closed form is a genuine defect,
//! not a boundary artifact. A probe the accumulated index misses gets a
//! directed witness search: the probe itself, its negation, and
//! membership-verified points placed inside region ends are paired with
//! sampled partners, and every candidate pair must certify through the
//! pointwise rule before it counts.

use rand::Rng;

use crate::element::{total_cmp, Element, Family, PhasePoint, Polar};
use crate::error::Result;
use crate::hyperfield::Hyperfield;
use crate::region::{ComplexRegion, PhaseRegion, TropRegion, ValueSet};
use crate::scalar::{tau, wrap_angle, Real, Tolerance};

/// Margin (in angle and in log-magnitude) kept between probes and any
/// feature of the inputs.
pub fn probe_margin<R: Real>() -> R {
    R::from_f64(5e-3).unwrap()
}

/// Sampled points of one region, used as the left or right factor.
fn region_points<R: Real>(h: &Hyperfield<R>, set: &ValueSet<R>, density: usize) -> Vec<Element<R>> {
    let mut pts = Vec::new();
    match set {
        ValueSet::Trop(regions) => {
            for r in regions {
                match r {
                    TropRegion::Point(v) => pts.push(Element::Tropical(*v)),
                    TropRegion::DownRay(top) => {
                        pts.push(Element::Tropical(R::neg_infinity()));
                        for i in 0..density {
                            let frac = R::from_usize(i).unwrap()
                                / R::from_usize(density).unwrap();
                            pts.push(Element::Tropical(
                                *top - frac * R::from_f64(6.0).unwrap(),
                            ));
                        }
                    }
                }
            }
        }
        ValueSet::Complex(regions) => {
            for r in regions {
                match r {
                    ComplexRegion::Point(p) => pts.push(Element::Complex(*p)),
                    ComplexRegion::Arc { log_radius, arc } => {
                        for a in arc_param(arc.lo(), arc.extent(), arc.open_lo, arc.open_hi, density)
                        {
                            pts.push(Element::polar(*log_radius, a));
                        }
                    }
                    ComplexRegion::Disk { log_radius } => {
                        pts.push(Element::Complex(Polar::zero()));
                        for a in arc_param(R::zero(), tau(), false, true, density) {
                            pts.push(Element::polar(*log_radius, a));
                        }
                        for i in 1..=(density / 4).max(2) {
                            let drop = R::from_usize(i).unwrap()
                                * R::from_f64(0.37).unwrap();
                            let a = R::from_usize(i).unwrap();
                            pts.push(Element::polar(*log_radius - drop, wrap_angle(a)));
                        }
                    }
                }
            }
        }
        ValueSet::Phase(regions) => {
            for r in regions {
                match r {
                    PhaseRegion::Zero => pts.push(Element::Phase(PhasePoint::Zero)),
                    PhaseRegion::Point(a) => pts.push(Element::phase_unit(*a)),
                    PhaseRegion::Arc(arc) => {
                        for a in arc_param(arc.lo(), arc.extent(), arc.open_lo, arc.open_hi, density)
                        {
                            pts.push(Element::phase_unit(a));
                        }
                    }
                }
            }
        }
        _ => {
            // finite and rational sets are handled exactly, not sampled
            pts.extend(set.representatives());
        }
    }
    let _ = h;
    pts
}

/// Evenly spaced member angles of an arc, endpoint-aware.
fn arc_param<R: Real>(lo: R, extent: R, open_lo: bool, open_hi: bool, density: usize) -> Vec<R> {
    if extent == R::zero() {
        return vec![lo];
    }
    let mut out = Vec::with_capacity(density + 2);
    let n = density.max(2);
    for i in 0..=n {
        let frac = R::from_usize(i).unwrap() / R::from_usize(n).unwrap();
        let at_lo = i == 0;
        let at_hi = i == n;
        if (at_lo && open_lo) || (at_hi && (open_hi || extent >= tau())) {
            continue;
        }
        out.push(wrap_angle(lo + extent * frac));
    }
    out
}

/// Accumulated pointwise union, indexed for fast membership.
pub struct UnionOracle<R> {
    family: Family,
    tol: Tolerance<R>,
    slack: R,
    has_zero: bool,
    max_disk: Option<R>,
    points: Vec<(R, R)>,
    // per clustered radius, merged closed angle intervals [lo, hi]
    arcs: Vec<(R, Vec<(R, R)>)>,
    trop_points: Vec<R>,
    trop_ray: Option<R>,
}

/// Point samples of `A` and `B`, aligned so that tie and antipodal pairs
/// are represented: each side also receives the other side's samples (and
/// their negations) whenever those are verified members. Without the
/// alignment, independently sampled points would almost never be exactly
/// equal or exactly antipodal, and the disk/zero contributions of the
/// pointwise union would be invisible.
#[allow(clippy::type_complexity)]
pub fn aligned_samples<R: Real>(
    h: &Hyperfield<R>,
    a: &ValueSet<R>,
    b: &ValueSet<R>,
    density: usize,
) -> Result<(Vec<Element<R>>, Vec<Element<R>>)> {
    let mut pa = region_points(h, a, density);
    let mut pb = region_points(h, b, density);
    let tol = h.tolerance();
    let mut extra_a = Vec::new();
    let mut extra_b = Vec::new();
    for x in &pa {
        if b.contains(x, tol)? {
            extra_b.push(x.clone());
        }
        let nx = h.neg(x)?;
        if b.contains(&nx, tol)? {
            extra_b.push(nx);
        }
    }
    for y in &pb {
        if a.contains(y, tol)? {
            extra_a.push(y.clone());
        }
        let ny = h.neg(y)?;
        if a.contains(&ny, tol)? {
            extra_a.push(ny);
        }
    }
    pa.extend(extra_a);
    pb.extend(extra_b);
    Ok((pa, pb))
}

impl<R: Real> UnionOracle<R> {
    /// Accumulates the pairwise point sums of two explicit sample sets.
    pub fn from_samples(
        h: &Hyperfield<R>,
        pa: &[Element<R>],
        pb: &[Element<R>],
    ) -> Result<Self> {
        let slack = R::from_f64(1e-7).unwrap();
        let mut oracle = UnionOracle {
            family: h.family(),
            tol: *h.tolerance(),
            slack,
            has_zero: false,
            max_disk: None,
            points: Vec::new(),
            arcs: Vec::new(),
            trop_points: Vec::new(),
            trop_ray: None,
        };
        let mut raw_arcs: Vec<(R, R, R)> = Vec::new();
        for x in pa {
            for y in pb {
                let sum = h.hyperadd(x, y)?;
                oracle.absorb(&sum, &mut raw_arcs);
            }
        }
        oracle.index_arcs(raw_arcs);
        Ok(oracle)
    }

    fn absorb(&mut self, sum: &ValueSet<R>, raw_arcs: &mut Vec<(R, R, R)>) {
        match sum {
            ValueSet::Trop(regions) => {
                for r in regions {
                    match r {
                        TropRegion::Point(v) => self.trop_points.push(*v),
                        TropRegion::DownRay(top) => {
                            self.trop_ray = Some(match self.trop_ray {
                                Some(t) => t.max(*top),
                                None => *top,
                            })
                        }
                    }
                }
            }
            ValueSet::Complex(regions) => {
                for r in regions {
                    match r {
                        ComplexRegion::Point(p) => {
                            if p.is_zero() {
                                self.has_zero = true;
                            } else {
                                self.points.push((p.log_mag(), p.angle()));
                            }
                        }
                        ComplexRegion::Arc { log_radius, arc } => {
                            raw_arcs.push((*log_radius, arc.lo(), arc.extent()));
                        }
                        ComplexRegion::Disk { log_radius } => {
                            self.max_disk = Some(match self.max_disk {
                                Some(d) => d.max(*log_radius),
                                None => *log_radius,
                            })
                        }
                    }
                }
            }
            ValueSet::Phase(regions) => {
                for r in regions {
                    match r {
                        PhaseRegion::Zero => self.has_zero = true,
                        PhaseRegion::Point(a) => self.points.push((R::zero(), *a)),
                        PhaseRegion::Arc(arc) => {
                            raw_arcs.push((R::zero(), arc.lo(), arc.extent()));
                        }
                    }
                }
            }
            _ => unreachable!("finite families are not sampled"),
        }
    }

    /// Clusters arc radii and merges overlapping angle intervals with a
    /// small slack; wrapped arcs are split at 2π.
    fn index_arcs(&mut self, raw: Vec<(R, R, R)>) {
        let mut split: Vec<(R, R, R)> = Vec::new();
        for (rad, lo, extent) in raw {
            let hi = lo + extent;
            if hi > tau() {
                split.push((rad, lo, tau()));
                split.push((rad, R::zero(), hi - tau()));
            } else {
                split.push((rad, lo, hi));
            }
        }
        split.sort_by(|x, y| total_cmp(x.0, y.0).then_with(|| total_cmp(x.1, y.1)));
        let mut i = 0;
        while i < split.len() {
            let radius = split[i].0;
            let mut intervals: Vec<(R, R)> = Vec::new();
            let mut j = i;
            while j < split.len() && (split[j].0 - radius).abs() <= self.slack {
                intervals.push((split[j].1, split[j].2));
                j += 1;
            }
            // merge sorted intervals
            let mut merged: Vec<(R, R)> = Vec::new();
            for (lo, hi) in intervals {
                match merged.last_mut() {
                    Some((_, prev_hi)) if lo <= *prev_hi + self.slack => {
                        *prev_hi = prev_hi.max(hi);
                    }
                    _ => merged.push((lo, hi)),
                }
            }
            self.arcs.push((radius, merged));
            i = j;
        }
    }

    /// Membership of a probe in the accumulated union (slack-tolerant).
    pub fn contains(&self, x: &Element<R>) -> bool {
        match (self.family, x) {
            (Family::Tropical, Element::Tropical(v)) => {
                if v.is_infinite() && *v < R::zero() {
                    return self.trop_ray.is_some()
                        || self.trop_points.iter().any(|p| p.is_infinite() && *p < R::zero());
                }
                if let Some(t) = self.trop_ray {
                    if *v <= t + self.slack {
                        return true;
                    }
                }
                self.trop_points.iter().any(|p| (*p - *v).abs() <= self.slack)
            }
            (Family::ComplexTropical, Element::Complex(p)) => {
                if p.is_zero() {
                    return self.has_zero || self.max_disk.is_some();
                }
                if let Some(d) = self.max_disk {
                    if p.log_mag() <= d + self.slack {
                        return true;
                    }
                }
                self.circle_contains(p.log_mag(), p.angle())
            }
            (Family::Phase, Element::Phase(PhasePoint::Zero)) => self.has_zero,
            (Family::Phase, Element::Phase(PhasePoint::Unit(a))) => {
                self.circle_contains(R::zero(), *a)
            }
            _ => false,
        }
    }

    fn circle_contains(&self, log_mag: R, angle: R) -> bool {
        for (m, a) in &self.points {
            if (*m - log_mag).abs() <= self.slack {
                let d = wrap_angle(*a - angle);
                if d <= self.slack || tau::<R>() - d <= self.slack {
                    return true;
                }
            }
        }
        for (radius, intervals) in &self.arcs {
            if (*radius - log_mag).abs() <= self.slack {
                for (lo, hi) in intervals {
                    if angle >= *lo - self.slack && angle <= *hi + self.slack {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Angles and radii near which probes must not be placed.
    pub fn tolerance(&self) -> &Tolerance<R> {
        &self.tol
    }
}

/// Feature set of an input pair: all region endpoint angles with their
/// antipodes, and all radii. Probes stay `probe_margin` away from these.
pub struct Features<R> {
    pub angles: Vec<R>,
    pub radii: Vec<R>,
}

pub fn features_of<R: Real>(sets: &[&ValueSet<R>]) -> Features<R> {
    let mut angles = Vec::new();
    let mut radii = Vec::new();
    for set in sets {
        match set {
            ValueSet::Trop(regions) => {
                for r in regions {
                    match r {
                        TropRegion::Point(v) => radii.push(*v),
                        TropRegion::DownRay(t) => radii.push(*t),
                    }
                }
            }
            ValueSet::Complex(regions) => {
                for r in regions {
                    match r {
                        ComplexRegion::Point(p) => {
                            if !p.is_zero() {
                                radii.push(p.log_mag());
                                angles.push(p.angle());
                            }
                        }
                        ComplexRegion::Arc { log_radius, arc } => {
                            radii.push(*log_radius);
                            angles.push(arc.lo());
                            angles.push(wrap_angle(arc.hi()));
                        }
                        ComplexRegion::Disk { log_radius } => radii.push(*log_radius),
                    }
                }
            }
            ValueSet::Phase(regions) => {
                for r in regions {
                    match r {
                        PhaseRegion::Zero => {}
                        PhaseRegion::Point(a) => angles.push(*a),
                        PhaseRegion::Arc(arc) => {
                            angles.push(arc.lo());
                            angles.push(wrap_angle(arc.hi()));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    let anti: Vec<R> = angles.iter().map(|a| wrap_angle(*a + R::PI())).collect();
    angles.extend(anti);
    Features { angles, radii }
}

impl<R: Real> Features<R> {
    pub fn angle_clear(&self, a: R) -> bool {
        let m = probe_margin::<R>();
        self.angles.iter().all(|f| {
            let d = wrap_angle(a - *f);
            d > m && tau::<R>() - d > m
        })
    }

    /// A radius is usable when it sits exactly on a feature radius or is at
    /// least the margin away from every one of them.
    pub fn radius_clear(&self, r: R) -> bool {
        let m = probe_margin::<R>();
        self.radii
            .iter()
            .all(|f| (r - *f).abs() == R::zero() || (r - *f).abs() > m)
    }
}

/// Draws a random region (for the oracle suites) of the given family.
pub fn sample_value_set<R: Real, G: Rng>(h: &Hyperfield<R>, rng: &mut G) -> ValueSet<R> {
    match h.family() {
        Family::Tropical => {
            let v = lattice_mag(rng);
            if rng.gen_bool(0.5) {
                ValueSet::trop_from(vec![TropRegion::Point(v)], h.tolerance())
            } else {
                ValueSet::trop_from(vec![TropRegion::DownRay(v)], h.tolerance())
            }
        }
        Family::ComplexTropical => {
            let radius = lattice_mag::<R, G>(rng);
            match rng.gen_range(0..4) {
                0 => ValueSet::singleton(&Element::polar(radius, lattice_angle(rng))),
                1 => ValueSet::complex_from(
                    vec![ComplexRegion::Disk { log_radius: radius }],
                    h.tolerance(),
                ),
                2 => ValueSet::singleton(&Element::Complex(Polar::zero())),
                _ => {
                    let (lo, extent, olo, ohi) = random_arc(rng);
                    ValueSet::complex_from(
                        vec![ComplexRegion::Arc {
                            log_radius: radius,
                            arc: crate::region::CircleArc::span(lo, extent, olo, ohi),
                        }],
                        h.tolerance(),
                    )
                }
            }
        }
        Family::Phase => match rng.gen_range(0..4) {
            0 => ValueSet::singleton(&Element::phase_unit(lattice_angle(rng))),
            1 => ValueSet::singleton(&Element::Phase(PhasePoint::Zero)),
            _ => {
                let (lo, extent, olo, ohi) = random_arc(rng);
                ValueSet::phase_from(
                    vec![PhaseRegion::Arc(crate::region::CircleArc::span(lo, extent, olo, ohi))],
                    h.tolerance(),
                )
            }
        },
        _ => ValueSet::singleton(&h.sample_element(rng)),
    }
}

/// Aggregated result of a soundness sweep.
#[derive(Debug, Clone)]
pub struct SoundnessOutcome {
    pub pairs: u64,
    pub probes: u64,
    pub rep_checks: u64,
    pub disagreements: Vec<String>,
}

impl SoundnessOutcome {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Validates the closed-form `set_hyperadd` against the pointwise-union
/// oracle on `num_pairs` random region pairs with `probes_per_pair`
/// membership probes each. Checks both directions:
///
/// - every sampled primitive pair sum is contained in the closed form
///   (exact, via region representatives),
/// - every probe membership claimed by the closed form is witnessed by the
///   sampled union (with density escalation), and no probe rejected by the
///   closed form is witnessed.
pub fn soundness_sweep<R: Real, G: Rng>(
    h: &Hyperfield<R>,
    num_pairs: u64,
    probes_per_pair: u64,
    rng: &mut G,
) -> Result<SoundnessOutcome> {
    let mut outcome =
        SoundnessOutcome { pairs: 0, probes: 0, rep_checks: 0, disagreements: Vec::new() };
    let tol = h.tolerance();
    for _ in 0..num_pairs {
        outcome.pairs += 1;
        // draw a pair in general position: every two feature angles either
        // coincide (up to tolerance) or are a margin apart, counting
        // antipodes. Near-degenerate configurations have witness sets
        // thinner than any fixed sampling density; exact ties stay in the
        // sweep and are resolved identically by both routes.
        let (a, b) = loop {
            let a = sample_value_set(h, rng);
            let b = sample_value_set(h, rng);
            if in_general_position(&features_of(&[&a, &b]), tol) {
                break (a, b);
            }
        };
        let closed = h.set_hyperadd(&a, &b)?;
        let (pa, pb) = aligned_samples(h, &a, &b, 16)?;
        // direction 1: sampled union ⊆ closed form
        let oracle = UnionOracle::from_samples(h, &pa, &pb)?;
        for x in &pa {
            for y in &pb {
                let sum = h.hyperadd(x, y)?;
                for rep in sum.representatives() {
                    outcome.rep_checks += 1;
                    if !closed.contains(&rep, tol)? {
                        outcome.disagreements.push(format!(
                            "{} ⊞ {} produced {rep} outside the closed form of {a:?} ⊞ {b:?}",
                            x, y
                        ));
                    }
                }
            }
        }
        // direction 2: closed form ⊆ sampled union, on safe probes. A probe
        // the index misses gets a directed witness search; both paths only
        // ever certify membership through the pointwise rule itself.
        let features = features_of(&[&a, &b]);
        for probe in generate_probes(h, &closed, &features, probes_per_pair, rng) {
            outcome.probes += 1;
            let claimed = closed.contains(&probe, tol)?;
            let mut witnessed = oracle.contains(&probe);
            if claimed && !witnessed {
                witnessed = directed_witness(h, &a, &b, &pa, &pb, &probe)?;
            }
            if claimed != witnessed {
                outcome.disagreements.push(format!(
                    "probe {probe}: closed form says {claimed}, sampled union says {witnessed} \
                     (inputs {a:?} ⊞ {b:?})"
                ));
            }
        }
    }
    Ok(outcome)
}

/// Witness search for a probe the accumulated index missed. Candidate
/// partners are the probe itself, its negation, sampled points of either
/// side, and membership-verified points placed just inside region ends;
/// every candidate pair is certified through `hyperadd` before it counts.
fn directed_witness<R: Real>(
    h: &Hyperfield<R>,
    a_set: &ValueSet<R>,
    b_set: &ValueSet<R>,
    pa: &[Element<R>],
    pb: &[Element<R>],
    x: &Element<R>,
) -> Result<bool> {
    let tol = h.tolerance();
    // the probe as one half of the pair
    if b_set.contains(x, tol)? {
        for a in pa {
            if h.contains(&h.hyperadd(a, x)?, x)? {
                return Ok(true);
            }
        }
    }
    if a_set.contains(x, tol)? {
        for b in pb {
            if h.contains(&h.hyperadd(x, b)?, x)? {
                return Ok(true);
            }
        }
    }
    // exact antipodal partner
    let nx = h.neg(x)?;
    if a_set.contains(x, tol)?
        && b_set.contains(&nx, tol)?
        && h.contains(&h.hyperadd(x, &nx)?, x)?
    {
        return Ok(true);
    }
    if a_set.contains(&nx, tol)?
        && b_set.contains(x, tol)?
        && h.contains(&h.hyperadd(&nx, x)?, x)?
    {
        return Ok(true);
    }
    // some antipodal pair (a, -a) may cover the probe through its disk (or
    // the phase zero); find one from the span overlap of A with -B, which
    // can be narrower than any sampling pitch
    if antipodal_pair_witness(h, a_set, b_set, x)? {
        return Ok(true);
    }
    // shortest-arc interiors: enrich one side with ends-adjacent and
    // probe-adjacent members, pick the other side's point from the open
    // angular window that a short arc through the probe requires
    let (mag, angle) = match x {
        Element::Complex(p) if !p.is_zero() => (p.log_mag(), p.angle()),
        Element::Phase(PhasePoint::Unit(ang)) => (R::zero(), *ang),
        _ => return Ok(false),
    };
    let offsets = candidate_members(h, a_set, mag, angle);
    for a in pa.iter().chain(&offsets) {
        let a_angle = match a {
            Element::Complex(p) if !p.is_zero() && tol.mag_eq(p.log_mag(), mag) => p.angle(),
            Element::Phase(PhasePoint::Unit(ang)) => *ang,
            _ => continue,
        };
        let behind = wrap_angle(angle - a_angle);
        if behind <= R::zero() || behind >= R::PI() {
            continue;
        }
        // need b strictly ahead of the probe with total gap under π
        for bp in members_in_window(b_set, mag, angle, a_angle + R::PI(), tol) {
            if h.contains(&h.hyperadd(a, &bp)?, x)? {
                return Ok(true);
            }
        }
    }
    let offsets_b = candidate_members(h, b_set, mag, angle);
    for b in pb.iter().chain(&offsets_b) {
        let b_angle = match b {
            Element::Complex(p) if !p.is_zero() && tol.mag_eq(p.log_mag(), mag) => p.angle(),
            Element::Phase(PhasePoint::Unit(ang)) => *ang,
            _ => continue,
        };
        let behind = wrap_angle(angle - b_angle);
        if behind <= R::zero() || behind >= R::PI() {
            continue;
        }
        for ap in members_in_window(a_set, mag, angle, b_angle + R::PI(), tol) {
            if h.contains(&h.hyperadd(&ap, b)?, x)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Circle spans `(log_radius, lo, extent)` of a set: points, arcs, and
/// disk boundary circles. The phase zero contributes nothing.
fn circle_spans<R: Real>(set: &ValueSet<R>) -> Vec<(R, R, R)> {
    let mut spans = Vec::new();
    match set {
        ValueSet::Complex(regions) => {
            for r in regions {
                match r {
                    ComplexRegion::Point(p) if !p.is_zero() => {
                        spans.push((p.log_mag(), p.angle(), R::zero()))
                    }
                    ComplexRegion::Arc { log_radius, arc } => {
                        spans.push((*log_radius, arc.lo(), arc.extent()))
                    }
                    ComplexRegion::Disk { log_radius } => {
                        spans.push((*log_radius, R::zero(), tau()))
                    }
                    _ => {}
                }
            }
        }
        ValueSet::Phase(regions) => {
            for r in regions {
                match r {
                    PhaseRegion::Point(a) => spans.push((R::zero(), *a, R::zero())),
                    PhaseRegion::Arc(arc) => spans.push((R::zero(), arc.lo(), arc.extent())),
                    PhaseRegion::Zero => {}
                }
            }
        }
        _ => {}
    }
    spans
}

/// Searches the span overlaps of `A` with `-B` for a verified antipodal
/// pair whose hypersum contains the probe.
fn antipodal_pair_witness<R: Real>(
    h: &Hyperfield<R>,
    a_set: &ValueSet<R>,
    b_set: &ValueSet<R>,
    probe: &Element<R>,
) -> Result<bool> {
    let tol = h.tolerance();
    let make = |mag: R, ang: R| -> Element<R> {
        match a_set {
            ValueSet::Complex(_) => Element::polar(mag, ang),
            _ => Element::phase_unit(ang),
        }
    };
    for (mag_a, lo_a, ext_a) in circle_spans(a_set) {
        for (mag_b, lo_b, ext_b) in circle_spans(b_set) {
            if !tol.mag_eq(mag_a, mag_b) {
                continue;
            }
            // overlap of [lo_a, lo_a+ext_a] with the rotated [lo_b+π, ...]
            let rot = wrap_angle(lo_b + R::PI());
            let rel = wrap_angle(rot - lo_a);
            for (start, end) in [
                (rel.max(R::zero()), (rel + ext_b).min(ext_a)),
                // rotated span may wrap past the end of the a-span window
                (R::zero(), (rel + ext_b - tau()).min(ext_a)),
            ] {
                if end < start {
                    continue;
                }
                let mid = wrap_angle(lo_a + (start + end) / R::from_u8(2).unwrap());
                let a = make(mag_a, mid);
                let na = h.neg(&a)?;
                if a_set.contains(&a, tol)?
                    && b_set.contains(&na, tol)?
                    && h.contains(&h.hyperadd(&a, &na)?, probe)?
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Membership-verified candidates just inside the ends of each same-radius
/// region of `set`, plus just beside the probe angle.
fn candidate_members<R: Real>(
    h: &Hyperfield<R>,
    set: &ValueSet<R>,
    mag: R,
    probe_angle: R,
) -> Vec<Element<R>> {
    let tol = h.tolerance();
    let step = probe_margin::<R>() / R::from_u8(3).unwrap();
    let mut candidate_angles: Vec<R> = vec![
        wrap_angle(probe_angle - step),
        wrap_angle(probe_angle + step),
    ];
    let mut push_ends = |lo: R, hi: R| {
        for e in [lo, hi] {
            candidate_angles.push(wrap_angle(e));
            candidate_angles.push(wrap_angle(e + step));
            candidate_angles.push(wrap_angle(e - step));
        }
    };
    match set {
        ValueSet::Complex(regions) => {
            for r in regions {
                match r {
                    ComplexRegion::Arc { log_radius, arc } if tol.mag_eq(*log_radius, mag) => {
                        push_ends(arc.lo(), arc.hi());
                    }
                    ComplexRegion::Disk { log_radius } if tol.mag_le(mag, *log_radius) => {
                        push_ends(R::zero(), R::PI());
                    }
                    _ => {}
                }
            }
        }
        ValueSet::Phase(regions) => {
            for r in regions {
                if let PhaseRegion::Arc(arc) = r {
                    push_ends(arc.lo(), arc.hi());
                }
            }
        }
        _ => {}
    }
    let make = |ang: R| -> Element<R> {
        match set {
            ValueSet::Complex(_) => Element::polar(mag, ang),
            _ => Element::phase_unit(ang),
        }
    };
    candidate_angles
        .into_iter()
        .map(make)
        .filter(|e| set.contains(e, tol).unwrap_or(false))
        .collect()
}

/// Verified members of `set` on the circle of log-magnitude `mag` whose
/// angles lie strictly inside the window `(from, to)` (counterclockwise);
/// up to two candidates per span, one per clipping of the window.
fn members_in_window<R: Real>(
    set: &ValueSet<R>,
    mag: R,
    from: R,
    to: R,
    tol: &Tolerance<R>,
) -> Vec<Element<R>> {
    let window = wrap_angle(to - from);
    let mut found = Vec::new();
    if window <= R::zero() {
        return found;
    }
    let mut spans: Vec<(R, R)> = Vec::new(); // candidate arcs (lo, extent)
    for (m, lo, extent) in circle_spans(set) {
        if tol.mag_eq(m, mag) {
            spans.push((lo, extent));
        }
    }
    let make = |ang: R| -> Element<R> {
        match set {
            ValueSet::Complex(_) => Element::polar(mag, ang),
            _ => Element::phase_unit(ang),
        }
    };
    let mut push = |cand: Element<R>| {
        if set.contains(&cand, tol).unwrap_or(false) {
            found.push(cand);
        }
    };
    for (lo, extent) in spans {
        let rel = wrap_angle(lo - from);
        if extent == R::zero() {
            // a point member strictly inside the open window
            if rel > R::zero() && rel < window {
                push(make(lo));
            }
            continue;
        }
        // overlap of [lo, lo+extent] with the open window (from, from+window)
        let start = rel.max(R::zero());
        let end = (rel + extent).min(window);
        if end > start {
            push(make(wrap_angle(from + (start + end) / R::from_u8(2).unwrap())));
        }
        // the window may clip the arc after wrapping
        if rel + extent > tau() {
            let end2 = (rel + extent - tau()).min(window);
            if end2 > R::zero() {
                push(make(wrap_angle(from + end2 / R::from_u8(2).unwrap())));
            }
        }
    }
    found
}

/// Probes for one pair: the zero element, feature-cleared representatives
/// of the closed form, and random feature-cleared points of the ambient
/// carrier.
fn generate_probes<R: Real, G: Rng>(
    h: &Hyperfield<R>,
    closed: &ValueSet<R>,
    features: &Features<R>,
    count: u64,
    rng: &mut G,
) -> Vec<Element<R>> {
    let mut probes = Vec::with_capacity(count as usize);
    probes.push(h.zero());
    for rep in closed.representatives() {
        if probes.len() as u64 >= count / 2 {
            break;
        }
        if probe_is_clear(&rep, features) {
            probes.push(rep);
        }
    }
    let mut guard = 0;
    while (probes.len() as u64) < count && guard < count * 40 {
        guard += 1;
        let candidate = random_probe(h, features, rng);
        if probe_is_clear(&candidate, features) {
            probes.push(candidate);
        }
    }
    probes
}

/// General position: every two feature angles (endpoints and antipodes)
/// are either tolerance-coincident or at least the probe margin apart.
fn in_general_position<R: Real>(features: &Features<R>, tol: &Tolerance<R>) -> bool {
    let margin = probe_margin::<R>();
    let two_tol = tol.eps + tol.eps;
    for (i, &f) in features.angles.iter().enumerate() {
        for &g in &features.angles[i + 1..] {
            let d = crate::scalar::circ_dist(f, g);
            if d > two_tol && d < margin {
                return false;
            }
        }
    }
    true
}

fn probe_is_clear<R: Real>(x: &Element<R>, features: &Features<R>) -> bool {
    match x {
        Element::Tropical(v) => {
            (v.is_infinite() && *v < R::zero()) || features.radius_clear(*v)
        }
        Element::Complex(p) => {
            p.is_zero() || (features.radius_clear(p.log_mag()) && features.angle_clear(p.angle()))
        }
        Element::Phase(PhasePoint::Zero) => true,
        Element::Phase(PhasePoint::Unit(a)) => features.angle_clear(*a),
        _ => true,
    }
}

fn random_probe<R: Real, G: Rng>(
    h: &Hyperfield<R>,
    features: &Features<R>,
    rng: &mut G,
) -> Element<R> {
    let margin = probe_margin::<R>();
    let pick_radius = |rng: &mut G| -> R {
        if features.radii.is_empty() || rng.gen_bool(0.3) {
            R::from_f64(rng.gen_range(-2.5..2.5)).unwrap()
        } else {
            let base = features.radii[rng.gen_range(0..features.radii.len())];
            if rng.gen_bool(0.5) {
                base
            } else {
                let sign = if rng.gen_bool(0.5) { R::one() } else { -R::one() };
                base + sign * (margin * R::from_u8(3).unwrap()
                    + R::from_f64(rng.gen_range(0.0..0.8)).unwrap())
            }
        }
    };
    match h.family() {
        Family::Tropical => Element::Tropical(pick_radius(rng)),
        Family::ComplexTropical => Element::polar(
            pick_radius(rng),
            R::from_f64(rng.gen_range(0.0..std::f64::consts::TAU)).unwrap(),
        ),
        Family::Phase => {
            Element::phase_unit(R::from_f64(rng.gen_range(0.0..std::f64::consts::TAU)).unwrap())
        }
        _ => h.sample_element(rng),
    }
}

fn lattice_mag<R: Real, G: Rng>(rng: &mut G) -> R {
    R::from_i32(rng.gen_range(-6..=6)).unwrap() / R::from_u8(4).unwrap()
}

fn lattice_angle<R: Real, G: Rng>(rng: &mut G) -> R {
    if rng.gen_bool(0.5) {
        R::from_i32(rng.gen_range(0..24)).unwrap() * R::PI() / R::from_u8(12).unwrap()
    } else {
        R::from_f64(rng.gen_range(0.0..std::f64::consts::TAU)).unwrap()
    }
}

fn random_arc<R: Real, G: Rng>(rng: &mut G) -> (R, R, bool, bool) {
    let lo = lattice_angle(rng);
    let extent = R::from_f64(rng.gen_range(0.05..5.8)).unwrap();
    (lo, extent, rng.gen_bool(0.5), rng.gen_bool(0.5))
}
