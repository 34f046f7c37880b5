//! Hyperfield instances and their set-valued arithmetic.
//!
//! A hyperfield pairs an invertible single-valued multiplication with a
//! multivalued hyperaddition `H × H → P(H)*`. The six instances here:
//!
//! - `K` — Krasner hyperfield on `{0, 1}` with `1 ⊞ 1 = {0, 1}`,
//! - `S` — hyperfield of signs on `{-1, 0, 1}` with `1 ⊞ -1 = {-1, 0, 1}`,
//! - `T` — tropical hyperfield on `ℝ ∪ {-∞}`: `x ⊞ y = {max(x, y)}` for
//!   `x ≠ y` and `x ⊞ x = {z ≤ x} ∪ {-∞}`; multiplication is `+`,
//! - `P` — phase hyperfield on `S¹ ∪ {0}`: open shortest arcs, with the
//!   antipodal case `{0, z, -z}`,
//! - `TC` — tropical complex hyperfield on `ℂ`: the larger magnitude wins,
//!   equal magnitudes give the closed shortest arc, and `z ⊞ -z` is the
//!   closed disk `{c : |c| ≤ |z|}`,
//! - `Qtriv` — the rationals as a hyperfield, `x ⊞ y = {x + y}`.
//!
//! Sums of whole regions (`set_hyperadd`) are computed by closed-form
//! region-pair rules, never by sampling; the rules for circles reduce to the
//! exact machinery in [`crate::region`].

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use num_rational::BigRational;
use num_traits::{One as _, Zero as _};

use crate::element::{Element, Family, FiniteSym, PhasePoint, Polar};
use crate::error::{Error, Result};
use crate::region::{
    arc_intersection, circle_union, element_family, strict_between, CircleArc, ComplexRegion,
    PhaseRegion, TropRegion, ValueSet,
};
use crate::scalar::{tau, wrap_angle, Real, Tolerance};

/// A concrete hyperfield instance: carrier kind plus the equality policy.
///
/// All values are immutable and all operations are pure functions, so a
/// descriptor can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperfield<R> {
    name: &'static str,
    family: Family,
    tol: Tolerance<R>,
}

impl<R: Real> Hyperfield<R> {
    pub fn krasner() -> Self {
        Hyperfield { name: "K", family: Family::Krasner, tol: Tolerance::default_policy() }
    }

    pub fn sign() -> Self {
        Hyperfield { name: "S", family: Family::Sign, tol: Tolerance::default_policy() }
    }

    pub fn tropical() -> Self {
        Hyperfield { name: "T", family: Family::Tropical, tol: Tolerance::default_policy() }
    }

    pub fn phase() -> Self {
        Hyperfield { name: "P", family: Family::Phase, tol: Tolerance::default_policy() }
    }

    pub fn complex_tropical() -> Self {
        Hyperfield { name: "TC", family: Family::ComplexTropical, tol: Tolerance::default_policy() }
    }

    /// The field `ℚ` viewed as a hyperfield with singleton hyperaddition.
    pub fn rational_field() -> Self {
        Hyperfield { name: "Qtriv", family: Family::Rational, tol: Tolerance::default_policy() }
    }

    pub fn with_tolerance(mut self, eps: R) -> Self {
        self.tol = Tolerance::new(eps);
        self
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn tolerance(&self) -> &Tolerance<R> {
        &self.tol
    }

    pub fn zero(&self) -> Element<R> {
        match self.family {
            Family::Krasner | Family::Sign => Element::Finite(FiniteSym::Zero),
            Family::Tropical => Element::Tropical(R::neg_infinity()),
            Family::Phase => Element::Phase(PhasePoint::Zero),
            Family::ComplexTropical => Element::Complex(Polar::zero()),
            Family::Rational => Element::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Element<R> {
        match self.family {
            Family::Krasner | Family::Sign => Element::Finite(FiniteSym::One),
            Family::Tropical => Element::Tropical(R::zero()),
            Family::Phase => Element::Phase(PhasePoint::Unit(R::zero())),
            Family::ComplexTropical => Element::Complex(Polar::one()),
            Family::Rational => Element::Rational(BigRational::one()),
        }
    }

    pub fn is_zero(&self, x: &Element<R>) -> bool {
        self.approx_eq(x, &self.zero())
    }

    /// All carrier elements, for the finite carriers.
    pub fn elements(&self) -> Option<Vec<Element<R>>> {
        match self.family {
            Family::Krasner => {
                Some(vec![Element::Finite(FiniteSym::Zero), Element::Finite(FiniteSym::One)])
            }
            Family::Sign => Some(vec![
                Element::Finite(FiniteSym::MinusOne),
                Element::Finite(FiniteSym::Zero),
                Element::Finite(FiniteSym::One),
            ]),
            _ => None,
        }
    }

    pub fn check_element(&self, x: &Element<R>) -> Result<()> {
        if x.fits_family(self.family) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { expected: self.family, found: element_family(x) })
        }
    }

    pub fn approx_eq(&self, a: &Element<R>, b: &Element<R>) -> bool {
        a.approx_eq(b, &self.tol)
    }

    pub fn neg(&self, x: &Element<R>) -> Result<Element<R>> {
        self.check_element(x)?;
        Ok(match (self.family, x) {
            // -1 = 1 in the Krasner hyperfield
            (Family::Krasner, Element::Finite(s)) => Element::Finite(*s),
            (Family::Sign, Element::Finite(s)) => {
                Element::Finite(FiniteSym::from_i8(-s.as_i8()).unwrap())
            }
            // every tropical element is its own negative
            (Family::Tropical, Element::Tropical(v)) => Element::Tropical(*v),
            (Family::ComplexTropical, Element::Complex(p)) => Element::Complex(p.neg()),
            (Family::Phase, Element::Phase(p)) => Element::Phase(p.neg()),
            (Family::Rational, Element::Rational(q)) => Element::Rational(-q),
            _ => unreachable!("family checked"),
        })
    }

    pub fn mul(&self, a: &Element<R>, b: &Element<R>) -> Result<Element<R>> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(match (a, b) {
            (Element::Finite(x), Element::Finite(y)) => {
                Element::Finite(FiniteSym::from_i8(x.as_i8() * y.as_i8()).unwrap())
            }
            (Element::Tropical(x), Element::Tropical(y)) => Element::Tropical(*x + *y),
            (Element::Complex(x), Element::Complex(y)) => Element::Complex(x.mul(y)),
            (Element::Phase(x), Element::Phase(y)) => Element::Phase(x.mul(y)),
            (Element::Rational(x), Element::Rational(y)) => Element::Rational(x * y),
            _ => unreachable!("family checked"),
        })
    }

    pub fn mul_inverse(&self, x: &Element<R>) -> Result<Element<R>> {
        self.check_element(x)?;
        if self.is_zero(x) {
            return Err(Error::ZeroInverse);
        }
        Ok(match x {
            Element::Finite(s) => Element::Finite(*s),
            Element::Tropical(v) => Element::Tropical(-*v),
            Element::Complex(p) => Element::Complex(p.inverse().expect("nonzero")),
            Element::Phase(PhasePoint::Unit(a)) => Element::Phase(PhasePoint::unit(-*a)),
            Element::Rational(q) => Element::Rational(q.recip()),
            Element::Phase(PhasePoint::Zero) => unreachable!("zero rejected"),
        })
    }

    /// Integer power; `x^0 = 1` for every `x` including zero.
    pub fn pow(&self, x: &Element<R>, k: u32) -> Result<Element<R>> {
        self.check_element(x)?;
        if k == 0 {
            return Ok(self.one());
        }
        Ok(match x {
            Element::Finite(s) => {
                let v = if s.as_i8() == -1 && k % 2 == 1 { -1 } else { s.as_i8().abs() };
                Element::Finite(FiniteSym::from_i8(v).unwrap())
            }
            Element::Tropical(v) => {
                if v.is_infinite() && *v < R::zero() {
                    Element::Tropical(R::neg_infinity())
                } else {
                    Element::Tropical(*v * R::from_u32(k).unwrap())
                }
            }
            Element::Complex(p) => Element::Complex(p.pow(k)),
            Element::Phase(PhasePoint::Zero) => Element::Phase(PhasePoint::Zero),
            Element::Phase(PhasePoint::Unit(a)) => {
                Element::Phase(PhasePoint::unit(*a * R::from_u32(k).unwrap()))
            }
            Element::Rational(q) => {
                let mut acc = BigRational::one();
                for _ in 0..k {
                    acc *= q;
                }
                Element::Rational(acc)
            }
        })
    }

    /// Pairwise hyperaddition: the case split of each carrier, exactly.
    pub fn hyperadd(&self, a: &Element<R>, b: &Element<R>) -> Result<ValueSet<R>> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(match (a, b) {
            (Element::Finite(x), Element::Finite(y)) => finite_hyperadd(self.family, *x, *y),
            (Element::Tropical(x), Element::Tropical(y)) => trop_hyperadd(*x, *y, &self.tol),
            (Element::Complex(x), Element::Complex(y)) => complex_hyperadd(*x, *y, &self.tol),
            (Element::Phase(x), Element::Phase(y)) => phase_hyperadd(*x, *y, &self.tol),
            (Element::Rational(x), Element::Rational(y)) => ValueSet::rational(vec![x + y]),
            _ => unreachable!("family checked"),
        })
    }

    /// `A ⊞ B` as the union of pairwise sums, computed by closed-form
    /// region-pair rules.
    pub fn set_hyperadd(&self, a: &ValueSet<R>, b: &ValueSet<R>) -> Result<ValueSet<R>> {
        match (a, b) {
            (ValueSet::Finite(xs), ValueSet::Finite(ys)) => {
                let mut acc = std::collections::BTreeSet::new();
                for x in xs {
                    for y in ys {
                        if let ValueSet::Finite(s) = finite_hyperadd::<R>(self.family, *x, *y) {
                            acc.extend(s);
                        }
                    }
                }
                Ok(ValueSet::Finite(acc))
            }
            (ValueSet::Rational(xs), ValueSet::Rational(ys)) => {
                let mut acc = Vec::with_capacity(xs.len() * ys.len());
                for x in xs {
                    for y in ys {
                        acc.push(x + y);
                    }
                }
                Ok(ValueSet::rational(acc))
            }
            (ValueSet::Trop(xs), ValueSet::Trop(ys)) => {
                let mut acc = Vec::new();
                for x in xs {
                    for y in ys {
                        acc.extend(trop_pair(*x, *y, &self.tol));
                    }
                }
                Ok(ValueSet::trop_from(acc, &self.tol))
            }
            (ValueSet::Complex(xs), ValueSet::Complex(ys)) => {
                let mut acc = Vec::new();
                for x in xs {
                    for y in ys {
                        acc.extend(complex_pair(*x, *y, &self.tol));
                    }
                }
                Ok(ValueSet::complex_from(acc, &self.tol))
            }
            (ValueSet::Phase(xs), ValueSet::Phase(ys)) => {
                let mut acc = Vec::new();
                for x in xs {
                    for y in ys {
                        acc.extend(phase_pair(*x, *y, &self.tol));
                    }
                }
                Ok(ValueSet::phase_from(acc, &self.tol))
            }
            _ => Err(Error::FamilyMismatch { left: a.family(), right: b.family() }),
        }
    }

    /// N-ary hypersum `x₁ ⊞ x₂ ⊞ … ⊞ x_k`, folded pairwise; the result is
    /// independent of the fold order.
    pub fn hypersum(&self, xs: &[Element<R>]) -> Result<ValueSet<R>> {
        let first = xs.first().ok_or(Error::EmptyHypersum)?;
        self.check_element(first)?;
        let mut acc = ValueSet::singleton(first);
        for x in &xs[1..] {
            self.check_element(x)?;
            acc = self.set_hyperadd(&acc, &ValueSet::singleton(x))?;
        }
        Ok(acc)
    }

    pub fn contains(&self, set: &ValueSet<R>, x: &Element<R>) -> Result<bool> {
        set.contains(x, &self.tol)
    }

    /// `a ⊙ S` applied regionwise (used by the distributivity check).
    pub fn scale_set(&self, set: &ValueSet<R>, a: &Element<R>) -> Result<ValueSet<R>> {
        self.check_element(a)?;
        if self.is_zero(a) {
            return Ok(ValueSet::singleton(&self.zero()));
        }
        Ok(match (set, a) {
            (ValueSet::Finite(xs), Element::Finite(s)) => ValueSet::finite(
                xs.iter().map(|x| FiniteSym::from_i8(x.as_i8() * s.as_i8()).unwrap()),
            ),
            (ValueSet::Rational(xs), Element::Rational(q)) => {
                ValueSet::rational(xs.iter().map(|x| x * q).collect())
            }
            (ValueSet::Trop(xs), Element::Tropical(t)) => ValueSet::trop_from(
                xs.iter()
                    .map(|r| match r {
                        TropRegion::Point(v) => TropRegion::Point(*v + *t),
                        TropRegion::DownRay(v) => TropRegion::DownRay(*v + *t),
                    })
                    .collect(),
                &self.tol,
            ),
            (ValueSet::Complex(xs), Element::Complex(p)) => ValueSet::complex_from(
                xs.iter()
                    .map(|r| match r {
                        ComplexRegion::Point(q) => ComplexRegion::Point(q.mul(p)),
                        ComplexRegion::Arc { log_radius, arc } => ComplexRegion::Arc {
                            log_radius: *log_radius + p.log_mag(),
                            arc: arc.rotate(p.angle()),
                        },
                        ComplexRegion::Disk { log_radius } => {
                            ComplexRegion::Disk { log_radius: *log_radius + p.log_mag() }
                        }
                    })
                    .collect(),
                &self.tol,
            ),
            (ValueSet::Phase(xs), Element::Phase(PhasePoint::Unit(t))) => ValueSet::phase_from(
                xs.iter()
                    .map(|r| match r {
                        PhaseRegion::Zero => PhaseRegion::Zero,
                        PhaseRegion::Point(v) => PhaseRegion::Point(wrap_angle(*v + *t)),
                        PhaseRegion::Arc(arc) => PhaseRegion::Arc(arc.rotate(*t)),
                    })
                    .collect(),
                &self.tol,
            ),
            _ => {
                return Err(Error::CarrierMismatch {
                    expected: self.family,
                    found: element_family(a),
                })
            }
        })
    }

    /// Draws a carrier element; magnitudes and angles are biased toward a
    /// small lattice so that ties, antipodal pairs and equal-magnitude cases
    /// are exercised.
    pub fn sample_element<G: Rng>(&self, rng: &mut G) -> Element<R> {
        match self.family {
            Family::Krasner => Element::sym(if rng.gen_bool(0.5) { 0 } else { 1 }),
            Family::Sign => Element::sym([-1, 0, 1][rng.gen_range(0..3)]),
            Family::Tropical => {
                if rng.gen_bool(0.05) {
                    Element::Tropical(R::neg_infinity())
                } else {
                    Element::Tropical(sample_mag(rng))
                }
            }
            Family::ComplexTropical => {
                if rng.gen_bool(0.05) {
                    Element::Complex(Polar::zero())
                } else {
                    Element::polar(sample_mag(rng), sample_angle(rng))
                }
            }
            Family::Phase => {
                if rng.gen_bool(0.08) {
                    Element::Phase(PhasePoint::Zero)
                } else {
                    Element::phase_unit(sample_angle(rng))
                }
            }
            Family::Rational => {
                let num = rng.gen_range(-20i64..=20);
                let den = rng.gen_range(1i64..=8);
                Element::Rational(BigRational::new(num.into(), den.into()))
            }
        }
    }

    /// Per-axiom verification: exhaustive for the finite carriers, sampled
    /// with `budget` triples otherwise.
    pub fn check_axioms(&self, budget: u64, seed: u64) -> AxiomReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exhaustive = self.elements().is_some();
        let triples: Vec<[Element<R>; 3]> = match self.elements() {
            Some(all) => {
                let mut v = Vec::new();
                for x in &all {
                    for y in &all {
                        for z in &all {
                            v.push([x.clone(), y.clone(), z.clone()]);
                        }
                    }
                }
                v
            }
            None => (0..budget)
                .map(|_| {
                    [
                        self.sample_element(&mut rng),
                        self.sample_element(&mut rng),
                        self.sample_element(&mut rng),
                    ]
                })
                .collect(),
        };

        let axioms = vec![
            self.axiom_zero_ne_one(),
            self.axiom_h0(&triples),
            self.axiom_h1(&triples),
            self.axiom_h2(&triples),
            self.axiom_commutativity(&triples),
            self.axiom_associativity(&triples),
            self.axiom_distributivity(&triples),
            self.axiom_absorption(&triples),
            self.axiom_inverses(&triples),
        ];
        let all_passed = axioms.iter().all(|a| a.passed);
        AxiomReport { hyperfield: self.name.to_string(), exhaustive, all_passed, axioms }
    }

    fn axiom_zero_ne_one(&self) -> AxiomCheck {
        let ok = !self.approx_eq(&self.zero(), &self.one());
        AxiomCheck {
            name: "zero-ne-one".into(),
            passed: ok,
            checked: 1,
            witness: (!ok).then(|| "0 = 1".into()),
        }
    }

    fn axiom_h0(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let zero = self.zero();
        let mut witness = None;
        let mut checked = 0;
        for [x, _, _] in triples {
            checked += 1;
            let s = self.hyperadd(&zero, x).unwrap();
            if !s.approx_eq(&ValueSet::singleton(x), &self.tol) {
                witness = Some(format!("0 ⊞ {x} ≠ {{{x}}}"));
                break;
            }
        }
        AxiomCheck { name: "h0-neutral".into(), passed: witness.is_none(), checked, witness }
    }

    fn axiom_h1(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let zero = self.zero();
        let mut witness = None;
        let mut checked = 0;
        for [x, y, _] in triples {
            checked += 1;
            let n = self.neg(x).unwrap();
            let s = self.hyperadd(x, &n).unwrap();
            if !self.contains(&s, &zero).unwrap() {
                witness = Some(format!("0 ∉ {x} ⊞ -{x}"));
                break;
            }
            // uniqueness: any other candidate must fail to annihilate
            if !self.approx_eq(y, &n) {
                let s2 = self.hyperadd(x, y).unwrap();
                if self.contains(&s2, &zero).unwrap() {
                    witness = Some(format!("0 ∈ {x} ⊞ {y} with {y} ≠ -{x}"));
                    break;
                }
            }
        }
        AxiomCheck {
            name: "h1-unique-negation".into(),
            passed: witness.is_none(),
            checked,
            witness,
        }
    }

    fn axiom_h2(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let mut witness = None;
        let mut checked = 0;
        'outer: for [_, y, z] in triples {
            checked += 1;
            let s = self.hyperadd(y, z).unwrap();
            let ny = self.neg(y).unwrap();
            for x in s.representatives() {
                let back = self.hyperadd(&x, &ny).unwrap();
                if !self.contains(&back, z).unwrap() {
                    witness = Some(format!("{x} ∈ {y} ⊞ {z} but {z} ∉ {x} ⊞ -{y}"));
                    break 'outer;
                }
            }
        }
        AxiomCheck { name: "h2-reversibility".into(), passed: witness.is_none(), checked, witness }
    }

    fn axiom_commutativity(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let mut witness = None;
        let mut checked = 0;
        for [x, y, _] in triples {
            checked += 1;
            let ab = self.hyperadd(x, y).unwrap();
            let ba = self.hyperadd(y, x).unwrap();
            if !ab.approx_eq(&ba, &self.tol) {
                witness = Some(format!("{x} ⊞ {y} ≠ {y} ⊞ {x}"));
                break;
            }
        }
        AxiomCheck { name: "commutativity".into(), passed: witness.is_none(), checked, witness }
    }

    fn axiom_associativity(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let mut witness = None;
        let mut checked = 0;
        for [x, y, z] in triples {
            checked += 1;
            let left = self
                .set_hyperadd(&self.hyperadd(x, y).unwrap(), &ValueSet::singleton(z))
                .unwrap();
            let right = self
                .set_hyperadd(&ValueSet::singleton(x), &self.hyperadd(y, z).unwrap())
                .unwrap();
            if !left.approx_eq(&right, &self.tol) {
                witness = Some(format!("({x} ⊞ {y}) ⊞ {z} ≠ {x} ⊞ ({y} ⊞ {z})"));
                break;
            }
        }
        AxiomCheck { name: "associativity".into(), passed: witness.is_none(), checked, witness }
    }

    fn axiom_distributivity(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let mut witness = None;
        let mut checked = 0;
        for [a, x, y] in triples {
            checked += 1;
            let left = self.scale_set(&self.hyperadd(x, y).unwrap(), a).unwrap();
            let right = self
                .hyperadd(&self.mul(a, x).unwrap(), &self.mul(a, y).unwrap())
                .unwrap();
            if !left.approx_eq(&right, &self.tol) {
                witness = Some(format!("{a} ⊙ ({x} ⊞ {y}) ≠ ({a} ⊙ {x}) ⊞ ({a} ⊙ {y})"));
                break;
            }
        }
        AxiomCheck { name: "distributivity".into(), passed: witness.is_none(), checked, witness }
    }

    fn axiom_absorption(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let zero = self.zero();
        let mut witness = None;
        let mut checked = 0;
        for [x, _, _] in triples {
            checked += 1;
            if !self.approx_eq(&self.mul(&zero, x).unwrap(), &zero) {
                witness = Some(format!("0 ⊙ {x} ≠ 0"));
                break;
            }
        }
        AxiomCheck { name: "absorption".into(), passed: witness.is_none(), checked, witness }
    }

    fn axiom_inverses(&self, triples: &[[Element<R>; 3]]) -> AxiomCheck {
        let one = self.one();
        let mut witness = None;
        let mut checked = 0;
        for [x, _, _] in triples {
            if self.is_zero(x) {
                continue;
            }
            checked += 1;
            let inv = self.mul_inverse(x).unwrap();
            if !self.approx_eq(&self.mul(x, &inv).unwrap(), &one) {
                witness = Some(format!("{x} ⊙ {x}⁻¹ ≠ 1"));
                break;
            }
        }
        AxiomCheck {
            name: "multiplicative-inverse".into(),
            passed: witness.is_none(),
            checked,
            witness,
        }
    }
}

fn sample_mag<R: Real, G: Rng>(rng: &mut G) -> R {
    if rng.gen_bool(0.6) {
        // lattice of half-integers in [-2, 2]
        R::from_i32(rng.gen_range(-4..=4)).unwrap() / R::from_u8(2).unwrap()
    } else {
        R::from_f64(rng.gen_range(-3.0..3.0)).unwrap()
    }
}

fn sample_angle<R: Real, G: Rng>(rng: &mut G) -> R {
    if rng.gen_bool(0.6) {
        // multiples of π/6 hit antipodal and equal-angle cases
        R::from_i32(rng.gen_range(0..12)).unwrap() * R::PI() / R::from_u8(6).unwrap()
    } else {
        R::from_f64(rng.gen_range(0.0..std::f64::consts::TAU)).unwrap()
    }
}

// --- pointwise rules ------------------------------------------------------

fn finite_hyperadd<R: Real>(family: Family, x: FiniteSym, y: FiniteSym) -> ValueSet<R> {
    use FiniteSym::*;
    match (x, y) {
        (Zero, s) | (s, Zero) => ValueSet::finite([s]),
        (One, One) if family == Family::Krasner => ValueSet::finite([Zero, One]),
        (One, One) => ValueSet::finite([One]),
        (MinusOne, MinusOne) => ValueSet::finite([MinusOne]),
        (One, MinusOne) | (MinusOne, One) => ValueSet::finite([MinusOne, Zero, One]),
    }
}

fn trop_hyperadd<R: Real>(x: R, y: R, tol: &Tolerance<R>) -> ValueSet<R> {
    if tol.mag_eq(x, y) {
        let top = x.max(y);
        if top.is_infinite() && top < R::zero() {
            ValueSet::Trop(vec![TropRegion::Point(R::neg_infinity())])
        } else {
            ValueSet::Trop(vec![TropRegion::DownRay(top)])
        }
    } else {
        ValueSet::Trop(vec![TropRegion::Point(x.max(y))])
    }
}

fn complex_hyperadd<R: Real>(z: Polar<R>, w: Polar<R>, tol: &Tolerance<R>) -> ValueSet<R> {
    ValueSet::complex_from(complex_point_pair(z, w, tol), tol)
}

fn complex_point_pair<R: Real>(z: Polar<R>, w: Polar<R>, tol: &Tolerance<R>) -> Vec<ComplexRegion<R>> {
    if z.approx_eq(&w, tol) {
        return vec![ComplexRegion::Point(z)];
    }
    if z.antipodal(&w, tol) {
        return vec![ComplexRegion::Disk { log_radius: z.log_mag() }];
    }
    if tol.mag_gt(z.log_mag(), w.log_mag()) {
        return vec![ComplexRegion::Point(z)];
    }
    if tol.mag_gt(w.log_mag(), z.log_mag()) {
        return vec![ComplexRegion::Point(w)];
    }
    // equal magnitudes, distinct non-antipodal angles: closed shortest arc
    let radius = z.log_mag().max(w.log_mag());
    let d = wrap_angle(w.angle() - z.angle());
    debug_assert!((d - R::PI()).abs() > tol.eps, "antipodal tie must be handled above");
    let arc = if d < R::PI() {
        CircleArc::span(z.angle(), d, false, false)
    } else {
        CircleArc::span(w.angle(), tau::<R>() - d, false, false)
    };
    vec![ComplexRegion::Arc { log_radius: radius, arc }]
}

fn phase_hyperadd<R: Real>(p: PhasePoint<R>, q: PhasePoint<R>, tol: &Tolerance<R>) -> ValueSet<R> {
    ValueSet::phase_from(phase_point_pair(p, q, tol), tol)
}

fn phase_point_pair<R: Real>(
    p: PhasePoint<R>,
    q: PhasePoint<R>,
    tol: &Tolerance<R>,
) -> Vec<PhaseRegion<R>> {
    match (p, q) {
        (PhasePoint::Zero, PhasePoint::Zero) => vec![PhaseRegion::Zero],
        (PhasePoint::Zero, PhasePoint::Unit(a)) | (PhasePoint::Unit(a), PhasePoint::Zero) => {
            vec![PhaseRegion::Point(a)]
        }
        (PhasePoint::Unit(a), PhasePoint::Unit(b)) => {
            if tol.angle_eq(a, b) {
                vec![PhaseRegion::Point(a)]
            } else if tol.angle_antipodal(a, b) {
                vec![PhaseRegion::Zero, PhaseRegion::Point(a), PhaseRegion::Point(b)]
            } else {
                // open shortest arc, endpoints excluded
                let d = wrap_angle(b - a);
                let arc = if d < R::PI() {
                    CircleArc::span(a, d, true, true)
                } else {
                    CircleArc::span(b, tau::<R>() - d, true, true)
                };
                vec![PhaseRegion::Arc(arc)]
            }
        }
    }
}

// --- region-pair rules ----------------------------------------------------

fn trop_pair<R: Real>(x: TropRegion<R>, y: TropRegion<R>, tol: &Tolerance<R>) -> Vec<TropRegion<R>> {
    match (x, y) {
        (TropRegion::Point(a), TropRegion::Point(b)) => match trop_hyperadd(a, b, tol) {
            ValueSet::Trop(r) => r,
            _ => unreachable!(),
        },
        (TropRegion::Point(a), TropRegion::DownRay(b))
        | (TropRegion::DownRay(b), TropRegion::Point(a)) => {
            if tol.mag_gt(a, b) {
                vec![TropRegion::Point(a)]
            } else {
                vec![TropRegion::DownRay(a.max(b))]
            }
        }
        (TropRegion::DownRay(a), TropRegion::DownRay(b)) => vec![TropRegion::DownRay(a.max(b))],
    }
}

fn complex_pair<R: Real>(
    x: ComplexRegion<R>,
    y: ComplexRegion<R>,
    tol: &Tolerance<R>,
) -> Vec<ComplexRegion<R>> {
    use ComplexRegion::*;
    match (x, y) {
        (Point(p), Point(q)) => complex_point_pair(p, q, tol),
        (Disk { log_radius: a }, Disk { log_radius: b }) => {
            vec![Disk { log_radius: a.max(b) }]
        }
        (Point(p), Disk { log_radius }) | (Disk { log_radius }, Point(p)) => {
            if tol.mag_gt(p.log_mag(), log_radius) {
                vec![Point(p)]
            } else {
                vec![Disk { log_radius }]
            }
        }
        (Arc { log_radius: r, arc }, Disk { log_radius: d })
        | (Disk { log_radius: d }, Arc { log_radius: r, arc }) => {
            if tol.mag_gt(r, d) {
                vec![Arc { log_radius: r, arc }]
            } else {
                vec![Disk { log_radius: d }]
            }
        }
        (Point(p), Arc { log_radius, arc }) | (Arc { log_radius, arc }, Point(p)) => {
            if tol.mag_gt(p.log_mag(), log_radius) {
                vec![Point(p)]
            } else if tol.mag_gt(log_radius, p.log_mag()) {
                vec![Arc { log_radius, arc }]
            } else {
                tc_circle_case(
                    CircleArc::point(p.angle()),
                    arc,
                    log_radius.max(p.log_mag()),
                    tol,
                )
            }
        }
        (Arc { log_radius: r1, arc: a1 }, Arc { log_radius: r2, arc: a2 }) => {
            if tol.mag_gt(r1, r2) {
                vec![Arc { log_radius: r1, arc: a1 }]
            } else if tol.mag_gt(r2, r1) {
                vec![Arc { log_radius: r2, arc: a2 }]
            } else {
                tc_circle_case(a1, a2, r1.max(r2), tol)
            }
        }
    }
}

/// Sum of two subsets of one circle over the complex carrier. Any antipodal
/// pair collapses the sum to the closed disk; otherwise both inputs survive
/// and the interiors of all shortest arcs are added.
fn tc_circle_case<R: Real>(
    a: CircleArc<R>,
    b: CircleArc<R>,
    log_radius: R,
    tol: &Tolerance<R>,
) -> Vec<ComplexRegion<R>> {
    if !arc_intersection(&a, &b.rotate(R::PI()), tol).is_empty() {
        return vec![ComplexRegion::Disk { log_radius }];
    }
    let mut pieces = vec![a, b];
    pieces.extend(strict_between(&a, &b, tol));
    circle_union(pieces, tol)
        .into_iter()
        .map(|arc| {
            if arc.is_point() {
                ComplexRegion::Point(Polar::new(log_radius, arc.lo()))
            } else {
                ComplexRegion::Arc { log_radius, arc }
            }
        })
        .collect()
}

fn phase_pair<R: Real>(
    x: PhaseRegion<R>,
    y: PhaseRegion<R>,
    tol: &Tolerance<R>,
) -> Vec<PhaseRegion<R>> {
    use PhaseRegion::*;
    let as_arc = |r: &PhaseRegion<R>| match r {
        Zero => None,
        Point(a) => Some(CircleArc::point(*a)),
        Arc(arc) => Some(*arc),
    };
    match (&x, &y) {
        (Zero, _) => vec![y],
        (_, Zero) => vec![x],
        _ => {
            let a = as_arc(&x).unwrap();
            let b = as_arc(&y).unwrap();
            phase_circle_case(a, b, tol)
        }
    }
}

/// Sum of two subsets of the unit circle over the phase carrier: open
/// shortest-arc interiors, the coincidence set (from `a ⊞ a = {a}`), and for
/// each antipodal pair the zero element together with both inputs.
fn phase_circle_case<R: Real>(
    a: CircleArc<R>,
    b: CircleArc<R>,
    tol: &Tolerance<R>,
) -> Vec<PhaseRegion<R>> {
    let mut pieces = strict_between(&a, &b, tol);
    pieces.extend(arc_intersection(&a, &b, tol));
    let antipodal = arc_intersection(&a, &b.rotate(R::PI()), tol);
    let has_zero = !antipodal.is_empty();
    for c in antipodal {
        pieces.push(c);
        pieces.push(c.rotate(R::PI()));
    }
    let mut out: Vec<PhaseRegion<R>> = Vec::new();
    if has_zero {
        out.push(PhaseRegion::Zero);
    }
    for arc in circle_union(pieces, tol) {
        if arc.is_point() {
            out.push(PhaseRegion::Point(arc.lo()));
        } else {
            out.push(PhaseRegion::Arc(arc));
        }
    }
    out
}

// --- axiom reports --------------------------------------------------------

/// Outcome of one axiom check.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<String>,
}

/// Per-axiom pass/fail for one hyperfield instance.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub hyperfield: String,
    pub exhaustive: bool,
    pub all_passed: bool,
    pub axioms: Vec<AxiomCheck>,
}
