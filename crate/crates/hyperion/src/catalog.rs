//! The hyperfield catalog and the homomorphisms between its members.
//!
//! A hyperfield homomorphism preserves `0`, `1` and multiplication, and is
//! sub-additive on hypersums: `f(x ⊞ y) ⊆ f(x) ⊞ f(y)`. The catalog knows:
//!
//! - `toK:<H>` — the canonical map `H → K` sending every nonzero to `1`,
//! - `sgn: Qtriv → S` — the sign of a rational,
//! - `ph: TC → P` — the phase of a complex number,
//! - `eta: TC → T` — the log-magnitude map, the one the lifting pipeline
//!   inverts,
//! - `id:<H>` — identity maps, mostly for the push-forward checks.
//!
//! Each homomorphism carries a canonical lift (a chosen section of the map)
//! and a fiber sampler.

use num_rational::BigRational;
use num_traits::Zero as _;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{Element, FiniteSym, PhasePoint, Polar};
use crate::error::{Error, Result};
use crate::hyperfield::Hyperfield;
use crate::scalar::Real;

/// Which map a [`Homomorphism`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HomKind {
    ToKrasner,
    Sgn,
    Ph,
    Eta,
    Identity,
}

/// A concrete hyperfield homomorphism with a chosen section of the map.
#[derive(Debug, Clone)]
pub struct Homomorphism<R> {
    name: String,
    kind: HomKind,
    domain: Hyperfield<R>,
    codomain: Hyperfield<R>,
}

impl<R: Real> Homomorphism<R> {
    /// `toK:<H>`: zero to `0`, everything else to `1`.
    pub fn to_krasner(domain: Hyperfield<R>) -> Self {
        Homomorphism {
            name: format!("toK:{}", domain.name()),
            kind: HomKind::ToKrasner,
            domain,
            codomain: Hyperfield::krasner(),
        }
    }

    /// `sgn`: exact rationals onto the hyperfield of signs.
    pub fn sgn() -> Self {
        Homomorphism {
            name: "sgn".into(),
            kind: HomKind::Sgn,
            domain: Hyperfield::rational_field(),
            codomain: Hyperfield::sign(),
        }
    }

    /// `ph`: complex numbers onto the phase hyperfield.
    pub fn ph() -> Self {
        Homomorphism {
            name: "ph".into(),
            kind: HomKind::Ph,
            domain: Hyperfield::complex_tropical(),
            codomain: Hyperfield::phase(),
        }
    }

    /// `eta`: the log-magnitude of a complex number, onto the tropical
    /// hyperfield. The canonical lift places the fiber point at angle `0`.
    pub fn eta() -> Self {
        Homomorphism {
            name: "eta".into(),
            kind: HomKind::Eta,
            domain: Hyperfield::complex_tropical(),
            codomain: Hyperfield::tropical(),
        }
    }

    pub fn identity(h: Hyperfield<R>) -> Self {
        Homomorphism {
            name: format!("id:{}", h.name()),
            kind: HomKind::Identity,
            domain: h.clone(),
            codomain: h,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Applies one equality tolerance to both sides of the map.
    pub fn with_tolerance(mut self, eps: R) -> Self {
        self.domain = self.domain.with_tolerance(eps);
        self.codomain = self.codomain.with_tolerance(eps);
        self
    }

    pub fn domain(&self) -> &Hyperfield<R> {
        &self.domain
    }

    pub fn codomain(&self) -> &Hyperfield<R> {
        &self.codomain
    }

    /// Applies the map.
    pub fn map(&self, x: &Element<R>) -> Result<Element<R>> {
        self.domain.check_element(x)?;
        Ok(match self.kind {
            HomKind::Identity => x.clone(),
            HomKind::ToKrasner => {
                if self.domain.is_zero(x) {
                    Element::Finite(FiniteSym::Zero)
                } else {
                    Element::Finite(FiniteSym::One)
                }
            }
            HomKind::Sgn => match x {
                Element::Rational(q) => {
                    let s = if q.is_zero() {
                        0
                    } else if q < &BigRational::zero() {
                        -1
                    } else {
                        1
                    };
                    Element::sym(s)
                }
                _ => unreachable!("domain checked"),
            },
            HomKind::Ph => match x {
                Element::Complex(p) if p.is_zero() => Element::Phase(PhasePoint::Zero),
                Element::Complex(p) => Element::Phase(PhasePoint::unit(p.angle())),
                _ => unreachable!("domain checked"),
            },
            HomKind::Eta => match x {
                Element::Complex(p) => Element::Tropical(p.log_mag()),
                _ => unreachable!("domain checked"),
            },
        })
    }

    /// A chosen section: `map(canonical_lift(y)) = y` for `y` in the image.
    pub fn canonical_lift(&self, y: &Element<R>) -> Result<Element<R>> {
        self.codomain.check_element(y)?;
        Ok(match self.kind {
            HomKind::Identity => y.clone(),
            HomKind::ToKrasner => {
                if self.codomain.is_zero(y) {
                    self.domain.zero()
                } else {
                    self.domain.one()
                }
            }
            HomKind::Sgn => match y {
                Element::Finite(s) => Element::Rational(BigRational::from_integer(
                    num_bigint::BigInt::from(s.as_i8()),
                )),
                _ => unreachable!("codomain checked"),
            },
            HomKind::Ph => match y {
                Element::Phase(PhasePoint::Zero) => Element::Complex(Polar::zero()),
                Element::Phase(PhasePoint::Unit(a)) => Element::polar(R::zero(), *a),
                _ => unreachable!("codomain checked"),
            },
            HomKind::Eta => match y {
                Element::Tropical(v) => Element::polar(*v, R::zero()),
                _ => unreachable!("codomain checked"),
            },
        })
    }

    /// Text description of the fibers.
    pub fn fiber_description(&self) -> String {
        match self.kind {
            HomKind::Identity => "fiber of y is {y}".into(),
            HomKind::ToKrasner => {
                "fiber of 1 is every nonzero element; fiber of 0 is {0}".into()
            }
            HomKind::Sgn => {
                "fiber of ±1 is the open half-line of that sign; fiber of 0 is {0}".into()
            }
            HomKind::Ph => {
                "fiber of a unit is the open ray at its angle; fiber of 0 is {0}".into()
            }
            HomKind::Eta => {
                "fiber of a is the circle of log-magnitude a; fiber of -inf is {0}".into()
            }
        }
    }

    /// Draws an element of `f⁻¹(y)`.
    pub fn sample_fiber<G: Rng>(&self, y: &Element<R>, rng: &mut G) -> Result<Element<R>> {
        self.codomain.check_element(y)?;
        Ok(match self.kind {
            HomKind::Identity => y.clone(),
            HomKind::ToKrasner => {
                if self.codomain.is_zero(y) {
                    self.domain.zero()
                } else {
                    loop {
                        let x = self.domain.sample_element(rng);
                        if !self.domain.is_zero(&x) {
                            break x;
                        }
                    }
                }
            }
            HomKind::Sgn => match y {
                Element::Finite(s) => {
                    let num = rng.gen_range(1i64..=40);
                    let den = rng.gen_range(1i64..=9);
                    let q = BigRational::new(num.into(), den.into());
                    Element::Rational(match s.as_i8() {
                        0 => BigRational::zero(),
                        1 => q,
                        _ => -q,
                    })
                }
                _ => unreachable!(),
            },
            HomKind::Ph => match y {
                Element::Phase(PhasePoint::Zero) => Element::Complex(Polar::zero()),
                Element::Phase(PhasePoint::Unit(a)) => {
                    Element::polar(R::from_f64(rng.gen_range(-3.0..3.0)).unwrap(), *a)
                }
                _ => unreachable!(),
            },
            HomKind::Eta => match y {
                Element::Tropical(v) if v.is_infinite() && *v < R::zero() => {
                    Element::Complex(Polar::zero())
                }
                Element::Tropical(v) => Element::polar(
                    *v,
                    R::from_f64(rng.gen_range(0.0..std::f64::consts::TAU)).unwrap(),
                ),
                _ => unreachable!(),
            },
        })
    }

    /// Checks the homomorphism laws: unit preservation, multiplicativity,
    /// and the hypersum containment `f(x ⊞ y) ⊆ f(x) ⊞ f(y)` via region
    /// representatives. Exhaustive when the domain is finite.
    pub fn check(&self, budget: u64, seed: u64) -> HomReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<[Element<R>; 2]> = match self.domain.elements() {
            Some(all) => {
                let mut v = Vec::new();
                for x in &all {
                    for y in &all {
                        v.push([x.clone(), y.clone()]);
                    }
                }
                v
            }
            None => (0..budget)
                .map(|_| {
                    [self.domain.sample_element(&mut rng), self.domain.sample_element(&mut rng)]
                })
                .collect(),
        };
        let mut checked = 0u64;
        let mut witness = None;
        let zero_ok = self
            .map(&self.domain.zero())
            .map(|z| self.codomain.is_zero(&z))
            .unwrap_or(false);
        let one_ok = self
            .map(&self.domain.one())
            .map(|o| self.codomain.approx_eq(&o, &self.codomain.one()))
            .unwrap_or(false);
        if !zero_ok {
            witness = Some("f(0) ≠ 0".to_string());
        } else if !one_ok {
            witness = Some("f(1) ≠ 1".to_string());
        } else {
            'outer: for [x, y] in &pairs {
                checked += 1;
                // multiplicativity
                let lhs = self.map(&self.domain.mul(x, y).unwrap()).unwrap();
                let rhs = self
                    .codomain
                    .mul(&self.map(x).unwrap(), &self.map(y).unwrap())
                    .unwrap();
                if !self.codomain.approx_eq(&lhs, &rhs) {
                    witness = Some(format!("f({x} ⊙ {y}) ≠ f({x}) ⊙ f({y})"));
                    break;
                }
                // additive containment on representatives. ph is a map out
                // of the field ℂ (which shares the complex carrier), so its
                // domain-side sum is genuine complex addition.
                let target = self
                    .codomain
                    .hyperadd(&self.map(x).unwrap(), &self.map(y).unwrap())
                    .unwrap();
                let sum_reps: Vec<Element<R>> = if self.kind == HomKind::Ph {
                    match (x, y) {
                        (Element::Complex(p), Element::Complex(q)) => {
                            // toleranced-antipodal inputs cancel exactly;
                            // their float sum would be pure noise
                            if p.antipodal(q, self.domain.tolerance()) {
                                vec![Element::Complex(Polar::zero())]
                            } else {
                                vec![Element::Complex(p.field_add(q))]
                            }
                        }
                        _ => unreachable!("domain checked"),
                    }
                } else {
                    self.domain.hyperadd(x, y).unwrap().representatives()
                };
                for rep in sum_reps {
                    let img = self.map(&rep).unwrap();
                    if !self.codomain.contains(&target, &img).unwrap() {
                        witness = Some(format!(
                            "f({rep}) ∉ f({x}) ⊞ f({y}) although {rep} ∈ {x} ⊞ {y}"
                        ));
                        break 'outer;
                    }
                }
            }
        }
        HomReport {
            homomorphism: self.name.clone(),
            domain: self.domain.name().into(),
            codomain: self.codomain.name().into(),
            exhaustive: self.domain.elements().is_some(),
            checked,
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Result of a homomorphism law check.
#[derive(Debug, Clone, Serialize)]
pub struct HomReport {
    pub homomorphism: String,
    pub domain: String,
    pub codomain: String,
    pub exhaustive: bool,
    pub checked: u64,
    pub passed: bool,
    pub witness: Option<String>,
}

/// The six concrete hyperfields.
pub fn catalog<R: Real>() -> Vec<Hyperfield<R>> {
    vec![
        Hyperfield::krasner(),
        Hyperfield::sign(),
        Hyperfield::tropical(),
        Hyperfield::phase(),
        Hyperfield::complex_tropical(),
        Hyperfield::rational_field(),
    ]
}

/// Looks up a hyperfield by its short name (`K`, `S`, `T`, `P`, `TC`,
/// `Qtriv`).
pub fn lookup<R: Real>(name: &str) -> Option<Hyperfield<R>> {
    catalog().into_iter().find(|h| h.name() == name)
}

/// The named homomorphisms: `toK:<H>` for every catalog member, `sgn`,
/// `ph` and `eta`.
pub fn hom_catalog<R: Real>() -> Vec<Homomorphism<R>> {
    let mut v: Vec<Homomorphism<R>> =
        catalog().into_iter().map(Homomorphism::to_krasner).collect();
    v.push(Homomorphism::sgn());
    v.push(Homomorphism::ph());
    v.push(Homomorphism::eta());
    v
}

/// Looks up a homomorphism by name; `id:<H>` is accepted in addition to the
/// catalog names.
pub fn hom_lookup<R: Real>(name: &str) -> Option<Homomorphism<R>> {
    if let Some(h) = name.strip_prefix("id:").and_then(lookup::<R>) {
        return Some(Homomorphism::identity(h));
    }
    hom_catalog().into_iter().find(|f| f.name() == name)
}

pub fn require_hyperfield<R: Real>(name: &str) -> Result<Hyperfield<R>> {
    lookup(name).ok_or_else(|| Error::Unsupported(format!("unknown hyperfield {name:?}")))
}
