//! Carrier elements of the supported hyperfields.
//!
//! One scalar value in one concrete carrier:
//!
//! - finite symbols for the Krasner hyperfield `{0, 1}` and the hyperfield of
//!   signs `{-1, 0, 1}`,
//! - tropical numbers `ℝ ∪ {-∞}`,
//! - complex numbers in polar form (log-magnitude, angle) for the tropical
//!   complex hyperfield,
//! - points of `S¹ ∪ {0}` for the phase hyperfield,
//! - exact rationals for the field `ℚ` viewed as a hyperfield.
//!
//! The complex carrier is kept in polar coordinates so that magnitude
//! comparisons, the log-magnitude homomorphism and rational-exponent roots
//! are free of cancellation.

use std::fmt;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::{wrap_angle, Real, Tolerance};

/// Which carrier an element or value set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Krasner,
    Sign,
    Tropical,
    Phase,
    ComplexTropical,
    Rational,
}

impl Family {
    /// Short name used in CLI arguments and JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Family::Krasner => "K",
            Family::Sign => "S",
            Family::Tropical => "T",
            Family::Phase => "P",
            Family::ComplexTropical => "TC",
            Family::Rational => "Q",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Symbol of a finite carrier. The Krasner hyperfield uses `Zero`/`One`,
/// the hyperfield of signs all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteSym {
    MinusOne,
    Zero,
    One,
}

impl FiniteSym {
    pub fn as_i8(&self) -> i8 {
        match self {
            FiniteSym::MinusOne => -1,
            FiniteSym::Zero => 0,
            FiniteSym::One => 1,
        }
    }

    pub fn from_i8(v: i8) -> Option<FiniteSym> {
        match v {
            -1 => Some(FiniteSym::MinusOne),
            0 => Some(FiniteSym::Zero),
            1 => Some(FiniteSym::One),
            _ => None,
        }
    }
}

/// Complex number in polar form: `e^(log_mag) · e^(i·angle)`.
///
/// `log_mag = -∞` is the unique zero; its stored angle is forced to `0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar<R> {
    log_mag: R,
    angle: R,
}

impl<R: Real> Polar<R> {
    pub fn new(log_mag: R, angle: R) -> Self {
        if log_mag.is_infinite() && log_mag < R::zero() {
            Polar { log_mag: R::neg_infinity(), angle: R::zero() }
        } else {
            Polar { log_mag, angle: wrap_angle(angle) }
        }
    }

    pub fn zero() -> Self {
        Polar { log_mag: R::neg_infinity(), angle: R::zero() }
    }

    pub fn one() -> Self {
        Polar { log_mag: R::zero(), angle: R::zero() }
    }

    pub fn log_mag(&self) -> R {
        self.log_mag
    }

    /// Angle in `[0, 2π)`; meaningful only for nonzero values.
    pub fn angle(&self) -> R {
        self.angle
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag.is_infinite() && self.log_mag < R::zero()
    }

    /// Complex multiplication: add log-magnitudes, add angles.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Polar::zero();
        }
        Polar::new(self.log_mag + rhs.log_mag, self.angle + rhs.angle)
    }

    /// Negation rotates by π.
    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        Polar::new(self.log_mag, self.angle + R::PI())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Polar::new(-self.log_mag, -self.angle))
    }

    /// Integer power. `z^0 = 1` including for `z = 0`.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Polar::one();
        }
        if self.is_zero() {
            return Polar::zero();
        }
        let kr = R::from_u32(k).expect("small exponent");
        Polar::new(self.log_mag * kr, wrap_angle(self.angle) * kr)
    }

    /// True complex addition, for uses where the carrier plays the role of
    /// the field `ℂ` rather than the tropical complex hyperfield. Factors
    /// out the larger magnitude so it is stable for any log-magnitudes.
    pub fn field_add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return *rhs;
        }
        if rhs.is_zero() {
            return *self;
        }
        let m = self.log_mag.max(rhs.log_mag);
        let re = (self.log_mag - m).exp() * self.angle.cos()
            + (rhs.log_mag - m).exp() * rhs.angle.cos();
        let im = (self.log_mag - m).exp() * self.angle.sin()
            + (rhs.log_mag - m).exp() * rhs.angle.sin();
        let norm = (re * re + im * im).sqrt();
        if norm == R::zero() {
            return Polar::zero();
        }
        Polar::new(m + norm.ln(), im.atan2(re))
    }

    /// Principal k-th root: divide the log-magnitude and the canonical angle.
    pub fn principal_root(&self, k: u32) -> Self {
        assert!(k > 0, "root order must be positive");
        if self.is_zero() {
            return Polar::zero();
        }
        let kr = R::from_u32(k).expect("small root order");
        Polar::new(self.log_mag / kr, wrap_angle(self.angle) / kr)
    }

    pub fn approx_eq(&self, rhs: &Self, tol: &Tolerance<R>) -> bool {
        if self.is_zero() || rhs.is_zero() {
            return self.is_zero() && rhs.is_zero();
        }
        tol.mag_eq(self.log_mag, rhs.log_mag) && tol.angle_eq(self.angle, rhs.angle)
    }

    /// True when `rhs = -self` (equal magnitude, antipodal angle).
    pub fn antipodal(&self, rhs: &Self, tol: &Tolerance<R>) -> bool {
        !self.is_zero()
            && !rhs.is_zero()
            && tol.mag_eq(self.log_mag, rhs.log_mag)
            && tol.angle_antipodal(self.angle, rhs.angle)
    }
}

/// Point of the phase carrier `S¹ ∪ {0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhasePoint<R> {
    Zero,
    Unit(R),
}

impl<R: Real> PhasePoint<R> {
    pub fn unit(angle: R) -> Self {
        PhasePoint::Unit(wrap_angle(angle))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PhasePoint::Zero)
    }

    pub fn angle(&self) -> Option<R> {
        match self {
            PhasePoint::Zero => None,
            PhasePoint::Unit(a) => Some(*a),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (PhasePoint::Unit(a), PhasePoint::Unit(b)) => PhasePoint::unit(*a + *b),
            _ => PhasePoint::Zero,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            PhasePoint::Zero => PhasePoint::Zero,
            PhasePoint::Unit(a) => PhasePoint::unit(*a + R::PI()),
        }
    }

    pub fn approx_eq(&self, rhs: &Self, tol: &Tolerance<R>) -> bool {
        match (self, rhs) {
            (PhasePoint::Zero, PhasePoint::Zero) => true,
            (PhasePoint::Unit(a), PhasePoint::Unit(b)) => tol.angle_eq(*a, *b),
            _ => false,
        }
    }
}

/// A scalar in one concrete hyperfield carrier.
#[derive(Debug, Clone, PartialEq)]
pub enum Element<R> {
    Finite(FiniteSym),
    Tropical(R),
    Complex(Polar<R>),
    Phase(PhasePoint<R>),
    Rational(BigRational),
}

impl<R: Real> Element<R> {
    pub fn tropical(v: R) -> Self {
        Element::Tropical(v)
    }

    pub fn polar(log_mag: R, angle: R) -> Self {
        Element::Complex(Polar::new(log_mag, angle))
    }

    pub fn phase_unit(angle: R) -> Self {
        Element::Phase(PhasePoint::unit(angle))
    }

    pub fn sym(v: i8) -> Self {
        Element::Finite(FiniteSym::from_i8(v).expect("symbol in {-1, 0, 1}"))
    }

    /// Families an element can belong to. Finite symbols are shared between
    /// the Krasner and sign carriers; `MinusOne` is sign-only.
    pub fn fits_family(&self, family: Family) -> bool {
        match (self, family) {
            (Element::Finite(s), Family::Krasner) => *s != FiniteSym::MinusOne,
            (Element::Finite(_), Family::Sign) => true,
            (Element::Tropical(_), Family::Tropical) => true,
            (Element::Complex(_), Family::ComplexTropical) => true,
            (Element::Phase(_), Family::Phase) => true,
            (Element::Rational(_), Family::Rational) => true,
            _ => false,
        }
    }

    pub fn approx_eq(&self, rhs: &Self, tol: &Tolerance<R>) -> bool {
        match (self, rhs) {
            (Element::Finite(a), Element::Finite(b)) => a == b,
            (Element::Tropical(a), Element::Tropical(b)) => tol.mag_eq(*a, *b),
            (Element::Complex(a), Element::Complex(b)) => a.approx_eq(b, tol),
            (Element::Phase(a), Element::Phase(b)) => a.approx_eq(b, tol),
            (Element::Rational(a), Element::Rational(b)) => a == b,
            _ => false,
        }
    }
}

impl<R: Real> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Finite(s) => write!(f, "{}", s.as_i8()),
            Element::Tropical(v) => {
                if v.is_infinite() && *v < R::zero() {
                    f.write_str("-inf")
                } else {
                    write!(f, "{v}")
                }
            }
            Element::Complex(p) => {
                if p.is_zero() {
                    f.write_str("0")
                } else {
                    let deg =
                        p.angle() * R::from_f64(180.0).unwrap() / R::PI();
                    write!(f, "mag{}@{}", p.log_mag().exp(), deg)
                }
            }
            Element::Phase(PhasePoint::Zero) => f.write_str("0"),
            Element::Phase(PhasePoint::Unit(a)) => {
                let deg = *a * R::from_f64(180.0).unwrap() / R::PI();
                write!(f, "@{deg}")
            }
            Element::Rational(q) => write!(f, "{q}"),
        }
    }
}

/// Serializes a scalar that may be `-∞` as either a JSON number or the
/// string `"-inf"`.
pub(crate) fn serialize_mag<R: Real, S: Serializer>(v: R, ser: S) -> Result<S::Ok, S::Error> {
    if v.is_infinite() && v < R::zero() {
        ser.serialize_str("-inf")
    } else {
        ser.serialize_f64(v.to_f64().expect("finite scalar"))
    }
}

impl<R: Real> Serialize for Element<R> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Element::Finite(s) => {
                let mut st = ser.serialize_struct("Element", 2)?;
                st.serialize_field("family", "finite")?;
                st.serialize_field("value", &s.as_i8())?;
                st.end()
            }
            Element::Tropical(v) => {
                let mut st = ser.serialize_struct("Element", 2)?;
                st.serialize_field("family", "T")?;
                st.serialize_field("value", &MagField(*v))?;
                st.end()
            }
            Element::Complex(p) => {
                let mut st = ser.serialize_struct("Element", 3)?;
                st.serialize_field("family", "TC")?;
                st.serialize_field("log_mag", &MagField(p.log_mag()))?;
                st.serialize_field("angle", &p.angle().to_f64())?;
                st.end()
            }
            Element::Phase(p) => match p {
                PhasePoint::Zero => {
                    let mut st = ser.serialize_struct("Element", 2)?;
                    st.serialize_field("family", "P")?;
                    st.serialize_field("zero", &true)?;
                    st.end()
                }
                PhasePoint::Unit(a) => {
                    let mut st = ser.serialize_struct("Element", 3)?;
                    st.serialize_field("family", "P")?;
                    st.serialize_field("zero", &false)?;
                    st.serialize_field("angle", &a.to_f64())?;
                    st.end()
                }
            },
            Element::Rational(q) => {
                let mut st = ser.serialize_struct("Element", 2)?;
                st.serialize_field("family", "Q")?;
                st.serialize_field("value", &q.to_string())?;
                st.end()
            }
        }
    }
}

/// Wrapper so struct fields can reuse the `-inf` encoding.
pub(crate) struct MagField<R>(pub R);

impl<R: Real> Serialize for MagField<R> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize_mag(self.0, ser)
    }
}

/// Ordering key used by canonicalization; not a mathematical order.
pub(crate) fn total_cmp<R: Real>(a: R, b: R) -> std::cmp::Ordering {
    a.partial_cmp(&b).expect("no NaN in carrier values")
}
