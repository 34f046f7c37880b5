//! Sparse multivariate polynomials over a hyperfield.
//!
//! A polynomial is a map from exponent vectors `I ∈ ℤⁿ_{≥0}` to nonzero
//! coefficients. Evaluation is a hypersum of monomial values and therefore
//! set-valued; an element is a root when the zero element lies in that set.
//! The set of polynomials carries no ring structure of its own (products of
//! polynomials over a hyperfield are multivalued), so only the operations
//! actually needed downstream exist: evaluation, coefficientwise
//! push-forward along a homomorphism, and restriction to a monomial line.

use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::catalog::Homomorphism;
use crate::element::{Element, Family};
use crate::error::{Error, Result};
use crate::hyperfield::Hyperfield;
use crate::region::ValueSet;
use crate::scalar::Real;

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<R> {
    family: Family,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Element<R>>,
}

/// The multivalued value of a polynomial at a point.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "R: Real"))]
pub struct EvalResult<R> {
    pub value: ValueSet<R>,
    pub is_root: bool,
}

impl<R: Real> Polynomial<R> {
    /// Builds a polynomial, rejecting zero coefficients, duplicate exponent
    /// vectors, dimension mismatches and empty term lists.
    pub fn new(
        h: &Hyperfield<R>,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Element<R>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: exps.len() });
            }
            h.check_element(&coeff)?;
            if h.is_zero(&coeff) {
                return Err(Error::ZeroCoefficient(exps));
            }
            if map.insert(exps.clone(), coeff).is_some() {
                return Err(Error::DuplicateTerm(exps));
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(Polynomial { family: h.family(), nvars, terms: map })
    }

    /// Univariate helper: dense coefficient slice, constant first; zero
    /// coefficients are skipped.
    pub fn univariate(h: &Hyperfield<R>, coeffs: &[Element<R>]) -> Result<Self> {
        let terms: Vec<(Vec<u32>, Element<R>)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !h.is_zero(c))
            .map(|(i, c)| (vec![i as u32], c.clone()))
            .collect();
        Polynomial::new(h, 1, terms)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Element<R>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&Element<R>> {
        self.terms.get(exps)
    }

    /// Degree of a univariate polynomial.
    pub fn degree(&self) -> u32 {
        debug_assert_eq!(self.nvars, 1);
        self.terms.keys().map(|e| e[0]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn check_field(&self, h: &Hyperfield<R>) -> Result<()> {
        if h.family() == self.family {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { expected: self.family, found: h.family() })
        }
    }

    /// The value of one monomial `c ⊙ a₁^{i₁} ⊙ … ⊙ a_n^{i_n}`; exponent-0
    /// factors are skipped so `0^0` never arises.
    fn monomial_value(
        &self,
        h: &Hyperfield<R>,
        exps: &[u32],
        coeff: &Element<R>,
        point: &[Element<R>],
    ) -> Result<Element<R>> {
        let mut acc = coeff.clone();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = h.mul(&acc, &h.pow(&point[i], e)?)?;
            }
        }
        Ok(acc)
    }

    /// Set-valued evaluation: the hypersum of all monomial values.
    pub fn evaluate(&self, h: &Hyperfield<R>, point: &[Element<R>]) -> Result<EvalResult<R>> {
        self.check_field(h)?;
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        for x in point {
            h.check_element(x)?;
        }
        let monomials: Vec<Element<R>> = self
            .terms
            .iter()
            .map(|(e, c)| self.monomial_value(h, e, c, point))
            .collect::<Result<_>>()?;
        let value = h.hypersum(&monomials)?;
        let is_root = h.contains(&value, &h.zero())?;
        Ok(EvalResult { value, is_root })
    }

    /// Coefficientwise image under a homomorphism. Terms whose coefficient
    /// maps to zero are dropped.
    pub fn pushforward(&self, f: &Homomorphism<R>) -> Result<Polynomial<R>> {
        self.check_field(f.domain())?;
        let cod = f.codomain();
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let img = f.map(coeff)?;
            if !cod.is_zero(&img) {
                terms.insert(exps.clone(), img);
            }
        }
        if terms.is_empty() {
            return Err(Error::DegeneratePolynomial(
                "all coefficients map to zero under the push-forward".into(),
            ));
        }
        Ok(Polynomial { family: cod.family(), nvars: self.nvars, terms })
    }

    /// Substitutes `Xᵢ ← λᵢ ⊙ X^{dᵢ}`, producing a univariate polynomial
    /// with exponents `D·I`, shifted so the least exponent is zero. Returns
    /// the polynomial and the recorded shift. Terms whose scaled coefficient
    /// is zero (a zero `λᵢ` raised to a positive power) vanish identically
    /// on the line and are dropped.
    ///
    /// The dot products `D·I` must be pairwise distinct over the support;
    /// otherwise a single restricted coefficient would be a hypersum rather
    /// than an element.
    pub fn restrict_to_line(
        &self,
        h: &Hyperfield<R>,
        lifts: &[Element<R>],
        direction: &[i64],
    ) -> Result<(Polynomial<R>, i64)> {
        self.check_field(h)?;
        if lifts.len() != self.nvars || direction.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: lifts.len().min(direction.len()),
            });
        }
        let mut seen: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        for exps in self.terms.keys() {
            let dot: i64 =
                exps.iter().zip(direction).map(|(&e, &d)| e as i64 * d).sum();
            if let Some(prev) = seen.insert(dot, exps.clone()) {
                return Err(Error::DotProductCollision { i: prev, j: exps.clone() });
            }
        }
        let mut scaled: Vec<(i64, Element<R>)> = Vec::new();
        for (exps, coeff) in &self.terms {
            let dot: i64 =
                exps.iter().zip(direction).map(|(&e, &d)| e as i64 * d).sum();
            let mut c = coeff.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    c = h.mul(&c, &h.pow(&lifts[i], e)?)?;
                }
            }
            if !h.is_zero(&c) {
                scaled.push((dot, c));
            }
        }
        if scaled.is_empty() {
            return Err(Error::DegeneratePolynomial(
                "every monomial vanishes on the chosen line".into(),
            ));
        }
        let offset = scaled.iter().map(|(d, _)| *d).min().unwrap();
        let terms: Vec<(Vec<u32>, Element<R>)> = scaled
            .into_iter()
            .map(|(d, c)| (vec![(d - offset) as u32], c))
            .collect();
        Ok((Polynomial::new(h, 1, terms)?, offset))
    }
}

impl<R: Real> Serialize for Polynomial<R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a, R>(&'a BTreeMap<Vec<u32>, Element<R>>);
        struct Term<'a, R>(&'a Vec<u32>, &'a Element<R>);
        impl<'a, R: Real> Serialize for Term<'a, R> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                let mut st = ser.serialize_struct("Term", 2)?;
                st.serialize_field("exponents", self.0)?;
                st.serialize_field("coefficient", self.1)?;
                st.end()
            }
        }
        impl<'a, R: Real> Serialize for Terms<'a, R> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = ser.serialize_seq(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    seq.serialize_element(&Term(e, c))?;
                }
                seq.end()
            }
        }
        let mut st = ser.serialize_struct("Polynomial", 3)?;
        st.serialize_field("hyperfield", self.family.code())?;
        st.serialize_field("nvars", &self.nvars)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Homomorphism;
    use crate::element::FiniteSym;
    use crate::region::TropRegion;
    use num_rational::BigRational;
    use std::f64::consts::PI;

    type H = Hyperfield<f64>;

    fn k_poly_x2_x_1() -> Polynomial<f64> {
        let k = H::krasner();
        Polynomial::univariate(
            &k,
            &[Element::sym(1), Element::sym(1), Element::sym(1)],
        )
        .unwrap()
    }

    #[test]
    fn eval_krasner_all_ones_at_one() {
        let k = H::krasner();
        let p = k_poly_x2_x_1();
        let r = p.evaluate(&k, &[Element::sym(1)]).unwrap();
        assert_eq!(r.value, ValueSet::finite([FiniteSym::Zero, FiniteSym::One]));
        assert!(r.is_root);
    }

    #[test]
    fn eval_sign_example() {
        let s = H::sign();
        let p = Polynomial::univariate(
            &s,
            &[Element::sym(-1), Element::sym(1), Element::sym(1)],
        )
        .unwrap();
        let r = p.evaluate(&s, &[Element::sym(-1)]).unwrap();
        assert_eq!(
            r.value,
            ValueSet::finite([FiniteSym::MinusOne, FiniteSym::Zero, FiniteSym::One])
        );
        assert!(r.is_root);
    }

    #[test]
    fn eval_tropical_triple_tie() {
        // all three monomials equal 0 at the point 0, so the value is the
        // full down-ray below 0
        let t = H::tropical();
        let p = Polynomial::univariate(
            &t,
            &[Element::tropical(0.0), Element::tropical(0.0), Element::tropical(0.0)],
        )
        .unwrap();
        let r = p.evaluate(&t, &[Element::tropical(0.0)]).unwrap();
        match &r.value {
            ValueSet::Trop(regions) => {
                assert_eq!(regions, &vec![TropRegion::DownRay(0.0)]);
            }
            _ => panic!("tropical value expected"),
        }
        assert!(r.is_root);
    }

    #[test]
    fn pushforward_sgn_example() {
        // 4X² - 5X + 1 over the rationals maps to X² ⊞ -X ⊞ 1 over the signs
        let q = H::rational_field();
        let p = Polynomial::univariate(
            &q,
            &[
                Element::Rational(BigRational::from_integer(1.into())),
                Element::Rational(BigRational::from_integer((-5).into())),
                Element::Rational(BigRational::from_integer(4.into())),
            ],
        )
        .unwrap();
        let img = p.pushforward(&Homomorphism::sgn()).unwrap();
        assert_eq!(img.coeff(&[0]), Some(&Element::sym(1)));
        assert_eq!(img.coeff(&[1]), Some(&Element::sym(-1)));
        assert_eq!(img.coeff(&[2]), Some(&Element::sym(1)));
    }

    #[test]
    fn pushforward_eta_worked_example() {
        // i X² ⊞ ((-1+i√3)/2) X ⊞ (-1) has unit-magnitude coefficients, so
        // the tropicalization is 0·X² ⊞ 0·X ⊞ 0
        let tc = H::complex_tropical();
        let p = Polynomial::univariate(
            &tc,
            &[
                Element::polar(0.0, PI),
                Element::polar(0.0, 2.0 * PI / 3.0),
                Element::polar(0.0, PI / 2.0),
            ],
        )
        .unwrap();
        let img = p.pushforward(&Homomorphism::eta()).unwrap();
        for e in 0u32..=2 {
            assert_eq!(img.coeff(&[e]), Some(&Element::tropical(0.0)));
        }
    }

    #[test]
    fn pushforward_identity_is_identity() {
        let s = H::sign();
        let p = Polynomial::univariate(&s, &[Element::sym(-1), Element::sym(1)]).unwrap();
        let img = p.pushforward(&Homomorphism::identity(s)).unwrap();
        assert_eq!(img, p);
    }

    #[test]
    fn restrict_identity_line() {
        let tc = H::complex_tropical();
        let p = Polynomial::univariate(&tc, &[tc.one(), tc.one()]).unwrap();
        let (q, offset) = p.restrict_to_line(&tc, &[tc.one()], &[1]).unwrap();
        assert_eq!(offset, 0);
        assert_eq!(q, p);
    }

    #[test]
    fn restrict_two_vars() {
        // X₁ ⊞ X₂ with λ = (1, 1) and D = (1, 2) becomes X ⊞ X² up to the
        // recorded offset
        let tc = H::complex_tropical();
        let p = Polynomial::new(
            &tc,
            2,
            [(vec![1, 0], tc.one()), (vec![0, 1], tc.one())],
        )
        .unwrap();
        let (q, offset) = p
            .restrict_to_line(&tc, &[tc.one(), tc.one()], &[1, 2])
            .unwrap();
        assert_eq!(offset, 1);
        assert_eq!(q.degree(), 1);
        assert_eq!(q.coeff(&[0]), Some(&tc.one()));
        assert_eq!(q.coeff(&[1]), Some(&tc.one()));
    }

    #[test]
    fn restrict_detects_collision() {
        let tc = H::complex_tropical();
        let p = Polynomial::new(
            &tc,
            2,
            [(vec![1, 0], tc.one()), (vec![0, 1], tc.one())],
        )
        .unwrap();
        let err = p.restrict_to_line(&tc, &[tc.one(), tc.one()], &[1, 1]);
        assert!(matches!(err, Err(Error::DotProductCollision { .. })));
    }

    #[test]
    fn construction_errors() {
        let t = H::tropical();
        assert!(matches!(
            Polynomial::new(&t, 1, [(vec![0], t.zero())]),
            Err(Error::ZeroCoefficient(_))
        ));
        assert!(matches!(
            Polynomial::new(
                &t,
                1,
                [
                    (vec![1], Element::tropical(0.0)),
                    (vec![1], Element::tropical(2.0))
                ]
            ),
            Err(Error::DuplicateTerm(_))
        ));
        assert!(matches!(
            Polynomial::<f64>::new(&t, 1, []),
            Err(Error::EmptyPolynomial)
        ));
        let p = Polynomial::univariate(&t, &[Element::tropical(1.0)]).unwrap();
        assert!(p.evaluate(&t, &[]).is_err());
        assert!(p.evaluate(&H::krasner(), &[Element::sym(1)]).is_err());
    }

    #[test]
    fn eval_at_zero_detects_missing_constant_term() {
        let tc = H::complex_tropical();
        // X² ⊞ X: evaluation at 0 gives exactly {0}
        let p = Polynomial::new(
            &tc,
            1,
            [(vec![1], tc.one()), (vec![2], tc.one())],
        )
        .unwrap();
        let r = p.evaluate(&tc, &[tc.zero()]).unwrap();
        assert!(r.is_root);
        // X ⊞ 1: not a root at 0
        let q = Polynomial::univariate(&tc, &[tc.one(), tc.one()]).unwrap();
        assert!(!q.evaluate(&tc, &[tc.zero()]).unwrap().is_root);
    }
}
