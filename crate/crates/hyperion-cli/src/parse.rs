//! Text grammar for polynomials, elements and points.
//!
//! Terms are joined by `+`; within a term, tokens are separated by
//! whitespace: an optional coefficient literal followed by variable powers
//! `X1`, `X2^3`, … Coefficient literals per hyperfield:
//!
//! - `K`, `S`: the symbols as integers (`1`, `-1`),
//! - `T`: decimals, or `-inf` for the bottom element,
//! - `TC`: `mag<m>@<deg>` (linear magnitude, angle in degrees) or `<re>,<im>`,
//! - `P`: `@<deg>` for a unit, `0` for the zero element,
//! - `Qtriv`: integers, fractions `p/q`, or decimals.
//!
//! A missing coefficient means the multiplicative unit. Points are
//! coordinate lists split on `;` (or on `,` when no `;` is present, which
//! is unambiguous for every family except complex `re,im` literals).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use hyperion::poly::Polynomial;
use hyperion::{Element, Family, Hyperfield};

/// Parse failure with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

/// Parses one element literal.
pub fn parse_element(
    h: &Hyperfield<f64>,
    text: &str,
    offset: usize,
) -> Result<Element<f64>, ParseError> {
    let t = text.trim();
    let pos = offset + (text.len() - text.trim_start().len());
    if t.is_empty() {
        return err(pos, "empty element literal");
    }
    match h.family() {
        Family::Krasner | Family::Sign => match t {
            "0" => Ok(Element::sym(0)),
            "1" => Ok(Element::sym(1)),
            "-1" if h.family() == Family::Sign => Ok(Element::sym(-1)),
            _ => err(pos, format!("expected a symbol of {}, got {t:?}", h.name())),
        },
        Family::Tropical => {
            if t == "-inf" {
                return Ok(Element::Tropical(f64::NEG_INFINITY));
            }
            t.parse::<f64>()
                .map(Element::tropical)
                .map_err(|_| ParseError {
                    position: pos,
                    message: format!("expected a decimal or -inf, got {t:?}"),
                })
        }
        Family::ComplexTropical => {
            if t == "0" {
                return Ok(h.zero());
            }
            if let Some(rest) = t.strip_prefix("mag") {
                let (mag_s, deg_s) = rest
                    .split_once('@')
                    .ok_or_else(|| ParseError {
                        position: pos,
                        message: "expected mag<m>@<deg>".into(),
                    })?;
                let mag: f64 = mag_s.parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("bad magnitude {mag_s:?}"),
                })?;
                let deg: f64 = deg_s.parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("bad angle {deg_s:?}"),
                })?;
                if mag < 0.0 {
                    return err(pos, "magnitude must be nonnegative");
                }
                if mag == 0.0 {
                    return Ok(h.zero());
                }
                return Ok(Element::polar(mag.ln(), deg.to_radians()));
            }
            if let Some((re_s, im_s)) = t.split_once(',') {
                let re: f64 = re_s.trim().parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("bad real part {re_s:?}"),
                })?;
                let im: f64 = im_s.trim().parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("bad imaginary part {im_s:?}"),
                })?;
                let mag = (re * re + im * im).sqrt();
                if mag == 0.0 {
                    return Ok(h.zero());
                }
                return Ok(Element::polar(mag.ln(), im.atan2(re)));
            }
            err(pos, format!("expected mag<m>@<deg>, re,im or 0, got {t:?}"))
        }
        Family::Phase => {
            if t == "0" {
                return Ok(h.zero());
            }
            if let Some(deg_s) = t.strip_prefix('@') {
                let deg: f64 = deg_s.parse().map_err(|_| ParseError {
                    position: pos,
                    message: format!("bad angle {deg_s:?}"),
                })?;
                return Ok(Element::phase_unit(deg.to_radians()));
            }
            err(pos, format!("expected @<deg> or 0, got {t:?}"))
        }
        Family::Rational => parse_rational(t)
            .map(Element::Rational)
            .ok_or_else(|| ParseError {
                position: pos,
                message: format!("expected an integer, p/q or decimal, got {t:?}"),
            }),
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let digits = frac.len() as u32;
        let whole: BigInt = format!("{int}{frac}").parse().ok()?;
        return Some(BigRational::new(whole, BigInt::from(10u32).pow(digits)));
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Parses a point: coordinates split on `;`, or on `,` when no `;` occurs.
pub fn parse_point(
    h: &Hyperfield<f64>,
    text: &str,
    nvars: usize,
) -> Result<Vec<Element<f64>>, ParseError> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = if trimmed.contains(';') {
        trimmed.split(';').collect()
    } else if nvars == 1 {
        vec![trimmed]
    } else {
        trimmed.split(',').collect()
    };
    if parts.len() != nvars {
        return err(
            0,
            format!("expected {nvars} coordinates, got {} in {text:?}", parts.len()),
        );
    }
    parts.iter().map(|p| parse_element(h, p, 0)).collect()
}

/// Parses the polynomial grammar.
pub fn parse_polynomial(
    h: &Hyperfield<f64>,
    text: &str,
) -> Result<Polynomial<f64>, ParseError> {
    type TermTokens = (usize, Vec<(u32, u32)>, Option<(usize, String)>);
    let mut terms: Vec<(Vec<u32>, Element<f64>)> = Vec::new();
    let mut nvars = 1usize;
    let mut offset = 0usize;
    let mut parsed: Vec<TermTokens> = Vec::new();
    for chunk in text.split('+') {
        let chunk_start = offset;
        offset += chunk.len() + 1;
        if chunk.trim().is_empty() {
            return err(chunk_start, "empty term");
        }
        let mut coeff_tok: Option<(usize, String)> = None;
        let mut powers: Vec<(u32, u32)> = Vec::new();
        let mut cursor = chunk_start;
        for tok in chunk.split_whitespace() {
            let tok_pos = cursor + chunk[cursor - chunk_start..].find(tok).unwrap_or(0);
            cursor = tok_pos + tok.len() - chunk_start + chunk_start;
            if let Some(rest) = tok.strip_prefix('X') {
                let (idx_s, exp_s) = match rest.split_once('^') {
                    Some((i, e)) => (i, Some(e)),
                    None => (rest, None),
                };
                let idx: u32 = idx_s.parse().map_err(|_| ParseError {
                    position: tok_pos,
                    message: format!("bad variable index in {tok:?}"),
                })?;
                if idx == 0 {
                    return err(tok_pos, "variables are numbered from X1");
                }
                let exp: u32 = match exp_s {
                    Some(e) => e.parse().map_err(|_| ParseError {
                        position: tok_pos,
                        message: format!("bad exponent in {tok:?}"),
                    })?,
                    None => 1,
                };
                nvars = nvars.max(idx as usize);
                powers.push((idx - 1, exp));
            } else {
                if coeff_tok.is_some() {
                    return err(tok_pos, format!("unexpected second coefficient {tok:?}"));
                }
                if !powers.is_empty() {
                    return err(
                        tok_pos,
                        format!("coefficient {tok:?} must precede the variables"),
                    );
                }
                coeff_tok = Some((tok_pos, tok.to_string()));
            }
        }
        parsed.push((chunk_start, powers, coeff_tok));
    }
    for (chunk_start, powers, coeff_tok) in parsed {
        let coeff = match &coeff_tok {
            Some((pos, tok)) => parse_element(h, tok, *pos)?,
            None => h.one(),
        };
        if h.is_zero(&coeff) {
            return err(chunk_start, "zero coefficient");
        }
        let mut exps = vec![0u32; nvars];
        for (idx, e) in powers {
            exps[idx as usize] += e;
        }
        if terms.iter().any(|(seen, _)| seen == &exps) {
            return err(chunk_start, format!("duplicate term with exponents {exps:?}"));
        }
        terms.push((exps, coeff));
    }
    Polynomial::new(h, nvars, terms).map_err(|e| ParseError {
        position: 0,
        message: e.to_string(),
    })
}

/// Canonical text: terms in descending exponent order, coefficients always
/// explicit.
pub fn print_polynomial(p: &Polynomial<f64>) -> String {
    let mut terms: Vec<(&Vec<u32>, &Element<f64>)> = p.terms().collect();
    terms.reverse();
    let mut out = String::new();
    for (i, (exps, coeff)) in terms.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let _ = write!(out, "{coeff}");
        for (var, &e) in exps.iter().enumerate() {
            if e == 1 {
                let _ = write!(out, " X{}", var + 1);
            } else if e > 1 {
                let _ = write!(out, " X{}^{}", var + 1, e);
            }
        }
    }
    out
}
