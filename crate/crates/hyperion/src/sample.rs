//! Seeded random polynomial generation for the property and acceptance
//! suites.
//!
//! Coefficient log-magnitudes are drawn from a quarter-integer lattice by
//! default. Tropical roots of such polynomials fall on coarse rational
//! breakpoints, which makes them discoverable by grid scans; angles stay
//! continuous so the complex geometry is still generic.

use rand::Rng;

use crate::element::{Element, Family};
use crate::hyperfield::Hyperfield;
use crate::poly::Polynomial;
use crate::scalar::Real;

/// Shape of a random polynomial draw.
#[derive(Debug, Clone, Copy)]
pub struct PolyConfig {
    pub nvars: usize,
    pub max_terms: usize,
    pub max_total_degree: u32,
    /// Draw log-magnitudes from the quarter-integer lattice in `[-2, 2]`
    /// instead of uniformly.
    pub lattice_magnitudes: bool,
    /// Reject draws whose every exponent vector is zero.
    pub require_nonconstant: bool,
}

impl PolyConfig {
    pub fn univariate(max_terms: usize, max_degree: u32) -> Self {
        PolyConfig {
            nvars: 1,
            max_terms,
            max_total_degree: max_degree,
            lattice_magnitudes: true,
            require_nonconstant: true,
        }
    }
}

fn sample_exponent_vector<G: Rng>(rng: &mut G, nvars: usize, max_total: u32) -> Vec<u32> {
    // sequentially spend a random share of the total degree budget
    let mut left = rng.gen_range(0..=max_total);
    let mut e = vec![0u32; nvars];
    for slot in e.iter_mut() {
        let v = rng.gen_range(0..=left);
        *slot = v;
        left -= v;
    }
    // avoid biasing the budget toward the first variables
    for i in (1..nvars).rev() {
        let j = rng.gen_range(0..=i);
        e.swap(i, j);
    }
    e
}

fn sample_nonzero_coefficient<R: Real, G: Rng>(
    h: &Hyperfield<R>,
    lattice: bool,
    rng: &mut G,
) -> Element<R> {
    match h.family() {
        Family::ComplexTropical => {
            let m = if lattice {
                R::from_i32(rand_lattice(rng)).unwrap() / R::from_u8(4).unwrap()
            } else {
                R::from_f64(rng.gen_range(-3.0..3.0)).unwrap()
            };
            let angle = R::from_f64(rng.gen_range(0.0..std::f64::consts::TAU)).unwrap();
            Element::polar(m, angle)
        }
        Family::Tropical => {
            let m = if lattice {
                R::from_i32(rand_lattice(rng)).unwrap() / R::from_u8(4).unwrap()
            } else {
                R::from_f64(rng.gen_range(-3.0..3.0)).unwrap()
            };
            Element::Tropical(m)
        }
        _ => loop {
            let x = h.sample_element(rng);
            if !h.is_zero(&x) {
                break x;
            }
        },
    }
}

fn rand_lattice<G: Rng>(rng: &mut G) -> i32 {
    rng.gen_range(-8..=8)
}

/// Draws a random sparse polynomial with 2 to `max_terms` distinct terms.
pub fn sample_polynomial<R: Real, G: Rng>(
    h: &Hyperfield<R>,
    cfg: &PolyConfig,
    rng: &mut G,
) -> Polynomial<R> {
    loop {
        let k = rng.gen_range(2..=cfg.max_terms.max(2));
        let mut terms: Vec<(Vec<u32>, Element<R>)> = Vec::new();
        let mut tries = 0;
        while terms.len() < k && tries < 60 {
            tries += 1;
            let e = sample_exponent_vector(rng, cfg.nvars, cfg.max_total_degree);
            if terms.iter().any(|(seen, _)| seen == &e) {
                continue;
            }
            let c = sample_nonzero_coefficient(h, cfg.lattice_magnitudes, rng);
            terms.push((e, c));
        }
        if terms.len() < 2 {
            continue;
        }
        if cfg.require_nonconstant && terms.iter().all(|(e, _)| e.iter().all(|&v| v == 0)) {
            continue;
        }
        if let Ok(p) = Polynomial::new(h, cfg.nvars, terms) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn polynomials_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let tc = Hyperfield::<f64>::complex_tropical();
        for _ in 0..200 {
            let cfg = PolyConfig {
                nvars: 3,
                max_terms: 6,
                max_total_degree: 4,
                lattice_magnitudes: true,
                require_nonconstant: true,
            };
            let p = sample_polynomial(&tc, &cfg, &mut rng);
            assert!(p.num_terms() >= 2);
            assert!(p.total_degree() <= 4);
            assert!(p.total_degree() >= 1);
        }
    }
}
