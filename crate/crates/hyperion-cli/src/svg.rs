//! Vector output for complex hyperaddition: one column per input pair, the
//! two summands in the top row and the resulting region set in red below.

use hyperion::{ComplexRegion, Element, Hyperfield, Polar, ValueSet};

const CELL: f64 = 140.0;
const PAD: f64 = 12.0;

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

struct Cell {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Cell {
    fn xy(&self, p: &Polar<f64>) -> (f64, f64) {
        if p.is_zero() {
            return (self.cx, self.cy);
        }
        let r = p.log_mag().exp() * self.scale;
        (self.cx + r * p.angle().cos(), self.cy - r * p.angle().sin())
    }

    fn frame(&self, out: &mut String) {
        let half = CELL / 2.0 - 2.0;
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#cccccc\"/>\n",
            fmt(self.cx - half),
            fmt(self.cy - half),
            fmt(2.0 * half),
            fmt(2.0 * half)
        ));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>\n",
            fmt(self.cx - half),
            fmt(self.cy),
            fmt(self.cx + half),
            fmt(self.cy)
        ));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>\n",
            fmt(self.cx),
            fmt(self.cy - half),
            fmt(self.cx),
            fmt(self.cy + half)
        ));
    }

    fn dot(&self, out: &mut String, p: &Polar<f64>, color: &str) {
        let (x, y) = self.xy(p);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }

    fn region(&self, out: &mut String, region: &ComplexRegion<f64>) {
        match region {
            ComplexRegion::Point(p) => self.dot(out, p, "#cc0000"),
            ComplexRegion::Disk { log_radius } => {
                let r = log_radius.exp() * self.scale;
                out.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#cc0000\" fill-opacity=\"0.35\" stroke=\"#cc0000\"/>\n",
                    fmt(self.cx),
                    fmt(self.cy),
                    fmt(r)
                ));
            }
            ComplexRegion::Arc { log_radius, arc } => {
                let r = log_radius.exp() * self.scale;
                if arc.extent() >= std::f64::consts::TAU {
                    out.push_str(&format!(
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"2.5\"/>\n",
                        fmt(self.cx),
                        fmt(self.cy),
                        fmt(r)
                    ));
                    return;
                }
                let (x1, y1) = self.xy(&Polar::new(*log_radius, arc.lo()));
                let (x2, y2) = self.xy(&Polar::new(*log_radius, arc.hi()));
                let large = if arc.extent() > std::f64::consts::PI { 1 } else { 0 };
                out.push_str(&format!(
                    "<path d=\"M {} {} A {} {} 0 {large} 0 {} {}\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"2.5\"/>\n",
                    fmt(x1),
                    fmt(y1),
                    fmt(r),
                    fmt(r),
                    fmt(x2),
                    fmt(y2)
                ));
            }
        }
    }
}

/// Renders the hyperaddition of each pair as SVG: inputs above, the sum in
/// red below. Deterministic for identical inputs.
pub fn emit_regions(
    h: &Hyperfield<f64>,
    pairs: &[(Element<f64>, Element<f64>)],
) -> hyperion::Result<String> {
    let width = PAD * 2.0 + CELL * pairs.len() as f64;
    let height = PAD * 2.0 + CELL * 2.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    ));
    for (i, (z, w)) in pairs.iter().enumerate() {
        let sum = h.hyperadd(z, w)?;
        let zp = as_polar(z);
        let wp = as_polar(w);
        let max_mag = zp
            .log_mag()
            .max(wp.log_mag())
            .exp()
            .max(1e-6);
        let scale = (CELL / 2.0 - 10.0) / max_mag;
        let top = Cell {
            cx: PAD + CELL * i as f64 + CELL / 2.0,
            cy: PAD + CELL / 2.0,
            scale,
        };
        let bottom = Cell { cy: PAD + CELL * 1.5, ..top };
        top.frame(&mut out);
        bottom.frame(&mut out);
        top.dot(&mut out, &zp, "#222222");
        top.dot(&mut out, &wp, "#555555");
        if let ValueSet::Complex(regions) = &sum {
            for region in regions {
                bottom.region(&mut out, region);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn as_polar(e: &Element<f64>) -> Polar<f64> {
    match e {
        Element::Complex(p) => *p,
        _ => Polar::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antipodal_pair_renders_filled_disk() {
        let tc = Hyperfield::<f64>::complex_tropical();
        let z = Element::polar(0.0, 0.5);
        let svg = emit_regions(&tc, &[(z.clone(), tc.neg(&z).unwrap())]).unwrap();
        assert!(svg.contains("fill-opacity"));
    }

    #[test]
    fn dominant_pair_renders_point_marker() {
        let tc = Hyperfield::<f64>::complex_tropical();
        let svg = emit_regions(
            &tc,
            &[(Element::polar(1.0, 0.4), Element::polar(0.0, 2.0))],
        )
        .unwrap();
        assert!(svg.contains("r=\"3\" fill=\"#cc0000\""));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn equal_magnitude_pair_renders_arc_path() {
        let tc = Hyperfield::<f64>::complex_tropical();
        let svg = emit_regions(
            &tc,
            &[(Element::polar(0.0, 0.0), Element::polar(0.0, 1.2))],
        )
        .unwrap();
        assert!(svg.contains("<path d=\"M"));
    }

    #[test]
    fn output_is_deterministic() {
        let tc = Hyperfield::<f64>::complex_tropical();
        let pair = [(Element::polar(0.3, 0.1), Element::polar(0.3, 2.0))];
        assert_eq!(
            emit_regions(&tc, &pair).unwrap(),
            emit_regions(&tc, &pair).unwrap()
        );
    }
}
