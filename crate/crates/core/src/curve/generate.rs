use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::Real;

use super::PolyCurve;

/// Built-in test curves, all planar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Unit circle.
    Circle,
    /// Boundary of `max(|x|, |y|) <= 1`.
    Square,
    /// Two unit semicircles whose centers `(0,0)` and `(-π,0)` are joined
    /// by straight segments of length π.
    Stadion,
    /// Polar curve `r(θ) = 1 + amp·cos(k θ)`.
    Wavy { k: u32, amp: f64 },
}

impl CurveKind {
    pub const WAVY_DEFAULT: CurveKind = CurveKind::Wavy { k: 5, amp: 0.3 };

    pub fn name(&self) -> String {
        match self {
            CurveKind::Circle => "circle".into(),
            CurveKind::Square => "square".into(),
            CurveKind::Stadion => "stadion".into(),
            CurveKind::Wavy { k, amp } => format!("wavy({k},{amp})"),
        }
    }
}

impl std::str::FromStr for CurveKind {
    type Err = Error;

    /// Accepts `circle`, `square`, `stadion` (or `stadium`), `wavy` and
    /// `wavy(k,amp)` / `wavy:k:amp`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "circle" => return Ok(CurveKind::Circle),
            "square" => return Ok(CurveKind::Square),
            "stadion" | "stadium" => return Ok(CurveKind::Stadion),
            "wavy" => return Ok(CurveKind::WAVY_DEFAULT),
            _ => {}
        }
        let args = s
            .strip_prefix("wavy(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("wavy:"))
            .ok_or_else(|| Error::InvalidParams(format!("unknown curve kind `{s}`")))?;
        let parts: Vec<&str> = args.split([',', ':']).map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::InvalidParams(format!("bad wavy parameters `{args}`")));
        }
        let k = parts[0]
            .parse::<u32>()
            .map_err(|e| Error::InvalidParams(format!("wavy k: {e}")))?;
        let amp = parts[1]
            .parse::<f64>()
            .map_err(|e| Error::InvalidParams(format!("wavy amplitude: {e}")))?;
        if !(0.0..1.0).contains(&amp) {
            return Err(Error::InvalidParams(format!(
                "wavy amplitude must lie in [0, 1), got {amp}"
            )));
        }
        Ok(CurveKind::Wavy { k, amp })
    }
}

/// One smooth piece of a piecewise curve, parametrized by arclength on
/// `[0, length]`.
struct Piece {
    length: f64,
    at: Box<dyn Fn(f64) -> [f64; 2]>,
}

/// Samples `n` vertices uniformly by arclength. Piecewise curves place a
/// sample at every piece junction (corners of the square, arc/segment
/// junctions of the stadion).
pub fn generate<T: Real>(kind: CurveKind, n: usize) -> Result<PolyCurve<T>> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let pts: Vec<[f64; 2]> = match kind {
        CurveKind::Circle => (0..n)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect(),
        CurveKind::Square => sample_pieces(&square_pieces(), n),
        CurveKind::Stadion => sample_pieces(&stadion_pieces(), n),
        CurveKind::Wavy { k, amp } => wavy(k, amp, n),
    };
    PolyCurve::new(
        pts.into_iter()
            .map(|p| Vec3::planar(T::lit(p[0]), T::lit(p[1])))
            .collect(),
        2,
    )
}

fn segment(a: [f64; 2], b: [f64; 2]) -> Piece {
    let length = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    Piece {
        length,
        at: Box::new(move |s| {
            let t = s / length;
            [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
        }),
    }
}

fn unit_arc(center: [f64; 2], start_angle: f64) -> Piece {
    Piece {
        length: PI,
        at: Box::new(move |s| {
            let t = start_angle + s;
            [center[0] + t.cos(), center[1] + t.sin()]
        }),
    }
}

fn square_pieces() -> Vec<Piece> {
    vec![
        segment([1.0, -1.0], [1.0, 1.0]),
        segment([1.0, 1.0], [-1.0, 1.0]),
        segment([-1.0, 1.0], [-1.0, -1.0]),
        segment([-1.0, -1.0], [1.0, -1.0]),
    ]
}

fn stadion_pieces() -> Vec<Piece> {
    vec![
        unit_arc([0.0, 0.0], -PI / 2.0),
        segment([0.0, 1.0], [-PI, 1.0]),
        unit_arc([-PI, 0.0], PI / 2.0),
        segment([-PI, -1.0], [0.0, -1.0]),
    ]
}

/// Distributes `n` samples over the pieces in proportion to their length
/// (largest remainder), each piece sampled uniformly from its start.
fn sample_pieces(pieces: &[Piece], n: usize) -> Vec<[f64; 2]> {
    let total: f64 = pieces.iter().map(|p| p.length).sum();
    let exact: Vec<f64> = pieces
        .iter()
        .map(|p| n as f64 * p.length / total)
        .collect();
    let mut counts: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut rest = n - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if rest == 0 {
            break;
        }
        counts[i] += 1;
        rest -= 1;
    }
    let mut out = Vec::with_capacity(n);
    for (p, &m) in pieces.iter().zip(&counts) {
        for i in 0..m {
            out.push((p.at)(p.length * i as f64 / m as f64));
        }
    }
    out
}

fn wavy(k: u32, amp: f64, n: usize) -> Vec<[f64; 2]> {
    let k = k as f64;
    let radius = |t: f64| 1.0 + amp * (k * t).cos();
    let speed = |t: f64| {
        let r = radius(t);
        let dr = -amp * k * (k * t).sin();
        (r * r + dr * dr).sqrt()
    };
    // cumulative arclength on a fine θ-grid, 5-point Gauss-Legendre per cell
    let cells = (64 * n).max(8192);
    let h = 2.0 * PI / cells as f64;
    let (nodes, weights) = gauss_legendre5();
    let mut cum = Vec::with_capacity(cells + 1);
    cum.push(0.0);
    for c in 0..cells {
        let a = c as f64 * h;
        let seg: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| w * speed(a + 0.5 * h * (x + 1.0)))
            .sum::<f64>()
            * 0.5
            * h;
        cum.push(cum[c] + seg);
    }
    let length = cum[cells];
    (0..n)
        .map(|j| {
            let target = length * j as f64 / n as f64;
            let c = match cum.binary_search_by(|v| v.partial_cmp(&target).unwrap()) {
                Ok(i) => i.min(cells - 1),
                Err(i) => i - 1,
            };
            // Newton on s(θ) = target inside the cell
            let mut t = c as f64 * h;
            let mut s = cum[c];
            for _ in 0..20 {
                let step = (target - s) / speed(t);
                t += step;
                if step.abs() < 1e-16 {
                    break;
                }
                s = cum[c] + arclen(&speed, c as f64 * h, t);
            }
            let r = radius(t);
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

fn arclen(speed: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gauss_legendre5();
    let half = 0.5 * (b - a);
    nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| w * speed(a + half * (x + 1.0)))
        .sum::<f64>()
        * half
}

fn gauss_legendre5() -> ([f64; 5], [f64; 5]) {
    let a = (5.0f64 - 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
    let b = (5.0f64 + 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
    let wa = (322.0 + 13.0 * 70.0f64.sqrt()) / 900.0;
    let wb = (322.0 - 13.0 * 70.0f64.sqrt()) / 900.0;
    ([-b, -a, 0.0, a, b], [wb, wa, 128.0 / 225.0, wa, wb])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_arc_table;

    #[test]
    fn square_contains_corners() {
        let sq = generate::<f64>(CurveKind::Square, 8).unwrap();
        for c in [[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]] {
            assert!(sq.vertices().contains(&Vec3::planar(c[0], c[1])), "{c:?}");
        }
        // odd count still keeps all corners
        let sq = generate::<f64>(CurveKind::Square, 13).unwrap();
        assert_eq!(sq.len(), 13);
        assert!(sq.vertices().contains(&Vec3::planar(-1.0, -1.0)));
    }

    #[test]
    fn stadion_length_and_junctions() {
        let st = generate::<f64>(CurveKind::Stadion, 1000).unwrap();
        let l = build_arc_table(&st).length();
        assert!((l - 4.0 * PI).abs() < 1e-3, "{l}");
        let v = st.vertices();
        assert!(v.iter().any(|p| (p.x + PI).abs() < 1e-15 && p.y == 1.0));
        assert!(v.iter().any(|p| p.x.abs() < 1e-15 && p.y == -1.0));
    }

    #[test]
    fn circle_length_converges() {
        let c = generate::<f64>(CurveKind::Circle, 1000).unwrap();
        let l = build_arc_table(&c).length();
        assert!((l / (2.0 * PI) - 1.0).abs() < 1e-5);
        let c = generate::<f64>(CurveKind::Circle, 64).unwrap();
        let arc = build_arc_table(&c);
        let w0 = arc.weight(0);
        assert!(arc.weights().iter().all(|w| (w - w0).abs() < 1e-14));
    }

    #[test]
    fn wavy_is_sampled_by_arclength() {
        let w = generate::<f64>(CurveKind::WAVY_DEFAULT, 2000).unwrap();
        let edges: Vec<f64> = (0..w.len()).map(|j| w.edge_len(j)).collect();
        let mean = edges.iter().sum::<f64>() / edges.len() as f64;
        let spread = edges
            .iter()
            .map(|e| (e - mean).abs() / mean)
            .fold(0.0, f64::max);
        // chords of equal arcs differ only at third order in the spacing
        assert!(spread < 1e-3, "{spread}");
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("circle".parse::<CurveKind>().unwrap(), CurveKind::Circle);
        assert_eq!("Stadium".parse::<CurveKind>().unwrap(), CurveKind::Stadion);
        assert_eq!(
            "wavy(3,0.2)".parse::<CurveKind>().unwrap(),
            CurveKind::Wavy { k: 3, amp: 0.2 }
        );
        assert_eq!(
            "wavy:4:0.1".parse::<CurveKind>().unwrap(),
            CurveKind::Wavy { k: 4, amp: 0.1 }
        );
        assert!("hexagon".parse::<CurveKind>().is_err());
        assert!("wavy(3,1.5)".parse::<CurveKind>().is_err());
    }
}
