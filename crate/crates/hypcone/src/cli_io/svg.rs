use std::f64::consts::FRAC_PI_2;
use std::fmt::Write;

use num_complex::Complex64;

use crate::isometries::Isometry;
use crate::plane_geometry::{direction, interior_angle, BoundaryPoint, GeodesicPolygon, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Model {
    #[default]
    Disk,
    Halfplane,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvgOptions {
    pub model: Model,
    pub arrows: bool,
    /// Width of the picture in pixels.
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { model: Model::Disk, arrows: false, size: 800.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderDomain {
    pub label: String,
    pub polygon: GeodesicPolygon,
    pub right_angle_markers: bool,
}

/// Arrow from one side to its partner, each given as `(domain, side)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SidePair {
    pub label: String,
    pub from: (usize, usize),
    pub to: (usize, usize),
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const MATCH_TOL: f64 = 1e-7;

fn same_vertex(a: Vertex, b: Vertex) -> bool {
    match (a, b) {
        (Vertex::Ideal(BoundaryPoint::Infinity), Vertex::Ideal(BoundaryPoint::Infinity)) => true,
        (Vertex::Ideal(x), Vertex::Ideal(y)) => x.approx_eq(y, MATCH_TOL),
        (Vertex::Finite(_), Vertex::Finite(_)) => (a.to_disk() - b.to_disk()).norm() < MATCH_TOL,
        _ => false,
    }
}

/// Side pairs `(element, from, to)` where the element carries side `from`
/// onto side `to` with its orientation reversed.
pub fn detect_pairings(polygon: &GeodesicPolygon, elements: &[Isometry]) -> Vec<(usize, usize, usize)> {
    let v = &polygon.vertices;
    let n = v.len();
    let mut out = Vec::new();
    for (e, a) in elements.iter().enumerate() {
        for i in 0..n {
            let (p, q) = (a.apply_vertex(v[i]), a.apply_vertex(v[(i + 1) % n]));
            if let Some(j) = (0..n).find(|&j| same_vertex(p, v[(j + 1) % n]) && same_vertex(q, v[j])) {
                out.push((e, i, j));
            }
        }
    }
    out
}

/// Picture coordinates (y up) of a vertex, with `∞` clipped to `top` in the
/// half-plane.
struct Frame {
    model: Model,
    scale: f64,
    origin: (f64, f64),
    top: f64,
}

impl Frame {
    fn new(domains: &[RenderDomain], opts: &SvgOptions) -> Self {
        let margin = 20.0;
        match opts.model {
            Model::Disk => {
                let r = opts.size / 2.0 - margin;
                Frame { model: Model::Disk, scale: r, origin: (opts.size / 2.0, opts.size / 2.0), top: 1.0 }
            }
            Model::Halfplane => {
                let (mut lo, mut hi, mut top) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
                for v in domains.iter().flat_map(|d| d.polygon.vertices.iter()) {
                    match v {
                        Vertex::Finite(p) => {
                            lo = lo.min(p.x() - p.y());
                            hi = hi.max(p.x() + p.y());
                            top = top.max(p.y());
                        }
                        Vertex::Ideal(BoundaryPoint::Real(x)) => {
                            lo = lo.min(*x);
                            hi = hi.max(*x);
                        }
                        Vertex::Ideal(BoundaryPoint::Infinity) => {}
                    }
                }
                if !lo.is_finite() {
                    (lo, hi) = (-1.0, 1.0);
                }
                let width = (hi - lo).max(1e-9);
                let top = (1.5 * top).max(width / 2.0);
                let scale = (opts.size - 2.0 * margin) / width;
                Frame { model: Model::Halfplane, scale, origin: (margin - lo * scale, margin + top * scale), top }
            }
        }
    }

    fn height(&self, opts: &SvgOptions) -> f64 {
        match self.model {
            Model::Disk => opts.size,
            Model::Halfplane => self.top * self.scale + 40.0,
        }
    }

    fn picture(&self, v: Vertex) -> Complex64 {
        match (self.model, v) {
            (Model::Disk, v) => v.to_disk(),
            (Model::Halfplane, Vertex::Finite(p)) => p.z(),
            (Model::Halfplane, Vertex::Ideal(BoundaryPoint::Real(x))) => Complex64::new(x, 0.0),
            (Model::Halfplane, Vertex::Ideal(BoundaryPoint::Infinity)) => Complex64::new(f64::NAN, self.top),
        }
    }

    fn px(&self, w: Complex64) -> (f64, f64) {
        (self.origin.0 + self.scale * w.re, self.origin.1 - self.scale * w.im)
    }

    /// Picture direction of the geodesic leaving `p` toward `q`.
    fn heading(&self, p: Vertex, q: Vertex) -> Option<f64> {
        let Vertex::Finite(hp) = p else { return None };
        let a = direction(hp, q).ok()?;
        Some(match self.model {
            Model::Halfplane => a,
            // Argument of the derivative of z ↦ (z - i)/(z + i).
            Model::Disk => a + FRAC_PI_2 - 2.0 * (hp.z() + Complex64::i()).arg(),
        })
    }
}

enum Arc {
    Line(Complex64, Complex64),
    Circle { from: Complex64, to: Complex64, center: Complex64, radius: f64 },
}

impl Arc {
    fn midpoint(&self) -> Complex64 {
        match *self {
            Arc::Line(a, b) => (a + b) / 2.0,
            Arc::Circle { from, to, center, radius } => {
                let m = (from + to) / 2.0 - center;
                center + m / m.norm() * radius
            }
        }
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn side_arc(frame: &Frame, a: Vertex, b: Vertex) -> Arc {
    let (pa, pb) = (frame.picture(a), frame.picture(b));
    match frame.model {
        Model::Disk => {
            let det = cross(pa, pb);
            if det.abs() < 1e-12 {
                return Arc::Line(pa, pb);
            }
            // Circle orthogonal to the unit circle: 2⟨w, c⟩ = 1 + |w|².
            let (ra, rb) = ((1.0 + pa.norm_sqr()) / 2.0, (1.0 + pb.norm_sqr()) / 2.0);
            let center = Complex64::new((ra * pb.im - rb * pa.im) / det, (pa.re * rb - pb.re * ra) / det);
            Arc::Circle { from: pa, to: pb, center, radius: (pa - center).norm() }
        }
        Model::Halfplane => {
            let (pa, pb) = match (pa.re.is_nan(), pb.re.is_nan()) {
                (true, false) => (Complex64::new(pb.re, frame.top), pb),
                (false, true) => (pa, Complex64::new(pa.re, frame.top)),
                _ => (pa, pb),
            };
            if (pa.re - pb.re).abs() < 1e-12 * (1.0 + pa.re.abs()) {
                return Arc::Line(pa, pb);
            }
            let c = (pa.norm_sqr() - pb.norm_sqr()) / (2.0 * (pa.re - pb.re));
            let center = Complex64::new(c, 0.0);
            Arc::Circle { from: pa, to: pb, center, radius: (pa - center).norm() }
        }
    }
}

fn path_data(frame: &Frame, arc: &Arc) -> String {
    match *arc {
        Arc::Line(a, b) => {
            let ((x0, y0), (x1, y1)) = (frame.px(a), frame.px(b));
            format!("M {x0:.3} {y0:.3} L {x1:.3} {y1:.3}")
        }
        Arc::Circle { from, to, center, radius } => {
            let ((x0, y0), (x1, y1)) = (frame.px(from), frame.px(to));
            let r = radius * frame.scale;
            // The picture is flipped vertically, so a counterclockwise arc
            // uses the negative sweep.
            let sweep = if cross(from - center, to - center) > 0.0 { 0 } else { 1 };
            format!("M {x0:.3} {y0:.3} A {r:.3} {r:.3} 0 0 {sweep} {x1:.3} {y1:.3}")
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG 1.1 picture of the domains: one `path` per polygon side, in domain
/// then side order. Pairing arrows are drawn only when `opts.arrows` is set.
pub fn render_svg(domains: &[RenderDomain], pairs: &[SidePair], opts: &SvgOptions) -> String {
    let frame = Frame::new(domains, opts);
    let (w, h) = (opts.size, frame.height(opts));
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    if opts.arrows {
        s.push_str(concat!(
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
            r##"<path d="M 0 0 L 10 5 L 0 10 z" fill="#444"/></marker></defs>"##,
            "\n"
        ));
    }
    match frame.model {
        Model::Disk => {
            let (cx, cy) = frame.origin;
            let _ = writeln!(
                s,
                r#"<circle class="boundary" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="black"/>"#,
                frame.scale
            );
        }
        Model::Halfplane => {
            let y = frame.origin.1;
            let _ = writeln!(s, r#"<line class="boundary" x1="0" y1="{y:.3}" x2="{w:.0}" y2="{y:.3}" stroke="black"/>"#);
        }
    }
    let mut all_arcs = Vec::with_capacity(domains.len());
    for (d, dom) in domains.iter().enumerate() {
        let colour = PALETTE[d % PALETTE.len()];
        let v = &dom.polygon.vertices;
        let n = v.len();
        let _ = writeln!(s, r#"<g class="domain" id="domain-{d}" data-label="{}" stroke="{colour}">"#, escape(&dom.label));
        let arcs: Vec<Arc> = (0..n).map(|i| side_arc(&frame, v[i], v[(i + 1) % n])).collect();
        for (i, arc) in arcs.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<path class="side" data-side="{i}" d="{}" fill="none" stroke-width="2"/>"#,
                path_data(&frame, arc)
            );
        }
        if dom.right_angle_markers {
            for i in 0..n {
                let (prev, cur, next) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                let Vertex::Finite(p) = cur else { continue };
                let right = interior_angle(prev, p, next).is_ok_and(|a| (a - FRAC_PI_2).abs() < 1e-6);
                let (Some(a1), Some(a2), true) = (frame.heading(cur, prev), frame.heading(cur, next), right) else {
                    continue;
                };
                let o = frame.picture(cur);
                let size = 12.0 / frame.scale;
                let (u1, u2) = (Complex64::from_polar(size, a1), Complex64::from_polar(size, a2));
                let pts: Vec<String> = [o + u1, o + u1 + u2, o + u2]
                    .iter()
                    .map(|&z| {
                        let (x, y) = frame.px(z);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polyline class="right-angle" data-vertex="{i}" points="{}" fill="none" stroke-width="1"/>"#,
                    pts.join(" ")
                );
            }
        }
        s.push_str("</g>\n");
        all_arcs.push(arcs);
    }
    if opts.arrows && !pairs.is_empty() {
        s.push_str("<g class=\"pairings\">\n");
        for pair in pairs {
            let side = |(d, i): (usize, usize)| all_arcs.get(d).and_then(|a: &Vec<Arc>| a.get(i));
            let (Some(a), Some(b)) = (side(pair.from), side(pair.to)) else { continue };
            let ((x0, y0), (x1, y1)) = (frame.px(a.midpoint()), frame.px(b.midpoint()));
            let _ = writeln!(
                s,
                r##"<line class="pairing" data-element="{}" x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#444" stroke-dasharray="4 3" marker-end="url(#arrow)"/>"##,
                escape(&pair.label)
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
