//! Orthographic sphere plot of a Majorana constellation.

use std::f64::consts::PI;
use std::fmt::Write;

use entangle_core::majorana::SpherePoint;

const SIZE: f64 = 400.0;
const RADIUS: f64 = 160.0;
/// Viewing direction: elevation above the equator and azimuth, in radians.
const ELEVATION: f64 = 0.35;
const AZIMUTH: f64 = 0.6;

/// Screen coordinates and depth (positive towards the viewer) of a unit vector.
fn project(v: [f64; 3]) -> (f64, f64, f64) {
    let (sa, ca) = AZIMUTH.sin_cos();
    let (se, ce) = ELEVATION.sin_cos();
    // Rotate about z by -azimuth, then tilt about the screen x axis.
    let x1 = v[0] * ca + v[1] * sa;
    let y1 = -v[0] * sa + v[1] * ca;
    let z1 = v[2];
    let depth = x1 * ce + z1 * se;
    let up = -x1 * se + z1 * ce;
    (SIZE / 2.0 + RADIUS * y1, SIZE / 2.0 - RADIUS * up, depth)
}

fn unit(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Polyline through points of a great or small circle, split by visibility.
fn circle(out: &mut String, points: impl Iterator<Item = [f64; 3]>) {
    let pts: Vec<(f64, f64, f64)> = points.map(project).collect();
    for w in pts.windows(2) {
        let front = w[0].2 >= 0.0 && w[1].2 >= 0.0;
        let style = if front { "stroke=\"#888\"" } else { "stroke=\"#ccc\" stroke-dasharray=\"3,3\"" };
        let _ = writeln!(
            out,
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" {style} stroke-width=\"1\"/>",
            w[0].0, w[0].1, w[1].0, w[1].1
        );
    }
}

pub fn render(stars: &[SpherePoint<f64>], title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let c = SIZE / 2.0;
    let _ = writeln!(
        out,
        "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{RADIUS}\" fill=\"#f4f7fb\" stroke=\"#333\" stroke-width=\"1.5\"/>"
    );

    let steps = 96;
    let ring =
        |f: &dyn Fn(f64) -> [f64; 3]| (0..=steps).map(|k| f(2.0 * PI * k as f64 / steps as f64)).collect::<Vec<_>>();
    circle(&mut out, ring(&|t| unit(PI / 2.0, t)).into_iter());
    circle(&mut out, ring(&|t| [t.sin(), 0.0, t.cos()]).into_iter());

    for (label, v) in [("z", [0.0, 0.0, 1.0]), ("-z", [0.0, 0.0, -1.0])] {
        let (x, y, _) = project(v);
        let _ = writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2\" fill=\"#333\"/>");
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">{label}</text>",
            x + 6.0,
            y - 6.0
        );
    }

    let mut order: Vec<&SpherePoint<f64>> = stars.iter().collect();
    order.sort_by(|a, b| project(unit(a.theta, a.phi)).2.total_cmp(&project(unit(b.theta, b.phi)).2));
    for s in order {
        let (x, y, depth) = project(unit(s.theta, s.phi));
        let r = 5.0 + 3.0 * (s.multiplicity as f64 - 1.0);
        let opacity = if depth >= 0.0 { 1.0 } else { 0.35 };
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r:.1}\" fill=\"#d62728\" fill-opacity=\"{opacity}\" stroke=\"#7f1010\" stroke-width=\"1\"/>"
        );
        if s.multiplicity > 1 {
            let _ = writeln!(
                out,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#7f1010\">×{}</text>",
                x + r + 3.0,
                y + 4.0,
                s.multiplicity
            );
        }
    }
    let _ = writeln!(
        out,
        "  <text x=\"10\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#333\">{}</text>",
        SIZE - 12.0,
        escape(title)
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
