//! SVG figures of curves and coverage traces.
//!
//! Output is deterministic: fixed layout, fixed element order and six
//! decimal places, so reruns are byte-identical.

use std::fmt::Write as _;

use crate::corner::{Classification, ManeuverGroup};
use crate::dyadic::ExactPoint;
use crate::error::Result;
use crate::hilbert::GridCell;
use crate::io::export::MapVariant;
use crate::trace::{Event, Trace};
use crate::world::World;

const MARGIN: f64 = 20.0;
const SIZE: f64 = 400.0;

struct Canvas {
    body: String,
}

impl Canvas {
    fn new(caption: &str) -> Canvas {
        let total = SIZE + 2.0 * MARGIN;
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total:.0}" height="{total:.0}" viewBox="0 0 {total:.0} {total:.0}">"#
        );
        let _ = writeln!(body, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            body,
            r#"<text x="{MARGIN:.0}" y="14" font-family="sans-serif" font-size="11">{}</text>"#,
            escape(caption)
        );
        Canvas { body }
    }

    fn x(v: f64) -> f64 {
        MARGIN + v * SIZE
    }

    fn y(v: f64) -> f64 {
        MARGIN + (1.0 - v) * SIZE
    }

    fn point(p: ExactPoint) -> (f64, f64) {
        let [x, y] = p.to_f64();
        (Self::x(x), Self::y(y))
    }

    fn cell_rect(&mut self, cell: GridCell, style: &str) {
        let (lo, hi) = cell.corners();
        let (x0, y1) = Self::point(lo);
        let (x1, y0) = Self::point(hi);
        let _ = writeln!(
            self.body,
            r#"<rect x="{x0:.6}" y="{y0:.6}" width="{:.6}" height="{:.6}" {style}/>"#,
            x1 - x0,
            y1 - y0
        );
    }

    fn grid(&mut self, order: u32) {
        let n = 1u64 << order;
        let _ = writeln!(self.body, r##"<g stroke="#d0d0d0" stroke-width="0.5">"##);
        for k in 0..=n {
            let v = k as f64 / n as f64;
            let _ = writeln!(
                self.body,
                r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
                Self::x(v),
                Self::y(0.0),
                Self::x(v),
                Self::y(1.0)
            );
            let _ = writeln!(
                self.body,
                r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
                Self::x(0.0),
                Self::y(v),
                Self::x(1.0),
                Self::y(v)
            );
        }
        let _ = writeln!(self.body, "</g>");
    }

    fn polyline(&mut self, points: &[ExactPoint], style: &str) {
        let coords: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = Self::point(p);
                format!("{x:.6},{y:.6}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" {style}/>"#,
            coords.join(" ")
        );
    }

    fn dot(&mut self, p: ExactPoint, r: f64, fill: &str) {
        let (x, y) = Self::point(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.6}" cy="{y:.6}" r="{r:.1}" fill="{fill}"/>"#
        );
    }

    fn label(&mut self, p: ExactPoint, text: &str) {
        let (x, y) = Self::point(p);
        let _ = writeln!(
            self.body,
            r##"<text x="{x:.6}" y="{y:.6}" font-family="sans-serif" font-size="9" text-anchor="middle" fill="#b00000">{}</text>"##,
            escape(text)
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// The order-`order` curve drawn through the points of `variant`.
pub fn curve_svg(order: u32, variant: MapVariant) -> Result<String> {
    let name = match variant {
        MapVariant::Standard => "standard map",
        MapVariant::Center => "center map",
    };
    let points = variant.points(order)?;
    let mut c = Canvas::new(&format!("order {order}, {name}"));
    c.grid(order);
    c.polyline(&points, r##"stroke="#1f4e99" stroke-width="1.5""##);
    if let (Some(&first), Some(&last)) = (points.first(), points.last()) {
        c.dot(first, 3.0, "#1f4e99");
        c.dot(last, 3.0, "#1f4e99");
    }
    Ok(c.finish())
}

fn group_name(g: ManeuverGroup) -> &'static str {
    match g {
        ManeuverGroup::SkipForward => "skip",
        ManeuverGroup::BacktrackThree => "backtrack",
        ManeuverGroup::DetourAhead => "detour",
        ManeuverGroup::NonCornerSkip => "skip",
    }
}

/// Grid (or coverage-tree leaves), blocked cells, the path and a marker
/// with the chosen maneuver at each obstacle.
pub fn trace_svg(world: &World, trace: &Trace, caption: &str) -> Result<String> {
    let mut c = Canvas::new(caption);
    if world.resolution().is_some() {
        let _ = writeln!(
            c.body,
            r##"<g fill="none" stroke="#d0d0d0" stroke-width="0.5">"##
        );
        for leaf in world.leaves()? {
            c.cell_rect(leaf.cell(), "");
        }
        let _ = writeln!(c.body, "</g>");
    } else {
        c.grid(world.order());
    }
    for o in world.obstacles() {
        c.cell_rect(
            o.cell(),
            r##"fill="#808080" stroke="#404040" stroke-width="0.5""##,
        );
    }
    c.polyline(
        &trace.centers(),
        r##"stroke="#1f4e99" stroke-width="1.5" stroke-linejoin="round""##,
    );
    if let Some(first) = trace.steps.first() {
        c.dot(first.cell.center(), 3.0, "#1f4e99");
    }
    for s in &trace.steps {
        if s.event == Event::Revisit {
            c.dot(s.cell.center(), 2.5, "#e08000");
        }
    }
    for m in &trace.maneuvers {
        c.dot(m.from.cell().center(), 3.0, "#b00000");
        let text = match m.classification {
            Classification::Corner(k) => {
                let (e, q, mm) = k.tuple();
                format!("({e},{q},{mm}) {}", group_name(m.group))
            }
            _ => group_name(m.group).to_string(),
        };
        c.label(m.obstacle.cell().center(), &text);
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::simulate;

    #[test]
    fn curve_figure_is_stable() {
        let a = curve_svg(2, MapVariant::Center).unwrap();
        assert_eq!(a, curve_svg(2, MapVariant::Center).unwrap());
        assert!(a.starts_with("<svg"));
        assert!(a.contains("70.000000,370.000000"));
    }

    #[test]
    fn trace_figure_marks_the_obstacle() {
        let world = World::new(3, ["110".parse().unwrap()]).unwrap();
        let trace = simulate(&world).unwrap();
        let svg = trace_svg(&world, &trace, "n=3").unwrap();
        assert!(svg.contains("(0,1,0) detour"));
        assert_eq!(svg.matches("fill=\"#808080\"").count(), 1);
    }
}
