//! Static SVG scenes on a fixed 1000x1000 canvas, unit circle of radius 450
//! centred at (500, 500). Exact angles become floats only when a coordinate
//! is written.

use std::f64::consts::TAU;
use std::fmt::Write;

use aeroplane_core::angle::ratio_to_f64;
use aeroplane_core::coding::{letter_upper_arc, Letter};
use aeroplane_core::exchange::Trace;
use aeroplane_core::Lamination;

pub const SIZE: f64 = 1000.0;
pub const CENTER: f64 = 500.0;
pub const RADIUS: f64 = 450.0;

fn point(turns: f64, r: f64) -> (f64, f64) {
    (CENTER + r * (TAU * turns).cos(), CENTER - r * (TAU * turns).sin())
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn new(title: &str) -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
        );
        let _ = writeln!(body, "<title>{}</title>", escape(title));
        let _ = writeln!(
            body,
            r#"<style>.circle{{fill:none;stroke:#222;stroke-width:1.5}} .chord{{stroke:#1f4e99;stroke-width:0.6;fill:none}} .boundary{{stroke:#999;stroke-dasharray:6 4}} .label{{font:16px sans-serif;text-anchor:middle}} .row{{font:10px monospace}} .exchange{{fill:none;stroke:#b03a2e;stroke-width:1.2}} .disc{{fill:#b03a2e}}</style>"#
        );
        let _ = writeln!(
            body,
            r#"<circle class="circle" cx="{CENTER}" cy="{CENTER}" r="{RADIUS}"/>"#
        );
        Canvas { body }
    }

    fn chord(&mut self, class: &str, s: f64, t: f64) {
        let (x1, y1) = point(s, RADIUS);
        let (x2, y2) = point(t, RADIUS);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }

    fn text(&mut self, class: &str, x: f64, y: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text class="{class}" x="{x:.1}" y="{y:.1}">{}</text>"#,
            escape(s)
        );
    }

    fn open_group(&mut self, class: &str) {
        let _ = writeln!(self.body, r#"<g class="{class}">"#);
    }

    fn close_group(&mut self) {
        self.body.push_str("</g>\n");
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One `<line>` per leaf, grouped and classed by pullback depth
/// (`layer-0` is the minor leaf).
pub fn lamination(lam: &Lamination) -> String {
    let mut c = Canvas::new(&format!("pullback of {} to depth {}", lam.minor(), lam.depth()));
    for d in 0..=lam.depth() {
        c.open_group(&format!("layer layer-{d}"));
        for ch in lam.layer(d) {
            let (s, t) = (lam.angle(ch.a).to_f64(), lam.angle(ch.b).to_f64());
            c.chord(&format!("chord layer-{d}"), s, t);
        }
        c.close_group();
    }
    c.finish()
}

/// The six vertical chords through `r/14` and `-r/14`, and a label in each
/// upper region.
pub fn regions() -> String {
    let mut c = Canvas::new("regions of the circle");
    c.open_group("boundaries");
    for r in 1..=6 {
        let t = r as f64 / 14.0;
        c.chord("boundary", t, 1.0 - t);
    }
    c.close_group();
    c.open_group("labels");
    for l in [Letter::R1, Letter::R2, Letter::R3, Letter::C, Letter::L3, Letter::L2, Letter::L1] {
        let mid = letter_upper_arc(if l == Letter::C { Letter::UC } else { l }).midpoint();
        let (x, y) = point(ratio_to_f64(&mid), RADIUS * 0.8);
        c.text("label", x, y, &l.to_string());
    }
    c.close_group();
    c.finish()
}

/// The component meeting O(y) at each step, drawn as two attach points joined
/// outside the disc, with the rows listed in step order in the corner.
pub fn scenario(trace: &Trace) -> String {
    let mut c = Canvas::new(&format!("exchange trace, scenario {}", trace.scenario));
    c.open_group("components");
    for rec in &trace.steps {
        for comp in &rec.active {
            let s = ratio_to_f64(&comp.left.attach);
            let t = ratio_to_f64(&comp.right.attach);
            let mid = s + ratio_to_f64(&comp.sweep) / 2.0;
            let (x1, y1) = point(s, RADIUS);
            let (x2, y2) = point(t, RADIUS);
            let (cx, cy) = point(mid, RADIUS * 1.08);
            let _ = writeln!(
                c.body,
                r#"<path class="exchange step-{}" d="M {x1:.3} {y1:.3} Q {cx:.3} {cy:.3} {x2:.3} {y2:.3}"/>"#,
                rec.step
            );
            for (x, y) in [(x1, y1), (x2, y2)] {
                let _ = writeln!(c.body, r#"<circle class="disc" cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
            }
        }
    }
    c.close_group();
    c.open_group("rows");
    let mut y = 16.0;
    for rec in &trace.steps {
        for comp in &rec.active {
            c.text("row", 6.0, y, &format!("{:>2}: {}", rec.step, comp));
            y += 12.0;
        }
    }
    c.close_group();
    c.finish()
}
