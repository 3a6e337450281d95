//! Standalone SVG figures of rational plane scenes. Coordinates are
//! rounded to floats for drawing only; every item carries its exact
//! description as a `<title>` and in the legend.

use std::fmt::Write as _;

use inversive::{Cycle, FieldElement, FieldKind, PlanePoint, Space, VPoint};

use crate::scene::{NinePointFigure, Object, Scene};
use crate::CliError;

const WIDTH: f64 = 640.0;
const LEGEND_LINE: f64 = 16.0;

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    /// Axis-aligned ellipse; a circle when the form is standard.
    Ellipse { cx: f64, cy: f64, rx: f64, ry: f64 },
    /// A circle with no real points, drawn as a dashed marker at its center.
    Imaginary { cx: f64, cy: f64 },
    /// `a x + b y + c = 0`.
    Line { a: f64, b: f64, c: f64 },
    Segment { from: (f64, f64), to: (f64, f64) },
    Dot { x: f64, y: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub item: Item,
    pub label: String,
    pub exact: String,
}

/// Items plus legend lines for objects that cannot be drawn.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Figure {
    pub entries: Vec<Entry>,
    pub notes: Vec<String>,
}

fn approx(x: &FieldElement) -> f64 {
    x.to_f64().expect("rational coordinates")
}

fn check_space(space: &Space) -> Result<Vec<f64>, CliError> {
    if space.field().kind() != FieldKind::Rationals {
        return Err(CliError::UnrenderableField(space.field().to_string()));
    }
    let d: Vec<f64> = space.diag().iter().map(approx).collect();
    let definite = d.iter().all(|&x| x > 0.0) || d.iter().all(|&x| x < 0.0);
    if space.dim() != 2 || !definite {
        return Err(CliError::UnrenderableSpace(space.to_string()));
    }
    Ok(d)
}

impl Figure {
    pub fn from_scene(scene: &Scene) -> Result<Figure, CliError> {
        let diag = check_space(&scene.space)?;
        let mut fig = Figure::default();
        for (name, obj) in &scene.objects {
            match obj {
                Object::Cycle(c) => fig.add_cycle(name, c, &diag),
                Object::Point(VPoint::Infinity) => fig.notes.push(format!("{name} = inf (not drawn)")),
                Object::Point(VPoint::Finite(v)) => fig.entries.push(Entry {
                    item: Item::Dot { x: approx(&v.coords()[0]), y: approx(&v.coords()[1]) },
                    label: name.clone(),
                    exact: format!("{name} = {v}"),
                }),
            }
        }
        for f in &scene.figures {
            fig.add_ninepoint(f)?;
        }
        Ok(fig)
    }

    pub fn from_ninepoint(f: &NinePointFigure) -> Result<Figure, CliError> {
        let mut fig = Figure::default();
        fig.add_ninepoint(f)?;
        Ok(fig)
    }

    fn add_cycle(&mut self, name: &str, c: &Cycle, diag: &[f64]) {
        let exact = format!("{name} = {c}");
        if c.is_line() {
            let b = c.b().coords();
            // b.X uses the form, so the normal is (d1 b1, d2 b2)
            self.entries.push(Entry {
                item: Item::Line { a: diag[0] * approx(&b[0]), b: diag[1] * approx(&b[1]), c: approx(c.c()) },
                label: name.to_string(),
                exact,
            });
            return;
        }
        if !c.is_circle() {
            self.notes.push(format!("{exact} (constant, not drawn)"));
            return;
        }
        let cs = c.center_and_size().expect("a circle has a center");
        let (cx, cy) = (approx(&cs.center.coords()[0]), approx(&cs.center.coords()[1]));
        let s = approx(&cs.size);
        let exact = format!("{exact}: center {} size {}", cs.center, cs.size);
        let item = if cs.size.is_zero() {
            Item::Dot { x: cx, y: cy }
        } else if s / diag[0] > 0.0 {
            Item::Ellipse { cx, cy, rx: (s / diag[0]).sqrt(), ry: (s / diag[1]).sqrt() }
        } else {
            Item::Imaginary { cx, cy }
        };
        self.entries.push(Entry { item, label: name.to_string(), exact });
    }

    fn add_ninepoint(&mut self, f: &NinePointFigure) -> Result<(), CliError> {
        let field = f.config.field();
        if field.kind() != FieldKind::Rationals {
            return Err(CliError::UnrenderableField(field.to_string()));
        }
        let xy = |p: &PlanePoint| (approx(&p.u), approx(&p.v));
        let cfg = &f.config;
        for (a, b, label) in [(&cfg.m, &cfg.n, "MN"), (&cfg.n, &cfg.p, "NP"), (&cfg.p, &cfg.m, "PM")] {
            self.entries.push(Entry {
                item: Item::Segment { from: xy(a), to: xy(b) },
                label: String::new(),
                exact: format!("side {label}"),
            });
        }
        for (p, label) in [(&cfg.m, "M"), (&cfg.n, "N"), (&cfg.p, "P"), (&cfg.t, "T")] {
            let (x, y) = xy(p);
            let exact = if label == "T" { format!("orthocenter T = {p}") } else { format!("{label} = {p}") };
            self.entries.push(Entry { item: Item::Dot { x, y }, label: label.into(), exact });
        }
        let cycle = &f.circle.cycle;
        let cs = cycle.center_and_size().map_err(|e| CliError::domain("nine-point circle", e))?;
        let r = approx(&cs.size).sqrt();
        let (cx, cy) = (approx(&cs.center.coords()[0]), approx(&cs.center.coords()[1]));
        self.entries.push(Entry {
            item: Item::Ellipse { cx, cy, rx: r, ry: r },
            label: "nine-point circle".into(),
            exact: format!("nine-point circle {cycle}: center {} size {}", cs.center, cs.size),
        });
        for (i, p) in f.circle.points.affine_points().iter().enumerate() {
            let (x, y) = xy(p);
            self.entries.push(Entry { item: Item::Dot { x, y }, label: String::new(), exact: format!("point {} = {p}", i + 1) });
        }
        if f.circle.points.has_parallel_pair() {
            self.notes.push("a diagonal pair is parallel; its point is at infinity".into());
        }
        Ok(())
    }

    /// World-coordinate bounds of everything with a position.
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for e in &self.entries {
            match e.item {
                Item::Ellipse { cx, cy, rx, ry } => {
                    xs.extend([cx - rx, cx + rx]);
                    ys.extend([cy - ry, cy + ry]);
                }
                Item::Imaginary { cx, cy } | Item::Dot { x: cx, y: cy } => {
                    xs.push(cx);
                    ys.push(cy);
                }
                Item::Segment { from, to } => {
                    xs.extend([from.0, to.0]);
                    ys.extend([from.1, to.1]);
                }
                Item::Line { .. } => {}
            }
        }
        let lo = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let (mut x0, mut x1, mut y0, mut y1) = if xs.is_empty() {
            (-5.0, 5.0, -5.0, 5.0)
        } else {
            (lo(&xs), hi(&xs), lo(&ys), hi(&ys))
        };
        // square view with a margin
        let span = (x1 - x0).max(y1 - y0).max(1.0) * 1.2;
        let (mx, my) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        x0 = mx - span / 2.0;
        x1 = mx + span / 2.0;
        y0 = my - span / 2.0;
        y1 = my + span / 2.0;
        (x0, x1, y0, y1)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let k = WIDTH / (x1 - x0);
        let sx = |x: f64| (x - x0) * k;
        let sy = |y: f64| (y1 - y) * k;
        let legend: Vec<&str> = self.entries.iter().map(|e| e.exact.as_str()).chain(self.notes.iter().map(String::as_str)).collect();
        let height = WIDTH + 12.0 + LEGEND_LINE * legend.len() as f64;
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
        )
        .unwrap();
        writeln!(out, r##"<rect width="{WIDTH}" height="{WIDTH}" fill="white" stroke="#ccc"/>"##).unwrap();
        for e in &self.entries {
            let title = format!("<title>{}</title>", escape(&e.exact));
            match e.item {
                Item::Ellipse { cx, cy, rx, ry } if rx == ry => writeln!(
                    out,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="steelblue" stroke-width="1.5">{title}</circle>"#,
                    sx(cx), sy(cy), rx * k
                ),
                Item::Ellipse { cx, cy, rx, ry } => writeln!(
                    out,
                    r#"<ellipse cx="{:.3}" cy="{:.3}" rx="{:.3}" ry="{:.3}" fill="none" stroke="steelblue" stroke-width="1.5">{title}</ellipse>"#,
                    sx(cx), sy(cy), rx * k, ry * k
                ),
                Item::Imaginary { cx, cy } => writeln!(
                    out,
                    r#"<g><circle cx="{:.3}" cy="{:.3}" r="10" fill="none" stroke="gray" stroke-dasharray="4 3"/><text x="{:.3}" y="{:.3}" font-size="11" fill="gray">imaginary circle</text>{title}</g>"#,
                    sx(cx), sy(cy), sx(cx) + 13.0, sy(cy) + 4.0
                ),
                Item::Line { a, b, c } => match clip_line(a, b, c, (x0, x1, y0, y1)) {
                    Some((p, q)) => writeln!(
                        out,
                        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="darkgreen" stroke-width="1.5">{title}</line>"#,
                        sx(p.0), sy(p.1), sx(q.0), sy(q.1)
                    ),
                    None => Ok(()),
                },
                Item::Segment { from, to } => writeln!(
                    out,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="1">{title}</line>"#,
                    sx(from.0), sy(from.1), sx(to.0), sy(to.1)
                ),
                Item::Dot { x, y } => writeln!(
                    out,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="crimson">{title}</circle>"#,
                    sx(x), sy(y)
                ),
            }
            .unwrap();
            if !e.label.is_empty() {
                if let Some((x, y)) = anchor(&e.item) {
                    writeln!(out, r#"<text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#, sx(x) + 5.0, sy(y) - 5.0, escape(&e.label)).unwrap();
                }
            }
        }
        for (i, line) in legend.iter().enumerate() {
            let y = WIDTH + 12.0 + LEGEND_LINE * (i as f64 + 0.5);
            writeln!(out, r#"<text x="6" y="{y:.1}" font-family="monospace" font-size="11">{}</text>"#, escape(line)).unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

fn anchor(item: &Item) -> Option<(f64, f64)> {
    match *item {
        Item::Dot { x, y } => Some((x, y)),
        Item::Ellipse { cx, cy, ry, .. } => Some((cx, cy + ry)),
        _ => None,
    }
}

/// The part of `a x + b y + c = 0` inside the box, as two endpoints.
fn clip_line(a: f64, b: f64, c: f64, (x0, x1, y0, y1): (f64, f64, f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let mut pts = Vec::new();
    if b != 0.0 {
        for x in [x0, x1] {
            let y = -(a * x + c) / b;
            if (y0..=y1).contains(&y) {
                pts.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [y0, y1] {
            let x = -(b * y + c) / a;
            if (x0..=x1).contains(&x) {
                pts.push((x, y));
            }
        }
    }
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    match pts.as_slice() {
        [p, .., q] => Some((*p, *q)),
        _ => None,
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::run_scene;

    #[test]
    fn clipping() {
        let (p, q) = clip_line(1.0, 0.0, -1.0, (-2.0, 2.0, -2.0, 2.0)).unwrap();
        assert_eq!((p.0, q.0), (1.0, 1.0));
        assert!(clip_line(1.0, 0.0, -5.0, (-2.0, 2.0, -2.0, 2.0)).is_none());
    }

    #[test]
    fn imaginary_circle_is_annotated() {
        let scene = run_scene("cycle c = 1 | 0 0 | 1").unwrap();
        let fig = Figure::from_scene(&scene).unwrap();
        assert!(matches!(fig.entries[0].item, Item::Imaginary { .. }));
        let svg = fig.to_svg();
        assert!(svg.contains("imaginary circle") && svg.contains("stroke-dasharray"));
    }

    #[test]
    fn finite_fields_are_refused() {
        let scene = run_scene("field Fp:7\ncycle c = 1 | 0 0 | 1").unwrap();
        assert!(matches!(Figure::from_scene(&scene), Err(CliError::UnrenderableField(_))));
    }
}
