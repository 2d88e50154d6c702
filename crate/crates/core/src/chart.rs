//! Text and SVG charts of homotopy tables.
//!
//! One dot per F3 basis element. Rows are the filtration with β-powers
//! removed, so β-multiplication is horizontal and α-multiplication
//! diagonal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::graded::{Gen, Monomial, Window};
use crate::specseq::{run_target, EdgeKind, HomotopyTable, SpecSeqError, Target};

pub const STEM_PITCH: i32 = 12;
pub const ROW_PITCH: i32 = 14;
/// Dots drawn per stem in text charts before an overflow numeral is used.
pub const TEXT_CAP: usize = 9;

#[derive(Debug, thiserror::Error)]
pub enum ChartError {
    #[error("chart range {lo}..{hi} exceeds the table range {have_lo}..{have_hi}")]
    Range { lo: i32, hi: i32, have_lo: i32, have_hi: i32 },
    #[error("unknown chart `{0}`")]
    Unknown(String),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Svg,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartSpec {
    pub title: String,
    pub table: HomotopyTable,
    pub lo: i32,
    pub hi: i32,
    pub bold: Option<(i32, i32)>,
    /// (class label, display text).
    pub labels: Vec<(String, String)>,
}

impl ChartSpec {
    pub fn new(title: &str, table: HomotopyTable) -> ChartSpec {
        let (lo, hi) = table.range;
        ChartSpec { title: title.into(), table, lo, hi, bold: None, labels: Vec::new() }
    }
}

fn row_of(s: i32, m: Option<Monomial>) -> i32 {
    s - 2 * m.map_or(0, |m| m.exp(Gen::Beta))
}

pub fn render(spec: &ChartSpec, format: Format) -> Result<String, ChartError> {
    let (have_lo, have_hi) = spec.table.range;
    if spec.lo < have_lo || spec.hi > have_hi {
        return Err(ChartError::Range { lo: spec.lo, hi: spec.hi, have_lo, have_hi });
    }
    Ok(match format {
        Format::Text => render_text(spec),
        Format::Svg => render_svg(spec),
    })
}

fn dims(spec: &ChartSpec) -> BTreeMap<i32, usize> {
    (spec.lo..=spec.hi).map(|n| (n, spec.table.dim(n))).collect()
}

fn render_text(spec: &ChartSpec) -> String {
    let dims = dims(spec);
    let mut out = String::new();
    let _ = writeln!(out, "# {}  stems {}..{}", spec.title, spec.lo, spec.hi);
    let rows = dims.values().copied().max().unwrap_or(0).clamp(1, TEXT_CAP);
    for level in (1..=rows).rev() {
        let line: String = dims.values().map(|&d| if d >= level { 'o' } else { ' ' }).collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let axis: String = dims
        .keys()
        .map(|&n| match spec.bold {
            Some((a, b)) if (a..=b).contains(&n) => '=',
            _ if n.rem_euclid(10) == 0 => '+',
            _ => '-',
        })
        .collect();
    out.push_str(&axis);
    out.push('\n');
    let mut ticks = String::new();
    for &n in dims.keys() {
        if n.rem_euclid(10) == 0 && ticks.chars().count() <= (n - spec.lo) as usize {
            let pad = (n - spec.lo) as usize - ticks.chars().count();
            ticks.push_str(&" ".repeat(pad));
            ticks.push_str(&n.to_string());
        }
    }
    out.push_str(&ticks);
    out.push('\n');
    let over: Vec<String> =
        dims.iter().filter(|(_, &d)| d > TEXT_CAP).map(|(n, d)| format!("{n}:{d}")).collect();
    if !over.is_empty() {
        let _ = writeln!(out, "overflow {}", over.join(" "));
    }
    let total: usize = dims.values().sum();
    let _ = writeln!(out, "total {total}");
    out
}

fn render_svg(spec: &ChartSpec) -> String {
    let t = &spec.table;
    let visible: Vec<usize> = (0..t.classes.len()).filter(|&i| (spec.lo..=spec.hi).contains(&t.classes[i].stem)).collect();
    let rows: Vec<i32> = visible.iter().map(|&i| row_of(t.classes[i].s, t.classes[i].monomial)).collect();
    let (rmin, rmax) = (rows.iter().copied().min().unwrap_or(0).min(0), rows.iter().copied().max().unwrap_or(0).max(0));
    let margin = 30;
    let width = (spec.hi - spec.lo + 1) * STEM_PITCH + 2 * margin;
    let height = (rmax - rmin + 1) * ROW_PITCH + 2 * margin + 20;
    let base = height - margin - 20;
    let x_of = |n: i32| margin + (n - spec.lo) * STEM_PITCH + STEM_PITCH / 2;
    let y_of = |r: i32| base - (r - rmin) * ROW_PITCH - ROW_PITCH / 2;

    // position of every dot, spreading coincident classes sideways
    let mut seen: BTreeMap<(i32, i32), i32> = BTreeMap::new();
    let mut pos: BTreeMap<usize, Vec<(i32, i32)>> = BTreeMap::new();
    for (&i, &r) in visible.iter().zip(&rows) {
        let c = &t.classes[i];
        for _ in 0..t.dim_multiplier() {
            let k = seen.entry((c.stem, r)).or_insert(0);
            pos.entry(i).or_default().push((x_of(c.stem) + *k * 3, y_of(r) - *k * 3));
            *k += 1;
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" font-family="monospace" font-size="9">"#
    );
    let _ = writeln!(out, "<title>{}</title>", xml(&spec.title));
    if let Some((a, b)) = spec.bold {
        let (a, b) = (a.max(spec.lo), b.min(spec.hi));
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            margin + (a - spec.lo) * STEM_PITCH,
            margin / 2,
            (b - a + 1) * STEM_PITCH,
            base - margin / 2
        );
    }
    let _ = writeln!(out, r#"<line x1="{margin}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#, width - margin);
    for n in (spec.lo..=spec.hi).filter(|n| n.rem_euclid(10) == 0) {
        let x = x_of(n);
        let _ = writeln!(out, r#"<line x1="{x}" y1="{base}" x2="{x}" y2="{}" stroke="black"/>"#, base + 4);
        let _ = writeln!(out, r#"<text x="{x}" y="{}" text-anchor="middle">{n}</text>"#, base + 14);
    }
    for e in &t.edges {
        let (Some(a), Some(b)) = (pos.get(&e.from), pos.get(&e.to)) else { continue };
        let style = match e.kind {
            EdgeKind::Alpha | EdgeKind::Beta => r#"stroke="black""#,
            EdgeKind::Toda => r#"stroke="black" stroke-dasharray="2,2""#,
        };
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#, a[0].0, a[0].1, b[0].0, b[0].1);
    }
    for ps in pos.values() {
        for (x, y) in ps {
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2.5"/>"#);
        }
    }
    for (label, text) in &spec.labels {
        if let Some(ps) = pos.iter().find(|(i, _)| t.classes[**i].label == *label).map(|(_, ps)| ps) {
            let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, ps[0].0 + 4, ps[0].1 - 4, xml(text));
        }
    }
    out.push_str("</svg>\n");
    out
}

fn xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The charts the CLI knows how to compute.
pub const CHARTS: [&str; 2] = ["g24-v1", "g21-v1"];

/// E^hG24 ∧ V(1) over two periods, one period bold.
pub fn figure1() -> Result<ChartSpec, ChartError> {
    let table = run_target(Target::G24, &Window::stems(0, 143, 40))?.table;
    let mut spec = ChartSpec::new("E^hG24 ^ V(1)", table);
    spec.bold = Some((0, 71));
    spec.labels = vec![("1".into(), "1".into())];
    Ok(spec)
}

/// E^hG2^1 ∧ V(1) over −10..290, one 144-period bold.
pub fn figure2() -> Result<ChartSpec, ChartError> {
    let table = run_target(Target::G21, &Window::stems(-10, 290, 40))?.table;
    let mut spec = ChartSpec::new("E^hG2^1 ^ V(1)", table);
    spec.bold = Some((0, 143));
    spec.labels = [("1", "1"), ("alpha*w", "wα"), ("beta*w*a35", "a35wβ"), ("alpha*a35", "a35α")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    Ok(spec)
}

pub fn named(name: &str) -> Result<ChartSpec, ChartError> {
    match name {
        "g24-v1" | "fig1" => figure1(),
        "g21-v1" | "g2^1-v1" | "fig2" => figure2(),
        _ => Err(ChartError::Unknown(name.into())),
    }
}
