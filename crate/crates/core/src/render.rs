//! Text and SVG pictures of weight and cap diagrams.

use std::fmt::Write as _;

use crate::diagram::{cap_diagram, Cap, WeightDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Symbols only.
    Weight,
    /// Symbols with the caps of `D_cap(f)` drawn above them.
    Cap,
}

/// Positions shown: one beyond every symbol and cap end on each side.
pub fn span(f: &WeightDiagram, caps: &[Cap]) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    if let Some((a, b)) = f.support_bounds() {
        lo = a;
        hi = b;
    }
    for c in caps {
        lo = lo.min(c.begin);
        hi = hi.max(c.end);
    }
    if lo > hi {
        (-1, 1)
    } else {
        (lo - 1, hi + 1)
    }
}

/// Height of each cap: 1 plus the tallest cap nested inside it.
fn heights(caps: &[Cap]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..caps.len()).collect();
    order.sort_by_key(|&i| caps[i].width());
    let mut h = vec![0; caps.len()];
    for &i in &order {
        h[i] = 1 + order.iter().filter(|&&j| caps[i].encloses(&caps[j])).map(|&j| h[j]).max().unwrap_or(0);
    }
    h
}

fn visible_caps(f: &WeightDiagram, style: Style) -> Vec<Cap> {
    match style {
        Style::Weight => Vec::new(),
        Style::Cap => cap_diagram(f).caps().to_vec(),
    }
}

/// ASCII picture. Symbols are `x o < >` one column apart; caps are drawn as
/// `+---+` with `|` legs; the last line names the first and last position.
pub fn render_ascii(f: &WeightDiagram, style: Style) -> String {
    let caps = visible_caps(f, style);
    let (lo, hi) = span(f, &caps);
    let width = (2 * (hi - lo) + 1) as usize;
    let col = |p: i64| (2 * (p - lo)) as usize;
    let h = heights(&caps);
    let top = h.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    for row in (1..=top).rev() {
        let mut line = vec![' '; width];
        for (cap, &ch) in caps.iter().zip(&h) {
            let (b, e) = (col(cap.begin), col(cap.end));
            if ch == row {
                line[b] = '+';
                line[e] = '+';
                for c in &mut line[b + 1..e] {
                    *c = '-';
                }
            } else if ch > row {
                line[b] = '|';
                line[e] = '|';
            }
        }
        out.push_str(line.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    let symbols: Vec<String> = (lo..=hi).map(|p| f.symbol_at(p).ascii().to_string()).collect();
    out.push_str(&symbols.join(" "));
    out.push('\n');
    let _ = writeln!(out, "{lo}..{hi}");
    out
}

/// Standalone SVG document.
pub fn render_svg(f: &WeightDiagram, style: Style) -> String {
    const STEP: i64 = 30;
    let caps = visible_caps(f, style);
    let (lo, hi) = span(f, &caps);
    let h = heights(&caps);
    let top = h.iter().copied().max().unwrap_or(0) as i64;
    let base = 20 + top * 20;
    let width = (hi - lo + 1) * STEP + 20;
    let height = base + 50;
    let x = |p: i64| 10 + (p - lo) * STEP + STEP / 2;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"  <g fill="none" stroke="black" stroke-width="1.5">"#);
    for (cap, &ch) in caps.iter().zip(&h) {
        let (x1, x2) = (x(cap.begin), x(cap.end));
        let ry = 20 * ch as i64;
        let rx = (x2 - x1) / 2;
        let _ = writeln!(s, r#"    <path d="M {x1} {base} A {rx} {ry} 0 0 1 {x2} {base}"/>"#);
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, r#"  <g font-family="monospace" font-size="16" text-anchor="middle">"#);
    for p in lo..=hi {
        let sym = match f.symbol_at(p).ascii() {
            'x' => "×",
            'o' => "○",
            '<' => "&lt;",
            _ => "&gt;",
        };
        let _ = writeln!(s, r#"    <text x="{}" y="{}">{sym}</text>"#, x(p), base + 16);
        let _ = writeln!(s, r#"    <text x="{}" y="{}" font-size="9">{p}</text>"#, x(p), base + 36);
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    s
}
