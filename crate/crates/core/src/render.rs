//! SVG drawing of a lottery.
//!
//! Lines are vertical strokes labelled with the identity on top and the
//! bottom labeling underneath. Each bar is a horizontal segment at its
//! canonical level. A seam bar leaves the right edge from line `n` and
//! re-enters at the left edge towards line `1`, drawn as two half segments.

use std::fmt::Write;

use crate::lottery::CyclicLadderLottery;

const GAP: usize = 40;
const LEVEL: usize = 30;
const MARGIN: usize = 30;

pub fn render_svg(l: &CyclicLadderLottery) -> String {
    let n = l.n();
    let levels = l.levels();
    let depth = levels.iter().copied().max().unwrap_or(0);
    let width = 2 * MARGIN + n * GAP;
    let top = MARGIN;
    let bottom = MARGIN + (depth + 1) * LEVEL;
    let height = bottom + MARGIN;
    let x_of = |line: usize| MARGIN + GAP / 2 + (line - 1) * GAP;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="2" fill="none">"#);
    for line in 1..=n {
        let x = x_of(line);
        let _ = writeln!(s, r#"<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}"/>"#);
    }
    let (left_edge, right_edge) = (MARGIN, MARGIN + n * GAP);
    for (&c, &lv) in l.word().iter().zip(&levels) {
        let y = top + lv * LEVEL;
        if c < n {
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
                x_of(c),
                x_of(c + 1)
            );
        } else {
            let _ = writeln!(
                s,
                r#"<line class="seam" x1="{}" y1="{y}" x2="{right_edge}" y2="{y}"/>"#,
                x_of(n)
            );
            let _ = writeln!(
                s,
                r#"<line class="seam" x1="{left_edge}" y1="{y}" x2="{}" y2="{y}"/>"#,
                x_of(1)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="14" text-anchor="middle">"#
    );
    let perm = l.evaluate();
    for line in 1..=n {
        let x = x_of(line);
        let _ = writeln!(s, r#"<text x="{x}" y="{}">{line}</text>"#, top - 8);
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}">{}</text>"#,
            bottom + 20,
            perm.at(line)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
