//! Deterministic pictures of marked diagrams: hand-emitted SVG with the core
//! on a horizontal line and chords as semicircular arcs, and an ASCII
//! rendering with one row per chord. Layout constants are fixed so repeated
//! runs emit identical bytes.

use std::fmt::Write as _;

use chordslide::diagram::MarkedDiagram;

const UNIT: f64 = 48.0; // horizontal spacing between chord ends
const MARGIN: f64 = 40.0;
const LABEL_SPACE: f64 = 96.0;
const TITLE_SPACE: f64 = 28.0;

fn x_of(pos: usize) -> f64 {
    MARGIN + pos as f64 * UNIT
}

/// Height of one frame for a diagram with `n` ends.
fn frame_height(n: usize) -> f64 {
    let max_radius = (n as f64 - 1.0) * UNIT / 2.0;
    TITLE_SPACE + max_radius + 8.0 + LABEL_SPACE
}

fn core_y(n: usize) -> f64 {
    TITLE_SPACE + (n as f64 - 1.0) * UNIT / 2.0 + 8.0
}

fn push_frame(out: &mut String, d: &MarkedDiagram, title: &str, y_offset: f64) {
    let n = d.num_ends();
    let genus = d.base().genus();
    let y = y_offset + core_y(n);
    writeln!(
        out,
        r#"  <text x="{MARGIN}" y="{:.1}" class="title">{}</text>"#,
        y_offset + 18.0,
        title
    )
    .unwrap();
    writeln!(
        out,
        r#"  <line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" class="core"/>"#,
        x_of(0) - UNIT / 2.0,
        x_of(n - 1) + UNIT / 2.0
    )
    .unwrap();
    for (l, r) in d.shape().chords() {
        let (x1, x2) = (x_of(l), x_of(r));
        let radius = (x2 - x1) / 2.0;
        writeln!(
            out,
            r#"  <path d="M {x1:.1} {y:.1} A {radius:.1} {radius:.1} 0 0 1 {x2:.1} {y:.1}" class="chord"/>"#
        )
        .unwrap();
    }
    for pos in 0..n {
        let x = x_of(pos);
        writeln!(out, r#"  <circle cx="{x:.1}" cy="{y:.1}" r="2.5" class="end"/>"#).unwrap();
        writeln!(
            out,
            r#"  <text x="{x:.1}" y="{:.1}" class="pos">{}</text>"#,
            y + 16.0,
            pos + 1
        )
        .unwrap();
        let label = d.label(pos).to_token_string(genus);
        writeln!(
            out,
            r#"  <text x="{x:.1}" y="{:.1}" class="label" transform="rotate(55 {x:.1} {:.1})">{}</text>"#,
            y + 32.0,
            y + 32.0,
            xml_escape(&label)
        )
        .unwrap();
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One SVG document with one frame per (title, diagram), stacked vertically.
pub fn svg_frames(frames: &[(String, MarkedDiagram)]) -> String {
    assert!(!frames.is_empty());
    let n = frames[0].1.num_ends();
    let fh = frame_height(n);
    let width = x_of(n - 1) + MARGIN;
    let height = fh * frames.len() as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    out.push_str(
        "  <style>\n    .core { stroke: #222; stroke-width: 2; }\n    .chord { stroke: #0061a8; stroke-width: 1.5; fill: none; }\n    .end { fill: #222; }\n    .pos { font: 11px monospace; text-anchor: middle; fill: #666; }\n    .label { font: 12px monospace; text-anchor: start; fill: #222; }\n    .title { font: 13px monospace; fill: #222; }\n  </style>\n",
    );
    for (i, (title, d)) in frames.iter().enumerate() {
        push_frame(&mut out, d, title, fh * i as f64);
    }
    out.push_str("</svg>\n");
    out
}

/// ASCII art: one row per chord (outermost first by span), connectors down
/// to the core, position numbers, and the labels listed underneath.
pub fn ascii_frame(title: &str, d: &MarkedDiagram) -> String {
    let n = d.num_ends();
    let genus = d.base().genus();
    let colw = 4usize;
    let width = n * colw;
    let col = |pos: usize| pos * colw + colw / 2;

    let mut chords = d.shape().chords();
    chords.sort_by_key(|&(l, r)| (l as isize - r as isize, l as isize));
    let rows = chords.len();
    let mut canvas = vec![vec![b' '; width]; rows];
    for (row, &(l, r)) in chords.iter().enumerate() {
        let (cl, cr) = (col(l), col(r));
        canvas[row][cl] = b'.';
        canvas[row][cr] = b'.';
        for x in cl + 1..cr {
            if canvas[row][x] == b' ' {
                canvas[row][x] = b'-';
            }
        }
        for lower in canvas.iter_mut().skip(row + 1) {
            for x in [cl, cr] {
                lower[x] = match lower[x] {
                    b' ' => b'|',
                    b'-' => b'+',
                    c => c,
                };
            }
        }
    }

    let mut out = String::new();
    writeln!(out, "{title}").unwrap();
    for row in canvas {
        writeln!(out, "{}", String::from_utf8(row).unwrap().trim_end()).unwrap();
    }
    let mut coreline = vec![b'='; width];
    for pos in 0..n {
        coreline[col(pos)] = b'*';
    }
    writeln!(out, "{}", String::from_utf8(coreline).unwrap()).unwrap();
    let mut numbers = vec![b' '; width];
    for pos in 0..n {
        let s = (pos + 1).to_string();
        let start = col(pos).saturating_sub(s.len() / 2);
        for (k, b) in s.bytes().enumerate() {
            if start + k < width {
                numbers[start + k] = b;
            }
        }
    }
    writeln!(out, "{}", String::from_utf8(numbers).unwrap().trim_end().to_string()).unwrap();
    for pos in 0..n {
        writeln!(out, "{:>3}: {}", pos + 1, d.label(pos).to_token_string(genus)).unwrap();
    }
    out
}

/// ASCII frames separated by blank lines.
pub fn ascii_frames(frames: &[(String, MarkedDiagram)]) -> String {
    let mut out = String::new();
    for (i, (title, d)) in frames.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&ascii_frame(title, d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use chordslide::freegroup::Basepoint;
    use std::sync::Arc;

    #[test]
    fn renders_are_deterministic_and_well_formed() {
        let d = MarkedDiagram::basepoint_diagram(Arc::new(Basepoint::standard(1)));
        let frames = vec![("initial".to_string(), d)];
        let svg = svg_frames(&frames);
        assert_eq!(svg, svg_frames(&frames));
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        // two chords, two arcs
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 4);

        let ascii = ascii_frames(&frames);
        assert_eq!(ascii, ascii_frames(&frames));
        assert!(ascii.contains("1: b"));
    }
}
