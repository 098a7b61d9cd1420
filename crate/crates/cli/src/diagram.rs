//! SVG rendering of factorizations, for documentation only.
//!
//! Planar pages are drawn as a disk with the holes on a horizontal line, one
//! panel per vanishing cycle. Round curves are ellipses around their holes;
//! conjugated curves are drawn as a dashed ellipse around the holes they
//! enclose, with the conjugating word as a caption.

use std::fmt::Write;

use lefschetz::mcg::{Curve, Factorization, Genus1Factorization};
use lefschetz::palf::PalfWord;

const STEP: f64 = 40.0;
const PANEL_H: f64 = 110.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" font-family=\"monospace\" font-size=\"11\">\n"
    )
}

fn panel(out: &mut String, holes: usize, y0: f64, c: &Curve, caption: &str) {
    let width = STEP * (holes as f64 + 1.0);
    let cx = 10.0 + width / 2.0;
    let cy = y0 + 50.0;
    let _ = writeln!(
        out,
        "<ellipse cx=\"{cx:.1}\" cy=\"{cy:.1}\" rx=\"{:.1}\" ry=\"40\" fill=\"none\" stroke=\"black\"/>",
        width / 2.0
    );
    for k in 1..=holes {
        let x = 10.0 + STEP * k as f64;
        let _ = writeln!(out, "<circle cx=\"{x:.1}\" cy=\"{cy:.1}\" r=\"5\" fill=\"black\"/>");
        let _ = writeln!(out, "<text x=\"{:.1}\" y=\"{:.1}\">{k}</text>", x - 3.0, cy + 20.0);
    }
    let inside = c.encloses(holes);
    if let (Some(&lo), Some(&hi)) = (inside.first(), inside.last()) {
        let x0 = 10.0 + STEP * lo as f64;
        let x1 = 10.0 + STEP * hi as f64;
        let dash = if c.is_round() { "" } else { " stroke-dasharray=\"4 3\"" };
        let _ = writeln!(
            out,
            "<ellipse cx=\"{:.1}\" cy=\"{cy:.1}\" rx=\"{:.1}\" ry=\"14\" fill=\"none\" stroke=\"red\"{dash}/>",
            (x0 + x1) / 2.0,
            (x1 - x0) / 2.0 + 12.0
        );
    }
    let _ = writeln!(out, "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>", width + 30.0, cy + 4.0, escape(caption));
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn planar_svg(f: &Factorization) -> String {
    let h = f.page.holes;
    let width = STEP * (h as f64 + 1.0) + 360.0;
    let mut out = header(width, PANEL_H * f.word.len().max(1) as f64);
    for (i, c) in f.word.iter().enumerate() {
        panel(&mut out, h, PANEL_H * i as f64, c, &format!("{i}: {c}"));
    }
    out.push_str("</svg>\n");
    out
}

/// Genus one words have no planar picture; list the curves and classes.
pub fn genus1_svg(f: &Genus1Factorization) -> String {
    let lines: Vec<String> = f.to_string().lines().map(str::to_string).collect();
    let mut out = header(640.0, 16.0 * (lines.len() as f64 + 1.0));
    for (i, l) in lines.iter().enumerate() {
        let _ = writeln!(out, "<text x=\"10\" y=\"{}\">{}</text>", 16 * (i + 1), escape(l));
    }
    out.push_str("</svg>\n");
    out
}

pub fn svg(w: &PalfWord) -> String {
    match w {
        PalfWord::Planar(f) => planar_svg(f),
        PalfWord::Genus1(f) => genus1_svg(f),
    }
}
