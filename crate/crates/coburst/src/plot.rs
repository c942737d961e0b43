//! Sweep plots as self-contained SVG.
//!
//! Renders mean NMI per detector across the mixing-parameter grid with a
//! +-1 standard-deviation band. Output is a plain string built with fixed
//! number formatting, so the same rows always produce the same bytes; an
//! optional caller-supplied stamp is appended as a trailing comment and is
//! the only non-deterministic part callers can opt into.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pipeline::Detector;
use crate::sweep::SweepRow;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 28.0;
const MARGIN_BOTTOM: f64 = 52.0;

fn color(d: Detector) -> &'static str {
    match d {
        Detector::Bursty => "#d62728",
        Detector::LouvainEdges => "#1f77b4",
        Detector::LpaEdges => "#2ca02c",
    }
}

fn x_px(lambda: f64) -> f64 {
    MARGIN_LEFT + lambda * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
}

fn y_px(nmi: f64) -> f64 {
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    MARGIN_TOP + (1.0 - nmi.clamp(0.0, 1.0)) * plot_h
}

struct Series {
    /// (lambda, mean, sd) per grid value, in grid order.
    points: Vec<(f64, f64, f64)>,
}

fn summarize(rows: &[SweepRow]) -> BTreeMap<&'static str, (Detector, Series)> {
    // per detector, per lambda (in first-seen order): collect scores
    let mut per: BTreeMap<&'static str, (Detector, Vec<(f64, Vec<f64>)>)> = BTreeMap::new();
    for r in rows {
        let entry = per.entry(r.detector.name()).or_insert((r.detector, Vec::new()));
        match entry.1.iter_mut().find(|(l, _)| *l == r.lambda) {
            Some((_, scores)) => scores.push(r.nmi),
            None => entry.1.push((r.lambda, vec![r.nmi])),
        }
    }
    per.into_iter()
        .map(|(name, (det, lambdas))| {
            let points = lambdas
                .into_iter()
                .map(|(l, scores)| {
                    let n = scores.len() as f64;
                    let mean = scores.iter().sum::<f64>() / n;
                    let sd = if scores.len() > 1 {
                        (scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>()
                            / (n - 1.0))
                            .sqrt()
                    } else {
                        0.0
                    };
                    (l, mean, sd)
                })
                .collect();
            (name, (det, Series { points }))
        })
        .collect()
}

/// Render sweep rows as an SVG document. `stamp`, when given, is appended
/// as a trailing `<!-- ... -->` comment (it must not contain `--`).
pub fn plot_sweep_svg(rows: &[SweepRow], stamp: Option<&str>) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Insufficient("no sweep rows to plot".into()));
    }
    if let Some(s) = stamp {
        if s.contains("--") {
            return Err(Error::invalid("stamp", "must not contain \"--\""));
        }
    }
    let series = summarize(rows);
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">"
    )
    .unwrap();
    writeln!(w, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>").unwrap();

    // grid and axis labels on both axes, 0.0 to 1.0 in steps of 0.2
    writeln!(w, "  <g stroke=\"#dddddd\" stroke-width=\"1\">").unwrap();
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        let (xp, yp) = (x_px(v), y_px(v));
        writeln!(
            w,
            "    <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            xp,
            y_px(0.0),
            xp,
            y_px(1.0)
        )
        .unwrap();
        writeln!(
            w,
            "    <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            x_px(0.0),
            yp,
            x_px(1.0),
            yp
        )
        .unwrap();
    }
    writeln!(w, "  </g>").unwrap();
    writeln!(w, "  <g fill=\"#333333\" font-size=\"12\">").unwrap();
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        writeln!(
            w,
            "    <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{v:.1}</text>",
            x_px(v),
            y_px(0.0) + 18.0
        )
        .unwrap();
        writeln!(
            w,
            "    <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{v:.1}</text>",
            x_px(0.0) - 8.0,
            y_px(v) + 4.0
        )
        .unwrap();
    }
    writeln!(
        w,
        "    <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\">lambda (intra-community target probability)</text>",
        (x_px(0.0) + x_px(1.0)) / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();
    writeln!(
        w,
        "    <text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 {:.2})\">NMI vs planted communities</text>",
        (y_px(0.0) + y_px(1.0)) / 2.0,
        (y_px(0.0) + y_px(1.0)) / 2.0
    )
    .unwrap();
    writeln!(w, "  </g>").unwrap();

    // one band + line + markers per detector, in name order
    for (_, (det, s)) in &series {
        let c = color(*det);
        if s.points.len() > 1 {
            let mut band = String::new();
            for &(l, m, sd) in &s.points {
                write!(band, "{:.2},{:.2} ", x_px(l), y_px(m + sd)).unwrap();
            }
            for &(l, m, sd) in s.points.iter().rev() {
                write!(band, "{:.2},{:.2} ", x_px(l), y_px(m - sd)).unwrap();
            }
            writeln!(
                w,
                "  <polygon points=\"{}\" fill=\"{c}\" opacity=\"0.15\" stroke=\"none\"/>",
                band.trim_end()
            )
            .unwrap();
        }
        let line: Vec<String> = s
            .points
            .iter()
            .map(|&(l, m, _)| format!("{:.2},{:.2}", x_px(l), y_px(m)))
            .collect();
        writeln!(
            w,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{c}\" stroke-width=\"2\"/>",
            line.join(" ")
        )
        .unwrap();
        for &(l, m, _) in &s.points {
            writeln!(
                w,
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{c}\"/>",
                x_px(l),
                y_px(m)
            )
            .unwrap();
        }
    }

    // legend, top-right inside the plot area
    let legend_x = x_px(1.0) - 170.0;
    let mut legend_y = MARGIN_TOP + 10.0;
    for (name, (det, _)) in &series {
        writeln!(
            w,
            "  <rect x=\"{legend_x:.2}\" y=\"{:.2}\" width=\"14\" height=\"4\" fill=\"{}\"/>",
            legend_y - 4.0,
            color(*det)
        )
        .unwrap();
        writeln!(
            w,
            "  <text x=\"{:.2}\" y=\"{legend_y:.2}\" font-size=\"12\" fill=\"#333333\">{name}</text>",
            legend_x + 20.0
        )
        .unwrap();
        legend_y += 18.0;
    }

    writeln!(w, "</svg>").unwrap();
    if let Some(s) = stamp {
        writeln!(w, "<!-- generated {s} -->").unwrap();
    }
    Ok(out)
}
