//! SVG heatmaps of `(h, w_h)` grids.

use std::fmt::Write as _;

use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 30.0;
const PLOT_W: f64 = 520.0;
const PLOT_H: f64 = 390.0;
const BAR_X: f64 = 610.0;
const BAR_W: f64 = 18.0;
const MISSING: &str = "#d9d9d9";

/// Viridis control points.
const STOPS: [[u8; 3]; 5] = [
    [0x44, 0x01, 0x54],
    [0x3b, 0x52, 0x8b],
    [0x21, 0x91, 0x8c],
    [0x5e, 0xc9, 0x62],
    [0xfd, 0xe7, 0x25],
];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let mix = |k: usize| {
        let a = STOPS[i][k] as f64;
        let b = STOPS[i + 1][k] as f64;
        (a + (b - a) * f).round() as u8
    };
    format!("#{:02x}{:02x}{:02x}", mix(0), mix(1), mix(2))
}

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::Heatmap(format!("missing column {name:?}")))
}

fn number(field: &str, what: &str, row: usize) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Heatmap(format!("row {row}: {what} {field:?} is not a number")))
}

fn distinct_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `value` from a grid CSV with numeric `h` and `w_h` columns.
///
/// `h` runs up the vertical axis and `w_h` along the horizontal one. Empty
/// value cells are drawn grey. `overlay`, when given, is a CSV with `h` and
/// `w_upper` columns drawn as one dashed path. Output depends only on the
/// inputs.
pub fn render_heatmap(grid_csv: &str, value: &str, overlay: Option<&str>) -> Result<String> {
    let mut reader = csv::Reader::from_reader(grid_csv.as_bytes());
    let headers = reader.headers()?.clone();
    let (hc, wc, vc) = (
        column(&headers, "h")?,
        column(&headers, "w_h")?,
        column(&headers, value)?,
    );
    let mut cells: Vec<(f64, f64, Option<f64>)> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let row = i + 2;
        let h = number(&rec[hc], "h", row)?;
        let w = number(&rec[wc], "w_h", row)?;
        let v = match rec[vc].trim() {
            "" => None,
            s => Some(number(s, value, row)?),
        };
        cells.push((h, w, v));
    }
    let defined: Vec<f64> = cells.iter().filter_map(|c| c.2).collect();
    if defined.is_empty() {
        return Err(Error::Heatmap(format!("column {value:?} has no values")));
    }
    let hs = distinct_sorted(cells.iter().map(|c| c.0).collect());
    let ws = distinct_sorted(cells.iter().map(|c| c.1).collect());
    let mut grid: Vec<Vec<Option<Option<f64>>>> = vec![vec![None; ws.len()]; hs.len()];
    for &(h, w, v) in &cells {
        let i = hs.binary_search_by(|x| x.total_cmp(&h)).expect("collected");
        let j = ws.binary_search_by(|x| x.total_cmp(&w)).expect("collected");
        grid[i][j] = Some(v);
    }
    let missing: Vec<String> = hs
        .iter()
        .enumerate()
        .flat_map(|(i, h)| {
            let grid = &grid;
            ws.iter()
                .enumerate()
                .filter(move |&(j, _)| grid[i][j].is_none())
                .map(move |(_, w)| format!("(h={h}, w_h={w})"))
        })
        .collect();
    if !missing.is_empty() {
        return Err(Error::Heatmap(format!(
            "grid is not rectangular; missing cells: {}",
            missing.join(", ")
        )));
    }

    let lo = defined.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = defined.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = |v: f64| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
    let cw = PLOT_W / ws.len() as f64;
    let ch = PLOT_H / hs.len() as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">
<title>{}</title>
<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{PLOT_W}" height="{PLOT_H}"/></clipPath>
<linearGradient id="bar" x1="0" y1="1" x2="0" y2="0">"#,
        escape(value)
    );
    for (k, _) in STOPS.iter().enumerate() {
        let t = k as f64 / (STOPS.len() - 1) as f64;
        let _ = writeln!(svg, r#"<stop offset="{t}" stop-color="{}"/>"#, color(t));
    }
    svg.push_str("</linearGradient></defs>\n");
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="18" text-anchor="middle" font-size="13">{}</text>"#,
        LEFT + PLOT_W / 2.0,
        escape(value)
    );

    svg.push_str("<g class=\"cells\" shape-rendering=\"crispEdges\">\n");
    for (i, row) in grid.iter().enumerate() {
        let y = TOP + (hs.len() - 1 - i) as f64 * ch;
        for (j, cell) in row.iter().enumerate() {
            let x = LEFT + j as f64 * cw;
            let (fill, label) = match cell.expect("rectangular") {
                Some(v) => (color(scale(v)), v.to_string()),
                None => (MISSING.to_string(), "n/a".to_string()),
            };
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{x:.2}" y="{y:.2}" width="{cw:.2}" height="{ch:.2}" fill="{fill}"><title>h={} w_h={} {}={label}</title></rect>"#,
                hs[i],
                ws[j],
                escape(value)
            );
        }
    }
    svg.push_str("</g>\n");

    // Axes and ticks.
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT_W}" height="{PLOT_H}" fill="none" stroke="black"/>"#
    );
    let ticks = |len: usize| -> Vec<usize> {
        let step = len.div_ceil(6).max(1);
        let mut t: Vec<usize> = (0..len).step_by(step).collect();
        if *t.last().unwrap() != len - 1 {
            t.push(len - 1);
        }
        t
    };
    for j in ticks(ws.len()) {
        let x = LEFT + (j as f64 + 0.5) * cw;
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + PLOT_H + 15.0,
            ws[j]
        );
    }
    for i in ticks(hs.len()) {
        let y = TOP + (hs.len() as f64 - 0.5 - i as f64) * ch;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            hs[i]
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">w_h</text>"#,
        LEFT + PLOT_W / 2.0,
        TOP + PLOT_H + 35.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">h</text>"#,
        TOP + PLOT_H / 2.0,
        TOP + PLOT_H / 2.0
    );

    // Color bar.
    let _ = writeln!(
        svg,
        r#"<rect x="{BAR_X}" y="{TOP}" width="{BAR_W}" height="{PLOT_H}" fill="url(#bar)" stroke="black"/>
<text x="{:.2}" y="{:.2}">{hi}</text>
<text x="{:.2}" y="{:.2}">{lo}</text>"#,
        BAR_X + BAR_W + 4.0,
        TOP + 10.0,
        BAR_X + BAR_W + 4.0,
        TOP + PLOT_H
    );

    if let Some(text) = overlay {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        let (oh, ow) = (column(&headers, "h")?, column(&headers, "w_upper")?);
        let span = |vals: &[f64], v: f64, cell: f64, extent: f64| {
            let (a, b) = (vals[0], vals[vals.len() - 1]);
            if b > a {
                cell / 2.0 + (v - a) / (b - a) * (extent - cell)
            } else {
                extent / 2.0
            }
        };
        let mut d = String::new();
        for (i, rec) in reader.records().enumerate() {
            let rec = rec?;
            let h = number(&rec[oh], "h", i + 2)?;
            let w = number(&rec[ow], "w_upper", i + 2)?;
            let x = LEFT + span(&ws, w, cw, PLOT_W);
            let y = TOP + PLOT_H - span(&hs, h, ch, PLOT_H);
            let _ = write!(d, "{}{x:.2} {y:.2}", if d.is_empty() { "M" } else { " L" });
        }
        if !d.is_empty() {
            let _ = writeln!(
                svg,
                r#"<path class="overlay" d="{d}" fill="none" stroke="white" stroke-width="2" stroke-dasharray="6 4" clip-path="url(#plot)"/>"#
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_BY_TWO: &str = "h,w_h,v\n1,0,0\n1,10,1\n2,0,1\n2,10,0\n";

    #[test]
    fn four_cells_with_extreme_colors() {
        let svg = render_heatmap(TWO_BY_TWO, "v", None).unwrap();
        assert_eq!(svg.matches("class=\"cell\"").count(), 4);
        assert_eq!(svg.matches(&format!("fill=\"{}\"", color(0.0))).count(), 2);
        assert_eq!(svg.matches(&format!("fill=\"{}\"", color(1.0))).count(), 2);
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
        assert!(!svg.contains("class=\"overlay\""));
    }

    #[test]
    fn deterministic() {
        let a = render_heatmap(TWO_BY_TWO, "v", Some("h,w_upper\n1,5\n2,8\n")).unwrap();
        let b = render_heatmap(TWO_BY_TWO, "v", Some("h,w_upper\n1,5\n2,8\n")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<path").count(), 1);
    }

    #[test]
    fn missing_cell_is_reported() {
        let err = render_heatmap("h,w_h,v\n1,0,0\n1,10,1\n2,0,1\n", "v", None).unwrap_err();
        assert!(err.to_string().contains("(h=2, w_h=10)"), "{err}");
    }

    #[test]
    fn empty_value_column() {
        assert!(render_heatmap("h,w_h,v\n1,0,\n", "v", None).is_err());
        assert!(render_heatmap("h,w_h,v\n", "v", None).is_err());
        assert!(render_heatmap(TWO_BY_TWO, "nope", None).is_err());
    }

    #[test]
    fn blank_values_are_grey() {
        let svg = render_heatmap("h,w_h,v\n1,0,\n1,10,0.5\n", "v", None).unwrap();
        assert!(svg.contains(MISSING));
    }
}
