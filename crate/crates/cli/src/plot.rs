//! Line charts from benchmark CSV, written as plain SVG.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::CliError;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotOptions {
    pub x: String,
    pub y: String,
    pub group: String,
    pub log_log: bool,
}

/// Mean of `y` for every `(group, x)` pair, groups and x values sorted.
pub type Series = BTreeMap<String, Vec<(f64, f64)>>;

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize, CliError> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| CliError::invalid(format!("CSV has no `{name}` column")))
}

pub fn collect(csv_text: &str, opts: &PlotOptions) -> Result<Series, CliError> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::invalid(format!("unreadable CSV header: {e}")))?
        .clone();
    if headers.is_empty() {
        return Err(CliError::invalid("CSV is empty"));
    }
    let (xi, yi, gi) = (
        column(&headers, &opts.x)?,
        column(&headers, &opts.y)?,
        column(&headers, &opts.group)?,
    );
    // (sum, count) keyed by group, then by x's bit pattern to keep f64 keys ordered.
    let mut acc: BTreeMap<String, BTreeMap<u64, (f64, f64, usize)>> = BTreeMap::new();
    let mut rows = 0;
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::invalid(format!("CSV row {}: {e}", i + 2)))?;
        rows += 1;
        let num = |idx: usize, name: &str| -> Result<f64, CliError> {
            let raw = rec.get(idx).unwrap_or("");
            raw.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::invalid(format!(
                        "CSV row {}: `{name}` value `{raw}` is not a number",
                        i + 2
                    ))
                })
        };
        let (x, y) = (num(xi, &opts.x)?, num(yi, &opts.y)?);
        if opts.log_log && (x <= 0.0 || y <= 0.0) {
            continue;
        }
        let group = rec.get(gi).unwrap_or("").to_string();
        let slot = acc
            .entry(group)
            .or_default()
            .entry(order_key(x))
            .or_insert((x, 0.0, 0));
        slot.1 += y;
        slot.2 += 1;
    }
    if rows == 0 {
        return Err(CliError::invalid("CSV has no data rows"));
    }
    if acc.is_empty() {
        return Err(CliError::invalid(
            "no positive points to draw on log-log axes",
        ));
    }
    Ok(acc
        .into_iter()
        .map(|(g, pts)| {
            (
                g,
                pts.into_values()
                    .map(|(x, s, n)| (x, s / n as f64))
                    .collect(),
            )
        })
        .collect())
}

/// Monotone map from finite f64 to u64.
fn order_key(x: f64) -> u64 {
    let bits = x.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

fn label(v: f64) -> String {
    if v.abs() >= 1e6 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = values
            .map(|v| if log { v.log10() } else { v })
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                (a.min(v), b.max(v))
            });
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        Axis { lo, hi, log }
    }

    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, f64)> {
        (0..=4)
            .map(|i| {
                let f = f64::from(i) / 4.0;
                let t = self.lo + f * (self.hi - self.lo);
                (f, if self.log { 10f64.powf(t) } else { t })
            })
            .collect()
    }
}

pub fn render(series: &Series, opts: &PlotOptions) -> String {
    let all = || series.values().flatten();
    let xa = Axis::new(all().map(|p| p.0), opts.log_log);
    let ya = Axis::new(all().map(|p| p.1), opts.log_log);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let px = |x: f64| LEFT + xa.frac(x) * pw;
    let py = |y: f64| TOP + (1.0 - ya.frac(y)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let scale = if opts.log_log { " (log-log)" } else { "" };
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{} vs {}{scale}</text>"#,
        LEFT + pw / 2.0,
        escape(&opts.y),
        escape(&opts.x)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for (f, v) in xa.ticks() {
        let x = LEFT + f * pw;
        let _ = writeln!(
            s,
            r##"<line x1="{x:.1}" y1="{TOP}" x2="{x:.1}" y2="{:.1}" stroke="#ddd"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"##,
            TOP + ph,
            TOP + ph + 18.0,
            label(v)
        );
    }
    for (f, v) in ya.ticks() {
        let y = TOP + (1.0 - f) * ph;
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0,
            label(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 16.0,
        escape(&opts.x)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&opts.y)
    );
    for (i, (group, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        for &(x, y) in pts {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#,
                px(x),
                py(y)
            );
        }
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 16.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(group)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Reads benchmark CSV text and returns the SVG document.
pub fn plot(csv_text: &str, opts: &PlotOptions) -> Result<String, CliError> {
    let series = collect(csv_text, opts)?;
    Ok(render(&series, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(log_log: bool) -> PlotOptions {
        PlotOptions {
            x: "C".into(),
            y: "empty_scans".into(),
            group: "backend".into(),
            log_log,
        }
    }

    const CSV: &str = "C,backend,empty_scans\n64,dial,100\n64,dial,300\n4096,dial,12800\n64,mlb,10\n4096,mlb,80\n";

    #[test]
    fn averages_per_group_and_x() {
        let s = collect(CSV, &opts(false)).unwrap();
        assert_eq!(s["dial"], vec![(64.0, 200.0), (4096.0, 12800.0)]);
        assert_eq!(s["mlb"].len(), 2);
    }

    #[test]
    fn one_polyline_per_group() {
        let svg = plot(CSV, &opts(true)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("(log-log)"));
        assert_eq!(svg, plot(CSV, &opts(true)).unwrap());
    }

    #[test]
    fn errors() {
        assert!(plot("", &opts(false)).is_err());
        assert!(plot("C,backend,empty_scans\n", &opts(false)).is_err());
        assert!(plot("C,backend\n1,dial\n", &opts(false)).is_err());
        assert!(plot("C,backend,empty_scans\nx,dial,3\n", &opts(false)).is_err());
        assert!(plot("C,backend,empty_scans\n0,dial,0\n", &opts(true)).is_err());
    }
}
