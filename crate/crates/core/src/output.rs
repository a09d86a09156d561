//! CSV, JSON and SVG emitters. Data goes to the writer it is given; nothing
//! here prints progress.

use std::io::Write;

use serde::Serialize;

use crate::dynamics::{AtlasOrbit, CycleRecord, PeriodTable, SweepRow};
use crate::error::Result;

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Serialize)]
struct SweepCsvRow {
    d: usize,
    d_mod_6: usize,
    c: i64,
    count: usize,
    longest_cycle: usize,
    n_cycles: usize,
    expected_count: Option<i64>,
    expected_longest: Option<i64>,
    status: &'static str,
    elapsed_ms: Option<u128>,
}

/// Writes one CSV row per sweep result. Wall-clock time is only included
/// when `timing` is set, so that default output is reproducible byte for byte.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow], timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        let status = match (r.matches, r.in_table_range) {
            (None, _) => "no-formula",
            (Some(true), _) => "match",
            (Some(false), true) => "mismatch",
            (Some(false), false) => "flagged",
        };
        w.serialize(SweepCsvRow {
            d: r.report.d,
            d_mod_6: r.report.d_mod_6(),
            c: r.report.c,
            count: r.report.total,
            longest_cycle: r.report.longest,
            n_cycles: r.report.n_cycles,
            expected_count: r.expected.map(|e| e.0),
            expected_longest: r.expected.map(|e| e.1),
            status,
            elapsed_ms: timing.then_some(r.report.elapsed.as_millis()),
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_cycles_json<W: Write>(mut out: W, cycles: &[CycleRecord]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, cycles)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_cycles_csv<W: Write>(out: W, cycles: &[CycleRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cycle", "length", "index", "x", "y"])?;
    for (k, c) in cycles.iter().enumerate() {
        for (i, p) in c.points.iter().enumerate() {
            w.write_record([
                k.to_string(),
                c.length.to_string(),
                i.to_string(),
                p.x.to_string(),
                p.y.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Human-readable residue table followed by the exceptional points.
pub fn write_period_table<W: Write>(mut out: W, t: &PeriodTable) -> Result<()> {
    writeln!(out, "y\\x mod 6 |   0   1   2   3   4   5")?;
    writeln!(out, "----------+------------------------")?;
    for y in (0..6).rev() {
        write!(out, "{y:>9} |")?;
        for n in t.table[y] {
            write!(out, "{n:>4}")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "exceptions ({}):", t.exceptions.len())?;
    for (p, n) in &t.exceptions {
        writeln!(out, "  {p} period {n}")?;
    }
    Ok(())
}

pub fn write_trajectory_csv<W: Write>(out: W, orbit: &[(f64, f64)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "x", "y"])?;
    for (i, &(x, y)) in orbit.iter().enumerate() {
        w.write_record([i.to_string(), format_f64(x), format_f64(y)])?;
    }
    w.flush()?;
    Ok(())
}

/// Atlas point cloud. `step` is the iteration index of each kept point.
pub fn write_atlas_csv<W: Write>(out: W, atlas: &[AtlasOrbit], stride: usize) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["base_x", "base_y", "period_class", "step", "x", "y"])?;
    for o in atlas {
        let (bx, by, class) = (
            o.base.x.to_string(),
            o.base.y.to_string(),
            o.period_class.to_string(),
        );
        for (i, &(x, y)) in o.points.iter().enumerate() {
            w.write_record([
                bx.as_str(),
                by.as_str(),
                class.as_str(),
                &(i * stride.max(1)).to_string(),
                &format_f64(x),
                &format_f64(y),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Colour for each period class of `h_∞`.
pub fn class_colour(period: usize) -> &'static str {
    match period {
        1 => "#ff2020",
        4 => "#401010",
        5 => "#1f8f3a",
        6 => "#2080ff",
        12 => "#00b8c8",
        20 => "#9acd32",
        _ => "#808080",
    }
}

/// Minimal scatter plot of the atlas, clipped to `[-view, view]²`.
pub fn write_atlas_svg<W: Write>(mut out: W, atlas: &[AtlasOrbit], view: f64) -> Result<()> {
    const SIZE: f64 = 800.0;
    let scale = SIZE / (2.0 * view);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )?;
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    for o in atlas {
        writeln!(out, r#"<g fill="{}">"#, class_colour(o.period_class))?;
        for &(x, y) in &o.points {
            if x.abs() > view || y.abs() > view {
                continue;
            }
            let (px, py) = ((x + view) * scale, (view - y) * scale);
            writeln!(out, r#"<circle cx="{px:.2}" cy="{py:.2}" r="0.6"/>"#)?;
        }
        writeln!(out, "</g>")?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{perturbation_atlas, sweep, Orientation};
    use crate::Exec;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0] {
            assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn sweep_csv_layout() {
        let rows = sweep(&[7], &[0, 1], Orientation::Standard, Exec::Sequential).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "d,d_mod_6,c,count,longest_cycle,n_cycles,expected_count,expected_longest,status,elapsed_ms"
        );
        assert!(lines
            .next()
            .unwrap()
            .starts_with("7,1,0,115,22,13,49,22,flagged,"));
        assert!(lines.next().unwrap().starts_with("7,1,1,67,21,"));
    }

    #[test]
    fn svg_has_one_circle_per_visible_point() {
        let atlas = perturbation_atlas(1, 0.0, 3, 1, 1, Exec::Sequential).unwrap();
        let mut buf = Vec::new();
        write_atlas_svg(&mut buf, &atlas, 10.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<circle").count(), 9 * 4);
        assert!(text.contains(class_colour(1)));
    }
}
