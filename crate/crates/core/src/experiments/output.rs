use std::path::{Path, PathBuf};

use plotters::prelude::*;
use serde::{Deserialize, Serialize};

use super::ResultRecord;
use crate::benchmarks::Scheme;
use crate::error::{Error, Result};

pub const RAW_HEADER: &str = "scheme,sweep_name,sweep_value,realization,mu_linear,mu_db,wall_ms,status";
pub const AGGREGATE_HEADER: &str = "scheme,sweep_name,sweep_value,n,mean_db,stderr_db,mean_linear";

/// Mean over realizations for one scheme at one sweep value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRecord {
    pub scheme: Scheme,
    pub sweep_name: String,
    pub sweep_value: f64,
    pub n: usize,
    /// Mean of the per-realization dB values.
    pub mean_db: f64,
    pub stderr_db: f64,
    /// Mean of the linear values.
    pub mean_linear: f64,
}

/// Groups by `(scheme, sweep value)` in order of first appearance. Records
/// without a finite dB value are skipped with a warning.
pub fn aggregate(records: &[ResultRecord]) -> Vec<AggregateRecord> {
    let mut groups: Vec<(Scheme, String, f64, Vec<(f64, f64)>)> = Vec::new();
    for r in records {
        let idx = match groups
            .iter()
            .position(|g| g.0 == r.scheme && g.1 == r.sweep_name && g.2 == r.sweep_value)
        {
            Some(i) => i,
            None => {
                groups.push((r.scheme, r.sweep_name.clone(), r.sweep_value, Vec::new()));
                groups.len() - 1
            }
        };
        if r.mu_db.is_finite() {
            groups[idx].3.push((r.mu_db, r.mu_linear));
        } else {
            log::warn!(
                "skipping {} realization {} at {}={}: status {}",
                r.scheme,
                r.realization,
                r.sweep_name,
                r.sweep_value,
                r.status
            );
        }
    }
    groups
        .into_iter()
        .filter_map(|(scheme, sweep_name, sweep_value, vals)| {
            if vals.is_empty() {
                log::warn!("no usable records for {scheme} at {sweep_name}={sweep_value}");
                return None;
            }
            let n = vals.len();
            let mean_db = vals.iter().map(|v| v.0).sum::<f64>() / n as f64;
            let mean_linear = vals.iter().map(|v| v.1).sum::<f64>() / n as f64;
            let stderr_db = if n > 1 {
                let var = vals.iter().map(|v| (v.0 - mean_db).powi(2)).sum::<f64>() / (n - 1) as f64;
                (var / n as f64).sqrt()
            } else {
                0.0
            };
            Some(AggregateRecord {
                scheme,
                sweep_name,
                sweep_value,
                n,
                mean_db,
                stderr_db,
                mean_linear,
            })
        })
        .collect()
}

fn write_rows<T: Serialize>(rows: &[T], header: &str, path: &Path) -> Result<()> {
    let fail = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Format {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    };
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(fail)?;
    w.write_record(header.split(',')).map_err(fail)?;
    for r in rows {
        w.serialize(r).map_err(fail)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn read_rows<T: for<'de> Deserialize<'de>>(header: &str, path: &Path) -> Result<Vec<T>> {
    let format = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => format(format!("{other:?}")),
    })?;
    let found = r.headers().map_err(|e| format(e.to_string()))?.iter().collect::<Vec<_>>().join(",");
    if found != header {
        return Err(format(format!("header `{found}` does not match `{header}`")));
    }
    r.deserialize().map(|row| row.map_err(|e| format(e.to_string()))).collect()
}

/// Writes `raw.csv` and `aggregate.csv` into `dir` and returns their paths.
pub fn emit_csv(records: &[ResultRecord], aggregates: &[AggregateRecord], dir: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let raw = dir.join("raw.csv");
    let agg = dir.join("aggregate.csv");
    write_rows(records, RAW_HEADER, &raw)?;
    write_rows(aggregates, AGGREGATE_HEADER, &agg)?;
    Ok((raw, agg))
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<ResultRecord>> {
    read_rows(RAW_HEADER, path.as_ref())
}

pub fn read_aggregates(path: impl AsRef<Path>) -> Result<Vec<AggregateRecord>> {
    read_rows(AGGREGATE_HEADER, path.as_ref())
}

const PALETTE: [RGBColor; 5] = [
    RGBColor(0xd6, 0x27, 0x28),
    RGBColor(0x1f, 0x77, 0xb4),
    RGBColor(0x2c, 0xa0, 0x2c),
    RGBColor(0x94, 0x67, 0xbd),
    RGBColor(0xff, 0x7f, 0x0e),
];

/// Mean min SNR (dB) against the swept quantity, one line per scheme, as SVG.
pub fn emit_plot(aggregates: &[AggregateRecord], figure_id: &str, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut schemes: Vec<Scheme> = Vec::new();
    for a in aggregates {
        if !schemes.contains(&a.scheme) {
            schemes.push(a.scheme);
        }
    }
    if schemes.is_empty() {
        return Err(Error::invalid("nothing to plot: no aggregates"));
    }
    let x_label = aggregates[0]
        .sweep_name
        .parse::<super::SweepVariable>()
        .map(|v| v.axis_label())
        .unwrap_or("sweep value");
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for a in aggregates {
        x0 = x0.min(a.sweep_value);
        x1 = x1.max(a.sweep_value);
        y0 = y0.min(a.mean_db);
        y1 = y1.max(a.mean_db);
    }
    if x0 == x1 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let pad = ((y1 - y0) * 0.1).max(0.5);
    let (y0, y1) = (y0 - pad, y1 + pad);

    let draw = || -> std::result::Result<(), Box<dyn std::error::Error>> {
        let root = SVGBackend::new(path, (800, 560)).into_drawing_area();
        root.fill(&WHITE)?;
        let mut chart = ChartBuilder::on(&root)
            .caption(figure_id, ("sans-serif", 22))
            .margin(16)
            .x_label_area_size(44)
            .y_label_area_size(60)
            .build_cartesian_2d(x0..x1, y0..y1)?;
        chart
            .configure_mesh()
            .x_desc(x_label)
            .y_desc("min SNR (dB)")
            .draw()?;
        for (i, &scheme) in schemes.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<(f64, f64)> = aggregates
                .iter()
                .filter(|a| a.scheme == scheme)
                .map(|a| (a.sweep_value, a.mean_db))
                .collect();
            chart
                .draw_series(LineSeries::new(pts.clone(), color.stroke_width(2)))?
                .label(scheme.id())
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], color.stroke_width(2)));
            chart.draw_series(pts.into_iter().map(|p| Circle::new(p, 4, color.filled())))?;
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()?;
        root.present()?;
        Ok(())
    };
    draw().map_err(|e| Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(scheme: Scheme, value: f64, r: usize, mu: f64) -> ResultRecord {
        ResultRecord {
            scheme,
            sweep_name: "power_dbm".into(),
            sweep_value: value,
            realization: r,
            mu_linear: mu,
            mu_db: 10.0 * mu.log10(),
            wall_ms: 1.25,
            status: "ok".into(),
        }
    }

    #[test]
    fn single_record_aggregate() {
        let a = aggregate(&[rec(Scheme::Fpa, 10.0, 0, 100.0)]);
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].mean_db, 20.0);
        assert_eq!(a[0].stderr_db, 0.0);
        assert_eq!(a[0].mean_linear, 100.0);
    }

    #[test]
    fn equal_records_have_zero_stderr() {
        let a = aggregate(&[rec(Scheme::Fpa, 10.0, 0, 50.0), rec(Scheme::Fpa, 10.0, 1, 50.0)]);
        assert_eq!(a[0].stderr_db, 0.0);
        assert_eq!(a[0].n, 2);
    }

    #[test]
    fn hand_computed_means() {
        // dB values 10, 20, 30 -> mean 20, sd 10, stderr 10/sqrt(3)
        let recs = [
            rec(Scheme::ConPass, 5.0, 0, 10.0),
            rec(Scheme::ConPass, 5.0, 1, 100.0),
            rec(Scheme::ConPass, 5.0, 2, 1000.0),
            rec(Scheme::Fpa, 5.0, 0, 1.0),
        ];
        let a = aggregate(&recs);
        assert_eq!(a.len(), 2);
        assert!((a[0].mean_db - 20.0).abs() < 1e-12);
        assert!((a[0].stderr_db - 10.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((a[0].mean_linear - 370.0).abs() < 1e-9);
        assert_eq!(a[1].scheme, Scheme::Fpa);
    }

    #[test]
    fn failed_records_are_skipped() {
        let mut bad = rec(Scheme::Fpa, 1.0, 1, 1.0);
        bad.mu_linear = f64::NAN;
        bad.mu_db = f64::NAN;
        let a = aggregate(&[rec(Scheme::Fpa, 1.0, 0, 10.0), bad]);
        assert_eq!(a[0].n, 1);
        let mut only_bad = rec(Scheme::Fpa, 2.0, 0, 1.0);
        only_bad.mu_db = f64::NAN;
        assert!(aggregate(&[only_bad]).is_empty());
    }

    #[test]
    fn csv_round_trip_and_schema() {
        let recs = vec![
            rec(Scheme::Pass2dCont, 10.0, 0, 123.456789012345),
            rec(Scheme::Fpa, 10.0, 0, 1.0 / 3.0),
            rec(Scheme::Pass2dDisc, 15.0, 1, 2e-7),
        ];
        let agg = aggregate(&recs);
        let dir = tempfile::tempdir().unwrap();
        let (raw, aggp) = emit_csv(&recs, &agg, dir.path()).unwrap();
        assert_eq!(read_records(&raw).unwrap(), recs);
        assert_eq!(read_aggregates(&aggp).unwrap(), agg);
        let text = std::fs::read_to_string(&raw).unwrap();
        assert_eq!(text.lines().next().unwrap(), RAW_HEADER);
        assert_eq!(text.lines().count(), recs.len() + 1);
        let text = std::fs::read_to_string(&aggp).unwrap();
        assert_eq!(text.lines().next().unwrap(), AGGREGATE_HEADER);
    }

    #[test]
    fn io_errors_name_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        std::fs::write(&file, "x").unwrap();
        let err = emit_csv(&[], &[], file.join("sub")).unwrap_err();
        assert!(err.to_string().contains("plain"));
    }

    #[test]
    fn plot_has_one_polyline_per_scheme() {
        let recs: Vec<_> = [10.0, 20.0, 30.0]
            .iter()
            .map(|&p| rec(Scheme::Pass2dCont, p, 0, p * 3.0))
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.svg");
        emit_plot(&aggregate(&recs), "test", &path).unwrap();
        let svg = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = svg.lines().filter(|l| l.contains("<polyline")).collect();
        // data series plus its legend swatch
        let data: Vec<&&str> = lines.iter().filter(|l| l.matches(',').count() == 3).collect();
        assert_eq!(data.len(), 1);
        assert!(emit_plot(&[], "empty", dir.path().join("e.svg")).is_err());
    }
}
