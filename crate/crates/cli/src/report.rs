//! CSV rendering of experiment rows and atomic file output.

use std::io::Write;
use std::path::Path;

use spectral_lempert::calg::scalar::{fmt_complex, fmt_real};
use spectral_lempert::experiments::{ExampleRow, PropBRow, Step1Row};

use crate::svg::Series;
use crate::CliError;

pub const PROP_B_HEADER: &str = "j,t,gap,cyclic,f1,f2,f3,ratio";
pub const EXAMPLE_HEADER: &str = "t,explicit_ratio,optimized_ratio,relation3_residual,certificate_admissible";
pub const STEP1_HEADER: &str = "t,x_over_t,y_over_t2";

fn opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

fn csv(header: &str, lines: impl Iterator<Item = String>) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for l in lines {
        s.push_str(&l);
        s.push('\n');
    }
    s
}

pub fn prop_b_csv(rows: &[PropBRow]) -> String {
    csv(
        PROP_B_HEADER,
        rows.iter().map(|r| {
            format!(
                "{},{},{},{},{},{},{},{}",
                r.j,
                fmt_real(r.t.re),
                fmt_real(r.c32_over_t_gap),
                r.cyclic,
                fmt_complex(r.f1),
                fmt_complex(r.f2),
                fmt_complex(r.f3),
                opt(r.ratio)
            )
        }),
    )
}

pub fn example_csv(rows: &[ExampleRow]) -> String {
    csv(
        EXAMPLE_HEADER,
        rows.iter().map(|r| {
            format!(
                "{},{},{},{},{}",
                fmt_real(r.t),
                fmt_real(r.explicit_ratio),
                opt(r.optimized_ratio),
                fmt_real(r.relation3_residual),
                r.certificate_admissible
            )
        }),
    )
}

pub fn step1_csv(rows: &[Step1Row]) -> String {
    csv(
        STEP1_HEADER,
        rows.iter().map(|r| format!("{},{},{}", fmt_real(r.t.re), fmt_complex(r.x_over_t), fmt_complex(r.y_over_t2))),
    )
}

pub fn prop_b_series(rows: &[PropBRow]) -> Vec<Series> {
    vec![Series::new("ratio", rows.iter().filter_map(|r| r.ratio.map(|y| (r.t.re, y))).collect())]
}

pub fn example_series(rows: &[ExampleRow]) -> Vec<Series> {
    vec![
        Series::new("explicit_ratio", rows.iter().map(|r| (r.t, r.explicit_ratio)).collect()),
        Series::new("optimized_ratio", rows.iter().filter_map(|r| r.optimized_ratio.map(|y| (r.t, y))).collect()),
    ]
}

pub fn step1_series(rows: &[Step1Row]) -> Vec<Series> {
    vec![
        Series::new("x_over_t", rows.iter().map(|r| (r.t.re, r.x_over_t.re)).collect()),
        Series::new("y_over_t2", rows.iter().map(|r| (r.t.re, r.y_over_t2.re)).collect()),
    ]
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_lempert::experiments::{prop_b_run, Perturbation};

    #[test]
    fn prop_b_layout() {
        let rows = prop_b_run(4..=5, &Perturbation::ConstantB);
        let s = prop_b_csv(&rows);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], PROP_B_HEADER);
        assert_eq!(lines.len(), 3);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "4");
        assert_eq!(fields[1], "0.0625");
        assert_eq!(fields[3], "true");
        assert!(fields[4].ends_with('i'));
        let ratio: f64 = fields[7].parse().unwrap();
        assert!((ratio - (3.0f64 / 16.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn flagged_rows_leave_ratio_empty() {
        let rows = prop_b_run(0..=0, &Perturbation::ConstantB);
        assert!(prop_b_csv(&rows).lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_atomic(&p, "a\n").unwrap();
        write_atomic(&p, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
