//! Plain-text file formats.
//!
//! * matrices: `n` lines of `n` comma-separated numbers, no header; a blank
//!   or `NaN` cell marks a missing dissimilarity;
//! * configurations: header `index,re,im`, one point per line;
//! * traces: header `t,E,r,g_inf,r_over_rM`;
//! * edge lists: `u v [weight]` per line, `#` starts a comment.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::dissimilarity::DissimilarityData;
use crate::error::{Error, Result};
use crate::geometry::{Configuration, DiskPoint};
use crate::matrix::SquareMatrix;
use crate::solver::{IterationRecord, MultiStart, SweepPoint};

use super::graph::{Edge, GraphInput};

pub const CONFIG_HEADER: [&str; 3] = ["index", "re", "im"];
pub const TRACE_HEADER: [&str; 5] = ["t", "E", "r", "g_inf", "r_over_rM"];
pub const PATH_HEADER: [&str; 4] = ["t", "index", "re", "im"];
pub const SWEEP_HEADER: [&str; 4] = ["scale", "best_error", "iterations", "stop_reason"];
pub const SUMMARY_HEADER: [&str; 4] = ["replicate", "final_error", "iterations", "stop_reason"];

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn reader(path: &Path, has_headers: bool) -> Result<csv::Reader<File>> {
    Ok(csv::ReaderBuilder::new()
        .has_headers(has_headers)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?)
}

/// Full-precision (17 significant digit) rendering.
fn exact(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reads a square matrix; missing cells come back as `NaN`.
pub fn read_matrix_csv(path: &Path) -> Result<SquareMatrix> {
    let mut rows = Vec::new();
    for (i, rec) in reader(path, false)?.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(k, cell)| {
                if cell.is_empty() || cell.eq_ignore_ascii_case("nan") {
                    Ok(f64::NAN)
                } else {
                    cell.parse::<f64>().map_err(|_| {
                        parse_err(
                            path,
                            i + 1,
                            format!("column {}: not a number: {cell:?}", k + 1),
                        )
                    })
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(parse_err(
            path,
            i + 1,
            format!("expected {n} fields, found {}", rows[i].len()),
        ));
    }
    Ok(SquareMatrix::from_rows(rows).expect("shape checked"))
}

/// Reads a dissimilarity matrix and, optionally, a weight matrix of the same
/// shape. Missing cells in the dissimilarity file become missing pairs.
pub fn read_dissimilarity_csv(path: &Path, weights: Option<&Path>) -> Result<DissimilarityData> {
    let raw = read_matrix_csv(path)?;
    let n = raw.n();
    for j in 0..n {
        for k in 0..n {
            if raw.get(j, k).is_nan() != raw.get(k, j).is_nan() {
                return Err(parse_err(
                    path,
                    j + 1,
                    format!(
                        "entry ({},{}) is missing but its mirror is not",
                        j + 1,
                        k + 1
                    ),
                ));
            }
        }
        if raw.get(j, j).is_nan() {
            return Err(parse_err(path, j + 1, "diagonal entry is missing"));
        }
    }
    let indicator: Vec<bool> = (0..n * n)
        .map(|i| i / n != i % n && !raw.get(i / n, i % n).is_nan())
        .collect();
    let weights = match weights {
        Some(wp) => {
            let w = read_matrix_csv(wp)?;
            if w.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    actual: w.n(),
                });
            }
            Some(w.map(|x| if x.is_nan() { 1.0 } else { x }))
        }
        None => None,
    };
    DissimilarityData::new(
        raw.map(|x| if x.is_nan() { 1.0 } else { x }),
        weights,
        Some(indicator),
    )
}

pub fn write_matrix_csv(path: &Path, m: &SquareMatrix) -> Result<()> {
    write_matrix_masked(path, m, |_, _| true)
}

fn write_matrix_masked(
    path: &Path,
    m: &SquareMatrix,
    known: impl Fn(usize, usize) -> bool,
) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)?;
    for j in 0..m.n() {
        w.write_record((0..m.n()).map(|k| {
            if j == k || known(j, k) {
                m.get(j, k).to_string()
            } else {
                String::new()
            }
        }))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the dissimilarities with missing pairs as blank cells.
pub fn write_dissimilarity_csv(path: &Path, data: &DissimilarityData) -> Result<()> {
    write_matrix_masked(path, data.delta_matrix(), |j, k| data.is_active(j, k))
}

pub fn write_configuration_csv(path: &Path, config: &Configuration) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CONFIG_HEADER)?;
    for (i, p) in config.iter().enumerate() {
        w.write_record([i.to_string(), exact(p.re()), exact(p.im())])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `index,re,im` rows. Indices must run `0..n` in order.
pub fn read_configuration_csv(path: &Path) -> Result<Configuration> {
    let mut points = Vec::new();
    for (i, rec) in reader(path, true)?.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        if rec.len() != 3 {
            return Err(parse_err(
                path,
                line,
                format!("expected 3 fields, found {}", rec.len()),
            ));
        }
        let idx: usize = rec[0]
            .parse()
            .map_err(|_| parse_err(path, line, format!("bad index {:?}", &rec[0])))?;
        if idx != i {
            return Err(parse_err(
                path,
                line,
                format!("expected index {i}, found {idx}"),
            ));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| parse_err(path, line, format!("not a number: {s:?}")))
        };
        let p = DiskPoint::try_new(num(&rec[1])?, num(&rec[2])?)
            .map_err(|e| parse_err(path, line, e.to_string()))?;
        points.push(p);
    }
    Configuration::new(points).map_err(|e| parse_err(path, 1, e.to_string()))
}

pub fn write_trace_csv(path: &Path, trace: &[IterationRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(TRACE_HEADER)?;
    for rec in trace {
        w.write_record([
            rec.t.to_string(),
            rec.error.to_string(),
            rec.step.to_string(),
            rec.g_inf.to_string(),
            rec.step_ratio.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a sequence of configurations as `t,index,re,im` rows; frame `t` is
/// the configuration after `t` iterations.
pub fn write_path_csv(path: &Path, configs: &[Configuration]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(PATH_HEADER)?;
    for (t, cfg) in configs.iter().enumerate() {
        for (i, p) in cfg.iter().enumerate() {
            w.write_record([t.to_string(), i.to_string(), exact(p.re()), exact(p.im())])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_path_csv(path: &Path) -> Result<Vec<Configuration>> {
    let mut frames: Vec<Vec<DiskPoint>> = Vec::new();
    for (i, rec) in reader(path, true)?.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        if rec.len() != 4 {
            return Err(parse_err(
                path,
                line,
                format!("expected 4 fields, found {}", rec.len()),
            ));
        }
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(path, line, format!("bad integer {s:?}")))
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| parse_err(path, line, format!("not a number: {s:?}")))
        };
        let (t, idx) = (int(&rec[0])?, int(&rec[1])?);
        let fresh = t == frames.len();
        if !(fresh || t + 1 == frames.len()) || (fresh && idx != 0) {
            return Err(parse_err(path, line, format!("unexpected frame {t}")));
        }
        if fresh {
            frames.push(Vec::new());
        }
        let frame = &mut frames[t];
        if idx != frame.len() {
            return Err(parse_err(
                path,
                line,
                format!("expected index {}, found {idx}", frame.len()),
            ));
        }
        frame.push(
            DiskPoint::try_new(num(&rec[2])?, num(&rec[3])?)
                .map_err(|e| parse_err(path, line, e.to_string()))?,
        );
    }
    frames
        .into_iter()
        .map(|f| Configuration::new(f).map_err(|e| parse_err(path, 1, e.to_string())))
        .collect()
}

/// One row per scale: the best error over the replicates at that scale.
pub fn write_sweep_csv(path: &Path, points: &[SweepPoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SWEEP_HEADER)?;
    for p in points {
        w.write_record([
            p.scale.to_string(),
            p.best_error.to_string(),
            p.best.iterations().to_string(),
            p.best.stop_reason.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the `(scale, best_error)` columns of a sweep file.
pub fn read_sweep_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (i, rec) in reader(path, true)?.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let num = |k: usize| {
            let cell = rec.get(k).unwrap_or("");
            cell.parse::<f64>().map_err(|_| {
                parse_err(
                    path,
                    line,
                    format!("column {}: not a number: {cell:?}", k + 1),
                )
            })
        };
        rows.push((num(0)?, num(1)?));
    }
    Ok(rows)
}

/// One row per replicate, in replicate order.
pub fn write_replicate_summary<C>(path: &Path, ms: &MultiStart<C>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SUMMARY_HEADER)?;
    for (i, run) in ms.runs.iter().enumerate() {
        w.write_record([
            i.to_string(),
            run.final_error.to_string(),
            run.iterations().to_string(),
            run.stop_reason.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `index,node_id` rows mapping compacted graph nodes to their original ids.
pub fn write_mapping_csv(path: &Path, mapping: &[u64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["index", "node_id"])?;
    for (i, id) in mapping.iter().enumerate() {
        w.write_record([i.to_string(), id.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a whitespace-separated edge list.
pub fn read_edge_list(path: &Path) -> Result<GraphInput> {
    let file = BufReader::new(File::open(path)?);
    let mut edges = Vec::new();
    for (i, line) in file.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_err(path, i + 1, "expected \"u v [weight]\""));
        }
        let id = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| parse_err(path, i + 1, format!("bad node id {s:?}")))
        };
        let weight = match fields.get(2) {
            Some(s) => Some(
                s.parse::<f64>()
                    .map_err(|_| parse_err(path, i + 1, format!("bad weight {s:?}")))?,
            ),
            None => None,
        };
        edges.push(Edge {
            u: id(fields[0])?,
            v: id(fields[1])?,
            weight,
        });
    }
    GraphInput::new(edges)
}

pub fn write_edge_list(path: &Path, g: &GraphInput) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for e in g.edges() {
        match e.weight {
            Some(wt) => writeln!(w, "{} {} {wt}", e.u, e.v)?,
            None => writeln!(w, "{} {}", e.u, e.v)?,
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads rows of numeric features. A first line that does not parse as
/// numbers is taken as a header and skipped.
pub fn read_feature_table(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (i, rec) in reader(path, false)?.records().enumerate() {
        let rec = rec?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(parse_err(path, i + 1, "non-numeric feature")),
        }
    }
    Ok(rows)
}

/// `<dir>/<stem><suffix>` for a sibling output file.
pub fn sibling_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::random_configuration;
    use std::fs;

    #[test]
    fn two_by_two_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.csv");
        fs::write(&p, "0,1\n1,0\n").unwrap();
        let d = read_dissimilarity_csv(&p, None).unwrap();
        let q = dir.path().join("out.csv");
        write_dissimilarity_csv(&q, &d).unwrap();
        assert_eq!(fs::read_to_string(&q).unwrap(), "0,1\n1,0\n");
        assert_eq!(read_dissimilarity_csv(&q, None).unwrap(), d);
    }

    #[test]
    fn blank_and_nan_cells_are_missing() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.csv");
        fs::write(&p, "0,1,\n1,0,2\n,2,0\n").unwrap();
        let d = read_dissimilarity_csv(&p, None).unwrap();
        assert!(!d.is_active(0, 2) && !d.is_active(2, 0));
        assert!(d.is_active(1, 2));
        fs::write(&p, "0,1,NaN\n1,0,2\nnan,2,0\n").unwrap();
        assert_eq!(read_dissimilarity_csv(&p, None).unwrap(), d);
    }

    #[test]
    fn invalid_matrices_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.csv");
        for bad in [
            "0,1\n1.5,0\n",
            "0,-1\n-1,0\n",
            "1,1\n1,1\n",
            "0,1,2\n1,0\n",
            "0,x\nx,0\n",
            "0,1\n,0\n",
        ] {
            fs::write(&p, bad).unwrap();
            assert!(read_dissimilarity_csv(&p, None).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn weights_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let (m, w) = (dir.path().join("m.csv"), dir.path().join("w.csv"));
        fs::write(&m, "0,1\n1,0\n").unwrap();
        fs::write(&w, "0,3\n3,0\n").unwrap();
        let d = read_dissimilarity_csv(&m, Some(&w)).unwrap();
        assert_eq!(d.weight(0, 1), 3.0);
        fs::write(&w, "0,3,1\n3,0,1\n1,1,0\n").unwrap();
        assert!(read_dissimilarity_csv(&m, Some(&w)).is_err());
    }

    #[test]
    fn configuration_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        let cfg = random_configuration(9, 3).unwrap();
        write_configuration_csv(&p, &cfg).unwrap();
        let text = fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("index,re,im\n"));
        assert_eq!(read_configuration_csv(&p).unwrap(), cfg);

        let frames = vec![cfg.clone(), random_configuration(9, 4).unwrap()];
        write_path_csv(&p, &frames).unwrap();
        assert_eq!(read_path_csv(&p).unwrap(), frames);
    }

    #[test]
    fn configuration_outside_disk_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        fs::write(&p, "index,re,im\n0,0.1,0\n1,1.0,0.0\n").unwrap();
        assert!(matches!(
            read_configuration_csv(&p),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn edge_list_parsing() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.txt");
        fs::write(&p, "# books\n1 2\n2\t3 0.5  # weighted\n\n").unwrap();
        let g = read_edge_list(&p).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.edges()[1].weight, Some(0.5));
        fs::write(&p, "1 2 3 4\n").unwrap();
        assert!(read_edge_list(&p).is_err());
    }

    #[test]
    fn feature_table_skips_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        fs::write(&p, "a,b\n1,2\n3,4.5\n").unwrap();
        assert_eq!(
            read_feature_table(&p).unwrap(),
            vec![vec![1.0, 2.0], vec![3.0, 4.5]]
        );
    }
}
