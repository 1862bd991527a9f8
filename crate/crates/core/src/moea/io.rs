//! Front files: `f1,f2` rows in ascending `f1`, plus an optional sidecar of
//! decision vectors (`x_0,…,x_{n−1}`) in the same row order.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};

use super::{FrontArchive, ObjectiveVector};

pub fn write_front_csv<W: Write>(mut out: W, front: &FrontArchive) -> std::io::Result<()> {
    writeln!(out, "f1,f2")?;
    for s in front.sorted() {
        writeln!(out, "{},{}", s.f.f1(), s.f.f2())?;
    }
    Ok(())
}

pub fn write_sidecar_csv<W: Write>(mut out: W, front: &FrontArchive) -> std::io::Result<()> {
    let sorted = front.sorted();
    let n = sorted.first().map_or(0, |s| s.x.len());
    let header: Vec<String> = (0..n).map(|i| format!("x_{i}")).collect();
    writeln!(out, "{}", header.join(","))?;
    for s in sorted {
        let mut first = true;
        for v in &s.x {
            if !first {
                out.write_all(b",")?;
            }
            write!(out, "{v}")?;
            first = false;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn read_rows(path: &Path, expect_header: impl Fn(&str) -> bool) -> Result<Vec<Vec<f64>>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        if i == 0 {
            if !expect_header(line.trim()) {
                return Err(parse_err(format!("unexpected header `{line}`")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_front_csv(path: &Path) -> Result<Vec<ObjectiveVector>> {
    read_rows(path, |h| h == "f1,f2")?
        .into_iter()
        .enumerate()
        .map(|(i, r)| match r[..] {
            [f1, f2] => Ok(ObjectiveVector::new(f1, f2)),
            _ => Err(Error::Parse {
                path: path.to_path_buf(),
                line: i + 2,
                message: format!("expected 2 columns, got {}", r.len()),
            }),
        })
        .collect()
}

pub fn read_sidecar_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    if !path.exists() {
        return Err(Error::MissingSidecar(path.to_path_buf()));
    }
    read_rows(path, |h| h.is_empty() || h.starts_with("x_0"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moea::Solution;

    #[test]
    fn round_trip_sorted_by_f1() {
        let mut front = FrontArchive::new();
        front.insert(Solution {
            x: vec![0.25, 1.0],
            f: ObjectiveVector::new(2.0, 0.1),
            eval_id: 0,
        });
        front.insert(Solution {
            x: vec![0.1, 1.0 / 3.0],
            f: ObjectiveVector::new(0.5, 3.0),
            eval_id: 1,
        });
        let dir = tempfile::tempdir().unwrap();
        let fp = dir.path().join("front.csv");
        let xp = dir.path().join("front_x.csv");
        write_front_csv(std::fs::File::create(&fp).unwrap(), &front).unwrap();
        write_sidecar_csv(std::fs::File::create(&xp).unwrap(), &front).unwrap();
        let text = std::fs::read_to_string(&fp).unwrap();
        assert_eq!(text, "f1,f2\n0.5,3\n2,0.1\n");
        let xs = read_sidecar_csv(&xp).unwrap();
        assert_eq!(xs, vec![vec![0.1, 1.0 / 3.0], vec![0.25, 1.0]]);
        assert!(std::fs::read_to_string(&xp).unwrap().starts_with("x_0,x_1\n"));
        let fs = read_front_csv(&fp).unwrap();
        assert_eq!(fs[0], ObjectiveVector::new(0.5, 3.0));
        assert!(matches!(
            read_sidecar_csv(&dir.path().join("nope.csv")),
            Err(Error::MissingSidecar(_))
        ));
    }
}
