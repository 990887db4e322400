//! Corpus CSV formats.
//!
//! Wide: `paper_id,pub_year,c0,c1,...,c{n-1}`, one row per paper. A row may
//! leave trailing count cells empty when the paper has a shorter history, but
//! an empty cell followed by a filled one is a gap and is rejected.
//!
//! Long: `paper_id,pub_year,rel_year,count`, one row per paper-year. Rows are
//! grouped by paper in order of first appearance and each paper's relative
//! years must cover `0..n` exactly.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::trajectory::{CitationTrajectory, TrajectoryCorpus};

fn parse_err(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    parse_err(path, line, e.to_string())
}

fn parse_count(path: &Path, line: u64, cell: &str) -> Result<u64> {
    let cell = cell.trim();
    if cell.starts_with('-') {
        return Err(parse_err(path, line, format!("negative count `{cell}`")));
    }
    cell.parse::<u64>()
        .map_err(|_| parse_err(path, line, format!("invalid count `{cell}`")))
}

fn parse_year(path: &Path, line: u64, cell: &str) -> Result<i32> {
    cell.trim()
        .parse::<i32>()
        .map_err(|_| parse_err(path, line, format!("invalid year `{cell}`")))
}

pub(crate) fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

/// Parse a wide-format corpus. `origin` labels error messages.
pub fn read_wide<R: Read>(reader: R, origin: &Path) -> Result<TrajectoryCorpus> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_err(origin, e))?.clone();
    if headers.len() < 3 || &headers[0] != "paper_id" || &headers[1] != "pub_year" {
        return Err(parse_err(
            origin,
            1,
            "expected header `paper_id,pub_year,c0,...`",
        ));
    }
    for (i, h) in headers.iter().skip(2).enumerate() {
        if h != format!("c{i}") {
            return Err(parse_err(
                origin,
                1,
                format!("expected column `c{i}`, found `{h}`"),
            ));
        }
    }

    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_err(origin, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() > headers.len() {
            return Err(parse_err(origin, line, "more cells than header columns"));
        }
        if record.len() < 3 {
            return Err(parse_err(origin, line, "row has no counts"));
        }
        let id = record[0].to_string();
        let year = parse_year(origin, line, &record[1])?;
        let cells: Vec<&str> = record.iter().skip(2).collect();
        let filled = cells.iter().rposition(|c| !c.is_empty()).map_or(0, |p| p + 1);
        if let Some(gap) = cells[..filled].iter().position(|c| c.is_empty()) {
            return Err(parse_err(
                origin,
                line,
                format!("missing count for year c{gap}"),
            ));
        }
        let counts = cells[..filled]
            .iter()
            .map(|c| parse_count(origin, line, c))
            .collect::<Result<Vec<_>>>()?;
        let traj = CitationTrajectory::new(id, year, counts)
            .map_err(|e| parse_err(origin, line, e.to_string()))?;
        out.push(traj);
    }
    Ok(TrajectoryCorpus::new(out))
}

/// Parse a long-format corpus, checking year contiguity per paper.
pub fn read_long<R: Read>(reader: R, origin: &Path) -> Result<TrajectoryCorpus> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_err(origin, e))?.clone();
    let expected = ["paper_id", "pub_year", "rel_year", "count"];
    if headers.iter().ne(expected.iter().copied()) {
        return Err(parse_err(
            origin,
            1,
            "expected header `paper_id,pub_year,rel_year,count`",
        ));
    }

    struct Pending {
        year: i32,
        first_line: u64,
        cells: Vec<Option<u64>>,
    }
    let mut order: Vec<String> = Vec::new();
    let mut by_id: HashMap<String, Pending> = HashMap::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_err(origin, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let id = record[0].to_string();
        let year = parse_year(origin, line, &record[1])?;
        let rel: usize = record[2]
            .parse()
            .map_err(|_| parse_err(origin, line, format!("invalid rel_year `{}`", &record[2])))?;
        let count = parse_count(origin, line, &record[3])?;
        let entry = by_id.entry(id.clone()).or_insert_with(|| {
            order.push(id.clone());
            Pending {
                year,
                first_line: line,
                cells: Vec::new(),
            }
        });
        if entry.year != year {
            return Err(parse_err(
                origin,
                line,
                format!("pub_year for `{id}` changes from {} to {year}", entry.year),
            ));
        }
        if entry.cells.len() <= rel {
            entry.cells.resize(rel + 1, None);
        }
        if entry.cells[rel].replace(count).is_some() {
            return Err(parse_err(
                origin,
                line,
                format!("duplicate rel_year {rel} for `{id}`"),
            ));
        }
    }

    let mut out = Vec::with_capacity(order.len());
    for id in order {
        let p = by_id.remove(&id).expect("id recorded in order");
        if let Some(gap) = p.cells.iter().position(Option::is_none) {
            return Err(parse_err(
                origin,
                p.first_line,
                format!("`{id}` has no row for rel_year {gap}"),
            ));
        }
        let counts = p.cells.into_iter().map(|c| c.unwrap()).collect();
        out.push(CitationTrajectory::new(id, p.year, counts)?);
    }
    Ok(TrajectoryCorpus::new(out))
}

/// Write a wide-format corpus. Column count follows the longest trajectory.
pub fn write_wide<W: Write>(corpus: &TrajectoryCorpus, writer: W) -> Result<()> {
    let width = corpus.iter().map(|t| t.len()).max().unwrap_or(0);
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    let mut header = vec!["paper_id".to_string(), "pub_year".to_string()];
    header.extend((0..width).map(|i| format!("c{i}")));
    w.write_record(&header).map_err(csv_io)?;
    for t in corpus.iter() {
        let mut row = vec![t.paper_id().to_string(), t.publication_year().to_string()];
        row.extend(t.counts().iter().map(u64::to_string));
        row.resize(width + 2, String::new());
        w.write_record(&row).map_err(csv_io)?;
    }
    w.flush().map_err(|e| Error::io(PathBuf::from("<csv>"), e))?;
    Ok(())
}

pub(crate) fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io("<csv>", io),
        other => Error::Config(format!("csv write failed: {other:?}")),
    }
}

pub fn read_wide_path(path: &Path) -> Result<TrajectoryCorpus> {
    read_wide(open(path)?, path)
}

pub fn read_long_path(path: &Path) -> Result<TrajectoryCorpus> {
    read_long(open(path)?, path)
}

pub fn write_wide_path(corpus: &TrajectoryCorpus, path: &Path) -> Result<()> {
    write_wide(corpus, create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wide(s: &str) -> Result<TrajectoryCorpus> {
        read_wide(s.as_bytes(), Path::new("test.csv"))
    }

    fn long(s: &str) -> Result<TrajectoryCorpus> {
        read_long(s.as_bytes(), Path::new("test.csv"))
    }

    #[test]
    fn reads_wide_rows() {
        let c = wide("paper_id,pub_year,c0,c1,c2\na,2005,1,2,3\nb,2006,4,5,\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.trajectories[0].counts(), &[1, 2, 3]);
        assert_eq!(c.trajectories[1].counts(), &[4, 5]);
        assert_eq!(c.trajectories[1].publication_year(), 2006);
    }

    #[test]
    fn negative_count_reports_line() {
        let err = wide("paper_id,pub_year,c0,c1\na,2005,1,2\nb,2005,3,-1\n").unwrap_err();
        match err {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("negative"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gap_in_wide_row_rejected() {
        let err = wide("paper_id,pub_year,c0,c1,c2\na,2005,1,,3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn bad_header_rejected() {
        assert!(wide("id,year,c0\na,1,2\n").is_err());
        assert!(wide("paper_id,pub_year,c1\na,1,2\n").is_err());
    }

    #[test]
    fn long_format_assembles_and_checks_contiguity() {
        let c = long(
            "paper_id,pub_year,rel_year,count\n\
             a,2005,1,4\nb,2001,0,7\na,2005,0,3\na,2005,2,0\n",
        )
        .unwrap();
        assert_eq!(c.trajectories[0].paper_id(), "a");
        assert_eq!(c.trajectories[0].counts(), &[3, 4, 0]);
        assert_eq!(c.trajectories[1].counts(), &[7]);

        assert!(long("paper_id,pub_year,rel_year,count\na,2005,0,1\na,2005,2,1\n").is_err());
        assert!(long("paper_id,pub_year,rel_year,count\na,2005,0,1\na,2005,0,1\n").is_err());
        assert!(long("paper_id,pub_year,rel_year,count\na,2005,0,1\na,2006,1,1\n").is_err());
    }

    #[test]
    fn wide_write_then_read() {
        let c = wide("paper_id,pub_year,c0,c1,c2\na,2005,1,2,3\nb,2006,4,5,\n").unwrap();
        let mut buf = Vec::new();
        write_wide(&c, &mut buf).unwrap();
        let back = read_wide(buf.as_slice(), Path::new("mem")).unwrap();
        assert_eq!(back, c);
    }
}
