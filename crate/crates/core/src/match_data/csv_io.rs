use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;
use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};

use super::{Dataset, MatchRecord, OverSnapshot, Side, Team, MAX_OVERS, MAX_WICKETS};
use crate::{Error, Result};

pub const MATCHES_HEADER: [&str; 9] = [
    "match_id",
    "date",
    "team1",
    "team2",
    "toss_winner",
    "team1_runs",
    "team1_wickets",
    "actual_winner",
    "result_status",
];

pub const SNAPSHOTS_HEADER: [&str; 4] = ["match_id", "overs_bowled", "team2_runs", "team2_wickets"];

/// A tied or no-result row skipped during parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DroppedRow {
    pub line: u64,
    pub match_id: String,
    pub status: String,
}

/// Completed matches from a matches file, plus the rows that were filtered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchFile {
    pub matches: Vec<MatchRecord>,
    pub dropped: Vec<DroppedRow>,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(input)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let found = rdr.headers()?.clone();
    let names: Vec<&str> = found
        .iter()
        .map(|h| h.trim_start_matches('\u{feff}'))
        .collect();
    if names != expected {
        return Err(Error::Header {
            expected: expected.join(","),
            found: names.join(","),
        });
    }
    Ok(())
}

fn line_of(rec: &StringRecord) -> u64 {
    rec.position().map_or(0, |p| p.line())
}

fn field<'r>(rec: &'r StringRecord, idx: usize) -> &'r str {
    rec.get(idx).unwrap_or("")
}

fn number<T: std::str::FromStr>(rec: &StringRecord, idx: usize, name: &'static str) -> Result<T> {
    let raw = field(rec, idx);
    raw.parse().map_err(|_| Error::Parse {
        line: line_of(rec),
        message: format!("{name}: `{raw}` is not a non-negative integer"),
    })
}

fn team(rec: &StringRecord, idx: usize, name: &'static str) -> Result<Team> {
    Team::new(field(rec, idx)).ok_or_else(|| Error::Invalid {
        line: Some(line_of(rec)),
        field: name,
        message: "empty team name".into(),
    })
}

/// Parses `matches.csv`, dropping tied and no-result rows.
pub fn parse_matches(path: impl AsRef<Path>) -> Result<MatchFile> {
    let path = path.as_ref();
    read_matches(open(path)?)
}

pub fn read_matches<R: Read>(input: R) -> Result<MatchFile> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &MATCHES_HEADER)?;

    let mut seen = HashSet::new();
    let mut out = MatchFile {
        matches: Vec::new(),
        dropped: Vec::new(),
    };
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        if rec.len() != MATCHES_HEADER.len() {
            return Err(Error::Parse {
                line,
                message: format!(
                    "expected {} fields, found {}",
                    MATCHES_HEADER.len(),
                    rec.len()
                ),
            });
        }
        let match_id = field(&rec, 0).to_string();
        if match_id.is_empty() {
            return Err(Error::Invalid {
                line: Some(line),
                field: "match_id",
                message: "empty".into(),
            });
        }
        if !seen.insert(match_id.clone()) {
            return Err(Error::DuplicateMatch { line, match_id });
        }

        let status = field(&rec, 8).to_ascii_lowercase();
        match status.as_str() {
            "completed" => {}
            "tied" | "no_result" => {
                out.dropped.push(DroppedRow {
                    line,
                    match_id,
                    status,
                });
                continue;
            }
            other => {
                return Err(Error::Invalid {
                    line: Some(line),
                    field: "result_status",
                    message: format!("`{other}` is not one of completed, tied, no_result"),
                })
            }
        }

        let date = NaiveDate::parse_from_str(field(&rec, 1), "%Y-%m-%d").map_err(|e| {
            Error::Parse {
                line,
                message: format!("date: `{}`: {e}", field(&rec, 1)),
            }
        })?;
        let team1 = team(&rec, 2, "team1")?;
        let team2 = team(&rec, 3, "team2")?;
        let toss_winner = team(&rec, 4, "toss_winner")?;
        let team1_runs: u32 = number(&rec, 5, "team1_runs")?;
        let team1_wickets: u8 = number(&rec, 6, "team1_wickets")?;

        let winner_raw = field(&rec, 7);
        let actual_winner = match Team::new(winner_raw) {
            Some(t) if t == team1 => Side::Team1,
            Some(t) if t == team2 => Side::Team2,
            _ if winner_raw.eq_ignore_ascii_case("team1") => Side::Team1,
            _ if winner_raw.eq_ignore_ascii_case("team2") => Side::Team2,
            _ => {
                return Err(Error::Invalid {
                    line: Some(line),
                    field: "actual_winner",
                    message: format!("`{winner_raw}` is neither team1 nor team2"),
                })
            }
        };

        let record = MatchRecord {
            match_id,
            date,
            team1,
            team2,
            toss_winner,
            team1_runs,
            team1_wickets,
            actual_winner,
        };
        record.check().map_err(|e| match e {
            Error::Invalid { field, message, .. } => Error::Invalid {
                line: Some(line),
                field,
                message,
            },
            other => other,
        })?;
        out.matches.push(record);
    }
    Ok(out)
}

/// Parses `snapshots.csv` and joins it onto already-parsed matches.
pub fn parse_snapshots(path: impl AsRef<Path>, matches: Vec<MatchRecord>) -> Result<Dataset> {
    let path = path.as_ref();
    read_snapshots(open(path)?, matches)
}

pub fn read_snapshots<R: Read>(input: R, matches: Vec<MatchRecord>) -> Result<Dataset> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &SNAPSHOTS_HEADER)?;

    let known: HashSet<&str> = matches.iter().map(|m| m.match_id.as_str()).collect();
    let mut snapshots = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        if rec.len() != SNAPSHOTS_HEADER.len() {
            return Err(Error::Parse {
                line,
                message: format!(
                    "expected {} fields, found {}",
                    SNAPSHOTS_HEADER.len(),
                    rec.len()
                ),
            });
        }
        let match_id = field(&rec, 0).to_string();
        if !known.contains(match_id.as_str()) {
            return Err(Error::OrphanSnapshot {
                line: Some(line),
                match_id,
            });
        }
        let overs_bowled: u8 = number(&rec, 1, "overs_bowled")?;
        let team2_runs: u32 = number(&rec, 2, "team2_runs")?;
        let team2_wickets: u8 = number(&rec, 3, "team2_wickets")?;
        if !(1..=MAX_OVERS).contains(&overs_bowled) {
            return Err(Error::Invalid {
                line: Some(line),
                field: "overs_bowled",
                message: format!("{overs_bowled} is outside 1..=50"),
            });
        }
        if team2_wickets > MAX_WICKETS {
            return Err(Error::Invalid {
                line: Some(line),
                field: "team2_wickets",
                message: format!("{team2_wickets} is outside 0..=10"),
            });
        }
        snapshots.push(OverSnapshot {
            match_id,
            overs_bowled,
            team2_runs,
            team2_wickets,
        });
    }
    Dataset::new(matches, snapshots)
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

pub fn write_matches(path: impl AsRef<Path>, matches: &[MatchRecord]) -> Result<()> {
    let path = path.as_ref();
    write_matches_to(create(path)?, matches)
}

pub fn write_matches_to<W: Write>(out: W, matches: &[MatchRecord]) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(out);
    w.write_record(MATCHES_HEADER)?;
    for m in matches {
        w.write_record([
            m.match_id.as_str(),
            &m.date.format("%Y-%m-%d").to_string(),
            m.team1.as_str(),
            m.team2.as_str(),
            m.toss_winner.as_str(),
            &m.team1_runs.to_string(),
            &m.team1_wickets.to_string(),
            m.team(m.actual_winner).as_str(),
            "completed",
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn write_snapshots(path: impl AsRef<Path>, dataset: &Dataset) -> Result<()> {
    let path = path.as_ref();
    write_snapshots_to(create(path)?, dataset)
}

pub fn write_snapshots_to<W: Write>(out: W, dataset: &Dataset) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(out);
    w.write_record(SNAPSHOTS_HEADER)?;
    for s in dataset.snapshots() {
        w.write_record([
            s.match_id.as_str(),
            &s.overs_bowled.to_string(),
            &s.team2_runs.to_string(),
            &s.team2_wickets.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}
