use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use csv::{ReaderBuilder, Trim, WriterBuilder};
use thiserror::Error;

use crate::{Error, Result};

/// Rows of the grid: overs left, 1..=50.
pub const OVERS_LEFT: u8 = 50;
/// Columns of the grid: wickets lost, 0..=9.
pub const WICKET_COLUMNS: u8 = 10;

const BUNDLED: &str = include_str!("../../data/resource_table.csv");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("cell out of range: overs_left {overs_left} (expected 1..=50), wickets_lost {wickets_lost} (expected 0..=9)")]
    Index { overs_left: i64, wickets_lost: i64 },

    #[error("value {value} at overs_left {overs_left}, wickets_lost {wickets_lost} is outside 0..=100")]
    Value {
        overs_left: u8,
        wickets_lost: u8,
        value: f64,
    },

    #[error("value at overs_left 50, wickets_lost 0 is {0}, expected 100.0")]
    Anchor(f64),

    #[error("column w{wickets_lost} rises from {above} at overs_left {} to {below} at overs_left {overs_left}", .overs_left + 1)]
    OversOrder {
        overs_left: u8,
        wickets_lost: u8,
        above: f64,
        below: f64,
    },

    #[error("row overs_left {overs_left} rises from {left} at w{} to {right} at w{wickets_lost}", .wickets_lost - 1)]
    WicketOrder {
        overs_left: u8,
        wickets_lost: u8,
        left: f64,
        right: f64,
    },

    #[error("resource table csv line {line}: {message}")]
    Format { line: u64, message: String },
}

/// Percentage of chasing resources remaining, by overs left and wickets lost.
///
/// Values are held in tenths of a percent, the precision of the published
/// table and of the CSV format, so par scores are computed in exact integer
/// arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResourceTable {
    // [overs_left - 1][wickets_lost]
    tenths: [[u16; WICKET_COLUMNS as usize]; OVERS_LEFT as usize],
}

fn check_index(overs_left: u8, wickets_lost: u8) -> Result<(), TableError> {
    if (1..=OVERS_LEFT).contains(&overs_left) && wickets_lost < WICKET_COLUMNS {
        Ok(())
    } else {
        Err(TableError::Index {
            overs_left: overs_left.into(),
            wickets_lost: wickets_lost.into(),
        })
    }
}

pub(crate) fn to_tenths(value: f64) -> Option<u16> {
    let t = (value * 10.0).round();
    (value.is_finite() && (0.0..=1000.0).contains(&t)).then_some(t as u16)
}

impl ResourceTable {
    /// Builds a table from `value(overs_left, wickets_lost)` and runs the full
    /// validation. Values are rounded to one decimal.
    pub fn from_fn(value: impl FnMut(u8, u8) -> f64) -> Result<ResourceTable, TableError> {
        let table = Self::from_fn_unvalidated(value)?;
        table.validate()?;
        Ok(table)
    }

    /// Like [`ResourceTable::from_fn`] but only checks that each value lies in
    /// `[0, 100]`. Used for unconstrained optimization output.
    pub fn from_fn_unvalidated(
        mut value: impl FnMut(u8, u8) -> f64,
    ) -> Result<ResourceTable, TableError> {
        let mut tenths = [[0u16; WICKET_COLUMNS as usize]; OVERS_LEFT as usize];
        for overs_left in 1..=OVERS_LEFT {
            for wickets_lost in 0..WICKET_COLUMNS {
                let v = value(overs_left, wickets_lost);
                tenths[usize::from(overs_left - 1)][usize::from(wickets_lost)] = to_tenths(v)
                    .ok_or(TableError::Value {
                        overs_left,
                        wickets_lost,
                        value: v,
                    })?;
            }
        }
        Ok(ResourceTable { tenths })
    }

    /// The bundled 50 x 10 table.
    pub fn standard() -> ResourceTable {
        static STANDARD: OnceLock<ResourceTable> = OnceLock::new();
        STANDARD
            .get_or_init(|| {
                Self::read_csv(BUNDLED.as_bytes()).expect("bundled resource table is valid")
            })
            .clone()
    }

    pub fn value(&self, overs_left: u8, wickets_lost: u8) -> Result<f64, TableError> {
        check_index(overs_left, wickets_lost)?;
        Ok(f64::from(self.tenths_at(overs_left, wickets_lost)) / 10.0)
    }

    /// Value in tenths of a percent. Panics on an out-of-range index.
    pub(crate) fn tenths_at(&self, overs_left: u8, wickets_lost: u8) -> u16 {
        self.tenths[usize::from(overs_left - 1)][usize::from(wickets_lost)]
    }

    pub(crate) fn set_tenths(&mut self, overs_left: u8, wickets_lost: u8, tenths: u16) {
        self.tenths[usize::from(overs_left - 1)][usize::from(wickets_lost)] = tenths;
    }

    /// One wicket column ordered from overs_left 50 down to 1.
    pub fn column(&self, wickets_lost: u8) -> Vec<f64> {
        (1..=OVERS_LEFT)
            .rev()
            .map(|x| f64::from(self.tenths_at(x, wickets_lost)) / 10.0)
            .collect()
    }

    /// Full check: bounds, the (50, 0) = 100 anchor, columns non-increasing
    /// as overs run out and rows non-increasing as wickets fall.
    pub fn validate(&self) -> Result<(), TableError> {
        let anchor = self.tenths_at(OVERS_LEFT, 0);
        if anchor != 1000 {
            return Err(TableError::Anchor(f64::from(anchor) / 10.0));
        }
        for w in 0..WICKET_COLUMNS {
            self.validate_column(w)?;
        }
        for x in 1..=OVERS_LEFT {
            for w in 1..WICKET_COLUMNS {
                let (left, right) = (self.tenths_at(x, w - 1), self.tenths_at(x, w));
                if right > left {
                    return Err(TableError::WicketOrder {
                        overs_left: x,
                        wickets_lost: w,
                        left: f64::from(left) / 10.0,
                        right: f64::from(right) / 10.0,
                    });
                }
            }
        }
        Ok(())
    }

    /// Checks that one column never rises as overs_left decreases.
    pub fn validate_column(&self, wickets_lost: u8) -> Result<(), TableError> {
        check_index(OVERS_LEFT, wickets_lost)?;
        for x in 1..OVERS_LEFT {
            let (above, below) = (self.tenths_at(x + 1, wickets_lost), self.tenths_at(x, wickets_lost));
            if below > above {
                return Err(TableError::OversOrder {
                    overs_left: x,
                    wickets_lost,
                    above: f64::from(above) / 10.0,
                    below: f64::from(below) / 10.0,
                });
            }
        }
        Ok(())
    }

    /// Loads and fully validates a `resource_table.csv` file.
    pub fn load(path: impl AsRef<Path>) -> Result<ResourceTable> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let table = Self::read_csv(file)?;
        Ok(table)
    }

    /// Reads the CSV format without the monotonicity checks.
    pub fn load_unvalidated(path: impl AsRef<Path>) -> Result<ResourceTable> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::read_csv_unvalidated(file)?)
    }

    pub fn read_csv<R: Read>(input: R) -> Result<ResourceTable, TableError> {
        let table = Self::read_csv_unvalidated(input)?;
        table.validate()?;
        Ok(table)
    }

    pub fn read_csv_unvalidated<R: Read>(input: R) -> Result<ResourceTable, TableError> {
        let format = |line: u64, message: String| TableError::Format { line, message };
        let mut rdr = ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(Trim::All)
            .from_reader(input);

        let header = rdr.headers().map_err(|e| format(1, e.to_string()))?.clone();
        let expected = header_row();
        let found: Vec<&str> = header.iter().map(|h| h.trim_start_matches('\u{feff}')).collect();
        if found != expected {
            return Err(format(
                1,
                format!("header must be `{}`, found `{}`", expected.join(","), found.join(",")),
            ));
        }

        let mut tenths = [[0u16; WICKET_COLUMNS as usize]; OVERS_LEFT as usize];
        let mut seen = [false; OVERS_LEFT as usize];
        for rec in rdr.records() {
            let rec = rec.map_err(|e| format(0, e.to_string()))?;
            let line = rec.position().map_or(0, |p| p.line());
            if rec.len() != 1 + usize::from(WICKET_COLUMNS) {
                return Err(format(line, format!("expected 11 fields, found {}", rec.len())));
            }
            let x: u8 = rec[0]
                .parse()
                .ok()
                .filter(|x| (1..=OVERS_LEFT).contains(x))
                .ok_or_else(|| format(line, format!("overs_left `{}` is not in 1..=50", &rec[0])))?;
            if std::mem::replace(&mut seen[usize::from(x - 1)], true) {
                return Err(format(line, format!("overs_left {x} appears twice")));
            }
            for w in 0..WICKET_COLUMNS {
                let raw = &rec[usize::from(w) + 1];
                let v: f64 = raw
                    .parse()
                    .map_err(|_| format(line, format!("w{w}: `{raw}` is not a number")))?;
                tenths[usize::from(x - 1)][usize::from(w)] = to_tenths(v).ok_or(TableError::Value {
                    overs_left: x,
                    wickets_lost: w,
                    value: v,
                })?;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(format(0, format!("overs_left {} is missing", missing + 1)));
        }
        Ok(ResourceTable { tenths })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(file)
    }

    /// Writes 50 rows, overs_left 50 first, one decimal per value.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = WriterBuilder::new().from_writer(out);
        w.write_record(header_row())?;
        for x in (1..=OVERS_LEFT).rev() {
            let mut row = vec![x.to_string()];
            row.extend((0..WICKET_COLUMNS).map(|c| {
                let t = self.tenths_at(x, c);
                format!("{}.{}", t / 10, t % 10)
            }));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }
}

fn header_row() -> Vec<String> {
    std::iter::once("overs_left".to_string())
        .chain((0..WICKET_COLUMNS).map(|w| format!("w{w}")))
        .collect()
}
