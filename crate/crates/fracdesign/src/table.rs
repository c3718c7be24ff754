//! Design tables: CSV with one header row of factor names and one row per
//! selected run, values written as integers or `p/q`.

use std::io::{Read, Write};
use std::path::Path;

use fracdesign_core::rational;
use fracdesign_core::{DesignSpace, Fraction};

use crate::error::{Error, Result};

pub fn read_table<R: Read>(space: &DesignSpace, reader: R) -> Result<Fraction> {
    let mut csv = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let n = space.factor_count();
    let header_len = csv.headers()?.len();
    if header_len != n {
        return Err(Error::Table(format!("header has {} column(s), the space has {} factor(s)", header_len, n)));
    }
    let mut points = Vec::new();
    for (line, record) in csv.records().enumerate() {
        let record = record?;
        let point = record
            .iter()
            .map(|v| rational::parse(v).map_err(|e| Error::Table(format!("row {}: {}", line + 1, e))))
            .collect::<Result<Vec<_>>>()?;
        points.push(point);
    }
    Ok(space.fraction_from_points(&points)?)
}

pub fn read_table_file(space: &DesignSpace, path: &Path) -> Result<Fraction> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_table(space, file)
}

pub fn write_table<W: Write>(space: &DesignSpace, fraction: &Fraction, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record((1..=space.factor_count()).map(|j| format!("x{}", j)))?;
    for point in space.points_of(fraction) {
        csv.write_record(point.iter().map(rational::format))?;
    }
    csv.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub fn table_string(space: &DesignSpace, fraction: &Fraction) -> String {
    let mut buf = Vec::new();
    write_table(space, fraction, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is UTF-8")
}
