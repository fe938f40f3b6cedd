//! Tabular output: numeric curves and name/value reports, both as CSV.

use crate::CliError;

/// Twelve significant digits in scientific notation with trailing zeros of
/// the mantissa removed, e.g. `1e0`, `-9.18e-3`.
pub fn format_value(x: f64) -> String {
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s
        .split_once('e')
        .expect("scientific format has an exponent");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    let mantissa = if mantissa == "-0" { "0" } else { mantissa };
    format!("{mantissa}e{exp}")
}

/// A curve: first column is the abscissa, every further column one series.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn new(header: &[&str], rows: Vec<Vec<f64>>) -> Result<Self, CliError> {
        let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != header.len() {
                return Err(CliError::Render(format!(
                    "row {i} has {} cells, header has {}",
                    row.len(),
                    header.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(CliError::Render(format!(
                    "row {i} contains non-finite value {bad}"
                )));
            }
        }
        Ok(Self { header, rows })
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = writer();
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_value(v)))
                .map_err(csv_err)?;
        }
        finish(w)
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header: Vec<String> = r
            .headers()
            .map_err(csv_err)?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(csv_err)?;
            let row = rec
                .iter()
                .map(|c| {
                    c.parse::<f64>()
                        .map_err(|_| CliError::Render(format!("unparsable cell `{c}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let names: Vec<&str> = header.iter().map(String::as_str).collect();
        Self::new(&names, rows)
    }
}

/// Rows of `name,value`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<(String, f64)>,
}

impl Report {
    pub fn push(&mut self, name: &str, value: f64) {
        self.rows.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.rows.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = writer();
        w.write_record(["name", "value"]).map_err(csv_err)?;
        for (name, v) in &self.rows {
            if !v.is_finite() {
                return Err(CliError::Render(format!(
                    "report value `{name}` is not finite"
                )));
            }
            w.write_record([name.as_str(), &format_value(*v)])
                .map_err(csv_err)?;
        }
        finish(w)
    }
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Render(e.to_string()))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Render(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(format_value(1.0), "1e0");
        assert_eq!(format_value(0.0), "0e0");
        assert_eq!(format_value(-0.0), "0e0");
        assert_eq!(format_value(-0.00918), "-9.18e-3");
        assert_eq!(format_value(2.0 / 3.0), "6.66666666667e-1");
        assert_eq!(
            format_value(1.0 / 3.0).parse::<f64>().unwrap(),
            0.333333333333
        );
    }

    #[test]
    fn round_trip() {
        let c = Curve::new(&["tau", "eta"], vec![vec![0.5, 0.9575], vec![1.0, 0.0]]).unwrap();
        let text = c.to_csv().unwrap();
        assert_eq!(text, "tau,eta\n5e-1,9.575e-1\n1e0,0e0\n");
        assert_eq!(Curve::from_csv(&text).unwrap(), c);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Curve::new(&["x", "y"], vec![vec![0.0, f64::NAN]]).is_err());
        assert!(Curve::new(&["x", "y"], vec![vec![0.0]]).is_err());
    }
}
