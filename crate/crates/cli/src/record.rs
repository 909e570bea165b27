//! Flat output rows and the three serializers (JSON lines, CSV, aligned
//! table). Numeric fields are pre-formatted once at 9 significant digits so
//! every format emits byte-identical values and the JSON/CSV round trip is
//! lossless by construction.

use std::io::Write;

/// One value in an output row.
#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    Num(f64),
    Text(String),
}

/// One output row: ordered (name, value) pairs. Field names are stable and
/// identical across the rows of a single invocation.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record { fields: Vec::new() }
    }

    pub fn int(mut self, name: &'static str, v: i64) -> Self {
        self.fields.push((name, Value::Int(v)));
        self
    }

    pub fn num(mut self, name: &'static str, v: f64) -> Self {
        self.fields.push((name, Value::Num(v)));
        self
    }

    pub fn text(mut self, name: &'static str, v: impl Into<String>) -> Self {
        self.fields.push((name, Value::Text(v.into())));
        self
    }

    fn names(&self) -> Vec<&'static str> {
        self.fields.iter().map(|(n, _)| *n).collect()
    }

    fn rendered(&self) -> Vec<String> {
        self.fields.iter().map(|(_, v)| render(v)).collect()
    }
}

/// 9-significant-digit scientific form for floats; integers verbatim.
fn render(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Num(x) => format!("{x:.8e}"),
        Value::Text(s) => s.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Serialize `rows` to `out` in the chosen format. Rows must share one
/// field-name sequence; nothing is printed for an empty row set.
pub fn emit(out: &mut impl Write, rows: &[Record], format: Format) -> std::io::Result<()> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let names = first.names();
    debug_assert!(
        rows.iter().all(|r| r.names() == names),
        "ragged output rows"
    );
    match format {
        Format::Json => {
            for row in rows {
                let mut line = String::from("{");
                for (i, ((name, value), text)) in row.fields.iter().zip(row.rendered()).enumerate()
                {
                    if i > 0 {
                        line.push(',');
                    }
                    line.push_str(&format!("\"{name}\":"));
                    match value {
                        Value::Text(_) => line
                            .push_str(&serde_json::to_string(&text).expect("string serialization")),
                        _ => line.push_str(&text),
                    }
                }
                line.push('}');
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(&names)?;
            for row in rows {
                writer.write_record(row.rendered())?;
            }
            writer.flush()?;
        }
        Format::Table => {
            let rendered: Vec<Vec<String>> = rows.iter().map(Record::rendered).collect();
            let mut widths: Vec<usize> = names.iter().map(|n| n.len()).collect();
            for row in &rendered {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let fmt_line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>width$}", width = *w))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let header: Vec<String> = names.iter().map(|n| n.to_string()).collect();
            writeln!(out, "{}", fmt_line(&header))?;
            for row in &rendered {
                writeln!(out, "{}", fmt_line(row))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Record> {
        vec![
            Record::new()
                .int("l", 0)
                .num("energy", std::f64::consts::FRAC_1_SQRT_2)
                .text("method", "closed"),
            Record::new()
                .int("l", 1)
                .num("energy", -13.6164830)
                .text("method", "wkb"),
        ]
    }

    #[test]
    fn nine_significant_digits_everywhere() {
        assert_eq!(
            render(&Value::Num(std::f64::consts::FRAC_1_SQRT_2)),
            "7.07106781e-1"
        );
        assert_eq!(render(&Value::Num(-13.6164830)), "-1.36164830e1");
        assert_eq!(render(&Value::Num(0.0)), "0.00000000e0");
    }

    #[test]
    fn json_lines_parse_and_match_csv_values() {
        let mut json = Vec::new();
        emit(&mut json, &sample(), Format::Json).unwrap();
        let mut csv_out = Vec::new();
        emit(&mut csv_out, &sample(), Format::Csv).unwrap();

        let json_text = String::from_utf8(json).unwrap();
        let csv_text = String::from_utf8(csv_out).unwrap();
        let mut csv_lines = csv_text.lines();
        assert_eq!(csv_lines.next().unwrap(), "l,energy,method");
        for (line, csv_line) in json_text.lines().zip(csv_lines) {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            let parts: Vec<&str> = csv_line.split(',').collect();
            assert_eq!(v["l"].to_string(), parts[0]);
            assert_eq!(
                v["energy"].as_f64().unwrap(),
                parts[1].parse::<f64>().unwrap()
            );
            assert_eq!(v["method"].as_str().unwrap(), parts[2]);
        }
    }

    #[test]
    fn table_aligns_columns() {
        let mut out = Vec::new();
        emit(&mut out, &sample(), Format::Table).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains("energy"));
        assert!(lines.iter().skip(1).all(|l| l.len() == lines[1].len()));
    }

    #[test]
    fn empty_rows_print_nothing() {
        let mut out = Vec::new();
        emit(&mut out, &[], Format::Table).unwrap();
        assert!(out.is_empty());
    }
}
