use std::io::Write;

/// A CSV document: `# key = value` metadata lines, one header line, rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string().replace('\n', " ")));
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k} = {v}")?;
        }
        let line = |fields: &[String]| fields.iter().map(|f| escape(f)).collect::<Vec<_>>().join(",");
        writeln!(out, "{}", line(&self.header))?;
        for r in &self.rows {
            writeln!(out, "{}", line(r))?;
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

/// Shortest round-trip representation, scientific for very small or large
/// magnitudes; `nan` for missing values.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e6) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}
