//! Plain string tables rendered as CSV or a LaTeX tabular.

use hhq_core::report::Format;

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn rows(mut self, rows: impl IntoIterator<Item = Vec<String>>) -> Self {
        self.extend(rows);
        self
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<String>>) {
        self.rows.extend(rows);
    }

    /// JSON callers serialize their own structs; here it falls back to CSV.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Latex => self.latex(),
            Format::Json | Format::Csv => self.csv(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in std::iter::once(&self.header).chain(&self.rows) {
            w.write_record(row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
    }

    fn latex(&self) -> String {
        let cols = "l".repeat(self.header.len());
        let mut s = format!("\\begin{{tabular}}{{{cols}}}\n\\hline\n");
        let line = |row: &[String]| row.iter().map(|c| latex_cell(c)).collect::<Vec<_>>().join(" & ") + " \\\\\n";
        s.push_str(&line(&self.header));
        s.push_str("\\hline\n");
        for row in &self.rows {
            s.push_str(&line(row));
        }
        s.push_str("\\hline\n\\end{tabular}\n");
        s
    }
}

fn latex_cell(c: &str) -> String {
    let mut out = String::with_capacity(c.len());
    for ch in c.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            _ => out.push(ch),
        }
    }
    out
}
