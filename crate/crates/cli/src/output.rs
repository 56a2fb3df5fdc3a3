use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = qmi_orbits::SCHEMA_VERSION;

/// 17 significant digits, enough to round-trip every double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_to(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(f);
            w.write_all(text.as_bytes()).with_context(|| format!("writing {}", p.display()))?;
            w.flush().with_context(|| format!("writing {}", p.display()))?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing to stdout")?;
        }
    }
    Ok(())
}

/// JSON document with `schema_version` as its first field.
#[derive(Serialize)]
pub struct Versioned<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn json<T: Serialize>(kind: &str, body: T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Versioned { schema_version: SCHEMA_VERSION, kind, body })?;
    s.push('\n');
    Ok(s)
}

/// CSV text starting with a `# schema_version` comment line.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(meta: &str, header: &[&str]) -> Self {
        let mut text = format!("# schema_version: {SCHEMA_VERSION}");
        if !meta.is_empty() {
            text.push_str(", ");
            text.push_str(meta);
        }
        text.push('\n');
        text.push_str(&header.join(","));
        text.push('\n');
        Csv { text }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}
