use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned `key  value` lines.
    Text,
    /// One `key=value` pair per line.
    #[value(name = "json-like-lines", alias = "kv")]
    KeyValue,
}

/// Ordered key/value pairs; the order of insertion is the order of output.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.entries {
            match format {
                OutputFormat::Text => out.push_str(&format!("{k:<width$}  {v}\n")),
                OutputFormat::KeyValue => out.push_str(&format!("{k}={v}\n")),
            }
        }
        out
    }

    pub fn emit(&self, format: OutputFormat) -> io::Result<()> {
        let mut stdout = io::stdout().lock();
        stdout.write_all(self.render(format).as_bytes())?;
        stdout.flush()
    }
}

pub fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}
