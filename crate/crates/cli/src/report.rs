use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "wkit/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    #[default]
    Text,
}

/// Output of one subcommand in all three formats, plus the verdict of any
/// verification it performed.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    fields: Map<String, Value>,
    text: Vec<String>,
    latex: Vec<String>,
    pub verified: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            text: Vec::new(),
            latex: Vec::new(),
            verified: true,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    /// Adds a line to the text and LaTeX outputs.
    pub fn line(&mut self, text: impl Into<String>, latex: impl Into<String>) {
        self.text.push(text.into());
        self.latex.push(latex.into());
    }

    /// Adds the same line to both human-readable outputs.
    pub fn note(&mut self, line: impl Into<String>) {
        let line = line.into();
        self.line(line.clone(), line);
    }

    pub fn check(&mut self, ok: bool) {
        self.verified &= ok;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut doc = self.fields.clone();
                doc.insert("schema".into(), SCHEMA.into());
                doc.insert("command".into(), self.command.into());
                doc.insert("verified".into(), self.verified.into());
                let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
                out.push('\n');
                out
            }
            Format::Text => lines(&self.text),
            Format::Latex => lines(&self.latex),
        }
    }
}

fn lines(ls: &[String]) -> String {
    let mut out = ls.join("\n");
    out.push('\n');
    out
}
