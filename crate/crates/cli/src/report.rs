use std::fmt::Write as _;

use copocert::{Error, Rational, Support, SymMatrix};

/// Process exit codes.
pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

/// Machine block of `key=value` lines followed by a free-form human block.
#[derive(Debug, Default)]
pub struct Report {
    machine: Vec<(String, String)>,
    human: Vec<String>,
    trailer: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.kv("command", command);
        r
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.machine.push((key.to_string(), value.to_string()));
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.kv(key, value as u8)
    }

    pub fn say(&mut self, line: impl Into<String>) -> &mut Self {
        self.human.push(line.into());
        self
    }

    /// Extra section printed after the human block.
    pub fn trailer(&mut self, text: String) -> &mut Self {
        self.trailer = Some(text);
        self
    }

    pub fn error(&mut self, e: &Error) -> &mut Self {
        self.kv("error", e.code());
        self.kv("message", e.to_string());
        self.say(format!("error: {e}"))
    }

    pub fn render(&self) -> String {
        let mut out = String::from("[machine]\n");
        for (k, v) in &self.machine {
            writeln!(out, "{k}={v}").unwrap();
        }
        out.push_str("[human]\n");
        for line in &self.human {
            writeln!(out, "{line}").unwrap();
        }
        if let Some(t) = &self.trailer {
            out.push_str(t);
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn vector(v: &[Rational]) -> String {
    copocert::io::format_vector(v)
}

pub fn supports(s: &[Support]) -> String {
    if s.is_empty() {
        return "-".into();
    }
    s.iter().map(Support::to_plain).collect::<Vec<_>>().join(";")
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix(a: &SymMatrix) -> String {
    a.rows().iter().map(|r| vector(r)).collect::<Vec<_>>().join(";")
}

pub fn indent(text: &str) -> Vec<String> {
    text.lines().map(|l| format!("  {l}")).collect()
}
