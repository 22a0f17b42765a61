//! ANSI styling for terminal output. Only used when stdout/stderr is a
//! terminal, and never when `NONASSOC_COLOR=0`.

use std::io::IsTerminal;

pub struct Style {
    out: bool,
    err: bool,
}

impl Style {
    pub fn detect() -> Self {
        let enabled = std::env::var("NONASSOC_COLOR").map_or(true, |v| v != "0");
        Style {
            out: enabled && std::io::stdout().is_terminal(),
            err: enabled && std::io::stderr().is_terminal(),
        }
    }

    pub fn label(&self, text: &str) -> String {
        if self.out {
            format!("\x1b[1m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    pub fn error(&self, text: &str) -> String {
        if self.err {
            format!("\x1b[1;31m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}
