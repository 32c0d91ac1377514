use std::fmt::Display;

/// `key: value` lines printed on stdout after every successful solve.
#[derive(Default)]
pub struct RunReport {
    lines: Vec<(String, String)>,
}

impl RunReport {
    pub fn set(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn print(&self) {
        for (k, v) in &self.lines {
            println!("{k}: {v}");
        }
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
