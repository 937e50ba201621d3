//! Line-oriented report building shared by queries and demos.

/// One report fact. Machine mode prints `section<TAB>key<TAB>value`; human
/// mode groups lines under section headers.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub section: String,
    pub key: String,
    pub value: String,
}

impl Line {
    pub fn new(
        section: impl Into<String>,
        key: impl Into<String>,
        value: impl Into<String>,
    ) -> Self {
        Self {
            section: section.into(),
            key: key.into(),
            value: value.into(),
        }
    }
}

/// Formats with 12 decimal places and trims trailing zeros, so values that
/// are exact up to float dust print in their short form.
pub fn num(x: f64) -> String {
    let mut s = format!("{x:.12}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn vector(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| num(*x))
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders the report; output is deterministic for identical inputs.
pub fn render(lines: &[Line], machine: bool) -> String {
    let mut out = String::new();
    if machine {
        for l in lines {
            out.push_str(&format!("{}\t{}\t{}\n", l.section, l.key, l.value));
        }
        return out;
    }
    let mut current: Option<&str> = None;
    for l in lines {
        if current != Some(l.section.as_str()) {
            out.push_str(&format!("[{}]\n", l.section));
            current = Some(l.section.as_str());
        }
        out.push_str(&format!("  {} = {}\n", l.key, l.value));
    }
    out
}
