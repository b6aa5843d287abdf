use serde::{Deserialize, Serialize};

/// One verified statement on one instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Check {
    pub anchor: String,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(anchor: &str, instance: impl Into<String>, pass: bool) -> Self {
        Check { anchor: anchor.into(), instance: instance.into(), pass, detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// A check whose computation itself failed.
    pub fn error(anchor: &str, instance: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(anchor, instance, false).with_detail(err.to_string())
    }

    pub fn from_result(anchor: &str, instance: impl Into<String>, r: crate::Result<bool>) -> Self {
        match r {
            Ok(pass) => Check::new(anchor, instance, pass),
            Err(e) => Check::error(anchor, instance, e),
        }
    }
}

/// Rows sorted by anchor, then instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<Check>,
}

impl Report {
    pub fn new(mut rows: Vec<Check>) -> Self {
        rows.sort();
        Report { rows }
    }

    pub fn extend(&mut self, more: impl IntoIterator<Item = Check>) {
        self.rows.extend(more);
        self.rows.sort();
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.rows.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
