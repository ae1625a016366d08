use std::fmt::Write as _;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub status: Status,
    pub name: String,
    /// The witness for failures, a value for info lines.
    pub detail: Option<String>,
    pub elapsed: Option<Duration>,
}

/// Outcome of a command: free-form body lines followed by named checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub body: Vec<String>,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.body.push(text.into());
    }

    fn push(&mut self, status: Status, name: &str, detail: Option<String>) {
        self.entries.push(Entry {
            status,
            name: name.to_string(),
            detail,
            elapsed: None,
        });
    }

    /// A check that passes iff `witness` is `None`.
    pub fn check(&mut self, name: &str, witness: Option<String>) {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.push(status, name, witness);
    }

    pub fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.push(Status::Info, name, Some(detail.into()));
    }

    /// Run `f` and attach its wall time to the entries it adds.
    pub fn timed<T>(&mut self, f: impl FnOnce(&mut Report) -> T) -> T {
        let before = self.entries.len();
        let start = Instant::now();
        let out = f(self);
        let elapsed = start.elapsed();
        for e in &mut self.entries[before..] {
            e.elapsed = Some(elapsed);
        }
        out
    }

    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn render(&self, timings: bool) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            let _ = writeln!(out, "{}", self.title);
        }
        for l in &self.body {
            let _ = writeln!(out, "{l}");
        }
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            let _ = write!(out, "{tag}  {}", e.name);
            if let Some(d) = &e.detail {
                let _ = write!(out, ": {d}");
            }
            if let (true, Some(t)) = (timings, e.elapsed) {
                let _ = write!(out, " [{:.3} ms]", t.as_secs_f64() * 1e3);
            }
            out.push('\n');
        }
        if !self.entries.is_empty() {
            let _ = writeln!(out, "result: {}", if self.failed() { "fail" } else { "pass" });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_status() {
        let mut r = Report::new("t");
        r.check("a", None);
        r.info("b", "x");
        assert!(!r.failed());
        assert_eq!(r.render(false), "t\npass  a\ninfo  b: x\nresult: pass\n");
        r.timed(|r| r.check("c", Some("w".into())));
        assert!(r.failed());
        assert!(r.render(true).contains("FAIL  c: w ["));
        assert!(r.render(false).ends_with("FAIL  c: w\nresult: fail\n"));
    }
}
