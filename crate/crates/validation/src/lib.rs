//! Reporting helpers for the acceptance suite in `tests/acceptance.rs`.

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }

    /// `name: PASS | detail`
    pub fn line(&self, name: &str) -> String {
        format!(
            "{name}: {} | {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// Collects verdicts and prints one line per criterion as they arrive.
#[derive(Debug, Default)]
pub struct Suite {
    failed: Vec<String>,
}

impl Suite {
    pub fn report(&mut self, name: &str, verdict: Verdict) {
        println!("{}", verdict.line(name));
        if !verdict.passed {
            self.failed.push(name.to_string());
        }
    }

    pub fn failed(&self) -> &[String] {
        &self.failed
    }

    /// Prints the summary line and returns the process exit code.
    pub fn finish(self) -> i32 {
        if self.failed.is_empty() {
            println!("acceptance: all criteria pass");
            0
        } else {
            println!(
                "acceptance: {} failing: {}",
                self.failed.len(),
                self.failed.join(", ")
            );
            1
        }
    }
}
