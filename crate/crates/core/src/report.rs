//! Results of exhaustive identity checks.

use std::fmt;

/// One named identity, checked on `cases` inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    /// Description of the first failing input, if any.
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// A list of check outcomes, in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.outcomes.extend(other.outcomes);
    }

    /// Run `check` on every case (in parallel) and record the first failure in case order.
    pub fn run<T: Sync>(
        &mut self,
        name: impl Into<String>,
        cases: &[T],
        check: impl Fn(&T) -> Option<String> + Sync,
    ) {
        use rayon::prelude::*;
        let counterexample = cases
            .par_iter()
            .map(&check)
            .find_first(Option::is_some)
            .flatten();
        self.outcomes.push(CheckOutcome {
            name: name.into(),
            cases: cases.len() as u64,
            counterexample,
        });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.counterexample {
                None => writeln!(f, "PASS {} ({} cases)", o.name, o.cases)?,
                Some(c) => writeln!(f, "FAIL {} ({} cases): {}", o.name, o.cases, c)?,
            }
        }
        Ok(())
    }
}
