use serde::{Deserialize, Serialize};

use crate::lattice::Weight;

/// A single failed check, with the chamber (or case) it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub chamber: String,
    pub weight: Option<Weight>,
    pub message: String,
}

impl Finding {
    pub fn new(chamber: String, weight: Option<Weight>, message: String) -> Self {
        Finding {
            chamber,
            weight,
            message,
        }
    }
}

/// Outcome of a verification pass. `checked` counts individual assertions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub group: Option<String>,
    pub checked: usize,
    pub failures: Vec<Finding>,
}

impl VerificationReport {
    pub fn new(name: &str) -> Self {
        VerificationReport {
            name: name.to_string(),
            group: None,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn fail(&mut self, f: Finding) {
        self.failures.push(f);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}
