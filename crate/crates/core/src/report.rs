//! Small verdict vocabulary shared by the checkers.

/// Aggregate verdict over a set of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rollup {
    Pass,
    Fail,
    Inconclusive,
}

impl Rollup {
    /// Fail dominates, then inconclusive, then pass.
    pub fn combine(self, other: Rollup) -> Rollup {
        use Rollup::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn combine_all(verdicts: impl IntoIterator<Item = Rollup>) -> Rollup {
        verdicts
            .into_iter()
            .fold(Rollup::Pass, |acc, v| acc.combine(v))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rollup::Pass => "pass",
            Rollup::Fail => "fail",
            Rollup::Inconclusive => "inconclusive",
        }
    }
}

/// Location of the first failure of a pointwise check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationAt {
    /// A sequence index.
    Index(usize),
    /// A matrix cell.
    Cell { row: usize, col: usize },
}

impl std::fmt::Display for ViolationAt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ViolationAt::Index(n) => write!(f, "n={n}"),
            ViolationAt::Cell { row, col } => write!(f, "n={row},v={col}"),
        }
    }
}

/// Outcome of an exact pointwise check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOutcome {
    pub pass: bool,
    /// First place the check failed, when it did.
    pub violation: Option<ViolationAt>,
}

impl CheckOutcome {
    pub fn passed() -> Self {
        CheckOutcome {
            pass: true,
            violation: None,
        }
    }

    pub fn failed_at(at: ViolationAt) -> Self {
        CheckOutcome {
            pass: false,
            violation: Some(at),
        }
    }

    pub fn rollup(&self) -> Rollup {
        if self.pass {
            Rollup::Pass
        } else {
            Rollup::Fail
        }
    }
}
