use alloc::vec::Vec;

/// Witnesses kept per law before further failures are only counted.
pub const DEFAULT_WITNESS_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

/// Outcome of checking a set of laws. `ok()` holds iff no violation was recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Failed instances beyond the per-law cap.
    pub suppressed: usize,
    cap: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_WITNESS_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        ValidationReport { violations: Vec::new(), suppressed: 0, cap: cap.max(1) }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, law: &'static str, witness: &[usize]) {
        let seen = self.violations.iter().filter(|v| v.law == law).count();
        if seen < self.cap {
            self.violations.push(Violation { law, witness: witness.to_vec() });
        } else {
            self.suppressed += 1;
        }
    }

    /// Record a failure of `law` unless `holds`.
    #[inline]
    pub fn check(&mut self, holds: bool, law: &'static str, witness: &[usize]) {
        if !holds {
            self.record(law, witness);
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.record(v.law, &v.witness);
        }
        self.suppressed += other.suppressed;
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}
