use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

/// Resource limits checked cooperatively from inside long-running loops.
///
/// Memory is accounted by the solvers themselves as an estimate of live
/// table entries; there is no allocator hook. Clones share the peak-entry
/// counter.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    max_table_entries: Option<usize>,
    peak: Arc<AtomicUsize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetExceeded {
    #[error("time limit exceeded")]
    Time,
    #[error("memory limit exceeded ({entries} table entries > {limit})")]
    Memory { entries: usize, limit: usize },
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn with_max_table_entries(mut self, entries: usize) -> Self {
        self.max_table_entries = Some(entries);
        self
    }

    /// Largest entry count reported to `checkpoint` so far.
    pub fn peak_entries(&self) -> usize {
        self.peak.load(Ordering::Relaxed)
    }

    pub fn check_time(&self) -> Result<(), BudgetExceeded> {
        match self.deadline {
            Some(deadline) if Instant::now() > deadline => Err(BudgetExceeded::Time),
            _ => Ok(()),
        }
    }

    /// Checks both the deadline and the number of live table entries.
    pub fn checkpoint(&self, entries: usize) -> Result<(), BudgetExceeded> {
        self.peak.fetch_max(entries, Ordering::Relaxed);
        self.check_time()?;
        match self.max_table_entries {
            Some(limit) if entries > limit => Err(BudgetExceeded::Memory { entries, limit }),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlimited_never_trips() {
        let b = Budget::unlimited();
        assert!(b.checkpoint(usize::MAX).is_ok());
    }

    #[test]
    fn entry_limit_trips() {
        let b = Budget::unlimited().with_max_table_entries(10);
        assert!(b.checkpoint(10).is_ok());
        assert_eq!(b.clone().peak_entries(), 10);
        assert_eq!(
            b.checkpoint(11),
            Err(BudgetExceeded::Memory { entries: 11, limit: 10 })
        );
    }

    #[test]
    fn zero_time_limit_trips() {
        let b = Budget::unlimited().with_time_limit(Duration::ZERO);
        std::thread::sleep(Duration::from_millis(2));
        assert_eq!(b.check_time(), Err(BudgetExceeded::Time));
    }
}
