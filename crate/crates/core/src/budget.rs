/// Work limits for the exhaustive and exponential procedures. Exceeding one
/// yields [`crate::Error::BudgetExceeded`], never an approximate answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Outcomes the brute-force oracle may visit.
    pub outcomes: u64,
    /// Profiles the dynamic program may hold in a single layer.
    pub dp_states: u64,
    /// Joint misreports the manipulation search may try.
    pub misreports: u64,
    /// Project types (2^n) the compressed program may index.
    pub types: u64,
    /// Search nodes for the compressed program's branch and bound.
    pub search_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            outcomes: 10_000_000,
            dp_states: 2_000_000,
            misreports: 1 << 22,
            types: 1 << 12,
            search_nodes: 50_000_000,
        }
    }
}
