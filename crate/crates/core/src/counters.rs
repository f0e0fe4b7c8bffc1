/// Operation counters accumulated over a batch of queries. Owned by the
/// caller; the index itself never mutates shared state during queries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub queries: u64,
    /// Successful whole-meta-symbol child transitions in the sampled tree.
    pub meta_steps: u64,
    /// Predecessor/successor resolutions of a final partial meta-symbol.
    pub pred_ops: u64,
    pub jumps: u64,
    /// Shifted-LCP evaluations made while binary searching sorted suffixes.
    pub shifted_lcp_evals: u64,
    /// Sampled-vs-sampled LCP evaluations used to widen a match range.
    pub boundary_lcp_evals: u64,
    pub restricted_searches: u64,
    pub max_restricted_leaves: u64,
    pub range_queries: u64,
    pub small_queries: u64,
    pub naive_scans: u64,
}

impl Counters {
    pub fn merge(&mut self, other: &Counters) {
        self.queries += other.queries;
        self.meta_steps += other.meta_steps;
        self.pred_ops += other.pred_ops;
        self.jumps += other.jumps;
        self.shifted_lcp_evals += other.shifted_lcp_evals;
        self.boundary_lcp_evals += other.boundary_lcp_evals;
        self.restricted_searches += other.restricted_searches;
        self.max_restricted_leaves = self.max_restricted_leaves.max(other.max_restricted_leaves);
        self.range_queries += other.range_queries;
        self.small_queries += other.small_queries;
        self.naive_scans += other.naive_scans;
    }

    pub fn is_zero(&self) -> bool {
        *self == Counters::default()
    }
}
