//! Operation cost counters.

use std::ops::Sub;

/// Counters for the work a heap performs.
///
/// `comparisons` counts every key comparison, including the ones made by
/// pivot searches; `search_comparisons` is the pivot-search share of it and
/// `max_search` the largest single search since the last [`CostMeter::begin_op`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CostMeter {
    pub comparisons: u64,
    pub search_comparisons: u64,
    pub max_search: u64,
    pub searches: u64,
    pub node_moves: u64,
    pub list_links: u64,
    pub selection_elements: u64,
}

impl CostMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    /// Marks an operation boundary; only the per-operation maximum is cleared.
    pub fn begin_op(&mut self) {
        self.max_search = 0;
    }

    #[inline]
    pub fn compare(&mut self, n: u64) {
        self.comparisons += n;
    }

    #[inline]
    pub(crate) fn record_search(&mut self, probes: u64) {
        self.comparisons += probes;
        self.search_comparisons += probes;
        self.searches += 1;
        self.max_search = self.max_search.max(probes);
    }

    #[inline]
    pub fn moved(&mut self, n: u64) {
        self.node_moves += n;
    }

    #[inline]
    pub fn linked(&mut self, n: u64) {
        self.list_links += n;
    }

    #[inline]
    pub fn selected(&mut self, n: u64) {
        self.selection_elements += n;
    }

    /// Elements touched: comparisons, node moves and selection work combined.
    pub fn element_touches(&self) -> u64 {
        self.comparisons + self.node_moves + self.selection_elements
    }
}

impl Sub for CostMeter {
    type Output = CostMeter;

    /// Counter difference. `max_search` is taken from `self` unchanged since
    /// it is already a per-operation value.
    fn sub(self, rhs: CostMeter) -> CostMeter {
        CostMeter {
            comparisons: self.comparisons - rhs.comparisons,
            search_comparisons: self.search_comparisons - rhs.search_comparisons,
            max_search: self.max_search,
            searches: self.searches - rhs.searches,
            node_moves: self.node_moves - rhs.node_moves,
            list_links: self.list_links - rhs.list_links,
            selection_elements: self.selection_elements - rhs.selection_elements,
        }
    }
}
