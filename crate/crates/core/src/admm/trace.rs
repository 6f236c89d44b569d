use serde::Serialize;

/// Residual norms and objective after one iteration (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub iteration: usize,
    pub primal_norm: f64,
    pub dual_norm: f64,
    pub objective: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResidualTrace {
    records: Vec<ResidualRecord>,
}

impl ResidualTrace {
    pub(crate) fn push(&mut self, record: ResidualRecord) {
        debug_assert!(record.primal_norm >= 0.0 && record.dual_norm >= 0.0);
        self.records.push(record);
    }

    pub fn records(&self) -> &[ResidualRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&ResidualRecord> {
        self.records.last()
    }
}
