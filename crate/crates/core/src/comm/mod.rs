//! Communication accounting: the ledger the simulated runtime writes and the
//! closed-form model it is checked against.

mod ledger;
mod model;

pub use ledger::{CommLedger, Convention, NodeRole, Traffic};
pub use model::{
    derived_hybrid_vs_sectioning, efficiency_report, format_tenths, frontier_hybrid_vs_consensus,
    frontier_hybrid_vs_sectioning, frontier_sectioning_vs_consensus, per_node_elements,
    per_node_elements_for, ratio, reduction_tenths, reduction_vs_consensus, EfficiencyReport,
    Scheme, Verdict,
};
