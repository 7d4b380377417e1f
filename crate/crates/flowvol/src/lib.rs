//! Exact-arithmetic toolkit for flow polytopes of full DAGs.
//!
//! The family under study: directed acyclic multigraphs on vertices
//! `1..=n+1` whose inner vertices all have in- and out-degree 2 and whose
//! source has out-degree 3. Members are indexed by binary words of length
//! `n - 2`, the bit flips are realized by edge interchanges, and the
//! normalized volumes of the unit flow polytopes reverse the resulting
//! Boolean order. Every quantity here is an exact integer: volumes are
//! Kostant partition function values, computed by flow decomposition trees
//! or a frontier dynamic program, and cross-checked against linear extension
//! counts of the bipartite non-crossing trees dual to the members.

pub mod dag;
pub mod dual;
pub mod error;
pub mod family;
pub mod flow;
pub mod io;
pub mod proof;

mod counts;

pub use dag::{Dag, DegreeSequence, Edge, EdgePair, PairKind, Vertex};
pub use dual::{
    count_bnt, count_linear_extensions, crossing_positions, dag_from_tree, embed,
    enumerate_bnt, linear_extensions, tree_from_word, truncated_dual, verify_duality,
    word_from_tree, DualityReport, ExtensionMethod, FlipCheck, MemberDuality,
    PlanarEmbedding, RankOnePoset,
};
pub use error::{Error, Result};
pub use family::{
    brute_force_family, dag_from_word, enumerate_family, hasse_lattice, word_from_dag, BinaryWord,
    HasseLattice, InterchangePair, LatticeCover,
};
pub use flow::{
    branch_count, children, compositions_count, enumerate_partial_flows, inflow_bound_check,
    kostant, lidskii_volume, volume_f1, FlowCounter, FlowNode, FlowTree, KostantMethod,
    NetflowVector, PartialFlow, VolumeFormula,
};
pub use io::{DagDocument, EdgeRecord, Report, Summary};
pub use proof::{
    leaf_identities, verify_order_reversal, verify_proof_machinery, CoverVolumes,
    InterchangeContext, LeafIdentities, NodeClass, OrderReversalReport, ProofSweepReport,
};
