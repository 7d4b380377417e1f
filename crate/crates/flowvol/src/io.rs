//! Serialization: the JSON DAG document, verification reports, and DOT
//! exports. Output is deterministic byte for byte; nothing here emits
//! timestamps or machine-dependent data.

use crate::dag::Dag;
use crate::dual::RankOnePoset;
use crate::error::{Error, Result};
use crate::family::{dag_from_word, word_from_dag, BinaryWord, HasseLattice};
use crate::flow::FlowTree;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub tail: usize,
    pub head: usize,
    pub slot: usize,
}

/// On-disk form of a DAG. The edge list must be canonical (sorted, dense
/// slots), and when a word is present it must reproduce the edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DagDocument {
    pub schema_version: String,
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

impl DagDocument {
    /// Captures a DAG; family members also record their word.
    pub fn from_dag(dag: &Dag) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            n: dag.n(),
            edges: dag
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    tail: e.tail,
                    head: e.head,
                    slot: e.slot,
                })
                .collect(),
            word: word_from_dag(dag).ok().map(|w| w.to_string()),
        }
    }

    pub fn to_dag(&self) -> Result<Dag> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                got: self.schema_version.clone(),
                want: SCHEMA_VERSION,
            });
        }
        let dag = Dag::new(self.n + 1, self.edges.iter().map(|e| (e.tail, e.head)))?;
        let canonical: Vec<EdgeRecord> = dag
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                tail: e.tail,
                head: e.head,
                slot: e.slot,
            })
            .collect();
        if canonical != self.edges {
            return Err(Error::DocumentNotCanonical);
        }
        if let Some(word) = &self.word {
            if dag_from_word(&BinaryWord::parse(word)?) != dag {
                return Err(Error::WordMismatch);
            }
        }
        Ok(dag)
    }
}

pub fn dag_to_json(dag: &Dag) -> String {
    let mut s = serde_json::to_string_pretty(&DagDocument::from_dag(dag))
        .expect("document serialization is infallible");
    s.push('\n');
    s
}

pub fn dag_from_json(text: &str) -> Result<Dag> {
    serde_json::from_str::<DagDocument>(text)?.to_dag()
}

/// Pass/fail tallies of a report; always equal to the item tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A machine-readable command result: the command echo, one JSON value per
/// item, and the summary.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub items: Vec<serde_json::Value>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            items: Vec::new(),
            summary: Summary {
                total: 0,
                passed: 0,
                failed: 0,
            },
        }
    }

    pub fn push(&mut self, item: serde_json::Value, passed: bool) {
        self.items.push(item);
        self.summary.total += 1;
        if passed {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

/// DOT digraph with one statement per edge instance; parallel copies repeat.
pub fn dag_to_dot(dag: &Dag) -> String {
    let mut out = String::from("digraph dag {\n  rankdir=LR;\n");
    for v in 1..=dag.vertex_count() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in dag.edges() {
        out.push_str(&format!("  {} -> {};\n", e.tail, e.head));
    }
    out.push_str("}\n");
    out
}

/// DOT Hasse diagram of a rank-1 poset, lower rank at the bottom.
pub fn dual_to_dot(poset: &RankOnePoset) -> String {
    let mut out = String::from("digraph dual {\n  rankdir=BT;\n  { rank=min;");
    for x in 1..=poset.lower_count() {
        out.push_str(&format!(" x{x};"));
    }
    out.push_str(" }\n  { rank=max;");
    for y in 1..=poset.upper_count() {
        out.push_str(&format!(" y{y};"));
    }
    out.push_str(" }\n");
    for &(x, y) in poset.relations() {
        out.push_str(&format!("  x{x} -> y{y};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT Hasse diagram of the Boolean lattice with covers labelled by their
/// interchanges.
pub fn lattice_to_dot(lattice: &HasseLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for word in lattice.nodes() {
        out.push_str(&format!("  \"{word}\";\n"));
    }
    for cover in lattice.covers() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            lattice.word(cover.lower),
            lattice.word(cover.upper),
            cover.pair
        ));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a flow decomposition tree. Nodes are named by their
/// composition address and labelled with their assigned values and leaf
/// count.
pub fn flow_tree_to_dot(tree: &FlowTree) -> String {
    let name = |id: usize| {
        let address = tree.address(id);
        if address.is_empty() {
            "n".to_string()
        } else {
            let parts: Vec<String> = address.iter().map(|r| r.to_string()).collect();
            format!("n_{}", parts.join("_"))
        }
    };
    let mut out = String::from("digraph flowtree {\n  rankdir=TB;\n");
    for id in 0..tree.node_count() {
        let node = tree.node(id);
        out.push_str(&format!(
            "  {} [label=\"{} l={}\"];\n",
            name(id),
            node.partial,
            node.leaf_count
        ));
    }
    for id in 0..tree.node_count() {
        for &child in &tree.node(id).children {
            out.push_str(&format!("  {} -> {};\n", name(id), name(child)));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::hasse_lattice;
    use crate::flow::NetflowVector;

    fn member(bits: &str) -> Dag {
        dag_from_word(&BinaryWord::parse(bits).unwrap())
    }

    #[test]
    fn document_round_trip() {
        for bits in ["00", "11", "0101"] {
            let dag = member(bits);
            let doc = DagDocument::from_dag(&dag);
            assert_eq!(doc.word.as_deref(), Some(bits));
            assert_eq!(doc.to_dag().unwrap(), dag);
            assert_eq!(dag_from_json(&dag_to_json(&dag)).unwrap(), dag);
        }
        // Non-members round trip without a word.
        let path = Dag::new(3, vec![(1, 2), (2, 3)]).unwrap();
        let doc = DagDocument::from_dag(&path);
        assert_eq!(doc.word, None);
        assert_eq!(doc.to_dag().unwrap(), path);
    }

    #[test]
    fn document_rejects_corruption() {
        let mut doc = DagDocument::from_dag(&member("00"));
        doc.schema_version = "0".into();
        assert!(matches!(doc.to_dag(), Err(Error::SchemaVersion { .. })));

        let mut doc = DagDocument::from_dag(&member("00"));
        doc.edges.swap(0, 2);
        assert!(matches!(doc.to_dag(), Err(Error::DocumentNotCanonical)));

        let mut doc = DagDocument::from_dag(&member("00"));
        doc.edges[1].slot = 5;
        assert!(matches!(doc.to_dag(), Err(Error::DocumentNotCanonical)));

        let mut doc = DagDocument::from_dag(&member("00"));
        doc.word = Some("10".into());
        assert!(matches!(doc.to_dag(), Err(Error::WordMismatch)));
    }

    #[test]
    fn exports_are_deterministic() {
        let dag = member("10");
        assert_eq!(dag_to_json(&dag), dag_to_json(&dag));
        assert_eq!(dag_to_dot(&dag), dag_to_dot(&dag));
        let lattice = hasse_lattice(4).unwrap();
        assert_eq!(lattice_to_dot(&lattice), lattice_to_dot(&lattice));
    }

    #[test]
    fn dot_shapes() {
        let dag = member("00");
        let dot = dag_to_dot(&dag);
        assert_eq!(dot.matches(" -> ").count(), 9);

        let dual = crate::dual::truncated_dual(&member("10")).unwrap();
        let dot = dual_to_dot(&dual);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.matches("x").count() - dot.matches("max").count(), 2 + 4);

        let lattice = hasse_lattice(5).unwrap();
        let dot = lattice_to_dot(&lattice);
        assert!(dot.contains("\"000\" -> \"100\" [label=\"(1,6),(2,3)\"]"));

        let tree = FlowTree::build(&member("11"), &NetflowVector::w(4).unwrap()).unwrap();
        let dot = flow_tree_to_dot(&tree);
        assert!(dot.contains("n [label=\"[] l=16\"]"));
    }

    #[test]
    fn report_summary_matches_items() {
        let mut report = Report::new("demo");
        report.push(serde_json::json!({"ok": true}), true);
        report.push(serde_json::json!({"ok": false}), false);
        report.push(serde_json::json!({"ok": true}), true);
        assert_eq!(report.summary.total, report.items.len());
        assert_eq!(report.summary.passed, 2);
        assert_eq!(report.summary.failed, 1);
        assert!(!report.all_passed());
        let json = report.to_json();
        assert!(json.ends_with('\n'));
        assert!(json.contains("\"command\": \"demo\""));
    }
}
