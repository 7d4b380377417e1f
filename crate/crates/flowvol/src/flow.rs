//! Kostant partition function evaluation, flow decomposition trees, and the
//! volume formulas for unit flow polytopes.
//!
//! A partial flow assigns nonnegative integers to the edge prefix
//! `L_p = { (u,v) : u <= p }` and is valid when the netflow requirement holds
//! at every vertex in `1..=p`. Such a flow sits at level `p + 1` of the flow
//! decomposition tree: the root (`p = 0`, nothing assigned) is level 1 and
//! complete flows (`p = n`) are the leaves at level `n + 1`. The Kostant
//! value `K_G(a)` is the number of leaves.
//!
//! Two evaluators are provided. [`FlowTree`] materializes the tree node by
//! node. [`FlowCounter`] never materializes anything: partial flows with
//! equal values on the edges crossing the cut between `1..=p` and the rest
//! have identical futures, so completion counts are memoized per cut state.

use crate::counts;
use crate::dag::{Dag, Vertex};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Default cap on materialized flow-tree nodes.
pub const DEFAULT_MAX_TREE_NODES: usize = 10_000_000;

const MAX_LIDSKII_TERMS: usize = 5_000_000;

/// An integer netflow vector; entries always sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetflowVector {
    entries: Vec<i64>,
}

impl NetflowVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::NetflowLength {
                got: entries.len(),
                want: 2,
            });
        }
        let sum: i64 = entries.iter().sum();
        if sum != 0 {
            return Err(Error::NetflowSum { sum });
        }
        Ok(Self { entries })
    }

    /// The vector `(0, 1, ..., 1, -(n-1))` of length `n + 1` whose Kostant
    /// value gives unit-flow-polytope volumes for family members.
    pub fn w(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::WVectorTooSmall { n });
        }
        let mut entries = vec![1i64; n + 1];
        entries[0] = 0;
        entries[n] = -((n as i64) - 1);
        Self::new(entries)
    }

    /// `(1, 0, ..., 0, -1)`: the netflow of the unit flow polytope.
    pub fn unit(vertex_count: usize) -> Result<Self> {
        if vertex_count < 2 {
            return Err(Error::NetflowLength {
                got: vertex_count,
                want: 2,
            });
        }
        let mut entries = vec![0i64; vertex_count];
        entries[0] = 1;
        entries[vertex_count - 1] = -1;
        Self::new(entries)
    }

    pub fn zero(vertex_count: usize) -> Result<Self> {
        Self::new(vec![0; vertex_count.max(2)])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Netflow at the 1-based vertex `v`.
    pub fn at(&self, v: Vertex) -> i64 {
        self.entries[v - 1]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    fn check_len(&self, dag: &Dag) -> Result<()> {
        if self.entries.len() != dag.vertex_count() {
            return Err(Error::NetflowLength {
                got: self.entries.len(),
                want: dag.vertex_count(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for NetflowVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Flow values on the edge prefix `L_p` of some DAG, in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialFlow {
    assigned: usize,
    values: Vec<u64>,
}

impl PartialFlow {
    /// The empty flow at the root of every flow decomposition tree.
    pub fn empty() -> Self {
        Self {
            assigned: 0,
            values: Vec::new(),
        }
    }

    /// Wraps explicit values for the prefix `L_assigned` and checks validity
    /// on `1..=assigned` against `netflow`.
    pub fn new(dag: &Dag, netflow: &NetflowVector, assigned: usize, values: Vec<u64>) -> Result<Self> {
        let flow = Self { assigned, values };
        flow.check_valid(dag, netflow)?;
        Ok(flow)
    }

    /// Vertices whose out-edges carry values: the `p` of `L_p`.
    pub fn assigned(&self) -> usize {
        self.assigned
    }

    /// 1-based tree level; the root is level 1.
    pub fn level(&self) -> usize {
        self.assigned + 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, edge_index: usize) -> u64 {
        self.values[edge_index]
    }

    pub fn value_of(&self, dag: &Dag, tail: Vertex, head: Vertex, slot: usize) -> Option<u64> {
        let idx = dag.edge_index(tail, head, slot)?;
        self.values.get(idx).copied()
    }

    pub fn is_complete(&self, dag: &Dag) -> bool {
        self.assigned >= dag.n()
    }

    /// Total assigned flow into `v`. All in-edges of `v` are assigned once
    /// `v <= assigned + 1`.
    pub fn inflow(&self, dag: &Dag, v: Vertex) -> Result<u64> {
        let mut total = 0u64;
        for idx in dag.in_edge_indices(v) {
            if idx < self.values.len() {
                total = counts::add(total, self.values[idx])?;
            }
        }
        Ok(total)
    }

    fn check_valid(&self, dag: &Dag, netflow: &NetflowVector) -> Result<()> {
        netflow.check_len(dag)?;
        let want = dag.prefix_len(self.assigned);
        if self.values.len() != want {
            return Err(Error::FlowValueCount {
                got: self.values.len(),
                want,
            });
        }
        for v in 1..=self.assigned {
            let outflow: i128 = dag.out_edge_range(v).map(|i| self.values[i] as i128).sum();
            let inflow: i128 = dag
                .in_edge_indices(v)
                .map(|i| self.values[i] as i128)
                .sum();
            if outflow - inflow != netflow.at(v) as i128 {
                return Err(Error::FlowInvalidAt { vertex: v });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for PartialFlow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Weak compositions of `total` into `parts` parts, lexicographically
/// ascending. This fixes the child order of every tree node.
fn weak_compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(total: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Number of weak compositions of `total` into `parts` parts; zero when
/// `total` is negative (a dead branch, not an error).
pub fn compositions_count(total: i64, parts: usize) -> Result<u64> {
    if total < 0 {
        return Ok(0);
    }
    if parts == 0 {
        return Ok((total == 0) as u64);
    }
    counts::binomial(total as u64 + parts as u64 - 1, parts as u64 - 1)
}

/// Number of children of `node` in the flow decomposition tree: the ways to
/// spread the forced outflow of the next vertex over its out-edges.
pub fn branch_count(dag: &Dag, netflow: &NetflowVector, node: &PartialFlow) -> Result<u64> {
    netflow.check_len(dag)?;
    let v = node.assigned() + 1;
    if v > dag.n() {
        return Err(Error::LevelTooDeep {
            level: node.level(),
            max: dag.n(),
        });
    }
    let t = node.inflow(dag, v)?;
    compositions_count(t as i64 + netflow.at(v), dag.out_degree(v))
}

/// All extensions of `node` by one vertex, in lexicographic order of the new
/// out-edge values. Empty when the node is complete or the branch is dead.
pub fn children(dag: &Dag, netflow: &NetflowVector, node: &PartialFlow) -> Result<Vec<PartialFlow>> {
    let v = node.assigned() + 1;
    if v > dag.n() {
        return Ok(Vec::new());
    }
    let t = node.inflow(dag, v)?;
    let outflow = t as i64 + netflow.at(v);
    if outflow < 0 {
        return Ok(Vec::new());
    }
    let parts = dag.out_degree(v);
    Ok(weak_compositions(outflow as u64, parts)
        .into_iter()
        .map(|comp| {
            let mut values = node.values.clone();
            values.extend(comp);
            PartialFlow {
                assigned: v,
                values,
            }
        })
        .collect())
}

/// All valid partial flows on `L_prefix`, in the tree's lexicographic order.
pub fn enumerate_partial_flows(
    dag: &Dag,
    netflow: &NetflowVector,
    prefix: usize,
) -> Result<Vec<PartialFlow>> {
    netflow.check_len(dag)?;
    let mut frontier = vec![PartialFlow::empty()];
    for _ in 0..prefix {
        let mut next = Vec::new();
        for node in &frontier {
            next.extend(children(dag, netflow, node)?);
            if next.len() > DEFAULT_MAX_TREE_NODES {
                return Err(Error::ResourceLimit {
                    what: "partial flow enumeration",
                    limit: DEFAULT_MAX_TREE_NODES,
                });
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

/// One node of a materialized [`FlowTree`].
#[derive(Debug, Clone)]
pub struct FlowNode {
    pub parent: Option<usize>,
    /// Position among the parent's children; the root has rank 0.
    pub child_rank: usize,
    pub partial: PartialFlow,
    pub children: Vec<usize>,
    /// Leaves of the subtree below this node.
    pub leaf_count: u64,
}

/// An explicit flow decomposition tree.
#[derive(Debug, Clone)]
pub struct FlowTree {
    dag: Dag,
    netflow: NetflowVector,
    nodes: Vec<FlowNode>,
    by_prefix: Vec<Vec<usize>>,
}

impl FlowTree {
    pub fn build(dag: &Dag, netflow: &NetflowVector) -> Result<Self> {
        Self::build_with_limit(dag, netflow, DEFAULT_MAX_TREE_NODES)
    }

    pub fn build_with_limit(dag: &Dag, netflow: &NetflowVector, max_nodes: usize) -> Result<Self> {
        netflow.check_len(dag)?;
        let n = dag.n();
        let mut nodes = vec![FlowNode {
            parent: None,
            child_rank: 0,
            partial: PartialFlow::empty(),
            children: Vec::new(),
            leaf_count: 0,
        }];
        let mut by_prefix = vec![vec![0usize]];
        for p in 0..n {
            let mut level = Vec::new();
            for parent_pos in 0..by_prefix[p].len() {
                let parent_id = by_prefix[p][parent_pos];
                let kids = children(dag, netflow, &nodes[parent_id].partial)?;
                for (rank, partial) in kids.into_iter().enumerate() {
                    let id = nodes.len();
                    if id >= max_nodes {
                        return Err(Error::ResourceLimit {
                            what: "flow tree nodes",
                            limit: max_nodes,
                        });
                    }
                    nodes.push(FlowNode {
                        parent: Some(parent_id),
                        child_rank: rank,
                        partial,
                        children: Vec::new(),
                        leaf_count: 0,
                    });
                    nodes[parent_id].children.push(id);
                    level.push(id);
                }
            }
            by_prefix.push(level);
        }
        // Children always carry larger ids, so one reverse sweep fills l().
        for id in (0..nodes.len()).rev() {
            nodes[id].leaf_count = if nodes[id].partial.assigned() == n {
                1
            } else {
                let mut total = 0u64;
                for &c in &nodes[id].children {
                    total = counts::add(total, nodes[c].leaf_count)?;
                }
                total
            };
        }
        Ok(Self {
            dag: dag.clone(),
            netflow: netflow.clone(),
            nodes,
            by_prefix,
        })
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn netflow(&self) -> &NetflowVector {
        &self.netflow
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: usize) -> &FlowNode {
        &self.nodes[id]
    }

    /// Node ids at the 1-based level; the root is level 1 and the leaves sit
    /// at level `n + 1`.
    pub fn level(&self, level: usize) -> &[usize] {
        &self.by_prefix[level - 1]
    }

    /// Number of levels, `n + 1`.
    pub fn depth(&self) -> usize {
        self.by_prefix.len()
    }

    pub fn leaves(&self) -> &[usize] {
        self.level(self.depth())
    }

    /// Total leaves: the Kostant value of the netflow.
    pub fn leaf_count(&self) -> u64 {
        self.nodes[0].leaf_count
    }

    pub fn branch_count(&self, id: usize) -> u64 {
        self.nodes[id].children.len() as u64
    }

    /// The composition-rank path from the root addressing this node.
    pub fn address(&self, id: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = id;
        while let Some(parent) = self.nodes[cur].parent {
            path.push(self.nodes[cur].child_rank);
            cur = parent;
        }
        path.reverse();
        path
    }
}

/// Memoized completion counts over frontier cut states.
///
/// The key observation: once the out-edges of `1..=p` carry values, the only
/// data the remaining vertices can see is the vector of values on edges
/// crossing from `1..=p` to the rest. Nodes sharing that vector share their
/// completion count.
pub struct FlowCounter<'a> {
    dag: &'a Dag,
    netflow: NetflowVector,
    memo: Vec<HashMap<Vec<u64>, u64>>,
}

impl<'a> FlowCounter<'a> {
    pub fn new(dag: &'a Dag, netflow: &NetflowVector) -> Result<Self> {
        netflow.check_len(dag)?;
        Ok(Self {
            dag,
            netflow: netflow.clone(),
            memo: vec![HashMap::new(); dag.n() + 1],
        })
    }

    /// `K_G(a)`: completions of the empty flow.
    pub fn total(&mut self) -> Result<u64> {
        self.count_suffix(0, Vec::new())
    }

    /// Leaves below `node` in the flow decomposition tree.
    pub fn completions(&mut self, node: &PartialFlow) -> Result<u64> {
        node.check_valid(self.dag, &self.netflow)?;
        let p = node.assigned();
        let cut = self
            .cut_edges(p)
            .into_iter()
            .map(|idx| node.value(idx))
            .collect();
        self.count_suffix(p, cut)
    }

    /// Edge indices crossing from `1..=p` to later vertices, ascending.
    fn cut_edges(&self, p: usize) -> Vec<usize> {
        (0..self.dag.prefix_len(p))
            .filter(|&i| self.dag.edge(i).head > p)
            .collect()
    }

    fn count_suffix(&mut self, p: usize, cut: Vec<u64>) -> Result<u64> {
        let n = self.dag.n();
        if p == n {
            return Ok(1);
        }
        if let Some(&cached) = self.memo[p].get(cut.as_slice()) {
            return Ok(cached);
        }
        let v = p + 1;
        let cut_idx = self.cut_edges(p);
        let mut inflow = 0u64;
        let mut kept = Vec::new();
        for (pos, &idx) in cut_idx.iter().enumerate() {
            if self.dag.edge(idx).head == v {
                inflow = counts::add(inflow, cut[pos])?;
            } else {
                kept.push(cut[pos]);
            }
        }
        let outflow = inflow as i64 + self.netflow.at(v);
        let mut total = 0u64;
        if outflow >= 0 {
            for comp in weak_compositions(outflow as u64, self.dag.out_degree(v)) {
                let mut next = kept.clone();
                next.extend(comp);
                total = counts::add(total, self.count_suffix(v, next)?)?;
            }
        }
        self.memo[p].insert(cut, total);
        Ok(total)
    }
}

/// How to evaluate a Kostant partition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KostantMethod {
    /// Materialize the flow decomposition tree and count its leaves.
    Tree,
    /// Memoized dynamic programming over frontier cut states.
    FrontierDp,
}

/// Number of nonnegative integer flows on `dag` with the given netflow.
pub fn kostant(dag: &Dag, netflow: &NetflowVector, method: KostantMethod) -> Result<u64> {
    match method {
        KostantMethod::Tree => Ok(FlowTree::build(dag, netflow)?.leaf_count()),
        KostantMethod::FrontierDp => FlowCounter::new(dag, netflow)?.total(),
    }
}

/// Which closed form to use for the normalized volume of the unit flow
/// polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeFormula {
    /// `K_G(0, 1, ..., 1, -(n-1))`; family members only.
    WSpecial,
    /// `K_G(|E|-|V|+2-outd_1, 1-outd_2, ..., 1-outd_n, 0)`.
    LidskiiSimple,
    /// `K_G(0, ind_2-1, ..., ind_n-1, |V|-|E|-2+ind_{n+1})`.
    FlowReversal,
}

/// Normalized volume of the unit flow polytope of `dag`.
pub fn volume_f1(dag: &Dag, formula: VolumeFormula) -> Result<u64> {
    if !dag.has_unique_source_and_sink() {
        return Err(Error::NotSingleSourceSink);
    }
    let deg = dag.degree_sequence();
    let vc = dag.vertex_count() as i64;
    let ec = dag.edge_count() as i64;
    let netflow = match formula {
        VolumeFormula::WSpecial => {
            if !dag.in_family(3) {
                return Err(Error::NotInFamily { k: 3 });
            }
            NetflowVector::w(dag.n())?
        }
        VolumeFormula::LidskiiSimple => {
            let mut entries = vec![0i64; dag.vertex_count()];
            entries[0] = ec - vc + 2 - deg.out_degrees[0] as i64;
            for v in 2..=dag.n() {
                entries[v - 1] = 1 - deg.out_degrees[v - 1] as i64;
            }
            NetflowVector::new(entries)?
        }
        VolumeFormula::FlowReversal => {
            let mut entries = vec![0i64; dag.vertex_count()];
            for v in 2..=dag.n() {
                entries[v - 1] = deg.in_degrees[v - 1] as i64 - 1;
            }
            entries[dag.n()] = vc - ec - 2 + deg.in_degrees[dag.n()] as i64;
            NetflowVector::new(entries)?
        }
    };
    kostant(dag, &netflow, KostantMethod::FrontierDp)
}

/// The full Lidskii sum for `vol F_G(a)`: over weak compositions `m` of
/// `|E|` into `n` parts dominating the out-degree sequence (all prefix sums
/// at least those of the out-degrees),
/// `multinomial(|E|-|V|+1; m_i - 1) * prod a_i^(m_i - 1) * K_G(m - outdeg, 0)`.
///
/// Requires nonnegative `a_1..a_n`. At `(1, 0, ..., 0, -1)` this reduces to
/// [`VolumeFormula::LidskiiSimple`].
pub fn lidskii_volume(dag: &Dag, netflow: &NetflowVector) -> Result<u64> {
    netflow.check_len(dag)?;
    let n = dag.n();
    for v in 1..=n {
        if netflow.at(v) < 0 {
            return Err(Error::NegativeNetflowEntry {
                vertex: v,
                value: netflow.at(v),
            });
        }
    }
    let deg = dag.degree_sequence();
    let outd: Vec<i64> = deg.out_degrees[..n].iter().map(|&d| d as i64).collect();
    let ec = dag.edge_count() as i64;
    let top = ec - dag.vertex_count() as i64 + 1;
    if top < 0 {
        return Ok(0);
    }

    let mut total = 0u64;
    let mut terms = 0usize;
    let mut m = vec![0i64; n];
    sum_dominating(
        dag,
        netflow,
        &outd,
        ec,
        top as u64,
        0,
        0,
        0,
        &mut m,
        &mut total,
        &mut terms,
    )?;
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn sum_dominating(
    dag: &Dag,
    netflow: &NetflowVector,
    outd: &[i64],
    remaining: i64,
    top: u64,
    index: usize,
    m_prefix: i64,
    out_prefix: i64,
    m: &mut Vec<i64>,
    total: &mut u64,
    terms: &mut usize,
) -> Result<()> {
    let n = outd.len();
    if index == n {
        if remaining != 0 {
            return Ok(());
        }
        *terms += 1;
        if *terms > MAX_LIDSKII_TERMS {
            return Err(Error::ResourceLimit {
                what: "dominance compositions",
                limit: MAX_LIDSKII_TERMS,
            });
        }
        let parts: Vec<i64> = m.iter().map(|&mi| mi - 1).collect();
        let coeff = counts::multinomial(top, &parts)?;
        if coeff == 0 {
            return Ok(());
        }
        let mut weight = coeff;
        for (v, &mi) in m.iter().enumerate() {
            let base = netflow.at(v + 1) as u64;
            weight = counts::mul(weight, counts::pow(base, (mi - 1) as u64)?)?;
        }
        if weight == 0 {
            return Ok(());
        }
        let mut entries: Vec<i64> = m.iter().zip(outd).map(|(&mi, &oi)| mi - oi).collect();
        entries.push(0);
        let k = kostant(dag, &NetflowVector::new(entries)?, KostantMethod::FrontierDp)?;
        *total = counts::add(*total, counts::mul(weight, k)?)?;
        return Ok(());
    }
    // Dominance: every prefix sum of m must reach the out-degree prefix sum.
    let need = (out_prefix + outd[index] - m_prefix).max(0);
    for mi in need..=remaining {
        m[index] = mi;
        sum_dominating(
            dag,
            netflow,
            outd,
            remaining - mi,
            top,
            index + 1,
            m_prefix + mi,
            out_prefix + outd[index],
            m,
            total,
            terms,
        )?;
    }
    m[index] = 0;
    Ok(())
}

/// For a family member under the interior-ones netflow, checks that the flow
/// entering the interior vertex `i` is exactly `i - 2` minus the value on the
/// unique edge passing over `i` (and in particular at most `i - 2`).
pub fn inflow_bound_check(dag: &Dag, flow: &PartialFlow, i: Vertex) -> Result<bool> {
    let w = NetflowVector::w(dag.n())?;
    if !dag.in_family(3) {
        return Err(Error::NotInFamily { k: 3 });
    }
    if i < 2 || i > dag.n() {
        return Err(Error::NotInteriorVertex {
            vertex: i,
            max: dag.n(),
        });
    }
    if flow.assigned() + 1 < i {
        return Err(Error::LevelTooDeep {
            level: flow.level(),
            max: i,
        });
    }
    flow.check_valid(dag, &w)?;
    let overpass = dag.unique_overpass(i)?;
    let carried = flow.value(overpass) as i128;
    let inflow = flow.inflow(dag, i)? as i128;
    let bound = i as i128 - 2;
    Ok(inflow == bound - carried && inflow <= bound)
}

/// Unbounded Kostant evaluation over big integers; same frontier
/// memoization as [`FlowCounter`], no overflow ceiling.
#[cfg(feature = "bigint")]
pub fn kostant_unbounded(dag: &Dag, netflow: &NetflowVector) -> Result<num_bigint::BigUint> {
    use num_bigint::BigUint;

    netflow.check_len(dag)?;
    struct Big<'a> {
        dag: &'a Dag,
        netflow: &'a NetflowVector,
        memo: Vec<HashMap<Vec<u64>, BigUint>>,
    }
    impl Big<'_> {
        fn run(&mut self, p: usize, cut: Vec<u64>) -> BigUint {
            if p == self.dag.n() {
                return BigUint::from(1u8);
            }
            if let Some(cached) = self.memo[p].get(cut.as_slice()) {
                return cached.clone();
            }
            let v = p + 1;
            let mut inflow = 0u64;
            let mut kept = Vec::new();
            let cut_idx: Vec<usize> = (0..self.dag.prefix_len(p))
                .filter(|&i| self.dag.edge(i).head > p)
                .collect();
            for (pos, &idx) in cut_idx.iter().enumerate() {
                if self.dag.edge(idx).head == v {
                    inflow += cut[pos];
                } else {
                    kept.push(cut[pos]);
                }
            }
            let outflow = inflow as i64 + self.netflow.at(v);
            let mut total = BigUint::from(0u8);
            if outflow >= 0 {
                for comp in weak_compositions(outflow as u64, self.dag.out_degree(v)) {
                    let mut next = kept.clone();
                    next.extend(comp);
                    total += self.run(v, next);
                }
            }
            self.memo[p].insert(cut, total.clone());
            total
        }
    }
    let mut big = Big {
        dag,
        netflow,
        memo: vec![HashMap::new(); dag.n() + 1],
    };
    Ok(big.run(0, Vec::new()))
}
