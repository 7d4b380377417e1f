//! Directed acyclic multigraphs on vertices `1..=n+1` with ascending edges,
//! kept in a canonical form, plus the interchange surgery on nested and
//! crossed edge pairs.
//!
//! Canonical form: edges are sorted by `(tail, head, slot)` and the slots of
//! parallel copies are dense starting at 0. Two graphs are equal exactly when
//! their canonical edge lists are equal, which is equality of edge multisets.
//! The slot-0 copy of each consecutive edge `(i, i+1)` is the designated
//! spine copy.

use crate::error::{Error, Result};

/// Vertex label; vertices are numbered from 1.
pub type Vertex = usize;

/// One directed edge instance. Parallel copies of the same `(tail, head)`
/// pair carry distinct dense slots starting at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: Vertex,
    pub head: Vertex,
    pub slot: usize,
}

impl Edge {
    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.tail, self.head)
    }

    pub fn is_consecutive(&self) -> bool {
        self.head == self.tail + 1
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.tail, self.head)?;
        if self.slot > 0 {
            write!(f, "#{}", self.slot)?;
        }
        Ok(())
    }
}

/// Out- and in-degrees per vertex; entry `i` belongs to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

/// Which pattern a pair of edges forms on vertices `a < b < c < d`:
/// nested is `(a,d)` over `(b,c)`, crossed is `(a,c)` with `(b,d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Nested,
    Crossed,
}

/// A nested or crossed pair, stored as indices into the canonical edge list.
/// `outer` is the edge with the smaller tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgePair {
    pub outer: usize,
    pub inner: usize,
    pub kind: PairKind,
}

/// A directed acyclic multigraph on vertices `1..=vertex_count` in which
/// every edge ascends (`tail < head`), held in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dag {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Dag {
    /// Builds a canonical DAG from an edge multiset given as `(tail, head)`
    /// pairs. Slots are assigned here; input order is irrelevant.
    pub fn new<I>(vertex_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if vertex_count < 2 {
            return Err(Error::InvalidVertexCount { got: vertex_count });
        }
        let mut pairs: Vec<(Vertex, Vertex)> = pairs.into_iter().collect();
        for &(tail, head) in &pairs {
            if tail < 1 || tail >= head || head > vertex_count {
                return Err(Error::InvalidEdge {
                    tail,
                    head,
                    vertex_count,
                });
            }
        }
        pairs.sort_unstable();
        let mut edges = Vec::with_capacity(pairs.len());
        let mut prev: Option<(Vertex, Vertex)> = None;
        let mut slot = 0;
        for (tail, head) in pairs {
            slot = if prev == Some((tail, head)) { slot + 1 } else { 0 };
            prev = Some((tail, head));
            edges.push(Edge { tail, head, slot });
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    /// The `n` of the vertex range `1..=n+1`.
    pub fn n(&self) -> usize {
        self.vertex_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    fn checked_edge(&self, index: usize) -> Result<Edge> {
        self.edges
            .get(index)
            .copied()
            .ok_or(Error::EdgeIndexOutOfRange {
                index,
                edge_count: self.edges.len(),
            })
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_edge_range(v).len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut out_degrees = vec![0; self.vertex_count];
        let mut in_degrees = vec![0; self.vertex_count];
        for e in &self.edges {
            out_degrees[e.tail - 1] += 1;
            in_degrees[e.head - 1] += 1;
        }
        DegreeSequence {
            out_degrees,
            in_degrees,
        }
    }

    /// Number of edges with tail at most `k`. Because of the canonical sort,
    /// those edges are exactly `edges()[..prefix_len(k)]`.
    pub fn prefix_len(&self, k: usize) -> usize {
        self.edges.partition_point(|e| e.tail <= k)
    }

    /// Index range of the out-edges of `v` in the canonical edge list.
    pub fn out_edge_range(&self, v: Vertex) -> std::ops::Range<usize> {
        self.prefix_len(v - 1)..self.prefix_len(v)
    }

    pub fn in_edge_indices(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.head == v)
            .map(|(i, _)| i)
    }

    /// How many parallel copies of `(tail, head)` the graph carries.
    pub fn multiplicity(&self, tail: Vertex, head: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|e| e.tail == tail && e.head == head)
            .count()
    }

    pub fn edge_index(&self, tail: Vertex, head: Vertex, slot: usize) -> Option<usize> {
        self.edges
            .binary_search(&Edge { tail, head, slot })
            .ok()
    }

    /// True when every vertex other than 1 has an in-edge and every vertex
    /// other than `n+1` has an out-edge, so 1 is the only source and `n+1`
    /// the only sink.
    pub fn has_unique_source_and_sink(&self) -> bool {
        let deg = self.degree_sequence();
        (1..self.vertex_count).all(|i| deg.in_degrees[i] > 0)
            && (0..self.vertex_count - 1).all(|i| deg.out_degrees[i] > 0)
    }

    /// Membership test for the family of full DAGs with source out-degree
    /// `k`: the out-degree sequence must be `(k, 2, ..., 2, 0)` and the
    /// in-degree sequence `(0, 2, ..., 2, k)`.
    pub fn in_family(&self, k: usize) -> bool {
        let deg = self.degree_sequence();
        let last = self.vertex_count - 1;
        deg.out_degrees[0] == k
            && deg.out_degrees[last] == 0
            && deg.in_degrees[0] == 0
            && deg.in_degrees[last] == k
            && (1..last).all(|i| deg.out_degrees[i] == 2 && deg.in_degrees[i] == 2)
    }

    /// True when every inner vertex has in- and out-degree `r`.
    pub fn is_r_full(&self, r: usize) -> bool {
        let deg = self.degree_sequence();
        (1..self.vertex_count - 1).all(|i| deg.out_degrees[i] == r && deg.in_degrees[i] == r)
    }

    /// For a family member with source out-degree `k`, checks the edge-count
    /// identity `|E| = 2n + k - 2`.
    pub fn check_edge_count(&self, k: usize) -> Result<bool> {
        if !self.in_family(k) {
            return Err(Error::NotInFamily { k });
        }
        Ok(self.edges.len() == 2 * self.n() + k - 2)
    }

    /// The designated spine: the slot-0 copy of `(i, i+1)` for each
    /// `i in 1..=n`, as edge indices. Fails on the first missing consecutive
    /// edge.
    pub fn spine(&self) -> Result<Vec<usize>> {
        (1..=self.n())
            .map(|i| {
                self.edge_index(i, i + 1, 0)
                    .ok_or(Error::MissingSpineEdge { i })
            })
            .collect()
    }

    /// All nested or crossed pairs, one per vertex quadruple: parallel
    /// copies are collapsed and represented by their highest-slot instance
    /// (the copy the interchange would consume). Sorted by `(outer, inner)`.
    pub fn find_pairs(&self, kind: PairKind) -> Vec<EdgePair> {
        let mut tops: Vec<usize> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            match tops.last() {
                Some(&j) if self.edges[j].ends() == e.ends() => *tops.last_mut().unwrap() = i,
                _ => tops.push(i),
            }
        }
        let mut pairs = Vec::new();
        for &i in &tops {
            for &j in &tops {
                let (a, x) = self.edges[i].ends();
                let (b, y) = self.edges[j].ends();
                let matches = match kind {
                    PairKind::Nested => a < b && b < y && y < x,
                    PairKind::Crossed => a < b && b < x && x < y,
                };
                if matches {
                    pairs.push(EdgePair {
                        outer: i,
                        inner: j,
                        kind,
                    });
                }
            }
        }
        pairs.sort_by_key(|p| (p.outer, p.inner));
        pairs
    }

    /// Resolves the nested pair on `(a,d)` over `(b,c)` to concrete edge
    /// instances, taking the highest slot of each.
    pub fn nested_pair(&self, outer: (Vertex, Vertex), inner: (Vertex, Vertex)) -> Result<EdgePair> {
        let (a, d) = outer;
        let (b, c) = inner;
        if !(a < b && b < c && c < d) {
            return Err(Error::PairNotNested);
        }
        Ok(EdgePair {
            outer: self.top_slot_index(a, d).ok_or(Error::PairNotNested)?,
            inner: self.top_slot_index(b, c).ok_or(Error::PairNotNested)?,
            kind: PairKind::Nested,
        })
    }

    /// Resolves the crossed pair `(a,c)`, `(b,d)` to concrete edge instances.
    pub fn crossed_pair(&self, outer: (Vertex, Vertex), inner: (Vertex, Vertex)) -> Result<EdgePair> {
        let (a, c) = outer;
        let (b, d) = inner;
        if !(a < b && b < c && c < d) {
            return Err(Error::PairNotCrossed);
        }
        Ok(EdgePair {
            outer: self.top_slot_index(a, c).ok_or(Error::PairNotCrossed)?,
            inner: self.top_slot_index(b, d).ok_or(Error::PairNotCrossed)?,
            kind: PairKind::Crossed,
        })
    }

    fn top_slot_index(&self, tail: Vertex, head: Vertex) -> Option<usize> {
        let m = self.multiplicity(tail, head);
        if m == 0 {
            None
        } else {
            self.edge_index(tail, head, m - 1)
        }
    }

    /// Interchange: replaces the nested pair `(a,d)`, `(b,c)` by the crossed
    /// pair `(a,c)`, `(b,d)` and recanonicalizes. When a consumed edge has
    /// parallel copies this removes one copy of the multiset entry, which
    /// leaves the slot-0 spine designation intact after renumbering.
    pub fn interchange(&self, pair: &EdgePair) -> Result<Dag> {
        let outer = self.checked_edge(pair.outer)?;
        let inner = self.checked_edge(pair.inner)?;
        let (a, d) = outer.ends();
        let (b, c) = inner.ends();
        if !(a < b && b < c && c < d) {
            return Err(Error::PairNotNested);
        }
        self.swap_pair((a, d), (b, c), (a, c), (b, d))
    }

    /// Reverse interchange: replaces the crossed pair `(a,c)`, `(b,d)` by the
    /// nested pair `(a,d)`, `(b,c)`.
    pub fn reverse_interchange(&self, pair: &EdgePair) -> Result<Dag> {
        let outer = self.checked_edge(pair.outer)?;
        let inner = self.checked_edge(pair.inner)?;
        let (a, c) = outer.ends();
        let (b, d) = inner.ends();
        if !(a < b && b < c && c < d) {
            return Err(Error::PairNotCrossed);
        }
        self.swap_pair((a, c), (b, d), (a, d), (b, c))
    }

    fn swap_pair(
        &self,
        remove1: (Vertex, Vertex),
        remove2: (Vertex, Vertex),
        add1: (Vertex, Vertex),
        add2: (Vertex, Vertex),
    ) -> Result<Dag> {
        let mut pairs: Vec<(Vertex, Vertex)> = self.edges.iter().map(Edge::ends).collect();
        for gone in [remove1, remove2] {
            let pos = pairs.iter().position(|&p| p == gone).expect("edge present");
            pairs.swap_remove(pos);
        }
        pairs.push(add1);
        pairs.push(add2);
        Dag::new(self.vertex_count, pairs)
    }

    /// The unique edge `(a, d)` with `a < i < d` passing over the interior
    /// vertex `i`. Family members have exactly one; anything else here means
    /// corrupted input.
    pub fn unique_overpass(&self, i: Vertex) -> Result<usize> {
        if !self.in_family(3) {
            return Err(Error::NotInFamily { k: 3 });
        }
        if i < 2 || i > self.n() {
            return Err(Error::NotInteriorVertex {
                vertex: i,
                max: self.n(),
            });
        }
        let mut found = None;
        let mut count = 0;
        for (idx, e) in self.edges.iter().enumerate() {
            if e.tail < i && i < e.head {
                found = Some(idx);
                count += 1;
            }
        }
        match (found, count) {
            (Some(idx), 1) => Ok(idx),
            _ => Err(Error::OverpassCount {
                vertex: i,
                found: count,
            }),
        }
    }
}

impl std::fmt::Display for Dag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.edges.len() {
            let e = self.edges[i];
            let m = self.multiplicity(e.tail, e.head);
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({},{})", e.tail, e.head)?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
            i += m;
        }
        Ok(())
    }
}
