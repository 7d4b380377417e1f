//! Planar structure of family members and their truncated duals.
//!
//! Every family member embeds in the plane with the spine on a horizontal
//! axis and the remaining edges split into one source-to-sink path drawn
//! below (starting with the doubled `(1,2)`) and one drawn above. The
//! bounded faces of that drawing, one per non-spine edge, form a bipartite
//! non-crossing tree: faces below the spine are the rank-0 elements, faces
//! above are rank-1, and each spine edge contributes the relation between
//! the two faces it separates. Normalized volumes of the unit flow polytopes
//! equal linear extension counts of these duals.
//!
//! A bipartite non-crossing tree is stored as its relation list in
//! left-to-right layout order. Sorted this way, the relations of a valid
//! tree step through the grid from `(1,1)` to `(lower_count, upper_count)`
//! advancing one side at a time; that staircase is derived where needed and
//! never assumed by the validator.

use crate::counts;
use crate::dag::{Dag, PairKind, Vertex};
use crate::error::{Error, Result};
use crate::family::{dag_from_word, hasse_lattice, BinaryWord};
use crate::flow::{volume_f1, VolumeFormula};

/// Cap on elements for the down-set dynamic program (bitmask state).
pub const MAX_DOWNSET_ELEMENTS: usize = 20;

/// Cap on elements for the all-permutations oracle.
pub const MAX_ORACLE_ELEMENTS: usize = 10;

/// Cap on vertices for exhaustive non-crossing tree generation.
pub const MAX_BNT_VERTICES: usize = 16;

/// The spine/below/above partition of a member's edges, by edge index.
/// Both paths run from vertex 1 to vertex `n+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub spine: Vec<usize>,
    /// Drawn below the spine; starts with the doubled `(1,2)`.
    pub path_a: Vec<usize>,
    /// Drawn above the spine; starts with the remaining source edge.
    pub path_b: Vec<usize>,
}

/// Splits a member's edges into the spine and the two source-to-sink paths.
/// Off the spine every interior vertex has in- and out-degree 1, so each
/// path continues uniquely.
pub fn embed(dag: &Dag) -> Result<PlanarEmbedding> {
    if !dag.in_family(3) {
        return Err(Error::NotInFamily { k: 3 });
    }
    let spine = dag.spine()?;
    let a_start = dag.edge_index(1, 2, 1).expect("members double (1,2)");
    let b_start = dag
        .out_edge_range(1)
        .find(|&i| i != spine[0] && i != a_start)
        .expect("source has out-degree 3");
    let walk = |start: usize| -> Vec<usize> {
        let mut path = vec![start];
        let mut v = dag.edge(start).head;
        while v != dag.vertex_count() {
            let next = dag
                .out_edge_range(v)
                .find(|&i| i != spine[v - 1])
                .expect("interior vertices have a non-spine out-edge");
            path.push(next);
            v = dag.edge(next).head;
        }
        path
    };
    let path_a = walk(a_start);
    let path_b = walk(b_start);
    Ok(PlanarEmbedding {
        spine,
        path_a,
        path_b,
    })
}

/// Positions `k` where the all-arcs-above drawing of a member crosses
/// between vertices `k+1` and `k+2`. These are exactly the 1-positions of
/// the member's word.
pub fn crossing_positions(dag: &Dag) -> Result<Vec<usize>> {
    if !dag.in_family(3) {
        return Err(Error::NotInFamily { k: 3 });
    }
    let mut positions: Vec<usize> = dag
        .find_pairs(PairKind::Crossed)
        .iter()
        .map(|p| {
            let b = dag.edge(p.inner).tail;
            debug_assert_eq!(dag.edge(p.outer).head, b + 1);
            b - 1
        })
        .collect();
    positions.sort_unstable();
    positions.dedup();
    Ok(positions)
}

/// A bipartite non-crossing tree read as a two-rank poset: `lower_count`
/// rank-0 elements and `upper_count` rank-1 elements in left-to-right order,
/// with `relations` as 1-based `(lower, upper)` pairs in layout order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankOnePoset {
    lower_count: usize,
    upper_count: usize,
    relations: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Lower,
    Upper,
}

impl RankOnePoset {
    /// Validates and stores a bipartite non-crossing tree: the relations
    /// must form a connected cycle-free graph covering every element, and no
    /// two relations may interleave in the layout order.
    pub fn new(
        lower_count: usize,
        upper_count: usize,
        relations: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if lower_count == 0 || upper_count == 0 {
            return Err(Error::InvalidPoset {
                reason: "both ranks need at least one element",
            });
        }
        if relations.len() != lower_count + upper_count - 1 {
            return Err(Error::InvalidPoset {
                reason: "a tree on l + r vertices has l + r - 1 relations",
            });
        }
        let mut relations = relations;
        relations.sort_unstable();
        for pair in relations.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidPoset {
                    reason: "duplicate relation",
                });
            }
        }
        for &(x, y) in &relations {
            if x < 1 || x > lower_count || y < 1 || y > upper_count {
                return Err(Error::InvalidPoset {
                    reason: "relation out of range",
                });
            }
        }
        // Non-crossing: in the sorted list any earlier relation must not
        // reach past a later one on the upper row.
        for i in 0..relations.len() {
            for j in i + 1..relations.len() {
                if relations[i].0 < relations[j].0 && relations[i].1 > relations[j].1 {
                    return Err(Error::InvalidPoset {
                        reason: "relations cross",
                    });
                }
            }
        }
        // Connectivity over all l + r elements; with the count above this
        // makes the graph a tree and every element covered.
        let total = lower_count + upper_count;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut components = total;
        for &(x, y) in &relations {
            let rx = find(&mut parent, x - 1);
            let ry = find(&mut parent, lower_count + y - 1);
            if rx != ry {
                parent[rx] = ry;
                components -= 1;
            }
        }
        if components != 1 {
            return Err(Error::InvalidPoset {
                reason: "relations do not connect all elements",
            });
        }
        Ok(Self {
            lower_count,
            upper_count,
            relations,
        })
    }

    pub fn lower_count(&self) -> usize {
        self.lower_count
    }

    pub fn upper_count(&self) -> usize {
        self.upper_count
    }

    pub fn element_count(&self) -> usize {
        self.lower_count + self.upper_count
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Relations as 1-based `(lower, upper)` pairs in layout order.
    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    pub fn lower_degree(&self, x: usize) -> usize {
        self.relations.iter().filter(|r| r.0 == x).count()
    }

    pub fn upper_degree(&self, y: usize) -> usize {
        self.relations.iter().filter(|r| r.1 == y).count()
    }

    /// Realizable as a truncated dual: the left-most rank-0 element is a
    /// leaf.
    pub fn is_realizable(&self) -> bool {
        self.lower_degree(1) == 1
    }

    /// The rank-swapped mirror tree.
    pub fn dual(&self) -> Self {
        Self::new(
            self.upper_count,
            self.lower_count,
            self.relations.iter().map(|&(x, y)| (y, x)).collect(),
        )
        .expect("rank swap preserves tree shape")
    }

    /// Steps between consecutive layout relations; a valid tree advances one
    /// side by one at each step.
    fn steps(&self) -> Vec<Step> {
        self.relations
            .windows(2)
            .map(|w| {
                if w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1 {
                    Step::Lower
                } else {
                    debug_assert!(w[1].0 == w[0].0 && w[1].1 == w[0].1 + 1);
                    Step::Upper
                }
            })
            .collect()
    }

    fn from_steps(steps: &[Step]) -> Self {
        let mut relations = vec![(1usize, 1usize)];
        let (mut x, mut y) = (1, 1);
        for step in steps {
            match step {
                Step::Lower => x += 1,
                Step::Upper => y += 1,
            }
            relations.push((x, y));
        }
        Self::new(x, y, relations).expect("steps build a valid tree")
    }

    /// 0-based indices of the relations on the path from the left-most to
    /// the right-most element, found by walking right greedily.
    pub fn spanning_path(&self) -> Result<Vec<usize>> {
        if !self.is_realizable() {
            return Err(Error::NotRealizable);
        }
        let mut path = vec![0usize];
        let mut at_lower = false; // relation 0 leads from x_1 up to y_1
        loop {
            let &came = path.last().expect("path starts nonempty");
            let (x, y) = self.relations[came];
            let rightmost = self
                .relations
                .iter()
                .rposition(|&(rx, ry)| if at_lower { rx == x } else { ry == y })
                .expect("element of an incident relation");
            if rightmost == came {
                return Ok(path);
            }
            path.push(rightmost);
            at_lower = !at_lower;
        }
    }

    /// Detaches everything after the given non-path relation (1-based layout
    /// position), swaps the ranks of the detached part, and reattaches it so
    /// that the relation joins the spanning path.
    pub fn flip(&self, position: usize) -> Result<Self> {
        if position == 0 || position > self.relations.len() {
            return Err(Error::InvalidPoset {
                reason: "relation position out of range",
            });
        }
        if self.spanning_path()?.contains(&(position - 1)) {
            return Err(Error::RelationOnPath { index: position });
        }
        let mut steps = self.steps();
        for step in steps.iter_mut().skip(position - 1) {
            *step = match step {
                Step::Lower => Step::Upper,
                Step::Upper => Step::Lower,
            };
        }
        Ok(Self::from_steps(&steps))
    }
}

impl std::fmt::Display for RankOnePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .relations
            .iter()
            .map(|(x, y)| format!("x{x}<y{y}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The truncated dual of a family member: one rank-0 element per below-path
/// edge, one rank-1 element per above-path edge, one relation per spine
/// edge joining the two faces it separates.
pub fn truncated_dual(dag: &Dag) -> Result<RankOnePoset> {
    let embedding = embed(dag)?;
    let interval = |idx: usize| {
        let e = dag.edge(idx);
        (e.tail, e.head)
    };
    let mut relations = Vec::with_capacity(dag.n());
    let mut a = 0usize;
    let mut b = 0usize;
    for i in 1..=dag.n() {
        while interval(embedding.path_a[a]).1 <= i {
            a += 1;
        }
        while interval(embedding.path_b[b]).1 <= i {
            b += 1;
        }
        relations.push((a + 1, b + 1));
    }
    RankOnePoset::new(
        embedding.path_a.len(),
        embedding.path_b.len(),
        relations,
    )
}

/// Rebuilds the member whose truncated dual is `tree`: relations become
/// spine edges left to right, and each element spans an arc over the spine
/// edges of its relations.
pub fn dag_from_tree(tree: &RankOnePoset) -> Result<Dag> {
    if !tree.is_realizable() {
        return Err(Error::NotRealizable);
    }
    let n = tree.element_count() - 1;
    let mut pairs: Vec<(Vertex, Vertex)> = (1..=n).map(|i| (i, i + 1)).collect();
    let mut spans: Vec<(usize, (usize, usize))> = Vec::new();
    for x in 1..=tree.lower_count() {
        spans.push((x, element_span(tree, x, true)));
    }
    for y in 1..=tree.upper_count() {
        spans.push((y, element_span(tree, y, false)));
    }
    for (_, (first, last)) in spans {
        pairs.push((first, last + 1));
    }
    let dag = Dag::new(n + 1, pairs)?;
    debug_assert!(dag.in_family(3));
    Ok(dag)
}

fn element_span(tree: &RankOnePoset, element: usize, lower: bool) -> (usize, usize) {
    let mut first = usize::MAX;
    let mut last = 0;
    for (idx, &(x, y)) in tree.relations().iter().enumerate() {
        if (lower && x == element) || (!lower && y == element) {
            first = first.min(idx + 1);
            last = last.max(idx + 1);
        }
    }
    (first, last)
}

/// Builds the tree of a word directly: an initial relation, a path turning
/// once per 1, a terminal relation, and one pendant relation per 0 hung on
/// the path vertex its surrounding 1s share.
pub fn tree_from_word(word: &BinaryWord) -> RankOnePoset {
    let mut steps = Vec::with_capacity(word.len() + 1);
    let mut current = Step::Lower;
    steps.push(current);
    for pos in 1..=word.len() {
        if word.bit(pos) {
            current = match current {
                Step::Lower => Step::Upper,
                Step::Upper => Step::Lower,
            };
        }
        steps.push(current);
    }
    RankOnePoset::from_steps(&steps)
}

/// Reads the word back off a realizable tree: trace the spanning path, write
/// a 1 for each interior path relation and a 0 for each pendant relation,
/// positioned by layout order.
pub fn word_from_tree(tree: &RankOnePoset) -> Result<BinaryWord> {
    let n = tree.element_count() - 1;
    if n < 3 {
        return Err(Error::DegenerateFamily { n });
    }
    let path = tree.spanning_path()?;
    let on_path = |idx: usize| path.binary_search(&idx).is_ok();
    debug_assert!(on_path(0) && on_path(tree.relation_count() - 1));
    BinaryWord::new((1..=n - 2).map(on_path).collect())
}

/// Every bipartite non-crossing tree on `total_vertices` vertices, by
/// exhaustive chain search: candidate relation lists grow through the grid
/// and each complete candidate is validated from scratch.
pub fn enumerate_bnt(total_vertices: usize) -> Result<Vec<RankOnePoset>> {
    if total_vertices < 2 {
        return Err(Error::InvalidPoset {
            reason: "need at least one element of each rank",
        });
    }
    if total_vertices > MAX_BNT_VERTICES {
        return Err(Error::ResourceLimit {
            what: "non-crossing tree vertices",
            limit: MAX_BNT_VERTICES,
        });
    }
    let mut found = Vec::new();
    for lower in 1..total_vertices {
        let upper = total_vertices - lower;
        let mut chain = vec![(1usize, 1usize)];
        extend_chain(lower, upper, &mut chain, &mut found);
    }
    Ok(found)
}

/// Grows a componentwise-increasing relation chain toward `(l, r)`. The only
/// pruning is counting: every later relation advances the coordinate sum by
/// at least one, so the remaining distance can never exceed the remaining
/// relation budget.
fn extend_chain(
    l: usize,
    r: usize,
    chain: &mut Vec<(usize, usize)>,
    found: &mut Vec<RankOnePoset>,
) {
    let &(x, y) = chain.last().expect("chain starts at (1,1)");
    let steps_left = l + r - 1 - chain.len();
    let dist = (l - x) + (r - y);
    if dist > steps_left {
        return;
    }
    if steps_left == 0 {
        if dist == 0 {
            if let Ok(tree) = RankOnePoset::new(l, r, chain.clone()) {
                found.push(tree);
            }
        }
        return;
    }
    for nx in x..=l {
        for ny in y..=r {
            if (nx, ny) == (x, y) {
                continue;
            }
            chain.push((nx, ny));
            extend_chain(l, r, chain, found);
            chain.pop();
        }
    }
}

/// Number of bipartite non-crossing trees on `n` vertices, by generation.
pub fn count_bnt(n: usize) -> Result<u64> {
    Ok(enumerate_bnt(n)?.len() as u64)
}

/// How to count linear extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMethod {
    /// Saturated chains of down-sets, over bitmask states.
    DownsetDp,
    /// Filter all permutations; small posets only.
    PermutationOracle,
}

/// Counts linear extensions of the poset on elements `0..element_count`
/// generated by `relations` (each pair `(u, v)` meaning `u < v`).
pub fn count_linear_extensions(
    element_count: usize,
    relations: &[(usize, usize)],
    method: ExtensionMethod,
) -> Result<u64> {
    match method {
        ExtensionMethod::DownsetDp => downset_dp(element_count, relations),
        ExtensionMethod::PermutationOracle => permutation_oracle(element_count, relations),
    }
}

/// Linear extensions of a rank-1 poset; rank-0 elements come first in the
/// generic numbering.
pub fn linear_extensions(poset: &RankOnePoset, method: ExtensionMethod) -> Result<u64> {
    let l = poset.lower_count();
    let relations: Vec<(usize, usize)> = poset
        .relations()
        .iter()
        .map(|&(x, y)| (x - 1, l + y - 1))
        .collect();
    count_linear_extensions(poset.element_count(), &relations, method)
}

fn downset_dp(element_count: usize, relations: &[(usize, usize)]) -> Result<u64> {
    if element_count > MAX_DOWNSET_ELEMENTS {
        return Err(Error::ResourceLimit {
            what: "down-set dynamic program elements",
            limit: MAX_DOWNSET_ELEMENTS,
        });
    }
    let mut below = vec![0u32; element_count];
    let mut above = vec![0u32; element_count];
    for &(u, v) in relations {
        below[v] |= 1 << u;
        above[u] |= 1 << v;
    }
    let full: u32 = if element_count == 32 {
        u32::MAX
    } else {
        (1u32 << element_count) - 1
    };
    // dp[s] = saturated chains from the empty down-set to s; removing a
    // maximal element of a down-set leaves a down-set, so masks are visited
    // in increasing numeric order.
    let mut dp = vec![0u64; full as usize + 1];
    dp[0] = 1;
    for s in 1..=full {
        let is_downset = (0..element_count).all(|e| s >> e & 1 == 0 || below[e] & !s == 0);
        if !is_downset {
            continue;
        }
        let mut total = 0u64;
        for e in 0..element_count {
            if s >> e & 1 == 1 && above[e] & s == 0 {
                total = counts::add(total, dp[(s & !(1 << e)) as usize])?;
            }
        }
        dp[s as usize] = total;
    }
    Ok(dp[full as usize])
}

fn permutation_oracle(element_count: usize, relations: &[(usize, usize)]) -> Result<u64> {
    if element_count > MAX_ORACLE_ELEMENTS {
        return Err(Error::ResourceLimit {
            what: "permutation oracle elements",
            limit: MAX_ORACLE_ELEMENTS,
        });
    }
    let mut perm: Vec<usize> = (0..element_count).collect();
    let mut position = vec![0usize; element_count];
    let mut count = 0u64;
    let mut stack = vec![0usize; element_count];
    let mut check = |perm: &[usize], position: &mut [usize]| {
        for (i, &e) in perm.iter().enumerate() {
            position[e] = i;
        }
        if relations.iter().all(|&(u, v)| position[u] < position[v]) {
            count += 1;
        }
    };
    check(&perm, &mut position);
    // Heap's algorithm, iterative form.
    let mut i = 1;
    while i < element_count {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            check(&perm, &mut position);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    Ok(count)
}

/// One member with its volume and the extension count of its dual.
#[derive(Debug, Clone)]
pub struct MemberDuality {
    pub word: BinaryWord,
    pub volume: u64,
    pub extensions: u64,
}

impl MemberDuality {
    pub fn holds(&self) -> bool {
        self.volume == self.extensions
    }
}

/// One flip cover with extension counts on both sides.
#[derive(Debug, Clone)]
pub struct FlipCheck {
    pub lower: BinaryWord,
    pub upper: BinaryWord,
    pub lower_extensions: u64,
    pub upper_extensions: u64,
}

impl FlipCheck {
    pub fn holds(&self) -> bool {
        self.upper_extensions <= self.lower_extensions
    }
}

/// Volume/extension equality per member plus the flip inequality per cover.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub n: usize,
    pub members: Vec<MemberDuality>,
    pub flips: Vec<FlipCheck>,
}

impl DualityReport {
    pub fn violations(&self) -> usize {
        self.members.iter().filter(|m| !m.holds()).count()
            + self.flips.iter().filter(|f| !f.holds()).count()
    }

    pub fn all_hold(&self) -> bool {
        self.violations() == 0
    }
}

/// For every member on `n + 1` vertices: the volume equals the linear
/// extension count of its truncated dual, and extension counts weakly
/// decrease along every cover.
pub fn verify_duality(n: usize) -> Result<DualityReport> {
    let lattice = hasse_lattice(n)?;
    let mut extensions = Vec::with_capacity(lattice.nodes().len());
    let mut members = Vec::with_capacity(lattice.nodes().len());
    for word in lattice.nodes() {
        let dag = dag_from_word(word);
        let e = linear_extensions(&truncated_dual(&dag)?, ExtensionMethod::DownsetDp)?;
        extensions.push(e);
        members.push(MemberDuality {
            word: word.clone(),
            volume: volume_f1(&dag, VolumeFormula::WSpecial)?,
            extensions: e,
        });
    }
    let flips = lattice
        .covers()
        .iter()
        .map(|c| FlipCheck {
            lower: lattice.word(c.lower).clone(),
            upper: lattice.word(c.upper).clone(),
            lower_extensions: extensions[c.lower],
            upper_extensions: extensions[c.upper],
        })
        .collect();
    Ok(DualityReport { n, members, flips })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn member(bits: &str) -> Dag {
        dag_from_word(&BinaryWord::parse(bits).unwrap())
    }

    fn ends(dag: &Dag, path: &[usize]) -> Vec<(usize, usize)> {
        path.iter().map(|&i| dag.edge(i).ends()).collect()
    }

    #[test]
    fn embedding_partitions_the_edges() {
        let dag = member("00");
        let e = embed(&dag).unwrap();
        assert_eq!(ends(&dag, &e.path_a), vec![(1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(ends(&dag, &e.path_b), vec![(1, 5)]);

        let dag = member("11");
        let e = embed(&dag).unwrap();
        assert_eq!(ends(&dag, &e.path_a), vec![(1, 2), (2, 4), (4, 5)]);
        assert_eq!(ends(&dag, &e.path_b), vec![(1, 3), (3, 5)]);

        let dag = member("10");
        let e = embed(&dag).unwrap();
        assert_eq!(ends(&dag, &e.path_a), vec![(1, 2), (2, 5)]);
        assert_eq!(ends(&dag, &e.path_b), vec![(1, 3), (3, 4), (4, 5)]);

        // The three parts partition the edge set.
        for bits in ["1011", "0010", "111"] {
            let dag = member(bits);
            let e = embed(&dag).unwrap();
            let mut all: Vec<usize> = e
                .spine
                .iter()
                .chain(&e.path_a)
                .chain(&e.path_b)
                .copied()
                .collect();
            all.sort_unstable();
            assert_eq!(all, (0..dag.edge_count()).collect::<Vec<_>>());
        }

        let path = Dag::new(3, vec![(1, 2), (2, 3)]).unwrap();
        assert!(matches!(embed(&path), Err(Error::NotInFamily { .. })));
    }

    #[test]
    fn crossings_read_the_word() {
        assert_eq!(crossing_positions(&member("00")).unwrap(), Vec::<usize>::new());
        assert_eq!(crossing_positions(&member("10")).unwrap(), vec![1]);
        assert_eq!(crossing_positions(&member("1011")).unwrap(), vec![1, 3, 4]);
    }

    #[test]
    fn duals_of_the_four_vertex_family() {
        // All-zeros member: a star with four minima under one maximum.
        let star = truncated_dual(&member("00")).unwrap();
        assert_eq!(star.relations(), &[(1, 1), (2, 1), (3, 1), (4, 1)]);
        // Word 11: the five-element zigzag.
        let zigzag = truncated_dual(&member("11")).unwrap();
        assert_eq!(zigzag.relations(), &[(1, 1), (2, 1), (2, 2), (3, 2)]);
        // Word 10: one minimum below three maxima plus a pendant minimum.
        let tree = truncated_dual(&member("10")).unwrap();
        assert_eq!(tree.relations(), &[(1, 1), (2, 1), (2, 2), (2, 3)]);
    }

    #[test]
    fn dual_shape_invariants() {
        for n in 3..=8 {
            for v in 0..1usize << (n - 2) {
                let word = BinaryWord::from_index(n, v).unwrap();
                let dual = truncated_dual(&dag_from_word(&word)).unwrap();
                assert_eq!(dual.element_count(), n + 1);
                assert_eq!(dual.relation_count(), n);
                assert!(dual.is_realizable());
            }
        }
    }

    #[test]
    fn poset_validation_rejects_bad_shapes() {
        assert!(matches!(
            RankOnePoset::new(2, 2, vec![(1, 2), (2, 1), (2, 2)]),
            Err(Error::InvalidPoset { reason: "relations cross" })
        ));
        assert!(matches!(
            RankOnePoset::new(2, 2, vec![(1, 1), (2, 2)]),
            Err(Error::InvalidPoset { .. })
        ));
        assert!(matches!(
            RankOnePoset::new(2, 2, vec![(1, 1), (1, 1), (2, 2)]),
            Err(Error::InvalidPoset { reason: "duplicate relation" })
        ));
        assert!(matches!(
            RankOnePoset::new(2, 2, vec![(1, 1), (1, 2), (3, 2)]),
            Err(Error::InvalidPoset { reason: "relation out of range" })
        ));
        // Comparable but disconnected: (1,1), (2,2) plus a cover gap.
        assert!(matches!(
            RankOnePoset::new(3, 2, vec![(1, 1), (2, 1), (2, 2), (3, 1)]),
            Err(Error::InvalidPoset { .. })
        ));
    }

    #[test]
    fn tree_and_dag_are_mutually_inverse() {
        for n in 3..=7 {
            for v in 0..1usize << (n - 2) {
                let word = BinaryWord::from_index(n, v).unwrap();
                let dag = dag_from_word(&word);
                let dual = truncated_dual(&dag).unwrap();
                assert_eq!(dag_from_tree(&dual).unwrap(), dag);
            }
        }
        let unrealizable = RankOnePoset::new(2, 2, vec![(1, 1), (1, 2), (2, 2)]).unwrap();
        assert!(matches!(
            dag_from_tree(&unrealizable),
            Err(Error::NotRealizable)
        ));
    }

    #[test]
    fn counting_trees() {
        assert_eq!(count_bnt(2).unwrap(), 1);
        assert_eq!(count_bnt(4).unwrap(), 4);
        assert_eq!(count_bnt(6).unwrap(), 16);
        assert!(matches!(count_bnt(1), Err(Error::InvalidPoset { .. })));
        assert!(matches!(count_bnt(17), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn extension_counts() {
        // A five-element chain has a single extension.
        let chain: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        assert_eq!(
            count_linear_extensions(5, &chain, ExtensionMethod::DownsetDp).unwrap(),
            1
        );
        assert_eq!(
            count_linear_extensions(5, &chain, ExtensionMethod::PermutationOracle).unwrap(),
            1
        );

        let star = RankOnePoset::new(4, 1, vec![(1, 1), (2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!(linear_extensions(&star, ExtensionMethod::PermutationOracle).unwrap(), 24);
        assert_eq!(linear_extensions(&star, ExtensionMethod::DownsetDp).unwrap(), 24);

        let zigzag = RankOnePoset::new(3, 2, vec![(1, 1), (2, 1), (2, 2), (3, 2)]).unwrap();
        assert_eq!(linear_extensions(&zigzag, ExtensionMethod::PermutationOracle).unwrap(), 16);
        assert_eq!(linear_extensions(&zigzag, ExtensionMethod::DownsetDp).unwrap(), 16);
    }

    #[test]
    fn extension_guards() {
        let chain: Vec<(usize, usize)> = (0..10).map(|i| (i, i + 1)).collect();
        assert!(matches!(
            count_linear_extensions(11, &chain, ExtensionMethod::PermutationOracle),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            count_linear_extensions(21, &chain, ExtensionMethod::DownsetDp),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn word_tree_bijection() {
        // The fifteen-element tree of the long example word.
        let tree = tree_from_word(&BinaryWord::parse("010010110010").unwrap());
        assert_eq!(tree.lower_count(), 8);
        assert_eq!(tree.upper_count(), 7);
        assert_eq!(
            tree.relations(),
            &[
                (1, 1),
                (2, 1),
                (3, 1),
                (3, 2),
                (3, 3),
                (3, 4),
                (4, 4),
                (5, 4),
                (5, 5),
                (6, 5),
                (7, 5),
                (8, 5),
                (8, 6),
                (8, 7)
            ]
        );
        assert_eq!(word_from_tree(&tree).unwrap().to_string(), "010010110010");

        // Same tree as the truncated dual route, for every short word.
        for n in 3..=8 {
            for v in 0..1usize << (n - 2) {
                let word = BinaryWord::from_index(n, v).unwrap();
                assert_eq!(
                    tree_from_word(&word),
                    truncated_dual(&dag_from_word(&word)).unwrap()
                );
                assert_eq!(word_from_tree(&tree_from_word(&word)).unwrap(), word);
            }
        }
    }

    #[test]
    fn word_from_tree_rejects_unrealizable_and_tiny() {
        let unrealizable = RankOnePoset::new(2, 2, vec![(1, 1), (1, 2), (2, 2)]).unwrap();
        assert!(matches!(
            word_from_tree(&unrealizable),
            Err(Error::NotRealizable)
        ));
        let tiny = RankOnePoset::new(1, 1, vec![(1, 1)]).unwrap();
        assert!(matches!(
            word_from_tree(&tiny),
            Err(Error::DegenerateFamily { .. })
        ));
    }

    #[test]
    fn flip_matches_bit_raising() {
        // Flipping the fifth relation raises the fourth bit.
        let tree = tree_from_word(&BinaryWord::parse("010010110010").unwrap());
        let flipped = tree.flip(5).unwrap();
        assert_eq!(
            word_from_tree(&flipped).unwrap().to_string(),
            "010110110010"
        );

        // The star flips into the word-10 tree at its first non-path edge.
        let star = tree_from_word(&BinaryWord::parse("00").unwrap());
        let flipped = star.flip(2).unwrap();
        assert_eq!(word_from_tree(&flipped).unwrap().to_string(), "10");

        // Path relations refuse to flip.
        assert!(matches!(
            star.flip(1),
            Err(Error::RelationOnPath { index: 1 })
        ));
        assert!(matches!(
            star.flip(4),
            Err(Error::RelationOnPath { index: 4 })
        ));
        assert!(matches!(star.flip(9), Err(Error::InvalidPoset { .. })));
    }

    #[test]
    fn duality_small() {
        let report = verify_duality(4).unwrap();
        assert!(report.all_hold());
        let volumes: Vec<u64> = report.members.iter().map(|m| m.volume).collect();
        assert_eq!(volumes, vec![24, 18, 18, 16]);
        assert_eq!(report.flips.len(), 4);

        let report = verify_duality(3).unwrap();
        assert_eq!(report.members.len(), 2);
        assert!(report.all_hold());
    }
}
