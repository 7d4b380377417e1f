//! Executable form of the volume-inequality argument.
//!
//! For a cover `G -> G'` that interchanges the nested pair `(a,d)`,
//! `(b,b+1)`, the flow decomposition trees of the two graphs under the
//! interior-ones netflow agree level by level up to level `b+1`, where each
//! node of the upper tree either keeps at most as many leaves as its
//! transferred image (good) or strictly gains (bad). Every bad node has a
//! unique good partner obtained by swapping the values on the two crossed
//! edges and raising the spine between `a` and `b`, and the bad/partner pair
//! carries exactly as many leaves as the transferred pair. Summing leaves
//! over level `b+1` then forces `vol F_1(G') <= vol F_1(G)`.

use crate::counts;
use crate::dag::{Dag, Vertex};
use crate::error::{Error, Result};
use crate::family::{dag_from_word, hasse_lattice, BinaryWord, LatticeCover};
use crate::flow::{
    enumerate_partial_flows, volume_f1, FlowCounter, NetflowVector, PartialFlow, VolumeFormula,
};
use std::collections::BTreeSet;

/// Whether a level-`b+1` node of the upper tree keeps at most the leaf count
/// of its transferred image (good) or strictly exceeds it (bad: more flow on
/// `(a,b+1)` than on `(b,d)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    Good,
    Bad,
}

/// A cover of the interchange order: `lower` contains the nested pair
/// `(a,d)`, `(b,b+1)`; `upper` is the interchange result carrying the
/// crossed pair `(a,b+1)`, `(b,d)`.
#[derive(Debug, Clone)]
pub struct InterchangeContext {
    lower: Dag,
    upper: Dag,
    a: Vertex,
    b: Vertex,
    d: Vertex,
    netflow: NetflowVector,
    // Edge-index maps between the two canonical edge lists. The swapped
    // edges pair up as (a,b+1) <-> (a,d) and (b,d) <-> (b,b+1)#1; all other
    // edges map by identity. Tails are preserved, so the maps restrict to
    // every edge prefix.
    upper_to_lower: Vec<usize>,
    lower_to_upper: Vec<usize>,
    upper_ab1: usize,
    upper_bd: usize,
    lower_ad: usize,
    lower_bb1: usize,
}

impl InterchangeContext {
    /// Builds the cover interchanging `(a,d)` with the doubled consecutive
    /// edge `(b,b+1)` in `lower`.
    pub fn new(lower: &Dag, a: Vertex, b: Vertex, d: Vertex) -> Result<Self> {
        if !lower.in_family(3) {
            return Err(Error::NotInFamily { k: 3 });
        }
        if !(a < b && b + 1 < d) || lower.multiplicity(b, b + 1) != 2 {
            return Err(Error::PairNotNested);
        }
        let pair = lower.nested_pair((a, d), (b, b + 1))?;
        let upper = lower.interchange(&pair)?;
        debug_assert!(upper.in_family(3));

        let map_edge = |tail: Vertex, head: Vertex, slot: usize| -> usize {
            let target = if (tail, head) == (a, b + 1) {
                lower.edge_index(a, d, 0)
            } else if (tail, head) == (b, d) {
                lower.edge_index(b, b + 1, 1)
            } else {
                lower.edge_index(tail, head, slot)
            };
            target.expect("interchange preserves the rest of the edge multiset")
        };
        let upper_to_lower: Vec<usize> = upper
            .edges()
            .iter()
            .map(|e| map_edge(e.tail, e.head, e.slot))
            .collect();
        let mut lower_to_upper = vec![0; upper_to_lower.len()];
        for (u, &l) in upper_to_lower.iter().enumerate() {
            lower_to_upper[l] = u;
        }

        Ok(Self {
            netflow: NetflowVector::w(lower.n())?,
            upper_ab1: upper.edge_index(a, b + 1, 0).expect("crossed edge"),
            upper_bd: upper.edge_index(b, d, 0).expect("crossed edge"),
            lower_ad: lower.edge_index(a, d, 0).expect("nested edge"),
            lower_bb1: lower.edge_index(b, b + 1, 1).expect("doubled edge"),
            lower: lower.clone(),
            upper,
            a,
            b,
            d,
            upper_to_lower,
            lower_to_upper,
        })
    }

    /// Context for a Hasse lattice cover: the cover label `((a,d),(b,b+1))`
    /// names the interchange vertices directly.
    pub fn from_cover(lower_word: &BinaryWord, cover: &LatticeCover) -> Result<Self> {
        let (a, d) = cover.pair.outer;
        let (b, _) = cover.pair.inner;
        Self::new(&dag_from_word(lower_word), a, b, d)
    }

    pub fn lower(&self) -> &Dag {
        &self.lower
    }

    pub fn upper(&self) -> &Dag {
        &self.upper
    }

    /// The interchange vertices `(a, b, d)`; the nested pair of the lower
    /// graph is `(a,d)` over `(b,b+1)`.
    pub fn vertices(&self) -> (Vertex, Vertex, Vertex) {
        (self.a, self.b, self.d)
    }

    pub fn netflow(&self) -> &NetflowVector {
        &self.netflow
    }

    fn check_depth(&self, node: &PartialFlow) -> Result<()> {
        if node.assigned() > self.b {
            return Err(Error::LevelTooDeep {
                level: node.level(),
                max: self.b + 1,
            });
        }
        Ok(())
    }

    fn check_swap_level(&self, node: &PartialFlow) -> Result<()> {
        if node.assigned() != self.b {
            return Err(Error::WrongLevel {
                level: node.level(),
                want: self.b + 1,
            });
        }
        Ok(())
    }

    /// Transfers a node of the upper tree (level at most `b+1`) to the lower
    /// tree: the value on `(a,b+1)` moves to `(a,d)`, the value on `(b,d)`
    /// moves to the doubled `(b,b+1)`, everything else is unchanged.
    pub fn transfer_to_lower(&self, node: &PartialFlow) -> Result<PartialFlow> {
        self.check_depth(node)?;
        let p = node.assigned();
        let values = (0..self.lower.prefix_len(p))
            .map(|j| node.value(self.lower_to_upper[j]))
            .collect();
        PartialFlow::new(&self.lower, &self.netflow, p, values)
    }

    /// Inverse of [`Self::transfer_to_lower`].
    pub fn transfer_to_upper(&self, node: &PartialFlow) -> Result<PartialFlow> {
        self.check_depth(node)?;
        let p = node.assigned();
        let values = (0..self.upper.prefix_len(p))
            .map(|u| node.value(self.upper_to_lower[u]))
            .collect();
        PartialFlow::new(&self.upper, &self.netflow, p, values)
    }

    /// Classifies a level-`b+1` node of the upper tree.
    pub fn classify(&self, node: &PartialFlow) -> Result<NodeClass> {
        self.check_swap_level(node)?;
        Ok(if node.value(self.upper_ab1) > node.value(self.upper_bd) {
            NodeClass::Bad
        } else {
            NodeClass::Good
        })
    }

    /// Classifies a level-`b+1` node of the lower tree via the pulled-back
    /// criterion: more flow on `(a,d)` than on the doubled `(b,b+1)`.
    pub fn classify_lower(&self, node: &PartialFlow) -> Result<NodeClass> {
        self.check_swap_level(node)?;
        Ok(if node.value(self.lower_ad) > node.value(self.lower_bb1) {
            NodeClass::Bad
        } else {
            NodeClass::Good
        })
    }

    /// The unique good partner of a bad level-`b+1` node of the upper tree:
    /// values on `(a,b+1)` and `(b,d)` swap, and the spine between `a` and
    /// `b` rises by their difference.
    pub fn good_partner(&self, node: &PartialFlow) -> Result<PartialFlow> {
        if self.classify(node)? != NodeClass::Bad {
            return Err(Error::NodeNotBad);
        }
        let hi = node.value(self.upper_ab1);
        let lo = node.value(self.upper_bd);
        let delta = hi - lo;
        let mut values = node.values().to_vec();
        values[self.upper_ab1] = lo;
        values[self.upper_bd] = hi;
        for t in self.a..self.b {
            let spine = self.upper.edge_index(t, t + 1, 0).expect("spine edge");
            values[spine] = counts::add(values[spine], delta)?;
        }
        let partner = PartialFlow::new(&self.upper, &self.netflow, self.b, values)?;
        debug_assert_eq!(self.classify(&partner)?, NodeClass::Good);
        Ok(partner)
    }

    /// The partner map on the lower tree, defined by conjugating with the
    /// transfer bijection.
    pub fn good_partner_lower(&self, node: &PartialFlow) -> Result<PartialFlow> {
        self.transfer_to_lower(&self.good_partner(&self.transfer_to_upper(node)?)?)
    }
}

/// The four leaf counts tied to one bad node: the node itself, its good
/// partner, and the transferred images of both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafIdentities {
    /// Leaves below the bad node.
    pub bad: u64,
    /// Leaves below its good partner.
    pub partner: u64,
    /// Leaves below the transferred bad node, in the lower tree.
    pub transferred_bad: u64,
    /// Leaves below the transferred partner, in the lower tree.
    pub transferred_partner: u64,
}

impl LeafIdentities {
    /// The crosswise equalities: the bad node matches the transferred
    /// partner and the partner matches the transferred bad node.
    pub fn swap_identities_hold(&self) -> bool {
        self.bad == self.transferred_partner && self.partner == self.transferred_bad
    }

    /// Both pairs carry the same total number of leaves.
    pub fn pair_sums_match(&self) -> bool {
        self.bad as u128 + self.partner as u128
            == self.transferred_bad as u128 + self.transferred_partner as u128
    }

    pub fn holds(&self) -> bool {
        self.swap_identities_hold() && self.pair_sums_match()
    }
}

/// Computes the four leaf counts for a bad level-`b+1` node of the upper
/// tree. Counts come from the frontier dynamic program conditioned on each
/// node; no subtree is materialized.
pub fn leaf_identities(ctx: &InterchangeContext, node: &PartialFlow) -> Result<LeafIdentities> {
    let partner = ctx.good_partner(node)?;
    let mut upper_counter = FlowCounter::new(ctx.upper(), ctx.netflow())?;
    let mut lower_counter = FlowCounter::new(ctx.lower(), ctx.netflow())?;
    Ok(LeafIdentities {
        bad: upper_counter.completions(node)?,
        partner: upper_counter.completions(&partner)?,
        transferred_bad: lower_counter.completions(&ctx.transfer_to_lower(node)?)?,
        transferred_partner: lower_counter.completions(&ctx.transfer_to_lower(&partner)?)?,
    })
}

/// One lattice cover with the volumes on both sides.
#[derive(Debug, Clone)]
pub struct CoverVolumes {
    pub lower: BinaryWord,
    pub upper: BinaryWord,
    pub lower_volume: u64,
    pub upper_volume: u64,
}

impl CoverVolumes {
    pub fn holds(&self) -> bool {
        self.upper_volume <= self.lower_volume
    }
}

/// Volumes across a whole Boolean lattice, cover by cover.
#[derive(Debug, Clone)]
pub struct OrderReversalReport {
    pub n: usize,
    /// Volume per word, in word order.
    pub volumes: Vec<(BinaryWord, u64)>,
    pub covers: Vec<CoverVolumes>,
}

impl OrderReversalReport {
    pub fn violations(&self) -> usize {
        self.covers.iter().filter(|c| !c.holds()).count()
    }

    pub fn all_hold(&self) -> bool {
        self.violations() == 0
    }
}

/// Computes every member volume for the lattice on words of length `n - 2`
/// and checks that volumes weakly decrease along every cover.
pub fn verify_order_reversal(n: usize) -> Result<OrderReversalReport> {
    let lattice = hasse_lattice(n)?;
    let volumes: Vec<(BinaryWord, u64)> = lattice
        .nodes()
        .iter()
        .map(|w| Ok((w.clone(), volume_f1(&dag_from_word(w), VolumeFormula::WSpecial)?)))
        .collect::<Result<_>>()?;
    let covers = lattice
        .covers()
        .iter()
        .map(|c| CoverVolumes {
            lower: lattice.word(c.lower).clone(),
            upper: lattice.word(c.upper).clone(),
            lower_volume: volumes[c.lower].1,
            upper_volume: volumes[c.upper].1,
        })
        .collect();
    Ok(OrderReversalReport {
        n,
        volumes,
        covers,
    })
}

/// Outcome of sweeping the proof machinery over every cover of a lattice:
/// transfer is a level bijection, partners are injective bad -> good, the
/// leaf identities hold, good nodes are dominated by their images, bad nodes
/// strictly exceed theirs, and the level-`b+1` sums reproduce both volumes.
#[derive(Debug, Clone)]
pub struct ProofSweepReport {
    pub n: usize,
    pub covers_checked: usize,
    pub nodes_checked: usize,
    pub bad_nodes: usize,
    pub violations: Vec<String>,
}

impl ProofSweepReport {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_proof_machinery(n: usize) -> Result<ProofSweepReport> {
    let lattice = hasse_lattice(n)?;
    let mut report = ProofSweepReport {
        n,
        covers_checked: 0,
        nodes_checked: 0,
        bad_nodes: 0,
        violations: Vec::new(),
    };
    for cover in lattice.covers() {
        let lower_word = lattice.word(cover.lower);
        let upper_word = lattice.word(cover.upper);
        let ctx = InterchangeContext::from_cover(lower_word, cover)?;
        let label = format!("cover {lower_word} -> {upper_word}");
        report.covers_checked += 1;
        check_cover(&ctx, &label, &mut report)?;
    }
    Ok(report)
}

fn check_cover(ctx: &InterchangeContext, label: &str, report: &mut ProofSweepReport) -> Result<()> {
    let (_, b, _) = ctx.vertices();
    let w = ctx.netflow();
    let mut upper_counter = FlowCounter::new(ctx.upper(), w)?;
    let mut lower_counter = FlowCounter::new(ctx.lower(), w)?;

    // Transfer is a bijection on every level up to b + 1.
    for p in 0..=b {
        let upper_nodes = enumerate_partial_flows(ctx.upper(), w, p)?;
        let lower_nodes: BTreeSet<PartialFlow> = enumerate_partial_flows(ctx.lower(), w, p)?
            .into_iter()
            .collect();
        report.nodes_checked += upper_nodes.len();
        if upper_nodes.len() != lower_nodes.len() {
            report
                .violations
                .push(format!("{label}: level {} node counts differ", p + 1));
        }
        let mut images = BTreeSet::new();
        for node in &upper_nodes {
            let image = ctx.transfer_to_lower(node)?;
            if ctx.transfer_to_upper(&image)? != *node {
                report.violations.push(format!(
                    "{label}: transfer round trip failed at level {}",
                    p + 1
                ));
            }
            images.insert(image);
        }
        if images != lower_nodes {
            report
                .violations
                .push(format!("{label}: transfer is not onto at level {}", p + 1));
        }
    }

    // Classification, partners, and leaf counts at level b + 1.
    let swap_level = enumerate_partial_flows(ctx.upper(), w, b)?;
    let mut partner_images = BTreeSet::new();
    let mut upper_level_sum = 0u128;
    let mut lower_level_sum = 0u128;
    for node in &swap_level {
        let leaves = upper_counter.completions(node)?;
        let image_leaves = lower_counter.completions(&ctx.transfer_to_lower(node)?)?;
        upper_level_sum += leaves as u128;
        lower_level_sum += image_leaves as u128;
        match ctx.classify(node)? {
            NodeClass::Good => {
                if leaves > image_leaves {
                    report
                        .violations
                        .push(format!("{label}: good node exceeds its image"));
                }
            }
            NodeClass::Bad => {
                report.bad_nodes += 1;
                if leaves <= image_leaves {
                    report
                        .violations
                        .push(format!("{label}: bad node does not exceed its image"));
                }
                let partner = ctx.good_partner(node)?;
                if ctx.classify(&partner)? != NodeClass::Good {
                    report.violations.push(format!("{label}: partner not good"));
                }
                if !partner_images.insert(partner) {
                    report
                        .violations
                        .push(format!("{label}: partner map not injective"));
                }
                if !leaf_identities(ctx, node)?.holds() {
                    report
                        .violations
                        .push(format!("{label}: leaf identities failed"));
                }
            }
        }
    }

    // The partner map on the lower tree is injective bad -> good as well.
    let mut lower_partner_images = BTreeSet::new();
    for node in enumerate_partial_flows(ctx.lower(), w, b)? {
        if ctx.classify_lower(&node)? == NodeClass::Bad {
            let partner = ctx.good_partner_lower(&node)?;
            if ctx.classify_lower(&partner)? != NodeClass::Good {
                report
                    .violations
                    .push(format!("{label}: lower partner not good"));
            }
            if !lower_partner_images.insert(partner) {
                report
                    .violations
                    .push(format!("{label}: lower partner map not injective"));
            }
        }
    }

    // Summing leaves over level b + 1 reproduces both volumes.
    let upper_vol = volume_f1(ctx.upper(), VolumeFormula::WSpecial)? as u128;
    let lower_vol = volume_f1(ctx.lower(), VolumeFormula::WSpecial)? as u128;
    if upper_level_sum != upper_vol || lower_level_sum != lower_vol {
        report
            .violations
            .push(format!("{label}: level sums do not reproduce the volumes"));
    }
    if upper_vol > lower_vol {
        report
            .violations
            .push(format!("{label}: volume inequality violated"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::word_from_dag;

    /// The cover 10 -> 11 on five vertices: interchange (2,5) with (3,4).
    fn example_context() -> InterchangeContext {
        let lower = dag_from_word(&BinaryWord::parse("10").unwrap());
        InterchangeContext::new(&lower, 2, 3, 5).unwrap()
    }

    #[test]
    fn context_builds_the_expected_cover() {
        let ctx = example_context();
        assert_eq!(word_from_dag(ctx.upper()).unwrap().to_string(), "11");
        assert_eq!(ctx.vertices(), (2, 3, 5));
    }

    #[test]
    fn context_rejects_bad_input() {
        let lower = dag_from_word(&BinaryWord::parse("10").unwrap());
        // No edge (1,5) exists to pair with the doubled (3,4).
        assert!(matches!(
            InterchangeContext::new(&lower, 1, 3, 5),
            Err(Error::PairNotNested)
        ));
        // (4,5) is doubled but only as spine and forced copy; b+1 = 5 = d.
        assert!(matches!(
            InterchangeContext::new(&lower, 2, 4, 5),
            Err(Error::PairNotNested)
        ));
        let path = Dag::new(3, vec![(1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            InterchangeContext::new(&path, 1, 1, 2),
            Err(Error::NotInFamily { .. })
        ));
    }

    #[test]
    fn transfer_swaps_the_crossed_values() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        // The bad level-4 node of the upper tree: one unit on (2,4), none
        // on (3,5).
        let node = enumerate_partial_flows(ctx.upper(), &w, 3)
            .unwrap()
            .into_iter()
            .find(|f| {
                f.value_of(ctx.upper(), 2, 4, 0) == Some(1)
                    && f.value_of(ctx.upper(), 3, 5, 0) == Some(0)
            })
            .unwrap();
        let image = ctx.transfer_to_lower(&node).unwrap();
        assert_eq!(image.value_of(ctx.lower(), 2, 5, 0), Some(1));
        assert_eq!(image.value_of(ctx.lower(), 3, 4, 1), Some(0));
        assert_eq!(ctx.transfer_to_upper(&image).unwrap(), node);
    }

    #[test]
    fn transfer_refuses_deep_nodes() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        let deep = enumerate_partial_flows(ctx.upper(), &w, 4).unwrap();
        assert!(matches!(
            ctx.transfer_to_lower(&deep[0]),
            Err(Error::LevelTooDeep { .. })
        ));
    }

    #[test]
    fn root_child_transfers_to_root_child() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        let level2 = enumerate_partial_flows(ctx.upper(), &w, 1).unwrap();
        assert_eq!(level2.len(), 1);
        assert!(level2[0].values().iter().all(|&v| v == 0));
        let image = ctx.transfer_to_lower(&level2[0]).unwrap();
        assert!(image.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn classification_finds_the_single_bad_node() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        let level4 = enumerate_partial_flows(ctx.upper(), &w, 3).unwrap();
        assert_eq!(level4.len(), 5);
        let bad: Vec<&PartialFlow> = level4
            .iter()
            .filter(|f| ctx.classify(f).unwrap() == NodeClass::Bad)
            .collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].value_of(ctx.upper(), 2, 4, 0), Some(1));
        assert_eq!(bad[0].value_of(ctx.upper(), 3, 5, 0), Some(0));
    }

    #[test]
    fn classify_rejects_wrong_levels() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        let node = enumerate_partial_flows(ctx.upper(), &w, 2).unwrap()[0].clone();
        assert!(matches!(ctx.classify(&node), Err(Error::WrongLevel { .. })));
    }

    #[test]
    fn partner_swaps_and_raises_the_spine() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        let bad = enumerate_partial_flows(ctx.upper(), &w, 3)
            .unwrap()
            .into_iter()
            .find(|f| ctx.classify(f).unwrap() == NodeClass::Bad)
            .unwrap();
        let partner = ctx.good_partner(&bad).unwrap();
        assert_eq!(partner.value_of(ctx.upper(), 2, 4, 0), Some(0));
        assert_eq!(partner.value_of(ctx.upper(), 3, 5, 0), Some(1));
        assert_eq!(partner.value_of(ctx.upper(), 2, 3, 0), Some(1));
        // Equal values on the crossed edges classify as good, so the swap
        // cannot be applied twice.
        assert!(matches!(ctx.good_partner(&partner), Err(Error::NodeNotBad)));
    }

    #[test]
    fn leaf_identities_on_the_example_cover() {
        let ctx = example_context();
        let w = ctx.netflow().clone();
        let bad = enumerate_partial_flows(ctx.upper(), &w, 3)
            .unwrap()
            .into_iter()
            .find(|f| ctx.classify(f).unwrap() == NodeClass::Bad)
            .unwrap();
        let ids = leaf_identities(&ctx, &bad).unwrap();
        assert_eq!(ids.bad, 4);
        assert_eq!(ids.partner, 3);
        assert_eq!(ids.transferred_bad, 3);
        assert_eq!(ids.transferred_partner, 4);
        assert!(ids.holds());
    }

    #[test]
    fn order_reversal_small() {
        let report = verify_order_reversal(4).unwrap();
        assert_eq!(report.covers.len(), 4);
        assert!(report.all_hold());
        let volumes: Vec<u64> = report.volumes.iter().map(|(_, v)| *v).collect();
        assert_eq!(volumes, vec![24, 18, 18, 16]);

        let report = verify_order_reversal(3).unwrap();
        assert_eq!(report.covers.len(), 1);
        assert!(report.all_hold());
    }

    #[test]
    fn proof_sweep_small() {
        let report = verify_proof_machinery(4).unwrap();
        assert_eq!(report.covers_checked, 4);
        assert!(report.all_hold(), "violations: {:?}", report.violations);
        assert!(report.bad_nodes > 0);
    }
}
