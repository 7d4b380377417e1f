//! The bijection between binary words and full DAGs with source out-degree 3,
//! the interchange-generated Boolean lattice, and a stub-matching brute force
//! used as an oracle for the bijective enumeration.

use crate::dag::{Dag, Vertex};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Largest `n` the bijective enumeration accepts by default: the family has
/// `2^(n-2)` members.
pub const MAX_ENUMERATION_N: usize = 24;

/// Largest `n` for which the stub-matching brute force will run.
pub const MAX_BRUTE_FORCE_N: usize = 8;

/// Largest `n` for which a full Hasse lattice is built by default.
pub const MAX_LATTICE_N: usize = 12;

/// A bit string `b_1 .. b_{n-2}` indexing the family on `n + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Self { bits })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidWordChar { ch: other }),
            })
            .collect::<Result<Vec<bool>>>()?;
        Self::new(bits)
    }

    /// The word of length `n - 2` whose bits spell `value` in binary, `b_1`
    /// most significant. Words of a fixed length are ordered by this value.
    pub fn from_index(n: usize, value: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DegenerateFamily { n });
        }
        let len = n - 2;
        debug_assert!(value < (1 << len));
        Self::new((0..len).map(|i| value >> (len - 1 - i) & 1 == 1).collect())
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The vertex parameter: the word indexes DAGs on `n + 1` vertices.
    pub fn n(&self) -> usize {
        self.bits.len() + 2
    }

    /// `b_pos` for 1-based `pos`.
    pub fn bit(&self, pos: usize) -> bool {
        self.bits[pos - 1]
    }

    /// 1-based positions carrying a 1, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.bit(p)).collect()
    }

    /// 1-based positions carrying a 0, ascending.
    pub fn zeros(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| !self.bit(p)).collect()
    }

    /// The one-positions padded with sentinels 0 and `n - 1` on either side.
    pub fn padded_ones(&self) -> Vec<usize> {
        let mut js = vec![0];
        js.extend(self.ones());
        js.push(self.n() - 1);
        js
    }

    pub fn with_bit_set(&self, pos: usize) -> Self {
        let mut bits = self.bits.clone();
        bits[pos - 1] = true;
        Self { bits }
    }
}

impl std::fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

/// The member of the family encoded by `word`: spine plus forced second
/// copies of `(1,2)` and `(n,n+1)`, a second consecutive edge per 0, and the
/// chain of long edges threading the 1-positions.
pub fn dag_from_word(word: &BinaryWord) -> Dag {
    let n = word.n();
    let mut pairs: Vec<(Vertex, Vertex)> = (1..=n).map(|i| (i, i + 1)).collect();
    pairs.push((1, 2));
    pairs.push((n, n + 1));
    for l in word.zeros() {
        pairs.push((l + 1, l + 2));
    }
    let js = word.padded_ones();
    for t in 0..js.len() - 1 {
        pairs.push((js[t] + 1, js[t + 1] + 2));
    }
    let dag = Dag::new(n + 1, pairs).expect("word construction yields valid edges");
    debug_assert!(dag.in_family(3));
    dag
}

/// Inverse of [`dag_from_word`]: reads `b_l = 0` exactly when the consecutive
/// pair `(l+1, l+2)` is doubled.
pub fn word_from_dag(dag: &Dag) -> Result<BinaryWord> {
    if dag.n() < 3 {
        return Err(Error::DegenerateFamily { n: dag.n() });
    }
    if !dag.in_family(3) {
        return Err(Error::NotInFamily { k: 3 });
    }
    let word = BinaryWord::new(
        (1..=dag.n() - 2)
            .map(|l| dag.multiplicity(l + 1, l + 2) != 2)
            .collect(),
    )?;
    debug_assert_eq!(&dag_from_word(&word), dag);
    Ok(word)
}

/// All `2^(n-2)` family members, indexed by words in ascending order.
pub fn enumerate_family(n: usize) -> Result<Vec<Dag>> {
    enumerate_family_with_limit(n, MAX_ENUMERATION_N)
}

pub fn enumerate_family_with_limit(n: usize, max_n: usize) -> Result<Vec<Dag>> {
    if n < 3 {
        return Err(Error::DegenerateFamily { n });
    }
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "family enumeration n",
            limit: max_n,
        });
    }
    (0..1usize << (n - 2))
        .map(|v| Ok(dag_from_word(&BinaryWord::from_index(n, v)?)))
        .collect()
}

/// Stub-matching brute force: every vertex gets as many out-stubs as its
/// out-degree and in-stubs as its in-degree, and in-stubs are matched to
/// out-stubs at strictly smaller vertices. Distinct matchings can produce the
/// same multigraph, so results are deduplicated by canonical form.
pub fn brute_force_family(n: usize, k: usize) -> Result<Vec<Dag>> {
    if n < 2 {
        return Err(Error::DegenerateFamily { n });
    }
    if n > MAX_BRUTE_FORCE_N {
        return Err(Error::ResourceLimit {
            what: "stub matching n",
            limit: MAX_BRUTE_FORCE_N,
        });
    }
    let vertex_count = n + 1;
    let out_stubs: Vec<usize> = (1..=vertex_count)
        .map(|v| {
            if v == 1 {
                k
            } else if v == vertex_count {
                0
            } else {
                2
            }
        })
        .collect();
    let in_need: Vec<usize> = (1..=vertex_count)
        .map(|v| {
            if v == 1 {
                0
            } else if v == vertex_count {
                k
            } else {
                2
            }
        })
        .collect();

    let mut found = BTreeSet::new();
    let mut remaining = out_stubs;
    let mut pairs = Vec::new();
    match_vertex(2, vertex_count, &in_need, &mut remaining, &mut pairs, &mut found);
    Ok(found.into_iter().collect())
}

/// Fills the in-stubs of vertex `v` with tails chosen nondecreasing (stub
/// matchings differing only by order give the same multigraph), then recurses.
fn match_vertex(
    v: Vertex,
    vertex_count: usize,
    in_need: &[usize],
    remaining: &mut Vec<usize>,
    pairs: &mut Vec<(Vertex, Vertex)>,
    found: &mut BTreeSet<Dag>,
) {
    if v > vertex_count {
        if remaining.iter().all(|&r| r == 0) {
            found.insert(Dag::new(vertex_count, pairs.iter().copied()).expect("stub edges ascend"));
        }
        return;
    }
    fill_stubs(v, 1, in_need[v - 1], vertex_count, in_need, remaining, pairs, found);
}

#[allow(clippy::too_many_arguments)]
fn fill_stubs(
    v: Vertex,
    min_tail: Vertex,
    need: usize,
    vertex_count: usize,
    in_need: &[usize],
    remaining: &mut Vec<usize>,
    pairs: &mut Vec<(Vertex, Vertex)>,
    found: &mut BTreeSet<Dag>,
) {
    if need == 0 {
        match_vertex(v + 1, vertex_count, in_need, remaining, pairs, found);
        return;
    }
    for tail in min_tail..v {
        if remaining[tail - 1] == 0 {
            continue;
        }
        remaining[tail - 1] -= 1;
        pairs.push((tail, v));
        fill_stubs(v, tail, need - 1, vertex_count, in_need, remaining, pairs, found);
        pairs.pop();
        remaining[tail - 1] += 1;
    }
}

/// The interchange consuming the doubled consecutive edge at a 0-position:
/// `outer` is the unique overpass of that consecutive pair, `inner` the
/// doubled edge itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterchangePair {
    pub outer: (Vertex, Vertex),
    pub inner: (Vertex, Vertex),
}

impl std::fmt::Display for InterchangePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{}),({},{})",
            self.outer.0, self.outer.1, self.inner.0, self.inner.1
        )
    }
}

/// A cover of the Boolean lattice: `upper` is `lower` with one 0 flipped to
/// 1, and `pair` is the interchange realizing it on the DAGs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCover {
    pub lower: usize,
    pub upper: usize,
    pub pair: InterchangePair,
}

/// The Boolean lattice on all words of length `n - 2` with covers labelled by
/// their interchanges. Node `i` is the word of index `i`.
#[derive(Debug, Clone)]
pub struct HasseLattice {
    n: usize,
    nodes: Vec<BinaryWord>,
    covers: Vec<LatticeCover>,
}

impl HasseLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[BinaryWord] {
        &self.nodes
    }

    pub fn covers(&self) -> &[LatticeCover] {
        &self.covers
    }

    pub fn word(&self, node: usize) -> &BinaryWord {
        &self.nodes[node]
    }
}

/// The interchange pair that raises bit `pos` of `word` (which must be 0):
/// the doubled edge `(pos+1, pos+2)` and the unique edge passing over it.
pub fn raising_pair(word: &BinaryWord, pos: usize) -> InterchangePair {
    debug_assert!(!word.bit(pos));
    let js = word.padded_ones();
    let below = js.iter().rev().find(|&&j| j < pos).copied().unwrap_or(0);
    let above = js.iter().find(|&&j| j > pos).copied().unwrap_or(word.n() - 1);
    InterchangePair {
        outer: (below + 1, above + 2),
        inner: (pos + 1, pos + 2),
    }
}

pub fn hasse_lattice(n: usize) -> Result<HasseLattice> {
    hasse_lattice_with_limit(n, MAX_LATTICE_N)
}

pub fn hasse_lattice_with_limit(n: usize, max_n: usize) -> Result<HasseLattice> {
    if n < 3 {
        return Err(Error::DegenerateFamily { n });
    }
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "lattice n",
            limit: max_n,
        });
    }
    let nodes: Vec<BinaryWord> = (0..1usize << (n - 2))
        .map(|v| BinaryWord::from_index(n, v))
        .collect::<Result<_>>()?;
    let mut covers = Vec::new();
    for (lower, word) in nodes.iter().enumerate() {
        for pos in word.zeros() {
            let upper = word.with_bit_set(pos).index();
            covers.push(LatticeCover {
                lower,
                upper,
                pair: raising_pair(word, pos),
            });
        }
    }
    Ok(HasseLattice { n, nodes, covers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::PairKind;

    #[test]
    fn word_parsing() {
        assert_eq!(BinaryWord::parse("010").unwrap().ones(), vec![2]);
        assert!(matches!(BinaryWord::parse(""), Err(Error::EmptyWord)));
        assert!(matches!(
            BinaryWord::parse("0x1"),
            Err(Error::InvalidWordChar { ch: 'x' })
        ));
        let w = BinaryWord::from_index(6, 5).unwrap();
        assert_eq!(w.to_string(), "0101");
        assert_eq!(w.index(), 5);
    }

    #[test]
    fn construction_matches_known_members() {
        let g00 = dag_from_word(&BinaryWord::parse("00").unwrap());
        assert_eq!(
            g00,
            Dag::new(
                5,
                vec![
                    (1, 2),
                    (1, 2),
                    (2, 3),
                    (2, 3),
                    (3, 4),
                    (3, 4),
                    (4, 5),
                    (4, 5),
                    (1, 5)
                ]
            )
            .unwrap()
        );

        let g11 = dag_from_word(&BinaryWord::parse("11").unwrap());
        assert_eq!(
            g11,
            Dag::new(
                5,
                vec![
                    (1, 2),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (4, 5),
                    (1, 3),
                    (2, 4),
                    (3, 5)
                ]
            )
            .unwrap()
        );

        let g10 = dag_from_word(&BinaryWord::parse("10").unwrap());
        assert_eq!(
            g10,
            Dag::new(
                5,
                vec![
                    (1, 2),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (3, 4),
                    (4, 5),
                    (4, 5),
                    (1, 3),
                    (2, 5)
                ]
            )
            .unwrap()
        );
    }

    #[test]
    fn word_round_trip() {
        for n in 3..=8 {
            for v in 0..1usize << (n - 2) {
                let w = BinaryWord::from_index(n, v).unwrap();
                assert_eq!(word_from_dag(&dag_from_word(&w)).unwrap(), w);
            }
        }
    }

    #[test]
    fn word_from_dag_rejects_outsiders() {
        let path = Dag::new(4, vec![(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(matches!(
            word_from_dag(&path),
            Err(Error::NotInFamily { k: 3 })
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_family(3).unwrap().len(), 2);
        assert_eq!(enumerate_family(4).unwrap().len(), 4);
        assert_eq!(enumerate_family(5).unwrap().len(), 8);
        assert!(matches!(
            enumerate_family(2),
            Err(Error::DegenerateFamily { n: 2 })
        ));
        assert!(matches!(
            enumerate_family(30),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn brute_force_matches_enumeration() {
        for n in 3..=6 {
            let by_words: BTreeSet<Dag> = enumerate_family(n).unwrap().into_iter().collect();
            let by_stubs: BTreeSet<Dag> =
                brute_force_family(n, 3).unwrap().into_iter().collect();
            assert_eq!(by_words, by_stubs);
        }
    }

    #[test]
    fn brute_force_small_families() {
        assert_eq!(brute_force_family(3, 3).unwrap().len(), 2);
        // The n = 2, k = 2 family is the single doubled path.
        let members = brute_force_family(2, 2).unwrap();
        assert_eq!(members.len(), 1);
        assert_eq!(
            members[0],
            Dag::new(3, vec![(1, 2), (1, 2), (2, 3), (2, 3)]).unwrap()
        );
    }

    #[test]
    fn lattice_shape() {
        let lat = hasse_lattice(4).unwrap();
        assert_eq!(lat.nodes().len(), 4);
        assert_eq!(lat.covers().len(), 4);
        let lat = hasse_lattice(5).unwrap();
        assert_eq!(lat.nodes().len(), 8);
        assert_eq!(lat.covers().len(), 12);
        assert!(matches!(hasse_lattice(2), Err(Error::DegenerateFamily { .. })));
        assert!(matches!(
            hasse_lattice(13),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn cover_labels_match_hand_values() {
        let lat = hasse_lattice(5).unwrap();
        let find = |lo: &str, hi: &str| {
            let lo = BinaryWord::parse(lo).unwrap().index();
            let hi = BinaryWord::parse(hi).unwrap().index();
            lat.covers()
                .iter()
                .find(|c| c.lower == lo && c.upper == hi)
                .unwrap()
                .pair
        };
        assert_eq!(find("000", "100").to_string(), "(1,6),(2,3)");
        assert_eq!(find("000", "010").to_string(), "(1,6),(3,4)");
        assert_eq!(find("000", "001").to_string(), "(1,6),(4,5)");
        assert_eq!(find("001", "101").to_string(), "(1,5),(2,3)");
        assert_eq!(find("001", "011").to_string(), "(1,5),(3,4)");
        assert_eq!(find("010", "011").to_string(), "(3,6),(4,5)");
        assert_eq!(find("010", "110").to_string(), "(1,4),(2,3)");
        assert_eq!(find("100", "110").to_string(), "(2,6),(3,4)");
        assert_eq!(find("100", "101").to_string(), "(2,6),(4,5)");
        assert_eq!(find("011", "111").to_string(), "(1,4),(2,3)");
        assert_eq!(find("101", "111").to_string(), "(2,5),(3,4)");
        assert_eq!(find("110", "111").to_string(), "(3,6),(4,5)");
    }

    #[test]
    fn covers_realize_interchanges() {
        for n in 3..=7 {
            let lat = hasse_lattice(n).unwrap();
            for cover in lat.covers() {
                let lower = dag_from_word(lat.word(cover.lower));
                let upper = dag_from_word(lat.word(cover.upper));
                let pair = lower
                    .nested_pair(cover.pair.outer, cover.pair.inner)
                    .unwrap();
                assert_eq!(lower.interchange(&pair).unwrap(), upper);
            }
        }
    }

    #[test]
    fn interchange_order_is_irrelevant() {
        // Raising the 1-positions of a word in any order reaches the same
        // member; spot-check a few orders against the direct construction.
        let w = BinaryWord::parse("10110").unwrap();
        let target = dag_from_word(&w);
        let ones = w.ones();
        let orders: Vec<Vec<usize>> = vec![
            ones.clone(),
            ones.iter().rev().copied().collect(),
            vec![ones[1], ones[0], ones[2]],
            vec![ones[2], ones[0], ones[1]],
        ];
        for order in orders {
            let mut word = BinaryWord::new(vec![false; w.len()]).unwrap();
            let mut dag = dag_from_word(&word);
            for pos in order {
                let label = raising_pair(&word, pos);
                let pair = dag.nested_pair(label.outer, label.inner).unwrap();
                dag = dag.interchange(&pair).unwrap();
                word = word.with_bit_set(pos);
            }
            assert_eq!(dag, target);
        }
    }

    #[test]
    fn members_contain_forced_edges() {
        for n in 3..=7 {
            for dag in enumerate_family(n).unwrap() {
                assert!(dag.spine().is_ok());
                assert_eq!(dag.multiplicity(1, 2), 2);
                assert_eq!(dag.multiplicity(n, n + 1), 2);
                assert!(dag.find_pairs(PairKind::Crossed).len() == word_from_dag(&dag).unwrap().ones().len());
            }
        }
    }
}
