//! The percolation dynamics and its transformation generators.
//!
//! States of an `n`-node network are encoded as integers `1..=2^n`: the
//! boolean node vector is read as a binary number with node 1 as the most
//! significant bit, then incremented by one. The local update map `t` and
//! the forced-input maps `s_i` are total self-maps of that state range.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// 1-based encoded network state, in `1..=2^n`.
pub type StateId = u32;

/// Undirected simple graph on nodes `1..=n` (stored 0-based internally).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    // bit (n-1-i) holds node i, matching the state encoding, so a state
    // value `id-1` can be masked directly against these.
    masks: Vec<u32>,
}

impl Graph {
    /// Build from 1-based edges. Rejects self-loops, out-of-range endpoints
    /// and duplicate edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 || n > 31 {
            return Err(Error::InvalidInput(format!(
                "node count must be in 1..=31, got {n}"
            )));
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at node {a}")));
            }
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) out of range for n={n}"
                )));
            }
            if !adj[a - 1].insert(b - 1) {
                return Err(Error::InvalidInput(format!("duplicate edge ({a},{b})")));
            }
            adj[b - 1].insert(a - 1);
        }
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let masks = adj
            .iter()
            .map(|nb| nb.iter().map(|&j| 1u32 << (n - 1 - j)).sum())
            .collect();
        Ok(Graph { n, adj, masks })
    }

    /// Graph from a 10-bit edge mask over the lexicographic pair order
    /// (1,2),(1,3),...,(4,5). Used by the exhaustive 5-node scan.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Graph> {
        let mut edges = Vec::new();
        let mut bit = 0;
        for a in 1..=n {
            for b in (a + 1)..=n {
                if (mask >> bit) & 1 == 1 {
                    edges.push((a, b));
                }
                bit += 1;
            }
        }
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        1 << self.n
    }

    /// 0-based neighbor lists.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// 1-based edge list in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for &j in &self.adj[i] {
                if i < j {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

/// The two process thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PercParams {
    pub k1: u32,
    pub k2: u32,
}

impl PercParams {
    pub fn new(k1: u32, k2: u32) -> Result<PercParams> {
        if k1 < 1 || k2 < 1 {
            return Err(Error::InvalidInput(format!(
                "thresholds must be positive, got k1={k1} k2={k2}"
            )));
        }
        Ok(PercParams { k1, k2 })
    }
}

/// A graph, thresholds, and the set of non-forceable states.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub graph: Graph,
    pub params: PercParams,
    pub non_forceable: BTreeSet<StateId>,
}

impl Scenario {
    pub fn new(graph: Graph, params: PercParams, non_forceable: BTreeSet<StateId>) -> Result<Self> {
        let m = graph.num_states() as StateId;
        if let Some(&bad) = non_forceable.iter().find(|&&s| s < 1 || s > m) {
            return Err(Error::InvalidInput(format!(
                "non-forceable state {bad} outside 1..={m}"
            )));
        }
        Ok(Scenario {
            graph,
            params,
            non_forceable,
        })
    }

    pub fn num_states(&self) -> usize {
        self.graph.num_states()
    }
}

/// Bit vector -> encoded state: `1 + sum x_i 2^(n-i)`, node 1 most significant.
pub fn encode_state(bits: &[bool], n: usize) -> Result<StateId> {
    if bits.len() != n {
        return Err(Error::InvalidInput(format!(
            "node vector length {} does not match n={n}",
            bits.len()
        )));
    }
    if n == 0 || n > 31 {
        return Err(Error::InvalidInput(format!("n={n} out of range 1..=31")));
    }
    let mut v: u32 = 0;
    for (i, &b) in bits.iter().enumerate() {
        if b {
            v |= 1 << (n - 1 - i);
        }
    }
    Ok(v + 1)
}

/// Encoded state -> bit vector. Inverse of [`encode_state`].
pub fn decode_state(id: StateId, n: usize) -> Result<Vec<bool>> {
    if n == 0 || n > 31 {
        return Err(Error::InvalidInput(format!("n={n} out of range 1..=31")));
    }
    let m = 1u32 << n;
    if id < 1 || id > m {
        return Err(Error::InvalidInput(format!(
            "state id {id} outside 1..={m}"
        )));
    }
    let v = id - 1;
    Ok((0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect())
}

/// One synchronous tick of the two-threshold rule. For node `i` with `a`
/// active neighbors: inactive turns active iff `a >= k1`; active turns
/// inactive iff it has at least `k2` inactive neighbors (`a <= deg - k2`).
pub fn step(id: StateId, scen: &Scenario) -> StateId {
    let g = &scen.graph;
    let n = g.n();
    debug_assert!(id >= 1 && id <= g.num_states() as u32);
    let v = id - 1;
    let (k1, k2) = (scen.params.k1, scen.params.k2);
    let mut next = 0u32;
    for i in 0..n {
        let bit = 1u32 << (n - 1 - i);
        let active_nbrs = (v & g.masks[i]).count_ones();
        let deg = g.degree(i) as u32;
        let now = v & bit != 0;
        let after = if now {
            // stays active unless k2 or more neighbors are inactive
            deg - active_nbrs < k2
        } else {
            active_nbrs >= k1
        };
        if after {
            next |= bit;
        }
    }
    next + 1
}

/// One tick of the classical monotone rule: inactive turns active iff
/// `a >= k1`, active never deactivates.
pub fn step_monotone(id: StateId, graph: &Graph, k1: u32) -> StateId {
    let n = graph.n();
    let v = id - 1;
    let mut next = v;
    for i in 0..n {
        let bit = 1u32 << (n - 1 - i);
        if v & bit == 0 && (v & graph.masks[i]).count_ones() >= k1 {
            next |= bit;
        }
    }
    next + 1
}

/// Generator label, shown in witness words and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    /// The local update rule.
    T,
    /// Forced input targeting the given state.
    Input(StateId),
    /// Product or ad-hoc map without a generator name.
    Anon,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::T => write!(f, "t"),
            Label::Input(i) => write!(f, "s{i}"),
            Label::Anon => write!(f, "?"),
        }
    }
}

/// Total self-map of `1..=m` as a lookup table. Equality and hashing are
/// on the table alone; the label is display metadata.
#[derive(Debug, Clone)]
pub struct Transformation {
    table: Vec<StateId>,
    pub label: Label,
}

impl PartialEq for Transformation {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}
impl Eq for Transformation {}
impl std::hash::Hash for Transformation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

impl Transformation {
    pub fn from_table(table: Vec<StateId>, label: Label) -> Result<Transformation> {
        let m = table.len() as StateId;
        if let Some(&bad) = table.iter().find(|&&y| y < 1 || y > m) {
            return Err(Error::InvalidInput(format!(
                "image {bad} outside 1..={m}"
            )));
        }
        Ok(Transformation { table, label })
    }

    pub fn identity(m: usize) -> Transformation {
        Transformation {
            table: (1..=m as StateId).collect(),
            label: Label::Anon,
        }
    }

    pub fn constant(m: usize, target: StateId) -> Transformation {
        Transformation {
            table: vec![target; m],
            label: Label::Anon,
        }
    }

    /// Image of state `x` (1-based).
    pub fn apply(&self, x: StateId) -> StateId {
        self.table[(x - 1) as usize]
    }

    /// Domain size.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[StateId] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.table
            .iter()
            .enumerate()
            .all(|(i, &y)| y == i as StateId + 1)
    }
}

/// The local update rule as a transformation table.
pub fn build_t(scen: &Scenario) -> Transformation {
    let m = scen.num_states();
    Transformation {
        table: (1..=m as StateId).map(|s| step(s, scen)).collect(),
        label: Label::T,
    }
}

/// The classical monotone rule as a transformation table.
pub fn build_monotone_t(graph: &Graph, k1: u32) -> Transformation {
    let m = graph.num_states();
    Transformation {
        table: (1..=m as StateId)
            .map(|s| step_monotone(s, graph, k1))
            .collect(),
        label: Label::T,
    }
}

/// Forced input `s_i`: sends every forceable state to `i`; on non-forceable
/// states it falls through to the local rule.
pub fn build_input_map(i: StateId, scen: &Scenario) -> Transformation {
    let m = scen.num_states();
    assert!(i >= 1 && i <= m as StateId, "input index {i} out of range");
    let table = (1..=m as StateId)
        .map(|x| {
            if scen.non_forceable.contains(&x) {
                step(x, scen)
            } else {
                i
            }
        })
        .collect();
    Transformation {
        table,
        label: Label::Input(i),
    }
}

/// Generator set: `t` followed by the admissible inputs `s_i` in ascending
/// order of `i`. Inputs whose target state is non-forceable are excluded,
/// so the count is `1 + 2^n - |S|`.
pub fn build_generators(scen: &Scenario) -> Vec<Transformation> {
    let m = scen.num_states() as StateId;
    let mut gens = Vec::with_capacity(1 + m as usize - scen.non_forceable.len());
    gens.push(build_t(scen));
    for i in 1..=m {
        if !scen.non_forceable.contains(&i) {
            gens.push(build_input_map(i, scen));
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scen(n: usize, edges: &[(usize, usize)], k1: u32, k2: u32, s: &[StateId]) -> Scenario {
        Scenario::new(
            Graph::new(n, edges).unwrap(),
            PercParams::new(k1, k2).unwrap(),
            s.iter().copied().collect(),
        )
        .unwrap()
    }

    #[test]
    fn encode_paper_example() {
        // 4 nodes, only node 1 active -> 9
        assert_eq!(encode_state(&[true, false, false, false], 4).unwrap(), 9);
        assert_eq!(encode_state(&[false; 5], 5).unwrap(), 1);
        assert_eq!(encode_state(&[false, true, true], 3).unwrap(), 4);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_state(9, 4).unwrap(), vec![true, false, false, false]);
        assert_eq!(decode_state(1, 5).unwrap(), vec![false; 5]);
        assert_eq!(decode_state(6, 3).unwrap(), vec![true, false, true]);
    }

    #[test]
    fn encode_errors() {
        assert!(encode_state(&[true], 2).is_err());
        assert!(decode_state(0, 3).is_err());
        assert!(decode_state(9, 3).is_err());
    }

    #[test]
    fn roundtrip_small() {
        for n in 1..=5 {
            for id in 1..=(1u32 << n) {
                let bits = decode_state(id, n).unwrap();
                assert_eq!(encode_state(&bits, n).unwrap(), id);
            }
        }
    }

    #[test]
    fn step_triangle() {
        // triangle, k1=k2=1: state 5=(1,0,0) -> (0,1,1)=4
        let sc = scen(3, &[(1, 2), (1, 3), (2, 3)], 1, 1, &[]);
        assert_eq!(step(5, &sc), 4);
        // all-active is fixed: no inactive neighbors anywhere
        assert_eq!(step(8, &sc), 8);
        // all-inactive is fixed for any k1 >= 1
        assert_eq!(step(1, &sc), 1);
    }

    #[test]
    fn step_path() {
        // path 1-2-3, k1=2, k2=1: 6=(1,0,1) -> 3=(0,1,0)
        let sc = scen(3, &[(1, 2), (2, 3)], 2, 1, &[]);
        assert_eq!(step(6, &sc), 3);
    }

    #[test]
    fn isolated_node_is_frozen() {
        // node 3 isolated: its bit never changes under t
        let sc = scen(3, &[(1, 2)], 1, 1, &[]);
        let t = build_t(&sc);
        for id in 1..=8u32 {
            let before = decode_state(id, 3).unwrap()[2];
            let after = decode_state(t.apply(id), 3).unwrap()[2];
            assert_eq!(before, after);
        }
    }

    #[test]
    fn frozen_above_max_degree() {
        // k1,k2 > max degree: t is the identity
        let sc = scen(4, &[(1, 2), (2, 3), (3, 4)], 3, 3, &[]);
        assert!(build_t(&sc).is_identity());
    }

    #[test]
    fn input_map_constant_when_s_empty() {
        let sc = scen(3, &[(1, 2), (2, 3)], 1, 1, &[]);
        let s9 = build_input_map(7, &sc);
        for x in 1..=8 {
            assert_eq!(s9.apply(x), 7);
        }
    }

    #[test]
    fn input_map_falls_through_on_s() {
        // S={5}: input s_3 sends 5 to step(5), everything else to 3
        let sc = scen(3, &[(1, 2), (1, 3), (2, 3)], 1, 1, &[5]);
        let s3 = build_input_map(3, &sc);
        assert_eq!(s3.apply(5), step(5, &sc));
        assert_eq!(s3.apply(7), 3);
    }

    #[test]
    fn generator_counts() {
        let sc0 = scen(5, &[(1, 2)], 1, 1, &[]);
        assert_eq!(build_generators(&sc0).len(), 33);
        let sc2 = scen(5, &[(1, 2)], 1, 1, &[11, 19, 20, 25]);
        assert_eq!(build_generators(&sc2).len(), 29);
        let sc3 = scen(5, &[(1, 2)], 1, 1, &[8, 15, 20, 22, 29]);
        assert_eq!(build_generators(&sc3).len(), 28);
    }

    #[test]
    fn monotone_never_shrinks() {
        let g = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        for k1 in 1..=4 {
            let t = build_monotone_t(&g, k1);
            for id in 1..=16u32 {
                let before = (id - 1).count_ones();
                let after = (t.apply(id) - 1).count_ones();
                assert!(after >= before);
            }
        }
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(1, 4)]).is_err());
        assert!(Graph::new(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(0, &[]).is_err());
    }
}
