//! Dual-edge DAGs, decomposability and junction trees.
//!
//! Vertices are numbered `1..=n`. Both edge sets follow the convention
//! that an edge `(i, j)` has `i < j`, so every edge set is acyclic by
//! construction once the convention is validated.

use std::collections::BTreeSet;

use crate::error::{DeunError, Result};

pub type Edge = (u32, u32);

/// A directed acyclic graph over vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: u32,
    edges: BTreeSet<Edge>,
}

impl Dag {
    pub fn new(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(DeunError::EmptyGraph);
        }
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for &(i, j) in &edges {
            if i == j {
                return Err(DeunError::SelfLoop(i));
            }
            if i < 1 || j < 1 || i > n || j > n {
                return Err(DeunError::Parse(format!(
                    "edge ({i}, {j}) refers to a vertex outside 1..={n}"
                )));
            }
        }
        let dag = Dag { n, edges };
        if let Some(cycle) = dag.find_cycle() {
            return Err(DeunError::CycleDetected(cycle));
        }
        Ok(dag)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn parents(&self, v: u32) -> Vec<u32> {
        self.edges
            .iter()
            .filter(|&&(_, j)| j == v)
            .map(|&(i, _)| i)
            .collect()
    }

    pub fn children(&self, v: u32) -> Vec<u32> {
        self.edges
            .iter()
            .filter(|&&(i, _)| i == v)
            .map(|&(_, j)| j)
            .collect()
    }

    /// True when a directed path `from -> ... -> to` exists.
    pub fn has_path(&self, from: u32, to: u32) -> bool {
        let mut stack = vec![from];
        let mut seen = vec![false; self.n as usize + 1];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for c in self.children(v) {
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    stack.push(c);
                }
            }
        }
        false
    }

    /// A topological order of the vertices (lowest index first among ready
    /// vertices, so `1..=n` whenever edges follow the `i < j` convention).
    pub fn topological_order(&self) -> Vec<u32> {
        let mut indeg = vec![0usize; self.n as usize + 1];
        for &(_, j) in &self.edges {
            indeg[j as usize] += 1;
        }
        let mut ready: BTreeSet<u32> = (1..=self.n).filter(|&v| indeg[v as usize] == 0).collect();
        let mut order = Vec::with_capacity(self.n as usize);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for c in self.children(v) {
                indeg[c as usize] -= 1;
                if indeg[c as usize] == 0 {
                    ready.insert(c);
                }
            }
        }
        order
    }

    fn find_cycle(&self) -> Option<Vec<u32>> {
        // Iterative DFS with colors; reconstructs one cycle on detection.
        let n = self.n as usize;
        let mut color = vec![0u8; n + 1]; // 0 white, 1 grey, 2 black
        let mut parent = vec![0u32; n + 1];
        for start in 1..=self.n {
            if color[start as usize] != 0 {
                continue;
            }
            let mut stack = vec![(start, false)];
            while let Some((v, done)) = stack.pop() {
                if done {
                    color[v as usize] = 2;
                    continue;
                }
                if color[v as usize] == 2 {
                    continue;
                }
                color[v as usize] = 1;
                stack.push((v, true));
                for c in self.children(v) {
                    match color[c as usize] {
                        0 => {
                            parent[c as usize] = v;
                            stack.push((c, false));
                        }
                        1 => {
                            let mut cycle = vec![c, v];
                            let mut cur = v;
                            while cur != c {
                                cur = parent[cur as usize];
                                cycle.push(cur);
                            }
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                }
            }
        }
        None
    }
}

/// A directed expected utility network: one vertex set, two edge sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deun {
    n: u32,
    prob_edges: BTreeSet<Edge>,
    util_edges: BTreeSet<Edge>,
}

/// Validates the structural constraints and builds a [`Deun`].
pub fn validate_deun(
    n: u32,
    prob_edges: impl IntoIterator<Item = Edge>,
    util_edges: impl IntoIterator<Item = Edge>,
) -> Result<Deun> {
    if n == 0 {
        return Err(DeunError::EmptyGraph);
    }
    let prob: BTreeSet<Edge> = prob_edges.into_iter().collect();
    let util: BTreeSet<Edge> = util_edges.into_iter().collect();
    for set in [&prob, &util] {
        for &(i, j) in set {
            if i == j {
                return Err(DeunError::SelfLoop(i));
            }
            if i > j {
                return Err(DeunError::OrderingViolated(i, j));
            }
        }
    }
    // Edge bounds and acyclicity (trivial under i < j, but Dag also checks bounds).
    Dag::new(n, prob.iter().copied())?;
    Dag::new(n, util.iter().copied())?;
    Ok(Deun {
        n,
        prob_edges: prob,
        util_edges: util,
    })
}

impl Deun {
    pub fn new(
        n: u32,
        prob_edges: impl IntoIterator<Item = Edge>,
        util_edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        validate_deun(n, prob_edges, util_edges)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn prob_edges(&self) -> &BTreeSet<Edge> {
        &self.prob_edges
    }

    pub fn util_edges(&self) -> &BTreeSet<Edge> {
        &self.util_edges
    }

    pub fn prob_dag(&self) -> Dag {
        Dag::new(self.n, self.prob_edges.iter().copied()).expect("validated on construction")
    }

    /// Probabilistic parents of `v`, ascending.
    pub fn prob_parents(&self, v: u32) -> Vec<u32> {
        self.prob_edges
            .iter()
            .filter(|&&(_, j)| j == v)
            .map(|&(i, _)| i)
            .collect()
    }

    /// Utility parents of `v`, ascending.
    pub fn util_parents(&self, v: u32) -> Vec<u32> {
        self.util_edges
            .iter()
            .filter(|&&(_, j)| j == v)
            .map(|&(i, _)| i)
            .collect()
    }

    fn skeleton_adjacent(&self, a: u32, b: u32) -> bool {
        let e = (a.min(b), a.max(b));
        self.prob_edges.contains(&e)
    }
}

/// Why a network fails decomposability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposabilityWitness {
    /// Co-parents `(a, b)` of `child` lack a joining probabilistic edge.
    UnmarriedParents { a: u32, b: u32, child: u32 },
    /// Utility edge `(i, j)` has no directed probabilistic path.
    MissingPath { i: u32, j: u32 },
}

impl std::fmt::Display for DecomposabilityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecomposabilityWitness::UnmarriedParents { a, b, child } => write!(
                f,
                "parents {a} and {b} of vertex {child} are not joined by a probabilistic edge"
            ),
            DecomposabilityWitness::MissingPath { i, j } => write!(
                f,
                "utility edge ({i}, {j}) has no directed probabilistic path from {i} to {j}"
            ),
        }
    }
}

/// Checks the two decomposability conditions, returning the first
/// violation (unmarried co-parents scanned before unshadowed utility
/// edges, each in ascending order).
pub fn is_decomposable(deun: &Deun) -> std::result::Result<(), DecomposabilityWitness> {
    for child in 1..=deun.n {
        let parents = deun.prob_parents(child);
        for (k, &a) in parents.iter().enumerate() {
            for &b in &parents[k + 1..] {
                if !deun.skeleton_adjacent(a, b) {
                    return Err(DecomposabilityWitness::UnmarriedParents { a, b, child });
                }
            }
        }
    }
    let dag = deun.prob_dag();
    for &(i, j) in &deun.util_edges {
        if !dag.has_path(i, j) {
            return Err(DecomposabilityWitness::MissingPath { i, j });
        }
    }
    Ok(())
}

/// Adds the probabilistic edges needed to make `deun` decomposable:
/// first every utility edge lacking a directed probabilistic path, then
/// co-parent fill-in edges iterated to a fixpoint. Utility edges are
/// never touched; added edges are oriented low index to high index.
pub fn make_decomposable(deun: &Deun) -> Deun {
    let mut prob = deun.prob_edges.clone();
    let dag = deun.prob_dag();
    for &(i, j) in &deun.util_edges {
        if !dag.has_path(i, j) {
            prob.insert((i, j));
        }
    }
    loop {
        let mut added = false;
        for child in 1..=deun.n {
            let parents: Vec<u32> = prob
                .iter()
                .filter(|&&(_, j)| j == child)
                .map(|&(i, _)| i)
                .collect();
            for (k, &a) in parents.iter().enumerate() {
                for &b in &parents[k + 1..] {
                    if prob.insert((a.min(b), a.max(b))) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    Deun {
        n: deun.n,
        prob_edges: prob,
        util_edges: deun.util_edges.clone(),
    }
}

/// RIP-ordered maximal cliques of the probabilistic skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSet {
    /// Maximal cliques in maximum-cardinality-search discovery order.
    pub cliques: Vec<BTreeSet<u32>>,
    /// `separators[j] = C_j ∩ (C_0 ∪ … ∪ C_{j-1})`; empty for index 0
    /// and for the first clique of every connected component.
    pub separators: Vec<BTreeSet<u32>>,
    /// For each clique, the smallest earlier clique containing its
    /// separator; `None` for component roots.
    pub rip_parent: Vec<Option<usize>>,
}

/// Maximal cliques of the skeleton of `(V, E_p)` via maximum-cardinality
/// search from vertex 1, ties broken by lowest vertex index.
pub fn enumerate_cliques(deun: &Deun) -> Result<CliqueSet> {
    if let Err(w) = is_decomposable(deun) {
        return Err(DeunError::NotDecomposable(w.to_string()));
    }
    let n = deun.n as usize;
    let mut neighbors: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n + 1];
    for &(i, j) in &deun.prob_edges {
        neighbors[i as usize].insert(j);
        neighbors[j as usize].insert(i);
    }

    let mut visited = vec![false; n + 1];
    let mut weight = vec![0usize; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut cliques: Vec<BTreeSet<u32>> = Vec::new();
    let mut current: BTreeSet<u32> = BTreeSet::new();

    for step in 0..n {
        let v = (1..=deun.n)
            .filter(|&v| !visited[v as usize])
            .max_by(|&a, &b| {
                weight[a as usize]
                    .cmp(&weight[b as usize])
                    .then(b.cmp(&a)) // lower index wins ties
            })
            .expect("unvisited vertex exists");
        visited[v as usize] = true;
        order.push(v);
        let prior: BTreeSet<u32> = neighbors[v as usize]
            .iter()
            .copied()
            .filter(|&u| visited[u as usize])
            .collect();
        // Chordality: the visited neighborhood must be complete.
        for &a in &prior {
            for &b in &prior {
                if a < b && !neighbors[a as usize].contains(&b) {
                    return Err(DeunError::NotDecomposable(format!(
                        "skeleton is not chordal: visited neighbors {a} and {b} of {v} are not adjacent"
                    )));
                }
            }
        }
        if step == 0 || prior == current {
            current.insert(v);
        } else {
            cliques.push(std::mem::take(&mut current));
            current = prior;
            current.insert(v);
        }
        for &u in &neighbors[v as usize] {
            if !visited[u as usize] {
                weight[u as usize] += 1;
            }
        }
    }
    if !current.is_empty() {
        cliques.push(current);
    }
    debug_assert!(cliques.iter().all(|c| {
        !cliques
            .iter()
            .any(|d| d != c && c.is_subset(d))
    }));

    let mut separators = Vec::with_capacity(cliques.len());
    let mut rip_parent = Vec::with_capacity(cliques.len());
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    for (idx, clique) in cliques.iter().enumerate() {
        let sep: BTreeSet<u32> = clique.intersection(&seen).copied().collect();
        let parent = if sep.is_empty() {
            None
        } else {
            match (0..idx).find(|&p| sep.is_subset(&cliques[p])) {
                Some(p) => Some(p),
                None => {
                    return Err(DeunError::NotDecomposable(
                        "clique ordering violates the running intersection property".into(),
                    ))
                }
            }
        };
        seen.extend(clique.iter().copied());
        separators.push(sep);
        rip_parent.push(parent);
    }
    Ok(CliqueSet {
        cliques,
        separators,
        rip_parent,
    })
}

/// Junction tree: RIP-ordered cliques plus a family-to-clique assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JunctionTree {
    pub clique_set: CliqueSet,
    /// `family_assignment[v - 1]` is the index of the lowest clique
    /// containing `{v} ∪ Π_v^p`.
    pub family_assignment: Vec<usize>,
}

impl JunctionTree {
    /// Directed tree edges `(parent clique, child clique)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.clique_set
            .rip_parent
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.map(|i| (i, j)))
            .collect()
    }

    /// Vertices assigned to clique `c`, ascending.
    pub fn assigned(&self, c: usize) -> Vec<u32> {
        self.family_assignment
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a == c)
            .map(|(v, _)| v as u32 + 1)
            .collect()
    }
}

pub fn build_junction_tree(deun: &Deun) -> Result<JunctionTree> {
    let clique_set = enumerate_cliques(deun)?;
    let mut family_assignment = Vec::with_capacity(deun.n as usize);
    for v in 1..=deun.n {
        let mut family: BTreeSet<u32> = deun.prob_parents(v).into_iter().collect();
        family.insert(v);
        let idx = clique_set
            .cliques
            .iter()
            .position(|c| family.is_subset(c))
            .ok_or_else(|| {
                DeunError::NotDecomposable(format!(
                    "family of vertex {v} is not contained in any clique"
                ))
            })?;
        family_assignment.push(idx);
    }
    Ok(JunctionTree {
        clique_set,
        family_assignment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ref_prob_edges() -> Vec<Edge> {
        vec![(1, 2), (1, 3), (2, 3), (2, 4), (1, 5)]
    }

    fn ref_util_edges() -> Vec<Edge> {
        vec![(1, 2), (1, 3), (1, 4), (2, 4), (1, 5)]
    }

    fn ref_deun_extended() -> Deun {
        let mut util = ref_util_edges();
        util.push((2, 5));
        Deun::new(5, ref_prob_edges(), util).unwrap()
    }

    fn ref_deun() -> Deun {
        Deun::new(5, ref_prob_edges(), ref_util_edges()).unwrap()
    }

    #[test]
    fn validates_ref_deun() {
        let deun = ref_deun();
        assert_eq!(deun.prob_parents(3), vec![1, 2]);
        assert_eq!(deun.util_parents(4), vec![1, 2]);
    }

    #[test]
    fn rejects_reversed_utility_edge() {
        let err = Deun::new(5, ref_prob_edges(), vec![(4, 1)]).unwrap_err();
        assert!(matches!(err, DeunError::OrderingViolated(4, 1)));
    }

    #[test]
    fn trivial_single_vertex() {
        let deun = Deun::new(1, vec![], vec![]).unwrap();
        assert!(is_decomposable(&deun).is_ok());
        let cs = enumerate_cliques(&deun).unwrap();
        assert_eq!(cs.cliques, vec![BTreeSet::from([1])]);
    }

    #[test]
    fn rejects_empty_graph() {
        assert!(matches!(
            Deun::new(0, vec![], vec![]),
            Err(DeunError::EmptyGraph)
        ));
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(
            Deun::new(3, vec![(2, 2)], vec![]),
            Err(DeunError::SelfLoop(2))
        ));
    }

    #[test]
    fn ref_extended_not_decomposable_with_witness() {
        let w = is_decomposable(&ref_deun_extended()).unwrap_err();
        assert_eq!(w, DecomposabilityWitness::MissingPath { i: 2, j: 5 });
    }

    #[test]
    fn ref_deun_decomposable() {
        assert!(is_decomposable(&ref_deun()).is_ok());
    }

    #[test]
    fn chain_with_empty_utilities_is_decomposable() {
        let deun = Deun::new(3, vec![(1, 2), (2, 3)], vec![]).unwrap();
        assert!(is_decomposable(&deun).is_ok());
    }

    #[test]
    fn ref_extended_fill_adds_exactly_2_5() {
        let fixed = make_decomposable(&ref_deun_extended());
        let mut expected: BTreeSet<Edge> = ref_prob_edges().into_iter().collect();
        expected.insert((2, 5));
        assert_eq!(fixed.prob_edges(), &expected);
        assert!(is_decomposable(&fixed).is_ok());
    }

    #[test]
    fn make_decomposable_is_idempotent() {
        let once = make_decomposable(&ref_deun_extended());
        let twice = make_decomposable(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn coparent_fill() {
        let deun = Deun::new(3, vec![(1, 3), (2, 3)], vec![]).unwrap();
        let fixed = make_decomposable(&deun);
        assert!(fixed.prob_edges().contains(&(1, 2)));
        assert!(is_decomposable(&fixed).is_ok());
    }

    #[test]
    fn ref_graph_cliques_and_separators() {
        let deun = ref_deun();
        let cs = enumerate_cliques(&deun).unwrap();
        assert_eq!(
            cs.cliques,
            vec![
                BTreeSet::from([1, 2, 3]),
                BTreeSet::from([2, 4]),
                BTreeSet::from([1, 5]),
            ]
        );
        assert_eq!(
            cs.separators,
            vec![BTreeSet::new(), BTreeSet::from([2]), BTreeSet::from([1])]
        );
        assert_eq!(cs.rip_parent, vec![None, Some(0), Some(0)]);
    }

    #[test]
    fn chain_cliques_are_edges() {
        let deun = Deun::new(3, vec![(1, 2), (2, 3)], vec![]).unwrap();
        let cs = enumerate_cliques(&deun).unwrap();
        assert_eq!(
            cs.cliques,
            vec![BTreeSet::from([1, 2]), BTreeSet::from([2, 3])]
        );
        assert_eq!(cs.separators[1], BTreeSet::from([2]));
    }

    #[test]
    fn ref_graph_junction_tree() {
        let jt = build_junction_tree(&ref_deun()).unwrap();
        assert_eq!(jt.edges(), vec![(0, 1), (0, 2)]);
        // Families: 1,2,3 -> {1,2,3}; 4 -> {2,4}; 5 -> {1,5}.
        assert_eq!(jt.family_assignment, vec![0, 0, 0, 1, 2]);
    }

    #[test]
    fn disconnected_components_give_forest() {
        let deun = Deun::new(4, vec![(1, 2), (3, 4)], vec![]).unwrap();
        let jt = build_junction_tree(&deun).unwrap();
        let roots = jt
            .clique_set
            .rip_parent
            .iter()
            .filter(|p| p.is_none())
            .count();
        assert_eq!(roots, 2);
    }

    #[test]
    fn single_clique_tree() {
        let deun = Deun::new(2, vec![(1, 2)], vec![]).unwrap();
        let jt = build_junction_tree(&deun).unwrap();
        assert_eq!(jt.clique_set.cliques.len(), 1);
        assert!(jt.edges().is_empty());
    }

    #[test]
    fn not_decomposable_error_from_enumerate() {
        let deun = Deun::new(3, vec![(1, 3), (2, 3)], vec![]).unwrap();
        assert!(matches!(
            enumerate_cliques(&deun),
            Err(DeunError::NotDecomposable(_))
        ));
    }

    #[test]
    fn cycle_detection_in_dag() {
        // Dag::new accepts arbitrary orientations, so cycles are possible.
        let err = Dag::new(3, vec![(1, 2), (2, 3), (3, 1)]).unwrap_err();
        assert!(matches!(err, DeunError::CycleDetected(_)));
    }
}
