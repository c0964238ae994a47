//! The pattern-overlap graph on m-permutations: construction with node
//! exclusions, walk enumeration, realization of window paths as permutation
//! sets, reachability, and DOT export.
//!
//! Nodes are kept as a lexicographically sorted array addressed by binary
//! search; adjacency is compressed sparse rows so the order-9 graph
//! (362880 nodes, ~3.3M arcs) stays within desk-scale memory.

use num::BigUint;
use serde::Serialize;

use crate::determinacy::WindowPath;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{all_permutations, reduce_slice, Permutation};
use crate::poset;

/// Directed graph on a subset of the m-permutations, with an arc from `a` to
/// `b` exactly when the length-(m-1) suffix pattern of `a` equals the prefix
/// pattern of `b`. In the full graph every node has out- and in-degree `m`.
#[derive(Clone, Debug)]
pub struct OverlapGraph {
    m: usize,
    nodes: Vec<Permutation>,
    row_offsets: Vec<usize>,
    targets: Vec<u32>,
    /// Optional multiplicities: the (m+1)-permutations realizing each arc,
    /// parallel to `targets`.
    labels: Option<Vec<Vec<Permutation>>>,
}

/// Basic statistics, serialized by the command-line surface.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GraphStats {
    pub m: usize,
    pub nodes: usize,
    pub arcs: usize,
    pub scc_count: usize,
}

/// Builds the overlap graph of order `m` on all m-permutations except
/// `excluded`, with every induced arc.
pub fn build_overlap_graph(
    m: usize,
    excluded: &[Permutation],
    limits: &Limits,
) -> Result<OverlapGraph> {
    for p in excluded {
        if p.len() != m {
            return Err(Error::InvalidInput(format!(
                "excluded node {p} does not have length {m}"
            )));
        }
    }
    let mut excluded_sorted: Vec<&Permutation> = excluded.iter().collect();
    excluded_sorted.sort();
    excluded_sorted.dedup();
    build_overlap_graph_filtered(
        m,
        |p| excluded_sorted.binary_search(&p).is_err(),
        limits,
    )
}

/// Builds the overlap graph of order `m` keeping exactly the nodes accepted
/// by `keep`.
pub(crate) fn build_overlap_graph_filtered(
    m: usize,
    keep: impl Fn(&Permutation) -> bool,
    limits: &Limits,
) -> Result<OverlapGraph> {
    if m == 0 {
        return Err(Error::InvalidInput("graph order m must be >= 1".into()));
    }
    check_universe_budget(m, limits)?;
    let nodes: Vec<Permutation> = all_permutations(m).filter(|p| keep(p)).collect();

    let mut row_offsets = Vec::with_capacity(nodes.len() + 1);
    let mut targets = Vec::new();
    row_offsets.push(0);
    for node in &nodes {
        let suffix = reduce_slice(&node.values()[1..]);
        let mut row: Vec<u32> = Vec::with_capacity(m);
        for rank in 1..=m as u32 {
            // The unique successor whose prefix pattern is `suffix` and whose
            // final entry has the given rank.
            let mut candidate: Vec<u32> = suffix
                .values()
                .iter()
                .map(|&v| if v >= rank { v + 1 } else { v })
                .collect();
            candidate.push(rank);
            let candidate = Permutation::from_values_unchecked(candidate);
            if let Ok(idx) = nodes.binary_search(&candidate) {
                row.push(idx as u32);
            }
        }
        row.sort_unstable();
        targets.extend_from_slice(&row);
        row_offsets.push(targets.len());
    }

    Ok(OverlapGraph {
        m,
        nodes,
        row_offsets,
        targets,
        labels: None,
    })
}

fn check_universe_budget(m: usize, limits: &Limits) -> Result<()> {
    let mut factorial: u64 = 1;
    for i in 1..=m as u64 {
        factorial = factorial.saturating_mul(i);
    }
    if factorial > limits.graph_nodes {
        return Err(Error::ResourceLimit(format!(
            "order-{m} graph has {m}! candidate nodes; budget allows at most {}",
            limits.graph_nodes
        )));
    }
    Ok(())
}

impl OverlapGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn nodes(&self) -> &[Permutation] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &Permutation {
        &self.nodes[idx]
    }

    pub fn node_index(&self, p: &Permutation) -> Option<usize> {
        self.nodes.binary_search(p).ok()
    }

    pub fn out_neighbors(&self, idx: usize) -> &[u32] {
        &self.targets[self.row_offsets[idx]..self.row_offsets[idx + 1]]
    }

    /// All arcs as (source, target) index pairs, in deterministic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nodes.len()).flat_map(move |u| {
            self.out_neighbors(u).iter().map(move |&v| (u, v as usize))
        })
    }

    /// Labels of the arc with global index `arc`, when labels are attached.
    pub fn arc_labels(&self, arc: usize) -> Option<&[Permutation]> {
        self.labels.as_ref().map(|l| l[arc].as_slice())
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// Computes, for every arc, the set of (m+1)-permutations realizing the
    /// overlap, keeping only those accepted by `keep`. With `prune_unlabeled`
    /// arcs that end up with no label are removed from the graph.
    pub fn attach_arc_labels(
        mut self,
        keep: impl Fn(&Permutation) -> bool,
        prune_unlabeled: bool,
        limits: &Limits,
    ) -> Result<OverlapGraph> {
        check_universe_budget(self.m + 1, limits)?;
        let mut labels: Vec<Vec<Permutation>> = vec![Vec::new(); self.targets.len()];
        for w in all_permutations(self.m + 1) {
            if !keep(&w) {
                continue;
            }
            let head = reduce_slice(&w.values()[..self.m]);
            let tail = reduce_slice(&w.values()[1..]);
            let (Some(u), Some(v)) = (self.node_index(&head), self.node_index(&tail)) else {
                continue;
            };
            let row = &self.targets[self.row_offsets[u]..self.row_offsets[u + 1]];
            // On a freshly induced graph the arc always exists (w itself
            // witnesses the overlap rule); on an already pruned graph the
            // label has nowhere to go and is dropped.
            if let Ok(within) = row.binary_search(&(v as u32)) {
                labels[self.row_offsets[u] + within].push(w);
            }
        }

        if prune_unlabeled {
            let mut row_offsets = Vec::with_capacity(self.nodes.len() + 1);
            let mut targets = Vec::new();
            let mut kept_labels = Vec::new();
            row_offsets.push(0);
            for u in 0..self.nodes.len() {
                for arc in self.row_offsets[u]..self.row_offsets[u + 1] {
                    if !labels[arc].is_empty() {
                        targets.push(self.targets[arc]);
                        kept_labels.push(std::mem::take(&mut labels[arc]));
                    }
                }
                row_offsets.push(targets.len());
            }
            self.row_offsets = row_offsets;
            self.targets = targets;
            self.labels = Some(kept_labels);
        } else {
            self.labels = Some(labels);
        }
        Ok(self)
    }

    /// True when a directed path (possibly of length 0) leads from `u` to `v`.
    pub fn reachable(&self, u: &Permutation, v: &Permutation) -> Result<bool> {
        let ui = self
            .node_index(u)
            .ok_or_else(|| Error::InvalidInput(format!("{u} is not a node")))?;
        let vi = self
            .node_index(v)
            .ok_or_else(|| Error::InvalidInput(format!("{v} is not a node")))?;
        Ok(self.reachable_idx(ui, vi))
    }

    pub fn reachable_idx(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = std::collections::VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            for &y in self.out_neighbors(x) {
                let y = y as usize;
                if y == v {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Number of strongly connected components (Kosaraju, iterative).
    pub fn scc_count(&self) -> usize {
        let n = self.nodes.len();
        let mut order = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut stack = vec![(start, 0usize)];
            while let Some(&mut (u, ref mut child)) = stack.last_mut() {
                let row = self.out_neighbors(u);
                if *child < row.len() {
                    let v = row[*child] as usize;
                    *child += 1;
                    if !visited[v] {
                        visited[v] = true;
                        stack.push((v, 0));
                    }
                } else {
                    order.push(u);
                    stack.pop();
                }
            }
        }

        let mut reverse = vec![Vec::new(); n];
        for (u, v) in self.arcs() {
            reverse[v].push(u);
        }

        let mut component = vec![false; n];
        let mut count = 0;
        for &start in order.iter().rev() {
            if component[start] {
                continue;
            }
            count += 1;
            component[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &reverse[u] {
                    if !component[v] {
                        component[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// DOT rendering with compact permutation names; byte-identical across
    /// runs for the same graph.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph overlap {\n");
        for node in &self.nodes {
            out.push_str(&format!("  \"{node}\";\n"));
        }
        for (u, v) in self.arcs() {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", self.nodes[u], self.nodes[v]));
        }
        out.push_str("}\n");
        out
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            m: self.m,
            nodes: self.nodes.len(),
            arcs: self.targets.len(),
            scc_count: self.scc_count(),
        }
    }

    /// Lazily yields every directed walk with `arc_count` arcs as a sequence
    /// of `arc_count + 1` node indices, in lexicographic order of the node
    /// sequence. With `arc_count = 0` this is exactly the node set.
    pub fn walks(&self, arc_count: usize) -> Walks<'_> {
        Walks {
            graph: self,
            target_len: arc_count + 1,
            next_start: 0,
            path: Vec::new(),
            cursors: Vec::new(),
        }
    }

    /// Total number of walks with `arc_count` arcs. When arc labels are
    /// attached each walk counts with the product of its arc multiplicities,
    /// which is the transfer-matrix total for the labeled graph.
    pub fn count_walks(&self, arc_count: usize) -> BigUint {
        let n = self.nodes.len();
        // weight[u] = number of (weighted) walks with `steps` arcs from u.
        let mut weight: Vec<BigUint> = vec![BigUint::from(1u32); n];
        for _ in 0..arc_count {
            let mut next: Vec<BigUint> = vec![BigUint::default(); n];
            for u in 0..n {
                let mut acc = BigUint::default();
                for arc in self.row_offsets[u]..self.row_offsets[u + 1] {
                    let v = self.targets[arc] as usize;
                    let multiplicity = match &self.labels {
                        Some(labels) => labels[arc].len() as u64,
                        None => 1,
                    };
                    acc += &weight[v] * multiplicity;
                }
                next[u] = acc;
            }
            weight = next;
        }
        weight.into_iter().sum()
    }

    /// The window path spelled by a walk of node indices.
    pub fn walk_to_window_path(&self, walk: &[u32]) -> Result<WindowPath> {
        WindowPath::new(
            self.m,
            walk.iter().map(|&i| self.nodes[i as usize].clone()).collect(),
        )
    }
}

/// Iterator over fixed-length walks; single-consumer, depth-first.
pub struct Walks<'g> {
    graph: &'g OverlapGraph,
    target_len: usize,
    next_start: usize,
    path: Vec<u32>,
    cursors: Vec<usize>,
}

impl Iterator for Walks<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        loop {
            if self.path.len() == self.target_len {
                let out = self.path.clone();
                self.path.pop();
                self.cursors.pop();
                return Some(out);
            }
            if self.path.is_empty() {
                if self.next_start >= self.graph.node_count() {
                    return None;
                }
                self.path.push(self.next_start as u32);
                self.cursors.push(0);
                self.next_start += 1;
            } else {
                let depth = self.path.len() - 1;
                let u = self.path[depth] as usize;
                let row = self.graph.out_neighbors(u);
                let cursor = self.cursors[depth];
                if cursor < row.len() {
                    self.cursors[depth] = cursor + 1;
                    self.path.push(row[cursor]);
                    self.cursors.push(0);
                } else {
                    self.path.pop();
                    self.cursors.pop();
                }
            }
        }
    }
}

/// Outcome of realizing a window path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    /// Every permutation whose window path equals the input, sorted.
    Realized(Vec<Permutation>),
    /// The induced position relation is cyclic; no permutation fits.
    Unrealizable,
}

impl Realization {
    pub fn permutations(&self) -> &[Permutation] {
        match self {
            Realization::Realized(perms) => perms,
            Realization::Unrealizable => &[],
        }
    }

    pub fn is_unrealizable(&self) -> bool {
        matches!(self, Realization::Unrealizable)
    }
}

/// The set of all n-permutations whose window path equals `path`, where
/// `n = k + arc_count`: the linear extensions of the partial order the
/// windows impose on positions. A cyclic relation yields no realization and
/// is flagged rather than treated as an error.
pub fn realize_path(path: &WindowPath, limits: &Limits) -> Result<Realization> {
    let n = path.permutation_length();
    if n > limits.linear_ext_n {
        return Err(Error::ResourceLimit(format!(
            "realizing a path of {n} positions; budget allows n <= {}",
            limits.linear_ext_n
        )));
    }
    let Some(above) = position_relation(path.k(), path.nodes()) else {
        return Ok(Realization::Unrealizable);
    };
    let extensions = poset::enumerate_extensions(&above);
    let mut perms: Vec<Permutation> = extensions
        .into_iter()
        .map(|order| {
            // order[r] is the position receiving value r + 1.
            let mut values = vec![0u32; n];
            for (r, &position) in order.iter().enumerate() {
                values[position] = r as u32 + 1;
            }
            Permutation::from_values_unchecked(values)
        })
        .collect();
    perms.sort();
    Ok(Realization::Realized(perms))
}

/// Closed strict order on the positions `0..n` forced by the windows, or
/// `None` when the windows contradict each other.
fn position_relation(k: usize, nodes: &[Permutation]) -> Option<Vec<u64>> {
    let n = k + nodes.len() - 1;
    let mut above = vec![0u64; n];
    for (start, window) in nodes.iter().enumerate() {
        let w = window.values();
        for a in 0..k {
            for b in 0..k {
                if w[a] < w[b] {
                    above[start + a] |= 1 << (start + b);
                }
            }
        }
    }
    poset::close_relation(&mut above).then_some(above)
}

/// Result of scanning all walks of the full order-k graph that realize
/// permutations of length `n` for contradictions.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WalkSurvey {
    pub k: usize,
    pub n: usize,
    pub walks_checked: u64,
    pub unrealizable_walks: u64,
}

/// Desk-scale experiment: does every walk in the full overlap graph carry at
/// least one permutation? Counts the walks whose induced position relation
/// is cyclic. Nothing downstream assumes either outcome.
pub fn unrealizable_walk_survey(k: usize, n: usize, limits: &Limits) -> Result<WalkSurvey> {
    if k == 0 || n < k {
        return Err(Error::InvalidInput(format!(
            "survey needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let graph = build_overlap_graph(k, &[], limits)?;
    let mut survey = WalkSurvey {
        k,
        n,
        walks_checked: 0,
        unrealizable_walks: 0,
    };
    let mut nodes = Vec::new();
    for walk in graph.walks(n - k) {
        nodes.clear();
        nodes.extend(walk.iter().map(|&i| graph.node(i as usize).clone()));
        survey.walks_checked += 1;
        if position_relation(k, &nodes).is_none() {
            survey.unrealizable_walks += 1;
        }
    }
    Ok(survey)
}
