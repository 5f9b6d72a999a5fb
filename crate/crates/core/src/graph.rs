//! Partitioned graphs, input normalization and the claw-freeness check.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    /// Duplicate edges are ignored; self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Induced subgraph on `keep` (sorted, distinct). Vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u]))
                    .collect()
            })
            .collect();
        SimpleGraph { adj }
    }
}

/// A graph together with a partition of its vertex set into labelled classes.
///
/// Classes are stored in increasing label order, so "lowest class index" and
/// "lowest class label" coincide. Vertex order is id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    graph: SimpleGraph,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

impl PartitionedGraph {
    pub fn new(graph: SimpleGraph, classes: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        let n = graph.n();
        let mut classes = classes;
        classes.sort_by_key(|(label, _)| *label);
        if let Some(w) = classes.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidGraph(format!("class {} declared twice", w[0].0)));
        }
        let mut class_of = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(classes.len());
        let mut members = Vec::with_capacity(classes.len());
        for (idx, (label, mut vs)) in classes.into_iter().enumerate() {
            vs.sort_unstable();
            for &v in &vs {
                if v >= n {
                    return Err(Error::InvalidGraph(format!(
                        "class {label} lists vertex {v} outside 0..{n}"
                    )));
                }
                if class_of[v] != usize::MAX {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {v} belongs to more than one class"
                    )));
                }
                class_of[v] = idx;
            }
            labels.push(label);
            members.push(vs);
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidGraph(format!("vertex {v} belongs to no class")));
        }
        Ok(Self { graph, class_of, classes: members, labels })
    }

    /// Convenience constructor from an edge list and plain class lists labelled `0..`.
    pub fn from_parts(
        n: usize,
        classes: Vec<Vec<usize>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let graph = SimpleGraph::from_edges(n, edges)?;
        Self::new(graph, classes.into_iter().enumerate().collect())
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        self.graph.neighbours(v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    /// Number of classes `m`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class index of `v` (the map `A(v)`).
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn label(&self, c: usize) -> usize {
        self.labels[c]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_index(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    pub fn degree_outside_class(&self, v: usize) -> usize {
        let c = self.class_of[v];
        self.neighbours(v).iter().filter(|&&u| self.class_of[u] != c).count()
    }

    /// True when no edge lies inside a class, no vertex is isolated and no class is empty.
    pub fn is_normalized(&self) -> bool {
        self.classes.iter().all(|c| !c.is_empty())
            && (0..self.n()).all(|v| {
                let nb = self.neighbours(v);
                !nb.is_empty() && nb.iter().all(|&u| self.class_of[u] != self.class_of[v])
            })
    }

    /// Restriction to the vertices satisfying `keep`; every class survives,
    /// possibly empty. Returns the new graph and the new-to-old vertex map.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> (PartitionedGraph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n()).filter(|&v| keep(v)).collect();
        let graph = self.graph.induced(&kept);
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let mut class_of = Vec::with_capacity(kept.len());
        let mut classes = vec![Vec::new(); self.class_count()];
        for (i, &v) in kept.iter().enumerate() {
            class_of.push(self.class_of[v]);
            classes[self.class_of[v]].push(i);
        }
        let g = PartitionedGraph { graph, class_of, classes, labels: self.labels.clone() };
        (g, kept)
    }

    /// Same vertex set and partition, keeping only the edges accepted by `keep`.
    fn filter_edges(&self, keep: impl Fn(usize, usize) -> bool) -> PartitionedGraph {
        let adj = (0..self.n())
            .map(|v| self.neighbours(v).iter().copied().filter(|&u| keep(v, u)).collect())
            .collect();
        PartitionedGraph {
            graph: SimpleGraph { adj },
            class_of: self.class_of.clone(),
            classes: self.classes.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Drops the classes whose index is not accepted, with their vertices.
    fn drop_classes(&self, keep_class: impl Fn(usize) -> bool) -> (PartitionedGraph, Vec<usize>) {
        let (g, map) = self.restrict(|v| keep_class(self.class_of[v]));
        let kept: Vec<usize> = (0..g.class_count()).filter(|&c| keep_class(c)).collect();
        let mut class_index = vec![usize::MAX; g.class_count()];
        for (i, &c) in kept.iter().enumerate() {
            class_index[c] = i;
        }
        let class_of = g.class_of.iter().map(|&c| class_index[c]).collect();
        let classes = kept.iter().map(|&c| g.classes[c].clone()).collect();
        let labels = kept.iter().map(|&c| g.labels[c]).collect();
        (PartitionedGraph { graph: g.graph, class_of, classes, labels }, map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationReport {
    pub removed_intra_class_edges: usize,
    /// `(class label, isolated vertex)` in extraction order; vertex ids are the raw ids.
    pub extracted_classes: Vec<(usize, usize)>,
    pub remaining_graph: PartitionedGraph,
    /// Remaining-graph vertex id to raw vertex id.
    pub vertex_map: Vec<usize>,
}

/// Strips intra-class edges, then repeatedly removes every class holding an
/// isolated vertex (recording its lowest-id isolated vertex) until no vertex
/// is isolated.
pub fn normalize(raw: &PartitionedGraph) -> Result<NormalizationReport> {
    if let Some(c) = raw.classes.iter().position(Vec::is_empty) {
        return Err(Error::EmptyClass { class: raw.labels[c] });
    }
    let removed = raw
        .graph
        .edges()
        .filter(|&(u, v)| raw.class_of[u] == raw.class_of[v])
        .count();
    let mut current = raw.filter_edges(|u, v| raw.class_of[u] != raw.class_of[v]);
    let mut vertex_map: Vec<usize> = (0..raw.n()).collect();
    let mut extracted = Vec::new();
    loop {
        let mut isolated_in = vec![None; current.class_count()];
        for v in 0..current.n() {
            let c = current.class_of[v];
            if current.neighbours(v).is_empty() && isolated_in[c].is_none() {
                isolated_in[c] = Some(v);
            }
        }
        if isolated_in.iter().all(Option::is_none) {
            break;
        }
        for (c, v) in isolated_in.iter().enumerate() {
            if let Some(v) = v {
                extracted.push((current.labels[c], vertex_map[*v]));
            }
        }
        let (next, map) = current.drop_classes(|c| isolated_in[c].is_none());
        vertex_map = map.iter().map(|&v| vertex_map[v]).collect();
        current = next;
    }
    Ok(NormalizationReport {
        removed_intra_class_edges: removed,
        extracted_classes: extracted,
        remaining_graph: current,
        vertex_map,
    })
}

/// A vertex with `r` pairwise non-adjacent neighbours in `r` distinct classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Searches for an `r`-claw; `None` means the graph is `r`-claw-free with
/// respect to its partition. Exponential in the degree.
pub fn claw_free_witness(g: &PartitionedGraph, r: usize) -> Result<Option<ClawWitness>> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("claw size r must be at least 2, got {r}")));
    }
    if r > g.max_degree() {
        return Ok(None);
    }
    for v in 0..g.n() {
        let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &u in g.neighbours(v) {
            by_class.entry(g.class_of(u)).or_default().push(u);
        }
        if by_class.len() < r {
            continue;
        }
        let groups: Vec<Vec<usize>> = by_class.into_values().collect();
        let mut chosen = Vec::with_capacity(r);
        if pick_claw(g, &groups, 0, r, &mut chosen) {
            return Ok(Some(ClawWitness { center: v, leaves: chosen }));
        }
    }
    Ok(None)
}

fn pick_claw(
    g: &PartitionedGraph,
    groups: &[Vec<usize>],
    next: usize,
    r: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == r {
        return true;
    }
    if groups.len() - next < r - chosen.len() {
        return false;
    }
    for &u in &groups[next] {
        if chosen.iter().all(|&w| !g.has_edge(u, w)) {
            chosen.push(u);
            if pick_claw(g, groups, next + 1, r, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    pick_claw(g, groups, next + 1, r, chosen)
}
