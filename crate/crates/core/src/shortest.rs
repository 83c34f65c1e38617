//! Vertex-weighted shortest paths between vertex sets.
//!
//! Path length sums the weights of every vertex on the path, both endpoints
//! included, so a multi-source search seeds each source with its own weight.
//! The *shortest-path subgraph* holds every directed edge lying on some
//! minimum-length source-to-target walk. Zero-weight vertices are allowed,
//! which means the subgraph can contain zero-length cycles; everything that
//! enumerates paths therefore tracks visited vertices instead of assuming
//! acyclicity.

use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;

use crate::boxes::{DiscreteBox, Indexed};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::rat::Rat;
use crate::weight::{Weight, R64};

/// Distances and the shortest-path subgraph between two vertex sets.
#[derive(Debug, Clone)]
pub struct SpStructure<W> {
    pub sources: BTreeSet<usize>,
    pub targets: BTreeSet<usize>,
    /// Minimum length of a source-to-v path, inclusive of both endpoints.
    pub dist_from_source: Vec<Option<W>>,
    /// Minimum length of a v-to-target path, inclusive of both endpoints.
    pub dist_to_target: Vec<Option<W>>,
    /// Minimum source-to-target length; `None` when unreachable.
    pub shortest: Option<W>,
    /// Directed edges lying on some minimum-length source-to-target walk.
    pub edges: Vec<(usize, usize)>,
    /// Vertex lies on some minimum-length source-to-target walk.
    pub on_shortest: Vec<bool>,
    /// Forward adjacency restricted to `edges`.
    pub out: Vec<Vec<usize>>,
}

/// Multi-source Dijkstra; every source starts at its own weight.
/// `parent[v] == usize::MAX` marks sources and unreached vertices.
pub fn dijkstra_multi<W: Weight>(
    adj: &[Vec<usize>],
    weights: &[W],
    sources: &BTreeSet<usize>,
) -> (Vec<Option<W>>, Vec<usize>) {
    let n = adj.len();
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        let d = weights[s].clone();
        if dist[s].as_ref().map_or(true, |cur| d < *cur) {
            dist[s] = Some(d.clone());
            heap.push(Reverse((d, s)));
        }
    }
    while let Some(Reverse((d, u))) = heap.pop() {
        match &dist[u] {
            Some(cur) if *cur < d => continue, // stale entry
            _ => {}
        }
        for &v in &adj[u] {
            let cand = d.add(&weights[v]);
            if dist[v].as_ref().map_or(true, |cur| cand < *cur) {
                dist[v] = Some(cand.clone());
                parent[v] = u;
                heap.push(Reverse((cand, v)));
            }
        }
    }
    (dist, parent)
}

impl<W: Weight> SpStructure<W> {
    /// Builds the structure for `sources -> targets` on an undirected graph.
    pub fn build(
        adj: &[Vec<usize>],
        weights: &[W],
        sources: &BTreeSet<usize>,
        targets: &BTreeSet<usize>,
    ) -> Self {
        let n = adj.len();
        let (dist_from_source, _) = dijkstra_multi(adj, weights, sources);
        let (dist_to_target, _) = dijkstra_multi(adj, weights, targets);
        let shortest = targets
            .iter()
            .filter_map(|&t| dist_from_source[t].clone())
            .min();

        let mut edges = Vec::new();
        let mut on_shortest = vec![false; n];
        let mut out = vec![Vec::new(); n];
        if let Some(ell) = &shortest {
            for v in 0..n {
                if let (Some(ds), Some(dt)) = (&dist_from_source[v], &dist_to_target[v]) {
                    // ds + dt counts w(v) twice; compare against ell + w(v).
                    if ds.add(dt).close(&ell.add(&weights[v])) {
                        on_shortest[v] = true;
                    }
                }
            }
            for u in 0..n {
                let Some(ds) = &dist_from_source[u] else { continue };
                for &v in &adj[u] {
                    let Some(dt) = &dist_to_target[v] else { continue };
                    if ds.add(dt).close(ell) {
                        edges.push((u, v));
                        out[u].push(v);
                    }
                }
            }
        }
        SpStructure {
            sources: sources.clone(),
            targets: targets.clone(),
            dist_from_source,
            dist_to_target,
            shortest,
            edges,
            on_shortest,
            out,
        }
    }

    fn start_vertices(&self) -> Vec<usize> {
        self.sources
            .iter()
            .copied()
            .filter(|&s| self.on_shortest[s])
            .collect()
    }

    /// Enumerates simple source-to-target paths through the subgraph, i.e.
    /// all metric-shortest paths. Returns the paths (lexicographic DFS order)
    /// and whether the cap cut enumeration short.
    pub fn enumerate_paths(&self, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let mut paths = Vec::new();
        let mut cap_hit = false;
        let mut visited = vec![false; self.on_shortest.len()];
        let mut stack = Vec::new();
        // DFS work is capped alongside the output to bound degenerate cases.
        let mut work = 0usize;
        let work_cap = cap.saturating_mul(64).max(1 << 20);

        fn dfs<W: Weight>(
            sp: &SpStructure<W>,
            u: usize,
            visited: &mut [bool],
            stack: &mut Vec<usize>,
            paths: &mut Vec<Vec<usize>>,
            cap: usize,
            cap_hit: &mut bool,
            work: &mut usize,
            work_cap: usize,
        ) {
            *work += 1;
            if *work > work_cap {
                *cap_hit = true;
                return;
            }
            visited[u] = true;
            stack.push(u);
            if sp.targets.contains(&u) {
                if paths.len() < cap {
                    paths.push(stack.clone());
                } else {
                    *cap_hit = true;
                }
            }
            if !*cap_hit {
                for &v in &sp.out[u] {
                    if !visited[v] {
                        dfs(sp, v, visited, stack, paths, cap, cap_hit, work, work_cap);
                        if *cap_hit {
                            break;
                        }
                    }
                }
            }
            stack.pop();
            visited[u] = false;
        }

        for s in self.start_vertices() {
            if cap_hit {
                break;
            }
            dfs(
                self,
                s,
                &mut visited,
                &mut stack,
                &mut paths,
                cap,
                &mut cap_hit,
                &mut work,
                work_cap,
            );
        }
        (paths, cap_hit)
    }

    /// Finds a source-to-target path through the subgraph avoiding every
    /// vertex marked in `banned`; this is exactly a metric-shortest path
    /// disjoint from the banned set. BFS, so the witness is edge-minimal.
    pub fn path_avoiding(&self, banned: &[bool]) -> Option<Vec<usize>> {
        let n = self.on_shortest.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for s in self.start_vertices() {
            if !banned[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
                if self.targets.contains(&s) {
                    return Some(vec![s]);
                }
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.out[u] {
                if banned[v] || seen[v] {
                    continue;
                }
                seen[v] = true;
                parent[v] = u;
                if self.targets.contains(&v) {
                    let mut path = vec![v];
                    let mut cur = v;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(v);
            }
        }
        None
    }

    /// Minimum number of `marked` vertices met by any shortest source-to-
    /// target path (0-1 shortest path over the subgraph).
    pub fn min_marked(&self, marked: &[bool]) -> Option<usize> {
        let n = self.on_shortest.len();
        let mut cost: Vec<Option<usize>> = vec![None; n];
        let mut deque = VecDeque::new();
        for s in self.start_vertices() {
            let c = usize::from(marked[s]);
            if cost[s].map_or(true, |cur| c < cur) {
                cost[s] = Some(c);
                if c == 0 {
                    deque.push_front(s);
                } else {
                    deque.push_back(s);
                }
            }
        }
        let mut best: Option<usize> = None;
        while let Some(u) = deque.pop_front() {
            let cu = cost[u].expect("queued vertices have cost");
            if self.targets.contains(&u) {
                best = Some(best.map_or(cu, |b: usize| b.min(cu)));
            }
            for &v in &self.out[u] {
                let step = usize::from(marked[v]);
                let cand = cu + step;
                if cost[v].map_or(true, |cur| cand < cur) {
                    cost[v] = Some(cand);
                    if step == 0 {
                        deque.push_front(v);
                    } else {
                        deque.push_back(v);
                    }
                }
            }
        }
        best
    }

    /// Number of simple shortest paths, up to `cap`.
    pub fn count_paths(&self, cap: usize) -> (usize, bool) {
        let (paths, cap_hit) = self.enumerate_paths(cap);
        (paths.len(), cap_hit)
    }
}

/// Result of [`shortest_paths`], tagged like the metric it came from.
#[derive(Debug, Clone)]
pub enum ShortestPaths {
    Real(SpStructure<R64>),
    Rational(SpStructure<Rat>),
}

impl ShortestPaths {
    pub fn shortest_f64(&self) -> Option<f64> {
        match self {
            ShortestPaths::Real(sp) => sp.shortest.as_ref().map(|w| w.0),
            ShortestPaths::Rational(sp) => sp.shortest.as_ref().map(Rat::to_f64),
        }
    }

    pub fn shortest_exact(&self) -> Option<Rat> {
        match self {
            ShortestPaths::Real(sp) => sp.shortest.as_ref().and_then(|w| Rat::from_f64_exact(w.0)),
            ShortestPaths::Rational(sp) => sp.shortest.clone(),
        }
    }

    pub fn dag_edges(&self) -> &[(usize, usize)] {
        match self {
            ShortestPaths::Real(sp) => &sp.edges,
            ShortestPaths::Rational(sp) => &sp.edges,
        }
    }

    pub fn enumerate_paths(&self, cap: usize) -> (Vec<Vec<usize>>, bool) {
        match self {
            ShortestPaths::Real(sp) => sp.enumerate_paths(cap),
            ShortestPaths::Rational(sp) => sp.enumerate_paths(cap),
        }
    }

    pub fn is_reachable(&self) -> bool {
        self.shortest_f64().is_some()
    }
}

fn name_set(idx: &Indexed, names: &[String]) -> Result<BTreeSet<usize>> {
    if names.is_empty() {
        return Err(Error::Format("empty vertex set".into()));
    }
    names
        .iter()
        .map(|v| {
            idx.index_of
                .get(v.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownVertex(v.clone()))
        })
        .collect()
}

/// Shortest-path structure between two named vertex sets. The metric decides
/// whether the computation is exact rational or binary64.
pub fn shortest_paths(
    bx: &DiscreteBox,
    metric: &Metric,
    sources: &[String],
    targets: &[String],
) -> Result<ShortestPaths> {
    let idx = Indexed::new(bx)?;
    let s = name_set(&idx, sources)?;
    let t = name_set(&idx, targets)?;
    match metric {
        Metric::Real(_) => {
            let w: Vec<R64> = metric.weights_f64(&idx)?.into_iter().map(R64).collect();
            Ok(ShortestPaths::Real(SpStructure::build(&idx.adj, &w, &s, &t)))
        }
        Metric::Rational(_) => {
            let w = metric.weights_rat(&idx)?;
            Ok(ShortestPaths::Rational(SpStructure::build(
                &idx.adj, &w, &s, &t,
            )))
        }
    }
}

/// Shortest-path structure for a 1-based face pair, bottom (`neg`) to top
/// (`pos`), over an already indexed box.
pub fn pair_structure<W: Weight>(
    idx: &Indexed,
    weights: &[W],
    axis: usize,
) -> Result<SpStructure<W>> {
    let (pos, neg) = idx.face_sets(axis)?;
    Ok(SpStructure::build(&idx.adj, weights, neg, pos))
}

/// Right derivative at `t = 0` of the shortest top-to-bottom length when the
/// vertices of `alpha` gain weight `t`: the minimum number of `alpha`
/// vertices met by any shortest top-to-bottom path. Zero exactly when some
/// shortest path misses `alpha` entirely.
pub fn perturbation_derivative(bx: &DiscreteBox, metric: &Metric, alpha: &[String]) -> Result<usize> {
    let idx = Indexed::new(bx)?;
    let mut marked = vec![false; idx.len()];
    for v in alpha {
        let i = idx
            .index_of
            .get(v.as_str())
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        marked[i] = true;
    }
    let result = match metric {
        Metric::Real(_) => {
            let w: Vec<R64> = metric.weights_f64(&idx)?.into_iter().map(R64).collect();
            pair_structure(&idx, &w, 1)?.min_marked(&marked)
        }
        Metric::Rational(_) => {
            let w = metric.weights_rat(&idx)?;
            pair_structure(&idx, &w, 1)?.min_marked(&marked)
        }
    };
    result.ok_or(Error::Unreachable { axis: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(bx: &DiscreteBox, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| bx.vertices[i].clone()).collect()
    }

    #[test]
    fn q4_cross_edges() {
        // Oracle (by hand over the 4-vertex complete graph, uniform 1/2):
        // bottom-to-top distance 1, and the only shortest paths are the four
        // 2-vertex bottom/top pairs, giving exactly four directed DAG edges.
        let q4 = fixtures::q4();
        let half = fixtures::uniform(&q4, 0.5);
        let sp = shortest_paths(
            &q4,
            &half,
            &q4.face_pairs[0].neg.clone(),
            &q4.face_pairs[0].pos.clone(),
        )
        .unwrap();
        assert_eq!(sp.shortest_f64(), Some(1.0));
        // a=0, b=1, c=2, d=3; edges from {a,b} to {c,d}.
        let mut edges = sp.dag_edges().to_vec();
        edges.sort();
        assert_eq!(edges, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let (paths, cap_hit) = sp.enumerate_paths(100);
        assert!(!cap_hit);
        assert_eq!(paths.len(), 4);
    }

    #[test]
    fn zero_metric_spans_everything() {
        let q4 = fixtures::q4();
        let zero = fixtures::uniform(&q4, 0.0);
        let sp = shortest_paths(
            &q4,
            &zero,
            &q4.face_pairs[0].neg.clone(),
            &q4.face_pairs[0].pos.clone(),
        )
        .unwrap();
        assert_eq!(sp.shortest_f64(), Some(0.0));
        let ShortestPaths::Real(inner) = &sp else {
            panic!("uniform metric is real")
        };
        assert!(inner.on_shortest.iter().all(|&b| b));
    }

    #[test]
    fn k8_has_sixteen_shortest_paths() {
        // Oracle: brute-force enumeration over the complete graph on 8
        // vertices; every bottom-top pair is one shortest path of length 1.
        let k8 = fixtures::k8();
        let half = fixtures::uniform(&k8, 0.5);
        let sp = shortest_paths(
            &k8,
            &half,
            &k8.face_pairs[0].neg.clone(),
            &k8.face_pairs[0].pos.clone(),
        )
        .unwrap();
        assert_eq!(sp.shortest_f64(), Some(1.0));
        let (paths, cap_hit) = sp.enumerate_paths(1000);
        assert!(!cap_hit);
        assert_eq!(paths.len(), 16);
        assert!(paths.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn rational_and_real_structures_agree_on_q7() {
        let bx = fixtures::q7_contact_box();
        let s = fixtures::q7_tiling_metric();
        let sp_exact = shortest_paths(
            &bx,
            &s,
            &bx.face_pairs[0].neg.clone(),
            &bx.face_pairs[0].pos.clone(),
        )
        .unwrap();
        assert_eq!(sp_exact.shortest_exact(), Some(Rat::from_int(2)));
        let sp_real = shortest_paths(
            &bx,
            &s.scaled(1.0),
            &bx.face_pairs[0].neg.clone(),
            &bx.face_pairs[0].pos.clone(),
        )
        .unwrap();
        assert_eq!(sp_real.shortest_f64(), Some(2.0));
        let mut a = sp_exact.dag_edges().to_vec();
        let mut b = sp_real.dag_edges().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn unreachable_reported() {
        use crate::boxes::{DiscreteBox, FacePair};
        // Two components; validation would reject it, so query a valid box
        // with an all-blocking zero... instead use path_avoiding on q4.
        let q4 = fixtures::q4();
        let half = fixtures::uniform(&q4, 0.5);
        let sp = shortest_paths(
            &q4,
            &half,
            &q4.face_pairs[0].neg.clone(),
            &q4.face_pairs[0].pos.clone(),
        )
        .unwrap();
        let ShortestPaths::Real(inner) = &sp else { panic!() };
        // Banning both bottom vertices kills every path.
        let banned = vec![true, true, false, false];
        assert!(inner.path_avoiding(&banned).is_none());
        let banned = vec![true, false, false, false];
        let path = inner.path_avoiding(&banned).unwrap();
        assert_eq!(names(&q4, &path), vec!["b", "c"]);

        // Keep the import used; a disconnected box fails validation.
        let disconnected = DiscreteBox {
            n: 1,
            vertices: vec!["x".into(), "y".into()],
            edges: vec![],
            face_pairs: vec![FacePair::new(&["y"], &["x"])],
            face_structure: None,
        };
        assert!(shortest_paths(
            &disconnected,
            &Metric::uniform(["x".to_string(), "y".to_string()], 1.0),
            &["x".to_string()],
            &["y".to_string()]
        )
        .is_err());
    }

    #[test]
    fn derivative_examples() {
        // Oracle: enumerate the four shortest top-bottom paths of Q4 by hand.
        let q4 = fixtures::q4();
        let half = fixtures::uniform(&q4, 0.5);
        // alpha = (a, c): the path (b, d) misses it.
        assert_eq!(
            perturbation_derivative(&q4, &half, &["a".into(), "c".into()]).unwrap(),
            0
        );
        // alpha = (a, b): every shortest path uses exactly one bottom vertex.
        assert_eq!(
            perturbation_derivative(&q4, &half, &["a".into(), "b".into()]).unwrap(),
            1
        );
        let k8 = fixtures::k8();
        let half8 = fixtures::uniform(&k8, 0.5);
        // A single bottom-top pair misses the 15 other pairs.
        assert_eq!(
            perturbation_derivative(&k8, &half8, &["v000".into(), "v100".into()]).unwrap(),
            0
        );
    }
}
