//! One-dimensional boxes, solved exactly.
//!
//! With `n = 1` the extremal program is linear: the minimum total weight
//! making every top-to-bottom path at least 1 long equals the minimum vertex
//! cut separating the faces (endpoints count as cut candidates), and the
//! extremal length is its reciprocal. Minimum cuts need not be unique, so
//! the canonical extremal metric averages the indicators of all minimum
//! cuts; for a bare edge `a - b` that gives weights (1/2, 1/2).

use std::collections::{BTreeSet, VecDeque};

/// Maximum number of vertex-disjoint source-to-target paths, computed by
/// augmenting unit flows on the vertex-split graph. Equals the minimum
/// vertex cut by the vertex form of the max-flow/min-cut theorem.
pub fn min_vertex_cut_size(
    adj: &[Vec<usize>],
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
) -> usize {
    let n = adj.len();
    // Node 2v = v_in, 2v+1 = v_out, then super source and sink.
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut graph = FlowGraph::new(2 * n + 2);
    for v in 0..n {
        graph.add_edge(2 * v, 2 * v + 1, 1);
        for &w in &adj[v] {
            graph.add_edge(2 * v + 1, 2 * w, usize::MAX / 4);
        }
    }
    for &s in sources {
        graph.add_edge(source, 2 * s, usize::MAX / 4);
    }
    for &t in targets {
        graph.add_edge(2 * t + 1, sink, usize::MAX / 4);
    }
    graph.max_flow(source, sink)
}

struct FlowGraph {
    // (to, capacity, index of reverse edge)
    edges: Vec<(usize, usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl FlowGraph {
    fn new(n: usize) -> Self {
        FlowGraph {
            edges: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: usize) {
        let id = self.edges.len();
        self.edges.push((to, cap, id + 1));
        self.out[from].push(id);
        self.edges.push((from, 0, id));
        self.out[to].push(id + 1);
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut total = 0;
        loop {
            // BFS for an augmenting path; unit bottlenecks, so flow += 1.
            let mut prev_edge = vec![usize::MAX; self.out.len()];
            let mut seen = vec![false; self.out.len()];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.out[u] {
                    let (to, cap, _) = self.edges[e];
                    if cap > 0 && !seen[to] {
                        seen[to] = true;
                        prev_edge[to] = e;
                        if to == sink {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck = usize::MAX;
            let mut v = sink;
            while v != source {
                let e = prev_edge[v];
                bottleneck = bottleneck.min(self.edges[e].1);
                v = self.edges[self.edges[e].2].0;
            }
            let mut v = sink;
            while v != source {
                let e = prev_edge[v];
                self.edges[e].1 -= bottleneck;
                let rev = self.edges[e].2;
                self.edges[rev].1 += bottleneck;
                v = self.edges[rev].0;
            }
            total += bottleneck;
        }
    }
}

/// True when deleting `cut` disconnects every source from every target.
pub fn is_vertex_cut(
    adj: &[Vec<usize>],
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
    cut: &BTreeSet<usize>,
) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !cut.contains(&s) && !seen[s] {
            seen[s] = true;
            if targets.contains(&s) {
                return false;
            }
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen[v] || cut.contains(&v) {
                continue;
            }
            seen[v] = true;
            if targets.contains(&v) {
                return false;
            }
            queue.push_back(v);
        }
    }
    true
}

/// Vertices lying on at least one source-to-target path: reachable from the
/// sources and reaching the targets. Every minimum cut lives inside this set.
pub fn useful_vertices(
    adj: &[Vec<usize>],
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
) -> Vec<usize> {
    let reach = |starts: &BTreeSet<usize>| {
        let mut seen = vec![false; adj.len()];
        let mut queue: VecDeque<usize> = starts.iter().copied().collect();
        for &s in starts {
            seen[s] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    };
    let from_s = reach(sources);
    let from_t = reach(targets);
    (0..adj.len())
        .filter(|&v| from_s[v] && from_t[v])
        .collect()
}

/// All minimum vertex cuts, by exhaustive search over subsets of the useful
/// vertices of the known optimal size. Returns `(cuts, complete)`; when the
/// combination count exceeds `cap` the search stops early.
pub fn enumerate_min_cuts(
    adj: &[Vec<usize>],
    sources: &BTreeSet<usize>,
    targets: &BTreeSet<usize>,
    cut_size: usize,
    cap: usize,
) -> (Vec<BTreeSet<usize>>, bool) {
    let universe = useful_vertices(adj, sources, targets);
    let mut cuts = Vec::new();
    let mut tested = 0usize;
    let mut complete = true;
    let mut choice = Vec::with_capacity(cut_size);
    fn rec(
        universe: &[usize],
        start: usize,
        remaining: usize,
        choice: &mut Vec<usize>,
        tested: &mut usize,
        cap: usize,
        complete: &mut bool,
        adj: &[Vec<usize>],
        sources: &BTreeSet<usize>,
        targets: &BTreeSet<usize>,
        cuts: &mut Vec<BTreeSet<usize>>,
    ) {
        if !*complete {
            return;
        }
        if remaining == 0 {
            *tested += 1;
            if *tested > cap {
                *complete = false;
                return;
            }
            let cut: BTreeSet<usize> = choice.iter().copied().collect();
            if is_vertex_cut(adj, sources, targets, &cut) {
                cuts.push(cut);
            }
            return;
        }
        if universe.len() - start < remaining {
            return;
        }
        for i in start..universe.len() {
            choice.push(universe[i]);
            rec(
                universe, i + 1, remaining - 1, choice, tested, cap, complete, adj, sources,
                targets, cuts,
            );
            choice.pop();
            if !*complete {
                return;
            }
        }
    }
    rec(
        &universe,
        0,
        cut_size,
        &mut choice,
        &mut tested,
        cap,
        &mut complete,
        adj,
        sources,
        targets,
        &mut cuts,
    );
    (cuts, complete)
}

/// Minimum-size hitting set over explicit vertex sets, branch and bound.
/// Branches on the elements of a smallest unhit set; the bound counts
/// pairwise-disjoint unhit sets greedily.
pub fn min_hitting_set_size(sets: &[BTreeSet<usize>]) -> usize {
    if sets.is_empty() {
        return 0;
    }
    let mut best = sets.len().min(
        sets.iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
            .max(1)
            * sets.len(),
    );
    // Upper bound from the greedy cover.
    best = best.min(greedy_hitting(sets));
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    branch(sets, &mut chosen, 0, &mut best);
    best
}

fn greedy_hitting(sets: &[BTreeSet<usize>]) -> usize {
    let mut hit = vec![false; sets.len()];
    let mut count = 0;
    loop {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for (i, s) in sets.iter().enumerate() {
            if !hit[i] {
                for &v in s {
                    *counts.entry(v).or_default() += 1;
                }
            }
        }
        let Some((&v, _)) = counts.iter().max_by_key(|(v, c)| (**c, std::cmp::Reverse(**v)))
        else {
            return count;
        };
        count += 1;
        for (i, s) in sets.iter().enumerate() {
            if !hit[i] && s.contains(&v) {
                hit[i] = true;
            }
        }
    }
}

fn disjoint_lower_bound(sets: &[BTreeSet<usize>], chosen: &BTreeSet<usize>) -> usize {
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut bound = 0;
    for s in sets {
        if s.iter().any(|v| chosen.contains(v)) {
            continue;
        }
        if s.iter().all(|v| !used.contains(v)) {
            bound += 1;
            used.extend(s.iter().copied());
        }
    }
    bound
}

fn branch(sets: &[BTreeSet<usize>], chosen: &mut BTreeSet<usize>, depth: usize, best: &mut usize) {
    if depth + disjoint_lower_bound(sets, chosen) >= *best {
        return;
    }
    let unhit = sets
        .iter()
        .filter(|s| s.iter().all(|v| !chosen.contains(v)))
        .min_by_key(|s| s.len());
    let Some(target) = unhit else {
        *best = depth;
        return;
    };
    for &v in target.clone().iter() {
        chosen.insert(v);
        branch(sets, chosen, depth + 1, best);
        chosen.remove(&v);
    }
}

/// All hitting sets of exactly the given size over the union universe.
pub fn enumerate_min_hitting_sets(
    sets: &[BTreeSet<usize>],
    size: usize,
    cap: usize,
) -> (Vec<BTreeSet<usize>>, bool) {
    let universe: Vec<usize> = sets
        .iter()
        .flat_map(|s| s.iter().copied())
        .collect::<BTreeSet<usize>>()
        .into_iter()
        .collect();
    let mut out = Vec::new();
    let mut tested = 0usize;
    let mut complete = true;
    let mut choice = Vec::with_capacity(size);
    fn rec(
        universe: &[usize],
        start: usize,
        remaining: usize,
        sets: &[BTreeSet<usize>],
        choice: &mut Vec<usize>,
        tested: &mut usize,
        cap: usize,
        complete: &mut bool,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if !*complete {
            return;
        }
        if remaining == 0 {
            *tested += 1;
            if *tested > cap {
                *complete = false;
                return;
            }
            let pick: BTreeSet<usize> = choice.iter().copied().collect();
            if sets.iter().all(|s| s.iter().any(|v| pick.contains(v))) {
                out.push(pick);
            }
            return;
        }
        if universe.len() - start < remaining {
            return;
        }
        for i in start..universe.len() {
            choice.push(universe[i]);
            rec(universe, i + 1, remaining - 1, sets, choice, tested, cap, complete, out);
            choice.pop();
            if !*complete {
                return;
            }
        }
    }
    rec(
        &universe, 0, size, sets, &mut choice, &mut tested, cap, &mut complete, &mut out,
    );
    (out, complete)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(raw: &[&[usize]]) -> Vec<BTreeSet<usize>> {
        raw.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn single_edge_cut() {
        // a - b, S = {0}, T = {1}: both singletons are minimum cuts.
        let adj = vec![vec![1], vec![0]];
        let s: BTreeSet<usize> = [0].into();
        let t: BTreeSet<usize> = [1].into();
        assert_eq!(min_vertex_cut_size(&adj, &s, &t), 1);
        let (cuts, complete) = enumerate_min_cuts(&adj, &s, &t, 1, 1000);
        assert!(complete);
        assert_eq!(cuts, sets(&[&[0], &[1]]));
    }

    #[test]
    fn diamond_has_two_disjoint_routes() {
        // 0 - {1,2} - 3: deleting 0 or 3 or {1,2} disconnects.
        let adj = vec![vec![1, 2], vec![0, 3], vec![0, 3], vec![1, 2]];
        let s: BTreeSet<usize> = [0].into();
        let t: BTreeSet<usize> = [3].into();
        assert_eq!(min_vertex_cut_size(&adj, &s, &t), 1);
        let (cuts, complete) = enumerate_min_cuts(&adj, &s, &t, 1, 1000);
        assert!(complete);
        assert_eq!(cuts, sets(&[&[0], &[3]]));

        // Without the endpoints as candidates the answer would be {1,2}:
        // check the hitting-set route agrees on the path system.
        let paths = sets(&[&[0, 1, 3], &[0, 2, 3]]);
        assert_eq!(min_hitting_set_size(&paths), 1);
        let (hits, complete) = enumerate_min_hitting_sets(&paths, 1, 1000);
        assert!(complete);
        assert_eq!(hits, sets(&[&[0], &[3]]));
    }

    #[test]
    fn parallel_paths_need_two_cuts() {
        // Two disjoint 2-vertex columns between the faces.
        // 0-1 and 2-3, S = {0,2}, T = {1,3}.
        let adj = vec![vec![1], vec![0], vec![3], vec![2]];
        let s: BTreeSet<usize> = [0, 2].into();
        let t: BTreeSet<usize> = [1, 3].into();
        assert_eq!(min_vertex_cut_size(&adj, &s, &t), 2);
        let (cuts, complete) = enumerate_min_cuts(&adj, &s, &t, 2, 1000);
        assert!(complete);
        assert_eq!(cuts.len(), 4); // {0,2},{0,3},{1,2},{1,3}
        let paths = sets(&[&[0, 1], &[2, 3]]);
        assert_eq!(min_hitting_set_size(&paths), 2);
        let (hits, _) = enumerate_min_hitting_sets(&paths, 2, 1000);
        assert_eq!(hits.len(), 4);
    }

    #[test]
    fn hitting_set_branch_and_bound_matches_exhaustive() {
        let paths = sets(&[&[0, 1, 2], &[2, 3], &[3, 4, 5], &[0, 5]]);
        let size = min_hitting_set_size(&paths);
        assert_eq!(size, 2); // e.g. {2, 5}
        let (hits, complete) = enumerate_min_hitting_sets(&paths, size, 10_000);
        assert!(complete);
        assert!(hits.iter().any(|h| h == &[2, 5].into()));
        for h in &hits {
            assert!(paths.iter().all(|p| p.iter().any(|v| h.contains(v))));
        }
    }
}
