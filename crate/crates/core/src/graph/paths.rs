//! Internally vertex-disjoint paths by augmenting paths on the split graph.

use std::collections::VecDeque;

use super::{Dense, Graph, Vertex};

/// Up to `max` internally vertex-disjoint paths from `s` to `t`, each listed
/// from `s` to `t`. Fewer paths are returned when fewer exist.
pub fn disjoint_paths(g: &Graph, s: Vertex, t: Vertex, max: usize) -> Vec<Vec<Vertex>> {
    let d = Dense::from_graph(g);
    let (Ok(si), Ok(ti)) = (d.ids.binary_search(&s), d.ids.binary_search(&t)) else {
        return Vec::new();
    };
    if si == ti {
        return Vec::new();
    }
    let n = d.len();
    // Node 2i is the entry of vertex i, 2i + 1 its exit.
    let mut net = Network::new(2 * n);
    for i in 0..n {
        let cap = if i == si || i == ti { max as i32 } else { 1 };
        net.arc(2 * i, 2 * i + 1, cap);
        for &j in &d.adj[i] {
            net.arc(2 * i + 1, 2 * j, 1);
        }
    }
    let (src, sink) = (2 * si + 1, 2 * ti);
    let mut flow = 0;
    while flow < max && net.augment(src, sink) {
        flow += 1;
    }
    // Walk saturated arcs to read off the paths.
    let mut paths = Vec::new();
    for _ in 0..flow {
        let mut path = vec![s];
        let mut node = src;
        while node != sink {
            let arc = net.adj[node]
                .iter()
                .copied()
                .find(|&a| net.forward[a] && net.cap[a] == 0 && net.used[a] == 0)
                .expect("flow conservation");
            net.used[arc] = 1;
            node = net.head[arc];
            if node % 2 == 0 {
                let v = d.ids[node / 2];
                path.push(v);
                if node != sink {
                    node += 1;
                }
            }
        }
        paths.push(path);
    }
    paths
}

struct Network {
    adj: Vec<Vec<usize>>,
    head: Vec<usize>,
    cap: Vec<i32>,
    forward: Vec<bool>,
    used: Vec<u8>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { adj: vec![Vec::new(); nodes], head: Vec::new(), cap: Vec::new(), forward: Vec::new(), used: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, cap: i32) {
        for (from, to, c, fwd) in [(a, b, cap, true), (b, a, 0, false)] {
            self.adj[from].push(self.head.len());
            self.head.push(to);
            self.cap.push(c);
            self.forward.push(fwd);
            self.used.push(0);
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            for &a in &self.adj[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut y = t;
        while y != s {
            let a = via[y];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            y = self.head[a ^ 1];
        }
        true
    }
}
