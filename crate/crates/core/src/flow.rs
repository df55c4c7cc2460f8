//! Dinic max-flow over a residual arc list.
//!
//! Capacities are positive reals or `f64::INFINITY` for the auxiliary
//! terminal arcs; infinity survives subtraction of any finite flow, so the
//! anchors can never saturate.

/// Residual slack below this counts as saturated. Augmenting along a path
/// zeroes its bottleneck arc exactly, but other arcs on the path can be
/// left holding cancellation dust; the threshold keeps that dust from
/// spawning spurious augmenting paths or leaking into cut reachability.
const RESIDUAL_EPS: f64 = 1e-11;

#[derive(Debug)]
pub struct FlowNetwork {
    to: Vec<usize>,
    res: Vec<f64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            to: Vec::new(),
            res: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Adds the arc pair `a -> b` / `b -> a` with the given capacities.
    /// An undirected edge is the symmetric case `cap_ab == cap_ba`.
    pub fn add_edge(&mut self, a: usize, b: usize, cap_ab: f64, cap_ba: f64) {
        let id = self.to.len();
        self.to.push(b);
        self.res.push(cap_ab);
        self.adj[a].push(id);
        self.to.push(a);
        self.res.push(cap_ba);
        self.adj[b].push(id + 1);
    }

    fn bfs(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if level[w] < 0 && self.res[arc] > RESIDUAL_EPS {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: f64, level: &[i32], iter: &mut [usize]) -> f64 {
        if v == t {
            return pushed;
        }
        while iter[v] < self.adj[v].len() {
            let arc = self.adj[v][iter[v]];
            let w = self.to[arc];
            if level[w] == level[v] + 1 && self.res[arc] > RESIDUAL_EPS {
                let got = self.dfs(w, t, pushed.min(self.res[arc]), level, iter);
                if got > 0.0 {
                    self.res[arc] -= got;
                    self.res[arc ^ 1] += got;
                    return got;
                }
            }
            iter[v] += 1;
        }
        0.0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let n = self.adj.len();
        let mut total = 0.0;
        let mut level = vec![-1i32; n];
        while self.bfs(s, t, &mut level) {
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs(s, t, f64::INFINITY, &level, &mut iter);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Vertices reachable from `s` along arcs with residual slack.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if !seen[w] && self.res[arc] > RESIDUAL_EPS {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}
