//! Order-divisibility bijections f: G -> Z_n with o(a) | o(f(a)) for every
//! element, constructed as a transportation problem between element-order
//! classes and solved by max flow (greedy divisor heuristics can fail Hall
//! feasibility, so a flow formulation is used throughout).

use std::collections::BTreeMap;

use crate::group::FiniteGroup;
use crate::numtheory::{factorize, gcd_u64};

/// Element count per order. For a group the counts sum to |G|, the identity
/// contributes the single count at order 1, and every key divides |G|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderHistogram {
    counts: BTreeMap<u64, u64>,
}

impl OrderHistogram {
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Self {
        OrderHistogram { counts }
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Compact digest such as `1:1 2:3 3:8`, ascending by order.
    pub fn digest(&self) -> String {
        self.counts
            .iter()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl std::fmt::Display for OrderHistogram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.digest())
    }
}

/// Count elements of each order.
pub fn order_histogram(g: &FiniteGroup) -> OrderHistogram {
    let mut counts = BTreeMap::new();
    for a in 0..g.order() {
        *counts.entry(g.element_order(a)).or_insert(0) += 1;
    }
    OrderHistogram { counts }
}

/// The order histogram of Z_n, computed arithmetically: φ(d) elements of
/// order d for every divisor d of n.
pub fn cyclic_order_histogram(n: u64) -> OrderHistogram {
    let f = factorize(n);
    let counts = f
        .divisors()
        .into_iter()
        .map(|d| (d, factorize(d).phi()))
        .collect();
    OrderHistogram { counts }
}

/// One order-class assignment: `amount` elements of order `from` paired with
/// residues of order `to` (so `from` divides `to`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlow {
    pub from: u64,
    pub to: u64,
    pub amount: u64,
}

/// Witness that no saturating assignment exists: a set of demand orders
/// whose admissible residue classes have too little total capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallCertificate {
    pub orders: Vec<u64>,
    pub demand: u64,
    pub capacity: u64,
}

/// An element-level pairing of G with Z_n; `mapping[a]` is the residue
/// assigned to element a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBijection {
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum BijectionOutcome {
    Feasible {
        class_flow: Vec<ClassFlow>,
        bijection: OrderBijection,
    },
    /// Should never occur for an actual group; surfaced loudly as a
    /// reportable discovery rather than an error.
    Infeasible(HallCertificate),
}

/// Verdict of [`verify_order_bijection`], carrying the first violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BijectionVerdict {
    Valid,
    /// The mapping is not a permutation of 0..n-1; `index` is the first
    /// element whose image is out of range or repeated (or n if the length
    /// is wrong).
    NotBijective { index: usize },
    /// o(a) does not divide the order of the assigned residue.
    DivisibilityViolation {
        element: usize,
        element_order: u64,
        residue: usize,
        residue_order: u64,
    },
}

impl BijectionVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, BijectionVerdict::Valid)
    }
}

/// Solve the class-level transportation problem: order class d of the
/// histogram may send flow to the residue class of order d' exactly when
/// d | d', capacity φ(d') on each residue class. The histogram total must
/// equal n.
pub fn solve_class_flow(
    hist: &OrderHistogram,
    n: u64,
) -> Result<Vec<ClassFlow>, HallCertificate> {
    assert_eq!(hist.total(), n, "histogram does not describe order {n}");
    let demands: Vec<(u64, u64)> = hist.counts.iter().map(|(&d, &c)| (d, c)).collect();
    let caps: Vec<(u64, u64)> = cyclic_order_histogram(n)
        .counts
        .iter()
        .map(|(&d, &c)| (d, c))
        .collect();

    let gc = demands.len();
    let zc = caps.len();
    let source = 0;
    let sink = 1 + gc + zc;
    let mut net = FlowNetwork::new(sink + 1);

    let mut class_edges = Vec::new();
    for (i, &(d, count)) in demands.iter().enumerate() {
        net.add_edge(source, 1 + i, count);
        for (j, &(dp, _)) in caps.iter().enumerate() {
            if dp % d == 0 {
                class_edges.push((d, dp, net.add_edge(1 + i, 1 + gc + j, count)));
            }
        }
    }
    for (j, &(_, cap)) in caps.iter().enumerate() {
        net.add_edge(1 + gc + j, sink, cap);
    }

    let pushed = net.max_flow(source, sink);
    if pushed == n {
        let flow: Vec<ClassFlow> = class_edges
            .iter()
            .filter_map(|&(from, to, e)| {
                let amount = net.flow_on(e);
                (amount > 0).then_some(ClassFlow { from, to, amount })
            })
            .collect();
        Ok(flow)
    } else {
        // Min-cut certificate: the demand classes still reachable from the
        // source in the residual network violate the Hall condition.
        let reachable = net.residual_reachable(source);
        let orders: Vec<u64> = demands
            .iter()
            .enumerate()
            .filter(|&(i, _)| reachable[1 + i])
            .map(|(_, &(d, _))| d)
            .collect();
        let demand: u64 = demands
            .iter()
            .filter(|&&(d, _)| orders.contains(&d))
            .map(|&(_, c)| c)
            .sum();
        let capacity: u64 = caps
            .iter()
            .filter(|&&(dp, _)| orders.iter().any(|&d| dp % d == 0))
            .map(|&(_, c)| c)
            .sum();
        debug_assert!(capacity < demand);
        Err(HallCertificate {
            orders,
            demand,
            capacity,
        })
    }
}

/// Construct an order-divisibility bijection G -> Z_n, or a Hall certificate
/// if the class structure admits none. Within matched classes, elements and
/// residues are paired in ascending order, so the output is deterministic.
pub fn find_order_bijection(g: &FiniteGroup) -> BijectionOutcome {
    let n = g.order() as u64;
    let hist = order_histogram(g);
    let class_flow = match solve_class_flow(&hist, n) {
        Ok(flow) => flow,
        Err(cert) => return BijectionOutcome::Infeasible(cert),
    };

    // Elements of G per order, ascending index.
    let mut g_classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for a in 0..g.order() {
        g_classes.entry(g.element_order(a)).or_default().push(a);
    }
    // Residues of Z_n per order, ascending residue.
    let mut z_classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for r in 0..g.order() {
        let order = n / gcd_u64(n, r as u64);
        z_classes.entry(order).or_default().push(r);
    }

    let mut g_cursor: BTreeMap<u64, usize> = BTreeMap::new();
    let mut z_cursor: BTreeMap<u64, usize> = BTreeMap::new();
    let mut mapping = vec![usize::MAX; g.order()];
    for cf in &class_flow {
        let gi = g_cursor.entry(cf.from).or_insert(0);
        let zi = z_cursor.entry(cf.to).or_insert(0);
        let elements = &g_classes[&cf.from][*gi..*gi + cf.amount as usize];
        let residues = &z_classes[&cf.to][*zi..*zi + cf.amount as usize];
        for (&a, &r) in elements.iter().zip(residues) {
            mapping[a] = r;
        }
        *gi += cf.amount as usize;
        *zi += cf.amount as usize;
    }
    debug_assert!(mapping.iter().all(|&r| r != usize::MAX));

    BijectionOutcome::Feasible {
        class_flow,
        bijection: OrderBijection { mapping },
    }
}

/// Check the permutation property and the divisibility contract element by
/// element, reporting the first violation.
pub fn verify_order_bijection(g: &FiniteGroup, bijection: &OrderBijection) -> BijectionVerdict {
    let n = g.order();
    let mapping = &bijection.mapping;
    if mapping.len() != n {
        return BijectionVerdict::NotBijective { index: n };
    }
    let mut seen = vec![false; n];
    for (a, &r) in mapping.iter().enumerate() {
        if r >= n || seen[r] {
            return BijectionVerdict::NotBijective { index: a };
        }
        seen[r] = true;
    }
    for (a, &r) in mapping.iter().enumerate() {
        let element_order = g.element_order(a);
        let residue_order = n as u64 / gcd_u64(n as u64, r as u64);
        if residue_order % element_order != 0 {
            return BijectionVerdict::DivisibilityViolation {
                element: a,
                element_order,
                residue: r,
                residue_order,
            };
        }
    }
    BijectionVerdict::Valid
}

/// Dinic max flow on a tiny dense network; deterministic for a fixed edge
/// insertion order.
struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Returns the forward edge id.
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.adj[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.adj[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        id
    }

    /// Flow currently on a forward edge = residual capacity of its twin.
    fn flow_on(&self, edge: usize) -> u64 {
        self.cap[edge ^ 1]
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0;
        loop {
            let level = self.levels(source);
            if level[sink].is_none() {
                return total;
            }
            let mut iter = vec![0usize; self.adj.len()];
            loop {
                let pushed = self.push(source, sink, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn levels(&self, source: usize) -> Vec<Option<u32>> {
        let mut level = vec![None; self.adj.len()];
        level[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v].is_none() {
                    level[v] = Some(level[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(
        &mut self,
        u: usize,
        sink: usize,
        limit: u64,
        level: &[Option<u32>],
        iter: &mut [usize],
    ) -> u64 {
        if u == sink {
            return limit;
        }
        while iter[u] < self.adj[u].len() {
            let e = self.adj[u][iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u].map(|l| l + 1) {
                let pushed = self.push(v, sink, limit.min(self.cap[e]), level, iter);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut reachable = vec![false; self.adj.len()];
        reachable[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !reachable[v] {
                    reachable[v] = true;
                    stack.push(v);
                }
            }
        }
        reachable
    }
}
