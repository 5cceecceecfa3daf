//! Maximum clique by branch and bound with a greedy-coloring bound.
//!
//! Vertices are `0..n`; adjacency is a bitset per vertex. Branching follows
//! the coloring order, so with a fixed vertex order the search is
//! deterministic.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bitset::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn subtract(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Vertices of the best clique found, ascending.
    pub clique: Vec<usize>,
    /// False when the node budget ran out before optimality was proved.
    pub proved_optimal: bool,
    pub nodes: u64,
}

/// Greedy maximal clique taking vertices in index order.
pub fn greedy_clique(adjacency: &[Bitset]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for v in 0..adjacency.len() {
        if clique.iter().all(|&u| adjacency[u].contains(v)) {
            clique.push(v);
        }
    }
    clique
}

/// Maximum clique, seeded with `initial` (which must be a clique).
pub fn max_clique(adjacency: &[Bitset], initial: Vec<usize>, node_budget: u64) -> CliqueResult {
    let n = adjacency.len();
    let mut search = Search {
        adjacency,
        best: initial,
        current: Vec::new(),
        nodes: 0,
        budget: node_budget,
        exhausted: false,
    };
    if n > 0 {
        search.expand(Bitset::full(n));
    }
    let mut clique = search.best;
    clique.sort_unstable();
    CliqueResult {
        clique,
        proved_optimal: !search.exhausted,
        nodes: search.nodes,
    }
}

struct Search<'a> {
    adjacency: &'a [Bitset],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn expand(&mut self, mut candidates: Bitset) {
        let order = self.color(&candidates);
        for &(v, color) in order.iter().rev() {
            if self.exhausted || self.current.len() + color <= self.best.len() {
                return;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            self.current.push(v);
            let next = candidates.intersect(&self.adjacency[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates.remove(v);
        }
    }

    /// Sequential greedy coloring; returns `(vertex, color)` with colors
    /// non-decreasing and starting at 1.
    fn color(&self, candidates: &Bitset) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut order = Vec::new();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut open = uncolored.clone();
            while let Some(v) = open.first() {
                open.remove(v);
                open.subtract(&self.adjacency[v]);
                uncolored.remove(v);
                order.push((v, color));
            }
        }
        order
    }
}
