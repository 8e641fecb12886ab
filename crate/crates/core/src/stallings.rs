//! Stallings graphs: folded labeled graphs deciding membership in a finitely
//! generated subgroup of a free group.
//!
//! A wedge of generator loops at a base vertex is folded (two same-labeled
//! edges leaving — or entering — a common vertex get identified) until the
//! labeling is deterministic in both directions, then non-base vertices of
//! degree one are pruned away. Membership of a word is then a deterministic
//! walk from the base vertex.

use crate::words::Word;

#[derive(Clone, Debug)]
pub struct StallingsGraph {
    rank: usize,
    base: usize,
    /// out[v][g] = target of the g-labeled edge leaving v.
    out: Vec<Vec<Option<usize>>>,
    /// inc[v][g] = source of the g-labeled edge entering v.
    inc: Vec<Vec<Option<usize>>>,
}

/// Union-find over vertices created during folding.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new() -> Self {
        Dsu { parent: Vec::new() }
    }
    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Fold the wedge of the given generator loops into a deterministic core
/// graph over a free group of the given rank.
pub fn stallings_fold(generators: &[Word], rank: usize) -> StallingsGraph {
    let mut dsu = Dsu::new();
    let base = dsu.make();
    // edge list (source, label, target); inverse letters traverse backwards
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for w in generators {
        let mut cur = base;
        let n = w.len();
        for (i, l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n { base } else { dsu.make() };
            debug_assert!(l.gen < rank, "letter outside the ambient free group");
            if l.inv {
                edges.push((next, l.gen, cur));
            } else {
                edges.push((cur, l.gen, next));
            }
            cur = next;
        }
    }
    // fold to a fixed point
    loop {
        let mut merged = false;
        // same source + label => identify targets; same target + label => sources
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                let (s1, g1, t1) = edges[i];
                let (s2, g2, t2) = edges[j];
                if g1 != g2 {
                    continue;
                }
                let (s1, t1) = (dsu.find(s1), dsu.find(t1));
                let (s2, t2) = (dsu.find(s2), dsu.find(t2));
                if s1 == s2 && t1 != t2 {
                    dsu.union(t1, t2);
                    merged = true;
                }
                let (s1, t1) = (dsu.find(edges[i].0), dsu.find(edges[i].2));
                let (s2, t2) = (dsu.find(edges[j].0), dsu.find(edges[j].2));
                if t1 == t2 && s1 != s2 {
                    dsu.union(s1, s2);
                    merged = true;
                }
            }
        }
        if !merged {
            break;
        }
    }
    // compact vertices
    let mut ids = std::collections::BTreeMap::new();
    let id_of = |root: usize, ids: &mut std::collections::BTreeMap<usize, usize>| {
        let n = ids.len();
        *ids.entry(root).or_insert(n)
    };
    let base_root = dsu.find(base);
    let base_id = id_of(base_root, &mut ids);
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for &(s, g, t) in &edges {
        let s = dsu.find(s);
        let t = dsu.find(t);
        pairs.push((id_of(s, &mut ids), g, id_of(t, &mut ids)));
    }
    let n = ids.len();
    let mut out = vec![vec![None; rank]; n];
    let mut inc = vec![vec![None; rank]; n];
    for (s, g, t) in pairs {
        out[s][g] = Some(t);
        inc[t][g] = Some(s);
    }
    let mut graph = StallingsGraph { rank, base: base_id, out, inc };
    graph.prune_to_core();
    graph
}

impl StallingsGraph {
    /// Remove non-base vertices of total degree <= 1 until none remain.
    fn prune_to_core(&mut self) {
        loop {
            let n = self.out.len();
            let mut degree = vec![0usize; n];
            for (v, d) in degree.iter_mut().enumerate() {
                for g in 0..self.rank {
                    if self.out[v][g].is_some() {
                        *d += 1;
                    }
                    if self.inc[v][g].is_some() {
                        *d += 1;
                    }
                }
            }
            let Some(dead) = (0..n).find(|&v| v != self.base && degree[v] <= 1) else {
                break;
            };
            // drop the vertex and remap indices above it
            for v in 0..n {
                for g in 0..self.rank {
                    if self.out[v][g] == Some(dead) {
                        self.out[v][g] = None;
                    }
                    if self.inc[v][g] == Some(dead) {
                        self.inc[v][g] = None;
                    }
                }
            }
            self.out.remove(dead);
            self.inc.remove(dead);
            let remap = |x: &mut Option<usize>| {
                if let Some(v) = x {
                    if *v > dead {
                        *v -= 1;
                    }
                }
            };
            for v in self.out.iter_mut().chain(self.inc.iter_mut()) {
                for slot in v.iter_mut() {
                    remap(slot);
                }
            }
            if self.base > dead {
                self.base -= 1;
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True iff the word reads as a closed path at the base vertex.
    pub fn contains(&self, w: &Word) -> bool {
        let mut cur = self.base;
        for l in w.letters() {
            if l.gen >= self.rank {
                return false;
            }
            let next = if l.inv { self.inc[cur][l.gen] } else { self.out[cur][l.gen] };
            match next {
                Some(v) => cur = v,
                None => return false,
            }
        }
        cur == self.base
    }
}
