//! Finite windows of Cayley graphs of `(Z, +)`.
//!
//! A window is the induced subgraph on `start..=start+M`, with `u ~ v` iff
//! `|u - v|` is a generator. Windows give lower bounds on the chromatic number
//! of the whole graph; rotation colorings give upper bounds.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{QuadNum, Rat, Surd};
use crate::error::{Error, Result};

/// Default node budget for [`chromatic_number`].
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Nonempty sorted set of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSet {
    gens: Vec<u64>,
}

impl GenSet {
    pub fn new(mut gens: Vec<u64>) -> Result<GenSet> {
        if gens.is_empty() {
            return Err(Error::OutOfRange("generating set is empty".into()));
        }
        if gens.contains(&0) {
            return Err(Error::OutOfRange("generators must be positive".into()));
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(GenSet { gens })
    }

    /// `{1, ..., m}`.
    pub fn range(m: u64) -> Result<GenSet> {
        GenSet::new((1..=m).collect())
    }

    /// Parses a comma separated list such as `1,2,5`.
    pub fn parse(s: &str) -> Result<GenSet> {
        let gens = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::OutOfRange(format!("bad generator '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        GenSet::new(gens)
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn contains(&self, g: u64) -> bool {
        self.gens.binary_search(&g).is_ok()
    }
}

/// Induced subgraph on `M + 1` consecutive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowGraph {
    start: i64,
    adj: Vec<Vec<usize>>,
    gens: GenSet,
}

impl WindowGraph {
    pub fn size(&self) -> usize {
        self.adj.len()
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    /// Label of the vertex at offset `i`.
    pub fn label(&self, i: usize) -> i64 {
        self.start + i as i64
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j`, as offsets, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// One `u v` line per edge, using vertex labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            writeln!(out, "{} {}", self.label(i), self.label(j)).unwrap();
        }
        out
    }

    /// Smallest-last order: repeatedly strip a minimum-degree vertex, then
    /// reverse, so dense cores come first.
    fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.size();
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .unwrap();
            removed[v] = true;
            order.push(v);
            for &u in &self.adj[v] {
                if !removed[u] {
                    deg[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }
}

/// Vertices `0..=M`, edges between vertices whose difference is a generator.
pub fn window_graph(gens: &GenSet, m: u64) -> WindowGraph {
    window_graph_at(gens, 0, m)
}

/// Same as [`window_graph`] on `start..=start+M`.
pub fn window_graph_at(gens: &GenSet, start: i64, m: u64) -> WindowGraph {
    let n = m as usize + 1;
    let mut adj = vec![Vec::new(); n];
    for (i, nb) in adj.iter_mut().enumerate() {
        for &g in gens.gens() {
            let g = g as usize;
            if g <= i {
                nb.push(i - g);
            }
        }
        for &g in gens.gens() {
            let j = i + g as usize;
            if j < n {
                nb.push(j);
            }
        }
        nb.sort_unstable();
    }
    WindowGraph {
        start,
        adj,
        gens: gens.clone(),
    }
}

/// Colors `1..` indexed by vertex offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    start: i64,
    colors: Vec<u64>,
}

impl Coloring {
    pub fn new(start: i64, colors: Vec<u64>) -> Coloring {
        Coloring { start, colors }
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn color_of(&self, label: i64) -> Option<u64> {
        let i = usize::try_from(label - self.start).ok()?;
        self.colors.get(i).copied()
    }

    /// Number of distinct colors actually used.
    pub fn distinct(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn max_color(&self) -> u64 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// No edge of `g` is monochromatic.
    pub fn is_proper(&self, g: &WindowGraph) -> bool {
        self.colors.len() == g.size()
            && self.start == g.start()
            && g.edges()
                .into_iter()
                .all(|(i, j)| self.colors[i] != self.colors[j])
    }

    /// One `vertex color` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.colors.iter().enumerate() {
            writeln!(out, "{} {}", self.start + i as i64, c).unwrap();
        }
        out
    }
}

/// Colors vertex `m` by the bucket `[(n-1)/N, n/N)` holding `frac(m alpha)`.
///
/// Requires `||g alpha|| > 1/N` for every generator, which forces the
/// coloring to be proper; it is still checked edge by edge.
pub fn rotation_coloring(gens: &GenSet, alpha: &QuadNum, n: u64, m: u64) -> Result<Coloring> {
    rotation_coloring_on(&window_graph(gens, m), alpha, n)
}

pub fn rotation_coloring_on(g: &WindowGraph, alpha: &QuadNum, n: u64) -> Result<Coloring> {
    if n == 0 {
        return Err(Error::OutOfRange("N must be positive".into()));
    }
    let inv_n = Rat::new(1.into(), n.into());
    for &gen in g.gens().gens() {
        let d = alpha.mul_int(&gen.into()).dist_nearest_int();
        if d.cmp_rat(&inv_n).is_le() {
            return Err(Error::Precondition(format!(
                "||{gen} alpha|| = {d} is not greater than 1/{n}"
            )));
        }
    }
    let big_n = BigInt::from(n);
    let colors = (0..g.size())
        .map(|i| {
            let x = alpha.mul_int(&BigInt::from(g.label(i))).fract();
            let bucket = x.mul_int(&big_n).floor();
            bucket.to_u64().map(|b| b + 1).ok_or_else(|| {
                Error::Inconsistency(format!("bucket {bucket} outside 0..{n}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let coloring = Coloring::new(g.start(), colors);
    if !coloring.is_proper(g) {
        return Err(Error::Inconsistency(
            "rotation coloring has a monochromatic edge".into(),
        ));
    }
    Ok(coloring)
}

/// Size of a clique among `0, d, 2d, ..., jd` where `{d, ..., jd}` are all
/// generators and `jd <= M`. Never exceeds the chromatic number.
pub fn clique_lower_bound(gens: &GenSet, m: u64) -> u64 {
    clique_with_vertices(gens, m).0
}

fn clique_with_vertices(gens: &GenSet, m: u64) -> (u64, u64) {
    let mut best = (1, 0);
    for &d in gens.gens() {
        let mut j = 0;
        while (j + 1) * d <= m && gens.contains((j + 1) * d) {
            j += 1;
        }
        if j + 1 > best.0 {
            best = (j + 1, d);
        }
    }
    best
}

/// Greedy coloring in degeneracy order.
pub fn greedy_coloring(g: &WindowGraph) -> Coloring {
    let mut colors = vec![0u64; g.size()];
    for v in g.degeneracy_order() {
        let mut used: Vec<u64> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
        used.sort_unstable();
        let mut c = 1;
        for u in used {
            if u == c {
                c += 1;
            }
        }
        colors[v] = c;
    }
    Coloring::new(g.start(), colors)
}

/// Exact chromatic number with the default node budget.
pub fn chromatic_number(g: &WindowGraph) -> Result<u64> {
    chromatic_number_with_budget(g, DEFAULT_NODE_BUDGET).map(|(chi, _)| chi)
}

/// Exact chromatic number and an optimal coloring.
///
/// Tries `k = lower, lower + 1, ...` below the greedy bound by backtracking
/// in degeneracy order; a vertex may open at most one new color.
pub fn chromatic_number_with_budget(g: &WindowGraph, budget: u64) -> Result<(u64, Coloring)> {
    let greedy = greedy_coloring(g);
    let upper = greedy.max_color();
    let lower = clique_lower_bound(g.gens(), g.size() as u64 - 1);
    let mut nodes = 0u64;
    let order = g.degeneracy_order();
    for k in lower..upper {
        let mut colors = vec![0u64; g.size()];
        if extend(g, &order, 0, k, 0, &mut colors, &mut nodes, budget)? {
            return Ok((k, Coloring::new(g.start(), colors)));
        }
    }
    Ok((upper, greedy))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &WindowGraph,
    order: &[usize],
    pos: usize,
    k: u64,
    used: u64,
    colors: &mut [u64],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if pos == order.len() {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded(format!(
            "exact coloring search exceeded {budget} nodes"
        )));
    }
    let v = order[pos];
    for c in 1..=k.min(used + 1) {
        if g.neighbors(v).iter().any(|&u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if extend(g, order, pos + 1, k, used.max(c), colors, nodes, budget)? {
            return Ok(true);
        }
    }
    colors[v] = 0;
    Ok(false)
}

/// Smallest `1 <= m <= M` with `||m alpha|| <= 1/M`, with that distance.
pub fn dirichlet_witness(alpha: &Surd, m: u64) -> Result<(u64, Surd)> {
    if m == 0 {
        return Err(Error::OutOfRange("M must be positive".into()));
    }
    let x = alpha.value();
    let bound = Rat::new(1.into(), m.into());
    for k in 1..=m {
        let d = x.mul_int(&k.into()).dist_nearest_int();
        if d.cmp_rat(&bound).is_le() {
            return Ok((k, Surd::from_quad(&d)));
        }
    }
    Err(Error::Inconsistency(format!(
        "no m <= {m} with ||m alpha|| <= 1/{m}"
    )))
}
