//! Dual graphs of the Cerednik-Drinfeld special fibre of `V_D` at `p | D`.
//!
//! The fibre at `p` is two families `Z`, `Z'` of rational curves, one per
//! ideal class of a maximal order in the definite algebra of discriminant
//! `D/p`, meeting in one double point per class of Eichler orders of level
//! `p`. Without Brandt matrices the adjacency is not computable in general,
//! so [`dual_graph`] solves for it from whatever constraints are supplied
//! and reports [`DualGraphOutcome::Underdetermined`] when they do not pin a
//! unique multigraph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::arith::{kronecker, FactoredSquarefree, Rational};
use crate::error::{Error, Result};
use crate::invariants::ShimuraDiscriminant;

/// Class number `h(delta, nu)` of an Eichler order of level `nu` in the
/// definite quaternion algebra of discriminant `delta`.
pub fn eichler_class_number(delta: &FactoredSquarefree, nu: &FactoredSquarefree) -> Result<u64> {
    if delta.omega() % 2 == 0 {
        return Err(Error::BadInput(format!(
            "{delta} is not the discriminant of a definite algebra"
        )));
    }
    if nu.primes().iter().any(|q| delta.is_divisible_by(*q)) {
        return Err(Error::BadInput(format!("gcd({delta}, {nu}) != 1")));
    }
    let mass = Rational::new(
        (delta.totient() * nu.primes().iter().map(|q| q + 1).product::<u64>()) as i64,
        12,
    );
    let term = |disc: i64| -> i64 {
        let ram: i64 = delta
            .primes()
            .iter()
            .map(|&p| 1 - kronecker(disc, p as i64) as i64)
            .product();
        let lvl: i64 = nu
            .primes()
            .iter()
            .map(|&q| 1 + kronecker(disc, q as i64) as i64)
            .product();
        ram * lvl
    };
    let h = mass + Rational::new(term(-4), 4) + Rational::new(term(-3), 3);
    if !h.is_integer() || *h.numer() < 1 {
        return Err(Error::InternalInconsistency(format!(
            "h({delta}, {nu}) = {h} is not a positive integer"
        )));
    }
    Ok(h.to_integer() as u64)
}

fn eichler_pair(d: &ShimuraDiscriminant, p: u64) -> Result<(u64, u64, bool)> {
    if !d.factored().is_divisible_by(p) {
        return Err(Error::BadInput(format!("{p} does not divide {d}")));
    }
    let delta = d.factored().quotient(p)?;
    let level = FactoredSquarefree::new(p)?;
    let one = FactoredSquarefree::new(1)?;
    let vertices = eichler_class_number(&delta, &one)?;
    let edges = eichler_class_number(&delta, &level)?;
    let splits = |disc: i64| delta.primes().iter().any(|&q| kronecker(disc, q as i64) == 1);
    let torsion_free = splits(-4) && splits(-3);
    Ok((vertices, edges, torsion_free))
}

/// Whether the group uniformizing the fibre of `V_D` at `p` is torsion free,
/// i.e. the definite order of discriminant `D/p` has no units beyond `±1`.
pub fn is_torsion_free(d: &ShimuraDiscriminant, p: u64) -> Result<bool> {
    Ok(eichler_pair(d, p)?.2)
}

/// Which family a component belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Z,
    ZPrime,
}

/// A component `v_i` (side `Z`) or `v_i'` (side `Z'`), `i` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexLabel {
    pub side: Side,
    pub index: usize,
}

impl VertexLabel {
    pub fn z(index: usize) -> Self {
        Self { side: Side::Z, index }
    }

    pub fn z_prime(index: usize) -> Self {
        Self {
            side: Side::ZPrime,
            index,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Z => write!(f, "v{}", self.index),
            Side::ZPrime => write!(f, "v{}'", self.index),
        }
    }
}

impl std::str::FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadInput(format!("bad vertex label {s:?}"));
        let rest = s.trim().strip_prefix('v').ok_or_else(bad)?;
        let (digits, side) = match rest.strip_suffix('\'') {
            Some(d) => (d, Side::ZPrime),
            None => (rest, Side::Z),
        };
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Self { side, index })
    }
}

/// An edge (double point) with its length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub length: u64,
}

/// Undirected multigraph with weighted edges; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multigraph {
    pub labels: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Multigraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.a == v) as usize + (e.b == v) as usize)
            .sum()
    }

    /// Number of edges joining `a` and `b` (either orientation).
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for (x, y) in [(e.a, e.b), (e.b, e.a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number `E - V + 1` (for a connected graph).
    pub fn betti_number(&self) -> i64 {
        self.edge_count() as i64 - self.vertex_count() as i64 + 1
    }

    /// Plain-text adjacency listing: one `a b length` line per edge.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# vertices {}", self.labels.join(" "));
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", self.labels[e.a], self.labels[e.b], e.length);
        }
        out
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for l in &self.labels {
            let _ = writeln!(out, "  \"{l}\";");
        }
        for e in &self.edges {
            let _ = write!(out, "  \"{}\" -- \"{}\"", self.labels[e.a], self.labels[e.b]);
            if e.length != 1 {
                let _ = write!(out, " [label=\"{}\"]", e.length);
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }
}

/// An involution of a multigraph, given on vertices and on edges.
///
/// An edge sent to itself with its endpoints exchanged is "fixed with
/// reversal"; sent to itself with endpoints fixed it is "fixed without
/// reversal".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAction {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl GraphAction {
    pub fn identity(graph: &Multigraph) -> Self {
        Self {
            vertex_map: (0..graph.vertex_count()).collect(),
            edge_map: (0..graph.edge_count()).collect(),
        }
    }

    fn validate(&self, graph: &Multigraph) -> Result<()> {
        let nv = graph.vertex_count();
        let ne = graph.edge_count();
        if self.vertex_map.len() != nv || self.edge_map.len() != ne {
            return Err(Error::NotInvolution("map sizes do not match the graph".into()));
        }
        for (i, &j) in self.vertex_map.iter().enumerate() {
            if j >= nv || self.vertex_map[j] != i {
                return Err(Error::NotInvolution(format!("vertex map is not an involution at {i}")));
            }
        }
        for (i, &j) in self.edge_map.iter().enumerate() {
            if j >= ne || self.edge_map[j] != i {
                return Err(Error::NotInvolution(format!("edge map is not an involution at {i}")));
            }
            let e = graph.edges[i];
            let img = graph.edges[j];
            let (a, b) = (self.vertex_map[e.a], self.vertex_map[e.b]);
            let ends_match = (img.a == a && img.b == b) || (img.a == b && img.b == a);
            if !ends_match {
                return Err(Error::NotInvolution(format!(
                    "edge {i} is not sent to an edge between the images of its endpoints"
                )));
            }
            if img.length != e.length {
                return Err(Error::NotInvolution(format!("edge {i} changes length")));
            }
        }
        Ok(())
    }
}

/// Quotient of a graph by an involution.
///
/// Vertices become vertex orbits. A pair of exchanged edges becomes one edge
/// of the same length. An edge fixed with reversal disappears: the double
/// point becomes a smooth point of the quotient. An edge fixed without
/// reversal is kept as one edge.
pub fn al_quotient(graph: &Multigraph, action: &GraphAction) -> Result<Multigraph> {
    action.validate(graph)?;
    let mut orbit_of = vec![usize::MAX; graph.vertex_count()];
    let mut labels = Vec::new();
    for v in 0..graph.vertex_count() {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let w = action.vertex_map[v];
        let id = labels.len();
        orbit_of[v] = id;
        orbit_of[w] = id;
        labels.push(if v == w {
            graph.labels[v].clone()
        } else {
            format!("{{{},{}}}", graph.labels[v], graph.labels[w])
        });
    }
    let mut edges = Vec::new();
    for (i, e) in graph.edges.iter().enumerate() {
        let j = action.edge_map[i];
        if j < i {
            continue;
        }
        if j == i {
            let reversed = e.a != e.b && action.vertex_map[e.a] == e.b;
            if reversed {
                continue;
            }
        }
        edges.push(Edge {
            a: orbit_of[e.a],
            b: orbit_of[e.b],
            length: e.length,
        });
    }
    Ok(Multigraph { labels, edges })
}

/// Kodaira symbol `I_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KodairaSymbol {
    pub n: u64,
}

impl fmt::Display for KodairaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}", self.n)
    }
}

/// `I_n` for a connected graph of first Betti number 1, `n` being the total
/// length of its unique cycle.
pub fn kodaira_symbol(graph: &Multigraph) -> Result<KodairaSymbol> {
    if !graph.is_connected() {
        return Err(Error::BadInput("quotient graph is not connected".into()));
    }
    let betti = graph.betti_number();
    if betti != 1 {
        return Err(Error::NotGenusOne(betti));
    }
    // Strip leaves until only the cycle remains.
    let mut alive = vec![true; graph.edge_count()];
    loop {
        let mut degree = vec![0usize; graph.vertex_count()];
        for (e, _) in graph.edges.iter().zip(&alive).filter(|(_, a)| **a) {
            degree[e.a] += 1;
            degree[e.b] += 1;
        }
        let mut changed = false;
        for (i, e) in graph.edges.iter().enumerate() {
            if alive[i] && e.a != e.b && (degree[e.a] == 1 || degree[e.b] == 1) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let n = graph
        .edges
        .iter()
        .zip(&alive)
        .filter(|(_, a)| **a)
        .map(|(e, _)| e.length)
        .sum();
    Ok(KodairaSymbol { n })
}

/// Extra information used to pin down the dual graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphConstraints {
    /// Total number of edges joining some `v_i` to its partner `v_i'`.
    pub crossing_total: Option<u64>,
    /// Vertex pairs known not to be joined by any edge.
    pub forbidden_pairs: Vec<(VertexLabel, VertexLabel)>,
}

impl GraphConstraints {
    pub fn is_empty(&self) -> bool {
        self.crossing_total.is_none() && self.forbidden_pairs.is_empty()
    }
}

/// Counts of the fibre that are known without adjacency data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSkeleton {
    pub d: u64,
    pub p: u64,
    pub vertices: u64,
    pub edges: u64,
    pub torsion_free: bool,
    /// Non-isomorphic multigraphs compatible with the data, when searched.
    pub candidates: Option<usize>,
}

/// Fully determined dual graph with the `w_p` action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub d: u64,
    pub p: u64,
    pub vertices: Vec<VertexLabel>,
    pub graph: Multigraph,
    /// `w_p`: `v_i <-> v_i'`, edges `v_i - v_i'` fixed with reversal,
    /// edges `v_i - v_j'` exchanged with `v_j - v_i'`.
    pub al_action: GraphAction,
}

impl DualGraph {
    pub fn index_of(&self, label: VertexLabel) -> Option<usize> {
        self.vertices.iter().position(|&v| v == label)
    }

    /// Multiplicity of the edge between two labelled vertices.
    pub fn multiplicity(&self, a: VertexLabel, b: VertexLabel) -> usize {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.graph.multiplicity(i, j),
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DualGraphOutcome {
    Unique(DualGraph),
    Underdetermined(GraphSkeleton),
}

/// Largest number of components per side searched exhaustively.
pub const MAX_SEARCH_CLASSES: usize = 4;

/// Symmetric `h x h` matrices of non-negative integers with every row
/// summing to `degree`: entry `(i, j)` counts edges `v_i - v_j'`.
fn symmetric_matrices(h: usize, degree: u64, allowed: &[Vec<bool>]) -> Vec<Vec<Vec<u64>>> {
    let cells: Vec<(usize, usize)> = (0..h).flat_map(|i| (i..h).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut m = vec![vec![0u64; h]; h];
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        m: &mut Vec<Vec<u64>>,
        degree: u64,
        allowed: &[Vec<bool>],
        out: &mut Vec<Vec<Vec<u64>>>,
    ) {
        if k == cells.len() {
            if m.iter().all(|row| row.iter().sum::<u64>() == degree) {
                out.push(m.clone());
            }
            return;
        }
        let (i, j) = cells[k];
        let used_i: u64 = m[i].iter().sum();
        let used_j: u64 = m[j].iter().sum();
        let cap = if i == j { degree - used_i } else { (degree - used_i).min(degree - used_j) };
        let cap = if allowed[i][j] { cap } else { 0 };
        // The last cell of a row must complete it.
        for v in 0..=cap {
            m[i][j] = v;
            m[j][i] = v;
            rec(k + 1, cells, m, degree, allowed, out);
        }
        m[i][j] = 0;
        m[j][i] = 0;
    }
    rec(0, &cells, &mut m, degree, allowed, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical_form(m: &[Vec<u64>], perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|s| {
            let mut flat = Vec::with_capacity(m.len() * m.len());
            for i in 0..m.len() {
                for j in 0..m.len() {
                    flat.push(m[s[i]][s[j]]);
                }
            }
            flat
        })
        .min()
        .unwrap_or_default()
}

fn build_graph(d: u64, p: u64, m: &[Vec<u64>]) -> DualGraph {
    let h = m.len();
    let vertices: Vec<VertexLabel> = (1..=h)
        .map(VertexLabel::z)
        .chain((1..=h).map(VertexLabel::z_prime))
        .collect();
    let labels = vertices.iter().map(|v| v.to_string()).collect();
    let mut edges = Vec::new();
    let mut slot = vec![vec![Vec::new(); h]; h];
    for i in 0..h {
        for j in 0..h {
            for _ in 0..m[i][j] {
                slot[i][j].push(edges.len());
                edges.push(Edge {
                    a: i,
                    b: h + j,
                    length: 1,
                });
            }
        }
    }
    let vertex_map = (0..2 * h).map(|v| if v < h { v + h } else { v - h }).collect();
    let mut edge_map = vec![0usize; edges.len()];
    for i in 0..h {
        for j in 0..h {
            for (k, &e) in slot[i][j].iter().enumerate() {
                edge_map[e] = slot[j][i][k];
            }
        }
    }
    DualGraph {
        d,
        p,
        vertices,
        graph: Multigraph { labels, edges },
        al_action: GraphAction { vertex_map, edge_map },
    }
}

/// Dual graph of the fibre of `V_D` at `p`, solved from the constraints.
///
/// In the torsion-free case every component meets `p + 1` double points and
/// every length is 1. The search runs over bipartite multigraphs between `Z`
/// and `Z'` that admit `w_p` as `v_i <-> v_i'`, are connected, and satisfy
/// the constraints; it stops at [`MAX_SEARCH_CLASSES`] components per side.
pub fn dual_graph(d: &ShimuraDiscriminant, p: u64, constraints: &GraphConstraints) -> Result<DualGraphOutcome> {
    let (h, edges, torsion_free) = eichler_pair(d, p)?;
    let mut skeleton = GraphSkeleton {
        d: d.value(),
        p,
        vertices: 2 * h,
        edges,
        torsion_free,
        candidates: None,
    };
    if !torsion_free {
        if constraints.is_empty() {
            return Ok(DualGraphOutcome::Underdetermined(skeleton));
        }
        return Err(Error::TorsionPresent { d: d.value(), p });
    }
    if edges != (p + 1) * h {
        return Err(Error::InternalInconsistency(format!(
            "torsion-free fibre of V_{d} at {p} has {edges} edges, expected {}",
            (p + 1) * h
        )));
    }
    let h = h as usize;
    if h > MAX_SEARCH_CLASSES {
        return Ok(DualGraphOutcome::Underdetermined(skeleton));
    }
    let mut allowed = vec![vec![true; h]; h];
    for &(a, b) in &constraints.forbidden_pairs {
        for label in [a, b] {
            if label.index > h {
                return Err(Error::BadInput(format!("vertex {label} does not exist")));
            }
        }
        if a.side != b.side {
            let (i, j) = (a.index - 1, b.index - 1);
            allowed[i][j] = false;
            allowed[j][i] = false;
        }
    }
    let perms = permutations(h);
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for m in symmetric_matrices(h, p + 1, &allowed) {
        if let Some(c) = constraints.crossing_total {
            let trace: u64 = (0..h).map(|i| m[i][i]).sum();
            if trace != c {
                continue;
            }
        }
        let g = build_graph(d.value(), p, &m);
        if !g.graph.is_connected() {
            continue;
        }
        if seen.insert(canonical_form(&m, &perms)) {
            found.push(g);
        }
    }
    skeleton.candidates = Some(found.len());
    match found.len() {
        1 => Ok(DualGraphOutcome::Unique(found.pop().expect("one graph"))),
        _ => Ok(DualGraphOutcome::Underdetermined(skeleton)),
    }
}

/// Kodaira symbol at `p` of `V_D / <w_m>` when the fibre is torsion free,
/// `p | m`, and each side has a single component.
///
/// Then `w_m` exchanges the two components and the quotient has one vertex,
/// so its loops are the exchanged edge pairs; genus one with multiplicative
/// reduction forces exactly one pair, hence `I_1`.
pub fn single_class_quotient_kodaira(d: &ShimuraDiscriminant, m: u64, p: u64) -> Result<Option<KodairaSymbol>> {
    if m % p != 0 {
        return Ok(None);
    }
    let (h, edges, torsion_free) = eichler_pair(d, p)?;
    if !torsion_free || h != 1 {
        return Ok(None);
    }
    let labels = vec!["v1".to_string(), "v1'".to_string()];
    let graph = Multigraph {
        labels,
        edges: (0..edges).map(|_| Edge { a: 0, b: 1, length: 1 }).collect(),
    };
    let mut edge_map: Vec<usize> = (0..edges as usize).collect();
    edge_map.swap(0, 1);
    let action = GraphAction {
        vertex_map: vec![1, 0],
        edge_map,
    };
    let quotient = al_quotient(&graph, &action)?;
    Ok(Some(kodaira_symbol(&quotient)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(n: u64) -> FactoredSquarefree {
        FactoredSquarefree::new(n).unwrap()
    }

    fn disc(d: u64) -> ShimuraDiscriminant {
        ShimuraDiscriminant::new(d).unwrap()
    }

    fn fibre_constraints() -> GraphConstraints {
        GraphConstraints {
            crossing_total: Some(4),
            forbidden_pairs: vec![
                (VertexLabel::z(1), VertexLabel::z(2)),
                (VertexLabel::z_prime(1), VertexLabel::z_prime(2)),
            ],
        }
    }

    #[test]
    fn eichler_class_numbers() {
        assert_eq!(eichler_class_number(&sf(70), &sf(1)).unwrap(), 2);
        assert_eq!(eichler_class_number(&sf(70), &sf(3)).unwrap(), 8);
        assert_eq!(eichler_class_number(&sf(2), &sf(1)).unwrap(), 1);
        assert_eq!(eichler_class_number(&sf(2), &sf(13)).unwrap(), 3);
        assert!(matches!(eichler_class_number(&sf(6), &sf(1)), Err(Error::BadInput(_))));
        assert!(matches!(eichler_class_number(&sf(70), &sf(7)), Err(Error::BadInput(_))));
    }

    #[test]
    fn torsion_free_cases() {
        assert!(is_torsion_free(&disc(210), 3).unwrap());
        assert!(!is_torsion_free(&disc(26), 13).unwrap());
        assert!(is_torsion_free(&disc(65), 5).unwrap());
    }

    #[test]
    fn constrained_graph_is_unique() {
        let outcome = dual_graph(&disc(210), 3, &fibre_constraints()).unwrap();
        let DualGraphOutcome::Unique(g) = outcome else {
            panic!("expected a unique graph, got {outcome:?}");
        };
        let (v1, v2, v1p, v2p) = (
            VertexLabel::z(1),
            VertexLabel::z(2),
            VertexLabel::z_prime(1),
            VertexLabel::z_prime(2),
        );
        assert_eq!(g.multiplicity(v1, v1p), 2);
        assert_eq!(g.multiplicity(v2, v2p), 2);
        assert_eq!(g.multiplicity(v1, v2p), 2);
        assert_eq!(g.multiplicity(v2, v1p), 2);
        assert_eq!(g.multiplicity(v1, v2), 0);
        assert_eq!(g.graph.edge_count(), 8);
        assert!((0..4).all(|v| g.graph.degree(v) == 4));
    }

    #[test]
    fn unconstrained_graphs() {
        match dual_graph(&disc(210), 3, &GraphConstraints::default()).unwrap() {
            DualGraphOutcome::Underdetermined(s) => {
                assert_eq!((s.vertices, s.edges), (4, 8));
                assert_eq!(s.candidates, Some(3));
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
        match dual_graph(&disc(26), 13, &GraphConstraints::default()).unwrap() {
            DualGraphOutcome::Underdetermined(s) => {
                assert_eq!((s.vertices, s.edges, s.torsion_free), (2, 3, false));
            }
            other => panic!("expected skeleton, got {other:?}"),
        }
        assert!(matches!(
            dual_graph(&disc(26), 13, &fibre_constraints()),
            Err(Error::TorsionPresent { d: 26, p: 13 })
        ));
    }

    #[test]
    fn constrained_quotient_is_i2() {
        let DualGraphOutcome::Unique(g) = dual_graph(&disc(210), 3, &fibre_constraints()).unwrap() else {
            panic!("graph not unique");
        };
        let q = al_quotient(&g.graph, &g.al_action).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (2, 2));
        assert_eq!(kodaira_symbol(&q).unwrap(), KodairaSymbol { n: 2 });
    }

    #[test]
    fn quotient_by_identity_and_free_action() {
        let g = Multigraph {
            labels: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            edges: vec![
                Edge { a: 0, b: 1, length: 1 },
                Edge { a: 2, b: 3, length: 1 },
                Edge { a: 1, b: 2, length: 1 },
                Edge { a: 3, b: 0, length: 1 },
            ],
        };
        let id = al_quotient(&g, &GraphAction::identity(&g)).unwrap();
        assert_eq!(id.edges, g.edges);
        let free = GraphAction {
            vertex_map: vec![2, 3, 0, 1],
            edge_map: vec![1, 0, 3, 2],
        };
        let q = al_quotient(&g, &free).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (2, 2));
        assert_eq!(kodaira_symbol(&q).unwrap().n, 2);
    }

    #[test]
    fn rejects_non_involutions() {
        let g = Multigraph {
            labels: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![],
        };
        let bad = GraphAction {
            vertex_map: vec![1, 2, 0],
            edge_map: vec![],
        };
        assert!(matches!(al_quotient(&g, &bad), Err(Error::NotInvolution(_))));
    }

    #[test]
    fn kodaira_examples() {
        let loop_graph = Multigraph {
            labels: vec!["a".into()],
            edges: vec![Edge { a: 0, b: 0, length: 1 }],
        };
        assert_eq!(kodaira_symbol(&loop_graph).unwrap().n, 1);
        let tree = Multigraph {
            labels: vec!["a".into(), "b".into()],
            edges: vec![Edge { a: 0, b: 1, length: 1 }],
        };
        assert_eq!(kodaira_symbol(&tree), Err(Error::NotGenusOne(0)));
        // cycle of length 3 with a pendant edge
        let lollipop = Multigraph {
            labels: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            edges: vec![
                Edge { a: 0, b: 1, length: 1 },
                Edge { a: 1, b: 2, length: 2 },
                Edge { a: 2, b: 0, length: 1 },
                Edge { a: 2, b: 3, length: 5 },
            ],
        };
        assert_eq!(kodaira_symbol(&lollipop).unwrap().n, 4);
    }

    #[test]
    fn single_class_case() {
        assert_eq!(
            single_class_quotient_kodaira(&disc(65), 65, 5).unwrap(),
            Some(KodairaSymbol { n: 1 })
        );
        assert_eq!(single_class_quotient_kodaira(&disc(65), 13, 5).unwrap(), None);
        assert_eq!(single_class_quotient_kodaira(&disc(65), 65, 13).unwrap(), None);
    }

    #[test]
    fn vertex_label_round_trip() {
        for s in ["v1", "v2'", "v10"] {
            assert_eq!(s.parse::<VertexLabel>().unwrap().to_string(), s);
        }
        assert!("w1".parse::<VertexLabel>().is_err());
        assert!("v0".parse::<VertexLabel>().is_err());
    }

    #[test]
    fn exports() {
        let DualGraphOutcome::Unique(g) = dual_graph(&disc(210), 3, &fibre_constraints()).unwrap() else {
            panic!("graph not unique");
        };
        let text = g.graph.to_adjacency_text();
        assert_eq!(text.lines().count(), 9);
        assert!(g.graph.to_dot("M210_F3").contains("\"v1\" -- \"v1'\""));
    }
}
