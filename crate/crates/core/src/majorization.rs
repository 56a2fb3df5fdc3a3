//! Majorization, single-swap relations between Young tableaux and the graphs they induce.

use petgraph::algo::{has_path_connecting, is_cyclic_directed};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{shannon_entropy, sorted_desc, Spectrum};
use crate::tableaux::{enumerate_young, marginals, table_mi, Pattern, Shape, YoungSet};

pub const MAJORIZATION_TOL: f64 = 1e-10;

fn normalized(p: &[f64]) -> Result<()> {
    shannon_entropy(p)?;
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("vector sums to {s}, expected 1")));
    }
    Ok(())
}

/// `p ≻ q`: every descending partial sum of `p` dominates that of `q`.
pub fn majorizes(p: &[f64], q: &[f64]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), got: q.len() });
    }
    normalized(p)?;
    normalized(q)?;
    let (ps, qs) = (sorted_desc(p), sorted_desc(q));
    let (mut a, mut b) = (0.0, 0.0);
    for (x, y) in ps.iter().zip(&qs) {
        a += x;
        b += y;
        if a < b - MAJORIZATION_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a state with spectrum `sigma` is a mixture of states on the orbit of `rho`:
/// `spec(σ) ≺ spec(ρ)`.
pub fn in_convex_hull(sigma: &Spectrum, rho: &Spectrum) -> Result<bool> {
    majorizes(rho.values(), sigma.values())
}

/// Transposition of the lower-left cell `(r, s)` with the upper-right cell `(t, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Swap {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub u: usize,
    /// Index of the resulting pattern in the Young set, when it is a member.
    pub destination: Option<usize>,
    /// For square shapes: index of the member whose transpose is the result.
    pub transposed_destination: Option<usize>,
}

impl Swap {
    /// The value moved up, `τ_tu`, has a smaller rank (larger value) than `τ_rs`.
    pub fn delta_positive(&self, pattern: &Pattern) -> bool {
        pattern.at(self.t, self.u) < pattern.at(self.r, self.s)
    }

    fn apply(&self, pattern: &Pattern) -> Pattern {
        let cols = pattern.shape().cols;
        pattern.swapped(self.r * cols + self.s, self.t * cols + self.u)
    }
}

/// All swaps with `r > t`, `s < u` whose result is still a Young pattern.
pub fn valid_swaps(pattern: &Pattern, young: &YoungSet) -> Result<Vec<Swap>> {
    if !pattern.is_young() {
        return Err(Error::Precondition(format!("pattern {} is not a Young tableau", pattern.label())));
    }
    let Shape { rows, cols } = pattern.shape();
    let mut out = Vec::new();
    for r in 0..rows {
        for t in 0..r {
            for s in 0..cols {
                for u in s + 1..cols {
                    let mut sw = Swap { r, s, t, u, destination: None, transposed_destination: None };
                    let q = sw.apply(pattern);
                    if !q.is_young() {
                        continue;
                    }
                    sw.destination = young.patterns().iter().position(|p| *p == q);
                    if sw.destination.is_none() && young.shape().is_square() {
                        let qt = q.transpose();
                        sw.transposed_destination = young.patterns().iter().position(|p| *p == qt);
                    }
                    out.push(sw);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeeSawReport {
    /// `τ_tu - τ_rs` evaluated in the first table.
    pub delta: f64,
    pub a_i: Vec<f64>,
    pub a_j: Vec<f64>,
    pub b_i: Vec<f64>,
    pub b_j: Vec<f64>,
    /// Row vectors: `a_j ≺ a_i` when `δ > 0`, reversed when `δ < 0`.
    pub rows_hold: bool,
    /// Column vectors: `b_j ≻ b_i` when `δ > 0`, reversed when `δ < 0`.
    pub cols_hold: bool,
    /// `H(a_j) >= H(a_i)` and `H(b_j) <= H(b_i)` when `δ > 0` (reversed otherwise).
    pub entropies_hold: bool,
    /// Tied values make the relations equalities.
    pub degenerate: bool,
}

impl SeeSawReport {
    pub fn holds(&self) -> bool {
        self.rows_hold && self.cols_hold && self.entropies_hold
    }
}

/// Verifies the opposite majorization shifts of row and column marginals for two
/// Young patterns that differ by one swap.
pub fn see_saw_check(pattern_i: &Pattern, pattern_j: &Pattern, spectrum: &Spectrum) -> Result<SeeSawReport> {
    let shape = pattern_i.shape();
    if pattern_j.shape() != shape || spectrum.dims() != shape.dims() {
        return Err(Error::DimensionMismatch { expected: shape.size(), got: pattern_j.shape().size() });
    }
    if !pattern_i.is_young() || !pattern_j.is_young() {
        return Err(Error::Precondition("both patterns must be Young tableaux".into()));
    }
    let diff: Vec<usize> = (0..shape.size()).filter(|&k| pattern_i.ranks()[k] != pattern_j.ranks()[k]).collect();
    let cols = shape.cols;
    let adjacent = diff.len() == 2 && {
        let (p, q) = ((diff[0] / cols, diff[0] % cols), (diff[1] / cols, diff[1] % cols));
        pattern_i.ranks()[diff[0]] == pattern_j.ranks()[diff[1]] && p.0 < q.0 && p.1 > q.1
    };
    if !adjacent {
        return Err(Error::Precondition(format!(
            "{} and {} are not related by one lower-left/upper-right swap",
            pattern_i.label(),
            pattern_j.label()
        )));
    }
    let (t, u) = (diff[0] / cols, diff[0] % cols);
    let (r, s) = (diff[1] / cols, diff[1] % cols);
    let ti = pattern_i.fill(spectrum)?;
    let tj = pattern_j.fill(spectrum)?;
    let delta = ti.at(t, u) - ti.at(r, s);
    let (a_i, b_i) = marginals(&ti);
    let (a_j, b_j) = marginals(&tj);
    let h = |v: &[f64]| shannon_entropy(v).expect("marginals are probabilities");
    let degenerate = delta.abs() <= 1e-12;
    let (rows_hold, cols_hold, entropies_hold) = if delta >= 0.0 {
        (majorizes(&a_i, &a_j)?, majorizes(&b_j, &b_i)?, h(&a_j) >= h(&a_i) - 1e-12 && h(&b_j) <= h(&b_i) + 1e-12)
    } else {
        (majorizes(&a_j, &a_i)?, majorizes(&b_i, &b_j)?, h(&a_j) <= h(&a_i) + 1e-12 && h(&b_j) >= h(&b_i) - 1e-12)
    };
    Ok(SeeSawReport { delta, a_i, a_j, b_i, b_j, rows_hold, cols_hold, entropies_hold, degenerate })
}

/// Which marginal the graph orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// Edge `i → j`: row vector of `i` majorizes that of `j`.
    Row,
    /// Edge `i → j`: column vector of `i` majorizes that of `j`.
    Column,
}

/// Directed graph on the Young set, one edge per single valid swap.
#[derive(Clone, Debug)]
pub struct TableGraph {
    pub kind: GraphKind,
    pub young: YoungSet,
    graph: DiGraph<usize, ()>,
}

/// Row graph: edge along each swap that moves a larger value up-right.
pub fn build_graph(shape: Shape) -> Result<TableGraph> {
    build(shape, GraphKind::Row)
}

/// Column graph built directly from the column-marginal direction.
pub fn build_column_graph(shape: Shape) -> Result<TableGraph> {
    build(shape, GraphKind::Column)
}

fn build(shape: Shape, kind: GraphKind) -> Result<TableGraph> {
    let young = enumerate_young(shape)?;
    let mut graph = DiGraph::new();
    let nodes: Vec<NodeIndex> = (0..young.len()).map(|i| graph.add_node(i)).collect();
    for (i, p) in young.patterns().iter().enumerate() {
        for sw in valid_swaps(p, &young)? {
            let Some(j) = sw.destination else { continue };
            let forward = match kind {
                GraphKind::Row => sw.delta_positive(p),
                GraphKind::Column => !sw.delta_positive(p),
            };
            if forward && graph.find_edge(nodes[i], nodes[j]).is_none() {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    Ok(TableGraph { kind, young, graph })
}

impl TableGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Edges as 0-based index pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .graph
            .edge_indices()
            .filter_map(|ei| self.graph.edge_endpoints(ei))
            .map(|(a, b)| (a.index(), b.index()))
            .collect();
        e.sort();
        e
    }

    pub fn is_acyclic(&self) -> bool {
        !is_cyclic_directed(&self.graph)
    }

    pub fn has_path(&self, from: usize, to: usize) -> bool {
        has_path_connecting(&self.graph, NodeIndex::new(from), NodeIndex::new(to), None)
    }

    /// `closure[i][j]`: a directed path of length >= 1 leads from `i` to `j`.
    pub fn closure(&self) -> Vec<Vec<bool>> {
        let n = self.node_count();
        let mut c = vec![vec![false; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            let mut stack: Vec<NodeIndex> = self.graph.neighbors(NodeIndex::new(i)).collect();
            while let Some(v) = stack.pop() {
                if !row[v.index()] {
                    row[v.index()] = true;
                    stack.extend(self.graph.neighbors(v));
                }
            }
        }
        c
    }

    /// Same nodes with every edge reversed.
    pub fn reversed(&self) -> TableGraph {
        let mut g = self.graph.clone();
        g.reverse();
        let kind = match self.kind {
            GraphKind::Row => GraphKind::Column,
            GraphKind::Column => GraphKind::Row,
        };
        TableGraph { kind, young: self.young.clone(), graph: g }
    }

    /// Graphviz rendering with nodes labelled by the tableau number.
    pub fn to_dot(&self) -> String {
        let d = self.young.shape().size();
        let mut out = format!("digraph G_{}_{} {{\n", format!("{:?}", self.kind).to_lowercase(), self.young.shape());
        for (i, p) in self.young.patterns().iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"T{}({})\\n{}\"];\n", i + 1, d, i + 1, p.label()));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  n{} -> n{};\n", a + 1, b + 1));
        }
        out.push_str("}\n");
        out
    }

    /// CSV edge list with 1-based node numbers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,target\n");
        for (a, b) in self.edges() {
            out.push_str(&format!("{},{}\n", a + 1, b + 1));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaVariant {
    /// Support within the first row.
    One,
    /// Support within the first row plus one cell.
    Two,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub variant: LemmaVariant,
    /// First-row length.
    pub k: usize,
    /// Row-major filling.
    pub qmi_first: f64,
    /// Row-major filling with `p_k` and `p_{k+1}` exchanged.
    pub qmi_second: f64,
    pub holds: bool,
}

/// Compares the row-major filling with the one exchanging `p_k` and `p_{k+1}` across the
/// first row boundary, for spectra supported on `k` (variant one) or `k + 1` entries.
pub fn lemma_supports(spectrum: &Spectrum, variant: LemmaVariant) -> Result<LemmaReport> {
    let shape: Shape = spectrum.dims().into();
    let k = shape.cols;
    if k >= shape.size() {
        return Err(Error::Domain("lemma needs at least two rows".into()));
    }
    let support = match variant {
        LemmaVariant::One => k,
        LemmaVariant::Two => k + 1,
    };
    if spectrum.values()[support..].iter().any(|&x| x > 0.0) {
        return Err(Error::Precondition(format!("spectrum support exceeds {support} entries")));
    }
    let first = Pattern::identity(shape);
    let second = first.swapped(k - 1, k);
    let qmi_first = table_mi(&first.fill(spectrum)?);
    let qmi_second = table_mi(&second.fill(spectrum)?);
    Ok(LemmaReport { variant, k, qmi_first, qmi_second, holds: qmi_first <= qmi_second + 1e-12 })
}
