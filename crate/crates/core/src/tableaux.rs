//! Tables of eigenvalues, Young tableaux and the search for extremal classical
//! arrangements.
//!
//! A [`Pattern`] holds 1-based ranks in row-major order: rank `k` marks the cell
//! that receives the k-th largest eigenvalue. One enumeration of patterns serves
//! every spectrum; [`Table`] is the result of filling a pattern with values.

pub mod catalog;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{sample_spectrum_with, shannon_entropy, Spectrum};

/// Largest `d` accepted by Young enumeration.
pub const YOUNG_BUDGET: usize = 16;
/// Largest `d` accepted by searches over all `d!` arrangements.
pub const EXHAUSTIVE_BUDGET: usize = 9;
/// Two arrangements whose entropy sums differ by less than this are a tie.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("shape dimensions must be positive".into()));
        }
        Ok(Self { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn transposed(&self) -> Self {
        Self { rows: self.cols, cols: self.rows }
    }
}

impl From<(usize, usize)> for Shape {
    fn from((rows, cols): (usize, usize)) -> Self {
        Self { rows, cols }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (r, c) =
            s.split_once(['x', 'X']).ok_or_else(|| Error::Domain(format!("shape '{s}' is not of the form RxC")))?;
        let parse =
            |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Domain(format!("bad shape component '{t}'")));
        Shape::new(parse(r)?, parse(c)?)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Row-major arrangement of ranks `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pattern {
    shape: Shape,
    ranks: Vec<u8>,
}

impl Pattern {
    pub fn new(shape: Shape, ranks: Vec<u8>) -> Result<Self> {
        let d = shape.size();
        if ranks.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: ranks.len() });
        }
        let mut seen = vec![false; d + 1];
        for &r in &ranks {
            let r = r as usize;
            if r == 0 || r > d || seen[r] {
                return Err(Error::Domain(format!("ranks {ranks:?} are not a permutation of 1..={d}")));
            }
            seen[r] = true;
        }
        Ok(Self { shape, ranks })
    }

    /// Parses `"124356"` (one digit per cell, `d <= 9`) or `"1,2,4,3,5,6"`.
    pub fn parse(shape: Shape, s: &str) -> Result<Self> {
        let ranks: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<u8>().ok()).collect()
        } else {
            s.chars().map(|ch| ch.to_digit(10).map(|v| v as u8)).collect()
        };
        let ranks = ranks.ok_or_else(|| Error::Domain(format!("cannot parse pattern '{s}'")))?;
        Self::new(shape, ranks)
    }

    pub fn identity(shape: Shape) -> Self {
        Self { shape, ranks: (1..=shape.size() as u8).collect() }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.ranks[r * self.shape.cols + c]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.ranks.chunks(self.shape.cols).map(|c| c.to_vec()).collect()
    }

    /// Ranks increase along every row and column.
    pub fn is_young(&self) -> bool {
        let Shape { rows, cols } = self.shape;
        (0..rows).all(|r| (1..cols).all(|c| self.at(r, c - 1) < self.at(r, c)))
            && (1..rows).all(|r| (0..cols).all(|c| self.at(r - 1, c) < self.at(r, c)))
    }

    pub fn transpose(&self) -> Self {
        let Shape { rows, cols } = self.shape;
        let mut t = vec![0u8; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                t[c * rows + r] = self.at(r, c);
            }
        }
        Self { shape: self.shape.transposed(), ranks: t }
    }

    /// Representative of the orbit under row and column permutations (and transposition
    /// for square shapes): the row holding rank 1 is sorted ascending and moved to the top,
    /// then rows are ordered by their first entry.
    pub fn canonical(&self) -> Self {
        let a = canonical_rc(&self.ranks, self.shape);
        if self.shape.is_square() {
            let b = canonical_rc(&self.transpose().ranks, self.shape);
            return Self { shape: self.shape, ranks: a.min(b) };
        }
        Self { shape: self.shape, ranks: a }
    }

    /// Same as [`Pattern::canonical`] but without the transpose symmetry.
    pub fn canonical_rows_cols(&self) -> Self {
        Self { shape: self.shape, ranks: canonical_rc(&self.ranks, self.shape) }
    }

    /// Compact label: digits for `d <= 9`, comma-separated otherwise.
    pub fn label(&self) -> String {
        if self.ranks.len() <= 9 {
            self.ranks.iter().map(|r| char::from(b'0' + r)).collect()
        } else {
            self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Fills the pattern with a spectrum's values by rank.
    pub fn fill(&self, spectrum: &Spectrum) -> Result<Table> {
        Table::from_pattern(spectrum, self)
    }

    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut ranks = self.ranks.clone();
        ranks.swap(i, j);
        Self { shape: self.shape, ranks }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

fn canonical_rc(ranks: &[u8], shape: Shape) -> Vec<u8> {
    let Shape { rows, cols } = shape;
    let pos1 = ranks.iter().position(|&r| r == 1).expect("rank 1 present");
    let r1 = pos1 / cols;
    let mut col_order: Vec<usize> = (0..cols).collect();
    col_order.sort_by_key(|&c| ranks[r1 * cols + c]);
    let c0 = col_order[0];
    let mut row_order: Vec<usize> = (0..rows).collect();
    row_order.sort_by_key(|&r| ranks[r * cols + c0]);
    let mut out = Vec::with_capacity(rows * cols);
    for &r in &row_order {
        for &c in &col_order {
            out.push(ranks[r * cols + c]);
        }
    }
    out
}

/// An arrangement of probabilities in a `d_A × d_B` grid (rows belong to A).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    shape: Shape,
    entries: Vec<f64>,
}

impl Table {
    pub fn new(shape: Shape, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::DimensionMismatch { expected: shape.size(), got: entries.len() });
        }
        let s = shannon_entropy(&entries).map(|_| entries.iter().sum::<f64>())?;
        if (s - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("table entries sum to {s}")));
        }
        Ok(Self { shape, entries })
    }

    pub fn from_pattern(spectrum: &Spectrum, pattern: &Pattern) -> Result<Self> {
        if spectrum.len() != pattern.shape.size() {
            return Err(Error::DimensionMismatch { expected: spectrum.len(), got: pattern.shape.size() });
        }
        let v = spectrum.values();
        Ok(Self { shape: pattern.shape, entries: pattern.ranks.iter().map(|&r| v[r as usize - 1]).collect() })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.shape.cols + c]
    }

    /// Non-increasing along every row and column.
    pub fn is_young(&self) -> bool {
        let Shape { rows, cols } = self.shape;
        (0..rows).all(|r| (1..cols).all(|c| self.at(r, c - 1) >= self.at(r, c)))
            && (1..rows).all(|r| (0..cols).all(|c| self.at(r - 1, c) >= self.at(r, c)))
    }

    /// True when the multiset of entries equals the spectrum's (within 1e-12).
    pub fn is_arrangement_of(&self, spectrum: &Spectrum) -> bool {
        if self.entries.len() != spectrum.len() {
            return false;
        }
        let mut e = self.entries.clone();
        e.sort_by(|a, b| b.total_cmp(a));
        e.iter().zip(spectrum.values()).all(|(x, y)| (x - y).abs() <= 1e-12)
    }
}

/// Row sums `a` and column sums `b`.
pub fn marginals(table: &Table) -> (Vec<f64>, Vec<f64>) {
    let Shape { rows, cols } = table.shape;
    let a = (0..rows).map(|r| (0..cols).map(|c| table.at(r, c)).sum()).collect();
    let b = (0..cols).map(|c| (0..rows).map(|r| table.at(r, c)).sum()).collect();
    (a, b)
}

fn xlog(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Classical mutual information `H(a) + H(b) - H(entries)` of the arrangement.
pub fn table_mi(table: &Table) -> f64 {
    let (a, b) = marginals(table);
    let h = |v: &[f64]| v.iter().map(|&x| xlog(x)).sum::<f64>();
    h(&a) + h(&b) - h(&table.entries)
}

/// `H(a) + H(b)` of a pattern filled with `values` (sorted non-increasing), without allocating.
pub fn pattern_entropy_sum(values: &[f64], ranks: &[u8], shape: Shape) -> f64 {
    let mut a = [0.0f64; YOUNG_BUDGET];
    let mut b = [0.0f64; YOUNG_BUDGET];
    let cols = shape.cols;
    for (i, &r) in ranks.iter().enumerate() {
        let v = values[r as usize - 1];
        a[i / cols] += v;
        b[i % cols] += v;
    }
    a[..shape.rows].iter().map(|&x| xlog(x)).sum::<f64>() + b[..cols].iter().map(|&x| xlog(x)).sum::<f64>()
}

/// Iterates column sorting followed by row sorting (both descending) to a fixed point.
pub fn sort_table(table: &Table) -> Table {
    let Shape { rows, cols } = table.shape;
    let mut t = table.entries.clone();
    loop {
        let before = t.clone();
        for c in 0..cols {
            let mut col: Vec<f64> = (0..rows).map(|r| t[r * cols + c]).collect();
            col.sort_by(|x, y| y.total_cmp(x));
            for r in 0..rows {
                t[r * cols + c] = col[r];
            }
        }
        for r in 0..rows {
            t[r * cols..(r + 1) * cols].sort_by(|x, y| y.total_cmp(x));
        }
        if t == before {
            break;
        }
    }
    Table { shape: table.shape, entries: t }
}

/// `N(d_A, d_B) = (d_A d_B)! Π_{i=1}^{d_B-1} i! / Π_{j=d_A}^{d_A+d_B-1} j!`.
pub fn hook_count(shape: Shape) -> BigUint {
    let fact = |n: usize| (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k));
    let mut num = fact(shape.size());
    for i in 1..shape.cols {
        num *= fact(i);
    }
    let mut den = BigUint::from(1u32);
    for j in shape.rows..shape.rows + shape.cols {
        den *= fact(j);
    }
    num / den
}

/// Independent standard Young tableaux of a rectangular shape. For square shapes only
/// the member of each transpose pair with rank 2 in the first row is kept.
#[derive(Clone, Debug, Serialize)]
pub struct YoungSet {
    shape: Shape,
    patterns: Vec<Pattern>,
}

impl YoungSet {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Pattern> {
        self.patterns.get(index)
    }

    /// 0-based position of a pattern, also matching the transpose for square shapes.
    pub fn index_of(&self, pattern: &Pattern) -> Option<usize> {
        self.patterns.iter().position(|p| p == pattern).or_else(|| {
            if self.shape.is_square() {
                let t = pattern.transpose();
                self.patterns.iter().position(|p| *p == t)
            } else {
                None
            }
        })
    }

    /// `T<d>(<i>)` with 1-based numbering.
    pub fn label(&self, index: usize) -> String {
        format!("T{}({})", self.shape.size(), index + 1)
    }
}

fn check_budget(shape: Shape, budget: usize) -> Result<()> {
    if shape.size() > budget {
        return Err(Error::Budget(format!("shape {shape} has {} cells, limit {budget}", shape.size())));
    }
    Ok(())
}

/// Enumerates the independent Young tableaux. Shapes with a conventional numbering
/// (2×2, 2×3, 3×3) follow it; others are in lexicographic rank order.
pub fn enumerate_young(shape: Shape) -> Result<YoungSet> {
    check_budget(shape, YOUNG_BUDGET)?;
    let mut out = Vec::new();
    let mut fill = vec![0usize; shape.rows];
    let mut ranks = vec![0u8; shape.size()];
    place(shape, 1, &mut fill, &mut ranks, &mut out);
    if shape.is_square() && shape.rows > 1 {
        out.retain(|r: &Vec<u8>| r[1] == 2);
    }
    out.sort();
    let mut patterns: Vec<Pattern> = out.into_iter().map(|ranks| Pattern { shape, ranks }).collect();
    if let Some(cat) = catalog::for_shape(shape.rows, shape.cols) {
        let key = |p: &Pattern| cat.iter().position(|s| *s == p.label()).unwrap_or(usize::MAX);
        patterns.sort_by_key(key);
    }
    Ok(YoungSet { shape, patterns })
}

fn place(shape: Shape, k: usize, fill: &mut [usize], ranks: &mut [u8], out: &mut Vec<Vec<u8>>) {
    if k > shape.size() {
        out.push(ranks.to_vec());
        return;
    }
    for r in 0..shape.rows {
        if fill[r] < shape.cols && (r == 0 || fill[r - 1] > fill[r]) {
            ranks[r * shape.cols + fill[r]] = k as u8;
            fill[r] += 1;
            place(shape, k + 1, fill, ranks, out);
            fill[r] -= 1;
        }
    }
}

/// Outcome of a search over arrangements.
#[derive(Clone, Debug, Serialize)]
pub struct TableSearch {
    /// Position in the searched list (Young set numbering for minimisation).
    pub index: usize,
    pub pattern: Pattern,
    pub table: Table,
    /// Classical mutual information in bits.
    pub value: f64,
    /// Another arrangement attains the same value within [`TIE_TOL`].
    pub tie: bool,
    /// Searched the Young set only, without an exhaustive cross-check available.
    pub young_restricted: bool,
}

fn shape_of(spectrum: &Spectrum) -> Shape {
    spectrum.dims().into()
}

/// Picks the best entry; ties within [`TIE_TOL`] go to the lexicographically smallest pattern.
fn pick(patterns: &[Pattern], values: &[f64], minimize: bool) -> (usize, bool) {
    let best = values.iter().copied().fold(if minimize { f64::INFINITY } else { f64::NEG_INFINITY }, |m, v| {
        if minimize {
            m.min(v)
        } else {
            m.max(v)
        }
    });
    let winners: Vec<usize> = (0..values.len()).filter(|&i| (values[i] - best).abs() <= TIE_TOL).collect();
    let idx = *winners.iter().min_by(|&&i, &&j| patterns[i].ranks.cmp(&patterns[j].ranks)).expect("non-empty");
    (idx, winners.len() > 1)
}

/// Young tableau with the smallest classical mutual information for this spectrum.
pub fn minimal_table(spectrum: &Spectrum) -> Result<TableSearch> {
    let shape = shape_of(spectrum);
    let young = enumerate_young(shape)?;
    minimal_in(&young, spectrum)
}

/// Minimisation over an already enumerated Young set.
pub fn minimal_in(young: &YoungSet, spectrum: &Spectrum) -> Result<TableSearch> {
    if young.shape.dims() != spectrum.dims() {
        return Err(Error::DimensionMismatch { expected: young.shape.size(), got: spectrum.len() });
    }
    let v = spectrum.values();
    let sums: Vec<f64> = young.patterns.iter().map(|p| pattern_entropy_sum(v, &p.ranks, young.shape)).collect();
    let (idx, tie) = pick(&young.patterns, &sums, true);
    let pattern = young.patterns[idx].clone();
    let table = pattern.fill(spectrum)?;
    Ok(TableSearch {
        index: idx,
        value: table_mi(&table),
        pattern,
        table,
        tie,
        young_restricted: young.shape.size() > EXHAUSTIVE_BUDGET,
    })
}

/// One representative per orbit of row/column permutations (and transposition for
/// square shapes), in lexicographic order.
pub fn class_representatives(shape: Shape) -> Result<Vec<Pattern>> {
    check_budget(shape, EXHAUSTIVE_BUDGET)?;
    let mut reps = Vec::new();
    for_each_permutation(shape.size(), |ranks| {
        let p = Pattern { shape, ranks: ranks.to_vec() };
        if p.canonical() == p {
            reps.push(p);
        }
    });
    reps.sort();
    Ok(reps)
}

/// Orbit of arrangements sharing one classical mutual information for every spectrum.
#[derive(Clone, Debug)]
pub struct SymmetryClass {
    pub representative: Pattern,
    pub members: Vec<Pattern>,
}

/// Partition of all `d!` arrangements into symmetry classes.
pub fn symmetry_classes(shape: Shape) -> Result<Vec<SymmetryClass>> {
    check_budget(shape, EXHAUSTIVE_BUDGET)?;
    let mut map: HashMap<Vec<u8>, Vec<Pattern>> = HashMap::new();
    for_each_permutation(shape.size(), |ranks| {
        let p = Pattern { shape, ranks: ranks.to_vec() };
        map.entry(p.canonical().ranks).or_default().push(p);
    });
    let mut classes: Vec<SymmetryClass> = map
        .into_iter()
        .map(|(ranks, mut members)| {
            members.sort();
            SymmetryClass { representative: Pattern { shape, ranks }, members }
        })
        .collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Exhaustive minimum over all arrangements (via class representatives), `d <= 9`.
pub fn exhaustive_minimum(spectrum: &Spectrum) -> Result<TableSearch> {
    exhaustive(spectrum, true)
}

/// Arrangement with the largest classical mutual information, `d <= 9`.
pub fn max_classical_table(spectrum: &Spectrum) -> Result<TableSearch> {
    exhaustive(spectrum, false)
}

fn exhaustive(spectrum: &Spectrum, minimize: bool) -> Result<TableSearch> {
    let shape = shape_of(spectrum);
    let reps = class_representatives(shape)?;
    let v = spectrum.values();
    let sums: Vec<f64> = reps.iter().map(|p| pattern_entropy_sum(v, &p.ranks, shape)).collect();
    let (idx, tie) = pick(&reps, &sums, minimize);
    let pattern = reps[idx].clone();
    let table = pattern.fill(spectrum)?;
    Ok(TableSearch { index: idx, value: table_mi(&table), pattern, table, tie, young_restricted: false })
}

/// Heap's algorithm over permutations of `1..=n`.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut a: Vec<u8> = (1..=n as u8).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// How often each Young tableau minimises the mutual information over random spectra.
#[derive(Clone, Debug, Serialize)]
pub struct Histogram {
    pub shape: Shape,
    pub n_samples: u64,
    pub seed: u64,
    /// Indexed like the Young set.
    pub counts: Vec<u64>,
    /// Samples whose minimum was shared by more than one tableau.
    pub ties: u64,
}

impl Histogram {
    /// Index of the most frequent minimiser (first on equal counts).
    pub fn mode(&self) -> usize {
        let max = *self.counts.iter().max().unwrap_or(&0);
        self.counts.iter().position(|&c| c == max).unwrap_or(0)
    }
}

const HIST_CHUNK: u64 = 4096;

/// Samples `n_samples` full-rank flat-Dirichlet spectra and counts the minimising tableau.
/// Chunk `k` draws from ChaCha stream `k` of `seed`, so results do not depend on thread count.
pub fn histogram_minimizers(shape: Shape, n_samples: u64, seed: u64) -> Result<Histogram> {
    let young = enumerate_young(shape)?;
    let n_pat = young.len();
    let n_chunks = n_samples.div_ceil(HIST_CHUNK);
    let (counts, ties) = (0..n_chunks)
        .into_par_iter()
        .map(|k| -> Result<(Vec<u64>, u64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let m = HIST_CHUNK.min(n_samples - k * HIST_CHUNK);
            let mut counts = vec![0u64; n_pat];
            let mut ties = 0;
            let mut sums = vec![0.0; n_pat];
            for _ in 0..m {
                let s = sample_spectrum_with(&mut rng, shape.dims(), true)?;
                for (i, p) in young.patterns.iter().enumerate() {
                    sums[i] = pattern_entropy_sum(s.values(), &p.ranks, shape);
                }
                let (idx, tie) = pick(&young.patterns, &sums, true);
                counts[idx] += 1;
                ties += tie as u64;
            }
            Ok((counts, ties))
        })
        .try_reduce(
            || (vec![0u64; n_pat], 0),
            |(mut c1, t1), (c2, t2)| {
                c1.iter_mut().zip(&c2).for_each(|(x, y)| *x += y);
                Ok((c1, t1 + t2))
            },
        )?;
    Ok(Histogram { shape, n_samples, seed, counts, ties })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(r: usize, c: usize) -> Shape {
        Shape::new(r, c).unwrap()
    }

    fn spec(w: &[f64], r: usize, c: usize) -> Spectrum {
        Spectrum::from_weights(w.to_vec(), (r, c)).unwrap()
    }

    #[test]
    fn hook_counts() {
        assert_eq!(hook_count(shape(2, 2)), BigUint::from(2u32));
        assert_eq!(hook_count(shape(2, 3)), BigUint::from(5u32));
        assert_eq!(hook_count(shape(3, 3)), BigUint::from(42u32));
        assert_eq!(hook_count(shape(4, 4)), BigUint::from(24024u32));
    }

    #[test]
    fn young_counts_match_hook_formula() {
        for (r, c) in [(1, 4), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (3, 4), (4, 4)] {
            let s = shape(r, c);
            let n: u64 = hook_count(s).try_into().unwrap();
            let expect = if s.is_square() { n / 2 } else { n };
            assert_eq!(enumerate_young(s).unwrap().len() as u64, expect, "{s}");
        }
        assert!(matches!(enumerate_young(shape(3, 6)), Err(Error::Budget(_))));
    }

    #[test]
    fn catalog_order() {
        let y = enumerate_young(shape(2, 3)).unwrap();
        let labels: Vec<String> = y.patterns().iter().map(|p| p.label()).collect();
        assert_eq!(labels, catalog::T6.to_vec());
        let y = enumerate_young(shape(3, 3)).unwrap();
        let labels: Vec<String> = y.patterns().iter().map(|p| p.label()).collect();
        assert_eq!(labels, catalog::T9.to_vec());
    }

    #[test]
    fn marginal_examples() {
        let t = Pattern::identity(shape(2, 2)).fill(&spec(&[0.6, 0.3, 0.1, 0.0], 2, 2)).unwrap();
        let (a, b) = marginals(&t);
        assert!((a[0] - 0.9).abs() < 1e-15 && (a[1] - 0.1).abs() < 1e-15);
        assert!((b[0] - 0.7).abs() < 1e-15 && (b[1] - 0.3).abs() < 1e-15);
        assert!((table_mi(&t) - 0.05483).abs() < 1e-5);
        let t2 =
            Pattern::parse(shape(2, 2), catalog::T4_TWO).unwrap().fill(&spec(&[0.6, 0.3, 0.1, 0.0], 2, 2)).unwrap();
        assert!((table_mi(&t2) - 0.55678).abs() < 5e-6);
    }

    #[test]
    fn sort_table_example() {
        let t = Table::new(shape(2, 2), vec![0.1, 0.6, 0.0, 0.3]).unwrap();
        let s = sort_table(&t);
        assert_eq!(s.entries(), &[0.6, 0.1, 0.3, 0.0]);
        assert!(s.is_young());
        assert_eq!(sort_table(&s), s);
    }

    #[test]
    fn minimal_table_examples() {
        let m = minimal_table(&spec(&[6., 5., 4., 3., 2., 1.], 2, 3)).unwrap();
        assert_eq!(m.index, 2);
        let m = minimal_table(&spec(&[10., 9., 8., 3., 2., 1.], 2, 3)).unwrap();
        assert_eq!(m.index, 0);
        let m = minimal_table(&spec(&[0.4, 0.3, 0.2, 0.1], 2, 2)).unwrap();
        assert_eq!(m.pattern.label(), "1234");
    }

    #[test]
    fn class_counts() {
        assert_eq!(class_representatives(shape(2, 2)).unwrap().len(), 3);
        assert_eq!(class_representatives(shape(2, 3)).unwrap().len(), 60);
        let classes = symmetry_classes(shape(2, 2)).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.iter().map(|c| c.members.len()).sum::<usize>(), 24);
    }

    #[test]
    fn max_classical_two_qubits() {
        let m = max_classical_table(&spec(&[0.6, 0.3, 0.1, 0.0], 2, 2)).unwrap();
        let expect = Pattern::parse(shape(2, 2), catalog::T4_TWO).unwrap().canonical();
        assert_eq!(m.pattern, expect);
        assert!((m.value - 0.55678).abs() < 5e-6);
    }

    #[test]
    fn histogram_is_deterministic() {
        let a = histogram_minimizers(shape(2, 3), 5000, 7).unwrap();
        let b = histogram_minimizers(shape(2, 3), 5000, 7).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.counts.iter().sum::<u64>(), 5000);
    }

    #[test]
    fn pattern_parsing() {
        let p = Pattern::parse(shape(2, 3), "1,2,4,3,5,6").unwrap();
        assert_eq!(p.label(), "124356");
        assert!(p.is_young());
        assert!(Pattern::parse(shape(2, 3), "124355").is_err());
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!("3x3".parse::<Shape>().unwrap(), shape(3, 3));
    }
}
