//! The lexicographic dioid of depth k and dense matrix path algebra.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flooding::{minima_of_flooding, FloodingGraph};
use crate::graph::{Label, WeightedGraph};
use crate::weight::Weight;

/// Largest dense matrix the solvers accept.
pub const MAX_DENSE: usize = 2048;

/// Element of the dioid.
///
/// The derived order is the dioid order: `Unit` is smallest, `Zero`
/// largest, and sequences compare lexicographically with a proper prefix
/// ranking first. `Seq` is never empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LexWeight {
    Unit,
    Seq(Vec<Weight>),
    Zero,
}

impl LexWeight {
    pub fn seq(xs: &[u32]) -> LexWeight {
        if xs.is_empty() {
            return LexWeight::Unit;
        }
        LexWeight::Seq(xs.iter().map(|&x| Weight::from(x)).collect())
    }

    /// Underlying sequence; empty for `Unit`, `None` for `Zero`.
    pub fn values(&self) -> Option<&[Weight]> {
        match self {
            LexWeight::Unit => Some(&[]),
            LexWeight::Seq(v) => Some(v),
            LexWeight::Zero => None,
        }
    }

    /// `first_m`: keeps the leading `m` values.
    pub fn first(&self, m: usize) -> LexWeight {
        match self {
            LexWeight::Seq(_) if m == 0 => LexWeight::Unit,
            LexWeight::Seq(v) if v.len() > m => LexWeight::Seq(v[..m].to_vec()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for LexWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexWeight::Unit => f.write_str("[]"),
            LexWeight::Zero => f.write_str("inf"),
            LexWeight::Seq(v) => {
                let parts: Vec<String> = v.iter().map(|w| w.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

impl Serialize for LexWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.values() {
            Some(v) => v.serialize(s),
            None => s.serialize_str("inf"),
        }
    }
}

/// Weight of a raw sequence: `Zero` if it ever increases, otherwise its
/// first `k` values.
pub fn nap_weight(seq: &[Weight], k: usize) -> LexWeight {
    if seq.windows(2).any(|p| p[0] < p[1]) {
        return LexWeight::Zero;
    }
    if seq.is_empty() || k == 0 {
        return LexWeight::Unit;
    }
    LexWeight::Seq(seq[..seq.len().min(k)].to_vec())
}

pub fn lex_compare(a: &LexWeight, b: &LexWeight) -> Ordering {
    a.cmp(b)
}

/// `⊞`: the smaller element.
pub fn boxplus(a: &LexWeight, b: &LexWeight) -> LexWeight {
    a.min(b).clone()
}

/// `⊠_k`: chaining a path prefix `a` with a suffix `b`.
///
/// Values of `a` lower than the head of `b` are masked by the higher pass
/// that follows them, so only the part of `a` that is at least `first(b)`
/// survives; the result is truncated to `k`. When `a ++ b` never
/// increases this is the plain concatenation.
pub fn boxtimes(a: &LexWeight, b: &LexWeight, k: usize) -> LexWeight {
    match (a, b) {
        (LexWeight::Zero, _) | (_, LexWeight::Zero) => LexWeight::Zero,
        (LexWeight::Unit, x) | (x, LexWeight::Unit) => x.first(k),
        (LexWeight::Seq(x), LexWeight::Seq(y)) => {
            let head = y[0];
            let mut out: Vec<Weight> = x.iter().copied().take_while(|&v| v >= head).take(k).collect();
            let room = k - out.len();
            out.extend(y.iter().take(room));
            LexWeight::Seq(out)
        }
    }
}

/// Dense matrix over the dioid of depth `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexMatrix {
    rows: usize,
    cols: usize,
    k: usize,
    data: Vec<LexWeight>,
}

impl LexMatrix {
    /// `ε̂`: every entry `Zero`.
    pub fn zero(rows: usize, cols: usize, k: usize) -> Self {
        LexMatrix { rows, cols, k, data: vec![LexWeight::Zero; rows * cols] }
    }

    /// `E`: `Unit` on the diagonal.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut m = Self::zero(n, n, k);
        for i in 0..n {
            m.set(i, i, LexWeight::Unit);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn depth(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &LexWeight {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LexWeight) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<LexWeight> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn check(&self, other: &LexMatrix, rows: usize, what: &str) -> Result<()> {
        if self.k != other.k || rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} (depth {}) with {}x{} (depth {})",
                self.rows, self.cols, self.k, other.rows, other.cols, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LexMatrix) -> Result<LexMatrix> {
        self.check(other, self.rows, "sum")?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("sum of matrices with different widths".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| boxplus(a, b)).collect();
        Ok(LexMatrix { data, ..self.clone() })
    }

    /// Product; output rows are computed in parallel, each row exactly as
    /// the sequential loop would.
    pub fn mul(&self, other: &LexMatrix) -> Result<LexMatrix> {
        self.check(other, self.cols, "product")?;
        let (k, cols) = (self.k, other.cols);
        let mut data = vec![LexWeight::Zero; self.rows * cols];
        data.par_chunks_mut(cols.max(1)).enumerate().for_each(|(i, row)| {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = LexWeight::Zero;
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    if *a == LexWeight::Zero {
                        continue;
                    }
                    let p = boxtimes(a, other.get(l, j), k);
                    if p < acc {
                        acc = p;
                    }
                }
                *out = acc;
            }
        });
        Ok(LexMatrix { rows: self.rows, cols, k, data })
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(())
    }

    /// `A^p` for `p >= 1`.
    pub fn pow(&self, p: usize) -> Result<LexMatrix> {
        self.require_square()?;
        let mut out = self.clone();
        for _ in 1..p {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `A* = E ⊞ A ⊞ A² ⊞ …`, by squaring `E ⊞ A` until the exponent
    /// covers every elementary path.
    pub fn closure(&self) -> Result<LexMatrix> {
        self.require_square()?;
        let mut m = LexMatrix::unit(self.rows, self.k).add(self)?;
        let mut reach = 1;
        while reach + 1 < self.rows {
            m = m.mul(&m)?;
            reach *= 2;
        }
        Ok(m)
    }
}

/// `a_ij = [e_ij]` on edges, `Zero` elsewhere (diagonal included).
pub fn incidence_matrix(g: &WeightedGraph, k: usize) -> Result<LexMatrix> {
    let e = g.require_edge_weights()?;
    let n = g.node_count();
    if n > MAX_DENSE {
        return Err(Error::MatrixTooLarge { size: n, max: MAX_DENSE });
    }
    let mut a = LexMatrix::zero(n, n, k);
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let s = nap_weight(&[e[id]], k);
        a.set(u, v, s.clone());
        a.set(v, u, s);
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Closure,
    Jacobi,
    GaussSeidel,
    Jordan,
    Gondran,
}

/// Smallest solution of `Y = A ⊠ Y ⊞ B`, i.e. `A* ⊠ B`.
pub fn linear_solve(a: &LexMatrix, b: &LexMatrix, method: Solver) -> Result<LexMatrix> {
    a.require_square()?;
    if a.rows != b.rows || a.k != b.k {
        return Err(Error::DimensionMismatch(format!("A is {0}x{0}, B has {1} rows", a.rows, b.rows)));
    }
    let (n, k) = (a.rows, a.k);
    match method {
        Solver::Closure => a.closure()?.mul(b),
        Solver::Jacobi => {
            let mut y = LexMatrix::zero(n, b.cols, k);
            loop {
                let next = a.mul(&y)?.add(b)?;
                if next == y {
                    return Ok(y);
                }
                y = next;
            }
        }
        Solver::GaussSeidel => {
            let mut y = LexMatrix::zero(n, b.cols, k);
            loop {
                let mut changed = false;
                for i in 0..n {
                    for c in 0..b.cols {
                        let mut acc = b.get(i, c).clone();
                        for j in 0..n {
                            acc = boxplus(&acc, &boxtimes(a.get(i, j), y.get(j, c), k));
                        }
                        if acc != *y.get(i, c) {
                            y.set(i, c, acc);
                            changed = true;
                        }
                    }
                }
                if !changed {
                    return Ok(y);
                }
            }
        }
        Solver::Jordan => {
            let mut c = a.clone();
            for p in 0..n {
                for i in 0..n {
                    let cip = c.get(i, p).clone();
                    if cip == LexWeight::Zero {
                        continue;
                    }
                    for j in 0..n {
                        let v = boxplus(c.get(i, j), &boxtimes(&cip, c.get(p, j), k));
                        c.set(i, j, v);
                    }
                }
            }
            LexMatrix::unit(n, k).add(&c)?.mul(b)
        }
        Solver::Gondran => {
            let mut y = LexMatrix::zero(n, b.cols, k);
            for col in 0..b.cols {
                let mut est = b.column(col);
                let mut open = vec![true; n];
                for _ in 0..n {
                    let i0 = (0..n).filter(|&i| open[i]).min_by(|&x, &z| est[x].cmp(&est[z])).unwrap();
                    open[i0] = false;
                    for i in (0..n).filter(|&i| open[i]) {
                        est[i] = boxplus(&est[i], &boxtimes(a.get(i, i0), &est[i0], k));
                    }
                }
                for (i, v) in est.into_iter().enumerate() {
                    y.set(i, col, v);
                }
            }
            Ok(y)
        }
    }
}

/// Column with `Unit` on the rows of minimum nodes.
pub fn minima_column(g: &FloodingGraph, k: usize) -> Result<LexMatrix> {
    let minima = minima_of_flooding(g)?;
    let n = g.graph().node_count();
    let mut b = LexMatrix::zero(n, 1, k);
    for i in (0..n).filter(|&i| minima.get(i) != Label::Unset) {
        b.set(i, 0, LexWeight::Unit);
    }
    Ok(b)
}

/// Depth-k distance of every node to the set of minima.
pub fn distances_to_minima(g: &FloodingGraph, k: usize, method: Solver) -> Result<Vec<LexWeight>> {
    let a = incidence_matrix(g.graph(), k)?;
    Ok(linear_solve(&a, &minima_column(g, k)?, method)?.column(0))
}
