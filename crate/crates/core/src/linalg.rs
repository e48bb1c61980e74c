//! Exact linear algebra over Q(i): incremental row reduction and span
//! membership with coordinate tracking.
//!
//! Rows are sparse vectors sorted by column index. The pivot rule is fixed
//! (leftmost column, first row inserted wins), so results are deterministic.

use crate::gauss::GaussRat;

/// A sparse vector: strictly increasing column indices with nonzero entries.
pub type SparseVec = Vec<(usize, GaussRat)>;

pub fn sparse_from_dense(v: &[GaussRat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// r -= c * s, keeping the sparse invariant.
fn axpy(r: &SparseVec, c: &GaussRat, s: &SparseVec) -> SparseVec {
    let mut out = SparseVec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        match (r.get(i), s.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi.clone() - c * vj;
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                out.push((*cj, -(c * vj)));
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                out.push((*cj, -(c * vj)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale_vec(v: &SparseVec, c: &GaussRat) -> SparseVec {
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Incremental exact row-echelon solver. Each inserted vector is either
/// absorbed into the span (reporting its coordinates in the previously
/// inserted independent vectors) or becomes a new pivot row.
pub struct SpanSolver {
    /// Echelon rows, each with a distinct leading column, scaled to lead 1.
    rows: Vec<SparseVec>,
    /// rows[k] = sum_j transform[k][j] * inserted independent vector j.
    transform: Vec<Vec<GaussRat>>,
    /// Indices (into the insertion sequence) of the independent vectors.
    pivots_of: Vec<usize>,
    inserted: usize,
}

pub enum InsertOutcome {
    /// Vector was dependent; coordinates in the independent vectors so far.
    InSpan(Vec<GaussRat>),
    /// Vector extended the span; its rank position.
    NewPivot(usize),
}

impl Default for SpanSolver {
    fn default() -> Self {
        Self::new()
    }
}

impl SpanSolver {
    pub fn new() -> Self {
        SpanSolver {
            rows: Vec::new(),
            transform: Vec::new(),
            pivots_of: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Independent-vector indices (into the insertion order).
    pub fn pivot_indices(&self) -> &[usize] {
        &self.pivots_of
    }

    /// Reduce v against the echelon rows; returns the residual and the
    /// coefficients used (combination of echelon rows subtracted).
    fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<GaussRat>) {
        let mut v = v.clone();
        let mut used = vec![GaussRat::zero(); self.rows.len()];
        loop {
            let lead = match v.first() {
                Some((c, _)) => *c,
                None => break,
            };
            let row = self
                .rows
                .iter()
                .position(|r| r.first().map(|(c, _)| *c) == Some(lead));
            match row {
                Some(k) => {
                    let c = v[0].1.clone();
                    v = axpy(&v, &c, &self.rows[k]);
                    used[k] = used[k].clone() + c;
                }
                None => {
                    // No pivot in this column: the vector is independent as
                    // soon as its leading entry survives, but keep clearing
                    // later columns is unnecessary for membership tests.
                    break;
                }
            }
        }
        (v, used)
    }

    pub fn insert(&mut self, v: &SparseVec) -> InsertOutcome {
        let (res, used) = self.reduce(v);
        self.inserted += 1;
        if res.is_empty() {
            // coordinates in independent vectors: v = sum used[k] rows[k],
            // rows[k] = sum transform[k][j] basis[j]
            let nb = self.pivots_of.len();
            let mut coords = vec![GaussRat::zero(); nb];
            for (k, c) in used.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, t) in self.transform[k].iter().enumerate() {
                    coords[j] = coords[j].clone() + c * t;
                }
            }
            return InsertOutcome::InSpan(coords);
        }
        // new pivot: row = (v - sum used rows) / lead; express in basis
        let lead = res[0].1.clone();
        let inv = lead.inv();
        let row = scale_vec(&res, &inv);
        let nb = self.pivots_of.len();
        let mut t = vec![GaussRat::zero(); nb + 1];
        t[nb] = inv.clone();
        for (k, c) in used.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, tk) in self.transform[k].iter().enumerate() {
                t[j] = t[j].clone() - &(&inv * c) * tk;
            }
        }
        self.rows.push(row);
        self.transform.push(t);
        for tr in &mut self.transform {
            while tr.len() < nb + 1 {
                tr.push(GaussRat::zero());
            }
        }
        self.pivots_of.push(self.inserted - 1);
        InsertOutcome::NewPivot(self.rows.len() - 1)
    }

    /// Coordinates of v in the independent vectors, or None if outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<GaussRat>> {
        let (res, used) = self.reduce(v);
        if !res.is_empty() {
            return None;
        }
        let nb = self.pivots_of.len();
        let mut coords = vec![GaussRat::zero(); nb];
        for (k, c) in used.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, t) in self.transform[k].iter().enumerate() {
                coords[j] = coords[j].clone() + c * t;
            }
        }
        Some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Nullspace basis of the matrix with the given dense rows (each of width
/// `ncols`): reduced row echelon form, then one basis vector per free
/// column. Deterministic and exact.
pub fn kernel(rows: &[Vec<GaussRat>], ncols: usize) -> Vec<Vec<GaussRat>> {
    let mut mat: Vec<Vec<GaussRat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            r.clone()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].inv();
        for x in &mut mat[rank] {
            *x = &*x * &inv;
        }
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let c = mat[r][col].clone();
                for j in 0..ncols {
                    let s = &c * &mat[rank][j];
                    mat[r][j] = mat[r][j].clone() - s;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![GaussRat::zero(); ncols];
        v[free] = GaussRat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -mat[r][free].clone();
        }
        basis.push(v);
    }
    basis
}
