//! Exact row reduction over a fixed cyclotomic field.
//!
//! `Echelon` keeps a matrix in reduced row echelon form (pivot entries 1,
//! pivot columns cleared everywhere else, pivots in increasing column
//! order). The form is canonical for the row space, which lets flats share
//! one representation of their defining equations regardless of the order
//! in which normals were fed in.

use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Rebuilds an echelon from rows already known to be in reduced form.
    pub fn from_reduced_rows(field: FieldSpec, ncols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).expect("zero row"))
            .collect();
        Echelon {
            field,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn with_rows<'a, I>(field: FieldSpec, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = &'a [Scalar]>,
    {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.ncols);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (j, rj) in row.iter().enumerate() {
                if !rj.is_zero() {
                    out[j] = &out[j] - &(&c * rj);
                }
            }
        }
        out
    }

    /// Is `v` in the row span?
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Inserts a vector, keeping reduced form. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut res = self.reduce(v);
        let Some(p) = res.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = res[p].inverse().expect("nonzero pivot");
        for c in res.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        // Clear the new pivot column from the existing rows.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (j, rj) in res.iter().enumerate() {
                    if !rj.is_zero() {
                        row[j] = &row[j] - &(&c * rj);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, res);
        true
    }

    /// A basis of the null space `{x : R x = 0}`, one vector per free
    /// column in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (i, &p) in self.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if pivot_of_col[f].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.ncols];
            vec[f] = self.field.one();
            for (i, &p) in self.pivots.iter().enumerate() {
                vec[p] = -&self.rows[i][f];
            }
            basis.push(vec);
        }
        basis
    }
}

/// Rank of a list of covectors.
pub fn rank_of<'a, I>(field: &FieldSpec, ncols: usize, rows: I) -> usize
where
    I: IntoIterator<Item = &'a [Scalar]>,
{
    Echelon::with_rows(field.clone(), ncols, rows).rank()
}
