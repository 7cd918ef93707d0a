//! Intersection lattices.
//!
//! A flat is identified by its closed set of hyperplane indices: the set of
//! all hyperplanes containing the subspace. The lattice is enumerated by
//! breadth-first closure starting from the ambient space, which avoids the
//! 2^n subset blowup; correctness rests on closure idempotence (tested).
//! Flats are sorted by (rank, closed set) so every downstream report is
//! reproducible.

use std::collections::HashMap;
use std::ops::Range;

use crate::arrangement::Arrangement;
use crate::field::Scalar;
use crate::indexset::IndexSet;
use crate::linalg::Echelon;
use crate::poly::Polynomial;

/// An element of the intersection lattice.
#[derive(Clone, Debug)]
pub struct Flat {
    closed: IndexSet,
    rank: usize,
    equations: Vec<Vec<Scalar>>,
}

impl Flat {
    pub(crate) fn new(closed: IndexSet, rank: usize, equations: Vec<Vec<Scalar>>) -> Self {
        debug_assert_eq!(rank, equations.len());
        Flat {
            closed,
            rank,
            equations,
        }
    }

    /// Indices of all hyperplanes containing this subspace.
    pub fn closed_set(&self) -> &IndexSet {
        &self.closed
    }

    /// Codimension of the subspace.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-reduced covectors spanning the annihilator of the subspace.
    pub fn equations(&self) -> &[Vec<Scalar>] {
        &self.equations
    }

    pub fn is_ambient_space(&self) -> bool {
        self.rank == 0
    }
}

/// The full intersection lattice of an arrangement, ordered by reverse
/// inclusion of subspaces (equivalently inclusion of closed sets).
#[derive(Clone, Debug)]
pub struct Lattice {
    flats: Vec<Flat>,
    rank_ranges: Vec<Range<usize>>,
    index: HashMap<IndexSet, usize>,
    mobius: Vec<i64>,
}

impl Lattice {
    pub(crate) fn build(arr: &Arrangement) -> Lattice {
        let n = arr.len();
        let field = arr.field().clone();
        let dim = arr.dim();

        let mut flats = vec![Flat::new(IndexSet::new(), 0, Vec::new())];
        let mut seen: HashMap<IndexSet, usize> = HashMap::new();
        seen.insert(IndexSet::new(), 0);
        let mut frontier: Vec<usize> = vec![0];

        while !frontier.is_empty() {
            let mut next = Vec::new();
            for fid in frontier {
                let base_closed = flats[fid].closed.clone();
                let base_rank = flats[fid].rank;
                let base_rows = flats[fid].equations.clone();
                // `covered` collects every hyperplane already absorbed into
                // some cover of this flat; closures reached through two of
                // its members coincide, so each cover is computed once.
                let mut covered = base_closed.clone();
                for h in 0..n {
                    if covered.contains(h) {
                        continue;
                    }
                    let mut ech = Echelon::from_reduced_rows(field.clone(), dim, base_rows.clone());
                    let grew = ech.insert(arr.normal(h));
                    debug_assert!(grew, "hyperplane outside a closed set must raise rank");
                    let mut closed = base_closed.clone();
                    closed.insert(h);
                    for g in 0..n {
                        if !closed.contains(g) && ech.contains(arr.normal(g)) {
                            closed.insert(g);
                        }
                    }
                    covered.union_with(&closed);
                    if !seen.contains_key(&closed) {
                        let id = flats.len();
                        seen.insert(closed.clone(), id);
                        flats.push(Flat::new(closed, base_rank + 1, ech.into_rows()));
                        next.push(id);
                    }
                }
            }
            frontier = next;
        }

        flats.sort_by(|a, b| (a.rank, &a.closed).cmp(&(b.rank, &b.closed)));

        let top_rank = flats.last().map(|f| f.rank).unwrap_or(0);
        let mut rank_ranges = Vec::with_capacity(top_rank + 1);
        let mut start = 0;
        for r in 0..=top_rank {
            let end = flats.partition_point(|f| f.rank <= r);
            rank_ranges.push(start..end);
            start = end;
        }

        let index: HashMap<IndexSet, usize> = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.closed.clone(), i))
            .collect();

        // Möbius recursion over the order: mu(V, V) = 1 and the values on
        // each lower interval sum to zero.
        let mut mobius = vec![0i64; flats.len()];
        for x in 0..flats.len() {
            if flats[x].rank == 0 {
                mobius[x] = 1;
                continue;
            }
            let below = rank_ranges[flats[x].rank - 1].end;
            let mut sum = 0i64;
            for y in 0..below {
                if flats[y].closed.is_subset(&flats[x].closed) {
                    sum += mobius[y];
                }
            }
            mobius[x] = -sum;
        }

        Lattice {
            flats,
            rank_ranges,
            index,
            mobius,
        }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    /// Rank of the arrangement (rank of the center).
    pub fn rank(&self) -> usize {
        self.rank_ranges.len() - 1
    }

    pub fn top_id(&self) -> usize {
        self.flats.len() - 1
    }

    /// The center, i.e. the intersection of all hyperplanes.
    pub fn center(&self) -> &Flat {
        &self.flats[self.top_id()]
    }

    pub fn find(&self, closed: &IndexSet) -> Option<usize> {
        self.index.get(closed).copied()
    }

    pub fn mobius(&self, id: usize) -> i64 {
        self.mobius[id]
    }

    pub fn ids_of_rank(&self, r: usize) -> Range<usize> {
        self.rank_ranges.get(r).cloned().unwrap_or(0..0)
    }

    pub fn flats_of_rank(&self, r: usize) -> &[Flat] {
        &self.flats[self.ids_of_rank(r)]
    }

    pub fn rank_counts(&self) -> Vec<usize> {
        self.rank_ranges.iter().map(|r| r.len()).collect()
    }

    /// `a <= b` in the lattice order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.flats[a].closed.is_subset(&self.flats[b].closed)
    }

    /// Poincaré polynomial: sum over flats of |mu| t^rank.
    pub fn poincare(&self) -> Polynomial {
        let mut coeffs = vec![0i64; self.rank() + 1];
        for (i, f) in self.flats.iter().enumerate() {
            coeffs[f.rank] += self.mobius[i].abs();
        }
        Polynomial::from_coeffs(coeffs)
    }
}
