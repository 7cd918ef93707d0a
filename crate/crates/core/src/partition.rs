//! Factored (nice) partitions: verification, induced partitions, the
//! consequence checks for factorizations, and the pruned backtracking
//! search.
//!
//! A partition is nice when it is independent (every transversal of the
//! parts is linearly independent) and every proper localization's induced
//! partition has a singleton block. The search fixes part sizes from the
//! Poincaré factorization, iterates singleton choices, and propagates the
//! rank-2 constraint "exactly two parts meet every rank-2 localization"
//! through a union-find before backtracking over the remaining blocks.

use std::collections::HashSet;
use std::fmt;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::lattice::Flat;
use crate::linalg::Echelon;
use crate::poly::Polynomial;
use crate::SearchLimits;

/// Disjoint nonempty parts covering the hyperplane index set `0..n`.
///
/// Part order is significant only as a convention: searches put the
/// distinguished singleton part first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    n: usize,
    parts: Vec<IndexSet>,
}

impl Partition {
    pub fn from_index_sets(n: usize, parts: Vec<IndexSet>) -> Result<Partition> {
        let mut seen = IndexSet::new();
        let mut total = 0;
        for p in &parts {
            if p.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            if let Some(i) = p.iter().find(|&i| i >= n) {
                return Err(Error::InvalidPartition(format!(
                    "index {i} out of range for {n} hyperplanes"
                )));
            }
            if !p.intersection(&seen).is_empty() {
                return Err(Error::InvalidPartition("parts overlap".into()));
            }
            seen.union_with(p);
            total += p.len();
        }
        if total != n {
            return Err(Error::InvalidPartition(format!(
                "parts cover {total} of {n} hyperplanes"
            )));
        }
        Ok(Partition { n, parts })
    }

    pub fn from_parts<I, J>(n: usize, parts: I) -> Result<Partition>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let sets = parts.into_iter().map(IndexSet::from_indices).collect();
        Partition::from_index_sets(n, sets)
    }

    pub fn empty() -> Partition {
        Partition {
            n: 0,
            parts: Vec::new(),
        }
    }

    /// Number of hyperplanes partitioned.
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[IndexSet] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, i: usize) -> &IndexSet {
        &self.parts[i]
    }

    pub fn part_of(&self, index: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(index))
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    pub fn part_sizes_sorted(&self) -> Vec<usize> {
        let mut v = self.part_sizes();
        v.sort_unstable();
        v
    }

    /// Parts as sorted index lists, parts ordered by smallest element;
    /// identifies partitions regardless of part order.
    pub fn canonical_parts(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = self.parts.iter().map(|p| p.to_vec()).collect();
        parts.sort();
        parts
    }

    /// Parses the textual syntax `0; 3 5 7 8; 1 2 4 6 9`. Blank input is
    /// the empty partition (valid only for the empty arrangement).
    pub fn parse(text: &str, n: usize) -> Result<Partition> {
        if text.trim().is_empty() {
            return Partition::from_parts(n, Vec::<Vec<usize>>::new());
        }
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for chunk in text.split(';') {
            let indices: Vec<usize> = chunk
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidPartition(format!("bad index `{t}`")))
                })
                .collect::<Result<_>>()?;
            if indices.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            parts.push(indices);
        }
        Partition::from_parts(n, parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first_part = true;
        for p in &self.parts {
            if !first_part {
                write!(f, "; ")?;
            }
            first_part = false;
            let mut first = true;
            for i in p.iter() {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Outcome of the full niceness check.
#[derive(Clone, Debug)]
pub struct NiceReport {
    pub independent: bool,
    /// Closed sets of the flats whose induced partition has no singleton
    /// block.
    pub singleton_failures: Vec<IndexSet>,
    /// Does the Poincaré polynomial equal the product of `1 + |part| t`?
    pub poincare_factored: bool,
    pub part_sizes: Vec<usize>,
}

impl NiceReport {
    pub fn is_nice(&self) -> bool {
        self.independent && self.singleton_failures.is_empty()
    }
}

fn check_partition(arr: &Arrangement, pi: &Partition) -> Result<()> {
    if pi.ground_size() != arr.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} hyperplanes, arrangement has {}",
            pi.ground_size(),
            arr.len()
        )));
    }
    Ok(())
}

/// Is every transversal (one hyperplane per part) linearly independent?
/// Depth-first over parts with an incremental echelon; a dependent prefix
/// aborts the whole branch.
pub fn is_independent(arr: &Arrangement, pi: &Partition) -> Result<bool> {
    check_partition(arr, pi)?;

    fn rec(arr: &Arrangement, parts: &[IndexSet], ech: &Echelon) -> bool {
        let Some((part, rest)) = parts.split_first() else {
            return true;
        };
        for h in part.iter() {
            let mut next = ech.clone();
            if !next.insert(arr.normal(h)) {
                return false;
            }
            if !rec(arr, rest, &next) {
                return false;
            }
        }
        true
    }

    let ech = Echelon::new(arr.field().clone(), arr.dim());
    Ok(rec(arr, pi.parts(), &ech))
}

/// The induced partition of the localization at `flat`: nonempty
/// intersections of the parts with the closed set, re-indexed to the
/// localized arrangement (closed set in ascending order), part order
/// preserved.
pub fn induced_partition(arr: &Arrangement, pi: &Partition, flat: &Flat) -> Result<Partition> {
    check_partition(arr, pi)?;
    arr.validate_flat(flat)?;
    let members: Vec<usize> = flat.closed_set().to_vec();
    let local: std::collections::HashMap<usize, usize> = members
        .iter()
        .enumerate()
        .map(|(local, &global)| (global, local))
        .collect();
    let mut parts = Vec::new();
    for p in pi.parts() {
        let inter: Vec<usize> = p.iter().filter_map(|g| local.get(&g).copied()).collect();
        if !inter.is_empty() {
            parts.push(IndexSet::from_indices(inter));
        }
    }
    Partition::from_index_sets(members.len(), parts)
}

/// Full definitional check of niceness, reporting every failure.
pub fn is_nice(arr: &Arrangement, pi: &Partition) -> Result<NiceReport> {
    check_partition(arr, pi)?;
    let independent = is_independent(arr, pi)?;
    let lat = arr.lattice();
    let mut singleton_failures = Vec::new();
    for f in lat.flats() {
        if f.rank() == 0 {
            continue;
        }
        let has_singleton = pi
            .parts()
            .iter()
            .any(|p| p.intersection(f.closed_set()).len() == 1);
        if !has_singleton {
            singleton_failures.push(f.closed_set().clone());
        }
    }
    let mut product = Polynomial::one();
    for p in pi.parts() {
        product = product.mul(&Polynomial::one_plus(p.len() as i64));
    }
    let poincare_factored = product == lat.poincare();
    Ok(NiceReport {
        independent,
        singleton_failures,
        poincare_factored,
        part_sizes: pi.part_sizes_sorted(),
    })
}

/// Consequences that hold for every factorization: part count equals the
/// rank, the Poincaré polynomial splits over the part sizes, and every
/// flat meets exactly `r(X)` parts. These are theorems, so a failure on a
/// verified nice partition signals a bug in this crate, not bad input.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub rank: usize,
    pub poincare: Polynomial,
    pub part_sizes: Vec<usize>,
    pub flats_checked: usize,
}

pub fn factorization_report(arr: &Arrangement, pi: &Partition) -> Result<FactorizationReport> {
    let report = is_nice(arr, pi)?;
    if !report.is_nice() {
        return Err(Error::InvalidPartition(
            "partition is not a factorization".into(),
        ));
    }
    let lat = arr.lattice();
    let rank = lat.rank();
    if pi.num_parts() != rank {
        return Err(Error::Inconsistency(format!(
            "nice partition with {} parts on a rank-{rank} arrangement",
            pi.num_parts()
        )));
    }
    let mut product = Polynomial::one();
    for p in pi.parts() {
        product = product.mul(&Polynomial::one_plus(p.len() as i64));
    }
    let poincare = lat.poincare();
    if product != poincare {
        return Err(Error::Inconsistency(format!(
            "Poincaré polynomial {poincare} differs from part-size product {product}"
        )));
    }
    for f in lat.flats() {
        let meeting = pi
            .parts()
            .iter()
            .filter(|p| !p.intersection(f.closed_set()).is_empty())
            .count();
        if meeting != f.rank() {
            return Err(Error::Inconsistency(format!(
                "flat {:?} of rank {} meets {meeting} parts",
                f.closed_set(),
                f.rank()
            )));
        }
    }
    Ok(FactorizationReport {
        rank,
        poincare,
        part_sizes: pi.part_sizes_sorted(),
        flats_checked: lat.num_flats(),
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
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

/// Enumerates every nice partition in a fixed deterministic order, calling
/// `visit` for each; stop early by returning `false` from the callback.
///
/// The search is exhaustive over nice partitions: the prunes (Poincaré
/// splitting with fixed part sizes, existence of a singleton part, and the
/// two-parts-per-rank-2-flat constraint) are consequences every nice
/// partition satisfies. This is the enumeration hook the factorization
/// search builds on.
pub fn enumerate_nice_partitions(
    arr: &Arrangement,
    limits: &SearchLimits,
    visit: &mut dyn FnMut(Partition) -> bool,
) -> Result<()> {
    let n = arr.len();
    limits.check(arr)?;
    if n == 0 {
        visit(Partition::empty());
        return Ok(());
    }
    let Some(exps) = arr.exponent_candidates() else {
        return Ok(());
    };
    let sizes: Vec<usize> = exps.into_iter().filter(|&e| e > 0).collect();
    if !sizes.contains(&1) {
        return Ok(());
    }
    let lat = arr.lattice();
    let rank2: Vec<IndexSet> = lat
        .flats_of_rank(2)
        .iter()
        .map(|f| f.closed_set().clone())
        .collect();

    let mut emitted: HashSet<Vec<Vec<usize>>> = HashSet::new();

    'singletons: for h in 0..n {
        // Rank-2 flats through the singleton force their remaining
        // hyperplanes into a single common part.
        let mut uf = UnionFind::new(n);
        for x in rank2.iter().filter(|x| x.contains(h)) {
            let mut others = x.iter().filter(|&g| g != h);
            let first = others.next().expect("rank-2 flats have >= 2 members");
            for g in others {
                uf.union(first, g);
            }
        }
        let mut block_ids = vec![usize::MAX; n];
        let mut blocks: Vec<IndexSet> = Vec::new();
        for g in 0..n {
            if g == h {
                continue;
            }
            let rep = uf.find(g);
            if block_ids[rep] == usize::MAX {
                block_ids[rep] = blocks.len();
                blocks.push(IndexSet::new());
            }
            blocks[block_ids[rep]].insert(g);
        }

        // Remaining part capacities: the size multiset minus the singleton.
        let mut caps = sizes.clone();
        let one = caps.iter().position(|&c| c == 1).unwrap();
        caps.remove(one);
        caps.sort_unstable_by(|a, b| b.cmp(a));
        let nslots = caps.len();

        if blocks
            .iter()
            .any(|b| b.len() > caps.first().copied().unwrap_or(0))
        {
            continue 'singletons;
        }

        // Rank-2 flats avoiding the singleton must meet exactly two parts.
        let constraints: Vec<IndexSet> = rank2.iter().filter(|x| !x.contains(h)).cloned().collect();
        let block_cons: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                constraints
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !b.intersection(x).is_empty())
                    .map(|(ci, _)| ci)
                    .collect()
            })
            .collect();
        let mut blocks_left: Vec<usize> = vec![0; constraints.len()];
        for bc in &block_cons {
            for &ci in bc {
                blocks_left[ci] += 1;
            }
        }
        // A rank-2 flat served by a single block can never see two parts.
        if blocks_left.contains(&1) {
            continue 'singletons;
        }

        struct Dfs<'a> {
            blocks: &'a [IndexSet],
            caps: &'a [usize],
            block_cons: &'a [Vec<usize>],
        }
        struct State {
            used: Vec<usize>,
            slot_of: Vec<usize>,
            // per constraint: distinct slots seen (at most 2) and
            // unassigned blocks remaining
            seen: Vec<[usize; 2]>,
            seen_cnt: Vec<u8>,
            left: Vec<usize>,
        }

        fn dfs(d: &Dfs, st: &mut State, b: usize, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if b == d.blocks.len() {
                return out(&st.slot_of);
            }
            let size = d.blocks[b].len();
            for j in 0..d.caps.len() {
                if st.used[j] + size > d.caps[j] {
                    continue;
                }
                // Identical empty slots are interchangeable.
                if st.used[j] == 0 && (0..j).any(|i| st.used[i] == 0 && d.caps[i] == d.caps[j]) {
                    continue;
                }
                let mut feasible = true;
                for &ci in &d.block_cons[b] {
                    let cnt = st.seen_cnt[ci] as usize;
                    let hit = (0..cnt).any(|k| st.seen[ci][k] == j);
                    if !hit && cnt == 2 {
                        feasible = false;
                        break;
                    }
                    // Last block of a constraint may not leave it with a
                    // single part.
                    if st.left[ci] == 1 && cnt == 0 {
                        // after assigning, exactly one part would meet it
                        feasible = false;
                        break;
                    }
                    if st.left[ci] == 1 && cnt == 1 && hit {
                        feasible = false;
                        break;
                    }
                }
                if !feasible {
                    continue;
                }
                // apply
                st.used[j] += size;
                st.slot_of[b] = j;
                let mut touched = Vec::new();
                for &ci in &d.block_cons[b] {
                    st.left[ci] -= 1;
                    let cnt = st.seen_cnt[ci] as usize;
                    if !(0..cnt).any(|k| st.seen[ci][k] == j) {
                        st.seen[ci][cnt] = j;
                        st.seen_cnt[ci] += 1;
                        touched.push(ci);
                    }
                }
                let stop = dfs(d, st, b + 1, out);
                for &ci in &d.block_cons[b] {
                    st.left[ci] += 1;
                }
                for ci in touched {
                    st.seen_cnt[ci] -= 1;
                }
                st.used[j] -= size;
                if stop {
                    return true;
                }
            }
            false
        }

        let d = Dfs {
            blocks: &blocks,
            caps: &caps,
            block_cons: &block_cons,
        };
        let mut st = State {
            used: vec![0; nslots],
            slot_of: vec![usize::MAX; blocks.len()],
            seen: vec![[usize::MAX; 2]; constraints.len()],
            seen_cnt: vec![0; constraints.len()],
            left: blocks_left.clone(),
        };
        let mut stop_all = false;
        dfs(&d, &mut st, 0, &mut |slot_of| {
            let mut parts = vec![IndexSet::new(); nslots];
            for (b, &j) in slot_of.iter().enumerate() {
                parts[j].union_with(&blocks[b]);
            }
            let mut all = Vec::with_capacity(nslots + 1);
            all.push(IndexSet::from_indices([h]));
            all.extend(parts);
            let candidate =
                Partition::from_index_sets(n, all).expect("assignment produces a valid partition");
            let report = is_nice(arr, &candidate).expect("partition matches arrangement");
            if report.is_nice() && emitted.insert(candidate.canonical_parts()) && !visit(candidate)
            {
                stop_all = true;
                return true;
            }
            false
        });
        if stop_all {
            return Ok(());
        }
    }
    Ok(())
}

/// Finds a nice partition, or proves there is none.
///
/// `None` is a proof: when the Poincaré polynomial does not split over the
/// nonnegative integers no factorization can exist, and otherwise the
/// enumeration is exhaustive. The first partition in the fixed enumeration
/// order (singleton candidates by index, then block assignments
/// lexicographically) is returned.
pub fn nice_search(arr: &Arrangement, limits: &SearchLimits) -> Result<Option<Partition>> {
    let mut found = None;
    enumerate_nice_partitions(arr, limits, &mut |pi| {
        found = Some(pi);
        false
    })?;
    Ok(found)
}

/// Report of running `nice_search` on every restriction.
#[derive(Clone, Debug)]
pub struct HereditaryNiceReport {
    /// Per flat, in lattice order: the flat's closed set and a nice
    /// partition of the restriction if one exists.
    pub results: Vec<(IndexSet, Option<Partition>)>,
}

impl HereditaryNiceReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, p)| p.is_some())
    }

    pub fn first_failure(&self) -> Option<&IndexSet> {
        self.results
            .iter()
            .find(|(_, p)| p.is_none())
            .map(|(c, _)| c)
    }
}

/// Is every restriction of the arrangement nice?
pub fn hereditarily_nice(arr: &Arrangement, limits: &SearchLimits) -> Result<HereditaryNiceReport> {
    let lat = arr.lattice().clone();
    let mut results = Vec::with_capacity(lat.num_flats());
    for f in lat.flats() {
        let restricted = arr.restriction(f)?;
        let found = nice_search(&restricted, limits)?;
        results.push((f.closed_set().clone(), found));
    }
    Ok(HereditaryNiceReport { results })
}
