//! Modular flats, supersolvability, and the partition induced by a maximal
//! modular chain.

use std::collections::HashMap;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::lattice::Flat;
use crate::linalg::Echelon;
use crate::partition::Partition;

/// A maximal chain `V = X_0 < X_1 < ... < X_r = center` of modular flats,
/// stored as flat ids into the arrangement's lattice.
#[derive(Clone, Debug)]
pub struct ModularChain {
    flat_ids: Vec<usize>,
}

impl ModularChain {
    pub fn flat_ids(&self) -> &[usize] {
        &self.flat_ids
    }

    pub fn len(&self) -> usize {
        self.flat_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flat_ids.is_empty()
    }
}

/// Is `X + Y` a flat for every flat `Y`?
///
/// The sum is compared against the meet of `X` and `Y` in the lattice (the
/// flat on the intersection of their closed sets): `X + Y` is itself a flat
/// exactly when the codimensions agree, i.e. when
/// `r(X) + r(Y) = r(X meet Y) + r(X join Y)`.
pub fn is_modular(arr: &Arrangement, flat: &Flat) -> Result<bool> {
    arr.validate_flat(flat)?;
    let lat = arr.lattice();
    let rx = flat.rank();
    let closed_x = flat.closed_set();
    let ech_x =
        Echelon::from_reduced_rows(arr.field().clone(), arr.dim(), flat.equations().to_vec());
    for fy in lat.flats() {
        let closed_y = fy.closed_set();
        if closed_x.is_subset(closed_y) || closed_y.is_subset(closed_x) {
            continue;
        }
        let meet = lat
            .find(&closed_x.intersection(closed_y))
            .expect("closed sets are closed under intersection");
        let meet_rank = lat.flat(meet).rank();
        let mut ech = ech_x.clone();
        for g in closed_y.difference(closed_x).iter() {
            ech.insert(arr.normal(g));
        }
        if rx + fy.rank() != meet_rank + ech.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches depth-first for a maximal chain of modular flats, ascending
/// from the ambient space and breaking ties by the flats' sorted order.
/// Returns the first chain found, or `None`.
pub fn supersolvable(arr: &Arrangement) -> Option<ModularChain> {
    let lat = arr.lattice();
    let top_rank = lat.rank();
    let mut modular_cache: HashMap<usize, bool> = HashMap::new();
    let mut dead: Vec<bool> = vec![false; lat.num_flats()];

    fn dfs(
        arr: &Arrangement,
        current: usize,
        rank: usize,
        top_rank: usize,
        modular_cache: &mut HashMap<usize, bool>,
        dead: &mut Vec<bool>,
    ) -> Option<Vec<usize>> {
        let lat = arr.lattice();
        if rank == top_rank {
            return Some(vec![current]);
        }
        for cand in lat.ids_of_rank(rank + 1) {
            if dead[cand] || !lat.leq(current, cand) {
                continue;
            }
            let ok = *modular_cache.entry(cand).or_insert_with(|| {
                is_modular(arr, lat.flat(cand)).expect("lattice flats are valid")
            });
            if !ok {
                dead[cand] = true;
                continue;
            }
            if let Some(mut chain) = dfs(arr, cand, rank + 1, top_rank, modular_cache, dead) {
                chain.push(current);
                return Some(chain);
            }
            dead[cand] = true;
        }
        None
    }

    let mut chain = dfs(arr, 0, 0, top_rank, &mut modular_cache, &mut dead)?;
    chain.reverse();
    Some(ModularChain { flat_ids: chain })
}

/// The partition whose i-th part collects the hyperplanes entering the
/// chain at step i: `A_{X_i} \ A_{X_(i-1)}`. For a modular chain this is a
/// nice partition; that theorem is re-checked by callers, not assumed here.
pub fn chain_partition(arr: &Arrangement, chain: &ModularChain) -> Result<Partition> {
    let lat = arr.lattice();
    let r = lat.rank();
    if chain.flat_ids.len() != r + 1 {
        return Err(Error::InvalidChain(format!(
            "chain has {} flats, expected {}",
            chain.flat_ids.len(),
            r + 1
        )));
    }
    for (i, &id) in chain.flat_ids.iter().enumerate() {
        if id >= lat.num_flats() {
            return Err(Error::InvalidChain(format!("flat id {id} out of range")));
        }
        let f = lat.flat(id);
        if f.rank() != i {
            return Err(Error::InvalidChain(format!(
                "flat at position {i} has rank {}",
                f.rank()
            )));
        }
        if i > 0 && !lat.leq(chain.flat_ids[i - 1], id) {
            return Err(Error::InvalidChain("chain is not increasing".into()));
        }
        if !is_modular(arr, f)? {
            return Err(Error::InvalidChain(format!(
                "flat at position {i} is not modular"
            )));
        }
    }
    if *chain.flat_ids.last().unwrap() != lat.top_id() {
        return Err(Error::InvalidChain(
            "chain does not end at the center".into(),
        ));
    }
    let mut parts: Vec<IndexSet> = Vec::with_capacity(r);
    for i in 1..=r {
        let hi = lat.flat(chain.flat_ids[i]).closed_set();
        let lo = lat.flat(chain.flat_ids[i - 1]).closed_set();
        parts.push(hi.difference(lo));
    }
    Partition::from_index_sets(arr.len(), parts)
}
