#![allow(dead_code)]

//! Independent brute-force oracles for the acceptance suite.
//!
//! These deliberately avoid every pruning idea the production searches
//! use: niceness is decided by trying all set partitions against the
//! definitional check, and membership in the inductively factored class by
//! the raw recursion over all partitions and all distinguished
//! hyperplanes, memoized only for speed.

use std::collections::HashMap;

use arrfac::induction::restriction_map;
use arrfac::partition::{is_nice, Partition};
use arrfac::{Arrangement, IndexSet};

/// All set partitions of `{0..n-1}`.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for elem in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(elem);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![elem]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Does any partition satisfy the definitional niceness check?
pub fn exhaustive_nice_exists(arr: &Arrangement) -> bool {
    for parts in set_partitions(arr.len()) {
        let pi = Partition::from_parts(arr.len(), parts).expect("set partition is valid");
        if is_nice(arr, &pi).expect("matching sizes").is_nice() {
            return true;
        }
    }
    false
}

#[derive(Default)]
pub struct IfacOracle {
    pair_memo: HashMap<String, bool>,
    arr_memo: HashMap<String, bool>,
}

fn sorted_normal_strings(arr: &Arrangement) -> (Vec<String>, Vec<usize>) {
    let mut tagged: Vec<(String, usize)> = arr
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, h)| (h.to_string(), i))
        .collect();
    tagged.sort();
    let mut position = vec![0usize; arr.len()];
    for (pos, (_, orig)) in tagged.iter().enumerate() {
        position[*orig] = pos;
    }
    (tagged.into_iter().map(|(s, _)| s).collect(), position)
}

fn arr_string(arr: &Arrangement) -> String {
    let (normals, _) = sorted_normal_strings(arr);
    format!(
        "r{};d{};{}",
        arr.field().conductor(),
        arr.dim(),
        normals.join("|")
    )
}

fn pair_string(arr: &Arrangement, pi: &Partition) -> String {
    let (_, position) = sorted_normal_strings(arr);
    let mut parts: Vec<Vec<usize>> = pi
        .parts()
        .iter()
        .map(|p| {
            let mut v: Vec<usize> = p.iter().map(|i| position[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    parts.sort();
    format!("{};{parts:?}", arr_string(arr))
}

impl IfacOracle {
    /// Raw recursion: a pair belongs to the class when some hyperplane
    /// admits a bijective restriction map and both the deletion pair and
    /// the restriction pair belong to the class.
    pub fn pair(&mut self, arr: &Arrangement, pi: &Partition) -> bool {
        if arr.is_empty() {
            return true;
        }
        let key = pair_string(arr, pi);
        if let Some(&hit) = self.pair_memo.get(&key) {
            return hit;
        }
        let mut ok = false;
        for h0 in 0..arr.len() {
            let rmap = restriction_map(arr, pi, h0).expect("valid inputs");
            if !rmap.bijective {
                continue;
            }
            let restricted_pi = rmap.induced_partition().expect("bijective");
            let deleted = arr.deletion(h0).unwrap();
            let deleted_pi = {
                let parts: Vec<IndexSet> = pi
                    .parts()
                    .iter()
                    .filter_map(|p| {
                        let v: Vec<usize> = p
                            .iter()
                            .filter(|&g| g != h0)
                            .map(|g| if g > h0 { g - 1 } else { g })
                            .collect();
                        if v.is_empty() {
                            None
                        } else {
                            Some(IndexSet::from_indices(v))
                        }
                    })
                    .collect();
                Partition::from_index_sets(deleted.len(), parts).unwrap()
            };
            if self.pair(&deleted, &deleted_pi) && self.pair(&rmap.restricted, &restricted_pi) {
                ok = true;
                break;
            }
        }
        self.pair_memo.insert(key, ok);
        ok
    }

    /// Does any partition make the arrangement inductively factored?
    pub fn exists(&mut self, arr: &Arrangement) -> bool {
        if arr.is_empty() {
            return true;
        }
        let key = arr_string(arr);
        if let Some(&hit) = self.arr_memo.get(&key) {
            return hit;
        }
        let mut ok = false;
        for parts in set_partitions(arr.len()) {
            let pi = Partition::from_parts(arr.len(), parts).unwrap();
            if self.pair(arr, &pi) {
                ok = true;
                break;
            }
        }
        self.arr_memo.insert(key, ok);
        ok
    }
}

/// Independent lattice oracle: enumerate the closures of *all* subsets of
/// hyperplanes, using only `subset_rank`. Exponential; small inputs only.
pub fn all_subset_closures(arr: &Arrangement) -> Vec<Vec<usize>> {
    let n = arr.len();
    assert!(n <= 12, "oracle is exponential");
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let rank = arr.subset_rank(&subset).unwrap();
        let closure: Vec<usize> = (0..n)
            .filter(|&h| {
                let mut with: Vec<usize> = subset.clone();
                with.push(h);
                arr.subset_rank(&with).unwrap() == rank
            })
            .collect();
        seen.insert(closure);
    }
    seen.into_iter().collect()
}
