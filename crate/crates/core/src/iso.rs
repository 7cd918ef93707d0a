//! Lattice isomorphism between two arrangements, by backtracking over
//! hyperplane bijections.
//!
//! Intended for small instances (a couple of dozen hyperplanes). Cheap
//! invariants reject most non-isomorphic pairs outright: hyperplane count,
//! Poincaré polynomial, the multiset of rank-2 flat sizes, and the
//! per-hyperplane profile of rank-2 flat sizes through it. The search then
//! matches the rank-2 flats incrementally, and a complete candidate is
//! accepted only after every flat of one lattice maps onto a flat of the
//! other, rank for rank, which pins down a full lattice isomorphism.

use std::collections::HashMap;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::SearchLimits;

struct Side {
    n: usize,
    /// Rank-2 flats as closed sets.
    flats2: Vec<IndexSet>,
    /// Pair of hyperplanes -> id of the rank-2 flat through both.
    flat_of_pair: Vec<Vec<usize>>,
    /// Per hyperplane: sorted sizes of the rank-2 flats through it.
    signature: Vec<Vec<usize>>,
}

impl Side {
    fn build(arr: &Arrangement) -> Side {
        let n = arr.len();
        let lat = arr.lattice();
        let flats2: Vec<IndexSet> = lat
            .flats_of_rank(2)
            .iter()
            .map(|f| f.closed_set().clone())
            .collect();
        let mut flat_of_pair = vec![vec![usize::MAX; n]; n];
        for (id, x) in flats2.iter().enumerate() {
            let members = x.to_vec();
            for (ai, &a) in members.iter().enumerate() {
                for &b in &members[ai + 1..] {
                    flat_of_pair[a][b] = id;
                    flat_of_pair[b][a] = id;
                }
            }
        }
        let mut signature = vec![Vec::new(); n];
        for x in &flats2 {
            let size = x.len();
            for h in x.iter() {
                signature[h].push(size);
            }
        }
        for sig in &mut signature {
            sig.sort_unstable();
        }
        Side {
            n,
            flats2,
            flat_of_pair,
            signature,
        }
    }

    fn size_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.flats2.iter().map(|x| x.len()).collect();
        v.sort_unstable();
        v
    }
}

/// Searches for a bijection of hyperplanes inducing a lattice isomorphism.
/// Returns `perm` with `perm[i]` the image in `b` of hyperplane `i` of
/// `a`, or `None`. Deterministic: the first bijection in the fixed search
/// order is reported.
pub fn lattice_isomorphic(
    a: &Arrangement,
    b: &Arrangement,
    limits: &SearchLimits,
) -> Result<Option<Vec<usize>>> {
    if a.len() > limits.max_hyperplanes || b.len() > limits.max_hyperplanes {
        return Err(Error::SizeLimit(format!(
            "lattice isomorphism limited to {} hyperplanes",
            limits.max_hyperplanes
        )));
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    if a.lattice().rank_counts() != b.lattice().rank_counts() {
        return Ok(None);
    }
    if a.poincare_polynomial() != b.poincare_polynomial() {
        return Ok(None);
    }
    let sa = Side::build(a);
    let sb = Side::build(b);
    if sa.size_profile() != sb.size_profile() {
        return Ok(None);
    }
    {
        let mut siga = sa.signature.clone();
        let mut sigb = sb.signature.clone();
        siga.sort();
        sigb.sort();
        if siga != sigb {
            return Ok(None);
        }
    }

    let n = sa.n;
    // The identity is the canonical witness when the two lattices agree
    // index for index (in particular for an arrangement against itself).
    let identity: Vec<usize> = (0..n).collect();
    if full_lattice_check(a, b, &identity) {
        return Ok(Some(identity));
    }
    // Assign rarer signatures first.
    let mut freq: HashMap<&Vec<usize>, usize> = HashMap::new();
    for sig in &sa.signature {
        *freq.entry(sig).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (freq[&sa.signature[i]], i));

    struct Search<'s> {
        sa: &'s Side,
        sb: &'s Side,
        a: &'s Arrangement,
        b: &'s Arrangement,
        order: Vec<usize>,
        perm: Vec<usize>,
        used: Vec<bool>,
        flat_map: Vec<usize>,
        flat_map_rev: Vec<usize>,
    }

    impl Search<'_> {
        fn assign(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                // The rank-2 consistency almost always pins a true
                // isomorphism already; the full check keeps higher ranks
                // sound. On failure the backtracking simply continues.
                return full_lattice_check(self.a, self.b, &self.perm);
            }
            let i = self.order[depth];
            'candidates: for j in 0..self.sb.n {
                if self.used[j] || self.sa.signature[i] != self.sb.signature[j] {
                    continue;
                }
                let mut trail: Vec<(usize, usize)> = Vec::new();
                for &i2 in &self.order[..depth] {
                    let fa = self.sa.flat_of_pair[i][i2];
                    let fb = self.sb.flat_of_pair[j][self.perm[i2]];
                    if self.sa.flats2[fa].len() != self.sb.flats2[fb].len() {
                        for &(fa, fb) in &trail {
                            self.flat_map[fa] = usize::MAX;
                            self.flat_map_rev[fb] = usize::MAX;
                        }
                        continue 'candidates;
                    }
                    let fwd = self.flat_map[fa];
                    let rev = self.flat_map_rev[fb];
                    if fwd == usize::MAX && rev == usize::MAX {
                        self.flat_map[fa] = fb;
                        self.flat_map_rev[fb] = fa;
                        trail.push((fa, fb));
                    } else if fwd != fb || rev != fa {
                        for &(fa, fb) in &trail {
                            self.flat_map[fa] = usize::MAX;
                            self.flat_map_rev[fb] = usize::MAX;
                        }
                        continue 'candidates;
                    }
                }
                self.perm[i] = j;
                self.used[j] = true;
                if self.assign(depth + 1) {
                    return true;
                }
                self.used[j] = false;
                self.perm[i] = usize::MAX;
                for &(fa, fb) in &trail {
                    self.flat_map[fa] = usize::MAX;
                    self.flat_map_rev[fb] = usize::MAX;
                }
            }
            false
        }
    }

    let mut search = Search {
        sa: &sa,
        sb: &sb,
        a,
        b,
        order,
        perm: vec![usize::MAX; n],
        used: vec![false; n],
        flat_map: vec![usize::MAX; sa.flats2.len()],
        flat_map_rev: vec![usize::MAX; sb.flats2.len()],
    };
    if search.assign(0) {
        Ok(Some(search.perm))
    } else {
        Ok(None)
    }
}

fn full_lattice_check(a: &Arrangement, b: &Arrangement, perm: &[usize]) -> bool {
    let lb = b.lattice();
    for f in a.lattice().flats() {
        let image: IndexSet = f.closed_set().iter().map(|i| perm[i]).collect();
        match lb.find(&image) {
            Some(id) if lb.flat(id).rank() == f.rank() => {}
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn identity_on_itself() {
        let a = catalog::intermediate(2, 3, 2).unwrap();
        let perm = lattice_isomorphic(&a, &a, &limits()).unwrap().unwrap();
        assert_eq!(perm, (0..a.len()).collect::<Vec<_>>());
    }

    #[test]
    fn different_sizes_fail_fast() {
        let a = catalog::boolean(3);
        let b = catalog::braid(3);
        assert!(lattice_isomorphic(&a, &b, &limits()).unwrap().is_none());
    }

    #[test]
    fn braid_is_isomorphic_to_itself_reordered() {
        let a = catalog::braid(4);
        let normals: Vec<Vec<crate::field::Scalar>> = a
            .hyperplanes()
            .iter()
            .rev()
            .map(|h| h.normal().to_vec())
            .collect();
        let b = Arrangement::new(a.dim(), a.field().clone(), normals).unwrap();
        let perm = lattice_isomorphic(&a, &b, &limits()).unwrap().unwrap();
        assert!(full_lattice_check(&a, &b, &perm));
    }

    #[test]
    fn boolean_vs_generic_same_counts() {
        // Same hyperplane count and rank but different lattices.
        let a = catalog::boolean(3);
        let b = crate::testutil::rational_arrangement(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        assert!(lattice_isomorphic(&a, &b, &limits()).unwrap().is_some());
        let c = crate::testutil::rational_arrangement(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert!(lattice_isomorphic(&a, &c, &limits()).unwrap().is_none());
    }

    #[test]
    fn size_limit_enforced() {
        let tight = SearchLimits {
            max_hyperplanes: 2,
            max_rank: 5,
        };
        let a = catalog::boolean(3);
        assert!(matches!(
            lattice_isomorphic(&a, &a, &tight),
            Err(Error::SizeLimit(_))
        ));
    }
}
