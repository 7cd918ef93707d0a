//! Inductive factorizations: the restriction map of a partition at a
//! distinguished hyperplane, the addition-deletion theorem for nice
//! partitions, certificates that build an arrangement hyperplane by
//! hyperplane, their verification, search, and induction tables.
//!
//! A pair (arrangement, partition) is inductively factored when it can be
//! reached from the empty arrangement by additions for which the
//! restriction map is a bijection and the restricted pair is itself
//! inductively factored. Membership of a pair depends only on the
//! underlying hyperplane set and partition, so both searches memoize on
//! canonical forms (sorted canonical normals).

use std::collections::HashMap;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::indexset::IndexSet;
use crate::modularity::{chain_partition, supersolvable};
use crate::partition::{enumerate_nice_partitions, is_nice, Partition};
use crate::SearchLimits;

/// The map `H -> H ∩ H_0` from the complement of the distinguished part
/// into the restriction.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub h0: usize,
    /// Index of the part containing `h0` (treated as the first part).
    pub distinguished_part: usize,
    /// Domain: hyperplane indices outside the distinguished part, ascending.
    pub source: Vec<usize>,
    /// Parallel to `source`: image indices in the restricted arrangement.
    pub images: Vec<usize>,
    pub bijective: bool,
    /// Images of distinct parts are pairwise disjoint.
    pub part_images_disjoint: bool,
    /// For each non-distinguished part, `(original part index, image set)`.
    pub induced_parts: Vec<(usize, IndexSet)>,
    /// The restricted arrangement the map lands in.
    pub restricted: Arrangement,
}

impl RestrictionMap {
    /// The induced partition of the restriction, available when the map is
    /// bijective (then the images partition the restriction).
    pub fn induced_partition(&self) -> Option<Partition> {
        if !self.bijective {
            return None;
        }
        let parts: Vec<IndexSet> = self.induced_parts.iter().map(|(_, s)| s.clone()).collect();
        Partition::from_index_sets(self.restricted.len(), parts).ok()
    }
}

/// Computes the restriction map of `pi` at `h0`; the part containing `h0`
/// plays the distinguished role.
pub fn restriction_map(arr: &Arrangement, pi: &Partition, h0: usize) -> Result<RestrictionMap> {
    if pi.ground_size() != arr.len() {
        return Err(Error::InvalidPartition("partition does not match".into()));
    }
    if h0 >= arr.len() {
        return Err(Error::IndexOutOfRange {
            index: h0,
            len: arr.len(),
        });
    }
    let j = pi.part_of(h0).expect("partition covers all indices");
    let triple = arr.triple(h0)?;
    let m = triple.restricted.len();

    let mut source = Vec::new();
    let mut images = Vec::new();
    for i in 0..arr.len() {
        if pi.part(j).contains(i) {
            continue;
        }
        source.push(i);
        images.push(triple.trace[i].expect("trace defined off the deleted hyperplane"));
    }
    let mut hit = vec![false; m];
    let mut injective = true;
    for &im in &images {
        if hit[im] {
            injective = false;
        }
        hit[im] = true;
    }
    let surjective = hit.iter().all(|&b| b);
    let bijective = injective && surjective;

    let mut induced_parts = Vec::new();
    let mut union_so_far = IndexSet::new();
    let mut part_images_disjoint = true;
    for (k, part) in pi.parts().iter().enumerate() {
        if k == j {
            continue;
        }
        let image: IndexSet = part
            .iter()
            .map(|g| triple.trace[g].expect("g != h0"))
            .collect();
        if !union_so_far.intersection(&image).is_empty() {
            part_images_disjoint = false;
        }
        union_so_far.union_with(&image);
        induced_parts.push((k, image));
    }

    Ok(RestrictionMap {
        h0,
        distinguished_part: j,
        source,
        images,
        bijective,
        part_images_disjoint,
        induced_parts,
        restricted: triple.restricted,
    })
}

/// The three statements of the addition-deletion theorem for nice
/// partitions, evaluated directly.
#[derive(Clone, Copy, Debug)]
pub struct AdditionDeletionReport {
    /// pi is nice for the arrangement.
    pub whole_nice: bool,
    /// The induced partition of the deletion is nice.
    pub deleted_nice: bool,
    /// The restriction map is bijective and the induced partition of the
    /// restriction is nice.
    pub restricted_nice: bool,
}

/// Evaluates all three statements and asserts the two-imply-the-third
/// consistency; a violation is reported as an internal inconsistency.
pub fn addition_deletion_nice(
    arr: &Arrangement,
    pi: &Partition,
    h0: usize,
) -> Result<AdditionDeletionReport> {
    let rmap = restriction_map(arr, pi, h0)?;
    let whole_nice = is_nice(arr, pi)?.is_nice();

    let deleted = arr.deletion(h0)?;
    let deleted_pi = delete_from_partition(pi, h0).0;
    let deleted_nice = is_nice(&deleted, &deleted_pi)?.is_nice();

    let restricted_nice = match rmap.induced_partition() {
        Some(pi2) => is_nice(&rmap.restricted, &pi2)?.is_nice(),
        None => false,
    };

    let truths = [whole_nice, deleted_nice, restricted_nice]
        .iter()
        .filter(|&&b| b)
        .count();
    if truths == 2 {
        return Err(Error::Inconsistency(format!(
            "addition-deletion: exactly two of (nice, deleted nice, restricted nice) hold \
             at hyperplane {h0}: ({whole_nice}, {deleted_nice}, {restricted_nice})"
        )));
    }
    Ok(AdditionDeletionReport {
        whole_nice,
        deleted_nice,
        restricted_nice,
    })
}

/// Partition of the deletion, with a map from new part indices to old.
fn delete_from_partition(pi: &Partition, h0: usize) -> (Partition, Vec<usize>) {
    let mut parts = Vec::new();
    let mut part_map = Vec::new();
    for (k, part) in pi.parts().iter().enumerate() {
        let shifted: Vec<usize> = part
            .iter()
            .filter(|&g| g != h0)
            .map(|g| if g > h0 { g - 1 } else { g })
            .collect();
        if !shifted.is_empty() {
            parts.push(IndexSet::from_indices(shifted));
            part_map.push(k);
        }
    }
    let pi = Partition::from_index_sets(pi.ground_size() - 1, parts)
        .expect("deletion of one element keeps a valid partition");
    (pi, part_map)
}

/// An ordered list of hyperplane additions with part assignments, together
/// with the final partition they build.
#[derive(Clone, Debug)]
pub struct FactorizationCertificate {
    additions: Vec<(Hyperplane, usize)>,
    final_partition: Partition,
}

impl FactorizationCertificate {
    pub fn empty() -> Self {
        FactorizationCertificate {
            additions: Vec::new(),
            final_partition: Partition::empty(),
        }
    }

    /// Builds a certificate from additions; the final partition is derived
    /// by locating each hyperplane in `arr`.
    pub fn from_additions(arr: &Arrangement, additions: Vec<(Hyperplane, usize)>) -> Result<Self> {
        let nparts = additions.iter().map(|&(_, k)| k + 1).max().unwrap_or(0);
        let mut parts = vec![IndexSet::new(); nparts];
        for (hp, k) in &additions {
            let Some(g) = arr.find(hp.normal()) else {
                return Err(Error::InvalidPartition(format!(
                    "certificate hyperplane [{hp}] is not in the arrangement"
                )));
            };
            parts[*k].insert(g);
        }
        let final_partition = Partition::from_index_sets(arr.len(), parts)?;
        Ok(FactorizationCertificate {
            additions,
            final_partition,
        })
    }

    pub fn additions(&self) -> &[(Hyperplane, usize)] {
        &self.additions
    }

    pub fn final_partition(&self) -> &Partition {
        &self.final_partition
    }

    pub fn len(&self) -> usize {
        self.additions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.additions.is_empty()
    }

    /// One line per addition: `<hyperplane tokens> -> part <k>`.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for (hp, k) in &self.additions {
            out.push_str(&format!("{hp} -> part {k}\n"));
        }
        out
    }

    /// Parses the certificate file format against a target arrangement.
    pub fn parse(text: &str, arr: &Arrangement) -> Result<Self> {
        let mut additions = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno, msg };
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| err("expected `<hyperplane> -> part <k>`".into()))?;
            let k: usize = rhs
                .trim()
                .strip_prefix("part")
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| err(format!("bad part assignment `{rhs}`")))?;
            let tokens: Vec<&str> = lhs.split_whitespace().collect();
            if tokens.len() != arr.dim() {
                return Err(err(format!(
                    "expected {} scalar tokens, found {}",
                    arr.dim(),
                    tokens.len()
                )));
            }
            let normal: Vec<Scalar> = tokens
                .iter()
                .map(|t| Scalar::parse(t, arr.field()))
                .collect::<Result<_>>()?;
            additions.push((Hyperplane::new(normal)?, k));
        }
        FactorizationCertificate::from_additions(arr, additions)
    }
}

/// One row of an induction table of factorizations.
#[derive(Clone, Debug)]
pub struct InductionRow {
    /// Exponent candidates of the arrangement before the addition
    /// (zeros included for rank deficiency).
    pub exp_before: Vec<usize>,
    pub added: Hyperplane,
    /// Exponent candidates of the restriction to the added hyperplane.
    pub exp_restriction: Vec<usize>,
    /// Part, in the final partition, the hyperplane joins.
    pub part: usize,
}

// ---------------------------------------------------------------------------
// Canonical keys and the shared memoized context.

#[derive(PartialEq, Eq, Hash, Clone)]
struct ArrKey {
    conductor: u32,
    dim: usize,
    normals: Vec<Hyperplane>,
}

#[derive(PartialEq, Eq, Hash, Clone)]
struct PairKey {
    arr: ArrKey,
    parts: Vec<Vec<usize>>,
}

fn arr_key(arr: &Arrangement) -> (ArrKey, Vec<usize>) {
    let mut order: Vec<usize> = (0..arr.len()).collect();
    order.sort_by(|&a, &b| arr.hyperplane(a).cmp(arr.hyperplane(b)));
    let mut position = vec![0usize; arr.len()];
    for (pos, &orig) in order.iter().enumerate() {
        position[orig] = pos;
    }
    let normals = order.iter().map(|&i| arr.hyperplane(i).clone()).collect();
    (
        ArrKey {
            conductor: arr.field().conductor(),
            dim: arr.dim(),
            normals,
        },
        position,
    )
}

/// Canonical pair key plus, for each original part index, its position in
/// the canonical part list.
fn pair_key(arr: &Arrangement, pi: &Partition) -> (PairKey, Vec<usize>) {
    let (akey, position) = arr_key(arr);
    let mut parts: Vec<(Vec<usize>, usize)> = pi
        .parts()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut v: Vec<usize> = p.iter().map(|i| position[i]).collect();
            v.sort_unstable();
            (v, k)
        })
        .collect();
    parts.sort();
    let mut part_to_canonical = vec![0usize; pi.num_parts()];
    for (canon, (_, orig)) in parts.iter().enumerate() {
        part_to_canonical[*orig] = canon;
    }
    (
        PairKey {
            arr: akey,
            parts: parts.into_iter().map(|(v, _)| v).collect(),
        },
        part_to_canonical,
    )
}

struct IfacContext {
    limits: SearchLimits,
    /// Additions carry part indices in the canonical part order of the key.
    pair_memo: HashMap<PairKey, Option<Vec<(Hyperplane, usize)>>>,
    search_memo: HashMap<ArrKey, Option<FactorizationCertificate>>,
}

impl IfacContext {
    fn new(limits: SearchLimits) -> Self {
        IfacContext {
            limits,
            pair_memo: HashMap::new(),
            search_memo: HashMap::new(),
        }
    }

    /// Is the pair inductively factored? Returns additions with part
    /// indices relative to `pi`'s own part order.
    fn pair_cert(
        &mut self,
        arr: &Arrangement,
        pi: &Partition,
    ) -> Result<Option<Vec<(Hyperplane, usize)>>> {
        if arr.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let (key, part_to_canonical) = pair_key(arr, pi);
        if let Some(hit) = self.pair_memo.get(&key) {
            return Ok(hit
                .clone()
                .map(|adds| remap_parts(adds, &invert(&part_to_canonical))));
        }
        let mut result: Option<Vec<(Hyperplane, usize)>> = None;
        // Members of the class are nice; pruning non-nice pairs is exact.
        if is_nice(arr, pi)?.is_nice() {
            for h0 in 0..arr.len() {
                let rmap = restriction_map(arr, pi, h0)?;
                if !rmap.bijective {
                    continue;
                }
                let restricted_pi = rmap.induced_partition().expect("bijective");
                let deleted = arr.deletion(h0)?;
                let (deleted_pi, part_map) = delete_from_partition(pi, h0);
                let Some(sub) = self.pair_cert(&deleted, &deleted_pi)? else {
                    continue;
                };
                if self.pair_cert(&rmap.restricted, &restricted_pi)?.is_none() {
                    continue;
                }
                let mut additions = remap_parts(sub, &part_map);
                additions.push((arr.hyperplane(h0).clone(), rmap.distinguished_part));
                result = Some(additions);
                break;
            }
        }
        self.pair_memo.insert(
            key,
            result
                .clone()
                .map(|adds| remap_parts(adds, &part_to_canonical)),
        );
        Ok(result)
    }

    fn search(&mut self, arr: &Arrangement) -> Result<Option<FactorizationCertificate>> {
        self.limits.check(arr)?;
        if arr.is_empty() {
            return Ok(Some(FactorizationCertificate::empty()));
        }
        let (key, _) = arr_key(arr);
        if let Some(hit) = self.search_memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut result = None;
        if arr.exponent_candidates().is_some() {
            // Supersolvable shortcut: the chain partition is a candidate
            // certain to certify, tried before the general enumeration.
            let mut candidates: Vec<Partition> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            if let Some(chain) = supersolvable(arr) {
                let pi = chain_partition(arr, &chain)?;
                seen.insert(pi.canonical_parts());
                candidates.push(pi);
            }
            enumerate_nice_partitions(arr, &self.limits, &mut |pi| {
                if seen.insert(pi.canonical_parts()) {
                    candidates.push(pi);
                }
                true
            })?;
            for pi in candidates {
                if let Some(additions) = self.pair_cert(arr, &pi)? {
                    result = Some(FactorizationCertificate {
                        additions,
                        final_partition: pi,
                    });
                    break;
                }
            }
        }
        self.search_memo.insert(key, result.clone());
        Ok(result)
    }
}

fn invert(part_to_canonical: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; part_to_canonical.len()];
    for (orig, &canon) in part_to_canonical.iter().enumerate() {
        inv[canon] = orig;
    }
    inv
}

fn remap_parts(additions: Vec<(Hyperplane, usize)>, map: &[usize]) -> Vec<(Hyperplane, usize)> {
    additions.into_iter().map(|(hp, k)| (hp, map[k])).collect()
}

/// Searches for an inductive factorization, deterministically.
///
/// Candidate partitions come from the supersolvable chain (when one
/// exists) followed by the nice-partition enumeration; for each candidate
/// the class membership is decided recursively with memoization on
/// canonical hyperplane subsets.
pub fn indfac_search(
    arr: &Arrangement,
    limits: &SearchLimits,
) -> Result<Option<FactorizationCertificate>> {
    IfacContext::new(*limits).search(arr)
}

/// Replays a certificate and checks the class conditions at every step:
/// the addition's restriction map must be bijective and the restricted
/// pair inductively factored (decided recursively, memoized). The base
/// case, the empty arrangement with the empty partition, is accepted.
pub fn verify_certificate(arr: &Arrangement, cert: &FactorizationCertificate) -> Result<()> {
    let fail = |step: usize, reason: &str| Error::Certificate {
        step,
        reason: reason.to_string(),
    };
    if cert.additions.len() != arr.len() {
        return Err(fail(
            0,
            &format!(
                "certificate has {} additions for {} hyperplanes",
                cert.additions.len(),
                arr.len()
            ),
        ));
    }
    let mut ctx = IfacContext::new(SearchLimits::unlimited());
    let mut normals: Vec<Vec<Scalar>> = Vec::new();
    for (i, (hp, part)) in cert.additions.iter().enumerate() {
        let step = i + 1;
        if hp.dim() != arr.dim() {
            return Err(fail(step, "hyperplane has wrong ambient dimension"));
        }
        if arr.find(hp.normal()).is_none() {
            return Err(fail(step, "hyperplane does not belong to the arrangement"));
        }
        normals.push(hp.normal().to_vec());
        let partial = Arrangement::new(arr.dim(), arr.field().clone(), normals.clone())?;
        if partial.len() != i + 1 {
            return Err(fail(step, "duplicate addition"));
        }
        let pi = partial_partition(&cert.additions[..=i], *part)?;
        let rmap = restriction_map(&partial, &pi, i)?;
        if !rmap.bijective {
            return Err(fail(step, "restriction map is not bijective"));
        }
        let restricted_pi = rmap.induced_partition().expect("bijective");
        if ctx.pair_cert(&rmap.restricted, &restricted_pi)?.is_none() {
            return Err(fail(step, "restricted pair is not inductively factored"));
        }
    }
    // The replay must rebuild the arrangement and its claimed partition.
    let (replayed, _) = pair_key(
        arr,
        &FactorizationCertificate::from_additions(arr, cert.additions.clone())?.final_partition,
    );
    let (claimed, _) = pair_key(arr, &cert.final_partition);
    if replayed != claimed {
        return Err(fail(0, "final partition does not match the additions"));
    }
    Ok(())
}

/// Partition of the partial arrangement built from the first additions;
/// `last_part` is the part of the newest hyperplane (used only to keep the
/// call sites honest).
fn partial_partition(additions: &[(Hyperplane, usize)], last_part: usize) -> Result<Partition> {
    debug_assert_eq!(additions.last().map(|&(_, k)| k), Some(last_part));
    let nparts = additions.iter().map(|&(_, k)| k + 1).max().unwrap_or(0);
    let mut parts = vec![IndexSet::new(); nparts];
    for (pos, (_, k)) in additions.iter().enumerate() {
        parts[*k].insert(pos);
    }
    parts.retain(|p| !p.is_empty());
    Partition::from_index_sets(additions.len(), parts)
}

/// Emits the induction table of a verified certificate: per addition, the
/// exponent candidates before it, the added form, the exponent candidates
/// of the restriction, and the part joined.
pub fn induction_table(
    arr: &Arrangement,
    cert: &FactorizationCertificate,
) -> Result<Vec<InductionRow>> {
    verify_certificate(arr, cert)?;
    let mut rows = Vec::with_capacity(cert.additions.len());
    let mut normals: Vec<Vec<Scalar>> = Vec::new();
    for (i, (hp, part)) in cert.additions.iter().enumerate() {
        let before = Arrangement::new(arr.dim(), arr.field().clone(), normals.clone())?;
        let exp_before = before.exponent_candidates().ok_or_else(|| {
            Error::Inconsistency("partial arrangement in a certificate must split".into())
        })?;
        normals.push(hp.normal().to_vec());
        let partial = Arrangement::new(arr.dim(), arr.field().clone(), normals.clone())?;
        let triple = partial.triple(i)?;
        let exp_restriction = triple.restricted.exponent_candidates().ok_or_else(|| {
            Error::Inconsistency("restriction in a certificate must split".into())
        })?;
        rows.push(InductionRow {
            exp_before,
            added: hp.clone(),
            exp_restriction,
            part: *part,
        });
    }
    Ok(rows)
}

/// Report of running `indfac_search` on every restriction.
#[derive(Clone, Debug)]
pub struct HereditaryIndfacReport {
    pub results: Vec<(IndexSet, Option<FactorizationCertificate>)>,
}

impl HereditaryIndfacReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, c)| c.is_some())
    }

    pub fn first_failure(&self) -> Option<&IndexSet> {
        self.results
            .iter()
            .find(|(_, c)| c.is_none())
            .map(|(s, _)| s)
    }
}

/// Is every restriction inductively factored? One memoized context is
/// shared across all flats.
pub fn hereditarily_indfac(
    arr: &Arrangement,
    limits: &SearchLimits,
) -> Result<HereditaryIndfacReport> {
    let lat = arr.lattice().clone();
    let mut ctx = IfacContext::new(*limits);
    let mut results = Vec::with_capacity(lat.num_flats());
    for f in lat.flats() {
        let restricted = arr.restriction(f)?;
        let cert = ctx.search(&restricted)?;
        results.push((f.closed_set().clone(), cert));
    }
    Ok(HereditaryIndfacReport { results })
}

/// Convenience: decide membership of a specific pair in the inductively
/// factored class (used by tests and the localization-closure checks).
pub fn pair_is_inductively_factored(
    arr: &Arrangement,
    pi: &Partition,
    limits: &SearchLimits,
) -> Result<bool> {
    limits.check(arr)?;
    Ok(IfacContext::new(*limits).pair_cert(arr, pi)?.is_some())
}
