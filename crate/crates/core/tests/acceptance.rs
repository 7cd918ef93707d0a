//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`). Every threshold is pinned in code;
//! all checks are exact, no tolerances apply.

use arrfac::catalog::{self, NamedRestriction, RootSystem};
use arrfac::induction::{hereditarily_indfac, indfac_search, induction_table, verify_certificate};
use arrfac::iso::lattice_isomorphic;
use arrfac::modularity::{chain_partition, supersolvable};
use arrfac::partition::{
    enumerate_nice_partitions, factorization_report, hereditarily_nice, induced_partition, is_nice,
    nice_search, Partition,
};
use arrfac::{Arrangement, Scalar, SearchLimits};

mod oracles;

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        if !ok {
            self.failures.push(msg.into());
        }
    }

    fn conclude(self) {
        if self.failures.is_empty() {
            println!("[acceptance] {}: PASS", self.name);
        } else {
            println!("[acceptance] {}: FAIL", self.name);
            for f in &self.failures {
                println!("  - {f}");
            }
            panic!("{} failed with {} error(s)", self.name, self.failures.len());
        }
    }
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

/// Every catalog instance with at most 16 hyperplanes.
fn small_catalog() -> Vec<Arrangement> {
    let mut out = Vec::new();
    for l in 1..=4 {
        out.push(catalog::boolean(l));
    }
    for n in 2..=5 {
        out.push(catalog::braid(n));
    }
    for r in 1..=4u32 {
        for l in 2..=4usize {
            for k in 0..=l {
                let arr = catalog::intermediate(r, l, k).unwrap();
                if arr.len() <= 16 {
                    out.push(arr);
                }
            }
        }
    }
    for sys in [
        RootSystem::B(2),
        RootSystem::B(3),
        RootSystem::D(4),
        RootSystem::H3,
    ] {
        out.push(catalog::root_system(sys).unwrap());
    }
    for key in [
        NamedRestriction::E6A1Cubed,
        NamedRestriction::E6A1A2,
        NamedRestriction::E7A1A3DoublePrime,
    ] {
        out.push(catalog::named_restriction(key).0);
    }
    // The two subsystem restrictions used throughout.
    let e6 = catalog::simple_root_indices(RootSystem::E6).unwrap();
    out.push(
        catalog::subsystem_restriction(RootSystem::E6, &[e6[0], e6[2], e6[3]])
            .unwrap()
            .with_label("e6-restricted-to-a3"),
    );
    let e7 = catalog::simple_root_indices(RootSystem::E7).unwrap();
    out.push(
        catalog::subsystem_restriction(RootSystem::E7, &[e7[1], e7[2], e7[3], e7[4]])
            .unwrap()
            .with_label("e7-restricted-to-d4"),
    );
    for a in &out {
        assert!(a.len() <= 16, "corpus instance too big: {:?}", a.label());
    }
    out
}

fn label(a: &Arrangement) -> String {
    a.label().unwrap_or("unnamed").to_string()
}

#[test]
fn criterion_1_exponent_formula() {
    let mut c = Criterion::new("criterion 1 (exponent formula over the (r,l,k) grid)");
    for r in 1..=4u32 {
        for l in 2..=5usize {
            for k in 0..=l {
                let arr = catalog::intermediate(r, l, k).unwrap();
                let got = arr.exponent_candidates();
                let mut expect: Vec<usize> = (0..=l - 2).map(|j| j * r as usize + 1).collect();
                expect.push((l - 1) * r as usize + k + 1 - l);
                expect.sort_unstable();
                c.check(
                    got.as_deref() == Some(&expect[..]),
                    format!("({r},{l},{k}): got {got:?}, expected {expect:?}"),
                );
            }
        }
    }
    c.conclude();
}

#[test]
fn criterion_2_no_factorization_for_k_eq_l_minus_3() {
    let mut c = Criterion::new("criterion 2 (k = l-3 instances are not nice; localization)");
    for r in [2u32, 3] {
        let arr = catalog::intermediate(r, 4, 1).unwrap();
        let found = nice_search(&arr, &limits()).unwrap();
        c.check(
            found.is_none(),
            format!("nice_search(intermediate({r},4,1)) found {found:?}"),
        );
    }

    // Inside intermediate(2,5,2), the flat cut out by all mixed forms on
    // the last four coordinates localizes to intermediate(2,4,1).
    let arr = catalog::intermediate(2, 5, 2).unwrap();
    let field = arr.field().clone();
    let mut indices = Vec::new();
    for a in 1..5usize {
        for b in (a + 1)..5 {
            for n in 0..2u64 {
                let mut v = vec![field.zero(); 5];
                v[a] = field.one();
                v[b] = -&field.zeta_pow(n);
                indices.push(arr.find(&v).unwrap());
            }
        }
    }
    let flat = arr.closure_of(&indices).unwrap();
    let localized = arr.localization(&flat).unwrap();
    let target = catalog::intermediate(2, 4, 1).unwrap();
    let witness = lattice_isomorphic(&localized, &target, &limits()).unwrap();
    c.check(
        witness.is_some(),
        "localization of intermediate(2,5,2) is not lattice-isomorphic to intermediate(2,4,1)",
    );
    c.conclude();
}

#[test]
fn criterion_3_induction_tables_for_k_eq_l_minus_2() {
    let mut c = Criterion::new("criterion 3 (induction tables for the k = l-2 family)");
    for r in [2u32, 3] {
        let arr = catalog::intermediate(r, 4, 2).unwrap();
        let cert = indfac_search(&arr, &limits()).unwrap();
        c.check(cert.is_some(), format!("indfac_search failed on ({r},4,2)"));

        let chain = catalog::intermediate_induction_chain(r, 4).unwrap();
        if let Err(e) = verify_certificate(&arr, &chain) {
            c.check(false, format!("chain certificate for ({r},4,2): {e}"));
            continue;
        }
        let rows = induction_table(&arr, &chain).unwrap();
        c.check(
            rows.len() == arr.len(),
            format!("table for ({r},4,2) has {} rows", rows.len()),
        );
        for (i, row) in rows.iter().enumerate() {
            let sum: usize = row.exp_before.iter().sum();
            c.check(
                sum == i,
                format!("row {} of ({r},4,2): exp_before sums to {sum}", i + 1),
            );
        }
        // Final exponents from the closed formula: {1, r+1, 2r+1, 3r-1}.
        let r = r as usize;
        let mut expect = vec![1, r + 1, 2 * r + 1, 3 * r - 1];
        expect.sort_unstable();
        let got = arr.exponent_candidates();
        c.check(
            got.as_deref() == Some(&expect[..]),
            format!("final exponents for ({r},4,2): got {got:?}, expected {expect:?}"),
        );
    }
    c.conclude();
}

#[test]
fn criterion_4_small_classification() {
    let mut c = Criterion::new("criterion 4 (rank-3 niceness; k range for factorability at l=4)");
    for k in 0..=3usize {
        for r in 2..=4u32 {
            let arr = catalog::intermediate(r, 3, k).unwrap();
            let found = nice_search(&arr, &limits()).unwrap();
            c.check(
                found.is_some(),
                format!("intermediate({r},3,{k}) should be nice"),
            );
        }
    }
    for k in 0..=4usize {
        let arr = catalog::intermediate(2, 4, k).unwrap();
        let cert = indfac_search(&arr, &limits()).unwrap();
        let expect = k >= 2;
        c.check(
            cert.is_some() == expect,
            format!(
                "intermediate(2,4,{k}): inductively factored = {}, expected {expect}",
                cert.is_some()
            ),
        );
    }
    c.conclude();
}

#[test]
fn criterion_5_printed_restrictions() {
    let mut c = Criterion::new("criterion 5 (the three printed rank-3 restrictions)");
    let (b, _) = catalog::named_restriction(NamedRestriction::E6A1Cubed);
    let found = nice_search(&b, &limits()).unwrap();
    c.check(
        found.is_none(),
        "the (E6, A1^3) restriction must not be nice",
    );
    c.check(
        b.exponent_candidates() == Some(vec![1, 4, 5]),
        "exponents of (E6, A1^3)",
    );

    for (key, exps) in [
        (NamedRestriction::E6A1A2, vec![1, 4, 5]),
        (NamedRestriction::E7A1A3DoublePrime, vec![1, 5, 5]),
    ] {
        let (arr, pi) = catalog::named_restriction(key);
        let pi = pi.expect("published partition");
        let report = is_nice(&arr, &pi).unwrap();
        c.check(report.is_nice(), format!("published partition of {key:?}"));
        c.check(
            arr.exponent_candidates() == Some(exps.clone()),
            format!("exponents of {key:?}"),
        );
        let cert = indfac_search(&arr, &limits()).unwrap();
        match cert {
            None => c.check(false, format!("{key:?} must be inductively factored")),
            Some(cert) => {
                c.check(
                    verify_certificate(&arr, &cert).is_ok(),
                    format!("certificate of {key:?} fails verification"),
                );
                c.check(
                    cert.final_partition().part_sizes_sorted() == exps,
                    format!("certificate part sizes of {key:?}"),
                );
            }
        }
    }
    c.conclude();
}

#[test]
fn criterion_6_lattice_isomorphisms() {
    let mut c = Criterion::new("criterion 6 (subsystem restriction isomorphisms)");
    let e6 = catalog::simple_root_indices(RootSystem::E6).unwrap();
    let restr = catalog::subsystem_restriction(RootSystem::E6, &[e6[0], e6[2], e6[3]]).unwrap();
    let witness =
        lattice_isomorphic(&restr, &catalog::intermediate(2, 3, 2).unwrap(), &limits()).unwrap();
    c.check(
        witness.is_some(),
        "(E6 restricted to A3) vs intermediate(2,3,2)",
    );

    let e7 = catalog::simple_root_indices(RootSystem::E7).unwrap();
    let restr =
        catalog::subsystem_restriction(RootSystem::E7, &[e7[1], e7[2], e7[3], e7[4]]).unwrap();
    let witness =
        lattice_isomorphic(&restr, &catalog::intermediate(2, 3, 3).unwrap(), &limits()).unwrap();
    c.check(
        witness.is_some(),
        "(E7 restricted to D4) vs intermediate(2,3,3)",
    );

    // Equal exponents do not make lattices isomorphic: the two printed
    // 10-hyperplane restrictions even share the multiset of rank-2 flat
    // sizes, but the per-hyperplane rank-2 profiles already differ, which
    // is what the isomorphism search fast-fails on.
    let (b, _) = catalog::named_restriction(NamedRestriction::E6A1Cubed);
    let (cc, _) = catalog::named_restriction(NamedRestriction::E6A1A2);
    c.check(
        b.exponent_candidates() == cc.exponent_candidates(),
        "the two restrictions share exponents {1,4,5}",
    );
    let size_profile = |a: &Arrangement| -> Vec<usize> {
        let mut v: Vec<usize> = a
            .lattice()
            .flats_of_rank(2)
            .iter()
            .map(|f| f.closed_set().len())
            .collect();
        v.sort_unstable();
        v
    };
    c.check(
        size_profile(&b) == size_profile(&cc),
        "both restrictions have rank-2 sizes {2^6, 3^7, 4^3}",
    );
    let hyperplane_profile = |a: &Arrangement| -> Vec<Vec<usize>> {
        let lat = a.lattice();
        let mut sigs: Vec<Vec<usize>> = (0..a.len())
            .map(|h| {
                let mut s: Vec<usize> = lat
                    .flats_of_rank(2)
                    .iter()
                    .filter(|f| f.closed_set().contains(h))
                    .map(|f| f.closed_set().len())
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        sigs.sort();
        sigs
    };
    c.check(
        hyperplane_profile(&b) != hyperplane_profile(&cc),
        "per-hyperplane rank-2 profiles of the two restrictions must differ",
    );
    let t0 = std::time::Instant::now();
    c.check(
        lattice_isomorphic(&b, &cc, &limits()).unwrap().is_none(),
        "(E6, A1^3) and (E6, A1A2) are not lattice-isomorphic",
    );
    c.check(
        t0.elapsed() < std::time::Duration::from_millis(500),
        "non-isomorphism must be decided fast",
    );
    c.conclude();
}

#[test]
fn criterion_7_property_suite() {
    let mut c = Criterion::new("criterion 7 (property suite on the small catalog)");
    let corpus = small_catalog();
    let lim = limits();

    let mut nice_instances: Vec<(Arrangement, Partition)> = Vec::new();
    let mut certified: Vec<Arrangement> = Vec::new();

    for arr in &corpus {
        let name = label(arr);

        // (a) deletion-restriction identity at every hyperplane.
        let poin = arr.poincare_polynomial();
        for h in 0..arr.len() {
            let t = arr.triple(h).unwrap();
            let rhs = t
                .deleted
                .poincare_polynomial()
                .add(&t.restricted.poincare_polynomial().shift(1));
            c.check(
                poin == rhs,
                format!("{name}: deletion-restriction fails at hyperplane {h}"),
            );
        }

        // (b) factorization consequences for every nice partition found.
        if let Some(pi) = nice_search(arr, &lim).unwrap() {
            match factorization_report(arr, &pi) {
                Ok(report) => {
                    let mut exps = arr.exponent_candidates().unwrap();
                    exps.retain(|&e| e > 0);
                    c.check(
                        report.part_sizes == exps,
                        format!("{name}: part sizes differ from exponent candidates"),
                    );
                }
                Err(e) => c.check(false, format!("{name}: factorization report: {e}")),
            }
            nice_instances.push((arr.clone(), pi));
        }

        // (e)/(f) supersolvable instances: the chain partition is nice and
        // a certificate exists.
        if let Some(chain) = supersolvable(arr) {
            let pi = chain_partition(arr, &chain).unwrap();
            c.check(
                is_nice(arr, &pi).unwrap().is_nice(),
                format!("{name}: chain partition is not nice"),
            );
            let cert = indfac_search(arr, &lim).unwrap();
            c.check(
                cert.is_some(),
                format!("{name}: supersolvable but no certificate found"),
            );
        }

        if indfac_search(arr, &lim).unwrap().is_some() {
            certified.push(arr.clone());
        }
    }

    // (c) localization closure: of niceness for every nice partition
    // found, and of certificates for every certified instance.
    for (arr, pi) in &nice_instances {
        let name = label(arr);
        let lat = arr.lattice().clone();
        for f in lat.flats() {
            if f.rank() == 0 {
                continue;
            }
            let loc = arr.localization(f).unwrap();
            let induced = induced_partition(arr, pi, f).unwrap();
            c.check(
                is_nice(&loc, &induced).unwrap().is_nice(),
                format!("{name}: induced partition not nice at {:?}", f.closed_set()),
            );
        }
    }
    for arr in &certified {
        let name = label(arr);
        let lat = arr.lattice().clone();
        for f in lat.flats() {
            let loc = arr.localization(f).unwrap();
            c.check(
                indfac_search(&loc, &lim).unwrap().is_some(),
                format!(
                    "{name}: localization at {:?} lost its certificate",
                    f.closed_set()
                ),
            );
        }
    }

    // (d) product compatibility on 10 deterministic pseudo-random pairs.
    // Products of two factors can exceed the default rank limit of 5, so
    // the searches here run with a wider guard.
    let product_lim = SearchLimits {
        max_hyperplanes: 24,
        max_rank: 10,
    };
    let pool: Vec<Arrangement> = corpus
        .iter()
        .filter(|a| a.len() <= 7 && !a.is_empty())
        .cloned()
        .collect();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = |m: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % m as u64) as usize
    };
    let mut pairs = Vec::new();
    while pairs.len() < 10 {
        let a = &pool[next(pool.len())];
        let b = &pool[next(pool.len())];
        if a.field() == b.field() {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for (a, b) in &pairs {
        let p = a.product(b).unwrap();
        let pname = format!("{} x {}", label(a), label(b));
        let nice_a = nice_search(a, &product_lim).unwrap().is_some();
        let nice_b = nice_search(b, &product_lim).unwrap().is_some();
        let nice_p = nice_search(&p, &product_lim).unwrap().is_some();
        c.check(
            nice_p == (nice_a && nice_b),
            format!("{pname}: product niceness mismatch"),
        );
        let cert_a = indfac_search(a, &product_lim).unwrap().is_some();
        let cert_b = indfac_search(b, &product_lim).unwrap().is_some();
        let cert_p = indfac_search(&p, &product_lim).unwrap().is_some();
        c.check(
            cert_p == (cert_a && cert_b),
            format!("{pname}: product factorability mismatch"),
        );
        if cert_p {
            let mut union = a.exponent_candidates().unwrap();
            union.extend(b.exponent_candidates().unwrap());
            union.sort_unstable();
            c.check(
                p.exponent_candidates() == Some(union),
                format!("{pname}: exponent multisets do not unite"),
            );
        }
    }

    // (g) hereditary checks: every rank-3 nice instance, plus the
    // 14-hyperplane k = l-2 instance for certificates.
    for (arr, _) in &nice_instances {
        if arr.rank() != 3 {
            continue;
        }
        let name = label(arr);
        c.check(
            hereditarily_nice(arr, &lim).unwrap().passed(),
            format!("{name}: not hereditarily nice"),
        );
    }
    let a242 = catalog::intermediate(2, 4, 2).unwrap();
    c.check(
        hereditarily_indfac(&a242, &lim).unwrap().passed(),
        "intermediate(2,4,2) must be hereditarily inductively factored",
    );

    // Size-multiset uniqueness, checked empirically: every nice partition
    // of one arrangement has the same sorted part sizes.
    for arr in corpus.iter().filter(|a| a.len() <= 10) {
        let mut sizes: Option<Vec<usize>> = None;
        let mut consistent = true;
        enumerate_nice_partitions(arr, &lim, &mut |pi| {
            let s = pi.part_sizes_sorted();
            match &sizes {
                None => sizes = Some(s),
                Some(prev) => consistent &= prev == &s,
            }
            true
        })
        .unwrap();
        c.check(
            consistent,
            format!(
                "{}: nice partitions with different size multisets",
                label(arr)
            ),
        );
    }

    c.conclude();
}

#[test]
fn criterion_8_oracle_equivalence() {
    let mut c = Criterion::new("criterion 8 (searches agree with brute-force oracles)");
    let lim = limits();
    let mut ifac_oracle = oracles::IfacOracle::default();

    for base in [catalog::braid(4), catalog::intermediate(2, 3, 2).unwrap()] {
        let n = base.len();
        for mask in 0u32..(1 << n) {
            let normals: Vec<Vec<Scalar>> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| base.normal(i).to_vec())
                .collect();
            let sub = Arrangement::new(base.dim(), base.field().clone(), normals).unwrap();

            let fast_nice = nice_search(&sub, &lim).unwrap().is_some();
            let slow_nice = oracles::exhaustive_nice_exists(&sub);
            c.check(
                fast_nice == slow_nice,
                format!(
                    "nice mismatch on {:?} mask {mask:#b}: search {fast_nice}, oracle {slow_nice}",
                    base.label()
                ),
            );

            let fast_cert = indfac_search(&sub, &lim).unwrap();
            if let Some(cert) = &fast_cert {
                c.check(
                    verify_certificate(&sub, cert).is_ok(),
                    format!("certificate fails verification on mask {mask:#b}"),
                );
            }
            let slow_ifac = ifac_oracle.exists(&sub);
            c.check(
                fast_cert.is_some() == slow_ifac,
                format!(
                    "factorability mismatch on {:?} mask {mask:#b}: search {}, oracle {slow_ifac}",
                    base.label(),
                    fast_cert.is_some()
                ),
            );
        }
    }

    // One rank-4 instance against the exhaustive partition oracle, beyond
    // the rank-3 corpus above.
    let rank4 = catalog::intermediate(1, 4, 3).unwrap();
    let fast = nice_search(&rank4, &lim).unwrap().is_some();
    let slow = oracles::exhaustive_nice_exists(&rank4);
    c.check(
        fast == slow,
        format!("rank-4 nice mismatch: search {fast}, oracle {slow}"),
    );
    c.conclude();
}

/// Smoke check that the acceptance corpus builders stay exact: parsing the
/// printed form of every corpus instance reproduces it.
#[test]
fn corpus_roundtrips_through_the_text_format() {
    let mut c = Criterion::new("text format round-trip over the small catalog");
    for arr in small_catalog() {
        let text = arrfac::format::print_arrangement(&arr);
        let parsed =
            arrfac::format::parse_arrangement(&text, arrfac::format::DuplicatePolicy::Error)
                .unwrap()
                .arrangement;
        c.check(
            parsed.same_hyperplanes(&arr),
            format!("{}: reparse differs", label(&arr)),
        );
        c.check(
            arrfac::format::print_arrangement(&parsed) == text,
            format!("{}: print not canonical", label(&arr)),
        );
    }
    c.conclude();
}
