//! Central hyperplane arrangements over an exact cyclotomic field.
//!
//! Hyperplanes are stored through their defining linear forms, scaled so
//! the first nonzero coefficient is 1. That canonical scale works uniformly
//! over every conductor (there is no preferred integral form once roots of
//! unity enter), and makes hyperplane equality plain vector equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::indexset::IndexSet;
use crate::lattice::{Flat, Lattice};
use crate::linalg::Echelon;
use crate::poly::Polynomial;

/// A linear hyperplane, i.e. the kernel of a nonzero linear form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
}

impl Hyperplane {
    /// Canonicalizes the covector so its first nonzero coefficient is 1.
    pub fn new(normal: Vec<Scalar>) -> Result<Hyperplane> {
        let Some(lead) = normal.iter().position(|c| !c.is_zero()) else {
            return Err(Error::ZeroNormal);
        };
        let inv = normal[lead].inverse().expect("nonzero leading coefficient");
        let normal = normal
            .into_iter()
            .map(|c| if c.is_zero() { c } else { &c * &inv })
            .collect();
        Ok(Hyperplane { normal })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.normal {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// A deletion/restriction triple with the trace map of the removed
/// hyperplane.
#[derive(Clone, Debug)]
pub struct Triple {
    /// The arrangement with the distinguished hyperplane removed.
    pub deleted: Arrangement,
    /// The restriction to the distinguished hyperplane.
    pub restricted: Arrangement,
    /// For each original index `i` other than the removed one,
    /// `trace[i]` is the index of `H_i ∩ H_0` in `restricted`.
    pub trace: Vec<Option<usize>>,
}

/// A finite set of linear hyperplanes in a fixed ambient space.
///
/// Immutable after construction; the intersection lattice is computed once
/// on demand and shared by clones.
pub struct Arrangement {
    dim: usize,
    field: FieldSpec,
    hyperplanes: Vec<Hyperplane>,
    label: Option<String>,
    lattice: OnceLock<Lattice>,
}

impl Clone for Arrangement {
    fn clone(&self) -> Self {
        Arrangement {
            dim: self.dim,
            field: self.field.clone(),
            hyperplanes: self.hyperplanes.clone(),
            label: self.label.clone(),
            lattice: self.lattice.clone(),
        }
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Arrangement({}, dim {}, {} hyperplanes over Q(zeta_{}))",
            self.label.as_deref().unwrap_or("unnamed"),
            self.dim,
            self.hyperplanes.len(),
            self.field.conductor()
        )
    }
}

impl Arrangement {
    /// The empty arrangement in the given ambient space.
    pub fn empty(dim: usize, field: FieldSpec) -> Arrangement {
        Arrangement {
            dim,
            field,
            hyperplanes: Vec::new(),
            label: None,
            lattice: OnceLock::new(),
        }
    }

    /// Builds an arrangement from covectors: validates field and lengths,
    /// canonicalizes, and drops duplicates keeping first occurrences.
    pub fn new(dim: usize, field: FieldSpec, normals: Vec<Vec<Scalar>>) -> Result<Arrangement> {
        let mut hps = Vec::with_capacity(normals.len());
        for normal in normals {
            if normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: normal.len(),
                });
            }
            for c in &normal {
                if c.field() != &field {
                    return Err(Error::FieldMismatch {
                        expected: field.conductor(),
                        found: c.field().conductor(),
                    });
                }
            }
            hps.push(Hyperplane::new(normal)?);
        }
        Ok(Self::from_hyperplanes_dedup(dim, field, hps))
    }

    fn from_hyperplanes_dedup(dim: usize, field: FieldSpec, hps: Vec<Hyperplane>) -> Arrangement {
        let mut seen = HashMap::new();
        let mut hyperplanes = Vec::with_capacity(hps.len());
        for hp in hps {
            if !seen.contains_key(&hp) {
                seen.insert(hp.clone(), hyperplanes.len());
                hyperplanes.push(hp);
            }
        }
        Arrangement {
            dim,
            field,
            hyperplanes,
            label: None,
            lattice: OnceLock::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn normal(&self, i: usize) -> &[Scalar] {
        self.hyperplanes[i].normal()
    }

    /// Looks up a hyperplane by any scalar multiple of its normal.
    pub fn find(&self, normal: &[Scalar]) -> Option<usize> {
        let hp = Hyperplane::new(normal.to_vec()).ok()?;
        self.hyperplanes.iter().position(|h| *h == hp)
    }

    /// Same hyperplane set (as sets, ignoring order and labels)?
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        if self.dim != other.dim
            || self.field != other.field
            || self.hyperplanes.len() != other.hyperplanes.len()
        {
            return false;
        }
        let mut a: Vec<_> = self.hyperplanes.clone();
        let mut b: Vec<_> = other.hyperplanes.clone();
        a.sort();
        b.sort();
        a == b
    }

    fn check_indices<'a, I: IntoIterator<Item = &'a usize>>(&self, indices: I) -> Result<()> {
        for &i in indices {
            if i >= self.hyperplanes.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.hyperplanes.len(),
                });
            }
        }
        Ok(())
    }

    /// Exact rank of the normals indexed by `indices`.
    pub fn subset_rank(&self, indices: &[usize]) -> Result<usize> {
        self.check_indices(indices)?;
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        for &i in indices {
            ech.insert(self.normal(i));
        }
        Ok(ech.rank())
    }

    /// Rank of the whole arrangement.
    pub fn rank(&self) -> usize {
        if let Some(lat) = self.lattice.get() {
            return lat.rank();
        }
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        for hp in &self.hyperplanes {
            ech.insert(hp.normal());
        }
        ech.rank()
    }

    /// The flat spanned by the given hyperplanes: closure plus canonical
    /// defining equations. Works without materializing the whole lattice.
    pub fn closure_of(&self, indices: &[usize]) -> Result<Flat> {
        self.check_indices(indices)?;
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        for &i in indices {
            ech.insert(self.normal(i));
        }
        Ok(self.flat_from_echelon(ech))
    }

    fn flat_from_echelon(&self, ech: Echelon) -> Flat {
        let mut closed = IndexSet::new();
        for (g, hp) in self.hyperplanes.iter().enumerate() {
            if ech.contains(hp.normal()) {
                closed.insert(g);
            }
        }
        Flat::new(closed, ech.rank(), ech.into_rows())
    }

    /// Checks that `flat` really is a flat of this arrangement (closed set
    /// is closed, rank and equations agree with the canonical ones).
    pub fn validate_flat(&self, flat: &Flat) -> Result<()> {
        let indices: Vec<usize> = flat.closed_set().iter().collect();
        let recomputed = self.closure_of(&indices)?;
        if recomputed.closed_set() != flat.closed_set()
            || recomputed.rank() != flat.rank()
            || recomputed.equations() != flat.equations()
        {
            return Err(Error::NotAFlat);
        }
        Ok(())
    }

    /// The intersection lattice, computed once and cached.
    pub fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| Lattice::build(self))
    }

    /// Poincaré polynomial, sum over flats of |mu(V, X)| t^r(X).
    pub fn poincare_polynomial(&self) -> Polynomial {
        self.lattice().poincare()
    }

    /// Characteristic polynomial, sum over flats of mu(V, X) t^dim(X).
    pub fn characteristic_polynomial(&self) -> Polynomial {
        let lat = self.lattice();
        let mut coeffs = vec![0i64; self.dim + 1];
        for (id, f) in lat.flats().iter().enumerate() {
            coeffs[self.dim - f.rank()] += lat.mobius(id);
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Reads the Poincaré polynomial as a product of factors `1 + b t` and
    /// returns `{0^(dim - rank)} ∪ {b_1, ..., b_r}` sorted ascending, or
    /// `None` when no such splitting over the nonnegative integers exists.
    ///
    /// For free arrangements this is the exponent multiset; here it is used
    /// as the part-size budget for factorization searches.
    pub fn exponent_candidates(&self) -> Option<Vec<usize>> {
        let poin = self.poincare_polynomial();
        let roots = poin.split_into_linear_factors()?;
        let rank = self.lattice().rank();
        let mut out = vec![0usize; self.dim - rank];
        out.extend(roots);
        Some(out)
    }

    /// The sub-arrangement of hyperplanes containing the flat, in the same
    /// ambient space and original order.
    pub fn localization(&self, flat: &Flat) -> Result<Arrangement> {
        self.validate_flat(flat)?;
        let hps: Vec<Hyperplane> = flat
            .closed_set()
            .iter()
            .map(|i| self.hyperplanes[i].clone())
            .collect();
        Ok(Arrangement::from_hyperplanes_dedup(
            self.dim,
            self.field.clone(),
            hps,
        ))
    }

    /// Restriction to a flat: each hyperplane not containing the flat is
    /// traced onto it, written in an exact basis of the flat, then
    /// canonicalized and deduplicated.
    pub fn restriction(&self, flat: &Flat) -> Result<Arrangement> {
        Ok(self.restriction_with_trace(flat)?.0)
    }

    /// Restriction plus the trace map original index -> restricted index
    /// (`None` exactly for hyperplanes containing the flat).
    pub fn restriction_with_trace(&self, flat: &Flat) -> Result<(Arrangement, Vec<Option<usize>>)> {
        self.validate_flat(flat)?;
        let ech =
            Echelon::from_reduced_rows(self.field.clone(), self.dim, flat.equations().to_vec());
        let basis = ech.kernel_basis();
        let new_dim = basis.len();
        let mut seen: HashMap<Hyperplane, usize> = HashMap::new();
        let mut hyperplanes = Vec::new();
        let mut trace = vec![None; self.hyperplanes.len()];
        for (i, hp) in self.hyperplanes.iter().enumerate() {
            if flat.closed_set().contains(i) {
                continue;
            }
            let restricted: Vec<Scalar> = basis
                .iter()
                .map(|b| {
                    hp.normal()
                        .iter()
                        .zip(b)
                        .fold(self.field.zero(), |acc, (a, x)| &acc + &(a * x))
                })
                .collect();
            let new_hp = Hyperplane::new(restricted).map_err(|_| {
                Error::Inconsistency("restricted hyperplane collapsed to zero".into())
            })?;
            let id = *seen.entry(new_hp.clone()).or_insert_with(|| {
                hyperplanes.push(new_hp);
                hyperplanes.len() - 1
            });
            trace[i] = Some(id);
        }
        let arr = Arrangement {
            dim: new_dim,
            field: self.field.clone(),
            hyperplanes,
            label: None,
            lattice: OnceLock::new(),
        };
        Ok((arr, trace))
    }

    /// The arrangement with hyperplane `h` removed.
    pub fn deletion(&self, h: usize) -> Result<Arrangement> {
        self.check_indices([&h])?;
        let hps: Vec<Hyperplane> = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != h)
            .map(|(_, hp)| hp.clone())
            .collect();
        Ok(Arrangement::from_hyperplanes_dedup(
            self.dim,
            self.field.clone(),
            hps,
        ))
    }

    /// Deletion and restriction at hyperplane `h0`.
    pub fn triple(&self, h0: usize) -> Result<Triple> {
        if self.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        self.check_indices([&h0])?;
        let deleted = self.deletion(h0)?;
        let flat = self.closure_of(&[h0])?;
        debug_assert_eq!(flat.closed_set().to_vec(), vec![h0]);
        let (restricted, trace) = self.restriction_with_trace(&flat)?;
        Ok(Triple {
            deleted,
            restricted,
            trace,
        })
    }

    /// Block-diagonal product: hyperplanes of each factor extended by the
    /// other factor's ambient space.
    pub fn product(&self, other: &Arrangement) -> Result<Arrangement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.conductor(),
                found: other.field.conductor(),
            });
        }
        let dim = self.dim + other.dim;
        let zero = self.field.zero();
        let mut hyperplanes = Vec::with_capacity(self.len() + other.len());
        for hp in &self.hyperplanes {
            let mut normal = hp.normal().to_vec();
            normal.resize(dim, zero.clone());
            hyperplanes.push(Hyperplane { normal });
        }
        for hp in &other.hyperplanes {
            let mut normal = vec![zero.clone(); self.dim];
            normal.extend_from_slice(hp.normal());
            hyperplanes.push(Hyperplane { normal });
        }
        Ok(Arrangement {
            dim,
            field: self.field.clone(),
            hyperplanes,
            label: None,
            lattice: OnceLock::new(),
        })
    }
}
