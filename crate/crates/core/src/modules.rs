//! Module-level algebra: maps between free modules, syzygies via block
//! elimination, preimage modules, and dimension counting over Q.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{EngineError, Result};
use crate::free::FreeElement;
use crate::groebner::{self, Gb};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;

/// The Q-dimension of a module: a finite number or infinite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Dim::Finite(n) => Some(*n),
            Dim::Infinite => None,
        }
    }

    pub fn expect_finite(&self, what: &str) -> Result<u64> {
        self.finite()
            .ok_or_else(|| EngineError::InfiniteDimension(what.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Dim::Finite(0))
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n),
            Dim::Infinite => s.serialize_str("inf"),
        }
    }
}

impl From<u64> for Dim {
    fn from(n: u64) -> Dim {
        Dim::Finite(n)
    }
}

/// An `R`-linear map `R^cols -> R^rows` given by a polynomial matrix,
/// stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl ModuleMap {
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> ModuleMap {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let entries = entries
            .into_iter()
            .map(|p| p.clone_into_ring(ring))
            .collect();
        ModuleMap { ring: ring.clone(), rows, cols, entries }
    }

    pub fn zero(ring: &Arc<Ring>, rows: usize, cols: usize) -> ModuleMap {
        ModuleMap {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> ModuleMap {
        let mut m = ModuleMap::zero(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    pub fn from_columns(ring: &Arc<Ring>, rows: usize, columns: &[FreeElement]) -> ModuleMap {
        let cols = columns.len();
        let mut entries = vec![Polynomial::zero(ring); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.rank(), rows, "column rank mismatch");
            for i in 0..rows {
                entries[i * cols + j] = c.coord(i).clone_into_ring(ring);
            }
        }
        ModuleMap { ring: ring.clone(), rows, cols, entries }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> FreeElement {
        FreeElement::new(
            &self.ring,
            (0..self.rows).map(|i| self.entry(i, j).clone()).collect(),
        )
    }

    pub fn columns(&self) -> Vec<FreeElement> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, v: &FreeElement) -> FreeElement {
        assert_eq!(v.rank(), self.cols, "vector rank mismatch");
        let coords = (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for j in 0..self.cols {
                    let e = self.entry(i, j);
                    if !e.is_zero() && !v.coord(j).is_zero() {
                        acc = &acc + &(e * &v.coord(j).clone_into_ring(&self.ring));
                    }
                }
                acc
            })
            .collect();
        FreeElement::new(&self.ring, coords)
    }

    /// `self ∘ first` as a matrix product.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(self.cols, first.rows, "composition rank mismatch");
        let mut entries = vec![Polynomial::zero(&self.ring); self.rows * first.cols];
        for i in 0..self.rows {
            for j in 0..first.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    let b = first.entry(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * &b.clone_into_ring(&self.ring));
                    }
                }
                entries[i * first.cols + j] = acc;
            }
        }
        ModuleMap { ring: self.ring.clone(), rows: self.rows, cols: first.cols, entries }
    }

    pub fn is_zero_identically(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_zero_mod_relations(&self) -> bool {
        self.entries
            .iter()
            .all(|e| groebner::reduce_mod_relations(e).is_zero())
    }

    /// Maximal total degree among the entries (`None` for the zero map).
    pub fn max_entry_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(|e| e.total_degree()).max()
    }
}

/// Core elimination routine: generators of
/// `{ a in R^s : sum_j a_j * primary_j  ∈  span(secondary) + relations }`
/// where `primary` has `s` columns inside `R^target_rank`.
///
/// Each primary column is augmented with a fresh unit coordinate; a Groebner
/// basis under a block order that makes every target coordinate outrank every
/// auxiliary coordinate is computed; basis elements supported purely on the
/// auxiliary block are exactly the generators sought. Auxiliary parts that
/// vanish modulo the ring relations are dropped (they generate nothing).
fn eliminate(
    ring: &Arc<Ring>,
    primary: &[FreeElement],
    secondary: &[FreeElement],
    target_rank: usize,
) -> Vec<FreeElement> {
    let s = primary.len();
    if s == 0 {
        return Vec::new();
    }
    let aug_rank = target_rank + s;
    let mut gens: Vec<FreeElement> = Vec::with_capacity(s + secondary.len());
    for (j, c) in primary.iter().enumerate() {
        assert_eq!(c.rank(), target_rank, "primary column rank mismatch");
        gens.push(c.concat(&FreeElement::unit(ring, s, j)));
    }
    for b in secondary {
        assert_eq!(b.rank(), target_rank, "secondary column rank mismatch");
        gens.push(b.pad_to(aug_rank));
    }
    let gb = groebner::groebner_basis(ring, &gens, aug_rank, MonomialOrder::elimination(target_rank));
    let mut out = Vec::new();
    for b in &gb.basis {
        if b.slice(0, target_rank).is_zero() {
            let tail = b.slice(target_rank, aug_rank);
            if !groebner::is_zero_mod_relations(&tail) {
                out.push(tail);
            }
        }
    }
    out
}

/// Generators of the syzygy module `{ a : m * a = 0 }` over the map's ring
/// (relations included when the ring is a quotient). The result is a map
/// `R^k -> R^cols` whose image is the kernel of `m`.
pub fn syzygies(m: &ModuleMap) -> ModuleMap {
    let gens = eliminate(m.ring(), &m.columns(), &[], m.rows());
    ModuleMap::from_columns(m.ring(), m.cols(), &gens)
}

/// Generators of the preimage module `{ a : k * a ∈ im(b) + relations }`.
pub fn preimage_module(k: &ModuleMap, b: &ModuleMap) -> ModuleMap {
    assert_eq!(k.rows(), b.rows(), "target rank mismatch");
    let gens = eliminate(k.ring(), &k.columns(), &b.columns(), k.rows());
    ModuleMap::from_columns(k.ring(), k.cols(), &gens)
}

/// Standard monomials of `R^rank / (leading terms of gb)`: the monomial basis
/// of the quotient as a Q-vector space, or `None` if it is infinite
/// dimensional. Sorted by position, then ascending ring order.
pub fn standard_monomials(gb: &Gb, rank: usize) -> Option<Vec<(usize, Monomial)>> {
    let ring = gb.ring();
    let nvars = ring.nvars();
    let leads = gb.leading_terms();
    let mut out = Vec::new();
    for p in 0..rank {
        let pos_leads: Vec<&Monomial> =
            leads.iter().filter(|(q, _)| *q == p).map(|(_, m)| m).collect();
        // A finite box requires a pure power of every variable among the
        // leading monomials at this position.
        let mut bounds = Vec::with_capacity(nvars);
        for v in 0..nvars {
            let bound = pos_leads
                .iter()
                .filter(|m| {
                    m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0)
                })
                .map(|m| m.0[v])
                .min();
            match bound {
                Some(b) => bounds.push(b),
                None => return None,
            }
        }
        // Enumerate the box 0 <= e_i < bounds[i]; standard monomials must
        // lie inside it since each x_i^bounds[i] is a leading monomial.
        let mut box_monos: Vec<Monomial> = Vec::new();
        if bounds.iter().all(|&b| b > 0) {
            let mut exps = vec![0u32; nvars];
            'enumerate: loop {
                box_monos.push(Monomial(exps.clone()));
                for i in 0..nvars {
                    exps[i] += 1;
                    if exps[i] < bounds[i] {
                        continue 'enumerate;
                    }
                    exps[i] = 0;
                }
                break;
            }
        }
        for m in box_monos {
            if !pos_leads.iter().any(|l| l.divides(&m)) {
                out.push((p, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| gb.order.ring.cmp(&a.1, &b.1)));
    Some(out)
}

/// Q-dimension of `R^rank / (column span of relations + ring relations)`.
pub fn quotient_dimension(relations: &ModuleMap) -> Dim {
    let gb = groebner::groebner_basis(
        relations.ring(),
        &relations.columns(),
        relations.rows(),
        MonomialOrder::grevlex(),
    );
    match standard_monomials(&gb, relations.rows()) {
        Some(b) => Dim::Finite(b.len() as u64),
        None => Dim::Infinite,
    }
}

/// A finitely presented module `R^ambient_rank / im(relations)`, with the
/// ring relations always implicitly included.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<Ring>,
    ambient_rank: usize,
    relations: ModuleMap,
    rel_gb: std::sync::Arc<Gb>,
}

impl PresentedModule {
    pub fn new(relations: ModuleMap) -> PresentedModule {
        let ring = relations.ring().clone();
        let ambient_rank = relations.rows();
        let rel_gb = std::sync::Arc::new(groebner::groebner_basis(
            &ring,
            &relations.columns(),
            ambient_rank,
            MonomialOrder::grevlex(),
        ));
        PresentedModule { ring, ambient_rank, relations, rel_gb }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &ModuleMap {
        &self.relations
    }

    pub fn dimension(&self) -> Dim {
        match standard_monomials(&self.rel_gb, self.ambient_rank) {
            Some(b) => Dim::Finite(b.len() as u64),
            None => Dim::Infinite,
        }
    }

    /// Monomial basis of the quotient, if finite dimensional.
    pub fn standard_basis(&self) -> Option<Vec<(usize, Monomial)>> {
        standard_monomials(&self.rel_gb, self.ambient_rank)
    }

    /// Canonical representative of the class of `v`.
    pub fn reduce(&self, v: &FreeElement) -> FreeElement {
        self.rel_gb.normal_form(v)
    }

    pub fn is_zero_class(&self, v: &FreeElement) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of the class of `v` in the standard-monomial basis.
    /// Fails with `InfiniteDimension` when the module is not finite.
    pub fn coordinates(&self, v: &FreeElement) -> Result<Vec<num_rational::BigRational>> {
        let basis = self
            .standard_basis()
            .ok_or_else(|| EngineError::InfiniteDimension("presented module".into()))?;
        let red = self.reduce(v);
        let mut coords = vec![num_rational::BigRational::from_integer(0.into()); basis.len()];
        'terms: for (pos, mono, coeff) in red.iter_terms() {
            for (k, (bp, bm)) in basis.iter().enumerate() {
                if *bp == pos && bm == mono {
                    coords[k] = coeff.clone();
                    continue 'terms;
                }
            }
            return Err(EngineError::InputMismatch(
                "reduced representative contains a non-standard monomial".into(),
            ));
        }
        Ok(coords)
    }
}
