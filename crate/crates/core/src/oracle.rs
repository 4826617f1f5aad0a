//! Independent truncated-degree verification oracle.
//!
//! Everything in this module is deliberately computed by *dense exact linear
//! algebra on monomial-indexed vectors*, never by Groebner bases or
//! syzygies, so it can serve as an independent cross-check of that pipeline.
//!
//! The model: restrict each free module `R^rank` to the finite-dimensional
//! slice `V_d` spanned by `monomial * e_p` with `deg <= d`. Cycles are the
//! vectors of `V_d` whose image lies in the span of relation multiples;
//! boundaries are images of the previous differential on a slightly deeper
//! slice (`d + SLACK`), plus relation multiples, intersected back with
//! `V_d`. For `d` comfortably above the degrees of all generators involved,
//! `dim Z - dim B` agrees with the true homology dimension whenever the
//! latter is finite.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::ChainComplex;
use crate::free::FreeElement;
use crate::matrix::QMatrix;
use crate::modules::ModuleMap;
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;

/// Extra depth used on the boundary side so that inhomogeneous cancellation
/// across the truncation boundary is captured.
pub const ORACLE_SLACK: u32 = 4;

/// Truncation degree for oracle checks. Overridable through the
/// `HNCURVES_ORACLE_DEGREE` environment variable; defaults to 8.
pub fn truncation_degree() -> u32 {
    std::env::var("HNCURVES_ORACLE_DEGREE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}

/// All monomials of total degree at most `d`, ordered by (degree, exponents).
fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    if nvars > 0 {
        let mut frontier = out.clone();
        for _ in 0..d {
            let mut next = Vec::new();
            for m in &frontier {
                // Extend only at or after the last nonzero slot to avoid
                // duplicates.
                let start = m
                    .0
                    .iter()
                    .rposition(|&e| e > 0)
                    .unwrap_or(0);
                for v in start..nvars {
                    let mut e = m.0.clone();
                    e[v] += 1;
                    next.push(Monomial(e));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
    }
    out.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| b.0.cmp(&a.0)));
    out
}

/// The finite slice `V_d` of `R^rank`: basis vectors `mono * e_pos` indexed
/// position-major.
struct Trunc {
    rank: usize,
    monos: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl Trunc {
    fn new(nvars: usize, rank: usize, d: u32) -> Trunc {
        let monos = monomials_up_to(nvars, d);
        let index = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Trunc { rank, monos, index }
    }

    fn dim(&self) -> usize {
        self.rank * self.monos.len()
    }

    fn slot(&self, pos: usize, mono: &Monomial) -> usize {
        pos * self.monos.len() + self.index[mono]
    }

    fn to_vec(&self, v: &FreeElement) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (pos, mono, coeff) in v.iter_terms() {
            out[self.slot(pos, mono)] = coeff.clone();
        }
        out
    }

    fn from_vec(&self, ring: &Arc<Ring>, v: &[BigRational]) -> FreeElement {
        let n = self.monos.len();
        let coords = (0..self.rank)
            .map(|p| {
                Polynomial::from_terms(
                    ring,
                    (0..n).filter_map(|i| {
                        let c = &v[p * n + i];
                        if c.is_zero() {
                            None
                        } else {
                            Some((self.monos[i].clone(), c.clone()))
                        }
                    }),
                )
            })
            .collect();
        FreeElement::new(ring, coords)
    }
}

/// All vectors `u * relation * e_p` of degree at most `d`, as rows.
fn relation_rows(ring: &Arc<Ring>, trunc: &Trunc, d: u32) -> Vec<Vec<BigRational>> {
    let mut rows = Vec::new();
    for rel in ring.relations() {
        let rdeg = rel.total_degree().expect("relations are nonzero");
        if rdeg > d {
            continue;
        }
        for u in monomials_up_to(ring.nvars(), d - rdeg) {
            for p in 0..trunc.rank {
                let v = FreeElement::single(
                    ring,
                    trunc.rank,
                    p,
                    rel.mul_term(&u, &BigRational::from_integer(1.into())),
                );
                rows.push(trunc.to_vec(&v));
            }
        }
    }
    rows
}

/// Coefficient-vector basis of `{ v in V_d : m(v) ∈ relation span }`.
fn cycle_vectors(m: &ModuleMap, d: u32) -> (Trunc, Vec<Vec<BigRational>>) {
    let ring = m.ring();
    let nvars = ring.nvars();
    let e = m.max_entry_degree().unwrap_or(0);
    let src = Trunc::new(nvars, m.cols(), d);
    let tgt = Trunc::new(nvars, m.rows(), d + e);
    let wrows = relation_rows(ring, &tgt, d + e);
    let (w, pivots) = if wrows.is_empty() {
        (None, Vec::new())
    } else {
        let mut w = QMatrix::from_rows(wrows);
        let piv = w.rref();
        (Some(w), piv)
    };
    // Columns of A are reduced images of the source basis vectors.
    let mut a = QMatrix::zeros(tgt.dim(), src.dim());
    let one = BigRational::from_integer(1.into());
    for p in 0..m.cols() {
        let col = m.column(p);
        for (k, u) in src.monos.iter().enumerate() {
            let img = col.mul_term(u, &one);
            let mut vec = tgt.to_vec(&img);
            if let Some(wm) = &w {
                wm.reduce_vector(&pivots, &mut vec);
            }
            let j = p * src.monos.len() + k;
            for (i, c) in vec.into_iter().enumerate() {
                if !c.is_zero() {
                    *a.at_mut(i, j) = c;
                }
            }
        }
    }
    let ns = a.nullspace();
    (src, ns)
}

/// Basis of the truncated kernel of `m` (cycles modulo nothing), as module
/// elements. Computed with dense linear algebra only.
pub fn kernel_basis(m: &ModuleMap, d: u32) -> Vec<FreeElement> {
    let (src, ns) = cycle_vectors(m, d);
    let ring = m.ring();
    ns.iter().map(|v| src.from_vec(ring, v)).collect()
}

/// Dimension of `span(rows) ∩ { vectors supported on monomials of degree <= d }`,
/// where the rows live in a `Trunc` of degree `dbig >= d`.
fn low_block_dimension(trunc: &Trunc, rows: Vec<Vec<BigRational>>, d: u32) -> usize {
    if rows.is_empty() {
        return 0;
    }
    // Put coordinates with monomial degree > d first.
    let n = trunc.monos.len();
    let mut high = Vec::new();
    let mut low = Vec::new();
    for p in 0..trunc.rank {
        for (k, mono) in trunc.monos.iter().enumerate() {
            let idx = p * n + k;
            if mono.total_degree() > d {
                high.push(idx);
            } else {
                low.push(idx);
            }
        }
    }
    let h = high.len();
    let permuted: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| {
            high.iter()
                .chain(low.iter())
                .map(|&i| r[i].clone())
                .collect()
        })
        .collect();
    let mut m = QMatrix::from_rows(permuted);
    let pivots = m.rref();
    pivots.iter().filter(|&&c| c >= h).count()
}

/// Oracle homology dimension of `c` at degree `i`, truncated at degree `d`.
pub fn homology_dimension(c: &ChainComplex, i: i64, d: u32) -> u64 {
    let n = c.rank_at(i);
    if n == 0 {
        return 0;
    }
    let ring = c.ring();
    let nvars = ring.nvars();
    let zdim = match c.map_at(i) {
        Some(m) => cycle_vectors(m, d).1.len(),
        None => Trunc::new(nvars, n, d).dim(),
    };
    // Boundary side: images of a deeper slice plus relation multiples,
    // intersected with V_d.
    let e_in = c.map_at(i - 1).and_then(|m| m.max_entry_degree()).unwrap_or(0);
    let dbig = d + ORACLE_SLACK + e_in;
    let tgt = Trunc::new(nvars, n, dbig);
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    if let Some(d_in) = c.map_at(i - 1) {
        let src2 = Trunc::new(nvars, d_in.cols(), d + ORACLE_SLACK);
        let one = BigRational::from_integer(1.into());
        for p in 0..d_in.cols() {
            let col = d_in.column(p);
            for u in &src2.monos {
                rows.push(tgt.to_vec(&col.mul_term(u, &one)));
            }
        }
    }
    rows.extend(relation_rows(ring, &tgt, dbig));
    let bdim = low_block_dimension(&tgt, rows, d);
    assert!(
        zdim >= bdim,
        "oracle inconsistency: boundary dimension exceeds cycle dimension"
    );
    (zdim - bdim) as u64
}
