//! Buchberger's algorithm for submodules of free modules over `Q[vars]`,
//! with quotient-ring lifting and cofactor tracking.
//!
//! Conventions that make results canonical and reproducible:
//!
//! * the returned basis is *reduced*: leading terms are pairwise indivisible,
//!   no tail term of any element is divisible by another leading term;
//! * every element is monic (leading coefficient 1);
//! * elements are sorted ascending by leading term under the order.
//!
//! For submodules of free modules the product criterion is not valid, so
//! S-vectors are formed for every pair with equal leading position and
//! reduced fully.
//!
//! When the ambient ring is a quotient `Q[vars]/(relations)`, generators are
//! lifted by appending `relation * e_p` for every position `p`; all results
//! are then correct over the quotient ring.

use std::sync::Arc;

use num_rational::BigRational;


use crate::free::FreeElement;
use crate::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;

/// Remainder of `f` on division by `divisors`; optionally tracks the
/// quotients so that `f = sum_i q_i * divisors_i + remainder`.
fn divide_tracked(
    f: &FreeElement,
    divisors: &[FreeElement],
    order: MonomialOrder,
    track: bool,
) -> (FreeElement, Option<Vec<Polynomial>>) {
    let ring = f.ring().clone();
    let leads: Vec<Option<(usize, Monomial, BigRational)>> =
        divisors.iter().map(|d| d.leading_term(order)).collect();
    let mut work = f.clone();
    let mut rem = FreeElement::zero(&ring, f.rank());
    let mut quotients = if track {
        Some(vec![Polynomial::zero(&ring); divisors.len()])
    } else {
        None
    };
    while let Some((pos, mono, coeff)) = work.leading_term(order) {
        let hit = leads.iter().enumerate().find_map(|(t, lt)| {
            let (dpos, dmono, dcoeff) = lt.as_ref()?;
            if *dpos == pos && dmono.divides(&mono) {
                Some((t, mono.quotient(dmono).unwrap(), &coeff / dcoeff))
            } else {
                None
            }
        });
        match hit {
            Some((t, qmono, qcoeff)) => {
                work = work.sub(&divisors[t].mul_term(&qmono, &qcoeff));
                if let Some(q) = quotients.as_mut() {
                    q[t] = &q[t] + &Polynomial::term(&ring, qmono, qcoeff);
                }
            }
            None => {
                let term = FreeElement::single(
                    &ring,
                    work.rank(),
                    pos,
                    Polynomial::term(&ring, mono.clone(), coeff.clone()),
                );
                rem = rem.add(&term);
                work = work.sub(&term);
            }
        }
    }
    (rem, quotients)
}

/// Normal form of `f` with respect to a list of module elements.
pub fn normal_form(f: &FreeElement, basis: &[FreeElement], order: MonomialOrder) -> FreeElement {
    divide_tracked(f, basis, order, false).0
}

/// Normal form of a ring element modulo an ideal basis.
pub fn normal_form_poly(
    f: &Polynomial,
    basis: &[Polynomial],
    order: MonomialOrder,
) -> Polynomial {
    let ring = f.ring().clone();
    let fv = FreeElement::new(&ring, vec![f.clone()]);
    let bv: Vec<FreeElement> = basis
        .iter()
        .map(|b| FreeElement::new(&ring, vec![b.clone_into_ring(&ring)]))
        .collect();
    normal_form(&fv, &bv, order).coord(0).clone()
}

/// Reduce a polynomial modulo the relations of its ring (no-op for a free
/// polynomial ring). The relation Groebner basis is memoized on the ring.
pub fn reduce_mod_relations(f: &Polynomial) -> Polynomial {
    let ring = f.ring().clone();
    if !ring.is_quotient() {
        return f.clone();
    }
    let gb = ring.relation_gb_cell().get_or_init(|| {
        let rels: Vec<FreeElement> = ring
            .relations()
            .iter()
            .map(|r| FreeElement::new(r.ring(), vec![r.clone()]))
            .collect();
        let state = buchberger(rels, MonomialOrder::grevlex());
        let reduced = reduce_basis(state, MonomialOrder::grevlex());
        reduced.basis.iter().map(|b| b.coord(0).clone()).collect()
    });
    normal_form_poly(f, gb, MonomialOrder::grevlex())
}

/// True if every coordinate of `v` reduces to zero modulo the ring relations.
pub fn is_zero_mod_relations(v: &FreeElement) -> bool {
    v.coords().iter().all(|c| reduce_mod_relations(c).is_zero())
}

struct GbState {
    basis: Vec<FreeElement>,
    /// transforms[t][u]: basis[t] = sum_u transforms[t][u] * gens[u].
    transforms: Vec<Vec<Polynomial>>,
    gens: Vec<FreeElement>,
}

/// A reduced Groebner basis together with the generator list it came from
/// and cofactor data expressing each basis element in those generators.
#[derive(Debug)]
pub struct Gb {
    ring: Arc<Ring>,
    pub order: MonomialOrder,
    pub rank: usize,
    /// Reduced, monic basis, sorted ascending by leading term.
    pub basis: Vec<FreeElement>,
    /// The generators actually used: the caller's, then (for quotient rings)
    /// the lifted relation columns `relation * e_p`.
    pub gens: Vec<FreeElement>,
    /// Number of caller-supplied generators at the head of `gens`.
    pub user_gens: usize,
    transforms: Vec<Vec<Polynomial>>,
}

fn s_vector_data(
    a: &FreeElement,
    b: &FreeElement,
    order: MonomialOrder,
) -> Option<(Monomial, BigRational, Monomial, BigRational)> {
    let (pa, ma, ca) = a.leading_term(order)?;
    let (pb, mb, cb) = b.leading_term(order)?;
    if pa != pb {
        return None;
    }
    let lcm = ma.lcm(&mb);
    let qa = lcm.quotient(&ma).unwrap();
    let qb = lcm.quotient(&mb).unwrap();
    Some((qa, ca.recip(), qb, cb.recip()))
}

fn buchberger(gens: Vec<FreeElement>, order: MonomialOrder) -> GbState {
    let mut basis: Vec<FreeElement> = Vec::new();
    let mut transforms: Vec<Vec<Polynomial>> = Vec::new();
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .expect("buchberger needs at least one generator");
    let unit_row = |u: usize| {
        let mut row = vec![Polynomial::zero(&ring); gens.len()];
        row[u] = Polynomial::one(&ring);
        row
    };
    for (u, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        basis.push(g.clone());
        transforms.push(unit_row(u));
    }
    // Pair queue: (i, j) with i < j and equal leading positions.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add_pairs = |pairs: &mut Vec<(usize, usize)>, basis: &[FreeElement], t: usize| {
        let Some((pt, _, _)) = basis[t].leading_term(order) else {
            return;
        };
        for s in 0..t {
            if let Some((ps, _, _)) = basis[s].leading_term(order) {
                if ps == pt {
                    pairs.push((s, t));
                }
            }
        }
    };
    for t in 0..basis.len() {
        add_pairs(&mut pairs, &basis, t);
    }
    while !pairs.is_empty() {
        // Deterministic selection: smallest (lcm degree, lcm exponents, i, j).
        let key = |&(i, j): &(usize, usize)| {
            let (_, mi, _) = basis[i].leading_term(order).unwrap();
            let (_, mj, _) = basis[j].leading_term(order).unwrap();
            let l = mi.lcm(&mj);
            (l.total_degree(), l.0.clone(), i, j)
        };
        let best = (0..pairs.len()).min_by_key(|&k| key(&pairs[k])).unwrap();
        let (i, j) = pairs.swap_remove(best);
        let Some((qa, ca, qb, cb)) = s_vector_data(&basis[i], &basis[j], order) else {
            continue;
        };
        let s = basis[i]
            .mul_term(&qa, &ca)
            .sub(&basis[j].mul_term(&qb, &cb));
        if s.is_zero() {
            continue;
        }
        let (rem, quot) = divide_tracked(&s, &basis, order, true);
        if rem.is_zero() {
            continue;
        }
        let quot = quot.unwrap();
        let mut row = vec![Polynomial::zero(&ring); gens.len()];
        for u in 0..gens.len() {
            let s_part = &transforms[i][u].mul_term(&qa, &ca)
                - &transforms[j][u].mul_term(&qb, &cb);
            let mut acc = s_part;
            for (t, q) in quot.iter().enumerate() {
                if !q.is_zero() {
                    acc = &acc - &(q * &transforms[t][u]);
                }
            }
            row[u] = acc;
        }
        basis.push(rem);
        transforms.push(row);
        let t = basis.len() - 1;
        add_pairs(&mut pairs, &basis, t);
    }
    GbState { basis, transforms, gens }
}

/// Minimalize, tail-reduce, normalize, and sort a Groebner basis, keeping
/// the transforms in sync.
fn reduce_basis(state: GbState, order: MonomialOrder) -> Gb {
    let ring = state.gens[0].ring().clone();
    let GbState { basis, transforms, gens } = state;
    // Sort indices ascending by leading term; divisibility implies
    // order-smaller, so one sweep suffices for minimalization.
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| {
        let (pa, ma, _) = basis[a].leading_term(order).unwrap();
        let (pb, mb, _) = basis[b].leading_term(order).unwrap();
        order.cmp_terms((pa, &ma), (pb, &mb)).then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for &t in &idx {
        let (pt, mt, _) = basis[t].leading_term(order).unwrap();
        let dominated = kept.iter().any(|&s| {
            let (ps, ms, _) = basis[s].leading_term(order).unwrap();
            ps == pt && ms.divides(&mt)
        });
        if !dominated {
            kept.push(t);
        }
    }
    // Tail-reduce each kept element against the others and make it monic.
    // Leading terms are pairwise indivisible after minimalization, so the
    // division only rewrites tails and the leading term is preserved.
    let mut out_basis = Vec::with_capacity(kept.len());
    let mut out_tf = Vec::with_capacity(kept.len());
    for (k, &t) in kept.iter().enumerate() {
        let other_idx: Vec<usize> = kept
            .iter()
            .enumerate()
            .filter(|&(k2, _)| k2 != k)
            .map(|(_, &s)| s)
            .collect();
        let others: Vec<FreeElement> = other_idx.iter().map(|&s| basis[s].clone()).collect();
        let (rem, quot) = divide_tracked(&basis[t], &others, order, true);
        let quot = quot.unwrap();
        let mut row: Vec<Polynomial> = transforms[t].clone();
        for (q, &s) in quot.iter().zip(&other_idx) {
            if q.is_zero() {
                continue;
            }
            for (u, c) in row.iter_mut().enumerate() {
                let tu = &transforms[s][u];
                if !tu.is_zero() {
                    *c = &*c - &(q * tu);
                }
            }
        }
        let (_, _, lc) = rem.leading_term(order).unwrap();
        let inv = lc.recip();
        out_basis.push(rem.scale(&inv));
        out_tf.push(row.iter().map(|p| p.scale(&inv)).collect::<Vec<_>>());
    }
    // Final deterministic sort ascending by leading term.
    let mut order_idx: Vec<usize> = (0..out_basis.len()).collect();
    order_idx.sort_by(|&a, &b| {
        let (pa, ma, _) = out_basis[a].leading_term(order).unwrap();
        let (pb, mb, _) = out_basis[b].leading_term(order).unwrap();
        order.cmp_terms((pa, &ma), (pb, &mb))
    });
    let basis: Vec<FreeElement> = order_idx.iter().map(|&i| out_basis[i].clone()).collect();
    let transforms: Vec<Vec<Polynomial>> =
        order_idx.iter().map(|&i| out_tf[i].clone()).collect();
    let rank = basis.first().map_or_else(|| gens[0].rank(), |b| b.rank());
    Gb {
        ring,
        order,
        rank,
        basis,
        user_gens: gens.len(),
        gens,
        transforms,
    }
}

/// Append `relation * e_p` columns for a quotient ring.
fn lift_generators(
    ring: &Arc<Ring>,
    gens: &[FreeElement],
    rank: usize,
) -> (Vec<FreeElement>, usize) {
    let mut all: Vec<FreeElement> = Vec::with_capacity(gens.len());
    for g in gens {
        assert_eq!(g.rank(), rank, "generator rank mismatch");
        all.push(g.clone());
    }
    let user = all.len();
    for rel in ring.relations() {
        for p in 0..rank {
            all.push(FreeElement::single(ring, rank, p, rel.clone()));
        }
    }
    (all, user)
}

/// Reduced Groebner basis of the submodule of `R^rank` generated by `gens`
/// (plus, for quotient rings, the implicit relation columns).
pub fn groebner_basis(
    ring: &Arc<Ring>,
    gens: &[FreeElement],
    rank: usize,
    order: MonomialOrder,
) -> Gb {
    let (all, user) = lift_generators(ring, gens, rank);
    if all.iter().all(|g| g.is_zero()) {
        return Gb {
            ring: ring.clone(),
            order,
            rank,
            basis: Vec::new(),
            gens: all,
            user_gens: user,
            transforms: Vec::new(),
        };
    }
    let state = buchberger(all, order);
    let mut gb = reduce_basis(state, order);
    gb.rank = rank;
    gb.user_gens = user;
    gb
}

/// Reduced Groebner basis of an ideal, via the rank-1 module.
pub fn ideal_basis(ring: &Arc<Ring>, gens: &[Polynomial], order: MonomialOrder) -> Gb {
    let elems: Vec<FreeElement> = gens
        .iter()
        .map(|g| FreeElement::new(ring, vec![g.clone_into_ring(ring)]))
        .collect();
    groebner_basis(ring, &elems, 1, order)
}

impl Gb {
    pub fn ring(&self) -> Arc<Ring> {
        self.ring.clone()
    }

    pub fn normal_form(&self, f: &FreeElement) -> FreeElement {
        normal_form(f, &self.basis, self.order)
    }

    pub fn contains(&self, f: &FreeElement) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Cofactors of `f` over `self.gens`: `f = sum_u c_u * gens[u]`.
    /// Returns `None` when `f` is not in the submodule.
    pub fn lift(&self, f: &FreeElement) -> Option<Vec<Polynomial>> {
        let ring = self.ring();
        let (rem, quot) = divide_tracked(f, &self.basis, self.order, true);
        if !rem.is_zero() {
            return None;
        }
        let quot = quot.unwrap();
        let mut out = vec![Polynomial::zero(&ring); self.gens.len()];
        for (t, q) in quot.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (u, c) in out.iter_mut().enumerate() {
                let tu = &self.transforms[t][u];
                if !tu.is_zero() {
                    *c = &*c + &(q * tu);
                }
            }
        }
        Some(out)
    }

    /// Leading terms of the basis, for inspection and tests.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.basis
            .iter()
            .map(|b| {
                let (p, m, _) = b.leading_term(self.order).unwrap();
                (p, m)
            })
            .collect()
    }
}

/// Buchberger's criterion holds: every S-vector of same-position pairs
/// reduces to zero against the basis.
pub fn is_groebner(basis: &[FreeElement], order: MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if let Some((qa, ca, qb, cb)) = s_vector_data(&basis[i], &basis[j], order) {
                let s = basis[i]
                    .mul_term(&qa, &ca)
                    .sub(&basis[j].mul_term(&qb, &cb));
                if !normal_form(&s, basis, order).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ring2() -> Arc<Ring> {
        Ring::polynomial_ring(&["x", "y"])
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn jacobian_ideal_of_nodal_chart_is_maximal_ideal() {
        let r = ring2();
        let gens = [p(&r, "-2y"), p(&r, "3x^2 + 2x"), p(&r, "x^3 + x^2 - y^2")];
        let gb = ideal_basis(&r, &gens, MonomialOrder::grevlex());
        let strings: Vec<String> =
            gb.basis.iter().map(|b| b.coord(0).to_string()).collect();
        assert_eq!(strings, vec!["y", "x"]);
        assert!(is_groebner(&gb.basis, gb.order));
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let r = ring2();
        let gens = [p(&r, "x y"), p(&r, "x + y")];
        let gb = ideal_basis(&r, &gens, MonomialOrder::grevlex());
        let strings: Vec<String> =
            gb.basis.iter().map(|b| b.coord(0).to_string()).collect();
        assert_eq!(strings, vec!["x + y", "y^2"]);
        // Same ideal from permuted, rescaled generators gives the same basis.
        let gens2 = [p(&r, "7x + 7y"), p(&r, "-3x y")];
        let gb2 = ideal_basis(&r, &gens2, MonomialOrder::grevlex());
        let strings2: Vec<String> =
            gb2.basis.iter().map(|b| b.coord(0).to_string()).collect();
        assert_eq!(strings, strings2);
        // The raw generators are not a Groebner basis; the reduced one is.
        let raw: Vec<FreeElement> = gens
            .iter()
            .map(|g| FreeElement::new(&r, vec![g.clone()]))
            .collect();
        assert!(!is_groebner(&raw, MonomialOrder::grevlex()));
    }

    #[test]
    fn normal_form_against_plane_curve() {
        let r = ring2();
        let w = p(&r, "x^3 + x^2 - y^2");
        let f = p(&r, "x^3 + x^2");
        let nf = normal_form_poly(&f, &[w], MonomialOrder::grevlex());
        assert_eq!(nf, p(&r, "y^2"));
    }

    #[test]
    fn lift_expresses_members_in_generators() {
        let r = ring2();
        let gens = [p(&r, "x y"), p(&r, "x + y")];
        let gb = ideal_basis(&r, &gens, MonomialOrder::grevlex());
        // y^2 = (x + y) y - x y is in the ideal.
        let f = FreeElement::new(&r, vec![p(&r, "y^2")]);
        let cof = gb.lift(&f).expect("member must lift");
        assert_eq!(cof.len(), gb.gens.len());
        let mut acc = FreeElement::zero(&r, 1);
        for (c, g) in cof.iter().zip(&gb.gens) {
            acc = acc.add(&g.scale_poly(c));
        }
        assert_eq!(acc, f);
        // A non-member does not lift.
        let g = FreeElement::new(&r, vec![p(&r, "x")]);
        assert!(gb.lift(&g).is_none());
    }

    #[test]
    fn quotient_ring_lifting_adds_relation_columns() {
        let base = ring2();
        let w = p(&base, "x^3 + x^2 - y^2");
        let q = Ring::quotient(&base, vec![w]).unwrap();
        // Over R = Q[x,y]/(w) the partials already generate (x, y):
        let gens = [p(&base, "-2y").clone_into_ring(&q), p(&base, "3x^2 + 2x").clone_into_ring(&q)];
        let gb = ideal_basis(&q, &gens, MonomialOrder::grevlex());
        let strings: Vec<String> =
            gb.basis.iter().map(|b| b.coord(0).to_string()).collect();
        assert_eq!(strings, vec!["y", "x"]);
        assert_eq!(gb.user_gens, 2);
        assert_eq!(gb.gens.len(), 3);
    }

    #[test]
    fn reduce_mod_relations_memoized() {
        let base = ring2();
        let w = p(&base, "x^3 + x^2 - y^2");
        let q = Ring::quotient(&base, vec![w]).unwrap();
        let f = p(&base, "x^3 + x^2").clone_into_ring(&q);
        assert_eq!(reduce_mod_relations(&f), p(&base, "y^2").clone_into_ring(&q));
        let g = p(&base, "x^3 + x^2 - y^2").clone_into_ring(&q);
        assert!(reduce_mod_relations(&g).is_zero());
        // Free ring: identity.
        let h = p(&base, "x^3");
        assert_eq!(reduce_mod_relations(&h), h);
    }

    #[test]
    fn module_basis_with_positions() {
        let r = ring2();
        // Submodule of R^2 generated by (x, y) and (y, x).
        let g1 = FreeElement::new(&r, vec![p(&r, "x"), p(&r, "y")]);
        let g2 = FreeElement::new(&r, vec![p(&r, "y"), p(&r, "x")]);
        let gb = groebner_basis(&r, &[g1.clone(), g2.clone()], 2, MonomialOrder::grevlex());
        assert!(is_groebner(&gb.basis, gb.order));
        for b in &gb.basis {
            let (_, _, lc) = b.leading_term(gb.order).unwrap();
            assert!(lc.is_one(), "basis must be monic");
        }
        // Membership: x*g1 + y*g2 reduces to zero.
        let member = g1.scale_poly(&p(&r, "x")).add(&g2.scale_poly(&p(&r, "y")));
        assert!(gb.contains(&member));
    }
}
