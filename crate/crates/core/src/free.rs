//! Elements of finite free modules `R^rank` with polynomial coordinates.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial};
use crate::ring::Ring;

/// An element of `R^rank`, stored as a dense vector of sparse polynomials.
/// Positions are indexed from 0; the term order convention is `e_0 > e_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    ring: Arc<Ring>,
    coords: Vec<Polynomial>,
}

impl FreeElement {
    pub fn new(ring: &Arc<Ring>, coords: Vec<Polynomial>) -> FreeElement {
        for c in &coords {
            assert_eq!(c.vars(), ring.vars(), "coordinate from a different ring");
        }
        FreeElement { ring: ring.clone(), coords }
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> FreeElement {
        FreeElement {
            ring: ring.clone(),
            coords: (0..rank).map(|_| Polynomial::zero(ring)).collect(),
        }
    }

    /// The standard basis vector `e_pos`.
    pub fn unit(ring: &Arc<Ring>, rank: usize, pos: usize) -> FreeElement {
        assert!(pos < rank);
        let mut v = FreeElement::zero(ring, rank);
        v.coords[pos] = Polynomial::one(ring);
        v
    }

    /// `p * e_pos`.
    pub fn single(ring: &Arc<Ring>, rank: usize, pos: usize, p: Polynomial) -> FreeElement {
        assert!(pos < rank);
        let mut v = FreeElement::zero(ring, rank);
        v.coords[pos] = p.clone_into_ring(ring);
        v
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeElement {
            ring: self.ring.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeElement {
            ring: self.ring.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> FreeElement {
        FreeElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> FreeElement {
        FreeElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> FreeElement {
        FreeElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiply by a single ring term `c * mono`.
    pub fn mul_term(&self, mono: &Monomial, c: &BigRational) -> FreeElement {
        FreeElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|p| p.mul_term(mono, c)).collect(),
        }
    }

    /// All terms as `(position, monomial, coefficient)` triples.
    pub fn iter_terms(&self) -> impl Iterator<Item = (usize, &Monomial, &BigRational)> {
        self.coords
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(m, c)| (i, m, c)))
    }

    /// Leading term under a module order: the maximal `(position, monomial)`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(usize, Monomial, BigRational)> {
        let mut best: Option<(usize, &Monomial, &BigRational)> = None;
        for (i, m, c) in self.iter_terms() {
            debug_assert!(!c.is_zero());
            best = match best {
                None => Some((i, m, c)),
                Some(b) => {
                    if order.cmp_terms((i, m), (b.0, b.1)) == std::cmp::Ordering::Greater {
                        Some((i, m, c))
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.map(|(i, m, c)| (i, m.clone(), c.clone()))
    }

    /// Concatenate coordinates: `self ⊕ other`.
    pub fn concat(&self, other: &FreeElement) -> FreeElement {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        FreeElement { ring: self.ring.clone(), coords }
    }

    /// The sub-element on coordinate range `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> FreeElement {
        FreeElement {
            ring: self.ring.clone(),
            coords: self.coords[start..end].to_vec(),
        }
    }

    /// Pad with zero coordinates up to `rank`.
    pub fn pad_to(&self, rank: usize) -> FreeElement {
        assert!(rank >= self.rank());
        let mut coords = self.coords.clone();
        while coords.len() < rank {
            coords.push(Polynomial::zero(&self.ring));
        }
        FreeElement { ring: self.ring.clone(), coords }
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}
