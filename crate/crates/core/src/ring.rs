//! Ambient ring descriptors: `Q[vars]`, optionally modulo relations.
//!
//! Quotient rings are handled uniformly by *lifting*: every submodule
//! computation over `Q[vars]/(relations)` silently appends the columns
//! `relation * e_i` for each ambient basis vector and then works over the
//! free polynomial ring. The descriptor here is the single place where that
//! convention is declared; the Groebner and syzygy layers apply it.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::poly::Polynomial;

#[derive(Debug)]
pub struct Ring {
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    /// Memoized reduced Groebner basis of the relation ideal (grevlex).
    relation_gb: OnceLock<Vec<Polynomial>>,
}

impl Ring {
    /// The free polynomial ring `Q[vars]`.
    pub fn polynomial_ring(vars: &[&str]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            relations: Vec::new(),
            relation_gb: OnceLock::new(),
        })
    }

    /// The quotient of a free polynomial ring by the given relations.
    pub fn quotient(base: &Arc<Ring>, relations: Vec<Polynomial>) -> Result<Arc<Ring>> {
        if !base.relations.is_empty() {
            return Err(EngineError::InvalidSpec(
                "iterated quotients are not supported; quotient a free polynomial ring".into(),
            ));
        }
        for r in &relations {
            if r.vars() != base.vars() {
                return Err(EngineError::InputMismatch(
                    "relation polynomial uses different variables than the base ring".into(),
                ));
            }
            if r.is_zero() {
                return Err(EngineError::InvalidSpec("zero relation".into()));
            }
        }
        Ok(Arc::new(Ring {
            vars: base.vars.clone(),
            relations,
            relation_gb: OnceLock::new(),
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_quotient(&self) -> bool {
        !self.relations.is_empty()
    }

    pub(crate) fn relation_gb_cell(&self) -> &OnceLock<Vec<Polynomial>> {
        &self.relation_gb
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.relations == other.relations
    }
}

impl Eq for Ring {}

/// Serializable description of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDto {
    pub vars: Vec<String>,
    pub relations: Vec<String>,
}

impl RingDto {
    pub fn from_ring(ring: &Ring) -> RingDto {
        RingDto {
            vars: ring.vars.clone(),
            relations: ring.relations.iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn to_ring(&self) -> Result<Arc<Ring>> {
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let base = Ring::polynomial_ring(&names);
        if self.relations.is_empty() {
            return Ok(base);
        }
        let rels = self
            .relations
            .iter()
            .map(|s| Polynomial::parse(&base, s))
            .collect::<Result<Vec<_>>>()?;
        Ring::quotient(&base, rels)
    }
}
