//! Cohomologically indexed chain complexes, homology as presented modules,
//! chain maps with induced maps on homology, and JSON serialization.
//!
//! A complex stores modules `C_i` for `i` in a contiguous degree window and
//! differentials `d_i : C_i -> C_{i+1}`. Construction verifies `d ∘ d = 0`
//! modulo the ring relations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::free::FreeElement;
use crate::groebner::{self, Gb};
use crate::matrix::QMatrix;
use crate::modules::{preimage_module, syzygies, Dim, ModuleMap, PresentedModule};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingDto};

#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    ring: Arc<Ring>,
    lo: i64,
    ranks: Vec<usize>,
    maps: Vec<ModuleMap>,
}

impl ChainComplex {
    /// Build and validate a complex. `maps[j]` is the differential
    /// `C_{lo+j} -> C_{lo+j+1}`; there is one fewer map than ranks.
    pub fn new(
        ring: &Arc<Ring>,
        lo: i64,
        ranks: Vec<usize>,
        maps: Vec<ModuleMap>,
    ) -> Result<ChainComplex> {
        if ranks.is_empty() {
            return Err(EngineError::InputMismatch("complex needs at least one degree".into()));
        }
        if maps.len() + 1 != ranks.len() {
            return Err(EngineError::InputMismatch(format!(
                "expected {} differentials for {} degrees, got {}",
                ranks.len() - 1,
                ranks.len(),
                maps.len()
            )));
        }
        for (j, m) in maps.iter().enumerate() {
            if m.cols() != ranks[j] || m.rows() != ranks[j + 1] {
                return Err(EngineError::InputMismatch(format!(
                    "differential at degree {} has shape {}x{}, expected {}x{}",
                    lo + j as i64,
                    m.rows(),
                    m.cols(),
                    ranks[j + 1],
                    ranks[j]
                )));
            }
        }
        for j in 0..maps.len().saturating_sub(1) {
            let dd = maps[j + 1].compose(&maps[j]);
            if !dd.is_zero_mod_relations() {
                return Err(EngineError::NotAComplex(format!(
                    "d∘d does not vanish at degree {}",
                    lo + j as i64
                )));
            }
        }
        Ok(ChainComplex { ring: ring.clone(), lo, ranks, maps })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn rank_at(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// The differential leaving degree `i`, if stored.
    pub fn map_at(&self, i: i64) -> Option<&ModuleMap> {
        if i < self.lo || i >= self.hi() {
            None
        } else {
            Some(&self.maps[(i - self.lo) as usize])
        }
    }

    pub fn to_json(&self) -> String {
        let dto = ComplexDto::from_complex(self);
        serde_json::to_string_pretty(&dto).expect("serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<ChainComplex> {
        let dto: ComplexDto =
            serde_json::from_str(s).map_err(|e| EngineError::Parse(e.to_string()))?;
        dto.to_complex()
    }
}

/// Homology of a complex at one degree, presented as standard-monomial data
/// over the cycle generators.
pub struct HomologyModule {
    degree: i64,
    ambient_rank: usize,
    /// Generators of the cycle module `ker d_i` (over the ring, relations
    /// included). Empty when the degree is outside the complex.
    cycles: Vec<FreeElement>,
    /// Groebner basis of `span(cycles) + span(boundaries)` with cofactor
    /// tracking, used to express cycles in the `cycles` generators.
    class_gb: Gb,
    /// `R^{#cycles} / N` where `N = { a : sum a_j cycle_j ∈ boundaries }`.
    presentation: PresentedModule,
}

impl HomologyModule {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cycles(&self) -> &[FreeElement] {
        &self.cycles
    }

    pub fn presentation(&self) -> &PresentedModule {
        &self.presentation
    }

    pub fn dimension(&self) -> Dim {
        self.presentation.dimension()
    }

    /// A Q-basis of homology classes represented by cycles, if finite:
    /// the standard monomial `(j, u)` lifts to `u * cycles[j]`.
    pub fn generators(&self) -> Option<Vec<FreeElement>> {
        let basis = self.presentation.standard_basis()?;
        Some(
            basis
                .iter()
                .map(|(j, u)| self.cycles[*j].mul_term(u, &BigRational::from_integer(1.into())))
                .collect(),
        )
    }

    /// Coordinates of the homology class of the cycle `z` in the
    /// standard-monomial basis. Errors if `z` is not a cycle or homology is
    /// infinite dimensional.
    pub fn class_coordinates(&self, z: &FreeElement) -> Result<Vec<BigRational>> {
        if z.rank() != self.ambient_rank {
            return Err(EngineError::InputMismatch(format!(
                "cycle rank {} does not match chain rank {}",
                z.rank(),
                self.ambient_rank
            )));
        }
        if z.is_zero() {
            let n = self
                .presentation
                .standard_basis()
                .ok_or_else(|| EngineError::InfiniteDimension("homology module".into()))?
                .len();
            return Ok(vec![BigRational::from_integer(0.into()); n]);
        }
        let cof = self.class_gb.lift(z).ok_or_else(|| {
            EngineError::InputMismatch("element is not a cycle of the complex".into())
        })?;
        let ring = self.class_gb.ring();
        let a = FreeElement::new(&ring, cof[..self.cycles.len()].to_vec());
        self.presentation.coordinates(&a)
    }

    /// Whether the cycle `z` represents the zero homology class. Works for
    /// infinite-dimensional homology as well.
    pub fn is_zero_class(&self, z: &FreeElement) -> Result<bool> {
        if z.rank() != self.ambient_rank {
            return Err(EngineError::InputMismatch(format!(
                "cycle rank {} does not match chain rank {}",
                z.rank(),
                self.ambient_rank
            )));
        }
        if z.is_zero() {
            return Ok(true);
        }
        let cof = self.class_gb.lift(z).ok_or_else(|| {
            EngineError::InputMismatch("element is not a cycle of the complex".into())
        })?;
        let ring = self.class_gb.ring();
        let a = FreeElement::new(&ring, cof[..self.cycles.len()].to_vec());
        Ok(self.presentation.is_zero_class(&a))
    }
}

/// Homology of `c` at degree `i` with respect to the default order.
pub fn homology_at(c: &ChainComplex, i: i64) -> HomologyModule {
    let ring = c.ring().clone();
    let n = c.rank_at(i);
    let cycles: Vec<FreeElement> = if n == 0 {
        Vec::new()
    } else {
        match c.map_at(i) {
            Some(d_out) => syzygies(d_out).columns(),
            None => (0..n).map(|p| FreeElement::unit(&ring, n, p)).collect(),
        }
    };
    let boundaries: Vec<FreeElement> = if n == 0 {
        Vec::new()
    } else {
        c.map_at(i - 1).map(|d_in| d_in.columns()).unwrap_or_default()
    };
    let k_map = ModuleMap::from_columns(&ring, n, &cycles);
    let b_map = ModuleMap::from_columns(&ring, n, &boundaries);
    let relations = preimage_module(&k_map, &b_map);
    let mut membership_gens = cycles.clone();
    membership_gens.extend(boundaries.iter().cloned());
    let class_gb = groebner::groebner_basis(&ring, &membership_gens, n.max(1), MonomialOrder::grevlex());
    HomologyModule {
        degree: i,
        ambient_rank: n,
        cycles,
        class_gb,
        presentation: PresentedModule::new(relations),
    }
}

/// Dimensions of homology in every degree of the complex.
pub fn homology_table(c: &ChainComplex) -> BTreeMap<i64, Dim> {
    c.degrees().map(|i| (i, homology_at(c, i).dimension())).collect()
}

/// Euler characteristic from homology: `sum_i (-1)^i dim H^i`.
/// Errors when any degree is infinite dimensional.
pub fn euler_characteristic(c: &ChainComplex) -> Result<i64> {
    let mut chi: i64 = 0;
    for i in c.degrees() {
        let d = homology_at(c, i)
            .dimension()
            .expect_finite(&format!("homology at degree {i}"))? as i64;
        chi += if i.rem_euclid(2) == 0 { d } else { -d };
    }
    Ok(chi)
}

/// A degreewise map of complexes `f_i : C_i -> D_i` satisfying
/// `d_D ∘ f = sign * (f ∘ d_C)` modulo relations. Absent degrees are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: BTreeMap<i64, ModuleMap>,
    sign: i64,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        maps: BTreeMap<i64, ModuleMap>,
        sign: i64,
    ) -> Result<ChainMap> {
        if source.ring() != target.ring() {
            return Err(EngineError::InputMismatch("chain map across different rings".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(EngineError::InputMismatch("chain map sign must be ±1".into()));
        }
        for (&i, m) in &maps {
            if m.cols() != source.rank_at(i) || m.rows() != target.rank_at(i) {
                return Err(EngineError::InputMismatch(format!(
                    "component at degree {i} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank_at(i),
                    source.rank_at(i)
                )));
            }
        }
        let cm = ChainMap { source, target, maps, sign };
        // Verify the (signed) commutation square at every degree.
        let lo = cm.source.lo().min(cm.target.lo());
        let hi = cm.source.hi().max(cm.target.hi());
        for i in lo..hi {
            let left = cm.component_times_d(i); // f_{i+1} ∘ d_C^i
            let right = cm.d_times_component(i); // d_D^i ∘ f_i
            let rows = cm.target.rank_at(i + 1);
            let cols = cm.source.rank_at(i);
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut diff_entries = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                for cidx in 0..cols {
                    let l = left.entry(r, cidx);
                    let rgt = right.entry(r, cidx);
                    let scaled = rgt.scale(&BigRational::from_integer(cm.sign.into()));
                    diff_entries.push(l - &scaled);
                }
            }
            let diff = ModuleMap::new(cm.source.ring(), rows, cols, diff_entries);
            if !diff.is_zero_mod_relations() {
                return Err(EngineError::NotAChainMap(format!(
                    "square at degree {i} does not commute"
                )));
            }
        }
        Ok(cm)
    }

    fn zero_component(&self, i: i64) -> ModuleMap {
        ModuleMap::zero(self.source.ring(), self.target.rank_at(i), self.source.rank_at(i))
    }

    pub fn component(&self, i: i64) -> ModuleMap {
        self.maps.get(&i).cloned().unwrap_or_else(|| self.zero_component(i))
    }

    fn component_times_d(&self, i: i64) -> ModuleMap {
        let f_next = self.component(i + 1);
        match self.source.map_at(i) {
            Some(d) => f_next.compose(d),
            None => ModuleMap::zero(
                self.source.ring(),
                self.target.rank_at(i + 1),
                self.source.rank_at(i),
            ),
        }
    }

    fn d_times_component(&self, i: i64) -> ModuleMap {
        let f_i = self.component(i);
        match self.target.map_at(i) {
            Some(d) => d.compose(&f_i),
            None => ModuleMap::zero(
                self.source.ring(),
                self.target.rank_at(i + 1),
                self.source.rank_at(i),
            ),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn apply_at(&self, i: i64, v: &FreeElement) -> FreeElement {
        self.component(i).apply(v)
    }
}

/// The matrix of the map induced on degree-`i` homology by a degreewise
/// Q-linear map of complexes that commutes with the differentials. Cycles
/// must map to cycles; both homologies must be finite dimensional.
pub fn induced_map_between(
    source: &ChainComplex,
    target: &ChainComplex,
    i: i64,
    apply: impl Fn(&FreeElement) -> FreeElement,
) -> Result<QMatrix> {
    let hs = homology_at(source, i);
    let ht = homology_at(target, i);
    let src_gens = hs.generators().ok_or_else(|| {
        EngineError::InfiniteDimension(format!("source homology at degree {i}"))
    })?;
    let tgt_dim = ht
        .dimension()
        .expect_finite(&format!("target homology at degree {i}"))? as usize;
    let mut m = QMatrix::zeros(tgt_dim, src_gens.len());
    for (j, z) in src_gens.iter().enumerate() {
        let w = apply(z);
        let coords = ht.class_coordinates(&w)?;
        for (r, c) in coords.into_iter().enumerate() {
            *m.at_mut(r, j) = c;
        }
    }
    Ok(m)
}

/// The matrix of `H^i(f)` in the standard-monomial bases of source and
/// target homology. Requires both sides finite dimensional.
pub fn induced_map(f: &ChainMap, i: i64) -> Result<QMatrix> {
    induced_map_between(f.source(), f.target(), i, |v| f.apply_at(i, v))
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexDto {
    ring: RingDto,
    lo: i64,
    ranks: Vec<usize>,
    maps: Vec<MatrixDto>,
}

impl MatrixDto {
    fn from_map(m: &ModuleMap) -> MatrixDto {
        MatrixDto {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
                .collect(),
        }
    }

    fn to_map(&self, ring: &Arc<Ring>) -> Result<ModuleMap> {
        if self.entries.len() != self.rows
            || self.entries.iter().any(|r| r.len() != self.cols)
        {
            return Err(EngineError::Parse("matrix entry shape mismatch".into()));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            for e in row {
                entries.push(Polynomial::parse(ring, e)?);
            }
        }
        Ok(ModuleMap::new(ring, self.rows, self.cols, entries))
    }
}

impl ComplexDto {
    fn from_complex(c: &ChainComplex) -> ComplexDto {
        ComplexDto {
            ring: RingDto::from_ring(c.ring()),
            lo: c.lo(),
            ranks: c.ranks.clone(),
            maps: c.maps.iter().map(MatrixDto::from_map).collect(),
        }
    }

    fn to_complex(&self) -> Result<ChainComplex> {
        let ring = self.ring.to_ring()?;
        let maps = self
            .maps
            .iter()
            .map(|m| m.to_map(&ring))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(&ring, self.lo, self.ranks.clone(), maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ring2() -> Arc<Ring> {
        Ring::polynomial_ring(&["x", "y"])
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn nodal_chart_complex() -> (Arc<Ring>, ChainComplex) {
        let base = ring2();
        let w = p(&base, "x^3 + x^2 - y^2");
        let q = Ring::quotient(&base, vec![w]).unwrap();
        let a = ModuleMap::new(&q, 2, 1, vec![p(&base, "3x^2 + 2x"), p(&base, "-2y")]);
        let b = ModuleMap::new(&q, 1, 2, vec![p(&base, "2y"), p(&base, "3x^2 + 2x")]);
        let c = ChainComplex::new(&q, -2, vec![1, 2, 1], vec![a, b]).unwrap();
        (q, c)
    }

    #[test]
    fn rejects_non_complexes() {
        let r = ring2();
        let a = ModuleMap::new(&r, 1, 1, vec![p(&r, "x")]);
        let b = ModuleMap::new(&r, 1, 1, vec![p(&r, "y")]);
        let err = ChainComplex::new(&r, 0, vec![1, 1, 1], vec![a, b]);
        assert!(matches!(err, Err(EngineError::NotAComplex(_))));
    }

    #[test]
    fn koszul_complex_homology() {
        let r = ring2();
        let d0 = ModuleMap::new(&r, 2, 1, vec![p(&r, "x"), p(&r, "y")]);
        let d1 = ModuleMap::new(&r, 1, 2, vec![p(&r, "-y"), p(&r, "x")]);
        let c = ChainComplex::new(&r, 0, vec![1, 2, 1], vec![d0, d1]).unwrap();
        let dims: Vec<Dim> = (0..=2).map(|i| homology_at(&c, i).dimension()).collect();
        assert_eq!(dims, vec![Dim::Finite(0), Dim::Finite(0), Dim::Finite(1)]);
        assert_eq!(euler_characteristic(&c).unwrap(), 1);
    }

    #[test]
    fn nodal_chart_homology_dimensions_and_torsion() {
        let (q, c) = nodal_chart_complex();
        assert_eq!(homology_at(&c, -2).dimension(), Dim::Finite(0));
        let h1 = homology_at(&c, -1);
        assert_eq!(h1.dimension(), Dim::Finite(1));
        let h0 = homology_at(&c, 0);
        assert_eq!(h0.dimension(), Dim::Finite(1));
        // H^0 is generated by the class of 1.
        let one = FreeElement::new(&q, vec![Polynomial::one(&q)]);
        let coords = h0.class_coordinates(&one).unwrap();
        assert_eq!(coords.len(), 1);
        assert!(!coords[0].is_zero());
        // The distinguished torsion cycle at degree -1.
        let base = ring2();
        let z = FreeElement::new(
            &q,
            vec![
                p(&base, "3x y + 2y").clone_into_ring(&q),
                p(&base, "-2x^2 - 2x").clone_into_ring(&q),
            ],
        );
        assert!(!h1.is_zero_class(&z).unwrap());
        // x z and y z are boundaries: the class is torsion.
        assert!(h1.is_zero_class(&z.scale_poly(&p(&base, "x").clone_into_ring(&q))).unwrap());
        assert!(h1.is_zero_class(&z.scale_poly(&p(&base, "y").clone_into_ring(&q))).unwrap());
        // Non-cycles are rejected.
        let not_cycle = FreeElement::new(&q, vec![Polynomial::one(&q), Polynomial::zero(&q)]);
        assert!(h1.class_coordinates(&not_cycle).is_err());
    }

    #[test]
    fn induced_identity_map() {
        let (q, c) = nodal_chart_complex();
        let mut maps = BTreeMap::new();
        for i in c.degrees() {
            maps.insert(i, ModuleMap::identity(&q, c.rank_at(i)));
        }
        let f = ChainMap::new(c.clone(), c.clone(), maps, 1).unwrap();
        for i in [-1, 0] {
            let m = induced_map(&f, i).unwrap();
            assert_eq!(m, QMatrix::identity(1), "degree {i}");
        }
    }

    #[test]
    fn chain_map_validation() {
        let r = ring2();
        let d = ModuleMap::new(&r, 1, 1, vec![p(&r, "x")]);
        let src = ChainComplex::new(&r, 0, vec![1, 1], vec![d.clone()]).unwrap();
        let tgt = ChainComplex::new(&r, 0, vec![1, 1], vec![d]).unwrap();
        // f_0 = y, f_1 = y commutes with d = x.
        let mut maps = BTreeMap::new();
        maps.insert(0, ModuleMap::new(&r, 1, 1, vec![p(&r, "y")]));
        maps.insert(1, ModuleMap::new(&r, 1, 1, vec![p(&r, "y")]));
        assert!(ChainMap::new(src.clone(), tgt.clone(), maps.clone(), 1).is_ok());
        // f_0 = y, f_1 = x does not.
        maps.insert(1, ModuleMap::new(&r, 1, 1, vec![p(&r, "x")]));
        let err = ChainMap::new(src, tgt, maps, 1);
        assert!(matches!(err, Err(EngineError::NotAChainMap(_))));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let (_, c) = nodal_chart_complex();
        let s = c.to_json();
        let c2 = ChainComplex::from_json(&s).unwrap();
        assert_eq!(c, c2);
        assert_eq!(c2.to_json(), s);
        // And via an independently constructed document.
        let koszul = {
            let r = ring2();
            let d0 = ModuleMap::new(&r, 2, 1, vec![p(&r, "x"), p(&r, "y")]);
            let d1 = ModuleMap::new(&r, 1, 2, vec![p(&r, "-y"), p(&r, "x")]);
            ChainComplex::new(&r, 0, vec![1, 2, 1], vec![d0, d1]).unwrap()
        };
        let s2 = koszul.to_json();
        assert_eq!(ChainComplex::from_json(&s2).unwrap().to_json(), s2);
    }
}
