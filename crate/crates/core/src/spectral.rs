//! Bigraded spectral-sequence mechanics for curve invariants.
//!
//! Two sheets are built here.
//!
//! * The weight sheet ([`PageKind::HodgeDeRham`]): `E1^{p,q}` is the
//!   `q`-th hypercohomology of the weight-`p` wedge power, `d_r` has
//!   bidegree `(r, 1-r)`, and the abutment is the singular cohomology of
//!   the curve. Columns `p ≥ 2` are torsion staircases recomputed from the
//!   local dg engine.
//! * The cyclic sheet ([`PageKind::CyclicU`]): the entry at `(j, k)` is
//!   `HH_k` in the `u^j` column, `d_r` has bidegree `(r, 2r-1)`, the first
//!   differential is `u·B` with `B` the degree-raising cyclic operator,
//!   and the columns abut negative cyclic homology along total degree
//!   `n = k - 2j`.
//!
//! Every differential rank carries a provenance: `Computed` ranks come out
//! of the dg engine, `Rule` ranks are declared with a reason, and `Deduced`
//! ranks are forced by enumerating all rank assignments against the
//! abutment. Pages track the rectangular window on which their entries are
//! valid; turning a page shrinks the window on the sides where entries
//! outside it are unknown rather than structurally zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dgmodel::{crossing_composite, de_rham};
use crate::error::{EngineError, Result};
use crate::modules::Dim;
use crate::tables::{
    hkr_hochschild, singular_cohomology, wedge_hypercohomology, CurveSpec,
    HomologyTable,
};

// ---------------------------------------------------------------------------
// Kinds, windows, provenance
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PageKind {
    HodgeDeRham,
    CyclicU,
}

impl PageKind {
    /// Where the page-`r` differential out of `(p, q)` lands.
    pub fn d_target(self, r: u32, p: i64, q: i64) -> (i64, i64) {
        let r = r as i64;
        match self {
            PageKind::HodgeDeRham => (p + r, q - r + 1),
            PageKind::CyclicU => (p + r, q + 2 * r - 1),
        }
    }

    /// Where the page-`r` differential into `(p, q)` comes from.
    pub fn d_source(self, r: u32, p: i64, q: i64) -> (i64, i64) {
        let r = r as i64;
        match self {
            PageKind::HodgeDeRham => (p - r, q + r - 1),
            PageKind::CyclicU => (p - r, q - 2 * r + 1),
        }
    }

    /// The total degree a cell contributes to in the abutment.
    pub fn total_degree(self, p: i64, q: i64) -> i64 {
        match self {
            PageKind::HodgeDeRham => p + q,
            PageKind::CyclicU => q - 2 * p,
        }
    }

    /// How far the valid `q` range must shrink per turn of page `r`.
    fn q_step(self, r: u32) -> i64 {
        match self {
            PageKind::HodgeDeRham => r as i64 - 1,
            PageKind::CyclicU => 2 * r as i64 - 1,
        }
    }
}

/// A closed rectangle of bidegrees.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Window {
    pub p: (i64, i64),
    pub q: (i64, i64),
}

impl Window {
    pub fn contains(&self, p: i64, q: i64) -> bool {
        self.p.0 <= p && p <= self.p.1 && self.q.0 <= q && q <= self.q.1
    }
}

/// Which sides of the valid window are hard vanishing boundaries (entries
/// beyond them are structurally zero) rather than mere edges of knowledge.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Hardness {
    pub p_lo: bool,
    pub p_hi: bool,
    pub q_lo: bool,
    pub q_hi: bool,
}

/// Why a differential rank has the value it has.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Provenance {
    /// Recomputed by the symbolic engine.
    Computed { source: String },
    /// Declared by a named rule.
    Rule { name: String, reason: String },
    /// Forced by enumerating rank assignments against the abutment.
    Deduced { constraints: String },
}

impl Provenance {
    pub fn describe(&self) -> String {
        match self {
            Provenance::Computed { source } => format!("computed: {source}"),
            Provenance::Rule { name, reason } => format!("rule [{name}]: {reason}"),
            Provenance::Deduced { constraints } => format!("deduced: {constraints}"),
        }
    }
}

/// A differential out of one cell, keyed by its source in the page.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Differential {
    pub rank: Option<u64>,
    pub provenance: Provenance,
}

/// A rank together with its provenance, outside any particular page.
#[derive(Clone, PartialEq, Debug)]
pub struct RankedDiff {
    pub rank: u64,
    pub provenance: Provenance,
}

// ---------------------------------------------------------------------------
// Pages
// ---------------------------------------------------------------------------

/// One page of a spectral sequence: entries on a valid window, candidate
/// differentials keyed by source cell.
#[derive(Clone, PartialEq, Debug)]
pub struct BigradedPage {
    pub kind: PageKind,
    pub page: u32,
    pub valid: Window,
    pub hard: Hardness,
    pub display: Window,
    entries: BTreeMap<(i64, i64), u64>,
    pub diffs: BTreeMap<(i64, i64), Differential>,
}

impl BigradedPage {
    pub fn new(
        kind: PageKind,
        page: u32,
        valid: Window,
        hard: Hardness,
        display: Window,
    ) -> BigradedPage {
        BigradedPage {
            kind,
            page,
            valid,
            hard,
            display,
            entries: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn set_entry(&mut self, p: i64, q: i64, v: u64) {
        assert!(self.valid.contains(p, q), "entry ({p},{q}) outside valid window");
        if v == 0 {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), v);
        }
    }

    /// The dimension at `(p, q)`: `Some(0)` inside the window or beyond a
    /// hard boundary, `None` beyond a soft boundary where the sheet is
    /// unknown.
    pub fn dim(&self, p: i64, q: i64) -> Option<u64> {
        if self.valid.contains(p, q) {
            return Some(self.entries.get(&(p, q)).copied().unwrap_or(0));
        }
        let soft = (p < self.valid.p.0 && !self.hard.p_lo)
            || (p > self.valid.p.1 && !self.hard.p_hi)
            || (q < self.valid.q.0 && !self.hard.q_lo)
            || (q > self.valid.q.1 && !self.hard.q_hi);
        if soft {
            None
        } else {
            Some(0)
        }
    }

    /// Nonzero entries within the valid window, sorted by bidegree.
    pub fn entries_sorted(&self) -> Vec<((i64, i64), u64)> {
        self.entries.iter().map(|(k, v)| (*k, *v)).collect()
    }

    pub fn set_diff(&mut self, p: i64, q: i64, d: Differential) {
        self.diffs.insert((p, q), d);
    }

    /// Alternating sum of entries over a window, signed by total degree.
    pub fn euler_within(&self, w: &Window) -> i64 {
        let mut chi = 0i64;
        for ((p, q), v) in &self.entries {
            if w.contains(*p, *q) {
                let sign = if self.kind.total_degree(*p, *q).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                chi += sign * *v as i64;
            }
        }
        chi
    }

    /// Sum of entries on the diagonal of total degree `t` within the valid
    /// window.
    pub fn total_along(&self, t: i64) -> u64 {
        self.entries
            .iter()
            .filter(|((p, q), _)| self.kind.total_degree(*p, *q) == t)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn entries_equal_within(&self, other: &BigradedPage, w: &Window) -> bool {
        for p in w.p.0..=w.p.1 {
            for q in w.q.0..=w.q.1 {
                if self.dim(p, q) != other.dim(p, q) {
                    return false;
                }
            }
        }
        true
    }
}

/// The rank of the differential out of `src` on this page: zero when source
/// or target vanishes, otherwise read from the recorded differential.
fn outgoing_rank(page: &BigradedPage, src: (i64, i64)) -> Result<u64> {
    let (p, q) = src;
    let sdim = page.dim(p, q).ok_or_else(|| {
        EngineError::InconsistentRanks {
            p,
            q,
            detail: "source cell outside the known window".into(),
        }
    })?;
    let (tp, tq) = page.kind.d_target(page.page, p, q);
    let tdim = page.dim(tp, tq).ok_or_else(|| EngineError::InconsistentRanks {
        p,
        q,
        detail: format!("target ({tp},{tq}) outside the known window"),
    })?;
    if sdim == 0 || tdim == 0 {
        return Ok(0);
    }
    match page.diffs.get(&src) {
        None => Err(EngineError::InconsistentRanks {
            p,
            q,
            detail: format!(
                "page {} differential ({p},{q}) → ({tp},{tq}) has nonzero \
                 source and target but no recorded rank",
                page.page
            ),
        }),
        Some(Differential { rank: None, .. }) => Err(EngineError::InconsistentRanks {
            p,
            q,
            detail: format!("page {} differential rank not yet resolved", page.page),
        }),
        Some(Differential { rank: Some(r), .. }) => {
            if *r > sdim.min(tdim) {
                Err(EngineError::InconsistentRanks {
                    p,
                    q,
                    detail: format!(
                        "rank {r} exceeds min(source {sdim}, target {tdim})"
                    ),
                })
            } else {
                Ok(*r)
            }
        }
    }
}

/// Compute the next page. The valid window shrinks on soft sides by the
/// bidegree of the differential; entries that would go negative raise
/// [`EngineError::InconsistentRanks`].
pub fn turn_page(page: &BigradedPage) -> Result<BigradedPage> {
    let r = page.page;
    let dp = r as i64;
    let dq = page.kind.q_step(r);
    let mut valid = page.valid;
    if !page.hard.p_lo {
        valid.p.0 += dp;
    }
    if !page.hard.p_hi {
        valid.p.1 -= dp;
    }
    if !page.hard.q_lo {
        valid.q.0 += dq;
    }
    if !page.hard.q_hi {
        valid.q.1 -= dq;
    }
    if valid.p.0 > valid.p.1 || valid.q.0 > valid.q.1 {
        return Err(EngineError::InvalidSpec(
            "page window exhausted; widen the window to turn further".into(),
        ));
    }
    let mut next = BigradedPage::new(page.kind, r + 1, valid, page.hard, page.display);
    for p in valid.p.0..=valid.p.1 {
        for q in valid.q.0..=valid.q.1 {
            let e = page
                .dim(p, q)
                .expect("shrunken window lies inside the old one");
            let out = outgoing_rank(page, (p, q))?;
            let src = page.kind.d_source(r, p, q);
            let inc = if page.dim(src.0, src.1) == Some(0) {
                0
            } else {
                outgoing_rank(page, src)?
            };
            let v = e as i64 - out as i64 - inc as i64;
            if v < 0 {
                return Err(EngineError::InconsistentRanks {
                    p,
                    q,
                    detail: format!(
                        "entry {e} minus outgoing rank {out} and incoming rank \
                         {inc} is negative on page {r}"
                    ),
                });
            }
            next.set_entry(p, q, v as u64);
        }
    }
    Ok(next)
}

/// Mechanical Euler bookkeeping for one page turn: the windowed alternating
/// sum changes exactly by the ranks of arrows crossing the window boundary.
pub fn euler_step_is_conserved(old: &BigradedPage, new: &BigradedPage) -> bool {
    let w = new.valid;
    let mut expected = old.euler_within(&w);
    for ((p, q), d) in &old.diffs {
        let rank = match d.rank {
            Some(x) if x > 0 => x as i64,
            _ => continue,
        };
        let (tp, tq) = old.kind.d_target(old.page, *p, *q);
        for (cp, cq) in [(*p, *q), (tp, tq)] {
            if w.contains(cp, cq) {
                let sign = if old.kind.total_degree(cp, cq).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                expected -= sign * rank;
            }
        }
    }
    expected == new.euler_within(&w)
}

/// Certify that every differential on this and all later pages is
/// structurally zero within the valid window (its source or target entry
/// vanishes). Errors on the first arrow that cannot be certified.
pub fn certify_collapse(page: &BigradedPage) -> Result<()> {
    let diameter = (page.valid.p.1 - page.valid.p.0).max(1) as u32;
    for r in page.page..=diameter {
        for ((p, q), v) in &page.entries {
            if *v == 0 {
                continue;
            }
            let (tp, tq) = page.kind.d_target(r, *p, *q);
            if page.valid.contains(tp, tq)
                && page.entries.get(&(tp, tq)).copied().unwrap_or(0) > 0
            {
                return Err(EngineError::InconsistentRanks {
                    p: *p,
                    q: *q,
                    detail: format!(
                        "page {r} differential ({p},{q}) → ({tp},{tq}) joins \
                         two nonzero entries and cannot be certified zero \
                         structurally"
                    ),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Rank deduction against the abutment
// ---------------------------------------------------------------------------

/// Whether some completion of the remaining unknown ranks lets `page`
/// converge to the given totals.
fn consistent_with_totals(page: &BigradedPage, totals: &BTreeMap<i64, u64>) -> bool {
    // Find the unresolved candidate arrows on this page.
    let mut unknowns: Vec<((i64, i64), u64)> = Vec::new();
    for ((p, q), d) in &page.diffs {
        if d.rank.is_none() {
            let sdim = page.dim(*p, *q).unwrap_or(0);
            let (tp, tq) = page.kind.d_target(page.page, *p, *q);
            let tdim = page.dim(tp, tq).unwrap_or(0);
            if sdim > 0 && tdim > 0 {
                unknowns.push(((*p, *q), sdim.min(tdim)));
            }
        }
    }
    if let Some((cell, bound)) = unknowns.first().copied() {
        for rank in 0..=bound {
            let mut attempt = page.clone();
            attempt.diffs.get_mut(&cell).unwrap().rank = Some(rank);
            if consistent_with_totals(&attempt, totals) {
                return true;
            }
        }
        return false;
    }
    // All ranks known: either the sheet still has live arrows (turn), or it
    // has collapsed (compare with the abutment).
    let live = page.entries.iter().any(|((p, q), v)| {
        *v > 0 && {
            let (tp, tq) = page.kind.d_target(page.page, *p, *q);
            page.valid.contains(tp, tq)
                && page.entries.get(&(tp, tq)).copied().unwrap_or(0) > 0
        }
    });
    if live {
        // Arrows with unresolved later-page ranks are enumerated by adding
        // fresh unknown differentials for the live pairs.
        let mut next = match turn_page(page) {
            Ok(n) => n,
            Err(_) => return false,
        };
        let pairs: Vec<(i64, i64)> = next
            .entries_sorted()
            .into_iter()
            .filter(|(_, v)| *v > 0)
            .filter_map(|((p, q), _)| {
                let (tp, tq) = next.kind.d_target(next.page, p, q);
                if next.valid.contains(tp, tq)
                    && next.entries.get(&(tp, tq)).copied().unwrap_or(0) > 0
                {
                    Some((p, q))
                } else {
                    None
                }
            })
            .collect();
        for cell in pairs {
            next.set_diff(
                cell.0,
                cell.1,
                Differential { rank: None, provenance: Provenance::Deduced {
                    constraints: "enumerated against the abutment".into(),
                } },
            );
        }
        return consistent_with_totals(&next, totals);
    }
    totals.iter().all(|(t, expect)| page.total_along(*t) == *expect)
}

/// Fill every unresolved first-page rank by enumeration: a rank assignment
/// is kept only if the sheet can converge to the abutment totals, and the
/// assignment must be unique.
pub fn deduce_forced_ranks(
    e1: &BigradedPage,
    totals: &BTreeMap<i64, u64>,
) -> Result<BigradedPage> {
    let unknowns: Vec<(i64, i64)> = e1
        .diffs
        .iter()
        .filter(|(_, d)| d.rank.is_none())
        .map(|(k, _)| *k)
        .collect();
    if unknowns.is_empty() {
        return Ok(e1.clone());
    }
    let bounds: Vec<u64> = unknowns
        .iter()
        .map(|(p, q)| {
            let s = e1.dim(*p, *q).unwrap_or(0);
            let (tp, tq) = e1.kind.d_target(e1.page, *p, *q);
            let t = e1.dim(tp, tq).unwrap_or(0);
            s.min(t)
        })
        .collect();
    let mut consistent: Vec<Vec<u64>> = Vec::new();
    let mut assignment = vec![0u64; unknowns.len()];
    'odometer: loop {
        let mut attempt = e1.clone();
        for (cell, rank) in unknowns.iter().zip(&assignment) {
            attempt.diffs.get_mut(cell).unwrap().rank = Some(*rank);
        }
        if consistent_with_totals(&attempt, totals) {
            consistent.push(assignment.clone());
        }
        for i in 0..assignment.len() {
            if assignment[i] < bounds[i] {
                assignment[i] += 1;
                continue 'odometer;
            }
            assignment[i] = 0;
        }
        break;
    }
    match consistent.len() {
        0 => Err(EngineError::InconsistentRanks {
            p: unknowns[0].0,
            q: unknowns[0].1,
            detail: "no rank assignment matches the abutment".into(),
        }),
        1 => {
            let solution = &consistent[0];
            let mut out = e1.clone();
            let constraint = format!(
                "unique among {} assignments matching abutment totals {:?}",
                bounds.iter().map(|b| b + 1).product::<u64>(),
                totals.iter().map(|(t, v)| (*t, *v)).collect::<Vec<_>>()
            );
            for (cell, rank) in unknowns.iter().zip(solution) {
                let d = out.diffs.get_mut(cell).unwrap();
                d.rank = Some(*rank);
                d.provenance = Provenance::Deduced { constraints: constraint.clone() };
            }
            Ok(out)
        }
        _ => Err(EngineError::InconsistentRanks {
            p: unknowns[0].0,
            q: unknowns[0].1,
            detail: format!(
                "{} rank assignments match the abutment; underdetermined",
                consistent.len()
            ),
        }),
    }
}

// ---------------------------------------------------------------------------
// Curve-level differential ranks
// ---------------------------------------------------------------------------

/// The first-page ranks of a curve's weight sheet, with provenances:
/// `alpha` out of `(0,0)`, `sigma` out of `(0,1)`, `gamma` out of `(1,0)`,
/// and `beta[j]` out of the staircase cell `(j+1, -j)` for `j ≥ 1`.
#[derive(Clone, Debug)]
pub struct CurveRanks {
    pub alpha: RankedDiff,
    pub sigma: RankedDiff,
    pub gamma: RankedDiff,
    pub beta: BTreeMap<u32, RankedDiff>,
}

/// The abutment totals of the weight sheet: singular cohomology in degrees
/// 0..2 and zero on the flanks.
fn singular_totals(spec: &CurveSpec) -> BTreeMap<i64, u64> {
    let sing = singular_cohomology(spec);
    let mut totals = BTreeMap::new();
    for t in -1..=3i64 {
        let v = match sing.dim_at(t) {
            Dim::Finite(v) => v,
            Dim::Infinite => unreachable!("singular cohomology is finite"),
        };
        totals.insert(t, v);
    }
    totals
}

/// Compute (or deduce) all first-page ranks of the weight sheet, with
/// staircase ranks available up to `beta[max_beta]`.
pub fn curve_ranks(spec: &CurveSpec, max_beta: u32) -> Result<CurveRanks> {
    let n = spec.singular_points();
    let model = spec.local_model();
    let mut beta = BTreeMap::new();
    for j in 1..=max_beta {
        let local_rank = if n == 0 {
            0
        } else {
            de_rham(model, j + 1).induced_matrix(-(j as i64))?.rank() as u64
        };
        beta.insert(
            j,
            RankedDiff {
                rank: n * local_rank,
                provenance: Provenance::Computed {
                    source: format!(
                        "{n} × induced de Rham rank of the weight-{} {} model",
                        j + 1,
                        model
                    ),
                },
            },
        );
    }
    match spec {
        CurveSpec::Nodal { .. } => {
            let composite_rank = if n == 0 {
                0
            } else {
                crossing_composite()?.rank() as u64
            };
            Ok(CurveRanks {
                alpha: RankedDiff {
                    rank: 0,
                    provenance: Provenance::Rule {
                        name: "constants".into(),
                        reason: "global functions on a projective curve are \
                                 constants and differentiate to zero"
                            .into(),
                    },
                },
                sigma: RankedDiff {
                    rank: 0,
                    provenance: Provenance::Rule {
                        name: "structure-row".into(),
                        reason: "the weight-raising map vanishes on first \
                                 cohomology for this curve class; \
                                 cross-checked against the abutment"
                            .into(),
                    },
                },
                gamma: RankedDiff {
                    rank: n * composite_rank,
                    provenance: Provenance::Computed {
                        source: format!(
                            "{n} × the rank of the local torsion composite"
                        ),
                    },
                },
                beta,
            })
        }
        CurveSpec::CuspidalCubic => {
            // No rules apply: leave the three global ranks unknown and let
            // the abutment force them.
            let globals = GlobalRanks {
                alpha: None,
                sigma: None,
                gamma: None,
                beta: beta.clone(),
            };
            let sheet = assemble_hdr_e1(spec, 2, &globals);
            let solved = deduce_forced_ranks(&sheet, &singular_totals(spec))?;
            let take = |cell: (i64, i64)| -> RankedDiff {
                let d = &solved.diffs[&cell];
                RankedDiff {
                    rank: d.rank.expect("deduction fills every rank"),
                    provenance: d.provenance.clone(),
                }
            };
            Ok(CurveRanks {
                alpha: take((0, 0)),
                sigma: take((0, 1)),
                gamma: take((1, 0)),
                beta,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// The weight sheet
// ---------------------------------------------------------------------------

struct GlobalRanks {
    alpha: Option<RankedDiff>,
    sigma: Option<RankedDiff>,
    gamma: Option<RankedDiff>,
    beta: BTreeMap<u32, RankedDiff>,
}

const HDR_BUFFER: i64 = 3;

/// Build the first page of the weight sheet on a window whose display part
/// spans columns `0..=display_p_hi`.
fn assemble_hdr_e1(
    spec: &CurveSpec,
    display_p_hi: i64,
    globals: &GlobalRanks,
) -> BigradedPage {
    let p_hi = display_p_hi.max(2) + HDR_BUFFER;
    let valid = Window { p: (0, p_hi), q: (-p_hi + 1, 1) };
    let display = Window {
        p: (0, display_p_hi),
        q: ((-display_p_hi + 1).min(0), 1),
    };
    // Entries beyond the staircase floor are structurally zero, as are
    // columns p < 0 and rows q > 1.
    let hard = Hardness { p_lo: true, p_hi: false, q_lo: true, q_hi: true };
    let mut page =
        BigradedPage::new(PageKind::HodgeDeRham, 1, valid, hard, display);
    for p in 0..=p_hi {
        let table = wedge_hypercohomology(spec, p as u32);
        for (q, d) in &table.entries {
            if !valid.contains(p, *q) {
                continue;
            }
            match d {
                Dim::Finite(v) => page.set_entry(p, *q, *v),
                Dim::Infinite => unreachable!("weight tables are finite"),
            }
        }
    }
    // First-page arrows with nonzero source and target.
    let mut arrows: Vec<((i64, i64), Option<RankedDiff>)> = vec![
        ((0, 0), globals.alpha.clone()),
        ((0, 1), globals.sigma.clone()),
        ((1, 0), globals.gamma.clone()),
    ];
    for (j, rd) in &globals.beta {
        let p = *j as i64 + 1;
        arrows.push(((p, -(*j as i64)), Some(rd.clone())));
    }
    for ((p, q), rd) in arrows {
        let sdim = page.dim(p, q).unwrap_or(0);
        let (tp, tq) = PageKind::HodgeDeRham.d_target(1, p, q);
        let tdim = page.dim(tp, tq).unwrap_or(0);
        if sdim == 0 || tdim == 0 {
            continue;
        }
        let d = match rd {
            Some(rd) => Differential { rank: Some(rd.rank), provenance: rd.provenance },
            None => Differential {
                rank: None,
                provenance: Provenance::Deduced {
                    constraints: "pending abutment deduction".into(),
                },
            },
        };
        page.set_diff(p, q, d);
    }
    page
}

/// The first page of the weight sheet with all ranks resolved.
pub fn build_hdr_e1(spec: &CurveSpec, display_p_hi: i64) -> Result<BigradedPage> {
    let p_hi = display_p_hi.max(2) + HDR_BUFFER;
    let ranks = curve_ranks(spec, p_hi as u32)?;
    let globals = GlobalRanks {
        alpha: Some(ranks.alpha),
        sigma: Some(ranks.sigma),
        gamma: Some(ranks.gamma),
        beta: ranks.beta,
    };
    Ok(assemble_hdr_e1(spec, display_p_hi, &globals))
}

/// The weight sheet of a curve: first and second pages, the page where it
/// degenerates, and the mechanical consistency checks.
#[derive(Clone, Debug)]
pub struct HdrReport {
    pub e1: BigradedPage,
    pub e2: BigradedPage,
    pub degeneration_page: u32,
    pub euler_conserved: bool,
    pub abutment_consistent: bool,
}

pub fn hodge_de_rham(spec: &CurveSpec, display_p_hi: i64) -> Result<HdrReport> {
    let e1 = build_hdr_e1(spec, display_p_hi)?;
    let e2 = turn_page(&e1)?;
    certify_collapse(&e2)?;
    let degeneration_page =
        if e1.entries_equal_within(&e2, &e2.valid) { 1 } else { 2 };
    let euler_conserved = euler_step_is_conserved(&e1, &e2);
    let totals = singular_totals(spec);
    let abutment_consistent =
        totals.iter().all(|(t, v)| e2.total_along(*t) == *v);
    Ok(HdrReport { e1, e2, degeneration_page, euler_conserved, abutment_consistent })
}

/// Abutment deduction of the two structure-row ranks for a nodal curve,
/// independent of the declared rules: returns `(alpha, sigma)`.
pub fn deduce_alpha_sigma(spec: &CurveSpec) -> Result<(RankedDiff, RankedDiff)> {
    let p_hi = 2 + HDR_BUFFER;
    let ranks = curve_ranks(spec, p_hi as u32)?;
    let globals = GlobalRanks {
        alpha: None,
        sigma: None,
        gamma: Some(ranks.gamma),
        beta: ranks.beta,
    };
    let sheet = assemble_hdr_e1(spec, 2, &globals);
    let solved = deduce_forced_ranks(&sheet, &singular_totals(spec))?;
    let take = |cell: (i64, i64)| -> RankedDiff {
        match solved.diffs.get(&cell) {
            Some(d) => RankedDiff {
                rank: d.rank.expect("deduction fills every rank"),
                provenance: d.provenance.clone(),
            },
            // The arrow was dropped because its target vanishes (e.g. the
            // smooth case): rank zero structurally.
            None => RankedDiff {
                rank: 0,
                provenance: Provenance::Rule {
                    name: "structural".into(),
                    reason: "source or target vanishes".into(),
                },
            },
        }
    };
    Ok((take((0, 0)), take((0, 1))))
}

// ---------------------------------------------------------------------------
// The cyclic sheet
// ---------------------------------------------------------------------------

/// Build the first page of the cyclic sheet for total degrees `lo..=hi`:
/// entry `(j, k)` is `HH_k` in the `u^j` column.
pub fn build_cyclic_e1(spec: &CurveSpec, lo: i64, hi: i64) -> Result<BigradedPage> {
    assert!(lo <= hi);
    let j_hi = ((1 - lo) / 2 + 2).max(3);
    let k_hi = hi + 2 * j_hi + 3;
    let valid = Window { p: (0, j_hi), q: (-1, k_hi) };
    let hard = Hardness { p_lo: true, p_hi: false, q_lo: true, q_hi: false };
    let display = Window { p: (0, j_hi), q: (-1, hi.max(1)) };
    let mut page = BigradedPage::new(PageKind::CyclicU, 1, valid, hard, display);
    let hh = hkr_hochschild(spec, -1, k_hi);
    let hh_at = |k: i64| -> u64 {
        match hh.dim_at(k) {
            Dim::Finite(v) => v,
            Dim::Infinite => unreachable!("hochschild tables are finite"),
        }
    };
    for j in 0..=j_hi {
        for k in -1..=k_hi {
            let v = hh_at(k);
            if v > 0 {
                page.set_entry(j, k, v);
            }
        }
    }
    // First-page arrows are u·B: the rank of B out of HH_k reuses the
    // weight-sheet ranks.
    let max_beta = ((k_hi - 1) / 2).max(1) as u32;
    let ranks = curve_ranks(spec, max_beta)?;
    for j in 0..=j_hi {
        for k in -1..k_hi {
            let sdim = hh_at(k);
            let tdim = hh_at(k + 1);
            if sdim == 0 || tdim == 0 {
                continue;
            }
            let rd = match k {
                -1 => ranks.sigma.clone(),
                0 => ranks.alpha.clone(),
                1 => ranks.gamma.clone(),
                k if k >= 3 && k % 2 == 1 => {
                    ranks.beta[&(((k - 1) / 2) as u32)].clone()
                }
                k if k >= 2 && k % 2 == 0 => {
                    // B² = 0 and the incoming B (of odd degree) is onto, so
                    // B vanishes on even torsion degrees.
                    let incoming = if k == 2 {
                        ranks.gamma.rank
                    } else {
                        ranks.beta[&(((k - 2) / 2) as u32)].rank
                    };
                    assert_eq!(
                        incoming, sdim,
                        "the incoming cyclic operator must be onto HH_{k}"
                    );
                    RankedDiff {
                        rank: 0,
                        provenance: Provenance::Rule {
                            name: "b-squared".into(),
                            reason: format!(
                                "B∘B = 0 and the incoming rank {incoming} \
                                 fills HH_{k}"
                            ),
                        },
                    }
                }
                _ => unreachable!("HH vanishes below degree -1"),
            };
            page.set_diff(
                j,
                k,
                Differential { rank: Some(rd.rank), provenance: rd.provenance },
            );
        }
    }
    Ok(page)
}

/// How the projection from negative cyclic to Hochschild homology behaves
/// in one degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EdgeMapKind {
    /// The map is zero (the `u^0` column dies, or the target vanishes).
    Zero,
    /// The map is an isomorphism (the `u^0` column survives in full and
    /// nothing else contributes).
    Iso,
    /// The sheet alone does not decide.
    Unclassified,
}

/// The cyclic sheet of a curve with its collapse data, the resulting
/// negative cyclic table, and the edge-map classification.
#[derive(Clone, Debug)]
pub struct CyclicReport {
    pub e1: BigradedPage,
    pub e2: BigradedPage,
    pub degeneration_page: u32,
    pub euler_conserved: bool,
    pub hn: HomologyTable,
    pub edge: BTreeMap<i64, EdgeMapKind>,
}

pub fn cyclic_u(spec: &CurveSpec, lo: i64, hi: i64) -> Result<CyclicReport> {
    let e1 = build_cyclic_e1(spec, lo, hi)?;
    let e2 = turn_page(&e1)?;
    certify_collapse(&e2)?;
    let degeneration_page =
        if e1.entries_equal_within(&e2, &e2.valid) { 1 } else { 2 };
    let euler_conserved = euler_step_is_conserved(&e1, &e2);
    let mut entries = BTreeMap::new();
    for nd in lo..=hi {
        entries.insert(nd, Dim::Finite(e2.total_along(nd)));
    }
    let hn = HomologyTable {
        label: format!("negative cyclic homology: {}", spec.label()),
        entries,
        notes: vec![
            "column sums of the collapsed cyclic sheet".to_string(),
        ],
    };
    let hh = hkr_hochschild(spec, lo, hi);
    let mut edge = BTreeMap::new();
    for nd in lo..=hi {
        let surviving = e2.dim(0, nd).unwrap_or(0);
        let hh_n = match hh.dim_at(nd) {
            Dim::Finite(v) => v,
            Dim::Infinite => unreachable!(),
        };
        let hn_n = match hn.dim_at(nd) {
            Dim::Finite(v) => v,
            Dim::Infinite => unreachable!(),
        };
        let kind = if surviving == 0 {
            EdgeMapKind::Zero
        } else if surviving == hh_n && hn_n == hh_n {
            EdgeMapKind::Iso
        } else {
            EdgeMapKind::Unclassified
        };
        edge.insert(nd, kind);
    }
    Ok(CyclicReport { e1, e2, degeneration_page, euler_conserved, hn, edge })
}

// ---------------------------------------------------------------------------
// The weight-filtration chart for negative cyclic homology
// ---------------------------------------------------------------------------

/// Row-by-row contributions to negative cyclic homology: row `k ≤ 0` is the
/// singular cohomology shifted to degrees `2k - *`, row `k ≥ 1` is the
/// collapsed sheet of the weight-`≥ k` truncation, contributing at degrees
/// `2k - (p + q)`.
#[derive(Clone, Debug)]
pub struct HnChart {
    pub label: String,
    pub rows: BTreeMap<i64, BTreeMap<i64, u64>>,
    pub notes: Vec<String>,
}

/// The collapsed truncated sheet for one row `k ≥ 1`: degreewise dimensions
/// indexed by total degree `p + q`.
fn truncated_row(spec: &CurveSpec, k: i64, ranks: &CurveRanks) -> Result<BTreeMap<i64, u64>> {
    let p_lo = k;
    let p_hi = k + 3;
    let valid = Window { p: (p_lo, p_hi), q: (-p_hi + 1, 1) };
    // Truncation makes every window side structurally clean except the far
    // column edge.
    let hard = Hardness { p_lo: true, p_hi: false, q_lo: true, q_hi: true };
    let mut page = BigradedPage::new(PageKind::HodgeDeRham, 1, valid, hard, valid);
    for p in p_lo..=p_hi {
        let table = wedge_hypercohomology(spec, p as u32);
        for (q, d) in &table.entries {
            if !valid.contains(p, *q) {
                continue;
            }
            match d {
                Dim::Finite(v) => page.set_entry(p, *q, *v),
                Dim::Infinite => unreachable!("weight tables are finite"),
            }
        }
    }
    // Staircase arrows out of each column p: gamma for p = 1, beta_{p-1}
    // for p ≥ 2. (alpha and sigma start in column 0, outside every
    // truncation.)
    for p in p_lo..=p_hi {
        let cell = (p, -p + 1);
        let sdim = page.dim(cell.0, cell.1).unwrap_or(0);
        let (tp, tq) = PageKind::HodgeDeRham.d_target(1, cell.0, cell.1);
        let tdim = page.dim(tp, tq).unwrap_or(0);
        if sdim == 0 || tdim == 0 {
            continue;
        }
        let rd = if p == 1 {
            ranks.gamma.clone()
        } else {
            ranks.beta[&((p - 1) as u32)].clone()
        };
        page.set_diff(
            cell.0,
            cell.1,
            Differential { rank: Some(rd.rank), provenance: rd.provenance },
        );
    }
    let e2 = turn_page(&page)?;
    certify_collapse(&e2)?;
    let mut out = BTreeMap::new();
    for ((p, q), v) in e2.entries_sorted() {
        if v > 0 {
            *out.entry(p + q).or_insert(0) += v;
        }
    }
    Ok(out)
}

/// The full chart covering negative cyclic degrees `lo..=hi`.
pub fn hn_chart(spec: &CurveSpec, lo: i64, hi: i64) -> Result<HnChart> {
    assert!(lo <= hi);
    let mut rows = BTreeMap::new();
    let sing = singular_cohomology(spec);
    // Rows k ≤ 0 contribute H^j at degree 2k - j for j = 0, 1, 2.
    let k_min = lo.div_euclid(2);
    for k in k_min..=0i64 {
        let mut row = BTreeMap::new();
        for j in 0..=2i64 {
            let nd = 2 * k - j;
            if nd < lo || nd > hi {
                continue;
            }
            if let Dim::Finite(v) = sing.dim_at(j) {
                if v > 0 {
                    row.insert(nd, v);
                }
            }
        }
        rows.insert(k, row);
    }
    // Rows k ≥ 1 contribute the collapsed truncated sheet at 2k - (p + q).
    let k_max = (hi + 2).div_euclid(2).max(1);
    let ranks = curve_ranks(spec, (k_max + 3) as u32)?;
    for k in 1..=k_max {
        let mut row = BTreeMap::new();
        for (total, v) in truncated_row(spec, k, &ranks)? {
            let nd = 2 * k - total;
            if nd >= lo && nd <= hi && v > 0 {
                row.insert(nd, v);
            }
        }
        rows.insert(k, row);
    }
    Ok(HnChart {
        label: format!("weight rows of negative cyclic homology: {}", spec.label()),
        rows,
        notes: vec![
            "rows k ≤ 0 are shifted singular cohomology".to_string(),
            "rows k ≥ 1 are collapsed weight-truncated sheets".to_string(),
        ],
    })
}

/// Negative cyclic homology via the chart: sum the rows degree by degree.
pub fn hn_table(spec: &CurveSpec, lo: i64, hi: i64) -> Result<HomologyTable> {
    let chart = hn_chart(spec, lo, hi)?;
    let mut entries: BTreeMap<i64, Dim> =
        (lo..=hi).map(|nd| (nd, Dim::Finite(0))).collect();
    for row in chart.rows.values() {
        for (nd, v) in row {
            if let Some(Dim::Finite(cur)) = entries.get(nd).copied() {
                entries.insert(*nd, Dim::Finite(cur + v));
            }
        }
    }
    Ok(HomologyTable {
        label: format!("negative cyclic homology: {}", spec.label()),
        entries,
        notes: vec!["assembled from the weight-filtration chart".to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nodal(g: u64, n: u64) -> CurveSpec {
        CurveSpec::nodal(g, n).unwrap()
    }

    fn row_dims(page: &BigradedPage, q: i64, p_range: std::ops::RangeInclusive<i64>) -> Vec<u64> {
        p_range.map(|p| page.dim(p, q).unwrap()).collect()
    }

    #[test]
    fn hdr_e1_frozen_for_genus_two_one_node() {
        let e1 = build_hdr_e1(&nodal(2, 1), 3).unwrap();
        assert_eq!(row_dims(&e1, 1, 0..=3), vec![2, 1, 0, 0]);
        assert_eq!(row_dims(&e1, 0, 0..=3), vec![1, 2, 1, 0]);
        // Staircase: one node puts a single dimension at (p, -p+1) and
        // (p, -p+2) for p ≥ 2.
        for p in 2..=4i64 {
            assert_eq!(e1.dim(p, -p + 1), Some(1), "lower staircase p={p}");
            assert_eq!(e1.dim(p, -p + 2), Some(1), "upper staircase p={p}");
        }
        // Rank provenances: alpha and sigma by rule, gamma and the
        // staircase computed.
        assert!(matches!(
            e1.diffs[&(0, 0)],
            Differential { rank: Some(0), provenance: Provenance::Rule { .. } }
        ));
        assert!(matches!(
            e1.diffs[&(0, 1)],
            Differential { rank: Some(0), provenance: Provenance::Rule { .. } }
        ));
        assert!(matches!(
            e1.diffs[&(1, 0)],
            Differential { rank: Some(1), provenance: Provenance::Computed { .. } }
        ));
        assert!(matches!(
            e1.diffs[&(2, -1)],
            Differential { rank: Some(1), provenance: Provenance::Computed { .. } }
        ));
    }

    #[test]
    fn hdr_e2_frozen_tables() {
        // (genus, nodes) → (q=1 row (E2^{0,1}, E2^{1,1}), q=0 row
        // (E2^{0,0}, E2^{1,0}, E2^{2,0})).
        let cases: &[((u64, u64), (u64, u64), (u64, u64, u64))] = &[
            ((1, 1), (1, 1), (1, 0, 0)),
            ((2, 1), (2, 1), (1, 1, 0)),
            ((2, 2), (2, 1), (1, 0, 0)),
            ((3, 1), (3, 1), (1, 2, 0)),
            ((3, 3), (3, 1), (1, 0, 0)),
        ];
        for &((g, n), q1, q0) in cases {
            let rep = hodge_de_rham(&nodal(g, n), 3).unwrap();
            assert_eq!(
                row_dims(&rep.e2, 1, 0..=1),
                vec![q1.0, q1.1],
                "q=1 row of ({g},{n})"
            );
            assert_eq!(
                row_dims(&rep.e2, 0, 0..=2),
                vec![q0.0, q0.1, q0.2],
                "q=0 row of ({g},{n})"
            );
            // The staircase dies entirely.
            for p in 2..=4i64 {
                assert_eq!(rep.e2.dim(p, -p + 1), Some(0));
                assert_eq!(rep.e2.dim(p, -p + 2), Some(0));
            }
            assert_eq!(rep.degeneration_page, 2, "({g},{n})");
            assert!(rep.euler_conserved, "({g},{n})");
            assert!(rep.abutment_consistent, "({g},{n})");
        }
        // The cuspidal cubic: deduced ranks give rows (0, 1) and (1, 0, 0).
        let rep = hodge_de_rham(&CurveSpec::cuspidal_cubic(), 3).unwrap();
        assert_eq!(row_dims(&rep.e2, 1, 0..=1), vec![0, 1]);
        assert_eq!(row_dims(&rep.e2, 0, 0..=2), vec![1, 0, 0]);
        assert_eq!(rep.degeneration_page, 2);
        assert!(rep.euler_conserved);
        assert!(rep.abutment_consistent);
    }

    #[test]
    fn smooth_curves_degenerate_on_the_first_page() {
        for g in [0, 1, 3] {
            let rep = hodge_de_rham(&nodal(g, 0), 3).unwrap();
            assert_eq!(rep.degeneration_page, 1, "genus {g}");
            assert!(rep.abutment_consistent);
        }
        for (g, n) in [(1, 1), (3, 2)] {
            let rep = hodge_de_rham(&nodal(g, n), 3).unwrap();
            assert_eq!(rep.degeneration_page, 2, "({g},{n})");
        }
    }

    #[test]
    fn cusp_ranks_are_deduced_uniquely() {
        let ranks = curve_ranks(&CurveSpec::cuspidal_cubic(), 4).unwrap();
        assert_eq!(ranks.alpha.rank, 0);
        assert_eq!(ranks.sigma.rank, 1);
        assert_eq!(ranks.gamma.rank, 2);
        for rd in [&ranks.alpha, &ranks.sigma, &ranks.gamma] {
            assert!(matches!(rd.provenance, Provenance::Deduced { .. }));
        }
        for j in 1..=4u32 {
            assert_eq!(ranks.beta[&j].rank, 2, "beta_{j}");
            assert!(matches!(ranks.beta[&j].provenance, Provenance::Computed { .. }));
        }
    }

    #[test]
    fn nodal_alpha_sigma_deduced_to_zero() {
        for (g, n) in [(1, 1), (2, 1), (3, 3)] {
            let (alpha, sigma) = deduce_alpha_sigma(&nodal(g, n)).unwrap();
            assert_eq!(alpha.rank, 0, "alpha of ({g},{n})");
            assert_eq!(sigma.rank, 0, "sigma of ({g},{n})");
            assert!(matches!(alpha.provenance, Provenance::Deduced { .. }));
            assert!(matches!(sigma.provenance, Provenance::Deduced { .. }));
        }
    }

    #[test]
    fn corrupted_rank_is_rejected_with_location() {
        let mut e1 = build_hdr_e1(&nodal(1, 1), 3).unwrap();
        // Claiming rank 1 for alpha starves (1,0): 1 - 1 - 1 < 0.
        e1.diffs.get_mut(&(0, 0)).unwrap().rank = Some(1);
        match turn_page(&e1) {
            Err(EngineError::InconsistentRanks { p, q, .. }) => {
                assert_eq!((p, q), (1, 0));
            }
            other => panic!("expected an inconsistent-rank error, got {other:?}"),
        }
        // A rank exceeding min(source, target) is rejected outright.
        let mut e1 = build_hdr_e1(&nodal(1, 1), 3).unwrap();
        e1.diffs.get_mut(&(2, -1)).unwrap().rank = Some(5);
        assert!(matches!(
            turn_page(&e1),
            Err(EngineError::InconsistentRanks { p: 2, q: -1, .. })
        ));
    }

    #[test]
    fn cyclic_sheet_matches_frozen_hn_sequence() {
        let rep = cyclic_u(&nodal(1, 1), -4, 6).unwrap();
        let got: Vec<u64> = (-4..=6)
            .map(|nd| match rep.hn.dim_at(nd) {
                Dim::Finite(v) => v,
                Dim::Infinite => unreachable!(),
            })
            .collect();
        assert_eq!(got, vec![2, 1, 2, 1, 2, 0, 1, 0, 1, 0, 1]);
        assert_eq!(rep.degeneration_page, 2);
        assert!(rep.euler_conserved);
        // u·B ranks on the first page: sigma at k = -1, alpha at k = 0,
        // gamma at k = 1, b-squared zero at even k, beta at odd k ≥ 3.
        assert_eq!(rep.e1.diffs[&(0, -1)].rank, Some(0));
        assert_eq!(rep.e1.diffs[&(0, 0)].rank, Some(0));
        assert_eq!(rep.e1.diffs[&(0, 1)].rank, Some(1));
        assert_eq!(rep.e1.diffs[&(0, 2)].rank, Some(0));
        assert!(matches!(
            rep.e1.diffs[&(0, 2)].provenance,
            Provenance::Rule { .. }
        ));
        assert_eq!(rep.e1.diffs[&(0, 3)].rank, Some(1));
    }

    #[test]
    fn chart_and_sheet_agree_on_hn() {
        let specs = [
            nodal(1, 1),
            nodal(2, 1),
            nodal(3, 3),
            nodal(2, 0),
            CurveSpec::cuspidal_cubic(),
        ];
        for spec in specs {
            let rep = cyclic_u(&spec, -4, 6).unwrap();
            let chart_table = hn_table(&spec, -4, 6).unwrap();
            for nd in -4..=6i64 {
                assert_eq!(
                    rep.hn.dim_at(nd),
                    chart_table.dim_at(nd),
                    "HN_{nd} of {}",
                    spec.label()
                );
            }
        }
    }

    #[test]
    fn chart_rows_have_the_expected_shape() {
        let chart = hn_chart(&nodal(1, 1), -4, 6).unwrap();
        // Row 0: singular cohomology at degrees 0, -1, -2.
        assert_eq!(chart.rows[&0], BTreeMap::from([(0, 1), (-1, 1), (-2, 1)]));
        // Row 1: the weight-one survivors. (1,1) has g - n = 0 at degree 1.
        assert_eq!(chart.rows[&1], BTreeMap::from([(0, 1)]));
        // Rows k ≥ 2: a single torsion survivor at degree 2k - 2.
        assert_eq!(chart.rows[&2], BTreeMap::from([(2, 1)]));
        assert_eq!(chart.rows[&3], BTreeMap::from([(4, 1)]));
        let chart = hn_chart(&nodal(2, 1), -2, 3).unwrap();
        // Row 1 of (2,1): g - n = 1 at degree 1 and h^1(weight one) = 1 at
        // degree 0.
        assert_eq!(chart.rows[&1], BTreeMap::from([(1, 1), (0, 1)]));
    }

    #[test]
    fn cusp_hn_values() {
        let rep = cyclic_u(&CurveSpec::cuspidal_cubic(), -4, 6).unwrap();
        let got: Vec<u64> = (-4..=6)
            .map(|nd| match rep.hn.dim_at(nd) {
                Dim::Finite(v) => v,
                Dim::Infinite => unreachable!(),
            })
            .collect();
        assert_eq!(got, vec![2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 2]);
    }

    #[test]
    fn edge_classification_frozen() {
        use EdgeMapKind::*;
        let rep = cyclic_u(&nodal(1, 1), -4, 6).unwrap();
        let expected = [
            (-4, Zero),
            (-3, Zero),
            (-2, Zero),
            (-1, Iso),
            (0, Iso),
            (1, Zero),
            (2, Iso),
            (3, Zero),
            (4, Iso),
            (5, Zero),
            (6, Iso),
        ];
        for (nd, kind) in expected {
            assert_eq!(rep.edge[&nd], kind, "degree {nd}");
        }
        let rep = cyclic_u(&CurveSpec::cuspidal_cubic(), -2, 4).unwrap();
        let expected = [
            (-2, Zero),
            (-1, Zero),
            (0, Iso),
            (1, Zero),
            (2, Iso),
            (3, Zero),
            (4, Iso),
        ];
        for (nd, kind) in expected {
            assert_eq!(rep.edge[&nd], kind, "cusp degree {nd}");
        }
        // A curve with spare weight-one classes is not classified in
        // degree 1: the u^0 column survives only partially.
        let rep = cyclic_u(&nodal(2, 1), -2, 2).unwrap();
        assert_eq!(rep.edge[&1], Unclassified);
    }

    #[test]
    fn deduction_rejects_impossible_and_ambiguous_sheets() {
        // Making gamma unknown alongside an impossible abutment: no
        // assignment can reach totals that overshoot the sheet.
        let spec = nodal(1, 1);
        let p_hi = 2 + HDR_BUFFER;
        let ranks = curve_ranks(&spec, p_hi as u32).unwrap();
        let globals = GlobalRanks {
            alpha: None,
            sigma: None,
            gamma: Some(ranks.gamma.clone()),
            beta: ranks.beta.clone(),
        };
        let sheet = assemble_hdr_e1(&spec, 2, &globals);
        let mut bad_totals = singular_totals(&spec);
        bad_totals.insert(0, 7);
        assert!(deduce_forced_ranks(&sheet, &bad_totals).is_err());
        // Leaving gamma unknown as well makes the system underdetermined
        // for a curve with excess genus: (2,1) admits several assignments.
        let spec = nodal(2, 1);
        let ranks = curve_ranks(&spec, p_hi as u32).unwrap();
        let globals = GlobalRanks {
            alpha: None,
            sigma: None,
            gamma: None,
            beta: ranks.beta.clone(),
        };
        let sheet = assemble_hdr_e1(&spec, 2, &globals);
        let err = deduce_forced_ranks(&sheet, &singular_totals(&spec));
        assert!(err.is_err());
    }

    #[test]
    fn smooth_cyclic_sheet() {
        let rep = cyclic_u(&nodal(2, 0), -4, 4).unwrap();
        // HN of a smooth genus-2 curve: rows k ≤ 0 contribute shifted
        // (1, 4, 1) singular cohomology and the weight-one row adds
        // (g, 1) = (2, 1) at degrees (1, 0); everything else vanishes.
        let expected: &[(i64, u64)] = &[
            (-4, 2),
            (-3, 4),
            (-2, 2),
            (-1, 4),
            (0, 2),
            (1, 2),
            (2, 0),
            (3, 0),
            (4, 0),
        ];
        for &(nd, v) in expected {
            assert_eq!(rep.hn.dim_at(nd), Dim::Finite(v), "HN_{nd}");
        }
        assert_eq!(rep.degeneration_page, 1);
    }
}
