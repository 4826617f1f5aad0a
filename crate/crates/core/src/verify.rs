//! End-to-end verification: recompute every headline value and compare it
//! against the frozen expectations, grouped into named scopes.
//!
//! Each check records a name, a human-readable detail string, and whether
//! it passed. The `general` scope also exercises a negative control: a
//! deliberately corrupted differential rank must be rejected with the
//! offending cell named.

use std::fmt;

use crate::dgmodel::{
    check_de_rham_squares_to_zero, check_delta_squares_to_zero,
    check_derivations_commute, crossing_composite, de_rham,
    local_cohomology_table, SingularityModel,
};
use crate::error::{EngineError, Result};
use crate::modules::Dim;
use crate::oracle;
use crate::spectral::{
    build_hdr_e1, curve_ranks, cyclic_u, deduce_alpha_sigma, hn_table,
    hodge_de_rham, turn_page, EdgeMapKind, Provenance,
};
use crate::tables::{
    hkr_hochschild, plane_cubic_euler_check, singular_cohomology, CurveSpec,
};

/// One named verification with its outcome.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

/// Which family of checks to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scope {
    All,
    Local,
    NodalCubic,
    General,
    Cuspidal,
}

impl Scope {
    pub const NAMES: [&'static str; 5] =
        ["all", "local", "nodal-cubic", "general", "cuspidal"];

    pub fn from_name(name: &str) -> Option<Scope> {
        match name {
            "all" => Some(Scope::All),
            "local" => Some(Scope::Local),
            "nodal-cubic" => Some(Scope::NodalCubic),
            "general" => Some(Scope::General),
            "cuspidal" => Some(Scope::Cuspidal),
            _ => None,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scope::All => "all",
            Scope::Local => "local",
            Scope::NodalCubic => "nodal-cubic",
            Scope::General => "general",
            Scope::Cuspidal => "cuspidal",
        };
        write!(f, "{s}")
    }
}

/// The outcome of a verification run.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub scope: Scope,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }
}

fn check(checks: &mut Vec<CheckResult>, name: &str, pass: bool, detail: String) {
    checks.push(CheckResult { name: name.to_string(), detail, pass });
}

fn dims_of(table: &crate::tables::HomologyTable, lo: i64, hi: i64) -> Vec<Dim> {
    (lo..=hi).map(|d| table.dim_at(d)).collect()
}

fn finite_dims(table: &crate::tables::HomologyTable, lo: i64, hi: i64) -> Vec<u64> {
    dims_of(table, lo, hi)
        .into_iter()
        .map(|d| d.finite().unwrap_or(u64::MAX))
        .collect()
}

// ---------------------------------------------------------------------------
// Local scope
// ---------------------------------------------------------------------------

fn local_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    // Operator identities hold mechanically on every model.
    let mut all_ok = true;
    let mut details = Vec::new();
    for model in SingularityModel::ALL {
        for k in 0..=4u32 {
            let ok = check_delta_squares_to_zero(model, k, 3)
                && check_de_rham_squares_to_zero(model, k, 3)
                && check_derivations_commute(model, k, 3);
            if !ok {
                all_ok = false;
                details.push(format!("{model} weight {k} fails"));
            }
        }
    }
    check(
        checks,
        "local-operator-identities",
        all_ok,
        if all_ok {
            "Δ² = 0, d² = 0 and Δd = dΔ on all models through weight 4".into()
        } else {
            details.join("; ")
        },
    );

    // Frozen local cohomology dimensions for weights ≥ 2.
    let mut ok = true;
    let mut got = Vec::new();
    for model in SingularityModel::ALL {
        let expected = match model {
            SingularityModel::CuspidalCubicChart => 2,
            _ => 1,
        };
        for k in 2..=4u32 {
            let t = local_cohomology_table(model, k);
            let top = t.entries.get(&(-(k as i64) + 2)).copied();
            let sub = t.entries.get(&(-(k as i64) + 1)).copied();
            let fine = top == Some(Dim::Finite(expected))
                && sub == Some(Dim::Finite(expected));
            if !fine {
                ok = false;
            }
            got.push(format!(
                "{model} k={k}: ({}, {})",
                sub.map(|d| d.to_string()).unwrap_or_else(|| "?".into()),
                top.map(|d| d.to_string()).unwrap_or_else(|| "?".into()),
            ));
        }
    }
    check(checks, "local-cohomology-dimensions", ok, got.join("; "));

    // The crossing torsion composite is rank one and annihilated by the
    // coordinate functions.
    let comp = crossing_composite()?;
    let pass = comp.rank() == 1
        && comp.torsion_class_nonzero
        && comp.annihilated_by_x
        && comp.annihilated_by_y
        && comp.torsion_submodule_dimension == Dim::Finite(1);
    check(
        checks,
        "crossing-torsion-composite",
        pass,
        format!(
            "generator {}, rank {}, cyclic submodule dimension {}",
            comp.torsion_generator,
            comp.rank(),
            comp.torsion_submodule_dimension
        ),
    );

    // Induced de Rham ranks on homology.
    let mut ok = true;
    let mut got = Vec::new();
    for model in SingularityModel::ALL {
        let expected = match model {
            SingularityModel::CuspidalCubicChart => 2,
            _ => 1,
        };
        for k in 2..=4u32 {
            let rank = de_rham(model, k).induced_matrix(-(k as i64) + 1)?.rank();
            if rank as u64 != expected {
                ok = false;
            }
            got.push(format!("{model} k={k}: rank {rank}"));
        }
    }
    check(checks, "local-de-rham-ranks", ok, got.join("; "));

    // Independent dense-linear-algebra oracle agrees with the symbolic
    // dimensions at weights 2 and 3.
    let mut ok = true;
    let mut mismatches = Vec::new();
    let trunc = oracle::truncation_degree();
    for model in SingularityModel::ALL {
        for k in 2..=3u32 {
            let t = local_cohomology_table(model, k);
            let m = crate::dgmodel::wedge_power(model, k);
            for (i, d) in &t.entries {
                if let Dim::Finite(v) = d {
                    let o = oracle::homology_dimension(m.complex(), *i, trunc);
                    if o != *v {
                        ok = false;
                        mismatches.push(format!(
                            "{model} k={k} degree {i}: table {v} vs oracle {o}"
                        ));
                    }
                }
            }
        }
    }
    check(
        checks,
        "local-oracle-agreement",
        ok,
        if ok {
            format!("all finite local dimensions match the degree-{trunc} oracle")
        } else {
            mismatches.join("; ")
        },
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Nodal-cubic scope: the (genus 1, one node) curve
// ---------------------------------------------------------------------------

fn nodal_cubic_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    let spec = CurveSpec::nodal(1, 1)?;

    let hh = hkr_hochschild(&spec, -2, 4);
    let got = finite_dims(&hh, -2, 4);
    let pass = got == vec![0, 1, 2, 1, 1, 1, 1];
    check(
        checks,
        "nodal-cubic-hochschild",
        pass,
        format!("HH(-2..4) = {got:?}"),
    );

    let rep = hodge_de_rham(&spec, 3)?;
    let q1: Vec<u64> = (0..=1).map(|p| rep.e2.dim(p, 1).unwrap()).collect();
    let q0: Vec<u64> = (0..=2).map(|p| rep.e2.dim(p, 0).unwrap()).collect();
    let pass = q1 == vec![1, 1]
        && q0 == vec![1, 0, 0]
        && rep.degeneration_page == 2
        && rep.euler_conserved
        && rep.abutment_consistent;
    check(
        checks,
        "nodal-cubic-weight-sheet",
        pass,
        format!(
            "second page rows q=1:{q1:?} q=0:{q0:?}, degenerates on page {}",
            rep.degeneration_page
        ),
    );

    let cyc = cyclic_u(&spec, -4, 6)?;
    let got = finite_dims(&cyc.hn, -4, 6);
    let pass = got == vec![2, 1, 2, 1, 2, 0, 1, 0, 1, 0, 1];
    check(
        checks,
        "nodal-cubic-negative-cyclic",
        pass,
        format!("HN(-4..6) = {got:?}"),
    );

    use EdgeMapKind::{Iso, Zero};
    let expected = [
        (-1, Iso),
        (0, Iso),
        (1, Zero),
        (2, Iso),
        (3, Zero),
        (4, Iso),
    ];
    let pass = expected.iter().all(|(nd, kind)| cyc.edge[nd] == *kind);
    check(
        checks,
        "nodal-cubic-edge-maps",
        pass,
        format!(
            "projection to Hochschild homology: {:?}",
            expected
                .iter()
                .map(|(nd, _)| (*nd, cyc.edge[nd]))
                .collect::<Vec<_>>()
        ),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// General scope: nodal curves of arbitrary genus and node count
// ---------------------------------------------------------------------------

fn general_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    // Frozen second pages across the sample family.
    let cases: &[((u64, u64), (u64, u64), (u64, u64, u64))] = &[
        ((2, 1), (2, 1), (1, 1, 0)),
        ((2, 2), (2, 1), (1, 0, 0)),
        ((3, 1), (3, 1), (1, 2, 0)),
        ((3, 3), (3, 1), (1, 0, 0)),
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for &((g, n), q1, q0) in cases {
        let rep = hodge_de_rham(&CurveSpec::nodal(g, n)?, 3)?;
        let r1: Vec<u64> = (0..=1).map(|p| rep.e2.dim(p, 1).unwrap()).collect();
        let r0: Vec<u64> = (0..=2).map(|p| rep.e2.dim(p, 0).unwrap()).collect();
        let fine = r1 == vec![q1.0, q1.1]
            && r0 == vec![q0.0, q0.1, q0.2]
            && rep.degeneration_page == 2
            && rep.abutment_consistent
            && rep.euler_conserved;
        if !fine {
            ok = false;
        }
        got.push(format!("({g},{n}): q1 {r1:?} q0 {r0:?}"));
    }
    check(checks, "general-weight-sheets", ok, got.join("; "));

    // Smooth curves collapse on the first page.
    let mut ok = true;
    for g in [0u64, 1, 2, 3] {
        let rep = hodge_de_rham(&CurveSpec::nodal(g, 0)?, 3)?;
        if rep.degeneration_page != 1 || !rep.abutment_consistent {
            ok = false;
        }
    }
    check(
        checks,
        "general-smooth-collapse",
        ok,
        "smooth curves of genus 0..3 degenerate on the first page".into(),
    );

    // Abutment deduction forces the two structure-row ranks to zero.
    let mut ok = true;
    let mut got = Vec::new();
    for (g, n) in [(1u64, 1u64), (2, 1), (2, 2), (3, 3)] {
        let (alpha, sigma) = deduce_alpha_sigma(&CurveSpec::nodal(g, n)?)?;
        let deduced = matches!(alpha.provenance, Provenance::Deduced { .. })
            && matches!(sigma.provenance, Provenance::Deduced { .. });
        if alpha.rank != 0 || sigma.rank != 0 || !deduced {
            ok = false;
        }
        got.push(format!("({g},{n}): α={} σ={}", alpha.rank, sigma.rank));
    }
    check(checks, "general-rank-deduction", ok, got.join("; "));

    // The chart route and the sheet route to negative cyclic homology
    // agree degree by degree.
    let mut ok = true;
    for (g, n) in [(1u64, 1u64), (2, 1), (3, 2), (2, 0)] {
        let spec = CurveSpec::nodal(g, n)?;
        let sheet = cyclic_u(&spec, -4, 6)?;
        let chart = hn_table(&spec, -4, 6)?;
        for nd in -4..=6i64 {
            if sheet.hn.dim_at(nd) != chart.dim_at(nd) {
                ok = false;
            }
        }
    }
    check(
        checks,
        "general-chart-sheet-agreement",
        ok,
        "weight chart and cyclic sheet give the same negative cyclic \
         dimensions on -4..6"
            .into(),
    );

    // Plane-cubic Euler characteristics vanish and match the tables.
    let mut ok = true;
    let mut got = Vec::new();
    for spec in [CurveSpec::nodal(1, 1)?, CurveSpec::cuspidal_cubic()] {
        let chk = plane_cubic_euler_check(&spec)?;
        if chk.chi_structure != 0 || chk.chi_cotangent != 0 || !chk.matches_tables {
            ok = false;
        }
        got.push(format!(
            "{}: χ(O) = {}, χ(L) = {}",
            spec.label(),
            chk.chi_structure,
            chk.chi_cotangent
        ));
    }
    check(checks, "general-plane-cubic-euler", ok, got.join("; "));

    // Negative control: corrupting a differential rank must be rejected
    // with the offending cell named.
    let mut e1 = build_hdr_e1(&CurveSpec::nodal(1, 1)?, 3)?;
    e1.diffs.get_mut(&(0, 0)).expect("alpha arrow present").rank = Some(1);
    let pass = match turn_page(&e1) {
        Err(EngineError::InconsistentRanks { p, q, .. }) => (p, q) == (1, 0),
        _ => false,
    };
    check(
        checks,
        "general-corrupted-rank-control",
        pass,
        if pass {
            "a corrupted rank is rejected and the failing cell (1,0) is named"
                .into()
        } else {
            "the corrupted sheet was not rejected as expected".into()
        },
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Cuspidal scope
// ---------------------------------------------------------------------------

fn cuspidal_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    let spec = CurveSpec::cuspidal_cubic();

    let sing = singular_cohomology(&spec);
    let got = finite_dims(&sing, 0, 2);
    check(
        checks,
        "cuspidal-singular-cohomology",
        got == vec![1, 0, 1],
        format!("H^0..2 = {got:?}"),
    );

    let hh = hkr_hochschild(&spec, -2, 4);
    let got = finite_dims(&hh, -2, 4);
    check(
        checks,
        "cuspidal-hochschild",
        got == vec![0, 1, 3, 2, 2, 2, 2],
        format!("HH(-2..4) = {got:?}"),
    );

    let ranks = curve_ranks(&spec, 4)?;
    let deduced = matches!(ranks.alpha.provenance, Provenance::Deduced { .. })
        && matches!(ranks.sigma.provenance, Provenance::Deduced { .. })
        && matches!(ranks.gamma.provenance, Provenance::Deduced { .. });
    let betas_computed = (1..=4u32).all(|j| {
        ranks.beta[&j].rank == 2
            && matches!(ranks.beta[&j].provenance, Provenance::Computed { .. })
    });
    let pass = ranks.alpha.rank == 0
        && ranks.sigma.rank == 1
        && ranks.gamma.rank == 2
        && deduced
        && betas_computed;
    check(
        checks,
        "cuspidal-deduced-ranks",
        pass,
        format!(
            "(α, σ, γ) = ({}, {}, {}) deduced; staircase ranks 2 computed",
            ranks.alpha.rank, ranks.sigma.rank, ranks.gamma.rank
        ),
    );

    let rep = hodge_de_rham(&spec, 3)?;
    let q1: Vec<u64> = (0..=1).map(|p| rep.e2.dim(p, 1).unwrap()).collect();
    let q0: Vec<u64> = (0..=2).map(|p| rep.e2.dim(p, 0).unwrap()).collect();
    let pass = q1 == vec![0, 1]
        && q0 == vec![1, 0, 0]
        && rep.degeneration_page == 2
        && rep.abutment_consistent
        && rep.euler_conserved;
    check(
        checks,
        "cuspidal-weight-sheet",
        pass,
        format!("second page rows q=1:{q1:?} q=0:{q0:?}"),
    );

    let cyc = cyclic_u(&spec, -4, 6)?;
    let got = finite_dims(&cyc.hn, -4, 6);
    let pass = got == vec![2, 0, 2, 0, 3, 0, 2, 0, 2, 0, 2];
    check(
        checks,
        "cuspidal-negative-cyclic",
        pass,
        format!("HN(-4..6) = {got:?}"),
    );

    use EdgeMapKind::{Iso, Zero};
    let expected = [(-1, Zero), (0, Iso), (1, Zero), (2, Iso), (3, Zero), (4, Iso)];
    let pass = expected.iter().all(|(nd, kind)| cyc.edge[nd] == *kind);
    check(
        checks,
        "cuspidal-edge-maps",
        pass,
        format!(
            "projection to Hochschild homology: {:?}",
            expected
                .iter()
                .map(|(nd, _)| (*nd, cyc.edge[nd]))
                .collect::<Vec<_>>()
        ),
    );
    Ok(())
}

/// Run all checks in a scope.
pub fn run_verify(scope: Scope) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    match scope {
        Scope::All => {
            local_checks(&mut checks)?;
            nodal_cubic_checks(&mut checks)?;
            general_checks(&mut checks)?;
            cuspidal_checks(&mut checks)?;
        }
        Scope::Local => local_checks(&mut checks)?,
        Scope::NodalCubic => nodal_cubic_checks(&mut checks)?,
        Scope::General => general_checks(&mut checks)?,
        Scope::Cuspidal => cuspidal_checks(&mut checks)?,
    }
    Ok(VerifyReport { scope, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scope_passes() {
        for scope in [Scope::Local, Scope::NodalCubic, Scope::General, Scope::Cuspidal] {
            let report = run_verify(scope).unwrap();
            assert!(!report.checks.is_empty());
            for c in &report.checks {
                assert!(c.pass, "{} [{}]: {}", c.name, scope, c.detail);
            }
        }
    }

    #[test]
    fn all_scope_concatenates() {
        let all = run_verify(Scope::All).unwrap();
        let parts: usize = [Scope::Local, Scope::NodalCubic, Scope::General, Scope::Cuspidal]
            .into_iter()
            .map(|s| run_verify(s).unwrap().checks.len())
            .sum();
        assert_eq!(all.checks.len(), parts);
        assert!(all.all_passed());
        assert_eq!(all.passed(), all.checks.len());
    }

    #[test]
    fn scope_names_round_trip() {
        for name in Scope::NAMES {
            let scope = Scope::from_name(name).unwrap();
            assert_eq!(scope.to_string(), name);
        }
        assert!(Scope::from_name("bogus").is_none());
    }
}
