//! One function per subcommand, each producing a [`ReportTable`].

use diffcoh::diffcoh::{
    assemble_ses, compare_induced_and_stable, cone_cohomology, h0_sigma_direct, stable_cohomology, DiffCohResult,
};
use diffcoh::diffgroup::{validate_left, GroupModule};
use diffcoh::groupcoh::cohomology;
use diffcoh::ratdiff::{
    decompose_orbits, ga_example_dims, gm_difference_cohomology, gm_stable_h0, GradedDiffModule, MaybeInfiniteDim,
};
use diffcoh::{DiffModule, FieldSpec, FiniteDiffGroup};
use serde_json::json;

use crate::report::{Dim, ReportTable, Row};
use crate::scenario::{matrix_json, Scenario};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Ses,
    Cone,
    Both,
}

pub fn field_label(f: &FieldSpec) -> String {
    if f.n() == 1 {
        format!("F_{}", f.p())
    } else {
        format!(
            "F_{} (p = {}, modulus {:?}, sigma = Frob^{})",
            f.order(),
            f.p(),
            f.modulus(),
            f.sigma_power()
        )
    }
}

fn header(title: &str, field: &FieldSpec, group: &FiniteDiffGroup) -> ReportTable {
    ReportTable::new(title)
        .meta("field", field_label(field))
        .meta("group", group.description())
}

pub fn validate(module: &DiffModule) -> Result<ReportTable, CliError> {
    validate_left(module).map_err(|v| CliError::Library(v.into()))?;
    let mut t = header("validate", module.field(), module.group()).meta("dim", module.dim());
    t.notes.push("valid difference module".into());
    Ok(t)
}

pub fn group_cohomology(module: &DiffModule, jmax: usize) -> Result<ReportTable, CliError> {
    let f = module.field();
    let mut t = header("group cohomology H^j(G, M)", f, module.group());
    for c in cohomology(module, jmax)? {
        t.rows.push(
            Row::new(c.degree, c.dim_fp, "bar")
                .with("dim_k", c.dim_k)
                .with("twist", c.sigma.twist)
                .with("sigma_matrix", json!(matrix_json(f, &c.sigma.matrix))),
        );
    }
    Ok(t)
}

fn diffcoh_row(r: &DiffCohResult, module: &DiffModule, method: &str) -> Row {
    let mut row = Row::new(r.degree, r.dim, method);
    row.inv = r.inv;
    row.coinv = r.coinv;
    if module.sigma_m.twist == 0 {
        row = row.with("dim_k", r.dim / module.field().n() as usize);
    }
    row
}

/// `H^j_σ(G, M)` by the chosen route; with [`Method::Both`], a disagreement
/// between the routes (or with the direct degree-0 computation) is an error.
pub fn difference_cohomology(module: &DiffModule, jmax: usize, method: Method) -> Result<ReportTable, CliError> {
    let mut t = header(
        "difference cohomology H^j_sigma(G, M), dims over F_p",
        module.field(),
        module.group(),
    );
    match method {
        Method::Ses => {
            validate_left(module).map_err(|v| CliError::Library(v.into()))?;
            for r in assemble_ses(module, jmax)? {
                t.rows.push(diffcoh_row(&r, module, "ses"));
            }
        }
        Method::Cone => {
            for r in cone_cohomology(module, jmax)? {
                t.rows.push(diffcoh_row(&r, module, "cone"));
            }
        }
        Method::Both => {
            validate_left(module).map_err(|v| CliError::Library(v.into()))?;
            let ses = assemble_ses(module, jmax)?;
            let cone = cone_cohomology(module, jmax)?;
            let direct = h0_sigma_direct(module)?.0;
            let agree = ses.iter().zip(&cone).all(|(a, b)| a.dim == b.dim) && ses[0].dim == direct;
            if !agree {
                let dims = |rs: &[DiffCohResult]| rs.iter().map(|r| r.dim).collect::<Vec<_>>();
                return Err(CliError::Assertion {
                    message: format!(
                        "sequence route {:?}, cone {:?}, direct degree 0 {direct}",
                        dims(&ses),
                        dims(&cone)
                    ),
                    replay: Some(json!(Scenario::of_module(module, "diffcoh", jmax))),
                });
            }
            for r in &ses {
                t.rows.push(diffcoh_row(r, module, "both"));
            }
            t = t.meta("oracle agreement", "yes");
        }
    }
    Ok(t)
}

pub fn stable(module: &GroupModule, jmax: usize) -> Result<ReportTable, CliError> {
    let mut t = header(
        "stable cohomology colim_i H^j(G, M^(i)), dims over F_p",
        &module.field,
        &module.group,
    );
    for j in 0..=jmax {
        let s = stable_cohomology(module, j)?;
        if j == 0 {
            t = t.meta(
                "sigma_G periodicity",
                format!("preperiod {}, period {}", s.profile.preperiod, s.profile.period),
            );
        }
        t.rows.push(
            Row::new(j, s.dim_fp, "eventual-image")
                .with("dim_k", s.dim_k)
                .with("stabilization_level", s.stabilization_level),
        );
    }
    Ok(t)
}

/// `H^j_σ(G, M^∞)` against `H^{j−1}_st(G, M)`; disagreement is an error.
pub fn induced_stable(module: &GroupModule, jmax: usize) -> Result<ReportTable, CliError> {
    let report = compare_induced_and_stable(module, jmax)?;
    let mut t = header(
        "induced module: H^j_sigma(G, M^inf) against H^(j-1)_st(G, M), dims over F_p",
        &module.field,
        &module.group,
    )
    .meta(
        "sigma_G periodicity",
        format!(
            "preperiod {}, period {}",
            report.profile.preperiod, report.profile.period
        ),
    );
    for r in &report.rows {
        t.rows.push(
            Row::new(r.degree, r.induced, "shift-system")
                .with("stable", r.stable)
                .with("shift_invariants", r.shift_invariants)
                .with("agree", r.induced == r.stable && r.shift_invariants == 0),
        );
    }
    report.check()?;
    Ok(t)
}

pub fn gm(module: &GradedDiffModule) -> Result<ReportTable, CliError> {
    let h = gm_difference_cohomology(module)?;
    let stable = gm_stable_h0(module)?;
    let mut t = ReportTable::new("difference G_m-module, dims over F_p")
        .meta("p", module.p)
        .meta("weight-0 dim", module.weight_dim(0))
        .meta("stable H^0 (eventual image of x on M^0)", stable);
    t.rows.push(Row::new(0, h.h0, "weight-0 kernel"));
    t.rows.push(Row::new(1, h.h1, "weight-0 cokernel"));
    for (class, part) in decompose_orbits(module) {
        t.notes.push(format!(
            "orbit class {}: weights {:?}, dim {}",
            class.representative,
            class.chain,
            part.total_dim()
        ));
    }
    Ok(t)
}

pub fn ga_example(p: u32, jmax: usize, trunc: u32) -> Result<ReportTable, CliError> {
    let dims = ga_example_dims(p, jmax, trunc)?;
    let mut t = ReportTable::new("H^j_sigma(G_a, F_p) with sigma the Frobenius")
        .meta("p", p)
        .meta("truncation", format!("{trunc}, {}, {}", trunc + 1, trunc + 2));
    for (j, d) in dims.iter().enumerate() {
        let mut row = Row::new(j, 0, "shift-orbits");
        match d {
            MaybeInfiniteDim::Finite(n) => row.dim = Dim::Finite(*n),
            MaybeInfiniteDim::Infinite { evidence } => {
                row.dim = Dim::Infinite;
                row = row.with("evidence", json!(evidence));
            }
        }
        t.rows.push(row);
    }
    Ok(t)
}
