//! Built-in worked examples with their independently predicted values.

use diffcoh::diffcoh::brute_force_eigen_dims;
use diffcoh::diffcoh::frobenius_twisted_prediction;
use diffcoh::diffgroup::GroupModule;
use diffcoh::{DiffModule, Field, FieldSpec, FiniteDiffGroup, Matrix};
use serde_json::Value;

use crate::commands::{self, Method};
use crate::report::{Dim, ReportTable};
use crate::CliError;

/// `(name, aliases, description)`.
pub const EXAMPLES: &[(&str, &[&str], &str)] = &[
    (
        "cyclic-trivial",
        &["ex3_6_1"],
        "Z/p with sigma(x) = tx acting trivially on F_p",
    ),
    (
        "frobenius-twisted",
        &["ex3_6_2"],
        "Z/p with sigma(x) = tx on F_{p^2} with sigma_M the inverse Frobenius",
    ),
    ("additive-group", &["ga"], "G_a with the Frobenius, trivial module F_p"),
    (
        "induced-cyclic4",
        &["thm38_z4"],
        "M^inf against stable cohomology for a faithful 2-dim Z/4 module over F_3",
    ),
];

pub fn resolve(name: &str) -> Option<&'static str> {
    EXAMPLES
        .iter()
        .find(|(n, aliases, _)| *n == name || aliases.contains(&name))
        .map(|(n, _, _)| *n)
}

/// Optional parameters; each example uses the ones it needs.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExampleArgs {
    pub p: Option<u32>,
    pub t: Option<i64>,
    pub jmax: Option<usize>,
    pub trunc: Option<u32>,
}

pub fn run(name: &str, args: ExampleArgs) -> Result<ReportTable, CliError> {
    let canonical = resolve(name).ok_or_else(|| CliError::Scenario {
        path: "examples".into(),
        message: format!(
            "unknown example {name:?}; available: {}",
            EXAMPLES.iter().map(|e| e.0).collect::<Vec<_>>().join(", ")
        ),
    })?;
    match canonical {
        "cyclic-trivial" => cyclic_trivial(args.p.unwrap_or(3), args.t.unwrap_or(2), args.jmax.unwrap_or(9)),
        "frobenius-twisted" => frobenius_twisted(args.p.unwrap_or(3), args.t.unwrap_or(2), args.jmax.unwrap_or(6)),
        "additive-group" => commands::ga_example(args.p.unwrap_or(3), args.jmax.unwrap_or(4), args.trunc.unwrap_or(12)),
        "induced-cyclic4" => induced_cyclic4(args.jmax.unwrap_or(4)),
        _ => unreachable!("resolve returns a listed name"),
    }
}

fn multiplicative_order(t: i64, p: u32) -> u32 {
    let t = t.rem_euclid(p as i64) as u64;
    let mut x = t;
    let mut r = 1;
    while x != 1 {
        x = x * t % p as u64;
        r += 1;
    }
    r
}

/// `dim H^n_σ(Z/p, k)` for the trivial module from the cohomology ring
/// description: `k` in degree 0, then `2·[2r | n] + [2r | n−1] + [2r | n+1]`.
pub fn cyclic_trivial_closed_form(p: u32, t: i64, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let r2 = 2 * multiplicative_order(t, p) as usize;
    2 * usize::from(n.is_multiple_of(r2))
        + usize::from((n - 1).is_multiple_of(r2))
        + usize::from((n + 1).is_multiple_of(r2))
}

fn cyclic_group(p: u32, t: i64) -> Result<FiniteDiffGroup, CliError> {
    if p < 3 || !diffcoh::linalg::is_prime(p) {
        return Err(CliError::Scenario {
            path: "p".into(),
            message: format!("the example needs an odd prime, got {p}"),
        });
    }
    Ok(FiniteDiffGroup::cyclic_group(p as i64, t)?)
}

pub fn cyclic_trivial(p: u32, t: i64, jmax: usize) -> Result<ReportTable, CliError> {
    let group = cyclic_group(p, t)?;
    let field = FieldSpec::prime(p)?;
    let module = DiffModule::trivial(&field, &group, 1);
    let mut table = commands::difference_cohomology(&module, jmax, Method::Both)?;
    table.title = format!("H^n_sigma(Z/{p}, F_{p}), sigma_G(x) = {t}x, trivial module");
    let mut matches = true;
    for row in &mut table.rows {
        let expected = cyclic_trivial_closed_form(p, t, row.degree);
        matches &= row.dim == Dim::Finite(expected);
        row.extra.push(("closed_form".into(), Value::from(expected)));
    }
    table.metadata.push(("closed form agreement".into(), yes_no(matches)));
    Ok(table)
}

pub fn frobenius_twisted(p: u32, t: i64, jmax: usize) -> Result<ReportTable, CliError> {
    let group = cyclic_group(p, t)?;
    let field = FieldSpec::standard(p, 2, 1)?;
    let module = DiffModule::trivial(&field, &group, 1);
    let mut table = commands::difference_cohomology(&module, jmax, Method::Both)?;
    table.title = format!(
        "H^n_sigma(Z/{p}, k), k = F_{}, sigma_A = Frobenius, module (k, Frobenius^-1), sigma_G(x) = {t}x",
        field.order()
    );
    let predicted = frobenius_twisted_prediction(&field, 1, t.rem_euclid(p as i64) as u32, jmax);
    let fp = field.prime_field();
    let eig = |i: usize| {
        let a = (0..i).fold(1u8, |acc, _| fp.mul(acc, fp.from_int(t)));
        brute_force_eigen_dims(&field, 1, a)
    };
    let mut matches = true;
    for row in &mut table.rows {
        matches &= row.dim == Dim::Finite(predicted[row.degree]);
        row.extra.push(("predicted".into(), Value::from(predicted[row.degree])));
        if row.degree == 0 {
            let (inv, coinv) = eig(0);
            row.extra.push(("even_degree_display".into(), Value::from(inv + coinv)));
        }
    }
    table.metadata.push(("prediction agreement".into(), yes_no(matches)));
    table.notes.push(
        "degree 0: the two-term sequence gives only the invariant summand k^1; \
         the even-degree display k^(t^j) + k_(t^j) read at j = 0 would add k_1"
            .into(),
    );
    Ok(table)
}

pub fn induced_cyclic4_module() -> GroupModule {
    let field = FieldSpec::prime(3).expect("3 is prime");
    let group = FiniteDiffGroup::cyclic_group(4, 2).expect("valid multiplier");
    let gen = Matrix::from_vec(
        2,
        2,
        vec![
            field.from_int(0),
            field.from_int(-1),
            field.from_int(1),
            field.from_int(0),
        ],
    );
    let rho = (0..4).map(|k| diffcoh::linalg::mat_pow(&field, &gen, k)).collect();
    GroupModule {
        field,
        group,
        dim: 2,
        rho,
    }
}

pub fn induced_cyclic4(jmax: usize) -> Result<ReportTable, CliError> {
    let module = induced_cyclic4_module();
    let mut table = commands::induced_stable(&module, jmax)?;
    table
        .metadata
        .push(("module".into(), "rho(1) = [[0, -1], [1, 0]], faithful".into()));
    Ok(table)
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}
