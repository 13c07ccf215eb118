//! Scenario files: JSON descriptions of a field, a group with an endomorphism
//! and a module, converted into library types with field-precise errors.

use std::collections::{BTreeMap, VecDeque};

use diffcoh::diffgroup::GroupModule;
use diffcoh::fields::{default_modulus, make_field};
use diffcoh::ratdiff::GradedDiffModule;
use diffcoh::{DiffModule, Field, FieldSpec, FiniteDiffGroup, FqElem, Matrix, SemilinearMap};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jmax: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u32,
    #[serde(default = "one")]
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default)]
    pub sigma_power: i64,
}

fn one() -> u32 {
    1
}

impl Default for FieldJson {
    fn default() -> Self {
        FieldJson {
            p: 2,
            n: 1,
            modulus: None,
            sigma_power: 0,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupJson {
    Cyclic {
        m: i64,
        t: i64,
    },
    Table {
        table: Vec<Vec<usize>>,
        sigma: Vec<usize>,
    },
    /// `S_3` with elements in lexicographic order of permutations; without
    /// `sigma`, conjugation by the transposition `(0 1)`.
    Symmetric3 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<usize>>,
    },
}

impl Default for GroupJson {
    fn default() -> Self {
        GroupJson::Cyclic { m: 2, t: 1 }
    }
}

/// A field element: an integer (reduced into the prime field) or the list of
/// its coefficients in the polynomial basis, lowest degree first.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Coeffs(Vec<i64>),
}

pub type MatrixJson = Vec<Vec<ElemJson>>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub dim: usize,
    /// Images of group elements keyed by their index; missing elements are
    /// filled in from products of the given ones.
    #[serde(default)]
    pub rho: BTreeMap<String, MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_m: Option<SigmaJson>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaJson {
    #[serde(rename = "S")]
    pub s: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GradedJson {
    pub p: u8,
    pub weights: BTreeMap<String, usize>,
    #[serde(default)]
    pub xmaps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Scenario {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_graded(text: &str) -> Result<GradedJson, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

impl FieldJson {
    pub fn build(&self) -> Result<FieldSpec, CliError> {
        let modulus = match &self.modulus {
            Some(m) => m.clone(),
            None => default_modulus(self.p, self.n).ok_or_else(|| {
                invalid(
                    "field.modulus",
                    format!("no built-in modulus for F_{}^{}; give one", self.p, self.n),
                )
            })?,
        };
        make_field(self.p, self.n, &modulus, self.sigma_power).map_err(|e| invalid("field", e.to_string()))
    }

    pub fn of(field: &FieldSpec) -> Self {
        FieldJson {
            p: field.p(),
            n: field.n(),
            modulus: Some(field.modulus().to_vec()),
            sigma_power: field.sigma_power() as i64,
        }
    }
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteDiffGroup, CliError> {
        let group = match self {
            GroupJson::Cyclic { m, t } => FiniteDiffGroup::cyclic_group(*m, *t),
            GroupJson::Table { table, sigma } => FiniteDiffGroup::from_table(table.clone(), sigma.clone()),
            GroupJson::Symmetric3 { sigma: None } => Ok(FiniteDiffGroup::symmetric3_inner()),
            GroupJson::Symmetric3 { sigma: Some(s) } => FiniteDiffGroup::symmetric3(s.clone()),
        };
        group.map_err(|e| invalid("group", e.to_string()))
    }
}

fn build_elem(field: &FieldSpec, e: &ElemJson, path: &str) -> Result<FqElem, CliError> {
    match e {
        ElemJson::Int(v) => Ok(field.from_int(*v)),
        ElemJson::Coeffs(c) => field.from_coeffs(c).map_err(|err| invalid(path, err.to_string())),
    }
}

pub fn build_matrix(
    field: &FieldSpec,
    m: &MatrixJson,
    rows: usize,
    cols: usize,
    path: &str,
) -> Result<Matrix<FqElem>, CliError> {
    if m.len() != rows {
        return Err(invalid(path, format!("expected {rows} rows, found {}", m.len())));
    }
    let mut out = Matrix::zeros(field, rows, cols);
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(invalid(
                format!("{path}[{r}]"),
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (c, e) in row.iter().enumerate() {
            out[(r, c)] = build_elem(field, e, &format!("{path}[{r}][{c}]"))?;
        }
    }
    Ok(out)
}

pub fn matrix_json(field: &FieldSpec, m: &Matrix<FqElem>) -> MatrixJson {
    m.iter_rows()
        .map(|row| {
            row.iter()
                .map(|&x| {
                    if field.n() == 1 {
                        ElemJson::Int(field.coeffs(x)[0] as i64)
                    } else {
                        ElemJson::Coeffs(field.coeffs(x).iter().map(|&c| c as i64).collect())
                    }
                })
                .collect()
        })
        .collect()
}

/// Fills in `ρ` on all of `G` from the given elements, breadth first; a
/// conflicting product is left for the homomorphism check to report. With
/// nothing given, the action is trivial.
fn complete_rho(
    field: &FieldSpec,
    group: &FiniteDiffGroup,
    dim: usize,
    given: BTreeMap<usize, Matrix<FqElem>>,
) -> Result<Vec<Matrix<FqElem>>, CliError> {
    if given.is_empty() {
        return Ok(vec![Matrix::identity(field, dim); group.order()]);
    }
    let mut rho: Vec<Option<Matrix<FqElem>>> = vec![None; group.order()];
    for (&g, m) in &given {
        rho[g] = Some(m.clone());
    }
    if rho[group.identity()].is_none() {
        rho[group.identity()] = Some(Matrix::identity(field, dim));
    }
    let gens: Vec<usize> = given.keys().copied().collect();
    let mut queue: VecDeque<usize> = (0..group.order()).filter(|&g| rho[g].is_some()).collect();
    while let Some(h) = queue.pop_front() {
        for &g in &gens {
            let hg = group.mul(h, g);
            if rho[hg].is_none() {
                let value = diffcoh::linalg::mat_mul(
                    field,
                    rho[h].as_ref().expect("queued elements are set"),
                    rho[g].as_ref().expect("generators are set"),
                );
                rho[hg] = Some(value);
                queue.push_back(hg);
            }
        }
    }
    rho.into_iter()
        .enumerate()
        .map(|(g, m)| {
            m.ok_or_else(|| {
                invalid(
                    "module.rho",
                    format!("element {g} is not generated by the given elements"),
                )
            })
        })
        .collect()
}

/// Everything a scenario describes, built and shape-checked but not yet
/// validated against the compatibility condition.
pub struct Built {
    pub field: FieldSpec,
    pub group: FiniteDiffGroup,
    pub module: DiffModule,
}

impl Scenario {
    pub fn build(&self) -> Result<Built, CliError> {
        let field = self.field.clone().unwrap_or_default().build()?;
        let group = self.group.build()?;
        let spec = self
            .module
            .as_ref()
            .ok_or_else(|| invalid("module", "missing module"))?;
        let d = spec.dim;
        let mut given = BTreeMap::new();
        for (key, m) in &spec.rho {
            let path = format!("module.rho.{key}");
            let g: usize = key
                .parse()
                .ok()
                .filter(|&g| g < group.order())
                .ok_or_else(|| invalid(&path, format!("not an element index below {}", group.order())))?;
            given.insert(g, build_matrix(&field, m, d, d, &path)?);
        }
        let rho = complete_rho(&field, &group, d, given)?;
        let base = GroupModule {
            field: field.clone(),
            group: group.clone(),
            dim: d,
            rho,
        };
        base.check_homomorphism().map_err(CliError::Library)?;
        let sigma_m = match &spec.sigma_m {
            Some(s) => SemilinearMap::new(
                &field,
                build_matrix(&field, &s.s, d, d, "module.sigma_m.S")?,
                s.twist.unwrap_or(DiffModule::required_twist(&field) as i64),
            ),
            None => SemilinearMap::new(
                &field,
                Matrix::identity(&field, d),
                DiffModule::required_twist(&field) as i64,
            ),
        };
        Ok(Built {
            field,
            group,
            module: DiffModule::new(base, sigma_m),
        })
    }

    /// A self-contained scenario reproducing `module`.
    pub fn of_module(module: &DiffModule, task: &str, jmax: usize) -> Scenario {
        let f = module.field();
        let g = module.group();
        let table = (0..g.order())
            .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
            .collect();
        let rho = (0..g.order())
            .map(|e| (e.to_string(), matrix_json(f, module.rho(e))))
            .collect();
        Scenario {
            field: Some(FieldJson::of(f)),
            group: GroupJson::Table {
                table,
                sigma: g.sigma_map().to_vec(),
            },
            module: Some(ModuleJson {
                dim: module.dim(),
                rho,
                sigma_m: Some(SigmaJson {
                    s: matrix_json(f, &module.sigma_m.matrix),
                    twist: Some(module.sigma_m.twist as i64),
                }),
            }),
            task: Some(task.to_string()),
            jmax: Some(jmax),
        }
    }
}

impl GradedJson {
    pub fn build(&self) -> Result<GradedDiffModule, CliError> {
        let key = |k: &str, path: &str| -> Result<i64, CliError> {
            k.parse()
                .map_err(|_| invalid(path, format!("weight key {k:?} is not an integer")))
        };
        let mut weights = BTreeMap::new();
        for (k, &d) in &self.weights {
            weights.insert(key(k, &format!("weights.{k}"))?, d);
        }
        let mut xmaps = BTreeMap::new();
        for (k, rows) in &self.xmaps {
            let path = format!("xmaps.{k}");
            let j = key(k, &path)?;
            let cols = weights.get(&j).copied().unwrap_or(0);
            if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != cols) {
                return Err(invalid(
                    format!("{path}[{r}]"),
                    format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            let p = self.p as i64;
            let data = rows.iter().flatten().map(|&v| v.rem_euclid(p) as u8).collect();
            xmaps.insert(j, Matrix::from_vec(rows.len(), cols, data));
        }
        let m = GradedDiffModule {
            p: self.p,
            weights,
            xmaps,
        };
        diffcoh::ratdiff::validate_graded(&m).map_err(|e| invalid("xmaps", e.to_string()))?;
        Ok(m)
    }
}
