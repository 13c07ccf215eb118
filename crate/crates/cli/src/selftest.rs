//! The self-test: randomized route comparison, negative controls, validator
//! consistency, twisted-polynomial laws and the golden examples.

use diffcoh::diffcoh::{assemble_ses, cone_cohomology, h0_sigma_direct};
use diffcoh::diffgroup::{group_hom_reformulation_check, validate_left, HomReformulation};
use diffcoh::ore::{ore_mul, OrePoly};
use diffcoh::random::{self, negative_controls, oracle_suite, random_ore_poly, SuiteCase};
use diffcoh::{Error, FieldSpec};
use serde_json::json;

use crate::examples::{self, ExampleArgs};
use crate::report::{emit, Format};
use crate::scenario::Scenario;
use crate::{par_map, CliError};

pub const SUITE_SIZE: usize = 50;
pub const NEGATIVE_CONTROLS: usize = 10;

/// Golden JSON output of each built-in example at its default parameters.
pub const GOLDEN: &[(&str, &str)] = &[
    ("cyclic-trivial", include_str!("../tests/golden/cyclic-trivial.json")),
    (
        "frobenius-twisted",
        include_str!("../tests/golden/frobenius-twisted.json"),
    ),
    ("additive-group", include_str!("../tests/golden/additive-group.json")),
    ("induced-cyclic4", include_str!("../tests/golden/induced-cyclic4.json")),
];

#[derive(Debug)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct SelftestReport {
    pub lines: Vec<CheckLine>,
    /// The first failure, with a replayable case where there is one.
    pub failure: Option<CliError>,
}

impl SelftestReport {
    fn record(&mut self, name: &str, result: Result<String, CliError>) {
        match result {
            Ok(detail) => self.lines.push(CheckLine {
                name: name.into(),
                passed: true,
                detail,
            }),
            Err(e) => {
                self.lines.push(CheckLine {
                    name: name.into(),
                    passed: false,
                    detail: e.to_string(),
                });
                self.failure.get_or_insert(e);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&format!(
                "{} {}: {}\n",
                if l.passed { "PASS" } else { "FAIL" },
                l.name,
                l.detail
            ));
        }
        out
    }
}

fn replay(case: &SuiteCase, message: String) -> CliError {
    CliError::Assertion {
        message: format!("case {} ({}): {message}", case.index, case.label),
        replay: Some(json!(Scenario::of_module(&case.module, "diffcoh", case.jmax))),
    }
}

/// Sequence route, cone and direct degree-0 computation on one valid case.
pub fn check_oracle_case(case: &SuiteCase) -> Result<(), CliError> {
    let m = &case.module;
    let ses = assemble_ses(m, case.jmax).map_err(|e| replay(case, e.to_string()))?;
    let cone = cone_cohomology(m, case.jmax).map_err(|e| replay(case, e.to_string()))?;
    let a: Vec<usize> = ses.iter().map(|r| r.dim).collect();
    let b: Vec<usize> = cone.iter().map(|r| r.dim).collect();
    if a != b {
        return Err(replay(case, format!("sequence route {a:?} but cone {b:?}")));
    }
    let direct = h0_sigma_direct(m).map_err(|e| replay(case, e.to_string()))?.0;
    if direct != a[0] {
        return Err(replay(
            case,
            format!("degree 0 is {} but M^G ∩ M^sigma has dim {direct}", a[0]),
        ));
    }
    Ok(())
}

/// A corrupted case must be rejected by the cone with a chain-map violation.
pub fn check_negative_control(case: &SuiteCase) -> Result<usize, CliError> {
    match cone_cohomology(&case.module, case.jmax) {
        Err(Error::ChainMapViolation { degree }) => Ok(degree),
        other => Err(replay(case, format!("expected a chain-map violation, got {other:?}"))),
    }
}

fn check_validators(cases: &[SuiteCase]) -> Result<String, CliError> {
    let mut compared = 0;
    for case in cases {
        let valid = validate_left(&case.module).is_ok();
        match group_hom_reformulation_check(&case.module) {
            HomReformulation::NotApplicable => continue,
            HomReformulation::Holds if valid => {}
            HomReformulation::Fails { .. } if !valid => {}
            other => {
                return Err(replay(
                    case,
                    format!("validate_left valid = {valid} but reformulation gives {other:?}"),
                ))
            }
        }
        compared += 1;
    }
    Ok(format!("{compared} modules with invertible sigma_M agree"))
}

/// Associativity and distributivity on random triples, and `r·t = t·σ(r)` for every `r`.
pub fn check_ore_laws(seed: u64, triples: usize) -> Result<String, CliError> {
    let mut rng = random::rng(seed);
    let fail = |m: String| CliError::Assertion {
        message: m,
        replay: None,
    };
    for (p, n) in [(2, 2), (3, 2)] {
        let f = FieldSpec::standard(p, n, 1)?;
        for _ in 0..triples {
            let (a, b, c) = (
                random_ore_poly(&f, 4, &mut rng),
                random_ore_poly(&f, 4, &mut rng),
                random_ore_poly(&f, 4, &mut rng),
            );
            if ore_mul(&ore_mul(&a, &b)?, &c)? != ore_mul(&a, &ore_mul(&b, &c)?)? {
                return Err(fail(format!(
                    "associativity fails over F_{}: {a:?} {b:?} {c:?}",
                    f.order()
                )));
            }
            if ore_mul(&a, &b.add(&c)?)? != ore_mul(&a, &b)?.add(&ore_mul(&a, &c)?)?
                || ore_mul(&a.add(&b)?, &c)? != ore_mul(&a, &c)?.add(&ore_mul(&b, &c)?)?
            {
                return Err(fail(format!(
                    "distributivity fails over F_{}: {a:?} {b:?} {c:?}",
                    f.order()
                )));
            }
        }
        let t = OrePoly::t(&f);
        for r in f.elements() {
            let lhs = ore_mul(&OrePoly::new(&f, vec![r]), &t)?;
            let rhs = ore_mul(&t, &OrePoly::new(&f, vec![f.sigma(r)]))?;
            if lhs != rhs {
                return Err(fail(format!("r·t != t·sigma(r) for r = {r:?} over F_{}", f.order())));
            }
        }
    }
    Ok(format!(
        "{triples} triples each over F_4 and F_9, commutation law on every element"
    ))
}

fn check_goldens() -> Result<String, CliError> {
    for (name, golden) in GOLDEN {
        let table = examples::run(name, ExampleArgs::default())?;
        if emit(&table, Format::Json) != *golden {
            return Err(CliError::Assertion {
                message: format!("example {name} differs from its golden output"),
                replay: None,
            });
        }
    }
    Ok(format!("{} examples match", GOLDEN.len()))
}

pub fn run(seed: u64) -> SelftestReport {
    let mut report = SelftestReport::default();
    let suite = oracle_suite(seed, SUITE_SIZE);
    let outcomes = par_map(&suite, check_oracle_case);
    report.record(
        "oracle equivalence",
        outcomes
            .into_iter()
            .collect::<Result<Vec<()>, _>>()
            .map(|_| format!("{SUITE_SIZE} random modules, cone = sequence route = direct degree 0 (seed {seed})")),
    );
    let controls = negative_controls(seed, NEGATIVE_CONTROLS);
    let degrees = par_map(&controls, check_negative_control);
    report.record(
        "negative controls",
        degrees.into_iter().collect::<Result<Vec<usize>, _>>().map(|d| {
            format!(
                "{} corrupted modules rejected as expected (chain-map violation in degrees {d:?})",
                d.len()
            )
        }),
    );
    let all: Vec<SuiteCase> = suite.iter().chain(&controls).cloned().collect();
    report.record("compatibility validators", check_validators(&all));
    report.record("twisted polynomial laws", check_ore_laws(seed, 200));
    report.record("golden examples", check_goldens());
    report
}
