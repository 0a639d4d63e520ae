//! Scripted derivation that the 13-point statement holds over fields, and the
//! counterexample run over the non-reduced ring.

use std::fmt;

use crate::corpus;
use crate::field::BaseField;
use crate::geometry::{column_nondegenerate, pair_nondegenerate, triple_minor, PointMatrix};
use crate::poly::{parse_poly, MultiPoly};
use crate::ring::{Ring, RingElement};
use crate::statement::{check_instance, collinearity_closure, IncidenceStatement, Triple, Verdict};

const Q: BaseField = BaseField::Rationals;

fn poly(text: &str) -> MultiPoly {
    parse_poly(text, Q).expect("well-formed literal")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Step {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Steps in order. Execution stops after the first failing step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReplayTranscript {
    pub steps: Vec<Step>,
}

impl ReplayTranscript {
    pub fn passed(&self) -> bool {
        self.steps.len() == STEP_COUNT && self.steps.iter().all(Step::passed)
    }

    pub fn first_failure(&self) -> Option<(&Step, &Check)> {
        self.steps
            .iter()
            .find_map(|s| s.checks.iter().find(|c| !c.passed).map(|c| (s, c)))
    }
}

impl fmt::Display for ReplayTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, step) in self.steps.iter().enumerate() {
            let mark = if step.passed() { "ok" } else { "FAILED" };
            writeln!(f, "step {}: {} ... {mark}", n + 1, step.name)?;
            for c in &step.checks {
                let mark = if c.passed { "ok" } else { "FAILED" };
                writeln!(f, "    {} ... {mark}", c.claim)?;
                if !c.passed {
                    writeln!(f, "      computed: {}", c.computed)?;
                }
            }
        }
        Ok(())
    }
}

pub const STEP_COUNT: usize = 8;

fn identity(claim: &str, computed: &MultiPoly, expected: &MultiPoly) -> Check {
    Check {
        claim: format!("{claim}: ±({expected})"),
        computed: computed.to_string(),
        passed: computed.equals_up_to_sign(expected),
    }
}

fn exact(claim: &str, computed: &MultiPoly, expected: &MultiPoly) -> Check {
    Check {
        claim: format!("{claim}: {expected}"),
        computed: computed.to_string(),
        passed: computed == expected,
    }
}

/// Brute-force square root in `F_p`.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    (0..p).find(|&r| (r as u128 * r as u128) % p as u128 == (a % p) as u128)
}

/// The solved family over `F_p`, taking `x` to be a square root of 2.
pub fn solved_matrix_mod(p: u64) -> Result<PointMatrix, String> {
    let ring = Ring::prime(p).map_err(|e| e.to_string())?;
    let root = sqrt_mod(2, p).ok_or_else(|| format!("2 is not a square mod {p}"))?;
    Ok(corpus::solved_matrix_in(&ring, &ring.from_i64(root as i64)))
}

fn solved_check(label: &str, m: Result<PointMatrix, String>) -> Check {
    let s = corpus::thirteen_point_statement();
    match m.map(|m| check_instance(&s, &m)) {
        Ok(Ok(r)) => Check {
            claim: format!("{label}: hypotheses hold and minor {{11,12,13}} = 0"),
            computed: format!("{}, {:?}", r.verdict, r.failures()),
            passed: r.verdict == Verdict::ConclusionHolds,
        },
        Ok(Err(e)) => Check { claim: label.into(), computed: e.to_string(), passed: false },
        Err(e) => Check { claim: label.into(), computed: e, passed: false },
    }
}

/// Run the symbolic derivation over `Q[x, y, z, w]`.
pub fn replay_second_proof() -> ReplayTranscript {
    let mut t = ReplayTranscript::default();
    let m = corpus::thirteen_point_symbolic();
    let minor = |[i, j, k]: Triple| m.minor(i, j, k).expect("indices in range");
    let s = corpus::thirteen_point_statement();

    let relations: [(Triple, MultiPoly); 4] = [
        ([2, 10, 11], poly("x*y^2 + 2*x*y - x^2*y - y^2 - y + x - 2")),
        ([1, 8, 12], poly("y*w + w - x*y^2")),
        ([4, 9, 10], poly("x*y + z - x*y*z - y")),
        ([7, 9, 12], poly("x*(y + z - y*z - w)")),
    ];
    let [minor_2_10_11, minor_1_8_12, minor_4_9_10, _] = relations.clone().map(|r| r.1);

    let mut checks = Vec::new();
    for triple in &s.collinear {
        if relations.iter().any(|r| r.0 == *triple) {
            continue;
        }
        let value = minor(*triple);
        checks.push(Check {
            claim: format!("minor {triple:?} vanishes identically"),
            computed: value.to_string(),
            passed: value.is_zero(),
        });
    }
    t.steps.push(Step { name: "normal form satisfies the remaining collinearities".into(), checks });
    if !t.steps[0].passed() {
        return t;
    }

    let checks = relations
        .iter()
        .map(|(triple, expected)| identity(&format!("minor {triple:?}"), &minor(*triple), expected))
        .collect();
    t.steps.push(Step { name: "four nontrivial minors".into(), checks });
    if !t.steps[1].passed() {
        return t;
    }

    let w = poly("y + z - y*z");
    let no_w = minor_1_8_12.substitute("w", &w);
    let checks = vec![identity("substitute w = y + z - yz", &no_w, &poly("z*(y^2 - 1) - (y^2 + y - x*y^2)"))];
    t.steps.push(Step { name: "eliminate w".into(), checks });
    if !t.steps[2].passed() {
        return t;
    }

    let no_z = minor_4_9_10.substitute_fraction("z", &poly("y^2 + y - x*y^2"), &poly("y^2 - 1"));
    let no_z_expected = poly("y*(2 - x + y - 2*x*y - y^2 + x^2*y^2)");
    let checks = vec![identity("substitute z = (y^2 + y - xy^2)/(y^2 - 1)", &no_z, &no_z_expected)];
    t.steps.push(Step { name: "eliminate z".into(), checks });
    if !t.steps[3].passed() {
        return t;
    }

    let y = poly("y");
    let combined = match no_z_expected.exact_divide(&y) {
        Ok(q) => &q + &minor_2_10_11,
        Err(e) => {
            t.steps.push(Step {
                name: "combine".into(),
                checks: vec![Check { claim: "divide by y".into(), computed: e.to_string(), passed: false }],
            });
            return t;
        }
    };
    let checks = vec![exact(
        "(previous)/y + minor [2, 10, 11]",
        &combined,
        &poly("y*(-2*y + x^2*y + x*y - x^2)"),
    )];
    t.steps.push(Step { name: "combine".into(), checks });
    if !t.steps[4].passed() {
        return t;
    }

    let sextic = poly("x^6 - 3*x^5 - 2*x^4 + 12*x^3 - 4*x^2 - 12*x + 8");
    let factored = poly("(x - 2)*(x - 1)*(x^2 - 2)^2");
    let eliminated = minor_2_10_11.substitute_fraction("y", &poly("x^2"), &poly("x^2 + x - 2"));
    let quintic = sextic.exact_divide(&poly("x - 2"));
    let checks = vec![
        identity("substitute y = x^2/(x^2 + x - 2) into minor [2, 10, 11]", &eliminated, &sextic),
        exact("(x - 2)(x - 1)(x^2 - 2)^2", &factored, &sextic),
        match quintic {
            Ok(q) => exact("sextic / (x - 2)", &q, &poly("x^5 - x^4 - 4*x^3 + 4*x^2 + 4*x - 4")),
            Err(e) => Check { claim: "sextic / (x - 2)".into(), computed: e.to_string(), passed: false },
        },
    ];
    t.steps.push(Step { name: "eliminate y and factor".into(), checks });
    if !t.steps[5].passed() {
        return t;
    }

    let f11 = solved_matrix_mod(11);
    let checks = vec![
        solved_check("over Q[x]/(x^2 - 2)", Ok(corpus::solved_matrix_sqrt2())),
        solved_check("over F7 with x = 3", Ok(corpus::solved_matrix_f7())),
        Check {
            claim: "over F11 no square root of 2 exists".into(),
            computed: match &f11 {
                Ok(_) => "a square root was found".into(),
                Err(e) => e.clone(),
            },
            passed: f11.is_err(),
        },
    ];
    t.steps.push(Step { name: "solved family".into(), checks });
    if !t.steps[6].passed() {
        return t;
    }

    let everything: std::collections::BTreeSet<usize> = (1..=13).collect();
    let checks = corpus::THIRTEEN_DEGENERATE_SEEDS
        .iter()
        .map(|seed| {
            let closure = collinearity_closure(&s.collinear, *seed);
            Check {
                claim: format!("closure of {seed:?} is all 13 points"),
                computed: format!("{closure:?}"),
                passed: closure == everything,
            }
        })
        .collect();
    t.steps.push(Step { name: "degenerate cases".into(), checks });
    t
}

/// One condition of the counterexample run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub value: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleRun {
    pub checks: Vec<NamedCheck>,
    pub conclusion_value: RingElement,
}

impl CounterexampleRun {
    /// Every hypothesis holds and the conclusion minor is nonzero.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && !self.conclusion_value.is_zero()
    }
}

/// Evaluate the hypotheses of `s` on `m` in a fixed order: `priority`
/// collinearities first, then the other collinearities, columns and pairs.
pub fn counterexample_checks(s: &IncidenceStatement, m: &PointMatrix, priority: &[Triple]) -> CounterexampleRun {
    let mut checks = Vec::new();
    let mut collinear: Vec<Triple> = priority.to_vec();
    collinear.extend(s.collinear.iter().filter(|t| !priority.contains(t)));
    for [i, j, k] in collinear {
        let v = triple_minor(m, i, j, k).expect("indices in range");
        checks.push(NamedCheck { name: format!("minor {{{i},{j},{k}}} = 0"), passed: v.is_zero(), value: v.to_string() });
    }
    for i in 1..=s.n {
        let ok = column_nondegenerate(m, i).expect("index in range");
        checks.push(NamedCheck { name: format!("column {i} unimodular"), passed: ok, value: ok.to_string() });
    }
    for &[i, j] in &s.nondeg_pairs {
        let ok = pair_nondegenerate(m, i, j).expect("indices in range");
        checks.push(NamedCheck { name: format!("pair {{{i},{j}}} distinct"), passed: ok, value: ok.to_string() });
    }
    for &[i, j, k] in &s.nondeg_triples {
        let ok = triple_minor(m, i, j, k).expect("indices in range").is_unit();
        checks.push(NamedCheck { name: format!("minor {{{i},{j},{k}}} a unit"), passed: ok, value: ok.to_string() });
    }
    let [a, b, c] = s.conclusion;
    let conclusion_value = triple_minor(m, a, b, c).expect("indices in range");
    CounterexampleRun { checks, conclusion_value }
}

/// The 13-point statement on the built-in counterexample.
pub fn run_counterexample() -> CounterexampleRun {
    counterexample_checks(
        &corpus::thirteen_point_statement(),
        &corpus::counterexample_matrix(),
        &corpus::THIRTEEN_HIGHLIGHTED,
    )
}
