//! Built-in rings, statements, matrices and tilings.

use std::collections::HashMap;

use crate::algebra::build_algebra_from_rewrites;
use crate::field::BaseField;
use crate::geometry::{PointMatrix, SymbolicMatrix};
use crate::poly::MultiPoly;
use crate::ring::Ring;
use crate::statement::{all_pairs, all_triples, IncidenceStatement, Triple};
use crate::io::{self, FormatError};
use crate::tiling::{Tile, Tiling};

const Q: BaseField = BaseField::Rationals;

/// `Q[x, eps]/(eps^2, x^2 - 2 - eps/4)`.
pub fn ring_a() -> Ring {
    build_algebra_from_rewrites(Q, &["x", "eps"], &[("eps^2", "0"), ("x^2", "2 + 1/4*eps")])
        .expect("valid presentation")
        .into()
}

/// `Q[x]/(x^2 - 2)`.
pub fn ring_sqrt2() -> Ring {
    build_algebra_from_rewrites(Q, &["x"], &[("x^2", "2")]).expect("valid presentation").into()
}

/// `Q[eps]/(eps^2)`.
pub fn dual_numbers() -> Ring {
    build_algebra_from_rewrites(Q, &["eps"], &[("eps^2", "0")]).expect("valid presentation").into()
}

/// The twenty collinear triples of the 13-point theorem.
pub const THIRTEEN_COLLINEAR: [Triple; 20] = [
    [1, 2, 3],
    [1, 2, 13],
    [1, 3, 13],
    [1, 4, 5],
    [1, 6, 9],
    [1, 7, 10],
    [1, 8, 12],
    [2, 3, 13],
    [2, 4, 6],
    [2, 5, 8],
    [2, 10, 11],
    [3, 4, 7],
    [3, 5, 6],
    [3, 8, 10],
    [4, 9, 10],
    [5, 7, 11],
    [6, 7, 13],
    [6, 8, 11],
    [6, 10, 12],
    [7, 9, 12],
];

/// The five collinearities of the counterexample that need real work.
pub const THIRTEEN_HIGHLIGHTED: [Triple; 5] = [[1, 7, 10], [1, 8, 12], [2, 10, 11], [4, 9, 10], [7, 9, 12]];

/// Triples whose collinearity forces all thirteen points onto one line.
pub const THIRTEEN_DEGENERATE_SEEDS: [Triple; 11] = [
    [1, 3, 4],
    [1, 3, 6],
    [1, 4, 6],
    [3, 4, 6],
    [3, 6, 7],
    [3, 6, 8],
    [3, 6, 9],
    [3, 6, 10],
    [3, 6, 11],
    [3, 6, 12],
    [3, 6, 13],
];

/// Thirteen distinct points, twenty collinearities, conclusion `{11, 12, 13}`.
pub fn thirteen_point_statement() -> IncidenceStatement {
    IncidenceStatement::new(13, all_pairs(13), [], THIRTEEN_COLLINEAR, [11, 12, 13])
}

const COUNTEREXAMPLE: [[&str; 3]; 13] = [
    ["1", "0", "0"],
    ["1", "1", "0"],
    ["0", "1", "0"],
    ["1", "1", "1"],
    ["0", "1", "1"],
    ["0", "0", "1"],
    ["1", "x + 1/14*eps - 1/56*eps*x", "1"],
    ["1", "1 + x - 3/28*eps - 9/56*eps*x", "x - 3/28*eps - 9/56*eps*x"],
    ["1", "0", "2 - x + 1/7*eps + 5/56*eps*x"],
    ["1", "2 - 3/28*eps - 1/28*eps*x", "x - 3/28*eps - 9/56*eps*x"],
    ["1", "1 + x - 3/28*eps - 9/56*eps*x", "2 - 5/28*eps - 1/7*eps*x"],
    ["1", "2 - 3/28*eps - 1/28*eps*x", "4 - 2*x"],
    ["1", "x + 1/14*eps - 1/56*eps*x", "0"],
];

/// The 13-point configuration over [`ring_a`] satisfying every hypothesis of
/// [`thirteen_point_statement`] but not its conclusion.
pub fn counterexample_matrix() -> PointMatrix {
    PointMatrix::parse(&ring_a(), &COUNTEREXAMPLE).expect("valid entries")
}

/// [`counterexample_matrix`] with `eps = 0`, over [`ring_sqrt2`].
pub fn counterexample_reduced() -> PointMatrix {
    let ring = ring_sqrt2();
    let sym = SymbolicMatrix::parse(Q, &COUNTEREXAMPLE)
        .expect("valid entries")
        .map(|p| p.substitute("eps", &MultiPoly::zero(Q)));
    let assignment = HashMap::from([("x".to_string(), ring.generator("x").expect("x"))]);
    sym.evaluate(&ring, &assignment).expect("evaluates")
}

/// The normal form with free parameters `x, y, z, w`.
pub fn thirteen_point_symbolic() -> SymbolicMatrix {
    SymbolicMatrix::parse(
        Q,
        &[
            ["1", "0", "0"],
            ["1", "1", "0"],
            ["0", "1", "0"],
            ["1", "1", "1"],
            ["0", "1", "1"],
            ["0", "0", "1"],
            ["1", "x", "1"],
            ["1", "y + 1", "y"],
            ["1", "0", "z"],
            ["1", "x*y", "y"],
            ["1", "y + 1", "y + 2 - x"],
            ["1", "x*y", "w"],
            ["1", "x", "0"],
        ],
    )
    .expect("valid entries")
}

/// The solved one-parameter family, still symbolic in `x` (with `x^2 = 2`).
pub fn solved_symbolic() -> SymbolicMatrix {
    SymbolicMatrix::parse(Q, &solved_entries()).expect("valid entries")
}

fn solved_entries() -> [[&'static str; 3]; 13] {
    [
        ["1", "0", "0"],
        ["1", "1", "0"],
        ["0", "1", "0"],
        ["1", "1", "1"],
        ["0", "1", "1"],
        ["0", "0", "1"],
        ["1", "x", "1"],
        ["1", "x + 1", "x"],
        ["1", "0", "2 - x"],
        ["1", "2", "x"],
        ["1", "x + 1", "2"],
        ["1", "2", "4 - 2*x"],
        ["1", "x", "0"],
    ]
}

/// The solved family over `ring`, with `x` sent to `x_value`.
pub fn solved_matrix_in(ring: &Ring, x_value: &crate::ring::RingElement) -> PointMatrix {
    let base = ring.base_field();
    let sym = SymbolicMatrix::parse(base, &solved_entries()).expect("valid entries");
    let assignment = HashMap::from([("x".to_string(), x_value.clone())]);
    sym.evaluate(ring, &assignment).expect("evaluates")
}

/// The solved family over `Q[x]/(x^2 - 2)`.
pub fn solved_matrix_sqrt2() -> PointMatrix {
    let ring = ring_sqrt2();
    solved_matrix_in(&ring, &ring.generator("x").expect("x"))
}

/// The solved family over `F_7` with `x = 3`.
pub fn solved_matrix_f7() -> PointMatrix {
    let ring = Ring::prime(7).expect("7 is prime");
    solved_matrix_in(&ring, &ring.from_i64(3))
}

/// Five points over the dual numbers whose nonzero maximal minors do not form
/// the bases of a matroid.
pub fn nonmatroid_matrix() -> PointMatrix {
    PointMatrix::parse(
        &dual_numbers(),
        &[["1", "0", "0"], ["0", "eps", "0"], ["0", "1", "eps"], ["0", "0", "eps"], ["0", "5", "3"]],
    )
    .expect("valid entries")
}

/// The eight Pappus lines on points `1..=9`.
pub const PAPPUS_COLLINEAR: [Triple; 8] =
    [[1, 2, 3], [1, 5, 7], [1, 6, 8], [2, 4, 7], [2, 6, 9], [3, 4, 8], [3, 5, 9], [4, 5, 6]];

/// Pappus: all points distinct, every triple that is neither a Pappus line
/// nor the conclusion in general position, conclusion `{7, 8, 9}`.
pub fn pappus_statement() -> IncidenceStatement {
    let conclusion = [7, 8, 9];
    let nondeg = all_triples(9)
        .into_iter()
        .filter(|t| *t != conclusion && !PAPPUS_COLLINEAR.contains(t));
    IncidenceStatement::new(9, all_pairs(9), nondeg, PAPPUS_COLLINEAR, conclusion)
}

/// Symbolic Pappus configuration over `Q[a, b, c]`.
pub fn pappus_symbolic() -> SymbolicMatrix {
    SymbolicMatrix::parse(
        Q,
        &[
            ["1", "0", "0"],
            ["0", "1", "0"],
            ["1", "a", "0"],
            ["0", "0", "1"],
            ["1", "1", "1"],
            ["1", "1", "b"],
            ["0", "1", "1"],
            ["1", "a", "a*b"],
            ["1", "c", "b"],
        ],
    )
    .expect("valid entries")
}

/// A hexagon with opposite sides glued, cut into nine quadrilaterals: a torus
/// whose generated statement is Pappus' theorem.
pub fn pappus_tiling() -> Tiling {
    let tiles = [
        ["L3", "P1", "L1", "P6"],
        ["L3", "P6", "L2", "P5"],
        ["L3", "P5", "L1", "P2"],
        ["L3", "P2", "L2", "P3"],
        ["L3", "P3", "L1", "P4"],
        ["L3", "P4", "L2", "P1"],
        ["P6", "L1", "P3", "L2"],
        ["P5", "L2", "P4", "L1"],
        ["P2", "L1", "P1", "L2"],
    ];
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Tiling {
        black: s(&["P1", "P2", "P3", "P4", "P5", "P6"]),
        white: s(&["L1", "L2", "L3"]),
        classes: vec![s(&["L1"]), s(&["L2"]), s(&["L3"])],
        tiles: tiles.iter().map(|t| Tile { cycle: s(t) }).collect(),
        conclusion: 2,
    }
}

/// A Pappus configuration over `F_7`, built by joins and intersections.
pub fn pappus_matrix_f7() -> PointMatrix {
    PointMatrix::from_i64(
        &Ring::prime(7).expect("7 is prime"),
        &[
            [1, 0, 0],
            [1, 1, 0],
            [0, 1, 0],
            [0, 1, 1],
            [1, 4, 1],
            [1, 2, 6],
            [1, 6, 5],
            [0, 1, 3],
            [1, 0, 1],
        ],
    )
    .expect("valid entries")
}

/// A built-in object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Ring(Ring),
    Statement(IncidenceStatement),
    Matrix(PointMatrix),
    Symbolic(SymbolicMatrix),
    Tiling(Tiling),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Ring(_) => "ring",
            Payload::Statement(_) => "statement",
            Payload::Matrix(_) => "matrix",
            Payload::Symbolic(_) => "symbolic-matrix",
            Payload::Tiling(_) => "tiling",
        }
    }

    pub fn to_json(&self) -> Result<String, FormatError> {
        Ok(match self {
            Payload::Ring(r) => io::ring_to_json(r)?,
            Payload::Statement(s) => io::statement_to_json(s),
            Payload::Matrix(m) => io::matrix_to_json(m)?,
            Payload::Symbolic(m) => io::symbolic_to_json(m),
            Payload::Tiling(t) => io::tiling_to_json(t),
        })
    }

    /// Parse `text` as an object of the given kind.
    pub fn from_json(kind: &str, text: &str) -> Result<Payload, FormatError> {
        Ok(match kind {
            "ring" => Payload::Ring(io::ring_from_json(text)?),
            "statement" => Payload::Statement(io::statement_from_json(text)?),
            "matrix" => Payload::Matrix(io::matrix_from_json(text, None)?),
            "symbolic-matrix" => Payload::Symbolic(io::symbolic_from_json(text)?),
            "tiling" => Payload::Tiling(io::tiling_from_json(text)?),
            other => {
                return Err(FormatError::Invalid { context: "kind".into(), message: format!("unknown kind {other}") })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub payload: Payload,
}

/// Every built-in object, in a fixed order.
pub fn entries() -> Vec<CorpusEntry> {
    let e = |name, description, payload| CorpusEntry { name, description, payload };
    vec![
        e("ring-a", "Q[x, eps]/(eps^2, x^2 - 2 - eps/4)", Payload::Ring(ring_a())),
        e("ring-sqrt2", "Q[x]/(x^2 - 2)", Payload::Ring(ring_sqrt2())),
        e("ring-dual", "Q[eps]/(eps^2)", Payload::Ring(dual_numbers())),
        e("thm16-statement", "13 distinct points, 20 collinearities, conclusion {11,12,13}", Payload::Statement(thirteen_point_statement())),
        e("counterexample-matrix", "13 points over ring-a with nonzero conclusion minor", Payload::Matrix(counterexample_matrix())),
        e("counterexample-reduced", "counterexample-matrix with eps = 0, over ring-sqrt2", Payload::Matrix(counterexample_reduced())),
        e("normal-form", "13 points with free parameters x, y, z, w", Payload::Symbolic(thirteen_point_symbolic())),
        e("solved-family", "normal form after solving, symbolic in x with x^2 = 2", Payload::Symbolic(solved_symbolic())),
        e("solved-sqrt2", "solved family over ring-sqrt2", Payload::Matrix(solved_matrix_sqrt2())),
        e("solved-f7", "solved family over F7 with x = 3", Payload::Matrix(solved_matrix_f7())),
        e("nonmatroid-matrix", "5 points over ring-dual whose nonzero minors violate basis exchange", Payload::Matrix(nonmatroid_matrix())),
        e("pappus-statement", "Pappus' theorem on 9 points", Payload::Statement(pappus_statement())),
        e("pappus-matrix-f7", "a Pappus configuration over F7", Payload::Matrix(pappus_matrix_f7())),
        e("pappus-symbolic", "Pappus configuration over Q[a, b, c]", Payload::Symbolic(pappus_symbolic())),
        e("pappus-tiling", "torus tiling generating Pappus' theorem", Payload::Tiling(pappus_tiling())),
    ]
}

pub fn lookup(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statement::{check_instance, Verdict};

    #[test]
    fn names_are_unique_and_payloads_well_formed() {
        let all = entries();
        let names: std::collections::BTreeSet<_> = all.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), all.len());
        for e in &all {
            match &e.payload {
                Payload::Statement(s) => assert!(crate::statement::statement_wellformed(s).is_empty()),
                Payload::Tiling(t) => assert!(crate::tiling::validate_tiling(t).is_empty()),
                _ => {}
            }
        }
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for e in entries() {
            let first = e.payload.to_json().unwrap();
            let parsed = Payload::from_json(e.payload.kind(), &first).unwrap();
            assert_eq!(parsed, e.payload, "{}", e.name);
            assert_eq!(parsed.to_json().unwrap(), first, "{}", e.name);
        }
    }

    #[test]
    fn pappus_fixture_satisfies_pappus() {
        let r = check_instance(&pappus_statement(), &pappus_matrix_f7()).unwrap();
        assert_eq!(r.failures(), Vec::<String>::new());
        assert_eq!(r.verdict, Verdict::ConclusionHolds);
    }

    #[test]
    fn counterexample_conclusion() {
        let r = check_instance(&thirteen_point_statement(), &counterexample_matrix()).unwrap();
        assert_eq!(r.failures(), Vec::<String>::new());
        assert_eq!(r.verdict, Verdict::ConclusionFails);
        assert_eq!(r.conclusion_value.to_string(), "2/7*eps - 1/14*eps*x");
    }

    #[test]
    fn reduced_counterexample_is_the_solved_family() {
        let r = check_instance(&thirteen_point_statement(), &counterexample_reduced()).unwrap();
        assert_eq!(r.verdict, Verdict::ConclusionHolds);
        assert_eq!(counterexample_reduced(), solved_matrix_sqrt2());
    }
}
