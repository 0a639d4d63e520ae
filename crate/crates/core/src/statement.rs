//! Incidence statements and the instance checker.
//!
//! A statement lists nondegeneracy pairs and triples, collinearity triples and
//! a conclusion triple on points `1..=n`. An instance is a [`PointMatrix`];
//! over a ring the hypotheses read:
//!
//! - every column generates the unit ideal,
//! - for each nondegenerate pair, the 2×2 minors generate the unit ideal,
//! - for each nondegenerate triple, the 3×3 minor is a unit,
//! - for each collinear triple, the 3×3 minor is zero,
//!
//! and the conclusion asks for the conclusion minor to vanish. Over a field
//! these are the usual "distinct", "not collinear" and "collinear".

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::geometry::{column_nondegenerate, pair_nondegenerate, triple_minor, PointMatrix};
use crate::ring::RingElement;

pub type Pair = [usize; 2];
pub type Triple = [usize; 3];

/// Sort a triple ascending.
pub fn sorted3(mut t: Triple) -> Triple {
    t.sort_unstable();
    t
}

fn sorted2(mut p: Pair) -> Pair {
    p.sort_unstable();
    p
}

/// All `n(n-1)/2` pairs of distinct points.
pub fn all_pairs(n: usize) -> BTreeSet<Pair> {
    (1..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| [i, j]))
        .collect()
}

/// All increasing triples of distinct points.
pub fn all_triples(n: usize) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                out.insert([i, j, k]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStatement {
    pub n: usize,
    pub nondeg_pairs: BTreeSet<Pair>,
    pub nondeg_triples: BTreeSet<Triple>,
    pub collinear: BTreeSet<Triple>,
    pub conclusion: Triple,
}

impl IncidenceStatement {
    /// Build a statement; every pair and triple is stored sorted.
    pub fn new(
        n: usize,
        nondeg_pairs: impl IntoIterator<Item = Pair>,
        nondeg_triples: impl IntoIterator<Item = Triple>,
        collinear: impl IntoIterator<Item = Triple>,
        conclusion: Triple,
    ) -> Self {
        IncidenceStatement {
            n,
            nondeg_pairs: nondeg_pairs.into_iter().map(sorted2).collect(),
            nondeg_triples: nondeg_triples.into_iter().map(sorted3).collect(),
            collinear: collinear.into_iter().map(sorted3).collect(),
            conclusion: sorted3(conclusion),
        }
    }

    pub fn has_all_pairs(&self) -> bool {
        self.nondeg_pairs == all_pairs(self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange { condition: String, index: usize },
    RepeatedMember { condition: String },
    ConclusionIsHypothesis(Triple),
    CollinearAndNondegenerate(Triple),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { condition, index } => {
                write!(f, "{condition}: index {index} out of range")
            }
            Violation::RepeatedMember { condition } => write!(f, "{condition}: repeated member"),
            Violation::ConclusionIsHypothesis(t) => {
                write!(f, "conclusion {t:?} is also a collinearity hypothesis")
            }
            Violation::CollinearAndNondegenerate(t) => {
                write!(f, "triple {t:?} is both collinear and nondegenerate")
            }
        }
    }
}

/// Every broken invariant of `s`; empty iff the statement is well formed.
pub fn statement_wellformed(s: &IncidenceStatement) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut check = |kind: &str, members: &[usize]| {
        let condition = format!("{kind} {members:?}");
        for &i in members {
            if i == 0 || i > s.n {
                out.push(Violation::IndexOutOfRange { condition: condition.clone(), index: i });
            }
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            out.push(Violation::RepeatedMember { condition });
        }
    };
    for p in &s.nondeg_pairs {
        check("nondegenerate pair", p);
    }
    for t in &s.nondeg_triples {
        check("nondegenerate triple", t);
    }
    for t in &s.collinear {
        check("collinear triple", t);
    }
    check("conclusion", &s.conclusion);
    if s.collinear.contains(&s.conclusion) {
        out.push(Violation::ConclusionIsHypothesis(s.conclusion));
    }
    for t in s.collinear.intersection(&s.nondeg_triples) {
        out.push(Violation::CollinearAndNondegenerate(*t));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("statement has {expected} points but the matrix has {got} columns")]
    SizeMismatch { expected: usize, got: usize },
    #[error("statement is not well formed: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    IllFormed(Vec<Violation>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HypothesesFail,
    ConclusionHolds,
    ConclusionFails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HypothesesFail => "HypothesesFail",
            Verdict::ConclusionHolds => "ConclusionHolds",
            Verdict::ConclusionFails => "ConclusionFails",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceReport {
    pub column_checks: Vec<(usize, bool)>,
    pub pair_checks: Vec<(Pair, bool)>,
    pub triple_unit_checks: Vec<(Triple, bool)>,
    /// Each collinear triple with its minor.
    pub collinear_checks: Vec<(Triple, RingElement)>,
    pub conclusion: Triple,
    pub conclusion_value: RingElement,
    pub verdict: Verdict,
}

impl InstanceReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.column_checks.iter().all(|c| c.1)
            && self.pair_checks.iter().all(|c| c.1)
            && self.triple_unit_checks.iter().all(|c| c.1)
            && self.collinear_checks.iter().all(|c| c.1.is_zero())
    }

    /// Human-readable descriptions of each failed hypothesis.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, ok) in &self.column_checks {
            if !ok {
                out.push(format!("column {i} does not generate the unit ideal"));
            }
        }
        for (p, ok) in &self.pair_checks {
            if !ok {
                out.push(format!("2x2 minors of columns {p:?} do not generate the unit ideal"));
            }
        }
        for (t, ok) in &self.triple_unit_checks {
            if !ok {
                out.push(format!("minor {t:?} is not a unit"));
            }
        }
        for (t, v) in &self.collinear_checks {
            if !v.is_zero() {
                out.push(format!("collinear minor {t:?} = {v}"));
            }
        }
        out
    }
}

/// Evaluate every hypothesis of `s` on `m`, then the conclusion.
///
/// All conditions are evaluated even when an early one fails, so the report
/// is complete.
pub fn check_instance(s: &IncidenceStatement, m: &PointMatrix) -> Result<InstanceReport, CheckError> {
    let violations = statement_wellformed(s);
    if !violations.is_empty() {
        return Err(CheckError::IllFormed(violations));
    }
    if m.len() != s.n {
        return Err(CheckError::SizeMismatch { expected: s.n, got: m.len() });
    }
    let ok = "indices validated against the statement";
    let column_checks = (1..=s.n)
        .map(|i| (i, column_nondegenerate(m, i).expect(ok)))
        .collect();
    let pair_checks = s
        .nondeg_pairs
        .iter()
        .map(|&[i, j]| ([i, j], pair_nondegenerate(m, i, j).expect(ok)))
        .collect();
    let triple_unit_checks = s
        .nondeg_triples
        .iter()
        .map(|&[i, j, k]| ([i, j, k], triple_minor(m, i, j, k).expect(ok).is_unit()))
        .collect();
    let collinear_checks = s
        .collinear
        .iter()
        .map(|&[i, j, k]| ([i, j, k], triple_minor(m, i, j, k).expect(ok)))
        .collect();
    let [a, b, c] = s.conclusion;
    let conclusion_value = triple_minor(m, a, b, c).expect(ok);
    let mut report = InstanceReport {
        column_checks,
        pair_checks,
        triple_unit_checks,
        collinear_checks,
        conclusion: s.conclusion,
        conclusion_value,
        verdict: Verdict::HypothesesFail,
    };
    report.verdict = if !report.hypotheses_hold() {
        Verdict::HypothesesFail
    } else if report.conclusion_value.is_zero() {
        Verdict::ConclusionHolds
    } else {
        Verdict::ConclusionFails
    };
    Ok(report)
}

/// Points forced onto a line `L` through the seed triple: starting from the
/// seed, any triple with two members on `L` puts its third member on `L`.
/// Assumes the points are pairwise distinct.
pub fn collinearity_closure<'a>(
    triples: impl IntoIterator<Item = &'a Triple>,
    seed: Triple,
) -> BTreeSet<usize> {
    let triples: Vec<&Triple> = triples.into_iter().collect();
    let mut on_line: BTreeSet<usize> = seed.into_iter().collect();
    loop {
        let mut grew = false;
        for t in &triples {
            let inside = t.iter().filter(|i| on_line.contains(i)).count();
            if inside == 2 {
                on_line.extend(t.iter().copied());
                grew = true;
            }
        }
        if !grew {
            return on_line;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn thirteen_point_statement_is_well_formed() {
        let s = corpus::thirteen_point_statement();
        assert!(statement_wellformed(&s).is_empty());
        assert_eq!(s.nondeg_pairs.len(), 78);
        assert_eq!(s.collinear.len(), 20);
    }

    #[test]
    fn duplicated_conclusion_is_a_violation() {
        let mut s = corpus::thirteen_point_statement();
        s.collinear.insert(s.conclusion);
        assert_eq!(statement_wellformed(&s), vec![Violation::ConclusionIsHypothesis([11, 12, 13])]);
    }

    #[test]
    fn repeated_member_is_a_violation() {
        let s = IncidenceStatement::new(3, [], [], [[1, 1, 2]], [1, 2, 3]);
        let v = statement_wellformed(&s);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::RepeatedMember { .. }));
    }

    #[test]
    fn out_of_range_and_overlap() {
        let s = IncidenceStatement::new(4, [[1, 5]], [[1, 2, 3]], [[1, 2, 3]], [0, 2, 4]);
        let v = statement_wellformed(&s);
        assert!(v.contains(&Violation::CollinearAndNondegenerate([1, 2, 3])));
        assert_eq!(v.iter().filter(|x| matches!(x, Violation::IndexOutOfRange { .. })).count(), 2);
    }

    #[test]
    fn closure_examples() {
        let s = corpus::thirteen_point_statement();
        let all: BTreeSet<usize> = (1..=13).collect();
        assert_eq!(collinearity_closure(&s.collinear, [1, 3, 6]), all);
        let empty: Vec<Triple> = Vec::new();
        assert_eq!(collinearity_closure(&empty, [1, 2, 3]), BTreeSet::from([1, 2, 3]));
        // a seed on only one collinear triple's line stays put
        let t = [[1, 2, 3], [3, 4, 5]];
        assert_eq!(collinearity_closure(&t, [1, 2, 6]), BTreeSet::from([1, 2, 3, 6]));
    }

    #[test]
    fn closure_is_monotone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let triples: Vec<Triple> = (0..rng.gen_range(0..15))
                .map(|_| {
                    loop {
                        let t = [rng.gen_range(1..=10), rng.gen_range(1..=10), rng.gen_range(1..=10)];
                        if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                            break sorted3(t);
                        }
                    }
                })
                .collect();
            let extra: Vec<Triple> = triples.iter().copied().chain([[1, 5, 9], [2, 4, 8]]).collect();
            let small = collinearity_closure(&triples, [1, 2, 3]);
            let big = collinearity_closure(&extra, [1, 2, 3]);
            assert!(small.is_subset(&big));
        }
    }

    #[test]
    fn size_mismatch() {
        let s = corpus::thirteen_point_statement();
        let m = corpus::nonmatroid_matrix();
        assert_eq!(check_instance(&s, &m), Err(CheckError::SizeMismatch { expected: 13, got: 5 }));
    }

    fn residue(e: &RingElement) -> u64 {
        match &e.coefficients()[0] {
            crate::field::Scalar::Residue { value, .. } => *value,
            other => panic!("not a residue: {other}"),
        }
    }

    /// Random F101 configuration where some columns repeat or lie on a line.
    fn degenerate_f101(rng: &mut impl rand::Rng) -> PointMatrix {
        use crate::construct::random_vec3;
        use crate::geometry::Vec3;
        let ring = crate::ring::Ring::prime(101).unwrap();
        let mut cols: Vec<Vec3> = Vec::new();
        for k in 0..7 {
            let c = match (k, rng.gen_range(0..4)) {
                (0..=1, _) | (_, 0) => random_vec3(&ring, rng),
                (_, 1) => cols[rng.gen_range(0..k)].scale(&ring.random_unit(rng)),
                (_, 2) => {
                    let (a, b) = (&cols[rng.gen_range(0..k)], &cols[rng.gen_range(0..k)]);
                    a.scale(&ring.random_element(rng)).add(&b.scale(&ring.random_element(rng)))
                }
                _ => Vec3::zero(&ring),
            };
            cols.push(c);
        }
        PointMatrix::new(ring, cols).unwrap()
    }

    fn split_statement(n: usize, rng: &mut impl rand::Rng) -> IncidenceStatement {
        let mut nondeg = Vec::new();
        let mut collinear = Vec::new();
        let conclusion = [1, 2, 3];
        for t in all_triples(n) {
            if t == conclusion {
                continue;
            }
            if rng.gen_bool(0.5) {
                nondeg.push(t);
            } else {
                collinear.push(t);
            }
        }
        IncidenceStatement::new(n, all_pairs(n), nondeg, collinear, conclusion)
    }

    #[test]
    fn field_semantics_agree_with_direct_tests() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xf101);
        for _ in 0..40 {
            let m = degenerate_f101(&mut rng);
            let s = split_statement(m.len(), &mut rng);
            let r = check_instance(&s, &m).unwrap();
            let col = |i: usize| m.column(i).unwrap().entries().clone().map(|e| residue(&e) as i64);
            let det = |[i, j, k]: Triple| {
                let (a, b, c) = (col(i), col(j), col(k));
                (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]))
                    .rem_euclid(101)
            };
            for (i, ok) in &r.column_checks {
                assert_eq!(*ok, col(*i) != [0, 0, 0]);
            }
            for ([i, j], ok) in &r.pair_checks {
                let (a, b) = (col(*i), col(*j));
                let proportional = (0..3).all(|p| (0..3).all(|q| (a[p] * b[q] - a[q] * b[p]) % 101 == 0));
                assert_eq!(*ok, !proportional);
            }
            for (t, ok) in &r.triple_unit_checks {
                assert_eq!(*ok, det(*t) != 0);
            }
            for (t, v) in &r.collinear_checks {
                assert_eq!(v.is_zero(), det(*t) == 0);
            }
        }
    }

    #[test]
    fn invariant_under_rescaling_and_projective_maps() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5ca1e);
        let summary = |r: &InstanceReport| {
            (
                r.column_checks.clone(),
                r.pair_checks.clone(),
                r.triple_unit_checks.clone(),
                r.collinear_checks.iter().map(|(t, v)| (*t, v.is_zero())).collect::<Vec<_>>(),
                r.conclusion_value.is_zero(),
                r.verdict,
            )
        };
        let mut instances = vec![(corpus::pappus_statement(), corpus::pappus_matrix_f7())];
        for _ in 0..20 {
            let m = degenerate_f101(&mut rng);
            instances.push((split_statement(m.len(), &mut rng), m));
        }
        for (s, m) in instances {
            let ring = m.ring().clone();
            let base = summary(&check_instance(&s, &m).unwrap());
            let i = rng.gen_range(1..=m.len());
            let scaled = m.with_column(i, m.column(i).unwrap().scale(&ring.random_unit(&mut rng))).unwrap();
            assert_eq!(summary(&check_instance(&s, &scaled).unwrap()), base);
            let g = loop {
                let g = [(); 3].map(|_| [(); 3].map(|_| ring.random_element(&mut rng)));
                let rows = g.clone().map(|r| crate::geometry::Vec3::new(r[0].clone(), r[1].clone(), r[2].clone()).unwrap());
                if crate::geometry::bracket(&rows[0], &rows[1], &rows[2]).unwrap().is_unit() {
                    break g;
                }
            };
            assert_eq!(summary(&check_instance(&s, &m.left_multiply(&g)).unwrap()), base);
        }
    }

    #[test]
    fn symbolic_pappus_minor() {
        let m = corpus::pappus_symbolic();
        let a = m.minor(3, 5, 9).unwrap();
        let b = m.minor(7, 8, 9).unwrap();
        assert_eq!(a, crate::poly::parse_poly("a + b - a*b - c", crate::field::BaseField::Rationals).unwrap());
        assert_eq!(a, -&b);
    }

    #[test]
    fn pappus_statement_counts() {
        let s = corpus::pappus_statement();
        assert!(statement_wellformed(&s).is_empty());
        assert_eq!(s.nondeg_triples.len(), 84 - 9);
    }
}
