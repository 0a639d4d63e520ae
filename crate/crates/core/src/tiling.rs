//! Quadrilateral tilings of closed oriented surfaces and the incidence
//! statements they generate.
//!
//! Black vertices are points. White vertices stand for lines; equivalent white
//! vertices are the same line, and line `i` is represented by two points
//! `s_i, t_i` on it. Each tile `P → L → Q → M` contributes the equation
//! `[L,P][M,Q] = [L,Q][M,P]`, where `[L,P]` abbreviates `[s_L, t_L, P]`.
//! Its left side collects the black→white edges and its right side the
//! white→black edges. Around a closed oriented surface every edge is traversed
//! once in each direction, so the product over all tiles but one telescopes to
//! the remaining tile's equation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{bracket, fundamental_unit, GeometryError, PointMatrix, Vec3};
use crate::ring::{RingElement, RingError};
use crate::statement::{
    check_instance, statement_wellformed, CheckError, IncidenceStatement, InstanceReport,
    Verdict, Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub cycle: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub black: Vec<String>,
    pub white: Vec<String>,
    pub classes: Vec<Vec<String>>,
    pub tiles: Vec<Tile>,
    pub conclusion: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingViolation {
    DuplicateLabel(String),
    UnknownVertex { tile: usize, label: String },
    TileSize { tile: usize, len: usize },
    RepeatedVertex { tile: usize, label: String },
    ColorAlternation { tile: usize },
    EmptyClass(usize),
    NotWhite { class: usize, label: String },
    Unclassified(String),
    MultipleClasses(String),
    SurfaceClosure { black: String, white: String, count: usize },
    Orientation { black: String, white: String },
    ConclusionOutOfRange(usize),
    ConclusionWhitesEquivalent(usize),
}

impl fmt::Display for TilingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TilingViolation::*;
        match self {
            DuplicateLabel(l) => write!(f, "label {l} is declared twice"),
            UnknownVertex { tile, label } => write!(f, "tile {tile}: unknown vertex {label}"),
            TileSize { tile, len } => write!(f, "tile {tile}: has {len} vertices, expected 4"),
            RepeatedVertex { tile, label } => write!(f, "tile {tile}: vertex {label} repeated"),
            ColorAlternation { tile } => write!(f, "tile {tile}: colors do not alternate"),
            EmptyClass(c) => write!(f, "class {c} is empty"),
            NotWhite { class, label } => write!(f, "class {class}: {label} is not a white vertex"),
            Unclassified(l) => write!(f, "white vertex {l} is in no class"),
            MultipleClasses(l) => write!(f, "white vertex {l} is in several classes"),
            SurfaceClosure { black, white, count } => {
                write!(f, "edge {black}-{white} is used by {count} tiles, expected 2")
            }
            Orientation { black, white } => {
                write!(f, "edge {black}-{white} is traversed twice in the same direction")
            }
            ConclusionOutOfRange(i) => write!(f, "conclusion tile {i} does not exist"),
            ConclusionWhitesEquivalent(i) => {
                write!(f, "conclusion tile {i} has equivalent white vertices")
            }
        }
    }
}

/// A tile that passed the shape checks, rotated to start at a black vertex:
/// `p → l → q → m`.
#[derive(Debug, Clone)]
struct Quad {
    p: String,
    l: String,
    q: String,
    m: String,
}

impl Quad {
    /// Directed edges as `(black, white, black_to_white)`.
    fn edges(&self) -> [(&str, &str, bool); 4] {
        [
            (&self.p, &self.l, true),
            (&self.q, &self.l, false),
            (&self.q, &self.m, true),
            (&self.p, &self.m, false),
        ]
    }
}

struct Analysis {
    violations: Vec<TilingViolation>,
    quads: Vec<Option<Quad>>,
    /// White label to 1-based class number, classes sorted by smallest member.
    class_of: HashMap<String, usize>,
    num_classes: usize,
}

fn analyze(t: &Tiling) -> Analysis {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for l in t.black.iter().chain(&t.white) {
        if !seen.insert(l.as_str()) {
            violations.push(TilingViolation::DuplicateLabel(l.clone()));
        }
    }
    let black: BTreeSet<&str> = t.black.iter().map(String::as_str).collect();
    let white: BTreeSet<&str> = t.white.iter().map(String::as_str).collect();

    let mut order: Vec<usize> = (0..t.classes.len()).collect();
    order.sort_by_key(|&c| t.classes[c].iter().min().cloned());
    let mut class_of = HashMap::new();
    for (rank, &c) in order.iter().enumerate() {
        if t.classes[c].is_empty() {
            violations.push(TilingViolation::EmptyClass(c));
        }
        for l in &t.classes[c] {
            if !white.contains(l.as_str()) {
                violations.push(TilingViolation::NotWhite { class: c, label: l.clone() });
            } else if class_of.insert(l.clone(), rank + 1).is_some() {
                violations.push(TilingViolation::MultipleClasses(l.clone()));
            }
        }
    }
    for w in &t.white {
        if !class_of.contains_key(w) {
            violations.push(TilingViolation::Unclassified(w.clone()));
        }
    }

    let mut quads = Vec::with_capacity(t.tiles.len());
    for (i, tile) in t.tiles.iter().enumerate() {
        let c = &tile.cycle;
        let mut ok = true;
        for l in c {
            if !black.contains(l.as_str()) && !white.contains(l.as_str()) {
                violations.push(TilingViolation::UnknownVertex { tile: i, label: l.clone() });
                ok = false;
            }
        }
        if c.len() != 4 {
            violations.push(TilingViolation::TileSize { tile: i, len: c.len() });
            ok = false;
        }
        let mut members = BTreeSet::new();
        for l in c {
            if !members.insert(l) {
                violations.push(TilingViolation::RepeatedVertex { tile: i, label: l.clone() });
                ok = false;
            }
        }
        if !ok {
            quads.push(None);
            continue;
        }
        let is_black: Vec<bool> = c.iter().map(|l| black.contains(l.as_str())).collect();
        if (0..4).any(|k| is_black[k] == is_black[(k + 1) % 4]) {
            violations.push(TilingViolation::ColorAlternation { tile: i });
            quads.push(None);
            continue;
        }
        let r = if is_black[0] { 0 } else { 1 };
        let at = |k: usize| c[(r + k) % 4].clone();
        quads.push(Some(Quad { p: at(0), l: at(1), q: at(2), m: at(3) }));
    }

    // (black, white) -> (black-to-white count, white-to-black count)
    let mut edges: BTreeMap<(&str, &str), (usize, usize)> = BTreeMap::new();
    for q in quads.iter().flatten() {
        for (b, w, forward) in q.edges() {
            let e = edges.entry((b, w)).or_default();
            if forward {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
    }
    for (&(b, w), &(fwd, back)) in &edges {
        if fwd + back != 2 {
            violations.push(TilingViolation::SurfaceClosure {
                black: b.to_string(),
                white: w.to_string(),
                count: fwd + back,
            });
        } else if fwd != 1 {
            violations.push(TilingViolation::Orientation { black: b.to_string(), white: w.to_string() });
        }
    }

    match quads.get(t.conclusion) {
        None => violations.push(TilingViolation::ConclusionOutOfRange(t.conclusion)),
        Some(Some(q)) => {
            if class_of.get(&q.l).is_some() && class_of.get(&q.l) == class_of.get(&q.m) {
                violations.push(TilingViolation::ConclusionWhitesEquivalent(t.conclusion));
            }
        }
        Some(None) => {}
    }

    Analysis { violations, quads, class_of, num_classes: t.classes.len() }
}

/// Every broken invariant of `t`; empty iff `t` is a valid oriented tiling
/// with a usable conclusion tile.
pub fn validate_tiling(t: &Tiling) -> Vec<TilingViolation> {
    analyze(t).violations
}

/// What an index of a generated statement stands for.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Black(String),
    S(usize),
    T(usize),
    /// Intersection of lines `i < j`, numbered in sorted pair order.
    R { number: usize, classes: (usize, usize) },
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Black(l) => f.write_str(l),
            Element::S(i) => write!(f, "s{i}"),
            Element::T(i) => write!(f, "t{i}"),
            Element::R { number, .. } => write!(f, "R{number}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    /// `elements[i - 1]` is the meaning of index `i`.
    pub elements: Vec<Element>,
}

impl LabelMap {
    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e).map(|i| i + 1)
    }

    pub fn black(&self, label: &str) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| matches!(e, Element::Black(l) if l == label))
            .map(|i| i + 1)
    }

    /// Index by display name, e.g. `"P3"`, `"s1"` or `"R2"`.
    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.to_string() == name).map(|i| i + 1)
    }

    pub fn name(&self, index: usize) -> String {
        self.elements[index - 1].to_string()
    }

    fn r(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.elements
            .iter()
            .position(|e| matches!(e, Element::R { classes, .. } if *classes == key))
            .expect("R exists for every class pair sharing a tile")
            + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("invalid tiling: {}", join(.0))]
    InvalidTiling(Vec<TilingViolation>),
    #[error("no tile has inequivalent white vertices, so no conclusion is possible")]
    NoConclusionPossible,
    #[error("generated statement is not well formed: {}", join(.0))]
    IllFormedStatement(Vec<Violation>),
    #[error("cancellation failed: {0}")]
    CancellationFailure(String),
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Generate the incidence statement of `t` together with its label map.
///
/// Elements are the black vertices in the given order, then `s_i, t_i` for
/// each white class, then one `R` for each pair of classes sharing a tile.
pub fn generate_statement(t: &Tiling) -> Result<(IncidenceStatement, LabelMap), TilingError> {
    let a = analyze(t);
    let mixed = |q: &Quad| match (a.class_of.get(&q.l), a.class_of.get(&q.m)) {
        (Some(x), Some(y)) => x != y,
        _ => false,
    };
    if !a.quads.iter().flatten().any(mixed) {
        return Err(TilingError::NoConclusionPossible);
    }
    if !a.violations.is_empty() {
        return Err(TilingError::InvalidTiling(a.violations));
    }
    let quads: Vec<&Quad> = a.quads.iter().map(|q| q.as_ref().expect("validated")).collect();
    let cls = |w: &str| a.class_of[w];
    let k = a.num_classes;

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut touching: BTreeSet<(usize, &str)> = BTreeSet::new();
    for q in &quads {
        let (i, j) = (cls(&q.l), cls(&q.m));
        if i != j {
            pairs.insert((i.min(j), i.max(j)));
        }
        for (b, w, _) in q.edges() {
            touching.insert((cls(w), b));
        }
    }

    let mut elements: Vec<Element> = t.black.iter().cloned().map(Element::Black).collect();
    for i in 1..=k {
        elements.push(Element::S(i));
        elements.push(Element::T(i));
    }
    for (n, &p) in pairs.iter().enumerate() {
        elements.push(Element::R { number: n + 1, classes: p });
    }
    let map = LabelMap { elements };
    let black = |l: &str| map.black(l).expect("black vertex");
    let s = |i: usize| t.black.len() + 2 * i - 1;
    let tt = |i: usize| t.black.len() + 2 * i;

    let nondeg_pairs: Vec<[usize; 2]> = (1..=k).map(|i| [s(i), tt(i)]).collect();
    let mut nondeg_triples = Vec::new();
    for i in 1..=k {
        for j in (i + 1)..=k {
            nondeg_triples.push([s(i), tt(i), s(j)]);
            nondeg_triples.push([s(i), tt(i), tt(j)]);
            nondeg_triples.push([s(i), s(j), tt(j)]);
            nondeg_triples.push([tt(i), s(j), tt(j)]);
        }
    }
    for &(c, b) in &touching {
        nondeg_triples.push([s(c), tt(c), black(b)]);
    }
    let mut collinear = Vec::new();
    for &(i, j) in &pairs {
        let r = map.r(i, j);
        collinear.push([s(i), tt(i), r]);
        collinear.push([s(j), tt(j), r]);
    }
    let mut conclusion = [0; 3];
    for (n, q) in quads.iter().enumerate() {
        let (i, j) = (cls(&q.l), cls(&q.m));
        if i == j {
            continue;
        }
        let triple = [black(&q.p), black(&q.q), map.r(i, j)];
        if n == t.conclusion {
            conclusion = triple;
        } else {
            collinear.push(triple);
        }
    }
    let statement =
        IncidenceStatement::new(map.elements.len(), nondeg_pairs, nondeg_triples, collinear, conclusion);
    let violations = statement_wellformed(&statement);
    if !violations.is_empty() {
        return Err(TilingError::IllFormedStatement(violations));
    }
    Ok((statement, map))
}

/// The factor `[s_c, t_c, black]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub black: String,
    pub class: usize,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[s{c},t{c},{}]", self.black, c = self.class)
    }
}

/// `left[0]·left[1] = right[0]·right[1]` for one tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileEquation {
    pub tile: usize,
    pub left: [Term; 2],
    pub right: [Term; 2],
    /// Both white vertices are equivalent, so the two sides agree termwise.
    pub automatic: bool,
}

/// One edge term, cancelled between the tile where it sits on the left and
/// the tile where it sits on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub term: Term,
    pub black: String,
    pub white: String,
    pub left_tile: usize,
    pub right_tile: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationCertificate {
    pub equations: Vec<TileEquation>,
    pub pairing: Vec<Pairing>,
    /// Uncancelled factors of the product over `equations`.
    pub residual_left: Vec<Term>,
    pub residual_right: Vec<Term>,
    pub conclusion: TileEquation,
}

fn tile_equation(n: usize, q: &Quad, cls: &impl Fn(&str) -> usize) -> TileEquation {
    let term = |b: &str, w: &str| Term { black: b.to_string(), class: cls(w) };
    TileEquation {
        tile: n,
        left: [term(&q.p, &q.l), term(&q.q, &q.m)],
        right: [term(&q.q, &q.l), term(&q.p, &q.m)],
        automatic: cls(&q.l) == cls(&q.m),
    }
}

fn sorted_terms<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Vec<Term> {
    let mut v: Vec<Term> = terms.into_iter().cloned().collect();
    v.sort();
    v
}

/// Build and check the telescoping certificate for `t`.
///
/// Orientation violations are not rejected up front: a tiling whose only
/// defect is a misoriented tile fails here with [`TilingError::CancellationFailure`].
pub fn certify_cancellation(t: &Tiling) -> Result<CancellationCertificate, TilingError> {
    let a = analyze(t);
    let blocking: Vec<TilingViolation> = a
        .violations
        .iter()
        .filter(|v| !matches!(v, TilingViolation::Orientation { .. }))
        .cloned()
        .collect();
    if !blocking.is_empty() {
        return Err(TilingError::InvalidTiling(blocking));
    }
    let quads: Vec<&Quad> = a.quads.iter().map(|q| q.as_ref().expect("validated")).collect();
    let cls = |w: &str| a.class_of[w];

    // (black, white) -> tiles where the edge is black-to-white / white-to-black
    let mut occurrences: BTreeMap<(&str, &str), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (n, q) in quads.iter().enumerate() {
        for (b, w, forward) in q.edges() {
            let e = occurrences.entry((b, w)).or_default();
            if forward {
                e.0.push(n);
            } else {
                e.1.push(n);
            }
        }
    }
    let mut pairing = Vec::new();
    for (&(b, w), (left, right)) in &occurrences {
        let term = Term { black: b.to_string(), class: cls(w) };
        if left.len() != 1 || right.len() != 1 {
            return Err(TilingError::CancellationFailure(format!(
                "term {term} from edge {b}-{w} appears {} times on left sides and {} times on right sides",
                left.len(),
                right.len()
            )));
        }
        if left[0] == t.conclusion || right[0] == t.conclusion {
            continue;
        }
        pairing.push(Pairing {
            term,
            black: b.to_string(),
            white: w.to_string(),
            left_tile: left[0],
            right_tile: right[0],
        });
    }

    let equations: Vec<TileEquation> = quads
        .iter()
        .enumerate()
        .filter(|&(n, _)| n != t.conclusion)
        .map(|(n, q)| tile_equation(n, q, &cls))
        .collect();
    let conclusion = tile_equation(t.conclusion, quads[t.conclusion], &cls);

    // multiset difference of all left factors against all right factors
    let mut balance: BTreeMap<&Term, i64> = BTreeMap::new();
    for e in &equations {
        for x in &e.left {
            *balance.entry(x).or_default() += 1;
        }
        for x in &e.right {
            *balance.entry(x).or_default() -= 1;
        }
    }
    let mut residual_left = Vec::new();
    let mut residual_right = Vec::new();
    for (term, n) in balance {
        let target = if n > 0 { &mut residual_left } else { &mut residual_right };
        for _ in 0..n.unsigned_abs() {
            target.push(term.clone());
        }
    }
    // The product telescopes to the conclusion tile's equation with sides swapped.
    let want_left = sorted_terms(&conclusion.right);
    let want_right = sorted_terms(&conclusion.left);
    // factors common to both sides of the conclusion cancel as well
    let mut cancelled_left = want_left.clone();
    let mut cancelled_right = Vec::new();
    for x in &want_right {
        match cancelled_left.iter().position(|y| y == x) {
            Some(pos) => {
                cancelled_left.remove(pos);
            }
            None => cancelled_right.push(x.clone()),
        }
    }
    if residual_left != cancelled_left || residual_right != cancelled_right {
        return Err(TilingError::CancellationFailure(format!(
            "residual {} = {} does not match the conclusion tile {}",
            join(&residual_left),
            join(&residual_right),
            conclusion.tile
        )));
    }
    Ok(CancellationCertificate {
        equations,
        pairing,
        residual_left: want_left,
        residual_right: want_right,
        conclusion,
    })
}

/// Per-tile unit `u` with `[s_i,t_i,P][s_j,t_j,Q] − [s_j,t_j,P][s_i,t_i,Q] = u[P,Q,R]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileUnit {
    pub tile: usize,
    pub unit: RingElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedReport {
    pub report: InstanceReport,
    /// Filled only when the hypotheses hold.
    pub tile_units: Vec<TileUnit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// Check `m` against the statement generated by `t`, and when the hypotheses
/// hold, confirm the per-tile unit identity on every mixed non-conclusion tile.
pub fn verify_generated(t: &Tiling, m: &PointMatrix) -> Result<GeneratedReport, VerifyError> {
    let (statement, map) = generate_statement(t)?;
    let report = check_instance(&statement, m)?;
    let mut tile_units = Vec::new();
    if report.verdict == Verdict::HypothesesFail {
        return Ok(GeneratedReport { report, tile_units });
    }
    let a = analyze(t);
    let col = |i: usize| m.column(i).expect("size checked");
    let nb = t.black.len();
    let line = |c: usize| (col(nb + 2 * c - 1), col(nb + 2 * c));
    let geo = |e: GeometryError| VerifyError::HypothesisViolated(e.to_string());
    let ring = |e: RingError| VerifyError::HypothesisViolated(e.to_string());
    for (n, q) in a.quads.iter().enumerate() {
        let q = q.as_ref().expect("validated");
        let (i, j) = (a.class_of[&q.l], a.class_of[&q.m]);
        if n == t.conclusion || i == j {
            continue;
        }
        let (si, ti) = line(i);
        let (sj, tj) = line(j);
        let r: &Vec3 = col(map.r(i, j));
        let p = col(map.black(&q.p).expect("black"));
        let qq = col(map.black(&q.q).expect("black"));
        let u = fundamental_unit(si, ti, sj, tj, r).map_err(|e| {
            VerifyError::HypothesisViolated(format!("tile {n}: {e}"))
        })?;
        let lhs = &(&bracket(si, ti, p).map_err(ring)? * &bracket(sj, tj, qq).map_err(ring)?)
            - &(&bracket(sj, tj, p).map_err(ring)? * &bracket(si, ti, qq).map_err(ring)?);
        let rhs = &u * &bracket(p, qq, r).map_err(ring)?;
        if lhs != rhs {
            return Err(geo(GeometryError::InternalInconsistency(format!(
                "tile {n}: {lhs} ≠ {rhs}"
            ))));
        }
        tile_units.push(TileUnit { tile: n, unit: u });
    }
    Ok(GeneratedReport { report, tile_units })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::statement::sorted3;

    fn tiling(black: &[&str], white: &[&str], classes: &[&[&str]], tiles: &[[&str; 4]], c: usize) -> Tiling {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        Tiling {
            black: s(black),
            white: s(white),
            classes: classes.iter().map(|c| s(c)).collect(),
            tiles: tiles.iter().map(|t| Tile { cycle: s(t) }).collect(),
            conclusion: c,
        }
    }

    fn pillow() -> Tiling {
        tiling(
            &["P", "Q"],
            &["L", "M"],
            &[&["L"], &["M"]],
            &[["P", "L", "Q", "M"], ["P", "M", "Q", "L"]],
            0,
        )
    }

    #[test]
    fn pappus_tiling_is_valid() {
        assert_eq!(validate_tiling(&corpus::pappus_tiling()), vec![]);
    }

    #[test]
    fn pappus_statement_shape() {
        let (s, map) = generate_statement(&corpus::pappus_tiling()).unwrap();
        assert_eq!(s.n, 15);
        assert!(statement_wellformed(&s).is_empty());
        let names: Vec<String> = s.conclusion.iter().map(|&i| map.name(i)).collect();
        let mut want = vec!["P2", "P5", "R2"];
        let mut got: Vec<&str> = names.iter().map(String::as_str).collect();
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn pappus_lines_appear_in_generated_statement() {
        let (s, map) = generate_statement(&corpus::pappus_tiling()).unwrap();
        let fig = ["P3", "R1", "P6", "P1", "R3", "P4", "P2", "R2", "P5"];
        let idx = |k: usize| map.by_name(fig[k - 1]).unwrap();
        let pappus = corpus::pappus_statement();
        for t in &pappus.collinear {
            assert!(s.collinear.contains(&sorted3(t.map(idx))), "{t:?}");
        }
        assert_eq!(sorted3(pappus.conclusion.map(idx)), s.conclusion);
        for r in 1..=3 {
            let rr = map.by_name(&format!("R{r}")).unwrap();
            assert_eq!(s.collinear.iter().filter(|t| t.contains(&rr)).count(), 2 + 3 - usize::from(r == 2));
        }
    }

    #[test]
    fn alternation_and_closure_violations() {
        let mut t = pillow();
        t.tiles[0].cycle = vec!["P".into(), "Q".into(), "L".into(), "M".into()];
        let v = validate_tiling(&t);
        assert!(v.contains(&TilingViolation::ColorAlternation { tile: 0 }));
        assert!(v.iter().any(|x| matches!(x, TilingViolation::SurfaceClosure { .. })));

        let open = tiling(&["P", "Q"], &["L", "M"], &[&["L"], &["M"]], &[["P", "L", "Q", "M"]], 0);
        let v = validate_tiling(&open);
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|x| matches!(x, TilingViolation::SurfaceClosure { count: 1, .. })));
    }

    #[test]
    fn equivalent_whites_give_no_conclusion() {
        let mut t = pillow();
        t.classes = vec![vec!["L".into(), "M".into()]];
        assert_eq!(generate_statement(&t), Err(TilingError::NoConclusionPossible));
    }

    #[test]
    fn pillow_certificate() {
        let cert = certify_cancellation(&pillow()).unwrap();
        assert_eq!(cert.equations.len(), 1);
        let e = &cert.equations[0];
        assert_eq!(sorted_terms(&e.left), cert.residual_left);
        assert_eq!(sorted_terms(&e.right), cert.residual_right);
        assert!(cert.pairing.is_empty());
    }

    #[test]
    fn pappus_certificate() {
        let t = corpus::pappus_tiling();
        let cert = certify_cancellation(&t).unwrap();
        assert_eq!(cert.equations.len(), 8);
        // 36 edge terms: 4 sit on the conclusion tile, 4 more partner them
        assert_eq!(cert.pairing.len(), 14);
        assert_eq!(cert.residual_left, sorted_terms(&cert.conclusion.right));
        assert_eq!(cert.residual_right, sorted_terms(&cert.conclusion.left));
    }

    #[test]
    fn flipped_tile_fails_cancellation() {
        let mut t = corpus::pappus_tiling();
        t.tiles[4].cycle.reverse();
        assert!(validate_tiling(&t).iter().any(|v| matches!(v, TilingViolation::Orientation { .. })));
        assert!(matches!(certify_cancellation(&t), Err(TilingError::CancellationFailure(_))));
        assert!(matches!(generate_statement(&t), Err(TilingError::InvalidTiling(_))));
    }

    /// A sphere made of `k` pillows glued in a ring around two poles `N, S`.
    /// Pillow `i` is the tile pair `(B_i, N, B_{i+1}, W_i)`, `(B_{i+1}, S, B_i, W_i)`.
    fn pillow_ring(k: usize, classes: usize, rng: &mut impl rand::Rng) -> Tiling {
        let b = |i: usize| format!("B{}", i % k);
        let w = |i: usize| format!("W{i}");
        let mut tiles = Vec::new();
        for i in 0..k {
            tiles.push(Tile { cycle: vec![b(i), "N".into(), b(i + 1), w(i)] });
            tiles.push(Tile { cycle: vec![b(i + 1), "S".into(), b(i), w(i)] });
        }
        let black: Vec<String> = (0..k).map(b).collect();
        let mut white: Vec<String> = vec!["N".into(), "S".into()];
        white.extend((0..k).map(w));
        let ncls = classes.clamp(2, white.len());
        let mut groups: Vec<Vec<String>> = vec![Vec::new(); ncls];
        for (n, l) in white.iter().enumerate() {
            let g = if n < ncls { n } else { rng.gen_range(0..ncls) };
            groups[g].push(l.clone());
        }
        let mut conclusion = 0;
        let same = |x: &str, y: &str| groups.iter().any(|g| g.iter().any(|a| a == x) && g.iter().any(|a| a == y));
        for (n, t) in tiles.iter().enumerate() {
            if !same(&t.cycle[1], &t.cycle[3]) {
                conclusion = n;
                break;
            }
        }
        Tiling { black, white, classes: groups, tiles, conclusion }
    }

    #[test]
    fn random_closed_tilings_certify() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x711e);
        for _ in 0..60 {
            let k = rng.gen_range(3..8);
            let c = rng.gen_range(2..6);
            let t = pillow_ring(k, c, &mut rng);
            assert_eq!(validate_tiling(&t), vec![], "{t:?}");
            let cert = certify_cancellation(&t).unwrap();
            assert_eq!(cert.equations.len(), t.tiles.len() - 1);
            let (s, _) = generate_statement(&t).unwrap();
            assert!(statement_wellformed(&s).is_empty());
        }
    }
}
