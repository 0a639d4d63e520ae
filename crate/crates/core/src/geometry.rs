//! Points of the projective plane over a ring, as vectors in `A^3`, and the
//! bracket calculus used to prove tile equations.
//!
//! Point indices in this module are 1-based, matching how configurations are
//! written down (`p_1, …, p_n`).

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::field::BaseField;
use crate::poly::{parse_poly, poly_det3, MultiPoly, ParseError, PolyError};
use crate::ring::{ideal_is_unit, one_combination, Ring, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("point index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("repeated point index {0}")]
    RepeatedIndex(usize),
    #[error("a configuration needs at least 3 points, got {0}")]
    TooFewColumns(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A vector in `A^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec3([RingElement; 3]);

impl Vec3 {
    pub fn new(x1: RingElement, x2: RingElement, x3: RingElement) -> Result<Self, RingError> {
        if x1.ring() != x2.ring() || x1.ring() != x3.ring() {
            return Err(RingError::RingMismatch);
        }
        Ok(Vec3([x1, x2, x3]))
    }

    pub fn from_i64(ring: &Ring, c: [i64; 3]) -> Self {
        Vec3(c.map(|v| ring.from_i64(v)))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_i64(ring, [0, 0, 0])
    }

    /// Standard basis vector `e_i`, `i ∈ {1, 2, 3}`.
    pub fn basis(ring: &Ring, i: usize) -> Self {
        let mut c = [0; 3];
        c[i - 1] = 1;
        Self::from_i64(ring, c)
    }

    pub fn ring(&self) -> &Ring {
        self.0[0].ring()
    }

    pub fn entries(&self) -> &[RingElement; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RingElement::is_zero)
    }

    pub fn scale(&self, c: &RingElement) -> Vec3 {
        Vec3(self.0.clone().map(|x| c * &x))
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3([0, 1, 2].map(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &Vec3) -> Vec3 {
        Vec3([0, 1, 2].map(|i| &self.0[i] - &other.0[i]))
    }

    /// Whether the entries generate the unit ideal.
    pub fn is_unimodular(&self) -> bool {
        ideal_is_unit(&self.0).expect("entries share a ring")
    }
}

fn check_rings(vs: &[&Vec3]) -> Result<(), RingError> {
    let r = vs[0].ring();
    if vs.iter().all(|v| v.ring() == r) {
        Ok(())
    } else {
        Err(RingError::RingMismatch)
    }
}

fn dot_unchecked(x: &Vec3, y: &Vec3) -> RingElement {
    let [a1, a2, a3] = &x.0;
    let [b1, b2, b3] = &y.0;
    &(&(a1 * b1) + &(a2 * b2)) + &(a3 * b3)
}

fn cross_unchecked(x: &Vec3, y: &Vec3) -> Vec3 {
    let [x1, x2, x3] = &x.0;
    let [y1, y2, y3] = &y.0;
    Vec3([
        &(x2 * y3) - &(x3 * y2),
        &(x3 * y1) - &(x1 * y3),
        &(x1 * y2) - &(x2 * y1),
    ])
}

/// `x · y = x₁y₁ + x₂y₂ + x₃y₃`.
pub fn dot(x: &Vec3, y: &Vec3) -> Result<RingElement, RingError> {
    check_rings(&[x, y])?;
    Ok(dot_unchecked(x, y))
}

/// `x × y = (x₂y₃ − x₃y₂, x₃y₁ − x₁y₃, x₁y₂ − x₂y₁)`.
pub fn cross(x: &Vec3, y: &Vec3) -> Result<Vec3, RingError> {
    check_rings(&[x, y])?;
    Ok(cross_unchecked(x, y))
}

/// `[x, y, z] = (x × y) · z`, the determinant with columns `x, y, z`.
pub fn bracket(x: &Vec3, y: &Vec3, z: &Vec3) -> Result<RingElement, RingError> {
    check_rings(&[x, y, z])?;
    Ok(dot_unchecked(&cross_unchecked(x, y), z))
}

/// Given `v·s = v·t = 0` and `s × t` with unit-ideal entries, return the
/// `λ` with `v = λ (s × t)`.
///
/// `λ = a₁v₁ + a₂v₂ + a₃v₃` where `Σ aᵢcᵢ = 1` for `(c₁, c₂, c₃) = s × t`.
pub fn solve_cross_multiple(v: &Vec3, s: &Vec3, t: &Vec3) -> Result<RingElement, GeometryError> {
    check_rings(&[v, s, t])?;
    if !dot_unchecked(v, s).is_zero() {
        return Err(GeometryError::HypothesisViolated("v · s ≠ 0".into()));
    }
    if !dot_unchecked(v, t).is_zero() {
        return Err(GeometryError::HypothesisViolated("v · t ≠ 0".into()));
    }
    let c = cross_unchecked(s, t);
    let a = one_combination(&c.0).map_err(|_| {
        GeometryError::HypothesisViolated("entries of s × t do not generate the unit ideal".into())
    })?;
    let lambda = a
        .iter()
        .zip(&v.0)
        .fold(v.ring().zero(), |acc, (ai, vi)| &acc + &(ai * vi));
    if c.scale(&lambda) != *v {
        return Err(GeometryError::InternalInconsistency(format!(
            "v ≠ λ (s × t) for λ = {lambda}"
        )));
    }
    Ok(lambda)
}

/// The unit `u` with `R = u · ((s × t) × (v × w))`, so that
/// `[s,t,P][v,w,Q] − [v,w,P][s,t,Q] = u [P,Q,R]` for all `P, Q`.
///
/// Requires `[s,t,v]` a unit, `[s,t,R] = [v,w,R] = 0`, and the entries of
/// `v × w` or of `R` generating the unit ideal. When only one of the last two
/// holds the construction may still fail; that is reported as a violated
/// hypothesis naming the missing condition.
pub fn fundamental_unit(
    s: &Vec3,
    t: &Vec3,
    v: &Vec3,
    w: &Vec3,
    r: &Vec3,
) -> Result<RingElement, GeometryError> {
    check_rings(&[s, t, v, w, r])?;
    let st = cross_unchecked(s, t);
    let vw = cross_unchecked(v, w);
    if !dot_unchecked(&st, v).is_unit() {
        return Err(GeometryError::HypothesisViolated("[s, t, v] is not a unit".into()));
    }
    let vw_unit = vw.is_unimodular();
    let r_unit = r.is_unimodular();
    if !vw_unit && !r_unit {
        return Err(GeometryError::HypothesisViolated(
            "neither v × w nor R has unit-ideal entries".into(),
        ));
    }
    if !dot_unchecked(&st, r).is_zero() {
        return Err(GeometryError::HypothesisViolated("[s, t, R] ≠ 0".into()));
    }
    if !dot_unchecked(&vw, r).is_zero() {
        return Err(GeometryError::HypothesisViolated("[v, w, R] ≠ 0".into()));
    }
    if !cross_unchecked(&st, &vw).is_unimodular() {
        return Err(GeometryError::HypothesisViolated(
            "entries of (s × t) × (v × w) do not generate the unit ideal (v × w is not unimodular)".into(),
        ));
    }
    let u = solve_cross_multiple(r, &st, &vw)?;
    if !u.is_unit() {
        if r_unit {
            return Err(GeometryError::InternalInconsistency(format!(
                "R is unimodular but u = {u} is not a unit"
            )));
        }
        return Err(GeometryError::HypothesisViolated(format!(
            "u = {u} is not a unit (R is not unimodular)"
        )));
    }
    Ok(u)
}

/// A `3 × n` matrix whose columns are the points `p_1, …, p_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMatrix {
    ring: Ring,
    columns: Vec<Vec3>,
}

impl PointMatrix {
    pub fn new(ring: Ring, columns: Vec<Vec3>) -> Result<Self, GeometryError> {
        if columns.len() < 3 {
            return Err(GeometryError::TooFewColumns(columns.len()));
        }
        if columns.iter().any(|c| *c.ring() != ring) {
            return Err(RingError::RingMismatch.into());
        }
        Ok(PointMatrix { ring, columns })
    }

    /// Build from integer columns.
    pub fn from_i64(ring: &Ring, cols: &[[i64; 3]]) -> Result<Self, GeometryError> {
        Self::new(ring.clone(), cols.iter().map(|c| Vec3::from_i64(ring, *c)).collect())
    }

    /// Build from columns written as polynomial text in the ring's variables.
    pub fn parse(ring: &Ring, cols: &[[&str; 3]]) -> Result<Self, GeometryError> {
        let columns = cols
            .iter()
            .map(|c| {
                let [a, b, d] = c.map(|e| ring.parse_element(e));
                Ok(Vec3::new(a?, b?, d?)?)
            })
            .collect::<Result<Vec<_>, GeometryError>>()?;
        Self::new(ring.clone(), columns)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec3] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> Result<&Vec3, GeometryError> {
        if i == 0 || i > self.columns.len() {
            return Err(GeometryError::IndexOutOfRange { index: i, n: self.columns.len() });
        }
        Ok(&self.columns[i - 1])
    }

    pub fn with_column(&self, i: usize, col: Vec3) -> Result<Self, GeometryError> {
        self.column(i)?;
        let mut columns = self.columns.clone();
        columns[i - 1] = col;
        Self::new(self.ring.clone(), columns)
    }

    /// `g · self` for a 3×3 matrix `g` given by rows.
    pub fn left_multiply(&self, g: &[[RingElement; 3]; 3]) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|c| Vec3(g.clone().map(|row| dot_unchecked(&Vec3(row), c))))
            .collect();
        PointMatrix { ring: self.ring.clone(), columns }
    }
}

/// The entries of column `i` generate the unit ideal.
pub fn column_nondegenerate(m: &PointMatrix, i: usize) -> Result<bool, GeometryError> {
    Ok(m.column(i)?.is_unimodular())
}

/// The 2×2 minors of columns `i, j` generate the unit ideal.
pub fn pair_nondegenerate(m: &PointMatrix, i: usize, j: usize) -> Result<bool, GeometryError> {
    let (a, b) = (m.column(i)?, m.column(j)?);
    if i == j {
        return Err(GeometryError::RepeatedIndex(i));
    }
    // the entries of a × b are the 2×2 minors up to sign
    Ok(cross_unchecked(a, b).is_unimodular())
}

/// `[p_i, p_j, p_k]`.
pub fn triple_minor(m: &PointMatrix, i: usize, j: usize, k: usize) -> Result<RingElement, GeometryError> {
    let (a, b, c) = (m.column(i)?, m.column(j)?, m.column(k)?);
    if i == j || i == k {
        return Err(GeometryError::RepeatedIndex(i));
    }
    if j == k {
        return Err(GeometryError::RepeatedIndex(j));
    }
    Ok(dot_unchecked(&cross_unchecked(a, b), c))
}

/// All increasing triples with a nonzero 3×3 minor.
pub fn nonzero_triples(m: &PointMatrix) -> Vec<[usize; 3]> {
    let n = m.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                if !triple_minor(m, i, j, k).expect("valid indices").is_zero() {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// First failure of the basis exchange axiom in a family of 3-sets: bases
/// `b1, b2` and `x ∈ b1 \ b2` such that no `y ∈ b2 \ b1` makes
/// `b1 − x + y` a member.
pub fn basis_exchange_violation(family: &[[usize; 3]]) -> Option<([usize; 3], [usize; 3], usize)> {
    let sets: BTreeSet<BTreeSet<usize>> = family.iter().map(|b| b.iter().copied().collect()).collect();
    for b1 in &sets {
        for b2 in &sets {
            for &x in b1.difference(b2) {
                let ok = b2.difference(b1).any(|&y| {
                    let mut c = b1.clone();
                    c.remove(&x);
                    c.insert(y);
                    sets.contains(&c)
                });
                if !ok {
                    let arr = |s: &BTreeSet<usize>| {
                        let v: Vec<usize> = s.iter().copied().collect();
                        [v[0], v[1], v[2]]
                    };
                    return Some((arr(b1), arr(b2), x));
                }
            }
        }
    }
    None
}

/// A `3 × n` matrix of polynomials, used to replay symbolic normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    field: BaseField,
    columns: Vec<[MultiPoly; 3]>,
}

impl SymbolicMatrix {
    pub fn parse(field: BaseField, cols: &[[&str; 3]]) -> Result<Self, GeometryError> {
        let columns = cols
            .iter()
            .map(|c| {
                let [a, b, d] = c.map(|e| parse_poly(e, field));
                Ok([a?, b?, d?])
            })
            .collect::<Result<Vec<_>, GeometryError>>()?;
        Ok(SymbolicMatrix { field, columns })
    }

    pub fn from_columns(field: BaseField, columns: Vec<[MultiPoly; 3]>) -> Self {
        assert!(columns.iter().flatten().all(|p| p.field() == field));
        SymbolicMatrix { field, columns }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[[MultiPoly; 3]] {
        &self.columns
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.columns.iter().flatten().flat_map(MultiPoly::variables).collect()
    }

    fn column(&self, i: usize) -> Result<&[MultiPoly; 3], GeometryError> {
        if i == 0 || i > self.columns.len() {
            return Err(GeometryError::IndexOutOfRange { index: i, n: self.columns.len() });
        }
        Ok(&self.columns[i - 1])
    }

    /// Symbolic determinant of columns `i, j, k`.
    pub fn minor(&self, i: usize, j: usize, k: usize) -> Result<MultiPoly, GeometryError> {
        Ok(poly_det3([self.column(i)?, self.column(j)?, self.column(k)?]))
    }

    /// Apply `f` to every entry.
    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        SymbolicMatrix {
            field: self.field,
            columns: self.columns.iter().map(|c| c.clone().map(|p| f(&p))).collect(),
        }
    }

    /// Entrywise evaluation into `ring`.
    pub fn evaluate(
        &self,
        ring: &Ring,
        assignment: &HashMap<String, RingElement>,
    ) -> Result<PointMatrix, GeometryError> {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let [a, b, d] = c.clone().map(|p| p.evaluate(ring, assignment));
                Ok(Vec3::new(a?, b?, d?)?)
            })
            .collect::<Result<Vec<_>, GeometryError>>()?;
        PointMatrix::new(ring.clone(), columns)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::build_algebra_from_rewrites;

    fn dual() -> Ring {
        build_algebra_from_rewrites(BaseField::Rationals, &["eps"], &[("eps^2", "0")])
            .unwrap()
            .into()
    }

    fn ring_a() -> Ring {
        build_algebra_from_rewrites(
            BaseField::Rationals,
            &["x", "eps"],
            &[("eps^2", "0"), ("x^2", "2 + 1/4*eps")],
        )
        .unwrap()
        .into()
    }

    fn rand_vec(ring: &Ring, rng: &mut ChaCha8Rng) -> Vec3 {
        Vec3::new(ring.random_element(rng), ring.random_element(rng), ring.random_element(rng)).unwrap()
    }

    #[test]
    fn dot_examples() {
        let q = Ring::Rationals;
        let e = |i| Vec3::basis(&q, i);
        assert!(dot(&e(1), &e(2)).unwrap().is_zero());
        let ones = Vec3::from_i64(&q, [1, 1, 1]);
        assert_eq!(dot(&ones, &ones).unwrap(), q.from_i64(3));
        let a = ring_a();
        let xv = Vec3::new(a.generator("x").unwrap(), a.zero(), a.zero()).unwrap();
        assert_eq!(dot(&xv, &xv).unwrap(), a.parse_element("2 + eps/4").unwrap());
    }

    #[test]
    fn cross_examples() {
        let q = Ring::Rationals;
        let e = |i| Vec3::basis(&q, i);
        assert_eq!(cross(&e(1), &e(2)).unwrap(), e(3));
        let v = Vec3::from_i64(&q, [2, -3, 5]);
        assert!(cross(&v, &v).unwrap().is_zero());
        let f = Ring::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (x, y) = (rand_vec(&f, &mut rng), rand_vec(&f, &mut rng));
            let xy = cross(&x, &y).unwrap();
            assert_eq!(xy, cross(&y, &x).unwrap().scale(&f.from_i64(-1)));
        }
        assert_eq!(
            cross(&e(1), &Vec3::basis(&f, 2)),
            Err(RingError::RingMismatch)
        );
    }

    #[test]
    fn bracket_examples() {
        let q = Ring::Rationals;
        let e = |i| Vec3::basis(&q, i);
        assert_eq!(bracket(&e(1), &e(2), &e(3)).unwrap(), q.one());
        let v = Vec3::from_i64(&q, [4, 1, 7]);
        assert!(bracket(&v, &e(2), &v).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_alternating_and_multilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for ring in [Ring::prime(101).unwrap(), ring_a()] {
            for _ in 0..50 {
                let (x, y, z, w) = (
                    rand_vec(&ring, &mut rng),
                    rand_vec(&ring, &mut rng),
                    rand_vec(&ring, &mut rng),
                    rand_vec(&ring, &mut rng),
                );
                let c = ring.random_element(&mut rng);
                let b = bracket(&x, &y, &z).unwrap();
                assert_eq!(bracket(&y, &x, &z).unwrap(), -&b);
                assert_eq!(bracket(&x, &z, &y).unwrap(), -&b);
                assert_eq!(bracket(&y, &z, &x).unwrap(), b);
                let lin = bracket(&x, &y, &z.scale(&c).add(&w)).unwrap();
                assert_eq!(lin, &(&c * &b) + &bracket(&x, &y, &w).unwrap());
            }
        }
    }

    #[test]
    fn column_and_pair_nondegeneracy() {
        let q = Ring::Rationals;
        let m = PointMatrix::from_i64(&q, &[[0, 0, 0], [1, 5, 7], [1, 0, 0], [0, 1, 0], [2, 10, 14]]).unwrap();
        assert!(!column_nondegenerate(&m, 1).unwrap());
        assert!(column_nondegenerate(&m, 2).unwrap());
        assert!(pair_nondegenerate(&m, 3, 4).unwrap());
        assert!(!pair_nondegenerate(&m, 2, 5).unwrap());
        assert_eq!(
            column_nondegenerate(&m, 6),
            Err(GeometryError::IndexOutOfRange { index: 6, n: 5 })
        );
        assert_eq!(pair_nondegenerate(&m, 2, 2), Err(GeometryError::RepeatedIndex(2)));

        let a = ring_a();
        let m = PointMatrix::parse(&a, &[["eps", "0", "eps*x"], ["1", "0", "0"], ["0", "1", "0"]]).unwrap();
        assert!(!column_nondegenerate(&m, 1).unwrap());
    }

    #[test]
    fn pair_nondegenerate_matches_proportionality_over_fields() {
        let f = Ring::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let a = rand_vec(&f, &mut rng);
            let b = if rng.gen_bool(0.3) { a.scale(&f.random_element(&mut rng)) } else { rand_vec(&f, &mut rng) };
            let m = PointMatrix::new(f.clone(), vec![a.clone(), b.clone(), Vec3::basis(&f, 1)]).unwrap();
            // direct test: b is a multiple of a, or a is a multiple of b
            let proportional = (0..101).any(|k| a.scale(&f.from_i64(k)) == b)
                || (0..101).any(|k| b.scale(&f.from_i64(k)) == a);
            assert_eq!(pair_nondegenerate(&m, 1, 2).unwrap(), !proportional);
        }
    }

    #[test]
    fn nonmatroid_minor_support() {
        let d = dual();
        let m = PointMatrix::parse(
            &d,
            &[["1", "0", "0"], ["0", "eps", "0"], ["0", "1", "eps"], ["0", "0", "eps"], ["0", "5", "3"]],
        )
        .unwrap();
        assert!(triple_minor(&m, 1, 2, 3).unwrap().is_zero());
        assert!(!triple_minor(&m, 1, 2, 5).unwrap().is_zero());
        assert_eq!(nonzero_triples(&m), vec![[1, 2, 5], [1, 3, 4], [1, 3, 5], [1, 4, 5]]);
        let (b1, b2, x) = basis_exchange_violation(&nonzero_triples(&m)).unwrap();
        assert!(b1 != b2 && b1.contains(&x) && !b2.contains(&x));
        assert_eq!(triple_minor(&m, 1, 1, 2), Err(GeometryError::RepeatedIndex(1)));
    }

    #[test]
    fn basis_exchange_holds_for_uniform_matroid() {
        let q = Ring::Rationals;
        let m = PointMatrix::from_i64(&q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]).unwrap();
        assert_eq!(nonzero_triples(&m).len(), 10);
        assert!(basis_exchange_violation(&nonzero_triples(&m)).is_none());
    }

    #[test]
    fn solve_cross_multiple_examples() {
        let q = Ring::Rationals;
        let e = |i| Vec3::basis(&q, i);
        let v = Vec3::from_i64(&q, [0, 0, 5]);
        assert_eq!(solve_cross_multiple(&v, &e(1), &e(2)).unwrap(), q.from_i64(5));
        assert!(matches!(
            solve_cross_multiple(&e(1), &e(1), &e(2)),
            Err(GeometryError::HypothesisViolated(_))
        ));

        let d = dual();
        let v = Vec3::new(d.zero(), d.zero(), d.parse_element("1 + eps").unwrap()).unwrap();
        let lambda = solve_cross_multiple(&v, &Vec3::basis(&d, 1), &Vec3::basis(&d, 2)).unwrap();
        assert_eq!(lambda, d.parse_element("1 + eps").unwrap());

        let f = Ring::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20 {
            let (s, t) = (rand_vec(&f, &mut rng), rand_vec(&f, &mut rng));
            let st = cross(&s, &t).unwrap();
            if st.is_unimodular() {
                assert_eq!(solve_cross_multiple(&st, &s, &t).unwrap(), f.one());
            }
        }
    }

    #[test]
    fn fundamental_unit_examples() {
        let q = Ring::Rationals;
        let e = |i| Vec3::basis(&q, i);
        let (s, t, v, w) = (e(1), e(2), e(3), e(1));
        let r = cross(&cross(&s, &t).unwrap(), &cross(&v, &w).unwrap()).unwrap();
        assert_eq!(fundamental_unit(&s, &t, &v, &w, &r).unwrap(), q.one());
        let r3 = r.scale(&q.from_i64(3));
        assert_eq!(fundamental_unit(&s, &t, &v, &w, &r3).unwrap(), q.from_i64(3));
        // R = 0 satisfies the stated disjunction through v × w, but u = 0
        assert!(matches!(
            fundamental_unit(&s, &t, &v, &w, &Vec3::zero(&q)),
            Err(GeometryError::HypothesisViolated(_))
        ));
        // [s, t, v] = 0
        assert!(matches!(
            fundamental_unit(&s, &t, &e(2), &w, &r),
            Err(GeometryError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn symbolic_minor_evaluates_consistently() {
        let f = BaseField::Prime(101);
        let sm = SymbolicMatrix::parse(f, &[["1", "a", "b"], ["a*b", "1", "c"], ["c", "a + b", "1"]]).unwrap();
        let ring = Ring::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..20 {
            let assign: HashMap<String, RingElement> =
                ["a", "b", "c"].iter().map(|v| (v.to_string(), ring.random_element(&mut rng))).collect();
            let m = sm.evaluate(&ring, &assign).unwrap();
            let symbolic = sm.minor(1, 2, 3).unwrap().evaluate(&ring, &assign).unwrap();
            assert_eq!(symbolic, triple_minor(&m, 1, 2, 3).unwrap());
        }
    }
}
