//! Coefficient rings for the checker: `Q`, `F_p`, and finite-dimensional
//! commutative algebras over either.
//!
//! Units and unit ideals in an algebra are decided by exact linear algebra
//! over the base field. An element `a` is a unit iff multiplication by `a` is
//! an invertible linear map; a list of generators spans the unit ideal iff
//! `1` lies in the base-field span of all products `g · b_j` with basis
//! elements `b_j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::algebra::AlgebraPresentation;
use crate::field::{BaseField, FieldError, Rational, Scalar};
use crate::linalg;
use crate::poly::{parse_poly, write_terms, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("generators do not span the unit ideal")]
    NotUnitIdeal,
    #[error("empty generator list")]
    EmptyGeneratorList,
    #[error("expected {expected} coordinates, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("ring has no variable named {0}")]
    UnknownVariable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A supported coefficient ring. Cheap to clone.
#[derive(Debug, Clone)]
pub enum Ring {
    Rationals,
    Prime(u64),
    Algebra(Arc<AlgebraPresentation>),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ring::Rationals, Ring::Rationals) => true,
            (Ring::Prime(p), Ring::Prime(q)) => p == q,
            (Ring::Algebra(a), Ring::Algebra(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl From<BaseField> for Ring {
    fn from(f: BaseField) -> Self {
        match f {
            BaseField::Rationals => Ring::Rationals,
            BaseField::Prime(p) => Ring::Prime(p),
        }
    }
}

impl From<AlgebraPresentation> for Ring {
    fn from(a: AlgebraPresentation) -> Self {
        Ring::Algebra(Arc::new(a))
    }
}

impl Ring {
    /// `F_p`, rejecting composite `p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        BaseField::prime(p).map(Ring::from)
    }

    pub fn base_field(&self) -> BaseField {
        match self {
            Ring::Rationals => BaseField::Rationals,
            Ring::Prime(p) => BaseField::Prime(*p),
            Ring::Algebra(a) => a.base(),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Algebra(_))
    }

    pub fn dimension(&self) -> usize {
        match self {
            Ring::Algebra(a) => a.dimension(),
            _ => 1,
        }
    }

    pub fn algebra(&self) -> Option<&AlgebraPresentation> {
        match self {
            Ring::Algebra(a) => Some(a),
            _ => None,
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match self {
            Ring::Algebra(a) => a.basis_labels().to_vec(),
            _ => vec!["1".to_string()],
        }
    }

    fn element(&self, coeffs: Vec<Scalar>) -> RingElement {
        let payload = if self.is_field() {
            debug_assert_eq!(coeffs.len(), 1);
            Payload::Field(coeffs.into_iter().next().expect("one coordinate"))
        } else {
            Payload::Coeffs(coeffs)
        };
        RingElement { ring: self.clone(), payload }
    }

    /// Element with the given coordinates on the canonical basis.
    pub fn from_coeffs(&self, coeffs: Vec<Scalar>) -> Result<RingElement, RingError> {
        let d = self.dimension();
        if coeffs.len() != d {
            return Err(RingError::ShapeMismatch { expected: d, got: coeffs.len() });
        }
        let base = self.base_field();
        let coeffs = coeffs
            .iter()
            .map(|c| base.coerce(c).ok_or(RingError::RingMismatch))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.element(coeffs))
    }

    /// Image of a base-field scalar (rationals reduce into `F_p` when possible).
    pub fn from_scalar(&self, c: &Scalar) -> Result<RingElement, RingError> {
        let base = self.base_field();
        let c = match c {
            Scalar::Rational(q) => base.from_rational(q)?,
            _ => base.coerce(c).ok_or(RingError::RingMismatch)?,
        };
        let mut coeffs = vec![base.zero(); self.dimension()];
        coeffs[0] = c;
        Ok(self.element(coeffs))
    }

    pub fn from_rational(&self, q: &Rational) -> Result<RingElement, RingError> {
        self.from_scalar(&Scalar::Rational(q.clone()))
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_scalar(&self.base_field().from_i64(n))
            .expect("integers embed in every ring")
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    /// The image of an algebra variable.
    pub fn generator(&self, var: &str) -> Result<RingElement, RingError> {
        let coeffs = self
            .algebra()
            .and_then(|a| a.generator(var))
            .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
        Ok(self.element(coeffs.to_vec()))
    }

    pub fn variables(&self) -> Vec<String> {
        self.algebra().map(|a| a.vars().to_vec()).unwrap_or_default()
    }

    /// Parse an element written as a polynomial in the ring's variables,
    /// e.g. `"x + 1/14*eps - 1/56*eps*x"`.
    pub fn parse_element(&self, text: &str) -> Result<RingElement, RingError> {
        let p = parse_poly(text, self.base_field())?;
        let mut assignment = std::collections::HashMap::new();
        for v in p.variables() {
            assignment.insert(v.clone(), self.generator(&v)?);
        }
        p.evaluate(self, &assignment).map_err(|e| match e {
            crate::poly::PolyError::Ring(r) => r,
            other => RingError::UnknownVariable(other.to_string()),
        })
    }

    /// Pseudo-random element. Rational coordinates are small fractions so that
    /// products stay readable in failure messages.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        let base = self.base_field();
        let coeffs = (0..self.dimension())
            .map(|_| match base {
                BaseField::Rationals => Scalar::Rational(Rational::new(
                    rng.gen_range(-9i64..=9).into(),
                    rng.gen_range(1i64..=4).into(),
                )),
                BaseField::Prime(p) => Scalar::Residue { value: rng.gen_range(0..p), modulus: p },
            })
            .collect();
        self.element(coeffs)
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        loop {
            let a = self.random_element(rng);
            if a.is_unit() {
                return a;
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::Prime(p) => write!(f, "F{p}"),
            Ring::Algebra(a) => write!(f, "{}", a.describe()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Payload {
    Field(Scalar),
    Coeffs(Vec<Scalar>),
}

/// An element of a [`Ring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    payload: Payload,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Coordinates on the canonical basis (a single entry for fields).
    pub fn coefficients(&self) -> Vec<Scalar> {
        match &self.payload {
            Payload::Field(s) => vec![s.clone()],
            Payload::Coeffs(c) => c.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Field(s) => s.is_zero(),
            Payload::Coeffs(c) => c.iter().all(Scalar::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn same_ring(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Field(a), Payload::Field(b)) => Payload::Field(a.add(b)),
            (Payload::Coeffs(a), Payload::Coeffs(b)) => {
                Payload::Coeffs(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            _ => unreachable!("payload shape follows the ring"),
        };
        Ok(RingElement { ring: self.ring.clone(), payload })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Field(a), Payload::Field(b)) => Payload::Field(a.mul(b)),
            (Payload::Coeffs(a), Payload::Coeffs(b)) => {
                let alg = self.ring.algebra().expect("coefficient payload implies algebra");
                Payload::Coeffs(alg.mul_coeffs(a, b))
            }
            _ => unreachable!("payload shape follows the ring"),
        };
        Ok(RingElement { ring: self.ring.clone(), payload })
    }

    pub fn pow(&self, exp: u32) -> RingElement {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Result<RingElement, RingError> {
        Ok(self * &self.ring.from_scalar(c)?)
    }

    /// Matrix of `y ↦ self · y` on the canonical basis (column `j` is
    /// `self · b_j`).
    fn regular_representation(&self, alg: &AlgebraPresentation) -> linalg::Matrix {
        let d = alg.dimension();
        let a = self.coefficients();
        let columns: Vec<Vec<Scalar>> = (0..d).map(|j| alg.mul_coeffs(&a, &alg.unit_vector(j))).collect();
        (0..d).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
    }

    pub fn is_unit(&self) -> bool {
        match &self.payload {
            Payload::Field(s) => !s.is_zero(),
            Payload::Coeffs(_) => {
                let alg = self.ring.algebra().expect("algebra");
                linalg::rank(alg.base(), &self.regular_representation(alg)) == alg.dimension()
            }
        }
    }

    pub fn invert_unit(&self) -> Result<RingElement, RingError> {
        match &self.payload {
            Payload::Field(s) => s
                .inv()
                .map(|i| RingElement { ring: self.ring.clone(), payload: Payload::Field(i) })
                .ok_or(RingError::NotAUnit),
            Payload::Coeffs(_) => {
                let alg = self.ring.algebra().expect("algebra");
                if !self.is_unit() {
                    return Err(RingError::NotAUnit);
                }
                let y = linalg::solve(alg.base(), &self.regular_representation(alg), &alg.unit_vector(0))
                    .ok_or(RingError::NotAUnit)?;
                Ok(self.ring.element(y))
            }
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Field(s) => write!(f, "{s}"),
            Payload::Coeffs(c) => {
                let labels = self.ring.basis_labels();
                write_terms(f, c.iter().zip(labels))
            }
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let payload = match &self.payload {
            Payload::Field(s) => Payload::Field(s.neg()),
            Payload::Coeffs(c) => Payload::Coeffs(c.iter().map(Scalar::neg).collect()),
        };
        RingElement { ring: self.ring.clone(), payload }
    }
}

// Operator forms panic on a ring mismatch; the checked `try_*` forms are for
// operands that have not been validated.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

fn common_ring(gens: &[RingElement]) -> Result<&Ring, RingError> {
    let first = gens.first().ok_or(RingError::EmptyGeneratorList)?;
    if gens.iter().any(|g| g.ring != first.ring) {
        return Err(RingError::RingMismatch);
    }
    Ok(&first.ring)
}

/// Solve `Σ r_i g_i = 1` for coefficient vectors of the `r_i`.
fn solve_one_combination(ring: &Ring, gens: &[RingElement]) -> Option<Vec<RingElement>> {
    match ring {
        Ring::Algebra(alg) => {
            let d = alg.dimension();
            // unknowns: coordinates c_{i,j} of r_i = Σ_j c_{i,j} b_j
            let columns: Vec<Vec<Scalar>> = gens
                .iter()
                .flat_map(|g| {
                    let g = g.coefficients();
                    (0..d).map(move |j| alg.mul_coeffs(&g, &alg.unit_vector(j)))
                })
                .collect();
            let matrix: linalg::Matrix =
                (0..d).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
            let y = linalg::solve(alg.base(), &matrix, &alg.unit_vector(0))?;
            Some(y.chunks(d).map(|c| ring.element(c.to_vec())).collect())
        }
        _ => {
            let k = gens.iter().position(|g| !g.is_zero())?;
            Some(
                gens.iter()
                    .enumerate()
                    .map(|(i, g)| if i == k { g.invert_unit().expect("nonzero") } else { ring.zero() })
                    .collect(),
            )
        }
    }
}

/// Whether `gens` generate the whole ring.
pub fn ideal_is_unit(gens: &[RingElement]) -> Result<bool, RingError> {
    let ring = common_ring(gens)?;
    Ok(match ring {
        Ring::Algebra(_) => solve_one_combination(ring, gens).is_some(),
        _ => gens.iter().any(|g| !g.is_zero()),
    })
}

/// Coefficients `r_i` with `Σ r_i g_i = 1`.
pub fn one_combination(gens: &[RingElement]) -> Result<Vec<RingElement>, RingError> {
    let ring = common_ring(gens)?;
    solve_one_combination(ring, gens).ok_or(RingError::NotUnitIdeal)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
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

    #[test]
    fn dual_number_arithmetic() {
        let r = dual();
        let a = r.parse_element("1 + eps").unwrap();
        let b = r.parse_element("1 - eps").unwrap();
        assert_eq!(&a * &b, r.one());
        let eps = r.generator("eps").unwrap();
        assert!(!eps.is_unit());
        assert_eq!(eps.invert_unit(), Err(RingError::NotAUnit));
    }

    #[test]
    fn counterexample_ring_arithmetic() {
        let r = ring_a();
        let x = r.generator("x").unwrap();
        assert_eq!(&x * &x, r.parse_element("2 + eps/4").unwrap());
        assert_eq!((&x * &x).to_string(), "2 + 1/4*eps");
        assert!(x.is_unit());
        // oracle: solve x·y = 1 by hand on the basis {1, x, eps, eps x}
        let inv = x.invert_unit().unwrap();
        assert_eq!(inv, r.parse_element("x/2 - eps*x/16").unwrap());
        assert_eq!(&x * &inv, r.one());
        assert_eq!(inv.to_string(), "1/2*x - 1/16*eps*x");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = Ring::prime(7).unwrap();
        let three = f7.from_i64(3);
        assert_eq!(&three * &three, f7.from_i64(2));
        assert_eq!(three.invert_unit().unwrap(), f7.from_i64(5));
        assert!(!f7.zero().is_unit());
        assert_eq!(f7.one().invert_unit().unwrap(), f7.one());
        assert!(Ring::prime(8).is_err());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Ring::Rationals.one();
        let b = Ring::prime(7).unwrap().one();
        assert_eq!(a.try_add(&b), Err(RingError::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(RingError::RingMismatch));
        assert_eq!(ideal_is_unit(&[a, b]), Err(RingError::RingMismatch));
        assert_eq!(ideal_is_unit(&[]), Err(RingError::EmptyGeneratorList));
    }

    #[test]
    fn unit_ideals() {
        let d = dual();
        let eps = d.generator("eps").unwrap();
        assert!(!ideal_is_unit(&[eps.clone()]).unwrap());
        let combo = one_combination(&[d.from_i64(2), eps.clone()]).unwrap();
        let total = &(&combo[0] * &d.from_i64(2)) + &(&combo[1] * &eps);
        assert_eq!(total, d.one());

        let a = ring_a();
        let x = a.generator("x").unwrap();
        let e = a.generator("eps").unwrap();
        let ex = &e * &x;
        assert!(ideal_is_unit(&[e.clone(), x.clone()]).unwrap());
        assert!(!ideal_is_unit(&[e.clone(), ex.clone()]).unwrap());
        assert_eq!(one_combination(&[e.clone(), ex]), Err(RingError::NotUnitIdeal));
        let r = one_combination(&[x.clone(), e.clone()]).unwrap();
        assert_eq!(&(&r[0] * &x) + &(&r[1] * &e), a.one());
        assert_eq!(one_combination(&[a.one()]).unwrap(), vec![a.one()]);
    }

    #[test]
    fn field_unit_ideal_iff_some_nonzero() {
        let f = Ring::prime(11).unwrap();
        assert!(!ideal_is_unit(&[f.zero(), f.zero()]).unwrap());
        assert!(ideal_is_unit(&[f.zero(), f.from_i64(4)]).unwrap());
        let r = one_combination(&[f.zero(), f.from_i64(4)]).unwrap();
        assert_eq!(&r[1] * &f.from_i64(4), f.one());
    }

    #[test]
    fn units_invert_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for ring in [Ring::Rationals, Ring::prime(101).unwrap(), dual(), ring_a()] {
            for _ in 0..200 {
                let a = ring.random_element(&mut rng);
                if a.is_unit() {
                    assert_eq!(&a * &a.invert_unit().unwrap(), ring.one(), "{a} in {ring}");
                } else {
                    assert!(a.invert_unit().is_err());
                }
            }
        }
    }

    #[test]
    fn local_ring_unit_ideal_matches_residue_field() {
        // in Q[eps]/(eps^2) the only maximal ideal is (eps)
        let d = dual();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let gens: Vec<RingElement> = (0..n)
                .map(|_| {
                    let g = d.random_element(&mut rng);
                    if rng.gen_bool(0.5) {
                        &g * &d.generator("eps").unwrap()
                    } else {
                        g
                    }
                })
                .collect();
            let expected = gens.iter().any(|g| !g.coefficients()[0].is_zero());
            assert_eq!(ideal_is_unit(&gens).unwrap(), expected);
            if expected {
                let r = one_combination(&gens).unwrap();
                let total = r.iter().zip(&gens).fold(d.zero(), |acc, (a, g)| &acc + &(a * g));
                assert_eq!(total, d.one());
            }
        }
    }
}
