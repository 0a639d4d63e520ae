//! Sparse multivariate polynomials over `Q` or `F_p`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under the graded
//! lexicographic order (total degree first, then variables compared in
//! alphabetical order), so the last entry is always the leading term.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::{BaseField, Scalar};
use crate::ring::{Ring, RingElement, RingError};

pub use parse::{parse_poly, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(BaseField, BaseField),
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A power product of named variables. Exponents are positive; the empty
/// product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    /// Build from `(variable, exponent)` pairs; zero exponents are dropped and
    /// repeated variables merged.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut map: BTreeMap<String, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v.to_string()).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v == var)
            .map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            let d = other.exponent(v);
            if d > *e {
                return None;
            }
            if d < *e {
                out.push((v.clone(), e - d));
            }
        }
        if other.0.iter().any(|(v, _)| self.exponent(v) == 0) {
            return None;
        }
        Some(Monomial(out))
    }

    /// Remove `var` entirely, returning its exponent and the cofactor.
    fn split_off(&self, var: &str) -> (u32, Monomial) {
        let e = self.exponent(var);
        let rest = self.0.iter().filter(|(v, _)| v != var).cloned().collect();
        (e, Monomial(rest))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => {
                        if va == vb {
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            i += 1;
                            j += 1;
                        } else if va < vb {
                            return Ordering::Greater;
                        } else {
                            return Ordering::Less;
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Write `Σ coeff·label` with signs folded into the separators. Shared by
/// polynomial and algebra-element printing.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Scalar, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        let body = if label == "1" {
            mag.to_string()
        } else if mag.is_one() {
            label
        } else {
            format!("{mag}*{label}")
        };
        match (first, negative) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Sparse polynomial with coefficients in a [`BaseField`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: BaseField,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: BaseField) -> Self {
        MultiPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: BaseField, c: Scalar) -> Self {
        let c = field.coerce(&c).expect("constant lies in the coefficient field");
        Self::zero(field).with_term(Monomial::one(), c)
    }

    pub fn from_i64(field: BaseField, n: i64) -> Self {
        Self::constant(field, field.from_i64(n))
    }

    pub fn one(field: BaseField) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn var(field: BaseField, name: &str) -> Self {
        Self::zero(field).with_term(Monomial::var(name), field.one())
    }

    /// Build from explicit terms; like terms are combined.
    pub fn from_terms(field: BaseField, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn with_term(mut self, m: Monomial, c: Scalar) -> Self {
        self.add_term(m, &c);
        self
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The constant term when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v.to_string()))
            .collect()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn check_field(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_field(other)?;
        let mut out = Self::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let c = self.field.coerce(c).expect("scalar lies in the coefficient field");
        let mut out = Self::zero(self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.mul(&c));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = Self::one(self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division under the graded-lex order: returns `h` with
    /// `self = divisor · h`.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_field(divisor)?;
        let Some((lead_m, lead_c)) = divisor.leading_term() else {
            return Err(PolyError::DivisionByZero);
        };
        let lead_inv = lead_c.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.field);
        while let Some((m, c)) = rem.leading_term() {
            let q_m = m.div(lead_m).ok_or(PolyError::NotDivisible)?;
            let q_c = c.mul(&lead_inv);
            let term = Self::zero(self.field).with_term(q_m, q_c);
            rem = &rem - &(&term * divisor);
            quotient = &quotient + &term;
        }
        Ok(quotient)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`:
    /// `self = Σ_k out[k] · var^k`.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let mut out = vec![Self::zero(self.field); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            out[e as usize].add_term(rest, c);
        }
        out
    }

    /// Replace `var` by `value`.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero(self.field);
        let mut power = Self::one(self.field);
        for coeff in self.coefficients_in(var) {
            out = &out + &(&coeff * &power);
            power = &power * value;
        }
        out
    }

    /// Substitute `var = num / den` and clear denominators: with `k` the degree
    /// in `var`, returns `den^k · self(num/den)`, a polynomial.
    pub fn substitute_fraction(&self, var: &str, num: &MultiPoly, den: &MultiPoly) -> MultiPoly {
        let coeffs = self.coefficients_in(var);
        let k = coeffs.len() - 1;
        let mut out = Self::zero(self.field);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &(&(c * &num.pow(i as u32)) * &den.pow((k - i) as u32));
        }
        out
    }

    /// Evaluation homomorphism into `ring`. Rational coefficients reduce into
    /// `F_p`-algebras when their denominators are invertible.
    pub fn evaluate(
        &self,
        ring: &Ring,
        assignment: &HashMap<String, RingElement>,
    ) -> Result<RingElement, PolyError> {
        for v in assignment.values() {
            if v.ring() != ring {
                return Err(RingError::RingMismatch.into());
            }
        }
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut term = ring.from_scalar(c)?;
            for (v, e) in m.factors() {
                let value = assignment
                    .get(v)
                    .ok_or_else(|| PolyError::UnassignedVariable(v.to_string()))?;
                term = &term * &value.pow(e);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `true` if `self = other` or `self = -other`.
    pub fn equals_up_to_sign(&self, other: &MultiPoly) -> bool {
        self == other || *self == -other
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(m, c)| (c, m.to_string())))
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

// Operator forms panic on mismatched fields; use the `try_*` methods when the
// operands come from untrusted input.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial field mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial field mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial field mismatch")
    }
}

/// Determinant of the 3×3 matrix with the given columns, by cofactor expansion
/// along the first column.
pub fn poly_det3(cols: [&[MultiPoly; 3]; 3]) -> MultiPoly {
    let [a, b, c] = cols;
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    let t0 = &a[0] * &minor(1, 2);
    let t1 = &a[1] * &minor(0, 2);
    let t2 = &a[2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> MultiPoly {
        parse_poly(text, BaseField::Rationals).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&q("x + y") * &q("x - y"), q("x^2 - y^2"));
    }

    #[test]
    fn sextic_factorization() {
        let lhs = &(&(&q("x - 2") * &q("x - 1")) * &q("x^2 - 2")) * &q("x^2 - 2");
        assert_eq!(lhs, q("x^6 - 3*x^5 - 2*x^4 + 12*x^3 - 4*x^2 - 12*x + 8"));
        assert_eq!(lhs.to_string(), "x^6 - 3*x^5 - 2*x^4 + 12*x^3 - 4*x^2 - 12*x + 8");
    }

    #[test]
    fn additive_identity() {
        let p = q("3*x*y - 1/2*z + 7");
        assert_eq!(&p + &MultiPoly::zero(BaseField::Rationals), p);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = q("x");
        let b = parse_poly("x", BaseField::Prime(7)).unwrap();
        assert_eq!(
            a.try_add(&b),
            Err(PolyError::FieldMismatch(BaseField::Rationals, BaseField::Prime(7)))
        );
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var("x");
        let y = Monomial::var("y");
        let xy = x.mul(&y);
        let x2 = x.mul(&x);
        assert!(x > y);
        assert!(x2 > xy);
        assert!(xy > y.mul(&y));
        assert!(Monomial::one() < y);
    }

    #[test]
    fn exact_division() {
        assert_eq!(q("(x^2 - 2)^2").exact_divide(&q("x^2 - 2")).unwrap(), q("x^2 - 2"));
        // long-division oracle, checked by multiplying back
        let quintic = q("x^5 - x^4 - 4*x^3 + 4*x^2 + 4*x - 4");
        let sextic = q("x^6 - 3*x^5 - 2*x^4 + 12*x^3 - 4*x^2 - 12*x + 8");
        assert_eq!(&quintic * &q("x - 2"), sextic);
        assert_eq!(sextic.exact_divide(&q("x - 2")).unwrap(), quintic);
        assert_eq!(q("x^2 + 1").exact_divide(&q("x - 1")), Err(PolyError::NotDivisible));
        assert_eq!(
            q("x").exact_divide(&MultiPoly::zero(BaseField::Rationals)),
            Err(PolyError::DivisionByZero)
        );
        let p = &q("x*y + z") * &q("x - y^2 + 3");
        assert_eq!(p.exact_divide(&q("x*y + z")).unwrap(), q("x - y^2 + 3"));
    }

    #[test]
    fn substitution_and_fraction_clearing() {
        let p = q("x*y + z - x*y*z - y");
        assert_eq!(p.substitute("z", &q("1")), q("1 - y"));
        assert_eq!(p.substitute("x", &q("y")), q("y^2 + z - y^2*z - y"));
        // z = a/b in (z^2 + z) gives a^2 + a*b
        let r = q("z^2 + z").substitute_fraction("z", &q("a"), &q("b"));
        assert_eq!(r, q("a^2 + a*b"));
    }

    #[test]
    fn det3_identity_and_alternation() {
        let f = BaseField::Rationals;
        let e = |i: usize| {
            let mut c = [MultiPoly::zero(f), MultiPoly::zero(f), MultiPoly::zero(f)];
            c[i] = MultiPoly::one(f);
            c
        };
        assert_eq!(poly_det3([&e(0), &e(1), &e(2)]), MultiPoly::one(f));
        let a = [q("a"), q("b"), q("c")];
        let b = [q("d"), q("e"), q("f")];
        let c = [q("g"), q("h"), q("i")];
        assert_eq!(poly_det3([&a, &b, &c]), -&poly_det3([&b, &a, &c]));
        assert!(poly_det3([&a, &a, &c]).is_zero());
    }

    fn random_poly(f: BaseField, rng: &mut impl rand::Rng) -> MultiPoly {
        let terms = (0..rng.gen_range(0..5)).map(|_| {
            let m = Monomial::from_pairs(
                ["x", "y", "z"].into_iter().map(|v| (v, rng.gen_range(0..3))).filter(|p| p.1 > 0),
            );
            (m, f.from_i64(rng.gen_range(-5..=5)))
        });
        MultiPoly::from_terms(f, terms)
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9017);
        for f in [BaseField::Rationals, BaseField::Prime(7)] {
            for _ in 0..200 {
                let [a, b, c] = [(); 3].map(|_| random_poly(f, &mut rng));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert!((&(&a - &b) + &b) == a);
            }
        }
    }
}
