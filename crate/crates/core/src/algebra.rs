//! Finite-dimensional commutative algebras given by structure constants.
//!
//! An algebra is either built from rewrite rules `v^k -> f` (one per
//! variable, each right side of total degree below `k`) or from an explicit
//! multiplication table. Both paths end in the same validation: the table is
//! commutative, basis element 0 is the identity, and multiplication is
//! associative on every basis triple.

use std::cmp::Reverse;
use std::collections::HashMap;

use thiserror::Error;

use crate::field::{BaseField, Scalar};
use crate::poly::{parse_poly, Monomial, MultiPoly, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no rewrite rule bounds the degree of variable {0}")]
    InfiniteBasis(String),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(String, String, String),
    #[error("multiplication is not commutative on basis pair ({0}, {1})")]
    NonCommutative(String, String),
    #[error("basis element 0 is not a multiplicative identity")]
    NoIdentity,
    #[error("more than one rule rewrites variable {0}")]
    DuplicateRule(String),
    #[error("variable {0} is not declared")]
    UnknownVariable(String),
    #[error("rule left side {0:?} is not a pure power of one variable")]
    BadRuleLhs(String),
    #[error("right side of the rule for {0} must have total degree below the left side")]
    RuleNotDecreasing(String),
    #[error("coefficient field of a rule does not match the base field")]
    BaseFieldMismatch,
    #[error("multiplication table shape does not match dimension {0}")]
    ShapeMismatch(usize),
    #[error("algebra must have dimension at least 1")]
    Empty,
    #[error("in rule {rule:?}: {source}")]
    Parse { rule: String, source: ParseError },
}

/// A rule `var^power -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub var: String,
    pub power: u32,
    pub rhs: MultiPoly,
}

impl RewriteRule {
    /// Parse a rule from its textual sides, e.g. `("x^2", "2 + 1/4*eps")`.
    pub fn parse(base: BaseField, lhs: &str, rhs: &str) -> Result<Self, AlgebraError> {
        let parse = |text: &str| {
            parse_poly(text, base).map_err(|source| AlgebraError::Parse {
                rule: format!("{lhs} -> {rhs}"),
                source,
            })
        };
        let lhs_poly = parse(lhs)?;
        let rhs = parse(rhs)?;
        let bad = || AlgebraError::BadRuleLhs(lhs.to_string());
        if lhs_poly.num_terms() != 1 {
            return Err(bad());
        }
        let (m, c) = lhs_poly.terms().next().expect("one term");
        let factors: Vec<_> = m.factors().collect();
        if !c.is_one() || factors.len() != 1 {
            return Err(bad());
        }
        let (var, power) = factors[0];
        Ok(RewriteRule { var: var.to_string(), power, rhs })
    }

    pub fn lhs_text(&self) -> String {
        if self.power == 1 {
            self.var.clone()
        } else {
            format!("{}^{}", self.var, self.power)
        }
    }
}

/// Structure constants of a commutative unital algebra over a base field.
///
/// `table[i][j]` holds the coordinates of `b_i · b_j` in the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    base: BaseField,
    vars: Vec<String>,
    rules: Vec<RewriteRule>,
    labels: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
    generators: Vec<Vec<Scalar>>,
}

impl AlgebraPresentation {
    /// Build the quotient of `base[vars]` by pure-power rewrite rules.
    ///
    /// The basis consists of the normal-form monomials sorted by total degree,
    /// then lexicographically in the declared variable order.
    pub fn from_rules(
        base: BaseField,
        vars: &[String],
        rules: Vec<RewriteRule>,
    ) -> Result<Self, AlgebraError> {
        let mut by_var: Vec<Option<&RewriteRule>> = vec![None; vars.len()];
        for rule in &rules {
            let Some(idx) = vars.iter().position(|v| *v == rule.var) else {
                return Err(AlgebraError::UnknownVariable(rule.var.clone()));
            };
            if by_var[idx].is_some() {
                return Err(AlgebraError::DuplicateRule(rule.var.clone()));
            }
            if rule.rhs.field() != base {
                return Err(AlgebraError::BaseFieldMismatch);
            }
            if let Some(v) = rule.rhs.variables().into_iter().find(|v| !vars.contains(v)) {
                return Err(AlgebraError::UnknownVariable(v));
            }
            if rule.rhs.total_degree().is_some_and(|d| d >= rule.power) {
                return Err(AlgebraError::RuleNotDecreasing(rule.var.clone()));
            }
            by_var[idx] = Some(rule);
        }
        let mut bounds = Vec::with_capacity(vars.len());
        let mut rhs_terms: Vec<Vec<(Vec<u32>, Scalar)>> = Vec::with_capacity(vars.len());
        for (v, rule) in vars.iter().zip(&by_var) {
            let rule = rule.ok_or_else(|| AlgebraError::InfiniteBasis(v.clone()))?;
            bounds.push(rule.power);
            rhs_terms.push(
                rule.rhs
                    .terms()
                    .map(|(m, c)| (vars.iter().map(|v| m.exponent(v)).collect(), c.clone()))
                    .collect(),
            );
        }

        let mut basis: Vec<Vec<u32>> = vec![Vec::new()];
        for &k in &bounds {
            basis = basis
                .into_iter()
                .flat_map(|e| {
                    (0..k).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        basis.sort_by_key(|e| (e.iter().sum::<u32>(), Reverse(e.clone())));

        let mut reducer = Reducer {
            base,
            bounds: &bounds,
            rhs: &rhs_terms,
            index: basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect(),
            memo: HashMap::new(),
        };
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        let table: Vec<Vec<Vec<Scalar>>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| reducer.reduce(&add(a, b))).collect())
            .collect();
        let generators = (0..vars.len())
            .map(|i| {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                reducer.reduce(&e)
            })
            .collect();
        let labels = basis
            .iter()
            .map(|e| Monomial::from_pairs(vars.iter().map(String::as_str).zip(e.iter().copied())).to_string())
            .collect();

        let alg = AlgebraPresentation {
            base,
            vars: vars.to_vec(),
            rules,
            labels,
            table,
            generators,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Build from an explicit multiplication table.
    pub fn from_structure_constants(
        base: BaseField,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if d == 0 {
            return Err(AlgebraError::Empty);
        }
        let shape_ok = table.len() == d
            && table.iter().all(|row| {
                row.len() == d
                    && row
                        .iter()
                        .all(|v| v.len() == d && v.iter().all(|s| s.field() == base))
            });
        if !shape_ok {
            return Err(AlgebraError::ShapeMismatch(d));
        }
        let alg = AlgebraPresentation {
            base,
            vars: Vec::new(),
            rules: Vec::new(),
            labels,
            table,
            generators: Vec::new(),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dimension();
        for j in 0..d {
            if self.table[0][j] != self.unit_vector(j) {
                return Err(AlgebraError::NoIdentity);
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(AlgebraError::NonCommutative(
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                    ));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul_coeffs(&self.table[i][j], &self.unit_vector(k));
                    let right = self.mul_coeffs(&self.unit_vector(i), &self.table[j][k]);
                    if left != right {
                        return Err(AlgebraError::NonAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    /// Coordinates of the image of variable `var`, if it is a generator.
    pub fn generator(&self, var: &str) -> Option<&[Scalar]> {
        let i = self.vars.iter().position(|v| v == var)?;
        Some(&self.generators[i])
    }

    pub(crate) fn unit_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.base.zero(); self.dimension()];
        v[i] = self.base.one();
        v
    }

    /// Bilinear extension of the table.
    pub(crate) fn mul_coeffs(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dimension();
        let mut out = vec![self.base.zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul(bj);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = out[k].add(&ab.mul(t));
                    }
                }
            }
        }
        out
    }

    /// Short human-readable description, e.g. `Q[x,eps]/(eps^2 = 0, x^2 = 1/4*eps + 2)`.
    pub fn describe(&self) -> String {
        if self.rules.is_empty() {
            return format!("{}<{}>", self.base, self.labels.join(","));
        }
        let rules: Vec<String> = self
            .rules
            .iter()
            .map(|r| format!("{} = {}", r.lhs_text(), r.rhs))
            .collect();
        format!("{}[{}]/({})", self.base, self.vars.join(","), rules.join(", "))
    }
}

struct Reducer<'a> {
    base: BaseField,
    bounds: &'a [u32],
    rhs: &'a [Vec<(Vec<u32>, Scalar)>],
    index: HashMap<Vec<u32>, usize>,
    memo: HashMap<Vec<u32>, Vec<Scalar>>,
}

impl Reducer<'_> {
    /// Normal form of the monomial with exponent vector `e`. Terminates since
    /// every rewrite strictly lowers total degree.
    fn reduce(&mut self, e: &[u32]) -> Vec<Scalar> {
        if let Some(&i) = self.index.get(e) {
            let mut v = vec![self.base.zero(); self.index.len()];
            v[i] = self.base.one();
            return v;
        }
        if let Some(v) = self.memo.get(e) {
            return v.clone();
        }
        let var = (0..e.len())
            .find(|&i| e[i] >= self.bounds[i])
            .expect("non-basis monomial exceeds some bound");
        let mut rest = e.to_vec();
        rest[var] -= self.bounds[var];
        let mut out = vec![self.base.zero(); self.index.len()];
        for (m, c) in &self.rhs[var] {
            let shifted: Vec<u32> = rest.iter().zip(m).map(|(a, b)| a + b).collect();
            for (k, x) in self.reduce(&shifted).into_iter().enumerate() {
                out[k] = out[k].add(&c.mul(&x));
            }
        }
        self.memo.insert(e.to_vec(), out.clone());
        out
    }
}

/// Convenience wrapper over [`AlgebraPresentation::from_rules`] taking the
/// rules as text pairs `(lhs, rhs)`.
pub fn build_algebra_from_rewrites(
    base: BaseField,
    vars: &[&str],
    rules: &[(&str, &str)],
) -> Result<AlgebraPresentation, AlgebraError> {
    let parsed = rules
        .iter()
        .map(|(l, r)| RewriteRule::parse(base, l, r))
        .collect::<Result<Vec<_>, _>>()?;
    let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    AlgebraPresentation::from_rules(base, &vars, parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: BaseField = BaseField::Rationals;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(crate::field::Rational::new(n.into(), d.into()))
    }

    #[test]
    fn dual_numbers() {
        let alg = build_algebra_from_rewrites(Q, &["eps"], &[("eps^2", "0")]).unwrap();
        assert_eq!(alg.dimension(), 2);
        assert_eq!(alg.basis_labels(), ["1", "eps"]);
        assert_eq!(alg.table()[1][1], vec![q(0, 1), q(0, 1)]);
    }

    #[test]
    fn counterexample_ring_structure() {
        let alg = build_algebra_from_rewrites(
            Q,
            &["x", "eps"],
            &[("eps^2", "0"), ("x^2", "2 + 1/4*eps")],
        )
        .unwrap();
        assert_eq!(alg.dimension(), 4);
        assert_eq!(alg.basis_labels(), ["1", "x", "eps", "eps*x"]);
        // x·x = 2 + eps/4
        assert_eq!(alg.table()[1][1], vec![q(2, 1), q(0, 1), q(1, 4), q(0, 1)]);
        // x·(eps x) = eps x^2 = 2 eps + eps^2/4 = 2 eps
        assert_eq!(alg.table()[1][3], vec![q(0, 1), q(0, 1), q(2, 1), q(0, 1)]);
        assert_eq!(alg.generator("x").unwrap(), &[q(0, 1), q(1, 1), q(0, 1), q(0, 1)][..]);
    }

    #[test]
    fn sqrt_two_ring() {
        let alg = build_algebra_from_rewrites(Q, &["x"], &[("x^2", "2")]).unwrap();
        assert_eq!(alg.dimension(), 2);
        assert_eq!(alg.describe(), "Q[x]/(x^2 = 2)");
    }

    #[test]
    fn rejects_unbounded_variable() {
        let err = build_algebra_from_rewrites(Q, &["x", "eps"], &[("eps^2", "0")]).unwrap_err();
        assert_eq!(err, AlgebraError::InfiniteBasis("x".into()));
    }

    #[test]
    fn rejects_malformed_rules() {
        assert!(matches!(
            build_algebra_from_rewrites(Q, &["x"], &[("2*x^2", "1")]),
            Err(AlgebraError::BadRuleLhs(_))
        ));
        assert!(matches!(
            build_algebra_from_rewrites(Q, &["x", "y"], &[("x*y", "1")]),
            Err(AlgebraError::BadRuleLhs(_))
        ));
        assert_eq!(
            build_algebra_from_rewrites(Q, &["x"], &[("x^2", "x^2 + 1")]).unwrap_err(),
            AlgebraError::RuleNotDecreasing("x".into())
        );
        assert_eq!(
            build_algebra_from_rewrites(Q, &["x"], &[("x^2", "1"), ("x^3", "0")]).unwrap_err(),
            AlgebraError::DuplicateRule("x".into())
        );
        assert_eq!(
            build_algebra_from_rewrites(Q, &["x"], &[("x^2", "y")]).unwrap_err(),
            AlgebraError::UnknownVariable("y".into())
        );
    }

    #[test]
    fn cross_variable_rules_reduce() {
        // y^2 -> x, x^2 -> 0 gives Q[y]/(y^4) on basis 1, x, y, xy
        let alg = build_algebra_from_rewrites(Q, &["x", "y"], &[("x^2", "0"), ("y^2", "x")]).unwrap();
        assert_eq!(alg.dimension(), 4);
        let y = alg.generator("y").unwrap().to_vec();
        let y2 = alg.mul_coeffs(&y, &y);
        let y4 = alg.mul_coeffs(&y2, &y2);
        assert_eq!(y2, alg.generator("x").unwrap());
        assert!(y4.iter().all(Scalar::is_zero));
    }

    #[test]
    fn detects_non_associative_table() {
        // basis 1, a, b with a·a = b, a·b = 0, b·b = 1 fails (a·a)·b = a·(a·b)
        let z = q(0, 1);
        let o = q(1, 1);
        let v = |a: &Scalar, b: &Scalar, c: &Scalar| vec![a.clone(), b.clone(), c.clone()];
        let table = vec![
            vec![v(&o, &z, &z), v(&z, &o, &z), v(&z, &z, &o)],
            vec![v(&z, &o, &z), v(&z, &z, &o), v(&z, &z, &z)],
            vec![v(&z, &z, &o), v(&z, &z, &z), v(&o, &z, &z)],
        ];
        let err = AlgebraPresentation::from_structure_constants(
            Q,
            vec!["1".into(), "a".into(), "b".into()],
            table,
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::NonAssociative(..)));
    }

    #[test]
    fn detects_non_commutative_and_missing_identity() {
        let z = q(0, 1);
        let o = q(1, 1);
        let bad_identity = vec![
            vec![vec![z.clone(), o.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        assert_eq!(
            AlgebraPresentation::from_structure_constants(Q, vec!["1".into(), "a".into()], bad_identity)
                .unwrap_err(),
            AlgebraError::NoIdentity
        );
        let table = vec![
            vec![vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]],
            vec![vec![z.clone(), z.clone(), o.clone()], vec![z.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), z.clone()]],
        ];
        assert!(matches!(
            AlgebraPresentation::from_structure_constants(Q, vec!["1".into(), "a".into(), "b".into()], table),
            Err(AlgebraError::NonCommutative(..))
        ));
    }
}
