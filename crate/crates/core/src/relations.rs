//! The quadratic system `theta_a = mu_a(theta)` satisfied exactly by the
//! coefficients of indicator polynomials, plus the linear size and strength
//! constraints, and their text emission for external algebra systems.
//!
//! `mu_a(theta)` is the coefficient of `x^a` in the normal form of
//! `(sum_b theta_b x^b)^2`. It is built symbolically: every product
//! `x^{b1} x^{b2}` is reduced once and its coefficients are accumulated onto
//! the pair `(b1, b2)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_traits::{One, Zero};

use crate::contrast::contrast_matrix;
use crate::indicator::DivisorBasis;
use crate::poly::{write_signed_term, Poly};
use crate::rational::Rational;
use crate::space::{DesignSpace, Exponents};
use crate::{Error, Result};

/// One summand `coefficient * theta_left * theta_right` with `left <= right`
/// in exponent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coefficient: Rational,
    pub left: Exponents,
    pub right: Exponents,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSystem {
    exponents: Vec<Exponents>,
    forms: Vec<Vec<RelationTerm>>,
}

pub fn relation_system(space: &DesignSpace) -> RelationSystem {
    let basis = DivisorBasis::new(space);
    let exps = space.exponents();
    let m = exps.len();
    // forms[a] accumulates (left index, right index) -> coefficient.
    let mut acc: Vec<alloc::collections::BTreeMap<(usize, usize), Rational>> =
        (0..m).map(|_| Default::default()).collect();
    let two = Rational::from_integer(2.into());
    for i in 0..m {
        for j in i..m {
            let weight = if i == j { Rational::one() } else { two.clone() };
            let nf = basis.reduce_monomial(&exps[i].add(&exps[j]));
            for (b, c) in nf.terms() {
                let pos = space.exponent_position(b).expect("normal form lies in the standard monomials");
                let slot = acc[pos].entry((i, j)).or_insert_with(Rational::zero);
                *slot += c * &weight;
            }
        }
    }
    let forms = acc
        .into_iter()
        .map(|form| {
            form.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, j), c)| RelationTerm { coefficient: c, left: exps[i].clone(), right: exps[j].clone() })
                .collect()
        })
        .collect();
    RelationSystem { exponents: exps.to_vec(), forms }
}

impl RelationSystem {
    pub fn exponents(&self) -> &[Exponents] {
        &self.exponents
    }

    /// Terms of `mu_a`, or `None` if `a` is not a standard exponent.
    pub fn form(&self, a: &Exponents) -> Option<&[RelationTerm]> {
        self.exponents.iter().position(|e| e == a).map(|k| self.forms[k].as_slice())
    }

    pub fn forms(&self) -> impl Iterator<Item = (&Exponents, &[RelationTerm])> {
        self.exponents.iter().zip(self.forms.iter().map(Vec::as_slice))
    }

    /// `mu_a(theta)` for coefficients keyed by exponent vector.
    pub fn evaluate(&self, a: &Exponents, theta: &Poly) -> Option<Rational> {
        self.form(a).map(|terms| {
            terms.iter().fold(Rational::zero(), |acc, t| {
                acc + &t.coefficient * theta.coefficient(&t.left) * theta.coefficient(&t.right)
            })
        })
    }

    /// True iff `theta_a = mu_a(theta)` for every standard exponent `a`.
    pub fn check(&self, theta: &Poly) -> bool {
        self.forms().all(|(a, terms)| {
            let mu = terms.iter().fold(Rational::zero(), |acc, t| {
                acc + &t.coefficient * theta.coefficient(&t.left) * theta.coefficient(&t.right)
            });
            mu == theta.coefficient(a)
        })
    }
}

/// `check_relations(system, theta)`.
pub fn check_relations(system: &RelationSystem, theta: &Poly) -> bool {
    system.check(theta)
}

/// `sum_a coefficient_a * theta_a + size_coefficient * s + constant = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub terms: Vec<(Rational, Exponents)>,
    pub size_coefficient: Rational,
    pub constant: Rational,
}

fn weighted_columns(space: &DesignSpace, weights: &[i8]) -> Vec<(Rational, Exponents)> {
    space
        .exponents()
        .iter()
        .filter_map(|a| {
            let c = weights.iter().enumerate().filter(|(_, &w)| w != 0).fold(Rational::zero(), |acc, (run, &w)| {
                let v = space.monomial_value(run, a);
                if w > 0 {
                    acc + v
                } else {
                    acc - v
                }
            });
            (!c.is_zero()).then(|| (c, a.clone()))
        })
        .collect()
}

/// `1^T X theta - s = 0`.
pub fn size_constraint(space: &DesignSpace) -> LinearConstraint {
    let ones = alloc::vec![1i8; space.run_count()];
    LinearConstraint {
        terms: weighted_columns(space, &ones),
        size_coefficient: -Rational::one(),
        constant: Rational::zero(),
    }
}

/// `1^T X theta - s = 0` with the size fixed to `s`.
pub fn fixed_size_constraint(space: &DesignSpace, s: usize) -> LinearConstraint {
    let mut c = size_constraint(space);
    c.size_coefficient = Rational::zero();
    c.constant = -Rational::from_integer(s.into());
    c
}

/// `C_k X theta = 0` for `k = 1..=t`, one constraint per contrast row.
pub fn strength_constraints(space: &DesignSpace, t: usize) -> Result<Vec<LinearConstraint>> {
    if t > space.factor_count() {
        return Err(Error::InvalidStrength { strength: t, factors: space.factor_count() });
    }
    let c = contrast_matrix(space);
    Ok(c.labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.is_constant() && l.order() <= t)
        .map(|(row, _)| LinearConstraint {
            terms: weighted_columns(space, c.row_signs(row)),
            size_coefficient: Rational::zero(),
            constant: Rational::zero(),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationFormat {
    /// One `... = 0` line per generator.
    Plain,
    /// A ring declaration and a comma-separated `ideal(...)`, ready to paste
    /// into Macaulay2.
    CasIdeal,
}

impl core::str::FromStr for RelationFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(RelationFormat::Plain),
            "cas-ideal" => Ok(RelationFormat::CasIdeal),
            other => Err(Error::UnknownFormat(other.into())),
        }
    }
}

fn var_name(a: &Exponents) -> Result<String> {
    a.digits()
        .map(|d| alloc::format!("t{}", d))
        .ok_or_else(|| Error::ExponentTooLarge { exponents: alloc::format!("{}", a) })
}

fn relation_generator(a: &Exponents, terms: &[RelationTerm]) -> Result<String> {
    let mut out = String::new();
    write_signed_term(&mut out, true, &Rational::one(), Some(&var_name(a)?));
    for t in terms {
        let mono = if t.left == t.right {
            alloc::format!("{}^2", var_name(&t.left)?)
        } else {
            alloc::format!("{}*{}", var_name(&t.left)?, var_name(&t.right)?)
        };
        write_signed_term(&mut out, false, &-&t.coefficient, Some(&mono));
    }
    Ok(out)
}

fn constraint_generator(c: &LinearConstraint) -> Result<String> {
    let mut out = String::new();
    let mut first = true;
    for (coef, a) in &c.terms {
        write_signed_term(&mut out, first, coef, Some(&var_name(a)?));
        first = false;
    }
    if !c.size_coefficient.is_zero() {
        write_signed_term(&mut out, first, &c.size_coefficient, Some("s"));
        first = false;
    }
    if !c.constant.is_zero() {
        write_signed_term(&mut out, first, &c.constant, None);
        first = false;
    }
    if first {
        out.push('0');
    }
    Ok(out)
}

/// Renders the system `theta_a - mu_a = 0` followed by `constraints`.
pub fn emit_relations(
    system: &RelationSystem,
    constraints: &[LinearConstraint],
    format: RelationFormat,
) -> Result<String> {
    let mut generators = Vec::with_capacity(system.exponents.len() + constraints.len());
    for (a, terms) in system.forms() {
        generators.push(relation_generator(a, terms)?);
    }
    for c in constraints {
        generators.push(constraint_generator(c)?);
    }
    let mut out = String::new();
    match format {
        RelationFormat::Plain => {
            for g in &generators {
                let _ = writeln!(out, "{} = 0", g);
            }
        }
        RelationFormat::CasIdeal => {
            let mut vars = system.exponents.iter().map(var_name).collect::<Result<Vec<_>>>()?;
            if constraints.iter().any(|c| !c.size_coefficient.is_zero()) {
                vars.push("s".into());
            }
            let _ = writeln!(out, "R = QQ[{}];", vars.join(", "));
            let _ = writeln!(out, "I = ideal(");
            for (k, g) in generators.iter().enumerate() {
                let sep = if k + 1 < generators.len() { "," } else { "" };
                let _ = writeln!(out, "  {}{}", g, sep);
            }
            let _ = writeln!(out, ");");
        }
    }
    Ok(out)
}
