//! JSON documents. Every rational is a string (`"3/8"`, `"-1"`) so values
//! survive any JSON reader unchanged.
//!
//! Indicator:
//! ```json
//! {"space": {"factors": [[-1, 1], [-1, 0, 1]]},
//!  "theta": [{"exponents": [0, 0], "value": "1/2"}, ...],
//!  "polynomial": "1/2 + 1/2*x1*x2"}
//! ```
//! `theta` lists every standard monomial in exponent order; on input, missing
//! monomials are zero and `space`/`polynomial` are optional.
//!
//! Contrast representation:
//! ```json
//! {"constant": "6", "terms": [{"J": [2], "itilde": [1], "value": "2"}, ...]}
//! ```
//! Factor positions in `J` are 1-based; only nonzero terms are listed.
//!
//! Classification:
//! ```json
//! {"total": 44, "orbits": [{"size": 2, "representative": [[-1, -1, -1, -1], ...],
//!   "theta": {...}, "mu": {...}}]}
//! ```

use fracdesign_core::rational;
use fracdesign_core::{
    contrast_rep, ContrastLabel, ContrastRep, DesignSpace, Exponents, Fraction, IndicatorPoly, Orbit, Poly, Rational,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spec::{Level, SpaceSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub exponents: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSpec>,
    pub theta: Vec<ThetaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

impl IndicatorDoc {
    pub fn new(space: &DesignSpace, indicator: &IndicatorPoly) -> Self {
        let theta = space
            .exponents()
            .iter()
            .map(|a| ThetaEntry { exponents: a.0.clone(), value: rational::format(&indicator.coefficient(a)) })
            .collect();
        IndicatorDoc { space: Some(SpaceSpec::of(space)), theta, polynomial: Some(indicator.poly().to_string()) }
    }

    /// Reads the coefficients back as a polynomial on `space`.
    pub fn to_indicator(&self, space: &DesignSpace) -> Result<IndicatorPoly> {
        let n = space.factor_count();
        let mut poly = Poly::zero(n);
        for entry in &self.theta {
            if entry.exponents.len() != n {
                return Err(fracdesign_core::Error::WrongArity { expected: n, found: entry.exponents.len() }.into());
            }
            poly.add_term(Exponents(entry.exponents.clone()), rational::parse(&entry.value)?);
        }
        Ok(IndicatorPoly::from_poly(space, poly)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContrastTerm {
    #[serde(rename = "J")]
    pub factors: Vec<usize>,
    pub itilde: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContrastDoc {
    pub constant: String,
    pub terms: Vec<ContrastTerm>,
}

impl ContrastDoc {
    pub fn new(mu: &ContrastRep) -> Self {
        let terms = mu
            .nonzero()
            .filter(|(label, _)| !label.is_constant())
            .map(|(label, v)| ContrastTerm {
                factors: label.factors.iter().map(|j| j + 1).collect(),
                itilde: label.itilde.clone(),
                value: rational::format(v),
            })
            .collect();
        ContrastDoc { constant: rational::format(mu.constant()), terms }
    }

    /// Rebuilds the full vector against the labels of `space`.
    pub fn to_rep(&self, labels: &[ContrastLabel]) -> Result<ContrastRep> {
        let mut values: Vec<Rational> = vec![rational::int(0); labels.len()];
        values[0] = rational::parse(&self.constant)?;
        for term in &self.terms {
            let label = ContrastLabel {
                factors: term.factors.iter().map(|j| j.wrapping_sub(1)).collect(),
                itilde: term.itilde.clone(),
            };
            let pos = labels
                .iter()
                .position(|l| *l == label)
                .ok_or_else(|| Error::Spec(format!("no contrast labelled {}", label)))?;
            values[pos] = rational::parse(&term.value)?;
        }
        Ok(ContrastRep::new(labels, values)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub size: usize,
    pub representative: Vec<Vec<Level>>,
    pub theta: IndicatorDoc,
    pub mu: ContrastDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub total: usize,
    pub orbits: Vec<OrbitDoc>,
}

pub fn points_json(space: &DesignSpace, fraction: &Fraction) -> Vec<Vec<Level>> {
    space.points_of(fraction).iter().map(|p| p.iter().map(Level::from_rational).collect()).collect()
}

impl ClassificationDoc {
    pub fn new(space: &DesignSpace, total: usize, orbits: &[Orbit]) -> Result<Self> {
        let orbits = orbits
            .iter()
            .map(|o| {
                let f = &o.representative;
                let mut theta = IndicatorDoc::new(space, &fracdesign_core::indicator_of(space, f)?);
                theta.space = None;
                Ok(OrbitDoc {
                    size: o.size(),
                    representative: points_json(space, f),
                    theta,
                    mu: ContrastDoc::new(&contrast_rep(space, f)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassificationDoc { total, orbits })
    }
}
