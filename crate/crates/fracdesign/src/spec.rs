//! Space specs: `"2,2,3"` (default codings) or `{"factors": [[-1,1],[-1,0,1]]}`
//! given inline or as a path to a file holding either form.

use std::path::Path;

use fracdesign_core::rational;
use fracdesign_core::{DesignSpace, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A level as written in JSON: an integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Level {
    Int(i64),
    Text(String),
}

impl Level {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Level::Int(v) => Ok(rational::int(*v)),
            Level::Text(s) => rational::parse(s).map_err(Error::from),
        }
    }

    pub fn from_rational(v: &Rational) -> Self {
        if rational::is_integer(v) {
            if let Ok(i) = rational::format(v).parse::<i64>() {
                return Level::Int(i);
            }
        }
        Level::Text(rational::format(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub factors: Vec<Vec<Level>>,
}

impl SpaceSpec {
    pub fn of(space: &DesignSpace) -> Self {
        SpaceSpec {
            factors: space.factors().iter().map(|f| f.levels().iter().map(Level::from_rational).collect()).collect(),
        }
    }

    pub fn build(&self) -> Result<DesignSpace> {
        let levels = self
            .factors
            .iter()
            .map(|f| f.iter().map(Level::to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(DesignSpace::from_levels(levels)?)
    }
}

fn parse_counts(text: &str) -> Result<DesignSpace> {
    let counts = text
        .split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| Error::Spec(format!("expected a level count, found {:?}", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DesignSpace::from_level_counts(&counts)?)
}

fn parse_text(text: &str) -> Result<DesignSpace> {
    let text = text.trim();
    if text.starts_with('{') {
        let spec: SpaceSpec =
            serde_json::from_str(text).map_err(|e| Error::Spec(format!("invalid JSON factors object: {}", e)))?;
        spec.build()
    } else {
        parse_counts(text)
    }
}

/// Parses a spec given on the command line. An argument naming an existing
/// file is read from that file.
pub fn parse_space(arg: &str) -> Result<DesignSpace> {
    let trimmed = arg.trim();
    let path = Path::new(trimmed);
    if !trimmed.starts_with('{') && path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        return parse_text(&text);
    }
    parse_text(trimmed)
}
