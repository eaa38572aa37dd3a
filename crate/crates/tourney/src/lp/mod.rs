//! Exact rational linear programming.
//!
//! Everything in this module is exact: probabilities and LP data are
//! arbitrary-precision rationals, the simplex solver uses Bland's rule so
//! it can never cycle, and no floating point appears anywhere.

mod geometry;
mod simplex;
mod slp;

pub use geometry::{estimate_epsilon, polytope_vertices, EPSILON_GRID_BITS};
pub use simplex::{simplex_solve, LpOutcome};
pub use slp::{
    build_slp, build_slp_dual, check_lp0, check_lp1, skew_support_rank, solve_slp,
    CertificateError, LpCheck, SlpCertificate,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::tournament::TeamSet;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Renders a rational as `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b`, an integer, or an exact decimal such as `0.0016`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: BigInt = den.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|e| format!("bad integer part: {e}"))?
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad fractional part: {frac:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|e| format!("bad fractional part: {e}"))?
        };
        let abs = Rational::new(i.abs() * &scale + f, scale);
        return Ok(if sign < 0 { -abs } else { abs });
    }
    let n: BigInt = s.parse().map_err(|e| format!("bad rational: {e}"))?;
    Ok(Rational::from_integer(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistributionError {
    #[error("probability {index} is negative")]
    Negative { index: usize },
    #[error("probabilities sum to {sum}, expected 1")]
    BadSum { sum: String },
    #[error("distribution has {got} entries, expected {expected}")]
    Dimension { got: usize, expected: usize },
}

/// An exact probability distribution over teams: entries are nonnegative
/// rationals summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self, DistributionError> {
        if let Some(index) = probs.iter().position(|p| p.is_negative()) {
            return Err(DistributionError::Negative { index });
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(DistributionError::BadSum { sum: format_rational(&sum) });
        }
        Ok(Distribution { probs })
    }

    pub fn uniform(n: usize) -> Self {
        Distribution { probs: vec![rat(1, n as i64); n] }
    }

    pub fn indicator(n: usize, winner: usize) -> Self {
        let mut probs = vec![Rational::zero(); n];
        probs[winner] = Rational::one();
        Distribution { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn prob(&self, i: usize) -> &Rational {
        &self.probs[i]
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// Teams with strictly positive probability.
    pub fn support(&self) -> TeamSet {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    /// Total probability of a set of teams.
    pub fn mass(&self, teams: TeamSet) -> Rational {
        teams.iter().map(|i| &self.probs[i]).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.probs
                .iter()
                .map(|p| serde_json::Value::String(format_rational(p)))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let arr = v.as_array().ok_or("expected an array of rationals")?;
        let probs = arr
            .iter()
            .map(|e| {
                e.as_str()
                    .ok_or_else(|| "expected rational string".to_string())
                    .and_then(parse_rational)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Distribution::new(probs).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", format_rational(p))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

/// A linear program over finitely many variables. Variables flagged
/// nonnegative are constrained to `>= 0`; the rest are free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub sense: Sense,
    pub matrix: Vec<Vec<Rational>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<Rational>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>, sense: Sense) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            sense,
            matrix: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            nonneg: vec![true; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn push_row(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "row dimension mismatch");
        self.matrix.push(coeffs);
        self.relations.push(rel);
        self.rhs.push(rhs);
    }

    /// Checks a candidate point against every constraint (and the
    /// nonnegativity flags).
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        if x.iter()
            .zip(&self.nonneg)
            .any(|(v, &nn)| nn && v.is_negative())
        {
            return false;
        }
        self.matrix.iter().zip(&self.relations).zip(&self.rhs).all(|((row, rel), b)| {
            let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            match rel {
                Relation::Ge => lhs >= *b,
                Relation::Le => lhs <= *b,
                Relation::Eq => lhs == *b,
            }
        })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// Debug dump: one line per constraint, rationals as `num/den`.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sense = match self.sense {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        };
        let obj: Vec<String> = self.objective.iter().map(format_rational).collect();
        writeln!(f, "{} {}", sense, obj.join(" "))?;
        for ((row, rel), b) in self.matrix.iter().zip(&self.relations).zip(&self.rhs) {
            let coeffs: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{} {} {}", coeffs.join(" "), rel, format_rational(b))?;
        }
        let nn: Vec<String> = self
            .nonneg
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| format!("x{}", i + 1))
            .collect();
        if !nn.is_empty() {
            writeln!(f, "{} >= 0", nn.join(" "))?;
        }
        Ok(())
    }
}
