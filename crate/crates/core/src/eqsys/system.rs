use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquationKind {
    Sum,
    Product,
}

impl EquationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EquationKind::Sum => "sum",
            EquationKind::Product => "product",
        }
    }
}

/// `target = left + right` or `target = left · right` (operand order kept).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub kind: EquationKind,
    pub target: usize,
    pub left: usize,
    pub right: usize,
}

/// A side-condition violation of one equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub equation: usize,
    pub message: String,
}

/// Variables x0 = 0 and x1 = 1 followed by named unknowns, and a list of
/// sum/product equations. All variables are implicitly required distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    vars: Vec<String>,
    equations: Vec<Equation>,
}

pub const X0: usize = 0;
pub const X1: usize = 1;

impl Default for EquationSystem {
    fn default() -> Self {
        Self::new()
    }
}

impl EquationSystem {
    pub fn new() -> Self {
        EquationSystem { vars: vec!["x0".into(), "x1".into()], equations: Vec::new() }
    }

    /// Builds from explicit parts; the first two names must be x0 and x1.
    pub fn from_parts(vars: Vec<String>, equations: Vec<Equation>) -> Result<Self> {
        if vars.len() < 2 || vars[0] != "x0" || vars[1] != "x1" {
            return Err(Error::InvalidArgument("variables must start with x0, x1".into()));
        }
        let distinct: std::collections::BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != vars.len() {
            return Err(Error::InvalidArgument("variable names must be distinct".into()));
        }
        let n = vars.len();
        if equations.iter().any(|e| e.target >= n || e.left >= n || e.right >= n) {
            return Err(Error::InvalidArgument("equation refers to an unknown variable".into()));
        }
        Ok(EquationSystem { vars, equations })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_or_err(&self, name: &str) -> Result<usize> {
        self.var(name).ok_or_else(|| Error::MissingVariable(name.to_string()))
    }

    /// Adds a variable (or returns the existing index for a repeated name).
    pub fn add_var(&mut self, name: &str) -> usize {
        if let Some(i) = self.var(name) {
            return i;
        }
        self.vars.push(name.to_string());
        self.vars.len() - 1
    }

    fn push(&mut self, kind: EquationKind, target: &str, left: &str, right: &str) {
        let target = self.add_var(target);
        let left = self.add_var(left);
        let right = self.add_var(right);
        self.equations.push(Equation { kind, target, left, right });
    }

    pub fn sum(&mut self, target: &str, left: &str, right: &str) {
        self.push(EquationKind::Sum, target, left, right);
    }

    pub fn product(&mut self, target: &str, left: &str, right: &str) {
        self.push(EquationKind::Product, target, left, right);
    }

    pub fn render(&self, e: &Equation) -> String {
        let op = match e.kind {
            EquationKind::Sum => "+",
            EquationKind::Product => "*",
        };
        format!("{} = {} {op} {}", self.vars[e.target], self.vars[e.left], self.vars[e.right])
    }

    /// Side conditions: sums need j, k ≠ 0 and k ≠ i ≠ j; products need
    /// i, j, k ∉ {0, 1} and k ≠ i ≠ j.
    pub fn validate(&self) -> Vec<Finding> {
        let mut out = Vec::new();
        for (idx, e) in self.equations.iter().enumerate() {
            let mut note = |message: String| out.push(Finding { equation: idx, message });
            match e.kind {
                EquationKind::Sum => {
                    if e.left == X0 || e.right == X0 {
                        note("sum operand is constant x0".into());
                    }
                }
                EquationKind::Product => {
                    for (role, v) in [("target", e.target), ("left operand", e.left), ("right operand", e.right)] {
                        if v == X0 || v == X1 {
                            note(format!("product {role} is constant {}", self.vars[v]));
                        }
                    }
                }
            }
            if e.target == e.left || e.target == e.right {
                note(format!("{} target {} also appears as an operand", e.kind.as_str(), self.vars[e.target]));
            }
        }
        out
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{}", self.render(e))?;
        }
        Ok(())
    }
}
