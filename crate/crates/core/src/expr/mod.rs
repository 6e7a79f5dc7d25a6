//! Arithmetic expressions over `x1..xk` that define oracles.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! exponent := integer ("^" exponent)?
//! atom     := integer | "x" index | "(" expr ")"
//! ```
//!
//! Division by zero during evaluation makes the value undefined rather than
//! raising an error.

mod parse;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldDescriptor, FieldElement};
use crate::polyrat::{PolyError, PolyN, RatFunN};
use crate::slicerecon::SliceOracle;

pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected one of {expected:?}, found {found}")]
    Syntax { offset: usize, expected: Vec<String>, found: String },
    #[error("unknown variable {name:?} at byte {offset} (variables are x1..x{arity})")]
    UnknownVariable { offset: usize, name: String, arity: usize },
    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },
    #[error("exponent too large at byte {offset}")]
    ExponentTooLarge { offset: usize },
}

impl ExprError {
    pub fn offset(&self) -> usize {
        match self {
            ExprError::Syntax { offset, .. }
            | ExprError::UnknownVariable { offset, .. }
            | ExprError::NegativeExponent { offset }
            | ExprError::ExponentTooLarge { offset } => *offset,
        }
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Expression tree. Integer literals are nonnegative; `Var` indices are
/// zero-based, so `x1` is `Var { index: 0 }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "node")]
pub enum Expr {
    IntLiteral {
        #[serde(with = "bigint_string")]
        value: BigInt,
    },
    Var {
        index: usize,
    },
    Add {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Sub {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Mul {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Div {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Neg {
        arg: Box<Expr>,
    },
    Pow {
        base: Box<Expr>,
        exponent: u32,
    },
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        assert!(v >= 0, "literals are nonnegative");
        Expr::IntLiteral { value: BigInt::from(v) }
    }

    pub fn var(index: usize) -> Expr {
        Expr::Var { index }
    }

    /// Number of variables needed, i.e. one more than the largest index.
    pub fn min_arity(&self) -> usize {
        match self {
            Expr::IntLiteral { .. } => 0,
            Expr::Var { index } => index + 1,
            Expr::Add { lhs, rhs } | Expr::Sub { lhs, rhs } | Expr::Mul { lhs, rhs } | Expr::Div { lhs, rhs } => {
                lhs.min_arity().max(rhs.min_arity())
            }
            Expr::Neg { arg } => arg.min_arity(),
            Expr::Pow { base, .. } => base.min_arity(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add { .. } | Expr::Sub { .. } => 1,
            Expr::Mul { .. } | Expr::Div { .. } => 2,
            Expr::Neg { .. } => 3,
            Expr::Pow { .. } => 4,
            Expr::IntLiteral { .. } | Expr::Var { .. } => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::IntLiteral { value } => write!(f, "{value}"),
            Expr::Var { index } => write!(f, "x{}", index + 1),
            Expr::Add { lhs, rhs } => {
                lhs.write_at(f, 1)?;
                write!(f, " + ")?;
                rhs.write_at(f, 2)
            }
            Expr::Sub { lhs, rhs } => {
                lhs.write_at(f, 1)?;
                write!(f, " - ")?;
                rhs.write_at(f, 2)
            }
            Expr::Mul { lhs, rhs } => {
                lhs.write_at(f, 2)?;
                write!(f, "*")?;
                rhs.write_at(f, 3)
            }
            Expr::Div { lhs, rhs } => {
                lhs.write_at(f, 2)?;
                write!(f, "/")?;
                rhs.write_at(f, 3)
            }
            Expr::Neg { arg } => {
                write!(f, "-")?;
                arg.write_at(f, 3)
            }
            Expr::Pow { base, exponent } => {
                base.write_at(f, 5)?;
                write!(f, "^{exponent}")
            }
        }
    }
}

/// Minimal parentheses; the output parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Exact value at `point`, or `None` where some division has a zero divisor.
pub fn eval_expr(e: &Expr, field: FieldDescriptor, point: &[FieldElement]) -> Option<FieldElement> {
    Some(match e {
        Expr::IntLiteral { value } => field.from_bigint(value),
        Expr::Var { index } => point[*index].clone(),
        Expr::Add { lhs, rhs } => eval_expr(lhs, field, point)? + eval_expr(rhs, field, point)?,
        Expr::Sub { lhs, rhs } => eval_expr(lhs, field, point)? - eval_expr(rhs, field, point)?,
        Expr::Mul { lhs, rhs } => eval_expr(lhs, field, point)? * eval_expr(rhs, field, point)?,
        Expr::Div { lhs, rhs } => {
            let num = eval_expr(lhs, field, point)?;
            let den = eval_expr(rhs, field, point)?;
            num.checked_div(&den).ok()?
        }
        Expr::Neg { arg } => -eval_expr(arg, field, point)?,
        Expr::Pow { base, exponent } => eval_expr(base, field, point)?.pow(*exponent as u64),
    })
}

/// Expands the expression into a reduced rational function in `arity`
/// variables. Fails if a divisor is identically zero.
pub fn to_ratfun(e: &Expr, field: FieldDescriptor, arity: usize) -> Result<RatFunN, PolyError> {
    Ok(match e {
        Expr::IntLiteral { value } => RatFunN::from_poly(PolyN::constant(field.from_bigint(value), arity)),
        Expr::Var { index } => RatFunN::from_poly(PolyN::var(field, arity, *index)),
        Expr::Add { lhs, rhs } => to_ratfun(lhs, field, arity)?.add(&to_ratfun(rhs, field, arity)?)?,
        Expr::Sub { lhs, rhs } => to_ratfun(lhs, field, arity)?.sub(&to_ratfun(rhs, field, arity)?)?,
        Expr::Mul { lhs, rhs } => to_ratfun(lhs, field, arity)?.mul(&to_ratfun(rhs, field, arity)?)?,
        Expr::Div { lhs, rhs } => to_ratfun(lhs, field, arity)?.div(&to_ratfun(rhs, field, arity)?)?,
        Expr::Neg { arg } => to_ratfun(arg, field, arity)?.neg(),
        Expr::Pow { base, exponent } => to_ratfun(base, field, arity)?.pow(*exponent),
    })
}

#[derive(Debug, Error)]
pub enum RatFunParseError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Reads a rational function from text such as `(x1*x2 + 1)/(x1 - x2)`.
pub fn parse_ratfun(text: &str, field: FieldDescriptor, arity: usize) -> Result<RatFunN, RatFunParseError> {
    Ok(to_ratfun(&parse(text, arity)?, field, arity)?)
}

/// An expression evaluated over a fixed field.
#[derive(Debug, Clone)]
pub struct ExprOracle {
    pub expr: Expr,
    pub field: FieldDescriptor,
    pub arity: usize,
}

impl ExprOracle {
    pub fn parse(src: &str, field: FieldDescriptor, arity: usize) -> Result<Self, ExprError> {
        Ok(ExprOracle { expr: parse(src, arity)?, field, arity })
    }
}

impl SliceOracle for ExprOracle {
    fn arity(&self) -> usize {
        self.arity
    }

    fn field(&self) -> FieldDescriptor {
        self.field
    }

    fn eval(&self, point: &[FieldElement]) -> Option<FieldElement> {
        eval_expr(&self.expr, self.field, point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn e(v: i64) -> FieldElement {
        q().from_i64(v)
    }

    fn b(x: Expr) -> Box<Expr> {
        Box::new(x)
    }

    #[test]
    fn parses_the_examples() {
        let got = parse("(x1*x2 + 1)/(x1 - x2)", 2).unwrap();
        let want = Expr::Div {
            lhs: b(Expr::Add { lhs: b(Expr::Mul { lhs: b(Expr::var(0)), rhs: b(Expr::var(1)) }), rhs: b(Expr::int(1)) }),
            rhs: b(Expr::Sub { lhs: b(Expr::var(0)), rhs: b(Expr::var(1)) }),
        };
        assert_eq!(got, want);
        let cubic = parse("x1^3 + x1*x2^3", 2).unwrap();
        assert_eq!(eval_expr(&cubic, q(), &[e(1), e(2)]), Some(e(9)));
        assert!(matches!(parse("x3", 2), Err(ExprError::UnknownVariable { offset: 0, .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let p = |s: &str| parse(s, 2).unwrap();
        assert_eq!(p("-x1^2"), Expr::Neg { arg: b(Expr::Pow { base: b(Expr::var(0)), exponent: 2 }) });
        assert_eq!(p("x1 - x2 - 1"), p("(x1 - x2) - 1"));
        assert_eq!(p("x1/x2/2"), p("(x1/x2)/2"));
        assert_eq!(p("x1^2^3"), Expr::Pow { base: b(Expr::var(0)), exponent: 8 });
        assert_eq!(p("1 + 2*x1"), p("1 + (2*x1)"));
        assert_eq!(p(" x1\t*\n-x2 "), p("x1*(-x2)"));
    }

    #[test]
    fn error_positions() {
        match parse("x1 + * 2", 1) {
            Err(ExprError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 5);
                assert!(expected.contains(&"variable".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("x1^-2", 1), Err(ExprError::NegativeExponent { offset: 3 }));
        assert_eq!(parse("(x1", 1).unwrap_err().offset(), 3);
        assert_eq!(parse("x1 x1", 1).unwrap_err().offset(), 3);
        assert_eq!(parse("x1 $", 1).unwrap_err().offset(), 3);
        assert_eq!(parse("", 1).unwrap_err().offset(), 0);
        assert!(matches!(parse("x0", 2), Err(ExprError::UnknownVariable { .. })));
        assert!(matches!(parse("y", 2), Err(ExprError::UnknownVariable { .. })));
    }

    #[test]
    fn undefined_points() {
        let f = parse("(x1*x2+1)/(x1-x2)", 2).unwrap();
        assert_eq!(eval_expr(&f, q(), &[e(2), e(2)]), None);
        let g = parse("1/(1/(x1))", 1).unwrap();
        assert_eq!(eval_expr(&g, q(), &[e(0)]), None);
        assert_eq!(eval_expr(&g, q(), &[e(5)]), Some(e(5)));
    }

    #[test]
    fn printing_and_json() {
        for s in ["(x1*x2 + 1)/(x1 - x2)", "-(x1 + 1)^2", "x1 - (x2 - 1)", "x1/(x2*3)", "--x1", "(-x1)^3", "(x1^2)^3"] {
            let t = parse(s, 2).unwrap();
            assert_eq!(parse(&t.to_string(), 2).unwrap(), t, "{s}");
        }
        assert_eq!(parse("(x1*x2 + 1)/(x1 - x2)", 2).unwrap().to_string(), "(x1*x2 + 1)/(x1 - x2)");
        let t = parse("x1^2 - 3", 1).unwrap();
        let j = serde_json::to_value(&t).unwrap();
        assert_eq!(j["node"], "Sub");
        assert_eq!(j["rhs"], serde_json::json!({"node": "IntLiteral", "value": "3"}));
        assert_eq!(serde_json::from_value::<Expr>(j).unwrap(), t);
    }

    #[test]
    fn symbolic_expansion() {
        let f = parse_ratfun("(x1^2 - x2^2)/(x1 - x2)", q(), 2).unwrap();
        assert_eq!(f.to_string(), "(x1 + x2)/(1)");
        let g = parse_ratfun("(x1*x2 + 1)/(x1 - x2)", FieldDescriptor::Prime(101), 2).unwrap();
        assert_eq!(parse_ratfun(&g.to_string(), FieldDescriptor::Prime(101), 2).unwrap().to_string(), g.to_string());
        assert!(parse_ratfun("1/(x1 - x1)", q(), 1).is_err());
    }
}
