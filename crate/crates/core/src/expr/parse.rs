use num_bigint::BigInt;

use super::{Expr, ExprError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Var(name) => format!("identifier {name}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Var(src[start..i].to_string())));
                continue;
            }
            _ => {
                let found = src[start..].chars().next().expect("in bounds");
                return Err(ExprError::Syntax {
                    offset: start,
                    expected: vec!["expression".into()],
                    found: format!("character {found:?}"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    arity: usize,
}

const OPERAND: [&str; 4] = ["integer", "variable", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        ExprError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    // expr := term (("+" | "-") term)*
    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add { lhs: Box::new(lhs), rhs: Box::new(self.term()?) };
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub { lhs: Box::new(lhs), rhs: Box::new(self.term()?) };
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := unary (("*" | "/") unary)*
    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul { lhs: Box::new(lhs), rhs: Box::new(self.unary()?) };
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div { lhs: Box::new(lhs), rhs: Box::new(self.unary()?) };
                }
                _ => return Ok(lhs),
            }
        }
    }

    // unary := "-" unary | power
    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg { arg: Box::new(self.unary()?) });
        }
        self.power()
    }

    // power := atom ("^" exponent)?
    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exponent = self.exponent()?;
        Ok(Expr::Pow { base: Box::new(base), exponent })
    }

    // exponent := integer ("^" exponent)?
    fn exponent(&mut self) -> Result<u32, ExprError> {
        let offset = self.offset();
        let v = match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                v
            }
            Tok::Minus => return Err(ExprError::NegativeExponent { offset }),
            _ => return Err(self.error(&["nonnegative integer exponent"])),
        };
        let mut e: u32 = v.try_into().map_err(|_| ExprError::ExponentTooLarge { offset })?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let inner = self.exponent()?;
            e = e.checked_pow(inner).ok_or(ExprError::ExponentTooLarge { offset })?;
        }
        Ok(e)
    }

    // atom := integer | variable | "(" expr ")"
    fn atom(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(value) => {
                self.bump();
                Ok(Expr::IntLiteral { value })
            }
            Tok::Var(name) => {
                self.bump();
                let index = name
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1 && k <= self.arity);
                match index {
                    Some(k) => Ok(Expr::Var { index: k - 1 }),
                    None => Err(ExprError::UnknownVariable { offset, name, arity: self.arity }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "')'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&OPERAND)),
        }
    }
}

/// Parses an expression in the variables `x1..x{arity}`.
pub fn parse(src: &str, arity: usize) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, arity };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}
