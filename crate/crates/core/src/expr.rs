//! A small closed-form expression language for fields and perturbations.
//!
//! Accepted inputs are arithmetic over named variables with `+ - * / ^`,
//! parentheses, numeric literals, the constant `pi`, and the unary functions
//! `sin cos exp sqrt abs bump`. `bump(x)` is the standard smooth compactly
//! supported profile `exp(1 - 1/(1-x²))` for `|x| < 1` and zero otherwise,
//! so `bump(xi1/r)` vanishes identically for `|ξ₁| ≥ r`.
//!
//! Expressions are parsed once into an AST with variable names resolved to
//! slots, then evaluated many times against a flat slice of variable values.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            _ if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < bytes.len() {
                    let d = bytes[i] as char;
                    if d.is_ascii_digit() || d == '.' {
                        i += 1;
                    } else if (d == 'e' || d == 'E')
                        && i + 1 < bytes.len()
                        && ((bytes[i + 1] as char).is_ascii_digit()
                            || bytes[i + 1] == b'+'
                            || bytes[i + 1] == b'-')
                    {
                        i += 2;
                    } else {
                        break;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| Error::Parse {
                    location: format!("offset {start}"),
                    message: format!("bad numeric literal `{text}`"),
                })?;
                out.push((start, Token::Num(value)));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() {
                    let d = bytes[i] as char;
                    if d.is_ascii_alphanumeric() || d == '_' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    location: format!("offset {i}"),
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    Abs,
    Bump,
}

impl Func {
    fn by_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            "sqrt" => Some(Func::Sqrt),
            "abs" => Some(Func::Abs),
            "bump" => Some(Func::Bump),
            _ => None,
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Exp => x.exp(),
            Func::Sqrt => x.sqrt(),
            Func::Abs => x.abs(),
            Func::Bump => bump(x),
        }
    }
}

/// Smooth compactly supported profile: `exp(1 - 1/(1-x²))` on `(-1, 1)`,
/// zero outside, with `bump(0) = 1`.
pub fn bump(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

#[derive(Debug, Clone)]
enum Node {
    Const(f64),
    Var(usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    fn eval(&self, vars: &[f64]) -> f64 {
        match self {
            Node::Const(c) => *c,
            Node::Var(i) => vars[*i],
            Node::Neg(a) => -a.eval(vars),
            Node::Add(a, b) => a.eval(vars) + b.eval(vars),
            Node::Sub(a, b) => a.eval(vars) - b.eval(vars),
            Node::Mul(a, b) => a.eval(vars) * b.eval(vars),
            Node::Div(a, b) => a.eval(vars) / b.eval(vars),
            Node::Pow(a, b) => a.eval(vars).powf(b.eval(vars)),
            Node::Call(f, a) => f.apply(a.eval(vars)),
        }
    }
}

/// A parsed expression with variables resolved to slot indices.
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    root: Node,
    arity: usize,
}

impl CompiledExpr {
    /// Parse `src` against the given ordered variable names.
    pub fn parse(src: &str, variables: &[&str]) -> Result<CompiledExpr> {
        let tokens = tokenize(src)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            variables,
        };
        let root = parser.expression()?;
        if parser.pos != parser.tokens.len() {
            let (loc, _) = parser.tokens[parser.pos].clone();
            return Err(Error::Parse {
                location: format!("offset {loc}"),
                message: "trailing input after expression".into(),
            });
        }
        Ok(CompiledExpr {
            root,
            arity: variables.len(),
        })
    }

    /// Evaluate against one value per declared variable.
    pub fn eval(&self, vars: &[f64]) -> f64 {
        debug_assert_eq!(vars.len(), self.arity);
        self.root.eval(vars)
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    variables: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn bump_tok(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err_here(&self, message: impl Into<String>) -> Error {
        let location = match self.tokens.get(self.pos) {
            Some((off, _)) => format!("offset {off}"),
            None => "end of input".to_string(),
        };
        Error::Parse {
            location,
            message: message.into(),
        }
    }

    fn expression(&mut self) -> Result<Node> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    node = Node::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    node = Node::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut node = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    node = Node::Mul(Box::new(node), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    node = Node::Div(Box::new(node), Box::new(self.unary()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            // right-associative, binds tighter than unary minus on the right
            let exponent = self.unary()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.bump_tok() {
            Some((_, Token::Num(v))) => Ok(Node::Const(v)),
            Some((_, Token::LParen)) => {
                let inner = self.expression()?;
                match self.bump_tok() {
                    Some((_, Token::RParen)) => Ok(inner),
                    _ => Err(self.err_here("expected `)`")),
                }
            }
            Some((off, Token::Ident(name))) => {
                if matches!(self.peek(), Some(Token::LParen)) {
                    let func = Func::by_name(&name).ok_or_else(|| Error::Parse {
                        location: format!("offset {off}"),
                        message: format!("unknown function `{name}`"),
                    })?;
                    self.pos += 1; // consume '('
                    let arg = self.expression()?;
                    match self.bump_tok() {
                        Some((_, Token::RParen)) => Ok(Node::Call(func, Box::new(arg))),
                        _ => Err(self.err_here("expected `)` after function argument")),
                    }
                } else if name == "pi" {
                    Ok(Node::Const(std::f64::consts::PI))
                } else {
                    let slot = self
                        .variables
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| Error::Parse {
                            location: format!("offset {off}"),
                            message: format!(
                                "unknown variable `{name}` (expected one of {:?})",
                                self.variables
                            ),
                        })?;
                    Ok(Node::Var(slot))
                }
            }
            _ => Err(self.err_here("expected a number, variable, function call or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval1(src: &str, x: f64) -> f64 {
        CompiledExpr::parse(src, &["x"]).unwrap().eval(&[x])
    }

    #[test]
    fn arithmetic_and_precedence() {
        assert_eq!(eval1("1+2*3", 0.0), 7.0);
        assert_eq!(eval1("(1+2)*3", 0.0), 9.0);
        assert_eq!(eval1("2^3^2", 0.0), 512.0); // right-associative
        assert_eq!(eval1("-x^2", 3.0), -9.0);
        assert_eq!(eval1("6/3/2", 0.0), 1.0);
        assert_eq!(eval1("x*pi", 2.0), 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn functions() {
        assert!((eval1("sin(x)^2+cos(x)^2", 0.71) - 1.0).abs() < 1e-15);
        assert_eq!(eval1("abs(-x)", 4.0), 4.0);
        assert!((eval1("sqrt(x)", 16.0) - 4.0).abs() < 1e-15);
        assert!((eval1("exp(0*x)", 5.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bump_profile_is_compactly_supported() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.0), 0.0);
        assert_eq!(bump(-1.0), 0.0);
        assert_eq!(bump(3.7), 0.0);
        assert!(bump(0.999) > 0.0);
        assert!(bump(0.999) < 1e-100);
        assert!(bump(0.5) > 0.0 && bump(0.5) < 1.0);
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(eval1("1e-3 + x", 0.0), 1e-3);
        assert_eq!(eval1("2.5E+2", 0.0), 250.0);
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(CompiledExpr::parse("y + 1", &["x"]).is_err());
        assert!(CompiledExpr::parse("tan(x)", &["x"]).is_err());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(CompiledExpr::parse("1 +", &[]).is_err());
        assert!(CompiledExpr::parse("(1", &[]).is_err());
        assert!(CompiledExpr::parse("1 2", &[]).is_err());
        assert!(CompiledExpr::parse("#", &[]).is_err());
    }

    #[test]
    fn multiple_variables_bind_by_position() {
        let e = CompiledExpr::parse("q1*xi1 - xi1^3", &["q1", "xi1"]).unwrap();
        assert_eq!(e.eval(&[2.0, 1.0]), 1.0);
        assert_eq!(e.eval(&[0.0, 2.0]), -8.0);
    }
}
