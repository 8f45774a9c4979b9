//! Operator expressions for problem files: named presets, scalar multiples,
//! sums and differences, and `kron(a, b)`.
//!
//! The language is deliberately tiny — just enough to write constructions
//! like `kron(sigma_x, identity) + kron(identity, sigma_x)` without
//! precomputed matrix literals. `identity` takes its dimension from context:
//! the problem dimension at top level, the cofactor inside `kron`.

use symmax_core::basis::named_operator;
use symmax_core::linalg::{kron, C64, ComplexMatrix};

/// Parses `src` and evaluates it to a `dim x dim` complex matrix.
pub fn parse_operator(src: &str, dim: usize) -> Result<ComplexMatrix, String> {
    let tokens = tokenize(src)?;
    let mut parser = Parser { tokens: &tokens, pos: 0, src };
    let node = parser.expr()?;
    parser.expect_end()?;
    match eval(&node, Some(dim), src)? {
        Value::Op(m) => Ok(m),
        Value::Scalar(_) => {
            Err(format!("`{src}` evaluates to a scalar, not an operator"))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Number(f64),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push(Token::Plus);
                i += 1;
            }
            b'-' => {
                out.push(Token::Minus);
                i += 1;
            }
            b'*' => {
                out.push(Token::Star);
                i += 1;
            }
            b'(' => {
                out.push(Token::LParen);
                i += 1;
            }
            b')' => {
                out.push(Token::RParen);
                i += 1;
            }
            b',' => {
                out.push(Token::Comma);
                i += 1;
            }
            c if c.is_ascii_digit() || c == b'.' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_digit() || matches!(bytes[i], b'.' | b'e' | b'E'))
                {
                    // An exponent may carry its own sign.
                    if matches!(bytes[i], b'e' | b'E')
                        && matches!(bytes.get(i + 1), Some(b'+' | b'-'))
                    {
                        i += 1;
                    }
                    i += 1;
                }
                let text = &src[start..i];
                let value: f64 =
                    text.parse().map_err(|_| format!("bad number `{text}` in `{src}`"))?;
                out.push(Token::Number(value));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token::Ident(src[start..i].to_string()));
            }
            c => {
                return Err(format!(
                    "unexpected character `{}` at byte {i} in `{src}`",
                    c as char
                ))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Num(f64),
    Name(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Kron(Box<Node>, Box<Node>),
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<(), String> {
        match self.advance() {
            Some(t) if t == want => Ok(()),
            other => Err(format!(
                "expected {want:?}, found {other:?} in `{}`",
                self.src
            )),
        }
    }

    fn expect_end(&mut self) -> Result<(), String> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(format!("trailing {t:?} in `{}`", self.src)),
        }
    }

    fn expr(&mut self) -> Result<Node, String> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    node = Node::Add(node.into(), self.term()?.into());
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    node = Node::Sub(node.into(), self.term()?.into());
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Node, String> {
        let mut node = self.unary()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.pos += 1;
            node = Node::Mul(node.into(), self.unary()?.into());
        }
        Ok(node)
    }

    fn unary(&mut self) -> Result<Node, String> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            return Ok(Node::Neg(self.unary()?.into()));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node, String> {
        match self.advance() {
            Some(Token::Number(v)) => Ok(Node::Num(v)),
            Some(Token::Ident(name)) if name == "kron" => {
                self.expect(Token::LParen)?;
                let a = self.expr()?;
                self.expect(Token::Comma)?;
                let b = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(Node::Kron(a.into(), b.into()))
            }
            Some(Token::Ident(name)) => Ok(Node::Name(name)),
            Some(Token::LParen) => {
                let node = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(node)
            }
            other => Err(format!("unexpected {other:?} in `{}`", self.src)),
        }
    }
}

/// Dimensions fixed by the preset registry; `identity` adapts to context.
fn natural_dim(name: &str) -> Option<usize> {
    match name {
        "sigma_x" | "sigma_y" | "sigma_z" => Some(2),
        "J_z" => Some(3),
        _ => None,
    }
}

/// Dimension an expression determines on its own, before any context is
/// applied. `None` for scalars, bare `identity`, and unknown names (the
/// registry rejects those at evaluation).
fn intrinsic_dim(node: &Node) -> Option<usize> {
    match node {
        Node::Num(_) => None,
        Node::Name(name) => natural_dim(name),
        Node::Neg(a) => intrinsic_dim(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => {
            intrinsic_dim(a).or_else(|| intrinsic_dim(b))
        }
        Node::Kron(a, b) => match (intrinsic_dim(a), intrinsic_dim(b)) {
            (Some(x), Some(y)) => Some(x * y),
            _ => None,
        },
    }
}

enum Value {
    Scalar(f64),
    Op(ComplexMatrix),
}

fn eval(node: &Node, hint: Option<usize>, src: &str) -> Result<Value, String> {
    match node {
        Node::Num(v) => Ok(Value::Scalar(*v)),
        Node::Name(name) => {
            let dim = hint.or_else(|| natural_dim(name)).ok_or_else(|| {
                format!("cannot infer the dimension of `{name}` in `{src}`")
            })?;
            let op = named_operator(name, dim).map_err(|e| format!("{e} in `{src}`"))?;
            Ok(Value::Op(op.matrix().clone()))
        }
        Node::Neg(a) => Ok(match eval(a, hint, src)? {
            Value::Scalar(v) => Value::Scalar(-v),
            Value::Op(m) => Value::Op(m.scaled(C64::new(-1.0, 0.0))),
        }),
        Node::Add(a, b) | Node::Sub(a, b) => {
            let sign = if matches!(node, Node::Add(..)) { 1.0 } else { -1.0 };
            match (eval(a, hint, src)?, eval(b, hint, src)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + sign * y)),
                (Value::Op(x), Value::Op(y)) => x
                    .add(&y.scaled(C64::new(sign, 0.0)))
                    .map(Value::Op)
                    .map_err(|e| format!("{e} in `{src}`")),
                _ => Err(format!("cannot mix scalars and operators in a sum in `{src}`")),
            }
        }
        Node::Mul(a, b) => match (eval(a, hint, src)?, eval(b, hint, src)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
            (Value::Scalar(x), Value::Op(m)) | (Value::Op(m), Value::Scalar(x)) => {
                Ok(Value::Op(m.scaled(C64::new(x, 0.0))))
            }
            (Value::Op(_), Value::Op(_)) => Err(format!(
                "operator products are not part of the language; `*` takes a scalar factor in `{src}`"
            )),
        },
        Node::Kron(a, b) => {
            let (da, db) = match (intrinsic_dim(a), intrinsic_dim(b), hint) {
                (Some(x), Some(y), _) => (x, y),
                (Some(x), None, Some(h)) if h % x == 0 => (x, h / x),
                (None, Some(y), Some(h)) if h % y == 0 => (h / y, y),
                _ => {
                    return Err(format!(
                        "cannot infer operand dimensions for kron in `{src}`"
                    ))
                }
            };
            if let Some(h) = hint {
                if h != da * db {
                    return Err(format!(
                        "kron produces dim {} where dim {h} is needed in `{src}`",
                        da * db
                    ));
                }
            }
            match (eval(a, Some(da), src)?, eval(b, Some(db), src)?) {
                (Value::Op(ma), Value::Op(mb)) => Ok(Value::Op(kron(&ma, &mb))),
                _ => Err(format!("kron expects operator arguments in `{src}`")),
            }
        }
    }
}
