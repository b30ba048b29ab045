//! Recursive-descent parser for polynomial expressions in `x`, `y`, `t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' nat)?
//! base   := number | 'x' | 'y' | 't' | '(' expr ')'
//! number := digits ('.' digits)? | digits '/' digits
//! ```
//!
//! Unary minus applies to a whole power, so `-x^2` is `-(x^2)`. Juxtaposition
//! is rejected: `x y` and `2x` are errors.

use std::fmt;

use num::{BigInt, Zero};

use crate::poly::{MPoly, Rat, Var};

const MAX_EXPONENT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// The offending source line.
    pub source_line: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "syntax error at line {}, column {}: {}", self.line, self.column, self.message)?;
        writeln!(f, "  {}", self.source_line)?;
        write!(f, "  {}^", " ".repeat(self.column.saturating_sub(1)))
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_) => "a number".into(),
            Tok::Ident(s) => format!("'{}'", s),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_base(&self) -> bool {
        matches!(self, Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn digits_value(s: &str) -> BigInt {
    s.parse().unwrap_or_else(|_| BigInt::zero())
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, (String, usize)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let int_end = digits_end(i);
                let mut value = Rat::from_integer(digits_value(&text[i..int_end]));
                let mut end = int_end;
                if end < bytes.len() && bytes[end] == b'.' {
                    let frac_end = digits_end(end + 1);
                    if frac_end == end + 1 && int_end == i {
                        return Err(("expected digits".into(), i));
                    }
                    let frac = &text[end + 1..frac_end];
                    let scale = num::pow::pow(BigInt::from(10), frac.len());
                    value += Rat::new(digits_value(frac), scale);
                    end = frac_end;
                } else if end < bytes.len() && bytes[end] == b'/' {
                    let den_end = digits_end(end + 1);
                    if den_end == end + 1 {
                        return Err(("division is only allowed between integer literals".into(), end));
                    }
                    let den = digits_value(&text[end + 1..den_end]);
                    if den.is_zero() {
                        return Err(("zero denominator".into(), end + 1));
                    }
                    value = Rat::new(value.to_integer(), den);
                    end = den_end;
                }
                i = end;
                out.push((Tok::Num(value), start));
                continue;
            }
            b'/' => return Err(("division is only allowed between integer literals".into(), i)),
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                i = j;
                out.push((Tok::Ident(text[start..j].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err((format!("unexpected character '{}'", ch), i));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

fn error_at(text: &str, offset: usize, message: String) -> ParseError {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |p| p + 1);
    let column = before[line_start..].chars().count() + 1;
    let source_line = text[line_start..].lines().next().unwrap_or("").to_string();
    ParseError { message, line, column, source_line }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn fail<T>(&self, message: String) -> Result<T, ParseError> {
        Err(error_at(self.text, self.offset(), message))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                t if t.starts_base() => {
                    return self.fail("implicit multiplication is not supported; write '*'".into());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(n) if n.is_integer() && n >= Rat::zero() => {
                let e = n.to_integer();
                if e > BigInt::from(MAX_EXPONENT) {
                    return self.fail(format!("exponent larger than {}", MAX_EXPONENT));
                }
                self.bump();
                let e: u32 = e.try_into().unwrap_or(0);
                Ok(base.pow(e))
            }
            t => self.fail(format!(
                "exponent must be a non-negative integer literal, found {}",
                t.describe()
            )),
        }
    }

    fn base(&mut self) -> Result<MPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(MPoly::constant(n))
            }
            Tok::Ident(name) => {
                let var = match name.as_str() {
                    "x" => Var::X,
                    "y" => Var::Y,
                    "t" => Var::T,
                    _ => return self.fail(format!("unknown identifier '{}'; use x, y or t", name)),
                };
                self.bump();
                Ok(MPoly::var(var))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(format!("expected ')', found {}", self.peek().describe()));
                }
                self.bump();
                Ok(inner)
            }
            t => self.fail(format!("expected a number, variable or '(', found {}", t.describe())),
        }
    }
}

/// Parses a polynomial in `x`, `y` and `t`.
pub fn parse(text: &str) -> Result<MPoly, ParseError> {
    let toks = lex(text).map_err(|(m, at)| error_at(text, at, m))?;
    let mut p = Parser { text, toks, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => p.fail("unmatched ')'".into()),
        t => p.fail(format!("unexpected {}", t.describe())),
    }
}

/// Parses a rational number: an integer, a decimal, `a/b` or `a/b^e`, with an
/// optional sign.
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let trimmed = text.trim();
    let (neg, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    let bad = |m: &str| error_at(text, 0, m.to_string());
    let value = if let Some((num, den)) = body.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad("expected an integer numerator"))?;
        let den = match den.split_once('^') {
            Some((b, e)) => {
                let b: BigInt = b.trim().parse().map_err(|_| bad("expected an integer base"))?;
                let e: usize = e.trim().parse().map_err(|_| bad("expected an integer exponent"))?;
                if e > MAX_EXPONENT as usize {
                    return Err(bad("exponent too large"));
                }
                num::pow::pow(b, e)
            }
            None => den.trim().parse().map_err(|_| bad("expected an integer denominator"))?,
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Rat::new(num, den)
    } else {
        let p = parse(body)?;
        match p.as_constant() {
            Some(c) if p.num_terms() <= 1 => c,
            _ => return Err(bad("expected a rational number")),
        }
    };
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use num::One;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }

    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }

    #[test]
    fn parses_example_family() {
        let p = parse("x*(x^2*y + t*x + 1)").unwrap();
        let t = MPoly::var(Var::T);
        let expected = x().pow(3).mul(&y()).add(&t.mul(&x().pow(2))).add(&x());
        assert_eq!(p, expected);
    }

    #[test]
    fn sum_of_squares() {
        assert_eq!(parse("x^2 + y^2").unwrap(), x().pow(2).add(&y().pow(2)));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse("-x^2").unwrap(), x().pow(2).neg());
        assert_eq!(parse("2*-x").unwrap(), x().scale(&rat(-2, 1)));
        assert_eq!(parse("--y").unwrap(), y());
    }

    #[test]
    fn literals() {
        assert_eq!(parse("3/4*x").unwrap(), x().scale(&rat(3, 4)));
        assert_eq!(parse("0.25").unwrap(), MPoly::constant(rat(1, 4)));
        assert_eq!(parse("1.5*y").unwrap(), y().scale(&rat(3, 2)));
    }

    #[test]
    fn rejects_juxtaposition_with_caret() {
        let e = parse("x y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(e.message.contains("implicit multiplication"));
        assert!(e.to_string().ends_with("\n    ^"));
        assert!(parse("2x").is_err());
        assert!(parse("(x+1)(x-1)").is_err());
    }

    #[test]
    fn reports_line_and_column() {
        let e = parse("x +\n y^z").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
        let e = parse("x + w").unwrap_err();
        assert!(e.message.contains("unknown identifier"));
        assert!(parse("x^-1").is_err());
        assert!(parse("x/2").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("x)").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/10^16").unwrap(), Rat::new(BigInt::one(), num::pow::pow(BigInt::from(10), 16)));
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
