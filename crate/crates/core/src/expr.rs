//! Text syntax for [`RingSpec`].
//!
//! ```text
//! spec := prod
//! prod := atom { "x" atom }
//! atom := "Z" nat | "M" nat "(" spec ")" | "nilquo(" spec ")" | "(" spec ")"
//! nat  := nonzero digit { digit }
//! ```
//!
//! Keywords are case-sensitive. Whitespace is allowed around `x` and around
//! parentheses. Products associate to the left.

use std::fmt;

use crate::spec::RingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// Well-formed text describing an impossible ring (zero modulus or size).
    InvalidSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input. Always `< input.len()` for non-empty input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::InvalidSpec => "invalid spec",
        };
        write!(f, "{kind} at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse(text: &str) -> Result<RingSpec, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(ParseErrorKind::Syntax, p.pos, "unexpected trailing input"));
    }
    Ok(spec)
}

/// Canonical text for a spec. `parse(&format(s)) == Ok(s)` for every spec.
pub fn format(spec: &RingSpec) -> String {
    let mut out = String::new();
    write_spec(spec, &mut out);
    out
}

fn write_spec(spec: &RingSpec, out: &mut String) {
    match spec {
        RingSpec::Zn(n) => {
            out.push('Z');
            out.push_str(&n.to_string());
        }
        RingSpec::Matrix(k, base) => {
            out.push('M');
            out.push_str(&k.to_string());
            out.push('(');
            write_spec(base, out);
            out.push(')');
        }
        RingSpec::NilQuotient(base) => {
            out.push_str("nilquo(");
            write_spec(base, out);
            out.push(')');
        }
        RingSpec::Product(left, right) => {
            write_spec(left, out);
            out.push_str(" x ");
            if matches!(**right, RingSpec::Product(..)) {
                out.push('(');
                write_spec(right, out);
                out.push(')');
            } else {
                write_spec(right, out);
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind, at: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            offset: at.min(self.src.len().saturating_sub(1)),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(
                ParseErrorKind::Syntax,
                self.pos,
                format!("expected '{}'", byte as char),
            ))
        }
    }

    fn spec(&mut self) -> Result<RingSpec, ParseError> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'x') {
                return Ok(acc);
            }
            self.pos += 1;
            let rhs = self.atom()?;
            acc = RingSpec::product(acc, rhs);
        }
    }

    fn atom(&mut self) -> Result<RingSpec, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'Z') => {
                self.pos += 1;
                let n = self.nat("modulus")?;
                Ok(RingSpec::Zn(n))
            }
            Some(b'M') => {
                self.pos += 1;
                let start = self.pos;
                let k = self.nat("matrix size")?;
                let k = u32::try_from(k).map_err(|_| {
                    self.error(ParseErrorKind::InvalidSpec, start, "matrix size is too large")
                })?;
                self.expect(b'(')?;
                let base = self.spec()?;
                self.expect(b')')?;
                Ok(RingSpec::matrix(k, base))
            }
            Some(b'n') => {
                const KEYWORD: &[u8] = b"nilquo(";
                if !self.src[self.pos..].starts_with(KEYWORD) {
                    return Err(self.error(ParseErrorKind::Syntax, self.pos, "expected 'nilquo('"));
                }
                self.pos += KEYWORD.len();
                let base = self.spec()?;
                self.expect(b')')?;
                Ok(RingSpec::nil_quotient(base))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.spec()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(_) => Err(self.error(
                ParseErrorKind::Syntax,
                self.pos,
                "expected 'Z', 'M', 'nilquo(' or '('",
            )),
            None => Err(self.error(
                ParseErrorKind::Syntax,
                self.pos,
                "unexpected end of input, expected a ring",
            )),
        }
    }

    fn nat(&mut self, what: &str) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return Err(self.error(ParseErrorKind::Syntax, start, format!("expected {what}")));
        }
        if digits.iter().all(|&d| d == b'0') {
            return Err(self.error(
                ParseErrorKind::InvalidSpec,
                start,
                format!("{what} must be positive"),
            ));
        }
        if digits[0] == b'0' {
            return Err(self.error(ParseErrorKind::Syntax, start, "leading zero in number"));
        }
        // digits are ASCII, so this cannot fail on encoding
        std::str::from_utf8(digits)
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| {
                self.error(ParseErrorKind::InvalidSpec, start, format!("{what} is too large"))
            })
    }
}
