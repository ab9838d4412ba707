//! Text syntax for polynomials: `3/2*x1^2*x2 - x3 + 1`.
//!
//! Coefficients are integers or fractions `p/q`; `*` between factors is
//! optional, so `3x1^2` and `3*x1^2` mean the same thing.

use std::str::FromStr;

use num_traits::{One, Zero};

use super::{MultiPoly, PolyError, Scalar};

/// How identifiers map to variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarNames {
    /// `x1, …, xn` (1-based in text, 0-based internally).
    Indexed { prefix: String, nvars: usize },
    /// A single named variable such as `t`.
    Single(String),
}

impl VarNames {
    pub fn indexed(nvars: usize) -> Self {
        VarNames::Indexed { prefix: "x".into(), nvars }
    }

    pub fn nvars(&self) -> usize {
        match self {
            VarNames::Indexed { nvars, .. } => *nvars,
            VarNames::Single(_) => 1,
        }
    }

    fn resolve(&self, ident: &str) -> Option<usize> {
        match self {
            VarNames::Indexed { prefix, nvars } => {
                let idx: usize = ident.strip_prefix(prefix.as_str())?.parse().ok()?;
                (1..=*nvars).contains(&idx).then(|| idx - 1)
            }
            VarNames::Single(name) => (ident == name).then_some(0),
        }
    }

    pub fn name(&self, idx: usize) -> String {
        match self {
            VarNames::Indexed { prefix, .. } => format!("{prefix}{}", idx + 1),
            VarNames::Single(name) => name.clone(),
        }
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, PolyError> {
    let s = s.trim();
    let bad = |message: String| PolyError::Parse { column: 1, message };
    if s.is_empty() {
        return Err(bad("empty number".into()));
    }
    if let Some((_, den)) = s.split_once('/') {
        if den.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(bad(format!("zero denominator in `{s}`")));
        }
    }
    Scalar::from_str(s).map_err(|e| bad(format!("invalid rational `{s}`: {e}")))
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse { column: self.pos + 1, message: message.into() }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default()
    }

    fn number(&mut self) -> Result<Scalar, PolyError> {
        let num = self.take_while(|c| c.is_ascii_digit());
        let mut text = num.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.take_while(|c| c.is_ascii_digit());
            if den.is_empty() {
                return Err(self.err("expected denominator after `/`"));
            }
            text.push('/');
            text.push_str(den);
        }
        parse_scalar(&text).map_err(|_| self.err(format!("invalid number `{text}`")))
    }
}

/// Parses a polynomial over the variables described by `names`.
pub fn parse_poly(text: &str, names: &VarNames) -> Result<MultiPoly, PolyError> {
    let nvars = names.nvars();
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut out = MultiPoly::zero(nvars);
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            None if first => return Err(cur.err("empty polynomial")),
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                Scalar::one()
            }
            Some(b'-') => {
                cur.pos += 1;
                -Scalar::one()
            }
            Some(_) if first => Scalar::one(),
            Some(c) => return Err(cur.err(format!("expected `+` or `-`, found `{}`", c as char))),
        };
        first = false;
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        let mut factors = 0;
        loop {
            match cur.peek() {
                Some(b'*') if factors > 0 => {
                    cur.pos += 1;
                    if !matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                        return Err(cur.err("expected factor after `*`"));
                    }
                }
                Some(c) if c.is_ascii_digit() => {
                    coeff *= cur.number()?;
                    factors += 1;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = cur.pos;
                    let letters = cur.take_while(|c| c.is_ascii_alphabetic() || c == b'_');
                    let digits = cur.take_while(|c| c.is_ascii_digit());
                    let ident = format!("{letters}{digits}");
                    let idx = names.resolve(&ident).ok_or_else(|| PolyError::Parse {
                        column: start + 1,
                        message: format!("unknown variable `{ident}`"),
                    })?;
                    let mut e = 1u32;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        cur.skip_ws();
                        let digits = cur.take_while(|c| c.is_ascii_digit());
                        e = digits.parse().map_err(|_| cur.err("expected exponent after `^`"))?;
                    }
                    exps[idx] += e;
                    factors += 1;
                }
                _ => break,
            }
        }
        if factors == 0 {
            return Err(cur.err("expected a term"));
        }
        if !coeff.is_zero() {
            out = &out + &MultiPoly::from_terms(nvars, [(coeff, exps)]);
        }
    }
    Ok(out)
}
