use std::fmt;

use atomspec::gring::{GradedRing, Monomial};

/// A syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

fn error(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Parses `name`, `name^k` factors joined by `*`; `1` is the unit monomial.
pub fn parse_monomial(ring: &GradedRing, text: &str) -> Result<Monomial, ParseError> {
    let mut exps = vec![0u32; ring.nvars()];
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    let pos = |i: usize| bytes.get(i).map_or(text.len(), |b| b.0);
    loop {
        skip_ws(&mut i);
        let start = i;
        while i < bytes.len() && is_name_char(bytes[i].1) {
            i += 1;
        }
        if start == i {
            return Err(error(pos(start), "expected a variable name or 1"));
        }
        let name: String = bytes[start..i].iter().map(|b| b.1).collect();
        let var = if name == "1" {
            None
        } else {
            Some(
                ring.var_index(&name)
                    .ok_or_else(|| error(pos(start), format!("unknown variable {name:?}")))?,
            )
        };
        skip_ws(&mut i);
        let mut k = 1u32;
        if i < bytes.len() && bytes[i].1 == '^' {
            i += 1;
            skip_ws(&mut i);
            let digits_start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[digits_start..i].iter().map(|b| b.1).collect();
            k = digits
                .parse()
                .map_err(|_| error(pos(digits_start), "malformed exponent"))?;
            if var.is_none() {
                return Err(error(pos(start), "the unit takes no exponent"));
            }
            skip_ws(&mut i);
        }
        if let Some(v) = var {
            exps[v] = exps[v]
                .checked_add(k)
                .ok_or_else(|| error(pos(start), "exponent overflow"))?;
        }
        if i == bytes.len() {
            return Ok(Monomial::new(exps));
        }
        if bytes[i].1 != '*' {
            return Err(error(pos(i), format!("unexpected {:?}", bytes[i].1)));
        }
        i += 1;
    }
}
