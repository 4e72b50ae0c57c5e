//! The text format for rule sets and signed sums.
//!
//! ```text
//! # comment
//! op m 2            (optional; the default signature is {m/2, a/1})
//! order lex_ma      (optional)
//! m a 1 m 2 3 -> m m 1 2 a 3
//! m 1 m 2 3 -> m m 1 2 3 - 1/2 * m m 1 3 2
//! ```

use std::fmt;

use crate::linear::LinComb;
use crate::scalar::{Scalar, ScalarError};
use crate::term::{Context, Signature, TermError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ParseError>,
    },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("expected `<lhs> -> <rhs>`")]
    MissingArrow,
    #[error("empty summand in `{0}`")]
    EmptySummand(String),
    #[error("summands have different arities ({0} and {1})")]
    MixedArity(usize, usize),
    #[error("`op` declarations must precede rules")]
    LateDeclaration,
    #[error("duplicate `order` directive")]
    DuplicateOrder,
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::AtLine { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// A rule as written: not yet oriented or checked against an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRule {
    pub lhs: Context,
    pub rhs: LinComb,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleFile {
    pub signature: Signature,
    pub order: Option<String>,
    pub rules: Vec<RawRule>,
}

impl RuleFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut sig: Option<Signature> = None;
        let mut order = None;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let at = |e: ParseError| ParseError::AtLine {
                line,
                source: Box::new(e),
            };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let first = body.split_whitespace().next().unwrap_or("");
            if first == "op" && !body.contains("->") {
                if !rules.is_empty() {
                    return Err(at(ParseError::LateDeclaration));
                }
                sig.get_or_insert_with(Signature::new)
                    .parse_op_line(body)
                    .map_err(|e| at(e.into()))?;
            } else if first == "order" && !body.contains("->") {
                if order.is_some() {
                    return Err(at(ParseError::DuplicateOrder));
                }
                order = Some(body["order".len()..].trim().to_string());
            } else {
                let sig = sig.get_or_insert_with(Signature::hom);
                let (lhs, rhs) = parse_rule(body, sig).map_err(at)?;
                rules.push(RawRule { lhs, rhs, line });
            }
        }
        Ok(RuleFile {
            signature: sig.unwrap_or_else(Signature::hom),
            order,
            rules,
        })
    }
}

impl fmt::Display for RuleFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.signature != Signature::hom() {
            write!(f, "{}", self.signature)?;
        }
        if let Some(o) = &self.order {
            writeln!(f, "order {o}")?;
        }
        for r in &self.rules {
            writeln!(
                f,
                "{} -> {}",
                r.lhs.show(&self.signature),
                r.rhs.show(&self.signature)
            )?;
        }
        Ok(())
    }
}

pub fn parse_rule(line: &str, sig: &Signature) -> Result<(Context, LinComb), ParseError> {
    let (l, r) = line.split_once("->").ok_or(ParseError::MissingArrow)?;
    let lhs = Context::parse(l, sig)?;
    let rhs = if r.trim() == "0" {
        LinComb::zero(lhs.arity())
    } else {
        parse_sum(r, sig)?
    };
    if rhs.arity() != lhs.arity() {
        return Err(ParseError::MixedArity(lhs.arity(), rhs.arity()));
    }
    Ok((lhs, rhs))
}

/// Parses `[c *] <polish> { (+|-) [c *] <polish> }`. Scalars containing a
/// top-level `+` or `-` must be parenthesized.
pub fn parse_sum(text: &str, sig: &Signature) -> Result<LinComb, ParseError> {
    let mut summands: Vec<(bool, &str)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && !prev_is_caret(bytes, i) => {
                let piece = &text[start..i];
                if !piece.trim().is_empty() {
                    summands.push((negative, piece));
                    negative = b == b'-';
                } else if summands.is_empty() && start == 0 {
                    // Leading sign.
                    negative ^= b == b'-';
                } else {
                    return Err(ParseError::EmptySummand(text.trim().to_string()));
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = &text[start..];
    if last.trim().is_empty() {
        return Err(ParseError::EmptySummand(text.trim().to_string()));
    }
    summands.push((negative, last));

    let mut out: Option<LinComb> = None;
    for (neg, piece) in summands {
        let (coeff, word) = split_coefficient(piece);
        let mut c = match coeff {
            Some(c) => Scalar::parse(c)?,
            None => Scalar::one(),
        };
        if neg {
            c = -c;
        }
        let m = Context::parse(word, sig)?;
        let acc = out.get_or_insert_with(|| LinComb::zero(m.arity()));
        if acc.arity() != m.arity() {
            return Err(ParseError::MixedArity(acc.arity(), m.arity()));
        }
        acc.add_term(c, m);
    }
    Ok(out.expect("at least one summand"))
}

fn prev_is_caret(bytes: &[u8], i: usize) -> bool {
    bytes[..i]
        .iter()
        .rev()
        .find(|b| !b.is_ascii_whitespace())
        .is_some_and(|&b| b == b'^' || b == b'*' || b == b'/')
}

/// Splits at the last top-level `*`.
fn split_coefficient(piece: &str) -> (Option<&str>, &str) {
    let mut depth = 0i32;
    let mut cut = None;
    for (i, b) in piece.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => cut = Some(i),
            _ => {}
        }
    }
    match cut {
        Some(i) => (Some(&piece[..i]), &piece[i + 1..]),
        None => (None, piece),
    }
}
