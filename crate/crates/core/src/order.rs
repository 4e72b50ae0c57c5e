//! Term orders on monomials of equal arity.

use std::fmt;

use crate::term::{Context, Signature, Token};

/// Outcome of comparing two monomials under a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("unknown term order `{0}` (expected lex_ma, right_comb, lex:<ops>, deglex:<ops>)")]
    UnknownOrder(String),
    #[error("order `{order}` does not rank symbol `{symbol}`")]
    UnrankedSymbol { order: String, symbol: String },
    #[error("order `{order}` names unknown symbol `{symbol}`")]
    UnknownSymbol { order: String, symbol: String },
}

/// A term order. Precedence tables map symbol id to rank, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Word-lexicographic on Polish words; boxes are unrelated to everything.
    Lex { ranks: Vec<u32>, name: String },
    /// Vertex count first, then `Lex`.
    DegLex { ranks: Vec<u32>, name: String },
    /// Componentwise comparison of the right-depth vectors `h_i`.
    RightComb,
}

const OP_BASE: u64 = 1 << 32;

impl TermOrder {
    /// Lexicographic with `m < a` over the hom signature.
    pub fn lex_ma() -> Self {
        TermOrder::Lex {
            ranks: vec![0, 1],
            name: "lex_ma".into(),
        }
    }

    pub fn right_comb() -> Self {
        TermOrder::RightComb
    }

    /// Accepts `lex_ma`, `right_comb`, `lex:s1,s2,..` and `deglex:s1,s2,..`
    /// (symbols listed from smallest to largest; every symbol of `sig` must
    /// appear).
    pub fn parse(text: &str, sig: &Signature) -> Result<Self, OrderError> {
        let text = text.trim();
        match text {
            "lex_ma" => return Self::table(text, &["m", "a"], sig, false),
            "right_comb" => return Ok(TermOrder::RightComb),
            _ => {}
        }
        let (kind, list) = text
            .split_once(':')
            .ok_or_else(|| OrderError::UnknownOrder(text.to_string()))?;
        let names: Vec<&str> = list.split(',').map(str::trim).collect();
        match kind {
            "lex" => Self::table(text, &names, sig, false),
            "deglex" => Self::table(text, &names, sig, true),
            _ => Err(OrderError::UnknownOrder(text.to_string())),
        }
    }

    /// Builds a precedence order; `names` runs from smallest to largest.
    pub fn table(
        name: &str,
        names: &[&str],
        sig: &Signature,
        graded: bool,
    ) -> Result<Self, OrderError> {
        let mut ranks = vec![u32::MAX; sig.len()];
        for (r, n) in names.iter().enumerate() {
            let sym = sig.lookup(n).ok_or_else(|| OrderError::UnknownSymbol {
                order: name.to_string(),
                symbol: n.to_string(),
            })?;
            ranks[sym.id()] = r as u32;
        }
        if let Some(missing) = sig.symbols().find(|s| ranks[s.id()] == u32::MAX) {
            return Err(OrderError::UnrankedSymbol {
                order: name.to_string(),
                symbol: sig.name(missing).to_string(),
            });
        }
        let name = name.to_string();
        Ok(if graded {
            TermOrder::DegLex { ranks, name }
        } else {
            TermOrder::Lex { ranks, name }
        })
    }

    pub fn name(&self) -> &str {
        match self {
            TermOrder::Lex { name, .. } | TermOrder::DegLex { name, .. } => name,
            TermOrder::RightComb => "right_comb",
        }
    }

    pub fn compare(&self, x: &Context, y: &Context) -> Cmp {
        if x == y {
            return Cmp::Equal;
        }
        match self {
            TermOrder::Lex { ranks, .. } => lex(ranks, x, y),
            TermOrder::DegLex { ranks, .. } => match x.order().cmp(&y.order()) {
                std::cmp::Ordering::Less => Cmp::Less,
                std::cmp::Ordering::Greater => Cmp::Greater,
                std::cmp::Ordering::Equal => lex(ranks, x, y),
            },
            TermOrder::RightComb => {
                let (hx, hy) = (right_depths(x), right_depths(y));
                if hx.len() != hy.len() {
                    return Cmp::Incomparable;
                }
                let ge = hx.iter().zip(&hy).all(|(a, b)| a >= b);
                let le = hx.iter().zip(&hy).all(|(a, b)| a <= b);
                match (ge, le) {
                    (true, false) => Cmp::Greater,
                    (false, true) => Cmp::Less,
                    _ => Cmp::Incomparable,
                }
            }
        }
    }

    /// A sort key extending the order to a total one: whenever
    /// `compare(x, y) == Greater`, `key(x) > key(y)`.
    pub fn key(&self, x: &Context) -> Vec<u64> {
        match self {
            TermOrder::Lex { ranks, .. } => word_key(ranks, x, Vec::with_capacity(x.len())),
            TermOrder::DegLex { ranks, .. } => {
                let mut k = Vec::with_capacity(x.len() + 1);
                k.push(x.order() as u64);
                word_key(ranks, x, k)
            }
            TermOrder::RightComb => {
                let h = right_depths(x);
                let mut k = Vec::with_capacity(1 + h.len() + x.len());
                k.push(h.iter().map(|&v| v as u64).sum());
                k.extend(h.iter().map(|&v| v as u64));
                k.extend(x.word().iter().map(|t| match *t {
                    Token::Box(i) => i as u64,
                    Token::Op(s) => OP_BASE + s.id() as u64,
                }));
                k
            }
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn lex(ranks: &[u32], x: &Context, y: &Context) -> Cmp {
    for (a, b) in x.word().iter().zip(y.word()) {
        if a == b {
            continue;
        }
        return match (a, b) {
            (Token::Op(s), Token::Op(t)) => {
                if ranks[s.id()] < ranks[t.id()] {
                    Cmp::Less
                } else {
                    Cmp::Greater
                }
            }
            _ => Cmp::Incomparable,
        };
    }
    Cmp::Incomparable
}

fn word_key(ranks: &[u32], x: &Context, mut k: Vec<u64>) -> Vec<u64> {
    k.extend(x.word().iter().map(|t| match *t {
        Token::Box(i) => i as u64,
        Token::Op(s) => OP_BASE + ranks[s.id()] as u64,
    }));
    k
}

/// `h[i-1]` counts the binary vertices on the path from box `i` to the root
/// whose second child lies on that path.
pub fn right_depths(x: &Context) -> Vec<u32> {
    let mut h = vec![0u32; x.arity()];
    // Open vertices: (arity, index of the next child, depth).
    let mut stack: Vec<(usize, usize, u32)> = Vec::new();
    for t in x.word() {
        let depth = match stack.last_mut() {
            None => 0,
            Some(parent) => {
                let child = parent.1;
                parent.1 += 1;
                let d = parent.2 + u32::from(parent.0 == 2 && child == 1);
                if parent.1 == parent.0 {
                    stack.pop();
                }
                d
            }
        };
        match *t {
            Token::Box(i) => h[i as usize - 1] = depth,
            Token::Op(s) if s.arity() > 0 => stack.push((s.arity(), 0, depth)),
            Token::Op(_) => {}
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Context {
        Context::parse(s, &Signature::hom()).unwrap()
    }

    #[test]
    fn lex_examples() {
        let o = TermOrder::lex_ma();
        assert_eq!(
            o.compare(&p("m a 1 m 2 3"), &p("m m 1 2 a 3")),
            Cmp::Greater
        );
        assert_eq!(o.compare(&p("m m 1 2 a 3"), &p("m a 1 m 2 3")), Cmp::Less);
        assert_eq!(o.compare(&p("m a 1 m 2 3"), &p("m a 1 m 2 3")), Cmp::Equal);
        assert_eq!(
            o.compare(&p("m m 1 a 2 a m 3 4"), &p("m m 1 m 2 3 a a 4")),
            Cmp::Greater
        );
        assert_eq!(o.compare(&p("m 1 2"), &p("m 2 1")), Cmp::Incomparable);
        assert_eq!(o.compare(&p("m 1 a 2"), &p("m a 1 2")), Cmp::Incomparable);
    }

    #[test]
    fn right_depth_examples() {
        assert_eq!(right_depths(&p("m 1 m 2 3")), vec![0, 1, 2]);
        assert_eq!(right_depths(&p("m m 1 2 3")), vec![0, 1, 1]);
        assert_eq!(right_depths(&p("m m 1 a 2 a m 3 4")), vec![0, 1, 1, 2]);
        assert_eq!(right_depths(&p("m m 1 m 2 3 a a 4")), vec![0, 1, 2, 1]);
        assert_eq!(right_depths(&p("m 2 1")), vec![1, 0]);
    }

    #[test]
    fn right_comb_examples() {
        let o = TermOrder::right_comb();
        assert_eq!(o.compare(&p("m 1 m 2 3"), &p("m m 1 2 3")), Cmp::Greater);
        assert_eq!(o.compare(&p("m 1 m 2 3"), &p("m 1 m 2 3")), Cmp::Equal);
        assert_eq!(
            o.compare(&p("m m 1 a 2 a m 3 4"), &p("m m 1 m 2 3 a a 4")),
            Cmp::Incomparable
        );
    }

    #[test]
    fn parse_tables() {
        let mut sig = Signature::hom();
        sig.add("e", 0).unwrap();
        assert!(TermOrder::parse("lex_ma", &sig).is_err());
        let o = TermOrder::parse("deglex:m,a,e", &sig).unwrap();
        let e = Context::parse("e", &sig).unwrap();
        let ae = Context::parse("a e", &sig).unwrap();
        assert_eq!(o.compare(&ae, &e), Cmp::Greater);
        assert!(TermOrder::parse("lex:m,x", &sig).is_err());
        assert!(TermOrder::parse("bogus", &sig).is_err());
    }

    #[test]
    fn keys_extend_the_order() {
        let orders = [TermOrder::lex_ma(), TermOrder::right_comb()];
        for o in &orders {
            for (k, l) in [(0, 3), (1, 2), (2, 2), (2, 3)] {
                let v = crate::term::enumerate_plane(k, l).unwrap();
                for x in &v {
                    for y in &v {
                        if o.compare(x, y) == Cmp::Greater {
                            assert!(o.key(x) > o.key(y));
                        }
                    }
                }
            }
        }
    }
}
