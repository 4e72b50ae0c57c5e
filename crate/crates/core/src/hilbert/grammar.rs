use std::collections::VecDeque;
use std::fmt;

use crate::term::{Context, Signature, Token};

use super::HilbertError;

/// State whose language is the set of reducible plane monomials.
pub const REDUCIBLE: usize = 0;
/// State whose language is every plane monomial.
pub const ANY: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Production {
    Leaf,
    A(usize),
    M(usize, usize),
}

/// A top-down nondeterministic tree grammar over `{m/2, a/1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGrammar {
    productions: Vec<Vec<Production>>,
}

impl TreeGrammar {
    pub fn len(&self) -> usize {
        self.productions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.productions.is_empty()
    }

    pub fn productions(&self, state: usize) -> &[Production] {
        &self.productions[state]
    }

    /// Top-down membership test; used as an oracle against the automaton.
    pub fn generates(&self, state: usize, t: &Context) -> bool {
        self.generates_at(state, t.word(), 0)
    }

    fn generates_at(&self, state: usize, w: &[Token], pos: usize) -> bool {
        let end = crate::term::subterm_end(w, pos);
        self.productions[state].iter().any(|p| match (*p, w[pos]) {
            (Production::Leaf, Token::Box(_)) => true,
            (Production::A(q), Token::Op(s)) if s.arity() == 1 => self.generates_at(q, w, pos + 1),
            (Production::M(q, r), Token::Op(s)) if s.arity() == 2 => {
                let mid = crate::term::subterm_end(w, pos + 1);
                debug_assert!(mid < end);
                self.generates_at(q, w, pos + 1) && self.generates_at(r, w, mid)
            }
            _ => false,
        })
    }
}

impl fmt::Display for TreeGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, prods) in self.productions.iter().enumerate() {
            write!(f, "L{q} =")?;
            if prods.is_empty() {
                f.write_str(" {}")?;
            }
            for (i, p) in prods.iter().enumerate() {
                f.write_str(if i == 0 { " " } else { " | " })?;
                match p {
                    Production::Leaf => f.write_str("id")?,
                    Production::A(c) => write!(f, "a(L{c})")?,
                    Production::M(c, d) => write!(f, "m(L{c}, L{d})")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks that every symbol of `sig` is unary or binary and that there is at
/// most one of each.
pub(crate) fn check_signature(sig: &Signature) -> Result<(), HilbertError> {
    let mut seen = [false; 3];
    for s in sig.symbols() {
        let k = s.arity();
        if !(1..=2).contains(&k) || seen[k] {
            return Err(HilbertError::UnsupportedSymbol(sig.name(s).to_string()));
        }
        seen[k] = true;
    }
    Ok(())
}

/// The grammar whose state `REDUCIBLE` generates exactly the plane monomials
/// containing an occurrence of some `lhs`.
pub fn grammar_from_rules<'a>(
    sig: &Signature,
    lhss: impl IntoIterator<Item = &'a Context>,
) -> Result<TreeGrammar, HilbertError> {
    check_signature(sig)?;
    let mut productions = vec![Vec::new(), Vec::new()];
    productions[ANY] = vec![
        Production::M(ANY, ANY),
        Production::A(ANY),
        Production::Leaf,
    ];
    let mut lhss = lhss.into_iter().peekable();
    if lhss.peek().is_some() {
        productions[REDUCIBLE] = vec![
            Production::A(REDUCIBLE),
            Production::M(REDUCIBLE, ANY),
            Production::M(ANY, REDUCIBLE),
        ];
    }
    for lhs in lhss {
        if !lhs.is_plane() {
            return Err(HilbertError::NotPlane(lhs.clone()));
        }
        let w = lhs.word();
        if w[0].is_box() {
            return Err(HilbertError::TrivialLhs);
        }
        // (state, position of the vertex it describes)
        let mut queue = VecDeque::from([(REDUCIBLE, 0usize)]);
        while let Some((state, pos)) = queue.pop_front() {
            let mut child_state = |p: usize, productions: &mut Vec<Vec<Production>>| {
                if w[p].is_box() {
                    ANY
                } else {
                    productions.push(Vec::new());
                    let q = productions.len() - 1;
                    queue.push_back((q, p));
                    q
                }
            };
            let prod = match w[pos] {
                Token::Op(s) if s.arity() == 1 => {
                    Production::A(child_state(pos + 1, &mut productions))
                }
                Token::Op(s) if s.arity() == 2 => {
                    let mid = crate::term::subterm_end(w, pos + 1);
                    let l = child_state(pos + 1, &mut productions);
                    let r = child_state(mid, &mut productions);
                    Production::M(l, r)
                }
                _ => unreachable!("signature checked"),
            };
            productions[state].push(prod);
        }
    }
    Ok(TreeGrammar { productions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Context {
        Context::parse(s, &Signature::hom()).unwrap()
    }

    #[test]
    fn single_rule_grammar() {
        let g = grammar_from_rules(&Signature::hom(), [&p("m a 1 m 2 3")]).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.productions(2), &[Production::A(ANY)]);
        assert_eq!(g.productions(3), &[Production::M(ANY, ANY)]);
        assert!(g.productions(REDUCIBLE).contains(&Production::M(2, 3)));
    }

    #[test]
    fn two_rule_grammar_matches_hand_system() {
        let lhs = [p("m a 1 m 2 3"), p("m m 1 a 2 a m 3 4")];
        let g = grammar_from_rules(&Signature::hom(), &lhs).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g.productions(REDUCIBLE).len(), 5);
        assert_eq!(g.productions(REDUCIBLE)[4], Production::M(4, 5));
        assert_eq!(g.productions(4), &[Production::M(ANY, 6)]);
        assert_eq!(g.productions(5), &[Production::A(7)]);
        assert_eq!(g.productions(6), &[Production::A(ANY)]);
        assert_eq!(g.productions(7), &[Production::M(ANY, ANY)]);
    }

    #[test]
    fn empty_rule_set() {
        let g = grammar_from_rules(&Signature::hom(), []).unwrap();
        assert!(g.productions(REDUCIBLE).is_empty());
        assert!(!g.generates(REDUCIBLE, &p("m a 1 m 2 3")));
    }

    #[test]
    fn rejects_constants() {
        let mut sig = Signature::hom();
        sig.add("e", 0).unwrap();
        assert!(matches!(
            grammar_from_rules(&sig, []),
            Err(HilbertError::UnsupportedSymbol(_))
        ));
    }
}
