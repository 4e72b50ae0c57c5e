use std::fmt;

use super::{Permutation, Signature, Symbol, TermError};

/// One letter of a Polish word: an operation symbol or a numbered input box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Op(Symbol),
    /// Input box, numbered from 1.
    Box(u32),
}

impl Token {
    pub fn arity(self) -> usize {
        match self {
            Token::Op(s) => s.arity(),
            Token::Box(_) => 0,
        }
    }

    pub fn is_box(self) -> bool {
        matches!(self, Token::Box(_))
    }
}

/// An n-context: a well-formed left-Polish word in which the boxes
/// `1..=n` each occur exactly once.
///
/// Contexts are the monomials of the free operad; structural equality is
/// equality of the token sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    word: Vec<Token>,
    arity: u32,
}

/// Index one past the end of the subterm starting at `pos`.
pub(crate) fn subterm_end(word: &[Token], pos: usize) -> usize {
    let mut need = 1usize;
    let mut i = pos;
    while need > 0 {
        need = need - 1 + word[i].arity();
        i += 1;
    }
    i
}

fn check_word(word: &[Token]) -> Result<u32, TermError> {
    if word.is_empty() {
        return Err(TermError::Malformed {
            position: 0,
            reason: "empty word".into(),
        });
    }
    let mut need = 1usize;
    for (i, tok) in word.iter().enumerate() {
        if need == 0 {
            return Err(TermError::Malformed {
                position: i,
                reason: "trailing tokens after a complete term".into(),
            });
        }
        need = need - 1 + tok.arity();
    }
    if need != 0 {
        return Err(TermError::Malformed {
            position: word.len(),
            reason: format!("term is missing {need} argument(s)"),
        });
    }
    let boxes: Vec<u32> = word
        .iter()
        .filter_map(|t| match t {
            Token::Box(i) => Some(*i),
            Token::Op(_) => None,
        })
        .collect();
    let n = boxes.len() as u32;
    let mut seen = vec![false; boxes.len() + 1];
    for &b in &boxes {
        if b == 0 || b > n {
            return Err(TermError::MissingBox(
                (1..=n).find(|i| !boxes.contains(i)).unwrap_or(n),
            ));
        }
        if seen[b as usize] {
            return Err(TermError::DuplicateBox(b));
        }
        seen[b as usize] = true;
    }
    Ok(n)
}

impl Context {
    pub fn from_word(word: Vec<Token>) -> Result<Self, TermError> {
        let arity = check_word(&word)?;
        Ok(Context { word, arity })
    }

    /// Caller guarantees the word is a valid context of the given arity.
    pub(crate) fn from_word_unchecked(word: Vec<Token>, arity: u32) -> Self {
        debug_assert_eq!(check_word(&word).ok(), Some(arity), "invalid context word");
        Context { word, arity }
    }

    /// The identity element `1`.
    pub fn identity() -> Self {
        Context {
            word: vec![Token::Box(1)],
            arity: 1,
        }
    }

    /// Builds `sym(children...)` from its children, renumbering the boxes of
    /// later children after those of earlier ones.
    pub fn apply(sym: Symbol, children: &[Context]) -> Result<Self, TermError> {
        if children.len() != sym.arity() {
            return Err(TermError::ArityMismatch {
                expected: sym.arity(),
                found: children.len(),
            });
        }
        let mut word = vec![Token::Op(sym)];
        let mut offset = 0;
        for child in children {
            word.extend(child.word.iter().map(|t| match *t {
                Token::Box(i) => Token::Box(i + offset),
                op => op,
            }));
            offset += child.arity;
        }
        Ok(Context {
            word,
            arity: offset,
        })
    }

    /// Parses a whitespace-separated Polish word. Digits `1`-`9` are boxes,
    /// `[n]` is box `n`; every other token must be a symbol of `sig`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Self, TermError> {
        let mut word = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            word.push(parse_token(tok, i, sig)?);
        }
        Self::from_word(word)
    }

    pub fn word(&self) -> &[Token] {
        &self.word
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Number of vertices (non-box tokens).
    pub fn order(&self) -> usize {
        self.word.iter().filter(|t| !t.is_box()).count()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.len() == 1 && self.word[0].is_box()
    }

    pub fn subterm_end(&self, pos: usize) -> usize {
        subterm_end(&self.word, pos)
    }

    /// `ends[p]` is one past the end of the subterm rooted at token `p`.
    pub fn subterm_ends(&self) -> Vec<usize> {
        let n = self.word.len();
        let mut ends = vec![0; n];
        // Right-to-left: a node's subterm ends where its last child's does.
        for p in (0..n).rev() {
            let ar = self.word[p].arity();
            let mut end = p + 1;
            for _ in 0..ar {
                end = ends[end];
            }
            ends[p] = end;
        }
        ends
    }

    /// The subterm at `pos`, relabelled to a context preserving the relative
    /// order of its box labels.
    pub fn subterm(&self, pos: usize) -> Context {
        let end = self.subterm_end(pos);
        relabel_order_preserving(&self.word[pos..end])
    }

    /// Box labels in left-to-right order.
    pub fn leaves(&self) -> Vec<u32> {
        self.word
            .iter()
            .filter_map(|t| match t {
                Token::Box(i) => Some(*i),
                Token::Op(_) => None,
            })
            .collect()
    }

    /// Number of unary and binary vertices, `(k, l)`.
    pub fn grading(&self) -> (usize, usize) {
        let mut k = 0;
        let mut l = 0;
        for t in &self.word {
            match t.arity() {
                1 if !t.is_box() => k += 1,
                2 => l += 1,
                _ => {}
            }
        }
        (k, l)
    }

    pub fn uses_symbol(&self, sym: Symbol) -> bool {
        self.word.contains(&Token::Op(sym))
    }

    /// Operad composition `self ∘ inners[0] ⊗ … ⊗ inners[n-1]`.
    pub fn compose(&self, inners: &[Context]) -> Result<Context, TermError> {
        if inners.len() != self.arity() {
            return Err(TermError::ArityMismatch {
                expected: self.arity(),
                found: inners.len(),
            });
        }
        let mut offsets = Vec::with_capacity(inners.len());
        let mut acc = 0u32;
        for inner in inners {
            offsets.push(acc);
            acc += inner.arity;
        }
        let mut word = Vec::new();
        for t in &self.word {
            match *t {
                Token::Box(i) => {
                    let k = (i - 1) as usize;
                    word.extend(inners[k].word.iter().map(|t| match *t {
                        Token::Box(j) => Token::Box(j + offsets[k]),
                        op => op,
                    }));
                }
                op => word.push(op),
            }
        }
        Ok(Context::from_word_unchecked(word, acc))
    }

    /// Partial composition `self ∘_k inner`: identities in every other slot.
    pub fn compose_at(&self, k: usize, inner: &Context) -> Result<Context, TermError> {
        if k == 0 || k > self.arity() {
            return Err(TermError::ArityMismatch {
                expected: self.arity(),
                found: k,
            });
        }
        let mut inners = vec![Context::identity(); self.arity()];
        inners[k - 1] = inner.clone();
        self.compose(&inners)
    }

    /// Right action of the symmetric group: `Box_i ↦ Box_{σ⁻¹(i)}`.
    pub fn act(&self, sigma: &Permutation) -> Result<Context, TermError> {
        if sigma.degree() != self.arity() {
            return Err(TermError::DegreeMismatch {
                expected: self.arity(),
                found: sigma.degree(),
            });
        }
        let inv = sigma.inverse();
        let word = self
            .word
            .iter()
            .map(|t| match *t {
                Token::Box(i) => Token::Box(inv.apply(i as usize) as u32),
                op => op,
            })
            .collect();
        Ok(Context::from_word_unchecked(word, self.arity))
    }

    /// True iff boxes read left to right are `1, 2, …, n`.
    pub fn is_plane(&self) -> bool {
        self.leaves()
            .iter()
            .enumerate()
            .all(|(i, &b)| b as usize == i + 1)
    }

    /// The unique plane context `p` and permutation `σ` with `p·σ = self`.
    pub fn planarize(&self) -> (Context, Permutation) {
        let leaves = self.leaves();
        let mut next = 0u32;
        let word = self
            .word
            .iter()
            .map(|t| match *t {
                Token::Box(_) => {
                    next += 1;
                    Token::Box(next)
                }
                op => op,
            })
            .collect();
        // Leaf at position j carries label σ⁻¹(j) in self.
        let inverse = Permutation::from_images(leaves.iter().map(|&b| b as usize).collect())
            .expect("leaves of a context form a permutation");
        (
            Context::from_word_unchecked(word, self.arity),
            inverse.inverse(),
        )
    }

    pub fn show<'a>(&'a self, sig: &'a Signature) -> ShowContext<'a> {
        ShowContext { ctx: self, sig }
    }
}

/// Relabels the boxes of a (sub)word to `1..n` keeping their relative order.
pub(crate) fn relabel_order_preserving(word: &[Token]) -> Context {
    let mut labels: Vec<u32> = word
        .iter()
        .filter_map(|t| match t {
            Token::Box(i) => Some(*i),
            Token::Op(_) => None,
        })
        .collect();
    labels.sort_unstable();
    let out = word
        .iter()
        .map(|t| match *t {
            Token::Box(i) => {
                Token::Box(labels.binary_search(&i).expect("label present") as u32 + 1)
            }
            op => op,
        })
        .collect();
    Context::from_word_unchecked(out, labels.len() as u32)
}

fn parse_token(tok: &str, index: usize, sig: &Signature) -> Result<Token, TermError> {
    if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        return match inner.parse::<u32>() {
            Ok(n) if n >= 1 => Ok(Token::Box(n)),
            _ => Err(TermError::Malformed {
                position: index,
                reason: format!("bad box token `{tok}`"),
            }),
        };
    }
    if tok.len() == 1 && tok.as_bytes()[0].is_ascii_digit() {
        let d = (tok.as_bytes()[0] - b'0') as u32;
        if d == 0 {
            return Err(TermError::Malformed {
                position: index,
                reason: "box indices start at 1".into(),
            });
        }
        return Ok(Token::Box(d));
    }
    if tok.chars().all(|c| c.is_ascii_digit()) {
        return Err(TermError::Malformed {
            position: index,
            reason: format!("boxes above 9 are written `[{tok}]`"),
        });
    }
    sig.lookup(tok)
        .map(Token::Op)
        .ok_or_else(|| TermError::UnknownSymbol {
            name: tok.to_string(),
            position: index,
        })
}

pub(crate) fn write_token(f: &mut fmt::Formatter<'_>, t: Token, sig: &Signature) -> fmt::Result {
    match t {
        Token::Box(i) if i <= 9 => write!(f, "{i}"),
        Token::Box(i) => write!(f, "[{i}]"),
        Token::Op(s) => f.write_str(sig.name(s)),
    }
}

pub struct ShowContext<'a> {
    ctx: &'a Context,
    sig: &'a Signature,
}

impl fmt::Display for ShowContext<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.ctx.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write_token(f, *t, self.sig)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Context {
        Context::parse(s, &Signature::hom()).unwrap()
    }

    fn show(c: &Context) -> String {
        c.show(&Signature::hom()).to_string()
    }

    #[test]
    fn parse_examples() {
        let c = p("m 1 m 2 3");
        assert_eq!((c.arity(), c.order()), (3, 2));
        let id = p("1");
        assert_eq!((id.arity(), id.order()), (1, 0));
        assert!(id.is_identity());
        let c = p("m 2 1");
        assert_eq!(c.arity(), 2);
        assert!(!c.is_plane());
    }

    #[test]
    fn parse_errors() {
        let sig = Signature::hom();
        assert!(matches!(
            Context::parse("m 1", &sig),
            Err(TermError::Malformed { .. })
        ));
        assert!(matches!(
            Context::parse("m 1 2 3", &sig),
            Err(TermError::Malformed { position: 3, .. })
        ));
        assert!(matches!(
            Context::parse("x 1", &sig),
            Err(TermError::UnknownSymbol { position: 0, .. })
        ));
        assert!(matches!(
            Context::parse("m 1 1", &sig),
            Err(TermError::DuplicateBox(1))
        ));
        assert!(matches!(
            Context::parse("m 1 3", &sig),
            Err(TermError::MissingBox(2))
        ));
        assert!(Context::parse("m 1 12", &sig).is_err());
    }

    #[test]
    fn bracketed_boxes_round_trip() {
        let text = "m m m m m m m m m m 1 2 3 4 5 6 7 8 9 [10] [11]";
        let c = p(text);
        assert_eq!(c.arity(), 11);
        assert_eq!(show(&c), text);
    }

    #[test]
    fn whitespace_normalizes_on_print() {
        assert_eq!(show(&p("  m   a 1\tm 2 3 ")), "m a 1 m 2 3");
    }

    #[test]
    fn compose_examples() {
        let m12 = p("m 1 2");
        let id = Context::identity();
        assert_eq!(
            show(&m12.compose(&[id.clone(), m12.clone()]).unwrap()),
            "m 1 m 2 3"
        );
        assert_eq!(show(&m12.compose(&[m12.clone(), id]).unwrap()), "m m 1 2 3");
        assert_eq!(show(&p("a 1").compose(&[p("m 2 1")]).unwrap()), "a m 2 1");
        assert!(matches!(
            m12.compose(std::slice::from_ref(&m12)),
            Err(TermError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn act_examples() {
        let swap = Permutation::transposition(2, 1, 2);
        assert_eq!(show(&p("m 1 2").act(&swap).unwrap()), "m 2 1");
        let c = p("m a 1 m 2 3");
        assert_eq!(c.act(&Permutation::identity(3)).unwrap(), c);
        // σ = (1→2→3→1): σ⁻¹ sends 1↦3, 2↦1, 3↦2.
        let cycle = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(show(&p("m 1 m 2 3").act(&cycle).unwrap()), "m 3 m 1 2");
        assert!(p("m 1 2").act(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn planarize_examples() {
        assert!(p("m 1 m 2 3").is_plane());
        let (plane, sigma) = p("m 2 1").planarize();
        assert_eq!(show(&plane), "m 1 2");
        assert_eq!(sigma, Permutation::transposition(2, 1, 2));

        let c = p("m m 3 1 2");
        let (plane, sigma) = c.planarize();
        assert_eq!(show(&plane), "m m 1 2 3");
        // act(σ, plane) = c forces σ⁻¹ = [3,1,2], i.e. σ = (1→2→3→1).
        assert_eq!(sigma.images(), vec![2, 3, 1]);
        assert_eq!(plane.act(&sigma).unwrap(), c);
    }

    #[test]
    fn grading_examples() {
        assert_eq!(p("m a 1 m 2 3").grading(), (1, 2));
        assert_eq!(p("1").grading(), (0, 0));
        assert_eq!(p("m m 1 a 2 a m 3 4").grading(), (2, 3));
    }

    #[test]
    fn subterm_ends_agree() {
        let c = p("m m 1 a 2 a m 3 4");
        let ends = c.subterm_ends();
        for (i, &end) in ends.iter().enumerate() {
            assert_eq!(end, c.subterm_end(i));
        }
        assert_eq!(show(&c.subterm(5)), "a m 1 2");
    }
}
