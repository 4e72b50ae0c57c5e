use super::{Context, Signature, TermError, Token};

/// A plane binary tree whose internal vertices carry natural weights.
///
/// Encodes hom-monomials in which every `a` sits above an `m`: the weight of
/// an internal vertex is the length of the run of `a`s directly above it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeightedTree {
    Leaf,
    Internal {
        weight: usize,
        left: Box<WeightedTree>,
        right: Box<WeightedTree>,
    },
}

impl WeightedTree {
    pub fn leaves(&self) -> usize {
        match self {
            WeightedTree::Leaf => 1,
            WeightedTree::Internal { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    pub fn total_weight(&self) -> usize {
        match self {
            WeightedTree::Leaf => 0,
            WeightedTree::Internal {
                weight,
                left,
                right,
            } => weight + left.total_weight() + right.total_weight(),
        }
    }

    /// Reads a plane context over `{m/2, a/1}`.
    pub fn from_context(c: &Context, sig: &Signature) -> Result<Self, TermError> {
        let m = sig.lookup("m");
        let a = sig.lookup("a");
        let word = c.word();
        if !c.is_plane() {
            return Err(TermError::Representation {
                position: 0,
                reason: "context is not plane".into(),
            });
        }
        let mut pos = 0;
        let tree = read(word, &mut pos, m.map(Token::Op), a.map(Token::Op))?;
        Ok(tree)
    }

    pub fn to_context(&self, sig: &Signature) -> Context {
        let m = Token::Op(sig.lookup("m").expect("signature has m"));
        let a = Token::Op(sig.lookup("a").expect("signature has a"));
        let mut word = Vec::new();
        let mut next = 0;
        write(self, m, a, &mut word, &mut next);
        Context::from_word(word).expect("weighted tree yields a context")
    }
}

fn read(
    word: &[Token],
    pos: &mut usize,
    m: Option<Token>,
    a: Option<Token>,
) -> Result<WeightedTree, TermError> {
    let start = *pos;
    let mut weight = 0;
    while a.is_some() && Some(word[*pos]) == a {
        weight += 1;
        *pos += 1;
    }
    let t = word[*pos];
    match t {
        Token::Box(_) if weight == 0 => {
            *pos += 1;
            Ok(WeightedTree::Leaf)
        }
        Token::Box(_) => Err(TermError::Representation {
            position: start,
            reason: "`a` applied directly to a box".into(),
        }),
        _ if Some(t) == m => {
            *pos += 1;
            let left = read(word, pos, m, a)?;
            let right = read(word, pos, m, a)?;
            Ok(WeightedTree::Internal {
                weight,
                left: Box::new(left),
                right: Box::new(right),
            })
        }
        _ => Err(TermError::Representation {
            position: *pos,
            reason: "symbol other than `m` or `a`".into(),
        }),
    }
}

fn write(t: &WeightedTree, m: Token, a: Token, out: &mut Vec<Token>, next: &mut u32) {
    match t {
        WeightedTree::Leaf => {
            *next += 1;
            out.push(Token::Box(*next));
        }
        WeightedTree::Internal {
            weight,
            left,
            right,
        } => {
            out.extend(std::iter::repeat_n(a, *weight));
            out.push(m);
            write(left, m, a, out, next);
            write(right, m, a, out, next);
        }
    }
}
