use std::collections::HashMap;

use super::{Context, Signature, TermError, Token};

/// Largest `k + l` accepted by [`enumerate_plane`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;

/// All plane contexts over `{m/2, a/1}` with `k` unary and `l` binary
/// vertices, in a fixed deterministic order.
pub fn enumerate_plane(k: usize, l: usize) -> Result<Vec<Context>, TermError> {
    enumerate_plane_with_limit(k, l, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_plane_with_limit(
    k: usize,
    l: usize,
    limit: usize,
) -> Result<Vec<Context>, TermError> {
    if k + l > limit {
        return Err(TermError::EnumerationLimit { k, l, limit });
    }
    let sig = Signature::hom();
    let m = Token::Op(sig.lookup("m").expect("m"));
    let a = Token::Op(sig.lookup("a").expect("a"));
    let mut memo = HashMap::new();
    let shapes = shapes(k, l, m, a, &mut memo);
    Ok(shapes
        .iter()
        .map(|w| {
            let mut next = 0;
            let word = w
                .iter()
                .map(|t| match t {
                    Token::Box(_) => {
                        next += 1;
                        Token::Box(next)
                    }
                    op => *op,
                })
                .collect();
            Context::from_word_unchecked(word, next)
        })
        .collect())
}

/// Unlabelled shapes; every leaf is `Box(0)`.
fn shapes(
    k: usize,
    l: usize,
    m: Token,
    a: Token,
    memo: &mut HashMap<(usize, usize), Vec<Vec<Token>>>,
) -> Vec<Vec<Token>> {
    if let Some(v) = memo.get(&(k, l)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if k == 0 && l == 0 {
        out.push(vec![Token::Box(0)]);
    }
    if l > 0 {
        for k1 in 0..=k {
            for l1 in 0..l {
                let left = shapes(k1, l1, m, a, memo);
                let right = shapes(k - k1, l - 1 - l1, m, a, memo);
                for x in &left {
                    for y in &right {
                        let mut w = Vec::with_capacity(1 + x.len() + y.len());
                        w.push(m);
                        w.extend_from_slice(x);
                        w.extend_from_slice(y);
                        out.push(w);
                    }
                }
            }
        }
    }
    if k > 0 {
        for x in shapes(k - 1, l, m, a, memo) {
            let mut w = Vec::with_capacity(1 + x.len());
            w.push(a);
            w.extend(x);
            out.push(w);
        }
    }
    memo.insert((k, l), out.clone());
    out
}
