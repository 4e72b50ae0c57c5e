//! Linear combinations of monomials of a fixed arity.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::order::{Cmp, TermOrder};
use crate::scalar::Scalar;
use crate::term::{Context, Permutation, Signature, TermError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("leading monomial of the zero element")]
    Empty,
    #[error("no unique leading monomial: {first:?} and {second:?} are not ordered")]
    IncomparableLeading { first: Context, second: Context },
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A finite sum `Σ c·μ` of same-arity monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb {
    arity: usize,
    terms: BTreeMap<Context, Scalar>,
}

impl LinComb {
    pub fn zero(arity: usize) -> Self {
        LinComb {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: Context) -> Self {
        Self::term(Scalar::one(), c)
    }

    pub fn term(coeff: Scalar, c: Context) -> Self {
        let mut out = Self::zero(c.arity());
        out.add_term(coeff, c);
        out
    }

    /// Sums `terms`; all monomials must have arity `arity`.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Scalar, Context)>,
    ) -> Result<Self, LinearError> {
        let mut out = Self::zero(arity);
        for (c, m) in terms {
            if m.arity() != arity {
                return Err(LinearError::ArityMismatch {
                    left: arity,
                    right: m.arity(),
                });
            }
            out.add_term(c, m);
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Context, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Context> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Context) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `coeff·m` in place. Panics on an arity mismatch.
    pub fn add_term(&mut self, coeff: Scalar, m: Context) {
        assert_eq!(m.arity(), self.arity, "monomial arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb, LinearError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb, LinearError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> LinComb {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        LinComb {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn check_arity(&self, other: &LinComb) -> Result<(), LinearError> {
        if self.arity != other.arity {
            return Err(LinearError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    /// Multilinear extension of operad composition.
    pub fn compose(&self, inners: &[LinComb]) -> Result<LinComb, LinearError> {
        if inners.len() != self.arity {
            return Err(TermError::ArityMismatch {
                expected: self.arity,
                found: inners.len(),
            }
            .into());
        }
        let arity = inners.iter().map(LinComb::arity).sum();
        let mut out = Self::zero(arity);
        let inner_terms: Vec<Vec<(&Context, &Scalar)>> =
            inners.iter().map(|x| x.terms().collect()).collect();
        if inner_terms.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        for (m, c) in &self.terms {
            let mut partial: Vec<(Scalar, Vec<Context>)> = vec![(c.clone(), Vec::new())];
            for slot in &inner_terms {
                partial = partial
                    .iter()
                    .flat_map(|(s, chosen)| {
                        slot.iter().map(move |(im, ic)| {
                            let mut next = chosen.clone();
                            next.push((*im).clone());
                            (s * *ic, next)
                        })
                    })
                    .collect();
            }
            for (s, chosen) in partial {
                out.add_term(s, m.compose(&chosen)?);
            }
        }
        Ok(out)
    }

    pub fn act(&self, sigma: &Permutation) -> Result<LinComb, LinearError> {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.act(sigma)?);
        }
        Ok(out)
    }

    /// The support element greater than every other one.
    pub fn leading_monomial(&self, order: &TermOrder) -> Result<(Context, Scalar), LinearError> {
        let mut it = self.terms.iter();
        let (mut best, _) = it.next().ok_or(LinearError::Empty)?;
        for (m, _) in it {
            if order.compare(m, best) == Cmp::Greater {
                best = m;
            }
        }
        for m in self.terms.keys() {
            if m != best && order.compare(best, m) != Cmp::Greater {
                return Err(LinearError::IncomparableLeading {
                    first: best.clone(),
                    second: m.clone(),
                });
            }
        }
        Ok((best.clone(), self.terms[best].clone()))
    }

    pub fn show<'a>(&'a self, sig: &'a Signature) -> ShowLinComb<'a> {
        ShowLinComb { x: self, sig }
    }
}

/// Signed-sum rendering, e.g. `m m 1 2 3 - 2 * m 3 m 1 2`; zero prints `0`.
pub struct ShowLinComb<'a> {
    x: &'a LinComb,
    sig: &'a Signature,
}

impl fmt::Display for ShowLinComb<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.x.terms.iter().enumerate() {
            let (neg, mag) = match c {
                Scalar::Rat(r) if r.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                if mag.is_symbolic() {
                    write!(f, "({mag}) * ")?;
                } else {
                    write!(f, "{mag} * ")?;
                }
            }
            write!(f, "{}", m.show(self.sig))?;
        }
        Ok(())
    }
}
