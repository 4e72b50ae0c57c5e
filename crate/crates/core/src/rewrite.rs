//! Rules, redex matching and reduction to normal form.

use std::collections::BTreeMap;
use std::fmt;

use crate::linear::{LinComb, LinearError};
use crate::order::{Cmp, OrderError, TermOrder};
use crate::rulefile::RuleFile;
use crate::scalar::Scalar;
use crate::term::{relabel_order_preserving, Context, Permutation, Signature, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(pub u32);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error(
        "rule {lhs:?} -> ... is not decreasing: {monomial:?} is {cmp:?} relative to the left side"
    )]
    NotDecreasing {
        lhs: Context,
        monomial: Context,
        cmp: Cmp,
    },
    #[error("a rule's left side must contain an operation symbol")]
    TrivialLhs,
    #[error("rule id {0} is already in use")]
    DuplicateId(RuleId),
    #[error("no rule with id {0}")]
    UnknownRule(RuleId),
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

impl RewriteError {
    /// The message with monomials written in Polish notation over `sig`.
    pub fn describe(&self, sig: &Signature) -> String {
        match self {
            RewriteError::NotDecreasing { lhs, monomial, cmp } => format!(
                "rule `{} -> ...` is not decreasing: `{}` is {cmp:?} relative to the left side",
                lhs.show(sig),
                monomial.show(sig)
            ),
            RewriteError::Linear(LinearError::IncomparableLeading { first, second }) => format!(
                "no unique leading monomial: `{}` and `{}` are not ordered",
                first.show(sig),
                second.show(sig)
            ),
            e => e.to_string(),
        }
    }
}

impl From<crate::term::TermError> for RewriteError {
    fn from(e: crate::term::TermError) -> Self {
        RewriteError::Linear(e.into())
    }
}

/// An oriented rule `lhs -> rhs` with a plane left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    id: RuleId,
    lhs: Context,
    rhs: LinComb,
}

impl Rule {
    /// Planarizes `lhs` (permuting `rhs` along) and checks that every right
    /// side monomial is strictly below the left side.
    pub fn new(
        id: RuleId,
        lhs: Context,
        rhs: LinComb,
        order: &TermOrder,
    ) -> Result<Rule, RewriteError> {
        if lhs.order() == 0 {
            return Err(RewriteError::TrivialLhs);
        }
        if lhs.arity() != rhs.arity() {
            return Err(LinearError::ArityMismatch {
                left: lhs.arity(),
                right: rhs.arity(),
            }
            .into());
        }
        let (lhs, rhs) = if lhs.is_plane() {
            (lhs, rhs)
        } else {
            let (plane, sigma) = lhs.planarize();
            (plane, rhs.act(&sigma.inverse())?)
        };
        for m in rhs.support() {
            let cmp = order.compare(m, &lhs);
            if cmp != Cmp::Less {
                return Err(RewriteError::NotDecreasing {
                    lhs,
                    monomial: m.clone(),
                    cmp,
                });
            }
        }
        Ok(Rule { id, lhs, rhs })
    }

    /// Orients `relation = 0` by its leading monomial: `μ -> μ - relation/c`.
    /// Returns `None` for the zero relation.
    pub fn orient(
        id: RuleId,
        relation: &LinComb,
        order: &TermOrder,
    ) -> Result<Option<Rule>, RewriteError> {
        if relation.is_zero() {
            return Ok(None);
        }
        let (lead, c) = relation.leading_monomial(order)?;
        let mut rhs = relation.scale(&(&Scalar::from_int(-1) / &c));
        rhs.add_term(Scalar::one(), lead.clone());
        Rule::new(id, lead, rhs, order).map(Some)
    }

    pub fn id(&self) -> RuleId {
        self.id
    }

    pub fn lhs(&self) -> &Context {
        &self.lhs
    }

    pub fn rhs(&self) -> &LinComb {
        &self.rhs
    }

    /// Vertex count of the left side.
    pub fn order(&self) -> usize {
        self.lhs.order()
    }

    pub fn grading(&self) -> (usize, usize) {
        self.lhs.grading()
    }

    /// True iff every right side monomial has the left side's grading.
    pub fn is_homogeneous(&self) -> bool {
        let g = self.lhs.grading();
        self.rhs.support().all(|m| m.grading() == g)
    }

    pub fn show<'a>(&'a self, sig: &'a Signature) -> ShowRule<'a> {
        ShowRule { rule: self, sig }
    }
}

pub struct ShowRule<'a> {
    rule: &'a Rule,
    sig: &'a Signature,
}

impl fmt::Display for ShowRule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            self.rule.lhs.show(self.sig),
            self.rule.rhs.show(self.sig)
        )
    }
}

/// An occurrence of a rule's left side inside a monomial.
///
/// `bindings[i]` is the token range of the subterm matched by box `i+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub rule: RuleId,
    pub position: usize,
    pub end: usize,
    pub bindings: Vec<(usize, usize)>,
}

/// The data `(λ, k, ν, σ)` of a simple reduction: the term equals
/// `act(σ, λ ∘_k (μ ∘ (ν_1, …, ν_j)))` where `μ` is the matched left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VMap {
    pub outer: Context,
    pub slot: usize,
    pub inners: Vec<Context>,
    pub sigma: Permutation,
}

impl VMap {
    pub fn apply(&self, mu: &Context) -> Result<Context, RewriteError> {
        let inside = mu.compose(&self.inners)?;
        Ok(self
            .outer
            .compose_at(self.slot, &inside)?
            .act(&self.sigma)?)
    }

    pub fn apply_linear(&self, x: &LinComb) -> Result<LinComb, RewriteError> {
        let mut out = LinComb::zero(self.sigma.degree());
        for (m, c) in x.terms() {
            out.add_term(c.clone(), self.apply(m)?);
        }
        Ok(out)
    }
}

impl Redex {
    /// Reconstructs the V-map of this occurrence of `lhs` in `t`.
    pub fn vmap(&self, t: &Context, lhs: &Context) -> Result<VMap, RewriteError> {
        let word = t.word();
        let inners: Vec<Context> = self
            .bindings
            .iter()
            .map(|&(s, e)| relabel_order_preserving(&word[s..e]))
            .collect();
        // The hole borrows a label of the matched region so labels stay distinct.
        let hole = word[self.position..self.end]
            .iter()
            .filter_map(|t| match t {
                Token::Box(i) => Some(*i),
                Token::Op(_) => None,
            })
            .min()
            .unwrap_or(0);
        let mut w = word[..self.position].to_vec();
        w.push(Token::Box(hole));
        w.extend_from_slice(&word[self.end..]);
        let outer = relabel_order_preserving(&w);
        let Token::Box(slot) = outer.word()[self.position] else {
            unreachable!("hole is a box")
        };
        let slot = slot as usize;
        let composed = outer.compose_at(slot, &lhs.compose(&inners)?)?;
        // act(σ, composed) = t means σ(t_j) = composed_j leaf by leaf.
        let mut images = vec![0usize; t.arity()];
        for (tl, cl) in t.leaves().into_iter().zip(composed.leaves()) {
            images[tl as usize - 1] = cl as usize;
        }
        Ok(VMap {
            outer,
            slot,
            inners,
            sigma: Permutation::from_images(images)?,
        })
    }
}

/// A validated rule set over a signature, with a term order.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    signature: Signature,
    order: TermOrder,
    rules: Vec<Rule>,
    /// Rule indices by root symbol id.
    by_root: Vec<Vec<usize>>,
    next_id: u32,
}

impl RewritingSystem {
    pub fn new(signature: Signature, order: TermOrder) -> Self {
        let by_root = vec![Vec::new(); signature.len()];
        RewritingSystem {
            signature,
            order,
            rules: Vec::new(),
            by_root,
            next_id: 1,
        }
    }

    /// Builds a system from a parsed rule file. `order` overrides the file's
    /// `order` directive; the fallback is `lex_ma`.
    pub fn from_rule_file(file: &RuleFile, order: Option<&str>) -> Result<Self, RewriteError> {
        let name = order.or(file.order.as_deref()).unwrap_or("lex_ma");
        let order = TermOrder::parse(name, &file.signature)?;
        let mut sys = RewritingSystem::new(file.signature.clone(), order);
        for r in &file.rules {
            sys.add(r.lhs.clone(), r.rhs.clone())?;
        }
        Ok(sys)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule(&self, id: RuleId) -> Option<&Rule> {
        self.rules
            .binary_search_by_key(&id, |r| r.id)
            .ok()
            .map(|i| &self.rules[i])
    }

    pub fn next_id(&self) -> RuleId {
        RuleId(self.next_id)
    }

    /// Validates and appends `lhs -> rhs` under a fresh id.
    pub fn add(&mut self, lhs: Context, rhs: LinComb) -> Result<RuleId, RewriteError> {
        let rule = Rule::new(RuleId(self.next_id), lhs, rhs, &self.order)?;
        self.push(rule)
    }

    /// Appends an already validated rule; ids must increase.
    pub fn push(&mut self, rule: Rule) -> Result<RuleId, RewriteError> {
        if rule.id.0 < self.next_id {
            return Err(RewriteError::DuplicateId(rule.id));
        }
        let id = rule.id;
        self.next_id = id.0 + 1;
        if let Token::Op(s) = rule.lhs.word()[0] {
            self.by_root[s.id()].push(self.rules.len());
        }
        self.rules.push(rule);
        Ok(id)
    }

    pub fn remove(&mut self, id: RuleId) -> Result<Rule, RewriteError> {
        let i = self
            .rules
            .binary_search_by_key(&id, |r| r.id)
            .map_err(|_| RewriteError::UnknownRule(id))?;
        let rule = self.rules.remove(i);
        self.reindex();
        Ok(rule)
    }

    /// Replaces the right side of rule `id` (validated against the order).
    pub fn replace_rhs(&mut self, id: RuleId, rhs: LinComb) -> Result<(), RewriteError> {
        let i = self
            .rules
            .binary_search_by_key(&id, |r| r.id)
            .map_err(|_| RewriteError::UnknownRule(id))?;
        let lhs = self.rules[i].lhs.clone();
        self.rules[i] = Rule::new(id, lhs, rhs, &self.order)?;
        Ok(())
    }

    /// Reserves the next id without adding a rule.
    pub fn fresh_id(&mut self) -> RuleId {
        let id = RuleId(self.next_id);
        self.next_id += 1;
        id
    }

    fn reindex(&mut self) {
        for v in &mut self.by_root {
            v.clear();
        }
        for (i, r) in self.rules.iter().enumerate() {
            if let Token::Op(s) = r.lhs.word()[0] {
                self.by_root[s.id()].push(i);
            }
        }
    }

    /// Every redex of `t`, by position and then rule id.
    pub fn find_redexes(&self, t: &Context) -> Vec<Redex> {
        let mut out = Vec::new();
        let word = t.word();
        let mut bindings = Vec::new();
        for pos in 0..word.len() {
            let Token::Op(s) = word[pos] else { continue };
            for &ri in &self.by_root[s.id()] {
                let rule = &self.rules[ri];
                if let Some(end) = match_at(word, pos, rule.lhs.word(), &mut bindings) {
                    out.push(Redex {
                        rule: rule.id,
                        position: pos,
                        end,
                        bindings: bindings.clone(),
                    });
                }
            }
        }
        out
    }

    /// The first redex in position order, then rule id.
    pub fn first_redex(&self, t: &Context) -> Option<Redex> {
        let word = t.word();
        let mut bindings = Vec::new();
        for pos in 0..word.len() {
            let Token::Op(s) = word[pos] else { continue };
            for &ri in &self.by_root[s.id()] {
                let rule = &self.rules[ri];
                if let Some(end) = match_at(word, pos, rule.lhs.word(), &mut bindings) {
                    return Some(Redex {
                        rule: rule.id,
                        position: pos,
                        end,
                        bindings,
                    });
                }
            }
        }
        None
    }

    pub fn is_reducible_monomial(&self, t: &Context) -> bool {
        self.first_redex(t).is_some()
    }

    pub fn is_irreducible(&self, x: &LinComb) -> bool {
        x.support().all(|m| !self.is_reducible_monomial(m))
    }

    /// The simple reduction of `t` at `redex`: `v(μ_s) ↦ v(a_s)`.
    pub fn rewrite_at(&self, t: &Context, redex: &Redex) -> LinComb {
        let rule = self.rule(redex.rule).expect("redex refers to a live rule");
        rewrite_with(t, redex, rule)
    }

    /// Rewrites the key-greatest reducible monomial of `x` at its first redex.
    pub fn reduce_once(&self, x: &LinComb) -> (LinComb, bool) {
        let mut best: Option<(Vec<u64>, &Context, Redex)> = None;
        for m in x.support() {
            if let Some(r) = self.first_redex(m) {
                let k = self.order.key(m);
                if best.as_ref().is_none_or(|(bk, _, _)| &k > bk) {
                    best = Some((k, m, r));
                }
            }
        }
        match best {
            None => (x.clone(), false),
            Some((_, m, r)) => {
                let c = x.coeff(m);
                let mut out = x.clone();
                out.add_term(-&c, m.clone());
                for (n, d) in self.rewrite_at(m, &r).terms() {
                    out.add_term(&c * d, n.clone());
                }
                (out, true)
            }
        }
    }

    pub fn normal_form(&self, x: &LinComb) -> LinComb {
        self.normal_form_traced(x, None)
    }

    pub fn normal_form_monomial(&self, t: &Context) -> LinComb {
        // Monomial chains need no bookkeeping until a sum appears.
        let mut cur = t.clone();
        let mut coeff = Scalar::one();
        loop {
            let Some(r) = self.first_redex(&cur) else {
                return LinComb::term(coeff, cur);
            };
            let next = self.rewrite_at(&cur, &r);
            if next.len() != 1 {
                return self.normal_form(&next.scale(&coeff));
            }
            let (m, c) = next.terms().next().expect("one term");
            coeff = &coeff * c;
            cur = m.clone();
        }
    }

    /// Normal form, recording each step as `(coefficient, monomial, redex)`
    /// when asked.
    pub fn normal_form_traced(
        &self,
        x: &LinComb,
        mut trace: Option<&mut Vec<(Scalar, Context, Redex)>>,
    ) -> LinComb {
        let mut pending: BTreeMap<Vec<u64>, (Context, Scalar)> = BTreeMap::new();
        for (m, c) in x.terms() {
            pending.insert(self.order.key(m), (m.clone(), c.clone()));
        }
        let mut out = LinComb::zero(x.arity());
        while let Some((_, (m, c))) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.first_redex(&m) {
                None => out.add_term(c, m),
                Some(r) => {
                    for (n, d) in self.rewrite_at(&m, &r).terms() {
                        let entry = pending
                            .entry(self.order.key(n))
                            .or_insert_with(|| (n.clone(), Scalar::zero()));
                        entry.1 = &entry.1 + &(&c * d);
                    }
                    if let Some(t) = trace.as_deref_mut() {
                        t.push((c, m, r));
                    }
                }
            }
        }
        out
    }

    /// Reduces `x` by repeatedly applying `choose` to the list of all
    /// `(monomial, redex)` options; used to exercise arbitrary strategies.
    pub fn normal_form_by<F>(&self, x: &LinComb, mut choose: F) -> LinComb
    where
        F: FnMut(usize) -> usize,
    {
        let mut cur = x.clone();
        loop {
            let options: Vec<(Context, Redex)> = cur
                .support()
                .flat_map(|m| {
                    self.find_redexes(m)
                        .into_iter()
                        .map(move |r| (m.clone(), r))
                })
                .collect();
            if options.is_empty() {
                return cur;
            }
            let (m, r) = &options[choose(options.len()) % options.len()];
            let c = cur.coeff(m);
            cur.add_term(-&c, m.clone());
            for (n, d) in self.rewrite_at(m, r).terms() {
                cur.add_term(&c * d, n.clone());
            }
        }
    }

    pub fn show_rules(&self) -> String {
        let mut s = String::new();
        for r in &self.rules {
            s.push_str(&r.show(&self.signature).to_string());
            s.push('\n');
        }
        s
    }
}

/// Matches the plane pattern `lhs` at `pos`; boxes are wildcards.
pub(crate) fn match_at(
    word: &[Token],
    pos: usize,
    lhs: &[Token],
    bindings: &mut Vec<(usize, usize)>,
) -> Option<usize> {
    bindings.clear();
    let mut i = pos;
    for &p in lhs {
        if i >= word.len() {
            return None;
        }
        match p {
            Token::Box(_) => {
                let end = crate::term::subterm_end(word, i);
                bindings.push((i, end));
                i = end;
            }
            op => {
                if word[i] != op {
                    return None;
                }
                i += 1;
            }
        }
    }
    Some(i)
}

pub(crate) fn rewrite_with(t: &Context, redex: &Redex, rule: &Rule) -> LinComb {
    let word = t.word();
    let mut out = LinComb::zero(t.arity());
    for (m, c) in rule.rhs.terms() {
        let mut w = Vec::with_capacity(word.len());
        w.extend_from_slice(&word[..redex.position]);
        for tok in m.word() {
            match *tok {
                Token::Box(i) => {
                    let (s, e) = redex.bindings[i as usize - 1];
                    w.extend_from_slice(&word[s..e]);
                }
                op => w.push(op),
            }
        }
        w.extend_from_slice(&word[redex.end..]);
        out.add_term(c.clone(), Context::from_word_unchecked(w, t.arity() as u32));
    }
    out
}
