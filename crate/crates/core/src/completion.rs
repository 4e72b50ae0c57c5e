//! Critical ambiguities and graded completion.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::linear::{LinComb, LinearError};
use crate::rewrite::{match_at, Redex, RewriteError, RewritingSystem, Rule, RuleId};
use crate::term::{Context, Signature, Token};

/// Two rule occurrences overlapping in a plane site: `left` is rooted at the
/// top of the site, `right` at `right.position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub site: Context,
    pub left: Redex,
    pub right: Redex,
}

impl Ambiguity {
    /// Vertex count of the site.
    pub fn order(&self) -> usize {
        self.site.order()
    }

    pub fn rules(&self) -> (RuleId, RuleId) {
        (self.left.rule, self.right.rule)
    }

    fn queue_key(&self) -> QueueKey {
        (
            self.order(),
            self.site.clone(),
            self.left.rule,
            self.right.rule,
            self.right.position,
        )
    }
}

type QueueKey = (usize, Context, RuleId, RuleId, usize);

/// Superpositions of `lhs(s2)` onto an operation vertex of `lhs(s1)`, and of
/// `lhs(s1)` onto a non-root vertex of `lhs(s2)`. The root self-overlap of a
/// rule with itself is excluded.
pub fn overlaps(s1: &Rule, s2: &Rule) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |amb: Ambiguity| {
        if seen.insert(amb.queue_key()) {
            out.push(amb);
        }
    };
    for amb in one_way(s1, s2, s1.id() == s2.id()) {
        push(amb);
    }
    if s1.id() != s2.id() {
        for amb in one_way(s2, s1, true) {
            push(amb);
        }
    }
    out
}

/// `top` at the root, `inner` rooted at an operation vertex of `top`.
fn one_way(top: &Rule, inner: &Rule, skip_root: bool) -> Vec<Ambiguity> {
    let tw = top.lhs().word();
    let iw = inner.lhs().word();
    let mut out = Vec::new();
    for p in 0..tw.len() {
        if tw[p].is_box() || (p == 0 && skip_root) {
            continue;
        }
        let mut merged = tw[..p].to_vec();
        let (mut i, mut j) = (p, 0);
        if !unify(tw, &mut i, iw, &mut j, &mut merged) {
            continue;
        }
        merged.extend_from_slice(&tw[i..]);
        let mut next = 0;
        for t in merged.iter_mut() {
            if let Token::Box(_) = t {
                next += 1;
                *t = Token::Box(next);
            }
        }
        let site = Context::from_word(merged).expect("superposition is a context");
        let mut b = Vec::new();
        let lend = match_at(site.word(), 0, tw, &mut b).expect("top matches at root");
        let left = Redex {
            rule: top.id(),
            position: 0,
            end: lend,
            bindings: b.clone(),
        };
        let rend = match_at(site.word(), p, iw, &mut b).expect("inner matches at p");
        let right = Redex {
            rule: inner.id(),
            position: p,
            end: rend,
            bindings: b,
        };
        out.push(Ambiguity { site, left, right });
    }
    out
}

/// Simultaneously walks the subterms at `a[*i]` and `b[*j]`, emitting their
/// most general common instance; boxes on either side absorb subterms.
fn unify(a: &[Token], i: &mut usize, b: &[Token], j: &mut usize, out: &mut Vec<Token>) -> bool {
    match (a[*i], b[*j]) {
        (Token::Box(_), _) => {
            let end = crate::term::subterm_end(b, *j);
            out.extend_from_slice(&b[*j..end]);
            *i += 1;
            *j = end;
            true
        }
        (_, Token::Box(_)) => {
            let end = crate::term::subterm_end(a, *i);
            out.extend_from_slice(&a[*i..end]);
            *i = end;
            *j += 1;
            true
        }
        (x, y) if x == y => {
            out.push(x);
            *i += 1;
            *j += 1;
            (0..x.arity()).all(|_| unify(a, i, b, j, out))
        }
        _ => false,
    }
}

/// Outcome of reducing both sides of an ambiguity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Resolved,
    /// The nonzero difference of the two normal forms.
    Candidate(LinComb),
    /// A nonzero difference without a unique leading monomial.
    Failure(LinComb),
}

pub fn resolve(amb: &Ambiguity, sys: &RewritingSystem) -> Resolution {
    match difference(amb, sys) {
        None => Resolution::Resolved,
        Some(d) => match d.leading_monomial(sys.order()) {
            Ok(_) => Resolution::Candidate(d),
            Err(_) => Resolution::Failure(d),
        },
    }
}

/// `NF(left reduct) - NF(right reduct)`, or `None` if the rules involved are
/// no longer in `sys` or the difference vanishes.
fn difference(amb: &Ambiguity, sys: &RewritingSystem) -> Option<LinComb> {
    sys.rule(amb.left.rule)?;
    sys.rule(amb.right.rule)?;
    let l = sys.normal_form(&sys.rewrite_at(&amb.site, &amb.left));
    let r = sys.normal_form(&sys.rewrite_at(&amb.site, &amb.right));
    let d = l.sub(&r).expect("same arity");
    (!d.is_zero()).then_some(d)
}

#[derive(Clone, Debug)]
pub struct CompletionConfig {
    /// Largest site order processed.
    pub max_order: usize,
    pub max_steps: Option<usize>,
    pub time_limit: Option<Duration>,
    /// Keep the system reduced: rewrite right sides and re-orient rules whose
    /// left side becomes reducible.
    pub inter_reduce: bool,
    pub jobs: usize,
    pub allow_inhomogeneous: bool,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_order: 10,
            max_steps: None,
            time_limit: None,
            inter_reduce: true,
            jobs: 1,
            allow_inhomogeneous: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error("rule {0} is not homogeneous")]
    Inhomogeneous(RuleId),
    #[error("jobs must be at least 1")]
    NoJobs,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Resolved,
    NewRule(RuleId),
    /// A rule of the ambiguity was deleted by inter-reduction first.
    Superseded,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub site: Context,
    pub rules: (RuleId, RuleId),
    pub position: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Every ambiguity with site order up to `max_order` was processed.
    Complete,
    BudgetExhausted,
    /// A difference could not be oriented; completion stopped there.
    Failed {
        site: Context,
        candidate: LinComb,
    },
}

#[derive(Clone, Debug)]
pub struct CompletionState {
    pub system: RewritingSystem,
    pub log: Vec<LogEntry>,
    pub status: Status,
    /// All sites of order `<= frontier` have been processed.
    pub frontier: usize,
    pub pending: usize,
}

impl CompletionState {
    /// Surviving rules counted by left side order.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        census(&self.system)
    }

    /// The rules whose grading is at most `(k, l)` componentwise.
    pub fn snapshot(&self, k: usize, l: usize) -> RewritingSystem {
        snapshot(&self.system, k, l)
    }

    pub fn show_log(&self, sig: &Signature) -> String {
        let mut s = String::new();
        for e in &self.log {
            let outcome = match &e.outcome {
                Outcome::Resolved => "resolved".to_string(),
                Outcome::NewRule(id) => format!("new {id}"),
                Outcome::Superseded => "superseded".to_string(),
                Outcome::Failure => "failure".to_string(),
            };
            s.push_str(&format!(
                "{}\t{}\t{}@{}\t{}\n",
                e.site.show(sig),
                e.rules.0,
                e.rules.1,
                e.position,
                outcome
            ));
        }
        s
    }
}

pub fn census(sys: &RewritingSystem) -> BTreeMap<usize, usize> {
    let mut c = BTreeMap::new();
    for r in sys.rules() {
        *c.entry(r.order()).or_insert(0) += 1;
    }
    c
}

pub fn snapshot(sys: &RewritingSystem, k: usize, l: usize) -> RewritingSystem {
    let mut out = RewritingSystem::new(sys.signature().clone(), sys.order().clone());
    for r in sys.rules() {
        let (rk, rl) = r.grading();
        if rk <= k && rl <= l {
            out.push(r.clone()).expect("ids increase");
        }
    }
    out
}

/// Sites are resolved in batches of this size against a frozen system.
const BATCH: usize = 2048;

struct Completer<'a> {
    sys: RewritingSystem,
    config: &'a CompletionConfig,
    pending: BTreeMap<QueueKey, Ambiguity>,
    log: Vec<LogEntry>,
}

/// Runs the critical-pair completion on `initial`, processing ambiguities by
/// increasing site order up to `config.max_order`.
pub fn complete(
    initial: &RewritingSystem,
    config: &CompletionConfig,
) -> Result<CompletionState, CompletionError> {
    if config.jobs == 0 {
        return Err(CompletionError::NoJobs);
    }
    if !config.allow_inhomogeneous {
        if let Some(r) = initial.rules().iter().find(|r| !r.is_homogeneous()) {
            return Err(CompletionError::Inhomogeneous(r.id()));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool");
    let start = Instant::now();
    let mut c = Completer {
        sys: RewritingSystem::new(initial.signature().clone(), initial.order().clone()),
        config,
        pending: BTreeMap::new(),
        log: Vec::new(),
    };
    for r in initial.rules() {
        let relation = LinComb::monomial(r.lhs().clone())
            .sub(r.rhs())
            .expect("same arity");
        if let Err(candidate) = c.insert(relation) {
            return Ok(c.finish(
                Status::Failed {
                    site: r.lhs().clone(),
                    candidate,
                },
                0,
            ));
        }
    }

    let mut steps = 0usize;
    let mut frontier: usize;
    loop {
        let Some(order) = c.pending.keys().next().map(|k| k.0) else {
            frontier = config.max_order;
            break;
        };
        frontier = order.saturating_sub(1);
        let budget_left = config.max_steps.map(|m| m.saturating_sub(steps));
        let over_time = config.time_limit.is_some_and(|t| start.elapsed() >= t);
        if budget_left == Some(0) || over_time {
            return Ok(c.finish(Status::BudgetExhausted, frontier));
        }
        let take = budget_left.unwrap_or(usize::MAX).min(BATCH);
        let batch: Vec<Ambiguity> = {
            let keys: Vec<QueueKey> = c
                .pending
                .keys()
                .take_while(|k| k.0 == order)
                .take(take)
                .cloned()
                .collect();
            keys.iter().map(|k| c.pending.remove(k).unwrap()).collect()
        };
        steps += batch.len();
        let frozen = &c.sys;
        let resolved: Vec<Option<LinComb>> = if config.jobs == 1 {
            batch.iter().map(|a| difference(a, frozen)).collect()
        } else {
            pool.install(|| batch.par_iter().map(|a| difference(a, frozen)).collect())
        };
        for (amb, d) in batch.into_iter().zip(resolved) {
            let alive = c.sys.rule(amb.left.rule).is_some() && c.sys.rule(amb.right.rule).is_some();
            let outcome = if !alive {
                Outcome::Superseded
            } else {
                match d.map(|d| c.sys.normal_form(&d)).filter(|d| !d.is_zero()) {
                    None => Outcome::Resolved,
                    Some(d) => match c.insert(d) {
                        Ok(Some(id)) => Outcome::NewRule(id),
                        Ok(None) => Outcome::Resolved,
                        Err(candidate) => {
                            c.record(&amb, Outcome::Failure);
                            return Ok(c.finish(
                                Status::Failed {
                                    site: amb.site,
                                    candidate,
                                },
                                frontier,
                            ));
                        }
                    },
                }
            };
            c.record(&amb, outcome);
        }
    }
    Ok(c.finish(Status::Complete, frontier))
}

impl Completer<'_> {
    fn record(&mut self, amb: &Ambiguity, outcome: Outcome) {
        self.log.push(LogEntry {
            site: amb.site.clone(),
            rules: amb.rules(),
            position: amb.right.position,
            outcome,
        });
    }

    fn finish(self, status: Status, frontier: usize) -> CompletionState {
        CompletionState {
            system: self.sys,
            log: self.log,
            status,
            frontier,
            pending: self.pending.len(),
        }
    }

    /// Normalizes `relation`, orients it and adds it, then restores
    /// reducedness. Returns the first new rule id, or the unorientable
    /// relation.
    fn insert(&mut self, relation: LinComb) -> Result<Option<RuleId>, LinComb> {
        let mut work = VecDeque::from([relation]);
        let mut first = None;
        while let Some(rel) = work.pop_front() {
            let rel = self.sys.normal_form(&rel);
            if rel.is_zero() {
                continue;
            }
            let id = self.sys.next_id();
            let rule = match Rule::orient(id, &rel, self.sys.order()) {
                Ok(Some(rule)) => rule,
                Ok(None) => continue,
                Err(RewriteError::Linear(LinearError::IncomparableLeading { .. })) => {
                    return Err(rel)
                }
                Err(e) => panic!("normalized relation failed to orient: {e}"),
            };
            self.sys.push(rule).expect("fresh id");
            first.get_or_insert(id);
            if self.config.inter_reduce {
                work.extend(self.inter_reduce(id));
            }
            self.enqueue_overlaps(id);
        }
        Ok(first)
    }

    /// Deletes rules whose left side the new rule reduces (returning their
    /// relations) and normalizes right sides.
    fn inter_reduce(&mut self, new: RuleId) -> Vec<LinComb> {
        let mut orphaned = Vec::new();
        let ids: Vec<RuleId> = self.sys.rules().iter().map(Rule::id).collect();
        for id in ids {
            if id == new {
                continue;
            }
            let rule = self.sys.rule(id).expect("live").clone();
            let reducible_by_other = self
                .sys
                .find_redexes(rule.lhs())
                .iter()
                .any(|r| r.rule != id);
            if reducible_by_other {
                self.sys.remove(id).expect("live");
                self.pending
                    .retain(|_, a| a.left.rule != id && a.right.rule != id);
                orphaned.push(
                    LinComb::monomial(rule.lhs().clone())
                        .sub(rule.rhs())
                        .expect("same arity"),
                );
            } else if !self.sys.is_irreducible(rule.rhs()) {
                let rhs = self.sys.normal_form(rule.rhs());
                self.sys
                    .replace_rhs(id, rhs)
                    .expect("normal forms stay below");
            }
        }
        orphaned
    }

    fn enqueue_overlaps(&mut self, id: RuleId) {
        let new = self.sys.rule(id).expect("live").clone();
        let others: Vec<Rule> = self.sys.rules().to_vec();
        for other in &others {
            for amb in overlaps(&new, other) {
                if amb.order() <= self.config.max_order {
                    self.pending.insert(amb.queue_key(), amb);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rulefile::{parse_sum, RuleFile};

    fn system(text: &str) -> RewritingSystem {
        RewritingSystem::from_rule_file(&RuleFile::parse(text).unwrap(), None).unwrap()
    }

    fn show(c: &Context) -> String {
        c.show(&Signature::hom()).to_string()
    }

    #[test]
    fn assoc_has_one_critical_ambiguity() {
        let sys = system("order right_comb\nm 1 m 2 3 -> m m 1 2 3\n");
        let r = &sys.rules()[0];
        let a = overlaps(r, r);
        assert_eq!(a.len(), 1);
        assert_eq!(show(&a[0].site), "m 1 m 2 m 3 4");
        assert_eq!(resolve(&a[0], &sys), Resolution::Resolved);
    }

    #[test]
    fn homass_self_overlap_gives_second_rule() {
        let sys = system("m a 1 m 2 3 -> m m 1 2 a 3\n");
        let r = &sys.rules()[0];
        let a = overlaps(r, r);
        assert_eq!(a.len(), 1);
        assert_eq!(show(&a[0].site), "m a 1 m a 2 m 3 4");
        let expected = parse_sum("m m 1 a 2 a m 3 4 - m m 1 m 2 3 a a 4", sys.signature()).unwrap();
        assert_eq!(resolve(&a[0], &sys), Resolution::Candidate(expected));
    }

    #[test]
    fn disjoint_symbols_do_not_overlap() {
        let sys = system("op m 2\nop a 1\nop b 1\norder lex:m,a,b\na a 1 -> 0\nb b 1 -> 0\n");
        assert!(overlaps(&sys.rules()[0], &sys.rules()[1]).is_empty());
        assert_eq!(overlaps(&sys.rules()[0], &sys.rules()[0]).len(), 1);
    }

    #[test]
    fn leibniz_self_ambiguity_resolves() {
        let sys = system("order right_comb\nm 1 m 2 3 -> m m 1 2 3 - m m 1 3 2\n");
        let r = &sys.rules()[0];
        let a = overlaps(r, r);
        assert_eq!(a.len(), 1);
        assert_eq!(resolve(&a[0], &sys), Resolution::Resolved);
    }

    #[test]
    fn small_censuses() {
        let cfg = CompletionConfig {
            max_order: 9,
            ..Default::default()
        };
        let st = complete(&system("m a 1 m 2 3 -> m m 1 2 a 3\n"), &cfg).unwrap();
        assert_eq!(st.status, Status::Complete);
        assert_eq!(
            st.census().into_iter().collect::<Vec<_>>(),
            vec![(3, 1), (5, 1), (7, 1), (8, 2), (9, 1)]
        );
        let st = complete(&system("order right_comb\nm 1 m 2 3 -> m m 1 2 3\n"), &cfg).unwrap();
        assert_eq!(st.census().into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
        let empty = RewritingSystem::new(Signature::hom(), crate::order::TermOrder::lex_ma());
        assert!(complete(&empty, &cfg).unwrap().census().is_empty());
    }

    #[test]
    fn inhomogeneous_input_needs_opt_in() {
        let sys = system("order deglex:m,a\na m 1 2 -> m 1 2\n");
        let cfg = CompletionConfig::default();
        assert!(matches!(
            complete(&sys, &cfg),
            Err(CompletionError::Inhomogeneous(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = CompletionConfig {
            max_order: 12,
            max_steps: Some(3),
            ..Default::default()
        };
        let st = complete(&system("m a 1 m 2 3 -> m m 1 2 a 3\n"), &cfg).unwrap();
        assert_eq!(st.status, Status::BudgetExhausted);
    }
}
