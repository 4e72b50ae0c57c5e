//! Counting irreducible plane monomials over `{m/2, a/1}` by grading.
//!
//! A finite rule set is compiled into a top-down grammar for the reducible
//! monomials, determinized bottom-up, and the resulting generating-function
//! system is solved coefficientwise.

mod automaton;
mod grammar;
mod series;

pub use automaton::{determinize, BottomUpAutomaton};
pub use grammar::{grammar_from_rules, Production, TreeGrammar, ANY, REDUCIBLE};
pub use series::{free_coefficient, free_series, series_sub, solve_series, BivariateSeries};

use std::collections::BTreeSet;

use crate::completion::{overlaps, resolve, Resolution};
use crate::rewrite::RewritingSystem;
use crate::term::Context;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("symbol `{0}` is not supported (need exactly one unary and one binary operation)")]
    UnsupportedSymbol(String),
    #[error("rule lhs {0:?} is not plane")]
    NotPlane(Context),
    #[error("rule lhs is a bare box")]
    TrivialLhs,
}

/// A Hilbert series together with the total degrees at which the rule set
/// is not yet known to be confluent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub series: BivariateSeries,
    /// Degrees `d <= degree` with an unresolved ambiguity of order `<= d`.
    pub unstable_degrees: Vec<usize>,
}

impl HilbertSeries {
    pub fn is_stable(&self) -> bool {
        self.unstable_degrees.is_empty()
    }
}

/// The automaton recognising monomials reducible by some rule of `sys`.
pub fn automaton_for(sys: &RewritingSystem) -> Result<BottomUpAutomaton, HilbertError> {
    let g = grammar_from_rules(sys.signature(), sys.rules().iter().map(|r| r.lhs()))?;
    Ok(determinize(&g))
}

/// Sums `G_b` over the non-accepting states. Coefficients of degree `d` are
/// exact for the quotient when every ambiguity of order `<= d` resolves,
/// which is checked here and reported through `unstable_degrees`.
pub fn hilbert_series(sys: &RewritingSystem, degree: usize) -> Result<HilbertSeries, HilbertError> {
    let aut = automaton_for(sys)?;
    let g = solve_series(&aut, degree);
    let mut series = BivariateSeries::zero(degree);
    for (b, gb) in g.iter().enumerate() {
        if !aut.is_accepting(b) {
            series = series.add(gb);
        }
    }
    let first_bad = unresolved_orders(sys, degree).into_iter().next();
    let unstable_degrees = match first_bad {
        Some(o) => (o..=degree).collect(),
        None => Vec::new(),
    };
    Ok(HilbertSeries {
        series,
        unstable_degrees,
    })
}

/// Orders `<= max_order` of ambiguities of `sys` that do not resolve.
pub fn unresolved_orders(sys: &RewritingSystem, max_order: usize) -> BTreeSet<usize> {
    let mut bad = BTreeSet::new();
    let rules = sys.rules();
    for (i, r1) in rules.iter().enumerate() {
        for r2 in &rules[i..] {
            let mut ambs = overlaps(r1, r2);
            if r1.id() != r2.id() {
                ambs.extend(overlaps(r2, r1));
            }
            for amb in ambs {
                if amb.order() <= max_order
                    && !bad.contains(&amb.order())
                    && resolve(&amb, sys) != Resolution::Resolved
                {
                    bad.insert(amb.order());
                }
            }
        }
    }
    bad
}
