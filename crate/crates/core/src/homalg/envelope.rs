use std::fmt;

use crate::linear::LinComb;
use crate::order::TermOrder;
use crate::rewrite::{RewritingSystem, Rule, RuleId};
use crate::scalar::Scalar;
use crate::term::{Context, Signature, Symbol};

use super::bracket::BracketAlgebra;
use super::HomAlgError;

/// A presentation of the enveloping hom-associative algebra of a hom-Lie
/// algebra: one constant per basis element, ground rules for `α` and the
/// commutators, and hom-associativity. Oriented by `deglex` with
/// `m < a < c_1 < .. < c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopePresentation {
    pub signature: Signature,
    pub order: TermOrder,
    pub ground: Vec<Rule>,
    pub hom_associativity: Rule,
}

impl EnvelopePresentation {
    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.ground
            .iter()
            .chain(std::iter::once(&self.hom_associativity))
    }

    pub fn system(&self) -> RewritingSystem {
        let mut sys = RewritingSystem::new(self.signature.clone(), self.order.clone());
        for r in self.rules() {
            sys.add(r.lhs().clone(), r.rhs().clone())
                .expect("rules were oriented under this order");
        }
        sys
    }
}

/// Rule-file text; parses back to the same rules.
impl fmt::Display for EnvelopePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signature)?;
        writeln!(f, "order {}", self.order)?;
        for r in self.rules() {
            writeln!(f, "{}", r.show(&self.signature))?;
        }
        Ok(())
    }
}

pub fn envelope_presentation(
    l: &BracketAlgebra,
    names: &[&str],
) -> Result<EnvelopePresentation, HomAlgError> {
    let alg = l.algebra();
    let n = alg.dim();
    if names.len() != n {
        return Err(HomAlgError::Shape(format!(
            "{} names for a {n}-dimensional algebra",
            names.len()
        )));
    }
    let mut sig = Signature::hom();
    let consts: Vec<Symbol> = names
        .iter()
        .map(|name| sig.add(name, 0))
        .collect::<Result<_, _>>()?;
    let m = sig.lookup("m").expect("hom signature");
    let a = sig.lookup("a").expect("hom signature");
    let mut ranking = vec!["m", "a"];
    ranking.extend(names.iter().copied());
    let order_name = format!("deglex:{}", ranking.join(","));
    let order = TermOrder::table(&order_name, &ranking, &sig, true)?;

    let c = |i: usize| Context::apply(consts[i], &[]).expect("constant");
    let combination = |v: &[Scalar]| {
        LinComb::from_terms(0, v.iter().enumerate().map(|(k, x)| (x.clone(), c(k))))
            .expect("arity 0")
    };
    let mut ground = Vec::new();
    let mut next = 1u32;
    let mut push = |relation: LinComb, ground: &mut Vec<Rule>| -> Result<(), HomAlgError> {
        if let Some(r) = Rule::orient(RuleId(next), &relation, &order)? {
            ground.push(r);
            next += 1;
        }
        Ok(())
    };

    let alpha = alg.alpha_matrix();
    for i in 0..n {
        let image: Vec<Scalar> = alpha.iter().map(|row| row[i].clone()).collect();
        let lhs = Context::apply(a, &[c(i)])?;
        let relation = LinComb::monomial(lhs).sub(&combination(&image))?;
        push(relation, &mut ground)?;
    }
    for i in 0..n {
        for j in i + 1..n {
            let mij = LinComb::monomial(Context::apply(m, &[c(i), c(j)])?);
            let mji = LinComb::monomial(Context::apply(m, &[c(j), c(i)])?);
            let relation = mij.sub(&mji)?.sub(&combination(alg.product(i, j)))?;
            push(relation, &mut ground)?;
        }
    }

    let lhs = Context::parse("m a 1 m 2 3", &sig)?;
    let rhs = LinComb::monomial(Context::parse("m m 1 2 a 3", &sig)?);
    let hom_associativity = Rule::new(RuleId(next), lhs, rhs, &order)?;
    Ok(EnvelopePresentation {
        signature: sig,
        order,
        ground,
        hom_associativity,
    })
}
