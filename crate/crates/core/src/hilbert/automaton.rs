use std::collections::HashMap;
use std::fmt;

use crate::term::{Context, Token};

use super::grammar::{Production, TreeGrammar, REDUCIBLE};

/// A deterministic bottom-up automaton whose states are sets of grammar
/// states, each stored as a sorted list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottomUpAutomaton {
    states: Vec<Vec<usize>>,
    leaf: usize,
    f_a: Vec<usize>,
    f_m: Vec<Vec<usize>>,
}

impl BottomUpAutomaton {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    pub fn state_index(&self, set: &[usize]) -> Option<usize> {
        self.states.iter().position(|s| s == set)
    }

    pub fn leaf_state(&self) -> usize {
        self.leaf
    }

    pub fn f_a(&self, s: usize) -> usize {
        self.f_a[s]
    }

    pub fn f_m(&self, s: usize, t: usize) -> usize {
        self.f_m[s][t]
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.states[s].contains(&REDUCIBLE)
    }

    /// The state reached by `t`; boxes start in the leaf state.
    pub fn run(&self, t: &Context) -> usize {
        let mut stack: Vec<usize> = Vec::new();
        for tok in t.word().iter().rev() {
            let s = match *tok {
                Token::Box(_) => self.leaf,
                Token::Op(sym) if sym.arity() == 1 => {
                    let c = stack.pop().expect("well-formed");
                    self.f_a[c]
                }
                Token::Op(_) => {
                    let c: usize = stack.pop().expect("well-formed");
                    let d: usize = stack.pop().expect("well-formed");
                    self.f_m[c][d]
                }
            };
            stack.push(s);
        }
        stack.pop().expect("nonempty word")
    }

    /// Whether `t` is reducible by the rules the grammar was built from.
    pub fn accepts(&self, t: &Context) -> bool {
        self.is_accepting(self.run(t))
    }

    /// Plain-text tables: state list, `f_a` column and `f_m` matrix.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

fn show_set(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for BottomUpAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.states.iter().enumerate() {
            let mark = if self.is_accepting(i) { " *" } else { "" };
            writeln!(f, "q{i}\t{}{mark}", show_set(s))?;
        }
        writeln!(f, "leaf\tq{}", self.leaf)?;
        write!(f, "\tf_a")?;
        for j in 0..self.len() {
            write!(f, "\tq{j}")?;
        }
        writeln!(f)?;
        for i in 0..self.len() {
            write!(f, "q{i}\tq{}", self.f_a[i])?;
            for j in 0..self.len() {
                write!(f, "\tq{}", self.f_m[i][j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reachable subset construction. States are numbered in discovery order,
/// starting from the leaf state.
pub fn determinize(g: &TreeGrammar) -> BottomUpAutomaton {
    let n = g.len();
    let mut a_from: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut m_from: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut leaf = Vec::new();
    for q in 0..n {
        for p in g.productions(q) {
            match *p {
                Production::Leaf => leaf.push(q),
                Production::A(c) => a_from[c].push(q),
                Production::M(c, d) => m_from.entry((c, d)).or_default().push(q),
            }
        }
    }

    let mut states: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut intern = |set: Vec<usize>, states: &mut Vec<Vec<usize>>| -> usize {
        *index.entry(set.clone()).or_insert_with(|| {
            states.push(set);
            states.len() - 1
        })
    };
    let leaf = intern(leaf, &mut states);

    let mut f_a: Vec<usize> = Vec::new();
    let mut f_m: Vec<Vec<usize>> = Vec::new();
    // Rows and columns below `done` are complete.
    let mut done = 0;
    while done < states.len() {
        let s = done;
        let image = sorted_union(states[s].iter().flat_map(|&c| a_from[c].iter().copied()));
        let t = intern(image, &mut states);
        f_a.push(t);
        f_m.push(Vec::new());
        for u in 0..=s {
            for (x, y) in [(s, u), (u, s)] {
                let mut image = Vec::new();
                for c in &states[x] {
                    for d in &states[y] {
                        if let Some(qs) = m_from.get(&(*c, *d)) {
                            image.extend_from_slice(qs);
                        }
                    }
                }
                let image = sorted_union(image.into_iter());
                let t = intern(image, &mut states);
                set_entry(&mut f_m, x, y, t);
            }
        }
        done += 1;
    }
    BottomUpAutomaton {
        states,
        leaf,
        f_a,
        f_m,
    }
}

fn set_entry(table: &mut [Vec<usize>], x: usize, y: usize, v: usize) {
    let row = &mut table[x];
    if row.len() <= y {
        row.resize(y + 1, usize::MAX);
    }
    row[y] = v;
}

fn sorted_union(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}
