//! Congruence closure and exact ground entailment over first-order terms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::floor::{FoLiteral, FoSym, FoTerm};

/// Union-find over the subterm-closed set of registered terms, kept closed
/// under congruence.
#[derive(Clone, Debug, Default)]
pub struct Congruence {
    ids: HashMap<FoTerm, usize>,
    nodes: Vec<(FoSym, Vec<usize>)>,
    parent: Vec<usize>,
}

impl Congruence {
    pub fn new() -> Congruence {
        Congruence::default()
    }

    pub fn add(&mut self, t: &FoTerm) -> usize {
        if let Some(&i) = self.ids.get(t) {
            return i;
        }
        let args: Vec<usize> = t.args().iter().map(|a| self.add(a)).collect();
        let i = self.nodes.len();
        self.nodes.push((t.sym().clone(), args));
        self.parent.push(i);
        self.ids.insert(t.clone(), i);
        // A new node may be congruent to an existing one.
        self.close();
        i
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[a.max(b)] = a.min(b);
        true
    }

    fn close(&mut self) {
        loop {
            let mut table: HashMap<(FoSym, Vec<usize>), usize> = HashMap::new();
            let mut merges = Vec::new();
            for (i, (sym, args)) in self.nodes.iter().enumerate() {
                let key = (sym.clone(), args.iter().map(|&a| self.find(a)).collect());
                match table.get(&key) {
                    Some(&j) => merges.push((i, j)),
                    None => {
                        table.insert(key, i);
                    }
                }
            }
            let mut changed = false;
            for (i, j) in merges {
                changed |= self.union(i, j);
            }
            if !changed {
                return;
            }
        }
    }

    pub fn merge(&mut self, s: &FoTerm, t: &FoTerm) {
        let (a, b) = (self.add(s), self.add(t));
        if self.union(a, b) {
            self.close();
        }
    }

    pub fn equal(&mut self, s: &FoTerm, t: &FoTerm) -> bool {
        let (a, b) = (self.add(s), self.add(t));
        self.find(a) == self.find(b)
    }
}

/// Search nodes allowed before giving up with [`Error::TooLarge`].
const NODE_LIMIT: usize = 200_000;
const ATOM_LIMIT: usize = 64;

/// Decides whether the ground clauses are satisfiable in some first-order
/// interpretation. Exact: picks one literal per clause by backtracking and
/// checks each partial choice with congruence closure.
pub fn satisfiable(clauses: &[Vec<FoLiteral>]) -> Result<bool> {
    let atoms: usize = clauses.iter().map(Vec::len).sum();
    if atoms > ATOM_LIMIT {
        return Err(Error::TooLarge(format!("{atoms} literals")));
    }
    let mut clauses: Vec<&Vec<FoLiteral>> = clauses.iter().collect();
    clauses.sort_by_key(|c| c.len());
    let mut chosen = Vec::new();
    let mut nodes = 0;
    search(&clauses, &mut chosen, &mut nodes)
}

fn consistent(chosen: &[&FoLiteral]) -> bool {
    let mut cc = Congruence::new();
    for l in chosen.iter().filter(|l| l.positive) {
        cc.merge(&l.lhs, &l.rhs);
    }
    chosen.iter().filter(|l| !l.positive).all(|l| !cc.equal(&l.lhs, &l.rhs))
}

fn search<'a>(clauses: &[&'a Vec<FoLiteral>], chosen: &mut Vec<&'a FoLiteral>, nodes: &mut usize) -> Result<bool> {
    *nodes += 1;
    if *nodes > NODE_LIMIT {
        return Err(Error::TooLarge(format!("more than {NODE_LIMIT} search nodes")));
    }
    let Some((c, rest)) = clauses.split_first() else {
        return Ok(true);
    };
    for l in c.iter() {
        chosen.push(l);
        if consistent(chosen) && search(rest, chosen, nodes)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Whether every first-order model of `premises` satisfies `goal`.
pub fn ground_entails(premises: &[Vec<FoLiteral>], goal: &[FoLiteral]) -> Result<bool> {
    let mut all = premises.to_vec();
    for l in goal {
        all.push(vec![FoLiteral { lhs: l.lhs.clone(), rhs: l.rhs.clone(), positive: !l.positive }]);
    }
    Ok(!satisfiable(&all)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{name, Type};

    fn sym(n: &str, arity: usize) -> FoSym {
        FoSym { name: name(n), arity, ty_args: Vec::new(), head_ty: Type::base("k") }
    }

    fn c(n: &str) -> FoTerm {
        FoTerm::new(sym(n, 0), Vec::new())
    }

    fn ap(n: &str, args: Vec<FoTerm>) -> FoTerm {
        FoTerm::new(sym(n, args.len()), args)
    }

    fn eq(s: FoTerm, t: FoTerm) -> FoLiteral {
        FoLiteral { lhs: s, rhs: t, positive: true }
    }

    fn neq(s: FoTerm, t: FoTerm) -> FoLiteral {
        FoLiteral { lhs: s, rhs: t, positive: false }
    }

    #[test]
    fn transitivity() {
        let prem = [vec![eq(c("a"), c("b"))], vec![eq(c("b"), c("c"))]];
        assert!(ground_entails(&prem, &[eq(c("a"), c("c"))]).unwrap());
    }

    #[test]
    fn no_argument_congruence_across_arities() {
        // f_1(a_0) = b_0 says nothing about the constant f_0.
        let prem = [vec![eq(ap("f", vec![c("a")]), c("b"))]];
        assert!(!ground_entails(&prem, &[eq(c("f"), c("g"))]).unwrap());
        let prem = [vec![eq(c("f"), c("h"))], vec![neq(ap("f", vec![c("a")]), ap("h", vec![c("a")]))]];
        assert!(satisfiable(&prem).unwrap());
    }

    #[test]
    fn reflexivity_from_nothing() {
        assert!(ground_entails(&[], &[eq(c("a"), c("a"))]).unwrap());
    }

    #[test]
    fn congruence_is_used() {
        let prem = [vec![eq(c("a"), c("b"))]];
        let goal = [eq(ap("f", vec![ap("f", vec![c("a")])]), ap("f", vec![ap("f", vec![c("b")])]))];
        assert!(ground_entails(&prem, &goal).unwrap());
    }

    #[test]
    fn case_split() {
        // (a = b or a = c), b = d, c = d entails a = d.
        let prem = [vec![eq(c("a"), c("b")), eq(c("a"), c("c"))], vec![eq(c("b"), c("d"))], vec![eq(c("c"), c("d"))]];
        assert!(ground_entails(&prem, &[eq(c("a"), c("d"))]).unwrap());
        assert!(!ground_entails(&prem[..1], &[eq(c("a"), c("b"))]).unwrap());
    }

    #[test]
    fn empty_clause_is_unsatisfiable() {
        assert!(!satisfiable(&[vec![]]).unwrap());
        assert!(satisfiable(&[]).unwrap());
    }

    #[test]
    fn too_large_is_an_error() {
        let big: Vec<Vec<FoLiteral>> = (0..70).map(|i| vec![eq(c(&format!("a{i}")), c("b"))]).collect();
        assert!(matches!(satisfiable(&big), Err(Error::TooLarge(_))));
    }
}
