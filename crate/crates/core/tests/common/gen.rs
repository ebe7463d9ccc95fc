//! Seeded random well-typed terms over a small fixed signature.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lfsup::clause::Literal;
use lfsup::frontend::ProblemFile;
use lfsup::term::{GreenPos, Term};
use lfsup::types::{Signature, Type};

pub const DECLS: &str = "type k.
val a : k. val b : k. val c : k.
val f : k > k. val g : k > k > k. val h : (k > k) > k.";

pub fn signature() -> Signature {
    ProblemFile::parse(DECLS).expect("test signature").sig
}

pub fn k() -> Type {
    Type::base("k")
}

pub fn kk() -> Type {
    Type::fun(k(), k())
}

pub struct Gen {
    pub rng: ChaCha8Rng,
    heads: Vec<Term>,
    vars: Vec<Term>,
    pub var_bias: f64,
}

impl Gen {
    pub fn new(rng: ChaCha8Rng) -> Gen {
        let sig = signature();
        let heads = sig
            .symbols
            .iter()
            .filter(|(n, _)| !Signature::is_builtin_symbol(n))
            .map(|(n, d)| Term::sym(n, vec![], d.body.clone()))
            .collect();
        let vars = vec![
            Term::mk_var("X", k()),
            Term::mk_var("Y", k()),
            Term::mk_var("Z", k()),
            Term::mk_var("F", kk()),
            Term::mk_var("G", kk()),
        ];
        Gen { rng, heads, vars, var_bias: 0.25 }
    }

    /// A term of type `ty` with argument nesting at most `depth`.
    pub fn term(&mut self, ty: &Type, depth: usize, with_vars: bool) -> Term {
        let mut options: Vec<(Term, Vec<Type>)> = Vec::new();
        let use_var = with_vars && self.rng.gen_bool(self.var_bias);
        let pool = if use_var { &self.vars } else { &self.heads };
        for h in pool {
            let (doms, _) = h.ty().split_all();
            for n in 0..=doms.len() {
                if depth == 0 && n > 0 {
                    break;
                }
                if let Some((ds, res)) = h.ty().peel(n) {
                    if res == ty {
                        options.push((h.clone(), ds.into_iter().cloned().collect()));
                    }
                }
            }
        }
        if options.is_empty() {
            return self.term(ty, depth, false);
        }
        let (h, doms) = options.choose(&mut self.rng).expect("nonempty").clone();
        let args: Vec<Term> = doms.iter().map(|d| self.term(d, depth.saturating_sub(1), with_vars)).collect();
        h.apply(&args).expect("well-typed")
    }

    pub fn ground(&mut self, depth: usize) -> Term {
        let ty = if self.rng.gen_bool(0.8) { k() } else { kk() };
        self.term(&ty, depth, false)
    }

    pub fn literal(&mut self, depth: usize, with_vars: bool) -> Literal {
        let ty = if self.rng.gen_bool(0.8) { k() } else { kk() };
        let (s, t) = (self.term(&ty, depth, with_vars), self.term(&ty, depth, with_vars));
        Literal::new(s, t, self.rng.gen_bool(0.6)).expect("same type")
    }

    pub fn clause(&mut self, max_lits: usize, depth: usize, with_vars: bool) -> Vec<Literal> {
        let n = self.rng.gen_range(1..=max_lits);
        (0..n).map(|_| self.literal(depth, with_vars)).collect()
    }

    /// Random green position of `t` together with the subterm there.
    pub fn green_position(&mut self, t: &Term) -> (GreenPos, Term) {
        let all = t.green_subterms();
        all.choose(&mut self.rng).expect("root is green").clone()
    }
}
