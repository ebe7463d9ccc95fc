use crate::clause::{lits_type_vars, lits_vars, Clause, Fresh, Literal};
use crate::subst::Substitution;
use crate::term::{Head, Term, Var};
use crate::types::{Name, Type, DIFF};
use crate::unify::{mgu, rename_apart};

use super::{purify_ext, purify_int, Calculus, Inference, Rule};

fn without(lits: &[Literal], skip: &[usize]) -> Vec<Literal> {
    lits.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, l)| l.clone()).collect()
}

/// `X (diff<A,B> X Y) != Y (diff<A,B> X Y) | X = Y`
pub fn ext_axiom() -> Vec<Literal> {
    let (a, b) = (Type::var("A"), Type::var("B"));
    let ab = Type::fun(a.clone(), b);
    let x = Term::mk_var("X", ab.clone());
    let y = Term::mk_var("Y", ab.clone());
    let diff = Term::sym(DIFF, vec![a.clone(), Type::var("B")], Type::arrows([ab.clone(), ab], a));
    let d = diff.apply(&[x.clone(), y.clone()]).expect("well-typed");
    vec![
        Literal::neq(x.apply(std::slice::from_ref(&d)).expect("well-typed"), y.apply(&[d]).expect("well-typed")),
        Literal::eq(x, y),
    ]
}

impl Calculus {
    /// Purifies according to the calculus (identity when nonpurifying).
    pub fn purify(&self, lits: &[Literal], fresh: &mut Fresh) -> Vec<Literal> {
        match (self.cfg.purifying, self.cfg.extensional) {
            (false, _) => lits.to_vec(),
            (true, false) => purify_int(lits, fresh),
            (true, true) => purify_ext(lits, fresh),
        }
    }

    fn finish(
        &self,
        rule: Rule,
        premises: Vec<usize>,
        subst: Substitution,
        conclusion: Vec<Literal>,
        instances: Vec<Vec<Literal>>,
        fresh: &mut Fresh,
    ) -> Inference {
        let (conclusion, purified) = if self.cfg.purifying && rule != Rule::PosExt {
            let p = self.purify(&conclusion, fresh);
            let changed = p.len() != conclusion.len();
            (p, changed)
        } else {
            (conclusion, false)
        };
        Inference { rule, premises, subst, conclusion, instances, purified, skolem: None }
    }

    /// All inferences with `given` and a clause of `others` (including
    /// `given` itself when present there), plus the unary ones on `given`.
    pub fn generate(&self, given: &Clause, others: &[&Clause], fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = Vec::new();
        for o in others {
            out.extend(self.superposition(given, o, fresh));
            if o.id != given.id {
                out.extend(self.superposition(o, given, fresh));
            }
        }
        out.extend(self.unary(given, fresh));
        out
    }

    /// Single-premise inferences except NegExt and the infinite ArgCong tail.
    pub fn unary(&self, c: &Clause, fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = self.equality_resolution(c, fresh);
        out.extend(self.equality_factoring(c, fresh));
        out.extend(self.arg_cong(c, fresh));
        if self.cfg.extensional {
            out.extend(self.pos_ext(c, fresh));
        }
        out
    }

    pub fn superposition(&self, d: &Clause, c: &Clause, fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = Vec::new();
        let (dl, _) = rename_apart(&c.lits, &d.lits, fresh);
        for (i, dlit) in dl.iter().enumerate().filter(|(_, l)| l.positive) {
            for (t, t2) in dlit.orientations() {
                if self.ord.compare(t, t2).is_le() {
                    continue;
                }
                for (j, clit) in c.lits.iter().enumerate() {
                    for (s, s2) in clit.orientations() {
                        for (pos, u) in s.green_subterms() {
                            if u.is_var() && self.cfg.purifying && !self.cfg.extensional {
                                continue;
                            }
                            let Ok(sigma) = mgu(t, &u) else { continue };
                            let inst = |x: &Term| sigma.apply(x);
                            let (Ok(ts), Ok(t2s), Ok(ss), Ok(s2s)) = (inst(t), inst(t2), inst(s), inst(s2)) else {
                                continue;
                            };
                            if self.ord.compare(&ts, &t2s).is_le() || self.ord.compare(&ss, &s2s).is_le() {
                                continue;
                            }
                            if !self.eligible(&dl, i, &sigma, true) || !self.eligible(&c.lits, j, &sigma, clit.positive)
                            {
                                continue;
                            }
                            if !self.variable_condition(&dl, i, t, t2, &c.lits, &u, &sigma) {
                                continue;
                            }
                            let Ok(replaced) = ss.replace_green(&pos, &t2s) else { continue };
                            let Ok(mut concl) = sigma.apply_lits(&without(&dl, &[i])) else { continue };
                            let Ok(rest) = sigma.apply_lits(&without(&c.lits, &[j])) else { continue };
                            concl.extend(rest);
                            concl.push(Literal::new(replaced, s2s, clit.positive).expect("same-typed sides"));
                            let instances = vec![
                                sigma.apply_lits(&dl).expect("instantiable"),
                                sigma.apply_lits(&c.lits).expect("instantiable"),
                            ];
                            out.push(self.finish(Rule::Sup, vec![d.id, c.id], sigma, concl, instances, fresh));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn equality_resolution(&self, c: &Clause, fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = Vec::new();
        for (j, l) in c.lits.iter().enumerate().filter(|(_, l)| !l.positive) {
            let Ok(sigma) = mgu(&l.lhs, &l.rhs) else { continue };
            if !self.eligible(&c.lits, j, &sigma, false) {
                continue;
            }
            let concl = sigma.apply_lits(&without(&c.lits, &[j])).expect("instantiable");
            let inst = vec![sigma.apply_lits(&c.lits).expect("instantiable")];
            out.push(self.finish(Rule::ERes, vec![c.id], sigma, concl, inst, fresh));
        }
        out
    }

    pub fn equality_factoring(&self, c: &Clause, fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = Vec::new();
        for (j, lj) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
            for (i, li) in c.lits.iter().enumerate().filter(|(i, l)| l.positive && *i != j) {
                for (s, t) in lj.orientations() {
                    for (s1, t1) in li.orientations() {
                        let Ok(sigma) = mgu(s, s1) else { continue };
                        let (Ok(ss), Ok(ts), Ok(t1s)) = (sigma.apply(s), sigma.apply(t), sigma.apply(t1)) else {
                            continue;
                        };
                        if self.ord.compare(&ss, &ts).is_le() || !self.eligible(&c.lits, j, &sigma, false) {
                            continue;
                        }
                        let mut concl = sigma.apply_lits(&without(&c.lits, &[i, j])).expect("instantiable");
                        concl.push(Literal::new(ts, t1s.clone(), false).expect("same-typed sides"));
                        concl.push(Literal::new(ss, t1s, true).expect("same-typed sides"));
                        let inst = vec![sigma.apply_lits(&c.lits).expect("instantiable")];
                        out.push(self.finish(Rule::EFact, vec![c.id], sigma, concl, inst, fresh));
                    }
                }
            }
        }
        out
    }

    fn arg_cong_conclusion(
        &self,
        c: &Clause,
        j: usize,
        sigma: Substitution,
        arg_tys: &[Type],
        fresh: &mut Fresh,
    ) -> Inference {
        let lits = sigma.apply_lits(&c.lits).expect("type instance");
        let xs: Vec<Term> = arg_tys.iter().map(|ty| Term::mk_var(&fresh.var_name(), sigma.apply_type(ty))).collect();
        let l = &lits[j];
        let mut concl = without(&lits, &[j]);
        concl.push(Literal::eq(l.lhs.apply(&xs).expect("well-typed"), l.rhs.apply(&xs).expect("well-typed")));
        self.finish(Rule::ArgCong, vec![c.id], sigma, concl, vec![lits], fresh)
    }

    /// The finitely many ArgCong conclusions that need no type instantiation.
    pub fn arg_cong(&self, c: &Clause, fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = Vec::new();
        for (j, l) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
            let (doms, _) = l.ty().split_all();
            if doms.is_empty() || !self.eligible(&c.lits, j, &Substitution::new(), true) {
                continue;
            }
            let doms: Vec<Type> = doms.into_iter().cloned().collect();
            for n in 1..=doms.len() {
                out.push(self.arg_cong_conclusion(c, j, Substitution::new(), &doms[..n], fresh));
            }
        }
        out
    }

    /// Literals whose result type is a type variable; each has an infinite
    /// sequence of ArgCong conclusions.
    pub fn arg_cong_streams(&self, c: &Clause) -> Vec<usize> {
        c.lits
            .iter()
            .enumerate()
            .filter(|(_, l)| l.positive && matches!(l.ty().split_all().1, Type::Var(_)))
            .map(|(j, _)| j)
            .collect()
    }

    /// The `k`-th (k >= 1) conclusion of the infinite sequence for literal
    /// `j`: the result type variable becomes `a1 > ... > ak > b`.
    pub fn arg_cong_instance(&self, c: &Clause, j: usize, k: usize, fresh: &mut Fresh) -> Option<Inference> {
        let l = c.lits.get(j)?;
        let (doms, res) = l.ty().split_all();
        let Type::Var(beta) = res else { return None };
        let alphas: Vec<Type> = (0..k).map(|_| Type::Var(fresh.type_var_name())).collect();
        let beta2 = Type::Var(fresh.type_var_name());
        let mut sigma = Substitution::new();
        sigma.bind_type(beta.clone(), Type::arrows(alphas.iter().cloned(), beta2));
        if !self.eligible(&c.lits, j, &sigma, true) {
            return None;
        }
        let mut tys: Vec<Type> = doms.into_iter().cloned().collect();
        tys.extend(alphas);
        Some(self.arg_cong_conclusion(c, j, sigma, &tys, fresh))
    }

    pub fn pos_ext(&self, c: &Clause, fresh: &mut Fresh) -> Vec<Inference> {
        let mut out = Vec::new();
        for (j, l) in c.lits.iter().enumerate().filter(|(_, l)| l.positive) {
            if !self.eligible(&c.lits, j, &Substitution::new(), true) {
                continue;
            }
            let rest = without(&c.lits, &[j]);
            let (la, ra) = (l.lhs.args(), l.rhs.args());
            let mut seen: Vec<&Name> = Vec::new();
            for n in 1..=la.len().min(ra.len()) {
                let (a, b) = (&la[la.len() - n], &ra[ra.len() - n]);
                let Some(x) = a.as_var() else { break };
                if a != b || seen.contains(&&x.name) {
                    break;
                }
                seen.push(&x.name);
                let (s, s2) = (l.lhs.strip(n), l.rhs.strip(n));
                let occurs = seen.iter().any(|y| {
                    s.has_var(y) || s2.has_var(y) || rest.iter().any(|r| r.lhs.has_var(y) || r.rhs.has_var(y))
                });
                if occurs {
                    break;
                }
                let mut concl = rest.clone();
                concl.push(Literal::eq(s, s2));
                out.push(self.finish(
                    Rule::PosExt,
                    vec![c.id],
                    Substitution::new(),
                    concl,
                    vec![c.lits.clone()],
                    fresh,
                ));
            }
        }
        out
    }

    /// Negative extensionality. Skolems are fresh unless `skolem` is given
    /// (used when replaying a recorded inference).
    pub fn neg_ext(&self, c: &Clause, fresh: &mut Fresh, skolem: Option<&Name>) -> Vec<Inference> {
        let mut out = Vec::new();
        for (j, l) in c.lits.iter().enumerate().filter(|(_, l)| !l.positive) {
            let Some((dom, _)) = l.ty().as_fun() else { continue };
            if !self.eligible(&c.lits, j, &Substitution::new(), false) {
                continue;
            }
            let one = std::slice::from_ref(l);
            let tvs: Vec<Type> = lits_type_vars(one).into_iter().map(Type::Var).collect();
            let vars: Vec<Term> = lits_vars(one).into_iter().map(|(n, ty)| Term::var(Var { name: n, ty })).collect();
            let sk = skolem.cloned().unwrap_or_else(|| fresh.skolem_name());
            let sk_ty = Type::arrows(vars.iter().map(|v| v.ty().clone()), dom.clone());
            let head = Head::Sym { name: sk.clone(), ty_args: tvs, ty: sk_ty };
            let skt = Term::new(head, vars).expect("well-typed");
            let mut concl = without(&c.lits, &[j]);
            concl.push(Literal::neq(
                l.lhs.apply(std::slice::from_ref(&skt)).expect("well-typed"),
                l.rhs.apply(std::slice::from_ref(&skt)).expect("well-typed"),
            ));
            let mut inf =
                self.finish(Rule::NegExt, vec![c.id], Substitution::new(), concl, vec![c.lits.clone()], fresh);
            inf.skolem = Some(sk);
            out.push(inf);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::CalculusConfig;
    use crate::clause::DisplayLits;
    use crate::frontend::ProblemFile;
    use crate::orders::{OrderConfig, Precedence};

    const SIG: &str = "type k. val a : k. val b : k. val c : k.";

    fn setup(decls: &str, clauses: &str, prec: &str, cfg: CalculusConfig) -> (Calculus, Vec<Clause>) {
        let p = ProblemFile::parse(&format!("{SIG} {decls} {clauses}")).unwrap();
        let cls = p.input_clauses().into_iter().enumerate().map(|(i, l)| Clause::with_id(l, i)).collect();
        (Calculus::new(cfg, OrderConfig::lpo(Precedence::parse(prec).unwrap())), cls)
    }

    fn shown(infs: &[Inference]) -> Vec<String> {
        infs.iter().map(|i| DisplayLits(&i.conclusion).to_string()).collect()
    }

    fn int() -> CalculusConfig {
        CalculusConfig::new(false, false)
    }

    #[test]
    fn first_order_superposition() {
        let (cal, cs) = setup("val f : k > k.", "clause a = b. clause f a = c.", "f>c>a>b", int());
        let infs = cal.superposition(&cs[0], &cs[1], &mut Fresh::new());
        assert_eq!(shown(&infs), ["f b = c"]);
        assert_eq!(infs[0].rule, Rule::Sup);
        assert_eq!(infs[0].premises, vec![0, 1]);
        // not into the smaller side
        assert!(cal.superposition(&cs[1], &cs[0], &mut Fresh::new()).is_empty());
    }

    #[test]
    fn superposition_into_applied_variable() {
        // y (f a) = c with f a = b: the applied variable's argument is green
        let (cal, cs) = setup("val f : k > k.", "clause f a = b. clause Y (f a) = c.", "f>c>b>a", int());
        let infs = cal.superposition(&cs[0], &cs[1], &mut Fresh::new());
        assert!(shown(&infs).contains(&"Y b = c".to_string()), "{:?}", shown(&infs));
    }

    #[test]
    fn arg_cong_conclusions() {
        let (cal, cs) = setup("val f : k > k > k. val g : k > k > k.", "clause g = f.", "g>f", int());
        let infs = cal.arg_cong(&cs[0], &mut Fresh::new());
        assert_eq!(shown(&infs), ["g x#1 = f x#1", "g x#2 x#3 = f x#2 x#3"]);
        assert!(cal.arg_cong_streams(&cs[0]).is_empty());
    }

    #[test]
    fn arg_cong_stream_for_type_variable_result() {
        let (cal, cs) = setup("val id : pi a. a > a.", "clause id = id.", "id", int());
        assert_eq!(cal.arg_cong_streams(&cs[0]), vec![0]);
        let mut fresh = Fresh::new();
        let one = cal.arg_cong_instance(&cs[0], 0, 1, &mut fresh).unwrap();
        assert_eq!(one.conclusion[0].lhs.args().len(), 2);
        let three = cal.arg_cong_instance(&cs[0], 0, 3, &mut fresh).unwrap();
        assert_eq!(three.conclusion[0].lhs.args().len(), 4);
    }

    #[test]
    fn positive_extensionality() {
        let cfg = CalculusConfig::new(true, false);
        let (cal, cs) = setup("val f : k > k > k. val g : k > k > k.", "clause g X Y = f X Y.", "g>f", cfg);
        let infs = cal.pos_ext(&cs[0], &mut Fresh::new());
        assert_eq!(shown(&infs), ["g X = f X", "g = f"]);
        // a variable shared with the stripped prefix blocks the rule
        let (cal, cs) = setup("val f : k > k > k. val g : k > k > k.", "clause g X X = f X X.", "g>f", cfg);
        assert!(cal.pos_ext(&cs[0], &mut Fresh::new()).is_empty());
    }

    #[test]
    fn negative_extensionality() {
        let cfg = CalculusConfig::new(true, false);
        let (cal, cs) = setup("val f : k > k. val g : k > k.", "clause g != f.", "g>f", cfg);
        let infs = cal.neg_ext(&cs[0], &mut Fresh::new(), None);
        assert_eq!(shown(&infs), ["g sk#1 != f sk#1"]);
        assert_eq!(infs[0].skolem.as_deref(), Some("sk#1"));
        let named = cal.neg_ext(&cs[0], &mut Fresh::new(), Some(&Name::from("sk#7")));
        assert_eq!(shown(&named), ["g sk#7 != f sk#7"]);
    }

    #[test]
    fn equality_resolution_and_factoring() {
        let (cal, cs) = setup("", "clause X != a. clause a = b | a = b.", "a>b", int());
        let res = cal.equality_resolution(&cs[0], &mut Fresh::new());
        assert_eq!(shown(&res), ["$false"]);
        let fac = cal.equality_factoring(&cs[1], &mut Fresh::new());
        assert!(shown(&fac).iter().all(|s| s == "b != b | a = b"));
        assert!(!fac.is_empty());
    }

    #[test]
    fn blocked_superposition_into_applied_variable() {
        // h x = f x into g (y b) y = a
        let decls = "val f : k > k. val g : k > (k > k) > k. val h : k > k.";
        let cls = "clause h X = f X. clause g (Y b) Y = a.";
        let (cal, cs) = setup(decls, cls, "h>g>f>b>a", int());
        let infs = cal.superposition(&cs[0], &cs[1], &mut Fresh::new());
        assert_eq!(shown(&infs), ["g (f b) h = a"]);
        let (cal, cs) = setup(decls, cls, "h>g>f>b>a", CalculusConfig::new(true, false));
        assert!(cal.superposition(&cs[0], &cs[1], &mut Fresh::new()).is_empty());
    }

    #[test]
    fn ext_axiom_shape() {
        assert_eq!(DisplayLits(&ext_axiom()).to_string(), "X (diff<A,B> X Y) != Y (diff<A,B> X Y) | X = Y");
    }

    #[test]
    fn purifying_conclusions() {
        let (cal, cs) = setup(
            "val f : k > k. val g : (k > k) > k.",
            "clause f a = b. clause Y (f a) = g Y.",
            "g>f>b>a",
            CalculusConfig::new(false, true),
        );
        let infs = cal.superposition(&cs[0], &cs[1], &mut Fresh::new());
        assert!(infs.iter().all(|i| i.purified), "{:?}", shown(&infs));
        assert_eq!(shown(&infs), ["Y b = g x#1 | x#1 != Y"]);
    }
}
