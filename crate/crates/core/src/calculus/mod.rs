//! The four inference systems: intensional or extensional, purifying or
//! nonpurifying.

mod purify;
mod rules;
mod varcond;

use std::fmt;

use crate::clause::{ClauseId, Literal};
use crate::error::{Error, Result};
use crate::orders::{Comparison, OrderConfig};
use crate::subst::Substitution;
use crate::term::Term;
use crate::types::Name;

pub use purify::{purify_ext, purify_int};
pub use rules::ext_axiom;
pub use varcond::jells;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Selection {
    #[default]
    None,
    /// Select one maximal negative literal among those allowed.
    MaximalNegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CalculusConfig {
    pub extensional: bool,
    pub purifying: bool,
    pub neg_ext: bool,
    /// Add the extensionality axiom (only meaningful when extensional).
    pub ext_axiom: bool,
    pub selection: Selection,
}

impl CalculusConfig {
    pub fn new(extensional: bool, purifying: bool) -> CalculusConfig {
        CalculusConfig { extensional, purifying, neg_ext: false, ext_axiom: extensional, selection: Selection::None }
    }

    pub fn all() -> [CalculusConfig; 4] {
        [
            CalculusConfig::new(false, false),
            CalculusConfig::new(false, true),
            CalculusConfig::new(true, false),
            CalculusConfig::new(true, true),
        ]
    }

    pub fn parse(name: &str) -> Result<CalculusConfig> {
        match name {
            "int-nonpure" => Ok(CalculusConfig::new(false, false)),
            "int-pure" => Ok(CalculusConfig::new(false, true)),
            "ext-nonpure" => Ok(CalculusConfig::new(true, false)),
            "ext-pure" => Ok(CalculusConfig::new(true, true)),
            other => Err(Error::BadOption(format!("unknown calculus `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match (self.extensional, self.purifying) {
            (false, false) => "int-nonpure",
            (false, true) => "int-pure",
            (true, false) => "ext-nonpure",
            (true, true) => "ext-pure",
        }
    }

    /// Refutationally complete as configured: the extensional calculi need
    /// the axiom.
    pub fn is_complete(&self) -> bool {
        !self.extensional || self.ext_axiom
    }
}

impl fmt::Display for CalculusConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Sup,
    ERes,
    EFact,
    ArgCong,
    PosExt,
    NegExt,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Sup => "sup",
            Rule::ERes => "eres",
            Rule::EFact => "efact",
            Rule::ArgCong => "argcong",
            Rule::PosExt => "posext",
            Rule::NegExt => "negext",
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        [Rule::Sup, Rule::ERes, Rule::EFact, Rule::ArgCong, Rule::PosExt, Rule::NegExt]
            .into_iter()
            .find(|r| r.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct Inference {
    pub rule: Rule,
    pub premises: Vec<ClauseId>,
    /// Unifier (or type substitution for ArgCong) of the inference.
    pub subst: Substitution,
    pub conclusion: Vec<Literal>,
    /// Premises after renaming and instantiation, in `premises` order. The
    /// conclusion follows from these (modulo extensionality for PosExt and
    /// NegExt, and modulo the purification literals).
    pub instances: Vec<Vec<Literal>>,
    /// Whether the conclusion was purified.
    pub purified: bool,
    /// Skolem introduced by NegExt.
    pub skolem: Option<Name>,
}

/// Inference engine for one calculus and one term order.
#[derive(Clone, Debug)]
pub struct Calculus {
    pub cfg: CalculusConfig,
    pub ord: OrderConfig,
}

impl Calculus {
    pub fn new(cfg: CalculusConfig, ord: OrderConfig) -> Calculus {
        Calculus { cfg, ord }
    }

    /// Literal indices selected in `lits` (at most one).
    pub fn select(&self, lits: &[Literal]) -> Vec<usize> {
        match self.cfg.selection {
            Selection::None => Vec::new(),
            Selection::MaximalNegative => {
                let legal: Vec<usize> =
                    (0..lits.len()).filter(|&i| !lits[i].positive && self.may_select(lits, i)).collect();
                // Maximal among legal candidates; heavier literals first on ties.
                let best = legal
                    .iter()
                    .copied()
                    .filter(|&i| legal.iter().all(|&j| j == i || !self.ord.compare_lits(&lits[j], &lits[i]).is_gt()));
                best.max_by_key(|&i| (lits[i].weight(), std::cmp::Reverse(i))).into_iter().collect()
            }
        }
    }

    /// Selection restrictions. Nonpurifying: no literal containing a green
    /// `x v` when some `x u` with `u != v` is a maximal term. Purifying: no
    /// literal containing a variable of functional (or unknown) type.
    pub fn may_select(&self, lits: &[Literal], i: usize) -> bool {
        let lit = &lits[i];
        if self.cfg.purifying {
            let mut bad = false;
            for side in [&lit.lhs, &lit.rhs] {
                side.for_each_var_occurrence(&mut |v, _| {
                    if v.ty.is_functional() || matches!(v.ty, crate::types::Type::Var(_)) {
                        bad = true;
                    }
                });
            }
            return !bad;
        }
        let sides: Vec<&Term> = lits.iter().flat_map(|l| [&l.lhs, &l.rhs]).collect();
        let maximal: Vec<&Term> = sides
            .iter()
            .copied()
            .filter(|s| s.var_head().is_some())
            .filter(|s| sides.iter().all(|o| !self.ord.compare(o, s).is_gt()))
            .collect();
        if maximal.is_empty() {
            return true;
        }
        let mut ok = true;
        for side in [&lit.lhs, &lit.rhs] {
            side.for_each_var_occurrence(&mut |v, args| {
                for m in &maximal {
                    let mv = m.var_head().expect("filtered");
                    if mv.name == v.name && m.args() != args {
                        ok = false;
                    }
                }
            });
        }
        ok
    }

    /// (Strict) eligibility of literal `i` in `lits` with respect to `sigma`.
    /// Incomparable literals do not block maximality.
    pub fn eligible(&self, lits: &[Literal], i: usize, sigma: &Substitution, strict: bool) -> bool {
        let sel = self.select(lits);
        if !sel.is_empty() {
            return sel.contains(&i);
        }
        let inst;
        let lits = if sigma.is_empty() {
            lits
        } else {
            match sigma.apply_lits(lits) {
                Ok(l) => {
                    inst = l;
                    &inst
                }
                Err(_) => return false,
            }
        };
        self.maximal_in(lits, i, strict)
    }

    pub fn maximal_in(&self, lits: &[Literal], i: usize, strict: bool) -> bool {
        lits.iter().enumerate().all(|(j, l)| {
            if j == i {
                return true;
            }
            match self.ord.compare_lits(l, &lits[i]) {
                Comparison::Greater => false,
                Comparison::Equal => !strict,
                _ => true,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::Precedence;
    use crate::types::Type;

    fn k() -> Type {
        Type::base("k")
    }
    fn c(n: &str) -> Term {
        Term::sym(n, vec![], k())
    }
    fn calc(cfg: CalculusConfig) -> Calculus {
        Calculus::new(cfg, OrderConfig::lpo(Precedence::parse("h>g>f>c>b>a").unwrap()))
    }

    #[test]
    fn names_round_trip() {
        for cfg in CalculusConfig::all() {
            assert_eq!(CalculusConfig::parse(cfg.name()).unwrap(), cfg);
        }
        assert!(CalculusConfig::parse("hol").is_err());
    }

    #[test]
    fn eligibility_examples() {
        let cal = calc(CalculusConfig::new(false, false));
        let id = Substitution::new();
        let single = vec![Literal::eq(c("a"), c("b"))];
        assert!(cal.eligible(&single, 0, &id, false));
        assert!(cal.eligible(&single, 0, &id, true));
        let dup = vec![Literal::eq(c("a"), c("b")), Literal::eq(c("a"), c("b"))];
        assert!(cal.eligible(&dup, 0, &id, false));
        assert!(cal.eligible(&dup, 1, &id, false));
        assert!(!cal.eligible(&dup, 0, &id, true));
        assert!(!cal.eligible(&dup, 1, &id, true));
    }

    #[test]
    fn selection_overrides_maximality() {
        let mut cfg = CalculusConfig::new(false, false);
        cfg.selection = Selection::MaximalNegative;
        let cal = calc(cfg);
        let lits = vec![Literal::eq(c("h"), c("g")), Literal::neq(c("a"), c("b"))];
        assert_eq!(cal.select(&lits), vec![1]);
        assert!(cal.eligible(&lits, 1, &Substitution::new(), true));
        assert!(!cal.eligible(&lits, 0, &Substitution::new(), false));
    }

    #[test]
    fn purifying_selection_avoids_functional_variables() {
        let mut cfg = CalculusConfig::new(true, true);
        cfg.selection = Selection::MaximalNegative;
        let cal = calc(cfg);
        let kk = Type::fun(k(), k());
        let z = Term::mk_var("Z", kk.clone());
        let x = Term::mk_var("X", kk.clone());
        let f = Term::sym("f", vec![], kk);
        // z a = b | z != x | f != x : no literal may be selected
        let lits = vec![
            Literal::eq(z.apply(&[c("a")]).unwrap(), c("b")),
            Literal::neq(z.clone(), x.clone()),
            Literal::neq(f, x),
        ];
        assert!(cal.select(&lits).is_empty());
    }

    #[test]
    fn nonpurifying_selection_restriction() {
        let mut cfg = CalculusConfig::new(false, false);
        cfg.selection = Selection::MaximalNegative;
        let cal = calc(cfg);
        let kk = Type::fun(k(), k());
        let x = Term::mk_var("X", kk);
        let xa = x.apply(&[c("a")]).unwrap();
        let xb = x.apply(&[c("b")]).unwrap();
        // X b is a maximal term; X a != c may not be selected
        let lits = vec![Literal::eq(xb, c("c")), Literal::neq(xa, c("c"))];
        assert!(!cal.may_select(&lits, 1));
        assert!(cal.select(&lits).is_empty());
    }
}
