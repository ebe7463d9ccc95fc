//! Lambda-free LPO and KBO, and their multiset extensions to literals and
//! clauses.
//!
//! Type arguments take part in comparisons as leading arguments: a symbol
//! `f<t1,t2> a b` is compared as if it were `f t1 t2 a b`, with type
//! constructors ranked below every term symbol. Nothing else about types is
//! inspected.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::clause::Literal;
use crate::error::{Error, Result};
use crate::term::{Head, Term};
use crate::types::{Name, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl Comparison {
    pub fn flip(self) -> Comparison {
        match self {
            Comparison::Greater => Comparison::Less,
            Comparison::Less => Comparison::Greater,
            c => c,
        }
    }

    pub fn is_gt(self) -> bool {
        self == Comparison::Greater
    }

    pub fn is_ge(self) -> bool {
        matches!(self, Comparison::Greater | Comparison::Equal)
    }

    pub fn is_lt(self) -> bool {
        self == Comparison::Less
    }

    pub fn is_le(self) -> bool {
        matches!(self, Comparison::Less | Comparison::Equal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    LeftToRight,
    RightToLeft,
}

/// Symbol precedence. Listed symbols rank above unlisted ones; unlisted
/// symbols (including `diff`, Skolems and encoding symbols) are ordered by
/// name among themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Precedence {
    ranks: HashMap<Name, usize>,
    status: HashMap<Name, Status>,
}

impl Precedence {
    /// From a list, highest first.
    pub fn from_list<S: AsRef<str>>(syms: &[S]) -> Precedence {
        let n = syms.len();
        let ranks = syms.iter().enumerate().map(|(i, s)| (Name::from(s.as_ref()), n - i)).collect();
        Precedence { ranks, status: HashMap::new() }
    }

    /// Parses `"h>g>f"`.
    pub fn parse(s: &str) -> Result<Precedence> {
        let syms: Vec<&str> = s.split('>').map(str::trim).collect();
        if syms.iter().any(|x| x.is_empty()) {
            return Err(Error::BadOption(format!("precedence `{s}`")));
        }
        let mut seen = std::collections::HashSet::new();
        for x in &syms {
            if !seen.insert(*x) {
                return Err(Error::BadOption(format!("symbol `{x}` listed twice in precedence")));
            }
        }
        Ok(Precedence::from_list(&syms))
    }

    /// Parses `"add_R:rl,add_L:lr"` and merges it in.
    pub fn parse_status(&mut self, s: &str) -> Result<()> {
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (sym, st) = item.split_once(':').ok_or_else(|| Error::BadOption(format!("status item `{item}`")))?;
            let st = match st.trim() {
                "lr" => Status::LeftToRight,
                "rl" => Status::RightToLeft,
                other => return Err(Error::BadOption(format!("unknown status `{other}`"))),
            };
            self.status.insert(Name::from(sym.trim()), st);
        }
        Ok(())
    }

    pub fn set_status(&mut self, sym: &str, st: Status) {
        self.status.insert(Name::from(sym), st);
    }

    /// Inserts `sym` just below every listed symbol if it is not ranked yet.
    pub fn extend_low(&mut self, sym: &str) {
        if self.ranks.contains_key(sym) {
            return;
        }
        for r in self.ranks.values_mut() {
            *r += 1;
        }
        self.ranks.insert(Name::from(sym), 1);
    }

    pub fn rank(&self, sym: &str) -> Option<usize> {
        self.ranks.get(sym).copied()
    }

    pub fn status(&self, sym: &str) -> Status {
        self.status.get(sym).copied().unwrap_or(Status::LeftToRight)
    }

    /// Listed symbols, highest first.
    pub fn listed(&self) -> Vec<Name> {
        let mut v: Vec<_> = self.ranks.iter().collect();
        v.sort_by(|a, b| b.1.cmp(a.1));
        v.into_iter().map(|(n, _)| n.clone()).collect()
    }

    fn sym_cmp(&self, a: &HeadKey<'_>, b: &HeadKey<'_>) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    fn key<'a>(&self, h: &HeadKey<'a>) -> (u8, usize, &'a str) {
        match *h {
            HeadKey::TyCon(n) => (0, 0, n),
            HeadKey::Sym(n) => match self.ranks.get(n) {
                Some(&r) => (2, r, n),
                None => (1, 0, n),
            },
            HeadKey::Var(n) | HeadKey::TyVar(n) => (3, 0, n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Kbo,
    Lpo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KboWeights {
    pub weights: HashMap<Name, u64>,
    pub default: u64,
    pub var: u64,
}

impl Default for KboWeights {
    fn default() -> Self {
        KboWeights { weights: HashMap::new(), default: 1, var: 1 }
    }
}

impl KboWeights {
    /// Parses `"f=2,default=1"`. Weights must be positive.
    pub fn parse(s: &str) -> Result<KboWeights> {
        let mut w = KboWeights::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (sym, val) = item.split_once('=').ok_or_else(|| Error::BadOption(format!("weight item `{item}`")))?;
            let val: u64 =
                val.trim().parse().map_err(|_| Error::BadOption(format!("weight `{val}` is not a number")))?;
            if val == 0 {
                return Err(Error::BadOption(format!("weight of `{sym}` must be positive")));
            }
            match sym.trim() {
                "default" => w.default = val,
                name => {
                    w.weights.insert(Name::from(name), val);
                }
            }
        }
        w.var = w.weights.values().copied().chain([w.default]).min().unwrap_or(1);
        Ok(w)
    }

    fn of(&self, sym: &str) -> u64 {
        self.weights.get(sym).copied().unwrap_or(self.default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderConfig {
    pub kind: OrderKind,
    pub prec: Precedence,
    pub weights: KboWeights,
}

impl OrderConfig {
    pub fn lpo(prec: Precedence) -> OrderConfig {
        OrderConfig { kind: OrderKind::Lpo, prec, weights: KboWeights::default() }
    }

    pub fn kbo(prec: Precedence, weights: KboWeights) -> OrderConfig {
        OrderConfig { kind: OrderKind::Kbo, prec, weights }
    }

    pub fn compare(&self, s: &Term, t: &Term) -> Comparison {
        if s == t {
            return Comparison::Equal;
        }
        let (a, b) = (Node::T(s), Node::T(t));
        if self.gt(a, b) {
            Comparison::Greater
        } else if self.gt(b, a) {
            Comparison::Less
        } else {
            Comparison::Incomparable
        }
    }

    pub fn greater(&self, s: &Term, t: &Term) -> bool {
        s != t && self.gt(Node::T(s), Node::T(t))
    }

    fn gt(&self, s: Node<'_>, t: Node<'_>) -> bool {
        match self.kind {
            OrderKind::Lpo => self.lpo_gt(s, t),
            OrderKind::Kbo => self.kbo_gt(s, t),
        }
    }

    fn lpo_gt(&self, s: Node<'_>, t: Node<'_>) -> bool {
        if s == t {
            return false;
        }
        let sa = s.args();
        if sa.iter().any(|&si| si == t || self.lpo_gt(si, t)) {
            return true;
        }
        let (hs, ht) = (s.head(), t.head());
        let ta = t.args();
        let dominates = || ta.iter().all(|&tj| self.lpo_gt(s, tj));
        match (hs, ht) {
            (HeadKey::Var(_) | HeadKey::TyVar(_), _) | (_, HeadKey::Var(_) | HeadKey::TyVar(_)) => {
                if hs != ht {
                    return false;
                }
                // Same variable head: the eventual symbol's status is unknown,
                // so both lexicographic directions must agree.
                let ok = if sa.len() != ta.len() {
                    sa.len() > ta.len()
                } else {
                    self.lex_gt(&sa, &ta, Status::LeftToRight) && self.lex_gt(&sa, &ta, Status::RightToLeft)
                };
                ok && dominates()
            }
            _ => match self.prec.sym_cmp(&hs, &ht) {
                Ordering::Greater => dominates(),
                Ordering::Less => false,
                Ordering::Equal => {
                    let st = match hs {
                        HeadKey::Sym(n) => self.prec.status(n),
                        _ => Status::LeftToRight,
                    };
                    let ok = if sa.len() != ta.len() { sa.len() > ta.len() } else { self.lex_gt(&sa, &ta, st) };
                    ok && dominates()
                }
            },
        }
    }

    /// Equal-length lexicographic step: the first differing pair decides.
    fn lex_gt(&self, sa: &[Node<'_>], ta: &[Node<'_>], st: Status) -> bool {
        let pairs: Box<dyn Iterator<Item = (&Node<'_>, &Node<'_>)>> = match st {
            Status::LeftToRight => Box::new(sa.iter().zip(ta)),
            Status::RightToLeft => Box::new(sa.iter().rev().zip(ta.iter().rev())),
        };
        for (a, b) in pairs {
            if a != b {
                return self.gt(*a, *b);
            }
        }
        false
    }

    fn weight(&self, n: Node<'_>) -> u64 {
        let h = match n.head() {
            HeadKey::Sym(s) => self.weights.of(s),
            HeadKey::TyCon(_) => 1,
            HeadKey::Var(_) | HeadKey::TyVar(_) => self.weights.var,
        };
        h + n.args().iter().map(|&a| self.weight(a)).sum::<u64>()
    }

    fn var_counts<'a>(n: Node<'a>, out: &mut BTreeMap<HeadKey<'a>, i64>, sign: i64) {
        let h = n.head();
        if matches!(h, HeadKey::Var(_) | HeadKey::TyVar(_)) {
            *out.entry(h).or_insert(0) += sign;
        }
        for a in n.args() {
            Self::var_counts(a, out, sign);
        }
    }

    fn kbo_gt(&self, s: Node<'_>, t: Node<'_>) -> bool {
        if s == t {
            return false;
        }
        let mut counts = BTreeMap::new();
        Self::var_counts(s, &mut counts, 1);
        Self::var_counts(t, &mut counts, -1);
        if counts.values().any(|&c| c < 0) {
            return false;
        }
        let (ws, wt) = (self.weight(s), self.weight(t));
        if ws != wt {
            return ws > wt;
        }
        let (hs, ht) = (s.head(), t.head());
        let same_head = match (hs, ht) {
            (HeadKey::Var(_) | HeadKey::TyVar(_), _) | (_, HeadKey::Var(_) | HeadKey::TyVar(_)) => {
                if hs != ht {
                    return false;
                }
                true
            }
            _ => match self.prec.sym_cmp(&hs, &ht) {
                Ordering::Greater => return true,
                Ordering::Less => return false,
                Ordering::Equal => true,
            },
        };
        debug_assert!(same_head);
        let (sa, ta) = (s.args(), t.args());
        if sa.len() != ta.len() {
            return sa.len() > ta.len();
        }
        self.lex_gt(&sa, &ta, Status::LeftToRight)
    }

    /// Literal `s = t` as `{s, t}`, `s != t` as `{s, s, t, t}`.
    pub fn compare_lits(&self, a: &Literal, b: &Literal) -> Comparison {
        let ma = lit_multiset(a);
        let mb = lit_multiset(b);
        multiset_compare(&ma, &mb, |x, y| self.compare(x, y))
    }

    pub fn compare_clauses(&self, c: &[Literal], d: &[Literal]) -> Comparison {
        multiset_compare(c, d, |x, y| self.compare_lits(x, y))
    }

    /// Could `t θ u1..un` fall below `t' θ u1..un` for some grounding `θ`
    /// even though `t θ` is above `t' θ`? May answer `true` spuriously.
    pub fn maybe_nonmonotonic(&self, t: &Term, t2: &Term) -> bool {
        if t == t2 {
            return false;
        }
        match self.kind {
            OrderKind::Kbo => false,
            OrderKind::Lpo => {
                if self.compare(t, t2).is_le() {
                    return false;
                }
                match (t.head(), t2.head()) {
                    (Head::Sym { name: f, .. }, Head::Sym { name: g, .. }) => {
                        self.prec.sym_cmp(&HeadKey::Sym(f), &HeadKey::Sym(g)) != Ordering::Greater
                    }
                    _ => true,
                }
            }
        }
    }
}

fn lit_multiset(l: &Literal) -> Vec<&Term> {
    if l.positive {
        vec![&l.lhs, &l.rhs]
    } else {
        vec![&l.lhs, &l.lhs, &l.rhs, &l.rhs]
    }
}

/// Dershowitz-Manna extension of a partial order given by `cmp`.
pub fn multiset_compare<T>(a: &[T], b: &[T], cmp: impl Fn(&T, &T) -> Comparison) -> Comparison {
    let mut ra: Vec<&T> = a.iter().collect();
    let mut rb: Vec<&T> = Vec::new();
    for y in b {
        match ra.iter().position(|x| cmp(x, y) == Comparison::Equal) {
            Some(i) => {
                ra.swap_remove(i);
            }
            None => rb.push(y),
        }
    }
    match (ra.is_empty(), rb.is_empty()) {
        (true, true) => return Comparison::Equal,
        (false, true) => return Comparison::Greater,
        (true, false) => return Comparison::Less,
        _ => {}
    }
    let dominated = |big: &[&T], small: &[&T]| small.iter().all(|y| big.iter().any(|x| cmp(x, y).is_gt()));
    if dominated(&ra, &rb) {
        Comparison::Greater
    } else if dominated(&rb, &ra) {
        Comparison::Less
    } else {
        Comparison::Incomparable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum HeadKey<'a> {
    Sym(&'a str),
    Var(&'a str),
    TyCon(&'a str),
    TyVar(&'a str),
}

/// A term or a type seen as an untyped tree.
#[derive(Clone, Copy, Debug)]
enum Node<'a> {
    T(&'a Term),
    Ty(&'a Type),
}

impl PartialEq for Node<'_> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Node::T(a), Node::T(b)) => a == b,
            (Node::Ty(a), Node::Ty(b)) => a == b,
            _ => false,
        }
    }
}

impl<'a> Node<'a> {
    fn head(self) -> HeadKey<'a> {
        match self {
            Node::T(t) => match t.head() {
                Head::Sym { name, .. } => HeadKey::Sym(name),
                Head::Var(v) => HeadKey::Var(&v.name),
            },
            Node::Ty(Type::Var(v)) => HeadKey::TyVar(v),
            Node::Ty(Type::App(c, _)) => HeadKey::TyCon(c),
        }
    }

    fn args(self) -> Vec<Node<'a>> {
        match self {
            Node::T(t) => {
                let tys: &[Type] = match t.head() {
                    Head::Sym { ty_args, .. } => ty_args,
                    Head::Var(_) => &[],
                };
                tys.iter().map(Node::Ty).chain(t.args().iter().map(Node::T)).collect()
            }
            Node::Ty(Type::Var(_)) => Vec::new(),
            Node::Ty(Type::App(_, args)) => args.iter().map(Node::Ty).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Type {
        Type::base("k")
    }
    fn c(n: &str) -> Term {
        Term::sym(n, vec![], k())
    }
    fn f1(n: &str) -> Term {
        Term::sym(n, vec![], Type::fun(k(), k()))
    }
    fn f2(n: &str) -> Term {
        Term::sym(n, vec![], Type::arrows([k(), k()], k()))
    }
    fn app(h: &Term, args: &[Term]) -> Term {
        h.apply(args).unwrap()
    }
    fn lpo() -> OrderConfig {
        OrderConfig::lpo(Precedence::parse("h>g>f>c>b>a").unwrap())
    }

    #[test]
    fn lpo_examples() {
        let o = lpo();
        let (a, b) = (c("a"), c("b"));
        // f (h a) vs h, with h : k>k and f : k>k>k
        let fha = app(&f2("f"), &[app(&f1("h"), std::slice::from_ref(&a))]);
        assert_eq!(o.compare(&fha, &f1("h")), Comparison::Greater);
        let hb = app(&f1("h"), std::slice::from_ref(&b));
        let fhab = app(&fha, std::slice::from_ref(&b));
        assert_eq!(o.compare(&hb, &fhab), Comparison::Greater);
        assert_eq!(o.compare(&fhab, &hb), Comparison::Less);
        assert_eq!(o.compare(&app(&f1("g"), std::slice::from_ref(&a)), &a), Comparison::Greater);
    }

    #[test]
    fn subterm_and_equal() {
        for o in [lpo(), OrderConfig::kbo(Precedence::parse("h>g>f>c>b>a").unwrap(), KboWeights::default())] {
            let fa = app(&f1("f"), &[c("a")]);
            assert_eq!(o.compare(&fa, &c("a")), Comparison::Greater);
            assert_eq!(o.compare(&fa, &fa), Comparison::Equal);
        }
    }

    #[test]
    fn variables_block_comparisons() {
        let o = lpo();
        let x = Term::mk_var("X", k());
        let y = Term::mk_var("Y", k());
        assert_eq!(o.compare(&x, &y), Comparison::Incomparable);
        assert_eq!(o.compare(&app(&f1("f"), std::slice::from_ref(&x)), &x), Comparison::Greater);
        assert_eq!(
            o.compare(&app(&f1("f"), std::slice::from_ref(&x)), &app(&f1("g"), std::slice::from_ref(&y))),
            Comparison::Incomparable
        );
        assert_eq!(
            o.compare(&app(&f1("g"), std::slice::from_ref(&x)), &app(&f1("f"), std::slice::from_ref(&x))),
            Comparison::Greater
        );
        // an applied variable is above its partial application
        let z = Term::mk_var("Z", Type::fun(k(), k()));
        assert_eq!(o.compare(&app(&z, &[c("a")]), &z), Comparison::Greater);
        // ...but not above a bigger symbol
        assert_eq!(o.compare(&app(&z, &[c("b")]), &c("c")), Comparison::Incomparable);
    }

    #[test]
    fn status_changes_lex_direction() {
        let mut p = Precedence::parse("f>b>a").unwrap();
        let s = app(&f2("f"), &[c("b"), c("a")]);
        let t = app(&f2("f"), &[c("a"), c("b")]);
        assert_eq!(OrderConfig::lpo(p.clone()).compare(&s, &t), Comparison::Greater);
        p.parse_status("f:rl").unwrap();
        assert_eq!(OrderConfig::lpo(p).compare(&s, &t), Comparison::Less);
    }

    #[test]
    fn literal_and_clause_extensions() {
        let o = lpo();
        let fa = app(&f1("f"), &[c("a")]);
        let pos = Literal::eq(fa.clone(), c("b"));
        let neg = Literal::neq(fa.clone(), c("b"));
        assert_eq!(o.compare_lits(&pos, &pos), Comparison::Equal);
        assert_eq!(o.compare_lits(&neg, &pos), Comparison::Greater);
        assert_eq!(o.compare_clauses(&[pos.clone(), neg.clone()], std::slice::from_ref(&neg)), Comparison::Greater);
        assert_eq!(o.compare_clauses(&[], std::slice::from_ref(&pos)), Comparison::Less);
        // g (f (h a)) = f (h a) b  is below  g h = h b, with h : k>k, g : (k>k)>k
        let h = f1("h");
        let g = Term::sym("g", vec![], Type::fun(Type::fun(k(), k()), k()));
        let fh = app(&f2("f"), &[app(&h, &[c("a")])]);
        let l1 = Literal::eq(app(&g, std::slice::from_ref(&fh)), app(&fh, &[c("b")]));
        let l2 = Literal::eq(app(&g, std::slice::from_ref(&h)), app(&h, &[c("b")]));
        assert_eq!(o.compare_lits(&l1, &l2), Comparison::Less);
    }

    #[test]
    fn kbo_weights_decide_first() {
        let p = Precedence::parse("a>f").unwrap();
        let o = OrderConfig::kbo(p, KboWeights::default());
        let ffb = app(&f1("f"), &[app(&f1("f"), &[c("b")])]);
        assert_eq!(o.compare(&ffb, &c("a")), Comparison::Greater);
        let w = KboWeights::parse("a=5,default=1").unwrap();
        let o = OrderConfig::kbo(Precedence::parse("a>f").unwrap(), w);
        assert_eq!(o.compare(&ffb, &c("a")), Comparison::Less);
        let x = Term::mk_var("X", k());
        // variable condition fails
        assert_eq!(o.compare(&app(&f1("f"), &[c("a")]), &x), Comparison::Incomparable);
        assert!(KboWeights::parse("f=0").is_err());
    }

    #[test]
    fn nonmonotonicity_check() {
        let o = lpo();
        let (g, f) = (f1("g"), f1("f"));
        assert!(!o.maybe_nonmonotonic(&g, &g));
        assert!(!o.maybe_nonmonotonic(&f, &g));
        assert!(!o.maybe_nonmonotonic(&g, &f));
        let z = Term::mk_var("Z", Type::fun(k(), k()));
        assert!(o.maybe_nonmonotonic(&app(&f2("f"), &[app(&z, &[c("a")])]), &z));
        let kbo = OrderConfig::kbo(Precedence::default(), KboWeights::default());
        assert!(!kbo.maybe_nonmonotonic(&g, &f));
    }

    #[test]
    fn type_arguments_participate() {
        let o = lpo();
        let a = Term::sym("id", vec![k()], Type::fun(k(), k()));
        assert_eq!(o.compare(&app(&a, &[c("b")]), &app(&a, &[c("a")])), Comparison::Greater);
        let tv = Term::sym("id", vec![Type::var("A")], Type::fun(Type::var("A"), Type::var("A")));
        let ka = Term::sym("id", vec![k()], Type::fun(k(), k()));
        assert_eq!(o.compare(&tv, &ka), Comparison::Incomparable);
    }

    #[test]
    fn precedence_parsing() {
        assert!(Precedence::parse("a>>b").is_err());
        assert!(Precedence::parse("a>b>a").is_err());
        let mut p = Precedence::parse("b>a").unwrap();
        p.extend_low("c");
        assert!(p.rank("a").unwrap() > p.rank("c").unwrap());
        assert!(p.parse_status("f:xx").is_err());
    }
}
