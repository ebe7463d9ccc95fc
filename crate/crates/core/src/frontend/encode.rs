//! Applicative encoding: every application becomes an explicit `app` and
//! function types are wrapped in an uninterpreted constructor, leaving a
//! first-order problem with a single binary symbol.

use crate::calculus::ext_axiom;
use crate::clause::Literal;
use crate::term::{Head, Term, Var};
use crate::types::{name, Name, Signature, Type, TypeDecl, DIFF, FUN};

use super::{Item, ProblemFile};

pub struct Encoded {
    pub problem: ProblemFile,
    /// The application symbol, `app : pi a,b. ufun(a, b) > a > b`.
    pub app: Name,
    /// The type constructor replacing `>` in encoded types.
    pub ufun: Name,
}

struct Enc {
    app: Name,
    ufun: Name,
    diff: Name,
}

impl Enc {
    fn ty(&self, t: &Type) -> Type {
        match t {
            Type::Var(_) => t.clone(),
            Type::App(c, args) => {
                let c = if **c == *FUN { self.ufun.clone() } else { c.clone() };
                Type::App(c, args.iter().map(|a| self.ty(a)).collect())
            }
        }
    }

    fn term(&self, t: &Term) -> Term {
        let mut acc = match t.head() {
            Head::Var(v) => Term::var(Var { name: v.name.clone(), ty: self.ty(&v.ty) }),
            Head::Sym { name: n, ty_args, ty } => {
                let n = if **n == *DIFF { &self.diff } else { n };
                Term::sym(n, ty_args.iter().map(|a| self.ty(a)).collect(), self.ty(ty))
            }
        };
        let mut cur = t.head().ty().clone();
        for a in t.args() {
            let (d, r) = cur.as_fun().map(|(d, r)| (d.clone(), r.clone())).expect("well-typed term");
            let (ed, er) = (self.ty(&d), self.ty(&r));
            let app = Term::sym(
                &self.app,
                vec![ed.clone(), er.clone()],
                Type::arrows([Type::App(self.ufun.clone(), vec![ed, er.clone()]), self.ty(&d)], er),
            );
            acc = app.apply(&[acc, self.term(a)]).expect("encoding preserves types");
            cur = r;
        }
        acc
    }

    fn lits(&self, lits: &[Literal]) -> Vec<Literal> {
        lits.iter().map(|l| Literal { lhs: self.term(&l.lhs), rhs: self.term(&l.rhs), positive: l.positive }).collect()
    }
}

fn unused(sig: &Signature, base: &str) -> Name {
    let mut n = base.to_string();
    while sig.symbols.contains_key(n.as_str()) || sig.type_ctors.contains_key(n.as_str()) {
        n.push('_');
    }
    name(&n)
}

/// Encodes `p`. With `include_ext`, the encoded extensionality axiom (over a
/// fresh `diff` symbol) is appended, so that an intensional run of the
/// encoded problem corresponds to an extensional run of the original.
pub fn applicative_encode(p: &ProblemFile, include_ext: bool) -> Encoded {
    let enc = Enc { app: unused(&p.sig, "app"), ufun: unused(&p.sig, "ufun"), diff: unused(&p.sig, "diff_app") };
    let mut sig = Signature::new();
    let mut items = Vec::new();
    for item in &p.items {
        if let Item::Type(n, a) = item {
            sig.add_type(n, *a).expect("copied from a valid signature");
            items.push(item.clone());
        }
    }
    sig.add_type(&enc.ufun, 2).expect("fresh name");
    items.push(Item::Type(enc.ufun.clone(), 2));
    let (a, b) = (Type::var("a"), Type::var("b"));
    let app_decl = TypeDecl {
        vars: vec![name("a"), name("b")],
        body: Type::arrows([Type::App(enc.ufun.clone(), vec![a.clone(), b.clone()]), a], b),
    };
    let mut decls = vec![(enc.app.clone(), app_decl)];
    for (n, d) in p.symbols() {
        decls.push((n.clone(), TypeDecl { vars: d.vars.clone(), body: enc.ty(&d.body) }));
    }
    let builtin_diff = Signature::new().decl(DIFF).cloned().expect("builtin");
    let uses_diff = p.clauses().any(|(l, _)| {
        l.iter().any(|l| {
            let mut s = Default::default();
            l.lhs.collect_symbols(&mut s);
            l.rhs.collect_symbols(&mut s);
            s.contains(DIFF)
        })
    });
    if include_ext || uses_diff {
        let lower = |t: &Type| {
            enc.ty(t).subst(
                &[(name("A"), Type::var("a")), (name("B"), Type::var("b"))]
                    .into_iter()
                    .collect::<std::collections::BTreeMap<_, _>>(),
            )
        };
        decls.push((enc.diff.clone(), TypeDecl { vars: vec![name("a"), name("b")], body: lower(&builtin_diff.body) }));
    }
    for (n, d) in decls {
        sig.add_symbol(&n, d.clone()).expect("encoded types use declared constructors");
        items.push(Item::Val(n, d));
    }
    for (lits, goal) in p.clauses() {
        items.push(Item::Clause { lits: enc.lits(lits), goal });
    }
    if include_ext {
        items.push(Item::Clause { lits: enc.lits(&ext_axiom()), goal: false });
    }
    Encoded { problem: ProblemFile { sig, items }, app: enc.app, ufun: enc.ufun }
}

/// First-order rendering without type arguments: `app(f, app(h, f))`.
pub fn fo_string(t: &Term) -> String {
    let head = match t.head() {
        Head::Var(v) => v.name.to_string(),
        Head::Sym { name, .. } => name.to_string(),
    };
    if t.args().is_empty() {
        return head;
    }
    let args: Vec<String> = t.args().iter().map(fo_string).collect();
    format!("{head}({})", args.join(", "))
}
