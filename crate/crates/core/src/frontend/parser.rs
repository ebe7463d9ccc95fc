//! Recursive-descent parser and type elaboration for the clausal input
//! format.

use std::collections::{BTreeSet, HashMap};

use crate::clause::Literal;
use crate::error::{Error, Result};
use crate::subst::Substitution;
use crate::term::{Term, Var};
use crate::types::{name, Name, Signature, Type, TypeDecl};

use super::lexer::{lex, Tok, Token};
use super::{Item, ProblemFile};

#[derive(Clone, Copy, Debug)]
struct Loc {
    line: usize,
    col: usize,
}

fn err(loc: Loc, msg: impl Into<String>) -> Error {
    Error::Parse { line: loc.line, col: loc.col, msg: msg.into() }
}

#[derive(Debug)]
enum AstHead {
    Var(String),
    Sym { name: String, ty_args: Option<Vec<Type>>, inst: Vec<Type> },
}

#[derive(Debug)]
struct Ast {
    head: AstHead,
    args: Vec<Ast>,
    loc: Loc,
}

struct AstLit {
    lhs: Ast,
    rhs: Ast,
    positive: bool,
    loc: Loc,
}

/// How identifiers inside types are resolved.
enum TyScope<'a> {
    /// Declaration: only `pi`-bound names are variables.
    Decl(&'a [Name]),
    /// Clause: uppercase names are type variables.
    Clause,
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    sig: Signature,
    end: Loc,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.toks.get(self.pos + k)
    }

    fn loc(&self) -> Loc {
        self.toks.get(self.pos).map(|t| Loc { line: t.line, col: t.col }).unwrap_or(self.end)
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(t) => format!("{t:?}"),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.loc(), format!("expected {want:?}, found {}", self.describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Loc)> {
        let loc = self.loc();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, loc))
            }
            _ => Err(err(loc, format!("expected identifier, found {}", self.describe()))),
        }
    }

    fn item(&mut self) -> Result<Item> {
        let (kw, loc) = self.ident()?;
        match kw.as_str() {
            "type" => {
                let (n, nloc) = self.ident()?;
                let arity = if let Some(Tok::Ident(a)) = self.peek() {
                    let a = a.parse::<usize>().map_err(|_| err(self.loc(), "expected type arity"))?;
                    self.pos += 1;
                    a
                } else {
                    0
                };
                self.expect(Tok::Dot)?;
                self.sig.add_type(&n, arity).map_err(|e| err(nloc, e.to_string()))?;
                Ok(Item::Type(name(&n), arity))
            }
            "val" => {
                let (n, nloc) = self.ident()?;
                if n.starts_with(char::is_uppercase) {
                    return Err(err(nloc, format!("symbol `{n}` must start lowercase")));
                }
                if Signature::is_builtin_symbol(&n) {
                    return Err(err(nloc, format!("`{n}` is built in")));
                }
                self.expect(Tok::Colon)?;
                let mut vars = Vec::new();
                if self.peek() == Some(&Tok::Ident("pi".into())) {
                    self.pos += 1;
                    loop {
                        vars.push(name(&self.ident()?.0));
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::Dot)?;
                }
                let body = self.ty(&TyScope::Decl(&vars), false)?;
                self.expect(Tok::Dot)?;
                let decl = TypeDecl::new(vars, body).map_err(|e| err(nloc, e.to_string()))?;
                self.sig.add_symbol(&n, decl.clone()).map_err(|e| err(nloc, e.to_string()))?;
                Ok(Item::Val(name(&n), decl))
            }
            "clause" | "goal" => {
                let lits = self.clause()?;
                self.expect(Tok::Dot)?;
                Ok(Item::Clause { lits, goal: kw == "goal" })
            }
            _ => Err(err(loc, format!("expected `type`, `val`, `clause` or `goal`, found `{kw}`"))),
        }
    }

    // ---- types ----

    /// `in_angle`: inside `f<...>`, a `>` closes the argument list unless it
    /// is immediately followed (without a space) by an identifier or `(`.
    fn ty(&mut self, scope: &TyScope, in_angle: bool) -> Result<Type> {
        let dom = self.ty_atom(scope)?;
        if self.peek() == Some(&Tok::Gt) {
            let arrow =
                !in_angle || self.peek_at(1).is_some_and(|t| t.glued && matches!(t.tok, Tok::Ident(_) | Tok::LParen));
            if arrow {
                self.pos += 1;
                let cod = self.ty(scope, in_angle)?;
                return Ok(Type::fun(dom, cod));
            }
        }
        Ok(dom)
    }

    fn ty_atom(&mut self, scope: &TyScope) -> Result<Type> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let t = self.ty(scope, false)?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        let (n, loc) = self.ident()?;
        let is_var = match scope {
            TyScope::Decl(vars) => vars.iter().any(|v| **v == *n),
            TyScope::Clause => n.starts_with(char::is_uppercase),
        };
        if is_var {
            return Ok(Type::var(&n));
        }
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) && self.peek_at(0).is_some_and(|t| t.glued) {
            self.pos += 1;
            loop {
                args.push(self.ty(scope, false)?);
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        let t = Type::App(name(&n), args);
        self.sig.check_type(&t).map_err(|e| err(loc, e.to_string()))?;
        Ok(t)
    }

    // ---- terms ----

    fn clause(&mut self) -> Result<Vec<Literal>> {
        if self.peek() == Some(&Tok::False) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut lits = vec![self.literal()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            lits.push(self.literal()?);
        }
        elaborate(&self.sig, lits)
    }

    fn literal(&mut self) -> Result<AstLit> {
        let loc = self.loc();
        let lhs = self.term()?;
        let positive = match self.peek() {
            Some(Tok::Eq) => true,
            Some(Tok::Neq) => false,
            _ => return Err(err(self.loc(), format!("expected `=` or `!=`, found {}", self.describe()))),
        };
        self.pos += 1;
        let rhs = self.term()?;
        Ok(AstLit { lhs, rhs, positive, loc })
    }

    fn term(&mut self) -> Result<Ast> {
        let mut t = self.atom()?;
        while matches!(self.peek(), Some(Tok::Ident(_) | Tok::LParen)) {
            let a = self.atom()?;
            t.args.push(a);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Ast> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        let (n, loc) = self.ident()?;
        if n.starts_with(char::is_uppercase) {
            return Ok(Ast { head: AstHead::Var(n), args: Vec::new(), loc });
        }
        let mut ty_args = None;
        if self.peek() == Some(&Tok::Lt) {
            self.pos += 1;
            let mut tys = Vec::new();
            if self.peek() != Some(&Tok::Gt) {
                loop {
                    tys.push(self.ty(&TyScope::Clause, true)?);
                    if self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::Gt)?;
            ty_args = Some(tys);
        }
        Ok(Ast { head: AstHead::Sym { name: n, ty_args, inst: Vec::new() }, args: Vec::new(), loc })
    }
}

// ---- elaboration ----

struct Infer<'s> {
    sig: &'s Signature,
    sub: Substitution,
    next: usize,
    vars: HashMap<String, Type>,
}

impl Infer<'_> {
    fn fresh(&mut self) -> Type {
        self.next += 1;
        Type::var(&format!("?{}", self.next))
    }

    fn unify(&mut self, a: &Type, b: &Type, loc: Loc) -> Result<()> {
        if self.unify_in(a, b) {
            return Ok(());
        }
        let (a, b) = (self.sub.apply_type_deep(a), self.sub.apply_type_deep(b));
        Err(err(loc, format!("type mismatch: {} vs {}", show(&a), show(&b))))
    }

    /// Like ordinary type unification, but binds inference variables in
    /// preference to the user's type variables so that names survive.
    fn unify_in(&mut self, a: &Type, b: &Type) -> bool {
        let a = self.sub.apply_type_deep(a);
        let b = self.sub.apply_type_deep(b);
        match (&a, &b) {
            _ if a == b => true,
            (Type::Var(v), t) | (t, Type::Var(v))
                if v.starts_with('?') || !matches!(t, Type::Var(w) if w.starts_with('?')) =>
            {
                if t.occurs(v) {
                    return false;
                }
                self.sub.bind_type(v.clone(), t.clone());
                true
            }
            (Type::Var(_), _) | (_, Type::Var(_)) => self.unify_in(&b, &a),
            (Type::App(c, xs), Type::App(d, ys)) => {
                c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.unify_in(x, y))
            }
        }
    }

    fn infer(&mut self, t: &mut Ast) -> Result<Type> {
        let loc = t.loc;
        let mut ty = match &mut t.head {
            AstHead::Var(v) => match self.vars.get(v.as_str()) {
                Some(ty) => ty.clone(),
                None => {
                    let ty = self.fresh();
                    self.vars.insert(v.clone(), ty.clone());
                    ty
                }
            },
            AstHead::Sym { name: n, ty_args, inst } => {
                let decl = self.sig.decl(n).ok_or_else(|| err(loc, format!("unknown symbol `{n}`")))?;
                *inst = match ty_args {
                    Some(given) => {
                        if given.len() != decl.vars.len() {
                            return Err(err(
                                loc,
                                format!("`{n}` expects {} type arguments, got {}", decl.vars.len(), given.len()),
                            ));
                        }
                        given.clone()
                    }
                    None => (0..decl.vars.len()).map(|_| self.fresh()).collect(),
                };
                decl.instantiate(inst).map_err(|e| err(loc, e.to_string()))?
            }
        };
        for a in &mut t.args {
            let at = self.infer(a)?;
            let cur = self.sub.apply_type_deep(&ty);
            ty = match cur.as_fun() {
                Some((d, r)) => {
                    let (d, r) = (d.clone(), r.clone());
                    self.unify(&d, &at, a.loc)?;
                    r
                }
                None if matches!(cur, Type::Var(_)) => {
                    let r = self.fresh();
                    self.unify(&cur, &Type::fun(at, r.clone()), a.loc)?;
                    r
                }
                None => return Err(err(a.loc, format!("too many arguments: head has type {}", show(&cur)))),
            };
        }
        Ok(ty)
    }
}

fn show(t: &Type) -> String {
    crate::types::pretty_type(t)
}

/// Infers types for a parsed clause. Type variables left open by inference
/// are generalized to fresh clause-level type variables.
fn elaborate(sig: &Signature, mut lits: Vec<AstLit>) -> Result<Vec<Literal>> {
    let mut inf = Infer { sig, sub: Substitution::new(), next: 0, vars: HashMap::new() };
    for l in &mut lits {
        let a = inf.infer(&mut l.lhs)?;
        let b = inf.infer(&mut l.rhs)?;
        inf.unify(&a, &b, l.loc)?;
    }
    // Name leftovers T1, T2, ... avoiding explicit type variables.
    let mut explicit = BTreeSet::new();
    fn written(t: &Ast, out: &mut BTreeSet<Name>) {
        if let AstHead::Sym { ty_args: Some(tys), .. } = &t.head {
            tys.iter().for_each(|ty| ty.collect_vars(out));
        }
        t.args.iter().for_each(|a| written(a, out));
    }
    for l in &lits {
        written(&l.lhs, &mut explicit);
        written(&l.rhs, &mut explicit);
    }
    let mut pending = Vec::new();
    fn collect(t: &Ast, inf: &Infer, explicit: &mut BTreeSet<Name>, pending: &mut Vec<Name>) {
        let ty = match &t.head {
            AstHead::Var(v) => vec![inf.sub.apply_type_deep(&inf.vars[v.as_str()])],
            AstHead::Sym { inst, .. } => inst.iter().map(|i| inf.sub.apply_type_deep(i)).collect(),
        };
        for ty in ty {
            // keep first-occurrence order for determinism
            let mut ordered = Vec::new();
            order_vars(&ty, &mut ordered);
            for v in ordered {
                if v.starts_with('?') {
                    if !pending.contains(&v) {
                        pending.push(v);
                    }
                } else {
                    explicit.insert(v);
                }
            }
        }
        for a in &t.args {
            collect(a, inf, explicit, pending);
        }
    }
    for l in &lits {
        collect(&l.lhs, &inf, &mut explicit, &mut pending);
        collect(&l.rhs, &inf, &mut explicit, &mut pending);
    }
    let mut n = 0;
    for p in pending {
        let fresh = loop {
            n += 1;
            let cand = format!("T{n}");
            if !explicit.contains(cand.as_str()) {
                break cand;
            }
        };
        inf.sub.bind_type(p, Type::var(&fresh));
    }
    let build_lit = |l: &AstLit| -> Result<Literal> {
        let lhs = build(&inf, &l.lhs)?;
        let rhs = build(&inf, &l.rhs)?;
        Literal::new(lhs, rhs, l.positive).map_err(|e| err(l.loc, e.to_string()))
    };
    lits.iter().map(build_lit).collect()
}

fn order_vars(t: &Type, out: &mut Vec<Name>) {
    match t {
        Type::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone())
            }
        }
        Type::App(_, args) => args.iter().for_each(|a| order_vars(a, out)),
    }
}

fn build(inf: &Infer, t: &Ast) -> Result<Term> {
    let head = match &t.head {
        AstHead::Var(v) => Term::var(Var { name: name(v), ty: inf.sub.apply_type_deep(&inf.vars[v.as_str()]) }),
        AstHead::Sym { name: n, inst, .. } => {
            let inst: Vec<Type> = inst.iter().map(|i| inf.sub.apply_type_deep(i)).collect();
            let ty = inf.sig.decl(n).expect("checked during inference").instantiate(&inst)?;
            Term::sym(n, inst, ty)
        }
    };
    let args = t.args.iter().map(|a| build(inf, a)).collect::<Result<Vec<_>>>()?;
    head.apply(&args).map_err(|e| err(t.loc, e.to_string()))
}

fn end_loc(text: &str) -> Loc {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    Loc { line, col }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, sig: Signature::new(), end: end_loc(text) };
    let mut items = Vec::new();
    while p.pos < toks.len() {
        items.push(p.item()?);
    }
    Ok(ProblemFile { sig: p.sig, items })
}

/// Parses the literals of one clause (`a = b | f X != c`) against `sig`.
pub fn parse_clause(sig: &Signature, text: &str) -> Result<Vec<Literal>> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, sig: sig.clone(), end: end_loc(text) };
    let lits = p.clause()?;
    if p.pos < toks.len() {
        return Err(err(p.loc(), format!("unexpected {}", p.describe())));
    }
    Ok(lits)
}

/// Parses one term against `sig`; its variables get inferred types.
pub fn parse_term(sig: &Signature, text: &str) -> Result<Term> {
    let lits = parse_clause(sig, &format!("{text} = {text}"))?;
    Ok(lits[0].lhs.clone())
}
