//! Polymorphic types, type declarations and signatures.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Interned-ish name used for symbols, variables and type constructors.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

/// Name of the binary function type constructor.
pub const FUN: &str = "fun";
/// Reserved Skolem symbol of the extensionality axiom.
pub const DIFF: &str = "diff";
/// Reserved symbol of declaration `pi a. a`, witnessing nonempty domains.
pub const INHABITANT: &str = "inhabitant";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Type {
    Var(Name),
    App(Name, Vec<Type>),
}

impl Type {
    pub fn var(n: &str) -> Type {
        Type::Var(name(n))
    }

    pub fn base(n: &str) -> Type {
        Type::App(name(n), Vec::new())
    }

    pub fn fun(dom: Type, codom: Type) -> Type {
        Type::App(name(FUN), vec![dom, codom])
    }

    /// `a1 > ... > an > res`
    pub fn arrows(args: impl IntoIterator<Item = Type>, res: Type) -> Type {
        let args: Vec<Type> = args.into_iter().collect();
        args.into_iter().rev().fold(res, |acc, a| Type::fun(a, acc))
    }

    pub fn as_fun(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::App(c, args) if &**c == FUN && args.len() == 2 => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn is_functional(&self) -> bool {
        self.as_fun().is_some()
    }

    /// Splits off every argument type: `(a1..an, res)` with `res` nonfunctional.
    pub fn split_all(&self) -> (Vec<&Type>, &Type) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Some((d, c)) = cur.as_fun() {
            args.push(d);
            cur = c;
        }
        (args, cur)
    }

    /// Peels exactly `n` argument types off this type.
    pub fn peel(&self, n: usize) -> Option<(Vec<&Type>, &Type)> {
        let mut args = Vec::with_capacity(n);
        let mut cur = self;
        for _ in 0..n {
            let (d, c) = cur.as_fun()?;
            args.push(d);
            cur = c;
        }
        Some((args, cur))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Type::Var(_) => false,
            Type::App(_, args) => args.iter().all(Type::is_ground),
        }
    }

    pub fn occurs(&self, v: &str) -> bool {
        match self {
            Type::Var(w) => &**w == v,
            Type::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            Type::Var(v) => {
                out.insert(v.clone());
            }
            Type::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Simultaneous (single-pass) substitution of type variables.
    pub fn subst<M: TypeMap + ?Sized>(&self, map: &M) -> Type {
        match self {
            Type::Var(v) => map.lookup(v).cloned().unwrap_or_else(|| self.clone()),
            Type::App(c, args) if args.is_empty() => Type::App(c.clone(), Vec::new()),
            Type::App(c, args) => Type::App(c.clone(), args.iter().map(|a| a.subst(map)).collect()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Var(_) => 1,
            Type::App(_, args) => 1 + args.iter().map(Type::size).sum::<usize>(),
        }
    }
}

/// Anything that can answer type-variable lookups.
pub trait TypeMap {
    fn lookup(&self, v: &str) -> Option<&Type>;
}

impl TypeMap for BTreeMap<Name, Type> {
    fn lookup(&self, v: &str) -> Option<&Type> {
        self.get(v)
    }
}

impl TypeMap for HashMap<Name, Type> {
    fn lookup(&self, v: &str) -> Option<&Type> {
        self.get(v)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((d, c)) = self.as_fun() {
            if d.is_functional() {
                write!(f, "({d})>{c}")
            } else {
                write!(f, "{d}>{c}")
            }
        } else {
            match self {
                Type::Var(v) => write!(f, "{v}"),
                Type::App(c, args) if args.is_empty() => write!(f, "{c}"),
                Type::App(c, args) => {
                    write!(f, "{c}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")
                }
            }
        }
    }
}

/// `pi a1,...,am. body`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeDecl {
    pub vars: Vec<Name>,
    pub body: Type,
}

impl TypeDecl {
    pub fn mono(body: Type) -> TypeDecl {
        TypeDecl { vars: Vec::new(), body }
    }

    pub fn new(vars: Vec<Name>, body: Type) -> Result<TypeDecl, Error> {
        let free = body.vars();
        if let Some(v) = free.iter().find(|v| !vars.contains(v)) {
            return Err(Error::IllTyped(format!("type variable {v} not bound in declaration")));
        }
        Ok(TypeDecl { vars, body })
    }

    pub fn instantiate(&self, args: &[Type]) -> Result<Type, Error> {
        if args.len() != self.vars.len() {
            return Err(Error::IllTyped(format!("expected {} type arguments, got {}", self.vars.len(), args.len())));
        }
        let map: BTreeMap<Name, Type> = self.vars.iter().cloned().zip(args.iter().cloned()).collect();
        Ok(self.body.subst(&map))
    }
}

impl fmt::Display for TypeDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            write!(f, "pi {}. ", self.vars.join(","))?;
        }
        write!(f, "{}", pretty_type(&self.body))
    }
}

/// Spaced rendering used in declarations (`k > k`), as opposed to the tight
/// form used inside explicit type arguments.
pub fn pretty_type(t: &Type) -> String {
    if let Some((d, c)) = t.as_fun() {
        let ds = pretty_type(d);
        let ds = if d.is_functional() { format!("({ds})") } else { ds };
        format!("{ds} > {}", pretty_type(c))
    } else {
        match t {
            Type::App(c, args) if !args.is_empty() => {
                let parts: Vec<String> = args.iter().map(pretty_type).collect();
                format!("{c}({})", parts.join(", "))
            }
            _ => t.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    pub type_ctors: BTreeMap<Name, usize>,
    pub symbols: BTreeMap<Name, TypeDecl>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}

impl Signature {
    /// Signature with `fun`, `diff` and `inhabitant` preinstalled.
    pub fn new() -> Signature {
        let mut type_ctors = BTreeMap::new();
        type_ctors.insert(name(FUN), 2);
        let mut symbols = BTreeMap::new();
        let (a, b) = (Type::var("A"), Type::var("B"));
        let ab = Type::fun(a.clone(), b);
        symbols.insert(
            name(DIFF),
            TypeDecl { vars: vec![name("A"), name("B")], body: Type::arrows([ab.clone(), ab], a.clone()) },
        );
        symbols.insert(name(INHABITANT), TypeDecl { vars: vec![name("A")], body: a });
        Signature { type_ctors, symbols }
    }

    pub fn is_builtin_symbol(n: &str) -> bool {
        n == DIFF || n == INHABITANT
    }

    pub fn add_type(&mut self, n: &str, arity: usize) -> Result<(), Error> {
        match self.type_ctors.get(n) {
            Some(&a) if a != arity => Err(Error::IllTyped(format!("type {n} redeclared with arity {arity}"))),
            _ => {
                self.type_ctors.insert(name(n), arity);
                Ok(())
            }
        }
    }

    pub fn add_symbol(&mut self, n: &str, decl: TypeDecl) -> Result<(), Error> {
        self.check_type(&decl.body)?;
        self.symbols.insert(name(n), decl);
        Ok(())
    }

    pub fn decl(&self, n: &str) -> Option<&TypeDecl> {
        self.symbols.get(n)
    }

    /// Checks constructor arities; type variables are accepted.
    pub fn check_type(&self, t: &Type) -> Result<(), Error> {
        match t {
            Type::Var(_) => Ok(()),
            Type::App(c, args) => match self.type_ctors.get(c) {
                None => Err(Error::UnknownSymbol(c.to_string())),
                Some(&a) if a != args.len() => {
                    Err(Error::IllTyped(format!("type constructor {c} expects {a} arguments")))
                }
                Some(_) => args.iter().try_for_each(|a| self.check_type(a)),
            },
        }
    }

    pub fn base_types(&self) -> Vec<Type> {
        self.type_ctors.iter().filter(|(_, &a)| a == 0).map(|(c, _)| Type::App(c.clone(), vec![])).collect()
    }

    /// The signature must offer a nullary type constructor.
    pub fn validate(&self) -> Result<(), Error> {
        if self.base_types().is_empty() {
            return Err(Error::IllTyped("signature needs at least one nullary type constructor".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_are_right_nested() {
        let k = Type::base("k");
        let t = Type::arrows([k.clone(), k.clone()], k.clone());
        assert_eq!(t, Type::fun(k.clone(), Type::fun(k.clone(), k.clone())));
        assert_eq!(t.to_string(), "k>k>k");
        assert_eq!(pretty_type(&Type::fun(Type::fun(k.clone(), k.clone()), k.clone())), "(k > k) > k");
        let (args, res) = t.split_all();
        assert_eq!(args.len(), 2);
        assert_eq!(res, &k);
    }

    #[test]
    fn decl_rejects_unbound_type_vars() {
        assert!(TypeDecl::new(vec![], Type::var("A")).is_err());
        let d = TypeDecl::new(vec![name("A")], Type::fun(Type::var("A"), Type::var("A"))).unwrap();
        let k = Type::base("k");
        assert_eq!(d.instantiate(std::slice::from_ref(&k)).unwrap(), Type::fun(k.clone(), k));
    }

    #[test]
    fn builtin_signature() {
        let s = Signature::new();
        assert!(s.decl(DIFF).is_some());
        assert_eq!(s.decl(INHABITANT).unwrap().body, Type::var("A"));
        assert!(s.validate().is_err());
    }
}
