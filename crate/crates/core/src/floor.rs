//! Ground first-order image of ground higher-order terms.
//!
//! Each symbol occurrence is indexed with its type arguments and the number
//! of arguments it is applied to, so `f a` becomes `f_1(a_0)` and the
//! partial application `f` becomes the unrelated constant `f_0`.

use std::fmt;
use std::sync::Arc;

use crate::clause::Literal;
use crate::error::{Error, Result};
use crate::term::{Head, Term};
use crate::types::{Name, Type};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FoSym {
    pub name: Name,
    pub arity: usize,
    pub ty_args: Vec<Type>,
    /// Type of the higher-order head, kept for decoding.
    pub head_ty: Type,
}

impl fmt::Display for FoSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.name, self.arity)?;
        match self.ty_args.len() {
            0 => Ok(()),
            1 => write!(f, "^{}", self.ty_args[0]),
            _ => {
                let parts: Vec<String> = self.ty_args.iter().map(|t| t.to_string()).collect();
                write!(f, "^{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct FoData {
    sym: FoSym,
    args: Vec<FoTerm>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FoTerm(Arc<FoData>);

impl FoTerm {
    pub fn new(sym: FoSym, args: Vec<FoTerm>) -> FoTerm {
        assert_eq!(sym.arity, args.len(), "first-order arity mismatch for {sym}");
        FoTerm(Arc::new(FoData { sym, args }))
    }

    pub fn sym(&self) -> &FoSym {
        &self.0.sym
    }

    pub fn args(&self) -> &[FoTerm] {
        &self.0.args
    }

    pub fn size(&self) -> usize {
        1 + self.args().iter().map(FoTerm::size).sum::<usize>()
    }

    /// All subterms with their first-order positions (1-based), preorder.
    pub fn positions(&self) -> Vec<(Vec<usize>, FoTerm)> {
        let mut out = Vec::new();
        fn go(t: &FoTerm, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, FoTerm)>) {
            out.push((path.clone(), t.clone()));
            for (i, a) in t.args().iter().enumerate() {
                path.push(i + 1);
                go(a, path, out);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn at(&self, path: &[usize]) -> Option<&FoTerm> {
        let mut t = self;
        for &i in path {
            t = t.args().get(i.checked_sub(1)?)?;
        }
        Some(t)
    }
}

impl fmt::Debug for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sym())?;
        if !self.args().is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args().iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub fn floor_encode(t: &Term) -> Result<FoTerm> {
    match t.head() {
        Head::Var(v) => Err(Error::NonGround(format!("variable {} in {t}", v.name))),
        Head::Sym { name, ty_args, ty } => {
            if !ty_args.iter().all(Type::is_ground) {
                return Err(Error::NonGround(format!("type arguments of {t}")));
            }
            let args = t.args().iter().map(floor_encode).collect::<Result<Vec<_>>>()?;
            let sym = FoSym { name: name.clone(), arity: args.len(), ty_args: ty_args.clone(), head_ty: ty.clone() };
            Ok(FoTerm::new(sym, args))
        }
    }
}

pub fn ceil_decode(s: &FoTerm) -> Term {
    let sym = s.sym();
    let head = Head::Sym { name: sym.name.clone(), ty_args: sym.ty_args.clone(), ty: sym.head_ty.clone() };
    let args = s.args().iter().map(ceil_decode).collect();
    Term::new(head, args).expect("decoding an encoded term")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoLiteral {
    pub lhs: FoTerm,
    pub rhs: FoTerm,
    pub positive: bool,
}

impl fmt::Display for FoLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.positive { "=" } else { "!=" };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

pub fn floor_clause(lits: &[Literal]) -> Result<Vec<FoLiteral>> {
    lits.iter()
        .map(|l| Ok(FoLiteral { lhs: floor_encode(&l.lhs)?, rhs: floor_encode(&l.rhs)?, positive: l.positive }))
        .collect()
}

pub fn ceil_clause(lits: &[FoLiteral]) -> Vec<Literal> {
    lits.iter()
        .map(|l| Literal::new(ceil_decode(&l.lhs), ceil_decode(&l.rhs), l.positive).expect("same-typed sides"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::GreenPos;

    fn k() -> Type {
        Type::base("k")
    }

    #[test]
    fn encodes_argument_counts() {
        let f = Term::sym("f", vec![], Type::fun(k(), k()));
        let a = Term::sym("a", vec![], k());
        assert_eq!(floor_encode(&f).unwrap().to_string(), "f_0");
        let fa = f.apply(std::slice::from_ref(&a)).unwrap();
        assert_eq!(floor_encode(&fa).unwrap().to_string(), "f_1(a_0)");
        let g = Term::sym("g", vec![], Type::arrows([k(), k()], k()));
        assert_eq!(floor_encode(&g.apply(&[a.clone(), a.clone()]).unwrap()).unwrap().to_string(), "g_2(a_0, a_0)");
        let gk = Term::sym("g", vec![k()], k());
        assert_eq!(floor_encode(&gk).unwrap().to_string(), "g_0^k");
        assert_eq!(ceil_decode(&floor_encode(&fa).unwrap()), fa);
    }

    #[test]
    fn rejects_variables() {
        let x = Term::mk_var("X", k());
        assert!(matches!(floor_encode(&x), Err(Error::NonGround(_))));
        let poly = Term::sym("g", vec![Type::var("A")], Type::var("A"));
        assert!(floor_encode(&poly).is_err());
    }

    #[test]
    fn clause_image() {
        let f = Term::sym("f", vec![], Type::fun(k(), k()));
        let h = Term::sym("h", vec![], Type::fun(k(), k()));
        let a = Term::sym("a", vec![], k());
        let c = vec![
            Literal::eq(f.clone(), h.clone()),
            Literal::neq(f.apply(std::slice::from_ref(&a)).unwrap(), h.apply(&[a]).unwrap()),
        ];
        let fo = floor_clause(&c).unwrap();
        let shown: Vec<String> = fo.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["f_0 = h_0", "f_1(a_0) != h_1(a_0)"]);
        assert_eq!(ceil_clause(&fo), c);
        assert!(floor_clause(&[]).unwrap().is_empty());
    }

    #[test]
    fn green_positions_are_first_order_positions() {
        let f = Term::sym("f", vec![], Type::fun(k(), k()));
        let g = Term::sym("g", vec![], Type::arrows([k(), k()], k()));
        let a = Term::sym("a", vec![], k());
        let b = Term::sym("b", vec![], k());
        let t = g.apply(&[f.apply(&[a]).unwrap(), b]).unwrap();
        let fo = floor_encode(&t).unwrap();
        let greens = t.green_subterms();
        assert_eq!(greens.len(), fo.positions().len());
        for (pos, sub) in greens {
            let path = pos.to_path(&t).unwrap();
            assert_eq!(fo.at(&path).unwrap(), &floor_encode(&sub).unwrap());
            assert_eq!(GreenPos::from_path(&t, &path).unwrap(), pos);
        }
    }
}
