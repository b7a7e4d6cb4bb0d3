//! Terms and formulas of arithmetic with a layer of defined symbols.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

/// Defined function symbols. Everything here is eliminable in favour of
/// `0, 1, +, ·` and quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    /// `p_i`, the i-th prime.
    NthPrime,
    Pow,
    Factorial,
    Binom,
    Pair,
    Lgh,
    Component,
    Concat,
    /// `subset(n, k)`: code of the k-th n-subset in colex order, counted
    /// from 1; 0 when `k = 0`.
    Subset,
    /// Gödel's β: `beta(c, d, i) = c mod (1 + (i + 1) d)`.
    Beta,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::NthPrime,
        Func::Pow,
        Func::Factorial,
        Func::Binom,
        Func::Pair,
        Func::Lgh,
        Func::Component,
        Func::Concat,
        Func::Subset,
        Func::Beta,
    ];

    pub fn arity(self) -> usize {
        match self {
            Func::NthPrime | Func::Factorial | Func::Lgh => 1,
            Func::Pow | Func::Binom | Func::Pair | Func::Component | Func::Concat | Func::Subset => 2,
            Func::Beta => 3,
        }
    }

    /// Name used by the text syntax.
    pub fn name(self) -> &'static str {
        match self {
            Func::NthPrime => "p",
            Func::Pow => "pow",
            Func::Factorial => "fact",
            Func::Binom => "binom",
            Func::Pair => "pair",
            Func::Lgh => "lgh",
            Func::Component => "comp",
            Func::Concat => "concat",
            Func::Subset => "subset",
            Func::Beta => "beta",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Defined predicate symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    Prime,
    Seq,
    /// `PartCode(H, m, n, c)`: H codes a partition of `[m]^n` into c pieces.
    PartCode,
    /// `InPart(H, n, k, b)`: the k-th n-subset carries color b in H.
    InPart,
}

impl Pred {
    pub const ALL: [Pred; 4] = [Pred::Prime, Pred::Seq, Pred::PartCode, Pred::InPart];

    pub fn arity(self) -> usize {
        match self {
            Pred::Prime | Pred::Seq => 1,
            Pred::PartCode | Pred::InPart => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pred::Prime => "Prime",
            Pred::Seq => "Seq",
            Pred::PartCode => "PartCode",
            Pred::InPart => "InPart",
        }
    }

    pub fn from_name(s: &str) -> Option<Pred> {
        Pred::ALL.into_iter().find(|p| p.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
}

/// `< t` or `<= t`, attached to a binder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub rel: Rel,
    pub term: Term,
}

impl Bound {
    pub fn lt(term: Term) -> Self {
        Bound { rel: Rel::Lt, term }
    }

    pub fn le(term: Term) -> Self {
        Bound { rel: Rel::Le, term }
    }

    /// The exclusive upper limit: `t` or `t + 1`.
    pub fn exclusive(&self) -> Term {
        match self.rel {
            Rel::Lt => self.term.clone(),
            Rel::Le => Term::add(self.term.clone(), Term::One),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BigOp {
    Sum,
    Prod,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    /// A numeral `n >= 2`, shorthand for `1 + ... + 1`.
    Num(BigUint),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    App(Func, Vec<Term>),
    /// `μ var < bound [body]`: least witness below the bound, else 0.
    Mu {
        var: String,
        bound: Box<Bound>,
        body: Box<Formula>,
    },
    /// `Σ` or `Π` over `var` below the bound.
    Big {
        op: BigOp,
        var: String,
        bound: Box<Bound>,
        body: Box<Term>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    All,
    Ex,
    /// `∃!`, a defined connective.
    ExUnique,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Le(Term, Term),
    /// `x | y`, i.e. `∃z (x · z = y)`.
    Divides(Term, Term),
    Pred(Pred, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant {
        q: Quant,
        var: String,
        bound: Option<Box<Bound>>,
        body: Box<Formula>,
    },
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

impl Term {
    pub fn num(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::Num(BigUint::from(n)),
        }
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn succ(self) -> Term {
        Term::add(self, Term::One)
    }

    pub fn app(f: Func, args: Vec<Term>) -> Term {
        debug_assert_eq!(args.len(), f.arity());
        Term::App(f, args)
    }

    pub fn app1(f: Func, a: Term) -> Term {
        Term::app(f, vec![a])
    }

    pub fn app2(f: Func, a: Term, b: Term) -> Term {
        Term::app(f, vec![a, b])
    }

    pub fn mu(v: &str, bound: Bound, body: Formula) -> Term {
        Term::Mu {
            var: v.to_string(),
            bound: Box::new(bound),
            body: Box::new(body),
        }
    }

    pub fn big(op: BigOp, v: &str, bound: Bound, body: Term) -> Term {
        Term::Big {
            op,
            var: v.to_string(),
            bound: Box::new(bound),
            body: Box::new(body),
        }
    }

    /// Replaces free occurrences of `name` by `by`.
    ///
    /// Callers must ensure `by` has no free variable that a binder inside
    /// `self` would capture; fresh names guarantee this.
    pub fn subst(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == name => by.clone(),
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.subst(name, by), b.subst(name, by)),
            Term::Mul(a, b) => Term::mul(a.subst(name, by), b.subst(name, by)),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.subst(name, by)).collect()),
            Term::Mu { var, bound, body } => Term::Mu {
                var: var.clone(),
                bound: Box::new(bound.subst(name, by)),
                body: if var == name { body.clone() } else { Box::new(body.subst(name, by)) },
            },
            Term::Big { op, var, bound, body } => Term::Big {
                op: *op,
                var: var.clone(),
                bound: Box::new(bound.subst(name, by)),
                body: if var == name { body.clone() } else { Box::new(body.subst(name, by)) },
            },
        }
    }

    fn collect_free(&self, bound_here: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                if !bound_here.contains(v) {
                    out.insert(v.clone());
                }
            }
            Term::Zero | Term::One | Term::Num(_) => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_free(bound_here, out);
                b.collect_free(bound_here, out);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_free(bound_here, out)),
            Term::Mu { var, bound, body } => {
                bound.term.collect_free(bound_here, out);
                bound_here.push(var.clone());
                body.collect_free(bound_here, out);
                bound_here.pop();
            }
            Term::Big { var, bound, body, .. } => {
                bound.term.collect_free(bound_here, out);
                bound_here.push(var.clone());
                body.collect_free(bound_here, out);
                bound_here.pop();
            }
        }
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One | Term::Num(_) => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_names(out)),
            Term::Mu { var, bound, body } => {
                out.insert(var.clone());
                bound.term.collect_names(out);
                body.collect_names(out);
            }
            Term::Big { var, bound, body, .. } => {
                out.insert(var.clone());
                bound.term.collect_names(out);
                body.collect_names(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    /// True for terms built from variables, numerals, `+` and `·` only.
    pub fn is_plain(&self) -> bool {
        match self {
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) => true,
            Term::Add(a, b) | Term::Mul(a, b) => a.is_plain() && b.is_plain(),
            _ => false,
        }
    }

    /// Number of nodes, binders' bodies included.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) => 1,
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::Mu { bound, body, .. } => 1 + bound.term.size() + body.size(),
            Term::Big { bound, body, .. } => 1 + bound.term.size() + body.size(),
        }
    }
}

impl Bound {
    pub fn subst(&self, name: &str, by: &Term) -> Bound {
        Bound {
            rel: self.rel,
            term: self.term.subst(name, by),
        }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; panics on an empty list.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).expect("nonempty conjunction")
    }

    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).expect("nonempty disjunction")
    }

    pub fn quant(q: Quant, v: &str, bound: Option<Bound>, body: Formula) -> Formula {
        Formula::Quant {
            q,
            var: v.to_string(),
            bound: bound.map(Box::new),
            body: Box::new(body),
        }
    }

    pub fn all(v: &str, body: Formula) -> Formula {
        Formula::quant(Quant::All, v, None, body)
    }

    pub fn ex(v: &str, body: Formula) -> Formula {
        Formula::quant(Quant::Ex, v, None, body)
    }

    pub fn all_b(v: &str, bound: Bound, body: Formula) -> Formula {
        Formula::quant(Quant::All, v, Some(bound), body)
    }

    pub fn ex_b(v: &str, bound: Bound, body: Formula) -> Formula {
        Formula::quant(Quant::Ex, v, Some(bound), body)
    }

    pub fn pred(p: Pred, args: Vec<Term>) -> Formula {
        debug_assert_eq!(args.len(), p.arity());
        Formula::Pred(p, args)
    }

    /// Capture-avoiding only when `by` uses names fresh for `self`.
    pub fn subst(&self, name: &str, by: &Term) -> Formula {
        let t = |x: &Term| x.subst(name, by);
        match self {
            Formula::Eq(a, b) => Formula::Eq(t(a), t(b)),
            Formula::Lt(a, b) => Formula::Lt(t(a), t(b)),
            Formula::Le(a, b) => Formula::Le(t(a), t(b)),
            Formula::Divides(a, b) => Formula::Divides(t(a), t(b)),
            Formula::Pred(p, args) => Formula::Pred(*p, args.iter().map(t).collect()),
            Formula::Not(f) => Formula::not(f.subst(name, by)),
            Formula::And(a, b) => Formula::and(a.subst(name, by), b.subst(name, by)),
            Formula::Or(a, b) => Formula::or(a.subst(name, by), b.subst(name, by)),
            Formula::Implies(a, b) => Formula::implies(a.subst(name, by), b.subst(name, by)),
            Formula::Iff(a, b) => Formula::iff(a.subst(name, by), b.subst(name, by)),
            Formula::Quant { q, var, bound, body } => Formula::Quant {
                q: *q,
                var: var.clone(),
                bound: bound.as_ref().map(|b| Box::new(b.subst(name, by))),
                body: if var == name { body.clone() } else { Box::new(body.subst(name, by)) },
            },
        }
    }

    /// Terms appearing directly in this node (atoms, predicate arguments,
    /// quantifier bounds).
    pub fn local_terms(&self) -> Vec<&Term> {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::Le(a, b) | Formula::Divides(a, b) => vec![a, b],
            Formula::Pred(_, args) => args.iter().collect(),
            Formula::Quant { bound: Some(b), .. } => vec![&b.term],
            _ => Vec::new(),
        }
    }

    pub(crate) fn collect_free(&self, bound_here: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Not(f) => f.collect_free(bound_here, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound_here, out);
                b.collect_free(bound_here, out);
            }
            Formula::Quant { var, bound, body, .. } => {
                if let Some(b) = bound {
                    b.term.collect_free(bound_here, out);
                }
                bound_here.push(var.clone());
                body.collect_free(bound_here, out);
                bound_here.pop();
            }
            _ => {
                for t in self.local_terms() {
                    t.collect_free(bound_here, out);
                }
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Not(f) => f.collect_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Quant { var, bound, body, .. } => {
                out.insert(var.clone());
                if let Some(b) = bound {
                    b.term.collect_names(out);
                }
                body.collect_names(out);
            }
            _ => {
                for t in self.local_terms() {
                    t.collect_names(out);
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Not(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Quant { bound, body, .. } => 1 + bound.as_ref().map_or(0, |b| b.term.size()) + body.size(),
            _ => 1 + self.local_terms().iter().map(|t| t.size()).sum::<usize>(),
        }
    }
}

impl Term {
    pub(crate) fn names_into(&self, out: &mut BTreeSet<String>) {
        self.collect_names(out);
    }
}

/// Fresh variable names `prefix1, prefix2, ...` avoiding a set of taken names.
#[derive(Clone, Debug, Default)]
pub struct NameGen {
    taken: BTreeSet<String>,
    counters: BTreeMap<String, usize>,
}

impl NameGen {
    pub fn new(taken: BTreeSet<String>) -> Self {
        NameGen {
            taken,
            counters: BTreeMap::new(),
        }
    }

    pub fn avoiding(f: &Formula) -> Self {
        NameGen::new(f.names())
    }

    pub fn reserve(&mut self, name: &str) {
        self.taken.insert(name.to_string());
    }

    pub fn reserve_term(&mut self, t: &Term) {
        t.names_into(&mut self.taken);
    }

    pub fn fresh(&mut self, prefix: &str) -> String {
        let counter = self.counters.entry(prefix.to_string()).or_default();
        loop {
            *counter += 1;
            let name = format!("{prefix}{counter}");
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}
