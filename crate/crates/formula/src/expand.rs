//! Rewriting passes.
//!
//! * [`expand_defined`] replaces `Seq`, `Prime`, `Lgh`, `(a)_x`, `binom`,
//!   `*`, `InPart`, `PartCode` and `∃!` by their definitions. The result
//!   still uses `μ`, `p`, `pow`, `fact`, `pair`, `subset`, `beta` and `Π`.
//! * [`expand_mu`] removes `μ`-terms through their graphs.
//! * [`to_pure`] goes all the way down to `0, 1, +, ·, <, =`, connectives
//!   and quantifiers with strict bounds.

use crate::ast::{BigOp, Bound, Formula, Func, NameGen, Pred, Quant, Rel, Term};

fn v(name: &str) -> Term {
    Term::Var(name.to_string())
}

fn p(t: Term) -> Term {
    Term::app1(Func::NthPrime, t)
}

fn pow(a: Term, b: Term) -> Term {
    Term::app2(Func::Pow, a, b)
}

fn fact(a: Term) -> Term {
    Term::app1(Func::Factorial, a)
}

fn beta(c: &str, d: &str, i: Term) -> Term {
    Term::app(Func::Beta, vec![v(c), v(d), i])
}

fn divides(a: Term, b: Term) -> Formula {
    Formula::Divides(a, b)
}

fn neq(a: Term, b: Term) -> Formula {
    Formula::not(Formula::Eq(a, b))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Lift `μ`-terms only; everything else stays.
    Mu,
    /// Lift every non-arithmetic term.
    Pure,
}

struct Expander {
    names: NameGen,
}

/// Level 1: defined predicates and functions replaced by their definitions.
pub fn expand_defined(f: &Formula) -> Formula {
    Expander { names: NameGen::avoiding(f) }.defined(f)
}

/// Replaces each `μ`-term by a bounded existential over its graph,
/// innermost first. `μ`-terms under a `Σ`/`Π` body are left in place.
pub fn expand_mu(f: &Formula) -> Formula {
    Expander { names: NameGen::avoiding(f) }.lift(f, Mode::Mu)
}

/// Level 2: a formula of pure arithmetic.
pub fn to_pure(f: &Formula) -> Formula {
    let mut ex = Expander { names: NameGen::avoiding(f) };
    let g = ex.prepare(f);
    let g = ex.lift(&g, Mode::Pure);
    ex.desugar(&g)
}

/// Formula at the requested level (0 leaves it unchanged).
pub fn at_level(f: &Formula, level: u8) -> Formula {
    match level {
        0 => f.clone(),
        1 => expand_defined(f),
        _ => to_pure(f),
    }
}

/// Checks that only `0, 1, +, ·, <, =`, connectives and quantifiers with
/// strict bounds occur.
pub fn check_pure(f: &Formula) -> Result<(), String> {
    fn term(t: &Term) -> Result<(), String> {
        match t {
            Term::Zero | Term::One | Term::Var(_) => Ok(()),
            Term::Add(a, b) | Term::Mul(a, b) => term(a).and(term(b)),
            other => Err(format!("term `{other}`")),
        }
    }
    match f {
        Formula::Eq(a, b) | Formula::Lt(a, b) => term(a).and(term(b)),
        Formula::Not(g) => check_pure(g),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            check_pure(a).and(check_pure(b))
        }
        Formula::Quant { q: Quant::ExUnique, .. } => Err("unique existence".into()),
        Formula::Quant { bound, body, .. } => {
            if let Some(b) = bound {
                if b.rel != Rel::Lt {
                    return Err("non-strict bound".into());
                }
                term(&b.term)?;
            }
            check_pure(body)
        }
        other => Err(format!("atom `{other}`")),
    }
}

/// Splits off the first liftable subterm of `t`, leaving `Var(hole)` in its
/// place. A construct is liftable once its arguments (or its bound) are.
fn extract(t: &Term, hole: &str, mode: Mode) -> Option<(Term, Term)> {
    match t {
        Term::Zero | Term::One | Term::Num(_) | Term::Var(_) => None,
        Term::Add(a, b) | Term::Mul(a, b) => {
            let rebuild = |x: Term, y: Term| match t {
                Term::Add(..) => Term::add(x, y),
                _ => Term::mul(x, y),
            };
            if let Some((h, c)) = extract(a, hole, mode) {
                return Some((rebuild(h, (**b).clone()), c));
            }
            extract(b, hole, mode).map(|(h, c)| (rebuild((**a).clone(), h), c))
        }
        Term::App(f, args) => {
            for (i, a) in args.iter().enumerate() {
                if let Some((h, c)) = extract(a, hole, mode) {
                    let mut args = args.clone();
                    args[i] = h;
                    return Some((Term::App(*f, args), c));
                }
            }
            match mode {
                Mode::Mu => None,
                Mode::Pure => Some((v(hole), t.clone())),
            }
        }
        Term::Mu { var, bound, body } => match extract(&bound.term, hole, mode) {
            Some((h, c)) => Some((
                Term::Mu {
                    var: var.clone(),
                    bound: Box::new(Bound { rel: bound.rel, term: h }),
                    body: body.clone(),
                },
                c,
            )),
            None => Some((v(hole), t.clone())),
        },
        Term::Big { op, var, bound, body } => match extract(&bound.term, hole, mode) {
            Some((h, c)) => Some((
                Term::Big {
                    op: *op,
                    var: var.clone(),
                    bound: Box::new(Bound { rel: bound.rel, term: h }),
                    body: body.clone(),
                },
                c,
            )),
            None => match mode {
                Mode::Mu => None,
                Mode::Pure => Some((v(hole), t.clone())),
            },
        },
    }
}

/// Rebuilds an atom (or bounded quantifier) with its `i`-th local term
/// replaced.
fn with_local(f: &Formula, i: usize, t: Term) -> Formula {
    let pick = |j: usize, old: &Term| if i == j { t.clone() } else { old.clone() };
    match f {
        Formula::Eq(a, b) => Formula::Eq(pick(0, a), pick(1, b)),
        Formula::Lt(a, b) => Formula::Lt(pick(0, a), pick(1, b)),
        Formula::Le(a, b) => Formula::Le(pick(0, a), pick(1, b)),
        Formula::Divides(a, b) => Formula::Divides(pick(0, a), pick(1, b)),
        Formula::Pred(q, args) => Formula::Pred(*q, args.iter().enumerate().map(|(j, a)| pick(j, a)).collect()),
        Formula::Quant { q, var, bound: Some(b), body } => Formula::Quant {
            q: *q,
            var: var.clone(),
            bound: Some(Box::new(Bound { rel: b.rel, term: t })),
            body: body.clone(),
        },
        _ => unreachable!("node without local terms"),
    }
}

impl Expander {
    // ---- level 1 ----

    fn defined(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Eq(a, b) => Formula::Eq(self.dterm(a), self.dterm(b)),
            Formula::Lt(a, b) => Formula::Lt(self.dterm(a), self.dterm(b)),
            Formula::Le(a, b) => Formula::Le(self.dterm(a), self.dterm(b)),
            Formula::Divides(a, b) => Formula::Divides(self.dterm(a), self.dterm(b)),
            Formula::Pred(q, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.dterm(a)).collect();
                self.pred(*q, args)
            }
            Formula::Not(g) => Formula::not(self.defined(g)),
            Formula::And(a, b) => Formula::and(self.defined(a), self.defined(b)),
            Formula::Or(a, b) => Formula::or(self.defined(a), self.defined(b)),
            Formula::Implies(a, b) => Formula::implies(self.defined(a), self.defined(b)),
            Formula::Iff(a, b) => Formula::iff(self.defined(a), self.defined(b)),
            Formula::Quant { q, var, bound, body } => {
                let bound = bound.as_ref().map(|b| Bound { rel: b.rel, term: self.dterm(&b.term) });
                let body = self.defined(body);
                if *q != Quant::ExUnique {
                    return Formula::quant(*q, var, bound, body);
                }
                // ∃!x φ  ~>  ∃x (φ ∧ ∀x' (φ[x'] → x' = x))
                let (x, body) = match &bound {
                    Some(b) if b.term.free_vars().contains(var) => {
                        let x = self.names.fresh("x");
                        let body = body.subst(var, &v(&x));
                        (x, body)
                    }
                    _ => (var.clone(), body),
                };
                let other = self.names.fresh("x");
                let unique = Formula::quant(
                    Quant::All,
                    &other,
                    bound.clone(),
                    Formula::implies(body.subst(&x, &v(&other)), Formula::Eq(v(&other), v(&x))),
                );
                Formula::quant(Quant::Ex, &x, bound, Formula::and(body, unique))
            }
        }
    }

    fn dterm(&mut self, t: &Term) -> Term {
        match t {
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) => t.clone(),
            Term::Add(a, b) => Term::add(self.dterm(a), self.dterm(b)),
            Term::Mul(a, b) => Term::mul(self.dterm(a), self.dterm(b)),
            Term::App(f, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.dterm(a)).collect();
                self.func(*f, args)
            }
            Term::Mu { var, bound, body } => Term::Mu {
                var: var.clone(),
                bound: Box::new(Bound { rel: bound.rel, term: self.dterm(&bound.term) }),
                body: Box::new(self.defined(body)),
            },
            Term::Big { op, var, bound, body } => Term::Big {
                op: *op,
                var: var.clone(),
                bound: Box::new(Bound { rel: bound.rel, term: self.dterm(&bound.term) }),
                body: Box::new(self.dterm(body)),
            },
        }
    }

    fn pred(&mut self, q: Pred, mut args: Vec<Term>) -> Formula {
        match q {
            Pred::Seq => self.seq(args.pop().unwrap()),
            Pred::Prime => {
                let a = args.pop().unwrap();
                let x = self.names.fresh("x");
                Formula::and_all([
                    neq(a.clone(), Term::Zero),
                    neq(a.clone(), Term::One),
                    Formula::all_b(
                        &x,
                        Bound::lt(a.clone()),
                        Formula::implies(
                            divides(v(&x), a.clone()),
                            Formula::or(Formula::Eq(a, v(&x)), Formula::Eq(v(&x), Term::One)),
                        ),
                    ),
                ])
            }
            Pred::InPart => {
                let [h, n, k, b]: [Term; 4] = args.try_into().unwrap();
                self.in_part(h, n, k, b)
            }
            Pred::PartCode => {
                let [h, m, n, c]: [Term; 4] = args.try_into().unwrap();
                let count = self.binom(m, n.clone());
                let k = self.names.fresh("k");
                let b = self.names.fresh("b");
                let colored = self.in_part(h.clone(), n, v(&k), v(&b));
                let every = Formula::all_b(
                    &k,
                    Bound::le(count.clone()),
                    Formula::implies(
                        Formula::Lt(Term::Zero, v(&k)),
                        Formula::ex_b(&b, Bound::lt(c), colored),
                    ),
                );
                let x = self.names.fresh("x");
                let comp = self.comp(h.clone(), v(&x));
                let exact = Formula::Eq(
                    h,
                    Term::big(BigOp::Prod, &x, Bound::lt(count), pow(p(v(&x)), comp.succ())),
                );
                Formula::and(every, exact)
            }
        }
    }

    /// `a = 1 ∨ (1 < a ∧ ∀x ≤ a (p(x+1) | a → p(x) | a))`
    fn seq(&mut self, a: Term) -> Formula {
        let x = self.names.fresh("x");
        Formula::or(
            Formula::Eq(a.clone(), Term::One),
            Formula::and(
                Formula::Lt(Term::One, a.clone()),
                Formula::all_b(
                    &x,
                    Bound::le(a.clone()),
                    Formula::implies(divides(p(v(&x).succ()), a.clone()), divides(p(v(&x)), a)),
                ),
            ),
        )
    }

    /// `∃η < k (η + 1 = k ∧ p(η)^(e+1) | H ∧ ¬ p(η)^(e+2) | H)` with
    /// `e = pair(subset(n, k), b)`.
    fn in_part(&mut self, h: Term, n: Term, k: Term, b: Term) -> Formula {
        let eta = self.names.fresh("eta");
        let e = Term::app2(Func::Pair, Term::app2(Func::Subset, n, k.clone()), b);
        Formula::ex_b(
            &eta,
            Bound::lt(k.clone()),
            Formula::and_all([
                Formula::Eq(v(&eta).succ(), k),
                divides(pow(p(v(&eta)), e.clone().succ()), h.clone()),
                Formula::not(divides(pow(p(v(&eta)), e.succ().succ()), h)),
            ]),
        )
    }

    fn func(&mut self, f: Func, mut args: Vec<Term>) -> Term {
        match f {
            Func::Lgh => self.lgh(args.pop().unwrap()),
            Func::Component => {
                let x = args.pop().unwrap();
                self.comp(args.pop().unwrap(), x)
            }
            Func::Binom => {
                let n = args.pop().unwrap();
                self.binom(args.pop().unwrap(), n)
            }
            Func::Concat => {
                let b = args.pop().unwrap();
                self.concat(args.pop().unwrap(), b)
            }
            _ => Term::App(f, args),
        }
    }

    /// `μx ≤ a [p(x) | a ∧ ¬ p(x+1) | a ∧ ¬ a = 1 ∧ Seq(a)]`
    fn lgh(&mut self, a: Term) -> Term {
        let x = self.names.fresh("x");
        let seq = self.seq(a.clone());
        Term::mu(
            &x,
            Bound::le(a.clone()),
            Formula::and_all([
                divides(p(v(&x)), a.clone()),
                Formula::not(divides(p(v(&x).succ()), a.clone())),
                neq(a, Term::One),
                seq,
            ]),
        )
    }

    /// `μy ≤ a [p(x)^(y+1) | a ∧ ¬ p(x)^(y+2) | a]`
    fn comp(&mut self, a: Term, x: Term) -> Term {
        let y = self.names.fresh("y");
        Term::mu(
            &y,
            Bound::le(a.clone()),
            Formula::and(
                divides(pow(p(x.clone()), v(&y).succ()), a.clone()),
                Formula::not(divides(pow(p(x), v(&y).succ().succ()), a)),
            ),
        )
    }

    /// `μh ≤ m! [∃d ≤ m (n + d = m ∧ h · (n! · d!) = m!)]`
    fn binom(&mut self, m: Term, n: Term) -> Term {
        let h = self.names.fresh("h");
        let d = self.names.fresh("d");
        Term::mu(
            &h,
            Bound::le(fact(m.clone())),
            Formula::ex_b(
                &d,
                Bound::le(m.clone()),
                Formula::and(
                    Formula::Eq(Term::add(n.clone(), v(&d)), m.clone()),
                    Formula::Eq(Term::mul(v(&h), Term::mul(fact(n), fact(v(&d)))), fact(m)),
                ),
            ),
        )
    }

    /// `μz ≤ a·P + a + b [(a = 1 ∧ z = b) ∨ (b = 1 ∧ z = a) ∨ (a ≠ 1 ∧ b ≠ 1 ∧ z = a·P)]`
    /// with `P = Π_{x ≤ lgh(b)} p(lgh(a)+x+1)^((b)_x+1)`.
    fn concat(&mut self, a: Term, b: Term) -> Term {
        let x = self.names.fresh("x");
        let la = self.lgh(a.clone());
        let lb = self.lgh(b.clone());
        let cb = self.comp(b.clone(), v(&x));
        let prod = Term::big(
            BigOp::Prod,
            &x,
            Bound::le(lb),
            pow(p(Term::add(la, v(&x)).succ()), cb.succ()),
        );
        let joined = Term::mul(a.clone(), prod);
        let z = self.names.fresh("z");
        Term::mu(
            &z,
            Bound::le(Term::add(Term::add(joined.clone(), a.clone()), b.clone())),
            Formula::or_all([
                Formula::and(Formula::Eq(a.clone(), Term::One), Formula::Eq(v(&z), b.clone())),
                Formula::and(Formula::Eq(b.clone(), Term::One), Formula::Eq(v(&z), a.clone())),
                Formula::and_all([neq(a, Term::One), neq(b, Term::One), Formula::Eq(v(&z), joined)]),
            ]),
        )
    }

    // ---- lifting ----

    /// Level 1 plus `pow` and `fact` rewritten as products.
    fn prepare(&mut self, f: &Formula) -> Formula {
        let g = self.defined(f);
        self.map_terms(&g)
    }

    fn map_terms(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Not(g) => Formula::not(self.map_terms(g)),
            Formula::And(a, b) => Formula::and(self.map_terms(a), self.map_terms(b)),
            Formula::Or(a, b) => Formula::or(self.map_terms(a), self.map_terms(b)),
            Formula::Implies(a, b) => Formula::implies(self.map_terms(a), self.map_terms(b)),
            Formula::Iff(a, b) => Formula::iff(self.map_terms(a), self.map_terms(b)),
            Formula::Quant { q, var, bound, body } => Formula::Quant {
                q: *q,
                var: var.clone(),
                bound: bound
                    .as_ref()
                    .map(|b| Box::new(Bound { rel: b.rel, term: self.products(&b.term) })),
                body: Box::new(self.map_terms(body)),
            },
            _ => {
                let mut g = f.clone();
                let terms: Vec<Term> = f.local_terms().into_iter().cloned().collect();
                for (i, t) in terms.iter().enumerate() {
                    g = with_local(&g, i, self.products(t));
                }
                g
            }
        }
    }

    fn products(&mut self, t: &Term) -> Term {
        match t {
            Term::Zero | Term::One | Term::Num(_) | Term::Var(_) => t.clone(),
            Term::Add(a, b) => Term::add(self.products(a), self.products(b)),
            Term::Mul(a, b) => Term::mul(self.products(a), self.products(b)),
            Term::App(f, args) => {
                let mut args: Vec<Term> = args.iter().map(|a| self.products(a)).collect();
                match f {
                    Func::Pow => {
                        let e = args.pop().unwrap();
                        let base = args.pop().unwrap();
                        let i = self.names.fresh("i");
                        Term::big(BigOp::Prod, &i, Bound::lt(e), base)
                    }
                    Func::Factorial => {
                        let i = self.names.fresh("i");
                        Term::big(BigOp::Prod, &i, Bound::lt(args.pop().unwrap()), v(&i).succ())
                    }
                    _ => Term::App(*f, args),
                }
            }
            Term::Mu { var, bound, body } => Term::Mu {
                var: var.clone(),
                bound: Box::new(Bound { rel: bound.rel, term: self.products(&bound.term) }),
                body: Box::new(self.map_terms(body)),
            },
            Term::Big { op, var, bound, body } => Term::Big {
                op: *op,
                var: var.clone(),
                bound: Box::new(Bound { rel: bound.rel, term: self.products(&bound.term) }),
                body: Box::new(self.products(body)),
            },
        }
    }

    fn lift(&mut self, f: &Formula, mode: Mode) -> Formula {
        match f {
            Formula::Not(g) => Formula::not(self.lift(g, mode)),
            Formula::And(a, b) => Formula::and(self.lift(a, mode), self.lift(b, mode)),
            Formula::Or(a, b) => Formula::or(self.lift(a, mode), self.lift(b, mode)),
            Formula::Implies(a, b) => Formula::implies(self.lift(a, mode), self.lift(b, mode)),
            Formula::Iff(a, b) => Formula::iff(self.lift(a, mode), self.lift(b, mode)),
            Formula::Pred(..) if mode == Mode::Pure => {
                let g = self.prepare(f);
                self.lift(&g, mode)
            }
            Formula::Quant { q, var, bound, body } => {
                if let Some(b) = bound {
                    if let Some(g) = self.lift_local(f, 0, &b.term, mode) {
                        return g;
                    }
                }
                Formula::Quant {
                    q: *q,
                    var: var.clone(),
                    bound: bound.clone(),
                    body: Box::new(self.lift(body, mode)),
                }
            }
            _ => {
                for (i, t) in f.local_terms().into_iter().enumerate() {
                    if let Some(g) = self.lift_local(f, i, t, mode) {
                        return g;
                    }
                }
                f.clone()
            }
        }
    }

    fn lift_local(&mut self, f: &Formula, i: usize, t: &Term, mode: Mode) -> Option<Formula> {
        // The empty name never clashes with a binder, so it is safe to
        // rename once we know something is lifted.
        let (rest, construct) = extract(t, "", mode)?;
        let hole = self.names.fresh("v");
        let rest = rest.subst("", &v(&hole));
        let (bound, graph) = self.graph(&construct, &hole, mode);
        let graph = match mode {
            Mode::Pure => self.prepare(&graph),
            Mode::Mu => graph,
        };
        let wrapped = Formula::quant(Quant::Ex, &hole, bound, Formula::and(graph, with_local(f, i, rest)));
        Some(self.lift(&wrapped, mode))
    }

    /// A formula saying `hole` equals the value of `t`, and a bound for it
    /// when one is at hand.
    fn graph(&mut self, t: &Term, hole: &str, mode: Mode) -> (Option<Bound>, Formula) {
        let out = v(hole);
        match t {
            Term::Mu { var, bound, body } => {
                let body = self.lift(body, mode);
                let at = |x: &str| body.subst(var, &v(x));
                let z1 = self.names.fresh("z");
                let z2 = self.names.fresh("z");
                let none_below = Formula::all_b(&z1, Bound::lt(out.clone()), Formula::not(at(&z1)));
                let none = Formula::all_b(&z2, (**bound).clone(), Formula::not(at(&z2)));
                let found = match bound.rel {
                    Rel::Lt => Formula::and_all([at(hole), Formula::Lt(out.clone(), bound.term.clone()), none_below]),
                    Rel::Le => Formula::and(at(hole), none_below),
                };
                let fallback = Formula::and(Formula::Eq(out, Term::Zero), none);
                (Some(Bound::le(bound.term.clone())), Formula::or(found, fallback))
            }
            Term::Big { op, var, bound, body } => {
                let (c, d) = (self.names.fresh("c"), self.names.fresh("d"));
                let limit = bound.exclusive();
                let (unit, step) = match op {
                    BigOp::Sum => (Term::Zero, Term::add(beta(&c, &d, v(var)), (**body).clone())),
                    BigOp::Prod => (Term::One, Term::mul(beta(&c, &d, v(var)), (**body).clone())),
                };
                let g = Formula::ex(
                    &c,
                    Formula::ex(
                        &d,
                        Formula::and_all([
                            Formula::Eq(beta(&c, &d, Term::Zero), unit),
                            Formula::all_b(
                                var,
                                Bound::lt(limit.clone()),
                                Formula::Eq(beta(&c, &d, v(var).succ()), step),
                            ),
                            Formula::Eq(out, beta(&c, &d, limit)),
                        ]),
                    ),
                );
                (None, g)
            }
            Term::App(Func::Pair, args) => {
                let (x, y) = (args[0].clone(), args[1].clone());
                let s = Term::add(x, y.clone());
                let tri = Term::mul(s.clone(), s.succ());
                let g = Formula::Eq(Term::add(out.clone(), out), Term::add(Term::add(tri.clone(), y.clone()), y.clone()));
                (Some(Bound::le(Term::add(tri, y))), g)
            }
            Term::App(Func::Beta, args) => {
                let (c, d, i) = (args[0].clone(), args[1].clone(), args[2].clone());
                let modulus = Term::add(Term::One, Term::mul(i.succ(), d));
                let q = self.names.fresh("q");
                let g = Formula::ex_b(
                    &q,
                    Bound::le(c.clone()),
                    Formula::Eq(c, Term::add(Term::mul(v(&q), modulus.clone()), out)),
                );
                (Some(Bound::lt(modulus)), g)
            }
            Term::App(Func::NthPrime, args) => {
                let i = args[0].clone();
                let (c, d, j, z) = (
                    self.names.fresh("c"),
                    self.names.fresh("d"),
                    self.names.fresh("j"),
                    self.names.fresh("z"),
                );
                let cur = beta(&c, &d, v(&j));
                let next = beta(&c, &d, v(&j).succ());
                let step = Formula::and_all([
                    Formula::Lt(cur.clone(), next.clone()),
                    Formula::pred(Pred::Prime, vec![next.clone()]),
                    Formula::all_b(
                        &z,
                        Bound::lt(next),
                        Formula::implies(Formula::Lt(cur, v(&z)), Formula::not(Formula::pred(Pred::Prime, vec![v(&z)]))),
                    ),
                ]);
                let g = Formula::ex(
                    &c,
                    Formula::ex(
                        &d,
                        Formula::and_all([
                            Formula::Eq(beta(&c, &d, Term::Zero), Term::num(2)),
                            Formula::all_b(&j, Bound::lt(i.clone()), step),
                            Formula::Eq(out, beta(&c, &d, i)),
                        ]),
                    ),
                );
                (None, g)
            }
            Term::App(Func::Subset, args) => {
                let (n, k) = (args[0].clone(), args[1].clone());
                let (c, d) = (self.names.fresh("c"), self.names.fresh("d"));
                let (j1, j2, j3) = (self.names.fresh("j"), self.names.fresh("j"), self.names.fresh("j"));
                let increasing = Formula::all_b(
                    &j1,
                    Bound::lt(n.clone()),
                    Formula::implies(
                        Formula::Lt(v(&j1).succ(), n.clone()),
                        Formula::Lt(beta(&c, &d, v(&j1)), beta(&c, &d, v(&j1).succ())),
                    ),
                );
                let rank = Term::big(
                    BigOp::Sum,
                    &j2,
                    Bound::lt(n.clone()),
                    Term::app2(Func::Binom, beta(&c, &d, v(&j2)), v(&j2).succ()),
                );
                let code = Term::big(
                    BigOp::Prod,
                    &j3,
                    Bound::lt(n),
                    pow(p(v(&j3)), beta(&c, &d, v(&j3)).succ()),
                );
                let g = Formula::or(
                    Formula::and(Formula::Eq(k.clone(), Term::Zero), Formula::Eq(out.clone(), Term::Zero)),
                    Formula::and(
                        Formula::Lt(Term::Zero, k.clone()),
                        Formula::ex(
                            &c,
                            Formula::ex(
                                &d,
                                Formula::and_all([
                                    increasing,
                                    Formula::Eq(rank.succ(), k),
                                    Formula::Eq(out, code),
                                ]),
                            ),
                        ),
                    ),
                );
                (None, g)
            }
            other => unreachable!("no graph for `{other}`"),
        }
    }

    // ---- final desugaring ----

    fn desugar(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Eq(a, b) => Formula::Eq(numerals(a), numerals(b)),
            Formula::Lt(a, b) => Formula::Lt(numerals(a), numerals(b)),
            Formula::Le(a, b) => {
                let (a, b) = (numerals(a), numerals(b));
                Formula::or(Formula::Lt(a.clone(), b.clone()), Formula::Eq(a, b))
            }
            Formula::Divides(a, b) => {
                let (a, b) = (numerals(a), numerals(b));
                let z = self.names.fresh("z");
                Formula::ex_b(&z, Bound::lt(b.clone().succ()), Formula::Eq(Term::mul(a, v(&z)), b))
            }
            Formula::Pred(..) => unreachable!("predicates are expanded before desugaring"),
            Formula::Not(g) => Formula::not(self.desugar(g)),
            Formula::And(a, b) => Formula::and(self.desugar(a), self.desugar(b)),
            Formula::Or(a, b) => Formula::or(self.desugar(a), self.desugar(b)),
            Formula::Implies(a, b) => Formula::implies(self.desugar(a), self.desugar(b)),
            Formula::Iff(a, b) => Formula::iff(self.desugar(a), self.desugar(b)),
            Formula::Quant { q, var, bound, body } => Formula::quant(
                *q,
                var,
                bound.as_ref().map(|b| Bound::lt(numerals(&b.exclusive()))),
                self.desugar(body),
            ),
        }
    }
}

/// Numerals spelled out as `1 + ... + 1`.
fn numerals(t: &Term) -> Term {
    match t {
        Term::Num(n) => {
            let n = u64::try_from(n).expect("numeral too large to spell out");
            (1..n).fold(Term::One, |acc, _| Term::add(acc, Term::One))
        }
        Term::Add(a, b) => Term::add(numerals(a), numerals(b)),
        Term::Mul(a, b) => Term::mul(numerals(a), numerals(b)),
        _ => t.clone(),
    }
}
