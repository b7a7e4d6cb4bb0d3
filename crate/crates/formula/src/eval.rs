//! Evaluation over the naturals with bounded search.
//!
//! Bounded quantifiers, `μ` and `Σ`/`Π` are evaluated by enumeration.
//! Unbounded quantifiers are refused unless the caller supplies a budget,
//! in which case they range over `[0, budget)`. Defined symbols are
//! computed through the codec in `phcalc_core::godel`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use phcalc_core::godel::{self, CodecError};
use phcalc_core::subset::{binomial, colex_unrank};
use thiserror::Error;

use crate::ast::{BigOp, Bound, Formula, Func, Pred, Quant, Term};

pub type Env = BTreeMap<String, BigUint>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbounded quantifier over `{0}` and no quantifier budget")]
    Unbounded(String),
    #[error("free variable `{0}` has no value")]
    FreeVar(String),
    #[error("step budget of {0} exhausted")]
    Steps(u64),
    #[error("value too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Largest exponent bit size `pow` will materialize.
const POW_BIT_LIMIT: u64 = 1 << 26;

#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    /// Range `[0, b)` for unbounded quantifiers; `None` refuses them.
    pub unbounded: Option<u64>,
    /// Total iterations of all binders before giving up.
    pub max_steps: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            unbounded: None,
            max_steps: 50_000_000,
        }
    }
}

/// Truth value of `f` with free variables from `env`.
pub fn eval_bounded(f: &Formula, env: &Env, quantifier_budget: Option<u64>) -> Result<bool, EvalError> {
    let cfg = EvalConfig {
        unbounded: quantifier_budget,
        ..EvalConfig::default()
    };
    Evaluator::new(env, cfg).formula(f)
}

pub fn eval_term(t: &Term, env: &Env) -> Result<BigUint, EvalError> {
    Evaluator::new(env, EvalConfig::default()).term(t)
}

pub struct Evaluator {
    scope: Vec<(String, BigUint)>,
    cfg: EvalConfig,
    steps: u64,
}

fn small<T: TryFrom<u64>>(x: &BigUint, what: &str) -> Result<T, EvalError> {
    x.to_u64()
        .and_then(|v| T::try_from(v).ok())
        .ok_or_else(|| EvalError::TooLarge(format!("{what} = {x}")))
}

impl Evaluator {
    pub fn new(env: &Env, cfg: EvalConfig) -> Self {
        Evaluator {
            scope: env.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            cfg,
            steps: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn tick(&mut self) -> Result<(), EvalError> {
        self.steps += 1;
        if self.steps > self.cfg.max_steps {
            return Err(EvalError::Steps(self.cfg.max_steps));
        }
        Ok(())
    }

    fn lookup(&self, v: &str) -> Result<BigUint, EvalError> {
        self.scope
            .iter()
            .rev()
            .find(|(k, _)| k == v)
            .map(|(_, x)| x.clone())
            .ok_or_else(|| EvalError::FreeVar(v.to_string()))
    }

    fn limit(&mut self, b: &Bound) -> Result<BigUint, EvalError> {
        let t = self.term(&b.term)?;
        Ok(match b.rel {
            crate::ast::Rel::Lt => t,
            crate::ast::Rel::Le => t + 1u32,
        })
    }

    /// Calls `f` for `var = 0, 1, ...` below `limit` until it returns `Some`.
    fn scan<T>(
        &mut self,
        var: &str,
        limit: &BigUint,
        mut f: impl FnMut(&mut Self) -> Result<Option<T>, EvalError>,
    ) -> Result<Option<T>, EvalError> {
        let mut x = BigUint::zero();
        self.scope.push((var.to_string(), BigUint::zero()));
        let mut out = Ok(None);
        while &x < limit {
            if let Err(e) = self.tick() {
                out = Err(e);
                break;
            }
            self.scope.last_mut().expect("pushed").1 = x.clone();
            match f(self) {
                Ok(None) => {}
                other => {
                    out = other;
                    break;
                }
            }
            x += 1u32;
        }
        self.scope.pop();
        out
    }

    pub fn formula(&mut self, f: &Formula) -> Result<bool, EvalError> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)? == self.term(b)?,
            Formula::Lt(a, b) => self.term(a)? < self.term(b)?,
            Formula::Le(a, b) => self.term(a)? <= self.term(b)?,
            Formula::Divides(a, b) => {
                let (a, b) = (self.term(a)?, self.term(b)?);
                if a.is_zero() {
                    b.is_zero()
                } else {
                    (b % a).is_zero()
                }
            }
            Formula::Pred(p, args) => {
                let vals = args.iter().map(|t| self.term(t)).collect::<Result<Vec<_>, _>>()?;
                self.pred(*p, &vals)?
            }
            Formula::Not(g) => !self.formula(g)?,
            Formula::And(a, b) => self.formula(a)? && self.formula(b)?,
            Formula::Or(a, b) => self.formula(a)? || self.formula(b)?,
            Formula::Implies(a, b) => !self.formula(a)? || self.formula(b)?,
            Formula::Iff(a, b) => self.formula(a)? == self.formula(b)?,
            Formula::Quant { q, var, bound, body } => {
                let limit = match bound {
                    Some(b) => self.limit(b)?,
                    None => match self.cfg.unbounded {
                        Some(n) => BigUint::from(n),
                        None => return Err(EvalError::Unbounded(var.clone())),
                    },
                };
                match q {
                    Quant::All => self.scan(var, &limit, |ev| Ok((!ev.formula(body)?).then_some(())))?.is_none(),
                    Quant::Ex => self.scan(var, &limit, |ev| Ok(ev.formula(body)?.then_some(())))?.is_some(),
                    Quant::ExUnique => {
                        let mut seen = 0;
                        self.scan(var, &limit, |ev| {
                            if ev.formula(body)? {
                                seen += 1;
                            }
                            Ok((seen > 1).then_some(()))
                        })?;
                        seen == 1
                    }
                }
            }
        })
    }

    pub fn term(&mut self, t: &Term) -> Result<BigUint, EvalError> {
        Ok(match t {
            Term::Zero => BigUint::zero(),
            Term::One => BigUint::one(),
            Term::Num(n) => n.clone(),
            Term::Var(v) => self.lookup(v)?,
            Term::Add(a, b) => self.term(a)? + self.term(b)?,
            Term::Mul(a, b) => self.term(a)? * self.term(b)?,
            Term::App(f, args) => {
                let vals = args.iter().map(|t| self.term(t)).collect::<Result<Vec<_>, _>>()?;
                apply(*f, &vals)?
            }
            Term::Mu { var, bound, body } => {
                let limit = self.limit(bound)?;
                let hit = self.scan(var, &limit, |ev| {
                    Ok(if ev.formula(body)? { Some(ev.lookup(var)?) } else { None })
                })?;
                hit.unwrap_or_default()
            }
            Term::Big { op, var, bound, body } => {
                let limit = self.limit(bound)?;
                let mut acc = if *op == BigOp::Sum { BigUint::zero() } else { BigUint::one() };
                self.scan(var, &limit, |ev| {
                    let v = ev.term(body)?;
                    match op {
                        BigOp::Sum => acc += v,
                        BigOp::Prod => acc *= v,
                    }
                    Ok(None::<()>)
                })?;
                acc
            }
        })
    }

    fn pred(&mut self, p: Pred, a: &[BigUint]) -> Result<bool, EvalError> {
        Ok(match p {
            Pred::Prime => is_prime(&a[0])?,
            Pred::Seq => godel::seq_predicate_literal(&a[0])?,
            Pred::PartCode => part_code(&a[0], &a[1], &a[2], &a[3])?,
            Pred::InPart => in_part(&a[0], &a[1], &a[2], &a[3])?,
        })
    }
}

fn is_prime(p: &BigUint) -> Result<bool, EvalError> {
    let p: u64 = small(p, "Prime argument")?;
    if p < 2 {
        return Ok(false);
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return Ok(false);
        }
        d += 1;
    }
    Ok(true)
}

fn pow(x: &BigUint, y: &BigUint) -> Result<BigUint, EvalError> {
    if y.is_zero() {
        return Ok(BigUint::one());
    }
    if x.is_zero() || x.is_one() {
        return Ok(x.clone());
    }
    let e: u32 = small(y, "exponent")?;
    if x.bits().saturating_mul(u64::from(e)) > POW_BIT_LIMIT {
        return Err(EvalError::TooLarge(format!("{x}^{y}")));
    }
    Ok(x.pow(e))
}

/// Subset code for `k >= 1`; `0` at `k = 0`.
fn subset_code(n: &BigUint, k: &BigUint) -> Result<BigUint, EvalError> {
    if k.is_zero() {
        return Ok(BigUint::zero());
    }
    let n: usize = small(n, "subset size")?;
    let rank: u64 = small(&(k - 1u32), "subset index")?;
    Ok(godel::encode_set(&colex_unrank(rank, n)).value)
}

fn in_part(h: &BigUint, n: &BigUint, k: &BigUint, color: &BigUint) -> Result<bool, EvalError> {
    if k.is_zero() || h.is_zero() {
        return Ok(false);
    }
    let idx: u64 = small(&(k - 1u32), "subset index")?;
    let e = godel::pair(&subset_code(n, k)?, color) + 1u32;
    let p = BigUint::from(godel::nth_prime(idx)?);
    // exponent of p in h, compared without materializing p^e
    let mut rest = h.clone();
    let mut v = BigUint::zero();
    while (&rest % &p).is_zero() {
        rest /= &p;
        v += 1u32;
        if v > e {
            return Ok(false);
        }
    }
    Ok(v == e)
}

fn part_code(h: &BigUint, m: &BigUint, n: &BigUint, c: &BigUint) -> Result<bool, EvalError> {
    let m: u32 = small(m, "m")?;
    let n: usize = small(n, "n")?;
    if binomial(u64::from(m), n as u64) == 0 {
        return Ok(h.is_one());
    }
    let Ok(c) = u32::try_from(c) else {
        return Err(EvalError::TooLarge(format!("c = {c}")));
    };
    if c == 0 {
        return Ok(false);
    }
    match godel::decode_partition(h, m, n, c) {
        Ok(_) => Ok(true),
        Err(CodecError::Structural(_) | CodecError::Zero | CodecError::NotSetCode(_) | CodecError::NotSeq { .. }) => {
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

/// Total reading of `a * b`: projections at 1, otherwise the product
/// formula with the literal `Lgh` and `(b)_x`.
fn concat_total(a: &BigUint, b: &BigUint) -> Result<BigUint, EvalError> {
    if a.is_one() {
        return Ok(b.clone());
    }
    if b.is_one() {
        return Ok(a.clone());
    }
    let la = godel::lgh_literal(a)?;
    let lb = godel::lgh_literal(b)?;
    let mut acc = a.clone();
    for x in 0..=lb {
        let p = BigUint::from(godel::nth_prime(la + x + 1)?);
        acc *= pow(&p, &(godel::component_literal(b, x)? + 1u32))?;
    }
    Ok(acc)
}

pub fn apply(f: Func, a: &[BigUint]) -> Result<BigUint, EvalError> {
    Ok(match f {
        Func::NthPrime => BigUint::from(godel::nth_prime(small(&a[0], "prime index")?)?),
        Func::Pow => pow(&a[0], &a[1])?,
        Func::Factorial => {
            let n: u64 = small(&a[0], "factorial argument")?;
            if n > 20_000 {
                return Err(EvalError::TooLarge(format!("{n}!")));
            }
            (1..=n).map(BigUint::from).product()
        }
        Func::Binom => {
            if a[1] > a[0] {
                BigUint::zero()
            } else {
                let m = &a[0];
                let k: u64 = small(&(m - &a[1]).min(a[1].clone()), "binomial lower index")?;
                if k > 100_000 {
                    return Err(EvalError::TooLarge(format!("binom({}, {})", a[0], a[1])));
                }
                let mut acc = BigUint::one();
                for i in 0..k {
                    acc = acc * (m - i) / (i + 1);
                }
                acc
            }
        }
        Func::Pair => godel::pair(&a[0], &a[1]),
        Func::Lgh => BigUint::from(godel::lgh_literal(&a[0])?),
        Func::Component => match a[1].to_u64() {
            Some(x) => godel::component_literal(&a[0], x)?,
            // no prime of that index divides anything we can hold
            None => BigUint::zero(),
        },
        Func::Concat => concat_total(&a[0], &a[1])?,
        Func::Subset => subset_code(&a[0], &a[1])?,
        Func::Beta => &a[0] % (BigUint::one() + (&a[2] + 1u32) * &a[1]),
    })
}
