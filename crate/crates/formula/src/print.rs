//! Text, LaTeX and s-expression renderings.
//!
//! The text form is the one accepted by [`crate::parse`]; the other two
//! are output-only.

use std::fmt::{self, Write};

use crate::ast::{BigOp, Bound, Formula, Func, Pred, Quant, Rel, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Sexpr,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "sexpr" => Ok(Format::Sexpr),
            _ => Err(format!("unknown format {s:?} (text, latex, sexpr)")),
        }
    }
}

pub fn print(f: &Formula, fmt: Format) -> String {
    let mut out = String::new();
    match fmt {
        Format::Text => Text.formula(f, 0, &mut out),
        Format::Latex => Latex.formula(f, 0, &mut out),
        Format::Sexpr => sexpr_formula(f, &mut out),
    }
    .expect("writing to a String");
    out
}

pub fn print_term(t: &Term, fmt: Format) -> String {
    let mut out = String::new();
    match fmt {
        Format::Text => Text.term(t, 0, &mut out),
        Format::Latex => Latex.term(t, 0, &mut out),
        Format::Sexpr => sexpr_term(t, &mut out),
    }
    .expect("writing to a String");
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self, Format::Text))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self, Format::Text))
    }
}

// formula precedences: iff 0, implies 1, or 2, and 3, prefix 4, atom 5
fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(_) | Formula::Quant { .. } => 4,
        _ => 5,
    }
}

// term precedences: + 1, · 2, atom 3
fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Add(..) => 1,
        Term::Mul(..) => 2,
        _ => 3,
    }
}

struct Ops {
    iff: &'static str,
    implies: &'static str,
    or: &'static str,
    and: &'static str,
}

trait Style {
    const OPS: Ops;

    fn atom(&self, f: &Formula, out: &mut String) -> fmt::Result;
    fn prefix(&self, f: &Formula, out: &mut String) -> fmt::Result;
    fn term_atom(&self, t: &Term, out: &mut String) -> fmt::Result;
    fn plus(&self) -> &'static str;
    fn times(&self) -> &'static str;

    fn formula(&self, f: &Formula, min: u8, out: &mut String) -> fmt::Result {
        let p = formula_prec(f);
        if p < min {
            out.push('(');
        }
        match f {
            Formula::Iff(a, b) => self.binary(a, Self::OPS.iff, b, 0, false, out)?,
            Formula::Implies(a, b) => self.binary(a, Self::OPS.implies, b, 1, true, out)?,
            Formula::Or(a, b) => self.binary(a, Self::OPS.or, b, 2, false, out)?,
            Formula::And(a, b) => self.binary(a, Self::OPS.and, b, 3, false, out)?,
            Formula::Not(_) | Formula::Quant { .. } => self.prefix(f, out)?,
            _ => self.atom(f, out)?,
        }
        if p < min {
            out.push(')');
        }
        Ok(())
    }

    fn binary(&self, a: &Formula, op: &str, b: &Formula, p: u8, right_assoc: bool, out: &mut String) -> fmt::Result {
        let (lp, rp) = if right_assoc { (p + 1, p) } else { (p, p + 1) };
        self.formula(a, lp, out)?;
        write!(out, " {op} ")?;
        self.formula(b, rp, out)
    }

    fn term(&self, t: &Term, min: u8, out: &mut String) -> fmt::Result {
        let p = term_prec(t);
        if p < min {
            out.push('(');
        }
        match t {
            Term::Add(a, b) => {
                self.term(a, 1, out)?;
                out.push_str(self.plus());
                self.term(b, 2, out)?;
            }
            Term::Mul(a, b) => {
                self.term(a, 2, out)?;
                out.push_str(self.times());
                self.term(b, 3, out)?;
            }
            _ => self.term_atom(t, out)?,
        }
        if p < min {
            out.push(')');
        }
        Ok(())
    }

    fn args(&self, args: &[Term], out: &mut String) -> fmt::Result {
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.term(a, 0, out)?;
        }
        out.push(')');
        Ok(())
    }
}

fn rel_text(rel: Rel) -> &'static str {
    match rel {
        Rel::Lt => "<",
        Rel::Le => "<=",
    }
}

struct Text;

impl Text {
    fn bound(&self, b: &Bound, out: &mut String) -> fmt::Result {
        out.push_str(rel_text(b.rel));
        self.term(&b.term, 0, out)
    }
}

impl Style for Text {
    const OPS: Ops = Ops {
        iff: "<->",
        implies: "->",
        or: "\\/",
        and: "/\\",
    };

    fn plus(&self) -> &'static str {
        " + "
    }

    fn times(&self) -> &'static str {
        " * "
    }

    fn atom(&self, f: &Formula, out: &mut String) -> fmt::Result {
        let (a, op, b) = match f {
            Formula::Eq(a, b) => (a, "=", b),
            Formula::Lt(a, b) => (a, "<", b),
            Formula::Le(a, b) => (a, "<=", b),
            Formula::Divides(a, b) => (a, "|", b),
            Formula::Pred(p, args) => {
                out.push_str(p.name());
                return self.args(args, out);
            }
            _ => unreachable!("not an atom"),
        };
        self.term(a, 0, out)?;
        write!(out, " {op} ")?;
        self.term(b, 0, out)
    }

    fn prefix(&self, f: &Formula, out: &mut String) -> fmt::Result {
        match f {
            Formula::Not(g) => {
                out.push('~');
                self.formula(g, 4, out)
            }
            Formula::Quant { q, var, bound, body } => {
                out.push_str(match q {
                    Quant::All => "A",
                    Quant::Ex => "E",
                    Quant::ExUnique => "E!",
                });
                out.push_str(var);
                if let Some(b) = bound {
                    self.bound(b, out)?;
                }
                out.push('.');
                self.formula(body, 4, out)
            }
            _ => unreachable!("not a prefix formula"),
        }
    }

    fn term_atom(&self, t: &Term, out: &mut String) -> fmt::Result {
        match t {
            Term::Zero => out.push('0'),
            Term::One => out.push('1'),
            Term::Num(n) => write!(out, "{n}")?,
            Term::Var(v) => out.push_str(v),
            Term::App(f, args) => {
                out.push_str(f.name());
                self.args(args, out)?;
            }
            Term::Mu { var, bound, body } => {
                write!(out, "mu {var}")?;
                self.bound(bound, out)?;
                out.push_str(".[");
                self.formula(body, 0, out)?;
                out.push(']');
            }
            Term::Big { op, var, bound, body } => {
                out.push_str(match op {
                    BigOp::Sum => "sum ",
                    BigOp::Prod => "prod ",
                });
                out.push_str(var);
                self.bound(bound, out)?;
                out.push_str(".[");
                self.term(body, 0, out)?;
                out.push(']');
            }
            Term::Add(..) | Term::Mul(..) => unreachable!("handled by term()"),
        }
        Ok(())
    }
}

struct Latex;

/// `beta` → `\beta`, `k1` → `k_{1}`, `x10` → `x_{10}`.
fn latex_var(v: &str, out: &mut String) {
    const GREEK: [&str; 12] = [
        "alpha", "beta", "gamma", "delta", "eta", "theta", "lambda", "mu", "rho", "sigma", "tau", "omega",
    ];
    let split = v.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (base, digits) = v.split_at(split);
    if GREEK.contains(&base) {
        out.push('\\');
    }
    out.push_str(base);
    if !digits.is_empty() && !base.is_empty() {
        write!(out, "_{{{digits}}}").expect("string write");
    } else {
        out.push_str(digits);
    }
}

impl Latex {
    fn bound(&self, b: &Bound, out: &mut String) -> fmt::Result {
        out.push_str(match b.rel {
            Rel::Lt => " < ",
            Rel::Le => " \\leq ",
        });
        self.term(&b.term, 0, out)
    }

    fn braced(&self, t: &Term, out: &mut String) -> fmt::Result {
        out.push('{');
        self.term(t, 0, out)?;
        out.push('}');
        Ok(())
    }
}

impl Style for Latex {
    const OPS: Ops = Ops {
        iff: "\\leftrightarrow",
        implies: "\\rightarrow",
        or: "\\vee",
        and: "\\wedge",
    };

    fn plus(&self) -> &'static str {
        " + "
    }

    fn times(&self) -> &'static str {
        " \\cdot "
    }

    fn atom(&self, f: &Formula, out: &mut String) -> fmt::Result {
        let (a, op, b) = match f {
            Formula::Eq(a, b) => (a, "=", b),
            Formula::Lt(a, b) => (a, "<", b),
            Formula::Le(a, b) => (a, "\\leq", b),
            Formula::Divides(a, b) => (a, "\\mid", b),
            Formula::Pred(p, args) => {
                return match p {
                    Pred::Prime => {
                        out.push_str("\\mathrm{Prime}");
                        self.args(args, out)
                    }
                    Pred::Seq => {
                        self.term(&args[0], 0, out)?;
                        out.push_str(" \\in \\mathrm{Seq}");
                        Ok(())
                    }
                    Pred::PartCode => {
                        self.term(&args[0], 0, out)?;
                        out.push_str(" \\in \\mathrm{Part}([");
                        self.term(&args[1], 0, out)?;
                        out.push_str("]^");
                        self.braced(&args[2], out)?;
                        out.push_str(", ");
                        self.term(&args[3], 0, out)?;
                        out.push(')');
                        Ok(())
                    }
                    Pred::InPart => {
                        out.push_str("(m^");
                        self.braced(&args[1], out)?;
                        out.push('_');
                        self.braced(&args[2], out)?;
                        out.push_str(", c_");
                        self.braced(&args[3], out)?;
                        out.push_str(") \\in ");
                        self.term(&args[0], 3, out)
                    }
                };
            }
            _ => unreachable!("not an atom"),
        };
        self.term(a, 0, out)?;
        write!(out, " {op} ")?;
        self.term(b, 0, out)
    }

    fn prefix(&self, f: &Formula, out: &mut String) -> fmt::Result {
        match f {
            Formula::Not(g) => {
                if let Formula::Eq(a, b) = &**g {
                    self.term(a, 0, out)?;
                    out.push_str(" \\neq ");
                    return self.term(b, 0, out);
                }
                out.push_str("\\neg ");
                self.formula(g, 4, out)
            }
            Formula::Quant { q, var, bound, body } => {
                out.push_str(match q {
                    Quant::All => "\\forall ",
                    Quant::Ex => "\\exists ",
                    Quant::ExUnique => "\\exists! ",
                });
                latex_var(var, out);
                if let Some(b) = bound {
                    self.bound(b, out)?;
                }
                out.push_str("\\, ");
                if formula_prec(body) < 4 {
                    out.push('[');
                    self.formula(body, 0, out)?;
                    out.push(']');
                    Ok(())
                } else {
                    self.formula(body, 4, out)
                }
            }
            _ => unreachable!("not a prefix formula"),
        }
    }

    fn term_atom(&self, t: &Term, out: &mut String) -> fmt::Result {
        match t {
            Term::Zero => out.push('0'),
            Term::One => out.push('1'),
            Term::Num(n) => write!(out, "{n}")?,
            Term::Var(v) => latex_var(v, out),
            Term::App(f, a) => match f {
                Func::NthPrime => {
                    out.push_str("p_");
                    self.braced(&a[0], out)?;
                }
                Func::Pow => {
                    out.push('{');
                    self.term(&a[0], 3, out)?;
                    out.push_str("}^");
                    self.braced(&a[1], out)?;
                }
                Func::Factorial => {
                    self.term(&a[0], 3, out)?;
                    out.push('!');
                }
                Func::Binom => {
                    out.push_str("\\binom");
                    self.braced(&a[0], out)?;
                    self.braced(&a[1], out)?;
                }
                Func::Pair => {
                    out.push_str("\\langle ");
                    self.term(&a[0], 0, out)?;
                    out.push_str(", ");
                    self.term(&a[1], 0, out)?;
                    out.push_str("\\rangle");
                }
                Func::Lgh => {
                    out.push_str("\\mathrm{Lgh}");
                    self.args(a, out)?;
                }
                Func::Component => {
                    out.push('(');
                    self.term(&a[0], 0, out)?;
                    out.push_str(")_");
                    self.braced(&a[1], out)?;
                }
                Func::Concat => {
                    self.term(&a[0], 3, out)?;
                    out.push_str(" * ");
                    self.term(&a[1], 3, out)?;
                }
                Func::Subset => {
                    out.push_str("\\lceil m^");
                    self.braced(&a[0], out)?;
                    out.push('_');
                    self.braced(&a[1], out)?;
                    out.push_str("\\rceil");
                }
                Func::Beta => {
                    out.push_str("\\operatorname{\\beta}");
                    self.args(a, out)?;
                }
            },
            Term::Mu { var, bound, body } => {
                out.push_str("\\mu ");
                latex_var(var, out);
                self.bound(bound, out)?;
                out.push('[');
                self.formula(body, 0, out)?;
                out.push(']');
            }
            Term::Big { op, var, bound, body } => {
                out.push_str(match op {
                    BigOp::Sum => "\\sum_{",
                    BigOp::Prod => "\\prod_{",
                });
                latex_var(var, out);
                self.bound(bound, out)?;
                out.push_str("} ");
                self.term(body, 3, out)?;
            }
            Term::Add(..) | Term::Mul(..) => unreachable!("handled by term()"),
        }
        Ok(())
    }
}

fn sexpr_bound(b: &Bound, out: &mut String) -> fmt::Result {
    write!(out, "({} ", rel_text(b.rel))?;
    sexpr_term(&b.term, out)?;
    out.push(')');
    Ok(())
}

fn sexpr_term(t: &Term, out: &mut String) -> fmt::Result {
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Num(n) => write!(out, "{n}")?,
        Term::Var(v) => out.push_str(v),
        Term::Add(a, b) | Term::Mul(a, b) => {
            out.push_str(if matches!(t, Term::Add(..)) { "(+ " } else { "(* " });
            sexpr_term(a, out)?;
            out.push(' ');
            sexpr_term(b, out)?;
            out.push(')');
        }
        Term::App(f, args) => {
            write!(out, "({}", f.name())?;
            for a in args {
                out.push(' ');
                sexpr_term(a, out)?;
            }
            out.push(')');
        }
        Term::Mu { var, bound, body } => {
            write!(out, "(mu {var} ")?;
            sexpr_bound(bound, out)?;
            out.push(' ');
            sexpr_formula(body, out)?;
            out.push(')');
        }
        Term::Big { op, var, bound, body } => {
            let name = if *op == BigOp::Sum { "sum" } else { "prod" };
            write!(out, "({name} {var} ")?;
            sexpr_bound(bound, out)?;
            out.push(' ');
            sexpr_term(body, out)?;
            out.push(')');
        }
    }
    Ok(())
}

fn sexpr_formula(f: &Formula, out: &mut String) -> fmt::Result {
    let head = match f {
        Formula::Eq(..) => "=",
        Formula::Lt(..) => "<",
        Formula::Le(..) => "<=",
        Formula::Divides(..) => "|",
        Formula::Pred(p, _) => p.name(),
        Formula::Not(_) => "not",
        Formula::And(..) => "and",
        Formula::Or(..) => "or",
        Formula::Implies(..) => "=>",
        Formula::Iff(..) => "<=>",
        Formula::Quant { q, .. } => match q {
            Quant::All => "forall",
            Quant::Ex => "exists",
            Quant::ExUnique => "exists!",
        },
    };
    write!(out, "({head}")?;
    match f {
        Formula::Not(g) => {
            out.push(' ');
            sexpr_formula(g, out)?;
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            out.push(' ');
            sexpr_formula(a, out)?;
            out.push(' ');
            sexpr_formula(b, out)?;
        }
        Formula::Quant { var, bound, body, .. } => {
            write!(out, " {var}")?;
            if let Some(b) = bound {
                out.push(' ');
                sexpr_bound(b, out)?;
            }
            out.push(' ');
            sexpr_formula(body, out)?;
        }
        _ => {
            for t in f.local_terms() {
                out.push(' ');
                sexpr_term(t, out)?;
            }
        }
    }
    out.push(')');
    Ok(())
}
