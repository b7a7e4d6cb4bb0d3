//! Parser for the text syntax produced by [`crate::print`].
//!
//! ```text
//! formula := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("\/" and)*
//! and     := unary ("/\" unary)*
//! unary   := "~" unary | Q var [("<" | "<=") term] "." unary | primary
//! primary := Pred "(" terms ")" | term ("=" | "<" | "<=" | "|") term | "(" formula ")"
//! term    := mul ("+" mul)*
//! mul     := atom ("*" atom)*
//! atom    := num | var | fn "(" terms ")" | "(" term ")"
//!          | "mu" var bound ".[" formula "]" | ("sum" | "prod") var bound ".[" term "]"
//! ```
//!
//! `Q` is `A`, `E` or `E!` written directly before the variable (`Ax`,
//! `E!beta`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::ast::{BigOp, Bound, Formula, Func, Pred, Quant, Rel, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: expected {}, found {found}", expected_list(.expected))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

fn expected_list(e: &BTreeSet<String>) -> String {
    let items: Vec<&str> = e.iter().map(String::as_str).collect();
    match items.len() {
        0 => "nothing".into(),
        1 => items[0].into(),
        _ => format!("one of {}", items.join(" ")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigUint),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Plus,
    Star,
    Eq,
    Lt,
    Le,
    Bar,
    Tilde,
    Bang,
    And,
    Or,
    Arrow,
    Iff,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Num(n) => return write!(f, "`{n}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrack => "`[`",
            Tok::RBrack => "`]`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Plus => "`+`",
            Tok::Star => "`*`",
            Tok::Eq => "`=`",
            Tok::Lt => "`<`",
            Tok::Le => "`<=`",
            Tok::Bar => "`|`",
            Tok::Tilde => "`~`",
            Tok::Bang => "`!`",
            Tok::And => "`/\\`",
            Tok::Or => "`\\/`",
            Tok::Arrow => "`->`",
            Tok::Iff => "`<->`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let take = |n: usize, tok: Tok, out: &mut Vec<Spanned>| {
            out.push(Spanned {
                tok,
                line: start.0,
                col: start.1,
            });
            n
        };
        let rest = &chars[i..];
        let starts = |s: &str| rest.len() >= s.len() && s.chars().zip(rest).all(|(a, b)| a == *b);
        let n = if c == '\n' {
            line += 1;
            col = 0;
            1
        } else if c.is_whitespace() {
            1
        } else if c.is_ascii_alphabetic() || c == '_' {
            let len = rest.iter().take_while(|c| c.is_ascii_alphanumeric() || **c == '_').count();
            take(len, Tok::Ident(rest[..len].iter().collect()), &mut out)
        } else if c.is_ascii_digit() {
            let len = rest.iter().take_while(|c| c.is_ascii_digit()).count();
            let s: String = rest[..len].iter().collect();
            take(len, Tok::Num(s.parse().expect("digits")), &mut out)
        } else if starts("<->") {
            take(3, Tok::Iff, &mut out)
        } else if starts("<=") {
            take(2, Tok::Le, &mut out)
        } else if starts("->") {
            take(2, Tok::Arrow, &mut out)
        } else if starts("/\\") {
            take(2, Tok::And, &mut out)
        } else if starts("\\/") {
            take(2, Tok::Or, &mut out)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '=' => Tok::Eq,
                '<' => Tok::Lt,
                '|' => Tok::Bar,
                '~' => Tok::Tilde,
                '!' => Tok::Bang,
                _ => {
                    return Err(ParseError {
                        line,
                        col,
                        expected: ["a token".to_string()].into_iter().collect(),
                        found: format!("`{c}`"),
                    })
                }
            };
            take(1, tok, &mut out)
        };
        i += n;
        col += n;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

const KEYWORDS: [&str; 3] = ["mu", "sum", "prod"];

fn is_var_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && !KEYWORDS.contains(&s)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    // furthest failure, for error reporting after backtracking
    err_pos: usize,
    expected: BTreeSet<String>,
    term_memo: HashMap<usize, Option<(Term, usize)>>,
}

type PResult<T> = Result<T, ()>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn fail<T>(&mut self, what: &str) -> PResult<T> {
        if self.pos > self.err_pos {
            self.err_pos = self.pos;
            self.expected.clear();
        }
        if self.pos == self.err_pos {
            self.expected.insert(what.to_string());
        }
        Err(())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(&t.to_string())
        }
    }

    fn error(&self) -> ParseError {
        let at = &self.toks[self.err_pos];
        ParseError {
            line: at.line,
            col: at.col,
            expected: self.expected.clone(),
            found: at.tok.to_string(),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let mut f = self.implication()?;
        while self.eat(&Tok::Iff) {
            f = Formula::iff(f, self.implication()?);
        }
        Ok(f)
    }

    fn implication(&mut self) -> PResult<Formula> {
        let f = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Formula::implies(f, self.implication()?));
        }
        Ok(f)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary()?));
        }
        let save = self.pos;
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        self.pos = save;
        self.primary()
    }

    /// `Ok(None)` when the tokens are not a quantifier head.
    fn quantifier(&mut self) -> PResult<Option<Formula>> {
        let Tok::Ident(head) = self.peek().clone() else {
            return Ok(None);
        };
        let (q, var) = if head == "E" && self.peek_at(1) == &Tok::Bang {
            match self.peek_at(2).clone() {
                Tok::Ident(v) if is_var_name(&v) => {
                    self.pos += 3;
                    (Quant::ExUnique, v)
                }
                _ => return Ok(None),
            }
        } else {
            let q = match head.as_bytes()[0] {
                b'A' => Quant::All,
                b'E' => Quant::Ex,
                _ => return Ok(None),
            };
            let v = &head[1..];
            if !is_var_name(v) {
                return Ok(None);
            }
            self.pos += 1;
            (q, v.to_string())
        };
        let bound = match self.peek() {
            Tok::Lt | Tok::Le => {
                let rel = if self.eat(&Tok::Lt) { Rel::Lt } else { self.pos += 1; Rel::Le };
                match self.term() {
                    Ok(t) => Some(Bound { rel, term: t }),
                    Err(()) => return Ok(None),
                }
            }
            _ => None,
        };
        if !self.eat(&Tok::Dot) {
            // record what a quantifier would have needed, then let the caller backtrack
            let _ = self.fail::<()>("`.`");
            return Ok(None);
        }
        let body = self.unary()?;
        Ok(Some(Formula::quant(q, &var, bound, body)))
    }

    fn primary(&mut self) -> PResult<Formula> {
        if let Tok::Ident(name) = self.peek().clone() {
            if let Some(p) = Pred::from_name(&name) {
                if self.peek_at(1) == &Tok::LParen {
                    self.pos += 1;
                    let args = self.args(p.arity())?;
                    return Ok(Formula::Pred(p, args));
                }
            }
        }
        let save = self.pos;
        if let Ok(a) = self.atom() {
            return Ok(a);
        }
        self.pos = save;
        if self.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        self.fail("a formula")
    }

    fn atom(&mut self) -> PResult<Formula> {
        let a = self.term()?;
        let ctor: fn(Term, Term) -> Formula = match self.peek() {
            Tok::Eq => Formula::Eq,
            Tok::Lt => Formula::Lt,
            Tok::Le => Formula::Le,
            Tok::Bar => Formula::Divides,
            _ => {
                for w in ["`=`", "`<`", "`<=`", "`|`"] {
                    let _ = self.fail::<()>(w);
                }
                return Err(());
            }
        };
        self.pos += 1;
        let b = self.term()?;
        Ok(ctor(a, b))
    }

    fn args(&mut self, arity: usize) -> PResult<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::with_capacity(arity);
        for i in 0..arity {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.pos;
        if let Some(hit) = self.term_memo.get(&start) {
            return match hit.clone() {
                Some((t, end)) => {
                    self.pos = end;
                    Ok(t)
                }
                None => Err(()),
            };
        }
        let r = self.sum();
        let entry = r.as_ref().ok().map(|t| (t.clone(), self.pos));
        self.term_memo.insert(start, entry);
        r
    }

    fn sum(&mut self) -> PResult<Term> {
        let mut t = self.product()?;
        while self.eat(&Tok::Plus) {
            t = Term::add(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut t = self.term_atom()?;
        while self.eat(&Tok::Star) {
            t = Term::mul(t, self.term_atom()?);
        }
        Ok(t)
    }

    fn bound(&mut self) -> PResult<Bound> {
        let rel = match self.peek() {
            Tok::Lt => Rel::Lt,
            Tok::Le => Rel::Le,
            _ => return self.fail("`<` or `<=`"),
        };
        self.pos += 1;
        Ok(Bound { rel, term: self.term()? })
    }

    fn binder_var(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(v) if is_var_name(&v) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("a variable"),
        }
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(match u8::try_from(&n) {
                    Ok(0) => Term::Zero,
                    Ok(1) => Term::One,
                    _ => Term::Num(n),
                })
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) if name == "mu" => {
                self.pos += 1;
                let v = self.binder_var()?;
                let b = self.bound()?;
                self.expect(Tok::Dot)?;
                self.expect(Tok::LBrack)?;
                let body = self.formula()?;
                self.expect(Tok::RBrack)?;
                Ok(Term::mu(&v, b, body))
            }
            Tok::Ident(name) if name == "sum" || name == "prod" => {
                self.pos += 1;
                let op = if name == "sum" { BigOp::Sum } else { BigOp::Prod };
                let v = self.binder_var()?;
                let b = self.bound()?;
                self.expect(Tok::Dot)?;
                self.expect(Tok::LBrack)?;
                let body = self.term()?;
                self.expect(Tok::RBrack)?;
                Ok(Term::big(op, &v, b, body))
            }
            Tok::Ident(name) if self.peek_at(1) == &Tok::LParen => match Func::from_name(&name) {
                Some(f) => {
                    self.pos += 1;
                    Ok(Term::App(f, self.args(f.arity())?))
                }
                None => self.fail("a function name"),
            },
            Tok::Ident(name) if is_var_name(&name) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            _ => self.fail("a term"),
        }
    }
}

fn run<T>(src: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> Result<T, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        err_pos: 0,
        expected: BTreeSet::new(),
        term_memo: HashMap::new(),
    };
    match f(&mut p) {
        Ok(v) if p.peek() == &Tok::End => Ok(v),
        Ok(_) => {
            let _ = p.fail::<()>("end of input");
            Err(p.error())
        }
        Err(()) => Err(p.error()),
    }
}

pub fn parse(src: &str) -> Result<Formula, ParseError> {
    run(src, Parser::formula)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    run(src, Parser::term)
}
