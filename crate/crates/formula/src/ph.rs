//! The arithmetized relatively-large arrow statement.
//!
//! Parameters `m`, `n`, `c` and `lambda` stay free; the sentence is a
//! schema over them.

use crate::ast::{var, Bound, Formula, Func, Pred, Quant, Term};
use crate::expand::at_level;

/// Free parameters of [`ph_sentence`].
pub const PARAMETERS: [&str; 4] = ["c", "lambda", "m", "n"];

fn seq(x: &str) -> Formula {
    Formula::pred(Pred::Seq, vec![var(x)])
}

fn lgh(x: &str) -> Term {
    Term::app1(Func::Lgh, var(x))
}

fn in_part(color: &str, k: &str) -> Formula {
    Formula::pred(Pred::InPart, vec![var("H"), var("n"), var(k), var(color)])
}

/// Named pieces of the level-0 matrix, each with its own free variables.
pub fn ph_clauses() -> Vec<(&'static str, Formula)> {
    let count = Term::app2(Func::Binom, var("m"), var("n"));

    let sizes = Formula::and_all([
        Formula::Eq(lgh("b"), var("n")),
        Formula::Eq(lgh("a"), var("m")),
        Formula::Eq(lgh("e"), var("c")),
        Formula::Le(lgh("y"), var("lambda")),
        Formula::Le(var("n"), var("m")),
    ]);

    // the subsets with index 1..=C(m,n) all carry one color beta, and no
    // index carries a color alpha
    let homogeneous = Formula::all_b(
        "k1",
        Bound::le(count.clone()),
        Formula::implies(Formula::Lt(Term::Zero, var("k1")), in_part("beta", "k1")),
    );
    let excluded = Formula::not(Formula::ex_b(
        "alpha",
        Bound::le(lgh("e")),
        Formula::ex_b("k2", Bound::le(count), in_part("alpha", "k2")),
    ));
    let unique_color = Formula::quant(
        Quant::ExUnique,
        "beta",
        Some(Bound::le(lgh("e"))),
        Formula::and(homogeneous, excluded),
    );

    let extends = Formula::ex(
        "s",
        Formula::and(
            seq("s"),
            Formula::Eq(var("y"), Term::app2(Func::Concat, var("b"), var("s"))),
        ),
    );
    let every_partition = Formula::all(
        "H",
        Formula::implies(
            Formula::pred(Pred::PartCode, vec![var("H"), var("m"), var("n"), var("c")]),
            Formula::implies(extends.clone(), unique_color.clone()),
        ),
    );

    let large = Formula::Le(Term::app2(Func::Component, var("y"), Term::Zero), lgh("y"));

    vec![
        ("sizes", sizes),
        ("unique-color", unique_color),
        ("extends", extends),
        ("every-partition", every_partition),
        ("relatively-large", large),
    ]
}

/// The sentence at level 0 (defined symbols), 1 (only `μ`, `p`, `pow`,
/// `fact`, `pair`, `subset` and `Π` left) or 2 (pure arithmetic).
pub fn ph_sentence(level: u8) -> Formula {
    let clauses: std::collections::BTreeMap<_, _> = ph_clauses().into_iter().collect();
    let matrix = Formula::and_all([
        clauses["sizes"].clone(),
        clauses["every-partition"].clone(),
        clauses["relatively-large"].clone(),
    ]);
    let sentence = Formula::all(
        "b",
        Formula::implies(
            seq("b"),
            Formula::all(
                "e",
                Formula::implies(
                    seq("e"),
                    Formula::all(
                        "y",
                        Formula::implies(seq("y"), Formula::ex("a", Formula::and(seq("a"), matrix))),
                    ),
                ),
            ),
        ),
    );
    at_level(&sentence, level)
}
