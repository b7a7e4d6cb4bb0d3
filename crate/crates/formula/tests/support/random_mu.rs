//! Random bounded formulas containing μ-terms, over free variables `a`, `b`.

use phcalc_formula::{print, var, Bound, Format, Formula, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 2] = ["a", "b"];

pub fn rand_term(rng: &mut ChaCha8Rng, depth: u32, bound: &[String]) -> Term {
    let pick = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..6) };
    match pick {
        0 => Term::num(rng.gen_range(0..4)),
        1 | 2 => {
            let names: Vec<&str> = VARS.iter().copied().chain(bound.iter().map(String::as_str)).collect();
            var(names[rng.gen_range(0..names.len())])
        }
        3 => Term::add(rand_term(rng, depth - 1, bound), rand_term(rng, depth - 1, bound)),
        4 => Term::mul(rand_term(rng, depth - 1, bound), rand_term(rng, depth - 1, bound)),
        _ => {
            let y = format!("y{}", bound.len());
            let b = rand_term(rng, depth - 1, bound);
            let bound_rel = if rng.gen_bool(0.5) { Bound::lt(b) } else { Bound::le(b) };
            let mut inner = bound.to_vec();
            inner.push(y.clone());
            Term::mu(&y, bound_rel, rand_atom(rng, depth - 1, &inner))
        }
    }
}

pub fn rand_atom(rng: &mut ChaCha8Rng, depth: u32, bound: &[String]) -> Formula {
    let (s, t) = (rand_term(rng, depth, bound), rand_term(rng, depth, bound));
    match rng.gen_range(0..5) {
        0 => Formula::Eq(s, t),
        1 => Formula::Lt(s, t),
        2 => Formula::Le(s, t),
        3 => Formula::Divides(s, t),
        _ => Formula::not(Formula::Eq(s, t)),
    }
}

pub fn rand_mu_formula(rng: &mut ChaCha8Rng) -> Formula {
    loop {
        let f = match rng.gen_range(0..3) {
            0 => rand_atom(rng, 3, &[]),
            1 => Formula::and(rand_atom(rng, 2, &[]), rand_atom(rng, 2, &[])),
            _ => Formula::all_b("x", Bound::lt(rand_term(rng, 1, &[])), rand_atom(rng, 2, &["x".into()])),
        };
        if print(&f, Format::Text).contains("mu ") {
            return f;
        }
    }
}
