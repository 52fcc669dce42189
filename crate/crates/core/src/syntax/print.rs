use std::fmt;

use super::formula::{fresh_var, Formula};
use super::term::Term;

struct Names {
    base: usize,
    depth: usize,
}

impl Names {
    fn var(&self, i: usize) -> String {
        if i < self.depth {
            format!("x{}", self.base + self.depth - 1 - i)
        } else {
            format!("x{}", i - self.depth)
        }
    }
}

fn term(t: &Term, names: &Names, out: &mut String) {
    match t {
        Term::Var(i) => out.push_str(&names.var(*i)),
        Term::App(f, args) => {
            out.push_str(f.as_str());
            if !args.is_empty() {
                out.push('(');
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    term(a, names, out);
                }
                out.push(')');
            }
        }
    }
}

// Levels follow the grammar: 0 formula, 1 disjunction, 2 conjunction, 3 atom.
fn formula(f: &Formula, level: u8, names: &mut Names, out: &mut String) {
    let paren = |need: bool, out: &mut String, body: &mut dyn FnMut(&mut String)| {
        if need {
            out.push('(');
        }
        body(out);
        if need {
            out.push(')');
        }
    };
    match f {
        Formula::Bot => out.push_str("false"),
        Formula::Atom(p, args) => {
            out.push_str(p.as_str());
            if !args.is_empty() {
                out.push('(');
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    term(a, names, out);
                }
                out.push(')');
            }
        }
        Formula::Impl(a, b) if **b == Formula::Bot => {
            out.push('~');
            formula(a, 3, names, out);
        }
        Formula::Impl(a, b) => paren(level > 0, out, &mut |out| {
            formula(a, 1, names, out);
            out.push_str(" -> ");
            formula(b, 0, names, out);
        }),
        Formula::Disj(a, b) => paren(level > 1, out, &mut |out| {
            formula(a, 1, names, out);
            out.push_str(" \\/ ");
            formula(b, 2, names, out);
        }),
        Formula::Conj(a, b) => paren(level > 2, out, &mut |out| {
            formula(a, 2, names, out);
            out.push_str(" /\\ ");
            formula(b, 3, names, out);
        }),
        Formula::All(a) | Formula::Ex(a) => {
            let kw = if matches!(f, Formula::All(_)) { "forall" } else { "exists" };
            paren(level > 0, out, &mut |out| {
                out.push_str(kw);
                out.push(' ');
                out.push_str(&format!("x{}", names.base + names.depth));
                out.push_str(". ");
                names.depth += 1;
                formula(a, 0, names, out);
                names.depth -= 1;
            })
        }
    }
}

/// Surface rendering; free variable `n` prints as `x{n}`, bound names are
/// picked above every free index so nothing is captured.
pub fn print_formula(f: &Formula) -> String {
    let mut names = Names { base: fresh_var(std::slice::from_ref(f)), depth: 0 };
    let mut out = String::new();
    formula(f, 0, &mut names, &mut out);
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    term(t, &Names { base: 0, depth: 0 }, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}
