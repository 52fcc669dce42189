use std::collections::BTreeMap;

use thiserror::Error;

use super::formula::Formula;
use super::signature::Signature;
use super::sym::Sym;
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown symbol `{name}`")]
    UnknownSymbol { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` expects {expected} arguments, found {found}")]
    ArityMismatch { line: usize, col: usize, name: String, expected: usize, found: usize },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::UnknownSymbol { line, col, .. }
            | ParseError::ArityMismatch { line, col, .. } => (*line, *col),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    Or,
    And,
    Tilde,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, col: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let sym2 = match two.as_str() {
            "->" => Some(Tok::Arrow),
            "\\/" => Some(Tok::Or),
            "/\\" => Some(Tok::And),
            _ => None,
        };
        if let Some(t) = sym2 {
            push(&mut out, t);
            i += 2;
            col += 2;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '~' => Some(Tok::Tilde),
            _ => None,
        };
        if let Some(t) = single {
            push(&mut out, t);
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            push(&mut out, Tok::Ident(word));
            continue;
        }
        return Err(ParseError::Syntax { line, col, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// How free names and symbols are resolved.
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// When present every symbol must be declared here.
    pub signature: Option<Signature>,
    /// Extra free variable names; `x{n}` always denotes free variable `n`.
    pub free_names: BTreeMap<String, usize>,
}

/// Free variable index encoded by a name of the form `x{n}`.
pub fn free_var_name(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    rest.parse().ok()
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    opts: &'a ParseOptions,
    bound: Vec<String>,
    funcs: BTreeMap<String, usize>,
    preds: BTreeMap<String, usize>,
}

const KEYWORDS: [&str; 3] = ["forall", "exists", "false"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, tok: &Token, msg: impl Into<String>) -> Result<T, ParseError> {
        // Input that stops early is reported at the last token actually read.
        if tok.tok == Tok::Eof && self.toks.len() > 1 {
            let last = &self.toks[self.toks.len() - 2];
            let msg = format!("{} after {}", msg.into(), describe(&last.tok));
            return Err(ParseError::Syntax { line: last.line, col: last.col, msg });
        }
        Err(ParseError::Syntax { line: tok.line, col: tok.col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            self.err(&t, format!("expected {what}, found {}", describe(&t.tok)))
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Ok((s.clone(), t.clone())),
            other => self.err(&t, format!("expected a name, found {}", describe(other))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        if let Tok::Ident(w) = &self.peek().tok {
            if w == "forall" || w == "exists" {
                let universal = w == "forall";
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                self.bound.push(name);
                let body = self.formula();
                self.bound.pop();
                let body = body?;
                return Ok(if universal { Formula::all(body) } else { Formula::ex(body) });
            }
        }
        self.imp()
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek().tok == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            acc = Formula::disj(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.atom()?;
        while self.peek().tok == Tok::And {
            self.bump();
            let rhs = self.atom()?;
            acc = Formula::conj(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.atom()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(w) if w == "false" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(w) if w == "forall" || w == "exists" => self.formula(),
            Tok::Ident(_) => {
                let (name, tok) = self.ident()?;
                let args = if self.peek().tok == Tok::LParen { self.args()? } else { Vec::new() };
                self.declare(&name, args.len(), &tok, false)?;
                Ok(Formula::Atom(Sym::from(name), args))
            }
            other => self.err(&t, format!("expected a formula, found {}", describe(other))),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = vec![self.term()?];
        loop {
            let t = self.bump();
            match t.tok {
                Tok::Comma => out.push(self.term()?),
                Tok::RParen => return Ok(out),
                ref other => return self.err(&t, format!("expected `,` or `)`, found {}", describe(other))),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, tok) = self.ident()?;
        if self.peek().tok == Tok::LParen {
            let args = self.args()?;
            self.declare(&name, args.len(), &tok, true)?;
            return Ok(Term::App(Sym::from(name), args));
        }
        let depth = self.bound.len();
        if let Some(k) = self.bound.iter().rev().position(|b| *b == name) {
            return Ok(Term::Var(k));
        }
        if let Some(&n) = self.opts.free_names.get(&name) {
            return Ok(Term::Var(n + depth));
        }
        if let Some(n) = free_var_name(&name) {
            return Ok(Term::Var(n + depth));
        }
        self.declare(&name, 0, &tok, true)?;
        Ok(Term::App(Sym::from(name), Vec::new()))
    }

    fn declare(&mut self, name: &str, arity: usize, tok: &Token, func: bool) -> Result<(), ParseError> {
        if let Some(sig) = &self.opts.signature {
            let s = Sym::new(name);
            let a = if func { sig.func_arity(&s) } else { sig.pred_arity(&s) };
            return match a {
                None => Err(ParseError::UnknownSymbol { line: tok.line, col: tok.col, name: name.into() }),
                Some(a) if a != arity => Err(ParseError::ArityMismatch {
                    line: tok.line,
                    col: tok.col,
                    name: name.into(),
                    expected: a,
                    found: arity,
                }),
                Some(_) => Ok(()),
            };
        }
        let table = if func { &mut self.funcs } else { &mut self.preds };
        match table.get(name) {
            Some(&a) if a != arity => Err(ParseError::ArityMismatch {
                line: tok.line,
                col: tok.col,
                name: name.into(),
                expected: a,
                found: arity,
            }),
            _ => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Or => "`\\/`".into(),
        Tok::And => "`/\\`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Eof => "end of input".into(),
    }
}

pub fn parse_formula_with(text: &str, opts: &ParseOptions) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, opts, bound: Vec::new(), funcs: BTreeMap::new(), preds: BTreeMap::new() };
    let f = p.formula()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return p.err(&t, format!("unexpected {}", describe(&t.tok)));
    }
    Ok(f)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, &ParseOptions::default())
}

pub fn parse_term_with(text: &str, opts: &ParseOptions) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, opts, bound: Vec::new(), funcs: BTreeMap::new(), preds: BTreeMap::new() };
    let t = p.term()?;
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        return p.err(&end, format!("unexpected {}", describe(&end.tok)));
    }
    Ok(t)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, &ParseOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_clause() {
        let f = parse_formula("forall x. P(x) -> Q(x)").unwrap();
        let p = Formula::atom("P", vec![Term::Var(0)]);
        let q = Formula::atom("Q", vec![Term::Var(0)]);
        assert_eq!(f, Formula::all(Formula::imp(p, q)));
    }

    #[test]
    fn error_position_at_comma() {
        let e = parse_formula("P(x,").unwrap_err();
        assert_eq!(e.position(), (1, 4));
        let e = parse_formula("P(x,,y)").unwrap_err();
        assert_eq!(e.position(), (1, 5));
    }

    #[test]
    fn arity_and_unknown() {
        assert!(matches!(parse_formula("P(a) -> P(a, b)"), Err(ParseError::ArityMismatch { .. })));
        let sig = Signature::finite(&[("f", 1)], &[("P", 1)]).unwrap();
        let opts = ParseOptions { signature: Some(sig), ..Default::default() };
        assert!(parse_formula_with("P(f(x0))", &opts).is_ok());
        assert!(matches!(parse_formula_with("Q(x0)", &opts), Err(ParseError::UnknownSymbol { .. })));
        assert!(matches!(parse_formula_with("P(g(x0))", &opts), Err(ParseError::UnknownSymbol { .. })));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("p /\\ q \\/ r -> s -> t").unwrap();
        let [p, q, r, s, t] = ["p", "q", "r", "s", "t"].map(Formula::prop);
        let want = Formula::imp(Formula::disj(Formula::conj(p, q), r), Formula::imp(s, t));
        assert_eq!(f, want);
        assert_eq!(parse_formula("~~p").unwrap(), Formula::neg(Formula::neg(Formula::prop("p"))));
    }

    #[test]
    fn free_names_shift_under_binders() {
        let f = parse_formula("forall y. P(y, x2)").unwrap();
        assert_eq!(f, Formula::all(Formula::atom("P", vec![Term::Var(0), Term::Var(3)])));
    }
}
