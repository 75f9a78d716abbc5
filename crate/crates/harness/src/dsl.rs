//! The group-construction language.
//!
//! ```text
//! product  := wreath ('x' wreath)*
//! wreath   := selected ('wr' selected)*
//! selected := selector 'of' selected | primary
//! primary  := atom | 'sd' '(' product ',' product ',' action ')' | '(' product ')'
//! atom     := C(n) | D(n) | Q(n) | S(n) | A(n) | SL(2,q) | F(n)
//! selector := center | derived | socle | sylow(p) | genlist([i, ...])
//! action   := swap | inv | invl | pow(k)
//! ```
//!
//! `D(n)` and `Q(n)` take the group order. `X wr C(2)` is
//! `sd(X x X, C(2), swap)`. `invl` inverts the left factor of a product.

use std::fmt;

use charlab::group::{self, power_action, FiniteGroup, GroupError, Subgroup};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    UnknownAtom,
    Arity,
    Parameter,
    Evaluation,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl DslError {
    fn eval(message: impl Into<String>) -> Self {
        DslError {
            kind: DslErrorKind::Evaluation,
            message: message.into(),
            line: 1,
            column: 1,
        }
    }
}

impl From<GroupError> for DslError {
    fn from(e: GroupError) -> Self {
        DslError::eval(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, DslError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Cyclic,
    Dihedral,
    Dicyclic,
    Symmetric,
    Alternating,
    SpecialLinear,
    Frobenius,
}

impl AtomKind {
    fn name(self) -> &'static str {
        match self {
            AtomKind::Cyclic => "C",
            AtomKind::Dihedral => "D",
            AtomKind::Dicyclic => "Q",
            AtomKind::Symmetric => "S",
            AtomKind::Alternating => "A",
            AtomKind::SpecialLinear => "SL",
            AtomKind::Frobenius => "F",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Selector {
    Center,
    Derived,
    Socle,
    Sylow(u64),
    GenList(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Swap,
    Inv,
    InvLeft,
    Pow(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Atom(AtomKind, Vec<u64>),
    Product(Box<Expr>, Box<Expr>),
    Wreath(Box<Expr>, Box<Expr>),
    Semidirect(Box<Expr>, Box<Expr>, Action),
    Select(Selector, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Product(..) => 0,
            Expr::Wreath(..) => 1,
            Expr::Select(..) => 2,
            Expr::Atom(..) | Expr::Semidirect(..) => 3,
        }
    }

    fn render_at(&self, min: u8, out: &mut String) {
        if self.precedence() < min {
            out.push('(');
            self.render_at(0, out);
            out.push(')');
            return;
        }
        match self {
            Expr::Atom(kind, args) => {
                let args: Vec<String> = args.iter().map(u64::to_string).collect();
                out.push_str(&format!("{}({})", kind.name(), args.join(",")));
            }
            Expr::Product(l, r) => {
                l.render_at(0, out);
                out.push_str(" x ");
                r.render_at(1, out);
            }
            Expr::Wreath(l, r) => {
                l.render_at(1, out);
                out.push_str(" wr ");
                r.render_at(2, out);
            }
            Expr::Semidirect(k, q, a) => {
                out.push_str("sd(");
                k.render_at(0, out);
                out.push_str(", ");
                q.render_at(0, out);
                out.push_str(&format!(", {a})"));
            }
            Expr::Select(s, e) => {
                out.push_str(&format!("{s} of "));
                e.render_at(2, out);
            }
        }
    }

    /// Canonical text; `parse(render(e)) == e`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_at(0, &mut s);
        s
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Center => f.write_str("center"),
            Selector::Derived => f.write_str("derived"),
            Selector::Socle => f.write_str("socle"),
            Selector::Sylow(p) => write!(f, "sylow({p})"),
            Selector::GenList(v) => {
                let v: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "genlist([{}])", v.join(","))
            }
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Swap => f.write_str("swap"),
            Action::Inv => f.write_str("inv"),
            Action::InvLeft => f.write_str("invl"),
            Action::Pow(k) => write!(f, "pow({k})"),
        }
    }
}

// ----- lexer -----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<u64>().map_err(|_| DslError {
                kind: DslErrorKind::Syntax,
                message: format!("integer `{s}` is too large"),
                line: l0,
                column: c0,
            })?;
            column += i - start;
            out.push(Token {
                tok: Tok::Int(v),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(DslError {
            kind: DslErrorKind::Syntax,
            message: format!("unexpected character `{c}`"),
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

// ----- parser -----

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const SELECTORS: [&str; 5] = ["center", "derived", "socle", "sylow", "genlist"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, t: &Token, kind: DslErrorKind, message: impl Into<String>) -> DslError {
        DslError {
            kind,
            message: message.into(),
            line: t.line,
            column: t.column,
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.err_at(
                &t,
                DslErrorKind::Syntax,
                format!(
                    "expected {}, found {}",
                    Self::describe(&want),
                    Self::describe(&t.tok)
                ),
            ))
        }
    }

    fn peek_ident(&self, name: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == name)
    }

    fn int(&mut self) -> Result<u64> {
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => Ok(*v),
            other => Err(self.err_at(
                &t,
                DslErrorKind::Syntax,
                format!("expected an integer, found {}", Self::describe(other)),
            )),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        let v = self.int()?;
        let v = i64::try_from(v)
            .map_err(|_| self.err_at(&t, DslErrorKind::Parameter, "exponent is too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut l = self.wreath()?;
        while self.peek_ident("x") {
            self.next();
            let r = self.wreath()?;
            l = Expr::Product(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn wreath(&mut self) -> Result<Expr> {
        let mut l = self.selected()?;
        while self.peek_ident("wr") {
            self.next();
            let r = self.selected()?;
            l = Expr::Wreath(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn selected(&mut self) -> Result<Expr> {
        let is_selector =
            matches!(&self.peek().tok, Tok::Ident(s) if SELECTORS.contains(&s.as_str()));
        if !is_selector {
            return self.primary();
        }
        let sel = self.selector()?;
        let t = self.next();
        if t.tok != Tok::Ident("of".into()) {
            return Err(self.err_at(
                &t,
                DslErrorKind::Syntax,
                format!("expected `of`, found {}", Self::describe(&t.tok)),
            ));
        }
        let operand = self.selected()?;
        Ok(Expr::Select(sel, Box::new(operand)))
    }

    fn selector(&mut self) -> Result<Selector> {
        let t = self.next();
        let Tok::Ident(name) = &t.tok else {
            return Err(self.err_at(&t, DslErrorKind::Syntax, "expected a selector"));
        };
        match name.as_str() {
            "center" => Ok(Selector::Center),
            "derived" => Ok(Selector::Derived),
            "socle" => Ok(Selector::Socle),
            "sylow" => {
                self.expect(Tok::LParen)?;
                let pt = self.peek().clone();
                let p = self.int()?;
                if !group::is_prime(p) {
                    return Err(self.err_at(
                        &pt,
                        DslErrorKind::Parameter,
                        format!("sylow needs a prime, got {p}"),
                    ));
                }
                self.expect(Tok::RParen)?;
                Ok(Selector::Sylow(p))
            }
            "genlist" => {
                self.expect(Tok::LParen)?;
                self.expect(Tok::LBracket)?;
                let mut v = Vec::new();
                if self.peek().tok != Tok::RBracket {
                    loop {
                        v.push(self.int()? as usize);
                        if self.peek().tok == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::RParen)?;
                Ok(Selector::GenList(v))
            }
            _ => Err(self.err_at(
                &t,
                DslErrorKind::Syntax,
                format!("unknown selector `{name}`"),
            )),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LParen => {
                self.next();
                let e = self.product()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "sd" => {
                self.next();
                self.expect(Tok::LParen)?;
                let k = self.product()?;
                self.expect(Tok::Comma)?;
                let q = self.product()?;
                self.expect(Tok::Comma)?;
                let a = self.action()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Semidirect(Box::new(k), Box::new(q), a))
            }
            Tok::Ident(name) => {
                let kind = match name.as_str() {
                    "C" => AtomKind::Cyclic,
                    "D" => AtomKind::Dihedral,
                    "Q" => AtomKind::Dicyclic,
                    "S" => AtomKind::Symmetric,
                    "A" => AtomKind::Alternating,
                    "SL" => AtomKind::SpecialLinear,
                    "F" => AtomKind::Frobenius,
                    _ => {
                        return Err(self.err_at(
                            &t,
                            DslErrorKind::UnknownAtom,
                            format!("unknown group `{name}`"),
                        ));
                    }
                };
                self.next();
                self.expect(Tok::LParen)?;
                let mut args = vec![self.int()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    args.push(self.int()?);
                }
                self.expect(Tok::RParen)?;
                validate_atom(kind, &args).map_err(|(k, m)| self.err_at(&t, k, m))?;
                Ok(Expr::Atom(kind, args))
            }
            other => Err(self.err_at(
                &t,
                DslErrorKind::Syntax,
                format!("expected a group, found {}", Self::describe(other)),
            )),
        }
    }

    fn action(&mut self) -> Result<Action> {
        let t = self.next();
        let Tok::Ident(name) = &t.tok else {
            return Err(self.err_at(&t, DslErrorKind::Syntax, "expected an action"));
        };
        match name.as_str() {
            "swap" => Ok(Action::Swap),
            "inv" => Ok(Action::Inv),
            "invl" => Ok(Action::InvLeft),
            "pow" => {
                self.expect(Tok::LParen)?;
                let k = self.signed_int()?;
                self.expect(Tok::RParen)?;
                Ok(Action::Pow(k))
            }
            _ => Err(self.err_at(&t, DslErrorKind::Syntax, format!("unknown action `{name}`"))),
        }
    }
}

fn validate_atom(kind: AtomKind, args: &[u64]) -> std::result::Result<(), (DslErrorKind, String)> {
    let arity = if kind == AtomKind::SpecialLinear {
        2
    } else {
        1
    };
    if args.len() != arity {
        return Err((
            DslErrorKind::Arity,
            format!(
                "{} takes {arity} argument(s), got {}",
                kind.name(),
                args.len()
            ),
        ));
    }
    let n = args[0];
    let bad = |m: String| Err((DslErrorKind::Parameter, m));
    match kind {
        AtomKind::Cyclic if n == 0 => bad("C(n) needs n ≥ 1".into()),
        AtomKind::Dihedral if n < 4 || !n.is_multiple_of(2) => bad(format!(
            "D({n}): dihedral order must be even and at least 4"
        )),
        AtomKind::Dicyclic if n < 8 || !n.is_multiple_of(4) => bad(format!(
            "Q({n}): dicyclic order must be a multiple of 4, at least 8"
        )),
        AtomKind::Symmetric | AtomKind::Alternating if n == 0 || n > 7 => {
            bad(format!("{}({n}) needs 1 ≤ n ≤ 7", kind.name()))
        }
        AtomKind::SpecialLinear if n != 2 || !group::is_prime(args[1]) => bad(format!(
            "SL({n},{}) needs degree 2 over a prime field",
            args[1]
        )),
        AtomKind::Frobenius => {
            let ps = group::prime_divisors(n);
            let ok = ps.last().is_some_and(|&p| {
                let q = n / p;
                n.is_multiple_of(p) && q >= 2 && (p - 1) % q == 0 && q < p
            });
            if ok {
                Ok(())
            } else {
                bad(format!("F({n}) needs n = p*q with q dividing p-1"))
            }
        }
        _ => Ok(()),
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.product()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.err_at(
            &t,
            DslErrorKind::Syntax,
            format!("unexpected {}", Parser::describe(&t.tok)),
        ));
    }
    Ok(e)
}

/// Parses a chain `sel ('of' sel)*` to be applied to an implicit group.
pub fn parse_selector_chain(text: &str) -> Result<Vec<Selector>> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut out = vec![p.selector()?];
    while p.peek_ident("of") {
        p.next();
        out.push(p.selector()?);
    }
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.err_at(
            &t,
            DslErrorKind::Syntax,
            format!("unexpected {}", Parser::describe(&t.tok)),
        ));
    }
    Ok(out)
}

// ----- evaluation -----

#[derive(Debug, Clone)]
pub enum Value {
    Group(FiniteGroup),
    Sub { parent: FiniteGroup, sub: Subgroup },
}

impl Value {
    pub fn order(&self) -> usize {
        match self {
            Value::Group(g) => g.order(),
            Value::Sub { sub, .. } => sub.order(),
        }
    }

    /// The value as a group; a subgroup becomes a group in its own right.
    pub fn into_group(self, name: &str) -> Result<FiniteGroup> {
        match self {
            Value::Group(g) => Ok(g),
            Value::Sub { parent, sub } => {
                let emb = parent.embed(&sub)?;
                Ok((*emb.group).clone().with_name(name))
            }
        }
    }
}

pub fn evaluate(e: &Expr) -> Result<Value> {
    match e {
        Expr::Atom(kind, args) => Ok(Value::Group(atom(*kind, args)?.with_name(e.render()))),
        Expr::Product(l, r) => {
            let a = eval_group(l)?;
            let b = eval_group(r)?;
            Ok(Value::Group(
                FiniteGroup::direct_product(&a, &b)?.with_name(e.render()),
            ))
        }
        Expr::Wreath(l, r) => {
            let q = eval_group(r)?;
            if q.order() != 2 {
                return Err(DslError::eval(format!(
                    "`wr` needs C(2) on the right, got a group of order {}",
                    q.order()
                )));
            }
            let x = eval_group(l)?;
            let k = FiniteGroup::direct_product(&x, &x)?;
            let m = x.order();
            let swap: Vec<usize> = (0..k.order()).map(|i| (i % m) * m + i / m).collect();
            let action = power_action(&k, &q, &swap)?;
            Ok(Value::Group(
                FiniteGroup::semidirect_product(&k, &q, &action)?.with_name(e.render()),
            ))
        }
        Expr::Semidirect(ke, qe, act) => {
            let k = eval_group(ke)?;
            let q = eval_group(qe)?;
            let image: Vec<usize> = match act {
                Action::Inv => (0..k.order()).map(|x| k.inv(x)).collect(),
                Action::Pow(t) => (0..k.order()).map(|x| k.pow(x, *t)).collect(),
                Action::Swap => {
                    let Expr::Product(l, r) = ke.as_ref() else {
                        return Err(DslError::eval(
                            "`swap` needs a left operand of the form X x X",
                        ));
                    };
                    if l != r {
                        return Err(DslError::eval("`swap` needs two identical factors"));
                    }
                    let m = eval_group(l)?.order();
                    (0..k.order()).map(|i| (i % m) * m + i / m).collect()
                }
                Action::InvLeft => {
                    let Expr::Product(l, r) = ke.as_ref() else {
                        return Err(DslError::eval(
                            "`invl` needs a left operand of the form X x Y",
                        ));
                    };
                    let lg = eval_group(l)?;
                    let m = eval_group(r)?.order();
                    (0..k.order()).map(|i| lg.inv(i / m) * m + i % m).collect()
                }
            };
            let action = power_action(&k, &q, &image)?;
            Ok(Value::Group(
                FiniteGroup::semidirect_product(&k, &q, &action)?.with_name(e.render()),
            ))
        }
        Expr::Select(sel, inner) => {
            let v = evaluate(inner)?;
            apply_selector(sel, v)
        }
    }
}

pub fn eval_group(e: &Expr) -> Result<FiniteGroup> {
    evaluate(e)?.into_group(&e.render())
}

/// Parses and evaluates a group expression.
pub fn group_from_text(text: &str) -> Result<FiniteGroup> {
    let e = parse(text)?;
    eval_group(&e)
}

fn atom(kind: AtomKind, args: &[u64]) -> Result<FiniteGroup> {
    let n = args[0] as usize;
    Ok(match kind {
        AtomKind::Cyclic => FiniteGroup::cyclic(n)?,
        AtomKind::Dihedral => FiniteGroup::dihedral(n)?,
        AtomKind::Dicyclic => FiniteGroup::dicyclic(n)?,
        AtomKind::Symmetric => FiniteGroup::symmetric(n)?,
        AtomKind::Alternating => FiniteGroup::alternating(n)?,
        AtomKind::SpecialLinear => FiniteGroup::special_linear_2(args[1])?,
        AtomKind::Frobenius => FiniteGroup::frobenius(n)?,
    })
}

fn select_in(g: &FiniteGroup, sel: &Selector) -> Result<Subgroup> {
    Ok(match sel {
        Selector::Center => g.center(),
        Selector::Derived => g.derived_subgroup(),
        Selector::Socle => g.socle(),
        Selector::Sylow(p) => g.sylow_subgroup(*p)?,
        Selector::GenList(v) => g.subgroup_generated(v)?,
    })
}

pub fn apply_selector(sel: &Selector, v: Value) -> Result<Value> {
    match v {
        Value::Group(g) => {
            let sub = select_in(&g, sel)?;
            Ok(Value::Sub { parent: g, sub })
        }
        Value::Sub { parent, sub } => {
            let emb = parent.embed(&sub)?;
            let inner = select_in(&emb.group, sel)?;
            let mapped: Vec<usize> = inner.elements().iter().map(|&i| emb.to_parent(i)).collect();
            let sub = parent.subgroup_unchecked(&mapped);
            Ok(Value::Sub { parent, sub })
        }
    }
}

/// Applies a selector chain (outermost first, as written) to `g`.
pub fn select(g: &FiniteGroup, chain: &[Selector]) -> Result<Subgroup> {
    let mut v = Value::Group(g.clone());
    for sel in chain.iter().rev() {
        v = apply_selector(sel, v)?;
    }
    match v {
        Value::Sub { sub, .. } => Ok(sub),
        Value::Group(g) => Ok(g.whole()),
    }
}

pub fn select_text(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    select(g, &parse_selector_chain(text)?)
}

/// Selector text naming `h` through a greedy generating set.
pub fn genlist_for(g: &FiniteGroup, h: &Subgroup) -> String {
    Selector::GenList(g.generators(h)).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_node() {
        let e = parse("D(8) x C(2)").unwrap();
        assert!(matches!(e, Expr::Product(..)));
        assert_eq!(eval_group(&e).unwrap().order(), 16);
    }

    #[test]
    fn semidirect_swap() {
        let g = group_from_text("sd(C(3) x C(3), C(2), swap)").unwrap();
        assert_eq!(g.order(), 18);
        let w = group_from_text("C(3) wr C(2)").unwrap();
        assert_eq!(w.num_classes(), g.num_classes());
        let f = group_from_text("sd(C(7), C(3), pow(2))").unwrap();
        assert_eq!(f.num_classes(), 5);
        let s3 = group_from_text("sd(C(3), C(2), inv)").unwrap();
        assert_eq!(s3.num_classes(), 3);
    }

    #[test]
    fn parameter_errors() {
        let e = parse("D(7)").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::Parameter);
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse("C(2) x\n  Z(3)").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::UnknownAtom);
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(parse("C(2,3)").unwrap_err().kind, DslErrorKind::Arity);
        assert_eq!(parse("C(2) x").unwrap_err().kind, DslErrorKind::Syntax);
        assert_eq!(
            parse("sylow(4) of S(4)").unwrap_err().kind,
            DslErrorKind::Parameter
        );
        assert!(group_from_text("sd(C(4), C(2), swap)").is_err());
        assert!(group_from_text("sd(C(7), C(2), pow(2))").is_err());
        assert!(group_from_text("C(3) wr C(3)").is_err());
    }

    #[test]
    fn selectors() {
        assert_eq!(group_from_text("C(1)").unwrap().order(), 1);
        let v = evaluate(&parse("sylow(2) of S(4)").unwrap()).unwrap();
        assert_eq!(v.order(), 8);
        let v = evaluate(&parse("center of Q(8)").unwrap()).unwrap();
        assert_eq!(v.order(), 2);
        let v = evaluate(&parse("center of sylow(2) of S(4)").unwrap()).unwrap();
        assert_eq!(v.order(), 2);
        // a subgroup used as a factor becomes a group
        let g = group_from_text("(derived of S(4)) x C(2)").unwrap();
        assert_eq!(g.order(), 24);
        let s4 = group_from_text("S(4)").unwrap();
        let h = select_text(&s4, "derived").unwrap();
        assert_eq!(h.order(), 12);
        let again = select_text(&s4, &genlist_for(&s4, &h)).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn render_round_trip() {
        for text in [
            "C(2) x C(3) x C(4)",
            "C(2) x (C(3) x C(4))",
            "(C(3) wr C(2)) x C(2)",
            "C(3) wr C(2) wr C(2)",
            "center of (D(8) x C(2))",
            "sd(C(5), C(4), pow(-2))",
            "genlist([1,4]) of D(8)",
            "SL(2,3)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.render()).unwrap(), e, "{text}");
        }
        assert_eq!(parse("(C(2)) x ((C(3)))").unwrap().render(), "C(2) x C(3)");
    }
}
