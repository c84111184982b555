//! A small expression language over relations.
//!
//! Literals are integers, rationals `n/d`, quoted or bare symbols,
//! `undefined`, sets `{a, b}` and pairs `(a, b)`. Operators:
//!
//! | syntax        | meaning                  | binding |
//! |---------------|--------------------------|---------|
//! | `R¯`, `R^-1`  | converse                 | 100     |
//! | ``R `` X``    | image                    | 90      |
//! | `R ,, x`      | eval                     | 75      |
//! | `R ,,, x`     | eval2                    | 75      |
//! | `P +* Q`      | paste                    | 75      |
//! | `R +< (x, y)` | single paste             | 75      |
//! | `R outside X` | remove a set from domain | 75      |
//! | `R -- x`      | remove one point         | 75      |
//! | `P O Q`       | composition              | 75      |
//!
//! Infix operators of equal binding associate to the left. Named functions
//! take their arguments either in parentheses, `quotient(r, p, q)`, or by
//! juxtaposition, `quotient r p q`. Type annotations `::T` are skipped and a
//! whole input of the form `value "..."` is read as the quoted expression.

use std::fmt;

use vickset_core::quotient::{kernel, projector, quotient};
use vickset_core::{FinSet, Rational, Relation, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Num(i64, i64),
    Str(String),
    Ident(String),
    Op(Op),
    Converse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Converse,
    Image,
    Eval,
    Eval2,
    Paste,
    SinglePaste,
    Outside,
    SingleOutside,
    Compose,
    Projector,
    Quotient,
    Kernel,
    Domain,
    Range,
}

impl Op {
    fn function(name: &str) -> Option<Op> {
        Some(match name {
            "converse" => Op::Converse,
            "image" => Op::Image,
            "eval" | "eval_rel" => Op::Eval,
            "eval2" | "eval_rel2" => Op::Eval2,
            "paste" => Op::Paste,
            "single_paste" | "singlepaste" => Op::SinglePaste,
            "outside" | "Outside" => Op::Outside,
            "compose" => Op::Compose,
            "projector" => Op::Projector,
            "quotient" => Op::Quotient,
            "kernel" | "Kernel" => Op::Kernel,
            "Domain" | "domain" => Op::Domain,
            "Range" | "range" => Op::Range,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Op::Converse => "converse",
            Op::Image => "image",
            Op::Eval => "eval",
            Op::Eval2 => "eval2",
            Op::Paste => "paste",
            Op::SinglePaste => "single_paste",
            Op::Outside => "outside",
            Op::SingleOutside => "--",
            Op::Compose => "compose",
            Op::Projector => "projector",
            Op::Quotient => "quotient",
            Op::Kernel => "kernel",
            Op::Domain => "Domain",
            Op::Range => "Range",
        }
    }

    fn arities(self) -> &'static [usize] {
        match self {
            Op::Converse | Op::Projector | Op::Kernel | Op::Domain | Op::Range => &[1],
            Op::Quotient => &[3],
            Op::SinglePaste => &[2, 3],
            _ => &[2],
        }
    }

    fn infix_power(self) -> u8 {
        match self {
            Op::Image => 90,
            _ => 75,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Value),
    Set(Vec<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Apply(Op, Vec<Expr>),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    out: Vec<(usize, Tok)>,
}

const TYPE_CONSTRUCTORS: [&str; 4] = ["set", "list", "rel", "option"];

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn err<T>(&self, at: usize, msg: impl fmt::Display) -> CliResult<T> {
        Err(CliError::parse(format!("at offset {at}: {msg}")))
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = self.rest();
        let n = rest.find(|c| !f(c)).unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    fn value_ends(&self) -> bool {
        matches!(
            self.out.last(),
            Some((_, Tok::RBrace | Tok::RParen | Tok::Num(..) | Tok::Str(_) | Tok::Ident(_) | Tok::Converse))
        )
    }

    fn skip_type(&mut self) -> CliResult<()> {
        self.skip_ws();
        if self.rest().starts_with('(') {
            let start = self.pos;
            let mut depth = 0usize;
            for (k, c) in self.rest().char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            self.pos += k + 1;
                            break;
                        }
                    }
                    _ => {}
                }
            }
            if depth != 0 {
                return self.err(start, "unbalanced parentheses in type annotation");
            }
        } else if self.take_while(is_ident_char).is_empty() {
            return self.err(self.pos, "expected a type after `::`");
        }
        loop {
            let save = self.pos;
            self.skip_ws();
            let word = self.take_while(is_ident_char);
            if !TYPE_CONSTRUCTORS.contains(&word) {
                self.pos = save;
                return Ok(());
            }
        }
    }

    fn number(&mut self, start: usize) -> CliResult<Tok> {
        let negative = self.rest().starts_with('-');
        if negative {
            self.pos += 1;
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        let parse = |s: &str, at: usize| -> CliResult<i64> {
            s.parse().map_err(|_| {
                CliError::parse(format!("at offset {at}: integer {s} out of range"))
            })
        };
        let mut n = parse(digits, start)?;
        if negative {
            n = -n;
        }
        if self.rest().starts_with('/') && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            let at = self.pos;
            let d = parse(self.take_while(|c| c.is_ascii_digit()), at)?;
            return Ok(Tok::Num(n, d));
        }
        Ok(Tok::Num(n, 1))
    }

    fn run(mut self) -> CliResult<Vec<(usize, Tok)>> {
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(c) = self.rest().chars().next() else {
                return Ok(self.out);
            };
            let rest = self.rest();
            let tok = if rest.starts_with("::") {
                self.pos += 2;
                self.skip_type()?;
                continue;
            } else if rest.starts_with(",,,") {
                self.pos += 3;
                Tok::Op(Op::Eval2)
            } else if rest.starts_with(",,") {
                self.pos += 2;
                Tok::Op(Op::Eval)
            } else if rest.starts_with("+*") {
                self.pos += 2;
                Tok::Op(Op::Paste)
            } else if rest.starts_with("+<") {
                self.pos += 2;
                Tok::Op(Op::SinglePaste)
            } else if rest.starts_with("--") {
                self.pos += 2;
                Tok::Op(Op::SingleOutside)
            } else if rest.starts_with("``") {
                self.pos += 2;
                Tok::Op(Op::Image)
            } else if rest.starts_with("^-1") {
                self.pos += 3;
                Tok::Converse
            } else if c == '¯' {
                self.pos += c.len_utf8();
                Tok::Converse
            } else if c.is_ascii_digit() || (c == '-' && !self.value_ends()) {
                if c == '-' && !rest[1..].starts_with(|d: char| d.is_ascii_digit()) {
                    return self.err(start, "expected a digit after `-`");
                }
                self.number(start)?
            } else if c == '"' {
                self.pos += 1;
                match self.rest().find('"') {
                    Some(end) => {
                        let s = self.rest()[..end].to_owned();
                        self.pos += end + 1;
                        Tok::Str(s)
                    }
                    None => return self.err(start, "unterminated string"),
                }
            } else if is_ident_char(c) {
                let word = self.take_while(is_ident_char);
                match word {
                    "O" => Tok::Op(Op::Compose),
                    "outside" => Tok::Op(Op::Outside),
                    _ => Tok::Ident(word.to_owned()),
                }
            } else {
                self.pos += c.len_utf8();
                match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => return self.err(start, format!("unexpected character {c:?}")),
                }
            };
            self.out.push((start, tok));
        }
    }
}

fn tokenize(src: &str) -> CliResult<Vec<(usize, Tok)>> {
    Lexer {
        src,
        pos: 0,
        out: Vec::new(),
    }
    .run()
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl fmt::Display) -> CliResult<T> {
        Err(CliError::parse(format!("at offset {}: {msg}", self.offset())))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self, min_bp: u8) -> CliResult<Expr> {
        let mut lhs = self.prefix()?;
        loop {
            match self.peek() {
                Some(Tok::Converse) => {
                    self.pos += 1;
                    lhs = Expr::Apply(Op::Converse, vec![lhs]);
                }
                Some(Tok::Op(op)) => {
                    let op = *op;
                    let bp = op.infix_power();
                    if bp < min_bp {
                        break;
                    }
                    self.pos += 1;
                    let rhs = self.expr(bp + 1)?;
                    lhs = Expr::Apply(op, vec![lhs, rhs]);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    /// A primary followed by any postfix converses.
    fn atom(&mut self) -> CliResult<Expr> {
        let mut e = self.prefix()?;
        while self.peek() == Some(&Tok::Converse) {
            self.pos += 1;
            e = Expr::Apply(Op::Converse, vec![e]);
        }
        Ok(e)
    }

    fn comma_list(&mut self, close: Tok, what: &str) -> CliResult<Vec<Expr>> {
        let mut items = Vec::new();
        if self.peek() == Some(&close) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.expr(0)?);
            match self.next() {
                Some(Tok::Comma) => {}
                Some(t) if t == close => return Ok(items),
                _ => {
                    self.pos -= 1;
                    return self.err(format!("expected `,` or {what}"));
                }
            }
        }
    }

    fn prefix(&mut self) -> CliResult<Expr> {
        let at = self.pos;
        match self.next() {
            Some(Tok::Num(n, d)) => {
                if d == 0 {
                    self.pos = at;
                    return self.err("rational with zero denominator");
                }
                Ok(Expr::Lit(Value::number(Rational::new(n, d))))
            }
            Some(Tok::Str(s)) => Ok(Expr::Lit(Value::sym(&s))),
            Some(Tok::LBrace) => Ok(Expr::Set(self.comma_list(Tok::RBrace, "`}`")?)),
            Some(Tok::LParen) => {
                let items = self.comma_list(Tok::RParen, "`)`")?;
                tuple(items).map_or_else(|| { self.pos = at; self.err("empty parentheses") }, Ok)
            }
            Some(Tok::Ident(name)) if name == "undefined" => Ok(Expr::Lit(Value::Undefined)),
            Some(Tok::Ident(name)) => match Op::function(&name) {
                Some(op) => self.call(op),
                None => Ok(Expr::Lit(Value::sym(&name))),
            },
            Some(Tok::Op(Op::Outside)) => self.call(Op::Outside),
            Some(_) => {
                self.pos = at;
                self.err("expected an expression")
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn call(&mut self, op: Op) -> CliResult<Expr> {
        let arities = op.arities();
        if self.peek() == Some(&Tok::LParen) {
            let at = self.pos;
            self.pos += 1;
            let items = self.comma_list(Tok::RParen, "`)`")?;
            if arities.contains(&items.len()) {
                return Ok(Expr::Apply(op, items));
            }
            if arities.contains(&1) && !items.is_empty() {
                return Ok(Expr::Apply(op, vec![tuple(items).expect("nonempty")]));
            }
            self.pos = at;
            return self.err(format!(
                "{op} takes {} argument(s), got {}",
                arities[0],
                items.len()
            ));
        }
        let mut args = Vec::with_capacity(arities[0]);
        for _ in 0..arities[0] {
            if !self.starts_atom() {
                return self.err(format!("{op} takes {} argument(s), got {}", arities[0], args.len()));
            }
            args.push(self.atom()?);
        }
        Ok(Expr::Apply(op, args))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(..) | Tok::Str(_) | Tok::Ident(_) | Tok::LBrace | Tok::LParen)
        )
    }
}

/// `(a)` is `a`; `(a, b, c)` is `(a, (b, c))`.
fn tuple(mut items: Vec<Expr>) -> Option<Expr> {
    let mut acc = items.pop()?;
    while let Some(x) = items.pop() {
        acc = Expr::Pair(Box::new(x), Box::new(acc));
    }
    Some(acc)
}

fn unwrap_value_command(src: &str) -> &str {
    let t = src.trim();
    if let Some(rest) = t.strip_prefix("value") {
        let rest = rest.trim();
        if rest.len() >= 2 && rest.starts_with('"') && rest.ends_with('"') {
            return &rest[1..rest.len() - 1];
        }
    }
    src
}

pub fn parse_expr(src: &str) -> CliResult<Expr> {
    let src = unwrap_value_command(src);
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr(0)?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn relation(v: Value, op: Op) -> CliResult<Relation> {
    Relation::try_from(v).map_err(|e| CliError::validation(format!("{op}: {e}")))
}

fn set(v: Value, op: Op) -> CliResult<FinSet> {
    match v {
        Value::Set(s) => Ok(s),
        other => Err(CliError::validation(format!(
            "{op}: expected a set, found {}",
            other.kind()
        ))),
    }
}

pub fn eval(e: &Expr) -> CliResult<Value> {
    match e {
        Expr::Lit(v) => Ok(v.clone()),
        Expr::Set(items) => Ok(Value::set(items.iter().map(eval).collect::<CliResult<Vec<_>>>()?)),
        Expr::Pair(a, b) => Ok(Value::pair(eval(a)?, eval(b)?)),
        Expr::Apply(op, args) => {
            let op = *op;
            let mut vs = args.iter().map(eval).collect::<CliResult<Vec<_>>>()?.into_iter();
            let mut next = || vs.next().expect("arity checked by the parser");
            Ok(match op {
                Op::Converse => relation(next(), op)?.converse().into(),
                Op::Projector => projector(&relation(next(), op)?).into(),
                Op::Kernel => kernel(&relation(next(), op)?)?.into(),
                Op::Domain => relation(next(), op)?.domain().into(),
                Op::Range => relation(next(), op)?.range().into(),
                Op::Quotient => {
                    let (r, p, q) = (relation(next(), op)?, relation(next(), op)?, relation(next(), op)?);
                    quotient(&r, &p, &q).into()
                }
                Op::Image => {
                    let r = relation(next(), op)?;
                    r.image(&set(next(), op)?).into()
                }
                Op::Eval => relation(next(), op)?.eval(&next()),
                Op::Eval2 => relation(next(), op)?.eval2(&next())?,
                Op::Paste => {
                    let p = relation(next(), op)?;
                    p.paste(&relation(next(), op)?).into()
                }
                Op::Compose => {
                    let p = relation(next(), op)?;
                    p.compose(&relation(next(), op)?).into()
                }
                Op::Outside => {
                    let r = relation(next(), op)?;
                    r.outside(&set(next(), op)?).into()
                }
                Op::SingleOutside => {
                    let r = relation(next(), op)?;
                    r.single_outside(&next()).into()
                }
                Op::SinglePaste => {
                    let r = relation(next(), op)?;
                    let (x, y) = if args.len() == 3 {
                        (next(), next())
                    } else {
                        let p = next();
                        let (x, y) = p
                            .as_pair()
                            .map_err(|e| CliError::validation(format!("{op}: {e}")))?;
                        (x.clone(), y.clone())
                    };
                    r.single_paste(x, y).into()
                }
            })
        }
    }
}

pub fn eval_expression(src: &str) -> CliResult<Value> {
    eval(&parse_expr(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Value {
        eval_expression(src).unwrap_or_else(|e| panic!("{src}: {e}"))
    }

    fn ints(xs: &[i64]) -> Value {
        Value::set(xs.iter().map(|&n| Value::Int(n)))
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(run("{(0,10),(1,11),(1,12)} ,, 0"), Value::Int(10));
        assert_eq!(run("({(0,10),(1,11),(1,12)} +< (1,13)) ,, 1"), Value::Int(13));
        assert_eq!(run("{} outside {1}"), Value::empty_set());
        assert_eq!(run("{(0,10),(1,11),(1,12)} ,, 1"), Value::Undefined);
    }

    #[test]
    fn value_command_and_annotations() {
        assert_eq!(
            run(r#"value "{(0::nat,10::nat),(1,11),(1,12)} ,, 0""#),
            Value::Int(10)
        );
        assert_eq!(run("{(0::('a) set, 1)} ,, 0"), Value::Int(1));
    }

    #[test]
    fn operators() {
        assert_eq!(run("{(1,2),(2,3)} O {(2,5),(3,6)}"), run("{(1,5),(2,6)}"));
        assert_eq!(run("{(1,2),(2,3)}¯"), run("{(2,1),(3,2)}"));
        assert_eq!(run("{(1,2),(2,3)}^-1"), run("converse {(1,2),(2,3)}"));
        assert_eq!(run("{(1,2),(2,3),(3,4)} `` {1,2}"), ints(&[2, 3]));
        assert_eq!(run("{(1,2),(2,3)} -- 1"), run("{(2,3)}"));
        assert_eq!(run("{(1,2),(2,3)} +* {(2,9)}"), run("{(1,2),(2,9)}"));
        assert_eq!(run("{(1,{2}),(2,{3})} ,,, 3"), Value::empty_set());
        assert_eq!(run("{(-1, 1/2)} ,, -1"), Value::rat(1, 2).unwrap());
        assert_eq!(run("{(a, \"b c\")} ,, a"), Value::sym("b c"));
        // Left associative at equal binding.
        assert_eq!(run("{(1,2)} +< (3,4) ,, 3"), Value::Int(4));
        // `` binds tighter than ,, so this is R ,, (image ...).
        assert_eq!(run("{({2},7)} ,, {(1,2)} `` {1}"), Value::Int(7));
    }

    #[test]
    fn named_functions() {
        assert_eq!(run("projector {(1,1),(1,2),(2,2)}"), run("{(1,{1,2}),(2,{2})}"));
        assert_eq!(run("kernel({(1,10),(2,10)})"), run("{(1,1),(1,2),(2,1),(2,2)}"));
        assert_eq!(
            run("quotient {(1,10),(2,10)} {(1,1),(1,2),(2,1),(2,2)} {(10,10)}"),
            run("{({1,2},{10})}")
        );
        assert_eq!(run("eval({(0,10)}, 0)"), Value::Int(10));
        assert_eq!(run("single_paste({(0,10)}, 0, 11)"), run("{(0,11)}"));
        assert_eq!(run("single_paste({(0,10)}, (0, 11))"), run("{(0,11)}"));
        assert_eq!(run("outside({(0,10),(1,11)}, {0})"), run("{(1,11)}"));
        assert_eq!(run("image({(0,10)}, {0})"), ints(&[10]));
        assert_eq!(run("compose({(0,1)}, {(1,2)})"), run("{(0,2)}"));
        assert_eq!(run("paste {(0,1)} {(0,2)}"), run("{(0,2)}"));
        assert_eq!(run("Domain {(0,1),(2,1)}"), ints(&[0, 2]));
    }

    #[test]
    fn errors() {
        for (src, parse) in [
            ("{(0,1)} ,,", true),
            ("quotient {} {}", true),
            ("eval({}, 1, 2)", true),
            ("{1,2", true),
            ("1 2", true),
            ("#", true),
            ("1/0", true),
            ("\"open", true),
            ("{1} ,, 1", false),
            ("kernel {(1,1),(1,2)}", false),
            ("{(1,2)} outside 1", false),
        ] {
            match eval_expression(src) {
                Err(CliError::Parse(m)) if parse => assert!(m.contains("offset"), "{m}"),
                Err(CliError::Validation(_)) if !parse => {}
                other => panic!("{src}: {other:?}"),
            }
        }
    }
}
