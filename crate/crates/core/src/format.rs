//! The `.alg` definition format.
//!
//! ```text
//! # Virasoro
//! kind = conformal
//! const alpha = 1/2
//! generator L weight 2
//! central C
//! bracket L L = T L + 2*lam*L + alpha*lam^3*C
//! ```
//!
//! One statement per line, `#` starts a comment. The first statement is
//! `kind = conformal | associative | group`. Expressions are sums of terms
//! `RAT [* lam^K] [* T^M] SYMBOL`; the `*` between factors is optional and
//! declared constants may stand in for rationals.
//!
//! An associative file declares `element NAME weight W`, `unit NAME`,
//! `product X Y = expr` and `derivation X = expr`; products with the unit
//! are filled in and undeclared entries are zero. A group file declares
//! `group NAME cyclic N` and `act SYMBOL = expr`, the image of each symbol
//! under the generator; undeclared symbols are fixed.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::conformal::{Bracket, ConformalPresentation};
use crate::lambda::{LambdaPoly, Letter, ModuleElement, TAction};
use crate::lincomb::Vector;
use crate::scalar::{self, Scalar};
use crate::sfc::construct::AssocAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownSymbol(String),
    Duplicate(String),
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {}", describe(&self.kind))]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

fn describe(k: &ParseErrorKind) -> String {
    match k {
        ParseErrorKind::Syntax(m) => format!("syntax error: {m}"),
        ParseErrorKind::UnknownSymbol(s) => format!("unknown symbol `{s}`"),
        ParseErrorKind::Duplicate(s) => format!("duplicate declaration of `{s}`"),
        ParseErrorKind::Invalid(m) => m.clone(),
    }
}

fn err<T>(pos: Pos, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { pos, kind })
}

fn syntax<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    err(pos, ParseErrorKind::Syntax(msg.into()))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: lineno, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Int(chars[start..i].iter().collect()), pos });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
        } else if "=+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Sym(c), pos });
            i += 1;
        } else {
            return syntax(pos, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// One term of an expression before symbols are resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTerm {
    pub coeff: Scalar,
    pub lam: u32,
    pub t: u32,
    /// None for a bare scalar.
    pub symbol: Option<(String, Pos)>,
    pub pos: Pos,
}

struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
    end: Pos,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.i)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.i);
        self.i += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(x), .. }) if *x == c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            syntax(self.pos(), format!("expected `{c}`"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.next() {
            Some(Token { tok: Tok::Ident(s) | Tok::Int(s), pos }) => Ok((s.clone(), *pos)),
            _ => syntax(self.toks.get(self.i - 1).map_or(self.end, |t| t.pos), format!("expected {what}")),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        match self.next() {
            Some(Token { tok: Tok::Int(s), pos }) => {
                let v: i64 = s.parse().map_err(|_| ParseError { pos: *pos, kind: ParseErrorKind::Syntax("integer too large".into()) })?;
                Ok(if neg { -v } else { v })
            }
            _ => syntax(self.toks.get(self.i - 1).map_or(self.end, |t| t.pos), "expected an integer"),
        }
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => syntax(t.pos, "unexpected trailing input"),
        }
    }

    /// `p`, `p/q`, `(p/q)` or `(-p/q)`.
    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let paren = self.eat('(');
        let neg = paren && self.eat('-');
        let pos = self.pos();
        let num = self.int()?;
        let mut v = scalar::int(num);
        if self.eat('/') {
            let den = self.int()?;
            if den == 0 {
                return syntax(pos, "zero denominator");
            }
            v = scalar::rat(num, den);
        }
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let pos = self.pos();
        let k = self.int()?;
        u32::try_from(k).or_else(|_| syntax(pos, "negative exponent"))
    }

    fn expr(&mut self, consts: &BTreeMap<String, Scalar>) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -scalar::one()
        } else {
            self.eat('+');
            scalar::one()
        };
        loop {
            let mut term = RawTerm { coeff: sign.clone(), lam: 0, t: 0, symbol: None, pos: self.pos() };
            let mut factors = 0;
            loop {
                let Some(tok) = self.peek() else { break };
                match &tok.tok {
                    Tok::Int(_) => term.coeff *= self.rational()?,
                    Tok::Sym('(') => term.coeff *= self.rational()?,
                    Tok::Ident(s) if s == "lam" => {
                        self.i += 1;
                        term.lam += self.power()?;
                    }
                    Tok::Ident(s) if s == "T" => {
                        self.i += 1;
                        term.t += self.power()?;
                    }
                    Tok::Ident(s) => {
                        if let Some(c) = consts.get(s) {
                            term.coeff *= c.clone();
                        } else if term.symbol.is_some() {
                            return syntax(tok.pos, format!("second symbol `{s}` in one term"));
                        } else {
                            term.symbol = Some((s.clone(), tok.pos));
                        }
                        self.i += 1;
                    }
                    _ => break,
                }
                factors += 1;
                if !self.eat('*') {
                    // juxtaposition also multiplies
                    if !matches!(self.peek(), Some(Token { tok: Tok::Ident(_) | Tok::Int(_) | Tok::Sym('('), .. })) {
                        break;
                    }
                }
            }
            if factors == 0 {
                return syntax(self.pos(), "expected a term");
            }
            terms.push(term);
            if self.eat('+') {
                sign = scalar::one();
            } else if self.eat('-') {
                sign = -scalar::one();
            } else {
                break;
            }
        }
        Ok(terms)
    }
}

/// A cyclic group given by the images of symbols under its generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub name: String,
    pub order: usize,
    pub images: Vec<((String, Pos), Vec<RawTerm>)>,
}

#[derive(Clone, Debug)]
pub enum AlgebraFile {
    Conformal(ConformalPresentation),
    Associative(AssocAlgebra),
    Group(GroupSpec),
}

impl AlgebraFile {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgebraFile::Conformal(_) => "conformal",
            AlgebraFile::Associative(_) => "associative",
            AlgebraFile::Group(_) => "group",
        }
    }
}

const RESERVED: [&str; 2] = ["T", "lam"];

#[derive(Default)]
struct AssocBuilder {
    name: Option<String>,
    elements: Vec<(String, i64)>,
    unit: Option<(String, Pos)>,
    products: BTreeMap<(usize, usize), Vec<RawTerm>>,
    derivation: BTreeMap<usize, Vec<RawTerm>>,
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut kind: Option<String> = None;
    let mut consts: BTreeMap<String, Scalar> = BTreeMap::new();
    let mut pres = ConformalPresentation::new(true);
    let mut declared_skew = false;
    let mut brackets = 0usize;
    let mut assoc = AssocBuilder::default();
    let mut group: Option<GroupSpec> = None;
    let mut names: BTreeMap<String, Pos> = BTreeMap::new();
    let mut last = Pos { line: 1, col: 1 };

    let declare = |names: &mut BTreeMap<String, Pos>, n: &str, pos: Pos| -> Result<(), ParseError> {
        if RESERVED.contains(&n) {
            return syntax(pos, format!("`{n}` is reserved"));
        }
        if names.insert(n.to_string(), pos).is_some() {
            return err(pos, ParseErrorKind::Duplicate(n.into()));
        }
        Ok(())
    };

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokenize(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let end = Pos { line: lineno, col: line.chars().count() + 1 };
        last = end;
        let mut c = Cursor { toks: &toks, i: 0, end };
        let (head, hpos) = c.ident("a statement")?;
        if kind.is_none() {
            if head != "kind" {
                return syntax(hpos, "the first statement must be `kind = ...`");
            }
            c.expect('=')?;
            let (k, kpos) = c.ident("a kind")?;
            if !["conformal", "associative", "group"].contains(&k.as_str()) {
                return syntax(kpos, format!("unknown kind `{k}`"));
            }
            c.done()?;
            kind = Some(k);
            continue;
        }
        let k = kind.as_deref().unwrap();
        match (k, head.as_str()) {
            (_, "kind") => return err(hpos, ParseErrorKind::Duplicate("kind".into())),
            (_, "name") => {
                c.expect('=')?;
                assoc.name = Some(c.ident("a name")?.0);
            }
            (_, "const") => {
                let (n, p) = c.ident("a constant name")?;
                declare(&mut names, &n, p)?;
                c.expect('=')?;
                let neg = c.eat('-');
                let v = c.rational()?;
                consts.insert(n, if neg { -v } else { v });
            }
            ("conformal", "skew") => {
                c.expect('=')?;
                let (v, p) = c.ident("true or false")?;
                if declared_skew || brackets > 0 {
                    return syntax(hpos, "`skew` must come once, before any bracket");
                }
                pres.skew = match v.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return syntax(p, "expected true or false"),
                };
                declared_skew = true;
            }
            ("conformal", "generator") => {
                let mut gens = vec![c.ident("a generator name")?];
                while !matches!(c.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == "weight") {
                    if c.peek().is_none() {
                        return syntax(c.pos(), "expected `weight`");
                    }
                    gens.push(c.ident("a generator name")?);
                }
                c.i += 1;
                let w = c.int()?;
                for (n, p) in gens {
                    declare(&mut names, &n, p)?;
                    pres.add_generator(&n, w).expect("names are unique");
                }
            }
            ("conformal", "central") => {
                let mut any = false;
                while c.peek().is_some() {
                    let (n, p) = c.ident("a central name")?;
                    declare(&mut names, &n, p)?;
                    pres.add_central(&n).expect("names are unique");
                    any = true;
                }
                if !any {
                    return syntax(c.pos(), "expected a central name");
                }
            }
            ("conformal", "bracket") => {
                let (x, xp) = c.ident("a generator")?;
                let (y, yp) = c.ident("a generator")?;
                c.expect('=')?;
                let terms = c.expr(&consts)?;
                let lx = free_letter(&pres, &x, xp)?;
                let ly = free_letter(&pres, &y, yp)?;
                let value = bracket_value(&pres, &terms)?;
                pres.set_bracket(lx, ly, value).map_err(|e| ParseError { pos: hpos, kind: ParseErrorKind::Duplicate(e.to_string()) })?;
                brackets += 1;
            }
            ("associative", "element") => {
                let (n, p) = c.ident("an element name")?;
                declare(&mut names, &n, p)?;
                let (w, wp) = c.ident("`weight`")?;
                if w != "weight" {
                    return syntax(wp, "expected `weight`");
                }
                assoc.elements.push((n, c.int()?));
            }
            ("associative", "unit") => {
                if assoc.unit.is_some() {
                    return err(hpos, ParseErrorKind::Duplicate("unit".into()));
                }
                assoc.unit = Some(c.ident("an element")?);
            }
            ("associative", "product") => {
                let x = c.ident("an element")?;
                let y = c.ident("an element")?;
                c.expect('=')?;
                let (i, j) = (element(&assoc, &x)?, element(&assoc, &y)?);
                let terms = c.expr(&consts)?;
                if assoc.products.insert((i, j), terms).is_some() {
                    return err(x.1, ParseErrorKind::Duplicate(format!("product {} {}", x.0, y.0)));
                }
            }
            ("associative", "derivation") => {
                let x = c.ident("an element")?;
                c.expect('=')?;
                let i = element(&assoc, &x)?;
                let terms = c.expr(&consts)?;
                if assoc.derivation.insert(i, terms).is_some() {
                    return err(x.1, ParseErrorKind::Duplicate(format!("derivation {}", x.0)));
                }
            }
            ("group", "group") => {
                if group.is_some() {
                    return err(hpos, ParseErrorKind::Duplicate("group".into()));
                }
                let (n, _) = c.ident("a group name")?;
                let (cy, cp) = c.ident("`cyclic`")?;
                if cy != "cyclic" {
                    return syntax(cp, "only `cyclic N` groups are supported");
                }
                let op = c.pos();
                let order = c.int()?;
                if order < 1 {
                    return syntax(op, "group order must be positive");
                }
                group = Some(GroupSpec { name: n, order: order as usize, images: Vec::new() });
            }
            ("group", "act") => {
                let Some(g) = group.as_mut() else {
                    return syntax(hpos, "`act` before `group`");
                };
                let x = c.ident("a symbol")?;
                if g.images.iter().any(|(y, _)| y.0 == x.0) {
                    return err(x.1, ParseErrorKind::Duplicate(format!("act {}", x.0)));
                }
                c.expect('=')?;
                let terms = c.expr(&consts)?;
                g.images.push((x, terms));
            }
            _ => return syntax(hpos, format!("unknown statement `{head}` in a {k} file")),
        }
        c.done()?;
    }
    match kind.as_deref() {
        None => syntax(last, "empty file, expected `kind = ...`"),
        Some("conformal") => {
            if pres.free_generators().is_empty() {
                return syntax(last, "no generators declared");
            }
            Ok(AlgebraFile::Conformal(pres))
        }
        Some("associative") => Ok(AlgebraFile::Associative(finish_assoc(assoc, last)?)),
        _ => match group {
            Some(g) => Ok(AlgebraFile::Group(g)),
            None => syntax(last, "no `group` declared"),
        },
    }
}

fn free_letter(p: &ConformalPresentation, name: &str, pos: Pos) -> Result<Letter, ParseError> {
    match p.lookup(name) {
        Some(l) if !l.central => Ok(l),
        Some(_) => err(pos, ParseErrorKind::Invalid(format!("central `{name}` cannot enter a bracket"))),
        None => err(pos, ParseErrorKind::UnknownSymbol(name.into())),
    }
}

fn bracket_value(p: &ConformalPresentation, terms: &[RawTerm]) -> Result<Bracket, ParseError> {
    let mut out = LambdaPoly::new();
    for t in terms {
        let Some((s, pos)) = &t.symbol else {
            if t.coeff == scalar::zero() {
                continue;
            }
            return syntax(t.pos, "term has no symbol");
        };
        let l = p.lookup(s).ok_or_else(|| ParseError { pos: *pos, kind: ParseErrorKind::UnknownSymbol(s.clone()) })?;
        let m = ModuleElement::single(l).apply_t_pow(t.t);
        out.add_at(t.lam, &m, &t.coeff);
    }
    Ok(out)
}

fn element(a: &AssocBuilder, (name, pos): &(String, Pos)) -> Result<usize, ParseError> {
    a.elements
        .iter()
        .position(|(n, _)| n == name)
        .ok_or_else(|| ParseError { pos: *pos, kind: ParseErrorKind::UnknownSymbol(name.clone()) })
}

/// A linear combination of named basis vectors; `lam` and `T` are rejected
/// and a bare scalar stands for a multiple of `unit`.
pub fn linear_terms(terms: &[RawTerm], unit: Option<usize>, find: impl Fn(&str) -> Option<usize>) -> Result<Vector, ParseError> {
    let mut out = Vector::new();
    for t in terms {
        if t.lam > 0 || t.t > 0 {
            return syntax(t.pos, "`lam` and `T` are not allowed here");
        }
        let Some((s, pos)) = &t.symbol else {
            match unit {
                Some(u) => out.add_term(u, t.coeff.clone()),
                None if t.coeff == scalar::zero() => {}
                None => return syntax(t.pos, "term has no symbol"),
            }
            continue;
        };
        let i = find(s).ok_or_else(|| ParseError { pos: *pos, kind: ParseErrorKind::UnknownSymbol(s.clone()) })?;
        out.add_term(i, t.coeff.clone());
    }
    Ok(out)
}

fn finish_assoc(a: AssocBuilder, last: Pos) -> Result<AssocAlgebra, ParseError> {
    if a.elements.is_empty() {
        return syntax(last, "no elements declared");
    }
    let d = a.elements.len();
    let unit = match &a.unit {
        Some(u) => element(&a, u)?,
        None => return syntax(last, "no `unit` declared"),
    };
    let find = |s: &str| a.elements.iter().position(|(n, _)| n == s);
    let mut mult = vec![vec![Vector::new(); d]; d];
    for i in 0..d {
        mult[unit][i] = Vector::single(i);
        mult[i][unit] = Vector::single(i);
    }
    for (&(i, j), terms) in &a.products {
        mult[i][j] = linear_terms(terms, Some(unit), find)?;
    }
    let mut derivation = vec![Vector::new(); d];
    for (&i, terms) in &a.derivation {
        derivation[i] = linear_terms(terms, Some(unit), find)?;
    }
    Ok(AssocAlgebra {
        name: a.name.unwrap_or_else(|| "A".into()),
        labels: a.elements.iter().map(|(n, _)| n.clone()).collect(),
        weights: a.elements.iter().map(|(_, w)| *w).collect(),
        unit,
        mult,
        derivation,
    })
}

impl GroupSpec {
    /// The image of each symbol under the generator, as coordinates in the
    /// symbols resolved by `find`; unlisted symbols are fixed.
    pub fn generator_images(&self, n: usize, find: impl Fn(&str) -> Option<usize>) -> Result<Vec<Vector>, ParseError> {
        let mut out: Vec<Vector> = (0..n).map(Vector::single).collect();
        for ((s, pos), terms) in &self.images {
            let i = find(s).ok_or_else(|| ParseError { pos: *pos, kind: ParseErrorKind::UnknownSymbol(s.clone()) })?;
            out[i] = linear_terms(terms, None, &find)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::fixtures;
    use crate::scalar::rat;

    const BOSON: &str = "kind = conformal\ngenerator a weight 1\ncentral K\nbracket a a = lam*K\n";

    #[test]
    fn parses_the_fixtures() {
        let AlgebraFile::Conformal(p) = parse_algebra(BOSON).unwrap() else { panic!() };
        assert_eq!(p, fixtures::free_boson());
        let vir = "kind = conformal\nconst alpha = 1/2\ngenerator L weight 2\ncentral C\n\
                   bracket L L = T L + 2*lam*L + alpha*lam^3*C  # Virasoro\n";
        let AlgebraFile::Conformal(p) = parse_algebra(vir).unwrap() else { panic!() };
        assert_eq!(p, fixtures::virasoro(rat(1, 2)));
        let alt = "kind = conformal\ngenerator L weight 2\ncentral C\nbracket L L = T L + 2 lam L + (1/2)*lam^3*C\n";
        let AlgebraFile::Conformal(q) = parse_algebra(alt).unwrap() else { panic!() };
        assert_eq!(p, q);
    }

    #[test]
    fn reports_positions() {
        let bad = "kind = conformal\ngenerator L weight 2\nbracket L L = T L + 2*lam*M\n";
        let e = parse_algebra(bad).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("M".into()));
        assert_eq!(e.pos, Pos { line: 3, col: 27 });
        assert_eq!(e.to_string(), "3:27: unknown symbol `M`");
        let dup = "kind = conformal\ngenerator a weight 1\ncentral a\n";
        let e = parse_algebra(dup).unwrap_err();
        assert_eq!((e.kind, e.pos), (ParseErrorKind::Duplicate("a".into()), Pos { line: 3, col: 9 }));
        let e = parse_algebra("generator a weight 1\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_algebra("kind = conformal\ngenerator a weight 1\nbracket a a = lam*\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)), "{e}");
        assert!(parse_algebra(&format!("{BOSON}bracket a a = lam*K\n")).is_err());
    }

    #[test]
    fn associative_and_group_files() {
        let ut = "kind = associative\nname = UT2\nelement 1 weight 0\nelement E11 weight 0\nelement E12 weight 1\n\
                  unit 1\nproduct E11 E11 = E11\nproduct E11 E12 = E12\nderivation E11 = -E12\n";
        let AlgebraFile::Associative(a) = parse_algebra(ut).unwrap() else { panic!() };
        let want = crate::sfc::construct::algebras::upper_triangular();
        assert_eq!((a.labels.clone(), a.weights.clone(), a.unit), (want.labels, want.weights, want.unit));
        assert_eq!(a.mult, want.mult);
        assert_eq!(a.derivation, want.derivation);
        let g = "kind = group\ngroup Z2 cyclic 2\nact a = -a\n";
        let AlgebraFile::Group(g) = parse_algebra(g).unwrap() else { panic!() };
        let im = g.generator_images(2, |s| ["a", "b"].iter().position(|x| *x == s)).unwrap();
        assert_eq!(im, vec![Vector::term(0, -scalar::one()), Vector::single(1)]);
        let e = g.generator_images(1, |s| (s == "b").then_some(0)).unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, col: 5 });
    }
}
