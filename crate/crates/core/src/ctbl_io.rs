//! Text formats: cyclotomic expressions, CTBL v1 character tables,
//! PERMGROUP v1 generator files and MATREP v1 matrix generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::chartab::{CharacterTable, TableError};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::permgroup::{GroupError, PermGroup, Permutation};
use crate::verifier::{MatrixRep, VerifyError};

/// Largest root-of-unity order accepted by the parser.
pub const MAX_PARSE_ORDER: u64 = 100_000;

/// Syntax error in a cyclotomic expression; `pos` is a 0-based char offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CtblError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Value { line: usize, source: ParseError },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] VerifyError),
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn small_integer(&mut self, what: &str) -> Result<u64, ParseError> {
        let start = self.pos;
        let n = self.integer()?;
        match u64::try_from(n) {
            Ok(v) => Ok(v),
            Err(_) => Err(ParseError { pos: start, message: format!("{what} is too large") }),
        }
    }

    // factor := int ['/' int] | 'E' '(' int ')' ['^' ['-'] int]
    fn factor(&mut self) -> Result<Cyclotomic, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(ParseError { pos: at, message: "zero denominator".into() });
                    }
                    Ok(Cyclotomic::from_rational(Rational::new(num, den)))
                } else {
                    Ok(Cyclotomic::from_bigint(num))
                }
            }
            Some('E') => {
                self.pos += 1;
                self.expect('(')?;
                let at = self.pos;
                let n = self.small_integer("root order")?;
                if n == 0 {
                    return Err(ParseError { pos: at, message: "E(0) is not defined".into() });
                }
                if n > MAX_PARSE_ORDER {
                    return Err(ParseError { pos: at, message: format!("E({n}) exceeds the supported order") });
                }
                self.expect(')')?;
                let mut e: i64 = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some('-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let at = self.pos;
                    let k = self.integer()?;
                    let k: i64 = (k % BigInt::from(n)).try_into().map_err(|_| ParseError {
                        pos: at,
                        message: "bad exponent".into(),
                    })?;
                    e = if neg { -k } else { k };
                }
                Ok(Cyclotomic::root_of_unity(n as u32, e))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let at = self.pos;
            let f = self.factor()?;
            let l = (acc.order() as u64).lcm(&(f.order() as u64));
            if l > MAX_PARSE_ORDER {
                return Err(ParseError { pos: at, message: "product exceeds the supported order".into() });
            }
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Cyclotomic, ParseError> {
        let mut acc = Cyclotomic::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                Some(_) if first => 1,
                Some(c) => return self.err(format!("unexpected `{c}`")),
                None => return self.err("empty expression"),
            };
            let at = self.pos;
            let t = self.term()?;
            let l = (acc.order() as u64).lcm(&(t.order() as u64));
            if l > MAX_PARSE_ORDER {
                return Err(ParseError { pos: at, message: "sum exceeds the supported order".into() });
            }
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }
}

/// Parses `E(n)` notation: sums of terms like `-3/2*E(8)^3` or `E(5)^-1`.
pub fn parse_cyclotomic(text: &str) -> Result<Cyclotomic, ParseError> {
    let mut lx = Lexer::new(text);
    let v = lx.expr()?;
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(v)
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, CtblError> {
    Err(CtblError::Syntax { line, message: message.into() })
}

fn parse_uints<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, CtblError> {
    s.split_whitespace()
        .map(|w| match w.parse() {
            Ok(v) => Ok(v),
            Err(_) => syntax(line, format!("`{w}` is not a nonnegative integer")),
        })
        .collect()
}

fn parse_indices(line: usize, s: &str) -> Result<Vec<usize>, CtblError> {
    parse_uints::<usize>(line, s)?
        .into_iter()
        .map(|i| if i == 0 { syntax(line, "indices are 1-based") } else { Ok(i - 1) })
        .collect()
}

fn split_keyword(l: &str) -> (&str, &str) {
    match l.find(char::is_whitespace) {
        Some(i) => (&l[..i], l[i..].trim()),
        None => (l, ""),
    }
}

/// Parses and validates a CTBL v1 table.
pub fn parse_table(text: &str) -> Result<CharacterTable, CtblError> {
    parse_table_with(text, true)
}

/// Parses a CTBL v1 table; with `validate = false` only the cheap shape
/// checks run and the table is marked unvalidated.
pub fn parse_table_with(text: &str, validate: bool) -> Result<CharacterTable, CtblError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "CTBL v1")) => {}
        Some((n, _)) => return syntax(n, "expected header `CTBL v1`"),
        None => return Err(CtblError::Missing("CTBL v1")),
    }
    let mut name = None;
    let mut source = None;
    let mut aliases = Vec::new();
    let mut order: Option<BigUint> = None;
    let mut exponent: Option<BigUint> = None;
    let mut classes: Option<usize> = None;
    let mut sizes: Option<Vec<BigUint>> = None;
    let mut orders: Option<Vec<u64>> = None;
    let mut power_maps = BTreeMap::new();
    let mut inverse = None;
    let mut chars: Vec<Option<Vec<Cyclotomic>>> = Vec::new();
    for (n, l) in lines {
        let (kw, rest) = split_keyword(l);
        match kw {
            "group" => name = Some(rest.to_string()),
            "source" => source = Some(rest.to_string()),
            "alias" => aliases.push(rest.to_string()),
            "order" => match rest.parse() {
                Ok(v) => order = Some(v),
                Err(_) => return syntax(n, "bad order"),
            },
            "exponent" => match rest.parse() {
                Ok(v) => exponent = Some(v),
                Err(_) => return syntax(n, "bad exponent"),
            },
            "classes" => match rest.parse() {
                Ok(v) => classes = Some(v),
                Err(_) => return syntax(n, "bad class count"),
            },
            "sizes" => sizes = Some(parse_uints(n, rest)?),
            "orders" => orders = Some(parse_uints(n, rest)?),
            "inverse:" => inverse = Some(parse_indices(n, rest)?),
            "powermap" | "char" => {
                let Some((head, body)) = rest.split_once(':') else {
                    return syntax(n, format!("`{kw}` line needs `:`"));
                };
                let Ok(idx) = head.trim().parse::<u64>() else {
                    return syntax(n, format!("bad `{kw}` index"));
                };
                if kw == "powermap" {
                    if power_maps.insert(idx, parse_indices(n, body)?).is_some() {
                        return syntax(n, format!("duplicate powermap {idx}"));
                    }
                    continue;
                }
                let i = idx as usize;
                let k = classes.unwrap_or(0);
                if i == 0 || i > k {
                    return syntax(n, format!("character index {i} outside 1..={k}"));
                }
                if chars.len() < k {
                    chars.resize(k, None);
                }
                if chars[i - 1].is_some() {
                    return syntax(n, format!("duplicate char {i}"));
                }
                let values = body
                    .split(';')
                    .map(|v| {
                        parse_cyclotomic(v.trim())
                            .map_err(|source| CtblError::Value { line: n, source })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                chars[i - 1] = Some(values);
            }
            _ => return syntax(n, format!("unknown keyword `{kw}`")),
        }
    }
    let k = classes.ok_or(CtblError::Missing("classes"))?;
    let characters: Vec<Vec<Cyclotomic>> = chars.into_iter().flatten().collect();
    let name = name.unwrap_or_default();
    let table = CharacterTable {
        name: if name.is_empty() { "unnamed".into() } else { name },
        order: order.ok_or(CtblError::Missing("order"))?,
        exponent: exponent.ok_or(CtblError::Missing("exponent"))?,
        class_sizes: sizes.ok_or(CtblError::Missing("sizes"))?,
        element_orders: orders.ok_or(CtblError::Missing("orders"))?,
        power_maps,
        inverse_map: inverse.ok_or(CtblError::Missing("inverse:"))?,
        characters,
        source,
        aliases,
        validated: validate,
    };
    if table.class_sizes.len() != k {
        return Err(TableError::LengthMismatch {
            what: "sizes".into(),
            expected: k,
            found: table.class_sizes.len(),
        }
        .into());
    }
    table.validate_shape()?;
    let lcm = table.element_orders.iter().fold(1u64, |a, &o| a.lcm(&o));
    if BigUint::from(lcm) != table.exponent {
        return Err(CtblError::Syntax {
            line: 0,
            message: format!("exponent {} is not the lcm {lcm} of element orders", table.exponent),
        });
    }
    if validate {
        table.validate_orthogonality()?;
    }
    Ok(table)
}

fn join<T: ToString>(v: &[T], offset: usize) -> String
where
    T: Copy + Into<u128>,
{
    v.iter().map(|&x| (x.into() + offset as u128).to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical CTBL v1 serialization.
pub fn write_table(t: &CharacterTable) -> String {
    let mut out = String::from("CTBL v1\n");
    let name = if t.name.is_empty() { "unnamed" } else { &t.name };
    writeln!(out, "group {name}").unwrap();
    if let Some(s) = &t.source {
        writeln!(out, "source {s}").unwrap();
    }
    for a in &t.aliases {
        writeln!(out, "alias {a}").unwrap();
    }
    writeln!(out, "order {}", t.order).unwrap();
    writeln!(out, "exponent {}", t.exponent).unwrap();
    writeln!(out, "classes {}", t.n_classes()).unwrap();
    let sizes: Vec<String> = t.class_sizes.iter().map(|s| s.to_string()).collect();
    writeln!(out, "sizes {}", sizes.join(" ")).unwrap();
    writeln!(out, "orders {}", join(&t.element_orders, 0)).unwrap();
    for (p, map) in &t.power_maps {
        let m: Vec<u64> = map.iter().map(|&i| i as u64).collect();
        writeln!(out, "powermap {p}: {}", join(&m, 1)).unwrap();
    }
    let inv: Vec<u64> = t.inverse_map.iter().map(|&i| i as u64).collect();
    writeln!(out, "inverse: {}", join(&inv, 1)).unwrap();
    for (i, row) in t.characters.iter().enumerate() {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "char {}: {}", i + 1, vals.join(" ; ")).unwrap();
    }
    out
}

/// Parses disjoint cycles on 1-based points, e.g. `(1,2,3)(4,5)`.
pub fn parse_cycles(degree: usize, s: &str) -> Result<Permutation, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "()" {
        return Ok(Permutation::identity(degree));
    }
    let mut cycles = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(format!("expected `(` in `{rest}`"));
        };
        let Some(end) = body.find(')') else { return Err("unclosed cycle".into()) };
        let cycle = body[..end]
            .split(',')
            .map(|p| match p.parse::<u32>() {
                Ok(v) if v >= 1 && (v as usize) <= degree => Ok(v - 1),
                _ => Err(format!("bad point `{p}` for degree {degree}")),
            })
            .collect::<Result<Vec<u32>, String>>()?;
        cycles.push(cycle);
        rest = &body[end + 1..];
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| e.to_string())
}

pub fn parse_permgroup(text: &str) -> Result<PermGroup, CtblError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "PERMGROUP v1")) => {}
        Some((n, _)) => return syntax(n, "expected header `PERMGROUP v1`"),
        None => return Err(CtblError::Missing("PERMGROUP v1")),
    }
    let mut name = String::new();
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (n, l) in lines {
        let (kw, rest) = split_keyword(l);
        match kw {
            "name" => name = rest.to_string(),
            "degree" => match rest.parse() {
                Ok(d) if d > 0 => degree = Some(d),
                _ => return syntax(n, "bad degree"),
            },
            "gen" => {
                let Some(d) = degree else { return syntax(n, "`gen` before `degree`") };
                match parse_cycles(d, rest) {
                    Ok(g) => gens.push(g),
                    Err(e) => return syntax(n, e),
                }
            }
            _ => return syntax(n, format!("unknown keyword `{kw}`")),
        }
    }
    let degree = degree.ok_or(CtblError::Missing("degree"))?;
    if name.is_empty() {
        name = "unnamed".into();
    }
    Ok(PermGroup::new(name, degree, gens)?)
}

pub fn write_permgroup(g: &PermGroup) -> String {
    let mut out = format!("PERMGROUP v1\nname {}\ndegree {}\n", g.name(), g.degree());
    for x in g.generators() {
        writeln!(out, "gen {x}").unwrap();
    }
    out
}

pub fn parse_matrep(text: &str) -> Result<MatrixRep, CtblError> {
    let mut lines = content_lines(text).peekable();
    match lines.next() {
        Some((_, "MATREP v1")) => {}
        Some((n, _)) => return syntax(n, "expected header `MATREP v1`"),
        None => return Err(CtblError::Missing("MATREP v1")),
    }
    let mut name = String::from("unnamed");
    let mut dim: Option<usize> = None;
    let mut order: Option<u64> = None;
    let mut gens = Vec::new();
    while let Some((n, l)) = lines.next() {
        let (kw, rest) = split_keyword(l);
        match kw {
            "name" => name = rest.to_string(),
            "dim" => match rest.parse() {
                Ok(d) if d > 0 => dim = Some(d),
                _ => return syntax(n, "bad dim"),
            },
            "order" => match rest.parse() {
                Ok(o) => order = Some(o),
                _ => return syntax(n, "bad order"),
            },
            "gen" => {
                let Some(q) = dim else { return syntax(n, "`gen` before `dim`") };
                let mut m = Vec::with_capacity(q);
                for _ in 0..q {
                    let Some((rn, row)) = lines.next() else {
                        return syntax(n, "generator block is truncated");
                    };
                    let vals = row
                        .split(';')
                        .map(|v| {
                            parse_cyclotomic(v.trim())
                                .map_err(|source| CtblError::Value { line: rn, source })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if vals.len() != q {
                        return syntax(rn, format!("row has {} entries, expected {q}", vals.len()));
                    }
                    m.push(vals);
                }
                gens.push(m);
            }
            _ => return syntax(n, format!("unknown keyword `{kw}`")),
        }
    }
    let dim = dim.ok_or(CtblError::Missing("dim"))?;
    Ok(MatrixRep::new(name, dim, order, gens)?)
}

pub fn write_matrep(rep: &MatrixRep) -> String {
    let mut out = format!("MATREP v1\nname {}\ndim {}\n", rep.name, rep.dim);
    if let Some(o) = rep.declared_order {
        writeln!(out, "order {o}").unwrap();
    }
    for g in &rep.generators {
        out.push_str("gen\n");
        for row in g {
            let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", vals.join(" ; ")).unwrap();
        }
    }
    out
}

/// Convenience for tests and fixtures: `Σ c·ζ_n^e` from integer coefficients.
pub fn cyc_from_ints(n: u32, terms: &[(i64, i64)]) -> Cyclotomic {
    Cyclotomic::from_terms(
        n,
        terms.iter().map(|&(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cyclotomic {
        parse_cyclotomic(s).unwrap()
    }

    #[test]
    fn parses_examples() {
        let a = &Cyclotomic::root_of_unity(5, 1) + &Cyclotomic::root_of_unity(5, 4);
        assert_eq!(c("E(5)+E(5)^4"), a);
        assert_eq!(c("-3/2"), Cyclotomic::from_rational(Rational::new(BigInt::from(-3), BigInt::from(2))));
        // ζ8³ = -ζ8^7 and ζ8 = ζ8, both basis elements
        let b = c("2*E(8)^3 - E(8)");
        assert_eq!(b, cyc_from_ints(8, &[(3, 2), (1, -1)]));
        assert_eq!(b.to_string(), "-E(8)+2*E(8)^3");
        assert_eq!(c(" E(4) ^ 2 "), Cyclotomic::from_integer(-1));
        assert_eq!(c("E(7)^-1"), Cyclotomic::root_of_unity(7, 6));
        assert_eq!(c("0"), Cyclotomic::zero());
        assert_eq!(c("E(3)*E(3)*2"), Cyclotomic::root_of_unity(3, 2).scale(&Rational::from_integer(2.into())));
    }

    #[test]
    fn rejects_bad_syntax() {
        for bad in ["", "E(0)", "E()", "E(5", "1/0", "3 +", "E(5)^", "2**E(3)", "x", "E(-3)", "1 2", "E(1000000)"] {
            let r = parse_cyclotomic(bad);
            assert!(r.is_err(), "{bad:?} parsed as {r:?}");
        }
        let e = parse_cyclotomic("E(5)+?").unwrap_err();
        assert_eq!(e.pos, 5);
    }

    #[test]
    fn display_round_trips() {
        for s in ["E(5)+E(5)^4", "-1/2", "3/2*E(8)^3", "-E(12)^7", "E(9)^2-E(9)^4"] {
            let v = c(s);
            assert_eq!(c(&v.to_string()), v);
        }
    }

    const S3: &str = "CTBL v1
group S3
order 6
exponent 6
classes 3
sizes 1 3 2
orders 1 2 3
powermap 2: 1 1 3
powermap 3: 1 2 1
inverse: 1 2 3
char 1: 1 ; 1 ; 1
char 2: 1 ; -1 ; 1
char 3: 2 ; 0 ; -1
";

    #[test]
    fn table_round_trip() {
        let t = parse_table(S3).unwrap();
        assert_eq!(t.n_classes(), 3);
        assert_eq!(write_table(&t), S3);
    }

    #[test]
    fn corrupted_row_names_the_pair() {
        let bad = S3.replace("char 2: 1 ; -1 ; 1", "char 2: 1 ; -1 ; 2");
        let e = parse_table(&bad).unwrap_err();
        assert_eq!(e, CtblError::Table(TableError::RowOrthogonality(1, 2)));
        assert!(parse_table_with(&bad, false).is_ok());
        assert!(!parse_table_with(&bad, false).unwrap().validated);
    }

    #[test]
    fn empty_name_defaults() {
        let t = parse_table(&S3.replace("group S3\n", "")).unwrap();
        assert!(write_table(&t).contains("group unnamed\n"));
    }

    #[test]
    fn permgroup_round_trip() {
        let text = "PERMGROUP v1\nname S4\ndegree 4\ngen (1,2)\ngen (1,2,3,4)\n";
        let g = parse_permgroup(text).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(write_permgroup(&g), text);
        assert!(parse_permgroup("PERMGROUP v1\ndegree 3\ngen (1,4)\n").is_err());
        assert!(parse_permgroup("PERMGROUP v1\ndegree 3\ngen (1,2)(2,3)\n").is_err());
    }

    #[test]
    fn matrep_round_trip() {
        let text = "MATREP v1\nname C4\ndim 2\norder 4\ngen\nE(4) ; 0\n0 ; -E(4)\n";
        let r = parse_matrep(text).unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(write_matrep(&r), text);
        let not_unitary = "MATREP v1\ndim 1\ngen\n2\n";
        assert!(matches!(parse_matrep(not_unitary), Err(CtblError::Rep(_))));
    }
}
