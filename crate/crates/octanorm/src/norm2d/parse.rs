//! Norm-spec mini-language.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! spec  := "lp:" num | "ab:" num "," num | "poly:[" point ("," point)* "]" | "dual(" spec ")"
//! point := "(" num "," num ")"
//! num   := decimal float | "inf"
//! ```
//!
//! `Display` for [`AbsNorm2`] prints this format back, and printing then
//! parsing round-trips to an identical value.

use super::{AbsNorm2, Polygon2};
use crate::error::{Error, Result};
use std::fmt;

pub fn parse_norm(input: &str) -> Result<AbsNorm2> {
    let mut p = Cursor::new(input);
    let norm = p.norm()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(p.pos, "trailing input after norm spec"));
    }
    Ok(norm)
}

pub(crate) struct Cursor<'a> {
    bytes: &'a [u8],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(input: &'a str) -> Self {
        Cursor {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    pub fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::parse(self.pos, format!("expected '{}'", ch as char))),
        }
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    pub fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        if self.eat_keyword("inf") {
            return Ok(f64::INFINITY);
        }
        let start = self.pos;
        let mut saw_digit = false;
        while let Some(&c) = self.bytes.get(self.pos) {
            match c {
                b'0'..=b'9' => {
                    saw_digit = true;
                    self.pos += 1;
                }
                b'.' | b'-' | b'+' => self.pos += 1,
                b'e' | b'E' => self.pos += 1,
                _ => break,
            }
        }
        if !saw_digit {
            return Err(Error::parse(start, "expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map_err(|_| Error::parse(start, format!("invalid number '{text}'")))
    }

    pub fn norm(&mut self) -> Result<AbsNorm2> {
        let at = self.pos;
        if self.eat_keyword("lp") {
            self.expect(b':')?;
            let p = self.number()?;
            return AbsNorm2::lp(p);
        }
        if self.eat_keyword("ab") {
            self.expect(b':')?;
            let a = self.number()?;
            self.expect(b',')?;
            let b = self.number()?;
            return AbsNorm2::param_ab(a, b);
        }
        if self.eat_keyword("poly") {
            self.expect(b':')?;
            self.expect(b'[')?;
            let mut verts = Vec::new();
            loop {
                self.expect(b'(')?;
                let x = self.number()?;
                self.expect(b',')?;
                let y = self.number()?;
                self.expect(b')')?;
                verts.push((x, y));
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                    }
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(Error::parse(self.pos, "expected ',' or ']'")),
                }
            }
            return Ok(AbsNorm2::polygon(Polygon2::new(verts)?));
        }
        if self.eat_keyword("dual") {
            self.expect(b'(')?;
            let inner = self.norm()?;
            self.expect(b')')?;
            return Ok(AbsNorm2::dual_of(inner));
        }
        Err(Error::parse(at, "expected 'lp:', 'ab:', 'poly:' or 'dual('"))
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x}")
    }
}

impl fmt::Display for AbsNorm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsNorm2::Lp(p) => write!(f, "lp:{}", fmt_num(*p)),
            AbsNorm2::ParamAB { a, b } => write!(f, "ab:{},{}", fmt_num(*a), fmt_num(*b)),
            AbsNorm2::Polygon(poly) => {
                write!(f, "poly:[")?;
                for (i, (x, y)) in poly.verts().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "({},{})", fmt_num(*x), fmt_num(*y))?;
                }
                write!(f, "]")
            }
            AbsNorm2::DualOf(base) => write!(f, "dual({base})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_families() {
        assert_eq!(parse_norm("lp:2").unwrap(), AbsNorm2::Lp(2.0));
        assert_eq!(parse_norm("lp:inf").unwrap(), AbsNorm2::Lp(f64::INFINITY));
        assert_eq!(
            parse_norm("ab:0.5,0").unwrap(),
            AbsNorm2::ParamAB { a: 0.5, b: 0.0 }
        );
        let poly = parse_norm("poly:[(1,0),(0.5,1),(0,1)]").unwrap();
        assert!(matches!(poly, AbsNorm2::Polygon(_)));
        let dual = parse_norm("dual(lp:3)").unwrap();
        assert!(matches!(dual, AbsNorm2::DualOf(_)));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse_norm("  dual( ab: 0.5 , 0.25 ) ").unwrap(),
            AbsNorm2::dual_of(AbsNorm2::param_ab(0.5, 0.25).unwrap())
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_norm("lp:x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_norm("nope") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn display_round_trips() {
        for spec in [
            "lp:2",
            "lp:inf",
            "lp:1.5",
            "ab:0.5,0",
            "poly:[(1,0),(0.5,1),(0,1)]",
            "dual(ab:0.3,0.7)",
        ] {
            let n = parse_norm(spec).unwrap();
            let printed = n.to_string();
            assert_eq!(parse_norm(&printed).unwrap(), n, "spec {spec} -> {printed}");
        }
    }
}
