//! Text input: polynomials over named variables and ideal files.
//!
//! ```text
//! # comment
//! ring: a,b,c,d,e
//! ideal[0]:
//! b^2*c - a*(a-c)*(a-2*c)
//! ideal[1]:
//! d^2*c - e^2*(e+1)
//! blocks: 0,2,4
//! weights: 4,4,3,2,0
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::rational::{format_rational, parse_rational, Rational};
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::Ideal;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.names.len());
        let mut sign = match self.peek() {
            Some('+') => {
                self.pos += 1;
                1
            }
            Some('-' | '−') => {
                self.pos += 1;
                -1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            sign = match self.peek() {
                Some('+') => 1,
                Some('-' | '−') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.integer().map_err(|_| err(at, "malformed exponent"))?;
            let e: u32 = e.try_into().map_err(|_| err(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.names.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(err(at, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(n, value))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.names.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => Err(err(start, format!("unknown variable {name:?}"))),
                }
            }
            Some(c) => Err(err(self.pos, format!("unexpected character {c:?}"))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` as a polynomial in the variables `names`. Products need an explicit `*`;
/// parentheses are expanded.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, names };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("unexpected {c:?} after a complete term")));
    }
    Ok(out)
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_rational).collect()
}

pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("not an index: {s:?}") }))
        .collect()
}

pub fn format_rational_list(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, Default)]
pub struct IdealFile {
    pub names: Vec<String>,
    pub ideals: BTreeMap<usize, Ideal>,
    pub blocks: Option<Vec<usize>>,
    pub weights: Option<Vec<Rational>>,
    pub target: Option<Vec<Rational>>,
}

impl IdealFile {
    pub fn arity(&self) -> usize {
        self.names.len()
    }

    /// The unique ideal, or `ideal[0]`.
    pub fn ideal(&self) -> Result<&Ideal> {
        self.ideals
            .get(&0)
            .or_else(|| if self.ideals.len() == 1 { self.ideals.values().next() } else { None })
            .ok_or_else(|| Error::Malformed("no ideal[0] section".into()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("ring: {}\n", self.names.join(","));
        for (k, ideal) in &self.ideals {
            s.push_str(&format!("ideal[{k}]:\n"));
            for g in ideal.generators() {
                s.push_str(&g.display_with(&self.names));
                s.push('\n');
            }
        }
        if let Some(b) = &self.blocks {
            s.push_str(&format!("blocks: {}\n", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        }
        if let Some(w) = &self.weights {
            s.push_str(&format!("weights: {}\n", format_rational_list(w)));
        }
        if let Some(t) = &self.target {
            s.push_str(&format!("target: {}\n", format_rational_list(t)));
        }
        s
    }
}

fn line_err(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos, msg: format!("line {}: {msg}", line + 1) },
        other => other,
    }
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    let mut file = IdealFile::default();
    let mut current: Option<usize> = None;
    let mut pending: BTreeMap<usize, Vec<Polynomial>> = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ring:") {
            if !file.names.is_empty() {
                return Err(line_err(ln, err(0, "second ring declaration")));
            }
            let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            for (i, n) in names.iter().enumerate() {
                if !n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                    || !n.chars().all(|c| c.is_alphanumeric() || c == '_')
                {
                    return Err(line_err(ln, err(0, format!("bad variable name {n:?}"))));
                }
                if names[..i].contains(n) {
                    return Err(line_err(ln, err(0, format!("duplicate variable {n:?}"))));
                }
            }
            file.names = names;
            current = None;
        } else if let Some(rest) = line.strip_prefix("blocks:") {
            file.blocks = Some(parse_index_list(rest).map_err(|e| line_err(ln, e))?);
            current = None;
        } else if let Some(rest) = line.strip_prefix("weights:") {
            file.weights = Some(parse_rational_list(rest).map_err(|e| line_err(ln, e))?);
            current = None;
        } else if let Some(rest) = line.strip_prefix("target:") {
            file.target = Some(parse_rational_list(rest).map_err(|e| line_err(ln, e))?);
            current = None;
        } else if line.starts_with("ideal") && line.ends_with(':') {
            let head = &line[5..line.len() - 1];
            let k = if head.is_empty() {
                0
            } else {
                head.strip_prefix('[')
                    .and_then(|h| h.strip_suffix(']'))
                    .and_then(|h| h.trim().parse().ok())
                    .ok_or_else(|| line_err(ln, err(0, format!("bad section header {line:?}"))))?
            };
            if pending.contains_key(&k) {
                return Err(line_err(ln, err(0, format!("duplicate section ideal[{k}]"))));
            }
            pending.insert(k, Vec::new());
            current = Some(k);
        } else {
            let k = current.ok_or_else(|| line_err(ln, err(0, "polynomial outside an ideal section")))?;
            if file.names.is_empty() {
                return Err(line_err(ln, err(0, "polynomial before the ring declaration")));
            }
            let p = parse_polynomial(line, &file.names).map_err(|e| line_err(ln, e))?;
            pending.get_mut(&k).expect("section").push(p);
        }
    }
    if file.names.is_empty() {
        return Err(Error::Malformed("missing ring declaration".into()));
    }
    for (k, gens) in pending {
        file.ideals.insert(k, Ideal::new(file.names.len(), gens)?);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.split(',').map(String::from).collect()
    }

    #[test]
    fn plane_cubic_expands() {
        let n = names("a,b,c,d,e");
        let p = parse_polynomial("b^2*c - a*(a-c)*(a-2*c)", &n).unwrap();
        let q = parse_polynomial("-a^3 + 3*a^2*c + b^2*c - 2*a*c^2", &n).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.display_with(&n), "-a^3 + 3*a^2*c - 2*a*c^2 + b^2*c");
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let n = names("x,y");
        let p = parse_polynomial("2/3*x^2*y - y^3", &n).unwrap();
        assert_eq!(p.terms().count(), 2);
        assert_eq!(parse_polynomial(&p.display_with(&n), &n).unwrap(), p);
        assert_eq!(parse_polynomial("x", &n).unwrap(), Polynomial::var(2, 0));
    }

    #[test]
    fn errors_carry_positions() {
        let n = names("x,y");
        assert!(matches!(parse_polynomial("x y", &n), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x*z", &n), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x^", &n), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("x + $", &n), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn ideal_file_sections() {
        let f = parse_ideal_file("ring: a,b,c,d,e\nideal[0]:\nb^2*c - a*(a-c)*(a-2*c)\nideal[1]:\nd^2*c-e^2*(e+1)\nblocks: 0,2,4\nweights: 4,4,3,2,1/2\n").unwrap();
        assert_eq!(f.ideals.len(), 2);
        assert_eq!(f.blocks, Some(vec![0, 2, 4]));
        assert_eq!(f.weights.as_ref().unwrap()[4], Rational::new(1.into(), 2.into()));
        let again = parse_ideal_file(&f.to_text()).unwrap();
        assert_eq!(again.to_text(), f.to_text());
        assert!(parse_ideal_file("ring: a,a\n").is_err());
    }
}
