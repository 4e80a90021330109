//! Text forms of groups, subsets and sequences.
//!
//! ```text
//! Group    := Cyc ('x' Cyc)*          Cyc  := 'C' INT ('^' INT)?
//! Subset   := Elem (';' Elem)*        Elem := '(' INT (',' INT)* ')'
//! Sequence := '1' | Term ('*' Term)*  Term := Elem ('^' INT)?
//! ```
//!
//! Whitespace between tokens is ignored.

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::sequence::{SequenceVec, SupportSet};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        }
    }

    fn error(&mut self, expected: &str) -> Error {
        let found = self.found();
        Error::Parse {
            position: self.pos,
            expected: expected.into(),
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("{c:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let mut len = rest.starts_with('-') as usize;
        len += rest[len..].bytes().take_while(u8::is_ascii_digit).count();
        let digits = &rest[..len];
        if digits.is_empty() || digits == "-" {
            return Err(self.error("an integer"));
        }
        let v = digits.parse::<i64>().map_err(|_| Error::Parse {
            position: start,
            expected: "an integer that fits in 64 bits".into(),
            found: digits.into(),
        })?;
        self.pos += len;
        Ok(v)
    }

    fn positive(&mut self, what: &str) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).ok().filter(|&v| v >= 1).ok_or_else(|| Error::Parse {
            position: start,
            expected: what.into(),
            found: v.to_string(),
        })
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("end of input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_group(text: &str) -> Result<FiniteAbelianGroup> {
    let mut c = Cursor::new(text);
    let mut orders = Vec::new();
    loop {
        if !c.eat('C') {
            return Err(c.error("'C'"));
        }
        let n = c.positive("a cyclic order ≥ 1")?;
        let k = if c.eat('^') { c.positive("a positive multiplicity")? } else { 1 };
        if n >= 2 {
            orders.extend(std::iter::repeat_n(n, k as usize));
        }
        if !c.eat('x') {
            break;
        }
    }
    c.end()?;
    FiniteAbelianGroup::new(orders)
}

fn element(c: &mut Cursor, group: &FiniteAbelianGroup) -> Result<GroupElement> {
    c.expect('(')?;
    let mut coords = Vec::new();
    if group.components() > 0 || c.peek() != Some(')') {
        coords.push(c.int()?);
        while c.eat(',') {
            coords.push(c.int()?);
        }
    }
    c.expect(')')?;
    group.element_reduced(&coords)
}

pub fn parse_element(group: &FiniteAbelianGroup, text: &str) -> Result<GroupElement> {
    let mut c = Cursor::new(text);
    let g = element(&mut c, group)?;
    c.end()?;
    Ok(g)
}

pub fn parse_subset(group: &FiniteAbelianGroup, text: &str) -> Result<SupportSet> {
    let mut c = Cursor::new(text);
    let mut elems = vec![element(&mut c, group)?];
    while c.eat(';') {
        elems.push(element(&mut c, group)?);
    }
    c.end()?;
    SupportSet::new(group.clone(), elems)
}

/// Group and optional subset, as given on the command line.
pub fn parse_specs(group_text: &str, subset_text: Option<&str>) -> Result<(FiniteAbelianGroup, Option<SupportSet>)> {
    let group = parse_group(group_text)?;
    let subset = subset_text.map(|s| parse_subset(&group, s)).transpose()?;
    Ok((group, subset))
}

pub fn parse_sequence(support: &SupportSet, text: &str) -> Result<SequenceVec> {
    let mut c = Cursor::new(text);
    let mut exps = vec![0u32; support.len()];
    if c.peek() == Some('1') {
        c.expect('1')?;
        c.end()?;
        return support.sequence(exps);
    }
    loop {
        let start = {
            c.skip_ws();
            c.pos
        };
        let g = element(&mut c, support.group())?;
        let p = support.position(&g).ok_or_else(|| Error::Parse {
            position: start,
            expected: format!("an element of {support}"),
            found: g.to_string(),
        })?;
        let k = if c.eat('^') { c.positive("a positive exponent")? } else { 1 };
        exps[p] = exps[p].checked_add(k).ok_or_else(|| c.error("a smaller exponent"))?;
        if !c.eat('*') {
            break;
        }
    }
    c.end()?;
    support.sequence(exps)
}
