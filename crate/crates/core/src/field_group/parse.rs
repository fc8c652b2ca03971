//! Text grammar for group presentations:
//! `cyclic:6`, `vec:3^4`, `prod(cyclic:2,cyclic:3)`, `table:@file.json`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use super::group::{FiniteGroup, OpTable, Presentation};
use crate::error::{Error, Result};

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::Cyclic(m) => write!(f, "cyclic:{m}"),
            Presentation::Vector { p, n } => write!(f, "vec:{p}^{n}"),
            Presentation::Product(fs) => {
                write!(f, "prod(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Presentation::Table(t) => match t.source() {
                Some(path) => write!(f, "table:@{path}"),
                None => write!(f, "table:<inline>"),
            },
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a number"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.err("number out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn presentation(&mut self) -> Result<Presentation> {
        if self.eat("cyclic:") {
            Ok(Presentation::Cyclic(self.number()?))
        } else if self.eat("vec:") {
            let p = self.number()?;
            if !self.eat("^") {
                return Err(self.err("expected '^'"));
            }
            let n = self.number()?;
            Ok(Presentation::Vector {
                p: u32::try_from(p).map_err(|_| self.err("prime too large"))?,
                n: u32::try_from(n).map_err(|_| self.err("dimension too large"))?,
            })
        } else if self.eat("prod(") {
            let mut factors = vec![self.presentation()?];
            while self.eat(",") {
                factors.push(self.presentation()?);
            }
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            Ok(Presentation::Product(factors))
        } else if self.eat("table:@") {
            // The path runs to the next ',' or ')' so tables can sit inside products.
            let len = self
                .rest()
                .find([',', ')'])
                .unwrap_or(self.rest().len());
            let path = &self.rest()[..len];
            if path.is_empty() {
                return Err(self.err("expected a file path"));
            }
            self.pos += len;
            Ok(Presentation::Table(Arc::new(OpTable::load(Path::new(path))?)))
        } else {
            Err(self.err("expected cyclic:, vec:, prod( or table:@"))
        }
    }
}

impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            src: &compact,
            pos: 0,
        };
        let pres = parser.presentation()?;
        if parser.pos != compact.len() {
            return Err(parser.err("trailing input"));
        }
        FiniteGroup::new(pres)
    }
}
