//! Mix expressions as text.
//!
//! ```text
//! expr := term ('*' term)*
//! term := atom | '(' expr ')'
//! atom := '{' INT (',' INT)* '}' | ('T' | 'B' | 'C') INT
//! ```
//!
//! `T n`, `B n` and `C n` are the n-simplex, n-cube and n-cross-polytope.
//! `⋄` is accepted in place of `*`. Whitespace is ignored. Positions in
//! errors are character offsets into the input.

use crate::error::{Error, Result};
use crate::mixer::{cross_polytope, cube, simplex, MixExpression};
use crate::presentation::SchlafliSymbol;

pub fn parse_expression(text: &str) -> Result<MixExpression> {
    let tokens: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if let Some((pos, c)) = p.peek() {
        return Err(p.error_at(pos, format!("unexpected '{c}'")));
    }
    Ok(e)
}

struct Parser {
    tokens: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, char)> {
        self.tokens.get(self.at).copied()
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn error_at(&self, position: usize, message: String) -> Error {
        Error::Parse { position, message }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some((pos, c)) => Err(self.error_at(pos, format!("expected '{want}', found '{c}'"))),
            None => Err(self.error_at(self.end, format!("expected '{want}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<MixExpression> {
        let mut acc = self.term()?;
        while let Some((_, c)) = self.peek() {
            if c != '*' && c != '⋄' {
                break;
            }
            self.at += 1;
            let rhs = self.term()?;
            acc = MixExpression::mix(acc, rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MixExpression> {
        match self.peek() {
            Some((_, '(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => MixExpression::leaf(self.atom()?),
        }
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.position();
        let mut digits = String::new();
        while let Some((_, c)) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some((pos, c)) => self.error_at(pos, format!("expected an integer, found '{c}'")),
                None => self.error_at(self.end, "expected an integer, found end of input".into()),
            });
        }
        digits
            .parse()
            .map_err(|_| self.error_at(start, format!("integer {digits} out of range")))
    }

    fn atom(&mut self) -> Result<SchlafliSymbol> {
        let Some((pos, c)) = self.peek() else {
            return Err(self.error_at(self.end, "expected a polytope, found end of input".into()));
        };
        match c {
            '{' => {
                self.at += 1;
                let mut entries = vec![self.int()?];
                while let Some((_, ',')) = self.peek() {
                    self.at += 1;
                    entries.push(self.int()?);
                }
                self.expect('}')?;
                SchlafliSymbol::new(entries).map_err(|e| self.error_at(pos, e.to_string()))
            }
            'T' | 'B' | 'C' => {
                self.at += 1;
                let n = self.int()?;
                if n < 2 {
                    return Err(self.error_at(pos, format!("{c}{n}: rank must be at least 2")));
                }
                let n = n as usize;
                Ok(match c {
                    'T' => simplex(n),
                    'B' => cube(n),
                    _ => cross_polytope(n),
                })
            }
            other => Err(self.error_at(pos, format!("expected '{{', 'T', 'B', 'C' or '(', found '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braces_and_families() {
        let e = parse_expression("{3,3}*{3,4}").unwrap();
        assert_eq!(e.to_string(), "{3,3}*{3,4}");
        let e = parse_expression(" T5 * B5 ⋄ C5 ").unwrap();
        assert_eq!(e.to_string(), "{3,3,3,3}*{4,3,3,3}*{3,3,3,4}");
        assert_eq!(parse_expression("T2").unwrap().to_string(), "{3}");
    }

    #[test]
    fn parentheses_group() {
        let e = parse_expression("{3,5}*({5,3}*{4,3})").unwrap();
        assert_eq!(e.to_string(), "{3,5}*({5,3}*{4,3})");
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_expression(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("{3,3"), 4);
        assert_eq!(pos("{3,x}"), 3);
        assert_eq!(pos("{3,3} {3,4}"), 6);
        assert_eq!(pos("B1"), 0);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("{1,3}"), 0);
        assert_eq!(pos("{3,inf}"), 3);
    }

    #[test]
    fn rank_and_catalog_errors() {
        assert!(matches!(
            parse_expression("{3,3}*{3,3,4}"),
            Err(Error::RankMismatch(3, 4))
        ));
        assert!(matches!(parse_expression("{3,6}"), Err(Error::NotConvexSeed(_))));
        assert!(matches!(parse_expression("{6,3}*{3,3}"), Err(Error::NotConvexSeed(_))));
    }

    #[test]
    fn print_parse_round_trip() {
        for n in 3..=5 {
            for a in crate::mixer::catalog(n) {
                for b in crate::mixer::catalog(n) {
                    let e = MixExpression::mix(MixExpression::leaf(a.clone()).unwrap(), MixExpression::leaf(b).unwrap()).unwrap();
                    assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
                }
            }
        }
    }
}
