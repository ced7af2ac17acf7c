//! Words, finitely presented groups, and the presentations attached to a
//! Schläfli symbol.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single letter of a word: a 0-based generator index with an exponent
/// sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A finite word over signed generators. Words are stored unreduced; the
/// empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// `g`, as a one-letter word.
    pub fn generator(g: usize) -> Self {
        Self {
            letters: vec![Letter::new(g)],
        }
    }

    /// Product `g_first g_{first+1} ... g_last` of consecutive generators.
    pub fn run(first: usize, last: usize) -> Self {
        Self {
            letters: (first..=last).map(Letter::new).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * e);
        for _ in 0..e {
            letters.extend_from_slice(&self.letters);
        }
        Self { letters }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Cancels adjacent inverse pairs.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn check(&self, generator_count: usize) -> Result<()> {
        match self.max_generator() {
            Some(g) if g >= generator_count => Err(Error::InvalidWord {
                index: g,
                generator_count,
            }),
            _ => Ok(()),
        }
    }

    /// Renders the word with 1-based generator names, e.g. `s1 s2^-1`.
    pub fn display_with(&self, name: &str) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{name}{}^-1", l.generator + 1)
                } else {
                    format!("{name}{}", l.generator + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

/// A finitely presented group: generator count plus relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::NoGenerators);
        }
        for r in &relators {
            r.check(generator_count)?;
        }
        Ok(Self {
            generator_count,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// A finite Schläfli symbol `{p_1, ..., p_{n-1}}`; rank is `entries + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct SchlafliSymbol {
    entries: Vec<u64>,
}

impl SchlafliSymbol {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySymbol);
        }
        if let Some(&p) = entries.iter().find(|&&p| p < 2) {
            return Err(Error::BadSchlafliEntry(p));
        }
        Ok(Self { entries })
    }

    /// Symbol with possibly no entries; used for sections of rank < 2.
    pub(crate) fn unchecked(entries: Vec<u64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len() + 1
    }

    pub fn reversed(&self) -> Self {
        Self {
            entries: self.entries.iter().rev().copied().collect(),
        }
    }
}

impl TryFrom<Vec<u64>> for SchlafliSymbol {
    type Error = Error;

    fn try_from(entries: Vec<u64>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<SchlafliSymbol> for Vec<u64> {
    fn from(s: SchlafliSymbol) -> Self {
        s.entries
    }
}

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for SchlafliSymbol {
    type Err = Error;

    /// Parses `{p,q,...}`. Infinite entries are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("expected '{{...}}', found {s:?}"),
            })?;
        let mut entries = Vec::new();
        for part in inner.split(',') {
            let p = part.parse::<u64>().map_err(|_| Error::Parse {
                position: 0,
                message: format!("bad Schläfli entry {part:?}"),
            })?;
            entries.push(p);
        }
        Self::new(entries)
    }
}

/// Rotation-group presentation on σ_1..σ_{n-1}: the power relators σ_i^{p_i}
/// in order of i, followed by (σ_i ... σ_j)^2 for i < j in lexicographic
/// order.
pub fn rotation_presentation(symbol: &SchlafliSymbol) -> Presentation {
    let m = symbol.entries().len();
    let mut relators = Vec::with_capacity(m + m * (m - 1) / 2);
    for (i, &p) in symbol.entries().iter().enumerate() {
        relators.push(Word::generator(i).pow(p as usize));
    }
    for i in 0..m {
        for j in i + 1..m {
            relators.push(Word::run(i, j).pow(2));
        }
    }
    Presentation {
        generator_count: m,
        relators,
    }
}

/// Coxeter presentation on ρ_0..ρ_{n-1}: ρ_i^2, then (ρ_{i-1}ρ_i)^{p_i},
/// then (ρ_i ρ_j)^2 for j ≥ i + 2.
pub fn coxeter_presentation(symbol: &SchlafliSymbol) -> Presentation {
    let n = symbol.rank();
    let mut relators = Vec::new();
    for i in 0..n {
        relators.push(Word::generator(i).pow(2));
    }
    for (i, &p) in symbol.entries().iter().enumerate() {
        relators.push(Word::run(i, i + 1).pow(p as usize));
    }
    for i in 0..n {
        for j in i + 2..n {
            let w = Word::from_letters(vec![Letter::new(i), Letter::new(j)]);
            relators.push(w.pow(2));
        }
    }
    Presentation {
        generator_count: n,
        relators,
    }
}

/// Presentation of the comix: `a`'s relators followed by `b`'s, on shared
/// generators. Duplicate relators are kept.
pub fn comix_presentation(a: &Presentation, b: &Presentation) -> Result<Presentation> {
    if a.generator_count != b.generator_count {
        return Err(Error::GeneratorCountMismatch(
            a.generator_count,
            b.generator_count,
        ));
    }
    let mut relators = a.relators.clone();
    relators.extend(b.relators.iter().cloned());
    Ok(Presentation {
        generator_count: a.generator_count,
        relators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(e: &[u64]) -> SchlafliSymbol {
        SchlafliSymbol::new(e.to_vec()).unwrap()
    }

    #[test]
    fn rotation_tetrahedron() {
        let p = rotation_presentation(&sym(&[3, 3]));
        assert_eq!(p.generator_count(), 2);
        let expected = vec![
            Word::generator(0).pow(3),
            Word::generator(1).pow(3),
            Word::run(0, 1).pow(2),
        ];
        assert_eq!(p.relators(), expected.as_slice());
    }

    #[test]
    fn rotation_polygon_has_no_square_relators() {
        let p = rotation_presentation(&sym(&[7]));
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators(), &[Word::generator(0).pow(7)]);
    }

    #[test]
    fn rotation_tesseract_relator_order() {
        let p = rotation_presentation(&sym(&[4, 3, 3]));
        let expected = vec![
            Word::generator(0).pow(4),
            Word::generator(1).pow(3),
            Word::generator(2).pow(3),
            Word::run(0, 1).pow(2),
            Word::run(0, 2).pow(2),
            Word::run(1, 2).pow(2),
        ];
        assert_eq!(p.relators(), expected.as_slice());
    }

    #[test]
    fn rotation_relator_count() {
        for m in 1..8 {
            let p = rotation_presentation(&sym(&vec![3; m]));
            assert_eq!(p.relators().len(), m + m * (m - 1) / 2);
        }
    }

    #[test]
    fn coxeter_tetrahedron() {
        let p = coxeter_presentation(&sym(&[3, 3]));
        assert_eq!(p.generator_count(), 3);
        let r = |i: usize, j: usize, e: usize| {
            Word::from_letters(vec![Letter::new(i), Letter::new(j)]).pow(e)
        };
        let expected = vec![
            Word::generator(0).pow(2),
            Word::generator(1).pow(2),
            Word::generator(2).pow(2),
            r(0, 1, 3),
            r(1, 2, 3),
            r(0, 2, 2),
        ];
        assert_eq!(p.relators(), expected.as_slice());
    }

    #[test]
    fn comix_keeps_duplicates_and_checks_counts() {
        let a = rotation_presentation(&sym(&[3, 3]));
        let c = comix_presentation(&a, &a).unwrap();
        assert_eq!(c.relators().len(), 2 * a.relators().len());
        let b = rotation_presentation(&sym(&[3, 3, 3]));
        assert!(matches!(
            comix_presentation(&a, &b),
            Err(Error::GeneratorCountMismatch(2, 3))
        ));
    }

    #[test]
    fn words_validate_and_reduce() {
        let w = Word::from_letters(vec![Letter::new(0), Letter::inv(1), Letter::new(1), Letter::inv(0)]);
        assert!(w.freely_reduced().is_empty());
        assert_eq!(w.inverse().inverse(), w);
        assert!(Presentation::new(1, vec![w.clone()]).is_err());
        assert!(Presentation::new(2, vec![w]).is_ok());
        assert!(Presentation::new(0, vec![]).is_err());
    }

    #[test]
    fn symbol_parsing() {
        assert_eq!("{3, 4,3}".parse::<SchlafliSymbol>().unwrap(), sym(&[3, 4, 3]));
        assert!("{3,inf}".parse::<SchlafliSymbol>().is_err());
        assert!("{1}".parse::<SchlafliSymbol>().is_err());
        assert_eq!(sym(&[3, 4, 3]).to_string(), "{3,4,3}");
        assert_eq!(sym(&[3, 3, 4]).reversed(), sym(&[4, 3, 3]));
    }
}
