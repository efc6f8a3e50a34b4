//! Textual notation for schemes.
//!
//! Grammar (whitespace is ignored; `⊔` and `⟨⟩` are accepted as aliases for
//! `+` and `<>`):
//!
//! ```text
//! scheme  := [ rp2part "|" ] part (":" part)*
//! rp2part := "J" [ "+" forest ] | forest | "0"
//! part    := forest | "0"
//! forest  := term ("+" term)*
//! term    := INT                  -- INT ≥ 1 empty sibling ovals
//!          | "<" forest ">"       -- an oval containing a forest
//!          | "N(" INT "," (forest | "0") ")"   -- depth-INT nest around a forest
//! ```
//!
//! `N(h, 0)` is a plain chain of depth `h`; `N(0, S)` is `S` itself.
//!
//! Printing always emits ASCII (`+`, `<>`, `:`, `|`); the displayed rooting
//! of each sphere is the lexicographically smallest display string over all
//! rootings, which keeps output deterministic.  Equality of schemes is
//! decided by canonical codes, never by comparing display strings.

use crate::scheme::{OvalTree, RefinedScheme, Scheme, SphereArrangement, SurfaceKind};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("pseudo-line component is not allowed on a degree-2 surface")]
    PseudoLineOnDp2,
    #[error("at most one pseudo-line is allowed")]
    TooManyPseudoLines,
    #[error("scheme has {got} sphere parts but the surface has {expected} spheres")]
    TooManyParts { got: usize, expected: usize },
    #[error("degree-1 scheme notation requires an 'rp2part |' prefix")]
    MissingRp2Part,
    #[error("degree-2 scheme notation must not contain an 'rp2part |' prefix")]
    UnexpectedRp2Part,
}

/// Raw parse result before it is bound to a surface.
#[derive(Debug, Clone)]
pub struct ParsedScheme {
    /// `Some((has_pseudo_line, forest))` when an `rp2part |` prefix is present.
    pub rp2: Option<(bool, Vec<OvalTree>)>,
    pub parts: Vec<Vec<OvalTree>>,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        // Normalize aliases, drop whitespace.
        let chars = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '⊔' => '+',
                '⟨' => '<',
                '⟩' => '>',
                c => c,
            })
            .collect();
        Parser { chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }


    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{c}'"))
        }
    }

    fn integer(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| ParseError::Syntax { pos: start, msg: "integer overflow".into() })
    }

    /// forest | "0"  (returns the empty forest for "0")
    fn forest_or_zero(&mut self) -> Result<Vec<OvalTree>, ParseError> {
        if self.peek() == Some('0') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        self.forest()
    }

    fn forest(&mut self) -> Result<Vec<OvalTree>, ParseError> {
        let mut out = self.term()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            out.extend(self.term()?);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Vec<OvalTree>, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let m = self.integer()?;
                if m == 0 {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "oval count in a forest must be at least 1".into(),
                    });
                }
                Ok(vec![OvalTree::leaf(); m])
            }
            Some('<') => {
                self.pos += 1;
                let inner = self.forest()?;
                self.expect('>')?;
                Ok(vec![OvalTree::with_children(inner)])
            }
            Some('N') => {
                self.pos += 1;
                self.expect('(')?;
                let depth = self.integer()?;
                self.expect(',')?;
                let inner = self.forest_or_zero()?;
                self.expect(')')?;
                let mut forest = inner;
                for _ in 0..depth {
                    forest = vec![OvalTree::with_children(forest)];
                }
                Ok(forest)
            }
            _ => self.err("expected an integer, '<' or 'N('"),
        }
    }

    fn rp2part(&mut self) -> Result<(bool, Vec<OvalTree>), ParseError> {
        if self.peek() == Some('J') {
            self.pos += 1;
            if self.peek() == Some('+') {
                self.pos += 1;
                Ok((true, self.forest()?))
            } else {
                Ok((true, Vec::new()))
            }
        } else {
            Ok((false, self.forest_or_zero()?))
        }
    }

    fn scheme(&mut self) -> Result<ParsedScheme, ParseError> {
        let save = self.pos;
        // Decide whether an rp2part prefix is present by scanning for '|'.
        let has_bar = self.chars.contains(&'|');
        let rp2 = if has_bar {
            let r = self.rp2part()?;
            self.expect('|')?;
            Some(r)
        } else {
            self.pos = save;
            None
        };
        let mut parts = vec![self.forest_or_zero()?];
        while self.peek() == Some(':') {
            self.pos += 1;
            parts.push(self.forest_or_zero()?);
        }
        if self.pos != self.chars.len() {
            return self.err("unexpected trailing input");
        }
        Ok(ParsedScheme { rp2, parts })
    }
}

/// Parse a bare forest (no `:` or `|`); `"0"` and `""` give the empty forest.
pub fn parse_forest(text: &str) -> Result<Vec<OvalTree>, ParseError> {
    let mut p = Parser::new(text);
    if p.chars.is_empty() {
        return Ok(Vec::new());
    }
    let f = p.forest_or_zero()?;
    if p.pos != p.chars.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// Parse scheme text without binding it to a surface.
pub fn parse_raw(text: &str) -> Result<ParsedScheme, ParseError> {
    Parser::new(text).scheme()
}

/// Parse a degree-2 scheme on `⊔k S²`.  Missing parts are padded with empty
/// spheres; extra parts are an error.
pub fn parse_dp2(text: &str, k: usize) -> Result<Scheme, ParseError> {
    let raw = parse_raw(text)?;
    if raw.rp2.is_some() {
        let has_j = raw.rp2.as_ref().unwrap().0;
        return Err(if has_j { ParseError::PseudoLineOnDp2 } else { ParseError::UnexpectedRp2Part });
    }
    if raw.parts.len() > k {
        return Err(ParseError::TooManyParts { got: raw.parts.len(), expected: k });
    }
    let mut spheres: Vec<SphereArrangement> =
        raw.parts.iter().map(|f| SphereArrangement::from_forest(f)).collect();
    spheres.resize(k, SphereArrangement::empty());
    Ok(Scheme::new_dp2(spheres))
}

/// Parse a degree-1 scheme on `RP² ⊔ ⊔k S²`.
pub fn parse_dp1(text: &str, k: usize) -> Result<Scheme, ParseError> {
    let raw = parse_raw(text)?;
    let (has_j, rp2) = raw.rp2.ok_or(ParseError::MissingRp2Part)?;
    if raw.parts.len() > k {
        return Err(ParseError::TooManyParts { got: raw.parts.len(), expected: k });
    }
    let mut spheres: Vec<SphereArrangement> =
        raw.parts.iter().map(|f| SphereArrangement::from_forest(f)).collect();
    spheres.resize(k, SphereArrangement::empty());
    Ok(Scheme::new_dp1(u8::from(has_j), rp2, spheres))
}

/// Parse a refined degree-1 scheme on `RP² ⊔ ⊔4 S²`.  The four sphere parts
/// are read positionally: the first two land on the positive pair, the last
/// two on the negative pair.
pub fn parse_dp1_refined(text: &str) -> Result<RefinedScheme, ParseError> {
    let raw = parse_raw(text)?;
    let (has_j, rp2) = raw.rp2.ok_or(ParseError::MissingRp2Part)?;
    if raw.parts.len() > 4 {
        return Err(ParseError::TooManyParts { got: raw.parts.len(), expected: 4 });
    }
    let mut spheres: Vec<SphereArrangement> =
        raw.parts.iter().map(|f| SphereArrangement::from_forest(f)).collect();
    spheres.resize(4, SphereArrangement::empty());
    let mut it = spheres.into_iter();
    let pos = [it.next().unwrap(), it.next().unwrap()];
    let neg = [it.next().unwrap(), it.next().unwrap()];
    Ok(RefinedScheme::new(u8::from(has_j), rp2, pos, neg))
}

/// Display a rooted forest (canonical term order: integer run first, then
/// bracketed terms by size and text).
pub fn print_forest(forest: &[OvalTree]) -> String {
    if forest.is_empty() {
        return "0".to_string();
    }
    let singles = forest.iter().filter(|t| t.children.is_empty()).count();
    let mut terms: Vec<(usize, String)> = forest
        .iter()
        .filter(|t| !t.children.is_empty())
        .map(|t| (t.size(), format!("<{}>", print_forest(&t.children))))
        .collect();
    terms.sort();
    let mut parts = Vec::new();
    if singles > 0 {
        parts.push(singles.to_string());
    }
    parts.extend(terms.into_iter().map(|(_, s)| s));
    parts.join("+")
}

/// Display a sphere arrangement: lexicographically smallest display string
/// over all rootings (deterministic; favors flat presentations).
pub fn print_arrangement(a: &SphereArrangement) -> String {
    a.rootings()
        .iter()
        .map(|f| print_forest(f))
        .min()
        .unwrap_or_else(|| "0".to_string())
}

/// Display a scheme in the ASCII notation.
pub fn print_scheme(s: &Scheme) -> String {
    let parts: Vec<String> = s.spheres().iter().map(print_arrangement).collect();
    match s.kind() {
        SurfaceKind::DelPezzo2 => parts.join(":"),
        SurfaceKind::DelPezzo1 => {
            let rp2 = if s.pseudo_lines() > 0 {
                if s.rp2_forest().is_empty() {
                    "J".to_string()
                } else {
                    format!("J+{}", print_forest(s.rp2_forest()))
                }
            } else {
                print_forest(s.rp2_forest())
            };
            format!("{}|{}", rp2, parts.join(":"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_dp2() {
        let s = parse_dp2("1 ⊔ ⟨6⟩ : 0 : 0 : 0", 4).unwrap();
        assert_eq!(print_scheme(&s), "1+<6>:0:0:0");
        let t = parse_dp2("<6>+1", 4).unwrap();
        assert_eq!(s.code(), t.code());
    }

    #[test]
    fn nest_shorthand() {
        // N(h, 0) is the depth-h chain, N(0, S) = S, N(h, S) wraps S.
        assert_eq!(parse_forest("N(3,0)").unwrap(), parse_forest("<<1>>").unwrap());
        assert_eq!(parse_forest("N(0,2+<1>)").unwrap(), parse_forest("2+<1>").unwrap());
        assert_eq!(parse_forest("N(2,1+<1>)").unwrap(), parse_forest("<<1+<1>>>").unwrap());
    }

    #[test]
    fn parse_dp1_variants() {
        let s = parse_dp1("J+1+<1>|2:0:0:0", 4).unwrap();
        assert_eq!(s.pseudo_lines(), 1);
        assert_eq!(s.components(), 6);
        assert_eq!(print_scheme(&s), "J+1+<1>|2:0:0:0");
        let t = parse_dp1("0|0:0:0:0", 4).unwrap();
        assert_eq!(t.components(), 0);
        assert!(parse_dp1("1:0", 2).is_err());
        assert!(parse_dp2("J|1", 1).is_err());
    }

    #[test]
    fn error_positions() {
        match parse_dp2("1+<2", 1) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_dp2("1:1", 1), Err(ParseError::TooManyParts { .. })));
    }

    #[test]
    fn round_trip_padding() {
        let s = parse_dp2("3+<1>+<1>", 4).unwrap();
        let printed = print_scheme(&s);
        // Display picks the lexicographically smallest rooting; identity is
        // still decided by codes.
        assert_eq!(parse_dp2(&printed, 4).unwrap().code(), s.code());
    }
}
