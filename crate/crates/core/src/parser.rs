//! Text form of expressions.
//!
//! ```text
//! expr     := "0" | ["+"|"-"] prodterm (("+"|"-") prodterm)*
//! prodterm := (scalar "*")* factor
//! scalar   := rational ["i"] | "i" | symbol ["^" digits]
//! factor   := atom | "[" factor factor "]" | "{" factor "," factor "," factor "}" ("+"|"-")
//! atom     := ["d_{" idx ("," idx)* "}"] name ["^{" idx ("," idx)* "}"]
//!             ["_{" idx ("," idx)* "}"] ["(" point ")"] ["*"]
//! ```
//!
//! Every product is bracketed explicitly; `a b c` is an error. A trailing `*`
//! on an atom is conjugation unless it is followed by another factor, in which
//! case the preceding name was a scalar symbol.

use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::expr::{canonicalize, real, Coeff, Expr, Monomial, Scalar};
use crate::scalar::parse_rational;
use crate::term::{is_label, is_name, Atom, Generator, Sign, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnbalancedBracket,
    EmptyProduct,
    BadIndex,
    BadScalar,
}

impl ParseErrorKind {
    fn template(self) -> &'static str {
        match self {
            ParseErrorKind::UnexpectedToken => "unexpected token",
            ParseErrorKind::UnbalancedBracket => "unbalanced bracket",
            ParseErrorKind::EmptyProduct => "product needs exactly two factors",
            ParseErrorKind::BadIndex => "invalid index label",
            ParseErrorKind::BadScalar => "invalid scalar",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

pub fn parse(input: &str) -> PResult<Expr> {
    let mut p = Parser::new(input);
    let e = p.expr()?;
    Ok(e)
}

/// Parses a single factor with no scalar prefix.
pub fn parse_term(input: &str) -> PResult<Term> {
    let mut p = Parser::new(input);
    p.check_ascii()?;
    p.skip_ws();
    let t = p.factor()?;
    p.skip_ws();
    p.expect_end()?;
    Ok(t)
}

/// Parses the scalar rendering used in JSON (`3`, `-1/2i`, `(1-2i)*g^2`).
pub fn parse_scalar(input: &str) -> PResult<Scalar> {
    let bad = |msg: &str| ParseError {
        span: SourceSpan {
            start: 0,
            end: input.len(),
        },
        kind: ParseErrorKind::BadScalar,
        message: format!("{}: {msg}", ParseErrorKind::BadScalar.template()),
    };
    let (num, mono) = match input.find(")*").map(|i| i + 1).or_else(|| {
        if input.starts_with('(') {
            None
        } else {
            input.find('*')
        }
    }) {
        Some(i) => (&input[..i], Some(&input[i + 1..])),
        None => (input, None),
    };
    let coeff = if let Some(inner) = num.strip_prefix('(').and_then(|s| s.strip_suffix("i)")) {
        let split = inner[1..]
            .rfind(['+', '-'])
            .map(|i| i + 1)
            .ok_or_else(|| bad("missing imaginary part"))?;
        let re = parse_rational(&inner[..split]).ok_or_else(|| bad("real part"))?;
        let im_text = inner[split..].strip_prefix('+').unwrap_or(&inner[split..]);
        let im = parse_rational(im_text).ok_or_else(|| bad("imaginary part"))?;
        Complex::new(re, im)
    } else if let Some(im) = num.strip_suffix('i') {
        Complex::new(
            BigRational::zero(),
            parse_rational(im).ok_or_else(|| bad("imaginary part"))?,
        )
    } else {
        real(parse_rational(num).ok_or_else(|| bad("rational"))?)
    };
    let mut monomial = Monomial::one();
    if let Some(mono) = mono {
        for item in mono.split('*') {
            let (name, exp) = match item.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("exponent"))?),
                None => (item, 1),
            };
            if !is_name(name) || name == "i" {
                return Err(bad("symbol"));
            }
            monomial = monomial.mul(&Monomial::power(name, exp));
        }
    }
    Ok(Scalar::new(coeff, monomial))
}

/// Rebuilds an expression from its JSON rendering.
pub fn expr_from_json(value: &serde_json::Value) -> PResult<Expr> {
    let bad = |msg: &str| ParseError {
        span: SourceSpan { start: 0, end: 0 },
        kind: ParseErrorKind::UnexpectedToken,
        message: format!("{}: {msg}", ParseErrorKind::UnexpectedToken.template()),
    };
    let terms = value
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| bad("missing terms array"))?;
    let mut items = Vec::with_capacity(terms.len());
    for entry in terms {
        let coeff = entry
            .get("coeff")
            .and_then(|c| c.as_str())
            .ok_or_else(|| bad("missing coeff"))?;
        let tree = entry
            .get("tree")
            .and_then(|c| c.as_str())
            .ok_or_else(|| bad("missing tree"))?;
        items.push((parse_scalar(coeff)?, parse_term(tree)?));
    }
    Ok(canonicalize(items))
}

/// Canonical text; `parse(&print(e)) == Ok(e)`.
pub fn print(e: &Expr) -> String {
    e.to_string()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (s, t) in self.iter() {
            let parts = [(&s.coeff.re, false), (&s.coeff.im, true)];
            for (value, imaginary) in parts {
                if value.is_zero() {
                    continue;
                }
                let negative = value.is_negative();
                match (first, negative) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let mag = value.abs();
                let mut items: Vec<String> = Vec::new();
                if imaginary {
                    items.push(if mag.is_one() {
                        "i".into()
                    } else {
                        format!("{mag}i")
                    });
                } else if !mag.is_one() {
                    items.push(mag.to_string());
                }
                if !s.monomial.is_one() {
                    items.push(s.monomial.to_string());
                }
                for item in items {
                    write!(f, "{item}*")?;
                }
                f.write_str(t.text())?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(
        &self,
        kind: ParseErrorKind,
        start: usize,
        end: usize,
        detail: impl fmt::Display,
    ) -> ParseError {
        let end = end.min(self.bytes.len()).max(start.min(self.bytes.len()));
        let start = start.min(end);
        ParseError {
            span: SourceSpan { start, end },
            kind,
            message: format!("{}: {detail}", kind.template()),
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            None => self.err(
                ParseErrorKind::UnexpectedToken,
                self.pos,
                self.pos,
                format!("end of input, expected {expected}"),
            ),
            Some(b) => {
                let ch = self.src[self.pos..].chars().next().unwrap_or(b as char);
                self.err(
                    ParseErrorKind::UnexpectedToken,
                    self.pos,
                    self.pos + ch.len_utf8(),
                    format!("{ch:?}, expected {expected}"),
                )
            }
        }
    }

    fn check_ascii(&self) -> PResult<()> {
        if let Some(i) = self.bytes.iter().position(|b| !b.is_ascii()) {
            let ch = self.src[i..].chars().next().unwrap();
            return Err(self.err(
                ParseErrorKind::UnexpectedToken,
                i,
                i + ch.len_utf8(),
                format!("non-ASCII character {ch:?}"),
            ));
        }
        Ok(())
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.bytes.get(self.pos + offset).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect_end(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(b']') | Some(b'}') => Err(self.err(
                ParseErrorKind::UnbalancedBracket,
                self.pos,
                self.pos + 1,
                "closing bracket without opening",
            )),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.check_ascii()?;
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.unexpected("an expression"));
        }
        let mut items = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            self.skip_ws();
            if let Some((s, t)) = self.prodterm()? {
                let s = if negate {
                    Scalar::new(-s.coeff, s.monomial)
                } else {
                    s
                };
                items.push((s, t));
            }
            self.skip_ws();
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        self.expect_end()?;
        Ok(canonicalize(items))
    }

    fn scan_name(&self, from: usize) -> usize {
        let mut end = from;
        if matches!(self.bytes.get(end), Some(b) if b.is_ascii_alphabetic()) {
            end += 1;
            while matches!(self.bytes.get(end), Some(b) if b.is_ascii_alphanumeric()) {
                end += 1;
            }
        }
        end
    }

    fn skip_ws_from(&self, mut at: usize) -> usize {
        while matches!(self.bytes.get(at), Some(b) if b.is_ascii_whitespace()) {
            at += 1;
        }
        at
    }

    fn starts_factor_or_scalar(&self, at: usize) -> bool {
        matches!(self.bytes.get(at), Some(b) if b.is_ascii_alphanumeric() || *b == b'[' || *b == b'{')
    }

    /// Returns `None` for a literal zero term.
    fn prodterm(&mut self) -> PResult<Option<(Scalar, Term)>> {
        let mut scalar = Scalar::one();
        loop {
            let start = self.pos;
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let item = self.rational_item()?;
                    self.skip_ws();
                    if self.peek() != Some(b'*') {
                        if item.is_zero()
                            && matches!(self.peek(), None | Some(b'+') | Some(b'-'))
                            && scalar == Scalar::one()
                        {
                            return Ok(None);
                        }
                        return Err(self.err(
                            ParseErrorKind::BadScalar,
                            start,
                            self.pos,
                            "scalar must be followed by '*' and a factor",
                        ));
                    }
                    self.pos += 1;
                    self.skip_ws();
                    scalar = scalar.mul(&item);
                }
                Some(b) if b.is_ascii_alphabetic() => {
                    let name_end = self.scan_name(start);
                    let mut after = name_end;
                    let mut exp = 1u32;
                    let mut powered = false;
                    if self.bytes.get(after) == Some(&b'^')
                        && matches!(self.bytes.get(after + 1), Some(d) if d.is_ascii_digit())
                    {
                        let digits_start = after + 1;
                        after = digits_start;
                        while matches!(self.bytes.get(after), Some(d) if d.is_ascii_digit()) {
                            after += 1;
                        }
                        exp = self.src[digits_start..after].parse().map_err(|_| {
                            self.err(
                                ParseErrorKind::BadScalar,
                                start,
                                after,
                                "exponent out of range",
                            )
                        })?;
                        powered = true;
                    }
                    let star = self.skip_ws_from(after);
                    let is_scalar = self.bytes.get(star) == Some(&b'*')
                        && self.starts_factor_or_scalar(self.skip_ws_from(star + 1));
                    if !is_scalar {
                        if powered {
                            return Err(self.err(
                                ParseErrorKind::BadScalar,
                                start,
                                after,
                                "scalar power must be followed by '*' and a factor",
                            ));
                        }
                        break;
                    }
                    let name = &self.src[start..name_end];
                    let item = if name == "i" {
                        if powered {
                            return Err(self.err(
                                ParseErrorKind::BadScalar,
                                start,
                                after,
                                "powers of i are not accepted",
                            ));
                        }
                        Scalar::imaginary(BigRational::one())
                    } else {
                        Scalar::new(Coeff::one(), Monomial::power(name, exp))
                    };
                    scalar = scalar.mul(&item);
                    self.pos = self.skip_ws_from(star + 1);
                }
                _ => break,
            }
        }
        let t = self.factor()?;
        Ok(Some((scalar, t)))
    }

    fn rational_item(&mut self) -> PResult<Scalar> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric())
                && self.peek() != Some(b'i')
            {
                self.pos += 1;
            }
        }
        let text = &self.src[start..self.pos];
        let value = parse_rational(text).ok_or_else(|| {
            self.err(
                ParseErrorKind::BadScalar,
                start,
                self.pos,
                format!("{text:?}"),
            )
        })?;
        if self.peek() == Some(b'i')
            && !matches!(self.peek_at(1), Some(b) if b.is_ascii_alphanumeric())
        {
            self.pos += 1;
            return Ok(Scalar::imaginary(value));
        }
        if matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
            return Err(self.err(
                ParseErrorKind::BadScalar,
                start,
                self.pos + 1,
                "letters directly after a number",
            ));
        }
        Ok(Scalar::rational(value))
    }

    fn factor(&mut self) -> PResult<Term> {
        let start = self.pos;
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b']') {
                    return Err(self.err(
                        ParseErrorKind::EmptyProduct,
                        start,
                        self.pos + 1,
                        "found []",
                    ));
                }
                let left = self.nested_factor(start)?;
                self.skip_ws();
                if self.peek() == Some(b']') {
                    return Err(self.err(
                        ParseErrorKind::EmptyProduct,
                        start,
                        self.pos + 1,
                        "only one factor",
                    ));
                }
                let right = self.nested_factor(start)?;
                self.skip_ws();
                match self.peek() {
                    Some(b']') => {
                        self.pos += 1;
                        Ok(Term::product(&left, &right))
                    }
                    None => Err(self.err(
                        ParseErrorKind::UnbalancedBracket,
                        start,
                        self.pos,
                        "missing ']'",
                    )),
                    Some(_) => Err(self.unexpected("']' (products are binary; add brackets)")),
                }
            }
            Some(b'{') => {
                self.pos += 1;
                let mut slots = Vec::with_capacity(3);
                for k in 0..3 {
                    self.skip_ws();
                    slots.push(self.nested_factor(start)?);
                    self.skip_ws();
                    let want = if k < 2 { b',' } else { b'}' };
                    match self.peek() {
                        Some(b) if b == want => self.pos += 1,
                        None => {
                            return Err(self.err(
                                ParseErrorKind::UnbalancedBracket,
                                start,
                                self.pos,
                                "missing '}'",
                            ))
                        }
                        Some(_) => return Err(self.unexpected(if k < 2 { "','" } else { "'}'" })),
                    }
                }
                let sign = match self.peek() {
                    Some(b'-') => Sign::Minus,
                    Some(b'+') => Sign::Plus,
                    _ => return Err(self.unexpected("associator sign '+' or '-' right after '}'")),
                };
                self.pos += 1;
                Ok(Term::assoc(sign, &slots[0], &slots[1], &slots[2]))
            }
            Some(b']') | Some(b'}') => Err(self.err(
                ParseErrorKind::UnbalancedBracket,
                start,
                start + 1,
                "closing bracket without opening",
            )),
            Some(b) if b.is_ascii_alphabetic() => self.atom().map(Term::leaf),
            Some(b) if b.is_ascii_digit() => Err(self.err(
                ParseErrorKind::BadScalar,
                start,
                start + 1,
                "scalars are only allowed before a top-level factor",
            )),
            _ => Err(self.unexpected("a factor")),
        }
    }

    fn nested_factor(&mut self, open: usize) -> PResult<Term> {
        if self.peek().is_none() {
            return Err(self.err(
                ParseErrorKind::UnbalancedBracket,
                open,
                self.pos,
                "input ends inside brackets",
            ));
        }
        self.factor()
    }

    fn index_list(&mut self) -> PResult<Vec<String>> {
        // positioned just after '{'
        let open = self.pos;
        let mut labels = Vec::new();
        loop {
            let start = self.pos;
            while matches!(self.peek(), Some(b) if b != b',' && b != b'}' && !b.is_ascii_whitespace() && b != b'[' && b != b']')
            {
                self.pos += 1;
            }
            let label = &self.src[start..self.pos];
            if !is_label(label) {
                let end = self.pos.max(start + 1);
                return Err(self.err(ParseErrorKind::BadIndex, start, end, format!("{label:?}")));
            }
            labels.push(label.to_string());
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(labels);
                }
                None => {
                    return Err(self.err(
                        ParseErrorKind::UnbalancedBracket,
                        open - 1,
                        self.pos,
                        "missing '}' in index list",
                    ))
                }
                Some(_) => {
                    return Err(self.err(
                        ParseErrorKind::BadIndex,
                        self.pos,
                        self.pos + 1,
                        "unexpected character in index list",
                    ))
                }
            }
        }
    }

    fn atom(&mut self) -> PResult<Atom> {
        let start = self.pos;
        let mut end = self.scan_name(start);
        let mut derivs = Vec::new();
        if &self.src[start..end] == "d"
            && self.bytes.get(end) == Some(&b'_')
            && self.bytes.get(end + 1) == Some(&b'{')
        {
            let save = self.pos;
            self.pos = end + 2;
            let labels = self.index_list()?;
            if matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
                derivs = labels;
                end = self.scan_name(self.pos);
            } else {
                self.pos = save;
            }
        }
        let name_start = if derivs.is_empty() { start } else { self.pos };
        let symbol = &self.src[name_start..end];
        let mut g = Generator::try_new(symbol).map_err(|_| {
            self.err(
                ParseErrorKind::UnexpectedToken,
                name_start,
                end.max(name_start + 1),
                "bad generator name",
            )
        })?;
        self.pos = end;
        if self.peek() == Some(b'^') && self.peek_at(1) == Some(b'{') {
            self.pos += 2;
            g.upper = self.index_list()?;
        }
        if self.peek() == Some(b'_') && self.peek_at(1) == Some(b'{') {
            self.pos += 2;
            g.lower = self.index_list()?;
        }
        if self.peek() == Some(b'(') {
            let open = self.pos;
            self.pos += 1;
            let ls = self.pos;
            while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric()) {
                self.pos += 1;
            }
            let label = self.src[ls..self.pos].to_string();
            match self.peek() {
                Some(b')') if !label.is_empty() => self.pos += 1,
                None => {
                    return Err(self.err(
                        ParseErrorKind::UnbalancedBracket,
                        open,
                        self.pos,
                        "missing ')'",
                    ))
                }
                _ => {
                    return Err(self.err(
                        ParseErrorKind::BadIndex,
                        ls,
                        self.pos + 1,
                        "point label must be alphanumeric",
                    ))
                }
            }
            g.point = Some(label);
        }
        if self.peek() == Some(b'*') {
            self.pos += 1;
            g.conjugated = true;
        }
        if matches!(self.peek(), Some(b'^') | Some(b'_')) {
            return Err(self.err(
                ParseErrorKind::BadIndex,
                self.pos,
                self.pos + 1,
                "index lists must be written ^{..} then _{..}",
            ));
        }
        Ok(Atom::with_derivs(g, derivs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn kind(input: &str) -> ParseErrorKind {
        let err = parse(input).unwrap_err();
        assert!(
            err.span.start <= err.span.end && err.span.end <= input.len(),
            "{err:?}"
        );
        err.kind
    }

    #[test]
    fn binary_product() {
        let e = parse("[phi(x1) phi(x2)]").unwrap();
        let t = e.terms().next().unwrap();
        let phi = |p: &str| Term::leaf(Generator::new("phi").at(p));
        assert_eq!(*t, Term::product(&phi("x1"), &phi("x2")));
    }

    #[test]
    fn two_bracketings() {
        let e = parse("[[a b] c] - [a [b c]]").unwrap();
        let coeffs: Vec<(String, Coeff)> = e
            .iter()
            .map(|(s, t)| (t.text().to_string(), s.coeff))
            .collect();
        assert_eq!(
            coeffs,
            vec![
                ("[[a b] c]".to_string(), real(int(1))),
                ("[a [b c]]".to_string(), real(int(-1))),
            ]
        );
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kind("[a [b"), ParseErrorKind::UnbalancedBracket);
        assert_eq!(kind("a]"), ParseErrorKind::UnbalancedBracket);
        assert_eq!(kind("a b c"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("[a b c]"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("[a]"), ParseErrorKind::EmptyProduct);
        assert_eq!(kind("[]"), ParseErrorKind::EmptyProduct);
        assert_eq!(kind("phi^{}"), ParseErrorKind::BadIndex);
        assert_eq!(kind("phi_{a,}"), ParseErrorKind::BadIndex);
        assert_eq!(kind("1/0*a"), ParseErrorKind::BadScalar);
        assert_eq!(kind("3"), ParseErrorKind::BadScalar);
        assert_eq!(kind("φ"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("phi_{μ}"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind(""), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("{a, b, c}"), ParseErrorKind::UnexpectedToken);
        assert_eq!(kind("{a, b"), ParseErrorKind::UnbalancedBracket);
    }

    #[test]
    fn scalars_and_conjugation() {
        let e = parse("2*g^2*psi* - 1/2i*[a b*] + i*c").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(print(&e), "-1/2i*[a b*] + i*c + 2*g^2*psi*");
        let z = parse("0").unwrap();
        assert!(z.is_zero());
        assert_eq!(print(&z), "0");
    }

    #[test]
    fn derivative_prefix() {
        let e = parse("d_{1,0}A^{a}_{0}(x) + d_{0}(x)").unwrap();
        let texts: Vec<&str> = e.terms().map(Term::text).collect();
        assert_eq!(texts, vec!["d_{0,1}A^{a}_{0}(x)", "d_{0}(x)"]);
        let a = e.terms().next().unwrap().as_atom().unwrap();
        assert_eq!(a.derivs(), ["0", "1"]);
    }

    #[test]
    fn associator_factor() {
        let e = parse("-{[a b], c, d}- + [{a, b, c}+ d]").unwrap();
        assert_eq!(print(&e), "[{a, b, c}+ d] - {[a b], c, d}-");
    }

    #[test]
    fn nested_printing() {
        let e = parse("[a [b c]]").unwrap();
        assert_eq!(print(&e), "[a [b c]]");
    }

    #[test]
    fn gaussian_coefficients_round_trip() {
        let e = parse("[a b] + 2i*[a b]").unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(print(&e), "[a b] + 2i*[a b]");
        assert_eq!(parse(&print(&e)).unwrap(), e);
    }

    #[test]
    fn json_round_trip() {
        let e = parse("(3)*x").err();
        assert!(e.is_some());
        let e = parse("[a b] - 2i*g*[a b] + 1/3*c").unwrap();
        let j = e.to_json();
        assert_eq!(expr_from_json(&j).unwrap(), e);
        assert_eq!(
            parse_scalar("(1-2i)*g^2").unwrap().coeff,
            Complex::new(int(1), int(-2))
        );
        assert_eq!(
            parse_scalar("-1/2i").unwrap().coeff,
            Complex::new(int(0), rat(-1, 2))
        );
    }
}
