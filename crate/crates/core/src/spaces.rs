//! Classical Hermitian symmetric spaces of compact type and their products.
//!
//! Input grammar (whitespace is insignificant):
//!
//! ```text
//! expr := term (("x" | "*") term)*
//! term := atom ("^" positive-int)?
//! atom := "I(" int "," int ")" | "II(" int ")" | "III(" int ")" | "IV(" int ")"
//!       | "CP(" int ")" | "(" expr ")"
//! ```
//!
//! `CP(n)` is shorthand for `I(1,n+1)` and `^m` repeats a factor `m` times.
//! The canonical rendering (`Display`) only ever uses the four classical
//! families and joins factors with `" x "`; it is the key used in reports and
//! refinement files.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::SpaceError;

/// Largest accepted repetition exponent.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
}

/// One irreducible factor.
///
/// * `TypeI { k, s }`: Grassmannian of `k`-planes in `C^s`, `SU(s)/S(U(k)×U(s−k))`.
/// * `TypeII(s)`: `SO(2s)/U(s)`.
/// * `TypeIII(s)`: `Sp(s)/U(s)`.
/// * `TypeIV(s)`: the quadric `SO(s+2)/SO(s)×SO(2)`.
///
/// The derived ordering is the canonical factor order: kind first, then parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IrreducibleSpace {
    TypeI { k: u32, s: u32 },
    TypeII(u32),
    TypeIII(u32),
    TypeIV(u32),
}

impl IrreducibleSpace {
    /// Complex projective space `CP^n`.
    pub fn projective(n: u32) -> Self {
        IrreducibleSpace::TypeI { k: 1, s: n + 1 }
    }

    pub fn kind(&self) -> Kind {
        match self {
            IrreducibleSpace::TypeI { .. } => Kind::TypeI,
            IrreducibleSpace::TypeII(_) => Kind::TypeII,
            IrreducibleSpace::TypeIII(_) => Kind::TypeIII,
            IrreducibleSpace::TypeIV(_) => Kind::TypeIV,
        }
    }

    pub fn validate(&self) -> Result<(), SpaceError> {
        let bad = |msg: &str| Err(SpaceError::InvalidParams(format!("{msg} (got {self})")));
        match *self {
            IrreducibleSpace::TypeI { k, s } if k < 1 || s < 2 || k > s - 1 => {
                bad("k must satisfy 1 ≤ k ≤ s−1")
            }
            IrreducibleSpace::TypeII(s) if s < 2 => bad("type II requires s ≥ 2"),
            IrreducibleSpace::TypeIII(s) if s < 1 => bad("type III requires s ≥ 1"),
            IrreducibleSpace::TypeIV(s) if s < 1 => bad("type IV requires s ≥ 1"),
            _ => Ok(()),
        }
    }

    /// Complex dimension.
    pub fn dimension(&self) -> u64 {
        match *self {
            IrreducibleSpace::TypeI { k, s } => u64::from(s - k) * u64::from(k),
            IrreducibleSpace::TypeII(s) => u64::from(s) * u64::from(s - 1) / 2,
            IrreducibleSpace::TypeIII(s) => u64::from(s) * u64::from(s + 1) / 2,
            IrreducibleSpace::TypeIV(s) => u64::from(s),
        }
    }

    /// Rank of the symmetric space.
    ///
    /// Only the type I value enters any formula downstream; the others are
    /// descriptive metadata from the standard rank tables.
    pub fn rank(&self) -> u64 {
        match *self {
            IrreducibleSpace::TypeI { k, s } => u64::from(k.min(s - k)),
            IrreducibleSpace::TypeII(s) => u64::from(s / 2),
            IrreducibleSpace::TypeIII(s) => u64::from(s),
            IrreducibleSpace::TypeIV(_) => 2,
        }
    }

    /// `true` for `I(1,s)` written with `k ≤ s−k`, i.e. `CP^{s−1}`.
    pub fn is_projective(&self) -> bool {
        matches!(*self, IrreducibleSpace::TypeI { k: 1, .. })
    }

    /// Rewrites the factor into canonical factors: type I duality `k ↔ s−k`,
    /// `IV(1) = CP^1` and `IV(2) = CP^1 × CP^1`.
    fn canonical_factors(self) -> Vec<IrreducibleSpace> {
        match self {
            IrreducibleSpace::TypeI { k, s } if k > s - k => {
                vec![IrreducibleSpace::TypeI { k: s - k, s }]
            }
            IrreducibleSpace::TypeIV(1) => vec![IrreducibleSpace::projective(1)],
            IrreducibleSpace::TypeIV(2) => {
                vec![
                    IrreducibleSpace::projective(1),
                    IrreducibleSpace::projective(1),
                ]
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for IrreducibleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleSpace::TypeI { k, s } => write!(f, "I({k},{s})"),
            IrreducibleSpace::TypeII(s) => write!(f, "II({s})"),
            IrreducibleSpace::TypeIII(s) => write!(f, "III({s})"),
            IrreducibleSpace::TypeIV(s) => write!(f, "IV({s})"),
        }
    }
}

/// A finite product of irreducible factors. Values produced by [`parse`] and
/// [`SpaceExpr::canonicalize`] are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceExpr {
    factors: Vec<IrreducibleSpace>,
}

impl SpaceExpr {
    /// Builds a product from validated factors, without canonicalizing.
    pub fn new(factors: Vec<IrreducibleSpace>) -> Result<Self, SpaceError> {
        if factors.is_empty() {
            return Err(SpaceError::EmptyProduct);
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(Self { factors })
    }

    pub fn single(factor: IrreducibleSpace) -> Result<Self, SpaceError> {
        Self::new(vec![factor])
    }

    pub fn factors(&self) -> &[IrreducibleSpace] {
        &self.factors
    }

    /// Product with another space (not canonicalized).
    pub fn times(&self, other: &SpaceExpr) -> SpaceExpr {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        SpaceExpr { factors }
    }

    pub fn canonicalize(&self) -> SpaceExpr {
        let mut factors: Vec<_> = self
            .factors
            .iter()
            .flat_map(|f| f.canonical_factors())
            .collect();
        factors.sort();
        SpaceExpr { factors }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// Complex dimension `n`; the real dimension is `2n`.
    pub fn dimension(&self) -> u64 {
        self.factors.iter().map(IrreducibleSpace::dimension).sum()
    }

    pub fn rank(&self) -> u64 {
        self.factors.iter().map(IrreducibleSpace::rank).sum()
    }

    /// Canonical key of the space.
    pub fn key(&self) -> String {
        self.canonicalize().to_string()
    }

    /// Dimension `n` when the whole space is a single projective space `CP^n`.
    pub fn as_projective(&self) -> Option<u64> {
        match self.factors.as_slice() {
            [f] if f.is_projective() => Some(f.dimension()),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for SpaceExpr {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parses and canonicalizes a space expression.
pub fn parse(text: &str) -> Result<SpaceExpr, SpaceError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(SpaceError::EmptyProduct);
    }
    let factors = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error("expected `x`, `*` or end of input"));
    }
    Ok(SpaceExpr::new(factors)?.canonicalize())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> SpaceError {
        SpaceError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), SpaceError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<Vec<IrreducibleSpace>, SpaceError> {
        let mut factors = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x' | b'*') => {
                    self.pos += 1;
                    factors.extend(self.term()?);
                }
                _ => return Ok(factors),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<IrreducibleSpace>, SpaceError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let m = self.integer()?;
        if !(1..=MAX_EXPONENT).contains(&m) {
            return Err(SpaceError::InvalidParams(format!(
                "exponent must satisfy 1 ≤ m ≤ {MAX_EXPONENT} (got {m})"
            )));
        }
        Ok(base.repeat(m as usize))
    }

    fn atom(&mut self) -> Result<Vec<IrreducibleSpace>, SpaceError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    return Err(SpaceError::EmptyProduct);
                }
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_uppercase() => self.named(),
            Some(_) => Err(self.error("expected a space name or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn named(&mut self) -> Result<Vec<IrreducibleSpace>, SpaceError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let factor = match name {
            "I" => {
                self.expect(b'(')?;
                let k = self.integer()?;
                self.expect(b',')?;
                let s = self.integer()?;
                self.expect(b')')?;
                IrreducibleSpace::TypeI { k, s }
            }
            "II" => IrreducibleSpace::TypeII(self.single_arg()?),
            "III" => IrreducibleSpace::TypeIII(self.single_arg()?),
            "IV" => IrreducibleSpace::TypeIV(self.single_arg()?),
            "CP" => {
                let n = self.single_arg()?;
                if n < 1 {
                    return Err(SpaceError::InvalidParams(format!(
                        "CP(n) requires n ≥ 1 (got CP({n}))"
                    )));
                }
                let s = n
                    .checked_add(1)
                    .ok_or_else(|| SpaceError::InvalidParams(format!("CP({n}) is out of range")))?;
                IrreducibleSpace::TypeI { k: 1, s }
            }
            "EIII" | "EVII" | "E6" | "E7" => {
                return Err(SpaceError::Exceptional(name.to_string()));
            }
            _ => {
                self.pos = start;
                return Err(self.error(format!("unknown space `{name}`")));
            }
        };
        factor.validate()?;
        Ok(vec![factor])
    }

    fn single_arg(&mut self) -> Result<u32, SpaceError> {
        self.expect(b'(')?;
        let v = self.integer()?;
        self.expect(b')')?;
        Ok(v)
    }

    fn integer(&mut self) -> Result<u32, SpaceError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits
            .parse()
            .map_err(|_| SpaceError::InvalidParams(format!("integer {digits} is too large")))
    }
}
