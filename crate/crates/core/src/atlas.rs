//! Minimal Darboux atlas number `S_B`.
//!
//! With `d = deg(f)` and complex dimension `n`, the Rudyak–Schlenk bounds
//! applied with `Γ = d + 1` give:
//!
//! * `d ≥ 2n` (clause `Thm1(i)`): `S_B = d + 1` exactly;
//! * otherwise (clause `Thm1(ii)`): `max(n+1, d+1) ≤ S_B ≤ 2n+1`.
//!
//! Sharper values known from the literature are kept in a refinement table
//! loaded from a small text file. A refinement may only narrow a range; it
//! never turns a range into an exact value chosen by the theorem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::BigNat;
use crate::error::{ArithError, RefinementError, SpaceError};
use crate::invariants::{
    degree, gamma, gromov_width_units, small_parameter_warnings, volume_units, NormalizedVolume,
};
use crate::spaces::{parse, IrreducibleSpace, Kind, SpaceExpr};

/// Refinements shipped with the crate.
pub const DEFAULT_REFINEMENTS: &str = include_str!("../data/refinements.txt");

/// Which clause decided the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `deg ≥ 2n`: exact value.
    Thm1i,
    /// `deg < 2n`: bounded range.
    Thm1ii,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Thm1i => "Thm1(i)",
            CaseTag::Thm1ii => "Thm1(ii)",
        })
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefinedValues {
    Set(BTreeSet<BigNat>),
    Interval { lower: BigNat, upper: BigNat },
}

impl RefinedValues {
    fn bounds(&self) -> Option<(&BigNat, &BigNat)> {
        match self {
            RefinedValues::Set(values) => Some((values.first()?, values.last()?)),
            RefinedValues::Interval { lower, upper } => Some((lower, upper)),
        }
    }

    pub fn contains(&self, v: &BigNat) -> bool {
        match self {
            RefinedValues::Set(values) => values.contains(v),
            RefinedValues::Interval { lower, upper } => lower <= v && v <= upper,
        }
    }

    /// The only admissible value, if there is exactly one.
    pub fn single(&self) -> Option<&BigNat> {
        match self {
            RefinedValues::Set(values) if values.len() == 1 => values.first(),
            RefinedValues::Interval { lower, upper } if lower == upper => Some(lower),
            _ => None,
        }
    }

    /// Number of admissible values.
    pub fn count(&self) -> BigNat {
        match self {
            RefinedValues::Set(values) => BigNat::from(values.len()),
            RefinedValues::Interval { lower, upper } => upper - lower + 1u32,
        }
    }

    /// `true` when every admissible value lies in `[lower, upper]`.
    pub fn within(&self, lower: &BigNat, upper: &BigNat) -> bool {
        self.bounds()
            .is_some_and(|(lo, hi)| lower <= lo && hi <= upper)
    }
}

impl fmt::Display for RefinedValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefinedValues::Set(values) => {
                let items: Vec<String> = values.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            RefinedValues::Interval { lower, upper } => write!(f, "[{lower},{upper}]"),
        }
    }
}

/// A literature value attached to a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub values: RefinedValues,
    pub citation: String,
}

impl Serialize for Refinement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match &self.values {
            RefinedValues::Set(values) => {
                map.serialize_entry("kind", "set")?;
                let items: Vec<String> = values.iter().map(ToString::to_string).collect();
                map.serialize_entry("values", &items)?;
            }
            RefinedValues::Interval { lower, upper } => {
                map.serialize_entry("kind", "interval")?;
                map.serialize_entry("lower", &lower.to_string())?;
                map.serialize_entry("upper", &upper.to_string())?;
            }
        }
        map.serialize_entry("citation", &self.citation)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SBResult {
    Exact {
        value: BigNat,
    },
    Range {
        lower: BigNat,
        upper: BigNat,
        refinement: Option<Refinement>,
    },
}

impl SBResult {
    pub fn is_exact(&self) -> bool {
        matches!(self, SBResult::Exact { .. })
    }

    pub fn refinement(&self) -> Option<&Refinement> {
        match self {
            SBResult::Range { refinement, .. } => refinement.as_ref(),
            SBResult::Exact { .. } => None,
        }
    }

    pub fn without_refinement(&self) -> SBResult {
        match self {
            SBResult::Range { lower, upper, .. } => SBResult::Range {
                lower: lower.clone(),
                upper: upper.clone(),
                refinement: None,
            },
            exact => exact.clone(),
        }
    }

    /// Short form used in tables: `43`, `[6,11]` or `[5,9] -> {5,6}`.
    pub fn compact(&self) -> String {
        match self {
            SBResult::Exact { value } => value.to_string(),
            SBResult::Range {
                lower,
                upper,
                refinement,
            } => match refinement {
                Some(r) => format!("[{lower},{upper}] -> {}", r.values),
                None => format!("[{lower},{upper}]"),
            },
        }
    }
}

impl fmt::Display for SBResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SBResult::Exact { value } => write!(f, "S_B = {value}"),
            SBResult::Range {
                lower,
                upper,
                refinement: None,
            } => write!(f, "{lower} ≤ S_B ≤ {upper}"),
            SBResult::Range {
                lower,
                upper,
                refinement: Some(r),
            } => match r.values.single() {
                Some(v) => write!(f, "S_B = {v} (refined; {})", r.citation),
                None => write!(
                    f,
                    "S_B ∈ {} (refined; {}; theorem bounds [{lower},{upper}])",
                    r.values, r.citation
                ),
            },
        }
    }
}

impl Serialize for SBResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self {
            SBResult::Exact { value } => {
                map.serialize_entry("kind", "Exact")?;
                map.serialize_entry("value", &value.to_string())?;
            }
            SBResult::Range {
                lower,
                upper,
                refinement,
            } => {
                map.serialize_entry("kind", "Range")?;
                map.serialize_entry("lower", &lower.to_string())?;
                map.serialize_entry("upper", &upper.to_string())?;
                if let Some(r) = refinement {
                    map.serialize_entry("refinement", r)?;
                }
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// One canonical space key.
    Space(String),
    /// `I(1,*)`: every single projective space.
    AnyProjective,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Space(key) => f.write_str(key),
            Pattern::AnyProjective => f.write_str("I(1,*)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuesSpec {
    Fixed(RefinedValues),
    /// `S_B = n + 1`.
    NPlusOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementEntry {
    pub pattern: Pattern,
    pub values: ValuesSpec,
    pub citation: String,
}

impl RefinementEntry {
    fn resolve(&self, n: u64) -> RefinedValues {
        match &self.values {
            ValuesSpec::Fixed(v) => v.clone(),
            ValuesSpec::NPlusOne => RefinedValues::Set(BTreeSet::from([BigNat::from(n + 1)])),
        }
    }
}

/// Validated refinement table. Lookup is by canonical key, falling back to
/// the projective-space rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RefinementTable {
    entries: BTreeMap<Pattern, RefinementEntry>,
}

impl RefinementTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        Self::from_text(DEFAULT_REFINEMENTS).expect("built-in refinement table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, RefinementError> {
        let text = std::fs::read_to_string(path).map_err(|e| RefinementError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self, RefinementError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let entry = parse_entry(trimmed, line)?;
            validate_entry(&entry, line)?;
            if entries.contains_key(&entry.pattern) {
                return Err(RefinementError::Malformed {
                    line,
                    message: format!("duplicate entry for {}", entry.pattern),
                });
            }
            entries.insert(entry.pattern.clone(), entry);
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &RefinementEntry> {
        self.entries.values()
    }

    /// Refinement for a canonical space, if any.
    pub fn lookup(&self, space: &SpaceExpr) -> Option<Refinement> {
        let n = space.dimension();
        let entry = self.entries.get(&Pattern::Space(space.key())).or_else(|| {
            space
                .as_projective()
                .and_then(|_| self.entries.get(&Pattern::AnyProjective))
        })?;
        Some(Refinement {
            values: entry.resolve(n),
            citation: entry.citation.clone(),
        })
    }
}

fn malformed(line: usize, message: impl Into<String>) -> RefinementError {
    RefinementError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_entry(text: &str, line: usize) -> Result<RefinementEntry, RefinementError> {
    let fields: Vec<&str> = text.splitn(3, '|').map(str::trim).collect();
    let [key, values, citation] = fields[..] else {
        return Err(malformed(line, "expected `key | values | citation`"));
    };
    if citation.is_empty() {
        return Err(malformed(line, "citation is mandatory"));
    }
    let pattern = if key.replace(' ', "") == "I(1,*)" {
        Pattern::AnyProjective
    } else {
        let space = parse(key).map_err(|e| malformed(line, format!("bad space key: {e}")))?;
        Pattern::Space(space.to_string())
    };
    Ok(RefinementEntry {
        pattern,
        values: parse_values(values, line)?,
        citation: citation.to_string(),
    })
}

fn parse_values(spec: &str, line: usize) -> Result<ValuesSpec, RefinementError> {
    let int = |t: &str| {
        BigNat::from_str(t.trim())
            .map_err(|_| malformed(line, format!("bad integer `{}`", t.trim())))
    };
    if spec == "n_plus_1" {
        return Ok(ValuesSpec::NPlusOne);
    }
    if let Some(body) = spec.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        let values = body
            .split(',')
            .map(int)
            .collect::<Result<BTreeSet<_>, _>>()?;
        return Ok(ValuesSpec::Fixed(RefinedValues::Set(values)));
    }
    if let Some(body) = spec.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let (lo, hi) = body
            .split_once(',')
            .ok_or_else(|| malformed(line, "interval needs `[lower,upper]`"))?;
        let (lower, upper) = (int(lo)?, int(hi)?);
        if lower > upper {
            return Err(malformed(line, "empty interval"));
        }
        return Ok(ValuesSpec::Fixed(RefinedValues::Interval { lower, upper }));
    }
    Err(malformed(
        line,
        format!("values must be `{{a,b,…}}`, `[a,b]` or `n_plus_1`, got `{spec}`"),
    ))
}

fn validate_entry(entry: &RefinementEntry, line: usize) -> Result<(), RefinementError> {
    let contradiction = |message: String| RefinementError::Contradiction { line, message };
    let key = match &entry.pattern {
        // deg(CP^n) = 1 < 2n, so every projective space is a range whose lower
        // end max(n+1, 2) = n+1 is exactly the rule's value.
        Pattern::AnyProjective => return Ok(()),
        Pattern::Space(key) => key,
    };
    let space = parse(key).expect("key was parsed when the entry was read");
    if entry.values == ValuesSpec::NPlusOne && space.as_projective().is_none() {
        return Err(contradiction(format!(
            "n_plus_1 only applies to projective spaces, not {key}"
        )));
    }
    let bounds = classify(&space, &RefinementTable::empty())
        .map_err(|e| contradiction(format!("cannot classify {key}: {e}")))?;
    match bounds {
        SBResult::Exact { value } => Err(contradiction(format!(
            "{key} already has S_B = {value}; refinements only narrow ranges"
        ))),
        SBResult::Range { lower, upper, .. } => {
            let values = entry.resolve(space.dimension());
            if values.within(&lower, &upper) {
                Ok(())
            } else {
                Err(contradiction(format!(
                    "{values} for {key} leaves the bounds [{lower},{upper}]"
                )))
            }
        }
    }
}

/// Classifies `S_B` for a canonical space.
pub fn classify(space: &SpaceExpr, refinements: &RefinementTable) -> Result<SBResult, ArithError> {
    let d = degree(space)?.into_inner();
    let n = space.dimension();
    Ok(decide(d, n, refinements.lookup(space)).0)
}

fn decide(d: BigNat, n: u64, refinement: Option<Refinement>) -> (SBResult, CaseTag) {
    if d >= BigNat::from(2 * n) {
        return (SBResult::Exact { value: d + 1u32 }, CaseTag::Thm1i);
    }
    let lower = (d + 1u32).max(BigNat::from(n + 1));
    let upper = BigNat::from(2 * n + 1);
    let refinement = refinement.filter(|r| r.values.within(&lower, &upper));
    (
        SBResult::Range {
            lower,
            upper,
            refinement,
        },
        CaseTag::Thm1ii,
    )
}

/// Which clause fires: `Thm1(i)` iff `deg ≥ 2n`.
pub fn case_tag(degree: &BigNat, n: u64) -> CaseTag {
    if *degree >= BigNat::from(2 * n) {
        CaseTag::Thm1i
    } else {
        CaseTag::Thm1ii
    }
}

/// The two-factor test in the form `d_1·d_2·(n_1+n_2−1)! ≥ 2·n_1!·n_2!`,
/// equivalent to `deg(M_1 × M_2) ≥ 2(n_1+n_2)`.
pub fn pair_condition(d1: &BigNat, d2: &BigNat, n1: u64, n2: u64) -> bool {
    use crate::arith::factorial;
    d1 * d2 * factorial(n1 + n2 - 1) >= BigNat::from(2u32) * factorial(n1) * factorial(n2)
}

/// All invariants of one space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub space: String,
    pub n: u64,
    #[serde(skip)]
    pub real_dim: u64,
    pub rank: u64,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree: BigNat,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub gamma: BigNat,
    pub volume: NormalizedVolume,
    pub gromov_width_units: u64,
    pub sb: SBResult,
    pub case: CaseTag,
    pub warnings: Vec<String>,
    pub citations: Vec<String>,
}

pub fn report(space: &SpaceExpr, refinements: &RefinementTable) -> Result<Report, ArithError> {
    let space = space.canonicalize();
    let n = space.dimension();
    let d = degree(&space)?.into_inner();
    let (sb, case) = decide(d.clone(), n, refinements.lookup(&space));

    let mut citations = degree_citations(&space);
    citations
        .push("Γ = ⌊Vol·n!/c_G^n⌋ + 1 = deg + 1, since Vol = deg·π^n/n! and c_G = π".to_string());
    citations.push(match case {
        CaseTag::Thm1i => {
            "Thm1(i): deg ≥ 2n, so Γ = deg+1 ≥ 2n+1 and S_B = Γ (Rudyak–Schlenk)".to_string()
        }
        CaseTag::Thm1ii => {
            "Thm1(ii): deg < 2n, so max(n+1, deg+1) ≤ S_B ≤ 2n+1 (Rudyak–Schlenk)".to_string()
        }
    });
    if let Some(r) = sb.refinement() {
        citations.push(format!("refinement {}: {}", r.values, r.citation));
    }

    Ok(Report {
        space: space.to_string(),
        n,
        real_dim: 2 * n,
        rank: space.rank(),
        gamma: gamma(&space)?,
        volume: volume_units(&space)?,
        gromov_width_units: gromov_width_units(&space),
        degree: d,
        sb,
        case,
        warnings: small_parameter_warnings(&space),
        citations,
    })
}

fn degree_citations(space: &SpaceExpr) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut push = |s: &str| {
        if !out.iter().any(|c| c == s) {
            out.push(s.to_string());
        }
    };
    for f in space.factors() {
        match f.kind() {
            Kind::TypeI if f.is_projective() => {
                push("deg(CP^n) = 1: totally geodesic embedding")
            }
            Kind::TypeI => push(
                "deg(I_{k,s}) = 1!···(s−k−1)!·1!···(k−1)!·((s−k)k)! / (1!···(s−1)!) (Plücker degree)",
            ),
            Kind::TypeII => {
                push("deg(II_s) = (s(s−1)/2)!·2!·4!···(2s−4)! / ((s−1)!·s!···(2s−3)!)")
            }
            Kind::TypeIII => {
                push("deg(III_s) = (s(s+1)/2)!·2!·4!···(2s−2)! / (s!·(s+1)!···(2s−1)!)")
            }
            Kind::TypeIV => push("deg(IV_s) = 2: standard embedding of the quadric"),
        }
    }
    if space.factors().len() > 1 {
        push("deg(M_1 × ··· × M_m) = (n_1+···+n_m)!/(n_1!···n_m!) · Π deg(f_i)");
    }
    out
}

/// Families that [`threshold_scan`] can walk through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `I(k, s)` with `k` fixed and `s` scanned.
    TypeI {
        k: u32,
    },
    TypeII,
    TypeIII,
    TypeIV,
}

impl Family {
    pub fn member(&self, s: u32) -> IrreducibleSpace {
        match *self {
            Family::TypeI { k } => IrreducibleSpace::TypeI { k, s },
            Family::TypeII => IrreducibleSpace::TypeII(s),
            Family::TypeIII => IrreducibleSpace::TypeIII(s),
            Family::TypeIV => IrreducibleSpace::TypeIV(s),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TypeI { k } => write!(f, "I:k={k}"),
            Family::TypeII => f.write_str("II"),
            Family::TypeIII => f.write_str("III"),
            Family::TypeIV => f.write_str("IV"),
        }
    }
}

impl FromStr for Family {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "II" => return Ok(Family::TypeII),
            "III" => return Ok(Family::TypeIII),
            "IV" => return Ok(Family::TypeIV),
            _ => {}
        }
        let k = s
            .strip_prefix("I:k=")
            .and_then(|k| k.trim().parse::<u32>().ok())
            .ok_or_else(|| {
                SpaceError::InvalidParams(format!(
                    "unknown family `{s}`; expected I:k=<int>, II, III or IV"
                ))
            })?;
        if k == 0 {
            return Err(SpaceError::InvalidParams("family I needs k ≥ 1".into()));
        }
        Ok(Family::TypeI { k })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub param: u32,
    pub space: String,
    pub n: u64,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree: BigNat,
    pub sb: SBResult,
    pub clause: CaseTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scan {
    #[serde(serialize_with = "serialize_display")]
    pub family: Family,
    pub range: [u32; 2],
    pub rows: Vec<ScanRow>,
    /// Least parameter from which `Thm1(i)` fires for every later row.
    pub first_exact: Option<u32>,
    pub footnotes: Vec<String>,
}

fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Classifies `family(s)` for every `s` in `from..=to`.
pub fn threshold_scan(
    family: Family,
    from: u32,
    to: u32,
    refinements: &RefinementTable,
) -> Result<Scan, crate::Error> {
    if from > to {
        return Err(SpaceError::InvalidParams(format!("empty range {from}..{to}")).into());
    }
    let mut rows = Vec::new();
    for s in from..=to {
        let space = SpaceExpr::single(family.member(s))?.canonicalize();
        let d = degree(&space)?.into_inner();
        let n = space.dimension();
        let (sb, clause) = decide(d.clone(), n, refinements.lookup(&space));
        rows.push(ScanRow {
            param: s,
            space: space.to_string(),
            n,
            degree: d,
            sb,
            clause,
        });
    }
    let first_exact = rows
        .iter()
        .rposition(|r| r.clause != CaseTag::Thm1i)
        .map_or(Some(from), |i| rows.get(i + 1).map(|r| r.param));

    let mut footnotes = vec![match first_exact {
        Some(p) => format!("Thm1(i) fires for every scanned s ≥ {p}"),
        None => format!("Thm1(i) does not hold from any s ≤ {to} onwards in {family}"),
    }];
    if family == Family::TypeIII {
        footnotes.push(type_iii_footnote()?);
    }
    Ok(Scan {
        family,
        range: [from, to],
        rows,
        first_exact,
        footnotes,
    })
}

/// Records where the type III threshold sits against the two thresholds
/// quoted for this family (`s ≥ 5` and `s ≥ 6`).
fn type_iii_footnote() -> Result<String, ArithError> {
    let row = |s: u32| -> Result<(BigNat, u64), ArithError> {
        let space =
            SpaceExpr::single(IrreducibleSpace::TypeIII(s)).expect("III(4), III(5) are valid");
        Ok((degree(&space)?.into_inner(), space.dimension()))
    };
    let (d4, n4) = row(4)?;
    let (d5, n5) = row(5)?;
    let holds = |d: &BigNat, n: u64| {
        if case_tag(d, n) == CaseTag::Thm1i {
            "≥"
        } else {
            "<"
        }
    };
    Ok(format!(
        "type III discrepancy: deg(III_4) = {d4} {} {} and deg(III_5) = {d5} {} {}, so the \
         threshold s ≥ 5 is sharp; a threshold of s ≥ 6 for this family is valid but not sharp",
        holds(&d4, n4),
        2 * n4,
        holds(&d5, n5),
        2 * n5
    ))
}

/// `S_B` lower and upper ends as machine integers, for small tables.
pub fn bounds_u64(sb: &SBResult) -> Option<(u64, u64)> {
    match sb {
        SBResult::Exact { value } => value.to_u64().map(|v| (v, v)),
        SBResult::Range { lower, upper, .. } => Some((lower.to_u64()?, upper.to_u64()?)),
    }
}
