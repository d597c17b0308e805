//! Independent checks of the degree formulas.
//!
//! The Plücker degree of `I(k,s)` equals the number of standard Young
//! tableaux of the `k × (s−k)` rectangle. Two counters live here: exhaustive
//! backtracking, which shares no code with the factorial arithmetic, and the
//! hook-length formula. Low-dimensional coincidences between families give a
//! second family of probes for types II, III and IV.

use num_traits::One;
use serde::Serialize;

use crate::arith::{eval_ratio_direct, eval_ratio_legendre, BigNat};
use crate::error::{ArithError, OracleError};
use crate::invariants::{degree_irreducible, degree_ratio};
use crate::spaces::{IrreducibleSpace, SpaceExpr};

/// Largest cell count accepted by [`count_syt_bruteforce`].
pub const MAX_BRUTE_FORCE_CELLS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectShape {
    rows: u32,
    cols: u32,
}

impl RectShape {
    pub fn new(rows: u32, cols: u32) -> Result<Self, OracleError> {
        if rows == 0 || cols == 0 {
            return Err(OracleError::EmptyShape);
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn cells(&self) -> u64 {
        u64::from(self.rows) * u64::from(self.cols)
    }
}

/// Counts standard Young tableaux of a rectangle by placing `1, 2, …, rc` one
/// at a time. Entry `m` may go at the end of row `i` when that row is not full
/// and is strictly shorter than row `i−1`.
pub fn count_syt_bruteforce(shape: RectShape) -> Result<BigNat, OracleError> {
    if shape.cells() > u64::from(MAX_BRUTE_FORCE_CELLS) {
        return Err(OracleError::ShapeTooLarge {
            rows: shape.rows,
            cols: shape.cols,
            limit: MAX_BRUTE_FORCE_CELLS,
        });
    }
    let mut lengths = vec![0u32; shape.rows as usize];
    let count = place(&mut lengths, shape.cols, shape.cells() as u32);
    Ok(BigNat::from(count))
}

fn place(lengths: &mut [u32], cols: u32, remaining: u32) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for i in 0..lengths.len() {
        let fits = lengths[i] < cols && (i == 0 || lengths[i - 1] > lengths[i]);
        if fits {
            lengths[i] += 1;
            total += place(lengths, cols, remaining - 1);
            lengths[i] -= 1;
        }
    }
    total
}

/// Hook-length count `(rc)! / Π hook(i,j)`, where the hook of cell `(i,j)` in
/// an `r × c` rectangle is `(r−i) + (c−j) + 1` for 1-based `i, j`.
pub fn count_syt_hook(shape: RectShape) -> BigNat {
    let mut numerator = BigNat::one();
    for m in 2..=shape.cells() {
        numerator *= m;
    }
    let mut hooks = BigNat::one();
    for i in 1..=shape.rows {
        for j in 1..=shape.cols {
            hooks *= (shape.rows - i) + (shape.cols - j) + 1;
        }
    }
    debug_assert!((&numerator % &hooks) == BigNat::from(0u32));
    numerator / hooks
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Mismatch,
}

/// Type I degree against its tableau count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeICheck {
    pub k: u32,
    pub s: u32,
    pub formula: BigNat,
    pub hook: BigNat,
    /// Filled in when the rectangle is small enough to enumerate.
    pub brute_force: Option<BigNat>,
    pub verdict: Verdict,
}

pub fn check_type_i_degree(k: u32, s: u32) -> Result<TypeICheck, crate::Error> {
    let space = IrreducibleSpace::TypeI { k, s };
    space.validate()?;
    let formula = degree_irreducible(&space)?.into_inner();
    let shape = RectShape::new(k.min(s - k), k.max(s - k))?;
    let hook = count_syt_hook(shape);
    let brute_force = if shape.cells() <= u64::from(MAX_BRUTE_FORCE_CELLS) {
        Some(count_syt_bruteforce(shape)?)
    } else {
        None
    };
    let agrees = formula == hook && brute_force.as_ref().is_none_or(|b| *b == formula);
    Ok(TypeICheck {
        k,
        s,
        formula,
        hook,
        brute_force,
        verdict: if agrees {
            Verdict::Pass
        } else {
            Verdict::Mismatch
        },
    })
}

/// The probed coincidences `left ≅ right` and the verdict the closed forms
/// are expected to produce.
pub const ISOMORPHISM_PROBES: [(IrreducibleSpace, IrreducibleSpace, Verdict); 6] = [
    (
        IrreducibleSpace::TypeII(2),
        IrreducibleSpace::TypeI { k: 1, s: 2 },
        Verdict::Pass,
    ),
    (
        IrreducibleSpace::TypeII(3),
        IrreducibleSpace::TypeI { k: 1, s: 4 },
        Verdict::Pass,
    ),
    (
        IrreducibleSpace::TypeII(4),
        IrreducibleSpace::TypeIV(6),
        Verdict::Pass,
    ),
    (
        IrreducibleSpace::TypeIII(1),
        IrreducibleSpace::TypeI { k: 1, s: 2 },
        Verdict::Pass,
    ),
    // The type III closed form gives 1 here; the quadric has degree 2.
    (
        IrreducibleSpace::TypeIII(2),
        IrreducibleSpace::TypeIV(3),
        Verdict::Mismatch,
    ),
    (
        IrreducibleSpace::TypeIV(4),
        IrreducibleSpace::TypeI { k: 2, s: 4 },
        Verdict::Pass,
    ),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub left: String,
    pub right: String,
    pub dim_left: u64,
    pub dim_right: u64,
    pub dims_match: bool,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree_left: BigNat,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree_right: BigNat,
    pub verdict: Verdict,
}

impl Diagnostic {
    pub fn compare(left: &IrreducibleSpace, right: &IrreducibleSpace) -> Result<Self, ArithError> {
        let (dim_left, dim_right) = (left.dimension(), right.dimension());
        let degree_left = degree_irreducible(left)?.into_inner();
        let degree_right = degree_irreducible(right)?.into_inner();
        let dims_match = dim_left == dim_right;
        let verdict = if dims_match && degree_left == degree_right {
            Verdict::Pass
        } else {
            Verdict::Mismatch
        };
        Ok(Self {
            left: left.to_string(),
            right: right.to_string(),
            dim_left,
            dim_right,
            dims_match,
            degree_left,
            degree_right,
            verdict,
        })
    }

    /// `III_2 vs IV_3` style label.
    pub fn label(&self) -> String {
        format!(
            "{} vs {}",
            subscripted(&self.left),
            subscripted(&self.right)
        )
    }
}

fn subscripted(key: &str) -> String {
    let (name, args) = key.split_once('(').unwrap_or((key, ""));
    let args = args.trim_end_matches(')');
    if args.contains(',') {
        format!("{name}_{{{args}}}")
    } else {
        format!("{name}_{args}")
    }
}

/// One [`Diagnostic`] per entry of [`ISOMORPHISM_PROBES`], in order.
pub fn isomorphism_diagnostics() -> Result<Vec<Diagnostic>, ArithError> {
    ISOMORPHISM_PROBES
        .iter()
        .map(|(l, r, _)| Diagnostic::compare(l, r))
        .collect()
}

/// Projective dimension of factors that are complex projective spaces,
/// including the coincidences `II_2 ≅ III_1 ≅ CP^1` and `II_3 ≅ CP^3`.
pub fn projective_dimension(m: &IrreducibleSpace) -> Option<u64> {
    match *m {
        IrreducibleSpace::TypeI { k, s } if k == 1 || k == s - 1 => Some(u64::from(s - 1)),
        IrreducibleSpace::TypeII(2) | IrreducibleSpace::TypeIII(1) => Some(1),
        IrreducibleSpace::TypeII(3) => Some(3),
        _ => None,
    }
}

/// Canonical irreducible factors used by the verification sweeps:
/// type I with `s ≤ max_i` (`k ≤ s−k`), types II and III with `s ≤ max_ii`
/// and `s ≤ max_iii`, and quadrics `IV(3..=max_iv)`.
pub fn sweep_factors(max_i: u32, max_ii: u32, max_iii: u32, max_iv: u32) -> Vec<IrreducibleSpace> {
    let mut out = Vec::new();
    for s in 2..=max_i {
        for k in 1..=s / 2 {
            out.push(IrreducibleSpace::TypeI { k, s });
        }
    }
    out.extend((2..=max_ii).map(IrreducibleSpace::TypeII));
    out.extend((1..=max_iii).map(IrreducibleSpace::TypeIII));
    out.extend((3..=max_iv).map(IrreducibleSpace::TypeIV));
    out
}

/// Unordered pairs (with repetition) from `factors` whose total dimension is at most `max_dim`.
pub fn pair_sweep(factors: &[IrreducibleSpace], max_dim: u64) -> Vec<SpaceExpr> {
    let mut out = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            if a.dimension() + b.dimension() <= max_dim {
                let pair = SpaceExpr::new(vec![*a, *b]).expect("sweep factors are valid");
                out.push(pair.canonicalize());
            }
        }
    }
    out
}

/// Both evaluation routes on one degree formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub space: String,
    pub direct: Result<BigNat, ArithError>,
    pub legendre: Result<BigNat, ArithError>,
}

impl RatioCheck {
    pub fn run(space: &SpaceExpr) -> Self {
        let ratio = degree_ratio(space);
        Self {
            space: space.to_string(),
            direct: eval_ratio_direct(&ratio),
            legendre: eval_ratio_legendre(&ratio),
        }
    }

    pub fn agrees(&self) -> bool {
        matches!((&self.direct, &self.legendre), (Ok(a), Ok(b)) if a == b)
    }
}

/// Everything the `check` command runs.
#[derive(Debug, Clone)]
pub struct CheckSuite {
    pub ratios: Vec<RatioCheck>,
    pub type_i: Vec<TypeICheck>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CheckSuite {
    pub fn run() -> Result<Self, crate::Error> {
        let factors = sweep_factors(14, 12, 12, 20);
        let mut spaces: Vec<SpaceExpr> = factors
            .iter()
            .map(|f| SpaceExpr::single(*f).expect("sweep factors are valid"))
            .collect();
        spaces.extend(pair_sweep(&factors, 20));
        let ratios = spaces.iter().map(RatioCheck::run).collect();

        let mut type_i = Vec::new();
        for s in 2..=14 {
            for k in 1..s {
                type_i.push(check_type_i_degree(k, s)?);
            }
        }
        Ok(Self {
            ratios,
            type_i,
            diagnostics: isomorphism_diagnostics()?,
        })
    }

    /// Every result that differs from its expected outcome.
    pub fn deviations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in self.ratios.iter().filter(|r| !r.agrees()) {
            out.push(format!(
                "ratio routes disagree on {}: direct {:?}, legendre {:?}",
                r.space, r.direct, r.legendre
            ));
        }
        for c in self.type_i.iter().filter(|c| c.verdict != Verdict::Pass) {
            out.push(format!(
                "I({},{}) degree {} vs hook {} vs brute force {:?}",
                c.k, c.s, c.formula, c.hook, c.brute_force
            ));
        }
        if self.diagnostics.len() != ISOMORPHISM_PROBES.len() {
            out.push(format!(
                "expected {} isomorphism probes, got {}",
                ISOMORPHISM_PROBES.len(),
                self.diagnostics.len()
            ));
        }
        for (d, (_, _, expected)) in self.diagnostics.iter().zip(ISOMORPHISM_PROBES.iter()) {
            if d.verdict != *expected {
                out.push(format!(
                    "{}: expected {:?}, got {:?} (degrees {} vs {})",
                    d.label(),
                    expected,
                    d.verdict,
                    d.degree_left,
                    d.degree_right
                ));
            }
        }
        out
    }

    pub fn expected_mismatches(&self) -> Vec<&Diagnostic> {
        self.diagnostics
            .iter()
            .filter(|d| d.verdict == Verdict::Mismatch)
            .collect()
    }

    pub fn summary(&self) -> String {
        let ratios_ok = self.ratios.iter().filter(|r| r.agrees()).count();
        let syt_ok = self
            .type_i
            .iter()
            .filter(|c| c.verdict == Verdict::Pass)
            .count();
        let brute = self
            .type_i
            .iter()
            .filter(|c| c.brute_force.is_some())
            .count();
        let probes_ok = self
            .diagnostics
            .iter()
            .filter(|d| d.verdict == Verdict::Pass)
            .count();
        let mismatches = self.expected_mismatches();
        let labels: Vec<String> = mismatches.iter().map(|d| d.label()).collect();
        let noun = if mismatches.len() == 1 {
            "mismatch"
        } else {
            "mismatches"
        };
        let deviations = self.deviations().len();
        let status = if deviations == 0 {
            "all checks as expected".to_string()
        } else {
            format!("{deviations} unexpected results")
        };
        format!(
            "{status}: {ratios_ok}/{} ratio cross-checks agree, {syt_ok}/{} type I tableau checks pass \
             ({brute} by enumeration), {probes_ok} isomorphism probes pass, {} expected {noun} ({})",
            self.ratios.len(),
            self.type_i.len(),
            mismatches.len(),
            labels.join(", ")
        )
    }
}
