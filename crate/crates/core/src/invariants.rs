//! Embedding degree, normalized volume, Gromov width and Γ.
//!
//! For a holomorphic isometric embedding `f: M → CP^N` of a complex
//! `n`-dimensional space, `deg(f)` is the degree of a generic linear
//! projection `F: M → CP^n`, i.e. `F_*[M] = deg(F)·[CP^n]`. It is never
//! computed from a map here. Instead it comes from the volume identity
//! `Vol(M) = deg(f)·Vol(CP^n)` with `Vol(CP^n) = π^n / n!`, which yields a
//! closed factorial-ratio formula per family:
//!
//! * `I(k,s)`: `[1!···(s−k−1)!]·[1!···(k−1)!]·((s−k)k)! / [1!···(s−1)!]`
//! * `II(s)`: `(s(s−1)/2)!·[2!·4!···(2s−4)!] / [(s−1)!·s!···(2s−3)!]`
//! * `III(s)`: `(s(s+1)/2)!·[2!·4!···(2s−2)!] / [s!·(s+1)!···(2s−1)!]`
//! * `IV(s)`, `s ≥ 3`: `2` (the quadric)
//!
//! Empty factorial products are `1`. A product `M_1 × ··· × M_m` has degree
//! `(n_1+···+n_m)! / (n_1!···n_m!) · Π deg(f_i)`.
//!
//! All forms are normalized so that a generator `A` of `H_2(M, Z)` has
//! `ω_FS(A) = π`. With that normalization the Gromov width of every space is
//! `π`, so `Vol·n!/c_G^n = deg` is an integer and `Γ = deg + 1` exactly.

use serde::Serialize;

use crate::arith::{eval_ratio_direct, BigNat, FactorialRatio};
use crate::error::ArithError;
use crate::spaces::{IrreducibleSpace, SpaceExpr};

/// Degree of the canonical projective embedding; always `≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(BigNat);

impl Degree {
    pub fn value(&self) -> &BigNat {
        &self.0
    }

    pub fn into_inner(self) -> BigNat {
        self.0
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `Vol(M, ω_FS)` expressed as `units · π^n / n!`. `units` always equals the degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedVolume {
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub units: BigNat,
    pub dim: u64,
}

impl std::fmt::Display for NormalizedVolume {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} · π^{} / {}!", self.units, self.dim, self.dim)
    }
}

/// The degree formula of one irreducible factor as a factorial ratio.
pub fn degree_ratio_irreducible(m: &IrreducibleSpace) -> FactorialRatio {
    match *m {
        IrreducibleSpace::TypeI { k, s } => {
            let (k, s) = (u64::from(k), u64::from(s));
            let mut num: Vec<u64> = (1..=s - k - 1).collect();
            num.extend(1..k);
            num.push((s - k) * k);
            FactorialRatio::new(num, (1..=s - 1).collect())
        }
        IrreducibleSpace::TypeII(s) => {
            let s = u64::from(s);
            let mut num = vec![s * (s - 1) / 2];
            num.extend((1..=s.saturating_sub(2)).map(|i| 2 * i));
            FactorialRatio::new(num, (s - 1..=2 * s - 3).collect())
        }
        IrreducibleSpace::TypeIII(s) => {
            let s = u64::from(s);
            let mut num = vec![s * (s + 1) / 2];
            num.extend((1..s).map(|i| 2 * i));
            FactorialRatio::new(num, (s..=2 * s - 1).collect())
        }
        // 2 = 2!
        IrreducibleSpace::TypeIV(_) => FactorialRatio::new(vec![2], vec![]),
    }
}

/// Multinomial `(n_1+···+n_m)! / (n_1!···n_m!)` of the factor dimensions.
pub fn multinomial_ratio(space: &SpaceExpr) -> FactorialRatio {
    let dims: Vec<u64> = space.factors().iter().map(|f| f.dimension()).collect();
    FactorialRatio::new(vec![dims.iter().sum()], dims)
}

/// The full degree formula of a product as one factorial ratio.
pub fn degree_ratio(space: &SpaceExpr) -> FactorialRatio {
    let factors = space.factors();
    let base = if factors.len() > 1 {
        multinomial_ratio(space)
    } else {
        FactorialRatio::default()
    };
    factors
        .iter()
        .fold(base, |acc, f| acc.times(&degree_ratio_irreducible(f)))
}

pub fn degree_irreducible(m: &IrreducibleSpace) -> Result<Degree, ArithError> {
    eval_ratio_direct(&degree_ratio_irreducible(m)).map(Degree)
}

pub fn degree(space: &SpaceExpr) -> Result<Degree, ArithError> {
    let factors = space.factors();
    if let [single] = factors {
        return degree_irreducible(single);
    }
    let mut value = eval_ratio_direct(&multinomial_ratio(space))?;
    for f in factors {
        value *= degree_irreducible(f)?.into_inner();
    }
    Ok(Degree(value))
}

pub fn volume_units(space: &SpaceExpr) -> Result<NormalizedVolume, ArithError> {
    Ok(NormalizedVolume {
        units: degree(space)?.into_inner(),
        dim: space.dimension(),
    })
}

/// Gromov width in units of π; `c_G(M, ω_FS) = π` for every space here.
pub fn gromov_width_units(_space: &SpaceExpr) -> u64 {
    1
}

/// `Γ = ⌊Vol·n!/c_G^n⌋ + 1`, which is `deg + 1` since `Vol·n!/π^n = deg`.
pub fn gamma(space: &SpaceExpr) -> Result<BigNat, ArithError> {
    let volume = volume_units(space)?;
    debug_assert_eq!(gromov_width_units(space), 1);
    Ok(volume.units + 1u32)
}

/// `true` for parameters where the printed closed form is used outside the
/// range in which it feeds a classification threshold.
pub fn is_small_parameter(m: &IrreducibleSpace) -> bool {
    matches!(
        *m,
        IrreducibleSpace::TypeII(2..=5) | IrreducibleSpace::TypeIII(1..=4)
    )
}

/// Warnings attached to reports for small-parameter type II/III factors.
pub fn small_parameter_warnings(space: &SpaceExpr) -> Vec<String> {
    let mut out = Vec::new();
    for f in space.factors() {
        if !is_small_parameter(f) {
            continue;
        }
        let entry = format!("{f}: small-parameter degree from the closed form, see diagnostics");
        if !out.contains(&entry) {
            out.push(entry);
        }
        if *f == IrreducibleSpace::TypeIII(2) {
            let conflict =
                "III(2): degree 1 conflicts with III_2 ≅ IV_3 diagnostic (quadric has degree 2)"
                    .to_string();
            if !out.contains(&conflict) {
                out.push(conflict);
            }
        }
    }
    out
}
