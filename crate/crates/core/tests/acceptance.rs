//! Acceptance suite. Every criterion is checked by exact integer equality and
//! reported on its own PASS/FAIL line; the process exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use sbatlas::arith::{eval_ratio_direct, eval_ratio_legendre, FactorialRatio};
use sbatlas::atlas::{
    classify, pair_condition, threshold_scan, Family, RefinedValues, RefinementTable, SBResult,
};
use sbatlas::invariants::{degree, degree_irreducible, degree_ratio, gamma, multinomial_ratio};
use sbatlas::oracle::{
    count_syt_bruteforce, count_syt_hook, isomorphism_diagnostics, pair_sweep,
    projective_dimension, sweep_factors, RectShape, Verdict,
};
use sbatlas::spaces::{parse, IrreducibleSpace, SpaceExpr};
use sbatlas::BigNat;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Ledger) -> Outcome);

fn nat(v: u64) -> BigNat {
    BigNat::from(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Ratios met while checking criteria 2–6, re-evaluated by criterion 7.
#[derive(Default)]
struct Ledger {
    ratios: Vec<(String, FactorialRatio)>,
}

impl Ledger {
    fn space(&mut self, space: &SpaceExpr) {
        self.ratios.push((space.to_string(), degree_ratio(space)));
        if space.factors().len() > 1 {
            self.ratios
                .push((format!("multinomial {space}"), multinomial_ratio(space)));
        }
    }
}

fn single(m: IrreducibleSpace) -> SpaceExpr {
    SpaceExpr::single(m).unwrap().canonicalize()
}

fn c1_projective_rule(_: &mut Ledger) -> Outcome {
    let table = RefinementTable::builtin();
    for n in 1..=10u32 {
        let space = single(IrreducibleSpace::projective(n));
        let sb = classify(&space, &table).map_err(err)?;
        let refined = sb.refinement().and_then(|r| r.values.single()).cloned();
        ensure(
            !sb.is_exact() && refined == Some(nat(u64::from(n) + 1)),
            || format!("CP({n}): got {sb:?}"),
        )?;
    }
    Ok("S_B(CP^n) refined to n+1 for n = 1..10".into())
}

fn scan_first(
    family: Family,
    from: u32,
    to: u32,
    ledger: &mut Ledger,
) -> Result<Option<u32>, String> {
    let scan = threshold_scan(family, from, to, &RefinementTable::builtin()).map_err(err)?;
    for s in from..=to {
        ledger.space(&single(family.member(s)));
    }
    Ok(scan.first_exact)
}

fn c2_thresholds(ledger: &mut Ledger) -> Outcome {
    let table = RefinementTable::builtin();
    // k = 2: first exact at s = 7, and nothing before it.
    let first = scan_first(Family::TypeI { k: 2 }, 4, 14, ledger)?;
    ensure(first == Some(7), || format!("I:k=2 first exact {first:?}"))?;
    let scan = threshold_scan(Family::TypeI { k: 2 }, 4, 14, &table).map_err(err)?;
    let earliest = scan.rows.iter().find(|r| r.sb.is_exact()).map(|r| r.param);
    ensure(earliest == Some(7), || {
        format!("I:k=2 earliest exact {earliest:?}")
    })?;

    // min(k, s−k) = 3, 4, 5: every s with s − k ≥ k up to 14 is exact.
    for k in 3..=5u32 {
        let scan = threshold_scan(Family::TypeI { k }, 2 * k, 14, &table).map_err(err)?;
        for s in 2 * k..=14 {
            ledger.space(&single(IrreducibleSpace::TypeI { k, s }));
        }
        ensure(scan.rows.iter().all(|r| r.sb.is_exact()), || {
            format!("I:k={k} has a non-exact row in {}..14", 2 * k)
        })?;
    }

    let first = scan_first(Family::TypeII, 2, 14, ledger)?;
    ensure(first == Some(6), || format!("II first exact {first:?}"))?;
    let scan = threshold_scan(Family::TypeII, 2, 14, &table).map_err(err)?;
    let earliest = scan.rows.iter().find(|r| r.sb.is_exact()).map(|r| r.param);
    ensure(earliest == Some(6), || {
        format!("II earliest exact {earliest:?}")
    })?;

    let scan = threshold_scan(Family::TypeIV, 3, 20, &table).map_err(err)?;
    for s in 3..=20 {
        ledger.space(&single(IrreducibleSpace::TypeIV(s)));
    }
    ensure(scan.rows.iter().all(|r| !r.sb.is_exact()), || {
        "IV has an exact row".into()
    })?;
    Ok("I:k=2 from s=7; I:k=3,4,5 exact up to s=14; II from s=6; IV never (s=3..20)".into())
}

fn c3_type_iii(ledger: &mut Ledger) -> Outcome {
    let scan = threshold_scan(Family::TypeIII, 1, 10, &RefinementTable::builtin()).map_err(err)?;
    for s in 1..=10 {
        ledger.space(&single(IrreducibleSpace::TypeIII(s)));
    }
    ensure(scan.first_exact == Some(5), || {
        format!("first exact {:?}", scan.first_exact)
    })?;
    let d4 = degree_irreducible(&IrreducibleSpace::TypeIII(4))
        .map_err(err)?
        .into_inner();
    let d5 = degree_irreducible(&IrreducibleSpace::TypeIII(5))
        .map_err(err)?
        .into_inner();
    ensure(d4 == nat(12) && d4 < nat(20), || {
        format!("deg(III_4) = {d4}")
    })?;
    ensure(d5 == nat(286) && d5 >= nat(30), || {
        format!("deg(III_5) = {d5}")
    })?;
    ensure(
        scan.footnotes.iter().any(|f| f.contains("discrepancy")),
        || "missing type III footnote".into(),
    )?;
    Ok("III first exact at s=5 (12 < 20, 286 ≥ 30), footnote present".into())
}

fn c4_refinements(ledger: &mut Ledger) -> Outcome {
    let table = RefinementTable::builtin();
    let set = |vs: &[u64]| RefinedValues::Set(vs.iter().map(|&v| nat(v)).collect());
    let cases = [
        ("I(2,4)", set(&[5, 6]), (5u64, 9u64)),
        (
            "I(2,5)",
            RefinedValues::Interval {
                lower: nat(7),
                upper: nat(10),
            },
            (7, 13),
        ),
        ("CP(1) x CP(1)", set(&[3, 4]), (3, 5)),
    ];
    for (text, expected, (lo, hi)) in cases {
        let space = parse(text).map_err(err)?;
        ledger.space(&space);
        // Bounds recomputed here from degree and dimension alone.
        let d = degree(&space).map_err(err)?.into_inner();
        let n = space.dimension();
        let lower = (d.clone() + 1u32).max(nat(n + 1));
        let upper = nat(2 * n + 1);
        ensure(d < nat(2 * n), || format!("{text} is not a range case"))?;
        ensure((lower.clone(), upper.clone()) == (nat(lo), nat(hi)), || {
            format!("{text}: independent bounds [{lower},{upper}]")
        })?;
        let sb = classify(&space, &table).map_err(err)?;
        let SBResult::Range {
            lower: l,
            upper: u,
            refinement: Some(r),
        } = &sb
        else {
            return Err(format!("{text}: {sb:?}"));
        };
        ensure((l, u) == (&lower, &upper), || {
            format!("{text}: classify bounds [{l},{u}]")
        })?;
        ensure(r.values == expected, || {
            format!("{text}: refinement {}", r.values)
        })?;
        let proper = r.values.within(&lower, &upper) && r.values.count() < &upper - &lower + 1u32;
        ensure(proper, || {
            format!("{text}: {} not strictly inside", r.values)
        })?;
    }
    Ok("I(2,4) {5,6} ⊊ [5,9]; I(2,5) [7,10] ⊊ [7,13]; CP1xCP1 {3,4} ⊊ [3,5]".into())
}

fn c5_product_exceptions(ledger: &mut Ledger) -> Outcome {
    let all = sweep_factors(8, 6, 5, 8);
    // III(2) carries the closed-form anomaly (degree 1 instead of the
    // quadric's 2); it is covered by criterion 9 and kept out of this sweep.
    let anomalous = IrreducibleSpace::TypeIII(2);
    let factors: Vec<_> = all.iter().copied().filter(|f| *f != anomalous).collect();
    let pairs = pair_sweep(&factors, 12);

    let mut ranged = BTreeSet::new();
    let mut expected = BTreeSet::new();
    for pair in &pairs {
        ledger.space(pair);
        let [a, b] = pair.factors() else {
            unreachable!()
        };
        let d = degree(pair).map_err(err)?.into_inner();
        let n = pair.dimension();
        let sb = classify(pair, &RefinementTable::empty()).map_err(err)?;

        let (d1, d2) = (
            degree_irreducible(a).map_err(err)?.into_inner(),
            degree_irreducible(b).map_err(err)?.into_inner(),
        );
        let by_degprod = pair_condition(&d1, &d2, a.dimension(), b.dimension());
        ensure(by_degprod == (d >= nat(2 * n)), || {
            format!("{pair}: pair condition {by_degprod} vs deg {d} ≥ {}", 2 * n)
        })?;
        ensure(sb.is_exact() == by_degprod, || {
            format!("{pair}: classify {sb:?}")
        })?;

        if !sb.is_exact() {
            ranged.insert(pair.to_string());
        }
        let dims = (projective_dimension(a), projective_dimension(b));
        let exception = match dims {
            (Some(x), Some(y)) => x.min(y) == 1 || (x, y) == (2, 2),
            _ => false,
        };
        if exception {
            expected.insert(pair.to_string());
        }
    }
    ensure(ranged == expected, || {
        let extra: Vec<_> = ranged.difference(&expected).collect();
        let missing: Vec<_> = expected.difference(&ranged).collect();
        format!("unexpected ranges {extra:?}, missing {missing:?}")
    })?;

    // The anomalous factor only ever produces ranges in the CP^1 x III(2) shape.
    let mut anomalous_ranges = Vec::new();
    for pair in pair_sweep(&all, 12) {
        if pair.factors().contains(&anomalous)
            && !classify(&pair, &RefinementTable::empty())
                .map_err(err)?
                .is_exact()
        {
            anomalous_ranges.push(pair.to_string());
        }
    }
    Ok(format!(
        "{} products, {} ranges = CP^1 x CP^m and CP^2 x CP^2 (up to II_2, III_1 ≅ CP^1, II_3 ≅ CP^3); degprod agrees; III(2) ranges from anomaly: {}",
        pairs.len(),
        ranged.len(),
        anomalous_ranges.join(", ")
    ))
}

fn c6_oracle(ledger: &mut Ledger) -> Outcome {
    let mut brute = 0;
    let mut checked = 0;
    for s in 2..=14u32 {
        for k in 1..s {
            let m = IrreducibleSpace::TypeI { k, s };
            ledger.space(&single(m));
            let d = degree_irreducible(&m).map_err(err)?.into_inner();
            let shape = RectShape::new(k.min(s - k), k.max(s - k)).map_err(err)?;
            let hook = count_syt_hook(shape);
            ensure(d == hook, || {
                format!("I({k},{s}): degree {d} vs hook {hook}")
            })?;
            if k * (s - k) <= 20 {
                let b = count_syt_bruteforce(shape).map_err(err)?;
                ensure(d == b, || {
                    format!("I({k},{s}): degree {d} vs enumeration {b}")
                })?;
                brute += 1;
            }
            checked += 1;
        }
    }
    for (r, c, v) in [(2, 2, 2u64), (2, 3, 5), (3, 3, 42), (4, 4, 24024)] {
        let shape = RectShape::new(r, c).map_err(err)?;
        let b = count_syt_bruteforce(shape).map_err(err)?;
        ensure(b == nat(v), || format!("{r}x{c}: enumeration gives {b}"))?;
    }
    Ok(format!("{checked} Grassmannians match the hook formula, {brute} also by enumeration; spot values 2, 5, 42, 24024"))
}

fn c7_cross_path(ledger: &mut Ledger) -> Outcome {
    for (label, ratio) in &ledger.ratios {
        let a = eval_ratio_direct(ratio).map_err(|e| format!("{label}: {e}"))?;
        let b = eval_ratio_legendre(ratio).map_err(|e| format!("{label}: {e}"))?;
        ensure(a == b, || format!("{label}: direct {a} vs legendre {b}"))?;
    }
    Ok(format!(
        "{} ratios agree across both evaluation routes",
        ledger.ratios.len()
    ))
}

fn c8_identities(_: &mut Ledger) -> Outcome {
    let factors = sweep_factors(14, 12, 12, 20);
    let mut spaces: Vec<SpaceExpr> = factors.iter().map(|f| single(*f)).collect();
    spaces.extend(pair_sweep(&factors, 20));
    for space in &spaces {
        let d = degree(space)
            .map_err(|e| format!("{space}: {e}"))?
            .into_inner();
        let g = gamma(space).map_err(err)?;
        ensure(g == &d + 1u32, || format!("{space}: gamma {g}, degree {d}"))?;
    }
    // Degree 1 exactly for projective spaces (III(2) excluded, see criterion 9).
    for f in factors
        .iter()
        .filter(|f| **f != IrreducibleSpace::TypeIII(2))
    {
        let d = degree_irreducible(f).map_err(err)?.into_inner();
        ensure((d == nat(1)) == projective_dimension(f).is_some(), || {
            format!("{f}: degree {d}")
        })?;
    }
    for s in 2..=14u32 {
        for k in 1..s {
            let a = degree_irreducible(&IrreducibleSpace::TypeI { k, s }).map_err(err)?;
            let b = degree_irreducible(&IrreducibleSpace::TypeI { k: s - k, s }).map_err(err)?;
            ensure(a == b, || format!("I({k},{s}) duality"))?;
        }
    }
    // Reordering and association on triples of small factors.
    let small: Vec<_> = factors
        .iter()
        .copied()
        .filter(|f| f.dimension() <= 6)
        .collect();
    let mut triples = 0;
    for a in &small {
        for b in &small {
            for c in &small {
                let left = parse(&format!("({a} x {b}) x {c}")).map_err(err)?;
                let right = parse(&format!("{a} x ({b} x {c})")).map_err(err)?;
                let swapped = parse(&format!("{c} x {a} x {b}")).map_err(err)?;
                let direct = degree(&left).map_err(err)?.into_inner();
                // binary composition: deg(A×B) then (A×B)×C
                let ab = SpaceExpr::new(vec![*a, *b]).map_err(err)?;
                let (n_ab, n_c) = (ab.dimension(), c.dimension());
                let binom =
                    eval_ratio_direct(&FactorialRatio::new(vec![n_ab + n_c], vec![n_ab, n_c]))
                        .map_err(err)?;
                let composed = binom
                    * degree(&ab).map_err(err)?.into_inner()
                    * degree_irreducible(c).map_err(err)?.into_inner();
                ensure(composed == direct, || {
                    format!("{a} x {b} x {c}: composed {composed} vs {direct}")
                })?;
                ensure(degree(&right).map_err(err)?.into_inner() == direct, || {
                    format!("{a},{b},{c} assoc")
                })?;
                ensure(
                    degree(&swapped).map_err(err)?.into_inner() == direct,
                    || format!("{a},{b},{c} order"),
                )?;
                triples += 1;
            }
        }
    }
    Ok(format!(
        "{} spaces integral with Γ = deg+1; duality for s ≤ 14; {triples} triples reorder/associate",
        spaces.len()
    ))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sbatlas"))
}

fn c9_diagnostics(_: &mut Ledger) -> Outcome {
    let diags = isomorphism_diagnostics().map_err(err)?;
    let verdicts: Vec<(String, String, Verdict)> = diags
        .iter()
        .map(|d| (d.left.clone(), d.right.clone(), d.verdict))
        .collect();
    let pass = |l: &str, r: &str| (l.to_string(), r.to_string(), Verdict::Pass);
    let expected = vec![
        pass("II(2)", "I(1,2)"),
        pass("II(3)", "I(1,4)"),
        pass("II(4)", "IV(6)"),
        pass("III(1)", "I(1,2)"),
        ("III(2)".into(), "IV(3)".into(), Verdict::Mismatch),
        pass("IV(4)", "I(2,4)"),
    ];
    ensure(verdicts == expected, || format!("verdicts {verdicts:?}"))?;
    let m = &diags[4];
    ensure(
        (m.degree_left.clone(), m.degree_right.clone()) == (nat(1), nat(2)),
        || format!("III_2/IV_3 degrees {} vs {}", m.degree_left, m.degree_right),
    )?;
    let out = binary().arg("check").output().map_err(err)?;
    ensure(out.status.code() == Some(0), || {
        format!("check exited {:?}", out.status.code())
    })?;
    Ok("5 Pass, 1 Mismatch (III_2 vs IV_3: 1 vs 2); `check` exits 0".into())
}

fn c10_golden(_: &mut Ledger) -> Outcome {
    let run = || {
        binary()
            .args(["compute", "II(6)", "--format", "json"])
            .output()
    };
    let first = run().map_err(err)?;
    let second = run().map_err(err)?;
    ensure(first.status.success(), || "compute failed".into())?;
    ensure(first.stdout == second.stdout, || {
        "outputs differ between runs".into()
    })?;
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(err)?;
    ensure(v["degree"] == "286", || format!("degree {}", v["degree"]))?;
    ensure(v["gamma"] == "287", || format!("gamma {}", v["gamma"]))?;
    ensure(
        v["sb"]["kind"] == "Exact" && v["sb"]["value"] == "287",
        || format!("sb {}", v["sb"]),
    )?;
    let golden = include_str!("golden/compute_II6.json");
    ensure(first.stdout == golden.as_bytes(), || {
        "output differs from golden file".into()
    })?;
    Ok(
        "degree \"286\", gamma \"287\", sb Exact \"287\"; byte-identical across runs and to golden"
            .into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("projective-space rule", c1_projective_rule),
        ("family thresholds", c2_thresholds),
        ("type III threshold", c3_type_iii),
        ("literature refinements", c4_refinements),
        ("product exceptions", c5_product_exceptions),
        ("tableau oracle", c6_oracle),
        ("arithmetic cross-path", c7_cross_path),
        ("identity suite", c8_identities),
        ("isomorphism diagnostics", c9_diagnostics),
        ("CLI golden output", c10_golden),
    ];
    let mut ledger = Ledger::default();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check(&mut ledger) {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
