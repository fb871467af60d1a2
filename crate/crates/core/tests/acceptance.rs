//! Acceptance criteria 1 to 9. Each criterion prints one PASS or FAIL line
//! with its pinned tolerance and measured runtime; the test fails if any
//! criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use monodromy::braid::{mu3, mu4, mu_a, mu_b, BraidWord};
use monodromy::cli::{corpus, run_input, Command};
use monodromy::exact::parse_bipoly;
use monodromy::family::{
    monodromy_group, quartic_pencil_family, verify_twist_relation, FamilySpec, QuarticPencil, RunOptions, TwistSpec,
};
use monodromy::hyperell::{mod2_monodromy, universal_slice};
use monodromy::kodaira::surface_bound;
use monodromy::sl2::{sl2_mod_order, SL2Matrix};
use monodromy::subgroup::{mod_image, schreier_bound, Index};

type Checks = Vec<(String, bool)>;

fn check(checks: &mut Checks, name: impl Into<String>, ok: bool) {
    checks.push((name.into(), ok));
}

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<Checks, String>,
}

fn braid_relations() -> Result<Checks, String> {
    let mut c = Checks::new();
    let (a, b) = (mu_a(), mu_b());
    let ab = &a * &b;
    check(&mut c, "mu(A)mu(B)mu(A) = mu(B)mu(A)mu(B)", &ab * &a == &(&b * &a) * &b);
    check(&mut c, "(mu(A)mu(B))^3 = -I", &(&ab * &ab) * &ab == SL2Matrix::minus_identity());
    let w = |s: &[i32], n| BraidWord::from_signed(n, s).map_err(|e| e.to_string());
    let m3 = |s: &[i32]| w(s, 3).and_then(|x| mu3(&x).map_err(|e| e.to_string()));
    let m4 = |s: &[i32]| w(s, 4).and_then(|x| mu4(&x).map_err(|e| e.to_string()));
    check(&mut c, "mu3 braid relation", m3(&[1, 2, 1])? == m3(&[2, 1, 2])?);
    check(&mut c, "mu4 braid relations", m4(&[1, 2, 1])? == m4(&[2, 1, 2])? && m4(&[2, 3, 2])? == m4(&[3, 2, 3])?);
    check(&mut c, "mu4 far commutation", m4(&[1, 3])? == m4(&[3, 1])?);
    Ok(c)
}

fn full_monodromy() -> Result<Checks, String> {
    let mut c = Checks::new();
    let fam = FamilySpec::parse("y^2 = x^3 + t x + 1", "t", "1").map_err(|e| e.to_string())?;
    let rep = monodromy_group(&fam, &RunOptions::default()).map_err(|e| e.to_string())?;
    let g = rep.matrices();
    check(&mut c, format!("sl_index = 1 (got {})", rep.subgroup.sl_index), rep.subgroup.sl_index == Index::Finite(1));
    let m2 = mod_image(&g, 2).len() as u64;
    let m3 = mod_image(&g, 3).len() as u64;
    check(&mut c, format!("mod-2 image {m2} = |SL(2,Z/2)|"), m2 == sl2_mod_order(2));
    check(&mut c, format!("mod-3 image {m3} = |SL(2,Z/3)|"), m3 == sl2_mod_order(3));
    Ok(c)
}

fn legendre() -> Result<Checks, String> {
    let mut c = Checks::new();
    let fam = FamilySpec::parse("Legendre", "-(t^2 - t + 1)/3", "-(2*t^3 - 3*t^2 - 3*t + 2)/27").map_err(|e| e.to_string())?;
    let rep = monodromy_group(&fam, &RunOptions::default()).map_err(|e| e.to_string())?;
    let s = &rep.subgroup;
    check(&mut c, format!("psl_index = 6 (got {})", s.psl_index), s.psl_index == Index::Finite(6));
    check(&mut c, format!("sl_index = 6 (got {})", s.sl_index), s.sl_index == Index::Finite(6));
    check(&mut c, format!("mod-2 image trivial (order {})", s.mod2_image_order), s.mod2_image_order == 1);
    check(&mut c, format!("deg_J = 6 (got {})", rep.deg_j), rep.deg_j == 6);
    let sl = s.sl_index.finite().unwrap_or(u64::MAX);
    let psl = s.psl_index.finite().unwrap_or(u64::MAX);
    check(&mut c, format!("sl_index {sl} <= 2m = {}", 2 * rep.m), sl <= 2 * rep.m);
    check(&mut c, format!("psl_index {psl} <= m = {}", rep.m), psl <= rep.m);
    check(&mut c, "all bound checks hold", rep.all_bounds_hold());
    Ok(c)
}

fn twist() -> Result<Checks, String> {
    let mut c = Checks::new();
    let fam = FamilySpec::parse("y^2 = x^3 + t x + 1", "t", "1").map_err(|e| e.to_string())?;
    let tw = TwistSpec::parse("t").map_err(|e| e.to_string())?;
    let rep = verify_twist_relation(&fam, &tw, &RunOptions::default()).map_err(|e| e.to_string())?;
    let same = rep.predicted.same_group(&rep.direct).map_err(|e| e.to_string())?;
    check(&mut c, "predicted twisted group = direct", same);
    check(&mut c, "psl indices equal", rep.original.subgroup.psl_index == rep.direct.psl_index);
    check(&mut c, format!("sl ratio {} in {{1/2, 1, 2}}", rep.sl_ratio), ["1/2", "1", "2"].contains(&rep.sl_ratio.as_str()));
    check(&mut c, "twisted group = SL(2,Z)", rep.direct.sl_index == Index::Finite(1));
    check(&mut c, "per-lasso checks", rep.all_hold());
    Ok(c)
}

fn kodaira() -> Result<Checks, String> {
    let mut c = Checks::new();
    let fam = FamilySpec::parse("y^2 = x^3 + x + t", "1", "t").map_err(|e| e.to_string())?;
    let sb = surface_bound(&fam).map_err(|e| e.to_string())?;
    let mut types = BTreeMap::new();
    for p in &sb.places {
        *types.entry(p.kodaira_type.to_string()).or_insert(0u32) += p.count;
    }
    let expect = BTreeMap::from([("I1".to_string(), 2), ("II*".to_string(), 1)]);
    check(&mut c, format!("fibers {types:?} = two I1 + II*"), types == expect);
    let inf = sb.places.iter().find(|p| p.place == "infinity").map(|p| p.kodaira_type.to_string());
    check(&mut c, format!("II* at infinity (got {inf:?})"), inf.as_deref() == Some("II*"));
    check(&mut c, format!("sum e = {} = deg_J = {}", sb.sum_e, sb.deg_j), sb.sum_e == 2 && sb.deg_j == 2);
    check(&mut c, format!("bound 2 sum e = {}", sb.bound), sb.bound == 4);
    let rep = monodromy_group(&fam, &RunOptions::default()).map_err(|e| e.to_string())?;
    let sl = rep.subgroup.sl_index.finite().unwrap_or(u64::MAX);
    check(&mut c, format!("sl_index {sl} <= 4"), sl <= 4);
    Ok(c)
}

fn schreier() -> Result<Checks, String> {
    let mut c = Checks::new();
    let opts = RunOptions::default();
    let mut seen = 0;
    for entry in corpus().into_iter().filter(|e| e.command == Command::Analyze && e.expect_error.is_none()) {
        let out = run_input(Command::Analyze, &entry.input, &opts).map_err(|e| format!("{}: {e}", entry.name))?;
        let r = out.summary["r"].as_u64().ok_or("missing r")?;
        if r < 2 {
            continue;
        }
        seen += 1;
        let bound = schreier_bound(r).map_err(|e| e.to_string())?;
        let sl = out.summary["sl_index"].as_u64();
        check(&mut c, format!("{}: sl_index {sl:?} <= 12(r-1) = {bound}", entry.name), sl.is_some_and(|s| s <= bound));
    }
    check(&mut c, format!("{seen} corpus families with r >= 2"), seen >= 5);
    Ok(c)
}

fn hyperelliptic() -> Result<Checks, String> {
    let mut c = Checks::new();
    let fam = universal_slice(3, 0).map_err(|e| e.to_string())?;
    let rep = mod2_monodromy(&fam, &RunOptions::default()).map_err(|e| e.to_string())?;
    check(&mut c, format!("permutation image order {} = 8!", rep.permutation_group_order), rep.permutation_group_order == 40_320);
    check(&mut c, format!("ambient order {}", rep.ambient_order), rep.ambient_order == 1_451_520u32.into());
    check(&mut c, format!("index {} = 36", rep.index), rep.index == 36u32.into());
    check(&mut c, "index equals the bound", rep.sharp && rep.bound_holds);
    check(&mut c, "generators are symplectic", rep.symplectic);
    Ok(c)
}

fn quartic() -> Result<Checks, String> {
    let mut c = Checks::new();
    let q = QuarticPencil { quartic: parse_bipoly("x^4 + y^4 + 1", "x", "y").map_err(|e| e.to_string())?, base: None };
    let rep = quartic_pencil_family(&q, &RunOptions::default()).map_err(|e| e.to_string())?;
    check(&mut c, format!("{} tangency punctures", rep.tangency_punctures), rep.tangency_punctures == 12);
    let sl = rep.monodromy.subgroup.sl_index;
    check(&mut c, format!("sl_index = 1 (got {sl})"), sl == Index::Finite(1));
    check(&mut c, "pencil checks", rep.all_hold());
    Ok(c)
}

fn properties() -> Result<Checks, String> {
    Ok(common::run_all()
        .into_iter()
        .map(|(name, r)| match r {
            Ok(()) => (format!("{name}: {} cases", common::CASES), true),
            Err(e) => (format!("{name}: {e}"), false),
        })
        .collect())
}

const CRITERIA: [Criterion; 9] = [
    Criterion { number: 1, title: "braid representation relations", limit: Duration::from_millis(1), run: braid_relations },
    Criterion { number: 2, title: "full monodromy of y^2 = x^3 + tx + 1", limit: Duration::from_secs(60), run: full_monodromy },
    Criterion { number: 3, title: "Legendre family", limit: Duration::from_secs(60), run: legendre },
    Criterion { number: 4, title: "quadratic twist by D = t", limit: Duration::from_secs(120), run: twist },
    Criterion { number: 5, title: "Kodaira audit of y^2 = x^3 + x + t", limit: Duration::from_secs(10), run: kodaira },
    Criterion { number: 6, title: "Schreier bound over the corpus", limit: Duration::from_secs(600), run: schreier },
    Criterion { number: 7, title: "hyperelliptic genus 3 slice", limit: Duration::from_secs(600), run: hyperelliptic },
    Criterion { number: 8, title: "quartic pencil x^4 + y^4 + 1", limit: Duration::from_secs(600), run: quartic },
    Criterion { number: 9, title: "property suites", limit: Duration::from_secs(600), run: properties },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for cr in &CRITERIA {
        let start = Instant::now();
        let result = (cr.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= cr.limit;
        let (ok, detail) = match &result {
            Ok(checks) => {
                let bad: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
                (bad.is_empty() && in_time, if bad.is_empty() { String::new() } else { format!("; failed: {}", bad.join(", ")) })
            }
            Err(e) => (false, format!("; error: {e}")),
        };
        println!(
            "{} criterion {}: {} ({:.3?} within {:?}{detail})",
            if ok { "PASS" } else { "FAIL" },
            cr.number,
            cr.title,
            elapsed,
            cr.limit
        );
        if let Ok(checks) = &result {
            for (name, ok) in checks {
                println!("    [{}] {name}", if *ok { "ok" } else { "FAIL" });
            }
        }
        if !ok {
            failed.push(cr.number);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
