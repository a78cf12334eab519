//! One line per acceptance criterion, each checked against its time budget.
//! Exits non-zero if any criterion fails.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use modforge::exactnum::{gauss_sqrt, nt, ratio, to_quadratic, Cyclotomic, QuadraticNumber, SurdSum};
use modforge::fusionring::{
    detect_z2_grading, extension_ring, fusion_subrings, is_commutative, near_group,
    verify_axioms, verify_dimension_character, DimensionCharacter, FusionRing,
};
use modforge::modulardata::{
    build_candidate, build_pointed, build_ty_candidate, candidate_dimensions, check_axioms,
    deligne_product, eholzer_datum, fpdim_vector, gate_scan, global_dimension, reverse_braiding,
    trivial_twist_count, verlinde, Case, QuadraticFormSpec, VerlindeOutcome,
};
use modforge::slrep::{build_eholzer, verify_sl2_relations, XiBranch};
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<(), String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring_of(m: &modforge::modulardata::ModularDatum) -> Result<FusionRing, String> {
    match verlinde(m).map_err(|e| e.to_string())? {
        VerlindeOutcome::Ring(r) => Ok(r),
        VerlindeOutcome::NonIntegral(w) => Err(format!("Verlinde not integral: {w:?}")),
    }
}

fn eholzer_relations() -> Outcome {
    for p in nt::odd_primes_up_to(31) {
        let nr = nt::smallest_nonresidue(p).map_err(|e| e.to_string())? as i64;
        for a in [1, nr] {
            let r = build_eholzer(p, a).map_err(|e| e.to_string())?;
            let rep = verify_sl2_relations(&r).map_err(|e| e.to_string())?;
            check(rep.s4_ok && rep.braid_ok && rep.t_order == Some(p), || {
                format!("p = {p}, a = {a}: {rep:?}")
            })?;
        }
    }
    Ok(())
}

fn gate_theorem() -> Outcome {
    let scan = gate_scan(100).map_err(|e| e.to_string())?;
    let accepted: Vec<(u64, u64)> = scan.iter().filter(|g| g.accepted).map(|g| (g.p, g.q)).collect();
    let want = vec![(3, 7), (7, 11), (13, 17), (19, 23), (37, 41), (43, 47), (67, 71), (79, 83)];
    check(accepted == want, || format!("accepted {accepted:?}"))?;
    check(scan.iter().all(|g| g.agrees_with_gap), || "gap disagreement".into())
}

fn case2_candidate() -> Outcome {
    let a2 = nt::smallest_nonresidue(7).map_err(|e| e.to_string())? as i64;
    let m = build_candidate(3, 7, Case::Two, 1, a2).map_err(|e| e.to_string())?;
    let rep = check_axioms(&m).map_err(|e| e.to_string())?;
    check(rep.passes(), || format!("axioms: {rep:?}"))?;
    let r = ring_of(&m)?;
    check(r.rank() == 6 && verify_axioms(&r).passes(), || "fusion ring axioms".into())?;

    let n = m.s().conductor();
    let q = |a: i64, b: i64| QuadraticNumber::new(21, ratio(a, 2), ratio(b, 2)).unwrap();
    let mut expected: Vec<Cyclotomic> = [q(2, 0), q(5, 1), q(7, 1), q(3, 1), q(3, 1), q(3, 1)]
        .iter()
        .map(|x| x.to_cyclotomic(n).unwrap())
        .collect();
    let fp = fpdim_vector(&m).map_err(|e| e.to_string())?;
    for v in &fp.values {
        let pos = expected.iter().position(|e| e == v).ok_or("unexpected FP dimension")?;
        expected.remove(pos);
    }
    check(expected.is_empty(), || "FP multiset".into())?;

    // pq·ε² and Σ d², computed independently
    let want = q(105, 21);
    let eps2 = candidate_dimensions(3, 7, Case::Two).map_err(|e| e.to_string())?[0].clone();
    check(&QuadraticNumber::from_int(21) * &eps2 == want, || "pq·ε²".into())?;
    let sum: SurdSum = m
        .dims()
        .iter()
        .map(|d| {
            let s = SurdSum::from(to_quadratic(d, 21).unwrap());
            &s * &s
        })
        .sum();
    check(sum == SurdSum::from(&want), || format!("Σd² = {sum}"))?;
    check(global_dimension(&m) == want.to_cyclotomic(n).unwrap(), || "global_dimension".into())?;

    let subs = fusion_subrings(&r).map_err(|e| e.to_string())?;
    check(subs == vec![vec![0], (0..6).collect()], || format!("subrings {subs:?}"))
}

fn eholzer_non_integral() -> Outcome {
    for p in [5u64, 7, 11] {
        let m = eholzer_datum(p, 1).map_err(|e| e.to_string())?;
        match verlinde(&m).map_err(|e| e.to_string())? {
            VerlindeOutcome::NonIntegral(w) => {
                check(w.value.to_integer().is_none(), || format!("p = {p}: witness is integral"))?
            }
            VerlindeOutcome::Ring(_) => return Err(format!("p = {p}: Verlinde was integral")),
        }
    }
    Ok(())
}

fn extension_suite() -> Outcome {
    for n in 1..=40usize {
        let r = extension_ring(n).map_err(|e| e.to_string())?;
        let ax = verify_axioms(&r);
        check(ax.passes(), || format!("n = {n}: {} axiom failures", ax.failure_count))?;
        let d = verify_dimension_character(&r, &DimensionCharacter::extension(n))
            .map_err(|e| e.to_string())?;
        check(d.holds(), || format!("n = {n}: dimension character"))?;
        let n64 = n as i64;
        let total = &SurdSum::from_int(n64 * n64 + 4 * n64)
            + &SurdSum::surd(ratio(n64, 1), (n * n + 4 * n) as u64);
        check(d.total == total, || format!("n = {n}: total {}", d.total))?;
        check(is_commutative(&r) == (n <= 2), || format!("n = {n}: commutativity"))?;
        let g = detect_z2_grading(&r).ok_or(format!("n = {n}: no grading"))?;
        let even = r.restrict(&g.even).map_err(|e| e.to_string())?;
        check(even == near_group(n, n as u32).unwrap(), || format!("n = {n}: even block"))?;
    }
    Ok(())
}

fn trivial_twists() -> Outcome {
    let a2 = nt::smallest_nonresidue(7).map_err(|e| e.to_string())? as i64;
    let m = build_candidate(3, 7, Case::Two, 1, a2).map_err(|e| e.to_string())?;
    let z3 = build_pointed(QuadraticFormSpec { n: 3, a: 1 }).map_err(|e| e.to_string())?;
    let d = deligne_product(&m, &reverse_braiding(&z3)).map_err(|e| e.to_string())?;
    let c = trivial_twist_count(&d);
    check(c == 4, || format!("count {c}"))
}

fn ty_candidates() -> Outcome {
    for p in [3u64, 5, 13] {
        let m = build_ty_candidate(p, 1, XiBranch::PlusRootNegXi).map_err(|e| e.to_string())?;
        let rep = check_axioms(&m).map_err(|e| e.to_string())?;
        check(rep.passes(), || format!("p = {p}: {rep:?}"))?;
        check(rep.global_dimension == Cyclotomic::from_int(4 * p as i64, 1), || {
            format!("p = {p}: global dimension")
        })?;
        let r = ring_of(&m)?;
        check(verify_axioms(&r).passes(), || format!("p = {p}: ring axioms"))?;
        let fp = fpdim_vector(&m).map_err(|e| e.to_string())?;
        let root = gauss_sqrt(p, 4 * p as u32).map_err(|e| e.to_string())?;
        let k = fp.values.iter().filter(|x| **x == root).count();
        check(k == 2, || format!("p = {p}: {k} entries equal √p"))?;
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(1000)
    });
    runner
        .run(&common::cyclotomic_triple(), |(a, b, c)| common::field_axioms(&a, &b, &c))
        .map_err(|e| format!("field axioms: {e}"))?;
    runner
        .run(&common::galois_case(), |(a, b, k1, k2)| common::galois_laws(&a, &b, k1, k2))
        .map_err(|e| format!("galois: {e}"))?;
    runner
        .run(&(common::squarefree_upto_100(), 1u32..=3), |(m, k)| common::gauss_square(m, k))
        .map_err(|e| format!("gauss_sqrt: {e}"))?;
    runner
        .run(&common::quad_pair(), |(x, y)| common::quad_laws(&x, &y))
        .map_err(|e| format!("quad_norm: {e}"))?;
    for m in (2u64..=100).filter(|m| nt::is_squarefree(*m)) {
        common::gauss_square(m, 1).map_err(|e| format!("gauss_sqrt({m}): {e}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, Option<Duration>, fn() -> Outcome); 8] = [
        (1, "Eholzer relations, p <= 31", Some(Duration::from_secs(10)), eholzer_relations),
        (2, "gate theorem, q <= 100", Some(Duration::from_secs(1)), gate_theorem),
        (3, "(3,7) Case-2 candidate", Some(Duration::from_secs(5)), case2_candidate),
        (4, "Eholzer Verlinde non-integrality", Some(Duration::from_secs(5)), eholzer_non_integral),
        (5, "extension rings, n = 1..40", Some(Duration::from_secs(30)), extension_suite),
        (6, "trivial-twist count", Some(Duration::from_secs(1)), trivial_twists),
        (7, "TY candidates, p in {3, 5, 13}", Some(Duration::from_secs(10)), ty_candidates),
        (8, "property suites, 1000 cases", None, property_suites),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let res = match (res, budget) {
            (Ok(()), Some(b)) if took > b => Err(format!("over budget {b:?}")),
            (r, _) => r,
        };
        let secs = took.as_secs_f64();
        match res {
            Ok(()) => writeln!(out, "criterion {id}: PASS  {name} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                writeln!(out, "criterion {id}: FAIL  {name} ({secs:.2}s): {e}")
            }
        }
        .unwrap();
    }
    writeln!(out, "acceptance: {} of 8 passed", 8 - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
