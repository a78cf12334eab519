use modforge::exactnum::{nt, real_sign};
use modforge::fusionring::{fusion_subrings, verify_axioms};
use modforge::modulardata::{
    build_candidate, build_pointed, cauchy_check, check_axioms, deligne_product, fpdim_vector,
    gauss_sums, reverse_braiding, to_sl2rep, trivial_twist_count, verlinde, Case,
    QuadraticFormSpec, VerlindeOutcome,
};
use modforge::slrep::verify_sl2_relations;

fn params(q: u64, case: Case) -> (i64, i64) {
    match case {
        Case::One => (1, 1),
        Case::Two => (1, nt::smallest_nonresidue(q).unwrap() as i64),
    }
}

#[test]
fn seven_eleven_both_cases() {
    for case in [Case::One, Case::Two] {
        let (a1, a2) = params(11, case);
        let m = build_candidate(7, 11, case, a1, a2).unwrap();
        assert_eq!(m.rank(), 10);
        let rep = check_axioms(&m).unwrap();
        assert!(rep.passes(), "{case:?}: {rep:?}");
        assert_eq!(rep.t_order, Some(77));
        let VerlindeOutcome::Ring(r) = verlinde(&m).unwrap() else {
            panic!("{case:?}: Verlinde not integral");
        };
        assert!(verify_axioms(&r).passes());
        assert_eq!(fusion_subrings(&r).unwrap().len(), 2);
        assert!(cauchy_check(&m).unwrap().passes());
        let sl = to_sl2rep(&m).unwrap();
        assert!(verify_sl2_relations(&sl).unwrap().passes());
        let fp = fpdim_vector(&m).unwrap();
        assert!(fp.values.iter().all(|x| real_sign(x).unwrap() > 0));
        assert_eq!(fp.row, if case == Case::One { 1 } else { 0 });
    }
}

#[test]
fn gauss_sums_multiply_to_dimension() {
    let m = build_candidate(3, 7, Case::Two, 1, 3).unwrap();
    let g = gauss_sums(&m).unwrap();
    let rep = check_axioms(&m).unwrap();
    assert_eq!(&g.plus * &g.minus, rep.global_dimension);
    assert!(g.central_charge.root_of_unity_order().is_some());
}

#[test]
fn twist_count_for_seven() {
    // p + 1 trivial twists after pairing with the reversed pointed datum on Z_p
    let (a1, a2) = params(11, Case::Two);
    let m = build_candidate(7, 11, Case::Two, a1, a2).unwrap();
    let z7 = build_pointed(QuadraticFormSpec { n: 7, a: a1 }).unwrap();
    let d = deligne_product(&m, &reverse_braiding(&z7)).unwrap();
    assert_eq!(trivial_twist_count(&d), 8);
}
