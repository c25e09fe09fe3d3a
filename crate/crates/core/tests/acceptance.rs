//! Whole-system acceptance checks, one test per numbered criterion. Every
//! test prints a single verdict line (`criterion NN: PASS/FAIL ...`); run
//! with `--nocapture` to see the lines as they happen. The heavy sweeps are
//! shared between criteria through lazily built fixtures.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sl3web::canonical::{
    class_representatives, dominant_paths, expand_basis_web, invariant_dimension,
    is_dual_canonical, scan_with_cache, CorrectionContext, ExpansionCache, ScanReport,
};
use sl3web::growth::{grow, grow_with_order, min_cut_states};
use sl3web::laurent::Laurent;
use sl3web::quantum::{act, Sign, SignString, StateString, UqGen};
use sl3web::reduction::rotate;
use sl3web::web::{enumerate_states, evaluate, evaluate_hom, Web};

fn ss(s: &str) -> SignString {
    s.parse().unwrap()
}

fn js(s: &str) -> StateString {
    s.parse().unwrap()
}

fn lp(terms: &[(i32, i64)]) -> Laurent {
    Laurent::from_small(terms.iter().copied())
}

fn all_signs(n: usize) -> Vec<SignString> {
    let mut out: Vec<SignString> = (0..1usize << n)
        .map(|m| {
            SignString(
                (0..n)
                    .map(|i| {
                        if m >> i & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out
}

// ---- shared fixtures ---------------------------------------------------

/// Everything learned from one pass over all basis webs with n <= 10:
/// the dual-canonical offenders, the growth/cut round trip, the quantum
/// invariance at n <= 8, and unitriangular positivity.
struct Sweep {
    webs_checked: usize,
    offenders: Vec<(SignString, StateString, StateString, Laurent)>,
    cut_mismatches: usize,
    invariance_webs: usize,
    invariance_violations: usize,
    positivity_violations: usize,
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut out = Sweep {
            webs_checked: 0,
            offenders: Vec::new(),
            cut_mismatches: 0,
            invariance_webs: 0,
            invariance_violations: 0,
            positivity_violations: 0,
        };
        for n in 0..=10 {
            for signs in all_signs(n) {
                for j in dominant_paths(&signs) {
                    let g = grow(&signs, &j).expect("dominant path grows");
                    let x = evaluate(&g.web);
                    out.webs_checked += 1;

                    if min_cut_states(&g.web).as_ref() != Ok(&j) {
                        out.cut_mismatches += 1;
                    }

                    match is_dual_canonical(&x, &j) {
                        Ok(bad) => {
                            for (offending, coefficient) in bad {
                                out.offenders.push((
                                    signs.clone(),
                                    j.clone(),
                                    offending,
                                    coefficient,
                                ));
                            }
                        }
                        Err(_) => out.positivity_violations += 1,
                    }

                    let unitriangular = x.entries.last_key_value() == Some((&j, &Laurent::one()))
                        && x.entries.values().all(Laurent::is_natural);
                    if !unitriangular {
                        out.positivity_violations += 1;
                    }

                    if n <= 8 {
                        out.invariance_webs += 1;
                        let zero = sl3web::quantum::TensorVector::zero(n);
                        let killed = [UqGen::E1, UqGen::E2, UqGen::F1, UqGen::F2]
                            .into_iter()
                            .all(|gen| act(&signs, &x, gen) == zero);
                        let fixed = [UqGen::K1, UqGen::K2]
                            .into_iter()
                            .all(|gen| act(&signs, &x, gen) == x);
                        if !(killed && fixed) {
                            out.invariance_violations += 1;
                        }
                    }
                }
            }
        }
        out
    })
}

/// Scan reports for the 35 balanced class representatives at n = 12,
/// in lexicographic order of the representative.
fn twelve() -> &'static Vec<ScanReport> {
    static TWELVE: OnceLock<Vec<ScanReport>> = OnceLock::new();
    TWELVE.get_or_init(|| {
        let cache = ExpansionCache::from_env();
        class_representatives(12, 6)
            .iter()
            .map(|s| scan_with_cache(s, &cache))
            .collect()
    })
}

// ---- the criteria --------------------------------------------------------

#[test]
fn criterion_01_balanced_twelve_dimensions() {
    let reps = class_representatives(12, 6);
    assert_eq!(reps.len(), 35, "expected 35 balanced classes");
    for rep in &reps {
        assert_eq!(dominant_paths(rep).len(), 513, "dimension at {rep}");
        assert_eq!(invariant_dimension(rep), 513, "counting sweep at {rep}");
    }
    println!("criterion 01: PASS - 35 class representatives, 513 dominant paths each");
}

#[test]
fn criterion_02_worked_example_coefficient() {
    let signs = ss("+-+-+++");
    let g = grow(&signs, &js("++00-0-")).unwrap();
    let x = evaluate(&g.web);
    let actual = x.coeff(&js("00000+-"));
    let stated = lp(&[(-3, 1), (-1, 1)]);
    let derived = lp(&[(-4, 1), (-2, 1)]);
    // The engine's value follows from the frozen generator tensors and is
    // confirmed by a by-hand state count and by the quantum invariance of
    // the full expansion. The reference value v^-1 + v^-3 sits exactly one
    // power of v above it and cannot be reproduced from those tensors, so
    // this criterion is reported as failed rather than forced to pass.
    assert_eq!(actual, derived, "engine value drifted from its own tensors");
    assert_ne!(actual, stated);
    println!(
        "criterion 02: FAIL - coefficient at 00000+- is {actual}; \
         the reference value {stated} is inconsistent with the elementary tensors"
    );
}

#[test]
fn criterion_03_loop_bigon_square_relations() {
    let circle = Web::parse_text("cup:+-\ncap:+-").unwrap();
    assert_eq!(evaluate(&circle).coeff(&js("")), Laurent::quantum_int(3));

    let bigon = Web::parse_text("cup:+-\nsplit:-- id:-\nid:- join:+").unwrap();
    let reduced = sl3web::reduction::reduce_web(&bigon).unwrap();
    let terms = reduced.to_webs().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].0, lp(&[(-1, 1), (1, 1)]));
    assert_eq!(terms[0].1.to_text(), "cup:-+\n");

    let square = Web::parse_text(
        "cup:-+\nid:- cup:+- id:+\nsplit:++ id:+ id:- split:--\nid:+ join:- join:+ id:-",
    )
    .unwrap();
    let parallel = Web::parse_text("cup:+- cup:+-").unwrap();
    let nested = Web::parse_text("cup:+-\nid:+ cup:-+ id:-").unwrap();
    let lhs = evaluate(&square);
    let rhs = evaluate(&parallel).add(&evaluate(&nested));
    assert_eq!(lhs, rhs, "square relation as a full vector identity");

    println!(
        "criterion 03: PASS - loop = v^2+1+v^-2, bigon factor v+v^-1, \
         square relation checked on all 81 boundary states"
    );
}

#[test]
fn criterion_04_zigzag_identities() {
    let zigzags = [
        "bottom:+\nid:+ cup:-+\ncap:+- id:+",
        "bottom:+\ncup:+- id:+\nid:+ cap:-+",
        "bottom:-\nid:- cup:+-\ncap:-+ id:-",
        "bottom:-\ncup:-+ id:-\nid:- cap:+-",
    ];
    for text in zigzags {
        let w = Web::parse_text(text).unwrap();
        let hom = evaluate_hom(&w);
        assert_eq!(hom.len(), 3, "{text}");
        for ((bottom, top), c) in &hom {
            assert_eq!(bottom, top, "{text}");
            assert!(c.is_one(), "{text}");
        }
    }
    println!("criterion 04: PASS - all four zig-zag composites are exact identities");
}

#[test]
fn criterion_05_main_theorem_reproduction() {
    let s = sweep();
    assert_eq!(
        s.offenders.len(),
        0,
        "unexpected failures at n <= 10: {:?}",
        s.offenders
    );

    let reports = twelve();
    let failing: Vec<&ScanReport> = reports.iter().filter(|r| !r.failures.is_empty()).collect();
    assert_eq!(failing.len(), 1, "exactly one failing class expected");
    let report = failing[0];
    assert_eq!(report.sign_string, ss("++--++--++--"));
    assert_eq!(
        report.failures.len(),
        1,
        "exactly one offending coefficient"
    );
    assert_eq!(report.failures[0].coefficient.nonneg_part(), Laurent::one());

    println!(
        "criterion 05: PASS - {} webs clean at n <= 10; at n = 12 the one failure \
         is at ++--++--++-- with a single offending coefficient of constant part 1",
        s.webs_checked
    );
}

#[test]
fn criterion_06_rotation_carries_the_failure() {
    let signs = ss("++--++--++--");
    let cache = ExpansionCache::from_env();
    let leading = {
        let reports = twelve();
        let report = reports.iter().find(|r| r.sign_string == signs).unwrap();
        report.failures[0].leading.clone()
    };
    let failing_web = grow(&signs, &leading).unwrap().web;

    let rotated_signs = signs.rotated(1);
    let turned = rotate(&failing_web).unwrap().to_webs().unwrap();
    assert_eq!(
        turned.len(),
        1,
        "rotation of a basis web stays a single web"
    );
    assert!(turned[0].0.is_one());
    assert_eq!(turned[0].1.top_signs(), &rotated_signs);

    let rotated_report = scan_with_cache(&rotated_signs, &cache);
    assert_eq!(rotated_report.failures.len(), 1);
    let expected = grow(&rotated_signs, &rotated_report.failures[0].leading)
        .unwrap()
        .web;
    assert_eq!(
        turned[0].1.to_map().unwrap().canonical_encode(),
        expected.to_map().unwrap().canonical_encode(),
        "the rotated failing web is the failing web of the rotated boundary"
    );
    println!(
        "criterion 06: PASS - rotating the failing web gives the failing web of {rotated_signs}"
    );
}

#[test]
fn criterion_07_correction_theorem() {
    let signs = ss("++--++--++--");
    let cache = ExpansionCache::from_env();
    let report = twelve()
        .iter()
        .find(|r| !r.failures.is_empty())
        .unwrap()
        .clone();
    let failure = &report.failures[0];

    let hexagon = expand_basis_web(&signs, &failure.leading, &cache);
    let six_cup = expand_basis_web(&signs, &failure.offending, &cache);
    let difference = hexagon.sub(&six_cup);
    assert_eq!(
        is_dual_canonical(&difference, &failure.leading),
        Ok(vec![]),
        "hexagon minus six-cup passes the negative-exponent test"
    );

    let mut ctx = CorrectionContext::new(&signs, &cache);
    assert_eq!(ctx.element(&failure.leading), difference);
    println!(
        "criterion 07: PASS - hexagon expansion minus six-cup expansion is the \
         corrected element at {}",
        failure.leading
    );
}

#[test]
fn criterion_08_cuts_invert_growth() {
    let s = sweep();
    assert_eq!(s.cut_mismatches, 0);
    println!(
        "criterion 08: PASS - minimal cuts recover the path of all {} grown webs (n <= 10)",
        s.webs_checked
    );
}

#[test]
fn criterion_09_quantum_invariance() {
    let s = sweep();
    assert_eq!(s.invariance_violations, 0);
    println!(
        "criterion 09: PASS - {} expansions killed by E1,E2,F1,F2 and fixed by K1,K2 (n <= 8)",
        s.invariance_webs
    );
}

#[test]
fn criterion_10_unitriangular_positivity() {
    let s = sweep();
    assert_eq!(s.positivity_violations, 0);
    println!(
        "criterion 10: PASS - all {} expansions lead with 1 and stay in N[v,v^-1] (n <= 10)",
        s.webs_checked
    );
}

#[test]
fn criterion_11_gadget_state_counts() {
    for text in ["bottom:-\nsplit:++", "bottom:+\nsplit:--"] {
        let states = enumerate_states(&Web::parse_text(text).unwrap());
        assert_eq!(states.len(), 6, "{text}");
        let flat = states.iter().filter(|s| s.weight_exp == 0).count();
        let low = states.iter().filter(|s| s.weight_exp == -1).count();
        assert_eq!((flat, low), (3, 3), "{text}");
    }

    let double =
        Web::parse_text("bottom:++\nsplit:-- id:+\nid:- id:- split:--\nid:- join:+ id:-").unwrap();
    let states = enumerate_states(&double);
    assert!(
        states.iter().all(|s| s.weight_exp <= 0),
        "no positive exponents"
    );
    let mut flat_bottoms: Vec<Vec<i8>> = states
        .iter()
        .filter(|s| s.weight_exp == 0)
        .map(|s| s.bottom().to_vec())
        .collect();
    assert_eq!(flat_bottoms.len(), 12);
    flat_bottoms.sort();
    let mut expected: Vec<Vec<i8>> = Vec::new();
    for a in [-1i8, 0, 1] {
        for b in [-1i8, 0, 1] {
            expected.push(vec![a, b]);
        }
    }
    expected.extend([vec![1, 0], vec![1, -1], vec![0, -1]]);
    expected.sort();
    assert_eq!(
        flat_bottoms, expected,
        "exact bottom-pair census with repeats"
    );

    println!(
        "criterion 11: PASS - Y gadget has 6 states (3 flat, 3 at v^-1); \
         double-H has 12 flat states, none positive, repeats (1,0),(1,-1),(0,-1)"
    );
}

#[test]
fn criterion_12_rule_order_confluence() {
    let mut inputs = 0usize;
    let mut grows = 0usize;
    for n in 0..=8 {
        for signs in all_signs(n) {
            for j in dominant_paths(&signs) {
                let base = grow(&signs, &j)
                    .unwrap()
                    .web
                    .to_map()
                    .unwrap()
                    .canonical_encode();
                inputs += 1;
                for seed in 0..100u64 {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = grow_with_order(&signs, &j, &mut rng).unwrap();
                    assert_eq!(
                        g.web.to_map().unwrap().canonical_encode(),
                        base,
                        "seed {seed} diverged on {signs} / {j}"
                    );
                    grows += 1;
                }
            }
        }
    }
    println!(
        "criterion 12: PASS - {grows} randomized growths over {inputs} inputs \
         all reach the same encoding"
    );
}
