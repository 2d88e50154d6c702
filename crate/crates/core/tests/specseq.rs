use std::collections::BTreeMap;

use k2local::specseq::{parse_rules, run_target, validate_rules, Hfpss, Target, G20_UNCORRECTED_RULES, G20_RULES, G24_RULES};
use k2local::{Gen, Window};

/// Stems of E∞ for G24 in one period, one class each.
const G24_STEMS: [i32; 27] =
    [0, 3, 8, 10, 11, 13, 16, 18, 19, 20, 21, 26, 27, 28, 29, 30, 35, 36, 37, 38, 40, 43, 45, 46, 48, 53, 56];

fn per_stem_mod(table: &k2local::specseq::HomotopyTable, period: i32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for c in &table.classes {
        *out.entry(c.stem.rem_euclid(period)).or_insert(0) += table.field.degree();
    }
    out
}

/// G2^0 families: generator stem, β-truncation, allowed v2-powers l
/// (stem 16 l), all tensored with Λ(ζ) and repeated every 72 stems.
fn g20_oracle() -> BTreeMap<i32, usize> {
    g20_oracle_with(&[0, 1, 5])
}

/// Same, with the v2-powers of the βa35 family given explicitly.
fn g20_oracle_with(beta_a35: &[i32]) -> BTreeMap<i32, usize> {
    let fam: [(i32, i32, &[i32]); 8] = [
        (0, 5, &[0, 1, 5]),
        (3, 3, &[0, 1, 2, 5, 6, 7]),
        (18, 4, &[0, 4, 5]),
        (11, 2, &[0, 1, 2, 4, 5, 6]),
        (45, 4, beta_a35),
        (38, 3, &[0, 1, 2, 5, 6, 7]),
        (53, 5, &[0, 4, 5]),
        (56, 2, &[0, 1, 2, 4, 5, 6]),
    ];
    let mut out = BTreeMap::new();
    for (g, n, ls) in fam {
        for &l in ls {
            for j in 0..n {
                for e in 0..2 {
                    *out.entry((g + 16 * l + 10 * j - e).rem_euclid(72)).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

#[test]
fn g24_matches_the_period_72_pattern() {
    let run = run_target(Target::G24, &Window::stems(0, 143, 40)).unwrap();
    assert!(run.issues.is_empty(), "{:?}", &run.issues[..run.issues.len().min(3)]);
    let dims = per_stem_mod(&run.table, 72);
    let expect: BTreeMap<i32, usize> = G24_STEMS.iter().map(|&n| (n, 2)).collect();
    assert_eq!(dims, expect);
}

#[test]
fn g12_is_twice_g24() {
    let a = run_target(Target::G24, &Window::stems(-20, 100, 30)).unwrap();
    let b = run_target(Target::G12, &Window::stems(-20, 100, 30)).unwrap();
    assert!(b.issues.is_empty());
    let da = a.table.dims_by_stem();
    let db = b.table.dims_by_stem();
    for (n, d) in da {
        assert_eq!(db[&n], 2 * d, "stem {n}");
    }
}

#[test]
fn g20_matches_the_family_description() {
    let run = run_target(Target::G20, &Window::stems(0, 143, 40)).unwrap();
    assert!(run.issues.is_empty(), "{:?}", &run.issues[..run.issues.len().min(3)]);
    let got: BTreeMap<i32, usize> = per_stem_mod(&run.table, 72).into_iter().map(|(n, d)| (n, d / 2)).collect();
    assert_eq!(got, g20_oracle());
}

#[test]
fn beta_a35_with_powers_0_4_5_is_not_self_dual() {
    let run = run_target(Target::G20, &Window::stems(0, 143, 40)).unwrap();
    let got: BTreeMap<i32, usize> = per_stem_mod(&run.table, 72).into_iter().map(|(n, d)| (n, d / 2)).collect();
    let alt = g20_oracle_with(&[0, 4, 5]);
    assert_ne!(got, alt);
    // the disagreement is βa35 · v2 versus βa35 · v2^4, j β-multiples, with and without ζ
    let mut expect: Vec<i32> = Vec::new();
    for l in [1i32, 4] {
        for j in 0..4 {
            for e in 0..2 {
                expect.push((45 + 16 * l + 10 * j - e).rem_euclid(72));
            }
        }
    }
    expect.sort();
    expect.dedup();
    let differ: Vec<i32> = (0..72).filter(|n| got.get(n) != alt.get(n)).collect();
    assert!(differ.iter().all(|n| expect.contains(n)), "{differ:?}");
    assert!(!differ.is_empty());
    // with period 72, duality n <-> 28 - n holds for the run and fails for {0, 4, 5}
    let sym = |m: &BTreeMap<i32, usize>| (0..72).all(|n| m.get(&n) == m.get(&(28 - n).rem_euclid(72)));
    assert!(sym(&got));
    assert!(!sym(&alt));
}

#[test]
fn uncorrected_rules_fail_validation_and_corrected_rules_pass() {
    let win = Window::stems(-40, 120, 30);
    let e2 = Target::G20.e2(&win).unwrap();
    let ok = validate_rules(&parse_rules(G20_RULES).unwrap(), &e2, &Hfpss, &win).unwrap();
    assert!(ok.ok(), "{:?}", &ok.violations[..ok.violations.len().min(3)]);
    let bad = validate_rules(&parse_rules(G20_UNCORRECTED_RULES).unwrap(), &e2, &Hfpss, &win).unwrap();
    assert!(!bad.ok());
    assert!(bad.violations.iter().any(|v| v.contains("wrong bidegree")));
    let e2 = Target::G24.e2(&win).unwrap();
    assert!(validate_rules(&parse_rules(G24_RULES).unwrap(), &e2, &Hfpss, &win).unwrap().ok());
}

#[test]
fn g21_is_the_even_zeta_free_part() {
    let win = Window::stems(0, 150, 40);
    let g20 = run_target(Target::G20, &win).unwrap();
    let g21 = run_target(Target::G21, &win).unwrap();
    let even: Vec<_> = g20
        .table
        .classes
        .iter()
        .filter_map(|c| c.monomial)
        .filter(|m| m.exp(Gen::Zeta) == 0 && m.exp(Gen::V2h) == 0)
        .collect();
    let got: Vec<_> = g21.table.classes.iter().filter_map(|c| c.monomial).collect();
    assert_eq!(got.len(), g21.table.classes.len());
    let mut even_sorted = even.clone();
    even_sorted.sort();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    assert_eq!(got_sorted, even_sorted);
}
