//! Acceptance suite: one test per criterion, each printing a verdict line.
//!
//! Everything is exact arithmetic; every equality below is literal matrix
//! equality with no tolerance.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;
use weakwreath::algebra::{Coalgebra, Demimonad};
use weakwreath::bialgebra::{
    canonical_lambda, canonical_lambda_hat, check_weak_bialgebra, cyclic_group_table, dual,
    group_algebra, pair_groupoid_algebra, symmetric3_table, WeakBialgebra,
};
use weakwreath::field::{FieldDesc, Scalar};
use weakwreath::linmap::{LinMap, Space};
use weakwreath::matrix::Matrix;
use weakwreath::oracle::observable_dimension_oracle;
use weakwreath::spinchain::{
    build_spin_chain, explicit_chain_idempotent, observable_algebra, SiteParity, SpinChainSpec,
};
use weakwreath::wdl::{
    binary_factorize, check_wdl, derived_identities_report, lambda_bar, weak_wreath,
    WeakDistributiveLaw,
};
use weakwreath::wdln::{
    arrow_identity_report, build_cube, check_associativity, nary_factorization_check, verify_cube,
    FactorizationData,
};
use weakwreath_cli::commands::load_golden;

const Q: FieldDesc = FieldDesc::Rational;

fn verdict(number: u32, name: &str, pass: bool) {
    println!(
        "ACCEPTANCE {number} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion {number} ({name}) failed");
}

fn zoo() -> Vec<(&'static str, WeakBialgebra)> {
    vec![
        ("f", group_algebra(&cyclic_group_table(1), Q).unwrap()),
        ("z2", group_algebra(&cyclic_group_table(2), Q).unwrap()),
        ("z3", group_algebra(&cyclic_group_table(3), Q).unwrap()),
        ("s3", group_algebra(&symmetric3_table(), Q).unwrap()),
        ("m1", pair_groupoid_algebra(1, Q)),
        ("m2", pair_groupoid_algebra(2, Q)),
        ("m3", pair_groupoid_algebra(3, Q)),
    ]
}

/// Both canonical laws of a dual pair: λ between (t=H, s=Ĥ) and λ̂ between
/// (t=Ĥ, s=H).
fn canonical_laws(h: &WeakBialgebra) -> Vec<(String, WeakDistributiveLaw, bool)> {
    let pair = dual(h).unwrap();
    let strict = check_weak_bialgebra(h).strict_unit;
    let t = Demimonad::from_algebra(pair.h.algebra());
    let s = Demimonad::from_algebra(pair.hat.algebra());
    let lam = WeakDistributiveLaw::new(t.clone(), s.clone(), canonical_lambda(&pair)).unwrap();
    let lam_hat = WeakDistributiveLaw::new(s, t, canonical_lambda_hat(&pair)).unwrap();
    vec![
        ("lambda".to_string(), lam, strict),
        ("lambda_hat".to_string(), lam_hat, strict),
    ]
}

fn workspace_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

#[test]
fn criterion_01_axiom_suites() {
    let started = Instant::now();
    let mut pass = true;
    for (name, h) in zoo() {
        let r = check_weak_bialgebra(&h);
        if !r.passed() {
            eprintln!("zoo member {name} failed:\n{}", r.report);
            pass = false;
        }
    }

    // five mutated counterexamples, each expected to fail with a witness
    let z2 = group_algebra(&cyclic_group_table(2), Q).unwrap();
    let z3 = group_algebra(&cyclic_group_table(3), Q).unwrap();
    let m2 = pair_groupoid_algebra(2, Q);
    let mut mutants: Vec<(&str, WeakBialgebra)> = Vec::new();

    // 1: counit erased
    let zero_counit =
        LinMap::new(z2.space().clone(), Space::scalar(), Matrix::zero(1, 2, Q)).unwrap();
    mutants.push((
        "z2_zero_counit",
        WeakBialgebra::new(
            z2.algebra().clone(),
            Coalgebra::new(z2.space().clone(), z2.comul().clone(), zero_counit).unwrap(),
        ),
    ));
    // 2: unit moved to the non-identity group element
    let bad_unit = LinMap::new(
        Space::scalar(),
        z2.space().clone(),
        Matrix::from_int_rows(Q, &[vec![0], vec![1]]),
    )
    .unwrap();
    mutants.push((
        "z2_shifted_unit",
        WeakBialgebra::new(
            weakwreath::algebra::Algebra::new(z2.space().clone(), z2.mul().clone(), bad_unit)
                .unwrap(),
            z2.coalgebra().clone(),
        ),
    ));
    // 3: comultiplication collapsed onto a fixed right leg
    let collapsed =
        Matrix::from_triplets(9, 3, Q, (0..3).map(|g| (g * 3, g, Scalar::one(Q)))).unwrap();
    let collapsed =
        LinMap::new(z3.space().clone(), z3.space().tensor(z3.space()), collapsed).unwrap();
    mutants.push((
        "z3_collapsed_comul",
        WeakBialgebra::new(
            z3.algebra().clone(),
            Coalgebra::new(z3.space().clone(), collapsed, z3.counit().clone()).unwrap(),
        ),
    ));
    // 4: one diagonal comultiplication entry points at the wrong basis pair
    let mut comul_triplets: Vec<(usize, usize, Scalar)> = vec![
        (0, 0, Scalar::one(Q)),
        (4 + 2, 1, Scalar::one(Q)), // Δ(e01) = e01⊗e10 instead of e01⊗e01
        (2 * 4 + 2, 2, Scalar::one(Q)),
        (3 * 4 + 3, 3, Scalar::one(Q)),
    ];
    comul_triplets[0] = (0, 0, Scalar::one(Q));
    let crossed = LinMap::new(
        m2.space().clone(),
        m2.space().tensor(m2.space()),
        Matrix::from_triplets(16, 4, Q, comul_triplets).unwrap(),
    )
    .unwrap();
    mutants.push((
        "m2_crossed_comul",
        WeakBialgebra::new(
            m2.algebra().clone(),
            Coalgebra::new(m2.space().clone(), crossed, m2.counit().clone()).unwrap(),
        ),
    ));
    // 5: counit vanishing on one basis element
    let partial_counit = LinMap::new(
        m2.space().clone(),
        Space::scalar(),
        Matrix::from_int_rows(Q, &[vec![1, 0, 1, 1]]),
    )
    .unwrap();
    mutants.push((
        "m2_partial_counit",
        WeakBialgebra::new(
            m2.algebra().clone(),
            Coalgebra::new(m2.space().clone(), m2.comul().clone(), partial_counit).unwrap(),
        ),
    ));

    for (name, mutant) in &mutants {
        let r = check_weak_bialgebra(mutant);
        let failed_with_witness = r.report.failures().any(|item| item.witness.is_some());
        if r.passed() || !failed_with_witness {
            eprintln!("mutant {name} did not fail with a witness");
            pass = false;
        }
    }
    pass &= mutants.len() == 5;
    let within_budget = started.elapsed().as_secs_f64() < 10.0;
    if !within_budget {
        eprintln!("axiom suite exceeded 10 s: {:?}", started.elapsed());
    }
    verdict(1, "axiom suites", pass && within_budget);
}

#[test]
fn criterion_02_wdl_suite() {
    let mut pass = true;
    for (name, h) in zoo() {
        for (law_name, law, strict) in canonical_laws(&h) {
            let r = check_wdl(&law);
            if !r.passed() {
                eprintln!("{name}.{law_name} fails:\n{r}");
                pass = false;
            }
            let bar = lambda_bar(&law).unwrap();
            let is_identity = bar.same_map(&LinMap::identity(bar.domain(), Q));
            if is_identity != strict {
                eprintln!("{name}.{law_name}: identity(λ̄)={is_identity} but strict={strict}");
                pass = false;
            }
        }
    }
    verdict(2, "canonical laws and strictness", pass);
}

fn m2_chain_object(n: usize) -> weakwreath::wdln::WdlNObject {
    build_spin_chain(&SpinChainSpec::new(pair_groupoid_algebra(2, Q), n)).unwrap()
}

fn z2_chain_object(n: usize) -> weakwreath::wdln::WdlNObject {
    build_spin_chain(&SpinChainSpec::new(
        group_algebra(&cyclic_group_table(2), Q).unwrap(),
        n,
    ))
    .unwrap()
}

#[test]
fn criterion_03_derived_identities() {
    let mut pass = true;
    for (name, h) in zoo() {
        for (law_name, law, _) in canonical_laws(&h) {
            let r = derived_identities_report(&law);
            if !r.passed() {
                eprintln!("{name}.{law_name} derived identities fail:\n{r}");
                pass = false;
            }
        }
    }
    for (name, o) in [("z2", z2_chain_object(2)), ("m2", m2_chain_object(2))] {
        let r = arrow_identity_report(&o).unwrap();
        if !r.passed() {
            eprintln!("{name} triple arrow identities fail:\n{r}");
            pass = false;
        }
        let triple_items: Vec<_> = r
            .items()
            .iter()
            .filter(|i| i.name.starts_with("triple_idem"))
            .collect();
        pass &= triple_items.len() == 3 && triple_items.iter().all(|i| i.pass);
    }
    verdict(3, "derived identities", pass);
}

#[test]
fn criterion_04_associativity() {
    let started = Instant::now();
    let mut pass = true;
    for n in [2usize, 3] {
        let o = m2_chain_object(n);
        let r = check_associativity(&o).unwrap();
        if !r.passed() {
            eprintln!("associativity fails for n={n}:\n{r}");
            pass = false;
        }
        let composites = r.items().len() / 3;
        let expected: usize = (1..=n).product();
        pass &= composites == expected;
    }
    let within_budget = started.elapsed().as_secs_f64() < 300.0;
    if !within_budget {
        eprintln!("associativity exceeded 5 min: {:?}", started.elapsed());
    }
    verdict(4, "all fusion orders agree", pass && within_budget);
}

#[test]
fn criterion_05_explicit_idempotent_formulas() {
    let mut pass = true;
    let z2 = group_algebra(&cyclic_group_table(2), Q).unwrap();
    for n in 1..=4 {
        if explicit_chain_idempotent(&SpinChainSpec::new(z2.clone(), n)).is_err() {
            eprintln!("explicit formula mismatch for z2, n={n}");
            pass = false;
        }
    }
    let m2 = pair_groupoid_algebra(2, Q);
    for n in 1..=3 {
        if explicit_chain_idempotent(&SpinChainSpec::new(m2.clone(), n)).is_err() {
            eprintln!("explicit formula mismatch for m2, n={n}");
            pass = false;
        }
    }
    verdict(5, "two-layer idempotent formulas", pass);
}

#[test]
fn criterion_06_strict_dimension_law() {
    let mut pass = true;
    let z2 = group_algebra(&cyclic_group_table(2), Q).unwrap();
    for (n, expected) in [(1usize, 4usize), (2, 8), (3, 16)] {
        let (_, dim) = observable_algebra(&SpinChainSpec::new(z2.clone(), n)).unwrap();
        if dim != expected {
            eprintln!("strict dim for n={n}: got {dim}, want {expected}");
            pass = false;
        }
    }
    verdict(6, "strict dimension law", pass);
}

#[test]
fn criterion_07_golden_weak_dimensions() {
    let mut pass = true;
    let golden = load_golden(&workspace_dir().join("data/golden.txt")).unwrap();
    let m2 = pair_groupoid_algebra(2, Q);
    for n in 1..=3usize {
        let by_oracle = observable_dimension_oracle(&m2, n, SiteParity::default()).unwrap();
        let (_, by_engine) = observable_algebra(&SpinChainSpec::new(m2.clone(), n)).unwrap();
        if by_oracle != by_engine {
            eprintln!("route disagreement at n={n}: oracle={by_oracle} engine={by_engine}");
            pass = false;
        }
        let key = format!("m2_n{n}_observable_dim");
        if golden.get(&key).map(String::as_str) != Some(by_engine.to_string().as_str()) {
            eprintln!("golden table stale for {key} (computed {by_engine})");
            pass = false;
        }
    }
    verdict(7, "two-route golden dimensions", pass);
}

#[test]
fn criterion_08_cube_and_factorization() {
    let mut pass = true;
    let o = m2_chain_object(2);
    let cube = build_cube(&o).unwrap();
    let verification = verify_cube(&cube);
    if !verification.passed() {
        eprintln!("cube verification fails:\n{verification}");
        pass = false;
    }
    let faces = verification
        .items()
        .iter()
        .filter(|i| i.name.starts_with("face["))
        .count();
    pass &= faces == 6;
    let mut edge_tags: BTreeMap<String, bool> = BTreeMap::new();
    for item in verification.items() {
        if let Some(rest) = item.name.strip_prefix("edge[") {
            let tag = rest.split(']').next().unwrap_or("").to_string();
            *edge_tags.entry(tag).or_insert(true) &= item.pass;
        }
    }
    pass &= edge_tags.len() == 12 && edge_tags.values().all(|&p| p);

    let data = FactorizationData::canonical(cube.clone());
    let fact = nary_factorization_check(&data);
    if !fact.passed() {
        eprintln!("factorization check fails:\n{fact}");
        pass = false;
    }
    pass &= fact.items().iter().any(|i| i.name.starts_with("a."));
    pass &= fact.items().iter().any(|i| i.name.starts_with("b["));
    pass &= fact.items().iter().any(|i| i.name.starts_with("c["));

    // corrupting any single section must break condition (b)
    for (p, q) in [(1u32, 2u32), (1, 6), (3, 4)] {
        let mut corrupted = FactorizationData::canonical(cube.clone());
        let iota = corrupted.section(p, q).scale(&Scalar::from_integer(Q, 2));
        corrupted.set_section(p, q, iota);
        let r = nary_factorization_check(&corrupted);
        let b_failed = r
            .failures()
            .any(|i| i.name.starts_with("b[") && i.name.ends_with(".section"));
        if !b_failed {
            eprintln!("corrupted section ({p},{q}) not caught");
            pass = false;
        }
    }
    verdict(8, "cube and factorization", pass);
}

#[test]
fn criterion_09_binary_round_trip() {
    let mut pass = true;
    let z2 = Demimonad::from_algebra(group_algebra(&cyclic_group_table(2), Q).unwrap().algebra());
    let mut laws: Vec<(String, WeakDistributiveLaw)> =
        vec![("flip".into(), WeakDistributiveLaw::flip_law(&z2, &z2))];
    for (name, h) in zoo() {
        for (law_name, law, _) in canonical_laws(&h) {
            laws.push((format!("{name}.{law_name}"), law));
        }
    }
    for (name, law) in laws {
        let (wreath, proj_t, proj_s) = weak_wreath(&law).unwrap();
        let iota = lambda_bar(&law).unwrap();
        match binary_factorize(law.t(), law.s(), &wreath, proj_t.xi(), proj_s.xi(), &iota) {
            Ok(rebuilt) => {
                if !rebuilt.lambda().same_map(law.lambda()) {
                    eprintln!("round trip drifted for {name}");
                    pass = false;
                }
            }
            Err(e) => {
                eprintln!("round trip failed for {name}: {e}");
                pass = false;
            }
        }
    }
    verdict(9, "binary factorization round trip", pass);
}

#[test]
fn criterion_10_determinism() {
    let mut pass = true;
    let exe = env!("CARGO_BIN_EXE_weakwreath");
    let dir = workspace_dir();
    let run = |args: &[&str]| {
        let out = std::process::Command::new(exe)
            .args(args)
            .current_dir(&dir)
            .output()
            .expect("binary runs");
        (out.stdout, out.status.code())
    };
    for args in [
        vec!["spinchain", "m2", "-n", "1", "--json"],
        vec!["spinchain", "z2", "-n", "2", "--cube"],
        vec![
            "wdl",
            "data/z2_group.alg",
            "data/z2_group.alg",
            "data/flip_2x2.map",
            "--json",
        ],
        vec!["wreath", "data/m2_chain_n2.chain", "--all-orders"],
    ] {
        let (first, code1) = run(&args);
        let (second, code2) = run(&args);
        if first != second || code1 != code2 {
            eprintln!("non-deterministic output for {args:?}");
            pass = false;
        }
        if code1 != Some(0) {
            eprintln!("command {args:?} exited with {code1:?}");
            pass = false;
        }
        if first.is_empty() {
            pass = false;
        }
    }
    // the engine is sequential by construction: the parallelism clause of
    // the determinism contract is discharged by the absence of threading
    verdict(10, "byte-identical reports", pass);
}
