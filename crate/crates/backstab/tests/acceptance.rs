//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p backstab --test acceptance`. Exits non-zero if
//! any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use backstab::colored::{colored_i_i, colored_product, max_bottom_row_plain};
use backstab::connectivity::{conjecture_scan, MoveKind};
use backstab::keys::{
    compositions_up_to, key_polynomial_dd, key_polynomial_slides, xi_key_conjecture_check,
};
use backstab::operators::{
    equivalence_preservation_check, leibniz_check, operator_commutes_with_expansion,
    rho_identity_check, Atom, OperatorExpr,
};
use backstab::perm::symmetric_group;
use backstab::schubert::{
    back_stable_structure_constants, nenashev_count_check, ordinary_structure_constants,
    product_combo, schubert_poly, schubert_poly_dd,
};
use backstab::stabilization::{bs_bruteforce, bs_formula, fs_bruteforce, fs_formula, v_set};
use backstab::words::{inc_suffix_len_i, increasing_suffix, reduced_words};
use backstab::{
    ColoredLetter, ColoredWord, Error, Limits, Permutation, SchubertExpansion, SparsePoly,
    WordCombo,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || {
        format!("took {elapsed:.2?}, budget {budget:.0?}")
    })
}

fn s_pairs(n: i64) -> Vec<(Permutation, Permutation)> {
    let all = symmetric_group(n);
    all.iter()
        .flat_map(|u| all.iter().map(move |v| (u.clone(), v.clone())))
        .collect()
}

fn expansion(items: &[(&str, i64)]) -> SchubertExpansion {
    let mut e = SchubertExpansion::zero();
    for &(w, c) in items {
        e.add_term(p(w), BigInt::from(c));
    }
    e
}

fn intro_example() -> Verdict {
    let start = Instant::now();
    let (u, v) = (p("1:[3,2,1]"), p("1:[2,1,3]"));
    let ordinary = ordinary_structure_constants(&u, &v, &lim()).map_err(fail)?;
    ensure(ordinary == expansion(&[("1:[4,2,1,3]", 1)]), || {
        format!("ordinary {ordinary}")
    })?;
    let back = back_stable_structure_constants(&u, &v, &lim()).map_err(fail)?;
    let want = expansion(&[
        ("1:[4,2,1,3]", 1),
        ("0:[1,3,2,0,4]", 1),
        ("0:[2,3,0,1,4]", 1),
    ]);
    ensure(back == want, || format!("back-stable {back}"))?;
    let brute = bs_bruteforce(&u, &v, &lim()).map_err(fail)?;
    ensure(bs_formula(&u, &v) == 1 && brute.bs == 1, || {
        format!("bs {}", brute.bs)
    })?;
    let (v1, v2) = (
        v_set(&u, &v, 1, &lim()).map_err(fail)?,
        v_set(&u, &v, 2, &lim()).map_err(fail)?,
    );
    ensure(v1 == v2 && v1.len() == 3, || format!("V1 {v1:?} V2 {v2:?}"))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(1))?;
    Ok(format!("3 back-stable terms, BS = 1, V1 = V2 in {t:.2?}"))
}

fn forward_example() -> Verdict {
    let start = Instant::now();
    let (u, v) = (p("1:[4,3,6,5,2,1]"), p("1:[5,4,3,1,2]"));
    let profile = |w: &Permutation| -> Vec<u64> {
        let c = w.code_profile();
        (1..=7).map(|i| c.big_lambda(i)).collect()
    };
    ensure(profile(&u) == [4, 4, 3, 3, 2, 1, 0], || {
        format!("u profile {:?}", profile(&u))
    })?;
    ensure(profile(&v) == [4, 4, 3, 2, 1, 0, 0], || {
        format!("v profile {:?}", profile(&v))
    })?;
    let sums: Vec<i64> = (1..=7)
        .map(|i| (profile(&u)[i - 1] + profile(&v)[i - 1]) as i64 + i as i64 - 1)
        .collect();
    ensure(sums == [8, 9, 8, 8, 7, 6, 6], || format!("sums {sums:?}"))?;
    let (formula, brute) = (
        fs_formula(&u, &v),
        fs_bruteforce(&u, &v, &lim()).map_err(fail)?,
    );
    ensure(formula == 9 && brute == 9, || {
        format!("formula {formula} brute {brute}")
    })?;
    let e = ordinary_structure_constants(&u, &v, &lim()).map_err(fail)?;
    let want = expansion(&[
        ("1:[8,6,7,3,2,1,4,5]", 1),
        ("1:[8,7,5,3,2,1,4,6]", 1),
        ("1:[9,6,5,3,2,1,4,7,8]", 1),
    ]);
    ensure(e == want, || format!("expansion {e}"))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(10))?;
    Ok(format!(
        "profiles match, FS = 9 both routes, 3 unit terms in {t:.2?}"
    ))
}

fn bs_sweep() -> Verdict {
    let start = Instant::now();
    let pairs = s_pairs(4);
    let bad: Vec<String> = pairs
        .par_iter()
        .map(|(u, v)| -> Result<Option<String>, Error> {
            let b = bs_bruteforce(u, v, &lim())?;
            let f = bs_formula(u, v);
            Ok((f != b.bs || b.bs != b.st)
                .then(|| format!("{u}·{v}: formula {f} brute {} st {}", b.bs, b.st)))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?
        .into_iter()
        .flatten()
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(600))?;
    Ok(format!(
        "{} pairs, formula = brute force = St in {t:.2?}",
        pairs.len()
    ))
}

fn fs_sweep() -> Verdict {
    let start = Instant::now();
    let pairs = s_pairs(4);
    let bad: Vec<String> = pairs
        .par_iter()
        .map(|(u, v)| -> Result<Option<String>, Error> {
            let (f, b) = (fs_formula(u, v), fs_bruteforce(u, v, &lim())?);
            Ok((f != b).then(|| format!("{u}·{v}: formula {f} brute {b}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?
        .into_iter()
        .flatten()
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let t = start.elapsed();
    within(t, Duration::from_secs(600))?;
    Ok(format!(
        "{} pairs, formula = brute force in {t:.2?}",
        pairs.len()
    ))
}

fn colored_shuffle() -> Verdict {
    let cw = |s: &str| -> ColoredWord { s.parse().unwrap() };
    let three = colored_product(&cw("[1^1,2^1]"), &cw("[2^1]")).to_string();
    let want = r#"{"[1^1,2^1,2^2]": 1, "[1^1,2^2,2^1]": 1, "[2^2,1^1,2^1]": 1}"#;
    ensure(three == want, || format!("got {three}"))?;
    let ab = colored_product(&cw("[1^1]"), &cw("[2^1]"));
    let ba = colored_product(&cw("[2^1]"), &cw("[1^1]"));
    ensure(
        ab.to_string() == r#"{"[1^1,2^2]": 1, "[2^2,1^1]": 1}"#,
        || format!("got {ab}"),
    )?;
    ensure(ab != ba, || "1^1·2^1 equals 2^1·1^1".into())?;
    let m = max_bottom_row_plain(&[6, 8, 4, 1]);
    ensure(m == [0, 1, 1, 1], || format!("m(6841) = {m:?}"))?;
    Ok(format!("{three}; {ab} vs {ba}; m(6841) = (0,1,1,1)"))
}

fn oracle_agreement() -> Verdict {
    for w in symmetric_group(4) {
        let enumerated = schubert_poly(&w, 1, 4, &lim()).map_err(fail)?;
        let divided = schubert_poly_dd(&w, 4).map_err(fail)?;
        ensure(enumerated.same_as(&divided), || {
            format!("polynomials of {w} differ")
        })?;
    }
    let pairs = s_pairs(3);
    for (u, v) in &pairs {
        let e = ordinary_structure_constants(u, v, &lim()).map_err(fail)?;
        let n = e.terms().map(|(w, _)| w.fs()).max().unwrap_or(1).max(3);
        let dd = |w: &Permutation| schubert_poly_dd(w, n).map_err(fail);
        let product = dd(u)?.mul(&dd(v)?);
        let mut sum = SparsePoly::zero(1, n);
        for (w, c) in e.terms() {
            sum = sum.add(&dd(w)?.scale(c));
        }
        ensure(sum.same_as(&product), || {
            format!("re-expansion of {u}·{v} differs")
        })?;
    }
    Ok(format!(
        "24 permutations of S4, {} pairs of S3 × S3",
        pairs.len()
    ))
}

fn random_word(rng: &mut ChaCha8Rng) -> ColoredWord {
    let len = rng.gen_range(0..=4);
    ColoredWord(
        (0..len)
            .map(|_| ColoredLetter::new(rng.gen_range(-2..=3), rng.gen_range(1..=2)))
            .collect(),
    )
}

fn operator_identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let (a, b) = (random_word(&mut rng), random_word(&mut rng));
        for op in [Atom::Xi, Atom::Nabla] {
            ensure(leibniz_check(op, &a, &b), || {
                format!("Leibniz fails for {op} on {a}, {b}")
            })?;
        }
    }
    let xi_nabla: OperatorExpr = "xi;nabla".parse().map_err(fail)?;
    let got = xi_nabla.apply_words(&WordCombo::from_plain_words(&[vec![3, 2], vec![1, 2]]));
    let mut four = WordCombo::zero();
    four.add_term(ColoredWord::empty(), BigInt::from(4));
    ensure(got == four, || format!("ξ∇(32 + 12) = {got}"))?;
    let s2 = Permutation::simple(2);
    let r = equivalence_preservation_check(&s2, &s2, &xi_nabla, &lim()).map_err(fail)?;
    ensure(
        r.pass() && r.product_side == BTreeMap::from([(vec![], BigInt::from(4))]),
        || format!("s2·s2: {:?} vs {:?}", r.product_side, r.expansion_side),
    )?;
    let ops: Vec<OperatorExpr> = [
        "xi",
        "nabla",
        "xi;nabla",
        "nabla;xi",
        "xi;xi",
        "nabla;nabla",
        "2*xi + nabla;xi",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    let pairs = s_pairs(3);
    for (u, v) in &pairs {
        let e = back_stable_structure_constants(u, v, &lim()).map_err(fail)?;
        ensure(nenashev_count_check(u, v, &e), || {
            format!("word count identity fails for {u}·{v}")
        })?;
        ensure(rho_identity_check(u, v, &e, &lim()).map_err(fail)?, || {
            format!("letter sum identity fails for {u}·{v}")
        })?;
        for op in &ops {
            let r = equivalence_preservation_check(u, v, op, &lim()).map_err(fail)?;
            ensure(r.pass(), || format!("{op} does not preserve ≡ on {u}·{v}"))?;
            ensure(
                operator_commutes_with_expansion(u, v, op, &lim()).map_err(fail)?,
                || format!("{op} on words and on Schubert terms differ for {u}·{v}"),
            )?;
        }
    }
    Ok(format!(
        "200 seeded pairs, {} operators on {} pairs, 4∅ example",
        ops.len(),
        pairs.len()
    ))
}

/// `I_i(w)`, straight from the reduced words.
fn perm_suffix_len(w: &Permutation, i: i64) -> Result<u64, String> {
    let rw = reduced_words(w, &lim()).map_err(fail)?;
    Ok(rw
        .words
        .iter()
        .map(|a| inc_suffix_len_i(a, i))
        .max()
        .unwrap_or(0))
}

fn increasing_suffixes() -> Verdict {
    let range = -4..=6;
    for w in symmetric_group(4) {
        let prof = w.code_profile();
        for a in reduced_words(&w, &lim()).map_err(fail)?.words {
            for &j in increasing_suffix(&a) {
                ensure(prof.theta(j) == 1, || {
                    format!("{w}: suffix letter {j} of {a:?} has zero code")
                })?;
            }
        }
        for i in range.clone() {
            let here = perm_suffix_len(&w, i)?;
            ensure(here <= prof.lambda(i), || {
                format!("{w}: I_{i} = {here} > λ_{i}")
            })?;
            if prof.theta(i) == 0 {
                let before = perm_suffix_len(&w, i - 1)?;
                ensure(before == here && here == prof.lambda(i), || {
                    format!(
                        "{w}: θ_{i} = 0 but I_{} = {before}, I_{i} = {here}, λ_{i} = {}",
                        i - 1,
                        prof.lambda(i)
                    )
                })?;
            }
        }
    }
    let pairs = s_pairs(3);
    for (u, v) in &pairs {
        let e = back_stable_structure_constants(u, v, &lim()).map_err(fail)?;
        let (lu, lv) = (
            u.code_profile().lambda_total(),
            v.code_profile().lambda_total(),
        );
        for (w, _) in e.terms() {
            ensure(w.code_profile().lambda_total() <= lu + lv, || {
                format!("{w} in {u}·{v} has too many code rows")
            })?;
        }
        let product = product_combo(u, v, &lim()).map_err(fail)?;
        for i in range.clone() {
            let sum = perm_suffix_len(u, i)? + perm_suffix_len(v, i)?;
            let of_product = product
                .terms()
                .map(|(p, _)| colored_i_i(p, i))
                .max()
                .unwrap_or(0);
            ensure(of_product == sum, || {
                format!("{u}·{v}: I_{i} of product {of_product}, sum {sum}")
            })?;
            let mut support_max = 0;
            for (w, _) in e.terms() {
                support_max = support_max.max(perm_suffix_len(w, i)?);
            }
            ensure(support_max == sum, || {
                format!("{u}·{v}: support max I_{i} {support_max}, sum {sum}")
            })?;
        }
    }
    Ok(format!(
        "24 permutations of S4, {} pairs of S3 × S3, i in -4..=6",
        pairs.len()
    ))
}

fn stratified_supports() -> Verdict {
    let pairs = s_pairs(3);
    for (u, v) in &pairs {
        let e = back_stable_structure_constants(u, v, &lim()).map_err(fail)?;
        let levels: BTreeSet<i64> = e.terms().map(|(w, _)| w.bs()).collect();
        let bs = bs_formula(u, v);
        ensure(levels.iter().max() == Some(&bs), || {
            format!("{u}·{v}: BS {bs}, levels {levels:?}")
        })?;
        for m in 0..=bs {
            ensure(levels.contains(&m), || {
                format!("{u}·{v}: no support member with BS = {m}")
            })?;
        }
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn keys() -> Verdict {
    let start = Instant::now();
    let positive: Vec<_> = compositions_up_to(5, 5)
        .into_iter()
        .filter(|a| !a.is_empty())
        .collect();
    let bad: Vec<String> = positive
        .par_iter()
        .map(|alpha| -> Result<Option<String>, Error> {
            let slides = key_polynomial_slides(alpha, &lim())?;
            Ok((!slides.same_as(&key_polynomial_dd(alpha)?)).then(|| alpha.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?
        .into_iter()
        .flatten()
        .collect();
    ensure(bad.is_empty(), || {
        format!("slide keys differ for {}", bad.join(" "))
    })?;
    let small: Vec<_> = positive.iter().filter(|a| a.size() <= 4).collect();
    let bad: Vec<String> = small
        .par_iter()
        .map(|alpha| {
            Ok::<_, Error>(
                (!xi_key_conjecture_check(alpha, &lim())?.pass()).then(|| alpha.to_string()),
            )
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?
        .into_iter()
        .flatten()
        .collect();
    ensure(bad.is_empty(), || {
        format!("deletion identity fails for {}", bad.join(" "))
    })?;
    let t = start.elapsed();
    within(t, Duration::from_secs(300))?;
    Ok(format!(
        "{} compositions for keys, {} for the deletion identity, in {t:.2?}",
        positive.len(),
        small.len()
    ))
}

fn connectivity() -> Verdict {
    let mut notes = Vec::new();
    let mut counterexamples = 0;
    for kind in [MoveKind::Bruhat, MoveKind::Monk] {
        for back_stable in [false, true] {
            let scan = conjecture_scan(3, kind, back_stable, &lim()).map_err(fail)?;
            let found = scan.counterexamples().count();
            counterexamples += found;
            let flavor = if back_stable {
                "back-stable"
            } else {
                "ordinary"
            };
            notes.push(format!(
                "{kind}/{flavor}: {found} counterexamples, {} Monk edges",
                scan.monk_edges()
            ));
        }
    }
    for back_stable in [false, true] {
        let scan = conjecture_scan(3, MoveKind::Crossing, back_stable, &lim()).map_err(fail)?;
        let split: Vec<String> = scan
            .counterexamples()
            .map(|r| format!("{}·{}", r.u, r.v))
            .collect();
        notes.push(format!(
            "crossing-only/{}: {} split ({})",
            if back_stable {
                "back-stable"
            } else {
                "ordinary"
            },
            split.len(),
            split.join(" ")
        ));
    }
    ensure(counterexamples == 0, || notes.join("; "))?;
    Ok(notes.join("; "))
}

fn caps_are_configurable() -> Verdict {
    let tight = Limits {
        max_reduced_words: 10,
        max_terms: 10,
    };
    let w0 = p("1:[5,4,3,2,1]");
    match reduced_words(&w0, &tight) {
        Err(Error::ResourceLimit { cap: "max-rw", .. }) => {}
        other => return Err(format!("expected the max-rw cap, got {other:?}")),
    }
    match back_stable_structure_constants(&p("1:[3,2,1]"), &p("1:[3,2,1]"), &tight) {
        Err(Error::ResourceLimit {
            cap: "max-terms", ..
        }) => {}
        other => return Err(format!("expected the max-terms cap, got {other:?}")),
    }
    Ok("no full-scale-only claims; both caps trip and name themselves".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("worked example 321·213", intro_example),
        ("forward-stability example 436521·54312", forward_example),
        ("back-stabilization sweep on S4 × S4", bs_sweep),
        ("forward-stability sweep on S4 × S4", fs_sweep),
        ("colored shuffle golden", colored_shuffle),
        ("Schubert polynomial oracles", oracle_agreement),
        ("operator identities", operator_identities),
        ("increasing-suffix suite", increasing_suffixes),
        ("stratified supports", stratified_supports),
        ("key polynomials", keys),
        ("connectivity scan on S3", connectivity),
        ("scale limits", caps_are_configurable),
    ];
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS [{t:.2?}] {title}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{t:.2?}] {title}: {detail}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
