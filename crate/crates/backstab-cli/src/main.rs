//! `backstab`: batch command line for back-stable Schubert calculus.

mod config;
mod golden;
mod output;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use backstab::colored::{
    bottom_rows, colored_i_i, colored_inc_suffix, colored_product, max_bottom_row, shuffle,
};
use backstab::connectivity::{conjecture_scan, is_connected, ConnectivityReport};
use backstab::keys::{
    back_stable_key, compositions_up_to, key_polynomial_dd, key_polynomial_slides,
    schubert_key_expansion, witness_tableau, xi_key_conjecture_check, Composition,
};
use backstab::operators::{
    equivalence_preservation_check, leibniz_check, rho, rho_identity_check, OperatorExpr,
};
use backstab::perm::symmetric_group;
use backstab::schubert::{
    back_stable_structure_constants, back_stable_structure_constants_by_shift,
    check_multiset_bijection, nenashev_count_check, ordinary_structure_constants,
    ordinary_structure_constants_by_words, schubert_poly, schubert_poly_dd,
};
use backstab::stabilization::{
    bs_bruteforce, bs_formula, flag_containment_check, fs_bruteforce, fs_formula, scan_pairs,
    tilde_bs, tilde_bs_formula, tilde_fs_formula,
};
use backstab::words::{
    count_reduced_words, format_word, is_reduced, max_inc_word, max_increasing_suffix_of_perm,
    parse_word, reduced_words, word_to_perm,
};
use backstab::{ColoredLetter, ColoredWord, Error, Permutation, WordCombo};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use config::{Format, Options, RunConfig};
use output::{big, coefficient_map, strings, Emitter};

#[derive(Debug, Parser)]
#[command(
    name = "backstab",
    version,
    about = "Exact back-stable Schubert calculus"
)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Statistics of --w, or the permutation with a given Lehmer code.
    Perm {
        /// Lehmer code `offset:[c_offset,...]`.
        #[arg(long)]
        code: Option<String>,
        /// Shift by `k` before reporting.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<i64>,
        /// Apply the flip `i ↦ 1 − i` before reporting.
        #[arg(long)]
        iota: bool,
    },
    /// Reduced words of --w, or the permutation of a word.
    Rw {
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Colored shuffle product of two words, or the statistics of one.
    Shuffle {
        #[arg(long = "p")]
        left: String,
        #[arg(long = "q")]
        right: Option<String>,
        /// Plain shuffle without the color shift.
        #[arg(long)]
        plain: bool,
    },
    /// Schubert expansion of --u times --v, or the polynomial of --w on --window.
    Product,
    /// Back-stabilization number.
    Bs,
    /// Forward-stability number.
    Fs,
    /// Word operators: apply, check equivalence preservation, or sample Leibniz pairs.
    Ops {
        /// Operator expression, e.g. `xi;nabla + 2*id`.
        #[arg(long, default_value = "xi")]
        op: String,
        /// A colored word to apply the operator to.
        #[arg(long)]
        word: Option<String>,
        /// Number of seeded random word pairs for the Leibniz check.
        #[arg(long)]
        leibniz: Option<usize>,
    },
    /// Back-stable keys of a composition, or the key expansion of --w.
    Keys {
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Down-up move connectivity of a product's support.
    Connect,
    /// Reproduce the reference examples and print a pass/fail table.
    #[command(name = "verify-paper", alias = "golden")]
    VerifyPaper,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    Io(io::Error),
    Failed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_perm(label: &str, s: &str) -> CliResult<Permutation> {
    s.parse()
        .map_err(|e: Error| CliError::Usage(format!("--{label}: {e}")))
}

fn need_perm(label: &str, s: &Option<String>) -> CliResult<Permutation> {
    match s {
        Some(s) => parse_perm(label, s),
        None => Err(CliError::Usage(format!("missing --{label}"))),
    }
}

fn parse_colored(s: &str) -> CliResult<ColoredWord> {
    s.parse().map_err(usage)
}

/// `offset:[c_offset, ...]` with offset 1 when omitted.
fn parse_code(s: &str) -> CliResult<BTreeMap<i64, u64>> {
    let (offset, list) = match s.split_once(':') {
        Some((o, l)) => (
            o.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad code {s:?}")))?,
            l,
        ),
        None => (1, s),
    };
    let values = parse_word(list).map_err(usage)?;
    values
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            u64::try_from(c)
                .map(|c| (offset + j as i64, c))
                .map_err(|_| CliError::Usage(format!("negative code entry in {s:?}")))
        })
        .collect()
}

fn profile_string(offset: i64, values: impl IntoIterator<Item = u64>) -> String {
    let v: Vec<i64> = values.into_iter().map(|x| x as i64).collect();
    format!("{offset}:{}", format_word(&v))
}

fn perm_record(w: &Permutation) -> Value {
    let (lo, one_line) = w.canonical_window();
    let hi = lo + one_line.len() as i64 - 1;
    let prof = w.code_profile();
    json!({
        "perm": w.to_string(),
        "length": w.length(),
        "descents": w.descents().into_iter().collect::<Vec<_>>(),
        "code": profile_string(lo, (lo..=hi).map(|i| prof.c(i))),
        "dual_code": profile_string(lo, (lo..=hi).map(|i| prof.d(i))),
        "lambda": profile_string(lo, (lo..=hi + 1).map(|i| prof.lambda(i))),
        "big_lambda": profile_string(lo, (lo..=hi + 1).map(|i| prof.big_lambda(i))),
        "bs": w.bs(),
        "bs_tilde": w.bs_tilde(),
        "fs": w.fs(),
        "fs_tilde": w.fs_tilde(),
    })
}

fn pairs(cfg: &RunConfig) -> CliResult<Vec<(Permutation, Permutation)>> {
    if let Some(n) = cfg.scan {
        let all = symmetric_group(n);
        return Ok(all
            .iter()
            .flat_map(|u| all.iter().map(move |v| (u.clone(), v.clone())))
            .collect());
    }
    Ok(vec![(need_perm("u", &cfg.u)?, need_perm("v", &cfg.v)?)])
}

fn cmd_perm<W: Write>(
    out: &mut Emitter<W>,
    cfg: &RunConfig,
    code: Option<&str>,
    gamma: Option<i64>,
    iota: bool,
) -> CliResult<()> {
    let mut w = match (code, &cfg.w) {
        (Some(c), None) => Permutation::from_code(&parse_code(c)?),
        (None, Some(_)) => need_perm("w", &cfg.w)?,
        _ => return Err(CliError::Usage("give exactly one of --w and --code".into())),
    };
    if let Some(k) = gamma {
        w = w.gamma(k);
    }
    if iota {
        w = w.iota();
    }
    out.record(perm_record(&w))?;
    Ok(())
}

fn cmd_rw<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig, word: Option<&str>) -> CliResult<()> {
    if let Some(word) = word {
        let a = parse_word(word).map_err(usage)?;
        out.record(json!({
            "word": format_word(&a),
            "perm": word_to_perm(&a).to_string(),
            "reduced": is_reduced(&a),
        }))?;
        return Ok(());
    }
    let w = need_perm("w", &cfg.w)?;
    let rw = reduced_words(&w, &cfg.limits)?;
    out.record(json!({
        "perm": w.to_string(),
        "count": count_reduced_words(&w).to_string(),
        "max_inc_suffix": format_word(&max_increasing_suffix_of_perm(&w)),
        "max_inc_word": format_word(&max_inc_word(&w)?),
        "words": strings(rw.words.iter().map(|a| format_word(a))),
    }))?;
    Ok(())
}

fn cmd_shuffle<W: Write>(
    out: &mut Emitter<W>,
    cfg: &RunConfig,
    left: &str,
    right: Option<&str>,
    plain: bool,
) -> CliResult<()> {
    let p = parse_colored(left)?;
    let Some(right) = right else {
        let mut rec = json!({
            "word": p.to_string(),
            "max_bottom_row": format_word(&max_bottom_row(&p)),
            "inc_suffix": colored_inc_suffix(&p).to_string(),
        });
        if let Some((lo, hi)) = cfg.window {
            let rows: Vec<String> = bottom_rows(&p, lo)?
                .into_iter()
                .filter(|b| b.iter().all(|&x| x <= hi))
                .map(|b| format_word(&b))
                .collect();
            rec["gated_suffix"] = (lo..=hi)
                .map(|i| colored_i_i(&p, i))
                .collect::<Vec<_>>()
                .into();
            rec["bottom_rows"] = strings(rows);
        }
        out.record(rec)?;
        return Ok(());
    };
    let q = parse_colored(right)?;
    let prod = if plain {
        shuffle(&p, &q)
    } else {
        colored_product(&p, &q)
    };
    out.record(json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "terms": prod.len(),
        "product": prod.to_string(),
    }))?;
    Ok(())
}

fn cmd_product<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig) -> CliResult<()> {
    if cfg.u.is_none() && cfg.scan.is_none() {
        let w = need_perm("w", &cfg.w)?;
        let (lo, hi) = cfg.window.unwrap_or((1, w.fs().max(1)));
        let poly = schubert_poly(&w, lo, hi, &cfg.limits)?;
        let mut rec = json!({
            "perm": w.to_string(),
            "window": format!("{lo}:{hi}"),
            "terms": poly.len(),
            "polynomial": poly.to_string(),
        });
        if cfg.verify {
            if lo != 1 || !w.is_positive() {
                return Err(CliError::Usage(
                    "--verify on a polynomial needs a window starting at 1".into(),
                ));
            }
            rec["agrees_with_divided_differences"] =
                schubert_poly_dd(&w, hi)?.same_as(&poly).into();
        }
        out.record(rec)?;
        return Ok(());
    }
    for (u, v) in pairs(cfg)? {
        let e = if cfg.back_stable {
            back_stable_structure_constants(&u, &v, &cfg.limits)?
        } else {
            ordinary_structure_constants(&u, &v, &cfg.limits)?
        };
        let mut rec = json!({
            "u": u.to_string(),
            "v": v.to_string(),
            "back_stable": cfg.back_stable,
            "expansion": coefficient_map(e.terms()),
        });
        if cfg.verify {
            let other = if cfg.back_stable {
                back_stable_structure_constants_by_shift(&u, &v, &cfg.limits)?
            } else {
                ordinary_structure_constants_by_words(&u, &v, &cfg.limits)?
            };
            rec["routes_agree"] = (other == e).into();
            if cfg.back_stable {
                rec["bottom_rows_agree"] = check_multiset_bijection(&u, &v, &e, &cfg.limits)?
                    .pass
                    .into();
                rec["word_count_identity"] = nenashev_count_check(&u, &v, &e).into();
                rec["letter_sum_identity"] = rho_identity_check(&u, &v, &e, &cfg.limits)?.into();
            }
        }
        out.record(rec)?;
    }
    Ok(())
}

fn cmd_bs<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig) -> CliResult<()> {
    if let (Some(n), true) = (cfg.scan, cfg.verify) {
        for r in scan_pairs(n, &cfg.limits)? {
            out.record(json!({
                "u": r.u.to_string(),
                "v": r.v.to_string(),
                "bs": r.bs_formula,
                "bs_bruteforce": r.bs_bruteforce,
                "st": r.st_number,
                "agrees": r.bs_agrees(),
            }))?;
        }
        return Ok(());
    }
    for (u, v) in pairs(cfg)? {
        let mut rec = json!({
            "u": u.to_string(),
            "v": v.to_string(),
            "bs": bs_formula(&u, &v),
            "bs_tilde": tilde_bs_formula(&u, &v),
        });
        if cfg.verify {
            let b = bs_bruteforce(&u, &v, &cfg.limits)?;
            rec["bs_bruteforce"] = b.bs.into();
            rec["st"] = b.st.into();
            rec["bs_tilde_bruteforce"] = tilde_bs(&u, &v, &cfg.limits)?.into();
            rec["v_sets"] = b.chain.iter().map(strings).collect::<Vec<_>>().into();
            rec["agrees"] = (b.bs == bs_formula(&u, &v) && b.bs == b.st).into();
        }
        out.record(rec)?;
    }
    Ok(())
}

fn cmd_fs<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig) -> CliResult<()> {
    for (u, v) in pairs(cfg)? {
        let fs = fs_formula(&u, &v);
        let mut rec = json!({
            "u": u.to_string(),
            "v": v.to_string(),
            "fs": fs,
            "fs_tilde": tilde_fs_formula(&u, &v),
        });
        if cfg.verify {
            let brute = fs_bruteforce(&u, &v, &cfg.limits)?;
            rec["fs_bruteforce"] = brute.into();
            rec["flag_containment"] = (flag_containment_check(&u, &v, fs)
                && (fs <= 1 || !flag_containment_check(&u, &v, fs - 1)))
            .into();
            rec["agrees"] = (brute == fs).into();
        }
        out.record(rec)?;
    }
    Ok(())
}

fn random_word(rng: &mut ChaCha8Rng) -> ColoredWord {
    let len = rng.gen_range(0..=4);
    ColoredWord(
        (0..len)
            .map(|_| ColoredLetter::new(rng.gen_range(1..=4), rng.gen_range(1..=2)))
            .collect(),
    )
}

fn cmd_ops<W: Write>(
    out: &mut Emitter<W>,
    cfg: &RunConfig,
    op: &str,
    word: Option<&str>,
    leibniz: Option<usize>,
) -> CliResult<()> {
    let expr: OperatorExpr = op.parse().map_err(usage)?;
    if let Some(count) = leibniz {
        let atom = expr.as_atom().ok_or_else(|| {
            CliError::Usage("--leibniz needs a single operator, xi or nabla".into())
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut failures = 0;
        for _ in 0..count {
            let (p, q) = (random_word(&mut rng), random_word(&mut rng));
            if !leibniz_check(atom, &p, &q) {
                failures += 1;
                out.record(json!({"op": atom.to_string(), "p": p.to_string(), "q": q.to_string(), "pass": false}))?;
            }
        }
        out.record(json!({"op": atom.to_string(), "pairs": count, "failures": failures}))?;
        return Ok(());
    }
    if let Some(word) = word {
        let result = expr.apply_words(&WordCombo::word(parse_colored(word)?));
        out.record(json!({"op": expr.to_string(), "word": word, "result": result.to_string()}))?;
        return Ok(());
    }
    if cfg.u.is_none() && cfg.scan.is_none() {
        let w = need_perm("w", &cfg.w)?;
        let result = expr.apply_schubert(&backstab::SchubertExpansion::single(w.clone()));
        out.record(json!({
            "op": expr.to_string(),
            "perm": w.to_string(),
            "result": coefficient_map(result.terms()),
            "rho": big(&rho(&w, &cfg.limits)?),
        }))?;
        return Ok(());
    }
    for (u, v) in pairs(cfg)? {
        let r = equivalence_preservation_check(&u, &v, &expr, &cfg.limits)?;
        out.record(json!({
            "op": expr.to_string(),
            "u": u.to_string(),
            "v": v.to_string(),
            "uses_nabla": r.uses_nabla,
            "product_side": coefficient_map(r.product_side.iter().map(|(b, c)| (format_word(b), c))),
            "pass": r.pass(),
        }))?;
    }
    Ok(())
}

fn key_record(alpha: &Composition, cfg: &RunConfig) -> CliResult<Value> {
    let key = back_stable_key(alpha, &cfg.limits)?;
    let mut rec = json!({
        "alpha": alpha.to_string(),
        "witness": witness_tableau(alpha, &cfg.limits)?.to_string(),
        "terms": key.len(),
        "key": key.to_string(),
    });
    if alpha.is_positive() {
        let poly = key_polynomial_slides(alpha, &cfg.limits)?;
        if cfg.verify {
            rec["agrees_with_divided_differences"] =
                key_polynomial_dd(alpha)?.same_as(&poly).into();
        }
        rec["polynomial"] = poly.to_string().into();
    }
    if cfg.verify {
        rec["deletion_identity"] = xi_key_conjecture_check(alpha, &cfg.limits)?.pass().into();
    }
    Ok(rec)
}

fn cmd_keys<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig, alpha: Option<&str>) -> CliResult<()> {
    if let Some(a) = alpha {
        let alpha: Composition = a.parse().map_err(usage)?;
        out.record(key_record(&alpha, cfg)?)?;
        return Ok(());
    }
    if let Some(n) = cfg.scan {
        for alpha in compositions_up_to(n, n as u64)
            .into_iter()
            .filter(|a| !a.is_empty())
        {
            out.record(key_record(&alpha, cfg)?)?;
        }
        return Ok(());
    }
    let w = need_perm("w", &cfg.w)?;
    for t in schubert_key_expansion(&w, &cfg.limits)? {
        out.record(json!({
            "perm": w.to_string(),
            "alpha": t.alpha.to_string(),
            "tableau": t.tableau.to_string(),
            "words": strings(t.words.iter().map(|a| format_word(a))),
        }))?;
    }
    Ok(())
}

fn connectivity_record(r: &ConnectivityReport) -> Value {
    json!({
        "u": r.u.to_string(),
        "v": r.v.to_string(),
        "kind": r.kind.to_string(),
        "back_stable": r.back_stable,
        "connected": r.connected(),
        "components": r.components.iter().map(strings).collect::<Vec<_>>(),
        "monk_edges": r.monk_edges,
    })
}

fn cmd_connect<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig) -> CliResult<()> {
    if let Some(n) = cfg.scan {
        let summary = conjecture_scan(n, cfg.kind, cfg.back_stable, &cfg.limits)?;
        for r in &summary.reports {
            out.record(connectivity_record(r))?;
        }
        out.record(json!({
            "scan": n,
            "kind": cfg.kind.to_string(),
            "back_stable": cfg.back_stable,
            "pairs": summary.reports.len(),
            "counterexamples": summary.counterexamples().count(),
            "monk_edges_checked": summary.monk_edges(),
        }))?;
        return Ok(());
    }
    let (u, v) = (need_perm("u", &cfg.u)?, need_perm("v", &cfg.v)?);
    out.record(connectivity_record(&is_connected(
        &u,
        &v,
        cfg.kind,
        cfg.back_stable,
        &cfg.limits,
    )?))?;
    Ok(())
}

fn cmd_verify<W: Write>(out: &mut Emitter<W>, cfg: &RunConfig) -> CliResult<()> {
    let outcomes = golden::run(&cfg.limits);
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    for o in &outcomes {
        match cfg.format {
            Format::Ndjson => {
                out.record(json!({"case": o.name, "pass": o.pass, "detail": o.detail}))?
            }
            Format::Table => {
                out.record(json!({"result": if o.pass { "PASS" } else { "FAIL" }, "case": o.name}))?
            }
        }
    }
    out.record(json!({"passed": outcomes.len() - failed, "failed": failed}))?;
    if failed > 0 {
        return Err(CliError::Failed(failed));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = RunConfig::resolve(&cli.opts)?;
    let name = match &cli.command {
        Command::Perm { .. } => "perm",
        Command::Rw { .. } => "rw",
        Command::Shuffle { .. } => "shuffle",
        Command::Product => "product",
        Command::Bs => "bs",
        Command::Fs => "fs",
        Command::Ops { .. } => "ops",
        Command::Keys { .. } => "keys",
        Command::Connect => "connect",
        Command::VerifyPaper => "verify-paper",
    };
    let stdout = io::stdout();
    let mut out = Emitter::new(io::BufWriter::new(stdout.lock()), name, &cfg)?;
    let result = match &cli.command {
        Command::Perm { code, gamma, iota } => {
            cmd_perm(&mut out, &cfg, code.as_deref(), *gamma, *iota)
        }
        Command::Rw { word } => cmd_rw(&mut out, &cfg, word.as_deref()),
        Command::Shuffle { left, right, plain } => {
            cmd_shuffle(&mut out, &cfg, left, right.as_deref(), *plain)
        }
        Command::Product => cmd_product(&mut out, &cfg),
        Command::Bs => cmd_bs(&mut out, &cfg),
        Command::Fs => cmd_fs(&mut out, &cfg),
        Command::Ops { op, word, leibniz } => {
            cmd_ops(&mut out, &cfg, op, word.as_deref(), *leibniz)
        }
        Command::Keys { alpha } => cmd_keys(&mut out, &cfg, alpha.as_deref()),
        Command::Connect => cmd_connect(&mut out, &cfg),
        Command::VerifyPaper => cmd_verify(&mut out, &cfg),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("backstab: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(Error::ResourceLimit { cap, limit })) => {
            eprintln!("backstab: resource limit exceeded: --{cap} (limit {limit})");
            ExitCode::from(3)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("backstab: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("backstab: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Failed(n)) => {
            eprintln!("backstab: {n} golden case(s) failed");
            ExitCode::from(1)
        }
    }
}
