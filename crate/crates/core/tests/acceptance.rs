//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if a blocking criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use genericgb::field::{derive_seed, seeded_generator};
use genericgb::generic::{
    check_arl_stages, check_b_tilde_structure, check_lefschetz_all, check_stanley, predict_initial_large_d, predict_initial_small_d,
    satisfies_partial_hypothesis,
};
use genericgb::golden::{main_golden, reproduce_counter, reproduce_main};
use genericgb::groebner::incremental_basis;
use genericgb::monomial::{is_almost_reverse_lex, minimal_generators, parse_monomial};
use genericgb::polynomial::random_generic_form;
use genericgb::theta::{build_all, check_block_structure, check_zero_blocks, verify_conjectures, verify_corollary_range};
use genericgb::{buchberger, build_generic_ideal, hilbert_data, Error, GenericInstance, InstanceSpec, MonomialIdeal, PrimeField, Report};
use rand::seq::SliceRandom;
use rand::Rng;

type Criterion = (u32, &'static str, fn() -> Outcome, u64, bool);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn golden_ideal(nvars: usize, gens: &[String]) -> MonomialIdeal {
    minimal_generators(nvars, gens.iter().map(|s| parse_monomial(s, nvars, true).unwrap()))
}

fn failures(r: &Report) -> Vec<String> {
    r.failures().map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or(""))).collect()
}

/// Runs `check` on an instance, rebuilding from a derived seed when the
/// check observes something that only happens for special coefficients.
fn with_retries(spec: &InstanceSpec, check: impl Fn(&GenericInstance) -> Result<Report, Error>) -> Result<(Report, u32), Error> {
    let mut last = None;
    for attempt in 0..=genericgb::generic::MAX_RETRIES {
        let mut s = spec.clone();
        s.seed = derive_seed(spec.seed, 1000 + attempt as u64);
        if attempt == 0 {
            s.seed = spec.seed;
        }
        let inst = build_generic_ideal(&s)?;
        let report = check(&inst)?;
        let extra = inst.retries + attempt;
        if report.all_pass() {
            return Ok((report, extra));
        }
        last = Some((report, extra));
    }
    Ok(last.unwrap())
}

fn criterion_1() -> Outcome {
    let gold = main_golden();
    let mut bad = Vec::new();
    let mut retries = 0;
    for seed in 0..20u64 {
        for with_z in [false, true] {
            let mut spec = InstanceSpec::new(2, &gold.degrees).seed(seed);
            spec.with_z = with_z;
            match build_generic_ideal(&spec) {
                Ok(inst) => {
                    retries += inst.retries;
                    let want = minimal_generators(
                        inst.nvars(),
                        gold.initial_ideal.iter().map(|s| parse_monomial(s, inst.nvars(), with_z).unwrap()),
                    );
                    if inst.initial_ideal() != want {
                        bad.push(format!("seed {seed} z={with_z}: {:?}", inst.initial_ideal().format(with_z)));
                    }
                }
                Err(e) => bad.push(format!("seed {seed}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("40 builds over 20 seeds, {retries} retries, {} mismatches {bad:?}", bad.len()))
}

fn criterion_2() -> Outcome {
    let gold = main_golden();
    let want = golden_ideal(3, &gold.extension_initial_ideal);
    let mut bad = Vec::new();
    for seed in 0..5u64 {
        let inst = match build_generic_ideal(&InstanceSpec::new(2, &gold.degrees).extra(gold.d).seed(seed)) {
            Ok(i) => i,
            Err(e) => {
                bad.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let got = inst.extension().unwrap().initial_ideal();
        if got != want {
            bad.push(format!("seed {seed}: {:?}", got.format(true)));
        }
        if !is_almost_reverse_lex(&got).ok {
            bad.push(format!("seed {seed}: not arl"));
        }
    }
    match reproduce_main(0) {
        Ok(r) => bad.extend(failures(&r)),
        Err(e) => bad.push(e.to_string()),
    }
    outcome(bad.is_empty(), format!("17 generators, arl, 5 seeds, printed Theta_6..Theta_0 {bad:?}"))
}

fn criterion_3() -> Outcome {
    match reproduce_counter(0) {
        Ok(r) => outcome(r.all_pass(), format!("Theta_3 singular, zero row x3*z^2, x2^4*z^2 absent {:?}", failures(&r))),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_4() -> Outcome {
    let field = PrimeField::default();
    let mut rng = seeded_generator(4);
    let mut bad = Vec::new();
    let count = 60;
    for t in 0..count {
        let nvars = rng.gen_range(2..=3usize);
        let k = rng.gen_range(2..=3usize);
        let degrees: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
        let forms: Vec<_> = degrees.iter().map(|&d| random_generic_form(&field, nvars, d, &mut rng)).collect();
        let oracle = buchberger(&field, nvars, &forms);
        match incremental_basis(&field, nvars, &forms) {
            Ok(inc) if inc.elements() == oracle.elements() => {}
            Ok(_) => bad.push(format!("#{t} nvars={nvars} {degrees:?}")),
            Err(e) => bad.push(format!("#{t}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("{count} instances, {} differ {bad:?}", bad.len()))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let (mut total, mut retried) = (0, 0);
    for n in 1..=3usize {
        let mut tuples = vec![vec![]];
        for _ in 0..n {
            tuples = tuples.into_iter().flat_map(|t: Vec<u32>| (1..=5).map(move |d| [t.clone(), vec![d]].concat())).collect();
        }
        for ds in tuples {
            total += 1;
            let spec = InstanceSpec::new(n, &ds).seed(total as u64);
            match build_generic_ideal(&spec) {
                Ok(inst) => {
                    retried += u32::from(inst.retries > 0);
                    let h = hilbert_data(n, &ds).unwrap();
                    if inst.table().unwrap().sizes() != h.a {
                        bad.push(format!("{ds:?}"));
                    }
                }
                Err(e) => bad.push(format!("{ds:?}: {e}")),
            }
        }
    }
    let rate = retried as f64 / total as f64;
    outcome(bad.is_empty() && rate <= 0.01, format!("{total} instances, {retried} needed retries ({:.2}%), failures {bad:?}", 100.0 * rate))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let (mut count, mut retries, mut matrices) = (0, 0, 0);
    for n in 1..=2usize {
        let mut tuples: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples.into_iter().flat_map(|t| (t.last().copied().unwrap_or(1)..=4).map(move |d| [t.clone(), vec![d]].concat())).collect();
        }
        for ds in tuples {
            let delta: u32 = ds.iter().sum::<u32>() - n as u32;
            for d in delta.saturating_sub(2).max(1)..=delta + 1 {
                count += 1;
                let spec = InstanceSpec::new(n, &ds).extra(d).seed(count);
                match with_retries(&spec, verify_corollary_range) {
                    Ok((r, extra)) => {
                        retries += extra;
                        matrices += r.checks.len();
                        if !r.all_pass() {
                            bad.push(format!("{ds:?} d={d}: {:?}", failures(&r)));
                        }
                    }
                    Err(e) => bad.push(format!("{ds:?} d={d}: {e}")),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} instances, {matrices} matrices, {retries} retries, failures {bad:?}"))
}

fn criterion_7() -> Outcome {
    let mut rng = seeded_generator(7);
    let mut candidates: Vec<(usize, Vec<u32>)> = Vec::new();
    for n in 1..=3usize {
        let mut tuples: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples.into_iter().flat_map(|t| (t.last().copied().unwrap_or(1)..=4).map(move |d| [t.clone(), vec![d]].concat())).collect();
        }
        candidates.extend(tuples.into_iter().map(|t| (n, t)));
    }
    let mut lines = Vec::new();
    let mut pass = true;
    for kind in ["d >= delta", "d = delta-1", "d = delta-2"] {
        let mut done = 0;
        let mut bad = Vec::new();
        let mut attempts = 0;
        while done < 20 && attempts < 1000 {
            attempts += 1;
            let (n, ds) = candidates.choose(&mut rng).unwrap().clone();
            let delta: u32 = ds.iter().sum::<u32>() - n as u32;
            let max = *ds.iter().max().unwrap();
            let d = match kind {
                "d >= delta" => delta.max(1) + rng.gen_range(0..=2),
                "d = delta-1" => match delta.checked_sub(1) {
                    Some(d) if d >= max && d >= 1 => d,
                    _ => continue,
                },
                _ => match delta.checked_sub(2) {
                    Some(d) if d >= max && d >= 1 => d,
                    _ => continue,
                },
            };
            let inst = match build_generic_ideal(&InstanceSpec::new(n, &ds).extra(d).seed(rng.gen())) {
                Ok(i) => i,
                Err(e) => {
                    bad.push(format!("{ds:?} d={d}: {e}"));
                    continue;
                }
            };
            done += 1;
            let (table, h) = (inst.table().unwrap(), inst.hilbert().unwrap());
            let inn = inst.initial_ideal();
            let predicted = if d >= delta { predict_initial_large_d(&inn, table, d) } else { predict_initial_small_d(&inn, table, h, d) };
            match predicted {
                Ok(p) if p == inst.extension().unwrap().initial_ideal() => {}
                Ok(_) => bad.push(format!("{ds:?} d={d}")),
                Err(e) => bad.push(format!("{ds:?} d={d}: {e}")),
            }
        }
        pass &= bad.is_empty() && done >= 20;
        lines.push(format!("{kind}: {done} instances {bad:?}"));
    }
    outcome(pass, lines.join("; "))
}

fn criterion_8() -> Outcome {
    let mut rng = seeded_generator(8);
    let mut bad = Vec::new();
    let mut checks = 0;
    for t in 0..10u64 {
        let n = rng.gen_range(1..=3usize);
        let ds: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let d = rng.gen_range(1..=4);
        let spec = InstanceSpec::new(n, &ds).extra(d).seed(100 + t);
        let run = |inst: &GenericInstance| -> Result<Report, Error> {
            let (table, h) = (inst.table()?, inst.hilbert()?);
            let ext = inst.extension()?;
            let mut r = inst.report();
            r.extend(check_stanley(table));
            r.extend(check_lefschetz_all(table));
            r.extend(check_b_tilde_structure(table, h));
            r.extend(check_block_structure(&inst.basis, table, &ext.g, table.delta())?);
            for m in build_all(&inst.basis, table, &ext.g, table.delta())? {
                r.extend(check_zero_blocks(&m));
            }
            Ok(r)
        };
        match with_retries(&spec, run) {
            Ok((r, _)) => {
                checks += r.checks.len();
                bad.extend(failures(&r).into_iter().map(|f| format!("{ds:?} d={d}: {f}")));
            }
            Err(e) => bad.push(format!("{ds:?} d={d}: {e}")),
        }
    }
    outcome(bad.is_empty(), format!("10 instances, {checks} checks, failures {bad:?}"))
}

fn criterion_9() -> Outcome {
    let mut seqs: Vec<(usize, Vec<u32>)> = Vec::new();
    for n in 1..=3usize {
        let mut tuples: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples.into_iter().flat_map(|t| (1..=6).map(move |d| [t.clone(), vec![d]].concat())).collect();
        }
        seqs.extend(tuples.into_iter().filter(|t| satisfies_partial_hypothesis(t)).map(|t| (n, t)));
    }
    // a spread of sizes: every 7th sequence
    let chosen: Vec<_> = seqs.iter().step_by(7).cloned().collect();
    let mut bad = Vec::new();
    for (k, (n, ds)) in chosen.iter().enumerate() {
        match build_generic_ideal(&InstanceSpec::new(*n, ds).seed(900 + k as u64)) {
            Ok(inst) => {
                let cs = check_arl_stages(&inst);
                bad.extend(cs.into_iter().filter(|c| !c.pass).map(|c| format!("{ds:?}: {}", c.name)));
            }
            Err(e) => bad.push(format!("{ds:?}: {e}")),
        }
    }
    outcome(bad.is_empty() && chosen.len() >= 10, format!("{} degree sequences, failures {bad:?}", chosen.len()))
}

fn criterion_10() -> Outcome {
    let cases: [(usize, &[u32], u32); 6] =
        [(3, &[3, 3, 3], 3), (3, &[3, 3, 4], 4), (3, &[3, 4, 4], 4), (3, &[4, 4, 4], 4), (3, &[4, 4, 5], 5), (2, &[5, 5], 5)];
    let (mut instances, mut matrices) = (0, 0);
    let mut singular = Vec::new();
    let mut errors = Vec::new();
    for (n, ds, d) in cases {
        for seed in 0..2u64 {
            let inst = match build_generic_ideal(&InstanceSpec::new(n, ds).extra(d).seed(seed)) {
                Ok(i) => i,
                Err(e) => {
                    errors.push(format!("{ds:?} d={d}: {e}"));
                    continue;
                }
            };
            match verify_conjectures(&inst) {
                Ok((_, ev)) => {
                    instances += 1;
                    matrices += ev.len();
                    println!("    evidence {ds:?} d={d} seed={}: {}", inst.used_seed, ev.iter().map(|e| format!("{}{}:{}{}", e.regime.name().chars().next().unwrap(), e.i, e.size, if e.nonsingular { "" } else { "!" })).collect::<Vec<_>>().join(" "));
                    singular.extend(ev.iter().filter(|e| !e.nonsingular).map(|e| format!("{ds:?} d={d} i={}", e.i)));
                }
                Err(e) => errors.push(format!("{ds:?} d={d}: {e}")),
            }
        }
    }
    if !singular.is_empty() {
        println!("    SINGULAR THETA FOUND IN THE CONJECTURAL RANGE: {singular:?}");
    }
    outcome(
        errors.is_empty() && instances >= 10,
        format!("{instances} instances, {matrices} matrices, {} singular (non-blocking) {errors:?}", singular.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "main example, initial ideal of (f1, f2)", criterion_1, 5, true),
        (2, "main example, initial ideal of (f1, f2, g)", criterion_2, 10, true),
        (3, "counterexample (4,4,5) with d = 3", criterion_3, 60, true),
        (4, "incremental extension equals Buchberger", criterion_4, 120, true),
        (5, "Hilbert function equals truncated series", criterion_5, 120, true),
        (6, "large-regime Theta_i nonsingular for d >= delta-2", criterion_6, 120, true),
        (7, "predicted in(I,g) for d >= delta-2", criterion_7, 120, true),
        (8, "Stanley, Lefschetz, B~, block and zero-block properties", criterion_8, 120, true),
        (9, "arl initial ideals under the degree hypothesis", criterion_9, 120, true),
        (10, "small and medium Theta_i evidence", criterion_10, 120, false),
    ];
    let mut failed = 0;
    for (k, name, run, limit, blocking) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let pass = o.pass && in_time;
        let tag = match (pass, blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "WARN",
        };
        println!("criterion {k:>2} {tag} {name} ({:.2} s, limit {limit} s): {}", took.as_secs_f64(), o.detail);
        if !pass && blocking {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
