use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use genericgb::generic::{
    check_arl_stages, check_b_tilde_structure, check_hilbert_match, check_lefschetz_all, check_stanley, predict_initial,
    satisfies_partial_hypothesis,
};
use genericgb::golden::{reproduce_counter, reproduce_main};
use genericgb::groebner::ggv_extend_traced;
use genericgb::theta::{check_block_structure, check_zero_blocks, verify_conjectures, verify_corollary_range, Evidence};
use genericgb::{build_all, build_generic_ideal, Error, GenericInstance, MonomialIdeal, Report};
use rayon::prelude::*;
use serde::Serialize;

use crate::{exit_code, Example, InstanceArgs, Suite};

type CmdResult = Result<u8, Error>;

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn dump_matrices(inst: &GenericInstance, through: u32, path: &Path) -> Result<(), Error> {
    let ext = inst.extension()?;
    let ms = build_all(&inst.basis, inst.table()?, &ext.g, through)?;
    let io = |e: std::io::Error| Error::InvalidInput(format!("cannot write {}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    for (k, m) in ms.iter().enumerate() {
        if k > 0 {
            writeln!(w).map_err(io)?;
        }
        m.write_tsv(&mut w).map_err(io)?;
    }
    w.flush().map_err(io)
}

#[derive(Serialize)]
struct GbOutput {
    instance: String,
    seed: u64,
    retries: u32,
    initial_ideal: Vec<String>,
    basis: Vec<String>,
}

pub fn gb(args: &InstanceArgs) -> CmdResult {
    let inst = build_generic_ideal(&args.spec(args.seed)?)?;
    let with_z = args.with_z;
    let out = GbOutput {
        instance: inst.spec.label(),
        seed: inst.used_seed,
        retries: inst.retries,
        initial_ideal: inst.initial_ideal().format(with_z),
        basis: inst.basis.format(with_z),
    };
    if args.json {
        print_json(&out);
    } else {
        println!("{} (seed {}, retries {})", out.instance, out.seed, out.retries);
        println!("in(I) = ({})", out.initial_ideal.join(", "));
        for p in &out.basis {
            println!("  {p}");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ExtendOutput {
    instance: String,
    seed: u64,
    retries: u32,
    degree_cap: u32,
    computed: Vec<String>,
    predicted: Option<Vec<String>>,
    conjectural: bool,
    #[serde(rename = "match")]
    matches: Option<bool>,
    note: Option<String>,
}

pub fn extend(args: &InstanceArgs) -> CmdResult {
    if args.extra.is_none() {
        return Err(Error::InvalidInput("extend needs --extra".into()));
    }
    let mut inst = build_generic_ideal(&args.spec(args.seed)?)?;
    if let Some(cap) = args.degree_cap {
        let ext = inst.extension.as_mut().expect("extra form requested");
        let (basis, trace) = ggv_extend_traced(&inst.basis, &ext.g, cap)?;
        ext.basis = basis;
        ext.trace = trace;
        ext.cap = cap;
    }
    let ext = inst.extension()?;
    let computed = ext.initial_ideal();
    let (mut predicted, mut conjectural, mut note) = (None::<MonomialIdeal>, false, None);
    if !inst.spec.is_square() {
        note = Some("no prediction: the number of forms differs from the number of x variables".to_string());
    } else {
        match predict_initial(&inst) {
            Ok((p, c)) => {
                predicted = Some(p);
                conjectural = c;
            }
            Err(Error::DegreeOrderViolation { d, max }) => {
                note = Some(format!(
                    "no prediction: the description of in(I,g) needs d >= every generator degree, here d = {d} < {max}"
                ));
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(path) = &args.dump_matrix {
        if inst.spec.is_square() {
            dump_matrices(&inst, ext.cap, path)?;
        } else {
            return Err(Error::InvalidInput("--dump-matrix needs as many forms as x variables".into()));
        }
    }
    let matches = predicted.as_ref().map(|p| *p == computed);
    let out = ExtendOutput {
        instance: inst.spec.label(),
        seed: inst.used_seed,
        retries: inst.retries,
        degree_cap: ext.cap,
        computed: computed.format(true),
        predicted: predicted.as_ref().map(|p| p.format(true)),
        conjectural,
        matches,
        note,
    };
    if args.json {
        print_json(&out);
    } else {
        println!("{} (seed {}, retries {}, degree cap {})", out.instance, out.seed, out.retries, out.degree_cap);
        println!("computed  in(I,g) = ({})", out.computed.join(", "));
        if let Some(p) = &out.predicted {
            let kind = if conjectural { "conjectural" } else { "theorem" };
            println!("predicted in(I,g) = ({}) [{kind}]", p.join(", "));
            println!("match: {}", matches.unwrap_or(false));
        }
        if let Some(n) = &out.note {
            println!("note: {n}");
        }
    }
    Ok(if matches == Some(false) && !conjectural { 3 } else { 0 })
}

struct Trial {
    report: Report,
    evidence: Vec<Evidence>,
}

fn run_trial(suite: Suite, args: &InstanceArgs, seed: u64, dump: bool) -> Result<Trial, Error> {
    let needs_extra = matches!(suite, Suite::Blocks | Suite::Corollary | Suite::Conjectures);
    if needs_extra && args.extra.is_none() {
        return Err(Error::InvalidInput(format!("verify {suite:?} needs --extra").to_lowercase()));
    }
    let inst = build_generic_ideal(&args.spec(seed)?)?;
    let mut report = inst.report();
    let mut evidence = Vec::new();
    match suite {
        Suite::Stanley => report.extend(check_stanley(inst.table()?)),
        Suite::Lefschetz => report.extend(check_lefschetz_all(inst.table()?)),
        Suite::Hilbert => {
            let (t, h) = (inst.table()?, inst.hilbert()?);
            report.push(check_hilbert_match(t, h));
            report.extend(check_b_tilde_structure(t, h));
        }
        Suite::Arl => {
            report.conjectural = !satisfies_partial_hypothesis(&args.degrees);
            report.extend(check_arl_stages(&inst));
        }
        Suite::Blocks => {
            let ext = inst.extension()?;
            let table = inst.table()?;
            let delta = table.delta();
            report.extend(check_block_structure(&inst.basis, table, &ext.g, delta)?);
            for m in build_all(&inst.basis, table, &ext.g, delta)? {
                report.extend(check_zero_blocks(&m));
            }
        }
        Suite::Corollary => report = verify_corollary_range(&inst)?,
        Suite::Conjectures => {
            let (r, e) = verify_conjectures(&inst)?;
            report = r;
            evidence = e;
        }
    }
    if dump {
        if let Some(path) = &args.dump_matrix {
            dump_matrices(&inst, inst.table()?.delta(), path)?;
        }
    }
    Ok(Trial { report, evidence })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    suite: String,
    pass: bool,
    trials: Vec<&'a Report>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    evidence: Vec<&'a Evidence>,
}

pub fn verify(suite: Suite, args: &InstanceArgs) -> CmdResult {
    if args.trials == 0 {
        return Err(Error::InvalidInput("--trials must be positive".into()));
    }
    let results: Vec<Result<Trial, Error>> = (0..args.trials)
        .into_par_iter()
        .map(|t| run_trial(suite, args, args.seed.wrapping_add(t as u64), t == 0))
        .collect();
    // bad input outranks genericity failures, which outrank the checks
    if let Some(e) = results.iter().filter_map(|r| r.as_ref().err()).min_by_key(|e| exit_code(e)) {
        return Err(e.clone());
    }
    let trials: Vec<Trial> = results.into_iter().map(|r| r.unwrap()).collect();
    let pass = trials.iter().all(|t| t.report.conjectural || t.report.all_pass());
    let singular = trials.iter().flat_map(|t| &t.evidence).filter(|e| !e.nonsingular).count();
    let out = VerifyOutput {
        suite: format!("{suite:?}").to_lowercase(),
        pass,
        trials: trials.iter().map(|t| &t.report).collect(),
        evidence: trials.iter().flat_map(|t| &t.evidence).collect(),
    };
    if args.json {
        print_json(&out);
    } else {
        for t in &trials {
            let r = &t.report;
            let status = if r.all_pass() { "pass" } else if r.conjectural { "counterexample" } else { "FAIL" };
            println!("{} seed {} retries {}: {status} ({} checks)", r.instance, r.seed, r.retries, r.checks.len());
            for c in r.failures() {
                println!("  {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
            }
        }
        if !out.evidence.is_empty() {
            println!("i\tregime\tsize\tnonsingular\tseed");
            for e in &out.evidence {
                println!("{}\t{}\t{}\t{}\t{}", e.i, e.regime.name(), e.size, e.nonsingular, e.seed);
            }
        }
        println!("{}: {}", out.suite, if pass { "pass" } else { "FAIL" });
    }
    if singular > 0 {
        eprintln!("found {singular} singular Theta_i in the conjectural range");
    }
    Ok(if pass { 0 } else { 3 })
}

pub fn reproduce(example: Example, seed: u64, json: bool) -> CmdResult {
    let report = match example {
        Example::PaperMain => reproduce_main(seed)?,
        Example::PaperCounter => reproduce_counter(seed)?,
    };
    if json {
        print_json(&report);
    } else {
        for c in &report.checks {
            match &c.witness {
                None => println!("PASS {}", c.name),
                Some(w) => println!("FAIL {}: {w}", c.name),
            }
        }
    }
    Ok(if report.all_pass() { 0 } else { 3 })
}
