//! Acceptance checks, one PASS/FAIL line each. Exits nonzero if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use homrine_core::connections::{
    build_orbits, replay_root_witness, replay_weight_witness, root_classes, weight_classes, ConnectionClass, Witness,
    DEFAULT_ORBIT_BOUND,
};
use homrine_core::corpus::{build, CorpusEntry, SplitExpectation, IDS};
use homrine_core::format::{canonicalize, parse, AlgebraFile};
use homrine_core::hlr::{is_ideal, is_simple, verify_axioms, HlrData};
use homrine_core::linalg::{unit, Subspace};
use homrine_core::oracle::{bf_partition, bf_root_connected, bf_weight_connected, literal_root_family, ChainBudget};
use homrine_core::report::{run, PipelineConfig, Stage};
use homrine_core::split::{check_grading, check_psi_shift, split, Decomposition, RootFunctional, SplitError};
use homrine_core::structure::{ideals_report, is_tight, pairing, simple_components, ComponentShape};
use serde_json::Value;
use tempfile::TempDir;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn entry(id: &str) -> CorpusEntry {
    build(id).expect("registered")
}

/// Every corpus entry expected to decompose, with its decomposition.
fn decomposed() -> Result<Vec<(&'static str, HlrData, Decomposition)>, String> {
    let mut out = Vec::new();
    for &id in IDS {
        let e = entry(id);
        if let SplitExpectation::Split(_) = e.expected.split {
            let d = split(&e.data, &e.h).map_err(|err| format!("{id}: {err}"))?;
            out.push((id, e.data, d));
        }
    }
    Ok(out)
}

fn functional(v: &[i64], h: &HlrData) -> RootFunctional {
    RootFunctional(v.iter().map(|&x| h.field().from_i64(x)).collect())
}

fn axioms() -> Outcome {
    let entries: Vec<CorpusEntry> =
        ["E1", "E2", "E3", "E4", "E5", "E7", "E8", "M1", "M2", "M3", "M4", "M5", "M6"].map(entry).into();
    let start = Instant::now();
    let reports: Vec<_> = entries.iter().map(|e| verify_axioms(&e.data)).collect();
    let elapsed = start.elapsed();
    for (e, r) in entries.iter().zip(&reports) {
        match e.expected.failing_axiom {
            None => ensure(r.passed(), || format!("{} fails {:?}", e.id, r.first_failure()))?,
            Some(target) => {
                let first = r.first_failure().map(|c| c.axiom);
                ensure(first == Some(target), || format!("{}: expected {target:?} first, got {first:?}", e.id))?;
            }
        }
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("7 valid, 6 mutants caught, {elapsed:.2?}"))
}

fn split_suite() -> Outcome {
    let e1 = entry("E1");
    let d = split(&e1.data, &e1.h).map_err(|e| e.to_string())?;
    ensure(d.roots.len() == 2 && d.roots.iter().all(|c| c.space.dim() == 1), || "E1 roots".into())?;
    ensure(d.weights.is_empty(), || "E1 has weights".into())?;
    let mut gammas = d.root_functionals();
    gammas.sort();
    ensure(gammas == [functional(&[-2], &e1.data), functional(&[2], &e1.data)], || format!("E1 roots {gammas:?}"))?;

    let e3 = entry("E3");
    let d = split(&e3.data, &e3.h).map_err(|e| e.to_string())?;
    let mut roots: Vec<_> = d.roots.iter().map(|c| (c.functional.clone(), c.space.dim())).collect();
    roots.sort();
    let g1 = functional(&[1], &e3.data);
    ensure(roots == [(g1.clone(), 2), (functional(&[2], &e3.data), 1)], || format!("E3 roots {roots:?}"))?;
    let t = Subspace::span(e3.data.field(), 2, [unit(e3.data.field(), 2, 1)]);
    ensure(d.weights.len() == 1 && d.weights[0].functional == g1 && d.weights[0].space == t, || "E3 weights".into())?;

    let e6 = entry("E6");
    ensure(matches!(split(&e6.data, &e6.h), Err(SplitError::NotSplit { .. })), || "E6 split".into())?;

    let all = decomposed()?;
    for (id, _, d) in &all {
        ensure(d.l_component(&d.zero_functional()) == d.h, || format!("{id}: L_0 differs from H"))?;
    }
    Ok(format!("E1, E3, E6 as stated; L_0 = H on {} decompositions", all.len()))
}

fn grading() -> Outcome {
    let mut pairs = 0;
    let all = decomposed()?;
    for (id, h, d) in &all {
        pairs += check_grading(h, d).map_err(|e| format!("{id}: {e}"))?.pairs_checked;
    }
    Ok(format!("{pairs} component pairs over {} decompositions, no violations", all.len()))
}

fn psi_shift() -> Outcome {
    let mut checked = 0;
    for id in ["E1", "E3", "E5"] {
        let e = entry(id);
        let d = split(&e.data, &e.h).map_err(|err| err.to_string())?;
        for s in check_psi_shift(&e.data, &d) {
            ensure(s.passed(), || format!("{id}: {} does not shift", s.root))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} components on E1, E3, E5"))
}

fn members(classes: &[ConnectionClass]) -> Vec<Vec<RootFunctional>> {
    classes.iter().map(|c| c.members.clone()).collect()
}

fn oracle() -> Outcome {
    let budget = ChainBudget { max_family_len: 4, max_orbit_exp: None };
    let all = decomposed()?;
    let start = Instant::now();
    let mut replayed = 0;
    for (id, _, d) in &all {
        let orbits = build_orbits(d, DEFAULT_ORBIT_BOUND).map_err(|e| format!("{id}: {e}"))?;
        let roots = root_classes(d, &orbits).map_err(|e| format!("{id}: {e}"))?;
        let weights = weight_classes(d).map_err(|e| format!("{id}: {e}"))?;
        let bf_roots = bf_partition(&d.root_functionals(), |g, x| bf_root_connected(d, &orbits, g, x, budget));
        let bf_weights = bf_partition(&d.weight_functionals(), |a, b| bf_weight_connected(d, a, b, budget));
        ensure(members(&roots) == bf_roots, || format!("{id}: root partitions differ"))?;
        ensure(members(&weights) == bf_weights, || format!("{id}: weight partitions differ"))?;
        for c in &roots {
            for (m, w) in c.members.iter().zip(&c.witnesses) {
                let literal = match w {
                    Witness::Family { family } => literal_root_family(d, &orbits, &c.representative, m, family),
                    Witness::Direct { .. } => true,
                };
                let replay = replay_root_witness(d, &orbits, &c.representative, m, w).unwrap_or(false);
                ensure(literal && replay, || format!("{id}: witness for {m} does not replay"))?;
                replayed += 1;
            }
        }
        for c in &weights {
            for (m, w) in c.members.iter().zip(&c.witnesses) {
                ensure(replay_weight_witness(d, &c.representative, m, w), || format!("{id}: weight witness {m}"))?;
                replayed += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{} instances, {replayed} witnesses replayed, {elapsed:.2?}", all.len()))
}

fn ideals() -> Outcome {
    let mut count = 0;
    for (id, h, d) in decomposed()? {
        let orbits = build_orbits(&d, DEFAULT_ORBIT_BOUND).map_err(|e| e.to_string())?;
        let r = ideals_report(&h, &d, &orbits).map_err(|e| e.to_string())?;
        for (ideal, check) in r.root_ideals.iter().zip(&r.root_checks) {
            ensure(check.passed() && is_ideal(&h, &ideal.total), || format!("{id}: root ideal {check:?}"))?;
        }
        ensure(r.weight_checks.iter().all(|c| c.passed()), || format!("{id}: weight ideal"))?;
        ensure(r.root_orthogonality.passed(), || format!("{id}: root ideals do not commute"))?;
        ensure(r.weight_orthogonality.passed(), || format!("{id}: weight ideals do not annihilate"))?;
        count += r.root_ideals.len() + r.weight_ideals.len();
    }
    Ok(format!("{count} ideals verified"))
}

fn reconstruction() -> Outcome {
    let all = decomposed()?;
    for (id, h, d) in &all {
        let orbits = build_orbits(d, DEFAULT_ORBIT_BOUND).map_err(|e| e.to_string())?;
        let r = ideals_report(h, d, &orbits).map_err(|e| e.to_string())?;
        ensure(r.l_assembly.reconstructs, || format!("{id}: L not reconstructed"))?;
        ensure(r.a_assembly.reconstructs, || format!("{id}: A not reconstructed"))?;
        if *id == "E4" {
            ensure(r.l_assembly.direct_regime && r.l_assembly.direct == Some(true), || "E4 sum not direct".into())?;
        }
    }
    Ok(format!("L and A reconstructed on {} instances; E4 direct", all.len()))
}

fn structure() -> Outcome {
    let e = entry("E7");
    let d = split(&e.data, &e.h).map_err(|err| err.to_string())?;
    let t = is_tight(&e.data, &d);
    let conditions = [
        t.center_l_zero,
        t.center_a_zero,
        t.algebra_square_full,
        t.action_full,
        t.cartan_exhausted,
        t.zero_weight_exhausted,
    ];
    ensure(t.tight && conditions.iter().all(|&c| c), || format!("E7 not tight: {:?}", t.failures))?;
    let orbits = build_orbits(&d, DEFAULT_ORBIT_BOUND).map_err(|err| err.to_string())?;
    let r = ideals_report(&e.data, &d, &orbits).map_err(|err| err.to_string())?;
    let c = simple_components(&e.data, &d, &r.root_ideals, &r.weight_ideals)
        .map_err(|f| format!("hypotheses fail: {:?}", f.failed))?;
    ensure(c.certified(), || "components not certified".into())?;
    if c.shape == ComponentShape::Simple {
        let s = is_simple(&e.data, &d);
        ensure(s.simple && s.seed_complete, || format!("simplicity {s:?}"))?;
    }
    let p = pairing(&e.data, &r.root_ideals, &r.weight_ideals);
    ensure(p.annihilates.len() == r.weight_ideals.len(), || "pairing table shape".into())?;
    Ok(format!(
        "tight, {:?} certified; pairing unique annihilator {}, unique partner {}, discrepancy {}",
        c.shape, p.unique_annihilator, p.unique_partner, p.discrepancy
    ))
}

fn homrine(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_homrine"))
        .args(args)
        .env_remove("HOMRINE_FIELD")
        .output()
        .map_err(|e| e.to_string())
}

fn export(dir: &Path, id: &str) -> Result<String, String> {
    let path = dir.join(format!("{id}.json"));
    let out = homrine(&["corpus", id, "--out", path.to_str().unwrap()])?;
    ensure(out.status.success(), || format!("export {id}: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok(path.to_str().unwrap().to_string())
}

/// Reorders sparse triples and writes their scalars unreduced.
fn scramble(text: &str) -> String {
    let mut v: Value = serde_json::from_str(text).unwrap();
    for (block, key) in [("A", "mult"), ("L", "bracket"), ("L", "action")] {
        if let Some(list) = v[block][key].as_array_mut() {
            list.reverse();
            for t in list.iter_mut() {
                let s = t[3].as_str().unwrap().to_string();
                t[3] = Value::String(if s.contains('/') { s } else { format!("{}/3", 3 * s.parse::<i64>().unwrap()) });
            }
        }
    }
    serde_json::to_string_pretty(&v).unwrap()
}

fn strip_timing(text: &str) -> Result<Value, String> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    v.as_object_mut().and_then(|m| m.remove("timing")).ok_or("report has no timing block")?;
    Ok(v)
}

fn cli() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    for id in IDS {
        let path = export(dir.path(), id)?;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let loaded = parse(&text, None).map_err(|e| format!("{id}: {e}"))?;
        let again = AlgebraFile::export(&loaded.data, &loaded.h, None).to_canonical_string();
        ensure(again == text, || format!("{id}: re-export differs"))?;
        let canonical = canonicalize(&scramble(&text)).map_err(|e| format!("{id}: {e}"))?;
        ensure(canonical == text, || format!("{id}: canonical form differs"))?;
    }

    let matrix = [("E1", [0, 0, 1]), ("E6", [0, 3, 3]), ("E7", [0, 0, 0]), ("M1", [1, 1, 1])];
    for (id, codes) in matrix {
        let path = export(dir.path(), id)?;
        for (command, want) in ["validate", "split", "structure"].into_iter().zip(codes) {
            let got = homrine(&["-q", command, &path])?.status.code();
            ensure(got == Some(want), || format!("{id} {command}: exit {got:?}, expected {want}"))?;
        }
    }

    let path = export(dir.path(), "E9")?;
    let mut reports = Vec::new();
    for name in ["first.json", "second.json"] {
        let out = dir.path().join(name);
        homrine(&["-q", "report", &path, out.to_str().unwrap()])?;
        reports.push(strip_timing(&std::fs::read_to_string(out).map_err(|e| e.to_string())?)?);
    }
    ensure(reports[0] == reports[1], || "reports differ between runs".into())?;
    Ok(format!("{} entries round-trip, exit matrix matches, reports deterministic", IDS.len()))
}

fn performance() -> Outcome {
    let e = entry("P1");
    ensure(e.data.dim() <= 12 && e.data.a.dim() <= 8, || "P1 exceeds the size envelope".into())?;
    let start = Instant::now();
    let r = run(&e.data, &e.h, PipelineConfig::default(), Stage::Structure);
    let in_process = start.elapsed();
    ensure(r.ideals.as_ref().is_some_and(|i| i.passed()), || "P1 ideals fail".into())?;

    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let path = export(dir.path(), "P1")?;
    let out = dir.path().join("report.json");
    let start = Instant::now();
    homrine(&["-q", "report", &path, out.to_str().unwrap()])?;
    let via_cli = start.elapsed();
    within(in_process, Duration::from_secs(2))?;
    within(via_cli, Duration::from_secs(2))?;
    Ok(format!(
        "dim L = {}, dim A = {}: {in_process:.2?} in process, {via_cli:.2?} via the binary",
        e.data.dim(),
        e.data.a.dim()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axiom suite", axioms),
        ("split suite", split_suite),
        ("grading suite", grading),
        ("twist shift suite", psi_shift),
        ("connection oracle equivalence", oracle),
        ("ideal suite", ideals),
        ("decomposition reconstruction", reconstruction),
        ("structure suite", structure),
        ("cli contract", cli),
        ("performance envelope", performance),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", n + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason}", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
