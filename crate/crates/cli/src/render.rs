//! Human-readable summaries of a pipeline report.

use std::fmt::Write;

use homrine_core::hlr::HlrData;
use homrine_core::report::{ReportFile, Verdict};
use homrine_core::structure::ComponentsOutcome;

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn summary(data: &HlrData, r: &ReportFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}, dim L = {}, dim A = {}, dim H = {}", r.field, r.dim_l, r.dim_a, r.cartan.dim());

    let failures: Vec<_> = r.axioms.checks.iter().filter(|c| !c.passed()).collect();
    if failures.is_empty() {
        let _ = writeln!(s, "axioms: all {} hold", r.axioms.checks.len());
    } else {
        let _ = writeln!(s, "axioms: {} of {} fail", failures.len(), r.axioms.checks.len());
        for c in failures {
            let ce = c.counterexample.as_ref().expect("failed check");
            let _ = writeln!(s, "  {:?} fails at indices {:?}", c.axiom, ce.indices);
        }
    }

    if let Some(sp) = &r.split {
        let d = &sp.decomposition;
        let _ = writeln!(s, "roots: {}", d.roots.len());
        for c in &d.roots {
            let _ = writeln!(s, "  {} dim {}", c.functional, c.space.dim());
        }
        let _ = writeln!(s, "weights: {} (dim A_0 = {})", d.weights.len(), d.a0.dim());
        for c in &d.weights {
            let _ = writeln!(s, "  {} dim {}", c.functional, c.space.dim());
        }
        if let Some(g) = &sp.grading {
            let _ = writeln!(s, "grading: {} component pairs, no violations", g.pairs_checked);
        }
    }

    if let Some(c) = &r.connections {
        let _ = writeln!(s, "root classes: {}", c.root_classes.len());
        for class in &c.root_classes {
            let members: Vec<String> = class.members.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  {{{}}}", members.join(", "));
        }
        let _ = writeln!(s, "weight classes: {}", c.weight_classes.len());
        for class in &c.weight_classes {
            let members: Vec<String> = class.members.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  {{{}}}", members.join(", "));
        }
        if let Some(x) = &c.cross_check {
            let _ = writeln!(s, "brute-force agreement (budget {}): {}", x.budget, yes(x.passed()));
        }
    }

    if let Some(i) = &r.ideals {
        for (ideal, check) in i.root_ideals.iter().zip(&i.root_checks) {
            let _ = writeln!(
                s,
                "ideal of {}: dim {} (H part {}), ideal: {}",
                ideal.class.representative,
                ideal.total.dim(),
                ideal.cartan_part.dim(),
                yes(check.passed())
            );
        }
        for (ideal, check) in i.weight_ideals.iter().zip(&i.weight_checks) {
            let _ = writeln!(
                s,
                "A-ideal of {}: dim {} (A_0 part {}), ideal: {}",
                ideal.class.representative,
                ideal.total.dim(),
                ideal.zero_part.dim(),
                yes(check.passed())
            );
        }
        let _ = writeln!(
            s,
            "L reconstructed: {}, A reconstructed: {}",
            yes(i.l_assembly.reconstructs),
            yes(i.a_assembly.reconstructs)
        );
    }

    if let Some(st) = &r.structure {
        let _ = writeln!(s, "tight: {}", st.tightness.tight);
        if !st.tightness.failures.is_empty() {
            let _ = writeln!(s, "  failing: {}", st.tightness.failures.join(", "));
        }
        let _ = writeln!(s, "symmetric: {}", st.symmetric);
        let _ = writeln!(s, "maximal length: {}", st.maximal_length.holds);
        let _ = writeln!(s, "root-multiplicative: {}", st.root_multiplicative.holds);
        let _ = writeln!(s, "simple: {}", st.simplicity.simple);
        match &st.components {
            ComponentsOutcome::Decomposed(c) => {
                let _ = writeln!(s, "simple components ({:?}), certified: {}", c.shape, yes(c.certified()));
                for (i, summand) in c.l_summands.iter().enumerate() {
                    let basis: Vec<String> = summand.space.basis().iter().map(|v| vector(data, v)).collect();
                    let _ = writeln!(s, "  L{i} = <{}>", basis.join(", "));
                }
            }
            ComponentsOutcome::HypothesesUnmet(f) => {
                let _ = writeln!(s, "simple components: hypotheses unmet ({:?})", f.failed);
            }
        }
        let p = &st.pairing;
        let _ = writeln!(
            s,
            "pairing: unique annihilator {}, unique partner {}{}",
            yes(p.unique_annihilator),
            yes(p.unique_partner),
            if p.discrepancy { " (discrepancy)" } else { "" }
        );
    }

    if let Some(stop) = &r.stopped {
        let _ = writeln!(s, "stopped at {:?}: {}", stop.stage, stop.message);
    }
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Negative => "negative",
        Verdict::Unsupported => "unsupported",
    };
    let _ = writeln!(s, "verdict: {verdict}");
    s
}

/// `c₁·x₁ + c₂·x₂ + …` with the algebra's labels.
fn vector(data: &HlrData, v: &[homrine_core::linalg::Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(&data.labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
