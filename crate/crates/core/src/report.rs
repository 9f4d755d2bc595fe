//! The staged pipeline validate → split → connect → ideals → structure and its report.

use std::time::Instant;

use serde::Serialize;

use crate::connections::{
    build_orbits, replay_root_witness, replay_weight_witness, root_classes, weight_classes, ConnectionClass,
    ConnectionError, OrbitTable, DEFAULT_ORBIT_BOUND,
};
use crate::hlr::{verify_axioms, AxiomReport, HlrData};
use crate::linalg::{Field, Subspace};
use crate::oracle::{bf_partition, bf_root_connected, bf_weight_connected, ChainBudget};
use crate::split::{check_grading, check_psi_shift, split, Decomposition, GradingReport, ShiftCheck};
use crate::structure::{ideals_report, structure_report, IdealsReport, StructureReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Validate,
    Split,
    Connect,
    Ideals,
    Structure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// A mathematical check came out negative.
    Negative,
    /// The input lies outside what the engine handles (not split, orbit too long).
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub orbit_bound: usize,
    pub chain_budget: usize,
    /// Compare the connection partition against the brute-force enumeration.
    pub cross_check: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { orbit_bound: DEFAULT_ORBIT_BOUND, chain_budget: 4, cross_check: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSection {
    pub decomposition: Decomposition,
    pub grading: Option<GradingReport>,
    pub psi_shift: Vec<ShiftCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub budget: usize,
    pub roots_agree: bool,
    pub weights_agree: bool,
    pub witnesses_replay: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.roots_agree && self.weights_agree && self.witnesses_replay
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectSection {
    pub orbits: OrbitTable,
    pub root_classes: Vec<ConnectionClass>,
    pub weight_classes: Vec<ConnectionClass>,
    pub cross_check: Option<CrossCheck>,
}

/// Why the pipeline stopped before the requested stage, if it did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stop {
    pub stage: Stage,
    pub verdict: Verdict,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTime {
    pub stage: Stage,
    pub millis: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timing {
    pub stages: Vec<StageTime>,
    pub total_millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportFile {
    pub field: Field,
    pub dim_l: usize,
    pub dim_a: usize,
    pub cartan: Subspace,
    pub target: Stage,
    pub config: PipelineConfig,
    pub verdict: Verdict,
    pub axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connections: Option<ConnectSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideals: Option<IdealsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped: Option<Stop>,
    pub timing: Timing,
}

impl ReportFile {
    /// JSON with the timing block removed; stable across runs.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable report");
        if let Some(map) = v.as_object_mut() {
            map.remove("timing");
        }
        v
    }
}

struct Clock {
    start: Instant,
    timing: Timing,
}

impl Clock {
    fn time<T>(&mut self, stage: Stage, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timing.stages.push(StageTime { stage, millis: t.elapsed().as_secs_f64() * 1e3 });
        out
    }
}

fn cross_check(d: &Decomposition, orbits: &OrbitTable, section: &ConnectSection, budget: usize) -> CrossCheck {
    let b = ChainBudget { max_family_len: budget, max_orbit_exp: None };
    let roots = d.root_functionals();
    let weights = d.weight_functionals();
    let members = |classes: &[ConnectionClass]| classes.iter().map(|c| c.members.clone()).collect::<Vec<_>>();
    let brute_roots = bf_partition(&roots, |g, x| bf_root_connected(d, orbits, g, x, b));
    let brute_weights = bf_partition(&weights, |a, c| bf_weight_connected(d, a, c, b));
    let witnesses_replay = section.root_classes.iter().all(|c| {
        c.members
            .iter()
            .zip(&c.witnesses)
            .all(|(m, w)| replay_root_witness(d, orbits, &c.representative, m, w).unwrap_or(false))
    }) && section
        .weight_classes
        .iter()
        .all(|c| c.members.iter().zip(&c.witnesses).all(|(m, w)| replay_weight_witness(d, &c.representative, m, w)));
    CrossCheck {
        budget,
        roots_agree: brute_roots == members(&section.root_classes),
        weights_agree: brute_weights == members(&section.weight_classes),
        witnesses_replay,
    }
}

/// Runs every stage up to `target`, stopping at the first one that cannot
/// proceed. Later stages are only attempted on a valid, split input.
pub fn run(data: &HlrData, cartan: &Subspace, config: PipelineConfig, target: Stage) -> ReportFile {
    let mut clock = Clock { start: Instant::now(), timing: Timing::default() };
    let axioms = clock.time(Stage::Validate, || verify_axioms(data));
    let mut report = ReportFile {
        field: data.field(),
        dim_l: data.dim(),
        dim_a: data.a.dim(),
        cartan: cartan.clone(),
        target,
        config,
        verdict: Verdict::Pass,
        axioms,
        split: None,
        connections: None,
        ideals: None,
        structure: None,
        stopped: None,
        timing: Timing::default(),
    };
    let outcome = stages(data, cartan, config, target, &mut clock, &mut report);
    if let Err(stop) = outcome {
        report.verdict = stop.verdict;
        report.stopped = Some(stop);
    }
    clock.timing.total_millis = clock.start.elapsed().as_secs_f64() * 1e3;
    report.timing = clock.timing;
    report
}

fn stages(
    data: &HlrData,
    cartan: &Subspace,
    config: PipelineConfig,
    target: Stage,
    clock: &mut Clock,
    report: &mut ReportFile,
) -> Result<(), Stop> {
    let stop = |stage, verdict, message: String| Stop { stage, verdict, message };
    if let Some(check) = report.axioms.first_failure() {
        return Err(stop(Stage::Validate, Verdict::Negative, format!("axiom {:?} fails", check.axiom)));
    }
    if target == Stage::Validate {
        return Ok(());
    }

    let d = clock
        .time(Stage::Split, || split(data, cartan))
        .map_err(|e| stop(Stage::Split, Verdict::Unsupported, e.to_string()))?;
    let grading = check_grading(data, &d);
    let psi_shift = check_psi_shift(data, &d);
    let grading_error = grading.as_ref().err().map(ToString::to_string);
    let shift_ok = psi_shift.iter().all(ShiftCheck::passed);
    report.split = Some(SplitSection { decomposition: d.clone(), grading: grading.ok(), psi_shift });
    if let Some(message) = grading_error {
        return Err(stop(Stage::Split, Verdict::Negative, message));
    }
    if !shift_ok {
        return Err(stop(Stage::Split, Verdict::Negative, "twist does not shift root spaces".into()));
    }
    if target == Stage::Split {
        return Ok(());
    }

    let connection_error = |e: ConnectionError| {
        let verdict = match e {
            ConnectionError::OrbitUnbounded { .. } | ConnectionError::InvalidBound => Verdict::Unsupported,
            _ => Verdict::Negative,
        };
        stop(Stage::Connect, verdict, e.to_string())
    };
    let orbits = clock.time(Stage::Connect, || build_orbits(&d, config.orbit_bound)).map_err(connection_error)?;
    let root_classes = root_classes(&d, &orbits).map_err(connection_error)?;
    let weight_classes = weight_classes(&d).map_err(connection_error)?;
    let mut section = ConnectSection { orbits: orbits.clone(), root_classes, weight_classes, cross_check: None };
    if config.cross_check {
        section.cross_check = Some(cross_check(&d, &orbits, &section, config.chain_budget));
    }
    let agrees = section.cross_check.as_ref().is_none_or(CrossCheck::passed);
    report.connections = Some(section);
    if !agrees {
        return Err(stop(Stage::Connect, Verdict::Negative, "brute-force partition disagrees".into()));
    }
    if target == Stage::Connect {
        return Ok(());
    }

    let ideals = clock.time(Stage::Ideals, || ideals_report(data, &d, &orbits)).map_err(connection_error)?;
    let ideals_ok = ideals.passed();
    report.ideals = Some(ideals);
    if !ideals_ok {
        return Err(stop(Stage::Ideals, Verdict::Negative, "an ideal check failed".into()));
    }
    if target == Stage::Ideals {
        return Ok(());
    }

    let ideals = report.ideals.as_ref().expect("set above");
    let structure = clock.time(Stage::Structure, || structure_report(data, &d, ideals));
    let ok = structure.passed();
    report.structure = Some(structure);
    if !ok {
        return Err(stop(Stage::Structure, Verdict::Negative, "structural hypotheses or certificates fail".into()));
    }
    Ok(())
}
