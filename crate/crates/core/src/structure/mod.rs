//! Ideals built from connection classes and the structure theory they support.

mod ideals;
mod verdicts;

pub use ideals::{
    assemble_a, assemble_l, build_root_ideal, build_weight_ideal, orthogonality, verify_root_ideal,
    verify_weight_ideal, weight_orthogonality, Assembly, CrossProduct, OrthogonalityReport, RootIdeal, RootIdealReport,
    WeightIdeal, WeightIdealReport,
};
pub use verdicts::{
    cartan_sum, ideal_weight_split, is_maximal_length, is_root_multiplicative, is_tight, pairing, simple_components,
    zero_weight_sum, ComponentShape, Hypothesis, HypothesisFailure, IdealWeightSplit, MaximalLengthVerdict,
    MultiplicativityVerdict, OversizedSpace, PairingRow, PairingTable, SimpleComponents, StructureError, Summand,
    TightnessVerdict, VanishingProduct,
};

use serde::Serialize;

use crate::connections::{root_classes, weight_classes, ConnectionClass, ConnectionError, OrbitTable};
use crate::hlr::{is_simple, HlrData, SimplicityVerdict};
use crate::split::{check_symmetry, Decomposition};

/// Ideals of every class with their verification reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealsReport {
    pub root_classes: Vec<ConnectionClass>,
    pub weight_classes: Vec<ConnectionClass>,
    pub root_ideals: Vec<RootIdeal>,
    pub weight_ideals: Vec<WeightIdeal>,
    pub root_checks: Vec<RootIdealReport>,
    pub weight_checks: Vec<WeightIdealReport>,
    pub root_orthogonality: OrthogonalityReport,
    pub weight_orthogonality: OrthogonalityReport,
    pub l_assembly: Assembly,
    pub a_assembly: Assembly,
}

impl IdealsReport {
    pub fn passed(&self) -> bool {
        self.root_checks.iter().all(RootIdealReport::passed)
            && self.weight_checks.iter().all(WeightIdealReport::passed)
            && self.root_orthogonality.passed()
            && self.weight_orthogonality.passed()
            && self.l_assembly.passed()
            && self.a_assembly.passed()
    }
}

pub fn ideals_report(h: &HlrData, d: &Decomposition, orbits: &OrbitTable) -> Result<IdealsReport, ConnectionError> {
    let root_classes = root_classes(d, orbits)?;
    let weight_classes = weight_classes(d)?;
    let root_ideals: Vec<RootIdeal> = root_classes.iter().map(|c| build_root_ideal(h, d, c)).collect();
    let weight_ideals: Vec<WeightIdeal> = weight_classes.iter().map(|c| build_weight_ideal(h, d, c)).collect();
    Ok(IdealsReport {
        root_checks: root_ideals.iter().map(|r| verify_root_ideal(h, r)).collect(),
        weight_checks: weight_ideals.iter().map(|w| verify_weight_ideal(h, w)).collect(),
        root_orthogonality: orthogonality(h, &root_ideals),
        weight_orthogonality: weight_orthogonality(h, &weight_ideals),
        l_assembly: assemble_l(h, d, &root_ideals),
        a_assembly: assemble_a(h, d, &weight_ideals),
        root_classes,
        weight_classes,
        root_ideals,
        weight_ideals,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ComponentsOutcome {
    Decomposed(SimpleComponents),
    HypothesesUnmet(HypothesisFailure),
}

/// Every structural verdict for one decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub symmetric: bool,
    pub tightness: TightnessVerdict,
    pub root_multiplicative: MultiplicativityVerdict,
    pub maximal_length: MaximalLengthVerdict,
    pub simplicity: SimplicityVerdict,
    pub pairing: PairingTable,
    pub components: ComponentsOutcome,
}

impl StructureReport {
    /// All hypotheses hold and the simple-component decomposition is certified.
    /// Pairing discrepancies are reported but not counted.
    pub fn passed(&self) -> bool {
        self.symmetric
            && self.tightness.tight
            && self.root_multiplicative.holds
            && self.maximal_length.holds
            && matches!(&self.components, ComponentsOutcome::Decomposed(c) if c.certified())
    }
}

pub fn structure_report(h: &HlrData, d: &Decomposition, ideals: &IdealsReport) -> StructureReport {
    let components = match simple_components(h, d, &ideals.root_ideals, &ideals.weight_ideals) {
        Ok(c) => ComponentsOutcome::Decomposed(c),
        Err(e) => ComponentsOutcome::HypothesesUnmet(e),
    };
    StructureReport {
        symmetric: check_symmetry(d),
        tightness: is_tight(h, d),
        root_multiplicative: is_root_multiplicative(h, d),
        maximal_length: is_maximal_length(d),
        simplicity: is_simple(h, d),
        pairing: pairing(h, &ideals.root_ideals, &ideals.weight_ideals),
        components,
    }
}
