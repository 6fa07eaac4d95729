//! JSON documents. Field order is part of the format; integers that can
//! exceed 64 bits are decimal strings.

use serde::Serialize;
use stabforge_core::bounds::{BoundsReport, Verdict};
use stabforge_core::census::CensusRow;
use stabforge_core::constructor::{Certificate, NicePair, TraceStep};
use stabforge_core::speclang::format_cycles;
use stabforge_core::{Limits, PermGroup, PointSet, Result, StructureReport};

pub const FORMAT_VERSION: u32 = 1;

/// Sorted 1-based point list.
pub fn one_based(set: PointSet) -> Vec<usize> {
    set.iter().map(|p| p + 1).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct VerdictDoc {
    pub required_structure: bool,
    pub is_2_group: bool,
    pub is_nilpotent: bool,
    pub o2_is_elementary_abelian_3: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct StabilizerDoc {
    pub order: String,
    pub generators: Vec<String>,
    pub o2_order: String,
    pub o2_exponent: u64,
    pub verdict: VerdictDoc,
}

impl StabilizerDoc {
    pub fn new(stab: &PermGroup, report: &StructureReport) -> Self {
        StabilizerDoc {
            order: report.stab_order.to_string(),
            generators: stab.generators().iter().map(format_cycles).collect(),
            o2_order: report.o2_order.to_string(),
            o2_exponent: report.o2_exponent,
            verdict: VerdictDoc {
                required_structure: report.required_structure,
                is_2_group: report.is_2_group,
                is_nilpotent: report.is_nilpotent,
                o2_is_elementary_abelian_3: report.o2_is_elementary_abelian_3,
            },
        }
    }

    /// Stabilizer of `delta` in `g` with its report.
    pub fn compute(g: &PermGroup, delta: PointSet, limits: &Limits) -> Result<Self> {
        let stab = g.set_stabilizer(delta);
        let report = stab.structure_report(limits)?;
        Ok(StabilizerDoc::new(&stab, &report))
    }
}

#[derive(Serialize, Debug)]
pub struct PairDoc {
    pub delta1: Vec<usize>,
    pub delta2: Vec<usize>,
    pub stabilizer1: StabilizerDoc,
    pub stabilizer2: StabilizerDoc,
}

impl PairDoc {
    pub fn new(g: &PermGroup, pair: &NicePair) -> Self {
        let block = |d: PointSet, r: &StructureReport| StabilizerDoc::new(&g.set_stabilizer(d), r);
        PairDoc {
            delta1: one_based(pair.delta1),
            delta2: one_based(pair.delta2),
            stabilizer1: block(pair.delta1, &pair.report1),
            stabilizer2: block(pair.delta2, &pair.report2),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct TraceDoc {
    pub depth: usize,
    pub case: String,
    pub degree: usize,
    pub group_order: String,
    pub part_sizes: Vec<usize>,
    pub pattern1: Vec<String>,
    pub pattern2: Vec<String>,
    pub triple: Option<Vec<usize>>,
    pub sizes: [usize; 2],
}

impl From<&TraceStep> for TraceDoc {
    fn from(s: &TraceStep) -> Self {
        TraceDoc {
            depth: s.depth,
            case: s.case.to_string(),
            degree: s.degree,
            group_order: s.group_order.to_string(),
            part_sizes: s.part_sizes.clone(),
            pattern1: s.pattern1.iter().map(ToString::to_string).collect(),
            pattern2: s.pattern2.iter().map(ToString::to_string).collect(),
            triple: s.triple.map(one_based),
            sizes: [s.sizes.0, s.sizes.1],
        }
    }
}

pub fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::NotApplicable => "not applicable",
    }
}

#[derive(Serialize, Debug)]
pub struct CycleRowDoc {
    pub element_order: u64,
    pub cycle_count: usize,
    pub elements: u64,
}

#[derive(Serialize, Debug)]
pub struct BoundsDoc {
    pub degree: usize,
    pub group_order: String,
    pub wolf_bound: f64,
    pub wolf_holds: &'static str,
    pub g0_count: u64,
    pub max_cycle_count: usize,
    pub cycle_bound: [u64; 2],
    pub cycle_bound_five_ninths: &'static str,
    pub cycle_bound_half: &'static str,
    pub cycles: Vec<CycleRowDoc>,
    pub s_count: String,
    pub s_count_bound: &'static str,
    pub threshold_2n: String,
    pub threshold_half: String,
    pub verdict_two_group_exists: bool,
    pub verdict_nice_by_counting: bool,
}

impl From<&BoundsReport> for BoundsDoc {
    fn from(r: &BoundsReport) -> Self {
        BoundsDoc {
            degree: r.degree,
            group_order: r.group_order.to_string(),
            wolf_bound: r.wolf.bound,
            wolf_holds: verdict_text(r.wolf.holds),
            g0_count: r.g0_count,
            max_cycle_count: r.max_cycle_count,
            cycle_bound: [r.cycle_bound.0, r.cycle_bound.1],
            cycle_bound_five_ninths: verdict_text(r.cycles.five_ninths),
            cycle_bound_half: verdict_text(r.cycles.half),
            cycles: r
                .cycles
                .histogram
                .iter()
                .map(|(&(element_order, cycle_count), &elements)| CycleRowDoc {
                    element_order,
                    cycle_count,
                    elements,
                })
                .collect(),
            s_count: r.s_count.to_string(),
            s_count_bound: verdict_text(r.s_count_bound),
            threshold_2n: r.threshold_2n.to_string(),
            threshold_half: r.threshold_half.to_string(),
            verdict_two_group_exists: r.verdict_two_group_exists,
            verdict_nice_by_counting: r.verdict_nice_by_counting,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct CensusRowDoc {
    pub size: usize,
    pub total: u64,
    pub examined: u64,
    pub hit_by_g0: Option<u64>,
    pub two_group: u64,
    pub required: u64,
    pub nilpotent: u64,
    pub min_stab_order: Option<String>,
    pub max_stab_order: Option<String>,
}

impl From<&CensusRow> for CensusRowDoc {
    fn from(r: &CensusRow) -> Self {
        CensusRowDoc {
            size: r.size,
            total: r.total,
            examined: r.examined,
            hit_by_g0: r.hit_by_g0,
            two_group: r.two_group,
            required: r.required,
            nilpotent: r.nilpotent,
            min_stab_order: r.min_stab_order.as_ref().map(ToString::to_string),
            max_stab_order: r.max_stab_order.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct CertificateDocument {
    pub format_version: u32,
    pub spec: String,
    pub degree: usize,
    pub group_order: String,
    pub delta: Vec<usize>,
    pub stabilizer: StabilizerDoc,
    pub nice_pair: Option<PairDoc>,
    pub trace: Vec<TraceDoc>,
    pub bounds: Option<BoundsDoc>,
    pub census: Option<Vec<CensusRowDoc>>,
    pub rng_seed: u64,
    pub modulus_table_version: u32,
}

impl CertificateDocument {
    pub fn new(spec: &str, g: &PermGroup, cert: &Certificate, with_pair: bool, seed: u64) -> Self {
        let stab = g.set_stabilizer(cert.chosen_delta);
        CertificateDocument {
            format_version: FORMAT_VERSION,
            spec: spec.to_string(),
            degree: cert.degree,
            group_order: g.order().to_string(),
            delta: one_based(cert.chosen_delta),
            stabilizer: StabilizerDoc::new(&stab, &cert.report),
            nice_pair: if with_pair {
                cert.pair.as_ref().map(|p| PairDoc::new(g, p))
            } else {
                None
            },
            trace: cert.trace.iter().map(TraceDoc::from).collect(),
            bounds: None,
            census: None,
            rng_seed: seed,
            modulus_table_version: stabforge_core::field::MODULUS_TABLE_VERSION,
        }
    }
}

/// Output of `verify --json`.
#[derive(Serialize, Debug)]
pub struct VerifyDocument {
    pub format_version: u32,
    pub spec: String,
    pub delta: Vec<usize>,
    pub stabilizer: StabilizerDoc,
}
