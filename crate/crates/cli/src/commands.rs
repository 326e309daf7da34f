use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use shi_core::orderring::{generators, hilbert_series, polytope_vertices, standard_monomials};
use shi_core::poset::{ElemSet, FinitePoset};
use shi_core::rootsys::{weyl_group, CartanType, RootSystem, WeylElement};
use shi_core::shi::{
    flats_in_cone, fuss_dominant, regions_in_cone, regions_in_dominant, Cone, FlatLattice,
};
use shi_core::verify::{
    check_antichain_independence, check_comparable_pairs, check_cone, check_nonnesting_injective,
    check_totals, CheckOptions, ConeSummary, Theorems,
};
use shi_core::{Error, Rational};

use crate::TheoremArg;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    pub cartan_type: Option<String>,
    pub format: String,
    pub payload: Payload,
    /// Wall-clock time per verification step, for text output only.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl Record {
    fn new(command: &str, cartan_type: Option<String>, payload: Payload) -> Self {
        Self {
            command: command.into(),
            cartan_type,
            format: String::new(),
            payload,
            timings: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        match &self.payload {
            Payload::Verify(v) => v.passed,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Roots(RootsPayload),
    Cone(ConePayload),
    Verify(VerifyPayload),
    OrderRing(OrderRingPayload),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsPayload {
    pub roots: Vec<RootEntry>,
    pub covers: Vec<[usize; 2]>,
    pub coxeter_number: usize,
    pub degrees: Vec<usize>,
    pub weyl_order: u64,
    pub catalan: u64,
    pub parking: u64,
    pub narayana: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootEntry {
    pub index: usize,
    pub coords: Vec<i64>,
    pub height: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConePayload {
    pub word: String,
    /// Present when the command was given an explicit root subset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<usize>>,
    pub inversions: Vec<usize>,
    pub regions: Vec<RegionEntry>,
    pub flats: Vec<FlatEntry>,
    pub poincare: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionEntry {
    pub ideal: Vec<usize>,
    pub ceiling: Vec<usize>,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatEntry {
    pub generators: Vec<usize>,
    pub codim: usize,
    pub mobius: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPayload {
    pub theorem: String,
    pub m: usize,
    pub cones: Vec<CheckEntry>,
    pub checks: Vec<CheckEntry>,
    pub total_poincare: Option<Vec<i64>>,
    pub fuss: Option<FussEntry>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub regions: Option<usize>,
    pub flats: Option<usize>,
    pub count: Option<usize>,
    pub poincare: Option<Vec<i64>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FussEntry {
    pub flats: usize,
    pub regions: usize,
    pub poincare: Vec<i64>,
    pub max_abs_mobius: i64,
    pub exceptional_flats: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderRingPayload {
    pub elements: Vec<usize>,
    /// Filter indicators in element order.
    pub vertices: Vec<String>,
    pub generators: Vec<String>,
    pub standard_monomials: Vec<Vec<String>>,
    pub hilbert: Vec<i64>,
}

/// Poset file contents; covers are pairs of positions in `elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<usize>,
    pub covers: Vec<[usize; 2]>,
}

fn root_system(name: &str) -> Result<RootSystem, CliError> {
    let ctype: CartanType = name.parse()?;
    Ok(RootSystem::new(ctype)?)
}

fn indices(set: ElemSet) -> Vec<usize> {
    set.iter().collect()
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn roots(name: &str) -> Result<Record, CliError> {
    let rs = root_system(name)?;
    let num = rs.numerology();
    let mut covers: Vec<[usize; 2]> = rs.root_poset().covers().iter().map(|&(i, j)| [i, j]).collect();
    covers.sort_unstable();
    let payload = RootsPayload {
        roots: rs
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(index, r)| RootEntry {
                index,
                coords: r.coords().to_vec(),
                height: r.height(),
            })
            .collect(),
        covers,
        coxeter_number: rs.coxeter_number(),
        degrees: rs.degrees().to_vec(),
        weyl_order: rs.weyl_order(),
        catalan: num.catalan,
        parking: num.parking,
        narayana: num.narayana.coeffs().to_vec(),
    };
    Ok(Record::new("roots", Some(rs.cartan_type().to_string()), Payload::Roots(payload)))
}

pub fn cone(name: &str, word: &str, e: Option<&[usize]>) -> Result<Record, CliError> {
    let rs = root_system(name)?;
    let payload = match e {
        Some(e) => subset_cone(&rs, e)?,
        None => {
            let w = WeylElement::parse_word(&rs, word)?;
            let cone = Cone::new(&rs, w);
            let regions = regions_in_cone(&cone)?;
            let flats = flats_in_cone(&cone)?;
            ConePayload {
                word: cone.element().label(),
                e: None,
                inversions: indices(cone.inversions()),
                regions: regions
                    .iter()
                    .map(|r| RegionEntry {
                        ideal: indices(r.below),
                        ceiling: indices(r.ceiling),
                        witness: rationals(&r.witness),
                    })
                    .collect(),
                flats: flats
                    .flats
                    .iter()
                    .map(|f| FlatEntry {
                        generators: indices(f.generators),
                        codim: f.codim,
                        mobius: f.mobius,
                    })
                    .collect(),
                poincare: flats.poincare().coeffs().to_vec(),
            }
        }
    };
    Ok(Record::new("cone", Some(rs.cartan_type().to_string()), Payload::Cone(payload)))
}

/// `Shi(E)` in the dominant cone for an explicit `E`.
fn subset_cone(rs: &RootSystem, e: &[usize]) -> Result<ConePayload, CliError> {
    let mut set = ElemSet::EMPTY;
    for &b in e {
        if b >= rs.num_positive() {
            return Err(CliError::Usage(format!(
                "root index {b} out of range (0..{})",
                rs.num_positive()
            )));
        }
        set.insert(b);
    }
    let regions = regions_in_dominant(rs, set)?;
    let walls = Cone::dominant(rs).walls();
    let hyperplanes: Vec<(usize, i64)> = set.iter().map(|b| (b, 1)).collect();
    let lattice = FlatLattice::new(rs, hyperplanes, Some(&walls))?;
    let flats = lattice
        .flats
        .iter()
        .zip(&lattice.contained_in)
        .zip(&lattice.mobius)
        .map(|((f, &bits), &mobius)| FlatEntry {
            generators: (0..lattice.hyperplanes.len())
                .filter(|k| bits >> k & 1 == 1)
                .map(|k| lattice.hyperplanes[k].0)
                .collect(),
            codim: f.codim().unwrap_or(0),
            mobius,
        })
        .collect();
    Ok(ConePayload {
        word: "e".into(),
        e: Some(indices(set)),
        inversions: Vec::new(),
        regions: regions
            .iter()
            .map(|r| RegionEntry {
                ideal: indices(r.ideal.0),
                ceiling: indices(r.ceiling.0),
                witness: rationals(&r.witness),
            })
            .collect(),
        flats,
        poincare: lattice.poincare().coeffs().to_vec(),
    })
}

fn entry(name: &str) -> CheckEntry {
    CheckEntry {
        name: name.into(),
        passed: true,
        regions: None,
        flats: None,
        count: None,
        poincare: None,
        error: None,
    }
}

fn failed(name: &str, e: &Error) -> CheckEntry {
    CheckEntry {
        passed: false,
        error: Some(e.to_string()),
        ..entry(name)
    }
}

fn timed<T>(timings: &mut Vec<(String, Duration)>, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push((name.to_string(), start.elapsed()));
    out
}

pub fn verify(name: &str, theorem: TheoremArg, m: usize) -> Result<Record, CliError> {
    let rs = root_system(name)?;
    let ctype = Some(rs.cartan_type().to_string());
    let theorem_name = match theorem {
        TheoremArg::Regions => "1",
        TheoremArg::Flats => "2",
        TheoremArg::Intervals => "3",
        TheoremArg::All => "all",
    };
    let mut timings = Vec::new();
    if m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    if m > 1 {
        let report = timed(&mut timings, "fuss", || fuss_dominant(&rs, m))?;
        // Zaslavsky: regions = sum of |mu| over the flats meeting the cone.
        let zaslavsky = report.poincare.eval(1) as usize == report.n_regions;
        let mut check = entry("region count from Moebius values");
        check.regions = Some(report.n_regions);
        check.flats = Some(report.n_flats);
        check.poincare = Some(report.poincare.coeffs().to_vec());
        check.passed = zaslavsky;
        if !zaslavsky {
            check.error = Some(format!(
                "Poincare polynomial counts {} regions, enumeration found {}",
                report.poincare.eval(1),
                report.n_regions
            ));
        }
        let payload = VerifyPayload {
            theorem: theorem_name.into(),
            m,
            cones: Vec::new(),
            checks: vec![check],
            total_poincare: None,
            fuss: Some(FussEntry {
                flats: report.n_flats,
                regions: report.n_regions,
                poincare: report.poincare.coeffs().to_vec(),
                max_abs_mobius: report.max_abs_mobius,
                exceptional_flats: report.exceptional_flats,
            }),
            passed: zaslavsky,
        };
        let mut record = Record::new("verify", ctype, Payload::Verify(payload));
        record.timings = timings;
        return Ok(record);
    }

    let group = weyl_group(&rs)?;
    let theorems = match theorem {
        TheoremArg::Regions => Theorems { regions: true, flats: false, intervals: false },
        TheoremArg::Flats => Theorems { regions: false, flats: true, intervals: false },
        TheoremArg::Intervals | TheoremArg::All => Theorems::ALL,
    };
    let opts = CheckOptions::for_rank(rs.rank());
    let mut cones = Vec::new();
    let mut summaries: Vec<ConeSummary> = Vec::new();
    for w in group {
        let cone = Cone::new(&rs, w);
        let label = cone.element().label();
        match timed(&mut timings, &label, || check_cone(&cone, theorems, opts)) {
            Ok(s) => {
                let mut c = entry(&label);
                c.regions = Some(s.regions);
                c.flats = Some(s.flats);
                c.poincare = Some(s.poincare.coeffs().to_vec());
                cones.push(c);
                summaries.push(s);
            }
            Err(e) => cones.push(failed(&label, &e)),
        }
    }

    type RootCheck = fn(&RootSystem) -> shi_core::Result<usize>;
    let mut root_checks: Vec<(&str, RootCheck)> = Vec::new();
    if matches!(theorem, TheoremArg::Regions | TheoremArg::All) {
        root_checks.push(("nonnesting ceilings are injective", check_nonnesting_injective));
    }
    if matches!(theorem, TheoremArg::Flats | TheoremArg::All) {
        root_checks.push(("antichains give independent normals", check_antichain_independence));
        root_checks.push(("comparable pairs miss the dominant cone", check_comparable_pairs));
    }
    let mut checks = Vec::new();
    for (check_name, f) in root_checks {
        match timed(&mut timings, check_name, || f(&rs)) {
            Ok(count) => checks.push(CheckEntry {
                count: Some(count),
                ..entry(check_name)
            }),
            Err(e) => checks.push(failed(check_name, &e)),
        }
    }

    let mut total_poincare = None;
    if cones.iter().all(|c| c.passed) {
        let name = "totals over all cones";
        match timed(&mut timings, name, || check_totals(&rs, &summaries)) {
            Ok(total) => {
                total_poincare = Some(total.coeffs().to_vec());
                checks.push(CheckEntry {
                    regions: Some(summaries.iter().map(|s| s.regions).sum()),
                    poincare: total_poincare.clone(),
                    ..entry(name)
                });
            }
            Err(e) => checks.push(failed(name, &e)),
        }
    }
    let passed = cones.iter().chain(&checks).all(|c| c.passed);
    let payload = VerifyPayload {
        theorem: theorem_name.into(),
        m,
        cones,
        checks,
        total_poincare,
        fuss: None,
        passed,
    };
    let mut record = Record::new("verify", ctype, Payload::Verify(payload));
    record.timings = timings;
    Ok(record)
}

pub fn read_poset(path: &Path) -> Result<FinitePoset, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: PosetFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed poset file {}: {e}", path.display())))?;
    let covers: Vec<(usize, usize)> = file.covers.iter().map(|&[i, j]| (i, j)).collect();
    Ok(FinitePoset::from_covers(file.elements, &covers)?)
}

pub fn orderring(path: Option<&Path>, name: Option<&str>) -> Result<Record, CliError> {
    let (poset, ctype) = match (path, name) {
        (Some(path), _) => (read_poset(path)?, None),
        (None, Some(name)) => {
            let rs = root_system(name)?;
            (rs.root_poset(), Some(rs.cartan_type().to_string()))
        }
        (None, None) => return Err(CliError::Usage("need a poset file or --type".into())),
    };
    let payload = OrderRingPayload {
        elements: poset.elements().to_vec(),
        vertices: polytope_vertices(&poset).iter().map(|v| v.bitstring()).collect(),
        generators: generators(&poset).iter().map(|g| g.text(&poset)).collect(),
        standard_monomials: standard_monomials(&poset)
            .iter()
            .map(|group| group.iter().map(|m| m.text(&poset)).collect())
            .collect(),
        hilbert: hilbert_series(&poset).coeffs().to_vec(),
    };
    Ok(Record::new("orderring", ctype, Payload::OrderRing(payload)))
}
