//! JSON records for groups, rings, modules and Cox data.
//!
//! Coordinates in files are 64-bit integers; everything is converted to
//! arbitrary precision on load.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gring::{ColumnSpec, GradedRing, Monomial, PresentedModule, Term};
use crate::toric::{cox_from_fan, CoxData, FanInput, SigmaComplex};
use crate::zlin::{FgAbelianGroup, GroupElement, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingRecord {
    pub group: GroupRecord,
    pub variables: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub degree: Vec<i64>,
}

/// Coefficient as an integer or a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRecord {
    Int(i64),
    Text(String),
}

impl Default for CoeffRecord {
    fn default() -> Self {
        CoeffRecord::Int(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub row: usize,
    #[serde(default)]
    pub coeff: CoeffRecord,
    pub monomial: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<i64>>,
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleRecord {
    pub generators: Vec<GeneratorRecord>,
    #[serde(default)]
    pub relations: Vec<RelationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanRecord {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// Either `{"ring", "sigma"}` or `{"fan"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanRecord>,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Input(format!("{x} does not fit in 64 bits"))))
        .collect()
}

pub fn element_to_vec(g: &GroupElement) -> Result<Vec<i64>> {
    small(g.coords())
}

pub fn group_from_record(r: &GroupRecord) -> Result<FgAbelianGroup> {
    FgAbelianGroup::from_invariants(r.free_rank, &big(&r.torsion))
}

/// Only groups of the form `ℤ^r ⊕ ⊕ ℤ/t_j` on `r + #t` coordinates are representable.
pub fn group_to_record(g: &FgAbelianGroup) -> Result<GroupRecord> {
    let k = g.ambient_rank();
    let rel = g.relations();
    let mut torsion = Vec::new();
    let mut free_rank = None;
    for j in 0..rel.cols() {
        let col = rel.column(j);
        let nz: Vec<usize> = (0..k).filter(|&i| col[i] != BigInt::from(0)).collect();
        match nz.as_slice() {
            [i] if free_rank.is_none_or(|f| f + torsion.len() == *i) => {
                free_rank = Some(*i - torsion.len());
                torsion.push(col[*i].clone());
            }
            _ => return Err(Error::Unsupported("group presentation is not in invariant form".into())),
        }
    }
    let free_rank = free_rank.unwrap_or(k);
    if free_rank + torsion.len() != k {
        return Err(Error::Unsupported("group presentation is not in invariant form".into()));
    }
    Ok(GroupRecord {
        free_rank,
        torsion: small(&torsion)?,
    })
}

pub fn ring_from_record(r: &RingRecord) -> Result<GradedRing> {
    let group = group_from_record(&r.group)?;
    let degrees = r
        .degrees
        .iter()
        .map(|d| group.element(big(d)))
        .collect::<Result<Vec<_>>>()?;
    GradedRing::new(group, r.variables.clone(), degrees)
}

pub fn ring_to_record(r: &GradedRing) -> Result<RingRecord> {
    Ok(RingRecord {
        group: group_to_record(r.group())?,
        variables: r.names().to_vec(),
        degrees: r.degrees().iter().map(element_to_vec).collect::<Result<_>>()?,
    })
}

pub fn parse_coeff(c: &CoeffRecord) -> Result<BigRational> {
    match c {
        CoeffRecord::Int(x) => Ok(BigRational::from_integer(BigInt::from(*x))),
        CoeffRecord::Text(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let bad = || Error::Input(format!("malformed coefficient {s:?}"));
            let n: BigInt = num.parse().map_err(|_| bad())?;
            let d: BigInt = den.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn coeff_to_record(c: &BigRational) -> CoeffRecord {
    if c.denom().is_one() {
        if let Some(x) = c.numer().to_i64() {
            return CoeffRecord::Int(x);
        }
    }
    CoeffRecord::Text(c.to_string())
}

pub fn module_from_record(ring: Arc<GradedRing>, r: &ModuleRecord) -> Result<PresentedModule> {
    let group = ring.group().clone();
    let generators = r
        .generators
        .iter()
        .map(|g| group.element(big(&g.degree)))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = Vec::with_capacity(r.relations.len());
    for rel in &r.relations {
        let degree = rel.degree.as_ref().map(|d| group.element(big(d))).transpose()?;
        let mut entries = Vec::with_capacity(rel.entries.len());
        for e in &rel.entries {
            let mono = Monomial::new(e.monomial.clone());
            if mono.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: mono.nvars(),
                });
            }
            entries.push((e.row, Term::new(parse_coeff(&e.coeff)?, mono)?));
        }
        columns.push(ColumnSpec { degree, entries });
    }
    PresentedModule::new(ring, generators, columns)
}

pub fn module_to_record(m: &PresentedModule) -> Result<ModuleRecord> {
    Ok(ModuleRecord {
        generators: m
            .generator_degrees()
            .iter()
            .map(|b| Ok(GeneratorRecord { degree: element_to_vec(b)? }))
            .collect::<Result<_>>()?,
        relations: m
            .relations()
            .iter()
            .map(|c| {
                Ok(RelationRecord {
                    degree: Some(element_to_vec(c.degree())?),
                    entries: c
                        .entries()
                        .iter()
                        .map(|(row, t)| EntryRecord {
                            row: *row,
                            coeff: coeff_to_record(t.coeff()),
                            monomial: t.monomial().exponents().to_vec(),
                        })
                        .collect(),
                })
            })
            .collect::<Result<_>>()?,
    })
}

pub fn fan_from_record(f: &FanRecord) -> Result<FanInput> {
    FanInput::from_rays(&f.rays, f.max_cones.clone())
}

pub fn cox_from_record(r: &CoxRecord) -> Result<CoxData> {
    match (&r.ring, &r.sigma, &r.fan) {
        (Some(ring), Some(sigma), None) => {
            let ring = Arc::new(ring_from_record(ring)?);
            let s = SigmaComplex::new(ring.nvars(), sigma)?;
            CoxData::new(ring, s)
        }
        (None, None, Some(fan)) => cox_from_fan(&fan_from_record(fan)?),
        _ => Err(Error::Input(
            "Cox data needs either \"ring\" and \"sigma\" or \"fan\"".into(),
        )),
    }
}

/// Abstract form `{"ring", "sigma"}` listing the maximal members of `Σ`.
pub fn cox_to_record(c: &CoxData) -> Result<CoxRecord> {
    let s = c.sigma();
    Ok(CoxRecord {
        ring: Some(ring_to_record(c.ring())?),
        sigma: Some(
            s.maximal()
                .into_iter()
                .map(|m| crate::toric::mask_indices(s.ground(), m))
                .collect(),
        ),
        fan: None,
    })
}

pub fn fan_to_record(f: &FanInput) -> Result<FanRecord> {
    Ok(FanRecord {
        rays: f.rays.columns().iter().map(|c| small(c)).collect::<Result<_>>()?,
        max_cones: f.max_cones.clone(),
    })
}

pub fn matrix_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.rows()).map(|i| small(m.row(i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P112: &str = r#"{
        "ring": {"group": {"free_rank": 1}, "variables": ["x0", "x1", "x2"], "degrees": [[1], [1], [2]]},
        "sigma": [[0, 1], [0, 2], [1, 2]]
    }"#;

    const MODULE: &str = r#"{
        "generators": [{"degree": [-1]}],
        "relations": [
            {"entries": [{"row": 0, "coeff": "3/2", "monomial": [1, 0, 0]}]},
            {"degree": [0], "entries": [{"row": 0, "monomial": [0, 1, 0]}]}
        ]
    }"#;

    #[test]
    fn cox_round_trip() {
        let rec: CoxRecord = serde_json::from_str(P112).unwrap();
        let c = cox_from_record(&rec).unwrap();
        assert_eq!(c.ring().degrees().len(), 3);
        let back = cox_to_record(&c).unwrap();
        assert_eq!(back, rec);
        assert_eq!(cox_from_record(&back).unwrap(), c);
    }

    #[test]
    fn module_round_trip() {
        let c = cox_from_record(&serde_json::from_str(P112).unwrap()).unwrap();
        let rec: ModuleRecord = serde_json::from_str(MODULE).unwrap();
        let m = module_from_record(c.ring().clone(), &rec).unwrap();
        assert_eq!(m.relations()[0].degree().coords(), &[BigInt::from(0)]);
        let back = module_to_record(&m).unwrap();
        assert_eq!(back.relations[0].entries[0].coeff, CoeffRecord::Text("3/2".into()));
        assert_eq!(module_from_record(c.ring().clone(), &back).unwrap(), m);
        assert_eq!(module_to_record(&module_from_record(c.ring().clone(), &back).unwrap()).unwrap(), back);
    }

    #[test]
    fn bad_inputs() {
        let c = cox_from_record(&serde_json::from_str(P112).unwrap()).unwrap();
        let wrong_degree = r#"{"generators": [{"degree": [0]}],
            "relations": [{"degree": [5], "entries": [{"row": 0, "monomial": [1, 0, 0]}]}]}"#;
        let rec: ModuleRecord = serde_json::from_str(wrong_degree).unwrap();
        assert!(matches!(module_from_record(c.ring().clone(), &rec), Err(Error::Input(_))));
        assert!(parse_coeff(&CoeffRecord::Text("1/0".into())).is_err());
        assert!(parse_coeff(&CoeffRecord::Text("x".into())).is_err());
        let both: CoxRecord = serde_json::from_str(r#"{"fan": {"rays": [[1]], "max_cones": [[0]]}, "sigma": [[0]]}"#).unwrap();
        assert!(cox_from_record(&both).is_err());
    }

    #[test]
    fn group_records() {
        let g = FgAbelianGroup::from_invariants(2, &[BigInt::from(2), BigInt::from(6)]).unwrap();
        let rec = group_to_record(&g).unwrap();
        assert_eq!(rec, GroupRecord { free_rank: 2, torsion: vec![2, 6] });
        assert_eq!(group_from_record(&rec).unwrap(), g);
        assert_eq!(group_to_record(&FgAbelianGroup::free(3)).unwrap(), GroupRecord { free_rank: 3, torsion: vec![] });
    }
}
