//! Enumeration of the reflectionless lattice: the (a, b) pairs at a given
//! level N, the catalog entries they generate for each extension order, the
//! exact integer spectra (stored as 4E to stay in i64), and the counting
//! identities the construction must satisfy.
//!
//! Pairs live on the half-integer lattice, so they are stored as doubled
//! integers (a2, b2) = (2a, 2b); every spectral quantity then comes out as
//! exact integer arithmetic.

use crate::error::{Error, Result};
use crate::potentials::{Branch, PotentialSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Which construction produced a lattice pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// Both parameters half-odd-integers: a = N - j - 1/2, b = j + 1/2.
    A,
    /// Both parameters integers: a = N - j, b = j.
    B,
}

/// A reflectionless (a, b) pair, stored as doubled integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePair {
    pub a2: i64,
    pub b2: i64,
    pub case_label: CaseLabel,
}

impl LatticePair {
    pub fn a(&self) -> f64 {
        self.a2 as f64 / 2.0
    }

    pub fn b(&self) -> f64 {
        self.b2 as f64 / 2.0
    }

    /// Doubled-integer form of the parametric substitution
    /// (a, b) -> (b - 1/2, a + 1/2).
    pub fn parametric_image2(&self) -> (i64, i64) {
        (self.b2 - 1, self.a2 + 1)
    }
}

/// All 2N reflectionless pairs at level N: the N case-A pairs (j = 0..N-1)
/// followed by the N case-B pairs (j = 1..N).
pub fn pair_list(n: u32) -> Result<Vec<LatticePair>> {
    if n == 0 {
        return Err(Error::InvalidParameter("pair lattice needs N >= 1".into()));
    }
    let n = n as i64;
    let mut pairs = Vec::with_capacity(2 * n as usize);
    for j in 0..n {
        pairs.push(LatticePair {
            a2: 2 * (n - j) - 1,
            b2: 2 * j + 1,
            case_label: CaseLabel::A,
        });
    }
    for j in 1..=n {
        pairs.push(LatticePair {
            a2: 2 * (n - j),
            b2: 2 * j,
            case_label: CaseLabel::B,
        });
    }
    Ok(pairs)
}

/// One catalog row: a potential at extension order m together with its exact
/// bound spectrum, split by the branch each level comes from.
///
/// At m = 0 the two branches share one potential, so there is a single entry
/// per pair carrying both towers. For m >= 1 the substitution changes the
/// potential and each valid branch becomes its own entry with only its own
/// tower populated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub a2: i64,
    pub b2: i64,
    pub m: u32,
    pub case_label: CaseLabel,
    /// The normal branch supports bound states (a > 0).
    pub normal_valid: bool,
    /// The parametric branch supports bound states (b > 1/2).
    pub parametric_valid: bool,
    /// 4 * E_n from the normal tower, descending in depth; empty if invalid
    /// or if this entry represents only the parametric branch.
    pub normal_levels_x4: Vec<i64>,
    /// 4 * E_n from the parametric tower.
    pub parametric_levels_x4: Vec<i64>,
}

impl CatalogEntry {
    pub fn a(&self) -> f64 {
        self.a2 as f64 / 2.0
    }

    pub fn b(&self) -> f64 {
        self.b2 as f64 / 2.0
    }

    /// The potential spec this entry evaluates. For m = 0 entries either
    /// branch may be requested (same potential); for m >= 1 only the branch
    /// the entry was built for.
    pub fn spec(&self, branch: Branch) -> Result<PotentialSpec> {
        let valid = match branch {
            Branch::Normal => self.normal_valid,
            Branch::Parametric => self.parametric_valid,
        };
        if self.m >= 1 && !valid {
            return Err(Error::InvalidParameter(format!(
                "entry (a={}, b={}, m={}) does not carry the {branch:?} branch",
                self.a(),
                self.b(),
                self.m
            )));
        }
        Ok(if self.m == 0 {
            PotentialSpec::ScarfII {
                a: self.a(),
                b: self.b(),
                branch,
            }
        } else {
            PotentialSpec::ScarfIIExtended {
                a: self.a(),
                b: self.b(),
                m: self.m,
                branch,
            }
        })
    }

    /// Union of the two towers; exact integers, so set union is exact.
    pub fn combined_levels_x4(&self) -> BTreeSet<i64> {
        self.normal_levels_x4
            .iter()
            .chain(self.parametric_levels_x4.iter())
            .copied()
            .collect()
    }

    pub fn total_bound_states(&self) -> usize {
        self.normal_levels_x4.len() + self.parametric_levels_x4.len()
    }

    /// Key identifying the underlying potential exactly: m plus the doubled
    /// effective parameters, canonicalized over the substitution when both
    /// branches share the potential (m = 0).
    fn potential_key(&self) -> (u32, i64, i64) {
        if self.m == 0 {
            let direct = (self.a2, self.b2);
            let image = (self.b2 - 1, self.a2 + 1);
            let key = direct.min(image);
            (0, key.0, key.1)
        } else if self.parametric_valid && !self.normal_valid {
            // parametric-only entry: effective parameters after substitution
            (self.m, self.b2 - 1, self.a2 + 1)
        } else {
            (self.m, self.a2, self.b2)
        }
    }
}

/// Number of bound states of the normal tower: n < a, so ceil(a) of them.
fn normal_count(a2: i64) -> i64 {
    if a2 <= 0 {
        0
    } else {
        (a2 + 1) / 2
    }
}

/// Number of bound states of the parametric tower: n < b - 1/2.
fn parametric_count(b2: i64) -> i64 {
    if b2 <= 1 {
        0
    } else {
        b2 / 2
    }
}

/// 4 E_n = -(a2 - 2n)^2 for the normal tower.
fn normal_levels(a2: i64) -> Vec<i64> {
    (0..normal_count(a2))
        .map(|n| -(a2 - 2 * n).pow(2))
        .collect()
}

/// 4 E_n = -(b2 - 1 - 2n)^2 for the parametric tower.
fn parametric_levels(b2: i64) -> Vec<i64> {
    (0..parametric_count(b2))
        .map(|n| -(b2 - 1 - 2 * n).pow(2))
        .collect()
}

/// The full catalog at level N up to extension order m_max: all m = 0
/// entries (one per pair), then for each m' = 1..=m_max one entry per pair
/// per branch that supports bound states.
pub fn enumerate(n: u32, m_max: u32) -> Result<Vec<CatalogEntry>> {
    let pairs = pair_list(n)?;
    let mut entries = Vec::with_capacity(expected_count(n, m_max));
    for p in &pairs {
        entries.push(CatalogEntry {
            a2: p.a2,
            b2: p.b2,
            m: 0,
            case_label: p.case_label,
            normal_valid: p.a2 > 0,
            parametric_valid: p.b2 > 1,
            normal_levels_x4: normal_levels(p.a2),
            parametric_levels_x4: parametric_levels(p.b2),
        });
    }
    for m in 1..=m_max {
        for p in &pairs {
            if p.a2 > 0 {
                entries.push(CatalogEntry {
                    a2: p.a2,
                    b2: p.b2,
                    m,
                    case_label: p.case_label,
                    normal_valid: true,
                    parametric_valid: false,
                    normal_levels_x4: normal_levels(p.a2),
                    parametric_levels_x4: Vec::new(),
                });
            }
            if p.b2 > 1 {
                entries.push(CatalogEntry {
                    a2: p.a2,
                    b2: p.b2,
                    m,
                    case_label: p.case_label,
                    normal_valid: false,
                    parametric_valid: true,
                    normal_levels_x4: Vec::new(),
                    parametric_levels_x4: parametric_levels(p.b2),
                });
            }
        }
    }
    Ok(entries)
}

/// The closed-form size of the catalog: 2 [ (2N - 1) m + N ].
pub fn expected_count(n: u32, m_max: u32) -> usize {
    let n = n as usize;
    let m = m_max as usize;
    2 * ((2 * n - 1) * m + n)
}

/// Number of genuinely distinct potentials among the entries. At m = 0 the
/// substitution pairs the 2N entries into N potentials; for each m >= 1 the
/// parametric entries coincide with normal entries of the partner pair,
/// leaving 2N - 1.
pub fn distinct_potential_count(entries: &[CatalogEntry]) -> usize {
    let keys: BTreeSet<_> = entries.iter().map(|e| e.potential_key()).collect();
    keys.len()
}

/// 4 E_n of the real sech^2 well of depth N(N+1): -4 (N - n)^2.
pub fn real_well_levels_x4(n: u32) -> Vec<i64> {
    let n = n as i64;
    (0..n).map(|k| -4 * (n - k) * (n - k)).collect()
}
