//! Codeword spec files: a space plus either explicit hyperplane terms or a
//! named fixture.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use pg_incidence::codes::combine;
use pg_incidence::ff::Field;
use pg_incidence::geometry::{Hyperplane, ProjectiveSpace};
use pg_incidence::minimality::{p2_fixture, szonyi_example, Fixture, P2Kind};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodewordSpec {
    pub n: usize,
    pub p: u32,
    pub h: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureName>,
    /// Number of hyperplanes for `random-j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Named points of a fixture; informational only.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, u32>,
}

/// A hyperplane given by index or by dual coordinates, with a coefficient
/// that is reduced mod p (so -1 is accepted).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<u32>>,
    pub coefficient: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureName {
    Szonyi,
    Pencil,
    NoHoleLine,
    RandomJ,
}

/// The space and merged terms a spec denotes.
pub struct Built {
    pub space: ProjectiveSpace,
    pub terms: Vec<(Hyperplane, u32)>,
    pub labels: Vec<(String, Hyperplane)>,
    pub points: BTreeMap<String, u32>,
}

pub fn parse(bytes: &[u8]) -> Result<CodewordSpec> {
    serde_json::from_slice(bytes).map_err(|e| anyhow::anyhow!("spec parse error at line {}, column {}: {e}", e.line(), e.column()))
}

pub fn make_space(n: usize, p: u32, h: u32, modulus: Option<&[u32]>, cap_points: u64) -> Result<ProjectiveSpace> {
    let field = Field::new(p, h, modulus).with_context(|| format!("invalid field {p}^{h}"))?;
    ProjectiveSpace::with_cap(n, field, cap_points).context("cannot build the space")
}

impl CodewordSpec {
    pub fn build(&self, cap_points: u64) -> Result<Built> {
        let space = make_space(self.n, self.p, self.h, self.modulus.as_deref(), cap_points)?;
        if self.fixture.is_some() && !self.terms.is_empty() {
            bail!("a spec gives either terms or a fixture, not both");
        }
        if let Some(name) = self.fixture {
            let fx = fixture(&space, name, self.j, self.seed)?;
            return Ok(Built {
                terms: fx.terms,
                labels: fx.lines.into_iter().map(|(l, h)| (l.to_string(), h)).collect(),
                points: fx.points.into_iter().map(|(l, pt)| (l.to_string(), pt.0)).collect(),
                space,
            });
        }
        let p = self.p as i64;
        let mut terms = Vec::with_capacity(self.terms.len());
        let mut labels = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            let h = match (&t.hyperplane, &t.dual) {
                (Some(idx), None) => space.hyperplane(*idx).with_context(|| format!("term {i}"))?,
                (None, Some(dual)) => space.hyperplane_of(dual).with_context(|| format!("term {i}: bad dual coordinates"))?,
                (Some(idx), Some(dual)) => {
                    let h = space.hyperplane_of(dual).with_context(|| format!("term {i}: bad dual coordinates"))?;
                    if h.0 as u64 != *idx {
                        bail!("term {i}: index {idx} and dual coordinates {dual:?} name different hyperplanes");
                    }
                    h
                }
                (None, None) => bail!("term {i}: give `hyperplane` or `dual`"),
            };
            let a = t.coefficient.rem_euclid(p) as u32;
            if a == 0 {
                bail!("term {i}: coefficient {} vanishes mod {p}", t.coefficient);
            }
            if let Some(l) = &t.label {
                labels.push((l.clone(), h));
            }
            terms.push((h, a));
        }
        let merged = combine(&space, &terms)?;
        if !merged.cancelled.is_empty() {
            let ids: Vec<u32> = merged.cancelled.iter().map(|h| h.0).collect();
            bail!("coefficients of repeated hyperplanes {ids:?} cancel to zero");
        }
        Ok(Built {
            terms: merged.decomposition.terms().iter().map(|(&h, &a)| (h, a)).collect(),
            labels,
            points: self.points.clone(),
            space,
        })
    }
}

pub fn fixture(space: &ProjectiveSpace, name: FixtureName, j: Option<usize>, seed: Option<u64>) -> Result<Fixture> {
    Ok(match name {
        FixtureName::Szonyi => szonyi_example(space)?,
        FixtureName::Pencil => p2_fixture(space, P2Kind::Pencil)?,
        FixtureName::NoHoleLine => p2_fixture(space, P2Kind::NoHoleLine)?,
        FixtureName::RandomJ => {
            let j = j.context("random-j needs `j`")?;
            let seed = seed.unwrap_or(0);
            let terms = random_terms(space, j, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let codeword = combine(space, &terms)?.codeword;
            Fixture {
                codeword,
                terms,
                lines: Vec::new(),
                points: Vec::new(),
            }
        }
    })
}

/// j distinct hyperplanes with uniform nonzero coefficients.
pub fn random_terms(space: &ProjectiveSpace, j: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(Hyperplane, u32)>> {
    if j > space.num_hyperplanes() {
        bail!("j = {j} exceeds the {} hyperplanes of the space", space.num_hyperplanes());
    }
    let p = space.p();
    let mut terms: Vec<(Hyperplane, u32)> = sample(rng, space.num_hyperplanes(), j)
        .into_iter()
        .map(|h| (Hyperplane(h as u32), rng.random_range(1..p)))
        .collect();
    terms.sort_unstable();
    Ok(terms)
}

/// Spec with explicit terms (index, dual coordinates and label) for a
/// fixture, so the emitted file is self-contained.
pub fn explicit_spec(space: &ProjectiveSpace, modulus: Option<Vec<u32>>, fx: &Fixture) -> CodewordSpec {
    let label = |h: Hyperplane| fx.lines.iter().find(|(_, l)| *l == h).map(|(n, _)| n.to_string());
    CodewordSpec {
        n: space.n(),
        p: space.p(),
        h: space.h(),
        modulus,
        terms: fx
            .terms
            .iter()
            .map(|&(h, a)| TermSpec {
                hyperplane: Some(h.0 as u64),
                dual: Some(space.hyperplane_coords(h).to_vec()),
                coefficient: a as i64,
                label: label(h),
            })
            .collect(),
        fixture: None,
        j: None,
        seed: None,
        points: fx.points.iter().map(|(n, pt)| (n.to_string(), pt.0)).collect(),
    }
}
