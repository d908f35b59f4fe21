//! Codewords of the point-hyperplane incidence code: F_p-valued functions on
//! the points of PG(n,q) spanned by hyperplane incidence vectors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::geometry::{Hyperplane, Point, ProjectiveSpace, SubspacePointSet};

/// Dense F_p vector indexed by point, one byte per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    n: usize,
    p: u32,
    h: u32,
    values: Vec<u8>,
}

/// Sparse wire form: nonzero entries in ascending point order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordJson {
    pub n: usize,
    pub p: u32,
    pub h: u32,
    pub values: Vec<(u32, u32)>,
}

fn alphabet(space: &ProjectiveSpace) -> Result<u32> {
    let p = space.p();
    if p > u8::MAX as u32 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    Ok(p)
}

impl Codeword {
    pub fn zero(space: &ProjectiveSpace) -> Result<Self> {
        let p = alphabet(space)?;
        Ok(Self {
            n: space.n(),
            p,
            h: space.h(),
            values: vec![0; space.num_points()],
        })
    }

    pub fn from_values(space: &ProjectiveSpace, values: Vec<u8>) -> Result<Self> {
        let p = alphabet(space)?;
        if values.len() != space.num_points() {
            return Err(Error::LengthMismatch {
                got: values.len(),
                expected: space.num_points(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v as u32 >= p) {
            return Err(Error::NonCanonicalEntry { value: v as u32, p });
        }
        Ok(Self {
            n: space.n(),
            p,
            h: space.h(),
            values,
        })
    }

    pub fn from_json(space: &ProjectiveSpace, json: &CodewordJson) -> Result<Self> {
        if (json.n, json.p, json.h) != (space.n(), space.p(), space.h()) {
            return Err(Error::LengthMismatch {
                got: json.values.len(),
                expected: space.num_points(),
            });
        }
        let mut c = Self::zero(space)?;
        for &(pt, v) in &json.values {
            space.point(pt as u64)?;
            if v >= c.p {
                return Err(Error::NonCanonicalEntry { value: v, p: c.p });
            }
            c.values[pt as usize] = v as u8;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> CodewordJson {
        CodewordJson {
            n: self.n,
            p: self.p,
            h: self.h,
            values: self
                .values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i as u32, v as u32))
                .collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn value(&self, pt: Point) -> u32 {
        self.values[pt.idx()] as u32
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn support(&self) -> Vec<Point> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| Point(i as u32))
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    /// wt(c restricted to the subspace).
    pub fn restricted_weight(&self, subspace: &SubspacePointSet) -> usize {
        subspace.points().iter().filter(|&&pt| self.value(pt) != 0).count()
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("codeword alphabet is prime")
    }

    pub fn scaled(&self, alpha: u32) -> Self {
        let f = self.field();
        let alpha = alpha % self.p;
        let values = self.values.iter().map(|&v| f.mul(v as u32, alpha) as u8).collect();
        Self { values, ..self.clone() }
    }

    /// self += alpha * other.
    pub fn add_scaled(&mut self, other: &Codeword, alpha: u32) {
        assert_eq!(self.values.len(), other.values.len());
        let f = self.field();
        let alpha = alpha % self.p;
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            *a = f.add(*a as u32, f.mul(b as u32, alpha)) as u8;
        }
    }

    /// self += alpha * f_H.
    pub fn add_hyperplane(&mut self, space: &ProjectiveSpace, h: Hyperplane, alpha: u32) {
        let p = self.p;
        let alpha = alpha % p;
        if alpha == 0 {
            return;
        }
        let values = &mut self.values;
        space.for_each_orthogonal(space.hyperplane_coords(h), |i| {
            let v = &mut values[i as usize];
            *v = ((*v as u32 + alpha) % p) as u8;
        });
    }

    pub fn support_subset_of(&self, other: &Codeword) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| a == 0 || b != 0)
    }

    /// True iff `self = alpha * other` for some alpha in F_p (including zero).
    pub fn is_multiple_of(&self, other: &Codeword) -> bool {
        if self.values.len() != other.values.len() {
            return false;
        }
        let Some(i) = other.values.iter().position(|&v| v != 0) else {
            return self.is_zero();
        };
        let f = self.field();
        let alpha = f.mul(self.values[i] as u32, f.inv(other.values[i] as u32).expect("nonzero"));
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| a as u32 == f.mul(alpha, b as u32))
    }
}

/// The incidence vector f_H.
pub fn incidence_codeword(space: &ProjectiveSpace, h: Hyperplane) -> Result<Codeword> {
    let mut c = Codeword::zero(space)?;
    c.add_hyperplane(space, h, 1);
    Ok(c)
}

/// A set of distinct hyperplanes with nonzero F_p coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "DecompositionJson", try_from = "DecompositionJson")]
pub struct Decomposition {
    terms: BTreeMap<Hyperplane, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DecompositionJson {
    terms: Vec<(u32, u32)>,
}

impl From<Decomposition> for DecompositionJson {
    fn from(d: Decomposition) -> Self {
        Self {
            terms: d.terms.iter().map(|(h, &a)| (h.0, a)).collect(),
        }
    }
}

impl TryFrom<DecompositionJson> for Decomposition {
    type Error = String;

    fn try_from(j: DecompositionJson) -> std::result::Result<Self, String> {
        let mut terms = BTreeMap::new();
        for (h, a) in j.terms {
            if a == 0 {
                return Err(format!("zero coefficient for hyperplane {h}"));
            }
            if terms.insert(Hyperplane(h), a).is_some() {
                return Err(format!("duplicate hyperplane {h}"));
            }
        }
        Ok(Self { terms })
    }
}

impl Decomposition {
    /// Builds from distinct hyperplanes with nonzero coefficients mod `p`.
    pub fn new(p: u32, terms: impl IntoIterator<Item = (Hyperplane, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (h, a) in terms {
            if a == 0 || a >= p {
                return Err(Error::NonCanonicalEntry { value: a, p });
            }
            if map.insert(h, a).is_some() {
                return Err(Error::Internal("duplicate hyperplane in decomposition"));
            }
        }
        Ok(Self { terms: map })
    }

    pub fn terms(&self) -> &BTreeMap<Hyperplane, u32> {
        &self.terms
    }

    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        self.terms.keys().copied().collect()
    }

    /// Number of terms.
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    /// Extended value c(H): the coefficient of H, zero off the decomposition.
    pub fn coefficient(&self, h: Hyperplane) -> u32 {
        self.terms.get(&h).copied().unwrap_or(0)
    }

    pub fn contains(&self, h: Hyperplane) -> bool {
        self.terms.contains_key(&h)
    }

    pub fn codeword(&self, space: &ProjectiveSpace) -> Result<Codeword> {
        let mut c = Codeword::zero(space)?;
        for (&h, &a) in &self.terms {
            c.add_hyperplane(space, h, a);
        }
        Ok(c)
    }
}

/// Result of [`combine`].
#[derive(Debug, Clone)]
pub struct Combination {
    pub codeword: Codeword,
    pub decomposition: Decomposition,
    /// Hyperplanes listed more than once whose merged coefficient vanished.
    pub cancelled: Vec<Hyperplane>,
}

/// Pointwise sum of scaled incidence vectors. Repeated hyperplanes merge by
/// adding coefficients.
pub fn combine(space: &ProjectiveSpace, terms: &[(Hyperplane, u32)]) -> Result<Combination> {
    let p = alphabet(space)?;
    let mut merged: BTreeMap<Hyperplane, u32> = BTreeMap::new();
    for &(h, a) in terms {
        space.hyperplane(h.0 as u64)?;
        let e = merged.entry(h).or_insert(0);
        *e = (*e + a % p) % p;
    }
    let cancelled = merged.iter().filter(|(_, &a)| a == 0).map(|(&h, _)| h).collect();
    merged.retain(|_, a| *a != 0);
    let decomposition = Decomposition { terms: merged };
    let codeword = decomposition.codeword(space)?;
    Ok(Combination {
        codeword,
        decomposition,
        cancelled,
    })
}

/// c restricted to a subset of the decomposition's hyperplanes.
pub fn partial_combination(
    space: &ProjectiveSpace,
    d: &Decomposition,
    subset: &[Hyperplane],
) -> Result<Codeword> {
    let mut c = Codeword::zero(space)?;
    for &h in subset {
        let a = d.terms.get(&h).ok_or(Error::NotATerm(h.0))?;
        c.add_hyperplane(space, h, *a);
    }
    Ok(c)
}
