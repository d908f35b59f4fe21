//! Bound functions of the small-weight regime and the thin/thick
//! classification of subspaces.
//!
//! Everything is exact integer arithmetic. `delta` involves the floor of an
//! irrational number for `h > 2`; it is evaluated as `isqrt(q * 4^(2-i))`
//! when `i < 2` and as `isqrt(q) >> (i-2)` otherwise, both of which equal
//! the floor of `sqrt(q) / 2^(i-2)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::Codeword;
use crate::error::{Error, Result};
use crate::ff::is_prime;
use crate::geometry::{ProjectiveSpace, SubspacePointSet};

/// Default cap on the number of lines scanned for a spectrum.
pub const DEFAULT_LINE_CAP: u64 = 20_000_000;

/// theta(m) = (q^(m+1) - 1) / (q - 1), with theta(-1) = theta(-2) = 0.
pub fn theta(m: i64, q: u64) -> Result<u128> {
    if m < -2 {
        return Err(Error::ParameterRange {
            name: "m",
            value: m,
            range: ">= -2".into(),
        });
    }
    if m < 0 {
        return Ok(0);
    }
    let q = q as u128;
    let mut acc: u128 = 0;
    let mut pow: u128 = 1;
    for i in 0..=m {
        acc = acc.checked_add(pow).ok_or(Error::Overflow("theta"))?;
        if i < m {
            pow = pow.checked_mul(q).ok_or(Error::Overflow("theta"))?;
        }
    }
    Ok(acc)
}

/// Why a context or codeword falls outside the hypotheses under which the
/// decomposition and minimality theorems are proven.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeFlag {
    /// q is prime (h = 1).
    PrimeField,
    /// q <= 27.
    SmallField,
    /// q below max{32, 2^(2n-4)} (h > 2) or 2^(2n) (h = 2).
    SizeAssumption,
    /// wt(c) > W(n,q).
    WeightAboveBound,
}

/// Parameters n, q = p^h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundContext {
    pub n: usize,
    pub p: u32,
    pub h: u32,
    pub q: u64,
}

impl BoundContext {
    pub fn new(n: usize, p: u32, h: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let q = (p as u64).checked_pow(h).ok_or(Error::Overflow("q"))?;
        Ok(Self { n, p, h, q })
    }

    pub fn of(space: &ProjectiveSpace) -> Self {
        Self {
            n: space.n(),
            p: space.p(),
            h: space.h(),
            q: space.q() as u64,
        }
    }

    pub fn theta(&self, m: i64) -> Result<u128> {
        theta(m, self.q)
    }

    fn require_extension(&self) -> Result<()> {
        if self.h < 2 {
            Err(Error::PrimeFieldBounds(self.h))
        } else {
            Ok(())
        }
    }

    fn check_dim(&self, i: usize, min: usize) -> Result<()> {
        if i < min || i > self.n {
            return Err(Error::ParameterRange {
                name: "i",
                value: i as i64,
                range: format!("[{min}, {}]", self.n),
            });
        }
        Ok(())
    }

    /// floor(sqrt(q) / 2^(i-2)) for h > 2, floor(p / 2^i) for h = 2.
    pub fn delta(&self, i: usize) -> Result<u64> {
        self.require_extension()?;
        self.check_dim(i, 0)?;
        Ok(self.delta_unchecked(i))
    }

    fn delta_unchecked(&self, i: usize) -> u64 {
        if self.h == 2 {
            return (self.p as u64) >> i;
        }
        let q = self.q as u128;
        if i < 2 {
            (q << (2 * (2 - i))).isqrt() as u64
        } else {
            (q.isqrt() >> (i - 2)) as u64
        }
    }

    /// W(i,q) = (delta(i) - 1) theta(i-1).
    pub fn weight_bound(&self, i: usize) -> Result<i128> {
        let d = self.delta(i)? as i128;
        let t = self.theta(i as i64 - 1)? as i128;
        (d - 1).checked_mul(t).ok_or(Error::Overflow("W"))
    }

    /// U(n,i,q) = q^i - (delta(n)-2) floor(q^(i-1))
    ///            - (i-2)((q-1) delta(n) + 1) floor(q^(i-3)) + theta(i-3).
    pub fn thick_bound(&self, i: usize) -> Result<i128> {
        self.require_extension()?;
        self.check_dim(i, 1)?;
        let q = self.q as i128;
        let dn = self.delta_unchecked(self.n) as i128;
        let pow = |e: i64| -> Result<i128> {
            if e < 0 {
                Ok(0)
            } else {
                q.checked_pow(e as u32).ok_or(Error::Overflow("U"))
            }
        };
        let i = i as i64;
        let third = (i - 2)
            .checked_mul(((q - 1) * dn + 1) as i64)
            .map(|x| x as i128)
            .ok_or(Error::Overflow("U"))?;
        let u = pow(i)? - (dn - 2) * pow(i - 1)? - third * pow(i - 3)?;
        Ok(u + self.theta((i - 3).max(-2))? as i128)
    }

    /// Flags for the field and size hypotheses (independent of any codeword).
    pub fn regime_flags(&self) -> Vec<RegimeFlag> {
        let mut flags = Vec::new();
        if self.h < 2 {
            flags.push(RegimeFlag::PrimeField);
        }
        if self.q <= 27 {
            flags.push(RegimeFlag::SmallField);
        }
        if !self.meets_size_assumption() {
            flags.push(RegimeFlag::SizeAssumption);
        }
        flags
    }

    fn meets_size_assumption(&self) -> bool {
        let n = self.n as u32;
        let need: u128 = match self.h {
            0 | 1 => return false,
            2 => 1u128 << (2 * n).min(127),
            _ => (1u128 << (2 * n).saturating_sub(4).min(127)).max(32),
        };
        self.q as u128 >= need
    }

    /// Regime flags for a codeword of the given weight.
    pub fn codeword_flags(&self, weight: usize) -> Vec<RegimeFlag> {
        let mut flags = self.regime_flags();
        match self.weight_bound(self.n) {
            Ok(w) if weight as i128 <= w => {}
            _ => flags.push(RegimeFlag::WeightAboveBound),
        }
        flags
    }

    pub fn in_regime(&self) -> bool {
        self.regime_flags().is_empty()
    }

    /// Thin/thick verdict for an i-space meeting the support in `weight` points.
    pub fn classify_weight(&self, weight: usize, i: usize) -> Result<Classification> {
        let w = self.weight_bound(i)?;
        // with theta(-3) = 0 the threshold for points reduces to 1
        let u = if i == 0 { 1 } else { self.thick_bound(i)? };
        let class = if weight as i128 <= w {
            SpaceClass::Thin
        } else if weight as i128 >= u {
            SpaceClass::Thick
        } else {
            SpaceClass::Neither
        };
        Ok(Classification {
            class,
            outside_guarantee: !self.in_regime(),
        })
    }

    /// Thin/thick verdict for a subspace with respect to `c`.
    pub fn classify(&self, c: &Codeword, subspace: &SubspacePointSet) -> Result<Classification> {
        self.classify_weight(c.restricted_weight(subspace), subspace.dim())
    }

    /// Contexts with q = p^h <= max_q satisfying every field and size
    /// hypothesis, for every admissible n >= 2.
    pub fn supported_contexts(max_q: u64) -> Vec<BoundContext> {
        let mut out = Vec::new();
        for p in (2..=max_q).filter(|&p| is_prime(p)) {
            let mut h = 2;
            while let Some(q) = p.checked_pow(h).filter(|&q| q <= max_q) {
                for n in 2.. {
                    let ctx = BoundContext { n, p: p as u32, h, q };
                    if !ctx.in_regime() {
                        break;
                    }
                    out.push(ctx);
                }
                h += 1;
            }
        }
        out.sort_by_key(|c| (c.q, c.n));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceClass {
    Thin,
    Thick,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: SpaceClass,
    /// The context violates the field or size hypotheses.
    pub outside_guarantee: bool,
}

/// Number of lines meeting the support in exactly `s` points, for each `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SpectrumJson", from = "SpectrumJson")]
pub struct SecantSpectrum {
    histogram: BTreeMap<u32, u64>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    histogram: Vec<(u32, u64)>,
}

impl From<SecantSpectrum> for SpectrumJson {
    fn from(s: SecantSpectrum) -> Self {
        Self {
            histogram: s.histogram.into_iter().collect(),
        }
    }
}

impl From<SpectrumJson> for SecantSpectrum {
    fn from(s: SpectrumJson) -> Self {
        Self {
            histogram: s.histogram.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }
}

impl SecantSpectrum {
    pub fn histogram(&self) -> &BTreeMap<u32, u64> {
        &self.histogram
    }

    pub fn count(&self, s: u32) -> u64 {
        self.histogram.get(&s).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// Lines whose intersection size lies in `lo..=hi`.
    pub fn mass_in(&self, lo: u32, hi: u32) -> u64 {
        if lo > hi {
            return 0;
        }
        self.histogram.range(lo..=hi).map(|(_, &c)| c).sum()
    }

    /// Largest intersection size among thin lines.
    pub fn max_thin_secant(&self, ctx: &BoundContext) -> Result<u32> {
        let w = ctx.weight_bound(1)?;
        Ok(self
            .histogram
            .keys()
            .copied()
            .filter(|&s| s as i128 <= w)
            .max()
            .unwrap_or(0))
    }

    /// Line counts per class.
    pub fn class_counts(&self, ctx: &BoundContext) -> Result<BTreeMap<&'static str, u64>> {
        let mut out = BTreeMap::from([("thin", 0), ("thick", 0), ("neither", 0)]);
        for (&s, &count) in &self.histogram {
            let key = match ctx.classify_weight(s as usize, 1)?.class {
                SpaceClass::Thin => "thin",
                SpaceClass::Thick => "thick",
                SpaceClass::Neither => "neither",
            };
            *out.get_mut(key).expect("known key") += count;
        }
        Ok(out)
    }
}

const LINE_CHUNK: u64 = 1 << 14;

/// Exact secant histogram over every line of the space.
pub fn secant_spectrum(space: &ProjectiveSpace, c: &Codeword, line_cap: u64) -> Result<SecantSpectrum> {
    let total = space.num_lines();
    if total > line_cap {
        return Err(Error::ResourceCap {
            what: "line",
            count: total as u128,
            cap: line_cap as u128,
        });
    }
    if c.len() != space.num_points() {
        return Err(Error::LengthMismatch {
            got: c.len(),
            expected: space.num_points(),
        });
    }
    let width = space.q() as usize + 2;
    let values = c.values();
    let chunks: Vec<u64> = (0..total.div_ceil(LINE_CHUNK)).collect();
    let merged = chunks
        .par_iter()
        .map(|&k| {
            let mut local = vec![0u64; width];
            let range = k * LINE_CHUNK..((k + 1) * LINE_CHUNK).min(total);
            space.for_each_line_in(range, |_, pts| {
                let s = pts.iter().filter(|pt| values[pt.idx()] != 0).count();
                local[s] += 1;
            });
            local
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(SecantSpectrum {
        histogram: merged
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(s, c)| (s as u32, c))
            .collect(),
    })
}

/// m = max{a : some thin line is an a-secant}.
pub fn max_thin_secant(space: &ProjectiveSpace, c: &Codeword, line_cap: u64) -> Result<u32> {
    secant_spectrum(space, c, line_cap)?.max_thin_secant(&BoundContext::of(space))
}
