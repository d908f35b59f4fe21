//! Points, hyperplanes and lines of PG(n,q).
//!
//! Points are normalized so the first nonzero coordinate is 1 and are ranked
//! lexicographically on their encoded coordinates, most significant
//! coordinate first. A point whose leading 1 sits at position `k` therefore
//! has rank `theta(n-k-1) + tail`, where `tail` reads the remaining
//! coordinates as a base-q number. Hyperplanes use the same table through
//! their dual coordinates.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};

/// Default cap on the number of points of a space.
pub const DEFAULT_POINT_CAP: u64 = 10_000_000;
/// Default memory cap for the optional incidence bitmap.
pub const DEFAULT_INCIDENCE_CACHE_BYTES: u64 = 2 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperplane(pub u32);

impl Point {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Hyperplane {
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    /// The point sharing this hyperplane's dual coordinates.
    pub fn dual(self) -> Point {
        Point(self.0)
    }
}

/// A line, stored as its sorted point set; the two lowest points are its
/// canonical pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    points: Vec<Point>,
}

impl ProjLine {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn canonical_pair(&self) -> (Point, Point) {
        (self.points[0], self.points[1])
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// The point set of the span of independent points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePointSet {
    dim: usize,
    basis: Vec<Point>,
    points: Vec<Point>,
}

impl SubspacePointSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// PG(n,q) with its point table.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    field: Field,
    n: usize,
    theta: Vec<u64>,
    qpow: Vec<u64>,
    coords: Vec<Elem>,
    incidence: Option<Vec<u64>>,
}

impl ProjectiveSpace {
    pub fn new(n: usize, field: Field) -> Result<Self> {
        Self::with_cap(n, field, DEFAULT_POINT_CAP)
    }

    pub fn with_cap(n: usize, field: Field, point_cap: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let q = field.q() as u128;
        let count = (0..=n as u32).map(|i| q.pow(i)).sum::<u128>();
        let width = (n + 1) as u128;
        if count > point_cap as u128 || count * width > u32::MAX as u128 {
            return Err(Error::ResourceCap {
                what: "point",
                count,
                cap: point_cap as u128,
            });
        }
        let q = q as u64;
        let qpow: Vec<u64> = (0..=2 * n as u32).map(|i| q.saturating_pow(i)).collect();
        let theta: Vec<u64> = (0..=n).map(|m| qpow[..=m].iter().sum()).collect();
        let mut coords = Vec::with_capacity(count as usize * (n + 1));
        let mut row = vec![0 as Elem; n + 1];
        for k in (0..=n).rev() {
            let free = n - k;
            for tail in 0..qpow[free] {
                row.fill(0);
                row[k] = 1;
                let mut t = tail;
                for pos in (k + 1..=n).rev() {
                    row[pos] = (t % q) as Elem;
                    t /= q;
                }
                coords.extend_from_slice(&row);
            }
        }
        Ok(Self {
            field,
            n,
            theta,
            qpow,
            coords,
            incidence: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn h(&self) -> u32 {
        self.field.h()
    }

    /// theta(m) for -2 <= m <= n (zero for negative m).
    pub fn theta(&self, m: isize) -> u64 {
        if m < 0 {
            0
        } else {
            self.theta[m as usize]
        }
    }

    pub fn num_points(&self) -> usize {
        self.theta[self.n] as usize
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_points()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.num_points() as u32).map(Point)
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        (0..self.num_points() as u32).map(Hyperplane)
    }

    pub fn point_coords(&self, p: Point) -> &[Elem] {
        let w = self.n + 1;
        &self.coords[p.idx() * w..(p.idx() + 1) * w]
    }

    pub fn hyperplane_coords(&self, h: Hyperplane) -> &[Elem] {
        self.point_coords(h.dual())
    }

    #[inline]
    fn rank_normalized(&self, v: &[Elem]) -> u32 {
        let k = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let mut tail = 0u64;
        for &x in &v[k + 1..] {
            tail = tail * self.qpow[1] + x as u64;
        }
        (self.theta(self.n as isize - k as isize - 1) + tail) as u32
    }

    /// Scales `v` so its first nonzero entry is 1; false for the zero vector.
    pub fn normalize(&self, v: &mut [Elem]) -> bool {
        let Some(k) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        if v[k] != 1 {
            let inv = self.field.inv(v[k]);
            for x in &mut v[k..] {
                *x = self.field.mul(*x, inv);
            }
        }
        true
    }

    /// Index of the projective point spanned by a nonzero vector.
    pub fn point_of(&self, v: &[Elem]) -> Result<Point> {
        if v.len() != self.n + 1 || v.iter().any(|&x| x >= self.q()) {
            return Err(Error::BadVector);
        }
        let mut w = v.to_vec();
        if !self.normalize(&mut w) {
            return Err(Error::BadVector);
        }
        Ok(Point(self.rank_normalized(&w)))
    }

    pub fn hyperplane_of(&self, dual: &[Elem]) -> Result<Hyperplane> {
        self.point_of(dual).map(|p| Hyperplane(p.0))
    }

    pub fn point(&self, index: u64) -> Result<Point> {
        self.check_index("point", index).map(|i| Point(i as u32))
    }

    pub fn hyperplane(&self, index: u64) -> Result<Hyperplane> {
        self.check_index("hyperplane", index).map(|i| Hyperplane(i as u32))
    }

    fn check_index(&self, what: &'static str, index: u64) -> Result<u64> {
        if index < self.num_points() as u64 {
            Ok(index)
        } else {
            Err(Error::IndexOutOfRange {
                what,
                index,
                size: self.num_points() as u64,
            })
        }
    }

    #[inline]
    fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.field.add(acc, self.field.mul(x, y)))
    }

    pub fn incident(&self, p: Point, h: Hyperplane) -> bool {
        if let Some(bits) = &self.incidence {
            let bit = h.idx() * self.num_points() + p.idx();
            return bits[bit / 64] >> (bit % 64) & 1 == 1;
        }
        self.dot(self.point_coords(p), self.hyperplane_coords(h)) == 0
    }

    /// Materializes the incidence bitmap if it fits in `cap_bytes`.
    pub fn enable_incidence_cache(&mut self, cap_bytes: u64) -> bool {
        let n = self.num_points() as u64;
        let words = (n * n).div_ceil(64);
        if words * 8 > cap_bytes {
            return false;
        }
        let mut bits = vec![0u64; words as usize];
        for h in 0..n as u32 {
            let base = h as usize * n as usize;
            self.for_each_orthogonal(self.point_coords(Point(h)), |p| {
                let bit = base + p as usize;
                bits[bit / 64] |= 1 << (bit % 64);
            });
        }
        self.incidence = Some(bits);
        true
    }

    pub fn has_incidence_cache(&self) -> bool {
        self.incidence.is_some()
    }

    /// Calls `f` with the index of every normalized vector orthogonal to
    /// `v`. For `v` the dual coordinates of a hyperplane these are its
    /// points; for `v` a point they are the hyperplanes through it.
    pub fn for_each_orthogonal(&self, v: &[Elem], mut f: impl FnMut(u32)) {
        let n = self.n;
        let field = &self.field;
        let q = self.q();
        let mut digits = vec![0 as Elem; n + 1];
        for lead in 0..=n {
            let base = self.theta(n as isize - lead as isize - 1);
            let block = self.qpow[n - lead];
            let Some(solved) = (lead + 1..=n).rev().find(|&i| v[i] != 0) else {
                if v[lead] == 0 {
                    for idx in base..base + block {
                        f(idx as u32);
                    }
                }
                continue;
            };
            let free: Vec<usize> = (lead + 1..=n).filter(|&i| i != solved).collect();
            let neg_inv = field.neg(field.inv(v[solved]));
            let weight = |i: usize| self.qpow[n - i];
            let ws = weight(solved);
            let Some((&last, outer)) = free.split_last() else {
                f((base + field.mul(v[lead], neg_inv) as u64 * ws) as u32);
                continue;
            };
            // the innermost free coordinate runs over the whole field, so its
            // products and the solved offsets come from two row tables
            let row: Vec<Elem> = field.elements().map(|x| field.mul(x, v[last])).collect();
            let offset: Vec<u64> = field.elements().map(|y| field.mul(y, neg_inv) as u64 * ws).collect();
            let wl = weight(last);
            digits.fill(0);
            loop {
                let mut s = v[lead];
                let mut idx = base;
                for &i in outer {
                    s = field.add(s, field.mul(digits[i], v[i]));
                    idx += digits[i] as u64 * weight(i);
                }
                for (x, &r) in row.iter().enumerate() {
                    f((idx + x as u64 * wl + offset[field.add(s, r) as usize]) as u32);
                }
                // odometer over the outer free coordinates
                let mut carry = true;
                for &i in outer.iter().rev() {
                    digits[i] += 1;
                    if digits[i] < q {
                        carry = false;
                        break;
                    }
                    digits[i] = 0;
                }
                if carry {
                    break;
                }
            }
        }
    }

    /// Points of `h`, ascending.
    pub fn points_on(&self, h: Hyperplane) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.theta(self.n as isize - 1) as usize);
        self.for_each_orthogonal(self.hyperplane_coords(h), |i| out.push(Point(i)));
        out.sort_unstable();
        out
    }

    /// Hyperplanes through `p`, ascending.
    pub fn hyperplanes_through(&self, p: Point) -> Vec<Hyperplane> {
        let mut out = Vec::with_capacity(self.theta(self.n as isize - 1) as usize);
        self.for_each_orthogonal(self.point_coords(p), |i| out.push(Hyperplane(i)));
        out.sort_unstable();
        out
    }

    pub fn line_through(&self, a: Point, b: Point) -> Result<ProjLine> {
        if a == b {
            return Err(Error::SamePoint);
        }
        let (u, v) = (self.point_coords(a), self.point_coords(b));
        let mut points = Vec::with_capacity(self.q() as usize + 1);
        points.push(b);
        let mut w = vec![0 as Elem; self.n + 1];
        for t in self.field.elements() {
            for i in 0..=self.n {
                w[i] = self.field.add(u[i], self.field.mul(t, v[i]));
            }
            self.normalize(&mut w);
            points.push(Point(self.rank_normalized(&w)));
        }
        points.sort_unstable();
        Ok(ProjLine { points })
    }

    /// theta(n) theta(n-1) / (q+1).
    pub fn num_lines(&self) -> u64 {
        let n = self.n as isize;
        ((self.theta(n) as u128 * self.theta(n - 1) as u128) / (self.q() as u128 + 1)) as u64
    }

    /// Pivot blocks of the reduced echelon enumeration of lines: for each
    /// pivot pair (i, j) the half-open range of line indices it owns.
    fn line_blocks(&self) -> Vec<(usize, usize, u64, u64)> {
        let n = self.n;
        let mut out = Vec::new();
        let mut start = 0u64;
        for i in 0..n {
            for j in i + 1..=n {
                let size = self.qpow[2 * n - i - j - 1];
                out.push((i, j, start, size));
                start += size;
            }
        }
        out
    }

    /// Calls `f(line_index, points)` for every line whose index lies in
    /// `range`. Points are unsorted; the generator with more leading zeros
    /// comes first.
    pub fn for_each_line_in(&self, range: Range<u64>, mut f: impl FnMut(u64, &[Point])) {
        let n = self.n;
        let q = self.q() as u64;
        let field = &self.field;
        let mut u = vec![0 as Elem; n + 1];
        let mut v = vec![0 as Elem; n + 1];
        let mut pts = Vec::with_capacity(q as usize + 1);
        for (i, j, start, size) in self.line_blocks() {
            let lo = range.start.max(start);
            let hi = range.end.min(start + size);
            if lo >= hi {
                continue;
            }
            let base_u = self.theta(n as isize - i as isize - 1);
            for line in lo..hi {
                let mut t = line - start;
                u.fill(0);
                v.fill(0);
                u[i] = 1;
                v[j] = 1;
                for pos in (j + 1..=n).rev() {
                    v[pos] = (t % q) as Elem;
                    t /= q;
                }
                for pos in (i + 1..=n).rev().filter(|&p| p != j) {
                    u[pos] = (t % q) as Elem;
                    t /= q;
                }
                pts.clear();
                pts.push(Point(self.rank_normalized(&v)));
                for s in field.elements() {
                    let mut tail = 0u64;
                    for pos in i + 1..=n {
                        let x = field.add(u[pos], field.mul(s, v[pos]));
                        tail = tail * q + x as u64;
                    }
                    pts.push(Point((base_u + tail) as u32));
                }
                f(line, &pts);
            }
        }
    }

    pub fn line(&self, index: u64) -> Result<ProjLine> {
        let total = self.num_lines();
        if index >= total {
            return Err(Error::IndexOutOfRange {
                what: "line",
                index,
                size: total,
            });
        }
        let mut out = None;
        self.for_each_line_in(index..index + 1, |_, pts| {
            let mut points = pts.to_vec();
            points.sort_unstable();
            out = Some(ProjLine { points });
        });
        Ok(out.expect("index in range"))
    }

    /// Every line exactly once.
    pub fn lines(&self) -> impl Iterator<Item = ProjLine> + '_ {
        (0..self.num_lines()).map(|i| self.line(i).expect("in range"))
    }

    /// Rank over GF(q) of the coordinate vectors of `points`.
    pub fn rank(&self, points: &[Point]) -> usize {
        let w = self.n + 1;
        let field = &self.field;
        let mut rows: Vec<Vec<Elem>> = points.iter().map(|&p| self.point_coords(p).to_vec()).collect();
        let mut rank = 0;
        for col in 0..w {
            let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = field.inv(rows[rank][col]);
            let pivot: Vec<Elem> = rows[rank].iter().map(|&x| field.mul(x, inv)).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let k = row[col];
                    for c in 0..w {
                        row[c] = field.sub(row[c], field.mul(k, pivot[c]));
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }

    /// Point set of the subspace spanned by independent `basis` points.
    pub fn span_points(&self, basis: &[Point]) -> Result<SubspacePointSet> {
        if basis.is_empty() || self.rank(basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        let k = basis.len() - 1;
        let field = &self.field;
        let q = self.q() as u64;
        let mut points = Vec::with_capacity(self.theta(k as isize) as usize);
        let mut w = vec![0 as Elem; self.n + 1];
        for lead in 0..=k {
            for tail in 0..self.qpow[k - lead] {
                let mut lambda = vec![0 as Elem; k + 1];
                lambda[lead] = 1;
                let mut t = tail;
                for pos in (lead + 1..=k).rev() {
                    lambda[pos] = (t % q) as Elem;
                    t /= q;
                }
                w.fill(0);
                for (l, &b) in lambda.iter().zip(basis) {
                    if *l == 0 {
                        continue;
                    }
                    for (x, &c) in w.iter_mut().zip(self.point_coords(b)) {
                        *x = field.add(*x, field.mul(*l, c));
                    }
                }
                self.normalize(&mut w);
                points.push(Point(self.rank_normalized(&w)));
            }
        }
        points.sort_unstable();
        Ok(SubspacePointSet {
            dim: k,
            basis: basis.to_vec(),
            points,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn space(n: usize, p: u32, h: u32) -> ProjectiveSpace {
        ProjectiveSpace::new(n, Field::new(p, h, None).unwrap()).unwrap()
    }

    #[test]
    fn point_counts() {
        let s = space(2, 5, 1);
        assert_eq!(s.num_points(), 31);
        assert_eq!(s.num_hyperplanes(), 31);
        assert_eq!(space(2, 2, 1).num_points(), 7);
        assert_eq!(space(3, 2, 5).num_points(), 33825);
    }

    #[test]
    fn rejects_small_dimension_and_caps() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(
            ProjectiveSpace::new(1, f.clone()).unwrap_err(),
            Error::DimensionTooSmall(1)
        );
        assert!(matches!(
            ProjectiveSpace::with_cap(3, f, 10),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn table_is_lexicographic_and_ranks_match() {
        let s = space(3, 3, 1);
        let mut prev: Option<Vec<Elem>> = None;
        for p in s.points() {
            let c = s.point_coords(p).to_vec();
            assert_eq!(c[c.iter().position(|&x| x != 0).unwrap()], 1);
            assert_eq!(s.point_of(&c).unwrap(), p);
            if let Some(prev) = prev {
                assert!(prev < c);
            }
            prev = Some(c);
        }
        assert_eq!(s.point_coords(Point(0)), &[0, 0, 0, 1]);
    }

    #[test]
    fn point_of_normalizes_scaled_vectors() {
        let s = space(2, 5, 1);
        let p = s.point_of(&[0, 2, 4]).unwrap();
        assert_eq!(s.point_coords(p), &[0, 1, 2]);
        assert_eq!(s.point_of(&[0, 0, 0]).unwrap_err(), Error::BadVector);
        assert_eq!(s.point_of(&[0, 0]).unwrap_err(), Error::BadVector);
        let mut v = s.point_coords(p).to_vec();
        s.normalize(&mut v);
        assert_eq!(v, s.point_coords(p));
    }

    #[test]
    fn incidence_by_dot_product() {
        let s = space(2, 5, 1);
        let p = s.point_of(&[1, 0, 0]).unwrap();
        assert!(s.incident(p, s.hyperplane_of(&[0, 0, 1]).unwrap()));
        assert!(!s.incident(p, s.hyperplane_of(&[1, 0, 0]).unwrap()));
        for h in s.hyperplanes() {
            assert_eq!(s.points().filter(|&p| s.incident(p, h)).count(), 6);
        }
    }

    #[test]
    fn orthogonal_enumeration_matches_brute_force() {
        for (n, p, h) in [(2, 2, 1), (2, 5, 1), (3, 2, 2), (3, 3, 1), (4, 2, 1), (2, 2, 3)] {
            let s = space(n, p, h);
            for hp in s.hyperplanes() {
                let fast = s.points_on(hp);
                let slow: Vec<Point> = s.points().filter(|&p| s.incident(p, hp)).collect();
                assert_eq!(fast, slow);
                assert_eq!(fast.len() as u64, s.theta(n as isize - 1));
            }
            for pt in s.points() {
                let hs = s.hyperplanes_through(pt);
                assert_eq!(hs.len() as u64, s.theta(n as isize - 1));
                assert!(hs.iter().all(|&h| s.incident(pt, h)));
            }
        }
    }

    #[test]
    fn hyperplanes_through_in_large_space() {
        let s = space(3, 2, 5);
        for idx in [0u32, 17, 33824] {
            let hs = s.hyperplanes_through(Point(idx));
            assert_eq!(hs.len(), 1057);
            assert!(hs.iter().all(|&h| s.incident(Point(idx), h)));
        }
    }

    #[test]
    fn incidence_cache_agrees() {
        let mut s = space(2, 2, 2);
        let before: Vec<bool> = s
            .hyperplanes()
            .flat_map(|h| s.points().map(move |p| (p, h)))
            .map(|(p, h)| s.incident(p, h))
            .collect();
        assert!(s.enable_incidence_cache(1 << 20));
        assert!(s.has_incidence_cache());
        let after: Vec<bool> = s
            .hyperplanes()
            .flat_map(|h| s.points().map(move |p| (p, h)))
            .map(|(p, h)| s.incident(p, h))
            .collect();
        assert_eq!(before, after);
        assert!(!space(3, 2, 4).enable_incidence_cache(16));
    }

    #[test]
    fn line_through_basics() {
        let s = space(2, 5, 1);
        let a = s.point_of(&[1, 0, 0]).unwrap();
        let b = s.point_of(&[0, 1, 0]).unwrap();
        let l = s.line_through(a, b).unwrap();
        assert_eq!(l.points().len(), 6);
        assert!(l.points().iter().all(|&p| s.point_coords(p)[2] == 0));
        let pts = l.points().to_vec();
        for &x in &pts {
            for &y in &pts {
                if x != y {
                    assert_eq!(s.line_through(x, y).unwrap(), l);
                }
            }
        }
        assert_eq!(s.line_through(a, a).unwrap_err(), Error::SamePoint);
    }

    #[test]
    fn line_counts() {
        assert_eq!(space(2, 5, 1).num_lines(), 31);
        assert_eq!(space(3, 2, 1).num_lines(), 35);
        assert_eq!(space(2, 2, 1).num_lines(), 7);
        assert_eq!(space(2, 5, 1).lines().count(), 31);
        assert_eq!(space(3, 2, 1).lines().count(), 35);
    }

    #[test]
    fn enumerated_lines_are_distinct_and_cover_pairs() {
        for (n, p, h) in [(3, 2, 1), (3, 3, 1), (2, 2, 2), (4, 2, 1)] {
            let s = space(n, p, h);
            let lines: Vec<ProjLine> = s.lines().collect();
            let distinct: BTreeSet<Vec<Point>> = lines.iter().map(|l| l.points().to_vec()).collect();
            assert_eq!(distinct.len(), lines.len());
            let mut pairs = 0u64;
            for l in &lines {
                assert_eq!(l.points().len(), s.q() as usize + 1);
                let (a, b) = l.canonical_pair();
                assert_eq!(&s.line_through(a, b).unwrap(), l);
                pairs += (l.points().len() * (l.points().len() - 1) / 2) as u64;
            }
            let np = s.num_points() as u64;
            assert_eq!(pairs, np * (np - 1) / 2);
        }
    }

    #[test]
    fn two_lines_of_a_plane_meet_once() {
        let s = space(2, 3, 1);
        for a in s.hyperplanes() {
            for b in s.hyperplanes().filter(|&b| b != a) {
                let common = s.points().filter(|&p| s.incident(p, a) && s.incident(p, b)).count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn spans() {
        let s = space(3, 2, 5);
        let basis = [Point(1), Point(2), Point(40)];
        assert_eq!(s.rank(&basis), 3);
        let plane = s.span_points(&basis).unwrap();
        assert_eq!(plane.points().len(), 1057);
        assert_eq!(plane.dim(), 2);
        let line = s.span_points(&basis[..2]).unwrap();
        assert_eq!(line.points(), s.line_through(basis[0], basis[1]).unwrap().points());

        let small = space(2, 3, 1);
        let all = small
            .span_points(&[
                small.point_of(&[1, 0, 0]).unwrap(),
                small.point_of(&[0, 1, 0]).unwrap(),
                small.point_of(&[0, 0, 1]).unwrap(),
            ])
            .unwrap();
        assert_eq!(all.points().len(), 13);

        let a = small.point_of(&[1, 0, 0]).unwrap();
        let b = small.point_of(&[0, 1, 0]).unwrap();
        let c = small.point_of(&[1, 1, 0]).unwrap();
        assert_eq!(small.span_points(&[a, b, c]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn theta_recursion() {
        for (n, p, h) in [(2, 2, 2), (3, 5, 1), (4, 2, 1)] {
            let s = space(n, p, h);
            let q = s.q() as u64;
            for m in 0..=n as isize {
                assert_eq!(q * s.theta(m - 1) + 1, s.theta(m));
            }
        }
    }
}
