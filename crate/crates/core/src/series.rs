//! Box-truncated Fourier series in Q1, Q12, Q2 with a Laurent middle variable.
//!
//! A series is stored as a grid indexed by the (e1, e2) exponent pair; each
//! grid cell holds a Laurent polynomial in Q12. Terms are kept iff
//! floor <= e1, e2 <= nmax. Multiplication of two box-N series is exact on
//! the box as long as both floors are non-negative.

use crate::gauss::{parse_rational, GaussRat};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SeriesError {
    #[error("boxes differ: {0} vs {1}")]
    BoxMismatch(i64, i64),
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("lowest (e1+e2)-slice of the divisor is not a single (e1,e2) cell")]
    LeadingSliceNotInvertible,
    #[error("slice division left a remainder at (e1,e2)=({0},{1})")]
    NotDivisibleInBox(i64, i64),
    #[error("quotient box would be empty")]
    EmptyQuotientBox,
    #[error("malformed cache file: {0}")]
    BadCacheFile(String),
}

/// Laurent polynomial in Q12 over Q(i).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    pub coeffs: BTreeMap<i64, GaussRat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn term(e: i64, c: GaussRat) -> Self {
        let mut l = Self::zero();
        l.add_term(e, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, e: i64, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(e) {
            Entry::Vacant(en) => {
                en.insert(c);
            }
            Entry::Occupied(mut en) => {
                *en.get_mut() += &c;
                if en.get().is_zero() {
                    en.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Laurent) {
        for (e, c) in &other.coeffs {
            self.add_term(*e, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Laurent) {
        for (e, c) in &other.coeffs {
            self.add_term(*e, -c.clone());
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Accumulate `self += a * b`.
    pub fn mul_add_assign(&mut self, a: &Laurent, b: &Laurent) {
        for (e1, c1) in &a.coeffs {
            for (e2, c2) in &b.coeffs {
                self.add_term(e1 + e2, c1 * c2);
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn bottom(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Exact Laurent division; None when a remainder is left.
    pub fn exact_div(&self, b: &Laurent) -> Option<Laurent> {
        assert!(!b.is_zero());
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let btop = b.top().unwrap();
        let bbot = b.bottom().unwrap();
        let btop_c = b.coeffs[&btop].clone();
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while !rem.is_zero() {
            let rtop = rem.top().unwrap();
            let rbot = rem.bottom().unwrap();
            let d = rtop - btop;
            if d < rbot - bbot {
                return None;
            }
            let qc = &rem.coeffs[&rtop] / &btop_c;
            for (e, c) in &b.coeffs {
                rem.add_term(e + d, -(&qc * c));
            }
            quot.add_term(d, qc);
        }
        Some(quot)
    }
}

/// Finite-support Fourier expansion, box-truncated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierSeries {
    /// (e1, e2) -> Laurent polynomial in Q12.
    pub grid: BTreeMap<(i64, i64), Laurent>,
    /// Terms kept iff e1 <= nmax and e2 <= nmax.
    pub nmax: i64,
    /// Lower bounds on (e1, e2); (0, 0) for holomorphic objects.
    pub floor: (i64, i64),
}

impl FourierSeries {
    pub fn zero(nmax: i64) -> Self {
        FourierSeries {
            grid: BTreeMap::new(),
            nmax,
            floor: (0, 0),
        }
    }

    pub fn constant(c: GaussRat, nmax: i64) -> Self {
        let mut s = Self::zero(nmax);
        s.add_term(0, 0, 0, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.grid.values().map(|l| l.coeffs.len()).sum()
    }

    pub fn add_term(&mut self, e1: i64, e12: i64, e2: i64, c: GaussRat) {
        if c.is_zero() || e1 > self.nmax || e2 > self.nmax {
            return;
        }
        debug_assert!(e1 >= self.floor.0 && e2 >= self.floor.1);
        let cell = self.grid.entry((e1, e2)).or_insert_with(Laurent::zero);
        cell.add_term(e12, c);
        if cell.is_zero() {
            self.grid.remove(&(e1, e2));
        }
    }

    pub fn coefficient(&self, e1: i64, e12: i64, e2: i64) -> GaussRat {
        self.grid
            .get(&(e1, e2))
            .and_then(|l| l.coeffs.get(&e12))
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    /// Iterate all stored terms as (e1, e12, e2, coeff).
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, i64, &GaussRat)> {
        self.grid.iter().flat_map(|((e1, e2), l)| {
            l.coeffs.iter().map(move |(e12, c)| (*e1, *e12, *e2, c))
        })
    }

    pub fn add(&self, other: &FourierSeries) -> Result<FourierSeries, SeriesError> {
        if self.nmax != other.nmax {
            return Err(SeriesError::BoxMismatch(self.nmax, other.nmax));
        }
        let mut out = self.clone();
        out.floor = (
            self.floor.0.min(other.floor.0),
            self.floor.1.min(other.floor.1),
        );
        for ((e1, e2), l) in &other.grid {
            let cell = out.grid.entry((*e1, *e2)).or_insert_with(Laurent::zero);
            cell.add_assign(l);
            if cell.is_zero() {
                out.grid.remove(&(*e1, *e2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRat) -> FourierSeries {
        if c.is_zero() {
            let mut z = FourierSeries::zero(self.nmax);
            z.floor = self.floor;
            return z;
        }
        FourierSeries {
            grid: self
                .grid
                .iter()
                .map(|(k, l)| (*k, l.scale(c)))
                .collect(),
            nmax: self.nmax,
            floor: self.floor,
        }
    }

    pub fn neg(&self) -> FourierSeries {
        self.scale(&-GaussRat::one())
    }

    pub fn sub(&self, other: &FourierSeries) -> Result<FourierSeries, SeriesError> {
        self.add(&other.neg())
    }

    /// Exact product restricted to the box. Deterministic: the grid is a
    /// BTreeMap and accumulation order is fixed.
    pub fn mul(&self, other: &FourierSeries) -> Result<FourierSeries, SeriesError> {
        if self.nmax != other.nmax {
            return Err(SeriesError::BoxMismatch(self.nmax, other.nmax));
        }
        let mut out = FourierSeries::zero(self.nmax);
        out.floor = (
            self.floor.0 + other.floor.0,
            self.floor.1 + other.floor.1,
        );
        for ((a1, a2), la) in &self.grid {
            if a1 + other.floor.0 > self.nmax || a2 + other.floor.1 > self.nmax {
                continue;
            }
            for ((b1, b2), lb) in &other.grid {
                let e1 = a1 + b1;
                let e2 = a2 + b2;
                if e1 > self.nmax || e2 > self.nmax {
                    continue;
                }
                out.grid
                    .entry((e1, e2))
                    .or_insert_with(Laurent::zero)
                    .mul_add_assign(la, lb);
            }
        }
        out.grid.retain(|_, l| !l.is_zero());
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<FourierSeries, SeriesError> {
        let mut out = FourierSeries::constant(GaussRat::one(), self.nmax);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Restrict to a smaller box (serving a smaller-N request from a cache).
    pub fn restrict(&self, nmax: i64) -> FourierSeries {
        assert!(nmax <= self.nmax);
        FourierSeries {
            grid: self
                .grid
                .iter()
                .filter(|((e1, e2), _)| *e1 <= nmax && *e2 <= nmax)
                .map(|(k, l)| (*k, l.clone()))
                .collect(),
            nmax,
            floor: self.floor,
        }
    }

    /// The (e1, e2) cell of the lowest (e1+e2)-slice, provided that slice is
    /// concentrated in a single cell.
    fn lead_cell(&self) -> Result<((i64, i64), &Laurent), SeriesError> {
        let mut best: Option<(i64, i64)> = None;
        for &(e1, e2) in self.grid.keys() {
            match best {
                None => best = Some((e1, e2)),
                Some((b1, b2)) => {
                    let (s, bs) = (e1 + e2, b1 + b2);
                    if s < bs || (s == bs && (e1, e2) < (b1, b2)) {
                        best = Some((e1, e2));
                    }
                }
            }
        }
        let (u, v) = best.ok_or(SeriesError::DivisionByZero)?;
        // The minimal slice must be one-dimensional in (e1, e2).
        for &(e1, e2) in self.grid.keys() {
            if e1 + e2 == u + v && (e1, e2) != (u, v) {
                return Err(SeriesError::LeadingSliceNotInvertible);
            }
        }
        Ok(((u, v), &self.grid[&(u, v)]))
    }

    /// Slice-by-slice exact division ordered by total (e1+e2)-order.
    ///
    /// The box shrinks by the (e1,e2)-order of the divisor's lowest slice
    /// (by max(u,v) since the box is a square); the floor may go negative.
    pub fn div(&self, divisor: &FourierSeries) -> Result<FourierSeries, SeriesError> {
        if self.nmax != divisor.nmax {
            return Err(SeriesError::BoxMismatch(self.nmax, divisor.nmax));
        }
        let ((u0, v0), lead) = divisor.lead_cell()?;
        let qmax = self.nmax - u0.max(v0);
        let qfloor = (self.floor.0 - u0, self.floor.1 - v0);
        if qmax < qfloor.0 || qmax < qfloor.1 {
            return Err(SeriesError::EmptyQuotientBox);
        }
        let mut quot = FourierSeries::zero(qmax);
        quot.floor = qfloor;
        // Process quotient cells in increasing (p+q, p) order; every
        // contribution to cell (p, q) comes from strictly smaller slices
        // because the divisor's minimal slice is a single cell.
        let mut targets: Vec<(i64, i64)> = Vec::new();
        for p in qfloor.0..=qmax {
            for q in qfloor.1..=qmax {
                targets.push((p, q));
            }
        }
        targets.sort_by_key(|&(p, q)| (p + q, p));
        for (p, q) in targets {
            let mut need = self
                .grid
                .get(&(p + u0, q + v0))
                .cloned()
                .unwrap_or_else(Laurent::zero);
            for ((bu, bv), bl) in &divisor.grid {
                if (*bu, *bv) == (u0, v0) {
                    continue;
                }
                let (pp, qq) = (p + u0 - bu, q + v0 - bv);
                if pp < qfloor.0 || qq < qfloor.1 || pp > qmax || qq > qmax {
                    continue;
                }
                if let Some(ql) = quot.grid.get(&(pp, qq)) {
                    let mut prod = Laurent::zero();
                    prod.mul_add_assign(ql, bl);
                    need.sub_assign(&prod);
                }
            }
            if need.is_zero() {
                continue;
            }
            let qcell = need
                .exact_div(lead)
                .ok_or(SeriesError::NotDivisibleInBox(p + u0, q + v0))?;
            if !qcell.is_zero() {
                quot.grid.insert((p, q), qcell);
            }
        }
        Ok(quot)
    }

    /// Check e12^2 <= e1*e2 on every stored term.
    pub fn semipositive(&self) -> bool {
        self.terms().all(|(e1, e12, e2, _)| e12 * e12 <= e1 * e2)
    }

    /// Serialise in the cache format:
    /// `TAUT1 <name> N=<box> floor=<f1>,<f2>` then one line per term
    /// `e1 e12 e2 re_num/re_den im_num/im_den`, sorted lexicographically
    /// by (e1, e12, e2).
    pub fn to_cache(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "TAUT1 {} N={} floor={},{}",
            name, self.nmax, self.floor.0, self.floor.1
        )
        .unwrap();
        let mut terms: Vec<(i64, i64, i64, &GaussRat)> = self.terms().collect();
        terms.sort_by_key(|&(e1, e12, e2, _)| (e1, e12, e2));
        for (e1, e12, e2, c) in terms {
            writeln!(
                out,
                "{} {} {} {}/{} {}/{}",
                e1,
                e12,
                e2,
                c.re.numer(),
                c.re.denom(),
                c.im.numer(),
                c.im.denom()
            )
            .unwrap();
        }
        out
    }

    /// Parse the cache format; returns (name, series).
    pub fn from_cache(text: &str) -> Result<(String, FourierSeries), SeriesError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| SeriesError::BadCacheFile("empty file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "TAUT1" {
            return Err(SeriesError::BadCacheFile("bad header".into()));
        }
        let name = fields[1].to_string();
        let nmax: i64 = fields[2]
            .strip_prefix("N=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SeriesError::BadCacheFile("bad N field".into()))?;
        let floors = fields[3]
            .strip_prefix("floor=")
            .ok_or_else(|| SeriesError::BadCacheFile("bad floor field".into()))?;
        let (f1, f2) = floors
            .split_once(',')
            .ok_or_else(|| SeriesError::BadCacheFile("bad floor field".into()))?;
        let f1: i64 = f1
            .parse()
            .map_err(|_| SeriesError::BadCacheFile("bad floor value".into()))?;
        let f2: i64 = f2
            .parse()
            .map_err(|_| SeriesError::BadCacheFile("bad floor value".into()))?;
        let mut series = FourierSeries::zero(nmax);
        series.floor = (f1, f2);
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 5 {
                return Err(SeriesError::BadCacheFile(format!("bad term line: {line}")));
            }
            let e1: i64 = parts[0]
                .parse()
                .map_err(|_| SeriesError::BadCacheFile("bad exponent".into()))?;
            let e12: i64 = parts[1]
                .parse()
                .map_err(|_| SeriesError::BadCacheFile("bad exponent".into()))?;
            let e2: i64 = parts[2]
                .parse()
                .map_err(|_| SeriesError::BadCacheFile("bad exponent".into()))?;
            let re = parse_rational(parts[3])
                .ok_or_else(|| SeriesError::BadCacheFile("bad coefficient".into()))?;
            let im = parse_rational(parts[4])
                .ok_or_else(|| SeriesError::BadCacheFile("bad coefficient".into()))?;
            series.add_term(e1, e12, e2, GaussRat::new(re, im));
        }
        Ok((name, series))
    }

    /// True when the two series agree up to one common nonzero scalar.
    /// Returns the scalar (other = scalar * self) when both are nonzero.
    pub fn proportional(&self, other: &FourierSeries) -> Option<GaussRat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (e1, e12, e2, c) = self.terms().next().unwrap();
        let d = other.coefficient(e1, e12, e2);
        if d.is_zero() {
            return None;
        }
        let scalar = &d / c;
        // compare contents only: floors are conservative bounds and may
        // differ between routes that produced the same series
        if self.nmax == other.nmax && other.grid == self.scale(&scalar).grid {
            Some(scalar)
        } else {
            None
        }
    }

    /// All coefficients real and integral.
    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, _, _, c)| {
            c.im.is_zero() && c.re.denom().is_one()
        })
    }

    /// All coefficients in i*Z.
    pub fn is_i_integral(&self) -> bool {
        self.terms()
            .all(|(_, _, _, c)| c.re.is_zero() && c.im.denom().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(nmax: i64, terms: &[(i64, i64, i64, i64)]) -> FourierSeries {
        let mut out = FourierSeries::zero(nmax);
        for &(e1, e12, e2, c) in terms {
            out.add_term(e1, e12, e2, GaussRat::from_int(c));
        }
        out
    }

    #[test]
    fn mul_zero_annihilates() {
        let a = s(8, &[(0, 0, 0, 1), (4, 2, 1, 3)]);
        let z = FourierSeries::zero(8);
        assert!(a.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn mul_truncates_to_box() {
        let a = s(4, &[(3, 0, 0, 1)]);
        let b = s(4, &[(2, 0, 0, 1), (1, 0, 0, 1)]);
        let p = a.mul(&b).unwrap();
        // e1 = 5 falls outside the box, e1 = 4 stays
        assert!(p.coefficient(5, 0, 0).is_zero());
        assert_eq!(p.coefficient(4, 0, 0), GaussRat::from_int(1));
    }

    #[test]
    fn div_monomial_lead() {
        // (1 + Q1) * (1 + Q2) / (1 + Q1) = 1 + Q2
        let a = s(6, &[(0, 0, 0, 1), (1, 0, 0, 1)]);
        let b = s(6, &[(0, 0, 0, 1), (0, 0, 1, 1)]);
        let p = a.mul(&b).unwrap();
        let q = p.div(&a).unwrap();
        assert_eq!(q, b.restrict(6));
    }

    #[test]
    fn div_laurent_lead() {
        // chi5-shaped divisor: lead slice (Q12^2 - Q12^-2) at (4,4)
        let mut d = FourierSeries::zero(12);
        d.add_term(4, 2, 4, GaussRat::from_int(1));
        d.add_term(4, -2, 4, GaussRat::from_int(-1));
        d.add_term(8, 0, 8, GaussRat::from_int(5));
        let prod = d.mul(&d).unwrap();
        let q = prod.div(&d).unwrap();
        assert_eq!(q.nmax, 8);
        // the quotient floor is a conservative bound; compare contents
        assert_eq!(q.grid, d.restrict(8).grid);
    }

    #[test]
    fn div_detects_remainder() {
        let mut d = FourierSeries::zero(8);
        d.add_term(0, 2, 0, GaussRat::from_int(1));
        d.add_term(0, -2, 0, GaussRat::from_int(-1));
        let a = s(8, &[(0, 1, 0, 1)]); // Q12 is not divisible by Q12^2 - Q12^-2
        assert!(matches!(
            a.div(&d),
            Err(SeriesError::NotDivisibleInBox(_, _))
        ));
    }

    #[test]
    fn lead_slice_not_invertible() {
        let d = s(8, &[(1, 0, 0, 1), (0, 0, 1, 1)]);
        let a = s(8, &[(1, 0, 0, 1)]);
        assert_eq!(a.div(&d), Err(SeriesError::LeadingSliceNotInvertible));
    }

    #[test]
    fn cache_round_trip() {
        let mut a = FourierSeries::zero(8);
        a.floor = (0, -2);
        a.add_term(1, -3, -2, GaussRat::from_frac(-7, 3));
        a.add_term(
            4,
            0,
            4,
            GaussRat::new(
                GaussRat::from_int(2).re,
                GaussRat::from_frac(1, 2).re,
            ),
        );
        let text = a.to_cache("test_series");
        let (name, b) = FourierSeries::from_cache(&text).unwrap();
        assert_eq!(name, "test_series");
        assert_eq!(a, b);
        assert_eq!(text, b.to_cache("test_series"));
    }
}
