//! Sparse multivariate polynomials over Q(i) with a fixed variable table.
//!
//! The variable set covers the twelve coordinates of the six linear forms,
//! the form variables x1, x2, the auxiliary valuation variable t, and the
//! coefficient symbols of the generic forms used for specialisation
//! (a0..a6 for the sextic, e0..e5 for the quintic, b/c/d triples for the
//! three quadrics, u0..u1 for a generic linear form).

use crate::gauss::GaussRat;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Number of variables in the global table.
pub const NVARS: usize = 39;

/// Index of the coordinate `l_{i,j}` (i in 1..=6, j in 1..=2).
pub fn var_l(i: usize, j: usize) -> usize {
    debug_assert!((1..=6).contains(&i) && (1..=2).contains(&j));
    2 * (i - 1) + (j - 1)
}

pub const VAR_X1: usize = 12;
pub const VAR_X2: usize = 13;
pub const VAR_T: usize = 14;

/// Index of the generic sextic/linear coefficient `a_k` (k in 0..=6).
pub fn var_a(k: usize) -> usize {
    debug_assert!(k <= 6);
    15 + k
}

/// Index of the generic quintic coefficient `e_k` (k in 0..=5).
pub fn var_e(k: usize) -> usize {
    debug_assert!(k <= 5);
    22 + k
}

/// Index of the first quadric coefficient `b_k` (k in 0..=2).
pub fn var_b(k: usize) -> usize {
    debug_assert!(k <= 2);
    28 + k
}

/// Index of the second quadric coefficient `c_k` (k in 0..=2).
pub fn var_c(k: usize) -> usize {
    debug_assert!(k <= 2);
    31 + k
}

/// Index of the third quadric coefficient `d_k` (k in 0..=2).
pub fn var_d(k: usize) -> usize {
    debug_assert!(k <= 2);
    34 + k
}

/// Index of the generic linear-form coefficient `u_k` (k in 0..=1).
pub fn var_u(k: usize) -> usize {
    debug_assert!(k <= 1);
    37 + k
}

pub fn var_name(v: usize) -> String {
    match v {
        0..=11 => format!("l{}{}", v / 2 + 1, v % 2 + 1),
        VAR_X1 => "x1".into(),
        VAR_X2 => "x2".into(),
        VAR_T => "t".into(),
        15..=21 => format!("a{}", v - 15),
        22..=27 => format!("e{}", v - 22),
        28..=30 => format!("b{}", v - 28),
        31..=33 => format!("c{}", v - 31),
        34..=36 => format!("d{}", v - 34),
        37..=38 => format!("u{}", v - 37),
        _ => panic!("variable index out of range"),
    }
}

/// Exponent vector; the derived lexicographic `Ord` is a monomial order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub [u8; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: usize) -> Self {
        let mut m = Self::one();
        m.0[v] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; NVARS];
        for k in 0..NVARS {
            out[k] = self.0[k]
                .checked_add(other.0[k])
                .expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; NVARS];
        for k in 0..NVARS {
            out[k] = other.0[k] - self.0[k];
        }
        Monomial(out)
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
}

/// Sparse polynomial: canonical (zero-free, sorted) term storage.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparsePoly {
    pub terms: BTreeMap<Monomial, GaussRat>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn var(v: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v), GaussRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut out = SparsePoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact division; errors when `b` does not divide `self`.
    pub fn exact_div(&self, b: &SparsePoly) -> Result<SparsePoly, PolyError> {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let (lead_m, lead_c) = b.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.terms.iter().next_back().unwrap();
                (*m, c.clone())
            };
            if !lead_m.divides(&rm) {
                return Err(PolyError::NotDivisible);
            }
            let qm = lead_m.quotient(&rm);
            let qc = &rc / lead_c;
            // rem -= (qc * qm) * b; the leading term cancels by construction.
            for (bm, bc) in &b.terms {
                rem.add_term(bm.mul(&qm), -(&qc * bc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Degree in a single variable (None for the zero polynomial).
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v) as u32).max()
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, v: usize, val: &SparsePoly) -> SparsePoly {
        let maxdeg = match self.degree_in(v) {
            None => return SparsePoly::zero(),
            Some(d) => d,
        };
        // Precompute powers of the substituted value.
        let mut pows = Vec::with_capacity(maxdeg as usize + 1);
        pows.push(SparsePoly::one());
        for k in 1..=maxdeg as usize {
            pows.push(pows[k - 1].mul(val));
        }
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut rest = *m;
            rest.0[v] = 0;
            if e == 0 {
                out.add_term(rest, c.clone());
            } else {
                for (pm, pc) in &pows[e].terms {
                    out.add_term(rest.mul(pm), c * pc);
                }
            }
        }
        out
    }

    /// Coefficient of `x1^(b-j) x2^j` as a polynomial in the remaining
    /// variables; `b` is taken from the term itself, so this simply strips
    /// the x-part and collects terms whose x2-exponent is `j` and whose
    /// x1-exponent is `bx1`.
    pub fn x_coefficient(&self, ex1: u32, ex2: u32) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            if m.exp(VAR_X1) as u32 == ex1 && m.exp(VAR_X2) as u32 == ex2 {
                let mut rest = *m;
                rest.0[VAR_X1] = 0;
                rest.0[VAR_X2] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Partial derivative.
    pub fn derivative(&self, v: usize) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut m2 = *m;
                m2.0[v] = e - 1;
                out.add_term(m2, c * &GaussRat::from_int(e as i64));
            }
        }
        out
    }

    /// Degree in each of the six linear forms' coordinate pairs.
    pub fn form_degrees(&self) -> Option<[u32; 6]> {
        let mut iter = self.terms.keys();
        let first = iter.next()?;
        let deg_of = |m: &Monomial| {
            let mut d = [0u32; 6];
            for i in 0..6 {
                d[i] = m.exp(2 * i) as u32 + m.exp(2 * i + 1) as u32;
            }
            d
        };
        let d = deg_of(first);
        for m in iter {
            if deg_of(m) != d {
                return None;
            }
        }
        Some(d)
    }

    /// Relabel the linear-form indices by a permutation sigma (1-based
    /// images in `sigma[i-1]`).
    pub fn relabel(&self, sigma: &[usize; 6]) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut out = *m;
                    for i in 0..6 {
                        let tgt = sigma[i] - 1;
                        out.0[2 * tgt] = m.0[2 * i];
                        out.0[2 * tgt + 1] = m.0[2 * i + 1];
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for v in 0..NVARS {
                let e = m.exp(v);
                if e == 1 {
                    write!(f, "*{}", var_name(v))?;
                } else if e > 1 {
                    write!(f, "*{}^{}", var_name(v), e)?;
                }
            }
        }
        Ok(())
    }
}
