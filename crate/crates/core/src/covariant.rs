//! The bigraded ring of covariants of six binary linear forms.
//!
//! Generators are the forms l_i = l_{i,1}x1 + l_{i,2}x2 and the brackets
//! p_ij = l_{i,1}l_{j,2} - l_{i,2}l_{j,1}. A covariant of bidegree (d, b)
//! has degree d in the coordinates of every l_i and order b in x1, x2.
//! Transvectants, generic forms with symbolic coefficients, graded-piece
//! dimensions and bases, and the index action of S6 all live here.

use crate::gauss::GaussRat;
use crate::linalg::{InsertOutcome, SpanSolver, SparseVec};
use crate::poly::{var_a, var_b, var_c, var_d, var_e, var_l, var_u, Monomial, SparsePoly, VAR_X1, VAR_X2};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CovariantError {
    #[error("bracket of a form with itself vanishes; indices must differ")]
    IdenticalIndices,
    #[error("transvectant index {r} exceeds an order (orders {m}, {n})")]
    OrderTooSmall { r: u32, m: u32, n: u32 },
    #[error("polynomial is not bihomogeneous in the form coordinates and x")]
    NonHomogeneous,
    #[error("assigned {given} linear factors to a generic form of degree {expected}")]
    DegreeMismatch { expected: usize, given: usize },
    #[error("graded piece ({d},{b}) is beyond the supported enumeration range")]
    TooLarge { d: u32, b: u32 },
    #[error("covariant is not of uniform degree across the six forms")]
    NonUniformDegree,
}

/// A (joint) covariant: a polynomial in the l-coordinates, x1, x2 and
/// possibly generic-form coefficient symbols, homogeneous of degree
/// `multidegree[i]` in the coordinates of l_{i+1} and of degree `order`
/// in x1, x2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Covariant {
    pub poly: SparsePoly,
    pub multidegree: [u32; 6],
    pub order: u32,
}

impl Covariant {
    /// Validate homogeneity and read the gradings off the polynomial.
    /// The zero polynomial is accepted with zero gradings.
    pub fn from_poly(poly: SparsePoly) -> Result<Covariant, CovariantError> {
        if poly.is_zero() {
            return Ok(Covariant {
                poly,
                multidegree: [0; 6],
                order: 0,
            });
        }
        let multidegree = poly.form_degrees().ok_or(CovariantError::NonHomogeneous)?;
        let xdeg = |m: &Monomial| m.exp(VAR_X1) as u32 + m.exp(VAR_X2) as u32;
        let mut it = poly.terms.keys();
        let order = xdeg(it.next().unwrap());
        if it.any(|m| xdeg(m) != order) {
            return Err(CovariantError::NonHomogeneous);
        }
        Ok(Covariant {
            poly,
            multidegree,
            order,
        })
    }

    pub fn zero() -> Covariant {
        Covariant {
            poly: SparsePoly::zero(),
            multidegree: [0; 6],
            order: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Uniform per-form degree d, when membership in the covariant ring of
    /// six forms holds (all six degrees equal).
    pub fn uniform_degree(&self) -> Result<u32, CovariantError> {
        let d = self.multidegree[0];
        if self.multidegree.iter().all(|&x| x == d) {
            Ok(d)
        } else {
            Err(CovariantError::NonUniformDegree)
        }
    }

    pub fn mul(&self, other: &Covariant) -> Covariant {
        let mut md = [0u32; 6];
        for i in 0..6 {
            md[i] = self.multidegree[i] + other.multidegree[i];
        }
        let poly = self.poly.mul(&other.poly);
        Covariant {
            multidegree: if poly.is_zero() { [0; 6] } else { md },
            order: if poly.is_zero() {
                0
            } else {
                self.order + other.order
            },
            poly,
        }
    }

    /// Sum; panics unless gradings agree (or one side is zero).
    pub fn add(&self, other: &Covariant) -> Covariant {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.multidegree, other.multidegree, "grading mismatch");
        assert_eq!(self.order, other.order, "order mismatch");
        let poly = self.poly.add(&other.poly);
        if poly.is_zero() {
            return Covariant::zero();
        }
        Covariant {
            poly,
            multidegree: self.multidegree,
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Covariant) -> Covariant {
        self.add(&other.scale(&-GaussRat::one()))
    }

    pub fn scale(&self, c: &GaussRat) -> Covariant {
        if c.is_zero() {
            return Covariant::zero();
        }
        Covariant {
            poly: self.poly.scale(c),
            multidegree: self.multidegree,
            order: self.order,
        }
    }

    pub fn pow(&self, n: u32) -> Covariant {
        let mut out = Covariant::from_poly(SparsePoly::one()).unwrap();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient of x1^(order-j) x2^j, as a covariant of order 0.
    pub fn x_coefficient(&self, j: u32) -> Covariant {
        let poly = self.poly.x_coefficient(self.order - j, j);
        Covariant::from_poly(poly).expect("stripping x keeps homogeneity")
    }
}

/// The linear form l_i = l_{i,1}x1 + l_{i,2}x2.
pub fn linear_form(i: usize) -> Covariant {
    assert!((1..=6).contains(&i));
    let p = SparsePoly::var(var_l(i, 1))
        .mul(&SparsePoly::var(VAR_X1))
        .add(&SparsePoly::var(var_l(i, 2)).mul(&SparsePoly::var(VAR_X2)));
    Covariant::from_poly(p).unwrap()
}

/// The bracket p_ij = l_{i,1}l_{j,2} - l_{i,2}l_{j,1}.
pub fn pluecker(i: usize, j: usize) -> Result<Covariant, CovariantError> {
    assert!((1..=6).contains(&i) && (1..=6).contains(&j));
    if i == j {
        return Err(CovariantError::IdenticalIndices);
    }
    let p = SparsePoly::var(var_l(i, 1))
        .mul(&SparsePoly::var(var_l(j, 2)))
        .sub(&SparsePoly::var(var_l(i, 2)).mul(&SparsePoly::var(var_l(j, 1))));
    Ok(Covariant::from_poly(p).unwrap())
}

/// The split sextic l_1 l_2 l_3 l_4 l_5 l_6, expanded.
pub fn universal_sextic() -> Covariant {
    let mut c = linear_form(1);
    for i in 2..=6 {
        c = c.mul(&linear_form(i));
    }
    c
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Classical transvectant with the factorial normalisation
/// (m-r)!(n-r)!/(m! n!) * sum_k (-1)^k C(r,k) f^{(r-k,k)} g^{(k,r-k)},
/// where the superscripts are x1/x2 derivative multiplicities and m, n are
/// the orders of f and g. The result has order m + n - 2r.
pub fn transvectant(f: &Covariant, g: &Covariant, r: u32) -> Result<Covariant, CovariantError> {
    let (m, n) = (f.order, g.order);
    if r > m || r > n {
        return Err(CovariantError::OrderTooSmall { r, m, n });
    }
    let pref = BigRational::new(
        factorial(m - r) * factorial(n - r),
        factorial(m) * factorial(n),
    );
    // iterated derivatives of f and g in each variable
    let derivs = |p: &SparsePoly| -> Vec<Vec<SparsePoly>> {
        // derivs[a][b] = d^{a+b} p / dx1^a dx2^b for a + b <= r
        let mut rows: Vec<Vec<SparsePoly>> = Vec::new();
        for a in 0..=r as usize {
            let base = if a == 0 {
                p.clone()
            } else {
                rows[a - 1][0].derivative(VAR_X1)
            };
            let mut row = vec![base];
            for b in 1..=(r as usize - a) {
                row.push(row[b - 1].derivative(VAR_X2));
            }
            rows.push(row);
        }
        rows
    };
    let df = derivs(&f.poly);
    let dg = derivs(&g.poly);
    let mut acc = SparsePoly::zero();
    for k in 0..=r {
        let sign = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let coeff = GaussRat::new(
            BigRational::from_integer(sign * binomial(r, k)) * &pref,
            BigRational::zero(),
        );
        let term = df[(r - k) as usize][k as usize].mul(&dg[k as usize][(r - k) as usize]);
        acc = acc.add(&term.scale(&coeff));
    }
    Covariant::from_poly(acc)
}

/// A form with symbolic coefficients, to be eliminated by `specialize_form`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenericForm {
    pub degree: usize,
    pub coeff_vars: Vec<usize>,
}

impl GenericForm {
    /// f6 = a0 x1^6 + ... + a6 x2^6.
    pub fn sextic() -> Self {
        GenericForm {
            degree: 6,
            coeff_vars: (0..=6).map(var_a).collect(),
        }
    }

    /// f5 = e0 x1^5 + ... + e5 x2^5.
    pub fn quintic() -> Self {
        GenericForm {
            degree: 5,
            coeff_vars: (0..=5).map(var_e).collect(),
        }
    }

    /// The three quadrics q1, q2, q3 with independent coefficient symbols.
    pub fn quadric(which: usize) -> Self {
        let v = match which {
            1 => var_b as fn(usize) -> usize,
            2 => var_c,
            3 => var_d,
            _ => panic!("quadric index must be 1, 2 or 3"),
        };
        GenericForm {
            degree: 2,
            coeff_vars: (0..=2).map(v).collect(),
        }
    }

    /// l = u0 x1 + u1 x2.
    pub fn linear() -> Self {
        GenericForm {
            degree: 1,
            coeff_vars: (0..=1).map(var_u).collect(),
        }
    }

    /// The form as a covariant: sum_k coeff_k x1^{n-k} x2^k.
    pub fn as_covariant(&self) -> Covariant {
        let mut p = SparsePoly::zero();
        for (k, &v) in self.coeff_vars.iter().enumerate() {
            let mut m = Monomial::var(v);
            m.0[VAR_X1] = (self.degree - k) as u8;
            m.0[VAR_X2] = k as u8;
            p.add_term(m, GaussRat::one());
        }
        Covariant::from_poly(p).unwrap()
    }
}

/// Replace the symbolic coefficients of `form` inside `c` by the expansion
/// coefficients of the product of the named linear forms.
pub fn specialize_form(
    c: &Covariant,
    form: &GenericForm,
    indices: &[usize],
) -> Result<Covariant, CovariantError> {
    if indices.len() != form.degree {
        return Err(CovariantError::DegreeMismatch {
            expected: form.degree,
            given: indices.len(),
        });
    }
    let mut prod = Covariant::from_poly(SparsePoly::one()).unwrap();
    for &i in indices {
        prod = prod.mul(&linear_form(i));
    }
    let mut poly = c.poly.clone();
    for (k, &v) in form.coeff_vars.iter().enumerate() {
        let ck = prod.poly.x_coefficient((form.degree - k) as u32, k as u32);
        poly = poly.substitute(v, &ck);
    }
    Covariant::from_poly(poly)
}

/// Dimension of the graded piece C'_{d,b}: the coefficient of z^{3d + b/2}
/// in (1 - z^{b+1}) ((1 - z^{d+1})/(1 - z))^6, and 0 for odd b.
pub fn dim_graded(d: u32, b: u32) -> BigInt {
    if b % 2 == 1 {
        return BigInt::zero();
    }
    let target = (3 * d + b / 2) as usize;
    // ((1 - z^{d+1})/(1 - z))^6 = (1 + z + ... + z^d)^6, truncated
    let mut poly = vec![BigInt::one()];
    for _ in 0..6 {
        let mut next = vec![BigInt::zero(); (poly.len() + d as usize).min(target + 1)];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..=(d as usize) {
                if i + j < next.len() {
                    next[i + j] += c;
                }
            }
        }
        poly = next;
    }
    let mut coeff = poly.get(target).cloned().unwrap_or_else(BigInt::zero);
    if target >= (b + 1) as usize {
        coeff -= poly
            .get(target - (b + 1) as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero);
    }
    coeff
}

/// The 15 index pairs (i, j), i < j, in lexicographic order.
pub const PAIRS: [(usize, usize); 15] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 4),
    (3, 5),
    (3, 6),
    (4, 5),
    (4, 6),
    (5, 6),
];

pub fn pair_index(i: usize, j: usize) -> usize {
    assert!(i < j);
    PAIRS.iter().position(|&p| p == (i, j)).unwrap()
}

/// A monomial in the generators: prod l_i^{l_exp[i]} * prod p_ij^{p_exp[..]}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GenMono {
    pub l_exp: [u8; 6],
    pub p_exp: [u8; 15],
}

impl GenMono {
    pub fn expand(&self) -> Covariant {
        let mut c = Covariant::from_poly(SparsePoly::one()).unwrap();
        for i in 0..6 {
            for _ in 0..self.l_exp[i] {
                c = c.mul(&linear_form(i + 1));
            }
        }
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            for _ in 0..self.p_exp[k] {
                c = c.mul(&pluecker(i, j).unwrap());
            }
        }
        c
    }

    pub fn order(&self) -> u32 {
        self.l_exp.iter().map(|&e| e as u32).sum()
    }
}

/// A basis of the graded piece C'_{d,b}, kept with the linear-algebra state
/// needed to express other covariants in it.
pub struct SpaceBasis {
    pub d: u32,
    pub b: u32,
    /// Generator monomials whose expansions form the basis.
    pub monos: Vec<GenMono>,
    /// The expanded basis covariants, parallel to `monos`.
    pub covariants: Vec<Covariant>,
    solver: SpanSolver,
    columns: BTreeMap<Monomial, usize>,
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    fn vectorize(&self, p: &SparsePoly) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (m, c) in &p.terms {
            v.push((*self.columns.get(m)?, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    /// Coordinates of a covariant in the basis, or None if outside the span
    /// (including covariants whose monomials never occur in the space).
    pub fn express(&self, c: &Covariant) -> Option<Vec<GaussRat>> {
        let v = self.vectorize(&c.poly)?;
        self.solver.coordinates(&v)
    }

    pub fn contains(&self, c: &Covariant) -> bool {
        self.express(c).is_some()
    }
}

/// Enumerate all generator monomials of uniform degree d and order b, expand
/// them, and keep a maximal independent subset (exact row reduction with a
/// fixed pivot rule, so the basis choice is deterministic).
pub fn space_basis(d: u32, b: u32) -> Result<SpaceBasis, CovariantError> {
    if d > 3 || b > 10 {
        return Err(CovariantError::TooLarge { d, b });
    }
    let mut monos = Vec::new();
    if b <= 6 * d && (6 * d - b) % 2 == 0 {
        let p_total = (6 * d - b) / 2;
        // incidence capacity d per form index
        let mut p_exp = [0u8; 15];
        let mut inc = [0u32; 6];
        enumerate_p(d, p_total, 0, &mut p_exp, &mut inc, &mut monos);
    }
    // expand and reduce
    let expansions: Vec<Covariant> = monos.iter().map(|m| m.expand()).collect();
    let mut columns = BTreeMap::new();
    for c in &expansions {
        for m in c.poly.terms.keys() {
            let next = columns.len();
            columns.entry(*m).or_insert(next);
        }
    }
    let mut solver = SpanSolver::new();
    let mut basis_monos = Vec::new();
    let mut basis_covs = Vec::new();
    for (gm, c) in monos.iter().zip(expansions.iter()) {
        let mut v: SparseVec = c
            .poly
            .terms
            .iter()
            .map(|(m, coef)| (columns[m], coef.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        if let InsertOutcome::NewPivot(_) = solver.insert(&v) {
            basis_monos.push(*gm);
            basis_covs.push(c.clone());
        }
    }
    Ok(SpaceBasis {
        d,
        b,
        monos: basis_monos,
        covariants: basis_covs,
        solver,
        columns,
    })
}

fn enumerate_p(
    d: u32,
    remaining: u32,
    k: usize,
    p_exp: &mut [u8; 15],
    inc: &mut [u32; 6],
    out: &mut Vec<GenMono>,
) {
    if k == 15 {
        if remaining == 0 {
            let mut l_exp = [0u8; 6];
            for i in 0..6 {
                l_exp[i] = (d - inc[i]) as u8;
            }
            out.push(GenMono {
                l_exp,
                p_exp: *p_exp,
            });
        }
        return;
    }
    let (i, j) = PAIRS[k];
    let cap = remaining
        .min(d - inc[i - 1])
        .min(d - inc[j - 1]);
    for e in 0..=cap {
        p_exp[k] = e as u8;
        inc[i - 1] += e;
        inc[j - 1] += e;
        enumerate_p(d, remaining - e, k + 1, p_exp, inc, out);
        inc[i - 1] -= e;
        inc[j - 1] -= e;
    }
    p_exp[k] = 0;
}

/// A permutation of {1,...,6}, stored as 1-based images.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perm(pub [usize; 6]);

impl Perm {
    pub fn identity() -> Perm {
        Perm([1, 2, 3, 4, 5, 6])
    }

    /// Composition: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut out = [0; 6];
        for i in 0..6 {
            out[i] = self.0[other.0[i] - 1];
        }
        Perm(out)
    }

    pub fn inverse(&self) -> Perm {
        let mut out = [0; 6];
        for i in 0..6 {
            out[self.0[i] - 1] = i + 1;
        }
        Perm(out)
    }

    /// Cycle type as a partition of 6 (descending).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = [false; 6];
        let mut cycles = Vec::new();
        for start in 0..6 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.0[cur] - 1;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }

    pub fn sign(&self) -> i32 {
        let mut s = 1;
        for len in self.cycle_type() {
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// All 720 permutations, in lexicographic order of their image tuples.
    pub fn all() -> Vec<Perm> {
        let mut out = Vec::with_capacity(720);
        let mut items = [1, 2, 3, 4, 5, 6];
        permute(&mut items, 0, &mut out);
        out.sort_by_key(|p| p.0);
        out
    }
}

fn permute(items: &mut [usize; 6], k: usize, out: &mut Vec<Perm>) {
    if k == 6 {
        out.push(Perm(*items));
        return;
    }
    for i in k..6 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Relabel form indices: i -> sigma(i) on every l-coordinate.
pub fn s6_act(sigma: &Perm, c: &Covariant) -> Covariant {
    let poly = c.poly.relabel(&sigma.0);
    Covariant::from_poly(poly).expect("relabelling preserves homogeneity")
}
