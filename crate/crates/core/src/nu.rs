//! The bridge from covariants to meromorphic Siegel modular forms: replace
//! each linear form l_i by the theta gradient G_i and keep track of the
//! chi5-power that normalises the result, plus the two intermediate-level
//! substitution profiles (three quadrics; quintic times linear).
//!
//! A covariant of uniform degree d and order b maps to a vector of b+1
//! Fourier series divided by chi5^d; the reduced object has weight
//! (b, d - b/2). The substitution is a ring homomorphism, so products are
//! evaluated factorwise whenever a generator factorisation is available.

use crate::covariant::{Covariant, CovariantError, GenMono, PAIRS};
use crate::gauss::GaussRat;
use crate::poly::{var_b, var_c, var_d, var_e, var_l, var_u, Monomial, SparsePoly, NVARS};
use crate::series::{FourierSeries, SeriesError};
use crate::theta::{chi5, even_theta, gradient, pluecker_tilde};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum NuError {
    #[error("covariant is not of uniform degree across the six forms")]
    NonUniformDegree,
    #[error("polynomial contains symbols outside the substitution table")]
    ForeignSymbols,
    #[error("series arithmetic failed: {0}")]
    Series(#[from] SeriesError),
    #[error("requested index lies outside the computed box")]
    OutOfBox,
    #[error("chi5 exponent {0}/6 is not an integer; input is not a covariant of the six forms")]
    FractionalResidue(i64),
    #[error("cannot reduce {steps} steps at exponent {have}/6")]
    TooManySteps { steps: i64, have: i64 },
    #[error("form still carries a chi5 power")]
    PoleRemains,
}

impl From<CovariantError> for NuError {
    fn from(_: CovariantError) -> Self {
        NuError::NonUniformDegree
    }
}

/// Index dictionary for published Fourier coefficients:
/// (e1, e12, e2) = (4n, 2r, 4m).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourierIndex {
    pub n: i64,
    pub r: i64,
    pub m: i64,
}

/// A vector-valued form carried as (numerator components, chi5 pole power).
/// The underlying form is `components / chi5^(chi5_sixths/6)` and has weight
/// (weight_j, weight_k); the components are the coefficients of
/// x1^(b-j) x2^j for j = 0..b.
#[derive(Clone, PartialEq, Debug)]
pub struct MeroForm {
    pub components: Vec<FourierSeries>,
    /// chi5 exponent in sixths (profiles on the quintic cover accumulate
    /// fractional powers; covariant inputs always give multiples of 6).
    pub chi5_sixths: i64,
    pub weight_j: i64,
    pub weight_k: BigRational,
}

/// JSON sidecar accompanying cached MeroForm components.
#[derive(Serialize)]
pub struct MeroFormMeta {
    pub weight_j: i64,
    pub weight_k: String,
    pub chi5_sixths: i64,
    pub nmax: i64,
    pub components: Vec<String>,
    pub expression: String,
}

impl MeroForm {
    pub fn nmax(&self) -> i64 {
        self.components[0].nmax
    }

    pub fn order(&self) -> i64 {
        self.components.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &GaussRat) -> MeroForm {
        MeroForm {
            components: self.components.iter().map(|s| s.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &MeroForm) -> Result<MeroForm, NuError> {
        assert_eq!(self.chi5_sixths, other.chi5_sixths, "pole mismatch");
        assert_eq!(self.components.len(), other.components.len());
        let components = self
            .components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(MeroForm {
            components,
            ..self.clone()
        })
    }

    /// Product of vector-valued forms: convolution of the x-coefficient
    /// vectors, adding weights and pole exponents.
    pub fn mul(&self, other: &MeroForm) -> Result<MeroForm, NuError> {
        let b1 = self.components.len() - 1;
        let b2 = other.components.len() - 1;
        let n = self.nmax();
        let mut components =
            vec![FourierSeries::zero(n); b1 + b2 + 1];
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate() {
                components[i + j] = components[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(MeroForm {
            components,
            chi5_sixths: self.chi5_sixths + other.chi5_sixths,
            weight_j: self.weight_j + other.weight_j,
            weight_k: &self.weight_k + &other.weight_k,
        })
    }

    /// Divide the numerator by chi5 `steps` times. The box shrinks by 4 per
    /// step; a division failure certifies a pole that chi5 cannot clear.
    pub fn reduce(&self, steps: i64) -> Result<MeroForm, NuError> {
        if steps * 6 > self.chi5_sixths {
            return Err(NuError::TooManySteps {
                steps,
                have: self.chi5_sixths,
            });
        }
        let mut components = self.components.clone();
        for _ in 0..steps {
            let c5 = chi5(components[0].nmax);
            components = components
                .iter()
                .map(|s| s.div(&c5))
                .collect::<Result<_, _>>()?;
        }
        Ok(MeroForm {
            components,
            chi5_sixths: self.chi5_sixths - 6 * steps,
            weight_j: self.weight_j,
            weight_k: self.weight_k.clone(),
        })
    }

    /// Multiply the form by chi5^p without touching the numerator: the pole
    /// exponent drops and the weight rises by 5 per power.
    pub fn mul_chi5_power(&self, p: i64) -> MeroForm {
        MeroForm {
            components: self.components.clone(),
            chi5_sixths: self.chi5_sixths - 6 * p,
            weight_j: self.weight_j,
            weight_k: &self.weight_k + BigRational::from_integer(BigInt::from(5 * p)),
        }
    }

    /// The coefficient vector at (e1, e12, e2) = (4n, 2r, 4m); requires a
    /// fully reduced (pole-free) form.
    pub fn fourier_coefficient(&self, idx: &FourierIndex) -> Result<Vec<GaussRat>, NuError> {
        if self.chi5_sixths != 0 {
            return Err(NuError::PoleRemains);
        }
        let (e1, e12, e2) = (4 * idx.n, 2 * idx.r, 4 * idx.m);
        let n = self.nmax();
        let floor = self.components[0].floor;
        if e1 > n || e2 > n || e1 < floor.0 || e2 < floor.1 {
            return Err(NuError::OutOfBox);
        }
        Ok(self
            .components
            .iter()
            .map(|c| c.coefficient(e1, e12, e2))
            .collect())
    }

    /// One common scalar s with other = s * self on every component, when it
    /// exists and both forms are nonzero.
    pub fn proportional(&self, other: &MeroForm) -> Option<GaussRat> {
        if self.components.len() != other.components.len() {
            return None;
        }
        let mut scalar: Option<GaussRat> = None;
        for (a, b) in self.components.iter().zip(other.components.iter()) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                (false, false) => {}
            }
            let s = a.proportional(b)?;
            match &scalar {
                None => scalar = Some(s),
                Some(prev) if *prev == s => {}
                _ => return None,
            }
        }
        scalar
    }

    pub fn meta(&self, name: &str, expression: &str) -> MeroFormMeta {
        MeroFormMeta {
            weight_j: self.weight_j,
            weight_k: if self.weight_k.denom().is_one() {
                self.weight_k.numer().to_string()
            } else {
                format!("{}/{}", self.weight_k.numer(), self.weight_k.denom())
            },
            chi5_sixths: self.chi5_sixths,
            nmax: self.nmax(),
            components: (0..self.components.len())
                .map(|j| format!("{name}_c{j}"))
                .collect(),
            expression: expression.to_string(),
        }
    }
}

/// Memoizing evaluator: maps a fixed set of variables to series and
/// evaluates polynomials in them, sharing partial products.
struct SeriesAssignment {
    vars: Vec<usize>,
    series: Vec<FourierSeries>,
    nmax: i64,
    memo: HashMap<Vec<u8>, FourierSeries>,
}

impl SeriesAssignment {
    fn new(table: Vec<(usize, FourierSeries)>, nmax: i64) -> Self {
        let (vars, series): (Vec<_>, Vec<_>) = table.into_iter().unzip();
        SeriesAssignment {
            vars,
            series,
            nmax,
            memo: HashMap::new(),
        }
    }

    fn eval_monomial(&mut self, key: &[u8]) -> Result<FourierSeries, NuError> {
        if let Some(s) = self.memo.get(key) {
            return Ok(s.clone());
        }
        let result = match key.iter().rposition(|&e| e > 0) {
            None => FourierSeries::constant(GaussRat::one(), self.nmax),
            Some(v) => {
                let mut prev = key.to_vec();
                prev[v] -= 1;
                let tail = self.eval_monomial(&prev)?;
                tail.mul(&self.series[v])?
            }
        };
        self.memo.insert(key.to_vec(), result.clone());
        Ok(result)
    }

    /// Evaluate a polynomial that must involve only the assigned variables
    /// (x1/x2 must already be stripped).
    fn eval_poly(&mut self, p: &SparsePoly) -> Result<FourierSeries, NuError> {
        let mut out = FourierSeries::zero(self.nmax);
        for (m, c) in &p.terms {
            let mut key = vec![0u8; self.vars.len()];
            for v in 0..NVARS {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match self.vars.iter().position(|&w| w == v) {
                    Some(idx) => key[idx] = e,
                    None => return Err(NuError::ForeignSymbols),
                }
            }
            let s = self.eval_monomial(&key)?;
            out = out.add(&s.scale(c))?;
        }
        Ok(out)
    }
}

fn gradient_table(nmax: i64) -> Vec<(usize, FourierSeries)> {
    let mut table = Vec::with_capacity(12);
    for i in 1..=6 {
        let (g1, g2) = gradient(i, nmax);
        table.push((var_l(i, 1), g1));
        table.push((var_l(i, 2), g2));
    }
    table
}

/// nu of an explicit covariant: substitute gradients for the form
/// coordinates in every x-coefficient. The pole exponent is the uniform
/// degree d; the (reduced) weight is (b, d - b/2).
pub fn nu_eval(c: &Covariant, nmax: i64) -> Result<MeroForm, NuError> {
    let d = c.uniform_degree()? as i64;
    let b = c.order as i64;
    let mut assignment = SeriesAssignment::new(gradient_table(nmax), nmax);
    let mut components = Vec::with_capacity(b as usize + 1);
    for j in 0..=b {
        let p = c.poly.x_coefficient((b - j) as u32, j as u32);
        components.push(assignment.eval_poly(&p)?);
    }
    Ok(MeroForm {
        components,
        chi5_sixths: 6 * d,
        weight_j: b,
        weight_k: BigRational::new(BigInt::from(2 * d - b), BigInt::from(2)),
    })
}

/// x-coefficient vector of a product of linear forms whose coefficients are
/// series: start from the empty product and convolve one form at a time.
fn convolve_linear(factors: &[(FourierSeries, FourierSeries)], nmax: i64) -> Result<Vec<FourierSeries>, NuError> {
    let mut comps = vec![FourierSeries::constant(GaussRat::one(), nmax)];
    for (a, b) in factors {
        let mut next = vec![FourierSeries::zero(nmax); comps.len() + 1];
        for (j, c) in comps.iter().enumerate() {
            next[j] = next[j].add(&c.mul(a)?)?;
            next[j + 1] = next[j + 1].add(&c.mul(b)?)?;
        }
        comps = next;
    }
    Ok(comps)
}

/// nu of a generator monomial, evaluated factorwise: the linear-form part
/// becomes a convolution of gradients, each bracket becomes its wedge
/// series. Far cheaper than expanding the monomial first.
pub fn nu_eval_genmono(gm: &GenMono, nmax: i64) -> Result<MeroForm, NuError> {
    let b = gm.order() as i64;
    let mut factors = Vec::new();
    for i in 0..6 {
        for _ in 0..gm.l_exp[i] {
            factors.push(gradient(i + 1, nmax));
        }
    }
    let mut components = convolve_linear(&factors, nmax)?;
    let mut scalar_part = FourierSeries::constant(GaussRat::one(), nmax);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        for _ in 0..gm.p_exp[k] {
            scalar_part = scalar_part.mul(&pluecker_tilde(i, j, nmax).expect("distinct"))?;
        }
    }
    for c in &mut components {
        *c = c.mul(&scalar_part)?;
    }
    let d = {
        let cov_degrees: i64 = gm.l_exp.iter().map(|&e| e as i64).sum::<i64>()
            + 2 * gm.p_exp.iter().map(|&e| e as i64).sum::<i64>();
        cov_degrees / 6
    };
    Ok(MeroForm {
        components,
        chi5_sixths: 6 * d,
        weight_j: b,
        weight_k: BigRational::new(BigInt::from(2 * d - b), BigInt::from(2)),
    })
}

/// nu of a linear combination of generator monomials (all of the same
/// bidegree), evaluated factorwise and summed.
pub fn nu_eval_combination(
    monos: &[GenMono],
    coeffs: &[GaussRat],
    nmax: i64,
) -> Result<MeroForm, NuError> {
    assert_eq!(monos.len(), coeffs.len());
    let mut acc: Option<MeroForm> = None;
    for (gm, c) in monos.iter().zip(coeffs.iter()) {
        if c.is_zero() {
            continue;
        }
        let term = nu_eval_genmono(gm, nmax)?.scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| {
        let b = monos.first().map_or(0, |gm| gm.order() as i64);
        MeroForm {
            components: vec![FourierSeries::zero(nmax); b as usize + 1],
            chi5_sixths: 0,
            weight_j: b,
            weight_k: BigRational::zero(),
        }
    }))
}

/// The intermediate-level substitution profiles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Profile {
    /// Three quadrics: q1 -> Sym2(G1,G2)/theta_1..6,
    /// q2 -> Sym2(G3,G4)/theta_7 theta_8, q3 -> Sym2(G5,G6)/theta_9 theta_10.
    Gamma0Two,
    /// Quintic times linear: f5 -> Sym5(G1,...,G5), l -> G6, with chi5
    /// powers accumulated in sixths (5 per quintic degree, 1 per linear).
    Gamma2W,
}

/// Uniform degree of `p` in the variable family `vars`, or an error.
fn family_degree(p: &SparsePoly, vars: &[usize]) -> Result<i64, NuError> {
    let deg_of = |m: &Monomial| vars.iter().map(|&v| m.exp(v) as i64).sum::<i64>();
    let mut it = p.terms.keys();
    let first = match it.next() {
        None => return Ok(0),
        Some(m) => deg_of(m),
    };
    if it.any(|m| deg_of(m) != first) {
        return Err(NuError::NonUniformDegree);
    }
    Ok(first)
}

fn sym2(a: usize, b: usize, nmax: i64) -> Result<[FourierSeries; 3], NuError> {
    let ga = gradient(a, nmax);
    let gb = gradient(b, nmax);
    let c0 = ga.0.mul(&gb.0)?;
    let c1 = ga.0.mul(&gb.1)?.add(&ga.1.mul(&gb.0)?)?;
    let c2 = ga.1.mul(&gb.1)?;
    Ok([c0, c1, c2])
}

/// Evaluate a covariant written in the generic coefficients of the chosen
/// profile. The result is exact on the box 0..nmax.
pub fn profile_eval(profile: Profile, c: &Covariant, nmax: i64) -> Result<MeroForm, NuError> {
    let b = c.order as i64;
    match profile {
        Profile::Gamma0Two => {
            // The three quadric images are quotients by theta products, but
            // the individual quotients are genuinely meromorphic: evaluate
            // the covariant on the numerators and divide by the full theta
            // denominator once at the end (the division failing certifies
            // that the covariant's image is not holomorphic). Leads: the
            // first denominator starts at (0,2), the second at (2,0), the
            // third at (2,2), so the end division shrinks the box by
            // max(2(d2+d3), 2(d1+d3)).
            let bvars: Vec<usize> = (0..=2).map(var_b).collect();
            let cvars: Vec<usize> = (0..=2).map(var_c).collect();
            let dvars: Vec<usize> = (0..=2).map(var_d).collect();
            let d1 = family_degree(&c.poly, &bvars)?;
            let d2 = family_degree(&c.poly, &cvars)?;
            let d3 = family_degree(&c.poly, &dvars)?;
            let shift = (2 * (d2 + d3)).max(2 * (d1 + d3));
            let nn = nmax + shift;
            let mut t16 = FourierSeries::constant(GaussRat::one(), nn);
            for i in 1..=6 {
                t16 = t16.mul(&even_theta(i, nn))?;
            }
            let t78 = even_theta(7, nn).mul(&even_theta(8, nn))?;
            let t910 = even_theta(9, nn).mul(&even_theta(10, nn))?;
            let mut den = t16.pow(d1 as u32)?;
            den = den.mul(&t78.pow(d2 as u32)?)?;
            den = den.mul(&t910.pow(d3 as u32)?)?;
            let mut table = Vec::new();
            for (k, s) in sym2(1, 2, nn)?.into_iter().enumerate() {
                table.push((var_b(k), s));
            }
            for (k, s) in sym2(3, 4, nn)?.into_iter().enumerate() {
                table.push((var_c(k), s));
            }
            for (k, s) in sym2(5, 6, nn)?.into_iter().enumerate() {
                table.push((var_d(k), s));
            }
            let mut assignment = SeriesAssignment::new(table, nn);
            let mut components = Vec::with_capacity(b as usize + 1);
            for j in 0..=b {
                let p = c.poly.x_coefficient((b - j) as u32, j as u32);
                let num = assignment.eval_poly(&p)?;
                components.push(num.div(&den)?);
            }
            // substituted weights: (2,-2), (2,0), (2,0)
            let k = BigRational::from_integer(BigInt::from(-2 * d1))
                + BigRational::new(BigInt::from(2 * (d1 + d2 + d3) - b), BigInt::from(2));
            Ok(MeroForm {
                components,
                chi5_sixths: 0,
                weight_j: b,
                weight_k: k,
            })
        }
        Profile::Gamma2W => {
            let factors: Vec<_> = (1..=5).map(|i| gradient(i, nmax)).collect();
            let f5 = convolve_linear(&factors, nmax)?;
            let g6 = gradient(6, nmax);
            let mut table = Vec::new();
            for (k, s) in f5.into_iter().enumerate() {
                table.push((var_e(k), s));
            }
            table.push((var_u(0), g6.0));
            table.push((var_u(1), g6.1));
            let evars: Vec<usize> = (0..=5).map(var_e).collect();
            let uvars: Vec<usize> = (0..=1).map(var_u).collect();
            let de = family_degree(&c.poly, &evars)?;
            let du = family_degree(&c.poly, &uvars)?;
            let sixths = 5 * de + du;
            if sixths % 6 != 0 {
                return Err(NuError::FractionalResidue(sixths));
            }
            let mut assignment = SeriesAssignment::new(table, nmax);
            let mut components = Vec::with_capacity(b as usize + 1);
            for j in 0..=b {
                let p = c.poly.x_coefficient((b - j) as u32, j as u32);
                components.push(assignment.eval_poly(&p)?);
            }
            // numerator weights: Sym5(G) has k = 5/2, G6 has k = 1/2; the
            // chi5 normalisation then subtracts 5/6 per sixth.
            let k_num = BigRational::new(BigInt::from(5 * de + du), BigInt::from(2))
                + BigRational::new(BigInt::from(5 * de + du - b), BigInt::from(2));
            let k = k_num - BigRational::new(BigInt::from(5 * sixths), BigInt::from(6));
            Ok(MeroForm {
                components,
                chi5_sixths: sixths,
                weight_j: b,
                weight_k: k,
            })
        }
    }
}

/// The invariant I_5 as a generator monomial (every bracket once).
pub fn i5_genmono() -> GenMono {
    GenMono {
        l_exp: [0; 6],
        p_exp: [1; 15],
    }
}
