//! Divisor-class bookkeeping on the projectivized rank-2 Hodge bundle over
//! the level-2 moduli space: the classes W_i and H_pi in the basis
//! (h, lambda, D_ij), and the translation from an effective combination
//! of them to a vector-valued modular-form weight with boundary
//! vanishing orders.

use crate::covariant::{pair_index, PAIRS};
use crate::theta::{char_partition_table, Partition6};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A rational divisor class in the basis h, lambda, D_ij (pairs in the
/// lexicographic order of `PAIRS`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    pub h: BigRational,
    pub lambda: BigRational,
    pub d: [BigRational; 15],
}

impl DivisorClass {
    pub fn zero() -> Self {
        DivisorClass {
            h: BigRational::zero(),
            lambda: BigRational::zero(),
            d: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        out.h += &other.h;
        out.lambda += &other.lambda;
        for k in 0..15 {
            out.d[k] += &other.d[k];
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> DivisorClass {
        let mut out = self.clone();
        out.h *= c;
        out.lambda *= c;
        for k in 0..15 {
            out.d[k] *= c;
        }
        out
    }

    pub fn d_coeff(&self, i: usize, j: usize) -> &BigRational {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        &self.d[pair_index(i, j)]
    }
}

/// W_i = h + lambda/2 - (1/4) * sum of D_jk over pairs avoiding i.
pub fn class_w(i: usize) -> DivisorClass {
    assert!((1..=6).contains(&i));
    let mut out = DivisorClass::zero();
    out.h = BigRational::one();
    out.lambda = rat(1, 2);
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        if a != i && b != i {
            out.d[k] = rat(-1, 4);
        }
    }
    out
}

/// H_pi = (1/4)(2 lambda - the six within-triple D's of pi).
pub fn class_h(pi: &Partition6) -> DivisorClass {
    let mut out = DivisorClass::zero();
    out.lambda = rat(1, 2);
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        if !pi.separates(a as u8, b as u8) {
            out.d[k] = rat(-1, 4);
        }
    }
    out
}

/// Input to the weight calculus: multiplicities of the ten H_pi (indexed in
/// the order of `char_partition_table`) and of the six W_i.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct DivisorInput {
    pub c: [u32; 10],
    pub d: [u32; 6],
}

/// The modular-form data of an effective combination: Sym^j, det^k, and
/// the fifteen boundary vanishing orders r_ij.
#[derive(Clone, Serialize, Deserialize, Debug, PartialEq)]
pub struct FormWeight {
    pub j: i64,
    /// k as an exact rational string, e.g. "4" or "7/2".
    pub k: String,
    /// r_ij as exact rational strings, in PAIRS order.
    pub r: Vec<String>,
    /// true iff k and every r_ij are non-negative integers.
    pub admissible: bool,
}

fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// j = sum d_i, 2k = sum c + sum d, and
/// r_ab = (1/4)(sum of c over the four partitions joining a,b + sum of d
/// over the four indices other than a, b).
pub fn divisor_to_form(input: &DivisorInput) -> FormWeight {
    let table = char_partition_table();
    let j: i64 = input.d.iter().map(|&x| x as i64).sum();
    let csum: i64 = input.c.iter().map(|&x| x as i64).sum();
    let k = rat(csum + j, 2);
    let mut rs = Vec::with_capacity(15);
    let mut admissible = k.is_integer();
    for &(a, b) in PAIRS.iter() {
        let mut num = 0i64;
        for (t, pi) in table.iter().enumerate() {
            if !pi.separates(a as u8, b as u8) {
                num += input.c[t] as i64;
            }
        }
        for i in 1..=6 {
            if i != a && i != b {
                num += input.d[i - 1] as i64;
            }
        }
        let r = rat(num, 4);
        if !r.is_integer() || r.is_negative() {
            admissible = false;
        }
        rs.push(r);
    }
    FormWeight {
        j,
        k: rat_string(&k),
        r: rs.iter().map(rat_string).collect(),
        admissible,
    }
}

/// The divisor class of the input combination, for cross-checking the
/// weight formula against the class arithmetic.
pub fn input_class(input: &DivisorInput) -> DivisorClass {
    let table = char_partition_table();
    let mut out = DivisorClass::zero();
    for (t, pi) in table.iter().enumerate() {
        if input.c[t] > 0 {
            out = out.add(&class_h(pi).scale(&rat(input.c[t] as i64, 1)));
        }
    }
    for i in 1..=6 {
        if input.d[i - 1] > 0 {
            out = out.add(&class_w(i).scale(&rat(input.d[i - 1] as i64, 1)));
        }
    }
    out
}
