//! Boundary valuations of covariants: the order of vanishing of the
//! associated meromorphic form along each of the ten boundary components,
//! computed by a t-substitution on the form coordinates.
//!
//! For a partition pi of {1,...,6} into two triples and a covariant of
//! uniform per-form degree d, each x-coefficient P is sent through four
//! substitutions — for each triple, phi: (l_{i,1}, l_{i,2}) -> (l_{i,1}+t, 1)
//! and phi': (l_{i,1}, l_{i,2}) -> (1, l_{i,2}+t) on the forms of that
//! triple — and v(P) = 2d - min over the four t-degrees. The associated
//! form is holomorphic iff v >= 0 for all ten partitions.

use crate::covariant::{Covariant, CovariantError};
use crate::poly::{var_l, SparsePoly, VAR_T};
use crate::theta::{char_partition_table, Partition6};
use serde::Serialize;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ValuationError {
    #[error("covariant is not of uniform degree across the six forms")]
    NonUniformDegree,
}

impl From<CovariantError> for ValuationError {
    fn from(_: CovariantError) -> Self {
        ValuationError::NonUniformDegree
    }
}

/// Valuation of a covariant along one boundary component. `None` entries
/// stand for +infinity (identically vanishing coefficient).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    /// The two triples of the partition.
    pub partition: ([u8; 3], [u8; 3]),
    /// v of each x-coefficient, from x1^b down to x2^b.
    pub per_coefficient: Vec<Option<i64>>,
    /// Minimum of the per-coefficient values (None = +infinity).
    pub aggregate: Option<i64>,
}

/// t-degree of one substitution image; None encodes deg_t(0) = -infinity.
fn t_degree(p: &SparsePoly, triple: &[u8; 3], primed: bool) -> Option<i64> {
    let mut q = p.clone();
    for &i in triple {
        let i = i as usize;
        if primed {
            // (l_{i,1}, l_{i,2}) -> (1, l_{i,2} + t)
            q = q.substitute(var_l(i, 1), &SparsePoly::one());
            q = q.substitute(
                var_l(i, 2),
                &SparsePoly::var(var_l(i, 2)).add(&SparsePoly::var(VAR_T)),
            );
        } else {
            // (l_{i,1}, l_{i,2}) -> (l_{i,1} + t, 1)
            q = q.substitute(
                var_l(i, 1),
                &SparsePoly::var(var_l(i, 1)).add(&SparsePoly::var(VAR_T)),
            );
            q = q.substitute(var_l(i, 2), &SparsePoly::one());
        }
    }
    q.degree_in(VAR_T).map(|d| d as i64)
}

/// The valuation report of a covariant along the component of `pi`.
pub fn v_pi(c: &Covariant, pi: &Partition6) -> Result<ValuationReport, ValuationError> {
    let d = c.uniform_degree()? as i64;
    let b = c.order;
    let mut per = Vec::with_capacity(b as usize + 1);
    for j in 0..=b {
        let p = c.poly.x_coefficient(b - j, j);
        let mut min_deg: Option<i64> = None;
        for triple in [&pi.triples.0, &pi.triples.1] {
            for primed in [false, true] {
                if let Some(deg) = t_degree(&p, triple, primed) {
                    min_deg = Some(match min_deg {
                        None => deg,
                        Some(m) => m.min(deg),
                    });
                }
            }
        }
        per.push(min_deg.map(|m| 2 * d - m));
    }
    // None entries are +infinity and drop out of the minimum
    let aggregate = per.iter().flatten().copied().min();
    Ok(ValuationReport {
        partition: pi.triples,
        per_coefficient: per,
        aggregate,
    })
}

/// Aggregate valuations over all ten boundary components, in the order of
/// `char_partition_table`.
pub fn all_valuations(c: &Covariant) -> Result<Vec<ValuationReport>, ValuationError> {
    char_partition_table().iter().map(|pi| v_pi(c, pi)).collect()
}

/// Holomorphy criterion: non-negative valuation everywhere.
pub fn is_holomorphic(c: &Covariant) -> Result<bool, ValuationError> {
    Ok(all_valuations(c)?
        .iter()
        .all(|r| r.aggregate.map_or(true, |v| v >= 0)))
}

/// The smallest chi5-power whose multiple clears all poles.
pub fn needed_chi5_power(c: &Covariant) -> Result<i64, ValuationError> {
    let worst = all_valuations(c)?
        .iter()
        .filter_map(|r| r.aggregate)
        .min();
    Ok(worst.map_or(0, |w| (-w).max(0)))
}

/// The invariant I_5 = product of all fifteen p_ij, with v = 1 along every
/// boundary component; multiplying by it shifts every valuation by one.
pub fn i5() -> Covariant {
    let mut c = Covariant::from_poly(SparsePoly::one()).unwrap();
    for &(i, j) in crate::covariant::PAIRS.iter() {
        c = c.mul(&crate::covariant::pluecker(i, j).unwrap());
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariant::{linear_form, pluecker, universal_sextic};

    fn pi7() -> Partition6 {
        Partition6::new([1, 2, 3], [4, 5, 6])
    }

    #[test]
    fn split_sextic_profile() {
        let c = universal_sextic();
        for pi in char_partition_table() {
            let r = v_pi(&c, &pi).unwrap();
            assert_eq!(
                r.per_coefficient,
                vec![
                    Some(2),
                    Some(1),
                    Some(0),
                    Some(-1),
                    Some(0),
                    Some(1),
                    Some(2)
                ]
            );
            assert_eq!(r.aggregate, Some(-1));
        }
        assert_eq!(is_holomorphic(&c).unwrap(), false);
        assert_eq!(needed_chi5_power(&c).unwrap(), 1);
    }

    #[test]
    fn six_p_monomials_detect_their_partition() {
        // For a partition pi' = (abc)(def), the invariant
        // p_ab p_ac p_bc p_de p_df p_ef has v = 4 at pi' and 0 elsewhere.
        let table = char_partition_table();
        let six_p = |pi: &Partition6| {
            let t = |tr: &[u8; 3]| {
                pluecker(tr[0] as usize, tr[1] as usize)
                    .unwrap()
                    .mul(&pluecker(tr[0] as usize, tr[2] as usize).unwrap())
                    .mul(&pluecker(tr[1] as usize, tr[2] as usize).unwrap())
            };
            t(&pi.triples.0).mul(&t(&pi.triples.1))
        };
        for pi_prime in [table[0], table[6]] {
            let c = six_p(&pi_prime);
            for pi in &table {
                let expect = if *pi == pi_prime { 4 } else { 0 };
                assert_eq!(v_pi(&c, pi).unwrap().aggregate, Some(expect));
            }
        }
    }

    #[test]
    fn i5_has_valuation_one_everywhere() {
        let c = i5();
        for pi in char_partition_table() {
            assert_eq!(v_pi(&c, &pi).unwrap().aggregate, Some(1));
        }
        assert!(is_holomorphic(&c).unwrap());
        assert_eq!(needed_chi5_power(&c).unwrap(), 0);
    }

    #[test]
    fn i5_shifts_valuations_by_one() {
        let c = universal_sextic();
        let shifted = i5().mul(&c);
        for pi in char_partition_table() {
            let base = v_pi(&c, &pi).unwrap();
            let up = v_pi(&shifted, &pi).unwrap();
            let bumped: Vec<Option<i64>> = base
                .per_coefficient
                .iter()
                .map(|v| v.map(|x| x + 1))
                .collect();
            assert_eq!(up.per_coefficient, bumped);
        }
        assert!(is_holomorphic(&shifted).unwrap());
    }

    #[test]
    fn equivariance() {
        use crate::covariant::{s6_act, Perm};
        let c = pluecker(1, 2)
            .unwrap()
            .pow(2)
            .mul(&linear_form(3))
            .mul(&linear_form(4))
            .mul(&linear_form(5))
            .mul(&linear_form(6))
            .mul(&pluecker(3, 4).unwrap())
            .mul(&pluecker(5, 6).unwrap());
        let sigma = Perm([3, 1, 2, 5, 6, 4]);
        for pi in char_partition_table() {
            let mapped = Partition6::new(
                pi.triples.0.map(|x| sigma.0[x as usize - 1] as u8),
                pi.triples.1.map(|x| sigma.0[x as usize - 1] as u8),
            );
            assert_eq!(
                v_pi(&s6_act(&sigma, &c), &mapped).unwrap().aggregate,
                v_pi(&c, &pi).unwrap().aggregate
            );
        }
    }

    #[test]
    fn non_uniform_rejected() {
        let c = linear_form(1);
        assert_eq!(v_pi(&c, &pi7()), Err(ValuationError::NonUniformDegree));
    }

    #[test]
    fn zero_coefficient_is_infinite() {
        // x-coefficient zero: covariant p12^2 l3 l4 l5 l6 ... instead use a
        // covariant whose middle x-coefficients vanish: p12^2 * p34 p35 p45
        // * p16... simplest: an order-0 invariant has one coefficient.
        let inv = pluecker(1, 2)
            .unwrap()
            .mul(&pluecker(3, 4).unwrap())
            .mul(&pluecker(5, 6).unwrap());
        let r = v_pi(&inv, &pi7()).unwrap();
        assert_eq!(r.per_coefficient.len(), 1);
        assert!(r.aggregate.is_some());
        // and the zero covariant is +infinity throughout
        let z = Covariant::zero();
        let rz = v_pi(&z, &pi7()).unwrap();
        assert_eq!(rz.aggregate, None);
    }
}
