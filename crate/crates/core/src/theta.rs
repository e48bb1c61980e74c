//! Theta constants, theta gradients, chi5 and the analytic Pluecker forms.
//!
//! All expansions are in the variables Q1 = e^{pi i tau_1/4},
//! Q12 = e^{pi i tau_12/2}, Q2 = e^{pi i tau_2/4}. A characteristic is a
//! 2x2 bit matrix [mu; nu]; the ten even ones give theta constants, the six
//! odd ones give the normalised gradients G_i = (1/pi i) grad theta_{m_i}.

use crate::gauss::GaussRat;
use crate::series::FourierSeries;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ThetaError {
    #[error("wedge of a gradient with itself is zero; indices must differ")]
    IdenticalIndices,
}

/// A theta characteristic with entries reduced mod 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThetaCharacteristic {
    pub mu: (u8, u8),
    pub nu: (u8, u8),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl ThetaCharacteristic {
    pub fn parity(&self) -> Parity {
        if (self.mu.0 * self.nu.0 + self.mu.1 * self.nu.1) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

const fn ch(m1: u8, m2: u8, n1: u8, n2: u8) -> ThetaCharacteristic {
    ThetaCharacteristic {
        mu: (m1, m2),
        nu: (n1, n2),
    }
}

/// The ten even characteristics n1..n10, in lexicographic order.
pub const EVEN_CHARS: [ThetaCharacteristic; 10] = [
    ch(0, 0, 0, 0),
    ch(0, 0, 0, 1),
    ch(0, 0, 1, 0),
    ch(0, 0, 1, 1),
    ch(0, 1, 0, 0),
    ch(0, 1, 1, 0),
    ch(1, 0, 0, 0),
    ch(1, 0, 0, 1),
    ch(1, 1, 0, 0),
    ch(1, 1, 1, 1),
];

/// The six odd characteristics m1..m6, in lexicographic order.
pub const ODD_CHARS: [ThetaCharacteristic; 6] = [
    ch(0, 1, 0, 1),
    ch(0, 1, 1, 1),
    ch(1, 0, 1, 0),
    ch(1, 0, 1, 1),
    ch(1, 1, 0, 1),
    ch(1, 1, 1, 0),
];

/// An unordered partition of {1,...,6} into two triples.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Partition6 {
    /// Both triples sorted; the one containing 1 comes first.
    pub triples: ([u8; 3], [u8; 3]),
}

impl Partition6 {
    pub fn new(a: [u8; 3], b: [u8; 3]) -> Self {
        let mut a = a;
        let mut b = b;
        a.sort_unstable();
        b.sort_unstable();
        let mut seen = [false; 7];
        for &x in a.iter().chain(b.iter()) {
            assert!((1..=6).contains(&x) && !seen[x as usize]);
            seen[x as usize] = true;
        }
        if a[0] == 1 {
            Partition6 { triples: (a, b) }
        } else {
            Partition6 { triples: (b, a) }
        }
    }

    /// True when a and b lie in different triples.
    pub fn separates(&self, a: u8, b: u8) -> bool {
        let in_first = |x| self.triples.0.contains(&x);
        in_first(a) != in_first(b)
    }
}

/// Each even characteristic is the sum of three distinct odd ones in two
/// ways; the two triples of odd indices partition {1,...,6}. Row i holds the
/// partition attached to the even characteristic n_{i+1}.
pub fn char_partition_table() -> [Partition6; 10] {
    [
        Partition6::new([1, 4, 6], [2, 3, 5]),
        Partition6::new([1, 3, 6], [2, 4, 5]),
        Partition6::new([1, 3, 5], [2, 4, 6]),
        Partition6::new([1, 4, 5], [2, 3, 6]),
        Partition6::new([1, 3, 4], [2, 5, 6]),
        Partition6::new([1, 5, 6], [2, 3, 4]),
        Partition6::new([1, 2, 3], [4, 5, 6]),
        Partition6::new([1, 2, 4], [3, 5, 6]),
        Partition6::new([1, 2, 6], [3, 4, 5]),
        Partition6::new([1, 2, 5], [3, 4, 6]),
    ]
}

/// The even index (1..10) carrying a given partition.
pub fn even_index_of_partition(p: &Partition6) -> usize {
    char_partition_table()
        .iter()
        .position(|q| q == p)
        .expect("every two-triple partition is in the table")
        + 1
}

/// The four even indices whose partition keeps a and b in the same triple.
/// These are the theta constants whose product recovers the Pluecker form of
/// the pair (up to sign).
pub fn evens_joining(a: u8, b: u8) -> [usize; 4] {
    let mut out = [0usize; 4];
    let mut k = 0;
    for (i, p) in char_partition_table().iter().enumerate() {
        if !p.separates(a, b) {
            out[k] = i + 1;
            k += 1;
        }
    }
    assert_eq!(k, 4);
    out
}

/// Sign relating the Pluecker form of a pair {a, b} (a < b) to the product
/// of its four even theta constants: ptilde_ab = sign * prod theta_i over
/// evens_joining(a, b). Determined empirically from the expansions at N=16;
/// each side is a cusp form determined by finitely many coefficients, so the
/// box comparison pins the constant.
pub fn ptilde_theta_sign(a: u8, b: u8) -> i64 {
    assert!(a < b);
    match (a, b) {
        (1, 5) | (2, 5) | (3, 4) | (3, 5) | (4, 5) => -1,
        _ => 1,
    }
}

/// Lattice points m = 2n + mu with m^2 <= N, i.e. the box support.
fn lattice_range(mu: u8, nmax: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut m = mu as i64;
    loop {
        if m * m > nmax {
            break;
        }
        out.push(m);
        if m != 0 {
            out.push(-m);
        }
        m += 2;
    }
    out.sort_unstable();
    out
}

fn theta_sum(c: &ThetaCharacteristic, nmax: i64, grad_component: Option<usize>) -> FourierSeries {
    let pref = GaussRat::i_pow((c.mu.0 * c.nu.0 + c.mu.1 * c.nu.1) as i64);
    let mut s = FourierSeries::zero(nmax);
    for &m1 in &lattice_range(c.mu.0, nmax) {
        for &m2 in &lattice_range(c.mu.1, nmax) {
            // m_j = 2 n_j + mu_j, so n_j = (m_j - mu_j)/2
            let n1 = (m1 - c.mu.0 as i64) / 2;
            let n2 = (m2 - c.mu.1 as i64) / 2;
            let sign = (n1 * c.nu.0 as i64 + n2 * c.nu.1 as i64).rem_euclid(2);
            let mut coeff = if sign == 0 { pref.clone() } else { -pref.clone() };
            match grad_component {
                None => {}
                Some(1) => coeff = coeff * GaussRat::from_int(m1),
                Some(2) => coeff = coeff * GaussRat::from_int(m2),
                _ => unreachable!(),
            }
            s.add_term(m1 * m1, m1 * m2, m2 * m2, coeff);
        }
    }
    s
}

/// Fourier expansion of the even theta constant with index 1..10, truncated
/// to the box e1, e2 <= N. Coefficients are rational integers.
pub fn even_theta(index: usize, nmax: i64) -> FourierSeries {
    assert!((1..=10).contains(&index));
    theta_sum(&EVEN_CHARS[index - 1], nmax, None)
}

/// The two components of the normalised gradient G_i, index 1..6.
/// Coefficients lie in i*Z.
pub fn gradient(index: usize, nmax: i64) -> (FourierSeries, FourierSeries) {
    assert!((1..=6).contains(&index));
    let c = &ODD_CHARS[index - 1];
    (theta_sum(c, nmax, Some(1)), theta_sum(c, nmax, Some(2)))
}

/// chi5 = -2^{-6} prod_{i=1}^{10} theta_i; scalar weight-5 form whose lowest
/// slice is (Q12^2 - Q12^{-2}) Q1^4 Q2^4. Requires N >= 4 to be nonzero.
pub fn chi5(nmax: i64) -> FourierSeries {
    assert!(nmax >= 4);
    let mut prod = FourierSeries::constant(GaussRat::from_frac(-1, 64), nmax);
    for i in 1..=10 {
        prod = prod.mul(&even_theta(i, nmax)).expect("same box");
    }
    prod
}

/// The analytic Pluecker form G_a wedge G_b = G_{a1}G_{b2} - G_{a2}G_{b1}.
pub fn pluecker_tilde(a: usize, b: usize, nmax: i64) -> Result<FourierSeries, ThetaError> {
    assert!((1..=6).contains(&a) && (1..=6).contains(&b));
    if a == b {
        return Err(ThetaError::IdenticalIndices);
    }
    let ga = gradient(a, nmax);
    let gb = gradient(b, nmax);
    let lhs = ga.0.mul(&gb.1).expect("same box");
    let rhs = ga.1.mul(&gb.0).expect("same box");
    Ok(lhs.sub(&rhs).expect("same box"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_split() {
        assert!(EVEN_CHARS.iter().all(|c| c.parity() == Parity::Even));
        assert!(ODD_CHARS.iter().all(|c| c.parity() == Parity::Odd));
    }

    #[test]
    fn even_theta_one() {
        let t = even_theta(1, 8);
        assert_eq!(t.coefficient(0, 0, 0), GaussRat::from_int(1));
        assert_eq!(t.coefficient(4, 0, 0), GaussRat::from_int(2));
        assert_eq!(t.coefficient(0, 0, 4), GaussRat::from_int(2));
        assert_eq!(t.coefficient(4, 4, 4), GaussRat::from_int(2));
        assert_eq!(t.coefficient(4, -4, 4), GaussRat::from_int(2));
    }

    #[test]
    fn even_theta_five_leading() {
        // mu = (0,1): lowest term comes from n1 = 0, n2 in {0, -1}
        let t = even_theta(5, 8);
        assert!(t.coefficient(0, 0, 0).is_zero());
        assert_eq!(t.coefficient(0, 0, 1), GaussRat::from_int(2));
    }

    #[test]
    fn theta_terms_on_quadric() {
        for i in 1..=10 {
            for (e1, e12, e2, _) in even_theta(i, 12).terms() {
                assert_eq!(e12 * e12, e1 * e2);
            }
        }
    }

    #[test]
    fn gradient_one() {
        let (g1, g2) = gradient(1, 8);
        // second component starts 2i*Q2
        assert_eq!(
            g2.coefficient(0, 0, 1),
            &GaussRat::from_int(2) * &GaussRat::i()
        );
        // the factor 2n1 + mu1 kills the n1 = 0 stratum of the first component
        assert!(g1.terms().all(|(e1, _, _, _)| e1 > 0));
        assert!(g1.is_i_integral() && g2.is_i_integral());
    }

    #[test]
    fn chi5_lowest_slice() {
        let c = chi5(4);
        assert_eq!(c.coefficient(4, 2, 4), GaussRat::from_int(1));
        assert_eq!(c.coefficient(4, -2, 4), GaussRat::from_int(-1));
        assert_eq!(c.num_terms(), 2);
        assert!(chi5(12).is_integral());
    }

    #[test]
    fn chi5_square_lowest_slice() {
        let c = chi5(8);
        let sq = c.mul(&c).unwrap();
        assert_eq!(sq.coefficient(8, 4, 8), GaussRat::from_int(1));
        assert_eq!(sq.coefficient(8, 0, 8), GaussRat::from_int(-2));
        assert_eq!(sq.coefficient(8, -4, 8), GaussRat::from_int(1));
    }

    #[test]
    fn ptilde_antisymmetric_and_identical_rejected() {
        let p12 = pluecker_tilde(1, 2, 8).unwrap();
        let p21 = pluecker_tilde(2, 1, 8).unwrap();
        assert_eq!(p12, p21.neg());
        assert_eq!(pluecker_tilde(3, 3, 8), Err(ThetaError::IdenticalIndices));
    }

    #[test]
    fn ptilde_12_is_four_theta_product() {
        let p = pluecker_tilde(1, 2, 16).unwrap();
        let mut q = FourierSeries::constant(GaussRat::one(), 16);
        for i in [7, 8, 9, 10] {
            q = q.mul(&even_theta(i, 16)).unwrap();
        }
        assert_eq!(p, q);
    }

    #[test]
    fn joining_evens_for_pair_12() {
        assert_eq!(evens_joining(1, 2), [7, 8, 9, 10]);
    }

    #[test]
    fn partition_table_covers() {
        let t = char_partition_table();
        for p in &t {
            let mut all: Vec<u8> = p
                .triples
                .0
                .iter()
                .chain(p.triples.1.iter())
                .copied()
                .collect();
            all.sort_unstable();
            assert_eq!(all, vec![1, 2, 3, 4, 5, 6]);
        }
        assert_eq!(t[6], Partition6::new([1, 2, 3], [4, 5, 6]));
        assert_eq!(even_index_of_partition(&t[0]), 1);
    }

    #[test]
    fn ptilde_matches_theta_quadruple_with_sign() {
        for a in 1..=6u8 {
            for b in (a + 1)..=6u8 {
                let p = pluecker_tilde(a as usize, b as usize, 12).unwrap();
                let mut q =
                    FourierSeries::constant(GaussRat::from_int(ptilde_theta_sign(a, b)), 12);
                for i in evens_joining(a, b) {
                    q = q.mul(&even_theta(i, 12)).unwrap();
                }
                assert_eq!(p, q, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn ptilde_pluecker_relation() {
        // p13 p24 - p14 p23 = p12 p34 carried over to the analytic side
        let n = 12;
        let p = |a, b| pluecker_tilde(a, b, n).unwrap();
        let lhs = p(1, 3)
            .mul(&p(2, 4))
            .unwrap()
            .sub(&p(1, 4).mul(&p(2, 3)).unwrap())
            .unwrap();
        let rhs = p(1, 2).mul(&p(3, 4)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn semipositivity_of_products() {
        let p = pluecker_tilde(2, 5, 12).unwrap();
        assert!(p.semipositive());
        assert!(chi5(8).semipositive());
    }
}
