//! End-to-end acceptance checks for the whole pipeline, one printed
//! pass/fail line per criterion. Each criterion is an independent test; the
//! line is printed only after every assertion in its body has held.

use num::{BigInt, BigRational};
use tautform_core::covariant::{
    dim_graded, linear_form, pair_index, s6_act, space_basis, specialize_form, transvectant,
    Covariant, GenMono, GenericForm, Perm, PAIRS,
};
use tautform_core::divisor::{divisor_to_form, DivisorInput};
use tautform_core::expr::eval_str;
use tautform_core::gauss::GaussRat;
use tautform_core::linalg::kernel;
use tautform_core::nu::{
    nu_eval, nu_eval_combination, nu_eval_genmono, profile_eval, FourierIndex, MeroForm, NuError,
    Profile,
};
use tautform_core::s6::{decompose, isotypic_project, YoungPartition};
use tautform_core::series::{FourierSeries, SeriesError};
use tautform_core::theta::{
    char_partition_table, chi5, even_theta, evens_joining, pluecker_tilde, ptilde_theta_sign,
    Partition6,
};
use tautform_core::valuation::{all_valuations, i5, v_pi};

fn criterion(n: u32, desc: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("PASS [{n:2}/10] {desc}"),
        Err(e) => {
            println!("FAIL [{n:2}/10] {desc}");
            std::panic::resume_unwind(e);
        }
    }
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The six-bracket invariant attached to a partition: the product of the
/// three brackets within each triple.
fn six_p_for(pi: &Partition6) -> GenMono {
    let mut gm = GenMono {
        l_exp: [0; 6],
        p_exp: [0; 15],
    };
    let mark = |tr: &[u8; 3], p_exp: &mut [u8; 15]| {
        p_exp[pair_index(tr[0] as usize, tr[1] as usize)] += 1;
        p_exp[pair_index(tr[0] as usize, tr[2] as usize)] += 1;
        p_exp[pair_index(tr[1] as usize, tr[2] as usize)] += 1;
    };
    mark(&pi.triples.0, &mut gm.p_exp);
    mark(&pi.triples.1, &mut gm.p_exp);
    gm
}

#[test]
fn criterion_01_bracket_theta_quadruples() {
    criterion(1, "every wedge series is its signed theta quadruple (N=16)", || {
        let nmax = 16;
        for &(a, b) in PAIRS.iter() {
            let pt = pluecker_tilde(a, b, nmax).unwrap();
            let mut quad = FourierSeries::constant(
                GaussRat::from_int(ptilde_theta_sign(a as u8, b as u8)),
                nmax,
            );
            for i in evens_joining(a as u8, b as u8) {
                quad = quad.mul(&even_theta(i, nmax)).unwrap();
            }
            assert!(!pt.is_zero(), "wedge series {a}{b} vanishes");
            assert_eq!(pt, quad, "wedge series {a}{b} vs theta quadruple");
        }
        // three-term relation on the wedge series themselves
        let p = |a, b| pluecker_tilde(a, b, nmax).unwrap();
        let lhs = p(1, 3).mul(&p(2, 4)).unwrap();
        let rhs = p(1, 4)
            .mul(&p(2, 3))
            .unwrap()
            .add(&p(1, 2).mul(&p(3, 4)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "three-term wedge relation");
    });
}

#[test]
fn criterion_02_bracket_product_is_chi5_sixth() {
    // The lead of the product sits at (24, 24), so any smaller box is
    // vacuous; N=28 is the smallest box on which the identity has content.
    criterion(2, "product of all fifteen wedge series = -2^36 chi5^6 (N=28)", || {
        let nmax = 28;
        let mut prod = FourierSeries::constant(GaussRat::one(), nmax);
        for &(a, b) in PAIRS.iter() {
            prod = prod.mul(&pluecker_tilde(a, b, nmax).unwrap()).unwrap();
        }
        assert!(!prod.is_zero());
        let rhs = chi5(nmax)
            .pow(6)
            .unwrap()
            .scale(&GaussRat::from_int(-(1i64 << 36)));
        assert_eq!(prod, rhs);
    });
}

#[test]
fn criterion_03_boundary_valuations() {
    criterion(3, "boundary valuation profiles of the key covariants", || {
        // split sextic l1...l6: per-coefficient [2,1,0,-1,0,1,2] everywhere
        let c16 = eval_str("l1*l2*l3*l4*l5*l6").unwrap();
        for r in all_valuations(&c16).unwrap() {
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
        }
        // product of all brackets: valuation 1 along every component
        let inv = i5();
        for r in all_valuations(&inv).unwrap() {
            assert_eq!(r.aggregate, Some(1));
        }
        // six-bracket invariant of a partition: 4 there, 0 elsewhere
        let table = char_partition_table();
        let six = six_p_for(&table[6]).expand();
        for (t, pi) in table.iter().enumerate() {
            let expect = if t == 6 { 4 } else { 0 };
            assert_eq!(v_pi(&six, pi).unwrap().aggregate, Some(expect));
        }
        // degree-2 order-2 quintic covariant: per-coefficient [-1,-2,-1]
        let c22 = eval_str("50*T(T(f5,f5,4), l^2, 1) with f5=l1*l2*l3*l4*l5, l=l6").unwrap();
        for pi in &table {
            assert_eq!(
                v_pi(&c22, pi).unwrap().per_coefficient,
                vec![Some(-1), Some(-2), Some(-1)]
            );
        }
    });
}

#[test]
fn criterion_04_graded_dimensions() {
    criterion(4, "graded dimensions of the covariant spaces", || {
        for (d, b, expect) in [
            (1u32, 0u32, 5usize),
            (2, 0, 15),
            (3, 0, 34),
            (1, 2, 9),
            (1, 4, 5),
            (1, 6, 1),
            (2, 4, 40),
            (2, 6, 29),
            (2, 8, 15),
        ] {
            let sb = space_basis(d, b).unwrap();
            assert_eq!(sb.dim(), expect, "enumerated basis of ({d},{b})");
            assert_eq!(
                dim_graded(d, b).to_string(),
                expect.to_string(),
                "generating function at ({d},{b})"
            );
        }
    });
}

#[test]
fn criterion_05_s6_decompositions() {
    criterion(5, "symmetric-group decompositions of the covariant spaces", || {
        let fmt = |parts: &[(YoungPartition, i64)]| {
            parts
                .iter()
                .map(|(p, m)| {
                    if *m == 1 {
                        format!("s{}", p.label())
                    } else {
                        format!("{m} s{}", p.label())
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        for (d, b, expect) in [
            (1u32, 2u32, "s[4,2]"),
            (2, 4, "s[6] + s[5,1] + 2 s[4,2] + s[3,2,1]"),
            (2, 6, "s[5,1] + s[4,2] + s[4,1,1] + s[3,3]"),
        ] {
            let sb = space_basis(d, b).unwrap();
            let parts = decompose(&sb.covariants).unwrap();
            assert_eq!(fmt(&parts), expect, "decomposition of ({d},{b})");
        }
        // inside the 15-dimensional (2,8) space: the orbit of the
        // antisymmetrized generator spans a 5-dimensional copy of s[5,1]
        let cube = |i, j, k| linear_form(i).mul(&linear_form(j)).mul(&linear_form(k));
        let sq = |i: usize| linear_form(i).pow(2);
        let t2 = |c: &Covariant| transvectant(c, c, 2).unwrap();
        let w = sq(1)
            .mul(&sq(2))
            .mul(&sq(3))
            .mul(&t2(&cube(4, 5, 6)))
            .sub(&sq(4).mul(&sq(5)).mul(&sq(6)).mul(&t2(&cube(1, 2, 3))));
        assert_eq!(w.order, 8);
        let orbit: Vec<Covariant> = Perm::all().iter().map(|s| s6_act(s, &w)).collect();
        let parts = decompose(&orbit).unwrap();
        assert_eq!(fmt(&parts), "s[5,1]", "orbit of the antisymmetric generator");
        assert_eq!(
            parts.iter().map(|(p, m)| m * p.dimension()).sum::<i64>(),
            5
        );
    });
}

#[test]
fn criterion_06_split_sextic_image() {
    criterion(6, "bracket-weighted split sextic reduces to the gradient sextic (N=28)", || {
        // numerator of the image of (prod of brackets) * l1...l6: its fully
        // reduced form is exactly -2^36 times the symmetrized gradient
        // product, by the chi5^6 identity
        let gm = GenMono {
            l_exp: [1; 6],
            p_exp: [1; 15],
        };
        let f = nu_eval_genmono(&gm, 28).unwrap();
        assert_eq!(f.chi5_sixths, 36);
        let red = f.reduce(6).unwrap();
        assert_eq!((red.chi5_sixths, red.nmax()), (0, 4));
        assert_eq!((red.weight_j, red.weight_k.clone()), (6, rat_int(3)));
        let sym6 = nu_eval_genmono(
            &GenMono {
                l_exp: [1; 6],
                p_exp: [0; 15],
            },
            4,
        )
        .unwrap();
        let s = sym6
            .proportional(&red)
            .expect("reduced image proportional to the gradient sextic");
        assert_eq!(s, GaussRat::from_int(-(1i64 << 36)));
        // support: the gradient sextic is semipositive (4nm >= r^2), and its
        // chi5 multiple is strictly cuspidal (4nm > r^2)
        let sym6_16 = nu_eval_genmono(
            &GenMono {
                l_exp: [1; 6],
                p_exp: [0; 15],
            },
            16,
        )
        .unwrap();
        let x5 = chi5(16);
        for c in &sym6_16.components {
            assert!(c.semipositive());
            let cusp = x5.mul(c).unwrap();
            assert!(!cusp.is_zero());
            for (e1, e12, e2, _) in cusp.terms() {
                assert!(e12 * e12 < e1 * e2, "strict support at ({e1},{e12},{e2})");
            }
        }
    });
}

/// The ten reduced forms spanning the weight-(6,4) image of the
/// 10-dimensional irreducible inside the degree-2 order-6 covariants.
fn weight_6_4_family(nmax: i64) -> Vec<MeroForm> {
    let sb = space_basis(2, 6).unwrap();
    let iso = isotypic_project(&sb.covariants, &YoungPartition::new(&[4, 1, 1])).unwrap();
    assert_eq!(iso.len(), 10);
    iso.iter()
        .map(|c| {
            let coords = sb.express(c).expect("projection stays inside the space");
            nu_eval_combination(&sb.monos, &coords, nmax)
                .unwrap()
                .reduce(1)
                .unwrap()
                .mul_chi5_power(1)
        })
        .collect()
}

/// Stack the matching equations sum_i x_i a_i(idx) = sigma * target(idx)
/// and return a kernel vector with sigma != 0, if one exists.
fn match_coefficients(
    family: &[MeroForm],
    targets: &[(FourierIndex, [i64; 7])],
) -> Option<Vec<GaussRat>> {
    let ncols = family.len() + 1;
    let mut rows = Vec::new();
    for (idx, target) in targets {
        let cols: Vec<Vec<GaussRat>> = family
            .iter()
            .map(|f| f.fourier_coefficient(idx).unwrap())
            .collect();
        for j in 0..7 {
            let mut row: Vec<GaussRat> = cols.iter().map(|c| c[j].clone()).collect();
            row.push(GaussRat::from_int(-target[j]));
            rows.push(row);
        }
    }
    kernel(&rows, ncols)
        .into_iter()
        .find(|v| !v[family.len()].is_zero())
}

const A_111: [i64; 7] = [0, 0, 1, 2, 1, 0, 0];
const A_333: [i64; 7] = [-36, -108, 3, 186, 3, -108, -36];

#[test]
fn criterion_07_weight_6_4_coefficients() {
    criterion(7, "a weight-(6,4) combination matches the published coefficients (N=16)", || {
        let family = weight_6_4_family(16);
        for f in &family {
            assert_eq!(f.chi5_sixths, 0);
            assert_eq!((f.weight_j, f.weight_k.clone()), (6, rat_int(4)));
        }
        let sol = match_coefficients(
            &family,
            &[
                (FourierIndex { n: 1, r: 1, m: 1 }, A_111),
                (FourierIndex { n: 3, r: 3, m: 3 }, A_333),
            ],
        )
        .expect("a combination with a nonzero common scalar");
        // the combination itself is a nonzero form of weight (6,4)
        let mut acc: Option<MeroForm> = None;
        for (x, f) in sol.iter().zip(&family) {
            if x.is_zero() {
                continue;
            }
            let t = f.scale(x);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t).unwrap(),
            });
        }
        let g = acc.expect("nontrivial combination");
        assert!(!g.is_zero());
        for c in &g.components {
            assert!(c.semipositive());
        }
        // spot-check the matched coefficient vector directly
        let sigma = sol.last().unwrap();
        let a = g
            .fourier_coefficient(&FourierIndex { n: 1, r: 1, m: 1 })
            .unwrap();
        for (got, want) in a.iter().zip(A_111.iter()) {
            assert_eq!(got, &(sigma * &GaussRat::from_int(*want)));
        }
    });
}

#[test]
#[ignore = "larger box; run with --ignored for the deeper coefficient check"]
fn criterion_07_stretch_deeper_coefficients() {
    // Indices (5,5,5) and (7,9,3) need the box to reach (4*7) + 4 = 32
    // after one reduction step.
    let family = weight_6_4_family(32);
    let a555: [i64; 7] = [0, 0, 10332, 20664, 10332, 0, 0];
    let a793: [i64; 7] = [36, 156, 277, 258, 133, 36, 4];
    let mut targets = vec![
        (FourierIndex { n: 1, r: 1, m: 1 }, A_111),
        (FourierIndex { n: 3, r: 3, m: 3 }, A_333),
        (FourierIndex { n: 5, r: 5, m: 5 }, a555),
        (FourierIndex { n: 7, r: 9, m: 3 }, a793),
    ];
    let sol = match_coefficients(&family, &targets).or_else(|| {
        // the published asymmetric vector may list the components in the
        // opposite order; accept either orientation
        let mut rev = a793;
        rev.reverse();
        targets[3].1 = rev;
        match_coefficients(&family, &targets)
    });
    assert!(sol.is_some(), "all four coefficient vectors with one scalar");
    println!("PASS [stretch] deeper weight-(6,4) coefficients at N=32");
}

#[test]
fn criterion_08_quadric_profile_invariant() {
    criterion(8, "triple-quadric invariant: specialization identity and both series routes", || {
        let q = [
            GenericForm::quadric(1),
            GenericForm::quadric(2),
            GenericForm::quadric(3),
        ];
        let qc: Vec<Covariant> = q.iter().map(|g| g.as_covariant()).collect();
        let t = |i: usize, j: usize| {
            transvectant(&qc[i], &qc[j], 2)
                .unwrap()
                .scale(&GaussRat::from_int(-2))
        };
        let i222 = t(0, 0)
            .mul(&t(1, 1))
            .mul(&t(2, 2))
            .sub(&t(0, 1).mul(&t(0, 2)).mul(&t(1, 2)));
        // q1 -> l1 l2, q2 -> l3 l4, q3 -> l5 l6 turns the invariant into an
        // exact bracket combination
        let mut spec = i222.clone();
        for (g, pair) in q.iter().zip([[1usize, 2], [3, 4], [5, 6]]) {
            spec = specialize_form(&spec, g, &pair).unwrap();
        }
        let table = char_partition_table();
        let find = |tr: [u8; 3]| {
            table
                .iter()
                .position(|pi| pi.triples.0 == tr || pi.triples.1 == tr)
                .unwrap()
        };
        let mut sum = Covariant::zero();
        for tr in [[1u8, 4, 6], [1, 3, 6], [1, 3, 5], [1, 4, 5]] {
            sum = sum.add(&six_p_for(&table[find(tr)]).expand());
        }
        // the overall factor is +2 with the a<b ordering used inside the
        // bracket expansion (each three-index bracket flips sign against the
        // cyclic ordering)
        assert_eq!(spec, sum.scale(&GaussRat::from_int(2)), "bracket identity");
        // both analytic routes land in the one-dimensional weight-2 space
        let via_profile = profile_eval(Profile::Gamma0Two, &i222, 12).unwrap();
        assert_eq!(
            (via_profile.weight_j, via_profile.weight_k.clone(), via_profile.chi5_sixths),
            (0, rat_int(2), 0)
        );
        let via_nu = nu_eval(&spec, 20).unwrap().reduce(2).unwrap();
        assert_eq!(via_nu.nmax(), 12);
        let mut e4 = FourierSeries::zero(12);
        for i in 1..=4 {
            e4 = e4.add(&even_theta(i, 12).pow(4).unwrap()).unwrap();
        }
        let s1 = e4
            .proportional(&via_profile.components[0])
            .expect("profile route spans the weight-2 space");
        let s2 = e4
            .proportional(&via_nu.components[0])
            .expect("substitution route spans the weight-2 space");
        assert!(!s1.is_zero() && !s2.is_zero());
    });
}

#[test]
fn criterion_09_weight_2_11_form() {
    criterion(9, "the quintic covariant yields a holomorphic weight-(2,11) form (N=12)", || {
        let c22 = eval_str("50*T(T(f5,f5,4), l^2, 1) with f5=l1*l2*l3*l4*l5, l=l6").unwrap();
        // invariant under every permutation fixing the distinguished index
        for sigma in Perm::all() {
            if sigma.0[5] != 6 {
                continue;
            }
            assert_eq!(s6_act(&sigma, &c22), c22, "permutation {:?}", sigma.0);
        }
        let f = nu_eval(&c22, 12).unwrap();
        assert_eq!((f.weight_j, f.weight_k.clone(), f.chi5_sixths), (2, rat_int(1), 12));
        // one chi5 division fails: the bare form has a genuine pole
        assert!(matches!(
            f.reduce(1),
            Err(NuError::Series(SeriesError::NotDivisibleInBox(_, _)))
        ));
        // two chi5 multiplications clear it into weight (2,11)
        let holo = f.mul_chi5_power(2);
        assert_eq!((holo.weight_j, holo.weight_k.clone(), holo.chi5_sixths), (2, rat_int(11), 0));
        assert!(!holo.is_zero());
        for c in &holo.components {
            assert!(c.semipositive());
        }
        // the quintic-cover profile computes the same numerator series
        let f5 = GenericForm::quintic().as_covariant();
        let l = GenericForm::linear().as_covariant();
        let generic = transvectant(&transvectant(&f5, &f5, 4).unwrap(), &l.mul(&l), 1)
            .unwrap()
            .scale(&GaussRat::from_int(50));
        let via_profile = profile_eval(Profile::Gamma2W, &generic, 12).unwrap();
        assert_eq!(via_profile.components, f.components);
        assert_eq!(via_profile.chi5_sixths, 12);
    });
}

#[test]
fn criterion_10_property_spot_checks() {
    criterion(10, "deterministic anchors of the randomized property suites", || {
        // semipositive support of every theta-derived series
        for i in 1..=10 {
            assert!(even_theta(i, 12).semipositive());
        }
        assert!(chi5(12).semipositive());
        // bracket-product multiplication shifts every valuation by one
        let c16 = eval_str("l1*l2*l3*l4*l5*l6").unwrap();
        let shifted = i5().mul(&c16);
        for pi in char_partition_table() {
            assert_eq!(
                v_pi(&shifted, &pi).unwrap().aggregate,
                Some(v_pi(&c16, &pi).unwrap().aggregate.unwrap() + 1)
            );
        }
        // substitution is multiplicative
        let a = six_p_for(&char_partition_table()[0]).expand();
        let lhs = nu_eval(&a.mul(&c16), 8).unwrap();
        let rhs = nu_eval(&a, 8)
            .unwrap()
            .mul(&nu_eval(&c16, 8).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // division inverts multiplication on the box
        let x5 = chi5(12);
        let t7 = even_theta(7, 12);
        let q = x5.mul(&t7).unwrap().div(&x5).unwrap();
        assert_eq!(q.grid, t7.restrict(8).grid);
        // divisor calculus: the weight-(2,4) and weight-(6,4) examples
        let fw = divisor_to_form(&DivisorInput {
            c: [1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
            d: [1, 1, 0, 0, 0, 0],
        });
        assert_eq!((fw.j, fw.k.as_str()), (2, "4"));
        assert!(fw.admissible);
        let mut c = [0u32; 10];
        c[6] = 2;
        let fw = divisor_to_form(&DivisorInput {
            c,
            d: [2, 2, 2, 0, 0, 0],
        });
        assert_eq!((fw.j, fw.k.as_str()), (6, "4"));
        assert!(fw.admissible);
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            let expect = if a >= 4 { "2" } else { "1" };
            assert_eq!(fw.r[k], expect, "vanishing order at ({a},{b})");
        }
    });
}
