//! Character theory of the symmetric group on six letters and isotypic
//! decomposition of covariant spaces under the index action.
//!
//! Characters come from the Murnaghan-Nakayama rule; projectors are the
//! classical (dim/720) sum of character-weighted relabellings. The group
//! acts on the covariant side only (index permutation of the six forms).

use crate::covariant::{s6_act, Covariant, Perm};
use crate::gauss::GaussRat;
use crate::linalg::{InsertOutcome, SpanSolver, SparseVec};
use crate::poly::Monomial;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum S6Error {
    #[error("space is not closed under the index action")]
    NotClosedUnderAction,
}

/// A partition of 6, weakly decreasing parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct YoungPartition(pub Vec<usize>);

impl YoungPartition {
    pub fn new(parts: &[usize]) -> Self {
        let mut p = parts.to_vec();
        p.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(p.iter().sum::<usize>(), 6, "parts must sum to 6");
        assert!(p.iter().all(|&x| x > 0));
        YoungPartition(p)
    }

    /// The 11 partitions of 6, in the conventional order
    /// [6], [5,1], [4,2], [4,1,1], [3,3], [3,2,1], [3,1^3], [2^3],
    /// [2,2,1,1], [2,1^4], [1^6].
    pub fn all() -> Vec<YoungPartition> {
        [
            vec![6],
            vec![5, 1],
            vec![4, 2],
            vec![4, 1, 1],
            vec![3, 3],
            vec![3, 2, 1],
            vec![3, 1, 1, 1],
            vec![2, 2, 2],
            vec![2, 2, 1, 1],
            vec![2, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 1, 1],
        ]
        .into_iter()
        .map(YoungPartition)
        .collect()
    }

    pub fn dimension(&self) -> i64 {
        character(self, &[1, 1, 1, 1, 1, 1])
    }

    /// Conventional label like "[3,2,1]".
    pub fn label(&self) -> String {
        format!(
            "[{}]",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Murnaghan-Nakayama character value of the irreducible labelled by
/// `lambda` on the class of cycle type `rho` (any order of parts).
pub fn character(lambda: &YoungPartition, rho: &[usize]) -> i64 {
    // beta-numbers: strictly decreasing lambda_i + (n - 1 - i) padded to n rows
    let n = 6usize;
    let mut beta: Vec<i64> = (0..n)
        .map(|i| *lambda.0.get(i).unwrap_or(&0) as i64 + (n - 1 - i) as i64)
        .collect();
    let mut rho: Vec<usize> = rho.to_vec();
    rho.sort_unstable_by(|a, b| b.cmp(a));
    mn_recurse(&mut beta, &rho, 0)
}

fn mn_recurse(beta: &mut Vec<i64>, rho: &[usize], level: usize) -> i64 {
    if level == rho.len() {
        return 1;
    }
    let k = rho[level] as i64;
    let mut total = 0;
    for i in 0..beta.len() {
        let b = beta[i];
        let t = b - k;
        if t < 0 || beta.contains(&t) {
            continue;
        }
        // removing the strip: sign = (-1)^{#beta strictly between t and b}
        let between = beta.iter().filter(|&&x| x > t && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beta[i] = t;
        total += sign * mn_recurse(beta, rho, level + 1);
        beta[i] = b;
    }
    total
}

/// Size of the conjugacy class with the given cycle type.
pub fn class_size(rho: &[usize]) -> i64 {
    let mut mult: BTreeMap<usize, i64> = BTreeMap::new();
    for &k in rho {
        *mult.entry(k).or_insert(0) += 1;
    }
    let mut denom = 1i64;
    for (k, m) in mult {
        denom *= (k as i64).pow(m as u32);
        denom *= (1..=m).product::<i64>();
    }
    720 / denom
}

/// The 11 cycle types of S6, each with a concrete representative.
pub fn cycle_types() -> Vec<(Vec<usize>, Perm)> {
    YoungPartition::all()
        .into_iter()
        .map(|p| {
            let mut images = [0usize; 6];
            let mut start = 0usize;
            for &len in &p.0 {
                for offset in 0..len {
                    images[start + offset] = start + (offset + 1) % len + 1;
                }
                start += len;
            }
            (p.0, Perm(images))
        })
        .collect()
}

/// Full 11 x 11 character table with class sizes, checked usable for
/// orthogonality tests.
pub struct CharacterTable {
    pub partitions: Vec<YoungPartition>,
    pub classes: Vec<Vec<usize>>,
    pub sizes: Vec<i64>,
    /// values[row][col] = chi_{partitions[row]}(classes[col])
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new() -> Self {
        let partitions = YoungPartition::all();
        let classes: Vec<Vec<usize>> = partitions.iter().map(|p| p.0.clone()).collect();
        let sizes = classes.iter().map(|c| class_size(c)).collect();
        let values = partitions
            .iter()
            .map(|l| classes.iter().map(|c| character(l, c)).collect())
            .collect();
        CharacterTable {
            partitions,
            classes,
            sizes,
            values,
        }
    }
}

impl Default for CharacterTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Linear-algebra view of a covariant space: fixed column order plus a
/// span solver for membership and coordinates.
struct SpaceView {
    columns: BTreeMap<Monomial, usize>,
    solver: SpanSolver,
}

impl SpaceView {
    fn build(space: &[Covariant]) -> SpaceView {
        let mut columns = BTreeMap::new();
        for c in space {
            for m in c.poly.terms.keys() {
                let next = columns.len();
                columns.entry(*m).or_insert(next);
            }
        }
        let mut solver = SpanSolver::new();
        for c in space {
            let mut v: SparseVec = c
                .poly
                .terms
                .iter()
                .map(|(m, coef)| (columns[m], coef.clone()))
                .collect();
            v.sort_by_key(|(i, _)| *i);
            solver.insert(&v);
        }
        SpaceView { columns, solver }
    }

    fn vectorize(&self, c: &Covariant) -> Option<SparseVec> {
        let mut v = SparseVec::new();
        for (m, coef) in &c.poly.terms {
            v.push((*self.columns.get(m)?, coef.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    fn contains(&self, c: &Covariant) -> bool {
        match self.vectorize(c) {
            Some(v) => self.solver.contains(&v),
            None => false,
        }
    }
}

/// Check closure of the span under the action; it suffices to test a
/// generating set of the group on a spanning set of the space.
fn check_closed(space: &[Covariant], view: &SpaceView) -> Result<(), S6Error> {
    let generators = [Perm([2, 1, 3, 4, 5, 6]), Perm([2, 3, 4, 5, 6, 1])];
    for c in space {
        for g in &generators {
            if !view.contains(&s6_act(g, c)) {
                return Err(S6Error::NotClosedUnderAction);
            }
        }
    }
    Ok(())
}

/// Basis of the lambda-isotypic component of the span of `space`.
pub fn isotypic_project(
    space: &[Covariant],
    lambda: &YoungPartition,
) -> Result<Vec<Covariant>, S6Error> {
    let view = SpaceView::build(space);
    check_closed(space, &view)?;
    let dim = lambda.dimension();
    let perms = Perm::all();
    // character value per cycle type, looked up by sorted type
    let mut chi: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (t, _) in cycle_types() {
        chi.insert(t.clone(), character(lambda, &t));
    }
    let mut out: Vec<Covariant> = Vec::new();
    let mut solver = SpanSolver::new();
    for c in space {
        let mut acc = Covariant::zero();
        for sigma in &perms {
            let x = chi[&sigma.cycle_type()];
            if x == 0 {
                continue;
            }
            acc = acc.add(&s6_act(sigma, c).scale(&GaussRat::from_int(x)));
        }
        if acc.is_zero() {
            continue;
        }
        let acc = acc.scale(&GaussRat::from_frac(dim, 720));
        let v = view
            .vectorize(&acc)
            .expect("projection stays inside the space");
        if let InsertOutcome::NewPivot(_) = solver.insert(&v) {
            out.push(acc);
        }
    }
    Ok(out)
}

/// Multiplicity of each irreducible in the span of `space`, by averaging
/// the trace of one representative per conjugacy class against characters.
pub fn decompose(space: &[Covariant]) -> Result<Vec<(YoungPartition, i64)>, S6Error> {
    let view = SpaceView::build(space);
    check_closed(space, &view)?;
    // independent subset as the working basis
    let mut basis: Vec<&Covariant> = Vec::new();
    let mut solver = SpanSolver::new();
    for c in space {
        let v = view.vectorize(c).unwrap();
        if let InsertOutcome::NewPivot(_) = solver.insert(&v) {
            basis.push(c);
        }
    }
    // trace of the action per cycle type
    let mut traces: Vec<(Vec<usize>, GaussRat)> = Vec::new();
    for (t, rep) in cycle_types() {
        let mut tr = GaussRat::zero();
        for (i, c) in basis.iter().enumerate() {
            let image = s6_act(&rep, c);
            let v = view
                .vectorize(&image)
                .ok_or(S6Error::NotClosedUnderAction)?;
            let coords = solver
                .coordinates(&v)
                .ok_or(S6Error::NotClosedUnderAction)?;
            tr += &coords[i];
        }
        traces.push((t, tr));
    }
    let mut out = Vec::new();
    for lambda in YoungPartition::all() {
        let mut m = GaussRat::zero();
        for (t, tr) in &traces {
            let w = GaussRat::from_int(class_size(t) * character(&lambda, t));
            m += &(&w * tr);
        }
        let m = &m * &GaussRat::from_frac(1, 720);
        assert!(m.is_real() && m.is_integral(), "multiplicity must be integral");
        let mult: i64 = {
            use num::ToPrimitive;
            m.re.to_integer().to_i64().expect("small multiplicity")
        };
        if mult != 0 {
            out.push((lambda, mult));
        }
    }
    Ok(out)
}

/// JSON-facing decomposition report.
#[derive(Serialize)]
pub struct DecompositionReport {
    pub entries: Vec<DecompositionEntry>,
    pub total_dimension: i64,
}

#[derive(Serialize)]
pub struct DecompositionEntry {
    pub partition: String,
    pub multiplicity: i64,
    pub dimension: i64,
}

pub fn decomposition_report(parts: &[(YoungPartition, i64)]) -> DecompositionReport {
    let entries: Vec<DecompositionEntry> = parts
        .iter()
        .map(|(p, m)| DecompositionEntry {
            partition: p.label(),
            multiplicity: *m,
            dimension: p.dimension(),
        })
        .collect();
    let total = parts.iter().map(|(p, m)| m * p.dimension()).sum();
    DecompositionReport {
        entries,
        total_dimension: total,
    }
}
