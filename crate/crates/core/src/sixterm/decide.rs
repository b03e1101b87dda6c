//! Isomorphism of six-term invariants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::aut::{full_aut_generators, is_order_isomorphism, match_cones, ConeMatch};
use super::{
    SixTermInvariant, SixTermMorphism, EXPONENTIAL, INDEX, K0_A, K0_B, K1_A, K1_B, MAP_ENDS,
    NODE_NAMES,
};
use crate::error::{Error, Result};
use crate::ext::{
    extension_class, orbit_search, ExtElement, ExtGroup, OrbitOutcome, DEFAULT_ORBIT_BOUND,
};
use crate::group::{generate_group, GroupHom};
use crate::matrix::IntMatrix;
use crate::snf::IntSolver;
use crate::verdict::IsoVerdict;

/// Default cap on candidate pairs `(beta, alpha)` tried per row when an
/// automorphism group is infinite.
pub const DEFAULT_PAIR_BOUND: usize = 10_000;

// cap on the size of a single enumerated automorphism group
const GROUP_LIMIT: usize = 200_000;

/// Decide whether two six-term invariants are isomorphic through maps
/// that preserve the `K0` cones of the ideal and the quotient.
pub fn decide_iso_one_ideal(
    s1: &SixTermInvariant,
    s2: &SixTermInvariant,
) -> Result<IsoVerdict<SixTermMorphism>> {
    decide_iso_one_ideal_bounded(s1, s2, DEFAULT_PAIR_BOUND)
}

pub fn decide_iso_one_ideal_bounded(
    s1: &SixTermInvariant,
    s2: &SixTermInvariant,
    bound: usize,
) -> Result<IsoVerdict<SixTermMorphism>> {
    for (label, s) in [("first", s1), ("second", s2)] {
        let v = s.validate();
        if !v.is_empty() {
            let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(Error::Invalid(format!(
                "{label} invariant: {}",
                list.join("; ")
            )));
        }
    }
    if s1 == s2 {
        return Ok(IsoVerdict::Isomorphic {
            witness: SixTermMorphism::identity(s1),
        });
    }
    for (i, name) in NODE_NAMES.iter().enumerate() {
        if s1.node(i) != s2.node(i) {
            return Ok(IsoVerdict::not_isomorphic(format!(
                "{name} is {} versus {}",
                s1.node(i),
                s2.node(i)
            )));
        }
    }
    // fixed argument order keeps the verdict symmetric
    let key1 = serde_json::to_string(s1).map_err(|e| Error::Internal(e.to_string()))?;
    let key2 = serde_json::to_string(s2).map_err(|e| Error::Internal(e.to_string()))?;
    if key1 <= key2 {
        decide_ordered(s1, s2, bound)
    } else {
        match decide_ordered(s2, s1, bound)? {
            IsoVerdict::Isomorphic { witness } => Ok(IsoVerdict::Isomorphic {
                witness: witness.inverse()?,
            }),
            other => Ok(other),
        }
    }
}

struct RowData {
    solver: EtaSolver,
    base_b: GroupHom,
    gens_b: Vec<GroupHom>,
    base_a: GroupHom,
    gens_a: Vec<GroupHom>,
}

fn decide_ordered(
    s1: &SixTermInvariant,
    s2: &SixTermInvariant,
    bound: usize,
) -> Result<IsoVerdict<SixTermMorphism>> {
    let mut bases = Vec::new();
    for node in [K0_B, K0_A] {
        match match_cones(s1.node(node), s1.cone(node), s2.cone(node))? {
            ConeMatch::Iso { base, gens } => bases.push((base, gens)),
            ConeMatch::Different(why) => {
                return Ok(IsoVerdict::not_isomorphic(format!(
                    "{} cones differ {why}",
                    NODE_NAMES[node]
                )))
            }
            ConeMatch::Unknown(why) => {
                return Ok(IsoVerdict::unknown(format!(
                    "{} cones not comparable {why}",
                    NODE_NAMES[node]
                )))
            }
        }
    }
    let (base_a, gens_a) = bases.pop().expect("two cones");
    let (base_b, gens_b) = bases.pop().expect("two cones");
    let h1 = s1.homs()?;
    let h2 = s2.homs()?;
    let free = |node: usize| {
        let g = s1.node(node);
        (GroupHom::identity(g), full_aut_generators(g))
    };
    let (base_b1, gens_b1) = free(K1_B);
    let (base_a1, gens_a1) = free(K1_A);
    let row0 = RowData {
        solver: EtaSolver::new(&h1[0], &h1[1], &h2[0], &h2[1])?,
        base_b,
        gens_b,
        base_a,
        gens_a,
    };
    let row1 = RowData {
        solver: EtaSolver::new(&h1[3], &h1[4], &h2[3], &h2[4])?,
        base_b: base_b1,
        gens_b: gens_b1,
        base_a: base_a1,
        gens_a: gens_a1,
    };
    let split = [&h1, &h2]
        .iter()
        .all(|h| h[EXPONENTIAL].is_zero() && h[INDEX].is_zero());
    if split {
        decide_split(&h1, &h2, &row0, &row1)
    } else {
        decide_by_enumeration(&h1, &h2, &row0, &row1, bound)
    }
}

enum RowOutcome {
    Found([GroupHom; 3]),
    Settled(IsoVerdict<SixTermMorphism>),
}

/// Both rows are short exact sequences; compare extension classes up to
/// the actions of the order automorphisms of the ends.
fn decide_split(
    h1: &[GroupHom; 6],
    h2: &[GroupHom; 6],
    row0: &RowData,
    row1: &RowData,
) -> Result<IsoVerdict<SixTermMorphism>> {
    let r0 = match solve_row(&h1[0], &h1[1], &h2[0], &h2[1], row0, "K0")? {
        RowOutcome::Found(c) => c,
        RowOutcome::Settled(v) => return Ok(v),
    };
    let r1 = match solve_row(&h1[3], &h1[4], &h2[3], &h2[4], row1, "K1")? {
        RowOutcome::Found(c) => c,
        RowOutcome::Settled(v) => return Ok(v),
    };
    let [beta0, eta0, alpha0] = r0;
    let [beta1, eta1, alpha1] = r1;
    Ok(IsoVerdict::Isomorphic {
        witness: SixTermMorphism {
            beta0,
            eta0,
            alpha0,
            beta1,
            eta1,
            alpha1,
        },
    })
}

fn solve_row(
    f1: &GroupHom,
    g1: &GroupHom,
    f2: &GroupHom,
    g2: &GroupHom,
    row: &RowData,
    label: &str,
) -> Result<RowOutcome> {
    let x1 = extension_class(f1, g1)?;
    let x2 = extension_class(f2, g2)?;
    let ext = ExtGroup::new(g1.codomain(), f1.domain());
    // move x1 along the base isomorphisms: z1 = (psi_A^-1)^* (psi_B)_* x1
    let pushed = ext.pushforward(&ext, &row.base_b)?.apply(&x1.coords);
    let z1 = ext.pullback(&ext, &row.base_a.inverse()?)?.apply(&pushed);
    let z1 = ExtElement {
        group: ext.group().clone(),
        coords: z1,
    };
    match orbit_search(
        &ext,
        &x2,
        &z1,
        &row.gens_a,
        &row.gens_b,
        DEFAULT_ORBIT_BOUND,
    )? {
        OrbitOutcome::Found { beta, alpha } => {
            // z1 = beta_* alpha^* x2, so (beta^-1 psi_B)_* x1 = (alpha psi_A)^* x2
            let b = beta.inverse()?.compose(&row.base_b)?;
            let a = alpha.compose(&row.base_a)?;
            let eta = row.solver.solve(&b, &a).ok_or_else(|| {
                Error::Internal(format!(
                    "{label} row: matching classes without a middle map"
                ))
            })?;
            Ok(RowOutcome::Found([b, eta, a]))
        }
        OrbitOutcome::NotFound => Ok(RowOutcome::Settled(IsoVerdict::not_isomorphic(format!(
            "{label} extension classes lie in different orbits of Ext({}, {})",
            g1.codomain(),
            f1.domain()
        )))),
        OrbitOutcome::Exhausted => Ok(RowOutcome::Settled(IsoVerdict::unknown(format!(
            "{label} extension class orbit exceeds {DEFAULT_ORBIT_BOUND} elements"
        )))),
    }
}

type Triple = (GroupHom, GroupHom, GroupHom);

/// Candidate `(beta, alpha)` pairs of one row, with a flag for whether
/// the list is the complete set.
fn candidate_pairs(row: &RowData, bound: usize) -> Result<(Vec<(GroupHom, GroupHom)>, bool)> {
    let with_inverses = |gens: &[GroupHom]| -> Result<Vec<GroupHom>> {
        let mut out = gens.to_vec();
        for g in gens {
            let inv = g.inverse()?;
            if !out.contains(&inv) {
                out.push(inv);
            }
        }
        Ok(out)
    };
    let (auts_b, done_b) = generate_group(
        row.base_b.codomain(),
        &with_inverses(&row.gens_b)?,
        GROUP_LIMIT,
    );
    let (auts_a, done_a) = generate_group(
        row.base_a.codomain(),
        &with_inverses(&row.gens_a)?,
        GROUP_LIMIT,
    );
    let mut complete = done_b && done_a;
    if complete && auts_b.len() * auts_a.len() > GROUP_LIMIT {
        complete = false;
    }
    let mut out = Vec::new();
    // breadth-first in both factors, so truncation keeps small words
    let total = auts_b.len() + auts_a.len();
    'diag: for level in 0..total {
        for i in 0..=level.min(auts_b.len() - 1) {
            let j = level - i;
            if j >= auts_a.len() {
                continue;
            }
            if !complete && out.len() >= bound {
                break 'diag;
            }
            out.push((
                auts_b[i].compose(&row.base_b)?,
                auts_a[j].compose(&row.base_a)?,
            ));
        }
    }
    let complete = complete && out.len() == auts_b.len() * auts_a.len();
    Ok((out, complete))
}

/// General case: enumerate order automorphisms of the end groups and join
/// the two rows on the connecting maps.
fn decide_by_enumeration(
    h1: &[GroupHom; 6],
    h2: &[GroupHom; 6],
    row0: &RowData,
    row1: &RowData,
    bound: usize,
) -> Result<IsoVerdict<SixTermMorphism>> {
    let (pairs0, done0) = candidate_pairs(row0, bound)?;
    let (pairs1, done1) = candidate_pairs(row1, bound)?;
    // square at the exponential map: beta1 exp1 = exp2 alpha0
    // square at the index map:       beta0 ind1 = ind2 alpha1
    let mut table: HashMap<(IntMatrix, IntMatrix), Triple> = HashMap::new();
    for (beta0, alpha0) in pairs0 {
        if let Some(eta0) = row0.solver.solve(&beta0, &alpha0) {
            let key = (
                h2[EXPONENTIAL].compose(&alpha0)?.matrix().clone(),
                beta0.compose(&h1[INDEX])?.matrix().clone(),
            );
            table.entry(key).or_insert((beta0, eta0, alpha0));
        }
    }
    for (beta1, alpha1) in pairs1 {
        let key = (
            beta1.compose(&h1[EXPONENTIAL])?.matrix().clone(),
            h2[INDEX].compose(&alpha1)?.matrix().clone(),
        );
        let Some((beta0, eta0, alpha0)) = table.get(&key) else {
            continue;
        };
        if let Some(eta1) = row1.solver.solve(&beta1, &alpha1) {
            return Ok(IsoVerdict::Isomorphic {
                witness: SixTermMorphism {
                    beta0: beta0.clone(),
                    eta0: eta0.clone(),
                    alpha0: alpha0.clone(),
                    beta1,
                    eta1,
                    alpha1,
                },
            });
        }
    }
    if done0 && done1 {
        Ok(IsoVerdict::not_isomorphic(
            "no order automorphisms of the end groups extend to an isomorphism of the sequences",
        ))
    } else {
        Ok(IsoVerdict::unknown(format!(
            "automorphism groups are infinite and no isomorphism was found among {bound} candidates per row"
        )))
    }
}

/// Middle maps `eta: E1 -> E2` making both squares of a row commute,
/// for given end maps. The linear system depends only on the row maps,
/// so it is prepared once.
struct EtaSolver {
    f1: GroupHom,
    g1: GroupHom,
    f2: GroupHom,
    solver: IntSolver,
    n1: usize,
    n2: usize,
    rows: usize,
}

impl EtaSolver {
    /// Rows `f_i: B -> E_i`, `g_i: E_i -> A`.
    fn new(f1: &GroupHom, g1: &GroupHom, f2: &GroupHom, g2: &GroupHom) -> Result<Self> {
        let (e1, e2) = (f1.codomain(), f2.codomain());
        let (b, a) = (f1.domain(), g2.codomain());
        if g1.domain() != e1 || g2.domain() != e2 || f2.domain() != b || g1.codomain() != a {
            return Err(Error::GroupMismatch(
                "rows do not share their end groups".into(),
            ));
        }
        let n1 = e1.num_generators();
        let n2 = e2.num_generators();
        let nx = n1 * n2;
        let var = |i: usize, k: usize| i * n1 + k;
        // each equation: coefficients on X, and the modulus absorbed by a slack
        let mut eqs: Vec<(Vec<(usize, BigInt)>, BigInt)> = Vec::new();
        // X F1 = F2 beta in E2
        for i in 0..n2 {
            for j in 0..b.num_generators() {
                let coeffs = (0..n1)
                    .map(|k| (var(i, k), f1.matrix()[(k, j)].clone()))
                    .collect();
                eqs.push((coeffs, e2.generator_order(i)));
            }
        }
        // G2 X = alpha G1 in A
        for i in 0..a.num_generators() {
            for j in 0..n1 {
                let coeffs = (0..n2)
                    .map(|k| (var(k, j), g2.matrix()[(i, k)].clone()))
                    .collect();
                eqs.push((coeffs, a.generator_order(i)));
            }
        }
        // X well defined: ord(e1_j) X[., j] = 0 in E2
        for i in 0..n2 {
            for j in 0..n1 {
                let o = e1.generator_order(j);
                if !o.is_zero() {
                    eqs.push((vec![(var(i, j), o)], e2.generator_order(i)));
                }
            }
        }
        let slacks = eqs.iter().filter(|(_, m)| !m.is_zero()).count();
        let mut system = IntMatrix::zeros(eqs.len(), nx + slacks);
        let mut s = nx;
        for (r, (coeffs, m)) in eqs.iter().enumerate() {
            for (v, c) in coeffs {
                system[(r, *v)] += c;
            }
            if !m.is_zero() {
                system[(r, s)] = m.clone();
                s += 1;
            }
        }
        Ok(EtaSolver {
            f1: f1.clone(),
            g1: g1.clone(),
            f2: f2.clone(),
            solver: IntSolver::new(&system),
            n1,
            n2,
            rows: eqs.len(),
        })
    }

    fn solve(&self, beta: &GroupHom, alpha: &GroupHom) -> Option<GroupHom> {
        let rhs1 = self.f2.matrix() * beta.matrix();
        let rhs2 = alpha.matrix() * self.g1.matrix();
        let mut rhs: Vec<BigInt> = rhs1.entries().to_vec();
        rhs.extend(rhs2.entries().iter().cloned());
        rhs.resize(self.rows, BigInt::zero());
        let sol = self.solver.solve(&rhs)?;
        let x = IntMatrix::from_vec(self.n2, self.n1, sol[..self.n1 * self.n2].to_vec());
        GroupHom::new(self.f1.codomain().clone(), self.f2.codomain().clone(), x).ok()
    }
}

/// Whether `w` is an isomorphism from `s1` to `s2`: every component is an
/// isomorphism, all six squares commute, and the `K0` components of the
/// ideal and quotient preserve the cones.
pub fn verify_witness(s1: &SixTermInvariant, s2: &SixTermInvariant, w: &SixTermMorphism) -> bool {
    if !s1.is_valid() || !s2.is_valid() {
        return false;
    }
    let comps = w.components();
    for (i, c) in comps.iter().enumerate() {
        if c.domain() != s1.node(i) || c.codomain() != s2.node(i) || !c.is_isomorphism() {
            return false;
        }
    }
    let (Ok(h1), Ok(h2)) = (s1.homs(), s2.homs()) else {
        return false;
    };
    for (k, (s, t)) in MAP_ENDS.iter().enumerate() {
        let left = comps[*t].compose(&h1[k]);
        let right = h2[k].compose(comps[*s]);
        match (left, right) {
            (Ok(l), Ok(r)) if l == r => {}
            _ => return false,
        }
    }
    is_order_isomorphism(s1.node(K0_B), s1.cone(K0_B), s2.cone(K0_B), &w.beta0)
        && is_order_isomorphism(s1.node(K0_A), s1.cone(K0_A), s2.cone(K0_A), &w.alpha0)
}
