//! Order automorphism groups of cones, and comparison of cones on a
//! common group.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ConeDescriptor;
use crate::dimgroup::{Rank2Order, StationaryDimensionGroup};
use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupHom};
use crate::matrix::IntMatrix;

/// Generators of the group of automorphisms of `g` preserving `cone`.
pub fn aut_plus_generators(g: &FgAbelianGroup, cone: &ConeDescriptor) -> Result<Vec<GroupHom>> {
    if g.is_trivial() {
        return Ok(vec![GroupHom::identity(g)]);
    }
    match kind(g, cone)? {
        Kind::Full | Kind::Unconstrained => Ok(full_aut_generators(g)),
        Kind::Lattice => Ok(permutation_generators(g.free_rank())),
        Kind::Dense(o) => Ok(vec![GroupHom::new(
            g.clone(),
            g.clone(),
            o.automorphism_generator()?,
        )?]),
        Kind::Other => Err(Error::Unsupported(
            "order automorphisms of a dimension group of size three or more".into(),
        )),
    }
}

/// Whether `phi: g -> g` carries `from` onto `to`. Returns `false` when
/// this cannot be settled exactly.
pub fn is_order_isomorphism(
    g: &FgAbelianGroup,
    from: &ConeDescriptor,
    to: &ConeDescriptor,
    phi: &GroupHom,
) -> bool {
    if phi.domain() != g || phi.codomain() != g || !phi.is_isomorphism() {
        return false;
    }
    if g.is_trivial() {
        return true;
    }
    let (Ok(k1), Ok(k2)) = (kind(g, from), kind(g, to)) else {
        return false;
    };
    match (k1, k2) {
        (Kind::Full | Kind::Unconstrained, Kind::Full | Kind::Unconstrained) => true,
        (Kind::Lattice, Kind::Lattice) => is_permutation(phi.matrix()),
        (Kind::Dense(o1), Kind::Dense(o2)) => o1.is_order_isomorphism(&o2, phi.matrix()),
        (Kind::Other, Kind::Other) => from == to && *phi == GroupHom::identity(g),
        _ => false,
    }
}

pub(crate) enum ConeMatch {
    /// `base` is an order isomorphism, and every order isomorphism is
    /// `a ∘ base` for `a` in the group generated by `gens`.
    Iso {
        base: GroupHom,
        gens: Vec<GroupHom>,
    },
    Different(String),
    Unknown(String),
}

pub(crate) fn match_cones(
    g: &FgAbelianGroup,
    c1: &ConeDescriptor,
    c2: &ConeDescriptor,
) -> Result<ConeMatch> {
    let id = GroupHom::identity(g);
    if g.is_trivial() {
        return Ok(ConeMatch::Iso {
            base: id.clone(),
            gens: vec![id],
        });
    }
    let (k1, k2) = (kind(g, c1)?, kind(g, c2)?);
    let ordered = "a proper positive cone";
    Ok(match (k1, k2) {
        (Kind::Full | Kind::Unconstrained, Kind::Full | Kind::Unconstrained) => ConeMatch::Iso {
            base: id,
            gens: full_aut_generators(g),
        },
        (Kind::Full, _) | (_, Kind::Full) => ConeMatch::Different(format!(
            "on {g}: the whole group as positive cone versus {ordered}"
        )),
        (Kind::Unconstrained, _) | (_, Kind::Unconstrained) => {
            ConeMatch::Unknown(format!("on {g}: an unordered group versus {ordered}"))
        }
        (Kind::Lattice, Kind::Lattice) => ConeMatch::Iso {
            base: id,
            gens: permutation_generators(g.free_rank()),
        },
        (Kind::Lattice, Kind::Dense(_)) | (Kind::Dense(_), Kind::Lattice) => ConeMatch::Different(
            format!("on {g}: a lattice order versus a dense total order"),
        ),
        (Kind::Dense(o1), Kind::Dense(o2)) => match o1.order_isomorphism(&o2)? {
            Some(phi) => ConeMatch::Iso {
                base: GroupHom::new(g.clone(), g.clone(), phi)?,
                gens: vec![GroupHom::new(
                    g.clone(),
                    g.clone(),
                    o2.automorphism_generator()?,
                )?],
            },
            None => ConeMatch::Different(format!(
                "on {g}: slopes {} and {} are not GL(2, Z)-equivalent",
                o1.theta(),
                o2.theta()
            )),
        },
        (Kind::Other, _) | (_, Kind::Other) => ConeMatch::Unknown(format!(
            "on {g}: order isomorphisms of dimension groups of size three or more"
        )),
    })
}

enum Kind {
    Full,
    Unconstrained,
    Lattice,
    Dense(Rank2Order),
    Other,
}

fn kind(g: &FgAbelianGroup, cone: &ConeDescriptor) -> Result<Kind> {
    Ok(match cone {
        ConeDescriptor::AllPositive => Kind::Full,
        ConeDescriptor::Unordered => Kind::Unconstrained,
        ConeDescriptor::StandardFree => {
            if !g.is_torsion_free() {
                return Err(Error::Invalid(format!(
                    "standard cone on {g}, which has torsion"
                )));
            }
            Kind::Lattice
        }
        ConeDescriptor::StationaryDg { matrix } => {
            let dg = StationaryDimensionGroup::new(matrix.clone())?;
            if *g != FgAbelianGroup::free(dg.size()) || !dg.is_unimodular() || !dg.is_primitive() {
                return Err(Error::Invalid(format!(
                    "cone matrix does not give an order on {g}"
                )));
            }
            match dg.size() {
                1 => Kind::Lattice,
                2 => Kind::Dense(Rank2Order::new(&dg)?),
                _ => Kind::Other,
            }
        }
    })
}

fn is_permutation(m: &IntMatrix) -> bool {
    let n = m.rows();
    let one_per_line = |line: Vec<BigInt>| line.iter().filter(|x| x.is_one()).count() == 1;
    m.entries().iter().all(|x| x.is_zero() || x.is_one())
        && (0..n).all(|i| one_per_line(m.row(i).to_vec()))
        && (0..m.cols()).all(|j| one_per_line(m.column(j)))
}

fn elementary(n: usize, row: usize, col: usize, c: &BigInt) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    m[(row, col)] += c;
    m
}

fn permutation_generators(n: usize) -> Vec<GroupHom> {
    let g = FgAbelianGroup::free(n);
    if n <= 1 {
        return vec![GroupHom::identity(&g)];
    }
    (0..n - 1)
        .map(|i| {
            let mut m = IntMatrix::identity(n);
            m.swap_cols(i, i + 1);
            GroupHom::new(g.clone(), g.clone(), m).expect("permutation")
        })
        .collect()
}

/// Generators of `Aut(Z^r + T)` for `T` finite in invariant-factor form.
pub(crate) fn full_aut_generators(g: &FgAbelianGroup) -> Vec<GroupHom> {
    let r = g.free_rank();
    let n = g.num_generators();
    let t = g.torsion();
    let mut mats = Vec::new();
    // GL(r, Z): adjacent transpositions, one sign change, one transvection
    if r == 1 {
        mats.push(IntMatrix::from_diagonal(
            &std::iter::once(BigInt::from(-1))
                .chain(std::iter::repeat_n(BigInt::one(), n - 1))
                .collect::<Vec<_>>(),
        ));
    } else if r >= 2 {
        for i in 0..r - 1 {
            let mut m = IntMatrix::identity(n);
            m.swap_cols(i, i + 1);
            mats.push(m);
        }
        let mut flip = IntMatrix::identity(n);
        flip.negate_col(0);
        mats.push(flip);
        mats.push(elementary(n, 1, 0, &BigInt::one()));
    }
    // free generators may pick up torsion
    for i in 0..r {
        for j in 0..t.len() {
            mats.push(elementary(n, r + j, i, &BigInt::one()));
        }
    }
    // e_j -> e_j + c e_i inside the torsion part, with d_i | c d_j
    for i in 0..t.len() {
        for j in 0..t.len() {
            if i == j {
                continue;
            }
            let c = if t[j].is_multiple_of(&t[i]) {
                BigInt::one()
            } else {
                &t[i] / &t[j]
            };
            mats.push(elementary(n, r + i, r + j, &c));
        }
    }
    for (j, d) in t.iter().enumerate() {
        for u in unit_generators(d) {
            let mut m = IntMatrix::identity(n);
            m[(r + j, r + j)] = u;
            mats.push(m);
        }
    }
    let mut out: Vec<GroupHom> = Vec::new();
    for m in mats {
        let h = GroupHom::new(g.clone(), g.clone(), m).expect("automorphism of the group");
        if h != GroupHom::identity(g) && !out.contains(&h) {
            out.push(h);
        }
    }
    if out.is_empty() {
        out.push(GroupHom::identity(g));
    }
    out
}

/// A generating set of the unit group of `Z/d`.
fn unit_generators(d: &BigInt) -> Vec<BigInt> {
    let Ok(d) = u64::try_from(d) else {
        return Vec::new();
    };
    let mut gens = Vec::new();
    let mut span: HashSet<u64> = HashSet::from([1 % d]);
    for u in 2..d {
        if u.gcd(&d) != 1 || span.contains(&u) {
            continue;
        }
        gens.push(BigInt::from(u));
        let mut frontier: Vec<u64> = span.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = ((x as u128 * u64::try_from(g).unwrap() as u128) % d as u128) as u64;
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}
