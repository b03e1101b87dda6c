//! `Ext^1_Z` of finitely generated abelian groups, classes of extensions,
//! the induced maps, and orbit decisions under automorphisms of the ends.
//!
//! For `A = Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` the group `Ext(A, B)` is presented as
//! `B/d_1 B ⊕ ... ⊕ B/d_k B`, one block per torsion generator of `A`. An
//! extension `0 -> B -> G -> A -> 0` is sent to the block vector
//! `(b_1, ..., b_k)` where `d_i g_i = ι(b_i)` for any lift `g_i` of the `i`-th
//! torsion generator. With this convention `0 -> Z -(m)-> Z -> Z/m -> 0` has
//! class `+1`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_exact_pair, FgAbelianGroup, GroupHom, Presentation};
use crate::matrix::{json_int, IntMatrix};
use crate::snf::IntSolver;

/// Default cap on the number of orbit elements visited.
pub const DEFAULT_ORBIT_BOUND: usize = 1_000_000;

/// `Ext^1(left, right)` with its block presentation.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    left: FgAbelianGroup,
    right: FgAbelianGroup,
    presentation: Presentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtElement {
    pub group: FgAbelianGroup,
    #[serde(with = "json_int::vec")]
    pub coords: Vec<BigInt>,
}

/// Tri-state answer of a bounded decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl ExtGroup {
    pub fn new(left: &FgAbelianGroup, right: &FgAbelianGroup) -> Self {
        let nb = right.num_generators();
        let rb = right.relation_matrix();
        let blocks: Vec<IntMatrix> = left
            .torsion()
            .iter()
            .map(|d| rb.hstack(&IntMatrix::identity(nb).scale(d)))
            .collect();
        let relations = if blocks.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::block_diag(&blocks)
        };
        ExtGroup {
            left: left.clone(),
            right: right.clone(),
            presentation: Presentation::new(&relations),
        }
    }

    /// The `A` of `Ext(A, B)`.
    pub fn left(&self) -> &FgAbelianGroup {
        &self.left
    }

    /// The `B` of `Ext(A, B)`.
    pub fn right(&self) -> &FgAbelianGroup {
        &self.right
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.presentation.group
    }

    fn blocks(&self) -> usize {
        self.left.torsion().len()
    }

    /// Element whose block vector is `raw` (length `k * gens(B)`).
    pub fn element_from_blocks(&self, raw: &[BigInt]) -> ExtElement {
        ExtElement {
            group: self.group().clone(),
            coords: self.presentation.canonical(raw),
        }
    }

    /// Block-vector representative of an element.
    pub fn blocks_of(&self, x: &ExtElement) -> Vec<BigInt> {
        self.presentation.from_canon.mul_vec(&x.coords)
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            group: self.group().clone(),
            coords: self.group().zero_element(),
        }
    }

    /// Canonical generator `j` of the Ext group.
    pub fn generator(&self, j: usize) -> ExtElement {
        let mut coords = self.group().zero_element();
        coords[j] = BigInt::one();
        ExtElement {
            group: self.group().clone(),
            coords: self.group().reduced(&coords),
        }
    }

    fn check_element(&self, x: &ExtElement) -> Result<()> {
        if &x.group != self.group() {
            return Err(Error::GroupMismatch(format!(
                "element of {} used in Ext group {}",
                x.group,
                self.group()
            )));
        }
        Ok(())
    }

    fn map_from_raw(&self, source: &ExtGroup, raw: &IntMatrix) -> Result<GroupHom> {
        let m = &(&self.presentation.to_canon * raw) * &source.presentation.from_canon;
        GroupHom::new(source.group().clone(), self.group().clone(), m)
    }

    /// Map `Ext(A, B1) -> Ext(A, B2)` induced by `beta: B1 -> B2`; `self`
    /// is the source and `target` the destination.
    pub fn pushforward(&self, target: &ExtGroup, beta: &GroupHom) -> Result<GroupHom> {
        if self.left != target.left
            || beta.domain() != &self.right
            || beta.codomain() != &target.right
        {
            return Err(Error::GroupMismatch(
                "pushforward between incompatible Ext groups".into(),
            ));
        }
        let raw = if self.blocks() == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::block_diag(&vec![beta.matrix().clone(); self.blocks()])
        };
        target.map_from_raw(self, &raw)
    }

    /// Map `Ext(A2, B) -> Ext(A1, B)` induced by `alpha: A1 -> A2`; `self`
    /// is `Ext(A2, B)` and `target` is `Ext(A1, B)`.
    pub fn pullback(&self, target: &ExtGroup, alpha: &GroupHom) -> Result<GroupHom> {
        if self.right != target.right
            || alpha.domain() != &target.left
            || alpha.codomain() != &self.left
        {
            return Err(Error::GroupMismatch(
                "pullback between incompatible Ext groups".into(),
            ));
        }
        let nb = self.right.num_generators();
        let a1 = &target.left;
        let a2 = &self.left;
        let mut raw = IntMatrix::zeros(a1.torsion().len() * nb, a2.torsion().len() * nb);
        for (i, di) in a1.torsion().iter().enumerate() {
            let col = a1.free_rank() + i;
            for (j, dj) in a2.torsion().iter().enumerate() {
                let row = a2.free_rank() + j;
                let scaled = di * &alpha.matrix()[(row, col)];
                let (coef, rem) = scaled.div_rem(dj);
                if !rem.is_zero() {
                    return Err(Error::Internal("pullback coefficient not integral".into()));
                }
                for t in 0..nb {
                    raw[(i * nb + t, j * nb + t)] = coef.clone();
                }
            }
        }
        target.map_from_raw(self, &raw)
    }
}

/// `Ext^1_Z(A, B)` in canonical form.
pub fn ext1(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    ExtGroup::new(a, b).group().clone()
}

/// Class in `Ext(A, B)` of the exact sequence `0 -> B -(incl)-> G -(proj)-> A -> 0`.
pub fn extension_class(incl: &GroupHom, proj: &GroupHom) -> Result<ExtElement> {
    let b = incl.domain();
    let g = incl.codomain();
    let a = proj.codomain();
    if !is_exact_pair(incl, proj)? {
        return Err(Error::NotExact(
            "image of the inclusion is not the kernel of the projection".into(),
        ));
    }
    if !incl.is_injective() {
        return Err(Error::NotExact("first map is not injective".into()));
    }
    if !proj.is_surjective() {
        return Err(Error::NotExact("second map is not surjective".into()));
    }
    let ext = ExtGroup::new(a, b);
    let ng = g.num_generators();
    let nb = b.num_generators();
    let lift = IntSolver::new(&proj.matrix().hstack(&a.relation_matrix()));
    let back = IntSolver::new(&incl.matrix().hstack(&g.relation_matrix()));
    let mut raw = Vec::with_capacity(a.torsion().len() * nb);
    for (i, d) in a.torsion().iter().enumerate() {
        let mut e = a.zero_element();
        e[a.free_rank() + i] = BigInt::one();
        let sol = lift
            .solve(&e)
            .ok_or_else(|| Error::Internal("surjection without a lift".into()))?;
        let dg: Vec<BigInt> = sol[..ng].iter().map(|x| x * d).collect();
        let sol = back
            .solve(&dg)
            .ok_or_else(|| Error::Internal("d * lift does not come from the kernel".into()))?;
        raw.extend(sol[..nb].iter().cloned());
    }
    Ok(ext.element_from_blocks(&raw))
}

/// `Ext(A, B1) -> Ext(A, B2)` induced by `beta: B1 -> B2`.
pub fn ext_pushforward(a: &FgAbelianGroup, beta: &GroupHom) -> Result<GroupHom> {
    let source = ExtGroup::new(a, beta.domain());
    let target = ExtGroup::new(a, beta.codomain());
    source.pushforward(&target, beta)
}

/// `Ext(A2, B) -> Ext(A1, B)` induced by `alpha: A1 -> A2`.
pub fn ext_pullback(alpha: &GroupHom, b: &FgAbelianGroup) -> Result<GroupHom> {
    let source = ExtGroup::new(alpha.codomain(), b);
    let target = ExtGroup::new(alpha.domain(), b);
    source.pullback(&target, alpha)
}

/// Result of an orbit search: `target = beta_* alpha^* start`.
#[derive(Clone, Debug)]
pub(crate) enum OrbitOutcome {
    Found { beta: GroupHom, alpha: GroupHom },
    NotFound,
    Exhausted,
}

fn check_automorphisms(g: &FgAbelianGroup, gens: &[GroupHom], side: &str) -> Result<()> {
    for h in gens {
        if h.domain() != g || h.codomain() != g || !h.is_isomorphism() {
            return Err(Error::NotAutomorphism(format!(
                "{side} generator {h:?} is not an automorphism of {g}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Step {
    Push(usize),
    Pull(usize),
}

pub(crate) fn orbit_search(
    ext: &ExtGroup,
    start: &ExtElement,
    target: &ExtElement,
    aut_left: &[GroupHom],
    aut_right: &[GroupHom],
    bound: usize,
) -> Result<OrbitOutcome> {
    ext.check_element(start)?;
    ext.check_element(target)?;
    check_automorphisms(ext.left(), aut_left, "left")?;
    check_automorphisms(ext.right(), aut_right, "right")?;
    let pushes = aut_right
        .iter()
        .map(|b| ext.pushforward(ext, b))
        .collect::<Result<Vec<_>>>()?;
    let pulls = aut_left
        .iter()
        .map(|a| ext.pullback(ext, a))
        .collect::<Result<Vec<_>>>()?;

    let mut parent: HashMap<Vec<BigInt>, Option<(Vec<BigInt>, Step)>> = HashMap::new();
    parent.insert(start.coords.clone(), None);
    let mut queue = VecDeque::from([start.coords.clone()]);
    let mut found = start.coords == target.coords;
    'bfs: while let Some(x) = queue.pop_front() {
        if found {
            break;
        }
        let moves = pushes
            .iter()
            .enumerate()
            .map(|(k, m)| (m, Step::Push(k)))
            .chain(pulls.iter().enumerate().map(|(k, m)| (m, Step::Pull(k))));
        for (map, step) in moves {
            let y = map.apply(&x);
            if parent.contains_key(&y) {
                continue;
            }
            if parent.len() >= bound {
                return Ok(OrbitOutcome::Exhausted);
            }
            parent.insert(y.clone(), Some((x.clone(), step)));
            if y == target.coords {
                found = true;
                break 'bfs;
            }
            queue.push_back(y);
        }
    }
    if !found {
        return Ok(OrbitOutcome::NotFound);
    }
    let mut steps = Vec::new();
    let mut cur = target.coords.clone();
    while let Some(Some((prev, step))) = parent.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    let mut beta = GroupHom::identity(ext.right());
    let mut alpha = GroupHom::identity(ext.left());
    for step in steps {
        match step {
            Step::Push(k) => beta = aut_right[k].compose(&beta)?,
            Step::Pull(k) => alpha = alpha.compose(&aut_left[k])?,
        }
    }
    Ok(OrbitOutcome::Found { beta, alpha })
}

/// Whether `x2` lies in the orbit of `x1` under the action of the groups
/// generated by `aut_left` (automorphisms of `A`, acting by pullback) and
/// `aut_right` (automorphisms of `B`, acting by pushforward). Returns
/// `Unknown` when more than `bound` orbit elements would be visited.
pub fn aut_orbit_decide(
    ext: &ExtGroup,
    x1: &ExtElement,
    x2: &ExtElement,
    aut_left: &[GroupHom],
    aut_right: &[GroupHom],
    bound: usize,
) -> Result<Decision> {
    Ok(
        match orbit_search(ext, x1, x2, aut_left, aut_right, bound)? {
            OrbitOutcome::Found { .. } => Decision::Yes,
            OrbitOutcome::NotFound => Decision::No,
            OrbitOutcome::Exhausted => Decision::Unknown,
        },
    )
}
