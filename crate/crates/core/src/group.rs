//! Finitely generated abelian groups in canonical form and homomorphisms
//! between them.
//!
//! Every group is `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
//! Elements are integer vectors against the canonical generators, free
//! generators first and then the torsion generators in increasing order.
//! Torsion coordinates are kept reduced to `0 <= x < d_i`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{json_int, modulo, IntMatrix};
use crate::snf::{integer_kernel, snf, IntSolver};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FgAbelianGroup {
    free_rank: usize,
    #[serde(with = "json_int::vec")]
    torsion: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawGroup {
    #[serde(default)]
    free_rank: usize,
    #[serde(default, with = "json_int::vec")]
    torsion: Vec<BigInt>,
}

impl TryFrom<RawGroup> for FgAbelianGroup {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        FgAbelianGroup::new(raw.free_rank, raw.torsion)
    }
}

impl FgAbelianGroup {
    /// Validating constructor: the torsion list must already be a
    /// divisibility chain of factors `>= 2`.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if let Some(d) = torsion.iter().find(|d| **d < two) {
            return Err(Error::Invalid(format!("invariant factor {d} is not >= 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Invalid(format!(
                "invariant factors {} and {} do not form a divisibility chain",
                w[0], w[1]
            )));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    /// Canonical form of `Z^free ⊕ ⊕ Z/n_i` for arbitrary moduli `n_i`
    /// (`0` means `Z`, `1` is dropped).
    pub fn from_cyclic_factors(free_rank: usize, moduli: &[BigInt]) -> Self {
        let mut diag = vec![BigInt::zero(); free_rank];
        diag.extend(moduli.iter().map(|m| m.abs()));
        group_from_matrix(&IntMatrix::from_diagonal(&diag))
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        Self::from_cyclic_factors(0, &[BigInt::from(n)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of canonical generator `j`; zero for a free generator.
    pub fn generator_order(&self, j: usize) -> BigInt {
        if j < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[j - self.free_rank].clone()
        }
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Diagonal relation matrix: the group is `Z^n / im(R)`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let diag: Vec<BigInt> = (0..self.num_generators())
            .map(|j| self.generator_order(j))
            .collect();
        IntMatrix::from_diagonal(&diag)
    }

    pub fn reduce(&self, v: &mut [BigInt]) {
        assert_eq!(v.len(), self.num_generators(), "element has wrong length");
        for (k, d) in self.torsion.iter().enumerate() {
            let x = &mut v[self.free_rank + k];
            *x = modulo(x, d);
        }
    }

    pub fn reduced(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduced(v).iter().all(Zero::is_zero)
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_generators()]
    }

    /// Reduce every column of a matrix whose rows are indexed by this
    /// group's generators.
    pub fn reduce_columns(&self, m: &mut IntMatrix) {
        assert_eq!(m.rows(), self.num_generators(), "row count mismatch");
        for (k, d) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            for j in 0..m.cols() {
                m[(i, j)] = modulo(&m[(i, j)], d);
            }
        }
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut moduli = self.torsion.clone();
        moduli.extend(other.torsion.iter().cloned());
        Self::from_cyclic_factors(self.free_rank + other.free_rank, &moduli)
    }

    /// All elements of a finite group, in lexicographic order of reduced
    /// coordinates. `None` for infinite groups or when there are more than
    /// `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut x = BigInt::zero();
                while &x < d {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    next.push(p);
                    x += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

/// A presented group `Z^n / im(R)` together with its canonical form.
///
/// `to_canon` maps raw coordinates to canonical coordinates (rows reduced
/// modulo the torsion orders); `from_canon` sends canonical generator `j` to
/// a raw representative. `to_canon * from_canon` is the identity on the
/// canonical group.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FgAbelianGroup,
    pub to_canon: IntMatrix,
    pub from_canon: IntMatrix,
}

impl Presentation {
    pub fn new(relations: &IntMatrix) -> Self {
        let n = relations.rows();
        let s = snf(relations);
        let diag = s.diagonal();
        let mut free_idx: Vec<usize> = (s.rank()..n).collect();
        let mut torsion_idx = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in diag.iter().enumerate().take(s.rank()) {
            if !d.is_one() {
                torsion_idx.push(i);
                torsion.push(d.clone());
            }
        }
        let free_rank = free_idx.len();
        free_idx.extend(torsion_idx);
        let group = FgAbelianGroup { free_rank, torsion };
        let mut to_canon = s.u.select_rows(&free_idx);
        group.reduce_columns(&mut to_canon);
        let from_canon = s.u_inverse().select_cols(&free_idx);
        Presentation {
            group,
            to_canon,
            from_canon,
        }
    }

    pub fn raw_generators(&self) -> usize {
        self.to_canon.cols()
    }

    /// Canonical coordinates of a raw vector.
    pub fn canonical(&self, raw: &[BigInt]) -> Vec<BigInt> {
        self.group.reduced(&self.to_canon.mul_vec(raw))
    }

    /// Replace the canonical basis of a torsion-free presentation by the
    /// basis whose `j`-th element has canonical coordinates `basis[:, j]`.
    pub fn rebase(&self, basis: &IntMatrix) -> Result<Presentation> {
        if !self.group.is_torsion_free() {
            return Err(Error::Invalid("rebase needs a torsion-free group".into()));
        }
        let n = self.group.free_rank();
        if basis.shape() != (n, n) || !basis.determinant().abs().is_one() {
            return Err(Error::Invalid("new basis is not unimodular".into()));
        }
        let inv = inverse_unimodular(basis)?;
        Ok(Presentation {
            group: self.group.clone(),
            to_canon: &inv * &self.to_canon,
            from_canon: &self.from_canon * basis,
        })
    }
}

/// Inverse of a square unimodular integer matrix.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let s = snf(m);
    if s.rank() != m.rows() || s.invariant_factors().iter().any(|d| !d.is_one()) {
        return Err(Error::Invalid("matrix is not unimodular".into()));
    }
    // U M V = I  =>  M^-1 = V U
    Ok(&s.v * &s.u)
}

/// Canonical form of `coker(M : Z^cols -> Z^rows)`.
pub fn group_from_matrix(m: &IntMatrix) -> FgAbelianGroup {
    Presentation::new(m).group
}

/// Homomorphism between canonical groups, as a matrix acting on column
/// vectors of canonical coordinates. Rows of the matrix are kept reduced
/// modulo the codomain's torsion orders.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if matrix.shape() != (codomain.num_generators(), domain.num_generators()) {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                domain,
                codomain,
                codomain.num_generators(),
                domain.num_generators()
            )));
        }
        let mut matrix = matrix;
        codomain.reduce_columns(&mut matrix);
        for (k, d) in domain.torsion().iter().enumerate() {
            let j = domain.free_rank() + k;
            let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * d).collect();
            if !codomain.is_zero_element(&image) {
                return Err(Error::IllDefined(format!(
                    "generator {j} of order {d} in {domain} maps to an element of {codomain} not killed by {d}"
                )));
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn from_rows(
        domain: &FgAbelianGroup,
        codomain: &FgAbelianGroup,
        rows: &[Vec<i64>],
    ) -> Result<Self> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, domain.num_generators())
        } else {
            IntMatrix::from_rows(rows)
        };
        GroupHom::new(domain.clone(), codomain.clone(), m)
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntMatrix::identity(g.num_generators()),
        }
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.num_generators(), domain.num_generators()),
        }
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.codomain.reduced(&self.matrix.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.codomain != self.domain {
            return Err(Error::GroupMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        let mut m = &self.matrix * &inner.matrix;
        self.codomain.reduce_columns(&mut m);
        Ok(GroupHom {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        })
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::GroupMismatch(
                "sum of homomorphisms with different ends".into(),
            ));
        }
        let mut m = self.matrix.add(&other.matrix);
        self.codomain.reduce_columns(&mut m);
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        })
    }

    pub fn neg(&self) -> GroupHom {
        let mut m = self.matrix.neg();
        self.codomain.reduce_columns(&mut m);
        GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        }
    }

    /// Kernel as a canonical group together with its inclusion.
    pub fn kernel(&self) -> (FgAbelianGroup, GroupHom) {
        let g = self.domain.num_generators();
        let system = self.matrix.hstack(&self.codomain.relation_matrix());
        let basis = integer_kernel(&system);
        let top: Vec<usize> = (0..g).collect();
        let spanning = basis.select_rows(&top);
        subgroup_generated(&self.domain, &spanning)
    }

    /// Cokernel as a canonical group together with the projection.
    pub fn cokernel(&self) -> (FgAbelianGroup, GroupHom) {
        let rel = self.codomain.relation_matrix().hstack(&self.matrix);
        let p = Presentation::new(&rel);
        let proj = GroupHom {
            domain: self.codomain.clone(),
            codomain: p.group.clone(),
            matrix: p.to_canon,
        };
        (p.group, proj)
    }

    /// Image as a canonical group together with its inclusion.
    pub fn image(&self) -> (FgAbelianGroup, GroupHom) {
        subgroup_generated(&self.codomain, &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        // canonical forms of isomorphic groups coincide
        self.domain == self.codomain && self.is_injective() && self.is_surjective()
    }

    /// Whether `x` lies in the image.
    pub fn image_contains(&self, x: &[BigInt]) -> bool {
        member_of_span(&self.codomain, &self.matrix, x)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(Error::NotAutomorphism(format!(
                "{} -> {} is not invertible",
                self.domain, self.codomain
            )));
        }
        // Solve self ∘ X = id column by column.
        let system = self.matrix.hstack(&self.codomain.relation_matrix());
        let solver = IntSolver::new(&system);
        let n = self.domain.num_generators();
        let mut inv = IntMatrix::zeros(n, self.codomain.num_generators());
        for j in 0..self.codomain.num_generators() {
            let mut e = vec![BigInt::zero(); self.codomain.num_generators()];
            e[j] = BigInt::one();
            let sol = solver
                .solve(&e)
                .ok_or_else(|| Error::Internal("surjective map without preimage".into()))?;
            for i in 0..n {
                inv[(i, j)] = sol[i].clone();
            }
        }
        GroupHom::new(self.codomain.clone(), self.domain.clone(), inv)
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}: {})",
            self.domain, self.codomain, self.matrix
        )
    }
}

/// Subgroup of `g` generated by the columns of `gens`, in canonical form,
/// with its inclusion into `g`.
pub fn subgroup_generated(g: &FgAbelianGroup, gens: &IntMatrix) -> (FgAbelianGroup, GroupHom) {
    assert_eq!(gens.rows(), g.num_generators(), "generator length mismatch");
    let s = gens.cols();
    // relations among the generators: {c : gens * c in im R_g}
    let system = gens.hstack(&g.relation_matrix());
    let k = integer_kernel(&system);
    let top: Vec<usize> = (0..s).collect();
    let relations = k.select_rows(&top);
    let p = Presentation::new(&relations);
    let mut incl = gens * &p.from_canon;
    g.reduce_columns(&mut incl);
    let hom = GroupHom {
        domain: p.group.clone(),
        codomain: g.clone(),
        matrix: incl,
    };
    (p.group, hom)
}

/// Whether `x` lies in the subgroup of `g` spanned by the columns of `gens`.
pub fn member_of_span(g: &FgAbelianGroup, gens: &IntMatrix, x: &[BigInt]) -> bool {
    let system = gens.hstack(&g.relation_matrix());
    IntSolver::new(&system).solve(x).is_some()
}

/// `image(f) == kernel(g)` for `f: X -> Y`, `g: Y -> Z`.
pub fn is_exact_pair(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if f.codomain() != g.domain() {
        return Err(Error::GroupMismatch(format!(
            "codomain {} of the first map differs from domain {} of the second",
            f.codomain(),
            g.domain()
        )));
    }
    if !g.compose(f)?.is_zero() {
        return Ok(false);
    }
    let (_, incl) = g.kernel();
    let system = f.matrix().hstack(&f.codomain().relation_matrix());
    let solver = IntSolver::new(&system);
    Ok((0..incl.domain().num_generators())
        .all(|j| solver.solve(&incl.matrix().column(j)).is_some()))
}

/// Elements of the group generated by `gens` (endomorphisms of one group),
/// by breadth-first closure from the identity. The flag reports whether the
/// closure finished within `limit` elements.
pub fn generate_group(
    g: &FgAbelianGroup,
    gens: &[GroupHom],
    limit: usize,
) -> (Vec<GroupHom>, bool) {
    let id = GroupHom::identity(g);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    seen.insert(id.matrix.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = s.compose(&x).expect("generators act on one group");
            if seen.insert(y.matrix.clone()) {
                if out.len() >= limit {
                    return (out, false);
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    (out, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n)
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn cokernel_presentations() {
        assert_eq!(group_from_matrix(&m(&[vec![3]])), z(3));
        assert_eq!(group_from_matrix(&m(&[vec![1, 0], vec![1, 2]])), z(2));
        assert_eq!(
            group_from_matrix(&IntMatrix::zeros(2, 0)),
            FgAbelianGroup::free(2)
        );
        assert_eq!(
            FgAbelianGroup::from_cyclic_factors(1, &[BigInt::from(2), BigInt::from(3)]),
            FgAbelianGroup::new(1, vec![BigInt::from(6)]).unwrap()
        );
    }

    #[test]
    fn non_canonical_torsion_rejected() {
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert!(
            serde_json::from_str::<FgAbelianGroup>(r#"{"free_rank":0,"torsion":[4,2]}"#).is_err()
        );
    }

    #[test]
    fn presentation_maps_are_inverse() {
        let rel = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let p = Presentation::new(&rel);
        let mut prod = &p.to_canon * &p.from_canon;
        p.group.reduce_columns(&mut prod);
        assert_eq!(prod, IntMatrix::identity(p.group.num_generators()));
        // relations die
        let mut r = &p.to_canon * &rel;
        p.group.reduce_columns(&mut r);
        assert!(r.is_zero());
    }

    #[test]
    fn kernel_examples() {
        let zero = GroupHom::from_rows(&z(0), &z(0), &[vec![0]]).unwrap();
        let (k, incl) = zero.kernel();
        assert_eq!(k, z(0));
        assert!(incl.matrix()[(0, 0)].abs().is_one());

        let three = GroupHom::from_rows(&z(0), &z(0), &[vec![3]]).unwrap();
        let (k, incl) = three.kernel();
        assert!(k.is_trivial());
        assert_eq!(incl.matrix().shape(), (1, 0));

        let z2 = FgAbelianGroup::free(2);
        let f = GroupHom::from_rows(&z2, &z2, &[vec![0, 1], vec![1, -1]]).unwrap();
        assert!(f.kernel().0.is_trivial());
    }

    #[test]
    fn cokernel_examples() {
        let three = GroupHom::from_rows(&z(0), &z(0), &[vec![3]]).unwrap();
        assert_eq!(three.cokernel().0, z(3));
        assert!(GroupHom::identity(&z(5)).cokernel().0.is_trivial());
        let z2 = FgAbelianGroup::free(2);
        let f = GroupHom::from_rows(&z2, &z2, &[vec![1, 0], vec![1, 2]]).unwrap();
        let (c, proj) = f.cokernel();
        assert_eq!(c, z(2));
        assert!(proj.compose(&f).unwrap().is_zero());
        assert!(proj.is_surjective());
    }

    #[test]
    fn ill_defined_rejected() {
        // Z/2 -> Z/3 sending the generator to 1 is not a homomorphism
        assert!(matches!(
            GroupHom::from_rows(&z(2), &z(3), &[vec![1]]),
            Err(Error::IllDefined(_))
        ));
        // Z/3 -> Z must be zero
        assert!(GroupHom::from_rows(&z(3), &z(0), &[vec![1]]).is_err());
        assert!(GroupHom::from_rows(&z(2), &z(4), &[vec![2]]).is_ok());
    }

    #[test]
    fn exact_pairs() {
        let times3 = GroupHom::from_rows(&z(0), &z(0), &[vec![3]]).unwrap();
        let mod3 = GroupHom::from_rows(&z(0), &z(3), &[vec![1]]).unwrap();
        let zero = GroupHom::zero(&z(0), &z(3));
        assert!(is_exact_pair(&times3, &mod3).unwrap());
        assert!(!is_exact_pair(&times3, &zero).unwrap());
        let from_trivial = GroupHom::zero(&FgAbelianGroup::trivial(), &z(0));
        assert!(is_exact_pair(&from_trivial, &GroupHom::identity(&z(0))).unwrap());
        assert!(is_exact_pair(&mod3, &times3).is_err());
    }

    #[test]
    fn inverse_of_automorphism() {
        let g = FgAbelianGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let a = GroupHom::from_rows(&g, &g, &[vec![1, 0], vec![1, 3]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.compose(&a).unwrap(), GroupHom::identity(&g));
        assert_eq!(a.compose(&inv).unwrap(), GroupHom::identity(&g));
        let not_iso = GroupHom::from_rows(&g, &g, &[vec![1, 0], vec![0, 2]]).unwrap();
        assert!(not_iso.inverse().is_err());
    }

    #[test]
    fn group_closure_of_units_mod_7() {
        let g = z(7);
        let three = GroupHom::from_rows(&g, &g, &[vec![3]]).unwrap();
        let (all, complete) = generate_group(&g, &[three], 100);
        assert!(complete);
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn display() {
        assert_eq!(
            FgAbelianGroup::from_cyclic_factors(2, &[BigInt::from(3)]).to_string(),
            "Z^2 + Z/3"
        );
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
    }
}
