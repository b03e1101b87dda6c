//! Finite directed graphs: K-theory of their graph algebras, gauge-invariant
//! ideal structure, and the six-term invariant of a graph with exactly one
//! nontrivial ideal.
//!
//! Conventions: `adjacency[(v, w)]` counts edges `v -> w`. The K-theory map
//! is `A^t - I` restricted to the columns of regular (non-sink) vertices:
//! `K0 = coker` and `K1 = ker`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupHom, Presentation};
use crate::matrix::IntMatrix;
use crate::sixterm::{
    decide_iso_one_ideal, ConeDescriptor, Cones, SixTermInvariant, SixTermMorphism,
};
use crate::snf::{integer_kernel, IntSolver};
use crate::verdict::IsoVerdict;

/// Largest vertex count for which ideals are enumerated.
pub const MAX_ENUMERATION_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    adjacency: IntMatrix,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<String>,
    adjacency: IntMatrix,
}

impl<'de> Deserialize<'de> for DirectedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        let adjacency = if raw.vertices.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            raw.adjacency
        };
        DirectedGraph::new(raw.vertices, adjacency).map_err(serde::de::Error::custom)
    }
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, adjacency: IntMatrix) -> Result<Self> {
        let n = vertices.len();
        if adjacency.shape() != (n, n) {
            return Err(Error::Dimension(format!(
                "{n} vertices but a {}x{} adjacency matrix",
                adjacency.rows(),
                adjacency.cols()
            )));
        }
        if !adjacency.is_nonnegative() {
            return Err(Error::Invalid("negative edge count".into()));
        }
        let mut sorted = vertices.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Invalid("repeated vertex name".into()));
        }
        Ok(DirectedGraph {
            vertices,
            adjacency,
        })
    }

    /// Vertices named `v0, v1, ...`.
    pub fn from_adjacency(adjacency: IntMatrix) -> Result<Self> {
        let names = (0..adjacency.rows()).map(|i| format!("v{i}")).collect();
        Self::new(names, adjacency)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_adjacency(IntMatrix::from_rows(rows))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.adjacency.row(v).iter().all(|x| x.is_zero())
    }

    pub fn regular_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_sink(v)).collect()
    }

    /// Subgraph on `keep`, with the edges between kept vertices.
    pub fn induced(&self, keep: &[usize]) -> DirectedGraph {
        DirectedGraph {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            adjacency: self.adjacency.submatrix(keep, keep),
        }
    }

    /// The same graph with vertex `i` renamed and moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DirectedGraph> {
        let n = self.len();
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::Invalid("not a permutation".into()));
            }
            inv[p] = i;
        }
        if perm.len() != n {
            return Err(Error::Invalid("not a permutation".into()));
        }
        Ok(self.induced(&inv))
    }

    fn successor_masks(&self) -> Vec<u32> {
        (0..self.len())
            .map(|v| {
                (0..self.len())
                    .filter(|&w| !self.adjacency[(v, w)].is_zero())
                    .fold(0u32, |m, w| m | (1 << w))
            })
            .collect()
    }

    /// `A^t - I` on the regular columns.
    fn kmap(&self) -> IntMatrix {
        let reg = self.regular_vertices();
        let mut m = IntMatrix::zeros(self.len(), reg.len());
        for (j, &v) in reg.iter().enumerate() {
            for w in 0..self.len() {
                m[(w, j)] = self.adjacency[(v, w)].clone();
            }
            m[(v, j)] -= BigInt::one();
        }
        m
    }
}

/// K-theory of a graph algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphKTheory {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    /// `Z^V -> K0`, sending a vertex to the class of its projection.
    pub vertex_class: GroupHom,
}

/// Homology of a two-term complex `Z^cols -> Z^rows`: `K0` as the
/// cokernel and `K1` as the kernel, with a kernel basis.
struct KData {
    k0: Presentation,
    // columns: basis of the kernel
    k1_basis: IntMatrix,
}

impl KData {
    fn new(m: &IntMatrix) -> Self {
        KData {
            k0: Presentation::new(m),
            k1_basis: integer_kernel(m),
        }
    }

    fn k1_group(&self) -> FgAbelianGroup {
        FgAbelianGroup::free(self.k1_basis.cols())
    }

    /// Coordinates of a kernel vector in the kernel basis.
    fn k1_coords(&self, solver: &IntSolver, x: &[BigInt]) -> Result<Vec<BigInt>> {
        solver
            .solve(x)
            .ok_or_else(|| Error::Internal("vector is not in the K1 lattice".into()))
    }

    /// Map `Z^raw -> K0` for raw vectors `raw` given as columns.
    fn k0_map(&self, source: &FgAbelianGroup, raw: &IntMatrix) -> Result<GroupHom> {
        GroupHom::new(
            source.clone(),
            self.k0.group.clone(),
            &self.k0.to_canon * raw,
        )
    }
}

pub fn graph_ktheory(g: &DirectedGraph) -> GraphKTheory {
    let data = KData::new(&g.kmap());
    let vertex_class = data
        .k0_map(
            &FgAbelianGroup::free(g.len()),
            &IntMatrix::identity(g.len()),
        )
        .expect("vertex classes are well defined");
    GraphKTheory {
        k0: data.k0.group.clone(),
        k1: data.k1_group(),
        vertex_class,
    }
}

/// A vertex set with its ideal-theoretic flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealDatum {
    /// Vertex indices, increasing.
    pub subset: Vec<usize>,
    pub hereditary: bool,
    pub saturated: bool,
}

impl IdealDatum {
    pub fn is_trivial(&self, g: &DirectedGraph) -> bool {
        self.subset.is_empty() || self.subset.len() == g.len()
    }

    pub fn names(&self, g: &DirectedGraph) -> Vec<String> {
        self.subset.iter().map(|&i| g.vertices[i].clone()).collect()
    }
}

/// Flags of an arbitrary vertex subset. Hereditary: no edge leaves it.
/// Saturated: every regular vertex emitting only into it lies in it.
pub fn ideal_datum(g: &DirectedGraph, subset: &[usize]) -> IdealDatum {
    let succ = g.successor_masks();
    let mask = subset.iter().fold(0u32, |m, &v| m | (1 << v));
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    IdealDatum {
        subset,
        hereditary: is_hereditary(&succ, mask),
        saturated: is_saturated(&succ, mask),
    }
}

fn is_hereditary(succ: &[u32], mask: u32) -> bool {
    succ.iter()
        .enumerate()
        .all(|(v, s)| mask & (1 << v) == 0 || s & !mask == 0)
}

fn is_saturated(succ: &[u32], mask: u32) -> bool {
    succ.iter()
        .enumerate()
        .all(|(v, s)| mask & (1 << v) != 0 || *s == 0 || s & !mask != 0)
}

/// All hereditary saturated vertex sets, including the empty set and the
/// whole vertex set.
pub fn hereditary_saturated_sets(g: &DirectedGraph) -> Result<Vec<IdealDatum>> {
    let n = g.len();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::Unsupported(format!(
            "ideal enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, graph has {n}"
        )));
    }
    let succ = g.successor_masks();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if is_hereditary(&succ, mask) && is_saturated(&succ, mask) {
            out.push(IdealDatum {
                subset: (0..n).filter(|&v| mask & (1 << v) != 0).collect(),
                hereditary: true,
                saturated: true,
            });
        }
    }
    Ok(out)
}

/// Proper nonempty hereditary saturated sets.
pub fn nontrivial_ideals(g: &DirectedGraph) -> Result<Vec<IdealDatum>> {
    Ok(hereditary_saturated_sets(g)?
        .into_iter()
        .filter(|d| !d.is_trivial(g))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleClass {
    PurelyInfinite,
    #[serde(rename = "af")]
    AF,
    NotSimple,
    Unsupported,
}

/// Reachability closure: `reach[v]` has bit `w` set when a path of length
/// at least one runs from `v` to `w`.
fn reachability(succ: &[u32]) -> Vec<u32> {
    let n = succ.len();
    let mut reach = succ.to_vec();
    for k in 0..n {
        for v in 0..n {
            if reach[v] & (1 << k) != 0 {
                reach[v] |= reach[k];
            }
        }
    }
    reach
}

/// Simplicity and the purely infinite / AF dichotomy for the graph algebra.
pub fn classify_simple(g: &DirectedGraph) -> Result<SimpleClass> {
    if g.is_empty() {
        return Ok(SimpleClass::Unsupported);
    }
    if !nontrivial_ideals(g)?.is_empty() {
        return Ok(SimpleClass::NotSimple);
    }
    let succ = g.successor_masks();
    let reach = reachability(&succ);
    let on_cycle: Vec<usize> = (0..g.len()).filter(|&v| reach[v] & (1 << v) != 0).collect();
    if on_cycle.is_empty() {
        return Ok(SimpleClass::AF);
    }
    // a cycle without an exit: every vertex on it has exactly one outgoing
    // edge, which stays on the cycle
    for &v in &on_cycle {
        let cycle_mask = (0..g.len())
            .filter(|&w| reach[v] & (1 << w) != 0 && reach[w] & (1 << v) != 0)
            .fold(0u32, |m, w| m | (1 << w));
        let no_exit = (0..g.len())
            .filter(|&w| cycle_mask & (1 << w) != 0)
            .all(|w| {
                let out: BigInt = g.adjacency.row(w).iter().sum();
                out.is_one()
            });
        if no_exit {
            return Ok(SimpleClass::NotSimple);
        }
    }
    let cycle_mask = on_cycle.iter().fold(0u32, |m, &v| m | (1 << v));
    if (0..g.len()).all(|v| cycle_mask & (1 << v) != 0 || reach[v] & cycle_mask != 0) {
        Ok(SimpleClass::PurelyInfinite)
    } else {
        Ok(SimpleClass::Unsupported)
    }
}

/// Cone of `K0` for a simple graph algebra, together with the presentation
/// whose canonical basis the cone refers to.
fn simple_cone(
    g: &DirectedGraph,
    data: &KData,
    label: &str,
) -> Result<(ConeDescriptor, Presentation)> {
    match classify_simple(g)? {
        SimpleClass::PurelyInfinite => Ok((ConeDescriptor::AllPositive, data.k0.clone())),
        SimpleClass::AF => {
            // K0 is free on the sink classes, with the standard cone
            let sinks: Vec<usize> = (0..g.len()).filter(|&v| g.is_sink(v)).collect();
            let mut basis = IntMatrix::zeros(data.k0.group.num_generators(), sinks.len());
            for (j, &s) in sinks.iter().enumerate() {
                for i in 0..basis.rows() {
                    basis[(i, j)] = data.k0.to_canon[(i, s)].clone();
                }
            }
            let rebased = data.k0.rebase(&basis)?;
            Ok((ConeDescriptor::StandardFree, rebased))
        }
        SimpleClass::NotSimple => Err(Error::Unsupported(format!("the {label} is not simple"))),
        SimpleClass::Unsupported => Err(Error::Unsupported(format!(
            "the {label} is neither purely infinite nor AF by the available tests"
        ))),
    }
}

/// The six-term invariant of a graph with exactly one nontrivial
/// hereditary saturated set `H`: the ideal is the graph on `H`, the
/// quotient the graph with `H` removed.
pub fn one_ideal_invariant(g: &DirectedGraph) -> Result<SixTermInvariant> {
    let ideals = nontrivial_ideals(g)?;
    if ideals.len() != 1 {
        return Err(Error::Invalid(format!(
            "expected exactly one nontrivial hereditary saturated set, found {}",
            ideals.len()
        )));
    }
    let h = &ideals[0].subset;
    let q: Vec<usize> = (0..g.len()).filter(|v| !h.contains(v)).collect();
    // with H first, A^t - I is block upper triangular: no edge leaves H, and
    // a regular vertex outside H stays regular in the quotient by saturation
    let order: Vec<usize> = h.iter().chain(q.iter()).copied().collect();
    let full = g.induced(&order);
    let nh = h.len();
    let ideal = full.induced(&(0..nh).collect::<Vec<_>>());
    let quotient = full.induced(&(nh..g.len()).collect::<Vec<_>>());
    let (mh, mq) = (ideal.kmap(), quotient.kmap());
    let m = full.kmap();
    if m.cols() != mh.cols() + mq.cols() {
        return Err(Error::Internal(
            "regular vertices of the quotient changed".into(),
        ));
    }
    let x = m.submatrix(
        &(0..nh).collect::<Vec<_>>(),
        &(mh.cols()..m.cols()).collect::<Vec<_>>(),
    );
    let db = KData::new(&mh);
    let da = KData::new(&mq);
    let (cone_b, pb) = simple_cone(&ideal, &db, "ideal")?;
    let (cone_a, pa) = simple_cone(&quotient, &da, "quotient")?;
    let cones = Cones {
        k0_b: cone_b,
        k0_e: ConeDescriptor::Unordered,
        k0_a: cone_a,
    };
    hexagon(&mh, &x, &mq, pb, pa, cones)
}

/// The six-term sequence of the short exact sequence of two-term complexes
/// given by the block matrix `[[m_h, x], [0, m_q]]`, where each two-term
/// complex has `K0 = coker` and `K1 = ker`. The ends carry the cone
/// `AllPositive` and the middle is unordered.
pub fn triangular_hexagon(
    m_h: &IntMatrix,
    x: &IntMatrix,
    m_q: &IntMatrix,
) -> Result<SixTermInvariant> {
    if x.shape() != (m_h.rows(), m_q.cols()) {
        return Err(Error::Dimension("off-diagonal block does not fit".into()));
    }
    let cones = Cones {
        k0_b: ConeDescriptor::AllPositive,
        k0_e: ConeDescriptor::Unordered,
        k0_a: ConeDescriptor::AllPositive,
    };
    hexagon(
        m_h,
        x,
        m_q,
        Presentation::new(m_h),
        Presentation::new(m_q),
        cones,
    )
}

/// Connecting maps: the exponential map vanishes because the projection
/// of complexes is onto in each degree, and the index map is `x` applied
/// to the kernel of `m_q`.
fn hexagon(
    m_h: &IntMatrix,
    x: &IntMatrix,
    m_q: &IntMatrix,
    pb: Presentation,
    pa: Presentation,
    cones: Cones,
) -> Result<SixTermInvariant> {
    let (nh, nq) = (m_h.rows(), m_q.rows());
    let (rh, rq) = (m_h.cols(), m_q.cols());
    let m = IntMatrix::block_diag(&[m_h.clone(), m_q.clone()]).add(
        &IntMatrix::zeros(nh, rh)
            .hstack(x)
            .vstack(&IntMatrix::zeros(nq, rh + rq)),
    );
    let db = KData::new(m_h);
    let de = KData::new(&m);
    let da = KData::new(m_q);

    let embed_h = IntMatrix::identity(nh + nq).select_cols(&(0..nh).collect::<Vec<_>>());
    let m0 = GroupHom::new(
        pb.group.clone(),
        de.k0.group.clone(),
        &(&de.k0.to_canon * &embed_h) * &pb.from_canon,
    )?;
    let project_q = IntMatrix::identity(nh + nq).select_rows(&(nh..nh + nq).collect::<Vec<_>>());
    let m1 = GroupHom::new(
        de.k0.group.clone(),
        pa.group.clone(),
        &(&pa.to_canon * &project_q) * &de.k0.from_canon,
    )?;
    let m2 = GroupHom::zero(&pa.group, &db.k1_group());

    let e_solver = IntSolver::new(&de.k1_basis);
    let a_solver = IntSolver::new(&da.k1_basis);
    let mut m3 = IntMatrix::zeros(de.k1_basis.cols(), db.k1_basis.cols());
    for j in 0..db.k1_basis.cols() {
        let mut v = db.k1_basis.column(j);
        v.resize(rh + rq, BigInt::zero());
        for (i, c) in de.k1_coords(&e_solver, &v)?.into_iter().enumerate() {
            m3[(i, j)] = c;
        }
    }
    let m3 = GroupHom::new(db.k1_group(), de.k1_group(), m3)?;
    let mut m4 = IntMatrix::zeros(da.k1_basis.cols(), de.k1_basis.cols());
    for j in 0..de.k1_basis.cols() {
        let v = de.k1_basis.column(j)[rh..].to_vec();
        for (i, c) in da.k1_coords(&a_solver, &v)?.into_iter().enumerate() {
            m4[(i, j)] = c;
        }
    }
    let m4 = GroupHom::new(de.k1_group(), da.k1_group(), m4)?;
    let m5 = GroupHom::new(
        da.k1_group(),
        pb.group.clone(),
        &(&pb.to_canon * x) * &da.k1_basis,
    )?;

    let s = SixTermInvariant::from_homs([m0, m1, m2, m3, m4, m5], cones)?;
    let violations = s.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Internal(format!(
            "constructed sequence fails: {}",
            list.join("; ")
        )));
    }
    Ok(s)
}

/// Compare two graphs with one nontrivial ideal through their six-term
/// invariants.
pub fn compare_graphs(
    g1: &DirectedGraph,
    g2: &DirectedGraph,
) -> Result<IsoVerdict<SixTermMorphism>> {
    decide_iso_one_ideal(&one_ideal_invariant(g1)?, &one_ideal_invariant(g2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn graph(rows: &[Vec<i64>]) -> DirectedGraph {
        DirectedGraph::from_rows(rows).unwrap()
    }

    fn z(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n)
    }

    #[test]
    fn ktheory_examples() {
        let k = graph_ktheory(&graph(&[vec![3]]));
        assert_eq!((k.k0, k.k1), (z(2), FgAbelianGroup::trivial()));
        let k = graph_ktheory(&graph(&[vec![2]]));
        assert_eq!(
            (k.k0, k.k1),
            (FgAbelianGroup::trivial(), FgAbelianGroup::trivial())
        );
        let k = graph_ktheory(&graph(&[vec![0, 0], vec![0, 0]]));
        assert_eq!(
            (k.k0, k.k1),
            (FgAbelianGroup::free(2), FgAbelianGroup::trivial())
        );
        // a single loop gives C(T)
        let k = graph_ktheory(&graph(&[vec![1]]));
        assert_eq!((k.k0, k.k1), (z(0), z(0)));
        // vertex class of the unit in O_4 is a generator of Z/3
        let k = graph_ktheory(&graph(&[vec![4]]));
        assert_eq!(k.vertex_class.matrix(), &IntMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn ideal_examples() {
        let sets = hereditary_saturated_sets(&graph(&[vec![1]])).unwrap();
        assert_eq!(sets.len(), 2);
        let g = graph(&[vec![0, 1], vec![0, 1]]);
        assert!(nontrivial_ideals(&g).unwrap().is_empty());
        let d = ideal_datum(&g, &[1]);
        assert!(d.hereditary && !d.saturated);
        let g = graph(&[vec![1, 1], vec![0, 3]]);
        let ideals = nontrivial_ideals(&g).unwrap();
        assert_eq!(ideals.len(), 1);
        assert_eq!(ideals[0].names(&g), vec!["v1".to_string()]);
        let big = DirectedGraph::from_adjacency(IntMatrix::zeros(21, 21)).unwrap();
        assert!(hereditary_saturated_sets(&big).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_simple(&graph(&[vec![2]])).unwrap(),
            SimpleClass::PurelyInfinite
        );
        assert_eq!(
            classify_simple(&graph(&[vec![0, 1], vec![0, 0]])).unwrap(),
            SimpleClass::AF
        );
        assert_eq!(
            classify_simple(&graph(&[vec![1, 1], vec![0, 3]])).unwrap(),
            SimpleClass::NotSimple
        );
        assert_eq!(
            classify_simple(&graph(&[vec![1]])).unwrap(),
            SimpleClass::NotSimple
        );
        assert_eq!(
            classify_simple(&graph(&[vec![0]])).unwrap(),
            SimpleClass::AF
        );
        assert_eq!(
            classify_simple(&graph(&[vec![1, 1], vec![1, 1]])).unwrap(),
            SimpleClass::PurelyInfinite
        );
    }

    #[test]
    fn one_ideal_example() {
        // 2 loops at v, v -> w, 3 loops at w: ideal O_3, quotient O_2
        let g = graph(&[vec![2, 1], vec![0, 3]]);
        let s = one_ideal_invariant(&g).unwrap();
        assert_eq!(s.node(0), &z(2));
        assert_eq!(s.node(1), &z(2));
        assert!(s.node(2).is_trivial());
        assert!((3..6).all(|i| s.node(i).is_trivial()));
        assert!(GroupHom::new(z(2), z(2), s.map_matrix(0).clone())
            .unwrap()
            .is_isomorphism());
        // two nontrivial ideals
        let g = graph(&[vec![2, 1, 0], vec![0, 2, 1], vec![0, 0, 2]]);
        assert!(one_ideal_invariant(&g).is_err());
    }

    fn printed_realization(k: i64) -> DirectedGraph {
        // v with 4 loops and k edges to the sink w
        graph(&[vec![4, k], vec![0, 0]])
    }

    #[test]
    fn realized_printed_sequences() {
        let s1 = one_ideal_invariant(&printed_realization(1)).unwrap();
        assert_eq!(s1.node(1), &z(0));
        assert_eq!(s1.node(2), &z(3));
        assert_eq!(s1.cones().k0_b, ConeDescriptor::StandardFree);
        assert_eq!(s1.cones().k0_a, ConeDescriptor::AllPositive);
        let s3 = one_ideal_invariant(&printed_realization(3)).unwrap();
        assert_eq!(
            s3.node(1),
            &FgAbelianGroup::from_cyclic_factors(1, &[BigInt::from(3)])
        );
        let v = compare_graphs(&printed_realization(1), &printed_realization(2)).unwrap();
        assert!(v.is_isomorphic(), "{v:?}");
        assert!(
            compare_graphs(&printed_realization(1), &printed_realization(3))
                .unwrap()
                .is_not_isomorphic()
        );
        let g = printed_realization(2);
        assert!(compare_graphs(&g, &g).unwrap().is_isomorphic());
        // ideal O_3 versus ideal O_4
        let a = graph(&[vec![2, 1], vec![0, 3]]);
        let b = graph(&[vec![2, 1], vec![0, 4]]);
        assert!(compare_graphs(&a, &b).unwrap().is_not_isomorphic());
    }

    #[test]
    fn index_map_nonzero() {
        // quotient [[2, 1], [1, 2]] has K1 = Z spanned by (1, -1); the sink
        // ideal receives 2 and 1 edges, so the index map is x -> 2 - 1
        let g = graph(&[vec![2, 1, 2], vec![1, 2, 1], vec![0, 0, 0]]);
        let s = one_ideal_invariant(&g).unwrap();
        assert_eq!(s.node(3), &z(0));
        assert_eq!(s.map_matrix(5).entries()[0].abs(), BigInt::one());
        assert!(s.node(4).is_trivial());
        let twice = graph(&[vec![2, 1, 3], vec![1, 2, 1], vec![0, 0, 0]]);
        let t = one_ideal_invariant(&twice).unwrap();
        assert_eq!(
            t.node(1),
            &FgAbelianGroup::from_cyclic_factors(1, &[BigInt::from(2)])
        );
        assert!(compare_graphs(&g, &twice).unwrap().is_not_isomorphic());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["v","w"],"adjacency":[[1,1],[0,3]]}"#;
        let g: DirectedGraph = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), text);
        assert!(
            serde_json::from_str::<DirectedGraph>(r#"{"vertices":["v"],"adjacency":[[1,1]]}"#)
                .is_err()
        );
    }
}
