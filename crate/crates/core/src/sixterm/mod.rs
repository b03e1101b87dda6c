//! Cyclic six-term exact sequences of K-groups with cone annotations, and
//! the isomorphism decision for extensions with one nontrivial ideal.
//!
//! Nodes are stored in the order `K0(B), K0(E), K0(A), K1(A), K1(E), K1(B)`.
//! Maps are stored in the order they occur around the hexagon:
//!
//! ```text
//!   0: K0(B) -> K0(E)      3: K1(B) -> K1(E)
//!   1: K0(E) -> K0(A)      4: K1(E) -> K1(A)
//!   2: K0(A) -> K1(B)      5: K1(A) -> K0(B)
//! ```
//!
//! Map 2 is the exponential map and map 5 the index map.

mod aut;
mod decide;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dimgroup::StationaryDimensionGroup;
use crate::error::{Error, Result};
use crate::group::{is_exact_pair, FgAbelianGroup, GroupHom};
use crate::matrix::IntMatrix;

pub use aut::{aut_plus_generators, is_order_isomorphism};
pub use decide::{
    decide_iso_one_ideal, decide_iso_one_ideal_bounded, verify_witness, DEFAULT_PAIR_BOUND,
};

pub const K0_B: usize = 0;
pub const K0_E: usize = 1;
pub const K0_A: usize = 2;
pub const K1_A: usize = 3;
pub const K1_E: usize = 4;
pub const K1_B: usize = 5;

pub const NODE_NAMES: [&str; 6] = ["K0(B)", "K0(E)", "K0(A)", "K1(A)", "K1(E)", "K1(B)"];

/// `(source, target)` node of each map.
pub const MAP_ENDS: [(usize, usize); 6] = [
    (K0_B, K0_E),
    (K0_E, K0_A),
    (K0_A, K1_B),
    (K1_B, K1_E),
    (K1_E, K1_A),
    (K1_A, K0_B),
];

pub const EXPONENTIAL: usize = 2;
pub const INDEX: usize = 5;

/// Positive cone attached to a `K0` node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConeDescriptor {
    /// `K0+ = K0`, as for purely infinite simple algebras.
    AllPositive,
    /// `Z^n` with the coordinatewise cone.
    StandardFree,
    /// `DG(A)` for a primitive unimodular `A`, so that the group is `Z^n`.
    StationaryDg { matrix: IntMatrix },
    /// No order constraint.
    Unordered,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cones {
    pub k0_b: ConeDescriptor,
    pub k0_e: ConeDescriptor,
    pub k0_a: ConeDescriptor,
}

impl Default for Cones {
    fn default() -> Self {
        Cones {
            k0_b: ConeDescriptor::AllPositive,
            k0_e: ConeDescriptor::Unordered,
            k0_a: ConeDescriptor::AllPositive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SixTermInvariant {
    nodes: [FgAbelianGroup; 6],
    maps: [IntMatrix; 6],
    cones: Cones,
}

#[derive(Deserialize)]
struct RawSixTerm {
    nodes: Vec<FgAbelianGroup>,
    maps: Vec<IntMatrix>,
    #[serde(default)]
    cones: Cones,
}

impl<'de> Deserialize<'de> for SixTermInvariant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSixTerm::deserialize(d)?;
        SixTermInvariant::from_vecs(raw.nodes, raw.maps, raw.cones)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Shape,
    IllDefined,
    NotExact,
    Cone,
}

/// A failed condition, attached to the node where it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub node: String,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.node, self.detail)
    }
}

impl SixTermInvariant {
    /// No checks beyond array sizes; see [`validate_sixterm`].
    pub fn new(nodes: [FgAbelianGroup; 6], maps: [IntMatrix; 6], cones: Cones) -> Self {
        let mut s = SixTermInvariant { nodes, maps, cones };
        s.reshape_empty_maps();
        s
    }

    pub fn from_vecs(
        nodes: Vec<FgAbelianGroup>,
        maps: Vec<IntMatrix>,
        cones: Cones,
    ) -> Result<Self> {
        let nodes: [FgAbelianGroup; 6] = nodes
            .try_into()
            .map_err(|v: Vec<_>| Error::Invalid(format!("expected 6 nodes, got {}", v.len())))?;
        let maps: [IntMatrix; 6] = maps
            .try_into()
            .map_err(|v: Vec<_>| Error::Invalid(format!("expected 6 maps, got {}", v.len())))?;
        Ok(Self::new(nodes, maps, cones))
    }

    /// Build from homomorphisms, given in map order.
    pub fn from_homs(maps: [GroupHom; 6], cones: Cones) -> Result<Self> {
        let mut nodes: [Option<FgAbelianGroup>; 6] = Default::default();
        for (k, (s, t)) in MAP_ENDS.iter().enumerate() {
            for (node, g) in [(*s, maps[k].domain()), (*t, maps[k].codomain())] {
                match &nodes[node] {
                    Some(h) if h != g => {
                        return Err(Error::GroupMismatch(format!(
                            "{} is both {h} and {g}",
                            NODE_NAMES[node]
                        )))
                    }
                    _ => nodes[node] = Some(g.clone()),
                }
            }
        }
        let nodes = nodes.map(|g| g.expect("every node is an end of some map"));
        Ok(Self::new(nodes, maps.map(|h| h.matrix().clone()), cones))
    }

    // JSON cannot express the shape of a matrix with no entries
    fn reshape_empty_maps(&mut self) {
        for (k, (s, t)) in MAP_ENDS.iter().enumerate() {
            let shape = (
                self.nodes[*t].num_generators(),
                self.nodes[*s].num_generators(),
            );
            if self.maps[k].entries().is_empty() && shape.0 * shape.1 == 0 {
                self.maps[k] = IntMatrix::zeros(shape.0, shape.1);
            }
        }
    }

    pub fn node(&self, i: usize) -> &FgAbelianGroup {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[FgAbelianGroup; 6] {
        &self.nodes
    }

    pub fn map_matrix(&self, k: usize) -> &IntMatrix {
        &self.maps[k]
    }

    pub fn cones(&self) -> &Cones {
        &self.cones
    }

    /// Cone of a node; `K1` nodes are unordered.
    pub fn cone(&self, node: usize) -> &ConeDescriptor {
        match node {
            K0_B => &self.cones.k0_b,
            K0_E => &self.cones.k0_e,
            K0_A => &self.cones.k0_a,
            _ => &ConeDescriptor::Unordered,
        }
    }

    pub fn map(&self, k: usize) -> Result<GroupHom> {
        let (s, t) = MAP_ENDS[k];
        GroupHom::new(
            self.nodes[s].clone(),
            self.nodes[t].clone(),
            self.maps[k].clone(),
        )
    }

    pub fn homs(&self) -> Result<[GroupHom; 6]> {
        let v = (0..6).map(|k| self.map(k)).collect::<Result<Vec<_>>>()?;
        Ok(v.try_into().expect("six maps"))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut homs: Vec<Option<GroupHom>> = Vec::with_capacity(6);
        for (k, (s, t)) in MAP_ENDS.iter().enumerate() {
            let expected = (
                self.nodes[*t].num_generators(),
                self.nodes[*s].num_generators(),
            );
            let label = format!("{} -> {}", NODE_NAMES[*s], NODE_NAMES[*t]);
            if self.maps[k].shape() != expected {
                out.push(Violation {
                    node: NODE_NAMES[*t].into(),
                    kind: ViolationKind::Shape,
                    detail: format!(
                        "map {label} is {}x{}, expected {}x{}",
                        self.maps[k].rows(),
                        self.maps[k].cols(),
                        expected.0,
                        expected.1
                    ),
                });
                homs.push(None);
                continue;
            }
            match self.map(k) {
                Ok(h) => homs.push(Some(h)),
                Err(e) => {
                    out.push(Violation {
                        node: NODE_NAMES[*t].into(),
                        kind: ViolationKind::IllDefined,
                        detail: format!("map {label}: {e}"),
                    });
                    homs.push(None);
                }
            }
        }
        for k in 0..6 {
            let node = MAP_ENDS[k].1;
            if let (Some(f), Some(g)) = (&homs[k], &homs[(k + 1) % 6]) {
                if !is_exact_pair(f, g).unwrap_or(false) {
                    out.push(Violation {
                        node: NODE_NAMES[node].into(),
                        kind: ViolationKind::NotExact,
                        detail:
                            "image of the incoming map differs from the kernel of the outgoing map"
                                .into(),
                    });
                }
            }
        }
        for node in [K0_B, K0_E, K0_A] {
            if let Some(detail) = cone_problem(&self.nodes[node], self.cone(node)) {
                out.push(Violation {
                    node: NODE_NAMES[node].into(),
                    kind: ViolationKind::Cone,
                    detail,
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The invariant carried along automorphisms `phi` of the six nodes
    /// (given in node order): map `k` becomes `phi_t ∘ f_k ∘ phi_s^-1`.
    /// Cones are kept, so `phi` should preserve them.
    pub fn transport(&self, phi: &[GroupHom; 6]) -> Result<SixTermInvariant> {
        let homs = self.homs()?;
        let mut maps = Vec::with_capacity(6);
        for (k, (s, t)) in MAP_ENDS.iter().enumerate() {
            if phi[*s].domain() != &self.nodes[*s] || phi[*t].domain() != &self.nodes[*t] {
                return Err(Error::GroupMismatch(format!(
                    "transport map for {} has the wrong domain",
                    NODE_NAMES[*s]
                )));
            }
            let inv = phi[*s].inverse()?;
            maps.push(phi[*t].compose(&homs[k].compose(&inv)?)?);
        }
        Self::from_homs(maps.try_into().expect("six maps"), self.cones.clone())
    }
}

fn cone_problem(g: &FgAbelianGroup, cone: &ConeDescriptor) -> Option<String> {
    match cone {
        ConeDescriptor::AllPositive | ConeDescriptor::Unordered => None,
        ConeDescriptor::StandardFree => {
            (!g.is_torsion_free()).then(|| format!("standard cone on {g}, which has torsion"))
        }
        ConeDescriptor::StationaryDg { matrix } => {
            let Ok(dg) = StationaryDimensionGroup::new(matrix.clone()) else {
                return Some("dimension group matrix is not square".into());
            };
            if !dg.is_primitive() {
                return Some("dimension group matrix is not primitive".into());
            }
            if !dg.is_unimodular() || *g != FgAbelianGroup::free(dg.size()) {
                return Some(format!(
                    "DG of a {}x{} matrix does not present {g}",
                    dg.size(),
                    dg.size()
                ));
            }
            None
        }
    }
}

/// Violations of exactness, composability or cone constraints.
pub fn validate_sixterm(s: &SixTermInvariant) -> Vec<Violation> {
    s.validate()
}

/// Isomorphism between two six-term invariants, one automorphism per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixTermMorphism {
    pub beta0: GroupHom,
    pub eta0: GroupHom,
    pub alpha0: GroupHom,
    pub beta1: GroupHom,
    pub eta1: GroupHom,
    pub alpha1: GroupHom,
}

impl SixTermMorphism {
    /// Components in node order.
    pub fn from_nodes(c: [GroupHom; 6]) -> Self {
        let [beta0, eta0, alpha0, alpha1, eta1, beta1] = c;
        SixTermMorphism {
            beta0,
            eta0,
            alpha0,
            beta1,
            eta1,
            alpha1,
        }
    }

    /// Components in node order.
    pub fn components(&self) -> [&GroupHom; 6] {
        [
            &self.beta0,
            &self.eta0,
            &self.alpha0,
            &self.alpha1,
            &self.eta1,
            &self.beta1,
        ]
    }

    pub fn identity(s: &SixTermInvariant) -> Self {
        Self::from_nodes(s.nodes.clone().map(|g| GroupHom::identity(&g)))
    }

    pub fn inverse(&self) -> Result<Self> {
        let c = self
            .components()
            .iter()
            .map(|h| h.inverse())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_nodes(c.try_into().expect("six components")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn z(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n)
    }

    pub(crate) fn k0_row(times: i64, proj: i64) -> SixTermInvariant {
        let zero = FgAbelianGroup::trivial();
        SixTermInvariant::new(
            [z(0), z(0), z(3), zero.clone(), zero.clone(), zero.clone()],
            [
                IntMatrix::from_rows(&[vec![times]]),
                IntMatrix::from_rows(&[vec![proj]]),
                IntMatrix::zeros(0, 1),
                IntMatrix::zeros(0, 0),
                IntMatrix::zeros(0, 0),
                IntMatrix::zeros(1, 0),
            ],
            Cones {
                k0_b: ConeDescriptor::StandardFree,
                k0_e: ConeDescriptor::Unordered,
                k0_a: ConeDescriptor::AllPositive,
            },
        )
    }

    #[test]
    fn validation_examples() {
        assert!(validate_sixterm(&k0_row(3, 1)).is_empty());
        let bad = validate_sixterm(&k0_row(2, 1));
        assert!(!bad.is_empty());
        assert!(
            bad.iter()
                .all(|v| v.node == "K0(E)" && v.kind == ViolationKind::NotExact),
            "{bad:?}"
        );
        let zero = FgAbelianGroup::trivial();
        let all_zero = SixTermInvariant::new(
            std::array::from_fn(|_| zero.clone()),
            std::array::from_fn(|_| IntMatrix::zeros(0, 0)),
            Cones::default(),
        );
        assert!(all_zero.is_valid());
    }

    #[test]
    fn cone_violations() {
        let mut s = k0_row(3, 1);
        s.cones.k0_a = ConeDescriptor::StandardFree;
        let v = s.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::Cone);
        assert_eq!(v[0].node, "K0(A)");
    }

    #[test]
    fn json_round_trip() {
        let s = k0_row(3, 2);
        let text = serde_json::to_string(&s).unwrap();
        let back: SixTermInvariant = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let compact = r#"{"nodes":[{"free_rank":1,"torsion":[]},{"free_rank":1,"torsion":[]},{"free_rank":0,"torsion":[3]},{"free_rank":0,"torsion":[]},{"free_rank":0,"torsion":[]},{"free_rank":0,"torsion":[]}],"maps":[[[3]],[[1]],[],[],[],[]],"cones":{"k0_b":{"type":"standard_free"},"k0_e":{"type":"unordered"},"k0_a":{"type":"all_positive"}}}"#;
        let parsed: SixTermInvariant = serde_json::from_str(compact).unwrap();
        assert!(parsed.is_valid());
        assert_eq!(parsed.map_matrix(5).shape(), (1, 0));
        assert!(serde_json::from_str::<SixTermInvariant>(r#"{"nodes":[],"maps":[]}"#).is_err());
    }

    #[test]
    fn hom_constructor_and_transport() {
        let s = k0_row(3, 1);
        let homs = s.homs().unwrap();
        let again = SixTermInvariant::from_homs(homs, s.cones().clone()).unwrap();
        assert_eq!(again, s);
        let mut phi: [GroupHom; 6] = s.nodes().clone().map(|g| GroupHom::identity(&g));
        phi[K0_A] = GroupHom::from_rows(&z(3), &z(3), &[vec![2]]).unwrap();
        let t = s.transport(&phi).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.map_matrix(1)[(0, 0)], BigInt::from(2));
    }
}
