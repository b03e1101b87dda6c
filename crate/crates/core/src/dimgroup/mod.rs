//! Stationary dimension groups `DG(A) = lim (Z^n -A-> Z^n -A-> ...)`, their
//! order, continued fractions and the substitution invariants built on them.

pub mod cf;
pub mod quadratic;
pub mod substitution;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::inverse_unimodular;
use crate::matrix::{json_int, IntMatrix};
use crate::snf::IntSolver;
use cf::{cf_expansion, convergent_matrix, gl2_equivalence, inverse_2x2, mobius_apply};
use quadratic::{is_square, squarefree_split, QuadNum, QuadraticIrrational};

pub use cf::{cf_value, cf_value_in, sturmian_equivalent, ContinuedFraction};
pub use substitution::{
    compare_scaled_invariants, compare_substitution_invariants, scaled_triple, ScaledInvariant,
    ScaledWitness, SubstitutionInvariant, SubstitutionWitness,
};

/// Default number of matrix powers tried by iterative positivity.
pub const DEFAULT_POSITIVITY_BOUND: usize = 64;

/// `DG(A)` for a square integer matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDg")]
pub struct StationaryDimensionGroup {
    matrix: IntMatrix,
}

#[derive(Deserialize)]
struct RawDg {
    matrix: IntMatrix,
}

impl TryFrom<RawDg> for StationaryDimensionGroup {
    type Error = Error;

    fn try_from(raw: RawDg) -> Result<Self> {
        StationaryDimensionGroup::new(raw.matrix)
    }
}

/// The element `(stage, v)`: `v` placed at the `stage`-th copy of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DGElement {
    pub stage: u64,
    #[serde(with = "json_int::vec")]
    pub vector: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    /// Nonzero but neither positive nor negative.
    Infinitesimal,
    Unknown,
}

impl DGElement {
    pub fn new(stage: u64, vector: Vec<BigInt>) -> Self {
        DGElement { stage, vector }
    }

    pub fn from_i64(stage: u64, v: &[i64]) -> Self {
        DGElement::new(stage, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn neg(&self) -> Self {
        DGElement::new(self.stage, self.vector.iter().map(|x| -x).collect())
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

impl StationaryDimensionGroup {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension(
                "dimension group needs a nonempty square matrix".into(),
            ));
        }
        Ok(StationaryDimensionGroup { matrix })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// True iff all entries are nonnegative.
    pub fn is_ordered(&self) -> bool {
        self.matrix.is_nonnegative()
    }

    /// Some power is strictly positive (checked up to Wielandt's bound).
    pub fn is_primitive(&self) -> bool {
        if !self.is_ordered() {
            return false;
        }
        let n = self.size();
        let a: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[(i, j)].is_positive()).collect())
            .collect();
        let mut p = a.clone();
        for _ in 0..(n - 1) * (n - 1) {
            p = bool_mul(&p, &a);
        }
        p.iter().all(|row| row.iter().all(|&x| x))
    }

    /// Rank of `A^n`, the rank of `DG(A)` as a group.
    pub fn eventual_rank(&self) -> usize {
        self.matrix.pow(self.size() as u64).rank()
    }

    /// `DG(A) = Z^n` exactly when `A` is invertible over the integers.
    pub fn is_unimodular(&self) -> bool {
        self.matrix.determinant().abs().is_one()
    }

    pub fn zero(&self) -> DGElement {
        DGElement::new(0, vec![BigInt::zero(); self.size()])
    }

    fn check(&self, x: &DGElement) -> Result<()> {
        if x.vector.len() != self.size() {
            return Err(Error::Dimension(format!(
                "element of length {} in DG of size {}",
                x.vector.len(),
                self.size()
            )));
        }
        Ok(())
    }

    /// Vector of `x` at a later stage.
    pub fn at_stage(&self, x: &DGElement, stage: u64) -> Vec<BigInt> {
        assert!(
            stage >= x.stage,
            "cannot move an element to an earlier stage"
        );
        self.matrix.pow(stage - x.stage).mul_vec(&x.vector)
    }

    pub fn add(&self, x: &DGElement, y: &DGElement) -> DGElement {
        let s = x.stage.max(y.stage);
        let (u, v) = (self.at_stage(x, s), self.at_stage(y, s));
        DGElement::new(s, u.iter().zip(&v).map(|(a, b)| a + b).collect())
    }

    /// Equality in the limit: `A^k (x - y) = 0` at a common stage.
    pub fn equal(&self, x: &DGElement, y: &DGElement) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        let s = x.stage.max(y.stage);
        let (u, v) = (self.at_stage(x, s), self.at_stage(y, s));
        let diff: Vec<BigInt> = u.iter().zip(&v).map(|(a, b)| a - b).collect();
        // the kernel chain of A stabilizes after n steps
        let killed = self.matrix.pow(self.size() as u64).mul_vec(&diff);
        Ok(killed.iter().all(Zero::is_zero))
    }

    /// Representative of minimal stage.
    pub fn canonical(&self, x: &DGElement) -> Result<DGElement> {
        self.check(x)?;
        let n = self.size() as u64;
        let an = self.matrix.pow(n);
        let solver = IntSolver::new(&self.matrix.pow(n + 1));
        let mut cur = x.clone();
        while cur.stage > 0 {
            // (k, v) = (k - 1, w) iff A^(n+1) w = A^n v has a solution
            match solver.solve(&an.mul_vec(&cur.vector)) {
                Some(w) => cur = DGElement::new(cur.stage - 1, w),
                None => break,
            }
        }
        if self.equal(&cur, &self.zero())? {
            return Ok(self.zero());
        }
        Ok(cur)
    }

    /// Sign of `x` in the order of `DG(A)`; `A` must be nonnegative and
    /// primitive. Sizes 1 and 2 are decided exactly; larger sizes iterate up
    /// to `bound` powers and may answer `Unknown`.
    pub fn sign_bounded(&self, x: &DGElement, bound: usize) -> Result<Sign> {
        self.check(x)?;
        if !self.is_primitive() {
            return Err(Error::Invalid(
                "positivity needs a nonnegative primitive matrix".into(),
            ));
        }
        if self.equal(x, &self.zero())? {
            return Ok(Sign::Zero);
        }
        match self.size() {
            1 => Ok(from_ordering(x.vector[0].cmp(&BigInt::zero()))),
            2 => {
                let pf = PerronData::new(self)?;
                match pf.pairing(&x.vector).signum() {
                    Ordering::Equal => Ok(Sign::Infinitesimal),
                    o => Ok(from_ordering(o)),
                }
            }
            _ => {
                let mut v = x.vector.clone();
                for _ in 0..=bound {
                    if v.iter().all(|t| !t.is_negative()) {
                        return Ok(Sign::Positive);
                    }
                    if v.iter().all(|t| !t.is_positive()) {
                        return Ok(Sign::Negative);
                    }
                    v = self.matrix.mul_vec(&v);
                }
                Ok(Sign::Unknown)
            }
        }
    }

    pub fn sign(&self, x: &DGElement) -> Result<Sign> {
        self.sign_bounded(x, DEFAULT_POSITIVITY_BOUND)
    }
}

fn from_ordering(o: Ordering) -> Sign {
    match o {
        Ordering::Greater => Sign::Positive,
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
    }
}

/// Whether `x` and `y` define the same element of `DG(A)`.
pub fn dg_equal(x: &DGElement, y: &DGElement, g: &StationaryDimensionGroup) -> Result<bool> {
    g.equal(x, y)
}

/// Sign of `x` in the ordered group `DG(A)`.
pub fn dg_positive(x: &DGElement, g: &StationaryDimensionGroup) -> Result<Sign> {
    g.sign(x)
}

/// Perron data of a primitive 2x2 matrix `[[a, b], [c, d]]`: the Perron
/// value `lambda = (t + sqrt disc) / 2` and the positive left eigenvector
/// `(c, lambda - a)`.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub trace: BigInt,
    pub det: BigInt,
    pub disc: BigInt,
    lambda: QuadNum,
    left: [QuadNum; 2],
}

impl PerronData {
    pub fn new(g: &StationaryDimensionGroup) -> Result<Self> {
        if g.size() != 2 || !g.is_primitive() {
            return Err(Error::Invalid(
                "Perron data needs a primitive 2x2 matrix".into(),
            ));
        }
        let m = g.matrix();
        let trace = m.trace();
        let det = m.determinant();
        let disc = &trace * &trace - BigInt::from(4) * &det;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let lambda = QuadNum::new(
            BigRational::from_integer(trace.clone()) * &half,
            half,
            &disc,
        );
        let left = [
            QuadNum::integer(m[(1, 0)].clone()),
            lambda.sub(&QuadNum::integer(m[(0, 0)].clone())),
        ];
        Ok(PerronData {
            trace,
            det,
            disc,
            lambda,
            left,
        })
    }

    pub fn lambda(&self) -> &QuadNum {
        &self.lambda
    }

    /// Squarefree `d` with `lambda` in `Q(sqrt d)`; `1` when rational.
    pub fn field(&self) -> BigInt {
        if is_square(&self.disc) {
            BigInt::one()
        } else {
            squarefree_split(&self.disc).1
        }
    }

    pub fn is_irrational(&self) -> bool {
        !is_square(&self.disc)
    }

    /// `<l, v>` for the left Perron vector `l`.
    pub fn pairing(&self, v: &[BigInt]) -> QuadNum {
        self.left[0]
            .mul(&QuadNum::integer(v[0].clone()))
            .add(&self.left[1].mul(&QuadNum::integer(v[1].clone())))
    }

    /// `theta = (lambda - a) / c`, so that `<l, v> / c = v_0 + theta v_1`.
    pub fn slope(&self) -> QuadNum {
        self.left[1].div(&self.left[0])
    }
}

/// Order data of `DG(A)` for a primitive unimodular 2x2 matrix: the group
/// is `Z^2` (stage 0) ordered by `v_0 + theta v_1 > 0`.
#[derive(Clone, Debug)]
pub struct Rank2Order {
    group: StationaryDimensionGroup,
    perron: PerronData,
    theta: QuadraticIrrational,
    inverse: IntMatrix,
}

impl Rank2Order {
    pub fn new(g: &StationaryDimensionGroup) -> Result<Self> {
        if g.size() != 2 || !g.is_primitive() || !g.is_unimodular() {
            return Err(Error::Unsupported(
                "exact rank-two order data needs a primitive unimodular 2x2 matrix".into(),
            ));
        }
        let perron = PerronData::new(g)?;
        let theta = QuadraticIrrational::from_quad(&perron.slope())?;
        Ok(Rank2Order {
            group: g.clone(),
            inverse: inverse_unimodular(g.matrix())?,
            perron,
            theta,
        })
    }

    pub fn theta(&self) -> &QuadraticIrrational {
        &self.theta
    }

    pub fn perron(&self) -> &PerronData {
        &self.perron
    }

    /// Positivity functional `v_0 + theta v_1` on stage-0 coordinates.
    pub fn functional(&self, v: &[BigInt]) -> QuadNum {
        self.theta
            .to_quad()
            .mul(&QuadNum::integer(v[1].clone()))
            .add(&QuadNum::integer(v[0].clone()))
    }

    /// Stage-0 coordinates of an element.
    pub fn stage_zero(&self, x: &DGElement) -> Vec<BigInt> {
        self.inverse.pow(x.stage).mul_vec(&x.vector)
    }

    pub fn group(&self) -> &StationaryDimensionGroup {
        &self.group
    }

    /// `Some(mu)` with `f_target(phi v) = mu f_self(v)` for all `v`, if such
    /// a scalar exists.
    pub fn scaling(&self, target: &Rank2Order, phi: &IntMatrix) -> Option<QuadNum> {
        if phi.shape() != (2, 2) || self.theta.d() != target.theta.d() {
            return None;
        }
        let e0 = [BigInt::one(), BigInt::zero()];
        let e1 = [BigInt::zero(), BigInt::one()];
        let mu = target
            .functional(&phi.mul_vec(&e0))
            .div(&self.functional(&e0));
        let rhs = mu.mul(&self.functional(&e1));
        (target.functional(&phi.mul_vec(&e1)) == rhs).then_some(mu)
    }

    /// Whether `phi` (on stage-0 coordinates) is an order isomorphism
    /// `DG(A_self) -> DG(A_target)`.
    pub fn is_order_isomorphism(&self, target: &Rank2Order, phi: &IntMatrix) -> bool {
        phi.shape() == (2, 2)
            && phi.determinant().abs().is_one()
            && self.scaling(target, phi).is_some_and(|mu| mu.is_positive())
    }

    /// Linear map realising the Möbius relation `theta_t = N . theta_s`.
    fn map_from_mobius(&self, n: &IntMatrix) -> Result<IntMatrix> {
        let (p, q, r, s) = (&n[(0, 0)], &n[(0, 1)], &n[(1, 0)], &n[(1, 1)]);
        let m = IntMatrix::from_vec(2, 2, vec![s.clone(), q.clone(), r.clone(), p.clone()]);
        let phi = inverse_2x2(&m)?;
        let denom = QuadNum::integer(r.clone())
            .mul(&self.theta.to_quad())
            .add(&QuadNum::integer(s.clone()));
        Ok(if denom.is_positive() { phi } else { phi.neg() })
    }

    /// An order isomorphism onto `target`, if one exists.
    pub fn order_isomorphism(&self, target: &Rank2Order) -> Result<Option<IntMatrix>> {
        match gl2_equivalence(&self.theta, &target.theta) {
            Some(n) => Ok(Some(self.map_from_mobius(&n)?)),
            None => Ok(None),
        }
    }

    /// Generator of the group of order automorphisms, scaling by a factor
    /// greater than one.
    pub fn automorphism_generator(&self) -> Result<IntMatrix> {
        let cf = cf_expansion(&self.theta);
        // theta = M_pre . x and x = M_per . x
        let pre = convergent_matrix(&cf.preperiod);
        let per = convergent_matrix(&cf.period);
        let n = &(&pre * &per) * &inverse_2x2(&pre)?;
        debug_assert_eq!(
            mobius_apply(&n, &self.theta.to_quad()),
            self.theta.to_quad()
        );
        let g = self.map_from_mobius(&n)?;
        let mu = self
            .scaling(self, &g)
            .ok_or_else(|| Error::Internal("stabilizer does not scale the functional".into()))?;
        if mu.cmp_value(&QuadNum::integer(1)) == Ordering::Less {
            inverse_2x2(&g)
        } else {
            Ok(g)
        }
    }
}
