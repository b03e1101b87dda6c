//! Continued fractions of quadratic irrationals and `GL(2, Z)` equivalence.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::quadratic::{is_square, isqrt, squarefree_split, QuadNum, QuadraticIrrational};
use crate::error::{Error, Result};
use crate::matrix::{json_int, IntMatrix};

/// Eventually periodic expansion `[pre_0; pre_1, ..., (period)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    #[serde(with = "json_int::vec")]
    pub preperiod: Vec<BigInt>,
    #[serde(with = "json_int::vec")]
    pub period: Vec<BigInt>,
}

/// Exact continued fraction of a quadratic irrational.
pub fn cf_expansion(alpha: &QuadraticIrrational) -> ContinuedFraction {
    // alpha = (P + sqrt D) / Q with Q | D - P^2
    let (mut a, mut b, mut c) = (alpha.a().clone(), alpha.b().clone(), alpha.c().clone());
    if b.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    let abs_c = c.abs();
    let big_d = &b * &b * alpha.d() * &abs_c * &abs_c;
    let mut p = &a * &abs_c;
    let mut q = &c * &abs_c;
    let s = isqrt(&big_d);

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = terms.split_off(start);
            return ContinuedFraction {
                preperiod: terms,
                period,
            };
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        let t = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            (&p + &s + BigInt::one()).div_floor(&q)
        };
        let p_next = &t * &q - &p;
        let q_next = (&big_d - &p_next * &p_next) / &q;
        terms.push(t);
        p = p_next;
        q = q_next;
    }
}

/// `[[a, 1], [1, 0]]`, the Möbius matrix of `x -> a + 1/x`.
fn step(a: &BigInt) -> IntMatrix {
    IntMatrix::from_vec(
        2,
        2,
        vec![a.clone(), BigInt::one(), BigInt::one(), BigInt::zero()],
    )
}

/// Product of the step matrices of `terms`.
pub fn convergent_matrix(terms: &[BigInt]) -> IntMatrix {
    terms
        .iter()
        .fold(IntMatrix::identity(2), |m, a| &m * &step(a))
}

/// `(p x + q) / (r x + s)` for `m = [[p, q], [r, s]]`.
pub fn mobius_apply(m: &IntMatrix, x: &QuadNum) -> QuadNum {
    let e = |i, j| QuadNum::integer(m[(i, j)].clone());
    let num = e(0, 0).mul(x).add(&e(0, 1));
    let den = e(1, 0).mul(x).add(&e(1, 1));
    num.div(&den)
}

/// Inverse of a 2x2 integer matrix with determinant `+-1`.
pub fn inverse_2x2(m: &IntMatrix) -> Result<IntMatrix> {
    let det = m.determinant();
    if !det.abs().is_one() {
        return Err(Error::Invalid("matrix is not in GL(2, Z)".into()));
    }
    let adj = IntMatrix::from_vec(
        2,
        2,
        vec![
            m[(1, 1)].clone(),
            -&m[(0, 1)],
            -&m[(1, 0)],
            m[(0, 0)].clone(),
        ],
    );
    Ok(adj.scale(&det))
}

/// Value of an eventually periodic continued fraction, as an exact
/// quadratic irrational. The field is found by factoring the discriminant
/// of the period, which is slow for long periods; see [`cf_value_in`].
pub fn cf_value(cf: &ContinuedFraction) -> Result<QuadNum> {
    let (_, disc) = tail_equation(cf)?;
    let (_, d) = squarefree_split(&disc);
    cf_value_in(cf, &d)
}

/// Value of an eventually periodic continued fraction known to lie in
/// `Q(sqrt d)`.
pub fn cf_value_in(cf: &ContinuedFraction, d: &BigInt) -> Result<QuadNum> {
    let (m, disc) = tail_equation(cf)?;
    let (p, r, s) = (&m[(0, 0)], &m[(1, 0)], &m[(1, 1)]);
    let (f2, rem) = disc.div_rem(d);
    if !rem.is_zero() || !is_square(&f2) {
        return Err(Error::Invalid(format!(
            "continued fraction does not lie in Q(sqrt {d})"
        )));
    }
    // r x^2 + (s - p) x - q = 0, largest root (p - s + f sqrt d) / 2r
    let den = BigRational::from_integer(BigInt::from(2) * r);
    let x = QuadNum::new(
        BigRational::from_integer(p - s) / &den,
        BigRational::from_integer(isqrt(&f2)) / &den,
        d,
    );
    Ok(mobius_apply(&convergent_matrix(&cf.preperiod), &x))
}

// the purely periodic tail x satisfies x = M x
fn tail_equation(cf: &ContinuedFraction) -> Result<(IntMatrix, BigInt)> {
    if cf.period.is_empty() {
        return Err(Error::Invalid("empty period".into()));
    }
    let m = convergent_matrix(&cf.period);
    let (p, q, r, s) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
    let disc = (s - p) * (s - p) + BigInt::from(4) * r * q;
    Ok((m, disc))
}

fn rotation_offset(p1: &[BigInt], p2: &[BigInt]) -> Option<usize> {
    if p1.len() != p2.len() {
        return None;
    }
    let n = p1.len();
    (0..n).find(|&r| (0..n).all(|i| p1[(i + r) % n] == p2[i]))
}

/// A matrix `N` in `GL(2, Z)` with `beta = N . alpha` (as a Möbius map),
/// or `None` when the two numbers are not equivalent.
pub fn gl2_equivalence(
    alpha: &QuadraticIrrational,
    beta: &QuadraticIrrational,
) -> Option<IntMatrix> {
    if alpha.d() != beta.d() {
        return None;
    }
    let ca = cf_expansion(alpha);
    let cb = cf_expansion(beta);
    let r = rotation_offset(&ca.period, &cb.period)?;
    // alpha = M1 . y and beta = M2 . y for the same tail y
    let mut head = ca.preperiod.clone();
    head.extend(ca.period[..r].iter().cloned());
    let m1 = convergent_matrix(&head);
    let m2 = convergent_matrix(&cb.preperiod);
    Some(&m2 * &inverse_2x2(&m1).ok()?)
}

/// Whether `Z + alpha Z` and `Z + beta Z` are isomorphic as ordered
/// groups, that is whether the two numbers are `GL(2, Z)`-equivalent.
pub fn sturmian_equivalent(alpha: &QuadraticIrrational, beta: &QuadraticIrrational) -> bool {
    gl2_equivalence(alpha, beta).is_some()
}
