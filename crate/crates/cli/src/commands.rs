use std::path::Path;

use kclass::dimgroup::cf::{cf_expansion, gl2_equivalence};
use kclass::dimgroup::quadratic::QuadraticIrrational;
use kclass::dimgroup::{
    compare_scaled_invariants, compare_substitution_invariants, ScaledInvariant,
    SubstitutionInvariant,
};
use kclass::matrix::json_int;
use kclass::{
    compare_graphs, decide_iso_one_ideal_bounded, ext1, graph_ktheory, group_from_matrix,
    hereditary_saturated_sets, one_ideal_invariant, snf as smith, validate_sixterm, DirectedGraph,
    Error, FgAbelianGroup, IntMatrix, IsoVerdict, SixTermInvariant,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

/// Default search budget for dimension group comparisons.
pub const DEFAULT_DG_BOUND: usize = 64;

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Unsupported(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Unsupported(m) | Failure::Internal(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Unsupported(_) => "unsupported",
            Failure::Internal(_) => "internal",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.message(), "exit_code": self.code() } })
    }
}

/// Errors raised while computing on input that parsed cleanly.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::Invalid(_) => Failure::Unsupported(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

fn load_sixterm(path: &Path) -> Result<SixTermInvariant, Failure> {
    let s: SixTermInvariant = load(path)?;
    let violations = validate_sixterm(&s);
    if let Some(v) = violations.first() {
        return Err(Failure::Parse(format!(
            "{}: not a valid six-term invariant: {v}",
            path.display()
        )));
    }
    Ok(s)
}

pub fn snf(path: &Path) -> Result<Value, Failure> {
    let m: IntMatrix = load(path)?;
    let s = smith(&m);
    Ok(json!({
        "u": to_json(&s.u),
        "d": to_json(&s.d),
        "v": to_json(&s.v),
        "rank": s.rank(),
        "invariant_factors": s.invariant_factors().iter().map(json_int::to_number).collect::<Vec<_>>(),
        "cokernel": to_json(&group_from_matrix(&m)),
    }))
}

pub fn ext(a: &Path, b: &Path) -> Result<Value, Failure> {
    let a: FgAbelianGroup = load(a)?;
    let b: FgAbelianGroup = load(b)?;
    let e = ext1(&a, &b);
    Ok(json!({
        "group": to_json(&e),
        "order": e.order().map(|o| json_int::to_number(&o)),
    }))
}

pub fn graph_kth(path: &Path) -> Result<Value, Failure> {
    let g: DirectedGraph = load(path)?;
    Ok(to_json(&graph_ktheory(&g)))
}

pub fn graph_ideals(path: &Path) -> Result<Value, Failure> {
    let g: DirectedGraph = load(path)?;
    let sets = hereditary_saturated_sets(&g)?;
    let listed: Vec<Value> = sets
        .iter()
        .map(|d| json!({ "vertices": d.names(&g), "trivial": d.is_trivial(&g) }))
        .collect();
    let nontrivial = sets.iter().filter(|d| !d.is_trivial(&g)).count();
    Ok(json!({ "hereditary_saturated": listed, "nontrivial": nontrivial }))
}

pub fn graph_invariant(path: &Path) -> Result<Value, Failure> {
    let g: DirectedGraph = load(path)?;
    let s = one_ideal_invariant(&g)?;
    let violations = validate_sixterm(&s);
    Ok(json!({
        "invariant": to_json(&s),
        "valid": violations.is_empty(),
        "violations": to_json(&violations),
    }))
}

pub fn graph_compare(p1: &Path, p2: &Path) -> Result<Value, Failure> {
    let g1: DirectedGraph = load(p1)?;
    let g2: DirectedGraph = load(p2)?;
    Ok(to_json(&compare_graphs(&g1, &g2)?))
}

pub fn sixterm_check(path: &Path) -> Result<Value, Failure> {
    let s: SixTermInvariant = load(path)?;
    let violations = validate_sixterm(&s);
    Ok(json!({ "valid": violations.is_empty(), "violations": to_json(&violations) }))
}

pub fn sixterm_compare(p1: &Path, p2: &Path, bound: usize) -> Result<Value, Failure> {
    let s1 = load_sixterm(p1)?;
    let s2 = load_sixterm(p2)?;
    Ok(to_json(&decide_iso_one_ideal_bounded(&s1, &s2, bound)?))
}

pub fn subst_compare(p1: &Path, p2: &Path, bound: usize) -> Result<Value, Failure> {
    let i1: SubstitutionInvariant = load(p1)?;
    let i2: SubstitutionInvariant = load(p2)?;
    Ok(to_json(&compare_substitution_invariants(&i1, &i2, bound)?))
}

pub fn scaled_compare(p1: &Path, p2: &Path, bound: usize) -> Result<Value, Failure> {
    let s1: ScaledInvariant = load(p1)?;
    let s2: ScaledInvariant = load(p2)?;
    Ok(to_json(&compare_scaled_invariants(&s1, &s2, bound)?))
}

fn parse_irrational(s: &str) -> Result<QuadraticIrrational, Failure> {
    s.parse().map_err(|e| Failure::Parse(format!("{s:?}: {e}")))
}

/// Witness: a matrix `N` in `GL(2, Z)` with `beta = N . alpha`.
pub fn sturmian_compare(alpha: &str, beta: &str) -> Result<Value, Failure> {
    let a = parse_irrational(alpha)?;
    let b = parse_irrational(beta)?;
    let verdict = match gl2_equivalence(&a, &b) {
        Some(n) => IsoVerdict::Isomorphic { witness: n },
        None if a.d() != b.d() => IsoVerdict::not_isomorphic(format!(
            "{a} lies in Q(sqrt {}) and {b} in Q(sqrt {})",
            a.d(),
            b.d()
        )),
        None => {
            let (ca, cb) = (cf_expansion(&a), cf_expansion(&b));
            let show = |p: &[num_bigint::BigInt]| {
                p.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            IsoVerdict::not_isomorphic(format!(
                "continued fraction periods [{}] and [{}] are not rotations of each other",
                show(&ca.period),
                show(&cb.period)
            ))
        }
    };
    Ok(to_json(&verdict))
}
