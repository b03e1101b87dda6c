//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails. Run with `cargo test -p kclass-cli --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use kclass::dimgroup::cf::mobius_apply;
use kclass::dimgroup::quadratic::QuadraticIrrational;
use kclass::dimgroup::sturmian_equivalent;
use kclass::graph::nontrivial_ideals;
use kclass::{
    decide_iso_one_ideal, ext1, one_ideal_invariant, snf, validate_sixterm, verify_witness, Error,
    FgAbelianGroup, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli_verdict(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kclass"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    v["verdict"]
        .as_str()
        .map(String::from)
        .ok_or_else(|| format!("{args:?} printed no verdict"))
}

fn expect_verdicts(cases: &[(&str, &str, &str, &str)]) -> Outcome {
    for (sub, a, b, want) in cases {
        let got = cli_verdict(&[sub, "compare", &data(a), &data(b)])?;
        if got != *want {
            return Err(format!("{a} vs {b}: {got}, expected {want}"));
        }
    }
    Ok(format!("{} comparisons as expected", cases.len()))
}

fn printed_sequences() -> Outcome {
    expect_verdicts(&[
        (
            "sixterm",
            "sequence_1.json",
            "sequence_2.json",
            "isomorphic",
        ),
        (
            "sixterm",
            "sequence_1.json",
            "sequence_3.json",
            "not_isomorphic",
        ),
        (
            "sixterm",
            "sequence_2.json",
            "sequence_3.json",
            "not_isomorphic",
        ),
    ])
}

fn scaled_groups() -> Outcome {
    expect_verdicts(&[
        (
            "scaled",
            "golden_scale_a.json",
            "golden_scale_b.json",
            "isomorphic",
        ),
        (
            "scaled",
            "golden_scale_a.json",
            "perturbed_scale.json",
            "not_isomorphic",
        ),
        (
            "scaled",
            "golden_scale_b.json",
            "perturbed_scale.json",
            "not_isomorphic",
        ),
    ])
}

/// Search for `[[p, q], [r, s]]`, entries at most `bound`, `|ps - qr| = 1`
/// and `p alpha + q = beta (r alpha + s)`. Both numbers are written over
/// the same `sqrt d`; comparing the rational and irrational parts fixes `s`
/// and then `q` for each `(p, r)`.
fn brute_force(alpha: &QuadraticIrrational, beta: &QuadraticIrrational, bound: i128) -> bool {
    if alpha.d() != beta.d() {
        return false;
    }
    let g = |x: &BigInt| x.to_i128().unwrap();
    let (a1, b1, c1, d) = (g(alpha.a()), g(alpha.b()), g(alpha.c()), g(alpha.d()));
    let (a2, b2, c2) = (g(beta.a()), g(beta.b()), g(beta.c()));
    for p in -bound..=bound {
        for r in -bound..=bound {
            let s_num = p * c2 * b1 - r * (a2 * b1 + b2 * a1);
            if s_num % (b2 * c1) != 0 {
                continue;
            }
            let s = s_num / (b2 * c1);
            let q_num = r * (a2 * a1 + b2 * b1 * d) + s * a2 * c1 - p * c2 * a1;
            if q_num % (c1 * c2) != 0 {
                continue;
            }
            let q = q_num / (c1 * c2);
            if q.abs() <= bound && s.abs() <= bound && (p * s - q * r).abs() == 1 {
                return true;
            }
        }
    }
    false
}

fn sturmian_sample() -> Outcome {
    let mut rng = rng(2024);
    let fields = [2, 3, 5, 7, 13];
    let mut equivalent = 0;
    for i in 0..20 {
        let d = fields[i % 5];
        let alpha = QuadraticIrrational::new(
            rng.gen_range(-4..=4),
            rng.gen_range(1..=2),
            rng.gen_range(1..=3),
            d,
        )
        .map_err(|e| e.to_string())?;
        let beta = if i % 2 == 0 {
            let m = random_unimodular(&mut rng, 2);
            QuadraticIrrational::from_quad(&mobius_apply(&m, &alpha.to_quad()))
                .map_err(|e| e.to_string())?
        } else {
            QuadraticIrrational::new(
                rng.gen_range(-4..=4),
                rng.gen_range(1..=2),
                rng.gen_range(1..=3),
                d,
            )
            .map_err(|e| e.to_string())?
        };
        let fast = sturmian_equivalent(&alpha, &beta);
        if fast != brute_force(&alpha, &beta, 50) {
            return Err(format!(
                "{alpha} vs {beta}: decision {fast}, oracle {}",
                !fast
            ));
        }
        equivalent += fast as usize;
    }
    Ok(format!("20/20 agree, {equivalent} equivalent"))
}

fn graph_exactness() -> Outcome {
    let mut rng = rng(4646);
    let (mut checked, mut unsupported, mut drawn) = (0, 0, 0);
    while checked < 200 {
        drawn += 1;
        let g = random_graph(&mut rng, 6, 3);
        if nontrivial_ideals(&g).map_err(|e| e.to_string())?.len() != 1 {
            continue;
        }
        match one_ideal_invariant(&g) {
            Ok(s) => {
                let v = validate_sixterm(&s);
                if !v.is_empty() {
                    return Err(format!("graph {:?}: {}", g.adjacency(), v[0]));
                }
                checked += 1;
            }
            Err(Error::Unsupported(_)) => unsupported += 1,
            Err(e) => return Err(format!("graph {:?}: {e}", g.adjacency())),
        }
    }
    Ok(format!(
        "200/200 exact ({drawn} graphs drawn, {unsupported} one-ideal graphs outside the supported class)"
    ))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            g = g.gcd(&m.submatrix(&rows, &cols).determinant());
        }
    }
    g
}

fn algebra_core() -> Outcome {
    let mut rng = rng(55);
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random_matrix(&mut rng, r, c, -9, 9);
        let s = snf(&m);
        if &(&s.u * &m) * &s.v != s.d {
            return Err(format!("U M V != D for {m}"));
        }
        if !s.u.determinant().abs().is_one() || !s.v.determinant().abs().is_one() {
            return Err(format!("transforms not unimodular for {m}"));
        }
        let diag = s.diagonal();
        let off_diagonal = (0..r).any(|i| (0..c).any(|j| i != j && !s.d[(i, j)].is_zero()));
        if off_diagonal
            || diag
                .windows(2)
                .any(|w| !w[1].is_zero() && !w[1].is_multiple_of(&w[0]))
        {
            return Err(format!("D is not in Smith form for {m}"));
        }
        let mut prod = BigInt::one();
        for (k, x) in diag.iter().enumerate() {
            prod *= x;
            if prod.abs() != minor_gcd(&m, k + 1) {
                return Err(format!("minor gcd mismatch at k = {} for {m}", k + 1));
            }
        }
    }
    for m in 1..=12i64 {
        for n in 1..=12i64 {
            let multiples: std::collections::HashSet<i64> = (0..n).map(|x| (m * x) % n).collect();
            let oracle = n / multiples.len() as i64;
            let cyclic = |k: i64| {
                if k == 1 {
                    FgAbelianGroup::trivial()
                } else {
                    FgAbelianGroup::cyclic(k)
                }
            };
            let order = ext1(&cyclic(m), &cyclic(n)).order();
            if order != Some(BigInt::from(oracle)) || oracle != m.gcd(&n) {
                return Err(format!("|Ext(Z/{m}, Z/{n})| = {order:?}, oracle {oracle}"));
            }
        }
    }
    Ok("100 Smith forms certified, 144 Ext orders match".into())
}

fn decision_hygiene() -> Outcome {
    let mut rng = rng(606);
    let corpus: Vec<_> = (0..100).map(|_| random_sixterm(&mut rng, 36)).collect();
    let check = |a, b, v: &kclass::IsoVerdict<kclass::SixTermMorphism>| match v.witness() {
        Some(w) if !verify_witness(a, b, w) => Err(format!("witness rejected for {a:?} vs {b:?}")),
        _ => Ok(()),
    };
    let mut isomorphic = 0;
    for (i, a) in corpus.iter().enumerate() {
        let v = decide_iso_one_ideal(a, a).map_err(|e| e.to_string())?;
        if !v.is_isomorphic() {
            return Err(format!("{a:?} not isomorphic to itself: {v:?}"));
        }
        check(a, a, &v)?;
        for b in &corpus[i + 1..] {
            let ab = decide_iso_one_ideal(a, b).map_err(|e| e.to_string())?;
            let ba = decide_iso_one_ideal(b, a).map_err(|e| e.to_string())?;
            if ab.label() != ba.label() {
                return Err(format!(
                    "asymmetric verdicts {} / {} for {a:?} vs {b:?}",
                    ab.label(),
                    ba.label()
                ));
            }
            check(a, b, &ab)?;
            check(b, a, &ba)?;
            isomorphic += ab.is_isomorphic() as usize;
        }
    }
    let finite: Vec<_> = (0..40).map(|_| random_finite_sixterm(&mut rng)).collect();
    for (i, a) in finite.iter().enumerate() {
        for b in &finite[i..] {
            let v = decide_iso_one_ideal(a, b).map_err(|e| e.to_string())?;
            if v.is_unknown() {
                return Err(format!("unknown on finite groups: {a:?} vs {b:?}"));
            }
            check(a, b, &v)?;
        }
    }
    Ok(format!(
        "100 reflexive, 4950 pairs symmetric ({isomorphic} isomorphic), 820 finite pairs decided"
    ))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            name: "printed six-term sequences",
            limit: Some(Duration::from_secs(1)),
            run: printed_sequences,
        },
        Criterion {
            name: "scaled dimension groups",
            limit: Some(Duration::from_secs(1)),
            run: scaled_groups,
        },
        Criterion {
            name: "Sturmian decision vs brute force",
            limit: Some(Duration::from_secs(5)),
            run: sturmian_sample,
        },
        Criterion {
            name: "graph invariants are exact",
            limit: Some(Duration::from_secs(30)),
            run: graph_exactness,
        },
        Criterion {
            name: "Smith form and Ext orders",
            limit: Some(Duration::from_secs(10)),
            run: algebra_core,
        },
        Criterion {
            name: "decision procedure hygiene",
            limit: None,
            run: decision_hygiene,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let limit = c
            .limit
            .map_or(String::new(), |l| format!(", limit {:?}", l));
        let line = match (&outcome, c.limit) {
            (Err(e), _) => format!("FAIL {}: {} [{e}] ({took:.2?}{limit})", i + 1, c.name),
            (Ok(_), Some(l)) if took > l => {
                format!("FAIL {}: {} [too slow] ({took:.2?}{limit})", i + 1, c.name)
            }
            (Ok(detail), _) => format!("PASS {}: {} [{detail}] ({took:.2?}{limit})", i + 1, c.name),
        };
        failed += line.starts_with("FAIL") as usize;
        println!("{line}");
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
