#![allow(dead_code)]

use kclass::sixterm::{K0_A, K0_B, MAP_ENDS};
use kclass::{
    aut_plus_generators, triangular_hexagon, ConeDescriptor, Cones, DirectedGraph, FgAbelianGroup,
    GroupHom, IntMatrix, SixTermInvariant,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
        .collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// Product of random elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => m.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-2..=2))),
            1 => m.swap_rows(i, j),
            _ => m.negate_row(i),
        }
    }
    m
}

/// A random finitely generated group with bounded rank and torsion.
pub fn random_group(rng: &mut ChaCha8Rng, max_rank: usize, max_order: i64) -> FgAbelianGroup {
    let rank = rng.gen_range(0..=max_rank);
    let mut moduli = Vec::new();
    let mut order = 1;
    for _ in 0..rng.gen_range(0..=2) {
        let d = rng.gen_range(2..=6);
        if order * d <= max_order {
            order *= d;
            moduli.push(BigInt::from(d));
        }
    }
    FgAbelianGroup::from_cyclic_factors(rank, &moduli)
}

/// A random homomorphism: column `j` is a random vector scaled so that the
/// order of generator `j` kills it.
pub fn random_hom(rng: &mut ChaCha8Rng, dom: &FgAbelianGroup, cod: &FgAbelianGroup) -> GroupHom {
    let mut m = IntMatrix::zeros(cod.num_generators(), dom.num_generators());
    for j in 0..dom.num_generators() {
        let dj = dom.generator_order(j);
        for i in 0..cod.num_generators() {
            let ci = cod.generator_order(i);
            let step = if ci.is_zero() && dj.is_zero() {
                BigInt::from(1)
            } else {
                &ci / ci.gcd(&dj)
            };
            m[(i, j)] = step * rng.gen_range(-3..=3);
        }
    }
    GroupHom::new(dom.clone(), cod.clone(), m).expect("well defined by construction")
}

/// A random word in the order automorphism generators.
pub fn random_aut(rng: &mut ChaCha8Rng, g: &FgAbelianGroup, cone: &ConeDescriptor) -> GroupHom {
    let gens = aut_plus_generators(g, cone).expect("supported cone");
    let mut h = GroupHom::identity(g);
    for _ in 0..rng.gen_range(0..6) {
        let s = gens.choose(rng).unwrap();
        let s = if rng.gen_bool(0.5) {
            s.clone()
        } else {
            s.inverse().unwrap()
        };
        h = s.compose(&h).unwrap();
    }
    h
}

/// Swap the two rows of a six-term sequence; the result is again exact.
pub fn rotate(s: &SixTermInvariant) -> SixTermInvariant {
    let nodes = std::array::from_fn(|i| s.node(5 - i).clone());
    let maps = std::array::from_fn(|k| s.map_matrix((k + 3) % 6).clone());
    let cones = Cones {
        k0_b: ConeDescriptor::AllPositive,
        k0_e: ConeDescriptor::Unordered,
        k0_a: ConeDescriptor::AllPositive,
    };
    SixTermInvariant::new(nodes, maps, cones)
}

fn small_enough(s: &SixTermInvariant, max_order: i64) -> bool {
    s.nodes().iter().all(|g| {
        let t: BigInt = g.torsion().iter().product();
        g.free_rank() <= 2 && t <= BigInt::from(max_order)
    })
}

/// A random valid six-term invariant with groups of rank at most 2 and
/// torsion of order at most `max_order`, built from a block triangular
/// two-term complex and possibly rotated.
pub fn random_sixterm(rng: &mut ChaCha8Rng, max_order: i64) -> SixTermInvariant {
    loop {
        let nh = rng.gen_range(0..=2);
        let nq = rng.gen_range(0..=2);
        let rh = rng.gen_range(0..=nh);
        let rq = rng.gen_range(0..=nq);
        let mh = random_matrix(rng, nh, rh, -3, 3);
        let mq = random_matrix(rng, nq, rq, -3, 3);
        let x = random_matrix(rng, nh, rq, -2, 2);
        let s = triangular_hexagon(&mh, &x, &mq).expect("hexagon of a complex is exact");
        let s = if rng.gen_bool(0.5) { rotate(&s) } else { s };
        if small_enough(&s, max_order) {
            return s;
        }
    }
}

/// Tiny finite sequences found by rejection, so that both connecting maps
/// can be nonzero on torsion groups.
pub fn random_finite_sixterm(rng: &mut ChaCha8Rng) -> SixTermInvariant {
    let choices: [&[i64]; 5] = [&[], &[2], &[3], &[4], &[2, 2]];
    loop {
        let nodes: [FgAbelianGroup; 6] = std::array::from_fn(|_| {
            let t = choices.choose(rng).unwrap();
            FgAbelianGroup::from_cyclic_factors(
                0,
                &t.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(),
            )
        });
        let maps: [IntMatrix; 6] = std::array::from_fn(|k| {
            let (s, t) = MAP_ENDS[k];
            random_hom(rng, &nodes[s], &nodes[t]).matrix().clone()
        });
        let cones = Cones {
            k0_b: ConeDescriptor::AllPositive,
            k0_e: ConeDescriptor::Unordered,
            k0_a: ConeDescriptor::AllPositive,
        };
        let s = SixTermInvariant::new(nodes, maps, cones);
        if s.is_valid() && !s.nodes().iter().all(|g| g.is_trivial()) {
            return s;
        }
    }
}

/// Order automorphisms of every node, in node order.
pub fn random_order_automorphisms(rng: &mut ChaCha8Rng, s: &SixTermInvariant) -> [GroupHom; 6] {
    std::array::from_fn(|i| {
        let cone = if i == K0_B || i == K0_A {
            s.cone(i).clone()
        } else {
            ConeDescriptor::Unordered
        };
        random_aut(rng, s.node(i), &cone)
    })
}

/// Random graph on at most `max_vertices` vertices with edge counts in
/// `0..=max_edges`.
pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: i64) -> DirectedGraph {
    let n = rng.gen_range(1..=max_vertices);
    // sparse rows keep sinks and hereditary sets common
    let data = (0..n * n)
        .map(|_| {
            if rng.gen_bool(0.55) {
                BigInt::zero()
            } else {
                BigInt::from(rng.gen_range(1..=max_edges))
            }
        })
        .collect();
    DirectedGraph::from_adjacency(IntMatrix::from_vec(n, n, data)).unwrap()
}

/// Random graphs with exactly one nontrivial ideal whose invariant can be
/// built, skipping graphs outside that class.
pub fn one_ideal_corpus(seed: u64, count: usize, max_vertices: usize) -> Vec<DirectedGraph> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = random_graph(&mut rng, max_vertices, 3);
        if kclass::graph::nontrivial_ideals(&g).unwrap().len() != 1 {
            continue;
        }
        match kclass::one_ideal_invariant(&g) {
            Ok(_) => out.push(g),
            Err(kclass::Error::Unsupported(_)) => continue,
            Err(e) => panic!("graph {:?}: {e}", g.adjacency()),
        }
    }
    out
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
