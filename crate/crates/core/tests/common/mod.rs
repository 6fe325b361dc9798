//! Oracles and fixtures shared by the integration tests. Nothing here uses
//! stabilizer chains: groups are enumerated by closure and minimal generating
//! sets are found by exhaustive search.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use arcgen::perm::Perm;
use arcgen::pipeline::{Bundle, ConstructionParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const C5_DIHEDRAL: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n\n1 2 3 4 0\n0 4 3 2 1\n";
pub const C5_BAD_GENERATOR: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n\n0 2 1 3 4\n1 2 3 4 0\n";

/// A permutation group given only by degree and generators.
#[derive(Clone, Debug)]
pub struct Gens {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<Perm>,
}

fn cycles(n: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(n, cs).unwrap()
}

pub fn cyclic(n: usize) -> Gens {
    Gens { name: format!("C{n}"), degree: n, gens: vec![Perm::from_fn(n, |x| (x + 1) % n).unwrap()] }
}

pub fn dihedral(n: usize) -> Gens {
    let rot = Perm::from_fn(n, |x| (x + 1) % n).unwrap();
    let refl = Perm::from_fn(n, |x| (n - x) % n).unwrap();
    Gens { name: format!("D{}", 2 * n), degree: n, gens: vec![rot, refl] }
}

/// Q8 in its regular representation: elements ±1, ±i, ±j, ±k indexed 0..8
/// as (sign, unit) with unit order 1, i, j, k.
pub fn quaternion() -> Gens {
    let table = [[0, 1, 2, 3], [1, 4, 3, 6], [2, 7, 4, 1], [3, 2, 5, 4]];
    // table[u][v] = unit of u*v plus 4 if the sign is negative, for units u, v
    let mul = |x: usize, y: usize| {
        let (sx, ux) = (x / 4, x % 4);
        let (sy, uy) = (y / 4, y % 4);
        let t = table[ux][uy];
        let sign = (sx + sy + t / 4) % 2;
        sign * 4 + t % 4
    };
    let gi = Perm::from_fn(8, |x| mul(x, 1)).unwrap();
    let gj = Perm::from_fn(8, |x| mul(x, 2)).unwrap();
    Gens { name: "Q8".into(), degree: 8, gens: vec![gi, gj] }
}

pub fn elementary_abelian(k: usize) -> Gens {
    let n = 2 * k;
    let gens = (0..k).map(|i| cycles(n, &[&[2 * i, 2 * i + 1]])).collect();
    Gens { name: format!("C2^{k}"), degree: n, gens }
}

/// C2 wr C2 wr C2, a Sylow 2-subgroup of S8 (order 128).
pub fn sylow_s8() -> Gens {
    Gens {
        name: "Syl2(S8)".into(),
        degree: 8,
        gens: vec![
            cycles(8, &[&[0, 1]]),
            cycles(8, &[&[0, 2], &[1, 3]]),
            cycles(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]]),
        ],
    }
}

pub fn direct_product(a: &Gens, b: &Gens) -> Gens {
    let n = a.degree + b.degree;
    let lift = |g: &Perm, offset: usize, len: usize| {
        Perm::from_fn(n, |x| if x >= offset && x < offset + len { g.apply(x - offset) + offset } else { x }).unwrap()
    };
    let gens =
        a.gens.iter().map(|g| lift(g, 0, a.degree)).chain(b.gens.iter().map(|g| lift(g, a.degree, b.degree))).collect();
    Gens { name: format!("{}x{}", a.name, b.name), degree: n, gens }
}

pub fn family_groups(p: u32, h: u32) -> (Gens, Gens) {
    let b = Bundle::assemble(ConstructionParams::new(p, h).unwrap()).unwrap();
    let n = b.vertex_count();
    (
        Gens { name: format!("small({p},{h})"), degree: n, gens: b.small_group.generators().to_vec() },
        Gens { name: format!("big({p},{h})"), degree: n, gens: b.big_group.generators().to_vec() },
    )
}

/// Subgroups of the Sylow 2-subgroup of S8 generated by random elements.
pub fn random_sylow_subgroups(count: usize, seed: u64) -> Vec<Gens> {
    let all = enumerate(&sylow_s8());
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let m = rng.gen_range(1..=3);
            let gens = (0..m).map(|_| all[rng.gen_range(0..all.len())].clone()).collect();
            Gens { name: format!("random{k}"), degree: 8, gens }
        })
        .collect()
}

/// All 2-groups used by the oracle comparison, every one of order <= 2^10.
pub fn oracle_two_groups() -> Vec<Gens> {
    let (small21, big21) = family_groups(2, 1);
    let mut v = vec![
        Gens { name: "trivial".into(), degree: 3, gens: vec![] },
        cyclic(2),
        cyclic(8),
        elementary_abelian(2),
        elementary_abelian(5),
        dihedral(4),
        dihedral(8),
        quaternion(),
        direct_product(&cyclic(4), &cyclic(2)),
        direct_product(&cyclic(4), &cyclic(4)),
        direct_product(&quaternion(), &cyclic(2)),
        sylow_s8(),
        direct_product(&big21, &elementary_abelian(2)),
        direct_product(&sylow_s8(), &dihedral(4)),
        small21,
        big21,
    ];
    v.extend(random_sylow_subgroups(12, 7));
    v
}

/// Every element, by breadth-first closure under right multiplication.
pub fn enumerate(g: &Gens) -> Vec<Perm> {
    let id = Perm::identity(g.degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &g.gens {
            let y = x.compose(s);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

type Bits = Vec<u64>;

/// Smallest k such that some k elements generate the group, by a level-wise
/// search over the subgroups generated by k elements.
pub fn min_generators_brute(g: &Gens) -> usize {
    let elems = enumerate(g);
    let n = elems.len();
    if n == 1 {
        return 0;
    }
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let table: Vec<Vec<u32>> =
        elems.iter().map(|x| elems.iter().map(|y| index[&x.compose(y)] as u32).collect()).collect();
    let words = n.div_ceil(64);
    let closure = |gens: &[usize]| -> Bits {
        let mut bits = vec![0u64; words];
        bits[0] |= 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = table[x][s] as usize;
                if bits[y / 64] >> (y % 64) & 1 == 0 {
                    bits[y / 64] |= 1 << (y % 64);
                    queue.push_back(y);
                }
            }
        }
        bits
    };
    let count = |b: &Bits| b.iter().map(|w| w.count_ones() as usize).sum::<usize>();

    let mut level: Vec<(Bits, Vec<usize>)> = vec![(closure(&[]), vec![])];
    let mut seen: HashSet<Bits> = level.iter().map(|(b, _)| b.clone()).collect();
    for k in 1.. {
        let mut next = Vec::new();
        for (sub, gens) in &level {
            // ⟨K, x⟩ = ⟨K, kx⟩ for k ∈ K, so one x per right coset suffices.
            let members: Vec<usize> = (0..n).filter(|&y| sub[y / 64] >> (y % 64) & 1 == 1).collect();
            let mut covered = sub.clone();
            for x in 0..n {
                if covered[x / 64] >> (x % 64) & 1 == 1 {
                    continue;
                }
                for &k in &members {
                    let y = table[k][x] as usize;
                    covered[y / 64] |= 1 << (y % 64);
                }
                let mut extended = gens.clone();
                extended.push(x);
                let bits = closure(&extended);
                if count(&bits) == n {
                    return k;
                }
                if seen.insert(bits.clone()) {
                    next.push((bits, extended));
                }
            }
        }
        level = next;
    }
    unreachable!()
}
