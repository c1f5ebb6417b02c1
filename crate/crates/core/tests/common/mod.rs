#![allow(dead_code)]

use langconvex::{Alphabet, Dfa};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn binary() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

/// Every complete binary DFA with `n` states and start state 0.
pub fn all_dfas(n: usize) -> Vec<Dfa> {
    let cells = 2 * n;
    let mut out = Vec::new();
    let tables = n.pow(cells as u32);
    for t in 0..tables {
        let mut code = t;
        let delta: Vec<usize> = (0..cells)
            .map(|_| {
                let q = code % n;
                code /= n;
                q
            })
            .collect();
        for mask in 0..1usize << n {
            let acc: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
            out.push(Dfa::new(binary(), n, 0, &acc, delta.clone()).unwrap());
        }
    }
    out
}

pub fn random_dfa(rng: &mut ChaCha8Rng, n: usize) -> Dfa {
    let delta: Vec<usize> = (0..2 * n).map(|_| rng.gen_range(0..n)).collect();
    let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(binary(), n, 0, &acc, delta).unwrap()
}

pub fn random_dfas(seed: u64, n: usize, count: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dfa(&mut rng, n)).collect()
}
