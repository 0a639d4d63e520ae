//! Randomized identity suites over `F_101` and the non-reduced ring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::random_vec3;
use crate::corpus;
use crate::geometry::{bracket, cross, fundamental_unit, solve_cross_multiple, Vec3};
use crate::ring::Ring;

pub const DEFAULT_SEED: u64 = 0x1c1d_e7ce;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub ring: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn x(a: &Vec3, b: &Vec3) -> Vec3 {
    cross(a, b).expect("same ring")
}

fn br(a: &Vec3, b: &Vec3, c: &Vec3) -> crate::ring::RingElement {
    bracket(a, b, c).expect("same ring")
}

fn suite(name: &str, ring: &Ring, cases: usize, mut case: impl FnMut(usize) -> Option<String>) -> SuiteResult {
    let failures = (0..cases).filter_map(&mut case).collect();
    SuiteResult { name: name.into(), ring: ring.to_string(), cases, failures }
}

/// `[s,t,P][v,w,Q] − [v,w,P][s,t,Q] = [P,Q,(s×t)×(v×w)]`.
pub fn triple_product_identity(ring: &Ring, cases: usize, rng: &mut impl Rng) -> SuiteResult {
    suite("triple product identity", ring, cases, |n| {
        let [s, t, v, w, p, q] = [(); 6].map(|_| random_vec3(ring, rng));
        let lhs = &(&br(&s, &t, &p) * &br(&v, &w, &q)) - &(&br(&v, &w, &p) * &br(&s, &t, &q));
        let rhs = br(&p, &q, &x(&x(&s, &t), &x(&v, &w)));
        (lhs != rhs).then(|| format!("case {n}: {lhs} ≠ {rhs}"))
    })
}

/// `(s×t)×(v×w) = [s,t,w]v − [s,t,v]w`.
pub fn lagrange_expansion(ring: &Ring, cases: usize, rng: &mut impl Rng) -> SuiteResult {
    suite("cross of crosses expansion", ring, cases, |n| {
        let [s, t, v, w] = [(); 4].map(|_| random_vec3(ring, rng));
        let lhs = x(&x(&s, &t), &x(&v, &w));
        let rhs = v.scale(&br(&s, &t, &w)).sub(&w.scale(&br(&s, &t, &v)));
        (lhs != rhs).then(|| format!("case {n}: mismatch"))
    })
}

fn unimodular_pair(ring: &Ring, rng: &mut impl Rng) -> (Vec3, Vec3, Vec3) {
    loop {
        let s = random_vec3(ring, rng);
        let t = random_vec3(ring, rng);
        let st = x(&s, &t);
        if st.is_unimodular() {
            return (s, t, st);
        }
    }
}

/// Recover `λ` from `v = λ(s×t)` when `s×t` is unimodular.
pub fn cross_multiple_recovery(ring: &Ring, cases: usize, rng: &mut impl Rng) -> SuiteResult {
    suite("cross multiple recovery", ring, cases, |n| {
        let (s, t, st) = unimodular_pair(ring, rng);
        let lambda = ring.random_element(rng);
        let v = st.scale(&lambda);
        match solve_cross_multiple(&v, &s, &t) {
            Ok(l) if l == lambda && st.scale(&l) == v => None,
            Ok(l) => Some(format!("case {n}: got {l}, expected {lambda}")),
            Err(e) => Some(format!("case {n}: {e}")),
        }
    })
}

/// Entries of `λv + uw` generate the unit ideal when `v×w` is unimodular
/// and `u` is a unit.
pub fn combination_unimodular(ring: &Ring, cases: usize, rng: &mut impl Rng) -> SuiteResult {
    suite("unit combination stays unimodular", ring, cases, |n| {
        let (v, w, _) = unimodular_pair(ring, rng);
        let lambda = ring.random_element(rng);
        let u = ring.random_unit(rng);
        let c = v.scale(&lambda).add(&w.scale(&u));
        (!c.is_unimodular()).then(|| format!("case {n}: λ = {lambda}, u = {u}"))
    })
}

/// Build `R = u((s×t)×(v×w))` for a random unit `u` and recover `u`.
pub fn fundamental_unit_recovery(ring: &Ring, cases: usize, rng: &mut impl Rng) -> SuiteResult {
    suite("fundamental unit recovery", ring, cases, |n| {
        let (s, t, v, w) = loop {
            let (s, t, _) = unimodular_pair(ring, rng);
            let (v, w, _) = unimodular_pair(ring, rng);
            if br(&s, &t, &v).is_unit() {
                break (s, t, v, w);
            }
        };
        let u = ring.random_unit(rng);
        let r = x(&x(&s, &t), &x(&v, &w)).scale(&u);
        match fundamental_unit(&s, &t, &v, &w, &r) {
            Ok(got) if got == u => None,
            Ok(got) => Some(format!("case {n}: got {got}, expected {u}")),
            Err(e) => Some(format!("case {n}: {e}")),
        }
    })
}

/// All suites with the standard case counts.
pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    let f101 = Ring::prime(101).expect("101 is prime");
    let a = corpus::ring_a();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        triple_product_identity(&f101, 500, &mut rng),
        triple_product_identity(&a, 100, &mut rng),
        lagrange_expansion(&f101, 200, &mut rng),
        lagrange_expansion(&a, 50, &mut rng),
        cross_multiple_recovery(&f101, 200, &mut rng),
        cross_multiple_recovery(&a, 50, &mut rng),
        combination_unimodular(&f101, 200, &mut rng),
        combination_unimodular(&a, 50, &mut rng),
        fundamental_unit_recovery(&f101, 100, &mut rng),
        fundamental_unit_recovery(&a, 30, &mut rng),
    ]
}
