//! Random configurations built by joins and intersections.

use rand::Rng;

use crate::geometry::{cross, PointMatrix, Vec3};
use crate::ring::Ring;
use crate::statement::{check_instance, Verdict};
use crate::tiling::{generate_statement, Tiling};

pub fn random_vec3<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Vec3 {
    Vec3::new(ring.random_element(rng), ring.random_element(rng), ring.random_element(rng))
        .expect("same ring")
}

fn x(a: &Vec3, b: &Vec3) -> Vec3 {
    cross(a, b).expect("same ring")
}

/// One attempt at the fifteen points of the Pappus torus tiling, in the order
/// of its label map: `P1..P6, s1, t1, s2, t2, s3, t3, R1, R2, R3`.
///
/// Three lines are chosen at random, `R` points are their pairwise
/// intersections and `s_i, t_i` random points on line `i`. `P1` and `P3` are
/// free; the other black points are forced by the tile collinearities.
pub fn pappus_tiling_attempt<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> PointMatrix {
    let lines: Vec<Vec3> = (0..3).map(|_| random_vec3(ring, rng)).collect();
    let r1 = x(&lines[0], &lines[1]);
    let r2 = x(&lines[0], &lines[2]);
    let r3 = x(&lines[1], &lines[2]);
    let mut st = Vec::new();
    for l in &lines {
        st.push(x(l, &random_vec3(ring, rng)));
        st.push(x(l, &random_vec3(ring, rng)));
    }
    let p1 = random_vec3(ring, rng);
    let p3 = random_vec3(ring, rng);
    let p6 = x(&x(&r2, &p1), &x(&r1, &p3));
    let p4 = x(&x(&r3, &p1), &x(&r2, &p3));
    let p2 = x(&x(&r1, &p1), &x(&r3, &p3));
    let p5 = x(&x(&r3, &p6), &x(&r1, &p4));
    let mut cols = vec![p1, p2, p3, p4, p5, p6];
    cols.extend(st);
    cols.extend([r1, r2, r3]);
    PointMatrix::new(ring.clone(), cols).expect("fifteen columns")
}

/// Retry [`pappus_tiling_attempt`] until the generated hypotheses hold.
/// Returns `None` after `max_tries` failures.
pub fn pappus_tiling_instance<R: Rng + ?Sized>(
    tiling: &Tiling,
    ring: &Ring,
    rng: &mut R,
    max_tries: usize,
) -> Option<PointMatrix> {
    let (statement, _) = generate_statement(tiling).ok()?;
    (0..max_tries).find_map(|_| {
        let m = pappus_tiling_attempt(ring, rng);
        let report = check_instance(&statement, &m).ok()?;
        (report.verdict != Verdict::HypothesesFail).then_some(m)
    })
}
