//! Law suites on seeded random elements: the polynomial algebra, its
//! observation-pair lifting, and the collapse map between them. The
//! acceptance suite reruns these at higher case counts; here they gate
//! every build cheaply.

use langlift::algebra::{MooreAlgebra, PolyAlgebra};
use langlift::{Alphabet, Int, Nat, Semiring};
use langlift_testkit::gen::Gen;
use langlift_testkit::laws::{check_algebra_laws, check_fuse_homomorphism};

const CASES: usize = 60;

fn letters() -> Alphabet {
    Alphabet::of(&["a", "b"])
}

/// Carrier support: variables and letters mixed, as fold targets use both.
fn support() -> Alphabet {
    Alphabet::of(&["x", "y", "a", "b"])
}

fn poly_laws<S: Semiring>(seed: u64, scalar: impl Fn(&mut Gen) -> S + Copy) {
    let alg = PolyAlgebra::<S>::new(letters());
    let mut gen = Gen::new(seed);
    check_algebra_laws(
        &alg,
        || {
            let a = gen.poly(&support(), 3, 3, scalar);
            let b = gen.poly(&support(), 3, 3, scalar);
            let c = gen.poly(&support(), 3, 3, scalar);
            let s = scalar(&mut gen);
            let t = scalar(&mut gen);
            (a, b, c, s, t)
        },
        CASES,
    );
}

fn lifted_laws<S: Semiring>(seed: u64, scalar: impl Fn(&mut Gen) -> S + Copy) {
    let alg = MooreAlgebra::new(PolyAlgebra::<S>::new(letters()));
    let mut gen = Gen::new(seed);
    check_algebra_laws(
        &alg,
        || {
            let a = gen.moore_poly(&letters(), &support(), 2, 2, scalar);
            let b = gen.moore_poly(&letters(), &support(), 2, 2, scalar);
            let c = gen.moore_poly(&letters(), &support(), 2, 2, scalar);
            let s = scalar(&mut gen);
            let t = scalar(&mut gen);
            (a, b, c, s, t)
        },
        CASES,
    );
}

fn fuse_homomorphism<S: Semiring>(seed: u64, scalar: impl Fn(&mut Gen) -> S + Copy) {
    let moore = MooreAlgebra::new(PolyAlgebra::<S>::new(letters()));
    let mut gen = Gen::new(seed);
    check_fuse_homomorphism(
        &moore,
        || {
            let a = gen.moore_poly(&letters(), &support(), 2, 2, scalar);
            let b = gen.moore_poly(&letters(), &support(), 2, 2, scalar);
            let s = scalar(&mut gen);
            (a, b, s)
        },
        CASES,
    );
}

#[test]
fn polynomial_algebra_laws_hold_over_bool() {
    poly_laws(11, |g| g.scalar_bool());
}

#[test]
fn polynomial_algebra_laws_hold_over_nat() {
    poly_laws(12, |g| g.scalar_nat(4));
}

#[test]
fn polynomial_algebra_laws_hold_over_int() {
    poly_laws(13, |g| g.scalar_int(3));
}

#[test]
fn lifted_algebra_laws_hold_over_bool() {
    lifted_laws(21, |g| g.scalar_bool());
}

#[test]
fn lifted_algebra_laws_hold_over_nat() {
    lifted_laws(22, |g| g.scalar_nat(4));
}

#[test]
fn lifted_algebra_laws_hold_over_int() {
    lifted_laws(23, |g| g.scalar_int(3));
}

#[test]
fn collapse_map_is_a_homomorphism_over_bool() {
    fuse_homomorphism(31, |g| g.scalar_bool());
}

#[test]
fn collapse_map_is_a_homomorphism_over_nat() {
    fuse_homomorphism::<Nat>(32, |g| g.scalar_nat(4));
}

#[test]
fn collapse_map_is_a_homomorphism_over_int() {
    fuse_homomorphism::<Int>(33, |g| g.scalar_int(3));
}
