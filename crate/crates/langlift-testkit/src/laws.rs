//! A reusable law harness: feed it an algebra and a sampler, and it checks
//! every module and ring law on randomly drawn elements, naming the law in
//! the panic message on failure.

use langlift::algebra::{fuse, Algebra, MooreAlgebra};
use langlift::Semiring;

/// Check all algebra laws, running `cases` random samples per law. The
/// sampler supplies three carrier elements and two scalars per case.
pub fn check_algebra_laws<S, A>(
    alg: &A,
    mut sample: impl FnMut() -> (A::Elem, A::Elem, A::Elem, S, S),
    cases: usize,
) where
    S: Semiring,
    A: Algebra<S>,
{
    for _ in 0..cases {
        let (a, b, c, _, _) = sample();
        assert_eq!(
            alg.add(&alg.add(&a, &b), &c),
            alg.add(&a, &alg.add(&b, &c)),
            "law: addition associates"
        );
    }
    for _ in 0..cases {
        let (a, b, _, _, _) = sample();
        assert_eq!(alg.add(&a, &b), alg.add(&b, &a), "law: addition commutes");
    }
    for _ in 0..cases {
        let (a, _, _, _, _) = sample();
        assert_eq!(alg.add(&a, &alg.zero()), a, "law: zero is the additive unit");
    }
    for _ in 0..cases {
        let (a, b, _, s, _) = sample();
        assert_eq!(
            alg.scale(&s, &alg.add(&a, &b)),
            alg.add(&alg.scale(&s, &a), &alg.scale(&s, &b)),
            "law: scaling distributes over carrier addition"
        );
    }
    for _ in 0..cases {
        let (a, _, _, s, t) = sample();
        assert_eq!(
            alg.scale(&s.add(&t), &a),
            alg.add(&alg.scale(&s, &a), &alg.scale(&t, &a)),
            "law: scaling distributes over scalar addition"
        );
    }
    for _ in 0..cases {
        let (a, _, _, s, t) = sample();
        assert_eq!(
            alg.scale(&s, &alg.scale(&t, &a)),
            alg.scale(&s.mul(&t), &a),
            "law: scaling composes multiplicatively"
        );
    }
    for _ in 0..cases {
        let (a, _, _, _, _) = sample();
        assert_eq!(alg.scale(&S::one(), &a), a, "law: scaling by one is identity");
        assert_eq!(
            alg.scale(&S::zero(), &a),
            alg.zero(),
            "law: scaling by zero annihilates"
        );
    }
    for _ in 0..cases {
        let (a, b, c, _, _) = sample();
        assert_eq!(
            alg.mul(&alg.mul(&a, &b), &c),
            alg.mul(&a, &alg.mul(&b, &c)),
            "law: multiplication associates"
        );
    }
    for _ in 0..cases {
        let (a, _, _, _, _) = sample();
        assert_eq!(alg.mul(&alg.one(), &a), a, "law: one is a left unit");
        assert_eq!(alg.mul(&a, &alg.one()), a, "law: one is a right unit");
    }
    for _ in 0..cases {
        let (a, _, _, _, _) = sample();
        assert_eq!(
            alg.mul(&alg.zero(), &a),
            alg.zero(),
            "law: zero annihilates on the left"
        );
        assert_eq!(
            alg.mul(&a, &alg.zero()),
            alg.zero(),
            "law: zero annihilates on the right"
        );
    }
    for _ in 0..cases {
        let (a, b, c, _, _) = sample();
        assert_eq!(
            alg.mul(&a, &alg.add(&b, &c)),
            alg.add(&alg.mul(&a, &b), &alg.mul(&a, &c)),
            "law: multiplication distributes on the left"
        );
        assert_eq!(
            alg.mul(&alg.add(&a, &b), &c),
            alg.add(&alg.mul(&a, &c), &alg.mul(&b, &c)),
            "law: multiplication distributes on the right"
        );
    }
    for _ in 0..cases {
        let (a, b, _, s, _) = sample();
        let scaled_left = alg.mul(&alg.scale(&s, &a), &b);
        let scaled_prod = alg.scale(&s, &alg.mul(&a, &b));
        let scaled_right = alg.mul(&a, &alg.scale(&s, &b));
        assert_eq!(scaled_left, scaled_prod, "law: scalars slide out of the left factor");
        assert_eq!(scaled_right, scaled_prod, "law: scalars slide out of the right factor");
    }
    for _ in 0..cases {
        let (a, _, _, s, _) = sample();
        assert_eq!(
            alg.mul(&alg.embed(&s), &a),
            alg.mul(&a, &alg.embed(&s)),
            "law: embedded scalars are central"
        );
    }
}

/// Check that the collapse map is an algebra homomorphism: it sends the
/// lifted zero, one, pointings, sums, scalings, and products to their base
/// counterparts. Runs `cases` random samples per binary law.
pub fn check_fuse_homomorphism<S, A>(
    moore: &MooreAlgebra<S, A>,
    mut sample: impl FnMut() -> (
        langlift::algebra::MooreElem<S, A::Elem>,
        langlift::algebra::MooreElem<S, A::Elem>,
        S,
    ),
    cases: usize,
) where
    S: Semiring,
    A: Algebra<S>,
{
    let base = &moore.base;
    assert_eq!(fuse(base, &moore.zero()), base.zero(), "fuse preserves zero");
    assert_eq!(fuse(base, &moore.one()), base.one(), "fuse preserves one");
    for letter in base.alphabet().iter() {
        assert_eq!(
            fuse(base, &moore.point(letter)),
            base.point(letter),
            "fuse preserves the pointing of `{letter}`"
        );
    }
    for _ in 0..cases {
        let (a, b, _) = sample();
        assert_eq!(
            fuse(base, &moore.add(&a, &b)),
            base.add(&fuse(base, &a), &fuse(base, &b)),
            "fuse preserves sums"
        );
    }
    for _ in 0..cases {
        let (a, _, s) = sample();
        assert_eq!(
            fuse(base, &moore.scale(&s, &a)),
            base.scale(&s, &fuse(base, &a)),
            "fuse preserves scalings"
        );
    }
    for _ in 0..cases {
        let (a, b, _) = sample();
        assert_eq!(
            fuse(base, &moore.mul(&a, &b)),
            base.mul(&fuse(base, &a), &fuse(base, &b)),
            "fuse preserves products"
        );
    }
}
