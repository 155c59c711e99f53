//! Lorentz–Einstein velocity addition.
//!
//! The binary form used throughout the crate is
//!
//! ```text
//! a ⊕ b = [ √(1 − a²/c²) b + (k(a) (a·b) + 1) a ] / (1 + a·b/c²)
//! k(a)  = 1 / (c² (1 + √(1 − a²/c²)))
//! ```
//!
//! so that the relative velocity of an object `U` seen by an observer moving
//! with `V` is `(−V) ⊕ U` ([`relative_velocity`]). `k(a)` is the
//! cancellation-free form of `(1 − √(1 − a²/c²)) / a²`, finite at `a = 0`.

use crate::algebra3::{dot3, LightSpeed, Velocity};
use crate::error::CompositionError;

/// Result of an Einstein composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EinsteinSum {
    pub w: Velocity,
    /// `1 + a·b/c²`, positive for subluminal inputs.
    pub denom: f64,
}

fn shared_ctx(a: &Velocity, b: &Velocity) -> Result<LightSpeed, CompositionError> {
    if a.ctx() == b.ctx() {
        Ok(a.ctx())
    } else {
        Err(CompositionError::MixedContext(a.ctx().get(), b.ctx().get()))
    }
}

/// `a ⊕ b`.
pub fn einstein_add(a: &Velocity, b: &Velocity) -> Result<EinsteinSum, CompositionError> {
    let ctx = shared_ctx(a, b)?;
    let c2 = ctx.get() * ctx.get();
    let av = a.components();
    let bv = b.components();

    let beta2 = dot3(av, av) / c2;
    let inv_gamma = (1.0 - beta2).sqrt();
    let k = 1.0 / (c2 * (1.0 + inv_gamma));
    let ab = dot3(av, bv);
    let along_a = k * ab + 1.0;
    let denom = 1.0 + ab / c2;

    let w = [0, 1, 2].map(|i| (inv_gamma * bv[i] + along_a * av[i]) / denom);
    Ok(EinsteinSum {
        w: Velocity::new_unchecked(w, ctx),
        denom,
    })
}

/// Velocity of `object` relative to `observer`: `(−observer) ⊕ object`.
///
/// `relative_velocity(v, u)` is the relative velocity `W` of a body `u` seen
/// from `v`; swapping the arguments gives `W̃`, which in general is not `−W`.
pub fn relative_velocity(
    observer: &Velocity,
    object: &Velocity,
) -> Result<EinsteinSum, CompositionError> {
    einstein_add(&observer.neg(), object)
}

/// `gyr[u, v] w = ⊖(u ⊕ v) ⊕ (u ⊕ (v ⊕ w))`.
///
/// Identity whenever Einstein addition happens to associate on `(u, v, w)`;
/// otherwise a rotation of `w`.
pub fn gyration(u: &Velocity, v: &Velocity, w: &Velocity) -> Result<Velocity, CompositionError> {
    let ctx = u.ctx();
    let uv = einstein_add(u, v)?.w;
    let vw = einstein_add(v, w)?.w;
    let u_vw = einstein_add(u, &checked(vw, ctx)?)?.w;
    Ok(einstein_add(&checked(uv, ctx)?.neg(), &checked(u_vw, ctx)?)?.w)
}

fn checked(v: Velocity, ctx: LightSpeed) -> Result<Velocity, CompositionError> {
    Velocity::new(v.components(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra3::norm3;
    use proptest::prelude::*;

    const C1: LightSpeed = LightSpeed::UNIT;

    fn vel(v: [f64; 3]) -> Velocity {
        Velocity::new(v, C1).unwrap()
    }

    fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    /// Independent route: push the four-velocity of `b` through the boost
    /// taking the frame moving with `a` back to the lab frame.
    fn boost_oracle(a: [f64; 3], b: [f64; 3], c: f64) -> [f64; 3] {
        let a2 = dot3(a, a);
        let ga = 1.0 / (1.0 - a2 / (c * c)).sqrt();
        let gb = 1.0 / (1.0 - dot3(b, b) / (c * c)).sqrt();
        let (t1, x1) = (gb, b.map(|x| gb * x));
        let ax = dot3(a, x1);
        let t = ga * (t1 + ax / (c * c));
        let along = if a2 > 0.0 { (ga - 1.0) * ax / a2 } else { 0.0 };
        let x = [0, 1, 2].map(|i| x1[i] + along * a[i] + ga * a[i] * t1);
        x.map(|xi| xi / t)
    }

    /// Literal transcription of the relative-velocity formula in the
    /// observer/object form with the original `(1 − √(1 − V²/c²))/V²`
    /// coefficient.
    fn relative_literal(obs: [f64; 3], obj: [f64; 3], c: f64) -> [f64; 3] {
        let v2 = dot3(obs, obs);
        let root = (1.0 - v2 / (c * c)).sqrt();
        let uv = dot3(obj, obs);
        let coef = (1.0 - root) * uv / v2 - 1.0;
        let den = 1.0 - uv / (c * c);
        [0, 1, 2].map(|i| (root * obj[i] + coef * obs[i]) / den)
    }

    #[test]
    fn identity_at_zero() {
        let b = vel([0.3, -0.4, 0.5]);
        let s = einstein_add(&Velocity::zero(C1), &b).unwrap();
        assert_eq!(s.w.components(), b.components());
        assert_eq!(s.denom, 1.0);
    }

    #[test]
    fn collinear_half_plus_half() {
        let a = vel([0.5, 0.0, 0.0]);
        let s = einstein_add(&a, &a).unwrap();
        let w = s.w.components();
        assert!((w[0] - 0.8).abs() < 1e-15);
        assert_eq!(&w[1..], &[0.0, 0.0]);
    }

    #[test]
    fn orthogonal_half_plus_half() {
        let s = einstein_add(&vel([0.5, 0.0, 0.0]), &vel([0.0, 0.5, 0.0])).unwrap();
        let w = s.w.components();
        let oracle = boost_oracle([0.5, 0.0, 0.0], [0.0, 0.5, 0.0], 1.0);
        assert!((w[0] - 0.5).abs() < 1e-15);
        assert!((w[1] - 0.75f64.sqrt() * 0.5).abs() < 1e-15);
        assert!((w[1] - 0.4330127).abs() < 1e-7);
        assert!(norm3(sub3(w, oracle)) < 1e-15);
    }

    #[test]
    fn matches_boost_oracle() {
        let cases = [
            ([0.3, 0.2, -0.1], [0.0, 0.7, 0.4]),
            ([0.9, 0.0, 0.1], [-0.5, 0.5, 0.5]),
            ([0.0, 0.0, 0.99], [0.98, 0.0, 0.0]),
        ];
        for (a, b) in cases {
            let w = einstein_add(&vel(a), &vel(b)).unwrap().w.components();
            assert!(
                norm3(sub3(w, boost_oracle(a, b, 1.0))) < 1e-13,
                "{a:?} {b:?}"
            );
        }
    }

    #[test]
    fn relative_velocity_orientations() {
        let v = [0.5, 0.0, 0.0];
        let u = [0.0, 0.5, 0.0];
        let w = relative_velocity(&vel(v), &vel(u)).unwrap().w.components();
        let w_tilde = relative_velocity(&vel(u), &vel(v)).unwrap().w.components();
        assert!(norm3(sub3(w, relative_literal(v, u, 1.0))) < 1e-15);
        assert!(norm3(sub3(w_tilde, relative_literal(u, v, 1.0))) < 1e-15);
        // W = (−0.5, √0.75·0.5, 0), W̃ = (√0.75·0.5, −0.5, 0): not opposite
        let defect = norm3(add3(w, w_tilde));
        let expected = 2f64.sqrt() * (0.5 - 0.75f64.sqrt() * 0.5);
        assert!((defect - expected).abs() < 1e-15);
        assert!(defect > 1e-3);
    }

    #[test]
    fn self_relative_velocity_vanishes() {
        let v = vel([0.2, 0.6, -0.3]);
        let w = relative_velocity(&v, &v).unwrap().w;
        assert!(w.speed() < 1e-15);
    }

    #[test]
    fn parallel_observers_are_reciprocal() {
        let v = vel([0.3, 0.0, 0.0]);
        let u = vel([0.7, 0.0, 0.0]);
        let w = relative_velocity(&v, &u).unwrap().w.components();
        let wt = relative_velocity(&u, &v).unwrap().w.components();
        assert!(norm3(add3(w, wt)) <= 1e-12);
    }

    fn assoc_gap(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> (f64, f64) {
        let (a, b, c) = (vel(a), vel(b), vel(c));
        let ab = einstein_add(&a, &b).unwrap().w;
        let left = einstein_add(&ab, &c).unwrap().w.components();
        let bc = einstein_add(&b, &c).unwrap().w;
        let right = einstein_add(&a, &bc).unwrap().w.components();
        let (a, b, c) = (a.components(), b.components(), c.components());
        let l_oracle = boost_oracle(boost_oracle(a, b, 1.0), c, 1.0);
        let r_oracle = boost_oracle(a, boost_oracle(b, c, 1.0), 1.0);
        let route_err = norm3(sub3(left, l_oracle)).max(norm3(sub3(right, r_oracle)));
        (norm3(sub3(left, right)), route_err)
    }

    #[test]
    fn non_associative_witness() {
        let (gap, err) = assoc_gap([0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.5, 0.0, 0.0]);
        assert!(err < 1e-14);
        assert!(gap > 1e-3);
        assert!((gap - 0.041138313).abs() < 1e-8);
    }

    #[test]
    fn mutually_orthogonal_triple_associates() {
        // gyr[x̂, ŷ] rotates about ẑ, so a third vector along ẑ is untouched
        let (gap, err) = assoc_gap([0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.5]);
        assert!(err < 1e-14);
        assert!(gap < 1e-15);
    }

    #[test]
    fn errors() {
        let a = Velocity::new([0.1, 0.0, 0.0], LightSpeed::new(2.0).unwrap()).unwrap();
        let b = vel([0.1, 0.0, 0.0]);
        assert!(matches!(
            einstein_add(&a, &b),
            Err(CompositionError::MixedContext(..))
        ));
    }

    #[test]
    fn gyration_examples() {
        let u = vel([0.4, 0.3, 0.0]);
        let w = vel([0.1, -0.2, 0.6]);
        let g = gyration(&u, &Velocity::zero(C1), &w).unwrap().components();
        assert!(norm3(sub3(g, w.components())) < 1e-15);

        let v = vel([0.8, 0.6, 0.0].map(|x| x * 0.9));
        let g = gyration(&u, &v, &w).unwrap().components();
        assert!(norm3(sub3(g, w.components())) < 1e-13);

        let u = vel([0.5, 0.0, 0.0]);
        let v = vel([0.0, 0.5, 0.0]);
        let g = gyration(&u, &v, &w).unwrap();
        assert!((g.speed() - w.speed()).abs() < 1e-12);
        assert!(norm3(sub3(g.components(), w.components())) > 1e-3);
    }

    fn velocity(max: f64) -> impl Strategy<Value = [f64; 3]> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.0f64..max)
            .prop_filter("nonzero direction", |(x, y, z, _)| {
                norm3([*x, *y, *z]) > 1e-3
            })
            .prop_map(|(x, y, z, s)| {
                let n = norm3([x, y, z]);
                [x * s / n, y * s / n, z * s / n]
            })
    }

    proptest! {
        #[test]
        fn subluminal_closure(a in velocity(0.999), b in velocity(0.999)) {
            let w = einstein_add(&vel(a), &vel(b)).unwrap();
            prop_assert!(w.w.speed() < 1.0);
            prop_assert!(w.denom > 0.0);
        }

        #[test]
        fn identity_and_inverse(a in velocity(0.999)) {
            let a = vel(a);
            let z = Velocity::zero(C1);
            let r = einstein_add(&a, &z).unwrap().w.components();
            prop_assert!(norm3(sub3(r, a.components())) <= 1e-12);
            let r = einstein_add(&a.neg(), &a).unwrap().w;
            prop_assert!(r.speed() <= 1e-12);
        }

        #[test]
        fn agrees_with_boost_oracle(a in velocity(0.99), b in velocity(0.99)) {
            let w = einstein_add(&vel(a), &vel(b)).unwrap().w.components();
            prop_assert!(norm3(sub3(w, boost_oracle(a, b, 1.0))) <= 1e-10);
        }

        #[test]
        fn gyration_preserves_norm(u in velocity(0.95), v in velocity(0.95), w in velocity(0.95)) {
            let g = gyration(&vel(u), &vel(v), &vel(w)).unwrap();
            prop_assert!((g.speed() - norm3(w)).abs() <= 1e-12);
        }

        #[test]
        fn collinear_boosts_do_not_rotate(s in -0.95f64..0.95, t in -0.95f64..0.95, w in velocity(0.95)) {
            let axis = [0.48, -0.6, 0.64];
            let u = vel(axis.map(|x| x * s));
            let v = vel(axis.map(|x| x * t));
            let g = gyration(&u, &v, &vel(w)).unwrap();
            prop_assert!(norm3(sub3(g.components(), w)) <= 1e-12);
        }

        #[test]
        fn magnitude_commutes(a in velocity(0.999), b in velocity(0.999)) {
            let ab = einstein_add(&vel(a), &vel(b)).unwrap().w.speed();
            let ba = einstein_add(&vel(b), &vel(a)).unwrap().w.speed();
            prop_assert!((ab - ba).abs() <= 1e-12);
        }

        #[test]
        fn collinear_closed_form(s in -0.99f64..0.99, t in -0.99f64..0.99) {
            let axis = [0.0, 0.6, 0.8];
            let w = einstein_add(&vel(axis.map(|x| x * s)), &vel(axis.map(|x| x * t))).unwrap();
            let expected = (s + t) / (1.0 + s * t);
            let got = w.w.components();
            prop_assert!(norm3(sub3(got, axis.map(|x| x * expected))) <= 1e-14);
        }
    }
}
