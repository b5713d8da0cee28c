use std::sync::Arc;

use regclose_core::fintop::{hom_set, t0_reflection, universe, ContMap, FinSpace};
use regclose_core::subcat::{
    in_d_hull, in_e_hull, in_mono_hull, in_s_hull, naturality_square, seh_reflection, verify_weak_reflection,
    Reflection, SubcatSpec,
};

fn builtins() -> Vec<SubcatSpec> {
    vec![SubcatSpec::all(), SubcatSpec::t0(), SubcatSpec::t1(), SubcatSpec::discrete(), SubcatSpec::indiscrete()]
}

fn gens(spaces: &[FinSpace]) -> Vec<Arc<FinSpace>> {
    spaces.iter().cloned().map(Arc::new).collect()
}

#[test]
fn inclusion_chain_for_builtins() {
    let u = universe(3).unwrap();
    for a in builtins() {
        let a = a.with_bound(3);
        for x in &u {
            let chain = [a.is_member(x), in_s_hull(x, &a).member, in_e_hull(x, &a).member, in_d_hull(x, &a).member];
            assert!(chain.windows(2).all(|w| !w[0] || w[1]), "{} {x:?} {chain:?}", a.name);
        }
    }
}

#[test]
fn hull_reflections_land_in_the_hull() {
    let u = universe(4).unwrap();
    for g in [vec![FinSpace::sierpinski()], vec![FinSpace::discrete(2)], vec![FinSpace::indiscrete(2)]] {
        let generators = gens(&g);
        let a = SubcatSpec::seh("hull", generators.clone()).unwrap();
        for x in &u {
            let r = seh_reflection(x, &generators);
            assert!(r.morphism.is_surjective());
            assert!(in_s_hull(r.target(), &a).member, "{x:?}");
        }
    }
}

#[test]
fn reflections_of_members_and_hull_members() {
    let u = universe(3).unwrap();
    for a in builtins() {
        for x in &u {
            let r = a.reflect(x).unwrap().morphism;
            if a.is_member(x) {
                assert!(r.is_homeomorphism(), "{} {x:?}", a.name);
            }
            if in_s_hull(x, &a).member {
                assert!(r.is_embedding());
                assert!(in_mono_hull(x, &a).member);
            }
        }
    }
}

#[test]
fn builtin_reflectors_are_strong_reflections() {
    let u = universe(3).unwrap();
    for a in builtins() {
        let a = a.with_bound(3);
        for x in &u {
            let r = a.reflect(x).unwrap();
            let cert = verify_weak_reflection(x, &r, &a).unwrap();
            assert!(cert.verified && cert.unique, "{} {x:?}", a.name);
        }
    }
}

#[test]
fn weak_naturality_of_reflectors() {
    let u = universe(3).unwrap();
    let sierpinski_hull = SubcatSpec::seh("seh:sierpinski", gens(&[FinSpace::sierpinski()])).unwrap();
    for a in builtins().into_iter().chain([sierpinski_hull]) {
        for x in &u {
            for y in &u {
                for f in hom_set(x, y) {
                    assert!(naturality_square(&f, &a).unwrap().is_some());
                }
            }
        }
    }
}

#[test]
fn composite_reflection_is_a_weak_t0_reflection() {
    // B = SEH(gens) contains every T0 space; r^{T0} ∘ r^{B} reflects into T0
    let t0 = SubcatSpec::t0().with_bound(3);
    for g in [vec![FinSpace::sierpinski()], vec![FinSpace::sierpinski(), FinSpace::indiscrete(2)]] {
        let generators = gens(&g);
        let b = SubcatSpec::seh("b", generators.clone()).unwrap();
        for x in universe(3).unwrap() {
            if t0.is_member(&x) {
                assert!(b.is_member(&x));
            }
            let rb = seh_reflection(&x, &generators).morphism;
            let ra = t0_reflection(rb.cod_arc());
            let cand = Reflection { morphism: rb.then(&ra).unwrap(), weak: true };
            assert!(verify_weak_reflection(&x, &cand, &t0).unwrap().verified);
        }
    }
}

#[test]
fn generated_hull_of_sierpinski_is_t0() {
    let a = SubcatSpec::seh("seh:sierpinski", gens(&[FinSpace::sierpinski()])).unwrap();
    for x in universe(4).unwrap() {
        assert_eq!(a.is_member(&x), x.is_t0());
    }
    let d = SubcatSpec::seh("seh:discrete2", gens(&[FinSpace::discrete(2)])).unwrap();
    for x in universe(4).unwrap() {
        assert_eq!(d.is_member(&x), x.is_discrete());
    }
}

#[test]
fn surjections_are_cancellable() {
    let u = universe(3).unwrap();
    for a in builtins() {
        for x in &u {
            for y in &u {
                for f in hom_set(x, y).into_iter().filter(ContMap::is_surjective) {
                    assert!(regclose_core::subcat::is_cancellable(&f, &a).cancellable);
                }
            }
        }
    }
}
