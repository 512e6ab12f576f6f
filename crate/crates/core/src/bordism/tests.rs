use super::*;
use crate::exactalg::FinAbGroup;
use crate::manifold::library;

fn sym(d: usize, q: usize, n: u64) -> Symmetry {
    Symmetry::new(d, q, FinAbGroup::cyclic(n)).unwrap()
}

fn custom_slices(n: u64) -> (Arc<Slice>, Arc<Slice>) {
    let s = sym(2, 0, n);
    let sc = SliceComplex::subdivide(&library("circle").unwrap()).unwrap();
    let one = Arc::new(SkeletonPair::custom(&sc, 0, &[0], &[5]).unwrap());
    let two = Arc::new(SkeletonPair::custom(&sc, 0, &[0, 5], &[1, 2]).unwrap());
    (Slice::new(&s, one).unwrap(), Slice::new(&s, two).unwrap())
}

#[test]
fn circle_cylinder_backgrounds() {
    let s = circle_slice(&sym(2, 0, 2)).unwrap();
    assert_eq!(s.backgrounds().order(), 8);
    let m = s.identity_cylinder().unwrap();
    for obj in s.objects().unwrap() {
        assert_eq!(m.backgrounds_with(&obj.b, &obj.b).unwrap().classes.len(), 2);
        let id = identity(&obj).unwrap();
        assert_eq!(id.source(), obj);
        assert_eq!(id.target(), obj);
    }
}

#[test]
fn identity_and_symmetry_cylinders_compose() {
    for n in [2, 3] {
        let s = circle_slice(&sym(2, 0, n)).unwrap();
        let h = s.segment.h_x.group().clone();
        assert_eq!(h.order(), n as u128);
        for obj in s.objects().unwrap() {
            let id = identity(&obj).unwrap();
            let idid = compose(&id, &id).unwrap();
            assert_eq!(idid.cylinder_form().unwrap(), (obj.b.clone(), h.zero()));
            for b1 in h.enumerate().unwrap() {
                let c1 = symmetry_cylinder(&obj, &b1).unwrap();
                assert_eq!(c1.cylinder_form().unwrap().1, b1);
                for b2 in h.enumerate().unwrap() {
                    let c2 = symmetry_cylinder(&obj, &b2).unwrap();
                    let c = compose(&c2, &c1).unwrap();
                    assert_eq!(c.cylinder_form().unwrap(), (obj.b.clone(), h.add(&b1, &b2)));
                }
            }
        }
    }
}

#[test]
fn skeleton_change_table() {
    for n in [2, 3] {
        let (one, two) = custom_slices(n);
        assert_eq!(one.backgrounds().order(), n as u128);
        assert_eq!(two.backgrounds().order(), (n * n) as u128);
        let h_abs = &one.segment.h_x_next;
        for a in one.objects().unwrap() {
            for b in two.objects().unwrap() {
                let ga = a.absolute_class();
                let gb_cocycle = b.slice.segment.h_x_next.representative(&b.absolute_class());
                let gb = h_abs.class_of(&gb_cocycle).unwrap();
                let m = skeleton_change_cylinder(&one, &two).unwrap();
                let set = m.backgrounds_with(&a.b, &b.b).unwrap();
                assert_eq!(!set.classes.is_empty(), ga == gb, "n={n} b={} b'={}", a.b, b.b);
                if !set.classes.is_empty() {
                    assert_eq!(set.classes.len() as u64, n);
                }
            }
        }
    }
}

#[test]
fn annuli_glue_to_torus() {
    let s = circle_slice(&sym(2, 0, 2)).unwrap();
    let c = Composition::new(&bent_out(&s).unwrap(), &bent_in(&s).unwrap()).map_err(|e| e.to_string()).unwrap();
    assert!(c.glued.is_closed());
    assert_eq!(c.glued.manifold.euler_characteristic(), 0);
    assert_eq!(c.glued.backgrounds.order(), 4);
    let r = c.mayer_vietoris().unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn disk_backgrounds() {
    let s = circle_slice(&sym(2, 0, 2)).unwrap();
    let d = disk_in(&s).unwrap();
    let zero = Slice::empty(&s.symmetry).unwrap().backgrounds().group().zero();
    for obj in s.objects().unwrap() {
        let n = d.backgrounds_with(&zero, &obj.b).unwrap().classes.len();
        assert_eq!(n, usize::from(obj.absolute_class().is_zero()));
    }
    let sphere = Composition::new(&disk_out(&s).unwrap(), &d).unwrap();
    assert_eq!(sphere.glued.manifold.euler_characteristic(), 2);
    assert!(sphere.mayer_vietoris().unwrap().passed());
}

#[test]
fn pants_compose() {
    let s = circle_slice(&sym(2, 0, 2)).unwrap();
    let p = pants(&s).unwrap();
    let cp = copants(&s).unwrap();
    assert_eq!(p.manifold.euler_characteristic(), -1);
    let c = Composition::new(&p, &cp).unwrap();
    assert_eq!(c.glued.manifold.euler_characteristic(), -2);
    assert!(c.mayer_vietoris().unwrap().passed());
}

#[test]
fn identity_is_neutral() {
    let s = circle_slice(&sym(2, 0, 2)).unwrap();
    for f in [disk_in(&s).unwrap(), copants(&s).unwrap(), pants(&s).unwrap()] {
        for dec in f.decorations().unwrap() {
            for (upper, lower) in [(identity(&dec.target()).unwrap(), dec.clone()), (dec.clone(), identity(&dec.source()).unwrap())] {
                if upper.bordism.source.is_empty() || lower.bordism.target.is_empty() {
                    continue;
                }
                let c = Composition::new(&upper.bordism, &lower.bordism).unwrap();
                let class = c.compose(&upper.class, &lower.class).unwrap();
                let (r, onto_upper) = c.collapse().unwrap();
                let piece = if onto_upper { &upper } else { &lower };
                let pulled = pullback_cochain(&r, &piece.cocycle(), &s.symmetry.group);
                assert_eq!(c.glued.backgrounds.class_of(&pulled).unwrap(), class);
            }
        }
    }
}

#[test]
fn swap_squares_to_identity() {
    let s = circle_slice(&sym(2, 0, 2)).unwrap();
    let objs = s.objects().unwrap();
    for a in objs.iter().step_by(3) {
        for b in objs.iter().step_by(5) {
            let ab = swap(a, b).unwrap();
            let ba = swap(b, a).unwrap();
            assert_eq!(ab.target(), ba.source());
            let sq = compose(&ba, &ab).unwrap();
            let (bb, beta) = sq.cylinder_form().unwrap();
            assert_eq!(bb, a.disjoint_union(b).unwrap().b);
            assert!(beta.is_zero());
        }
    }
}

#[test]
fn torus_symmetry_cylinders() {
    let s = Slice::standard(&sym(3, 1, 2), &library("torus2").unwrap(), SkeletonKind::Triangulation).unwrap();
    let h = s.segment.h_x.group().clone();
    assert_eq!(h.order(), 4);
    let obj = s.object(vec![0; s.backgrounds().group().rank()]).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for b1 in h.enumerate().unwrap() {
        let c1 = symmetry_cylinder(&obj, &b1).unwrap();
        seen.insert(c1.class.clone());
        for b2 in h.enumerate().unwrap() {
            let c = compose(&symmetry_cylinder(&obj, &b2).unwrap(), &c1).unwrap();
            assert_eq!(c.cylinder_form().unwrap().1, h.add(&b1, &b2));
        }
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn disjoint_unions_split() {
    let s = circle_slice(&sym(2, 0, 3)).unwrap();
    let objs = s.objects().unwrap();
    let u = objs[1].disjoint_union(&objs[4]).unwrap();
    assert_eq!(u.slice.backgrounds().order(), s.backgrounds().order().pow(2));
    let d = disk_in(&s).unwrap().decorations().unwrap();
    let du = d[0].disjoint_union(&d[0]).unwrap();
    assert_eq!(du.target(), d[0].target().disjoint_union(&d[0].target()).unwrap());
}
