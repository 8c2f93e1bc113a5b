mod common;

use proptest::prelude::*;

use nodal::construct::{build_presentation, dimension, validate, NodalDatum, DEFAULT_PATH_CAP};
use nodal::quiver::{Presentation, Relation};
use nodal::random::{random_acyclic, random_blow_up, random_gluing, seeded};

use common::{graded_dimension, path_algebra_dimension, path_counts, quiver};

fn dim(d: &NodalDatum) -> (usize, Presentation) {
    let (p, _) = build_presentation(d).unwrap();
    (dimension(&p, DEFAULT_PATH_CAP).unwrap(), p)
}

#[test]
fn oracle_agrees_on_fixed_examples() {
    let a2 = quiver(&["1", "2"], &[("a", "1", "2")]);
    let (d, p) = dim(&NodalDatum::new(a2).glue("1", "2"));
    assert_eq!((d, graded_dimension(&p)), (2, 2));
    let chain = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
    let (d, p) = dim(&NodalDatum::new(chain).blow("2"));
    assert_eq!((d, graded_dimension(&p)), (9, 9));
}

#[test]
fn double_arrow_blow_up() {
    let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")]);
    let d = NodalDatum::new(q.clone()).blow("2");
    let (n, p) = dim(&d);
    assert_eq!(n, graded_dimension(&p));
    let (ending, starting) = path_counts(&q)[1];
    assert_eq!(n, path_algebra_dimension(&q) + ending + starting + 1);
    let commutations = p.relations().iter().filter(|r| !r.is_monomial()).count();
    assert_eq!(commutations, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gluing_loses_one_per_pair(seed in any::<u64>(), n in 2usize..9, pairs in 1usize..5) {
        let d = random_gluing(&mut seeded(seed), n, pairs);
        let (glued, p) = dim(&d);
        prop_assert_eq!(glued, graded_dimension(&p));
        prop_assert_eq!(glued, path_algebra_dimension(&d.base) - d.glue_pairs.len());
    }

    #[test]
    fn blow_up_adds_paths_through_vertex(seed in any::<u64>(), n in 1usize..7) {
        let d = random_blow_up(&mut seeded(seed), n, 0.4);
        let (blown, p) = dim(&d);
        prop_assert_eq!(blown, graded_dimension(&p));
        let v = d.base.vertex(&d.blow_vertices[0]).unwrap();
        let (ending, starting) = path_counts(&d.base)[v.0];
        prop_assert_eq!(blown, path_algebra_dimension(&d.base) + ending + starting + 1);
    }

    #[test]
    fn hereditary_dimension_matches_path_count(seed in any::<u64>(), n in 1usize..8) {
        let q = random_acyclic(&mut seeded(seed), n, 0.35);
        let (d, _) = dim(&NodalDatum::new(q.clone()));
        prop_assert_eq!(d, path_algebra_dimension(&q));
    }

    #[test]
    fn operation_order_is_irrelevant(seed in any::<u64>(), n in 4usize..9) {
        let mut rng = seeded(seed);
        let d = random_gluing(&mut rng, n, 3);
        let mut reversed = d.clone();
        reversed.glue_pairs.reverse();
        let (a, pa) = dim(&d);
        let (b, pb) = dim(&reversed);
        prop_assert_eq!(a, b);
        let mut ra = pa.relation_strings();
        let mut rb = pb.relation_strings();
        ra.sort();
        rb.sort();
        prop_assert_eq!(ra, rb);
    }

    #[test]
    fn every_relation_is_zero_or_length_two_commutation(seed in any::<u64>(), n in 2usize..7) {
        let d = random_blow_up(&mut seeded(seed), n, 0.5);
        prop_assume!(validate(&d).is_valid());
        let (p, _) = build_presentation(&d).unwrap();
        for r in p.relations() {
            if let Relation::Commutation(l, r) = r {
                prop_assert_eq!(l.len(), 2);
                prop_assert_eq!(r.len(), 2);
            }
        }
    }
}
