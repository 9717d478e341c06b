mod common;

use ramify2::catalog::{base_exclusion, BaseFact, BaseVerdict, Catalog, CatalogError, GroupRef};
use ramify2::pipeline::SIMPLE_GROUPS;

fn shipped() -> Catalog {
    Catalog::load(common::catalog_path()).expect("shipped catalog loads")
}

#[test]
fn counts_per_degree() {
    let counts = shipped().count_by_degree();
    for (d, n) in [
        (9, 34),
        (10, 45),
        (11, 8),
        (12, 301),
        (13, 9),
        (14, 63),
        (15, 104),
    ] {
        assert_eq!(counts[&d], n, "degree {d}");
    }
    // smaller degrees, for quotient references
    for (d, n) in [(2, 1), (3, 2), (4, 5), (5, 5), (6, 16), (7, 7), (8, 50)] {
        assert_eq!(counts[&d], n, "degree {d}");
    }
}

#[test]
fn quoted_orders() {
    let c = shipped();
    let mut quoted = vec![(9, 19, 144), (10, 28, 400), (10, 30, 720), (10, 31, 720)];
    quoted.extend([
        (10, 33, 800),
        (10, 35, 1440),
        (12, 215, 1296),
        (12, 216, 1296),
    ]);
    quoted.extend((244..=249).map(|j| (12, j, 2592)));
    quoted.extend((262..=264).map(|j| (12, j, 5184)));
    quoted.extend([(13, 7, 5616), (14, 16, 336)]);
    for (d, j, order) in quoted {
        assert_eq!(c.record(d, j).unwrap().order, order, "{d}T{j}");
    }
}

#[test]
fn simple_groups_have_their_orders() {
    let c = shipped();
    let fact = |n: u64| (1..=n).product::<u64>();
    for (name, d, j) in SIMPLE_GROUPS {
        let rec = c.record(d, j).unwrap();
        let want = match name {
            "M11" => 7920,
            "M12" => 95040,
            "PSL(3,3)" => 5616,
            alt => fact(alt[1..].parse().unwrap()) / 2,
        };
        assert_eq!(rec.order, want, "{name}");
        assert!(rec.quotients.is_empty(), "{name} is simple");
    }
}

#[test]
fn orders_and_flags_are_consistent() {
    let c = shipped();
    for rec in c.records() {
        assert_eq!(rec.order % rec.degree as u64, 0);
        assert_eq!(rec.is_two_group, rec.order.is_power_of_two());
        for q in &rec.quotients {
            let facts = c.describe(q).unwrap();
            assert!(facts.order < rec.order, "{} -> {q}", rec.group_ref());
            assert_eq!(rec.order % facts.order, 0, "{} -> {q}", rec.group_ref());
        }
        for x in &rec.isomorphic {
            assert_eq!(
                c.describe(x).unwrap().order,
                rec.order,
                "{} ~ {x}",
                rec.group_ref()
            );
        }
        if rec.two_generated_with_involution.is_some() {
            assert!(rec.is_two_group);
        }
    }
}

#[test]
fn isomorphism_lists_are_symmetric() {
    let c = shipped();
    for rec in c.records().filter(|r| r.order < 10000) {
        for x in &rec.isomorphic {
            let GroupRef::Transitive { degree, index } = x else {
                panic!("iso refs are transitive");
            };
            let other = c.record(*degree, *index).unwrap();
            assert!(
                other.isomorphic.contains(&rec.group_ref()),
                "{} ~ {x}",
                rec.group_ref()
            );
        }
    }
}

#[test]
fn small_degree_groups_fall_to_base_facts() {
    let c = shipped();
    let s6 = c.describe(&GroupRef::transitive(6, 16)).unwrap();
    assert_eq!(
        base_exclusion(&s6),
        BaseVerdict::Impossible(BaseFact::Degree3567)
    );
    let d4 = c.describe(&GroupRef::transitive(4, 3)).unwrap();
    assert_eq!(base_exclusion(&d4), BaseVerdict::Unknown);
    let a5 = c.describe(&GroupRef::transitive(5, 4)).unwrap();
    assert_eq!(a5.order, 60);
    let psl28 = c.describe(&GroupRef::transitive(9, 27)).unwrap();
    assert_eq!(psl28.psl2_exponent, Some(3));
    assert_eq!(
        base_exclusion(&psl28),
        BaseVerdict::Impossible(BaseFact::Psl2PowerOfTwo)
    );
}

#[test]
fn dangling_references_are_rejected() {
    let e = Catalog::parse("T 4 3 8 1 q=2T1\n").unwrap_err();
    assert!(matches!(e, CatalogError::Dangling { .. }), "{e}");
    let e = Catalog::parse("T 2 1 2 1\nT 4 3 8 1 iso=8T4\n").unwrap_err();
    assert!(matches!(e, CatalogError::Dangling { .. }), "{e}");
    let e = Catalog::parse("T 2 1 2 1 iso=name:C2\nN C2 2 1\n").unwrap_err();
    assert!(matches!(e, CatalogError::Parse { line: 1, .. }), "{e}");
}
