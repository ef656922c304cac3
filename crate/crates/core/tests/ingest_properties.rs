mod common;

use std::collections::BTreeSet;

use erbimatch::evaluation::GroundTruth;
use erbimatch::ingest::{
    read_edge_list, read_ground_truth, read_profiles, write_edge_list, write_ground_truth,
    write_profiles, DatasetBundle, ProfileFormat,
};
use erbimatch::{EntityProfile, Side};
use proptest::prelude::*;
use tempfile::TempDir;

use common::random_graph;

const ATTRS: [&str; 3] = ["name", "price", "description"];

/// Profiles with unique ids and at most one non-blank value per attribute,
/// including delimiters, quotes, newlines and non-ASCII text.
fn profiles() -> impl Strategy<Value = Vec<EntityProfile>> {
    let value = "[a-zA-Z0-9 ,;\"'\té€\n]{0,12}".prop_filter("has text", |v| !v.trim().is_empty());
    let profile = prop::collection::vec(prop::option::of(value), ATTRS.len());
    prop::collection::vec(profile, 0..12).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, values)| {
                let mut p = EntityProfile::new(format!("id-{i}"));
                for (attr, v) in ATTRS.iter().zip(values) {
                    if let Some(v) = v {
                        p.push(attr, v);
                    }
                }
                p
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn profiles_round_trip(ps in profiles(), gz in any::<bool>()) {
        let dir = TempDir::new().unwrap();
        for (format, ext) in [(ProfileFormat::Csv, "csv"), (ProfileFormat::Jsonl, "jsonl")] {
            let path = dir.path().join(if gz { format!("p.{ext}.gz") } else { format!("p.{ext}") });
            write_profiles(&path, format, &ps).unwrap();
            prop_assert_eq!(&read_profiles(&path, format).unwrap(), &ps);
        }
    }

    #[test]
    fn edge_lists_round_trip(seed in any::<u64>()) {
        let g = random_graph(seed, 15);
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("g.tsv");
        write_edge_list(&path, &g).unwrap();
        let back = read_edge_list(&path).unwrap();
        prop_assert_eq!(back.left_ids(), g.left_ids());
        prop_assert_eq!(back.right_ids(), g.right_ids());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn ground_truth_round_trips_and_resolves(n in 0usize..20, seed in any::<u64>()) {
        let g = random_graph(seed, 20);
        let n = n.min(g.left_count()).min(g.right_count());
        let gt = GroundTruth::new(
            (0..n).map(|i| (g.left_ids()[i].clone(), g.right_ids()[n - 1 - i].clone())),
        )
        .unwrap();
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("gt.tsv");
        write_ground_truth(&path, &gt).unwrap();
        let back = read_ground_truth(&path).unwrap();
        let pairs = |t: &GroundTruth| t.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<BTreeSet<_>>();
        prop_assert_eq!(pairs(&back), pairs(&gt));
        for (l, r) in back.iter() {
            prop_assert!(g.index_of(Side::Left, l).is_some());
            prop_assert!(g.index_of(Side::Right, r).is_some());
        }
    }
}

#[test]
fn validated_bundle_resolves_every_truth_id() {
    let dir = TempDir::new().unwrap();
    let left: Vec<EntityProfile> = (0..5)
        .map(|i| EntityProfile::new(format!("l{i}")).with("name", &format!("left {i}")))
        .collect();
    let right: Vec<EntityProfile> = (0..4)
        .map(|i| EntityProfile::new(format!("r{i}")).with("name", &format!("right {i}")))
        .collect();
    let (lp, rp, gp) = (
        dir.path().join("l.csv"),
        dir.path().join("r.jsonl"),
        dir.path().join("gt.tsv"),
    );
    write_profiles(&lp, ProfileFormat::Csv, &left).unwrap();
    write_profiles(&rp, ProfileFormat::Jsonl, &right).unwrap();
    write_ground_truth(
        &gp,
        &GroundTruth::new([("l0", "r3"), ("l4", "r1")]).unwrap(),
    )
    .unwrap();
    let bundle = DatasetBundle::load("toy", &lp, &rp, &gp).unwrap();
    let left_ids: BTreeSet<&str> = bundle.left.iter().map(|p| p.id.as_str()).collect();
    let right_ids: BTreeSet<&str> = bundle.right.iter().map(|p| p.id.as_str()).collect();
    assert!(bundle
        .ground_truth
        .iter()
        .all(|(l, r)| left_ids.contains(l) && right_ids.contains(r)));

    write_ground_truth(&gp, &GroundTruth::new([("l0", "r9")]).unwrap()).unwrap();
    assert!(DatasetBundle::load("toy", &lp, &rp, &gp).is_err());
}
