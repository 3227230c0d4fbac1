//! End-to-end checks through the public API against naive oracles written
//! here independently of the library.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use squish_core::algebra::{qrst, IntPoly};
use squish_core::exec::Exec;
use squish_core::honeycomb::{matching_of, partition_of, region_vertices};
use squish_core::partitionfn::{colored_gf_box, measure_check};
use squish_core::planepart::{count_boxed, enumerate_boxed, enumerate_by_volume, BoxShape, PlanePartition};
use squish_core::render::{render_svg, Drawing};
use squish_core::roots::{check_count_target, connection_at};
use squish_core::squish::{squish_counts, squish_matching, DoubleDimer};

/// Every weakly decreasing grid with entries at most `z`, by brute force
/// over all (z+1)^(xy) fillings.
fn naive_partitions(shape: BoxShape) -> Vec<Vec<Vec<u32>>> {
    let cells = shape.x * shape.y;
    let mut out = Vec::new();
    let mut grid = vec![0u32; cells];
    loop {
        let at = |i: usize, j: usize| grid[i * shape.y + j];
        let ok = (0..shape.x).all(|i| {
            (0..shape.y).all(|j| {
                (j + 1 == shape.y || at(i, j) >= at(i, j + 1)) && (i + 1 == shape.x || at(i, j) >= at(i + 1, j))
            })
        });
        if ok {
            out.push(grid.chunks(shape.y).map(<[u32]>::to_vec).collect());
        }
        let mut k = 0;
        while k < cells && grid[k] == shape.z as u32 {
            grid[k] = 0;
            k += 1;
        }
        if k == cells {
            return out;
        }
        grid[k] += 1;
    }
}

#[test]
fn enumeration_matches_naive_fillings() {
    for shape in [BoxShape::new(1, 1, 3), BoxShape::new(2, 2, 2), BoxShape::new(2, 3, 2), BoxShape::new(3, 3, 1)] {
        let naive = naive_partitions(shape);
        assert_eq!(count_boxed(shape, Exec::Sequential), naive.len() as u64, "{shape}");
        assert_eq!(count_boxed(shape, Exec::Parallel), naive.len() as u64, "{shape}");
        let ours: Vec<Vec<Vec<u32>>> = enumerate_boxed(shape)
            .map(|p| (1..=shape.x).map(|i| (1..=shape.y).map(|j| p.entry(i, j)).collect()).collect())
            .collect();
        let mut sorted = ours.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ours.len(), "{shape}: duplicates");
        let mut naive = naive;
        naive.sort();
        assert_eq!(sorted, naive, "{shape}");
    }
}

#[test]
fn matchings_are_perfect_and_invert() {
    let shape = BoxShape::new(2, 3, 2);
    let vertices = region_vertices(shape);
    for p in enumerate_boxed(shape) {
        let m = matching_of(&p, shape).unwrap();
        assert_eq!(m.len(), 2 * 3 + 3 * 2 + 2 * 2);
        assert!(m.is_perfect_on(&vertices));
        assert_eq!(partition_of(&m, shape).unwrap(), p);
    }
}

#[test]
fn colored_gf_matches_direct_cell_count() {
    // Colors from the parities of (k - j, k - i), with k the height level.
    let shape = BoxShape::new(2, 2, 3);
    let vars = qrst();
    let mut direct = IntPoly::zero(&vars);
    for p in enumerate_boxed(shape) {
        let mut exps = [0i32; 4];
        for i in 1..=shape.x {
            for j in 1..=shape.y {
                for k in 1..=p.entry(i, j) as usize {
                    let slot = match ((k + 2 - j) % 2, (k + 2 - i) % 2) {
                        (0, 0) => 0,
                        (1, 0) => 1,
                        (0, 1) => 2,
                        _ => 3,
                    };
                    exps[slot] += 1;
                }
            }
        }
        direct.push_term(exps.into_iter().collect(), BigInt::from(1));
    }
    assert_eq!(colored_gf_box(shape, Exec::default()), direct);
}

#[test]
fn volume_counts_are_partition_numbers() {
    let counts: Vec<usize> = (0..=6).map(|n| enumerate_by_volume(n).len()).collect();
    assert_eq!(counts, [1, 1, 3, 6, 13, 24, 48]);
}

#[test]
fn fiber_sizes_are_loop_traces() {
    for shape in [BoxShape::new(2, 2, 2), BoxShape::new(2, 2, 4), BoxShape::new(4, 2, 2)] {
        let counts = squish_counts(shape, Exec::default()).unwrap();
        assert_eq!(counts.values().sum::<u64>(), count_boxed(shape, Exec::default()));
        for (dd, n) in &counts {
            assert!(check_count_target(dd, *n).unwrap().agree, "{shape}: {dd:?}");
        }
    }
}

#[test]
fn measure_holds_on_skewed_boxes() {
    for shape in [BoxShape::new(4, 2, 2), BoxShape::new(2, 4, 2), BoxShape::new(4, 2, 4)] {
        assert!(measure_check(shape, Exec::default()).unwrap().all_equal(), "{shape}");
    }
}

#[test]
fn double_dimer_json_round_trip() {
    let shape = BoxShape::new(2, 2, 4);
    let mut seen: BTreeMap<String, DoubleDimer> = BTreeMap::new();
    for p in enumerate_boxed(shape).step_by(7) {
        let dd = squish_matching(&matching_of(&p, shape).unwrap()).unwrap();
        let text = serde_json::to_string(&dd).unwrap();
        let back: DoubleDimer = serde_json::from_str(&text).unwrap();
        assert_eq!(back, dd);
        seen.insert(text, dd);
    }
    assert!(seen.len() > 1);
    let p: PlanePartition = serde_json::from_str("[[2,1],[1,0]]").unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap(), "[[2,1],[1,0]]");
}

#[test]
fn renders_every_doubled_edge_twice() {
    let shape = BoxShape::new(2, 2, 2);
    let dd = squish_matching(&matching_of(&PlanePartition::empty(), shape).unwrap()).unwrap();
    assert!(dd.is_all_doubled());
    let svg = render_svg(Drawing::DoubleDimer(&dd));
    assert_eq!(svg.matches("class=\"double\"").count(), 2 * dd.multiplicities().len());
    assert_eq!(svg.matches("class=\"loop\"").count(), 0);
}

#[test]
fn specialized_connection_is_shared() {
    let a = connection_at(6).unwrap() as *const _;
    let b = connection_at(6).unwrap() as *const _;
    assert_eq!(a, b);
}
