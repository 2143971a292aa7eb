use nestint::hardness::find_triples;
use nestint::{
    reduce_3partition_with, solve_small, verify_extension, Coord, ReduceOptions, Role, ThreePartitionInstance,
};

/// Independent decider: try every assignment of items to `s` groups.
fn decide(inst: &ThreePartitionInstance) -> bool {
    let s = inst.s as u64;
    (0..s.pow(inst.a.len() as u32)).any(|mut code| {
        let mut count = vec![0; inst.s];
        let mut sum = vec![0; inst.s];
        for &a in &inst.a {
            let g = (code % s) as usize;
            code /= s;
            count[g] += 1;
            sum[g] += a;
        }
        count.iter().all(|&c| c == 3) && sum.iter().all(|&x| x == inst.m)
    })
}

fn item_lists(len: usize, max: u32, total: u32) -> Vec<Vec<u32>> {
    fn go(lo: u32, max: u32, left: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in lo..=max.min(rest) {
            cur.push(x);
            go(x, max, left - 1, rest - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, max, len, total, &mut Vec::new(), &mut out);
    out
}

/// Outside the size window the solver still decides grouping into triples;
/// this exercises the negative answers the window itself rarely produces.
#[test]
fn solver_agrees_with_decider_including_no_instances() {
    let mut no = 0;
    for s in 1..=2 {
        for m in 3..=9 {
            for a in item_lists(3 * s, m - 1, m * s as u32) {
                let inst = ThreePartitionInstance::new(s, m, a).unwrap();
                let opts = ReduceOptions { allow_outside_window: true, guards: m % 2 == 0 };
                let h = reduce_3partition_with(&inst, opts).unwrap();
                let expected = decide(&inst);
                let got = solve_small(&h).unwrap();
                assert_eq!(got.is_some(), expected, "{inst:?}");
                assert_eq!(find_triples(&inst).is_some(), expected);
                let Some(r) = got else {
                    no += 1;
                    continue;
                };
                assert!(verify_extension(&h, &r), "{inst:?}");
                assert_eq!(r.lengths(), vec![Coord::from_integer(1), h.lengths.1]);

                // Each gap holds paths whose items sum to at most M.
                let stride = Coord::from_integer(m as i64 + 2);
                let mut load = vec![0u32; s];
                let mut first = vec![true; 3 * s];
                for (v, role) in h.role_of.iter().enumerate() {
                    if let Role::Path { item, .. } = *role {
                        let gap = (r.get(v).l / stride).to_integer() as usize;
                        assert_eq!(gap, (r.get(v).r / stride).to_integer() as usize, "{inst:?}: path crosses a gap");
                        if std::mem::take(&mut first[item]) {
                            load[gap] += inst.a[item];
                        }
                    }
                }
                assert!(load.iter().all(|&x| x <= m), "{inst:?}: loads {load:?}");
            }
        }
    }
    assert!(no > 0);
}

#[test]
fn roles_cover_every_vertex_once() {
    let inst = ThreePartitionInstance::new(2, 7, vec![2, 2, 2, 2, 3, 3]).unwrap();
    let h = reduce_3partition_with(&inst, ReduceOptions { guards: true, ..Default::default() }).unwrap();
    assert_eq!(h.role_of.len(), h.graph.n());
    let paths = h.role_of.iter().filter(|r| matches!(r, Role::Path { .. })).count();
    assert_eq!(paths, 2 * 14);
    let vs = h.role_of.iter().filter(|r| matches!(r, Role::V(_))).count();
    assert_eq!(vs, 3);
}
