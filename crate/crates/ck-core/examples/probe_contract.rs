use ck_core::contraction::{admissible_valuations, verify_decomposition, ContractionSpec};
use ck_core::groups::GroupKind;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let grid: Vec<(GroupKind, Vec<usize>, bool)> = vec![
        (GroupKind::BSoOdd, vec![1, 2, 3], false),
        (GroupKind::DSoEven, vec![2, 3, 4], false),
        (GroupKind::UUnitary, vec![1, 2, 3, 4, 5], true),
        (GroupKind::SuSpecial, vec![1, 2, 3, 4, 5], true),
        (GroupKind::CSp, vec![2, 3, 4, 5], true),
    ];
    let mut total = 0usize;
    for (kind, ranks, resid) in grid {
        for rank in ranks {
            let vals = admissible_valuations(kind, rank, resid);
            for v in vals {
                let spec = ContractionSpec::new(kind, rank, v.clone()).unwrap();
                let rep = verify_decomposition(&spec).unwrap();
                total += 1;
                if !rep.passed() {
                    println!("FAIL {kind:?} rank {rank} at {}", v.render());
                    for c in &rep.checks {
                        if !c.passed {
                            println!("   {}: {}", c.name, c.details);
                        }
                    }
                }
            }
            println!("{kind:?} rank {rank} done ({:.1?})", t0.elapsed());
        }
    }
    println!("total specs: {total}, elapsed {:.1?}", t0.elapsed());
}
