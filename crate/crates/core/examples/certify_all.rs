use std::time::Instant;

use sympair::certify::{certify_family, CertifyOptions};
use sympair::families::FamilyId;

fn main() {
    for (id, qs) in [
        (FamilyId::Dp7, vec![5u64, 9, 13]),
        (FamilyId::Dp8, vec![3, 7, 11]),
        (FamilyId::Dp9, vec![3, 5, 7, 9]),
        (FamilyId::KaiDp7, vec![7, 11]),
    ] {
        for q in qs {
            let t = Instant::now();
            let c = certify_family(id, q, &CertifyOptions::default()).unwrap();
            println!(
                "{id} q={q} n={} k={} d_H={:?} d_P={:?} {} {:.2?} {:?}",
                c.n,
                c.k,
                c.d_h.as_ref().map(|d| d.value),
                c.d_p.as_ref().map(|d| d.value),
                c.status,
                t.elapsed(),
                c.notes
            );
        }
    }
}
