mod oracle;

use charvar::symfunc::modified_macdonald;
use oracle::{modified_macdonald_gram_schmidt, partition, partitions};

#[test]
fn filling_statistics_match_gram_schmidt() {
    for n in 1..=4 {
        for mu in partitions(n) {
            let h = modified_macdonald(&partition(&mu));
            for (nu, c) in modified_macdonald_gram_schmidt(&mu) {
                assert_eq!(h.coeff(&[partition(&nu)]), c, "mu={mu:?} nu={nu:?}");
            }
        }
    }
}
