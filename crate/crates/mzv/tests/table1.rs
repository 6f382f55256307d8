mod common;

use common::{table1_row_matches, TABLE1};
use mzv::symgroup::COSET_TABLE_SUBGROUPS;

#[test]
fn coset_table_matches_every_row() {
    for (gens, printed) in TABLE1 {
        assert_eq!(table1_row_matches(gens, printed), Ok(()));
    }
}

#[test]
fn rows_partition_the_group() {
    for (gens, printed) in TABLE1 {
        let total: usize = printed.iter().map(|c| c.len()).sum();
        assert_eq!(total, 24, "{gens}");
        assert!(printed.iter().all(|c| c.len() == printed[0].len()), "{gens}");
    }
}

#[test]
fn library_lists_the_same_subgroups() {
    let listed: Vec<&str> = TABLE1.iter().map(|(g, _)| *g).collect();
    assert_eq!(listed, COSET_TABLE_SUBGROUPS);
}
