use proptest::prelude::*;
use wkit_core::scalar::int;
use wkit_core::yangcheck::{ColumnOrder, HighestWeightTableau};
use wkit_core::Error;

fn tableau(shape: &str, rows: &str) -> HighestWeightTableau {
    HighestWeightTableau::parse(shape, rows).unwrap()
}

#[test]
fn single_row_is_always_irreducible() {
    for rows in ["0", "3,-1,2", "1/2,1/2"] {
        let n = rows.split(',').count().to_string();
        assert!(tableau(&n, rows).is_irreducible(ColumnOrder::BottomToTop));
        assert!(tableau(&n, rows).is_irreducible(ColumnOrder::TopToBottom));
    }
}

#[test]
fn two_row_examples() {
    let t = tableau("2,1", "1,2;0");
    assert!(t.is_irreducible(ColumnOrder::BottomToTop));
    assert!(!t.is_irreducible(ColumnOrder::TopToBottom));

    let t = tableau("2,1", "0,1;5");
    assert!(!t.is_irreducible(ColumnOrder::BottomToTop));
    assert_eq!(t.column_violations(ColumnOrder::BottomToTop), [(0, 0)]);
    assert!(t.is_irreducible(ColumnOrder::TopToBottom));
}

#[test]
fn equal_column_entries_are_rejected_both_ways() {
    let t = tableau("2,2", "1,3;1,2");
    for order in [ColumnOrder::BottomToTop, ColumnOrder::TopToBottom] {
        assert!(!t.is_irreducible(order));
        assert!(t.column_violations(order).contains(&(0, 0)));
    }
}

#[test]
fn rows_are_sorted_before_checking() {
    let t = tableau("3,2", "5,1,3;0,2");
    assert_eq!(t.rows()[0], [int(1), int(3), int(5)]);
    assert!(t.is_irreducible(ColumnOrder::BottomToTop));
}

#[test]
fn malformed_input() {
    assert!(matches!(HighestWeightTableau::parse("1,2", "0;1,2"), Err(Error::MalformedTableau(_))));
    assert!(matches!(HighestWeightTableau::parse("2", "0"), Err(Error::MalformedTableau(_))));
    assert!(HighestWeightTableau::parse("1", "x").is_err());
    assert!(ColumnOrder::parse("sideways").is_err());
}

#[test]
fn json_report() {
    let v = tableau("2,1", "0,1/2;-3").to_json(ColumnOrder::default());
    assert_eq!(v["convention"], "bottom-to-top");
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["polynomials"][0], "u(u + 1/2)");
    assert_eq!(v["rows"][0][1], "1/2");
}

proptest! {
    #[test]
    fn criterion_ignores_order_within_rows(
        rows in prop::collection::vec(prop::collection::vec(-6i64..6, 3), 1..4),
        seed in any::<u64>(),
    ) {
        let mut lens: Vec<usize> = rows.iter().enumerate().map(|(i, _)| 3 - (i % 3).min(2)).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        let build = |shuffle: bool| {
            let rows: Vec<Vec<_>> = rows.iter().zip(&lens).map(|(r, &l)| {
                let mut r: Vec<_> = r[..l].iter().map(|&x| int(x)).collect();
                if shuffle {
                    let k = (seed as usize) % l;
                    r.rotate_left(k);
                    if seed % 2 == 1 { r.reverse(); }
                }
                r
            }).collect();
            HighestWeightTableau::new(rows).unwrap()
        };
        let (a, b) = (build(false), build(true));
        prop_assert_eq!(&a, &b);
        for order in [ColumnOrder::BottomToTop, ColumnOrder::TopToBottom] {
            prop_assert_eq!(a.is_irreducible(order), b.is_irreducible(order));
        }
    }

    #[test]
    fn reversing_rows_swaps_conventions(values in prop::collection::vec(-9i64..9, 2..6)) {
        let column: Vec<Vec<_>> = values.iter().map(|&x| vec![int(x)]).collect();
        let reversed: Vec<Vec<_>> = column.iter().rev().cloned().collect();
        let a = HighestWeightTableau::new(column).unwrap();
        let b = HighestWeightTableau::new(reversed).unwrap();
        prop_assert_eq!(a.is_irreducible(ColumnOrder::BottomToTop), b.is_irreducible(ColumnOrder::TopToBottom));
    }
}
