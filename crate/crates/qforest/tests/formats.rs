use num_bigint::BigInt;
use proptest::prelude::*;
use qforest::formats::*;
use qforest_core::counting::SupportPattern;
use qforest_core::matroid::Matroid;
use qforest_core::Graph;

#[test]
fn edge_list_comments_and_errors() {
    let g = parse_edge_list("# header\n\n3  # vertices\n1 2\n 2 3 \n").unwrap();
    assert_eq!(g.n(), 3);
    assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
    assert!(parse_edge_list("").is_err());
    assert!(parse_edge_list("3\n1 2 3\n").is_err());
    assert!(parse_edge_list("3\n1 x\n").is_err());
    assert!(matches!(parse_edge_list("3\n1 4\n"), Err(FormatError::Invalid(_))));
    match parse_edge_list("2\n1 2\noops\n") {
        Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn patterns() {
    let s = parse_pattern("3\n011\n101\n110\n", true).unwrap();
    assert_eq!(s, SupportPattern::off_diagonal(3));
    assert!(parse_pattern("2\n01\n", false).is_err());
    assert!(parse_pattern("2\n01\n10\n11\n", false).is_err());
    assert!(parse_pattern("2\n02\n10\n", false).is_err());
    assert!(parse_pattern("2\n01\n00\n", true).is_err());
    let fano = SupportPattern::fano();
    assert_eq!(parse_pattern(&write_pattern(&fano), false).unwrap(), fano);
}

#[test]
fn basis_lists() {
    let m = parse_basis_list("4 2\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    assert_eq!(m, Matroid::uniform(2, 4).unwrap());
    assert!(parse_basis_list("4 2\n1 2 3\n").is_err());
    assert!(parse_basis_list("4\n1 2\n").is_err());
    assert!(parse_basis_list("4 2\n1 2\n3 4\n").is_err());
    let r10 = Matroid::r10();
    assert_eq!(parse_basis_list(&write_basis_list(&r10)).unwrap(), r10);
}

#[test]
fn values_csv() {
    let pts = parse_values_csv("q,count\n2,10\n3^2, 5832\n").unwrap();
    assert_eq!(pts, vec![(2, BigInt::from(10)), (9, BigInt::from(5832))]);
    assert!(parse_values_csv("x,count\n2,1\n").is_err());
    assert!(parse_values_csv("q,count\n6,1\n").is_err());
    assert!(parse_values_csv("q,count\n2,1.5\n").is_err());
    let big = "q,count\n2,123456789012345678901234567890\n";
    assert_eq!(write_values_csv(&parse_values_csv(big).unwrap()), big);
}

proptest! {
    #[test]
    fn edge_lists_round_trip(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8), 0..20)) {
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(u, v)| (u % n + 1, v % n + 1)).collect();
        let g = Graph::new(n, edges).unwrap();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn patterns_round_trip(n in 1usize..6, bits in prop::collection::vec(any::<bool>(), 36)) {
        let s = SupportPattern::from_mask(n, bits[..n * n].to_vec(), false).unwrap();
        prop_assert_eq!(parse_pattern(&write_pattern(&s), false).unwrap(), s);
    }
}
