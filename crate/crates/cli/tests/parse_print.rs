use ltv::parser::{parse_mapping, parse_source, print_mapping};
use ltv_core::{Monomial, PolyMap, Polynomial, Rational, Ring};
use proptest::prelude::*;

// Includes names that double as keywords elsewhere in the grammar.
const NAMES: [&str; 8] = ["x", "y", "z", "w", "u_1", "Q", "map", "t2"];

fn exponents(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=5, n).prop_map(|mut e| {
        while e.iter().sum::<u32>() > 5 {
            let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
            e[i] -= 1;
        }
        e
    })
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn polymap() -> impl Strategy<Value = PolyMap> {
    (1usize..=4, 1usize..=3)
        .prop_flat_map(|(n, p)| {
            let names = prop::sample::subsequence(NAMES.to_vec(), n).prop_shuffle();
            let comps = prop::collection::vec(prop::collection::vec((exponents(n), coefficient()), 0..=6), p);
            (names, comps)
        })
        .prop_map(|(names, comps)| {
            let ring = Ring::new(names);
            let comps = comps
                .into_iter()
                .map(|terms| Polynomial::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), c))).unwrap())
                .collect();
            PolyMap::new(&ring, comps).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn parse_inverts_print(f in polymap()) {
        let text = print_mapping("f", &f);
        let back = parse_mapping(&text).map_err(|e| TestCaseError::fail(format!("{e} in {text}")))?;
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn dropped_parenthesis_is_reported_with_position(f in polymap(), pick in any::<prop::sample::Index>()) {
        let text = print_mapping("f", &f);
        let parens: Vec<usize> = text.match_indices(['(', ')']).map(|(i, _)| i).collect();
        let at = parens[pick.index(parens.len())];
        let broken = format!("{}{}", &text[..at], &text[at + 1..]);
        let e = parse_source(&broken).unwrap_err();
        prop_assert!(e.line >= 1 && e.column >= 1);
        let prefix = format!("{}:{}:", e.line, e.column);
        prop_assert!(e.to_string().starts_with(&prefix));
    }

    #[test]
    fn unknown_identifier_is_reported_where_it_occurs(f in polymap()) {
        let text = print_mapping("f", &f);
        let broken = text.replacen("map f: (", "map f: (unknown_var + ", 1);
        let e = parse_source(&broken).unwrap_err();
        prop_assert_eq!((e.line, e.column), (2, 9));
        prop_assert!(e.message.contains("unknown variable `unknown_var`"));
    }
}

#[test]
fn multi_line_positions() {
    let e = parse_source("ring Q[x, y];\nmap f: (\n  x^2 +\n  y*)\n").unwrap_err();
    assert_eq!((e.line, e.column), (4, 5));
    let e = parse_source("ring Q[x];\nmap f: (x ^ 2.5)").unwrap_err();
    assert_eq!(e.line, 2);
}
