use modlex::io::{
    emit_dot, emit_edge_list, parse_edge_list, partition_dot, product_dot, sha256_hex, Dataset, DotOptions,
};
use modlex::{are_isomorphic, generalized_lex_product, maximal_modular_partition, minimal_quotient, Graph, GraphFamily};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(n in 0usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
        let mut it = bits.into_iter();
        let g = Graph::from_fn(n, |_, _| it.next().unwrap());
        let text = emit_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_edge_list(&back), text);
    }
}

#[test]
fn datasets_are_intact() {
    for d in Dataset::ALL {
        assert_eq!(sha256_hex(d.text()), d.checksum(), "{}", d.name());
        assert!(d.graph().unwrap().is_connected());
    }
}

#[test]
fn fig3_minimal_quotient_is_the_drawn_one() {
    let q = minimal_quotient(&Dataset::Fig3.graph().unwrap()).unwrap();
    let drawn = Dataset::Fig3Quotient.graph().unwrap();
    assert_eq!(q.graph.vertex_count(), 21);
    assert!(are_isomorphic(&q.graph, &drawn).unwrap());
}

fn balanced(dot: &str) -> bool {
    let mut depth = 0i32;
    for c in dot.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

#[test]
fn dot_cluster_counts() {
    let k2 = emit_dot(&Graph::complete(2), &DotOptions::default());
    assert!(balanced(&k2));
    assert_eq!(k2.matches(" -- ").count(), 1);

    let fam = GraphFamily::new(
        Graph::path(3),
        vec![Graph::cycle(5).unwrap(), Graph::complete(3), Graph::complete(2)],
    )
    .unwrap();
    let p = generalized_lex_product(&fam).unwrap();
    let dot = product_dot(&p);
    assert!(balanced(&dot));
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    assert!(dot.contains("\"(0,4)\""));

    let fig3 = Dataset::Fig3.graph().unwrap();
    let dot = partition_dot(&maximal_modular_partition(&fig3).unwrap());
    assert!(balanced(&dot));
    assert_eq!(dot.matches("subgraph cluster_").count(), 21);
    assert_eq!(dot.matches(" -- ").count(), fig3.edge_count());
}
