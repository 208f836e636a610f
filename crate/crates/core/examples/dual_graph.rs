//! Cerednik-Drinfeld fibres: the graph of M_210 at 3, its quotient by w_210
//! and the resulting Kodaira symbol.
//!
//! cargo run --example dual_graph -- --dot

use shimura_atlas::arith::FactoredSquarefree;
use shimura_atlas::cd_graph::{
    al_quotient, dual_graph, eichler_class_number, kodaira_symbol, DualGraphOutcome, GraphConstraints, VertexLabel,
};
use shimura_atlas::invariants::ShimuraDiscriminant;

fn main() -> shimura_atlas::Result<()> {
    let dot = std::env::args().any(|a| a == "--dot");
    let (seventy, one, three) = (FactoredSquarefree::new(70)?, FactoredSquarefree::new(1)?, FactoredSquarefree::new(3)?);
    println!(
        "h(70, 1) = {}, h(70, 3) = {}",
        eichler_class_number(&seventy, &one)?,
        eichler_class_number(&seventy, &three)?
    );

    let d = ShimuraDiscriminant::new(210)?;
    let free = dual_graph(&d, 3, &GraphConstraints::default())?;
    if let DualGraphOutcome::Underdetermined(s) = &free {
        println!("without constraints: {:?} candidate graphs", s.candidates);
    }

    let constraints = GraphConstraints {
        crossing_total: Some(4),
        forbidden_pairs: vec![
            (VertexLabel::z(1), VertexLabel::z(2)),
            (VertexLabel::z_prime(1), VertexLabel::z_prime(2)),
        ],
    };
    let DualGraphOutcome::Unique(g) = dual_graph(&d, 3, &constraints)? else {
        unreachable!("constraints pin the graph");
    };
    if dot {
        print!("{}", g.graph.to_dot("M210_F3"));
    } else {
        print!("{}", g.graph.to_adjacency_text());
    }
    let q = al_quotient(&g.graph, &g.al_action)?;
    print!("{}", q.to_adjacency_text());
    println!("Kodaira symbol of V_210/<w_210> at 3: {}", kodaira_symbol(&q)?);

    match dual_graph(&ShimuraDiscriminant::new(26)?, 13, &GraphConstraints::default())? {
        DualGraphOutcome::Underdetermined(s) => println!("M_26 at 13: {s:?}"),
        DualGraphOutcome::Unique(_) => {}
    }
    Ok(())
}
