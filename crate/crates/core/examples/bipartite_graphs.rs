//! Bipartite diagrams for the wreath pair: building, forgetting labels, gluing.

use traincat::oracle::coset_product_rep;
use traincat::{graph_canon, graph_forget, graph_from_perm, graph_mul, CosetLevel, GroupElement, PairSpec};

fn main() -> traincat::Result<()> {
    let spec = PairSpec::wreath(3);
    let p = GroupElement::parse(&spec, "(1@1 2@2)(3@1 1@3)")?;
    let q = GroupElement::parse(&spec, "(2@1 2@3 1@2)")?;

    let d = graph_from_perm(&p.parts[0], 2, 2, None)?;
    println!("{} vertices, {} edges, valence {}", d.vertex_count(), d.edges().len(), d.valence());
    let forgotten = graph_forget(&d, 1, 0);
    println!("after forgetting down to (1,0): {}", graph_canon(&forgotten));
    print!("{}", d.to_dot());

    let (a, b, c) = (2, 1, 2);
    let glued = graph_mul(&graph_from_perm(&p.parts[0], a, b, None)?, &graph_from_perm(&q.parts[0], b, c, None)?)?;
    let l = CosetLevel::single;
    let (r, _) = coset_product_rep(&spec, &p, &q, &l(a), &l(b), &l(c))?;
    let direct = graph_from_perm(&r.parts[0], a, c, None)?;
    println!("glued = product: {}", graph_canon(&glued) == graph_canon(&direct));
    Ok(())
}
