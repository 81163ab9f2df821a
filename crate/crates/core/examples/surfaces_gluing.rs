//! Equipped surfaces of the trisymmetric pair glued along a level.

use traincat::oracle::coset_product_rep;
use traincat::surfaces::components;
use traincat::{surface_canon, surface_from_tuple, surface_mul, CosetLevel, GroupElement, PairSpec};

fn main() -> traincat::Result<()> {
    let spec = PairSpec::trisymmetric();
    let p = GroupElement::parse(&spec, "r:(1 2 3); y:(2 3); b:()")?;
    let q = GroupElement::parse(&spec, "r:(); y:(1 2); b:(1 3)")?;
    let (a, b, c) = (1, 2, 1);

    let s1 = surface_from_tuple(&p.parts, a, b, None)?;
    let s2 = surface_from_tuple(&q.parts, b, c, None)?;
    let glued = surface_mul(&s1, &s2)?;
    for (k, comp) in components(&glued).iter().enumerate() {
        println!(
            "component {k}: {} plus faces, V per corner {:?}, E {}, F {}, euler {}, genus {}",
            comp.plus_faces.len(),
            comp.vertices,
            comp.edges,
            comp.faces,
            comp.euler,
            comp.genus
        );
    }

    let l = CosetLevel::single;
    let (r, j) = coset_product_rep(&spec, &p, &q, &l(a), &l(b), &l(c))?;
    let direct = surface_from_tuple(&r.parts, a, c, None)?;
    println!("representative with j = {j}: {r}");
    println!("glued code  {}", surface_canon(&glued));
    println!("direct code {}", surface_canon(&direct));
    assert_eq!(surface_canon(&glued), surface_canon(&direct));
    Ok(())
}
