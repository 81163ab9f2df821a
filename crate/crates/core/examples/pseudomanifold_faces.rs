//! Cell complexes from tuples of permutations: faces, f-vectors and the
//! polygon picture in dimension two.

use traincat::gem::naive_vertex_count;
use traincat::gem::normalized_vertex_count;
use traincat::{f_vector, faces, gem_from_tuple, gem_mul, surface_canon, surface_from_tuple, surface_of_gem, ColoredPerm};

fn main() -> traincat::Result<()> {
    let tuple: Vec<ColoredPerm> = ["(1 2)", "(2 3)", "(1 3)", "()"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let g = gem_from_tuple(&tuple, 0, 0, Some(3))?;
    println!("dimension {}, {} chambers", g.dim(), g.chambers());

    for w in [vec![0, 1], vec![2, 3], vec![0, 1, 2]] {
        let fs = faces(&g, &w)?;
        println!("faces avoiding colors {w:?}: {}", fs.len());
    }
    let fv = f_vector(&g);
    println!("f-vector {:?}, component euler {:?}", fv.f, fv.component_euler);

    let tri: Vec<ColoredPerm> = tuple[..3].to_vec();
    let g2 = gem_from_tuple(&tri, 1, 1, Some(3))?;
    let s2 = surface_from_tuple(&tri, 1, 1, Some(3))?;
    println!("polygon picture matches surface: {}", surface_canon(&surface_of_gem(&g2)) == surface_canon(&s2));

    let h = gem_from_tuple(&tri, 1, 1, Some(3))?;
    let prod = gem_mul(&g2, &h)?;
    println!(
        "product: {} chambers; vertices without normalization {}, with {}",
        prod.chambers(),
        naive_vertex_count(&g2, &h)?,
        normalized_vertex_count(&g2, &h)?
    );
    Ok(())
}
