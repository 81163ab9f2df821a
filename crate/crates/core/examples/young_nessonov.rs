//! Young pairs: flow matrices, the product formula and its spherical functions.

use num_complex::Complex64;
use traincat::characters::SMatrix;
use traincat::tensor::young_tensor_value;
use traincat::{cycle_decompose, nessonov_char, s_matrix, young_spherical, ColoredPerm, GramSpec};

fn main() -> traincat::Result<()> {
    let g = ColoredPerm::parse("(1@1 1@2 2@3)(2@1 3@2)", 3)?;
    let s = s_matrix(&g);
    println!("s-matrix {}", s.to_json());
    println!("cycles {:?}", cycle_decompose(&s)?);

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let xis = vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)],
        vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)],
    ];
    let a = GramSpec::from_vectors(&xis)?;
    println!("product formula  {:.12}", nessonov_char(&a, &s)?);
    println!("spherical        {:.12}", young_spherical(&xis, &g)?);
    println!("tensor, N = 3    {:.12}", young_tensor_value(&xis, 3, &g)?);

    let ones = GramSpec::ones(3);
    let cyc = SMatrix::parse("[[.,1,0],[0,.,1],[1,0,.]]")?;
    println!("all-ones Gram matrix on a 3-cycle: {}", nessonov_char(&ones, &cyc)?);
    Ok(())
}
