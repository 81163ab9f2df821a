//! Chips of the bisymmetric pair and the Thoma character read off a chip.

use traincat::{chip_from_pair, chip_mul, chip_thoma_eval, thoma_char, ColoredPerm, ThomaParams};

fn main() -> traincat::Result<()> {
    let g1: ColoredPerm = "(1 2 3)(4 5)".parse()?;
    let e = ColoredPerm::identity(1);

    let chip = chip_from_pair(&g1, &e, 0, 0)?;
    println!("chip of ({g1}, e) at level (0,0):\n{chip}");
    println!("rood cycles: {:?}", chip.cycles());

    for params in [
        ThomaParams::new(vec![1.0], vec![])?,
        ThomaParams::new(vec![], vec![1.0])?,
        ThomaParams::new(vec![0.5, 0.25], vec![0.125])?,
    ] {
        let from_chip = chip_thoma_eval(&chip, &params)?;
        let direct = thoma_char(&params, &g1)?;
        println!("{params}: chip {from_chip:.6}, character {direct:.6}");
    }

    let left = chip_from_pair(&"(1 3)".parse()?, &e, 1, 2)?;
    let right = chip_from_pair(&e, &"(2 4)".parse()?, 2, 0)?;
    let glued = chip_mul(&left, &right)?;
    println!("glued chip, levels ({}, {}):\n{glued}", glued.alpha(), glued.beta());
    Ok(())
}
