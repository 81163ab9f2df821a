//! Brute-force double-coset counts against the number of distinct codes.

use traincat::oracle::{distinct_codes_finite, enumerate_double_cosets_finite, group_order};
use traincat::{CosetLevel, Encoder, PairSpec};

fn main() -> traincat::Result<()> {
    let l = CosetLevel::single;
    for n in 1..=5 {
        let spec = PairSpec::bisymmetric();
        let c = enumerate_double_cosets_finite(&spec, n, &l(0), &l(0))?;
        println!("bi  n={n}: |G| = {:>6}, {} cosets, sizes {:?}", group_order(&spec, n), c.count(), c.sizes());
    }
    for n in 2..=4 {
        let spec = PairSpec::trisymmetric();
        let count = enumerate_double_cosets_finite(&spec, n, &l(0), &l(0))?.count();
        let codes = distinct_codes_finite(&spec, n, &l(0), &l(0), Encoder::Surfaces)?;
        println!("tri n={n}: {count} cosets, {codes} surface codes");
    }
    let spec = PairSpec::wreath(2);
    for (a, b) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
        let count = enumerate_double_cosets_finite(&spec, 3, &l(a), &l(b))?.count();
        let codes = distinct_codes_finite(&spec, 3, &l(a), &l(b), Encoder::Bigraph)?;
        println!("wreath:2 n=3 ({a},{b}): {count} cosets, {codes} diagram codes");
    }
    Ok(())
}
