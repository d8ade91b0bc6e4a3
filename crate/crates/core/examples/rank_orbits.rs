//! Rank of elements of g_1 and the strictly regular decomposition at rank 4.

use lie_fts::classify::{decompose_rank4, orbit_representatives, orthogonal_quadruple, rank_classify};
use lie_fts::fts::FtsContext;
use lie_fts::scalar::{Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for label in ["d4", "e7", "f4"] {
        let ctx = FtsContext::for_type(label.parse()?)?;
        println!("{label}:");
        for (k, x) in orbit_representatives::<Rational>(&ctx)?.iter().enumerate() {
            let r = rank_classify(&ctx, x)?;
            println!(
                "  representative {k}: rank {} q = {} strictly regular {} xxx nonzero {}",
                r.rank, r.q_value, r.strictly_regular, r.xxx_nonzero
            );
        }
    }

    let ctx = FtsContext::for_type("e6".parse()?)?;
    let [b1, b2, b3, b4] = orthogonal_quadruple(&ctx)?;
    let x = ctx.element([
        (b1, Rational::from_i64(1)),
        (b2, Rational::from_i64(2)),
        (b3, Rational::from_i64(3)),
        (b4, Rational::from_i64(6)),
    ])?;
    let (u, v) = decompose_rank4(&ctx, &x)?;
    println!("\ne6: x = {}", ctx.describe(&x));
    println!("  u = {}\n  v = {}", ctx.describe(&u), ctx.describe(&v));
    println!("  u + v == x: {}", u.add(&v) == x);

    let y = ctx.element([
        (b1, Rational::from_i64(1)),
        (b2, Rational::from_i64(1)),
        (b3, Rational::from_i64(1)),
        (b4, Rational::from_i64(2)),
    ])?;
    match decompose_rank4(&ctx, &y) {
        Ok(_) => println!("  unexpected decomposition"),
        Err(e) => println!("  no decomposition over Q for coefficients 1,1,1,2: {e}"),
    }
    Ok(())
}
