//! The same computations over a prime field, where -1 has a square root.

use lie_fts::classify::rank_classify;
use lie_fts::fts::FtsContext;
use lie_fts::scalar::{Fp, Scalar};

type F = Fp<10009>;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FtsContext::for_type("e7".parse()?)?;
    let i = (-F::one()).sqrt().expect("10009 = 1 mod 4");
    println!("i = {i}, i^2 = {}", i * i);

    let x = ctx.rank4_representative::<F>();
    println!("q(x) = {}", ctx.quartic(&x)?);
    println!("q(i x) = {}", ctx.quartic(&x.scale(&i))?);
    println!("rank of x over F_10009: {}", rank_classify(&ctx, &x)?.rank);
    Ok(())
}
